//! Truncated Taylor series ("jets") and the scalar abstraction that lets the
//! curve families be evaluated either pointwise or as power series.
//!
//! Evaluating a curve at `Series::variable(s)` yields the Taylor coefficients
//! of the curve about `s`, which gives exact derivatives of any order up to
//! the truncation and the Laurent data needed for finite-part quadrature.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Operations shared by `f64` and [`Series`].
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn constant(c: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn powf(self, a: f64) -> Self;
    fn sqrt(self) -> Self {
        self.powf(0.5)
    }
    /// Value at the expansion point.
    fn value(self) -> f64;
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn powf(self, a: f64) -> Self {
        f64::powf(self, a)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn value(self) -> f64 {
        self
    }
}

/// Power series `Σ c[j] x^j` truncated after `N` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Series<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Series<N> {
    pub fn zero() -> Self {
        Series { c: [0.0; N] }
    }

    /// The identity map `x ↦ x0 + x`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x0;
        if N > 1 {
            c[1] = 1.0;
        }
        Series { c }
    }

    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        let mut c = [0.0; N];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Series { c }
    }

    /// `k`-th derivative at the expansion point (`k! · c[k]`).
    pub fn derivative_at(&self, k: usize) -> f64 {
        if k >= N {
            return 0.0;
        }
        (1..=k).fold(self.c[k], |acc, j| acc * j as f64)
    }

    /// Series of the derivative; the top coefficient is lost.
    pub fn differentiate(&self) -> Self {
        let mut c = [0.0; N];
        for j in 1..N {
            c[j - 1] = j as f64 * self.c[j];
        }
        Series { c }
    }

    /// Substitutes `x → -x`.
    pub fn reflect(&self) -> Self {
        let mut c = self.c;
        for (j, cj) in c.iter_mut().enumerate() {
            if j % 2 == 1 {
                *cj = -*cj;
            }
        }
        Series { c }
    }

    /// Divides by `x`, assuming the constant term vanishes. The top
    /// coefficient becomes zero.
    pub fn shift_down(&self) -> Self {
        let mut c = [0.0; N];
        c[..N - 1].copy_from_slice(&self.c[1..]);
        Series { c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &cj| acc * x + cj)
    }

    /// Keeps the first `k` coefficients and zeroes the rest.
    pub fn truncate(&self, k: usize) -> Self {
        let mut c = self.c;
        for cj in c.iter_mut().skip(k) {
            *cj = 0.0;
        }
        Series { c }
    }

    pub fn exp(self) -> Self {
        // g' = f' g
        let mut g = [0.0; N];
        g[0] = self.c[0].exp();
        for j in 1..N {
            let mut acc = 0.0;
            for i in 1..=j {
                acc += i as f64 * self.c[i] * g[j - i];
            }
            g[j] = acc / j as f64;
        }
        Series { c: g }
    }

    fn sin_cos(self) -> (Self, Self) {
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for j in 1..N {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for i in 1..=j {
                let f = i as f64 * self.c[i];
                ds += f * c[j - i];
                dc -= f * s[j - i];
            }
            s[j] = ds / j as f64;
            c[j] = dc / j as f64;
        }
        (Series { c: s }, Series { c })
    }
}

impl<const N: usize> Add for Series<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for Series<N> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for Series<N> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.c.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl<const N: usize> Mul for Series<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in o.c[..N - i].iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Series { c }
    }
}

impl<const N: usize> Div for Series<N> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let b0 = o.c[0];
        let mut q = [0.0; N];
        for j in 0..N {
            let mut acc = self.c[j];
            for (i, qi) in q.iter().enumerate().take(j) {
                acc -= qi * o.c[j - i];
            }
            q[j] = acc / b0;
        }
        Series { c: q }
    }
}

impl<const N: usize> Add<f64> for Series<N> {
    type Output = Self;
    fn add(mut self, k: f64) -> Self {
        self.c[0] += k;
        self
    }
}

impl<const N: usize> Mul<f64> for Series<N> {
    type Output = Self;
    fn mul(mut self, k: f64) -> Self {
        for a in self.c.iter_mut() {
            *a *= k;
        }
        self
    }
}

impl<const N: usize> Scalar for Series<N> {
    fn constant(c: f64) -> Self {
        Series::from_coeffs(&[c])
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    /// Requires a positive constant term.
    fn powf(self, a: f64) -> Self {
        // f g' = a f' g  =>  j f0 g_j = Σ_{i=1..j} (a i - (j - i)) f_i g_{j-i}
        let f0 = self.c[0];
        let mut g = [0.0; N];
        g[0] = f0.powf(a);
        for j in 1..N {
            let mut acc = 0.0;
            for i in 1..=j {
                acc += (a * i as f64 - (j - i) as f64) * self.c[i] * g[j - i];
            }
            g[j] = acc / (j as f64 * f0);
        }
        Series { c: g }
    }

    fn value(self) -> f64 {
        self.c[0]
    }
}

/// Taylor series of `sin(x/2) / (x/2)` about zero.
pub fn half_sinc_series<const N: usize>() -> Series<N> {
    let mut c = [0.0; N];
    let mut term = 1.0;
    for k in 0..N.div_ceil(2) {
        if 2 * k >= N {
            break;
        }
        // (-1)^k (x/2)^{2k} / (2k+1)!
        c[2 * k] = term;
        term *= -0.25 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
    }
    Series { c }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = Series<12>;

    #[test]
    fn sin_of_variable_has_alternating_factorial_coefficients() {
        let s = S::variable(0.0).sin();
        let mut fact = 1.0;
        for j in 0..12 {
            if j > 0 {
                fact *= j as f64;
            }
            let expected = match j % 4 {
                1 => 1.0 / fact,
                3 => -1.0 / fact,
                _ => 0.0,
            };
            assert!((s.c[j] - expected).abs() < 1e-16, "j={j}");
        }
    }

    #[test]
    fn derivatives_of_sin_at_a_point() {
        let x0 = 0.7_f64;
        let s = S::variable(x0).sin();
        let expected = [x0.sin(), x0.cos(), -x0.sin(), -x0.cos(), x0.sin()];
        for (k, e) in expected.iter().enumerate() {
            assert!((s.derivative_at(k) - e).abs() < 1e-14);
        }
    }

    #[test]
    fn powf_and_division_are_consistent() {
        let f = S::variable(1.3) * S::variable(1.3) + 0.4;
        let a = f.powf(-2.5);
        let b = S::constant(1.0) / f.powf(2.5);
        for j in 0..12 {
            assert!((a.c[j] - b.c[j]).abs() < 1e-13 * (1.0 + b.c[j].abs()));
        }
        let r = f.sqrt() * f.sqrt() - f;
        assert!(r.c.iter().all(|c| c.abs() < 1e-13));
    }

    #[test]
    fn exp_of_variable_has_factorial_coefficients() {
        let e = S::variable(0.0).exp();
        let mut fact = 1.0;
        for j in 0..12 {
            if j > 0 {
                fact *= j as f64;
            }
            assert!((e.c[j] - 1.0 / fact).abs() < 1e-16);
        }
    }

    #[test]
    fn half_sinc_matches_direct_division() {
        let x = 0.37;
        let s: Series<16> = half_sinc_series();
        assert!((s.eval(x) - (x / 2.0).sin() / (x / 2.0)).abs() < 4e-16);
    }
}
