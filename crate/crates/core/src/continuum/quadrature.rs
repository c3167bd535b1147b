//! Adaptive Gauss–Kronrod quadrature and Hadamard finite-part integrals by
//! singularity subtraction.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
const MAX_INTERVALS: usize = 4000;

fn gk15<const M: usize>(f: &impl Fn(f64) -> [f64; M], a: f64, b: f64) -> ([f64; M], f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = [0.0; M];
    let mut g = [0.0; M];
    let fc = f(c);
    for d in 0..M {
        k[d] = WGK[7] * fc[d];
        g[d] = WG[3] * fc[d];
    }
    for (j, &x) in XGK[..7].iter().enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        for d in 0..M {
            let s = f1[d] + f2[d];
            k[d] += WGK[j] * s;
            if j % 2 == 1 {
                g[d] += WG[j / 2] * s;
            }
        }
    }
    let mut err: f64 = 0.0;
    for d in 0..M {
        k[d] *= h;
        err = err.max((k[d] - g[d] * h).abs());
    }
    (k, err)
}

/// Globally adaptive G7/K15 integration of a vector-valued function to
/// absolute tolerance `tol` (max-norm over components).
pub fn integrate<const M: usize>(f: impl Fn(f64) -> [f64; M], a: f64, b: f64, tol: f64) -> Result<[f64; M]> {
    if a == b {
        return Ok([0.0; M]);
    }
    let mut parts = vec![(a, b, gk15(&f, a, b))];
    loop {
        let total_err: f64 = parts.iter().map(|p| p.2 .1).sum();
        if !total_err.is_finite() {
            return Err(Error::NumericalFailure(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        if total_err <= tol {
            break;
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::NumericalFailure(format!(
                "quadrature reached {MAX_INTERVALS} subintervals with error estimate {total_err:e} > {tol:e}"
            )));
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, gk15(&f, lo, mid)));
        parts.push((mid, hi, gk15(&f, mid, hi)));
    }
    // sort so the reduction order depends only on the partition
    parts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = [0.0; M];
    for p in &parts {
        for (o, v) in out.iter_mut().zip(p.2 .0) {
            *o += v;
        }
    }
    Ok(out)
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    Ok(integrate(|x| [f(x)], a, b, tol)?[0])
}

/// Local behaviour `f(η) ≈ Σ_j h_j d^j / |d|^p` with `d = s − η`, one
/// coefficient vector per output component.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalExpansion<const M: usize> {
    pub p: usize,
    pub coeffs: Vec<[f64; M]>,
}

pub const MAX_SINGULAR_ORDER: usize = 8;
const MAX_CUTOFF: f64 = 0.4;
const MIN_CUTOFF: f64 = 1e-4;
const CUTOFF_AGREEMENT: f64 = 1e-9;

impl<const M: usize> LocalExpansion<M> {
    fn check(&self) -> Result<()> {
        if self.p == 0 || self.p > MAX_SINGULAR_ORDER {
            return Err(Error::invalid(format!(
                "singular exponent must be in 1..={MAX_SINGULAR_ORDER}, got {}",
                self.p
            )));
        }
        if self.coeffs.len() < self.p {
            return Err(Error::invalid(format!(
                "singular order {} needs at least {} expansion coefficients, got {}",
                self.p,
                self.p,
                self.coeffs.len()
            )));
        }
        Ok(())
    }

    /// `Σ_{j<p} h_j d^j/|d|^p`.
    fn singular(&self, d: f64) -> [f64; M] {
        let mut out = [0.0; M];
        let ad = d.abs().powi(self.p as i32);
        let mut dj = 1.0;
        for h in &self.coeffs[..self.p] {
            for c in 0..M {
                out[c] += h[c] * dj / ad;
            }
            dj *= d;
        }
        out
    }

    /// `Σ_{j≥p} h_j d^j/|d|^p`, the regular remainder from the series.
    fn regular_tail(&self, d: f64) -> [f64; M] {
        let mut out = [0.0; M];
        let sign = if d < 0.0 && self.p % 2 == 1 { -1.0 } else { 1.0 };
        let mut dk = sign;
        for h in &self.coeffs[self.p..] {
            for c in 0..M {
                out[c] += h[c] * dk;
            }
            dk *= d;
        }
        out
    }

    /// Finite part of `∫ Σ_{j<p} h_j d^j/|d|^p dη` over `[s − a, s + b]`.
    fn subtracted_finite_part(&self, a: f64, b: f64) -> [f64; M] {
        let mut out = [0.0; M];
        for (j, h) in self.coeffs[..self.p].iter().enumerate() {
            let e = j as i32 - self.p as i32 + 1;
            let prim = |len: f64| {
                if len <= 0.0 {
                    0.0
                } else if e == 0 {
                    len.ln()
                } else {
                    len.powi(e) / e as f64
                }
            };
            let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
            let w = prim(a) + parity * prim(b);
            for c in 0..M {
                out[c] += h[c] * w;
            }
        }
        out
    }
}

fn max_abs<const M: usize>(v: &[f64; M]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Hadamard finite part of `∫_lo^hi f(η) dη` where `f` has the power
/// singularity described by `expansion` at `η = s ∈ [lo, hi]`.
///
/// The singular terms are subtracted and integrated in closed form; near
/// `s` the remainder is taken from the series tail to avoid cancellation.
pub fn finite_part<const M: usize>(
    f: impl Fn(f64) -> [f64; M],
    expansion: &LocalExpansion<M>,
    s: f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<[f64; M]> {
    expansion.check()?;
    if !(lo <= s && s <= hi && lo < hi) {
        return Err(Error::invalid(format!(
            "singular point {s} must lie in [{lo}, {hi}]"
        )));
    }
    let remainder_direct = |eta: f64| {
        let d = s - eta;
        let mut v = f(eta);
        let sing = expansion.singular(d);
        for c in 0..M {
            v[c] -= sing[c];
        }
        v
    };
    // largest cut-off at which the truncated series still matches the
    // directly evaluated remainder on both sides; failing that, the one with
    // the smallest mismatch
    let mismatch = |d0: f64| {
        let mut worst: f64 = 0.0;
        for d in [d0, -d0] {
            let eta = s - d;
            if eta < lo || eta > hi {
                continue;
            }
            let a = remainder_direct(eta);
            let b = expansion.regular_tail(d);
            let scale = 1.0 + max_abs(&b);
            for c in 0..M {
                worst = worst.max((a[c] - b[c]).abs() / scale);
            }
        }
        worst
    };
    let mut d0 = MAX_CUTOFF.min(0.5 * (hi - lo));
    let mut best = (f64::INFINITY, d0);
    while d0 >= MIN_CUTOFF {
        let m = mismatch(d0);
        if m < best.0 {
            best = (m, d0);
        }
        if m <= CUTOFF_AGREEMENT {
            break;
        }
        d0 *= 0.5;
    }
    let d0 = best.1;
    let remainder = |eta: f64| {
        let d = s - eta;
        if d.abs() < d0 {
            expansion.regular_tail(d)
        } else {
            remainder_direct(eta)
        }
    };
    let mut cuts = vec![lo];
    for x in [s - d0, s, s + d0] {
        if x > lo && x < hi {
            cuts.push(x);
        }
    }
    cuts.push(hi);
    let pieces = (cuts.len() - 1) as f64;
    let mut total = expansion.subtracted_finite_part(s - lo, hi - s);
    for w in cuts.windows(2) {
        let part = integrate(remainder, w[0], w[1], tol / pieces)?;
        for c in 0..M {
            total[c] += part[c];
        }
    }
    Ok(total)
}

/// Finite part of `∫_lo^hi |s − η|^{-p} dη`.
pub fn finite_part_power(s: f64, lo: f64, hi: f64, p: usize) -> Result<f64> {
    let mut coeffs = vec![[0.0]; p.max(1) + 1];
    coeffs[0] = [1.0];
    let e = LocalExpansion { p, coeffs };
    let r = finite_part(|eta| [(s - eta).abs().powi(-(p as i32))], &e, s, lo, hi, DEFAULT_TOLERANCE)?;
    Ok(r[0])
}
