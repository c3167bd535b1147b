//! Cascade (pairwise) summation.
//!
//! The reduction tree depends only on the slice length, so results are
//! bit-reproducible for a given ordering of terms.

use std::ops::Add;

use crate::vec3::Vec3;

const LEAF: usize = 8;

fn cascade<T: Copy + Add<Output = T>>(xs: &[T], zero: T) -> T {
    if xs.len() <= LEAF {
        return xs.iter().fold(zero, |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    cascade(&xs[..mid], zero) + cascade(&xs[mid..], zero)
}

pub fn pairwise_sum(xs: &[f64]) -> f64 {
    cascade(xs, 0.0)
}

pub fn pairwise_sum_vec(xs: &[Vec3]) -> Vec3 {
    cascade(xs, Vec3::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_small_and_large_slices() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }

    #[test]
    fn beats_naive_summation_on_many_small_terms() {
        let xs = vec![0.1_f64; 1 << 20];
        let exact = 0.1 * (1u64 << 20) as f64;
        let naive: f64 = xs.iter().sum();
        let cascade = pairwise_sum(&xs);
        assert!((cascade - exact).abs() <= (naive - exact).abs());
        assert!((cascade - exact).abs() < 1e-9);
    }
}
