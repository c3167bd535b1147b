use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::continuum::quadrature::{finite_part, LocalExpansion, DEFAULT_TOLERANCE};
use crate::error::Result;
use crate::geometry::RingPerturbation;
use crate::ring::kernels::KernelKind;
use crate::series::{half_sinc_series, Scalar, Series};
use crate::summation::pairwise_sum;
use crate::ZETA3;

/// Coefficient of the bending functional in the total deformation energy.
pub const BENDING_STIFFNESS: f64 = ZETA3 / 4.0 + 1.0 / 24.0;

/// Outer trapezoid nodes for the double integrals.
pub const DOUBLE_INTEGRAL_NODES: usize = 64;

const JET: usize = 16;
/// All kernels are integrated against `|t|⁻⁵`.
const COMMON_ORDER: usize = 5;

/// `constant + ε²·quadratic`, accurate to second order in `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticFunctional {
    pub constant: f64,
    pub quadratic: f64,
    pub epsilon: f64,
}

impl QuadraticFunctional {
    pub fn value(&self) -> f64 {
        self.constant + self.epsilon * self.epsilon * self.quadratic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonlocalMethod {
    /// Single integrals plus the six finite-part double integrals.
    Direct,
    /// The reduced bending form.
    Simplified,
}

/// Which variable the outer integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationOrder {
    /// `∫ w⁽ⁱ⁾(x) ⨍ K(t) w⁽ʲ⁾(x − t) dt dx`
    OuterX,
    /// `∫ w⁽ʲ⁾(y) ⨍ K(t) w⁽ⁱ⁾(y + t) dt dy`
    OuterY,
}

/// Local bending functional: `4π² + 2ε²π ∫ (w′² − 2w″² + w‴²) dθ`.
pub fn e_loc(pert: &RingPerturbation) -> QuadraticFunctional {
    QuadraticFunctional {
        constant: 4.0 * PI * PI,
        quadratic: 2.0 * PI * pert.bending_integral(),
        epsilon: pert.epsilon,
    }
}

pub fn e_nonloc(pert: &RingPerturbation, method: NonlocalMethod) -> Result<QuadraticFunctional> {
    let quadratic = match method {
        NonlocalMethod::Simplified => PI / 6.0 * pert.bending_integral(),
        NonlocalMethod::Direct => {
            let singles = 7.0 / 240.0 * pert.mean_square_integral(0)
                - 37.0 / 480.0 * pert.mean_square_integral(1)
                + 1.0 / 12.0 * pert.mean_square_integral(2);
            let doubles = nonlocal_double_integrals(pert, IntegrationOrder::OuterX)?;
            PI * (singles + pairwise_sum(&doubles))
        }
    };
    Ok(QuadraticFunctional {
        constant: PI * PI / 3.0,
        quadratic,
        epsilon: pert.epsilon,
    })
}

/// `(ζ(3)/4)·E_loc + ½·E_nonloc`, using the simplified nonlocal part.
pub fn e_tot_functional(pert: &RingPerturbation) -> QuadraticFunctional {
    let loc = e_loc(pert);
    QuadraticFunctional {
        constant: ZETA3 / 4.0 * loc.constant + PI * PI / 6.0,
        quadratic: ZETA3 / 4.0 * loc.quadratic + PI / 12.0 * pert.bending_integral(),
        epsilon: pert.epsilon,
    }
}

/// The same total written as `BENDING_STIFFNESS·(E_loc − 4π²)` plus the
/// constant offsets.
pub fn e_tot_reduced(pert: &RingPerturbation) -> QuadraticFunctional {
    let loc = e_loc(pert);
    QuadraticFunctional {
        constant: ZETA3 * PI * PI + PI * PI / 6.0,
        quadratic: BENDING_STIFFNESS * loc.quadratic,
        epsilon: pert.epsilon,
    }
}

/// Finite-part double integral of one kernel, in the requested order.
pub fn double_integral(pert: &RingPerturbation, kind: KernelKind, order: IntegrationOrder) -> Result<f64> {
    let all = nonlocal_double_integrals(pert, order)?;
    let idx = KernelKind::ALL.iter().position(|&k| k == kind).unwrap_or(0);
    Ok(all[idx])
}

/// All six double integrals, ordered as [`KernelKind::ALL`].
pub fn nonlocal_double_integrals(pert: &RingPerturbation, order: IntegrationOrder) -> Result<[f64; 6]> {
    let m = DOUBLE_INTEGRAL_NODES;
    let dx = 2.0 * PI / m as f64;
    let mut rows = Vec::with_capacity(m);
    for node in 0..m {
        let x = node as f64 * dx;
        let (sign, outer_first) = match order {
            IntegrationOrder::OuterX => (-1.0, true),
            IntegrationOrder::OuterY => (1.0, false),
        };
        let pick = |kind: KernelKind, outer: bool| {
            let (i, j) = kind.orders();
            if outer == outer_first { i } else { j }
        };
        let outer_of = |kind| pick(kind, true);
        let inner_of = |kind| pick(kind, false);
        let inner = inner_integrals(pert, x, sign, inner_of)?;
        let mut row = [0.0; 6];
        for (c, kind) in KernelKind::ALL.iter().enumerate() {
            row[c] = pert.w(outer_of(*kind), x) * inner[c];
        }
        rows.push(row);
    }
    let mut out = [0.0; 6];
    for (c, o) in out.iter_mut().enumerate() {
        let col: Vec<f64> = rows.iter().map(|r| r[c]).collect();
        *o = dx * pairwise_sum(&col);
    }
    Ok(out)
}

/// `⨍_{−π}^{π} K(t) w⁽ᵏ⁾(x + σt) dt` for every kernel at once. Each kernel
/// is written as `G(t)/|t|⁵` with `G` smooth.
fn inner_integrals(
    pert: &RingPerturbation,
    x: f64,
    sigma: f64,
    order_of: impl Fn(KernelKind) -> u32,
) -> Result<[f64; 6]> {
    let f = |t: f64| {
        let mut v = [0.0; 6];
        let half = (0.5 * t).sin().abs();
        for (c, kind) in KernelKind::ALL.iter().enumerate() {
            let p = kind.singular_order() as i32;
            v[c] = kind.numerator(t) * pert.w(order_of(*kind), x + sigma * t) / half.powi(p);
        }
        v
    };

    let t = Series::<JET>::variable(0.0);
    let hs = half_sinc_series::<JET>();
    let mut coeffs = vec![[0.0; 6]; JET];
    for (c, kind) in KernelKind::ALL.iter().enumerate() {
        let p = kind.singular_order();
        // |sin(t/2)|^p = |t|^p hs^p / 2^p
        let mut den = Series::<JET>::constant(1.0);
        for _ in 0..p {
            den = den * hs;
        }
        let mut g = kind.numerator(t) * pert.w(order_of(*kind), t * sigma + x) / den * 2f64.powi(p as i32);
        for _ in p..COMMON_ORDER {
            g = g * t;
        }
        // the expansion variable is d = −t
        let g = g.reflect();
        for (j, row) in coeffs.iter_mut().enumerate() {
            row[c] = g.c[j];
        }
    }
    let expansion = LocalExpansion {
        p: COMMON_ORDER,
        coeffs,
    };
    finite_part(f, &expansion, 0.0, -PI, PI, DEFAULT_TOLERANCE)
}
