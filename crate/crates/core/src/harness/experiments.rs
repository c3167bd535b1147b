use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::continuum::{continuum_total_energy, continuum_field, ring_energy_closed_form, FieldMode};
use crate::discrete::{
    max_angle_to, redimensionalize, regularized_field_at, total_energy, OptimizeOptions, Quantity,
};
use crate::error::{Error, Result};
use crate::geometry::{build_circular_ring, build_perturbed_ring, make_curve, CurveFamily};
use crate::harness::records::{Check, ResultRecord, RowKind};
use crate::harness::{ExperimentConfig, ExperimentKind};
use crate::ring::{discrete_mode_frequency, mode_frequencies};
use crate::vec3::Vec3;

/// Coefficient `c` of the per-point sweep check `|gap| ≤ c·n⁻³`.
pub const SWEEP_GAP_COEFFICIENT: f64 = 40.0;
/// Optimizer tolerance used by `align`.
pub const ALIGN_OPTIMIZER_TOL: f64 = 1e-10;

/// An experiment that stopped early, with the records completed so far.
#[derive(Debug)]
pub struct ExperimentFailure {
    pub partial: Vec<ResultRecord>,
    pub error: Error,
}

impl std::fmt::Display for ExperimentFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (after {} records)", self.error, self.partial.len())
    }
}

impl std::error::Error for ExperimentFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

/// Runs `cfg` and returns its records sorted by kind, row, `n` and index.
pub fn run_experiment(cfg: &ExperimentConfig) -> std::result::Result<Vec<ResultRecord>, ExperimentFailure> {
    let mut out = Vec::new();
    if let Err(error) = cfg.validate() {
        return Err(ExperimentFailure { partial: out, error });
    }
    let mut ns = cfg.effective_ns();
    ns.sort_unstable();
    ns.dedup();
    let result = match cfg.kind {
        ExperimentKind::Sweep => sweep(cfg, &ns, &mut out),
        ExperimentKind::CompareField => compare_field(cfg, &ns, &mut out),
        ExperimentKind::Align => align(cfg, &ns, &mut out),
        ExperimentKind::Modes => modes(cfg, &ns, &mut out),
        ExperimentKind::RingEnergy => ring_energy(cfg, &ns, &mut out),
    };
    out.sort_by_key(|r| r.sort_key());
    match result {
        Ok(()) => Ok(out),
        Err(error) => Err(ExperimentFailure { partial: out, error }),
    }
}

fn context(kind: ExperimentKind, n: usize, e: Error) -> Error {
    match e {
        Error::NumericalFailure(msg) => Error::NumericalFailure(format!("{kind} n = {n}: {msg}")),
        Error::InvalidParameter(msg) => Error::InvalidParameter(format!("{kind} n = {n}: {msg}")),
        other => other,
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::invalid("slope fit needs two or more positive points"));
    }
    let m = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("slope fit needs distinct sizes"));
    }
    Ok(sxy / sxx)
}

fn sweep(cfg: &ExperimentConfig, ns: &[usize], out: &mut Vec<ResultRecord>) -> Result<()> {
    let kind = ExperimentKind::Sweep;
    let mut fit = Vec::new();
    for &n in ns {
        let discrete = total_energy(&build_circular_ring(n)?).map_err(|e| context(kind, n, e))?;
        let closed = ring_energy_closed_form(n)?;
        let nf = n as f64;
        let err = (discrete - closed) / nf;
        if n >= 8 {
            fit.push((nf, err.abs()));
        }
        let check = Check::new(err.abs(), SWEEP_GAP_COEFFICIENT / nf.powi(4));
        out.push(
            ResultRecord::new(kind, RowKind::Point, n, 0, check)
                .with("discrete_energy", discrete)
                .with("closed_form_energy", closed)
                .with("per_magnet_error", err),
        );
    }
    let slope = log_log_slope(&fit)?;
    let check = Check::new((slope + 4.0).abs(), cfg.effective_tolerance());
    out.push(ResultRecord::new(kind, RowKind::Summary, 0, 0, check).with("slope", slope));
    Ok(())
}

fn compare_field(cfg: &ExperimentConfig, ns: &[usize], out: &mut Vec<ResultRecord>) -> Result<()> {
    let kind = ExperimentKind::CompareField;
    for &n in ns {
        let curve = make_curve(CurveFamily::Circle { n })?;
        let ring = build_circular_ring(n)?;
        let points = cfg.points.min(n);
        for j in 0..points {
            let i = j * n / points;
            let s = i as f64 / n as f64;
            let d = regularized_field_at(&ring, i).map_err(|e| context(kind, n, e))?;
            let c = continuum_field(&curve, s, n, FieldMode::Regularized).map_err(|e| context(kind, n, e))?;
            let rel = (d - c).norm() / d.norm();
            out.push(
                ResultRecord::new(kind, RowKind::Point, n, i as u64, Check::new(rel, cfg.effective_tolerance()))
                    .with("s", s)
                    .with("discrete_bx", d.x)
                    .with("discrete_by", d.y)
                    .with("discrete_bz", d.z)
                    .with("continuum_bx", c.x)
                    .with("continuum_by", c.y)
                    .with("continuum_bz", c.z)
                    .with("relative_error", rel),
            );
        }
    }
    Ok(())
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let r = v.norm();
        if r > 0.1 && r <= 1.0 {
            return v / r;
        }
    }
}

/// Tilts every moment by `angle` about a random axis perpendicular to it.
pub fn tilted_moments(moments: &[Vec3], angle: f64, seed: u64) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    moments
        .iter()
        .map(|&m| loop {
            if let Some(axis) = random_unit(&mut rng).cross(m).normalized() {
                break m.rotate_about(axis, angle);
            }
        })
        .collect()
}

fn align(cfg: &ExperimentConfig, ns: &[usize], out: &mut Vec<ResultRecord>) -> Result<()> {
    let kind = ExperimentKind::Align;
    let opts = OptimizeOptions {
        tol: ALIGN_OPTIMIZER_TOL,
        ..OptimizeOptions::default()
    };
    for &n in ns {
        let base = build_perturbed_ring(n, &cfg.perturbation)?;
        let tangents = base.polygon_tangents();
        for run in 0..cfg.runs as u64 {
            let seed = cfg.seed.wrapping_add(run);
            let start = base.with_moments(tilted_moments(base.moments(), cfg.tilt, seed))?;
            let initial = max_angle_to(start.moments(), &tangents, true);
            let res = opts.run(&start).map_err(|e| context(kind, n, e))?;
            let angle = max_angle_to(res.config.moments(), &tangents, true);
            out.push(
                ResultRecord::new(kind, RowKind::Point, n, seed, Check::new(angle, cfg.effective_tolerance()))
                    .with("initial_max_angle", initial)
                    .with("final_max_angle", angle)
                    .with("energy", res.energy)
                    .with("iterations", res.iterations as f64)
                    .with("gradient_norm", res.gradient_norm),
            );
        }
    }
    Ok(())
}

fn modes(cfg: &ExperimentConfig, ns: &[usize], out: &mut Vec<ResultRecord>) -> Result<()> {
    let kind = ExperimentKind::Modes;
    for &n in ns {
        let spectrum = mode_frequencies(&cfg.spec, n, cfg.k_max)?;
        for k in 2..=cfg.k_max {
            let closed = spectrum.omega(k).unwrap_or(f64::NAN);
            let fitted = discrete_mode_frequency(n, k, &cfg.spec).map_err(|e| context(kind, n, e))?;
            let rel = (fitted / closed - 1.0).abs();
            out.push(
                ResultRecord::new(kind, RowKind::Point, n, k as u64, Check::new(rel, cfg.effective_tolerance()))
                    .with("omega_closed_form", closed)
                    .with("omega_discrete", fitted)
                    .with("relative_error", rel),
            );
        }
    }
    Ok(())
}

fn ring_energy(cfg: &ExperimentConfig, ns: &[usize], out: &mut Vec<ResultRecord>) -> Result<()> {
    let kind = ExperimentKind::RingEnergy;
    for &n in ns {
        let discrete = total_energy(&build_circular_ring(n)?).map_err(|e| context(kind, n, e))?;
        let closed = ring_energy_closed_form(n)?;
        let parts = continuum_total_energy(&make_curve(CurveFamily::Circle { n })?, n)
            .map_err(|e| context(kind, n, e))?;
        let gap = discrete - closed;
        let check = Check::new(gap.abs(), cfg.effective_tolerance() / (n as f64).powi(3));
        out.push(
            ResultRecord::new(kind, RowKind::Point, n, 0, check)
                .with("discrete_energy", discrete)
                .with("closed_form_energy", closed)
                .with("gap", gap)
                .with("ground", parts.ground)
                .with("local", parts.local)
                .with("nonlocal", parts.nonlocal)
                .with("continuum_total", parts.total)
                .with("discrete_energy_joules", redimensionalize(Quantity::Energy(discrete), &cfg.spec)),
        );
    }
    Ok(())
}
