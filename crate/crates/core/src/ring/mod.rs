//! Perturbed-ring functionals, the kernel identity and the vibration spectrum.

mod functionals;
mod kernels;
mod modes;

pub use functionals::{
    double_integral, e_loc, e_nonloc, e_tot_functional, e_tot_reduced, nonlocal_double_integrals,
    IntegrationOrder, NonlocalMethod, QuadraticFunctional, BENDING_STIFFNESS, DOUBLE_INTEGRAL_NODES,
};
pub use kernels::{
    kernel_eval, kernel_identity_residual, KernelId, KernelKind, IDENTITY_MARGIN, KERNEL_MIN_DISTANCE,
    MAX_KERNEL_DERIVATIVE,
};
pub use modes::{discrete_mode_frequency, mode_frequencies, omega2_closed_form, ModeSpectrum, FIT_EPSILON};
