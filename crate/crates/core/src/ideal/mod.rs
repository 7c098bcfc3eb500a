//! Generators of the defining ideal of the orbit of `lambda_{S,a}`: minors
//! `M_gamma` of the generic matrix, coefficients `P_{gamma,1}` of the
//! characteristic minors, and their checks over `F_q`.

mod display;
mod fixture;
mod generators;
mod poly;
mod render;
mod verify;

#[cfg(test)]
mod tests;

pub use display::{display_equations, display_system, DisplayEquation, DisplayForm, DisplaySystem};
pub use fixture::{match_system, Equation, EquationMatch, EquationSystem, MatchKind, Param, SystemReport};
pub use generators::{
    build_generators, char_minor, corner_minor, evaluate_poly, f_gamma, instantiate, minor_m_gamma, minor_of_x,
    s_gamma, symbolic_generators, x_var, Generator, GeneratorKind, GeneratorSet, Minor, TauPoly,
};
pub use poly::{determinant, CompiledPoly, MultiPoly};
pub use render::{render_equation, render_generator, render_minor, render_param_poly, render_y_poly, y_name};
pub use verify::{
    ambient_size, orbit_equation_checks, scan_variety, verify_generator_set, verify_orbit_equations, verify_separation,
    OrbitEquationReport, SeparationReport, VarietyScan, Witness,
};
