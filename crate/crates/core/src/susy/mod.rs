//! Rationally extended SUSY partners of the complexified Scarf II potential.
//!
//! With `W(x) = a tanh x + i b sech x - i cosh x / (i sinh x + c)` the
//! original potential is `V = W^2 - W' + E` and the partner is
//! `V_ext = W^2 + W' + E`. The four branches are labelled by (ε₊, ε₋);
//! only v2 > 0 is supported.

mod branch;
mod exceptional;
mod states;

pub use branch::{extended_potential, factorizing_function, solve_branch, superpotential, superpotential_derivative, BranchKind, PartnerBranch};
pub use exceptional::{exceptional_jacobi, partner_polynomial};
pub use states::{
    added_state, partner_closed_form, partner_singularity, partner_spectrum, partner_wavefunction,
    AddedLevel, DegeneracyNote, LevelOrigin, LevelRef, PartnerLevel, PartnerSingularityReport,
    PartnerSpectrumEdit,
};
