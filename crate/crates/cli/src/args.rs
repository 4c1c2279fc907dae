use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scarf_core::Sign;

#[derive(Debug, Parser)]
#[command(name = "scarf", version, about = "Spectra, spectral singularities and SUSY partners of the PT-symmetric Scarf II potential")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form eigenvalues and wavefunction parameters.
    Spectrum(SpectrumArgs),
    /// Samples of one closed-form wavefunction on the grid.
    Wavefunction(WavefunctionArgs),
    /// Spectral-singularity report, optionally with a locus scan.
    Singularity(SingularityArgs),
    /// The four SUSY partner branches, their potentials and spectrum edits.
    Partner(PartnerArgs),
    /// Transmission and reflection over a range of wavenumbers.
    Scatter(ScatterArgs),
    /// Analytic-versus-numeric cross-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, allow_negative_numbers = true)]
    pub v1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: f64,
    /// Half-width L of the grid [-L, L].
    #[arg(long = "domain", default_value_t = 20.0)]
    pub domain: f64,
    /// Number of grid points (odd, at least 201).
    #[arg(long, default_value_t = 4001)]
    pub points: usize,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchSpec {
    pub eps_plus: Sign,
    pub eps_minus: Sign,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got '{s}'")),
    }
}

pub fn parse_branch(s: &str) -> Result<BranchSpec, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(a), Some(b), None) => Ok(BranchSpec {
            eps_plus: parse_sign(&a.to_string())?,
            eps_minus: parse_sign(&b.to_string())?,
        }),
        _ => Err(format!("expected one of ++, +-, -+, --, got '{s}'")),
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    /// Also run the grid eigensolver and report its localized eigenvalues.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true, default_value = "+")]
    pub epsilon: Sign,
    /// Emit the partner state of level (n, epsilon) on this branch instead.
    #[arg(long, value_parser = parse_branch, allow_hyphen_values = true)]
    pub branch: Option<BranchSpec>,
    /// With --branch: emit the added state 1/φ instead of an intertwined level.
    #[arg(long, requires = "branch")]
    pub added: bool,
}

#[derive(Debug, Args)]
pub struct SingularityArgs {
    #[command(flatten)]
    pub common: Common,
    /// Sample the locus v1 + |v2| = 4n² + 4n + 3/4 and locate |T| peaks along it.
    #[arg(long)]
    pub scan: bool,
    /// Locus index for --scan; defaults to the detected n*.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 0.5)]
    pub v1_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub v1_max: f64,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    #[arg(long)]
    pub k_min: Option<f64>,
    #[arg(long)]
    pub k_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PartnerArgs {
    #[command(flatten)]
    pub common: Common,
    /// Restrict output to one branch.
    #[arg(long, value_parser = parse_branch, allow_hyphen_values = true)]
    pub branch: Option<BranchSpec>,
    /// Keep every k-th grid point in the sampled partner potentials.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0.5)]
    pub k_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub k_max: f64,
    #[arg(long, default_value_t = 200)]
    pub k_steps: usize,
    /// Scatter off the partner potential of this branch.
    #[arg(long, value_parser = parse_branch, allow_hyphen_values = true)]
    pub branch: Option<BranchSpec>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_labels() {
        let b = parse_branch("+-").unwrap();
        assert_eq!((b.eps_plus, b.eps_minus), (Sign::Plus, Sign::Minus));
        assert!(parse_branch("+").is_err());
        assert!(parse_branch("+x").is_err());
        assert!(parse_branch("+++").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
