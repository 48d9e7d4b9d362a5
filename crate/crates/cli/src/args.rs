use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kz", version, about = "Koszul homology, partial Euler-Poincare characteristics and dd-sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Problem file (TOML).
    #[arg(long)]
    pub problem: PathBuf,
    /// Index k of the characteristic.
    #[arg(long)]
    pub k: Option<usize>,
    /// Exponents n_1,...,n_d.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    /// Sample exponents range over {1..grid}^d.
    #[arg(long)]
    pub grid: Option<u32>,
    /// Bound for joint quantifiers; defaults to the problem's n_max.
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Worker threads; defaults to the number of logical cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    pub out: Output,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelArg {
    D,
    StrongD,
    Dd,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// chi_k through colon multiplicities against the alternating sum.
    Lemma21,
    /// Koszul homology lengths from H^0 lengths, for strong d-sequences.
    Cmm,
    /// Local cohomology lengths of a generalized Cohen-Macaulay module.
    Gc,
    /// chi_1 closed form, equivalent to the dd property.
    Thm12,
    /// chi_k closed form for dd-sequences.
    Thm14,
    /// chi_k from the dimension filtration of a sequentially CM module.
    Thm15,
    /// Colon stabilization against polynomial behaviour of chi_k.
    Thm11,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// chi_k(x(n); M) with all Koszul homology lengths.
    Chi(Common),
    /// chi_k(x(n); M) on {1..grid}^d.
    ChiTable(Common),
    /// Koszul homology lengths at one exponent tuple.
    Homology(Common),
    /// d-, strong d- and dd-sequence checks.
    SeqCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = LevelArg::Dd)]
        level: LevelArg,
    },
    /// Multilinear fit of chi_k on {1..grid}^d.
    Fit(Common),
    /// Estimated p_k(M), the degree of chi_k(x(n); M).
    Pk(Common),
    /// Lengths of H^0_m(M / (x_1^{n_1}, ..., x_i^{n_i}) M).
    H0(Common),
    /// Local cohomology lengths.
    Lc {
        #[command(flatten)]
        common: Common,
        /// Cohomological degree; all admissible degrees when omitted.
        #[arg(long)]
        i: Option<usize>,
    },
    /// The dimension filtration.
    Filtration(Common),
    /// Sequentially Cohen-Macaulay test.
    Seqcm(Common),
    /// Distinguished systems of parameters.
    Distinguished(Common),
    /// Dual-route checks of the length identities.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Prints the problem file in canonical form.
    Fmt {
        #[arg(long)]
        problem: PathBuf,
    },
}
