use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "pcfcert", version, about = "Exact certificates for bicritical PCF polynomial families")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads for parallel scans and enumerations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Cap on the monomial count d^(n-1) d^(m-1) for symbolic constructions.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Belyi normal forms.
    #[command(subcommand)]
    Belyi(BelyiCmd),
    /// Index-divisor-free primes.
    #[command(subcommand)]
    Idf(IdfCmd),
    /// Valuation dynamics at an IDF prime.
    #[command(subcommand)]
    Valdyn(ValdynCmd),
    /// PCF loci, integrality and transversality.
    #[command(subcommand)]
    Pcf(PcfCmd),
    /// Re-runs the command recorded in a JSON report.
    Replay(ReplayArgs),
}

#[derive(Subcommand, Debug)]
pub enum BelyiCmd {
    /// Coefficients of B_{d,k}.
    Coeffs(DkArgs),
    /// Normal form with prescribed critical multiplicities.
    Ncrit(NcritArgs),
}

#[derive(Subcommand, Debug)]
pub enum IdfCmd {
    /// Smallest IDF witness for (d, k).
    Find(DkArgs),
    /// Witness search over a range of degrees.
    Scan(ScanArgs),
    /// Integral points behind the IDF exceptions.
    Mordell(MordellArgs),
    /// Prime with index not dividing its exponent in n(n-1)...(n-k).
    Conjecture(ConjectureArgs),
}

#[derive(Subcommand, Debug)]
pub enum ValdynCmd {
    /// Simulated valuations along a critical orbit.
    Orbit(OrbitArgs),
    /// Case tag and divergence certificate.
    Classify(ValArgs),
}

#[derive(Subcommand, Debug)]
pub enum PcfCmd {
    /// Critical-orbit polynomials F_n and G_m.
    Locus(LocusArgs),
    /// p-adic integrality certificate from resultants.
    Integrality(LocusArgs),
    /// Jacobian check over GF(p^e).
    Transversality(TransversalityArgs),
    /// Checks on three-critical-point forms.
    Counterexamples(EmptyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct EmptyArgs {}

#[derive(Args, Debug, Serialize)]
pub struct DkArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct NcritArgs {
    #[arg(long)]
    pub d: u64,
    /// Multiplicities at 1, γ_1, ... (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    pub profile: Vec<u64>,
    /// Extra critical points as rationals (comma separated). Omit with a
    /// two-entry profile to keep γ symbolic.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub dmin: u64,
    #[arg(long)]
    pub dmax: u64,
    #[arg(long)]
    pub k: u64,
    /// Emit every degree, not only those without a witness.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct MordellArgs {
    #[arg(long)]
    pub xmax: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ValArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
    /// Index r; defaults to the first IDF witness.
    #[arg(long)]
    pub r: Option<u64>,
    /// Exponent e = v_p(d - r); defaults to the first IDF witness.
    #[arg(long)]
    pub e: Option<u32>,
    /// v_p(α) as an integer, "n/d", or "inf".
    #[arg(long, allow_hyphen_values = true)]
    pub valpha: String,
    /// v_p(β) as an integer, "n/d", or "inf".
    #[arg(long, allow_hyphen_values = true)]
    pub vbeta: String,
}

#[derive(Args, Debug, Serialize)]
pub struct OrbitArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub val: ValArgs,
    /// Critical point, 0 or 1.
    #[arg(long, default_value_t = 0)]
    pub start: u8,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct LocusArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct TransversalityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub locus: LocusArgs,
    #[arg(long, default_value_t = 1)]
    pub emax: u32,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    /// Path to a JSON report.
    pub report: std::path::PathBuf,
}
