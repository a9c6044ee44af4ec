use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fnrate::block_oracle::{run_oracle, OracleConfig, OracleSummary, DEFAULT_ENUMERATION_CAP};
use fnrate::bounds::{rate_report, RateBoundReport};
use fnrate::coding_schemes::{
    arith_scheme, expected_lengths, gf2_scheme, identity_forwarding, verify_zero_error,
    ExpectedLengthReport, SourceNetworkCode, VerificationMethod,
};
use fnrate::equivalence::{scalar_partition, v_count};
use fnrate::pair_structure::pair_index_set;
use fnrate::{fixtures, DemandFunction, Execution, Side};

use crate::report::{digest, envelope_json, fmt_f64, Table};

#[derive(Debug, Parser)]
#[command(name = "fnrate", version, about = "Zero-error rate bounds on the three-source diamond network")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single-letter rate lower bounds.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force block checks of the single-letter quantities.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a built-in code and report its expected lengths.
    Scheme {
        #[arg(long, value_enum)]
        name: SchemeName,
        /// Split point for the gf2 scheme.
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[command(flatten)]
        input: OptionalInput,
        #[command(flatten)]
        common: Common,
    },
    /// Equivalence classes, class counts and class-pair tables.
    Partitions {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Demand-function JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Bundled demand function.
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptionalInput {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
}

#[derive(Debug, Args)]
struct Common {
    /// Codeword alphabet size.
    #[arg(long, default_value_t = 2)]
    z: u32,
    /// Block length.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Enumeration cap.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run sweeps on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fixture {
    Gf3,
    Arithsum,
    Gf2sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeName {
    Gf2,
    Arith,
    Identity,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Core(fnrate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Core(fnrate::Error::ResourceCap { .. }) => 2,
            CliError::Core(fnrate::Error::Invariant(_)) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => f.write_str(msg),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<fnrate::Error> for CliError {
    fn from(e: fnrate::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn load(path: Option<&PathBuf>, fixture: Option<Fixture>) -> CliResult<Option<DemandFunction>> {
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Some(DemandFunction::load(&text)?));
    }
    Ok(fixture.map(|fx| match fx {
        Fixture::Gf3 => fixtures::gf3(),
        Fixture::Arithsum => fixtures::arithmetic_sum(),
        Fixture::Gf2sum => fixtures::gf2_sum(),
    }))
}

impl Input {
    fn load(&self) -> CliResult<DemandFunction> {
        Ok(load(self.input.as_ref(), self.fixture)?.expect("clap requires one input"))
    }
}

pub fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Bounds { input, common } => {
            let f = input.load()?;
            let report = rate_report(&f, common.z)?;
            Ok(emit(common.format, "bounds", &f, &report, bounds_text))
        }
        Command::Oracle { input, common } => {
            let f = input.load()?;
            let cfg = OracleConfig {
                k: common.k,
                enumeration_cap: common.cap,
                z_size: common.z,
                execution: common.execution(),
            };
            let summary = run_oracle(&f, &cfg)?;
            Ok(emit(common.format, "oracle", &f, &summary, oracle_text))
        }
        Command::Scheme { name, c, input, common } => {
            let given = load(input.input.as_ref(), input.fixture)?;
            let (f, code): (DemandFunction, Box<dyn SourceNetworkCode>) = match name {
                SchemeName::Gf2 => (
                    given.unwrap_or_else(fixtures::gf2_sum),
                    Box::new(gf2_scheme(common.k, c)?),
                ),
                SchemeName::Arith => (
                    given.unwrap_or_else(fixtures::arithmetic_sum),
                    Box::new(arith_scheme(common.k, common.cap)?),
                ),
                SchemeName::Identity => {
                    let f = given.ok_or_else(|| {
                        CliError::Core(fnrate::Error::InvalidParameter(
                            "identity scheme needs --input or --fixture".into(),
                        ))
                    })?;
                    let code = identity_forwarding(&f, common.k)?;
                    (f, Box::new(code))
                }
            };
            let exec = common.execution();
            let verdict = verify_zero_error(code.as_ref(), &f, common.cap, exec)?;
            let lengths = expected_lengths(code.as_ref(), &f, common.cap, exec)?;
            let payload = SchemePayload {
                zero_error: verdict.zero_error,
                verification: verdict.method,
                lengths,
            };
            Ok(emit(common.format, "scheme", &f, &payload, scheme_text))
        }
        Command::Partitions { input, format } => {
            let f = input.load()?;
            let payload = partitions(&f)?;
            Ok(emit(format, "partitions", &f, &payload, partitions_text))
        }
    }
}

fn emit<T: Serialize>(
    format: Format,
    command: &str,
    f: &DemandFunction,
    payload: &T,
    text: fn(&DemandFunction, &T) -> String,
) -> String {
    match format {
        Format::Json => envelope_json(command, &digest(&f.emit()), payload),
        Format::Text => text(f, payload),
    }
}

fn header(f: &DemandFunction) -> String {
    format!(
        "{} (|A| = {}, |B| = {})",
        f.name().unwrap_or("demand function"),
        f.a_size(),
        f.b_size()
    )
}

fn bounds_text(f: &DemandFunction, r: &RateBoundReport) -> String {
    let mut t = Table::new(format!("rate lower bounds for {}, |Z| = {}", header(f), r.z_size));
    t.float("R31 + R32 >=", r.r3_sum_lb)
        .float("R1 >=", r.r1_lb)
        .float("R2 >=", r.r2_lb)
        .float("(R1 + R2) / 2 >=", r.sum_rate_avg_lb)
        .float("gamma_1", r.gamma_1)
        .float("gamma_2", r.gamma_2)
        .float("alpha", r.alpha)
        .float("H(f)", r.h_f);
    format!("{}  note: {}\n", t.render(), r.note)
}

fn oracle_text(f: &DemandFunction, s: &OracleSummary) -> String {
    let mut t = Table::new(format!("block oracle for {}, k = {}", header(f), s.k));
    t.float("gamma_1", s.gamma_1)
        .float("gamma_block_1", s.gamma_block_1)
        .float("gamma_2", s.gamma_2)
        .float("gamma_block_2", s.gamma_block_2)
        .float("alpha", s.alpha)
        .float("alpha_block", s.alpha_block)
        .row(
            "alpha_block_direct",
            s.alpha_block_direct.map_or("skipped (cap)".to_string(), fmt_f64),
        )
        .row("max deviation", format!("{:.3e}", s.max_deviation));
    for c in &s.label_checks {
        t.row(
            format!("min labels u={} a3={}", c.side, c.a3),
            format!("{} (V = {})", c.min_labels, c.v_count),
        );
    }
    t.row(
        "h-vector block checks",
        format!("{} sampled, {} failed", s.h_block_samples, s.h_block_failures),
    )
    .row("result", if s.all_pass { "PASS" } else { "FAIL" });
    t.render()
}

#[derive(Serialize)]
struct SchemePayload {
    zero_error: bool,
    verification: VerificationMethod,
    #[serde(flatten)]
    lengths: ExpectedLengthReport,
}

fn scheme_text(f: &DemandFunction, p: &SchemePayload) -> String {
    let r = &p.lengths;
    let mut t = Table::new(format!("scheme {} (k = {}) on {}", r.scheme, r.k, header(f)));
    t.row(
        "zero error",
        format!("{} ({:?})", p.zero_error, p.verification).to_lowercase(),
    );
    let names = ["Z31", "Z32", "Z1", "Z2"];
    for ((name, len), rate) in names.iter().zip(r.lengths()).zip(r.rates()) {
        t.row(
            format!("E len {name}"),
            format!("{len} (rate {})", fmt_f64(rate)),
        );
    }
    t.row(
        "computation rate",
        r.computation_rate.map_or("-".to_string(), fmt_f64),
    );
    t.render()
}

#[derive(Serialize)]
struct PartitionsPayload {
    /// Class labels in this report start at 1.
    class_index_base: usize,
    partitions: Vec<SidePartition>,
    /// `v_table[u][a3]` is the class count for relay `u + 1`.
    v_table: Vec<Vec<usize>>,
    pair_tables: Vec<PairTable>,
}

#[derive(Serialize)]
struct SidePartition {
    side: usize,
    a3: usize,
    classes: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct PairTable {
    a3: usize,
    b: usize,
    /// `(v, w, h)`
    pairs: Vec<(usize, usize, u64)>,
}

fn partitions(f: &DemandFunction) -> CliResult<PartitionsPayload> {
    let a = f.a_size();
    let mut parts = Vec::new();
    let mut v_table = Vec::new();
    for u in Side::BOTH {
        v_table.push((0..a).map(|a3| v_count(f, u, a3)).collect());
        for a3 in 0..a {
            parts.push(SidePartition {
                side: u.index(),
                a3,
                classes: scalar_partition(f, u, a3).classes().to_vec(),
            });
        }
    }
    let mut pair_tables = Vec::new();
    for a3 in 0..a {
        for b in 0..f.b_size() {
            let pairs = match pair_index_set(f, a3, b) {
                Ok(set) => set.pairs.iter().map(|p| (p.v + 1, p.w + 1, p.h)).collect(),
                Err(fnrate::Error::EmptySupport { .. }) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            pair_tables.push(PairTable { a3, b, pairs });
        }
    }
    Ok(PartitionsPayload {
        class_index_base: 1,
        partitions: parts,
        v_table,
        pair_tables,
    })
}

fn partitions_text(f: &DemandFunction, p: &PartitionsPayload) -> String {
    let mut t = Table::new(format!("partitions of {}", header(f)));
    for s in &p.partitions {
        let classes: Vec<String> = s
            .classes
            .iter()
            .map(|c| {
                let members: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        t.row(format!("u={} a3={}", s.side, s.a3), classes.join(" ∪ "));
    }
    for (u, row) in p.v_table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        t.row(format!("V_{} by a3", u + 1), cells.join(" "));
    }
    for pt in &p.pair_tables {
        let cell = if pt.pairs.is_empty() {
            "∅".to_string()
        } else {
            let pairs: Vec<String> = pt
                .pairs
                .iter()
                .map(|(v, w, h)| format!("({v},{w}):{h}"))
                .collect();
            pairs.join(" ")
        };
        t.row(format!("V12(a3={}, b={})", pt.a3, pt.b), cell);
    }
    t.render()
}
