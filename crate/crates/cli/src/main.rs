//! fmz: a workbench for exact computations in the Freudenthal module over
//! cubic Jordan algebras of split composition rings.
//!
//! Exit codes: 0 ok, 1 self-test failure, 2 parse error, 3 domain error,
//! 4 precondition violation, 5 internal invariant, 6 resource/IO error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use fmz_core::error::Error as CoreError;
use fmz_core::freudenthal::FreudenthalElement;
use fmz_core::jordan::{JordanElement, JordanKind};
use fmz_core::par::ExecMode;
use fmz_core::reduction::{self, FieldCanonicalForm};
use fmz_core::scalar::Scalar;
use fmz_core::{isomorphisms, structure, BigRational};

const FORMAT_TAG: &str = "fmz-1";

#[derive(Debug)]
enum CliError {
    Parse(String),
    Domain(String),
    Precondition(String),
    Internal(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Internal(_) => 5,
            CliError::Resource(_) => 6,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Domain(m)
            | CliError::Precondition(m)
            | CliError::Internal(m)
            | CliError::Resource(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse(m) => CliError::Parse(m),
            CoreError::AlgebraMismatch(a, b) => {
                CliError::Domain(format!("mixed composition algebras: {a} vs {b}"))
            }
            CoreError::KindMismatch(a, b) => {
                CliError::Domain(format!("jordan kind mismatch: {a} vs {b}"))
            }
            CoreError::DomainRestriction { needed, got } => {
                CliError::Domain(format!("operation requires the {needed} domain, got {got}"))
            }
            CoreError::Precondition(m) => CliError::Precondition(m),
            CoreError::NonInvertibleDivision(a, b) => {
                CliError::Precondition(format!("non-invertible division {a} / {b}"))
            }
            CoreError::Internal(m) => CliError::Internal(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalarsArg {
    Int,
    Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Diag3,
    H3F,
    H3B,
    H3H,
    H3O,
}

impl From<KindArg> for JordanKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Diag3 => JordanKind::Diag3,
            KindArg::H3F => JordanKind::H3F,
            KindArg::H3B => JordanKind::H3B,
            KindArg::H3H => JordanKind::H3H,
            KindArg::H3O => JordanKind::H3O,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    Cube,
    Wedge,
    Module,
}

#[derive(Debug, Args)]
struct InputArg {
    /// Path of the JSON input, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "fmz", version, about = "Exact arithmetic workbench for the Freudenthal module over cubic Jordan algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the invariant forms, rank, and orbit data of an element.
    Eval {
        #[command(flatten)]
        input: InputArg,
        /// Scalar domain of the input element.
        #[arg(long, value_enum, default_value_t = ScalarsArg::Int)]
        scalars: ScalarsArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Carry an integral element to its diagonal reduced form.
    Reduce {
        #[command(flatten)]
        input: InputArg,
        /// Emit the witness word.
        #[arg(long)]
        witness: bool,
        /// Replay the witness before printing and report the check.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Canonicalize: projective canonical form over int, the field-case
    /// canonical form over rat.
    Canonical {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ScalarsArg::Int)]
        scalars: ScalarsArg,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Smith normal form of an integral Hermitian Jordan element.
    Snf {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Convert between the module element, cube, and wedge encodings.
    Convert {
        #[command(flatten)]
        input: InputArg,
        /// Target encoding. `module` converts a cube or wedge back.
        #[arg(long, value_enum)]
        to: ConvertTarget,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate or sample elements and bucket them by norm and orbit label.
    Census {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Coordinate height of the box or of the samples.
        #[arg(long, default_value_t = 1)]
        height: u32,
        /// Number of random samples; omit for the exhaustive Diag3 census.
        #[arg(long)]
        samples: Option<u64>,
        /// RNG seed (falls back to the FMZ_SEED environment variable).
        #[arg(long)]
        seed: Option<u64>,
        /// Worker count: 1 forces the sequential engine.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Stop after this many elements and mark the output truncated.
        #[arg(long, default_value_t = 100_000_000)]
        max_elements: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the built-in identity suites.
    Selftest {
        /// Suites to run (composition, jordan, structure, freudenthal,
        /// reduction, isomorphisms, cubes); all when omitted.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_input(path: &str) -> CliResult<Value> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Resource(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Resource(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| {
        CliError::Parse(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn emit(out: &OutArg, text: &str) -> CliResult<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Resource(format!("writing {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn envelope(body: Value) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("format".into(), Value::String(FORMAT_TAG.into()));
    if let Value::Object(m) = body {
        for (k, v) in m {
            obj.insert(k, v);
        }
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable")
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.or_else(|| {
        std::env::var("FMZ_SEED").ok().and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn eval_report_int(x: &FreudenthalElement<BigInt>) -> CliResult<Value> {
    let gram: Vec<Value> = (0..FreudenthalElement::<BigInt>::dim(x.kind()))
        .map(|i| {
            let e = FreudenthalElement::basis_element(x.kind(), i);
            Scalar::to_json(&x.symplectic(&e))
        })
        .collect();
    let inv = reduction::invariants(x);
    let proj = reduction::projectivity(x)?;
    Ok(json!({
        "kind": x.kind().name(),
        "scalars": "int",
        "q": Scalar::to_json(&x.quartic_q()),
        "q_prime": Scalar::to_json(&x.quartic_qprime()),
        "gram_row": gram,
        "t_xxx": x.t_xxx().to_json(),
        "rank": x.rank(),
        "invariants": inv.to_json(),
        "projectivity": proj.to_json(),
        "fundamental_discriminant": reduction::is_fundamental_discriminant(&x.quartic_qprime()),
    }))
}

fn eval_report_rat(x: &FreudenthalElement<BigRational>) -> Value {
    let gram: Vec<Value> = (0..FreudenthalElement::<BigRational>::dim(x.kind()))
        .map(|i| {
            let e = FreudenthalElement::basis_element(x.kind(), i);
            Scalar::to_json(&x.symplectic(&e))
        })
        .collect();
    json!({
        "kind": x.kind().name(),
        "scalars": "rat",
        "q": Scalar::to_json(&x.quartic_q()),
        "q_prime": Scalar::to_json(&x.quartic_qprime()),
        "gram_row": gram,
        "t_xxx": x.t_xxx().to_json(),
        "rank": x.rank(),
    })
}

fn run(cli: Cli) -> CliResult<Option<u8>> {
    match cli.command {
        Command::Eval { input, scalars, out } => {
            let v = read_input(&input.input)?;
            let body = match scalars {
                ScalarsArg::Int => {
                    let x = FreudenthalElement::<BigInt>::from_json(&v)?;
                    eval_report_int(&x)?
                }
                ScalarsArg::Rat => {
                    let x = FreudenthalElement::<BigRational>::from_json(&v)?;
                    eval_report_rat(&x)
                }
            };
            emit(&out, &envelope(body))?;
            Ok(None)
        }
        Command::Reduce { input, witness, verify, out } => {
            let v = read_input(&input.input)?;
            let x = FreudenthalElement::<BigInt>::from_json(&v)?;
            let red = reduction::reduce_diagonal(&x)?;
            let mut body = json!({
                "kind": red.kind.name(),
                "alpha": Scalar::to_json(&red.alpha),
                "beta": Scalar::to_json(&red.beta),
                "a": red.a.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                "element": red.element().to_json(),
            });
            if witness {
                body["witness"] = red.witness.to_json();
            }
            if verify {
                let replay = red.witness.apply(&x)?;
                if replay != red.element() {
                    return Err(CliError::Internal("witness replay mismatch".into()));
                }
                body["verified"] = Value::Bool(true);
            }
            emit(&out, &envelope(body))?;
            Ok(None)
        }
        Command::Canonical { input, scalars, witness, verify, out } => {
            let v = read_input(&input.input)?;
            let body = match scalars {
                ScalarsArg::Int => {
                    let x = FreudenthalElement::<BigInt>::from_json(&v)?;
                    let (eps, k, word) = reduction::projective_canonicalize(&x)?;
                    let canonical = FreudenthalElement::<BigInt>::diagonal_i64(
                        x.kind(),
                        1,
                        eps as i64,
                        [1, 1, 0],
                    );
                    let mut canonical = canonical;
                    canonical.a.diag_mut()[2] = k.clone();
                    let mut body = json!({
                        "epsilon": eps,
                        "k": Scalar::to_json(&k),
                        "q_prime": Scalar::to_json(&x.quartic_qprime()),
                        "canonical": canonical.to_json(),
                    });
                    if witness {
                        body["witness"] = word.to_json();
                    }
                    if verify {
                        if word.apply(&x)? != canonical {
                            return Err(CliError::Internal("witness replay mismatch".into()));
                        }
                        body["verified"] = Value::Bool(true);
                    }
                    body
                }
                ScalarsArg::Rat => {
                    let x = FreudenthalElement::<BigRational>::from_json(&v)?;
                    let (form, word) = reduction::field_canonicalize(&x)?;
                    let (name, k) = match &form {
                        FieldCanonicalForm::Rank1 => ("rank1", None),
                        FieldCanonicalForm::Rank2 => ("rank2", None),
                        FieldCanonicalForm::Rank3 => ("rank3", None),
                        FieldCanonicalForm::Rank4 { k } => ("rank4", Some(Scalar::to_json(k))),
                    };
                    let mut body = json!({
                        "form": name,
                        "canonical": form.element(x.kind()).to_json(),
                    });
                    if let Some(k) = k {
                        body["k"] = k;
                    }
                    if witness {
                        body["witness"] = word.to_json();
                    }
                    if verify {
                        if word.apply(&x)? != form.element(x.kind()) {
                            return Err(CliError::Internal("witness replay mismatch".into()));
                        }
                        body["verified"] = Value::Bool(true);
                    }
                    body
                }
            };
            emit(&out, &envelope(body))?;
            Ok(None)
        }
        Command::Snf { input, witness, verify, out } => {
            let v = read_input(&input.input)?;
            let a = JordanElement::<BigInt>::from_json(&v)?;
            let (d, w) = structure::smith_normal_form(&a)?;
            let mut body = json!({
                "kind": a.kind().name(),
                "smith": d.to_json(),
                "invariant_factors": structure::invariant_factors(&a)?.to_json(),
            });
            if witness {
                body["witness"] = w.to_json();
            }
            if verify {
                let replayed = w.apply(&a)?;
                if replayed.diag() != &d.d || !replayed.is_diagonal() {
                    return Err(CliError::Internal("witness replay mismatch".into()));
                }
                body["verified"] = Value::Bool(true);
            }
            emit(&out, &envelope(body))?;
            Ok(None)
        }
        Command::Convert { input, to, out } => {
            let v = read_input(&input.input)?;
            let body = match to {
                ConvertTarget::Cube => {
                    let x = FreudenthalElement::<BigInt>::from_json(&v)?;
                    isomorphisms::to_cube(&x)?.to_json()
                }
                ConvertTarget::Wedge => {
                    let x = FreudenthalElement::<BigInt>::from_json(&v)?;
                    isomorphisms::to_wedge(&x)?.to_json()
                }
                ConvertTarget::Module => {
                    if let Ok(c) = isomorphisms::Cube::from_json(&v) {
                        isomorphisms::from_cube(&c).to_json()
                    } else if let Ok(w) = isomorphisms::WedgeElement::from_json(&v) {
                        isomorphisms::from_wedge(&w).to_json()
                    } else {
                        return Err(CliError::Parse(
                            "input is neither a cube nor a wedge vector".into(),
                        ));
                    }
                }
            };
            emit(&out, &envelope(json!({ "result": body })))?;
            Ok(None)
        }
        Command::Census {
            kind,
            height,
            samples,
            seed,
            jobs,
            max_elements,
            format,
            out,
        } => {
            let mode = match jobs {
                0 => ExecMode::Parallel,
                n => ExecMode::from_jobs(n),
            };
            let report = fmz_core::run_census(&fmz_core::CensusOptions {
                kind: kind.into(),
                height,
                samples,
                seed: seed_or_env(seed),
                mode,
                max_elements,
            })?;
            match format {
                FormatArg::Json => emit(&out, &envelope(report.to_json()))?,
                FormatArg::Csv => emit(&out, &report.to_csv())?,
            }
            Ok(None)
        }
        Command::Selftest { suite, seed } => {
            for s in &suite {
                if !fmz_core::selftest::SUITES.contains(&s.as_str()) {
                    return Err(CliError::Parse(format!(
                        "unknown suite {s:?}; available: {}",
                        fmz_core::selftest::SUITES.join(", ")
                    )));
                }
            }
            let results = fmz_core::selftest::run_selftest(&suite, seed_or_env(seed));
            let mut failed = 0;
            for r in &results {
                let status = if r.passed { "pass" } else { "FAIL" };
                println!("{status}  {:<13} {}", r.suite, r.name);
                if !r.passed {
                    println!("      {}", r.detail);
                    failed += 1;
                }
            }
            println!("{} checks, {} failed", results.len(), failed);
            Ok(if failed > 0 { Some(1) } else { None })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(code)) => ExitCode::from(code),
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = json!({
                "format": FORMAT_TAG,
                "error": e.message(),
                "exit_code": e.code(),
            });
            eprintln!("{}", serde_json::to_string(&msg).unwrap());
            ExitCode::from(e.code())
        }
    }
}
