use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hdisc::algebra::{element_profile, inferred_level, AlgebraError, ElemSet, FiniteAlgebra, VarietyClass};
use hdisc::catalog::{algebra_to_string, parse_algebra, read_presentation, read_quasiidentity, Catalog, CatalogError, IoError};
use hdisc::congruence::{
    boolean_projection, decompose_simples, generated_congfilter, quotient, to_congruence, CongruenceError,
};
use hdisc::decision::{
    decide_projective_finite, decide_projective_fp, diagram_alpha, eval_alpha, primitive_report, two_algebra,
    DecisionError,
};
use hdisc::morphism::{is_retract, HomSearch, MorphismError};
use hdisc::term::{check_quasiidentity, rho, EvalError, QuasiResult};

#[derive(Parser)]
#[command(name = "hdisc")]
#[command(about = "Finite algebras in Heyting-based discriminator varieties")]
#[command(version)]
struct Cli {
    /// Emit each result as a JSON record instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra file against the axioms of its class
    Validate { file: PathBuf },
    /// Open, dense and regular elements, Boolean reduct, simplicity
    Profile { file: PathBuf },
    /// Search homomorphisms from A to B
    Homs {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Only onto homomorphisms
        #[arg(long)]
        onto: bool,
        /// Count instead of returning one
        #[arg(long, conflicts_with = "all")]
        count: bool,
        /// List every homomorphism
        #[arg(long)]
        all: bool,
        /// Stop after this many; the result is then marked truncated
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Quotient by the congruence filter generated by the given elements
    Quotient {
        file: PathBuf,
        /// Comma-separated element indices
        #[arg(long, value_delimiter = ',', required = true)]
        filter: Vec<usize>,
    },
    /// Decompose into simple factors
    Decompose { file: PathBuf },
    /// Decide projectivity of a finite algebra or of a presentation
    Projective {
        /// ws5, hri, hdp:N or dht:N
        #[arg(long)]
        class: VarietyClass,
        #[arg(required_unless_present = "presentation", conflicts_with = "presentation")]
        file: Option<PathBuf>,
        /// Presentation file: {"vars": [...], "atoms": [{"lhs": ..., "rhs": ...}]}
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Check the quasiidentity rho, or another one given with --rule
    Rho {
        file: PathBuf,
        /// Quasiidentity file: {"premises": [...], "conclusion": {...}}
        #[arg(long)]
        rule: Option<PathBuf>,
    },
    /// Evaluate the first-order sentence alpha
    Alpha { file: PathBuf },
    /// Decide whether B is a retract of P
    Retract { file_p: PathBuf, file_b: PathBuf },
    /// Quotient by the filter generated by the dense elements
    Boolproj { file: PathBuf },
    /// Report whether the quasivariety generated by the algebras is primitive
    Primitive {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Write every algebra of a class up to a size into a directory
    Catalog {
        #[arg(long)]
        class: VarietyClass,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Decision(#[from] DecisionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            CliError::Morphism(MorphismError::TheoremViolation(_))
                | CliError::Decision(DecisionError::TheoremViolation(_))
                | CliError::Congruence(CongruenceError::Internal(_))
        )
    }
}

/// A result record; `decided` drives the exit code when present.
struct Outcome {
    record: Value,
    decided: Option<bool>,
}

impl Outcome {
    fn info(record: Value) -> Self {
        Outcome { record, decided: None }
    }

    fn decided(value: bool, record: Value) -> Self {
        Outcome {
            record,
            decided: Some(value),
        }
    }
}

fn load(path: &Path) -> Result<FiniteAlgebra, CliError> {
    Ok(parse_algebra(path, &read(path)?)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| {
        IoError::Io {
            path: path.to_path_buf(),
            source,
        }
        .into()
    })
}

fn algebra_record(a: &FiniteAlgebra) -> Value {
    serde_json::from_str(&algebra_to_string(a)).expect("writer emits JSON")
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file } => match parse_algebra(&file, &read(&file)?) {
            Ok(a) => Ok(Outcome::decided(
                true,
                json!({"file": file, "name": a.name(), "class": a.class().to_string(), "valid": true}),
            )),
            Err(IoError::Algebra {
                source: AlgebraError::Invalid(report),
                ..
            }) => Ok(Outcome::decided(
                false,
                json!({"file": file, "valid": false, "violations": report.violations}),
            )),
            Err(IoError::Algebra {
                source: AlgebraError::DerivedBox { axiom, witness },
                ..
            }) => Ok(Outcome::decided(
                false,
                json!({"file": file, "valid": false, "violations": [{"axiom": format!("derived {axiom}"), "witness": witness}]}),
            )),
            Err(e) => Err(e.into()),
        },
        Command::Profile { file } => {
            let a = load(&file)?;
            Ok(Outcome::info(json!({
                "name": a.name(),
                "class": a.class().to_string(),
                "size": a.size(),
                "profile": element_profile(&a),
                "inferred_level": inferred_level(&a),
            })))
        }
        Command::Homs {
            file_a,
            file_b,
            onto,
            count,
            all,
            cap,
        } => {
            let (a, b) = (load(&file_a)?, load(&file_b)?);
            let search = HomSearch::new(&a, &b).onto(onto).cap(cap);
            if count {
                let (n, truncated) = search.count().map_err(MorphismError::from)?;
                Ok(Outcome::info(json!({"count": n, "truncated": truncated})))
            } else if all {
                let (homs, truncated) = search.all().map_err(MorphismError::from)?;
                let maps: Vec<&[usize]> = homs.iter().map(|h| h.map()).collect();
                Ok(Outcome::info(json!({"count": maps.len(), "homs": maps, "truncated": truncated})))
            } else {
                let hom = search.first().map_err(MorphismError::from)?;
                Ok(Outcome::decided(hom.is_some(), json!({"exists": hom.is_some(), "hom": hom})))
            }
        }
        Command::Quotient { file, filter } => {
            let a = load(&file)?;
            if let Some(&bad) = filter.iter().find(|&&x| x >= a.size()) {
                return Err(CliError::Usage(format!("element {bad} is outside {}", a.name())));
            }
            let f = generated_congfilter(&a, filter.iter().copied().collect::<ElemSet>());
            let theta = to_congruence(&a, &f)?;
            let (q, proj) = quotient(&a, &theta)?;
            Ok(Outcome::info(json!({
                "filter": f,
                "congruence": theta,
                "projection": proj.map(),
                "quotient": algebra_record(&q),
            })))
        }
        Command::Decompose { file } => {
            let a = load(&file)?;
            let factors = decompose_simples(&a)?;
            let sizes: Vec<usize> = factors.iter().map(FiniteAlgebra::size).collect();
            let records: Vec<Value> = factors.iter().map(algebra_record).collect();
            Ok(Outcome::info(json!({"sizes": sizes, "factors": records})))
        }
        Command::Projective {
            class,
            file,
            presentation,
        } => {
            if let Some(p) = presentation {
                let d = read_presentation(&p)?;
                let v = decide_projective_fp(class, &d)?;
                return Ok(Outcome::decided(v.projective, json!(v)));
            }
            let file = file.expect("clap requires a file without --presentation");
            let a = load(&file)?;
            if !a.class().same_kind(&class) {
                return Err(CliError::Usage(format!(
                    "{} has class {}, not {class}",
                    a.name(),
                    a.class()
                )));
            }
            let v = decide_projective_finite(&a)?;
            Ok(Outcome::decided(v.projective, json!(v)))
        }
        Command::Rho { file, rule } => {
            let a = load(&file)?;
            let q = match rule {
                Some(p) => read_quasiidentity(&p)?,
                None => rho(),
            };
            let result = check_quasiidentity(&a, &q)?;
            let holds = result.holds();
            let witness = match result {
                QuasiResult::Holds => None,
                QuasiResult::Fails { witness } => Some(witness),
            };
            Ok(Outcome::decided(
                holds,
                json!({"quasiidentity": q.to_string(), "holds": holds, "witness": witness}),
            ))
        }
        Command::Alpha { file } => {
            let a = load(&file)?;
            let alpha = diagram_alpha(&two_algebra(a.class()));
            let value = eval_alpha(&a, &alpha).map_err(DecisionError::from)?;
            Ok(Outcome::decided(value, json!({"alpha": value})))
        }
        Command::Retract { file_p, file_b } => {
            let (p, b) = (load(&file_p)?, load(&file_b)?);
            let w = is_retract(&p, &b)?;
            Ok(Outcome::decided(w.is_some(), json!({"retract": w.is_some(), "witness": w})))
        }
        Command::Boolproj { file } => {
            let a = load(&file)?;
            let (q, proj) = boolean_projection(&a)?;
            Ok(Outcome::info(json!({"projection": proj.map(), "quotient": algebra_record(&q)})))
        }
        Command::Primitive { files } => {
            let algebras = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            let report = primitive_report(&algebras)?;
            Ok(Outcome::decided(report.primitive, json!(report)))
        }
        Command::Catalog { class, max_size, out } => {
            let c = Catalog::generate(class, max_size)?;
            let paths = c.write_to(&out)?;
            Ok(Outcome::info(json!({"class": class.to_string(), "max_size": max_size, "written": paths.len()})))
        }
    }
}

/// `key: value` per line; strings bare, everything else compact JSON.
fn render_text(record: &Value) -> String {
    match record {
        Value::Object(fields) => fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.record);
            } else {
                println!("{}", render_text(&outcome.record));
            }
            match outcome.decided {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string(), "theorem_violation": e.is_theorem_violation()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if e.is_theorem_violation() { 3 } else { 2 })
        }
    }
}
