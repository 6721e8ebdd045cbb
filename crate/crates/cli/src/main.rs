mod input;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use invcong::bench::{self, BenchConfig};
use invcong::{
    join, meet, pair_closure, CongruenceDS, CongruenceError, ElementPartition, InverseSemigroup,
    MuCongruence, Pair, PartialPerm, SemigroupError,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    NotInSemigroup(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Parse(_) => 3,
            CliError::NotInSemigroup(_) => 4,
        }
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::Semigroup(SemigroupError::NotInSemigroup(x)) => {
                CliError::NotInSemigroup(format!(
                    "{} is not an element of the semigroup",
                    x.to_cycle_notation()
                ))
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        CongruenceError::from(e).into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Engine {
    Fast,
    Naive,
}

/// Congruences on inverse semigroups of partial permutations.
#[derive(Debug, Parser)]
#[command(name = "invcong", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Congruence engine: the trace/normal-subgroup data structure or brute-force pair closure.
    #[arg(long, global = true, value_enum, default_value = "fast")]
    engine: Engine,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, idempotents and D-classes of a semigroup.
    Info { semigroup: PathBuf },
    /// Class count and per-component data of the congruence generated by the pairs.
    Congruence { semigroup: PathBuf, pairs: PathBuf },
    /// The class of an element.
    ClassOf {
        semigroup: PathBuf,
        pairs: PathBuf,
        element: String,
    },
    /// Whether two elements are related; exit status 0 if so, 1 if not.
    Contains {
        semigroup: PathBuf,
        pairs: PathBuf,
        a: String,
        b: String,
    },
    /// Elements related to an idempotent.
    Kernel { semigroup: PathBuf, pairs: PathBuf },
    /// Partition of the idempotents.
    Trace { semigroup: PathBuf, pairs: PathBuf },
    /// One representative per class.
    Reps { semigroup: PathBuf, pairs: PathBuf },
    /// Join of the congruences generated by two pair files.
    Join {
        semigroup: PathBuf,
        pairs1: PathBuf,
        pairs2: PathBuf,
    },
    /// Meet of the congruences generated by two pair files.
    Meet {
        semigroup: PathBuf,
        pairs1: PathBuf,
        pairs2: PathBuf,
    },
    /// The maximum idempotent-separating congruence.
    Mu { semigroup: PathBuf },
    /// Time both engines on random semigroups of degree 6 and 7.
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        instances: usize,
        #[arg(long, default_value_t = 5000)]
        min_size: usize,
        /// Also write the CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// A congruence from either engine.
enum Model {
    Fast(CongruenceDS),
    Naive {
        s: Arc<InverseSemigroup>,
        partition: ElementPartition,
    },
}

impl Model {
    fn new(engine: Engine, s: &Arc<InverseSemigroup>, pairs: &[Pair]) -> Result<Self, CliError> {
        Ok(match engine {
            Engine::Fast => Model::Fast(CongruenceDS::compute(Arc::clone(s), pairs)?),
            Engine::Naive => Model::Naive {
                s: Arc::clone(s),
                partition: pair_closure(s, pairs)?,
            },
        })
    }

    fn classes(&self) -> usize {
        match self {
            Model::Fast(c) => c.nr_classes(),
            Model::Naive { partition, .. } => partition.block_count(),
        }
    }

    fn contains(&self, a: &PartialPerm, b: &PartialPerm) -> Result<bool, CliError> {
        match self {
            Model::Fast(c) => Ok(c.contains(a, b)?),
            Model::Naive { s, partition } => {
                Ok(partition.same_block(require(s, a)?, require(s, b)?))
            }
        }
    }

    fn class_of(&self, x: &PartialPerm) -> Result<Vec<PartialPerm>, CliError> {
        match self {
            Model::Fast(c) => Ok(c.class_of(x)?),
            Model::Naive { s, partition } => {
                let block = partition.block(partition.block_of(require(s, x)?));
                Ok(sorted(
                    block.iter().map(|&i| s.element(i).clone()).collect(),
                ))
            }
        }
    }

    fn kernel(&self) -> Vec<PartialPerm> {
        match self {
            Model::Fast(c) => c.kernel(),
            Model::Naive { s, partition } => {
                let blocks: HashSet<usize> = s
                    .idempotents()
                    .iter()
                    .map(|e| partition.block_of(s.index_of(e).expect("idempotent of s")))
                    .collect();
                sorted(
                    (0..s.size())
                        .filter(|&i| blocks.contains(&partition.block_of(i)))
                        .map(|i| s.element(i).clone())
                        .collect(),
                )
            }
        }
    }

    fn trace(&self) -> Vec<Vec<PartialPerm>> {
        let classes = match self {
            Model::Fast(c) => c.trace_classes(),
            Model::Naive { s, partition } => {
                let mut by_block: Vec<Vec<PartialPerm>> = vec![Vec::new(); partition.block_count()];
                for e in s.idempotents() {
                    by_block[partition.block_of(s.index_of(e).expect("idempotent of s"))]
                        .push(e.clone());
                }
                by_block.into_iter().filter(|c| !c.is_empty()).collect()
            }
        };
        sorted(classes.into_iter().map(sorted).collect())
    }

    fn reps(&self) -> Vec<PartialPerm> {
        match self {
            Model::Fast(c) => c.class_reps(),
            Model::Naive { s, partition } => partition
                .blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&i| s.element(i))
                        .min()
                        .expect("blocks are non-empty")
                        .clone()
                })
                .collect(),
        }
    }

    fn components(&self) -> Option<Vec<ComponentReport>> {
        let Model::Fast(c) = self else { return None };
        Some(
            c.components()
                .iter()
                .map(|k| ComponentReport {
                    f: k.f.to_string(),
                    trace_classes: k.blocks.len(),
                    group_order: k.group.size(),
                    normal_order: k.normal.size(),
                    quotient_group_order: k.transversal.len(),
                })
                .collect(),
        )
    }
}

fn require(s: &InverseSemigroup, x: &PartialPerm) -> Result<usize, CliError> {
    s.index_of(x).ok_or_else(|| {
        CliError::NotInSemigroup(format!(
            "{} is not an element of the semigroup",
            x.to_cycle_notation()
        ))
    })
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn strings(xs: &[PartialPerm]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn cycles(xs: &[PartialPerm]) -> String {
    xs.iter()
        .map(PartialPerm::to_cycle_notation)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Serialize)]
struct InfoReport {
    degree: usize,
    generators: Vec<String>,
    size: usize,
    idempotents: usize,
    d_classes: usize,
}

#[derive(Serialize)]
struct ComponentReport {
    f: String,
    trace_classes: usize,
    group_order: usize,
    normal_order: usize,
    quotient_group_order: usize,
}

#[derive(Serialize)]
struct CongruenceReport {
    engine: Engine,
    classes: usize,
    components: Option<Vec<ComponentReport>>,
}

#[derive(Serialize)]
struct MuReport {
    atoms: Vec<Vec<usize>>,
    centraliser: Vec<String>,
    classes: usize,
    trivial: bool,
}

#[derive(Serialize)]
struct BenchRow {
    instance: usize,
    degree: usize,
    size: usize,
    idempotents: usize,
    pairs: usize,
    classes: usize,
    fast_seconds: f64,
    naive_seconds: f64,
    ratio: f64,
    agree: bool,
}

fn print_json<T: Serialize>(o: &mut String, value: &T) {
    let _ = writeln!(
        o,
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn load(path: &Path) -> Result<Arc<InverseSemigroup>, CliError> {
    let (degree, gens) = input::read_semigroup(path)?;
    Ok(Arc::new(
        InverseSemigroup::new(degree, &gens).map_err(|e| CliError::Parse(e.to_string()))?,
    ))
}

fn load_with_pairs(sgp: &Path, prs: &Path) -> Result<(Arc<InverseSemigroup>, Vec<Pair>), CliError> {
    let s = load(sgp)?;
    let pairs = input::read_pairs(prs, s.degree())?;
    Ok((s, pairs))
}

fn report_congruence(o: &mut String, json: bool, engine: Engine, model: &Model) {
    let report = CongruenceReport {
        engine,
        classes: model.classes(),
        components: model.components(),
    };
    if json {
        print_json(o, &report);
        return;
    }
    let _ = writeln!(o, "classes: {}", report.classes);
    for (i, c) in report.components.iter().flatten().enumerate() {
        let _ = writeln!(
            o,
            "component {i}: f = {}, trace classes {}, |G| = {}, |N| = {}, |G/N| = {}",
            c.f, c.trace_classes, c.group_order, c.normal_order, c.quotient_group_order
        );
    }
}

fn report_elements(o: &mut String, json: bool, key: &str, xs: &[PartialPerm]) {
    if json {
        print_json(o, &serde_json::json!({ key: strings(xs) }));
    } else {
        for x in xs {
            let _ = writeln!(o, "{}", x.to_cycle_notation());
        }
    }
}

fn run(cli: Cli, o: &mut String) -> Result<u8, CliError> {
    let (json, engine) = (cli.json, cli.engine);
    let is_join = matches!(cli.command, Command::Join { .. });
    match cli.command {
        Command::Info { semigroup } => {
            let s = load(&semigroup)?;
            let report = InfoReport {
                degree: s.degree(),
                generators: strings(s.generators()),
                size: s.size(),
                idempotents: s.idempotent_count(),
                d_classes: s.d_classes().len(),
            };
            if json {
                print_json(o, &report);
            } else {
                let _ = writeln!(o, "degree: {}", report.degree);
                let _ = writeln!(o, "size: {}", report.size);
                let _ = writeln!(o, "idempotents: {}", report.idempotents);
                let _ = writeln!(o, "D-classes: {}", report.d_classes);
            }
        }
        Command::Congruence { semigroup, pairs } => {
            let (s, pairs) = load_with_pairs(&semigroup, &pairs)?;
            report_congruence(o, json, engine, &Model::new(engine, &s, &pairs)?);
        }
        Command::ClassOf {
            semigroup,
            pairs,
            element,
        } => {
            let (s, pairs) = load_with_pairs(&semigroup, &pairs)?;
            let x = input::parse_element(&element, s.degree())?;
            let class = Model::new(engine, &s, &pairs)?.class_of(&x)?;
            if json {
                print_json(
                    o,
                    &serde_json::json!({ "element": x.to_string(), "class": strings(&class) }),
                );
            } else {
                let _ = writeln!(o, "{}", cycles(&class));
            }
        }
        Command::Contains {
            semigroup,
            pairs,
            a,
            b,
        } => {
            let (s, pairs) = load_with_pairs(&semigroup, &pairs)?;
            let a = input::parse_element(&a, s.degree())?;
            let b = input::parse_element(&b, s.degree())?;
            let related = Model::new(engine, &s, &pairs)?.contains(&a, &b)?;
            if json {
                print_json(
                    o,
                    &serde_json::json!({ "a": a.to_string(), "b": b.to_string(), "related": related }),
                );
            } else {
                let _ = writeln!(o, "{related}");
            }
            return Ok(if related { 0 } else { 1 });
        }
        Command::Kernel { semigroup, pairs } => {
            let (s, pairs) = load_with_pairs(&semigroup, &pairs)?;
            report_elements(o, json, "kernel", &Model::new(engine, &s, &pairs)?.kernel());
        }
        Command::Trace { semigroup, pairs } => {
            let (s, pairs) = load_with_pairs(&semigroup, &pairs)?;
            let classes = Model::new(engine, &s, &pairs)?.trace();
            if json {
                let classes: Vec<Vec<String>> = classes.iter().map(|c| strings(c)).collect();
                print_json(o, &serde_json::json!({ "classes": classes }));
            } else {
                for class in &classes {
                    let _ = writeln!(o, "{{{}}}", cycles(class));
                }
            }
        }
        Command::Reps { semigroup, pairs } => {
            let (s, pairs) = load_with_pairs(&semigroup, &pairs)?;
            report_elements(
                o,
                json,
                "representatives",
                &Model::new(engine, &s, &pairs)?.reps(),
            );
        }
        Command::Join {
            semigroup,
            pairs1,
            pairs2,
        }
        | Command::Meet {
            semigroup,
            pairs1,
            pairs2,
        } => {
            let (s, r1) = load_with_pairs(&semigroup, &pairs1)?;
            let r2 = input::read_pairs(&pairs2, s.degree())?;
            let model = match engine {
                Engine::Fast => {
                    let c1 = CongruenceDS::compute(Arc::clone(&s), &r1)?;
                    let c2 = CongruenceDS::compute(Arc::clone(&s), &r2)?;
                    Model::Fast(if is_join {
                        join(&c1, &c2)?
                    } else {
                        meet(&c1, &c2)?
                    })
                }
                Engine::Naive => {
                    let partition = if is_join {
                        let both: Vec<Pair> = r1.iter().chain(&r2).cloned().collect();
                        pair_closure(&s, &both)?
                    } else {
                        pair_closure(&s, &r1)?.meet(&pair_closure(&s, &r2)?)
                    };
                    Model::Naive { s, partition }
                }
            };
            report_congruence(o, json, engine, &model);
        }
        Command::Mu { semigroup } => {
            let s = load(&semigroup)?;
            let mu = MuCongruence::new(Arc::clone(&s));
            let centraliser = mu.centraliser();
            let classes = mu.as_congruence().nr_classes();
            let report = MuReport {
                atoms: mu.atoms().atoms().to_vec(),
                centraliser: strings(&centraliser),
                classes,
                trivial: classes == s.size(),
            };
            if json {
                print_json(o, &report);
            } else {
                let atoms: Vec<String> = report
                    .atoms
                    .iter()
                    .map(|a| {
                        format!(
                            "{{{}}}",
                            a.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })
                    .collect();
                let _ = writeln!(o, "atoms: {}", atoms.join(" "));
                let kernel_is_e = centraliser.len() == s.idempotent_count();
                let _ = writeln!(
                    o,
                    "kernel (centraliser of E(S)): {} elements{}",
                    centraliser.len(),
                    if kernel_is_e { ", equal to E(S)" } else { "" }
                );
                let _ = writeln!(o, "classes: {classes}");
                let _ = writeln!(o, "trivial: {}", report.trivial);
            }
        }
        Command::Bench {
            seed,
            instances,
            min_size,
            csv,
        } => {
            let records = bench::run(&BenchConfig {
                seed,
                instances,
                min_size,
                ..BenchConfig::default()
            });
            let text = bench::to_csv(&records);
            if let Some(path) = csv {
                std::fs::write(&path, &text)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let median = bench::median_ratio(&records);
            if json {
                let rows: Vec<BenchRow> = records
                    .iter()
                    .map(|r| BenchRow {
                        instance: r.instance,
                        degree: r.degree,
                        size: r.size,
                        idempotents: r.idempotents,
                        pairs: r.pairs,
                        classes: r.classes,
                        fast_seconds: r.fast_seconds,
                        naive_seconds: r.naive_seconds,
                        ratio: r.ratio(),
                        agree: r.agree,
                    })
                    .collect();
                print_json(
                    o,
                    &serde_json::json!({ "records": rows, "median_ratio": median }),
                );
            } else {
                o.push_str(&text);
                if let Some(m) = median {
                    let _ = writeln!(o, "median ratio: {m:.2}");
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("invcong: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
