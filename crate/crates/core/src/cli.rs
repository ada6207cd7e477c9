//! Command-line front end. [`run`] returns the process exit code:
//! 0 when every claim holds, 1 when a violation is found, 2 for usage,
//! parse, or precondition errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::arith::{graph_of, is_schmidt_subgroup, GraphKind, SchmidtWitness};
use crate::corpus::{corpus, load_group, NamedGroup};
use crate::error::{GroupError, Result};
use crate::group::max_order_from_env;
use crate::ops::permutes_fast;
use crate::products::{is_mutually_permutable, is_n_connected, is_totally_permutable, ProductDecomposition};
use crate::props::{check, Property, Subject};
use crate::scan::{count_violations, scan_questions, Question};
use crate::series::FormationTag;
use crate::verify::{VerificationReport, Verifier};

#[derive(Parser, Debug)]
#[command(name = "primegraph", version, about = "Arithmetic graphs of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Hawkes,
    Sylow,
    Ncrit,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Thm1,
    Thm2,
    Mut,
    Thm4,
    Ro2,
    Lemma1,
    Lemma2,
    Equal,
    Centralizer,
    Undirected,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormationArg {
    Nilpotent,
    Supersoluble,
}

impl From<FormationArg> for FormationTag {
    fn from(f: FormationArg) -> FormationTag {
        match f {
            FormationArg::Nilpotent => FormationTag::Nilpotent,
            FormationArg::Supersoluble => FormationTag::Supersoluble,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum QuestionArg {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
}

impl From<QuestionArg> for Question {
    fn from(q: QuestionArg) -> Question {
        match q {
            QuestionArg::Q1 => Question::Q1,
            QuestionArg::Q2 => Question::Q2,
            QuestionArg::Q3 => Question::Q3,
            QuestionArg::Q4 => Question::Q4,
            QuestionArg::Q5 => Question::Q5,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Sylow, Hawkes or N-critical graph of a group.
    Graphs {
        /// A group file or `builtin:<spec>`.
        group: String,
        #[arg(long, value_enum, default_value = "all")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a theorem or lemma on one decomposition.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long)]
        group: String,
        /// Comma-separated subgroup names.
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
        #[arg(long, value_enum, default_value = "nilpotent")]
        formation: FormationArg,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Report how two subgroups permute.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
    },
    /// Scan the corpus for answers to an open question.
    Scan {
        #[arg(long, default_value_t = 200)]
        max_order: usize,
        #[arg(long, value_enum)]
        question: QuestionArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the invariant suites over the corpus.
    Props {
        #[arg(long, default_value_t = 500)]
        max_order: usize,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut out = std::io::stdout().lock();
    match execute(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let cap = max_order_from_env();
    let io = |e: std::io::Error| GroupError::Unknown(e.to_string());
    match command {
        Command::Graphs { group, kind, format } => {
            let g = load_group(&group, cap)?;
            let text = render_graphs(&g, kind, format)?;
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Verify { theorem, group, factors, formation, format } => {
            let g = load_group(&group, cap)?;
            let report = run_verify(&g, theorem, &factors, formation.into())?;
            let text = match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("json")),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(if report.holds() { 0 } else { 1 })
        }
        Command::Classify { group, factors } => {
            let g = load_group(&group, cap)?;
            let resolved = resolve_factors(&g, &factors)?;
            let [a, b] = &resolved[..] else {
                return Err(GroupError::PreconditionFailed("classify takes exactly two factors".into()));
            };
            let yes = |b: bool| if b { "yes" } else { "no" };
            let product = a.order() * b.order() / a.set().intersection_count(b.set());
            writeln!(out, "product-is-group: {}", yes(product == g.group.order())).map_err(io)?;
            writeln!(out, "permutable: {}", yes(permutes_fast(a, b))).map_err(io)?;
            writeln!(out, "mutually-permutable: {}", yes(is_mutually_permutable(a, b)?)).map_err(io)?;
            writeln!(out, "totally-permutable: {}", yes(is_totally_permutable(a, b)?)).map_err(io)?;
            writeln!(out, "n-connected: {}", yes(is_n_connected(a, b)?)).map_err(io)?;
            Ok(0)
        }
        Command::Scan { max_order, question, jobs } => {
            let groups = corpus(max_order, cap)?;
            let question: Question = question.into();
            let records = scan_questions(&groups, question, jobs)?;
            for r in &records {
                writeln!(out, "{r}").map_err(io)?;
            }
            let violations = count_violations(&records);
            writeln!(out, "SCAN {question} groups={} records={} violations={violations}", groups.len(), records.len())
                .map_err(io)?;
            Ok(if violations == 0 { 0 } else { 1 })
        }
        Command::Props { max_order } => {
            let groups = corpus(max_order, cap)?;
            let subjects = groups.iter().map(Subject::new).collect::<Result<Vec<_>>>()?;
            let mut total = 0;
            for prop in Property::ALL {
                let mut violations = 0;
                for s in &subjects {
                    if let Some(detail) = check(prop, s)? {
                        violations += 1;
                        writeln!(out, "PROP {prop} group={} FAILS {detail}", s.named.name).map_err(io)?;
                    }
                }
                writeln!(out, "PROP {prop} groups={} violations={violations}", subjects.len()).map_err(io)?;
                total += violations;
            }
            Ok(if total == 0 { 0 } else { 1 })
        }
    }
}

fn kinds(kind: KindArg) -> Vec<GraphKind> {
    match kind {
        KindArg::Hawkes => vec![GraphKind::Hawkes],
        KindArg::Sylow => vec![GraphKind::Sylow],
        KindArg::Ncrit => vec![GraphKind::NCritical],
        KindArg::All => GraphKind::ALL.to_vec(),
    }
}

fn render_graphs(g: &NamedGroup, kind: KindArg, format: Format) -> Result<String> {
    let ks = kinds(kind);
    let graphs = ks.iter().map(|&k| graph_of(k, &g.group).map(|gr| (k, gr))).collect::<Result<Vec<_>>>()?;
    let single = graphs.len() == 1;
    let mut s = String::new();
    match format {
        Format::Text => {
            for (k, gr) in &graphs {
                if single {
                    s.push_str(&format!("{gr}\n"));
                } else {
                    s.push_str(&format!("{k}: {gr}\n"));
                }
            }
        }
        Format::Dot => {
            for (k, gr) in &graphs {
                s.push_str(&gr.to_dot(k.name()));
            }
        }
        Format::Json => {
            let v = if single {
                graphs[0].1.to_json()
            } else {
                let mut m = Map::new();
                for (k, gr) in &graphs {
                    m.insert(k.name().to_string(), gr.to_json());
                }
                json!({ "group": g.name, "graphs": Value::Object(m) })
            };
            s.push_str(&serde_json::to_string_pretty(&v).expect("json"));
            s.push('\n');
        }
    }
    Ok(s)
}

fn resolve_factors(g: &NamedGroup, names: &[String]) -> Result<Vec<crate::group::Subgroup>> {
    names.iter().map(|n| g.subgroup(n.trim())).collect()
}

fn run_verify(g: &NamedGroup, theorem: Theorem, names: &[String], formation: FormationTag) -> Result<VerificationReport> {
    let v = Verifier::new(&g.group);
    let factors = resolve_factors(g, names)?;
    let decomposition = || ProductDecomposition::new(factors.clone());
    let report = match theorem {
        Theorem::Thm1 => v.thm1(&decomposition()?)?,
        Theorem::Thm2 => v.thm2(&decomposition()?)?,
        Theorem::Mut => v.mutual(&decomposition()?)?,
        Theorem::Thm4 => v.thm4(&decomposition()?)?,
        Theorem::Ro2 => v.ro2(&decomposition()?)?,
        Theorem::Lemma1 => v.lemma1(&decomposition()?, formation)?,
        Theorem::Lemma2 => v.lemma2(formation)?,
        Theorem::Equal => v.equal()?,
        Theorem::Undirected => v.undirected(&decomposition()?)?,
        Theorem::Centralizer => {
            let [a, s] = &factors[..] else {
                return Err(GroupError::PreconditionFailed("centralizer takes factors A,S".into()));
            };
            let (p, q) = is_schmidt_subgroup(s)
                .ok_or_else(|| GroupError::PreconditionFailed("S is not a Schmidt subgroup".into()))?;
            v.centralizer_lemma(a, &SchmidtWitness { p, q, subgroup: s.clone() })?
        }
    };
    let labels: Vec<String> = names.iter().map(|n| n.trim().to_string()).collect();
    Ok(report.with_labels(&g.name, &labels))
}
