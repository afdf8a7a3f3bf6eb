use std::fmt::Display;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use defectont::diagnosis::{diagnose, DiagnosisError};
use defectont::dlo::{export_interchange, parse_module, serialize_module, SourceModule};
use defectont::linker::{
    bridge_equivalences, kb_to_module, link, normalize_names, parse_pairs, parse_signature, prune_to_signature, LinkError, Linked,
    LoadError,
};
use defectont::model::{KnowledgeBase, ModelError};
use defectont::query::{answer, parse_query, QueryError};
use defectont::reasoner::{Reasoner, ReasonerError};

/// Reasoning over modular description-logic knowledge bases written in the
/// `.dlo` format. Imports resolve to sibling `<name>.dlo` files.
#[derive(Parser)]
#[command(name = "defectont", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check consistency.
    Check { root: PathBuf },
    /// Print the class hierarchy.
    Classify {
        root: PathBuf,
        /// Graphviz output instead of indented text.
        #[arg(long)]
        dot: bool,
    },
    /// Most specific classes of an individual, one per line.
    Realize { root: PathBuf, individual: String },
    /// Answer `instance? IND CONCEPT`, `fillers? IND ROLE` or `value? IND ATTR UNIT`.
    Ask { root: PathBuf, query: String },
    /// Narrow down the source of a defect by ruling sources out.
    Diagnose {
        root: PathBuf,
        individual: String,
        defect_class: String,
        /// Comma-separated classes ruled out as sources.
        #[arg(long, value_delimiter = ',')]
        rule_out: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Link, transform and write out a single module.
    Merge {
        root: PathBuf,
        /// Keep only axioms reachable from the names in this file.
        #[arg(long)]
        prune_to: Option<PathBuf>,
        /// Tab-separated old/new name pairs.
        #[arg(long)]
        rename: Option<PathBuf>,
        /// Tab-separated class pairs to declare equivalent.
        #[arg(long)]
        bridge: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Write the linked knowledge base in OWL 2 functional syntax.
    Export {
        root: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// A failure with its exit code: 1 for usage and input errors, 2 for
/// logical outcomes such as inconsistency.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(category: &str, e: impl Display) -> Failure {
        Failure { code: 1, message: format!("{category}: {e}") }
    }

    fn logical(category: &str, e: impl Display) -> Failure {
        Failure { code: 2, message: format!("{category}: {e}") }
    }
}

impl From<LinkError> for Failure {
    fn from(e: LinkError) -> Failure {
        let category = match &e {
            LinkError::Load { source: LoadError::Parse(_), .. } => "parse",
            LinkError::Load { source: LoadError::Io(_), .. } => "io",
            _ => "link",
        };
        Failure::usage(category, e)
    }
}

impl From<ReasonerError> for Failure {
    fn from(e: ReasonerError) -> Failure {
        match e {
            ReasonerError::Model(m) => m.into(),
            e => Failure::logical("reasoner", e),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Failure {
        Failure::usage("name", e)
    }
}

impl From<QueryError> for Failure {
    fn from(e: QueryError) -> Failure {
        match e {
            QueryError::Parse(p) => Failure::usage("query", p),
            QueryError::Reasoner(r) => r.into(),
            QueryError::Unit(u) => Failure::usage("unit", u),
            e => Failure::logical("query", e),
        }
    }
}

impl From<DiagnosisError> for Failure {
    fn from(e: DiagnosisError) -> Failure {
        match e {
            DiagnosisError::Model(m) => m.into(),
            DiagnosisError::Reasoner(r) => r.into(),
            DiagnosisError::NoBridge(_) => Failure::usage("diagnosis", e),
            DiagnosisError::NotEntailed { .. } => Failure::logical("diagnosis", e),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn load_dir(dir: &Path, name: &str) -> Result<SourceModule, LoadError> {
    let path = dir.join(format!("{name}.dlo"));
    let text = fs::read_to_string(&path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => LoadError::NotFound,
        _ => LoadError::Io(format!("{}: {e}", path.display())),
    })?;
    Ok(parse_module(&text)?)
}

fn load(root: &Path) -> Result<Linked, Failure> {
    let name = root
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Failure::usage("usage", format!("not a module file: {}", root.display())))?;
    if !root.is_file() {
        return Err(Failure::usage("io", format!("{}: no such file", root.display())));
    }
    let dir = root.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(link(name, |m| load_dir(&dir, m))?)
}

fn consistent(r: &Reasoner) -> Result<(), Failure> {
    if r.is_consistent()? {
        Ok(())
    } else {
        Err(Failure::logical("reasoner", ReasonerError::Inconsistent))
    }
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Check { root } => {
            let kb = load(&root)?.kb;
            if Reasoner::new(&kb).is_consistent()? {
                Ok("consistent\n".into())
            } else {
                Err(Failure { code: 2, message: "inconsistent".into() })
            }
        }
        Command::Classify { root, dot } => {
            let kb = load(&root)?.kb;
            let r = Reasoner::new(&kb);
            consistent(&r)?;
            let tax = r.classify()?;
            Ok(if dot { tax.to_dot() } else { tax.render_text() })
        }
        Command::Realize { root, individual } => {
            let kb = load(&root)?.kb;
            let a = kb.individual(&individual)?;
            let r = Reasoner::new(&kb);
            consistent(&r)?;
            Ok(r.realize(a)?.into_iter().map(|c| format!("{}\n", kb.name(c))).collect())
        }
        Command::Ask { root, query } => {
            let kb = load(&root)?.kb;
            let q = parse_query(&query, &kb)?;
            let out = answer(&Reasoner::new(&kb), &q)?.to_string();
            Ok(if out.is_empty() { out } else { out + "\n" })
        }
        Command::Diagnose { root, individual, defect_class, rule_out, json } => {
            let kb = load(&root)?.kb;
            let d = kb.individual(&individual)?;
            let class = kb.class(&defect_class)?;
            let ruled_out = rule_out.iter().map(|c| kb.class(c.trim())).collect::<Result<Vec<_>, _>>()?;
            let diag = diagnose(&kb, d, class, &ruled_out)?;
            Ok(if json { diag.to_json() + "\n" } else { diag.to_string() })
        }
        Command::Merge { root, prune_to, rename, bridge, output } => {
            let mut kb: KnowledgeBase = load(&root)?.kb;
            if let Some(p) = prune_to {
                let sig = parse_signature(&read(&p)?, &kb)?;
                kb = prune_to_signature(&kb, &sig)?;
            }
            if let Some(p) = rename {
                kb = normalize_names(&kb, &parse_pairs(&read(&p)?)?)?;
            }
            if let Some(p) = bridge {
                kb = bridge_equivalences(&kb, &parse_pairs(&read(&p)?)?)?;
            }
            let name = output.file_stem().and_then(|s| s.to_str()).unwrap_or("merged");
            let text = serialize_module(&kb_to_module(&kb, name));
            fs::write(&output, text).map_err(|e| Failure::usage("io", format!("{}: {e}", output.display())))?;
            Ok(String::new())
        }
        Command::Export { root, output } => {
            let text = export_interchange(&load(&root)?.kb);
            match output {
                Some(p) => {
                    fs::write(&p, text).map_err(|e| Failure::usage("io", format!("{}: {e}", p.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
