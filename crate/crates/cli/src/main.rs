//! `logconn`: decide, synthesize and verify logarithmic connections.
//!
//! Exit codes: 0 = exists / verified, 1 = does not exist / check failed,
//! 2 = invalid input, 3 = internal error (a synthesized certificate failed
//! verification and was withheld).

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use logconn::endalg::global_end_basis;
use logconn::schema::{self, ObstructionDocument, VerifyDocument};
use logconn::{obstruction_values, synthesize, verify, Instance, SplittingType};

use render::RigidityView;

#[derive(Parser)]
#[command(name = "logconn", version, about = "Logarithmic connections with prescribed residues on the projective line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the obstruction functional and decide existence.
    Decide {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Construct a verified connection form.
    Synthesize {
        instance: PathBuf,
        /// Certificate JSON destination (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a certificate against an instance.
    Verify {
        certificate: PathBuf,
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Per-point rigidity and, when all residues are rigid, the summand
    /// conditions.
    Rigidity {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dump the monomial basis of global endomorphisms.
    Basis {
        #[arg(allow_negative_numbers = true, required = true)]
        degrees: Vec<i64>,
    },
    /// Decide every `*.json` instance in a directory, ordered by file name.
    Batch { dir: PathBuf },
}

const EXISTS: u8 = 0;
const NOT_EXISTS: u8 = 1;
const INVALID: u8 = 2;
const INTERNAL: u8 = 3;

fn load_instance(path: &Path) -> Result<Instance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    schema::parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn decide(path: &Path, format: Format) -> Result<u8, String> {
    let inst = load_instance(path)?;
    let rep = obstruction_values(&inst);
    let code = if rep.exists { EXISTS } else { NOT_EXISTS };
    let out = match format {
        Format::Json => json(&ObstructionDocument::new(rep)),
        Format::Text => render::obstruction_text(&rep),
        Format::Latex => render::obstruction_latex(&rep),
    };
    print!("{out}");
    Ok(code)
}

fn synthesize_cmd(path: &Path, out: Option<&Path>, format: Format) -> Result<u8, String> {
    let inst = load_instance(path)?;
    let conn = match synthesize(&inst) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            let rep = obstruction_values(&inst);
            match format {
                Format::Json => print!("{}", json(&ObstructionDocument::new(rep))),
                Format::Latex => print!("{}", render::obstruction_latex(&rep)),
                Format::Text => {
                    for v in rep.failures() {
                        println!("{}: {}", v.basis, v.value);
                    }
                }
            }
            return Ok(NOT_EXISTS);
        }
    };
    let check = verify(&conn, &inst.residues);
    if !check.passed {
        eprintln!("internal error: synthesized certificate failed verification");
        eprint!("{}", render::verify_text(&check));
        return Ok(INTERNAL);
    }
    let cert = schema::certificate_json(&conn) + "\n";
    if let Some(dest) = out {
        fs::write(dest, &cert).map_err(|e| format!("{}: {e}", dest.display()))?;
    }
    match (format, out) {
        (Format::Json, None) => print!("{cert}"),
        (Format::Json, Some(_)) => {}
        (Format::Text, _) => print!("{}", render::connection_text(&conn)),
        (Format::Latex, _) => print!("{}", render::connection_latex(&conn)),
    }
    Ok(EXISTS)
}

fn verify_cmd(cert_path: &Path, inst_path: &Path, format: Format) -> Result<u8, String> {
    let text = fs::read_to_string(cert_path).map_err(|e| format!("{}: {e}", cert_path.display()))?;
    let conn = schema::parse_certificate(&text).map_err(|e| format!("{}: {e}", cert_path.display()))?;
    let inst = load_instance(inst_path)?;
    if conn.st != inst.st {
        println!(
            "certificate is for {}, instance bundle is {}",
            conn.st, inst.st
        );
        return Ok(NOT_EXISTS);
    }
    let rep = verify(&conn, &inst.residues);
    let code = if rep.passed { EXISTS } else { NOT_EXISTS };
    let out = match format {
        Format::Json => json(&VerifyDocument::new(rep)),
        Format::Text => render::verify_text(&rep),
        Format::Latex => render::verify_latex(&rep),
    };
    print!("{out}");
    Ok(code)
}

fn rigidity_cmd(path: &Path, format: Format) -> Result<u8, String> {
    let inst = load_instance(path)?;
    let view = RigidityView::compute(&inst);
    let out = match format {
        Format::Json => json(&view.json()),
        Format::Text => view.text(),
        Format::Latex => view.latex(),
    };
    print!("{out}");
    Ok(if view.exists() == Some(true) { EXISTS } else { NOT_EXISTS })
}

fn basis_cmd(degrees: Vec<i64>) -> Result<u8, String> {
    let st = SplittingType::new(degrees).map_err(|e| e.to_string())?;
    let dump: Vec<serde_json::Value> = global_end_basis(&st)
        .iter()
        .map(|b| {
            let r = b.rank();
            let rows: Vec<Vec<&logconn::Poly>> =
                (0..r).map(|i| (0..r).map(|j| b.entry(i, j)).collect()).collect();
            serde_json::json!({ "label": b.label(), "entries": rows })
        })
        .collect();
    print!("{}", json(&dump));
    Ok(EXISTS)
}

fn batch_cmd(dir: &Path) -> Result<u8, String> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let results: Vec<(String, Result<bool, String>)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, load_instance(p).map(|i| obstruction_values(&i).exists))
        })
        .collect();
    let mut code = EXISTS;
    for (name, r) in results {
        match r {
            Ok(e) => println!("{name}\texists: {e}"),
            Err(msg) => {
                println!("{name}\terror: {msg}");
                code = INVALID;
            }
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decide { instance, format } => decide(&instance, format),
        Command::Synthesize {
            instance,
            out,
            format,
        } => synthesize_cmd(&instance, out.as_deref(), format),
        Command::Verify {
            certificate,
            instance,
            format,
        } => verify_cmd(&certificate, &instance, format),
        Command::Rigidity { instance, format } => rigidity_cmd(&instance, format),
        Command::Basis { degrees } => basis_cmd(degrees),
        Command::Batch { dir } => batch_cmd(&dir),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(INVALID)
        }
    }
}
