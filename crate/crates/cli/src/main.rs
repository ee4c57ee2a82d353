use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use covercalc_core::crystal::CrystalData;
use covercalc_core::diagram::{color_string, enumerate_colorings, BraidWord, ColoredBraid};
use covercalc_core::permcalc::{boundary_is_k_cycle, dihedral_rep, euler_char_disk_cover};
use covercalc_core::pipeline::{build_tower, final_certificate, report_json, report_text};
use covercalc_core::rewrite::{normalize, Variant};

#[derive(Parser)]
#[command(name = "covercalc", version, about = "Simple 3-fold branched coverings and the universal covering tower")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a colored braid file.
    Check { file: PathBuf },
    /// List the transitive colorings of a braid word.
    Enumerate {
        /// File holding a braid word such as `strands=2 s1 s1 s1`.
        file: Option<PathBuf>,
        /// The braid word itself, instead of a file.
        #[arg(long, conflicts_with = "file")]
        word: Option<String>,
    },
    /// Normalize a colored braid and print the standard link and its move log.
    Standardize {
        file: PathBuf,
        #[arg(long, default_value = "borromean")]
        variant: Variant,
        /// Write the move log here instead of after the standard link.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Build the covering tower and its certificate.
    Tower {
        file: PathBuf,
        #[arg(long, default_value = "borromean")]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the crystallographic certificates.
    Crystal,
    /// Print the dihedral k-fold disk cover.
    Dihedral {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failed run: the error kind and message go to stderr as one JSON record.
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ColoredBraid, Failure> {
    ColoredBraid::from_file_str(&read(path)?).map_err(|e| Failure::new("diagram", e))
}

fn check(file: &Path) -> Outcome {
    let cb = load(file)?;
    let rep = cb.representation();
    println!(
        "valid strands={} crossings={} colors={} used={} image_order={} transitive={} monochromatic={}",
        cb.strands(),
        cb.len(),
        color_string(cb.top_colors()),
        rep.colors.iter().map(|c| c.as_char()).collect::<String>(),
        rep.image_order,
        rep.transitive,
        cb.monochromatic_crossings().len(),
    );
    if !rep.transitive {
        return Err(Failure::new("diagram", "coloring is not transitive"));
    }
    Ok(true)
}

fn enumerate(file: Option<&Path>, word: Option<&str>) -> Outcome {
    let text = match (file, word) {
        (_, Some(w)) => w.to_string(),
        (Some(f), None) => read(f)?,
        (None, None) => return Err(Failure::new("usage", "give a braid file or --word")),
    };
    let word = BraidWord::parse(text.trim()).map_err(|e| Failure::new("diagram", e))?;
    let colorings = enumerate_colorings(&word);
    println!("{word} colorings={}", colorings.len());
    for cb in &colorings {
        println!("colors={}", color_string(cb.top_colors()));
    }
    Ok(true)
}

fn standardize(file: &Path, variant: Variant, log_path: Option<&Path>) -> Outcome {
    let cb = load(file)?;
    let out = normalize(&cb, variant).map_err(|e| Failure::new("rewrite", e))?;
    print!("{}", out.link.to_text());
    match log_path {
        Some(p) => fs::write(p, out.log.to_text()).map_err(|e| Failure::new("io", format!("{}: {e}", p.display())))?,
        None => {
            println!("move-log entries={}", out.log.len());
            print!("{}", out.log.to_text());
        }
    }
    Ok(true)
}

fn crystal_data() -> Result<CrystalData, Failure> {
    CrystalData::compute().map_err(|e| Failure::new("crystal", e))
}

fn tower(file: &Path, variant: Variant, format: Format) -> Outcome {
    let cb = load(file)?;
    let out = normalize(&cb, variant).map_err(|e| Failure::new("rewrite", e))?;
    let crystal = crystal_data()?;
    let tower = build_tower(&out.link, &cb.colors_used(), &crystal).map_err(|e| Failure::new("pipeline", e))?;
    let cert = final_certificate(&tower, &crystal);
    match format {
        Format::Text => print!("{}", report_text(&tower, &cert)),
        Format::Json => {
            let doc = report_json(&tower, &cert);
            println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
        }
    }
    Ok(cert.passed())
}

fn crystal() -> Outcome {
    let data = crystal_data()?;
    print!("{}", data.summary());
    Ok(data.index == 27 && data.sublink.passed())
}

fn dihedral(k: usize) -> Outcome {
    let rep = dihedral_rep(k).map_err(|e| Failure::new("permcalc", e))?;
    let chi = euler_char_disk_cover(&rep);
    let boundary = rep.boundary_monodromy();
    let single = boundary_is_k_cycle(&rep);
    println!("k={k}");
    println!("rho(x)={}", rep.rho_x());
    println!("rho(y)={}", rep.rho_y());
    println!("chi={chi}");
    println!("boundary={boundary} single-cycle={single}");
    Ok(chi == 1 && single)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file } => check(&file),
        Command::Enumerate { file, word } => enumerate(file.as_deref(), word.as_deref()),
        Command::Standardize { file, variant, log } => standardize(&file, variant, log.as_deref()),
        Command::Tower { file, variant, format } => tower(&file, variant, format),
        Command::Crystal => crystal(),
        Command::Dihedral { k } => dihedral(k),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            e.print().ok();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            let message = e.kind().to_string();
            eprintln!("{}", json!({ "error": "usage", "message": message }));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("{}", json!({ "error": "validation", "message": "certificate has failing claims" }));
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(if f.kind == "usage" { 2 } else { 1 })
        }
    }
}
