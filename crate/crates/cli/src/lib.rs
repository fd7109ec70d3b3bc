//! The `flagvol` command line. [`run`] does all the work against injected
//! streams and returns the process exit status.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use flagvol::divisor::{ampleness_witnesses, divisor_polytope, is_globally_generated};
use flagvol::fan::{standard_decomposition, DecompositionVariant};
use flagvol::instance::{hirzebruch_document, load_instance, parse_flag_arg, parse_range, Instance};
use flagvol::render::{self, SWEEP_HEADER};
use flagvol::valuation::{trivialization_polytope, TFlag};
use flagvol::volume::okounkov_volume_report;
use flagvol::Error;
use num_traits::Zero;
use rayon::prelude::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "flagvol",
    version,
    about = "Exact volumes of ample divisors on toric surfaces"
)]
pub struct Cli {
    /// Orbit decomposition: default, successor, generic-at=K or successor,generic-at=K.
    #[arg(long, global = true)]
    pub decomposition: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the fan and test global generation and ampleness.
    Check { path: PathBuf },
    /// Compute all volume routes and compare them.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Flag for the Newton–Okounkov body, as RAY,CONE.
        #[arg(long)]
        flag: Option<String>,
    },
    /// Emit the instance document for a Hirzebruch surface.
    Hirzebruch {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Report every Hirzebruch instance in a parameter box as CSV.
    Sweep {
        #[arg(long)]
        l: String,
        #[arg(long)]
        a: String,
        #[arg(long = "b-extra")]
        b_extra: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Render the divisor polytope as SVG.
    Polytope {
        path: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        flag: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAmple(_) | Error::NotGloballyGenerated(_) => Failure::Math(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Check { path } => check(&path, out),
        Command::Report { path, format, flag } => {
            report(&path, format, flag.as_deref(), cli.decomposition.as_deref(), out)
        }
        Command::Hirzebruch { l, a, b, emit } => hirzebruch(l, a, b, emit.as_deref(), out, err),
        Command::Sweep { l, a, b_extra, csv } => {
            sweep(&l, &a, &b_extra, csv.as_deref(), cli.decomposition.as_deref(), out)
        }
        Command::Polytope { path, svg, flag } => polytope(&path, &svg, flag.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Math(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_FAILED
        }
    }
}

fn read_instance(path: &Path) -> std::result::Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    load_instance(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn variant(cli: Option<&str>, inst: &Instance) -> std::result::Result<DecompositionVariant, Failure> {
    match cli {
        Some(tag) => Ok(tag.parse()?),
        None => Ok(inst.variant.unwrap_or_default()),
    }
}

fn check(path: &Path, out: &mut dyn Write) -> Outcome {
    let inst = read_instance(path)?;
    let (fan, d) = (&inst.fan, &inst.divisor);
    writeln!(out, "fan: valid ({} rays)", fan.num_rays())?;
    let gen = is_globally_generated(fan, d)?;
    writeln!(out, "globally generated: {}", gen.generated)?;
    let witnesses = ampleness_witnesses(fan, d)?;
    if witnesses.is_empty() {
        writeln!(out, "ample: true")?;
        return Ok(EXIT_OK);
    }
    let margin = witnesses.iter().map(|w| w.margin()).min().unwrap_or_else(Zero::zero);
    writeln!(out, "ample: false (margin {margin})")?;
    writeln!(out, "{}", render::witnesses_text(&witnesses))?;
    Ok(EXIT_FAILED)
}

fn report(path: &Path, format: Format, flag: Option<&str>, dec: Option<&str>, out: &mut dyn Write) -> Outcome {
    let inst = read_instance(path)?;
    let v = variant(dec, &inst)?;
    let flag = match flag {
        Some(s) => parse_flag_arg(s)?,
        None => inst.flag.unwrap_or(TFlag { ray: 0, cone: 0 }),
    };
    let decomposition = standard_decomposition(&inst.fan, v)?;
    let r = okounkov_volume_report(&inst.fan, &inst.divisor, &decomposition, flag)?;
    let tag = v.to_string();
    match format {
        Format::Text => write!(out, "{}", render::report_text(&r, &tag))?,
        Format::Json => writeln!(out, "{}", render::report_json(&r, &tag))?,
        Format::Csv => write!(out, "{}", render::report_csv(&r))?,
    }
    Ok(if r.agree { EXIT_OK } else { EXIT_FAILED })
}

fn hirzebruch(l: i64, a: i64, b: i64, emit: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let doc = hirzebruch_document(l, a, b)?;
    let inst = doc.resolve()?;
    let ample = ampleness_witnesses(&inst.fan, &inst.divisor)?.is_empty();
    match emit {
        Some(path) => fs::write(path, doc.to_json() + "\n")?,
        None => writeln!(out, "{}", doc.to_json())?,
    }
    writeln!(err, "ample: {ample}")?;
    Ok(EXIT_OK)
}

fn sweep(l: &str, a: &str, extra: &str, csv: Option<&Path>, dec: Option<&str>, out: &mut dyn Write) -> Outcome {
    let (l0, l1) = parse_range(l)?;
    let (a0, a1) = parse_range(a)?;
    let (e0, e1) = parse_range(extra)?;
    if l0 < 1 || a0 < 1 || e0 < 1 {
        return Err(Failure::Input("sweep needs l >= 1, a >= 1 and b-extra >= 1".into()));
    }
    let v: DecompositionVariant = dec.unwrap_or("default").parse()?;
    let cells: Vec<(i64, i64, i64)> = (l0..=l1)
        .flat_map(|l| (a0..=a1).flat_map(move |a| (e0..=e1).map(move |e| (l, a, l * a + e))))
        .collect();
    let mut rows = cells
        .par_iter()
        .map(|&(l, a, b)| {
            let doc = hirzebruch_document(l, a, b)?;
            let inst = doc.resolve()?;
            let decomposition = standard_decomposition(&inst.fan, v)?;
            let display = TFlag { ray: 0, cone: 0 };
            let r = okounkov_volume_report(&inst.fan, &inst.divisor, &decomposition, display)?;
            Ok(((l, a, b), r.agree, render::sweep_row(l, a, b, &r)))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    rows.sort_by_key(|(key, _, _)| *key);
    let mut text = String::from(SWEEP_HEADER);
    text.push('\n');
    for (_, _, row) in &rows {
        text.push_str(row);
        text.push('\n');
    }
    match csv {
        Some(path) => fs::write(path, &text)?,
        None => write!(out, "{text}")?,
    }
    let all_agree = rows.iter().all(|(_, agree, _)| *agree);
    Ok(if all_agree { EXIT_OK } else { EXIT_FAILED })
}

fn polytope(path: &Path, svg: &Path, flag: Option<&str>, out: &mut dyn Write) -> Outcome {
    let inst = read_instance(path)?;
    let p = divisor_polytope(&inst.fan, &inst.divisor)?;
    let flag = match flag {
        Some(s) => Some(parse_flag_arg(s)?),
        None => inst.flag,
    };
    let overlay = match flag {
        Some(f) => Some((trivialization_polytope(&inst.fan, &inst.divisor, f)?, f)),
        None => None,
    };
    let vertices: Vec<String> = p.vertices().iter().map(ToString::to_string).collect();
    writeln!(out, "vertices: {}", vertices.join(" "))?;
    writeln!(out, "area: {}", p.area())?;
    if let Some((o, f)) = &overlay {
        let vertices: Vec<String> = o.vertices().iter().map(ToString::to_string).collect();
        writeln!(out, "image at flag {f}: {}", vertices.join(" "))?;
        writeln!(out, "image area: {}", o.area())?;
    }
    fs::write(svg, render::polytope_svg(&p, overlay.as_ref().map(|(o, f)| (o, *f))))?;
    Ok(EXIT_OK)
}
