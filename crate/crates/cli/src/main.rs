use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use jacobi_core::actions::{act_a, act_b};
use jacobi_core::bracket::{beta, bracket_word};
use jacobi_core::decomp::{hook_content_dim, schur_decompose, weights, Partition};
use jacobi_core::diagrams::{Diagram, DiagramJson};
use jacobi_core::freegroup::{Automorphism, Hom};
use jacobi_core::spaces::{build_a_capped, build_b_capped, grade_count, space_a, space_b, SpaceA, SpaceB};

mod io;
mod verify;
mod word;

use io::{Format, Kind, Report, Vector};

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Filtered spaces of Jacobi diagrams and free-group actions")]
struct Cli {
    /// Rank n (number of arcs / colors)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Degree d
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Grade k (number of trivalent vertices)
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Seed for randomized probes
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Maximum number of diagrams enumerated per space
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_diagrams: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of A_d(n), its filtration and the graded pieces B_{d,k}(n)
    Dim,
    /// Basis diagrams of A_d(n), or of B_{d,k}(n) when --k is given
    Basis,
    /// Apply a homomorphism to a vector
    Act {
        /// Hom JSON file {"n","m","images"}
        #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
        hom: Option<PathBuf>,
        /// Catalog automorphism such as U12, P12, sigma, K21, K312
        #[arg(long)]
        gen: Option<String>,
        #[arg(long)]
        vector: PathBuf,
    },
    /// Bracket with an IA generator or a bracket word such as "[K312, K132]"
    Bracket {
        #[arg(long)]
        word: String,
        /// Vector to bracket; without it the graded map on B_{d,k}(n) is printed
        #[arg(long)]
        vector: Option<PathBuf>,
    },
    /// Schur functor decomposition of B_d(n), per grade and in total
    Decompose,
    /// Run a verification suite; exits nonzero if any check fails
    Verify {
        #[arg(default_value = "paper-examples")]
        suite: String,
    },
}

impl Cli {
    fn n(&self) -> Result<usize> {
        self.n.context("--n is required")
    }

    fn d(&self) -> Result<usize> {
        self.d.context("--d is required")
    }

    fn cap(&self) -> Option<usize> {
        self.cap_diagrams.map(|c| c as usize)
    }
}

fn load_a(cli: &Cli, n: usize, d: usize) -> Result<std::sync::Arc<SpaceA>> {
    Ok(match cli.cap() {
        Some(cap) => std::sync::Arc::new(build_a_capped(n, d, cap)?),
        None => space_a(n, d)?,
    })
}

fn load_b(cli: &Cli, n: usize, d: usize, k: usize) -> Result<std::sync::Arc<SpaceB>> {
    Ok(match cli.cap() {
        Some(cap) => std::sync::Arc::new(build_b_capped(n, d, k, cap)?),
        None => space_b(n, d, k)?,
    })
}

fn cmd_dim(cli: &Cli) -> Result<Report> {
    let (n, d) = (cli.n()?, cli.d()?);
    let a = load_a(cli, n, d)?;
    let b: Vec<usize> = (0..grade_count(d)).map(|k| load_b(cli, n, d, k).map(|b| b.dim())).collect::<Result<_>>()?;
    let filtration = a.filtration_dims();
    let json = json!({
        "n": n,
        "d": d,
        "dim_a": a.dim(),
        "filtration_dims": filtration,
        "graded_dims": a.graded_dims(),
        "dim_b": b,
    });
    let mut r = Report::new(json, &["k", "dim_filtration", "dim_b"]);
    for (k, f) in filtration.iter().enumerate() {
        r.row(vec![k.to_string(), f.to_string(), b.get(k).map_or(String::new(), |x| x.to_string())]);
    }
    Ok(r)
}

fn cmd_basis(cli: &Cli) -> Result<Report> {
    let (n, d) = (cli.n()?, cli.d()?);
    let mut entries = Vec::new();
    let mut r = Report::new(json!(null), &["index", "grade", "diagram"]);
    match cli.k {
        None => {
            let a = load_a(cli, n, d)?;
            for i in 0..a.dim() {
                let dg = a.basis_diagram(i);
                let enc = DiagramJson::from(&Diagram::Jacobi(dg.clone()));
                r.row(vec![i.to_string(), dg.trivalent_count().to_string(), serde_json::to_string(&enc)?]);
                entries.push(json!({"index": i, "grade": dg.trivalent_count(), "diagram": enc}));
            }
            r.json = json!({"kind": "A", "n": n, "d": d, "dim": a.dim(), "basis": entries});
        }
        Some(k) => {
            let b = load_b(cli, n, d, k)?;
            for i in 0..b.dim() {
                let enc = DiagramJson::from(&Diagram::Open(b.basis_diagram(i).clone()));
                r.row(vec![i.to_string(), k.to_string(), serde_json::to_string(&enc)?]);
                entries.push(json!({"index": i, "grade": k, "diagram": enc}));
            }
            r.json = json!({"kind": "B", "n": n, "d": d, "k": k, "dim": b.dim(), "basis": entries});
        }
    }
    Ok(r)
}

fn vector_report(v: &Vector) -> Result<Report> {
    let file = v.to_file()?;
    let mut r = Report::new(serde_json::to_value(&file)?, &["index", "coeff", "diagram"]);
    for (c, t) in file.coords.iter().zip(&file.terms) {
        r.row(vec![c.index.to_string(), c.coeff.clone(), serde_json::to_string(&t.diagram)?]);
    }
    Ok(r)
}

fn cmd_act(hom: &Option<PathBuf>, gen: &Option<String>, vector: &PathBuf) -> Result<Report> {
    let v = Vector::read(vector)?;
    let h = match (hom, gen) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Hom::from_json(&text)?
        }
        (None, Some(name)) => Automorphism::by_name(v.n, name)?.hom().clone(),
        (None, None) => bail!("one of --hom or --gen is required"),
    };
    if h.target() != v.n {
        bail!("the hom maps into F_{} but the vector lives in rank {}", h.target(), v.n);
    }
    let coords = match v.kind {
        Kind::A => act_a(&h, v.d, &v.coords)?,
        Kind::B(k) => act_b(&h.abelianize(), v.d, k, &v.coords)?,
    };
    vector_report(&Vector { kind: v.kind, n: h.source(), d: v.d, coords })
}

fn cmd_bracket(cli: &Cli, word: &str, vector: &Option<PathBuf>) -> Result<Report> {
    match vector {
        Some(p) => {
            let v = Vector::read(p)?;
            let w = word::parse(v.n, word)?;
            let (kind, coords) = match v.kind {
                Kind::A => (Kind::A, bracket_word(&v.coords, &w, v.d)?),
                Kind::B(k) => {
                    let map = beta(v.d, k, w.depth(), &w, v.n)?;
                    (Kind::B(k + w.depth()), map.apply(&v.coords))
                }
            };
            if let Kind::B(k) = kind {
                if k >= grade_count(v.d) {
                    // past the top grade the image is zero in a space that does not exist
                    bail!("the image lies in grade {k}, beyond the top grade of degree {}", v.d);
                }
            }
            vector_report(&Vector { kind, coords, ..v })
        }
        None => {
            let (n, d) = (cli.n()?, cli.d()?);
            let k = cli.k.context("--k is required when no --vector is given")?;
            let w = word::parse(n, word)?;
            let map = beta(d, k, w.depth(), &w, n)?;
            let rows: Vec<Vec<String>> =
                map.matrix.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect();
            let json = json!({
                "n": n, "d": d, "k": k, "r": map.r,
                "word": w.to_string(),
                "rank": map.rank(),
                "matrix": rows,
            });
            let cols = rows.first().map_or(0, |r| r.len());
            let header: Vec<String> = std::iter::once("row".to_string()).chain((0..cols).map(|j| j.to_string())).collect();
            let mut r = Report::new(json, &[]);
            r.header = header;
            for (i, row) in rows.into_iter().enumerate() {
                r.row(std::iter::once(i.to_string()).chain(row).collect());
            }
            Ok(r)
        }
    }
}

fn cmd_decompose(cli: &Cli) -> Result<Report> {
    let (n, d) = (cli.n()?, cli.d()?);
    let grades: Vec<usize> = match cli.k {
        Some(k) => vec![k],
        None => (0..grade_count(d)).collect(),
    };
    let mut r = Report::new(json!(null), &["k", "partition", "multiplicity", "dim"]);
    let mut per_grade = Vec::new();
    let mut total: std::collections::BTreeMap<Partition, usize> = Default::default();
    for k in grades {
        let b = load_b(cli, n, d, k)?;
        let dec = schur_decompose(&weights(&b), n)?;
        let mut parts = Vec::new();
        for (p, m) in &dec {
            *total.entry(p.clone()).or_default() += m;
            let dim = hook_content_dim(p, n);
            r.row(vec![k.to_string(), p.to_string(), m.to_string(), dim.to_string()]);
            parts.push(json!({"partition": p.parts(), "multiplicity": m, "dim": dim}));
        }
        per_grade.push(json!({"k": k, "dim": b.dim(), "summands": parts}));
    }
    let mut summary = Vec::new();
    for (p, m) in &total {
        let dim = hook_content_dim(p, n);
        r.row(vec!["total".into(), p.to_string(), m.to_string(), dim.to_string()]);
        summary.push(json!({"partition": p.parts(), "multiplicity": m, "dim": dim}));
    }
    r.json = json!({"n": n, "d": d, "grades": per_grade, "total": summary});
    Ok(r)
}

fn run(cli: &Cli) -> Result<bool> {
    let (report, ok) = match &cli.cmd {
        Command::Dim => (cmd_dim(cli)?, true),
        Command::Basis => (cmd_basis(cli)?, true),
        Command::Act { hom, gen, vector } => (cmd_act(hom, gen, vector)?, true),
        Command::Bracket { word, vector } => (cmd_bracket(cli, word, vector)?, true),
        Command::Decompose => (cmd_decompose(cli)?, true),
        Command::Verify { suite } => {
            let report = verify::run(suite, cli.seed)?;
            let ok = report.passed();
            (report.into_report(), ok)
        }
    };
    report.emit(cli.format, cli.out.as_deref())?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
