//! Vector files and report rendering.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use jacobi_core::diagrams::{Diagram, DiagramJson};
use jacobi_core::exactlin::{Scalar, SparseVector};
use jacobi_core::spaces::{space_a, space_b};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One coordinate of a vector in the chosen basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Coord {
    pub index: usize,
    pub coeff: String,
}

/// One diagram with its coefficient.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub diagram: DiagramJson,
}

/// An element of A_d(n) (`kind = "A"`) or B_{d,k}(n) (`kind = "B"`).
///
/// On input either `coords` or `terms` may be given; when both are present
/// they must describe the same vector. On output both are filled in, `terms`
/// listing the basis diagrams.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFile {
    pub kind: String,
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default)]
    pub coords: Vec<Coord>,
    #[serde(default)]
    pub terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    A,
    B(usize),
}

/// A parsed vector together with the space it lives in.
#[derive(Clone, Debug)]
pub struct Vector {
    pub kind: Kind,
    pub n: usize,
    pub d: usize,
    pub coords: SparseVector,
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    s.trim().parse::<Scalar>().map_err(|e| anyhow::anyhow!("bad coefficient {s:?}: {e}"))
}

impl Vector {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: VectorFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Self::from_file(file)
    }

    pub fn from_file(f: VectorFile) -> Result<Self> {
        let kind = match (f.kind.as_str(), f.k) {
            ("A", None) => Kind::A,
            ("A", Some(_)) => bail!("an A vector takes no \"k\""),
            ("B", Some(k)) => Kind::B(k),
            ("B", None) => bail!("a B vector needs \"k\""),
            (other, _) => bail!("unknown vector kind {other:?}, expected \"A\" or \"B\""),
        };
        let dim = match kind {
            Kind::A => space_a(f.n, f.d)?.dim(),
            Kind::B(k) => space_b(f.n, f.d, k)?.dim(),
        };
        let mut v = SparseVector::zero();
        let mut from_terms = SparseVector::zero();
        for c in &f.coords {
            if c.index >= dim {
                bail!("coordinate {} out of range for a space of dimension {dim}", c.index);
            }
            v = v.add_scaled(&SparseVector::unit(c.index), &parse_scalar(&c.coeff)?);
        }
        for t in &f.terms {
            let coeff = parse_scalar(&t.coeff)?;
            let x = match (Diagram::try_from(t.diagram.clone())?, kind) {
                (Diagram::Jacobi(j), Kind::A) => space_a(f.n, f.d)?.diagram_coords(&j)?,
                (Diagram::Open(o), Kind::B(k)) => space_b(f.n, f.d, k)?.diagram_coords(&o)?,
                _ => bail!("diagram kind does not match vector kind {:?}", f.kind),
            };
            from_terms = from_terms.add_scaled(&x, &coeff);
        }
        if f.coords.is_empty() {
            v = from_terms;
        } else if !f.terms.is_empty() && v != from_terms {
            bail!("\"coords\" and \"terms\" describe different vectors");
        }
        Ok(Vector { kind, n: f.n, d: f.d, coords: v })
    }

    pub fn to_file(&self) -> Result<VectorFile> {
        let coords = self.coords.iter().map(|(i, c)| Coord { index: i, coeff: c.to_string() }).collect();
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter() {
            let diagram = match self.kind {
                Kind::A => Diagram::Jacobi(space_a(self.n, self.d)?.basis_diagram(i).clone()),
                Kind::B(k) => Diagram::Open(space_b(self.n, self.d, k)?.basis_diagram(i).clone()),
            };
            terms.push(Term { coeff: c.to_string(), diagram: DiagramJson::from(&diagram) });
        }
        let (kind, k) = match self.kind {
            Kind::A => ("A", None),
            Kind::B(k) => ("B", Some(k)),
        };
        Ok(VectorFile { kind: kind.into(), n: self.n, d: self.d, k, coords, terms })
    }
}

/// A command result: the JSON document plus a flat table for csv/text.
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, header: &[&str]) -> Self {
        Report { json, header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.header);
                for r in &self.rows {
                    out += &line(r);
                }
                Ok(out)
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
