//! Free groups: reduced words, homomorphisms `F_n -> F_m`, automorphisms
//! with stored inverses, and bracket words in IA generators.
//!
//! Generators are 0-based in the API and printed as `x1, x2, ...`.
//! `compose(f, g)` is `f ∘ g` (apply `g` first). Automorphisms form the
//! group with product `gh := g ∘ h`, so that `u·(gh) = (u·g)·h` for the
//! right action on diagram spaces, and `[g, h] := g h g⁻¹ h⁻¹`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("generator x{index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("indices must be distinct and in 1..={n}")]
    BadIndices { n: usize },
    #[error("stored inverse of {0} does not invert it")]
    NotInverse(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("{0} is not in IA(n)")]
    NotIA(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A letter `x_gen^exp` with `exp = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub exp: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![Letter { gen: i as u32, exp: 1 }])
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|p| *p == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Builds from `(0-based generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        Self::from_letters(pairs.iter().map(|(g, e)| Letter { gen: *g as u32, exp: *e }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Self::from_letters(self.0.iter().chain(&other.0).copied())
    }

    /// Largest generator index used, plus one.
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.gen as usize + 1).max().unwrap_or(0)
    }

    /// Signed occurrence count of each generator.
    pub fn exponent_sums(&self, m: usize) -> Vec<i64> {
        let mut v = vec![0; m];
        for l in &self.0 {
            v[l.gen as usize] += l.exp as i64;
        }
        v
    }

    /// Parses e.g. `"x1 x2^-1"`, `"x1*x2"`, `"x3^2"` or `"1"`.
    pub fn parse(s: &str) -> Result<Word> {
        let err = || GroupError::Parse(s.to_string());
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" || tok == "e" {
                continue;
            }
            let body = tok.strip_prefix('x').ok_or_else(err)?;
            let (idx, pow) = match body.split_once('^') {
                Some((i, p)) => (i, p.parse::<i64>().map_err(|_| err())?),
                None => (body, 1),
            };
            let idx: usize = idx.parse().map_err(|_| err())?;
            if idx == 0 {
                return Err(err());
            }
            let exp = if pow < 0 { -1 } else { 1 };
            for _ in 0..pow.unsigned_abs() {
                letters.push(Letter { gen: (idx - 1) as u32, exp });
            }
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.gen + 1)?;
            if l.exp < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

pub fn reduce(w: &Word) -> Word {
    Word::from_letters(w.0.iter().copied())
}

/// A homomorphism `F_n -> F_m`, given by the images of `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hom {
    n: usize,
    m: usize,
    images: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct HomJson {
    n: usize,
    m: usize,
    images: Vec<String>,
}

impl Hom {
    pub fn new(n: usize, m: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != n {
            return Err(GroupError::RankMismatch(format!("{} images for source rank {n}", images.len())));
        }
        for w in &images {
            if w.rank_needed() > m {
                return Err(GroupError::GeneratorOutOfRange { index: w.rank_needed(), rank: m });
            }
        }
        Ok(Self { n, m, images: images.iter().map(reduce).collect() })
    }

    /// Parses images given as words, e.g. `["x1 x2", "x2 x3"]`.
    pub fn parse(n: usize, m: usize, images: &[&str]) -> Result<Self> {
        let ws = images.iter().map(|s| Word::parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(n, m, ws)
    }

    pub fn identity(n: usize) -> Self {
        Self { n, m: n, images: (0..n).map(Word::gen).collect() }
    }

    /// `x_t ↦ x_{perm[t]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self { n, m: n, images: perm.iter().map(|p| Word::gen(*p)).collect() }
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::from_letters(w.letters().iter().flat_map(|l| {
            let img = &self.images[l.gen as usize];
            let it: Box<dyn Iterator<Item = Letter>> = if l.exp > 0 {
                Box::new(img.letters().iter().copied())
            } else {
                Box::new(img.letters().iter().rev().map(|x| x.inverse()))
            };
            it
        }))
    }

    /// `m × n` matrix whose `(i, j)` entry is the signed number of
    /// occurrences of `x_i` in the image of `x_j`.
    pub fn abelianize(&self) -> Vec<Vec<i64>> {
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.exponent_sums(self.m)).collect();
        (0..self.m).map(|i| (0..self.n).map(|j| cols[j][i]).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.n == self.m && self.images.iter().enumerate().all(|(i, w)| *w == Word::gen(i))
    }

    pub fn to_json(&self) -> String {
        let j = HomJson { n: self.n, m: self.m, images: self.images.iter().map(|w| w.to_string()).collect() };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: HomJson = serde_json::from_str(s).map_err(|e| GroupError::Parse(e.to_string()))?;
        let imgs: Vec<&str> = j.images.iter().map(|s| s.as_str()).collect();
        Self::parse(j.n, j.m, &imgs)
    }
}

impl fmt::Display for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} ↦ {}", i + 1, w)?;
        }
        Ok(())
    }
}

/// `f ∘ g`: apply `g: F_k -> F_n` first, then `f: F_n -> F_m`.
pub fn compose(f: &Hom, g: &Hom) -> Result<Hom> {
    if g.m != f.n {
        return Err(GroupError::RankMismatch(format!("F_{} -> F_{} after F_{} -> F_{}", f.n, f.m, g.n, g.m)));
    }
    Ok(Hom { n: g.n, m: f.m, images: g.images.iter().map(|w| f.apply(w)).collect() })
}

/// An automorphism of `F_n` with a verified inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    name: String,
    hom: Hom,
    inverse: Hom,
}

impl Automorphism {
    pub fn new(name: impl Into<String>, hom: Hom, inverse: Hom) -> Result<Self> {
        let name = name.into();
        if hom.n != hom.m || inverse.n != hom.n || inverse.m != hom.n {
            return Err(GroupError::RankMismatch(format!("{name} is not an endomorphism of one free group")));
        }
        if !compose(&hom, &inverse)?.is_identity() || !compose(&inverse, &hom)?.is_identity() {
            return Err(GroupError::NotInverse(name));
        }
        Ok(Self { name, hom, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self { name: "id".into(), hom: Hom::identity(n), inverse: Hom::identity(n) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.hom.n
    }

    pub fn hom(&self) -> &Hom {
        &self.hom
    }

    pub fn inverse_hom(&self) -> &Hom {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        Self { name: format!("{}^-1", self.name), hom: self.inverse.clone(), inverse: self.hom.clone() }
    }

    /// The group product `self · other = self ∘ other`.
    pub fn mul(&self, other: &Automorphism) -> Result<Self> {
        Ok(Self {
            name: format!("{} {}", self.name, other.name),
            hom: compose(&self.hom, &other.hom)?,
            inverse: compose(&other.inverse, &self.inverse)?,
        })
    }

    pub fn commutator(&self, other: &Automorphism) -> Result<Self> {
        let c = self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())?;
        Ok(Self { name: format!("[{}, {}]", self.name, other.name), ..c })
    }

    pub fn is_ia(&self) -> bool {
        let a = self.hom.abelianize();
        a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == (i == j) as i64))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    // Catalog. Indices are 0-based; names print them 1-based.

    /// `x1 ↦ x1 x2`.
    pub fn u12(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(GroupError::BadIndices { n });
        }
        let mut f = Hom::identity(n);
        let mut g = Hom::identity(n);
        f.images[0] = Word::from_pairs(&[(0, 1), (1, 1)]);
        g.images[0] = Word::from_pairs(&[(0, 1), (1, -1)]);
        Self::new("U_{1,2}", f, g)
    }

    /// Swaps `x_i` and `x_j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(GroupError::BadIndices { n });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        let h = Hom::permutation(&perm);
        Self::new(format!("P_{{{},{}}}", i + 1, j + 1), h.clone(), h)
    }

    /// `x1 ↦ x1⁻¹`.
    pub fn sigma(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(GroupError::BadIndices { n });
        }
        let mut f = Hom::identity(n);
        f.images[0] = Word::from_pairs(&[(0, -1)]);
        Self::new("sigma", f.clone(), f)
    }

    /// Inner automorphism `x ↦ a x a⁻¹`.
    pub fn inner(n: usize, a: &Word) -> Result<Self> {
        if a.rank_needed() > n {
            return Err(GroupError::GeneratorOutOfRange { index: a.rank_needed(), rank: n });
        }
        let ai = a.inverse();
        let f = Hom::new(n, n, (0..n).map(|i| a.mul(&Word::gen(i)).mul(&ai)).collect())?;
        let g = Hom::new(n, n, (0..n).map(|i| ai.mul(&Word::gen(i)).mul(a)).collect())?;
        Self::new(format!("inner({a})"), f, g)
    }

    /// Magnus generator `K_{i,j}: x_i ↦ x_j x_i x_j⁻¹`.
    pub fn magnus2(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(GroupError::BadIndices { n });
        }
        let mut f = Hom::identity(n);
        let mut g = Hom::identity(n);
        f.images[i] = Word::from_pairs(&[(j, 1), (i, 1), (j, -1)]);
        g.images[i] = Word::from_pairs(&[(j, -1), (i, 1), (j, 1)]);
        Self::new(format!("K_{{{},{}}}", i + 1, j + 1), f, g)
    }

    /// Magnus generator `K_{i,j,k}: x_i ↦ x_i [x_j, x_k]`.
    pub fn magnus3(n: usize, i: usize, j: usize, k: usize) -> Result<Self> {
        if i >= n || j >= n || k >= n || i == j || i == k || j == k {
            return Err(GroupError::BadIndices { n });
        }
        let mut f = Hom::identity(n);
        let mut g = Hom::identity(n);
        f.images[i] = Word::from_pairs(&[(i, 1), (j, 1), (k, 1), (j, -1), (k, -1)]);
        g.images[i] = Word::from_pairs(&[(i, 1), (k, 1), (j, 1), (k, -1), (j, -1)]);
        Self::new(format!("K_{{{},{},{}}}", i + 1, j + 1, k + 1), f, g)
    }

    /// Looks up a catalog element by name: `id`, `U12`, `sigma`, `Pij`,
    /// `Kij`, `Kijk` (1-based single-digit indices; the forms `P_{i,j}`
    /// and `K_{i,j,k}` are accepted too).
    pub fn by_name(n: usize, name: &str) -> Result<Self> {
        let squashed: String = name.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ',' | ' ')).collect();
        let bad = || GroupError::Parse(name.to_string());
        let digits = |s: &str| -> Result<Vec<usize>> {
            s.chars()
                .map(|c| c.to_digit(10).filter(|d| *d >= 1).map(|d| d as usize - 1).ok_or_else(bad))
                .collect()
        };
        match squashed.as_str() {
            "id" => Ok(Self::identity(n)),
            "sigma" | "s" => Self::sigma(n),
            "U12" => Self::u12(n),
            s if s.starts_with('P') => match digits(&s[1..])?.as_slice() {
                [i, j] => Self::transposition(n, *i, *j),
                _ => Err(bad()),
            },
            s if s.starts_with('K') => match digits(&s[1..])?.as_slice() {
                [i, j] => Self::magnus2(n, *i, *j),
                [i, j, k] => Self::magnus3(n, *i, *j, *k),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// Nielsen generators of `Aut(F_n)`: `U_{1,2}`, every transposition, `σ`.
pub fn nielsen_generators(n: usize) -> Vec<Automorphism> {
    let mut out = Vec::new();
    if n >= 2 {
        out.push(Automorphism::u12(n).expect("n >= 2"));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(Automorphism::transposition(n, i, j).expect("valid indices"));
        }
    }
    if n >= 1 {
        out.push(Automorphism::sigma(n).expect("n >= 1"));
    }
    out
}

/// Magnus generators of `IA(n)`: `K_{i,j}` for `i ≠ j` and `K_{i,j,k}` for
/// `j < k`, both distinct from `i`.
pub fn magnus_generators(n: usize) -> Vec<Automorphism> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(Automorphism::magnus2(n, i, j).expect("valid indices"));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if i != j && i != k {
                    out.push(Automorphism::magnus3(n, i, j, k).expect("valid indices"));
                }
            }
        }
    }
    out
}

/// Bracket word over IA generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IAWord {
    Gen(Automorphism),
    Comm(Box<IAWord>, Box<IAWord>),
}

impl IAWord {
    pub fn gen(g: Automorphism) -> Result<Self> {
        if !g.is_ia() {
            return Err(GroupError::NotIA(g.name().to_string()));
        }
        Ok(IAWord::Gen(g))
    }

    /// Iterated-commutator depth: the word evaluates into `Γ_depth(IA(n))`.
    pub fn depth(&self) -> usize {
        match self {
            IAWord::Gen(_) => 1,
            IAWord::Comm(a, b) => a.depth() + b.depth(),
        }
    }

    pub fn evaluate(&self) -> Result<Automorphism> {
        match self {
            IAWord::Gen(g) => Ok(g.clone()),
            IAWord::Comm(a, b) => a.evaluate()?.commutator(&b.evaluate()?),
        }
    }
}

impl fmt::Display for IAWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IAWord::Gen(g) => write!(f, "{}", g.name()),
            IAWord::Comm(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

pub fn commutator(g: &IAWord, h: &IAWord) -> IAWord {
    IAWord::Comm(Box::new(g.clone()), Box::new(h.clone()))
}
