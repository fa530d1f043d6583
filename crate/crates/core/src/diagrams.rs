//! Jacobi diagrams on `n` arcs and colored open Jacobi diagrams.
//!
//! Both flavors share one packed graph layout. Legs come first, sorted by
//! their label (the arc for a Jacobi diagram, the color for an open one) and,
//! on an arc, by position along the arc orientation. Half-edge `i < L` is
//! leg `i`; trivalent vertex `j` owns half-edges `L + 3j + s` for slots
//! `s = 0, 1, 2`, and the slot order is the cyclic vertex orientation.
//! `partner` is the edge pairing on half-edges.
//!
//! Labels and colors are 0-based in the Rust API and 1-based in JSON.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const UNSET: u32 = u32::MAX;

/// Default cap on the number of raw diagrams an enumeration may produce.
pub const DEFAULT_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("half-edge {0} is not paired")]
    Dangling(u32),
    #[error("half-edge {0} appears in more than one edge")]
    DoublePaired(u32),
    #[error("edge refers to unknown half-edge {0}")]
    UnknownHalfEdge(u32),
    #[error("half-edge id {0} is used twice")]
    DuplicateId(u32),
    #[error("a connected component has no univalent vertex")]
    LeglessComponent,
    #[error("label {label} out of range for n = {n}")]
    LabelOutOfRange { label: u32, n: usize },
    #[error("expected {expected} arcs, got {got}")]
    ArcCount { expected: usize, got: usize },
    #[error("enumeration exceeded the cap of {0} diagrams")]
    ResourceLimit(usize),
    #[error("malformed canonical encoding")]
    BadEncoding,
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, DiagramError>;

/// Packed uni-trivalent graph with labeled legs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    labels: Vec<u32>,
    t: u32,
    partner: Vec<u32>,
}

impl Graph {
    pub fn empty() -> Self {
        Self { labels: vec![], t: 0, partner: vec![] }
    }

    /// Builds a packed graph from raw parts, checking the pairing.
    pub fn from_parts(labels: Vec<u32>, t: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut b = Builder::default();
        for (i, l) in labels.iter().enumerate() {
            b.legs.push(BLeg { label: *l, key: (i as u32, 0), id: i as u32 });
        }
        let base = labels.len() as u32;
        for j in 0..t as u32 {
            b.tris.push([base + 3 * j, base + 3 * j + 1, base + 3 * j + 2]);
        }
        b.edges = edges.to_vec();
        b.pack()
    }

    pub fn legs(&self) -> usize {
        self.labels.len()
    }

    pub fn trivalent(&self) -> usize {
        self.t as usize
    }

    pub fn half_edges(&self) -> usize {
        self.partner.len()
    }

    pub fn degree(&self) -> usize {
        (self.legs() + self.trivalent()) / 2
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h] as usize
    }

    pub fn is_leg(&self, h: usize) -> bool {
        h < self.legs()
    }

    /// `(vertex, slot)` for a trivalent half-edge.
    pub fn slot_of(&self, h: usize) -> Option<(usize, usize)> {
        let l = self.legs();
        (h >= l).then(|| ((h - l) / 3, (h - l) % 3))
    }

    pub fn tri_half_edge(&self, v: usize, s: usize) -> usize {
        self.legs() + 3 * v + s % 3
    }

    /// Edges as `(a, b)` with `a < b`, in increasing order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.partner.len() as u32)
            .filter(|h| *h < self.partner[*h as usize])
            .map(|h| (h, self.partner[h as usize]))
            .collect()
    }

    /// Flat integer encoding: `[L, t, labels.., partner..]`.
    pub fn encoding(&self) -> Vec<u32> {
        let mut e = Vec::with_capacity(2 + self.labels.len() + self.partner.len());
        e.push(self.labels.len() as u32);
        e.push(self.t);
        e.extend_from_slice(&self.labels);
        e.extend_from_slice(&self.partner);
        e
    }

    pub fn from_encoding(enc: &[u32]) -> Result<Self> {
        if enc.len() < 2 {
            return Err(DiagramError::BadEncoding);
        }
        let (l, t) = (enc[0] as usize, enc[1] as usize);
        if enc.len() != 2 + l + l + 3 * t {
            return Err(DiagramError::BadEncoding);
        }
        let labels = enc[2..2 + l].to_vec();
        let partner = enc[2 + l..].to_vec();
        let n = partner.len();
        for (h, p) in partner.iter().enumerate() {
            let p = *p as usize;
            if p >= n || p == h || partner[p] as usize != h {
                return Err(DiagramError::BadEncoding);
            }
        }
        if labels.windows(2).any(|w| w[0] > w[1]) {
            return Err(DiagramError::BadEncoding);
        }
        Ok(Self { labels, t: t as u32, partner })
    }

    pub(crate) fn to_builder(&self) -> Builder {
        let legs = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| BLeg { label: *l, key: (i as u32, 0), id: i as u32 })
            .collect();
        let l = self.legs() as u32;
        let tris = (0..self.t).map(|j| [l + 3 * j, l + 3 * j + 1, l + 3 * j + 2]).collect();
        Builder { legs, tris, edges: self.edges() }
    }

    /// Relabels every trivalent vertex and non-leg half-edge by a BFS from
    /// the legs in `leg_order`. Bit `j` of `mask` reverses the orientation
    /// of the `j`-th vertex reached. Returns the relabeled graph and the
    /// number of reversals.
    fn bfs_relabel(&self, leg_order: &[usize], mask: u64) -> Result<(Graph, u32)> {
        let l = self.legs();
        let t = self.trivalent();
        let mut new_of_old = vec![UNSET; self.partner.len()];
        let mut queue: Vec<usize> = Vec::with_capacity(self.partner.len());
        for (i, old) in leg_order.iter().enumerate() {
            new_of_old[*old] = i as u32;
            queue.push(*old);
        }
        let mut next_v = 0usize;
        let mut flips = 0u32;
        let mut head = 0;
        while head < queue.len() {
            let h = queue[head];
            head += 1;
            let p = self.partner[h] as usize;
            if p >= l && new_of_old[p] == UNSET {
                let (v, s) = ((p - l) / 3, (p - l) % 3);
                let flip = (mask >> next_v) & 1 == 1;
                let order = if flip {
                    [s, (s + 2) % 3, (s + 1) % 3]
                } else {
                    [s, (s + 1) % 3, (s + 2) % 3]
                };
                for (k, so) in order.iter().enumerate() {
                    new_of_old[l + 3 * v + so] = (l + 3 * next_v + k) as u32;
                }
                queue.push(l + 3 * v + order[1]);
                queue.push(l + 3 * v + order[2]);
                flips += flip as u32;
                next_v += 1;
            }
        }
        if next_v < t {
            return Err(DiagramError::LeglessComponent);
        }
        let mut partner = vec![0u32; self.partner.len()];
        for (h, p) in self.partner.iter().enumerate() {
            partner[new_of_old[h] as usize] = new_of_old[*p as usize];
        }
        let labels = leg_order.iter().map(|i| self.labels[*i]).collect();
        Ok((Graph { labels, t: self.t, partner }, flips))
    }

    fn vertex_of(&self, h: usize) -> usize {
        let l = self.legs();
        if h < l {
            h
        } else {
            l + (h - l) / 3
        }
    }

    /// Color refinement on vertices; returns a class id per leg, invariant
    /// under isomorphism and under orientation reversal.
    fn refined_leg_classes(&self) -> Vec<u32> {
        let l = self.legs();
        let nv = l + self.trivalent();
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..self.partner.len() {
            nbrs[self.vertex_of(h)].push(self.vertex_of(self.partner[h] as usize));
        }
        let mut class: Vec<u32> = (0..nv)
            .map(|v| if v < l { self.labels[v] } else { u32::MAX })
            .collect();
        let mut distinct = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..nv)
                .map(|v| {
                    let mut s: Vec<u32> = nbrs[v].iter().map(|w| class[*w]).collect();
                    s.sort_unstable();
                    (class[v], s)
                })
                .collect();
            let ranks: BTreeMap<&(u32, Vec<u32>), u32> = sigs
                .iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, i as u32))
                .collect();
            class = sigs.iter().map(|s| ranks[s]).collect();
            let now = ranks.len();
            if now == distinct {
                break;
            }
            distinct = now;
        }
        class[..l].to_vec()
    }

    /// Canonical representative with legs pinned in place (Jacobi flavor).
    pub(crate) fn canonical_fixed_legs(&self) -> Result<Graph> {
        let order: Vec<usize> = (0..self.legs()).collect();
        Ok(self.bfs_relabel(&order, 0)?.0)
    }

    /// Canonical representative up to permutation of equally labeled legs
    /// and vertex orientation reversal (open flavor). The sign is `0` when
    /// the diagram equals its own negation.
    pub(crate) fn canonical_free_legs(&self) -> Result<(Graph, i8)> {
        let l = self.legs();
        let t = self.trivalent();
        let refined = self.refined_leg_classes();
        let mut order: Vec<usize> = (0..l).collect();
        order.sort_by_key(|i| (self.labels[*i], refined[*i]));
        let groups: Vec<Vec<usize>> = order
            .iter()
            .chunk_by(|i| (self.labels[**i], refined[**i]))
            .into_iter()
            .map(|(_, g)| g.copied().collect())
            .collect();
        let choices: Vec<Vec<Vec<usize>>> = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect())
            .collect();
        let mut best: Option<(Graph, bool, bool)> = None;
        for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let leg_order: Vec<usize> = combo.into_iter().flatten().copied().collect();
            for mask in 0..(1u64 << t) {
                let (g, flips) = self.bfs_relabel(&leg_order, mask)?;
                let positive = flips % 2 == 0;
                match &mut best {
                    None => best = Some((g, positive, false)),
                    Some((bg, bpos, degenerate)) => match g.cmp(bg) {
                        std::cmp::Ordering::Less => best = Some((g, positive, false)),
                        std::cmp::Ordering::Equal => {
                            if *bpos != positive {
                                *degenerate = true;
                            }
                        }
                        std::cmp::Ordering::Greater => {}
                    },
                }
            }
        }
        let (g, positive, degenerate) = match best {
            Some(b) => b,
            // No legs: only the empty diagram qualifies.
            None => {
                if t > 0 {
                    return Err(DiagramError::LeglessComponent);
                }
                (self.clone(), true, false)
            }
        };
        let sign = if degenerate {
            0
        } else if positive {
            1
        } else {
            -1
        };
        Ok((g, sign))
    }
}

/// Leg in a loose diagram: sorted by `(label, key)` when packed.
#[derive(Clone, Debug)]
pub(crate) struct BLeg {
    pub label: u32,
    pub key: (u32, u32),
    pub id: u32,
}

/// Diagram with arbitrary half-edge ids, used while editing.
#[derive(Clone, Debug, Default)]
pub(crate) struct Builder {
    pub legs: Vec<BLeg>,
    pub tris: Vec<[u32; 3]>,
    pub edges: Vec<(u32, u32)>,
}

impl Builder {
    pub fn pack(&self) -> Result<Graph> {
        let mut order: Vec<usize> = (0..self.legs.len()).collect();
        order.sort_by_key(|i| (self.legs[*i].label, self.legs[*i].key));
        let l = self.legs.len();
        let total = l + 3 * self.tris.len();
        let mut map: HashMap<u32, u32> = HashMap::with_capacity(total);
        let mut orig = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(l);
        for i in order {
            let leg = &self.legs[i];
            if map.insert(leg.id, orig.len() as u32).is_some() {
                return Err(DiagramError::DuplicateId(leg.id));
            }
            orig.push(leg.id);
            labels.push(leg.label);
        }
        for tri in &self.tris {
            for id in tri {
                if map.insert(*id, orig.len() as u32).is_some() {
                    return Err(DiagramError::DuplicateId(*id));
                }
                orig.push(*id);
            }
        }
        let mut partner = vec![UNSET; total];
        for (a, b) in &self.edges {
            let ma = *map.get(a).ok_or(DiagramError::UnknownHalfEdge(*a))?;
            let mb = *map.get(b).ok_or(DiagramError::UnknownHalfEdge(*b))?;
            if a == b || partner[ma as usize] != UNSET {
                return Err(DiagramError::DoublePaired(*a));
            }
            if partner[mb as usize] != UNSET {
                return Err(DiagramError::DoublePaired(*b));
            }
            partner[ma as usize] = mb;
            partner[mb as usize] = ma;
        }
        if let Some(h) = partner.iter().position(|p| *p == UNSET) {
            return Err(DiagramError::Dangling(orig[h]));
        }
        Ok(Graph { labels, t: self.tris.len() as u32, partner })
    }
}

/// Integer encoding of a canonical representative, with the sign relating
/// the input diagram to that representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub encoding: Vec<u32>,
    pub sign: i8,
}

fn check_labels(g: &Graph, n: usize) -> Result<()> {
    match g.labels.iter().find(|l| **l as usize >= n) {
        Some(l) => Err(DiagramError::LabelOutOfRange { label: *l, n }),
        None => Ok(()),
    }
}

/// A Jacobi diagram on `n` oriented arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JacobiDiagram {
    n: u32,
    graph: Graph,
}

impl JacobiDiagram {
    /// `arcs[i]` lists the leg ids on arc `i` along its orientation;
    /// `trivalent` lists half-edge ids in cyclic order.
    pub fn new(
        n: usize,
        arcs: &[Vec<u32>],
        trivalent: &[[u32; 3]],
        edges: &[(u32, u32)],
    ) -> Result<Self> {
        if arcs.len() != n {
            return Err(DiagramError::ArcCount { expected: n, got: arcs.len() });
        }
        let mut b = Builder::default();
        for (a, legs) in arcs.iter().enumerate() {
            for (pos, id) in legs.iter().enumerate() {
                b.legs.push(BLeg { label: a as u32, key: (pos as u32, 0), id: *id });
            }
        }
        b.tris = trivalent.to_vec();
        b.edges = edges.to_vec();
        Self::from_graph(n, b.pack()?)
    }

    pub fn from_graph(n: usize, graph: Graph) -> Result<Self> {
        check_labels(&graph, n)?;
        Ok(Self { n: n as u32, graph })
    }

    /// Disjoint chords; chord `(a, b)` appends one leg to arc `a` and then
    /// one to arc `b`.
    pub fn chords(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut b = Builder::default();
        let mut next_pos = vec![0u32; n];
        for (c, (x, y)) in pairs.iter().enumerate() {
            for (k, arc) in [x, y].iter().enumerate() {
                b.legs.push(BLeg { label: **arc as u32, key: (next_pos[**arc], 0), id: (2 * c + k) as u32 });
                next_pos[**arc] += 1;
            }
            b.edges.push((2 * c as u32, 2 * c as u32 + 1));
        }
        let g = b.pack().expect("chord diagram is well formed");
        Self::from_graph(n, g).expect("arcs in range").canonical().expect("chords have legs")
    }

    pub fn empty(n: usize) -> Self {
        Self { n: n as u32, graph: Graph::empty() }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn degree(&self) -> usize {
        self.graph.degree()
    }

    pub fn trivalent_count(&self) -> usize {
        self.graph.trivalent()
    }

    /// Leg ids (packed numbering) on each arc in order.
    pub fn arcs(&self) -> Vec<Vec<u32>> {
        let mut arcs = vec![Vec::new(); self.n()];
        for (i, a) in self.graph.labels.iter().enumerate() {
            arcs[*a as usize].push(i as u32);
        }
        arcs
    }

    pub fn canonical(&self) -> Result<Self> {
        Ok(Self { n: self.n, graph: self.graph.canonical_fixed_legs()? })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(&Diagram::Jacobi(self.clone()))).expect("serializable")
    }
}

/// An open Jacobi diagram whose univalent vertices carry colors `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenJacobiDiagram {
    n: u32,
    graph: Graph,
}

impl OpenJacobiDiagram {
    /// `legs` are `(leg id, color)` pairs; `trivalent` lists half-edge ids in
    /// cyclic order.
    pub fn new(
        n: usize,
        legs: &[(u32, u32)],
        trivalent: &[[u32; 3]],
        edges: &[(u32, u32)],
    ) -> Result<Self> {
        let mut b = Builder::default();
        for (id, color) in legs {
            b.legs.push(BLeg { label: *color, key: (*id, 0), id: *id });
        }
        b.tris = trivalent.to_vec();
        b.edges = edges.to_vec();
        Self::from_graph(n, b.pack()?)
    }

    pub fn from_graph(n: usize, graph: Graph) -> Result<Self> {
        check_labels(&graph, n)?;
        Ok(Self { n: n as u32, graph })
    }

    pub fn strut(n: usize, a: u32, b: u32) -> Self {
        Self::new(n, &[(0, a), (1, b)], &[], &[(0, 1)]).expect("strut")
    }

    /// One trivalent vertex with legs colored `a, b, c` in cyclic order.
    pub fn tripod(n: usize, a: u32, b: u32, c: u32) -> Self {
        Self::new(n, &[(0, a), (1, b), (2, c)], &[[10, 11, 12]], &[(0, 10), (1, 11), (2, 12)]).expect("tripod")
    }

    /// Two trivalent vertices joined by a double edge, with a leg of color
    /// `a` on the first and of color `b` on the second. Orientations:
    /// `(a, e, f)` and `(b, e', f')` with edges `e e'` and `f f'`.
    pub fn bubble(n: usize, a: u32, b: u32) -> Self {
        Self::new(
            n,
            &[(0, a), (1, b)],
            &[[10, 11, 12], [20, 21, 22]],
            &[(0, 10), (1, 20), (11, 21), (12, 22)],
        )
        .expect("bubble")
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn degree(&self) -> usize {
        self.graph.degree()
    }

    pub fn trivalent_count(&self) -> usize {
        self.graph.trivalent()
    }

    /// Leg colors, sorted.
    pub fn colors(&self) -> &[u32] {
        &self.graph.labels
    }

    /// Canonical representative and the sign `self = sign * representative`.
    pub fn canonical(&self) -> Result<(Self, i8)> {
        let (g, s) = self.graph.canonical_free_legs()?;
        Ok((Self { n: self.n, graph: g }, s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(&Diagram::Open(self.clone()))).expect("serializable")
    }
}

pub fn canonicalize_jacobi(d: &JacobiDiagram) -> Result<CanonicalForm> {
    Ok(CanonicalForm { encoding: d.canonical()?.graph.encoding(), sign: 1 })
}

pub fn canonicalize_open(d: &OpenJacobiDiagram) -> Result<CanonicalForm> {
    let (c, sign) = d.canonical()?;
    Ok(CanonicalForm { encoding: c.graph.encoding(), sign })
}

/// Either flavor, for I/O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Jacobi(JacobiDiagram),
    Open(OpenJacobiDiagram),
}

/// Wire format. Field order is the serialization order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramJson {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<BTreeMap<u32, u32>>,
    pub trivalent: Vec<[u32; 3]>,
    pub edges: Vec<[u32; 2]>,
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        let (kind, n, g) = match d {
            Diagram::Jacobi(j) => ("jacobi", j.n(), &j.graph),
            Diagram::Open(o) => ("open", o.n(), &o.graph),
        };
        let l = g.legs() as u32;
        let trivalent = (0..g.t).map(|j| [l + 3 * j, l + 3 * j + 1, l + 3 * j + 2]).collect();
        let edges = g.edges().into_iter().map(|(a, b)| [a, b]).collect();
        let (arcs, colors) = match d {
            Diagram::Jacobi(j) => (Some(j.arcs()), None),
            Diagram::Open(_) => (
                None,
                Some(g.labels.iter().enumerate().map(|(i, c)| (i as u32, c + 1)).collect()),
            ),
        };
        DiagramJson { kind: kind.to_string(), n, arcs, colors, trivalent, edges }
    }
}

impl Diagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: DiagramJson = serde_json::from_str(s).map_err(|e| DiagramError::Json(e.to_string()))?;
        Self::try_from(j)
    }
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = DiagramError;

    fn try_from(j: DiagramJson) -> Result<Self> {
        let edges: Vec<(u32, u32)> = j.edges.iter().map(|[a, b]| (*a, *b)).collect();
        match j.kind.as_str() {
            "jacobi" => {
                let arcs = j.arcs.ok_or_else(|| DiagramError::Json("missing \"arcs\"".into()))?;
                Ok(Diagram::Jacobi(JacobiDiagram::new(j.n, &arcs, &j.trivalent, &edges)?))
            }
            "open" => {
                let colors = j.colors.ok_or_else(|| DiagramError::Json("missing \"colors\"".into()))?;
                let mut legs = Vec::with_capacity(colors.len());
                for (id, c) in colors {
                    if c == 0 || c as usize > j.n {
                        return Err(DiagramError::LabelOutOfRange { label: c, n: j.n });
                    }
                    legs.push((id, c - 1));
                }
                Ok(Diagram::Open(OpenJacobiDiagram::new(j.n, &legs, &j.trivalent, &edges)?))
            }
            other => Err(DiagramError::Json(format!("unknown kind {other:?}"))),
        }
    }
}

/// All weak compositions of `total` into `parts` parts, lexicographic.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=rest).rev() {
            cur.push(a);
            go(rest - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Generates every graph with the given (fixed, ordered) legs and `t`
/// trivalent vertices that is already in BFS-canonical form. Each
/// isomorphism class fixing the legs appears exactly once.
fn generate_canonical(labels: &[u32], t: usize, cap: usize, out: &mut Vec<Graph>) -> Result<()> {
    struct State<'a> {
        l: usize,
        t: usize,
        labels: &'a [u32],
        partner: Vec<u32>,
        queue: Vec<u32>,
        created: usize,
        cap: usize,
    }
    fn step(s: &mut State, head: usize, out: &mut Vec<Graph>) -> Result<()> {
        let mut head = head;
        while head < s.queue.len() && s.partner[s.queue[head] as usize] != UNSET {
            head += 1;
        }
        if head == s.queue.len() {
            if s.created == s.t {
                if out.len() >= s.cap {
                    return Err(DiagramError::ResourceLimit(s.cap));
                }
                out.push(Graph { labels: s.labels.to_vec(), t: s.t as u32, partner: s.partner.clone() });
            }
            return Ok(());
        }
        let h = s.queue[head] as usize;
        if s.created < s.t {
            let v = (s.l + 3 * s.created) as u32;
            s.partner[h] = v;
            s.partner[v as usize] = h as u32;
            s.queue.push(v + 1);
            s.queue.push(v + 2);
            s.created += 1;
            step(s, head + 1, out)?;
            s.created -= 1;
            s.queue.truncate(s.queue.len() - 2);
            s.partner[h] = UNSET;
            s.partner[v as usize] = UNSET;
        }
        for q in head + 1..s.queue.len() {
            let h2 = s.queue[q] as usize;
            if s.partner[h2] == UNSET {
                s.partner[h] = h2 as u32;
                s.partner[h2] = h as u32;
                step(s, head + 1, out)?;
                s.partner[h] = UNSET;
                s.partner[h2] = UNSET;
            }
        }
        Ok(())
    }
    let l = labels.len();
    let mut s = State {
        l,
        t,
        labels,
        partner: vec![UNSET; l + 3 * t],
        queue: (0..l as u32).collect(),
        created: 0,
        cap,
    };
    step(&mut s, 0, out)
}

fn raw_graphs(n: usize, d: usize, t: usize, cap: usize) -> Result<Vec<Graph>> {
    if t > 2 * d {
        return Ok(vec![]);
    }
    let l = 2 * d - t;
    if l == 0 {
        return Ok(if t == 0 { vec![Graph::empty()] } else { vec![] });
    }
    let comps = compositions(l, n);
    let parts: Vec<Result<Vec<Graph>>> = comps
        .par_iter()
        .map(|c| {
            let labels: Vec<u32> = c
                .iter()
                .enumerate()
                .flat_map(|(i, k)| std::iter::repeat(i as u32).take(*k))
                .collect();
            let mut out = Vec::new();
            generate_canonical(&labels, t, cap, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
        if all.len() > cap {
            return Err(DiagramError::ResourceLimit(cap));
        }
    }
    Ok(all)
}

/// All Jacobi diagrams on `n` arcs of degree `d` with exactly `t`
/// trivalent vertices, one per isomorphism class, sorted.
pub fn enumerate_jacobi(n: usize, d: usize, t: usize) -> Result<Vec<JacobiDiagram>> {
    enumerate_jacobi_capped(n, d, t, DEFAULT_CAP)
}

pub fn enumerate_jacobi_capped(n: usize, d: usize, t: usize, cap: usize) -> Result<Vec<JacobiDiagram>> {
    let mut gs = raw_graphs(n, d, t, cap)?;
    gs.sort();
    Ok(gs.into_iter().map(|g| JacobiDiagram { n: n as u32, graph: g }).collect())
}

/// All non-degenerate open diagrams of degree `d` with exactly `t`
/// trivalent vertices and colors in `0..n`, as canonical representatives
/// (sign +1), sorted.
pub fn enumerate_open(n: usize, d: usize, t: usize) -> Result<Vec<OpenJacobiDiagram>> {
    enumerate_open_capped(n, d, t, DEFAULT_CAP)
}

pub fn enumerate_open_capped(n: usize, d: usize, t: usize, cap: usize) -> Result<Vec<OpenJacobiDiagram>> {
    let gs = raw_graphs(n, d, t, cap)?;
    let canon: Vec<Result<(Graph, i8)>> = gs.par_iter().map(|g| g.canonical_free_legs()).collect();
    let mut set = BTreeSet::new();
    for c in canon {
        let (g, s) = c?;
        if s != 0 {
            set.insert(g);
        }
    }
    Ok(set.into_iter().map(|g| OpenJacobiDiagram { n: n as u32, graph: g }).collect())
}
