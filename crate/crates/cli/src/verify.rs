//! The `paper-examples` suite: every worked example of the theory, checked
//! exactly. Randomized probes draw from a seeded generator and list the
//! samples they used.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use jacobi_core::actions::{act_a, act_aut, act_b, cable, READING};
use jacobi_core::bracket::{beta, bracket, filtration_shift_holds, rho_rank};
use jacobi_core::decomp::{
    alt_terms, b_double_prime_20, b_prime_20, construct_p, diagonal_conjugator, n2_basis, rep_matrix,
    schur_decompose_b, span_a2, submodule_closure, theta_image, two_chords, Partition, Which, BUBBLE_SIGN,
};
use jacobi_core::diagrams::{JacobiDiagram, OpenJacobiDiagram};
use jacobi_core::exactlin::{int, rref, Matrix, SparseVector, Subspace};
use jacobi_core::freegroup::{commutator, magnus_generators, Automorphism, Hom, IAWord, Word};
use jacobi_core::spaces::{pbw, space_a, space_b, OpenVector};

use crate::io::Report;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn into_report(self) -> Report {
        let json = serde_json::to_value(&self).expect("serializable");
        let mut r = Report::new(json, &["status", "check", "detail"]);
        for c in &self.checks {
            r.row(vec![if c.passed { "PASS" } else { "FAIL" }.into(), c.name.clone(), c.detail.clone()]);
        }
        let total = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.passed).count();
        r.row(vec![if self.passed { "PASS" } else { "FAIL" }.into(), "summary".into(), format!("{ok} of {total} checks passed")]);
        r
    }
}

/// Per-check state: the shared generator and the samples drawn from it.
struct Ctx {
    rng: ChaCha8Rng,
    samples: Vec<String>,
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn chord_coords(n: usize, pairs: &[(usize, usize)]) -> SparseVector {
    space_a(n, pairs.len()).unwrap().diagram_coords(&JacobiDiagram::chords(n, pairs)).unwrap()
}

fn strut_coords(n: usize, i: usize, j: usize) -> SparseVector {
    space_b(n, 1, 0).unwrap().diagram_coords(&OpenJacobiDiagram::strut(n, i as u32, j as u32)).unwrap()
}

fn equal_spaces(a: &Subspace, b: &Subspace) -> bool {
    a.dim() == b.dim() && a.contains_all(b)
}

fn degree_one_a(_: &mut Ctx) -> Outcome {
    for n in 1..=4 {
        let a = space_a(n, 1).map_err(err)?;
        ensure(a.dim() == n * (n + 1) / 2, || format!("dim A_1({n}) = {}", a.dim()))?;
        let chords: Vec<SparseVector> =
            (0..n).flat_map(|i| (i..n).map(move |j| chord_coords(n, &[(i, j)]))).collect();
        ensure(rref(&chords).dim() == a.dim(), || format!("the chords c_ij do not span A_1({n})"))?;
    }
    ensure(space_a(2, 1).map_err(err)?.dim() == 3, || "dim A_1(2) ≠ 3".into())?;
    Ok("dim A_1(n) = n(n+1)/2 with basis {c_ij : i ≤ j}, n ≤ 4".into())
}

fn degree_one_b(_: &mut Ctx) -> Outcome {
    for n in 1..=4 {
        let b = space_b(n, 1, 0).map_err(err)?;
        ensure(b.dim() == n * (n + 1) / 2, || format!("dim B_1({n}) = {}", b.dim()))?;
        let struts: Vec<SparseVector> = (0..n).flat_map(|i| (i..n).map(move |j| strut_coords(n, i, j))).collect();
        ensure(rref(&struts).dim() == b.dim(), || format!("the struts d_ij do not span B_1({n})"))?;
    }
    Ok("dim B_1(n) = n(n+1)/2 with basis {d_ij : i ≤ j}, n ≤ 4".into())
}

fn theta_chords(_: &mut Ctx) -> Outcome {
    for n in 1..=3 {
        let p = pbw(n, 1).map_err(err)?;
        for i in 0..n {
            for j in i..n {
                let got = p.theta(0, &chord_coords(n, &[(i, j)])).map_err(err)?;
                ensure(got == strut_coords(n, i, j), || format!("θ(c_{}{}) = {got} at n = {n}", i + 1, j + 1))?;
            }
        }
    }
    Ok("θ(c_ij) = d_ij for n ≤ 3".into())
}

fn abelianization(_: &mut Ctx) -> Outcome {
    let f = Hom::parse(2, 2, &["x1 x2 x1^-1", "x1^-1 x2"]).map_err(err)?;
    let m = f.abelianize();
    ensure(m == vec![vec![0, -1], vec![1, 1]], || format!("got {m:?}"))?;
    Ok("x1 ↦ x1x2x1⁻¹, x2 ↦ x1⁻¹x2 gives ((0,−1),(1,1))".into())
}

fn magnus_k21(_: &mut Ctx) -> Outcome {
    for n in 2..=4 {
        let k = Automorphism::by_name(n, "K21").map_err(err)?;
        for j in 0..n {
            let want = if j == 1 { Word::parse("x1 x2 x1^-1").unwrap() } else { Word::gen(j) };
            ensure(k.hom().images()[j] == want, || format!("K21(x{}) = {} at n = {n}", j + 1, k.hom().images()[j]))?;
        }
    }
    Ok("K21: x2 ↦ x1x2x1⁻¹, other generators fixed".into())
}

fn depth_two_word(_: &mut Ctx) -> Outcome {
    let w = crate::word::parse(3, "[K312, K132]").map_err(err)?;
    ensure(w.depth() == 2, || format!("depth {}", w.depth()))?;
    let g = w.evaluate().map_err(err)?;
    ensure(g.is_ia(), || "[K312, K132] is not in IA(3)".into())?;
    Ok(format!("{w} evaluates to an IA automorphism of depth 2"))
}

fn cabling_example(_: &mut Ctx) -> Outcome {
    // h: F_2 -> F_3 acts A(3) -> A(2); the input is the self-chord on the
    // second arc, which the two images x1x2 and x2x3 both pass through
    let h = Hom::parse(2, 3, &["x1 x2", "x2 x3"]).map_err(err)?;
    let mut got: Vec<(JacobiDiagram, i64)> = cable(&h, &JacobiDiagram::chords(3, &[(1, 1)]), READING)
        .map_err(err)?
        .into_iter()
        .map(|(d, c)| (d.canonical().unwrap(), c))
        .collect();
    got.sort();
    let mut want: Vec<(JacobiDiagram, i64)> =
        [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(a, b)| (JacobiDiagram::chords(2, &[(a, b)]), 1)).collect();
    want.sort();
    ensure(got == want, || format!("cabling gave {} terms", got.len()))?;
    let x = act_a(&h, 1, &chord_coords(3, &[(1, 1)])).map_err(err)?;
    let expect =
        chord_coords(2, &[(0, 0)]).add_scaled(&chord_coords(2, &[(0, 1)]), &int(2)).add(&chord_coords(2, &[(1, 1)]));
    ensure(x == expect, || format!("act_A gave {x}"))?;
    Ok("four chord diagrams, each with coefficient +1".into())
}

fn recoloring_degree_one(ctx: &mut Ctx) -> Outcome {
    for trial in 0..10 {
        let n = 1 + trial % 3;
        let p: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| ctx.rng.gen_range(-3..=3)).collect()).collect();
        ctx.samples.push(format!("P = {p:?}"));
        for i in 0..n {
            for j in 0..n {
                let got = act_b(&p, 1, 0, &strut_coords(n, i, j)).map_err(err)?;
                let mut want = SparseVector::zero();
                for k in 0..n {
                    for l in 0..n {
                        want = want.add_scaled(&strut_coords(n, k, l), &int(p[i][k] * p[j][l]));
                    }
                }
                ensure(got == want, || format!("P = {p:?}, d_{}{}", i + 1, j + 1))?;
            }
        }
    }
    Ok("B_1(P)(d_ij) = (P D Pᵀ)_ij for 10 random P, n ≤ 3".into())
}

fn graded_action_example(_: &mut Ctx) -> Outcome {
    let p = pbw(2, 2).map_err(err)?;
    let h = Hom::parse(2, 2, &["x1 x2 x1^-1", "x1^-1 x2"]).map_err(err)?;
    let bubble = |a, b| p.b[2].diagram_coords(&OpenJacobiDiagram::bubble(2, a, b)).unwrap();
    let y = bubble(0, 1);
    let z = act_a(&h, 2, &p.lift(2, &y).map_err(err)?).map_err(err)?;
    let image = p.theta(2, &z).map_err(err)?;
    ensure(image == bubble(1, 0).add(&bubble(1, 1)).neg(), || format!("grade-2 image {image}"))?;
    let via_b = act_b(&h.abelianize(), 2, 2, &y).map_err(err)?;
    ensure(via_b == image, || format!("act_B gave {via_b}"))?;
    Ok("grade-2 image is −1 times the displayed diagram and agrees with act_B".into())
}

fn inner_trivial(_: &mut Ctx) -> Outcome {
    let a = space_a(3, 2).map_err(err)?;
    let s = Automorphism::inner(3, &Word::gen(0)).map_err(err)?;
    for i in 0..a.dim() {
        let u = SparseVector::unit(i);
        ensure(act_aut(&s, 2, &u).map_err(err)? == u, || format!("basis element {i} moved"))?;
    }
    Ok(format!("u·σ_x1 = u on all {} basis elements of A_2(3)", a.dim()))
}

fn product_rule(ctx: &mut Ctx) -> Outcome {
    let gens = magnus_generators(3);
    let dim = space_a(3, 2).map_err(err)?.dim();
    for _ in 0..5 {
        let (g, h) = (&gens[ctx.rng.gen_range(0..gens.len())], &gens[ctx.rng.gen_range(0..gens.len())]);
        ctx.samples.push(format!("({}, {})", g.name(), h.name()));
        let gh = g.mul(h).map_err(err)?;
        for i in 0..dim {
            let u = SparseVector::unit(i);
            let ug = bracket(&u, g, 2).map_err(err)?;
            let rhs = ug.add(&bracket(&u, h, 2).map_err(err)?).add(&bracket(&ug, h, 2).map_err(err)?);
            ensure(bracket(&u, &gh, 2).map_err(err)? == rhs, || format!("fails for ({}, {})", g.name(), h.name()))?;
        }
    }
    Ok("[u,gh] = [u,g] + [u,h] + [[u,g],h] on 5 random pairs".into())
}

fn k21_shift(_: &mut Ctx) -> Outcome {
    let k21 = IAWord::gen(Automorphism::magnus2(3, 1, 0).map_err(err)?).map_err(err)?;
    ensure(filtration_shift_holds(&k21, 3, 2).map_err(err)?, || "[A_{2,k}(3), K21] ⊄ A_{2,k+1}(3)".into())?;
    Ok("[u, K21] ∈ A_{2,k+1}(3) for every basis u of A_{2,k}(3)".into())
}

fn strut_pair(n: usize, c: [u32; 4]) -> OpenJacobiDiagram {
    OpenJacobiDiagram::new(n, &[(0, c[0]), (1, c[1]), (2, c[2]), (3, c[3])], &[], &[(0, 1), (2, 3)]).unwrap()
}

/// `u = d11 d22 − d12 d12` in `B_{2,0}(3)`.
fn rank_two_u() -> std::result::Result<SparseVector, String> {
    let p = pbw(3, 2).map_err(err)?;
    let mut v = OpenVector::new();
    v.push(&strut_pair(3, [0, 0, 1, 1]), int(1)).map_err(err)?;
    v.push(&strut_pair(3, [0, 1, 0, 1]), int(-1)).map_err(err)?;
    let u = p.b[0].coords(&v).map_err(err)?;
    ensure(b_double_prime_20(&p.b[0]).map_err(err)?.contains(&u), || "u is not in B''_{2,0}(3)".into())?;
    Ok(u)
}

fn gen_word(name: &str) -> std::result::Result<IAWord, String> {
    IAWord::gen(Automorphism::by_name(3, name).map_err(err)?).map_err(err)
}

fn rho_one_value(_: &mut Ctx) -> Outcome {
    let u = rank_two_u()?;
    let p = pbw(3, 2).map_err(err)?;
    let tripod = p.b[1].diagram_coords(&OpenJacobiDiagram::tripod(3, 0, 1, 2)).map_err(err)?;
    let image = beta(2, 0, 1, &gen_word("K312")?, 3).map_err(err)?.apply(&u);
    let c = image.get(0);
    // the sign of a tripod depends on the cyclic orientation chosen for it
    ensure(image == tripod.scale(&c) && (c == int(6) || c == int(-6)), || format!("β(K312)(u) = {image}"))?;
    Ok(format!("β(K312)(u) = {c}·tripod(v1,v2,v3); the opposite orientation gives 6"))
}

fn rho_two_value(_: &mut Ctx) -> Outcome {
    let p = pbw(3, 2).map_err(err)?;
    let tripod = p.b[1].diagram_coords(&OpenJacobiDiagram::tripod(3, 0, 1, 2)).map_err(err)?;
    let image = beta(2, 1, 1, &gen_word("K132")?, 3).map_err(err)?.apply(&tripod);
    ensure(!image.is_zero(), || "β(K132)(tripod) = 0".into())?;
    Ok(format!("β(K132)(tripod) = {image} ≠ 0 in B_{{2,2}}(3)"))
}

fn rho_three_witness(_: &mut Ctx) -> Outcome {
    let u = rank_two_u()?;
    let w = commutator(&gen_word("K312")?, &gen_word("K132")?);
    let image = beta(2, 0, 2, &w, 3).map_err(err)?.apply(&u);
    ensure(!image.is_zero(), || "the depth-2 witness vanishes".into())?;
    Ok(format!("β([K312, K132])(u) = {image} ≠ 0"))
}

fn rho_ranks(_: &mut Ctx) -> Outcome {
    let r13 = rho_rank(1, 3).map_err(err)?;
    let r23 = rho_rank(2, 3).map_err(err)?;
    ensure(r13.rank == 6 && r13.injective(), || format!("ρ1 at n = 3: rank {}", r13.rank))?;
    ensure(r23.rank == 1 && r23.injective(), || format!("ρ2 at n = 3: rank {}", r23.rank))?;
    for w in [1, 2] {
        let r = rho_rank(w, 2).map_err(err)?;
        ensure(r.rank == 0, || format!("ρ{w} at n = 2: rank {}", r.rank))?;
    }
    Ok("rank ρ1 = 6, rank ρ2 = 1 at n = 3 (injective); both 0 at n = 2".into())
}

fn symmetrizer_identity(_: &mut Ctx) -> Outcome {
    let pp = construct_p(Which::Prime).map_err(err)?;
    let (ta, tb) = alt_terms().map_err(err)?;
    let cc = space_a(4, 2).map_err(err)?.diagram_coords(&two_chords(0, 1, 2, 3)).map_err(err)?;
    ensure(pp.add_scaled(&ta, &int(4)).add_scaled(&tb, &int(4)) == cc.scale(&int(24)), || "identity fails".into())?;
    Ok("P′ + 4a + 4b = 24 c⊗c in A_2(4)".into())
}

fn direct_sum(_: &mut Ctx) -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=4 {
        let p = pbw(n, 2).map_err(err)?;
        let ap = span_a2(Which::Prime, n).map_err(err)?;
        let app = span_a2(Which::DoublePrime, n).map_err(err)?;
        ensure(ap.intersect(&app).is_zero() && ap.dim() + app.dim() == p.a.dim(), || {
            format!("n = {n}: {} + {} vs {}", ap.dim(), app.dim(), p.a.dim())
        })?;
        let bp = b_prime_20(&p.b[0]).map_err(err)?;
        ensure(equal_spaces(&theta_image(&ap, n, 2, 0).map_err(err)?, &bp), || format!("n = {n}: θ(gr A_2') ≠ B'_{{2,0}}"))?;
        dims.push((ap.dim(), app.dim()));
    }
    ensure(dims[1] == (5, 4), || format!("n = 2 gives {:?}", dims[1]))?;
    Ok(format!("A_2 = A_2' ⊕ A_2'' and θ(gr A_2') = B'_{{2,0}}; dims for n = 1..4: {dims:?}"))
}

fn schur(_: &mut Ctx) -> Outcome {
    let show = |m: &BTreeMap<Partition, usize>| m.iter().map(|(p, k)| format!("{p}^{k}")).collect::<Vec<_>>().join(" ");
    let four = schur_decompose_b(4, 2).map_err(err)?;
    let want: BTreeMap<Partition, usize> =
        [&[4][..], &[2, 2], &[1, 1, 1], &[2]].iter().map(|p| (Partition::new(p), 1)).collect();
    ensure(four == want, || format!("B_2(4) = {}", show(&four)))?;
    for n in 1..=4 {
        let one = schur_decompose_b(n, 1).map_err(err)?;
        ensure(one == BTreeMap::from([(Partition::new(&[2]), 1)]), || format!("B_1({n}) = {}", show(&one)))?;
    }
    Ok(format!("B_2(4) = {}; B_1(n) = (2)^1 for n ≤ 4", show(&four)))
}

fn n2_matrices(_: &mut Ctx) -> Outcome {
    let basis = n2_basis(BUBBLE_SIGN).map_err(err)?;
    let m = |rows: [[i64; 4]; 4]| -> Matrix { rows.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect() };
    let cases = [
        (Automorphism::u12(2).unwrap(), m([[1, 1, 1, 0], [0, 1, 0, 0], [0, 2, 1, 0], [0, 1, 1, 1]])),
        (Automorphism::transposition(2, 0, 1).unwrap(), m([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])),
        (Automorphism::sigma(2).unwrap(), m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])),
    ];
    let mut notes = Vec::new();
    for (g, want) in &cases {
        let got = rep_matrix(g, &basis, 2).map_err(err)?;
        if &got == want {
            notes.push(format!("{} exact", g.name()));
        } else {
            let dg = diagonal_conjugator(&got, want).ok_or_else(|| format!("{} gives {got:?}", g.name()))?;
            let dg: Vec<String> = dg.iter().map(|c| c.to_string()).collect();
            notes.push(format!("{} after diagonal rescaling ({})", g.name(), dg.join(", ")));
        }
    }
    Ok(notes.join("; "))
}

fn fixed_line(_: &mut Ctx) -> Outcome {
    let basis = n2_basis(BUBBLE_SIGN).map_err(err)?;
    let w = basis[0].sub(&basis[1]).sub(&basis[3]);
    let gens = [Automorphism::u12(2).unwrap(), Automorphism::transposition(2, 0, 1).unwrap(), Automorphism::sigma(2).unwrap()];
    for g in &gens {
        ensure(act_aut(g, 2, &w).map_err(err)? == w, || format!("w·{} ≠ w", g.name()))?;
    }
    let c = submodule_closure(&[w], &gens, 2).map_err(err)?;
    ensure(c.closure.dim() == 1, || format!("closure has dimension {}", c.closure.dim()))?;
    Ok("w = u − u11 − u22 is fixed by U12, P12, σ and spans its closure".into())
}

type CheckFn = fn(&mut Ctx) -> Outcome;

fn worked_examples() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("A_1(n) basis of chords", degree_one_a),
        ("B_1(n) basis of struts", degree_one_b),
        ("θ maps chords to struts", theta_chords),
        ("abelianization matrix", abelianization),
        ("Magnus generator K21", magnus_k21),
        ("depth-2 word [K312, K132]", depth_two_word),
        ("cabling worked example", cabling_example),
        ("degree-one recoloring", recoloring_degree_one),
        ("graded action worked example", graded_action_example),
        ("inner automorphisms act trivially", inner_trivial),
        ("bracket product rule", product_rule),
        ("K21 raises the filtration", k21_shift),
        ("ρ1 value on u", rho_one_value),
        ("ρ2 value on the tripod", rho_two_value),
        ("ρ3 witness", rho_three_witness),
        ("ρ ranks", rho_ranks),
        ("symmetrizer identity", symmetrizer_identity),
        ("A_2 = A_2' ⊕ A_2''", direct_sum),
        ("Schur decompositions", schur),
        ("representation matrices at n = 2", n2_matrices),
        ("fixed vector at n = 2", fixed_line),
    ]
}

pub fn run(suite: &str, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        "paper-examples" => worked_examples(),
        other => bail!("unknown suite {other:?}; available: paper-examples"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, f) in checks {
        let mut ctx = Ctx { rng: ChaCha8Rng::seed_from_u64(rng.gen()), samples: Vec::new() };
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut ctx))).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        out.push(Check { name: name.into(), passed, detail, samples: ctx.samples });
    }
    let passed = out.iter().all(|c| c.passed);
    Ok(SuiteReport { suite: suite.into(), seed, passed, checks: out })
}
