//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use greenseq_core::fixtures;
use greenseq_core::rank2::roots_agree;
use greenseq_core::tame::RootSets;
use greenseq_core::{
    classify, enumerate_mgs, enumerate_reddening, ladder_rotation_check, mutation_formula_check,
    rotate, run_sequence, ExchangeMatrix, IntMatrix, Permutation, Rank2Ladder, SearchConfig,
    SearchReport, Sign, TameContext, ValuedQuiver, Vertex, VertexColor,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{ints, random_exchange, random_sequence};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mgs(b0: &ExchangeMatrix, bound: usize, prune: bool) -> Result<SearchReport, String> {
    let mut cfg = SearchConfig::mgs(bound);
    cfg.prune_infinite_source = prune;
    enumerate_mgs(b0, &cfg).map_err(err)
}

fn kronecker_reddening(bound: usize) -> Result<SearchReport, String> {
    let k = fixtures::exchange("kronecker").unwrap();
    enumerate_reddening(&k, &SearchConfig::reddening(bound, 1)).map_err(err)
}

fn criterion_1() -> Outcome {
    let q = fixtures::quiver("weighted_path").unwrap();
    let want = fixtures::weighted_path_matrices();
    let ex = ExchangeMatrix::from_quiver(&q);
    ensure!(q.euler_matrix() == want.e, "E = {}", q.euler_matrix());
    ensure!(ex.b() == &want.b, "B = {}", ex.b());
    ensure!(ex.d() == want.d.as_slice(), "D = {:?}", ex.d());
    ensure!(ex.d_matrix() == IntMatrix::diagonal(&want.d), "D matrix");
    let lhs = &ex.d_matrix() * ex.b();
    ensure!(lhs == &want.e.transpose() - &want.e, "DB != E^t - E");
    ensure!(ex.to_quiver() == q, "quiver round-trip");
    for (name, _) in fixtures::QUIVERS {
        let q = fixtures::quiver(name).unwrap();
        ensure!(
            ExchangeMatrix::from_quiver(&q).to_quiver() == q,
            "round-trip fails for {name}"
        );
    }
    Ok("E, B, D match; round-trip on all fixtures".into())
}

fn criterion_2() -> Outcome {
    let want = fixtures::weighted_path_matrices();
    let ex = fixtures::exchange("weighted_path").unwrap();
    let xp = ex.x_matrix(2, Sign::Plus).map_err(err)?;
    let xm = ex.x_matrix(2, Sign::Minus).map_err(err)?;
    ensure!(xp.matrix() == &want.x2_plus, "X2+ = {}", xp.matrix());
    ensure!(xm.matrix() == &want.x2_minus, "X2- = {}", xm.matrix());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let b = random_exchange(&mut rng, n, 3);
        let j = rng.gen_range(1..=n);
        let p = b.x_matrix(j, Sign::Plus).map_err(err)?;
        let m = b.x_matrix(j, Sign::Minus).map_err(err)?;
        let id = IntMatrix::identity(n);
        ensure!(
            p.matrix() * p.matrix() == id,
            "X+X+ != I for {} j={j}",
            b.b()
        );
        ensure!(
            m.matrix() * m.matrix() == id,
            "X-X- != I for {} j={j}",
            b.b()
        );
        // J_j B keeps row j of B and zeroes the rest.
        let mut jb = IntMatrix::zeros(n, n);
        for k in 0..n {
            jb[(j - 1, k)] = b.b()[(j - 1, k)].clone();
        }
        ensure!(
            p.matrix() * m.matrix() == &id + &jb,
            "X+X- != I + J_j B for {} j={j}",
            b.b()
        );
    }
    Ok("fixtures exact; 500 random (B, j) satisfy X X = I and X+ X- = I + J_j B".into())
}

fn criterion_3() -> Outcome {
    let runs = fixtures::c_matrix_runs();
    for run in &runs {
        let t = run_sequence(&run.b0, &run.sequence).map_err(err)?;
        let got = t.c_matrices();
        ensure!(
            got.len() == run.c_matrices.len(),
            "expected {} matrices",
            run.c_matrices.len()
        );
        for (s, (g, w)) in got.iter().zip(&run.c_matrices).enumerate() {
            ensure!(g == w, "{:?}: C_{s} = {g}, expected {w}", run.sequence);
        }
        // The highlighted column of C_{s+1} is the negated column k of C_s.
        for (s, &k) in run.sequence.iter().enumerate() {
            let (a, b) = (&run.c_matrices[s], &run.c_matrices[s + 1]);
            let neg: Vec<BigInt> = a.column(k - 1).iter().map(|x| -x).collect();
            ensure!(
                b.column(k - 1) == neg,
                "step {s}: mutated column is not negated"
            );
        }
    }
    Ok(format!("{} runs reproduced entry for entry", runs.len()))
}

fn criterion_4() -> Outcome {
    for run in fixtures::c_matrix_runs() {
        ensure!(
            mutation_formula_check(&run.b0, &run.sequence).map_err(err)?,
            "formula fails on worked run {:?}",
            run.sequence
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..300 {
        let n = rng.gen_range(1..=4);
        let b = random_exchange(&mut rng, n, 2);
        let len = rng.gen_range(1..=10);
        let ks = random_sequence(&mut rng, n, len);
        ensure!(
            mutation_formula_check(&b, &ks).map_err(err)?,
            "case {case}: formula fails for B = {} along {ks:?}",
            b.b()
        );
    }
    Ok("worked pair and 300 random trajectories".into())
}

fn criterion_5() -> Outcome {
    let mut rotated = 0;
    for (name, b0) in fixtures::regression_set() {
        let report = mgs(&b0, 12, false)?;
        for f in &report.found {
            let (b1, ks) = rotate(&b0, &f.sequence).map_err(err)?;
            let class = classify(&run_sequence(&b1, &ks).map_err(err)?).map_err(err)?;
            ensure!(
                class.is_maximal_green(),
                "{name}: rotation of {:?} not MGS",
                f.sequence
            );
            ensure!(
                class.sigma() == Some(&f.sigma),
                "{name}: sigma changed for {:?}",
                f.sequence
            );
            rotated += 1;
        }
    }
    let k = fixtures::exchange("kronecker").unwrap();
    let seq = fixtures::kronecker_reddening();
    let (k1, ks) = rotate(&k, &seq).map_err(err)?;
    let t = run_sequence(&k1, &ks).map_err(err)?;
    let class = classify(&t).map_err(err)?;
    ensure!(
        class.red_count() == Some(1),
        "rotated {ks:?} has class {class:?}"
    );

    let run = fixtures::muller_run();
    let t = run_sequence(&run.b0, &run.sequence).map_err(err)?;
    for (s, want) in run.b_matrices.iter().enumerate() {
        ensure!(
            t.seed(s).b().b() == want,
            "Muller B_{s} = {}",
            t.seed(s).b().b()
        );
    }
    let sigma = Permutation::new(run.sigma.clone()).map_err(err)?;
    let class = classify(&t).map_err(err)?;
    ensure!(class.sigma() == Some(&sigma), "Muller sigma {class:?}");
    ensure!(
        t.terminal().b() == &run.b0.conjugate_by_permutation(&run.sigma),
        "Muller terminal B is not the permuted initial B"
    );
    Ok(format!(
        "{rotated} MGS rotations keep sigma; (1,2,1,1) rotates to {ks:?} with r = 1"
    ))
}

fn reddening_corpus() -> Result<Vec<(String, ExchangeMatrix, Vec<Vertex>)>, String> {
    let mut out = Vec::new();
    for (name, b0) in fixtures::regression_set() {
        for f in mgs(&b0, 12, false)?.found {
            out.push((name.to_string(), b0.clone(), f.sequence));
        }
    }
    let k = fixtures::exchange("kronecker").unwrap();
    for f in kronecker_reddening(10)?.found {
        out.push(("kronecker".into(), k.clone(), f.sequence));
    }
    Ok(out)
}

fn criterion_6() -> Outcome {
    let corpus = reddening_corpus()?;
    for (name, b0, ks) in &corpus {
        let t = run_sequence(b0, ks).map_err(err)?;
        for k in 1..=b0.n() {
            let (plus, minus) = t.one_more_time_counts(k).map_err(err)?;
            ensure!(
                plus == minus + 1,
                "{name} {ks:?} k={k}: plus={plus} minus={minus}"
            );
        }
    }
    Ok(format!("{} reddening sequences, every k", corpus.len()))
}

fn criterion_7() -> Outcome {
    let muller = fixtures::exchange("muller").unwrap();
    let got = mgs(&muller, 12, false)?.sequences();
    ensure!(got == fixtures::muller_mgs(), "3=>2->1: {got:?}");

    let a3 = fixtures::exchange("a3_linear").unwrap();
    let lens = mgs(&a3, 10, true)?.lengths();
    ensure!(lens == vec![3, 4, 5, 6], "linear A3 lengths {lens:?}");

    let cyc = fixtures::exchange("a3_cyclic").unwrap();
    let lens = mgs(&cyc, 10, true)?.lengths();
    ensure!(
        !lens.is_empty() && lens.iter().all(|l| *l == 4 || *l == 5),
        "cyclic A3 lengths {lens:?}"
    );

    let k = fixtures::exchange("kronecker").unwrap();
    let got = mgs(&k, 20, true)?.sequences();
    ensure!(got == vec![vec![1, 2]], "Kronecker {got:?}");
    Ok("3=>2->1, linear A3, cyclic A3, Kronecker catalogues exact".into())
}

fn criterion_8() -> Outcome {
    let mut audited = 0;
    for name in ["kronecker", "muller"] {
        let q: ValuedQuiver = fixtures::quiver(name).unwrap();
        ensure!(q.is_acyclic(), "{name} should be acyclic");
        let b0 = ExchangeMatrix::from_quiver(&q);
        for f in mgs(&b0, 12, false)?.found {
            for a in q.infinite_type_arrows() {
                let first = |v: Vertex| f.sequence.iter().position(|&x| x == v);
                ensure!(
                    first(a.target) < first(a.source),
                    "{name} {:?} mutates {} before {}",
                    f.sequence,
                    a.source,
                    a.target
                );
                audited += 1;
            }
        }
    }
    for (name, b0) in fixtures::regression_set() {
        let p = mgs(&b0, 12, true)?.sequences();
        let u = mgs(&b0, 12, false)?.sequences();
        ensure!(p == u, "{name}: pruned {p:?} vs unpruned {u:?}");
    }
    Ok(format!(
        "{audited} (sequence, arrow) pairs audited; pruning lossless on 5 quivers"
    ))
}

fn criterion_9() -> Outcome {
    let k = fixtures::exchange("kronecker").unwrap();
    let ex = fixtures::exchange("weighted_path").unwrap();
    let muller = fixtures::exchange("muller").unwrap();
    let wide = ExchangeMatrix::new(IntMatrix::from_i64(&[&[0, -1], &[4, 0]]), ints(&[4, 1]))
        .map_err(err)?;
    let ladders = [
        Rank2Ladder::new(&k, 2, 1).map_err(err)?,
        Rank2Ladder::new(&ex, 3, 2).map_err(err)?,
        Rank2Ladder::new(&muller, 3, 2).map_err(err)?,
        Rank2Ladder::new(&wide, 2, 1).map_err(err)?,
    ];
    for l in &ladders {
        ensure!(
            roots_agree(l, 12),
            "closed form vs tau disagree for {:?}",
            l.valuation()
        );
    }
    ensure!(
        ladder_rotation_check(&k, 2, 1, 8).map_err(err)?,
        "Kronecker rotation"
    );
    ensure!(
        ladder_rotation_check(&muller, 3, 2, 8).map_err(err)?,
        "3=>2->1 rotation"
    );
    Ok("4 valuations agree to t = 12; X+ q_t = q'_(t-1) to t = 8".into())
}

fn sample_null_hyperplane(ctx: &TameContext, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    let basis = ctx.null_hyperplane_basis();
    let mut x = vec![BigInt::zero(); ctx.n()];
    for v in &basis {
        let c = BigInt::from(rng.gen_range(-6i64..=6));
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += &c * vi;
        }
    }
    x
}

fn below_all(ctx: &TameContext, x: &[BigInt], sets: &RootSets) -> Result<bool, String> {
    for a in &sets.p_k {
        if ctx.euler_pairing(x, a).map_err(err)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_10() -> Outcome {
    let kq = fixtures::quiver("kronecker").unwrap();
    let aq = fixtures::quiver("affine_a2").unwrap();
    let kron = TameContext::new(&kq).map_err(err)?;
    let aff = TameContext::new(&aq).map_err(err)?;
    ensure!(
        kron.null_root() == ints(&[1, 1]).as_slice(),
        "Kronecker eta {:?}",
        kron.null_root()
    );
    ensure!(
        aff.null_root() == ints(&[1, 1, 1]).as_slice(),
        "A2~ eta {:?}",
        aff.null_root()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for ctx in [&kron, &aff] {
        let n = ctx.n();
        // Duality and isometry on random pairs.
        for _ in 0..50 {
            let a: Vec<BigInt> = (0..n)
                .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                .collect();
            let b: Vec<BigInt> = (0..n)
                .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                .collect();
            let ta = ctx
                .ar_translate(&a, greenseq_core::Direction::Forward)
                .map_err(err)?;
            let tb = ctx
                .ar_translate(&b, greenseq_core::Direction::Forward)
                .map_err(err)?;
            ensure!(
                ctx.euler_pairing(&a, &tb).map_err(err)?
                    == -ctx.euler_pairing(&b, &a).map_err(err)?,
                "AR duality fails for {a:?}, {b:?}"
            );
            ensure!(
                ctx.euler_pairing(&ta, &tb).map_err(err)?
                    == ctx.euler_pairing(&a, &b).map_err(err)?,
                "isometry fails for {a:?}, {b:?}"
            );
        }
        // tau^m - I = eta delta^t, checked on the unit vectors.
        let m = ctx.coxeter_period();
        for j in 1..=n {
            let mut x = vec![BigInt::zero(); n];
            x[j - 1] = BigInt::one();
            let mut y = x.clone();
            for _ in 0..m {
                y = ctx
                    .ar_translate(&y, greenseq_core::Direction::Forward)
                    .map_err(err)?;
            }
            let d = ctx.defect(&x).map_err(err)?;
            let want: Vec<BigInt> = x
                .iter()
                .zip(ctx.null_root())
                .map(|(a, e)| a + &d * e)
                .collect();
            ensure!(y == want, "tau^m e_{j} = {y:?}, expected {want:?}");
        }
        ensure!(
            ctx.defect(ctx.null_root()).map_err(err)?.is_zero(),
            "delta(eta) != 0"
        );
        let sets = ctx.root_sets(4).map_err(err)?;
        ensure!(
            sets.p_k.len() == 4 * n && sets.i_k.len() == 4 * n,
            "|P_4|, |I_4|"
        );
        let distinct: BTreeSet<_> = sets.p_k.iter().collect();
        ensure!(distinct.len() == 4 * n, "P_4 has duplicates");
        for a in &sets.p_k {
            ensure!(
                ctx.defect(a).map_err(err)?.is_negative(),
                "defect of preprojective {a:?}"
            );
        }
        for b in &sets.i_k {
            ensure!(
                ctx.defect(b).map_err(err)?.is_positive(),
                "defect of preinjective {b:?}"
            );
        }
        // Equivalence on H(eta) for k >= m, and V_k on H(eta) against D(eta).
        for k in [m, m + 1, 2 * m] {
            let sets = ctx.root_sets(k).map_err(err)?;
            for _ in 0..200 {
                let x = sample_null_hyperplane(ctx, &mut rng);
                ensure!(
                    ctx.on_null_hyperplane(&x).map_err(err)?,
                    "sample off H(eta)"
                );
                let in_v = ctx.region_membership_in(&x, &sets).map_err(err)?.in_v;
                ensure!(
                    below_all(ctx, &x, &sets)? == in_v,
                    "equivalence fails at k={k}, x={x:?}"
                );
                ensure!(
                    ctx.in_d_eta(&x).map_err(err)? == in_v,
                    "D(eta) mismatch at k={k}, x={x:?}"
                );
            }
        }
        // Projective roots lie in V_k and W_k; their negatives in neither.
        for k in 1..=4 {
            for p in ctx.projective_roots().map_err(err)? {
                let c = ctx.region_membership(&p, k).map_err(err)?;
                ensure!(c.in_v && c.in_w, "projective {p:?} at k={k}: {c:?}");
                let neg: Vec<BigInt> = p.iter().map(|x| -x).collect();
                let c = ctx.region_membership(&neg, k).map_err(err)?;
                ensure!(
                    !c.in_v && !c.in_w,
                    "negative projective {neg:?} at k={k}: {c:?}"
                );
            }
        }
    }

    // Dimension matrices.
    let v0 = kron
        .cluster_dim_matrix(&IntMatrix::identity(2))
        .map_err(err)?;
    ensure!(
        v0 == IntMatrix::from_i64(&[&[-1, -2], &[0, -1]]),
        "V(I) = {v0}"
    );
    let k = fixtures::exchange("kronecker").unwrap();
    let t = run_sequence(&k, &[1, 2]).map_err(err)?;
    let sigma = classify(&t)
        .map_err(err)?
        .sigma()
        .cloned()
        .ok_or("(1,2) not reddening")?;
    let vt = kron.cluster_dim_matrix(t.terminal().c()).map_err(err)?;
    let proj = kron.projective_roots().map_err(err)?;
    for j in 1..=2 {
        ensure!(
            vt.column(j - 1) == proj[sigma.apply(j) - 1],
            "V(-P) column {j}"
        );
    }
    for s in 0..t.len() {
        let a = kron.cluster_dim_matrix(t.seed(s).c()).map_err(err)?;
        let b = kron.cluster_dim_matrix(t.seed(s + 1).c()).map_err(err)?;
        let changed = (0..2).filter(|&j| a.column(j) != b.column(j)).count();
        ensure!(changed == 1, "V changes in {changed} columns at step {s}");
    }
    let init = kron.region_class(&IntMatrix::identity(2), 4).map_err(err)?;
    ensure!(!init.in_v && !init.in_w, "initial cone {init:?}");
    let term = kron.region_class(t.terminal().c(), 4).map_err(err)?;
    ensure!(
        term.in_v && term.in_w && !term.is_inside(),
        "terminal cone {term:?}"
    );

    // All-or-nothing along every Kronecker reddening sequence (r <= 1,
    // length <= 8), and V exits only through red steps.
    let m = kron.coxeter_period();
    let mut clusters = 0;
    let mut exits = 0;
    for f in kronecker_reddening(8)?.found {
        let t = run_sequence(&k, &f.sequence).map_err(err)?;
        for kk in 1..=4 * m {
            let sets = kron.root_sets(kk).map_err(err)?;
            let classes = (0..=t.len())
                .map(|s| kron.region_class_in(t.seed(s).c(), &sets))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            clusters += classes.len();
            for s in 0..t.len() {
                if classes[s].in_v && !classes[s + 1].in_v {
                    exits += 1;
                    ensure!(
                        t.steps()[s].color == VertexColor::Red,
                        "{:?} leaves V_{kk} at green step {s}",
                        f.sequence
                    );
                }
            }
        }
    }
    Ok(format!(
        "eta, period and defect exact; 200-point checks at k >= m; {clusters} cones classified, {exits} V-exits all red"
    ))
}

fn criterion_11() -> Outcome {
    let a = kronecker_reddening(10)?.count();
    let b = kronecker_reddening(14)?.count();
    ensure!(a == b, "Kronecker r=1 counts {a} (10) vs {b} (14)");
    let mut counts = Vec::new();
    for (name, b0) in fixtures::regression_set() {
        let c12 = mgs(&b0, 12, true)?.count();
        let c16 = mgs(&b0, 16, true)?.count();
        ensure!(c12 == c16, "{name}: {c12} MGS at 12 vs {c16} at 16");
        counts.push(format!("{name}={c12}"));
    }
    Ok(format!(
        "Kronecker r=1 count {a}; MGS counts {}",
        counts.join(" ")
    ))
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("weighted path round-trip", criterion_1),
        ("X-matrix fixtures and identities", criterion_2),
        ("worked c-matrix sequences", criterion_3),
        ("mutation formula", criterion_4),
        ("rotation", criterion_5),
        ("one more time", criterion_6),
        ("MGS catalogues", criterion_7),
        ("target before source", criterion_8),
        ("rank-2 ladders", criterion_9),
        ("tame machinery", criterion_10),
        ("finiteness desk check", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
