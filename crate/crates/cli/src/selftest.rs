//! Regression checks over the bundled worked examples.

use std::collections::BTreeSet;

use greenseq_core::fixtures;
use greenseq_core::{
    classify, enumerate_mgs, enumerate_reddening, format_sequence, ladder_rotation_check,
    run_sequence, ExchangeMatrix, Permutation, SearchConfig, Sign, TameContext,
};
use num_bigint::BigInt;
use serde_json::json;

use crate::CliError;

type Check = fn() -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("weighted_path_matrices", weighted_path),
    ("c_matrix_runs", c_matrix_runs),
    ("muller_b_matrices", muller_run),
    ("muller_mgs_catalogue", muller_mgs),
    ("a3_worked_sigma", a3_sigma),
    ("kronecker_mgs", kronecker_mgs),
    ("kronecker_reddening", kronecker_reddening),
    ("kronecker_ladder", kronecker_ladder),
    ("kronecker_null_root", kronecker_null_root),
];

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn fixture(name: &str) -> Result<ExchangeMatrix, String> {
    fixtures::exchange(name).ok_or_else(|| format!("missing fixture {name}"))
}

fn weighted_path() -> Result<(), String> {
    let want = fixtures::weighted_path_matrices();
    let q = fixtures::quiver("weighted_path").ok_or("missing fixture weighted_path")?;
    let b = ExchangeMatrix::from_quiver(&q);
    ensure(q.euler_matrix() == want.e, || {
        format!("E = {}", q.euler_matrix())
    })?;
    ensure(*b.b() == want.b, || format!("B = {}", b.b()))?;
    ensure(b.d() == want.d.as_slice(), || "D differs".into())?;
    let plus = b.x_matrix(2, Sign::Plus).map_err(|e| e.to_string())?;
    let minus = b.x_matrix(2, Sign::Minus).map_err(|e| e.to_string())?;
    ensure(*plus.matrix() == want.x2_plus, || {
        format!("X2+ = {}", plus.matrix())
    })?;
    ensure(*minus.matrix() == want.x2_minus, || {
        format!("X2- = {}", minus.matrix())
    })
}

fn c_matrix_runs() -> Result<(), String> {
    for run in fixtures::c_matrix_runs() {
        let t = run_sequence(&run.b0, &run.sequence).map_err(|e| e.to_string())?;
        ensure(t.c_matrices() == run.c_matrices, || {
            format!("run {} differs", format_sequence(&run.sequence))
        })?;
    }
    Ok(())
}

fn muller_run() -> Result<(), String> {
    let run = fixtures::muller_run();
    let t = run_sequence(&run.b0, &run.sequence).map_err(|e| e.to_string())?;
    for (s, want) in run.b_matrices.iter().enumerate() {
        let got = t.seed(s).b().b();
        ensure(got == want, || format!("B_{s} = {got}"))?;
    }
    let class = classify(&t).map_err(|e| e.to_string())?;
    let sigma = Permutation::new(run.sigma.clone()).map_err(|e| e.to_string())?;
    ensure(class.sigma() == Some(&sigma), || format!("class {class:?}"))
}

fn muller_mgs() -> Result<(), String> {
    let b = fixture("muller")?;
    let found: BTreeSet<_> = enumerate_mgs(&b, &SearchConfig::mgs(12))
        .map_err(|e| e.to_string())?
        .sequences()
        .into_iter()
        .collect();
    let want: BTreeSet<_> = fixtures::muller_mgs().into_iter().collect();
    ensure(found == want, || format!("found {found:?}"))
}

fn a3_sigma() -> Result<(), String> {
    let b = fixture("a3_linear")?;
    let t = run_sequence(&b, &[2, 3, 1, 3, 2]).map_err(|e| e.to_string())?;
    let class = classify(&t).map_err(|e| e.to_string())?;
    let sigma = Permutation::new(vec![3, 1, 2]).map_err(|e| e.to_string())?;
    ensure(
        class.is_maximal_green() && class.sigma() == Some(&sigma),
        || format!("class {class:?}"),
    )
}

fn kronecker_mgs() -> Result<(), String> {
    let b = fixture("kronecker")?;
    let found = enumerate_mgs(&b, &SearchConfig::mgs(20))
        .map_err(|e| e.to_string())?
        .sequences();
    ensure(found == vec![vec![1, 2]], || format!("found {found:?}"))
}

fn kronecker_reddening() -> Result<(), String> {
    let b = fixture("kronecker")?;
    let seq = fixtures::kronecker_reddening();
    let class =
        classify(&run_sequence(&b, &seq).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(class.red_count() == Some(1), || format!("class {class:?}"))?;
    let r = enumerate_reddening(&b, &SearchConfig::reddening(10, 1)).map_err(|e| e.to_string())?;
    ensure(r.sequences().contains(&seq), || {
        "sequence not enumerated".into()
    })
}

fn kronecker_ladder() -> Result<(), String> {
    let b = fixture("kronecker")?;
    let ok = ladder_rotation_check(&b, 2, 1, 8).map_err(|e| e.to_string())?;
    ensure(ok, || "X_2^+ q_t != q'_{t-1}".into())
}

fn kronecker_null_root() -> Result<(), String> {
    let q = fixtures::quiver("kronecker").ok_or("missing fixture kronecker")?;
    let ctx = TameContext::new(&q).map_err(|e| e.to_string())?;
    let one = BigInt::from(1);
    ensure(ctx.null_root() == [one.clone(), one].as_slice(), || {
        format!("eta = {:?}", ctx.null_root())
    })
}

pub fn run(json: bool) -> Result<String, CliError> {
    let results: Vec<(&str, Result<(), String>)> =
        CHECKS.iter().map(|(name, f)| (*name, f())).collect();
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    let out = if json {
        let v = json!({
            "checks": results.iter().map(|(name, r)| json!({
                "name": name,
                "pass": r.is_ok(),
                "detail": r.as_ref().err(),
            })).collect::<Vec<_>>(),
            "passed": results.len() - failed,
            "total": results.len(),
        });
        format!(
            "{}\n",
            serde_json::to_string(&v).expect("JSON values serialise")
        )
    } else {
        let mut s = String::new();
        for (name, r) in &results {
            match r {
                Ok(()) => s.push_str(&format!("PASS {name}\n")),
                Err(e) => s.push_str(&format!("FAIL {name}: {e}\n")),
            }
        }
        s.push_str(&format!(
            "{} of {} checks passed\n",
            results.len() - failed,
            results.len()
        ));
        s
    };
    if failed > 0 {
        print!("{out}");
        return Err(CliError::Domain(format!("{failed} selftest checks failed")));
    }
    Ok(out)
}
