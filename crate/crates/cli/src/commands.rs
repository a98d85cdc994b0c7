//! One function per subcommand. Each returns the full stdout text.

use std::fmt::Write as _;
use std::path::Path;

use greenseq_core::io::{
    exchange_value, int_value, matrix_value, parse_exchange, parse_quiver, vector_value,
};
use greenseq_core::{
    classify as classify_trajectory, enumerate_mgs, enumerate_reddening, export_exchange_graph,
    fixtures, format_sequence, ladder_rotation_check, rank2::roots_agree,
    rotate as rotate_sequence, run_sequence, ExchangeMatrix, Rank2Ladder, SearchConfig,
    SearchReport, SequenceClass, TameContext, ValuedQuiver, Vertex,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::CliError;

fn read_input(input: &str) -> Result<String, CliError> {
    if let Some(name) = input.strip_prefix("fixture:") {
        return fixtures::QUIVERS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| CliError::Usage(format!("unknown fixture '{name}'")));
    }
    std::fs::read_to_string(input).map_err(|e| CliError::Usage(format!("cannot read {input}: {e}")))
}

pub fn load(input: &str) -> Result<ExchangeMatrix, CliError> {
    Ok(parse_exchange(&read_input(input)?)?)
}

pub fn load_quiver(input: &str) -> Result<ValuedQuiver, CliError> {
    Ok(parse_quiver(&read_input(input)?)?)
}

pub fn vec_str(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn json_out(v: Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string(&v).expect("JSON values serialise")
    )
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn seed(b0: &ExchangeMatrix, ks: &[Vertex], json: bool) -> Result<String, CliError> {
    let t = run_sequence(b0, ks)?;
    let s = t.terminal();
    let g = s.g_matrix()?;
    let colors: Vec<String> = s.colors()?.iter().map(|c| c.to_string()).collect();
    if json {
        return Ok(json_out(json!({
            "sequence": ks,
            "B": matrix_value(s.b().b()),
            "D": vector_value(s.b().d()),
            "C": matrix_value(s.c()),
            "G": matrix_value(g.matrix()),
            "colors": colors,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "sequence={}", format_sequence(ks));
    let _ = writeln!(out, "B={}", s.b().b());
    let _ = writeln!(out, "D={}", vec_str(s.b().d()));
    let _ = writeln!(out, "C={}", s.c());
    let _ = writeln!(out, "G={}", g.matrix());
    let _ = writeln!(out, "colors={}", colors.join(","));
    Ok(out)
}

pub fn classify(b0: &ExchangeMatrix, ks: &[Vertex], json: bool) -> Result<String, CliError> {
    let t = run_sequence(b0, ks)?;
    let class = classify_trajectory(&t)?;
    if json {
        return Ok(json_out(json!({
            "class": class.name(),
            "length": ks.len(),
            "red_count": t.red_count(),
            "sigma": class.sigma().map(|s| s.images().to_vec()),
        })));
    }
    Ok(match &class {
        SequenceClass::MaximalGreen { sigma } => {
            format!("class=maximal_green length={} sigma={sigma}\n", ks.len())
        }
        SequenceClass::Reddening { red_count, sigma } => {
            format!(
                "class=reddening length={} red={red_count} sigma={sigma}\n",
                ks.len()
            )
        }
        SequenceClass::NotReddening => {
            format!(
                "class=not_reddening length={} red={}\n",
                ks.len(),
                t.red_count()
            )
        }
    })
}

pub fn rotate(b0: &ExchangeMatrix, ks: &[Vertex], json: bool) -> Result<String, CliError> {
    let (b1, rotated) = rotate_sequence(b0, ks)?;
    if json {
        return Ok(json_out(json!({
            "sequence": rotated,
            "quiver": exchange_value(&b1),
        })));
    }
    Ok(format!(
        "sequence={}\nB={}\n",
        format_sequence(&rotated),
        b1.b()
    ))
}

fn report_text(r: &SearchReport, extra: &str) -> String {
    let mut out = String::new();
    for f in &r.found {
        if r.max_red == 0 {
            let _ = writeln!(out, "{}", format_sequence(&f.sequence));
        } else {
            let _ = writeln!(
                out,
                "{} red={} sigma={}",
                format_sequence(&f.sequence),
                f.red_count,
                f.sigma
            );
        }
    }
    let _ = write!(out, "count={} bound={}{extra}", r.count(), r.bound);
    if r.truncated {
        out.push_str(" truncated");
    }
    out.push('\n');
    out
}

fn report_json(r: &SearchReport) -> String {
    json_out(json!({
        "bound": r.bound,
        "max_red": r.max_red,
        "pruned": r.pruned,
        "truncated": r.truncated,
        "count": r.count(),
        "sequences": r.found.iter().map(|f| json!({
            "sequence": f.sequence,
            "red_count": f.red_count,
            "sigma": f.sigma.images(),
        })).collect::<Vec<_>>(),
    }))
}

pub fn mgs(
    b0: &ExchangeMatrix,
    max_len: usize,
    prune: bool,
    json: bool,
) -> Result<String, CliError> {
    let mut cfg = SearchConfig::mgs(max_len);
    cfg.prune_infinite_source = prune;
    cfg.prune_repetition = prune;
    let r = enumerate_mgs(b0, &cfg)?;
    Ok(if json {
        report_json(&r)
    } else {
        report_text(&r, "")
    })
}

pub fn reddening(
    b0: &ExchangeMatrix,
    max_len: usize,
    max_red: usize,
    prune: bool,
    json: bool,
) -> Result<String, CliError> {
    let mut cfg = SearchConfig::reddening(max_len, max_red);
    cfg.prune_repetition = prune;
    let r = enumerate_reddening(b0, &cfg)?;
    Ok(if json {
        report_json(&r)
    } else {
        report_text(&r, &format!(" max_red={max_red}"))
    })
}

pub fn graph(
    b0: &ExchangeMatrix,
    depth: usize,
    dot: Option<&Path>,
    json: bool,
) -> Result<String, CliError> {
    let g = export_exchange_graph(b0, depth)?;
    let dot_text = g.to_dot();
    if let Some(path) = dot {
        if path == Path::new("-") {
            return Ok(dot_text);
        }
        std::fs::write(path, &dot_text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        return Ok(json_out(json!({
            "depth": g.depth,
            "nodes": g.nodes.iter().enumerate().map(|(i, n)| json!({
                "id": i,
                "depth": n.depth,
                "B": matrix_value(&n.b),
                "c_vectors": n.key.columns().map(|c| vector_value(c)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "edges": g.edges.iter().map(|e| json!({
                "from": e.from,
                "to": e.to,
                "vertex": e.vertex,
                "color": e.color.to_string(),
            })).collect::<Vec<_>>(),
        })));
    }
    let mut out = format!(
        "nodes={} edges={} depth={}\n",
        g.nodes.len(),
        g.edges.len(),
        g.depth
    );
    for e in &g.edges {
        let _ = writeln!(
            out,
            "{} -> {} vertex={} color={}",
            e.from, e.to, e.vertex, e.color
        );
    }
    Ok(out)
}

pub fn rank2(
    b0: &ExchangeMatrix,
    (j, i): (Vertex, Vertex),
    t_max: usize,
    json: bool,
) -> Result<String, CliError> {
    let l = Rank2Ladder::new(b0, j, i)?;
    let (a, b) = l.valuation();
    let agree = roots_agree(&l, t_max);
    let rotation = ladder_rotation_check(b0, j, i, t_max)?;
    let roots: Vec<Vec<BigInt>> = (-1..=t_max as i64)
        .map(|t| l.root(t))
        .collect::<Result<_, _>>()?;
    if json {
        return Ok(json_out(json!({
            "arrow": [j, i],
            "valuation": [int_value(a), int_value(b)],
            "infinite_type": l.is_infinite_type(),
            "roots": roots.iter().map(|r| vector_value(r)).collect::<Vec<_>>(),
            "closed_form_matches_tau": agree,
            "rotation_check": rotation,
        })));
    }
    let mut out = format!(
        "arrow={j}->{i} valuation=({a},{b}) infinite_type={}\n",
        yes(l.is_infinite_type())
    );
    for (t, r) in (-1i64..).zip(&roots) {
        let _ = writeln!(out, "t={t} q={}", vec_str(r));
    }
    let _ = writeln!(
        out,
        "closed_form_matches_tau={} rotation_check={}",
        yes(agree),
        yes(rotation)
    );
    Ok(out)
}

pub fn tame(
    q: &ValuedQuiver,
    k: usize,
    ks: Option<&[Vertex]>,
    json: bool,
) -> Result<String, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let ctx = TameContext::new(q)?;
    let sets = ctx.root_sets(k)?;
    let defects = |v: &[Vec<BigInt>]| -> Result<Vec<BigInt>, CliError> {
        Ok(v.iter().map(|x| ctx.defect(x)).collect::<Result<_, _>>()?)
    };
    let (dp, di) = (defects(&sets.p_k)?, defects(&sets.i_k)?);
    let regions = match ks {
        Some(ks) => {
            let b0 = ExchangeMatrix::from_quiver(q);
            let t = run_sequence(&b0, ks)?;
            let mut rows = Vec::new();
            for s in 0..=t.len() {
                let class = ctx.region_class_in(t.seed(s).c(), &sets)?;
                let step = s.checked_sub(1).map(|p| &t.steps()[p]);
                rows.push((s, step.map(|st| (st.vertex, st.color)), class));
            }
            Some(rows)
        }
        None => None,
    };
    if json {
        let layer = |v: &[Vec<BigInt>], d: &[BigInt]| -> Vec<Value> {
            v.iter()
                .zip(d)
                .map(|(r, x)| json!({ "root": vector_value(r), "defect": int_value(x) }))
                .collect()
        };
        let mut v = json!({
            "null_root": vector_value(ctx.null_root()),
            "period": ctx.coxeter_period(),
            "defect_functional": vector_value(ctx.defect_functional()),
            "k": k,
            "preprojectives": layer(&sets.p_k, &dp),
            "preinjectives": layer(&sets.i_k, &di),
        });
        if let Some(rows) = &regions {
            v["regions"] = rows
                .iter()
                .map(|(s, step, c)| {
                    json!({
                        "step": s,
                        "vertex": step.map(|x| x.0),
                        "color": step.map(|x| x.1.to_string()),
                        "in_v": c.in_v,
                        "in_w": c.in_w,
                        "region": c.label(),
                    })
                })
                .collect();
        }
        return Ok(json_out(v));
    }
    let mut out = format!(
        "eta={} period={} defect={}\n",
        vec_str(ctx.null_root()),
        ctx.coxeter_period(),
        vec_str(ctx.defect_functional())
    );
    for (r, d) in sets.p_k.iter().zip(&dp) {
        let _ = writeln!(out, "P root={} defect={d}", vec_str(r));
    }
    for (r, d) in sets.i_k.iter().zip(&di) {
        let _ = writeln!(out, "I root={} defect={d}", vec_str(r));
    }
    for (s, step, c) in regions.iter().flatten() {
        match step {
            Some((v, color)) => {
                let _ = writeln!(
                    out,
                    "step={s} vertex={v} color={color} region={}",
                    c.label()
                );
            }
            None => {
                let _ = writeln!(out, "step={s} region={}", c.label());
            }
        }
    }
    Ok(out)
}
