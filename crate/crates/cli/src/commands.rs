use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

use ctrl_iso::c2::{eval_formula, Assignment, C2Builder, DEFAULT_NODE_CAP};
use ctrl_iso::iso::decide_isomorphism;
use ctrl_iso::refine::{fractional_iso_witness, JointColoring};
use ctrl_iso::walk::{generalized_char_poly_at, graph_char_poly, is_controllable, walk_count};
use ctrl_iso::graph::GRAPH6_MAX_ORDER;
use ctrl_iso::{random_graph, Graph, IntPoly, VerdictKind};

use crate::input::{read_first, read_graphs};

/// Serialized result and exit status.
pub struct Outcome {
    pub json: Value,
    pub code: u8,
}

/// `{command, inputs, ...payload, timing_ms}`.
fn finish(command: &str, inputs: Vec<String>, payload: Value, start: Instant, code: u8) -> Outcome {
    let mut obj = Map::new();
    obj.insert("command".into(), command.into());
    obj.insert("inputs".into(), inputs.into());
    if let Value::Object(fields) = payload {
        obj.extend(fields);
    }
    obj.insert("timing_ms".into(), (start.elapsed().as_millis() as u64).into());
    Outcome {
        json: Value::Object(obj),
        code,
    }
}

fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

fn poly(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

pub fn iso(a: &Path, b: &Path, bruteforce_max: usize) -> Result<Outcome> {
    let start = Instant::now();
    let (ta, g) = read_first(a)?;
    let (tb, h) = read_first(b)?;
    let v = decide_isomorphism(&g, &h, bruteforce_max)?;
    let payload = json!({
        "kind": v.kind.as_str(),
        "reason": v.reason.as_str(),
        "certificate": v.certificate.as_ref().map(|p| p.image().to_vec()),
    });
    let code = if v.kind == VerdictKind::Inconclusive { 2 } else { 0 };
    Ok(finish("iso", vec![ta, tb], payload, start, code))
}

pub fn controllable(file: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let graphs = read_graphs(file)?;
    let results: Vec<Value> = graphs
        .iter()
        .map(|(text, g)| json!({"graph6": text, "controllable": is_controllable(g)}))
        .collect();
    let inputs = graphs.into_iter().map(|(t, _)| t).collect();
    Ok(finish("controllable", inputs, json!({ "results": results }), start, 0))
}

pub fn spectrum(file: &Path, complement: bool, generalized: bool) -> Result<Outcome> {
    let start = Instant::now();
    let graphs = read_graphs(file)?;
    let one = BigRational::from_integer(1.into());
    let results: Vec<Value> = graphs
        .iter()
        .map(|(text, g)| {
            let mut entry = Map::new();
            entry.insert("graph6".into(), text.as_str().into());
            entry.insert("char_poly".into(), poly(&graph_char_poly(g)));
            if complement {
                entry.insert("complement_char_poly".into(), poly(&graph_char_poly(&g.complement())));
            }
            if generalized {
                let p = generalized_char_poly_at(g, &one).to_int().expect("integral at s = 1");
                entry.insert("generalized_char_poly".into(), poly(&p));
            }
            Value::Object(entry)
        })
        .collect();
    let inputs = graphs.into_iter().map(|(t, _)| t).collect();
    Ok(finish("spectrum", inputs, json!({ "results": results }), start, 0))
}

pub fn refine(a: &Path, b: &Path, witness: bool) -> Result<Outcome> {
    let start = Instant::now();
    let (ta, g) = read_first(a)?;
    let (tb, h) = read_first(b)?;
    let mut payload = Map::new();
    if g.order() != h.order() {
        payload.insert("equivalent".into(), false.into());
    } else {
        let joint = JointColoring::new(&g, &h);
        let (left, right) = joint.class_counts();
        payload.insert("equivalent".into(), joint.balanced().into());
        payload.insert("classes".into(), json!([left, right]));
        if witness {
            let s = fractional_iso_witness(&g, &h)?.map(|s| {
                (0..s.rows())
                    .map(|i| {
                        s.row(i)
                            .iter()
                            .map(|x| format!("{}/{}", x.numer(), x.denom()))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            });
            payload.insert("witness".into(), json!(s));
        }
    }
    Ok(finish("refine", vec![ta, tb], Value::Object(payload), start, 0))
}

pub fn c2_emit(q: u64, r: u32, degree_bound: u64) -> Result<Outcome> {
    let start = Instant::now();
    let mut builder = C2Builder::new(degree_bound);
    let phi = builder.phi(q, r)?;
    let payload = json!({
        "q": q,
        "r": r,
        "degree_bound": degree_bound,
        "dag_size": phi.dag_size(),
        "formula": phi.to_text(DEFAULT_NODE_CAP)?,
    });
    Ok(finish("c2 emit", vec![], payload, start, 0))
}

pub fn c2_check(q: u64, r: u32, degree_bound: u64, file: Option<&Path>) -> Result<Outcome> {
    let start = Instant::now();
    let graphs = read_graphs(file.unwrap_or(Path::new("-")))?;
    let mut builder = C2Builder::new(degree_bound);
    let phi = builder.phi(q, r)?;
    let mut all_hold = true;
    let mut all_match = true;
    let mut results = Vec::new();
    for (text, g) in &graphs {
        let holds = eval_formula(g, &phi, Assignment::empty())?;
        let count = walk_count(g, r as usize);
        let matches = holds == (count == BigInt::from(q));
        all_hold &= holds;
        all_match &= matches;
        results.push(json!({
            "graph6": text,
            "holds": holds,
            "walk_count": big(&count),
            "match": matches,
            "within_degree_bound": g.max_degree() as u64 <= degree_bound,
        }));
    }
    let payload = json!({
        "q": q,
        "r": r,
        "degree_bound": degree_bound,
        "holds": all_hold,
        "match": all_match,
        "results": results,
    });
    let inputs = graphs.into_iter().map(|(t, _)| t).collect();
    Ok(finish("c2 check", inputs, payload, start, 0))
}

pub fn survey(n: usize, samples: u64, seed: u64, threads: Option<usize>) -> Result<Outcome> {
    let start = Instant::now();
    if n == 0 || n > GRAPH6_MAX_ORDER {
        bail!("survey supports 1..={GRAPH6_MAX_ORDER} vertices, got {n}");
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = pool.build()?;
    // sample i uses seed + i, so the count does not depend on scheduling
    let count = pool.install(|| {
        (0..samples)
            .into_par_iter()
            .filter(|i| is_controllable(&sample(n, seed.wrapping_add(*i))))
            .count()
    });
    let fraction = if samples == 0 { 0.0 } else { count as f64 / samples as f64 };
    let payload = json!({
        "n": n,
        "samples": samples,
        "seed": seed,
        "controllable_count": count,
        "fraction": fraction,
    });
    Ok(finish("survey", vec![], payload, start, 0))
}

fn sample(n: usize, seed: u64) -> Graph {
    random_graph(n, seed).expect("order checked")
}
