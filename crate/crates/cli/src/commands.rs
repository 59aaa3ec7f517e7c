use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use upset_core::embedder::{
    grid_embed, search_embedding, verify_embedding, SearchOutcome, StraightLineEmbedding,
};
use upset_core::geometry::Point;
use upset_core::graphs::build_gadget;
use upset_core::io::{read_edge_list, read_points, write_gadget, write_points, EdgeList};
use upset_core::montecarlo::{run_trials_with, theorem1_experiment, McReport, SampleMode, TrialConfig};
use upset_core::permutations::{lds, lis, stirling_chain, theorem_threshold, union_bound, Permutation};
use upset_core::witness::{certify_nonuniversal, monotone_profile, monotone_witness};
use upset_core::{Error, Execution};

use crate::args::*;
use crate::output::Output;

const EXIT_UNKNOWN: u8 = 2;

pub fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Gadget(a) => gadget(a),
        Command::GridEmbed(a) => grid(a),
        Command::EmbedCheck(a) => embed_check(a),
        Command::Witness(a) => witness(a),
        Command::Certify(a) => certify(a),
        Command::Lis(a) => lis_cmd(a),
        Command::Bound(a) => bound(a),
        Command::Chain(a) => chain(a),
        Command::Mc(a) => mc(a),
        Command::Thm1(a) => thm1(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<EdgeList> {
    Ok(read_edge_list(&read(path)?)?)
}

fn load_points(path: &Path) -> Result<Vec<Point>> {
    Ok(read_points(&read(path)?)?.1)
}

fn placement_json(points: &[Point]) -> Value {
    points
        .iter()
        .enumerate()
        .map(|(v, p)| json!([v, p.x, p.y]))
        .collect()
}

fn gadget(a: &GadgetArgs) -> Result<Output> {
    let g = build_gadget(a.n)?;
    let text = write_gadget(&g);
    let Some(path) = &a.output else {
        return Ok(Output::text(text));
    };
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(Output::json(json!({
        "n": a.n,
        "k": g.k(),
        "cycles": g.cycle_count(),
        "edges": g.graph().edge_count(),
        "output": path,
    })))
}

fn grid(a: &GridEmbedArgs) -> Result<Output> {
    let graph = load_graph(&a.graph)?.graph;
    let e = grid_embed(&graph)?;
    if let Some(path) = &a.output {
        fs::write(path, write_points(e.placement()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let n = graph.n() as i64;
    Ok(Output::json(json!({
        "n": graph.n(),
        "grid": [2 * n - 4, n - 2],
        "verified": verify_embedding(&e),
        "placement": placement_json(e.placement()),
        "output": a.output,
    })))
}

fn embed_check(a: &EmbedCheckArgs) -> Result<Output> {
    let graph = load_graph(&a.graph)?.graph;
    let points = load_points(&a.points)?;
    let r = search_embedding(&graph, &points, a.budget);
    let (result, placement, code) = match &r.outcome {
        SearchOutcome::Found(e) => ("yes", placement_json(e.placement()), 0),
        SearchOutcome::NoEmbedding => ("no", Value::Null, 0),
        SearchOutcome::BudgetExceeded => ("unknown", Value::Null, EXIT_UNKNOWN),
    };
    Ok(Output::json(json!({
        "result": result,
        "placement": placement,
        "nodes_expanded": r.nodes_expanded,
        "budget": a.budget,
    }))
    .with_exit_code(code))
}

/// Parse `placement: [[v, x, y], ...]` into a vertex-indexed point list.
fn parse_placement(v: &Value, n: usize) -> Result<Vec<Point>> {
    let rows = v
        .get("placement")
        .and_then(Value::as_array)
        .context("placement file has no `placement` array")?;
    let mut out: Vec<Option<Point>> = vec![None; n];
    for row in rows {
        let triple = row
            .as_array()
            .filter(|r| r.len() == 3)
            .and_then(|r| Some((r[0].as_u64()? as usize, r[1].as_i64()?, r[2].as_i64()?)));
        let Some((vertex, x, y)) = triple else {
            bail!(Error::Precondition(format!("malformed placement entry {row}")));
        };
        if vertex >= n || out[vertex].is_some() {
            bail!(Error::Precondition(format!(
                "placement vertex {vertex} out of range or repeated"
            )));
        }
        out[vertex] = Some(Point::new(x, y));
    }
    out.into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Error::Precondition(format!("vertex {v} is not placed")).into()))
        .collect()
}

fn witness(a: &WitnessArgs) -> Result<Output> {
    let list = load_graph(&a.graph)?;
    let gadget = list.gadget()?;
    let points = load_points(&a.points)?;
    let doc: Value = serde_json::from_str(&read(&a.placement)?)?;
    let placement = parse_placement(&doc, gadget.graph().n())?;
    if let Some(p) = placement.iter().find(|p| !points.contains(p)) {
        bail!(Error::Precondition(format!(
            "placed point ({}, {}) is not in the point set",
            p.x, p.y
        )));
    }
    let e = StraightLineEmbedding::new(gadget.graph().clone(), placement);
    let w = monotone_witness(&gadget, &e)?;
    let n = gadget.graph().n();
    Ok(Output::json(json!({
        "n": n,
        "required": n / 12,
        "size": w.len(),
        "witness": w,
    })))
}

fn certify(a: &CertifyArgs) -> Result<Output> {
    let points = load_points(&a.points)?;
    let cert = certify_nonuniversal(&points, a.n)?;
    let profile = monotone_profile(&points)?;
    Ok(Output::json(json!({
        "certified": cert.is_some(),
        "n": a.n,
        "m": points.len(),
        "ell": a.n / 12,
        "lis": profile.lis,
        "lds": profile.lds,
    })))
}

fn lis_cmd(a: &LisArgs) -> Result<Output> {
    let values = a
        .perm
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Precondition(format!("not a positive integer: {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = Permutation::new(values)?;
    let (i, d) = (lis(&p), lds(&p));
    Ok(Output::json(
        json!({ "m": p.len(), "lis": i, "lds": d, "longest": i.max(d) }),
    ))
}

fn bound(a: &BoundArgs) -> Result<Output> {
    let t = theorem_threshold(a.n)?;
    Ok(Output::json(json!({
        "n": t.n,
        "ell": t.n / 12,
        "m_max": t.m_max,
        "m_max_candidates": t.m_max_candidates,
        "boundary_flag": t.boundary_flag,
        "tail": t.tail,
        "tail_log2": t.tail_log2,
    })))
}

fn chain(a: &ChainArgs) -> Result<Output> {
    let report = stirling_chain(a.m, a.ell)?;
    let exact = union_bound(a.m, a.ell)?;
    let mut v = serde_json::to_value(report)?;
    v["union_exact"] = json!({
        "uncapped": exact.uncapped.to_string(),
        "capped": exact.capped.to_string(),
    });
    Ok(Output::json(v))
}

fn execution(requested: Option<usize>) -> Result<Execution> {
    let workers = match std::env::var("UPSET_WORKERS") {
        Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
            Error::Precondition(format!("UPSET_WORKERS must be a positive integer, got {s:?}"))
        })?),
        Err(_) => requested,
    };
    Ok(match workers {
        Some(0) => bail!(Error::Precondition("worker count must be at least 1".into())),
        Some(1) => Execution::Sequential,
        w => Execution::Parallel { workers: w },
    })
}

const CSV_HEADER: &str =
    "n,m,ell,trials,master_seed,mode,hits,empirical_p,wilson_lo,wilson_hi,union_bound,claim3_bound,tail_bound,vacuous,certificate_rate,mean_max_monotone";

fn csv_row(r: &McReport) -> String {
    let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
    let mode = match r.config.mode {
        SampleMode::Points => "points",
        SampleMode::Permutation => "perm",
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.n.map(|n| n.to_string()).unwrap_or_default(),
        r.config.m,
        r.config.ell,
        r.trials,
        r.config.master_seed,
        mode,
        r.hits,
        r.empirical_p,
        r.wilson95[0],
        r.wilson95[1],
        opt(Some(r.bounds.union)),
        opt(r.bounds.claim3),
        opt(r.bounds.tail),
        r.vacuous,
        r.certificate_rate,
        r.mean_max_monotone,
    )
}

fn report_output(r: &McReport, sweep: &Sweep) -> Result<Output> {
    if sweep.csv {
        return Ok(Output::text(format!("{CSV_HEADER}\n{}", csv_row(r))));
    }
    Ok(Output::json(serde_json::to_value(r)?))
}

fn mc(a: &McArgs) -> Result<Output> {
    let cfg = TrialConfig {
        m: a.m,
        ell: a.ell,
        trials: a.trials,
        master_seed: a.seed,
        mode: match a.mode {
            Mode::Points => SampleMode::Points,
            Mode::Perm => SampleMode::Permutation,
        },
    };
    let r = run_trials_with(&cfg, execution(a.sweep.workers)?)?;
    report_output(&r, &a.sweep)
}

fn thm1(a: &Thm1Args) -> Result<Output> {
    let r = theorem1_experiment(a.n, a.trials, a.seed, a.m, execution(a.sweep.workers)?)?;
    report_output(&r, &a.sweep)
}
