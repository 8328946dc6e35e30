//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document, so the page needs no generated glue types.

use std::f64::consts::TAU;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use domce_core::exact::{exact_min, ExactOutcome};
use domce_core::generators::InstanceSpec;
use domce_core::harness::InstanceSource;
use domce_core::{ce_run, CeParams, CriterionState, Graph, NeighborhoodTables, VariantKind};

/// Largest instance the exact search is offered for.
pub const EXACT_MAX_VERTICES: usize = 40;
const EXACT_BUDGET: u64 = 20_000_000;

#[derive(Serialize)]
struct Layout {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Positions in the unit square.
    coords: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct Solution {
    layout: Layout,
    variant: VariantKind,
    set: Vec<usize>,
    score: usize,
    iterations: usize,
    /// Global best after each iteration.
    trace: Vec<usize>,
}

#[derive(Serialize)]
struct SetCheck {
    satisfied: bool,
    size: usize,
    deficiency: usize,
    deficient: Vec<usize>,
}

#[derive(Serialize)]
struct ExactReport {
    optimum: Option<usize>,
    set: Vec<usize>,
    lower_bound: usize,
    explored: u64,
}

struct Instance {
    name: String,
    graph: Graph,
    coords: Vec<(f64, f64)>,
}

fn load(spec: &str) -> Result<Instance, String> {
    let spec = spec.trim();
    if spec.starts_with("bundled:") {
        let source: InstanceSource = spec.parse().map_err(|e| chain(&e))?;
        let loaded = source.load().map_err(|e| chain(&e))?;
        let coords = circle(loaded.graph.vertex_count());
        return Ok(Instance {
            name: loaded.name,
            graph: loaded.graph,
            coords,
        });
    }
    let parsed: InstanceSpec = spec.parse().map_err(|e| chain(&e))?;
    let built = parsed.build().map_err(|e| chain(&e))?;
    let n = built.graph.vertex_count();
    let coords = match (&parsed, built.points) {
        (InstanceSpec::Grid { rows, cols }, _) => grid_layout(*rows, *cols),
        (InstanceSpec::FlowerSnark { k }, _) => snark_layout(*k),
        (InstanceSpec::UnitDisk { width, height, .. }, Some(points)) => {
            let scale = width.max(*height);
            points
                .iter()
                .map(|&(x, y)| (x / scale, y / scale))
                .collect()
        }
        _ => circle(n),
    };
    Ok(Instance {
        name: built.name,
        graph: built.graph,
        coords,
    })
}

fn grid_layout(rows: usize, cols: usize) -> Vec<(f64, f64)> {
    let span = rows.max(cols).max(2) as f64 - 1.0;
    (0..rows * cols)
        .map(|id| ((id % cols) as f64 / span, (id / cols) as f64 / span))
        .collect()
}

fn ring(count: usize, radius: f64, offset: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..count).map(move |i| {
        let angle = TAU * (i as f64 + offset) / count as f64;
        (0.5 + radius * angle.cos(), 0.5 + radius * angle.sin())
    })
}

fn circle(n: usize) -> Vec<(f64, f64)> {
    ring(n, 0.45, 0.0).collect()
}

/// Hubs on the innermost ring, the B-cycle next, the C/D cycles outside.
fn snark_layout(k: usize) -> Vec<(f64, f64)> {
    let mut coords: Vec<_> = ring(k, 0.18, 0.0).collect();
    coords.extend(ring(k, 0.3, 0.0));
    coords.extend(ring(k, 0.43, -0.2));
    coords.extend(ring(k, 0.43, 0.2));
    coords
}

fn layout(instance: &Instance) -> Layout {
    Layout {
        name: instance.name.clone(),
        n: instance.graph.vertex_count(),
        edges: instance.graph.edges().collect(),
        coords: instance.coords.clone(),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, JsValue> {
    serde_json::to_string(value).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// An error and its causes, joined with ": ".
fn chain(err: &dyn std::error::Error) -> String {
    let mut text = err.to_string();
    let mut cause = err.source();
    while let Some(c) = cause {
        text.push_str(": ");
        text.push_str(&c.to_string());
        cause = c.source();
    }
    text
}

fn js_err(message: String) -> JsValue {
    JsValue::from_str(&message)
}

fn variant(text: &str) -> Result<VariantKind, JsValue> {
    text.parse().map_err(js_err)
}

/// Vertex positions and edges for drawing, without solving.
#[wasm_bindgen]
pub fn describe(spec: &str) -> Result<String, JsValue> {
    let instance = load(spec).map_err(js_err)?;
    to_json(&layout(&instance))
}

/// One cross-entropy run with the given parameters.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn solve(
    spec: &str,
    variant_name: &str,
    seed: u32,
    samples: usize,
    elite: usize,
    rho: f64,
    alpha: f64,
    stagnation_limit: usize,
) -> Result<String, JsValue> {
    let instance = load(spec).map_err(js_err)?;
    let kind = variant(variant_name)?;
    let params = CeParams {
        samples,
        elite,
        rho,
        alpha,
        stagnation_limit,
        ..CeParams::default()
    };
    let tables = NeighborhoodTables::new(&instance.graph);
    let run = ce_run(&instance.graph, &tables, kind, &params, u64::from(seed))
        .map_err(|e| js_err(chain(&e)))?;
    to_json(&Solution {
        layout: layout(&instance),
        variant: kind,
        score: run.best_score(),
        iterations: run.iterations,
        trace: run.trace.iter().map(|r| r.global_best).collect(),
        set: run.best.members,
    })
}

/// Criterion status of a hand-picked vertex set.
#[wasm_bindgen]
pub fn check_set(spec: &str, variant_name: &str, set: Vec<u32>) -> Result<String, JsValue> {
    let instance = load(spec).map_err(js_err)?;
    let kind = variant(variant_name)?;
    let n = instance.graph.vertex_count();
    let mut members: Vec<usize> = set.into_iter().map(|v| v as usize).collect();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&v| v >= n) {
        return Err(js_err(format!(
            "vertex {bad} out of range for {n} vertices"
        )));
    }
    let tables = NeighborhoodTables::new(&instance.graph);
    let state = CriterionState::with_set(&instance.graph, &tables, kind, &members)
        .map_err(|e| js_err(chain(&e)))?;
    to_json(&SetCheck {
        satisfied: state.is_satisfied(),
        size: state.set_size(),
        deficiency: state.deficiency(),
        deficient: (0..n).filter(|&v| state.is_deficient(v)).collect(),
    })
}

/// Exhaustive minimum for instances of at most [`EXACT_MAX_VERTICES`] vertices.
#[wasm_bindgen]
pub fn exact(spec: &str, variant_name: &str) -> Result<String, JsValue> {
    let instance = load(spec).map_err(js_err)?;
    let kind = variant(variant_name)?;
    let n = instance.graph.vertex_count();
    if n > EXACT_MAX_VERTICES {
        return Err(js_err(format!(
            "exact search is limited to {EXACT_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let outcome = exact_min(&instance.graph, kind, EXACT_BUDGET).map_err(|e| js_err(chain(&e)))?;
    let report = match outcome {
        ExactOutcome::Optimal(r) => ExactReport {
            optimum: Some(r.optimum),
            lower_bound: r.optimum,
            set: r.witness,
            explored: r.explored,
        },
        ExactOutcome::Unknown {
            proven_lower_bound,
            upper_bound,
            explored,
        } => ExactReport {
            optimum: None,
            set: upper_bound.members,
            lower_bound: proven_lower_bound,
            explored,
        },
    };
    to_json(&report)
}
