//! The cross-entropy iteration loop.
//!
//! Each iteration draws `samples` minimal sets from the current probability
//! vector, keeps the `elite` smallest, turns them into a score-weighted
//! inclusion vector and blends it into the running vector. The run stops once
//! `stagnation_limit` consecutive iterations fail to strictly improve the best
//! set found so far.
//!
//! Randomness: sample `i` of iteration `t` uses a ChaCha8 stream keyed by the
//! run seed with stream id `(t << 32) | i`, so results do not depend on thread
//! scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::graph::{Graph, NeighborhoodTables};
use crate::sampler::{ProbabilityVector, Sampler, ScoredSet};
use crate::variants::VariantKind;

/// Initial value of every probability entry.
pub const INITIAL_PROBABILITY: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CeParams {
    /// Sets generated per iteration (N).
    pub samples: usize,
    /// Elite set size (M).
    pub elite: usize,
    /// Weighting parameter: the best elite set gets weight `rho`, a set
    /// twice as large `rho^2`, and so on.
    pub rho: f64,
    /// Smoothing weight of the new elite vector.
    pub alpha: f64,
    /// Consecutive non-improving iterations before stopping (r).
    pub stagnation_limit: usize,
    pub max_iterations: usize,
}

impl Default for CeParams {
    fn default() -> Self {
        Self {
            samples: 100,
            elite: 10,
            rho: 0.01,
            alpha: 0.2,
            stagnation_limit: 20,
            max_iterations: 10_000,
        }
    }
}

impl CeParams {
    pub fn validate(&self) -> Result<(), SolveError> {
        let fail = |msg: String| Err(SolveError::InvalidParams(msg));
        if self.elite == 0 || self.elite > self.samples {
            return fail(format!(
                "need 1 <= M <= N, got M = {}, N = {}",
                self.elite, self.samples
            ));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return fail(format!("rho must lie in (0, 1), got {}", self.rho));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return fail(format!("alpha must lie in (0, 1], got {}", self.alpha));
        }
        if self.stagnation_limit == 0 {
            return fail("r must be at least 1".into());
        }
        if self.max_iterations == 0 {
            return fail("max_iterations must be at least 1".into());
        }
        Ok(())
    }
}

/// Score-weighted inclusion frequencies over the elite sets.
///
/// With `L_min` the smallest elite score and `δ = L_min / ln(1/ρ)`, set `S`
/// gets weight `exp(-|S| / δ) = ρ^(|S| / L_min)`, and entry `i` is the
/// weight fraction of elite sets containing `i`. Entries lie in `[0, 1]` and
/// are not renormalized.
pub fn compute_pstar(elite: &[ScoredSet], rho: f64, n: usize) -> ProbabilityVector {
    assert!(!elite.is_empty(), "elite set is empty");
    let min_score = elite.iter().map(ScoredSet::score).min().unwrap();
    assert!(min_score >= 1, "elite scores must be positive");
    let delta = min_score as f64 / (1.0 / rho).ln();

    let mut numer = vec![0.0; n];
    let mut denom = 0.0;
    for set in elite {
        let w = (-(set.score() as f64) / delta).exp();
        denom += w;
        for &v in &set.members {
            numer[v] += w;
        }
    }
    ProbabilityVector::from_unchecked(numer.into_iter().map(|x| (x / denom).min(1.0)).collect())
}

/// `alpha * pstar + (1 - alpha) * current`, elementwise.
pub fn blend(
    pstar: &ProbabilityVector,
    current: &ProbabilityVector,
    alpha: f64,
) -> Result<ProbabilityVector, SolveError> {
    if pstar.len() != current.len() {
        return Err(SolveError::LengthMismatch {
            expected: current.len(),
            got: pstar.len(),
        });
    }
    let mixed = pstar
        .as_slice()
        .iter()
        .zip(current.as_slice())
        .map(|(&a, &b)| (alpha * a + (1.0 - alpha) * b).clamp(0.0, 1.0))
        .collect();
    Ok(ProbabilityVector::from_unchecked(mixed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Smallest set drawn in this iteration.
    pub iteration_best: usize,
    /// Smallest set drawn so far.
    pub global_best: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub best: ScoredSet,
    /// Iterations completed at termination.
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
}

impl RunResult {
    pub fn best_score(&self) -> usize {
        self.best.score()
    }
}

/// Independent runs over a seed list, with the index of the winner.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiRunResult {
    pub runs: Vec<RunResult>,
    pub best_index: usize,
}

impl MultiRunResult {
    pub fn best(&self) -> &RunResult {
        &self.runs[self.best_index]
    }
}

/// Index of the run with the smallest best set; the earliest wins ties.
pub fn select_best(runs: &[RunResult]) -> Option<usize> {
    runs.iter()
        .enumerate()
        .min_by_key(|(i, run)| (run.best_score(), *i))
        .map(|(i, _)| i)
}

/// RNG for sample `index` of iteration `iteration` in the run keyed by `seed`.
pub fn sample_rng(seed: u64, iteration: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((iteration as u64) << 32) | index as u64);
    rng
}

/// One cross-entropy run.
pub fn ce_run(
    graph: &Graph,
    tables: &NeighborhoodTables,
    kind: VariantKind,
    params: &CeParams,
    seed: u64,
) -> Result<RunResult, SolveError> {
    params.validate()?;
    kind.check_feasible(graph)?;
    let n = graph.vertex_count();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }

    let mut probabilities = ProbabilityVector::uniform(n, INITIAL_PROBABILITY);
    let mut best: Option<ScoredSet> = None;
    let mut stagnant = 0;
    let mut trace = Vec::new();
    let mut iteration = 0;

    loop {
        let mut samples = draw_samples(
            graph,
            tables,
            kind,
            &probabilities,
            params.samples,
            seed,
            iteration,
        )?;
        // Stable sort: equal scores keep generation order.
        samples.sort_by_key(ScoredSet::score);
        samples.truncate(params.elite);

        let iteration_best = samples[0].score();
        match &best {
            Some(b) if iteration_best >= b.score() => stagnant += 1,
            _ => {
                best = Some(samples[0].clone());
                stagnant = 0;
            }
        }
        let global_best = best.as_ref().map_or(usize::MAX, ScoredSet::score);
        trace.push(IterationRecord {
            iteration,
            iteration_best,
            global_best,
        });

        let pstar = compute_pstar(&samples, params.rho, n);
        probabilities = blend(&pstar, &probabilities, params.alpha)?;
        iteration += 1;

        if stagnant >= params.stagnation_limit || iteration >= params.max_iterations {
            break;
        }
    }

    Ok(RunResult {
        seed,
        best: best.expect("at least one iteration ran"),
        iterations: iteration,
        trace,
    })
}

/// Runs [`ce_run`] once per seed and keeps every outcome.
pub fn ce_multi(
    graph: &Graph,
    tables: &NeighborhoodTables,
    kind: VariantKind,
    params: &CeParams,
    seeds: &[u64],
) -> Result<MultiRunResult, SolveError> {
    if seeds.is_empty() {
        return Err(SolveError::NoSeeds);
    }
    let runs = run_each(seeds, |seed| ce_run(graph, tables, kind, params, seed))?;
    let best_index = select_best(&runs).unwrap();
    Ok(MultiRunResult { runs, best_index })
}

#[cfg(feature = "parallel")]
fn run_each<F>(seeds: &[u64], run: F) -> Result<Vec<RunResult>, SolveError>
where
    F: Fn(u64) -> Result<RunResult, SolveError> + Sync,
{
    use rayon::prelude::*;
    seeds.par_iter().map(|&s| run(s)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_each<F>(seeds: &[u64], run: F) -> Result<Vec<RunResult>, SolveError>
where
    F: Fn(u64) -> Result<RunResult, SolveError>,
{
    seeds.iter().map(|&s| run(s)).collect()
}

#[cfg(feature = "parallel")]
fn draw_samples(
    graph: &Graph,
    tables: &NeighborhoodTables,
    kind: VariantKind,
    probabilities: &ProbabilityVector,
    count: usize,
    seed: u64,
    iteration: usize,
) -> Result<Vec<ScoredSet>, SolveError> {
    use rayon::prelude::*;
    let template = Sampler::new(graph, tables, kind)?;
    Ok((0..count)
        .into_par_iter()
        .map_init(
            || template.clone(),
            |sampler, i| sampler.sample(probabilities, &mut sample_rng(seed, iteration, i)),
        )
        .collect())
}

#[cfg(not(feature = "parallel"))]
fn draw_samples(
    graph: &Graph,
    tables: &NeighborhoodTables,
    kind: VariantKind,
    probabilities: &ProbabilityVector,
    count: usize,
    seed: u64,
    iteration: usize,
) -> Result<Vec<ScoredSet>, SolveError> {
    let mut sampler = Sampler::new(graph, tables, kind)?;
    Ok((0..count)
        .map(|i| sampler.sample(probabilities, &mut sample_rng(seed, iteration, i)))
        .collect())
}
