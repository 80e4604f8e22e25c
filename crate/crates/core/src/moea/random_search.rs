use crate::error::Result;
use crate::pareto::non_dominated_indices;
use crate::population::{Individual, Population};
use crate::problems::Problem;

use super::sorting::crowding_distance;
use super::{stream_rng, EvolutionConfig, RngStream, RunOutput};

/// Keeps the non-dominated members, truncated to `size` by crowding.
fn update_archive(pool: Vec<Individual<f64>>, size: usize) -> Vec<Individual<f64>> {
    let points: Vec<_> = pool.iter().map(|i| i.objectives().clone()).collect();
    let keep = non_dominated_indices(&points);
    let mut slots: Vec<Option<Individual<f64>>> = pool.into_iter().map(Some).collect();
    let mut archive: Vec<Individual<f64>> = keep
        .into_iter()
        .map(|i| slots[i].take().expect("unique index"))
        .collect();
    if archive.len() > size {
        let objs: Vec<&[f64]> = archive.iter().map(|i| i.objectives().values()).collect();
        let dist = crowding_distance(&objs);
        let mut order: Vec<usize> = (0..archive.len()).collect();
        order.sort_by(|&a, &b| {
            dist[b]
                .partial_cmp(&dist[a])
                .expect("crowding is never NaN")
                .then(a.cmp(&b))
        });
        order.truncate(size);
        order.sort_unstable();
        let mut slots: Vec<Option<Individual<f64>>> = archive.into_iter().map(Some).collect();
        archive = order
            .into_iter()
            .map(|i| slots[i].take().expect("unique index"))
            .collect();
    }
    archive
}

/// Uniform random sampling with a bounded non-dominated archive.
///
/// Samples `pop_size` points per generation; snapshot accounting matches
/// [`super::nsga2_run`].
pub fn random_search_run(problem: &Problem, cfg: &EvolutionConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let mut rng = stream_rng(cfg.seed, RngStream::Sampling);
    let mut archive: Vec<Individual<f64>> = Vec::new();
    let mut snapshots = Vec::with_capacity(cfg.generations());
    let mut evaluations = 0;
    while snapshots.len() < cfg.generations() {
        for _ in 0..cfg.pop_size {
            archive.push(problem.individual(problem.random_decision(&mut rng), false)?);
        }
        evaluations += cfg.pop_size;
        archive = update_archive(archive, cfg.pop_size);
        snapshots.push(Population::new(archive.clone())?.with_problem(problem.name()));
    }
    Ok(RunOutput {
        final_population: snapshots.last().expect("at least one snapshot").clone(),
        snapshots,
        evaluations,
    })
}
