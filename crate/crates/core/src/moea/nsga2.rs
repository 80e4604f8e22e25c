use rand::Rng;

use crate::error::Result;
use crate::population::{Individual, Population};
use crate::problems::Problem;

use super::operators::{polynomial_mutation, sbx_crossover};
use super::sorting::{crowding_distance, fast_nondominated_sort};
use super::{stream_rng, EvolutionConfig, RngStream, RunOutput};

/// Rank and crowding distance of every member.
struct Fitness {
    rank: Vec<usize>,
    crowding: Vec<f64>,
}

fn fitness(members: &[Individual<f64>]) -> Fitness {
    let objs: Vec<&[f64]> = members.iter().map(|i| i.objectives().values()).collect();
    let points: Vec<_> = members.iter().map(|i| i.objectives().clone()).collect();
    let mut rank = vec![0; members.len()];
    let mut crowding = vec![0.0; members.len()];
    for (r, front) in fast_nondominated_sort(&points).into_iter().enumerate() {
        let sub: Vec<&[f64]> = front.iter().map(|&i| objs[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&sub)) {
            rank[i] = r;
            crowding[i] = d;
        }
    }
    Fitness { rank, crowding }
}

fn better(f: &Fitness, a: usize, b: usize) -> bool {
    f.rank[a] < f.rank[b] || (f.rank[a] == f.rank[b] && f.crowding[a] > f.crowding[b])
}

fn tournament<R: Rng>(f: &Fitness, rng: &mut R) -> usize {
    let k = f.rank.len();
    let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
    if better(f, a, b) {
        a
    } else if better(f, b, a) {
        b
    } else if rng.random::<bool>() {
        a
    } else {
        b
    }
}

/// Elitist survivor selection: whole fronts first, the split front by
/// descending crowding distance.
fn environmental_selection(combined: Vec<Individual<f64>>, size: usize) -> Vec<Individual<f64>> {
    let points: Vec<_> = combined.iter().map(|i| i.objectives().clone()).collect();
    let mut chosen = Vec::with_capacity(size);
    for front in fast_nondominated_sort(&points) {
        if chosen.len() + front.len() <= size {
            chosen.extend(front);
            if chosen.len() == size {
                break;
            }
            continue;
        }
        let sub: Vec<&[f64]> = front.iter().map(|&i| points[i].values()).collect();
        let dist = crowding_distance(&sub);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| {
            dist[b]
                .partial_cmp(&dist[a])
                .expect("crowding is never NaN")
                .then(a.cmp(&b))
        });
        let need = size - chosen.len();
        chosen.extend(order.into_iter().take(need).map(|i| front[i]));
        break;
    }
    let mut slots: Vec<Option<Individual<f64>>> = combined.into_iter().map(Some).collect();
    chosen
        .into_iter()
        .map(|i| slots[i].take().expect("each index chosen once"))
        .collect()
}

fn snapshot(problem: &Problem, members: &[Individual<f64>]) -> Result<Population<f64>> {
    Ok(Population::new(members.to_vec())?.with_problem(problem.name()))
}

/// NSGA-II with binary tournament, SBX and polynomial mutation.
///
/// Emits one snapshot for the initial population and one per generation,
/// `ceil(max_evaluations / pop_size)` in total. Identical seeds reproduce
/// identical runs.
pub fn nsga2_run(problem: &Problem, cfg: &EvolutionConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let mut init_rng = stream_rng(cfg.seed, RngStream::Initialization);
    let mut select_rng = stream_rng(cfg.seed, RngStream::Selection);
    let mut cross_rng = stream_rng(cfg.seed, RngStream::Crossover);
    let mut mutate_rng = stream_rng(cfg.seed, RngStream::Mutation);

    let mut pop: Vec<Individual<f64>> = (0..cfg.pop_size)
        .map(|_| problem.individual(problem.random_decision(&mut init_rng), false))
        .collect::<Result<_>>()?;
    let mut evaluations = cfg.pop_size;
    let mut snapshots = vec![snapshot(problem, &pop)?];

    while snapshots.len() < cfg.generations() {
        let fit = fitness(&pop);
        let mut offspring = Vec::with_capacity(cfg.pop_size);
        while offspring.len() < cfg.pop_size {
            let a = tournament(&fit, &mut select_rng);
            let b = tournament(&fit, &mut select_rng);
            let (pa, pb) = (
                pop[a].decision().expect("generated members carry decisions"),
                pop[b].decision().expect("generated members carry decisions"),
            );
            let (c1, c2) = sbx_crossover(pa, pb, cfg, &mut cross_rng)?;
            for child in [c1, c2] {
                let child = polynomial_mutation(&child, cfg, &mut mutate_rng)?;
                offspring.push(problem.individual(child, false)?);
            }
        }
        evaluations += offspring.len();
        pop.extend(offspring);
        pop = environmental_selection(pop, cfg.pop_size);
        snapshots.push(snapshot(problem, &pop)?);
    }

    Ok(RunOutput {
        final_population: snapshots.last().expect("at least one snapshot").clone(),
        snapshots,
        evaluations,
    })
}
