//! Grey-wolf position updates: the standard three-leader iteration and the
//! four-leader variant that averages the leader distance vectors.
//!
//! Both step functions are pure over the incoming population and consume RNG
//! draws in a fixed order: per agent, per leader (alpha, beta, delta, then
//! gamma when present), per dimension, one draw for the `A` component
//! followed by one for the `C` component.

use crate::optimizer::{
    Agent, EvalPhase, Objective, OptimizeError, OptimizerStrategy, SearchSpace,
};
use crate::rng::RandomSource;

/// Leading wolves of the current population, ordered by fitness. `gamma` is
/// present only for the four-leader variant.
#[derive(Debug, Clone)]
pub struct WolfLeaders {
    pub alpha: Agent,
    pub beta: Agent,
    pub delta: Agent,
    pub gamma: Option<Agent>,
}

impl WolfLeaders {
    /// Snapshot the best three (or four) agents by fitness, ties broken by
    /// the lower population index.
    pub fn select(population: &[Agent], with_gamma: bool) -> Result<Self, OptimizeError> {
        let needed = if with_gamma { 4 } else { 3 };
        if population.len() < needed {
            return Err(OptimizeError::Config(format!(
                "leader selection needs at least {needed} agents (got {})",
                population.len()
            )));
        }
        let mut order: Vec<usize> = (0..population.len()).collect();
        // Stable sort keeps the lower index first on fitness ties.
        order.sort_by(|&a, &b| population[a].fitness.total_cmp(&population[b].fitness));
        Ok(Self {
            alpha: population[order[0]].clone(),
            beta: population[order[1]].clone(),
            delta: population[order[2]].clone(),
            gamma: with_gamma.then(|| population[order[3]].clone()),
        })
    }
}

/// Convergence factor `a` for the zero-based `iteration`: 2 at the first
/// iteration, decreasing linearly toward 0 as `iteration` approaches
/// `max_iterations`.
pub fn convergence_factor(iteration: usize, max_iterations: usize) -> f64 {
    2.0 * (1.0 - iteration as f64 / max_iterations as f64)
}

/// Per-leader coefficient vectors. Each `a_coef` component lies in `[-a, a]`
/// and each `c_coef` component in `[0, 2]`.
#[derive(Debug, Clone)]
pub struct LeaderCoefficients {
    pub a_coef: Vec<f64>,
    pub c_coef: Vec<f64>,
}

impl LeaderCoefficients {
    /// Draw one coefficient pair per dimension: `a_coef[d] = 2*a*r1 - a`,
    /// then `c_coef[d] = 2*r2`.
    pub fn draw(a: f64, dimension: usize, rng: &mut dyn RandomSource) -> Self {
        let mut a_coef = Vec::with_capacity(dimension);
        let mut c_coef = Vec::with_capacity(dimension);
        for _ in 0..dimension {
            let r1 = rng.unit();
            let r2 = rng.unit();
            a_coef.push(2.0 * a * r1 - a);
            c_coef.push(2.0 * r2);
        }
        Self { a_coef, c_coef }
    }
}

/// Component of the move toward one leader: the encircling distance
/// `|C*leader - x|` scaled by `A` and subtracted from the leader.
fn guided_component(leader: f64, coef: &LeaderCoefficients, d: usize, x: f64) -> f64 {
    let distance = (coef.c_coef[d] * leader - x).abs();
    leader - coef.a_coef[d] * distance
}

/// One standard grey-wolf iteration over the whole population.
///
/// Every agent (leaders included) moves to the clamped arithmetic mean of
/// the three leader-guided positions and is re-evaluated. `iteration` is the
/// zero-based index, used for diagnostics.
pub fn gwo_step(
    population: &[Agent],
    leaders: &WolfLeaders,
    a: f64,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut dyn RandomSource,
    iteration: usize,
) -> Result<Vec<Agent>, OptimizeError> {
    let dim = space.dimension();
    population
        .iter()
        .enumerate()
        .map(|(idx, agent)| {
            let toward_alpha = LeaderCoefficients::draw(a, dim, rng);
            let toward_beta = LeaderCoefficients::draw(a, dim, rng);
            let toward_delta = LeaderCoefficients::draw(a, dim, rng);
            let mut position = Vec::with_capacity(dim);
            for d in 0..dim {
                let x = agent.position[d];
                let x1 = guided_component(leaders.alpha.position[d], &toward_alpha, d, x);
                let x2 = guided_component(leaders.beta.position[d], &toward_beta, d, x);
                let x3 = guided_component(leaders.delta.position[d], &toward_delta, d, x);
                position.push(space.clamp((x1 + x2 + x3) / 3.0));
            }
            Agent::evaluated(
                position,
                objective,
                idx,
                EvalPhase::Iteration(iteration + 1),
            )
        })
        .collect()
}

/// One four-leader iteration: the four leader distances are averaged into a
/// single vector before each of the four guided positions is formed, and the
/// agent moves to their clamped four-way mean.
pub fn mgwo_step(
    population: &[Agent],
    leaders: &WolfLeaders,
    a: f64,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut dyn RandomSource,
    iteration: usize,
) -> Result<Vec<Agent>, OptimizeError> {
    let gamma = leaders
        .gamma
        .as_ref()
        .ok_or_else(|| OptimizeError::Config("four-leader step requires a gamma leader".into()))?;
    if population.len() < 4 {
        return Err(OptimizeError::Config(format!(
            "four-leader step needs at least 4 agents (got {})",
            population.len()
        )));
    }
    let dim = space.dimension();
    population
        .iter()
        .enumerate()
        .map(|(idx, agent)| {
            let toward_alpha = LeaderCoefficients::draw(a, dim, rng);
            let toward_beta = LeaderCoefficients::draw(a, dim, rng);
            let toward_delta = LeaderCoefficients::draw(a, dim, rng);
            let toward_gamma = LeaderCoefficients::draw(a, dim, rng);
            let mut position = Vec::with_capacity(dim);
            for d in 0..dim {
                let x = agent.position[d];
                let d_alpha = (toward_alpha.c_coef[d] * leaders.alpha.position[d] - x).abs();
                let d_beta = (toward_beta.c_coef[d] * leaders.beta.position[d] - x).abs();
                let d_delta = (toward_delta.c_coef[d] * leaders.delta.position[d] - x).abs();
                let d_gamma = (toward_gamma.c_coef[d] * gamma.position[d] - x).abs();
                let d_avg = (d_alpha + d_beta + d_delta + d_gamma) / 4.0;
                let x1 = leaders.alpha.position[d] - toward_alpha.a_coef[d] * d_avg;
                let x2 = leaders.beta.position[d] - toward_beta.a_coef[d] * d_avg;
                let x3 = leaders.delta.position[d] - toward_delta.a_coef[d] * d_avg;
                let x4 = gamma.position[d] - toward_gamma.a_coef[d] * d_avg;
                position.push(space.clamp((x1 + x2 + x3 + x4) / 4.0));
            }
            Agent::evaluated(
                position,
                objective,
                idx,
                EvalPhase::Iteration(iteration + 1),
            )
        })
        .collect()
}

/// Standard grey-wolf optimizer plugged into the shared run loop. Leaders
/// are recomputed from the updated population at the start of each
/// iteration.
#[derive(Debug, Default)]
pub struct GwoStrategy;

impl OptimizerStrategy for GwoStrategy {
    fn name(&self) -> &'static str {
        "GWO"
    }

    fn min_agents(&self) -> usize {
        3
    }

    fn step(
        &mut self,
        population: &mut Vec<Agent>,
        iteration: usize,
        max_iterations: usize,
        space: &SearchSpace,
        objective: &dyn Objective,
        rng: &mut dyn RandomSource,
    ) -> Result<(), OptimizeError> {
        let leaders = WolfLeaders::select(population, false)?;
        let a = convergence_factor(iteration, max_iterations);
        *population = gwo_step(population, &leaders, a, space, objective, rng, iteration)?;
        Ok(())
    }
}

/// Four-leader grey-wolf variant.
#[derive(Debug, Default)]
pub struct MgwoStrategy;

impl OptimizerStrategy for MgwoStrategy {
    fn name(&self) -> &'static str {
        "MGWO"
    }

    fn min_agents(&self) -> usize {
        4
    }

    fn step(
        &mut self,
        population: &mut Vec<Agent>,
        iteration: usize,
        max_iterations: usize,
        space: &SearchSpace,
        objective: &dyn Objective,
        rng: &mut dyn RandomSource,
    ) -> Result<(), OptimizeError> {
        let leaders = WolfLeaders::select(population, true)?;
        let a = convergence_factor(iteration, max_iterations);
        *population = mgwo_step(population, &leaders, a, space, objective, rng, iteration)?;
        Ok(())
    }
}
