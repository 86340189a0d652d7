//! Shared optimizer contracts: objective abstraction, search space, agents,
//! configuration, and the run loop that hosts every strategy.
//!
//! Everything here follows the minimization convention: "better" means
//! strictly lower fitness.

use std::fmt;
use std::time::Instant;

use crate::rng::{RandomSource, SeededRng};

/// Objective function minimized by the optimizers.
///
/// Implementations must be pure and reentrant: the run loop relies on
/// repeated evaluations at the same position returning the same value, and
/// all random draws happen outside objective evaluation.
pub trait Objective {
    fn evaluate(&self, position: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64> Objective for F {
    fn evaluate(&self, position: &[f64]) -> f64 {
        self(position)
    }
}

/// Phase of a run during which an objective evaluation happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPhase {
    Initialization,
    /// One-based iteration index.
    Iteration(usize),
}

impl fmt::Display for EvalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPhase::Initialization => write!(f, "initialization"),
            EvalPhase::Iteration(t) => write!(f, "iteration {t}"),
        }
    }
}

#[derive(Debug)]
pub enum OptimizeError {
    /// Invalid dimension, bounds, population size, or iteration budget.
    Config(String),
    /// The objective returned NaN or an infinity. Non-finite values are
    /// errors rather than infinities so data bugs surface early.
    NonFiniteObjective {
        agent: usize,
        value: f64,
        phase: EvalPhase,
    },
    /// A fitness value violated the non-negativity contract of the
    /// fitness-weight computation.
    InvalidFitness(String),
}

impl fmt::Display for OptimizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimizeError::Config(msg) => write!(f, "invalid optimizer configuration: {msg}"),
            OptimizeError::NonFiniteObjective {
                agent,
                value,
                phase,
            } => write!(
                f,
                "objective returned non-finite value ({value}) for agent {agent} during {phase}"
            ),
            OptimizeError::InvalidFitness(msg) => write!(f, "invalid fitness value: {msg}"),
        }
    }
}

impl std::error::Error for OptimizeError {}

/// Box-constrained search space with uniform bounds across dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    dimension: usize,
    lower_bound: f64,
    upper_bound: f64,
}

impl SearchSpace {
    pub fn new(
        dimension: usize,
        lower_bound: f64,
        upper_bound: f64,
    ) -> Result<Self, OptimizeError> {
        if dimension == 0 {
            return Err(OptimizeError::Config(
                "search space dimension must be at least 1".into(),
            ));
        }
        if !lower_bound.is_finite() || !upper_bound.is_finite() {
            return Err(OptimizeError::Config(format!(
                "search space bounds must be finite (got [{lower_bound}, {upper_bound}])"
            )));
        }
        if lower_bound >= upper_bound {
            return Err(OptimizeError::Config(format!(
                "lower bound {lower_bound} must be below upper bound {upper_bound}"
            )));
        }
        Ok(Self {
            dimension,
            lower_bound,
            upper_bound,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn lower_bound(&self) -> f64 {
        self.lower_bound
    }

    pub fn upper_bound(&self) -> f64 {
        self.upper_bound
    }

    /// Clamp one position component to the box. Components leaving the box
    /// are pulled back to the nearest bound.
    pub fn clamp(&self, value: f64) -> f64 {
        value.clamp(self.lower_bound, self.upper_bound)
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.dimension
            && position
                .iter()
                .all(|&x| x >= self.lower_bound && x <= self.upper_bound)
    }
}

/// One candidate solution: a position and its cached objective value.
///
/// The cached fitness always equals the objective evaluated at the position;
/// every operation that moves an agent re-evaluates it.
#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub position: Vec<f64>,
    pub fitness: f64,
}

impl Agent {
    /// Evaluate `position` and build the agent, rejecting non-finite values.
    pub fn evaluated(
        position: Vec<f64>,
        objective: &dyn Objective,
        agent: usize,
        phase: EvalPhase,
    ) -> Result<Self, OptimizeError> {
        let fitness = objective.evaluate(&position);
        if !fitness.is_finite() {
            return Err(OptimizeError::NonFiniteObjective {
                agent,
                value: fitness,
                phase,
            });
        }
        Ok(Self { position, fitness })
    }
}

/// Population size, iteration budget, and seed for one optimizer run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimizerConfig {
    pub agent_count: usize,
    pub max_iterations: usize,
    pub rng_seed: u64,
}

impl Default for OptimizerConfig {
    /// Ten search agents and fifty iterations.
    fn default() -> Self {
        Self {
            agent_count: 10,
            max_iterations: 50,
            rng_seed: 0,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self, strategy: &dyn OptimizerStrategy) -> Result<(), OptimizeError> {
        let min = strategy.min_agents().max(2);
        if self.agent_count < min {
            return Err(OptimizeError::Config(format!(
                "{} requires at least {} agents (got {})",
                strategy.name(),
                min,
                self.agent_count
            )));
        }
        if self.max_iterations == 0 {
            return Err(OptimizeError::Config(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a run: the best solution seen plus the best-so-far trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each iteration; length `max_iterations`,
    /// monotonically non-increasing, last element equals `best_fitness`.
    pub fitness_trace: Vec<f64>,
    /// Wall-clock seconds spent in the iteration loop.
    pub elapsed_seconds: f64,
}

/// One optimizer iteration plugged into [`run`].
///
/// Step implementations are pure over the incoming population (they replace
/// it with a freshly built one) and consume RNG draws in a documented order,
/// so identical seeds give identical runs.
pub trait OptimizerStrategy {
    fn name(&self) -> &'static str;

    /// Smallest population the strategy can operate on.
    fn min_agents(&self) -> usize;

    /// Advance the population by one iteration (`iteration` is zero-based).
    fn step(
        &mut self,
        population: &mut Vec<Agent>,
        iteration: usize,
        max_iterations: usize,
        space: &SearchSpace,
        objective: &dyn Objective,
        rng: &mut dyn RandomSource,
    ) -> Result<(), OptimizeError>;
}

/// Draw the initial population uniformly inside the box and evaluate it.
///
/// RNG order: `agent_count * dimension` unit draws, agent-major then
/// dimension-minor.
pub fn initialize_population(
    space: &SearchSpace,
    config: &OptimizerConfig,
    objective: &dyn Objective,
    rng: &mut dyn RandomSource,
) -> Result<Vec<Agent>, OptimizeError> {
    (0..config.agent_count)
        .map(|idx| {
            let position: Vec<f64> = (0..space.dimension())
                .map(|_| rng.range(space.lower_bound(), space.upper_bound()))
                .collect();
            Agent::evaluated(position, objective, idx, EvalPhase::Initialization)
        })
        .collect()
}

/// Index of the best agent; ties broken by the lower index.
pub fn best_index(population: &[Agent]) -> usize {
    let mut best = 0;
    for (idx, agent) in population.iter().enumerate().skip(1) {
        if agent.fitness < population[best].fitness {
            best = idx;
        }
    }
    best
}

/// Execute `config.max_iterations` iterations of `strategy` and report the
/// best solution seen, seeding one generator from `config.rng_seed`.
pub fn run(
    strategy: &mut dyn OptimizerStrategy,
    space: &SearchSpace,
    config: &OptimizerConfig,
    objective: &dyn Objective,
) -> Result<RunResult, OptimizeError> {
    run_observed(strategy, space, config, objective, |_, _| {})
}

/// Same as [`run`], additionally calling `observe` with the population after
/// initialization (`0`) and after each iteration (`1..=max_iterations`).
pub fn run_observed(
    strategy: &mut dyn OptimizerStrategy,
    space: &SearchSpace,
    config: &OptimizerConfig,
    objective: &dyn Objective,
    mut observe: impl FnMut(usize, &[Agent]),
) -> Result<RunResult, OptimizeError> {
    config.validate(strategy)?;
    let mut rng = SeededRng::new(config.rng_seed);
    let mut population = initialize_population(space, config, objective, &mut rng)?;
    observe(0, &population);

    let seed_best = best_index(&population);
    let mut best_position = population[seed_best].position.clone();
    let mut best_fitness = population[seed_best].fitness;
    let mut fitness_trace = Vec::with_capacity(config.max_iterations);

    let started = Instant::now();
    for iteration in 0..config.max_iterations {
        strategy.step(
            &mut population,
            iteration,
            config.max_iterations,
            space,
            objective,
            &mut rng,
        )?;
        let idx = best_index(&population);
        if population[idx].fitness < best_fitness {
            best_fitness = population[idx].fitness;
            best_position = population[idx].position.clone();
        }
        fitness_trace.push(best_fitness);
        observe(iteration + 1, &population);
    }
    let elapsed_seconds = started.elapsed().as_secs_f64();

    Ok(RunResult {
        best_position,
        best_fitness,
        fitness_trace,
        elapsed_seconds,
    })
}

/// Render a fitness trace as CSV with header `iteration,best_fitness`;
/// iterations are one-based.
pub fn trace_to_csv(result: &RunResult) -> String {
    let mut out = String::from("iteration,best_fitness\n");
    for (t, fitness) in result.fitness_trace.iter().enumerate() {
        out.push_str(&format!("{},{}\n", t + 1, fitness));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::sphere;

    struct NullStrategy;

    impl OptimizerStrategy for NullStrategy {
        fn name(&self) -> &'static str {
            "NULL"
        }

        fn min_agents(&self) -> usize {
            2
        }

        fn step(
            &mut self,
            _population: &mut Vec<Agent>,
            _iteration: usize,
            _max_iterations: usize,
            _space: &SearchSpace,
            _objective: &dyn Objective,
            _rng: &mut dyn RandomSource,
        ) -> Result<(), OptimizeError> {
            Ok(())
        }
    }

    #[test]
    fn search_space_rejects_zero_dimension() {
        assert!(SearchSpace::new(0, -1.0, 1.0).is_err());
    }

    #[test]
    fn search_space_rejects_inverted_bounds() {
        assert!(SearchSpace::new(3, 1.0, -1.0).is_err());
        assert!(SearchSpace::new(3, 1.0, 1.0).is_err());
    }

    #[test]
    fn initial_population_stays_in_bounds() {
        let space = SearchSpace::new(2, -1.0, 1.0).unwrap();
        let config = OptimizerConfig {
            agent_count: 3,
            ..OptimizerConfig::default()
        };
        let mut rng = SeededRng::new(0);
        let agents = initialize_population(&space, &config, &sphere, &mut rng).unwrap();
        assert_eq!(agents.len(), 3);
        for agent in &agents {
            assert!(space.contains(&agent.position));
            assert_eq!(agent.fitness, sphere(&agent.position));
        }
    }

    #[test]
    fn initialization_is_seed_deterministic() {
        let space = SearchSpace::new(5, -4.0, 4.0).unwrap();
        let config = OptimizerConfig::default();
        let mut a = SeededRng::new(99);
        let mut b = SeededRng::new(99);
        let pa = initialize_population(&space, &config, &sphere, &mut a).unwrap();
        let pb = initialize_population(&space, &config, &sphere, &mut b).unwrap();
        assert_eq!(pa, pb);
    }

    #[test]
    fn table_five_shaped_population() {
        // The largest experiment shape: dimension 253, ten agents.
        let space = SearchSpace::new(253, -10.0, 10.0).unwrap();
        let config = OptimizerConfig::default();
        let mut rng = SeededRng::new(1);
        let agents = initialize_population(&space, &config, &sphere, &mut rng).unwrap();
        assert_eq!(agents.len(), 10);
        assert!(agents.iter().all(|a| space.contains(&a.position)));
    }

    #[test]
    fn non_finite_objective_is_reported_with_agent_and_phase() {
        let space = SearchSpace::new(1, -1.0, 1.0).unwrap();
        let config = OptimizerConfig::default();
        let mut rng = SeededRng::new(0);
        let bad = |_: &[f64]| f64::NAN;
        let err = initialize_population(&space, &config, &bad, &mut rng).unwrap_err();
        match err {
            OptimizeError::NonFiniteObjective { agent, phase, .. } => {
                assert_eq!(agent, 0);
                assert_eq!(phase, EvalPhase::Initialization);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn constant_objective_gives_flat_trace() {
        let space = SearchSpace::new(3, -2.0, 2.0).unwrap();
        let config = OptimizerConfig {
            agent_count: 4,
            max_iterations: 10,
            rng_seed: 5,
        };
        let constant = |_: &[f64]| 5.0;
        let result = run(&mut NullStrategy, &space, &config, &constant).unwrap();
        assert_eq!(result.best_fitness, 5.0);
        assert_eq!(result.fitness_trace, vec![5.0; 10]);
    }

    #[test]
    fn trace_csv_has_header_and_one_based_iterations() {
        let result = RunResult {
            best_position: vec![0.0],
            best_fitness: 0.25,
            fitness_trace: vec![1.0, 0.5, 0.25],
            elapsed_seconds: 0.0,
        };
        let csv = trace_to_csv(&result);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "iteration,best_fitness");
        assert_eq!(lines[1], "1,1");
        assert_eq!(lines[3], "3,0.25");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn config_rejects_zero_iterations() {
        let space = SearchSpace::new(1, -1.0, 1.0).unwrap();
        let config = OptimizerConfig {
            agent_count: 3,
            max_iterations: 0,
            rng_seed: 0,
        };
        assert!(run(&mut NullStrategy, &space, &config, &sphere).is_err());
    }
}
