//! Fitness-dependent scout-bee search with greedy move acceptance.
//!
//! Each bee adds a pace to its position. The pace either walks randomly
//! around the bee (scaled by its own coordinates) or moves it along the
//! direction to the global best, scaled by the fitness weight. A candidate
//! replaces the bee only when its fitness is strictly lower.
//!
//! RNG order: bees are processed in population order; the random-walk branch
//! consumes one `[-1, 1)` draw per dimension, the directed branch a single
//! draw for the bee.

use crate::optimizer::{
    Agent, EvalPhase, Objective, OptimizeError, OptimizerStrategy, SearchSpace,
};
use crate::rng::RandomSource;

/// Weight-factor setting for the fitness weight; only 0 and 1 are valid and
/// all reference experiments use 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdoConfig {
    weight_factor: f64,
}

impl Default for FdoConfig {
    fn default() -> Self {
        Self { weight_factor: 0.0 }
    }
}

impl FdoConfig {
    pub fn new(weight_factor: f64) -> Result<Self, OptimizeError> {
        if weight_factor != 0.0 && weight_factor != 1.0 {
            return Err(OptimizeError::Config(format!(
                "weight factor must be 0 or 1 (got {weight_factor})"
            )));
        }
        Ok(Self { weight_factor })
    }

    pub fn weight_factor(&self) -> f64 {
        self.weight_factor
    }
}

/// Fitness weight of a bee relative to the global best:
/// `|best / current| - weight_factor`.
///
/// Objectives are assumed non-negative; negative inputs are a contract
/// violation. The caller must route a zero current fitness to the
/// random-walk branch instead of calling this.
pub fn fitness_weight(
    current_fitness: f64,
    global_best_fitness: f64,
    weight_factor: f64,
) -> Result<f64, OptimizeError> {
    if current_fitness < 0.0 || global_best_fitness < 0.0 {
        return Err(OptimizeError::InvalidFitness(format!(
            "fitness weight requires non-negative fitness values (current {current_fitness}, best {global_best_fitness})"
        )));
    }
    if current_fitness == 0.0 {
        return Err(OptimizeError::InvalidFitness(
            "fitness weight is undefined at zero current fitness".into(),
        ));
    }
    Ok((global_best_fitness / current_fitness).abs() - weight_factor)
}

fn random_walk_pace(bee: &Agent, rng: &mut dyn RandomSource) -> Vec<f64> {
    bee.position.iter().map(|x| x * rng.symmetric()).collect()
}

/// One scout-bee iteration with greedy acceptance.
///
/// `global_best` is the best bee seen so far; every bee is compared against
/// this iteration-start snapshot. Returns the updated population and the
/// (possibly improved) global best. `iteration` is the zero-based index,
/// used for diagnostics.
pub fn fdo_step(
    population: &[Agent],
    global_best: &Agent,
    config: &FdoConfig,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut dyn RandomSource,
    iteration: usize,
) -> Result<(Vec<Agent>, Agent), OptimizeError> {
    let mut updated = Vec::with_capacity(population.len());
    for (idx, bee) in population.iter().enumerate() {
        let pace: Vec<f64> = if bee.fitness == 0.0 {
            random_walk_pace(bee, rng)
        } else {
            let fw = fitness_weight(bee.fitness, global_best.fitness, config.weight_factor)?;
            if fw > 0.0 && fw < 1.0 {
                // One direction decision per bee; r < 0 flips the move.
                let sign = if rng.symmetric() < 0.0 { -1.0 } else { 1.0 };
                bee.position
                    .iter()
                    .zip(&global_best.position)
                    .map(|(x, best)| (x - best) * fw * sign)
                    .collect()
            } else {
                // fw = 0, fw = 1, and out-of-range fw all fall back to the walk.
                random_walk_pace(bee, rng)
            }
        };
        let candidate: Vec<f64> = bee
            .position
            .iter()
            .zip(&pace)
            .map(|(x, p)| space.clamp(x + p))
            .collect();
        let candidate = Agent::evaluated(
            candidate,
            objective,
            idx,
            EvalPhase::Iteration(iteration + 1),
        )?;
        updated.push(if candidate.fitness < bee.fitness {
            candidate
        } else {
            bee.clone()
        });
    }

    let mut best = global_best.clone();
    for bee in &updated {
        if bee.fitness < best.fitness {
            best = bee.clone();
        }
    }
    Ok((updated, best))
}

/// Scout-bee search plugged into the shared run loop; carries the global
/// best across iterations.
#[derive(Debug, Default)]
pub struct FdoStrategy {
    config: FdoConfig,
    global_best: Option<Agent>,
}

impl FdoStrategy {
    pub fn new(config: FdoConfig) -> Self {
        Self {
            config,
            global_best: None,
        }
    }
}

impl OptimizerStrategy for FdoStrategy {
    fn name(&self) -> &'static str {
        "FDO"
    }

    fn min_agents(&self) -> usize {
        2
    }

    fn step(
        &mut self,
        population: &mut Vec<Agent>,
        iteration: usize,
        _max_iterations: usize,
        space: &SearchSpace,
        objective: &dyn Objective,
        rng: &mut dyn RandomSource,
    ) -> Result<(), OptimizeError> {
        let global_best = match self.global_best.take() {
            Some(best) => best,
            None => population[crate::optimizer::best_index(population)].clone(),
        };
        let (updated, best) = fdo_step(
            population,
            &global_best,
            &self.config,
            space,
            objective,
            rng,
            iteration,
        )?;
        *population = updated;
        self.global_best = Some(best);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::sphere;
    use crate::rng::SeededRng;

    fn bee(position: Vec<f64>) -> Agent {
        let fitness = sphere(&position);
        Agent { position, fitness }
    }

    #[test]
    fn fitness_weight_direct_substitution() {
        assert_eq!(fitness_weight(1.0, 0.5, 0.0).unwrap(), 0.5);
        assert_eq!(fitness_weight(0.8, 0.2, 1.0).unwrap(), -0.75);
    }

    #[test]
    fn fitness_weight_of_equal_fitness_is_one() {
        for c in [0.25, 1.0, 7.5] {
            assert_eq!(fitness_weight(c, c, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn fitness_weight_rejects_invalid_inputs() {
        assert!(fitness_weight(-1.0, 0.5, 0.0).is_err());
        assert!(fitness_weight(1.0, -0.5, 0.0).is_err());
        assert!(fitness_weight(0.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn fdo_config_rejects_other_weight_factors() {
        assert!(FdoConfig::new(0.0).is_ok());
        assert!(FdoConfig::new(1.0).is_ok());
        assert!(FdoConfig::new(0.5).is_err());
    }

    #[test]
    fn directed_branch_matches_hand_computation() {
        // fw = 0.5, r >= 0, positions (2,2) and best (0,0): pace (1,1),
        // candidate (3,3), rejected because sphere(3,3) > sphere(2,2).
        struct FixedDraws(Vec<f64>, usize);
        impl RandomSource for FixedDraws {
            fn unit(&mut self) -> f64 {
                let v = self.0[self.1];
                self.1 += 1;
                v
            }
        }
        let space = SearchSpace::new(2, -10.0, 10.0).unwrap();
        let population = vec![bee(vec![2.0, 2.0])];
        let best = Agent {
            position: vec![0.0, 0.0],
            fitness: 4.0, // fw = 4/8 = 0.5
        };
        // unit 0.75 -> symmetric 0.5 >= 0
        let mut rng = FixedDraws(vec![0.75], 0);
        let (updated, new_best) = fdo_step(
            &population,
            &best,
            &FdoConfig::default(),
            &space,
            &sphere,
            &mut rng,
            0,
        )
        .unwrap();
        assert_eq!(updated[0].position, vec![2.0, 2.0]); // greedy rejection
        assert_eq!(new_best.fitness, 4.0);
    }

    #[test]
    fn best_bee_takes_the_random_walk_branch() {
        // The global best bee itself has fw = 1 and must draw one symmetric
        // value per dimension (2 here), not the single directed draw.
        struct CountingDraws(usize);
        impl RandomSource for CountingDraws {
            fn unit(&mut self) -> f64 {
                self.0 += 1;
                0.5
            }
        }
        let space = SearchSpace::new(2, -10.0, 10.0).unwrap();
        let population = vec![bee(vec![1.0, 1.0])];
        let best = population[0].clone();
        let mut rng = CountingDraws(0);
        fdo_step(
            &population,
            &best,
            &FdoConfig::default(),
            &space,
            &sphere,
            &mut rng,
            0,
        )
        .unwrap();
        assert_eq!(rng.0, 2);
    }

    #[test]
    fn greedy_acceptance_never_worsens_a_bee() {
        let space = SearchSpace::new(3, -5.0, 5.0).unwrap();
        let mut population: Vec<Agent> = vec![
            bee(vec![1.0, -2.0, 3.0]),
            bee(vec![-4.0, 0.5, 2.0]),
            bee(vec![0.1, 0.2, -0.3]),
        ];
        let mut global_best = population[crate::optimizer::best_index(&population)].clone();
        let mut rng = SeededRng::new(17);
        for iteration in 0..25 {
            let before: Vec<f64> = population.iter().map(|b| b.fitness).collect();
            let (updated, best) = fdo_step(
                &population,
                &global_best,
                &FdoConfig::default(),
                &space,
                &sphere,
                &mut rng,
                iteration,
            )
            .unwrap();
            for (bee, old) in updated.iter().zip(&before) {
                assert!(bee.fitness <= *old);
            }
            assert!(best.fitness <= global_best.fitness);
            assert!(updated.iter().all(|b| space.contains(&b.position)));
            population = updated;
            global_best = best;
        }
    }

    #[test]
    fn zero_fitness_bee_routes_to_the_walk_and_survives() {
        // A perfect bee random-walks but greedy acceptance keeps it in place.
        let space = SearchSpace::new(2, -5.0, 5.0).unwrap();
        let perfect = Agent {
            position: vec![0.0, 0.0],
            fitness: 0.0,
        };
        let population = vec![perfect.clone(), bee(vec![1.0, 1.0])];
        let mut rng = SeededRng::new(5);
        let (updated, best) = fdo_step(
            &population,
            &perfect,
            &FdoConfig::default(),
            &space,
            &sphere,
            &mut rng,
            0,
        )
        .unwrap();
        assert_eq!(updated[0].fitness, 0.0);
        assert_eq!(best.fitness, 0.0);
    }
}
