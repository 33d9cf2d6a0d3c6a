use std::marker::PhantomData;

use rand::Rng;

use super::ops::{init_ramped, subtree_crossover, subtree_mutation, InitMethod, TreeConfig};
use super::tree::TreeForest;
use crate::error::{GpError, Result};
use crate::evolution::{GpModel, Hyperparameters, Program};
use crate::primitives::{Domain, FunctionSet};
use crate::rng::GpRng;
use crate::scalar::{Scalar, Value};

/// Tree-based GP over a function set, generic in the constant type.
#[derive(Clone, Debug)]
pub struct TreeModel<T> {
    fset: FunctionSet,
    cfg: TreeConfig,
    name: &'static str,
    _scalar: PhantomData<T>,
}

impl<T: Scalar> TreeModel<T> {
    pub fn new(fset: FunctionSet, cfg: TreeConfig) -> Result<Self> {
        if cfg.n_outputs == 0 {
            return Err(GpError::config("tree model needs at least one output"));
        }
        if cfg.init_depth_min > cfg.init_depth_max || cfg.init_depth_max > cfg.max_depth {
            return Err(GpError::config(format!(
                "init depth range [{}, {}] must be ordered and within max_depth {}",
                cfg.init_depth_min, cfg.init_depth_max, cfg.max_depth
            )));
        }
        if cfg.init_depth_max > 0 && fset.function_ids().is_empty() {
            return Err(GpError::config("function set has no primitive of arity ≥ 1"));
        }
        if cfg.n_inputs == 0 && !cfg.constants && fset.terminal_ids().is_empty() {
            return Err(GpError::config("no terminals available"));
        }
        if !(0.0..=1.0).contains(&cfg.constant_prob) {
            return Err(GpError::config("constant_prob must lie in [0, 1]"));
        }
        let name = if cfg.n_outputs == 1 { "tgp" } else { "tgp-forest" };
        Ok(TreeModel {
            fset,
            cfg,
            name,
            _scalar: PhantomData,
        })
    }

    pub fn function_set(&self) -> &FunctionSet {
        &self.fset
    }

    pub fn config(&self) -> &TreeConfig {
        &self.cfg
    }

    pub fn program<'a>(&'a self, forest: &'a TreeForest<T>) -> ForestProgram<'a, T> {
        ForestProgram {
            forest,
            fset: &self.fset,
            n_inputs: self.cfg.n_inputs,
        }
    }
}

/// A forest bound to its function set.
#[derive(Clone, Copy, Debug)]
pub struct ForestProgram<'a, T> {
    pub forest: &'a TreeForest<T>,
    pub fset: &'a FunctionSet,
    pub n_inputs: usize,
}

impl<T: Scalar> Program for ForestProgram<'_, T> {
    fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    fn n_outputs(&self) -> usize {
        self.forest.trees.len()
    }

    fn evaluate<V: Value>(&self, inputs: &[V]) -> Vec<V> {
        self.forest.evaluate(self.fset, inputs)
    }
}

impl<T: Scalar> GpModel for TreeModel<T> {
    type Genome = TreeForest<T>;
    type Program<'a> = ForestProgram<'a, T>;

    fn model_name(&self) -> &str {
        self.name
    }

    fn domain(&self) -> Domain {
        self.fset.domain()
    }

    fn n_inputs(&self) -> usize {
        self.cfg.n_inputs
    }

    fn n_outputs(&self) -> usize {
        self.cfg.n_outputs
    }

    fn initialize(&self, count: usize, rng: &mut GpRng) -> Vec<TreeForest<T>> {
        (0..count)
            .map(|i| {
                let first = if i % 2 == 0 { InitMethod::Full } else { InitMethod::Grow };
                init_ramped(
                    &self.cfg,
                    &self.fset,
                    self.cfg.init_depth_min,
                    self.cfg.init_depth_max,
                    first,
                    rng,
                )
                .expect("validated in TreeModel::new")
            })
            .collect()
    }

    fn breed(&self, parents: &[&TreeForest<T>], hp: &Hyperparameters, rng: &mut GpRng) -> TreeForest<T> {
        match parents {
            [a, b, ..] if rng.gen_bool(hp.crossover_rate) => {
                let child = subtree_crossover(&self.cfg, a, b, rng).unwrap_or_else(|_| (*a).clone());
                if rng.gen_bool(hp.mutation_rate) {
                    subtree_mutation(&self.cfg, &self.fset, &child, rng)
                } else {
                    child
                }
            }
            [a, ..] => subtree_mutation(&self.cfg, &self.fset, a, rng),
            [] => panic!("breed needs at least one parent"),
        }
    }

    fn decode<'a>(&'a self, genome: &'a TreeForest<T>) -> ForestProgram<'a, T> {
        self.program(genome)
    }

    fn describe(&self, genome: &TreeForest<T>) -> String {
        genome.to_expression_string(&self.fset)
    }
}
