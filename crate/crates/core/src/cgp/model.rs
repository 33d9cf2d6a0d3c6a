use super::genome::{cgp_to_expression, init_random_cgp, point_mutation, CgpConfig, CgpGenome, CompiledCgp};
use crate::error::Result;
use crate::evolution::{GpModel, Hyperparameters, Program};
use crate::primitives::{Domain, FunctionSet};
use crate::rng::GpRng;
use crate::scalar::Value;

/// Cartesian GP with mutation-only variation. Crossover is not defined for
/// this representation; extra parents passed to `breed` are ignored.
#[derive(Clone, Debug)]
pub struct CgpModel {
    fset: FunctionSet,
    cfg: CgpConfig,
}

impl CgpModel {
    pub fn new(fset: FunctionSet, cfg: CgpConfig) -> Result<Self> {
        cfg.validate(&fset)?;
        Ok(CgpModel { fset, cfg })
    }

    pub fn function_set(&self) -> &FunctionSet {
        &self.fset
    }

    pub fn config(&self) -> &CgpConfig {
        &self.cfg
    }
}

impl Program for CompiledCgp {
    fn n_inputs(&self) -> usize {
        CompiledCgp::n_inputs(self)
    }

    fn n_outputs(&self) -> usize {
        CompiledCgp::n_outputs(self)
    }

    fn evaluate<V: Value>(&self, inputs: &[V]) -> Vec<V> {
        CompiledCgp::evaluate(self, inputs)
    }
}

impl GpModel for CgpModel {
    type Genome = CgpGenome;
    type Program<'a> = CompiledCgp;

    fn model_name(&self) -> &str {
        "cgp"
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

    fn initialize(&self, count: usize, rng: &mut GpRng) -> Vec<CgpGenome> {
        (0..count)
            .map(|_| init_random_cgp(&self.cfg, &self.fset, rng))
            .collect()
    }

    fn breed(&self, parents: &[&CgpGenome], hp: &Hyperparameters, rng: &mut GpRng) -> CgpGenome {
        point_mutation(parents[0], &self.cfg, &self.fset, hp.mutation_rate, rng)
    }

    fn decode<'a>(&'a self, genome: &'a CgpGenome) -> CompiledCgp {
        CompiledCgp::new(genome, &self.cfg, &self.fset)
    }

    fn describe(&self, genome: &CgpGenome) -> String {
        cgp_to_expression(genome, &self.cfg, &self.fset)
    }
}
