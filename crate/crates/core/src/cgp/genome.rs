use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GpError, Result};
use crate::primitives::{FunctionSet, Op, MAX_ARITY};
use crate::scalar::Value;

/// Grid shape of a Cartesian program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgpConfig {
    pub n_inputs: usize,
    pub n_outputs: usize,
    pub n_columns: usize,
    pub n_rows: usize,
    pub levels_back: usize,
    pub max_arity: usize,
}

impl CgpConfig {
    /// One row of 100 columns, unconstrained levels-back.
    pub fn new(n_inputs: usize, n_outputs: usize, fset: &FunctionSet) -> Self {
        CgpConfig {
            n_inputs,
            n_outputs,
            n_columns: 100,
            n_rows: 1,
            levels_back: 100,
            max_arity: fset.max_arity(),
        }
    }

    pub fn validate(&self, fset: &FunctionSet) -> Result<()> {
        if self.n_columns == 0 || self.n_rows == 0 {
            return Err(GpError::config("CGP grid needs at least one row and one column"));
        }
        if self.levels_back == 0 || self.levels_back > self.n_columns {
            return Err(GpError::config(format!(
                "levels_back must lie in [1, n_columns={}], got {}",
                self.n_columns, self.levels_back
            )));
        }
        if self.n_outputs == 0 {
            return Err(GpError::config("CGP needs at least one output"));
        }
        if self.n_inputs == 0 {
            return Err(GpError::config("CGP needs at least one input"));
        }
        if self.max_arity != fset.max_arity() {
            return Err(GpError::config(format!(
                "max_arity {} does not match the function set ({})",
                self.max_arity,
                fset.max_arity()
            )));
        }
        if self.max_arity > MAX_ARITY {
            return Err(GpError::config("function arity above supported maximum"));
        }
        Ok(())
    }

    pub fn n_nodes(&self) -> usize {
        self.n_columns * self.n_rows
    }

    /// Genes per node: one function gene plus `max_arity` connection genes.
    pub fn block(&self) -> usize {
        1 + self.max_arity
    }

    pub fn genome_len(&self) -> usize {
        self.n_nodes() * self.block() + self.n_outputs
    }

    /// Range of values gene `position` may take.
    pub(crate) fn gene_range(&self, position: usize, n_functions: usize) -> GeneRange {
        let node_genes = self.n_nodes() * self.block();
        if position >= node_genes {
            return GeneRange::contiguous(self.n_inputs + self.n_nodes());
        }
        let node = position / self.block();
        if position.is_multiple_of(self.block()) {
            return GeneRange::contiguous(n_functions);
        }
        let column = node / self.n_rows;
        let first_column = column.saturating_sub(self.levels_back);
        GeneRange {
            n_inputs: self.n_inputs,
            node_start: self.n_inputs + first_column * self.n_rows,
            count: self.n_inputs + (column - first_column) * self.n_rows,
        }
    }
}

/// Inputs `0..n_inputs` followed by the node block starting at `node_start`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct GeneRange {
    n_inputs: usize,
    node_start: usize,
    pub count: usize,
}

impl GeneRange {
    fn contiguous(count: usize) -> Self {
        GeneRange {
            n_inputs: count,
            node_start: count,
            count,
        }
    }

    fn value(&self, i: usize) -> usize {
        if i < self.n_inputs {
            i
        } else {
            self.node_start + (i - self.n_inputs)
        }
    }

    fn position(&self, value: usize) -> Option<usize> {
        if value < self.n_inputs {
            Some(value)
        } else if value >= self.node_start && value - self.node_start < self.count - self.n_inputs {
            Some(self.n_inputs + value - self.node_start)
        } else {
            None
        }
    }

    pub fn contains(&self, value: usize) -> bool {
        self.position(value).is_some()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.value(rng.gen_range(0..self.count))
    }

    /// Uniform over the range minus `current` when at least two values exist.
    pub fn resample<R: Rng + ?Sized>(&self, current: usize, rng: &mut R) -> usize {
        match self.position(current) {
            Some(pos) if self.count >= 2 => {
                let j = rng.gen_range(0..self.count - 1);
                self.value(if j >= pos { j + 1 } else { j })
            }
            _ => self.sample(rng),
        }
    }
}

/// Fixed-length integer genome. Node `k` (0-based) has index `n_inputs + k`
/// and its genes at `node_genes[k * block..(k + 1) * block]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CgpGenome {
    pub node_genes: Vec<usize>,
    pub output_genes: Vec<usize>,
}

impl CgpGenome {
    fn gene(&self, position: usize) -> usize {
        let n = self.node_genes.len();
        if position < n {
            self.node_genes[position]
        } else {
            self.output_genes[position - n]
        }
    }

    fn gene_mut(&mut self, position: usize) -> &mut usize {
        let n = self.node_genes.len();
        if position < n {
            &mut self.node_genes[position]
        } else {
            &mut self.output_genes[position - n]
        }
    }

    pub fn len(&self) -> usize {
        self.node_genes.len() + self.output_genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks gene ranges, lengths and the levels-back constraint.
    pub fn validate(&self, cfg: &CgpConfig, fset: &FunctionSet) -> Result<(), String> {
        if self.node_genes.len() != cfg.n_nodes() * cfg.block() {
            return Err(format!("{} node genes, expected {}", self.node_genes.len(), cfg.n_nodes() * cfg.block()));
        }
        if self.output_genes.len() != cfg.n_outputs {
            return Err(format!("{} output genes, expected {}", self.output_genes.len(), cfg.n_outputs));
        }
        for pos in 0..self.len() {
            let value = self.gene(pos);
            if !cfg.gene_range(pos, fset.len()).contains(value) {
                return Err(format!("gene {pos} = {value} outside its valid range"));
            }
        }
        Ok(())
    }
}

pub fn init_random_cgp<R: Rng + ?Sized>(cfg: &CgpConfig, fset: &FunctionSet, rng: &mut R) -> CgpGenome {
    let mut genome = CgpGenome {
        node_genes: vec![0; cfg.n_nodes() * cfg.block()],
        output_genes: vec![0; cfg.n_outputs],
    };
    for pos in 0..genome.len() {
        *genome.gene_mut(pos) = cfg.gene_range(pos, fset.len()).sample(rng);
    }
    genome
}

/// Per-gene point mutation; a mutated gene never keeps its value when it has
/// an alternative.
pub fn point_mutation<R: Rng + ?Sized>(
    genome: &CgpGenome,
    cfg: &CgpConfig,
    fset: &FunctionSet,
    rate: f64,
    rng: &mut R,
) -> CgpGenome {
    let mut child = genome.clone();
    if rate <= 0.0 {
        return child;
    }
    for pos in 0..child.len() {
        if rng.gen_bool(rate) {
            let range = cfg.gene_range(pos, fset.len());
            let current = child.gene(pos);
            *child.gene_mut(pos) = range.resample(current, rng);
        }
    }
    child
}

/// Node indices reachable backward from the outputs, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveSet(pub Vec<usize>);

impl ActiveSet {
    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn decode_active(genome: &CgpGenome, cfg: &CgpConfig, fset: &FunctionSet) -> ActiveSet {
    let n_in = cfg.n_inputs;
    let block = cfg.block();
    let mut active = vec![false; cfg.n_nodes()];
    for &o in &genome.output_genes {
        if o >= n_in {
            active[o - n_in] = true;
        }
    }
    for k in (0..cfg.n_nodes()).rev() {
        if !active[k] {
            continue;
        }
        let genes = &genome.node_genes[k * block..(k + 1) * block];
        let arity = fset.get(genes[0]).arity;
        for &c in &genes[1..=arity] {
            if c >= n_in {
                active[c - n_in] = true;
            }
        }
    }
    ActiveSet(
        active
            .iter()
            .enumerate()
            .filter(|(_, a)| **a)
            .map(|(k, _)| n_in + k)
            .collect(),
    )
}

#[derive(Clone, Debug)]
struct Instruction {
    op: Op,
    arity: usize,
    args: [usize; MAX_ARITY],
}

/// Active nodes compiled to a straight-line program over value slots.
#[derive(Clone, Debug)]
pub struct CompiledCgp {
    n_inputs: usize,
    instructions: Vec<Instruction>,
    outputs: Vec<usize>,
    active: ActiveSet,
}

impl CompiledCgp {
    pub fn new(genome: &CgpGenome, cfg: &CgpConfig, fset: &FunctionSet) -> Self {
        let active = decode_active(genome, cfg, fset);
        let n_in = cfg.n_inputs;
        let block = cfg.block();
        let mut slot = vec![usize::MAX; n_in + cfg.n_nodes()];
        for (i, s) in slot.iter_mut().enumerate().take(n_in) {
            *s = i;
        }
        let mut instructions = Vec::with_capacity(active.len());
        for (rank, &node) in active.nodes().iter().enumerate() {
            let k = node - n_in;
            let genes = &genome.node_genes[k * block..(k + 1) * block];
            let prim = fset.get(genes[0]);
            let mut args = [0; MAX_ARITY];
            for (a, &c) in args.iter_mut().zip(&genes[1..=prim.arity]) {
                *a = slot[c];
            }
            instructions.push(Instruction {
                op: prim.op,
                arity: prim.arity,
                args,
            });
            slot[node] = n_in + rank;
        }
        let outputs = genome.output_genes.iter().map(|&o| slot[o]).collect();
        CompiledCgp {
            n_inputs: n_in,
            instructions,
            outputs,
            active,
        }
    }

    pub fn active(&self) -> &ActiveSet {
        &self.active
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn evaluate<V: Value>(&self, inputs: &[V]) -> Vec<V> {
        let mut values = Vec::with_capacity(self.n_inputs + self.instructions.len());
        values.extend_from_slice(&inputs[..self.n_inputs]);
        let mut args: Vec<V> = Vec::with_capacity(MAX_ARITY);
        for ins in &self.instructions {
            args.clear();
            args.extend(ins.args[..ins.arity].iter().map(|&s| values[s]));
            let v = V::apply(ins.op, &args);
            values.push(v);
        }
        self.outputs.iter().map(|&s| values[s]).collect()
    }
}

/// Forward evaluation restricted to the active nodes.
pub fn evaluate_cgp<V: Value>(
    genome: &CgpGenome,
    cfg: &CgpConfig,
    fset: &FunctionSet,
    inputs: &[V],
) -> Vec<V> {
    CompiledCgp::new(genome, cfg, fset).evaluate(inputs)
}

/// Nested prefix expression per output (joined with `"; "`); shared
/// subgraphs are repeated.
pub fn cgp_to_expression(genome: &CgpGenome, cfg: &CgpConfig, fset: &FunctionSet) -> String {
    fn render(genome: &CgpGenome, cfg: &CgpConfig, fset: &FunctionSet, index: usize, out: &mut String) {
        if index < cfg.n_inputs {
            out.push('x');
            out.push_str(&index.to_string());
            return;
        }
        let k = index - cfg.n_inputs;
        let genes = &genome.node_genes[k * cfg.block()..(k + 1) * cfg.block()];
        let prim = fset.get(genes[0]);
        if prim.arity == 0 {
            out.push_str(prim.name);
            return;
        }
        out.push('(');
        out.push_str(prim.name);
        for &c in &genes[1..=prim.arity] {
            out.push(' ');
            render(genome, cfg, fset, c, out);
        }
        out.push(')');
    }

    let mut out = String::new();
    for (j, &o) in genome.output_genes.iter().enumerate() {
        if j > 0 {
            out.push_str("; ");
        }
        render(genome, cfg, fset, o, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::Domain;
    use crate::rng::derive_rng;

    fn example() -> (CgpGenome, CgpConfig, FunctionSet) {
        let fset = FunctionSet::from_names(Domain::Boolean, &["and", "or", "xor"]).unwrap();
        let cfg = CgpConfig {
            n_inputs: 2,
            n_outputs: 1,
            n_columns: 3,
            n_rows: 1,
            levels_back: 3,
            max_arity: 2,
        };
        let genome = CgpGenome {
            node_genes: vec![2, 0, 1, 0, 2, 1, 1, 2, 3],
            output_genes: vec![4],
        };
        (genome, cfg, fset)
    }

    #[test]
    fn hand_traced_genome() {
        let (g, cfg, fs) = example();
        assert!(g.validate(&cfg, &fs).is_ok());
        assert_eq!(decode_active(&g, &cfg, &fs).nodes(), &[2, 3, 4]);
        assert_eq!(evaluate_cgp(&g, &cfg, &fs, &[true, false]), vec![true]);
        assert_eq!(
            cgp_to_expression(&g, &cfg, &fs),
            "(or (xor x0 x1) (and (xor x0 x1) x1))"
        );
    }

    #[test]
    fn outputs_wired_to_inputs() {
        let (mut g, cfg, fs) = example();
        g.output_genes = vec![0];
        assert!(decode_active(&g, &cfg, &fs).is_empty());
        assert_eq!(evaluate_cgp(&g, &cfg, &fs, &[true, false]), vec![true]);
        assert_eq!(evaluate_cgp(&g, &cfg, &fs, &[false, true]), vec![false]);
        assert_eq!(cgp_to_expression(&g, &cfg, &fs), "x0");
    }

    #[test]
    fn single_column_connects_to_inputs_only() {
        let fs = FunctionSet::boolean_default();
        let cfg = CgpConfig {
            n_columns: 1,
            n_rows: 4,
            levels_back: 1,
            ..CgpConfig::new(3, 2, &fs)
        };
        let mut rng = derive_rng(1, 0);
        for _ in 0..100 {
            let g = init_random_cgp(&cfg, &fs, &mut rng);
            for k in 0..cfg.n_nodes() {
                for &c in &g.node_genes[k * 3 + 1..k * 3 + 3] {
                    assert!(c < 3);
                }
            }
        }
    }

    #[test]
    fn genome_length() {
        let fs = FunctionSet::boolean_default();
        let cfg = CgpConfig::new(4, 3, &fs);
        let mut rng = derive_rng(2, 0);
        let g = init_random_cgp(&cfg, &fs, &mut rng);
        assert_eq!(g.len(), 100 * 3 + 3);
        assert_eq!(g.len(), cfg.genome_len());
    }

    #[test]
    fn rate_zero_is_identity_and_rate_one_changes_every_gene() {
        let fs = FunctionSet::boolean_default();
        let cfg = CgpConfig::new(3, 2, &fs);
        let mut rng = derive_rng(3, 0);
        let g = init_random_cgp(&cfg, &fs, &mut rng);
        assert_eq!(point_mutation(&g, &cfg, &fs, 0.0, &mut rng), g);
        let m = point_mutation(&g, &cfg, &fs, 1.0, &mut rng);
        for pos in 0..g.len() {
            if cfg.gene_range(pos, fs.len()).count >= 2 {
                assert_ne!(g.gene(pos), m.gene(pos), "gene {pos}");
            }
        }
        assert!(m.validate(&cfg, &fs).is_ok());
    }

    #[test]
    fn levels_back_limits_connections() {
        let fs = FunctionSet::boolean_default();
        let cfg = CgpConfig {
            n_columns: 10,
            n_rows: 2,
            levels_back: 2,
            ..CgpConfig::new(2, 1, &fs)
        };
        // node in column 5 may use columns 3 and 4: indices 2 + 6 .. 2 + 10
        let r = cfg.gene_range(10 * 3 + 1, fs.len());
        let allowed: Vec<usize> = (0..r.count).map(|i| r.value(i)).collect();
        assert_eq!(allowed, vec![0, 1, 8, 9, 10, 11]);
    }
}
