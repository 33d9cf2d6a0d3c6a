use rand::Rng;
use serde::{Deserialize, Serialize};

use super::tree::{TreeForest, TreeNode};
use crate::error::{GpError, Result};
use crate::primitives::{Domain, FunctionSet};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitMethod {
    Grow,
    Full,
}

impl InitMethod {
    fn other(self) -> Self {
        match self {
            InitMethod::Grow => InitMethod::Full,
            InitMethod::Full => InitMethod::Grow,
        }
    }
}

/// Shape and variation settings of a tree genome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    pub n_inputs: usize,
    pub n_outputs: usize,
    pub max_depth: usize,
    pub init_depth_min: usize,
    pub init_depth_max: usize,
    /// Depth cap of subtrees grown by mutation.
    pub mutation_depth: usize,
    /// Whether constant terminals may be created.
    pub constants: bool,
    /// Probability that a terminal is a constant, when enabled.
    pub constant_prob: f64,
    pub crossover_retries: usize,
}

impl TreeConfig {
    /// Defaults for a domain: ephemeral constants on for reals, off for booleans.
    pub fn new(n_inputs: usize, n_outputs: usize, domain: Domain) -> Self {
        TreeConfig {
            n_inputs,
            n_outputs,
            max_depth: 12,
            init_depth_min: 2,
            init_depth_max: 6,
            mutation_depth: 4,
            constants: domain == Domain::Real,
            constant_prob: 0.2,
            crossover_retries: 3,
        }
    }
}

struct Builder<'a> {
    cfg: &'a TreeConfig,
    fset: &'a FunctionSet,
    functions: Vec<usize>,
    terminals: Vec<usize>,
}

impl<'a> Builder<'a> {
    fn new(cfg: &'a TreeConfig, fset: &'a FunctionSet) -> Self {
        Builder {
            cfg,
            fset,
            functions: fset.function_ids(),
            terminals: fset.terminal_ids(),
        }
    }

    fn leaf_choices(&self) -> usize {
        self.cfg.n_inputs + self.terminals.len() + usize::from(self.cfg.constants)
    }

    fn leaf<T: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> TreeNode<T> {
        let plain = self.cfg.n_inputs + self.terminals.len();
        if self.cfg.constants && (plain == 0 || rng.gen_bool(self.cfg.constant_prob)) {
            let value = match self.fset.domain() {
                Domain::Real => rng.gen_range(-1.0..=1.0),
                Domain::Boolean => f64::from(u8::from(rng.gen_bool(0.5))),
            };
            return TreeNode::constant(T::from_f64_lossy(value));
        }
        let pick = rng.gen_range(0..plain);
        if pick < self.cfg.n_inputs {
            TreeNode::input(pick)
        } else {
            TreeNode::function(self.terminals[pick - self.cfg.n_inputs], Vec::new())
        }
    }

    fn function_node<T: Scalar, R: Rng + ?Sized>(
        &self,
        method: InitMethod,
        remaining: usize,
        rng: &mut R,
    ) -> TreeNode<T> {
        let id = self.functions[rng.gen_range(0..self.functions.len())];
        let children = (0..self.fset.get(id).arity)
            .map(|_| self.build(method, remaining - 1, rng))
            .collect();
        TreeNode::function(id, children)
    }

    /// Full trees have every leaf at exactly `depth`; grow trees at most `depth`.
    fn build<T: Scalar, R: Rng + ?Sized>(
        &self,
        method: InitMethod,
        depth: usize,
        rng: &mut R,
    ) -> TreeNode<T> {
        if depth == 0 || self.functions.is_empty() {
            return self.leaf(rng);
        }
        match method {
            InitMethod::Full => self.function_node(method, depth, rng),
            InitMethod::Grow => {
                let leaves = self.leaf_choices();
                if rng.gen_range(0..leaves + self.functions.len()) < leaves {
                    self.leaf(rng)
                } else {
                    self.function_node(method, depth, rng)
                }
            }
        }
    }
}

/// Builds one tree with the given method and target depth.
pub fn build_tree<T: Scalar, R: Rng + ?Sized>(
    cfg: &TreeConfig,
    fset: &FunctionSet,
    method: InitMethod,
    depth: usize,
    rng: &mut R,
) -> Result<TreeNode<T>> {
    let builder = Builder::new(cfg, fset);
    if depth > 0 && builder.functions.is_empty() {
        return Err(GpError::config(
            "function set has no primitive of arity ≥ 1 but a tree deeper than 0 was requested",
        ));
    }
    if builder.leaf_choices() == 0 {
        return Err(GpError::config("no terminals available: no inputs, constants or zero-arity primitives"));
    }
    Ok(builder.build(method, depth, rng))
}

/// Ramped half-and-half forest. Trees alternate between the two methods,
/// tree 0 using `first`; each target depth is uniform in `[depth_min, depth_max]`.
pub fn init_ramped<T: Scalar, R: Rng + ?Sized>(
    cfg: &TreeConfig,
    fset: &FunctionSet,
    depth_min: usize,
    depth_max: usize,
    first: InitMethod,
    rng: &mut R,
) -> Result<TreeForest<T>> {
    if depth_min > depth_max || depth_max > cfg.max_depth {
        return Err(GpError::config(format!(
            "initial depth range [{depth_min}, {depth_max}] must be ordered and within max_depth {}",
            cfg.max_depth
        )));
    }
    let mut method = first;
    let mut trees = Vec::with_capacity(cfg.n_outputs);
    for _ in 0..cfg.n_outputs {
        let depth = rng.gen_range(depth_min..=depth_max);
        trees.push(build_tree(cfg, fset, method, depth, rng)?);
        method = method.other();
    }
    Ok(TreeForest {
        trees,
        max_depth: cfg.max_depth,
    })
}

/// Replaces preorder node `point_a` of tree `tree` in `a` with a copy of node
/// `point_b` of the same tree in `b`. `None` when the result would exceed the
/// depth cap or a point is out of range.
pub fn subtree_crossover_at<T: Scalar>(
    a: &TreeForest<T>,
    b: &TreeForest<T>,
    tree: usize,
    point_a: usize,
    point_b: usize,
) -> Option<TreeForest<T>> {
    let (_, depth_a) = a.trees.get(tree)?.locate(point_a)?;
    let donor = b.trees.get(tree)?.nth(point_b)?;
    if depth_a + donor.depth() > a.max_depth {
        return None;
    }
    let mut child = a.clone();
    *child.trees[tree].nth_mut(point_a)? = donor.clone();
    Some(child)
}

/// Subtree crossover within one uniformly chosen output tree. After the
/// configured number of depth-violating retries the child is a copy of `a`.
pub fn subtree_crossover<T: Scalar, R: Rng + ?Sized>(
    cfg: &TreeConfig,
    a: &TreeForest<T>,
    b: &TreeForest<T>,
    rng: &mut R,
) -> Result<TreeForest<T>> {
    if a.trees.len() != b.trees.len() || a.trees.is_empty() {
        return Err(GpError::config(format!(
            "cannot cross forests of {} and {} trees",
            a.trees.len(),
            b.trees.len()
        )));
    }
    let tree = rng.gen_range(0..a.trees.len());
    let size_a = a.trees[tree].size();
    let size_b = b.trees[tree].size();
    for _ in 0..=cfg.crossover_retries {
        let pa = rng.gen_range(0..size_a);
        let pb = rng.gen_range(0..size_b);
        if let Some(child) = subtree_crossover_at(a, b, tree, pa, pb) {
            return Ok(child);
        }
    }
    Ok(a.clone())
}

/// Replaces one uniformly chosen node with a freshly grown subtree that keeps
/// the tree within its depth cap.
pub fn subtree_mutation<T: Scalar, R: Rng + ?Sized>(
    cfg: &TreeConfig,
    fset: &FunctionSet,
    a: &TreeForest<T>,
    rng: &mut R,
) -> TreeForest<T> {
    let mut child = a.clone();
    if child.trees.is_empty() {
        return child;
    }
    let tree = rng.gen_range(0..child.trees.len());
    let size = child.trees[tree].size();
    let point = rng.gen_range(0..size);
    let (_, depth) = child.trees[tree].locate(point).expect("point in range");
    let room = child.max_depth.saturating_sub(depth).min(cfg.mutation_depth);
    let target = rng.gen_range(0..=room);
    let builder = Builder::new(cfg, fset);
    let replacement = builder.build(InitMethod::Grow, target, rng);
    *child.trees[tree].nth_mut(point).expect("point in range") = replacement;
    child
}
