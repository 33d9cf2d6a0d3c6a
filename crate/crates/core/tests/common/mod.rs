//! Reference interpreters and random instance builders shared by the
//! integration tests. Everything here is written against primitive names,
//! not the library's own operator tables.
#![allow(dead_code)]

use crossgp::cgp::{CgpConfig, CgpGenome};
use crossgp::primitives::FunctionSet;
use crossgp::tgp::{NodeKind, TreeNode};
use rand::Rng;

pub fn bool_by_name(name: &str, a: &[bool]) -> bool {
    match name {
        "and" => a[0] && a[1],
        "or" => a[0] || a[1],
        "nand" => !(a[0] && a[1]),
        "nor" => !(a[0] || a[1]),
        "xor" => a[0] != a[1],
        "xnor" => a[0] == a[1],
        "not" => !a[0],
        "true" => true,
        "false" => false,
        other => panic!("no reference semantics for `{other}`"),
    }
}

pub fn real_by_name(name: &str, a: &[f64]) -> f64 {
    match name {
        "add" => a[0] + a[1],
        "sub" => a[0] - a[1],
        "mul" => a[0] * a[1],
        "div" => {
            if a[1].abs() < 1e-9 {
                1.0
            } else {
                a[0] / a[1]
            }
        }
        "sin" => a[0].sin(),
        "cos" => a[0].cos(),
        "exp" => a[0].exp(),
        "log" => {
            if a[0] == 0.0 {
                0.0
            } else {
                a[0].abs().ln()
            }
        }
        "sqrt" => a[0].abs().sqrt(),
        "neg" => -a[0],
        "one" => 1.0,
        other => panic!("no reference semantics for `{other}`"),
    }
}

pub fn tree_bool(node: &TreeNode<f64>, fset: &FunctionSet, x: &[bool]) -> bool {
    match &node.kind {
        NodeKind::InputVar(i) => x[*i],
        NodeKind::Constant(c) => *c != 0.0,
        NodeKind::Function(id) => {
            let args: Vec<bool> = node.children.iter().map(|c| tree_bool(c, fset, x)).collect();
            bool_by_name(fset.get(*id).name, &args)
        }
    }
}

pub fn tree_real(node: &TreeNode<f64>, fset: &FunctionSet, x: &[f64]) -> f64 {
    match &node.kind {
        NodeKind::InputVar(i) => x[*i],
        NodeKind::Constant(c) => *c,
        NodeKind::Function(id) => {
            let args: Vec<f64> = node.children.iter().map(|c| tree_real(c, fset, x)).collect();
            real_by_name(fset.get(*id).name, &args)
        }
    }
}

/// Evaluates every node of the grid in address order, active or not.
pub fn cgp_full_graph(genome: &CgpGenome, cfg: &CgpConfig, fset: &FunctionSet, x: &[bool]) -> Vec<bool> {
    let block = 1 + cfg.max_arity;
    let mut values: Vec<bool> = x.to_vec();
    for k in 0..cfg.n_columns * cfg.n_rows {
        let g = &genome.node_genes[k * block..(k + 1) * block];
        let p = fset.get(g[0]);
        let args: Vec<bool> = g[1..1 + p.arity].iter().map(|&c| values[c]).collect();
        values.push(bool_by_name(p.name, &args));
    }
    genome.output_genes.iter().map(|&o| values[o]).collect()
}

/// Independent structural check of a CGP genome: every connection gene
/// addresses an input or a node in one of the `levels_back` preceding columns.
pub fn cgp_structurally_valid(genome: &CgpGenome, cfg: &CgpConfig, fset: &FunctionSet) -> bool {
    let block = 1 + cfg.max_arity;
    let n_nodes = cfg.n_columns * cfg.n_rows;
    if genome.node_genes.len() != n_nodes * block || genome.output_genes.len() != cfg.n_outputs {
        return false;
    }
    for k in 0..n_nodes {
        let g = &genome.node_genes[k * block..(k + 1) * block];
        if g[0] >= fset.len() {
            return false;
        }
        let column = k / cfg.n_rows;
        for &c in &g[1..] {
            if c < cfg.n_inputs {
                continue;
            }
            let src = c - cfg.n_inputs;
            if src >= n_nodes {
                return false;
            }
            let src_col = src / cfg.n_rows;
            if src_col >= column || column - src_col > cfg.levels_back {
                return false;
            }
        }
    }
    genome.output_genes.iter().all(|&o| o < cfg.n_inputs + n_nodes)
}

/// Independent structural check of a tree: arities and indices.
pub fn tree_well_formed(node: &TreeNode<f64>, fset: &FunctionSet, n_inputs: usize) -> bool {
    match &node.kind {
        NodeKind::InputVar(i) => *i < n_inputs && node.children.is_empty(),
        NodeKind::Constant(c) => c.is_finite() && node.children.is_empty(),
        NodeKind::Function(id) => {
            *id < fset.len()
                && fset.get(*id).arity == node.children.len()
                && node.children.iter().all(|c| tree_well_formed(c, fset, n_inputs))
        }
    }
}

pub fn tree_depth(node: &TreeNode<f64>) -> usize {
    node.children.iter().map(|c| 1 + tree_depth(c)).max().unwrap_or(0)
}

pub fn random_cgp_config<R: Rng>(rng: &mut R, n_inputs: usize, n_outputs: usize, fset: &FunctionSet) -> CgpConfig {
    let n_columns = rng.gen_range(1..=30);
    CgpConfig {
        n_inputs,
        n_outputs,
        n_columns,
        n_rows: rng.gen_range(1..=3),
        levels_back: rng.gen_range(1..=n_columns),
        max_arity: fset.max_arity(),
    }
}

/// Random Boolean function set drawn from the binary and unary primitives.
pub fn random_bool_fset<R: Rng>(rng: &mut R) -> FunctionSet {
    let all = ["and", "or", "nand", "nor", "xor", "xnor", "not"];
    let mut names: Vec<&str> = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if !names.iter().any(|n| *n != "not") {
        names.push("nand");
    }
    FunctionSet::from_names(crossgp::Domain::Boolean, &names).unwrap()
}

/// Bits of `row` from `lo` (inclusive), `n` of them, least significant first.
pub fn bits(row: u64, lo: usize, n: usize) -> Vec<bool> {
    (lo..lo + n).map(|i| (row >> i) & 1 == 1).collect()
}

/// Ripple-carry addition of two little-endian bit vectors with carry-in.
pub fn ripple_add(a: &[bool], b: &[bool], cin: bool) -> Vec<bool> {
    let mut carry = cin;
    let mut out = Vec::with_capacity(a.len() + 1);
    for (&x, &y) in a.iter().zip(b) {
        out.push(x ^ y ^ carry);
        carry = (x && y) || (carry && (x ^ y));
    }
    out.push(carry);
    out
}

/// Shift-and-add multiplication on bit vectors; result has `a.len() + b.len()` bits.
pub fn shift_add_mul(a: &[bool], b: &[bool]) -> Vec<bool> {
    let width = a.len() + b.len();
    let mut acc = vec![false; width];
    for (shift, &bit) in b.iter().enumerate() {
        if !bit {
            continue;
        }
        let mut addend = vec![false; width];
        addend[shift..shift + a.len()].copy_from_slice(a);
        acc = ripple_add(&acc, &addend, false)[..width].to_vec();
    }
    acc
}

/// Most-significant-first comparison: (lt, eq, gt).
pub fn compare_bits(a: &[bool], b: &[bool]) -> (bool, bool, bool) {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return (b[i], false, a[i]);
        }
    }
    (false, true, false)
}
