use std::fmt::Write;

use crate::primitives::{Domain, FunctionSet};
use crate::scalar::{Scalar, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind<T> {
    /// Index into the function set.
    Function(usize),
    InputVar(usize),
    Constant(T),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeNode<T> {
    pub kind: NodeKind<T>,
    pub children: Vec<TreeNode<T>>,
}

impl<T: Scalar> TreeNode<T> {
    pub fn input(index: usize) -> Self {
        TreeNode {
            kind: NodeKind::InputVar(index),
            children: Vec::new(),
        }
    }

    pub fn constant(value: T) -> Self {
        TreeNode {
            kind: NodeKind::Constant(value),
            children: Vec::new(),
        }
    }

    pub fn function(id: usize, children: Vec<TreeNode<T>>) -> Self {
        TreeNode {
            kind: NodeKind::Function(id),
            children,
        }
    }

    /// Depth of the tree rooted here; a single node has depth 0.
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(TreeNode::size).sum::<usize>()
    }

    pub fn evaluate<V: Value>(&self, fset: &FunctionSet, inputs: &[V]) -> V {
        match &self.kind {
            NodeKind::InputVar(i) => inputs[*i],
            NodeKind::Constant(c) => V::from_scalar(*c),
            NodeKind::Function(id) => {
                let op = fset.get(*id).op;
                match self.children.as_slice() {
                    [] => V::apply(op, &[]),
                    [a] => V::apply(op, &[a.evaluate(fset, inputs)]),
                    [a, b] => V::apply(op, &[a.evaluate(fset, inputs), b.evaluate(fset, inputs)]),
                    many => {
                        let args: Vec<V> = many.iter().map(|c| c.evaluate(fset, inputs)).collect();
                        V::apply(op, &args)
                    }
                }
            }
        }
    }

    /// Node at preorder position `index`.
    pub fn nth(&self, index: usize) -> Option<&TreeNode<T>> {
        self.locate(index).map(|(node, _)| node)
    }

    /// Node at preorder position `index` with its depth below this root.
    pub fn locate(&self, mut index: usize) -> Option<(&TreeNode<T>, usize)> {
        let mut node = self;
        let mut depth = 0;
        'descend: loop {
            if index == 0 {
                return Some((node, depth));
            }
            index -= 1;
            for child in &node.children {
                let size = child.size();
                if index < size {
                    node = child;
                    depth += 1;
                    continue 'descend;
                }
                index -= size;
            }
            return None;
        }
    }

    pub fn nth_mut(&mut self, mut index: usize) -> Option<&mut TreeNode<T>> {
        if index == 0 {
            return Some(self);
        }
        index -= 1;
        for child in &mut self.children {
            let size = child.size();
            if index < size {
                return child.nth_mut(index);
            }
            index -= size;
        }
        None
    }

    pub fn write_expression(&self, fset: &FunctionSet, out: &mut String) {
        match &self.kind {
            NodeKind::InputVar(i) => {
                let _ = write!(out, "x{i}");
            }
            NodeKind::Constant(c) => match fset.domain() {
                Domain::Real => {
                    let _ = write!(out, "{c:?}");
                }
                Domain::Boolean => out.push_str(if *c != T::zero() { "true" } else { "false" }),
            },
            NodeKind::Function(id) => {
                let name = fset.get(*id).name;
                if self.children.is_empty() {
                    out.push_str(name);
                    return;
                }
                out.push('(');
                out.push_str(name);
                for c in &self.children {
                    out.push(' ');
                    c.write_expression(fset, out);
                }
                out.push(')');
            }
        }
    }

    fn check(&self, fset: &FunctionSet, n_inputs: usize) -> Result<(), String> {
        match &self.kind {
            NodeKind::InputVar(i) if *i >= n_inputs => {
                return Err(format!("input x{i} out of range (n_inputs = {n_inputs})"))
            }
            NodeKind::Function(id) if *id >= fset.len() => {
                return Err(format!("function id {id} out of range"))
            }
            NodeKind::Function(id) if fset.get(*id).arity != self.children.len() => {
                return Err(format!(
                    "`{}` has {} children, arity is {}",
                    fset.get(*id).name,
                    self.children.len(),
                    fset.get(*id).arity
                ))
            }
            NodeKind::InputVar(_) | NodeKind::Constant(_) if !self.children.is_empty() => {
                return Err("leaf node with children".into())
            }
            _ => {}
        }
        self.children.iter().try_for_each(|c| c.check(fset, n_inputs))
    }
}

/// Tree genome: one independent tree per program output.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeForest<T> {
    pub trees: Vec<TreeNode<T>>,
    pub max_depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForestMetrics {
    pub depth: usize,
    pub node_count: usize,
}

impl<T: Scalar> TreeForest<T> {
    pub fn evaluate<V: Value>(&self, fset: &FunctionSet, inputs: &[V]) -> Vec<V> {
        self.trees.iter().map(|t| t.evaluate(fset, inputs)).collect()
    }

    pub fn metrics(&self) -> ForestMetrics {
        ForestMetrics {
            depth: self.trees.iter().map(TreeNode::depth).max().unwrap_or(0),
            node_count: self.trees.iter().map(TreeNode::size).sum(),
        }
    }

    /// Prefix s-expressions, one per output, joined with `"; "`.
    pub fn to_expression_string(&self, fset: &FunctionSet) -> String {
        let mut out = String::new();
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            t.write_expression(fset, &mut out);
        }
        out
    }

    /// Structural check: arity-exact children, depth cap, ids and input indices in range.
    pub fn validate(&self, fset: &FunctionSet, n_inputs: usize, n_outputs: usize) -> Result<(), String> {
        if self.trees.len() != n_outputs {
            return Err(format!("{} trees for {n_outputs} outputs", self.trees.len()));
        }
        for (i, t) in self.trees.iter().enumerate() {
            if t.depth() > self.max_depth {
                return Err(format!("tree {i} has depth {} > {}", t.depth(), self.max_depth));
            }
            t.check(fset, n_inputs).map_err(|e| format!("tree {i}: {e}"))?;
        }
        Ok(())
    }
}

pub fn evaluate_forest<T: Scalar, V: Value>(
    forest: &TreeForest<T>,
    fset: &FunctionSet,
    inputs: &[V],
) -> Vec<V> {
    forest.evaluate(fset, inputs)
}

pub fn forest_metrics<T: Scalar>(forest: &TreeForest<T>) -> ForestMetrics {
    forest.metrics()
}

pub fn to_expression_string<T: Scalar>(forest: &TreeForest<T>, fset: &FunctionSet) -> String {
    forest.to_expression_string(fset)
}
