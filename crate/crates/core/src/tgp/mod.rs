//! Tree-based GP: forests of parse trees, one per output.

mod model;
mod ops;
mod tree;

pub use model::{ForestProgram, TreeModel};
pub use ops::{
    build_tree, init_ramped, subtree_crossover, subtree_crossover_at, subtree_mutation, InitMethod,
    TreeConfig,
};
pub use tree::{
    evaluate_forest, forest_metrics, to_expression_string, ForestMetrics, NodeKind, TreeForest,
    TreeNode,
};
