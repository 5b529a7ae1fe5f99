//! Labeled trees, node subsets, and the ground-truth connectivity oracle.

mod nodeset;
mod oracle;
mod tree;

pub use nodeset::{
    cut_set_count, enumerate_cut_sets, CutSetIter, Members, NodeSet, MAX_CUT_SET_N,
};
pub use oracle::{f_oracle, induced_components};
pub use tree::{
    enumerate_trees, pruefer_decode, pruefer_encode, random_tree, random_tree_with, tree_count,
    Node, PrueferSequence, Tree, TreeIter, MAX_ENUM_TREES_N,
};
