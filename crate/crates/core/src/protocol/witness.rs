use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Node, NodeSet, Tree};

/// A triple `(u, t, v)` of pairwise distinct nodes, stored with `u < v`.
/// It certifies disconnection of a set `S` in a tree `T` when `u, v` are in
/// `S`, `t` is not, and `t` lies on the tree path from `u` to `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    u: Node,
    t: Node,
    v: Node,
}

impl Witness {
    /// Canonicalizes the endpoints to `u < v`; rejects repeated nodes.
    pub fn new(u: Node, t: Node, v: Node) -> Result<Self> {
        if u == v || u == t || v == t {
            return Err(Error::InvalidWitness(format!(
                "nodes must be pairwise distinct, got ({u}, {t}, {v})"
            )));
        }
        Ok(Witness {
            u: u.min(v),
            t,
            v: u.max(v),
        })
    }

    pub fn u(&self) -> Node {
        self.u
    }

    /// The node claimed to lie outside the set, on the path between the
    /// endpoints.
    pub fn t(&self) -> Node {
        self.t
    }

    pub fn v(&self) -> Node {
        self.v
    }

    /// `|t - u| + |t - v|`, the quantity the prover minimizes.
    pub fn mu(&self) -> u32 {
        self.t.abs_diff(self.u) + self.t.abs_diff(self.v)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.t, self.v)
    }
}

/// The two witness conditions on a raw triple, total over arbitrary node
/// triples: degenerate triples never qualify, out-of-range nodes never
/// qualify.
pub fn is_witness_triple(s: &NodeSet, tree: &Tree, u: Node, x: Node, v: Node) -> bool {
    u != v
        && s.contains(u)
        && s.contains(v)
        && !s.contains(x)
        && tree.is_on_path(u, x, v).unwrap_or(false)
}

pub fn is_witness(s: &NodeSet, tree: &Tree, w: &Witness) -> bool {
    is_witness_triple(s, tree, w.u, w.t, w.v)
}

/// Whether any witness exists. Scans member pairs and walks their tree
/// paths directly, independent of the union-find oracle.
pub fn witness_exists(s: &NodeSet, tree: &Tree) -> bool {
    let members: Vec<Node> = s.iter().collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let path = tree.path_nodes(u, v).expect("members are distinct, in range");
            if path.iter().any(|&x| !s.contains(x)) {
                return true;
            }
        }
    }
    false
}

/// Every witness for `(s, tree)`, in ascending `(u, t, v)` order.
pub fn all_witnesses(s: &NodeSet, tree: &Tree) -> Vec<Witness> {
    let members: Vec<Node> = s.iter().collect();
    let mut out = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let path = tree.path_nodes(u, v).expect("members are distinct, in range");
            for &x in &path {
                if !s.contains(x) {
                    out.push(Witness { u, t: x, v });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The set-holder's side of the witness protocol: both endpoints in the set,
/// the middle node outside it.
pub fn naive_alice_accept(s: &NodeSet, w: &Witness) -> bool {
    s.contains(w.u) && s.contains(w.v) && !s.contains(w.t)
}

/// The tree-holder's side of the witness protocol: the middle node lies on
/// the path between the endpoints. Out-of-range nodes are rejected.
pub fn naive_bob_accept(tree: &Tree, w: &Witness) -> bool {
    tree.is_on_path(w.u, w.t, w.v).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_cut_sets, enumerate_trees, f_oracle};

    fn path4() -> Tree {
        Tree::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn constructor_canonicalizes_and_validates() {
        let w = Witness::new(3, 2, 1).unwrap();
        assert_eq!((w.u(), w.t(), w.v()), (1, 2, 3));
        assert!(Witness::new(1, 1, 2).is_err());
        assert!(Witness::new(1, 2, 1).is_err());
        assert!(Witness::new(2, 1, 2).is_err());
    }

    #[test]
    fn witness_judgments_on_known_instances() {
        let t = path4();
        let s13 = NodeSet::new(4, [1, 3]).unwrap();
        assert!(is_witness(&s13, &t, &Witness::new(1, 2, 3).unwrap()));

        let s123 = NodeSet::new(4, [1, 2, 3]).unwrap();
        assert!(!is_witness(&s123, &t, &Witness::new(1, 2, 3).unwrap()));

        let s14 = NodeSet::new(4, [1, 4]).unwrap();
        assert!(is_witness(&s14, &t, &Witness::new(1, 2, 4).unwrap()));
        assert!(is_witness(&s14, &t, &Witness::new(1, 3, 4).unwrap()));

        let s24 = NodeSet::new(4, [2, 4]).unwrap();
        assert!(!is_witness(&s24, &t, &Witness::new(2, 1, 4).unwrap()));
    }

    #[test]
    fn mu_values() {
        assert_eq!(Witness::new(1, 3, 2).unwrap().mu(), 3);
        assert_eq!(Witness::new(1, 2, 3).unwrap().mu(), 2);
        assert_eq!(Witness::new(2, 7, 4).unwrap().mu(), 8);
    }

    #[test]
    fn witness_triples_are_symmetric_in_the_endpoints() {
        for n in 3..=5 {
            for t in enumerate_trees(n).unwrap() {
                for s in enumerate_cut_sets(n).unwrap() {
                    for u in 1..=n {
                        for x in 1..=n {
                            for v in 1..=n {
                                assert_eq!(
                                    is_witness_triple(&s, &t, u, x, v),
                                    is_witness_triple(&s, &t, v, x, u)
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn existence_matches_the_oracle_exhaustively() {
        for n in 3..=5 {
            for t in enumerate_trees(n).unwrap() {
                for s in enumerate_cut_sets(n).unwrap() {
                    assert_eq!(witness_exists(&s, &t), f_oracle(&s, &t));
                }
            }
        }
    }

    #[test]
    fn joint_naive_acceptance_is_exactly_witnesshood() {
        for n in 3..=4 {
            for t in enumerate_trees(n).unwrap() {
                for s in enumerate_cut_sets(n).unwrap() {
                    for u in 1..=n {
                        for x in 1..=n {
                            for v in 1..=n {
                                if u == v || x == u || x == v {
                                    continue;
                                }
                                let w = Witness::new(u, x, v).unwrap();
                                let joint = naive_alice_accept(&s, &w) && naive_bob_accept(&t, &w);
                                assert_eq!(joint, is_witness(&s, &t, &w));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_witnesses_is_sorted_and_complete() {
        let t = path4();
        let s14 = NodeSet::new(4, [1, 4]).unwrap();
        let ws = all_witnesses(&s14, &t);
        assert_eq!(
            ws,
            vec![Witness::new(1, 2, 4).unwrap(), Witness::new(1, 3, 4).unwrap()]
        );
        let s123 = NodeSet::new(4, [1, 2, 3]).unwrap();
        assert!(all_witnesses(&s123, &t).is_empty());
    }
}
