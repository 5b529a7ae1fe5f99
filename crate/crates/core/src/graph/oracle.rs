use crate::graph::nodeset::NodeSet;
use crate::graph::tree::Tree;

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(len: usize) -> Self {
        Dsu {
            parent: (0..len as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            // Path halving.
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Number of connected components of the forest obtained by keeping only the
/// members of `s` and the tree edges with both endpoints in `s`.
pub fn induced_components(t: &Tree, s: &NodeSet) -> u32 {
    let mut dsu = Dsu::new(t.n() as usize + 1);
    for &(a, b) in t.edges() {
        if s.contains(a) && s.contains(b) {
            dsu.union(a, b);
        }
    }
    s.iter().filter(|&v| dsu.find(v) == v).count() as u32
}

/// The ground-truth predicate: whether the sub-forest of `t` induced by `s`
/// is disconnected.
pub fn f_oracle(s: &NodeSet, t: &Tree) -> bool {
    induced_components(t, s) > 1
}
