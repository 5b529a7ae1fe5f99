use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Node label. All public interfaces are 1-based: valid labels are `1..=n`.
pub type Node = u32;

/// Largest `n` accepted by [`enumerate_trees`]; `n = 10` already streams
/// 10^8 trees, which is the most a desk run can reasonably consume.
pub const MAX_ENUM_TREES_N: Node = 10;

/// A labeled tree on nodes `1..=n`, immutable after construction.
///
/// The tree is rooted at node 1 on construction; parent and depth arrays are
/// precomputed so path queries run without allocating.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    n: Node,
    edges: Vec<(Node, Node)>,
    adj: Vec<Vec<Node>>,
    parent: Vec<Node>,
    depth: Vec<u32>,
}

impl Tree {
    /// Builds a tree from an edge list. Edges may come in any order and
    /// orientation; they are normalized to `a < b` and sorted. Rejects
    /// self-loops, out-of-range labels, duplicate edges, wrong edge counts,
    /// and disconnected inputs.
    pub fn from_edges<I>(n: Node, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        if n < 2 {
            return Err(Error::InvalidTree(format!(
                "need at least 2 nodes, got {n}"
            )));
        }
        let mut es: Vec<(Node, Node)> = Vec::with_capacity(n as usize - 1);
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidTree(format!("self-loop at node {a}")));
            }
            for x in [a, b] {
                if x < 1 || x > n {
                    return Err(Error::NodeOutOfRange { node: x, n });
                }
            }
            es.push((a.min(b), a.max(b)));
        }
        if es.len() != n as usize - 1 {
            return Err(Error::InvalidTree(format!(
                "expected {} edges for {} nodes, got {}",
                n - 1,
                n,
                es.len()
            )));
        }
        es.sort_unstable();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree("duplicate edge".to_string()));
        }

        let mut adj = vec![Vec::new(); n as usize + 1];
        for &(a, b) in &es {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut parent = vec![0 as Node; n as usize + 1];
        let mut depth = vec![0u32; n as usize + 1];
        let mut seen = vec![false; n as usize + 1];
        let mut queue = std::collections::VecDeque::with_capacity(n as usize);
        parent[1] = 1;
        seen[1] = true;
        queue.push_back(1 as Node);
        let mut visited = 0u32;
        while let Some(x) = queue.pop_front() {
            visited += 1;
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = x;
                    depth[y as usize] = depth[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        if visited != n {
            return Err(Error::InvalidTree(format!(
                "disconnected: reached {visited} of {n} nodes"
            )));
        }

        Ok(Tree {
            n,
            edges: es,
            adj,
            parent,
            depth,
        })
    }

    pub fn n(&self) -> Node {
        self.n
    }

    /// Edges normalized to `a < b`, in sorted order.
    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Node) -> &[Node] {
        assert!(v >= 1 && v <= self.n, "node {v} out of range 1..={}", self.n);
        &self.adj[v as usize]
    }

    pub fn contains_edge(&self, a: Node, b: Node) -> bool {
        if a == b || a < 1 || b < 1 || a > self.n || b > self.n {
            return false;
        }
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    fn check_node(&self, v: Node) -> Result<()> {
        if v < 1 || v > self.n {
            return Err(Error::NodeOutOfRange { node: v, n: self.n });
        }
        Ok(())
    }

    fn lca(&self, mut a: Node, mut b: Node) -> Node {
        while self.depth[a as usize] > self.depth[b as usize] {
            a = self.parent[a as usize];
        }
        while self.depth[b as usize] > self.depth[a as usize] {
            b = self.parent[b as usize];
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
        }
        a
    }

    /// The unique path from `u` to `v`, endpoints included, in path order.
    pub fn path_nodes(&self, u: Node, v: Node) -> Result<Vec<Node>> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::DegeneratePath(u));
        }
        let meet = self.lca(u, v);
        let mut path = Vec::new();
        let mut a = u;
        loop {
            path.push(a);
            if a == meet {
                break;
            }
            a = self.parent[a as usize];
        }
        let mut tail = Vec::new();
        let mut b = v;
        while b != meet {
            tail.push(b);
            b = self.parent[b as usize];
        }
        path.extend(tail.into_iter().rev());
        Ok(path)
    }

    /// Whether `x` lies on the path from `u` to `v`; endpoints count as on
    /// the path. Runs without allocating.
    pub fn is_on_path(&self, u: Node, x: Node, v: Node) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(x)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::DegeneratePath(u));
        }
        let meet = self.lca(u, v);
        let mut a = u;
        loop {
            if a == x {
                return Ok(true);
            }
            if a == meet {
                break;
            }
            a = self.parent[a as usize];
        }
        let mut b = v;
        loop {
            if b == x {
                return Ok(true);
            }
            if b == meet {
                break;
            }
            b = self.parent[b as usize];
        }
        Ok(false)
    }

    /// Parses the `"n;u1-v1,u2-v2,..."` line format produced by `Display`.
    pub fn from_edge_line(s: &str) -> Result<Self> {
        let (head, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidTree(format!("missing ';' in {s:?}")))?;
        let n: Node = head
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTree(format!("bad node count {head:?}")))?;
        let mut edges = Vec::new();
        if !rest.trim().is_empty() {
            for part in rest.split(',') {
                let (a, b) = part
                    .split_once('-')
                    .ok_or_else(|| Error::InvalidTree(format!("bad edge {part:?}")))?;
                let a: Node = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidTree(format!("bad endpoint {a:?}")))?;
                let b: Node = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidTree(format!("bad endpoint {b:?}")))?;
                edges.push((a, b));
            }
        }
        Tree::from_edges(n, edges)
    }
}

impl fmt::Display for Tree {
    /// `"n;u1-v1,u2-v2,..."` with edges normalized and sorted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

/// A code of `n - 2` entries from `1..=n`; codes are in bijection
/// with labeled trees on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrueferSequence {
    n: Node,
    entries: Vec<Node>,
}

impl PrueferSequence {
    pub fn new(n: Node, entries: Vec<Node>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSequence(format!(
                "need at least 2 nodes, got {n}"
            )));
        }
        if entries.len() != n as usize - 2 {
            return Err(Error::InvalidSequence(format!(
                "expected {} entries for {} nodes, got {}",
                n - 2,
                n,
                entries.len()
            )));
        }
        for &e in &entries {
            if e < 1 || e > n {
                return Err(Error::NodeOutOfRange { node: e, n });
            }
        }
        Ok(PrueferSequence { n, entries })
    }

    pub fn n(&self) -> Node {
        self.n
    }

    pub fn entries(&self) -> &[Node] {
        &self.entries
    }
}

impl fmt::Display for PrueferSequence {
    /// Entries joined by `-`; the empty code (`n = 2`) prints as `""`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Decodes a code into its tree. Total on validated sequences.
pub fn pruefer_decode(seq: &PrueferSequence) -> Tree {
    let n = seq.n;
    let mut degree = vec![1u32; n as usize + 1];
    for &s in &seq.entries {
        degree[s as usize] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Node>> = (1..=n)
        .filter(|&v| degree[v as usize] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n as usize - 1);
    for &s in &seq.entries {
        let Reverse(leaf) = leaves.pop().expect("a leaf remains at every step");
        edges.push((leaf, s));
        degree[s as usize] -= 1;
        if degree[s as usize] == 1 {
            leaves.push(Reverse(s));
        }
    }
    // Exactly two unprocessed leaves remain; they form the last edge.
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Tree::from_edges(n, edges).expect("decoding always yields a tree")
}

/// Encodes a tree into its code by repeatedly removing the smallest leaf
/// and recording its neighbor. Inverse of [`pruefer_decode`].
pub fn pruefer_encode(t: &Tree) -> PrueferSequence {
    let n = t.n();
    let mut degree: Vec<u32> = (0..=n as usize).map(|v| t.adj[v].len() as u32).collect();
    let mut removed = vec![false; n as usize + 1];
    let mut leaves: BinaryHeap<Reverse<Node>> = (1..=n)
        .filter(|&v| degree[v as usize] == 1)
        .map(Reverse)
        .collect();
    let mut entries = Vec::with_capacity(n.saturating_sub(2) as usize);
    for _ in 0..n.saturating_sub(2) {
        let Reverse(leaf) = leaves.pop().expect("a leaf remains at every step");
        let nb = t.adj[leaf as usize]
            .iter()
            .copied()
            .find(|&x| !removed[x as usize])
            .expect("a leaf has a live neighbor");
        entries.push(nb);
        removed[leaf as usize] = true;
        degree[nb as usize] -= 1;
        if degree[nb as usize] == 1 {
            leaves.push(Reverse(nb));
        }
    }
    PrueferSequence { n, entries }
}

/// Streams every labeled tree on `1..=n` in lexicographic order of codes.
pub struct TreeIter {
    n: Node,
    entries: Vec<Node>,
    done: bool,
}

impl Iterator for TreeIter {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let seq = PrueferSequence {
            n: self.n,
            entries: self.entries.clone(),
        };
        let tree = pruefer_decode(&seq);
        // Advance the code like an odometer over 1..=n.
        let mut i = self.entries.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.entries[i] < self.n {
                self.entries[i] += 1;
                for e in &mut self.entries[i + 1..] {
                    *e = 1;
                }
                break;
            }
        }
        Some(tree)
    }
}

/// All labeled trees on `1..=n`, in lexicographic code order.
/// Capped at `n <= 10`; see [`MAX_ENUM_TREES_N`].
pub fn enumerate_trees(n: Node) -> Result<TreeIter> {
    if n < 2 {
        return Err(Error::InvalidTree(format!(
            "need at least 2 nodes, got {n}"
        )));
    }
    if n > MAX_ENUM_TREES_N {
        return Err(Error::CapExceeded {
            what: "enumerate_trees",
            actual: n as u64,
            limit: MAX_ENUM_TREES_N as u64,
        });
    }
    Ok(TreeIter {
        n,
        entries: vec![1; n as usize - 2],
        done: false,
    })
}

/// `n^(n-2)`, the number of labeled trees on `1..=n`. Requires `n <= 10`
/// so the count stays comfortably inside `u64`.
pub fn tree_count(n: Node) -> u64 {
    assert!((2..=MAX_ENUM_TREES_N).contains(&n));
    (n as u64).pow(n - 2)
}

/// A uniformly random labeled tree: a uniformly random code, decoded.
/// Deterministic for a fixed `(n, seed)`.
pub fn random_tree(n: Node, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

/// Same as [`random_tree`] but drawing from a caller-supplied generator.
pub fn random_tree_with<R: Rng + ?Sized>(n: Node, rng: &mut R) -> Tree {
    assert!(n >= 2, "a tree needs at least 2 nodes");
    let entries: Vec<Node> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(1..=n))
        .collect();
    let seq = PrueferSequence { n, entries };
    pruefer_decode(&seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn tree(n: Node, edges: &[(Node, Node)]) -> Tree {
        Tree::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn decode_empty_code_gives_the_single_edge() {
        let seq = PrueferSequence::new(2, vec![]).unwrap();
        assert_eq!(pruefer_decode(&seq).edges(), &[(1, 2)]);
    }

    #[test]
    fn decode_known_codes() {
        let star = pruefer_decode(&PrueferSequence::new(4, vec![1, 1]).unwrap());
        assert_eq!(star.edges(), &[(1, 2), (1, 3), (1, 4)]);

        let path = pruefer_decode(&PrueferSequence::new(4, vec![2, 3]).unwrap());
        assert_eq!(path.edges(), &[(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn encode_inverts_decode_on_known_trees() {
        let star = tree(4, &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(pruefer_encode(&star).entries(), &[1, 1]);

        let path = tree(4, &[(1, 2), (2, 3), (3, 4)]);
        assert_eq!(pruefer_encode(&path).entries(), &[2, 3]);
    }

    #[test]
    fn enumeration_counts_match_cayley() {
        for n in 2..=7 {
            let count = enumerate_trees(n).unwrap().count() as u64;
            assert_eq!(count, tree_count(n), "n = {n}");
        }
        assert_eq!(tree_count(3), 3);
        assert_eq!(tree_count(4), 16);
        assert_eq!(tree_count(6), 1296);
    }

    #[test]
    fn decode_then_encode_is_identity_exhaustively() {
        for n in 2..=7 {
            let mut entries = vec![1 as Node; n as usize - 2];
            loop {
                let seq = PrueferSequence::new(n, entries.clone()).unwrap();
                assert_eq!(pruefer_encode(&pruefer_decode(&seq)), seq);
                let mut i = entries.len();
                loop {
                    if i == 0 {
                        entries.clear();
                        break;
                    }
                    i -= 1;
                    if entries[i] < n {
                        entries[i] += 1;
                        for e in &mut entries[i + 1..] {
                            *e = 1;
                        }
                        break;
                    }
                }
                if entries.is_empty() {
                    break;
                }
            }
        }
    }

    #[test]
    fn decode_then_encode_is_identity_at_ten_thousand_nodes() {
        use rand::SeedableRng;
        let n: Node = 10_000;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..3 {
            let entries: Vec<Node> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            let seq = PrueferSequence::new(n, entries).unwrap();
            assert_eq!(pruefer_encode(&pruefer_decode(&seq)), seq);
        }
    }

    #[test]
    fn malformed_codes_are_rejected() {
        assert!(PrueferSequence::new(4, vec![0, 1]).is_err());
        assert!(PrueferSequence::new(4, vec![1, 5]).is_err());
        assert!(PrueferSequence::new(4, vec![1]).is_err());
        assert!(PrueferSequence::new(1, vec![]).is_err());
    }

    #[test]
    fn malformed_trees_are_rejected() {
        assert!(Tree::from_edges(4, [(1, 2), (3, 4)]).is_err());
        assert!(Tree::from_edges(4, [(1, 2), (2, 3), (2, 3)]).is_err());
        assert!(Tree::from_edges(4, [(1, 2), (2, 3), (3, 3)]).is_err());
        assert!(Tree::from_edges(4, [(1, 2), (2, 3), (4, 5)]).is_err());
        assert!(Tree::from_edges(1, []).is_err());
    }

    #[test]
    fn path_queries_on_known_trees() {
        let path = tree(4, &[(1, 2), (2, 3), (3, 4)]);
        assert_eq!(path.path_nodes(1, 4).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(path.path_nodes(4, 1).unwrap(), vec![4, 3, 2, 1]);
        assert!(path.is_on_path(1, 3, 4).unwrap());
        assert!(!path.is_on_path(1, 4, 2).unwrap());
        assert!(path.is_on_path(1, 1, 2).unwrap());

        let star = tree(4, &[(1, 3), (2, 3), (3, 4)]);
        assert_eq!(star.path_nodes(1, 2).unwrap(), vec![1, 3, 2]);
    }

    #[test]
    fn degenerate_and_out_of_range_path_queries_error() {
        let t = tree(3, &[(1, 2), (2, 3)]);
        assert!(matches!(t.path_nodes(2, 2), Err(Error::DegeneratePath(2))));
        assert!(t.path_nodes(1, 4).is_err());
        assert!(t.is_on_path(1, 5, 2).is_err());
    }

    #[test]
    fn line_format_round_trips() {
        let t = tree(4, &[(2, 3), (1, 2), (3, 4)]);
        let line = t.to_string();
        assert_eq!(line, "4;1-2,2-3,3-4");
        assert_eq!(Tree::from_edge_line(&line).unwrap(), t);
        assert!(Tree::from_edge_line("4:1-2").is_err());
        assert!(Tree::from_edge_line("4;1-2,2-3,3").is_err());
    }

    #[test]
    fn random_trees_are_deterministic_per_seed() {
        assert_eq!(random_tree(30, 7), random_tree(30, 7));
        assert_ne!(random_tree(30, 7), random_tree(30, 8));
        assert_eq!(random_tree(2, 0).edges(), &[(1, 2)]);
    }

    #[test]
    fn random_tree_at_a_hundred_thousand_nodes_is_valid() {
        // Construction re-validates: edge count, connectivity, label range.
        let t = random_tree(100_000, 3);
        assert_eq!(t.edges().len(), 99_999);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        assert!(enumerate_trees(MAX_ENUM_TREES_N + 1).is_err());
        assert!(enumerate_trees(1).is_err());
    }

    proptest! {
        #[test]
        fn encode_decode_identity_on_random_codes(n in 2u32..=40, raw in proptest::collection::vec(1u32..=40, 0..=38)) {
            let entries: Vec<Node> = raw.iter().take(n as usize - 2).map(|&e| 1 + (e - 1) % n).collect();
            prop_assume!(entries.len() == n as usize - 2);
            let seq = PrueferSequence::new(n, entries).unwrap();
            prop_assert_eq!(pruefer_encode(&pruefer_decode(&seq)), seq);
        }

        #[test]
        fn paths_have_distinct_nodes_and_correct_endpoints(seed in 0u64..500, n in 2u32..=32) {
            let t = random_tree(n, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
            let u = rng.gen_range(1..=n);
            let mut v = rng.gen_range(1..=n);
            if v == u { v = if u == n { 1 } else { u + 1 }; }
            let path = t.path_nodes(u, v).unwrap();
            prop_assert_eq!(path[0], u);
            prop_assert_eq!(*path.last().unwrap(), v);
            let mut sorted = path.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), path.len());
            for w in path.windows(2) {
                prop_assert!(t.contains_edge(w[0], w[1]));
            }
        }
    }
}
