use std::fmt;

use rand::Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::graph::tree::Node;

/// Largest `n` accepted by [`enumerate_cut_sets`]; the iterator scans all
/// `2^n` bitmasks, so `n = 20` (about a million masks) is the practical limit.
pub const MAX_CUT_SET_N: Node = 20;

/// A proper subset `S` of `1..=n` with at least two members, stored as a
/// bitmask. One inline 64-bit word covers `n <= 64`; larger `n` spills the
/// mask to the heap, so no fixed upper bound on `n` applies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeSet {
    n: Node,
    words: SmallVec<[u64; 1]>,
}

fn word_count(n: Node) -> usize {
    (n as usize).div_ceil(64)
}

impl NodeSet {
    /// Builds the set from its members. Rejects out-of-range members, sets
    /// with fewer than two members, and the full set `1..=n`.
    pub fn new<I>(n: Node, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Node>,
    {
        if n < 3 {
            return Err(Error::InvalidNodeSet(format!(
                "no valid sets exist for n = {n}; need n >= 3"
            )));
        }
        let mut words: SmallVec<[u64; 1]> = smallvec![0; word_count(n)];
        for m in members {
            if m < 1 || m > n {
                return Err(Error::NodeOutOfRange { node: m, n });
            }
            let bit = (m - 1) as usize;
            words[bit / 64] |= 1u64 << (bit % 64);
        }
        let size: u32 = words.iter().map(|w| w.count_ones()).sum();
        if size < 2 {
            return Err(Error::InvalidNodeSet(format!(
                "need at least 2 members, got {size}"
            )));
        }
        if size == n {
            return Err(Error::InvalidNodeSet(
                "the full node set is excluded".to_string(),
            ));
        }
        Ok(NodeSet { n, words })
    }

    pub(crate) fn from_words(n: Node, words: SmallVec<[u64; 1]>) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        let size: u32 = words.iter().map(|w| w.count_ones()).sum();
        debug_assert!(size >= 2 && size < n);
        NodeSet { n, words }
    }

    pub fn n(&self) -> Node {
        self.n
    }

    /// Number of members; always in `2..n`.
    pub fn size(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn contains(&self, v: Node) -> bool {
        if v < 1 || v > self.n {
            return false;
        }
        let bit = (v - 1) as usize;
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// A uniformly random valid set: masks are drawn until one has between
    /// 2 and `n - 1` members. Deterministic for a fixed generator state.
    pub fn random<R: Rng + ?Sized>(n: Node, rng: &mut R) -> Self {
        assert!(n >= 3, "no valid sets exist below n = 3");
        loop {
            let mut words: SmallVec<[u64; 1]> = smallvec![0; word_count(n)];
            for w in words.iter_mut() {
                *w = rng.gen();
            }
            let tail = n as usize % 64;
            if tail != 0 {
                let last = words.len() - 1;
                words[last] &= (1u64 << tail) - 1;
            }
            let size: u32 = words.iter().map(|w| w.count_ones()).sum();
            if size >= 2 && size < n {
                return NodeSet { n, words };
            }
        }
    }
}

impl fmt::Display for NodeSet {
    /// `{1,2,4}` with members ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = Node;

    fn next(&mut self) -> Option<Node> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros();
        self.current &= self.current - 1;
        Some(self.index as Node * 64 + bit + 1)
    }
}

/// Streams every valid set for `n` in ascending bitmask order, so sets are
/// ordered by their largest member last: `{1,2}, {1,3}, {2,3}, {1,4}, ...`
pub struct CutSetIter {
    n: Node,
    mask: u64,
    end: u64,
}

impl Iterator for CutSetIter {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            let size = mask.count_ones();
            if size >= 2 && size < self.n {
                return Some(NodeSet::from_words(self.n, smallvec![mask]));
            }
        }
        None
    }
}

/// All proper subsets of `1..=n` with at least two members.
/// Capped at `n <= 20`; see [`MAX_CUT_SET_N`].
pub fn enumerate_cut_sets(n: Node) -> Result<CutSetIter> {
    if n < 3 {
        return Err(Error::InvalidNodeSet(format!(
            "no valid sets exist for n = {n}; need n >= 3"
        )));
    }
    if n > MAX_CUT_SET_N {
        return Err(Error::CapExceeded {
            what: "enumerate_cut_sets",
            actual: n as u64,
            limit: MAX_CUT_SET_N as u64,
        });
    }
    Ok(CutSetIter {
        n,
        mask: 0,
        end: 1u64 << n,
    })
}

/// `2^n - n - 2`: all subsets minus the empty set, the `n` singletons, and
/// the full set.
pub fn cut_set_count(n: Node) -> u64 {
    assert!((3..=63).contains(&n));
    (1u64 << n) - n as u64 - 2
}
