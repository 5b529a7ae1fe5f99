use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::graph::{Node, NodeSet, Tree};
use crate::protocol::witness::Witness;

/// A parsimonious certificate `(u, v, pi, delta, d)`: an endpoint pair with
/// `u < v`, a side bit, a direction bit, and a distance exponent. It names
/// the at most `2^d` nodes at distance `[2^d, 2^(d+1))` from one endpoint,
/// on one side of the midpoint, in one direction; the certified witness
/// middle node is one of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    u: Node,
    v: Node,
    pi: bool,
    delta: bool,
    d: u32,
}

impl Certificate {
    pub fn new(u: Node, v: Node, pi: bool, delta: bool, d: u32) -> Result<Self> {
        if u < 1 || u >= v {
            return Err(Error::InvalidCertificate(format!(
                "endpoints must satisfy 1 <= u < v, got ({u}, {v})"
            )));
        }
        Ok(Certificate { u, v, pi, delta, d })
    }

    pub fn u(&self) -> Node {
        self.u
    }

    pub fn v(&self) -> Node {
        self.v
    }

    /// True when the certified node falls in the upper range (the half of
    /// `1..=n` beyond the endpoint midpoint), anchoring distances at `v`;
    /// false anchors them at `u`.
    pub fn pi(&self) -> bool {
        self.pi
    }

    /// True when the certified node lies below its anchor endpoint.
    pub fn delta(&self) -> bool {
        self.delta
    }

    /// Distance exponent: the certified node sits at distance in
    /// `2^d ..= 2^(d+1) - 1` from its anchor.
    pub fn d(&self) -> u32 {
        self.d
    }
}

impl fmt::Display for Certificate {
    /// `"u,v,pi,delta,d"` with the bits printed as 0/1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.u,
            self.v,
            self.pi as u8,
            self.delta as u8,
            self.d
        )
    }
}

pub fn floor_log2(x: u32) -> u32 {
    assert!(x > 0);
    31 - x.leading_zeros()
}

/// Splits `1..=n` at the endpoint midpoint: the lower range is
/// `1..=floor((u+v)/2)` and the upper range is the rest. The midpoint itself
/// falls in the lower range; `u` is always in the lower range and `v` in the
/// upper one.
pub fn range_split(
    u: Node,
    v: Node,
    n: Node,
) -> Result<(RangeInclusive<Node>, RangeInclusive<Node>)> {
    if u < 1 || u >= v {
        return Err(Error::InvalidCertificate(format!(
            "endpoints must satisfy 1 <= u < v, got ({u}, {v})"
        )));
    }
    if v > n {
        return Err(Error::NodeOutOfRange { node: v, n });
    }
    let mid = (u + v) / 2;
    Ok((1..=mid, (mid + 1)..=n))
}

/// Encodes the witness triple `(u, t, v)` into its certificate: the side bit
/// records which half of the split `t` falls in, distances are measured from
/// the endpoint on that side.
pub fn encode_certificate(u: Node, t: Node, v: Node, n: Node) -> Result<Certificate> {
    let (_, upper) = range_split(u, v, n)?;
    if t < 1 || t > n {
        return Err(Error::NodeOutOfRange { node: t, n });
    }
    if t == u || t == v {
        return Err(Error::InvalidCertificate(format!(
            "middle node {t} coincides with an endpoint"
        )));
    }
    let pi = upper.contains(&t);
    let anchor = if pi { v } else { u };
    let delta = t < anchor;
    let d = floor_log2(t.abs_diff(anchor));
    Ok(Certificate { u, v, pi, delta, d })
}

/// All nodes `r` with `encode_certificate(u, r, v, n) == c`, ascending.
/// Computed in closed form: the dyadic interval at distance `2^d ..
/// 2^(d+1) - 1` from the anchor, on the side `delta` points to, clamped to
/// `1..=n`, intersected with the side range `pi` selects, minus the
/// endpoints themselves. At most `2^d` nodes survive.
pub fn candidate_rs(c: &Certificate, n: Node) -> Vec<Node> {
    let (u, v) = (c.u, c.v);
    if v > n || c.d >= 32 {
        return Vec::new();
    }
    let mid = (u + v) / 2;
    let anchor = if c.pi { v } else { u } as i64;
    let step = 1i64 << c.d;
    let (mut lo, mut hi) = if c.delta {
        (anchor - 2 * step + 1, anchor - step)
    } else {
        (anchor + step, anchor + 2 * step - 1)
    };
    let (side_lo, side_hi) = if c.pi {
        (mid as i64 + 1, n as i64)
    } else {
        (1, mid as i64)
    };
    lo = lo.max(1).max(side_lo);
    hi = hi.min(n as i64).min(side_hi);
    (lo..=hi)
        .map(|r| r as Node)
        .filter(|&r| r != u && r != v)
        .collect()
}

/// The set-holder's side of the parsimonious protocol: both endpoints must
/// be in the set and no candidate node may be.
pub fn alice_accept(s: &NodeSet, c: &Certificate) -> bool {
    s.contains(c.u)
        && s.contains(c.v)
        && candidate_rs(c, s.n()).iter().all(|&r| !s.contains(r))
}

/// The tree-holder's side of the parsimonious protocol: some candidate node
/// must lie on the tree path between the endpoints.
pub fn bob_accept(tree: &Tree, c: &Certificate) -> bool {
    candidate_rs(c, tree.n())
        .iter()
        .any(|&r| tree.is_on_path(c.u, r, c.v).unwrap_or(false))
}

/// How the prover breaks ties among witnesses of minimal `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    LexMin,
    LexMax,
}

/// The witness the prover commits to: minimal `mu` over all witnesses with
/// `u < v`, ties broken lexicographically on `(u, t, v)`. Returns nothing
/// exactly when no witness exists.
pub fn choose_valid_witness(s: &NodeSet, tree: &Tree, tb: TieBreak) -> Option<Witness> {
    let members: Vec<Node> = s.iter().collect();
    let mut best: Option<Witness> = None;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let path = tree.path_nodes(u, v).expect("members are distinct, in range");
            for &x in &path {
                if s.contains(x) {
                    continue;
                }
                let w = Witness::new(u, x, v).expect("u, v in s; x outside s");
                let better = match &best {
                    None => true,
                    Some(b) => {
                        w.mu() < b.mu()
                            || (w.mu() == b.mu()
                                && match tb {
                                    TieBreak::LexMin => w < *b,
                                    TieBreak::LexMax => w > *b,
                                })
                    }
                };
                if better {
                    best = Some(w);
                }
            }
        }
    }
    best
}

/// [`choose_valid_witness`] followed by [`encode_certificate`], with the
/// default lexicographic-minimum tie-break.
pub fn prover_certificate(s: &NodeSet, tree: &Tree) -> Option<Certificate> {
    prover_certificate_with(s, tree, TieBreak::LexMin)
}

pub fn prover_certificate_with(s: &NodeSet, tree: &Tree, tb: TieBreak) -> Option<Certificate> {
    choose_valid_witness(s, tree, tb).map(|w| {
        encode_certificate(w.u(), w.t(), w.v(), s.n())
            .expect("a chosen witness always encodes")
    })
}

/// `C(n,2) * 2 * 2 * (floor(log2 n) + 1)`, the number of certificates.
pub fn certificate_space_size(n: Node) -> u128 {
    assert!(n >= 3);
    let pairs = n as u128 * (n as u128 - 1) / 2;
    pairs * 4 * (floor_log2(n) as u128 + 1)
}

/// `log2` of the certificate count: the nondeterministic communication cost
/// in bits.
pub fn cost_bits(n: Node) -> f64 {
    (certificate_space_size(n) as f64).log2()
}

/// Every certificate for a given `n`, in ascending `(u, v, pi, delta, d)`
/// order.
pub fn enumerate_certificates(n: Node) -> Vec<Certificate> {
    assert!(n >= 3);
    assert!(n <= 256, "materializing the certificate space is for small n");
    let dmax = floor_log2(n);
    let mut out = Vec::with_capacity(certificate_space_size(n) as usize);
    for u in 1..n {
        for v in (u + 1)..=n {
            for pi in [false, true] {
                for delta in [false, true] {
                    for d in 0..=dmax {
                        out.push(Certificate { u, v, pi, delta, d });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Test-only oracle: scan every node and keep the ones that encode back
    /// to the certificate.
    fn candidate_rs_by_scan(c: &Certificate, n: Node) -> Vec<Node> {
        (1..=n)
            .filter(|&r| r != c.u() && r != c.v())
            .filter(|&r| encode_certificate(c.u(), r, c.v(), n).ok() == Some(*c))
            .collect()
    }

    #[test]
    fn range_split_on_known_pairs() {
        let (lo, hi) = range_split(1, 2, 4).unwrap();
        assert_eq!((lo, hi), (1..=1, 2..=4));
        let (lo, hi) = range_split(2, 4, 5).unwrap();
        assert_eq!((lo, hi), (1..=3, 4..=5));
        assert!(range_split(2, 2, 4).is_err());
        assert!(range_split(3, 1, 4).is_err());
        assert!(range_split(1, 5, 4).is_err());
    }

    #[test]
    fn encoding_known_triples() {
        let c = encode_certificate(1, 3, 2, 4).unwrap();
        assert_eq!(c.to_string(), "1,2,1,0,0");

        let c = encode_certificate(2, 1, 4, 4).unwrap();
        assert_eq!(c.to_string(), "2,4,0,1,0");

        let c = encode_certificate(2, 7, 4, 8).unwrap();
        assert_eq!(c.to_string(), "2,4,1,0,1");

        let c = encode_certificate(1, 2, 3, 4).unwrap();
        assert_eq!(c.to_string(), "1,3,0,0,0");

        assert!(encode_certificate(1, 1, 2, 4).is_err());
        assert!(encode_certificate(2, 3, 1, 4).is_err());
        assert!(encode_certificate(1, 5, 3, 4).is_err());
    }

    #[test]
    fn candidates_on_known_certificates() {
        let c = Certificate::new(1, 2, true, false, 0).unwrap();
        assert_eq!(candidate_rs(&c, 4), vec![3]);

        let c = Certificate::new(2, 4, true, false, 1).unwrap();
        assert_eq!(candidate_rs(&c, 8), vec![6, 7]);

        let c = Certificate::new(1, 2, false, false, 0).unwrap();
        assert_eq!(candidate_rs(&c, 4), Vec::<Node>::new());
    }

    #[test]
    fn candidates_match_the_scan_oracle_exhaustively() {
        for n in 3..=10 {
            for c in enumerate_certificates(n) {
                let fast = candidate_rs(&c, n);
                let slow = candidate_rs_by_scan(&c, n);
                assert_eq!(fast, slow, "n = {n}, c = {c}");
                assert!(fast.len() as u64 <= 1u64 << c.d());
            }
        }
    }

    #[test]
    fn every_middle_node_is_among_its_own_candidates() {
        for n in 3..=10 {
            for u in 1..n {
                for v in (u + 1)..=n {
                    for t in 1..=n {
                        if t == u || t == v {
                            continue;
                        }
                        let c = encode_certificate(u, t, v, n).unwrap();
                        assert!(
                            candidate_rs(&c, n).contains(&t),
                            "n = {n}, triple ({u},{t},{v})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn acceptance_on_known_instances() {
        let c = Certificate::new(1, 2, true, false, 0).unwrap();
        assert!(alice_accept(&NodeSet::new(4, [1, 2]).unwrap(), &c));
        assert!(!alice_accept(&NodeSet::new(4, [1, 2, 3]).unwrap(), &c));
        assert!(!alice_accept(&NodeSet::new(4, [1, 3]).unwrap(), &c));

        let star3 = Tree::from_edges(4, [(1, 3), (2, 3), (3, 4)]).unwrap();
        assert!(bob_accept(&star3, &c));
        let path = Tree::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!bob_accept(&path, &c));

        // No candidates at all: the tree holder can never accept.
        let empty = Certificate::new(1, 2, false, false, 0).unwrap();
        assert!(!bob_accept(&star3, &empty));
    }

    #[test]
    fn prover_on_known_instances() {
        let star3 = Tree::from_edges(4, [(1, 3), (2, 3), (3, 4)]).unwrap();
        let s12 = NodeSet::new(4, [1, 2]).unwrap();
        let w = choose_valid_witness(&s12, &star3, TieBreak::LexMin).unwrap();
        assert_eq!((w.u(), w.t(), w.v()), (1, 3, 2));
        assert_eq!(prover_certificate(&s12, &star3).unwrap().to_string(), "1,2,1,0,0");

        let path = Tree::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let s13 = NodeSet::new(4, [1, 3]).unwrap();
        let w = choose_valid_witness(&s13, &path, TieBreak::LexMin).unwrap();
        assert_eq!((w.u(), w.t(), w.v()), (1, 2, 3));
        assert_eq!(prover_certificate(&s13, &path).unwrap().to_string(), "1,3,0,0,0");

        let s123 = NodeSet::new(4, [1, 2, 3]).unwrap();
        assert!(prover_certificate(&s123, &path).is_none());
    }

    #[test]
    fn both_tie_breaks_yield_accepted_certificates() {
        use crate::graph::{enumerate_cut_sets, enumerate_trees, f_oracle};
        for n in 3..=5 {
            for t in enumerate_trees(n).unwrap() {
                for s in enumerate_cut_sets(n).unwrap() {
                    if !f_oracle(&s, &t) {
                        continue;
                    }
                    for tb in [TieBreak::LexMin, TieBreak::LexMax] {
                        let c = prover_certificate_with(&s, &t, tb).unwrap();
                        assert!(alice_accept(&s, &c) && bob_accept(&t, &c), "s={s} t={t} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn space_sizes_and_costs() {
        assert_eq!(certificate_space_size(3), 24);
        assert_eq!(certificate_space_size(4), 72);
        assert_eq!(certificate_space_size(7), 252);
        assert_eq!(certificate_space_size(8), 448);
        assert!((cost_bits(8) - 448f64.log2()).abs() < 1e-12);

        for n in [3, 4, 7, 8, 16, 33] {
            assert_eq!(
                enumerate_certificates(n).len() as u128,
                certificate_space_size(n)
            );
        }
    }

    #[test]
    fn enumeration_is_strictly_sorted() {
        let certs = enumerate_certificates(5);
        assert!(certs.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        #[test]
        fn candidates_round_trip_randomly(n in 3u32..=64, a in 1u32..=64, b in 1u32..=64, t in 1u32..=64) {
            let a = 1 + (a - 1) % n;
            let b = 1 + (b - 1) % n;
            let t = 1 + (t - 1) % n;
            prop_assume!(a != b && t != a && t != b);
            let (u, v) = (a.min(b), a.max(b));
            let c = encode_certificate(u, t, v, n).unwrap();
            let fast = candidate_rs(&c, n);
            prop_assert!(fast.contains(&t));
            prop_assert_eq!(fast.clone(), candidate_rs_by_scan(&c, n));
            prop_assert!(fast.len() as u64 <= 1u64 << c.d());
        }

        #[test]
        fn range_split_partitions(n in 3u32..=200, a in 1u32..=200, b in 1u32..=200) {
            let a = 1 + (a - 1) % n;
            let b = 1 + (b - 1) % n;
            prop_assume!(a != b);
            let (u, v) = (a.min(b), a.max(b));
            let (lower, upper) = range_split(u, v, n).unwrap();
            prop_assert!(lower.contains(&u));
            prop_assert!(upper.contains(&v));
            for j in 1..=n {
                prop_assert!(lower.contains(&j) ^ upper.contains(&j));
            }
        }
    }
}
