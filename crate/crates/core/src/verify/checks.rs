use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_cut_sets, enumerate_trees, f_oracle, induced_components, random_tree_with, Node,
    NodeSet, Tree,
};
use crate::protocol::{
    alice_accept, bob_accept, combined_alice_accept, combined_bob_accept, enumerate_certificates,
    enumerate_combined_certificates, floor_log2, is_witness_triple, naive_alice_accept,
    naive_bob_accept, prover_certificate_with, witness_exists, Certificate, FacetId, TieBreak,
    Witness,
};
use crate::slack::{build_support_matrix, slack_value, BitGrid, CoverRectangle, SupportMatrix};
use crate::verify::report::{CheckKind, Mode, VerificationReport, Violation, ViolationKind};

/// Hard cap for sweeps that enumerate all sets, trees, and certificates.
/// `n = 7` runs in minutes; the command-line front end additionally gates it
/// behind an explicit flag.
pub const MAX_EXHAUSTIVE_N: Node = 7;

/// The triangle and naive cross-checks scan node triples per instance, so
/// their exhaustive caps sit one lower.
pub const MAX_TRIPLE_SCAN_N: Node = 6;

/// Knobs that do not affect results.
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Print coarse progress to stderr; meant for the long `n = 7` sweeps.
    pub progress: bool,
}

/// Samples are drawn in fixed-size chunks, one generator stream per chunk,
/// so results do not depend on how chunks land on worker threads.
const SAMPLE_CHUNK: u64 = 4096;

fn require_range(what: &'static str, n: Node, max: Node) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "{what} needs n >= 3, got {n}"
        )));
    }
    if n > max {
        return Err(Error::CapExceeded {
            what,
            actual: n as u64,
            limit: max as u64,
        });
    }
    Ok(())
}

fn check_mode(mode: Mode) -> Result<()> {
    if let Mode::Randomized { samples, .. } = mode {
        if samples == 0 {
            return Err(Error::InvalidArgument(
                "randomized mode needs at least one sample".to_string(),
            ));
        }
    }
    Ok(())
}

fn universe(n: Node) -> Result<(Vec<NodeSet>, Vec<Tree>)> {
    let sets: Vec<NodeSet> = enumerate_cut_sets(n)?.collect();
    let trees: Vec<Tree> = enumerate_trees(n)?.collect();
    Ok((sets, trees))
}

/// Predicate values over the whole universe, rows indexed like `sets`,
/// columns like `trees`.
fn oracle_grid(sets: &[NodeSet], trees: &[Tree]) -> BitGrid {
    let rows: Vec<Vec<bool>> = sets
        .par_iter()
        .map(|s| trees.iter().map(|t| f_oracle(s, t)).collect())
        .collect();
    let mut grid = BitGrid::new(sets.len(), trees.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, &bit) in row.iter().enumerate() {
            if bit {
                grid.set(r, c, true);
            }
        }
    }
    grid
}

fn run_sampled<F>(samples: u64, seed: u64, per_sample: F) -> Vec<Violation>
where
    F: Fn(&mut ChaCha8Rng, &mut Vec<Violation>) + Sync,
{
    let chunks: Vec<(u64, u64)> = (0..samples.div_ceil(SAMPLE_CHUNK))
        .map(|i| (i, (samples - i * SAMPLE_CHUNK).min(SAMPLE_CHUNK)))
        .collect();
    let mut violations: Vec<Violation> = chunks
        .into_par_iter()
        .flat_map_iter(|(chunk, len)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk + 1);
            let mut local = Vec::new();
            for _ in 0..len {
                per_sample(&mut rng, &mut local);
            }
            local
        })
        .collect();
    violations.sort();
    violations
}

fn progress_tick(counter: &AtomicU64, total: u64, label: &str, enabled: bool) {
    let done = counter.fetch_add(1, Ordering::Relaxed) + 1;
    if enabled {
        let step = (total / 20).max(1);
        if done.is_multiple_of(step) || done == total {
            eprintln!("{label}: {done}/{total}");
        }
    }
}

fn sample_certificate<R: Rng + ?Sized>(n: Node, rng: &mut R) -> Certificate {
    let a = rng.gen_range(1..=n);
    let mut b = rng.gen_range(1..=n);
    while b == a {
        b = rng.gen_range(1..=n);
    }
    Certificate::new(
        a.min(b),
        a.max(b),
        rng.gen_bool(0.5),
        rng.gen_bool(0.5),
        rng.gen_range(0..=floor_log2(n)),
    )
    .expect("sampled endpoints are ordered")
}

/// A random valid set forced to contain both endpoints, so the sampled
/// soundness check actually exercises the accepting paths.
fn sample_set_containing<R: Rng + ?Sized>(n: Node, u: Node, v: Node, rng: &mut R) -> NodeSet {
    loop {
        let mut members: Vec<Node> = vec![u, v];
        for w in 1..=n {
            if w != u && w != v && rng.gen_bool(0.5) {
                members.push(w);
            }
        }
        if (members.len() as Node) < n {
            return NodeSet::new(n, members).expect("two or more members, proper subset");
        }
    }
}

/// Joint acceptance of a certificate never happens on a 0-input.
///
/// Exhaustive mode walks every certificate once, collects its accepting
/// rows and columns, and validates the full cross product against the
/// oracle; `checks_run` is the number of (certificate, set, tree) triples
/// this covers. Randomized mode draws a certificate, a tree, and a set
/// containing the certificate endpoints per sample.
pub fn check_soundness(n: Node, mode: Mode) -> Result<VerificationReport> {
    check_soundness_opts(n, mode, CheckOptions::default())
}

pub fn check_soundness_opts(
    n: Node,
    mode: Mode,
    opts: CheckOptions,
) -> Result<VerificationReport> {
    check_mode(mode)?;
    let start = Instant::now();
    let (checks_run, violations, repro) = match mode {
        Mode::Exhaustive => {
            require_range("check_soundness", n, MAX_EXHAUSTIVE_N)?;
            let (sets, trees) = universe(n)?;
            let oracle = oracle_grid(&sets, &trees);
            let certs = enumerate_certificates(n);
            let counter = AtomicU64::new(0);
            let total = certs.len() as u64;
            let mut violations: Vec<Violation> = certs
                .par_iter()
                .flat_map_iter(|c| {
                    let mut local = Vec::new();
                    let rows: Vec<usize> = sets
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| alice_accept(s, c))
                        .map(|(i, _)| i)
                        .collect();
                    if !rows.is_empty() {
                        let cols: Vec<usize> = trees
                            .iter()
                            .enumerate()
                            .filter(|(_, t)| bob_accept(t, c))
                            .map(|(i, _)| i)
                            .collect();
                        for &r in &rows {
                            for &col in &cols {
                                if !oracle.get(r, col) {
                                    local.push(Violation {
                                        kind: ViolationKind::JointAcceptOnZero,
                                        detail: format!(
                                            "certificate={c} S={} T={}",
                                            sets[r], trees[col]
                                        ),
                                    });
                                }
                            }
                        }
                    }
                    progress_tick(&counter, total, "soundness", opts.progress);
                    local
                })
                .collect();
            violations.sort();
            let checks = total * sets.len() as u64 * trees.len() as u64;
            (checks, violations, format!("verify --n {n} --mode exhaustive"))
        }
        Mode::Randomized { samples, seed } => {
            require_range("check_soundness", n, Node::MAX)?;
            let violations = run_sampled(samples, seed, |rng, local| {
                let c = sample_certificate(n, rng);
                let t = random_tree_with(n, rng);
                let s = sample_set_containing(n, c.u(), c.v(), rng);
                if alice_accept(&s, &c) && bob_accept(&t, &c) && !f_oracle(&s, &t) {
                    local.push(Violation {
                        kind: ViolationKind::JointAcceptOnZero,
                        detail: format!("certificate={c} S={s} T={t}"),
                    });
                }
            });
            (
                samples,
                violations,
                format!("verify --n {n} --mode randomized --samples {samples} --seed {seed}"),
            )
        }
    };
    Ok(VerificationReport {
        check: CheckKind::Soundness,
        n,
        mode,
        checks_run,
        violations,
        elapsed: start.elapsed(),
        repro: Some(repro),
    })
}

fn completeness_violation(s: &NodeSet, t: &Tree, tb: TieBreak) -> Option<Violation> {
    let value = f_oracle(s, t);
    match (value, prover_certificate_with(s, t, tb)) {
        (true, None) => Some(Violation {
            kind: ViolationKind::MissingCertificate,
            detail: format!("S={s} T={t}"),
        }),
        (true, Some(c)) => {
            if !alice_accept(s, &c) {
                Some(Violation {
                    kind: ViolationKind::RejectedCertificate,
                    detail: format!("side=alice certificate={c} S={s} T={t}"),
                })
            } else if !bob_accept(t, &c) {
                Some(Violation {
                    kind: ViolationKind::RejectedCertificate,
                    detail: format!("side=bob certificate={c} S={s} T={t}"),
                })
            } else {
                None
            }
        }
        (false, Some(c)) => Some(Violation {
            kind: ViolationKind::SpuriousCertificate,
            detail: format!("certificate={c} S={s} T={t}"),
        }),
        (false, None) => None,
    }
}

/// On every 1-input the prover's certificate exists and both sides accept
/// it; on every 0-input the prover stays silent. `checks_run` counts the
/// (set, tree) pairs examined.
pub fn check_completeness(n: Node, mode: Mode) -> Result<VerificationReport> {
    check_completeness_with(n, mode, TieBreak::LexMin)
}

pub fn check_completeness_with(
    n: Node,
    mode: Mode,
    tb: TieBreak,
) -> Result<VerificationReport> {
    check_completeness_opts(n, mode, tb, CheckOptions::default())
}

pub fn check_completeness_opts(
    n: Node,
    mode: Mode,
    tb: TieBreak,
    opts: CheckOptions,
) -> Result<VerificationReport> {
    check_mode(mode)?;
    let start = Instant::now();
    let (checks_run, violations, repro) = match mode {
        Mode::Exhaustive => {
            require_range("check_completeness", n, MAX_EXHAUSTIVE_N)?;
            let (sets, trees) = universe(n)?;
            let counter = AtomicU64::new(0);
            let total = sets.len() as u64;
            let mut violations: Vec<Violation> = sets
                .par_iter()
                .flat_map_iter(|s| {
                    let mut local = Vec::new();
                    for t in &trees {
                        if let Some(v) = completeness_violation(s, t, tb) {
                            local.push(v);
                        }
                    }
                    progress_tick(&counter, total, "completeness", opts.progress);
                    local
                })
                .collect();
            violations.sort();
            (
                sets.len() as u64 * trees.len() as u64,
                violations,
                format!("verify --n {n} --mode exhaustive"),
            )
        }
        Mode::Randomized { samples, seed } => {
            require_range("check_completeness", n, Node::MAX)?;
            let violations = run_sampled(samples, seed, |rng, local| {
                let t = random_tree_with(n, rng);
                let s = NodeSet::random(n, rng);
                if let Some(v) = completeness_violation(&s, &t, tb) {
                    local.push(v);
                }
            });
            (
                samples,
                violations,
                format!("verify --n {n} --mode randomized --samples {samples} --seed {seed}"),
            )
        }
    };
    Ok(VerificationReport {
        check: CheckKind::Completeness,
        n,
        mode,
        checks_run,
        violations,
        elapsed: start.elapsed(),
        repro: Some(repro),
    })
}

fn triangle_violation(
    s: &NodeSet,
    t: &Tree,
    u: Node,
    v: Node,
    w: Node,
    x: Node,
) -> Option<Violation> {
    if is_witness_triple(s, t, u, x, v)
        && !is_witness_triple(s, t, v, x, w)
        && !is_witness_triple(s, t, w, x, u)
    {
        Some(Violation {
            kind: ViolationKind::TriangleFailure,
            detail: format!("T={t} S={s} u={u} v={v} w={w} outside={x}"),
        })
    } else {
        None
    }
}

/// A witness between two set members transfers to any third member: one of
/// the two replacement triples is again a witness. Exhaustive mode walks
/// every (tree, set, u, v, w, outside-node) tuple, degenerate triples
/// included; `checks_run` counts those tuples. Randomized mode constructs a
/// witness per sample when one exists at the drawn endpoints; samples with
/// no witness count as vacuous.
pub fn check_triangle_lemma(n: Node, mode: Mode) -> Result<VerificationReport> {
    check_triangle_lemma_opts(n, mode, CheckOptions::default())
}

pub fn check_triangle_lemma_opts(
    n: Node,
    mode: Mode,
    opts: CheckOptions,
) -> Result<VerificationReport> {
    check_mode(mode)?;
    let start = Instant::now();
    let (checks_run, violations, repro) = match mode {
        Mode::Exhaustive => {
            require_range("check_triangle_lemma", n, MAX_TRIPLE_SCAN_N)?;
            let (sets, trees) = universe(n)?;
            let counter = AtomicU64::new(0);
            let total = trees.len() as u64;
            let mut violations: Vec<Violation> = trees
                .par_iter()
                .flat_map_iter(|t| {
                    let mut local = Vec::new();
                    for s in &sets {
                        let members: Vec<Node> = s.iter().collect();
                        let outside: Vec<Node> =
                            (1..=n).filter(|&x| !s.contains(x)).collect();
                        for &u in &members {
                            for &v in &members {
                                for &w in &members {
                                    for &x in &outside {
                                        if let Some(vl) = triangle_violation(s, t, u, v, w, x) {
                                            local.push(vl);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    progress_tick(&counter, total, "triangle", opts.progress);
                    local
                })
                .collect();
            violations.sort();
            let tuples: u64 = sets
                .iter()
                .map(|s| {
                    let k = s.size() as u64;
                    k * k * k * (n as u64 - k)
                })
                .sum::<u64>()
                * trees.len() as u64;
            (tuples, violations, format!("verify --n {n} --triangle --mode exhaustive"))
        }
        Mode::Randomized { samples, seed } => {
            require_range("check_triangle_lemma", n, Node::MAX)?;
            let violations = run_sampled(samples, seed, |rng, local| {
                let t = random_tree_with(n, rng);
                let s = NodeSet::random(n, rng);
                let members: Vec<Node> = s.iter().collect();
                let u = members[rng.gen_range(0..members.len())];
                let mut v = members[rng.gen_range(0..members.len())];
                while v == u {
                    v = members[rng.gen_range(0..members.len())];
                }
                // w may coincide with u or v; those cases must hold trivially.
                let w = members[rng.gen_range(0..members.len())];
                let path = t.path_nodes(u, v).expect("distinct members");
                let outside: Vec<Node> =
                    path.iter().copied().filter(|&x| !s.contains(x)).collect();
                if outside.is_empty() {
                    return; // no witness at these endpoints; vacuous sample
                }
                let x = outside[rng.gen_range(0..outside.len())];
                if let Some(vl) = triangle_violation(&s, &t, u, v, w, x) {
                    local.push(vl);
                }
            });
            (
                samples,
                violations,
                format!(
                    "verify --n {n} --triangle --mode randomized --samples {samples} --seed {seed}"
                ),
            )
        }
    };
    Ok(VerificationReport {
        check: CheckKind::TriangleProperty,
        n,
        mode,
        checks_run,
        violations,
        elapsed: start.elapsed(),
        repro: Some(repro),
    })
}

fn naive_joint_exists(s: &NodeSet, t: &Tree, n: Node) -> bool {
    for u in 1..n {
        for v in (u + 1)..=n {
            for x in 1..=n {
                if x == u || x == v {
                    continue;
                }
                let w = Witness::new(u, x, v).expect("distinct");
                if naive_alice_accept(s, &w) && naive_bob_accept(t, &w) {
                    return true;
                }
            }
        }
    }
    false
}

/// Ties the three routes to the predicate together on every pair: witness
/// existence, joint acceptance of the witness protocol, and the oracle all
/// agree; and every pair jointly accepted under a certificate has a
/// witness. `checks_run` counts the per-pair comparisons plus the
/// certificate cross products.
pub fn cross_check_naive(n: Node) -> Result<VerificationReport> {
    require_range("cross_check_naive", n, MAX_TRIPLE_SCAN_N)?;
    let start = Instant::now();
    let (sets, trees) = universe(n)?;
    let mut violations: Vec<Violation> = sets
        .par_iter()
        .flat_map_iter(|s| {
            let mut local = Vec::new();
            for t in &trees {
                let value = f_oracle(s, t);
                if witness_exists(s, t) != value {
                    local.push(Violation {
                        kind: ViolationKind::OracleMismatch,
                        detail: format!("S={s} T={t} oracle={}", value as u8),
                    });
                }
                if naive_joint_exists(s, t, n) != value {
                    local.push(Violation {
                        kind: ViolationKind::NaiveMismatch,
                        detail: format!("S={s} T={t} oracle={}", value as u8),
                    });
                }
            }
            local
        })
        .collect();

    let certs = enumerate_certificates(n);
    let containment: Vec<(u64, Vec<Violation>)> = certs
        .par_iter()
        .map(|c| {
            let mut local = Vec::new();
            let rows: Vec<&NodeSet> = sets.iter().filter(|s| alice_accept(s, c)).collect();
            if rows.is_empty() {
                return (0, local);
            }
            let cols: Vec<&Tree> = trees.iter().filter(|t| bob_accept(t, c)).collect();
            for s in &rows {
                for t in &cols {
                    if !witness_exists(s, t) {
                        local.push(Violation {
                            kind: ViolationKind::ContainmentFailure,
                            detail: format!("certificate={c} S={s} T={t}"),
                        });
                    }
                }
            }
            ((rows.len() * cols.len()) as u64, local)
        })
        .collect();
    let mut pair_products = 0u64;
    for (count, mut local) in containment {
        pair_products += count;
        violations.append(&mut local);
    }
    violations.sort();

    Ok(VerificationReport {
        check: CheckKind::NaiveEquivalence,
        n,
        mode: Mode::Exhaustive,
        checks_run: 2 * sets.len() as u64 * trees.len() as u64 + pair_products,
        violations,
        elapsed: start.elapsed(),
        repro: None,
    })
}

/// The rectangle a certificate induces: every accepting set row and every
/// accepting tree column. Column indices follow tree enumeration order.
#[derive(Clone, Debug)]
pub struct Rectangle {
    pub certificate: Certificate,
    pub rows: Vec<NodeSet>,
    pub cols: Vec<usize>,
}

impl Rectangle {
    /// Translates set rows into row indices of a built support matrix. The
    /// tree columns already share the matrix's column order.
    pub fn to_cover_rectangle(&self, m: &SupportMatrix) -> Result<CoverRectangle> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for s in &self.rows {
            let fa = FacetId::Cycle(s.clone());
            let r = m.row_of(&fa).ok_or_else(|| {
                Error::BadMatrixData(format!("matrix has no row for {}", fa.descriptor()))
            })?;
            rows.push(r);
        }
        rows.sort_unstable();
        Ok(CoverRectangle {
            rows,
            cols: self.cols.clone(),
        })
    }
}

pub fn extract_rectangle(c: &Certificate, n: Node) -> Result<Rectangle> {
    require_range("extract_rectangle", n, MAX_EXHAUSTIVE_N)?;
    let rows: Vec<NodeSet> = enumerate_cut_sets(n)?
        .filter(|s| alice_accept(s, c))
        .collect();
    let cols: Vec<usize> = enumerate_trees(n)?
        .enumerate()
        .filter(|(_, t)| bob_accept(t, c))
        .map(|(i, _)| i)
        .collect();
    Ok(Rectangle {
        certificate: *c,
        rows,
        cols,
    })
}

/// The certificate rectangles are 1-monochromatic and their union covers
/// exactly the 1-entries of the predicate over the whole universe.
pub fn check_rectangle_cover(n: Node) -> Result<VerificationReport> {
    require_range("check_rectangle_cover", n, MAX_EXHAUSTIVE_N)?;
    let start = Instant::now();
    let (sets, trees) = universe(n)?;
    let oracle = oracle_grid(&sets, &trees);
    let certs = enumerate_certificates(n);

    let (mut violations, coverage) = certs
        .par_iter()
        .fold(
            || (Vec::new(), BitGrid::new(sets.len(), trees.len())),
            |(mut vio, mut cov), c| {
                let rows: Vec<usize> = sets
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| alice_accept(s, c))
                    .map(|(i, _)| i)
                    .collect();
                if !rows.is_empty() {
                    let cols: Vec<usize> = trees
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| bob_accept(t, c))
                        .map(|(i, _)| i)
                        .collect();
                    for &r in &rows {
                        for &col in &cols {
                            if !oracle.get(r, col) {
                                vio.push(Violation {
                                    kind: ViolationKind::NonMonochromaticRectangle,
                                    detail: format!(
                                        "certificate={c} S={} T={}",
                                        sets[r], trees[col]
                                    ),
                                });
                            }
                            cov.set(r, col, true);
                        }
                    }
                }
                (vio, cov)
            },
        )
        .reduce(
            || (Vec::new(), BitGrid::new(sets.len(), trees.len())),
            |(mut v1, mut g1), (v2, g2)| {
                v1.extend(v2);
                g1.or_assign(&g2);
                (v1, g1)
            },
        );

    for (r, s) in sets.iter().enumerate() {
        for (c, t) in trees.iter().enumerate() {
            if oracle.get(r, c) && !coverage.get(r, c) {
                violations.push(Violation {
                    kind: ViolationKind::CoverageGap,
                    detail: format!("S={s} T={t}"),
                });
            }
        }
    }
    violations.sort();

    Ok(VerificationReport {
        check: CheckKind::RectangleCover,
        n,
        mode: Mode::Exhaustive,
        checks_run: certs.len() as u64 * (sets.len() + trees.len()) as u64
            + sets.len() as u64 * trees.len() as u64,
        violations,
        elapsed: start.elapsed(),
        repro: None,
    })
}

/// The combined protocol's joint acceptance, over all tagged certificates,
/// reproduces the full support matrix, edge rows included: no certificate
/// pair lands on a 0, and every 1 is reached by some certificate.
pub fn check_combined_support(n: Node) -> Result<VerificationReport> {
    require_range("check_combined_support", n, MAX_TRIPLE_SCAN_N)?;
    let start = Instant::now();
    let matrix = build_support_matrix(n, true)?;
    let facets = matrix.facets();
    let trees = matrix.trees();
    let certs = enumerate_combined_certificates(n);

    let (mut violations, coverage) = certs
        .par_iter()
        .fold(
            || (Vec::new(), BitGrid::new(facets.len(), trees.len())),
            |(mut vio, mut cov), cc| {
                let rows: Vec<usize> = facets
                    .iter()
                    .enumerate()
                    .filter(|(_, fa)| combined_alice_accept(fa, cc))
                    .map(|(i, _)| i)
                    .collect();
                if !rows.is_empty() {
                    let cols: Vec<usize> = trees
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| combined_bob_accept(t, cc))
                        .map(|(i, _)| i)
                        .collect();
                    for &r in &rows {
                        for &col in &cols {
                            if !matrix.entry(r, col) {
                                vio.push(Violation {
                                    kind: ViolationKind::NonMonochromaticRectangle,
                                    detail: format!(
                                        "certificate={cc} facet={} T={}",
                                        facets[r].descriptor(),
                                        trees[col]
                                    ),
                                });
                            }
                            cov.set(r, col, true);
                        }
                    }
                }
                (vio, cov)
            },
        )
        .reduce(
            || (Vec::new(), BitGrid::new(facets.len(), trees.len())),
            |(mut v1, mut g1), (v2, g2)| {
                v1.extend(v2);
                g1.or_assign(&g2);
                (v1, g1)
            },
        );

    for (r, fa) in facets.iter().enumerate() {
        for (c, t) in trees.iter().enumerate() {
            if matrix.entry(r, c) && !coverage.get(r, c) {
                violations.push(Violation {
                    kind: ViolationKind::CoverageGap,
                    detail: format!("facet={} T={}", fa.descriptor(), t),
                });
            }
        }
    }
    violations.sort();

    Ok(VerificationReport {
        check: CheckKind::CombinedSupport,
        n,
        mode: Mode::Exhaustive,
        checks_run: certs.len() as u64 * (facets.len() + trees.len()) as u64
            + facets.len() as u64 * trees.len() as u64,
        violations,
        elapsed: start.elapsed(),
        repro: None,
    })
}

fn slack_identity_violation(s: &NodeSet, t: &Tree) -> Option<Violation> {
    let by_edges = slack_value(&FacetId::Cycle(s.clone()), t);
    let by_components = induced_components(t, s) - 1;
    if by_edges != by_components {
        Some(Violation {
            kind: ViolationKind::SlackMismatch,
            detail: format!("S={s} T={t} edges={by_edges} components={by_components}"),
        })
    } else {
        None
    }
}

/// The two slack computations agree: counting tree edges inside the set
/// against counting induced components. In randomized mode each sample
/// draws its own instance size uniformly from `3..=n`.
pub fn check_slack_identity(n: Node, mode: Mode) -> Result<VerificationReport> {
    check_mode(mode)?;
    let start = Instant::now();
    let (checks_run, violations) = match mode {
        Mode::Exhaustive => {
            require_range("check_slack_identity", n, MAX_EXHAUSTIVE_N)?;
            let (sets, trees) = universe(n)?;
            let mut violations: Vec<Violation> = sets
                .par_iter()
                .flat_map_iter(|s| {
                    let mut local = Vec::new();
                    for t in &trees {
                        if let Some(v) = slack_identity_violation(s, t) {
                            local.push(v);
                        }
                    }
                    local
                })
                .collect();
            violations.sort();
            (sets.len() as u64 * trees.len() as u64, violations)
        }
        Mode::Randomized { samples, seed } => {
            require_range("check_slack_identity", n, Node::MAX)?;
            let violations = run_sampled(samples, seed, |rng, local| {
                let size = rng.gen_range(3..=n);
                let t = random_tree_with(size, rng);
                let s = NodeSet::random(size, rng);
                if let Some(v) = slack_identity_violation(&s, &t) {
                    local.push(v);
                }
            });
            (samples, violations)
        }
    };
    Ok(VerificationReport {
        check: CheckKind::SlackIdentity,
        n,
        mode,
        checks_run,
        violations,
        elapsed: start.elapsed(),
        repro: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soundness_holds_exhaustively_at_four_nodes() {
        let report = check_soundness(4, Mode::Exhaustive).unwrap();
        assert!(report.passed());
        // 72 certificates x 10 sets x 16 trees.
        assert_eq!(report.checks_run, 11_520);
    }

    #[test]
    fn soundness_holds_on_samples_and_is_deterministic() {
        let mode = Mode::Randomized {
            samples: 3000,
            seed: 11,
        };
        let one = check_soundness(30, mode).unwrap();
        let two = check_soundness(30, mode).unwrap();
        assert!(one.passed());
        assert_eq!(one.summary(), two.summary());
        assert_eq!(one.checks_run, 3000);
    }

    #[test]
    fn soundness_holds_on_many_samples_at_a_hundred_nodes() {
        let report = check_soundness(
            100,
            Mode::Randomized {
                samples: 100_000,
                seed: 1,
            },
        )
        .unwrap();
        assert!(report.passed());
    }

    #[test]
    fn completeness_holds_exhaustively_up_to_five_nodes() {
        for n in 3..=5 {
            let report = check_completeness(n, Mode::Exhaustive).unwrap();
            assert!(report.passed(), "n = {n}");
        }
    }

    #[test]
    fn completeness_holds_on_samples_at_fifty_nodes() {
        let report = check_completeness(
            50,
            Mode::Randomized {
                samples: 500,
                seed: 3,
            },
        )
        .unwrap();
        assert!(report.passed());
    }

    #[test]
    fn completeness_holds_under_the_opposite_tie_break() {
        let report =
            check_completeness_with(4, Mode::Exhaustive, TieBreak::LexMax).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn triangle_property_holds_exhaustively_at_five_nodes() {
        let report = check_triangle_lemma(5, Mode::Exhaustive).unwrap();
        assert!(report.passed());
        // Independent count: sum over sets of |S|^3 (n - |S|), times trees.
        // n = 5: 10 pair sets, 10 triple sets, 5 quadruple sets.
        let tuples_per_tree = 10 * 8 * 3 + 10 * 27 * 2 + 5 * 64;
        assert_eq!(report.checks_run, tuples_per_tree * 125);
    }

    #[test]
    fn triangle_property_holds_on_samples() {
        let report = check_triangle_lemma(
            12,
            Mode::Randomized {
                samples: 20_000,
                seed: 5,
            },
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.checks_run, 20_000);
    }

    #[test]
    fn naive_cross_check_holds_at_four_nodes() {
        let report = cross_check_naive(4).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn rectangle_extraction_on_a_known_certificate() {
        let c = Certificate::new(1, 2, true, false, 0).unwrap();
        let rect = extract_rectangle(&c, 4).unwrap();
        let rows: Vec<String> = rect.rows.iter().map(|s| s.to_string()).collect();
        assert_eq!(rows, vec!["{1,2}", "{1,2,4}"]);
        assert!(!rect.cols.is_empty());
        let trees: Vec<Tree> = enumerate_trees(4).unwrap().collect();
        for &col in &rect.cols {
            assert!(trees[col].is_on_path(1, 3, 2).unwrap());
        }

        // A certificate with no candidates never gets a column.
        let empty = Certificate::new(1, 2, false, false, 0).unwrap();
        assert!(extract_rectangle(&empty, 4).unwrap().cols.is_empty());
    }

    #[test]
    fn rectangles_cover_the_support_at_four_nodes() {
        let report = check_rectangle_cover(4).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn combined_protocol_matches_the_full_support_at_four_nodes() {
        let report = check_combined_support(4).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn slack_identity_holds_exhaustively_and_on_samples() {
        let report = check_slack_identity(4, Mode::Exhaustive).unwrap();
        assert!(report.passed());
        let report = check_slack_identity(
            60,
            Mode::Randomized {
                samples: 2000,
                seed: 9,
            },
        )
        .unwrap();
        assert!(report.passed());
    }

    #[test]
    fn caps_and_argument_validation() {
        assert!(check_soundness(8, Mode::Exhaustive).is_err());
        assert!(check_soundness(2, Mode::Exhaustive).is_err());
        assert!(check_triangle_lemma(7, Mode::Exhaustive).is_err());
        assert!(matches!(
            check_soundness(
                5,
                Mode::Randomized {
                    samples: 0,
                    seed: 0
                }
            ),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn reports_render_their_header_lines() {
        let report = check_soundness(3, Mode::Exhaustive).unwrap();
        let text = report.summary();
        assert!(text.contains("check: soundness\n"));
        assert!(text.contains("n: 3\n"));
        assert!(text.contains("mode: exhaustive\n"));
        assert!(text.contains("violations: 0\n"));
        assert!(text.contains("repro: verify --n 3 --mode exhaustive\n"));
        assert!(report.to_string().contains("result: PASS"));
    }
}
