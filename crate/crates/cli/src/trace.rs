use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sptree_core::error::{Error, Result};
use sptree_core::graph::{f_oracle, induced_components, random_tree_with, Node, NodeSet, Tree};
use sptree_core::protocol::{
    all_witnesses, candidate_rs, choose_valid_witness, encode_certificate, range_split,
    Certificate, TieBreak,
};

/// Witness listings scan node triples, so tracing stays at demo sizes.
const MAX_TRACE_N: Node = 200;

const MAX_LISTED_WITNESSES: usize = 20;

#[derive(Args)]
pub struct TraceArgs {
    /// Instance size (number of nodes), at least 3.
    #[arg(long)]
    n: u32,

    /// Seed for the random instance; ignored with --fixed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Fixed instance as two values: a set "S=1,2" and a tree "T=1-3,2-3".
    #[arg(long, num_args = 2, value_names = ["SET", "TREE"])]
    fixed: Option<Vec<String>>,
}

fn parse_set(n: Node, text: &str) -> Result<NodeSet> {
    let members = text
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<Node>()
                .map_err(|_| Error::InvalidNodeSet(format!("bad set member {tok:?}")))
        })
        .collect::<Result<Vec<Node>>>()?;
    NodeSet::new(n, members)
}

fn parse_fixed(n: Node, parts: &[String]) -> Result<(NodeSet, Tree)> {
    let (mut set, mut tree) = (None, None);
    for part in parts {
        if let Some(rest) = part.strip_prefix("S=") {
            set = Some(parse_set(n, rest)?);
        } else if let Some(rest) = part.strip_prefix("T=") {
            tree = Some(Tree::from_edge_line(&format!("{n};{rest}"))?);
        } else {
            return Err(Error::InvalidArgument(format!(
                "fixed instance parts look like S=1,2 and T=1-3,2-3, got {part:?}"
            )));
        }
    }
    match (set, tree) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err(Error::InvalidArgument(
            "a fixed instance needs both an S= part and a T= part".to_string(),
        )),
    }
}

fn describe_certificate(c: &Certificate, n: Node) {
    let (lower, upper) = range_split(c.u(), c.v(), n).expect("certificate endpoints are valid");
    println!("certificate: {c}");
    println!(
        "  endpoints u={} v={}, split {}..={} | {}..={}",
        c.u(),
        c.v(),
        lower.start(),
        lower.end(),
        upper.start(),
        upper.end()
    );
    let anchor = if c.pi() { c.v() } else { c.u() };
    println!(
        "  side bit {}: middle node in the {} range, anchor {}",
        c.pi() as u8,
        if c.pi() { "upper" } else { "lower" },
        anchor
    );
    println!(
        "  direction bit {}: middle node {} the anchor",
        c.delta() as u8,
        if c.delta() { "below" } else { "above" }
    );
    println!(
        "  scale {}: distance {}..={} from the anchor",
        c.d(),
        1u64 << c.d(),
        (1u64 << (c.d() + 1)) - 1
    );
}

fn alice_decision(s: &NodeSet, c: &Certificate, candidates: &[Node]) -> (bool, String) {
    if !s.contains(c.u()) {
        return (false, format!("endpoint {} not in S -> reject", c.u()));
    }
    if !s.contains(c.v()) {
        return (false, format!("endpoint {} not in S -> reject", c.v()));
    }
    if let Some(x) = candidates.iter().find(|&&x| s.contains(x)) {
        return (false, format!("candidate {x} is in S -> reject"));
    }
    (
        true,
        format!(
            "{} in S, {} in S, no candidate in S -> accept",
            c.u(),
            c.v()
        ),
    )
}

fn bob_decision(t: &Tree, c: &Certificate, candidates: &[Node]) -> (bool, String) {
    for &x in candidates {
        if t.is_on_path(c.u(), x, c.v()).unwrap_or(false) {
            return (
                true,
                format!(
                    "candidate {x} lies on the tree path between {} and {} -> accept",
                    c.u(),
                    c.v()
                ),
            );
        }
    }
    (
        false,
        "no candidate lies on the tree path -> reject".to_string(),
    )
}

fn show_decisions(s: &NodeSet, t: &Tree, c: &Certificate, n: Node) -> bool {
    let candidates = candidate_rs(c, n);
    let listed = if candidates.is_empty() {
        "none".to_string()
    } else {
        candidates
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    println!("candidate middle nodes: {listed}");
    let (a, a_why) = alice_decision(s, c, &candidates);
    let (b, b_why) = bob_decision(t, c, &candidates);
    println!("alice (sees S): {a_why}");
    println!("bob (sees T): {b_why}");
    a && b
}

pub fn run(args: TraceArgs) -> Result<bool> {
    let n = args.n;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "trace needs n >= 3, got {n}"
        )));
    }
    if n > MAX_TRACE_N {
        return Err(Error::CapExceeded {
            what: "trace",
            actual: n as u64,
            limit: MAX_TRACE_N as u64,
        });
    }

    let (s, t) = match &args.fixed {
        Some(parts) => parse_fixed(n, parts)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let t = random_tree_with(n, &mut rng);
            let s = NodeSet::random(n, &mut rng);
            (s, t)
        }
    };

    println!("nodes: {n}");
    println!("S = {s}");
    println!("T = {t}");
    let value = f_oracle(&s, &t);
    let parts = induced_components(&t, &s);
    println!(
        "f(S,T) = {} (the tree edges inside S leave {} component{})",
        value as u8,
        parts,
        if parts == 1 { "" } else { "s" }
    );
    println!();

    if !value {
        println!("no witness exists; the prover stays silent");
        let demo = Certificate::new(1, 2, false, false, 0).expect("static demo certificate");
        println!();
        println!("refutation demo with an arbitrary certificate:");
        describe_certificate(&demo, n);
        let joint = show_decisions(&s, &t, &demo, n);
        println!(
            "joint: {} (as required on a 0-instance)",
            if joint { "accept" } else { "reject" }
        );
        // A joint accept here would contradict soundness.
        return Ok(!joint);
    }

    let witnesses = all_witnesses(&s, &t);
    println!("witnesses (u,t,v), cost |t-u| + |t-v|:");
    for w in witnesses.iter().take(MAX_LISTED_WITNESSES) {
        println!("  {w}  cost {}", w.mu());
    }
    if witnesses.len() > MAX_LISTED_WITNESSES {
        println!("  ... and {} more", witnesses.len() - MAX_LISTED_WITNESSES);
    }

    let chosen = choose_valid_witness(&s, &t, TieBreak::LexMin)
        .expect("a 1-instance always has a witness");
    println!("chosen: {chosen}, minimum cost, lexicographically least");
    let c = encode_certificate(chosen.u(), chosen.t(), chosen.v(), n)?;
    describe_certificate(&c, n);
    let joint = show_decisions(&s, &t, &c, n);
    println!("joint: {}", if joint { "accept" } else { "reject" });
    Ok(joint)
}
