use std::fmt;
use std::time::Duration;

use crate::graph::Node;

/// How a check walks its space: everything, or a seeded sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Randomized { .. } => write!(f, "randomized"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Soundness,
    Completeness,
    TriangleProperty,
    NaiveEquivalence,
    RectangleCover,
    CombinedSupport,
    SlackIdentity,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckKind::Soundness => "soundness",
            CheckKind::Completeness => "completeness",
            CheckKind::TriangleProperty => "triangle-property",
            CheckKind::NaiveEquivalence => "naive-equivalence",
            CheckKind::RectangleCover => "rectangle-cover",
            CheckKind::CombinedSupport => "combined-support",
            CheckKind::SlackIdentity => "slack-identity",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// Both sides accepted a certificate on an input pair whose predicate
    /// value is 0.
    JointAcceptOnZero,
    /// The predicate is 1 but the prover produced no certificate.
    MissingCertificate,
    /// The prover's certificate was rejected by one of the sides.
    RejectedCertificate,
    /// The predicate is 0 but the prover produced a certificate.
    SpuriousCertificate,
    /// A witness failed to transfer to either replacement endpoint.
    TriangleFailure,
    /// Witness existence disagrees with the connectivity oracle.
    OracleMismatch,
    /// Joint acceptance of the witness protocol disagrees with the oracle.
    NaiveMismatch,
    /// A jointly accepted certificate has no underlying witness.
    ContainmentFailure,
    /// A certificate's rectangle touches a 0-entry of the support.
    NonMonochromaticRectangle,
    /// A 1-entry of the support is covered by no certificate.
    CoverageGap,
    /// The two slack computations disagree.
    SlackMismatch,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ViolationKind::JointAcceptOnZero => "joint-accept-on-zero",
            ViolationKind::MissingCertificate => "missing-certificate",
            ViolationKind::RejectedCertificate => "rejected-certificate",
            ViolationKind::SpuriousCertificate => "spurious-certificate",
            ViolationKind::TriangleFailure => "triangle-failure",
            ViolationKind::OracleMismatch => "oracle-mismatch",
            ViolationKind::NaiveMismatch => "naive-mismatch",
            ViolationKind::ContainmentFailure => "containment-failure",
            ViolationKind::NonMonochromaticRectangle => "non-monochromatic-rectangle",
            ViolationKind::CoverageGap => "coverage-gap",
            ViolationKind::SlackMismatch => "slack-mismatch",
        };
        write!(f, "{name}")
    }
}

/// One concrete counterexample, with enough detail to replay it by hand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

/// Outcome of one check run. Everything except `elapsed` is deterministic
/// for a fixed `(check, n, mode)`; violations are sorted, so output does not
/// depend on worker count.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub check: CheckKind,
    pub n: Node,
    pub mode: Mode,
    pub checks_run: u64,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
    /// Command line that reproduces this run, for checks the CLI exposes.
    pub repro: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// The deterministic part of the report: header lines and violations,
    /// without timing.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("check: {}\n", self.check));
        out.push_str(&format!("n: {}\n", self.n));
        out.push_str(&format!("mode: {}\n", self.mode));
        if let Mode::Randomized { samples, seed } = self.mode {
            out.push_str(&format!("samples: {samples}\n"));
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str(&format!("checks_run: {}\n", self.checks_run));
        out.push_str(&format!("violations: {}\n", self.violations.len()));
        if let Some(repro) = &self.repro {
            out.push_str(&format!("repro: {repro}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!("violation: {v}\n"));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())?;
        writeln!(f, "elapsed_ms: {}", self.elapsed.as_millis())?;
        writeln!(
            f,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
