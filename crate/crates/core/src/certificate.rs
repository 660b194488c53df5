//! Verdicts with the data needed to re-check them.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Relations,
    Faithful,
    CocycleValid,
    TorsionFree,
    Coboundary,
    Indecomposable,
    Decomposable,
    Local,
    Dimension,
    Split,
}

/// Re-checkable evidence attached to a certificate. Rational and integer
/// entries are stored as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `f(h) = (Γ(h) - E) z` modulo the lattice.
    Coboundary { element: String, z: Vec<String> },
    /// The Smith form of the norm matrix shows `N_h v ∉ N_h Z^d`.
    NormObstruction { element: String, prime: u64, coordinate: usize, divisor: String, value: String },
    /// `(h, x)` has order `order` in the crystallographic group.
    TorsionElement { element: String, x: Vec<String>, order: u64 },
    /// Idempotent `e ∉ {0, 1}` of the endomorphism algebra mod `p`.
    Idempotent { p: u64, rows: usize, entries: Vec<String> },
    /// Integral idempotent commuting with the representation.
    IntegralIdempotent { rows: usize, entries: Vec<String> },
    /// Locality data of the algebra mod `p`.
    LocalAlgebra { p: u64, dimension: usize, radical_dimension: usize, residue_degree: usize },
    /// Invariant factors of a parameter matrix mod `p`.
    InvariantFactors { p: u64, factors: Vec<String> },
    /// Restriction to a cyclic factor and its certificate.
    Restriction { element: String, degree: usize, summand_degree: usize, p: u64 },
    Note { text: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub verdict: bool,
    /// Short name of the check that produced the verdict.
    pub method: String,
    pub witnesses: Vec<Witness>,
    /// `Some(agree)` when an independent oracle was run.
    pub oracle_agrees: Option<bool>,
}

impl Certificate {
    pub fn new(kind: CertKind, verdict: bool, method: impl Into<String>) -> Self {
        Certificate { kind, verdict, method: method.into(), witnesses: Vec::new(), oracle_agrees: None }
    }

    pub fn with(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }
}
