//! The group `Crys(G; M; T)` of pairs `(g, x)` with `x ∈ T(g)`, the three
//! family builders, and the check runner producing certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::{CertKind, Certificate, Witness};
use crate::cohomology::{certify_torsionfree, is_coboundary_on_cyclic, sparse_mul_rat, standard_cocycle, Cocycle};
use crate::endo::certify_indecomposable_checked;
use crate::error::{Error, Result};
use crate::reps::p2::p2_degree;
use crate::reps::{build_a4_rep, build_composite_rep, build_p2_rep, RepBundle, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Cyclic holonomy `H_{p_1^{n_1}} × ⋯ × H_{p_s^{n_s}}`, multiplicity `m`.
    Theorem1 { factors: Vec<(u64, u32)>, m: usize },
    /// Holonomy `C_p × C_p`.
    Theorem2 { p: u64, n: usize },
    /// Holonomy `A_4`.
    Theorem3 { n: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Theorem1 { .. } => "theorem1",
            Family::Theorem2 { .. } => "theorem2",
            Family::Theorem3 { .. } => "theorem3",
        }
    }

    /// `m·|G|`, `(3p-2)n + p²` and `12n`.
    pub fn expected_dimension(&self) -> usize {
        match self {
            Family::Theorem1 { factors, m } => m * factors.iter().map(|&(p, n)| p.pow(n) as usize).product::<usize>(),
            Family::Theorem2 { p, n } => p2_degree(*p, *n),
            Family::Theorem3 { n } => 12 * n,
        }
    }

    pub fn build_rep(&self) -> Result<Representation> {
        match self {
            Family::Theorem1 { factors, m } => build_composite_rep(factors, *m),
            Family::Theorem2 { p, n } => build_p2_rep(*p, *n),
            Family::Theorem3 { n } => build_a4_rep(*n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Theorem1 { factors, m } => {
                let fs: Vec<String> = factors.iter().map(|(p, n)| format!("{p}^{n}")).collect();
                write!(f, "theorem1 factors={} m={m}", fs.join(","))
            }
            Family::Theorem2 { p, n } => write!(f, "theorem2 p={p} n={n}"),
            Family::Theorem3 { n } => write!(f, "theorem3 n={n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrysGroup {
    family: Option<Family>,
    cocycle: Cocycle,
    nonsplit: Option<bool>,
    pub certificates: Vec<Certificate>,
}

/// `Some(true)` if some prime-order restriction is not a coboundary,
/// `Some(false)` for the zero cocycle, `None` when undecided.
fn nonsplit_flag(f: &Cocycle) -> Result<Option<bool>> {
    if f.is_zero() {
        return Ok(Some(false));
    }
    for (h, _) in f.rep().group().prime_order_subgroups() {
        if !is_coboundary_on_cyclic(f, h)?.is_coboundary {
            return Ok(Some(true));
        }
    }
    Ok(None)
}

/// Family representation with its standard cocycle.
pub fn build_crys(family: &Family) -> Result<CrysGroup> {
    let rep = Arc::new(family.build_rep()?);
    let cocycle = standard_cocycle(&rep)?;
    let mut g = CrysGroup::new(cocycle)?;
    g.family = Some(family.clone());
    Ok(g)
}

impl CrysGroup {
    pub fn new(cocycle: Cocycle) -> Result<Self> {
        let nonsplit = nonsplit_flag(&cocycle)?;
        Ok(CrysGroup { family: None, cocycle, nonsplit, certificates: Vec::new() })
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn rep(&self) -> &Representation {
        self.cocycle.rep()
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn dimension(&self) -> usize {
        self.rep().degree()
    }

    pub fn nonsplit(&self) -> Option<bool> {
        self.nonsplit
    }

    /// The same group with another cocycle on the same representation.
    pub fn with_cocycle(&self, cocycle: Cocycle) -> Result<CrysGroup> {
        if !Arc::ptr_eq(&cocycle.rep_arc(), &self.cocycle.rep_arc()) {
            return Err(Error::FamilyMismatch("cocycle lives on another representation".into()));
        }
        let mut g = CrysGroup::new(cocycle)?;
        g.family = self.family.clone();
        Ok(g)
    }

    /// `(g, x)`, checking `x ∈ T(g)`.
    pub fn element(&self, g: usize, x: Vec<BigRational>) -> Result<CrysElement> {
        if g >= self.rep().group().order() {
            return Err(Error::InvalidParameter(format!("group element index {g} out of range")));
        }
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch(format!("translation of length {} in dimension {}", x.len(), self.dimension())));
        }
        let ok = x.iter().zip(self.cocycle.value(g).coords()).all(|(a, b)| (a - b).is_integer());
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "translation part is not in T({})",
                self.rep().group().format_element(g)
            )));
        }
        Ok(CrysElement { g, x })
    }

    /// `(g, f(g) + m)`.
    pub fn lift(&self, g: usize, m: &[BigInt]) -> Result<CrysElement> {
        let base = self.cocycle.value(g).coords();
        if m.len() != base.len() {
            return Err(Error::DimensionMismatch("lattice vector has wrong length".into()));
        }
        let x = base.iter().zip(m).map(|(b, k)| b + BigRational::from_integer(k.clone())).collect();
        self.element(g, x)
    }

    pub fn translation(&self, m: &[BigInt]) -> Result<CrysElement> {
        self.lift(self.rep().group().identity(), m)
    }

    pub fn identity(&self) -> CrysElement {
        CrysElement { g: self.rep().group().identity(), x: vec![BigRational::zero(); self.dimension()] }
    }

    fn act(&self, g: usize, x: &[BigRational]) -> Result<Vec<BigRational>> {
        Ok(sparse_mul_rat(self.rep().image_sparse(g)?, x))
    }

    fn check_member(&self, e: &CrysElement) -> Result<()> {
        if e.g >= self.rep().group().order() || e.x.len() != self.dimension() {
            return Err(Error::FamilyMismatch("element does not belong to this group".into()));
        }
        Ok(())
    }

    /// `(g, x)(g', x') = (gg', Γ(g)x' + x)`.
    pub fn multiply(&self, a: &CrysElement, b: &CrysElement) -> Result<CrysElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut x = self.act(a.g, &b.x)?;
        for (xi, ai) in x.iter_mut().zip(&a.x) {
            *xi += ai;
        }
        Ok(CrysElement { g: self.rep().group().mul(a.g, b.g), x })
    }

    /// `(g⁻¹, -Γ(g⁻¹)x)`.
    pub fn inverse(&self, a: &CrysElement) -> Result<CrysElement> {
        self.check_member(a)?;
        let gi = self.rep().group().inv(a.g);
        let x = self.act(gi, &a.x)?.into_iter().map(|v| -v).collect();
        Ok(CrysElement { g: gi, x })
    }

    pub fn power(&self, a: &CrysElement, mut e: u64) -> Result<CrysElement> {
        let mut acc = self.identity();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Finite order, or `None` when the element has infinite order.
    pub fn order(&self, a: &CrysElement) -> Result<Option<u64>> {
        let k = self.rep().group().element_order(a.g);
        let t = self.power(a, k)?;
        Ok(if t.x.iter().all(Zero::is_zero) { Some(k) } else { None })
    }

    /// Uniform `g`, translation `f(g) + m` with `m` in `[-bound, bound]^d`.
    pub fn random_element<R: Rng>(&self, rng: &mut R, bound: i64) -> Result<CrysElement> {
        let g = rng.gen_range(0..self.rep().group().order());
        let m: Vec<BigInt> = (0..self.dimension()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        self.lift(g, &m)
    }

    /// `"(a^3*b, [1/2, 0, ...])"`.
    pub fn format(&self, e: &CrysElement) -> String {
        let xs: Vec<String> = e.x.iter().map(|v| v.to_string()).collect();
        format!("({}, [{}])", self.rep().group().format_element(e.g), xs.join(", "))
    }

    pub fn parse(&self, text: &str) -> Result<CrysElement> {
        let bad = || Error::Parse(format!("cannot read element '{text}'"));
        let t = text.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let open = t.rfind('[').ok_or_else(bad)?;
        let g_text = t[..open].trim().strip_suffix(',').ok_or_else(bad)?;
        let v_text = t[open + 1..].trim().strip_suffix(']').ok_or_else(bad)?;
        let g = self.rep().group().parse_element(g_text)?;
        let x = if v_text.trim().is_empty() {
            Vec::new()
        } else {
            v_text
                .split(',')
                .map(|s| s.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("bad rational '{}'", s.trim()))))
                .collect::<Result<Vec<_>>>()?
        };
        self.element(g, x)
    }

    pub fn to_bundle(&self) -> CrysBundle {
        CrysBundle {
            family: self.family.clone(),
            dimension: self.dimension(),
            representation: self.rep().to_bundle(),
            cocycle: self.cocycle.to_json_map(),
            nonsplit: self.nonsplit,
            certificates: self.certificates.clone(),
        }
    }

    pub fn from_bundle(b: &CrysBundle) -> Result<CrysGroup> {
        let rep = Arc::new(Representation::from_bundle(&b.representation)?);
        if rep.degree() != b.dimension {
            return Err(Error::DimensionMismatch(format!(
                "bundle records dimension {} for a representation of degree {}",
                b.dimension,
                rep.degree()
            )));
        }
        let cocycle = Cocycle::from_json_map(&rep, &b.cocycle)?;
        let mut g = CrysGroup::new(cocycle)?;
        g.family = b.family.clone();
        g.certificates = b.certificates.clone();
        Ok(g)
    }

    /// Runs one check and returns its certificate.
    pub fn run_check(&self, check: Check, oracle: bool) -> Result<Certificate> {
        let rep = self.rep();
        match check {
            Check::Relations => {
                let r = rep.verify()?;
                let mut c = Certificate::new(CertKind::Relations, r.relations_ok && r.unit_determinants, "generator images satisfy the defining relations");
                for rel in r.failed_relations {
                    c = c.with(Witness::Note { text: format!("relation {rel} fails") });
                }
                Ok(c)
            }
            Check::Faithful => {
                let r = rep.verify()?;
                Ok(Certificate::new(CertKind::Faithful, r.faithful, "element images pairwise distinct"))
            }
            Check::Cocycle => {
                let mut c = Certificate::new(CertKind::CocycleValid, true, "cocycle law on the full multiplication table");
                if let Some((g, h)) = self.cocycle.law_violation()? {
                    let grp = rep.group();
                    c.verdict = false;
                    c = c.with(Witness::Note {
                        text: format!("f(gh) != g f(h) + f(g) at g = {}, h = {}", grp.format_element(g), grp.format_element(h)),
                    });
                }
                Ok(c)
            }
            Check::Torsionfree => certify_torsionfree(&self.cocycle, oracle),
            Check::Indecomposable => {
                let mut last = None;
                for p in rep.group().order_primes() {
                    let c = certify_indecomposable_checked(rep, p, oracle)?;
                    if c.verdict || c.kind == CertKind::Decomposable {
                        return Ok(c);
                    }
                    last = Some(c);
                }
                last.ok_or_else(|| Error::Computation("trivial group has no prime to test".into()))
            }
            Check::Dimension => {
                let d = self.dimension();
                let (ok, note) = match &self.family {
                    Some(f) => {
                        let e = f.expected_dimension();
                        (d == e, format!("degree {d}, family formula {e}"))
                    }
                    None => (true, format!("degree {d}")),
                };
                Ok(Certificate::new(CertKind::Dimension, ok, "rank of the lattice").with(Witness::Note { text: note }))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrysElement {
    pub g: usize,
    pub x: Vec<BigRational>,
}

impl CrysElement {
    pub fn is_translation(&self) -> bool {
        self.g == 0
    }

    /// Whether the translation part is integral.
    pub fn integral(&self) -> bool {
        self.x.iter().all(|v| v.is_integer())
    }
}

/// Serialized crystallographic group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrysBundle {
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub dimension: usize,
    pub representation: RepBundle,
    pub cocycle: BTreeMap<String, Vec<String>>,
    pub nonsplit: Option<bool>,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Relations,
    Faithful,
    Cocycle,
    Torsionfree,
    Indecomposable,
    Dimension,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Relations, Check::Faithful, Check::Cocycle, Check::Torsionfree, Check::Indecomposable, Check::Dimension];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Relations => "relations",
            Check::Faithful => "faithful",
            Check::Cocycle => "cocycle",
            Check::Torsionfree => "torsionfree",
            Check::Indecomposable => "indecomposable",
            Check::Dimension => "dimension",
        }
    }

    /// The criterion behind the check.
    pub fn basis(&self) -> &'static str {
        match self {
            Check::Relations => "defining relations of the holonomy group",
            Check::Faithful => "injectivity of the representation",
            Check::Cocycle => "f(gh) = g f(h) + f(g) modulo the lattice",
            Check::Torsionfree => "no prime-order restriction of the cocycle is a coboundary",
            Check::Indecomposable => "local centralizer mod p, or restriction to local factors",
            Check::Dimension => "rank of the lattice against the family formula",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}
