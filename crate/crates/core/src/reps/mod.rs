//! Integral representations of the holonomy groups.

pub mod a4;
pub mod cyclic;
pub mod p2;

use std::collections::{BTreeMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupSpec, HolonomyGroup};
use crate::linalg::invariant::poly_invariant_factors;
use crate::linalg::ring::factorize;
use crate::linalg::sparse::SparseIntMatrix;
use crate::linalg::IntMatrix;

pub use a4::build_a4_rep;
pub use cyclic::{build_composite_rep, build_cyclic_rep};
pub use p2::build_p2_rep;

/// Coefficient ring the representation is read over. The matrices are
/// integral in every case.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingMarker {
    #[default]
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z_(p)")]
    Localized,
    #[serde(rename = "Z_p")]
    PAdic,
}

/// Which builder produced a representation, with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Provenance {
    Cyclic { p: u64, n: u32, m: usize, parameter: IntMatrix },
    Composite { factors: Vec<(u64, u32)>, m: usize, coprime_ok: bool },
    P2 { p: u64, n: usize },
    A4 { n: usize },
    Other { label: String },
}

#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<HolonomyGroup>,
    images: Vec<IntMatrix>,
    ring: RingMarker,
    provenance: Provenance,
    cache: OnceLock<std::result::Result<Vec<SparseIntMatrix>, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub relations_ok: bool,
    pub failed_relations: Vec<String>,
    pub faithful: bool,
    pub unit_determinants: bool,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.relations_ok && self.faithful && self.unit_determinants
    }
}

/// Serialized form of a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepBundle {
    pub group: GroupSpec,
    pub degree: usize,
    pub ring: RingMarker,
    pub provenance: Provenance,
    pub generators: BTreeMap<String, IntMatrix>,
}

impl Representation {
    /// Wraps generator images (in the group's generator order).
    pub fn new(group: Arc<HolonomyGroup>, images: Vec<IntMatrix>, provenance: Provenance) -> Result<Self> {
        let ngens = group.generators().len();
        if images.len() != ngens {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images given for {ngens} generators",
                images.len()
            )));
        }
        let d = images.first().map_or(0, |m| m.rows());
        for (m, name) in images.iter().zip(group.generator_names()) {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "image of {name} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { group, images, ring: RingMarker::Integers, provenance, cache: OnceLock::new() })
    }

    pub fn with_ring(mut self, ring: RingMarker) -> Self {
        self.ring = ring;
        self
    }

    pub fn group(&self) -> &HolonomyGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<HolonomyGroup> {
        self.group.clone()
    }

    pub fn degree(&self) -> usize {
        self.images.first().map_or(0, |m| m.rows())
    }

    pub fn ring(&self) -> RingMarker {
        self.ring
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn generator_images(&self) -> &[IntMatrix] {
        &self.images
    }

    pub fn generator_image(&self, name: &str) -> Result<&IntMatrix> {
        Ok(&self.images[self.group.generator_index(name)?])
    }

    /// `false` only for composite bundles whose `m` shares a factor with `|G|`.
    pub fn coprime_ok(&self) -> bool {
        match &self.provenance {
            Provenance::Composite { coprime_ok, .. } => *coprime_ok,
            _ => true,
        }
    }

    /// Images of all group elements, indexed like the group's elements.
    /// Built once along the group's spanning tree.
    pub fn element_images(&self) -> Result<&[SparseIntMatrix]> {
        let cached = self.cache.get_or_init(|| {
            let gens: Vec<SparseIntMatrix> = self
                .images
                .iter()
                .map(|m| SparseIntMatrix::from_dense(m).ok_or("generator entry exceeds 64 bits".to_string()))
                .collect::<std::result::Result<_, _>>()?;
            let mut out: Vec<SparseIntMatrix> = Vec::with_capacity(self.group.order());
            out.push(SparseIntMatrix::identity(self.degree()));
            for g in 1..self.group.order() {
                let (parent, gi) = self.group.spanning_step(g).expect("non-identity has a parent");
                let img = out[parent].mul(&gens[gi]).ok_or("element image entry exceeds 64 bits".to_string())?;
                out.push(img);
            }
            Ok(out)
        });
        cached.as_deref().map_err(|e| Error::Computation(e.clone()))
    }

    pub fn image_sparse(&self, g: usize) -> Result<&SparseIntMatrix> {
        Ok(&self.element_images()?[g])
    }

    pub fn image(&self, g: usize) -> Result<IntMatrix> {
        Ok(self.image_sparse(g)?.to_dense())
    }

    fn word_image(&self, word: &[(usize, u64)]) -> Result<SparseIntMatrix> {
        let mut acc = SparseIntMatrix::identity(self.degree());
        for &(gi, e) in word {
            let g = SparseIntMatrix::from_dense(&self.images[gi])
                .ok_or_else(|| Error::Computation("generator entry exceeds 64 bits".into()))?;
            for _ in 0..e {
                acc = acc.mul(&g).ok_or_else(|| Error::Computation("overflow in relation check".into()))?;
            }
        }
        Ok(acc)
    }

    /// Checks the defining relations, faithfulness and unit determinants.
    pub fn verify(&self) -> Result<VerifyReport> {
        let mut failed = Vec::new();
        for rel in self.group.relations() {
            if self.word_image(&rel.lhs)? != self.word_image(&rel.rhs)? {
                failed.push(rel.name);
            }
        }
        let relations_ok = failed.is_empty();
        // Images are built from the generators, so they are only meaningful
        // once the relations hold.
        let faithful = relations_ok && {
            let imgs = self.element_images()?;
            imgs.iter().collect::<HashSet<_>>().len() == imgs.len()
        };
        let unit_determinants = if self.degree() <= 80 {
            self.images
                .iter()
                .map(|m| m.determinant().map(|d| d.abs().is_one()))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|x| x)
        } else {
            // A matrix of finite order has determinant a root of unity in Z.
            self.group.generators().iter().enumerate().all(|(gi, &g)| {
                let k = self.group.element_order(g);
                self.word_image(&[(gi, k)]).map(|m| m.is_identity()).unwrap_or(false)
            })
        };
        Ok(VerifyReport { relations_ok, failed_relations: failed, faithful, unit_determinants })
    }

    /// Restriction to the cyclic subgroup `⟨h⟩`, presented as a cyclic group
    /// whose generator `a` (or product `a1⋯as`) is `h`.
    pub fn restrict_to_cyclic(&self, h: usize) -> Result<Representation> {
        if h == self.group.identity() {
            return Err(Error::InvalidParameter("restriction to the trivial subgroup".into()));
        }
        let k = self.group.element_order(h);
        let factors = factorize(k);
        let sub = HolonomyGroup::new(GroupSpec::Cyclic { factors: factors.clone() })?;
        let kk = BigInt::from(k);
        let mut images = Vec::new();
        for &(q, e) in &factors {
            // c ≡ 1 mod q^e and c ≡ 0 mod k / q^e.
            let qe = BigInt::from(q.pow(e));
            let rest = &kk / &qe;
            let inv = rest.extended_gcd(&qe).x.mod_floor(&qe);
            let c = (rest * inv).mod_floor(&kk);
            let c: u64 = c.try_into().expect("exponent fits");
            images.push(self.image(self.group.pow(h, c))?);
        }
        let label = format!("restriction to <{}>", self.group.format_element(h));
        let mut r = Representation::new(Arc::new(sub), images, Provenance::Other { label })?;
        r.ring = self.ring;
        Ok(r)
    }

    /// Block diagonal sum of representations of the same group.
    pub fn direct_sum(parts: &[&Representation], label: &str) -> Result<Representation> {
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("empty direct sum".into()))?;
        if parts.iter().any(|r| r.group.spec() != first.group.spec()) {
            return Err(Error::FamilyMismatch("direct sum of representations of different groups".into()));
        }
        let images = (0..first.images.len())
            .map(|gi| IntMatrix::direct_sum(&parts.iter().map(|r| &r.images[gi]).collect::<Vec<_>>()))
            .collect();
        Representation::new(first.group.clone(), images, Provenance::Other { label: label.into() })
    }

    /// Traces of all element images.
    pub fn character(&self) -> Result<Vec<BigInt>> {
        Ok(self
            .element_images()?
            .iter()
            .map(|m| BigInt::from((0..m.rows()).map(|i| m.row(i).find(|e| e.0 == i).map_or(0, |e| e.1)).sum::<i64>()))
            .collect())
    }

    pub fn to_bundle(&self) -> RepBundle {
        RepBundle {
            group: self.group.spec().clone(),
            degree: self.degree(),
            ring: self.ring,
            provenance: self.provenance.clone(),
            generators: self
                .group
                .generator_names()
                .iter()
                .cloned()
                .zip(self.images.iter().cloned())
                .collect(),
        }
    }

    /// Rebuilds a representation from stored matrices (builders are not rerun).
    pub fn from_bundle(b: &RepBundle) -> Result<Representation> {
        let group = HolonomyGroup::new(b.group.clone())?;
        let mut images = Vec::new();
        for name in group.generator_names() {
            let m = b
                .generators
                .get(name)
                .ok_or_else(|| Error::Parse(format!("bundle lacks the image of generator {name}")))?;
            images.push(m.clone());
        }
        if b.generators.len() != images.len() {
            return Err(Error::Parse("bundle has images for unknown generators".into()));
        }
        let r = Representation::new(Arc::new(group), images, b.provenance.clone())?;
        if r.degree() != b.degree {
            return Err(Error::Parse(format!("bundle degree {} but images of size {}", b.degree, r.degree())));
        }
        Ok(r.with_ring(b.ring))
    }
}

/// Whether `A mod p` and `B mod p` are similar over `F_p`, decided by
/// comparing invariant factors of `xE - A` and `xE - B`.
pub fn params_equivalent_mod_p(a: &IntMatrix, b: &IntMatrix, p: u64) -> Result<bool> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "parameters of shape {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(poly_invariant_factors(&a.reduce_mod(p)) == poly_invariant_factors(&b.reduce_mod(p)))
}

/// Regular representation of a group (permutation matrices of left
/// multiplication).
pub fn regular_rep(group: Arc<HolonomyGroup>) -> Result<Representation> {
    let n = group.order();
    let images = group
        .generators()
        .iter()
        .map(|&g| {
            let mut m = IntMatrix::zeros(n, n);
            for x in 0..n {
                m.set(group.mul(g, x), x, BigInt::one());
            }
            m
        })
        .collect();
    Representation::new(group, images, Provenance::Other { label: "regular".into() })
}

/// The trivial representation of degree `d`.
pub fn trivial_rep(group: Arc<HolonomyGroup>, d: usize) -> Result<Representation> {
    let images = vec![IntMatrix::identity(d); group.generators().len()];
    Representation::new(group, images, Provenance::Other { label: format!("trivial of degree {d}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_group(p: u64, n: u32) -> Arc<HolonomyGroup> {
        Arc::new(HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(p, n)] }).unwrap())
    }

    #[test]
    fn regular_and_trivial() {
        let g = cyclic_group(3, 1);
        let r = regular_rep(g.clone()).unwrap();
        let v = r.verify().unwrap();
        assert!(v.all_ok());
        let t = trivial_rep(cyclic_group(2, 3), 1).unwrap();
        let v = t.verify().unwrap();
        assert!(v.relations_ok && !v.faithful);
    }

    #[test]
    fn parameter_similarity() {
        let j = IntMatrix::jordan_lower(2);
        assert!(params_equivalent_mod_p(&j, &j, 3).unwrap());
        assert!(!params_equivalent_mod_p(&j, &IntMatrix::identity(2), 3).unwrap());
        let c = IntMatrix::from_i64(&[vec![2, 1], vec![1, 1]]);
        let cinv = IntMatrix::from_i64(&[vec![1, -1], vec![-1, 2]]);
        let b = cinv.mul(&j).mul(&c);
        assert!(params_equivalent_mod_p(&j, &b, 3).unwrap());
    }

    #[test]
    fn bundle_roundtrip() {
        let r = regular_rep(cyclic_group(2, 2)).unwrap();
        let text = serde_json::to_string(&r.to_bundle()).unwrap();
        let back: RepBundle = serde_json::from_str(&text).unwrap();
        let r2 = Representation::from_bundle(&back).unwrap();
        assert_eq!(r2.generator_images(), r.generator_images());
    }
}
