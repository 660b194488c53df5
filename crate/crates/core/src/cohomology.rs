//! 1-cocycles `G → FM/M`, the coboundary test on cyclic subgroups and the
//! torsionfreeness certificate built from it.
//!
//! For `h` of order `k` with norm `N = 1 + h + ⋯ + h^{k-1}`, a cocycle value
//! `f(h) = v + M` is a coboundary on `⟨h⟩` iff `N v ∈ N·M`; the test is a
//! lattice membership question decided through the Smith form of `N`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::certificate::{CertKind, Certificate, Witness};
use crate::cyclotomic::alpha;
use crate::error::{Error, Result};
use crate::linalg::ring::{format_rational, frac_part, parse_rational};
use crate::linalg::snf::{kernel_saturated, snf, solve_linear_hermite, solve_with_snf};
use crate::linalg::sparse::SparseIntMatrix;
use crate::linalg::{IntMatrix, Matrix};
use crate::reps::p2::condensed_range;
use crate::reps::{Provenance, Representation};

/// Element of `FM/M`, stored as its representative in `[0, 1)^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetVector(Vec<BigRational>);

impl CosetVector {
    pub fn new(v: Vec<BigRational>) -> Self {
        CosetVector(v.iter().map(frac_part).collect())
    }

    pub fn zero(d: usize) -> Self {
        CosetVector(vec![BigRational::zero(); d])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        CosetVector::new(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn parse(items: &[String]) -> Result<Self> {
        let v = items
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CosetVector::new(v))
    }
}

pub(crate) fn sparse_mul_rat(m: &SparseIntMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| m.row(i).fold(BigRational::zero(), |acc, (j, c)| acc + &v[j] * BigInt::from(c)))
        .collect()
}

fn add_vec(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// A 1-cocycle, tabulated on every group element.
#[derive(Clone, Debug)]
pub struct Cocycle {
    rep: Arc<Representation>,
    gen_values: Vec<CosetVector>,
    table: Vec<CosetVector>,
}

impl Cocycle {
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn rep_arc(&self) -> Arc<Representation> {
        self.rep.clone()
    }

    pub fn gen_values(&self) -> &[CosetVector] {
        &self.gen_values
    }

    pub fn value(&self, g: usize) -> &CosetVector {
        &self.table[g]
    }

    pub fn is_zero(&self) -> bool {
        self.gen_values.iter().all(|v| v.is_zero())
    }

    /// Common denominator of all values.
    pub fn denominator(&self) -> BigInt {
        self.table.iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator()))
    }

    /// First pair `(g, h)` violating `f(gh) = Γ(g) f(h) + f(g)`, if any.
    pub fn law_violation(&self) -> Result<Option<(usize, usize)>> {
        let g = self.rep.group();
        let imgs = self.rep.element_images()?;
        for x in 0..g.order() {
            for y in 0..g.order() {
                let rhs = CosetVector::new(add_vec(&sparse_mul_rat(&imgs[x], self.table[y].coords()), self.table[x].coords()));
                if rhs != self.table[g.mul(x, y)] {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    /// The cocycle `g ↦ f(g) + (Γ(g) - E) z`.
    pub fn with_coboundary(&self, z: &[BigRational]) -> Result<Cocycle> {
        let g = self.rep.group();
        let imgs = self.rep.element_images()?;
        let vals = g
            .generators()
            .iter()
            .zip(&self.gen_values)
            .map(|(&s, f)| {
                let gz = sparse_mul_rat(&imgs[s], z);
                let delta: Vec<BigRational> = gz.iter().zip(z).map(|(a, b)| a - b).collect();
                CosetVector::new(add_vec(f.coords(), &delta))
            })
            .collect();
        extend_cocycle(&self.rep, vals)
    }

    pub fn to_json_map(&self) -> BTreeMap<String, Vec<String>> {
        self.rep
            .group()
            .generator_names()
            .iter()
            .cloned()
            .zip(self.gen_values.iter().map(|v| v.to_strings()))
            .collect()
    }

    pub fn from_json_map(rep: &Arc<Representation>, map: &BTreeMap<String, Vec<String>>) -> Result<Cocycle> {
        let mut vals = Vec::new();
        for name in rep.group().generator_names() {
            let items = map
                .get(name)
                .ok_or_else(|| Error::Parse(format!("cocycle lacks a value for generator {name}")))?;
            vals.push(CosetVector::parse(items)?);
        }
        if map.len() != vals.len() {
            return Err(Error::Parse("cocycle has values for unknown generators".into()));
        }
        extend_cocycle(rep, vals)
    }
}

/// Extends generator values to a cocycle along the group's spanning tree,
/// then checks every defining relation.
pub fn extend_cocycle(rep: &Arc<Representation>, gen_values: Vec<CosetVector>) -> Result<Cocycle> {
    let g = rep.group();
    let d = rep.degree();
    if gen_values.len() != g.generators().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} generator values for {} generators",
            gen_values.len(),
            g.generators().len()
        )));
    }
    if let Some(v) = gen_values.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch(format!("cocycle value of length {} for degree {d}", v.dim())));
    }
    let imgs = rep.element_images()?;
    let mut table = vec![CosetVector::zero(d)];
    for x in 1..g.order() {
        let (parent, gi) = g.spanning_step(x).expect("non-identity has a parent");
        let moved = sparse_mul_rat(&imgs[parent], gen_values[gi].coords());
        table.push(CosetVector::new(add_vec(table[parent].coords(), &moved)));
    }
    let word_value = |word: &[(usize, u64)]| {
        let mut elem = g.identity();
        let mut acc = vec![BigRational::zero(); d];
        for &(gi, e) in word {
            for _ in 0..e {
                acc = add_vec(&acc, &sparse_mul_rat(&imgs[elem], gen_values[gi].coords()));
                elem = g.mul(elem, g.generators()[gi]);
            }
        }
        acc
    };
    for rel in g.relations() {
        let diff: Vec<BigRational> =
            word_value(&rel.lhs).iter().zip(word_value(&rel.rhs)).map(|(a, b)| a - b).collect();
        let residue = CosetVector::new(diff);
        if !residue.is_zero() {
            return Err(Error::NotACocycle {
                relation: rel.name,
                residue: format!("({})", residue.to_strings().join(", ")),
            });
        }
    }
    Ok(Cocycle { rep: rep.clone(), gen_values, table })
}

pub fn zero_cocycle(rep: &Arc<Representation>) -> Result<Cocycle> {
    let vals = vec![CosetVector::zero(rep.degree()); rep.group().generators().len()];
    extend_cocycle(rep, vals)
}

fn unit_vector(d: usize, i: usize, x: BigRational) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); d];
    v[i] = x;
    v
}

/// The standard cocycle of each family:
/// `f(a_i) = v / p_i^{n_i}` for the cyclic families; `f(a) = X`, `f(b) = Y`
/// (zero on the `Δ_n` coordinates) for `C_p × C_p`; `f_n` for `A_4`.
pub fn standard_cocycle(rep: &Arc<Representation>) -> Result<Cocycle> {
    let d = rep.degree();
    let vals = match rep.provenance() {
        Provenance::Cyclic { p, n, .. } => {
            vec![unit_vector(d, 0, BigRational::new(1.into(), BigInt::from(p.pow(*n))))]
        }
        Provenance::Composite { factors, .. } => factors
            .iter()
            .map(|&(p, n)| unit_vector(d, 0, BigRational::new(1.into(), BigInt::from(p.pow(n)))))
            .collect(),
        Provenance::P2 { p, .. } => {
            let al = alpha(*p);
            let mut x = vec![BigRational::zero(); d];
            for (k, c) in condensed_range(*p, *p as usize + 1).zip(al.coords()) {
                x[k] = c.clone();
            }
            let mut y = vec![BigRational::zero(); d];
            for s in 1..=*p as usize {
                for (k, c) in condensed_range(*p, s).zip(al.coords()) {
                    y[k] = c.clone();
                }
            }
            vec![x, y]
        }
        Provenance::A4 { n } => {
            let half = BigRational::new(1.into(), 2.into());
            let mut fa = vec![BigRational::zero(); d];
            fa[n + 3] = half.clone();
            fa[n + 4] = half;
            vec![fa, unit_vector(d, 0, BigRational::new(1.into(), 3.into()))]
        }
        Provenance::Other { label } => {
            return Err(Error::FamilyMismatch(format!("no standard cocycle for representation '{label}'")))
        }
    };
    extend_cocycle(rep, vals.into_iter().map(CosetVector::new).collect())
}

/// `1 + Γ(h) + ⋯ + Γ(h)^{k-1}`.
pub fn norm_matrix(rep: &Representation, h: usize) -> Result<IntMatrix> {
    let g = rep.group();
    let imgs = rep.element_images()?;
    let mut acc = SparseIntMatrix::identity(rep.degree());
    let mut x = h;
    while x != g.identity() {
        acc = acc.add(&imgs[x]).ok_or_else(|| Error::Computation("overflow in norm matrix".into()))?;
        x = g.mul(x, h);
    }
    Ok(acc.to_dense())
}

fn integral_vector(v: &[BigRational]) -> Result<Vec<BigInt>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Computation("norm of a cocycle value is not integral".into()))
            }
        })
        .collect()
}

/// Outcome of the coboundary test on `⟨h⟩`.
#[derive(Clone, Debug)]
pub struct CoboundaryResult {
    pub element: usize,
    pub order: u64,
    pub is_coboundary: bool,
    /// For a coboundary: `z` with `f(h) ≡ (Γ(h) - E) z`.
    pub z: Option<Vec<BigRational>>,
    /// Otherwise: `(coordinate, divisor, value)` of the Smith form system
    /// `D y = U N v` that has no integral solution.
    pub obstruction: Option<(usize, BigInt, BigInt)>,
}

impl CoboundaryResult {
    pub fn witness(&self, rep: &Representation) -> Witness {
        let element = rep.group().format_element(self.element);
        match (&self.z, &self.obstruction) {
            (Some(z), _) => Witness::Coboundary { element, z: strings(z) },
            (None, Some((coordinate, divisor, value))) => Witness::NormObstruction {
                element,
                prime: self.order,
                coordinate: *coordinate,
                divisor: divisor.to_string(),
                value: value.to_string(),
            },
            (None, None) => Witness::Note { text: format!("restriction to <{element}> is not a coboundary") },
        }
    }
}

pub fn is_coboundary_on_cyclic(f: &Cocycle, h: usize) -> Result<CoboundaryResult> {
    let rep = f.rep();
    let g = rep.group();
    if h == g.identity() {
        return Err(Error::InvalidParameter("coboundary test on the trivial subgroup".into()));
    }
    let order = g.element_order(h);
    let v = f.value(h).coords().to_vec();
    let n = norm_matrix(rep, h)?;
    let u = integral_vector(&n.to_rational().mul_vec(&v))?;
    let s = snf(&n);
    let c = s.u.mul_vec(&u);
    for (i, ci) in c.iter().enumerate() {
        let div = if i < s.rank { s.d.get(i, i).clone() } else { BigInt::zero() };
        let bad = if div.is_zero() { !ci.is_zero() } else { !ci.is_multiple_of(&div) };
        if bad {
            return Ok(CoboundaryResult {
                element: h,
                order,
                is_coboundary: false,
                z: None,
                obstruction: Some((i, div, ci.clone())),
            });
        }
    }
    let x = solve_with_snf(&s, &u).expect("every coordinate was divisible");
    // v - x lies in ker N = im(Γ(h) - E) over Q.
    let w: Vec<BigRational> = v.iter().zip(&x).map(|(a, b)| a - BigRational::from_integer(b.clone())).collect();
    let z = if w.iter().all(|t| t.is_zero()) {
        vec![BigRational::zero(); rep.degree()]
    } else {
        let hm = rep.image(h)?.sub(&IntMatrix::identity(rep.degree())).to_rational();
        hm.solve(&w)
            .ok_or_else(|| Error::Computation("kernel of the norm is not the image of h - 1".into()))?
    };
    Ok(CoboundaryResult { element: h, order, is_coboundary: true, z: Some(z), obstruction: None })
}

/// Searches for a torsion element `(h, x)` with `x ≡ f(h)`: solves
/// `N m = -N v` with a Hermite-form solver (independent of the Smith-form
/// test) and confirms `(h, v + m)^k = (1, 0)` by repeated multiplication.
pub fn torsion_element_search(f: &Cocycle, h: usize) -> Result<Option<Vec<BigRational>>> {
    let rep = f.rep();
    let g = rep.group();
    let v = f.value(h).coords().to_vec();
    let n = norm_matrix(rep, h)?;
    let target: Vec<BigInt> = integral_vector(&n.to_rational().mul_vec(&v))?.into_iter().map(|t| -t).collect();
    let Some(m) = solve_linear_hermite(&n, &target) else {
        return Ok(None);
    };
    let x: Vec<BigRational> = v.iter().zip(&m).map(|(a, b)| a + BigRational::from_integer(b.clone())).collect();
    let imgs = rep.element_images()?;
    let (mut elem, mut acc) = (g.identity(), vec![BigRational::zero(); rep.degree()]);
    for _ in 0..g.element_order(h) {
        acc = add_vec(&acc, &sparse_mul_rat(&imgs[elem], &x));
        elem = g.mul(elem, h);
    }
    if elem != g.identity() || acc.iter().any(|t| !t.is_zero()) {
        return Err(Error::Computation("torsion candidate does not have finite order".into()));
    }
    Ok(Some(x))
}

/// Torsionfree iff no restriction to a prime-order subgroup is a coboundary.
/// With `oracle`, every prime-order element is also run through
/// [`torsion_element_search`] and the two answers are compared.
pub fn certify_torsionfree(f: &Cocycle, oracle: bool) -> Result<Certificate> {
    let rep = f.rep();
    let g = rep.group();
    let mut cert = Certificate::new(CertKind::TorsionFree, true, "norm-map coboundary test on prime-order subgroups");
    for (h, _) in g.prime_order_subgroups() {
        let r = is_coboundary_on_cyclic(f, h)?;
        if r.is_coboundary {
            cert.verdict = false;
            if let Some(x) = torsion_element_search(f, h)? {
                cert.witnesses.push(Witness::TorsionElement {
                    element: g.format_element(h),
                    x: strings(&x),
                    order: r.order,
                });
            }
        }
        cert.witnesses.push(r.witness(rep));
    }
    if oracle {
        let mut agree = true;
        for (h, _) in g.prime_order_elements() {
            let cob = is_coboundary_on_cyclic(f, h)?.is_coboundary;
            let tor = torsion_element_search(f, h)?.is_some();
            agree &= cob == tor;
        }
        cert.oracle_agrees = Some(agree);
    }
    Ok(cert)
}

/// `|H¹(⟨h⟩, FM/M)| = |M^h / N_h M|`.
pub fn h1_order_cyclic(rep: &Representation, h: usize) -> Result<BigInt> {
    let d = rep.degree();
    let fixed = kernel_saturated(&rep.image(h)?.sub(&IntMatrix::identity(d)));
    let r = fixed.len();
    if r == 0 {
        return Ok(BigInt::one());
    }
    let k = Matrix::from_fn(d, r, &BigInt::zero(), |i, j| fixed[j][i].clone());
    let ks = snf(&k);
    let n = norm_matrix(rep, h)?;
    let mut coords = IntMatrix::zeros(r, d);
    for j in 0..d {
        let c = solve_with_snf(&ks, &n.col(j))
            .ok_or_else(|| Error::Computation("norm image outside the fixed lattice".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            coords.set(i, j, x);
        }
    }
    let s = snf(&coords);
    if s.rank < r {
        return Err(Error::Computation("norm image has lower rank than the fixed lattice".into()));
    }
    Ok(s.diagonal().iter().take(r).fold(BigInt::one(), |acc, x| acc * x))
}

/// `(Γ(h) - E) z` for a rational `z`.
pub fn coboundary_value(rep: &Representation, h: usize, z: &[BigRational]) -> Result<Vec<BigRational>> {
    let img = rep.image_sparse(h)?;
    Ok(sparse_mul_rat(img, z).iter().zip(z).map(|(a, b)| a - b).collect())
}

/// Random cocycle of a cyclic group `⟨a⟩` of order `k`:
/// `f(a) = (Γ(a) - E) z + Σ c_i v_i / k`, with `z` rational of denominator
/// dividing `k` and `v_i` a basis of the integral fixed vectors. Every
/// cohomology class of `⟨a⟩` arises this way.
pub fn random_cyclic_cocycle<R: rand::Rng>(rep: &Arc<Representation>, rng: &mut R) -> Result<Cocycle> {
    let g = rep.group();
    if g.generators().len() != 1 {
        return Err(Error::InvalidParameter("random cocycles are drawn for cyclic groups only".into()));
    }
    let a = g.generators()[0];
    let k = g.order() as i64;
    let d = rep.degree();
    let z: Vec<BigRational> =
        (0..d).map(|_| BigRational::new(rng.gen_range(-k..=k).into(), rng.gen_range(1..=k).into())).collect();
    let mut x = coboundary_value(rep, a, &z)?;
    let fixed = kernel_saturated(&rep.image(a)?.sub(&IntMatrix::identity(d)));
    for v in fixed {
        let c = BigRational::new(rng.gen_range(0..k).into(), k.into());
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += &c * BigRational::from_integer(vi);
        }
    }
    extend_cocycle(rep, vec![CosetVector::new(x)])
}
