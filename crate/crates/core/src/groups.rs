//! The three holonomy families: cyclic groups of composite order,
//! `C_p × C_p`, and `A_4`.
//!
//! Groups are small, so every group is stored with its full multiplication
//! table; elements are addressed by index, with index 0 the identity.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ring::{factorize, is_prime};

/// Largest group order the table-based implementation accepts.
pub const MAX_ORDER: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `H_{p_1^{n_1}} × ⋯ × H_{p_s^{n_s}}` with distinct primes.
    Cyclic { factors: Vec<(u64, u32)> },
    /// `⟨a, b | a^p = b^p = 1, ab = ba⟩`.
    ElemAbelian { p: u64 },
    /// `⟨a, b | a^2 = b^3 = (ab)^3 = 1⟩`.
    Alt4,
}

impl GroupSpec {
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic { factors } => factors.iter().map(|&(p, n)| p.pow(n)).product(),
            GroupSpec::ElemAbelian { p } => p * p,
            GroupSpec::Alt4 => 12,
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self {
            GroupSpec::Cyclic { factors } if factors.len() == 1 => vec!["a".into()],
            GroupSpec::Cyclic { factors } => (1..=factors.len()).map(|i| format!("a{i}")).collect(),
            _ => vec!["a".into(), "b".into()],
        }
    }
}

/// Normal form of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Exponents `(t_1, ..., t_s)` with `0 <= t_i < p_i^{n_i}`.
    Cyclic(Vec<u64>),
    /// `a^i b^j` with `0 <= i, j < p`.
    Pair(u64, u64),
    /// Images of `1..4` (0-based storage).
    Perm([u8; 4]),
}

/// A defining relation `lhs = rhs`, each side a word of generator powers.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<(usize, u64)>,
    pub rhs: Vec<(usize, u64)>,
}

#[derive(Clone, Debug)]
pub struct HolonomyGroup {
    spec: GroupSpec,
    gen_names: Vec<String>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// Breadth-first tree: element = parent * generator.
    parent: Vec<Option<(usize, usize)>>,
}

fn compose(g: &[u8; 4], h: &[u8; 4]) -> [u8; 4] {
    // (g h)(x) = h(g(x)): apply g first.
    let mut out = [0u8; 4];
    for x in 0..4 {
        out[x] = h[g[x] as usize];
    }
    out
}

fn perm_from_cycles(cycles: &[&[u8]]) -> [u8; 4] {
    let mut out = [0, 1, 2, 3];
    for c in cycles {
        for k in 0..c.len() {
            out[(c[k] - 1) as usize] = c[(k + 1) % c.len()] - 1;
        }
    }
    out
}

/// `a = (12)(34)` in the permutation model of `A_4`.
pub const A4_A: [u8; 4] = [1, 0, 3, 2];
/// `b = (123)` in the permutation model of `A_4`.
pub const A4_B: [u8; 4] = [1, 2, 0, 3];

impl HolonomyGroup {
    /// Builds a group after checking the family's basic constraints.
    pub fn new(spec: GroupSpec) -> Result<Self> {
        match &spec {
            GroupSpec::Cyclic { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidParameter("cyclic group needs at least one factor".into()));
                }
                let mut seen = BTreeSet::new();
                for &(p, n) in factors {
                    if !is_prime(p) {
                        return Err(Error::InvalidParameter(format!("{p} is not prime")));
                    }
                    if n == 0 {
                        return Err(Error::InvalidParameter(format!("exponent of {p} must be positive")));
                    }
                    if !seen.insert(p) {
                        return Err(Error::InvalidParameter(format!("prime {p} repeated")));
                    }
                }
            }
            GroupSpec::ElemAbelian { p } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidParameter(format!("{p} is not prime")));
                }
            }
            GroupSpec::Alt4 => {}
        }
        if spec.order() > MAX_ORDER {
            return Err(Error::InvalidParameter(format!(
                "group order {} exceeds the supported maximum {MAX_ORDER}",
                spec.order()
            )));
        }
        Ok(HolonomyGroup::build(spec))
    }

    /// Checks the constraints on the cyclic factors used by the `theorem1`
    /// family: `n_1 >= 3` and `n_i >= 2` for the remaining factors.
    pub fn new_theorem1(factors: Vec<(u64, u32)>) -> Result<Self> {
        if let Some(&(p, n)) = factors.first() {
            if n < 3 {
                return Err(Error::Hypothesis(format!(
                    "family theorem1 requires n_1 >= 3 (got {p}^{n})"
                )));
            }
        }
        for (i, &(p, n)) in factors.iter().enumerate().skip(1) {
            if n < 2 {
                return Err(Error::Hypothesis(format!(
                    "family theorem1 requires n_{} >= 2 (got {p}^{n})",
                    i + 1
                )));
            }
        }
        for &(p, _) in &factors {
            if !is_prime(p) {
                return Err(Error::Hypothesis(format!("family theorem1 requires prime p_i (got {p})")));
            }
        }
        HolonomyGroup::new(GroupSpec::Cyclic { factors })
    }

    fn build(spec: GroupSpec) -> Self {
        let gen_names = spec.generator_names();
        let (identity, gens): (GroupElement, Vec<GroupElement>) = match &spec {
            GroupSpec::Cyclic { factors } => {
                let s = factors.len();
                let gens = (0..s)
                    .map(|i| {
                        let mut e = vec![0; s];
                        e[i] = 1;
                        GroupElement::Cyclic(e)
                    })
                    .collect();
                (GroupElement::Cyclic(vec![0; s]), gens)
            }
            GroupSpec::ElemAbelian { .. } => {
                (GroupElement::Pair(0, 0), vec![GroupElement::Pair(1, 0), GroupElement::Pair(0, 1)])
            }
            GroupSpec::Alt4 => {
                (GroupElement::Perm([0, 1, 2, 3]), vec![GroupElement::Perm(A4_A), GroupElement::Perm(A4_B)])
            }
        };
        let mul = |x: &GroupElement, y: &GroupElement| -> GroupElement {
            match (&spec, x, y) {
                (GroupSpec::Cyclic { factors }, GroupElement::Cyclic(a), GroupElement::Cyclic(b)) => {
                    GroupElement::Cyclic(
                        factors
                            .iter()
                            .zip(a.iter().zip(b))
                            .map(|(&(p, n), (s, t))| (s + t) % p.pow(n))
                            .collect(),
                    )
                }
                (GroupSpec::ElemAbelian { p }, GroupElement::Pair(a, b), GroupElement::Pair(c, d)) => {
                    GroupElement::Pair((a + c) % p, (b + d) % p)
                }
                (GroupSpec::Alt4, GroupElement::Perm(g), GroupElement::Perm(h)) => {
                    GroupElement::Perm(compose(g, h))
                }
                _ => unreachable!("element of a different family"),
            }
        };
        // Breadth-first enumeration from the identity.
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let prod = mul(&elements[i], g);
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                    parent.push(Some((i, gi)));
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| index[&mul(&elements[i], &elements[j])]).collect())
            .collect();
        let inverse = (0..n).map(|i| (0..n).find(|&j| table[i][j] == 0).expect("group inverse")).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        HolonomyGroup { spec, gen_names, elements, index, table, inverse, generators, parent }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Element indices of the generators, in name order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.gen_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e % self.order() as u64 {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `(parent, generator)` with `g = parent * generator`, `None` for the identity.
    /// Parents come earlier in the enumeration order.
    pub fn spanning_step(&self, g: usize) -> Option<(usize, usize)> {
        self.parent[g]
    }

    /// Generator word (left to right) for `g`, read off the spanning tree.
    pub fn word(&self, g: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = g;
        while let Some((p, gi)) = self.parent[x] {
            out.push(gi);
            x = p;
        }
        out.reverse();
        out
    }

    /// Evaluates a word of named generator powers left to right.
    pub fn evaluate_word(&self, word: &[(&str, i64)]) -> Result<usize> {
        let mut acc = 0;
        for &(name, e) in word {
            let g = self.generators[self.generator_index(name)?];
            let base = if e < 0 { self.inv(g) } else { g };
            acc = self.mul(acc, self.pow(base, e.unsigned_abs()));
        }
        Ok(acc)
    }

    pub fn relations(&self) -> Vec<Relation> {
        let names = &self.gen_names;
        match &self.spec {
            GroupSpec::Cyclic { factors } => {
                let mut out: Vec<Relation> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, &(p, n))| Relation {
                        name: format!("{}^{} = 1", names[i], p.pow(n)),
                        lhs: vec![(i, p.pow(n))],
                        rhs: vec![],
                    })
                    .collect();
                for i in 0..factors.len() {
                    for j in i + 1..factors.len() {
                        out.push(Relation {
                            name: format!("{0}{1} = {1}{0}", names[i], names[j]),
                            lhs: vec![(i, 1), (j, 1)],
                            rhs: vec![(j, 1), (i, 1)],
                        });
                    }
                }
                out
            }
            GroupSpec::ElemAbelian { p } => vec![
                Relation { name: format!("a^{p} = 1"), lhs: vec![(0, *p)], rhs: vec![] },
                Relation { name: format!("b^{p} = 1"), lhs: vec![(1, *p)], rhs: vec![] },
                Relation { name: "ab = ba".into(), lhs: vec![(0, 1), (1, 1)], rhs: vec![(1, 1), (0, 1)] },
            ],
            GroupSpec::Alt4 => vec![
                Relation { name: "a^2 = 1".into(), lhs: vec![(0, 2)], rhs: vec![] },
                Relation { name: "b^3 = 1".into(), lhs: vec![(1, 3)], rhs: vec![] },
                Relation {
                    name: "(ab)^3 = 1".into(),
                    lhs: vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)],
                    rhs: vec![],
                },
            ],
        }
    }

    /// All elements of prime order, tagged with the prime.
    pub fn prime_order_elements(&self) -> Vec<(usize, u64)> {
        (1..self.order())
            .filter_map(|g| {
                let k = self.element_order(g);
                is_prime(k).then_some((g, k))
            })
            .collect()
    }

    /// Elements of the cyclic subgroup generated by `h`.
    pub fn cyclic_subgroup(&self, h: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([0]);
        let mut x = h;
        while x != 0 {
            out.insert(x);
            x = self.mul(x, h);
        }
        out
    }

    /// One generator (the first in enumeration order) per prime-order subgroup.
    pub fn prime_order_subgroups(&self) -> Vec<(usize, u64)> {
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for (g, q) in self.prime_order_elements() {
            if seen.insert(self.cyclic_subgroup(g)) {
                out.push((g, q));
            }
        }
        out
    }

    /// Prime divisors of the group order.
    pub fn order_primes(&self) -> Vec<u64> {
        factorize(self.order() as u64).into_iter().map(|(p, _)| p).collect()
    }

    pub fn format_element(&self, g: usize) -> String {
        match &self.elements[g] {
            GroupElement::Cyclic(t) => {
                let parts: Vec<String> = t
                    .iter()
                    .zip(&self.gen_names)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            }
            GroupElement::Pair(i, j) => {
                let mut parts = Vec::new();
                match i {
                    0 => {}
                    1 => parts.push("a".to_string()),
                    _ => parts.push(format!("a^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("b".to_string()),
                    _ => parts.push(format!("b^{j}")),
                }
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            }
            GroupElement::Perm(p) => format_cycles(p),
        }
    }

    /// Parses `"a^3*b^2"`, `"a1*a2^4"`, `"1"`, or cycle notation for `A_4`.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        if t == "1" || t == "e" || t.is_empty() {
            return Ok(0);
        }
        if t.starts_with('(') {
            if self.spec != GroupSpec::Alt4 {
                return Err(Error::Parse("cycle notation is only used for A4".into()));
            }
            let perm = parse_cycles(t)?;
            return self
                .index_of(&GroupElement::Perm(perm))
                .ok_or_else(|| Error::Parse(format!("{t} is not an even permutation")));
        }
        let mut word = Vec::new();
        for factor in t.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                ),
                None => (factor.trim(), 1),
            };
            word.push((name, e));
        }
        self.evaluate_word(&word)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { factors } => {
                let parts: Vec<String> = factors.iter().map(|(p, n)| format!("C_{}", p.pow(*n))).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupSpec::ElemAbelian { p } => write!(f, "C_{p} x C_{p}"),
            GroupSpec::Alt4 => write!(f, "A_4"),
        }
    }
}

fn format_cycles(p: &[u8; 4]) -> String {
    let mut seen = [false; 4];
    let mut out = String::new();
    for start in 0..4 {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            cyc.push(x + 1);
            seen[x] = true;
            x = p[x] as usize;
        }
        let body: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn parse_cycles(t: &str) -> Result<[u8; 4]> {
    let mut cycles: Vec<Vec<u8>> = Vec::new();
    for chunk in t.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("malformed cycle notation '{t}'")))?;
        let points = body
            .split(|c: char| c == ' ' || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<u8>() {
                Ok(v @ 1..=4) => Ok(v),
                _ => Err(Error::Parse(format!("bad point '{s}' in '{t}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        cycles.push(points);
    }
    let refs: Vec<&[u8]> = cycles.iter().map(|c| c.as_slice()).collect();
    Ok(perm_from_cycles(&refs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let c8 = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(2, 3)] }).unwrap();
        assert_eq!(c8.order(), 8);
        let c72 = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(2, 3), (3, 2)] }).unwrap();
        assert_eq!(c72.order(), 72);
        assert_eq!(c72.generator_names(), &["a1", "a2"]);
        let err = HolonomyGroup::new_theorem1(vec![(2, 2)]).unwrap_err();
        assert!(err.to_string().contains("n_1 >= 3"));
        assert!(HolonomyGroup::new_theorem1(vec![(2, 3), (3, 1)]).is_err());
        assert!(HolonomyGroup::new(GroupSpec::ElemAbelian { p: 4 }).is_err());
    }

    #[test]
    fn prime_order_counts() {
        let c8 = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(2, 3)] }).unwrap();
        let po = c8.prime_order_elements();
        assert_eq!(po.len(), 1);
        assert_eq!(c8.format_element(po[0].0), "a^4");
        let pp = HolonomyGroup::new(GroupSpec::ElemAbelian { p: 3 }).unwrap();
        assert_eq!(pp.prime_order_elements().len(), 8);
        assert_eq!(pp.prime_order_subgroups().len(), 4);
        let a4 = HolonomyGroup::new(GroupSpec::Alt4).unwrap();
        let po = a4.prime_order_elements();
        assert_eq!(po.iter().filter(|e| e.1 == 2).count(), 3);
        assert_eq!(po.iter().filter(|e| e.1 == 3).count(), 8);
    }

    #[test]
    fn words_and_conventions() {
        let a4 = HolonomyGroup::new(GroupSpec::Alt4).unwrap();
        assert_eq!(a4.evaluate_word(&[]).unwrap(), 0);
        assert_eq!(a4.evaluate_word(&[("a", 1), ("b", 1), ("a", 1), ("b", 1), ("a", 1), ("b", 1)]).unwrap(), 0);
        let ab = a4.evaluate_word(&[("a", 1), ("b", 1)]).unwrap();
        assert_eq!(a4.format_element(ab), "(1 3 4)");
        assert_eq!(a4.element_order(ab), 3);
        assert!(matches!(a4.evaluate_word(&[("c", 1)]), Err(Error::UnknownGenerator(_))));
        assert_eq!(a4.parse_element("(1 2)(3 4)").unwrap(), a4.generators()[0]);
    }

    #[test]
    fn text_roundtrip() {
        let g = HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(2, 3), (3, 2)] }).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.parse_element(&g.format_element(x)).unwrap(), x);
        }
        let pp = HolonomyGroup::new(GroupSpec::ElemAbelian { p: 5 }).unwrap();
        let x = pp.parse_element("a^3*b^2").unwrap();
        assert_eq!(pp.element(x), &GroupElement::Pair(3, 2));
    }

    #[test]
    fn spanning_words_evaluate() {
        let a4 = HolonomyGroup::new(GroupSpec::Alt4).unwrap();
        for g in 0..a4.order() {
            let w = a4.word(g);
            let x = w.iter().fold(0, |acc, &gi| a4.mul(acc, a4.generators()[gi]));
            assert_eq!(x, g);
        }
    }
}
