//! JSON form of matrices:
//! `{"rows":r,"cols":c,"domain":"Z"|"Q"|"Fp"|"Fp[x]","p":p,"entries":[...]}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::{format_rational, is_prime, parse_rational};
use super::{Fp, FpMatrix, FpPoly, IntMatrix, Matrix, PolyMatrix, RatMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub entries: Vec<String>,
}

/// A matrix over any supported coefficient domain.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Z(IntMatrix),
    Q(RatMatrix),
    Fp(FpMatrix),
    Poly(PolyMatrix),
}

impl AnyMatrix {
    pub fn to_json(&self) -> MatrixJson {
        match self {
            AnyMatrix::Z(m) => MatrixJson {
                rows: m.rows(),
                cols: m.cols(),
                domain: "Z".into(),
                p: None,
                entries: m.entries().iter().map(|x| x.to_string()).collect(),
            },
            AnyMatrix::Q(m) => MatrixJson {
                rows: m.rows(),
                cols: m.cols(),
                domain: "Q".into(),
                p: None,
                entries: m.entries().iter().map(format_rational).collect(),
            },
            AnyMatrix::Fp(m) => MatrixJson {
                rows: m.rows(),
                cols: m.cols(),
                domain: "Fp".into(),
                p: Some(m.modulus()),
                entries: m.entries().iter().map(|x| x.value().to_string()).collect(),
            },
            AnyMatrix::Poly(m) => MatrixJson {
                rows: m.rows(),
                cols: m.cols(),
                domain: "Fp[x]".into(),
                p: Some(m.zero_elem().modulus()),
                entries: m.entries().iter().map(|x| x.to_string()).collect(),
            },
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows * j.cols {
            return Err(Error::Parse(format!(
                "matrix declares {}x{} but has {} entries",
                j.rows,
                j.cols,
                j.entries.len()
            )));
        }
        let bad = |s: &str| Error::Parse(format!("invalid {} entry '{s}'", j.domain));
        let prime = || -> Result<u64> {
            match j.p {
                Some(p) if is_prime(p) => Ok(p),
                Some(p) => Err(Error::Parse(format!("modulus {p} is not prime"))),
                None => Err(Error::Parse(format!("domain {} requires field p", j.domain))),
            }
        };
        match j.domain.as_str() {
            "Z" => {
                let data = j
                    .entries
                    .iter()
                    .map(|s| s.trim().parse::<BigInt>().map_err(|_| bad(s)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyMatrix::Z(Matrix::from_vec(j.rows, j.cols, data, &BigInt::zero())))
            }
            "Q" => {
                let data = j
                    .entries
                    .iter()
                    .map(|s| parse_rational(s).ok_or_else(|| bad(s)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyMatrix::Q(Matrix::from_vec(j.rows, j.cols, data, &BigRational::zero())))
            }
            "Fp" => {
                let p = prime()?;
                let data = j
                    .entries
                    .iter()
                    .map(|s| s.trim().parse::<BigInt>().map(|v| Fp::from_big(&v, p)).map_err(|_| bad(s)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyMatrix::Fp(Matrix::from_vec(j.rows, j.cols, data, &Fp::new(0, p))))
            }
            "Fp[x]" => {
                let p = prime()?;
                let data = j
                    .entries
                    .iter()
                    .map(|s| FpPoly::parse(s, p).ok_or_else(|| bad(s)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyMatrix::Poly(Matrix::from_vec(j.rows, j.cols, data, &FpPoly::zero(p))))
            }
            other => Err(Error::Parse(format!("unknown matrix domain '{other}'"))),
        }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AnyMatrix::Z(self.clone()).to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        match AnyMatrix::from_json(&j).map_err(serde::de::Error::custom)? {
            AnyMatrix::Z(m) => Ok(m),
            _ => Err(serde::de::Error::custom(format!("expected domain Z, found {}", j.domain))),
        }
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AnyMatrix::Q(self.clone()).to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        match AnyMatrix::from_json(&j).map_err(serde::de::Error::custom)? {
            AnyMatrix::Q(m) => Ok(m),
            AnyMatrix::Z(m) => Ok(m.to_rational()),
            _ => Err(serde::de::Error::custom(format!("expected domain Q, found {}", j.domain))),
        }
    }
}

impl Serialize for FpMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AnyMatrix::Fp(self.clone()).to_json().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_all_domains() {
        let z = IntMatrix::from_i64(&[vec![1, -2], vec![0, 7]]);
        let q = RatMatrix::identity(2).scale(&BigRational::new(1.into(), 3.into()));
        let f = z.reduce_mod(5);
        let x = FpPoly::x(3);
        let pm = Matrix::from_vec(1, 2, vec![x.clone(), x.mul(&x)], &FpPoly::zero(3));
        for m in [AnyMatrix::Z(z), AnyMatrix::Q(q), AnyMatrix::Fp(f), AnyMatrix::Poly(pm)] {
            let j = m.to_json();
            let text = serde_json::to_string(&j).unwrap();
            let back: MatrixJson = serde_json::from_str(&text).unwrap();
            assert_eq!(AnyMatrix::from_json(&back).unwrap(), m);
        }
    }

    #[test]
    fn canonical_entries() {
        let f = IntMatrix::from_i64(&[vec![-1]]).reduce_mod(3);
        assert_eq!(AnyMatrix::Fp(f).to_json().entries, vec!["2"]);
        let j = MatrixJson { rows: 1, cols: 1, domain: "Q".into(), p: None, entries: vec!["2/4".into()] };
        match AnyMatrix::from_json(&j).unwrap() {
            AnyMatrix::Q(m) => assert_eq!(AnyMatrix::Q(m).to_json().entries, vec!["1/2"]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn malformed_input() {
        let j = MatrixJson { rows: 2, cols: 1, domain: "Z".into(), p: None, entries: vec!["1".into()] };
        assert!(AnyMatrix::from_json(&j).is_err());
        let j = MatrixJson { rows: 1, cols: 1, domain: "Fp".into(), p: Some(4), entries: vec!["1".into()] };
        assert!(AnyMatrix::from_json(&j).is_err());
    }
}
