//! Multivariate polynomials over [`Scalar`], used as coefficients of
//! exponential-polynomial tail rules on lattice models.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::One;

use crate::scalar::Scalar;

/// Polynomial in `rank` integer variables; canonical form drops zero terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiPoly {
    rank: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(rank: usize) -> MultiPoly {
        MultiPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, value: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(rank);
        if !value.is_zero() {
            p.terms.insert(vec![0; rank], value);
        }
        p
    }

    pub fn one(rank: usize) -> MultiPoly {
        MultiPoly::constant(rank, Scalar::one())
    }

    /// The coordinate variable `g_position`.
    pub fn variable(rank: usize, position: usize) -> MultiPoly {
        assert!(position < rank);
        let mut exp = vec![0u32; rank];
        exp[position] = 1;
        let mut p = MultiPoly::zero(rank);
        p.terms.insert(exp, Scalar::one());
        p
    }

    pub fn monomial(rank: usize, exponents: Vec<u32>, coeff: Scalar) -> MultiPoly {
        assert_eq!(exponents.len(), rank);
        let mut p = MultiPoly::zero(rank);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.rank, other.rank);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Scalar::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly {
            rank: self.rank,
            terms,
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.rank);
        }
        MultiPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.rank, other.rank);
        let mut out = MultiPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let coeff = c1.mul(c2);
                let entry = out.terms.entry(exp.clone()).or_insert_with(Scalar::zero);
                *entry = entry.add(&coeff);
                if entry.is_zero() {
                    out.terms.remove(&exp);
                }
            }
        }
        out
    }

    /// Evaluate at an integer lattice point.
    pub fn eval(&self, point: &[i64]) -> Scalar {
        assert_eq!(point.len(), self.rank);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut prod = BigInt::one();
            for (x, &exp) in point.iter().zip(e) {
                for _ in 0..exp {
                    prod *= BigInt::from(*x);
                }
            }
            acc = acc.add(&c.mul(&Scalar::from_big(num::BigRational::from_integer(prod))));
        }
        acc
    }

    /// Substitute every variable by its negative.
    pub fn negate_variables(&self) -> MultiPoly {
        MultiPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let total: u32 = e.iter().sum();
                    let coeff = if total % 2 == 1 { c.neg() } else { c.clone() };
                    (e.clone(), coeff)
                })
                .collect(),
        }
    }

    /// Conjugate all coefficients; on integer points this is complex
    /// conjugation of the value.
    pub fn conj(&self) -> MultiPoly {
        MultiPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.conj()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Componentwise maximum exponent per variable over all terms.
    pub fn degree_profile(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.rank];
        for e in self.terms.keys() {
            for (slot, &x) in out.iter_mut().zip(e) {
                *slot = (*slot).max(x);
            }
        }
        out
    }

    /// Substitute `g -> g + offset` via binomial expansion.
    pub fn shift(&self, offset: &[i64]) -> MultiPoly {
        assert_eq!(offset.len(), self.rank);
        let mut out = MultiPoly::zero(self.rank);
        for (e, c) in &self.terms {
            // expand prod_i (g_i + h_i)^{e_i}
            let mut partial = MultiPoly::constant(self.rank, c.clone());
            for (i, (&exp, &h)) in e.iter().zip(offset).enumerate() {
                let base = MultiPoly::variable(self.rank, i)
                    .add(&MultiPoly::constant(self.rank, Scalar::from_int(h)));
                for _ in 0..exp {
                    partial = partial.mul(&base);
                }
            }
            out = out.add(&partial);
        }
        out
    }

    /// Coefficient of the given exponent vector.
    pub fn coefficient(&self, exponents: &[u32]) -> Scalar {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("g{i}")
                        } else {
                            format!("g{i}^{x}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
