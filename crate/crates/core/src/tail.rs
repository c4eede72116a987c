//! Tail rules: the closed-form descriptions of a multiplier away from its
//! explicit blocks.
//!
//! On lattice models the representable family is the exponential
//! polynomials: finite sums of `p(g) * lambda^g` with polynomial
//! coefficients and nonzero bases. The family is closed under addition,
//! multiplication, conjugation, the inversion antipode, and shifts, and a
//! canonical form (bases deduplicated and sorted, zero coefficient
//! polynomials dropped) makes equality of tail functions structural.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;

use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// Sum of `p_j(g) * base_j^g` terms keyed by base; canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPoly {
    rank: usize,
    terms: BTreeMap<Vec<Scalar>, MultiPoly>,
}

impl ExpPoly {
    pub fn zero(rank: usize) -> ExpPoly {
        ExpPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, value: Scalar) -> ExpPoly {
        ExpPoly::term(
            vec![Scalar::one(); rank],
            MultiPoly::constant(rank, value),
        )
    }

    pub fn one(rank: usize) -> ExpPoly {
        ExpPoly::constant(rank, Scalar::one())
    }

    /// One `poly(g) * base^g` term. Bases must be nonzero in every
    /// coordinate so that negative lattice points stay evaluable.
    pub fn term(base: Vec<Scalar>, poly: MultiPoly) -> ExpPoly {
        assert_eq!(base.len(), poly.rank());
        assert!(
            base.iter().all(|b| !b.is_zero()),
            "exponential base must be invertible"
        );
        let rank = poly.rank();
        let mut terms = BTreeMap::new();
        if !poly.is_zero() {
            terms.insert(base, poly);
        }
        ExpPoly { rank, terms }
    }

    /// Pure character `base^g`.
    pub fn character(base: Vec<Scalar>) -> ExpPoly {
        let rank = base.len();
        ExpPoly::term(base, MultiPoly::one(rank))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Scalar>, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        assert_eq!(self.rank, other.rank);
        let mut terms = self.terms.clone();
        for (b, p) in &other.terms {
            match terms.get_mut(b) {
                Some(q) => {
                    let sum = q.add(p);
                    if sum.is_zero() {
                        terms.remove(b);
                    } else {
                        *q = sum;
                    }
                }
                None => {
                    terms.insert(b.clone(), p.clone());
                }
            }
        }
        ExpPoly {
            rank: self.rank,
            terms,
        }
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> ExpPoly {
        if s.is_zero() {
            return ExpPoly::zero(self.rank);
        }
        ExpPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b.clone(), p.scale(s)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        assert_eq!(self.rank, other.rank);
        let mut out = ExpPoly::zero(self.rank);
        for (b1, p1) in &self.terms {
            for (b2, p2) in &other.terms {
                let base: Vec<Scalar> = b1.iter().zip(b2).map(|(x, y)| x.mul(y)).collect();
                out = out.add(&ExpPoly::term(base, p1.mul(p2)));
            }
        }
        out
    }

    /// Evaluate the tail function at a lattice point.
    pub fn eval(&self, point: &[i64]) -> Scalar {
        assert_eq!(point.len(), self.rank);
        let mut acc = Scalar::zero();
        for (b, p) in &self.terms {
            let mut pw = Scalar::one();
            for (base, &g) in b.iter().zip(point) {
                pw = pw.mul(&base.pow_i64(g));
            }
            acc = acc.add(&p.eval(point).mul(&pw));
        }
        acc
    }

    /// Pointwise complex conjugate as a function on the lattice.
    pub fn conj(&self) -> ExpPoly {
        let mut out = ExpPoly::zero(self.rank);
        for (b, p) in &self.terms {
            let base: Vec<Scalar> = b.iter().map(|x| x.conj()).collect();
            out = out.add(&ExpPoly::term(base, p.conj()));
        }
        out
    }

    /// Pullback along `g -> -g` (the inversion antipode on lattice models).
    pub fn negate_argument(&self) -> ExpPoly {
        let mut out = ExpPoly::zero(self.rank);
        for (b, p) in &self.terms {
            let base: Vec<Scalar> = b.iter().map(|x| x.inv()).collect();
            out = out.add(&ExpPoly::term(base, p.negate_variables()));
        }
        out
    }

    /// Pullback along `g -> g + offset`.
    pub fn shift(&self, offset: &[i64]) -> ExpPoly {
        assert_eq!(offset.len(), self.rank);
        let mut out = ExpPoly::zero(self.rank);
        for (b, p) in &self.terms {
            let mut factor = Scalar::one();
            for (base, &h) in b.iter().zip(offset) {
                factor = factor.mul(&base.pow_i64(h));
            }
            out = out.add(&ExpPoly::term(b.clone(), p.shift(offset).scale(&factor)));
        }
        out
    }

    /// Coordinates over the function basis `monomial * base^g`; distinct
    /// basis functions are linearly independent on the lattice, so these
    /// coordinates are faithful.
    pub fn coordinates(&self) -> Vec<(FnKey, Scalar)> {
        let mut out = Vec::new();
        for (b, p) in &self.terms {
            for (e, c) in p.terms() {
                out.push((
                    FnKey {
                        base: b.clone(),
                        monomial: e.clone(),
                    },
                    c.clone(),
                ));
            }
        }
        out
    }

    /// The number of basis functions with nonzero coefficient.
    pub fn basis_size(&self) -> usize {
        self.terms.values().map(|p| p.terms().count()).sum()
    }

    /// Dimension of the leg search space of the pullback `f(g+h)`: per base,
    /// the full monomial box under the coefficient degree profile (binomial
    /// expansion can populate any monomial below the profile).
    pub fn leg_space_size(&self) -> usize {
        self.terms
            .values()
            .map(|p| {
                p.degree_profile()
                    .iter()
                    .map(|&d| d as usize + 1)
                    .product::<usize>()
            })
            .sum()
    }

    /// Exact decomposition of the pullback `(g,h) -> f(g+h)` as a finite sum
    /// of products `x_a(g) * y_a(h)`, one pair per basis function of `f`.
    ///
    /// Uses the binomial expansion of each coefficient monomial in `g + h`.
    /// The returned pairs are in canonical order; both leg families are built
    /// from distinct basis functions but are not yet reduced to minimal rank.
    pub fn pullback_decomposition(&self) -> Vec<(ExpPoly, ExpPoly)> {
        let rank = self.rank;
        let mut pairs: Vec<(ExpPoly, ExpPoly)> = Vec::new();
        for (b, p) in &self.terms {
            // collect, per left monomial a, the right polynomial
            let mut right_polys: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
            for (e, c) in p.terms() {
                for a in sub_multi_indices(e) {
                    let mut binom = BigInt::from(1);
                    for (&ei, &ai) in e.iter().zip(&a) {
                        binom *= binomial(ei, ai);
                    }
                    let rest: Vec<u32> = e.iter().zip(&a).map(|(ei, ai)| ei - ai).collect();
                    let coeff = c.mul(&Scalar::from_big(num::BigRational::from_integer(binom)));
                    let mono = MultiPoly::monomial(rank, rest, coeff);
                    let entry = right_polys
                        .entry(a.clone())
                        .or_insert_with(|| MultiPoly::zero(rank));
                    *entry = entry.add(&mono);
                }
            }
            for (a, q) in right_polys {
                if q.is_zero() {
                    continue;
                }
                let left = ExpPoly::term(b.clone(), MultiPoly::monomial(rank, a, Scalar::one()));
                let right = ExpPoly::term(b.clone(), q);
                pairs.push((left, right));
            }
        }
        pairs
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from((n - i) as i64) / BigInt::from((i + 1) as i64);
    }
    acc
}

/// All multi-indices a <= e componentwise, lexicographic.
fn sub_multi_indices(e: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &bound in e {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..=bound {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Identifier of one basis function `monomial * base^g` of the exponential
/// polynomial space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FnKey {
    pub base: Vec<Scalar>,
    pub monomial: Vec<u32>,
}

/// Closed-form description of a multiplier outside its explicit blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailRule {
    /// Every non-explicit block is zero.
    Zero,
    /// Every non-explicit block is `value * identity`.
    ScalarIdentity(Scalar),
    /// Lattice models: block at g is the 1x1 matrix `f(g)`.
    ExpPoly(ExpPoly),
}

impl fmt::Display for TailRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailRule::Zero => write!(f, "zero"),
            TailRule::ScalarIdentity(s) => write!(f, "{s}*id"),
            TailRule::ExpPoly(e) => {
                if e.is_zero() {
                    return write!(f, "zero");
                }
                let parts: Vec<String> = e
                    .terms()
                    .map(|(b, p)| {
                        let bases: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                        format!("({p})*({})^g", bases.join(","))
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}
