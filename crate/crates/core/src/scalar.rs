//! Exact scalars over a selectable computable field.
//!
//! Every verdict produced by this crate is an equality or rank decision, so
//! all arithmetic is exact: rationals, Gaussian rationals, cyclotomic fields
//! of a declared order, and towers of quadratic extensions. Values are kept
//! in a canonical form (extension elements with only a rational coordinate
//! are demoted to plain rationals), which makes equality structural.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which exact field a model computes over.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    /// The rational numbers.
    Rational,
    /// Gaussian rationals, adjoining a square root of -1.
    Gaussian,
    /// The cyclotomic field of the given order (a primitive root of unity).
    Cyclotomic { order: u32 },
    /// Iterated quadratic extension by square roots of the listed
    /// square-free integers.
    QuadraticTower { radicands: Vec<i64> },
}

impl FieldDescriptor {
    /// Checks that the descriptor itself is arithmetically usable.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldDescriptor::Rational | FieldDescriptor::Gaussian => Ok(()),
            FieldDescriptor::Cyclotomic { order } => {
                if *order < 1 {
                    Err(Error::InvalidModel("cyclotomic order must be >= 1".into()))
                } else {
                    Ok(())
                }
            }
            FieldDescriptor::QuadraticTower { radicands } => {
                for &d in radicands {
                    if d == 0 || d == 1 {
                        return Err(Error::InvalidModel(format!(
                            "quadratic radicand {d} is not admissible"
                        )));
                    }
                    if !is_square_free(d) {
                        return Err(Error::InvalidModel(format!(
                            "quadratic radicand {d} is not square-free"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// True when the given scalar can live in this field.
    pub fn admits(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rational(_)) => true,
            (FieldDescriptor::Gaussian, Scalar::Gaussian { .. }) => true,
            (FieldDescriptor::Cyclotomic { order }, Scalar::Cyclotomic { order: o, .. }) => {
                o == order
            }
            (FieldDescriptor::QuadraticTower { radicands }, Scalar::Quadratic { radicands: r, .. }) => {
                r == radicands
            }
            _ => false,
        }
    }
}

fn is_square_free(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// An exact field element. The variant is canonical: any value that is
/// actually rational is stored as `Rational`, whatever field it came from.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian {
        re: BigRational,
        im: BigRational,
    },
    /// Coordinates over the power basis 1, z, ..., z^(phi(order)-1) of a
    /// primitive `order`-th root of unity z.
    Cyclotomic {
        order: u32,
        coords: Vec<BigRational>,
    },
    /// Coordinates over the 2^k square-root products of the radicand list,
    /// indexed by subset bitmask.
    Quadratic {
        radicands: Vec<i64>,
        coords: Vec<BigRational>,
    },
}

// ---------------------------------------------------------------------------
// cyclotomic polynomial cache
// ---------------------------------------------------------------------------

/// Monic integer coefficients of the n-th cyclotomic polynomial, ascending
/// degree, plus the reductions of z^k for k < n over the power basis.
struct CycloData {
    /// Phi_n, ascending, length phi(n)+1, leading coefficient 1.
    minimal: Vec<BigRational>,
    /// z^k expressed over the power basis, for 0 <= k < n.
    powers: Vec<Vec<BigRational>>,
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, &'static CycloData>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static CycloData>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclo_data(order: u32) -> &'static CycloData {
    let mut cache = cyclo_cache().lock().unwrap();
    if let Some(d) = cache.get(&order) {
        return d;
    }
    let minimal = cyclotomic_polynomial(order);
    let degree = minimal.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    // Build z^k iteratively: z^{k+1} = shift of z^k reduced mod Phi_n.
    let mut cur = vec![BigRational::zero(); degree.max(1)];
    if degree > 0 {
        cur[0] = BigRational::one();
    }
    for _ in 0..order {
        powers.push(cur.clone());
        cur = shift_reduce(&cur, &minimal);
    }
    let leaked: &'static CycloData = Box::leak(Box::new(CycloData { minimal, powers }));
    cache.insert(order, leaked);
    leaked
}

/// Multiply a reduced polynomial by z and reduce again.
fn shift_reduce(coords: &[BigRational], minimal: &[BigRational]) -> Vec<BigRational> {
    let degree = minimal.len() - 1;
    if degree == 0 {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); degree];
    let spill = coords[degree - 1].clone();
    for i in (1..degree).rev() {
        out[i] = coords[i - 1].clone();
    }
    if !spill.is_zero() {
        // z^degree = -(minimal[0] + minimal[1] z + ...)
        for i in 0..degree {
            out[i] -= &spill * &minimal[i];
        }
    }
    out
}

/// Phi_n as ascending rational coefficients, computed by dividing x^n - 1 by
/// the cyclotomic polynomials of the proper divisors of n.
fn cyclotomic_polynomial(n: u32) -> Vec<BigRational> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-BigRational::one(), BigRational::one()];
    }
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut quotient = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            quotient = poly_exact_div(&quotient, &phi_d);
        }
    }
    quotient
}

/// Exact division of polynomials with ascending coefficients; panics if the
/// division is not exact (never happens for cyclotomic factors).
fn poly_exact_div(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    if rem.len() <= dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigRational::zero()];
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

// ---------------------------------------------------------------------------
// construction and canonicalization
// ---------------------------------------------------------------------------

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Gaussian { re, im }.canonical()
    }

    /// The imaginary unit.
    pub fn i() -> Scalar {
        Scalar::Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// A primitive root of unity of the given order.
    pub fn primitive_root(order: u32) -> Scalar {
        let data = cyclo_data(order);
        Scalar::Cyclotomic {
            order,
            coords: data.powers[1 % order as usize].clone(),
        }
        .canonical()
    }

    /// z^k in the cyclotomic field of the given order.
    pub fn root_power(order: u32, k: i64) -> Scalar {
        let data = cyclo_data(order);
        let k = k.rem_euclid(order as i64) as usize;
        Scalar::Cyclotomic {
            order,
            coords: data.powers[k].clone(),
        }
        .canonical()
    }

    /// The square root of the radicand at `position` in the tower.
    pub fn tower_root(radicands: &[i64], position: usize) -> Scalar {
        assert!(position < radicands.len());
        let mut coords = vec![BigRational::zero(); 1 << radicands.len()];
        coords[1 << position] = BigRational::one();
        Scalar::Quadratic {
            radicands: radicands.to_vec(),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Cyclotomic { coords, .. } | Scalar::Quadratic { coords, .. } => {
                coords.iter().all(|c| c.is_zero())
            }
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// Demote extension elements that happen to be rational.
    fn canonical(self) -> Scalar {
        match self {
            Scalar::Rational(_) => self,
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    Scalar::Rational(re)
                } else {
                    Scalar::Gaussian { re, im }
                }
            }
            Scalar::Cyclotomic { order, coords } => {
                if coords.iter().skip(1).all(|c| c.is_zero()) {
                    Scalar::Rational(coords.into_iter().next().unwrap_or_default())
                } else {
                    Scalar::Cyclotomic { order, coords }
                }
            }
            Scalar::Quadratic { radicands, coords } => {
                if coords.iter().skip(1).all(|c| c.is_zero()) {
                    Scalar::Rational(coords.into_iter().next().unwrap_or_default())
                } else {
                    Scalar::Quadratic { radicands, coords }
                }
            }
        }
    }

    /// The rational value, if the scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

// ---------------------------------------------------------------------------
// promotion
// ---------------------------------------------------------------------------

/// Lift a rational into the representation of `like`.
fn promote(r: &BigRational, like: &Scalar) -> Scalar {
    match like {
        Scalar::Rational(_) => Scalar::Rational(r.clone()),
        Scalar::Gaussian { .. } => Scalar::Gaussian {
            re: r.clone(),
            im: BigRational::zero(),
        },
        Scalar::Cyclotomic { order, coords } => {
            let mut c = vec![BigRational::zero(); coords.len()];
            c[0] = r.clone();
            Scalar::Cyclotomic { order: *order, coords: c }
        }
        Scalar::Quadratic { radicands, coords } => {
            let mut c = vec![BigRational::zero(); coords.len()];
            c[0] = r.clone();
            Scalar::Quadratic {
                radicands: radicands.clone(),
                coords: c,
            }
        }
    }
}

/// Bring two scalars into a common representation. Panics on genuinely
/// incompatible extensions; model validation keeps that from happening.
fn align(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    match (a, b) {
        (Scalar::Rational(r), s) if !matches!(s, Scalar::Rational(_)) => {
            (promote(r, s), s.clone())
        }
        (s, Scalar::Rational(r)) if !matches!(s, Scalar::Rational(_)) => {
            (s.clone(), promote(r, s))
        }
        (Scalar::Cyclotomic { order: o1, .. }, Scalar::Cyclotomic { order: o2, .. })
            if o1 != o2 =>
        {
            panic!("incompatible cyclotomic orders {o1} and {o2}")
        }
        (Scalar::Quadratic { radicands: r1, .. }, Scalar::Quadratic { radicands: r2, .. })
            if r1 != r2 =>
        {
            panic!("incompatible quadratic towers")
        }
        (x, y) => {
            if std::mem::discriminant(x) != std::mem::discriminant(y) {
                panic!("incompatible scalar fields: {x:?} vs {y:?}");
            }
            (x.clone(), y.clone())
        }
    }
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

impl Scalar {
    pub fn add(&self, other: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Scalar::Rational(a + b);
        }
        let (a, b) = align(self, other);
        match (a, b) {
            (Scalar::Gaussian { re: r1, im: i1 }, Scalar::Gaussian { re: r2, im: i2 }) => {
                Scalar::Gaussian { re: r1 + r2, im: i1 + i2 }.canonical()
            }
            (
                Scalar::Cyclotomic { order, coords: c1 },
                Scalar::Cyclotomic { coords: c2, .. },
            ) => Scalar::Cyclotomic {
                order,
                coords: c1.iter().zip(&c2).map(|(x, y)| x + y).collect(),
            }
            .canonical(),
            (
                Scalar::Quadratic { radicands, coords: c1 },
                Scalar::Quadratic { coords: c2, .. },
            ) => Scalar::Quadratic {
                radicands,
                coords: c1.iter().zip(&c2).map(|(x, y)| x + y).collect(),
            }
            .canonical(),
            _ => unreachable!("align returns matching variants"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Gaussian { re, im } => Scalar::Gaussian { re: -re, im: -im },
            Scalar::Cyclotomic { order, coords } => Scalar::Cyclotomic {
                order: *order,
                coords: coords.iter().map(|c| -c).collect(),
            },
            Scalar::Quadratic { radicands, coords } => Scalar::Quadratic {
                radicands: radicands.clone(),
                coords: coords.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Scalar::Rational(a * b);
        }
        let (a, b) = align(self, other);
        match (a, b) {
            (Scalar::Gaussian { re: r1, im: i1 }, Scalar::Gaussian { re: r2, im: i2 }) => {
                Scalar::Gaussian {
                    re: &r1 * &r2 - &i1 * &i2,
                    im: &r1 * &i2 + &i1 * &r2,
                }
                .canonical()
            }
            (
                Scalar::Cyclotomic { order, coords: c1 },
                Scalar::Cyclotomic { coords: c2, .. },
            ) => {
                let data = cyclo_data(order);
                let degree = data.minimal.len() - 1;
                // Schoolbook product, then reduce the overflow degrees.
                let mut prod = vec![BigRational::zero(); 2 * degree.max(1)];
                for (i, x) in c1.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in c2.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] += x * y;
                    }
                }
                let mut out = vec![BigRational::zero(); degree.max(1)];
                for (k, c) in prod.into_iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if k < degree {
                        out[k] += c;
                    } else {
                        let red = &data.powers[k % order as usize];
                        // k >= degree implies k < 2*degree <= 2n, so k mod n
                        // indexes the precomputed powers after one wrap.
                        let wraps = k / order as usize;
                        if wraps == 0 {
                            for (i, r) in red.iter().enumerate() {
                                out[i] += &c * r;
                            }
                        } else {
                            // Rare: degree close to n. Fall back to repeated
                            // shifting from the highest precomputed power.
                            let mut cur = data.powers[order as usize - 1].clone();
                            let mut steps = k + 1 - order as usize;
                            while steps > 0 {
                                cur = shift_reduce(&cur, &data.minimal);
                                steps -= 1;
                            }
                            for (i, r) in cur.iter().enumerate() {
                                out[i] += &c * r;
                            }
                        }
                    }
                }
                Scalar::Cyclotomic { order, coords: out }.canonical()
            }
            (
                Scalar::Quadratic { radicands, coords: c1 },
                Scalar::Quadratic { coords: c2, .. },
            ) => {
                let k = radicands.len();
                let size = 1usize << k;
                let mut out = vec![BigRational::zero(); size];
                for s in 0..size {
                    if c1[s].is_zero() {
                        continue;
                    }
                    for t in 0..size {
                        if c2[t].is_zero() {
                            continue;
                        }
                        let meet = s & t;
                        let mut factor = BigInt::one();
                        for (bit, &d) in radicands.iter().enumerate() {
                            if meet & (1 << bit) != 0 {
                                factor *= BigInt::from(d);
                            }
                        }
                        out[s ^ t] += &c1[s] * &c2[t] * BigRational::from_integer(factor);
                    }
                }
                Scalar::Quadratic { radicands, coords: out }.canonical()
            }
            _ => unreachable!("align returns matching variants"),
        }
    }

    /// Complex conjugation for the model's *-structure.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: re.clone(),
                im: -im,
            }
            .canonical(),
            Scalar::Cyclotomic { order, coords } => {
                // z bar = z^{n-1}; conjugation permutes the root powers.
                let data = cyclo_data(*order);
                let degree = data.minimal.len() - 1;
                let mut out = vec![BigRational::zero(); degree.max(1)];
                for (j, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let k = (*order as usize - j % *order as usize) % *order as usize;
                    for (i, r) in data.powers[k].iter().enumerate() {
                        out[i] += c * r;
                    }
                }
                Scalar::Cyclotomic { order: *order, coords: out }.canonical()
            }
            Scalar::Quadratic { radicands, coords } => {
                // Square roots of negative radicands are imaginary.
                let out = coords
                    .iter()
                    .enumerate()
                    .map(|(s, c)| {
                        let negatives = radicands
                            .iter()
                            .enumerate()
                            .filter(|(bit, &d)| s & (1 << bit) != 0 && d < 0)
                            .count();
                        if negatives % 2 == 1 {
                            -c
                        } else {
                            c.clone()
                        }
                    })
                    .collect();
                Scalar::Quadratic {
                    radicands: radicands.clone(),
                    coords: out,
                }
                .canonical()
            }
        }
    }

    /// Multiplicative inverse; None on zero.
    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Scalar::Gaussian {
                    re: re / &norm,
                    im: -(im / &norm),
                }
                .canonical()
            }
            Scalar::Cyclotomic { order, coords } => {
                let data = cyclo_data(*order);
                let inv = poly_mod_inverse(coords, &data.minimal);
                Scalar::Cyclotomic {
                    order: *order,
                    coords: inv,
                }
                .canonical()
            }
            Scalar::Quadratic { radicands, coords } => {
                quad_inverse(radicands, coords, radicands.len())
            }
        })
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero scalar")
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow_i64(&self, e: i64) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut cur = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&cur);
            }
            cur = cur.mul(&cur);
            exp >>= 1;
        }
        acc
    }

    /// Value raised to a big integer exponent.
    pub fn pow_bigint(&self, e: &BigInt) -> Scalar {
        use num::ToPrimitive;
        let small = e.to_i64().expect("exponent out of range");
        self.pow_i64(small)
    }
}

/// Extended Euclid inverse of `a` modulo the minimal polynomial.
fn poly_mod_inverse(a: &[BigRational], minimal: &[BigRational]) -> Vec<BigRational> {
    let degree = minimal.len() - 1;
    // r0 = minimal, r1 = a; track s only for r1's side.
    let mut r0: Vec<BigRational> = minimal.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while poly_degree(&r1) > 0 || (!r1.is_empty() && poly_degree(&r1) == 0 && r1.len() > 1) {
        if poly_degree(&r1) == 0 {
            break;
        }
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        trim(&mut r1);
        s0 = s1;
        s1 = s;
    }
    assert!(!r1.is_empty(), "element not invertible modulo minimal polynomial");
    let c = r1[0].clone();
    assert!(!c.is_zero());
    let mut out: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
    out.resize(degree.max(1), BigRational::zero());
    // Reduce once more in case s grew past the degree (it cannot, but the
    // resize above would silently drop coefficients if it did).
    debug_assert!(s1.len() <= degree.max(1) + 0 || s1.iter().skip(degree).all(|x| x.is_zero()));
    out
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
}

fn poly_degree(p: &[BigRational]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = poly_degree(den);
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    trim(&mut rem);
    if poly_degree(&rem) < dd || rem.iter().all(|c| c.is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); poly_degree(&rem) - dd + 1];
    for i in (dd..=poly_degree(&rem)).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i - dd + j] -= t;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

/// Recursive inverse in the quadratic tower: split off the top radical and
/// rationalize against its conjugate.
fn quad_inverse(radicands: &[i64], coords: &[BigRational], level: usize) -> Scalar {
    if level == 0 {
        let c = coords[0].clone();
        assert!(!c.is_zero(), "inverse of zero in quadratic tower");
        let mut out = vec![BigRational::zero(); coords.len()];
        out[0] = c.recip();
        return Scalar::Quadratic {
            radicands: radicands.to_vec(),
            coords: out,
        }
        .canonical();
    }
    let bit = 1usize << (level - 1);
    // x = a + b*sqrt(d) with a, b in the sub-tower; conj flips the top root.
    let mut conj = coords.to_vec();
    for (s, c) in conj.iter_mut().enumerate() {
        if s & bit != 0 {
            *c = -&*c;
        }
    }
    let x = Scalar::Quadratic {
        radicands: radicands.to_vec(),
        coords: coords.to_vec(),
    };
    let xbar = Scalar::Quadratic {
        radicands: radicands.to_vec(),
        coords: conj,
    };
    let norm = x.mul(&xbar);
    // The norm lives one level down; invert it recursively.
    let norm_coords = match &norm {
        Scalar::Quadratic { coords, .. } => coords.clone(),
        Scalar::Rational(r) => {
            let mut c = vec![BigRational::zero(); coords.len()];
            c[0] = r.clone();
            c
        }
        _ => unreachable!(),
    };
    assert!(
        norm_coords.iter().enumerate().all(|(s, c)| s & bit == 0 || c.is_zero()),
        "quadratic tower radicands are not independent"
    );
    let inv_norm = quad_inverse(radicands, &norm_coords, level - 1);
    xbar.mul(&inv_norm)
}

// ---------------------------------------------------------------------------
// equality and ordering
// ---------------------------------------------------------------------------

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Gaussian { re: r1, im: i1 }, Scalar::Gaussian { re: r2, im: i2 }) => {
                r1 == r2 && i1 == i2
            }
            (
                Scalar::Cyclotomic { order: o1, coords: c1 },
                Scalar::Cyclotomic { order: o2, coords: c2 },
            ) => o1 == o2 && c1 == c2,
            (
                Scalar::Quadratic { radicands: r1, coords: c1 },
                Scalar::Quadratic { radicands: r2, coords: c2 },
            ) => r1 == r2 && c1 == c2,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

/// Representational total order used only for canonical sorting of tail
/// terms and coordinate keys; it does not respect arithmetic.
impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        fn tag(s: &Scalar) -> u8 {
            match s {
                Scalar::Rational(_) => 0,
                Scalar::Gaussian { .. } => 1,
                Scalar::Cyclotomic { .. } => 2,
                Scalar::Quadratic { .. } => 3,
            }
        }
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Gaussian { re: r1, im: i1 }, Scalar::Gaussian { re: r2, im: i2 }) => {
                r1.cmp(r2).then_with(|| i1.cmp(i2))
            }
            (
                Scalar::Cyclotomic { order: o1, coords: c1 },
                Scalar::Cyclotomic { order: o2, coords: c2 },
            ) => o1.cmp(o2).then_with(|| c1.cmp(c2)),
            (
                Scalar::Quadratic { radicands: r1, coords: c1 },
                Scalar::Quadratic { radicands: r2, coords: c2 },
            ) => r1.cmp(r2).then_with(|| c1.cmp(c2)),
            (a, b) => tag(a).cmp(&tag(b)),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// printing and parsing
// ---------------------------------------------------------------------------

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Gaussian { re, im } => {
                if re.is_zero() {
                    write!(f, "{im}i")
                } else if im.is_negative() {
                    write!(f, "{re}{im}i")
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
            Scalar::Cyclotomic { coords, .. } | Scalar::Quadratic { coords, .. } => {
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(";"))
            }
        }
    }
}

impl FieldDescriptor {
    /// Parse a scalar from its canonical display form within this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if text.starts_with('[') {
            let inner = text
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::ParseScalar(text.into()))?;
            let coords: Result<Vec<BigRational>> =
                inner.split(';').map(parse_rational).collect();
            let coords = coords?;
            return match self {
                FieldDescriptor::Cyclotomic { order } => {
                    let degree = cyclo_data(*order).minimal.len() - 1;
                    if coords.len() != degree.max(1) {
                        return Err(Error::ParseScalar(format!(
                            "expected {} coordinates, got {}",
                            degree.max(1),
                            coords.len()
                        )));
                    }
                    Ok(Scalar::Cyclotomic {
                        order: *order,
                        coords,
                    }
                    .canonical())
                }
                FieldDescriptor::QuadraticTower { radicands } => {
                    if coords.len() != 1 << radicands.len() {
                        return Err(Error::ParseScalar(format!(
                            "expected {} coordinates, got {}",
                            1 << radicands.len(),
                            coords.len()
                        )));
                    }
                    Ok(Scalar::Quadratic {
                        radicands: radicands.clone(),
                        coords,
                    }
                    .canonical())
                }
                _ => Err(Error::ParseScalar(format!(
                    "coordinate form {text} not valid in this field"
                ))),
            };
        }
        if let Some(body) = text.strip_suffix('i') {
            if matches!(self, FieldDescriptor::Gaussian) {
                // forms: "ai", "a+bi", "a-bi"
                let (re, im) = split_gaussian(body)?;
                return Ok(Scalar::Gaussian { re, im }.canonical());
            }
        }
        Ok(Scalar::Rational(parse_rational(text)?))
    }
}

fn split_gaussian(body: &str) -> Result<(BigRational, BigRational)> {
    // body is the text before the trailing 'i'
    for (idx, ch) in body.char_indices().rev() {
        if idx == 0 {
            break;
        }
        if (ch == '+' || ch == '-') && !body[..idx].ends_with('/') {
            let re = parse_rational(&body[..idx])?;
            let im_text = &body[idx..];
            let im = if im_text == "+" {
                BigRational::one()
            } else if im_text == "-" {
                -BigRational::one()
            } else {
                parse_rational(im_text)?
            };
            return Ok((re, im));
        }
    }
    let im = if body.is_empty() {
        BigRational::one()
    } else if body == "-" {
        -BigRational::one()
    } else {
        parse_rational(body)?
    };
    Ok((BigRational::zero(), im))
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| Error::ParseScalar(text.into()))?;
    let den: BigInt = den_text
        .parse()
        .map_err(|_| Error::ParseScalar(text.into()))?;
    if den.is_zero() {
        return Err(Error::ParseScalar(format!("{text}: zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

// Allow `Pow` style usage in a couple of spots without pulling the trait in.
impl Scalar {
    pub fn square(&self) -> Scalar {
        self.mul(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = q(1, 3);
        let b = q(1, 6);
        assert_eq!(a.add(&b), q(1, 2));
        assert_eq!(a.mul(&b), q(1, 18));
        assert_eq!(a.sub(&a), Scalar::zero());
        assert_eq!(q(7, 2).inv(), q(2, 7));
    }

    #[test]
    fn gaussian_conjugation_and_inverse() {
        let z = Scalar::gaussian(
            BigRational::from_integer(3.into()),
            BigRational::from_integer(4.into()),
        );
        let zbar = z.conj();
        let norm = z.mul(&zbar);
        assert_eq!(norm, Scalar::from_int(25));
        assert_eq!(z.mul(&z.inv()), Scalar::one());
        // i^2 = -1
        assert_eq!(Scalar::i().mul(&Scalar::i()), Scalar::from_int(-1));
    }

    #[test]
    fn cyclotomic_order_eight() {
        let z = Scalar::primitive_root(8);
        // z^4 = -1 and z^8 = 1
        assert_eq!(z.pow_i64(4), Scalar::from_int(-1));
        assert_eq!(z.pow_i64(8), Scalar::one());
        // z * conj(z) = 1 on the unit circle
        assert_eq!(z.mul(&z.conj()), Scalar::one());
        // inverse equals seventh power
        assert_eq!(z.inv(), z.pow_i64(7));
    }

    #[test]
    fn cyclotomic_third_roots_sum_to_minus_one() {
        let z = Scalar::primitive_root(3);
        assert_eq!(z.add(&z.square()), Scalar::from_int(-1));
    }

    #[test]
    fn quadratic_tower_products() {
        let rads = vec![2i64, 3];
        let r2 = Scalar::tower_root(&rads, 0);
        let r3 = Scalar::tower_root(&rads, 1);
        assert_eq!(r2.square(), Scalar::from_int(2));
        assert_eq!(r3.square(), Scalar::from_int(3));
        let r6 = r2.mul(&r3);
        assert_eq!(r6.square(), Scalar::from_int(6));
        // (1 + sqrt 2)^{-1} = sqrt 2 - 1
        let x = Scalar::one().add(&r2);
        assert_eq!(x.inv(), r2.sub(&Scalar::one()));
        // conj leaves real square roots alone
        assert_eq!(r2.conj(), r2);
    }

    #[test]
    fn imaginary_quadratic_conjugation() {
        let rads = vec![-1i64];
        let i = Scalar::tower_root(&rads, 0);
        assert_eq!(i.square(), Scalar::from_int(-1));
        assert_eq!(i.conj(), i.neg());
        assert_eq!(i.mul(&i.conj()), Scalar::one());
    }

    #[test]
    fn promotion_mixes_rationals_in() {
        let z = Scalar::primitive_root(5);
        let s = z.add(&Scalar::from_int(2));
        assert_eq!(s.sub(&z), Scalar::from_int(2));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let field = FieldDescriptor::Cyclotomic { order: 8 };
        let z = Scalar::primitive_root(8);
        let v = z.mul(&q(3, 2)).add(&Scalar::from_int(1));
        let text = v.to_string();
        assert_eq!(field.parse_scalar(&text).unwrap(), v);

        let g = FieldDescriptor::Gaussian;
        for s in [
            Scalar::gaussian(q(3, 2).as_rational().unwrap().clone(), q(-1, 4).as_rational().unwrap().clone()),
            Scalar::i(),
            Scalar::from_int(-7),
        ] {
            assert_eq!(g.parse_scalar(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn negative_powers() {
        assert_eq!(q(2, 1).pow_i64(-3), q(1, 8));
        assert_eq!(q(-2, 3).pow_i64(2), q(4, 9));
    }

    #[test]
    fn field_descriptor_validation() {
        assert!(FieldDescriptor::QuadraticTower { radicands: vec![4] }
            .validate()
            .is_err());
        assert!(FieldDescriptor::QuadraticTower { radicands: vec![2, -1, 15] }
            .validate()
            .is_ok());
    }
}
