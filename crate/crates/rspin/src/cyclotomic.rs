//! Exact arithmetic in the cyclotomic fields Q(zeta_r).
//!
//! Elements are represented in the quotient ring `Q[X]/(Phi_r(X))`, where
//! Phi_r is the r-th cyclotomic polynomial, with the power basis
//! {1, zeta, ..., zeta^(phi(r)-1)}. Reduction to this basis is canonical,
//! so equality of reduced coefficient vectors decides equality in the field,
//! which is what every exact axiom check downstream relies on.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator (guaranteed by `BigRational`).
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("embedding k={k} is not coprime to r={r}")]
    NonCoprimeEmbedding { r: u32, k: i64 },
    #[error("cannot parse rational literal `{0}`")]
    BadRational(String),
    #[error("coefficient vector has length {got}, expected phi({r}) = {want}")]
    BadCoefficientLength { r: u32, got: usize, want: usize },
    #[error("conductor must be positive")]
    ZeroConductor,
}

/// Euler's totient, by trial-division factorization.
pub fn phi(r: u32) -> u32 {
    assert!(r >= 1, "phi is defined for positive arguments");
    let mut n = r;
    let mut result = r;
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Positive divisors of `r` in increasing order.
pub fn divisors(r: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=r).filter(|d| r % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over Q (private).
// Coefficients ascending; invariant: no trailing zeros (except the zero poly,
// which is the empty vector).
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of `a` by `b` (b nonzero).
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let coef = &rem[dr] / lead;
        for i in 0..=db {
            let t = &b[i] * &coef;
            rem[dr - db + i] -= t;
        }
        quot[dr - db] = coef;
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() - 1 < db {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic unless zero.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::one()];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r2) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(lead) = r0.last().cloned() {
        if !lead.is_one() {
            for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
                *c /= &lead;
            }
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// The r-th cyclotomic polynomial, monic with integer coefficients, computed
/// by the exact division Phi_r = (X^r - 1) / prod_{d|r, d<r} Phi_d and cached.
pub fn cyclotomic_poly(r: u32) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&r) {
        return Arc::clone(p);
    }
    let poly = if r == 1 {
        vec![-Rat::one(), Rat::one()]
    } else {
        // X^r - 1
        let mut num = vec![Rat::zero(); (r + 1) as usize];
        num[0] = -Rat::one();
        num[r as usize] = Rat::one();
        let mut den = vec![Rat::one()];
        for d in divisors(r) {
            if d < r {
                den = poly_mul(&den, &cyclotomic_poly(d));
            }
        }
        let (q, rem) = poly_divrem(&num, &den);
        debug_assert!(rem.is_empty(), "X^r - 1 must be divisible by prod Phi_d");
        q
    };
    debug_assert_eq!(poly.len() as u32 - 1, phi(r));
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(r, Arc::clone(&arc));
    arc
}

// ---------------------------------------------------------------------------
// CycQ
// ---------------------------------------------------------------------------

/// An element of Q(zeta_r), reduced modulo Phi_r.
///
/// `coeffs` always has length exactly phi(r); two elements are equal iff
/// their conductors and coefficient vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycQ {
    r: u32,
    coeffs: Vec<Rat>,
}

impl CycQ {
    /// Reduce an arbitrary polynomial in zeta_r modulo Phi_r.
    pub fn from_poly(r: u32, poly: Vec<Rat>) -> CycQ {
        assert!(r >= 1, "conductor must be positive");
        let modulus = cyclotomic_poly(r);
        let (_, mut rem) = poly_divrem(&poly, &modulus);
        rem.resize(phi(r) as usize, Rat::zero());
        CycQ { r, coeffs: rem }
    }

    pub fn zero(r: u32) -> CycQ {
        CycQ::from_poly(r, Vec::new())
    }

    pub fn one(r: u32) -> CycQ {
        CycQ::from_rat(r, Rat::one())
    }

    pub fn from_rat(r: u32, q: Rat) -> CycQ {
        CycQ::from_poly(r, vec![q])
    }

    pub fn from_int(r: u32, n: i64) -> CycQ {
        CycQ::from_rat(r, rat_int(n))
    }

    /// Construct from a coefficient vector that must already have length phi(r).
    pub fn from_coeffs(r: u32, coeffs: Vec<Rat>) -> Result<CycQ, CycError> {
        if r == 0 {
            return Err(CycError::ZeroConductor);
        }
        let want = phi(r) as usize;
        if coeffs.len() != want {
            return Err(CycError::BadCoefficientLength { r, got: coeffs.len(), want });
        }
        Ok(CycQ { r, coeffs })
    }

    /// zeta_r^k, for any integer k.
    pub fn root_of_unity(r: u32, k: i64) -> CycQ {
        assert!(r >= 1, "conductor must be positive");
        let k = k.rem_euclid(r as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        CycQ::from_poly(r, poly)
    }

    pub fn conductor(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational part, if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_conductor(&self, other: &CycQ) {
        assert_eq!(
            self.r, other.r,
            "conductor mismatch: Q(zeta_{}) vs Q(zeta_{})",
            self.r, other.r
        );
    }

    pub fn add(&self, other: &CycQ) -> CycQ {
        self.assert_same_conductor(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycQ { r: self.r, coeffs }
    }

    pub fn sub(&self, other: &CycQ) -> CycQ {
        self.assert_same_conductor(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycQ { r: self.r, coeffs }
    }

    pub fn neg(&self) -> CycQ {
        CycQ {
            r: self.r,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycQ) -> CycQ {
        self.assert_same_conductor(other);
        CycQ::from_poly(self.r, poly_mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, q: &Rat) -> CycQ {
        CycQ {
            r: self.r,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm on
    /// (self, Phi_r) in `Q[X]`.
    pub fn inv(&self) -> Result<CycQ, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.r));
        }
        let modulus = cyclotomic_poly(self.r);
        let (g, s, _) = poly_ext_gcd(&self.coeffs, &modulus);
        debug_assert_eq!(g.len(), 1, "Phi_r is irreducible so the gcd is 1");
        Ok(CycQ::from_poly(self.r, s))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<CycQ, CycError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycQ::one(self.r);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Re-express in Q(zeta_R) for a conductor multiple, via zeta_r = zeta_R^(R/r).
    pub fn lift(&self, new_r: u32) -> CycQ {
        assert!(
            new_r >= 1 && new_r % self.r == 0,
            "lift target {} must be a multiple of the conductor {}",
            new_r,
            self.r
        );
        if new_r == self.r {
            return self.clone();
        }
        let step = (new_r / self.r) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        CycQ::from_poly(new_r, poly)
    }

    /// Floating approximation under the embedding zeta_r -> exp(2 pi i k / r).
    /// Never used in exact decision paths.
    pub fn approx(&self, embedding: i64) -> Result<(f64, f64), CycError> {
        let k = embedding.rem_euclid(self.r as i64) as u32;
        if gcd_u32(k.max(1), self.r) != 1 || (k == 0 && self.r > 1) {
            return Err(CycError::NonCoprimeEmbedding { r: self.r, k: embedding });
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = rat_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / (self.r as f64);
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        Ok((re, im))
    }
}

fn rat_to_f64(q: &Rat) -> f64 {
    // Good enough for display purposes at desk scale.
    let num = q.numer();
    let den = q.denom();
    let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    fnum / fden
}

impl std::ops::Add for &CycQ {
    type Output = CycQ;
    fn add(self, rhs: &CycQ) -> CycQ {
        CycQ::add(self, rhs)
    }
}

impl std::ops::Sub for &CycQ {
    type Output = CycQ;
    fn sub(self, rhs: &CycQ) -> CycQ {
        CycQ::sub(self, rhs)
    }
}

impl std::ops::Mul for &CycQ {
    type Output = CycQ;
    fn mul(self, rhs: &CycQ) -> CycQ {
        CycQ::mul(self, rhs)
    }
}

impl std::ops::Neg for &CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        CycQ::neg(self)
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn render_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with decimal integer strings.
pub fn parse_rat(s: &str) -> Result<Rat, CycError> {
    let bad = || CycError::BadRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
    }
}

impl fmt::Display for CycQ {
    /// Polynomial rendering in the symbol `z` (a fixed primitive r-th root
    /// of unity), e.g. `-1 - z` or `1/2*z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag_str = render_rat(&mag);
            if j == 0 {
                write!(f, "{mag_str}")?;
            } else if mag.is_one() {
                if j == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{j}")?;
                }
            } else if j == 1 {
                write!(f, "{mag_str}*z")?;
            } else {
                write!(f, "{mag_str}*z^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycQ(r={}, {})", self.r, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycQWire {
    r: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = CycQWire {
            r: self.r,
            coeffs: self.coeffs.iter().map(render_rat).collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<CycQ, D::Error> {
        let wire = CycQWire::deserialize(deserializer)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycQ::from_coeffs(wire.r, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(r: u32) -> CycQ {
        CycQ::root_of_unity(r, 1)
    }

    #[test]
    fn cyclotomic_polys_are_the_classical_ones() {
        let as_i64 = |p: &[Rat]| -> Vec<i64> {
            p.iter()
                .map(|c| {
                    assert!(c.denom().is_one());
                    c.numer().to_string().parse().unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(as_i64(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(as_i64(&cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_of_unity_identity_case() {
        assert!(CycQ::root_of_unity(3, 0).is_one());
    }

    #[test]
    fn cube_of_zeta3_is_one() {
        let z = zeta(3);
        assert!(z.mul(&z).mul(&z).is_one());
    }

    #[test]
    fn zeta3_squared_reduces_to_minus_one_minus_zeta() {
        // Oracle: long division of X^2 by Phi_3 = X^2 + X + 1 leaves -X - 1.
        let expect = CycQ::from_coeffs(3, vec![rat_int(-1), rat_int(-1)]).unwrap();
        assert_eq!(CycQ::root_of_unity(3, 2), expect);
    }

    #[test]
    fn one_plus_minus_one_is_zero() {
        let one = CycQ::one(5);
        assert!(one.add(&one.neg()).is_zero());
    }

    #[test]
    fn gauss_style_product_at_r4() {
        // (1 + zeta)(1 - zeta) = 1 - zeta^2 = 2 since zeta_4^2 = -1.
        let one = CycQ::one(4);
        let z = zeta(4);
        let prod = one.add(&z).mul(&one.sub(&z));
        assert_eq!(prod, CycQ::from_int(4, 2));
    }

    #[test]
    fn inverse_of_zeta5() {
        let z = zeta(5);
        let inv = z.inv().unwrap();
        assert_eq!(inv, CycQ::root_of_unity(5, 4));
        assert!(z.mul(&inv).is_one());
    }

    #[test]
    fn order_of_primitive_root_is_exactly_r() {
        for r in 1..=12u32 {
            let z = zeta(r);
            let mut acc = CycQ::one(r);
            for n in 1..r {
                acc = acc.mul(&z);
                assert!(!acc.is_one(), "zeta_{r}^{n} must not be 1");
            }
            assert!(acc.mul(&z).is_one());
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for r in 2..=16u32 {
            let mut acc = CycQ::zero(r);
            for k in 0..r {
                acc = acc.add(&CycQ::root_of_unity(r, k as i64));
            }
            assert!(acc.is_zero(), "sum of zeta_{r}^k must vanish");
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let a = CycQ::root_of_unity(9, 7);
        let again = CycQ::from_poly(9, a.coeffs().to_vec());
        assert_eq!(a, again);
    }

    #[test]
    fn approx_examples() {
        let (re, im) = CycQ::one(3).approx(1).unwrap();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);

        let (re, im) = zeta(4).approx(1).unwrap();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);

        let sum = zeta(3).add(&CycQ::root_of_unity(3, 2));
        let (re, im) = sum.approx(1).unwrap();
        assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn approx_rejects_non_coprime_embedding() {
        assert!(zeta(6).approx(2).is_err());
        assert!(zeta(6).approx(5).is_ok());
    }

    #[test]
    fn lift_is_a_field_embedding() {
        let z3 = zeta(3);
        let lifted = z3.lift(15);
        assert_eq!(lifted, CycQ::root_of_unity(15, 5));
        // zeta_3 + zeta_3^2 = -1 survives the lift.
        let s = z3.add(&z3.mul(&z3)).lift(15);
        assert_eq!(s, CycQ::from_int(15, -1));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(CycQ::zero(5).inv(), Err(CycError::DivisionByZero(5))));
    }

    #[test]
    #[should_panic(expected = "conductor mismatch")]
    fn mixing_conductors_is_a_usage_error() {
        let _ = CycQ::one(3).add(&CycQ::one(4));
    }

    #[test]
    fn parse_and_render_rat() {
        assert_eq!(render_rat(&rat(3, 6)), "1/2");
        assert_eq!(render_rat(&rat_int(-7)), "-7");
        assert_eq!(parse_rat("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    fn small_cycq() -> impl Strategy<Value = CycQ> {
        (1u32..=10, proptest::collection::vec((-6i64..=6, 1i64..=4), 0..6)).prop_map(|(r, terms)| {
            let mut acc = CycQ::zero(r);
            for (k, (n, d)) in terms.into_iter().enumerate() {
                let term = CycQ::root_of_unity(r, k as i64).scale(&rat(n, d));
                acc = acc.add(&term);
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms_hold(a in small_cycq()) {
            let r = a.conductor();
            let b = CycQ::root_of_unity(r, 1).add(&CycQ::from_rat(r, rat(1, 3)));
            let c = CycQ::root_of_unity(r, 2).sub(&CycQ::one(r));
            // associativity + distributivity
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // commutativity
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            // inverses
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn json_round_trip_is_exact(a in small_cycq()) {
            let text = serde_json::to_string(&a).unwrap();
            let back: CycQ = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
