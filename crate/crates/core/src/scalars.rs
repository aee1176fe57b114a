//! Exact coefficient arithmetic.
//!
//! Characteristic 0 uses arbitrary precision rationals; characteristic `p`
//! uses canonical residues in `0..p`. Algorithms are generic over [`Field`],
//! and [`with_field!`](crate::with_field) dispatches on a runtime
//! [`FieldSpec`].

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted for a prime field (products must fit in `u64`).
pub const MAX_PRIME: u64 = 1 << 31;

/// A field of coefficients. Elements are plain values; all arithmetic goes
/// through the field object so that residues never need to carry `p`.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_u128(&self, v: u128) -> Self::Elem;
    fn from_biguint(&self, v: &BigUint) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Every element, when the field is small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// A random element; over the rationals a random integer in `[-bound, bound]`.
    fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> Self::Elem;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.characteristic() }
    }

    /// `a * b + c`, the inner loop of elimination.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(&self.mul(a, b), c)
    }
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_u128(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }
    fn from_biguint(&self, v: &BigUint) -> u64 {
        (v % BigUint::from(self.p)).to_u64().unwrap_or(0)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        Some(g.x.rem_euclid(self.p as i64) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn random<R: Rng>(&self, rng: &mut R, _bound: i64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Residue { value: *a, p: self.p }
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_u128(&self, v: u128) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_biguint(&self, v: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(v.clone()))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> BigRational {
        self.from_i64(rng.gen_range(-bound..=bound))
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational { numer: a.numer().to_string(), denom: a.denom().to_string() }
    }
}

/// Runtime description of the coefficient field: characteristic 0 or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && (!is_prime(characteristic) || characteristic >= MAX_PRIME) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        Ok(Self { characteristic })
    }

    pub fn rationals() -> Self {
        Self { characteristic: 0 }
    }

    /// The prime, or `None` in characteristic 0.
    pub fn prime(&self) -> Option<u64> {
        (self.characteristic != 0).then_some(self.characteristic)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field described by a
/// [`FieldSpec`]. The spec must already be validated.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {{
        let __spec: $crate::scalars::FieldSpec = $spec;
        match __spec.characteristic {
            0 => {
                let $f = $crate::scalars::Rationals;
                $body
            }
            p => {
                let $f = $crate::scalars::PrimeField::new(p).expect("validated characteristic");
                $body
            }
        }
    }};
}

/// A field element detached from its field, for serialization and display.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rational { numer: String, denom: String },
    Residue { value: u64, p: u64 },
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational { numer, denom } if denom == "1" => write!(f, "{numer}"),
            Scalar::Rational { numer, denom } => write!(f, "{numer}/{denom}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Small integer representative of an element, used when exporting
/// relations: residues map to the symmetric range, rationals must be integral.
pub fn small_integer<F: Field>(field: &F, a: &F::Elem) -> Option<i64> {
    match field.to_scalar(a) {
        Scalar::Residue { value, p } => {
            let v = value as i64;
            Some(if v > (p as i64) / 2 { v - p as i64 } else { v })
        }
        Scalar::Rational { numer, denom } => {
            if denom != "1" {
                return None;
            }
            numer.parse().ok()
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact binomial coefficient, zero when `b > a`.
pub fn binomial_exact(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for k in 0..b {
        acc *= a - k;
        acc /= k + 1;
    }
    acc
}

/// Binomial coefficient in `u128`; `None` on overflow.
pub fn binomial_u128(a: u64, b: u64) -> Option<u128> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for k in 0..b as u128 {
        acc = acc.checked_mul(a as u128 - k)? / (k + 1);
    }
    Some(acc)
}

/// Least significant digit first; empty for zero.
pub fn p_adic_digits(mut a: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while a > 0 {
        out.push(a % p);
        a /= p;
    }
    out
}

/// Digit `k` of `a` in base `p`.
pub fn digit(a: u64, p: u64, k: u32) -> u64 {
    (a / p.pow(k)) % p
}

/// True iff `p` divides `C(m, q)`, decided from the base-`p` digits.
pub fn lucas_divisible(m: u64, q: u64, p: u64) -> bool {
    if q > m {
        return true;
    }
    let (mut m, mut q) = (m, q);
    while q > 0 {
        if q % p > m % p {
            return true;
        }
        m /= p;
        q /= p;
    }
    false
}

/// `C(a, b) mod p` via Lucas' theorem.
pub fn binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let (mut a, mut b) = (a, b);
    let mut acc = 1u64;
    while b > 0 || a > 0 {
        let (ad, bd) = (a % p, b % p);
        if bd > ad {
            return 0;
        }
        let c = binomial_u128(ad, bd).expect("digit binomial fits") % p as u128;
        acc = acc * c as u64 % p;
        a /= p;
        b /= p;
    }
    acc
}

/// Largest `d` with `p^d <= x`, for `x >= 1`.
pub fn floor_log(x: u64, p: u64) -> u32 {
    assert!(x >= 1 && p >= 2);
    let mut d = 0;
    let mut q = p;
    while q <= x {
        d += 1;
        q = match q.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    d
}

/// Reduces a signed big integer into the field.
pub fn from_bigint<F: Field>(field: &F, v: &BigInt) -> F::Elem {
    let e = field.from_biguint(&v.magnitude().clone());
    if v.is_negative() {
        field.neg(&e)
    } else {
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pascal(a: usize, b: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..a {
            let mut next = vec![1u128; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        row.get(b).copied().unwrap_or(0)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_exact(2, 1), BigUint::from(2u32));
        assert_eq!(binomial_exact(0, 0), BigUint::from(1u32));
        assert_eq!(binomial_exact(7, 3), BigUint::from(pascal(7, 3)));
        assert_eq!(binomial_exact(3, 5), BigUint::zero());
        for a in 0..40 {
            for b in 0..=a {
                assert_eq!(binomial_u128(a, b).unwrap(), pascal(a as usize, b as usize));
            }
        }
    }

    #[test]
    fn digits_examples() {
        assert_eq!(p_adic_digits(5, 2), vec![1, 0, 1]);
        assert!(p_adic_digits(0, 7).is_empty());
        for p in [2u64, 3, 5] {
            for d in 0..4u32 {
                let v = 2 * p.pow(d + 1) - 1;
                let mut want = vec![p - 1; d as usize + 1];
                want.push(1);
                assert_eq!(p_adic_digits(v, p), want);
            }
        }
    }

    #[test]
    fn lucas_examples() {
        assert!(lucas_divisible(4, 2, 3));
        assert!(!lucas_divisible(3, 1, 2));
        // a with digits p-1 in places 0..=d, shifted by p^{d'}.
        for p in [2u64, 3, 5] {
            for d in 0..3u32 {
                let a = p.pow(d + 1) - 1;
                for dp in 0..=d {
                    assert!(lucas_divisible(a + p.pow(dp), p.pow(dp), p));
                }
            }
        }
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2u64, 3, 5, 7] {
            let bp = BigUint::from(p);
            for m in 0..=500u64 {
                for q in 0..=m {
                    let exact = (binomial_exact(m, q) % &bp).is_zero();
                    assert_eq!(lucas_divisible(m, q, p), exact, "m={m} q={q} p={p}");
                }
            }
        }
    }

    #[test]
    fn binomial_mod_matches() {
        for p in [2u64, 3, 5, 7] {
            for m in 0..120u64 {
                for q in 0..=m {
                    let want = (binomial_exact(m, q) % BigUint::from(p)).to_u64().unwrap();
                    assert_eq!(binomial_mod(m, q, p), want);
                }
            }
        }
    }

    #[test]
    fn floor_log_values() {
        assert_eq!(floor_log(1, 2), 0);
        assert_eq!(floor_log(2, 2), 1);
        assert_eq!(floor_log(7, 2), 2);
        assert_eq!(floor_log(9, 3), 2);
        assert_eq!(floor_log(8, 3), 1);
    }

    #[test]
    fn characteristic_validation() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(7).is_ok());
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    fn check_axioms<F: Field>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..300 {
            let a = f.random(&mut rng, 50);
            let b = f.random(&mut rng, 50);
            let c = f.random(&mut rng, 50);
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            } else {
                assert!(f.inv(&a).is_none());
            }
        }
    }

    #[test]
    fn field_axioms() {
        check_axioms(&Rationals, 1);
        for p in [2, 3, 5, 7, 101] {
            check_axioms(&PrimeField::new(p).unwrap(), p);
        }
    }

    #[test]
    fn small_integer_representatives() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(small_integer(&f, &4), Some(-1));
        assert_eq!(small_integer(&f, &2), Some(2));
        assert_eq!(small_integer(&Rationals, &Rationals.from_i64(-3)), Some(-3));
        let half = Rationals.inv(&Rationals.from_i64(2)).unwrap();
        assert_eq!(small_integer(&Rationals, &half), None);
    }

    #[test]
    fn dispatch_macro() {
        let c0 = with_field!(FieldSpec::new(0).unwrap(), |f| f.characteristic());
        let c3 = with_field!(FieldSpec::new(3).unwrap(), |f| f.characteristic());
        assert_eq!((c0, c3), (0, 3));
    }
}
