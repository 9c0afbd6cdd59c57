//! Exact arithmetic on integer-coefficient polynomials.
//!
//! Everything here is over `BigInt`; there is no floating point anywhere in
//! this module. Polynomials are dense, lowest degree first, with no trailing
//! zero coefficient (the zero polynomial is the empty coefficient list).
//!
//! The operation that matters most downstream is [`phi_multiplicity`]: the
//! exact multiplicity of the cyclotomic polynomial `Phi_e` in a polynomial,
//! computed by repeated exact division. Evaluating a Poincaré polynomial at a
//! primitive `e`-th root of unity is replaced everywhere by this divisibility
//! test, which keeps the whole pipeline in exact integers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense integer polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    // lowest degree first, no trailing zeros
    coeffs: Vec<BigInt>,
}

/// Signaled by [`IntPolynomial::exact_div`] when the division is inexact.
///
/// This is a normal outcome, not a failure: multiplicity counting divides
/// until it sees one. For a monic divisor the carried remainder is the
/// Euclidean remainder; for a non-monic divisor it is the partial remainder
/// at the step where a leading-coefficient division failed over the integers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial division left remainder {remainder}")]
pub struct NotDivisible {
    pub remainder: IntPolynomial,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from coefficients (lowest degree first),
    /// trimming trailing zeros.
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// `x^d - 1`.
    pub fn x_pow_minus_one(d: usize) -> Self {
        assert!(d >= 1, "x^d - 1 needs d >= 1");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = -BigInt::one();
        coeffs[d] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// `1 + x + ... + x^(d-1)`, the length-`d` geometric sum.
    pub fn geometric_sum(d: usize) -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one(); d],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact product (schoolbook; degrees here stay small).
    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    /// Exact quotient `self / divisor` over the integers.
    ///
    /// Returns `Err(NotDivisible)` when `self != divisor * q` for any integer
    /// polynomial `q`. Panics if `divisor` is zero.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, NotDivisible> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let deg_a = self.coeffs.len() - 1;
        let deg_b = divisor.coeffs.len() - 1;
        if deg_a < deg_b {
            return Err(NotDivisible {
                remainder: self.clone(),
            });
        }
        let lead_b = &divisor.coeffs[deg_b];
        let mut rem = self.coeffs.clone();
        let q_len = deg_a - deg_b + 1;
        let mut quot = vec![BigInt::zero(); q_len];
        for k in (0..q_len).rev() {
            let lead = rem[k + deg_b].clone();
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(lead_b);
            if !r.is_zero() {
                return Err(NotDivisible {
                    remainder: IntPolynomial::from_coeffs(rem),
                });
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(NotDivisible {
                remainder: IntPolynomial::from_coeffs(rem),
            });
        }
        Ok(IntPolynomial::from_coeffs(quot))
    }

    /// Horner evaluation at an integer point.
    pub fn eval_at_integer(&self, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    /// Coefficient list reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

// JSON form: array of decimal strings, lowest degree first. Strings rather
// than numbers because product Poincaré coefficients overflow f64/i64.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntPolynomial;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a sequence of decimal integer strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    let c: BigInt = s.parse().map_err(serde::de::Error::custom)?;
                    coeffs.push(c);
                }
                Ok(IntPolynomial::from_coeffs(coeffs))
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Memoize cyclotomics only up to this index; larger ones are recomputed on
/// demand (their divisor factors still hit the cache).
pub const CYCLOTOMIC_MEMO_BOUND: usize = 512;

fn cyclotomic_cache() -> &'static RwLock<HashMap<usize, Arc<IntPolynomial>>> {
    static CACHE: std::sync::OnceLock<RwLock<HashMap<usize, Arc<IntPolynomial>>>> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial `Phi_d`.
///
/// Computed from the defining recursion: `x^d - 1` divided exactly by the
/// product of `Phi_d'` over proper divisors `d'` of `d`. Concurrent callers
/// may race to insert the same entry; inserts are idempotent.
pub fn cyclotomic(d: usize) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be >= 1");
    if d <= CYCLOTOMIC_MEMO_BOUND {
        if let Some(p) = cyclotomic_cache().read().unwrap().get(&d) {
            return (**p).clone();
        }
    }
    let p = compute_cyclotomic(d);
    if d <= CYCLOTOMIC_MEMO_BOUND {
        cyclotomic_cache()
            .write()
            .unwrap()
            .entry(d)
            .or_insert_with(|| Arc::new(p.clone()));
    }
    p
}

fn compute_cyclotomic(d: usize) -> IntPolynomial {
    if d == 1 {
        return IntPolynomial::from_coeffs(vec![-1i64, 1]);
    }
    let mut divisor_product = IntPolynomial::one();
    for d_prime in 1..=d / 2 {
        if d.is_multiple_of(d_prime) {
            divisor_product = divisor_product.mul(&cyclotomic(d_prime));
        }
    }
    IntPolynomial::x_pow_minus_one(d)
        .exact_div(&divisor_product)
        .expect("x^d - 1 is divisible by the product of lower cyclotomics")
}

/// Largest `k` with `Phi_e^k | p`, by repeated exact division.
pub fn phi_multiplicity(p: &IntPolynomial, e: usize) -> usize {
    assert!(
        !p.is_zero(),
        "multiplicity in the zero polynomial is undefined"
    );
    assert!(e >= 1);
    let phi = cyclotomic(e);
    let mut k = 0;
    let mut current = p.clone();
    while let Ok(q) = current.exact_div(&phi) {
        k += 1;
        current = q;
    }
    k
}

/// `#{ i : e | d_i }` over a list of fundamental degrees.
///
/// For `e >= 2` this equals `phi_multiplicity` of the degree product
/// `prod (x^{d_i} - 1)/(x - 1)`, because `Phi_e` divides `x^d - 1` exactly
/// once when `e | d` and never divides `x - 1`. That equivalence is the
/// closed-form shortcut behind every classification threshold; the
/// multiplicity-oracle suite checks it against the division route.
pub fn degree_count_multiplicity(degrees: &[u64], e: u64) -> usize {
    assert!(e >= 2);
    degrees.iter().filter(|&&d| d % e == 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        assert_eq!(poly(&[1, 2, 0, 0]), poly(&[1, 2]));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[]).degree(), None);
    }

    #[test]
    fn mul_basics() {
        // (x - 1)(x + 1) = x^2 - 1
        assert_eq!(poly(&[-1, 1]).mul(&poly(&[1, 1])), poly(&[-1, 0, 1]));
        let a = poly(&[3, 0, -2, 7]);
        assert_eq!(a.mul(&IntPolynomial::one()), a);
        // (1 + x)^2
        assert_eq!(poly(&[1, 1]).mul(&poly(&[1, 1])), poly(&[1, 2, 1]));
        assert!(a.mul(&IntPolynomial::zero()).is_zero());
    }

    #[test]
    fn exact_div_basics() {
        // (x^3 - 1)/(x - 1) = x^2 + x + 1
        let q = IntPolynomial::x_pow_minus_one(3)
            .exact_div(&poly(&[-1, 1]))
            .unwrap();
        assert_eq!(q, poly(&[1, 1, 1]));

        // x^2 + 1 = (x - 1)(x + 1) + 2
        let err = poly(&[1, 0, 1]).exact_div(&poly(&[-1, 1])).unwrap_err();
        assert_eq!(err.remainder, poly(&[2]));

        // P_{B_2} = 1 + 2x + 2x^2 + 2x^3 + x^4 is divisible by Phi_4 = x^2 + 1
        let p_b2 = poly(&[1, 2, 2, 2, 1]);
        let q = p_b2.exact_div(&cyclotomic(4)).unwrap();
        assert_eq!(q.mul(&cyclotomic(4)), p_b2);

        // degree too small
        assert!(poly(&[5]).exact_div(&poly(&[0, 1])).is_err());
        // zero numerator is divisible by anything
        assert_eq!(
            IntPolynomial::zero().exact_div(&poly(&[2, 3])).unwrap(),
            IntPolynomial::zero()
        );
    }

    #[test]
    fn exact_div_non_monic() {
        let b = poly(&[2, 4, 2]);
        let q = poly(&[3, -1]);
        let a = b.mul(&q);
        assert_eq!(a.exact_div(&b).unwrap(), q);
        // 2x + 1 is not an integer multiple of 2
        assert!(poly(&[1, 2]).exact_div(&poly(&[2])).is_err());
    }

    #[test]
    fn cyclotomic_small_values() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
        // first index with a coefficient outside {-1, 0, 1}
        assert_eq!(cyclotomic(105).coefficient(7), BigInt::from(-2));
    }

    // Independent route: Phi_d = prod_{d'|d} (x^{d'} - 1)^{mu(d/d')}.
    fn cyclotomic_by_moebius(d: usize) -> IntPolynomial {
        fn moebius(mut n: usize) -> i32 {
            let mut m = 1;
            let mut p = 2;
            while p * p <= n {
                if n.is_multiple_of(p) {
                    n /= p;
                    if n.is_multiple_of(p) {
                        return 0;
                    }
                    m = -m;
                }
                p += 1;
            }
            if n > 1 {
                m = -m;
            }
            m
        }
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for d_prime in 1..=d {
            if d.is_multiple_of(d_prime) {
                match moebius(d / d_prime) {
                    1 => num = num.mul(&IntPolynomial::x_pow_minus_one(d_prime)),
                    -1 => den = den.mul(&IntPolynomial::x_pow_minus_one(d_prime)),
                    _ => {}
                }
            }
        }
        num.exact_div(&den).expect("Moebius product is exact")
    }

    #[test]
    fn cyclotomic_matches_moebius_route() {
        for d in 1..=120 {
            assert_eq!(cyclotomic(d), cyclotomic_by_moebius(d), "Phi_{d}");
        }
    }

    #[test]
    fn cyclotomic_degrees_sum_to_n() {
        // sum over d | n of deg Phi_d = n  (equivalently sum of phi(d))
        for n in 1..=200usize {
            let total: usize = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| cyclotomic(d).degree().unwrap())
                .sum();
            assert_eq!(total, n, "n = {n}");
        }
    }

    #[test]
    fn phi_multiplicity_examples() {
        // P_{A_3}: degrees {2,3,4}
        let p_a3 = IntPolynomial::geometric_sum(2)
            .mul(&IntPolynomial::geometric_sum(3))
            .mul(&IntPolynomial::geometric_sum(4));
        assert_eq!(phi_multiplicity(&p_a3, 2), 2);
        assert_eq!(phi_multiplicity(&p_a3, 4), 1);
        assert_eq!(phi_multiplicity(&p_a3, 3), 1);
        assert_eq!(phi_multiplicity(&p_a3, 5), 0);
        assert_eq!(phi_multiplicity(&IntPolynomial::one(), 7), 0);
    }

    #[test]
    fn degree_count_agrees_with_division_on_samples() {
        let degree_sets: &[&[u64]] = &[
            &[2, 3, 4, 5],
            &[2, 4, 6, 8],
            &[2, 4, 4, 6],
            &[2, 6, 8, 12],
            &[2, 6],
        ];
        for degrees in degree_sets {
            let p = degrees.iter().fold(IntPolynomial::one(), |acc, &d| {
                acc.mul(&IntPolynomial::geometric_sum(d as usize))
            });
            for e in 2..=20u64 {
                assert_eq!(
                    degree_count_multiplicity(degrees, e),
                    phi_multiplicity(&p, e as usize),
                    "degrees {degrees:?}, e = {e}"
                );
            }
        }
    }

    #[test]
    fn eval_examples() {
        let p_a2 = poly(&[1, 2, 2, 1]);
        assert_eq!(p_a2.eval_at_integer(&BigInt::one()), BigInt::from(6));
        assert_eq!(
            poly(&[1, 0, 1]).eval_at_integer(&BigInt::from(2)),
            BigInt::from(5)
        );
    }

    #[test]
    fn display_rendering() {
        assert_eq!(poly(&[1, 2, 2, 1]).to_string(), "1 + 2x + 2x^2 + x^3");
        assert_eq!(poly(&[1, -1, 1]).to_string(), "1 - x + x^2");
        assert_eq!(poly(&[0, 0, -3]).to_string(), "-3x^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = poly(&[1, -2, 0, 7]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["1","-2","0","7"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-50i64..50, 0..max_len).prop_map(IntPolynomial::from_coeffs)
    }

    proptest! {
        #[test]
        fn div_undoes_mul(a in arb_poly(12), b in arb_poly(12)) {
            prop_assume!(!b.is_zero());
            let product = a.mul(&b);
            prop_assert_eq!(product.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn divisibility_iff_multiplicity_positive(a in arb_poly(10), e in 1usize..30) {
            prop_assume!(!a.is_zero());
            let divisible = a.exact_div(&cyclotomic(e)).is_ok();
            prop_assert_eq!(divisible, phi_multiplicity(&a, e) >= 1);
        }

        #[test]
        fn eval_is_ring_homomorphism(a in arb_poly(8), b in arb_poly(8), v in -20i64..20) {
            let v = BigInt::from(v);
            prop_assert_eq!(
                a.mul(&b).eval_at_integer(&v),
                a.eval_at_integer(&v) * b.eval_at_integer(&v)
            );
        }
    }
}
