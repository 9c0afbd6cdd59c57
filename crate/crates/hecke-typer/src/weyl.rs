//! Finite Weyl and dihedral Coxeter types: parsing, fundamental degrees,
//! group orders, and Poincaré polynomials via degree products.
//!
//! The degree tables are hard data; the coxeter engine's BFS oracle
//! re-derives orders and Poincaré polynomials for every enumerable type, so
//! a wrong table entry cannot survive the verification suites.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::poly::IntPolynomial;

/// One irreducible factor of a Weyl group product.
///
/// `C_n` does not appear: it is rewritten to `B_n` at construction (same
/// Coxeter system, same one-parameter Hecke algebra). `G2` and `I2(6)` are
/// the same Coxeter group but keep distinct labels: only the former is a
/// Weyl type, which matters for the `q = 1` branch of the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrreducibleType {
    A { rank: usize },
    B { rank: usize },
    D { rank: usize },
    E { rank: usize },
    F4,
    G2,
    I2 { m: usize },
}

use IrreducibleType::{A, B, D, E, F4, G2, I2};

/// Validation failure when building an [`IrreducibleType`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("rank {rank} out of range for family {family}")]
    RankOutOfRange { family: char, rank: usize },
    #[error("I2({m}) needs m >= 3")]
    DihedralTooSmall { m: usize },
}

impl IrreducibleType {
    /// Validated constructor; family `C` folds to `B`.
    pub fn new(family: char, rank: usize) -> Result<Self, TypeError> {
        let fam = family.to_ascii_uppercase();
        let out_of_range = || TypeError::RankOutOfRange { family: fam, rank };
        match fam {
            'A' if rank >= 1 => Ok(A { rank }),
            'B' | 'C' if rank >= 2 => Ok(B { rank }),
            'D' if rank >= 2 => Ok(D { rank }),
            'E' if (6..=8).contains(&rank) => Ok(E { rank }),
            'F' if rank == 4 => Ok(F4),
            'G' if rank == 2 => Ok(G2),
            'I' => {
                // callers use `dihedral` for I2(m); `rank` here is m
                if rank >= 3 {
                    Ok(I2 { m: rank })
                } else {
                    Err(TypeError::DihedralTooSmall { m: rank })
                }
            }
            'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' => Err(out_of_range()),
            _ => Err(out_of_range()),
        }
    }

    pub fn dihedral(m: usize) -> Result<Self, TypeError> {
        if m >= 3 {
            Ok(I2 { m })
        } else {
            Err(TypeError::DihedralTooSmall { m })
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            A { rank } | B { rank } | D { rank } | E { rank } => rank,
            F4 => 4,
            G2 | I2 { .. } => 2,
        }
    }

    /// Weyl groups are the crystallographic types; `I2(m)` qualifies only
    /// for m in {3, 4, 6} (these are A2, B2, G2 in dihedral clothing).
    pub fn is_weyl(&self) -> bool {
        match *self {
            I2 { m } => matches!(m, 3 | 4 | 6),
            _ => true,
        }
    }

    /// Fundamental degrees, ascending.
    pub fn degrees(&self) -> DegreeList {
        let mut d: Vec<u64> = match *self {
            // A_rank = A_{n-1} acting on n = rank + 1 symbols: degrees 2..=n
            A { rank } => (2..=rank as u64 + 1).collect(),
            B { rank } => (1..=rank as u64).map(|i| 2 * i).collect(),
            D { rank } => {
                let mut v: Vec<u64> = (1..rank as u64).map(|i| 2 * i).collect();
                v.push(rank as u64);
                v
            }
            E { rank: 6 } => vec![2, 5, 6, 8, 9, 12],
            E { rank: 7 } => vec![2, 6, 8, 10, 12, 14, 18],
            E { rank: 8 } => vec![2, 8, 12, 14, 18, 20, 24, 30],
            E { rank } => unreachable!("invalid E rank {rank}"),
            F4 => vec![2, 6, 8, 12],
            G2 => vec![2, 6],
            I2 { m } => vec![2, m as u64],
        };
        d.sort_unstable();
        DegreeList(d)
    }

    pub fn order(&self) -> BigUint {
        self.degrees().order()
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            A { rank } => write!(f, "A{rank}"),
            B { rank } => write!(f, "B{rank}"),
            D { rank } => write!(f, "D{rank}"),
            E { rank } => write!(f, "E{rank}"),
            F4 => write!(f, "F4"),
            G2 => write!(f, "G2"),
            I2 { m } => write!(f, "I2({m})"),
        }
    }
}

impl Serialize for IrreducibleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IrreducibleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let spec: WeylSpec = text.parse().map_err(serde::de::Error::custom)?;
        match spec.factors() {
            [one] => Ok(*one),
            _ => Err(serde::de::Error::custom(
                "expected a single irreducible type",
            )),
        }
    }
}

/// Fundamental degrees `d_1 <= ... <= d_rank` of an irreducible type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeList(Vec<u64>);

impl DegreeList {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `|W|` = product of degrees.
    pub fn order(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &d| acc * d)
    }

    /// Number of positive roots = `sum (d_i - 1)` = degree of `P_W`.
    pub fn positive_root_count(&self) -> u64 {
        self.0.iter().map(|&d| d - 1).sum()
    }
}

impl std::ops::Deref for DegreeList {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

/// A finite product of irreducible factors; empty means the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylSpec {
    factors: Vec<IrreducibleType>,
}

impl WeylSpec {
    pub fn new(factors: Vec<IrreducibleType>) -> Self {
        WeylSpec { factors }
    }

    pub fn trivial() -> Self {
        WeylSpec {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[IrreducibleType] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Order of the whole product; 1 for the trivial group.
    pub fn group_order(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, t| acc * t.order())
    }

    /// `P_W(x)` as a product over all factors and degrees `d` of
    /// `(x^d - 1)/(x - 1)`, each quotient by exact division.
    pub fn poincare_polynomial(&self) -> IntPolynomial {
        let x_minus_one = IntPolynomial::from_coeffs(vec![-1i64, 1]);
        let mut p = IntPolynomial::one();
        for t in &self.factors {
            for &d in t.degrees().as_slice() {
                let q = IntPolynomial::x_pow_minus_one(d as usize)
                    .exact_div(&x_minus_one)
                    .expect("x - 1 divides x^d - 1");
                p = p.mul(&q);
            }
        }
        p
    }
}

impl fmt::Display for WeylSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parse failure, with the byte offset into the original input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl FromStr for WeylSpec {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_type_spec(s)
    }
}

/// Parses the type-spec grammar:
///
/// ```text
/// Spec   := "1" | Factor ( "x" Factor )*
/// Factor := ("A"|"B"|"C"|"D") INT | "E" ("6"|"7"|"8") | "F4" | "G2" | "I2(" INT ")"
/// ```
///
/// Whitespace is ignored and letters are case-insensitive. `C_n` comes back
/// as `B_n`.
pub fn parse_type_spec(text: &str) -> Result<WeylSpec, ParseError> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
    }
    .parse_spec()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_spec(mut self) -> Result<WeylSpec, ParseError> {
        if self.peek() == Some(b'1') {
            let one_pos = self.pos;
            self.pos += 1;
            return match self.peek() {
                None => Ok(WeylSpec::trivial()),
                Some(_) => Err(self.error(
                    one_pos,
                    "'1' (the trivial group) cannot be combined with factors",
                )),
            };
        }
        let mut factors = vec![self.parse_factor()?];
        loop {
            match self.peek() {
                None => return Ok(WeylSpec::new(factors)),
                Some(b'x') | Some(b'X') => {
                    self.pos += 1;
                    factors.push(self.parse_factor()?);
                }
                Some(c) => {
                    return Err(self.error(
                        self.pos,
                        format!("expected 'x' or end of input, found '{}'", c as char),
                    ))
                }
            }
        }
    }

    fn parse_factor(&mut self) -> Result<IrreducibleType, ParseError> {
        let Some(letter) = self.peek() else {
            return Err(self.error(self.pos, "expected a type family (A, B, C, D, E, F, G, I2)"));
        };
        let letter_pos = self.pos;
        let fam = letter.to_ascii_uppercase() as char;
        if !matches!(fam, 'A'..='G' | 'I') {
            return Err(self.error(
                letter_pos,
                format!("unknown type family '{}'", letter as char),
            ));
        }
        self.pos += 1;
        let rank_pos = self.pos;
        let n = self.parse_int()?;
        if fam == 'I' {
            if n != 2 {
                return Err(self.error(
                    rank_pos,
                    format!("unknown type family 'I{n}' (only I2 exists)"),
                ));
            }
            self.expect(b'(')?;
            let m_pos = self.pos;
            let m = self.parse_int()?;
            self.expect(b')')?;
            return IrreducibleType::dihedral(m).map_err(|e| self.error(m_pos, e.to_string()));
        }
        IrreducibleType::new(fam, n).map_err(|e| self.error(rank_pos, e.to_string()))
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn parse_int(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: usize = 0;
        let mut any = false;
        while let Some(&c) = self.bytes.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as usize))
                .ok_or_else(|| self.error(start, "integer too large"))?;
            self.pos += 1;
        }
        if !any {
            return Err(self.error(start, "expected an integer"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn spec(s: &str) -> WeylSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_basics() {
        assert_eq!(spec("A4xB3").factors(), &[A { rank: 4 }, B { rank: 3 }]);
        assert_eq!(spec("C3").factors(), &[B { rank: 3 }]);
        assert_eq!(
            spec(" a2 X i2( 7 ) x g2 ").factors(),
            &[A { rank: 2 }, I2 { m: 7 }, G2]
        );
        assert!(spec("1").is_trivial());
        assert_eq!(spec("e7").factors(), &[E { rank: 7 }]);
        assert_eq!(spec("F4").factors(), &[F4]);
    }

    #[test]
    fn parse_errors() {
        let err = "E9".parse::<WeylSpec>().unwrap_err();
        assert!(err.message.contains("out of range"), "{err}");
        assert_eq!(err.position, 1);

        assert!("A0".parse::<WeylSpec>().is_err());
        assert!("B1".parse::<WeylSpec>().is_err());
        assert!("D1".parse::<WeylSpec>().is_err());
        assert!("F5".parse::<WeylSpec>().is_err());
        assert!("G3".parse::<WeylSpec>().is_err());
        assert!("I2(2)".parse::<WeylSpec>().is_err());
        assert!("I3(4)".parse::<WeylSpec>().is_err());
        assert!("H3".parse::<WeylSpec>().is_err());
        assert!("A4x".parse::<WeylSpec>().is_err());
        assert!("A4yB3".parse::<WeylSpec>().is_err());
        assert!("1xA2".parse::<WeylSpec>().is_err());
        assert!("".parse::<WeylSpec>().is_err());
        assert!("A".parse::<WeylSpec>().is_err());

        let err = "A2 x E9".parse::<WeylSpec>().unwrap_err();
        assert_eq!(
            err.position, 6,
            "position points at the rank in the original text"
        );
    }

    #[test]
    fn degree_tables() {
        assert_eq!(A { rank: 2 }.degrees().as_slice(), &[2, 3]);
        assert_eq!(B { rank: 4 }.degrees().as_slice(), &[2, 4, 6, 8]);
        // D4: {2, 4, 6} from the even series plus the rank itself
        assert_eq!(D { rank: 4 }.degrees().as_slice(), &[2, 4, 4, 6]);
        assert_eq!(D { rank: 2 }.degrees().as_slice(), &[2, 2]);
        assert_eq!(D { rank: 3 }.degrees().as_slice(), &[2, 3, 4]);
        assert_eq!(F4.degrees().as_slice(), &[2, 6, 8, 12]);
        assert_eq!(G2.degrees().as_slice(), &[2, 6]);
        assert_eq!(I2 { m: 7 }.degrees().as_slice(), &[2, 7]);
        assert_eq!(E { rank: 6 }.degrees().as_slice(), &[2, 5, 6, 8, 9, 12]);
    }

    #[test]
    fn group_orders() {
        let big = |n: u64| BigUint::from(n);
        assert_eq!(B { rank: 4 }.order(), big(384)); // 2^4 * 4!
        assert_eq!(E { rank: 6 }.order(), big(51840));
        assert_eq!(E { rank: 7 }.order(), big(2_903_040));
        assert_eq!(E { rank: 8 }.order(), big(696_729_600));
        assert_eq!(F4.order(), big(1152));
        assert_eq!(G2.order(), big(12));
        assert_eq!(WeylSpec::trivial().group_order(), big(1));
        assert_eq!(spec("A4xB3").group_order(), big(120 * 48));
        // D_3 = A_3
        assert_eq!(D { rank: 3 }.order(), A { rank: 3 }.order());
    }

    #[test]
    fn poincare_small_cases() {
        // 6 permutations of 3 letters by inversion count: 1, 2, 2, 1
        assert_eq!(
            spec("A2").poincare_polynomial(),
            IntPolynomial::from_coeffs(vec![1i64, 2, 2, 1])
        );
        assert_eq!(
            spec("B2").poincare_polynomial(),
            IntPolynomial::from_coeffs(vec![1i64, 2, 2, 2, 1])
        );
        assert_eq!(spec("1").poincare_polynomial(), IntPolynomial::one());
        let d4 = spec("D4").poincare_polynomial();
        assert_eq!(d4.degree(), Some(12));
        assert_eq!(d4.eval_at_integer(&BigInt::one()), BigInt::from(192));
    }

    #[test]
    fn degree_list_invariants() {
        let all = [
            A { rank: 5 },
            B { rank: 6 },
            D { rank: 7 },
            E { rank: 6 },
            E { rank: 7 },
            E { rank: 8 },
            F4,
            G2,
            I2 { m: 9 },
        ];
        for t in all {
            let degs = t.degrees();
            assert_eq!(degs.len(), t.rank(), "{t}: one degree per rank");
            assert!(degs.windows(2).all(|w| w[0] <= w[1]), "{t}: sorted");
            let p = WeylSpec::new(vec![t]).poincare_polynomial();
            assert_eq!(
                p.degree().unwrap() as u64,
                degs.positive_root_count(),
                "{t}"
            );
            assert_eq!(
                p.eval_at_integer(&BigInt::one()),
                BigInt::from_biguint(num_bigint::Sign::Plus, t.order()),
                "{t}: P_W(1) = |W|"
            );
            assert!(
                p.is_palindromic(),
                "{t}: length generating function is palindromic"
            );
        }
    }

    fn arb_type() -> impl Strategy<Value = IrreducibleType> {
        prop_oneof![
            (1usize..12).prop_map(|rank| A { rank }),
            (2usize..12).prop_map(|rank| B { rank }),
            (2usize..12).prop_map(|rank| D { rank }),
            (6usize..=8).prop_map(|rank| E { rank }),
            Just(F4),
            Just(G2),
            (3usize..40).prop_map(|m| I2 { m }),
        ]
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(factors in proptest::collection::vec(arb_type(), 0..5)) {
            let spec = WeylSpec::new(factors);
            let reparsed: WeylSpec = spec.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, spec);
        }

        #[test]
        fn order_is_multiplicative(a in proptest::collection::vec(arb_type(), 0..3),
                                   b in proptest::collection::vec(arb_type(), 0..3)) {
            let mut joined = a.clone();
            joined.extend(b.iter().copied());
            prop_assert_eq!(
                WeylSpec::new(joined).group_order(),
                WeylSpec::new(a).group_order() * WeylSpec::new(b).group_order()
            );
        }
    }
}
