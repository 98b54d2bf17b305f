//! Laurent polynomials in `v` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse map exponent -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly::default()
    }

    pub fn one() -> Self {
        LPoly::monomial(1, 0)
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        LPoly::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, k: i32) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LPoly { coeffs }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LPoly::monomial(c, 0)
    }

    /// `v + v^-1`
    pub fn quantum_two() -> Self {
        LPoly::monomial(1, 1) + LPoly::monomial(1, -1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = LPoly::zero();
        for (k, c) in terms {
            out.add_term(k, &c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, k: i32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn min_deg(&self) -> Result<i32> {
        self.coeffs.keys().next().copied().ok_or(Error::ZeroPolynomial)
    }

    pub fn max_deg(&self) -> Result<i32> {
        self.coeffs.keys().next_back().copied().ok_or(Error::ZeroPolynomial)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// `v -> v^-1`
    pub fn bar(&self) -> Self {
        LPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            coeffs: self.coeffs.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.coeffs.keys().copied()
    }
}

impl From<i64> for LPoly {
    fn from(c: i64) -> Self {
        LPoly::constant(c)
    }
}

impl From<BigInt> for LPoly {
    fn from(c: BigInt) -> Self {
        LPoly::constant(c)
    }
}

impl AddAssign<&LPoly> for LPoly {
    fn add_assign(&mut self, rhs: &LPoly) {
        for (&k, c) in &rhs.coeffs {
            self.add_term(k, c);
        }
    }
}

impl SubAssign<&LPoly> for LPoly {
    fn sub_assign(&mut self, rhs: &LPoly) {
        for (&k, c) in &rhs.coeffs {
            self.add_term(k, &-c);
        }
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(mut self, rhs: LPoly) -> LPoly {
        self += &rhs;
        self
    }
}

impl Add<&LPoly> for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(mut self, rhs: LPoly) -> LPoly {
        self -= &rhs;
        self
    }
}

impl Sub<&LPoly> for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly {
            coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        self.clone().neg()
    }
}

impl Mul<&LPoly> for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, rhs: LPoly) -> LPoly {
        &self * &rhs
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if k == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match k {
                1 => write!(f, "v")?,
                _ => write!(f, "v^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parses sums like `v^-2 + 3 + v^2`, `-2v - 1`, `4*v^3`.
impl FromStr for LPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<LPoly> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut out = LPoly::zero();
        let mut first = true;

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| text[start..*pos].parse().expect("digits"))
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(Error::parse(pos, "expected '+' or '-' between terms"));
            }
            first = false;

            let term_start = pos;
            let coeff = read_int(&mut pos);
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                if coeff.is_none() {
                    return Err(Error::parse(pos, "'*' without a coefficient"));
                }
                pos += 1;
                skip_ws(&mut pos);
            }
            let mut exponent = 0i32;
            if pos < bytes.len() && bytes[pos] == b'v' {
                pos += 1;
                exponent = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let neg = pos < bytes.len() && bytes[pos] == b'-';
                    if neg {
                        pos += 1;
                    }
                    let e = read_int(&mut pos).ok_or_else(|| Error::parse(pos, "expected an exponent after '^'"))?;
                    let e = e.to_i32().ok_or_else(|| Error::parse(pos, "exponent out of range"))?;
                    exponent = if neg { -e } else { e };
                }
            } else if coeff.is_none() {
                return Err(Error::parse(term_start, "expected a coefficient or 'v'"));
            }
            let c = coeff.unwrap_or_else(BigInt::one) * sign;
            out.add_term(exponent, &c);
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}

/// JSON form: `{"-2": 1, "0": 3, "2": 1}`. Coefficients outside the `i64`
/// range are written as decimal strings.
impl Serialize for LPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (k, c) in &self.coeffs {
            match c.to_i64() {
                Some(small) => map.serialize_entry(&k.to_string(), &small)?,
                None => map.serialize_entry(&k.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<LPoly, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, serde_json::Value>::deserialize(deserializer)?;
        let mut out = LPoly::zero();
        for (k, value) in raw {
            let exp: i32 = k.parse().map_err(D::Error::custom)?;
            let c: BigInt = match value {
                serde_json::Value::Number(n) => n.to_string().parse().map_err(D::Error::custom)?,
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            out.add_term(exp, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> LPoly {
        text.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(LPoly::quantum_two() * LPoly::v(), p("v^2 + 1"));
        assert!((LPoly::v() + -LPoly::v()).is_zero());
        assert_eq!(LPoly::monomial(1, 2) * LPoly::monomial(3, -2), LPoly::constant(3));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LPoly::v().bar(), LPoly::monomial(1, -1));
        assert_eq!(p("v^2 + 1").bar(), p("v^-2 + 1"));
    }

    #[test]
    fn evaluation_and_degrees() {
        assert_eq!(p("v^2 + 1").eval_at_one(), BigInt::from(2));
        assert_eq!(p("v^3 + v").coeff(1), BigInt::from(1));
        assert!(!p("v - 1").is_nonneg());
        assert_eq!(p("v^-2 + 3 + v^5").min_deg(), Ok(-2));
        assert_eq!(p("v^-2 + 3 + v^5").max_deg(), Ok(5));
        assert_eq!(LPoly::zero().min_deg(), Err(Error::ZeroPolynomial));
        assert_eq!(LPoly::zero().max_deg(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn text_form() {
        assert_eq!(p("v^-2 + 3 + v^2").to_string(), "v^-2 + 3 + v^2");
        assert_eq!(p("-2v - 1 + 4*v^3").to_string(), "-1 - 2v + 4v^3");
        assert_eq!(LPoly::zero().to_string(), "0");
        assert_eq!(p("v - v"), LPoly::zero());
        assert!("v^".parse::<LPoly>().is_err());
        assert!("3 4".parse::<LPoly>().is_err());
        assert!("".parse::<LPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let poly = p("v^-2 + 3 + v^2");
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, r#"{"-2":1,"0":3,"2":1}"#);
        assert_eq!(serde_json::from_str::<LPoly>(&json).unwrap(), poly);
        let huge = LPoly::monomial(BigInt::from(i64::MAX) * 4, 1);
        let back: LPoly = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }

    fn arb_poly() -> impl Strategy<Value = LPoly> {
        prop::collection::vec((-6i32..=6, -5i64..=5), 0..6).prop_map(LPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn bar_is_ring_automorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!(a.bar().bar(), a);
        }

        #[test]
        fn evaluation_is_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
            prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LPoly>().unwrap(), a);
        }
    }
}
