//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree order. The zero polynomial is
//! the empty vector; otherwise the last coefficient is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `x - c`.
    pub fn linear_root(c: Rational) -> Self {
        Self::from_coeffs(vec![-c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Floating-point evaluation, used only for numeric cross-checks.
    /// Compensated Horner scheme, so high-degree integer polynomials keep
    /// close to twice working precision near their roots.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut iter = self.coeffs.iter().rev().map(|c| c.to_f64().unwrap_or(f64::NAN));
        let Some(mut s) = iter.next() else { return 0.0 };
        let mut err = 0.0;
        for a in iter {
            let p = s * x;
            let p_err = s.mul_add(x, -p);
            let t = p + a;
            let z = t - p;
            let t_err = (p - (t - z)) + (a - z);
            s = t;
            err = err * x + (p_err + t_err);
        }
        s + err
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let Some(n) = self.degree() else { return Poly::zero() };
        if inner.is_zero() {
            return Poly::constant(self.coeff(0));
        }
        // with self = a / d and inner = b / e, self(inner) = sum a_i b^i e^(n-i) / (d e^n)
        let (d, a) = self.to_integer_parts();
        let (e, b) = inner.to_integer_parts();
        let mut acc = vec![a[n].clone()];
        let mut e_pow = BigInt::one();
        for c in a[..n].iter().rev() {
            e_pow *= &e;
            acc = int_mul(&acc, &b);
            acc[0] += c * &e_pow;
        }
        Poly::from_integer_parts(&(d * e_pow), acc)
    }

    fn from_integer_parts(den: &BigInt, nums: Vec<BigInt>) -> Poly {
        Poly::from_coeffs(
            nums.into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Internal("polynomial division by zero".into()))?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Common positive denominator and integer numerators.
    pub fn to_integer_parts(&self) -> (BigInt, Vec<BigInt>) {
        common_denominator(&self.coeffs)
    }
}

/// Least common denominator of a slice of rationals and the scaled numerators.
pub(crate) fn common_denominator(values: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = values
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (den, nums)
}

/// Product of two nonempty integer coefficient vectors.
fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
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

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (da, a) = self.to_integer_parts();
        let (db, b) = rhs.to_integer_parts();
        Poly::from_integer_parts(&(da * db), int_mul(&a, &b))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Wire format: common positive denominator and ascending integer numerators,
/// all as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub den: String,
    pub num: Vec<String>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        coords_json(p.coeffs())
    }
}

/// Same wire format for a fixed-length coordinate vector (zeros kept).
pub(crate) fn coords_json(values: &[Rational]) -> PolyJson {
    let (den, nums) = common_denominator(values);
    PolyJson {
        den: den.to_string(),
        num: nums.iter().map(ToString::to_string).collect(),
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Poly> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Internal(format!("bad integer {s:?}: {e}")))
        };
        let den = parse(&j.den)?;
        if !den.is_positive() {
            return Err(Error::Internal("denominator must be positive".into()));
        }
        let coeffs = j
            .num
            .iter()
            .map(|s| Ok(Rational::new(parse(s)?, den.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_trailing_zeros() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Poly::from_ints(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[1, -2, -1, 1]).to_string(), "x^3 - x^2 - 2x + 1");
        assert_eq!(Poly::from_ints(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        // (x^3 - 1) / (x - 1) = x^2 + x + 1
        let (q, r) = Poly::from_ints(&[-1, 0, 0, 1])
            .div_rem(&Poly::from_ints(&[-1, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(Poly::one().div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn json_shape() {
        let p = Poly::from_coeffs(vec![Rational::new(1.into(), 2.into()), rat(3)]);
        let j = PolyJson::from(&p);
        assert_eq!(j.den, "2");
        assert_eq!(j.num, vec!["1", "6"]);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"den":"2","num":["1","6"]}"#
        );
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6).prop_map(|v| {
            Poly::from_coeffs(
                v.into_iter()
                    .map(|(n, d)| Rational::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn json_roundtrip(p in small_poly()) {
            let j = PolyJson::from(&p);
            prop_assert_eq!(Poly::try_from(&j).unwrap(), p);
        }

        #[test]
        fn div_rem_reconstructs(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn mul_and_compose_agree_with_evaluation(a in small_poly(), b in small_poly(), x in -7i64..7) {
            let x = rat(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
        }
    }
}
