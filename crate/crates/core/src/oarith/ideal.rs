use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fpoly::{degree, is_prime, FpPoly, PrimeField};
use super::residue::{Fq, ResidueField};
use crate::error::{Error, Result};
use crate::poly::Rational;
use crate::qfield::{Automorphism, KElement, TraceField};

/// A prime of `K` above `ell`, given by a monic irreducible factor of the
/// minimal polynomial of `gamma` modulo `ell`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub ell: u64,
    /// The local factor, ascending coefficients over `F_ell`.
    pub g: FpPoly,
    pub f: usize,
}

impl PrimeIdeal {
    pub fn residue_field(&self) -> ResidueField {
        ResidueField::new(self.ell, self.g.clone())
    }

    /// Sort key: residue degree, then coefficients.
    fn key(&self) -> (usize, &[u64]) {
        (self.f, &self.g)
    }
}

impl std::fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let coeffs: Vec<_> = self.g.iter().map(ToString::to_string).collect();
        write!(f, "({}, [{}])", self.ell, coeffs.join(","))
    }
}

fn rational_mod(c: &Rational, ell: u64) -> Option<u64> {
    let l = BigInt::from(ell);
    let den = c.denom().mod_floor(&l).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = c.numer().mod_floor(&l).to_u64()?;
    let fp = PrimeField::new(ell);
    Some(fp.mul(num, fp.inv(den)))
}

/// Coefficients of a rational polynomial reduced mod `ell`, if every
/// denominator is a unit.
fn poly_mod(coeffs: &[Rational], ell: u64) -> Option<FpPoly> {
    let mut out = coeffs
        .iter()
        .map(|c| rational_mod(c, ell))
        .collect::<Option<Vec<_>>>()?;
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

fn check_prime(ell: u64) -> Result<PrimeField> {
    if !is_prime(ell) || ell >= 1 << 32 {
        return Err(Error::InvalidArgument(format!("{ell} is not a prime below 2^32")));
    }
    Ok(PrimeField::new(ell))
}

/// Why `ell` is not regular for `field`, if it is not.
pub fn irregularity(field: &TraceField, ell: u64) -> Result<Option<String>> {
    let fp = check_prime(ell)?;
    let kpoly = poly_mod(field.k_minpoly().coeffs(), ell)
        .ok_or_else(|| Error::Internal("minimal polynomial is not integral".into()))?;
    if !fp.is_squarefree(&kpoly) {
        return Ok(Some("divides the discriminant of the minimal polynomial".into()));
    }
    for (pos, lambda) in field.lambda_coordinates()?.iter().enumerate() {
        if lambda.coords().iter().any(|c| (c.denom() % ell).is_zero()) {
            return Ok(Some(format!(
                "divides a denominator of the trace at position {pos}"
            )));
        }
    }
    Ok(None)
}

/// Primes of `K` above a regular `ell`, sorted by residue degree and then by
/// the coefficients of the local factor.
pub fn split_prime(field: &TraceField, ell: u64) -> Result<Vec<PrimeIdeal>> {
    if let Some(reason) = irregularity(field, ell)? {
        return Err(Error::unsupported(ell, reason));
    }
    let fp = PrimeField::new(ell);
    let kpoly = poly_mod(field.k_minpoly().coeffs(), ell).expect("checked above");
    let mut ideals: Vec<PrimeIdeal> = fp
        .factor_squarefree(&kpoly)
        .into_iter()
        .map(|g| PrimeIdeal {
            ell,
            f: degree(&g).unwrap_or(0),
            g,
        })
        .collect();
    ideals.sort_by(|a, b| a.key().cmp(&b.key()));
    debug_assert_eq!(ideals.iter().map(|p| p.f).sum::<usize>(), field.degree());
    Ok(ideals)
}

/// Image of `a` in the residue field of `p`.
pub fn reduce(a: &KElement, p: &PrimeIdeal) -> Result<Fq> {
    let coeffs = poly_mod(a.coords(), p.ell).ok_or_else(|| Error::Reduction {
        ell: p.ell,
        reason: "a denominator is divisible by the prime".into(),
    })?;
    Ok(p.residue_field().from_poly(&coeffs))
}

/// The prime `tau(p)`, found among `primes` (all primes above `p.ell`).
pub fn galois_on_prime(
    tau: &Automorphism,
    p: &PrimeIdeal,
    primes: &[PrimeIdeal],
) -> Result<PrimeIdeal> {
    let fp = PrimeField::new(p.ell);
    let image = poly_mod(tau.image.coords(), p.ell).ok_or_else(|| Error::Reduction {
        ell: p.ell,
        reason: "image of gamma has a denominator divisible by the prime".into(),
    })?;
    let mut hits = primes
        .iter()
        .filter(|q| fp.compose_mod(&p.g, &image, &q.g).is_empty());
    match (hits.next(), hits.next()) {
        (Some(q), None) => Ok(q.clone()),
        (None, _) => Err(Error::Internal(format!("no prime contains the image of {p}"))),
        (Some(_), Some(_)) => Err(Error::Internal(format!(
            "several primes contain the image of {p}"
        ))),
    }
}
