//! The real cyclotomic field `Q(2cos(pi/m))` in the power basis of
//! `psi = 2cos(pi/m)`, together with the Dickson action of `(Z/2mZ)^x / {±1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{common_denominator, rat, Poly, Rational};
use crate::tri::Entry;

/// Dickson polynomial `D_k` with `D_k(z + 1/z) = z^k + z^-k`.
pub fn dickson(k: u64) -> Poly {
    // D_{j+1} = x D_j - D_{j-1}, with D_0 = 2 and D_1 = x
    let mut prev = vec![BigInt::from(2)];
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    if k == 0 {
        cur = prev.clone();
    }
    for _ in 1..k {
        let mut next = vec![BigInt::zero()];
        next.extend(cur.iter().cloned());
        for (n, p) in next.iter_mut().zip(&prev) {
            *n -= p;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Poly::from_coeffs(cur.into_iter().map(Rational::from_integer).collect())
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, via
/// `Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub(crate) fn cyclotomic_coeffs(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = vec![BigInt::one()];
    let mut dens = Vec::new();
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = mul_x_pow_minus_one(&num, d as usize),
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        num = div_x_pow_minus_one(&num, d);
    }
    debug_assert_eq!(num.len(), totient(n) as usize + 1);
    num
}

fn mul_x_pow_minus_one(a: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + d];
    for (i, c) in a.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// Exact division by `x^d - 1`.
fn div_x_pow_minus_one(a: &[BigInt], d: usize) -> Vec<BigInt> {
    // a = q * (x^d - 1)  =>  q_i = q_{i-d} - a_i
    let qlen = a.len() - d;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
        q[i] = prev - &a[i];
    }
    q
}

pub(crate) fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Q(psi)` with `psi = 2cos(pi/m)`.
#[derive(Clone, Debug)]
pub struct AmbientField {
    m: u64,
    psi_minpoly: Poly,
    /// Integer coefficients of the monic minimal polynomial, ascending.
    minpoly_int: Vec<BigInt>,
    /// `cos_table[j] = 2cos(j*pi/m)` for `0 <= j <= m`.
    cos_table: Vec<AmbientElement>,
    /// Power sums of the conjugates of `psi`, `Tr(psi^i)` for `i < degree`.
    power_traces: Vec<Rational>,
}

/// An element of the ambient field: coordinates in `1, psi, ..., psi^(D-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientElement {
    coords: Vec<Rational>,
}

impl AmbientElement {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(c)` if the element is the rational constant `c`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }
}

impl AmbientField {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "ambient level must be positive");
        let psi_minpoly = if m == 1 {
            Poly::from_ints(&[2, 1])
        } else {
            // Phi_2m is palindromic of degree 2n; Phi_2m(z) / z^n is a
            // polynomial in z + 1/z, obtained through the Dickson basis.
            let phi = cyclotomic_coeffs(2 * m);
            let n = (phi.len() - 1) / 2;
            let mut acc = Poly::constant(Rational::from_integer(phi[n].clone()));
            for j in 1..=n {
                let c = Rational::from_integer(phi[n + j].clone());
                acc = &acc + &dickson(j as u64).scale(&c);
            }
            acc
        };
        Self::with_minpoly(m, psi_minpoly)
    }

    /// Builds the field from a caller-supplied minimal polynomial. Only
    /// `new` guarantees correctness; this entry point exists so that checks
    /// can be exercised against a deliberately wrong table.
    pub fn with_minpoly(m: u64, psi_minpoly: Poly) -> Self {
        assert!(psi_minpoly.is_monic() && psi_minpoly.is_integral());
        let minpoly_int = psi_minpoly
            .coeffs()
            .iter()
            .map(|c| c.to_integer())
            .collect();
        let power_traces = power_sums(&psi_minpoly, psi_minpoly.degree().unwrap_or(0));
        let mut field = AmbientField {
            m,
            psi_minpoly,
            minpoly_int,
            cos_table: Vec::new(),
            power_traces,
        };
        let two = field.from_rational(rat(2));
        let psi = field.from_poly(&Poly::x());
        let mut table = Vec::with_capacity(m as usize + 1);
        table.push(two);
        table.push(psi);
        while table.len() <= m as usize {
            let k = table.len();
            let next = field.sub(&field.mul_by_psi(&table[k - 1]), &table[k - 2]);
            table.push(next);
        }
        table.truncate(m as usize + 1);
        field.cos_table = table;
        field
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn psi_minpoly(&self) -> &Poly {
        &self.psi_minpoly
    }

    pub fn degree(&self) -> usize {
        self.psi_minpoly.degree().unwrap_or(0)
    }

    pub fn psi_numeric(&self) -> f64 {
        2.0 * (std::f64::consts::PI / self.m as f64).cos()
    }

    pub fn zero(&self) -> AmbientElement {
        AmbientElement {
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn from_rational(&self, c: Rational) -> AmbientElement {
        let mut e = self.zero();
        e.coords[0] = c;
        e
    }

    /// Reduces a polynomial in `psi` modulo the minimal polynomial.
    pub fn from_poly(&self, p: &Poly) -> AmbientElement {
        let r = p.rem(&self.psi_minpoly).expect("minpoly is nonzero");
        let mut e = self.zero();
        for (i, c) in r.coeffs().iter().enumerate() {
            e.coords[i] = c.clone();
        }
        e
    }

    pub fn from_coords(&self, coords: Vec<Rational>) -> Result<AmbientElement> {
        if coords.len() != self.degree() {
            return Err(Error::Internal(format!(
                "expected {} ambient coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(AmbientElement { coords })
    }

    pub fn to_poly(&self, a: &AmbientElement) -> Poly {
        Poly::from_coeffs(a.coords.clone())
    }

    pub fn add(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        AmbientElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        AmbientElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &AmbientElement, c: &Rational) -> AmbientElement {
        AmbientElement {
            coords: a.coords.iter().map(|x| x * c).collect(),
        }
    }

    fn mul_by_psi(&self, a: &AmbientElement) -> AmbientElement {
        let d = self.degree();
        if d == 1 {
            let psi = -Rational::from_integer(self.minpoly_int[0].clone());
            return self.scale(a, &psi);
        }
        let top = a.coords[d - 1].clone();
        let mut coords = Vec::with_capacity(d);
        coords.push(Rational::zero());
        coords.extend_from_slice(&a.coords[..d - 1]);
        if !top.is_zero() {
            for (c, m) in coords.iter_mut().zip(&self.minpoly_int) {
                *c -= &top * m;
            }
        }
        AmbientElement { coords }
    }

    /// Multiplication, carried out on integer numerators with a common
    /// denominator and reduced by the monic integer minimal polynomial.
    pub fn mul(&self, a: &AmbientElement, b: &AmbientElement) -> AmbientElement {
        let d = self.degree();
        let (da, na) = common_denominator(&a.coords);
        let (db, nb) = common_denominator(&b.coords);
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for k in (d..prod.len()).rev() {
            let top = std::mem::take(&mut prod[k]);
            if top.is_zero() {
                continue;
            }
            for (i, c) in self.minpoly_int[..d].iter().enumerate() {
                if !c.is_zero() {
                    prod[k - d + i] -= &top * c;
                }
            }
        }
        let den = da * db;
        AmbientElement {
            coords: prod
                .into_iter()
                .take(d)
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, a: &AmbientElement, mut e: u64) -> AmbientElement {
        let mut base = a.clone();
        let mut acc = self.from_rational(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `2cos(j*pi/m)` for any integer `j`.
    pub fn cos_multiple(&self, j: u64) -> &AmbientElement {
        &self.cos_table[self.fold_index(j) as usize]
    }

    /// Maps `j` to the representative in `[0, m]` of `±j mod 2m`.
    pub(crate) fn fold_index(&self, j: u64) -> u64 {
        let r = j % (2 * self.m);
        if r > self.m {
            2 * self.m - r
        } else {
            r
        }
    }

    /// Residues `1 <= k <= m` coprime to `2m`: one per class of
    /// `(Z/2mZ)^x / {±1}`, in ascending order.
    pub fn unit_classes(&self) -> Vec<u64> {
        let n = 2 * self.m;
        (1..=self.m).filter(|k| k.gcd(&n) == 1).collect()
    }

    /// Product of two classes in `(Z/2mZ)^x / {±1}`.
    pub fn class_mul(&self, a: u64, b: u64) -> u64 {
        self.fold_index((a % (2 * self.m)) * (b % (2 * self.m)))
    }

    /// The automorphism `psi -> D_k(psi)` applied to an arbitrary element.
    pub fn sigma(&self, k: u64, a: &AmbientElement) -> AmbientElement {
        let image = self.cos_multiple(k);
        a.coords
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| {
                let mut t = self.mul(&acc, image);
                t.coords[0] += c;
                t
            })
    }

    /// Trace from the ambient field down to `Q`.
    pub fn trace(&self, a: &AmbientElement) -> Rational {
        a.coords
            .iter()
            .zip(&self.power_traces)
            .map(|(c, t)| c * t)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Floating-point value of an element, for advisory cross-checks.
    pub fn numeric(&self, a: &AmbientElement) -> f64 {
        self.to_poly(a).eval_f64(self.psi_numeric())
    }
}

/// `2cos(pi/s)` in the ambient field; `inf` maps to the constant 2.
pub fn lambda_element(field: &AmbientField, s: Entry) -> Result<AmbientElement> {
    match s {
        Entry::Infinite => Ok(field.from_rational(rat(2))),
        Entry::Finite(s) => {
            if s == 0 || field.m() % s != 0 {
                return Err(Error::InvalidEntry {
                    entry: s,
                    m: field.m(),
                });
            }
            Ok(field.cos_multiple(field.m() / s).clone())
        }
    }
}

/// Power sums `p_0 .. p_{count-1}` of the roots of a monic polynomial.
pub(crate) fn power_sums(f: &Poly, count: usize) -> Vec<Rational> {
    let n = f.degree().unwrap_or(0);
    // f = x^n + a_{n-1} x^{n-1} + ... + a_0, with e_i = (-1)^i a_{n-i}
    let a = |i: usize| f.coeff(i);
    let mut p = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(rat(n as i64));
            continue;
        }
        // p_k = -k a_{n-k} - sum_{i=1}^{k-1} a_{n-i} p_{k-i}   (a_j = 0 for j < 0)
        let mut s = Rational::zero();
        if k <= n {
            s -= rat(k as i64) * a(n - k);
        }
        for i in 1..k.min(n + 1) {
            s -= a(n - i) * &p[k - i];
        }
        p.push(s);
    }
    p
}

/// Recovers the monic polynomial with the given power sums `p_1 .. p_d`
/// (index 0 unused) through Newton's identities.
pub(crate) fn poly_from_power_sums(p: &[Rational], d: usize) -> Poly {
    let mut e = vec![Rational::one()];
    for k in 1..=d {
        let mut s = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / rat(k as i64));
    }
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (k, ek) in e.iter().enumerate() {
        let c = if k % 2 == 0 { ek.clone() } else { -ek };
        coeffs[d - k] = c;
    }
    Poly::from_coeffs(coeffs)
}
