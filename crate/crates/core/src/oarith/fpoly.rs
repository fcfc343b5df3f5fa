//! Dense polynomials over a prime field `F_ell`, with distinct-degree and
//! equal-degree factorization of squarefree polynomials.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Arithmetic modulo a rational prime `ell < 2^32`. Polynomials are ascending
/// coefficient vectors without trailing zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    ell: u64,
}

pub type FpPoly = Vec<u64>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn trim(mut p: FpPoly) -> FpPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn degree(p: &[u64]) -> Option<usize> {
    p.len().checked_sub(1)
}

impl PrimeField {
    pub fn new(ell: u64) -> Self {
        assert!(is_prime(ell) && ell < (1 << 32), "{ell} is not a supported prime");
        PrimeField { ell }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.ell
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.ell - b) % self.ell
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.ell - a) % self.ell
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.ell as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.ell;
        a %= self.ell;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.ell != 0, "inverse of zero");
        self.pow(a, self.ell - 2)
    }

    /// Reduces a signed integer.
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.ell as i64) as u64
    }

    // ---- polynomials ----

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> FpPoly {
        trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let ell = self.ell as u128;
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % ell;
            }
        }
        trim(out.into_iter().map(|c| c as u64).collect())
    }

    pub fn poly_div_rem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        let db = degree(b).expect("division by the zero polynomial");
        let inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), trim(rem));
        }
        let mut quot = vec![0; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.mul(rem[i + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                rem[i + j] = self.sub(rem[i + j], self.mul(c, y));
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.poly_div_rem(a, b).1
    }

    pub fn poly_mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> FpPoly {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lead) => self.poly_scale(a, self.inv(lead)),
        }
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.ell))
                .collect(),
        )
    }

    pub fn poly_powmod(&self, base: &[u64], exp: &BigUint, m: &[u64]) -> FpPoly {
        let mut acc = self.poly_rem(&[1], m);
        let base = self.poly_rem(base, m);
        for i in (0..exp.bits()).rev() {
            acc = self.poly_mulmod(&acc, &acc, m);
            if exp.bit(i) {
                acc = self.poly_mulmod(&acc, &base, m);
            }
        }
        acc
    }

    /// Evaluates `outer(inner(x))` modulo `m`.
    pub fn compose_mod(&self, outer: &[u64], inner: &[u64], m: &[u64]) -> FpPoly {
        outer.iter().rev().fold(Vec::new(), |acc, &c| {
            let t = self.poly_mulmod(&acc, inner, m);
            self.poly_rem(&self.poly_add(&t, &[c]), m)
        })
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        degree(self.poly_gcd(f, &self.derivative(f)).as_slice()) == Some(0)
    }

    fn frobenius_power(&self, times: usize) -> BigUint {
        BigUint::from(self.ell).pow(times as u32)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let Some(n) = degree(f) else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic(f);
        let x = vec![0, 1];
        let x_to = |k: usize| self.poly_powmod(&x, &self.frobenius_power(k), &f);
        if !self.poly_sub(&x_to(n), &self.poly_rem(&x, &f)).is_empty() {
            return false;
        }
        let mut primes = Vec::new();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        primes.into_iter().all(|p| {
            let h = self.poly_sub(&x_to(n / p), &x);
            degree(&self.poly_gcd(&f, &h)) == Some(0)
        })
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted by
    /// degree and then by ascending coefficient vector.
    pub fn factor_squarefree(&self, f: &[u64]) -> Vec<FpPoly> {
        let f = self.monic(f);
        let mut rng = ChaCha8Rng::from_seed(seed_for(self.ell, &f));
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree(&f) {
            self.equal_degree(&g, d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(usize, FpPoly)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0, 1];
        let ell = BigUint::from(self.ell);
        let mut h = self.poly_rem(&x, &rest);
        let mut i = 0;
        while degree(&rest).unwrap_or(0) >= 2 * (i + 1) {
            i += 1;
            h = self.poly_powmod(&h, &ell, &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if degree(&g).unwrap_or(0) > 0 {
                rest = self.poly_div_rem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((i, g));
            }
        }
        if degree(&rest).unwrap_or(0) > 0 {
            let d = degree(&rest).unwrap();
            out.push((d, self.monic(&rest)));
        }
        out
    }

    fn equal_degree(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = degree(g).unwrap_or(0);
        if n == 0 {
            return;
        }
        if n == d {
            out.push(self.monic(g));
            return;
        }
        let half = (self.frobenius_power(d) - BigUint::one()) >> 1;
        loop {
            let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..self.ell)).collect());
            if degree(&a).unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.ell == 2 {
                // absolute trace a + a^2 + ... + a^(2^(d-1))
                let mut t = self.poly_rem(&a, g);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = self.poly_mulmod(&t, &t, g);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                self.poly_sub(&self.poly_powmod(&a, &half, g), &[1])
            };
            let h = self.poly_gcd(g, &b);
            let dh = degree(&h).unwrap_or(0);
            if dh > 0 && dh < n {
                let other = self.poly_div_rem(g, &h).0;
                self.equal_degree(&h, d, rng, out);
                self.equal_degree(&other, d, rng, out);
                return;
            }
        }
    }
}

/// Seed derived from the prime and the coefficients, so factor discovery is
/// reproducible.
fn seed_for(ell: u64, f: &[u64]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(ell.to_le_bytes());
    for c in f {
        h.update(c.to_le_bytes());
    }
    h.finalize().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Oracle: all monic irreducible factors found by trial division with
    /// every monic polynomial of bounded degree.
    fn brute_factor(fp: &PrimeField, f: &[u64]) -> Vec<FpPoly> {
        let ell = fp.ell();
        let mut rest = fp.monic(f);
        let mut out = Vec::new();
        let mut deg = 1;
        while degree(&rest).unwrap_or(0) > 0 {
            let count = ell.pow(deg as u32);
            let mut found = false;
            for code in 0..count {
                let mut cand: FpPoly = (0..deg).map(|i| (code / ell.pow(i as u32)) % ell).collect();
                cand.push(1);
                let (q, r) = fp.poly_div_rem(&rest, &cand);
                if r.is_empty() {
                    out.push(cand);
                    rest = q;
                    found = true;
                    break;
                }
            }
            if !found {
                deg += 1;
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn hurwitz_cubic_mod_13_and_2() {
        let f13 = PrimeField::new(13);
        let cubic: FpPoly = [1i64, -2, -1, 1].iter().map(|&c| f13.from_i64(c)).collect();
        let factors = f13.factor_squarefree(&cubic);
        assert_eq!(factors, vec![vec![7, 1], vec![8, 1], vec![10, 1]]);
        let f2 = PrimeField::new(2);
        let cubic2: FpPoly = [1i64, -2, -1, 1].iter().map(|&c| f2.from_i64(c)).collect();
        assert_eq!(cubic2, vec![1, 0, 1, 1]);
        assert!(f2.is_irreducible(&cubic2));
        assert_eq!(f2.factor_squarefree(&cubic2), vec![cubic2]);
    }

    #[test]
    fn irreducibility() {
        let f = PrimeField::new(5);
        assert!(f.is_irreducible(&[2, 0, 1])); // x^2 + 2, 3 is not a square mod 5
        assert!(!f.is_irreducible(&[1, 0, 1])); // x^2 + 1 = (x-2)(x-3)
        assert!(!f.is_irreducible(&[0, 0, 1]));
        let f2 = PrimeField::new(2);
        assert!(f2.is_irreducible(&[1, 1, 1]));
        assert!(f2.is_irreducible(&[1, 1, 0, 0, 1]));
        assert!(!f2.is_irreducible(&[1, 0, 1]));
    }

    #[test]
    fn deterministic_across_calls() {
        let f = PrimeField::new(101);
        let poly: FpPoly = vec![3, 1, 4, 1, 5, 9, 2, 6, 1];
        if f.is_squarefree(&poly) {
            assert_eq!(f.factor_squarefree(&poly), f.factor_squarefree(&poly));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn factorization_matches_brute_force(
            ell in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
            coeffs in prop::collection::vec(0u64..1000, 1..7),
        ) {
            let fp = PrimeField::new(ell);
            let mut f: FpPoly = coeffs.iter().map(|c| c % ell).collect();
            f.push(1);
            prop_assume!(fp.is_squarefree(&f));
            let factors = fp.factor_squarefree(&f);
            prop_assert_eq!(&factors, &brute_factor(&fp, &f));
            for g in &factors {
                prop_assert!(fp.is_irreducible(g));
            }
        }
    }
}
