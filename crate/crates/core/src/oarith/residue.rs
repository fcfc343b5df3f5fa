use super::fpoly::{degree, FpPoly, PrimeField};

/// `F_q = F_ell[x] / (modulus)`. Elements are coefficient vectors of length
/// exactly `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    fp: PrimeField,
    modulus: FpPoly,
}

pub type Fq = Vec<u64>;

impl ResidueField {
    /// `modulus` must be monic and irreducible over `F_ell`.
    pub fn new(ell: u64, modulus: FpPoly) -> Self {
        let fp = PrimeField::new(ell);
        debug_assert!(fp.is_irreducible(&modulus));
        ResidueField {
            fp,
            modulus: fp.monic(&modulus),
        }
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.fp
    }

    pub fn ell(&self) -> u64 {
        self.fp.ell()
    }

    pub fn degree(&self) -> usize {
        degree(&self.modulus).unwrap_or(0)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `q = ell^f`, if it fits in 64 bits.
    pub fn order(&self) -> Option<u64> {
        self.ell().checked_pow(self.degree() as u32)
    }

    fn pad(&self, mut p: FpPoly) -> Fq {
        p.resize(self.degree(), 0);
        p
    }

    pub fn zero(&self) -> Fq {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Fq {
        self.pad(self.fp.poly_rem(&[c % self.ell()], &self.modulus))
    }

    /// Reduces an arbitrary polynomial over `F_ell`.
    pub fn from_poly(&self, p: &[u64]) -> Fq {
        self.pad(self.fp.poly_rem(p, &self.modulus))
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Fq {
        a.iter().zip(b).map(|(&x, &y)| self.fp.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Fq {
        a.iter().zip(b).map(|(&x, &y)| self.fp.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Fq {
        a.iter().map(|&x| self.fp.neg(x)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Fq {
        self.pad(self.fp.poly_mulmod(a, b, &self.modulus))
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Fq {
        let mut base = a.to_vec();
        let mut acc = self.one();
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

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: &[u64]) -> Option<Fq> {
        let fp = &self.fp;
        let (mut r0, mut r1) = (self.modulus.clone(), trimmed(a));
        if r1.is_empty() {
            return None;
        }
        let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = fp.poly_div_rem(&r0, &r1);
            let s = fp.poly_sub(&s0, &fp.poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant
        let c = fp.inv(r0[0]);
        Some(self.from_poly(&fp.poly_scale(&s0, c)))
    }

    /// Index of an element in `0 .. q`: its coefficients read as base-`ell` digits.
    pub fn index_of(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.ell() + c)
    }

    pub fn from_index(&self, mut idx: u64) -> Fq {
        (0..self.degree())
            .map(|_| {
                let c = idx % self.ell();
                idx /= self.ell();
                c
            })
            .collect()
    }
}

fn trimmed(a: &[u64]) -> FpPoly {
    let mut v = a.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_arithmetic() {
        // F_9 = F_3[x]/(x^2 + 1)
        let f = ResidueField::new(3, vec![1, 0, 1]);
        assert_eq!(f.order(), Some(9));
        let x = vec![0, 1];
        assert_eq!(f.mul(&x, &x), vec![2, 0]);
        for i in 1..9 {
            let a = f.from_index(i);
            assert_eq!(f.index_of(&a), i);
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), f.one());
            assert_eq!(f.pow(&a, 8), f.one());
        }
        assert_eq!(f.inv(&f.zero()), None);
    }

    #[test]
    fn prime_residue_field() {
        let f = ResidueField::new(13, vec![10, 1]);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.from_poly(&[0, 1]), vec![3]);
        assert_eq!(f.mul(&[5], &[8]), vec![1]);
    }
}
