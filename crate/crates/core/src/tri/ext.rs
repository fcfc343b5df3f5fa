use crate::error::{Error, Result};
use crate::oarith::{Fq, ResidueField};

/// Largest supported `q^2`.
pub const MAX_EXT_ORDER: u64 = 1 << 22;

/// An element of `F_{q^2}`, encoded as `idx(a0) + q * idx(a1)` for
/// `a0 + a1 y`, where `idx` reads base-field coefficients as base-`ell`
/// digits. Base-field elements are exactly the codes below `q`.
pub type Ext = u32;

const NONE: u32 = u32::MAX;

/// The quadratic extension `F_q[y] / (y^2 + c1 y + c0)` of a residue field,
/// with log/antilog/Zech tables.
#[derive(Debug)]
pub struct ResidueExt {
    base: ResidueField,
    q: u32,
    /// `(c0, c1)` as base-field indices.
    quad: (u32, u32),
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NONE` when that sum is zero.
    zech: Vec<u32>,
}

impl ResidueExt {
    pub fn new(base: ResidueField) -> Result<Self> {
        let q = base.order().filter(|&q| q * q <= MAX_EXT_ORDER).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "residue field {}^{} too large for table arithmetic",
                base.ell(),
                base.degree()
            ))
        })?;
        let q = q as u32;
        let quad = smallest_irreducible_quadratic(&base, q);
        let slow = Slow { base: &base, q, quad };
        let size = q * q;
        let gen = (2..size)
            .find(|&c| slow.is_primitive(c, size - 1))
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(size as usize - 1);
        let mut log = vec![NONE; size as usize];
        let mut x = 1;
        for k in 0..size - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = slow.mul(x, gen);
        }
        let ell = base.ell() as u32;
        let zech = exp
            .iter()
            .map(|&c| {
                let d0 = c % ell;
                let sum = c - d0 + (d0 + 1) % ell;
                log[sum as usize]
            })
            .collect();
        Ok(ResidueExt {
            base,
            q,
            quad,
            exp,
            log,
            zech,
        })
    }

    pub fn base(&self) -> &ResidueField {
        &self.base
    }

    /// Order of the base field.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn size(&self) -> u32 {
        self.q * self.q
    }

    /// Ascending coefficients of the defining quadratic, as base-field elements.
    pub fn quad_modulus(&self) -> [Fq; 3] {
        [
            self.base.from_index(self.quad.0 as u64),
            self.base.from_index(self.quad.1 as u64),
            self.base.one(),
        ]
    }

    pub fn from_base(&self, a: &[u64]) -> Ext {
        self.base.index_of(a) as Ext
    }

    pub fn is_in_base(&self, a: Ext) -> bool {
        a < self.q
    }

    /// Components `(a0, a1)` of `a0 + a1 y`.
    pub fn components(&self, a: Ext) -> (Fq, Fq) {
        (
            self.base.from_index((a % self.q) as u64),
            self.base.from_index((a / self.q) as u64),
        )
    }

    fn period(&self) -> u32 {
        self.size() - 1
    }

    pub fn mul(&self, a: Ext, b: Ext) -> Ext {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % self.period()) as usize]
    }

    pub fn add(&self, a: Ext, b: Ext) -> Ext {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (self.log[a as usize], self.log[b as usize]);
        let k = (lb + self.period() - la) % self.period();
        match self.zech[k as usize] {
            NONE => 0,
            z => self.exp[((la + z) % self.period()) as usize],
        }
    }

    pub fn minus_one(&self) -> Ext {
        self.base.ell() as Ext - 1
    }

    pub fn neg(&self, a: Ext) -> Ext {
        self.mul(a, self.minus_one())
    }

    pub fn sub(&self, a: Ext, b: Ext) -> Ext {
        self.add(a, self.neg(b))
    }

    /// `None` for zero.
    pub fn inv(&self, a: Ext) -> Option<Ext> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.period() - l) % self.period()) as usize])
    }

    /// The smallest root of `x^2 + b x + 1`, if any.
    pub fn smallest_root_reciprocal_quadratic(&self, b: Ext) -> Option<Ext> {
        (1..self.size()).find(|&x| self.add(self.mul(x, self.add(x, b)), 1) == 0)
    }
}

/// Direct arithmetic used only to build the tables.
struct Slow<'a> {
    base: &'a ResidueField,
    q: u32,
    quad: (u32, u32),
}

impl Slow<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let f = self.base;
        let split = |c: u32| {
            (
                f.from_index((c % self.q) as u64),
                f.from_index((c / self.q) as u64),
            )
        };
        let ((a0, a1), (b0, b1)) = (split(a), split(b));
        let c0 = f.from_index(self.quad.0 as u64);
        let c1 = f.from_index(self.quad.1 as u64);
        // y^2 = -c1 y - c0
        let top = f.mul(&a1, &b1);
        let r0 = f.sub(&f.mul(&a0, &b0), &f.mul(&top, &c0));
        let mid = f.add(&f.mul(&a0, &b1), &f.mul(&a1, &b0));
        let r1 = f.sub(&mid, &f.mul(&top, &c1));
        (f.index_of(&r0) + self.q as u64 * f.index_of(&r1)) as u32
    }

    fn pow(&self, a: u32, mut e: u32) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_primitive(&self, a: u32, order: u32) -> bool {
        prime_factors(order)
            .into_iter()
            .all(|p| self.pow(a, order / p) != 1)
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First `(c0, c1)` in lexicographic order with `y^2 + c1 y + c0` rootless.
fn smallest_irreducible_quadratic(base: &ResidueField, q: u32) -> (u32, u32) {
    let elems: Vec<Fq> = (0..q as u64).map(|i| base.from_index(i)).collect();
    let squares: Vec<Fq> = elems.iter().map(|x| base.mul(x, x)).collect();
    for c0 in 1..q {
        for c1 in 0..q {
            let (a, b) = (&elems[c0 as usize], &elems[c1 as usize]);
            let has_root = elems
                .iter()
                .zip(&squares)
                .any(|(x, xx)| base.is_zero(&base.add(&base.add(xx, &base.mul(b, x)), a)));
            if !has_root {
                return (c0, c1);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}
