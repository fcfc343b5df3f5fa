use super::ext::{Ext, ResidueExt};

/// A class in `PGL_2(F_{q^2})`, stored as `[a, b, c, d]` with the first
/// nonzero entry scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMatrix([Ext; 4]);

impl ProjMatrix {
    pub const IDENTITY: ProjMatrix = ProjMatrix([1, 0, 0, 1]);

    /// Canonical representative of `[[a, b], [c, d]]`; `None` if singular.
    pub fn new(f: &ResidueExt, entries: [Ext; 4]) -> Option<Self> {
        let [a, b, c, d] = entries;
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0 {
            return None;
        }
        Some(Self::normalized(f, entries))
    }

    fn normalized(f: &ResidueExt, entries: [Ext; 4]) -> Self {
        let lead = entries.iter().copied().find(|&e| e != 0).expect("nonzero");
        if lead == 1 {
            return ProjMatrix(entries);
        }
        let s = f.inv(lead).expect("nonzero");
        ProjMatrix(entries.map(|e| f.mul(e, s)))
    }

    pub fn entries(&self) -> [Ext; 4] {
        self.0
    }

    pub fn mul(&self, f: &ResidueExt, other: &ProjMatrix) -> ProjMatrix {
        let [a, b, c, d] = self.0;
        let [e, g, h, k] = other.0;
        let dot = |x, y, z, w| f.add(f.mul(x, y), f.mul(z, w));
        Self::normalized(
            f,
            [dot(a, e, b, h), dot(a, g, b, k), dot(c, e, d, h), dot(c, g, d, k)],
        )
    }

    pub fn inverse(&self, f: &ResidueExt) -> ProjMatrix {
        let [a, b, c, d] = self.0;
        Self::normalized(f, [d, f.neg(b), f.neg(c), a])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Projective order, if at most `bound`.
    pub fn order(&self, f: &ResidueExt, bound: u64) -> Option<u64> {
        let mut x = *self;
        for k in 1..=bound {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(f, self);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oarith::ResidueField;

    fn f5() -> ResidueExt {
        ResidueExt::new(ResidueField::new(5, vec![0, 1])).unwrap()
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let f = f5();
        let m = ProjMatrix::new(&f, [2, 3, 1, 1]).unwrap();
        assert_eq!(m.entries()[0], 1);
        assert_eq!(ProjMatrix::new(&f, m.entries()).unwrap(), m);
        // scalar multiples collapse
        assert_eq!(ProjMatrix::new(&f, [4, 1, 2, 2]).unwrap(), m);
        assert!(ProjMatrix::new(&f, [1, 2, 2, 4]).is_none());
        let z = ProjMatrix::new(&f, [0, 3, 2, 0]).unwrap();
        assert_eq!(z.entries()[1], 1);
    }

    #[test]
    fn inverse_and_orders() {
        let f = f5();
        let m = ProjMatrix::new(&f, [0, 4, 1, 0]).unwrap();
        assert!(m.mul(&f, &m.inverse(&f)).is_identity());
        assert_eq!(m.order(&f, 10), Some(2));
        // [[1,1],[0,1]] is parabolic of order 5
        let t = ProjMatrix::new(&f, [1, 1, 0, 1]).unwrap();
        assert_eq!(t.order(&f, 10), Some(5));
        assert_eq!(t.order(&f, 4), None);
    }
}
