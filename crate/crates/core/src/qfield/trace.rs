//! The trace field `K = Q(cos pi/p, cos pi/q, cos pi/r)` carved out of the
//! ambient real cyclotomic field as the fixed field of a subgroup `H`.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use super::ambient::{lambda_element, poly_from_power_sums, AmbientElement, AmbientField};
use crate::error::{Error, Result};
use crate::poly::{coords_json, rat, Poly, PolyJson, Rational};
use crate::tri::{Entry, Signature};

const MAX_CANDIDATES: usize = 64;

/// Integer weights `(w_p, w_q, w_r)` of the primitive-element candidates.
fn candidate_weights(i: usize) -> [i64; 3] {
    const EXPLICIT: [[i64; 3]; 7] = [
        [0, 0, 1],
        [0, 1, 0],
        [1, 0, 0],
        [0, 1, 1],
        [1, 1, 1],
        [0, 1, 2],
        [1, 2, 4],
    ];
    if i < EXPLICIT.len() {
        EXPLICIT[i]
    } else {
        let t = (i - EXPLICIT.len() + 3) as i64;
        [1, t, t * t]
    }
}

/// An element of `K` in the power basis `1, gamma, ..., gamma^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElement {
    coords: Vec<Rational>,
}

impl KElement {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> Poly {
        Poly::from_coeffs(self.coords.clone())
    }
}

/// A field automorphism of `K`, labelled by the class `k` of
/// `(Z/2mZ)^x / {±1}` it comes from and described by the image of `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub residue: u64,
    pub image: KElement,
}

/// Pivot rows of the `D x d` matrix of `gamma` powers and the inverse of the
/// square submatrix they select.
#[derive(Debug)]
struct BasisSolver {
    pivots: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

#[derive(Debug)]
pub struct TraceField {
    signature: Signature,
    ambient: AmbientField,
    lambdas: [AmbientElement; 3],
    fixing_group: Vec<u64>,
    galois_reps: Vec<u64>,
    gamma_weights: [i64; 3],
    gamma: AmbientElement,
    /// `gamma^0 .. gamma^(d-1)`.
    gamma_powers: Vec<AmbientElement>,
    k_minpoly: Poly,
    solver: OnceLock<BasisSolver>,
    lambda_coords: OnceLock<Result<[KElement; 3]>>,
    galois: OnceLock<Result<Vec<Automorphism>>>,
}

/// Builds `K_{p,q,r}` inside `Q(2cos(pi/m))`, `m` the lcm of the finite entries.
pub fn trace_field(signature: Signature) -> Result<TraceField> {
    trace_field_in(signature, AmbientField::new(signature.level()))
}

/// Same as [`trace_field`] with an explicitly supplied ambient field.
pub fn trace_field_in(signature: Signature, ambient: AmbientField) -> Result<TraceField> {
    let m = ambient.m();
    let entries = signature.entries();
    let lambdas = [
        lambda_element(&ambient, entries[0])?,
        lambda_element(&ambient, entries[1])?,
        lambda_element(&ambient, entries[2])?,
    ];
    // cos-table index of each lambda; None for the constant 2 of a cusp
    let lambda_index: [Option<u64>; 3] = entries.map(|e| e.finite().map(|s| m / s));
    let conjugate_lambda = |k: u64, i: usize| -> AmbientElement {
        match lambda_index[i] {
            Some(j) => ambient.cos_multiple(k * j).clone(),
            None => lambdas[i].clone(),
        }
    };

    let classes = ambient.unit_classes();
    let fixing_group: Vec<u64> = classes
        .iter()
        .copied()
        .filter(|&k| (0..3).all(|i| conjugate_lambda(k, i) == lambdas[i]))
        .collect();
    if classes.len() % fixing_group.len() != 0 {
        return Err(Error::Internal("fixing group order does not divide the class count".into()));
    }
    let d = classes.len() / fixing_group.len();

    let mut galois_reps = Vec::with_capacity(d);
    let mut covered = std::collections::BTreeSet::new();
    for &k in &classes {
        if covered.contains(&k) {
            continue;
        }
        galois_reps.push(k);
        covered.extend(fixing_group.iter().map(|&h| ambient.class_mul(k, h)));
    }
    if galois_reps.len() != d {
        return Err(Error::Internal("fixing group is not a subgroup".into()));
    }

    let combine = |w: [i64; 3], k: u64| -> AmbientElement {
        (0..3).fold(ambient.zero(), |acc, i| {
            if w[i] == 0 {
                acc
            } else {
                ambient.add(&acc, &ambient.scale(&conjugate_lambda(k, i), &rat(w[i])))
            }
        })
    };

    let (gamma_weights, gamma) = if d == 1 {
        ([0, 0, 0], ambient.zero())
    } else {
        let mut found = None;
        for i in 0..MAX_CANDIDATES {
            let w = candidate_weights(i);
            let conjugates: Vec<AmbientElement> =
                galois_reps.iter().map(|&k| combine(w, k)).collect();
            let distinct = conjugates
                .iter()
                .enumerate()
                .all(|(a, x)| conjugates[a + 1..].iter().all(|y| x != y));
            if distinct {
                found = Some((w, conjugates[0].clone()));
                break;
            }
        }
        found.ok_or_else(|| {
            Error::Internal(format!(
                "no primitive element among {MAX_CANDIDATES} candidates"
            ))
        })?
    };

    let (gamma_powers, k_minpoly) = if d == 1 {
        (vec![ambient.from_rational(Rational::one())], Poly::x())
    } else {
        let mut powers = vec![ambient.from_rational(Rational::one())];
        for _ in 0..d {
            let next = ambient.mul(powers.last().expect("nonempty"), &gamma);
            powers.push(next);
        }
        // Newton's identities on Tr_{K/Q}(gamma^j) = Tr_{L/Q}(gamma^j) / |H|
        let h = rat(fixing_group.len() as i64);
        let sums: Vec<Rational> = powers.iter().map(|g| ambient.trace(g) / &h).collect();
        let minpoly = poly_from_power_sums(&sums, d);
        let residual = minpoly
            .coeffs()
            .iter()
            .zip(&powers)
            .fold(ambient.zero(), |acc, (c, g)| ambient.add(&acc, &ambient.scale(g, c)));
        if !residual.is_zero() {
            return Err(Error::Internal(
                "minimal polynomial of gamma does not vanish at gamma".into(),
            ));
        }
        if !minpoly.is_monic() || !minpoly.is_integral() {
            return Err(Error::Internal(format!(
                "minimal polynomial {minpoly} is not a monic integer polynomial"
            )));
        }
        powers.truncate(d);
        (powers, minpoly)
    };

    Ok(TraceField {
        signature,
        ambient,
        lambdas,
        fixing_group,
        galois_reps,
        gamma_weights,
        gamma,
        gamma_powers,
        k_minpoly,
        solver: OnceLock::new(),
        lambda_coords: OnceLock::new(),
        galois: OnceLock::new(),
    })
}

impl TraceField {
    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn ambient(&self) -> &AmbientField {
        &self.ambient
    }

    pub fn degree(&self) -> usize {
        self.galois_reps.len()
    }

    pub fn gamma(&self) -> &AmbientElement {
        &self.gamma
    }

    /// Weights `(w_p, w_q, w_r)` with `gamma = w_p λ_p + w_q λ_q + w_r λ_r`.
    pub fn gamma_weights(&self) -> [i64; 3] {
        self.gamma_weights
    }

    pub fn k_minpoly(&self) -> &Poly {
        &self.k_minpoly
    }

    pub fn fixing_group(&self) -> &[u64] {
        &self.fixing_group
    }

    pub fn galois_reps(&self) -> &[u64] {
        &self.galois_reps
    }

    /// `2cos(pi/s)` for the signature entry at `position` (0, 1, 2).
    pub fn lambda(&self, position: usize) -> &AmbientElement {
        &self.lambdas[position]
    }

    /// The conjugate `sigma_k(gamma)` in the ambient field.
    pub fn conjugate_of_gamma(&self, k: u64) -> AmbientElement {
        let m = self.ambient.m();
        let entries = self.signature.entries();
        (0..3).fold(self.ambient.zero(), |acc, i| {
            let w = self.gamma_weights[i];
            if w == 0 {
                return acc;
            }
            let term = match entries[i] {
                Entry::Finite(s) => self.ambient.cos_multiple(k * (m / s)).clone(),
                Entry::Infinite => self.lambdas[i].clone(),
            };
            self.ambient.add(&acc, &self.ambient.scale(&term, &rat(w)))
        })
    }

    /// The representative in `galois_reps` of the coset `k H`.
    pub fn coset_rep(&self, k: u64) -> u64 {
        let k = self.ambient.fold_index(k);
        self.galois_reps
            .iter()
            .copied()
            .find(|&r| {
                self.fixing_group
                    .iter()
                    .any(|&h| self.ambient.class_mul(r, h) == k)
            })
            .expect("every unit class lies in some coset")
    }

    // ---- arithmetic in K ----

    pub fn k_zero(&self) -> KElement {
        KElement {
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn k_from_rational(&self, c: Rational) -> KElement {
        let mut e = self.k_zero();
        e.coords[0] = c;
        e
    }

    pub fn k_one(&self) -> KElement {
        self.k_from_rational(Rational::one())
    }

    /// `gamma` itself; for `K = Q` the chosen primitive element is 0.
    pub fn k_gamma(&self) -> KElement {
        self.k_from_poly(&Poly::x())
    }

    pub fn k_from_coords(&self, coords: Vec<Rational>) -> Result<KElement> {
        if coords.len() != self.degree() {
            return Err(Error::Internal(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(KElement { coords })
    }

    pub fn k_from_poly(&self, p: &Poly) -> KElement {
        let r = p.rem(&self.k_minpoly).expect("k_minpoly is nonzero");
        let mut e = self.k_zero();
        for (i, c) in r.coeffs().iter().enumerate() {
            e.coords[i] = c.clone();
        }
        e
    }

    pub fn k_add(&self, a: &KElement, b: &KElement) -> KElement {
        KElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn k_sub(&self, a: &KElement, b: &KElement) -> KElement {
        KElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn k_mul(&self, a: &KElement, b: &KElement) -> KElement {
        self.k_from_poly(&(&a.as_poly() * &b.as_poly()))
    }

    /// Evaluates a rational polynomial at an element of `K`.
    pub fn k_eval(&self, p: &Poly, at: &KElement) -> KElement {
        p.coeffs().iter().rev().fold(self.k_zero(), |acc, c| {
            let mut t = self.k_mul(&acc, at);
            t.coords[0] += c;
            t
        })
    }

    /// The inclusion `K -> L` into the ambient field.
    pub fn include(&self, a: &KElement) -> AmbientElement {
        a.coords
            .iter()
            .zip(&self.gamma_powers)
            .fold(self.ambient.zero(), |acc, (c, g)| {
                if c.is_zero() {
                    acc
                } else {
                    self.ambient.add(&acc, &self.ambient.scale(g, c))
                }
            })
    }

    fn solver(&self) -> &BasisSolver {
        self.solver
            .get_or_init(|| BasisSolver::new(&self.gamma_powers, self.ambient.degree()))
    }

    /// Writes an `H`-fixed ambient element in the basis of `gamma` powers.
    pub fn to_k_coordinates(&self, x: &AmbientElement) -> Result<KElement> {
        for &h in &self.fixing_group {
            if h != 1 && self.ambient.sigma(h, x) != *x {
                return Err(Error::NotInSubfield);
            }
        }
        self.solve_unchecked(x)
    }

    fn solve_unchecked(&self, x: &AmbientElement) -> Result<KElement> {
        let solver = self.solver();
        if solver.pivots.len() != self.degree() {
            return Err(Error::Internal(
                "powers of gamma are linearly dependent".into(),
            ));
        }
        let rhs: Vec<&Rational> = solver.pivots.iter().map(|&r| &x.coords()[r]).collect();
        let coords: Vec<Rational> = solver
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * *b)
            })
            .collect();
        let k = KElement { coords };
        if self.include(&k) != *x {
            return Err(Error::NotInSubfield);
        }
        Ok(k)
    }

    /// Gamma-coordinates of `2cos(pi/p)`, `2cos(pi/q)`, `2cos(pi/r)`.
    pub fn lambda_coordinates(&self) -> Result<&[KElement; 3]> {
        self.lambda_coords
            .get_or_init(|| {
                Ok([
                    self.solve_unchecked(&self.lambdas[0])?,
                    self.solve_unchecked(&self.lambdas[1])?,
                    self.solve_unchecked(&self.lambdas[2])?,
                ])
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `Gal(K/Q)` as `(Z/2mZ)^x / {±1}` modulo `H`, identity first.
    pub fn galois_group(&self) -> Result<&[Automorphism]> {
        self.galois
            .get_or_init(|| {
                self.galois_reps
                    .iter()
                    .map(|&k| {
                        let image = if self.degree() == 1 {
                            self.k_zero()
                        } else {
                            self.solve_unchecked(&self.conjugate_of_gamma(k))?
                        };
                        Ok(Automorphism { residue: k, image })
                    })
                    .collect()
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `tau(a)`: substitutes `tau(gamma)` into the gamma-polynomial of `a`.
    pub fn apply(&self, tau: &Automorphism, a: &KElement) -> KElement {
        self.k_eval(&a.as_poly(), &tau.image)
    }

    /// The automorphism `a ∘ b`.
    pub fn compose(&self, a: &Automorphism, b: &Automorphism) -> Automorphism {
        Automorphism {
            residue: self.coset_rep(self.ambient.class_mul(a.residue, b.residue)),
            image: self.apply(a, &b.image),
        }
    }

    pub fn automorphism_order(&self, tau: &Automorphism) -> usize {
        let gamma = self.k_gamma();
        let mut cur = tau.image.clone();
        let mut order = 1;
        while cur != gamma {
            cur = self.apply(tau, &cur);
            order += 1;
            assert!(order <= self.degree(), "automorphism order exceeds field degree");
        }
        order
    }

    pub fn to_json(&self) -> Result<FieldJson> {
        let group = self.galois_group()?;
        Ok(FieldJson {
            signature: self.signature,
            m: self.ambient.m(),
            psi_minpoly: self.ambient.psi_minpoly().into(),
            k_minpoly: (&self.k_minpoly).into(),
            gamma: coords_json(self.gamma.coords()),
            degree: self.degree(),
            gamma_weights: self.gamma_weights,
            fixing_group: self.fixing_group.clone(),
            galois_reps: self.galois_reps.clone(),
            galois_order: group.len(),
            galois_element_orders: group.iter().map(|t| self.automorphism_order(t)).collect(),
        })
    }
}

impl BasisSolver {
    fn new(columns: &[AmbientElement], rows: usize) -> Self {
        let d = columns.len();
        let entry = |r: usize, c: usize| columns[c].coords()[r].clone();
        // greedy choice of independent rows, reducing each against the echelon basis
        let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
        let mut pivots = Vec::new();
        for r in 0..rows {
            if pivots.len() == d {
                break;
            }
            let mut v: Vec<Rational> = (0..d).map(|c| entry(r, c)).collect();
            for (pc, b) in &basis {
                if !v[*pc].is_zero() {
                    let f = v[*pc].clone() / &b[*pc];
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
                basis.push((pc, v));
                pivots.push(r);
            }
        }
        let inverse = if pivots.len() == d {
            let square: Vec<Vec<Rational>> = pivots
                .iter()
                .map(|&r| (0..d).map(|c| entry(r, c)).collect())
                .collect();
            invert(square).unwrap_or_default()
        } else {
            Vec::new()
        };
        if inverse.is_empty() {
            pivots.clear();
        }
        BasisSolver { pivots, inverse }
    }
}

/// Gauss-Jordan inverse of a square rational matrix.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &f;
        }
        for x in inv[col].iter_mut() {
            *x *= &f;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let g = a[r][col].clone();
            let (prow, pinv) = (a[col].clone(), inv[col].clone());
            for (x, y) in a[r].iter_mut().zip(&prow) {
                *x -= &g * y;
            }
            for (x, y) in inv[r].iter_mut().zip(&pinv) {
                *x -= &g * y;
            }
        }
    }
    Some(inv)
}

/// Wire format of a trace field.
#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    pub signature: Signature,
    pub m: u64,
    pub psi_minpoly: PolyJson,
    pub k_minpoly: PolyJson,
    pub gamma: PolyJson,
    pub degree: usize,
    pub gamma_weights: [i64; 3],
    pub fixing_group: Vec<u64>,
    pub galois_reps: Vec<u64>,
    pub galois_order: usize,
    pub galois_element_orders: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::{validate_signature, Entry::Finite as F, Entry::Infinite as I};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: Entry, q: Entry, r: Entry) -> TraceField {
        trace_field(validate_signature(p, q, r).unwrap()).unwrap()
    }

    /// Oracle: `prod (x - sigma_k(gamma))` multiplied out in the ambient field.
    fn product_of_conjugates(k: &TraceField) -> Poly {
        let amb = k.ambient();
        let mut coeffs = vec![amb.from_rational(Rational::one())];
        for &r in k.galois_reps() {
            let root = k.conjugate_of_gamma(r);
            let mut next = vec![amb.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = amb.add(&next[i + 1], c);
                next[i] = amb.sub(&next[i], &amb.mul(c, &root));
            }
            coeffs = next;
        }
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|c| c.as_rational().expect("symmetric functions are rational"))
                .collect(),
        )
    }

    #[test]
    fn known_trace_fields() {
        let k = field(F(2), F(3), I);
        assert_eq!(k.degree(), 1);
        assert_eq!(k.k_minpoly(), &Poly::x());
        assert!(k.gamma().is_zero());

        let k = field(F(2), F(3), F(7));
        assert_eq!(k.degree(), 3);
        assert_eq!(k.k_minpoly(), &Poly::from_ints(&[1, -2, -1, 1]));
        assert_eq!(k.gamma(), k.lambda(2));
        assert!((k.ambient().numeric(k.gamma()) - 2.0 * (std::f64::consts::PI / 7.0).cos()).abs() < 1e-10);

        let k = field(F(2), F(4), F(5));
        assert_eq!(k.degree(), 4);

        let k = field(F(3), F(3), F(4));
        assert_eq!(k.degree(), 2);
        assert_eq!(k.k_minpoly(), &Poly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn newton_route_matches_conjugate_product() {
        for (p, q, r) in [
            (F(2), F(3), F(7)),
            (F(2), F(4), F(5)),
            (F(3), F(3), F(4)),
            (F(2), F(5), F(5)),
            (F(3), F(4), F(5)),
            (F(2), F(3), F(11)),
            (I, F(5), F(8)),
        ] {
            let k = field(p, q, r);
            let expected = product_of_conjugates(&k);
            assert_eq!(k.k_minpoly(), &expected, "{}", k.signature());
            for &rep in k.galois_reps() {
                let x = k.ambient().numeric(&k.conjugate_of_gamma(rep));
                assert!(k.k_minpoly().eval_f64(x).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn k_minpoly_monic_integral_for_small_signatures() {
        let entries: Vec<Entry> = (2..=12).map(F).chain([I]).collect();
        let mut count = 0;
        for (i, &p) in entries.iter().enumerate() {
            for (j, &q) in entries.iter().enumerate().skip(i) {
                for &r in entries.iter().skip(j) {
                    let Ok(sig) = validate_signature(p, q, r) else { continue };
                    let k = trace_field(sig).unwrap();
                    assert!(k.k_minpoly().is_monic() && k.k_minpoly().is_integral(), "{sig}");
                    assert_eq!(k.k_minpoly().degree(), Some(k.degree()));
                    count += 1;
                }
            }
        }
        assert!(count > 300);
    }

    #[test]
    fn galois_group_is_a_group() {
        for (p, q, r, order) in [
            (F(2), F(3), I, 1),
            (F(2), F(3), F(7), 3),
            (F(2), F(4), F(5), 4),
            (F(3), F(5), F(9), 6),
        ] {
            let k = field(p, q, r);
            let g = k.galois_group().unwrap();
            assert_eq!(g.len(), order);
            assert_eq!(g[0].image, k.k_gamma());
            assert_eq!(g[0].residue, 1);
            for a in g {
                assert_eq!(order % k.automorphism_order(a), 0);
                for b in g {
                    let c = k.compose(a, b);
                    assert!(g.contains(&c), "not closed under composition");
                }
                // images are roots of k_minpoly
                let root = k.include(&a.image);
                let value = k.k_minpoly().coeffs().iter().rev().fold(k.ambient().zero(), |acc, c| {
                    let t = k.ambient().mul(&acc, &root);
                    k.ambient().add(&t, &k.ambient().from_rational(c.clone()))
                });
                assert!(value.is_zero());
            }
            let images: std::collections::HashSet<_> = g.iter().map(|t| t.image.clone()).collect();
            assert_eq!(images.len(), order);
        }
        let k = field(F(2), F(3), F(7));
        let g = k.galois_group().unwrap();
        assert!(g[1..].iter().all(|t| k.automorphism_order(t) == 3));
        let k = field(F(2), F(4), F(5));
        let g = k.galois_group().unwrap();
        assert!(g[1..].iter().all(|t| k.automorphism_order(t) == 2));
    }

    #[test]
    fn coordinates_of_small_elements() {
        let k = field(F(2), F(3), F(7));
        let c = k.to_k_coordinates(k.gamma()).unwrap();
        assert_eq!(c.coords(), &[rat(0), rat(1), rat(0)]);
        assert_eq!(k.to_k_coordinates(k.lambda(0)).unwrap(), k.k_zero());
        assert_eq!(k.to_k_coordinates(k.lambda(1)).unwrap(), k.k_one());
        // 2cos(pi/42) generates the whole ambient field, not K
        let psi = k.ambient().cos_multiple(1).clone();
        assert_eq!(k.to_k_coordinates(&psi), Err(Error::NotInSubfield));
    }

    #[test]
    fn coordinates_invert_inclusion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, q, r) in [(F(2), F(3), F(7)), (F(2), F(4), F(5)), (F(3), F(3), F(4)), (F(2), F(3), I)] {
            let k = field(p, q, r);
            for _ in 0..50 {
                let coords = (0..k.degree())
                    .map(|_| Rational::new(rng.gen_range(-50i64..50).into(), rng.gen_range(1i64..9).into()))
                    .collect();
                let a = k.k_from_coords(coords).unwrap();
                assert_eq!(k.to_k_coordinates(&k.include(&a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn inclusion_is_a_ring_map() {
        let k = field(F(2), F(4), F(5));
        let a = k.k_from_poly(&Poly::from_ints(&[1, -3, 2]));
        let b = k.k_from_poly(&Poly::from_ints(&[0, 5, 0, 1]));
        let amb = k.ambient();
        assert_eq!(k.include(&k.k_mul(&a, &b)), amb.mul(&k.include(&a), &k.include(&b)));
        assert_eq!(k.include(&k.k_add(&a, &b)), amb.add(&k.include(&a), &k.include(&b)));
    }

    #[test]
    fn json_records_gamma() {
        let k = field(F(2), F(3), F(7));
        let j = serde_json::to_value(k.to_json().unwrap()).unwrap();
        assert_eq!(j["degree"], 3);
        assert_eq!(j["m"], 42);
        assert_eq!(j["k_minpoly"]["num"], serde_json::json!(["1", "-2", "-1", "1"]));
        assert_eq!(j["k_minpoly"]["den"], "1");
        assert_eq!(j["gamma"]["num"].as_array().unwrap().len(), 12);
        assert_eq!(j["galois_element_orders"], serde_json::json!([1, 3, 3]));
    }
}
