//! Permutation triples of regular dessins, their passports, genus, cusps and
//! isomorphism testing.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tri::CongruenceQuotient;

/// A transitive permutation triple on darts `0 .. n`. Permutations act on the
/// right: applying `sigma0`, then `sigma1`, then `sigma_inf` fixes every dart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dessin {
    pub n: usize,
    pub sigma0: Vec<u32>,
    pub sigma1: Vec<u32>,
    pub sigma_inf: Vec<u32>,
}

fn is_permutation(p: &[u32], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n
        && p.iter().all(|&i| {
            let i = i as usize;
            i < n && !std::mem::replace(&mut seen[i], true)
        })
}

impl Dessin {
    /// Checks that the three lists are permutations satisfying the triple
    /// relation and generating a transitive group.
    pub fn new(sigma0: Vec<u32>, sigma1: Vec<u32>, sigma_inf: Vec<u32>) -> Result<Self> {
        let n = sigma0.len();
        let d = Dessin {
            n,
            sigma0,
            sigma1,
            sigma_inf,
        };
        if n == 0 || !d.perms().iter().all(|p| is_permutation(p, n)) {
            return Err(Error::Internal("dessin data are not permutations".into()));
        }
        if !d.satisfies_triple_relation() {
            return Err(Error::Internal("dessin violates the triple relation".into()));
        }
        if !d.is_transitive() {
            return Err(Error::Internal("dessin is not transitive".into()));
        }
        Ok(d)
    }

    pub fn perms(&self) -> [&[u32]; 3] {
        [&self.sigma0, &self.sigma1, &self.sigma_inf]
    }

    pub fn satisfies_triple_relation(&self) -> bool {
        (0..self.n).all(|i| {
            let j = self.sigma0[i] as usize;
            let k = self.sigma1[j] as usize;
            self.sigma_inf[k] as usize == i
        })
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for p in [&self.sigma0, &self.sigma1] {
                let j = p[i] as usize;
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == self.n
    }

    /// Relabels darts by `phi`: dart `i` becomes `phi[i]`.
    pub fn relabel(&self, phi: &[u32]) -> Dessin {
        let conj = |p: &[u32]| {
            let mut out = vec![0; self.n];
            for (i, &j) in p.iter().enumerate() {
                out[phi[i] as usize] = phi[j as usize];
            }
            out
        };
        Dessin {
            n: self.n,
            sigma0: conj(&self.sigma0),
            sigma1: conj(&self.sigma1),
            sigma_inf: conj(&self.sigma_inf),
        }
    }
}

/// The regular dessin of a quotient: `sigma_i(h) = h * gen_i`.
pub fn regular_dessin(g: &CongruenceQuotient) -> Dessin {
    let z = g.gen_z();
    let sigma_inf = g
        .elements()
        .iter()
        .map(|h| {
            g.position(&g.mul(h, &z))
                .expect("quotient is closed under its generators") as u32
        })
        .collect();
    Dessin {
        n: g.order(),
        sigma0: g.right_action(0).to_vec(),
        sigma1: g.right_action(1).to_vec(),
        sigma_inf,
    }
}

/// Cycle lengths of a permutation with multiplicities, ascending by length.
pub fn cycle_type(p: &[u32]) -> Vec<(u64, u64)> {
    let mut seen = vec![false; p.len()];
    let mut counts = std::collections::BTreeMap::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        *counts.entry(len).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

pub fn cycle_count(p: &[u32]) -> u64 {
    cycle_type(p).iter().map(|&(_, c)| c).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passport {
    pub over0: Vec<(u64, u64)>,
    pub over1: Vec<(u64, u64)>,
    pub overinf: Vec<(u64, u64)>,
}

impl std::fmt::Display for Passport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let part = |t: &[(u64, u64)]| {
            t.iter()
                .map(|(l, c)| format!("{l}^{c}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "({}; {}; {})",
            part(&self.over0),
            part(&self.over1),
            part(&self.overinf)
        )
    }
}

pub fn passport(d: &Dessin) -> Passport {
    Passport {
        over0: cycle_type(&d.sigma0),
        over1: cycle_type(&d.sigma1),
        overinf: cycle_type(&d.sigma_inf),
    }
}

/// Genus from `2 - 2g = c0 + c1 + c_inf - n`.
pub fn genus(d: &Dessin) -> Result<u64> {
    let cycles: i64 = d.perms().iter().map(|p| cycle_count(p) as i64).sum();
    let euler = cycles - d.n as i64;
    if euler % 2 != 0 || euler > 2 {
        return Err(Error::Internal(format!(
            "Euler characteristic {euler} is not of the form 2 - 2g"
        )));
    }
    Ok(((2 - euler) / 2) as u64)
}

/// `2^(2g)`, stored as its exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaCount {
    pub log2: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerThetaReport {
    pub genus: u64,
    pub cusps: u64,
    pub chi_open: i64,
    pub theta_exists: bool,
    pub theta_degree: Option<i64>,
    pub theta_count: ThetaCount,
    pub torsion_free: bool,
}

pub fn euler_theta_report(d: &Dessin, g: &CongruenceQuotient) -> Result<EulerThetaReport> {
    let genus = genus(d)?;
    let sig = g.signature();
    let cusps = sig
        .entries()
        .iter()
        .zip(d.perms())
        .filter(|(s, _)| s.is_infinite())
        .map(|(_, p)| cycle_count(p))
        .sum();
    let chi_open = 2 - 2 * genus as i64 - cusps as i64;
    let theta_exists = cusps % 2 == 0;
    let torsion_free = sig
        .entries()
        .iter()
        .zip(g.orders())
        .all(|(s, o)| s.finite().is_none_or(|s| s == o));
    Ok(EulerThetaReport {
        genus,
        cusps,
        chi_open,
        theta_exists,
        theta_degree: theta_exists.then_some(-chi_open / 2),
        theta_count: ThetaCount { log2: 2 * genus },
        torsion_free,
    })
}

/// Compares the cycle-count genus with `2 - 2g = n (1/o_x + 1/o_y + 1/o_z - 1)`
/// for the actual generator orders.
pub fn genus_crosscheck(d: &Dessin, g: &CongruenceQuotient) -> bool {
    let n = Ratio::from_integer(d.n as i64);
    let sum: Ratio<i64> = g
        .orders()
        .iter()
        .map(|&o| Ratio::new(1, o as i64))
        .sum::<Ratio<i64>>()
        - 1;
    let euler = n * sum;
    match genus(d) {
        Ok(genus) => euler == Ratio::from_integer(2 - 2 * genus as i64),
        Err(_) => false,
    }
}

/// Whether some bijection of darts intertwines `sigma0` and `sigma1`.
pub fn is_isomorphic(a: &Dessin, b: &Dessin) -> bool {
    if a.n != b.n || passport(a) != passport(b) {
        return false;
    }
    (0..b.n).any(|t| transport(a, b, t as u32).is_some())
}

/// The unique equivariant map sending dart 0 of `a` to `t`, if one exists.
pub fn transport(a: &Dessin, b: &Dessin, t: u32) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut phi = vec![UNSET; a.n];
    let mut used = vec![false; b.n];
    phi[0] = t;
    used[t as usize] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let image = phi[i] as usize;
        for (pa, pb) in [(&a.sigma0, &b.sigma0), (&a.sigma1, &b.sigma1)] {
            let (j, target) = (pa[i] as usize, pb[image]);
            if phi[j] == UNSET {
                if std::mem::replace(&mut used[target as usize], true) {
                    return None;
                }
                phi[j] = target;
                stack.push(j);
            } else if phi[j] != target {
                return None;
            }
        }
    }
    phi.iter().all(|&x| x != UNSET).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oarith::split_prime;
    use crate::qfield::trace_field;
    use crate::tri::{congruence_quotient, validate_signature, Entry, QuotientOptions};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const I: Entry = Entry::Infinite;
    const fn f(s: u64) -> Entry {
        Entry::Finite(s)
    }

    fn quotients(p: Entry, q: Entry, r: Entry, ell: u64) -> Vec<CongruenceQuotient> {
        let k = trace_field(validate_signature(p, q, r).unwrap()).unwrap();
        split_prime(&k, ell)
            .unwrap()
            .iter()
            .map(|pr| congruence_quotient(&k, pr, QuotientOptions::default()).unwrap())
            .collect()
    }

    #[test]
    fn trivial_dessin() {
        let d = Dessin::new(vec![0], vec![0], vec![0]).unwrap();
        let p = passport(&d);
        assert_eq!(p.over0, vec![(1, 1)]);
        assert_eq!(p.overinf, vec![(1, 1)]);
        assert_eq!(genus(&d).unwrap(), 0);
        assert!(Dessin::new(vec![1, 0], vec![0, 1], vec![0, 1]).is_err());
        assert!(Dessin::new(vec![0, 1], vec![0, 1], vec![0, 1]).is_err());
    }

    #[test]
    fn modular_curve_x5() {
        let g = &quotients(f(2), f(3), I, 5)[0];
        let d = regular_dessin(g);
        assert_eq!(d.n, 60);
        assert_eq!(
            passport(&d),
            Passport {
                over0: vec![(2, 30)],
                over1: vec![(3, 20)],
                overinf: vec![(5, 12)]
            }
        );
        assert!(genus_crosscheck(&d, g));
        let r = euler_theta_report(&d, g).unwrap();
        assert_eq!(
            r,
            EulerThetaReport {
                genus: 0,
                cusps: 12,
                chi_open: -10,
                theta_exists: true,
                theta_degree: Some(5),
                theta_count: ThetaCount { log2: 0 },
                torsion_free: true,
            }
        );
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"genus":0,"cusps":12,"chi_open":-10,"theta_exists":true,"theta_degree":5,"theta_count":{"log2":0},"torsion_free":true}"#
        );
    }

    #[test]
    fn modular_curve_x7() {
        let g = &quotients(f(2), f(3), I, 7)[0];
        let d = regular_dessin(g);
        assert_eq!(d.n, 168);
        let counts: Vec<_> = d.perms().iter().map(|p| cycle_count(p)).collect();
        assert_eq!(counts, vec![84, 56, 24]);
        let r = euler_theta_report(&d, g).unwrap();
        assert_eq!((r.genus, r.cusps, r.chi_open, r.theta_degree), (3, 24, -28, Some(14)));
        assert_eq!(r.theta_count.log2, 6);
    }

    #[test]
    fn hurwitz_triplet() {
        let gs = quotients(f(2), f(3), f(7), 13);
        let ds: Vec<_> = gs.iter().map(regular_dessin).collect();
        for (d, g) in ds.iter().zip(&gs) {
            assert_eq!(d.n, 1092);
            let p = passport(d);
            assert_eq!(p.to_string(), "(2^546; 3^364; 7^156)");
            let r = euler_theta_report(d, g).unwrap();
            assert_eq!((r.genus, r.cusps, r.chi_open, r.theta_degree), (14, 0, -26, Some(13)));
            assert_eq!(r.theta_count.log2, 28);
            assert!(genus_crosscheck(d, g));
        }
        for i in 0..3 {
            assert!(is_isomorphic(&ds[i], &ds[i]));
            for j in 0..3 {
                if i != j {
                    assert!(!is_isomorphic(&ds[i], &ds[j]), "{i} ~ {j}");
                }
            }
        }
    }

    #[test]
    fn theta_bookkeeping_with_two_cusp_positions() {
        let gs = quotients(f(2), I, I, 3);
        let d = regular_dessin(&gs[0]);
        let r = euler_theta_report(&d, &gs[0]).unwrap();
        assert_eq!(r.cusps, 8);
        assert_eq!(r.chi_open, 2 - 2 * r.genus as i64 - r.cusps as i64);
        assert_eq!(r.theta_exists, r.cusps % 2 == 0);
        assert_eq!(r.theta_degree.is_some(), r.theta_exists);
    }

    #[test]
    fn isomorphism_is_an_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut pool = Vec::new();
        for (p, q, r, ell) in [(f(2), f(3), I, 5), (f(2), f(3), I, 7), (f(2), f(3), f(7), 13)] {
            for g in quotients(p, q, r, ell) {
                let d = regular_dessin(&g);
                let mut phi: Vec<u32> = (0..d.n as u32).collect();
                phi.shuffle(&mut rng);
                let copy = d.relabel(&phi);
                assert!(copy.satisfies_triple_relation() && copy.is_transitive());
                assert_eq!(transport(&d, &copy, phi[0]).unwrap(), phi);
                pool.push(d);
                pool.push(copy);
            }
        }
        assert!(pool.len() >= 6);
        let m: Vec<Vec<bool>> = pool
            .iter()
            .map(|a| pool.iter().map(|b| is_isomorphic(a, b)).collect())
            .collect();
        for i in 0..pool.len() {
            assert!(m[i][i]);
            for j in 0..pool.len() {
                assert_eq!(m[i][j], m[j][i]);
                if m[i][j] {
                    assert_eq!(passport(&pool[i]), passport(&pool[j]));
                }
                for k in 0..pool.len() {
                    if m[i][j] && m[j][k] {
                        assert!(m[i][k]);
                    }
                }
            }
        }
        // each base dessin is isomorphic to exactly its relabelled copy
        for i in (0..pool.len()).step_by(2) {
            assert_eq!(m[i].iter().filter(|&&x| x).count(), 2);
        }
    }
}
