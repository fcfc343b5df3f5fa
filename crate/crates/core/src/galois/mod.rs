//! Galois orbits of primes above a rational prime, and agreement of the
//! Galois-invariant dessin data along each orbit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dessin::{euler_theta_report, is_isomorphic, passport, regular_dessin, Dessin, Passport};
use crate::error::Result;
use crate::oarith::{galois_on_prime, split_prime, PrimeIdeal};
use crate::qfield::TraceField;
use crate::tri::{congruence_quotient, QuotientOptions, Signature};

/// Orbits of `Gal(K/Q)` on the primes above `ell`. Members of an orbit keep
/// the order of `split_prime`, and orbits are ordered by their first member.
pub fn orbits(field: &TraceField, ell: u64) -> Result<Vec<Vec<PrimeIdeal>>> {
    let primes = split_prime(field, ell)?;
    let group = field.galois_group()?;
    let mut orbit_of = vec![usize::MAX; primes.len()];
    let mut out: Vec<Vec<PrimeIdeal>> = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = out.len();
        for tau in group {
            let image = galois_on_prime(tau, p, &primes)?;
            let j = primes.iter().position(|x| *x == image).expect("image is listed");
            orbit_of[j] = id;
        }
        out.push(
            primes
                .iter()
                .zip(&orbit_of)
                .filter(|(_, &o)| o == id)
                .map(|(p, _)| p.clone())
                .collect(),
        );
    }
    Ok(out)
}

/// The Galois-invariant data of one congruence dessin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealRecord {
    pub group_order: usize,
    pub passport: Passport,
    pub genus: u64,
    pub cusps: u64,
    pub torsion_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub ideal: PrimeIdeal,
    pub orbit: usize,
    #[serde(flatten)]
    pub record: IdealRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub signature: Signature,
    pub ell: u64,
    pub orbits: Vec<Vec<PrimeIdeal>>,
    pub per_ideal: Vec<IdealEntry>,
    /// For each orbit, pairwise isomorphism of its members' dessins.
    pub iso_matrix: Vec<Vec<Vec<bool>>>,
    /// True iff every orbit has a single distinct record.
    pub verdict: bool,
}

impl OrbitReport {
    pub fn record(&self, p: &PrimeIdeal) -> Option<&IdealRecord> {
        self.per_ideal.iter().find(|e| e.ideal == *p).map(|e| &e.record)
    }
}

fn build(field: &TraceField, p: &PrimeIdeal, opts: QuotientOptions) -> Result<(IdealRecord, Dessin)> {
    let g = congruence_quotient(field, p, opts)?;
    let d = regular_dessin(&g);
    let report = euler_theta_report(&d, &g)?;
    let record = IdealRecord {
        group_order: g.order(),
        passport: passport(&d),
        genus: report.genus,
        cusps: report.cusps,
        torsion_free: report.torsion_free,
    };
    Ok((record, d))
}

/// Builds the dessin at every prime above `ell` and checks that the
/// Galois-invariant data agree along each orbit.
pub fn verify_theorem_c(field: &TraceField, ell: u64, opts: QuotientOptions) -> Result<OrbitReport> {
    let orbits = orbits(field, ell)?;
    let members: Vec<(usize, &PrimeIdeal)> = orbits
        .iter()
        .enumerate()
        .flat_map(|(o, ps)| ps.iter().map(move |p| (o, p)))
        .collect();
    let built = members
        .par_iter()
        .map(|&(_, p)| build(field, p, opts))
        .collect::<Result<Vec<_>>>()?;

    let mut per_ideal = Vec::new();
    let mut iso_matrix = Vec::new();
    let mut verdict = true;
    let mut start = 0;
    for (o, ps) in orbits.iter().enumerate() {
        let slice = &built[start..start + ps.len()];
        verdict &= slice.iter().all(|(r, _)| *r == slice[0].0);
        let pairs: Vec<(usize, usize)> = (0..ps.len())
            .flat_map(|i| (0..ps.len()).map(move |j| (i, j)))
            .collect();
        let flags: Vec<bool> = pairs
            .par_iter()
            .map(|&(i, j)| i == j || is_isomorphic(&slice[i].1, &slice[j].1))
            .collect();
        iso_matrix.push(flags.chunks(ps.len()).map(<[bool]>::to_vec).collect());
        for (p, (r, _)) in ps.iter().zip(slice) {
            per_ideal.push(IdealEntry {
                ideal: p.clone(),
                orbit: o,
                record: r.clone(),
            });
        }
        start += ps.len();
    }
    Ok(OrbitReport {
        signature: field.signature(),
        ell,
        orbits,
        per_ideal,
        iso_matrix,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::trace_field;
    use crate::tri::{validate_signature, Entry};

    const I: Entry = Entry::Infinite;
    const fn f(s: u64) -> Entry {
        Entry::Finite(s)
    }

    fn field(p: Entry, q: Entry, r: Entry) -> TraceField {
        trace_field(validate_signature(p, q, r).unwrap()).unwrap()
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&field(f(2), f(3), I), 5).unwrap().len(), 1);
        let k = field(f(2), f(3), f(7));
        let o = orbits(&k, 13).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), 3);
        let o = orbits(&k, 2).unwrap();
        assert_eq!((o.len(), o[0].len()), (1, 1));
    }

    #[test]
    fn orbits_partition_and_divide_the_degree() {
        for (p, q, r) in [(f(2), f(4), f(5)), (f(3), f(3), f(4)), (f(2), f(3), f(8)), (f(3), f(4), f(5))] {
            let k = field(p, q, r);
            for ell in [11u64, 19, 29, 31, 41] {
                let Ok(primes) = split_prime(&k, ell) else { continue };
                let o = orbits(&k, ell).unwrap();
                let mut all: Vec<_> = o.concat();
                all.sort();
                let mut want = primes.clone();
                want.sort();
                assert_eq!(all, want);
                for orbit in &o {
                    assert_eq!(k.degree() % orbit.len(), 0);
                    assert!(orbit.iter().all(|p| p.f == orbit[0].f));
                }
                assert_eq!(o[0][0], primes[0]);
            }
        }
    }

    #[test]
    fn modular_curve_report() {
        let r = verify_theorem_c(&field(f(2), f(3), I), 5, QuotientOptions::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.per_ideal.len(), 1);
        assert_eq!((r.per_ideal[0].record.genus, r.per_ideal[0].record.cusps), (0, 12));
        assert_eq!(r.iso_matrix, vec![vec![vec![true]]]);
    }

    #[test]
    fn hurwitz_triplet_report() {
        let r = verify_theorem_c(&field(f(2), f(3), f(7)), 13, QuotientOptions::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.orbits.len(), 1);
        for e in &r.per_ideal {
            assert_eq!(e.record.group_order, 1092);
            assert_eq!(e.record.passport.to_string(), "(2^546; 3^364; 7^156)");
            assert_eq!((e.record.genus, e.record.cusps), (14, 0));
        }
        let m = &r.iso_matrix[0];
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i == j);
            }
        }
    }

    #[test]
    fn quadratic_residue_degree_orbit() {
        let r = verify_theorem_c(&field(f(2), f(4), f(5)), 11, QuotientOptions::default()).unwrap();
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(r.orbits[0].len(), 2);
        assert!(r.orbits[0].iter().all(|p| p.f == 2));
        assert!(r.verdict);
        assert_eq!(r.per_ideal[0].record, r.per_ideal[1].record);
    }
}
