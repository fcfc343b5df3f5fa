//! The acceptance checks, shared by the `selftest` command and the
//! acceptance test target.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::dessin::{
    cycle_type, euler_theta_report, genus, genus_crosscheck, is_isomorphic, passport,
    regular_dessin, Dessin, Passport,
};
use crate::galois::{orbits, verify_theorem_c};
use crate::oarith::{galois_on_prime, irregularity, reduce, split_prime, PrimeIdeal};
use crate::poly::{Poly, Rational};
use crate::qfield::{dickson, Automorphism, trace_field, trace_field_in, AmbientField, TraceField};
use crate::tri::{
    congruence_quotient, congruence_quotient_with_sign, validate_signature, CongruenceQuotient,
    Entry, QuotientOptions, Signature, TraceSign,
};

/// Whether to run against correct tables or a deliberately corrupted one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Normal,
    /// Every ambient field gets a wrong minimal polynomial.
    CorruptMinpoly,
}

impl Mode {
    pub fn from_fault_flag(fault: bool) -> Self {
        if fault {
            Mode::CorruptMinpoly
        } else {
            Mode::Normal
        }
    }

    fn field(self, sig: Signature) -> crate::Result<TraceField> {
        match self {
            Mode::Normal => trace_field(sig),
            Mode::CorruptMinpoly => {
                let good = AmbientField::new(sig.level());
                let bad = good.psi_minpoly() + &Poly::one();
                trace_field_in(sig, AmbientField::with_minpoly(sig.level(), bad))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub limit: Duration,
    pub elapsed: Duration,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    /// Deterministic: elapsed time is not printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {} (limit {} s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

const I: Entry = Entry::Infinite;
const fn f(s: u64) -> Entry {
    Entry::Finite(s)
}

fn sig(p: Entry, q: Entry, r: Entry) -> Signature {
    validate_signature(p, q, r).expect("hyperbolic")
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    run: fn(Mode) -> Check,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, run| Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
        run,
    };
    vec![
        c(1, "trace-field table", 1, trace_field_table as fn(Mode) -> Check),
        c(2, "prime splitting in K(2,3,7)", 1, splitting),
        c(3, "modular classics X(5), X(7)", 10, modular_classics),
        c(4, "Hurwitz triplet over 13", 60, hurwitz_triplet),
        c(5, "property suites", 120, property_suites),
        c(6, "determinism of dessin output", 60, determinism),
    ]
}

pub fn run_criterion(c: &Criterion, mode: Mode) -> CriterionResult {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(mode)))
        .unwrap_or_else(|_| Err("panicked".to_string()));
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(_) if elapsed > c.limit => (false, format!("exceeded the {} s limit", c.limit.as_secs())),
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    CriterionResult {
        id: c.id,
        name: c.name,
        passed,
        limit: c.limit,
        elapsed,
        detail,
    }
}

pub fn run_all(mode: Mode) -> Vec<CriterionResult> {
    criteria().iter().map(|c| run_criterion(c, mode)).collect()
}

/// Numeric conjugates of gamma computed directly from cosines.
fn numeric_conjugates(k: &TraceField) -> Vec<f64> {
    let w = k.gamma_weights();
    k.galois_reps()
        .iter()
        .map(|&c| {
            k.signature()
                .entries()
                .iter()
                .zip(w)
                .map(|(s, w)| {
                    let v = match s {
                        Entry::Finite(s) => 2.0 * (c as f64 * std::f64::consts::PI / *s as f64).cos(),
                        Entry::Infinite => 2.0,
                    };
                    w as f64 * v
                })
                .sum()
        })
        .collect()
}

fn trace_field_table(mode: Mode) -> Check {
    let table = [
        (sig(f(2), f(3), I), 1),
        (sig(f(3), f(3), f(4)), 2),
        (sig(f(2), f(3), f(7)), 3),
        (sig(f(2), f(4), f(5)), 4),
    ];
    let mut worst: f64 = 0.0;
    for (s, d) in table {
        let k = mode.field(s).map_err(err)?;
        ensure(k.degree() == d, || format!("{s}: degree {} expected {d}", k.degree()))?;
        let roots = numeric_conjugates(&k);
        for (i, x) in roots.iter().enumerate() {
            let v = k.k_minpoly().eval_f64(*x).abs();
            worst = worst.max(v);
            ensure(v <= 1e-10, || format!("{s}: |minpoly(root {i})| = {v:e}"))?;
            ensure(roots[..i].iter().all(|y| (x - y).abs() > 1e-6), || {
                format!("{s}: conjugates of gamma coincide")
            })?;
        }
    }
    let k = mode.field(sig(f(2), f(3), f(7))).map_err(err)?;
    let want = Poly::from_ints(&[1, -2, -1, 1]);
    ensure(*k.k_minpoly() == want, || {
        format!("(2, 3, 7): minimal polynomial {} expected {want}", k.k_minpoly())
    })?;
    Ok(format!(
        "degrees 1, 2, 3, 4; K(2,3,7) = Q[x]/({want}); numeric residual <= {worst:.1e}"
    ))
}

fn splitting(mode: Mode) -> Check {
    let k = mode.field(sig(f(2), f(3), f(7))).map_err(err)?;
    let ps = split_prime(&k, 13).map_err(err)?;
    // brute-force root search of the cubic mod 13
    let roots: Vec<u64> = (0..13i64)
        .filter(|&x| (x * x * x - x * x - 2 * x + 1).rem_euclid(13) == 0)
        .map(|x| x as u64)
        .collect();
    ensure(roots == [3, 5, 6], || format!("cubic has roots {roots:?} mod 13"))?;
    let mut got: Vec<u64> = ps
        .iter()
        .map(|p| if p.f == 1 && p.g[1] == 1 { (13 - p.g[0]) % 13 } else { u64::MAX })
        .collect();
    got.sort();
    ensure(got == roots, || format!("primes above 13 are {ps:?}"))?;
    let two = split_prime(&k, 2).map_err(err)?;
    ensure(two.len() == 1 && two[0].f == 3, || format!("primes above 2 are {two:?}"))?;
    Ok("13 = (13, x-3)(13, x-5)(13, x-6); 2 inert with f = 3".into())
}

struct Built {
    g: CongruenceQuotient,
    d: Dessin,
}

fn build(k: &TraceField, p: &PrimeIdeal) -> std::result::Result<Built, String> {
    let g = congruence_quotient(k, p, QuotientOptions::default()).map_err(err)?;
    let d = regular_dessin(&g);
    Ok(Built { g, d })
}

fn pp(a: &[(u64, u64)], b: &[(u64, u64)], c: &[(u64, u64)]) -> Passport {
    Passport {
        over0: a.to_vec(),
        over1: b.to_vec(),
        overinf: c.to_vec(),
    }
}

fn modular_classics(mode: Mode) -> Check {
    let k = mode.field(sig(f(2), f(3), I)).map_err(err)?;
    let cases = [
        (5u64, 60usize, pp(&[(2, 30)], &[(3, 20)], &[(5, 12)]), 0u64, 12u64, 5i64, -10i64),
        (7, 168, pp(&[(2, 84)], &[(3, 56)], &[(7, 24)]), 3, 24, 14, -28),
    ];
    let mut parts = Vec::new();
    for (ell, n, want_pp, g, cusps, theta, chi) in cases {
        let start = Instant::now();
        let ps = split_prime(&k, ell).map_err(err)?;
        ensure(ps.len() == 1, || format!("{} primes above {ell}", ps.len()))?;
        let b = build(&k, &ps[0])?;
        ensure(b.g.order() == n, || format!("mod {ell}: |G| = {}", b.g.order()))?;
        ensure(passport(&b.d) == want_pp, || format!("mod {ell}: passport {}", passport(&b.d)))?;
        let r = euler_theta_report(&b.d, &b.g).map_err(err)?;
        ensure(r.genus == g && r.cusps == cusps, || {
            format!("mod {ell}: genus {} cusps {}", r.genus, r.cusps)
        })?;
        ensure(r.chi_open == chi && r.theta_degree == Some(theta), || {
            format!("mod {ell}: chi {} theta {:?}", r.chi_open, r.theta_degree)
        })?;
        ensure(genus_crosscheck(&b.d, &b.g), || format!("mod {ell}: genus formulas disagree"))?;
        let t = start.elapsed();
        ensure(t <= Duration::from_secs(5), || format!("mod {ell}: took {t:?}, limit 5 s"))?;
        parts.push(format!("mod {ell}: |G| = {n}, g = {g}, {cusps} cusps, theta degree {theta}"));
    }
    Ok(parts.join("; "))
}

fn hurwitz_triplet(mode: Mode) -> Check {
    let k = mode.field(sig(f(2), f(3), f(7))).map_err(err)?;
    let o = orbits(&k, 13).map_err(err)?;
    ensure(o.len() == 1 && o[0].len() == 3, || format!("orbits {o:?}"))?;
    let group = k.galois_group().map_err(err)?;
    ensure(group.len() == 3 && group.iter().any(|t| k.automorphism_order(t) == 3), || {
        "Galois group is not cyclic of order 3".into()
    })?;
    let report = verify_theorem_c(&k, 13, QuotientOptions::default()).map_err(err)?;
    let want = pp(&[(2, 546)], &[(3, 364)], &[(7, 156)]);
    for e in &report.per_ideal {
        let r = &e.record;
        ensure(
            r.group_order == 1092 && r.passport == want && r.genus == 14 && r.cusps == 0,
            || format!("{}: {:?}", e.ideal, r),
        )?;
    }
    ensure(report.verdict, || "invariants differ within the orbit".into())?;
    let m = &report.iso_matrix[0];
    for (i, row) in m.iter().enumerate() {
        for (j, &iso) in row.iter().enumerate() {
            ensure(iso == (i == j), || format!("isomorphism matrix {m:?}"))?;
        }
    }
    Ok("one orbit of 3 primes; |G| = 1092, (2^546; 3^364; 7^156), g = 14, 0 cusps; pairwise non-isomorphic".into())
}

fn dickson_composition(rng: &mut ChaCha8Rng, cases: usize) -> std::result::Result<(), String> {
    for _ in 0..cases {
        let (j, k) = (rng.gen_range(0..=30u64), rng.gen_range(0..=30u64));
        ensure(dickson(j).compose(&dickson(k)) == dickson(j * k), || {
            format!("D_{j}(D_{k}) != D_{}", j * k)
        })?;
    }
    Ok(())
}

/// Signatures and primes whose dessins the property suite constructs.
pub const DESSIN_POOL: &[(Entry, Entry, Entry, u64)] = &[
    (f(2), f(3), I, 5),
    (f(2), f(3), I, 7),
    (f(2), f(3), I, 11),
    (f(2), f(3), I, 13),
    (f(2), f(3), f(7), 13),
    (f(2), f(3), f(7), 29),
    (f(2), f(4), f(5), 11),
    (f(2), f(3), f(8), 17),
    (f(2), f(5), f(5), 11),
    (f(2), I, I, 3),
    (I, I, I, 5),
    (f(3), f(3), f(4), 7),
    (f(3), f(3), f(5), 11),
    (f(4), f(4), f(4), 7),
    (f(3), I, I, 7),
];

/// Signatures whose fields the arithmetic properties are checked on.
const FIELD_POOL: &[(Entry, Entry, Entry)] = &[
    (f(2), f(3), f(7)),
    (f(2), f(4), f(5)),
    (f(3), f(3), f(4)),
    (f(2), f(3), f(8)),
    (f(3), f(4), f(5)),
    (f(2), f(3), I),
];

fn arithmetic_properties(mode: Mode, rng: &mut ChaCha8Rng) -> std::result::Result<usize, String> {
    let mut pairs = 0;
    for &(p, q, r) in FIELD_POOL {
        let k = mode.field(sig(p, q, r)).map_err(err)?;
        let group = k.galois_group().map_err(err)?;
        for ell in [11u64, 13, 29, 31] {
            if irregularity(&k, ell).map_err(err)?.is_some() {
                continue;
            }
            let primes = split_prime(&k, ell).map_err(err)?;
            let total: usize = primes.iter().map(|x| x.f).sum();
            ensure(total == k.degree(), || format!("{}: sum of f is {total}", k.signature()))?;
            for prime in &primes {
                let rf = prime.residue_field();
                for _ in 0..100 {
                    let mut coords = || {
                        (0..k.degree())
                            .map(|_| {
                                let den = [1i64, 2, 3, 4, 6][rng.gen_range(0..5)];
                                Rational::new(rng.gen_range(-50..50i64).into(), den.into())
                            })
                            .collect::<Vec<_>>()
                    };
                    let a = k.k_from_coords(coords()).map_err(err)?;
                    let b = k.k_from_coords(coords()).map_err(err)?;
                    let (ra, rb) = (reduce(&a, prime).map_err(err)?, reduce(&b, prime).map_err(err)?);
                    let sum = reduce(&k.k_add(&a, &b), prime).map_err(err)?;
                    let prod = reduce(&k.k_mul(&a, &b), prime).map_err(err)?;
                    ensure(sum == rf.add(&ra, &rb) && prod == rf.mul(&ra, &rb), || {
                        format!("{}: reduction mod {prime} is not a ring map", k.signature())
                    })?;
                    pairs += 1;
                }
                let act = |t: &Automorphism, x: &PrimeIdeal| galois_on_prime(t, x, &primes).map_err(err);
                ensure(act(&group[0], prime)? == *prime, || "identity moves a prime".into())?;
                for s in group {
                    let sp = act(s, prime)?;
                    ensure(sp.f == prime.f, || format!("residue degree changes at {prime}"))?;
                    for t in group {
                        let st = k.compose(s, t);
                        let lhs = act(&st, prime)?;
                        let rhs = act(s, &act(t, prime)?)?;
                        ensure(lhs == rhs, || format!("action is not compatible at {prime}"))?;
                    }
                }
            }
        }
    }
    Ok(pairs)
}

fn dessin_properties(b: &Built) -> std::result::Result<(), String> {
    let (d, g) = (&b.d, &b.g);
    let name = format!("{} mod {}", g.signature(), g.prime());
    ensure(d.satisfies_triple_relation(), || format!("{name}: triple relation fails"))?;
    ensure(d.is_transitive(), || format!("{name}: not transitive"))?;
    for (perm, order) in d.perms().iter().zip(g.orders()) {
        let t = cycle_type(perm);
        ensure(t == [(order, d.n as u64 / order)], || format!("{name}: cycle type {t:?}"))?;
    }
    genus(d).map_err(err)?;
    ensure(genus_crosscheck(d, g), || format!("{name}: genus formulas disagree"))?;
    let r = euler_theta_report(d, g).map_err(err)?;
    ensure(r.chi_open == 2 - 2 * r.genus as i64 - r.cusps as i64, || format!("{name}: chi"))?;
    ensure(r.theta_exists == (r.cusps % 2 == 0), || format!("{name}: theta parity"))?;
    ensure(
        r.theta_degree == r.theta_exists.then_some(-r.chi_open / 2),
        || format!("{name}: theta degree"),
    )?;
    Ok(())
}

fn property_suites(mode: Mode) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    dickson_composition(&mut rng, 120)?;
    let pairs = arithmetic_properties(mode, &mut rng)?;

    let mut dessins = 0;
    let mut sign_checked = 0;
    let mut sign_failures = Vec::new();
    for &(p, q, r, ell) in DESSIN_POOL {
        let k = mode.field(sig(p, q, r)).map_err(err)?;
        for prime in split_prime(&k, ell).map_err(err)? {
            let b = build(&k, &prime)?;
            dessin_properties(&b)?;
            dessins += 1;
            let opts = QuotientOptions::default();
            let minus = congruence_quotient_with_sign(&k, &prime, opts, TraceSign::Minus);
            let plus = congruence_quotient_with_sign(&k, &prime, opts, TraceSign::Plus);
            if let (Ok(minus), Ok(plus)) = (minus, plus) {
                sign_checked += 1;
                let (dm, dp) = (regular_dessin(&minus), regular_dessin(&plus));
                if !is_isomorphic(&dm, &dp) {
                    sign_failures.push(format!("{} mod {prime} (n = {} vs {})", k.signature(), dm.n, dp.n));
                }
            }
        }
    }
    ensure(sign_failures.is_empty(), || {
        format!(
            "sign convention changes the dessin in {} of {sign_checked} cases: {}",
            sign_failures.len(),
            sign_failures.join(", ")
        )
    })?;
    Ok(format!(
        "120 Dickson compositions; {pairs} reduction pairs; {dessins} dessins; {sign_checked} sign comparisons"
    ))
}

fn determinism(_: Mode) -> Check {
    let s = sig(f(2), f(3), f(7));
    // every call rebuilds the field, quotient and dessin from scratch
    let once = || crate::cli::dessin_json(s, 13, 0, QuotientOptions::default()).map_err(err);
    let (a, b) = (once()?, once()?);
    ensure(a == b, || "outputs differ".into())?;
    Ok(format!("{} identical bytes, sha256 {:x}", a.len(), Sha256::digest(a.as_bytes())))
}
