use std::collections::HashMap;

use serde::Serialize;

use super::ext::{Ext, ResidueExt};
use super::matrix::ProjMatrix;
use super::signature::{Entry, Signature};
use crate::error::{Error, Result};
use crate::oarith::{reduce, Fq, PrimeIdeal};
use crate::qfield::TraceField;

pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;

/// The generator traces `2cos(pi/s)` reduced modulo a prime, with `2` for cusps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceTriple {
    pub beta_p: Fq,
    pub beta_q: Fq,
    pub beta_r: Fq,
    pub ell: u64,
    pub q: u64,
}

impl TraceTriple {
    pub fn betas(&self) -> [&Fq; 3] {
        [&self.beta_p, &self.beta_q, &self.beta_r]
    }
}

/// Which lift convention fixes the trace of `AB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceSign {
    /// `trace(AB) = -beta_r`.
    Minus,
    /// `trace(AB) = +beta_r`.
    Plus,
}

fn check_coprime(sig: Signature, ell: u64) -> Result<()> {
    let bad = ell == 2 || sig.finite_entries().any(|s| s % ell == 0);
    if bad {
        return Err(Error::unsupported(
            ell,
            format!("not coprime to 2 and the finite entries of {sig} (use --force to override)"),
        ));
    }
    Ok(())
}

pub fn trace_triple(field: &TraceField, p: &PrimeIdeal, force: bool) -> Result<TraceTriple> {
    let sig = field.signature();
    if !force {
        check_coprime(sig, p.ell)?;
    }
    let rf = p.residue_field();
    let lambdas = field.lambda_coordinates()?;
    let mut betas = sig.entries().into_iter().zip(lambdas).map(|(s, lambda)| match s {
        Entry::Infinite => Ok(rf.from_u64(2)),
        Entry::Finite(_) => reduce(lambda, p),
    });
    let mut next = || betas.next().expect("three entries");
    Ok(TraceTriple {
        beta_p: next()?,
        beta_q: next()?,
        beta_r: next()?,
        ell: p.ell,
        q: rf.order().unwrap_or(u64::MAX),
    })
}

/// Projective order of the generator attached to a signature entry.
pub fn expected_order(s: Entry, ell: u64) -> u64 {
    match s {
        Entry::Finite(s) => s,
        Entry::Infinite => ell,
    }
}

/// `A = [[b_p, -1], [1, 0]]`, `B = [[0, xi], [-1/xi, b_q]]` with
/// `xi + 1/xi = -b_r` (or `+b_r`), and `xi`.
pub fn macbeath_triple(
    ext: &ResidueExt,
    t: &TraceTriple,
    sign: TraceSign,
) -> (ProjMatrix, ProjMatrix, Ext) {
    let [bp, bq, br] = t.betas().map(|b| ext.from_base(b));
    let lin = match sign {
        TraceSign::Minus => br,
        TraceSign::Plus => ext.neg(br),
    };
    let xi = ext
        .smallest_root_reciprocal_quadratic(lin)
        .expect("quadratics split over the extension");
    let xi_inv = ext.inv(xi).expect("xi is a unit");
    let a = ProjMatrix::new(ext, [bp, ext.minus_one(), 1, 0]).expect("det 1");
    let b = ProjMatrix::new(ext, [0, xi, ext.neg(xi_inv), bq]).expect("det 1");
    (a, b, xi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    pub max_order: u64,
    pub force: bool,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            max_order: DEFAULT_MAX_ORDER,
            force: false,
        }
    }
}

/// The finite group generated by a Macbeath pair, with its elements in BFS
/// order from the identity.
#[derive(Debug)]
pub struct CongruenceQuotient {
    signature: Signature,
    prime: PrimeIdeal,
    triple: TraceTriple,
    sign: TraceSign,
    ext: ResidueExt,
    xi: Ext,
    gens: [ProjMatrix; 3],
    orders: [u64; 3],
    elements: Vec<ProjMatrix>,
    index: HashMap<ProjMatrix, u32>,
    /// Positions of `h * gen_x` and `h * gen_y`.
    right: [Vec<u32>; 2],
}

impl CongruenceQuotient {
    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn trace_triple(&self) -> &TraceTriple {
        &self.triple
    }

    pub fn sign(&self) -> TraceSign {
        self.sign
    }

    pub fn ext(&self) -> &ResidueExt {
        &self.ext
    }

    pub fn xi(&self) -> Ext {
        self.xi
    }

    pub fn gen_x(&self) -> ProjMatrix {
        self.gens[0]
    }

    pub fn gen_y(&self) -> ProjMatrix {
        self.gens[1]
    }

    pub fn gen_z(&self) -> ProjMatrix {
        self.gens[2]
    }

    /// Verified projective orders of `gen_x`, `gen_y`, `gen_z`.
    pub fn orders(&self) -> [u64; 3] {
        self.orders
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjMatrix] {
        &self.elements
    }

    pub fn position(&self, m: &ProjMatrix) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    /// Right multiplication by `gen_x` (0) or `gen_y` (1) as a permutation.
    pub fn right_action(&self, which: usize) -> &[u32] {
        &self.right[which]
    }

    pub fn mul(&self, a: &ProjMatrix, b: &ProjMatrix) -> ProjMatrix {
        a.mul(&self.ext, b)
    }
}

pub fn congruence_quotient(
    field: &TraceField,
    p: &PrimeIdeal,
    opts: QuotientOptions,
) -> Result<CongruenceQuotient> {
    match congruence_quotient_with_sign(field, p, opts, TraceSign::Minus) {
        Err(Error::Construction(_)) => {
            congruence_quotient_with_sign(field, p, opts, TraceSign::Plus)
        }
        other => other,
    }
}

/// Builds the quotient for one fixed sign convention, without retrying.
pub fn congruence_quotient_with_sign(
    field: &TraceField,
    p: &PrimeIdeal,
    opts: QuotientOptions,
    sign: TraceSign,
) -> Result<CongruenceQuotient> {
    if opts.max_order < 2 {
        return Err(Error::InvalidArgument("max group order must be at least 2".into()));
    }
    let sig = field.signature();
    let triple = trace_triple(field, p, opts.force)?;
    let ext = ResidueExt::new(p.residue_field())?;
    let (a, b, xi) = macbeath_triple(&ext, &triple, sign);
    let z = a.mul(&ext, &b).inverse(&ext);
    let gens = [a, b, z];

    let mut orders = [0; 3];
    for (i, (g, s)) in gens.iter().zip(sig.entries()).enumerate() {
        let want = expected_order(s, p.ell);
        match g.order(&ext, want) {
            Some(k) if k == want => orders[i] = k,
            _ => {
                let actual = g
                    .order(&ext, ext.size() as u64 + 1)
                    .map_or("unknown".to_string(), |k| k.to_string());
                return Err(Error::Construction(format!(
                    "generator {i} of {sig} mod {p} has projective order {actual}, expected {want}"
                )));
            }
        }
    }

    let steps = [a, b, a.inverse(&ext), b.inverse(&ext)];
    let mut elements = vec![ProjMatrix::IDENTITY];
    let mut index = HashMap::from([(ProjMatrix::IDENTITY, 0u32)]);
    let mut right = [Vec::new(), Vec::new()];
    let mut head = 0;
    while head < elements.len() {
        let h = elements[head];
        for (k, s) in steps.iter().enumerate() {
            let next = h.mul(&ext, s);
            let pos = match index.get(&next) {
                Some(&pos) => pos,
                None => {
                    if elements.len() as u64 >= opts.max_order {
                        return Err(Error::ResourceLimit(format!(
                            "group generated mod {p} exceeds {} elements",
                            opts.max_order
                        )));
                    }
                    let pos = elements.len() as u32;
                    elements.push(next);
                    index.insert(next, pos);
                    pos
                }
            };
            if k < 2 {
                right[k].push(pos);
            }
        }
        head += 1;
    }
    if elements.len() < 2 {
        return Err(Error::Construction(format!("trivial group mod {p}")));
    }
    Ok(CongruenceQuotient {
        signature: sig,
        prime: p.clone(),
        triple,
        sign,
        ext,
        xi,
        gens,
        orders,
        elements,
        index,
        right,
    })
}
