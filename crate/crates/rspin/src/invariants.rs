//! Closed-surface invariants of a graded Frobenius algebra: the sphere
//! scalar, the torus invariants beta_d (by two independent routes), the
//! higher-genus invariants alpha_n built from handle operators, and the
//! pointwise character arithmetic on invariant profiles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{divisors, CycQ, Rat};
use crate::frobenius::FrobAlgebra;
use crate::graded::{canon, sdim, GradedMap};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("the sphere admits this structure only for r in {{1,2}}, got r = {0}")]
    NoSphere(u32),
    #[error("{0} is not a divisor of {1}")]
    NotDivisor(u32, u32),
    #[error("alpha for odd modulus requested on r = {0}")]
    OddOnly(u32),
    #[error("alpha for even modulus requested on r = {0}")]
    EvenOnly(u32),
    #[error("handle degrees must satisfy a + b + 1 = x (mod r)")]
    BadHandleDegrees,
    #[error("the first tensor degree of a signed handle must be even")]
    OddHandleBase,
    #[error("degree choice list must have length {0}")]
    BadChoiceLength(usize),
    #[error("n must be at least 1")]
    ZeroGenusIndex,
    #[error("beta cross-check failed at divisor {d}: dimension route {dim}, torus route {torus}")]
    CrossCheck { d: u32, dim: String, torus: String },
    #[error("profiles disagree in {0}")]
    ProfileMismatch(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HandleKind {
    Plain,
    Plus,
    Minus,
}

/// A handle operator C_x -> C_{x-2}, remembering how it was built.
#[derive(Clone, Debug)]
pub struct HandleOperator {
    pub base_degree: u32,
    pub kind: HandleKind,
    pub map: GradedMap,
}

/// Z(S^2) = eps . eta, defined only for r in {1,2}.
pub fn sphere_invariant(alg: &FrobAlgebra) -> Result<CycQ, InvariantError> {
    let r = alg.modulus();
    if r > 2 {
        return Err(InvariantError::NoSphere(r));
    }
    let composite = alg
        .eps()
        .compose(alg.eta())
        .expect("eta/eps shapes are validated at construction");
    Ok(composite.as_scalar().expect("closed composite"))
}

/// beta_d as the superdimension of the piece at degree d.
pub fn beta_via_dimension(alg: &FrobAlgebra, d: u32) -> Result<CycQ, InvariantError> {
    let r = alg.modulus();
    if d == 0 || r % d != 0 {
        return Err(InvariantError::NotDivisor(d, r));
    }
    Ok(sdim(alg.space(), d as i64))
}

/// beta as the closed torus composite
/// eps . mu_{-a,a} . (N_{-a}^(b-1) (x) 1) . Delta_{-a,a} . eta,
/// which must equal beta_via_dimension(gcd(a,b,r)) for every (a,b).
pub fn beta_via_torus(alg: &FrobAlgebra, a: i64, b: i64) -> CycQ {
    let composite = alg
        .eps()
        .compose(&alg.mu(-a, a))
        .and_then(|m| m.compose(&alg.nakayama_power(-a, b - 1).tensor(&alg.id_piece(a))))
        .and_then(|m| m.compose(&alg.delta(-a, a)))
        .and_then(|m| m.compose(alg.eta()))
        .expect("torus composite shapes are validated at construction");
    composite.as_scalar().expect("closed composite")
}

/// The handle map h_{x,a,b} = mu_{a,b} . Delta_{a,b} : C_x -> C_{x-2},
/// for a + b + 1 = x.
pub fn handle(alg: &FrobAlgebra, x: i64, a: i64, b: i64) -> Result<HandleOperator, InvariantError> {
    let r = alg.modulus();
    if canon(r, a + b + 1) != canon(r, x) {
        return Err(InvariantError::BadHandleDegrees);
    }
    let map = alg
        .mu(a, b)
        .compose(&alg.delta(a, b))
        .expect("handle shapes are validated at construction");
    Ok(HandleOperator { base_degree: canon(r, x), kind: HandleKind::Plain, map })
}

/// The signed handle maps of the even-modulus theory: h^+ is the plain
/// handle, h^- inserts one Nakayama twist on the first tensor factor,
/// which must sit in an even degree.
pub fn handle_pm(
    alg: &FrobAlgebra,
    x: i64,
    a: i64,
    sign: Sign,
) -> Result<HandleOperator, InvariantError> {
    let r = alg.modulus();
    if canon(r, a) % 2 != 0 {
        return Err(InvariantError::OddHandleBase);
    }
    let b = x - 1 - a;
    let map = match sign {
        Sign::Plus => alg
            .mu(a, b)
            .compose(&alg.delta(a, b))
            .expect("handle shapes are validated at construction"),
        Sign::Minus => alg
            .mu(a, b)
            .compose(&alg.nakayama_power(a, 1).tensor(&alg.id_piece(b)))
            .and_then(|m| m.compose(&alg.delta(a, b)))
            .expect("handle shapes are validated at construction"),
    };
    let kind = match sign {
        Sign::Plus => HandleKind::Plus,
        Sign::Minus => HandleKind::Minus,
    };
    Ok(HandleOperator { base_degree: canon(r, x), kind, map })
}

/// Z(Sigma_{nr+1}) for odd r: the supertrace of the n-th power of the
/// r-fold handle composite based at x. Independent of x and of the
/// intermediate degree choices a_i (the default is a_i = 0).
pub fn alpha_odd(
    alg: &FrobAlgebra,
    n: u32,
    x: i64,
    choices: Option<&[i64]>,
) -> Result<CycQ, InvariantError> {
    let r = alg.modulus();
    if r % 2 == 0 {
        return Err(InvariantError::EvenOnly(r));
    }
    if n == 0 {
        return Err(InvariantError::ZeroGenusIndex);
    }
    if let Some(c) = choices {
        if c.len() != r as usize {
            return Err(InvariantError::BadChoiceLength(r as usize));
        }
    }
    let mut acc = GradedMap::identity(alg.word(&[x]));
    for i in 0..r as i64 {
        let y = x - 2 * i;
        let a = choices.map_or(0, |c| c[i as usize]);
        let b = y - 1 - a;
        acc = handle(alg, y, a, b)?
            .map
            .compose(&acc)
            .expect("handle chain shapes are validated");
    }
    let power = acc.pow(n).expect("handle composite is an endomorphism");
    Ok(power.supertrace().expect("endomorphism"))
}

/// Z(Sigma_{nr/2+1}^(sign)) for even r. The labels of the two surface
/// classes are pinned by the Arf algebra (alpha_n^+ = +2^(-nr/2) on it);
/// with an odd base degree the plain h^+-chain realizes the + class, with
/// an even base degree the two composites swap roles.
pub fn alpha_even(alg: &FrobAlgebra, n: u32, sign: Sign, x: i64) -> Result<CycQ, InvariantError> {
    let r = alg.modulus();
    if r % 2 != 0 {
        return Err(InvariantError::OddOnly(r));
    }
    if n == 0 {
        return Err(InvariantError::ZeroGenusIndex);
    }
    let mut plus_chain = GradedMap::identity(alg.word(&[x]));
    let mut mixed_chain = GradedMap::identity(alg.word(&[x]));
    for i in 0..(r / 2) as i64 {
        let y = x - 2 * i;
        let plus = handle_pm(alg, y, 0, Sign::Plus)?.map;
        plus_chain = plus.compose(&plus_chain).expect("handle chain shapes");
        let factor = if i == 0 {
            handle_pm(alg, y, 0, Sign::Minus)?.map
        } else {
            plus
        };
        mixed_chain = factor.compose(&mixed_chain).expect("handle chain shapes");
    }
    let plain = plus_chain.pow(n).expect("endomorphism");
    let single = plus_chain
        .pow(n - 1)
        .expect("endomorphism")
        .compose(&mixed_chain)
        .expect("handle chain shapes");
    let plain_is_plus = canon(alg.modulus(), x) % 2 == 1;
    let chosen = match (sign, plain_is_plus) {
        (Sign::Plus, true) | (Sign::Minus, false) => plain,
        (Sign::Plus, false) | (Sign::Minus, true) => single,
    };
    Ok(chosen.supertrace().expect("endomorphism"))
}

/// The invariant table of one algebra up to a genus horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub r: u32,
    pub horizon: u32,
    pub sphere: Option<CycQ>,
    pub beta: BTreeMap<u32, CycQ>,
    pub alpha: AlphaTable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlphaTable {
    Odd { values: Vec<CycQ> },
    Even { plus: Vec<CycQ>, minus: Vec<CycQ> },
}

/// Assembles the full profile. The beta row is computed by both routes
/// (superdimension and the closed torus composite) and cross-checked; a
/// mismatch is a hard failure since it signals an engine or algebra bug.
pub fn profile(alg: &FrobAlgebra, horizon: u32) -> Result<InvariantProfile, InvariantError> {
    let r = alg.modulus();
    let sphere = if r <= 2 { Some(sphere_invariant(alg)?) } else { None };
    let mut beta = BTreeMap::new();
    for d in divisors(r) {
        let via_dim = beta_via_dimension(alg, d)?;
        let via_torus = beta_via_torus(alg, d as i64, 0);
        if via_dim != via_torus {
            return Err(InvariantError::CrossCheck {
                d,
                dim: via_dim.to_string(),
                torus: via_torus.to_string(),
            });
        }
        beta.insert(d, via_dim);
    }
    let alpha = if r % 2 == 1 {
        let values = (1..=horizon)
            .map(|n| alpha_odd(alg, n, 1, None))
            .collect::<Result<Vec<_>, _>>()?;
        AlphaTable::Odd { values }
    } else {
        let plus = (1..=horizon)
            .map(|n| alpha_even(alg, n, Sign::Plus, 1))
            .collect::<Result<Vec<_>, _>>()?;
        let minus = (1..=horizon)
            .map(|n| alpha_even(alg, n, Sign::Minus, 1))
            .collect::<Result<Vec<_>, _>>()?;
        AlphaTable::Even { plus, minus }
    };
    Ok(InvariantProfile { r, horizon, sphere, beta, alpha })
}

impl InvariantProfile {
    /// The alpha sequences carried by this profile (one for odd r, the
    /// plus and minus sequences for even r).
    pub fn alpha_sequences(&self) -> Vec<(&'static str, &[CycQ])> {
        match &self.alpha {
            AlphaTable::Odd { values } => vec![("alpha", values.as_slice())],
            AlphaTable::Even { plus, minus } => {
                vec![("alpha+", plus.as_slice()), ("alpha-", minus.as_slice())]
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serialization cannot fail")
    }

    /// Aligned text table with exact values and a floating rendering under
    /// the k=1 embedding.
    pub fn render_table(&self) -> String {
        let mut rows: Vec<(String, CycQ)> = Vec::new();
        if let Some(s) = &self.sphere {
            rows.push(("sphere".into(), s.clone()));
        }
        for (d, v) in &self.beta {
            rows.push((format!("beta_{d}"), v.clone()));
        }
        match &self.alpha {
            AlphaTable::Odd { values } => {
                for (i, v) in values.iter().enumerate() {
                    rows.push((format!("alpha_{}", i + 1), v.clone()));
                }
            }
            AlphaTable::Even { plus, minus } => {
                for (i, v) in plus.iter().enumerate() {
                    rows.push((format!("alpha_{}+", i + 1), v.clone()));
                }
                for (i, v) in minus.iter().enumerate() {
                    rows.push((format!("alpha_{}-", i + 1), v.clone()));
                }
            }
        }
        let name_w = rows
            .iter()
            .map(|(n, _)| n.len())
            .max()
            .unwrap_or(0)
            .max("invariant".len());
        let exact_w = rows
            .iter()
            .map(|(_, v)| v.to_string().len())
            .max()
            .unwrap_or(0)
            .max("exact".len());
        let mut out = String::new();
        let _ = writeln!(out, "{:name_w$}  {:exact_w$}  approx (k=1)", "invariant", "exact");
        for (name, v) in rows {
            let approx = match v.approx(1) {
                Ok((re, im)) => format!("({re:.12}, {im:.12})"),
                Err(_) => "-".to_string(),
            };
            let _ = writeln!(out, "{:name_w$}  {:exact_w$}  {}", name, v.to_string(), approx);
        }
        out
    }
}

fn zip_alpha<F>(a: &AlphaTable, b: &AlphaTable, f: F) -> Result<AlphaTable, InvariantError>
where
    F: Fn(&CycQ, &CycQ) -> CycQ,
{
    match (a, b) {
        (AlphaTable::Odd { values: x }, AlphaTable::Odd { values: y }) => Ok(AlphaTable::Odd {
            values: x.iter().zip(y).map(|(p, q)| f(p, q)).collect(),
        }),
        (
            AlphaTable::Even { plus: xp, minus: xm },
            AlphaTable::Even { plus: yp, minus: ym },
        ) => Ok(AlphaTable::Even {
            plus: xp.iter().zip(yp).map(|(p, q)| f(p, q)).collect(),
            minus: xm.iter().zip(ym).map(|(p, q)| f(p, q)).collect(),
        }),
        _ => Err(InvariantError::ProfileMismatch("alpha parity kind".into())),
    }
}

fn check_compatible(p: &InvariantProfile, q: &InvariantProfile) -> Result<(), InvariantError> {
    if p.r != q.r {
        return Err(InvariantError::ProfileMismatch(format!("modulus: {} vs {}", p.r, q.r)));
    }
    if p.horizon != q.horizon {
        return Err(InvariantError::ProfileMismatch(format!(
            "horizon: {} vs {}",
            p.horizon, q.horizon
        )));
    }
    Ok(())
}

/// Pointwise sum of two profiles (the character of a direct sum).
pub fn char_add(p: &InvariantProfile, q: &InvariantProfile) -> Result<InvariantProfile, InvariantError> {
    check_compatible(p, q)?;
    let sphere = match (&p.sphere, &q.sphere) {
        (Some(a), Some(b)) => Some(a.add(b)),
        (None, None) => None,
        _ => return Err(InvariantError::ProfileMismatch("sphere presence".into())),
    };
    let beta = p
        .beta
        .iter()
        .map(|(d, v)| (*d, v.add(&q.beta[d])))
        .collect();
    Ok(InvariantProfile {
        r: p.r,
        horizon: p.horizon,
        sphere,
        beta,
        alpha: zip_alpha(&p.alpha, &q.alpha, |a, b| a.add(b))?,
    })
}

/// Pointwise product of two profiles (the character of a graded tensor product).
pub fn char_mul(p: &InvariantProfile, q: &InvariantProfile) -> Result<InvariantProfile, InvariantError> {
    check_compatible(p, q)?;
    let sphere = match (&p.sphere, &q.sphere) {
        (Some(a), Some(b)) => Some(a.mul(b)),
        (None, None) => None,
        _ => return Err(InvariantError::ProfileMismatch("sphere presence".into())),
    };
    let beta = p
        .beta
        .iter()
        .map(|(d, v)| (*d, v.mul(&q.beta[d])))
        .collect();
    Ok(InvariantProfile {
        r: p.r,
        horizon: p.horizon,
        sphere,
        beta,
        alpha: zip_alpha(&p.alpha, &q.alpha, |a, b| a.mul(b))?,
    })
}

/// Pointwise scaling by a rational (the constant character).
pub fn char_scale(p: &InvariantProfile, t: &Rat) -> InvariantProfile {
    let s = CycQ::from_rat(p.r, t.clone());
    let scale_vec = |v: &[CycQ]| v.iter().map(|x| x.mul(&s)).collect::<Vec<_>>();
    InvariantProfile {
        r: p.r,
        horizon: p.horizon,
        sphere: p.sphere.as_ref().map(|x| x.mul(&s)),
        beta: p.beta.iter().map(|(d, v)| (*d, v.mul(&s))).collect(),
        alpha: match &p.alpha {
            AlphaTable::Odd { values } => AlphaTable::Odd { values: scale_vec(values) },
            AlphaTable::Even { plus, minus } => AlphaTable::Even {
                plus: scale_vec(plus),
                minus: scale_vec(minus),
            },
        },
    }
}
