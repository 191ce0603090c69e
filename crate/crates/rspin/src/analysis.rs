//! Semisimplicity detection via the trace form of the underlying ungraded
//! algebra, the at-most-two-values consequence for torus invariants, the
//! piece-dimension pattern forced by semisimplicity, and the
//! rational-generating-function membership test on invariant sequences
//! (minimal linear recurrence by exact Hankel solves plus a squarefreeness
//! check of the characteristic polynomial).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclotomic::CycQ;
use crate::frobenius::FrobAlgebra;
use crate::invariants::InvariantProfile;
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("sequence prefix must have length at least 2, got {0}")]
    PrefixTooShort(usize),
    #[error("sequence entries must share one conductor")]
    MixedConductors,
}

/// Verdict of the semisimplicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsimReport {
    pub semisimple: bool,
    pub radical_dim: usize,
    pub trace_form_rank: usize,
    pub total_dim: usize,
}

/// Decides semisimplicity of the underlying ungraded algebra (all gradings
/// and parities forgotten): over characteristic zero this is equivalent to
/// non-degeneracy of the trace form T(a,b) = tr(L_{ab}).
pub fn is_semisimple(alg: &FrobAlgebra) -> SsimReport {
    let r = alg.modulus();
    // global basis enumeration
    let mut index: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut basis: Vec<(u32, u32)> = Vec::new();
    for d in alg.space().degrees() {
        for i in 0..alg.space().dim(d as i64) as u32 {
            index.insert((d, i), basis.len());
            basis.push((d, i));
        }
    }
    let n = basis.len();
    if n == 0 {
        return SsimReport { semisimple: true, radical_dim: 0, trace_form_rank: 0, total_dim: 0 };
    }
    // t[k] = tr(L_{e_k}): an entry e_a e_b -> e_c contributes to t[a] when
    // the output equals the right factor.
    let mut t = vec![CycQ::zero(r); n];
    for (_, m) in alg.mu_blocks() {
        for (out, inp, v) in m.entries() {
            if out[0] == inp[1] {
                let k = index[&inp[0]];
                t[k] = t[k].add(v);
            }
        }
    }
    // T[i][j] = tr(L_{e_i e_j}) = sum_c (e_i e_j)_c t[c]
    let mut form = vec![vec![CycQ::zero(r); n]; n];
    for (_, m) in alg.mu_blocks() {
        for (out, inp, v) in m.entries() {
            let tc = &t[index[&out[0]]];
            if tc.is_zero() {
                continue;
            }
            let i = index[&inp[0]];
            let j = index[&inp[1]];
            form[i][j] = form[i][j].add(&v.mul(tc));
        }
    }
    let rank = linalg::rank(form);
    SsimReport {
        semisimple: rank == n,
        radical_dim: n - rank,
        trace_form_rank: rank,
        total_dim: n,
    }
}

/// A semisimple algebra can have at most two distinct torus invariants.
pub fn two_value_check(profile: &InvariantProfile) -> bool {
    let mut values: Vec<&CycQ> = profile.beta.values().collect();
    values.sort();
    values.dedup();
    values.len() <= 2
}

/// Dimension-level consequence of semisimplicity: for odd r all pieces agree
/// with the degree-1 piece; for even r the pieces agree with the degree-1 or
/// degree-0 piece according to the parity of the degree. Compared as
/// (even, odd) dimension pairs.
pub fn graded_pattern_check(alg: &FrobAlgebra) -> bool {
    let r = alg.modulus();
    let dims = |d: i64| alg.space().dims(d);
    if r % 2 == 1 {
        (0..r).all(|a| dims(a as i64) == dims(1))
    } else {
        (0..r).all(|a| {
            if a % 2 == 1 {
                dims(a as i64) == dims(1)
            } else {
                dims(a as i64) == dims(0)
            }
        })
    }
}

/// All torus invariants pairwise distinct, exactly.
pub fn distinctness_check(beta: &BTreeMap<u32, CycQ>) -> bool {
    let values: Vec<&CycQ> = beta.values().collect();
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            if values[i] == values[j] {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberVerdict {
    /// A recurrence of order <= len/2 fits the whole prefix, its
    /// characteristic polynomial is squarefree and has no zero root: the
    /// prefix is consistent with membership in span{1/(1-lambda X)}.
    /// A finite prefix can never prove membership of the full sequence.
    Consistent,
    Inconsistent,
    /// No recurrence of order <= len/2 fits; a longer prefix might.
    Inconclusive,
}

impl std::fmt::Display for MemberVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MemberVerdict::Consistent => write!(f, "consistent"),
            MemberVerdict::Inconsistent => write!(f, "inconsistent"),
            MemberVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecurrenceReport {
    /// Order of the minimal recurrence found (0 for the zero sequence, and
    /// by convention 0 when the verdict is inconclusive).
    pub order: usize,
    /// Coefficients c_0..c_{m-1} with a_{n+m} = sum_i c_i a_{n+i}.
    pub recurrence_coeffs: Vec<CycQ>,
    pub char_poly_squarefree: bool,
    pub member_verdict: MemberVerdict,
    pub horizon_used: usize,
}

fn poly_deriv(p: &[CycQ], r: u32) -> Vec<CycQ> {
    let mut out = Vec::new();
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c.mul(&CycQ::from_int(r, i as i64)));
    }
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<CycQ>) {
    while p.last().is_some_and(CycQ::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &[CycQ], b: &[CycQ]) -> Vec<CycQ> {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    while rem.len() > db {
        let dr = rem.len() - 1;
        let coef = rem[dr].mul(&lead_inv);
        for i in 0..=db {
            let t = b[i].mul(&coef);
            rem[dr - db + i] = rem[dr - db + i].sub(&t);
        }
        trim(&mut rem);
        if rem.is_empty() || rem.len() - 1 < db {
            break;
        }
    }
    rem
}

fn poly_gcd(a: &[CycQ], b: &[CycQ]) -> Vec<CycQ> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r2 = poly_rem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r2);
    }
    r0
}

/// Squarefree iff gcd(p, p') is a constant.
fn is_squarefree(p: &[CycQ], r: u32) -> bool {
    let d = poly_deriv(p, r);
    if d.is_empty() {
        // constant polynomial
        return true;
    }
    poly_gcd(p, &d).len() <= 1
}

/// Decides whether a prefix (a_1, a_2, ...) is consistent with the
/// generating function sum a_n X^n lying in span{1/(1-lambda X)}: a minimal
/// linear recurrence is extracted by exact Hankel-window solves, and
/// membership additionally requires its characteristic polynomial to be
/// squarefree with nonzero constant term (a zero root would be a transient
/// term, which the span cannot produce for n >= 1).
pub fn span_membership(prefix: &[CycQ]) -> Result<RecurrenceReport, AnalysisError> {
    let len = prefix.len();
    if len < 2 {
        return Err(AnalysisError::PrefixTooShort(len));
    }
    let r = prefix[0].conductor();
    if prefix.iter().any(|v| v.conductor() != r) {
        return Err(AnalysisError::MixedConductors);
    }
    let max_order = len / 2;
    for m in 0..=max_order {
        // windows n = 0..len-1-m: sum_i c_i a_{n+i} = a_{n+m}
        let rows: Vec<Vec<CycQ>> = (0..len - m)
            .map(|n| prefix[n..n + m].to_vec())
            .collect();
        let rhs: Vec<CycQ> = (0..len - m).map(|n| prefix[n + m].clone()).collect();
        let Some(coeffs) = linalg::solve(&rows, &rhs) else {
            continue;
        };
        // characteristic polynomial X^m - sum c_i X^i
        let mut char_poly: Vec<CycQ> = coeffs.iter().map(CycQ::neg).collect();
        char_poly.push(CycQ::one(r));
        let squarefree = is_squarefree(&char_poly, r);
        let zero_root = m > 0 && coeffs[0].is_zero();
        let verdict = if squarefree && !zero_root {
            MemberVerdict::Consistent
        } else {
            MemberVerdict::Inconsistent
        };
        return Ok(RecurrenceReport {
            order: m,
            recurrence_coeffs: coeffs,
            char_poly_squarefree: squarefree,
            member_verdict: verdict,
            horizon_used: len,
        });
    }
    Ok(RecurrenceReport {
        order: 0,
        recurrence_coeffs: Vec::new(),
        char_poly_squarefree: false,
        member_verdict: MemberVerdict::Inconclusive,
        horizon_used: len,
    })
}
