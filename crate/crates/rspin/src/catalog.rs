//! Constructors for the catalog of closed graded Frobenius algebras:
//! the Arf algebra A (even r), the algebras B (odd r > 1) and C (even r > 2)
//! with a large degree-zero piece, the one-dimensional family E_kappa, the
//! dual-numbers algebra F, and the distinguishing direct sum D whose torus
//! invariants separate all divisors of r.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclotomic::{CycQ, Rat};
use crate::frobenius::{direct_sum, FrobAlgebra, FrobError};
use crate::graded::{canon, BasisKey, GradedMap, GradedSpace, Parity, WordSpace};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("family {family} requires {requirement}, got r = {r}")]
    BadModulus {
        family: char,
        requirement: &'static str,
        r: u32,
    },
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error("distinguishing algebra: torus invariants collide at divisors {0} and {1}")]
    DistinctnessFailed(u32, u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Arf,
    B,
    C,
    E,
    F,
    D,
}

/// A requested catalog algebra; `build` checks the family-specific
/// constraints on r and kappa.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub r: u32,
    pub kappa: Option<Rat>,
    pub label: Option<String>,
}

impl FamilySpec {
    pub fn build(&self) -> Result<FrobAlgebra, CatalogError> {
        let alg = match self.family {
            Family::Arf => make_arf(self.r)?,
            Family::B => make_b(self.r)?,
            Family::C => make_c(self.r)?,
            Family::E => {
                let kappa = self.kappa.clone().ok_or(CatalogError::ZeroKappa)?;
                make_e(self.r, kappa)?
            }
            Family::F => make_f(self.r)?,
            Family::D => make_d(self.r)?,
        };
        Ok(match &self.label {
            Some(l) => alg.with_label(l.clone()),
            None => alg,
        })
    }
}

/// Sparse entry accumulator that rejects inconsistent duplicate writes
/// (the defining formulas overlap, e.g. the unit rule and the pairing rule
/// both set mu(u (x) z)).
struct Entries {
    map: BTreeMap<(BasisKey, BasisKey), CycQ>,
}

impl Entries {
    fn new() -> Entries {
        Entries { map: BTreeMap::new() }
    }

    fn set(&mut self, out: BasisKey, inp: BasisKey, val: CycQ) {
        if let Some(prev) = self.map.get(&(out.clone(), inp.clone())) {
            assert_eq!(prev, &val, "inconsistent duplicate structure constant");
            return;
        }
        self.map.insert((out, inp), val);
    }

    fn into_vec(self) -> Vec<(BasisKey, BasisKey, CycQ)> {
        self.map.into_iter().map(|((o, i), v)| (o, i, v)).collect()
    }
}

fn single(deg: u32, idx: u32) -> BasisKey {
    vec![(deg, idx)]
}

fn pair(d1: u32, i1: u32, d2: u32, i2: u32) -> BasisKey {
    vec![(d1, i1), (d2, i2)]
}

struct Builder {
    r: u32,
    space: GradedSpace,
    mu: BTreeMap<(u32, u32), Entries>,
    delta: BTreeMap<(u32, u32), Entries>,
    eta: Entries,
    eps: Entries,
}

impl Builder {
    fn new(r: u32, space: GradedSpace) -> Builder {
        Builder {
            r,
            space,
            mu: BTreeMap::new(),
            delta: BTreeMap::new(),
            eta: Entries::new(),
            eps: Entries::new(),
        }
    }

    fn c(&self, d: i64) -> u32 {
        canon(self.r, d)
    }

    fn mu_set(&mut self, a: i64, b: i64, out_idx: u32, i1: u32, i2: u32, val: CycQ) {
        let (ca, cb, cc) = (self.c(a), self.c(b), self.c(a + b - 1));
        self.mu
            .entry((ca, cb))
            .or_insert_with(Entries::new)
            .set(single(cc, out_idx), pair(ca, i1, cb, i2), val);
    }

    fn delta_set(&mut self, a: i64, b: i64, o1: u32, o2: u32, in_idx: u32, val: CycQ) {
        let (ca, cb, cc) = (self.c(a), self.c(b), self.c(a + b + 1));
        self.delta
            .entry((ca, cb))
            .or_insert_with(Entries::new)
            .set(pair(ca, o1, cb, o2), single(cc, in_idx), val);
    }

    fn finish(
        self,
        names: BTreeMap<u32, Vec<String>>,
        label: impl Into<String>,
    ) -> Result<FrobAlgebra, FrobError> {
        let r = self.r;
        let space = self.space;
        let word = |degs: &[i64]| -> WordSpace {
            WordSpace::from_slots(r, degs.iter().map(|&d| space.restrict(d)).collect())
        };
        let mut mu = BTreeMap::new();
        for ((a, b), e) in self.mu {
            let m = GradedMap::from_entries(
                word(&[a as i64, b as i64]),
                word(&[a as i64 + b as i64 - 1]),
                e.into_vec(),
            )?;
            mu.insert((a, b), m);
        }
        let mut delta = BTreeMap::new();
        for ((a, b), e) in self.delta {
            let m = GradedMap::from_entries(
                word(&[a as i64 + b as i64 + 1]),
                word(&[a as i64, b as i64]),
                e.into_vec(),
            )?;
            delta.insert((a, b), m);
        }
        let eta = GradedMap::from_entries(word(&[]), word(&[1]), self.eta.into_vec())?;
        let eps = GradedMap::from_entries(word(&[-1]), word(&[]), self.eps.into_vec())?;
        FrobAlgebra::new(r, space, names, mu, delta, eta, eps, label)
    }
}

/// The Arf algebra: every piece is a line k.v_x, odd exactly when x is even;
/// v_x v_y = v_{x+y-1}, eps(v_{-1}) = 2, Delta(v_{x+y+1}) = 1/2 v_x (x) v_y.
pub fn make_arf(r: u32) -> Result<FrobAlgebra, CatalogError> {
    if r < 2 || r % 2 != 0 {
        return Err(CatalogError::BadModulus { family: 'A', requirement: "an even modulus", r });
    }
    let mut space = GradedSpace::new(r);
    let mut names = BTreeMap::new();
    for x in 0..r {
        let parity = if x % 2 == 0 { Parity::Odd } else { Parity::Even };
        space.add_piece(x as i64, 1, parity);
        names.insert(x, vec![format!("v{x}")]);
    }
    let mut b = Builder::new(r, space);
    let one = CycQ::one(r);
    let half = CycQ::from_rat(r, Rat::new(1.into(), 2.into()));
    for x in 0..r as i64 {
        for y in 0..r as i64 {
            b.mu_set(x, y, 0, 0, 0, one.clone());
            b.delta_set(x, y, 0, 0, 0, half.clone());
        }
    }
    b.eta.set(single(canon(r, 1), 0), vec![], one.clone());
    b.eps.set(vec![], single(canon(r, -1), 0), CycQ::from_int(r, 2));
    Ok(b.finish(names, format!("A({r})"))?)
}

/// The odd-modulus algebra with degree-zero piece of dimension r+1 spanned by
/// w_0..w_{r-1} and v_0, all other pieces lines k.v_x; u := v_1, z := v_{-1}.
pub fn make_b(r: u32) -> Result<FrobAlgebra, CatalogError> {
    if r < 3 || r % 2 == 0 {
        return Err(CatalogError::BadModulus { family: 'B', requirement: "an odd modulus > 1", r });
    }
    let mut space = GradedSpace::new(r);
    let mut names = BTreeMap::new();
    // degree 0: w_0..w_{r-1} then v_0
    space.add_piece(0, r as usize + 1, Parity::Even);
    let mut deg0: Vec<String> = (0..r).map(|x| format!("w{x}")).collect();
    deg0.push("v0".into());
    names.insert(0, deg0);
    for x in 1..r {
        space.add_piece(x as i64, 1, Parity::Even);
        names.insert(x, vec![format!("v{x}")]);
    }
    let w = |x: i64| canon(r, x); // w_x index within degree 0
    let v0: u32 = r; // v_0 index within degree 0
    let vi = |_x: i64| 0u32; // v_x index within degree x != 0
    let one = CycQ::one(r);
    let zeta = |k: i64| CycQ::root_of_unity(r, k);

    let mut b = Builder::new(r, space);
    // v_x v_{-x} = z for all x (x = 0 reads v_0 v_0 = z)
    for x in 0..r as i64 {
        let (i1, i2) = if x == 0 { (v0, v0) } else { (vi(x), vi(-x)) };
        b.mu_set(x, -x, 0, i1, i2, one.clone());
    }
    // w_x w_{-x} = z and w_{-x} w_x = zeta^{-x} z for 0 <= x < r/2;
    // the inverse twist (relative to the delta coefficient below) is what the
    // snake identities force, and matches the convention of the even-modulus
    // algebra C.
    for x in 0..=((r as i64 - 1) / 2) {
        b.mu_set(0, 0, 0, w(x), w(-x), one.clone());
        if x != 0 {
            b.mu_set(0, 0, 0, w(-x), w(x), zeta(-x));
        }
    }
    // u is a two-sided unit
    for d in 0..r as i64 {
        for idx in 0..b.space.dim(d) as u32 {
            b.mu_set(1, d, idx, 0, idx, one.clone());
            b.mu_set(d, 1, idx, idx, 0, one.clone());
        }
    }
    b.eta.set(single(1, 0), vec![], one.clone());
    b.eps.set(vec![], single(canon(r, -1), 0), one.clone());

    // coproduct, componentwise
    for a in 1..r as i64 {
        // Delta_{a,-a}(u) = v_a (x) v_{-a}
        b.delta_set(a, -a, vi(a), vi(-a), 0, one.clone());
    }
    // Delta_{0,0}(u) = v_0 (x) v_0 + w_0 (x) w_0
    //                + sum_{0<x<r/2} (zeta^x w_x (x) w_{-x} + w_{-x} (x) w_x)
    b.delta_set(0, 0, v0, v0, 0, one.clone());
    b.delta_set(0, 0, w(0), w(0), 0, one.clone());
    for x in 1..=((r as i64 - 1) / 2) {
        b.delta_set(0, 0, w(x), w(-x), 0, zeta(x));
        b.delta_set(0, 0, w(-x), w(x), 0, one.clone());
    }
    // Delta(v_x) = v_x (x) z + z (x) v_x for x != 1
    for x in 0..r as i64 {
        if x == 1 {
            continue;
        }
        let (ix, iz) = (if x == 0 { v0 } else { vi(x) }, vi(-1));
        b.delta_set(x, -1, ix, iz, ix, one.clone());
        b.delta_set(-1, x, iz, ix, ix, one.clone());
    }
    // Delta(w_x) = w_x (x) z + z (x) w_x
    for x in 0..r as i64 {
        b.delta_set(0, -1, w(x), vi(-1), w(x), one.clone());
        b.delta_set(-1, 0, vi(-1), w(x), w(x), one.clone());
    }
    Ok(b.finish(names, format!("B({r})"))?)
}

/// The even-modulus analogue of B, with degree-zero piece of dimension 2r+1
/// spanned by w_{0,j}, w_{1,j} and v_0.
pub fn make_c(r: u32) -> Result<FrobAlgebra, CatalogError> {
    if r <= 2 || r % 2 != 0 {
        return Err(CatalogError::BadModulus { family: 'C', requirement: "an even modulus > 2", r });
    }
    let mut space = GradedSpace::new(r);
    let mut names = BTreeMap::new();
    space.add_piece(0, 2 * r as usize + 1, Parity::Even);
    let mut deg0: Vec<String> = (0..r).map(|x| format!("w0_{x}")).collect();
    deg0.extend((0..r).map(|x| format!("w1_{x}")));
    deg0.push("v0".into());
    names.insert(0, deg0);
    for x in 1..r {
        space.add_piece(x as i64, 1, Parity::Even);
        names.insert(x, vec![format!("v{x}")]);
    }
    let w0 = |x: i64| canon(r, x);
    let w1 = |x: i64| r + canon(r, x);
    let v0: u32 = 2 * r;
    let one = CycQ::one(r);
    let zeta = |k: i64| CycQ::root_of_unity(r, k);

    let mut b = Builder::new(r, space);
    for x in 0..r as i64 {
        let (i1, i2) = if x == 0 { (v0, v0) } else { (0, 0) };
        b.mu_set(x, -x, 0, i1, i2, one.clone());
    }
    // w_{0,x} w_{1,-x} = z and w_{1,-x} w_{0,x} = zeta^{-x} z for all x
    for x in 0..r as i64 {
        b.mu_set(0, 0, 0, w0(x), w1(-x), one.clone());
        b.mu_set(0, 0, 0, w1(-x), w0(x), zeta(-x));
    }
    for d in 0..r as i64 {
        for idx in 0..b.space.dim(d) as u32 {
            b.mu_set(1, d, idx, 0, idx, one.clone());
            b.mu_set(d, 1, idx, idx, 0, one.clone());
        }
    }
    b.eta.set(single(1, 0), vec![], one.clone());
    b.eps.set(vec![], single(canon(r, -1), 0), one.clone());

    for a in 1..r as i64 {
        b.delta_set(a, -a, 0, 0, 0, one.clone());
    }
    // Delta_{0,0}(u) = v_0 (x) v_0 + sum_x (zeta^x w_{0,x} (x) w_{1,-x} + w_{1,-x} (x) w_{0,x})
    b.delta_set(0, 0, v0, v0, 0, one.clone());
    for x in 0..r as i64 {
        b.delta_set(0, 0, w0(x), w1(-x), 0, zeta(x));
        b.delta_set(0, 0, w1(-x), w0(x), 0, one.clone());
    }
    for x in 0..r as i64 {
        if x == 1 {
            continue;
        }
        let ix = if x == 0 { v0 } else { 0 };
        b.delta_set(x, -1, ix, 0, ix, one.clone());
        b.delta_set(-1, x, 0, ix, ix, one.clone());
    }
    // Delta(w_{i,x}) = w_{i,x} (x) z + z (x) w_{i,x}
    for x in 0..r as i64 {
        for widx in [w0(x), w1(x)] {
            b.delta_set(0, -1, widx, 0, widx, one.clone());
            b.delta_set(-1, 0, 0, widx, widx, one.clone());
        }
    }
    Ok(b.finish(names, format!("C({r})"))?)
}

/// The 1-dimensional Frobenius algebra with eps(1) = kappa^{-1} and
/// Delta(1) = kappa 1 (x) 1, re-indexed to modulus r.
pub fn make_e(r: u32, kappa: Rat) -> Result<FrobAlgebra, CatalogError> {
    use num_traits::Zero;
    if r == 0 {
        return Err(CatalogError::BadModulus { family: 'E', requirement: "a positive modulus", r });
    }
    if kappa.is_zero() {
        return Err(CatalogError::ZeroKappa);
    }
    let space = GradedSpace::new(1).with_piece(0, 1, Parity::Even);
    let mut names = BTreeMap::new();
    names.insert(0u32, vec!["1".to_string()]);
    let mut b = Builder::new(1, space);
    let one = CycQ::one(1);
    b.mu_set(0, 0, 0, 0, 0, one.clone());
    b.delta_set(0, 0, 0, 0, 0, CycQ::from_rat(1, kappa.clone()));
    b.eta.set(single(0, 0), vec![], one.clone());
    b.eps
        .set(vec![], single(0, 0), CycQ::from_rat(1, kappa.clone().recip()));
    let base = b.finish(names, format!("E({})", crate::cyclotomic::render_rat(&kappa)))?;
    let label = base.label().to_string();
    Ok(base.pullback(r)?.with_label(format!("{label}@r={r}")))
}

/// The dual numbers `k[x]/(x^2)` with eps(1) = 0 and eps(x) = 1, re-indexed
/// to modulus r. The handle endomorphism is nilpotent.
pub fn make_f(r: u32) -> Result<FrobAlgebra, CatalogError> {
    if r == 0 {
        return Err(CatalogError::BadModulus { family: 'F', requirement: "a positive modulus", r });
    }
    let space = GradedSpace::new(1).with_piece(0, 2, Parity::Even);
    let mut names = BTreeMap::new();
    names.insert(0u32, vec!["1".to_string(), "x".to_string()]);
    let mut b = Builder::new(1, space);
    let one = CycQ::one(1);
    // products: 1.1 = 1, 1.x = x.1 = x, x.x = 0
    b.mu_set(0, 0, 0, 0, 0, one.clone());
    b.mu_set(0, 0, 1, 0, 1, one.clone());
    b.mu_set(0, 0, 1, 1, 0, one.clone());
    b.eta.set(single(0, 0), vec![], one.clone());
    b.eps.set(vec![], single(0, 1), one.clone());
    // Delta(1) = 1 (x) x + x (x) 1, Delta(x) = x (x) x
    b.delta_set(0, 0, 0, 1, 0, one.clone());
    b.delta_set(0, 0, 1, 0, 0, one.clone());
    b.delta_set(0, 0, 1, 1, 1, one.clone());
    let base = b.finish(names, "F".to_string())?;
    Ok(base.pullback(r)?.with_label(format!("F@r={r}")))
}

fn prime_powers(r: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut n = r;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut l = 0;
            while n % p == 0 {
                n /= p;
                l += 1;
            }
            out.push((p, l));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The distinguishing algebra: one block per prime divisor of r (pullbacks
/// of B at odd prime powers; the Arf algebra plus pullbacks of C for the
/// prime 2), summed with multiplicities that keep the torus invariants of
/// distinct divisors apart. Distinctness is re-checked exhaustively on the
/// constructed algebra.
pub fn make_d(r: u32) -> Result<FrobAlgebra, CatalogError> {
    if r < 2 {
        return Err(CatalogError::BadModulus { family: 'D', requirement: "a modulus > 1", r });
    }
    let divisors = crate::cyclotomic::divisors(r);
    let mut blocks: Vec<FrobAlgebra> = Vec::new();
    for (p, l) in prime_powers(r) {
        let mut block: Option<FrobAlgebra> = None;
        for m in 1..=l {
            let q = p.pow(m);
            let part = if p == 2 {
                if m == 1 {
                    make_arf(2)?.pullback(r)?
                } else {
                    make_c(q)?.pullback(r)?
                }
            } else {
                make_b(q)?.pullback(r)?
            };
            block = Some(match block {
                None => part,
                Some(acc) => direct_sum(&acc, &part)?,
            });
        }
        blocks.push(block.expect("every prime power has at least one factor"));
    }
    // multiplicities: c_{i+1} = c_i (beta_r + 1) for odd moduli; for even
    // moduli the Arf block makes beta_r + 1 degenerate (beta_r can be -1), so
    // the spread of the block's torus invariants is used instead. Either way
    // c_i exceeds any cross-block difference, which keeps the divisors apart.
    let betas = |alg: &FrobAlgebra| -> Vec<i64> {
        divisors.iter().map(|&d| alg.space().sdim(d as i64)).collect()
    };
    let mut mult: Vec<u64> = Vec::new();
    let mut c = 1u64;
    for block in &blocks {
        mult.push(c);
        let vals = betas(block);
        let step = if r % 2 == 0 {
            let max = *vals.iter().max().unwrap();
            let min = *vals.iter().min().unwrap();
            (max - min + 1) as u64
        } else {
            let beta_r = *vals.last().unwrap();
            (beta_r + 1) as u64
        };
        c = c.checked_mul(step).expect("multiplicity overflow");
    }
    let mut total: Option<FrobAlgebra> = None;
    for (block, &m) in blocks.iter().zip(&mult) {
        for _ in 0..m {
            total = Some(match total {
                None => block.clone(),
                Some(acc) => direct_sum(&acc, block)?,
            });
        }
    }
    let alg = total.expect("r > 1 has at least one prime factor").with_label(format!("D({r})"));
    // exhaustive distinctness check
    let vals = betas(&alg);
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            if vals[i] == vals[j] {
                return Err(CatalogError::DistinctnessFailed(divisors[i], divisors[j]));
            }
        }
    }
    Ok(alg)
}
