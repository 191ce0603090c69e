//! Z/r-graded super vector spaces over Q(zeta_r) and degree-tracked linear
//! maps between tensor words of them.
//!
//! A `GradedSpace` assigns to each degree a in Z/r a finite-dimensional piece
//! split into an even and an odd block; basis vectors are addressed as
//! (degree, index) with the even block first. A `GradedMap` is a sparse exact
//! matrix between `WordSpace`s (tensor words of graded spaces). All structure
//! maps are parity-even; the Koszul sign lives only in `braiding`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cyclotomic::CycQ;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parity violation: entry maps {input} to {output}")]
    ParityViolation { input: String, output: String },
    #[error("basis tuple {0} does not belong to the word space")]
    BadBasisTuple(String),
    #[error("supertrace requires an endomorphism")]
    NotEndomorphism,
    #[error("scalar conductor {got} does not match the space modulus {want}")]
    ConductorMismatch { got: u32, want: u32 },
}

/// Canonical representative of a degree in Z/r.
pub fn canon(r: u32, d: i64) -> u32 {
    d.rem_euclid(r as i64) as u32
}

/// A Z/r-graded super vector space: degree -> (even dim, odd dim).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSpace {
    r: u32,
    pieces: BTreeMap<u32, (usize, usize)>,
}

impl GradedSpace {
    pub fn new(r: u32) -> GradedSpace {
        assert!(r >= 1, "modulus must be positive");
        GradedSpace { r, pieces: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    /// Adds `dim` basis vectors of the given parity at degree `d`.
    pub fn add_piece(&mut self, d: i64, dim: usize, parity: Parity) {
        if dim == 0 {
            return;
        }
        let entry = self.pieces.entry(canon(self.r, d)).or_insert((0, 0));
        match parity {
            Parity::Even => entry.0 += dim,
            Parity::Odd => entry.1 += dim,
        }
    }

    pub fn with_piece(mut self, d: i64, dim: usize, parity: Parity) -> GradedSpace {
        self.add_piece(d, dim, parity);
        self
    }

    /// (even, odd) dims at degree d.
    pub fn dims(&self, d: i64) -> (usize, usize) {
        self.pieces.get(&canon(self.r, d)).copied().unwrap_or((0, 0))
    }

    pub fn dim(&self, d: i64) -> usize {
        let (e, o) = self.dims(d);
        e + o
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|(e, o)| e + o).sum()
    }

    /// Superdimension (even minus odd) of the piece at degree d.
    pub fn sdim(&self, d: i64) -> i64 {
        let (e, o) = self.dims(d);
        e as i64 - o as i64
    }

    pub fn parity_of(&self, d: u32, idx: u32) -> Parity {
        let (e, o) = self.dims(d as i64);
        debug_assert!((idx as usize) < e + o);
        if (idx as usize) < e {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Degrees carrying a nonzero piece, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.pieces.keys().copied()
    }

    /// The subspace supported at the single degree d.
    pub fn restrict(&self, d: i64) -> GradedSpace {
        let mut out = GradedSpace::new(self.r);
        let (e, o) = self.dims(d);
        out.add_piece(d, e, Parity::Even);
        out.add_piece(d, o, Parity::Odd);
        out
    }
}

/// One basis vector of a tensor word: (degree, index) per slot.
pub type BasisKey = Vec<(u32, u32)>;

fn key_str(k: &BasisKey) -> String {
    let parts: Vec<String> = k.iter().map(|(d, i)| format!("{d}:{i}")).collect();
    format!("({})", parts.join(", "))
}

/// An ordered tensor word of graded spaces; the empty word is the monoidal unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordSpace {
    r: u32,
    slots: Vec<GradedSpace>,
}

impl WordSpace {
    pub fn unit(r: u32) -> WordSpace {
        WordSpace { r, slots: Vec::new() }
    }

    pub fn single(space: GradedSpace) -> WordSpace {
        let r = space.modulus();
        WordSpace { r, slots: vec![space] }
    }

    pub fn from_slots(r: u32, slots: Vec<GradedSpace>) -> WordSpace {
        for s in &slots {
            assert_eq!(s.modulus(), r, "all slots must share the modulus");
        }
        WordSpace { r, slots }
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    pub fn slots(&self) -> &[GradedSpace] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Concatenation of tensor words.
    pub fn concat(&self, other: &WordSpace) -> WordSpace {
        assert_eq!(self.r, other.r);
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().cloned());
        WordSpace { r: self.r, slots }
    }

    pub fn total_dim(&self) -> usize {
        self.basis().count()
    }

    pub fn contains(&self, key: &BasisKey) -> bool {
        key.len() == self.slots.len()
            && key.iter().zip(&self.slots).all(|((d, i), s)| (*i as usize) < s.dim(*d as i64))
    }

    pub fn parity_of(&self, key: &BasisKey) -> Parity {
        let odd_count = key
            .iter()
            .zip(&self.slots)
            .filter(|((d, i), s)| s.parity_of(*d, *i) == Parity::Odd)
            .count();
        if odd_count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Enumerates all basis keys (cartesian product over slots).
    pub fn basis(&self) -> impl Iterator<Item = BasisKey> + '_ {
        let per_slot: Vec<Vec<(u32, u32)>> = self
            .slots
            .iter()
            .map(|s| {
                s.degrees()
                    .flat_map(move |d| (0..s.dim(d as i64) as u32).map(move |i| (d, i)))
                    .collect()
            })
            .collect();
        CartesianKeys::new(per_slot)
    }
}

struct CartesianKeys {
    per_slot: Vec<Vec<(u32, u32)>>,
    pos: Vec<usize>,
    done: bool,
}

impl CartesianKeys {
    fn new(per_slot: Vec<Vec<(u32, u32)>>) -> CartesianKeys {
        let done = per_slot.iter().any(|v| v.is_empty());
        let pos = vec![0; per_slot.len()];
        CartesianKeys { per_slot, pos, done }
    }
}

impl Iterator for CartesianKeys {
    type Item = BasisKey;
    fn next(&mut self) -> Option<BasisKey> {
        if self.done {
            return None;
        }
        let key: BasisKey = self
            .pos
            .iter()
            .zip(&self.per_slot)
            .map(|(&p, v)| v[p])
            .collect();
        // advance odometer
        let mut i = self.per_slot.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.pos[i] += 1;
            if self.pos[i] < self.per_slot[i].len() {
                break;
            }
            self.pos[i] = 0;
        }
        Some(key)
    }
}

/// A sparse exact linear map between tensor words, keyed (output, input).
/// Every stored entry is nonzero and parity-even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMap {
    domain: WordSpace,
    codomain: WordSpace,
    entries: BTreeMap<(BasisKey, BasisKey), CycQ>,
}

impl GradedMap {
    pub fn zero(domain: WordSpace, codomain: WordSpace) -> GradedMap {
        assert_eq!(domain.modulus(), codomain.modulus());
        GradedMap { domain, codomain, entries: BTreeMap::new() }
    }

    pub fn identity(word: WordSpace) -> GradedMap {
        let mut entries = BTreeMap::new();
        let one = CycQ::one(word.modulus());
        for key in word.basis() {
            entries.insert((key.clone(), key), one.clone());
        }
        GradedMap { domain: word.clone(), codomain: word, entries }
    }

    /// Builds a map from explicit entries, validating membership, parity
    /// evenness and scalar conductors. Zero coefficients are dropped,
    /// repeated keys accumulate.
    pub fn from_entries(
        domain: WordSpace,
        codomain: WordSpace,
        entries: impl IntoIterator<Item = (BasisKey, BasisKey, CycQ)>,
    ) -> Result<GradedMap, GradedError> {
        let r = domain.modulus();
        assert_eq!(r, codomain.modulus());
        let mut map: BTreeMap<(BasisKey, BasisKey), CycQ> = BTreeMap::new();
        for (out, inp, val) in entries {
            if val.conductor() != r {
                return Err(GradedError::ConductorMismatch { got: val.conductor(), want: r });
            }
            if !codomain.contains(&out) {
                return Err(GradedError::BadBasisTuple(key_str(&out)));
            }
            if !domain.contains(&inp) {
                return Err(GradedError::BadBasisTuple(key_str(&inp)));
            }
            if codomain.parity_of(&out) != domain.parity_of(&inp) {
                return Err(GradedError::ParityViolation {
                    input: key_str(&inp),
                    output: key_str(&out),
                });
            }
            if val.is_zero() {
                continue;
            }
            let slot = map.entry((out, inp)).or_insert_with(|| CycQ::zero(r));
            *slot = slot.add(&val);
        }
        map.retain(|_, v| !v.is_zero());
        Ok(GradedMap { domain, codomain, entries: map })
    }

    pub fn domain(&self) -> &WordSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &WordSpace {
        &self.codomain
    }

    pub fn modulus(&self) -> u32 {
        self.domain.modulus()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BasisKey, &BasisKey, &CycQ)> {
        self.entries.iter().map(|((o, i), v)| (o, i, v))
    }

    pub fn entry(&self, out: &BasisKey, inp: &BasisKey) -> CycQ {
        self.entries
            .get(&(out.clone(), inp.clone()))
            .cloned()
            .unwrap_or_else(|| CycQ::zero(self.modulus()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact sparse composition `self . f` (f applied first).
    pub fn compose(&self, f: &GradedMap) -> Result<GradedMap, GradedError> {
        if f.codomain != self.domain {
            return Err(GradedError::ShapeMismatch(format!(
                "compose: inner codomain {:?} != outer domain {:?}",
                f.codomain.slots.len(),
                self.domain.slots.len()
            )));
        }
        let r = self.modulus();
        // group self's entries by input key
        let mut by_in: BTreeMap<&BasisKey, Vec<(&BasisKey, &CycQ)>> = BTreeMap::new();
        for ((out, inp), v) in &self.entries {
            by_in.entry(inp).or_default().push((out, v));
        }
        let mut acc: BTreeMap<(BasisKey, BasisKey), CycQ> = BTreeMap::new();
        for ((mid, inp), v) in &f.entries {
            if let Some(outs) = by_in.get(mid) {
                for (out, w) in outs {
                    let term = w.mul(v);
                    if term.is_zero() {
                        continue;
                    }
                    let slot = acc
                        .entry(((*out).clone(), inp.clone()))
                        .or_insert_with(|| CycQ::zero(r));
                    *slot = slot.add(&term);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(GradedMap { domain: f.domain.clone(), codomain: self.codomain.clone(), entries: acc })
    }

    /// Tensor (Kronecker) product on basis tuples. No Koszul sign: stored
    /// maps are parity-even, so signs arise only through `braiding`.
    pub fn tensor(&self, other: &GradedMap) -> GradedMap {
        let domain = self.domain.concat(&other.domain);
        let codomain = self.codomain.concat(&other.codomain);
        let mut entries = BTreeMap::new();
        for ((o1, i1), v1) in &self.entries {
            for ((o2, i2), v2) in &other.entries {
                let val = v1.mul(v2);
                if val.is_zero() {
                    continue;
                }
                let mut out = o1.clone();
                out.extend_from_slice(o2);
                let mut inp = i1.clone();
                inp.extend_from_slice(i2);
                entries.insert((out, inp), val);
            }
        }
        GradedMap { domain, codomain, entries }
    }

    /// Pointwise sum of two maps with identical shapes.
    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(GradedError::ShapeMismatch("add: shapes differ".into()));
        }
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let slot = entries.entry(k.clone()).or_insert_with(|| CycQ::zero(self.modulus()));
            *slot = slot.add(v);
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(GradedMap { domain: self.domain.clone(), codomain: self.codomain.clone(), entries })
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        self.add(&other.scale(&CycQ::from_int(self.modulus(), -1)))
    }

    pub fn scale(&self, c: &CycQ) -> GradedMap {
        let mut entries = BTreeMap::new();
        if !c.is_zero() {
            for (k, v) in &self.entries {
                let val = v.mul(c);
                if !val.is_zero() {
                    entries.insert(k.clone(), val);
                }
            }
        }
        GradedMap { domain: self.domain.clone(), codomain: self.codomain.clone(), entries }
    }

    /// n-fold composition of an endomorphism with itself (n >= 0).
    pub fn pow(&self, n: u32) -> Result<GradedMap, GradedError> {
        if self.domain != self.codomain {
            return Err(GradedError::NotEndomorphism);
        }
        let mut acc = GradedMap::identity(self.domain.clone());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Supertrace: sum over basis tuples of (-1)^parity times the diagonal entry.
    pub fn supertrace(&self) -> Result<CycQ, GradedError> {
        if self.domain != self.codomain {
            return Err(GradedError::NotEndomorphism);
        }
        let r = self.modulus();
        let mut acc = CycQ::zero(r);
        for ((out, inp), v) in &self.entries {
            if out == inp {
                match self.domain.parity_of(out) {
                    Parity::Even => acc = acc.add(v),
                    Parity::Odd => acc = acc.sub(v),
                }
            }
        }
        Ok(acc)
    }

    /// Applies the map to a sparse vector (tests and the evaluator use this).
    pub fn apply(&self, vector: &BTreeMap<BasisKey, CycQ>) -> BTreeMap<BasisKey, CycQ> {
        let r = self.modulus();
        let mut out: BTreeMap<BasisKey, CycQ> = BTreeMap::new();
        for ((o, i), v) in &self.entries {
            if let Some(c) = vector.get(i) {
                let term = v.mul(c);
                if term.is_zero() {
                    continue;
                }
                let slot = out.entry(o.clone()).or_insert_with(|| CycQ::zero(r));
                *slot = slot.add(&term);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The scalar content of a map between empty words.
    pub fn as_scalar(&self) -> Option<CycQ> {
        if !self.domain.is_empty() || !self.codomain.is_empty() {
            return None;
        }
        Some(self.entry(&Vec::new(), &Vec::new()))
    }
}

/// The symmetric braiding V (x) W -> W (x) V with Koszul sign: -1 exactly
/// when both basis vectors are odd.
pub fn braiding(v: &GradedSpace, w: &GradedSpace) -> GradedMap {
    assert_eq!(v.modulus(), w.modulus());
    let r = v.modulus();
    let domain = WordSpace::from_slots(r, vec![v.clone(), w.clone()]);
    let codomain = WordSpace::from_slots(r, vec![w.clone(), v.clone()]);
    let mut entries = BTreeMap::new();
    for key in domain.basis() {
        let (dv, iv) = key[0];
        let (dw, iw) = key[1];
        let sign = if v.parity_of(dv, iv) == Parity::Odd && w.parity_of(dw, iw) == Parity::Odd {
            CycQ::from_int(r, -1)
        } else {
            CycQ::one(r)
        };
        entries.insert((vec![(dw, iw), (dv, iv)], key), sign);
    }
    GradedMap { domain, codomain, entries }
}

/// Superdimension of the piece at degree `a`, as an exact scalar.
pub fn sdim(space: &GradedSpace, a: i64) -> CycQ {
    CycQ::from_int(space.modulus(), space.sdim(a))
}
