//! Shared helpers for the integration suites.
#![allow(dead_code)] // each test binary uses a different subset

use rspin::catalog::{make_arf, make_b, make_c, make_d, make_e, make_f};
use rspin::cyclotomic::{rat, rat_int};
use rspin::FrobAlgebra;

/// Every catalog family defined at modulus r (kappa fixed to a couple of
/// representative values).
pub fn catalog_at(r: u32) -> Vec<FrobAlgebra> {
    let mut out = Vec::new();
    if r % 2 == 0 {
        out.push(make_arf(r).unwrap());
        if r > 2 {
            out.push(make_c(r).unwrap());
        }
    } else if r > 1 {
        out.push(make_b(r).unwrap());
    }
    out.push(make_e(r, rat_int(1)).unwrap());
    out.push(make_e(r, rat_int(2)).unwrap());
    out.push(make_e(r, rat(-1, 2)).unwrap());
    out.push(make_f(r).unwrap());
    if r > 1 {
        out.push(make_d(r).unwrap());
    }
    out
}

/// Small deterministic generator for the randomized sweeps.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u64(&mut self) -> u64 {
        // Numerical Recipes constants
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 16
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}
