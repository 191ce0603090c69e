//! Invariant computations against the known closed forms of the catalog
//! families, the two-route torus identity, choice independence of the
//! higher-genus invariants, the pullback bookkeeping, and character
//! arithmetic versus sums and tensor products.

mod common;

use common::{catalog_at, Lcg};
use rspin::catalog::{make_arf, make_b, make_c, make_d, make_e, make_f};
use rspin::cyclotomic::{gcd_u32, rat, rat_int, CycQ, Rat};
use rspin::frobenius::{direct_sum, graded_tensor};
use rspin::graded::sdim;
use rspin::invariants::{
    alpha_even, alpha_odd, beta_via_dimension, beta_via_torus, char_add, char_mul, char_scale,
    handle, handle_pm, profile, sphere_invariant, AlphaTable, Sign,
};

fn q(r: u32, n: i64, d: i64) -> CycQ {
    CycQ::from_rat(r, rat(n, d))
}

fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = rat_int(1);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[test]
fn sphere_examples() {
    let e2 = make_e(1, rat_int(2)).unwrap();
    assert_eq!(sphere_invariant(&e2).unwrap(), q(1, 1, 2));

    let a2 = make_arf(2).unwrap();
    assert_eq!(sphere_invariant(&a2).unwrap(), CycQ::from_int(2, 2));

    let f1 = make_f(1).unwrap();
    assert!(sphere_invariant(&f1).unwrap().is_zero());

    let b3 = make_b(3).unwrap();
    assert!(sphere_invariant(&b3).is_err());
}

#[test]
fn beta_by_dimension_examples() {
    let b5 = make_b(5).unwrap();
    assert_eq!(beta_via_dimension(&b5, 5).unwrap(), CycQ::from_int(5, 6));
    assert_eq!(beta_via_dimension(&b5, 1).unwrap(), CycQ::one(5));
    assert!(beta_via_dimension(&b5, 2).is_err());

    let a4 = make_arf(4).unwrap();
    assert_eq!(beta_via_dimension(&a4, 2).unwrap(), CycQ::from_int(4, -1));
    assert_eq!(beta_via_dimension(&a4, 1).unwrap(), CycQ::one(4));

    for r in [1u32, 2, 3, 6] {
        let f = make_f(r).unwrap();
        for d in rspin::cyclotomic::divisors(r) {
            assert_eq!(beta_via_dimension(&f, d).unwrap(), CycQ::from_int(r, 2));
        }
    }
}

#[test]
fn torus_route_equals_dimension_route_exhaustively() {
    // beta_via_torus(a,b) = beta_via_dimension(gcd(a,b,r)) on all of (Z/r)^2
    for r in 1..=12u32 {
        for alg in catalog_at(r) {
            for a in 0..r {
                for b in 0..r {
                    let d = gcd_u32(gcd_u32(a, b), r);
                    let d = if d == 0 { r } else { d };
                    let via_torus = beta_via_torus(&alg, a as i64, b as i64);
                    let via_dim = beta_via_dimension(&alg, d).unwrap();
                    assert_eq!(
                        via_torus, via_dim,
                        "torus ({a},{b}) vs divisor {d} on {} at r={r}",
                        alg.label()
                    );
                }
            }
        }
    }
}

#[test]
fn handle_examples() {
    // F at r=1: h(1) = 2x, h(x) = 0
    let f1 = make_f(1).unwrap();
    let h = handle(&f1, 0, 0, 0).unwrap().map;
    assert_eq!(h.entry(&vec![(0, 1)], &vec![(0, 0)]), CycQ::from_int(1, 2));
    assert!(h.entry(&vec![(0, 0)], &vec![(0, 0)]).is_zero());
    assert!(h.entry(&vec![(0, 0)], &vec![(0, 1)]).is_zero());
    assert!(h.entry(&vec![(0, 1)], &vec![(0, 1)]).is_zero());
    // squared handle vanishes
    assert!(h.compose(&h).unwrap().is_zero());

    // B: h_x = 0 for x != 1
    for r in [3i64, 5] {
        let b = make_b(r as u32).unwrap();
        for x in 0..r {
            let h = handle(&b, x, 0, x - 1).unwrap().map;
            if x == 1 {
                assert!(!h.is_zero());
            } else {
                assert!(h.is_zero(), "h_{x} on B({r})");
            }
        }
    }

    // E_kappa: the handle is multiplication by kappa in every degree
    let e = make_e(5, rat(3, 2)).unwrap();
    for x in 0..5i64 {
        let h = handle(&e, x, 0, x - 1).unwrap().map;
        let key_out = vec![(rspin::graded::canon(5, x - 2), 0u32)];
        let key_in = vec![(rspin::graded::canon(5, x), 0u32)];
        assert_eq!(h.entry(&key_out, &key_in), q(5, 3, 2));
    }

    // degree bookkeeping is enforced: 1+1+1 = 0 != 1 (mod 3)
    assert!(handle(&make_b(3).unwrap(), 1, 1, 1).is_err());
    assert!(handle_pm(&make_arf(2).unwrap(), 0, 1, Sign::Plus).is_err());
}

#[test]
fn alpha_odd_examples() {
    // E_kappa: alpha_n = kappa^(rn)
    for r in [1u32, 3, 5] {
        let kappa = rat(2, 3);
        let e = make_e(r, kappa.clone()).unwrap();
        for n in 1..=3u32 {
            assert_eq!(
                alpha_odd(&e, n, 1, None).unwrap(),
                CycQ::from_rat(r, rat_pow(&kappa, r * n)),
                "alpha_{n} of E at r={r}"
            );
        }
    }
    // B: identically zero
    for r in [3u32, 5, 9] {
        let b = make_b(r).unwrap();
        for n in 1..=4u32 {
            assert!(alpha_odd(&b, n, 1, None).unwrap().is_zero());
        }
    }
    // additivity oracle: E_2 (+) E_3 at r=3, n=1 gives 2^3 + 3^3 = 35
    let s = direct_sum(
        &make_e(3, rat_int(2)).unwrap(),
        &make_e(3, rat_int(3)).unwrap(),
    )
    .unwrap();
    assert_eq!(alpha_odd(&s, 1, 1, None).unwrap(), CycQ::from_int(3, 35));

    // even moduli are rejected
    assert!(alpha_odd(&make_arf(2).unwrap(), 1, 1, None).is_err());
}

#[test]
fn alpha_even_examples() {
    // Arf: alpha_n^(+-) = +-2^(-nr/2)
    for r in [2u32, 4] {
        let a = make_arf(r).unwrap();
        for n in 1..=4u32 {
            let plus = alpha_even(&a, n, Sign::Plus, 1).unwrap();
            let minus = alpha_even(&a, n, Sign::Minus, 1).unwrap();
            let magnitude = Rat::new(1.into(), rat_pow(&rat_int(2), n * r / 2).numer().clone());
            assert_eq!(plus, CycQ::from_rat(r, magnitude.clone()), "alpha_{n}^+ of A({r})");
            assert_eq!(minus, CycQ::from_rat(r, -magnitude), "alpha_{n}^- of A({r})");
        }
    }
    // C: identically zero
    for r in [4u32, 6] {
        let c = make_c(r).unwrap();
        for n in 1..=3u32 {
            assert!(alpha_even(&c, n, Sign::Plus, 1).unwrap().is_zero());
            assert!(alpha_even(&c, n, Sign::Minus, 1).unwrap().is_zero());
        }
    }
    // multiplicativity oracle: A (x) E_2 at r=2, n=1: +-(1/2)*2 = +-1
    let t = graded_tensor(&make_arf(2).unwrap(), &make_e(2, rat_int(2)).unwrap()).unwrap();
    assert_eq!(alpha_even(&t, 1, Sign::Plus, 1).unwrap(), CycQ::one(2));
    assert_eq!(alpha_even(&t, 1, Sign::Minus, 1).unwrap(), CycQ::from_int(2, -1));

    assert!(alpha_even(&make_b(3).unwrap(), 1, Sign::Plus, 1).is_err());
}

#[test]
fn alpha_is_independent_of_base_degree_and_choices() {
    let mut rng = Lcg(0x5eed);
    for r in [3u32, 5, 7, 9] {
        for alg in catalog_at(r) {
            let reference = alpha_odd(&alg, 2, 1, None).unwrap();
            for x in 0..r as i64 {
                assert_eq!(
                    alpha_odd(&alg, 2, x, None).unwrap(),
                    reference,
                    "base degree {x} on {}",
                    alg.label()
                );
            }
            for _ in 0..10 {
                let choices: Vec<i64> = (0..r).map(|_| rng.int(0, r as i64 - 1)).collect();
                assert_eq!(
                    alpha_odd(&alg, 2, 1, Some(&choices)).unwrap(),
                    reference,
                    "choices {choices:?} on {}",
                    alg.label()
                );
            }
        }
    }
}

#[test]
fn alpha_even_base_degrees_agree_under_the_arf_calibration() {
    // all odd bases give the same labeled values; even bases too
    for r in [2u32, 4, 6, 8] {
        for alg in catalog_at(r) {
            let plus = alpha_even(&alg, 1, Sign::Plus, 1).unwrap();
            let minus = alpha_even(&alg, 1, Sign::Minus, 1).unwrap();
            for x in 0..r as i64 {
                let p = alpha_even(&alg, 1, Sign::Plus, x).unwrap();
                let m = alpha_even(&alg, 1, Sign::Minus, x).unwrap();
                assert_eq!((p, m), (plus.clone(), minus.clone()), "base {x} on {}", alg.label());
            }
        }
    }
}

#[test]
fn handle_sign_identities() {
    // h^-_{x-2} h^+_x = h^+_{x-2} h^-_x and h^+_{x-2} h^+_x = h^-_{x-2} h^-_x
    for r in [2u32, 4, 6, 8] {
        for alg in catalog_at(r) {
            for x in 0..r as i64 {
                let hp_x = handle_pm(&alg, x, 0, Sign::Plus).unwrap().map;
                let hm_x = handle_pm(&alg, x, 0, Sign::Minus).unwrap().map;
                let hp_lower = handle_pm(&alg, x - 2, 0, Sign::Plus).unwrap().map;
                let hm_lower = handle_pm(&alg, x - 2, 0, Sign::Minus).unwrap().map;
                assert_eq!(
                    hm_lower.compose(&hp_x).unwrap(),
                    hp_lower.compose(&hm_x).unwrap(),
                    "mixed identity at x={x} on {}",
                    alg.label()
                );
                assert_eq!(
                    hp_lower.compose(&hp_x).unwrap(),
                    hm_lower.compose(&hm_x).unwrap(),
                    "pure identity at x={x} on {}",
                    alg.label()
                );
            }
        }
    }
}

#[test]
fn profile_of_arf_matches_the_genus_formula() {
    // Z(Sigma_g) = 2^(1-g) (-1)^Arf at r=2 for g in {0,1,2,3}
    let a = make_arf(2).unwrap();
    let p = profile(&a, 2).unwrap();
    // g = 0: the sphere, one class, value 2^1
    assert_eq!(p.sphere.as_ref().unwrap(), &CycQ::from_int(2, 2));
    // g = 1: tori indexed by divisors; 2^0 (+1) for d=1 (Arf 0), 2^0 (-1) for d=2
    assert_eq!(p.beta[&1], CycQ::one(2));
    assert_eq!(p.beta[&2], CycQ::from_int(2, -1));
    // g = n+1 for n in {1,2}: values +-2^(1-g) = +-2^(-n)
    let AlphaTable::Even { plus, minus } = &p.alpha else {
        panic!("even modulus carries signed alpha sequences")
    };
    assert_eq!(plus[0], q(2, 1, 2));
    assert_eq!(minus[0], q(2, -1, 2));
    assert_eq!(plus[1], q(2, 1, 4));
    assert_eq!(minus[1], q(2, -1, 4));
}

#[test]
fn profile_of_d9_and_unit_profile() {
    let d9 = profile(&make_d(9).unwrap(), 1).unwrap();
    assert_eq!(d9.beta[&1], CycQ::from_int(9, 2));
    assert_eq!(d9.beta[&3], CycQ::from_int(9, 5));
    assert_eq!(d9.beta[&9], CycQ::from_int(9, 14));

    let e1 = profile(&make_e(5, rat_int(1)).unwrap(), 6).unwrap();
    for v in e1.beta.values() {
        assert!(v.is_one());
    }
    let AlphaTable::Odd { values } = &e1.alpha else { panic!("odd modulus") };
    assert!(values.iter().all(CycQ::is_one));
}

#[test]
fn b_and_c_profiles_match_their_closed_forms() {
    for r in [3u32, 5, 9, 15] {
        let p = profile(&make_b(r).unwrap(), 6).unwrap();
        for (d, v) in &p.beta {
            let expect = if *d == r { r as i64 + 1 } else { 1 };
            assert_eq!(v, &CycQ::from_int(r, expect), "beta_{d} of B({r})");
        }
        let AlphaTable::Odd { values } = &p.alpha else { panic!() };
        assert!(values.iter().all(CycQ::is_zero), "alpha of B({r})");
    }
    for r in [4u32, 6, 8] {
        let p = profile(&make_c(r).unwrap(), 4).unwrap();
        for (d, v) in &p.beta {
            let expect = if *d == r { 2 * r as i64 + 1 } else { 1 };
            assert_eq!(v, &CycQ::from_int(r, expect), "beta_{d} of C({r})");
        }
        let AlphaTable::Even { plus, minus } = &p.alpha else { panic!() };
        assert!(plus.iter().all(CycQ::is_zero) && minus.iter().all(CycQ::is_zero));
    }
}

#[test]
fn e_family_profiles_for_both_parities() {
    let kappa = rat(3, 1);
    for r in [3u32, 5] {
        let p = profile(&make_e(r, kappa.clone()).unwrap(), 4).unwrap();
        let AlphaTable::Odd { values } = &p.alpha else { panic!() };
        for (i, v) in values.iter().enumerate() {
            assert_eq!(v, &CycQ::from_rat(r, rat_pow(&kappa, r * (i as u32 + 1))));
        }
    }
    for r in [2u32, 4, 6] {
        let p = profile(&make_e(r, kappa.clone()).unwrap(), 4).unwrap();
        let AlphaTable::Even { plus, minus } = &p.alpha else { panic!() };
        for (i, v) in plus.iter().enumerate() {
            assert_eq!(v, &CycQ::from_rat(r, rat_pow(&kappa, r * (i as u32 + 1) / 2)));
        }
        assert_eq!(plus, minus);
    }
}

#[test]
fn pullback_invariants_follow_the_reduction_rules() {
    let horizon = 4u32;
    // (s, r) pairs with a base algebra over s
    let cases: Vec<(u32, u32, rspin::FrobAlgebra)> = vec![
        (1, 3, make_e(1, rat_int(2)).unwrap()),
        (1, 3, make_f(1).unwrap()),
        (3, 9, make_b(3).unwrap()),
        (1, 4, make_e(1, rat_int(2)).unwrap()),
        (1, 4, make_f(1).unwrap()),
        (2, 4, make_arf(2).unwrap()),
        (3, 6, make_b(3).unwrap()),
        (2, 6, make_arf(2).unwrap()),
    ];
    for (s, r, base) in cases {
        let lifted = base.pullback(r).unwrap();
        let label = format!("{} pulled from {s} to {r}", base.label());
        // beta: the piece at degree d is the base piece at d mod s
        for d in rspin::cyclotomic::divisors(r) {
            assert_eq!(
                beta_via_dimension(&lifted, d).unwrap(),
                sdim(base.space(), (d % s) as i64).lift(r),
                "beta_{d} of {label}"
            );
        }
        // alpha: four parity cases
        for n in 1..=horizon {
            if r % 2 == 1 {
                // both odd
                let lhs = alpha_odd(&lifted, n, 1, None).unwrap();
                let rhs = alpha_odd(&base, n * (r / s), 1, None).unwrap().lift(r);
                assert_eq!(lhs, rhs, "alpha_{n} of {label}");
            } else if s % 2 == 1 {
                // r even, s odd: both signs collapse onto the base invariant
                let rhs = alpha_odd(&base, n * r / (2 * s), 1, None).unwrap().lift(r);
                assert_eq!(alpha_even(&lifted, n, Sign::Plus, 1).unwrap(), rhs, "{label}+");
                assert_eq!(alpha_even(&lifted, n, Sign::Minus, 1).unwrap(), rhs, "{label}-");
            } else {
                // both even
                let rp = alpha_even(&base, n * (r / s), Sign::Plus, 1).unwrap().lift(r);
                let rm = alpha_even(&base, n * (r / s), Sign::Minus, 1).unwrap().lift(r);
                assert_eq!(alpha_even(&lifted, n, Sign::Plus, 1).unwrap(), rp, "{label}+");
                assert_eq!(alpha_even(&lifted, n, Sign::Minus, 1).unwrap(), rm, "{label}-");
            }
        }
    }
}

#[test]
fn characters_of_sums_and_products() {
    let mut rng = Lcg(0xabcdef);
    for r in [3u32, 4] {
        let pool = catalog_at(r);
        for _ in 0..10 {
            let x = &pool[rng.below(pool.len() as u64) as usize];
            let y = &pool[rng.below(pool.len() as u64) as usize];
            let px = profile(x, 4).unwrap();
            let py = profile(y, 4).unwrap();
            let sum = profile(&direct_sum(x, y).unwrap(), 4).unwrap();
            assert_eq!(
                char_add(&px, &py).unwrap(),
                sum,
                "profile additivity for {} (+) {}",
                x.label(),
                y.label()
            );
            let prod = profile(&graded_tensor(x, y).unwrap(), 4).unwrap();
            assert_eq!(
                char_mul(&px, &py).unwrap(),
                prod,
                "profile multiplicativity for {} (x) {}",
                x.label(),
                y.label()
            );
        }
        let p = profile(&pool[0], 4).unwrap();
        assert_eq!(char_scale(&p, &rat_int(1)), p);
    }
}

#[test]
fn profile_rendering_is_stable() {
    let p = profile(&make_b(3).unwrap(), 2).unwrap();
    let json1 = p.to_json();
    let json2 = profile(&make_b(3).unwrap(), 2).unwrap().to_json();
    assert_eq!(json1, json2);
    let table = p.render_table();
    assert!(table.contains("beta_3"));
    assert!(table.contains("alpha_2"));
}

#[test]
fn profile_json_matches_the_golden_bytes() {
    // frozen canonical rendering; any drift here breaks downstream parsers
    let golden = r#"{
  "r": 3,
  "horizon": 2,
  "sphere": null,
  "beta": {
    "1": {
      "r": 3,
      "coeffs": [
        "1",
        "0"
      ]
    },
    "3": {
      "r": 3,
      "coeffs": [
        "4",
        "0"
      ]
    }
  },
  "alpha": {
    "kind": "odd",
    "values": [
      {
        "r": 3,
        "coeffs": [
          "0",
          "0"
        ]
      },
      {
        "r": 3,
        "coeffs": [
          "0",
          "0"
        ]
      }
    ]
  }
}"#;
    let p = profile(&make_b(3).unwrap(), 2).unwrap();
    assert_eq!(p.to_json(), golden);
}
