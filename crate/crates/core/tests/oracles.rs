//! Computations checked against independent reference paths: exact rational
//! Bernoulli numbers, brute-force Dirichlet series, difference quotients and
//! the classical log-gamma formula.

mod common;

use num_bigint::BigInt;
use num_complex::Complex64;

use qlp_core::archimedean::{partial_zeta_h, q_l_direct, SeriesBudget};
use qlp_core::gamma::diamond_log_gamma;
use qlp_core::padic::iwasawa_log;
use qlp_core::padic_l::{dlds_at_0, h_pq, l_pq, residue_sum, interpolation_formula};
use qlp_core::qbernoulli::{generalized_qbernoulli, qbernoulli_numbers};
use qlp_core::{
    ComplexDomain, DirichletCharacter, LpContext, PadicDomain, PadicNumber, PrecisionPolicy, QParam, SJet,
    ValueDomain,
};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn quad4() -> DirichletCharacter {
    DirichletCharacter::from_generators(4, &[(3, 1)], 2).unwrap()
}

fn ctx(p: u64, q: i64, h: i64, chi: DirichletCharacter, big_f: u64, target: i64) -> LpContext {
    LpContext::new(p, q, 1, h, chi, big_f, PrecisionPolicy::with_target(target)).unwrap()
}

#[test]
fn classical_numbers_match_exact_rationals() {
    let exact = common::bernoulli_rational(20);
    let d = PadicDomain::new(7, 60).unwrap();
    let b = qbernoulli_numbers(20, &QParam::unit(&d), 0, &d).unwrap();
    for (n, r) in exact.iter().enumerate() {
        let want = common::padic_of_rational(7, r, 60);
        assert!(b[n].agreement(&want) >= 40, "B_{n}");
    }
    let cd = ComplexDomain;
    let qp = QParam::new(&cd, c(0.5)).unwrap();
    let b = qbernoulli_numbers(14, &qp, 0, &cd).unwrap();
    for (n, r) in exact.iter().take(15).enumerate() {
        let want = common::rational_to_f64(r);
        assert!((b[n] - c(want)).norm() < 1e-9 * want.abs().max(1.0), "B_{n}");
    }
}

#[test]
fn generalized_numbers_at_h_zero_match_generating_function() {
    let chars = [
        DirichletCharacter::legendre(3).unwrap(),
        quad4(),
        DirichletCharacter::legendre(5).unwrap(),
        DirichletCharacter::from_generators(12, &[(5, 1), (7, 0)], 2).unwrap().primitive(),
    ];
    let d = ComplexDomain;
    let qp = QParam::new(&d, c(0.4)).unwrap();
    for chi in &chars {
        for n in 0..=7usize {
            let exact = common::rational_to_f64(&common::generalized_bernoulli_real(n, chi));
            let got = generalized_qbernoulli(n, &qp, 0, chi, &c(0.0), &d).unwrap();
            assert!((got - c(exact)).norm() < 1e-8 * exact.abs().max(1.0), "f={} n={n}", chi.modulus());
        }
    }
    // same in Q_5 for the quadratic character mod 4, exactly
    let pd = PadicDomain::new(5, 60).unwrap();
    let qp = QParam::new(&pd, pd.rational(6, 1).unwrap()).unwrap();
    for n in 0..=7usize {
        let exact = common::padic_of_rational(5, &common::generalized_bernoulli_real(n, &quad4()), 60);
        let got = generalized_qbernoulli(n, &qp, 0, &quad4(), &pd.zero(), &pd).unwrap();
        assert!(got.agreement(&exact) >= 40, "n={n}");
    }
}

#[test]
fn direct_series_is_sum_of_partial_zetas() {
    let budget = SeriesBudget::default();
    for chi in [DirichletCharacter::trivial(), quad4(), DirichletCharacter::mod_prime(5, 4, 1).unwrap()] {
        for h in [0i64, 1, 2] {
            for s in [c(2.5), c(3.0), Complex64::new(2.0, 1.5)] {
                let f = chi.modulus();
                let whole = q_l_direct(s, &chi, c(0.5), h, &budget).unwrap();
                let mut parts = c(0.0);
                for a in 1..=f {
                    let w = chi.eval_complex(a as i64);
                    if w.norm() > 0.0 {
                        parts += w * partial_zeta_h(s, a as f64, f, c(0.5), h, &budget).unwrap();
                    }
                }
                assert!((whole - parts).norm() < 1e-10, "f={f} h={h} s={s}");
            }
        }
    }
}

#[test]
fn direct_series_matches_brute_force() {
    let budget = SeriesBudget::default();
    let chi = quad4();
    let q = 0.5f64;
    let s = 3.0f64;
    let (mut first, mut second) = (0.0, 0.0);
    for n in 1..400 {
        let w = chi.eval_complex(n).re * q.powi(n as i32);
        first += w * (n as f64).powf(-s);
        second += w * (n as f64).powf(1.0 - s);
    }
    let want = first - q.ln() / (s - 1.0) * second;
    let got = q_l_direct(c(s), &chi, c(q), 1, &budget).unwrap();
    assert!((got - c(want)).norm() < 1e-12);
}

#[test]
fn interpolation_at_t_divisible_by_p() {
    let p = 5u64;
    let cx = ctx(p, 6, 1, quad4(), 20, 25);
    let t = PadicNumber::from_i64(p, 10, 200);
    for n in 1..=4usize {
        let s = PadicNumber::from_i64(p, 1 - n as i64, 200);
        let lhs = l_pq(&s, &t, &cx).unwrap();
        let rhs = interpolation_formula(n, &t, &cx).unwrap();
        assert!(lhs.agreement(&rhs) >= 25 - 8, "n={n}");
    }
}

#[test]
fn l_function_is_sum_of_partial_functions() {
    let p = 5u64;
    let target = 20;
    let chi = DirichletCharacter::legendre(5).unwrap();
    let cx = ctx(p, 6, 2, chi.clone(), 5, target);
    let s = PadicNumber::from_rational_prec(p, &BigInt::from(1), &BigInt::from(2), 200).unwrap();
    let t = PadicNumber::from_i64(p, 3, 200);
    let whole = l_pq(&s, &t, &cx).unwrap();
    let pol = PrecisionPolicy::with_target(target + 20);
    let q = PadicNumber::from_i64(p, 6, 200);
    let mut sum = PadicNumber::zero(p, 200);
    for a in 1..5i64 {
        let y = PadicNumber::from_i64(p, a + 5 * 3, 200);
        let w = &chi.eval_padic(a, p, &pol).unwrap() * &q.pow(2 * a as u32);
        sum = &sum + &(&w * &h_pq(&s, &y, &cx).unwrap());
    }
    assert!(whole.agreement(&sum) >= target - 2);
}

#[test]
fn jet_derivative_matches_difference_quotients() {
    let p = 3u64;
    let target = 30;
    let cx = ctx(p, 4, 1, quad4(), 12, target);
    let s0 = PadicNumber::from_rational_prec(p, &BigInt::from(1), &BigInt::from(2), 200).unwrap();
    let t = PadicNumber::zero(p, 200);
    let jet = SJet::variable(s0.clone(), PadicNumber::one(p, 200));
    let der = l_pq(&jet, &t, &cx).unwrap().der;
    let base = l_pq(&s0, &t, &cx).unwrap();
    let mut last = i64::MIN;
    for k in [3u32, 5, 7] {
        let eps = 3i64.pow(k);
        let s1 = &s0 + &PadicNumber::from_i64(p, eps, 200);
        let quotient = (&l_pq(&s1, &t, &cx).unwrap() - &base).div_i64(eps).unwrap();
        let v = (&quotient - &der).valuation_lower_bound();
        assert!(v >= k as i64 - 2, "k={k}: v={v}");
        assert!(v > last);
        last = v;
    }
}

#[test]
fn continuity_at_scale() {
    let p = 7u64;
    let cx = ctx(p, 8, 1, DirichletCharacter::trivial(), 7, 25);
    let s = PadicNumber::from_rational_prec(p, &BigInt::from(2), &BigInt::from(3), 200).unwrap();
    let t = PadicNumber::from_i64(p, 1, 200);
    let a = l_pq(&s, &t, &cx).unwrap();
    for n in [4u32, 8] {
        let shifted = &s + &PadicNumber::from_i64(p, 7i64.pow(n), 200);
        let b = l_pq(&shifted, &t, &cx).unwrap();
        assert!(a.agreement(&b) >= n as i64 - 2, "N={n}");
    }
}

#[test]
fn classical_derivative_formula_at_q_one() {
    // h = 0, q = 1: d/ds L_p(0, t) = sum chi_1(a) G_p((a + pt)/F) - L_p(0, t) log_p F
    let p = 5u64;
    let target = 20;
    for chi in [DirichletCharacter::trivial(), quad4(), DirichletCharacter::legendre(5).unwrap()] {
        let big_f = num_integer::lcm(p, chi.modulus());
        let cx = ctx(p, 1, 0, chi.clone(), big_f, target);
        for t in [0i64, 2] {
            let tp = PadicNumber::from_i64(p, t, 200);
            let der = dlds_at_0(&tp, &cx).unwrap();
            let (modulus, chi1) = common::twisted_values(&chi, 1, p, target + 30);
            assert_eq!(modulus, big_f);
            let pol = PrecisionPolicy::with_target(target + 10);
            let mut sum = PadicNumber::zero(p, 200);
            for (i, w) in chi1.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                let a = i as i64 + 1;
                let x = PadicNumber::from_rational_prec(
                    p,
                    &BigInt::from(a + p as i64 * t),
                    &BigInt::from(big_f),
                    200,
                )
                .unwrap();
                sum = &sum + &(w * &diamond_log_gamma(&x, &pol).unwrap());
            }
            let l0 = l_pq(&PadicNumber::zero(p, 200), &tp, &cx).unwrap();
            let log_f = iwasawa_log(&PadicNumber::from_i64(p, big_f as i64, 200), &pol).unwrap();
            let want = &sum - &(&l0 * &log_f);
            assert!(der.agreement(&want) >= target - 2, "f={} t={t}", chi.modulus());
        }
    }
}

#[test]
fn residue_of_a_twisted_function() {
    let p = 5u64;
    let target = 25;
    let cx = ctx(p, 6, 1, quad4(), 20, target);
    let res = residue_sum(&cx).unwrap();
    for k in [3u32, 5] {
        let pk = 5i64.pow(k);
        let l = l_pq(&PadicNumber::from_i64(p, 1 + pk, 200), &PadicNumber::zero(p, 200), &cx).unwrap();
        let v = (&l.mul_i64(pk) - &res).valuation_lower_bound();
        assert!(v >= k as i64 - 2, "k={k}: v={v}");
    }
}

#[test]
fn kubota_leopoldt_at_other_primes() {
    for p in [3u64, 7] {
        let target = 25;
        for chi in [DirichletCharacter::trivial(), quad4()] {
            let big_n = num_integer::lcm(p, chi.modulus());
            let cx = ctx(p, 1, 0, chi.clone(), big_n, target);
            for n in 1..=4usize {
                let l = l_pq(
                    &PadicNumber::from_i64(p, 1 - n as i64, 200),
                    &PadicNumber::zero(p, 200),
                    &cx,
                )
                .unwrap();
                let (m, vals) = common::twisted_values(&chi, n as i64, p, target + 30);
                let b = common::generalized_bernoulli_eq1(n, m, &vals, p, (target + 30) as u32);
                let want = b.div_i64(-(n as i64)).unwrap();
                assert!(l.agreement(&want) >= target, "p={p} f={} n={n}", chi.modulus());
            }
        }
    }
}
