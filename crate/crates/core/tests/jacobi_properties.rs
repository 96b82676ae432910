mod common;

use common::{gram_schmidt_monic, horner, random_points, rat, to_f64};
use jacobi_spectral::jacobi::{
    connection_residuals, eval, eval_analytic, eval_derivative_upto, eval_upto, leading_coeff, legendre_link_residual,
    norm_sq, weighted_energy,
};
use jacobi_spectral::quadrature::{build_rule, integrate};
use jacobi_spectral::{Basis, CoeffVector, JacobiIndex, Mapping};
use proptest::prelude::*;

const INTEGER_FAMILIES: [(f64, f64); 4] = [(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (1.0, 1.0)];

fn idx(a: f64, b: f64) -> JacobiIndex {
    JacobiIndex::new(a, b).unwrap()
}

#[test]
fn gram_schmidt_examples() {
    let j02 = gram_schmidt_monic(0, 2, 1);
    assert_eq!(j02[0], vec![rat(1, 1)]);
    assert_eq!(j02[1], vec![rat(-1, 2), rat(1, 1)]);
    let leg = gram_schmidt_monic(0, 0, 2);
    assert_eq!(leg[2], vec![rat(-1, 3), rat(0, 1), rat(1, 1)]);
}

#[test]
fn recurrence_matches_gram_schmidt() {
    for (a, b) in INTEGER_FAMILIES {
        let monic = gram_schmidt_monic(a as u32, b as u32, 12);
        let index = idx(a, b);
        for x in random_points(7, 25) {
            let table = eval_upto(index, 12, x).unwrap();
            for (n, p) in monic.iter().enumerate() {
                let want = horner(&to_f64(p), x);
                let got = table.values[n] / leading_coeff(index, n);
                assert!((got - want).abs() <= 1e-8 * want.abs().max(1.0), "({a},{b}) n={n} x={x}: {got} vs {want}");
            }
        }
    }
}

/// `2^{-n} Σ_l |C(n+α, l) C(n+β, n-l) (x+1)^l (x-1)^{n-l}|`, the size of the
/// terms the explicit sum cancels.
fn analytic_term_scale(a: f64, b: f64, n: usize, x: f64) -> f64 {
    let binom = |top: f64, k: usize| (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i + 1) as f64);
    let s: f64 = (0..=n)
        .map(|l| {
            (binom(n as f64 + a, l) * binom(n as f64 + b, n - l)).abs()
                * (x + 1.0).abs().powi(l as i32)
                * (x - 1.0).abs().powi((n - l) as i32)
        })
        .sum();
    s / 2f64.powi(n as i32)
}

#[test]
fn analytic_matches_recurrence() {
    for (a, b) in INTEGER_FAMILIES {
        let index = idx(a, b);
        for x in random_points(11, 200) {
            // the oracle is capped at degree 30
            let table = eval_upto(index, 30, x).unwrap();
            for n in 0..=30 {
                let an = eval_analytic(index, n, x).unwrap();
                let tol = (1e-9 * table.values[n].abs().max(1.0)).max(1e-14 * analytic_term_scale(a, b, n, x));
                assert!((an - table.values[n]).abs() <= tol, "({a},{b}) n={n} x={x}: {an} vs {}", table.values[n]);
            }
        }
    }
}

#[test]
fn endpoint_law() {
    let table = eval_upto(JacobiIndex::J02, 30, -1.0).unwrap();
    for n in 0..=30 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * ((n + 1) * (n + 2)) as f64 / 2.0;
        assert!((table.values[n] - want).abs() <= 1e-12 * want.abs());
    }
}

#[test]
fn orthogonality_by_quadrature() {
    for (a, b) in INTEGER_FAMILIES {
        let index = idx(a, b);
        let rule = build_rule(index, 21).unwrap();
        let tables: Vec<Vec<f64>> = rule.nodes().iter().map(|&x| eval_upto(index, 20, x).unwrap().values).collect();
        for m in 0..=20 {
            for n in 0..=20 {
                let vals: Vec<f64> = tables.iter().map(|t| t[m] * t[n]).collect();
                let q = integrate(&rule, &vals).unwrap();
                if m == n {
                    assert!((q - norm_sq(index, n)).abs() <= 1e-11 * norm_sq(index, n), "({a},{b}) n={n}");
                } else {
                    assert!(q.abs() <= 1e-11, "({a},{b}) m={m} n={n}: {q}");
                }
            }
        }
    }
}

#[test]
fn derivative_matches_finite_differences() {
    let h = 1e-6;
    for (a, b) in INTEGER_FAMILIES {
        let index = idx(a, b);
        for x in random_points(13, 40) {
            let x = x.clamp(-1.0 + h, 1.0 - h);
            let d = eval_derivative_upto(index, 15, x).unwrap();
            let up = eval_upto(index, 15, x + h).unwrap().values;
            let dn = eval_upto(index, 15, x - h).unwrap().values;
            for n in 0..=15 {
                let fd = (up[n] - dn[n]) / (2.0 * h);
                assert!((fd - d[n]).abs() <= 1e-5 * d[n].abs().max(1.0), "({a},{b}) n={n} x={x}");
            }
        }
    }
}

#[test]
fn link_identities_at_random_points() {
    let points = random_points(17, 50);
    for n in 0..=25 {
        for &x in &points {
            let scale = eval(JacobiIndex::J02, n, x).unwrap().abs().max(1.0) * (n as f64 + 2.0);
            assert!(legendre_link_residual(n, x).unwrap() <= 1e-11 * scale, "n={n} x={x}");
            for index in [JacobiIndex::J02, idx(1.0, 1.0), JacobiIndex::LEGENDRE, JacobiIndex::J01] {
                let r = connection_residuals(index, n, x).unwrap();
                assert!(r.iter().all(|v| *v <= 1e-11), "{index:?} n={n} x={x}: {r:?}");
            }
        }
    }
}

proptest! {
    #[test]
    fn energy_is_monotone_under_truncation(c in prop::collection::vec(-10.0f64..10.0, 1..30)) {
        let v = CoeffVector::new(Basis::Jacobi(JacobiIndex::J02), Mapping::Identity, c.clone()).unwrap();
        let full = weighted_energy(&v).unwrap();
        for k in 0..c.len() {
            let part = weighted_energy(&v.truncated(k)).unwrap();
            prop_assert!(part <= full * (1.0 + 1e-15));
        }
    }

    #[test]
    fn reflection_holds_for_any_point(n in 0usize..30, x in -1.0f64..1.0) {
        let direct = eval(JacobiIndex::J02, n, -x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let reflected = sign * eval(idx(2.0, 0.0), n, x).unwrap();
        prop_assert!((direct - reflected).abs() <= 1e-12 * direct.abs().max(1.0));
    }
}
