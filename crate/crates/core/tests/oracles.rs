mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use pslab_core::counting::{
    count_weighted, goldbach3_count, gowers_norm, kap_count, local_density, AffineLinearSystem, ConvexBody,
    WeightTable,
};
use pslab_core::expsum::{star_norm, taylor_phase, StarMode};
use pslab_core::nilseq::{heisenberg_step, HeisElem, HeisenbergSequence};
use pslab_core::numeric::Dd;
use pslab_core::ps_core::{ps_enumerate, ps_indicator, PsParameter, PsSet};
use pslab_core::sieve::{LambdaTable, SieveConfig};
use pslab_core::{Complex64, Sequential};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn membership_matches_enumeration() {
    for (a, b) in [(2, 3), (9, 10), (19, 20), (10, 11), (1, 2)] {
        let n_max = 30_000;
        let oracle = common::ps_members(a, b, n_max);
        let exact = PsParameter::exact(a as u64, b as u64).unwrap();
        let certified = PsParameter::certified(a as u64, b as u64, 4096).unwrap();
        let set = PsSet::build(&Sequential, n_max, &exact).unwrap();
        for n in 1..=n_max {
            let want = oracle[n as usize];
            assert_eq!(ps_indicator(n, &exact).unwrap().member, want, "γ={a}/{b} n={n}");
            assert_eq!(set.contains(n), want, "γ={a}/{b} n={n}");
            if n % 7 == 0 {
                assert_eq!(ps_indicator(n, &certified).unwrap().member, want, "certified γ={a}/{b} n={n}");
            }
        }
        let listed = ps_enumerate(1, n_max, &exact).unwrap();
        let expected: Vec<u64> = (1..=n_max).filter(|&n| oracle[n as usize]).collect();
        assert_eq!(listed, expected);
    }
}

#[test]
fn lambda_matches_trial_division() {
    let cfg = SieveConfig {
        segment_size: 1000,
        ..SieveConfig::default()
    };
    let table = LambdaTable::build(&Sequential, 1, 100_000, &cfg).unwrap();
    for n in 1..=100_000u64 {
        let want = common::von_mangoldt(n);
        let got = table.lambda(n as i64).unwrap();
        assert!((got - want).abs() <= 1e-15 * want, "n={n}: {got} vs {want}");
    }
}

fn lambda_weights(hi: u64) -> WeightTable {
    let table = LambdaTable::build(&Sequential, 1, hi, &SieveConfig::default()).unwrap();
    WeightTable::von_mangoldt(&table, hi).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

#[test]
fn counts_match_nested_loops() {
    let w = lambda_weights(1000);
    let get = |v: i64| w.get(v).unwrap();
    for x in [1, 2, 3, 10, 57, 120, 200] {
        for k in [3, 4, 5] {
            let sys = AffineLinearSystem::k_ap(k, x).unwrap();
            let body = ConvexBody::k_ap_simplex(k, x);
            let want = common::nested_count(&sys, &body, &get);
            assert!(close(count_weighted(&sys, &body, &w).unwrap(), want), "k={k} X={x}");
            assert!(close(kap_count(k, x, &w).unwrap(), want), "k={k} X={x}");
        }
        let sys = AffineLinearSystem::goldbach3(x).unwrap();
        let body = ConvexBody::goldbach_simplex(x);
        let want = common::nested_count(&sys, &body, &get);
        assert!(close(count_weighted(&sys, &body, &w).unwrap(), want), "N={x}");
        assert!(close(goldbach3_count(x, &w).unwrap(), want), "N={x}");
    }
    // A three-dimensional system with negative coefficients and constants.
    let sys = AffineLinearSystem::new(
        vec![vec![1, 1, 0], vec![2, -1, 1], vec![0, 1, 3], vec![1, 0, -1]],
        vec![5, 40, 0, 30],
        3,
        30,
    )
    .unwrap();
    let body = ConvexBody {
        lo: vec![-10, 1, 0],
        hi: vec![30, 25, 20],
        halfspaces: vec![(vec![1, 1, 1], 50)],
    };
    let ones = |v: i64| if v > 0 { get(v) } else { 0.0 };
    let want = common::nested_count(&sys, &body, &ones);
    assert!(close(count_weighted(&sys, &body, &w).unwrap(), want));
}

#[test]
fn local_densities_match_brute_force() {
    let sys = AffineLinearSystem::k_ap(3, 10).unwrap();
    for p in [2u64, 3, 5, 7, 11] {
        let mut good = 0i64;
        for n in 0..p {
            for m in 0..p {
                if (0..3).all(|i| (n + i * m) % p != 0) {
                    good += 1;
                }
            }
        }
        // p^{-2} · good · (p/(p−1))^3
        let p = p as i64;
        let want = BigRational::new((good * p).into(), ((p - 1).pow(3)).into());
        assert_eq!(local_density(&sys, p as u64).unwrap(), want, "p={p}");
        if p >= 5 {
            assert_eq!(want, BigRational::new((p * (p - 2)).into(), ((p - 1) * (p - 1)).into()));
        }
    }
}

#[test]
fn star_norm_matches_progression_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let len = rng.gen_range(1..=16);
        let vals: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0))
            .collect();
        let lo = rng.gen_range(-50..50);
        let got = star_norm(|n| vals[(n - lo) as usize], lo, lo + len as i64 - 1, StarMode::Exact).unwrap();
        assert_eq!(got.value, common::star_norm(&vals));
        let (start, step, count) = got.argmax_progression;
        let direct: Complex64 = (0..count as i64).map(|i| vals[(start + i * step - lo) as usize]).sum();
        assert_eq!(direct.norm(), got.value);
    }
}

#[test]
fn gowers_matches_fourier_and_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [5usize, 12, 31] {
        let f: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let u2 = gowers_norm(&f, 2).unwrap();
        assert!((u2 - common::gowers_u2_fourier(&f)).abs() < 1e-12, "N={n}");
        assert!((u2 - common::gowers_brute(&f, 2)).abs() < 1e-12, "N={n}");
        let u3 = gowers_norm(&f, 3).unwrap();
        assert!((u3 - common::gowers_brute(&f, 3)).abs() < 1e-12, "N={n}");
    }
}

fn rat(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap()
}

fn frac_q(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// `g0 g1^n g2^{binom(n,2)}` reduced to `[0,1)³`, from the closed form of the
/// product in exact arithmetic.
fn heisenberg_oracle(g: [[f64; 3]; 3], n: i64) -> [f64; 3] {
    let [g0, g1, g2] = g.map(|e| e.map(rat));
    let nq = BigRational::from_integer(n.into());
    let c2 = BigRational::from_integer(BigInt::from(n) * (n - 1) / 2);
    let x = &g0[0] + &nq * &g1[0];
    let y = &g0[1] + &nq * &g1[1];
    let z = &g0[2] + &nq * &g1[2] + &c2 * &g1[0] * &g1[1] + &g0[0] * &nq * &g1[1] + &c2 * &g2[2];
    let fy = y.floor();
    let z = frac_q(&(z - &x * &fy));
    [frac_q(&x), y - fy, z].map(|v| v.to_f64().unwrap())
}

#[test]
fn heisenberg_orbit_matches_exact_arithmetic() {
    let g = [
        [0.3, -1.25, 0.7],
        [core::f64::consts::SQRT_2, 3f64.sqrt(), 0.1],
        [0.0, 0.0, 5f64.sqrt()],
    ];
    let elem = |v: [f64; 3]| HeisElem::new(Dd::from_f64(v[0]), Dd::from_f64(v[1]), Dd::from_f64(v[2]));
    let seq = HeisenbergSequence::new(elem(g[0]), elem(g[1]), elem(g[2])).unwrap();
    for n in [0, 1, 2, 7, 100, 9_999, 10_000, -300] {
        let got = heisenberg_step(&seq, n);
        let want = heisenberg_oracle(g, n);
        for i in 0..3 {
            let d = (got[i] - want[i]).abs();
            assert!(d.min(1.0 - d) < 1e-8, "n={n} coord {i}: {got:?} vs {want:?}");
        }
    }
    // Step-by-step multiplication agrees with the closed form for small n.
    let q = |v: [f64; 3]| HeisElem::new(rat(v[0]), rat(v[1]), rat(v[2]));
    let mut acc = q(g[0]);
    for n in 1..=20i64 {
        acc = acc.mul(&q(g[1])).mul(&q(g[2]).pow(n - 1));
        let r = acc.reduce();
        assert_eq!([r.x, r.y, r.z].map(|v| v.to_f64().unwrap()), heisenberg_oracle(g, n));
    }
}

#[test]
fn taylor_error_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 1000 {
        let h = rng.gen_range(0.1..10.0);
        let gamma: f64 = rng.gen_range(0.05..1.95);
        if (gamma - 1.0).abs() < 1e-3 {
            continue;
        }
        let n0 = rng.gen_range(1_000u64..100_000_000);
        let l = rng.gen_range(1..=(n0 as f64).powf(0.4) as u64);
        let k = rng.gen_range(2..=8);
        let Ok(t) = taylor_phase(h, gamma, n0, l, k) else { continue };
        for _ in 0..5 {
            let ell = rng.gen_range(-(l as i64)..=l as i64);
            let exact = Dd::pow_int((n0 as i64 + ell) as u64, gamma).mul_f64(h);
            let mut q = Dd::ZERO;
            for &c in t.q.coeffs().iter().rev() {
                q = q * Dd::from_i64(ell) + Dd::from_f64(c);
            }
            let err = (exact - q).abs().to_f64();
            assert!(err <= t.error_bound + 1e-25 * exact.to_f64().abs(), "h={h} γ={gamma} n0={n0} L={l} k={k} ℓ={ell}");
        }
        checked += 1;
    }
}
