use proptest::prelude::*;
use relaxcert::goodness::{eta_1k, eta_j};
use relaxcert::instance::{random_instance, to_standard_form, Weights};
use relaxcert::lp::{self, minimize_linf_residual, LinearProgram, SignConstraint};

fn program(n: usize, coeffs: &[i32], obj: &[i32], rhs: &[i32]) -> LinearProgram {
    let mut lp = LinearProgram::new(obj[..n].iter().map(|&v| f64::from(v)).collect());
    for (r, chunk) in coeffs.chunks(n).enumerate().take(rhs.len()) {
        lp = lp.with_le(chunk.iter().map(|&v| f64::from(v)).collect(), f64::from(rhs[r]));
    }
    lp.with_le(vec![1.0; n], 8.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_is_deterministic_and_feasible(
        n in 1usize..5,
        coeffs in prop::collection::vec(-3i32..=3, 20),
        obj in prop::collection::vec(-4i32..=4, 4),
        rhs in prop::collection::vec(0i32..=6, 1..5),
    ) {
        let lp = program(n, &coeffs, &obj, &rhs);
        let a = lp::solve(&lp).unwrap();
        let b = lp::solve(&lp).unwrap();
        prop_assert_eq!(&a, &b);
        // x = 0 is feasible since every rhs is nonnegative.
        prop_assert!(a.is_optimal());
        prop_assert!(lp.max_violation(&a.x) <= 1e-8);
        prop_assert!(a.value <= 1e-12);
    }

    #[test]
    fn linf_residual_is_invariant_under_column_permutation(
        seed in 0u64..500,
        shift in 0usize..5,
        beta in 0.05f64..2.0,
    ) {
        let inst = random_instance(3, 4, seed, 2);
        let sf = to_standard_form(&inst);
        let signs: Vec<_> = (0..sf.a1.len())
            .map(|l| if l < sf.m { SignConstraint::NonNegative } else { SignConstraint::NonPositive })
            .collect();
        let d = [0.9, 0.0, 0.4, 0.7];
        let base = minimize_linf_residual(&sf.a1, &d, &signs, beta).unwrap().t;
        let perm: Vec<usize> = (0..4).map(|i| (i + shift) % 4).collect();
        let a1p: Vec<Vec<f64>> = sf.a1.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect();
        let dp: Vec<f64> = perm.iter().map(|&j| d[j]).collect();
        let permuted = minimize_linf_residual(&a1p, &dp, &signs, beta).unwrap().t;
        prop_assert!((base - permuted).abs() <= 1e-9);
    }

    #[test]
    fn eta_scales_with_weights(seed in 0u64..500, scale in 0.1f64..1.0) {
        let inst = random_instance(2, 3, seed, 2);
        let sf = to_standard_form(&inst);
        let c = Weights::new(vec![1.0, 0.8, 0.6]).unwrap();
        let cs = Weights::new(c.as_slice().iter().map(|v| v * scale).collect()).unwrap();
        let base = eta_1k(&sf, &c, 0.4).unwrap();
        let scaled = eta_1k(&sf, &cs, 0.4 * scale).unwrap();
        prop_assert!((scaled - scale * base).abs() <= 1e-8);
    }

    #[test]
    fn eta_witness_reproduces_its_residual(seed in 0u64..500, j in 0usize..3, beta in 0.05f64..1.5) {
        let inst = random_instance(3, 3, seed, 2);
        let sf = to_standard_form(&inst);
        let c = Weights::ones(3);
        let (eta, witness) = eta_j(&sf, &c, beta, j).unwrap();
        let residual = (0..sf.n)
            .map(|i| {
                let target = if i == j { 1.0 } else { 0.0 };
                let fit: f64 = sf.a1.iter().zip(&witness.q).map(|(row, q)| row[i] * q).sum();
                (target - fit).abs()
            })
            .fold(0.0, f64::max);
        prop_assert!((residual - eta).abs() <= 1e-8);
        prop_assert!(witness.satisfies(sf.m, beta, 1e-9));
    }
}
