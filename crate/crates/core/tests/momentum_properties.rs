use locus_core::momentum::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn blob(g: &GridSpec, center: [f64; 3], alpha: f64, phase: [f64; 3]) -> Wavepacket {
    let samples = (0..g.len())
        .map(|i| {
            let k = g.momentum(i);
            let d2: f64 = (0..3).map(|a| (k[a] - center[a]).powi(2)).sum();
            let arg: f64 = (0..3).map(|a| phase[a] * k[a]).sum();
            Complex64::from_polar((-alpha * d2).exp(), arg)
        })
        .collect();
    Wavepacket::from_samples(g, samples).unwrap()
}

fn center() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::TAU, -0.8f64..0.8, 2.0f64..3.0).prop_map(
        |(phi, c, r): (f64, f64, f64)| {
            let s = (1.0 - c * c).sqrt();
            [r * s * phi.cos(), r * s * phi.sin(), r * c]
        },
    )
}

fn phase() -> impl Strategy<Value = [f64; 3]> {
    [-0.5f64..0.5, -0.5f64..0.5, -0.5f64..0.5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn position_is_hermitian_away_from_origin(c1 in center(), c2 in center(), p1 in phase(), p2 in phase(), axis in 0usize..3) {
        let g = GridSpec::new(6.0, 65).unwrap();
        let phi = blob(&g, c1, 1.5, p1);
        let psi = blob(&g, c2, 1.5, p2);
        let q = OperatorId::Q(axis);
        let lhs = inner(&g, &phi.samples, &apply_operator(q, &psi.samples, &g));
        let rhs = inner(&g, &psi.samples, &apply_operator(q, &phi.samples, &g)).conj();
        let h2 = g.spacing().powi(2);
        prop_assert!((lhs - rhs).norm() < 0.5 * h2, "{lhs} vs {rhs}");
    }

    #[test]
    fn expectation_tensor_has_unit_trace(k0 in [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0], alpha in 0.5f64..1.0) {
        // α ≤ 1 keeps the exclusion ball (radius 2h) under the 10% leak limit
        let g = GridSpec::new(5.0, 65).unwrap();
        let p = make_gaussian(alpha, k0, &g).unwrap();
        let t = expectation_tensor(&p);
        prop_assert!((t[0][0] + t[1][1] + t[2][2] - 1.0).abs() < 1e-6);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(t[i][j], t[j][i]);
            }
        }
        let u = uncertainty_report(&p).unwrap();
        prop_assert!((u.trace_check - 0.5).abs() < 1e-6);
    }

    #[test]
    fn parallel_sums_do_not_depend_on_split(n in 1usize..50_000) {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let serial = pairwise_sum(&(0..n).map(f).collect::<Vec<_>>());
        prop_assert_eq!(par_sum(n, f).to_bits(), par_sum(n, f).to_bits());
        prop_assert!((par_sum(n, f) - serial).abs() < 1e-12);
    }
}

#[test]
fn uncertainty_reports_are_reproducible() {
    let g = GridSpec::new(4.5, 49).unwrap();
    let p = make_gaussian(1.0, [0.0, 0.3, 0.4], &g).unwrap();
    let a = serde_json::to_string(&uncertainty_report(&p).unwrap()).unwrap();
    let b = serde_json::to_string(&uncertainty_report(&p).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn robertson_product_exceeds_bound_on_each_axis() {
    let g = GridSpec::new(4.5, 65).unwrap();
    for k0 in [[0.0; 3], [0.0, 0.0, 0.5], [0.3, -0.2, 0.1]] {
        let u = uncertainty_report(&make_gaussian(1.0, k0, &g).unwrap()).unwrap();
        for i in 0..3 {
            assert!(u.dq[i] * u.dp[i] - u.bound_tensor[i][i] >= -1e-6);
        }
    }
}

#[test]
fn radial_solution_matches_closed_form_over_a_wide_range() {
    let c = radial_eigenfunction_check(1.3, (0.1, 10.0), 4000).unwrap();
    assert!(c.max_rel_error <= 1e-8, "{c:?}");
}
