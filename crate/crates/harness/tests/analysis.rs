use apem_harness::{fit_slope, l1_relative_error, restrict_fine_to_coarse, HarnessError};
use proptest::prelude::*;

#[test]
fn l1_error_examples() {
    assert_eq!(l1_relative_error(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
    let e = l1_relative_error(&[1.1, 0.9], &[1.0, 1.0]).unwrap();
    assert!((e - 0.1).abs() < 1e-15, "{e}");
}

#[test]
fn l1_error_rejects_bad_input() {
    assert!(matches!(l1_relative_error(&[1.0], &[0.0]), Err(HarnessError::Config(_))));
    assert!(matches!(l1_relative_error(&[1.0, 2.0], &[1.0]), Err(HarnessError::Config(_))));
}

#[test]
fn restriction_examples() {
    assert_eq!(restrict_fine_to_coarse(&[1.0, 3.0], 2).unwrap(), vec![2.0]);
    assert_eq!(restrict_fine_to_coarse(&[0.7; 12], 4).unwrap(), vec![0.7; 3]);
    assert!(restrict_fine_to_coarse(&[1.0, 2.0, 3.0], 2).is_err());
    assert!(restrict_fine_to_coarse(&[1.0], 0).is_err());
}

#[test]
fn restriction_of_linear_profile_gives_exact_cell_averages() {
    // f(x) = 3x - 1 on [0, 1]; fine cell averages are the midpoint values,
    // coarse averages are (1/H)∫ f over each coarse cell.
    let (n_fine, r) = (60, 5);
    let hf = 1.0 / n_fine as f64;
    let f = |x: f64| 3.0 * x - 1.0;
    let fine: Vec<f64> = (0..n_fine).map(|k| f((k as f64 + 0.5) * hf)).collect();
    let coarse = restrict_fine_to_coarse(&fine, r).unwrap();
    let hc = r as f64 * hf;
    let antiderivative = |x: f64| 1.5 * x * x - x;
    for (j, c) in coarse.iter().enumerate() {
        let (a, b) = (j as f64 * hc, (j + 1) as f64 * hc);
        let exact = (antiderivative(b) - antiderivative(a)) / hc;
        assert!((c - exact).abs() < 1e-14, "cell {j}: {c} vs {exact}");
    }
}

#[test]
fn slope_examples() {
    let h = [0.1, 0.05, 0.025, 0.0125];
    let e: Vec<f64> = h.iter().map(|v: &f64| v.sqrt()).collect();
    assert!((fit_slope(&h, &e).unwrap() - 0.5).abs() < 1e-12);
    let e: Vec<f64> = h.iter().map(|v| 7.0 * v).collect();
    assert!((fit_slope(&h, &e).unwrap() - 1.0).abs() < 1e-12);
    assert!(fit_slope(&[0.1], &[1.0]).is_err());
    assert!(fit_slope(&[0.1, 0.1], &[1.0, 2.0]).is_err());
    assert!(fit_slope(&[0.1, 0.05], &[1.0, 0.0]).is_err());
}

proptest! {
    #[test]
    fn l1_error_is_scale_invariant(
        pairs in prop::collection::vec((0.1f64..10.0, -10.0f64..10.0), 1..40),
        alpha in prop::sample::select(vec![-3.0, 0.5, 2.0, 1e3]),
    ) {
        let reference: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let num: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let e = l1_relative_error(&num, &reference).unwrap();
        let sr: Vec<f64> = reference.iter().map(|v| alpha * v).collect();
        let sn: Vec<f64> = num.iter().map(|v| alpha * v).collect();
        let es = l1_relative_error(&sn, &sr).unwrap();
        prop_assert!((e - es).abs() <= 1e-12 * e.max(1.0));
    }

    #[test]
    fn restriction_preserves_total(fine in prop::collection::vec(-5.0f64..5.0, 1..10), r in 1usize..6) {
        let fine: Vec<f64> = fine.iter().flat_map(|v| std::iter::repeat_n(*v, r).enumerate().map(|(i, x)| x + i as f64)).collect();
        let coarse = restrict_fine_to_coarse(&fine, r).unwrap();
        let total_fine: f64 = fine.iter().sum();
        let total_coarse: f64 = coarse.iter().sum::<f64>() * r as f64;
        prop_assert!((total_fine - total_coarse).abs() < 1e-10);
    }

    #[test]
    fn slope_recovers_power_laws(p in 0.1f64..3.0, c in 0.01f64..100.0) {
        let h: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
        let e: Vec<f64> = h.iter().map(|v| c * v.powf(p)).collect();
        prop_assert!((fit_slope(&h, &e).unwrap() - p).abs() < 1e-10);
    }
}
