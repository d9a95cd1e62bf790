use std::sync::Arc;

use orbitbell::bounds::{analyze, DEFAULT_BUDGET};
use orbitbell::orbit::{solve_seed, LabeledOrbit};
use orbitbell::perm_group::{CosetDecomposition, CyclicSubgroup, Permutation};
use orbitbell::representation::Representation;
use orbitbell::Real;

fn bounds<T: Real>(n: usize, shifts: &[usize]) -> (usize, f64, Vec<f64>) {
    let rep = Representation::<T>::standard(n).unwrap();
    let g = rep.group();
    let cycle: Vec<usize> = (0..n - 1).collect();
    let h = CyclicSubgroup::generated_by(g, &Permutation::cycle(n, &cycle).unwrap()).unwrap();
    let orbit = LabeledOrbit::build(
        &rep,
        solve_seed::<T>(n).unwrap(),
        Arc::new(CosetDecomposition::new(g, &h)),
    )
    .unwrap();
    let orbits: Vec<_> = shifts.iter().map(|&s| orbit.product_orbit(s)).collect();
    let report = analyze(&rep, &orbits, DEFAULT_BUDGET).unwrap();
    (
        report.classical_bound,
        report.quantum_bound.as_f64(),
        report.spectrum.iter().map(|x| x.as_f64()).collect(),
    )
}

#[test]
fn f32_agrees_with_f64() {
    for (n, shifts) in [(3, vec![0]), (3, vec![0, 5]), (4, vec![7]), (4, vec![0, 3])] {
        let (c64, q64, s64) = bounds::<f64>(n, &shifts);
        let (c32, q32, s32) = bounds::<f32>(n, &shifts);
        assert_eq!(c64, c32);
        assert!((q64 - q32).abs() < 1e-4, "S_{n} {shifts:?}: {q64} vs {q32}");
        for (a, b) in s64.iter().zip(&s32) {
            assert!((a - b).abs() < 1e-4);
        }
    }
}

#[test]
fn tolerances_scale_with_precision() {
    assert!(f32::eigen_tolerance().as_f64() > f64::eigen_tolerance());
    assert!(f32::identity_tolerance().as_f64() > f64::identity_tolerance());
    assert_eq!(f32::lit(0.5).as_f64(), 0.5);
}
