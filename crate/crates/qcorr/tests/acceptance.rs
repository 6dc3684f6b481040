//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured values. Run with `cargo test --test acceptance` and
//! add `-- --nocapture` to see the lines for passing criteria.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcorr::bell_state::{
    bloch_state, materialize, spectrum_from_tensor, tensor_from_spectrum, BellDiagonalState,
    CorrelationTensor, Spectrum,
};
use qcorr::correlation_measures::{bloch_discord_closed_form, discord, entropy};
use qcorr::css_family::{
    gap_direct, rho_of_x, trace_condition, vertex_gap, witness, x_max, random_boundary_sigma,
    VertexChoice,
};
use qcorr::oracle::{
    birkhoff_certificate, brute_force_closest_classical_two_qubit, ppt_check, MeasurementGrid,
};
use qcorr::pauli_algebra::{
    build_gamma_set, enumerate_abelian_subgroups, exponent_commutes, verify_clifford,
    AbelianSubgroup, ExponentVector,
};

fn ev(s: &str) -> ExponentVector {
    ExponentVector::from_bitstring(s).unwrap()
}

/// The n = 2 generator pairs, with the known 1011 -> 1001 index fix.
const N2_PAIRS: [(&str, &str); 15] = [
    ("1000", "0101"),
    ("0001", "0110"),
    ("1000", "0110"),
    ("0100", "0011"),
    ("1111", "1100"),
    ("1111", "1010"),
    ("1000", "0011"),
    ("0010", "0101"),
    ("1111", "1001"),
    ("0010", "1001"),
    ("0100", "1010"),
    ("0001", "1100"),
    ("0010", "1100"),
    ("0100", "1001"),
    ("0001", "1010"),
];

fn random_bloch(n: usize, rng: &mut ChaCha8Rng) -> qcorr::BlochState64 {
    loop {
        let mut coeffs: Vec<f64> = (0..(2 * n + 1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let scale: f64 = rng.gen_range(0.0..1.2);
        let total: f64 = coeffs.iter().map(|c| c.abs()).sum();
        if total > 0.0 {
            for c in coeffs.iter_mut() {
                *c *= scale / total;
            }
        }
        let t_all = coeffs.pop().unwrap();
        if let Ok(state) = bloch_state(&coeffs, t_all) {
            return state;
        }
    }
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> BellDiagonalState<f64> {
    let len = 1usize << (2 * n);
    let mut p: Vec<f64> = (0..len).map(|_| -rng.gen_range(0.0f64..1.0).ln()).collect();
    let s: f64 = p.iter().sum();
    for x in p.iter_mut() {
        *x /= s;
    }
    BellDiagonalState::from_spectrum(Spectrum::from_probabilities(n, p).unwrap()).unwrap()
}

#[test]
fn gamma_algebra() {
    let start = Instant::now();
    for d in [2usize, 4, 6] {
        let set = build_gamma_set::<f64>(d).unwrap();
        let report = verify_clifford(&set);
        assert_eq!(report.anticommutation, 0.0, "anticommutation at d={d}");
        assert_eq!(report.hermiticity, 0.0, "hermiticity at d={d}");
        assert_eq!(report.transpose_pattern, 0.0, "transpose pattern at d={d}");
        // gamma_s^2 = I by explicit multiplication.
        let gs = set.gamma_s();
        let sq = gs * gs;
        let id = nalgebra::DMatrix::<num_complex::Complex<f64>>::identity(
            set.matrix_size(),
            set.matrix_size(),
        );
        assert_eq!(sq, id, "gamma_s^2 at d={d}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS gamma algebra: d in {{2,4,6}} exact, {elapsed:?}");
}

#[test]
fn transform_pair() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let len = 1usize << (2 * n);
        let mut t: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        t[0] = 1.0;
        let tensor = CorrelationTensor::from_coefficients(n, t.clone()).unwrap();
        let back = tensor_from_spectrum(&spectrum_from_tensor(&tensor));
        for (a, b) in t.iter().zip(back.coefficients()) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst < 1e-12, "round-trip drift {worst}");

    // The four block probabilities from a tensor supported on the
    // subgroup span{1000, 0101}: exact for dyadic coefficients.
    let (a, b, c) = (0.25f64, 0.125, 0.0625);
    let tensor = CorrelationTensor::from_entries(
        2,
        &[(ev("1000"), a), (ev("0101"), b), (ev("1101"), c)],
    )
    .unwrap();
    let p = spectrum_from_tensor(&tensor);
    let mut seen: Vec<f64> = p.probabilities().to_vec();
    seen.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut expected: Vec<f64> = [
        (1.0 + a + b + c) / 16.0,
        (1.0 + a - b - c) / 16.0,
        (1.0 - a + b - c) / 16.0,
        (1.0 - a - b + c) / 16.0,
    ]
    .into_iter()
    .flat_map(|v| std::iter::repeat_n(v, 4))
    .collect();
    expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
    assert_eq!(seen, expected, "block probabilities are not exact");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS transform pair: worst round-trip drift {worst:.2e}, {elapsed:?}");
}

#[test]
fn discord_n1() {
    let start = Instant::now();

    // Reference point.
    let tensor = CorrelationTensor::from_entries(
        1,
        &[(ev("10"), 0.3f64), (ev("01"), 0.2), (ev("11"), 0.1)],
    )
    .unwrap();
    let state = BellDiagonalState::from_tensor(tensor).unwrap();
    let (d_ref, _) = discord(&state).unwrap();
    assert!(
        (d_ref - 0.030366).abs() < 1e-6,
        "reference discord {d_ref}"
    );

    // Measurement-grid oracle on 100 random Bell-diagonal states.
    let grid = MeasurementGrid::new(64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst_grid = 0.0f64;
    for _ in 0..100 {
        let state = random_state(1, &mut rng);
        let (d, _) = discord(&state).unwrap();
        let oracle = brute_force_closest_classical_two_qubit(&state, &grid).unwrap();
        worst_grid = worst_grid.max((d - oracle).abs());
        assert!(oracle >= d - 1e-9, "oracle below the analytic minimum");
    }
    assert!(worst_grid < 1e-3, "grid disagreement {worst_grid}");

    // Closed form on 1000 random Bloch-sphere states at n in {1, 2}.
    let mut worst_closed = 0.0f64;
    for n in [1usize, 2] {
        for _ in 0..1000 {
            let bloch = random_bloch(n, &mut rng);
            let (d, _) = discord(bloch.state()).unwrap();
            let closed = bloch_discord_closed_form(&bloch);
            worst_closed = worst_closed.max((d - closed).abs());
        }
    }
    assert!(worst_closed < 1e-9, "closed-form disagreement {worst_closed}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!(
        "PASS discord n=1: reference {d_ref:.6}, grid gap {worst_grid:.2e}, \
         closed-form gap {worst_closed:.2e}, {elapsed:?}"
    );
}

#[test]
fn commuting_pairs_n2() {
    let start = Instant::now();
    let set = build_gamma_set::<f64>(4).unwrap();
    let subgroups = enumerate_abelian_subgroups(2).unwrap();
    for (a, b) in N2_PAIRS {
        let (a, b) = (ev(a), ev(b));
        assert!(exponent_commutes(a, b).unwrap(), "predicate ({a}, {b})");
        let ma = set.group_element(a).unwrap();
        let mb = set.group_element(b).unwrap();
        let comm = &ma * &mb - &mb * &ma;
        assert!(
            comm.iter().all(|z| z.re == 0.0 && z.im == 0.0),
            "matrix commutator ({a}, {b})"
        );
        let sub = AbelianSubgroup::from_generators(&[a, b]).unwrap();
        assert!(
            subgroups.contains(&sub),
            "subgroup of ({a}, {b}) missing from the enumeration"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "PASS commuting pairs n=2: 15 pairs verified against {} subgroups, {elapsed:?}",
        subgroups.len()
    );
}

#[test]
fn witnesses() {
    let start = Instant::now();
    for n in [1usize, 2] {
        let set = build_gamma_set::<f64>(2 * n).unwrap();
        for bits in 0..(1usize << (2 * n)) {
            let w =
                witness::<f64>(n, ExponentVector::from_index(bits, 2 * n).unwrap()).unwrap();
            assert!(w.normalization_is_exact(), "normalization n={n} bits={bits}");
            let dense = w.materialize(&set).unwrap();
            let mut eigs: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
            eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut expected = w.eigenvalues().to_vec();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (e, x) in eigs.iter().zip(&expected) {
                assert!(
                    (e - x).abs() < 1e-10,
                    "dense spectrum n={n} bits={bits}: {e} vs {x}"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("PASS witnesses: exact normalization and dense spectra at n in {{1,2}}, {elapsed:?}");
}

#[test]
fn inverse_family() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(107);

    // Trace condition <-> boundary face on 1000 states.
    for trial in 0..1000 {
        let n = 1 + (trial % 2);
        let on_face = trial % 3 != 0;
        let sigma = if on_face {
            random_boundary_sigma::<f64, _>(n, &mut rng).unwrap()
        } else {
            let s = random_boundary_sigma::<f64, _>(n, &mut rng).unwrap();
            let shrink: f64 = rng.gen_range(0.2..0.95);
            let axis: Vec<f64> = s.axis().iter().map(|a| a * shrink).collect();
            bloch_state(&axis, s.t_all() * shrink).unwrap()
        };
        let w = witness::<f64>(n, ExponentVector::from_index(0, 2 * n).unwrap()).unwrap();
        let residual = trace_condition(&sigma, &w).unwrap();
        let len = 1usize << (2 * n);
        let face = sigma.state().spectrum().probabilities()[len - 1] - 2.0 / (len as f64);
        assert_eq!(
            residual.abs() < 1e-12,
            face.abs() < 1e-12,
            "equivalence failed: residual {residual}, face offset {face}"
        );
    }

    // Unit trace, positivity, and the zero eigenvalue at x_max.
    for trial in 0..200 {
        let n = 1 + (trial % 2);
        let sigma = random_boundary_sigma::<f64, _>(n, &mut rng).unwrap();
        let w = witness::<f64>(n, ExponentVector::from_index(0, 2 * n).unwrap()).unwrap();
        let xm = x_max(&sigma, &w).unwrap();
        let x: f64 = rng.gen_range(1e-6..1.0) * xm;
        let point = rho_of_x(&sigma, &w, x).unwrap();
        let sum: f64 = point.rho_spectrum().probabilities().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(point.rho_spectrum().probabilities().iter().all(|&p| p >= 0.0));

        let at_max = rho_of_x(&sigma, &w, xm).unwrap();
        let min_p = at_max
            .rho_spectrum()
            .probabilities()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        assert!(min_p.abs() < 1e-12, "no zero eigenvalue at x_max: {min_p}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("PASS inverse family: face equivalence, trace, positivity, x_max kernel, {elapsed:?}");
}

#[test]
fn subadditivity() {
    let start = Instant::now();

    // Worked example: gap = -0.375 x.
    let sigma = bloch_state(&[-0.25f64, -0.25], -0.5).unwrap();
    let w = witness::<f64>(1, ev("00")).unwrap();
    for x in [0.5, 1.0, 1.5, 2.0] {
        let report = gap_direct(&sigma, &w, x).unwrap();
        assert!(
            (report.gap_direct + 0.375 * x).abs() < 1e-9,
            "worked gap at x={x}: {}",
            report.gap_direct
        );
        assert!((report.gap_direct - report.gap_analytic).abs() < 1e-9);
    }

    // Vertex gaps vanish.
    for (n, choice) in [
        (1usize, VertexChoice::AllOnes),
        (1, VertexChoice::Axis(1)),
        (2, VertexChoice::AllOnes),
        (2, VertexChoice::Axis(2)),
    ] {
        let g = vertex_gap::<f64>(n, choice).unwrap();
        assert!(g.abs() < 1e-12, "vertex gap n={n} {choice:?}: {g}");
    }

    // Random boundary sweep at n in {1, 2}.
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst_gap = f64::NEG_INFINITY;
    let mut worst_mismatch = 0.0f64;
    for trial in 0..1000 {
        let n = 1 + (trial % 2);
        let sigma = random_boundary_sigma::<f64, _>(n, &mut rng).unwrap();
        let w = witness::<f64>(n, ExponentVector::from_index(0, 2 * n).unwrap()).unwrap();
        let xm = x_max(&sigma, &w).unwrap();
        let x: f64 = rng.gen_range(1e-6..1.0) * xm;
        let report = gap_direct(&sigma, &w, x).unwrap();
        worst_gap = worst_gap.max(report.gap_direct);
        worst_mismatch = worst_mismatch.max((report.gap_direct - report.gap_analytic).abs());
    }
    assert!(worst_gap <= 1e-12, "subadditivity violated: {worst_gap}");
    assert!(worst_mismatch < 1e-9, "route mismatch {worst_mismatch}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "PASS subadditivity: worked -0.375x, vertices 0, sweep max gap {worst_gap:.2e}, \
         route mismatch {worst_mismatch:.2e}, {elapsed:?}"
    );
}

#[test]
fn theorem_certificate() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let normalize = |mut v: Vec<f64>| {
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
        v
    };
    let mut total = 0usize;
    let mut seed = 211u64;
    while total < 10_000 {
        let len = rng.gen_range(2..=8usize);
        let lambda = normalize((0..len).map(|_| rng.gen_range(0.01..1.0)).collect());
        let mu = normalize((0..len).map(|_| rng.gen_range(0.01..1.0)).collect());
        let samples = 1000.min(10_000 - total);
        let report = birkhoff_certificate(&lambda, &mu, samples, seed).unwrap();
        assert_eq!(
            report.violations, 0,
            "violations at seed {seed} (len {len})"
        );
        total += samples;
        seed += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("PASS theorem certificate: {total} doubly stochastic samples, 0 violations, {elapsed:?}");
}

#[test]
fn entanglement_sanity() {
    let start = Instant::now();
    let set = build_gamma_set::<f64>(2).unwrap();
    let sigma = bloch_state(&[-0.25f64, -0.25], -0.5).unwrap();
    let w = witness::<f64>(1, ev("00")).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(127);
    for _ in 0..50 {
        let x: f64 = rng.gen_range(1e-3..=2.0);
        let point = rho_of_x(&sigma, &w, x).unwrap();
        let m = materialize(point.rho(), &set).unwrap();
        let min = ppt_check(&m).unwrap();
        assert!(min < 0.0, "family point at x={x} is not NPT (min {min})");
    }

    let endpoint = rho_of_x(&sigma, &w, 2.0).unwrap();
    let expected = [0.0, 0.0, 0.0, 1.0];
    for (p, e) in endpoint
        .rho_spectrum()
        .probabilities()
        .iter()
        .zip(&expected)
    {
        assert!((p - e).abs() < 1e-12, "endpoint is not the singlet");
    }
    let m = materialize(endpoint.rho(), &set).unwrap();
    let min = ppt_check(&m).unwrap();
    assert!((min + 0.5).abs() < 1e-12, "singlet PT minimum {min}");

    // Its entropy is zero: a pure state.
    assert!(entropy(endpoint.rho_spectrum()).abs() < 1e-12);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("PASS entanglement sanity: NPT on (0,2], singlet PT min -1/2, {elapsed:?}");
}
