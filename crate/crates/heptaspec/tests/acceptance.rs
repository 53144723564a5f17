//! Acceptance gate: each test pins one headline claim about the chain
//! family — closed forms against independent exact oracles, printed table
//! cells against recomputation, structural identities, and runtime budgets.
//!
//! One test fails on purpose and is left failing as an honest record:
//! `criterion_01a_complexity_closed_form_vs_matrix_tree` compares the
//! published spanning-tree closed form with the matrix-tree oracle. The
//! closed form tracks the printed alternating block, whose diagonal lacks
//! the degree-4 entries at the interior rung positions of the block the
//! decomposition actually produces, so the published count is correct only
//! at n = 1. Its failure message lists both values at every order checked.

use std::time::{Duration, Instant};

use heptaspec::arith::{decimal_string, int, rat, rational_to_f64, Rational};
use heptaspec::charpoly::{
    berkowitz, charpoly_int, charpoly_tridiagonal, coefficient_a, det_tridiagonal,
    leading_principal_minors, tridiagonal_minor_sum, tridiagonal_parts,
};
use heptaspec::decompose::{decompose, integerized_la, symmetric_block_model};
use heptaspec::formulas::{
    fact1_m, fact1_m_rec, fact2_det_ls, fact3_b4n, lemma31_kf, lemma33_kf, lemma34_tau, prop1_a5n,
};
use heptaspec::graph::build_chain;
use heptaspec::oracle::{
    kirchhoff_resistance, kirchhoff_spectral, max_pairwise_gap, numeric_spectrum,
    numeric_spectrum_f64, resistance_table, sorted_union, spanning_trees_enumerate,
    spanning_trees_matrix_tree,
};
use heptaspec::report::{
    round_significant, verify, VerifyOptions, PUBLISHED_COMPLEXITY_TABLE, PUBLISHED_KIRCHHOFF_TABLE,
};
use nalgebra::DMatrix;
use num::Signed;

/// Published spanning-tree closed form vs the matrix-tree oracle, n = 1..12.
/// Expected to fail for every n >= 2; see the module comment.
#[test]
fn criterion_01a_complexity_closed_form_vs_matrix_tree() {
    let mut mismatches = Vec::new();
    for n in 1..=12 {
        let chain = build_chain(n).unwrap();
        let closed = lemma34_tau(n).unwrap();
        let tau = spanning_trees_matrix_tree(&chain).unwrap();
        if closed != tau {
            mismatches.push((n, closed, tau));
        }
    }
    assert!(
        mismatches.is_empty(),
        "published spanning-tree closed form disagrees with the matrix-tree oracle;\n\
         the closed form follows the printed alternating block, which misses the\n\
         degree-4 rung entries of the decomposed block, so it undercounts for n >= 2:\n{}",
        mismatches
            .iter()
            .map(|(n, c, t)| format!("  n = {n:2}: closed form {c}, matrix-tree {t}"))
            .collect::<Vec<_>>()
            .join("\n")
    );
}

/// The same closed form against the published complexity table: exact cell
/// agreement for n = 1..3, six-significant-figure agreement for n = 4..12.
#[test]
fn criterion_01b_complexity_closed_form_matches_published_table() {
    for n in 1..=12 {
        let closed = lemma34_tau(n).unwrap();
        let printed = PUBLISHED_COMPLEXITY_TABLE[n - 1].parse().unwrap();
        if n <= 3 {
            assert_eq!(closed, printed, "n = {n}: printed cell is the exact value");
        } else {
            assert_eq!(
                round_significant(&closed, 6),
                printed,
                "n = {n}: printed cell is the six-significant-figure rounding"
            );
        }
    }
}

/// Spanning-tree enumeration agrees with the matrix-tree cofactor at the
/// orders small enough to enumerate; both equal the frozen oracle values.
#[test]
fn criterion_02_enumeration_agrees_with_matrix_tree() {
    let frozen = [int(45), int(1976)];
    for n in 1..=2usize {
        let chain = build_chain(n).unwrap();
        let by_cofactor = spanning_trees_matrix_tree(&chain).unwrap();
        let by_enumeration = spanning_trees_enumerate(&chain).unwrap();
        assert_eq!(by_enumeration, by_cofactor, "n = {n}");
        assert_eq!(by_cofactor, frozen[n - 1], "n = {n}: frozen oracle value");
    }
}

/// Determinant closed form for the printed alternating block, n = 1..30,
/// exact equality against a direct tridiagonal determinant.
#[test]
fn criterion_03_model_determinant_closed_form() {
    for n in 1..=30 {
        let model = symmetric_block_model(n);
        let (diag, off) = tridiagonal_parts(&model).unwrap();
        assert_eq!(fact2_det_ls(n), det_tridiagonal(&diag, &off).unwrap(), "n = {n}");
    }
    assert_eq!(fact2_det_ls(1), rat(45));
}

/// Penultimate-coefficient closed form for the printed alternating block,
/// n = 1..15, exact equality against the principal-minor sum.
#[test]
fn criterion_04_model_minor_sum_closed_form() {
    for n in 1..=15 {
        let model = symmetric_block_model(n);
        let (diag, off) = tridiagonal_parts(&model).unwrap();
        assert_eq!(fact3_b4n(n), tridiagonal_minor_sum(&diag, &off).unwrap(), "n = {n}");
    }
    assert_eq!(fact3_b4n(1), rat(135));
}

/// `(9n+2) * 2^(n-1)` equals the exact `e_{5n}` of the bar-coupled block,
/// n = 1..15 (the product of its nonzero eigenvalues).
#[test]
fn criterion_05_bar_block_coefficient_closed_form() {
    for n in 1..=15 {
        let chain = build_chain(n).unwrap();
        let pair = decompose(&chain).unwrap();
        assert_eq!(prop1_a5n(n), coefficient_a(&pair, 5 * n).unwrap(), "n = {n}");
    }
    assert_eq!(prop1_a5n(1), rat(11));
}

/// The Laplacian characteristic polynomial factors into the two block
/// polynomials: exactly for n = 1..6, and numerically (eigenvalue multiset
/// union within 1e-8) for n = 1..20.
#[test]
fn criterion_06_spectrum_factorization() {
    for n in 1..=6 {
        let chain = build_chain(n).unwrap();
        let pair = decompose(&chain).unwrap();
        let cp_l = charpoly_int(&chain.laplacian()).unwrap();
        let cp_a = charpoly_int(&integerized_la(&pair)).unwrap();
        let (diag, off) = tridiagonal_parts(&pair.l_s).unwrap();
        let cp_s = charpoly_tridiagonal(&diag, &off).unwrap();
        assert_eq!(cp_l.coeffs(), cp_a.mul(&cp_s).coeffs(), "n = {n}");
    }

    // the integerized block really is a similarity transform: its polynomial
    // agrees with a direct division-free run over the quadratic field
    for n in 1..=2 {
        let chain = build_chain(n).unwrap();
        let pair = decompose(&chain).unwrap();
        let direct: Vec<Rational> =
            berkowitz(&pair.l_a).unwrap().iter().map(|c| c.expect_rational().unwrap()).collect();
        assert_eq!(direct, charpoly_int(&integerized_la(&pair)).unwrap().coeffs(), "n = {n}");
    }

    for n in 1..=20 {
        let chain = build_chain(n).unwrap();
        let pair = decompose(&chain).unwrap();
        let full = numeric_spectrum(&chain.laplacian()).unwrap();
        let l_a_f =
            DMatrix::from_fn(pair.l_a.rows(), pair.l_a.cols(), |i, j| pair.l_a.get(i, j).to_f64());
        let spec_a = numeric_spectrum_f64(&l_a_f).unwrap();
        let spec_s = numeric_spectrum(&pair.l_s).unwrap();
        let union = sorted_union(&spec_a.eigenvalues, &spec_s.eigenvalues);
        let gap = max_pairwise_gap(&full.eigenvalues, &union).unwrap();
        assert!(gap < 1e-8, "n = {n}: max eigenvalue gap {gap:.3e}");
    }
}

/// The two independent Kirchhoff oracles agree to 1e-9 relatively for
/// n = 1..20, and the edge resistances sum to `|V| - 1` for n = 1..10.
#[test]
fn criterion_07_kirchhoff_cross_oracle_and_foster() {
    for n in 1..=20 {
        let chain = build_chain(n).unwrap();
        let exact = rational_to_f64(&kirchhoff_resistance(&chain).unwrap());
        let spectral = kirchhoff_spectral(&chain).unwrap();
        let rel = (exact - spectral).abs() / exact;
        assert!(rel < 1e-9, "n = {n}: relative gap {rel:.3e}");
    }
    for n in 1..=10usize {
        let chain = build_chain(n).unwrap();
        let table = resistance_table(&chain).unwrap();
        assert_eq!(
            table.sum_over_edges(chain.edges()),
            rat((9 * n + 1) as i64),
            "n = {n}: edge resistances must sum to |V| - 1"
        );
    }
}

/// The published Kirchhoff cells are two-decimal renderings of the closed
/// form at the sampled orders, and the later `(20n+2)` restatement visibly
/// departs from the table at n = 1.
#[test]
fn criterion_08_published_kirchhoff_rows() {
    let sampled = [
        (1usize, "79.25"),
        (2, "404.17"),
        (5, "4480.81"),
        (10, "31334.44"),
        (20, "233163.80"),
        (50, "3481628.82"),
    ];
    for (n, cell) in sampled {
        assert_eq!(decimal_string(&lemma31_kf(n), 2), cell, "n = {n}");
        assert_eq!(PUBLISHED_KIRCHHOFF_TABLE[n - 1], cell, "n = {n}: printed cell");
    }
    assert_eq!(decimal_string(&lemma33_kf(1), 2), "158.50");
    assert_ne!(decimal_string(&lemma33_kf(1), 2), PUBLISHED_KIRCHHOFF_TABLE[0]);
}

/// The audit at n = 1 flags the coefficient erratum without failing: the
/// printed quarter-integer `185/4` against the exact integer coefficient,
/// and the exact resistance-oracle Kirchhoff index alongside the printed
/// 79.25 with its deviation. Integrality of every coefficient of the
/// integerized bar block stands in for the unreproducible printed values.
#[test]
fn criterion_09_erratum_detection() {
    let report = verify(1, &VerifyOptions::default()).unwrap();
    assert!(report.passed, "errata must be flagged, not counted as failures");

    let entry = |q: &str| {
        report
            .entries
            .iter()
            .find(|e| e.quantity == q)
            .unwrap_or_else(|| panic!("missing report entry {q}"))
    };

    let p2 = entry("prop2_a5n_minus_1");
    assert!(!p2.matched && p2.erratum);
    assert_eq!(p2.closed_form_value, "185/4");
    assert_eq!(p2.oracle_value, "51");

    let kf = entry("published_kirchhoff_vs_oracle");
    assert!(!kf.matched && kf.erratum);
    assert_eq!(kf.closed_form_value, "79.25");
    assert_eq!(kf.oracle_value, "84.00");
    assert!(kf.relative_deviation.unwrap() > 0.05);

    let integrality = entry("la_coefficient_integrality");
    assert!(integrality.matched && !integrality.erratum);
    for n in 1..=6 {
        let chain = build_chain(n).unwrap();
        let pair = decompose(&chain).unwrap();
        let cp = charpoly_int(&integerized_la(&pair)).unwrap();
        assert!(cp.integer_coeffs().is_some(), "n = {n}: all coefficients integral");
    }

    let cross = entry("kirchhoff_cross_oracle");
    assert!(cross.matched, "independent oracles must agree with each other");
}

/// The minor-sequence closed form equals its three-term recurrence for
/// s = 1..64, and the leading principal minors of the printed block model
/// follow the sequence (3, 5, 12, 19, 45, ...) for n = 1..10.
#[test]
fn criterion_10_minor_sequence_property() {
    for s in 1..=64usize {
        assert_eq!(fact1_m(s), fact1_m_rec(s), "s = {s}");
    }
    let seeds: Vec<Rational> = [3, 5, 12, 19, 45].iter().map(|&v| rat(v)).collect();
    assert_eq!((1..=5usize).map(fact1_m).collect::<Vec<_>>(), seeds);

    for n in 1..=10 {
        let model = symmetric_block_model(n);
        let minors = leading_principal_minors(&model).unwrap();
        for (k, minor) in minors.iter().enumerate() {
            assert_eq!(*minor, fact1_m(k + 1), "n = {n}, order {}", k + 1);
        }
    }
}

/// Closed forms stay under a second at n = 10000 (binary exponentiation in
/// the quadratic field), and the full deep audit at n = 10 stays under a
/// minute.
#[test]
fn criterion_11_runtime_budgets() {
    let t0 = Instant::now();
    let kf = lemma31_kf(10_000);
    let tau = lemma34_tau(10_000).unwrap();
    let closed_elapsed = t0.elapsed();
    assert!(kf.is_positive());
    assert!(tau.is_positive());
    assert!(
        closed_elapsed < Duration::from_secs(1),
        "closed forms at n = 10000 took {closed_elapsed:?}"
    );

    let t1 = Instant::now();
    let report = verify(10, &VerifyOptions { deep: true, ..VerifyOptions::default() }).unwrap();
    let deep_elapsed = t1.elapsed();
    assert!(report.passed);
    assert!(deep_elapsed < Duration::from_secs(60), "deep audit at n = 10 took {deep_elapsed:?}");
}
