// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{L3, L4, L5};
use surfham_core::codes::HammingLevelCode;
use surfham_core::concat::{Base, ConcatenationSchema};
use surfham_core::gf2::{BitMatrix, BitVector};
use surfham_core::hamming_check_matrix;
use surfham_core::logical::{coset_equivalent, validate_logicals};
use surfham_core::sim::{run_schema_campaign, Execution};

fn reference(r: usize) -> BitMatrix {
    BitMatrix::parse_rows([L3, L4, L5][r - 3]).unwrap()
}

#[test]
fn reference_matrices_are_valid_logicals() {
    for (r, rows) in [(3, 1), (4, 7), (5, 21)] {
        let h = hamming_check_matrix(r).unwrap();
        let l = reference(r);
        assert_eq!((l.num_rows(), l.num_cols()), (rows, (1 << r) - 1));
        assert!(validate_logicals(&h, &l).unwrap(), "r={r}");
    }
}

#[test]
fn extracted_logicals_span_the_reference_cosets() {
    for r in 3..=5 {
        let code = HammingLevelCode::build(r - 3).unwrap();
        let h = code.check_matrix();
        assert!(validate_logicals(h, code.logical_matrix()).unwrap());
        assert!(coset_equivalent(h, code.logical_matrix(), &reference(r)).unwrap(), "r={r}");
    }
    // The single Steane logical equals 0101010 up to stabilizers.
    let code = HammingLevelCode::build(0).unwrap();
    let diff = code.logical_matrix().row(0) ^ &"0101010".parse::<BitVector>().unwrap();
    assert!(code.check_matrix().in_row_space(&diff).unwrap());
}

#[test]
fn damaged_reference_matrices_are_rejected() {
    let h4 = hamming_check_matrix(4).unwrap();
    let mut zeroed = reference(4);
    for c in 0..15 {
        zeroed.set(2, c, false);
    }
    assert!(!validate_logicals(&h4, &zeroed).unwrap());

    let h3 = hamming_check_matrix(3).unwrap();
    let stabilizer = BitMatrix::from_rows(7, vec![h3.row(0).clone()]).unwrap();
    assert!(!validate_logicals(&h3, &stabilizer).unwrap());

    // A row duplicated modulo a stabilizer is dependent.
    let mut dup = reference(4);
    let shifted = dup.row(0) ^ h4.row(1);
    for c in 0..15 {
        dup.set(1, c, shifted.get(c));
    }
    assert!(!validate_logicals(&h4, &dup).unwrap());
    assert!(validate_logicals(&h4, &reference(3)).is_err());
}

fn published_schema(top: usize) -> ConcatenationSchema {
    let levels = (0..=top)
        .map(|l| HammingLevelCode::with_logicals(l, reference(l + 3)).unwrap())
        .collect();
    ConcatenationSchema::with_levels(top, Base::Steane, levels).unwrap()
}

#[test]
fn one_level_failures_do_not_depend_on_the_logical_basis() {
    // With one Hamming level on top of the Steane blocks, a residual fails
    // iff it leaves the stabilizer space, whatever basis reads it.
    let published = published_schema(1);
    let ours = ConcatenationSchema::build(1, Base::Steane).unwrap();
    for p in [0.01, 0.03, 0.06] {
        let a = run_schema_campaign(&published, p, 5_000, 8, Execution::Sequential).unwrap();
        let b = run_schema_campaign(&ours, p, 5_000, 8, Execution::Sequential).unwrap();
        assert_eq!(a.estimate.failures, b.estimate.failures, "p={p}");
    }
}

#[test]
fn two_level_rates_agree_across_bases() {
    // Higher levels see which level-1 logicals fail together, and that
    // depends on the basis; the rates still agree statistically.
    let published = published_schema(2);
    let ours = ConcatenationSchema::build(2, Base::Steane).unwrap();
    let workers = Execution::Parallel { workers: 0 };
    let a = run_schema_campaign(&published, 0.03, 20_000, 8, workers).unwrap();
    let b = run_schema_campaign(&ours, 0.03, 20_000, 9, workers).unwrap();
    assert!(!a.estimate.separated_from(&b.estimate), "{:?} vs {:?}", a.estimate, b.estimate);
}
