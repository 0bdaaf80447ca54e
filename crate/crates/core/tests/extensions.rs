//! Window-level extension closure: in a degreewise short exact sequence the
//! middle has nilpotent shifted Euler action exactly when both ends do. The
//! sequences here are built by hand so both directions of the equivalence
//! get exercised, including a non-split extension where the middle needs a
//! strictly larger nilpotency index than its ends.

use gradedlc_core::linalg::RatMatrix;
use gradedlc_core::rat::rat_int;
use gradedlc_core::window::{
    check_generalized_eulerian, check_short_exact, EulerianVerdict, WindowBuilder, WindowModule,
};

/// One-dimensional components on [lo, hi] with prescribed Euler scalars.
fn line_module(lo: i64, eulers: &[i64]) -> WindowModule {
    let mut b = WindowBuilder::new(1, lo, vec![1; eulers.len()]);
    for (k, &e) in eulers.iter().enumerate() {
        b.set_euler(lo + k as i64, RatMatrix::scalar(1, &rat_int(e)));
    }
    b.build().unwrap()
}

/// Two-dimensional components with upper-triangular Euler blocks
/// [[a, 1], [0, b]] so that `span(e1)` is a submodule line.
fn extension_module(lo: i64, diagonals: &[(i64, i64)]) -> WindowModule {
    let mut b = WindowBuilder::new(1, lo, vec![2; diagonals.len()]);
    for (k, &(a, c)) in diagonals.iter().enumerate() {
        b.set_euler(
            lo + k as i64,
            RatMatrix::from_i64(&[&[a, 1], &[0, c]]),
        );
    }
    b.build().unwrap()
}

fn witnesses(len: usize) -> (Vec<RatMatrix>, Vec<RatMatrix>) {
    let incl = vec![RatMatrix::from_i64(&[&[1], &[0]]); len];
    let proj = vec![RatMatrix::from_i64(&[&[0, 1]]); len];
    (incl, proj)
}

#[test]
fn nonsplit_extension_of_eulerian_lines_is_generalized_eulerian() {
    let lo = -3;
    let degrees: Vec<i64> = (lo..=-1).collect();
    let sub = line_module(lo, &degrees);
    let quot = line_module(lo, &degrees);
    let mid = extension_module(lo, &degrees.iter().map(|&n| (n, n)).collect::<Vec<_>>());
    let (incl, proj) = witnesses(degrees.len());
    check_short_exact(&sub, &mid, &quot, &incl, &proj).unwrap();

    assert_eq!(check_generalized_eulerian(&sub).verdict, EulerianVerdict::Eulerian);
    assert_eq!(check_generalized_eulerian(&quot).verdict, EulerianVerdict::Eulerian);
    let mid_report = check_generalized_eulerian(&mid);
    // The Jordan block needs index 2: nilpotent, but not semisimple.
    assert_eq!(mid_report.verdict, EulerianVerdict::GeneralizedEulerian);
    assert_eq!(mid_report.max_index, 2);
}

#[test]
fn middle_fails_exactly_when_an_end_does() {
    let lo = -1;
    // Quotient eigenvalue 5 at degree -1: not nilpotent after the shift.
    let sub = line_module(lo, &[-1]);
    let quot = line_module(lo, &[5]);
    let mid = extension_module(lo, &[(-1, 5)]);
    let (incl, proj) = witnesses(1);
    check_short_exact(&sub, &mid, &quot, &incl, &proj).unwrap();

    assert!(check_generalized_eulerian(&sub).is_generalized_eulerian());
    assert!(!check_generalized_eulerian(&quot).is_generalized_eulerian());
    assert!(!check_generalized_eulerian(&mid).is_generalized_eulerian());

    // Conversely a generalized Eulerian middle forces both ends to pass:
    // the same sequence with the healthy quotient works.
    let quot = line_module(lo, &[-1]);
    let mid = extension_module(lo, &[(-1, -1)]);
    check_short_exact(&sub, &mid, &quot, &incl, &proj).unwrap();
    assert!(check_generalized_eulerian(&mid).is_generalized_eulerian());
    assert!(check_generalized_eulerian(&sub).is_generalized_eulerian());
    assert!(check_generalized_eulerian(&quot).is_generalized_eulerian());
}

#[test]
fn mismatched_sequences_are_rejected() {
    let sub = line_module(-2, &[-2, -1]);
    let quot = line_module(-2, &[-2, -1]);
    let mid = extension_module(-2, &[(-2, -2), (-1, -1)]);
    let (mut incl, proj) = witnesses(2);
    // Break injectivity at the second degree.
    incl[1] = RatMatrix::zeros(2, 1);
    assert!(check_short_exact(&sub, &mid, &quot, &incl, &proj).is_err());
}
