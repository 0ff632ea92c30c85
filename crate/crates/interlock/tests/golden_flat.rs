//! Golden-count regression: both flat engines must reproduce the embedded
//! reference columns exactly on the desk-scale grid.

use std::time::Instant;

use interlock::fixtures::flat_counts;
use interlock::flat::{count_flat_series, tm_count, BruteLimits, TmOptions};

/// Transfer-matrix desk grid: (w, n). Each width has a generous wall-clock
/// budget; the assert is exact equality against the golden column.
#[test]
fn transfer_matrix_matches_golden_columns() {
    let golden = flat_counts();
    let grid: &[(u32, u32)] = &[
        (2, 18),
        (3, 14),
        (4, 12),
        (5, 12),
        (6, 12),
        (7, 12),
        (8, 8),
        (9, 8),
        (10, 8),
    ];
    for &(w, n) in grid {
        let t0 = Instant::now();
        let out = tm_count(w, n, &TmOptions::default()).unwrap();
        let dt = t0.elapsed();
        assert_eq!(
            out.terms,
            golden[&w][..n as usize],
            "tm_count({w}, {n}) mismatch"
        );
        println!(
            "tm w={w} n={n}: ok in {dt:.2?} (peak {} signatures)",
            out.stats.peak_signatures
        );
        assert!(dt.as_secs() < 900, "tm w={w} n={n} exceeded 15-minute budget");
    }
}

/// Brute-force desk grid from the acceptance contract.
#[test]
fn brute_force_matches_golden_columns() {
    let golden = flat_counts();
    let limits = BruteLimits::default();
    for &(w, n) in &[(2u32, 12u32), (3, 9), (10, 5)] {
        let t0 = Instant::now();
        let series = count_flat_series(w, n, &limits).unwrap();
        println!("brute w={w} n={n}: {:.2?}", t0.elapsed());
        assert_eq!(series, golden[&w][..n as usize], "count_flat series ({w}, {n})");
    }
}
