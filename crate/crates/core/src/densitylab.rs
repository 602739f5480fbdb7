//! Density of real-root-free palindromic quartics.
//!
//! For integer parameters (n, m) the quartic `q(x) = x⁴ + nx³ + mx² + nx + 1`
//! is palindromic; `Q` is the set of (n, m) whose quartic has no real root.
//! This module decides membership exactly, evaluates the closed-form root
//! expressions as a floating-point diagnostic, computes the finite
//! exceptional set of members with `n² − 4m + 8 > 0`, and measures the
//! density of `Q` in sup-norm balls against the exact rational upper bound
//! `⌈(4K−4)^(3/2)⌉ / (3(2K+1)²)` — the computation behind the asymptotic
//! density being zero.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::intpoly::IntPoly;

/// Parameters (n, m) of the palindromic quartic `x⁴ + nx³ + mx² + nx + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuarticParams {
    pub n: i64,
    pub m: i64,
}

impl QuarticParams {
    pub fn new(n: i64, m: i64) -> QuarticParams {
        QuarticParams { n, m }
    }

    /// The quartic itself, in exact integer coefficients.
    pub fn quartic(&self) -> IntPoly {
        IntPoly::from_i64(&[1, self.n, self.m, self.n, 1])
    }

    /// Exact membership in Q: true iff the quartic has no real root
    /// (equivalently, its Sturm count over all reals is 0 — the test suite
    /// cross-checks against that independent route).
    ///
    /// Since `q(0) = 1`, dividing by `x²` turns `q(x) = 0` into
    /// `h(w) = w² + n·w + (m − 2) = 0` with `w = x + 1/x`, and real roots
    /// `x` correspond exactly to real roots `w` with `|w| ≥ 2`. So the
    /// quartic is real-root-free iff `h` has no real root (discriminant
    /// `n² − 4m + 8 < 0`) or both roots of `h` lie strictly inside (−2, 2):
    /// `h(±2) > 0` and the vertex `−n/2` in (−2, 2). Exact in integer
    /// arithmetic.
    pub fn in_q(&self) -> bool {
        let n = self.n as i128;
        let m = self.m as i128;
        let disc = n * n - 4 * m + 8;
        if disc < 0 {
            return true;
        }
        let at_two = m + 2 * n + 2; // h(2)
        let at_neg_two = m - 2 * n + 2; // h(−2)
        at_two > 0 && at_neg_two > 0 && n.abs() < 4
    }

    /// The four roots by the explicit nested-radical formulas, in floating
    /// point with principal square roots. Diagnostic only — never used in
    /// any certification path; the exact decision is [`Self::in_q`].
    ///
    /// For each root `w = (−n ± √(n²−4m+8))/2` of the resolvent quadratic,
    /// the quartic roots are `x = (w ± √(w²−4))/2`.
    pub fn quartic_roots_closed_form(&self) -> [Complex64; 4] {
        let n = self.n as f64;
        let m = self.m as f64;
        let s = Complex64::new(n * n - 4.0 * m + 8.0, 0.0).sqrt();
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (half, sign) in [(0, 1.0), (1, -1.0)] {
            let w = (Complex64::new(-n, 0.0) + sign * s) / 2.0;
            let t = (w * w - 4.0).sqrt();
            out[2 * half] = (w + t) / 2.0;
            out[2 * half + 1] = (w - t) / 2.0;
        }
        out
    }
}

/// All members of Q within the sup-norm ball of radius `scan_bound` whose
/// parameter satisfies `n² − 4m + 8 > 0` — the finite exceptional set
/// outside of which membership in Q forces `n² − 4m + 8 ≤ 0`.
///
/// The defining inequalities of such members chain into
/// `n² < 2m + 4 < n²/2 + 8`, which forces `|n| ≤ 3` and `−1 ≤ m ≤ 4`; the
/// result therefore stabilizes once the ball covers that box (asserted).
/// The list is a computed candidate set, recorded as found.
pub fn exceptional_set(scan_bound: i64) -> Vec<QuarticParams> {
    assert!(scan_bound >= 4, "scan bound must be at least 4");
    let mut out = Vec::new();
    for n in -scan_bound..=scan_bound {
        for m in -scan_bound..=scan_bound {
            let params = QuarticParams::new(n, m);
            let disc = (n as i128) * (n as i128) - 4 * (m as i128) + 8;
            if disc > 0 && params.in_q() {
                out.push(params);
            }
        }
    }
    assert!(
        out.iter().all(|p| p.n.abs() <= 3 && (-1..=4).contains(&p.m)),
        "exceptional set failed to stabilize within its known box"
    );
    out
}

/// Exact census of Q inside the sup-norm ball of radius K, with the exact
/// rational upper bound the density argument compares against.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub k: i64,
    pub count_q: u64,
    pub count_total: u64,
    /// count_q / count_total, exactly.
    pub fraction: BigRational,
    /// ⌈(4K−4)^(3/2)⌉ / (3(2K+1)²): a rational upper bound on the
    /// irrational expression (4K−4)^(3/2)/(3(2K+1)²), exact by integer
    /// square-root bounding.
    pub bound: BigRational,
}

impl DensityReport {
    pub fn csv_header() -> &'static str {
        "K,count_Q,count_total,fraction_num,fraction_den,bound_num,bound_den"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.k,
            self.count_q,
            self.count_total,
            self.fraction.numer(),
            self.fraction.denom(),
            self.bound.numer(),
            self.bound.denom()
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "K": self.k,
            "count_Q": self.count_q,
            "count_total": self.count_total,
            "fraction_num": self.fraction.numer().to_string(),
            "fraction_den": self.fraction.denom().to_string(),
            "bound_num": self.bound.numer().to_string(),
            "bound_den": self.bound.denom().to_string(),
        })
    }
}

fn density_upper_bound(k: i64) -> BigRational {
    let t = BigInt::from(4 * k - 4);
    let cubed = &t * &t * &t;
    let root = cubed.sqrt();
    let ceil = if &root * &root == cubed {
        root
    } else {
        root + BigInt::one()
    };
    let side = BigInt::from(2 * k + 1);
    BigRational::new(ceil, BigInt::from(3) * &side * &side)
}

/// Exhaustive exact density scan over `‖(n, m)‖ = max(|n|, |m|) ≤ K`,
/// exploiting the `(n, m) ↔ (−n, m)` symmetry of Q (substituting `x → −x`
/// preserves real-root-freeness).
pub fn density_scan(k: i64) -> DensityReport {
    density_scan_with_jobs(k, 0)
}

/// [`density_scan`] on a thread pool of the given size (0 = the global
/// default pool). The grid is partitioned by the n-coordinate; per-row
/// counts are pure values, so the merged total is identical for every pool
/// size.
pub fn density_scan_with_jobs(k: i64, jobs: usize) -> DensityReport {
    assert!(k >= 1, "K must be at least 1");
    let row = |n: i64| -> u64 {
        (-k..=k)
            .filter(|&m| QuarticParams::new(n, m).in_q())
            .count() as u64
    };
    let scan = || -> u64 {
        let positive: u64 = (1..k + 1).into_par_iter().map(row).sum();
        2 * positive + row(0)
    };
    let count_q = if jobs == 0 {
        scan()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool construction")
            .install(scan)
    };
    let side = 2 * (k as u64) + 1;
    let count_total = side * side;
    DensityReport {
        k,
        count_q,
        count_total,
        fraction: BigRational::new(BigInt::from(count_q), BigInt::from(count_total)),
        bound: density_upper_bound(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(QuarticParams::new(10, 30).in_q());
        assert!(QuarticParams::new(0, 3).in_q());
        assert!(!QuarticParams::new(0, -3).in_q());
        // (x−1)⁴ and (x+1)⁴ have real roots.
        assert!(!QuarticParams::new(-4, 6).in_q());
        assert!(!QuarticParams::new(4, 6).in_q());
    }

    #[test]
    fn membership_agrees_with_sturm_count() {
        // The integer shortcut and the Sturm count are independent exact
        // routes to the same predicate; compare them across a dense grid
        // and a spread of larger parameters.
        for n in -12..=12 {
            for m in -12..=12 {
                let params = QuarticParams::new(n, m);
                assert_eq!(
                    params.in_q(),
                    params.quartic().count_real_roots().unwrap() == 0,
                    "(n, m) = ({n}, {m})"
                );
            }
        }
        for (n, m) in [(50, 700), (-50, 700), (99, 2500), (1000, 250000), (37, -4000)] {
            let params = QuarticParams::new(n, m);
            assert_eq!(
                params.in_q(),
                params.quartic().count_real_roots().unwrap() == 0,
                "(n, m) = ({n}, {m})"
            );
        }
    }

    #[test]
    fn membership_is_not_a_discriminant_sign() {
        // n² − 4m + 8 < 0 does imply membership, but the converse fails in
        // both directions at the boundary and beyond:
        assert!(QuarticParams::new(5, 9).in_q()); // disc = −3 < 0, member
        assert!(!QuarticParams::new(4, 6).in_q()); // disc = 0, not a member
        assert!(QuarticParams::new(0, -1).in_q()); // disc = 12 > 0, member
    }

    #[test]
    fn closed_form_diagnostic_examples() {
        // (0, 2): q = (x²+1)², roots ±i twice.
        let roots = QuarticParams::new(0, 2).quartic_roots_closed_form();
        let mut ims: Vec<f64> = roots.iter().map(|r| r.im).collect();
        ims.sort_by(f64::total_cmp);
        for (im, expect) in ims.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((im - expect).abs() < 1e-12);
        }
        assert!(roots.iter().all(|r| r.re.abs() < 1e-12));

        // (−4, 6): q = (x−1)⁴, all roots 1.
        let roots = QuarticParams::new(-4, 6).quartic_roots_closed_form();
        for r in roots {
            assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }

        // (10, 30): no real root within tolerance.
        let roots = QuarticParams::new(10, 30).quartic_roots_closed_form();
        assert!(roots.iter().all(|r| r.im.abs() > 1e-9));
    }

    #[test]
    fn closed_form_agrees_with_exact_membership_on_grid() {
        // Cross-validate the numeric diagnostic against the exact decision
        // on ‖(n, m)‖ ≤ 20, skipping exact boundary degeneracies (double
        // roots of the resolvent or roots at ±1) where floating point
        // cannot place a root on or off the real line.
        let mut checked = 0usize;
        let mut skipped = 0usize;
        for n in -20i64..=20 {
            for m in -20i64..=20 {
                let params = QuarticParams::new(n, m);
                let disc = n * n - 4 * m + 8;
                let q = params.quartic();
                let at_one = q.eval_int(&BigInt::one());
                let at_neg_one = q.eval_int(&BigInt::from(-1));
                if disc == 0 || at_one == BigInt::from(0) || at_neg_one == BigInt::from(0) {
                    skipped += 1;
                    continue;
                }
                let numeric_real = params
                    .quartic_roots_closed_form()
                    .iter()
                    .filter(|r| r.im.abs() <= 1e-9)
                    .count();
                assert_eq!(
                    params.in_q(),
                    numeric_real == 0,
                    "(n, m) = ({n}, {m})"
                );
                checked += 1;
            }
        }
        assert!(checked > 1500, "grid should be mostly checkable");
        assert!(skipped < 100, "degeneracies are rare");
    }

    #[test]
    fn exceptional_set_is_frozen_and_stable() {
        let expected: Vec<QuarticParams> = [(-1, 1), (-1, 2), (0, -1), (0, 0), (0, 1), (1, 1), (1, 2)]
            .into_iter()
            .map(|(n, m)| QuarticParams::new(n, m))
            .collect();
        let at_10 = exceptional_set(10);
        assert_eq!(at_10, expected);
        assert_eq!(exceptional_set(50), at_10);
        assert!(at_10.iter().all(|p| p.n.abs() <= 3));
        // (10, 30) is a member of Q but not exceptional: 100 − 120 + 8 < 0.
        assert!(!at_10.contains(&QuarticParams::new(10, 30)));
        // Each member satisfies the proof's inequality chain
        // n² < 2m + 4 < n²/2 + 8 (in integers: 2·(2m+4) < n² + 16).
        for p in &at_10 {
            let n2 = p.n * p.n;
            assert!(n2 < 2 * p.m + 4, "{p:?}");
            assert!(2 * (2 * p.m + 4) < n2 + 16, "{p:?}");
        }
    }

    #[test]
    fn discriminant_is_nonpositive_outside_the_exceptional_set() {
        // Within ‖(n, m)‖ ≤ 50: membership in Q implies n² − 4m + 8 ≤ 0
        // except exactly on the exceptional set.
        let exceptional = exceptional_set(50);
        for n in -50i64..=50 {
            for m in -50i64..=50 {
                let params = QuarticParams::new(n, m);
                if params.in_q() && n * n - 4 * m + 8 > 0 {
                    assert!(exceptional.contains(&params), "(n, m) = ({n}, {m})");
                }
            }
        }
    }

    #[test]
    fn density_scan_small_values() {
        // K = 1 by hand: members are (0, −1), (0, 0), (0, 1), (±1, 1).
        let report = density_scan(1);
        assert_eq!(report.count_total, 9);
        assert_eq!(report.count_q, 5);
        assert_eq!(
            report.fraction,
            BigRational::new(BigInt::from(5), BigInt::from(9))
        );

        // K = 2: compare against a naive full-grid Sturm census.
        let report = density_scan(2);
        assert_eq!(report.count_total, 25);
        let brute = (-2i64..=2)
            .flat_map(|n| (-2i64..=2).map(move |m| QuarticParams::new(n, m)))
            .filter(|p| p.quartic().count_real_roots().unwrap() == 0)
            .count() as u64;
        assert_eq!(report.count_q, brute);
    }

    #[test]
    fn density_bound_value_and_trend() {
        let at_10 = density_scan(10);
        assert_eq!(
            at_10.bound,
            BigRational::new(BigInt::from(216), BigInt::from(1323))
        );
        let at_50 = density_scan(50);
        assert!(at_50.fraction < at_10.fraction);
        // ⌈196^(3/2)⌉ = 2744 exactly (196 = 14²).
        assert_eq!(
            at_50.bound,
            BigRational::new(BigInt::from(2744), BigInt::from(3 * 101 * 101))
        );
    }

    #[test]
    fn symmetry_of_membership() {
        for n in 0..=15 {
            for m in -15..=15 {
                assert_eq!(
                    QuarticParams::new(n, m).in_q(),
                    QuarticParams::new(-n, m).in_q(),
                    "(n, m) = ({n}, {m})"
                );
            }
        }
    }

    #[test]
    fn parallel_scan_is_deterministic() {
        let base = density_scan(40);
        assert_eq!(density_scan_with_jobs(40, 1), base);
        assert_eq!(density_scan_with_jobs(40, 3), base);
    }

    #[test]
    fn report_serialization() {
        let report = density_scan(10);
        assert_eq!(
            DensityReport::csv_header(),
            "K,count_Q,count_total,fraction_num,fraction_den,bound_num,bound_den"
        );
        let row = report.to_csv_row();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert_eq!(fields[0], "10");
        assert_eq!(fields[2], "441");
        assert_eq!(fields[5], "8"); // 216/1323 reduces to 8/49
        assert_eq!(fields[6], "49");
        let json = report.to_json();
        assert_eq!(json["K"], 10);
        assert_eq!(json["count_total"], 441);
        assert_eq!(json["bound_num"], "8");
    }
}
