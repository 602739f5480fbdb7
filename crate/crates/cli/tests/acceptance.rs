//! Acceptance suite: nine numbered criteria, each printing exactly one
//! `[PASS]`/`[FAIL]` line (visible with `cargo test --test acceptance --
//! --nocapture`). Every wall-clock budget, tolerance, seed, and sample count
//! is pinned as a constant next to the criterion it governs; sub-checks
//! accumulate failures so the status line always prints before the assert.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use biperron::densitylab::{density_scan, exceptional_set, QuarticParams};
use biperron::exactmat::{IntMatrix, SymplecticForm};
use biperron::families::{
    build_a_from_y, build_block_diagonal, random_symplectic, BlockDiagonalParams,
};
use biperron::intpoly::{compose_identity_rhs, IntPoly};
use biperron::rootcert::{
    certify_biperron, classify_simplicity, count_roots_in_disk, CertMode, DiskCount, Simplicity,
    Verdict,
};
use biperron_cli::{cmd_construct, ConstructSpec, OutputFormat, Status};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

struct Criterion {
    number: u8,
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u8, name: &'static str) -> Criterion {
        Criterion {
            number,
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn conclude(self, summary: &str) {
        let pass = self.failures.is_empty();
        if pass {
            println!("[PASS] criterion {} — {}: {}", self.number, self.name, summary);
        } else {
            println!(
                "[FAIL] criterion {} — {}: {} sub-checks failed; first: {}",
                self.number,
                self.name,
                self.failures.len(),
                self.failures[0]
            );
        }
        assert!(
            pass,
            "criterion {} ({}) failed:\n{}",
            self.number,
            self.name,
            self.failures.join("\n")
        );
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// 1. Family certificate suite
// ---------------------------------------------------------------------------

const FAMILY_SUITE_BUDGET: Duration = Duration::from_secs(10);
const FAMILY_GENERA: std::ops::RangeInclusive<usize> = 2..=6;
const FAMILY_CORNERS: [(i64, i64); 4] = [(0, 1), (1, 1), (2, 3), (3, 4)];

#[test]
fn criterion_1_family_certificate_suite() {
    let mut c = Criterion::new(1, "family certificate suite");
    let started = Instant::now();
    let mut checked = 0usize;
    for g in FAMILY_GENERA {
        for (a, b) in FAMILY_CORNERS {
            let tag = move || format!("g={g} a={a} b={b}");
            let r = cmd_construct(
                &ConstructSpec::Y {
                    g,
                    a,
                    b,
                    z_file: None,
                    max_refinement: 64,
                },
                OutputFormat::Json,
            );
            c.check(r.status == Status::Ok, || {
                format!("{}: status {:?} with payload {}", tag(), r.status, r.payload)
            });
            if r.status != Status::Ok {
                continue;
            }
            let cert = &r.payload["certificate"];

            // Symplecticity re-checked on the emitted matrix, independently
            // of the pipeline's own verification stage.
            let m = IntMatrix::from_json(&cert["matrix"]).expect("payload matrix parses");
            c.check(
                m.is_symplectic(&SymplecticForm::StandardBlock { g }).unwrap(),
                || format!("{}: emitted matrix is not symplectic", tag()),
            );

            // Exact closed form (x−1)^(2g−4) (x² − (λ²+2)x + 1)², rebuilt here.
            let lam2 = a * a + b * b;
            let quad = IntPoly::from_i64(&[1, -(lam2 + 2), 1]);
            let mut expected = &quad * &quad;
            let xm1 = IntPoly::from_i64(&[-1, 1]);
            for _ in 0..(2 * g - 4) {
                expected = &expected * &xm1;
            }
            c.check(cert["charpoly"] == expected.to_json(), || {
                format!("{}: charpoly deviates from the closed form", tag())
            });

            // Non-simplicity of every root, re-derived from the payload.
            let cp = IntPoly::from_json(&cert["charpoly"]).expect("payload charpoly parses");
            c.check(cp.all_roots_nonsimple().unwrap(), || {
                format!("{}: some root is simple", tag())
            });
            c.check(cert["nonsimple"] == json!(true), || {
                format!("{}: certificate does not claim non-simplicity", tag())
            });
            c.check(cert["annulus"]["verdict"] == json!("bi-perron"), || {
                format!("{}: verdict {}", tag(), cert["annulus"]["verdict"])
            });
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    c.check(checked == 20, || {
        format!("expected 20 parameter triples, certified {checked}")
    });
    c.check(elapsed <= FAMILY_SUITE_BUDGET, || {
        format!("suite took {elapsed:.2?}, budget {FAMILY_SUITE_BUDGET:?}")
    });
    c.conclude(&format!(
        "{checked} parameter triples certified in {elapsed:.2?} (budget {FAMILY_SUITE_BUDGET:?})"
    ));
}

// ---------------------------------------------------------------------------
// 2. Identity chain
// ---------------------------------------------------------------------------

const IDENTITY_CHAIN_SAMPLES: usize = 200;
const IDENTITY_CHAIN_SEED: u64 = 0xC2_0002;
const IDENTITY_MAX_GENUS: usize = 6;
const IDENTITY_ENTRY_BOUND: i64 = 5;

#[test]
fn criterion_2_identity_chain() {
    let mut c = Criterion::new(2, "identity chain");
    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_CHAIN_SEED);
    for i in 0..IDENTITY_CHAIN_SAMPLES {
        let g = rng.gen_range(1..=IDENTITY_MAX_GENUS);
        let mut rows = vec![vec![BigInt::from(0); g]; g];
        for r in 0..g {
            for s in r..g {
                let e = BigInt::from(rng.gen_range(-IDENTITY_ENTRY_BOUND..=IDENTITY_ENTRY_BOUND));
                rows[r][s] = e.clone();
                rows[s][r] = e;
            }
        }
        let y = IntMatrix::from_rows(rows).unwrap();
        let a = build_a_from_y(&y).unwrap();
        let lhs = a.charpoly();
        let rhs = compose_identity_rhs(&y.mul(&y).charpoly(), g).unwrap();
        c.check(lhs == rhs, || {
            format!("sample {i} (g={g}): charpoly(A) = {lhs} but the composed form is {rhs}")
        });
    }
    c.conclude(&format!(
        "{IDENTITY_CHAIN_SAMPLES} seeded symmetric Y (g ≤ {IDENTITY_MAX_GENUS}, entries in ±{IDENTITY_ENTRY_BOUND}), zero mismatches"
    ));
}

// ---------------------------------------------------------------------------
// 3. Symplectic reciprocity
// ---------------------------------------------------------------------------

const RECIPROCITY_SAMPLES: usize = 500;
const RECIPROCITY_SEED: u64 = 0xC3_0003;
const RECIPROCITY_MAX_GENUS: usize = 4;
const RECIPROCITY_MAX_STEPS: usize = 20;

#[test]
fn criterion_3_symplectic_reciprocity() {
    let mut c = Criterion::new(3, "symplectic reciprocity");
    let mut rng = ChaCha8Rng::seed_from_u64(RECIPROCITY_SEED);
    for i in 0..RECIPROCITY_SAMPLES {
        let g = rng.gen_range(1..=RECIPROCITY_MAX_GENUS);
        let steps = rng.gen_range(0..=RECIPROCITY_MAX_STEPS);
        let seed: u64 = rng.gen();
        let m = random_symplectic(g, steps, seed);
        c.check(m.det() == BigInt::one(), || {
            format!("sample {i} (g={g}, steps={steps}, seed={seed}): det = {}", m.det())
        });
        c.check(
            m.is_symplectic(&SymplecticForm::StandardBlock { g }).unwrap(),
            || format!("sample {i} (g={g}, steps={steps}, seed={seed}): not symplectic"),
        );
        c.check(m.charpoly().is_palindromic(), || {
            format!(
                "sample {i} (g={g}, steps={steps}, seed={seed}): charpoly {} not palindromic",
                m.charpoly()
            )
        });
    }
    c.conclude(&format!(
        "{RECIPROCITY_SAMPLES} seeded products (g ≤ {RECIPROCITY_MAX_GENUS}, steps ≤ {RECIPROCITY_MAX_STEPS}): det 1, symplectic, palindromic charpoly"
    ));
}

// ---------------------------------------------------------------------------
// 4. Oracle equivalence
// ---------------------------------------------------------------------------

const ORACLE_SAMPLES: usize = 100;
const ORACLE_SEED: u64 = 0xC4_0004;
const ORACLE_MAX_DIM: usize = 6;
const ORACLE_ENTRY_BOUND: i64 = 4;

fn poly_det(e: &[Vec<IntPoly>]) -> IntPoly {
    let n = e.len();
    if n == 0 {
        return IntPoly::one();
    }
    if n == 1 {
        return e[0][0].clone();
    }
    let mut acc = IntPoly::zero();
    for j in 0..n {
        if e[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IntPoly>> = e[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &e[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Independent characteristic-polynomial oracle: cofactor expansion of
/// `det(xI − A)` over polynomial entries, no shared code with the
/// division-free algorithm under test.
fn cofactor_charpoly(m: &IntMatrix) -> IntPoly {
    let n = m.dim();
    let mut entries = vec![vec![IntPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let a = -m.at(i, j).clone();
            entries[i][j] = if i == j {
                IntPoly::new(vec![a, BigInt::one()])
            } else {
                IntPoly::constant(a)
            };
        }
    }
    poly_det(&entries)
}

#[test]
fn criterion_4_oracle_equivalence() {
    let mut c = Criterion::new(4, "oracle equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    for i in 0..ORACLE_SAMPLES {
        let n = rng.gen_range(1..=ORACLE_MAX_DIM);
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigInt::from(rng.gen_range(-ORACLE_ENTRY_BOUND..=ORACLE_ENTRY_BOUND)))
                    .collect()
            })
            .collect();
        let m = IntMatrix::from_rows(rows).unwrap();
        let fast = m.charpoly();
        let slow = cofactor_charpoly(&m);
        c.check(fast == slow, || {
            format!("sample {i} (dim {n}): division-free gave {fast}, cofactor gave {slow}")
        });
    }
    c.conclude(&format!(
        "{ORACLE_SAMPLES} seeded matrices (dim ≤ {ORACLE_MAX_DIM}): division-free charpoly equals cofactor expansion"
    ));
}

// ---------------------------------------------------------------------------
// 5. Real-root-free quartic
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_real_root_free_quartic() {
    let mut c = Criterion::new(5, "real-root-free quartic");
    let p = IntPoly::from_i64(&[1, 10, 30, 10, 1]);
    let real_roots = p.count_real_roots().unwrap();
    c.check(real_roots == 0, || {
        format!("Sturm counted {real_roots} real roots of {p}")
    });
    let member = QuarticParams::new(10, 30).in_q();
    c.check(member, || "(n, m) = (10, 30) not recognized in Q".to_string());
    c.conclude("x⁴+10x³+30x²+10x+1 has zero real roots by Sturm count and (10, 30) ∈ Q");
}

// ---------------------------------------------------------------------------
// 6. Exceptional-set stability
// ---------------------------------------------------------------------------

const EXCEPTIONAL_SCAN_BOUND: i64 = 50;
const EXCEPTIONAL_STABILIZATION_BOUND: i64 = 10;

#[test]
fn criterion_6_exceptional_set_stability() {
    let mut c = Criterion::new(6, "exceptional-set stability");
    let wide = exceptional_set(EXCEPTIONAL_SCAN_BOUND);
    let narrow = exceptional_set(EXCEPTIONAL_STABILIZATION_BOUND);
    c.check(wide == narrow, || {
        format!(
            "set changed between scan bounds {EXCEPTIONAL_STABILIZATION_BOUND} and {EXCEPTIONAL_SCAN_BOUND}: {narrow:?} vs {wide:?}"
        )
    });
    for p in &wide {
        c.check(p.n.abs() <= 3, || {
            format!("member (n, m) = ({}, {}) has |n| > 3", p.n, p.m)
        });
    }
    let members: HashSet<(i64, i64)> = wide.iter().map(|p| (p.n, p.m)).collect();
    let mut outside = 0u64;
    for n in -EXCEPTIONAL_SCAN_BOUND..=EXCEPTIONAL_SCAN_BOUND {
        for m in -EXCEPTIONAL_SCAN_BOUND..=EXCEPTIONAL_SCAN_BOUND {
            if QuarticParams::new(n, m).in_q() && !members.contains(&(n, m)) {
                outside += 1;
                let disc = n * n - 4 * m + 8;
                c.check(disc <= 0, || {
                    format!("(n, m) = ({n}, {m}) ∈ Q lies outside the set yet has n²−4m+8 = {disc} > 0")
                });
            }
        }
    }
    c.conclude(&format!(
        "set of {} stabilized, all |n| ≤ 3, and all {outside} other members of Q with ‖(n,m)‖ ≤ {EXCEPTIONAL_SCAN_BOUND} have nonpositive discriminant",
        wide.len()
    ));
}

// ---------------------------------------------------------------------------
// 7. Density trend
// ---------------------------------------------------------------------------

const DENSITY_WINDOWS: [i64; 3] = [10, 100, 1000];
const DENSITY_K1000_BUDGET: Duration = Duration::from_secs(60);

/// Independent reconstruction of the rationalized upper bound
/// ⌈(4K−4)^(3/2)⌉ / (3(2K+1)²), using integer square-root ceiling.
fn rationalized_bound(k: i64) -> BigRational {
    let t = BigInt::from(4 * k - 4);
    let cube = &t * &t * &t;
    let mut s = cube.sqrt();
    if &s * &s < cube {
        s += 1;
    }
    let side = BigInt::from(2 * k + 1);
    BigRational::new(s, BigInt::from(3) * &side * &side)
}

#[test]
fn criterion_7_density_trend() {
    let mut c = Criterion::new(7, "density trend");
    let mut reports = Vec::new();
    let mut k1000_elapsed = Duration::ZERO;
    for k in DENSITY_WINDOWS {
        let started = Instant::now();
        let report = density_scan(k);
        if k == 1000 {
            k1000_elapsed = started.elapsed();
        }
        let bound = rationalized_bound(k);
        c.check(report.bound == bound, || {
            format!("K={k}: report carries bound {}, reconstruction gives {}", report.bound, bound)
        });
        let twice = rat(2, 1) * &bound;
        c.check(report.fraction <= twice, || {
            format!("K={k}: fraction {} exceeds twice the bound {}", report.fraction, bound)
        });
        reports.push(report);
    }
    for pair in reports.windows(2) {
        c.check(pair[0].fraction > pair[1].fraction, || {
            format!(
                "fraction did not strictly decrease: K={} gives {}, K={} gives {}",
                pair[0].k, pair[0].fraction, pair[1].k, pair[1].fraction
            )
        });
    }
    c.check(k1000_elapsed <= DENSITY_K1000_BUDGET, || {
        format!("K=1000 scan took {k1000_elapsed:.2?}, budget {DENSITY_K1000_BUDGET:?}")
    });
    c.conclude(&format!(
        "fractions {} > {} > {} each within twice the bound; K=1000 in {k1000_elapsed:.2?} (budget {DENSITY_K1000_BUDGET:?})",
        reports[0].fraction, reports[1].fraction, reports[2].fraction
    ));
}

// ---------------------------------------------------------------------------
// 8. Root-counting cross-validation
// ---------------------------------------------------------------------------

const CROSSVAL_SAMPLES: usize = 100;
const CROSSVAL_REAL_SEED: u64 = 0xC8_0008;
const CROSSVAL_GENERAL_SEED: u64 = 0xC8_8888;
const CROSSVAL_MAX_DEGREE: usize = 8;
/// Radii closer than this to some root modulus are skipped when comparing
/// against the floating-point diagnostic.
const ROOT_MODULUS_TOLERANCE: f64 = 1e-6;
const DK_ITERATIONS: usize = 400;
const DK_STEP_TOLERANCE: f64 = 1e-13;
const DK_RESIDUAL_TOLERANCE: f64 = 1e-7;

/// Durand–Kerner simultaneous iteration: the floating-point companion
/// diagnostic for the exact disk counter. Returns the approximate roots, or
/// `None` when the iteration has not converged to a small residual.
fn durand_kerner(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let radius = 1.0 + a[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|i| seed.powu(i as u32 + 1) * radius)
        .collect();
    for _ in 0..DK_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..d {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            moved = moved.max(step.norm());
        }
        if moved < DK_STEP_TOLERANCE {
            break;
        }
    }
    let converged = roots.iter().all(|&z| {
        let scale: f64 = a
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * z.norm().powi(k as i32))
            .sum::<f64>()
            .max(1.0);
        eval(z).norm() <= DK_RESIDUAL_TOLERANCE * scale
    });
    converged.then_some(roots)
}

#[test]
fn criterion_8_root_counting_cross_validation() {
    let mut c = Criterion::new(8, "root-counting cross-validation");

    // Real-rooted polynomials: the Schur–Cohn disk count must match the
    // Sturm count on (−r, r]. Distinct integer roots and half-integer radii
    // keep both counts unambiguous.
    let mut rng = ChaCha8Rng::seed_from_u64(CROSSVAL_REAL_SEED);
    let mut real_comparisons = 0u64;
    for i in 0..CROSSVAL_SAMPLES {
        let d = rng.gen_range(1..=6);
        let mut pool: Vec<i64> = (-6..=6).collect();
        pool.shuffle(&mut rng);
        let roots = &pool[..d];
        let lc = rng.gen_range(1..=3);
        let mut p = IntPoly::from_i64(&[lc]);
        for &r in roots {
            p = &p * &IntPoly::from_i64(&[-r, 1]);
        }
        for j in 0..=6 {
            let radius = rat(2 * j + 1, 2);
            let expected = roots.iter().filter(|r| rat(2 * r.abs(), 2) < radius).count();
            let counted = count_roots_in_disk(&p, &radius).unwrap();
            c.check(counted == DiskCount::Inside(expected), || {
                format!("real-rooted sample {i}, radius {radius}: disk gave {counted}, expected {expected}")
            });
            let sturm = p.sturm_count(&(-radius.clone()), &radius).unwrap();
            c.check(sturm == expected, || {
                format!("real-rooted sample {i}, radius {radius}: Sturm gave {sturm}, expected {expected}")
            });
            real_comparisons += 1;
        }
    }

    // General polynomials: compare against a floating-point root finder,
    // skipping radii within ROOT_MODULUS_TOLERANCE of some root modulus.
    let mut rng = ChaCha8Rng::seed_from_u64(CROSSVAL_GENERAL_SEED);
    let mut general_comparisons = 0u64;
    let mut produced = 0usize;
    while produced < CROSSVAL_SAMPLES {
        let d = rng.gen_range(2..=CROSSVAL_MAX_DEGREE);
        let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs[d] == 0 {
            coeffs[d] = rng.gen_range(1..=9);
        }
        let p = IntPoly::from_i64(&coeffs);
        // Square-free inputs only: a multiple root would make the float
        // diagnostic itself unreliable.
        if IntPoly::gcd(&p, &p.derivative()).map(|g| g.degree() != Some(0)).unwrap_or(true) {
            continue;
        }
        produced += 1;
        let floats: Vec<f64> = coeffs.iter().map(|&v| v as f64).collect();
        let Some(approx) = durand_kerner(&floats) else {
            c.check(false, || {
                format!("float diagnostic did not converge on {p}")
            });
            continue;
        };
        let max_mod = approx.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let quarters_limit = (4.0 * (max_mod + 1.0)).ceil() as i64;
        for _ in 0..5 {
            let q = rng.gen_range(1..=quarters_limit);
            let radius = rat(q, 4);
            let rf = q as f64 / 4.0;
            if approx.iter().any(|z| (z.norm() - rf).abs() <= ROOT_MODULUS_TOLERANCE) {
                continue;
            }
            let expected = approx.iter().filter(|z| z.norm() < rf).count();
            let counted = count_roots_in_disk(&p, &radius).unwrap();
            c.check(counted == DiskCount::Inside(expected), || {
                format!("general sample {p}, radius {radius}: disk gave {counted}, float diagnostic sees {expected}")
            });
            general_comparisons += 1;
        }
    }
    c.conclude(&format!(
        "{real_comparisons} Sturm comparisons on real-rooted inputs and {general_comparisons} float-diagnostic comparisons on general inputs agree"
    ));
}

// ---------------------------------------------------------------------------
// 9. Block-diagonal certificate
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_block_diagonal_certificate() {
    let mut c = Criterion::new(9, "block-diagonal certificate");
    let fib = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap();
    let params = BlockDiagonalParams::new(vec![fib.clone(), fib, IntMatrix::identity(2)]).unwrap();
    let m = build_block_diagonal(&params);
    c.check(
        m.is_symplectic(&SymplecticForm::PairwiseBlocks { g: 3 }).unwrap(),
        || "6×6 direct sum is not symplectic under the pairwise form".to_string(),
    );

    let cp = m.charpoly();
    let quad = IntPoly::from_i64(&[1, -3, 1]);
    let expected = &(&quad * &quad) * &(&IntPoly::from_i64(&[-1, 1]) * &IntPoly::from_i64(&[-1, 1]));
    c.check(cp == expected, || {
        format!("charpoly is {cp}, expected (x²−3x+1)²(x−1)²")
    });

    // The (x²−3x+1) factor appears squared: it divides the multiplicity-two
    // square-free part, so its roots are non-simple.
    let decomposition = cp.square_free_decomposition().unwrap();
    c.check(
        decomposition
            .parts
            .iter()
            .any(|(f, mult)| *mult == 2 && f.divisible_by(&quad)),
        || format!("no multiplicity-2 part is divisible by x²−3x+1: {:?}", decomposition.parts),
    );

    let cert = certify_biperron(&cp, CertMode::FullSpectrum, 64).unwrap();
    c.check(cert.verdict == Verdict::BiPerron, || {
        format!("full-spectrum verdict: {} ({})", cert.verdict, cert.detail)
    });
    match &cert.leading_bracket {
        None => c.check(false, || "certificate carries no leading bracket".to_string()),
        Some(iv) => {
            // The bracket isolates (3+√5)/2 ≈ 2.618: it contains exactly one
            // root of x²−3x+1 and sits right of 2 (excluding the conjugate).
            c.check(quad.sturm_count(iv.lo(), iv.hi()).unwrap() == 1, || {
                format!(
                    "bracket ({}, {}] does not isolate a root of x²−3x+1",
                    iv.lo(),
                    iv.hi()
                )
            });
            c.check(*iv.lo() >= rat(2, 1), || {
                format!("bracket lower end {} is not right of 2", iv.lo())
            });
            // And that dominant eigenvalue is a multiple root of the
            // characteristic polynomial.
            c.check(
                classify_simplicity(&cp, iv).unwrap() == Simplicity::Multiple,
                || "leading eigenvalue classified as simple".to_string(),
            );
        }
    }
    c.conclude(
        "6×6 pairwise-symplectic witness: charpoly (x²−3x+1)²(x−1)², leading root (3+√5)/2 non-simple, full-spectrum verdict bi-perron",
    );
}
