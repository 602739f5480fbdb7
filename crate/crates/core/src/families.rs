//! Constructors for the symplectic matrix families whose leading eigenvalue
//! is bi-Perron but not simple, plus a seeded random symplectic sampler for
//! property tests.
//!
//! The core family starts from a symmetric integer g×g matrix `Y` whose
//! top-left 2×2 block is `[[a, b], [b, −a]]` (eigenvalues ±λ with
//! λ² = a² + b²) and whose trailing block `Z` has all eigenvalues in
//! [−λ, λ]. The symplectic matrix `A = [[I + Y², Y], [Y, I]]` then satisfies
//! `charpoly(A)(x) = x^g · charpoly(Y²)((x−1)²/x)`, which forces every
//! eigenvalue of `A` into the closed annulus `[1/μ, μ]` for
//! `μ = leading root of x² − (λ²+2)x + 1` and makes μ a *double* eigenvalue:
//! bi-Perron, yet non-simple.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactmat::{IntMatrix, MatrixError, SymplecticForm};
use crate::intpoly::{IntPoly, PolyError};
use crate::rootcert::{certify_biperron, AnnulusCertificate, CertMode, RootCertError, Verdict};

/// Default bracket-refinement budget for certification inside the pipeline.
const DEFAULT_MAX_REFINEMENT: u32 = 64;

/// Errors from family construction and the certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad-params: {0}")]
    BadParams(String),
    #[error("not-symmetric: the matrix must equal its transpose")]
    NotSymmetric,
    #[error("closed-form-unavailable: {0}")]
    ClosedFormUnavailable(String),
    #[error("block {index} is not symplectic for the pairwise form of its size")]
    BlockNotSymplectic { index: usize },
    #[error("stage {stage} failed: {detail}")]
    Stage { stage: &'static str, detail: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cert(#[from] RootCertError),
}

pub type FamilyResult<T> = Result<T, FamilyError>;

/// Parameters for the `Y`-family: genus, the 2×2 block entries `a, b`, and
/// an optional trailing symmetric block `Z` of size (g−2)×(g−2).
///
/// Validation certifies the eigenvalue condition on `Z` exactly: writing
/// `e` for the even part of `charpoly(Z)(x)·charpoly(Z)(−x)` — a polynomial
/// in `y = x²` whose roots are the squared eigenvalues — the condition
/// "every eigenvalue of Z lies in [−λ, λ]" is one Sturm count:
/// no root of `e` exceeds λ² = a² + b². Both tails are covered at once and
/// no irrational endpoint is ever needed.
///
/// `a = b = 0` is deliberately accepted (λ = 1 fails to exceed 1, not to
/// exist): it drives the identity matrix through the full pipeline, which
/// then fails at certification — where the defect actually lives — rather
/// than at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YFamilyParams {
    g: usize,
    a: i64,
    b: i64,
    z: Option<IntMatrix>,
}

impl YFamilyParams {
    pub fn new(g: usize, a: i64, b: i64, z: Option<IntMatrix>) -> FamilyResult<YFamilyParams> {
        if g < 2 {
            return Err(FamilyError::BadParams(format!(
                "genus must be at least 2, got {g}"
            )));
        }
        if let Some(z) = &z {
            if g == 2 {
                return Err(FamilyError::BadParams(
                    "genus 2 leaves no room for a trailing block".into(),
                ));
            }
            if z.dim() != g - 2 {
                return Err(FamilyError::BadParams(format!(
                    "trailing block must be {}x{}, got {}x{}",
                    g - 2,
                    g - 2,
                    z.dim(),
                    z.dim()
                )));
            }
            if !z.is_symmetric() {
                return Err(FamilyError::BadParams(
                    "trailing block must be symmetric".into(),
                ));
            }
            let lambda_sq = BigInt::from(a) * a + BigInt::from(b) * b;
            if !all_eigenvalues_bounded_by(&z.charpoly(), &lambda_sq)? {
                return Err(FamilyError::BadParams(format!(
                    "an eigenvalue of the trailing block exceeds λ = sqrt({lambda_sq}) in magnitude"
                )));
            }
        }
        Ok(YFamilyParams { g, a, b, z })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn z(&self) -> Option<&IntMatrix> {
        self.z.as_ref()
    }

    /// λ² = a² + b², the squared leading eigenvalue of the 2×2 block.
    pub fn lambda_squared(&self) -> BigInt {
        BigInt::from(self.a) * self.a + BigInt::from(self.b) * self.b
    }
}

/// Certifies that every root of `p` (assumed real-rooted: `p` is the
/// characteristic polynomial of a symmetric matrix) has square at most
/// `bound_sq`, via a Sturm count of the even part of `p(x)p(−x)` beyond
/// `bound_sq`. Roots of squared magnitude exactly `bound_sq` pass (the
/// interval is closed).
fn all_eigenvalues_bounded_by(p: &IntPoly, bound_sq: &BigInt) -> FamilyResult<bool> {
    let e = even_part_in_square(p);
    let cauchy = e.cauchy_root_bound()?;
    let lo = BigRational::from_integer(bound_sq.clone());
    let hi = BigRational::from_integer(cauchy);
    if lo >= hi {
        // Every root of `e` is below the Cauchy bound ≤ bound_sq already.
        return Ok(true);
    }
    Ok(e.sturm_count(&lo, &hi)? == 0)
}

/// The polynomial `e` with `e(x²) = ±p(x)·p(−x)`, normalized to a positive
/// leading coefficient; its roots are exactly the squares of the roots of
/// `p`, with multiplicity.
fn even_part_in_square(p: &IntPoly) -> IntPoly {
    assert!(!p.is_zero(), "even part needs a nonzero polynomial");
    let flipped = IntPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
            .collect(),
    );
    let product = p * &flipped;
    let coeffs = product.coeffs();
    debug_assert!(
        coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero()),
        "p(x)·p(−x) must be even"
    );
    IntPoly::new(coeffs.iter().step_by(2).cloned().collect()).with_positive_lc()
}

/// The g×g symmetric matrix with top-left block `[[a, b], [b, −a]]` and
/// bottom-right block `Z` (zero when absent).
pub fn build_y(params: &YFamilyParams) -> IntMatrix {
    let g = params.g;
    let mut y = IntMatrix::zeros(g);
    *y.at_mut(0, 0) = BigInt::from(params.a);
    *y.at_mut(0, 1) = BigInt::from(params.b);
    *y.at_mut(1, 0) = BigInt::from(params.b);
    *y.at_mut(1, 1) = BigInt::from(-params.a);
    if let Some(z) = &params.z {
        for i in 0..z.dim() {
            for j in 0..z.dim() {
                *y.at_mut(2 + i, 2 + j) = z.at(i, j).clone();
            }
        }
    }
    debug_assert!(y.is_symmetric());
    y
}

/// The 2g×2g block matrix `[[I + Y², Y], [Y, I]]`, asserted symplectic for
/// the standard block form `[[0, I], [−I, 0]]`.
pub fn build_a_from_y(y: &IntMatrix) -> FamilyResult<IntMatrix> {
    if !y.is_symmetric() {
        return Err(FamilyError::NotSymmetric);
    }
    let g = y.dim();
    let identity = IntMatrix::identity(g);
    let top_left = identity.add(&y.mul(y));
    let a = IntMatrix::from_blocks(&top_left, y, y, &identity);
    assert!(
        a.is_symplectic(&SymplecticForm::StandardBlock { g })?,
        "the block construction must land in the symplectic group"
    );
    Ok(a)
}

/// The exact closed form `(x−1)^(2g−4) · (x² − (λ²+2)x + 1)²` of the
/// characteristic polynomial of the family matrix when `Z` is absent.
pub fn expected_charpoly(params: &YFamilyParams) -> FamilyResult<IntPoly> {
    if params.z.is_some() {
        return Err(FamilyError::ClosedFormUnavailable(
            "the closed form only covers an absent (zero) trailing block".into(),
        ));
    }
    let lambda_sq = params.lambda_squared();
    let quad = IntPoly::new(vec![
        BigInt::one(),
        -(lambda_sq + BigInt::from(2)),
        BigInt::one(),
    ]);
    let linear = IntPoly::from_i64(&[-1, 1]);
    let mut out = &quad * &quad;
    for _ in 0..2 * params.g - 4 {
        out = &out * &linear;
    }
    Ok(out)
}

/// Blocks for a direct-sum symplectic matrix; each block is certified
/// symplectic for the pairwise form `diag([[0,1],[−1,0]], …)` of its size —
/// the form that direct sums provably preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDiagonalParams {
    blocks: Vec<IntMatrix>,
}

impl BlockDiagonalParams {
    pub fn new(blocks: Vec<IntMatrix>) -> FamilyResult<BlockDiagonalParams> {
        if blocks.is_empty() {
            return Err(FamilyError::BadParams(
                "at least one block is required".into(),
            ));
        }
        for (index, block) in blocks.iter().enumerate() {
            if block.dim() % 2 != 0 {
                return Err(FamilyError::BadParams(format!(
                    "block {index} has odd dimension {}",
                    block.dim()
                )));
            }
            let form = SymplecticForm::PairwiseBlocks { g: block.dim() / 2 };
            if !block.is_symplectic(&form)? {
                return Err(FamilyError::BlockNotSymplectic { index });
            }
        }
        Ok(BlockDiagonalParams { blocks })
    }

    pub fn blocks(&self) -> &[IntMatrix] {
        &self.blocks
    }

    pub fn total_genus(&self) -> usize {
        self.blocks.iter().map(|b| b.dim() / 2).sum()
    }
}

/// The direct sum of the blocks, asserted symplectic for the pairwise form
/// of the total size.
pub fn build_block_diagonal(params: &BlockDiagonalParams) -> IntMatrix {
    let mut out = params.blocks[0].clone();
    for block in &params.blocks[1..] {
        out = out.direct_sum(block);
    }
    let form = SymplecticForm::PairwiseBlocks {
        g: params.total_genus(),
    };
    assert!(
        out.is_symplectic(&form)
            .expect("dimensions match by construction"),
        "direct sums of pairwise-symplectic blocks stay symplectic"
    );
    out
}

/// A product of `steps` random elementary symplectic generators for the
/// standard block form: `[[I, S], [0, I]]` and `[[I, 0], [S, I]]` for
/// symmetric `S` with entries in {−1, 0, 1}, and `[[U, 0], [0, (Uᵀ)⁻¹]]`
/// for an elementary unimodular `U`. Deterministic for a fixed seed. The
/// palette generates group elements for property tests; no uniformity over
/// the group is claimed.
pub fn random_symplectic(g: usize, steps: usize, seed: u64) -> IntMatrix {
    assert!(g >= 1, "genus must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = IntMatrix::identity(2 * g);
    for _ in 0..steps {
        let generator = match rng.gen_range(0..3u8) {
            0 => shear_generator(g, &mut rng, true),
            1 => shear_generator(g, &mut rng, false),
            _ => diagonal_generator(g, &mut rng),
        };
        acc = acc.mul(&generator);
    }
    debug_assert!(acc
        .is_symplectic(&SymplecticForm::StandardBlock { g })
        .unwrap());
    acc
}

/// `[[I, S], [0, I]]` (upper) or `[[I, 0], [S, I]]` (lower) for a random
/// symmetric `S` with entries in {−1, 0, 1}.
fn shear_generator(g: usize, rng: &mut ChaCha8Rng, upper: bool) -> IntMatrix {
    let mut s = IntMatrix::zeros(g);
    for i in 0..g {
        for j in i..g {
            let e = BigInt::from(rng.gen_range(-1..=1));
            *s.at_mut(i, j) = e.clone();
            *s.at_mut(j, i) = e;
        }
    }
    let identity = IntMatrix::identity(g);
    let zero = IntMatrix::zeros(g);
    if upper {
        IntMatrix::from_blocks(&identity, &s, &zero, &identity)
    } else {
        IntMatrix::from_blocks(&identity, &zero, &s, &identity)
    }
}

/// `[[U, 0], [0, (Uᵀ)⁻¹]]` for `U = I + c·E_(i,j)` with `i ≠ j`, `c = ±1`
/// (so `(Uᵀ)⁻¹ = I − c·E_(j,i)`), or `−I` blocks at genus 1 where no
/// off-diagonal slot exists.
fn diagonal_generator(g: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut u = IntMatrix::identity(g);
    let mut u_inv_t = IntMatrix::identity(g);
    if g == 1 {
        *u.at_mut(0, 0) = BigInt::from(-1);
        *u_inv_t.at_mut(0, 0) = BigInt::from(-1);
    } else {
        let i = rng.gen_range(0..g);
        let mut j = rng.gen_range(0..g - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        *u.at_mut(i, j) = BigInt::from(c);
        *u_inv_t.at_mut(j, i) = BigInt::from(-c);
    }
    let zero = IntMatrix::zeros(g);
    IntMatrix::from_blocks(&u, &zero, &zero, &u_inv_t)
}

/// A fully certified witness that the family matrix has a bi-Perron,
/// non-simple leading eigenvalue — i.e. that realizing such spectra does not
/// require simple leading roots.
#[derive(Debug, Clone)]
pub struct NonsurjectivityCertificate {
    pub genus: usize,
    pub a: i64,
    pub b: i64,
    pub z: Option<IntMatrix>,
    pub matrix: IntMatrix,
    pub charpoly: IntPoly,
    /// The exact closed form, when the trailing block is absent; always
    /// equal to `charpoly` (the pipeline aborts otherwise).
    pub closed_form: Option<IntPoly>,
    /// True: every eigenvalue has algebraic multiplicity at least 2.
    pub nonsimple: bool,
    pub annulus: AnnulusCertificate,
}

impl NonsurjectivityCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "genus": self.genus,
            "a": self.a,
            "b": self.b,
            "z": self.z.as_ref().map(|z| z.to_json()).unwrap_or(serde_json::Value::Null),
            "matrix": self.matrix.to_json(),
            "charpoly": self.charpoly.to_json(),
            "closed_form": self.closed_form.as_ref().map(|p| p.to_json()).unwrap_or(serde_json::Value::Null),
            "nonsimple": self.nonsimple,
            "annulus": self.annulus.to_json(),
        })
    }
}

/// Runs the full construction-and-certification pipeline:
/// build Y → build A → verify symplectic → characteristic polynomial
/// (checked against the closed form when available) → every root non-simple
/// → bi-Perron annulus certificate. Any failing stage aborts with the stage
/// name; the successful bundle is self-contained evidence.
pub fn nonsurjectivity_certificate(
    params: &YFamilyParams,
) -> FamilyResult<NonsurjectivityCertificate> {
    nonsurjectivity_certificate_with_refinement(params, DEFAULT_MAX_REFINEMENT)
}

/// [`nonsurjectivity_certificate`] with an explicit bracket-refinement
/// budget for the certification stage.
pub fn nonsurjectivity_certificate_with_refinement(
    params: &YFamilyParams,
    max_refinement: u32,
) -> FamilyResult<NonsurjectivityCertificate> {
    let y = build_y(params);
    let matrix = build_a_from_y(&y)?;
    let symplectic = matrix.is_symplectic(&SymplecticForm::StandardBlock { g: params.g })?;
    if !symplectic {
        return Err(FamilyError::Stage {
            stage: "verify-symplectic",
            detail: "the constructed matrix does not preserve the standard block form".into(),
        });
    }
    let charpoly = matrix.charpoly();
    let closed_form = match expected_charpoly(params) {
        Ok(expected) => {
            if expected != charpoly {
                return Err(FamilyError::Stage {
                    stage: "closed-form",
                    detail: "characteristic polynomial deviates from the closed form".into(),
                });
            }
            Some(expected)
        }
        Err(FamilyError::ClosedFormUnavailable(_)) => None,
        Err(e) => return Err(e),
    };
    if !charpoly.all_roots_nonsimple()? {
        return Err(FamilyError::Stage {
            stage: "all-roots-nonsimple",
            detail: "some eigenvalue is a simple root of the characteristic polynomial".into(),
        });
    }
    let annulus = certify_biperron(&charpoly, CertMode::MinimalPoly, max_refinement)?;
    if annulus.verdict != Verdict::BiPerron {
        return Err(FamilyError::Stage {
            stage: "certify-biperron",
            detail: format!("verdict {}: {}", annulus.verdict, annulus.detail),
        });
    }
    Ok(NonsurjectivityCertificate {
        genus: params.g,
        a: params.a,
        b: params.b,
        z: params.z.clone(),
        matrix,
        charpoly,
        closed_form,
        nonsimple: true,
        annulus,
    })
}

impl fmt::Display for NonsurjectivityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "genus {} family (a, b) = ({}, {}){}",
            self.genus,
            self.a,
            self.b,
            if self.z.is_some() {
                " with trailing block"
            } else {
                ""
            }
        )?;
        writeln!(f, "char poly: {}", self.charpoly)?;
        writeln!(f, "all eigenvalues non-simple: {}", self.nonsimple)?;
        write!(f, "annulus verdict: {}", self.annulus.verdict)
    }
}
