//! Certified root location: real-root isolation, exact root counting in
//! disks, leading-eigenvalue extraction, and the bi-Perron annulus
//! certificate.
//!
//! Everything here is exact rational arithmetic. Disk counts use the
//! Schur–Cohn reduction; when the reduction degenerates, a root on the circle
//! is either *proven* (via the gcd of the scaled polynomial with its
//! reciprocal, followed by a Chebyshev-style change of variable and a Sturm
//! count) or *excluded*, in which case the count is recovered by sandwiching
//! the radius between nearby rationals. A "boundary" answer is only ever
//! returned with a proof; a wrong count is never returned.
//!
//! The bi-Perron certificate for a leading real root λ > 1 consists of two
//! disk counts at rational radii `r` and `1/r` with `r` slightly above λ:
//! all roots inside radius `r`, none inside radius `1/r`. The gap `r − λ`
//! shrinks as `max_refinement` grows, so the certified annulus approaches
//! the closed annulus `[1/λ, λ]` to any desired resolution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intpoly::{IntPoly, PolyError, SturmChain};

/// Radius-perturbation rounds tried when a Schur–Cohn chain degenerates
/// without a boundary root.
const SQUEEZE_ROUNDS: u32 = 64;
/// Retry budget for the dominance check in [`leading_eigenvalue_bracket`].
const DOMINANCE_ROUNDS: u32 = 64;
/// Bracket-refinement rounds beyond which nothing changes for the degrees
/// this library handles (resolution ~2^-21 on the leading root).
const REFINEMENT_SATURATION: u32 = 20;
/// Caps for the bounded-degree factor search.
const FACTOR_TUPLE_CAP: u128 = 100_000;
const FACTOR_VALUE_CAP: u64 = 1_000_000_000_000;
const FACTOR_POINT_RANGE: i64 = 24;

/// Errors from certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootCertError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("disk radius must be positive")]
    NonpositiveRadius,
    #[error("interval does not isolate a single root ({roots_found} roots found)")]
    NotIsolating { roots_found: usize },
    #[error("inconclusive: {detail}")]
    Inconclusive { detail: String },
}

/// Exact count of roots strictly inside a disk, or a proof that some root
/// lies exactly on its boundary circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskCount {
    /// Exactly this many roots (with multiplicity) have modulus < r, and no
    /// root has modulus exactly r.
    Inside(usize),
    /// At least one root has modulus exactly r (proven, not guessed).
    Boundary,
}

impl fmt::Display for DiskCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskCount::Inside(k) => write!(f, "{k}"),
            DiskCount::Boundary => write!(f, "boundary"),
        }
    }
}

/// Formats a rational exactly: `"27"` or `"55/12"`.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Clears the substitution `x -> r*x` to an integer polynomial: coefficient
/// `k` becomes `a_k * u^k * v^(d-k)` for `r = u/v`. Content-stripped; the
/// root set is the roots of `p` divided by `r`.
fn scale_to_radius(p: &IntPoly, r: &BigRational) -> IntPoly {
    let d = p.degree().expect("scale_to_radius needs a nonzero polynomial");
    let (u, v) = (r.numer(), r.denom());
    let mut vpow = Vec::with_capacity(d + 1);
    vpow.push(BigInt::one());
    for _ in 0..d {
        vpow.push(vpow.last().unwrap() * v);
    }
    let mut out = Vec::with_capacity(d + 1);
    let mut upow = BigInt::one();
    for k in 0..=d {
        out.push(p.coeff(k) * &upow * &vpow[d - k]);
        upow *= u;
    }
    IntPoly::new(out).primitive_part()
}

/// One Schur–Cohn reduction chain. Returns the number of roots (with
/// multiplicity) of modulus < 1, or `None` when a step degenerates
/// (`|a_0| = |a_n|` at some level), which the caller must resolve.
///
/// Requires `q(0) != 0`.
fn unit_disk_count(q: &IntPoly) -> Option<usize> {
    let n = q.degree().expect("unit_disk_count needs a nonzero polynomial");
    if n == 0 {
        return Some(0);
    }
    let a0 = q.coeff(0);
    let an = q.coeff(n);
    let gamma = &a0 * &a0 - &an * &an;
    if gamma.is_zero() {
        return None;
    }
    let g = &q.mul_scalar(&a0) - &q.reversed().mul_scalar(&an);
    if g.is_zero() {
        return None;
    }
    let inner = unit_disk_count(&g.primitive_part())?;
    Some(if gamma.is_positive() { inner } else { n - inner })
}

/// Decides *exactly* whether `q` has a root on the unit circle, given that
/// `q(0) != 0` and `q(±1) != 0` (the caller checks ±1 first).
///
/// Any unit-circle root of a real polynomial is shared with its reversal, so
/// it is a root of `g = gcd(q, rev(q))`; conversely `g` collects reciprocal
/// root pairs. With ±1 excluded, `g` is palindromic of even degree 2s, so
/// `g(x)/x^s` is a polynomial `h` in `w = x + 1/x` via the recurrence
/// `P_0 = 2, P_1 = w, P_(j+1) = w*P_j − P_(j−1)`; unit-circle roots of `g`
/// correspond exactly to real roots of `h` in the open interval (−2, 2).
fn has_unit_circle_roots(q: &IntPoly) -> Result<bool, RootCertError> {
    let g = IntPoly::gcd(q, &q.reversed())?;
    if g.degree() == Some(0) {
        return Ok(false);
    }
    let g = g.square_free_part()?;
    let dg = g.degree().expect("gcd of nonzero polynomials is nonzero");
    assert!(
        g.is_palindromic() && dg % 2 == 0,
        "reciprocal kernel must be palindromic of even degree"
    );
    let s = dg / 2;
    let mut h = IntPoly::constant(g.coeff(s));
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = IntPoly::x();
    for j in 1..=s {
        h = &h + &cur.mul_scalar(&g.coeff(s + j));
        if j < s {
            let next = &(&IntPoly::x() * &cur) - &prev;
            prev = cur;
            cur = next;
        }
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let neg_two = BigRational::from_integer(BigInt::from(-2));
    // h(±2) = ±g(±1) ≠ 0, so the half-open count equals the open count.
    Ok(h.sturm_count(&neg_two, &two)? > 0)
}

/// Exact number of complex roots (with multiplicity) of modulus < `radius`,
/// or a proof that a root has modulus exactly `radius`.
///
/// Never returns a wrong count: when the Schur–Cohn chain degenerates, a
/// boundary root is either proven or excluded; in the latter case the count
/// is certified by matching counts at radii `radius*(1 ± 2^-k)`.
pub fn count_roots_in_disk(p: &IntPoly, radius: &BigRational) -> Result<DiskCount, RootCertError> {
    if !radius.is_positive() {
        return Err(RootCertError::NonpositiveRadius);
    }
    if p.is_zero() {
        return Err(RootCertError::Poly(PolyError::ZeroPolynomial));
    }
    // Roots at the origin always count as inside.
    let origin = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = IntPoly::new(p.coeffs()[origin..].to_vec());
    if reduced.degree() == Some(0) {
        return Ok(DiskCount::Inside(origin));
    }
    let q = scale_to_radius(&reduced, radius);
    if let Some(k) = unit_disk_count(&q) {
        return Ok(DiskCount::Inside(origin + k));
    }
    // Degenerate chain: settle the boundary question exactly.
    if q.eval_int(&BigInt::one()).is_zero() || q.eval_int(&BigInt::from(-1)).is_zero() {
        return Ok(DiskCount::Boundary);
    }
    if has_unit_circle_roots(&q)? {
        return Ok(DiskCount::Boundary);
    }
    // No root has modulus exactly `radius`; sandwich the count between
    // nearby radii (the count of moduli < radius is monotone in the radius).
    for k in 1..=SQUEEZE_ROUNDS {
        let delta = BigRational::new(BigInt::one(), BigInt::one() << k);
        let below = unit_disk_count(&scale_to_radius(
            &reduced,
            &(radius * (BigRational::one() - &delta)),
        ));
        let above = unit_disk_count(&scale_to_radius(
            &reduced,
            &(radius * (BigRational::one() + &delta)),
        ));
        if let (Some(a), Some(b)) = (below, above) {
            if a == b {
                return Ok(DiskCount::Inside(origin + a));
            }
        }
    }
    Err(RootCertError::Inconclusive {
        detail: format!(
            "Schur-Cohn chain stayed degenerate at radius {} after {} perturbation rounds",
            rational_string(radius),
            SQUEEZE_ROUNDS
        ),
    })
}

/// Rational-endpoint interval certified to contain exactly one real root of
/// its (square-free) polynomial. Endpoints are never roots, so the root lies
/// strictly between them and the polynomial changes sign across the interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    lo: BigRational,
    hi: BigRational,
    poly: IntPoly,
}

impl IsolatingInterval {
    /// Wraps endpoints that were produced by a Sturm bisection and therefore
    /// already satisfy the invariants (asserted here).
    pub(crate) fn certified(poly: IntPoly, lo: BigRational, hi: BigRational) -> Self {
        assert!(lo < hi, "isolating interval must be nonempty");
        let (sl, sh) = (poly.sign_at_rat(&lo), poly.sign_at_rat(&hi));
        assert!(
            sl != 0 && sh != 0 && sl != sh,
            "isolating interval endpoints must straddle a sign change"
        );
        debug_assert_eq!(poly.sturm_count(&lo, &hi), Ok(1));
        IsolatingInterval { lo, hi, poly }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// The square-free polynomial whose root this interval isolates.
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Whether `x` lies strictly between the endpoints (the isolated root
    /// always does; endpoints are never roots).
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Bisects `rounds` times, keeping the half that contains the root.
    /// Split points are chosen off the root set, so the invariants persist.
    pub fn refined(&self, rounds: u32) -> IsolatingInterval {
        let chain = SturmChain::of_square_free(self.poly.clone());
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        for _ in 0..rounds {
            let t = split_point(&self.poly, &lo, &hi);
            if chain.count_half_open(&lo, &t) == 1 {
                hi = t;
            } else {
                lo = t;
            }
        }
        IsolatingInterval::certified(self.poly.clone(), lo, hi)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert(
            "lo".into(),
            serde_json::Value::String(rational_string(&self.lo)),
        );
        obj.insert(
            "hi".into(),
            serde_json::Value::String(rational_string(&self.hi)),
        );
        obj.insert("poly".into(), self.poly.to_json());
        serde_json::Value::Object(obj)
    }
}

/// A point strictly inside `(lo, hi)` where `f` does not vanish. Tries the
/// midpoint, then an equispaced grid of deg(f)+1 further points — more
/// points than `f` has roots, so one of them works.
fn split_point(f: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    if f.sign_at_rat(&mid) != 0 {
        return mid;
    }
    let n = f.degree().unwrap_or(0);
    let width = hi - lo;
    for j in 1..=n + 1 {
        let t = lo + &width * BigRational::new(BigInt::from(j), BigInt::from(n + 2));
        if f.sign_at_rat(&t) != 0 {
            return t;
        }
    }
    unreachable!("a nonzero polynomial cannot vanish at deg+2 distinct points")
}

/// Isolates every distinct real root of `p` (through its square-free part):
/// pairwise disjoint intervals, one per root, sorted by position, each of
/// width at most 1/4.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<IsolatingInterval>, RootCertError> {
    if p.is_zero() {
        return Err(RootCertError::Poly(PolyError::ZeroPolynomial));
    }
    let f = p.square_free_part()?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let bound = f.cauchy_root_bound()?;
    let lo = BigRational::from_integer(-&bound);
    let hi = BigRational::from_integer(bound);
    let chain = SturmChain::of_square_free(f.clone());
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_half_open(&lo, &hi))];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo <= quarter {
            out.push(IsolatingInterval::certified(f.clone(), lo, hi));
            continue;
        }
        let t = split_point(&f, &lo, &hi);
        let left = chain.count_half_open(&lo, &t);
        stack.push((t.clone(), hi, count - left));
        stack.push((lo, t, left));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Why no leading eigenvalue bracket could be returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsenceReason {
    /// No real root exceeds 1 (covers polynomials with no real roots at all).
    NoRealRootAboveOne,
    /// A root of strictly larger modulus than the largest real root exists.
    NotDominant,
    /// Dominance could not be settled within the refinement budget.
    Inconclusive,
}

impl fmt::Display for AbsenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            AbsenceReason::NoRealRootAboveOne => "no real root exceeding 1",
            AbsenceReason::NotDominant => "the largest real root is not of maximal modulus",
            AbsenceReason::Inconclusive => {
                "dominance could not be certified within the refinement budget"
            }
        };
        f.write_str(msg)
    }
}

/// Outcome of [`leading_eigenvalue_bracket`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeadingEigenvalue {
    /// Bracket for the largest real root λ > 1, together with the
    /// certification that no root of the polynomial has modulus > hi.
    Found(IsolatingInterval),
    Absent(AbsenceReason),
}

/// Isolates the rightmost real root exceeding 1 of (the square-free part of)
/// `p`, shrunk to width ≤ 1/2. A root exactly at 1 is divided out first.
fn isolate_rightmost_above_one(p: &IntPoly) -> Result<Option<IsolatingInterval>, RootCertError> {
    let mut f = p.square_free_part()?;
    if f.eval_int(&BigInt::one()).is_zero() {
        f = f.exact_div(&IntPoly::from_i64(&[-1, 1]))?;
    }
    if f.degree() == Some(0) {
        return Ok(None);
    }
    let bound = BigRational::from_integer(f.cauchy_root_bound()?);
    let one = BigRational::one();
    if bound <= one {
        return Ok(None);
    }
    let chain = SturmChain::of_square_free(f.clone());
    let (mut lo, mut hi) = (one, bound);
    let mut count = chain.count_half_open(&lo, &hi);
    if count == 0 {
        return Ok(None);
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while count > 1 || &hi - &lo > half {
        let t = split_point(&f, &lo, &hi);
        let right = chain.count_half_open(&t, &hi);
        if right >= 1 {
            lo = t;
            count = right;
        } else {
            hi = t;
        }
    }
    Ok(Some(IsolatingInterval::certified(f, lo, hi)))
}

/// Bracket for the leading eigenvalue: the largest real root λ > 1, certified
/// (via an exact disk count at radius `hi`) to be of maximal modulus among
/// all roots — ties of equal modulus are allowed and still count as leading.
pub fn leading_eigenvalue_bracket(p: &IntPoly) -> Result<LeadingEigenvalue, RootCertError> {
    if p.is_zero() {
        return Err(RootCertError::Poly(PolyError::ZeroPolynomial));
    }
    let Some(mut iv) = isolate_rightmost_above_one(p)? else {
        return Ok(LeadingEigenvalue::Absent(AbsenceReason::NoRealRootAboveOne));
    };
    let d = p.degree().expect("nonzero polynomial");
    for _ in 0..DOMINANCE_ROUNDS {
        match count_roots_in_disk(p, iv.hi()) {
            // λ < hi strictly (hi is never a root), so a full count proves
            // every root has modulus < hi; a shortfall proves some root has
            // modulus > hi > λ.
            Ok(DiskCount::Inside(k)) if k == d => return Ok(LeadingEigenvalue::Found(iv)),
            Ok(DiskCount::Inside(_)) => {
                return Ok(LeadingEigenvalue::Absent(AbsenceReason::NotDominant))
            }
            // A root of modulus exactly hi, or a stubborn degeneracy: move
            // the right endpoint and test a fresh radius.
            Ok(DiskCount::Boundary) | Err(RootCertError::Inconclusive { .. }) => {
                let old = iv.hi().clone();
                let mut moved = false;
                for _ in 0..16 {
                    iv = iv.refined(1);
                    if iv.hi() != &old {
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    return Ok(LeadingEigenvalue::Absent(AbsenceReason::Inconclusive));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LeadingEigenvalue::Absent(AbsenceReason::Inconclusive))
}

/// The simplest rational (smallest continued-fraction expansion, hence
/// smallest denominator) in the closed interval `[lo, hi]`, `0 < lo ≤ hi`.
pub fn simplest_rational_in(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(
        lo.is_positive() && lo <= hi,
        "simplest_rational_in requires 0 < lo <= hi"
    );
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let m = lo.floor();
    let inner = simplest_rational_in(&(hi - &m).recip(), &(lo - &m).recip());
    &m + inner.recip()
}

/// Which polynomial the annulus certificate is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMode {
    /// Certify that *every* root of the input lies in the annulus — a
    /// sufficient condition, natural for reciprocal characteristic
    /// polynomials.
    FullSpectrum,
    /// Certify the annulus for the irreducible factor vanishing at λ (the
    /// Galois conjugates), which matches the bi-Perron definition exactly;
    /// falls back to the square-free part when the bounded-degree factor
    /// search cannot pin the factor down.
    MinimalPoly,
}

impl fmt::Display for CertMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertMode::FullSpectrum => "full-spectrum",
            CertMode::MinimalPoly => "minimal-poly",
        })
    }
}

/// Certification verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    BiPerron,
    NotBiPerron,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BiPerron => "bi-perron",
            Verdict::NotBiPerron => "not-bi-perron",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Self-contained record of a bi-Perron certification run.
///
/// When `verdict` is `BiPerron`: a real root λ > 1 lies in `leading_bracket`,
/// all deg(target) roots of `target` (with multiplicity) have modulus
/// < `outer_radius`, none has modulus < `inner_radius`, and
/// `inner_radius = 1/outer_radius` with `outer_radius − λ` bounded by twice
/// the bracket width — so the certified annulus approaches `[1/λ, λ]` as
/// `max_refinement` grows.
#[derive(Debug, Clone)]
pub struct AnnulusCertificate {
    /// The input polynomial.
    pub poly: IntPoly,
    /// The polynomial whose roots were actually counted: the input
    /// (full-spectrum), the minimal factor of λ, or the square-free fallback.
    pub target: IntPoly,
    pub mode: CertMode,
    pub verdict: Verdict,
    /// True when minimal-poly mode could not isolate the irreducible factor
    /// and certified the square-free part instead (a superset of the
    /// conjugates: a pass is still sound, a failure becomes Undecided).
    pub minimal_poly_fallback: bool,
    pub leading_bracket: Option<IsolatingInterval>,
    pub outer_radius: Option<BigRational>,
    pub inner_radius: Option<BigRational>,
    /// Every disk count performed, in order; `None` marks a degenerate count.
    pub disk_counts: Vec<(BigRational, Option<DiskCount>)>,
    /// Human-readable explanation of the verdict.
    pub detail: String,
}

impl AnnulusCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let rat = |r: &Option<BigRational>| match r {
            Some(r) => serde_json::Value::String(rational_string(r)),
            None => serde_json::Value::Null,
        };
        let counts: Vec<serde_json::Value> = self
            .disk_counts
            .iter()
            .map(|(r, c)| {
                let outcome = match c {
                    Some(DiskCount::Inside(k)) => serde_json::Value::from(*k),
                    Some(DiskCount::Boundary) => serde_json::Value::String("boundary".into()),
                    None => serde_json::Value::String("degenerate".into()),
                };
                serde_json::json!({ "radius": rational_string(r), "outcome": outcome })
            })
            .collect();
        serde_json::json!({
            "polynomial": self.poly.to_json(),
            "target": self.target.to_json(),
            "mode": self.mode.to_string(),
            "verdict": self.verdict.to_string(),
            "minimal_poly_fallback": self.minimal_poly_fallback,
            "leading_bracket": self.leading_bracket.as_ref().map(|b| b.to_json()).unwrap_or(serde_json::Value::Null),
            "outer_radius": rat(&self.outer_radius),
            "inner_radius": rat(&self.inner_radius),
            "disk_counts": counts,
            "detail": self.detail,
        })
    }
}

/// Certifies whether the leading eigenvalue of `p` is bi-Perron: a real
/// algebraic integer λ > 1 all of whose conjugates lie in the closed annulus
/// `1/λ ≤ |z| ≤ λ`.
///
/// The bracket for λ is refined for at most `max_refinement` rounds; the
/// certificate radii sit strictly above the bracket, so every count outcome
/// is decisive (see the module docs for the resolution guarantee). All
/// outcomes are reported in the certificate; the only errors are violated
/// preconditions.
pub fn certify_biperron(
    p: &IntPoly,
    mode: CertMode,
    max_refinement: u32,
) -> Result<AnnulusCertificate, RootCertError> {
    if p.is_zero() {
        return Err(RootCertError::Poly(PolyError::ZeroPolynomial));
    }
    let mut cert = AnnulusCertificate {
        poly: p.clone(),
        target: p.clone(),
        mode,
        verdict: Verdict::Undecided,
        minimal_poly_fallback: false,
        leading_bracket: None,
        outer_radius: None,
        inner_radius: None,
        disk_counts: Vec::new(),
        detail: String::new(),
    };
    if p.degree() == Some(0) {
        cert.verdict = Verdict::NotBiPerron;
        cert.detail = "constant polynomial: no real root exceeding 1".into();
        return Ok(cert);
    }
    let Some(rough) = isolate_rightmost_above_one(p)? else {
        cert.verdict = Verdict::NotBiPerron;
        cert.detail = "no real root exceeding 1".into();
        return Ok(cert);
    };
    // Spend most of the refinement budget up front (saturating at resolution
    // ~2^-21), keeping the remainder for degenerate-count retries.
    let mut rounds_left = max_refinement;
    let up_front = rounds_left.min(REFINEMENT_SATURATION);
    let mut bracket = rough.refined(up_front);
    rounds_left -= up_front;
    cert.leading_bracket = Some(bracket.clone());

    let (target, fallback) = match mode {
        CertMode::FullSpectrum => (p.clone(), false),
        CertMode::MinimalPoly => {
            let sf = p.square_free_part()?;
            match minimal_factor_containing(&sf, bracket.lo(), bracket.hi())? {
                Some(m) => (m, false),
                None => (sf, true),
            }
        }
    };
    cert.target = target.clone();
    cert.minimal_poly_fallback = fallback;
    let d = target.degree().expect("target is nonzero");

    // A violation of the annulus by the square-free *proxy* says nothing
    // about the actual conjugates, so under fallback it downgrades to
    // Undecided; otherwise it is a definitive NotBiPerron.
    let violation = |cert: &mut AnnulusCertificate, msg: String| {
        if fallback {
            cert.verdict = Verdict::Undecided;
            cert.detail = format!(
                "square-free proxy violates the annulus ({msg}); conjugates undetermined"
            );
        } else {
            cert.verdict = Verdict::NotBiPerron;
            cert.detail = msg;
        }
    };

    loop {
        // Radii strictly above the bracket: λ ≤ hi < r_out, so a full outer
        // count, an outer shortfall, and a boundary hit are all decisive.
        let w = bracket.width();
        let half_w = &w / BigRational::from_integer(BigInt::from(2));
        let r_out = simplest_rational_in(&(bracket.hi() + half_w), &(bracket.hi() + w));
        let r_in = r_out.recip();
        cert.outer_radius = Some(r_out.clone());
        cert.inner_radius = Some(r_in.clone());
        cert.leading_bracket = Some(bracket.clone());

        let outer = count_roots_in_disk(&target, &r_out);
        cert.disk_counts.push((r_out.clone(), outer.as_ref().ok().copied()));
        match outer {
            Ok(DiskCount::Inside(k)) if k == d => {
                let inner = count_roots_in_disk(&target, &r_in);
                cert.disk_counts.push((r_in.clone(), inner.as_ref().ok().copied()));
                match inner {
                    Ok(DiskCount::Inside(0)) => {
                        cert.verdict = Verdict::BiPerron;
                        cert.detail = format!(
                            "all {d} roots (with multiplicity) lie in the annulus [{}, {}]; \
                             the outer radius exceeds the leading root by less than {}",
                            rational_string(&r_in),
                            rational_string(&r_out),
                            rational_string(&(&r_out - bracket.lo())),
                        );
                        return Ok(cert);
                    }
                    Ok(DiskCount::Inside(k)) => {
                        violation(
                            &mut cert,
                            format!(
                                "{k} root(s) of modulus below the inner radius {}",
                                rational_string(&r_in)
                            ),
                        );
                        return Ok(cert);
                    }
                    Ok(DiskCount::Boundary) => {
                        violation(
                            &mut cert,
                            format!(
                                "a root has modulus exactly {} < 1/λ",
                                rational_string(&r_in)
                            ),
                        );
                        return Ok(cert);
                    }
                    Err(RootCertError::Inconclusive { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(DiskCount::Inside(k)) => {
                violation(
                    &mut cert,
                    format!(
                        "only {k} of {d} roots lie within the outer radius {}; \
                         a root of modulus above λ exists",
                        rational_string(&r_out)
                    ),
                );
                return Ok(cert);
            }
            Ok(DiskCount::Boundary) => {
                violation(
                    &mut cert,
                    format!(
                        "a root has modulus exactly {} > λ",
                        rational_string(&r_out)
                    ),
                );
                return Ok(cert);
            }
            Err(RootCertError::Inconclusive { .. }) => {}
            Err(e) => return Err(e),
        }
        // Only the degenerate-count arms reach this point: spend refinement
        // budget to move the radii and retry.
        if rounds_left == 0 {
            cert.verdict = Verdict::Undecided;
            cert.detail =
                "disk counting stayed degenerate within the refinement budget".into();
            return Ok(cert);
        }
        let step = rounds_left.min(8);
        bracket = bracket.refined(step);
        rounds_left -= step;
    }
}

/// Eigenvalue-multiplicity classification of the root isolated by `bracket`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    Multiple,
}

impl fmt::Display for Simplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Simplicity::Simple => "simple",
            Simplicity::Multiple => "multiple",
        })
    }
}

/// Whether the root of `p` isolated by `bracket` is a simple or multiple
/// root of `p`: multiple exactly when `gcd(p, p′)` has a root there.
///
/// Errors when `bracket` does not isolate exactly one distinct root of `p`.
pub fn classify_simplicity(
    p: &IntPoly,
    bracket: &IsolatingInterval,
) -> Result<Simplicity, RootCertError> {
    if p.is_zero() {
        return Err(RootCertError::Poly(PolyError::ZeroPolynomial));
    }
    let isolated = p.sturm_count(bracket.lo(), bracket.hi())?;
    if isolated != 1 {
        return Err(RootCertError::NotIsolating {
            roots_found: isolated,
        });
    }
    let g = IntPoly::gcd(p, &p.derivative())?;
    if g.degree() == Some(0) {
        return Ok(Simplicity::Simple);
    }
    Ok(if g.sturm_count(bracket.lo(), bracket.hi())? >= 1 {
        Simplicity::Multiple
    } else {
        Simplicity::Simple
    })
}

// ---------------------------------------------------------------------------
// Bounded-degree search for the irreducible factor vanishing at λ.
// ---------------------------------------------------------------------------

enum DegreeSearch {
    /// A monic divisor of the working polynomial with λ inside the bracket.
    Found(IntPoly),
    /// A divisor *without* λ was split off; continue on the quotient.
    Divided(IntPoly),
    /// No divisor of this degree exists (enumeration was exhaustive).
    Exhausted,
    /// Enumeration was cut short; no completeness conclusion possible.
    Capped,
}

/// Finds the irreducible monic factor of square-free monic `f` whose root
/// lies in `(lo, hi)`, by enumerating candidate divisors of degree ≤ 4 from
/// divisor tuples of evaluation values (interpolation + exact division).
/// Divisors not containing λ are divided out and the search restarts, so the
/// first divisor found *containing* λ has minimal degree and is therefore
/// irreducible. When every degree up to deg/2 has been exhausted without a
/// hit, `f` itself is irreducible and is returned. Returns `None` whenever a
/// cap prevented an exhaustive enumeration (the caller falls back).
fn minimal_factor_containing(
    f: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<Option<IntPoly>, RootCertError> {
    if !f.is_monic() {
        return Ok(None);
    }
    let mut work = f.clone();
    let mut complete = true;
    'reduce: loop {
        let n = work.degree().expect("nonzero");
        if n <= 1 {
            return Ok(Some(work));
        }
        let dmax = (n / 2).min(4);
        for d in 1..=dmax {
            match search_factors_of_degree(&work, d, lo, hi)? {
                DegreeSearch::Found(m) => return Ok(Some(m)),
                DegreeSearch::Divided(q) => {
                    work = q;
                    continue 'reduce;
                }
                DegreeSearch::Exhausted => {}
                DegreeSearch::Capped => complete = false,
            }
        }
        // No factor of degree ≤ min(n/2, 4): for n ≤ 9 that covers n/2, so
        // `work` is irreducible and is λ's minimal polynomial.
        return Ok(if complete && n <= 9 { Some(work) } else { None });
    }
}

fn search_factors_of_degree(
    work: &IntPoly,
    d: usize,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<DegreeSearch, RootCertError> {
    // d+1 small integer evaluation points where `work` does not vanish.
    let mut points: Vec<(BigInt, BigInt)> = Vec::with_capacity(d + 1);
    'outer: for mag in 0..=FACTOR_POINT_RANGE {
        for x in [BigInt::from(mag), BigInt::from(-mag)] {
            if mag == 0 && x.is_zero() && !points.is_empty() {
                continue; // -0 duplicate
            }
            let v = work.eval_int(&x);
            if !v.is_zero() && !points.iter().any(|(p, _)| p == &x) {
                points.push((x, v));
                if points.len() == d + 1 {
                    break 'outer;
                }
            }
        }
    }
    if points.len() < d + 1 {
        return Ok(DegreeSearch::Capped);
    }

    // Signed-divisor lists per point, with a global tuple cap.
    let mut lists: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    let mut tuple_count: u128 = 1;
    for (_, v) in &points {
        let Some(divs) = signed_divisors(v) else {
            return Ok(DegreeSearch::Capped);
        };
        tuple_count = tuple_count.saturating_mul(divs.len() as u128);
        if tuple_count > FACTOR_TUPLE_CAP {
            return Ok(DegreeSearch::Capped);
        }
        lists.push(divs);
    }

    // Lagrange scaffolding: basis numerators N_i, common denominator L, and
    // weights w_i = L / prod_{j≠i}(x_i − x_j).
    let xs: Vec<BigInt> = points.iter().map(|(x, _)| x.clone()).collect();
    let mut basis: Vec<IntPoly> = Vec::with_capacity(d + 1);
    let mut denoms: Vec<BigInt> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut num = IntPoly::one();
        let mut den = BigInt::one();
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                num = &num * &IntPoly::new(vec![-xj, BigInt::one()]);
                den *= &xs[i] - xj;
            }
        }
        basis.push(num);
        denoms.push(den);
    }
    let lcm = denoms
        .iter()
        .fold(BigInt::one(), |acc, den| acc.lcm(&den.abs()));
    let weights: Vec<BigInt> = denoms.iter().map(|den| &lcm / den).collect();

    // Mignotte bound for coefficients of monic factors of `work`.
    let norm_sq: BigInt = work.coeffs().iter().map(|c| c * c).sum();
    let coeff_bound = (BigInt::one() << d) * (BigInt::one() + norm_sq.sqrt());

    let mut idx = vec![0usize; lists.len()];
    loop {
        // Monic prefilter: the candidate's leading coefficient is
        // (Σ v_i w_i) / L and must equal 1.
        let lead: BigInt = idx
            .iter()
            .enumerate()
            .map(|(i, &k)| &lists[i][k] * &weights[i])
            .sum();
        if lead == lcm {
            let mut acc = IntPoly::zero();
            for (i, &k) in idx.iter().enumerate() {
                acc = &acc + &basis[i].mul_scalar(&(&lists[i][k] * &weights[i]));
            }
            if let Some(cand) = divide_coeffs(&acc, &lcm) {
                if cand.degree() == Some(d)
                    && cand
                        .coeffs()
                        .iter()
                        .all(|c| c.abs() <= coeff_bound)
                {
                    if let Ok(quotient) = work.exact_div(&cand) {
                        return Ok(if cand.sturm_count(lo, hi)? == 1 {
                            DegreeSearch::Found(cand)
                        } else {
                            DegreeSearch::Divided(quotient)
                        });
                    }
                }
            }
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(DegreeSearch::Exhausted);
            }
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Coefficient-wise exact division by a scalar; `None` if any coefficient is
/// not divisible.
fn divide_coeffs(p: &IntPoly, s: &BigInt) -> Option<IntPoly> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        let (q, r) = c.div_rem(s);
        if !r.is_zero() {
            return None;
        }
        out.push(q);
    }
    Some(IntPoly::new(out))
}

/// All divisors of `v` with both signs, ascending by magnitude; `None` when
/// `|v|` exceeds the trial-division ceiling.
fn signed_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let a = v.abs().to_u64().filter(|&a| a <= FACTOR_VALUE_CAP)?;
    debug_assert!(a > 0, "divisor enumeration needs a nonzero value");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= a {
        if a % i == 0 {
            small.push(i);
            if i != a / i {
                large.push(a / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    let mut out = Vec::with_capacity(2 * small.len());
    for d in small {
        out.push(BigInt::from(d));
        out.push(BigInt::from(-(d as i64)));
    }
    Some(out)
}
