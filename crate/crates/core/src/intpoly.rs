//! Exact integer-polynomial algebra.
//!
//! Polynomials are stored in ascending coefficient order over
//! arbitrary-precision integers and kept normalized (no trailing zeros; the
//! zero polynomial has an empty coefficient vector). This module provides the
//! exact kernels the rest of the crate builds on:
//!
//! - primitive-PRS gcd and exact division,
//! - Yun's square-free decomposition,
//! - Sturm chains with rational or infinite endpoints,
//! - palindromicity / reciprocality tests,
//! - the cleared-denominator composition `x^g * q((x-1)^2 / x)`.
//!
//! No floating point enters any computation here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors arising from polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("empty interval: lo must be strictly less than hi")]
    EmptyInterval,
    #[error("degree mismatch: expected {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("cannot parse polynomial: {msg} (token {pos})")]
    Parse { pos: usize, msg: String },
}

pub type PolyResult<T> = Result<T, PolyError>;

/// Univariate polynomial with integer coefficients, ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from machine integers (ascending order).
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.coeffs.last(), Some(c) if c.is_one())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(u/v)` computed without rational arithmetic: evaluates the
    /// denominator-cleared form `sum a_k u^k v^(d-k)` and reads its sign.
    pub fn sign_at_rat(&self, x: &BigRational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let u = x.numer();
        let v = x.denom(); // BigRational keeps v > 0
        if v.is_one() {
            return big_sign(&self.eval_int(u));
        }
        // Horner in u, feeding one factor of v to each lower coefficient:
        // acc_d = a_d; acc_{k-1} = acc_k * u + a_{k-1} * v^(d-k+1).
        let d = self.coeffs.len() - 1;
        let mut acc = self.coeffs[d].clone();
        let mut vpow = BigInt::one();
        for c in self.coeffs[..d].iter().rev() {
            vpow *= v;
            acc = acc * u + c * &vpow;
        }
        big_sign(&acc)
    }

    /// Sign of `p(x)` as `x -> +infinity`.
    pub fn sign_at_pos_inf(&self) -> i8 {
        self.leading_coeff().map_or(0, big_sign)
    }

    /// Sign of `p(x)` as `x -> -infinity`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = big_sign(&self.coeffs[d]);
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPoly::new(coeffs)
    }

    /// The coefficient reversal `x^deg(p) * p(1/x)`.
    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// True iff the coefficient vector is its own reversal.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// True iff `x^deg(p) * p(1/x) = p(x)` or `= -p(x)`.
    pub fn is_reciprocal(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let r = self.reversed();
        r == *self || r == -self
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Negates if the leading coefficient is negative.
    pub fn with_positive_lc(&self) -> IntPoly {
        match self.leading_coeff() {
            Some(lc) if lc.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shifted(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Pseudo-remainder of `self` by `div`, normalized as if the implied
    /// multiplier `lc(div)^t` were positive. The result is the true remainder
    /// of `self` in `Q[x]` scaled by a positive rational, which is exactly
    /// what sign-based chains (Sturm, primitive PRS) need.
    pub fn pseudo_rem_signed(&self, div: &IntPoly) -> IntPoly {
        let dd = div.degree().expect("pseudo_rem_signed: zero divisor");
        let lc = div.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        let mut steps: usize = 0;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let top = r.coeffs[dr].clone();
            // r <- lc * r - top * x^(dr-dd) * div (kills the leading term)
            let mut next = r.mul_scalar(&lc);
            let sub = div.mul_scalar(&top).shifted(dr - dd);
            next = &next - &sub;
            r = next;
            steps += 1;
        }
        if lc.is_negative() && steps % 2 == 1 {
            r = -&r;
        }
        r
    }

    /// Exact division: errors unless `div` divides `self` over the integers.
    pub fn exact_div(&self, div: &IntPoly) -> PolyResult<IntPoly> {
        if div.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dd = div.degree().unwrap();
        let dn = self.degree().unwrap();
        if dn < dd {
            return Err(PolyError::InexactDivision);
        }
        // Long division over Q, then check integrality of quotient and
        // vanishing of the remainder.
        let lc = BigRational::from_integer(div.leading_coeff().unwrap().clone());
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut quo = vec![BigRational::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let q = &rem[k + dd] / &lc;
            if !q.is_zero() {
                for j in 0..=dd {
                    let delta = &q * BigRational::from_integer(div.coeffs[j].clone());
                    rem[k + j] = &rem[k + j] - &delta;
                }
            }
            quo[k] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(PolyError::InexactDivision);
        }
        let mut out = Vec::with_capacity(quo.len());
        for q in quo {
            if !q.denom().is_one() {
                return Err(PolyError::InexactDivision);
            }
            out.push(q.numer().clone());
        }
        Ok(IntPoly::new(out))
    }

    /// True iff `div` divides `self` exactly over the integers.
    pub fn divisible_by(&self, div: &IntPoly) -> bool {
        self.exact_div(div).is_ok()
    }

    /// Primitive gcd with positive leading coefficient, via the primitive
    /// polynomial remainder sequence. `gcd(p, 0)` is the primitive part of
    /// `p`; `gcd(0, 0)` is an error.
    pub fn gcd(p: &IntPoly, q: &IntPoly) -> PolyResult<IntPoly> {
        if p.is_zero() && q.is_zero() {
            return Err(PolyError::ZeroGcd);
        }
        let mut a = p.primitive_part().with_positive_lc();
        let mut b = q.primitive_part().with_positive_lc();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem_signed(&b).primitive_part();
            a = b;
            b = r;
        }
        Ok(a.with_positive_lc())
    }

    /// `p / gcd(p, p')`: the product of the distinct irreducible factors,
    /// primitive with positive leading coefficient.
    pub fn square_free_part(&self) -> PolyResult<IntPoly> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(IntPoly::one());
        }
        let g = IntPoly::gcd(self, &self.derivative())?;
        let f = if g.degree() == Some(0) {
            self.primitive_part()
        } else {
            self.primitive_part().exact_div(&g)?
        };
        Ok(f.with_positive_lc())
    }

    /// Yun's square-free decomposition: `p = content * prod f_i^(m_i)` with
    /// pairwise-coprime, primitive, positive-leading-coefficient, square-free
    /// `f_i` of positive degree.
    pub fn square_free_decomposition(&self) -> PolyResult<SquareFreeDecomposition> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut content = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            content = -content;
        }
        let f = self.primitive_part().with_positive_lc();
        let mut parts = Vec::new();
        if f.degree() == Some(0) {
            return Ok(SquareFreeDecomposition { content, parts });
        }
        let fp = f.derivative();
        let g = IntPoly::gcd(&f, &fp)?;
        let mut w = f.exact_div(&g)?.with_positive_lc();
        let y = fp.exact_div(&g)?;
        let mut z = &y - &w.derivative();
        let mut mult: u32 = 1;
        while w.degree() > Some(0) || !z.is_zero() {
            if w.degree() == Some(0) {
                break;
            }
            let a = IntPoly::gcd(&w, &z)?;
            if a.degree() > Some(0) {
                parts.push((a.clone(), mult));
            }
            w = w.exact_div(&a)?.with_positive_lc();
            z = &z.exact_div(&a)? - &w.derivative();
            mult += 1;
        }
        Ok(SquareFreeDecomposition { content, parts })
    }

    /// True iff no root (real or complex) of `p` is simple, i.e. the
    /// multiplicity-one part of the square-free decomposition is trivial.
    pub fn all_roots_nonsimple(&self) -> PolyResult<bool> {
        let d = self.square_free_decomposition()?;
        Ok(d.parts.iter().all(|(_, m)| *m != 1))
    }

    /// An integer `B >= 1` with every real or complex root of `p` of modulus
    /// strictly below `B` (Cauchy bound, rounded up to an integer).
    pub fn cauchy_root_bound(&self) -> PolyResult<BigInt> {
        let d = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lc = self.coeffs[d].abs();
        let mut max_ratio = BigInt::zero();
        for c in &self.coeffs[..d] {
            // ceil(|c| / |lc|)
            let r = (c.abs() + &lc - BigInt::one()) / &lc;
            if r > max_ratio {
                max_ratio = r;
            }
        }
        Ok(max_ratio + BigInt::one())
    }

    /// Exact count of distinct real roots in the half-open interval
    /// `(lo, hi]`. Multiple roots count once (the gcd with the derivative is
    /// divided out internally); exact rational roots at either endpoint are
    /// divided out, which keeps `lo` excluded and `hi` included.
    pub fn sturm_count(&self, lo: &BigRational, hi: &BigRational) -> PolyResult<usize> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if lo >= hi {
            return Err(PolyError::EmptyInterval);
        }
        let mut f = self.square_free_part()?;
        if f.degree() == Some(0) {
            return Ok(0);
        }
        let mut extra = 0usize;
        if f.sign_at_rat(hi) == 0 {
            f = f.exact_div(&linear_from_root(hi))?;
            extra += 1;
        }
        if f.sign_at_rat(lo) == 0 {
            f = f.exact_div(&linear_from_root(lo))?;
        }
        if f.degree() == Some(0) {
            return Ok(extra);
        }
        let chain = SturmChain::of_square_free(f);
        Ok(chain.count_half_open(lo, hi) + extra)
    }

    /// Exact count of distinct real roots over the whole real line,
    /// equivalent to a Sturm count over `(-B, B]` for the Cauchy bound `B`.
    pub fn count_real_roots(&self) -> PolyResult<usize> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let f = self.square_free_part()?;
        if f.degree() == Some(0) {
            return Ok(0);
        }
        let chain = SturmChain::of_square_free(f);
        Ok(chain.count_all_reals())
    }

    /// Ascending coefficients as decimal strings (exact).
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// JSON form: array of exact decimal strings, ascending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_coeff_strings()
                .into_iter()
                .map(serde_json::Value::String)
                .collect(),
        )
    }

    /// Accepts a JSON array of integers or exact decimal strings (ascending).
    pub fn from_json(v: &serde_json::Value) -> PolyResult<IntPoly> {
        let arr = v.as_array().ok_or_else(|| PolyError::Parse {
            pos: 0,
            msg: "expected a JSON array of coefficients".into(),
        })?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for (i, item) in arr.iter().enumerate() {
            coeffs.push(json_int(item).map_err(|msg| PolyError::Parse { pos: i + 1, msg })?);
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Parses a JSON value as an exact integer (number without fraction, or
/// decimal string).
pub(crate) fn json_int(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("non-integer numeric value {n}"))
            }
        }
        serde_json::Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|e| format!("bad integer string {s:?}: {e}"))
        }
        other => Err(format!("expected integer or string, got {other}")),
    }
}

/// The primitive linear polynomial `v x - u` vanishing at the rational `u/v`.
fn linear_from_root(r: &BigRational) -> IntPoly {
    IntPoly::new(vec![-r.numer().clone(), r.denom().clone()])
}

fn big_sign(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Square-free decomposition `p = content * prod f_i^(m_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    /// Signed integer content (carries the sign of the leading coefficient).
    pub content: BigInt,
    /// `(factor, multiplicity)` pairs; factors are primitive, square-free,
    /// of positive degree, with positive leading coefficients.
    pub parts: Vec<(IntPoly, u32)>,
}

impl SquareFreeDecomposition {
    /// Multiplies the decomposition back together.
    pub fn reassemble(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, m) in &self.parts {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }

    /// Product of the multiplicity-one factors (constant one if none).
    pub fn multiplicity_one_part(&self) -> IntPoly {
        let mut acc = IntPoly::one();
        for (f, m) in &self.parts {
            if *m == 1 {
                acc = &acc * f;
            }
        }
        acc
    }
}

/// A Sturm chain for a square-free polynomial: successive sign-normalized
/// pseudo-remainders with the sign flipped, contents stripped. Sign-variation
/// differences count distinct real roots.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain for an arbitrary nonzero polynomial by first passing
    /// to its square-free part.
    pub fn of(p: &IntPoly) -> PolyResult<SturmChain> {
        Ok(SturmChain::of_square_free(p.square_free_part()?))
    }

    /// Builds the chain assuming `f` is already square-free.
    pub fn of_square_free(f: IntPoly) -> SturmChain {
        let mut polys = vec![f];
        let d = polys[0].derivative();
        if !d.is_zero() {
            polys.push(d.primitive_part());
            loop {
                let k = polys.len();
                let r = polys[k - 2].pseudo_rem_signed(&polys[k - 1]);
                if r.is_zero() {
                    break;
                }
                polys.push((-&r).primitive_part());
            }
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// Number of sign variations of the chain evaluated at `x`.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        count_variations(self.polys.iter().map(|p| p.sign_at_rat(x)))
    }

    pub fn variations_neg_inf(&self) -> usize {
        count_variations(self.polys.iter().map(|p| p.sign_at_neg_inf()))
    }

    pub fn variations_pos_inf(&self) -> usize {
        count_variations(self.polys.iter().map(|p| p.sign_at_pos_inf()))
    }

    /// Distinct real roots in `(lo, hi]`, assuming neither endpoint is a root
    /// of the chain's first polynomial.
    pub fn count_half_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        debug_assert!(self.polys[0].sign_at_rat(lo) != 0);
        debug_assert!(self.polys[0].sign_at_rat(hi) != 0);
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Distinct real roots over the whole real line.
    pub fn count_all_reals(&self) -> usize {
        self.variations_neg_inf() - self.variations_pos_inf()
    }
}

fn count_variations<I: Iterator<Item = i8>>(signs: I) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// The right-hand side of the block-construction identity: for `q` of degree
/// exactly `g`, returns `x^g * q((x-1)^2 / x)` with denominators cleared,
/// i.e. `sum_k q_k (x-1)^(2k) x^(g-k)`.
pub fn compose_identity_rhs(q: &IntPoly, g: usize) -> PolyResult<IntPoly> {
    match q.degree() {
        Some(d) if d == g => {}
        other => {
            return Err(PolyError::Degree {
                expected: g,
                got: other.unwrap_or(0),
            })
        }
    }
    let step = IntPoly::from_i64(&[1, -2, 1]); // (x-1)^2
    let mut acc = IntPoly::zero();
    let mut pow = IntPoly::one(); // (x-1)^(2k)
    for k in 0..=g {
        let term = pow.mul_scalar(&q.coeff(k)).shifted(g - k);
        acc = &acc + &term;
        if k < g {
            pow = &pow * &step;
        }
    }
    Ok(acc)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Human-readable descending form, e.g. `x^4 - 6x^3 + 11x^2 - 6x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    /// Parses whitespace-separated ascending integer coefficients.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs = Vec::new();
        for (i, tok) in s.split_whitespace().enumerate() {
            let c = BigInt::from_str(tok).map_err(|e| PolyError::Parse {
                pos: i + 1,
                msg: format!("bad integer {tok:?}: {e}"),
            })?;
            coeffs.push(c);
        }
        if coeffs.is_empty() {
            return Err(PolyError::Parse {
                pos: 0,
                msg: "no coefficients given".into(),
            });
        }
        Ok(IntPoly::new(coeffs))
    }
}
