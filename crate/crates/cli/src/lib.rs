//! Command layer behind the `biperron` binary.
//!
//! Every command returns a [`CommandResult`]: a [`Status`] in {ok, error,
//! undecided} plus a JSON payload. The status maps onto the process exit
//! code (0, 1, 2), so scripts can distinguish a certification that ran out
//! of refinement budget (undecided) from a genuine failure. Exact quantities
//! are serialized as decimal strings or numerator/denominator pairs, never
//! floats; the only floating-point fields anywhere carry an `_approx`
//! suffix.
//!
//! Matrix and polynomial files are accepted in two formats, sniffed by the
//! first non-space byte: JSON (`[` or `{`) exactly as the commands emit it,
//! or the plain text format (`dimension line + rows` for matrices,
//! whitespace-separated ascending coefficients for polynomials). Output of
//! one command therefore always parses as input to another.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use biperron::densitylab::{density_scan_with_jobs, exceptional_set, DensityReport};
use biperron::exactmat::{IntMatrix, MatrixError, SymplecticForm};
use biperron::families::{
    build_block_diagonal, nonsurjectivity_certificate_with_refinement, random_symplectic,
    BlockDiagonalParams, FamilyError, YFamilyParams,
};
use biperron::intpoly::{IntPoly, PolyError};
use biperron::rootcert::{certify_biperron, rational_string, AnnulusCertificate, CertMode, Verdict};
use clap::ValueEnum;
use serde_json::{json, Value};

/// Default bracket-refinement budget for certification commands; the
/// `BPS_MAX_REFINEMENT` environment variable overrides it.
pub const DEFAULT_MAX_REFINEMENT: u32 = 64;

/// Outcome trichotomy of a command, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The command ran and reached a decisive answer (exit 0). A decisively
    /// negative certification verdict is still `Ok`: the question was
    /// answered.
    Ok,
    /// Bad input, unreadable file, or a construction that failed one of its
    /// pipeline stages (exit 1).
    Error,
    /// Certification exhausted its refinement budget without reaching a
    /// sound verdict either way (exit 2).
    Undecided,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Undecided => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::Undecided => "undecided",
        })
    }
}

/// What a command hands back to `main`: the status, a JSON payload, and —
/// when a csv/text rendering was requested and is available — the exact
/// bytes to print instead of the JSON.
#[derive(Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub rendered: Option<String>,
}

impl CommandResult {
    fn error(detail: impl fmt::Display) -> CommandResult {
        CommandResult {
            status: Status::Error,
            payload: json!({ "error": detail.to_string() }),
            rendered: None,
        }
    }

    /// The payload with the status folded in, ready to print.
    pub fn to_json(&self) -> Value {
        let mut v = self.payload.clone();
        match v.as_object_mut() {
            Some(map) => {
                map.insert("status".into(), json!(self.status.to_string()));
                v
            }
            None => json!({ "status": self.status.to_string(), "payload": v }),
        }
    }
}

/// Which antisymmetric form `J` to verify against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormVariant {
    /// [[0, I], [-I, 0]] in g×g blocks
    Standard,
    /// Block diagonal of g copies of [[0, 1], [-1, 0]]
    Pairwise,
    /// +1 on the superdiagonal, -1 on the subdiagonal
    Tridiagonal,
}

impl FormVariant {
    pub fn form(self, g: usize) -> SymplecticForm {
        match self {
            FormVariant::Standard => SymplecticForm::StandardBlock { g },
            FormVariant::Pairwise => SymplecticForm::PairwiseBlocks { g },
            FormVariant::Tridiagonal => SymplecticForm::Tridiagonal { g },
        }
    }
}

impl fmt::Display for FormVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormVariant::Standard => "standard",
            FormVariant::Pairwise => "pairwise",
            FormVariant::Tridiagonal => "tridiagonal",
        })
    }
}

/// Certification mode flag, mirroring [`CertMode`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Bound every root of the input polynomial
    FullSpectrum,
    /// Bound only the conjugates of the leading root
    MinimalPoly,
}

impl ModeArg {
    pub fn mode(self) -> CertMode {
        match self {
            ModeArg::FullSpectrum => CertMode::FullSpectrum,
            ModeArg::MinimalPoly => CertMode::MinimalPoly,
        }
    }
}

impl fmt::Display for ModeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeArg::FullSpectrum => "full-spectrum",
            ModeArg::MinimalPoly => "minimal-poly",
        })
    }
}

/// Output rendering. Every command supports json; text is available
/// everywhere as a human-readable view; csv only where the data is tabular
/// (scan-density, exceptional-set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

/// Resolves the refinement budget: an explicit flag wins, then the
/// `BPS_MAX_REFINEMENT` environment variable, then the default 64. A set but
/// malformed variable is an error rather than a silent fallback.
pub fn resolve_max_refinement(flag: Option<u32>) -> Result<u32, CommandResult> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var("BPS_MAX_REFINEMENT") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CommandResult::error(format!(
                "BPS_MAX_REFINEMENT must be a nonnegative integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_REFINEMENT),
    }
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

fn read_to_string(path: &Path) -> Result<String, CommandResult> {
    fs::read_to_string(path)
        .map_err(|e| CommandResult::error(format!("cannot read {}: {e}", path.display())))
}

fn matrix_error(e: MatrixError) -> CommandResult {
    match e {
        MatrixError::Parse { line, col, .. } => CommandResult {
            status: Status::Error,
            payload: json!({ "error": e.to_string(), "line": line, "column": col }),
            rendered: None,
        },
        other => CommandResult::error(other),
    }
}

fn poly_error(e: PolyError) -> CommandResult {
    match e {
        PolyError::Parse { pos, .. } => CommandResult {
            status: Status::Error,
            payload: json!({ "error": e.to_string(), "token": pos }),
            rendered: None,
        },
        other => CommandResult::error(other),
    }
}

fn json_syntax_error(e: serde_json::Error) -> CommandResult {
    CommandResult {
        status: Status::Error,
        payload: json!({
            "error": format!("invalid JSON: {e}"),
            "line": e.line(),
            "column": e.column(),
        }),
        rendered: None,
    }
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().as_bytes().first(), Some(b'[') | Some(b'{'))
}

/// Parses a matrix from JSON (array of rows, entries integers or decimal
/// strings) or from the text format (dimension line, then rows).
pub fn parse_matrix(text: &str) -> Result<IntMatrix, CommandResult> {
    if looks_like_json(text) {
        let v: Value = serde_json::from_str(text).map_err(json_syntax_error)?;
        IntMatrix::from_json(&v).map_err(matrix_error)
    } else {
        IntMatrix::from_str(text).map_err(matrix_error)
    }
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix, CommandResult> {
    parse_matrix(&read_to_string(path)?)
}

/// Parses a polynomial from JSON (array of ascending coefficients) or from
/// whitespace-separated ascending coefficients.
pub fn parse_poly(text: &str) -> Result<IntPoly, CommandResult> {
    if looks_like_json(text) {
        let v: Value = serde_json::from_str(text).map_err(json_syntax_error)?;
        IntPoly::from_json(&v).map_err(poly_error)
    } else {
        IntPoly::from_str(text).map_err(poly_error)
    }
}

pub fn read_poly(path: &Path) -> Result<IntPoly, CommandResult> {
    parse_poly(&read_to_string(path)?)
}

/// Reads a sequence of square matrices: a JSON array of matrices, or text
/// records back to back (each a dimension line followed by that many rows).
pub fn read_blocks(path: &Path) -> Result<Vec<IntMatrix>, CommandResult> {
    let text = read_to_string(path)?;
    if looks_like_json(&text) {
        let v: Value = serde_json::from_str(&text).map_err(json_syntax_error)?;
        let arr = v
            .as_array()
            .ok_or_else(|| CommandResult::error("expected a JSON array of matrices"))?;
        return arr
            .iter()
            .map(|m| IntMatrix::from_json(m).map_err(matrix_error))
            .collect();
    }
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let n: usize = lines[i].trim().parse().map_err(|_| {
            CommandResult::error(format!(
                "block {}: expected a dimension line, got {:?}",
                blocks.len() + 1,
                lines[i].trim()
            ))
        })?;
        let end = i + n + 1;
        if n == 0 || end > lines.len() {
            return Err(CommandResult::error(format!(
                "block {}: claims {} rows but the file ends after {}",
                blocks.len() + 1,
                n,
                lines.len() - i - 1
            )));
        }
        let chunk = lines[i..end].join("\n");
        blocks.push(IntMatrix::from_str(&chunk).map_err(matrix_error)?);
        i = end;
    }
    if blocks.is_empty() {
        return Err(CommandResult::error("no matrices found in the blocks file"));
    }
    Ok(blocks)
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn csv_unsupported(command: &str) -> CommandResult {
    CommandResult::error(format!(
        "csv output is not available for {command}; use --out json or --out text"
    ))
}

/// Checks `A^t J A = J` against the requested form and reports determinant,
/// characteristic polynomial, and palindromicity.
pub fn cmd_verify(matrix_file: &Path, form: FormVariant, format: OutputFormat) -> CommandResult {
    if format == OutputFormat::Csv {
        return csv_unsupported("verify-symplectic");
    }
    let matrix = match read_matrix(matrix_file) {
        Ok(m) => m,
        Err(r) => return r,
    };
    let symplectic = match matrix.is_symplectic(&form.form(matrix.dim() / 2)) {
        Ok(b) => b,
        Err(e) => return matrix_error(e),
    };
    let det = matrix.det();
    let cp = matrix.charpoly();
    let palindromic = cp.is_palindromic();
    let rendered = (format == OutputFormat::Text).then(|| {
        format!(
            "dimension: {}\nform: {}\nsymplectic: {}\ndeterminant: {}\ncharpoly: {}\npalindromic: {}",
            matrix.dim(),
            form,
            symplectic,
            det,
            cp,
            palindromic
        )
    });
    CommandResult {
        status: Status::Ok,
        payload: json!({
            "dimension": matrix.dim(),
            "form": form.to_string(),
            "symplectic": symplectic,
            "determinant": det.to_string(),
            "charpoly": cp.to_json(),
            "charpoly_pretty": cp.to_string(),
            "palindromic": palindromic,
        }),
        rendered,
    }
}

/// Prints the characteristic polynomial `det(xI − A)` of an integer matrix.
pub fn cmd_charpoly(matrix_file: &Path, format: OutputFormat) -> CommandResult {
    if format == OutputFormat::Csv {
        return csv_unsupported("charpoly");
    }
    let matrix = match read_matrix(matrix_file) {
        Ok(m) => m,
        Err(r) => return r,
    };
    let cp = matrix.charpoly();
    let palindromic = cp.is_palindromic();
    let rendered = (format == OutputFormat::Text)
        .then(|| format!("charpoly: {}\ndegree: {}\npalindromic: {}", cp, matrix.dim(), palindromic));
    CommandResult {
        status: Status::Ok,
        payload: json!({
            "dimension": matrix.dim(),
            "degree": matrix.dim(),
            "charpoly": cp.to_json(),
            "charpoly_pretty": cp.to_string(),
            "palindromic": palindromic,
        }),
        rendered,
    }
}

/// Which family to construct, with its parameters.
#[derive(Debug)]
pub enum ConstructSpec {
    /// The symmetric-block family `[[I+Y², Y], [Y, I]]`, taken through the
    /// full build–verify–certify pipeline.
    Y {
        g: usize,
        a: i64,
        b: i64,
        z_file: Option<PathBuf>,
        max_refinement: u32,
    },
    /// A direct sum of 2×2 symplectic blocks, checked under the pairwise
    /// form.
    Block { blocks_file: PathBuf },
}

fn family_error(e: FamilyError) -> CommandResult {
    // The certification stage reports an undecided verdict through the stage
    // detail; that outcome maps to exit code 2, not to an error.
    let undecided = matches!(
        &e,
        FamilyError::Stage { stage, detail }
            if *stage == "certify-biperron" && detail.starts_with("verdict undecided")
    );
    if undecided {
        CommandResult {
            status: Status::Undecided,
            payload: json!({ "detail": e.to_string() }),
            rendered: None,
        }
    } else {
        CommandResult::error(e)
    }
}

/// Builds a family member; for the Y family the payload carries the complete
/// non-surjectivity certificate (matrix, characteristic polynomial, closed
/// form, non-simplicity, annulus verdict).
pub fn cmd_construct(spec: &ConstructSpec, format: OutputFormat) -> CommandResult {
    if format == OutputFormat::Csv {
        return csv_unsupported("construct");
    }
    match spec {
        ConstructSpec::Y {
            g,
            a,
            b,
            z_file,
            max_refinement,
        } => {
            let z = match z_file {
                Some(p) => match read_matrix(p) {
                    Ok(m) => Some(m),
                    Err(r) => return r,
                },
                None => None,
            };
            let params = match YFamilyParams::new(*g, *a, *b, z) {
                Ok(p) => p,
                Err(e) => return family_error(e),
            };
            let cert = match nonsurjectivity_certificate_with_refinement(&params, *max_refinement)
            {
                Ok(c) => c,
                Err(e) => return family_error(e),
            };
            let rendered = (format == OutputFormat::Text)
                .then(|| format!("{}\n{}", cert.matrix, cert).trim_end().to_string());
            CommandResult {
                status: Status::Ok,
                payload: json!({ "family": "y", "certificate": cert.to_json() }),
                rendered,
            }
        }
        ConstructSpec::Block { blocks_file } => {
            let blocks = match read_blocks(blocks_file) {
                Ok(b) => b,
                Err(r) => return r,
            };
            let params = match BlockDiagonalParams::new(blocks) {
                Ok(p) => p,
                Err(e) => return family_error(e),
            };
            let g = params.total_genus();
            let matrix = build_block_diagonal(&params);
            let symplectic = matrix
                .is_symplectic(&SymplecticForm::PairwiseBlocks { g })
                .expect("direct sum of even blocks has even dimension");
            let cp = matrix.charpoly();
            let palindromic = cp.is_palindromic();
            let rendered = (format == OutputFormat::Text).then(|| {
                format!(
                    "{}symplectic (pairwise, genus {}): {}\ncharpoly: {}\npalindromic: {}",
                    matrix, g, symplectic, cp, palindromic
                )
            });
            CommandResult {
                status: Status::Ok,
                payload: json!({
                    "family": "block",
                    "genus": g,
                    "matrix": matrix.to_json(),
                    "symplectic": symplectic,
                    "charpoly": cp.to_json(),
                    "charpoly_pretty": cp.to_string(),
                    "palindromic": palindromic,
                }),
                rendered,
            }
        }
    }
}

fn certificate_text(cert: &AnnulusCertificate) -> String {
    let bracket = match &cert.leading_bracket {
        Some(iv) => format!("({}, {}]", rational_string(iv.lo()), rational_string(iv.hi())),
        None => "none".into(),
    };
    let outer = match &cert.outer_radius {
        Some(r) => rational_string(r),
        None => "none".into(),
    };
    let inner = match &cert.inner_radius {
        Some(r) => rational_string(r),
        None => "none".into(),
    };
    let counts: Vec<String> = cert
        .disk_counts
        .iter()
        .map(|(r, c)| {
            let outcome = match c {
                Some(d) => d.to_string(),
                None => "degenerate".into(),
            };
            format!("|z| <= {}: {}", rational_string(r), outcome)
        })
        .collect();
    format!(
        "verdict: {}\nmode: {}\ninput: {}\ntarget: {}\nsquare-free fallback: {}\nleading bracket: {}\nouter radius: {}\ninner radius: {}\ndisk counts: {}\ndetail: {}",
        cert.verdict,
        cert.mode,
        cert.poly,
        cert.target,
        cert.minimal_poly_fallback,
        bracket,
        outer,
        inner,
        if counts.is_empty() {
            "none".to_string()
        } else {
            counts.join("; ")
        },
        cert.detail
    )
}

/// Certifies whether the leading root of a polynomial is bi-Perron; the
/// payload is the full annulus certificate. An undecided verdict maps to
/// exit code 2.
pub fn cmd_certify(
    poly_file: &Path,
    mode: ModeArg,
    max_refinement: u32,
    format: OutputFormat,
) -> CommandResult {
    if format == OutputFormat::Csv {
        return csv_unsupported("certify-biperron");
    }
    let p = match read_poly(poly_file) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let cert = match certify_biperron(&p, mode.mode(), max_refinement) {
        Ok(c) => c,
        Err(e) => return CommandResult::error(e),
    };
    let status = if cert.verdict == Verdict::Undecided {
        Status::Undecided
    } else {
        Status::Ok
    };
    let mut payload = cert.to_json();
    payload
        .as_object_mut()
        .expect("certificate serializes to an object")
        .insert("max_refinement".into(), json!(max_refinement));
    let rendered = (format == OutputFormat::Text).then(|| certificate_text(&cert));
    CommandResult {
        status,
        payload,
        rendered,
    }
}

/// Runs the real-root-free density census for each requested window bound K.
/// The output is identical regardless of `jobs`.
pub fn cmd_density(ks: &[i64], jobs: usize, format: OutputFormat) -> CommandResult {
    if ks.is_empty() {
        return CommandResult::error("scan-density needs at least one window bound K");
    }
    if let Some(&bad) = ks.iter().find(|&&k| k < 1) {
        return CommandResult::error(format!("window bound K must be at least 1, got {bad}"));
    }
    let reports: Vec<DensityReport> = ks
        .iter()
        .map(|&k| density_scan_with_jobs(k, jobs))
        .collect();
    let rendered = match format {
        OutputFormat::Json => None,
        OutputFormat::Csv => {
            let mut s = DensityReport::csv_header().to_string();
            for r in &reports {
                s.push('\n');
                s.push_str(&r.to_csv_row());
            }
            Some(s)
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{:>8} {:>12} {:>14} {:>24} {:>24}",
                "K", "count_Q", "count_total", "fraction", "bound"
            );
            for r in &reports {
                s.push('\n');
                s.push_str(&format!(
                    "{:>8} {:>12} {:>14} {:>24} {:>24}",
                    r.k,
                    r.count_q,
                    r.count_total,
                    r.fraction.to_string(),
                    r.bound.to_string()
                ));
            }
            Some(s)
        }
    };
    CommandResult {
        status: Status::Ok,
        payload: json!({
            "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        }),
        rendered,
    }
}

/// Lists the finitely many real-root-free palindromic quartics with positive
/// discriminant (the exceptional set of the density argument).
pub fn cmd_exceptional(scan_bound: i64, format: OutputFormat) -> CommandResult {
    if scan_bound < 4 {
        return CommandResult::error(format!(
            "scan bound must be at least 4 for the stabilization check, got {scan_bound}"
        ));
    }
    let members = exceptional_set(scan_bound);
    let rendered = match format {
        OutputFormat::Json => None,
        OutputFormat::Csv => {
            let mut s = "n,m".to_string();
            for p in &members {
                s.push('\n');
                s.push_str(&format!("{},{}", p.n, p.m));
            }
            Some(s)
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{} exceptional parameter pairs (scan bound {}):",
                members.len(),
                scan_bound
            );
            for p in &members {
                s.push('\n');
                s.push_str(&format!("  (n, m) = ({}, {})", p.n, p.m));
            }
            Some(s)
        }
    };
    CommandResult {
        status: Status::Ok,
        payload: json!({
            "scan_bound": scan_bound,
            "count": members.len(),
            "members": members
                .iter()
                .map(|p| json!({ "n": p.n, "m": p.m }))
                .collect::<Vec<_>>(),
        }),
        rendered,
    }
}

/// Generates a pseudorandom integer symplectic matrix by multiplying seeded
/// shear and diagonal generators; all randomness flows from the seed.
pub fn cmd_random(g: usize, steps: usize, seed: u64, format: OutputFormat) -> CommandResult {
    if format == OutputFormat::Csv {
        return csv_unsupported("random-symplectic");
    }
    if g == 0 {
        return CommandResult::error("genus must be at least 1");
    }
    let matrix = random_symplectic(g, steps, seed);
    let symplectic = matrix
        .is_symplectic(&SymplecticForm::StandardBlock { g })
        .expect("generated matrix has dimension 2g");
    let det = matrix.det();
    let cp = matrix.charpoly();
    let palindromic = cp.is_palindromic();
    let rendered = (format == OutputFormat::Text).then(|| {
        format!(
            "{}symplectic (standard, genus {}): {}\ndeterminant: {}\ncharpoly: {}\npalindromic: {}",
            matrix, g, symplectic, det, cp, palindromic
        )
    });
    CommandResult {
        status: Status::Ok,
        payload: json!({
            "genus": g,
            "steps": steps,
            "seed": seed,
            "matrix": matrix.to_json(),
            "symplectic": symplectic,
            "determinant": det.to_string(),
            "charpoly": cp.to_json(),
            "charpoly_pretty": cp.to_string(),
            "palindromic": palindromic,
        }),
        rendered,
    }
}
