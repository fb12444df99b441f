//! Command-line surface: code files, subcommands and JSON reports.
//!
//! Exit codes: 0 success, 1 domain refusal, 2 input error, 3 internal
//! verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::codes::{CodeError, LinearCode, Side, Subspace};
use crate::diag::{self, DiagError, Method};
use crate::eaqecc::{self, EaqeccError, EaqeccRecord, RateReport};
use crate::gf::{Fe, FieldSpec, GfError};
use crate::matfq::{Form, MatrixError, MatrixFq};
use crate::oracle::{self, EnumerationBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line `p m n k`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    Header(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("generator rows are linearly dependent: rows {rows:?} lie in the span of earlier rows")]
    RankDeficient { rows: Vec<usize> },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Header of a code file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeHeader {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    pub k: usize,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses `p m n k` followed by `k` rows of `n` element codes.
pub fn parse_code_file(text: &str) -> Result<LinearCode, ParseError> {
    let mut lines = text.lines().map(strip_comment).filter(|l| !l.is_empty());
    let header_line = lines.next().ok_or(ParseError::MissingHeader)?;
    let fields: Vec<&str> = header_line.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(ParseError::Header(format!("expected 4 fields, found {}", fields.len())));
    }
    let num = |i: usize, name: &str| -> Result<u64, ParseError> {
        fields[i]
            .parse::<u64>()
            .map_err(|_| ParseError::Header(format!("{name} = {:?} is not an integer", fields[i])))
    };
    let header = CodeHeader {
        p: num(0, "p")?,
        m: num(1, "m")? as u32,
        n: num(2, "n")? as usize,
        k: num(3, "k")? as usize,
    };
    if header.n == 0 || header.k == 0 || header.k > header.n {
        return Err(ParseError::Header(format!(
            "need 1 <= k <= n, got n = {}, k = {}",
            header.n, header.k
        )));
    }
    let spec = FieldSpec::new(header.p, header.m)?;
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(header.k);
    for (row, line) in lines.enumerate() {
        if row >= header.k {
            return Err(ParseError::RowCount {
                expected: header.k,
                found: row + 1,
            });
        }
        let entries = line
            .split_whitespace()
            .map(|t| {
                let v: u32 = t.parse().map_err(|_| ParseError::Row {
                    row,
                    msg: format!("{t:?} is not an element code"),
                })?;
                spec.element(v).map_err(|_| ParseError::Row {
                    row,
                    msg: format!("{v} is out of range for GF({})", spec.q()),
                })
            })
            .collect::<Result<Vec<Fe>, _>>()?;
        if entries.len() != header.n {
            return Err(ParseError::Row {
                row,
                msg: format!("expected {} entries, found {}", header.n, entries.len()),
            });
        }
        rows.push(entries);
    }
    if rows.len() != header.k {
        return Err(ParseError::RowCount {
            expected: header.k,
            found: rows.len(),
        });
    }
    let m = MatrixFq::from_rows(&spec, header.n, &rows).map_err(|e| ParseError::Row {
        row: 0,
        msg: e.to_string(),
    })?;
    if m.rank() < header.k {
        let mut dependent = Vec::new();
        let mut rank = 0;
        for i in 0..header.k {
            let idx: Vec<usize> = (0..=i).collect();
            let r = m.select_rows(&idx).rank();
            if r == rank {
                dependent.push(i);
            }
            rank = r;
        }
        return Err(ParseError::RankDeficient { rows: dependent });
    }
    Ok(LinearCode::new(&m)?)
}

/// Writes a code in the code file format.
pub fn format_code_file(code: &LinearCode) -> String {
    let f = code.spec();
    let mut out = format!("{} {} {} {}\n", f.p(), f.m(), code.n(), code.k());
    for row in code.generator().row_iter() {
        let line: Vec<String> = row.iter().map(|x| x.0.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).expect("string write");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub subfield_order: Option<u32>,
}

impl FieldDescription {
    fn of(spec: &FieldSpec) -> Self {
        FieldDescription {
            p: spec.p(),
            m: spec.m(),
            q: spec.q(),
            modulus: spec.modulus().to_vec(),
            subfield_order: spec.subfield_order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullPayload {
    pub form: Form,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub hull_generator: Vec<Vec<u32>>,
    pub gramian_rank_g: usize,
    pub gramian_rank_h: usize,
    pub consistent: bool,
    pub self_orthogonal: bool,
    pub lcd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagPayload {
    pub form: Form,
    pub side: Side,
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub generator: Vec<Vec<u32>>,
    /// Second generator, present only for pair reduction.
    pub partner: Option<Vec<Vec<u32>>>,
    pub diagonal: Vec<u32>,
    pub nonzero_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendPayload {
    pub form: Form,
    pub r: usize,
    pub ell: usize,
    pub alphas: Vec<u32>,
    pub x_rows: Vec<Vec<u32>>,
    pub parity_check: Vec<Vec<u32>>,
    pub extended_generator: Vec<Vec<u32>>,
    pub extended_ell: usize,
    pub parity_gramian_rank: usize,
    pub hull_preserved: bool,
    pub d: Option<usize>,
    pub d_prime: Option<usize>,
    pub distance_sandwich: Option<bool>,
    pub record: EaqeccRecord,
    pub rates: RateReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    FieldInfo {
        field: FieldDescription,
    },
    Hull(HullPayload),
    Diag(DiagPayload),
    Mindist {
        n: usize,
        k: usize,
        d: usize,
    },
    EaqeccBase {
        form: Form,
        ell: usize,
        records: Vec<EaqeccRecord>,
    },
    EaqeccExtend(Box<ExtendPayload>),
    Verify {
        passed: bool,
        checks: Vec<Check>,
    },
    Random {
        n: usize,
        k: usize,
        seed: u64,
        generator: Vec<Vec<u32>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub field: FieldDescription,
    pub input_digest: String,
    pub command: String,
    pub result: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Euclidean,
    Hermitian,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Euclidean => Form::Euclidean,
            FormArg::Hermitian => Form::Hermitian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Code,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiagMethod {
    /// odd induction in odd characteristic, maximal-hull route otherwise
    Auto,
    Odd,
    Maximal,
    Pair,
    /// orthogonal basis of an LCD code (odd characteristic)
    OrthogonalBasis,
}

#[derive(Debug, Parser)]
#[command(name = "hullforge", version, about = "Hulls, Gramian diagonalization and EAQECC parameters of linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of codewords any enumeration may visit.
    #[arg(long, global = true, env = "HULLFORGE_BUDGET")]
    budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe GF(p^m).
    FieldInfo { p: u64, m: u32 },
    /// Hull, hull dimension and Gramian ranks.
    Hull {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "euclidean")]
        form: FormArg,
    },
    /// Diagonalize the Gramian of a generator matrix.
    Diag {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "euclidean")]
        form: FormArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: DiagMethod,
        /// Apply to the code or to its dual (parity-check side).
        #[arg(long, value_enum, default_value = "code")]
        side: SideArg,
    },
    /// Exact minimum distance.
    Mindist { file: PathBuf },
    /// Base EAQECC parameters of the code and its dual.
    EaqeccBase {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "euclidean")]
        form: FormArg,
    },
    /// EAQECC from the length extension by r coordinates.
    EaqeccExtend {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "euclidean")]
        form: FormArg,
        #[arg(long)]
        r: usize,
    },
    /// Cross-check every main-path result against the brute-force oracles.
    Verify { file: PathBuf },
    /// Print a random [n,k] code over GF(p^m) in the code file format.
    Random {
        p: u64,
        m: u32,
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Refused(_) => EXIT_REFUSED,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Verification(_) => EXIT_VERIFICATION,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Field(g) => g.into(),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Field(g) => g.into(),
            CodeError::Matrix(m) => m.into(),
            CodeError::BudgetExceeded { .. } => Failure::Input(e.to_string()),
            CodeError::Undecided { .. } => Failure::Refused(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<DiagError> for Failure {
    fn from(e: DiagError) -> Self {
        match e {
            DiagError::EvenCharacteristic { .. }
            | DiagError::NotLcd { .. }
            | DiagError::HullNotMaximal { .. } => Failure::Refused(e.to_string()),
            DiagError::Verification(_) => Failure::Verification(e.to_string()),
            DiagError::Code(c) => c.into(),
            DiagError::Matrix(m) => m.into(),
            DiagError::Field(g) => g.into(),
        }
    }
}

impl From<EaqeccError> for Failure {
    fn from(e: EaqeccError) -> Self {
        match e {
            EaqeccError::FieldUnsupported { .. } | EaqeccError::NoAdmissibleAlpha { .. } => {
                Failure::Refused(e.to_string())
            }
            EaqeccError::ROutOfRange { .. } | EaqeccError::Parameters(_) => Failure::Input(e.to_string()),
            EaqeccError::Verification { .. } | EaqeccError::RateBound => {
                Failure::Verification(e.to_string())
            }
            EaqeccError::Code(c) => c.into(),
            EaqeccError::Diag(d) => d.into(),
            EaqeccError::Matrix(m) => m.into(),
            EaqeccError::Field(g) => g.into(),
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn codes_of(m: &MatrixFq) -> Vec<Vec<u32>> {
    m.to_codes()
}

struct Loaded {
    code: LinearCode,
    digest: String,
}

fn load(path: &PathBuf) -> Result<Loaded, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    Ok(Loaded {
        code: parse_code_file(&text)?,
        digest: digest(&bytes),
    })
}

/// Runs one command line (including the program name) and captures its output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let budget = match cli.budget {
        None => EnumerationBudget::DEFAULT,
        Some(b) => match EnumerationBudget::new(b) {
            Some(b) => b,
            None => {
                return Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: "budget must be positive\n".into(),
                }
            }
        },
    };
    match execute(&cli.command, budget) {
        Ok((envelope, status)) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&envelope).expect("report serializes");
                s.push('\n');
                s
            } else {
                render_table(&envelope)
            };
            Outcome {
                code: status,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {f}\n"),
        },
    }
}

fn envelope(spec: &FieldSpec, digest: String, command: String, result: Payload) -> ReportEnvelope {
    ReportEnvelope {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        field: FieldDescription::of(spec),
        input_digest: digest,
        command,
        result,
    }
}

fn execute(cmd: &Command, budget: EnumerationBudget) -> Result<(ReportEnvelope, i32), Failure> {
    match cmd {
        Command::FieldInfo { p, m } => {
            let spec = FieldSpec::new(*p, *m)?;
            let result = Payload::FieldInfo {
                field: FieldDescription::of(&spec),
            };
            let d = digest(format!("{p} {m}").as_bytes());
            Ok((envelope(&spec, d, "field-info".into(), result), EXIT_OK))
        }
        Command::Hull { file, form } => {
            let Loaded { code, digest } = load(file)?;
            let form = Form::from(*form);
            let report = code.hull(form)?;
            let result = Payload::Hull(HullPayload {
                form,
                n: code.n(),
                k: code.k(),
                ell: report.ell,
                hull_generator: codes_of(&report.hull.basis(code.spec())),
                gramian_rank_g: report.gramian_rank_g,
                gramian_rank_h: report.gramian_rank_h,
                consistent: report.consistent,
                self_orthogonal: code.is_self_orthogonal(form)?,
                lcd: code.is_lcd(form)?,
            });
            let status = if report.consistent { EXIT_OK } else { EXIT_VERIFICATION };
            Ok((envelope(code.spec(), digest, format!("hull --form {form}"), result), status))
        }
        Command::Diag {
            file,
            form,
            method,
            side,
        } => {
            let Loaded { code, digest } = load(file)?;
            let form = Form::from(*form);
            let side = match side {
                SideArg::Code => Side::Code,
                SideArg::Dual => Side::Dual,
            };
            let target = match side {
                Side::Code => code.clone(),
                Side::Dual => match code.dual(form)? {
                    Subspace::Code(d) => d,
                    Subspace::Zero { .. } => {
                        return Err(Failure::Refused("the dual code is zero; nothing to diagonalize".into()))
                    }
                },
            };
            let payload = diagonalize(&target, form, side, *method, budget)?;
            let command = format!(
                "diag --form {form} --method {} --side {}",
                method.to_possible_value().expect("value").get_name(),
                match side {
                    Side::Code => "code",
                    Side::Dual => "dual",
                }
            );
            Ok((envelope(code.spec(), digest, command, Payload::Diag(payload)), EXIT_OK))
        }
        Command::Mindist { file } => {
            let Loaded { code, digest } = load(file)?;
            let d = code.min_distance(budget)?;
            let result = Payload::Mindist {
                n: code.n(),
                k: code.k(),
                d,
            };
            Ok((envelope(code.spec(), digest, "mindist".into(), result), EXIT_OK))
        }
        Command::EaqeccBase { file, form } => {
            let Loaded { code, digest } = load(file)?;
            let form = Form::from(*form);
            let ell = code.hull(form)?.ell;
            let records = eaqecc::base_params(&code, form, budget)?.to_vec();
            let result = Payload::EaqeccBase { form, ell, records };
            Ok((envelope(code.spec(), digest, format!("eaqecc-base --form {form}"), result), EXIT_OK))
        }
        Command::EaqeccExtend { file, form, r } => {
            let Loaded { code, digest } = load(file)?;
            let form = Form::from(*form);
            let ext = match form {
                Form::Euclidean => eaqecc::extend_euclidean(&code, *r, budget)?,
                Form::Hermitian => eaqecc::extend_hermitian(&code, *r, budget)?,
            };
            let cert = &ext.certificate;
            let rates = eaqecc::rate_report(code.n(), code.k(), cert.ell, *r)?;
            if !rates.matches(&ext.record) {
                return Err(Failure::Verification("record rates disagree with the rate report".into()));
            }
            let result = Payload::EaqeccExtend(Box::new(ExtendPayload {
                form,
                r: *r,
                ell: cert.ell,
                alphas: cert.alphas.iter().map(|a| a.0).collect(),
                x_rows: cert.x_rows.iter().map(|x| x.iter().map(|v| v.0).collect()).collect(),
                parity_check: codes_of(&cert.parity_check),
                extended_generator: codes_of(cert.extended.generator()),
                extended_ell: cert.extended_ell,
                parity_gramian_rank: cert.parity_gramian_rank,
                hull_preserved: cert.hull_preserved,
                d: cert.d,
                d_prime: cert.d_prime,
                distance_sandwich: cert.distance_sandwich,
                record: ext.record.clone(),
                rates,
            }));
            let status = if cert.distance_sandwich == Some(false) {
                EXIT_VERIFICATION
            } else {
                EXIT_OK
            };
            Ok((
                envelope(code.spec(), digest, format!("eaqecc-extend --form {form} --r {r}"), result),
                status,
            ))
        }
        Command::Verify { file } => {
            let Loaded { code, digest } = load(file)?;
            let checks = verify(&code, budget);
            let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
            let status = if passed { EXIT_OK } else { EXIT_VERIFICATION };
            let result = Payload::Verify { passed, checks };
            Ok((envelope(code.spec(), digest, "verify".into(), result), status))
        }
        Command::Random { p, m, n, k, seed } => {
            let spec = FieldSpec::new(*p, *m)?;
            let code = LinearCode::random(&spec, *n, *k, *seed)?;
            let result = Payload::Random {
                n: *n,
                k: *k,
                seed: *seed,
                generator: codes_of(code.generator()),
            };
            let d = digest(format!("{p} {m} {n} {k} {seed}").as_bytes());
            Ok((envelope(&spec, d, format!("random --seed {seed}"), result), EXIT_OK))
        }
    }
}

fn diagonalize(
    code: &LinearCode,
    form: Form,
    side: Side,
    method: DiagMethod,
    budget: EnumerationBudget,
) -> Result<DiagPayload, Failure> {
    let ell = code.hull(form)?.ell;
    let base = |method, generator: &MatrixFq, partner: Option<&MatrixFq>, diagonal: &[Fe], nonzero_count| {
        DiagPayload {
            form,
            side,
            method,
            n: code.n(),
            k: code.k(),
            ell,
            generator: codes_of(generator),
            partner: partner.map(codes_of),
            diagonal: diagonal.iter().map(|x| x.0).collect(),
            nonzero_count,
        }
    };
    let method = match method {
        DiagMethod::Auto if code.spec().is_even_characteristic() => DiagMethod::Maximal,
        DiagMethod::Auto => DiagMethod::Odd,
        m => m,
    };
    let result = match method {
        DiagMethod::Odd => diag::diagonalize_odd(code, form)?,
        DiagMethod::Maximal => diag::diagonalize_maximal_hull(code, form, budget)?,
        DiagMethod::Pair => {
            let pd = diag::pair_diagonal_generators(code, form)?;
            return Ok(base(
                Method::PairReduction,
                &pd.g1,
                Some(&pd.g2),
                &pd.diagonal,
                pd.nonzero_count,
            ));
        }
        DiagMethod::OrthogonalBasis => {
            let basis = diag::orthogonal_basis_lcd(code, form)?;
            let gram = basis.gramian(form)?;
            return Ok(base(Method::OddInduction, &basis, None, &gram.diagonal(), code.k()));
        }
        DiagMethod::Auto => unreachable!("resolved above"),
    };
    result.check(ell)?;
    Ok(base(
        result.method,
        &result.new_gen,
        None,
        &result.diagonal,
        result.nonzero_count,
    ))
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: detail.into(),
    }
}

fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        status: CheckStatus::Skipped,
        detail: detail.into(),
    }
}

fn failed(name: impl Into<String>, detail: impl ToString) -> Check {
    check(name, false, detail.to_string())
}

/// Oracle cross-checks for one code; every applicable form is covered.
pub fn verify(code: &LinearCode, budget: EnumerationBudget) -> Vec<Check> {
    let mut out = Vec::new();
    match (code.min_distance(budget), oracle::min_distance_by_enumeration(code, budget)) {
        (Ok(a), Ok(b)) => out.push(check("min-distance", a == b, format!("main {a}, oracle {b}"))),
        (Err(e), _) => out.push(skipped("min-distance", e.to_string())),
        (_, Err(e)) => out.push(skipped("min-distance", e.to_string())),
    }
    let mut forms = vec![Form::Euclidean];
    if code.spec().subfield_order().is_some() {
        forms.push(Form::Hermitian);
    }
    for form in forms {
        verify_form(code, form, budget, &mut out);
    }
    out
}

fn verify_form(code: &LinearCode, form: Form, budget: EnumerationBudget, out: &mut Vec<Check>) {
    let tag = |s: &str| format!("{form}/{s}");
    let report = match code.hull(form) {
        Ok(r) => r,
        Err(e) => {
            out.push(failed(tag("hull"), e));
            return;
        }
    };
    let ell = report.ell;
    let k = code.k();
    out.push(check(
        tag("hull-rank-law"),
        report.consistent,
        format!(
            "l = {ell}, rank GG' = {}, rank HH' = {}",
            report.gramian_rank_g, report.gramian_rank_h
        ),
    ));
    match oracle::hull_by_enumeration(code, form, budget) {
        Ok(h) => {
            let via_gramian = code.hull_dimension_via_gramian(form).ok();
            out.push(check(
                tag("gramian-ell-vs-oracle"),
                via_gramian == Some(h.ell) && ell == h.ell,
                format!("gramian {via_gramian:?}, intersection {ell}, oracle {}", h.ell),
            ));
            let main_set = match &report.hull {
                Subspace::Zero { n } => Ok(vec![vec![Fe::ZERO; *n]]),
                Subspace::Code(hc) => oracle::enumerate_codewords(hc, budget),
            };
            match main_set {
                Ok(mut words) => {
                    words.sort();
                    out.push(check(
                        tag("hull-set-vs-oracle"),
                        words == h.codewords,
                        format!("{} codewords", h.codewords.len()),
                    ));
                }
                Err(e) => out.push(skipped(tag("hull-set-vs-oracle"), e.to_string())),
            }
        }
        Err(e) => out.push(skipped(tag("gramian-ell-vs-oracle"), e.to_string())),
    }
    match code.dual(form) {
        Ok(Subspace::Code(d)) => {
            let back = d.dual(form).ok().and_then(|s| s.as_code().cloned());
            out.push(check(tag("dual-involution"), back.as_ref() == Some(code), ""));
            match d.hull(form) {
                Ok(dh) => out.push(check(
                    tag("hull-of-dual"),
                    dh.ell == ell,
                    format!("dual hull {}", dh.ell),
                )),
                Err(e) => out.push(failed(tag("hull-of-dual"), e)),
            }
        }
        Ok(Subspace::Zero { .. }) => out.push(check(tag("dual-involution"), k == code.n(), "zero dual")),
        Err(e) => out.push(failed(tag("dual-involution"), e)),
    }

    // maximality, both sides
    let dual_code = code.dual(form).ok().and_then(|s| s.as_code().cloned());
    for (side, target) in [(Side::Code, Some(code.clone())), (Side::Dual, dual_code)] {
        let name = tag(match side {
            Side::Code => "maximal-in-code-vs-oracle",
            Side::Dual => "maximal-in-dual-vs-oracle",
        });
        let Some(target) = target else {
            out.push(skipped(name, "zero dual"));
            continue;
        };
        match (
            code.is_hull_maximal_so_in(form, side, budget),
            oracle::maximal_so_by_enumeration(&target, form, budget),
        ) {
            (Ok(a), Ok(b)) => {
                let mut ok = a == b;
                let mut detail = format!("main {a}, oracle {b}");
                if code.spec().is_even_characteristic() {
                    let excess = target.k() - ell;
                    ok &= a == (excess <= 1);
                    write!(detail, ", excess {excess}").expect("string write");
                }
                out.push(check(name, ok, detail));
            }
            (Err(e), _) => out.push(skipped(name, e.to_string())),
            (_, Err(e)) => out.push(skipped(name, e.to_string())),
        }
    }

    // diagonalization
    if code.spec().is_even_characteristic() {
        match diag::diagonalize_maximal_hull(code, form, budget) {
            Ok(d) => out.push(match d.check(ell) {
                Ok(()) => check(tag("diagonalize-maximal"), true, format!("{} nonzero", d.nonzero_count)),
                Err(e) => failed(tag("diagonalize-maximal"), e),
            }),
            Err(DiagError::HullNotMaximal { excess }) => out.push(check(
                tag("diagonalize-maximal"),
                excess > 1,
                format!("refused, k - l = {excess}"),
            )),
            Err(e) => out.push(skipped(tag("diagonalize-maximal"), e.to_string())),
        }
    } else {
        match diag::diagonalize_odd(code, form) {
            Ok(d) => out.push(match d.check(ell) {
                Ok(()) => check(tag("diagonalize-odd"), true, format!("{} nonzero", d.nonzero_count)),
                Err(e) => failed(tag("diagonalize-odd"), e),
            }),
            Err(e) => out.push(failed(tag("diagonalize-odd"), e)),
        }
        let lcd = ell == 0;
        match diag::orthogonal_basis_lcd(code, form) {
            Ok(b) => {
                let ok = lcd
                    && b.gramian(form)
                        .map(|g| g.is_diagonal() && g.diagonal().iter().all(|x| !x.is_zero()))
                        .unwrap_or(false);
                out.push(check(tag("lcd-orthogonal-basis"), ok, "basis returned"));
            }
            Err(DiagError::NotLcd { ell: w }) => {
                out.push(check(tag("lcd-orthogonal-basis"), !lcd && w == ell, format!("refused, l = {w}")))
            }
            Err(e) => out.push(failed(tag("lcd-orthogonal-basis"), e)),
        }
    }
    match diag::pair_diagonal_generators(code, form) {
        Ok(pd) => {
            let ok = pd
                .g1
                .cross_gramian(&pd.g2, form)
                .map(|c| c.is_diagonal() && c.diagonal() == pd.diagonal && c.rank() == k - ell)
                .unwrap_or(false)
                && pd.g1.row_space_equal(code.generator())
                && pd.g2.row_space_equal(code.generator());
            out.push(check(tag("pair-diagonal"), ok, format!("{} nonzero", pd.nonzero_count)));
        }
        Err(e) => out.push(failed(tag("pair-diagonal"), e)),
    }
}

fn rows_table(rows: &[Vec<u32>]) -> String {
    if rows.is_empty() {
        return "  (zero space)\n".into();
    }
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            format!("  {}\n", cells.join(""))
        })
        .collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), |x| x.to_string())
}

/// Plain-text rendering of a report.
pub fn render_table(env: &ReportEnvelope) -> String {
    let f = &env.field;
    let mut s = String::new();
    let field = if f.m == 1 {
        format!("GF({})", f.p)
    } else {
        format!("GF({}^{})", f.p, f.m)
    };
    let w = &mut s;
    match &env.result {
        Payload::FieldInfo { field: d } => {
            let _ = writeln!(w, "field           {field}");
            let _ = writeln!(w, "order q         {}", d.q);
            let _ = writeln!(w, "modulus         {:?} (constant term first)", d.modulus);
            let _ = writeln!(w, "subfield order  {}", opt(&d.subfield_order));
        }
        Payload::Hull(h) => {
            let _ = writeln!(w, "code            [{}, {}] over {field}", h.n, h.k);
            let _ = writeln!(w, "form            {}", h.form);
            let _ = writeln!(w, "hull dimension  {}", h.ell);
            let _ = writeln!(w, "rank GG'        {}", h.gramian_rank_g);
            let _ = writeln!(w, "rank HH'        {}", h.gramian_rank_h);
            let _ = writeln!(w, "consistent      {}", h.consistent);
            let _ = writeln!(w, "self-orthogonal {}", h.self_orthogonal);
            let _ = writeln!(w, "LCD             {}", h.lcd);
            let _ = writeln!(w, "hull basis:");
            w.push_str(&rows_table(&h.hull_generator));
        }
        Payload::Diag(d) => {
            let _ = writeln!(w, "code            [{}, {}] over {field} ({:?} side)", d.n, d.k, d.side);
            let _ = writeln!(w, "form            {}", d.form);
            let _ = writeln!(w, "method          {:?}", d.method);
            let _ = writeln!(w, "hull dimension  {}", d.ell);
            let _ = writeln!(w, "diagonal        {:?}", d.diagonal);
            let _ = writeln!(w, "nonzero         {}", d.nonzero_count);
            let _ = writeln!(w, "generator:");
            w.push_str(&rows_table(&d.generator));
            if let Some(p) = &d.partner {
                let _ = writeln!(w, "partner generator:");
                w.push_str(&rows_table(p));
            }
        }
        Payload::Mindist { n, k, d } => {
            let _ = writeln!(w, "code            [{n}, {k}] over {field}");
            let _ = writeln!(w, "minimum distance {d}");
        }
        Payload::EaqeccBase { form, ell, records } => {
            let _ = writeln!(w, "form            {form}");
            let _ = writeln!(w, "hull dimension  {ell}");
            for r in records {
                let _ = writeln!(
                    w,
                    "{:<28} rate {:<6} net rate {:<6} ({:?})",
                    r.notation(),
                    r.rate.to_string(),
                    r.net_rate.to_string(),
                    r.provenance.construction
                );
            }
        }
        Payload::EaqeccExtend(x) => {
            let _ = writeln!(w, "form            {}", x.form);
            let _ = writeln!(w, "r               {}", x.r);
            let _ = writeln!(w, "hull dimension  {} -> {}", x.ell, x.extended_ell);
            let _ = writeln!(w, "alphas          {:?}", x.alphas);
            let _ = writeln!(w, "rank H'H'       {}", x.parity_gramian_rank);
            let _ = writeln!(w, "d, d'           {}, {}", opt(&x.d), opt(&x.d_prime));
            let _ = writeln!(w, "record          {}", x.record.notation());
            let _ = writeln!(w, "rate            {}", x.rates.rate);
            let _ = writeln!(w, "net rate        {}", x.rates.net_rate);
            let _ = writeln!(w, "4k >= 3n + r    {}", x.rates.high_dimension_condition);
        }
        Payload::Verify { passed, checks } => {
            for c in checks {
                let status = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "SKIP",
                };
                let _ = writeln!(w, "{status}  {:<36} {}", c.name, c.detail);
            }
            let _ = writeln!(w, "{}", if *passed { "all checks passed" } else { "verification FAILED" });
        }
        Payload::Random { generator, .. } => {
            let _ = writeln!(w, "{} {} {} {}", f.p, f.m, generator.first().map_or(0, |r| r.len()), generator.len());
            for r in generator {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(w, "{}", cells.join(" "));
            }
        }
    }
    s
}
