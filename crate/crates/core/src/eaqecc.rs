//! Entanglement-assisted quantum code parameters from hulls.
//!
//! A classical `[n, k, d]` code with hull dimension `l` gives an
//! `[[n, k - l, d; n - k - l]]` EAQECC, and its dual gives
//! `[[n, n - k - l, d_dual; k - l]]`. The extension appends `r` new
//! coordinates to the parity-check matrix,
//!
//! ```text
//!        | 0      |  H  |
//!   H' = |--------+-----|
//!        | diag(a)|  X  |
//! ```
//!
//! where the rows of `X` are pairwise-orthogonal anisotropic codewords taken
//! from the odd-characteristic diagonalizer. Each `a_i` is chosen so that
//! `a_i^2 + <x_i, x_i> != 0` (Hermitian: `a_i^(s+1) + <x_i, x_i>_H != 0`),
//! which keeps the hull dimension of the extended code at `l`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::codes::{CodeError, LinearCode, Subspace};
use crate::diag::{diagonalize_odd, DiagError};
use crate::gf::{Fe, GfError};
use crate::matfq::{inner, Form, MatrixError, MatrixFq};
use crate::oracle::EnumerationBudget;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EaqeccError {
    #[error("the {form} extension needs odd q >= {min}, got q = {q}")]
    FieldUnsupported { form: Form, q: u32, min: u32 },
    #[error("r = {r} is outside 0..={max}")]
    ROutOfRange { r: usize, max: usize },
    #[error("no admissible scaling for row {row}")]
    NoAdmissibleAlpha { row: usize },
    #[error("extension check failed: {reason}")]
    Verification {
        reason: String,
        certificate: Box<ExtensionCertificate>,
    },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("rate below 1/2 although 4k >= 3n + r")]
    RateBound,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Exact rational, serialized as `{"num": .., "den": ..}` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: i64,
    den: i64,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.num(),
            den: self.den(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        if r.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(r.num, r.den))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    BaseEuclidean,
    BaseHermitian,
    BaseDualSide,
    ExtEuclidean,
    ExtHermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: Construction,
    pub r: usize,
}

/// `[[n, k, d; c]]_q` with exact rates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccRecord {
    pub n: usize,
    pub k_logical: usize,
    pub d_exact: Option<usize>,
    pub d_bounds: (usize, usize),
    pub c: usize,
    pub q: u32,
    pub rate: Rational,
    pub net_rate: Rational,
    pub provenance: Provenance,
}

impl EaqeccRecord {
    fn new(
        n: usize,
        k_logical: usize,
        distance: Distance,
        c: usize,
        q: u32,
        provenance: Provenance,
    ) -> Self {
        let (d_exact, d_bounds) = match distance {
            Distance::Exact(d) => (Some(d), (d, d)),
            Distance::Bounds(lo, hi) => (None, (lo, hi)),
        };
        EaqeccRecord {
            n,
            k_logical,
            d_exact,
            d_bounds,
            c,
            q,
            rate: Rational::new(k_logical as i64, n as i64),
            net_rate: Rational::new(k_logical as i64 - c as i64, n as i64),
            provenance,
        }
    }

    /// `[[n,k,d;c]]_q`, with `?` for an unknown distance.
    pub fn notation(&self) -> String {
        let d = match self.d_exact {
            Some(d) => d.to_string(),
            None => format!("{}..{}", self.d_bounds.0, self.d_bounds.1),
        };
        format!("[[{},{},{};{}]]_{}", self.n, self.k_logical, d, self.c, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Distance {
    Exact(usize),
    Bounds(usize, usize),
}

fn distance_of(code: &Subspace, budget: EnumerationBudget) -> Distance {
    match code {
        // the zero code has no nonzero codeword
        Subspace::Zero { n } => Distance::Bounds(1, *n),
        Subspace::Code(c) => match c.min_distance(budget) {
            Ok(d) => Distance::Exact(d),
            Err(_) => Distance::Bounds(1, c.n()),
        },
    }
}

/// Order of the quantum alphabet: `q` for Euclidean, `sqrt(q)` for Hermitian.
fn quantum_q(code: &LinearCode, form: Form) -> Result<u32, EaqeccError> {
    form.check(code.spec())?;
    Ok(match form {
        Form::Euclidean => code.spec().q(),
        Form::Hermitian => code.spec().subfield_order().expect("checked"),
    })
}

/// The code-side and dual-side records of a classical code.
pub fn base_params(
    code: &LinearCode,
    form: Form,
    budget: EnumerationBudget,
) -> Result<[EaqeccRecord; 2], EaqeccError> {
    let qq = quantum_q(code, form)?;
    let (n, k) = (code.n(), code.k());
    let ell = code.hull(form)?.ell;
    let d = distance_of(&Subspace::Code(code.clone()), budget);
    let d_dual = distance_of(&code.dual(form)?, budget);
    let construction = match form {
        Form::Euclidean => Construction::BaseEuclidean,
        Form::Hermitian => Construction::BaseHermitian,
    };
    Ok([
        EaqeccRecord::new(
            n,
            k - ell,
            d,
            n - k - ell,
            qq,
            Provenance { construction, r: 0 },
        ),
        EaqeccRecord::new(
            n,
            n - k - ell,
            d_dual,
            k - ell,
            qq,
            Provenance {
                construction: Construction::BaseDualSide,
                r: 0,
            },
        ),
    ])
}

/// Everything needed to re-check one extension.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionCertificate {
    pub form: Form,
    pub original: LinearCode,
    pub extended: LinearCode,
    pub parity_check: MatrixFq,
    pub alphas: Vec<Fe>,
    pub x_rows: Vec<Vec<Fe>>,
    pub ell: usize,
    pub extended_ell: usize,
    pub parity_gramian_rank: usize,
    pub hull_preserved: bool,
    pub d: Option<usize>,
    pub d_prime: Option<usize>,
    /// `d <= d' <= d + r` when both distances are known.
    pub distance_sandwich: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    pub certificate: ExtensionCertificate,
    pub record: EaqeccRecord,
}

/// Extends `C` by `r` coordinates under the Euclidean form (odd `q >= 5`).
pub fn extend_euclidean(
    code: &LinearCode,
    r: usize,
    budget: EnumerationBudget,
) -> Result<Extension, EaqeccError> {
    let q = code.spec().q();
    if code.spec().is_even_characteristic() || q < 5 {
        return Err(EaqeccError::FieldUnsupported {
            form: Form::Euclidean,
            q,
            min: 5,
        });
    }
    extend(code, Form::Euclidean, r, budget)
}

/// Extends a code over GF(s^2) by `r` coordinates under the Hermitian form (odd `s >= 3`).
pub fn extend_hermitian(
    code: &LinearCode,
    r: usize,
    budget: EnumerationBudget,
) -> Result<Extension, EaqeccError> {
    let spec = code.spec();
    let Some(s) = spec.subfield_order() else {
        return Err(EaqeccError::Field(GfError::NoConjugation { q: spec.q() }));
    };
    if spec.is_even_characteristic() || s < 3 {
        return Err(EaqeccError::FieldUnsupported {
            form: Form::Hermitian,
            q: s,
            min: 3,
        });
    }
    extend(code, Form::Hermitian, r, budget)
}

/// `a^2` or `a^(s+1)`.
fn alpha_power(code: &LinearCode, form: Form, a: Fe) -> Result<Fe, GfError> {
    let f = code.spec();
    match form {
        Form::Euclidean => Ok(f.mul(a, a)),
        Form::Hermitian => f.norm(a),
    }
}

/// First nonzero `a` in code order with `a^2 != -<x, x>` (or the norm analogue).
fn pick_alpha(code: &LinearCode, form: Form, xx: Fe) -> Result<Option<Fe>, GfError> {
    let f = code.spec();
    let forbidden = f.neg(xx);
    for a in f.nonzero_elements() {
        if alpha_power(code, form, a)? != forbidden {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn extend(
    code: &LinearCode,
    form: Form,
    r: usize,
    budget: EnumerationBudget,
) -> Result<Extension, EaqeccError> {
    let f = code.spec().clone();
    let (n, k) = (code.n(), code.k());
    let qq = quantum_q(code, form)?;
    let ell = code.hull(form)?.ell;
    if r > k - ell {
        return Err(EaqeccError::ROutOfRange { r, max: k - ell });
    }
    let diag = diagonalize_odd(code, form)?;
    let x_rows: Vec<Vec<Fe>> = diag.new_gen.to_rows().into_iter().take(r).collect();
    let mut alphas = Vec::with_capacity(r);
    for (i, x) in x_rows.iter().enumerate() {
        let xx = inner(&f, form, x, x);
        alphas.push(pick_alpha(code, form, xx)?.ok_or(EaqeccError::NoAdmissibleAlpha { row: i })?);
    }

    let h = code.parity_check(form)?;
    let width = n + r;
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(h.rows() + r);
    for hr in h.row_iter() {
        let mut row = vec![Fe::ZERO; r];
        row.extend_from_slice(hr);
        rows.push(row);
    }
    for (i, (x, &a)) in x_rows.iter().zip(&alphas).enumerate() {
        let mut row = vec![Fe::ZERO; r];
        row[i] = a;
        row.extend_from_slice(x);
        rows.push(row);
    }
    let parity_check = MatrixFq::from_rows(&f, width, &rows)?;
    let extended_gen = crate::codes::orthogonal_complement(&parity_check, form)?;
    let extended = LinearCode::new(&extended_gen)?;
    let parity_gramian_rank = parity_check.gramian(form)?.rank();
    let extended_ell = extended.hull(form)?.ell;

    let d = code.min_distance(budget).ok();
    let d_prime = extended.min_distance(budget).ok();
    let distance_sandwich = match (d, d_prime) {
        (Some(d), Some(dp)) => Some(d <= dp && dp <= d + r),
        _ => None,
    };
    let certificate = ExtensionCertificate {
        form,
        original: code.clone(),
        extended: extended.clone(),
        parity_check,
        alphas,
        x_rows,
        ell,
        extended_ell,
        parity_gramian_rank,
        hull_preserved: extended_ell == ell,
        d,
        d_prime,
        distance_sandwich,
    };

    let reason = if extended.n() != width || extended.k() != k {
        Some(format!("extended code is [{}, {}], expected [{width}, {k}]", extended.n(), extended.k()))
    } else if parity_gramian_rank != n - k - ell + r {
        Some(format!(
            "rank of the extended parity Gramian is {parity_gramian_rank}, expected {}",
            n - k - ell + r
        ))
    } else if !certificate.hull_preserved {
        Some(format!("hull dimension changed from {ell} to {extended_ell}"))
    } else {
        None
    };
    if let Some(reason) = reason {
        return Err(EaqeccError::Verification {
            reason,
            certificate: Box::new(certificate),
        });
    }

    let distance = match (d_prime, d) {
        (Some(dp), _) => Distance::Exact(dp),
        (None, Some(d)) => Distance::Bounds(d, d + r),
        (None, None) => Distance::Bounds(1, width),
    };
    let construction = match form {
        Form::Euclidean => Construction::ExtEuclidean,
        Form::Hermitian => Construction::ExtHermitian,
    };
    let record = EaqeccRecord::new(
        width,
        k - ell,
        distance,
        n - k - ell + r,
        qq,
        Provenance { construction, r },
    );
    Ok(Extension {
        certificate,
        record,
    })
}

/// Rate figures of the extended construction for an `[n, k]` input with hull dimension `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateReport {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub r: usize,
    /// `(k - l) / (n + r)`
    pub rate: Rational,
    /// `(2k - n - r) / (n + r)`
    pub net_rate: Rational,
    pub net_rate_positive: bool,
    /// `k > n/2` and `r < 2k - n`
    pub positivity_criterion: bool,
    /// `4k >= 3n + r`
    pub high_dimension_condition: bool,
}

impl RateReport {
    /// Whether `record` carries the same rate and net rate.
    pub fn matches(&self, record: &EaqeccRecord) -> bool {
        record.rate == self.rate && record.net_rate == self.net_rate
    }
}

/// Exact rate and net-rate report; fails if the high-dimension condition
/// holds but the rate falls below one half.
pub fn rate_report(n: usize, k: usize, ell: usize, r: usize) -> Result<RateReport, EaqeccError> {
    if n == 0 || k > n || ell > k.min(n - k) || r > k - ell {
        return Err(EaqeccError::Parameters(format!(
            "need 0 <= l <= min(k, n-k), 0 <= r <= k-l; got n={n} k={k} l={ell} r={r}"
        )));
    }
    let (n_, k_, l_, r_) = (n as i64, k as i64, ell as i64, r as i64);
    let rate = Rational::new(k_ - l_, n_ + r_);
    let net_rate = Rational::new(2 * k_ - n_ - r_, n_ + r_);
    let high_dimension_condition = 4 * k_ >= 3 * n_ + r_;
    if high_dimension_condition && rate < Rational::new(1, 2) {
        return Err(EaqeccError::RateBound);
    }
    Ok(RateReport {
        n,
        k,
        ell,
        r,
        rate,
        net_rate,
        net_rate_positive: net_rate > Rational::new(0, 1),
        positivity_criterion: 2 * k_ > n_ && r_ < 2 * k_ - n_,
        high_dimension_condition,
    })
}
