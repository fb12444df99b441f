//! Constructive diagonalization of Gramians.
//!
//! Three routes, all returning a generator of the same code whose Gramian
//! (or cross-Gramian, for pair reduction) is `diag(a_1, ..., a_{k-l}, 0, ..., 0)`:
//!
//! * odd characteristic: peel off an anisotropic codeword and project the
//!   rest onto its orthogonal complement inside the code, repeatedly;
//! * hull maximal self-orthogonal in `C`: hull basis plus a Gram-Schmidt
//!   orthogonalized complement (works in any characteristic);
//! * pair reduction: independent row and column operations on the Gramian,
//!   giving two generators `G1 = P G` and `G2` with a diagonal cross-Gramian.
//!
//! Dual-side results come from running the same routines on the dual code.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeError, LinearCode, Side, Subspace};
use crate::gf::{Fe, FieldSpec, GfError};
use crate::matfq::{axpy, inner, Form, MatrixError, MatrixFq};
use crate::oracle::EnumerationBudget;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("GF({q}) has even characteristic; anisotropic search needs 2 != 0")]
    EvenCharacteristic { q: u32 },
    #[error("code is not LCD: hull dimension {ell} > 0")]
    NotLcd { ell: usize },
    #[error("hull is not maximal self-orthogonal in the code (k - l = {excess})")]
    HullNotMaximal { excess: usize },
    #[error("internal check failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    OddInduction,
    MaximalHullGs,
    PairReduction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalizationResult {
    pub code: LinearCode,
    pub form: Form,
    pub new_gen: MatrixFq,
    pub diagonal: Vec<Fe>,
    pub nonzero_count: usize,
    pub method: Method,
}

impl DiagonalizationResult {
    /// Recomputes every invariant from scratch against the given hull dimension.
    pub fn check(&self, ell: usize) -> Result<(), DiagError> {
        let gram = self.new_gen.gramian(self.form)?;
        if !self.new_gen.row_space_equal(self.code.generator()) {
            return Err(DiagError::Verification("row space changed".into()));
        }
        if !gram.is_diagonal() || gram.diagonal() != self.diagonal {
            return Err(DiagError::Verification("gramian is not the reported diagonal".into()));
        }
        let prefix = self.diagonal.iter().take_while(|x| !x.is_zero()).count();
        let nonzero = self.diagonal.iter().filter(|x| !x.is_zero()).count();
        if prefix != nonzero || nonzero != self.nonzero_count {
            return Err(DiagError::Verification("nonzeros are not a prefix".into()));
        }
        if self.nonzero_count + ell != self.code.k() {
            return Err(DiagError::Verification(format!(
                "{} nonzero diagonal entries but k - l = {}",
                self.nonzero_count,
                self.code.k() - ell
            )));
        }
        Ok(())
    }
}

fn require_odd(spec: &FieldSpec) -> Result<(), DiagError> {
    if spec.is_even_characteristic() {
        Err(DiagError::EvenCharacteristic { q: spec.q() })
    } else {
        Ok(())
    }
}

/// Anisotropic vector in the span of `rows`, plus the index of a row that
/// can be dropped once the rest is projected away from it.
fn anisotropic_in(spec: &FieldSpec, form: Form, rows: &[Vec<Fe>]) -> Option<(Vec<Fe>, usize)> {
    if let Some(i) = rows.iter().position(|r| !inner(spec, form, r, r).is_zero()) {
        return Some((rows[i].clone(), i));
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let b = inner(spec, form, &rows[i], &rows[j]);
            if b.is_zero() {
                continue;
            }
            // <u + c w, u + c w> = 2<u, w> (Euclidean, c = 1) or 2 N(<u, w>_H) (Hermitian, c = <u, w>_H)
            let c = match form {
                Form::Euclidean => Fe::ONE,
                Form::Hermitian => b,
            };
            return Some((axpy(spec, &rows[i], c, &rows[j]), i));
        }
    }
    None
}

/// A codeword `v` with `<v, v> != 0`, or `None` exactly when `C` is self-orthogonal.
pub fn find_anisotropic(code: &LinearCode, form: Form) -> Result<Option<Vec<Fe>>, DiagError> {
    require_odd(code.spec())?;
    form.check(code.spec())?;
    Ok(anisotropic_in(code.spec(), form, &code.generator().to_rows()).map(|(v, _)| v))
}

fn finish(
    code: &LinearCode,
    form: Form,
    rows: Vec<Vec<Fe>>,
    diagonal: Vec<Fe>,
    method: Method,
) -> Result<DiagonalizationResult, DiagError> {
    // stable partition: nonzero diagonal entries first
    let (mut front, back): (Vec<_>, Vec<_>) = rows
        .into_iter()
        .zip(diagonal)
        .partition(|(_, d)| !d.is_zero());
    let nonzero_count = front.len();
    front.extend(back);
    let (rows, diagonal): (Vec<_>, Vec<_>) = front.into_iter().unzip();
    let new_gen = MatrixFq::from_rows(code.spec(), code.n(), &rows)?;
    Ok(DiagonalizationResult {
        code: code.clone(),
        form,
        new_gen,
        diagonal,
        nonzero_count,
        method,
    })
}

/// Diagonalizes the Gramian of a code over a field of odd characteristic.
pub fn diagonalize_odd(code: &LinearCode, form: Form) -> Result<DiagonalizationResult, DiagError> {
    let spec = code.spec();
    require_odd(spec)?;
    form.check(spec)?;
    let mut working = code.generator().to_rows();
    let mut out = Vec::with_capacity(code.k());
    let mut diagonal = Vec::with_capacity(code.k());
    while let Some((v, drop)) = anisotropic_in(spec, form, &working) {
        let vv = inner(spec, form, &v, &v);
        let vv_inv = spec.inv(vv)?;
        working.remove(drop);
        // c -> c - (<c, v> / <v, v>) v lands in {c : <c, v> = 0}
        for c in working.iter_mut() {
            let t = spec.mul(inner(spec, form, c, &v), vv_inv);
            if !t.is_zero() {
                *c = axpy(spec, c, spec.neg(t), &v);
            }
        }
        out.push(v);
        diagonal.push(vv);
    }
    // what remains is self-orthogonal and orthogonal to everything chosen
    diagonal.extend(std::iter::repeat_n(Fe::ZERO, working.len()));
    out.extend(working);
    finish(code, form, out, diagonal, Method::OddInduction)
}

/// An orthogonal basis of an LCD code; refuses a code with a nonzero hull.
pub fn orthogonal_basis_lcd(code: &LinearCode, form: Form) -> Result<MatrixFq, DiagError> {
    require_odd(code.spec())?;
    let ell = code.hull(form)?.ell;
    if ell > 0 {
        return Err(DiagError::NotLcd { ell });
    }
    let d = diagonalize_odd(code, form)?;
    if d.nonzero_count != code.k() {
        return Err(DiagError::Verification("LCD code produced an isotropic basis row".into()));
    }
    Ok(d.new_gen)
}

/// Hull basis plus a Gram-Schmidt orthogonalized complement.
pub fn diagonalize_maximal_hull(
    code: &LinearCode,
    form: Form,
    budget: EnumerationBudget,
) -> Result<DiagonalizationResult, DiagError> {
    let spec = code.spec();
    form.check(spec)?;
    let report = code.hull(form)?;
    if !code.is_hull_maximal_so_in(form, Side::Code, budget)? {
        return Err(DiagError::HullNotMaximal {
            excess: code.k() - report.ell,
        });
    }
    let hull_rows = match &report.hull {
        Subspace::Zero { .. } => vec![],
        Subspace::Code(h) => h.generator().to_rows(),
    };
    // extend the hull basis with generator rows that raise the rank
    let mut basis = MatrixFq::from_rows(spec, code.n(), &hull_rows)?;
    let mut complement: Vec<Vec<Fe>> = Vec::new();
    for g in code.generator().row_iter() {
        let grown = basis.vstack(&MatrixFq::from_rows(spec, code.n(), &[g.to_vec()])?)?;
        if grown.rank() > basis.rank() {
            basis = grown;
            complement.push(g.to_vec());
        }
    }
    let mut ortho: Vec<Vec<Fe>> = Vec::with_capacity(complement.len());
    let mut diagonal = Vec::with_capacity(code.k());
    for t in complement {
        let mut r = t.clone();
        for (prev, &pp) in ortho.iter().zip(&diagonal) {
            let c = spec.div(inner(spec, form, &t, prev), pp)?;
            if !c.is_zero() {
                r = axpy(spec, &r, spec.neg(c), prev);
            }
        }
        let rr = inner(spec, form, &r, &r);
        if rr.is_zero() {
            // impossible under maximality: r lies in C but outside the hull
            return Err(DiagError::Verification("isotropic complement vector".into()));
        }
        ortho.push(r);
        diagonal.push(rr);
    }
    diagonal.extend(std::iter::repeat_n(Fe::ZERO, hull_rows.len()));
    ortho.extend(hull_rows);
    finish(code, form, ortho, diagonal, Method::MaximalHullGs)
}

/// Two generators of the same code with a diagonal cross-Gramian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDiagonal {
    pub g1: MatrixFq,
    pub g2: MatrixFq,
    pub diagonal: Vec<Fe>,
    pub nonzero_count: usize,
}

/// `G1 = P G`, `G2 = Q' G` with `G1 G2^T` (or `G1 G2^dagger`) diagonal.
pub fn pair_diagonal_generators(code: &LinearCode, form: Form) -> Result<PairDiagonal, DiagError> {
    form.check(code.spec())?;
    let g = code.generator();
    let red = g.gramian(form)?.pair_reduce_diagonal()?;
    let g1 = red.p.product(g)?;
    // P S Q^T = D; for the Hermitian form G2 = conj(Q) G gives G2^dagger = G^dagger Q^T
    let g2 = match form {
        Form::Euclidean => red.q.product(g)?,
        Form::Hermitian => red.q.conjugate()?.product(g)?,
    };
    Ok(PairDiagonal {
        g1,
        g2,
        diagonal: red.d.diagonal(),
        nonzero_count: red.rank,
    })
}
