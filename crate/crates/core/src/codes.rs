//! Linear codes, their duals and hulls.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Fe, FieldSpec, GfError};
use crate::matfq::{inner, Form, MatrixError, MatrixFq};
use crate::oracle::EnumerationBudget;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("the zero code is not a LinearCode")]
    ZeroCode,
    #[error("code length must be positive")]
    EmptyLength,
    #[error("invalid dimensions n = {n}, k = {k}")]
    Dimensions { n: usize, k: usize },
    #[error("enumerating {q}^{k} codewords exceeds the budget of {budget}")]
    BudgetExceeded { q: u32, k: usize, budget: u64 },
    #[error(
        "maximality undecided: {q}^{k} codewords exceed the budget and no shortcut applies in odd characteristic"
    )]
    Undecided { q: u32, k: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Which space [`LinearCode::is_hull_maximal_so_in`] tests the hull against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Code,
    Dual,
}

/// An `[n, k]_q` code held as its canonical generator (rref, zero rows removed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: MatrixFq,
}

/// A subspace that may be zero-dimensional, as duals and hulls can be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subspace {
    Zero { n: usize },
    Code(LinearCode),
}

impl Subspace {
    fn from_rows(m: &MatrixFq) -> Subspace {
        match LinearCode::new(m) {
            Ok(c) => Subspace::Code(c),
            Err(_) => Subspace::Zero { n: m.cols() },
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Subspace::Zero { .. } => 0,
            Subspace::Code(c) => c.k(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Subspace::Zero { n } => *n,
            Subspace::Code(c) => c.n(),
        }
    }

    pub fn as_code(&self) -> Option<&LinearCode> {
        match self {
            Subspace::Zero { .. } => None,
            Subspace::Code(c) => Some(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Subspace::Zero { .. })
    }

    /// A `dim x n` basis matrix (0 rows for the zero space).
    pub fn basis(&self, spec: &FieldSpec) -> MatrixFq {
        match self {
            Subspace::Zero { n } => MatrixFq::zeros(spec, 0, *n),
            Subspace::Code(c) => c.generator().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullReport {
    pub form: Form,
    pub hull: Subspace,
    pub ell: usize,
    pub gramian_rank_g: usize,
    pub gramian_rank_h: usize,
    pub consistent: bool,
}

/// Rows spanning the orthogonal complement of the row space of `m` under `form`.
pub(crate) fn orthogonal_complement(m: &MatrixFq, form: Form) -> Result<MatrixFq, CodeError> {
    form.check(m.spec())?;
    Ok(match form {
        Form::Euclidean => m.kernel(),
        // <g, v>_H = 0 for every row g  <=>  conj(G) v^T = 0
        Form::Hermitian => m.conjugate()?.kernel(),
    })
}

pub(crate) fn checked_count(q: u32, k: usize) -> Option<u64> {
    (q as u64).checked_pow(k as u32)
}

impl LinearCode {
    /// Canonicalizes any nonzero generator.
    pub fn new(g: &MatrixFq) -> Result<Self, CodeError> {
        if g.cols() == 0 {
            return Err(CodeError::EmptyLength);
        }
        let gen = g.row_space_basis();
        if gen.rows() == 0 {
            return Err(CodeError::ZeroCode);
        }
        Ok(LinearCode { gen })
    }

    pub fn spec(&self) -> &FieldSpec {
        self.gen.spec()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &MatrixFq {
        &self.gen
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let row = MatrixFq::from_rows(self.spec(), self.n(), &[v.to_vec()]).expect("length matches");
        self.gen.vstack(&row).map(|m| m.rank() == self.k()).unwrap_or(false)
    }

    pub fn dual(&self, form: Form) -> Result<Subspace, CodeError> {
        Ok(Subspace::from_rows(&orthogonal_complement(&self.gen, form)?))
    }

    /// A parity-check matrix: a basis of the dual under `form` (0 rows when `k = n`).
    pub fn parity_check(&self, form: Form) -> Result<MatrixFq, CodeError> {
        Ok(self.dual(form)?.basis(self.spec()))
    }

    /// `C ∩ C^⊥`, computed as the dual of `C + C^⊥`.
    pub fn hull(&self, form: Form) -> Result<HullReport, CodeError> {
        let parity = self.parity_check(form)?;
        let sum = self.gen.vstack(&parity)?;
        let hull = Subspace::from_rows(&orthogonal_complement(&sum, form)?);
        let ell = hull.dim();
        let gramian_rank_g = self.gen.gramian(form)?.rank();
        let gramian_rank_h = parity.gramian(form)?.rank();
        let (n, k) = (self.n(), self.k());
        let consistent = gramian_rank_g + ell == k && gramian_rank_h + ell + k == n;
        Ok(HullReport {
            form,
            hull,
            ell,
            gramian_rank_g,
            gramian_rank_h,
            consistent,
        })
    }

    /// `k - rank(G G^T)` (or `G G^dagger`).
    pub fn hull_dimension_via_gramian(&self, form: Form) -> Result<usize, CodeError> {
        Ok(self.k() - self.gen.gramian(form)?.rank())
    }

    pub fn is_self_orthogonal(&self, form: Form) -> Result<bool, CodeError> {
        Ok(self.gen.gramian(form)?.is_zero())
    }

    pub fn is_lcd(&self, form: Form) -> Result<bool, CodeError> {
        Ok(self.gen.gramian(form)?.rank() == self.k())
    }

    /// Whether the hull is maximal among self-orthogonal subcodes of `C`
    /// (or of its dual, for [`Side::Dual`]).
    pub fn is_hull_maximal_so_in(
        &self,
        form: Form,
        side: Side,
        budget: EnumerationBudget,
    ) -> Result<bool, CodeError> {
        let target = match side {
            Side::Code => self.clone(),
            Side::Dual => match self.dual(form)? {
                Subspace::Zero { .. } => return Ok(true),
                Subspace::Code(d) => d,
            },
        };
        let q = self.spec().q();
        let dim = target.k();
        if budget.allows(q, dim) {
            let f = target.spec().clone();
            let rows = target.gen.to_rows();
            let mut maximal = true;
            for_each_codeword(&target.gen, |x| {
                if x.iter().all(|v| v.is_zero()) || !inner(&f, form, x, x).is_zero() {
                    return ControlFlow::Continue(());
                }
                // an isotropic codeword outside the hull enlarges it
                if rows.iter().any(|r| !inner(&f, form, x, r).is_zero()) {
                    maximal = false;
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            return Ok(maximal);
        }
        let ell = self.hull(form)?.ell;
        if dim - ell <= 1 {
            Ok(true)
        } else if self.spec().is_even_characteristic() {
            Ok(false)
        } else {
            Err(CodeError::Undecided { q, k: dim })
        }
    }

    /// Minimum nonzero weight by enumerating all `q^k` messages.
    pub fn min_distance(&self, budget: EnumerationBudget) -> Result<usize, CodeError> {
        let q = self.spec().q();
        if !budget.allows(q, self.k()) {
            return Err(CodeError::BudgetExceeded {
                q,
                k: self.k(),
                budget: budget.max_codewords,
            });
        }
        let mut best = self.n();
        for_each_codeword(&self.gen, |cw| {
            let w = cw.iter().filter(|x| !x.is_zero()).count();
            if w > 0 && w < best {
                best = w;
                if best == 1 {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        Ok(best)
    }

    /// A random `[n, k]` code, reproducible from `seed`.
    pub fn random(spec: &FieldSpec, n: usize, k: usize, seed: u64) -> Result<Self, CodeError> {
        if k < 1 || k > n {
            return Err(CodeError::Dimensions { n, k });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let entries: Vec<Fe> = (0..n * k).map(|_| Fe(rng.gen_range(0..spec.q()))).collect();
            let g = MatrixFq::from_entries(spec, k, n, entries)?;
            if g.rank() == k {
                return LinearCode::new(&g);
            }
        }
    }
}

/// Walks every codeword `m G` with messages in ascending base-q order
/// (first coordinate most significant), updating incrementally.
pub(crate) fn for_each_codeword(gen: &MatrixFq, mut visit: impl FnMut(&[Fe]) -> ControlFlow<()>) {
    let f = gen.spec();
    let (k, n) = gen.shape();
    let q = f.q();
    // step[j][a] = (a+1) g_j - a g_j for element codes a, a+1
    let step: Vec<Vec<Vec<Fe>>> = (0..k)
        .map(|j| {
            let g = gen.row(j);
            (0..q.saturating_sub(1))
                .map(|a| {
                    let d = f.sub(Fe(a + 1), Fe(a));
                    g.iter().map(|&x| f.mul(d, x)).collect()
                })
                .collect()
        })
        .collect();
    let reset: Vec<Vec<Fe>> = (0..k)
        .map(|j| {
            let c = f.neg(Fe(q - 1));
            gen.row(j).iter().map(|&x| f.mul(c, x)).collect()
        })
        .collect();
    let mut digits = vec![0u32; k];
    let mut cw = vec![Fe::ZERO; n];
    loop {
        if visit(&cw).is_break() {
            return;
        }
        let Some(j) = (0..k).rev().find(|&j| digits[j] + 1 < q) else {
            return;
        };
        for t in j + 1..k {
            for (c, &r) in cw.iter_mut().zip(&reset[t]) {
                *c = f.add(*c, r);
            }
            digits[t] = 0;
        }
        for (c, &s) in cw.iter_mut().zip(&step[j][digits[j] as usize]) {
            *c = f.add(*c, s);
        }
        digits[j] += 1;
    }
}
