//! Dense matrices over a [`FieldSpec`] with exact elimination.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Fe, FieldSpec, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {op} of {lhs:?} and {rhs:?}")]
    Shape {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("matrices live over different fields")]
    FieldMismatch,
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Which sesquilinear form a code is paired with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    #[default]
    Euclidean,
    Hermitian,
}

impl Form {
    /// Fails when the form is Hermitian and the field has no conjugation.
    pub fn check(self, spec: &FieldSpec) -> Result<(), GfError> {
        match self {
            Form::Hermitian if spec.subfield_order().is_none() => {
                Err(GfError::NoConjugation { q: spec.q() })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Euclidean => "euclidean",
            Form::Hermitian => "hermitian",
        })
    }
}

/// `<u, v>` under `form`: the sum of `u_i v_i`, or of `u_i v_i^s` with `s^2 = q`.
///
/// Callers validate Hermitian availability; an invalid request panics.
pub fn inner(spec: &FieldSpec, form: Form, u: &[Fe], v: &[Fe]) -> Fe {
    debug_assert_eq!(u.len(), v.len());
    let mut acc = Fe::ZERO;
    match form {
        Form::Euclidean => {
            for (&a, &b) in u.iter().zip(v) {
                acc = spec.add(acc, spec.mul(a, b));
            }
        }
        Form::Hermitian => {
            let s = spec
                .subfield_order()
                .expect("hermitian form requires a field of square order") as u64;
            for (&a, &b) in u.iter().zip(v) {
                acc = spec.add(acc, spec.mul(a, spec.pow(b, s)));
            }
        }
    }
    acc
}

/// `a + c * b` entrywise.
pub fn axpy(spec: &FieldSpec, a: &[Fe], c: Fe, b: &[Fe]) -> Vec<Fe> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| spec.add(x, spec.mul(c, y)))
        .collect()
}

pub fn scale(spec: &FieldSpec, c: Fe, v: &[Fe]) -> Vec<Fe> {
    v.iter().map(|&x| spec.mul(c, x)).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFq[{}; {}x{}]", self.spec, self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter().map(|r| r.iter().map(|x| x.0).collect::<Vec<_>>())).finish()
    }
}

/// Output of [`MatrixFq::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: MatrixFq,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Output of [`MatrixFq::pair_reduce_diagonal`]: `P * S * Q^T = D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReduction {
    pub p: MatrixFq,
    pub q: MatrixFq,
    pub d: MatrixFq,
    pub rank: usize,
}

impl MatrixFq {
    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq {
            spec: spec.clone(),
            rows,
            cols,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn from_entries(
        spec: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Fe>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape {
                op: "from_entries",
                lhs: (rows, cols),
                rhs: (entries.len(), 1),
            });
        }
        for &e in &entries {
            spec.element(e.0)?;
        }
        Ok(MatrixFq {
            spec: spec.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of element vectors with `cols` columns
    /// (needed to express an empty row list).
    pub fn from_rows(spec: &FieldSpec, cols: usize, rows: &[Vec<Fe>]) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    len: r.len(),
                    expected: cols,
                });
            }
            entries.extend_from_slice(r);
        }
        Self::from_entries(spec, rows.len(), cols, entries)
    }

    /// Convenience constructor from raw integer codes.
    pub fn from_codes(spec: &FieldSpec, rows: &[&[u32]]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&c| Fe(c)).collect()).collect();
        Self::from_rows(spec, cols, &rows)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fe]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.iter().map(|x| x.0).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Fe> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// Square diagonal matrix with the given entries.
    pub fn diag(spec: &FieldSpec, d: &[Fe]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(spec, n, n);
        for (i, &x) in d.iter().enumerate() {
            m.entries[i * n + i] = x;
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &MatrixFq) -> Result<MatrixFq, MatrixError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::Shape {
                op: "vstack",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatrixFq {
            spec: self.spec.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatrixFq {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            entries.extend_from_slice(self.row(i));
        }
        MatrixFq {
            spec: self.spec.clone(),
            rows: idx.len(),
            cols: self.cols,
            entries,
        }
    }

    fn same_field(&self, other: &MatrixFq) -> Result<(), MatrixError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch)
        }
    }

    pub fn product(&self, other: &MatrixFq) -> Result<MatrixFq, MatrixError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Shape {
                op: "product",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let f = &self.spec;
        let mut out = MatrixFq::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(t, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = MatrixFq::zeros(&self.spec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Entrywise Frobenius conjugation without transposing.
    pub fn conjugate(&self) -> Result<MatrixFq, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|&x| self.spec.conj(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixFq {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// `A^dagger`: conjugate every entry, then transpose.
    pub fn conj_transpose(&self) -> Result<MatrixFq, MatrixError> {
        Ok(self.conjugate()?.transpose())
    }

    /// `G G^T` or `G G^dagger`.
    pub fn gramian(&self, form: Form) -> Result<MatrixFq, MatrixError> {
        self.cross_gramian(self, form)
    }

    /// `A B^T` or `A B^dagger`.
    pub fn cross_gramian(&self, other: &MatrixFq, form: Form) -> Result<MatrixFq, MatrixError> {
        let rhs = match form {
            Form::Euclidean => other.transpose(),
            Form::Hermitian => other.conj_transpose()?,
        };
        self.product(&rhs)
    }

    /// Reduced row echelon form with leftmost-column, topmost-row pivoting.
    pub fn rref(&self) -> Rref {
        let f = &self.spec;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        m.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self * v^T = 0}` as rows, one per free column in
    /// ascending order, each with a 1 in its free slot.
    pub fn kernel(&self) -> MatrixFq {
        let f = &self.spec;
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = MatrixFq::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            out.entries[b * self.cols + fc] = Fe::ONE;
            for (pr, &pc) in pivots.iter().enumerate() {
                out.entries[b * self.cols + pc] = f.neg(reduced.get(pr, fc));
            }
        }
        out
    }

    /// The nonzero rows of the rref: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> MatrixFq {
        let Rref { reduced, rank, .. } = self.rref();
        let idx: Vec<usize> = (0..rank).collect();
        reduced.select_rows(&idx)
    }

    pub fn row_space_equal(&self, other: &MatrixFq) -> bool {
        self.spec == other.spec
            && self.cols == other.cols
            && self.row_space_basis() == other.row_space_basis()
    }

    /// Independent row and column operations bringing a square `S` to
    /// `diag(a_1, ..., a_r, 0, ..., 0)` with every `a_i` nonzero.
    pub fn pair_reduce_diagonal(&self) -> Result<PairReduction, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let f = &self.spec;
        let n = self.rows;
        let mut d = self.clone();
        let mut p = MatrixFq::identity(f, n);
        // column transform: d = P * S * qt, so Q = qt^T
        let mut qt = MatrixFq::identity(f, n);
        let mut rank = 0;
        for t in 0..n {
            let pivot = (t..n).find_map(|c| (t..n).find(|&r| !d.get(r, c).is_zero()).map(|r| (r, c)));
            let Some((pr, pc)) = pivot else { break };
            d.swap_rows(t, pr);
            p.swap_rows(t, pr);
            d.swap_cols(t, pc);
            qt.swap_cols(t, pc);
            let inv = f.inv(d.get(t, t)).expect("pivot is nonzero");
            for r in t + 1..n {
                let x = d.get(r, t);
                if !x.is_zero() {
                    let c = f.neg(f.mul(x, inv));
                    d.add_row_multiple(r, t, c);
                    p.add_row_multiple(r, t, c);
                }
            }
            for c in t + 1..n {
                let x = d.get(t, c);
                if !x.is_zero() {
                    let k = f.neg(f.mul(x, inv));
                    d.add_col_multiple(c, t, k);
                    qt.add_col_multiple(c, t, k);
                }
            }
            rank += 1;
        }
        Ok(PairReduction {
            p,
            q: qt.transpose(),
            d,
            rank,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, c: Fe) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.entries[idx] = self.spec.mul(c, self.entries[idx]);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: Fe) {
        for j in 0..self.cols {
            let s = self.entries[src * self.cols + j];
            let idx = dst * self.cols + j;
            self.entries[idx] = self.spec.add(self.entries[idx], self.spec.mul(c, s));
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: Fe) {
        for i in 0..self.rows {
            let s = self.entries[i * self.cols + src];
            let idx = i * self.cols + dst;
            self.entries[idx] = self.spec.add(self.entries[idx], self.spec.mul(c, s));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> FieldSpec {
        FieldSpec::new(p, m).unwrap()
    }

    fn mat(spec: &FieldSpec, rows: &[&[u32]]) -> MatrixFq {
        MatrixFq::from_codes(spec, rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2, 1);
        let id = MatrixFq::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);

        let z = MatrixFq::zeros(&f, 2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);

        let r = mat(&f, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.reduced, mat(&f, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2, 1);
        assert_eq!(MatrixFq::identity(&f, 4).kernel().rows(), 0);
        let k = MatrixFq::zeros(&f, 1, 3).kernel();
        assert_eq!(k, MatrixFq::identity(&f, 3));
        let a = mat(&f, &[&[1, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k, mat(&f, &[&[1, 1, 0], &[1, 0, 1]]));
        assert!(a.product(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn product_and_conjugation() {
        let f = gf(3, 2);
        let a = mat(&f, &[&[1, 2, 5], &[7, 0, 3]]);
        assert_eq!(a.product(&MatrixFq::identity(&f, 3)).unwrap(), a);
        assert_eq!(a.conj_transpose().unwrap().conj_transpose().unwrap(), a);
        assert!(matches!(
            a.product(&a),
            Err(MatrixError::Shape { op: "product", .. })
        ));
        let f4 = gf(2, 2);
        assert_eq!(mat(&f4, &[&[2]]).conj_transpose().unwrap(), mat(&f4, &[&[3]]));
        assert!(mat(&gf(5, 1), &[&[2]]).conj_transpose().is_err());
    }

    #[test]
    fn gramian_examples() {
        let f = gf(2, 1);
        let id = MatrixFq::identity(&f, 3);
        assert_eq!(id.gramian(Form::Euclidean).unwrap(), id);
        assert_eq!(mat(&f, &[&[1, 1, 1]]).gramian(Form::Euclidean).unwrap(), mat(&f, &[&[1]]));
        assert_eq!(mat(&f, &[&[1, 1, 1, 1]]).gramian(Form::Euclidean).unwrap(), mat(&f, &[&[0]]));
        assert!(mat(&f, &[&[1]]).gramian(Form::Hermitian).is_err());
    }

    #[test]
    fn pair_reduce_examples() {
        let f = gf(2, 1);
        let s = mat(&f, &[&[0, 1], &[1, 0]]);
        let pr = s.pair_reduce_diagonal().unwrap();
        assert_eq!(pr.d, MatrixFq::identity(&f, 2));
        let check = pr.p.product(&s).unwrap().product(&pr.q.transpose()).unwrap();
        assert_eq!(check, pr.d);

        let z = MatrixFq::zeros(&f, 3, 3);
        let pr = z.pair_reduce_diagonal().unwrap();
        assert_eq!(pr.d, z);
        assert_eq!(pr.p, MatrixFq::identity(&f, 3));
        assert_eq!(pr.q, MatrixFq::identity(&f, 3));

        let f5 = gf(5, 1);
        let s = MatrixFq::diag(&f5, &[Fe(0), Fe(3), Fe(0), Fe(2)]);
        let pr = s.pair_reduce_diagonal().unwrap();
        assert_eq!(pr.d.diagonal(), vec![Fe(3), Fe(2), Fe(0), Fe(0)]);
        assert!(pr.d.is_diagonal());
        // permutations only
        for m in [&pr.p, &pr.q] {
            assert!(m.entries().iter().all(|x| x.0 <= 1));
        }
        assert!(MatrixFq::zeros(&f5, 2, 3).pair_reduce_diagonal().is_err());
    }

    #[test]
    fn row_space_examples() {
        let f = gf(5, 1);
        let a = mat(&f, &[&[1, 2, 3], &[0, 1, 4]]);
        let swapped = mat(&f, &[&[0, 1, 4], &[1, 2, 3]]);
        let scaled = mat(&f, &[&[3, 1, 4], &[0, 1, 4]]);
        assert!(a.row_space_equal(&swapped));
        assert!(a.row_space_equal(&scaled));
        assert!(!mat(&f, &[&[1, 0]]).row_space_equal(&mat(&f, &[&[0, 1]])));
    }
}
