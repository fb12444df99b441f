//! Brute-force reference computations.
//!
//! Nothing here goes through the elimination or Gramian code in
//! [`crate::matfq`]: codewords are built from message digits directly, hull
//! membership is decided by explicit inner products, and the one place that
//! needs a dual basis uses a separate systematic-form routine.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::codes::LinearCode;
use crate::gf::{Fe, FieldSpec};
use crate::matfq::{inner, Form};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration of {q}^{k} vectors exceeds the budget of {budget}")]
    BudgetExceeded { q: u32, k: usize, budget: u64 },
    #[error("hermitian form needs a field of square order, got GF({0})")]
    NoConjugation(u32),
    #[error("enumerated hull is not a subspace: {0}")]
    NotASubspace(String),
    #[error("malformed golden file: {0}")]
    Golden(String),
}

/// Cap on the number of vectors any exhaustive loop may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_codewords: u64,
}

impl EnumerationBudget {
    pub const DEFAULT: EnumerationBudget = EnumerationBudget {
        max_codewords: 10_000_000,
    };

    pub fn new(max_codewords: u64) -> Option<Self> {
        (max_codewords > 0).then_some(EnumerationBudget { max_codewords })
    }

    /// Whether `q^k` vectors fit.
    pub fn allows(&self, q: u32, k: usize) -> bool {
        crate::codes::checked_count(q, k).is_some_and(|c| c <= self.max_codewords)
    }

    fn require(&self, q: u32, k: usize) -> Result<(), OracleError> {
        if self.allows(q, k) {
            Ok(())
        } else {
            Err(OracleError::BudgetExceeded {
                q,
                k,
                budget: self.max_codewords,
            })
        }
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn span(spec: &FieldSpec, basis: &[Vec<Fe>], n: usize) -> Vec<Vec<Fe>> {
    let q = spec.q() as u64;
    let k = basis.len();
    let total = q.pow(k as u32);
    let mut out = Vec::with_capacity(total as usize);
    for index in 0..total {
        let mut word = vec![Fe::ZERO; n];
        let mut rest = index;
        // last message coordinate is least significant
        for row in basis.iter().rev() {
            let a = Fe((rest % q) as u32);
            rest /= q;
            if a.is_zero() {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = spec.add(*w, spec.mul(a, g));
            }
        }
        out.push(word);
    }
    out
}

/// All `q^k` codewords, messages in ascending base-q order.
pub fn enumerate_codewords(
    code: &LinearCode,
    budget: EnumerationBudget,
) -> Result<Vec<Vec<Fe>>, OracleError> {
    budget.require(code.spec().q(), code.k())?;
    Ok(span(code.spec(), &code.generator().to_rows(), code.n()))
}

/// A basis of `{v : <g, v> = 0 for all rows g}` from a systematic form.
///
/// Works on plain row vectors: bring the rows to `[I | A]` up to a column
/// permutation, then read off `[-A^T | I]`.
pub fn dual_basis(
    spec: &FieldSpec,
    rows: &[Vec<Fe>],
    n: usize,
    form: Form,
) -> Result<Vec<Vec<Fe>>, OracleError> {
    let mut a: Vec<Vec<Fe>> = match form {
        Form::Euclidean => rows.to_vec(),
        Form::Hermitian => {
            let s = spec.subfield_order().ok_or(OracleError::NoConjugation(spec.q()))?;
            rows.iter()
                .map(|r| r.iter().map(|&x| spec.pow(x, s as u64)).collect())
                .collect()
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while rank < a.len() {
        // any nonzero entry in the unreduced block becomes the next pivot
        let found = (rank..a.len()).find_map(|i| (rank..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
        let Some((pi, pj)) = found else {
            a.truncate(rank);
            break;
        };
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        order.swap(rank, pj);
        let inv = spec.inv(a[rank][rank]).expect("pivot nonzero");
        for x in a[rank].iter_mut() {
            *x = spec.mul(inv, *x);
        }
        let pivot_row = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank || row[rank].is_zero() {
                continue;
            }
            let c = spec.neg(row[rank]);
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = spec.add(*x, spec.mul(c, p));
            }
        }
        rank += 1;
    }
    let mut out = Vec::with_capacity(n - rank);
    for free in rank..n {
        let mut permuted = vec![Fe::ZERO; n];
        permuted[free] = Fe::ONE;
        for (i, row) in a.iter().enumerate().take(rank) {
            permuted[i] = spec.neg(row[free]);
        }
        let mut v = vec![Fe::ZERO; n];
        for (pos, &orig) in order.iter().enumerate() {
            v[orig] = permuted[pos];
        }
        out.push(v);
    }
    Ok(out)
}

/// The enumerated hull of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullEnumeration {
    /// Hull codewords, sorted.
    pub codewords: Vec<Vec<Fe>>,
    pub ell: usize,
}

/// `C ∩ C^⊥` by enumeration: keeps the vectors of `C` (or of `C^⊥`,
/// whichever is smaller) orthogonal to every basis row of the same space.
pub fn hull_by_enumeration(
    code: &LinearCode,
    form: Form,
    budget: EnumerationBudget,
) -> Result<HullEnumeration, OracleError> {
    let spec = code.spec();
    let (n, k, q) = (code.n(), code.k(), spec.q());
    if form == Form::Hermitian && spec.subfield_order().is_none() {
        return Err(OracleError::NoConjugation(q));
    }
    // hull(C) = hull(C^⊥), so enumerate the smaller side
    let basis = if k <= n - k {
        code.generator().to_rows()
    } else {
        dual_basis(spec, &code.generator().to_rows(), n, form)?
    };
    budget.require(q, basis.len())?;
    let mut hull: Vec<Vec<Fe>> = span(spec, &basis, n)
        .into_iter()
        .filter(|x| basis.iter().all(|b| inner(spec, form, x, b).is_zero()))
        .collect();
    hull.sort();
    let ell = log_q(hull.len(), q).ok_or_else(|| {
        OracleError::NotASubspace(format!("{} vectors is not a power of {}", hull.len(), q))
    })?;
    check_closure(spec, &hull)?;
    Ok(HullEnumeration {
        codewords: hull,
        ell,
    })
}

fn log_q(size: usize, q: u32) -> Option<usize> {
    let mut s = size;
    let mut e = 0;
    while s > 1 {
        if !s.is_multiple_of(q as usize) {
            return None;
        }
        s /= q as usize;
        e += 1;
    }
    (s == 1).then_some(e)
}

/// Full closure check for small sets, a structured sample otherwise.
fn check_closure(spec: &FieldSpec, set: &[Vec<Fe>]) -> Result<(), OracleError> {
    let members: HashSet<&Vec<Fe>> = set.iter().collect();
    let probe: &[Vec<Fe>] = if set.len() * set.len() <= 1_000_000 {
        set
    } else {
        &set[..64]
    };
    for x in set {
        for y in probe {
            let s: Vec<Fe> = x.iter().zip(y).map(|(&a, &b)| spec.add(a, b)).collect();
            if !members.contains(&s) {
                return Err(OracleError::NotASubspace("not closed under addition".into()));
            }
        }
    }
    for x in probe {
        for a in spec.nonzero_elements() {
            let s: Vec<Fe> = x.iter().map(|&v| spec.mul(a, v)).collect();
            if !members.contains(&s) {
                return Err(OracleError::NotASubspace("not closed under scaling".into()));
            }
        }
    }
    Ok(())
}

/// Minimum distance from the full weight distribution.
pub fn min_distance_by_enumeration(
    code: &LinearCode,
    budget: EnumerationBudget,
) -> Result<usize, OracleError> {
    let words = enumerate_codewords(code, budget)?;
    let mut table: BTreeMap<usize, u64> = BTreeMap::new();
    for w in &words {
        *table.entry(w.iter().filter(|x| !x.is_zero()).count()).or_default() += 1;
    }
    Ok(table
        .keys()
        .copied()
        .find(|&w| w > 0)
        .expect("a nonzero code has a nonzero codeword"))
}

/// Whether no codeword outside the hull is isotropic.
pub fn maximal_so_by_enumeration(
    code: &LinearCode,
    form: Form,
    budget: EnumerationBudget,
) -> Result<bool, OracleError> {
    let spec = code.spec();
    if form == Form::Hermitian && spec.subfield_order().is_none() {
        return Err(OracleError::NoConjugation(spec.q()));
    }
    let rows = code.generator().to_rows();
    let words = enumerate_codewords(code, budget)?;
    Ok(!words.iter().any(|x| {
        let in_hull = rows.iter().all(|r| inner(spec, form, x, r).is_zero());
        !in_hull && inner(spec, form, x, x).is_zero()
    }))
}

/// Golden text: a `p m n dim` header, then one space-separated codeword per line.
pub fn format_golden(spec: &FieldSpec, n: usize, dim: usize, words: &[Vec<Fe>]) -> String {
    let mut out = format!("{} {} {} {}\n", spec.p(), spec.m(), n, dim);
    for w in words {
        let line: Vec<String> = w.iter().map(|x| x.0.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).expect("string write");
    }
    out
}

/// Parses [`format_golden`] output back into `(header, codewords)`.
pub fn parse_golden(text: &str) -> Result<([u64; 4], Vec<Vec<u32>>), OracleError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header: Vec<u64> = lines
        .next()
        .ok_or_else(|| OracleError::Golden("missing header".into()))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| OracleError::Golden(format!("bad header token {t}"))))
        .collect::<Result<_, _>>()?;
    let header: [u64; 4] = header
        .try_into()
        .map_err(|_| OracleError::Golden("header needs four fields".into()))?;
    let words = lines
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| OracleError::Golden(format!("bad token {t}"))))
                .collect()
        })
        .collect::<Result<Vec<Vec<u32>>, _>>()?;
    Ok((header, words))
}
