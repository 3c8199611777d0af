use std::collections::BTreeMap;

use super::{Matrix, Subspace};
use crate::exactfield::Scalar;

/// Sparse vector as `(column, value)` pairs, sorted by column, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Row-sparse matrix. Rows are [`SparseVec`]s over `cols` columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        SparseMatrix {
            cols: m.cols(),
            rows: m.row_iter().map(sparsify).collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    /// Appends a row given as unsorted `(column, value)` terms; duplicates are summed.
    pub fn push_terms(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>) {
        self.rows.push(normalize(terms));
    }

    pub fn push_row(&mut self, row: SparseVec) {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        self.rows.push(row);
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|row| dot(row, v)).collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    /// Kernel via incremental sparse elimination; every basis vector is
    /// checked against all rows by exact multiplication.
    pub fn kernel(&self) -> Subspace {
        let mut ech = Echelon::new(self.cols);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        let ker = ech.kernel();
        for v in ker.vectors() {
            assert!(
                self.rows.iter().all(|r| dot(r, v).is_zero()),
                "kernel vector failed verification"
            );
        }
        ker
    }
}

pub fn dot(row: &SparseVec, v: &[Scalar]) -> Scalar {
    row.iter()
        .filter(|(j, _)| !v[*j].is_zero())
        .map(|(j, a)| a * &v[*j])
        .sum()
}

pub fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// Sorts terms by column, sums duplicates and drops zeros.
pub fn normalize(terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (j, v) in terms {
        if v.is_zero() {
            continue;
        }
        *acc.entry(j).or_default() += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a - c·b` on sparse vectors.
fn axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - &(c * vb);
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (_, Some((cb, vb))) => {
                out.push((*cb, -&(c * vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental row echelon form over sparse rows.
///
/// Rows are reduced only on their leading term as they arrive; each stored
/// row is keyed by its leading column and scaled so that entry is one.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds a row; returns `true` if it was independent of the rows seen so far.
    pub fn insert(&mut self, mut row: SparseVec) -> bool {
        loop {
            let Some((lead, coef)) = row.first().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(pivot) => row = axpy(&row, &coef, pivot),
                None => {
                    let inv = coef.inv().expect("nonzero leading coefficient");
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(sparsify(v))
    }

    /// Basis of the null space of the inserted rows.
    pub fn kernel(&self) -> Subspace {
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !self.rows.contains_key(c))
            .collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Scalar::zero(); self.cols];
            x[f] = Scalar::one();
            for (&p, row) in self.rows.iter().rev() {
                if p > f {
                    continue;
                }
                let s: Scalar = row[1..]
                    .iter()
                    .filter(|(c, _)| !x[*c].is_zero())
                    .map(|(c, a)| a * &x[*c])
                    .sum();
                x[p] = -s;
            }
            vectors.push(x);
        }
        Subspace::from_spanning(self.cols, vectors)
    }

    /// Canonical (fully reduced) basis of the row space.
    pub fn row_space(&self) -> Subspace {
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            for (c, _) in row.iter().skip(1) {
                if let Some(other) = reduced.get(c) {
                    if let Ok(k) = r.binary_search_by_key(c, |(j, _)| *j) {
                        let coef = r[k].1.clone();
                        r = axpy(&r, &coef, other);
                    }
                }
            }
            reduced.insert(p, r);
        }
        let rows = reduced
            .into_values()
            .map(|r| {
                let mut dense = vec![Scalar::zero(); self.cols];
                for (j, v) in r {
                    dense[j] = v;
                }
                dense
            })
            .collect();
        Subspace::from_rref_rows(self.cols, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], r * c)
                .prop_map(move |xs| Matrix::from_fn(r, c, |i, j| Scalar::from_int(xs[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn sparse_and_dense_kernels_agree(m in small_matrix()) {
            let dense = m.kernel();
            let sparse = SparseMatrix::from_dense(&m).kernel();
            prop_assert_eq!(&dense, &sparse);
            prop_assert_eq!(m.rank() + dense.dim(), m.cols());
            for v in dense.vectors() {
                prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn row_space_is_rref(m in small_matrix()) {
            let rs = Subspace::from_spanning(m.cols(), m.row_iter().map(<[Scalar]>::to_vec));
            let r = m.rref();
            let rows: Vec<Vec<Scalar>> = r.matrix.row_iter().take(r.rank).map(<[Scalar]>::to_vec).collect();
            prop_assert_eq!(rs.basis(), &Matrix::from_rows(m.cols(), rows).unwrap());
        }
    }

    #[test]
    fn push_terms_merges_duplicates() {
        let mut m = SparseMatrix::new(3);
        m.push_terms([
            (2, Scalar::one()),
            (0, Scalar::one()),
            (2, Scalar::from_int(-1)),
        ]);
        assert_eq!(m.rows()[0], vec![(0, Scalar::one())]);
    }
}
