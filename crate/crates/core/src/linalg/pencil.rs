//! One-parameter constraint families `M(δ) = A + δ·B` and their exceptional values.

use rand::seq::SliceRandom;
use rand::Rng;

use super::sparse::{normalize, SparseMatrix, SparseVec};
use super::{Echelon, LinalgError, Matrix, Subspace};
use crate::exactfield::{quadratic_roots, rational_roots, Poly, Scalar};

/// How many independent square submatrices feed the candidate search.
const SUBMATRIX_CHOICES: usize = 3;

/// Further submatrices tried against a factor with no rational root.
const EXTRA_CHOICES: usize = 12;

/// Pair of equally-shaped sparse matrices standing for `M(δ) = a + δ·b`.
#[derive(Clone, Debug)]
pub struct DeltaPencil {
    a: SparseMatrix,
    b: SparseMatrix,
}

/// A value of δ where the kernel is larger than generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalDelta {
    pub delta: Scalar,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilReport {
    pub generic_kernel_dim: usize,
    /// Verified jump points in `ℚ(i)`, ascending.
    pub exceptional: Vec<ExceptionalDelta>,
    /// Common divisors of the sampled minors with no root in `ℚ(i)`. Any
    /// exceptional δ outside `ℚ(i)` would be a root of one of these.
    pub unresolved: Vec<Poly>,
}

impl DeltaPencil {
    pub fn new(a: SparseMatrix, b: SparseMatrix) -> Result<Self, LinalgError> {
        if a.cols() != b.cols() {
            return Err(LinalgError::ShapeMismatch {
                expected: a.cols(),
                found: b.cols(),
            });
        }
        if a.n_rows() != b.n_rows() {
            return Err(LinalgError::ShapeMismatch {
                expected: a.n_rows(),
                found: b.n_rows(),
            });
        }
        Ok(DeltaPencil { a, b })
    }

    pub fn from_dense(a: &Matrix, b: &Matrix) -> Result<Self, LinalgError> {
        if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
            return Err(LinalgError::ShapeMismatch {
                expected: a.rows() * a.cols(),
                found: b.rows() * b.cols(),
            });
        }
        DeltaPencil::new(SparseMatrix::from_dense(a), SparseMatrix::from_dense(b))
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn n_rows(&self) -> usize {
        self.a.n_rows()
    }

    pub fn a(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn b(&self) -> &SparseMatrix {
        &self.b
    }

    pub fn is_identically_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn row_at(&self, i: usize, delta: &Scalar) -> SparseVec {
        let terms = self.a.rows()[i]
            .iter()
            .cloned()
            .chain(self.b.rows()[i].iter().map(|(j, v)| (*j, v * delta)));
        normalize(terms)
    }

    /// `M(δ)` as a sparse matrix.
    pub fn at(&self, delta: &Scalar) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.cols());
        for i in 0..self.n_rows() {
            m.push_row(self.row_at(i, delta));
        }
        m
    }

    pub fn kernel_at(&self, delta: &Scalar) -> Subspace {
        self.at(delta).kernel()
    }

    pub fn kernel_dim_at(&self, delta: &Scalar) -> usize {
        self.cols() - self.rank_at(delta)
    }

    fn rank_at(&self, delta: &Scalar) -> usize {
        let mut ech = Echelon::new(self.cols());
        for i in 0..self.n_rows() {
            ech.insert(self.row_at(i, delta));
        }
        ech.rank()
    }

    /// Splits into independent blocks: connected components of the
    /// row/column incidence graph of the combined sparsity pattern.
    fn components(&self) -> Vec<Component> {
        let n = self.cols();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let row_cols = |i: usize| {
            let mut cols: Vec<usize> = self.a.rows()[i]
                .iter()
                .chain(&self.b.rows()[i])
                .map(|(j, _)| *j)
                .collect();
            cols.sort_unstable();
            cols.dedup();
            cols
        };
        for i in 0..self.n_rows() {
            let cols = row_cols(i);
            for w in cols.windows(2) {
                let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut by_root: std::collections::BTreeMap<usize, Component> = Default::default();
        for i in 0..self.n_rows() {
            if let Some(&c) = row_cols(i).first() {
                let root = find(&mut parent, c);
                by_root.entry(root).or_default().rows.push(i);
            }
        }
        for c in 0..n {
            let root = find(&mut parent, c);
            if let Some(comp) = by_root.get_mut(&root) {
                comp.cols.push(c);
            }
        }
        by_root.into_values().collect()
    }

    /// The block of rows and columns of one component, with local column indices.
    fn restrict(&self, comp: &Component) -> DeltaPencil {
        let local = |row: &SparseVec| -> SparseVec {
            row.iter()
                .map(|(j, v)| {
                    (
                        comp.cols.binary_search(j).expect("column in component"),
                        v.clone(),
                    )
                })
                .collect()
        };
        let mut a = SparseMatrix::new(comp.cols.len());
        let mut b = SparseMatrix::new(comp.cols.len());
        for &i in &comp.rows {
            a.push_row(local(&self.a.rows()[i]));
            b.push_row(local(&self.b.rows()[i]));
        }
        DeltaPencil { a, b }
    }
}

#[derive(Clone, Debug, Default)]
struct Component {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

/// Random rational with numerator and denominator bounded by 10⁶, avoiding
/// the special values 0, ±1 and ½.
pub fn random_generic_delta<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let den: i64 = rng.gen_range(1..=1_000_000);
        let d = Scalar::ratio(num, den);
        let special = [
            Scalar::zero(),
            Scalar::one(),
            Scalar::from_int(-1),
            Scalar::ratio(1, 2),
        ];
        if !special.contains(&d) {
            return d;
        }
    }
}

/// Generic rank of a pencil: resample until two independent draws agree.
fn generic_rank<R: Rng + ?Sized>(p: &DeltaPencil, rng: &mut R) -> usize {
    let mut last = p.rank_at(&random_generic_delta(rng));
    loop {
        let next = p.rank_at(&random_generic_delta(rng));
        if next == last {
            return next;
        }
        last = next;
    }
}

/// Rows and columns of an `r×r` submatrix that is nonsingular at a random δ.
fn choose_square<R: Rng + ?Sized>(
    p: &DeltaPencil,
    r: usize,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    loop {
        let delta = random_generic_delta(rng);
        let mut row_order: Vec<usize> = (0..p.n_rows()).collect();
        row_order.shuffle(rng);
        let mut col_perm: Vec<usize> = (0..p.cols()).collect();
        col_perm.shuffle(rng);
        let mut ech = Echelon::new(p.cols());
        let mut rows = Vec::with_capacity(r);
        for &i in &row_order {
            let permuted = normalize(
                p.row_at(i, &delta)
                    .into_iter()
                    .map(|(j, v)| (col_perm[j], v)),
            );
            if ech.insert(permuted) {
                rows.push(i);
                if rows.len() == r {
                    break;
                }
            }
        }
        if rows.len() < r {
            // Landed on an exceptional δ; draw again.
            continue;
        }
        let mut inverse = vec![0; p.cols()];
        for (j, &pj) in col_perm.iter().enumerate() {
            inverse[pj] = j;
        }
        let mut cols: Vec<usize> = ech.pivot_cols().map(|c| inverse[c]).collect();
        cols.sort_unstable();
        rows.sort_unstable();
        return (rows, cols);
    }
}

/// Determinant of a square matrix of polynomials by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(Scalar::one());
    }
    let mut prev = Poly::constant(Scalar::one());
    let mut negate = false;
    for k in 0..n {
        let pivot = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| {
            (
                m[i][k].degree(),
                m[i][k].coeffs().iter().map(Scalar::bit_size).sum::<u64>(),
            )
        });
        let Some(pivot) = pivot else {
            return Poly::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

fn pencil_submatrix(p: &DeltaPencil, rows: &[usize], cols: &[usize]) -> Vec<Vec<Poly>> {
    let entry = |row: &SparseVec, j: usize| -> Scalar {
        row.binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| row[k].1.clone())
            .unwrap_or_default()
    };
    rows.iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| Poly::linear(entry(&p.a.rows()[i], j), entry(&p.b.rows()[i], j)))
                .collect()
        })
        .collect()
}

/// Generic kernel dimension of `M(δ)` and all rational δ where it jumps.
///
/// Each independent block of the pencil is handled separately: its generic
/// rank `r` is fixed by random sampling, then several `r×r` submatrices that
/// are nonsingular at random δ are chosen and their determinants expanded as
/// polynomials in δ. A true jump point is a root of every such minor, so the
/// rational roots of their gcd are the only candidates; each candidate is
/// confirmed by an exact kernel computation on the whole pencil.
pub fn pencil_exceptional_deltas<R: Rng + ?Sized>(
    pencil: &DeltaPencil,
    rng: &mut R,
) -> Result<PencilReport, LinalgError> {
    if pencil.is_identically_zero() {
        return Err(LinalgError::DegenerateInput);
    }
    let components = pencil.components();
    let covered: usize = components.iter().map(|c| c.cols.len()).sum();
    let mut generic = pencil.cols() - covered;
    let mut candidates: Vec<Scalar> = Vec::new();
    let mut unresolved: Vec<Poly> = Vec::new();
    for comp in &components {
        let block = pencil.restrict(comp);
        let r = generic_rank(&block, rng);
        generic += block.cols() - r;
        if r == 0 {
            continue;
        }
        let mut common = Poly::zero();
        for _ in 0..SUBMATRIX_CHOICES {
            let (rows, cols) = choose_square(&block, r, rng);
            let det = bareiss_det(pencil_submatrix(&block, &rows, &cols));
            debug_assert!(!det.is_zero());
            common = common.gcd(&det);
            if common.degree() == Some(0) {
                break;
            }
        }
        if common.degree().unwrap_or(0) == 0 {
            continue;
        }
        match rational_roots(&common) {
            Ok(roots) => {
                let mut rest = common.clone();
                for root in &roots {
                    let lin = Poly::linear(-root, Scalar::one());
                    while let Ok(q) = rest.exact_div(&lin) {
                        rest = q;
                    }
                }
                // A minor coprime to the leftover factor proves full rank at all of its roots.
                for _ in 0..EXTRA_CHOICES {
                    if rest.degree().unwrap_or(0) == 0 {
                        break;
                    }
                    let (rows, cols) = choose_square(&block, r, rng);
                    rest = rest.gcd(&bareiss_det(pencil_submatrix(&block, &rows, &cols)));
                }
                let gaussian = quadratic_roots(&rest);
                if !gaussian.is_empty() {
                    candidates.extend(gaussian);
                } else if rest.degree().unwrap_or(0) > 0 {
                    unresolved.push(rest.monic());
                }
                candidates.extend(roots);
            }
            Err(_) => unresolved.push(common),
        }
    }
    candidates.sort_by(Scalar::lex_cmp);
    candidates.dedup();
    let mut exceptional = Vec::new();
    for delta in candidates {
        let kernel_dim = pencil.kernel_dim_at(&delta);
        if kernel_dim > generic {
            exceptional.push(ExceptionalDelta { delta, kernel_dim });
        }
    }
    unresolved.sort_by(|a, b| {
        a.coeffs()
            .len()
            .cmp(&b.coeffs().len())
            .then_with(|| format!("{a}").cmp(&format!("{b}")))
    });
    unresolved.dedup();
    Ok(PencilReport {
        generic_kernel_dim: generic,
        exceptional,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn scalar_pencil_two_delta_minus_one() {
        let p = DeltaPencil::from_dense(&Matrix::from_ints(&[&[-1]]), &Matrix::from_ints(&[&[2]]))
            .unwrap();
        let rep = pencil_exceptional_deltas(&p, &mut rng()).unwrap();
        assert_eq!(rep.generic_kernel_dim, 0);
        assert_eq!(
            rep.exceptional,
            vec![ExceptionalDelta {
                delta: Scalar::ratio(1, 2),
                kernel_dim: 1
            }]
        );
    }

    #[test]
    fn constant_identity_has_no_exceptions() {
        let p = DeltaPencil::from_dense(&Matrix::identity(3), &Matrix::zeros(3, 3)).unwrap();
        let rep = pencil_exceptional_deltas(&p, &mut rng()).unwrap();
        assert_eq!(rep.generic_kernel_dim, 0);
        assert!(rep.exceptional.is_empty());
        assert!(rep.unresolved.is_empty());
    }

    #[test]
    fn zero_pencil_is_degenerate() {
        let p = DeltaPencil::from_dense(&Matrix::zeros(2, 2), &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(
            pencil_exceptional_deltas(&p, &mut rng()),
            Err(LinalgError::DegenerateInput)
        );
    }

    #[test]
    fn irrational_jump_is_reported_unresolved() {
        // [[δ, 2], [1, δ]] is singular at δ = ±√2.
        let a = Matrix::from_ints(&[&[0, 2], &[1, 0]]);
        let b = Matrix::from_ints(&[&[1, 0], &[0, 1]]);
        let rep = pencil_exceptional_deltas(&DeltaPencil::from_dense(&a, &b).unwrap(), &mut rng())
            .unwrap();
        assert!(rep.exceptional.is_empty());
        assert_eq!(rep.unresolved, vec![Poly::from_ints(&[-2, 0, 1])]);
    }

    #[test]
    fn block_pencil_with_rectangular_part() {
        // Block 1: [[δ−1, 0], [0, 3δ−1]]; block 2: a 2×1 column [δ; δ+2] (never singular).
        let a = Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 0], &[0, 0, 2]]);
        let b = Matrix::from_ints(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 1], &[0, 0, 1]]);
        let rep = pencil_exceptional_deltas(&DeltaPencil::from_dense(&a, &b).unwrap(), &mut rng())
            .unwrap();
        assert_eq!(rep.generic_kernel_dim, 0);
        let deltas: Vec<_> = rep.exceptional.iter().map(|e| e.delta.clone()).collect();
        assert_eq!(deltas, vec![Scalar::ratio(1, 3), Scalar::one()]);
    }

    #[test]
    fn bareiss_matches_expansion() {
        // det [[δ, 1], [1, δ]] = δ² − 1
        let m = vec![
            vec![Poly::var(), Poly::constant(Scalar::one())],
            vec![Poly::constant(Scalar::one()), Poly::var()],
        ];
        assert_eq!(bareiss_det(m), Poly::from_ints(&[-1, 0, 1]));
    }
}
