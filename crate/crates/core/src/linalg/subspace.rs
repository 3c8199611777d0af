use super::{Echelon, Matrix};
use crate::exactfield::Scalar;

/// A subspace of `ambient_dim`-dimensional coordinate space.
///
/// The basis rows are kept in reduced row echelon form, so two equal
/// subspaces always compare structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors (any spanning set, dependent vectors allowed).
    pub fn from_spanning<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            assert_eq!(
                v.len(),
                ambient_dim,
                "vector length differs from ambient dimension"
            );
            ech.insert_dense(&v);
        }
        ech.row_space()
    }

    /// Wraps rows that are already in reduced row echelon form.
    pub(crate) fn from_rref_rows(ambient_dim: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let pivots = rows
            .iter()
            .map(|r| {
                r.iter()
                    .position(|x| !x.is_zero())
                    .expect("zero row in rref basis")
            })
            .collect();
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(ambient_dim, rows).expect("rref rows have ambient length"),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_iter()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(self.basis.row_iter()) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &(c * b);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.vectors().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_spanning(
            self.ambient_dim,
            self.vectors()
                .chain(other.vectors())
                .map(<[Scalar]>::to_vec),
        )
    }

    /// `self ∩ other`, from the kernel of the stacked system `[Uᵀ | −Vᵀ]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let (du, dv) = (self.dim(), other.dim());
        let stacked = Matrix::from_fn(self.ambient_dim, du + dv, |i, j| {
            if j < du {
                self.basis[(j, i)].clone()
            } else {
                -&other.basis[(j - du, i)]
            }
        });
        let ker = stacked.kernel();
        let vectors = ker.vectors().map(|coeffs| {
            let mut w = vec![Scalar::zero(); self.ambient_dim];
            for (c, row) in coeffs[..du].iter().zip(self.basis.row_iter()) {
                if c.is_zero() {
                    continue;
                }
                for (x, b) in w.iter_mut().zip(row) {
                    *x += &(c * b);
                }
            }
            w
        });
        Subspace::from_spanning(self.ambient_dim, vectors.collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn canonical_from_different_spanning_sets() {
        let a = Subspace::from_spanning(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_spanning(3, vec![v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let xy = Subspace::from_spanning(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let yz = Subspace::from_spanning(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            xy.intersection(&yz),
            Subspace::from_spanning(3, vec![v(&[0, 1, 0])])
        );
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert!(Subspace::zero(3).is_subspace_of(&xy));
        assert_eq!(xy.coordinates(&v(&[2, 3, 0])), Some(v(&[2, 3])));
        assert_eq!(xy.coordinates(&v(&[2, 3, 1])), None);
    }
}
