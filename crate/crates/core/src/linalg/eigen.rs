use super::{LinalgError, Matrix, Subspace};
use crate::exactfield::Scalar;

/// A joint eigenspace: `ops[k]·v = weight[k]·v` for every `v` in `space`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    pub weight: Vec<Scalar>,
    pub space: Subspace,
}

/// Candidate eigenvalues `(a + b·i)/2` with `|a|, |b| ≤ 2·bound`.
pub fn half_gaussian_candidates(bound: i64, gaussian: bool) -> Vec<Scalar> {
    let b = 2 * bound;
    let ims: Vec<i64> = if gaussian {
        (-b..=b).collect()
    } else {
        vec![0]
    };
    let mut out = Vec::new();
    for a in -b..=b {
        for &im in &ims {
            out.push(Scalar::gaussian(Scalar::ratio(a, 2), Scalar::ratio(im, 2)));
        }
    }
    out
}

/// Decomposes the ambient space into joint eigenspaces of commuting operators.
///
/// Eigenvalues are searched for in `candidates` only; if some operator does not
/// split a space completely over the candidates, `NotDiagonalizable` is returned.
/// The summands are sorted lexicographically by weight.
pub fn simultaneous_eigenspaces(
    n: usize,
    ops: &[Matrix],
    candidates: &[Scalar],
) -> Result<Vec<WeightSpace>, LinalgError> {
    for op in ops {
        if !op.is_square() || op.rows() != n {
            return Err(LinalgError::ShapeMismatch {
                expected: n,
                found: op.rows(),
            });
        }
    }
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b) {
                return Err(LinalgError::NotCommuting(i, j));
            }
        }
    }
    let mut pieces = vec![WeightSpace {
        weight: Vec::new(),
        space: Subspace::full(n),
    }];
    for (k, op) in ops.iter().enumerate() {
        let mut next = Vec::new();
        for piece in pieces {
            let mut found = 0;
            for lambda in candidates {
                let sub = eigen_restricted(op, lambda, &piece.space);
                if sub.is_zero() {
                    continue;
                }
                found += sub.dim();
                let mut weight = piece.weight.clone();
                weight.push(lambda.clone());
                next.push(WeightSpace { weight, space: sub });
            }
            if found != piece.space.dim() {
                return Err(LinalgError::NotDiagonalizable(k));
            }
        }
        pieces = next;
    }
    pieces.sort_by(|a, b| {
        a.weight
            .iter()
            .zip(&b.weight)
            .map(|(x, y)| x.lex_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(pieces)
}

/// `{v ∈ space : op·v = λv}`.
fn eigen_restricted(op: &Matrix, lambda: &Scalar, space: &Subspace) -> Subspace {
    let n = op.rows();
    let shifted = op.sub(&Matrix::identity(n).scale(lambda));
    let images: Vec<Vec<Scalar>> = space.vectors().map(|v| shifted.mul_vec(v)).collect();
    let k = images.len();
    let system = Matrix::from_fn(n, k, |i, j| images[j][i].clone());
    let ker = system.kernel();
    Subspace::from_spanning(
        n,
        ker.vectors()
            .map(|c| {
                let mut w = vec![Scalar::zero(); n];
                for (coef, v) in c.iter().zip(space.vectors()) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (x, y) in w.iter_mut().zip(v) {
                        *x += &(coef * y);
                    }
                }
                w
            })
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_operator() {
        let op = Matrix::diagonal(&[Scalar::one(), Scalar::one(), Scalar::zero()]);
        let ws = simultaneous_eigenspaces(3, &[op], &half_gaussian_candidates(2, false)).unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].weight, vec![Scalar::zero()]);
        assert_eq!(ws[0].space.dim(), 1);
        assert_eq!(ws[1].weight, vec![Scalar::one()]);
        assert_eq!(ws[1].space.dim(), 2);
    }

    #[test]
    fn empty_operator_list() {
        let ws = simultaneous_eigenspaces(4, &[], &[]).unwrap();
        assert_eq!(ws.len(), 1);
        assert!(ws[0].weight.is_empty());
        assert_eq!(ws[0].space, Subspace::full(4));
    }

    #[test]
    fn rotation_needs_gaussian_candidates() {
        let rot = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(
                2,
                std::slice::from_ref(&rot),
                &half_gaussian_candidates(1, false)
            ),
            Err(LinalgError::NotDiagonalizable(0))
        );
        let ws = simultaneous_eigenspaces(2, &[rot], &half_gaussian_candidates(1, true)).unwrap();
        let weights: Vec<String> = ws.iter().map(|w| w.weight[0].to_string()).collect();
        assert_eq!(weights, vec!["0-1i", "0+1i"]);
    }

    #[test]
    fn non_commuting_rejected() {
        let a = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let b = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(2, &[a, b], &half_gaussian_candidates(1, false)),
            Err(LinalgError::NotCommuting(0, 1))
        );
    }
}
