use std::collections::BTreeMap;

use rand::Rng;

use super::{AlgebraError, SuperAlgebra};
use crate::exactfield::Scalar;
use crate::linalg::{
    normalize, simultaneous_eigenspaces, sparsify, Echelon, SparseMatrix, SparseVec, Subspace,
};

/// Grows a spanning set by products until the span is stable.
struct Closure {
    ech: Echelon,
    vectors: Vec<SparseVec>,
}

impl Closure {
    fn new(dim: usize) -> Self {
        Closure {
            ech: Echelon::new(dim),
            vectors: Vec::new(),
        }
    }

    fn add(&mut self, v: SparseVec) {
        if !v.is_empty() && self.ech.insert(v.clone()) {
            self.vectors.push(v);
        }
    }

    fn is_full(&self) -> bool {
        self.ech.rank() == self.ech.cols()
    }
}

/// Smallest subalgebra containing the given vectors.
pub fn subalgebra_closure(
    a: &SuperAlgebra,
    span: &[Vec<Scalar>],
) -> Result<Subspace, AlgebraError> {
    let mut c = Closure::new(a.dim());
    for v in span {
        a.check_dim(v)?;
        c.add(sparsify(v));
    }
    let mut n = 0;
    while n < c.vectors.len() && !c.is_full() {
        for m in 0..=n {
            let (x, y) = (c.vectors[n].clone(), c.vectors[m].clone());
            c.add(a.mul_sparse(&x, &y));
            c.add(a.mul_sparse(&y, &x));
        }
        n += 1;
    }
    Ok(c.ech.row_space())
}

/// Smallest two-sided ideal containing `v`.
pub fn ideal_closure(a: &SuperAlgebra, v: &[Scalar]) -> Result<Subspace, AlgebraError> {
    a.check_dim(v)?;
    if v.iter().all(Scalar::is_zero) {
        return Err(AlgebraError::ZeroVector);
    }
    let mut c = Closure::new(a.dim());
    c.add(sparsify(v));
    let mut n = 0;
    while n < c.vectors.len() && !c.is_full() {
        let x = c.vectors[n].clone();
        for j in 0..a.dim() {
            let e = vec![(j, Scalar::one())];
            c.add(a.mul_sparse(&x, &e));
            c.add(a.mul_sparse(&e, &x));
        }
        n += 1;
    }
    Ok(c.ech.row_space())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// No probed vector generated a proper ideal. This is not a proof of simplicity.
    NoProperIdealFound,
    ProperIdeal {
        generator: Vec<Scalar>,
        ideal: Subspace,
    },
}

/// Ideal closures of every basis vector and of `trials` random vectors.
pub fn simplicity_probe<R: Rng + ?Sized>(
    a: &SuperAlgebra,
    trials: usize,
    rng: &mut R,
) -> ProbeVerdict {
    let d = a.dim();
    let basis = (0..d).map(|i| a.basis_element(i));
    let random: Vec<Vec<Scalar>> = (0..trials)
        .map(|_| {
            (0..d)
                .map(|_| Scalar::from_int(rng.gen_range(-3..=3)))
                .collect()
        })
        .collect();
    for v in basis.chain(random) {
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        let ideal = ideal_closure(a, &v).expect("nonzero vector of matching length");
        if ideal.dim() < d {
            return ProbeVerdict::ProperIdeal {
                generator: v,
                ideal,
            };
        }
    }
    ProbeVerdict::NoProperIdealFound
}

/// Eigenspaces of right multiplication by an idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peirce {
    pub p0: Subspace,
    pub p_half: Subspace,
    pub p1: Subspace,
}

pub fn peirce_decompose(a: &SuperAlgebra, e: &[Scalar]) -> Result<Peirce, AlgebraError> {
    if a.multiply(e, e)? != e {
        return Err(AlgebraError::NotIdempotent);
    }
    let r = a.right_mult_operator(e)?;
    let candidates = [Scalar::zero(), Scalar::ratio(1, 2), Scalar::one()];
    let spaces = simultaneous_eigenspaces(a.dim(), &[r], &candidates)
        .map_err(|_| AlgebraError::NotPeirce)?;
    let mut out = Peirce {
        p0: Subspace::zero(a.dim()),
        p_half: Subspace::zero(a.dim()),
        p1: Subspace::zero(a.dim()),
    };
    for ws in spaces {
        let slot = match &ws.weight[0] {
            w if w.is_zero() => &mut out.p0,
            w if w.is_one() => &mut out.p1,
            _ => &mut out.p_half,
        };
        *slot = ws.space;
    }
    Ok(out)
}

/// Span of all products `eᵢeⱼ`, that is `A²`.
pub fn products_span(a: &SuperAlgebra) -> Subspace {
    let mut ech = Echelon::new(a.dim());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if ech.rank() == a.dim() {
                return ech.row_space();
            }
            let p = a.product(i, j);
            if !p.is_empty() {
                ech.insert(p.clone());
            }
        }
    }
    ech.row_space()
}

/// `{z : [z,x] = (z,x,y) = (x,z,y) = (x,y,z) = 0}` for all basis `x, y`.
pub fn center(a: &SuperAlgebra) -> Subspace {
    let d = a.dim();
    let e = |i: usize| -> SparseVec { vec![(i, Scalar::one())] };
    // Rows keyed by (constraint, coordinate); each unknown z_i contributes a column.
    let mut rows: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    let mut push = |constraint: usize, z: usize, v: SparseVec| {
        for (k, c) in v {
            rows.entry((constraint, k)).or_default().push((z, c));
        }
    };
    let assoc = |x: &SparseVec, y: &SparseVec, w: &SparseVec| -> SparseVec {
        let left = a.mul_sparse(&a.mul_sparse(x, y), w);
        let right = a.mul_sparse(x, &a.mul_sparse(y, w));
        normalize(
            left.into_iter()
                .chain(right.into_iter().map(|(k, c)| (k, -c))),
        )
    };
    for z in 0..d {
        for x in 0..d {
            let comm = normalize(
                a.product(z, x)
                    .iter()
                    .cloned()
                    .chain(a.product(x, z).iter().map(|(k, c)| (*k, -c))),
            );
            push(x, z, comm);
            for y in 0..d {
                let base = d + 3 * (x * d + y);
                push(base, z, assoc(&e(z), &e(x), &e(y)));
                push(base + 1, z, assoc(&e(x), &e(z), &e(y)));
                push(base + 2, z, assoc(&e(x), &e(y), &e(z)));
            }
        }
    }
    let mut m = SparseMatrix::new(d);
    for (_, r) in rows {
        m.push_terms(r);
    }
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::super::{direct_sum, grassmann, plus_functor};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m2() -> SuperAlgebra {
        let mut terms = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    terms.push((2 * a + b, 2 * b + c, 2 * a + c, Scalar::one()));
                }
            }
        }
        SuperAlgebra::new("M2", vec![0; 4], terms)
            .unwrap()
            .with_detected_unit()
    }

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn closures() {
        let m = m2();
        let unit = m.unit().unwrap().clone();
        assert_eq!(subalgebra_closure(&m, &[unit]).unwrap().dim(), 1);
        let all: Vec<_> = (0..4).map(|i| m.basis_element(i)).collect();
        assert_eq!(subalgebra_closure(&m, &all).unwrap(), Subspace::full(4));
        assert_eq!(ideal_closure(&m, &m.basis_element(0)).unwrap().dim(), 4);
        assert_eq!(
            ideal_closure(&m, &m.zero_element()),
            Err(AlgebraError::ZeroVector)
        );
    }

    #[test]
    fn probe_finds_augmentation_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l2 = grassmann(2).unwrap();
        match simplicity_probe(&l2, 5, &mut rng) {
            ProbeVerdict::ProperIdeal { generator, ideal } => {
                assert_eq!(generator, l2.basis_element(1));
                assert_eq!(ideal.dim(), 2);
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(ideal_closure(&l2, &l2.basis_element(1)).unwrap().dim(), 2);
        let sum = direct_sum(&m2(), &m2());
        let first = sum.basis_element(0);
        let ideal = ideal_closure(&sum, &first).unwrap();
        assert_eq!(ideal.dim(), 4);
        assert!(ideal.vectors().all(|v| v[4..].iter().all(Scalar::is_zero)));
        assert_eq!(
            simplicity_probe(&m2(), 10, &mut rng),
            ProbeVerdict::NoProperIdealFound
        );
    }

    #[test]
    fn centers() {
        let c = center(&m2());
        assert_eq!(c, Subspace::from_spanning(4, vec![ints(&[1, 0, 0, 1])]));
        let zero = SuperAlgebra::new("zero", vec![0, 0], []).unwrap();
        assert_eq!(center(&zero), Subspace::full(2));
    }

    #[test]
    fn peirce_of_matrix_idempotent() {
        let j = plus_functor(&m2());
        let p = peirce_decompose(&j, &j.basis_element(0)).unwrap();
        assert_eq!((p.p0.dim(), p.p_half.dim(), p.p1.dim()), (1, 2, 1));
        let unit = j.unit().unwrap().clone();
        assert_eq!(peirce_decompose(&j, &unit).unwrap().p1.dim(), 4);
        assert_eq!(
            peirce_decompose(&j, &ints(&[2, 0, 0, 0])),
            Err(AlgebraError::NotIdempotent)
        );
    }
}
