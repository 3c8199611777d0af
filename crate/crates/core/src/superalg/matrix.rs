use super::{Meta, SuperAlgebra};
use crate::exactfield::Scalar;

/// Index of `e_{ab}` (0-based `a`, `b`) in the matrix superalgebra of size `size`.
pub fn matrix_unit_index(size: usize, a: usize, b: usize) -> usize {
    a * size + b
}

/// The associative matrix superalgebra `M_{m,n}`: `e_{ab}e_{cd} = δ_{bc} e_{ad}`,
/// with `e_{ab}` odd iff exactly one of `a`, `b` lies among the first `m` indices.
pub fn matrix_superalgebra(m: usize, n: usize) -> SuperAlgebra {
    let size = m + n;
    let block = |a: usize| u8::from(a >= m);
    let mut parity = Vec::with_capacity(size * size);
    let mut labels = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            parity.push(block(a) ^ block(b));
            labels.push(format!("e{},{}", a + 1, b + 1));
        }
    }
    let mut terms = Vec::new();
    for a in 0..size {
        for b in 0..size {
            for d in 0..size {
                terms.push((
                    matrix_unit_index(size, a, b),
                    matrix_unit_index(size, b, d),
                    matrix_unit_index(size, a, d),
                    Scalar::one(),
                ));
            }
        }
    }
    let mut alg =
        SuperAlgebra::new(format!("M({m},{n})"), parity, terms).expect("matrix units are graded");
    alg.meta = Meta {
        labels,
        ..Meta::default()
    };
    let unit = (0..size * size)
        .map(|i| {
            if i / size == i % size {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    alg.with_unit(unit).expect("identity matrix is the unit")
}

#[cfg(test)]
mod tests {
    use super::super::{check_super_variety, minus_functor, plus_functor, Variety};
    use super::*;

    #[test]
    fn matrix_superalgebra_functors() {
        let m = matrix_superalgebra(1, 1);
        assert_eq!((m.dim(), m.even_dim()), (4, 2));
        assert!(m.is_associative());
        let plus = plus_functor(&m);
        // e12 ∘ e21 = ½(e11 − e22)
        assert_eq!(
            plus.product(1, 2),
            &vec![(0, Scalar::ratio(1, 2)), (3, Scalar::ratio(-1, 2))]
        );
        assert!(check_super_variety(&plus, Variety::JordanSuper)
            .unwrap()
            .passed());
        assert!(check_super_variety(&minus_functor(&m), Variety::LieSuper)
            .unwrap()
            .passed());
    }
}
