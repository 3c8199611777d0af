use super::grassmann::{monomial_label, signed, wedge, SubsetBasis};
use super::{AlgebraError, SuperAlgebra};
use crate::exactfield::Scalar;
use crate::linalg::{sparsify, Subspace};

/// Largest Grassmann rank accepted for envelopes.
pub const MAX_ENVELOPE_RANK: usize = 6;

/// `A⁽⁺⁾`: same space, product `a∘b = ½(ab + (−1)^{p(a)p(b)} ba)`. The unit is kept.
pub fn plus_functor(a: &SuperAlgebra) -> SuperAlgebra {
    symmetrized(a, false, format!("{}(+)", a.name()))
}

/// `A⁽⁻⁾`: same space, product `[a,b] = ab − (−1)^{p(a)p(b)} ba`.
pub fn minus_functor(a: &SuperAlgebra) -> SuperAlgebra {
    symmetrized(a, true, format!("{}(-)", a.name()))
}

fn symmetrized(a: &SuperAlgebra, minus: bool, name: String) -> SuperAlgebra {
    let d = a.dim();
    let half = Scalar::ratio(1, 2);
    let mut terms = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let odd_pair = a.parity_of(i) & a.parity_of(j) == 1;
            // Coefficient of `ba`: +1 for the plus functor on even pairs.
            let negate_ba = odd_pair != minus;
            let (s_ab, s_ba) = if minus {
                (Scalar::one(), signed(negate_ba))
            } else {
                (half.clone(), &half * &signed(negate_ba))
            };
            for (k, c) in a.product(i, j) {
                terms.push((i, j, *k, &s_ab * c));
            }
            for (k, c) in a.product(j, i) {
                terms.push((i, j, *k, &s_ba * c));
            }
        }
    }
    let mut out =
        SuperAlgebra::new(name, a.parity().to_vec(), terms).expect("functor preserves grading");
    out.meta.labels = a.meta.labels.clone();
    if !minus {
        out.set_unit_unchecked(a.unit().cloned());
    }
    out
}

/// `A ⊕ B` with componentwise product; basis of `A` first.
pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> SuperAlgebra {
    let da = a.dim();
    let terms = a.entries().map(|(i, j, k, c)| (i, j, k, c.clone())).chain(
        b.entries()
            .map(|(i, j, k, c)| (i + da, j + da, k + da, c.clone())),
    );
    let parity = a.parity().iter().chain(b.parity()).copied().collect();
    let mut out = SuperAlgebra::new(format!("{}+{}", a.name(), b.name()), parity, terms)
        .expect("direct sum preserves grading");
    if !a.meta.labels.is_empty() || !b.meta.labels.is_empty() {
        out.meta.labels = (0..da)
            .map(|i| format!("{}@1", a.label(i)))
            .chain((0..b.dim()).map(|i| format!("{}@2", b.label(i))))
            .collect();
    }
    if let (Some(ua), Some(ub)) = (a.unit(), b.unit()) {
        let u = ua.iter().chain(ub).cloned().collect();
        out = out.with_unit(u).expect("sum of units is a unit");
    }
    out
}

/// The Grassmann envelope `Γ₀⊗A₀ + Γ₁⊗A₁` inside `Λ(k)⊗A`, as an ordinary algebra.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub algebra: SuperAlgebra,
    /// For each envelope basis element: the Grassmann monomial mask and the index in `A`.
    pub origin: Vec<(u32, usize)>,
}

/// Builds the Grassmann envelope over `Λ(k)`; basis `e_S⊗aᵢ` with `|S| ≡ p(aᵢ)`.
pub fn grassmann_envelope(a: &SuperAlgebra, k: usize) -> Result<Envelope, AlgebraError> {
    if k > MAX_ENVELOPE_RANK {
        return Err(AlgebraError::TooLarge(format!("envelope over Lambda({k})")));
    }
    let subsets = SubsetBasis::new(k);
    let mut origin = Vec::new();
    let mut index = vec![usize::MAX; subsets.len() * a.dim()];
    for i in 0..a.dim() {
        for &s in subsets.masks() {
            if s.count_ones() % 2 == a.parity_of(i) as u32 {
                index[s as usize * a.dim() + i] = origin.len();
                origin.push((s, i));
            }
        }
    }
    let mut terms = Vec::new();
    for (x, &(s, i)) in origin.iter().enumerate() {
        for (y, &(t, j)) in origin.iter().enumerate() {
            let Some((u, neg)) = wedge(s, t) else {
                continue;
            };
            let sign = signed(neg);
            for (kk, c) in a.product(i, j) {
                let z = index[u as usize * a.dim() + kk];
                terms.push((x, y, z, &sign * c));
            }
        }
    }
    let labels = origin
        .iter()
        .map(|&(s, i)| format!("{}(x){}", monomial_label(s), a.label(i)))
        .collect();
    let algebra = SuperAlgebra::new(
        format!("Env{k}({})", a.name()),
        vec![0; origin.len()],
        terms,
    )?
    .with_labels(labels);
    Ok(Envelope { algebra, origin })
}

/// The subalgebra on a multiplicatively closed subspace, in the subspace's canonical basis.
/// Each basis vector must be homogeneous.
pub fn restrict_to_subspace(
    a: &SuperAlgebra,
    space: &Subspace,
    name: impl Into<String>,
) -> Result<SuperAlgebra, AlgebraError> {
    if space.ambient_dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            found: space.ambient_dim(),
        });
    }
    let vecs: Vec<_> = space.vectors().map(sparsify).collect();
    let mut parity = Vec::with_capacity(vecs.len());
    for (n, v) in space.vectors().enumerate() {
        parity.push(
            a.homogeneous_parity(v)
                .ok_or(AlgebraError::Inhomogeneous(n))?,
        );
    }
    let mut terms = Vec::new();
    for (i, x) in vecs.iter().enumerate() {
        for (j, y) in vecs.iter().enumerate() {
            let prod = a.mul_sparse(x, y);
            if prod.is_empty() {
                continue;
            }
            let mut dense = a.zero_element();
            for (k, c) in prod {
                dense[k] = c;
            }
            let coords = space.coordinates(&dense).ok_or(AlgebraError::NotClosed)?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i, j, k, c));
                }
            }
        }
    }
    Ok(SuperAlgebra::new(name, parity, terms)?.with_detected_unit())
}

#[cfg(test)]
mod tests {
    use super::super::grassmann;
    use super::*;

    fn matrix_algebra_2() -> SuperAlgebra {
        // e_{ab} at index 2a + b.
        let mut terms = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    terms.push((2 * a + b, 2 * b + c, 2 * a + c, Scalar::one()));
                }
            }
        }
        SuperAlgebra::new("M2", vec![0; 4], terms).unwrap()
    }

    #[test]
    fn plus_of_supercommutative_is_identical() {
        let l3 = grassmann(3).unwrap();
        let p = plus_functor(&l3);
        assert!(p.entries().eq(l3.entries()));
        assert!(minus_functor(&l3).nnz() == 0);
    }

    #[test]
    fn matrix_functors() {
        let m2 = matrix_algebra_2();
        let p = plus_functor(&m2);
        // e11 ∘ e12 = ½ e12
        assert_eq!(p.product(0, 1), &vec![(1, Scalar::ratio(1, 2))]);
        let m = minus_functor(&m2);
        // [e11, e12] = e12
        assert_eq!(m.product(0, 1), &vec![(1, Scalar::one())]);
    }

    #[test]
    fn envelope_dimensions() {
        let l2 = grassmann(2).unwrap();
        let e0 = grassmann_envelope(&l2, 0).unwrap();
        assert_eq!(e0.algebra.dim(), l2.even_dim());
        for k in 1..=4 {
            assert_eq!(
                grassmann_envelope(&l2, k).unwrap().algebra.dim(),
                (1 << (k - 1)) * l2.dim()
            );
        }
        let l1 = grassmann(1).unwrap();
        let env = grassmann_envelope(&l1, 1).unwrap().algebra;
        assert_eq!(env.dim(), 2);
        assert!(env.is_supercommutative() && env.is_purely_even());
        assert!(matches!(
            grassmann_envelope(&l2, 7),
            Err(AlgebraError::TooLarge(_))
        ));
    }

    #[test]
    fn direct_sum_units() {
        let l1 = grassmann(1).unwrap();
        let s = direct_sum(&l1, &l1);
        assert_eq!(s.dim(), 4);
        assert_eq!(
            s.unit().unwrap(),
            &vec![Scalar::one(), Scalar::zero(), Scalar::one(), Scalar::zero()]
        );
    }
}
