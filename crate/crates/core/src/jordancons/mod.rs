//! Jordan superalgebras: matrix types, `J(V,f)`, `D_t`, `K₃`, `K₁₀`, `J(Γₙ)`,
//! and the ordinary algebras used for the noncommutative Jordan checks.

mod jgamma;
mod k10;

pub use jgamma::{build_jgamma, JGammaBasis};
pub use k10::{build_k10, build_k10_from, k10_from_kaplansky, K10_SHA256};

use thiserror::Error;

use crate::exactfield::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::superalg::{
    direct_sum, matrix_superalgebra, matrix_unit_index, plus_functor, restrict_to_subspace,
    AlgebraError, Element, SuperAlgebra,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("K10 data rejected: {0}")]
    K10DataCorrupt(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn out_of_range(msg: String) -> JordanError {
    JordanError::OutOfRange(msg)
}

/// Readable name for a vector in matrix-unit coordinates, e.g. `e1,2+e4,3`.
fn combo_label(a: &SuperAlgebra, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let lab = a.label(i);
        match c.to_string().as_str() {
            "1" if out.is_empty() => out += &lab,
            "1" => out += &format!("+{lab}"),
            "-1" => out += &format!("-{lab}"),
            s if out.is_empty() || s.starts_with('-') => out += &format!("{s}*{lab}"),
            s => out += &format!("+{s}*{lab}"),
        }
    }
    out
}

/// The subalgebra of `M_{m,n}⁽⁺⁾` spanned by `vectors`, with the given elements registered as idempotents.
fn matrix_jordan_subalgebra(
    m: usize,
    n: usize,
    vectors: Vec<Vec<Scalar>>,
    idempotents: &[Vec<Scalar>],
    name: String,
) -> Result<SuperAlgebra, JordanError> {
    let plus = plus_functor(&matrix_superalgebra(m, n));
    let space = Subspace::from_spanning(plus.dim(), vectors);
    let mut alg = restrict_to_subspace(&plus, &space, name)?;
    alg.meta.labels = space.vectors().map(|v| combo_label(&plus, v)).collect();
    alg.meta.idempotents = idempotents
        .iter()
        .map(|e| {
            space
                .coordinates(e)
                .expect("registered idempotent lies in the subalgebra")
        })
        .collect();
    alg.meta.claims_jordan_super = true;
    Ok(alg)
}

/// Matrix-unit coordinate vector `Σ c·e_{ab}` (0-based indices) in `M_{size}`.
fn units(size: usize, terms: &[(usize, usize, i64)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); size * size];
    for &(a, b, c) in terms {
        v[matrix_unit_index(size, a, b)] += &Scalar::from_int(c);
    }
    v
}

/// `M_{m,n}⁽⁺⁾`.
pub fn build_matrix_plus(m: usize, n: usize) -> Result<SuperAlgebra, JordanError> {
    if m + n == 0 || m + n > 3 {
        return Err(out_of_range(format!(
            "M(m,n)(+) needs 1 <= m + n <= 3, got ({m},{n})"
        )));
    }
    let size = m + n;
    let mut alg = plus_functor(&matrix_superalgebra(m, n)).with_name(format!("M({m},{n})(+)"));
    alg.meta.idempotents = (0..size).map(|a| units(size, &[(a, a, 1)])).collect();
    alg.meta.claims_jordan_super = true;
    Ok(alg)
}

/// `Q(n)⁽⁺⁾`: matrices `[[A, B], [B, A]]` in `M_{n,n}⁽⁺⁾`.
pub fn build_q_plus(n: usize) -> Result<SuperAlgebra, JordanError> {
    if n != 2 {
        return Err(out_of_range(format!(
            "Q(n)(+) is supported for n = 2, got {n}"
        )));
    }
    let size = 2 * n;
    let mut vectors = Vec::new();
    for a in 0..n {
        for b in 0..n {
            vectors.push(units(size, &[(a, b, 1), (n + a, n + b, 1)]));
            vectors.push(units(size, &[(a, n + b, 1), (n + a, b, 1)]));
        }
    }
    let idem: Vec<_> = (0..n)
        .map(|a| units(size, &[(a, a, 1), (n + a, n + a, 1)]))
        .collect();
    matrix_jordan_subalgebra(n, n, vectors, &idem, format!("Q({n})(+)"))
}

/// `P(n)`: matrices `[[a, b], [c, aᵗ]]` with `b` skew and `c` symmetric, in `M_{n,n}⁽⁺⁾`.
pub fn build_p(n: usize) -> Result<SuperAlgebra, JordanError> {
    if n != 2 {
        return Err(out_of_range(format!(
            "P(n) is supported for n = 2, got {n}"
        )));
    }
    let size = 2 * n;
    let mut vectors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            vectors.push(units(size, &[(i, j, 1), (n + j, n + i, 1)]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            vectors.push(units(size, &[(i, n + j, 1), (j, n + i, -1)]));
            vectors.push(units(size, &[(n + i, j, 1), (n + j, i, 1)]));
        }
        vectors.push(units(size, &[(n + i, i, 1)]));
    }
    let idem: Vec<_> = (0..n)
        .map(|i| units(size, &[(i, i, 1), (n + i, n + i, 1)]))
        .collect();
    matrix_jordan_subalgebra(n, n, vectors, &idem, format!("P({n})"))
}

/// `osp(n,m)`: elements of `M_{n,2m}⁽⁺⁾` fixed by `x ↦ U⁻¹ xˢᵗ U`,
/// `U = I_n ⊕ [[0, I_m], [−I_m, 0]]`.
pub fn build_osp(n: usize, m: usize) -> Result<SuperAlgebra, JordanError> {
    if !matches!((n, m), (1, 1) | (2, 1)) {
        return Err(out_of_range(format!(
            "osp(n,m) is supported for (1,1) and (2,1), got ({n},{m})"
        )));
    }
    let size = n + 2 * m;
    let mut u = Matrix::zeros(size, size);
    let mut u_inv = Matrix::zeros(size, size);
    for a in 0..n {
        u[(a, a)] = Scalar::one();
        u_inv[(a, a)] = Scalar::one();
    }
    for i in 0..m {
        let (p, q) = (n + i, n + m + i);
        u[(p, q)] = Scalar::one();
        u[(q, p)] = Scalar::from_int(-1);
        u_inv[(p, q)] = Scalar::from_int(-1);
        u_inv[(q, p)] = Scalar::one();
    }
    debug_assert_eq!(u.mul(&u_inv), Matrix::identity(size));
    // The involution as a linear map on matrix-unit coordinates; column k is the image of unit k.
    let d = size * size;
    let mut star = Matrix::zeros(d, d);
    for a in 0..size {
        for b in 0..size {
            let mut st = Matrix::zeros(size, size);
            st[(b, a)] = if a < n && b >= n {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };
            let img = u_inv.mul(&st).mul(&u);
            for (k, c) in img.entries().iter().enumerate() {
                star[(k, a * size + b)] = c.clone();
            }
        }
    }
    let fixed = star.sub(&Matrix::identity(d)).kernel();
    let vectors: Vec<_> = fixed.vectors().map(<[Scalar]>::to_vec).collect();
    let mut idem: Vec<_> = (0..n).map(|a| units(size, &[(a, a, 1)])).collect();
    idem.extend((0..m).map(|i| units(size, &[(n + i, n + i, 1), (n + m + i, n + m + i, 1)])));
    matrix_jordan_subalgebra(n, 2 * m, vectors, &idem, format!("osp({n},{m})"))
}

/// `J(V,f) = F·1 ⊕ V₀ ⊕ V₁` with `f` the identity form on `V₀` and `f(xᵢ, yᵢ) = 1 = −f(yᵢ, xᵢ)` on `V₁`.
/// Basis: `1, v₁…v_{n0}, x₁…x_k, y₁…y_k` with `n1 = 2k`.
pub fn build_jvf(n0: usize, n1: usize) -> Result<SuperAlgebra, JordanError> {
    if n0 == 0 || n1 % 2 == 1 || n0 + n1 > 6 {
        return Err(out_of_range(format!(
            "J(V,f) needs n0 >= 1, even n1, n0 + n1 <= 6, got ({n0},{n1})"
        )));
    }
    let k = n1 / 2;
    let dim = 1 + n0 + n1;
    let mut parity = vec![0; 1 + n0];
    parity.extend(std::iter::repeat_n(1, n1));
    let mut terms = Vec::new();
    for i in 0..dim {
        terms.push((0, i, i, Scalar::one()));
        if i > 0 {
            terms.push((i, 0, i, Scalar::one()));
        }
    }
    for i in 1..=n0 {
        terms.push((i, i, 0, Scalar::one()));
    }
    for i in 0..k {
        let (x, y) = (1 + n0 + i, 1 + n0 + k + i);
        terms.push((x, y, 0, Scalar::one()));
        terms.push((y, x, 0, Scalar::from_int(-1)));
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=n0).map(|i| format!("v{i}")));
    labels.extend((1..=k).map(|i| format!("x{i}")));
    labels.extend((1..=k).map(|i| format!("y{i}")));
    let mut alg = SuperAlgebra::new(format!("JVf({n0},{n1})"), parity, terms)?.with_labels(labels);
    let half = Scalar::ratio(1, 2);
    alg.meta.idempotents = [1, -1]
        .iter()
        .map(|&s| {
            let mut e = alg.zero_element();
            e[0] = half.clone();
            e[1] = &half * &Scalar::from_int(s);
            e
        })
        .collect();
    alg.meta.claims_jordan_super = true;
    let unit = alg.basis_element(0);
    Ok(alg.with_unit(unit)?)
}

/// `D_t`: basis `e₁, e₂` (even), `x, y` (odd).
pub fn build_dt(t: &Scalar) -> Result<SuperAlgebra, JordanError> {
    if t.is_zero() {
        return Err(JordanError::BadParameter("D_t needs t != 0".into()));
    }
    let half = Scalar::ratio(1, 2);
    let (e1, e2, x, y) = (0, 1, 2, 3);
    let mut terms = vec![
        (e1, e1, e1, Scalar::one()),
        (e2, e2, e2, Scalar::one()),
        (x, y, e1, Scalar::one()),
        (x, y, e2, t.clone()),
        (y, x, e1, Scalar::from_int(-1)),
        (y, x, e2, -t),
    ];
    for e in [e1, e2] {
        for o in [x, y] {
            terms.push((e, o, o, half.clone()));
            terms.push((o, e, o, half.clone()));
        }
    }
    let mut alg = SuperAlgebra::new(format!("D({t})"), vec![0, 0, 1, 1], terms)?
        .with_labels(["e1", "e2", "x", "y"].map(String::from).to_vec());
    alg.meta.idempotents = vec![alg.basis_element(e1), alg.basis_element(e2)];
    alg.meta.claims_jordan_super = true;
    let unit = vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()];
    Ok(alg.with_unit(unit)?)
}

/// The Kaplansky superalgebra `K₃`: basis `e` (even), `x, y` (odd); no unit.
pub fn build_k3() -> SuperAlgebra {
    let half = Scalar::ratio(1, 2);
    let (e, x, y) = (0, 1, 2);
    let terms = vec![
        (e, e, e, Scalar::one()),
        (e, x, x, half.clone()),
        (x, e, x, half.clone()),
        (e, y, y, half.clone()),
        (y, e, y, half),
        (x, y, e, Scalar::one()),
        (y, x, e, Scalar::from_int(-1)),
    ];
    let mut alg = SuperAlgebra::new("K3", vec![0, 1, 1], terms)
        .expect("K3 table is graded")
        .with_labels(["e", "x", "y"].map(String::from).to_vec());
    alg.meta.idempotents = vec![alg.basis_element(e)];
    alg.meta.claims_jordan_super = true;
    alg
}

fn symmetric_matrices(n: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            if a == b {
                out.push(units(n, &[(a, a, 1)]));
            } else {
                out.push(units(n, &[(a, b, 1), (b, a, 1)]));
            }
        }
    }
    out
}

/// `Hₙ(F)`: symmetric matrices under `x∘y = ½(xy + yx)`.
pub fn build_hermitian(n: usize) -> Result<SuperAlgebra, JordanError> {
    if !(1..=3).contains(&n) {
        return Err(out_of_range(format!("H_n needs 1 <= n <= 3, got {n}")));
    }
    let idem: Vec<_> = (0..n).map(|a| units(n, &[(a, a, 1)])).collect();
    let mut alg = matrix_jordan_subalgebra(n, 0, symmetric_matrices(n), &idem, format!("H{n}"))?;
    alg.meta.claims_jordan_super = false;
    alg.meta.claims_nc_jordan = true;
    alg.meta.claims_flexible = true;
    alg.meta.degree = Some(n);
    Ok(alg)
}

/// The full matrix algebra `M₂` with its associative product: flexible, noncommutative Jordan of degree 2.
pub fn build_m2() -> SuperAlgebra {
    let mut alg = matrix_superalgebra(2, 0).with_name("M2");
    alg.meta.claims_flexible = true;
    alg.meta.claims_nc_jordan = true;
    alg.meta.degree = Some(2);
    alg.meta.idempotents = vec![units(2, &[(0, 0, 1)]), units(2, &[(1, 1, 1)])];
    alg
}

/// `M₂` with `x*y = λxy + (1−λ)yx`. For `λ ∉ {0, ½, 1}` this is flexible,
/// noncommutative and not associative.
pub fn build_quasi_associative_m2(lambda: &Scalar) -> SuperAlgebra {
    let m = matrix_superalgebra(2, 0);
    let mu = &Scalar::one() - lambda;
    let mut terms = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for (k, c) in m.product(i, j) {
                terms.push((i, j, *k, lambda * c));
            }
            for (k, c) in m.product(j, i) {
                terms.push((i, j, *k, &mu * c));
            }
        }
    }
    let mut alg = SuperAlgebra::new(format!("M2[{lambda}]"), vec![0; 4], terms)
        .expect("ungraded")
        .with_labels(m.meta.labels.clone());
    alg.meta.claims_flexible = true;
    alg.meta.claims_nc_jordan = true;
    alg.meta.degree = Some(2);
    alg.meta.idempotents = vec![units(2, &[(0, 0, 1)]), units(2, &[(1, 1, 1)])];
    alg.with_detected_unit()
}

/// Direct sum of Jordan algebras keeping registered idempotents of both summands.
pub fn build_direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> SuperAlgebra {
    let mut s = direct_sum(a, b);
    let (da, db) = (a.dim(), b.dim());
    let pad = |e: &Element, before: usize, after: usize| -> Element {
        let mut v = vec![Scalar::zero(); before];
        v.extend(e.iter().cloned());
        v.extend(std::iter::repeat_n(Scalar::zero(), after));
        v
    };
    s.meta.idempotents = a
        .meta
        .idempotents
        .iter()
        .map(|e| pad(e, 0, db))
        .chain(b.meta.idempotents.iter().map(|e| pad(e, da, 0)))
        .collect();
    s.meta.claims_jordan_super = a.meta.claims_jordan_super && b.meta.claims_jordan_super;
    s.meta.claims_nc_jordan = a.meta.claims_nc_jordan && b.meta.claims_nc_jordan;
    s.meta.claims_flexible = a.meta.claims_flexible && b.meta.claims_flexible;
    s.meta.degree = a.meta.degree.zip(b.meta.degree).map(|(x, y)| x + y);
    s
}

/// The ordinary algebras used for the noncommutative Jordan checks.
pub fn build_jordan_algebras() -> Vec<SuperAlgebra> {
    let h2 = build_hermitian(2).expect("H2");
    vec![
        h2.clone(),
        build_hermitian(3).expect("H3"),
        build_direct_sum(&h2, &h2),
        build_m2(),
        build_quasi_associative_m2(&Scalar::ratio(2, 3)),
        build_jvf(3, 0).expect("J(V,f) with n1 = 0"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{
        check_identity_multilinear, check_super_variety, peirce_decompose, Identity, Variety,
    };

    fn assert_jordan(a: &SuperAlgebra) {
        assert!(a.is_supercommutative(), "{} not supercommutative", a.name());
        let c = check_super_variety(a, Variety::JordanSuper).unwrap();
        assert!(c.passed(), "{}: {:?}", a.name(), c.witness());
    }

    #[test]
    fn matrix_plus() {
        let m = build_matrix_plus(1, 1).unwrap();
        assert_eq!((m.dim(), m.even_dim()), (4, 2));
        assert_jordan(&m);
        assert_jordan(&build_matrix_plus(2, 1).unwrap());
        assert!(build_matrix_plus(2, 2).is_err());
    }

    #[test]
    fn q_plus() {
        let q = build_q_plus(2).unwrap();
        assert_eq!(q.dim(), 8);
        assert_jordan(&q);
        let unit = q.unit().expect("Q(2)(+) is unital");
        let plus = plus_functor(&matrix_superalgebra(2, 2));
        let space = Subspace::from_spanning(16, q_vectors());
        let id: Vec<Scalar> = units(4, &[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]);
        assert_eq!(space.coordinates(&id).as_ref(), Some(unit));
        // Odd Q-elements e_{1,n+2}+e_{n+1,2} and e_{2,n+1}+e_{n+2,1}: their product is even.
        let a = units(4, &[(0, 3, 1), (2, 1, 1)]);
        let b = units(4, &[(1, 2, 1), (3, 0, 1)]);
        let p = plus.multiply(&a, &b).unwrap();
        assert_eq!(plus.homogeneous_parity(&p), Some(0));
        assert!(!p.iter().all(Scalar::is_zero));
    }

    fn q_vectors() -> Vec<Vec<Scalar>> {
        let mut v = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                v.push(units(4, &[(a, b, 1), (2 + a, 2 + b, 1)]));
                v.push(units(4, &[(a, 2 + b, 1), (2 + a, b, 1)]));
            }
        }
        v
    }

    #[test]
    fn p2() {
        let p = build_p(2).unwrap();
        assert_eq!((p.dim(), p.even_dim()), (8, 4));
        assert_jordan(&p);
        assert!(p.unit().is_some());
        // Both element families from the Peirce argument are members.
        let plus = plus_functor(&matrix_superalgebra(2, 2));
        let mut vectors = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                vectors.push(units(4, &[(i, j, 1), (2 + j, 2 + i, 1)]));
            }
        }
        vectors.push(units(4, &[(0, 3, 1), (1, 2, -1)]));
        vectors.push(units(4, &[(2, 1, 1), (3, 0, 1)]));
        vectors.push(units(4, &[(2, 0, 1)]));
        vectors.push(units(4, &[(3, 1, 1)]));
        let space = Subspace::from_spanning(plus.dim(), vectors);
        assert!(space.contains(&units(4, &[(0, 1, 1), (3, 2, 1)])));
        assert!(space.contains(&units(4, &[(2, 0, 1)])));
        assert!(space.contains(&units(4, &[(1, 2, 1), (0, 3, -1)])));
    }

    #[test]
    fn osp() {
        let a = build_osp(1, 1).unwrap();
        assert_eq!((a.even_dim(), a.odd_dim()), (2, 2));
        assert!(a.unit().is_some());
        assert_jordan(&a);
        let b = build_osp(2, 1).unwrap();
        assert_eq!((b.even_dim(), b.odd_dim()), (4, 4));
        assert_jordan(&b);
    }

    #[test]
    fn jvf() {
        let j = build_jvf(2, 2).unwrap();
        assert_eq!(j.dim(), 5);
        // x₁∘y₁ = 1, y₁∘x₁ = −1
        assert_eq!(j.product(3, 4), &vec![(0, Scalar::one())]);
        assert_eq!(j.product(4, 3), &vec![(0, Scalar::from_int(-1))]);
        assert_eq!(j.product(1, 1), &vec![(0, Scalar::one())]);
        assert_jordan(&j);
        assert!(build_jvf(2, 1).is_err());
    }

    #[test]
    fn dt_and_k3() {
        for t in [1, 2, -1, 3] {
            let d = build_dt(&Scalar::from_int(t)).unwrap();
            assert_jordan(&d);
            let p = peirce_decompose(&d, &d.basis_element(0)).unwrap();
            assert_eq!((p.p0.dim(), p.p_half.dim(), p.p1.dim()), (1, 2, 1));
        }
        assert!(matches!(
            build_dt(&Scalar::zero()),
            Err(JordanError::BadParameter(_))
        ));
        let k3 = build_k3();
        assert_jordan(&k3);
        assert_eq!(k3.solve_unit(), None);
        let p = peirce_decompose(&k3, &k3.basis_element(0)).unwrap();
        assert_eq!((p.p0.dim(), p.p_half.dim(), p.p1.dim()), (0, 2, 1));
    }

    #[test]
    fn ordinary_algebras() {
        let h2 = build_hermitian(2).unwrap();
        assert_eq!(h2.dim(), 3);
        assert!(h2.unit().is_some());
        assert!(check_identity_multilinear(&h2, Identity::Jordan)
            .unwrap()
            .passed());
        let m2 = build_m2();
        assert!(check_identity_multilinear(&m2, Identity::Flexibility)
            .unwrap()
            .passed());
        assert!(!check_identity_multilinear(&m2, Identity::Commutativity)
            .unwrap()
            .passed());
        let q = build_quasi_associative_m2(&Scalar::ratio(2, 3));
        assert!(check_identity_multilinear(&q, Identity::NcJordan)
            .unwrap()
            .passed());
        assert!(!q.is_associative());
        assert!(!check_identity_multilinear(&q, Identity::Commutativity)
            .unwrap()
            .passed());
        assert!(q.unit().is_some());
        for a in build_jordan_algebras() {
            assert!(
                check_identity_multilinear(&a, Identity::NcJordan)
                    .unwrap()
                    .passed(),
                "{}",
                a.name()
            );
        }
    }
}
