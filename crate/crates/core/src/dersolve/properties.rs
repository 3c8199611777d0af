use serde::Serialize;

use super::{
    centroid, centroid_rows, delta_rows, solve_delta, stacked_kernel, DerError, DerivationQuery,
    MapParity, MapSpace, Mode,
};
use crate::exactfield::Scalar;
use crate::linalg::Matrix;
use crate::superalg::{
    check_identity_multilinear, minus_functor, plus_functor, Identity, SuperAlgebra,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorCentroidReport {
    /// Dimension of the ½-derivation space.
    pub half_dim: usize,
    pub passed: bool,
    /// `(map, x, y)` where a commutator identity fails, or `(map, 0, 0)` for a centroid failure.
    pub witness: Option<(usize, usize, usize)>,
}

/// For a unital flexible algebra, every ½-derivation `φ` satisfies
/// `[φ(x), y] = [x, φ(y)]` and `φ([x, y]) = [φ(x), y]`, so lies in `Γ(A⁽⁻⁾)`.
pub fn check_commutator_centroid(a: &SuperAlgebra) -> Result<CommutatorCentroidReport, DerError> {
    if a.unit().is_none() && a.solve_unit().is_none() {
        return Err(DerError::NotUnital);
    }
    if !check_identity_multilinear(a, Identity::Flexibility)?.passed() {
        return Err(DerError::NotFlexible);
    }
    let half = solve_delta(
        a,
        &DerivationQuery::new(Scalar::ratio(1, 2), MapParity::Any, Mode::Derivation),
    )?;
    let minus = minus_functor(a);
    let gamma_minus = centroid(&minus);
    let d = a.dim();
    let bracket = |x: &[Scalar], y: &[Scalar]| minus.multiply(x, y).expect("dims");
    let mut witness = None;
    'maps: for (n, phi) in half.maps().iter().enumerate() {
        for i in 0..d {
            let x = a.basis_element(i);
            let px = phi.column(i);
            for j in 0..d {
                let y = a.basis_element(j);
                let py = phi.column(j);
                let lhs = bracket(&px, &y);
                if lhs != bracket(&x, &py) || phi.mul_vec(&bracket(&x, &y)) != lhs {
                    witness = Some((n, i, j));
                    break 'maps;
                }
            }
        }
        if !gamma_minus.contains(phi) {
            witness = Some((n, 0, 0));
            break;
        }
    }
    Ok(CommutatorCentroidReport {
        half_dim: half.dim(),
        passed: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusMinusRow {
    pub delta: Scalar,
    pub dim_a: usize,
    pub dim_intersection: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusMinusReport {
    pub deltas: Vec<PlusMinusRow>,
    pub centroid_dim: usize,
    pub centroid_intersection_dim: usize,
    pub centroid_equal: bool,
    pub passed: bool,
}

/// `Δ_δ(A) = Δ_δ(A⁽⁺⁾) ∩ Δ_δ(A⁽⁻⁾)` for δ ∈ {½, 2, −1} and `Γ(A) = Γ(A⁽⁺⁾) ∩ Γ(A⁽⁻⁾)`,
/// with intersections taken by stacking constraint systems.
pub fn check_plus_minus_intersection(a: &SuperAlgebra) -> Result<PlusMinusReport, DerError> {
    let (plus, minus) = (plus_functor(a), minus_functor(a));
    let mut deltas = Vec::new();
    for delta in [
        Scalar::ratio(1, 2),
        Scalar::from_int(2),
        Scalar::from_int(-1),
    ] {
        let q = DerivationQuery::new(delta.clone(), MapParity::Any, Mode::Derivation);
        let own = solve_delta(a, &q)?;
        let (u, rp) = delta_rows(&plus, &q)?;
        let (_, rm) = delta_rows(&minus, &q)?;
        let both = stacked_kernel(&u, MapParity::Any, &[rp, rm]);
        deltas.push(PlusMinusRow {
            delta,
            dim_a: own.dim(),
            dim_intersection: both.dim(),
            equal: own == both,
        });
    }
    let own = centroid(a);
    let (u, cp) = centroid_rows(&plus, Mode::Derivation, MapParity::Any);
    let (_, cm) = centroid_rows(&minus, Mode::Derivation, MapParity::Any);
    let both: MapSpace = stacked_kernel(&u, MapParity::Any, &[cp, cm]);
    let centroid_equal = own == both;
    Ok(PlusMinusReport {
        passed: centroid_equal && deltas.iter().all(|r| r.equal),
        deltas,
        centroid_dim: own.dim(),
        centroid_intersection_dim: both.dim(),
        centroid_equal,
    })
}

fn is_odd_map(a: &SuperAlgebra, phi: &Matrix) -> bool {
    let d = a.dim();
    (0..d).all(|k| (0..d).all(|l| a.parity_of(k) != a.parity_of(l) || phi[(k, l)].is_zero()))
}

/// `ψ_x = φ·ad_x + ad_x·φ` for an odd map `φ` and an odd element `x`.
pub fn psi_bracket(a: &SuperAlgebra, phi: &Matrix, x: &[Scalar]) -> Result<Matrix, DerError> {
    let d = a.dim();
    if (phi.rows(), phi.cols()) != (d, d) || !is_odd_map(a, phi) {
        return Err(DerError::ParityMismatch("φ is not an odd map".into()));
    }
    if !x.iter().all(Scalar::is_zero) && a.homogeneous_parity(x) != Some(1) {
        return Err(DerError::ParityMismatch("x is not odd".into()));
    }
    let ad = a.ad_operator(x)?;
    Ok(phi.mul(&ad).add(&ad.mul(phi)))
}

/// First `(map, basis index)` where `φ(x) ≠ φ(1)·x`, for a unital algebra.
pub fn check_unit_mechanism(
    a: &SuperAlgebra,
    space: &MapSpace,
) -> Result<Option<(usize, usize)>, DerError> {
    let unit = a
        .unit()
        .cloned()
        .or_else(|| a.solve_unit())
        .ok_or(DerError::NotUnital)?;
    for (n, phi) in space.maps().iter().enumerate() {
        let image = phi.mul_vec(&unit);
        for i in 0..a.dim() {
            if a.multiply(&image, &a.basis_element(i))? != phi.column(i) {
                return Ok(Some((n, i)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::delta_witness;
    use super::*;
    use crate::jordancons::{build_dt, build_hermitian, build_m2, build_quasi_associative_m2};
    use crate::liecons::build_sl;

    #[test]
    fn commutator_centroid_on_m2_and_h2() {
        for a in [build_m2(), build_hermitian(2).unwrap()] {
            let r = check_commutator_centroid(&a).unwrap();
            assert!(r.passed, "{}: {:?}", a.name(), r.witness);
            assert_eq!(r.half_dim, 1);
        }
    }

    #[test]
    fn transpose_is_not_a_half_derivation() {
        let m = build_m2();
        // e_{ab} ↦ e_{ba}; basis index a·2 + b
        let t = Matrix::from_fn(4, 4, |k, l| {
            if k == (l % 2) * 2 + l / 2 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let q = DerivationQuery::new(Scalar::ratio(1, 2), MapParity::Any, Mode::Derivation);
        assert!(delta_witness(&m, &t, &q).is_some());
    }

    #[test]
    fn plus_minus_cases() {
        for a in [
            build_m2(),
            build_hermitian(2).unwrap(),
            build_quasi_associative_m2(&Scalar::ratio(2, 3)),
        ] {
            let r = check_plus_minus_intersection(&a).unwrap();
            assert!(r.passed, "{}: {r:?}", a.name());
        }
        let h2 = check_plus_minus_intersection(&build_hermitian(2).unwrap()).unwrap();
        let at_two = h2
            .deltas
            .iter()
            .find(|r| r.delta == Scalar::from_int(2))
            .unwrap();
        assert_eq!((at_two.dim_a, at_two.dim_intersection), (0, 0));
    }

    #[test]
    fn commutator_centroid_rejects_non_unital() {
        let z = SuperAlgebra::new("zero", vec![0], vec![]).unwrap();
        assert_eq!(check_commutator_centroid(&z), Err(DerError::NotUnital));
    }

    #[test]
    fn psi_of_inner_odd_derivation() {
        let sl = build_sl(2, 1).unwrap();
        let odd: Vec<usize> = (0..sl.dim()).filter(|&i| sl.parity_of(i) == 1).collect();
        let zero = Matrix::zeros(sl.dim(), sl.dim());
        let x = sl.basis_element(odd[0]);
        assert!(psi_bracket(&sl, &zero, &x).unwrap().is_zero());
        assert!(psi_bracket(&sl, &zero, &sl.zero_element())
            .unwrap()
            .is_zero());
        let q1 = DerivationQuery::new(Scalar::one(), MapParity::Even, Mode::Superderivation);
        for &yi in &odd {
            let phi = sl.ad_operator(&sl.basis_element(yi)).unwrap();
            for &xi in &odd {
                let psi = psi_bracket(&sl, &phi, &sl.basis_element(xi)).unwrap();
                assert!(delta_witness(&sl, &psi, &q1).is_none());
                // ψ_x = ad_{[y,x]}
                let yx = sl
                    .multiply(&sl.basis_element(yi), &sl.basis_element(xi))
                    .unwrap();
                assert_eq!(psi, sl.ad_operator(&yx).unwrap());
            }
        }
        let even = (0..sl.dim()).find(|&i| sl.parity_of(i) == 0).unwrap();
        assert!(psi_bracket(&sl, &zero, &sl.basis_element(even)).is_err());
    }

    #[test]
    fn unit_mechanism_on_dt() {
        let d = build_dt(&Scalar::from_int(3)).unwrap();
        for p in [MapParity::Even, MapParity::Odd] {
            let q = DerivationQuery::new(Scalar::ratio(1, 2), p, Mode::Superderivation);
            let s = solve_delta(&d, &q).unwrap();
            assert_eq!(check_unit_mechanism(&d, &s).unwrap(), None);
        }
    }
}
