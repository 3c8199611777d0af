use rand::Rng;
use serde::Serialize;

use super::{delta_system, DerError, MapParity, Mode};
use crate::exactfield::Scalar;
use crate::linalg::{pencil_exceptional_deltas, DeltaPencil, LinalgError};
use crate::superalg::SuperAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalPoint {
    pub delta: Scalar,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub mode: Mode,
    pub parity: MapParity,
    /// Dimension of the solution space at all but finitely many δ.
    pub generic_dim: usize,
    /// δ where the dimension exceeds `generic_dim`, ascending, each confirmed by an exact kernel.
    pub exceptional: Vec<ExceptionalPoint>,
    /// Polynomials in δ with no root in `ℚ(i)` that divide every sampled minor.
    pub unresolved: Vec<String>,
    /// Set when every constraint vanishes, so every δ gives the full map space.
    pub degenerate: bool,
}

/// Values always probed exactly in addition to the pencil analysis.
pub fn candidate_deltas() -> [Scalar; 4] {
    [
        Scalar::from_int(-1),
        Scalar::zero(),
        Scalar::ratio(1, 2),
        Scalar::one(),
    ]
}

/// All δ where the δ-(super)derivation space of `a` jumps above its generic dimension.
pub fn scan_exceptional<R: Rng + ?Sized>(
    a: &SuperAlgebra,
    mode: Mode,
    parity: MapParity,
    rng: &mut R,
) -> Result<ScanReport, DerError> {
    let (u, ma, mb) = delta_system(a, parity, mode)?;
    let pencil = DeltaPencil::new(ma, mb)?;
    let report = match pencil_exceptional_deltas(&pencil, rng) {
        Err(LinalgError::DegenerateInput) => {
            return Ok(ScanReport {
                mode,
                parity,
                generic_dim: u.len(),
                exceptional: Vec::new(),
                unresolved: Vec::new(),
                degenerate: true,
            })
        }
        other => other?,
    };
    let mut exceptional: Vec<ExceptionalPoint> = report
        .exceptional
        .iter()
        .map(|e| ExceptionalPoint {
            delta: e.delta.clone(),
            dim: e.kernel_dim,
        })
        .collect();
    for delta in candidate_deltas() {
        if exceptional.iter().any(|e| e.delta == delta) {
            continue;
        }
        let dim = pencil.kernel_dim_at(&delta);
        if dim > report.generic_kernel_dim {
            exceptional.push(ExceptionalPoint { delta, dim });
        }
    }
    exceptional.sort_by(|x, y| x.delta.lex_cmp(&y.delta));
    Ok(ScanReport {
        mode,
        parity,
        generic_dim: report.generic_kernel_dim,
        exceptional,
        unresolved: report.unresolved.iter().map(ToString::to_string).collect(),
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{solve_delta, DerivationQuery};
    use super::*;
    use crate::jordancons::build_k3;
    use crate::liecons::build_w;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn w2_exceptional_set() {
        let w = build_w(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = scan_exceptional(&w, Mode::Derivation, MapParity::Any, &mut rng).unwrap();
        assert_eq!(r.generic_dim, 0);
        let deltas: Vec<Scalar> = r.exceptional.iter().map(|e| e.delta.clone()).collect();
        assert!(
            deltas
                .iter()
                .all(|d| *d == Scalar::ratio(1, 2) || d.is_one()),
            "{deltas:?}"
        );
        let der = solve_delta(
            &w,
            &DerivationQuery::new(Scalar::one(), MapParity::Any, Mode::Derivation),
        )
        .unwrap();
        for e in &r.exceptional {
            let expect = if e.delta.is_one() { der.dim() } else { 1 };
            assert_eq!(e.dim, expect);
        }
        assert_eq!(r.exceptional.len(), 2);
    }

    #[test]
    fn k3_even_superderivations() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = scan_exceptional(
            &build_k3(),
            Mode::Superderivation,
            MapParity::Even,
            &mut rng,
        )
        .unwrap();
        assert!(r
            .exceptional
            .iter()
            .all(|e| e.delta == Scalar::ratio(1, 2) || e.delta.is_one()));
    }

    #[test]
    fn zero_algebra_is_degenerate() {
        let z = SuperAlgebra::new("zero", vec![0, 1], vec![]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = scan_exceptional(&z, Mode::Derivation, MapParity::Any, &mut rng).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.generic_dim, 4);
    }
}
