use serde::{Deserialize, Serialize};

use super::{
    centroid_for, solve_delta, solve_zero_derivations, DerError, DerivationQuery, MapSpace, Mode,
};
use crate::exactfield::Scalar;
use crate::superalg::SuperAlgebra;

/// Why a map in a δ-derivation space is or is not trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Zero,
    IsDerivation,
    IsZeroDerivation,
    InCentroid,
    InSupercentroid,
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityVerdict {
    pub delta: Scalar,
    pub dim: usize,
    /// Dimension of the span of trivial maps at this δ.
    pub trivial_dim: usize,
    /// One entry per basis map of the classified space.
    pub directions: Vec<Direction>,
    pub verdict: Direction,
}

impl TrivialityVerdict {
    pub fn is_nontrivial(&self) -> bool {
        self.verdict == Direction::Nontrivial
    }
}

/// Compare a δ-derivation space against the span of trivial maps at δ:
/// 0-derivations, plus derivations at δ = 1, plus the (super)centroid at δ = ½.
pub fn classify(
    a: &SuperAlgebra,
    space: &MapSpace,
    q: &DerivationQuery,
) -> Result<TrivialityVerdict, DerError> {
    let zero = solve_zero_derivations(a, q.parity);
    let half = Scalar::ratio(1, 2);
    let (family, kind) = if q.delta.is_one() {
        let der = solve_delta(a, &DerivationQuery::new(Scalar::one(), q.parity, q.mode))?;
        (Some(der), Direction::IsDerivation)
    } else if q.delta == half {
        let kind = match q.mode {
            Mode::Derivation => Direction::InCentroid,
            Mode::Superderivation => Direction::InSupercentroid,
        };
        (Some(centroid_for(a, q.mode, q.parity)?), kind)
    } else {
        (None, Direction::IsZeroDerivation)
    };
    let trivial = match &family {
        Some(f) => f.space().sum(zero.space()),
        None => zero.space().clone(),
    };
    let directions: Vec<Direction> = space
        .space()
        .vectors()
        .map(|v| {
            if zero.space().contains(v) {
                Direction::IsZeroDerivation
            } else if family.as_ref().is_some_and(|f| f.space().contains(v)) || trivial.contains(v)
            {
                kind
            } else {
                Direction::Nontrivial
            }
        })
        .collect();
    let verdict = if space.dim() == 0 {
        Direction::Zero
    } else if !space.space().is_subspace_of(&trivial) {
        Direction::Nontrivial
    } else if space.space().is_subspace_of(zero.space()) {
        Direction::IsZeroDerivation
    } else {
        kind
    };
    Ok(TrivialityVerdict {
        delta: q.delta.clone(),
        dim: space.dim(),
        trivial_dim: trivial.dim(),
        directions,
        verdict,
    })
}
