use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SuiteError;
use crate::exactfield::Scalar;
use crate::jordancons::{
    build_direct_sum, build_dt, build_hermitian, build_jgamma, build_jvf, build_k10,
    build_k10_from, build_k3, build_m2, build_matrix_plus, build_osp, build_p, build_q_plus,
    build_quasi_associative_m2,
};
use crate::liecons::{build_h, build_s, build_sl, build_stilde, build_w, CartanFamily};
use crate::superalg::SuperAlgebra;

/// A buildable algebra, named by construction and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum AlgebraSpec {
    W {
        n: usize,
    },
    S {
        n: usize,
    },
    Stilde {
        n: usize,
    },
    H {
        n: usize,
    },
    Sl {
        m: usize,
        n: usize,
    },
    Mplus {
        m: usize,
        n: usize,
    },
    Qplus {
        n: usize,
    },
    P {
        n: usize,
    },
    Osp {
        n: usize,
        m: usize,
    },
    Jvf {
        n0: usize,
        n1: usize,
    },
    Dt {
        t: Scalar,
    },
    K3,
    K10,
    JGamma {
        n: usize,
    },
    Hermitian {
        n: usize,
    },
    HermitianSum {
        n: usize,
    },
    M2,
    QuasiM2 {
        lambda: Scalar,
    },
    /// `base` with the structure constant `c_{ij}^k` negated.
    Mutated {
        base: Box<AlgebraSpec>,
        i: usize,
        j: usize,
        k: usize,
    },
}

/// Which identity family an algebra is expected to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    LieSuper,
    JordanSuper,
    /// Ordinary commutative Jordan algebra.
    Jordan,
    /// Ordinary flexible noncommutative Jordan algebra.
    NcJordan,
}

impl AlgebraSpec {
    pub fn kind(&self) -> Kind {
        use AlgebraSpec::*;
        match self {
            W { .. } | S { .. } | Stilde { .. } | H { .. } | Sl { .. } => Kind::LieSuper,
            Hermitian { .. } | HermitianSum { .. } => Kind::Jordan,
            M2 | QuasiM2 { .. } => Kind::NcJordan,
            Mutated { base, .. } => base.kind(),
            Jvf { n1: 0, .. } => Kind::Jordan,
            _ => Kind::JordanSuper,
        }
    }

    /// Cartan-type family and rank, when the algebra has a root decomposition in this library.
    pub fn cartan(&self) -> Option<(CartanFamily, usize)> {
        match *self {
            AlgebraSpec::W { n } => Some((CartanFamily::W, n)),
            AlgebraSpec::S { n } => Some((CartanFamily::S, n)),
            AlgebraSpec::Stilde { n } => Some((CartanFamily::Stilde, n)),
            AlgebraSpec::H { n } => Some((CartanFamily::H, n)),
            _ => None,
        }
    }

    pub fn build(&self, k10_table: Option<&Path>) -> Result<SuperAlgebra, SuiteError> {
        use AlgebraSpec::*;
        Ok(match self {
            W { n } => build_w(*n)?,
            S { n } => build_s(*n)?,
            Stilde { n } => build_stilde(*n)?,
            H { n } => build_h(*n)?,
            Sl { m, n } => build_sl(*m, *n)?,
            Mplus { m, n } => build_matrix_plus(*m, *n)?,
            Qplus { n } => build_q_plus(*n)?,
            P { n } => build_p(*n)?,
            Osp { n, m } => build_osp(*n, *m)?,
            Jvf { n0, n1 } => build_jvf(*n0, *n1)?,
            Dt { t } => build_dt(t)?,
            K3 => build_k3(),
            K10 => match k10_table {
                Some(path) => build_k10_from(path)?,
                None => build_k10()?,
            },
            JGamma { n } => build_jgamma(*n)?,
            Hermitian { n } => build_hermitian(*n)?,
            HermitianSum { n } => {
                let h = build_hermitian(*n)?;
                build_direct_sum(&h, &h).with_name(format!("H{n}+H{n}"))
            }
            M2 => build_m2(),
            QuasiM2 { lambda } => build_quasi_associative_m2(lambda),
            Mutated { base, i, j, k } => {
                let a = base.build(k10_table)?;
                let c = a
                    .product(*i, *j)
                    .iter()
                    .find(|(kk, _)| kk == k)
                    .map(|(_, c)| -c)
                    .ok_or_else(|| {
                        SuiteError::Spec(format!("c_({i},{j})^{k} is zero in {}", a.name()))
                    })?;
                a.with_constant(*i, *j, *k, c)?.with_name(self.to_string())
            }
        })
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AlgebraSpec::*;
        match self {
            W { n } => write!(f, "W({n})"),
            S { n } => write!(f, "S({n})"),
            Stilde { n } => write!(f, "Stilde({n})"),
            H { n } => write!(f, "H({n})"),
            Sl { m, n } => write!(f, "sl({m},{n})"),
            Mplus { m, n } => write!(f, "M({m},{n})(+)"),
            Qplus { n } => write!(f, "Q({n})(+)"),
            P { n } => write!(f, "P({n})"),
            Osp { n, m } => write!(f, "osp({n},{m})"),
            Jvf { n0, n1 } => write!(f, "JVf({n0},{n1})"),
            Dt { t } => write!(f, "D({t})"),
            K3 => write!(f, "K3"),
            K10 => write!(f, "K10"),
            JGamma { n } => write!(f, "J(Gamma{n})"),
            Hermitian { n } => write!(f, "H{n}"),
            HermitianSum { n } => write!(f, "H{n}+H{n}"),
            M2 => write!(f, "M2"),
            QuasiM2 { lambda } => write!(f, "M2[{lambda}]"),
            Mutated { base, i, j, k } => write!(f, "{base}~flip({i},{j},{k})"),
        }
    }
}
