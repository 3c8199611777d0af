//! Exact δ-derivations and δ-superderivations of finite-dimensional superalgebras.

pub mod dersolve;
pub mod exactfield;
pub mod jordancons;
pub mod liecons;
pub mod linalg;
pub mod suite;
pub mod superalg;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/delta-derivations.md")]
    mod delta_derivations {}
    #[doc = include_str!("../../../book/src/centroids.md")]
    mod centroids {}
    #[doc = include_str!("../../../book/src/suite.md")]
    mod suite {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
