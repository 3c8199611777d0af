//! Polynomial identities checked through their full multilinearizations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{grassmann_envelope, AlgebraError, SuperAlgebra};
use crate::exactfield::Scalar;
use crate::linalg::{normalize, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `xy + yx = 0`
    Anticommutativity,
    /// `(xy)z + (yz)x + (zx)y = 0`
    Jacobi,
    /// `xy = yx`
    Commutativity,
    /// `(x²y)x = x²(yx)`
    Jordan,
    /// `(xy)x = x(yx)`
    Flexibility,
    /// Flexibility together with the Jordan identity.
    NcJordan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variety {
    LieSuper,
    JordanSuper,
    FlexibleSuper,
    NcJordanSuper,
}

impl Variety {
    /// Defining identities of the ordinary variety.
    pub fn identities(self) -> &'static [Identity] {
        match self {
            Variety::LieSuper => &[Identity::Anticommutativity, Identity::Jacobi],
            Variety::JordanSuper => &[Identity::Commutativity, Identity::Jordan],
            Variety::FlexibleSuper => &[Identity::Flexibility],
            Variety::NcJordanSuper => &[Identity::Flexibility, Identity::Jordan],
        }
    }

    /// Number of distinct arguments in the defining identities.
    pub fn envelope_rank(self) -> usize {
        match self {
            Variety::LieSuper | Variety::FlexibleSuper => 3,
            Variety::JordanSuper | Variety::NcJordanSuper => 4,
        }
    }
}

/// A basis tuple on which a linearized identity does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub identity: Identity,
    pub args: Vec<usize>,
    pub labels: Vec<String>,
    pub residual: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Pass,
    Fail(Witness),
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityCheck::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            IdentityCheck::Pass => None,
            IdentityCheck::Fail(w) => Some(w),
        }
    }
}

/// Checks the full linearization of `identity` on every basis tuple of an ordinary algebra.
pub fn check_identity_multilinear(
    a: &SuperAlgebra,
    identity: Identity,
) -> Result<IdentityCheck, AlgebraError> {
    if let Some(i) = a.parity().iter().position(|&p| p == 1) {
        return Err(AlgebraError::GradedInput(i));
    }
    Ok(run(a, identity, None))
}

/// Checks membership in a variety of superalgebras via the Grassmann envelope.
pub fn check_super_variety(
    a: &SuperAlgebra,
    variety: Variety,
) -> Result<IdentityCheck, AlgebraError> {
    let env = grassmann_envelope(a, variety.envelope_rank())?;
    let supports: Vec<u32> = env.origin.iter().map(|&(s, _)| s).collect();
    for &identity in variety.identities() {
        let result = run(&env.algebra, identity, Some(&supports));
        if !result.passed() {
            return Ok(result);
        }
    }
    Ok(IdentityCheck::Pass)
}

fn run(a: &SuperAlgebra, identity: Identity, supports: Option<&[u32]>) -> IdentityCheck {
    let parts: &[Identity] = match identity {
        Identity::NcJordan => &[Identity::Flexibility, Identity::Jordan],
        _ => std::slice::from_ref(&identity),
    };
    for &part in parts {
        let ctx = Ctx { a, supports };
        let found = (0..a.dim())
            .into_par_iter()
            .find_map_first(|x| ctx.search(part, x));
        if let Some((args, residual)) = found {
            return IdentityCheck::Fail(Witness {
                identity: part,
                labels: args.iter().map(|&i| a.label(i)).collect(),
                args,
                residual,
            });
        }
    }
    IdentityCheck::Pass
}

struct Ctx<'a> {
    a: &'a SuperAlgebra,
    supports: Option<&'a [u32]>,
}

type Found = Option<(Vec<usize>, SparseVec)>;

impl Ctx<'_> {
    /// Products of basis elements with overlapping Grassmann supports vanish,
    /// so such tuples contribute nothing and are skipped.
    fn disjoint(&self, args: &[usize]) -> bool {
        let Some(s) = self.supports else { return true };
        let mut seen = 0u32;
        for &i in args {
            if seen & s[i] != 0 {
                return false;
            }
            seen |= s[i];
        }
        true
    }

    fn e(&self, i: usize) -> SparseVec {
        vec![(i, Scalar::one())]
    }

    fn m(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.a.mul_sparse(x, y)
    }

    fn p(&self, i: usize, j: usize) -> &SparseVec {
        self.a.product(i, j)
    }

    fn search(&self, identity: Identity, x: usize) -> Found {
        let d = self.a.dim();
        let check = |args: Vec<usize>, terms: Vec<(SparseVec, i64)>| -> Found {
            let r = combine(terms);
            (!r.is_empty()).then_some((args, r))
        };
        match identity {
            Identity::Anticommutativity | Identity::Commutativity => {
                let sign = if identity == Identity::Commutativity {
                    -1
                } else {
                    1
                };
                for y in x..d {
                    if !self.disjoint(&[x, y]) {
                        continue;
                    }
                    let f = check(
                        vec![x, y],
                        vec![(self.p(x, y).clone(), 1), (self.p(y, x).clone(), sign)],
                    );
                    if f.is_some() {
                        return f;
                    }
                }
                None
            }
            Identity::Jacobi => {
                // Cyclic in (x, y, z): x may be taken minimal.
                for y in x..d {
                    if !self.disjoint(&[x, y]) {
                        continue;
                    }
                    for z in x..d {
                        if !self.disjoint(&[x, y, z]) {
                            continue;
                        }
                        let terms = vec![
                            (self.m(self.p(x, y), &self.e(z)), 1),
                            (self.m(self.p(y, z), &self.e(x)), 1),
                            (self.m(self.p(z, x), &self.e(y)), 1),
                        ];
                        let f = check(vec![x, y, z], terms);
                        if f.is_some() {
                            return f;
                        }
                    }
                }
                None
            }
            Identity::Flexibility => {
                // (xy)z + (zy)x − x(yz) − z(yx), symmetric in x and z.
                for z in x..d {
                    for y in 0..d {
                        if !self.disjoint(&[x, y, z]) {
                            continue;
                        }
                        let terms = vec![
                            (self.m(self.p(x, y), &self.e(z)), 1),
                            (self.m(self.p(z, y), &self.e(x)), 1),
                            (self.m(&self.e(x), self.p(y, z)), -1),
                            (self.m(&self.e(z), self.p(y, x)), -1),
                        ];
                        let f = check(vec![x, y, z], terms);
                        if f.is_some() {
                            return f;
                        }
                    }
                }
                None
            }
            Identity::Jordan => {
                // Σ_{σ ∈ S₃} ((x_σ1 x_σ2) y) x_σ3 − (x_σ1 x_σ2)(y x_σ3), symmetric in x1, x2, x3.
                for x2 in x..d {
                    if !self.disjoint(&[x, x2]) {
                        continue;
                    }
                    for x3 in x2..d {
                        if !self.disjoint(&[x, x2, x3]) {
                            continue;
                        }
                        let xs = [x, x2, x3];
                        for y in 0..d {
                            if !self.disjoint(&[x, x2, x3, y]) {
                                continue;
                            }
                            let ey = self.e(y);
                            let mut terms = Vec::with_capacity(12);
                            for (a, b, c) in PERMS {
                                let ab = self.p(xs[a], xs[b]);
                                let ec = self.e(xs[c]);
                                terms.push((self.m(&self.m(ab, &ey), &ec), 1));
                                terms.push((self.m(ab, self.p(y, xs[c])), -1));
                            }
                            let f = check(vec![x, x2, x3, y], terms);
                            if f.is_some() {
                                return f;
                            }
                        }
                    }
                }
                None
            }
            Identity::NcJordan => unreachable!("split before search"),
        }
    }
}

const PERMS: [(usize, usize, usize); 6] = [
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
];

fn combine(terms: Vec<(SparseVec, i64)>) -> SparseVec {
    normalize(terms.into_iter().flat_map(|(v, s)| {
        let s = Scalar::from_int(s);
        v.into_iter().map(move |(k, c)| (k, &c * &s))
    }))
}

#[cfg(test)]
mod tests {
    use super::super::{grassmann, minus_functor, plus_functor};
    use super::*;

    fn m2() -> SuperAlgebra {
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
    fn matrix_identities() {
        let m = m2();
        assert!(
            check_identity_multilinear(&plus_functor(&m), Identity::Jordan)
                .unwrap()
                .passed()
        );
        assert!(check_identity_multilinear(&m, Identity::Flexibility)
            .unwrap()
            .passed());
        let c = check_identity_multilinear(&m, Identity::Commutativity).unwrap();
        assert_eq!(c.witness().unwrap().args, vec![0, 1]);
        let lie = minus_functor(&m);
        assert!(check_identity_multilinear(&lie, Identity::Jacobi)
            .unwrap()
            .passed());
        assert!(
            check_identity_multilinear(&lie, Identity::Anticommutativity)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn graded_input_rejected() {
        let l1 = grassmann(1).unwrap();
        assert_eq!(
            check_identity_multilinear(&l1, Identity::Commutativity),
            Err(AlgebraError::GradedInput(1))
        );
    }

    #[test]
    fn grassmann_is_jordan_super() {
        // Supercommutative associative algebras are Jordan superalgebras.
        let l2 = grassmann(2).unwrap();
        assert!(check_super_variety(&l2, Variety::JordanSuper)
            .unwrap()
            .passed());
        assert!(check_super_variety(&minus_functor(&l2), Variety::LieSuper)
            .unwrap()
            .passed());
    }

    #[test]
    fn supercommutator_of_grassmann_fails_plain_commutator_sign() {
        // With ordinary (unsigned) commutators Λ(2) is not Lie-super: xy − yx on odd pairs.
        let l2 = grassmann(2).unwrap();
        let d = l2.dim();
        let mut terms = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in l2.product(i, j) {
                    terms.push((i, j, *k, c.clone()));
                }
                for (k, c) in l2.product(j, i) {
                    terms.push((i, j, *k, -c));
                }
            }
        }
        let wrong = SuperAlgebra::new("wrong", l2.parity().to_vec(), terms).unwrap();
        let check = check_super_variety(&wrong, Variety::LieSuper).unwrap();
        assert!(!check.passed());
    }
}
