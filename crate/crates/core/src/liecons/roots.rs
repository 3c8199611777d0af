use std::collections::BTreeSet;

use super::{embedding, CartanFamily, Embedded, LieError};
use crate::exactfield::Scalar;
use crate::linalg::{half_gaussian_candidates, simultaneous_eigenspaces, WeightSpace};
use crate::superalg::{restrict_to_subspace, Element, SuperAlgebra};

/// Joint eigenspaces of a Cartan subalgebra acting by `ad`.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub family: CartanFamily,
    pub n: usize,
    /// Cartan elements in the coordinates of the algebra.
    pub cartan: Vec<Element>,
    /// Eigenvalue tuples of the Cartan elements with their joint eigenspaces.
    pub weights: Vec<WeightSpace>,
}

impl RootDecomposition {
    /// Weights in ε-coordinates. For `S`/`S̃` the representative with last coordinate 0 is used.
    pub fn epsilon_weights(&self) -> Vec<(Vec<Scalar>, usize)> {
        self.weights
            .iter()
            .map(|ws| {
                let eps = match self.family {
                    CartanFamily::S | CartanFamily::Stilde => {
                        // Eigenvalues of h_{k,k+1} are w_k − w_{k+1}.
                        let mut w = vec![Scalar::zero(); self.n];
                        for k in (0..self.n - 1).rev() {
                            w[k] = &ws.weight[k] + &w[k + 1];
                        }
                        w
                    }
                    _ => ws.weight.clone(),
                };
                (eps, ws.space.dim())
            })
            .collect()
    }

    pub fn zero_weight_dim(&self) -> usize {
        self.weights
            .iter()
            .filter(|ws| ws.weight.iter().all(Scalar::is_zero))
            .map(|ws| ws.space.dim())
            .sum()
    }

    pub fn total_dim(&self) -> usize {
        self.weights.iter().map(|ws| ws.space.dim()).sum()
    }

    /// Nonzero ε-weights that are not in the root display for this family.
    pub fn weights_outside_display(&self) -> Vec<Vec<Scalar>> {
        let display = match self.family {
            CartanFamily::W => w_root_display(self.n),
            CartanFamily::S | CartanFamily::Stilde => s_root_display(self.n),
            CartanFamily::H => h_root_display(self.n),
        };
        self.epsilon_weights()
            .into_iter()
            .map(|(w, _)| w)
            .filter(|w| !w.iter().all(Scalar::is_zero))
            .filter(|w| as_ints(w).is_none_or(|v| !display.contains(&v)))
            .collect()
    }
}

fn as_ints(w: &[Scalar]) -> Option<Vec<i64>> {
    w.iter()
        .map(|x| {
            if !x.is_real() || !x.re().is_integer() {
                return None;
            }
            i64::try_from(x.re().to_integer()).ok()
        })
        .collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|b| m >> b & 1 == 1).collect())
}

fn eps_sum(n: usize, plus: &[usize], minus: &[usize]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &i in plus {
        v[i] += 1;
    }
    for &j in minus {
        v[j] -= 1;
    }
    v
}

/// `{ε_{i₁}+…+ε_{i_k}, ε_{i₁}+…+ε_{i_k} − ε_j : 0 ≤ k ≤ n−1, j ∉ {i_r}}`.
pub fn w_root_display(n: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for s in subsets(n).filter(|s| s.len() < n) {
        out.insert(eps_sum(n, &s, &[]));
        for j in (0..n).filter(|j| !s.contains(j)) {
            out.insert(eps_sum(n, &s, &[j]));
        }
    }
    out
}

/// The `S(n)` display modulo `ε₁+…+εₙ = 0`, each element normalized to last coordinate 0.
pub fn s_root_display(n: usize) -> BTreeSet<Vec<i64>> {
    let normalize = |v: Vec<i64>| -> Vec<i64> {
        let last = v[n - 1];
        v.into_iter().map(|x| x - last).collect()
    };
    let mut out = BTreeSet::new();
    for s in subsets(n) {
        if (1..=n - 2).contains(&s.len()) {
            out.insert(normalize(eps_sum(n, &s, &[])));
        }
        if s.len() < n {
            for j in (0..n).filter(|j| !s.contains(j)) {
                out.insert(normalize(eps_sum(n, &s, &[j])));
            }
        }
    }
    out
}

/// `{ε_{i₁}+…+ε_{i_t} − ε_{j₁}−…−ε_{j_s}}` over disjoint index sets in `{1..l}`, `l = ⌊n/2⌋`.
pub fn h_root_display(n: usize) -> BTreeSet<Vec<i64>> {
    let l = n / 2;
    let mut out = BTreeSet::new();
    for i in subsets(l) {
        for j in subsets(l).filter(|j| j.iter().all(|x| !i.contains(x))) {
            out.insert(eps_sum(l, &i, &j));
        }
    }
    out
}

fn cartan_in_w(family: CartanFamily, emb: &Embedded) -> Vec<Vec<Scalar>> {
    let b = &emb.basis;
    let n = b.n();
    let h = |i: usize| b.index(1 << (i - 1), i);
    match family {
        CartanFamily::W => (1..=n)
            .map(|i| b.dense(&vec![(h(i), Scalar::one())]))
            .collect(),
        CartanFamily::S | CartanFamily::Stilde => (1..n)
            .map(|i| {
                let mut v = b.dense(&vec![]);
                v[h(i)] = Scalar::one();
                v[h(i + 1)] = Scalar::from_int(-1);
                v
            })
            .collect(),
        CartanFamily::H => {
            let l = n / 2;
            (1..=l)
                .map(|i| {
                    let f = (1 << (i - 1)) | (1 << (i + l - 1));
                    b.hamiltonian(f)
                        .into_iter()
                        .map(|(k, c)| (k, &c * &Scalar::i()))
                        .collect()
                })
                .map(|v| b.dense(&v))
                .collect()
        }
    }
}

/// Root decomposition of an algebra built by this module for the given family and rank.
pub fn cartan_and_roots(
    a: &SuperAlgebra,
    family: CartanFamily,
    n: usize,
) -> Result<RootDecomposition, LieError> {
    let emb = embedding(family, n)?;
    let rebuilt = restrict_to_subspace(&emb.w, &emb.space, a.name())?;
    if rebuilt.dim() != a.dim() || !rebuilt.entries().eq(a.entries()) {
        return Err(LieError::Mismatch(format!(
            "{} does not match the canonical {family:?}({n}) construction",
            a.name()
        )));
    }
    let cartan: Vec<Element> = cartan_in_w(family, &emb)
        .iter()
        .map(|h| {
            emb.space
                .coordinates(h)
                .ok_or_else(|| LieError::Mismatch("Cartan element outside the subalgebra".into()))
        })
        .collect::<Result<_, _>>()?;
    let ops = cartan
        .iter()
        .map(|h| a.ad_operator(h))
        .collect::<Result<Vec<_>, _>>()?;
    let candidates = half_gaussian_candidates(n as i64, family == CartanFamily::H);
    let weights = simultaneous_eigenspaces(a.dim(), &ops, &candidates)?;
    Ok(RootDecomposition {
        family,
        n,
        cartan,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_s, build_w, WBasis};
    use super::*;
    use std::collections::BTreeMap;

    /// Weight of `ξ_S ∂_j` read off directly: `Σ_{s∈S} ε_s − ε_j`.
    fn monomial_weights(n: usize) -> BTreeMap<Vec<i64>, usize> {
        let b = WBasis::new(n);
        let mut out = BTreeMap::new();
        for idx in 0..b.len() {
            let (mask, dir) = b.element(idx);
            let mut w = vec![0i64; n];
            for (s, ws) in w.iter_mut().enumerate() {
                if mask >> s & 1 == 1 {
                    *ws += 1;
                }
            }
            w[dir - 1] -= 1;
            *out.entry(w).or_default() += 1;
        }
        out
    }

    #[test]
    fn w2_roots_match_monomial_weights() {
        let w = build_w(2).unwrap();
        let rd = cartan_and_roots(&w, CartanFamily::W, 2).unwrap();
        let computed: BTreeMap<Vec<i64>, usize> = rd
            .epsilon_weights()
            .into_iter()
            .map(|(w, d)| (as_ints(&w).unwrap(), d))
            .collect();
        assert_eq!(computed, monomial_weights(2));
        assert_eq!(rd.zero_weight_dim(), 2);
        assert_eq!(rd.total_dim(), 8);
        assert!(rd.weights_outside_display().is_empty());
        let nonzero: BTreeSet<Vec<i64>> = computed
            .keys()
            .filter(|w| w.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        let expected: BTreeSet<Vec<i64>> = [[-1, 0], [0, -1], [1, -1], [-1, 1], [1, 0], [0, 1]]
            .iter()
            .map(|v| v.to_vec())
            .collect();
        assert_eq!(nonzero, expected);
    }

    #[test]
    fn s3_roots_lie_in_display() {
        let s = build_s(3).unwrap();
        let rd = cartan_and_roots(&s, CartanFamily::S, 3).unwrap();
        assert_eq!(rd.total_dim(), 17);
        assert!(rd.weights_outside_display().is_empty());
    }

    #[test]
    fn mismatched_algebra_rejected() {
        let w = build_w(2).unwrap();
        assert!(matches!(
            cartan_and_roots(&w, CartanFamily::W, 3),
            Err(LieError::Mismatch(_))
        ));
    }
}
