//! Lie superalgebras of vector fields on `Λ(n)` and matrix Lie superalgebras.

mod roots;

pub use roots::{
    cartan_and_roots, h_root_display, s_root_display, w_root_display, RootDecomposition,
};

use thiserror::Error;

use crate::exactfield::Scalar;
use crate::linalg::{normalize, Matrix, SparseVec, Subspace};
use crate::superalg::grassmann::{monomial_label, partial, signed, wedge, SubsetBasis};
use crate::superalg::{
    matrix_superalgebra, minus_functor, restrict_to_subspace, subalgebra_closure, AlgebraError,
    SuperAlgebra,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("sl(n,n) is not simple; use different block sizes")]
    EqualBlocks,
    #[error("spanning set is not closed under the bracket")]
    NotClosed,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("{0}")]
    Mismatch(String),
}

/// Which vector-field family an algebra belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanFamily {
    W,
    S,
    Stilde,
    H,
}

/// The basis `ξ_S ∂ᵢ` of `W(n)`: subsets in graded-lex order, then direction.
#[derive(Clone, Debug)]
pub struct WBasis {
    n: usize,
    subsets: SubsetBasis,
}

impl WBasis {
    pub fn new(n: usize) -> Self {
        WBasis {
            n,
            subsets: SubsetBasis::new(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Index of `ξ_S ∂_dir` (`dir` is 1-based).
    pub fn index(&self, mask: u32, dir: usize) -> usize {
        self.subsets.index_of(mask) * self.n + dir - 1
    }

    /// `(mask, dir)` of a basis index.
    pub fn element(&self, idx: usize) -> (u32, usize) {
        (self.subsets.mask(idx / self.n), idx % self.n + 1)
    }

    pub fn parity(&self, idx: usize) -> u8 {
        ((self.element(idx).0.count_ones() + 1) % 2) as u8
    }

    /// `|S| − 1`.
    pub fn degree(&self, idx: usize) -> i32 {
        self.element(idx).0.count_ones() as i32 - 1
    }

    pub fn label(&self, idx: usize) -> String {
        let (mask, dir) = self.element(idx);
        if mask == 0 {
            format!("d{dir}")
        } else {
            format!("{}.d{dir}", monomial_label(mask).replace('e', "x"))
        }
    }

    pub fn subsets(&self) -> &SubsetBasis {
        &self.subsets
    }

    /// A vector field applied to a polynomial; both as sparse coordinate vectors
    /// (vector fields over this basis, polynomials over the subset basis).
    pub fn apply(&self, field: &SparseVec, poly: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (idx, a) in field {
            let (s, dir) = self.element(*idx);
            for (t_idx, b) in poly {
                let t = self.subsets.mask(*t_idx);
                let Some((t1, neg1)) = partial(dir, t) else {
                    continue;
                };
                let Some((u, neg2)) = wedge(s, t1) else {
                    continue;
                };
                terms.push((self.subsets.index_of(u), &(a * b) * &signed(neg1 != neg2)));
            }
        }
        normalize(terms)
    }

    /// The vector field `Σ_j P_j ∂_j` with `P_j = images[j-1]`.
    pub fn from_images(&self, images: &[SparseVec]) -> SparseVec {
        normalize(
            images
                .iter()
                .enumerate()
                .flat_map(|(j, p)| p.iter().map(move |(t, c)| (*t * self.n + j, c.clone()))),
        )
    }

    fn generator(&self, j: usize) -> SparseVec {
        vec![(self.subsets.index_of(1 << (j - 1)), Scalar::one())]
    }

    /// `[D₁, D₂] = D₁D₂ − (−1)^{p₁p₂} D₂D₁` for homogeneous fields of the given parities.
    pub fn bracket(&self, x: &SparseVec, px: u8, y: &SparseVec, py: u8) -> SparseVec {
        let sign = signed(px & py == 0);
        let images: Vec<SparseVec> = (1..=self.n)
            .map(|j| {
                let xj = self.generator(j);
                let xy = self.apply(x, &self.apply(y, &xj));
                let yx = self.apply(y, &self.apply(x, &xj));
                normalize(
                    xy.into_iter()
                        .chain(yx.into_iter().map(|(k, c)| (k, &c * &sign))),
                )
            })
            .collect();
        self.from_images(&images)
    }

    /// `∂f/∂ξᵢ ∂ⱼ + ∂f/∂ξⱼ ∂ᵢ` for a monomial `f`.
    pub fn divergence_free_pair(&self, f: u32, i: usize, j: usize) -> SparseVec {
        let mut terms = Vec::new();
        if let Some((g, neg)) = partial(i, f) {
            terms.push((self.index(g, j), signed(neg)));
        }
        if let Some((g, neg)) = partial(j, f) {
            terms.push((self.index(g, i), signed(neg)));
        }
        normalize(terms)
    }

    /// `D_f = Σᵢ ∂f/∂ξᵢ ∂ᵢ` for a monomial `f`.
    pub fn hamiltonian(&self, f: u32) -> SparseVec {
        normalize(
            (1..=self.n)
                .filter_map(|i| partial(i, f).map(|(g, neg)| (self.index(g, i), signed(neg)))),
        )
    }

    pub fn dense(&self, v: &SparseVec) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.len()];
        for (k, c) in v {
            out[*k] = c.clone();
        }
        out
    }
}

fn check_range(what: &str, n: usize, lo: usize, hi: usize) -> Result<(), LieError> {
    if n < lo || n > hi {
        return Err(LieError::OutOfRange(format!(
            "{what} needs {lo} <= n <= {hi}, got {n}"
        )));
    }
    Ok(())
}

fn w_algebra(n: usize) -> SuperAlgebra {
    let b = WBasis::new(n);
    let d = b.len();
    let mut terms = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let br = b.bracket(
                &vec![(x, Scalar::one())],
                b.parity(x),
                &vec![(y, Scalar::one())],
                b.parity(y),
            );
            terms.extend(br.into_iter().map(|(k, c)| (x, y, k, c)));
        }
    }
    let parity = (0..d).map(|i| b.parity(i)).collect();
    let mut alg =
        SuperAlgebra::new(format!("W({n})"), parity, terms).expect("W(n) bracket respects parity");
    alg.meta.labels = (0..d).map(|i| b.label(i)).collect();
    alg.meta.claims_lie_super = true;
    alg
}

/// `W(n) = der Λ(n)`, dimension `n·2ⁿ`.
pub fn build_w(n: usize) -> Result<SuperAlgebra, LieError> {
    check_range("W(n)", n, 2, 5)?;
    Ok(w_algebra(n))
}

/// A subspace of `W(n)` given by its canonical basis, together with `W(n)` itself.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub w: SuperAlgebra,
    pub basis: WBasis,
    pub space: Subspace,
}

/// The span of `S(n)`, `S̃(n)` or `H(n)` inside `W(n)`; `W` gives the whole space.
pub fn embedding(family: CartanFamily, n: usize) -> Result<Embedded, LieError> {
    let basis = WBasis::new(n);
    let w = w_algebra(n);
    let d = basis.len();
    let full_mask = basis.subsets().full_mask();
    let space = match family {
        CartanFamily::W => Subspace::full(d),
        CartanFamily::S | CartanFamily::Stilde => {
            let mut vectors = Vec::new();
            for &f in basis.subsets().masks() {
                for i in 1..=n {
                    for j in i..=n {
                        let mut v = basis.divergence_free_pair(f, i, j);
                        if family == CartanFamily::Stilde {
                            // Left multiplication of each coefficient by (1 − ξ₁…ξₙ).
                            let extra: Vec<_> = v
                                .iter()
                                .filter(|(k, _)| basis.element(*k).0 == 0)
                                .map(|(k, c)| (basis.index(full_mask, basis.element(*k).1), -c))
                                .collect();
                            v = normalize(v.into_iter().chain(extra));
                        }
                        if !v.is_empty() {
                            vectors.push(basis.dense(&v));
                        }
                    }
                }
            }
            Subspace::from_spanning(d, vectors)
        }
        CartanFamily::H => {
            let htilde: Vec<_> = basis
                .subsets()
                .masks()
                .iter()
                .filter(|&&f| f != 0)
                .map(|&f| basis.hamiltonian(f))
                .collect();
            let mut brackets = Vec::new();
            for (a, x) in htilde.iter().enumerate() {
                for y in &htilde[a..] {
                    let px = w.homogeneous_parity(&basis.dense(x)).expect("homogeneous");
                    let py = w.homogeneous_parity(&basis.dense(y)).expect("homogeneous");
                    let br = basis.bracket(x, px, y, py);
                    if !br.is_empty() {
                        brackets.push(basis.dense(&br));
                    }
                }
            }
            Subspace::from_spanning(d, brackets)
        }
    };
    Ok(Embedded { w, basis, space })
}

/// `H̃(n)`: span of `D_f` over monomials `f ≠ 1`, as a subspace of `W(n)`.
pub fn htilde_space(n: usize) -> Subspace {
    let basis = WBasis::new(n);
    let vectors = basis
        .subsets()
        .masks()
        .iter()
        .filter(|&&f| f != 0)
        .map(|&f| basis.dense(&basis.hamiltonian(f)));
    Subspace::from_spanning(basis.len(), vectors.collect::<Vec<_>>())
}

fn build_family(family: CartanFamily, n: usize, name: String) -> Result<SuperAlgebra, LieError> {
    let emb = embedding(family, n)?;
    let vectors: Vec<_> = emb.space.vectors().map(<[Scalar]>::to_vec).collect();
    if subalgebra_closure(&emb.w, &vectors)? != emb.space {
        return Err(LieError::NotClosed);
    }
    let mut alg = restrict_to_subspace(&emb.w, &emb.space, name)?;
    alg.meta.labels = emb
        .space
        .pivots()
        .iter()
        .map(|&p| format!("<{}>", emb.basis.label(p)))
        .collect();
    alg.meta.claims_lie_super = true;
    Ok(alg)
}

/// `S(n)`, the divergence-free vector fields; dimension `(n−1)2ⁿ + 1`.
pub fn build_s(n: usize) -> Result<SuperAlgebra, LieError> {
    check_range("S(n)", n, 3, 4)?;
    build_family(CartanFamily::S, n, format!("S({n})"))
}

/// `S̃(n)` for even `n`, from the spanning set with the `(1 − ξ₁…ξₙ)` factor.
pub fn build_stilde(n: usize) -> Result<SuperAlgebra, LieError> {
    if n != 4 {
        return Err(LieError::OutOfRange(format!(
            "Stilde(n) is supported for n = 4, got {n}"
        )));
    }
    build_family(CartanFamily::Stilde, n, format!("Stilde({n})"))
}

/// `H(n) = [H̃(n), H̃(n)]`.
pub fn build_h(n: usize) -> Result<SuperAlgebra, LieError> {
    check_range("H(n)", n, 4, 5)?;
    build_family(CartanFamily::H, n, format!("H({n})"))
}

/// `sl(m,n)`: supertraceless matrices under the supercommutator.
pub fn build_sl(m: usize, n: usize) -> Result<SuperAlgebra, LieError> {
    if m == n {
        return Err(LieError::EqualBlocks);
    }
    if m + n > 4 || m == 0 || n == 0 {
        return Err(LieError::OutOfRange(format!(
            "sl(m,n) needs m, n >= 1 and m + n <= 4, got ({m},{n})"
        )));
    }
    let mat = minus_functor(&matrix_superalgebra(m, n));
    let size = m + n;
    let str_row = Matrix::from_fn(1, size * size, |_, k| {
        let (a, b) = (k / size, k % size);
        match (a == b, a < m) {
            (false, _) => Scalar::zero(),
            (true, true) => Scalar::one(),
            (true, false) => Scalar::from_int(-1),
        }
    });
    let space = str_row.kernel();
    let mut alg = restrict_to_subspace(&mat, &space, format!("sl({m},{n})"))?;
    alg.meta.claims_lie_super = true;
    Ok(alg)
}

/// The supertrace of a matrix in `M_{m,n}` coordinates.
pub fn supertrace(m: usize, n: usize, x: &[Scalar]) -> Scalar {
    let size = m + n;
    (0..size)
        .map(|a| {
            let v = &x[a * size + a];
            if a < m {
                v.clone()
            } else {
                -v
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{check_super_variety, Variety};

    #[test]
    fn w2_basics() {
        let w = build_w(2).unwrap();
        assert_eq!(w.dim(), 8);
        let b = WBasis::new(2);
        let x1d1 = b.index(0b01, 1);
        let d1 = b.index(0, 1);
        // [ξ₁∂₁, ∂₁] = −∂₁
        assert_eq!(w.product(x1d1, d1), &vec![(d1, Scalar::from_int(-1))]);
        assert!(check_super_variety(&w, Variety::LieSuper).unwrap().passed());
    }

    #[test]
    fn w_grading() {
        for n in 2..=3 {
            let w = build_w(n).unwrap();
            let b = WBasis::new(n);
            for (i, j, k, _) in w.entries() {
                assert_eq!(b.degree(k), b.degree(i) + b.degree(j));
            }
            for k in -1..n as i32 {
                let count = (0..w.dim()).filter(|&i| b.degree(i) == k).count();
                assert_eq!(count, n * binomial(n, (k + 1) as usize));
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn s3_dimension_and_embedding() {
        let s = build_s(3).unwrap();
        assert_eq!(s.dim(), 17);
        let emb = embedding(CartanFamily::S, 3).unwrap();
        assert!(emb.space.is_subspace_of(&Subspace::full(24)));
    }

    #[test]
    fn sl21() {
        let sl = build_sl(2, 1).unwrap();
        assert_eq!(sl.dim(), 8);
        assert!(check_super_variety(&sl, Variety::LieSuper)
            .unwrap()
            .passed());
        assert_eq!(build_sl(1, 1), Err(LieError::EqualBlocks));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(build_w(1), Err(LieError::OutOfRange(_))));
        assert!(matches!(build_s(5), Err(LieError::OutOfRange(_))));
    }

    #[test]
    fn hamiltonian_bracket_matches_grassmann_bracket() {
        // [D_f, D_g] = D_{{f,g}} with {f,g} = (−1)^{p(f)} Σ ∂f/∂ξᵢ ∂g/∂ξᵢ, for f = ξ₁ξ₂, g = ξ₂ξ₃.
        let b = WBasis::new(3);
        let br = b.bracket(&b.hamiltonian(0b011), 0, &b.hamiltonian(0b110), 0);
        // ∂f/∂ξ₂ = −ξ₁ and ∂g/∂ξ₂ = ξ₃, so {f,g} = −ξ₁ξ₃.
        let expected: SparseVec = b
            .hamiltonian(0b101)
            .into_iter()
            .map(|(k, c)| (k, -c))
            .collect();
        assert_eq!(br, expected);
    }

    #[test]
    fn stilde_mixes_degrees() {
        let emb = embedding(CartanFamily::Stilde, 4).unwrap();
        let mixed = emb.space.vectors().any(|v| {
            let degrees: std::collections::BTreeSet<i32> = (0..v.len())
                .filter(|&k| !v[k].is_zero())
                .map(|k| emb.basis.degree(k))
                .collect();
            degrees.len() > 1
        });
        assert!(mixed);
        let s = embedding(CartanFamily::S, 4).unwrap();
        assert!(s.space.vectors().all(|v| {
            let degrees: std::collections::BTreeSet<i32> = (0..v.len())
                .filter(|&k| !v[k].is_zero())
                .map(|k| s.basis.degree(k))
                .collect();
            degrees.len() == 1
        }));
    }
}
