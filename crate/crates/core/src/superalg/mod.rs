//! Superalgebras given by structure constants.

mod functors;
pub mod grassmann;
mod identity;
mod matrix;
mod schema;
mod structure;

pub use functors::{
    direct_sum, grassmann_envelope, minus_functor, plus_functor, restrict_to_subspace, Envelope,
};
pub use grassmann::{grassmann, SubsetBasis};
pub use identity::{
    check_identity_multilinear, check_super_variety, Identity, IdentityCheck, Variety, Witness,
};
pub use matrix::{matrix_superalgebra, matrix_unit_index};
pub use schema::{from_json, load_algebra, save_algebra, to_json};
pub use structure::{
    center, ideal_closure, peirce_decompose, products_span, simplicity_probe, subalgebra_closure,
    Peirce, ProbeVerdict,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::Scalar;
use crate::linalg::{normalize, Echelon, Matrix, SparseVec};

/// Coordinates of an element in the basis of its algebra.
pub type Element = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constant ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("grading violated by structure constant ({i}, {j}, {k})")]
    Grading { i: usize, j: usize, k: usize },
    #[error("parity entry {index} is {value}, expected 0 or 1")]
    BadParity { index: usize, value: u8 },
    #[error("the given unit does not act as identity on basis element {0}")]
    NotUnit(usize),
    #[error("{0} is too large")]
    TooLarge(String),
    #[error("identity checks need an ordinary algebra; basis element {0} is odd")]
    GradedInput(usize),
    #[error("zero vector")]
    ZeroVector,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("right multiplication does not split over eigenvalues 0, 1/2, 1")]
    NotPeirce,
    #[error("basis vector {0} of the subspace is not homogeneous")]
    Inhomogeneous(usize),
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Declared properties of an algebra, carried through serialization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default)]
    pub claims_lie_super: bool,
    #[serde(default)]
    pub claims_jordan_super: bool,
    #[serde(default)]
    pub claims_flexible: bool,
    #[serde(default)]
    pub claims_nc_jordan: bool,
    #[serde(default)]
    pub degree: Option<usize>,
    /// Idempotents registered for Peirce decomposition checks.
    #[serde(default)]
    pub idempotents: Vec<Element>,
    /// Human-readable basis names; empty means `e0, e1, ...`.
    #[serde(default)]
    pub labels: Vec<String>,
}

/// A finite-dimensional superalgebra `A = A₀ ⊕ A₁` with a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    name: String,
    parity: Vec<u8>,
    /// `table[i * dim + j]` lists the nonzero `(k, c)` with `eᵢeⱼ = Σ c·e_k`, sorted by `k`.
    table: Vec<SparseVec>,
    unit: Option<Element>,
    pub meta: Meta,
}

impl SuperAlgebra {
    /// Builds an algebra from `(i, j, k, c)` terms meaning `eᵢeⱼ ∋ c·e_k`.
    /// Repeated terms are summed. Indices and grading are validated.
    pub fn new(
        name: impl Into<String>,
        parity: Vec<u8>,
        terms: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let dim = parity.len();
        if let Some((index, &value)) = parity.iter().enumerate().find(|(_, &p)| p > 1) {
            return Err(AlgebraError::BadParity { index, value });
        }
        let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in terms {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
            }
            raw[i * dim + j].push((k, c));
        }
        let table: Vec<SparseVec> = raw.into_iter().map(normalize).collect();
        let alg = SuperAlgebra {
            name: name.into(),
            parity,
            table,
            unit: None,
            meta: Meta::default(),
        };
        alg.check_grading()?;
        Ok(alg)
    }

    fn check_grading(&self) -> Result<(), AlgebraError> {
        for (i, j, k, _) in self.entries() {
            if self.parity[k] != self.parity[i] ^ self.parity[j] {
                return Err(AlgebraError::Grading { i, j, k });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.meta.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn parity_of(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 0).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|&p| p == 0)
    }

    pub fn label(&self, i: usize) -> String {
        self.meta
            .labels
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("e{i}"))
    }

    /// `eᵢ·eⱼ` as sparse coordinates.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// All nonzero structure constants `(i, j, k, c)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let d = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, row)| row.iter().map(move |(k, c)| (ij / d, ij % d, *k, c)))
    }

    pub fn nnz(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    /// Attaches a unit after checking `u·eⱼ = eⱼ·u = eⱼ` for every basis element.
    pub fn with_unit(mut self, unit: Element) -> Result<Self, AlgebraError> {
        self.check_dim(&unit)?;
        let u = crate::linalg::sparsify(&unit);
        for j in 0..self.dim() {
            let ej = vec![(j, Scalar::one())];
            if self.mul_sparse(&u, &ej) != ej || self.mul_sparse(&ej, &u) != ej {
                return Err(AlgebraError::NotUnit(j));
            }
        }
        self.unit = Some(unit);
        Ok(self)
    }

    /// Solves for a two-sided unit and attaches it if one exists.
    pub fn with_detected_unit(self) -> Self {
        match self.solve_unit() {
            Some(u) => self.with_unit(u).expect("solved unit verifies"),
            None => self,
        }
    }

    /// The unique two-sided unit, found by solving `u·eⱼ = eⱼ·u = eⱼ` as a linear system.
    pub fn solve_unit(&self) -> Option<Element> {
        let d = self.dim();
        // Unknowns u_0..u_{d-1} plus a homogenizing coordinate at index d.
        let mut ech = Echelon::new(d + 1);
        for j in 0..d {
            for side in 0..2 {
                let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
                for i in 0..d {
                    let prod = if side == 0 {
                        self.product(i, j)
                    } else {
                        self.product(j, i)
                    };
                    for (k, c) in prod {
                        rows[*k].push((i, c.clone()));
                    }
                }
                rows[j].push((d, Scalar::from_int(-1)));
                for r in rows {
                    ech.insert(normalize(r));
                }
            }
        }
        let ker = ech.kernel();
        let v = ker.vectors().find(|v| !v[d].is_zero())?;
        let inv = v[d].inv().expect("nonzero");
        Some(v[..d].iter().map(|x| x * &inv).collect())
    }

    pub fn set_unit_unchecked(&mut self, unit: Option<Element>) {
        self.unit = unit;
    }

    pub fn zero_element(&self) -> Element {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero_element();
        v[i] = Scalar::one();
        v
    }

    fn check_dim(&self, x: &[Scalar]) -> Result<(), AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let prod = self.mul_sparse(&crate::linalg::sparsify(x), &crate::linalg::sparsify(y));
        let mut out = self.zero_element();
        for (k, c) in prod {
            out[k] = c;
        }
        Ok(out)
    }

    /// Product of sparse coordinate vectors.
    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.product(*i, *j) {
                    terms.push((*k, &ab * c));
                }
            }
        }
        normalize(terms)
    }

    /// Matrix of `y ↦ x·y`; column `j` holds the coordinates of `x·eⱼ`.
    pub fn left_mult_operator(&self, x: &[Scalar]) -> Result<Matrix, AlgebraError> {
        self.check_dim(x)?;
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..d {
                for (k, c) in self.product(i, j) {
                    m[(*k, j)] += &(a * c);
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult_operator(&self, x: &[Scalar]) -> Result<Matrix, AlgebraError> {
        self.check_dim(x)?;
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..d {
                for (k, c) in self.product(j, i) {
                    m[(*k, j)] += &(a * c);
                }
            }
        }
        Ok(m)
    }

    /// `ad_x : y ↦ xy` for algebras whose product is a bracket.
    pub fn ad_operator(&self, x: &[Scalar]) -> Result<Matrix, AlgebraError> {
        self.left_mult_operator(x)
    }

    /// `eᵢeⱼ = (−1)^{p(i)p(j)} eⱼeᵢ` on all basis pairs.
    pub fn is_supercommutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (i..d).all(|j| {
                let sign = self.parity[i] & self.parity[j] == 1;
                let ji = self.product(j, i);
                let expected: SparseVec = if sign {
                    ji.iter().map(|(k, c)| (*k, -c)).collect()
                } else {
                    ji.clone()
                };
                *self.product(i, j) == expected
            })
        })
    }

    /// `(xy)z = x(yz)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let ek = vec![(k, Scalar::one())];
                    let ei = vec![(i, Scalar::one())];
                    let left = self.mul_sparse(self.product(i, j), &ek);
                    let right = self.mul_sparse(&ei, self.product(j, k));
                    left == right
                })
            })
        })
    }

    /// Whether `v` is homogeneous; returns its parity (zero vectors count as even).
    pub fn homogeneous_parity(&self, v: &[Scalar]) -> Option<u8> {
        let mut seen = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.parity[i]),
                Some(p) if p != self.parity[i] => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// Replaces the structure constant `c_{ij}^k` (used for mutation testing).
    pub fn with_constant(
        &self,
        i: usize,
        j: usize,
        k: usize,
        c: Scalar,
    ) -> Result<Self, AlgebraError> {
        let mut terms: Vec<(usize, usize, usize, Scalar)> = self
            .entries()
            .filter(|&(a, b, t, _)| (a, b, t) != (i, j, k))
            .map(|(a, b, t, c)| (a, b, t, c.clone()))
            .collect();
        terms.push((i, j, k, c));
        let mut out = SuperAlgebra::new(self.name.clone(), self.parity.clone(), terms)?;
        out.meta = self.meta.clone();
        Ok(out)
    }
}
