//! Grassmann algebras on subset bases.
//!
//! A monomial `e_S` is stored as a bitmask with bit `i - 1` set for generator `eᵢ`.

use super::{AlgebraError, Meta, SuperAlgebra};
use crate::exactfield::Scalar;

/// Largest generator count accepted by [`grassmann`].
pub const MAX_GENERATORS: usize = 12;

/// All subsets of `{1..n}` in graded-lexicographic order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct SubsetBasis {
    n: usize,
    order: Vec<u32>,
    index: Vec<usize>,
}

impl SubsetBasis {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "subset basis limited to 16 generators");
        let mut order: Vec<u32> = (0..1u32 << n).collect();
        order.sort_by_key(|&m| (m.count_ones(), elements(m)));
        let mut index = vec![0; order.len()];
        for (i, &m) in order.iter().enumerate() {
            index[m as usize] = i;
        }
        SubsetBasis { n, order, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.order[i]
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.index[mask as usize]
    }

    pub fn masks(&self) -> &[u32] {
        &self.order
    }

    /// The mask of the top monomial `e₁…eₙ`.
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }
}

/// Generators (1-based) of a monomial, ascending.
pub fn elements(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b as usize + 1)
        .collect()
}

pub fn mask_of(generators: &[usize]) -> u32 {
    generators.iter().fold(0, |m, &g| m | 1 << (g - 1))
}

/// `true` when `e_S e_T = −e_{S∪T}`: an odd number of pairs `s ∈ S, t ∈ T` with `s > t`.
pub fn koszul_negative(s: u32, t: u32) -> bool {
    let mut count = 0;
    for b in 0..32 {
        if t >> b & 1 == 1 {
            count += (s >> (b + 1)).count_ones();
        }
    }
    count % 2 == 1
}

/// `e_S e_T` as `(S ∪ T, negative)`, or `None` when `S ∩ T ≠ ∅`.
pub fn wedge(s: u32, t: u32) -> Option<(u32, bool)> {
    (s & t == 0).then(|| (s | t, koszul_negative(s, t)))
}

/// `∂e_T/∂eᵢ` as `(T \ {i}, negative)`: the sign is `(−1)^{#{t ∈ T : t < i}}`.
pub fn partial(i: usize, t: u32) -> Option<(u32, bool)> {
    let bit = 1u32 << (i - 1);
    if t & bit == 0 {
        return None;
    }
    let below = (t & (bit - 1)).count_ones();
    Some((t & !bit, below % 2 == 1))
}

pub fn signed(negative: bool) -> Scalar {
    if negative {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Label of a monomial: `1`, `e1`, `e1e2`, ...
pub fn monomial_label(mask: u32) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    elements(mask).iter().map(|g| format!("e{g}")).collect()
}

/// The Grassmann superalgebra `Λ(n)` of dimension `2ⁿ`, with parity `|S| mod 2`.
pub fn grassmann(n: usize) -> Result<SuperAlgebra, AlgebraError> {
    if n > MAX_GENERATORS {
        return Err(AlgebraError::TooLarge(format!(
            "Grassmann algebra on {n} generators"
        )));
    }
    let basis = SubsetBasis::new(n);
    let parity = basis
        .masks()
        .iter()
        .map(|m| (m.count_ones() % 2) as u8)
        .collect();
    let mut terms = Vec::new();
    for (i, &s) in basis.masks().iter().enumerate() {
        for (j, &t) in basis.masks().iter().enumerate() {
            if let Some((u, neg)) = wedge(s, t) {
                terms.push((i, j, basis.index_of(u), signed(neg)));
            }
        }
    }
    let mut alg = SuperAlgebra::new(format!("Lambda({n})"), parity, terms)?;
    alg.meta = Meta {
        labels: basis.masks().iter().map(|&m| monomial_label(m)).collect(),
        ..Meta::default()
    };
    let unit = alg.basis_element(0);
    alg.with_unit(unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let b = SubsetBasis::new(3);
        let labels: Vec<String> = b.masks().iter().map(|&m| monomial_label(m)).collect();
        assert_eq!(
            labels,
            ["1", "e1", "e2", "e3", "e1e2", "e1e3", "e2e3", "e1e2e3"]
        );
    }

    #[test]
    fn dimensions_and_parity() {
        let l0 = grassmann(0).unwrap();
        assert_eq!((l0.dim(), l0.odd_dim()), (1, 0));
        let l2 = grassmann(2).unwrap();
        assert_eq!(l2.parity(), &[0, 1, 1, 0]);
        assert_eq!(grassmann(3).unwrap().dim(), 8);
        assert!(matches!(grassmann(13), Err(AlgebraError::TooLarge(_))));
    }

    #[test]
    fn signs() {
        // e2 · e1 = −e1e2, e1e3 · e2 = −e1e2e3, e2 · e1e3 = −e1e2e3
        assert_eq!(wedge(0b010, 0b001), Some((0b011, true)));
        assert_eq!(wedge(0b101, 0b010), Some((0b111, true)));
        assert_eq!(wedge(0b010, 0b101), Some((0b111, true)));
        assert_eq!(wedge(0b001, 0b001), None);
        // ∂(e1e2e3)/∂e2 = −e1e3
        assert_eq!(partial(2, 0b111), Some((0b101, true)));
        assert_eq!(partial(1, 0b110), None);
    }

    #[test]
    fn supercommutative_and_associative() {
        let l3 = grassmann(3).unwrap();
        assert!(l3.is_supercommutative());
        assert!(l3.is_associative());
    }
}
