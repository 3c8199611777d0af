use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{build_k3, JordanError};
use crate::exactfield::Scalar;
use crate::superalg::{
    check_super_variety, from_json, simplicity_probe, ProbeVerdict, SuperAlgebra, Variety,
};

const K10_JSON: &str = include_str!("../../data/k10.json");

/// SHA-256 of the embedded `K₁₀` table.
pub const K10_SHA256: &str = "9cc3675827c6bfe4adba863aed6c22e447d5ab854fc1cf2acf614c018d6a9bc1";

/// Supersymmetric invariant form on `K₃`: `(e|e) = ½`, `(x|y) = 1 = −(y|x)`.
fn k3_form(a: usize, c: usize) -> Scalar {
    match (a, c) {
        (0, 0) => Scalar::ratio(1, 2),
        (1, 2) => Scalar::one(),
        (2, 1) => Scalar::from_int(-1),
        _ => Scalar::zero(),
    }
}

/// `K₁₀ = F·1 ⊕ K₃⊗K₃` with `(a⊗b)(c⊗d) = (−1)^{p(b)p(c)} (ac⊗bd − λ(a|c)(b|d)·1)`.
/// Basis: `1`, then `a⊗b` at `1 + 3a + b` over `K₃ = ⟨e, x, y⟩`.
pub fn k10_from_kaplansky(lambda: &Scalar) -> Result<SuperAlgebra, JordanError> {
    let k = build_k3();
    let idx = |a: usize, b: usize| 1 + 3 * a + b;
    let mut parity = vec![0u8];
    let mut labels = vec!["1".to_string()];
    for a in 0..3 {
        for b in 0..3 {
            parity.push((k.parity_of(a) + k.parity_of(b)) % 2);
            labels.push(format!("{}*{}", k.label(a), k.label(b)));
        }
    }
    let mut terms = Vec::new();
    for i in 0..10 {
        terms.push((0, i, i, Scalar::one()));
        if i > 0 {
            terms.push((i, 0, i, Scalar::one()));
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let sign = if k.parity_of(b) * k.parity_of(c) == 1 {
                        Scalar::from_int(-1)
                    } else {
                        Scalar::one()
                    };
                    for (p, u) in k.product(a, c) {
                        for (q, v) in k.product(b, d) {
                            terms.push((idx(a, b), idx(c, d), idx(*p, *q), &(&sign * u) * v));
                        }
                    }
                    let f = &k3_form(a, c) * &k3_form(b, d);
                    if !f.is_zero() {
                        terms.push((idx(a, b), idx(c, d), 0, -(&(&sign * lambda) * &f)));
                    }
                }
            }
        }
    }
    let mut alg = SuperAlgebra::new("K10", parity, terms)?.with_labels(labels);
    alg.meta.claims_jordan_super = true;
    let unit = alg.basis_element(0);
    alg.meta.idempotents = vec![unit.clone()];
    Ok(alg.with_unit(unit)?)
}

/// Load gates: dimension split, Jordan super identity, unit, and no proper ideal found by probing.
fn validate(a: SuperAlgebra) -> Result<SuperAlgebra, JordanError> {
    let corrupt = |m: String| JordanError::K10DataCorrupt(m);
    if (a.dim(), a.even_dim()) != (10, 6) {
        return Err(corrupt(format!(
            "expected dims (10, 6), found ({}, {})",
            a.dim(),
            a.even_dim()
        )));
    }
    if a.unit().is_none() {
        return Err(corrupt("no unit".into()));
    }
    let check =
        check_super_variety(&a, Variety::JordanSuper).map_err(|e| corrupt(e.to_string()))?;
    if let Some(w) = check.witness() {
        return Err(corrupt(format!("{:?} fails at {:?}", w.identity, w.labels)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    if let ProbeVerdict::ProperIdeal { ideal, .. } = simplicity_probe(&a, 8, &mut rng) {
        return Err(corrupt(format!("proper ideal of dim {}", ideal.dim())));
    }
    Ok(a)
}

/// The embedded `K₁₀` table, checksum- and gate-checked.
pub fn build_k10() -> Result<SuperAlgebra, JordanError> {
    let digest = hex::encode(Sha256::digest(K10_JSON.as_bytes()));
    if digest != K10_SHA256 {
        return Err(JordanError::K10DataCorrupt(format!(
            "checksum {digest} differs from {K10_SHA256}"
        )));
    }
    validate(from_json(K10_JSON).map_err(|e| JordanError::K10DataCorrupt(e.to_string()))?)
}

/// A `K₁₀` table read from `path`, gate-checked.
pub fn build_k10_from(path: impl AsRef<Path>) -> Result<SuperAlgebra, JordanError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| JordanError::K10DataCorrupt(e.to_string()))?;
    validate(from_json(&text).map_err(|e| JordanError::K10DataCorrupt(e.to_string()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::to_json;

    #[test]
    fn embedded_table_loads() {
        let k = build_k10().unwrap();
        assert_eq!((k.dim(), k.even_dim(), k.odd_dim()), (10, 6, 4));
        assert!(k.is_supercommutative());
    }

    #[test]
    fn embedded_table_matches_construction() {
        let built = k10_from_kaplansky(&Scalar::ratio(3, 4)).unwrap();
        assert_eq!(to_json(&built), K10_JSON);
    }

    #[test]
    fn other_constants_fail_the_gates() {
        for l in [Scalar::one(), Scalar::ratio(1, 2)] {
            let a = k10_from_kaplansky(&l).unwrap();
            assert!(matches!(validate(a), Err(JordanError::K10DataCorrupt(_))));
        }
    }

    #[test]
    fn override_path_is_validated() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("good.json");
        std::fs::write(&good, K10_JSON).unwrap();
        assert!(build_k10_from(&good).is_ok());
        let bad = dir.path().join("bad.json");
        let broken = to_json(&k10_from_kaplansky(&Scalar::one()).unwrap());
        std::fs::write(&bad, broken).unwrap();
        assert!(matches!(
            build_k10_from(&bad),
            Err(JordanError::K10DataCorrupt(_))
        ));
        assert!(build_k10_from(dir.path().join("missing.json")).is_err());
    }
}
