use super::JordanError;
use crate::exactfield::Scalar;
use crate::superalg::grassmann::{monomial_label, partial, signed, wedge, SubsetBasis};
use crate::superalg::SuperAlgebra;

/// Index layout of `J(Γₙ) = Γ ⊕ Γ̄`: the monomials of `Γₙ` first, then their barred copies.
#[derive(Clone, Debug)]
pub struct JGammaBasis {
    subsets: SubsetBasis,
}

impl JGammaBasis {
    pub fn new(n: usize) -> Self {
        JGammaBasis {
            subsets: SubsetBasis::new(n),
        }
    }

    pub fn len(&self) -> usize {
        2 * self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn plain(&self, mask: u32) -> usize {
        self.subsets.index_of(mask)
    }

    pub fn bar(&self, mask: u32) -> usize {
        self.subsets.len() + self.subsets.index_of(mask)
    }

    /// `(mask, barred)` of a basis index.
    pub fn element(&self, idx: usize) -> (u32, bool) {
        let half = self.subsets.len();
        (self.subsets.mask(idx % half), idx >= half)
    }
}

fn parity(mask: u32) -> u8 {
    (mask.count_ones() % 2) as u8
}

/// `{e_S, e_T} = (−1)^{|S|} Σⱼ ∂e_S/∂eⱼ · ∂e_T/∂eⱼ` as `(mask, coefficient)` terms.
fn grassmann_bracket(n: usize, s: u32, t: u32) -> Vec<(u32, Scalar)> {
    let outer = signed(parity(s) == 1);
    let mut acc: Vec<(u32, Scalar)> = Vec::new();
    for j in 1..=n {
        let (Some((ds, ns)), Some((dt, nt))) = (partial(j, s), partial(j, t)) else {
            continue;
        };
        if let Some((u, nu)) = wedge(ds, dt) {
            let c = &outer * &signed(ns ^ nt ^ nu);
            match acc.iter_mut().find(|(m, _)| *m == u) {
                Some((_, x)) => *x += &c,
                None => acc.push((u, c)),
            }
        }
    }
    acc.retain(|(_, c)| !c.is_zero());
    acc
}

/// `J(Γₙ)`: `a•b = ab`, `ā•b = (−1)^{p(b)} (ab)‾`, `a•b̄ = (ab)‾`, `ā•b̄ = (−1)^{p(b)} {a, b}`.
/// Barred elements have the opposite parity.
pub fn build_jgamma(n: usize) -> Result<SuperAlgebra, JordanError> {
    if !(2..=3).contains(&n) {
        return Err(JordanError::OutOfRange(format!(
            "J(Gamma_n) needs 2 <= n <= 3, got {n}"
        )));
    }
    let b = JGammaBasis::new(n);
    let masks = b.subsets.masks().to_vec();
    let mut par: Vec<u8> = masks.iter().map(|&m| parity(m)).collect();
    par.extend(masks.iter().map(|&m| 1 - parity(m)));
    let mut terms = Vec::new();
    for &s in &masks {
        for &t in &masks {
            let sign_t = signed(parity(t) == 1);
            if let Some((u, neg)) = wedge(s, t) {
                let c = signed(neg);
                terms.push((b.plain(s), b.plain(t), b.plain(u), c.clone()));
                terms.push((b.bar(s), b.plain(t), b.bar(u), &sign_t * &c));
                terms.push((b.plain(s), b.bar(t), b.bar(u), c));
            }
            for (u, c) in grassmann_bracket(n, s, t) {
                terms.push((b.bar(s), b.bar(t), b.plain(u), &sign_t * &c));
            }
        }
    }
    let mut labels: Vec<String> = masks.iter().map(|&m| monomial_label(m)).collect();
    labels.extend(masks.iter().map(|&m| format!("bar({})", monomial_label(m))));
    let mut alg = SuperAlgebra::new(format!("J(Gamma{n})"), par, terms)?.with_labels(labels);
    alg.meta.claims_jordan_super = true;
    let unit = alg.basis_element(b.plain(0));
    alg.meta.idempotents = vec![unit.clone()];
    Ok(alg.with_unit(unit)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{check_super_variety, Variety};

    fn single(alg: &SuperAlgebra, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        alg.product(i, j).clone()
    }

    #[test]
    fn barred_generator_squares_to_one() {
        for n in 2..=3 {
            let j = build_jgamma(n).unwrap();
            let b = JGammaBasis::new(n);
            assert_eq!(
                single(&j, b.bar(1), b.bar(1)),
                vec![(b.plain(0), Scalar::one())]
            );
        }
    }

    #[test]
    fn top_monomial_times_barred_generator() {
        // n = 2: (e₁e₂)‾•ē₁ = −e₂
        let j2 = build_jgamma(2).unwrap();
        let b2 = JGammaBasis::new(2);
        assert_eq!(
            single(&j2, b2.bar(0b11), b2.bar(0b01)),
            vec![(b2.plain(0b10), Scalar::from_int(-1))]
        );
        // n = 3 under the same rules: (e₁e₂e₃)‾•ē₁ = +e₂e₃
        let j3 = build_jgamma(3).unwrap();
        let b3 = JGammaBasis::new(3);
        assert_eq!(
            single(&j3, b3.bar(0b111), b3.bar(0b001)),
            vec![(b3.plain(0b110), Scalar::one())]
        );
    }

    fn apply_twice(j: &SuperAlgebra, i: usize, x: usize) -> Vec<Scalar> {
        let ei = j.basis_element(i);
        let once = j.multiply(&ei, &j.basis_element(x)).unwrap();
        j.multiply(&ei, &once).unwrap()
    }

    #[test]
    fn barred_generator_acts_as_projection() {
        let b = JGammaBasis::new(3);
        let j = build_jgamma(3).unwrap();
        let mut cases = 0;
        for i in 1..=3 {
            let bar_i = b.bar(1 << (i - 1));
            for x in 0u32..8 {
                let has_i = partial(i, x).is_some();
                // plain x: identity when x has no eᵢ, zero otherwise
                let plain = apply_twice(&j, bar_i, b.plain(x));
                let expect = if has_i {
                    j.zero_element()
                } else {
                    j.basis_element(b.plain(x))
                };
                assert_eq!(plain, expect, "i={i} x={x:b}");
                // barred x: identity when x has eᵢ, zero otherwise
                let barred = apply_twice(&j, bar_i, b.bar(x));
                let expect = if has_i {
                    j.basis_element(b.bar(x))
                } else {
                    j.zero_element()
                };
                assert_eq!(barred, expect, "i={i} bar x={x:b}");
                cases += 2;
            }
        }
        assert_eq!(cases, 48);
    }

    #[test]
    fn top_monomial_times_plain_generator_vanishes() {
        for n in 2..=3 {
            let j = build_jgamma(n).unwrap();
            let b = JGammaBasis::new(n);
            assert!(j.product(b.bar((1 << n) - 1), b.plain(1)).is_empty());
        }
    }

    #[test]
    fn out_of_range() {
        assert!(build_jgamma(1).is_err());
        assert!(build_jgamma(4).is_err());
    }

    /// Direct oracle: `ā•b̄` from the bracket definition, `(−1)^{p(b)} {a,b}`, over all monomial pairs.
    #[test]
    fn bracket_rows_match_definition() {
        let n = 3;
        let j = build_jgamma(n).unwrap();
        let b = JGammaBasis::new(n);
        for s in 0u32..8 {
            for t in 0u32..8 {
                let mut expected: Vec<(usize, Scalar)> = Vec::new();
                for k in 1..=n {
                    let (Some((ds, ns)), Some((dt, nt))) = (partial(k, s), partial(k, t)) else {
                        continue;
                    };
                    if let Some((u, nu)) = wedge(ds, dt) {
                        let neg = ns ^ nt ^ nu ^ (parity(s) == 1) ^ (parity(t) == 1);
                        expected.push((b.plain(u), signed(neg)));
                    }
                }
                expected.sort_by_key(|(k, _)| *k);
                assert_eq!(single(&j, b.bar(s), b.bar(t)), expected, "s={s:b} t={t:b}");
            }
        }
    }

    #[test]
    fn jordan_super_for_small_n() {
        for n in 2..=3 {
            let j = build_jgamma(n).unwrap();
            assert!(j.is_supercommutative());
            let c = check_super_variety(&j, Variety::JordanSuper).unwrap();
            assert!(c.passed(), "n={n}: {:?}", c.witness());
        }
    }
}
