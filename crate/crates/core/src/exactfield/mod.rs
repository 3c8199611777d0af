//! Exact arithmetic in the Gaussian rationals ℚ(i) and dense polynomials over them.

mod poly;
mod roots;
mod scalar;

pub use poly::Poly;
pub use roots::{quadratic_roots, rational_roots};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("polynomial has a coefficient with nonzero imaginary part")]
    NonRationalCoefficients,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("malformed scalar {0:?}")]
    Parse(String),
    #[error("zero denominator in scalar {0:?}")]
    ZeroDenominator(String),
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Scalar> {
        (-40i64..40, 1i64..13).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    fn gaussian() -> impl Strategy<Value = Scalar> {
        (small_rat(), small_rat()).prop_map(|(a, b)| Scalar::gaussian(a, b))
    }

    fn poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(gaussian(), 0..5).prop_map(Poly::new)
    }

    proptest! {
        #[test]
        fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_round_trip(a in gaussian()) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
        }

        #[test]
        fn eval_is_multiplicative(p in poly(), q in poly(), x in gaussian()) {
            prop_assert_eq!((&p * &q).eval(&x), &p.eval(&x) * &q.eval(&x));
        }

        #[test]
        fn no_rational_root_missed(
            roots in proptest::collection::vec((-12i64..=12, 1i64..=12), 1..4),
            extra in proptest::collection::vec(-9i64..=9, 0..3),
        ) {
            let mut p = Poly::constant(Scalar::one());
            for &(n, d) in &roots {
                p = &p * &Poly::linear(Scalar::ratio(-n, d), Scalar::one());
            }
            // Multiply by a factor that may or may not carry more rational roots.
            let mut extra = extra;
            extra.push(1);
            p = &p * &Poly::from_ints(&extra);
            let found = rational_roots(&p).unwrap();
            for r in &found {
                prop_assert!(p.eval(r).is_zero());
            }
            // Independent exhaustive scan over small denominators.
            for d in 1..=12i64 {
                for n in -12 * d..=12 * d {
                    let x = Scalar::ratio(n, d);
                    if p.eval(&x).is_zero() {
                        prop_assert!(found.contains(&x), "missed root {}", x);
                    }
                }
            }
        }
    }
}
