//! Rational roots of polynomials with rational coefficients, and `ℚ(i)` roots of quadratics.
//!
//! The rational-root theorem limits candidates to `±u/v` with `u | a₀` and
//! `v | aₙ` for the primitive integer polynomial. Both coefficients are
//! factored completely (trial division, then Pollard rho), so no candidate is
//! skipped regardless of coefficient size.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldError, Poly, Scalar};

/// Exact rational roots of `p`, sorted ascending, without multiplicity.
pub fn rational_roots(p: &Poly) -> Result<Vec<Scalar>, FieldError> {
    if p.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    if !p.is_real() {
        return Err(FieldError::NonRationalCoefficients);
    }
    // Square-free part keeps the candidate coefficients small.
    let g = p.gcd(&p.derivative());
    let sq_free = if g.degree().unwrap_or(0) > 0 {
        p.exact_div(&g)?
    } else {
        p.clone()
    };
    let mut ints = integer_coefficients(&sq_free);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
        ints.drain(..lead_zeros);
    }
    if ints.len() > 1 {
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let nums = divisors(&a0);
        let dens = divisors(&an);
        for v in &dens {
            for u in &nums {
                if !u.gcd(v).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let num = u * BigInt::from(sign);
                    if eval_homogeneous(&ints, &num, v).is_zero() {
                        roots.push(BigRational::new(num, v.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    let out: Vec<Scalar> = roots.into_iter().map(Scalar::real).collect();
    debug_assert!(out.iter().all(|r| p.eval(r).is_zero()));
    Ok(out)
}

/// Roots in `ℚ(i)` of a quadratic with rational coefficients, empty when they lie outside.
pub fn quadratic_roots(p: &Poly) -> Vec<Scalar> {
    if p.degree() != Some(2) || !p.is_real() {
        return Vec::new();
    }
    let m = p.monic();
    let (c, b) = (m.coeffs()[0].re().clone(), m.coeffs()[1].re().clone());
    let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
    let Some(s) = rational_sqrt(&disc.abs()) else {
        return Vec::new();
    };
    let two = BigRational::from_integer(2.into());
    let re = -&b / &two;
    let half = s / two;
    let mut roots: Vec<Scalar> = if disc.is_negative() {
        vec![
            Scalar::new(re.clone(), -half.clone()),
            Scalar::new(re, half),
        ]
    } else {
        vec![Scalar::real(&re - &half), Scalar::real(re + half)]
    };
    roots.dedup();
    roots
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Scales a real polynomial to a primitive integer polynomial with the same roots.
fn integer_coefficients(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.re() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

/// `Σ aₖ uᵏ vⁿ⁻ᵏ`, which vanishes iff `u/v` is a root.
fn eval_homogeneous(coeffs: &[BigInt], u: &BigInt, v: &BigInt) -> BigInt {
    let n = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::one();
    let mut upows = Vec::with_capacity(n + 1);
    let mut up = BigInt::one();
    for _ in 0..=n {
        upows.push(up.clone());
        up *= u;
    }
    for k in (0..=n).rev() {
        acc += &coeffs[k] * &upows[k] * &vpow;
        vpow *= v;
    }
    acc
}

/// All positive divisors of `n > 0`.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Prime factorization of `n > 0` as a prime → exponent map.
pub(crate) fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut out = BTreeMap::new();
    let mut m = n.abs();
    if m.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while d < 10_000 {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        while (&m % &bd).is_zero() {
            *out.entry(bd.clone()).or_insert(0) += 1;
            m /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let f = pollard_rho(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out
}

fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const SMALL: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for p in SMALL {
        let bp = BigInt::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` (Brent's variant).
fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), one.clone());
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n && d.sign() == Sign::Plus {
            return d;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(coeffs: &[i64]) -> Vec<Scalar> {
        rational_roots(&Poly::from_ints(coeffs)).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(
            roots_of(&[1, -3, 2]),
            vec![Scalar::ratio(1, 2), Scalar::one()]
        );
        assert!(roots_of(&[1, 0, 1]).is_empty());
        // δ(δ−1)(2δ−1) = 2δ³ − 3δ² + δ
        assert_eq!(
            roots_of(&[0, 1, -3, 2]),
            vec![Scalar::zero(), Scalar::ratio(1, 2), Scalar::one()]
        );
    }

    #[test]
    fn rejects_gaussian_coefficients() {
        let p = Poly::new(vec![Scalar::i(), Scalar::one()]);
        assert_eq!(rational_roots(&p), Err(FieldError::NonRationalCoefficients));
        assert_eq!(
            rational_roots(&Poly::zero()),
            Err(FieldError::ZeroPolynomial)
        );
    }

    #[test]
    fn repeated_and_fractional_coefficients() {
        // (δ − 2/3)² (δ + 5)
        let a = Poly::new(vec![Scalar::ratio(-2, 3), Scalar::one()]);
        let b = Poly::from_ints(&[5, 1]);
        let p = &(&a * &a) * &b;
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![Scalar::from_int(-5), Scalar::ratio(2, 3)]
        );
    }

    #[test]
    fn factors_large_semiprimes() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let f = factorize(&(&p * &q * &p));
        assert_eq!(f.get(&p), Some(&2));
        assert_eq!(f.get(&q), Some(&1));
        // (1000003·δ − 998244353)
        let poly = Poly::new(vec![Scalar::from(-q.clone()), Scalar::from(p.clone())]);
        assert_eq!(
            rational_roots(&poly).unwrap(),
            vec![Scalar::real(BigRational::new(q, p))]
        );
    }

    #[test]
    fn quadratic_roots_in_gaussian_rationals() {
        let plus_one = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(quadratic_roots(&plus_one), vec![-Scalar::i(), Scalar::i()]);
        let shifted = Poly::from_ints(&[5, -4, 1]);
        let roots = quadratic_roots(&shifted);
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| shifted.eval(r).is_zero()));
        assert!(quadratic_roots(&Poly::from_ints(&[-2, 0, 1])).is_empty());
        assert!(quadratic_roots(&Poly::from_ints(&[1, 1])).is_empty());
    }
}
