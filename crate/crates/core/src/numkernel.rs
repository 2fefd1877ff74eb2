//! Exact arithmetic foundation: unbounded integers, canonical rationals,
//! gcd/lcm over lists and continued-fraction rational reconstruction.
//!
//! Integers are [`num_bigint::BigInt`] and rationals are
//! [`num_rational::BigRational`], which keeps every value in canonical form
//! (positive denominator, coprime numerator and denominator).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Unbounded = BigInt;

/// Exact ratio of unbounded integers in canonical form.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("empty list")]
    EmptyList,
    #[error("entry {index} is not strictly positive")]
    NonPositiveEntry { index: usize },
    #[error("tolerance must be finite and > 0, and max_den >= 1")]
    InvalidTolerance,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Nonnegative greatest common divisor. `gcd(0, 0) == 0`.
pub fn gcd(a: &Unbounded, b: &Unbounded) -> Unbounded {
    a.gcd(b)
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_many(xs: &[Unbounded]) -> Result<Unbounded, NumError> {
    if xs.is_empty() {
        return Err(NumError::EmptyList);
    }
    let mut acc = Unbounded::one();
    for (index, x) in xs.iter().enumerate() {
        if !x.is_positive() {
            return Err(NumError::NonPositiveEntry { index });
        }
        acc = acc.lcm(x);
    }
    Ok(acc)
}

/// Largest positive rational `g` such that every `xs[i] / g` is an integer.
///
/// For canonical fractions `a_i / b_i` this is `gcd(a_i) / lcm(b_i)`, and the
/// quotients `xs[i] / g` then have collective gcd 1.
pub fn rational_gcd(xs: &[Rational]) -> Result<Rational, NumError> {
    if xs.is_empty() {
        return Err(NumError::EmptyList);
    }
    let mut num = Unbounded::zero();
    let mut den = Unbounded::one();
    for (index, x) in xs.iter().enumerate() {
        if !x.is_positive() {
            return Err(NumError::NonPositiveEntry { index });
        }
        num = num.gcd(x.numer());
        den = den.lcm(x.denom());
    }
    Ok(Rational::new(num, den))
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only when it lies within `tol` of `x`.
///
/// The float is converted to the exact dyadic rational it denotes, so the
/// continued fraction expansion carries no rounding. Among all fractions with
/// denominator `<= max_den` the closest one is either the last admissible
/// convergent or the largest admissible semiconvergent after it.
pub fn rationalize(x: f64, tol: f64, max_den: &Unbounded) -> Result<Option<Rational>, NumError> {
    if !(tol.is_finite() && tol > 0.0) || max_den < &Unbounded::one() || !x.is_finite() {
        return Err(NumError::InvalidTolerance);
    }
    let target = Rational::from_float(x).ok_or(NumError::InvalidTolerance)?;
    let tol = Rational::from_float(tol).ok_or(NumError::InvalidTolerance)?;
    let best = best_approximation(&target, max_den);
    // |target - best| <= tol, cross-multiplied.
    let gap = scaled_gap(&target, best.numer(), best.denom()) * tol.denom();
    if gap <= tol.numer() * target.denom() * best.denom() {
        Ok(Some(best))
    } else {
        Ok(None)
    }
}

/// Closest fraction to `target` with denominator bounded by `max_den`.
pub fn best_approximation(target: &Rational, max_den: &Unbounded) -> Rational {
    // Convergents h/k with the usual seeds h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1.
    let (mut h_prev, mut k_prev) = (Unbounded::zero(), Unbounded::one());
    let (mut h, mut k) = (Unbounded::one(), Unbounded::zero());
    // Remainder `num / den` of the expansion, stepped by plain Euclid.
    let (mut num, mut den) = (target.numer().clone(), target.denom().clone());
    loop {
        let (a, r) = num.div_mod_floor(&den);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > max_den {
            // Largest t with k_prev + t*k <= max_den gives the best semiconvergent.
            let t = (max_den - &k_prev).div_floor(&k);
            // Convergents and semiconvergents are already in lowest terms.
            let (hs, ks) = (&t * &h + &h_prev, &t * &k + &k_prev);
            let closer = t.is_positive()
                && scaled_gap(target, &hs, &ks) * &k < scaled_gap(target, &h, &k) * &ks;
            return if closer {
                Rational::new_raw(hs, ks)
            } else {
                Rational::new_raw(h, k)
            };
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if r.is_zero() {
            return Rational::new_raw(h, k);
        }
        num = std::mem::replace(&mut den, r);
    }
}

/// `|target - h / k| * target.denom() * k`.
fn scaled_gap(target: &Rational, h: &Unbounded, k: &Unbounded) -> Unbounded {
    (target.numer() * k - h * target.denom()).abs()
}

/// Parse the shared rational text form: `num/den` with an optional sign on
/// `num`, or a bare integer. Whitespace anywhere is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, NumError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || NumError::Parse(text.to_string());
    let parse_int = |s: &str, signed: bool| -> Option<Unbounded> {
        let digits = if signed {
            s.strip_prefix(['+', '-']).unwrap_or(s)
        } else {
            s
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.strip_prefix('+').unwrap_or(s).parse().ok()
    };
    match compact.split_once('/') {
        None => parse_int(&compact, true)
            .map(Rational::from_integer)
            .ok_or_else(err),
        Some((n, d)) => {
            let n = parse_int(n, true).ok_or_else(err)?;
            let d = parse_int(d, false).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Decimal rendering of `x` rounded half away from zero to `places` digits.
pub fn to_decimal(x: &Rational, places: usize) -> String {
    let scale = num_traits::pow(Unbounded::from(10), places);
    let scaled = x * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let (int_part, frac_part) = rounded.abs().div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = places));
    }
    out
}

/// Base-10 logarithm of a positive integer of any size.
pub fn log10_big(n: &Unbounded) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::log10).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Unbounded {
        Unbounded::from(v)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(int(n), int(d))
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&int(4), &int(9)), int(1));
        assert_eq!(gcd(&int(0), &int(7)), int(7));
        assert_eq!(gcd(&int(1071), &int(462)), int(21));
        assert_eq!(gcd(&int(0), &int(0)), int(0));
        assert_eq!(gcd(&int(-12), &int(18)), int(6));
    }

    #[test]
    fn gcd_exhaustive_divisibility() {
        for a in -200i64..=200 {
            for b in -200i64..=200 {
                let g = gcd(&int(a), &int(b));
                assert!(!g.is_negative());
                if g.is_zero() {
                    assert!(a == 0 && b == 0);
                    continue;
                }
                assert!((int(a) % &g).is_zero() && (int(b) % &g).is_zero());
            }
        }
        // Every common divisor divides the gcd; checked against trial division.
        for a in 1i64..=200 {
            for b in (1i64..=200).step_by(7) {
                let g = gcd(&int(a), &int(b));
                for d in 1..=a.min(b) {
                    if a % d == 0 && b % d == 0 {
                        assert!((&g % int(d)).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn lcm_examples_and_errors() {
        assert_eq!(lcm_many(&[int(4), int(9)]).unwrap(), int(36));
        assert_eq!(lcm_many(&[int(6)]).unwrap(), int(6));
        assert_eq!(lcm_many(&[int(4), int(6), int(10)]).unwrap(), int(60));
        assert_eq!(lcm_many(&[]), Err(NumError::EmptyList));
        assert_eq!(
            lcm_many(&[int(3), int(0)]),
            Err(NumError::NonPositiveEntry { index: 1 })
        );
    }

    #[test]
    fn lcm_matches_brute_force() {
        fn brute(xs: &[i64]) -> i64 {
            (1..).find(|m| xs.iter().all(|x| m % x == 0)).unwrap()
        }
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        for _ in 0..300 {
            let len = 1 + (next() % 6) as usize;
            let xs: Vec<i64> = (0..len).map(|_| 1 + next() % 50).collect();
            let big: Vec<Unbounded> = xs.iter().map(|&x| int(x)).collect();
            assert_eq!(lcm_many(&big).unwrap(), int(brute(&xs)), "{xs:?}");
        }
    }

    #[test]
    fn rational_gcd_examples() {
        assert_eq!(rational_gcd(&[rat(4, 1), rat(9, 1)]).unwrap(), rat(1, 1));
        assert_eq!(rational_gcd(&[rat(1, 6), rat(1, 2)]).unwrap(), rat(1, 6));
        assert_eq!(rational_gcd(&[rat(5, 1)]).unwrap(), rat(5, 1));
        assert_eq!(rational_gcd(&[]), Err(NumError::EmptyList));
        assert_eq!(
            rational_gcd(&[rat(1, 2), rat(-1, 3)]),
            Err(NumError::NonPositiveEntry { index: 1 })
        );
    }

    #[test]
    fn rational_canonical_form() {
        for n in -100i64..=100 {
            for d in 1i64..=100 {
                let r = rat(n, d);
                assert!(r.denom().is_positive());
                assert!(gcd(r.numer(), r.denom()).is_one());
            }
        }
    }

    #[test]
    fn rationalize_examples() {
        let m = int(1_000_000);
        assert_eq!(rationalize(0.5, 1e-9, &m).unwrap(), Some(rat(1, 2)));
        assert_eq!(rationalize(0.333333333333, 1e-9, &m).unwrap(), Some(rat(1, 3)));
        assert_eq!(rationalize(std::f64::consts::SQRT_2, 1e-15, &m).unwrap(), None);
        assert_eq!(rationalize(-2.25, 1e-12, &m).unwrap(), Some(rat(-9, 4)));
        assert_eq!(rationalize(0.5, 0.0, &m), Err(NumError::InvalidTolerance));
        assert_eq!(rationalize(0.5, 1e-3, &int(0)), Err(NumError::InvalidTolerance));
    }

    #[test]
    fn best_approximation_uses_semiconvergents() {
        // pi with denominators <= 100: 311/99 beats the convergent 22/7.
        let pi = Rational::from_float(std::f64::consts::PI).unwrap();
        assert_eq!(best_approximation(&pi, &int(100)), rat(311, 99));
        assert_eq!(best_approximation(&pi, &int(7)), rat(22, 7));
        assert_eq!(best_approximation(&pi, &int(1)), rat(3, 1));
    }

    #[test]
    fn best_approximation_matches_exhaustive_search() {
        for (n, d) in [(355, 113), (1000, 7), (17, 1001), (-5, 3), (314159, 100000)] {
            let target = rat(n, d);
            for bound in [1i64, 2, 5, 10, 37, 100] {
                let mut best: Option<Rational> = None;
                for q in 1..=bound {
                    let p = (&target * Rational::from_integer(int(q))).round().to_integer();
                    for cand in [Rational::new(&p - 1, int(q)), Rational::new(p.clone(), int(q)), Rational::new(&p + 1, int(q))] {
                        let better = match &best {
                            None => true,
                            Some(b) => (&target - &cand).abs() < (&target - b).abs(),
                        };
                        if better {
                            best = Some(cand);
                        }
                    }
                }
                assert_eq!(best_approximation(&target, &int(bound)), best.unwrap(), "{n}/{d} bound {bound}");
            }
        }
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        let m = int(1_000_000);
        for p in 1i64..=1000 {
            for q in (1i64..=1000).step_by(3) {
                let x = p as f64 / q as f64;
                assert_eq!(rationalize(x, 1e-12, &m).unwrap(), Some(rat(p, q)), "{p}/{q}");
            }
        }
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" - 3 / 4 ").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("+7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("12").unwrap(), rat(12, 1));
        for bad in ["", "1/0", "1/-2", "a", "1.5", "1//2", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 9), 12), "0.111111111111");
        assert_eq!(to_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&rat(0, 1), 2), "0.00");
        assert_eq!(to_decimal(&rat(7, 2), 0), "4");
    }

    #[test]
    fn log10_of_huge_values() {
        assert!((log10_big(&int(1000)) - 3.0).abs() < 1e-12);
        let huge = num_traits::pow(int(10), 500);
        assert!((log10_big(&huge) - 500.0).abs() < 1e-9);
    }
}
