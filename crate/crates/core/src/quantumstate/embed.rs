//! Numeric images of group-ring elements with rigorous error bounds.
//!
//! Everything is computed in binary fixed point on [`BigInt`] mantissas:
//! pi by Machin's formula, then cosine and sine by Taylor series on an
//! angle reduced exactly (as rational turns) into `[0, 1/8]` of a turn.
//! Each routine carries an upper bound on its error in units in the last
//! place, and the final ball radius is the sum of those bounds weighted by
//! the absolute coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numkernel::Rational;

use super::GroupRingElement;

/// Guard bits added on top of the requested precision.
const GUARD_BITS: u64 = 64;

/// Real interval `[(mid - rad) / 2^frac_bits, (mid + rad) / 2^frac_bits]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    frac_bits: u64,
}

impl Ball {
    fn scale(&self) -> Rational {
        Rational::from_integer(BigInt::one() << self.frac_bits)
    }

    pub fn mid(&self) -> Rational {
        Rational::new(self.mid.clone(), BigInt::one() << self.frac_bits)
    }

    pub fn rad(&self) -> Rational {
        Rational::new(self.rad.clone(), BigInt::one() << self.frac_bits)
    }

    pub fn lo(&self) -> Rational {
        Rational::from_integer(&self.mid - &self.rad) / self.scale()
    }

    pub fn hi(&self) -> Rational {
        Rational::from_integer(&self.mid + &self.rad) / self.scale()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo() <= x && x <= &self.hi()
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Radius rounded up to the next representable double.
    pub fn rad_f64(&self) -> f64 {
        if self.rad.is_zero() {
            0.0
        } else {
            self.rad().to_f64().map_or(f64::INFINITY, f64::next_up)
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }
}

/// A complex value as a rectangle of two real balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// Bound on the modulus of the error, `rad(re) + rad(im)`.
    pub fn radius(&self) -> Rational {
        self.re.rad() + self.im.rad()
    }

    pub fn radius_f64(&self) -> f64 {
        let r = self.re.rad_f64() + self.im.rad_f64();
        if r == 0.0 {
            0.0
        } else {
            r.next_up()
        }
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }
}

/// Fixed-point constants shared by every root evaluated in one call.
struct FixedPoint {
    bits: u64,
    pi: BigInt,
    pi_err: BigInt,
}

impl FixedPoint {
    fn new(precision: u32) -> Self {
        let bits = u64::from(precision.max(53)) + GUARD_BITS;
        let (a, a_err) = atan_inv(5, bits);
        let (b, b_err) = atan_inv(239, bits);
        let pi = a * 16 - b * 4;
        let pi_err = BigInt::from(16 * a_err + 4 * b_err);
        Self { bits, pi, pi_err }
    }

    fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    /// `(cos, sin, err)` of `2 pi num/den` turns with `0 <= num/den <= 1/8`.
    fn cos_sin_octant(&self, num: &BigInt, den: &BigInt) -> (BigInt, BigInt, BigInt) {
        if num.is_zero() {
            return (self.one(), BigInt::zero(), BigInt::zero());
        }
        // x = 2 pi num / den < 1, error <= pi_err / 4 + 1 ulps.
        let x: BigInt = (&self.pi * 2u32 * num).div_floor(den);
        let x_err = &self.pi_err + 1;
        let x2 = (&x * &x) >> self.bits;
        let mut cos = self.one();
        let mut sin = x.clone();
        let mut cos_term = self.one();
        let mut sin_term = x;
        let mut terms = 0u64;
        for i in 1u64.. {
            cos_term = ((&cos_term * &x2) >> self.bits) / BigInt::from((2 * i - 1) * (2 * i));
            sin_term = ((&sin_term * &x2) >> self.bits) / BigInt::from((2 * i) * (2 * i + 1));
            if cos_term.is_zero() && sin_term.is_zero() {
                break;
            }
            if i % 2 == 1 {
                cos -= &cos_term;
                sin -= &sin_term;
            } else {
                cos += &cos_term;
                sin += &sin_term;
            }
            terms = i;
        }
        let err = (x_err * 2 + 6) * BigInt::from(terms + 2);
        (cos, sin, err)
    }

    /// `(re, im, err)` of `exp(-2 pi i j / n)` for `0 <= j < n`.
    fn root_of_unity(&self, j: &BigInt, n: &BigInt) -> (BigInt, BigInt, BigInt) {
        let four_j: BigInt = j * 4;
        let (quarter, rem) = four_j.div_rem(n);
        let four_n: BigInt = n * 4;
        let (c, s, err) = if &rem * 2 <= *n {
            self.cos_sin_octant(&rem, &four_n)
        } else {
            let (c, s, err) = self.cos_sin_octant(&(n - &rem), &four_n);
            (s, c, err)
        };
        let (cos, sin) = match quarter.to_u8().expect("quarter index is in 0..4") {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        };
        (cos, -sin, err)
    }
}

/// `atan(1/k)` in fixed point with `bits` fractional bits, and its error bound.
fn atan_inv(k: u32, bits: u64) -> (BigInt, u64) {
    let k2 = BigInt::from(k) * k;
    // power = floor(2^bits / k^(2i+1)); repeated floor division stays exact.
    let mut power = (BigInt::one() << bits) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut i = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * i + 1);
        if i.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        i += 1;
        terms += 1;
    }
    (sum, 2 * terms + 2)
}

/// Numeric image `sum_j coeffs[j] * exp(-2 pi i j / N)` as a rigorous ball.
///
/// Precisions below 53 bits are raised to 53.
pub fn embed(x: &GroupRingElement, precision: u32) -> ComplexBall {
    let fp = FixedPoint::new(precision);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut rad = BigInt::zero();
    for (j, c) in x.terms() {
        let (cr, ci, err) = fp.root_of_unity(j, x.modulus());
        re += c * cr;
        im += c * ci;
        rad += c.abs() * err;
    }
    ComplexBall {
        re: Ball { mid: re, rad: rad.clone(), frac_bits: fp.bits },
        im: Ball { mid: im, rad, frac_bits: fp.bits },
    }
}

/// Exact value of `x` when every term sits on a quarter turn, as a Gaussian integer.
pub(crate) fn exact_gaussian(x: &GroupRingElement) -> Option<(BigInt, BigInt)> {
    let n = x.modulus();
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (j, c) in x.terms() {
        let (quarter, rem) = (j * 4u32).div_rem(n);
        if !rem.is_zero() {
            return None;
        }
        // exp(-2 pi i q/4) = (-i)^q
        match quarter.to_u8().expect("quarter index is in 0..4") {
            0 => re += c,
            1 => im -= c,
            2 => re -= c,
            _ => im += c,
        }
    }
    Some((re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn element(n: i64, coeffs: &[(i64, i64)]) -> GroupRingElement {
        let mut g = GroupRingElement::zero(BigInt::from(n));
        for &(j, c) in coeffs {
            g.add_term(&BigInt::from(j), &BigInt::from(c));
        }
        g
    }

    fn direct(n: i64, coeffs: &[(i64, i64)]) -> (f64, f64) {
        coeffs.iter().fold((0.0, 0.0), |(re, im), &(j, c)| {
            let theta = -2.0 * std::f64::consts::PI * j as f64 / n as f64;
            (re + c as f64 * theta.cos(), im + c as f64 * theta.sin())
        })
    }

    #[test]
    fn pi_digits() {
        let fp = FixedPoint::new(200);
        let pi = Rational::new(fp.pi.clone(), BigInt::one() << fp.bits);
        // 50 digits of pi
        let reference: Rational = Rational::new(
            "314159265358979323846264338327950288419716939937510".parse().unwrap(),
            num_traits::pow(BigInt::from(10), 50),
        );
        let tol = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 49));
        assert!((pi - reference).abs() < tol);
    }

    #[test]
    fn zero_element_is_exact_zero() {
        let b = embed(&GroupRingElement::zero(BigInt::from(7)), 64);
        assert!(b.is_exact());
        assert_eq!(b.mid_f64(), (0.0, 0.0));
    }

    #[test]
    fn full_cycle_sums_to_zero() {
        let b = embed(&element(4, &[(0, 1), (1, 1), (2, 1), (3, 1)]), 64);
        assert!(b.contains(&Rational::zero(), &Rational::zero()));
        let b = embed(&element(7, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)]), 128);
        assert!(b.contains(&Rational::zero(), &Rational::zero()));
        assert!(b.radius_f64() < 1e-30);
    }

    #[test]
    fn quarter_turn_example() {
        let b = embed(&element(4, &[(0, 1), (1, 1)]), 64);
        let (re, im) = b.mid_f64();
        assert!((re - 1.0).abs() < 1e-15 && (im + 1.0).abs() < 1e-15);
    }

    #[test]
    fn known_root_values() {
        // exp(-2 pi i / 8) = (1 - i)/sqrt(2); exp(-2 pi i / 12) = (sqrt(3) - i)/2
        let b = embed(&element(8, &[(1, 1)]), 128);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.re.mid_f64() - h).abs() < 1e-16 && (b.im.mid_f64() + h).abs() < 1e-16);
        let b = embed(&element(12, &[(1, 2)]), 128);
        assert!((b.re.mid_f64() - 3f64.sqrt()).abs() < 1e-15 && (b.im.mid_f64() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn every_octant_matches_floats() {
        let n = 997;
        for j in 0..n {
            let b = embed(&element(n, &[(j, 3)]), 64);
            let (re, im) = direct(n, &[(j, 3)]);
            assert!((b.re.mid_f64() - re).abs() < 1e-14, "j={j}");
            assert!((b.im.mid_f64() - im).abs() < 1e-14, "j={j}");
        }
    }

    #[test]
    fn exact_gaussian_path() {
        assert_eq!(
            exact_gaussian(&element(4, &[(0, 1), (1, 1)])),
            Some((BigInt::from(1), BigInt::from(-1)))
        );
        assert_eq!(exact_gaussian(&element(2, &[(0, 2), (1, -1)])), Some((BigInt::from(3), BigInt::zero())));
        assert_eq!(exact_gaussian(&element(6, &[(1, 1)])), None);
    }

    fn sparse_element() -> impl Strategy<Value = (i64, Vec<(i64, i64)>)> {
        (1i64..=1000).prop_flat_map(|n| {
            (Just(n), proptest::collection::vec((0..n, -1000i64..=1000), 0..20))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn radius_shrinks_and_contains_reference((n, coeffs) in sparse_element()) {
            let g = element(n, &coeffs);
            let low = embed(&g, 64);
            let high = embed(&g, 256);
            let reference = embed(&g, 512);
            let (r, i) = (reference.re.mid(), reference.im.mid());
            prop_assert!(low.contains(&r, &i));
            prop_assert!(high.contains(&r, &i));
            if !low.is_exact() {
                prop_assert!(high.radius() < low.radius());
            }
        }

        #[test]
        fn agrees_with_direct_evaluation((n, coeffs) in sparse_element()) {
            let b = embed(&element(n, &coeffs), 128);
            let (re, im) = direct(n, &coeffs);
            prop_assert!((b.re.mid_f64() - re).abs() < 1e-10);
            prop_assert!((b.im.mid_f64() - im).abs() < 1e-10);
        }
    }
}
