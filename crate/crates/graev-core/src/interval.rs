//! Certified arithmetic for the irrational quantities in this crate.
//!
//! Two tools cover everything: [`Interval`], a rational-endpoint enclosure
//! used for evaluations of symbolic angles (every comparison against a
//! rational either certifies or reports that the enclosure is too wide),
//! and [`SqrtSum`], the exact field-free representation `a + √s` with
//! rationals `a, s` used for ℓ¹+ℓ² distances, whose ordering is decided
//! exactly by case analysis and squaring.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{dist_to_int, Rat};

/// Working precision for enclosures, in bits of the dyadic grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;

    /// Enough bits for enclosures of width below `10^-digits`.
    pub fn from_digits(digits: u32) -> Self {
        let digits = digits.clamp(1, 10_000);
        // log2(10) = 3.3219...; 16 guard bits absorb linear-combination growth.
        Precision { bits: digits * 3322 / 1000 + 16 }
    }

    pub fn from_bits(bits: u32) -> Self {
        Precision { bits: bits.clamp(8, 40_000) }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn doubled(&self) -> Self {
        Precision::from_bits(self.bits.saturating_mul(2))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::from_digits(Self::DEFAULT_DIGITS)
    }
}

/// A closed interval with exact rational endpoints, guaranteed to contain
/// the real value it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(value: Rat) -> Self {
        Interval { lo: value.clone(), hi: value }
    }

    pub fn zero() -> Self {
        Interval::point(Rat::zero())
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add_rat(&self, r: &Rat) -> Interval {
        Interval { lo: &self.lo + r, hi: &self.hi + r }
    }

    /// Multiplication by an exact rational (sign-aware).
    pub fn scale(&self, r: &Rat) -> Interval {
        if r.is_negative() {
            Interval { lo: &self.hi * r, hi: &self.lo * r }
        } else {
            Interval { lo: &self.lo * r, hi: &self.hi * r }
        }
    }

    /// Pointwise maximum of two enclosures.
    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    /// `Some(true)` iff the whole interval is `< r`, `Some(false)` iff all
    /// of it is `>= r`, `None` when `r` cuts the interval.
    pub fn certified_lt(&self, r: &Rat) -> Option<bool> {
        if &self.hi < r {
            Some(true)
        } else if &self.lo >= r {
            Some(false)
        } else {
            None
        }
    }

    pub fn certified_gt(&self, r: &Rat) -> Option<bool> {
        if &self.lo > r {
            Some(true)
        } else if &self.hi <= r {
            Some(false)
        } else {
            None
        }
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", crate::rat::format_rat(&self.lo))
        } else {
            write!(
                f,
                "[{}, {}]",
                crate::rat::format_rat(&self.lo),
                crate::rat::format_rat(&self.hi)
            )
        }
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn sqrt_exact(x: &Rat) -> Option<Rat> {
    debug_assert!(!x.is_negative());
    let p = x.numer();
    let q = x.denom();
    let sp = p.sqrt();
    if &(&sp * &sp) != p {
        return None;
    }
    let sq = q.sqrt();
    if &(&sq * &sq) != q {
        return None;
    }
    Some(Rat::new(sp, sq))
}

/// Certified enclosure of `√x` for `x >= 0`, of width at most `2^-bits`
/// (exact when the root is rational).
pub fn sqrt_enclosure(x: &Rat, prec: Precision) -> Interval {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return Interval::zero();
    }
    if let Some(exact) = sqrt_exact(x) {
        return Interval::point(exact);
    }
    let s = prec.bits;
    // floor(√(x·4^s)) = r gives √x ∈ [r/2^s, (r+1)/2^s].
    let scaled = (x.numer() << (2 * s)).div_floor(x.denom());
    let r = scaled.sqrt();
    let den = BigInt::one() << s;
    Interval::new(
        Rat::new(r.clone(), den.clone()),
        Rat::new(r + BigInt::one(), den),
    )
}

/// Enclosure of the distance from the enclosed value to the nearest integer.
pub fn dist_to_nearest_int(iv: &Interval) -> Interval {
    let contains_integer = {
        let lo_ceil = -(-&iv.lo).floor();
        lo_ceil <= iv.hi.floor()
    };
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let contains_half_integer = {
        let lo = &iv.lo - &half;
        let hi = &iv.hi - &half;
        -(-&lo).floor() <= hi.floor()
    };
    let g_lo = dist_to_int(&iv.lo);
    let g_hi = dist_to_int(&iv.hi);
    let lo = if contains_integer {
        Rat::zero()
    } else if g_lo <= g_hi {
        g_lo.clone()
    } else {
        g_hi.clone()
    };
    let hi = if contains_half_integer {
        half
    } else if g_lo >= g_hi {
        g_lo
    } else {
        g_hi
    };
    Interval::new(lo, hi)
}

/// Rounds the enclosed value to the dyadic/unit grid `1/unit_den`:
/// the result `a` satisfies `|value·unit_den - a| <= 1`. `None` when the
/// enclosure is too wide for that guarantee.
pub(crate) fn round_to_units(iv: &Interval, unit_den: &BigInt) -> Option<BigInt> {
    let unit = Rat::from_integer(unit_den.clone());
    if iv.width() * &unit > Rat::one() {
        return None;
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    Some((iv.midpoint() * unit + half).floor().to_integer())
}

/// The exact real `base + √radicand` (`radicand >= 0`), with a decidable
/// total order. This is the form every ℓ¹-plus-ℓ² distance in the
/// embedding module takes, so minima and threshold comparisons there are
/// computed without any rounding at all.
#[derive(Debug, Clone)]
pub struct SqrtSum {
    base: Rat,
    radicand: Rat,
}

impl SqrtSum {
    pub fn new(base: Rat, radicand: Rat) -> Self {
        assert!(!radicand.is_negative(), "radicand must be nonnegative");
        SqrtSum { base, radicand }
    }

    pub fn from_rat(r: Rat) -> Self {
        SqrtSum { base: r, radicand: Rat::zero() }
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.radicand.is_zero()
    }

    /// Rational value, when the radicand is a perfect square.
    pub fn exact_value(&self) -> Option<Rat> {
        sqrt_exact(&self.radicand).map(|root| &self.base + root)
    }

    pub fn enclosure(&self, prec: Precision) -> Interval {
        sqrt_enclosure(&self.radicand, prec).add_rat(&self.base)
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        self.cmp(&SqrtSum::from_rat(r.clone()))
    }
}

impl PartialEq for SqrtSum {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SqrtSum {}

impl PartialOrd for SqrtSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtSum {
    /// Sign of `(b1 - b2) + √s1 - √s2`, decided exactly.
    fn cmp(&self, other: &Self) -> Ordering {
        let (s1, s2) = (&self.radicand, &other.radicand);
        if s1 == s2 {
            return self.base.cmp(&other.base);
        }
        let d = &self.base - &other.base;
        if d.is_zero() {
            return s1.cmp(s2);
        }

        // Sign of d + √s1.
        let lhs_sign = if d.is_positive() {
            Ordering::Greater
        } else {
            // d < 0: compare s1 with d².
            s1.cmp(&(&d * &d))
        };
        if s2.is_zero() {
            return lhs_sign;
        }
        // √s2 > 0 from here on.
        if lhs_sign != Ordering::Greater {
            return Ordering::Less;
        }
        // Both sides positive; compare squares: 2d√s1 against s2 - d² - s1.
        let r = s2 - &(&d * &d) - s1;
        let lhs_sq = Rat::from_integer(BigInt::from(4)) * &d * &d * s1;
        if d.is_positive() {
            if r.is_negative() {
                Ordering::Greater
            } else {
                lhs_sq.cmp(&(&r * &r))
            }
        } else {
            // 2d√s1 <= 0.
            if r.is_positive() {
                Ordering::Less
            } else if r.is_zero() {
                if s1.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Less
                }
            } else {
                (&r * &r).cmp(&lhs_sq)
            }
        }
    }
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(exact) = self.exact_value() {
            write!(f, "{}", crate::rat::format_rat(&exact))
        } else if self.base.is_zero() {
            write!(f, "sqrt({})", crate::rat::format_rat(&self.radicand))
        } else {
            write!(
                f,
                "{} + sqrt({})",
                crate::rat::format_rat(&self.base),
                crate::rat::format_rat(&self.radicand)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn sqrt_enclosures_are_tight_and_correct() {
        let prec = Precision::default();
        let two = rat_int(2);
        let iv = sqrt_enclosure(&two, prec);
        // Encloses sqrt(2) and is narrow.
        assert!(iv.lo() * iv.lo() <= two);
        assert!(iv.hi() * iv.hi() >= two);
        assert!(iv.width() <= Rat::new(BigInt::one(), BigInt::one() << 166));

        assert_eq!(sqrt_enclosure(&rat(9, 4), prec), Interval::point(rat(3, 2)));
        assert_eq!(sqrt_exact(&rat(2, 3)), None);
    }

    #[test]
    fn nearest_integer_distance_enclosures() {
        let iv = Interval::new(rat(9, 10), rat(11, 10)); // contains 1
        let d = dist_to_nearest_int(&iv);
        assert_eq!(*d.lo(), rat_int(0));
        assert_eq!(*d.hi(), rat(1, 10));

        let iv = Interval::new(rat(2, 5), rat(3, 5)); // contains 1/2
        let d = dist_to_nearest_int(&iv);
        assert_eq!(*d.hi(), rat(1, 2));
        assert_eq!(*d.lo(), rat(2, 5));

        let iv = Interval::new(rat(1, 10), rat(1, 5));
        let d = dist_to_nearest_int(&iv);
        assert_eq!(*d.lo(), rat(1, 10));
        assert_eq!(*d.hi(), rat(1, 5));
    }

    #[test]
    fn certified_comparisons_report_unknown_in_the_gap() {
        let iv = Interval::new(rat(1, 3), rat(1, 2));
        assert_eq!(iv.certified_lt(&rat_int(1)), Some(true));
        assert_eq!(iv.certified_lt(&rat(1, 4)), Some(false));
        assert_eq!(iv.certified_lt(&rat(2, 5)), None);
    }

    #[test]
    fn sqrt_sum_ordering_is_exact() {
        let v = |b: Rat, s: Rat| SqrtSum::new(b, s);
        // sqrt(2) < 3/2
        assert_eq!(v(rat_int(0), rat_int(2)).cmp_rat(&rat(3, 2)), Ordering::Less);
        // 2 + sqrt(2) < sqrt(12)
        assert!(v(rat_int(2), rat_int(2)) < v(rat_int(0), rat_int(12)));
        // 3 + sqrt(0) == 1 + sqrt(4)
        assert_eq!(v(rat_int(3), rat_int(0)), v(rat_int(1), rat_int(4)));
        // 0 + sqrt(4) == 2
        assert_eq!(v(rat_int(0), rat_int(4)).cmp_rat(&rat_int(2)), Ordering::Equal);
        // 1 + sqrt(2) > sqrt(3)
        assert!(v(rat_int(1), rat_int(2)) > v(rat_int(0), rat_int(3)));
        // sqrt(5) vs exact enclosure agreement
        let s = v(rat_int(0), rat_int(5));
        let iv = s.enclosure(Precision::default());
        assert!(iv.lo() * iv.lo() <= rat_int(5));
        assert!(iv.hi() * iv.hi() >= rat_int(5));
    }

    #[test]
    fn round_to_units_certifies_error_bound() {
        let iv = Interval::new(rat(333, 1000), rat(334, 1000));
        let a = round_to_units(&iv, &BigInt::from(100)).unwrap();
        assert_eq!(a, BigInt::from(33));
        // Too wide for units of 1/10000.
        let wide = Interval::new(rat_int(0), rat(1, 2));
        assert!(round_to_units(&wide, &BigInt::from(10_000)).is_none());
    }
}
