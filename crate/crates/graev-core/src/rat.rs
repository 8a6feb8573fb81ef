//! Exact rational scalars and their text form (`"p/q"` or `"n"`).

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar type used everywhere in this crate.
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `1 / 2^k`.
pub fn pow2_inv(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k)
}

/// Largest integer ≤ r.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(r: &Rat) -> Rat {
    r - r.floor()
}

/// Distance from `r` to the nearest integer, in `[0, 1/2]`.
pub fn dist_to_int(r: &Rat) -> Rat {
    let f = frac_part(r);
    let g = Rat::one() - &f;
    if f <= g {
        f
    } else {
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatParseError {
    Empty,
    BadInteger(String),
    ZeroDenominator,
}

impl fmt::Display for RatParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatParseError::Empty => write!(f, "empty rational literal"),
            RatParseError::BadInteger(s) => write!(f, "invalid integer `{s}` in rational literal"),
            RatParseError::ZeroDenominator => write!(f, "zero denominator in rational literal"),
        }
    }
}

impl core::error::Error for RatParseError {}

/// Parses `"p/q"` or `"n"` (optional leading `-`).
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, RatParseError> {
        t.parse::<BigInt>()
            .map_err(|_| RatParseError::BadInteger(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let numer = parse_int(n)?;
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(RatParseError::ZeroDenominator);
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Decimal rendering of a nonnegative rational, rounded up at the last
/// digit so the printed number is still an upper bound.
pub fn decimal_upper(r: &Rat, digits: u32) -> String {
    assert!(!r.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (-(-(r * Rat::from_integer(scale.clone()))).floor()).to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut frac = frac_part.to_string();
    while frac.len() < digits as usize {
        frac.insert(0, '0');
    }
    while frac.ends_with('0') && frac.len() > 1 {
        frac.pop();
    }
    alloc::format!("{int_part}.{frac}")
}

/// Scales a rational vector to a primitive integer vector (clears
/// denominators, divides by the gcd, makes the first nonzero entry positive).
/// Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rat]) -> Option<alloc::vec::Vec<BigInt>> {
    use num_integer::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: alloc::vec::Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    for x in &mut ints {
        *x = &*x / &gcd;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -x.clone();
        }
    }
    Some(ints)
}
