//! Exact roots of unity.
//!
//! A [`RootOfUnity`] is stored as its exponent `q ∈ ℚ/ℤ`, so `e^{2πiq}` never
//! touches floating point until [`RootOfUnity::embed`] is called. Every finite
//! group law in the crate multiplies these, which keeps all identities exact.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `e^{2πi·num/den}` with `0 ≤ num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawExponent")]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

#[derive(Deserialize)]
struct RawExponent {
    num: i64,
    den: u64,
}

impl TryFrom<RawExponent> for RootOfUnity {
    type Error = Error;

    fn try_from(raw: RawExponent) -> Result<Self> {
        if raw.den == 0 {
            return Err(Error::Parse("root of unity with zero denominator".into()));
        }
        Ok(RootOfUnity::new(raw.num, raw.den))
    }
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { num: 1, den: 2 };
    pub const I: RootOfUnity = RootOfUnity { num: 1, den: 4 };

    /// The root `e^{2πi·num/den}`; `num` may be any integer.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let num = (num as i128).rem_euclid(den as i128) as u64;
        let g = num.gcd(&den);
        RootOfUnity { num: num / g, den: den / g }
    }

    /// Primitive-or-not `k`-th power of `ζ_n = e^{2πi/n}`.
    pub fn zeta(n: u64, k: i64) -> Self {
        Self::new(k, n)
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    pub fn inv(self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, e: i64) -> Self {
        let den = self.den as i128;
        let num = ((self.num as i128) * (e as i128)).rem_euclid(den);
        Self::new(num as i64, self.den)
    }

    /// Exponent `k` such that `self = ζ_n^k`, if `self ∈ μ_n`.
    pub fn exponent_mod(self, n: u64) -> Option<u64> {
        if !n.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (n / self.den))
    }

    pub fn embed(self) -> Complex64 {
        if self.num == 0 {
            return Complex64::new(1.0, 0.0);
        }
        // quarter turns are exact
        match (self.num, self.den) {
            (1, 2) => return Complex64::new(-1.0, 0.0),
            (1, 4) => return Complex64::new(0.0, 1.0),
            (3, 4) => return Complex64::new(0.0, -1.0),
            _ => {}
        }
        let theta = std::f64::consts::TAU * (self.num as f64) / (self.den as f64);
        Complex64::new(theta.cos(), theta.sin())
    }

    /// Reads `z` as an element of `μ_order`.
    ///
    /// Requires `tol < 1/(4·order)` so at most one candidate can match.
    pub fn snap(z: Complex64, order: u64, tol: f64) -> Result<Self> {
        assert!(order > 0, "snap order must be positive");
        let no_snap = || Error::NoSnap { value: format_complex(z), order, tol };
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(no_snap());
        }
        let turns = z.arg() / std::f64::consts::TAU * order as f64;
        let k = turns.round() as i64;
        let candidate = RootOfUnity::new(k, order);
        if (z - candidate.embed()).norm() < tol {
            Ok(candidate)
        } else {
            Err(no_snap())
        }
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let l = self.den.lcm(&rhs.den);
        let a = self.num * (l / self.den);
        let b = rhs.num * (l / rhs.den);
        RootOfUnity::new(((a + b) % l) as i64, l)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2pi i {}/{})", self.num, self.den)
    }
}

/// Formats `f64` with 15 significant digits, trimming trailing zeros.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.*e}", 14, x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

/// `"a+bi"` form used on the command line and in JSON.
pub fn format_complex(z: Complex64) -> String {
    let re = format_real(z.re);
    let im = format_real(z.im);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

/// Parses `"a+bi"`, `"a-bi"`, `"a"`, `"bi"` and `"i"`-style literals.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("malformed complex literal '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let parse_im = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => p.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(idx) => {
            let re = body[..idx].parse::<f64>().map_err(|_| bad())?;
            let im = parse_im(&body[idx..])?;
            Ok(Complex64::new(re, im))
        }
        None => Ok(Complex64::new(0.0, parse_im(body)?)),
    }
}
