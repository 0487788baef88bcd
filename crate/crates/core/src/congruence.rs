//! `SL₂(ℤ)`, its congruence subgroups, the Des and V maps, and the finite
//! action factors on theta structures.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

/// `(a b; c d)` with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct SL2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2Matrix {
    pub const I: SL2Matrix = SL2Matrix { a: 1, b: 0, c: 0, d: 1 };
    pub const MINUS_I: SL2Matrix = SL2Matrix { a: -1, b: 0, c: 0, d: -1 };
    pub const S: SL2Matrix = SL2Matrix { a: 0, b: -1, c: 1, d: 0 };
    pub const T: SL2Matrix = SL2Matrix { a: 1, b: 1, c: 0, d: 1 };
    pub const T_INV: SL2Matrix = SL2Matrix { a: 1, b: -1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular(det.clamp(i64::MIN as i128, i64::MAX as i128) as i64));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    pub fn t_pow(k: i64) -> Self {
        SL2Matrix { a: 1, b: k, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> SL2Matrix {
        SL2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> SL2Matrix {
        SL2Matrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.entries().iter().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Möbius action on the upper half plane.
    pub fn act(&self, tau: num_complex::Complex64) -> num_complex::Complex64 {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }
}

impl TryFrom<[i64; 4]> for SL2Matrix {
    type Error = Error;

    fn try_from(e: [i64; 4]) -> Result<Self> {
        SL2Matrix::new(e[0], e[1], e[2], e[3])
    }
}

impl From<SL2Matrix> for [i64; 4] {
    fn from(m: SL2Matrix) -> Self {
        m.entries()
    }
}

impl FromStr for SL2Matrix {
    type Err = Error;

    /// Parses `"a,b,c,d"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry '{p}'"))))
            .collect::<Result<Vec<_>>>()?;
        let arr: [i64; 4] =
            parts.try_into().map_err(|_| Error::Parse(format!("expected four entries 'a,b,c,d', got '{s}'")))?;
        SL2Matrix::try_from(arr)
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// A congruence subgroup of `SL₂(ℤ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruenceGroup {
    /// `Γ(N)`: `γ ≡ I (N)`.
    Gamma(u64),
    /// `Γ₀(N)`: `c ≡ 0 (N)`.
    Gamma0(u64),
    /// `Γ(m,2m)`: `a,d ≡ 1 (m)` and `b,c ≡ 0 (2m)`.
    GammaM2M(u64),
    /// `Γ(1,2)`: `ab ≡ cd ≡ 0 (2)`.
    Theta12,
}

impl CongruenceGroup {
    /// A modulus at which membership is decided.
    pub fn level(&self) -> u64 {
        match *self {
            CongruenceGroup::Gamma(n) | CongruenceGroup::Gamma0(n) => n.max(1),
            CongruenceGroup::GammaM2M(m) => 2 * m.max(1),
            CongruenceGroup::Theta12 => 2,
        }
    }

    fn contains_residues(&self, [a, b, c, d]: [i64; 4]) -> bool {
        let cong = |x: i64, r: i64, n: u64| (x - r).rem_euclid(n as i64) == 0;
        match *self {
            CongruenceGroup::Gamma(n) => cong(a, 1, n) && cong(d, 1, n) && cong(b, 0, n) && cong(c, 0, n),
            CongruenceGroup::Gamma0(n) => cong(c, 0, n),
            CongruenceGroup::GammaM2M(m) => cong(a, 1, m) && cong(d, 1, m) && cong(b, 0, 2 * m) && cong(c, 0, 2 * m),
            CongruenceGroup::Theta12 => cong(a * b, 0, 2) && cong(c * d, 0, 2),
        }
    }

    pub fn parse(name: &str, param: Option<u64>) -> Result<Self> {
        let need = || param.ok_or_else(|| Error::Parse(format!("group '{name}' needs a level parameter")));
        match name {
            "gamma" => Ok(CongruenceGroup::Gamma(need()?)),
            "gamma0" => Ok(CongruenceGroup::Gamma0(need()?)),
            "gamma-m-2m" | "gammam2m" => Ok(CongruenceGroup::GammaM2M(need()?)),
            "theta12" | "gamma-1-2" => Ok(CongruenceGroup::Theta12),
            other => Err(Error::Parse(format!("unknown group '{other}'"))),
        }
    }
}

impl fmt::Display for CongruenceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceGroup::Gamma(n) => write!(f, "Γ({n})"),
            CongruenceGroup::Gamma0(n) => write!(f, "Γ₀({n})"),
            CongruenceGroup::GammaM2M(m) => write!(f, "Γ({m},{})", 2 * m),
            CongruenceGroup::Theta12 => write!(f, "Γ(1,2)"),
        }
    }
}

pub fn member(gamma: &SL2Matrix, group: CongruenceGroup) -> bool {
    group.contains_residues(gamma.entries())
}

fn require(gamma: &SL2Matrix, group: CongruenceGroup) -> Result<()> {
    if member(gamma, group) {
        Ok(())
    } else {
        Err(Error::NotMember(format!("{gamma} is not in {group}")))
    }
}

fn require_even(m: u64) -> Result<()> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::BadIndex(format!("m = {m} must be even and positive")));
    }
    Ok(())
}

/// `Des(a,b;c,d) = (a, bm; c/m, d)`, a homomorphism `Γ₀(2m) → Γ(1,2)`.
pub fn des_hom(gamma: &SL2Matrix, m: u64) -> Result<SL2Matrix> {
    require_even(m)?;
    require(gamma, CongruenceGroup::Gamma0(2 * m))?;
    let m = m as i64;
    Ok(SL2Matrix { a: gamma.a, b: gamma.b * m, c: gamma.c / m, d: gamma.d })
}

/// `V(a,b;c,d) = (a, 2b; c/2, d)` on `Γ₀(2)`.
pub fn v_hom(gamma: &SL2Matrix) -> Result<SL2Matrix> {
    require(gamma, CongruenceGroup::Gamma0(2))?;
    Ok(SL2Matrix { a: gamma.a, b: 2 * gamma.b, c: gamma.c / 2, d: gamma.d })
}

/// `e^{−2πi/(2m)·(ab·u₁² + (ad+bc−1)·u₁u₂ + cd·u₂²)}` for `γ ∈ Γ(m)`.
pub fn theta_action_factor(gamma: &SL2Matrix, m: u64, u1: i64, u2: i64) -> Result<RootOfUnity> {
    require_even(m)?;
    require(gamma, CongruenceGroup::Gamma(m))?;
    let n = 2 * m as i128;
    let (a, b, c, d) = (gamma.a as i128, gamma.b as i128, gamma.c as i128, gamma.d as i128);
    let (u1, u2) = (u1 as i128, u2 as i128);
    let q =
        (a * b).rem_euclid(n) * u1 * u1 + (a * d + b * c - 1).rem_euclid(n) * u1 * u2 + (c * d).rem_euclid(n) * u2 * u2;
    Ok(RootOfUnity::new(-(q.rem_euclid(n) as i64), n as u64))
}

/// `e^{−2πi/(2m)·cd·u²}` for `γ ∈ Γ₀(m)`.
pub fn splitting_action_factor(gamma: &SL2Matrix, m: u64, u: i64) -> Result<RootOfUnity> {
    require_even(m)?;
    require(gamma, CongruenceGroup::Gamma0(m))?;
    let n = 2 * m as i128;
    let q = (gamma.c as i128 * gamma.d as i128).rem_euclid(n) * (u as i128 * u as i128).rem_euclid(n);
    Ok(RootOfUnity::new(-(q.rem_euclid(n) as i64), n as u64))
}

/// `e^{−2πi·2m·w₁w₂}` at `w₁ = u₁/2`, `w₂ = u₂/(2m)`.
pub fn descended_theta_char(m: u64, u1: i64, u2: i64) -> Result<RootOfUnity> {
    require_even(m)?;
    let num = 2 * m as i64 * u1.rem_euclid(2) * u2.rem_euclid(2);
    Ok(RootOfUnity::new(-num, 4 * m))
}

fn reduce(e: [i64; 4], l: u64) -> [i64; 4] {
    e.map(|x| x.rem_euclid(l as i64))
}

fn mul_mod(x: [i64; 4], y: [i64; 4], l: u64) -> [i64; 4] {
    let [a, b, c, d] = x;
    let [p, q, r, s] = y;
    reduce([a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s], l)
}

/// `SL₂(ℤ/L)`, reached from the identity by `S` and `T`.
fn sl2_mod(l: u64) -> Vec<[i64; 4]> {
    let id = reduce([1, 0, 0, 1], l);
    let gens = [reduce(SL2Matrix::S.entries(), l), reduce(SL2Matrix::T.entries(), l)];
    let mut seen = HashSet::from([id]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul_mod(x, *g, l);
            if seen.insert(y) {
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

/// `[sup : sub]` computed in `SL₂(ℤ/L)`; `L` must be a multiple of both levels.
pub fn relative_index(sub: CongruenceGroup, sup: CongruenceGroup, l: u64) -> Result<u64> {
    for g in [sub, sup] {
        if l == 0 || !l.is_multiple_of(g.level()) {
            return Err(Error::BadIndex(format!("modulus {l} is not a multiple of the level of {g}")));
        }
    }
    let els = sl2_mod(l);
    let n_sup = els.iter().filter(|e| sup.contains_residues(**e)).count() as u64;
    let n_sub = els.iter().filter(|e| sub.contains_residues(**e) && sup.contains_residues(**e)).count() as u64;
    if n_sub == 0 || !n_sup.is_multiple_of(n_sub) {
        return Err(Error::BadIndex(format!("{sub} is not a subgroup of {sup} mod {l}")));
    }
    Ok(n_sup / n_sub)
}

/// Index in `SL₂(ℤ)` by coset enumeration over `SL₂(ℤ/L)`, `L` a multiple of the level.
pub fn subgroup_index_at(group: CongruenceGroup, l: u64) -> Result<u64> {
    relative_index(group, CongruenceGroup::Gamma(1), l)
}

pub fn subgroup_index(group: CongruenceGroup) -> u64 {
    subgroup_index_at(group, group.level()).expect("the level is a valid modulus")
}
