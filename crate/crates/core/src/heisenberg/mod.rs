//! Finite Heisenberg groups `G(δ) = μ × K(δ)` with the standard symplectic
//! pairing, their symmetric splittings, and symmetric automorphisms.

mod automorphism;
mod descent;
mod splitting;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

pub use automorphism::{
    enumerate_automorphisms_over, enumerate_sym_automorphisms, symplectic_group, HeisenbergAutomorphism, SymplecticMap,
};
pub use descent::{
    maximal_symmetric_pairs, stabilizer_u0, stabilizer_u0sym, v_map_degree, DescentReport, SplittingPair,
    StabilizerReading,
};
pub use splitting::{
    canonical_splitting, enumerate_symmetric_splittings, h2_pushforward_splitting, SymmetricSplitting,
};

/// Largest `|K(δ)|` accepted by the exhaustive enumerations.
pub const MAX_K_ORDER: usize = 1 << 12;

/// Largest symplectic group of `K(δ)` that will be listed element by element.
pub const MAX_SP_ORDER: usize = 100_000;

/// A type `δ = (d₁, …, d_g)` with `d₁ | d₂ | … | d_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ThetaType(Vec<u32>);

impl TryFrom<Vec<u32>> for ThetaType {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        ThetaType::new(v)
    }
}

impl From<ThetaType> for Vec<u32> {
    fn from(t: ThetaType) -> Vec<u32> {
        t.0
    }
}

impl ThetaType {
    pub fn new(divisors: Vec<u32>) -> Result<Self> {
        if divisors.is_empty() {
            return Err(Error::TypeMismatch("empty type".into()));
        }
        if divisors.contains(&0) {
            return Err(Error::TypeMismatch("divisors must be positive".into()));
        }
        if divisors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::TypeMismatch(format!("{divisors:?} is not a divisor chain")));
        }
        Ok(ThetaType(divisors))
    }

    /// Parses `"2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let divisors = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad type '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        ThetaType::new(divisors)
    }

    pub fn divisors(&self) -> &[u32] {
        &self.0
    }

    pub fn genus(&self) -> usize {
        self.0.len()
    }

    /// `d = d₁⋯d_g = |H(δ)|`.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&d| d as usize).product()
    }

    /// `d_g`, which is also the lcm of the chain.
    pub fn exponent(&self) -> u32 {
        *self.0.last().expect("non-empty")
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|d| d % 2 == 0)
    }

    pub fn k_order(&self) -> usize {
        self.degree() * self.degree()
    }

    /// Denominator bound for central scalars: `4·lcm(d_i)`.
    pub fn scalar_modulus(&self) -> u64 {
        4 * self.exponent() as u64
    }

    pub fn doubled(&self) -> ThetaType {
        ThetaType(self.0.iter().map(|d| 2 * d).collect())
    }

    /// `δ` from `2δ`.
    pub fn halved(&self) -> Result<ThetaType> {
        if !self.is_even() {
            return Err(Error::TypeMismatch(format!("type {self} is not divisible by 2")));
        }
        Ok(ThetaType(self.0.iter().map(|d| d / 2).collect()))
    }

    pub(crate) fn require_even(&self) -> Result<()> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::OddType(self.to_string()))
        }
    }

    pub(crate) fn require_enumerable(&self) -> Result<()> {
        if self.k_order() > MAX_K_ORDER {
            Err(Error::TooLarge(format!("|K({self})| = {} exceeds {MAX_K_ORDER}", self.k_order())))
        } else {
            Ok(())
        }
    }

    /// All of `H(δ)` in lexicographic order.
    pub fn h_elements(&self) -> Vec<HVector> {
        let mut out = Vec::with_capacity(self.degree());
        let mut cur = vec![0u32; self.genus()];
        loop {
            out.push(HVector(cur.clone()));
            if !increment(&mut cur, &self.0) {
                return out;
            }
        }
    }

    /// Lexicographic position of `h` in [`ThetaType::h_elements`].
    pub fn h_index(&self, h: &HVector) -> usize {
        h.0.iter().zip(&self.0).fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    /// All of `K(δ)`, ordered lexicographically on `(x, y)`.
    pub fn k_elements(&self) -> Vec<KVector> {
        let hs = self.h_elements();
        let mut out = Vec::with_capacity(hs.len() * hs.len());
        for x in &hs {
            for y in &hs {
                out.push(KVector { x: x.clone(), y: y.clone() });
            }
        }
        out
    }

    pub fn k_index(&self, z: &KVector) -> usize {
        self.h_index(&z.x) * self.degree() + self.h_index(&z.y)
    }

    /// The `2g` standard generators `e_1, …, e_{2g}` of `K(δ)`.
    pub fn k_basis(&self) -> Vec<KVector> {
        let g = self.genus();
        (0..2 * g)
            .map(|j| {
                let mut z = KVector::zero(g);
                if j < g {
                    z.x.0[j] = 1;
                } else {
                    z.y.0[j - g] = 1;
                }
                z
            })
            .collect()
    }

    /// Modulus of coordinate `j` of `K(δ)` (`j < 2g`).
    pub fn k_modulus(&self, j: usize) -> u32 {
        self.0[j % self.genus()]
    }
}

fn increment(cur: &mut [u32], moduli: &[u32]) -> bool {
    for i in (0..cur.len()).rev() {
        cur[i] += 1;
        if cur[i] < moduli[i] {
            return true;
        }
        cur[i] = 0;
    }
    false
}

impl fmt::Display for ThetaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of `H(δ) = ∏ ℤ/d_iℤ`, coordinates already reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HVector(pub Vec<u32>);

impl HVector {
    pub fn zero(g: usize) -> Self {
        HVector(vec![0; g])
    }

    pub fn reduce(coords: &[i64], t: &ThetaType) -> Self {
        HVector(coords.iter().zip(t.divisors()).map(|(&c, &d)| c.rem_euclid(d as i64) as u32).collect())
    }

    pub fn add(&self, other: &HVector, t: &ThetaType) -> HVector {
        HVector(self.0.iter().zip(&other.0).zip(t.divisors()).map(|((a, b), d)| (a + b) % d).collect())
    }

    pub fn neg(&self, t: &ThetaType) -> HVector {
        HVector(self.0.iter().zip(t.divisors()).map(|(a, d)| (d - a) % d).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// `z = (x, y) ∈ K(δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KVector {
    pub x: HVector,
    pub y: HVector,
}

impl KVector {
    pub fn zero(g: usize) -> Self {
        KVector { x: HVector::zero(g), y: HVector::zero(g) }
    }

    pub fn new(x: &[i64], y: &[i64], t: &ThetaType) -> Self {
        KVector { x: HVector::reduce(x, t), y: HVector::reduce(y, t) }
    }

    /// Coordinates as `(x₁..x_g, y₁..y_g)`.
    pub fn coords(&self) -> Vec<u32> {
        self.x.0.iter().chain(&self.y.0).copied().collect()
    }

    pub fn from_coords(c: &[i64], t: &ThetaType) -> Self {
        let g = t.genus();
        KVector::new(&c[..g], &c[g..], t)
    }

    pub fn add(&self, other: &KVector, t: &ThetaType) -> KVector {
        KVector { x: self.x.add(&other.x, t), y: self.y.add(&other.y, t) }
    }

    pub fn neg(&self, t: &ThetaType) -> KVector {
        KVector { x: self.x.neg(t), y: self.y.neg(t) }
    }

    pub fn scale(&self, k: i64, t: &ThetaType) -> KVector {
        let c: Vec<i64> = self.coords().iter().map(|&v| v as i64 * k).collect();
        KVector::from_coords(&c, t)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `2z = 0`.
    pub fn is_two_torsion(&self, t: &ThetaType) -> bool {
        self.scale(2, t).is_zero()
    }

    fn check(&self, t: &ThetaType) -> Result<()> {
        let g = t.genus();
        let ok = self.x.0.len() == g
            && self.y.0.len() == g
            && self.x.0.iter().zip(t.divisors()).all(|(c, d)| c < d)
            && self.y.0.iter().zip(t.divisors()).all(|(c, d)| c < d);
        if ok {
            Ok(())
        } else {
            Err(Error::TypeMismatch(format!("{self:?} is not a reduced element of K{t}")))
        }
    }
}

/// `⟨x, y⟩_δ = ⟨(x,0),(0,y)⟩_δ = ∏ ζ_{d_ν}^{-x_ν y_ν}`.
pub fn h_pairing(x: &HVector, y: &HVector, t: &ThetaType) -> RootOfUnity {
    let l = t.exponent() as i64;
    let e: i64 =
        x.0.iter().zip(&y.0).zip(t.divisors()).map(|((&a, &b), &d)| (a as i64) * (b as i64) * (l / d as i64)).sum();
    RootOfUnity::new(-e, l as u64)
}

/// The standard symplectic pairing of type `δ`:
/// `⟨e_ν, e_{g+ν}⟩ = ζ_{d_ν}^{-1}`, `⟨e_{g+ν}, e_ν⟩ = ζ_{d_ν}`.
pub fn pairing(z1: &KVector, z2: &KVector, t: &ThetaType) -> Result<RootOfUnity> {
    z1.check(t)?;
    z2.check(t)?;
    Ok(h_pairing(&z1.x, &z2.y, t) * h_pairing(&z2.x, &z1.y, t).inv())
}

/// `(λ, x, y) ∈ G(δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub lambda: RootOfUnity,
    pub z: KVector,
    pub theta_type: ThetaType,
}

impl HeisenbergElement {
    pub fn new(lambda: RootOfUnity, z: KVector, theta_type: ThetaType) -> Result<Self> {
        z.check(&theta_type)?;
        Ok(HeisenbergElement { lambda, z, theta_type })
    }

    pub fn identity(t: &ThetaType) -> Self {
        HeisenbergElement { lambda: RootOfUnity::ONE, z: KVector::zero(t.genus()), theta_type: t.clone() }
    }

    /// Parses `"q,x1..xg,y1..yg"` where `q` is the scalar exponent `num/den`.
    pub fn parse(s: &str, t: &ThetaType) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Heisenberg element '{s}'"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 1 + 2 * t.genus() {
            return Err(bad());
        }
        let lambda = match parts[0].split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.parse().map_err(|_| bad())?;
                let d: u64 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                RootOfUnity::new(n, d)
            }
            None => {
                let n: i64 = parts[0].parse().map_err(|_| bad())?;
                RootOfUnity::new(n, 1)
            }
        };
        let coords = parts[1..].iter().map(|p| p.parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        HeisenbergElement::new(lambda, KVector::from_coords(&coords, t), t.clone())
    }

    fn same_type(&self, other: &HeisenbergElement) -> Result<()> {
        if self.theta_type == other.theta_type {
            Ok(())
        } else {
            Err(Error::TypeMismatch(format!("{} vs {}", self.theta_type, other.theta_type)))
        }
    }
}

/// `(λ₁, x₁, y₁)(λ₂, x₂, y₂) = (λ₁λ₂⟨x₁, y₂⟩_δ, x₁ + x₂, y₁ + y₂)`.
pub fn hmul(a: &HeisenbergElement, b: &HeisenbergElement) -> Result<HeisenbergElement> {
    a.same_type(b)?;
    let t = &a.theta_type;
    Ok(HeisenbergElement {
        lambda: a.lambda * b.lambda * h_pairing(&a.z.x, &b.z.y, t),
        z: a.z.add(&b.z, t),
        theta_type: t.clone(),
    })
}

/// Inverse under [`hmul`]: `(λ⁻¹⟨x, y⟩_δ, −z)`.
pub fn hinv(a: &HeisenbergElement) -> HeisenbergElement {
    let t = &a.theta_type;
    HeisenbergElement { lambda: a.lambda.inv() * h_pairing(&a.z.x, &a.z.y, t), z: a.z.neg(t), theta_type: t.clone() }
}

/// `D_{−1}(λ, z) = (λ, −z)`.
pub fn d_minus_one(a: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement { lambda: a.lambda, z: a.z.neg(&a.theta_type), theta_type: a.theta_type.clone() }
}

/// The inner automorphism `i(z): (λ, z') ↦ (λ⟨z, z'⟩_δ, z')`.
pub fn inner_auto(z: &KVector, a: &HeisenbergElement) -> Result<HeisenbergElement> {
    let p = pairing(z, &a.z, &a.theta_type)?;
    Ok(HeisenbergElement { lambda: a.lambda * p, z: a.z.clone(), theta_type: a.theta_type.clone() })
}

/// `H₂: G(2δ) → G(δ)`, `(λ, z) ↦ (λ², 2z)` with `2·ℤ/2d ≅ ℤ/d`.
pub fn h2_map(a: &HeisenbergElement) -> Result<HeisenbergElement> {
    let half = a.theta_type.halved()?;
    let reduce = |h: &HVector| HVector(h.0.iter().zip(half.divisors()).map(|(c, d)| c % d).collect());
    Ok(HeisenbergElement {
        lambda: a.lambda * a.lambda,
        z: KVector { x: reduce(&a.z.x), y: reduce(&a.z.y) },
        theta_type: half,
    })
}

/// All `(λ, z)` with `λ ∈ μ_n`, in canonical order.
pub fn elements_with_center(t: &ThetaType, n: u64) -> Vec<HeisenbergElement> {
    let ks = t.k_elements();
    let mut out = Vec::with_capacity(ks.len() * n as usize);
    for k in 0..n as i64 {
        for z in &ks {
            out.push(HeisenbergElement { lambda: RootOfUnity::zeta(n, k), z: z.clone(), theta_type: t.clone() });
        }
    }
    out
}
