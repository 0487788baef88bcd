//! `Mp₂(ℤ)`: pairs `(γ, φ)` with `φ(τ)² = cτ + d`.
//!
//! Branches use the principal square root with `arg ∈ (−π, π]`, so
//! `√(−1) = i`. The sign of a product is read off numerically at `τ₀ = 2i`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::congruence::{member, CongruenceGroup, SL2Matrix};
use crate::cyclo::{format_complex, RootOfUnity};
use crate::error::{Error, Result};
use crate::symplectic4::{discriminant, Mod4SymplecticElement, Parity};
use crate::thetanum;

/// Probe point for branch bookkeeping.
pub const TAU0: Complex64 = Complex64::new(0.0, 2.0);
/// Second probe point for `τ`-independence checks.
pub const TAU1: Complex64 = Complex64::new(0.3, 1.1);

const BRANCH_TOL: f64 = 1e-6;

/// Principal square root, `arg ∈ (−π, π]`.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        Complex64::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MpElement {
    pub gamma: SL2Matrix,
    /// `φ = eps·principal√(cτ+d)`, `eps ∈ {+1, −1}`.
    pub eps: i8,
}

impl MpElement {
    pub const IDENTITY: MpElement = MpElement { gamma: SL2Matrix::I, eps: 1 };
    pub const MINUS_ONE: MpElement = MpElement { gamma: SL2Matrix::I, eps: -1 };
    pub const S: MpElement = MpElement { gamma: SL2Matrix::S, eps: 1 };
    pub const T: MpElement = MpElement { gamma: SL2Matrix::T, eps: 1 };
    pub const T_INV: MpElement = MpElement { gamma: SL2Matrix::T_INV, eps: 1 };

    pub fn new(gamma: SL2Matrix, eps: i8) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::Parse(format!("branch sign must be ±1, got {eps}")));
        }
        Ok(MpElement { gamma, eps })
    }

    pub fn phi(&self, tau: Complex64) -> Complex64 {
        phi_eval(self, tau)
    }

    pub fn is_central(&self) -> bool {
        self.gamma == SL2Matrix::I
    }
}

impl FromStr for MpElement {
    type Err = Error;

    /// Parses `"a,b,c,d:+"` or `"a,b,c,d:-"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (mat, sign) = s.rsplit_once(':').ok_or_else(|| Error::Parse(format!("expected 'a,b,c,d:±', got '{s}'")))?;
        let eps = match sign.trim() {
            "+" | "+1" | "1" => 1,
            "-" | "-1" => -1,
            other => return Err(Error::Parse(format!("bad branch sign '{other}'"))),
        };
        MpElement::new(mat.parse()?, eps)
    }
}

impl fmt::Display for MpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.gamma;
        write!(f, "({},{},{},{}:{})", g.a, g.b, g.c, g.d, if self.eps > 0 { '+' } else { '-' })
    }
}

/// `φ(τ) = eps·principal√(cτ + d)`.
pub fn phi_eval(p: &MpElement, tau: Complex64) -> Complex64 {
    let g = p.gamma;
    principal_sqrt(tau * g.c as f64 + g.d as f64) * p.eps as f64
}

/// `(γ₁, φ₁)(γ₂, φ₂) = (γ₁γ₂, φ₁(γ₂τ)φ₂(τ))`.
pub fn mp_mul(p: &MpElement, q: &MpElement) -> Result<MpElement> {
    let gamma = p.gamma.mul(&q.gamma);
    let value = phi_eval(p, q.gamma.act(TAU0)) * phi_eval(q, TAU0);
    let principal = phi_eval(&MpElement { gamma, eps: 1 }, TAU0);
    let ratio = value / principal;
    let eps = if (ratio - 1.0).norm() < BRANCH_TOL {
        1
    } else if (ratio + 1.0).norm() < BRANCH_TOL {
        -1
    } else {
        return Err(Error::BranchResolutionFailure(format!(
            "{p}·{q}: branch ratio {} is not ±1",
            format_complex(ratio)
        )));
    };
    Ok(MpElement { gamma, eps })
}

pub fn mp_inv(p: &MpElement) -> Result<MpElement> {
    let gamma = p.gamma.inv();
    // (γ⁻¹, ψ) with ψ(τ)·φ(γ⁻¹τ) = 1
    let psi = phi_eval(p, gamma.act(TAU0)).inv();
    let principal = phi_eval(&MpElement { gamma, eps: 1 }, TAU0);
    let ratio = psi / principal;
    if (ratio - 1.0).norm() < BRANCH_TOL {
        Ok(MpElement { gamma, eps: 1 })
    } else if (ratio + 1.0).norm() < BRANCH_TOL {
        Ok(MpElement { gamma, eps: -1 })
    } else {
        Err(Error::BranchResolutionFailure(format!("inverse of {p}: branch ratio {}", format_complex(ratio))))
    }
}

pub fn mp_product<'a>(word: impl IntoIterator<Item = &'a MpElement>) -> Result<MpElement> {
    word.into_iter().try_fold(MpElement::IDENTITY, |acc, x| mp_mul(&acc, x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StLetter {
    S,
    T,
    TInv,
}

impl StLetter {
    pub fn matrix(self) -> SL2Matrix {
        match self {
            StLetter::S => SL2Matrix::S,
            StLetter::T => SL2Matrix::T,
            StLetter::TInv => SL2Matrix::T_INV,
        }
    }

    /// The lift with the principal branch.
    pub fn lift(self) -> MpElement {
        match self {
            StLetter::S => MpElement::S,
            StLetter::T => MpElement::T,
            StLetter::TInv => MpElement::T_INV,
        }
    }
}

fn push_t_power(word: &mut Vec<StLetter>, k: i64) {
    let letter = if k >= 0 { StLetter::T } else { StLetter::TInv };
    word.extend(std::iter::repeat_n(letter, k.unsigned_abs() as usize));
}

/// Nearest-integer quotient, ties toward zero.
fn round_div(a: i64, c: i64) -> i64 {
    let q = a.div_euclid(c);
    let r = a - q * c;
    if 2 * r.abs() > c.abs() {
        q + c.signum()
    } else {
        q
    }
}

/// Euclid on the bottom row: `γ = T^{n₁} S T^{n₂} S ⋯ (±T^k)`.
pub fn st_factor(gamma: &SL2Matrix) -> Vec<StLetter> {
    let mut word = Vec::new();
    let mut m = *gamma;
    while m.c != 0 {
        let n = round_div(m.a, m.c);
        push_t_power(&mut word, n);
        m = SL2Matrix { a: m.a - n * m.c, b: m.b - n * m.d, c: m.c, d: m.d };
        word.push(StLetter::S);
        m = SL2Matrix { a: m.c, b: m.d, c: -m.a, d: -m.b };
    }
    if m.a == 1 {
        push_t_power(&mut word, m.b);
    } else {
        // (−1, b; 0, −1) = S²·T^{−b}
        word.push(StLetter::S);
        word.push(StLetter::S);
        push_t_power(&mut word, -m.b);
    }
    word
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MpLetter {
    /// `(S, +)`
    S,
    /// `(T, +)`
    T,
    /// `(I, −)`
    Z,
}

impl MpLetter {
    pub fn element(self) -> MpElement {
        match self {
            MpLetter::S => MpElement::S,
            MpLetter::T => MpElement::T,
            MpLetter::Z => MpElement::MINUS_ONE,
        }
    }
}

/// A word in `(S,+)`, `(T,+)` with at most one trailing `(I,−)` whose product is `p`.
pub fn mp_lift_word(p: &MpElement) -> Result<Vec<MpLetter>> {
    let mut word = Vec::new();
    for letter in st_factor(&p.gamma) {
        match letter {
            StLetter::S => word.push(MpLetter::S),
            StLetter::T => word.push(MpLetter::T),
            // T⁻¹ = S³TSTS in SL₂(ℤ)
            StLetter::TInv => {
                word.extend([MpLetter::S, MpLetter::S, MpLetter::S, MpLetter::T, MpLetter::S, MpLetter::T, MpLetter::S])
            }
        }
    }
    let lifted = word.iter().try_fold(MpElement::IDENTITY, |acc, l| mp_mul(&acc, &l.element()))?;
    debug_assert_eq!(lifted.gamma, p.gamma);
    if lifted.eps != p.eps {
        word.push(MpLetter::Z);
    }
    Ok(word)
}

/// The `λ(γ mod 4)` used in the square identity for `λ̃`.
pub fn discriminant_of(gamma: &SL2Matrix) -> Result<RootOfUnity> {
    let g = Mod4SymplecticElement::from_entries(&gamma.entries(), Parity::Even)?;
    discriminant(&g)
}

fn tilde_lambda_at(p: &MpElement, tau: Complex64) -> Result<RootOfUnity> {
    let ratio = phi_eval(p, tau) * thetanum::jacobi_theta_unchecked(tau, None)?
        / thetanum::jacobi_theta_unchecked(tau, Some(&p.gamma))?;
    RootOfUnity::snap(ratio, 8, BRANCH_TOL)
}

/// `λ̃(γ, φ) = φ(τ₀)·ϑ(τ₀)/ϑ(γτ₀)` snapped to `μ₈`, for `γ ∈ Γ(1,2)`.
pub fn tilde_lambda(p: &MpElement) -> Result<RootOfUnity> {
    if !member(&p.gamma, CongruenceGroup::Theta12) {
        return Err(Error::NotMember(format!("{} is not in Γ(1,2)", p.gamma)));
    }
    tilde_lambda_at(p, TAU0)
}

/// Second-probe evaluation, for `τ`-independence checks.
pub fn tilde_lambda_probe(p: &MpElement, tau: Complex64) -> Result<RootOfUnity> {
    if !member(&p.gamma, CongruenceGroup::Theta12) {
        return Err(Error::NotMember(format!("{} is not in Γ(1,2)", p.gamma)));
    }
    tilde_lambda_at(p, tau)
}

/// How `λ̃` sits relative to the worked example and to `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeLambdaConvention {
    pub at_s: RootOfUnity,
    /// Whether `λ̃(S, √τ) = √−i`.
    pub matches_seven_eighths: bool,
    /// The `s` with `λ̃² = λ^s` on every sampled element, if one exists.
    pub square_exponent: Option<i8>,
    pub sampled: usize,
}

/// Samples `Γ(1,2)` with entries bounded by `bound`, both branches.
pub fn tilde_lambda_s_convention(bound: i64) -> Result<TildeLambdaConvention> {
    let at_s = tilde_lambda(&MpElement::S)?;
    let mut plus = true;
    let mut minus = true;
    let mut sampled = 0;
    for gamma in theta12_elements(bound) {
        let lam = discriminant_of(&gamma)?;
        for eps in [1, -1] {
            let sq = tilde_lambda(&MpElement { gamma, eps })?.pow(2);
            plus &= sq == lam;
            minus &= sq == lam.inv();
            sampled += 1;
        }
    }
    let square_exponent = match (plus, minus) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    };
    Ok(TildeLambdaConvention { at_s, matches_seven_eighths: at_s == RootOfUnity::new(7, 8), square_exponent, sampled })
}

/// Every `γ ∈ Γ(1,2)` with `|a|,|b|,|c| ≤ bound` (and `d` determined, also bounded).
pub fn theta12_elements(bound: i64) -> Vec<SL2Matrix> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let candidates: Vec<i64> = if a != 0 {
                    // ad = 1 + bc
                    if (1 + b * c) % a == 0 {
                        vec![(1 + b * c) / a]
                    } else {
                        vec![]
                    }
                } else if b * c == -1 {
                    (-bound..=bound).collect()
                } else {
                    vec![]
                };
                for d in candidates {
                    if d.abs() > bound {
                        continue;
                    }
                    let g = SL2Matrix { a, b, c, d };
                    if member(&g, CongruenceGroup::Theta12) {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}
