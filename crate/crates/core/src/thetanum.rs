//! Certified theta series and the analytic checks built on them.
//!
//! `ϑ_{m,ν}(τ) = Σ_{r ≡ ν (m)} e^{2πiτr²/2m}` and `ϑ(τ) = Σ_n e^{πin²τ}`
//! (which is `ϑ_{1,0}`). Points `γτ` are formed in double-double arithmetic
//! and every phase `Re(τ)·r²/2m` is reduced mod 1 before it meets `sin`/`cos`,
//! so evaluation stays accurate far closer to the real axis than the
//! public `Im τ ≥ 0.1` contract: the error is governed by the input, not by
//! the size of `r²`.

use std::f64::consts::{PI, TAU};
use std::sync::atomic::{AtomicU8, Ordering};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::congruence::{member, CongruenceGroup, SL2Matrix};
use crate::cyclo::{format_complex, format_real, RootOfUnity};
use crate::error::{Error, Result};
use crate::metaplectic::{phi_eval, MpElement};
use crate::weilrep::weil_rep;

/// Public evaluation floor for `Im τ`.
pub const EVAL_IM_FLOOR: f64 = 0.1;
/// Floor for the base point of functional-equation and transformation checks.
pub const VERIFY_IM_FLOOR: f64 = 0.5;
/// Floor for transformed points `γτ`, which are evaluated in extended precision.
pub const INTERNAL_IM_FLOOR: f64 = 1e-9;

/// Absolute truncation target used for internal evaluations.
const INTERNAL_TOL: f64 = 1e-15;
const SNAP_TOL: f64 = 1e-6;

/// A point of the upper half plane held in double-double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    pub x: TwoFloat,
    pub y: TwoFloat,
}

impl HalfPlanePoint {
    pub fn new(tau: Complex64) -> Self {
        HalfPlanePoint { x: TwoFloat::from(tau.re), y: TwoFloat::from(tau.im) }
    }

    /// `γ·self`, with `Im(γτ) = Im τ/|cτ+d|²`.
    pub fn moebius(&self, g: &SL2Matrix) -> Self {
        let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
        let nx = self.x * a + b;
        let ny = self.y * a;
        let dx = self.x * c + d;
        let dy = self.y * c;
        let den = dx * dx + dy * dy;
        HalfPlanePoint { x: (nx * dx + ny * dy) / den, y: self.y / den }
    }

    pub fn scale(&self, k: f64) -> Self {
        HalfPlanePoint { x: self.x * k, y: self.y * k }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(f64::from(self.x), f64::from(self.y))
    }

    pub fn im(&self) -> f64 {
        f64::from(self.y)
    }
}

fn tail_bound(m: u32, y: f64, r: u64) -> f64 {
    let k = PI * y / m as f64;
    let r = r as f64;
    2.0 * (-k * r * r).exp() / (1.0 - (-k * (2.0 * r + 1.0)).exp())
}

fn radius_unchecked(m: u32, y: f64, tol: f64) -> u64 {
    let mut hi = 1u64;
    while tail_bound(m, y, hi) >= tol {
        hi *= 2;
    }
    let mut lo = 0u64;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if tail_bound(m, y, mid) < tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 || !tol.is_finite() {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::BadIndex(format!("m = {m} must be even and positive")));
    }
    Ok(())
}

fn floor(im: f64, floor: f64) -> Result<()> {
    if im.is_nan() || im < floor {
        return Err(Error::TauTooLow { im, floor });
    }
    Ok(())
}

/// Smallest `R` whose certified tail `2e^{−πyR²/m}/(1−e^{−πy(2R+1)/m})` is below `tol`.
pub fn truncation_radius(m: u32, im_tau: f64, tol: f64) -> Result<u64> {
    floor(im_tau, EVAL_IM_FLOOR)?;
    check_tol(tol)?;
    if m == 0 {
        return Err(Error::BadIndex("m must be positive".into()));
    }
    Ok(radius_unchecked(m, im_tau, tol))
}

/// `Σ_{|r| ≤ R} e^{2πiτr²/2m}` bucketed by `r mod m`, summed in ascending `r`.
fn theta_buckets(m: u32, tau: &HalfPlanePoint, radius: u64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); m as usize];
    let two_m = 2.0 * m as f64;
    let y = f64::from(tau.y);
    let r = radius as i64;
    for k in -r..=r {
        let r2 = (k * k) as f64;
        let turns = tau.x * r2 / two_m;
        let frac = f64::from(turns - turns.floor());
        let decay = (-PI * y * r2 / m as f64).exp();
        out[k.rem_euclid(m as i64) as usize] += Complex64::from_polar(decay, TAU * frac);
    }
    out
}

fn theta_vector_at(m: u32, tau: &HalfPlanePoint, tol: f64) -> (Vec<Complex64>, f64) {
    let y = f64::from(tau.y);
    let radius = radius_unchecked(m, y, tol);
    (theta_buckets(m, tau, radius), tail_bound(m, y, radius))
}

/// `ϑ` at an extended-precision point.
pub fn jacobi_theta_at(tau: &HalfPlanePoint) -> Result<Complex64> {
    floor(tau.im(), INTERNAL_IM_FLOOR)?;
    Ok(theta_vector_at(1, tau, INTERNAL_TOL).0[0])
}

/// `ϑ(τ)` or, given `γ`, `ϑ(γτ)` with `γτ` formed in extended precision.
pub fn jacobi_theta_unchecked(tau: Complex64, gamma: Option<&SL2Matrix>) -> Result<Complex64> {
    let p = HalfPlanePoint::new(tau);
    jacobi_theta_at(&gamma.map_or(p, |g| p.moebius(g)))
}

/// `ϑ(τ) = Σ_n e^{πin²τ}`.
pub fn riemann_theta(tau: Complex64, tol: f64) -> Result<Complex64> {
    floor(tau.im, EVAL_IM_FLOOR)?;
    check_tol(tol)?;
    Ok(theta_vector_at(1, &HalfPlanePoint::new(tau), tol).0[0])
}

/// The `m` theta constants at `τ` with a shared certified truncation bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaVector {
    pub m: u32,
    pub tau: Complex64,
    pub values: Vec<Complex64>,
    pub err_bound: f64,
}

impl Serialize for ThetaVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ThetaVector", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("tau", &format_complex(self.tau))?;
        st.serialize_field("values", &self.values.iter().map(|&z| format_complex(z)).collect::<Vec<_>>())?;
        st.serialize_field("err_bound", &format_real(self.err_bound))?;
        st.end()
    }
}

pub fn theta_constants(m: u32, tau: Complex64, tol: f64) -> Result<ThetaVector> {
    check_m(m)?;
    floor(tau.im, EVAL_IM_FLOOR)?;
    check_tol(tol)?;
    let (values, err_bound) = theta_vector_at(m, &HalfPlanePoint::new(tau), tol);
    Ok(ThetaVector { m, tau, values, err_bound })
}

/// Theta constants at `γτ`, `γτ` formed in extended precision.
pub fn theta_constants_at(m: u32, tau: &HalfPlanePoint, tol: f64) -> Result<ThetaVector> {
    check_m(m)?;
    floor(tau.im(), INTERNAL_IM_FLOOR)?;
    check_tol(tol)?;
    let (values, err_bound) = theta_vector_at(m, tau, tol);
    Ok(ThetaVector { m, tau: tau.to_complex(), values, err_bound })
}

fn require(gamma: &SL2Matrix, group: CongruenceGroup) -> Result<()> {
    if member(gamma, group) {
        Ok(())
    } else {
        Err(Error::NotMember(format!("{gamma} is not in {group}")))
    }
}

/// `λ(γ)`, read off `(cτ+d)·ϑ(τ)²/ϑ(γτ)²` in `μ₄`.
pub fn functional_eq_lambda(gamma: &SL2Matrix, tau: Complex64) -> Result<RootOfUnity> {
    require(gamma, CongruenceGroup::Theta12)?;
    floor(tau.im, VERIFY_IM_FLOOR)?;
    let p = HalfPlanePoint::new(tau);
    let base = jacobi_theta_at(&p)?;
    let moved = jacobi_theta_at(&p.moebius(gamma))?;
    let ctd = tau * gamma.c as f64 + gamma.d as f64;
    RootOfUnity::snap(ctd * base * base / (moved * moved), 4, SNAP_TOL)
}

/// `ϑ(γτ)/ϑ(τ)` for `γ ∈ Γ(1,2)`.
pub fn halfform_cocycle(gamma: &SL2Matrix, tau: Complex64) -> Result<Complex64> {
    floor(tau.im, EVAL_IM_FLOOR)?;
    halfform_cocycle_at(gamma, &HalfPlanePoint::new(tau))
}

pub fn halfform_cocycle_at(gamma: &SL2Matrix, tau: &HalfPlanePoint) -> Result<Complex64> {
    require(gamma, CongruenceGroup::Theta12)?;
    Ok(jacobi_theta_at(&tau.moebius(gamma))? / jacobi_theta_at(tau)?)
}

/// `(ϑ(2γτ)/ϑ(2τ))^k` for `γ ∈ Γ₀(4)`.
pub fn shimura_cocycle(gamma: &SL2Matrix, k: i32, tau: Complex64) -> Result<Complex64> {
    floor(tau.im, EVAL_IM_FLOOR)?;
    shimura_cocycle_at(gamma, k, &HalfPlanePoint::new(tau))
}

pub fn shimura_cocycle_at(gamma: &SL2Matrix, k: i32, tau: &HalfPlanePoint) -> Result<Complex64> {
    require(gamma, CongruenceGroup::Gamma0(4))?;
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let q = jacobi_theta_at(&tau.moebius(gamma).scale(2.0))? / jacobi_theta_at(&tau.scale(2.0))?;
    Ok(q.powi(k))
}

/// An element `(λ₁, λ₂; γ)` of the Jacobi group acting by
/// `(τ, z) ↦ (γτ, (z + λ₁τ + λ₂)/(cτ + d))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiElement {
    pub gamma: SL2Matrix,
    pub l1: i64,
    pub l2: i64,
}

impl JacobiElement {
    pub fn act(&self, tau: Complex64, z: Complex64) -> (Complex64, Complex64) {
        let g = self.gamma;
        let ctd = tau * g.c as f64 + g.d as f64;
        (g.act(tau), (z + tau * self.l1 as f64 + self.l2 as f64) / ctd)
    }

    /// `self ∘ other`, i.e. act by `other` first.
    pub fn compose(&self, other: &JacobiElement) -> JacobiElement {
        let g2 = other.gamma;
        JacobiElement {
            gamma: self.gamma.mul(&g2),
            l1: other.l1 + self.l1 * g2.a + self.l2 * g2.c,
            l2: other.l2 + self.l1 * g2.b + self.l2 * g2.d,
        }
    }
}

/// `e^{2πim(λ₁²τ + 2λ₁z − c(z+λ₁τ+λ₂)²/(cτ+d))}`.
pub fn jacobi_cocycle(gamma: &SL2Matrix, l1: i64, l2: i64, m: u32, tau: Complex64, z: Complex64) -> Complex64 {
    let (l1f, l2f) = (l1 as f64, l2 as f64);
    let c = gamma.c as f64;
    let w = z + tau * l1f + l2f;
    let ctd = tau * c + gamma.d as f64;
    let e = tau * (l1f * l1f) + z * (2.0 * l1f) - w * w * c / ctd;
    (e * Complex64::new(0.0, TAU * m as f64)).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Direct,
    Conjugate,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Direct => "direct",
            Convention::Conjugate => "conjugate",
        })
    }
}

/// Records the first decisive convention of a run; later disagreement is an error.
#[derive(Debug, Default)]
pub struct ConventionRegistry(AtomicU8);

impl ConventionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    fn code(c: Convention) -> u8 {
        match c {
            Convention::Direct => 1,
            Convention::Conjugate => 2,
        }
    }

    pub fn fixed(&self) -> Option<Convention> {
        match self.0.load(Ordering::Acquire) {
            1 => Some(Convention::Direct),
            2 => Some(Convention::Conjugate),
            _ => None,
        }
    }

    pub fn settle(&self, measured: Convention) -> Result<Convention> {
        let code = Self::code(measured);
        match self.0.compare_exchange(0, code, Ordering::AcqRel, Ordering::Acquire) {
            Ok(_) => Ok(measured),
            Err(existing) if existing == code => Ok(measured),
            Err(_) => Err(Error::ConventionFlip {
                fixed: self.fixed().map(|c| c.to_string()).unwrap_or_default(),
                measured: measured.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformReport {
    pub m: u32,
    pub mp: String,
    pub tau: String,
    pub residual_direct: f64,
    pub residual_conjugate: f64,
    pub residual: f64,
    pub convention: Convention,
    /// Exactly one of the two conventions passed.
    pub decisive: bool,
    pub pass: bool,
}

/// `‖θ(γτ) − φ(τ)·ρ_m(p)·θ(τ)‖_∞`, against `ρ_m` and against its conjugate.
pub fn verify_transformation(
    m: u32,
    p: &MpElement,
    tau: Complex64,
    tol: f64,
    registry: &ConventionRegistry,
) -> Result<TransformReport> {
    check_m(m)?;
    check_tol(tol)?;
    floor(tau.im, VERIFY_IM_FLOOR)?;
    let base = HalfPlanePoint::new(tau);
    let moved = base.moebius(&p.gamma);
    floor(moved.im(), INTERNAL_IM_FLOOR)?;
    let eval_tol = (tol * 1e-3).min(1e-13);
    let lhs = theta_vector_at(m, &moved, eval_tol).0;
    let theta = theta_vector_at(m, &base, eval_tol).0;
    let rho = weil_rep(m, p)?;
    let phi = phi_eval(p, tau);
    let direct = rho.apply(&theta);
    let conj_rows: Vec<Vec<Complex64>> =
        rho.to_rows().into_iter().map(|r| r.into_iter().map(|z| z.conj()).collect()).collect();
    let conjugate = crate::linalg::CMatrix::from_rows(&conj_rows).apply(&theta);
    let resid = |v: &[Complex64]| lhs.iter().zip(v).map(|(a, b)| (a - phi * b).norm()).fold(0.0, f64::max);
    let r1 = resid(&direct);
    let r2 = resid(&conjugate);
    let argmin = if r1 <= r2 { Convention::Direct } else { Convention::Conjugate };
    let decisive = (r1 < tol) != (r2 < tol);
    let convention = if decisive {
        registry.settle(argmin)?
    } else if r1 < tol {
        registry.fixed().unwrap_or(argmin)
    } else {
        argmin
    };
    let residual = match convention {
        Convention::Direct => r1,
        Convention::Conjugate => r2,
    };
    Ok(TransformReport {
        m,
        mp: p.to_string(),
        tau: format_complex(tau),
        residual_direct: r1,
        residual_conjugate: r2,
        residual,
        convention,
        decisive,
        pass: residual < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn radius_examples() {
        let r1 = truncation_radius(2, 1.0, 1e-12).unwrap();
        let r2 = truncation_radius(2, 2.0, 1e-12).unwrap();
        assert!(r2 <= r1);
        let r4 = truncation_radius(4, 1.0, 1e-12).unwrap();
        assert!((r4 as f64) <= (r1 as f64) * 2f64.sqrt() + 1.0);
        assert!(tail_bound(2, 1.0, r1) < 1e-12);
        assert!(r1 == 0 || tail_bound(2, 1.0, r1 - 1) >= 1e-12);
        assert!(matches!(truncation_radius(2, 0.05, 1e-12), Err(Error::TauTooLow { .. })));
    }

    #[test]
    fn truncation_against_oversummation() {
        let tau = c(0.0, 1.0);
        let r = truncation_radius(2, 1.0, 1e-12).unwrap();
        let p = HalfPlanePoint::new(tau);
        let short = theta_buckets(2, &p, r);
        let long = theta_buckets(2, &p, 4 * r.max(1));
        for (a, b) in short.iter().zip(&long) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn riemann_theta_examples() {
        let t = riemann_theta(c(0.0, 1.0), 1e-14).unwrap();
        assert!((t - c(1.086_434_811_213_308, 0.0)).norm() < 1e-9);
        let tau = c(0.3, 1.1);
        let a = riemann_theta(tau, 1e-14).unwrap();
        let b = riemann_theta(tau + 2.0, 1e-14).unwrap();
        assert!((a - b).norm() < 1e-13);
        let tau = c(0.0, 2.0);
        let q = riemann_theta(-tau.inv(), 1e-14).unwrap().powi(2) / riemann_theta(tau, 1e-14).unwrap().powi(2);
        assert!((q - c(0.0, -1.0) * tau).norm() < 1e-10);
    }

    #[test]
    fn theta_constant_examples() {
        let tau = c(0.3, 1.1);
        let v = theta_constants(2, tau, 1e-14).unwrap();
        assert!((v.values[0] - riemann_theta(tau * 2.0, 1e-14).unwrap()).norm() < 1e-13);
        let v6 = theta_constants(6, c(0.2, 0.9), 1e-14).unwrap();
        for nu in 1..6 {
            assert!((v6.values[nu] - v6.values[6 - nu]).norm() < 1e-13);
        }
        let shifted = theta_constants(4, tau + 1.0, 1e-14).unwrap();
        let base = theta_constants(4, tau, 1e-14).unwrap();
        for nu in 0..4 {
            let f = RootOfUnity::new((nu * nu) as i64, 8).embed();
            assert!((shifted.values[nu] - f * base.values[nu]).norm() < 1e-13);
        }
        assert!(v.err_bound <= 1e-14);
    }

    #[test]
    fn functional_eq_examples() {
        let tau = c(0.3, 1.1);
        assert_eq!(functional_eq_lambda(&SL2Matrix::I, tau).unwrap(), RootOfUnity::ONE);
        assert_eq!(functional_eq_lambda(&SL2Matrix::S, tau).unwrap(), RootOfUnity::I);
        assert_eq!(functional_eq_lambda(&SL2Matrix::S, c(0.0, 2.0)).unwrap(), RootOfUnity::I);
        assert_eq!(functional_eq_lambda(&SL2Matrix::MINUS_I, tau).unwrap(), RootOfUnity::MINUS_ONE);
        let g = SL2Matrix::new(0, 1, -1, 2).unwrap();
        assert_eq!(functional_eq_lambda(&g, tau).unwrap(), RootOfUnity::new(3, 4));
        assert!(matches!(functional_eq_lambda(&SL2Matrix::T, tau), Err(Error::NotMember(_))));
    }

    #[test]
    fn cocycle_examples() {
        let tau = c(0.1, 1.3);
        assert!((halfform_cocycle(&SL2Matrix::I, tau).unwrap() - 1.0).norm() < 1e-15);
        let g = SL2Matrix::new(1, 0, 4, 1).unwrap();
        assert_eq!(shimura_cocycle(&g, 0, tau).unwrap(), c(1.0, 0.0));
        assert_eq!(jacobi_cocycle(&SL2Matrix::I, 0, 0, 2, tau, c(0.2, 0.1)), c(1.0, 0.0));
        assert!((jacobi_cocycle(&SL2Matrix::I, 0, 1, 2, tau, c(0.2, 0.1)) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn transformation_examples() {
        let reg = ConventionRegistry::new();
        let tau = c(0.3, 1.1);
        let z = verify_transformation(4, &MpElement::MINUS_ONE, tau, 1e-9, &reg).unwrap();
        assert!(z.pass && !z.decisive);
        assert_eq!(reg.fixed(), None);
        let t = verify_transformation(4, &MpElement::T, tau, 1e-12, &reg).unwrap();
        assert!(t.pass && t.decisive);
        let s = verify_transformation(4, &MpElement::S, tau, 1e-9, &reg).unwrap();
        assert!(s.pass && s.decisive);
        assert_eq!(reg.fixed(), Some(Convention::Direct));
    }

    #[test]
    fn registry_rejects_flips() {
        let reg = ConventionRegistry::new();
        assert_eq!(reg.settle(Convention::Conjugate).unwrap(), Convention::Conjugate);
        assert!(matches!(reg.settle(Convention::Direct), Err(Error::ConventionFlip { .. })));
    }

    #[test]
    fn extended_precision_point() {
        let g = SL2Matrix::new(5, 2, 12, 5).unwrap();
        let p = HalfPlanePoint::new(c(0.3, 1.1)).moebius(&g);
        let q = g.act(c(0.3, 1.1));
        assert!((p.to_complex() - q).norm() < 1e-15);
    }
}
