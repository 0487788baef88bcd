//! The Weil representation `ρ_m` of `Mp₂(ℤ)` on `ℂ[ℤ/m]`.
//!
//! `ρ_m(T) e_γ = e^{πiγ²/m} e_γ` and `ρ_m(S) e_γ = (c/√m) Σ_δ e^{−2πiγδ/m} e_δ`,
//! where the prefactor `c` is `√−i` by default. With `c = √i` the relation
//! `(ST)³ = S²` fails, so that variant is kept only for comparison.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::metaplectic::{mp_product, st_factor, MpElement, StLetter};

pub const MAX_M: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SPrefactor {
    /// `√−i = e^{−iπ/4}`
    #[default]
    SqrtMinusI,
    /// `√i = e^{iπ/4}`
    SqrtI,
}

impl SPrefactor {
    pub fn root(self) -> RootOfUnity {
        match self {
            SPrefactor::SqrtMinusI => RootOfUnity::new(-1, 8),
            SPrefactor::SqrtI => RootOfUnity::new(1, 8),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeilGenerator {
    T,
    S,
    /// `ρ_m(I, −) := ρ_m(S)⁴`
    Zminus,
}

struct Generators {
    /// Diagonal of `ρ_m(T)` as exact roots.
    t_diag: Vec<RootOfUnity>,
    s: CMatrix,
    zminus: CMatrix,
}

type Cache = RwLock<HashMap<(u32, SPrefactor), Arc<Generators>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 || !m.is_multiple_of(2) || m > MAX_M {
        return Err(Error::BadIndex(format!("m = {m} must be even with 2 ≤ m ≤ {MAX_M}")));
    }
    Ok(())
}

fn generators(m: u32, pre: SPrefactor) -> Result<Arc<Generators>> {
    check_m(m)?;
    if let Some(g) = cache().read().expect("cache lock").get(&(m, pre)) {
        return Ok(Arc::clone(g));
    }
    let n = m as usize;
    let t_diag = (0..m as i64).map(|g| RootOfUnity::new(g * g, 2 * m as u64)).collect();
    let scale = pre.root().embed() / (m as f64).sqrt();
    let mut s = CMatrix::zeros(n, n);
    for g in 0..n {
        for d in 0..n {
            // column g is the image of e_g
            s[(d, g)] = RootOfUnity::new(-((g * d) as i64), m as u64).embed() * scale;
        }
    }
    let s2 = &s * &s;
    let zminus = &s2 * &s2;
    let gens = Arc::new(Generators { t_diag, s, zminus });
    cache().write().expect("cache lock").insert((m, pre), Arc::clone(&gens));
    Ok(gens)
}

pub fn weil_generator(m: u32, which: WeilGenerator) -> Result<CMatrix> {
    weil_generator_with(m, which, SPrefactor::default())
}

pub fn weil_generator_with(m: u32, which: WeilGenerator, pre: SPrefactor) -> Result<CMatrix> {
    let gens = generators(m, pre)?;
    Ok(match which {
        WeilGenerator::T => {
            let mut t = CMatrix::zeros(m as usize, m as usize);
            for (i, r) in gens.t_diag.iter().enumerate() {
                t[(i, i)] = r.embed();
            }
            t
        }
        WeilGenerator::S => gens.s.clone(),
        WeilGenerator::Zminus => gens.zminus.clone(),
    })
}

/// Right-multiplies by `ρ_m(T)^k` (a diagonal), exactly in the exponents.
fn times_t_power(acc: &mut CMatrix, diag: &[RootOfUnity], k: i64) {
    let cols: Vec<Complex64> = diag.iter().map(|r| r.pow(k).embed()).collect();
    for i in 0..acc.rows() {
        for (j, c) in cols.iter().enumerate() {
            acc[(i, j)] *= c;
        }
    }
}

pub fn weil_rep(m: u32, p: &MpElement) -> Result<CMatrix> {
    weil_rep_with(m, p, SPrefactor::default())
}

/// Product of generator matrices along the `S, T^{±1}` factorization of `γ`,
/// corrected by `ρ_m(I,−)` when the lifted word lands on the other branch.
pub fn weil_rep_with(m: u32, p: &MpElement, pre: SPrefactor) -> Result<CMatrix> {
    let gens = generators(m, pre)?;
    let word = st_factor(&p.gamma);
    let mut acc = CMatrix::identity(m as usize);
    let mut run = 0i64;
    for letter in &word {
        match letter {
            StLetter::T => run += 1,
            StLetter::TInv => run -= 1,
            StLetter::S => {
                if run != 0 {
                    times_t_power(&mut acc, &gens.t_diag, run);
                    run = 0;
                }
                acc = &acc * &gens.s;
            }
        }
    }
    if run != 0 {
        times_t_power(&mut acc, &gens.t_diag, run);
    }
    let lifted = mp_product(word.iter().map(|l| l.lift()).collect::<Vec<_>>().iter())?;
    if lifted.eps != p.eps {
        acc = &acc * &gens.zminus;
    }
    Ok(acc)
}

pub fn det_character(m: u32, p: &MpElement) -> Result<Complex64> {
    Ok(weil_rep(m, p)?.det())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetCharacterReport {
    pub m: u32,
    pub det_t: RootOfUnity,
    pub det_s: RootOfUnity,
    /// Order of the subgroup of `μ_∞` generated by `det ρ_m(T)` and `det ρ_m(S)`.
    pub order: u64,
    pub square_order: u64,
}

pub fn det_character_report(m: u32) -> Result<DetCharacterReport> {
    det_character_report_with(m, SPrefactor::default())
}

pub fn det_character_report_with(m: u32, pre: SPrefactor) -> Result<DetCharacterReport> {
    let gens = generators(m, pre)?;
    let det_t = gens.t_diag.iter().fold(RootOfUnity::ONE, |acc, &r| acc * r);
    let det_s = RootOfUnity::snap(gens.s.det(), 8, 1e-6)?;
    let lcm = |a: u64, b: u64| num_integer::lcm(a, b);
    Ok(DetCharacterReport {
        m,
        det_t,
        det_s,
        order: lcm(det_t.order(), det_s.order()),
        square_order: lcm(det_t.pow(2).order(), det_s.pow(2).order()),
    })
}

pub fn det_character_order(m: u32) -> Result<u64> {
    Ok(det_character_report(m)?.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metaplectic::mp_mul;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generator_examples() {
        let t = weil_generator(2, WeilGenerator::T).unwrap();
        assert!(
            t.max_dist(&CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]])) < 1e-15
        );
        let s = weil_generator(2, WeilGenerator::S).unwrap();
        let k = RootOfUnity::new(-1, 8).embed() / 2f64.sqrt();
        let want = CMatrix::from_rows(&[vec![k, k], vec![k, -k]]);
        assert!(s.max_dist(&want) < 1e-15);
        let z = weil_generator(2, WeilGenerator::Zminus).unwrap();
        assert!(z.max_dist(&CMatrix::identity(2).scale(c(-1.0, 0.0))) < 1e-14);
        assert!(matches!(weil_generator(3, WeilGenerator::T), Err(Error::BadIndex(_))));
    }

    #[test]
    fn st_relation_holds_only_for_default_prefactor() {
        for m in [2u32, 4, 6] {
            for (pre, holds) in [(SPrefactor::SqrtMinusI, true), (SPrefactor::SqrtI, false)] {
                let s = weil_generator_with(m, WeilGenerator::S, pre).unwrap();
                let t = weil_generator_with(m, WeilGenerator::T, pre).unwrap();
                let st = &s * &t;
                let st3 = &(&st * &st) * &st;
                assert_eq!(st3.max_dist(&(&s * &s)) < 1e-12, holds, "m = {m}, {pre:?}");
            }
        }
    }

    #[test]
    fn rep_examples() {
        for m in [2u32, 4, 6, 8] {
            let id = weil_rep(m, &MpElement::IDENTITY).unwrap();
            assert!(id.max_dist(&CMatrix::identity(m as usize)) < 1e-15);
            let z = weil_rep(m, &MpElement::MINUS_ONE).unwrap();
            assert!(z.max_dist(&CMatrix::identity(m as usize).scale(c(-1.0, 0.0))) < 1e-12);
            let s = weil_rep(m, &MpElement::S).unwrap();
            let s4 = &(&s * &s) * &(&s * &s);
            assert!(s4.max_dist(&z) < 1e-12);
            let t = weil_rep(m, &MpElement::T).unwrap();
            assert!(t.is_unitary(1e-12) && s.is_unitary(1e-12));
        }
    }

    #[test]
    fn rep_is_multiplicative_on_small_elements() {
        let els: Vec<MpElement> = ["3,1,5,2:+", "3,1,5,2:-", "0,-1,1,0:+", "2,1,1,1:-", "1,0,-4,1:+"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for m in [2u32, 4, 6] {
            for p in &els {
                for q in &els {
                    let pq = mp_mul(p, q).unwrap();
                    let lhs = weil_rep(m, &pq).unwrap();
                    let rhs = &weil_rep(m, p).unwrap() * &weil_rep(m, q).unwrap();
                    assert!(lhs.max_dist(&rhs) < 1e-12, "m={m} {p} {q}");
                }
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let r = det_character_report(2).unwrap();
        assert_eq!(r.det_t, RootOfUnity::I);
        assert_eq!(r.det_s, RootOfUnity::I);
        assert_eq!(r.order, 4);
        assert_eq!(r.square_order, 2);
        let r = det_character_report_with(2, SPrefactor::SqrtI).unwrap();
        assert_eq!(r.det_s, RootOfUnity::new(3, 4));
        let d = det_character(2, &MpElement::T).unwrap();
        assert!((d - c(0.0, 1.0)).norm() < 1e-15);
    }
}
