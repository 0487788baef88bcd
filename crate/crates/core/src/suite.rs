//! The verification battery behind `verify suite`.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::congruence::{
    descended_theta_char, member, relative_index, splitting_action_factor, subgroup_index, subgroup_index_at,
    theta_action_factor, CongruenceGroup, SL2Matrix,
};
use crate::cyclo::{format_complex, format_real, RootOfUnity};
use crate::error::Result;
use crate::heisenberg::{
    canonical_splitting, elements_with_center, enumerate_symmetric_splittings, h2_pushforward_splitting, hmul,
    maximal_symmetric_pairs, DescentReport, ThetaType,
};
use crate::linalg::CMatrix;
use crate::metaplectic::{discriminant_of, mp_mul, mp_product, theta12_elements, MpElement};
use crate::schrodinger::{fixed_space, intertwiner_space, invariant_subspace, rho};
use crate::symplectic4::{discriminant_table, Parity};
use crate::thetanum::{
    functional_eq_lambda, halfform_cocycle_at, jacobi_cocycle, shimura_cocycle_at, verify_transformation,
    ConventionRegistry, HalfPlanePoint, JacobiElement,
};
use crate::weilrep::weil_rep;

pub const SEED_ENV: &str = "THETA_LAB_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(crate::Error::Parse(format!("unknown level '{s}'"))),
        }
    }
}

/// Sample sizes for one level.
#[derive(Clone, Copy, Debug)]
struct Sizes {
    words: usize,
    theta12_bound: i64,
    stabilizer_bound: i64,
    assoc_triples: usize,
    weil_pairs: usize,
    cocycle_pairs: usize,
}

impl Level {
    fn sizes(self) -> Sizes {
        match self {
            Level::Quick => Sizes {
                words: 8,
                theta12_bound: 8,
                stabilizer_bound: 12,
                assoc_triples: 100,
                weil_pairs: 30,
                cocycle_pairs: 20,
            },
            Level::Full => Sizes {
                words: 50,
                theta12_bound: 20,
                stabilizer_bound: 40,
                assoc_triples: 1000,
                weil_pairs: 200,
                cocycle_pairs: 100,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check_id: String,
    pub parameters: Value,
    pub expected: String,
    pub observed: String,
    pub residual: Option<f64>,
    pub pass: bool,
}

impl Check {
    fn exact(id: &str, parameters: Value, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let pass = expected == observed;
        Check { check_id: id.into(), parameters, expected, observed, residual: None, pass }
    }

    fn bounded(id: &str, parameters: Value, residual: f64, tol: f64) -> Self {
        Check {
            check_id: id.into(),
            parameters,
            expected: format!("< {tol:e}"),
            observed: format_real(residual),
            residual: Some(residual),
            pass: residual < tol,
        }
    }

    fn failed(id: &str, parameters: Value, err: impl std::fmt::Display) -> Self {
        Check {
            check_id: id.into(),
            parameters,
            expected: "ok".into(),
            observed: format!("error: {err}"),
            residual: None,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub level: Level,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub wall_time: f64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `THETA_LAB_SEED` if set and numeric, otherwise the default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A word of length `1..=max_len` in `(S,+)`, `(T,±1)` and `(I,−)`.
pub fn random_mp_word(rng: &mut impl Rng, max_len: usize) -> Vec<MpElement> {
    const LETTERS: [MpElement; 4] = [MpElement::S, MpElement::T, MpElement::T_INV, MpElement::MINUS_ONE];
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| LETTERS[rng.gen_range(0..LETTERS.len())]).collect()
}

fn random_word_in(rng: &mut impl Rng, gens: &[SL2Matrix], max_len: usize) -> SL2Matrix {
    let len = rng.gen_range(1..=max_len);
    (0..len).fold(SL2Matrix::I, |acc, _| acc.mul(&gens[rng.gen_range(0..gens.len())]))
}

/// Random elements of `Γ(1,2)`: words in `S`, `T^{±2}`.
pub fn random_theta12(rng: &mut impl Rng, max_len: usize) -> SL2Matrix {
    random_word_in(rng, &[SL2Matrix::S, SL2Matrix::t_pow(2), SL2Matrix::t_pow(-2)], max_len)
}

/// Random elements of `Γ₀(4)`: words in `T^{±1}`, `(1,0;±4,1)` and `−I`.
pub fn random_gamma0_4(rng: &mut impl Rng, max_len: usize) -> SL2Matrix {
    let l = SL2Matrix { a: 1, b: 0, c: 4, d: 1 };
    random_word_in(rng, &[SL2Matrix::T, SL2Matrix::T_INV, l, l.inv(), SL2Matrix::MINUS_I], max_len)
}

const TRANSFORM_TAUS: [Complex64; 3] = [Complex64::new(0.3, 1.1), Complex64::new(-0.4, 0.8), Complex64::new(0.0, 2.0)];
const PROBES: [Complex64; 2] = [Complex64::new(0.0, 2.0), Complex64::new(0.3, 1.1)];
const COCYCLE_TAU: Complex64 = Complex64::new(0.1, 1.3);

fn transformation_law(sizes: Sizes, seed: u64) -> Vec<Check> {
    let registry = ConventionRegistry::new();
    let mut rng = rng_for(seed, 1);
    let mut jobs = Vec::new();
    for m in [2u32, 4, 6] {
        for _ in 0..sizes.words {
            let word = random_mp_word(&mut rng, 12);
            for tau in TRANSFORM_TAUS {
                jobs.push((m, word.clone(), tau));
            }
        }
    }
    let worst: Vec<(u32, f64, Option<String>)> = jobs
        .par_iter()
        .map(|(m, word, tau)| {
            let run = || -> Result<f64> {
                let p = mp_product(word.iter())?;
                let r = verify_transformation(*m, &p, *tau, 1e-9, &registry)?;
                Ok(r.residual)
            };
            match run() {
                Ok(r) => (*m, r, None),
                Err(e) => (*m, f64::INFINITY, Some(e.to_string())),
            }
        })
        .collect();
    let mut out = Vec::new();
    for m in [2u32, 4, 6] {
        let params = json!({"m": m, "words": sizes.words, "max_len": 12, "taus": TRANSFORM_TAUS.map(format_complex)});
        let err = worst.iter().find(|w| w.0 == m && w.2.is_some()).and_then(|w| w.2.clone());
        if let Some(e) = err {
            out.push(Check::failed("transformation_law", params, e));
            continue;
        }
        let r = worst.iter().filter(|w| w.0 == m).map(|w| w.1).fold(0.0, f64::max);
        out.push(Check::bounded("transformation_law", params, r, 1e-9));
    }
    let conv = registry.fixed().map_or("unset".to_string(), |c| c.to_string());
    out.push(Check {
        check_id: "transformation_convention".into(),
        parameters: json!({}),
        expected: "one convention for the whole run".into(),
        pass: registry.fixed().is_some(),
        observed: conv,
        residual: None,
    });
    out
}

fn discriminant_cross(sizes: Sizes) -> Vec<Check> {
    let els = theta12_elements(sizes.theta12_bound);
    let mismatches: Vec<String> = els
        .par_iter()
        .filter_map(|g| {
            let alg = match discriminant_of(g) {
                Ok(l) => l,
                Err(e) => return Some(format!("{g}: {e}")),
            };
            for tau in PROBES {
                match functional_eq_lambda(g, tau) {
                    Ok(l) if l == alg => {}
                    Ok(l) => return Some(format!("{g}: analytic {l}, algebraic {alg}")),
                    Err(e) => return Some(format!("{g}: {e}")),
                }
            }
            None
        })
        .collect();
    let mut out = vec![Check::exact(
        "lambda_cross_validation",
        json!({"bound": sizes.theta12_bound, "elements": els.len()}),
        "0 mismatches",
        match mismatches.first() {
            None => "0 mismatches".to_string(),
            Some(first) => format!("{} mismatches, first {first}", mismatches.len()),
        },
    )];
    for parity in [Parity::Even, Parity::Odd] {
        let observed = match discriminant_table(1, parity) {
            Ok(t) => format!("{} solutions", t.solutions),
            Err(e) => format!("error: {e}"),
        };
        out.push(Check::exact(
            "character_solve_unique",
            json!({"g": 1, "parity": parity.to_string()}),
            "1 solutions",
            observed,
        ));
    }
    out
}

/// Every `γ ∈ SL₂(ℤ)` with all entries in `[−bound, bound]`.
pub fn sl2_box(bound: i64) -> Vec<SL2Matrix> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if a != 0 {
                    if (1 + b * c) % a == 0 && ((1 + b * c) / a).abs() <= bound {
                        out.push(SL2Matrix { a, b, c, d: (1 + b * c) / a });
                    }
                } else if b * c == -1 {
                    for d in -bound..=bound {
                        out.push(SL2Matrix { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}

fn stabilizers(sizes: Sizes) -> Vec<Check> {
    let els = sl2_box(sizes.stabilizer_bound);
    let mut out = Vec::new();
    for m in [2u64, 4] {
        let theta_exceptions = els
            .par_iter()
            .filter(|g| member(g, CongruenceGroup::Gamma(m)))
            .filter(|g| {
                let trivial = (0..2 * m as i64)
                    .all(|u1| (0..2 * m as i64).all(|u2| theta_action_factor(g, m, u1, u2).is_ok_and(|r| r.is_one())));
                trivial != member(g, CongruenceGroup::GammaM2M(m))
            })
            .count();
        let split_exceptions = els
            .par_iter()
            .filter(|g| member(g, CongruenceGroup::Gamma0(m)))
            .filter(|g| {
                let trivial = (0..2 * m as i64).all(|u| splitting_action_factor(g, m, u).is_ok_and(|r| r.is_one()));
                trivial != member(g, CongruenceGroup::Gamma0(2 * m))
            })
            .count();
        let params = json!({"m": m, "bound": sizes.stabilizer_bound});
        out.push(Check::exact("theta_stabilizer", params.clone(), 0, theta_exceptions));
        out.push(Check::exact("splitting_stabilizer", params, 0, split_exceptions));
    }
    out
}

fn descended_characteristic() -> Vec<Check> {
    let mut out = Vec::new();
    for m in [2u64, 4, 6, 8] {
        let mut bad = 0;
        for u1 in 0..2 {
            for u2 in 0..2 {
                let e_plus = if u1 * u2 % 2 == 0 { RootOfUnity::ONE } else { RootOfUnity::MINUS_ONE };
                if descended_theta_char(m, u1, u2).ok() != Some(e_plus) {
                    bad += 1;
                }
            }
        }
        out.push(Check::exact("descended_theta_char", json!({"m": m}), 0, bad));
    }
    out
}

fn stone_von_neumann() -> Vec<Check> {
    let mut out = Vec::new();
    for d in [vec![2u32], vec![4], vec![2, 2]] {
        let t = ThetaType::new(d).expect("valid type");
        let params = json!({"type": t.to_string()});
        let run = || -> Result<Vec<Check>> {
            let els = elements_with_center(&t, t.exponent() as u64);
            let mats = els.iter().map(rho).collect::<Result<Vec<_>>>()?;
            let mut failures = 0usize;
            for (a, ma) in els.iter().zip(&mats) {
                for (b, mb) in els.iter().zip(&mats) {
                    if rho(&hmul(a, b)?)? != ma.mul(mb) {
                        failures += 1;
                    }
                }
            }
            let dense: Vec<CMatrix> = mats.iter().map(|m| m.to_dense()).collect();
            let commutant = intertwiner_space(&dense, &dense)?.len();
            let inv = invariant_subspace(&canonical_splitting(&t))?;
            let mut delta0 = vec![Complex64::new(0.0, 0.0); t.degree()];
            delta0[0] = Complex64::new(1.0, 0.0);
            let is_delta0 = inv.len() == 1 && inv[0] == delta0;
            let pairs = maximal_symmetric_pairs(&t)?;
            let mut bad_pairs = 0;
            for p in &pairs {
                if fixed_space(&t, &p.elements)?.len() != 1 {
                    bad_pairs += 1;
                }
            }
            Ok(vec![
                Check::exact("schrodinger_homomorphism", params.clone(), 0, failures),
                Check::exact("commutant_dimension", params.clone(), 1, commutant),
                Check::exact(
                    "canonical_invariants",
                    params.clone(),
                    "span(delta_0)",
                    if is_delta0 { "span(delta_0)" } else { "other" },
                ),
                Check::exact(
                    "maximal_splitting_invariants",
                    json!({"type": t.to_string(), "pairs": pairs.len()}),
                    0,
                    bad_pairs,
                ),
            ])
        };
        match run() {
            Ok(c) => out.extend(c),
            Err(e) => out.push(Check::failed("stone_von_neumann", params, e)),
        }
    }
    out
}

fn descent_combinatorics() -> Vec<Check> {
    let mut out = Vec::new();
    for d in [vec![2u32], vec![4], vec![2, 2], vec![4, 4]] {
        let t = ThetaType::new(d).expect("valid type");
        let params = json!({"type": t.to_string()});
        let run = || -> Result<Vec<Check>> {
            let count = enumerate_symmetric_splittings(&t)?.len();
            let big = t.doubled();
            let mut non_canonical = 0;
            for s in enumerate_symmetric_splittings(&big)? {
                if h2_pushforward_splitting(&s)? != canonical_splitting(&t) {
                    non_canonical += 1;
                }
            }
            Ok(vec![
                Check::exact("symmetric_splitting_count", params.clone(), 1usize << t.genus(), count),
                Check::exact(
                    "h2_pushforward_canonical",
                    json!({"from": big.to_string(), "to": t.to_string()}),
                    0,
                    non_canonical,
                ),
            ])
        };
        match run() {
            Ok(c) => out.extend(c),
            Err(e) => out.push(Check::failed("descent_combinatorics", params, e)),
        }
    }
    for d in [vec![2u32], vec![2, 2]] {
        let t = ThetaType::new(d).expect("valid type");
        let params = json!({"type": t.to_string()});
        match DescentReport::compute(&t) {
            Ok(r) => out.push(Check::exact(
                "orbit_stabilizer",
                json!({"type": t.to_string(), "aut_sym": r.aut_sym_order, "u0sym": r.u0sym_setwise_order, "pairs": r.pair_count}),
                true,
                r.orbit_stabilizer_consistent(),
            )),
            Err(e) => out.push(Check::failed("orbit_stabilizer", params, e)),
        }
    }
    out
}

fn phi_residual(p: &MpElement, q: &MpElement) -> f64 {
    if p.gamma != q.gamma {
        return f64::INFINITY;
    }
    [Complex64::new(0.3, 1.1), Complex64::new(-0.7, 0.4)]
        .iter()
        .map(|&tau| (p.phi(tau) - q.phi(tau)).norm())
        .fold(0.0, f64::max)
}

fn metaplectic_structure(sizes: Sizes, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let s4 = mp_product([MpElement::S; 4].iter());
    out.push(Check::exact(
        "s_fourth_power",
        json!({}),
        MpElement::MINUS_ONE,
        s4.map_or_else(|e| format!("error: {e}"), |p| p.to_string()),
    ));
    for m in [2u32, 4, 6, 8] {
        let params = json!({"m": m});
        match weil_rep(m, &MpElement::MINUS_ONE) {
            Ok(z) => out.push(Check::bounded(
                "weil_central_sign",
                params,
                z.max_dist(&CMatrix::identity(m as usize).scale(Complex64::new(-1.0, 0.0))),
                1e-10,
            )),
            Err(e) => out.push(Check::failed("weil_central_sign", params, e)),
        }
    }
    let mut rng = rng_for(seed, 7);
    let triples: Vec<[Vec<MpElement>; 3]> =
        (0..sizes.assoc_triples).map(|_| std::array::from_fn(|_| random_mp_word(&mut rng, 8))).collect();
    let assoc = triples
        .par_iter()
        .map(|words| -> Result<f64> {
            let [p, q, r] = [0, 1, 2].map(|i| mp_product(words[i].iter()));
            let (p, q, r) = (p?, q?, r?);
            let left = mp_mul(&mp_mul(&p, &q)?, &r)?;
            let right = mp_mul(&p, &mp_mul(&q, &r)?)?;
            Ok(phi_residual(&left, &right))
        })
        .collect::<Result<Vec<f64>>>();
    let params = json!({"triples": sizes.assoc_triples});
    match assoc {
        Ok(v) => out.push(Check::bounded("mp_associativity", params, v.into_iter().fold(0.0, f64::max), 1e-9)),
        Err(e) => out.push(Check::failed("mp_associativity", params, e)),
    }
    let pairs: Vec<(u32, Vec<MpElement>, Vec<MpElement>)> = (0..sizes.weil_pairs)
        .map(|_| ([2u32, 4, 6, 8][rng.gen_range(0..4)], random_mp_word(&mut rng, 8), random_mp_word(&mut rng, 8)))
        .collect();
    let weil = pairs
        .par_iter()
        .map(|(m, a, b)| -> Result<(f64, f64)> {
            let p = mp_product(a.iter())?;
            let q = mp_product(b.iter())?;
            let rp = weil_rep(*m, &p)?;
            let rq = weil_rep(*m, &q)?;
            let id = CMatrix::identity(*m as usize);
            let unitary = (&rp * &rp.adjoint()).max_dist(&id).max((&rq * &rq.adjoint()).max_dist(&id));
            let mult = weil_rep(*m, &mp_mul(&p, &q)?)?.max_dist(&(&rp * &rq));
            Ok((unitary, mult))
        })
        .collect::<Result<Vec<_>>>();
    let params = json!({"pairs": sizes.weil_pairs, "m": [2, 4, 6, 8]});
    match weil {
        Ok(v) => {
            let u = v.iter().map(|x| x.0).fold(0.0, f64::max);
            let m = v.iter().map(|x| x.1).fold(0.0, f64::max);
            out.push(Check::bounded("weil_unitary", params.clone(), u, 1e-10));
            out.push(Check::bounded("weil_multiplicative", params, m, 1e-9));
        }
        Err(e) => out.push(Check::failed("weil_rep", params, e)),
    }
    out
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn cocycles(sizes: Sizes, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = rng_for(seed, 11);
    let base = HalfPlanePoint::new(COCYCLE_TAU);
    let n = sizes.cocycle_pairs;

    let pairs: Vec<(SL2Matrix, SL2Matrix)> =
        (0..n).map(|_| (random_theta12(&mut rng, 6), random_theta12(&mut rng, 6))).collect();
    let half = pairs
        .par_iter()
        .map(|(g1, g2)| -> Result<f64> {
            let lhs = halfform_cocycle_at(&g1.mul(g2), &base)?;
            let rhs = halfform_cocycle_at(g1, &base.moebius(g2))? * halfform_cocycle_at(g2, &base)?;
            Ok(rel(lhs, rhs))
        })
        .collect::<Result<Vec<_>>>();
    let params = json!({"pairs": n, "tau": format_complex(COCYCLE_TAU)});
    match half {
        Ok(v) => out.push(Check::bounded("halfform_cocycle", params, v.into_iter().fold(0.0, f64::max), 1e-8)),
        Err(e) => out.push(Check::failed("halfform_cocycle", params, e)),
    }

    let pairs: Vec<(SL2Matrix, SL2Matrix)> =
        (0..n).map(|_| (random_gamma0_4(&mut rng, 6), random_gamma0_4(&mut rng, 6))).collect();
    for k in [0, 1, 3] {
        let sh = pairs
            .par_iter()
            .map(|(g1, g2)| -> Result<f64> {
                let lhs = shimura_cocycle_at(&g1.mul(g2), k, &base)?;
                let rhs = shimura_cocycle_at(g1, k, &base.moebius(g2))? * shimura_cocycle_at(g2, k, &base)?;
                Ok(rel(lhs, rhs))
            })
            .collect::<Result<Vec<_>>>();
        let params = json!({"pairs": n, "k": k, "tau": format_complex(COCYCLE_TAU)});
        match sh {
            Ok(v) => out.push(Check::bounded("shimura_cocycle", params, v.into_iter().fold(0.0, f64::max), 1e-8)),
            Err(e) => out.push(Check::failed("shimura_cocycle", params, e)),
        }
    }

    let z = Complex64::new(0.2, 0.15);
    let gens = [SL2Matrix::S, SL2Matrix::T, SL2Matrix::T_INV];
    let elem = |rng: &mut ChaCha8Rng| JacobiElement {
        gamma: random_word_in(rng, &gens, 4),
        l1: rng.gen_range(-2..=2),
        l2: rng.gen_range(-2..=2),
    };
    let pairs: Vec<(JacobiElement, JacobiElement)> = (0..n).map(|_| (elem(&mut rng), elem(&mut rng))).collect();
    let jac = pairs
        .iter()
        .map(|(a, b)| {
            let ab = a.compose(b);
            let (tau2, z2) = b.act(COCYCLE_TAU, z);
            let lhs = jacobi_cocycle(&ab.gamma, ab.l1, ab.l2, 2, COCYCLE_TAU, z);
            let rhs = jacobi_cocycle(&a.gamma, a.l1, a.l2, 2, tau2, z2)
                * jacobi_cocycle(&b.gamma, b.l1, b.l2, 2, COCYCLE_TAU, z);
            rel(lhs, rhs)
        })
        .fold(0.0, f64::max);
    out.push(Check::bounded(
        "jacobi_cocycle",
        json!({"pairs": n, "m": 2, "tau": format_complex(COCYCLE_TAU), "z": format_complex(z)}),
        jac,
        1e-8,
    ));
    out
}

fn indices() -> Vec<Check> {
    let mut out = vec![Check::exact("index_gamma0_4", json!({}), 6, subgroup_index(CongruenceGroup::Gamma0(4)))];
    let m = 2u64;
    for l in [2 * m, 4 * m] {
        let run = || -> Result<(u64, u64, u64)> {
            let small = CongruenceGroup::GammaM2M(m);
            let mid = CongruenceGroup::Gamma0(2 * m);
            Ok((subgroup_index_at(small, l)?, subgroup_index_at(mid, l)?, relative_index(small, mid, l)?))
        };
        let params = json!({"m": m, "modulus": l});
        match run() {
            Ok((whole, top, rel)) => out.push(Check::exact(
                "index_multiplicativity",
                params,
                format!("{whole} = {top}·{rel}"),
                format!("{} = {top}·{rel}", top * rel),
            )),
            Err(e) => out.push(Check::failed("index_multiplicativity", params, e)),
        }
    }
    out
}

/// Runs one numbered criterion of the battery.
pub fn run_criterion(n: u8, level: Level, seed: u64) -> Vec<Check> {
    let sizes = level.sizes();
    match n {
        1 => transformation_law(sizes, seed),
        2 => discriminant_cross(sizes),
        3 => stabilizers(sizes),
        4 => descended_characteristic(),
        5 => stone_von_neumann(),
        6 => descent_combinatorics(),
        7 => metaplectic_structure(sizes, seed),
        8 => cocycles(sizes, seed),
        9 => indices(),
        _ => Vec::new(),
    }
}

pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=9;

/// All criteria in declared order.
pub fn run_suite(level: Level, seed: u64) -> Report {
    let start = Instant::now();
    let checks = CRITERIA.flat_map(|n| run_criterion(n, level, seed)).collect();
    Report { suite: "theta-lab".into(), level, seed, checks, wall_time: start.elapsed().as_secs_f64() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let report = run_suite(Level::Quick, DEFAULT_SEED);
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn sl2_box_is_complete() {
        let b = sl2_box(3);
        assert!(b.iter().all(|g| g.a * g.d - g.b * g.c == 1 && g.max_abs_entry() <= 3));
        let mut brute = 0;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        brute += (a * d - b * c == 1) as usize;
                    }
                }
            }
        }
        assert_eq!(b.len(), brute);
    }
}
