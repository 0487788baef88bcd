use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{h_pairing, pairing, HeisenbergElement, KVector, ThetaType, MAX_SP_ORDER};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

/// A linear map of `K(δ)` given by the images of the `2g` standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymplecticMap {
    pub columns: Vec<KVector>,
}

impl SymplecticMap {
    pub fn identity(t: &ThetaType) -> Self {
        SymplecticMap { columns: t.k_basis() }
    }

    pub fn apply(&self, z: &KVector, t: &ThetaType) -> KVector {
        z.coords()
            .iter()
            .zip(&self.columns)
            .fold(KVector::zero(t.genus()), |acc, (&c, col)| acc.add(&col.scale(c as i64, t), t))
    }

    pub fn compose(&self, inner: &SymplecticMap, t: &ThetaType) -> SymplecticMap {
        SymplecticMap { columns: inner.columns.iter().map(|c| self.apply(c, t)).collect() }
    }

    pub fn is_identity(&self, t: &ThetaType) -> bool {
        self.columns == t.k_basis()
    }

    pub fn preserves_pairing(&self, t: &ThetaType) -> bool {
        let basis = t.k_basis();
        (0..basis.len()).all(|i| {
            (0..basis.len())
                .all(|j| pairing(&self.columns[i], &self.columns[j], t).ok() == pairing(&basis[i], &basis[j], t).ok())
        })
    }
}

/// All of `Sp(K(δ), ⟨,⟩_δ)`, sorted.
///
/// Backtracks over generator images: `η(e_j)` must be killed by `d_j` and
/// pair with the earlier images exactly as `e_j` pairs with earlier `e_i`.
pub fn symplectic_group(t: &ThetaType) -> Result<Vec<SymplecticMap>> {
    t.require_enumerable()?;
    let basis = t.k_basis();
    let ks = t.k_elements();
    let candidates: Vec<Vec<KVector>> = (0..basis.len())
        .map(|j| {
            let d = t.k_modulus(j) as i64;
            ks.iter().filter(|z| z.scale(d, t).is_zero()).cloned().collect()
        })
        .collect();
    let target: Vec<Vec<RootOfUnity>> =
        basis.iter().map(|a| basis.iter().map(|b| pairing(a, b, t).expect("same type")).collect()).collect();

    fn extend(
        t: &ThetaType,
        candidates: &[Vec<KVector>],
        target: &[Vec<RootOfUnity>],
        cols: &mut Vec<KVector>,
        out: &mut Vec<SymplecticMap>,
        found: &AtomicUsize,
    ) -> bool {
        let j = cols.len();
        if j == candidates.len() {
            out.push(SymplecticMap { columns: cols.clone() });
            return found.fetch_add(1, Ordering::Relaxed) < MAX_SP_ORDER;
        }
        for cand in &candidates[j] {
            let ok =
                cols.iter().enumerate().all(|(i, prev)| pairing(prev, cand, t).expect("same type") == target[i][j]);
            if ok {
                cols.push(cand.clone());
                let more = extend(t, candidates, target, cols, out, found);
                cols.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }

    // parallelize over the image of the first generator
    let found = AtomicUsize::new(0);
    let mut out: Vec<SymplecticMap> = candidates[0]
        .par_iter()
        .flat_map_iter(|first| {
            let mut local = Vec::new();
            let mut cols = vec![first.clone()];
            extend(t, &candidates, &target, &mut cols, &mut local, &found);
            local
        })
        .collect();
    if found.load(Ordering::Relaxed) > MAX_SP_ORDER {
        return Err(Error::TooLarge(format!("Sp(K({t})) has more than {MAX_SP_ORDER} elements")));
    }
    out.sort();
    Ok(out)
}

/// `(λ, z) ↦ (λ·χ(z), ηz)` with `χ` recorded on the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisenbergAutomorphism {
    pub theta_type: ThetaType,
    pub eta: SymplecticMap,
    pub chi: Vec<RootOfUnity>,
}

impl HeisenbergAutomorphism {
    /// `i(z)`.
    pub fn inner(z: &KVector, t: &ThetaType) -> Self {
        let chi = t.k_basis().iter().map(|e| pairing(z, e, t).expect("same type")).collect();
        HeisenbergAutomorphism { theta_type: t.clone(), eta: SymplecticMap::identity(t), chi }
    }

    pub fn identity(t: &ThetaType) -> Self {
        Self::inner(&KVector::zero(t.genus()), t)
    }

    /// The bilinear defect `f(z₁,z₂) = ⟨(ηz₁)_x, (ηz₂)_y⟩ / ⟨x₁, y₂⟩` that the
    /// semicharacter must absorb: `χ(z₁+z₂) = χ(z₁)χ(z₂)f(z₁,z₂)`.
    fn defect(eta: &SymplecticMap, a: &KVector, b: &KVector, t: &ThetaType) -> RootOfUnity {
        let ea = eta.apply(a, t);
        let eb = eta.apply(b, t);
        h_pairing(&ea.x, &eb.y, t) * h_pairing(&a.x, &b.y, t).inv()
    }

    /// `χ(Σ n_j e_j) = ∏ c_j^{n_j} ∏_{j<k} f(e_j,e_k)^{n_j n_k} ∏_j f(e_j,e_j)^{n_j(n_j−1)/2}`.
    pub fn chi_at(&self, z: &KVector) -> RootOfUnity {
        let t = &self.theta_type;
        let basis = t.k_basis();
        let n: Vec<i64> = z.coords().iter().map(|&c| c as i64).collect();
        let mut acc = RootOfUnity::ONE;
        for j in 0..basis.len() {
            if n[j] == 0 {
                continue;
            }
            acc = acc * self.chi[j].pow(n[j]);
            acc = acc * Self::defect(&self.eta, &basis[j], &basis[j], t).pow(n[j] * (n[j] - 1) / 2);
            for k in (j + 1)..basis.len() {
                if n[k] != 0 {
                    acc = acc * Self::defect(&self.eta, &basis[j], &basis[k], t).pow(n[j] * n[k]);
                }
            }
        }
        acc
    }

    pub fn apply(&self, a: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement {
            lambda: a.lambda * self.chi_at(&a.z),
            z: self.eta.apply(&a.z, &self.theta_type),
            theta_type: a.theta_type.clone(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HeisenbergAutomorphism) -> HeisenbergAutomorphism {
        let t = &self.theta_type;
        let basis = t.k_basis();
        let chi = basis.iter().zip(&inner.chi).map(|(e, &c)| c * self.chi_at(&inner.eta.apply(e, t))).collect();
        HeisenbergAutomorphism { theta_type: t.clone(), eta: self.eta.compose(&inner.eta, t), chi }
    }

    /// `χ(−z) = χ(z)` for all `z`, i.e. the automorphism commutes with `D_{−1}`.
    pub fn is_symmetric(&self) -> bool {
        let t = &self.theta_type;
        t.k_elements().iter().all(|z| self.chi_at(z) == self.chi_at(&z.neg(t)))
    }

    /// Exhaustive check that this is a bijective homomorphism of `G(δ)` fixing the
    /// center. Scalars factor out of the group law, so `λ = 1` suffices.
    pub fn is_valid_exhaustive(&self) -> bool {
        let t = &self.theta_type;
        let ks = t.k_elements();
        let mut seen = std::collections::HashSet::new();
        for z in &ks {
            if !seen.insert(self.eta.apply(z, t)) {
                return false;
            }
        }
        let lift = |z: &KVector| HeisenbergElement { lambda: RootOfUnity::ONE, z: z.clone(), theta_type: t.clone() };
        ks.iter().all(|a| {
            ks.iter().all(|b| {
                let (ea, eb) = (lift(a), lift(b));
                let prod = super::hmul(&ea, &eb).expect("same type");
                self.apply(&prod) == super::hmul(&self.apply(&ea), &self.apply(&eb)).expect("same type")
            })
        })
    }
}

/// Every automorphism of `G(δ)` lying over `η`: the semicharacters with
/// `c_j^{d_j}·f(e_j,e_j)^{d_j(d_j−1)/2} = 1`, `c_j ∈ μ_{4·lcm(δ)}`.
pub fn enumerate_automorphisms_over(t: &ThetaType, eta: &SymplecticMap) -> Vec<HeisenbergAutomorphism> {
    let basis = t.k_basis();
    let n = t.scalar_modulus();
    let choices: Vec<Vec<RootOfUnity>> = basis
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let d = t.k_modulus(j) as i64;
            let target = HeisenbergAutomorphism::defect(eta, e, e, t).pow(-(d * (d - 1) / 2));
            (0..n as i64).map(|k| RootOfUnity::zeta(n, k)).filter(|c| c.pow(d) == target).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let chi = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        out.push(HeisenbergAutomorphism { theta_type: t.clone(), eta: eta.clone(), chi });
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `Aut^sym_{G_m} G(δ)`: automorphisms fixing the center and commuting with
/// `D_{−1}`, in sorted order. Its order is `|K(δ)[2]|·|Sp(K(δ))|`.
pub fn enumerate_sym_automorphisms(t: &ThetaType) -> Result<Vec<HeisenbergAutomorphism>> {
    let sp = symplectic_group(t)?;
    let mut out: Vec<HeisenbergAutomorphism> = sp
        .par_iter()
        .flat_map_iter(|eta| enumerate_automorphisms_over(t, eta).into_iter().filter(|u| u.is_symmetric()))
        .collect();
    out.sort();
    Ok(out)
}
