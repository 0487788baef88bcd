//! Maximal symmetric splittings and the level-`U₀^sym` stabilizer.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    canonical_splitting, enumerate_sym_automorphisms, hmul, pairing, HeisenbergAutomorphism, HeisenbergElement,
    KVector, ThetaType,
};
use crate::cyclo::RootOfUnity;
use crate::error::Result;

/// A maximal symmetric splitting `(H, σ)`, stored as the subgroup `σ(H) ⊂ G(δ)`
/// in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingPair {
    pub elements: Vec<HeisenbergElement>,
}

impl SplittingPair {
    pub fn base(t: &ThetaType) -> Self {
        let mut elements = canonical_splitting(t).image();
        elements.sort();
        SplittingPair { elements }
    }

    pub fn subgroup(&self) -> Vec<KVector> {
        self.elements.iter().map(|e| e.z.clone()).collect()
    }

    pub fn transform(&self, u: &HeisenbergAutomorphism) -> SplittingPair {
        let mut elements: Vec<_> = self.elements.iter().map(|e| u.apply(e)).collect();
        elements.sort();
        SplittingPair { elements }
    }
}

/// How `u·σ_can H(δ) ⊆ σ_can H(δ)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StabilizerReading {
    Setwise,
    Pointwise,
}

/// `U₀^sym`: symmetric automorphisms stabilizing `σ_can H(δ)` setwise.
pub fn stabilizer_u0sym(t: &ThetaType) -> Result<Vec<HeisenbergAutomorphism>> {
    stabilizer_u0(t, StabilizerReading::Setwise)
}

pub fn stabilizer_u0(t: &ThetaType, reading: StabilizerReading) -> Result<Vec<HeisenbergAutomorphism>> {
    let auts = enumerate_sym_automorphisms(t)?;
    Ok(filter_stabilizer(t, &auts, reading))
}

fn filter_stabilizer(
    t: &ThetaType,
    auts: &[HeisenbergAutomorphism],
    reading: StabilizerReading,
) -> Vec<HeisenbergAutomorphism> {
    let base = SplittingPair::base(t);
    auts.iter()
        .filter(|u| match reading {
            StabilizerReading::Setwise => base.transform(u) == base,
            StabilizerReading::Pointwise => base.elements.iter().all(|e| u.apply(e) == *e),
        })
        .cloned()
        .collect()
}

fn k_order_of(z: &KVector, t: &ThetaType) -> u32 {
    (1..=t.exponent()).find(|&n| z.scale(n as i64, t).is_zero()).expect("exponent kills K")
}

/// Subgroups of `K(δ)` that are isomorphic to `H(δ)` and isotropic, each with
/// an invariant-factor generating tuple.
fn lagrangians_of_type(t: &ThetaType) -> Vec<(BTreeSet<KVector>, Vec<KVector>)> {
    let ks = t.k_elements();
    let g = t.genus();
    let by_order: Vec<Vec<KVector>> =
        t.divisors().iter().map(|&d| ks.iter().filter(|z| k_order_of(z, t) == d).cloned().collect()).collect();
    let mut found: HashMap<BTreeSet<KVector>, Vec<KVector>> = HashMap::new();
    let mut idx = vec![0usize; g];
    if by_order.iter().any(|v| v.is_empty()) {
        return Vec::new();
    }
    loop {
        let gens: Vec<KVector> = idx.iter().zip(&by_order).map(|(&i, v)| v[i].clone()).collect();
        let isotropic = gens.iter().all(|a| gens.iter().all(|b| pairing(a, b, t).expect("same type").is_one()));
        if isotropic {
            let span = span_of(&gens, t);
            if span.len() == t.degree() {
                found.entry(span).or_insert(gens);
            }
        }
        let mut p = g;
        loop {
            if p == 0 {
                let mut out: Vec<_> = found.into_iter().collect();
                out.sort();
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < by_order[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

fn span_of(gens: &[KVector], t: &ThetaType) -> BTreeSet<KVector> {
    let mut span = BTreeSet::new();
    span.insert(KVector::zero(t.genus()));
    let mut frontier = vec![KVector::zero(t.genus())];
    while let Some(z) = frontier.pop() {
        for g in gens {
            let w = z.add(g, t);
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    span
}

/// Closes the lifts `(c_i, h_i)` under the group law; `None` if two lifts land
/// over the same point of `K(δ)`, i.e. the values do not define a splitting.
fn splitting_closure(t: &ThetaType, gens: &[KVector], values: &[RootOfUnity]) -> Option<Vec<HeisenbergElement>> {
    let lifts: Vec<HeisenbergElement> = gens
        .iter()
        .zip(values)
        .map(|(z, &c)| HeisenbergElement { lambda: c, z: z.clone(), theta_type: t.clone() })
        .collect();
    let mut by_z: HashMap<KVector, RootOfUnity> = HashMap::new();
    let id = HeisenbergElement::identity(t);
    by_z.insert(id.z.clone(), id.lambda);
    let mut frontier = vec![id];
    while let Some(a) = frontier.pop() {
        for l in &lifts {
            let b = hmul(&a, l).expect("same type");
            match by_z.get(&b.z) {
                Some(&lam) if lam != b.lambda => return None,
                Some(_) => {}
                None => {
                    by_z.insert(b.z.clone(), b.lambda);
                    frontier.push(b);
                }
            }
        }
    }
    let mut out: Vec<_> =
        by_z.into_iter().map(|(z, lambda)| HeisenbergElement { lambda, z, theta_type: t.clone() }).collect();
    out.sort();
    Some(out)
}

/// Every maximal symmetric splitting pair `(H, σ)` with `H ≅ H(δ)`, enumerated
/// directly (no automorphisms involved).
pub fn maximal_symmetric_pairs(t: &ThetaType) -> Result<Vec<SplittingPair>> {
    t.require_even()?;
    t.require_enumerable()?;
    let n = t.scalar_modulus();
    let mut out = BTreeSet::new();
    for (_, gens) in lagrangians_of_type(t) {
        let g = gens.len();
        let mut idx = vec![0i64; g];
        loop {
            let values: Vec<RootOfUnity> = idx.iter().map(|&k| RootOfUnity::zeta(n, k)).collect();
            if let Some(elements) = splitting_closure(t, &gens, &values) {
                let by_z: HashMap<&KVector, RootOfUnity> = elements.iter().map(|e| (&e.z, e.lambda)).collect();
                let symmetric = elements.iter().all(|e| by_z[&e.z.neg(t)] == e.lambda);
                if symmetric {
                    out.insert(SplittingPair { elements });
                }
            }
            let mut p = g;
            let done = loop {
                if p == 0 {
                    break true;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < n as i64 {
                    break false;
                }
                idx[p] = 0;
            };
            if done {
                break;
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of `H ⊂ K(2δ)` isotropic with `H ≅ H(2δ)` and `2H = 2·(H(2δ) × 0)`:
/// the fibre of `H ↦ H/H[2]` over the standard point.
pub fn v_map_degree(t: &ThetaType) -> Result<usize> {
    let big = t.doubled();
    big.require_enumerable()?;
    let g = t.genus();
    let base: BTreeSet<KVector> =
        big.h_elements().iter().map(|h| KVector { x: h.clone(), y: super::HVector::zero(g) }.scale(2, &big)).collect();
    Ok(lagrangians_of_type(&big)
        .into_iter()
        .filter(|(h, _)| h.iter().map(|z| z.scale(2, &big)).collect::<BTreeSet<_>>() == base)
        .count())
}

/// Orbit–stabilizer bookkeeping for `U₀^sym ⊂ Aut^sym`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentReport {
    pub theta_type: ThetaType,
    pub aut_sym_order: usize,
    pub u0sym_setwise_order: usize,
    pub u0sym_pointwise_order: usize,
    pub index: usize,
    pub orbit_size: usize,
    pub pair_count: usize,
    pub lagrangian_count: usize,
    pub splittings_per_lagrangian: usize,
    pub v_degree: usize,
}

impl DescentReport {
    pub fn compute(t: &ThetaType) -> Result<Self> {
        let auts = enumerate_sym_automorphisms(t)?;
        let setwise = filter_stabilizer(t, &auts, StabilizerReading::Setwise);
        let pointwise = filter_stabilizer(t, &auts, StabilizerReading::Pointwise);
        let base = SplittingPair::base(t);
        let orbit: BTreeSet<SplittingPair> = auts.iter().map(|u| base.transform(u)).collect();
        let pairs = maximal_symmetric_pairs(t)?;
        let lagrangian_count =
            pairs.iter().map(|p| p.subgroup().into_iter().collect::<BTreeSet<_>>()).collect::<BTreeSet<_>>().len();
        Ok(DescentReport {
            theta_type: t.clone(),
            aut_sym_order: auts.len(),
            u0sym_setwise_order: setwise.len(),
            u0sym_pointwise_order: pointwise.len(),
            index: auts.len() / setwise.len().max(1),
            orbit_size: orbit.len(),
            pair_count: pairs.len(),
            lagrangian_count,
            splittings_per_lagrangian: pairs.len() / lagrangian_count.max(1),
            v_degree: v_map_degree(t)?,
        })
    }

    /// `[Aut^sym : U₀^sym]` equals the number of pairs and the action is transitive.
    pub fn orbit_stabilizer_consistent(&self) -> bool {
        self.index * self.u0sym_setwise_order == self.aut_sym_order
            && self.index == self.orbit_size
            && self.orbit_size == self.pair_count
    }
}
