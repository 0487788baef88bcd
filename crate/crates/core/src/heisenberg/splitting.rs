use serde::{Deserialize, Serialize};

use super::{h2_map, HVector, HeisenbergElement, KVector, ThetaType};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

/// A splitting `σ(h) = (σ_*(h), h, 0)` of `G(δ)` over `H(δ) × 0` with
/// `σ_*: H(δ) → μ₂` a homomorphism, stored by its values on the `g`
/// standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetricSplitting {
    pub theta_type: ThetaType,
    pub sigma_star: Vec<RootOfUnity>,
}

impl SymmetricSplitting {
    /// `σ_*(h) = ∏ σ_*(e_i)^{h_i}`.
    pub fn sigma_star_at(&self, h: &HVector) -> RootOfUnity {
        self.sigma_star.iter().zip(&h.0).fold(RootOfUnity::ONE, |acc, (&s, &c)| acc * s.pow(c as i64))
    }

    pub fn apply(&self, h: &HVector) -> HeisenbergElement {
        let g = self.theta_type.genus();
        HeisenbergElement {
            lambda: self.sigma_star_at(h),
            z: KVector { x: h.clone(), y: HVector::zero(g) },
            theta_type: self.theta_type.clone(),
        }
    }

    /// The image `σ(H(δ))`, in lexicographic order of `h`.
    pub fn image(&self) -> Vec<HeisenbergElement> {
        self.theta_type.h_elements().iter().map(|h| self.apply(h)).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.sigma_star.iter().all(|s| s.is_one())
    }
}

/// `σ_can(h) = (1, h, 0)`.
pub fn canonical_splitting(t: &ThetaType) -> SymmetricSplitting {
    SymmetricSplitting { theta_type: t.clone(), sigma_star: vec![RootOfUnity::ONE; t.genus()] }
}

/// Every symmetric splitting over `H(δ)`: one per homomorphism `H(δ) → μ₂`.
pub fn enumerate_symmetric_splittings(t: &ThetaType) -> Result<Vec<SymmetricSplitting>> {
    t.require_even()?;
    let g = t.genus();
    let mut out = Vec::with_capacity(1 << g);
    for mask in 0u32..(1 << g) {
        let sigma_star = (0..g)
            .map(|i| if mask >> (g - 1 - i) & 1 == 1 { RootOfUnity::MINUS_ONE } else { RootOfUnity::ONE })
            .collect();
        out.push(SymmetricSplitting { theta_type: t.clone(), sigma_star });
    }
    Ok(out)
}

/// Pushes a symmetric splitting of `G(2δ)` through `H₂` to a splitting of
/// `G(δ)` over `H(δ)`.
pub fn h2_pushforward_splitting(sigma: &SymmetricSplitting) -> Result<SymmetricSplitting> {
    let half = sigma.theta_type.halved()?;
    half.require_even().map_err(|_| Error::TypeMismatch(format!("{half} is not even")))?;
    let g = half.genus();
    let mut values: Vec<Option<RootOfUnity>> = vec![None; half.degree()];
    for h in sigma.theta_type.h_elements() {
        let image = h2_map(&sigma.apply(&h))?;
        if !image.z.y.is_zero() {
            return Err(Error::TypeMismatch("H2 image leaves H(δ) × 0".into()));
        }
        let slot = &mut values[half.h_index(&image.z.x)];
        match slot {
            Some(prev) if *prev != image.lambda => {
                return Err(Error::TypeMismatch("H2 image is not a splitting".into()));
            }
            _ => *slot = Some(image.lambda),
        }
    }
    let sigma_star = (0..g)
        .map(|i| {
            let mut e = HVector::zero(g);
            e.0[i] = 1 % half.divisors()[i];
            values[half.h_index(&e)].expect("H2 is onto H(δ)")
        })
        .collect();
    Ok(SymmetricSplitting { theta_type: half, sigma_star })
}

#[cfg(test)]
mod tests {
    use super::super::{d_minus_one, hmul};
    use super::*;

    fn ty(d: &[u32]) -> ThetaType {
        ThetaType::new(d.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let s = canonical_splitting(&ty(&[2]));
        assert_eq!(s.sigma_star, vec![RootOfUnity::ONE]);
        assert!(canonical_splitting(&ty(&[2, 2])).is_canonical());
        for t in [ty(&[2]), ty(&[4]), ty(&[2, 2])] {
            let image = canonical_splitting(&t).image();
            for a in &image {
                for b in &image {
                    assert!(image.contains(&hmul(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn splitting_counts() {
        assert_eq!(enumerate_symmetric_splittings(&ty(&[2])).unwrap().len(), 2);
        assert_eq!(enumerate_symmetric_splittings(&ty(&[2, 2])).unwrap().len(), 4);
        assert_eq!(enumerate_symmetric_splittings(&ty(&[4])).unwrap().len(), 2);
        assert_eq!(enumerate_symmetric_splittings(&ty(&[4, 4])).unwrap().len(), 4);
        assert!(matches!(enumerate_symmetric_splittings(&ty(&[1, 2])), Err(Error::OddType(_))));
    }

    #[test]
    fn splittings_are_symmetric_homomorphisms() {
        for t in [ty(&[2]), ty(&[4]), ty(&[2, 2]), ty(&[2, 4])] {
            for s in enumerate_symmetric_splittings(&t).unwrap() {
                let hs = t.h_elements();
                for h in &hs {
                    assert_eq!(d_minus_one(&s.apply(h)), s.apply(&h.neg(&t)));
                    assert_eq!(s.sigma_star_at(h).pow(2), RootOfUnity::ONE);
                    for k in &hs {
                        assert_eq!(hmul(&s.apply(h), &s.apply(k)).unwrap(), s.apply(&h.add(k, &t)));
                    }
                }
            }
        }
    }

    #[test]
    fn pushforward_is_canonical() {
        for t in [ty(&[4]), ty(&[4, 4])] {
            let half = t.halved().unwrap();
            for s in enumerate_symmetric_splittings(&t).unwrap() {
                assert_eq!(h2_pushforward_splitting(&s).unwrap(), canonical_splitting(&half));
            }
        }
        assert!(matches!(h2_pushforward_splitting(&canonical_splitting(&ty(&[2]))), Err(Error::TypeMismatch(_))));
    }
}
