//! The Schrödinger representation `V(δ)` of `G(δ)` on functions on `H(δ)`.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::heisenberg::{h_pairing, HeisenbergElement, SymmetricSplitting, ThetaType};
use crate::linalg::{normalize_phase, CMatrix};

/// Largest `|H(δ)|` for which matrices are built.
pub const MAX_DEGREE: usize = 1 << 10;

/// Largest dimension for which the intertwiner system (`d²` unknowns) is solved.
pub const MAX_INTERTWINER_DEGREE: usize = 64;

const NULL_TOL: f64 = 1e-9;

/// A monomial matrix on the basis `{δ_ν}`, `ν ∈ H(δ)` in lexicographic order:
/// column `ν` has the single entry `coeffs[ν]` in row `perm[ν]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchrodingerMatrix {
    perm: Vec<usize>,
    coeffs: Vec<RootOfUnity>,
}

impl SchrodingerMatrix {
    pub fn identity(d: usize) -> Self {
        SchrodingerMatrix { perm: (0..d).collect(), coeffs: vec![RootOfUnity::ONE; d] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Exact entry `(row, col)`; `None` for a structural zero.
    pub fn entry(&self, row: usize, col: usize) -> Option<RootOfUnity> {
        (self.perm[col] == row).then_some(self.coeffs[col])
    }

    pub fn mul(&self, rhs: &SchrodingerMatrix) -> SchrodingerMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        let perm = rhs.perm.iter().map(|&r| self.perm[r]).collect();
        let coeffs = rhs.coeffs.iter().zip(&rhs.perm).map(|(&c, &r)| self.coeffs[r] * c).collect();
        SchrodingerMatrix { perm, coeffs }
    }

    pub fn to_dense(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (col, (&row, c)) in self.perm.iter().zip(&self.coeffs).enumerate() {
            m[(row, col)] = c.embed();
        }
        m
    }
}

impl Serialize for SchrodingerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_dense().serialize(s)
    }
}

fn check_degree(t: &ThetaType) -> Result<()> {
    if t.degree() > MAX_DEGREE {
        return Err(Error::TooLarge(format!("|H{t}| = {} exceeds {MAX_DEGREE}", t.degree())));
    }
    Ok(())
}

/// `ρ(λ, x, y): δ_ν ↦ λ·⟨x, ν⟩·δ_{ν+y}`.
pub fn rho(a: &HeisenbergElement) -> Result<SchrodingerMatrix> {
    let t = &a.theta_type;
    check_degree(t)?;
    let hs = t.h_elements();
    let mut perm = Vec::with_capacity(hs.len());
    let mut coeffs = Vec::with_capacity(hs.len());
    for nu in &hs {
        perm.push(t.h_index(&nu.add(&a.z.y, t)));
        coeffs.push(a.lambda * h_pairing(&a.z.x, nu, t));
    }
    Ok(SchrodingerMatrix { perm, coeffs })
}

/// Common fixed vectors of `ρ(e)` for `e` in `elements`.
pub fn fixed_space(t: &ThetaType, elements: &[HeisenbergElement]) -> Result<Vec<Vec<Complex64>>> {
    check_degree(t)?;
    let d = t.degree();
    let id = CMatrix::identity(d);
    let mut rows = Vec::with_capacity(elements.len() * d);
    for e in elements {
        let m = rho(e)?.to_dense().sub(&id);
        rows.extend(m.to_rows());
    }
    if rows.is_empty() {
        rows.push(vec![Complex64::new(0.0, 0.0); d]);
    }
    let mut basis = CMatrix::from_rows(&rows).nullspace(NULL_TOL);
    basis.iter_mut().for_each(|v| normalize_phase(v));
    Ok(basis)
}

/// `V(δ)^{σH(δ)}`.
pub fn invariant_subspace(sigma: &SymmetricSplitting) -> Result<Vec<Vec<Complex64>>> {
    fixed_space(&sigma.theta_type, &sigma.image())
}

/// Basis of `{M : M·A_i = B_i·M}`, each normalized so its largest entry is 1.
pub fn intertwiner_space(a: &[CMatrix], b: &[CMatrix]) -> Result<Vec<CMatrix>> {
    if a.len() != b.len() {
        return Err(Error::BadShape(format!("{} source vs {} target matrices", a.len(), b.len())));
    }
    let d = match (a.first(), b.first()) {
        (Some(m), _) | (None, Some(m)) => m.rows(),
        (None, None) => return Err(Error::BadShape("no matrices given".into())),
    };
    if a.iter().chain(b).any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::BadShape("matrices must all be square of one size".into()));
    }
    if d > MAX_INTERTWINER_DEGREE {
        return Err(Error::TooLarge(format!("intertwiner of size {d} exceeds {MAX_INTERTWINER_DEGREE}")));
    }
    let n = d * d;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        for r in 0..d {
            for c in 0..d {
                // (M·A)[r][c] − (B·M)[r][c] in the unknowns M[p][q] ↦ p·d + q
                let mut row = vec![Complex64::new(0.0, 0.0); n];
                for k in 0..d {
                    row[r * d + k] += ai[(k, c)];
                    row[k * d + c] -= bi[(r, k)];
                }
                if row.iter().any(|z| z.norm() > 0.0) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Complex64::new(0.0, 0.0); n]);
    }
    let basis = CMatrix::from_rows(&rows).nullspace(NULL_TOL);
    Ok(basis
        .into_iter()
        .map(|mut v| {
            normalize_phase(&mut v);
            CMatrix::from_rows(&v.chunks(d).map(<[Complex64]>::to_vec).collect::<Vec<_>>())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{canonical_splitting, elements_with_center, enumerate_symmetric_splittings, hmul, KVector};

    fn ty(d: &[u32]) -> ThetaType {
        ThetaType::new(d.to_vec()).unwrap()
    }

    fn elem(t: &ThetaType, q: RootOfUnity, x: &[i64], y: &[i64]) -> HeisenbergElement {
        HeisenbergElement::new(q, KVector::new(x, y, t), t.clone()).unwrap()
    }

    #[test]
    fn rho_examples() {
        let t = ty(&[2]);
        let d = rho(&elem(&t, RootOfUnity::ONE, &[1], &[0])).unwrap();
        assert_eq!(d.entry(0, 0), Some(RootOfUnity::ONE));
        assert_eq!(d.entry(1, 1), Some(RootOfUnity::MINUS_ONE));
        assert_eq!(d.entry(0, 1), None);
        let s = rho(&elem(&t, RootOfUnity::ONE, &[0], &[1])).unwrap();
        assert_eq!(s.entry(1, 0), Some(RootOfUnity::ONE));
        assert_eq!(s.entry(0, 1), Some(RootOfUnity::ONE));
        assert_eq!(rho(&HeisenbergElement::identity(&t)).unwrap(), SchrodingerMatrix::identity(2));
    }

    #[test]
    fn rho_is_exact_homomorphism_of_weight_one() {
        for t in [ty(&[2]), ty(&[4]), ty(&[2, 2])] {
            let n = t.exponent() as u64;
            let els = elements_with_center(&t, n);
            let mats: Vec<_> = els.iter().map(|e| rho(e).unwrap()).collect();
            for (a, ma) in els.iter().zip(&mats) {
                for (b, mb) in els.iter().zip(&mats) {
                    assert_eq!(rho(&hmul(a, b).unwrap()).unwrap(), ma.mul(mb));
                }
                if a.z.is_zero() {
                    let d = t.degree();
                    assert_eq!(*ma, SchrodingerMatrix { perm: (0..d).collect(), coeffs: vec![a.lambda; d] });
                }
            }
        }
    }

    #[test]
    fn rho_is_unitary() {
        let t = ty(&[4]);
        for e in elements_with_center(&t, 4) {
            assert!(rho(&e).unwrap().to_dense().is_unitary(1e-12));
        }
    }

    #[test]
    fn invariant_subspace_of_canonical_splitting_is_delta_zero() {
        for t in [ty(&[2]), ty(&[2, 2]), ty(&[4])] {
            let basis = invariant_subspace(&canonical_splitting(&t)).unwrap();
            assert_eq!(basis.len(), 1);
            let mut delta0 = vec![Complex64::new(0.0, 0.0); t.degree()];
            delta0[0] = Complex64::new(1.0, 0.0);
            assert_eq!(basis[0], delta0);
        }
        for s in enumerate_symmetric_splittings(&ty(&[2])).unwrap() {
            assert_eq!(invariant_subspace(&s).unwrap().len(), 1);
        }
    }

    #[test]
    fn intertwiner_examples() {
        let t = ty(&[2]);
        let image: Vec<CMatrix> = elements_with_center(&t, 4).iter().map(|e| rho(e).unwrap().to_dense()).collect();
        let space = intertwiner_space(&image, &image).unwrap();
        assert_eq!(space.len(), 1);
        assert!(space[0].max_dist(&CMatrix::identity(2)) < 1e-12);

        let p = rho(&elem(&t, RootOfUnity::I, &[1], &[1])).unwrap().to_dense();
        let conj: Vec<CMatrix> = image.iter().map(|m| &(&p * m) * &p.adjoint()).collect();
        let space = intertwiner_space(&image, &conj).unwrap();
        assert_eq!(space.len(), 1);

        let ids = vec![CMatrix::identity(3)];
        assert_eq!(intertwiner_space(&ids, &ids).unwrap().len(), 9);
    }

    #[test]
    fn too_large_types_are_rejected() {
        let t = ty(&[2; 11]);
        assert!(matches!(rho(&HeisenbergElement::identity(&t)), Err(Error::TooLarge(_))));
    }
}
