//! Symplectic groups mod 4 carrying a theta characteristic, and the
//! discriminant character `λ: Γ(2g,±) → μ₄`.
//!
//! Coordinates are `(x₁..x_g, y₁..y_g)`. Matrices act on column vectors, so the
//! columns of a matrix are the images of the basis vectors. Elements of
//! `Sp(2g, ℤ/4)` for `g ≤ 2` are packed two bits per entry into a `u32`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

pub const MAX_GENUS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn slot(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" | "+" | "plus" => Ok(Parity::Even),
            "odd" | "-" | "minus" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("unknown parity '{other}' (expected even/odd)"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "+",
            Parity::Odd => "-",
        })
    }
}

/// The standard quadratic form `e^±` on `𝔽₂^{2g}`, written
/// `q(v) = Σ c_a v_a + Σ_{a<b} c_ab v_a v_b`; `e^±(v) = (−1)^{q(v)}`.
///
/// `e⁺` is `Σ x_i y_i`; `e⁻` replaces the first plane by `x₁² + x₁y₁ + y₁²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadFormF2 {
    pub g: usize,
    pub parity: Parity,
    linear: Vec<u8>,
    cross: Vec<Vec<u8>>,
}

impl QuadFormF2 {
    pub fn standard(g: usize, parity: Parity) -> Self {
        let n = 2 * g;
        let mut linear = vec![0u8; n];
        let mut cross = vec![vec![0u8; n]; n];
        for i in 0..g {
            cross[i][g + i] = 1;
        }
        if parity == Parity::Odd && g > 0 {
            linear[0] = 1;
            linear[g] = 1;
        }
        QuadFormF2 { g, parity, linear, cross }
    }

    /// `q(v) ∈ {0, 1}` for `v` read mod 2.
    pub fn q(&self, v: &[u8]) -> u8 {
        let n = 2 * self.g;
        let mut s = 0u8;
        for a in 0..n {
            s ^= self.linear[a] & v[a] & 1;
            for b in a + 1..n {
                s ^= self.cross[a][b] & v[a] & v[b] & 1;
            }
        }
        s
    }

    pub fn eval(&self, v: &[u8]) -> RootOfUnity {
        if self.q(v) == 1 {
            RootOfUnity::MINUS_ONE
        } else {
            RootOfUnity::ONE
        }
    }

    /// Linear form on symmetric matrices over `𝔽₂` induced by `q`.
    fn linearize(&self, m: &[u8]) -> u8 {
        let n = 2 * self.g;
        let mut s = 0u8;
        for a in 0..n {
            s ^= self.linear[a] & m[a * n + a] & 1;
            for b in a + 1..n {
                s ^= self.cross[a][b] & m[a * n + b] & 1;
            }
        }
        s
    }
}

// ---- packed ℤ/4 matrices -------------------------------------------------

fn pack(n: usize, e: &[u8]) -> u32 {
    (0..n * n).fold(0u32, |acc, k| acc | ((e[k] as u32 & 3) << (2 * k)))
}

fn unpack(n: usize, p: u32) -> Vec<u8> {
    (0..n * n).map(|k| ((p >> (2 * k)) & 3) as u8).collect()
}

fn mat_mul(n: usize, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u32;
            for k in 0..n {
                s += a[i * n + k] as u32 * b[k * n + j] as u32;
            }
            out[i * n + j] = (s & 3) as u8;
        }
    }
    out
}

fn packed_mul(n: usize, a: u32, b: u32) -> u32 {
    let mut out = 0u32;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u32;
            for k in 0..n {
                s += ((a >> (2 * (i * n + k))) & 3) * ((b >> (2 * (k * n + j))) & 3);
            }
            out |= (s & 3) << (2 * (i * n + j));
        }
    }
    out
}

fn identity(n: usize) -> Vec<u8> {
    let mut m = vec![0u8; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// `B(v,w) = Σ y_i(v)x_i(w) − x_i(v)y_i(w)`, reduced mod `modulus`.
fn form(g: usize, v: &[u8], w: &[u8], modulus: i64) -> i64 {
    let mut s = 0i64;
    for i in 0..g {
        s += v[g + i] as i64 * w[i] as i64 - v[i] as i64 * w[g + i] as i64;
    }
    s.rem_euclid(modulus)
}

fn column(n: usize, m: &[u8], j: usize) -> Vec<u8> {
    (0..n).map(|i| m[i * n + j]).collect()
}

fn preserves_form(g: usize, m: &[u8], modulus: i64) -> bool {
    let n = 2 * g;
    let cols: Vec<Vec<u8>> = (0..n).map(|j| column(n, m, j)).collect();
    let basis: Vec<Vec<u8>> = (0..n).map(|j| column(n, &identity(n), j)).collect();
    (0..n).all(|a| (0..n).all(|b| form(g, &cols[a], &cols[b], modulus) == form(g, &basis[a], &basis[b], modulus)))
}

fn mod2(m: &[u8]) -> Vec<u8> {
    m.iter().map(|&e| e & 1).collect()
}

fn preserves_quadratic(q: &QuadFormF2, m2: &[u8]) -> bool {
    let n = 2 * q.g;
    (0u32..1 << n).all(|bits| {
        let v: Vec<u8> = (0..n).map(|k| ((bits >> k) & 1) as u8).collect();
        let w: Vec<u8> = (0..n).map(|i| (0..n).fold(0u8, |s, k| s ^ (m2[i * n + k] & v[k]))).collect();
        q.q(&v) == q.q(&w)
    })
}

fn rank_f2(n: usize, m: &[u8]) -> usize {
    let mut rows: Vec<u32> =
        (0..n).map(|i| (0..n).fold(0u32, |acc, j| acc | (((m[i * n + j] & 1) as u32) << j))).collect();
    let mut rank = 0;
    for bit in 0..n {
        if let Some(p) = (rank..n).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            for r in 0..n {
                if r != rank && rows[r] >> bit & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

// ---- public element type -------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mod4SymplecticElement {
    pub g: usize,
    /// Row-major entries in `0..4`.
    pub matrix: Vec<u8>,
    pub parity: Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub in_sp4: bool,
    pub in_gamma_pm: bool,
    pub in_gamma2: bool,
}

fn shape(entries: &[i64]) -> Result<usize> {
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != entries.len() || !n.is_multiple_of(2) {
        return Err(Error::BadShape(format!("{} entries do not form a 2g×2g matrix", entries.len())));
    }
    Ok(n / 2)
}

impl Mod4SymplecticElement {
    /// From row-major integer entries, reduced mod 4; no membership check.
    pub fn from_entries(entries: &[i64], parity: Parity) -> Result<Self> {
        let g = shape(entries)?;
        Ok(Mod4SymplecticElement { g, matrix: entries.iter().map(|e| e.rem_euclid(4) as u8).collect(), parity })
    }

    /// Parses `"a,b,c,d"` (row-major).
    pub fn parse(s: &str, parity: Parity) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry '{p}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(&entries, parity)
    }

    pub fn identity(g: usize, parity: Parity) -> Self {
        Mod4SymplecticElement { g, matrix: identity(2 * g), parity }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.g, rhs.g, "genus mismatch");
        Mod4SymplecticElement { g: self.g, matrix: mat_mul(2 * self.g, &self.matrix, &rhs.matrix), parity: self.parity }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.g, self.parity), |acc, _| acc.mul(self))
    }

    pub fn mod2(&self) -> Vec<u8> {
        mod2(&self.matrix)
    }

    pub fn membership(&self) -> Membership {
        let g = self.g;
        let in_sp4 = preserves_form(g, &self.matrix, 4);
        let m2 = self.mod2();
        let in_gamma_pm = in_sp4 && preserves_quadratic(&QuadFormF2::standard(g, self.parity), &m2);
        let in_gamma2 = m2 == identity(2 * g);
        Membership { in_sp4, in_gamma_pm, in_gamma2: in_sp4 && in_gamma2 }
    }

    fn packed(&self) -> u32 {
        pack(2 * self.g, &self.matrix)
    }
}

impl fmt::Display for Mod4SymplecticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 2 * self.g;
        let rows: Vec<String> = (0..n)
            .map(|i| self.matrix[i * n..(i + 1) * n].iter().map(u8::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]{}", rows.join(";"), self.parity)
    }
}

pub fn reduce_mod2_and_membership(entries: &[i64], parity: Parity) -> Result<Membership> {
    Ok(Mod4SymplecticElement::from_entries(entries, parity)?.membership())
}

/// Dickson invariant `(−1)^{rank(ḡ + I)}` of `ḡ ∈ O(2g,±)` (row-major mod-2 entries).
pub fn dickson(mat2: &[u8], parity: Parity) -> Result<RootOfUnity> {
    let g = shape(&mat2.iter().map(|&e| e as i64).collect::<Vec<_>>())?;
    let n = 2 * g;
    let m2 = mod2(mat2);
    if !preserves_form(g, &m2, 2) || !preserves_quadratic(&QuadFormF2::standard(g, parity), &m2) {
        return Err(Error::NotOrthogonal(format!("matrix does not preserve e^{parity}")));
    }
    let shifted: Vec<u8> = m2.iter().zip(identity(n)).map(|(a, b)| a ^ b).collect();
    Ok(if rank_f2(n, &shifted) % 2 == 1 { RootOfUnity::MINUS_ONE } else { RootOfUnity::ONE })
}

/// `t_v(z) = z + B(v,z)·v` over `ℤ/4`.
pub fn transvection(v: &[i64], parity: Parity) -> Mod4SymplecticElement {
    assert!(v.len().is_multiple_of(2) && !v.is_empty(), "vector length must be 2g");
    let n = v.len();
    let g = n / 2;
    let v: Vec<u8> = v.iter().map(|e| e.rem_euclid(4) as u8).collect();
    let mut m = identity(n);
    for j in 0..n {
        let ej = column(n, &identity(n), j);
        let c = form(g, &v, &ej, 4) as u8;
        for i in 0..n {
            m[i * n + j] = (m[i * n + j] + c * v[i]) & 3;
        }
    }
    Mod4SymplecticElement { g, matrix: m, parity }
}

// ---- Γ(2g,±) and the character solve -------------------------------------

/// `Γ(2g,±)` enumerated, with the discriminant tabulated on it.
#[derive(Debug)]
pub struct DiscriminantTable {
    pub g: usize,
    pub parity: Parity,
    elements: Vec<u32>,
    lambda: HashMap<u32, u8>,
    pub gamma2_order: usize,
    pub orthogonal_order: usize,
    /// Number of characters meeting both conditions; expected to be 1.
    pub solutions: usize,
    /// Lifts of orthogonal elements that had to be added to the generators.
    pub extra_generators: usize,
}

impl DiscriminantTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Mod4SymplecticElement> + '_ {
        let n = 2 * self.g;
        self.elements.iter().map(move |&p| Mod4SymplecticElement {
            g: self.g,
            matrix: unpack(n, p),
            parity: self.parity,
        })
    }

    pub fn lambda(&self, gamma: &Mod4SymplecticElement) -> Option<RootOfUnity> {
        if gamma.g != self.g {
            return None;
        }
        self.lambda.get(&gamma.packed()).map(|&k| RootOfUnity::zeta(4, k as i64))
    }
}

fn closure(n: usize, gens: &[u32]) -> Vec<u32> {
    let id = pack(n, &identity(n));
    let mut seen: HashSet<u32> = HashSet::from([id]);
    let mut order = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for &s in gens {
            let b = packed_mul(n, a, s);
            if seen.insert(b) {
                order.push(b);
                queue.push_back(b);
            }
        }
    }
    order
}

fn all_vectors(n: usize, modulus: u32) -> Vec<Vec<u8>> {
    (0..modulus.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % modulus) as u8;
                    k /= modulus;
                    d
                })
                .collect()
        })
        .collect()
}

fn orthogonal_group(q: &QuadFormF2) -> Vec<Vec<u8>> {
    let n = 2 * q.g;
    (0u32..1 << (n * n))
        .map(|bits| (0..n * n).map(|k| ((bits >> k) & 1) as u8).collect::<Vec<u8>>())
        .filter(|m| preserves_form(q.g, m, 2) && preserves_quadratic(q, m))
        .collect()
}

fn symplectic_lift(g: usize, m2: &[u8]) -> Option<u32> {
    let n = 2 * g;
    (0u32..1 << (n * n)).find_map(|bits| {
        let m: Vec<u8> = (0..n * n).map(|k| m2[k] + 2 * ((bits >> k) & 1) as u8).collect();
        preserves_form(g, &m, 4).then(|| pack(n, &m))
    })
}

/// Labels the group generated by `gens` with exponents mod 4 extending the
/// given generator values; `None` if the values do not define a character.
fn label(n: usize, gens: &[(u32, u8)]) -> Option<HashMap<u32, u8>> {
    let id = pack(n, &identity(n));
    let mut lab: HashMap<u32, u8> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        let la = lab[&a];
        for &(s, ls) in gens {
            let b = packed_mul(n, a, s);
            let want = (la + ls) & 3;
            match lab.get(&b) {
                Some(&lb) if lb != want => return None,
                Some(_) => {}
                None => {
                    lab.insert(b, want);
                    queue.push_back(b);
                }
            }
        }
    }
    Some(lab)
}

fn build_table(g: usize, parity: Parity) -> Result<DiscriminantTable> {
    let n = 2 * g;
    let q = QuadFormF2::standard(g, parity);

    // (ii): every anisotropic lift maps to ζ₄
    let mut fixed: Vec<(u32, u8)> = Vec::new();
    for v in all_vectors(n, 4) {
        if q.q(&mod2(&v)) == 1 {
            let v: Vec<i64> = v.iter().map(|&e| e as i64).collect();
            fixed.push((transvection(&v, parity).packed(), 1));
        }
    }
    // (i): I + 2·S·J on a basis of symmetric S, valued by the linearization of q
    let mut j2 = vec![0u8; n * n];
    for i in 0..g {
        j2[i * n + g + i] = 1;
        j2[(g + i) * n + i] = 1;
    }
    for a in 0..n {
        for b in a..n {
            let mut s = vec![0u8; n * n];
            s[a * n + b] = 1;
            s[b * n + a] = 1;
            let sj = mat_mul(n, &s, &j2);
            let m: Vec<u8> = identity(n).iter().zip(&sj).map(|(i, x)| (i + 2 * (x & 1)) & 3).collect();
            fixed.push((pack(n, &m), 2 * q.linearize(&s)));
        }
    }

    let orth = orthogonal_group(&q);
    let mut gens: Vec<u32> = fixed.iter().map(|&(p, _)| p).collect();
    let mut extras: Vec<u32> = Vec::new();
    let mut group = closure(n, &gens);
    loop {
        let reached: HashSet<Vec<u8>> = group.iter().map(|&p| mod2(&unpack(n, p))).collect();
        let Some(missing) = orth.iter().find(|m| !reached.contains(*m)) else { break };
        let lift = symplectic_lift(g, missing).expect("orthogonal elements lift to Sp(2g, Z/4)");
        extras.push(lift);
        gens.push(lift);
        group = closure(n, &gens);
    }
    let gamma2_order = 1usize << (g * (2 * g + 1));
    if group.len() != gamma2_order * orth.len() {
        return Err(Error::NotMember(format!(
            "enumerated |Γ({n},{parity})| = {} but |Γ(2)|·|O| = {}",
            group.len(),
            gamma2_order * orth.len()
        )));
    }

    // small generating subset, fixed generators first
    let mut small: Vec<usize> = Vec::new();
    let mut span: HashSet<u32> = HashSet::from([pack(n, &identity(n))]);
    for (k, &p) in gens.iter().enumerate() {
        if span.len() == group.len() {
            break;
        }
        if !span.contains(&p) {
            small.push(k);
            let sub: Vec<u32> = small.iter().map(|&i| gens[i]).collect();
            span = closure(n, &sub).into_iter().collect();
        }
    }
    let free: Vec<usize> = small.iter().copied().filter(|&k| k >= fixed.len()).collect();

    let mut solutions = Vec::new();
    for code in 0..4u32.pow(free.len() as u32) {
        let mut values: HashMap<usize, u8> = HashMap::new();
        for (pos, &k) in free.iter().enumerate() {
            values.insert(k, ((code >> (2 * pos)) & 3) as u8);
        }
        let sub: Vec<(u32, u8)> =
            small.iter().map(|&k| (gens[k], if k < fixed.len() { fixed[k].1 } else { values[&k] })).collect();
        if let Some(lab) = label(n, &sub) {
            if fixed.iter().all(|(p, v)| lab[p] == *v) {
                solutions.push(lab);
            }
        }
    }
    if solutions.len() != 1 {
        return Err(Error::NonUnique(solutions.len()));
    }
    let mut elements = group;
    elements.sort_unstable();
    Ok(DiscriminantTable {
        g,
        parity,
        elements,
        lambda: solutions.pop().expect("one solution"),
        gamma2_order,
        orthogonal_order: orth.len(),
        solutions: 1,
        extra_generators: extras.len(),
    })
}

static TABLES: [[OnceLock<Result<DiscriminantTable>>; 2]; MAX_GENUS] =
    [[OnceLock::new(), OnceLock::new()], [OnceLock::new(), OnceLock::new()]];

/// The enumerated group with its discriminant, built once per `(g, parity)`.
pub fn discriminant_table(g: usize, parity: Parity) -> Result<&'static DiscriminantTable> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::TooLarge(format!("genus {g} outside 1..={MAX_GENUS}")));
    }
    TABLES[g - 1][parity.slot()].get_or_init(|| build_table(g, parity)).as_ref().map_err(Clone::clone)
}

pub fn discriminant(gamma: &Mod4SymplecticElement) -> Result<RootOfUnity> {
    if !gamma.membership().in_gamma_pm {
        return Err(Error::NotMember(format!("{gamma} is not in Γ({},{})", 2 * gamma.g, gamma.parity)));
    }
    let table = discriminant_table(gamma.g, gamma.parity)?;
    table.lambda(gamma).ok_or_else(|| Error::NotMember(format!("{gamma} missing from the enumeration")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(e: &[i64], p: Parity) -> Mod4SymplecticElement {
        Mod4SymplecticElement::from_entries(e, p).unwrap()
    }

    #[test]
    fn membership_examples() {
        let id = reduce_mod2_and_membership(&[1, 0, 0, 1], Parity::Even).unwrap();
        assert!(id.in_sp4 && id.in_gamma_pm && id.in_gamma2);
        let t = transvection(&[1, 1], Parity::Even);
        let m = t.membership();
        assert!(m.in_sp4 && m.in_gamma_pm && !m.in_gamma2);
        let shear = reduce_mod2_and_membership(&[1, 1, 0, 1], Parity::Even).unwrap();
        assert!(shear.in_sp4 && !shear.in_gamma_pm);
        assert!(matches!(reduce_mod2_and_membership(&[1, 0, 0], Parity::Even), Err(Error::BadShape(_))));
    }

    #[test]
    fn transvection_examples() {
        assert_eq!(transvection(&[0, 0], Parity::Even), Mod4SymplecticElement::identity(1, Parity::Even));
        assert_eq!(transvection(&[1, 1], Parity::Even).matrix, vec![2, 3, 1, 0]);
        assert!(transvection(&[2, 0], Parity::Even).membership().in_gamma2);
        for v in all_vectors(4, 4) {
            let v: Vec<i64> = v.iter().map(|&e| e as i64).collect();
            assert!(transvection(&v, Parity::Odd).membership().in_sp4);
        }
    }

    #[test]
    fn dickson_examples() {
        assert_eq!(dickson(&[1, 0, 0, 1], Parity::Even).unwrap(), RootOfUnity::ONE);
        assert_eq!(dickson(&[0, 1, 1, 0], Parity::Even).unwrap(), RootOfUnity::MINUS_ONE);
        assert!(matches!(dickson(&[1, 1, 0, 1], Parity::Even), Err(Error::NotOrthogonal(_))));
        for p in [Parity::Even, Parity::Odd] {
            let o = orthogonal_group(&QuadFormF2::standard(1, p));
            assert_eq!(o.len(), if p == Parity::Even { 2 } else { 6 });
            for a in &o {
                for b in &o {
                    let ab: Vec<u8> = mat_mul(2, a, b).iter().map(|e| e & 1).collect();
                    assert_eq!(dickson(&ab, p).unwrap(), dickson(a, p).unwrap() * dickson(b, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn orthogonal_orders_genus_two() {
        assert_eq!(orthogonal_group(&QuadFormF2::standard(2, Parity::Even)).len(), 72);
        assert_eq!(orthogonal_group(&QuadFormF2::standard(2, Parity::Odd)).len(), 120);
    }

    #[test]
    fn genus_one_tables() {
        for (p, order) in [(Parity::Even, 16), (Parity::Odd, 48)] {
            let t = discriminant_table(1, p).unwrap();
            assert_eq!(t.order(), order);
            assert_eq!(t.order(), t.gamma2_order * t.orthogonal_order);
            let els: Vec<_> = t.elements().collect();
            for a in &els {
                let la = t.lambda(a).unwrap();
                assert_eq!(la.pow(2), dickson(&a.mod2(), p).unwrap());
                if a.membership().in_gamma2 {
                    assert_eq!(la.pow(2), RootOfUnity::ONE);
                }
                for b in &els {
                    assert_eq!(t.lambda(&a.mul(b)).unwrap(), la * t.lambda(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn genus_two_odd_is_unique_and_multiplicative() {
        use rand::{Rng, SeedableRng};
        let t = discriminant_table(2, Parity::Odd).unwrap();
        assert_eq!(t.order(), 1024 * 120);
        let els: Vec<_> = t.elements().collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let a = &els[rng.gen_range(0..els.len())];
            let b = &els[rng.gen_range(0..els.len())];
            let la = t.lambda(a).unwrap();
            assert_eq!(t.lambda(&a.mul(b)).unwrap(), la * t.lambda(b).unwrap());
            assert_eq!(la.pow(2), dickson(&a.mod2(), Parity::Odd).unwrap());
        }
    }

    #[test]
    fn genus_two_even_is_not_pinned_down() {
        // O+(4,2) carries a sign character that is trivial on reflections and
        // on Γ(2), so both conditions together leave two solutions
        assert_eq!(discriminant_table(2, Parity::Even).unwrap_err(), Error::NonUnique(2));
    }

    #[test]
    fn discriminant_examples() {
        let p = Parity::Even;
        assert_eq!(discriminant(&Mod4SymplecticElement::identity(1, p)).unwrap(), RootOfUnity::ONE);
        assert_eq!(discriminant(&transvection(&[1, 1], p)).unwrap(), RootOfUnity::I);
        assert_eq!(discriminant(&el(&[0, 3, 1, 0], p)).unwrap(), RootOfUnity::I);
        assert!(matches!(discriminant(&el(&[1, 1, 0, 1], p)), Err(Error::NotMember(_))));
    }

    #[test]
    fn transvection_squares() {
        for p in [Parity::Even, Parity::Odd] {
            for v in all_vectors(2, 4) {
                let q = QuadFormF2::standard(1, p);
                if q.q(&mod2(&v)) == 1 {
                    let v: Vec<i64> = v.iter().map(|&e| e as i64).collect();
                    let t2 = transvection(&v, p).pow(2);
                    assert_eq!(discriminant(&t2).unwrap(), RootOfUnity::MINUS_ONE);
                }
            }
        }
    }

    #[test]
    fn parity_parse() {
        assert_eq!("even".parse::<Parity>().unwrap(), Parity::Even);
        assert_eq!("-".parse::<Parity>().unwrap(), Parity::Odd);
        assert!("neither".parse::<Parity>().is_err());
    }
}
