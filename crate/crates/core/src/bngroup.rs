//! `GL_n(q)` with its split BN-pair: upper triangular `B = U ⋊ H`, monomial
//! `N`, permutation matrices as Weyl representatives.
//!
//! Group elements are plain [`Matrix`] values over `GF(q)`. Matrices act on
//! column vectors here, so `n_w e_j = e_{w(j)}`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::coxeter::{CoxeterError, CoxeterGroup, CoxeterType};
use crate::exactfield::{prime_power, ExactError, Field, Matrix};

pub const DEFAULT_MAX_INDEX: u64 = 5000;
pub const DEFAULT_MAX_UNIPOTENT: u64 = 4096;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("matrix degree must be at least 1")]
    ZeroDegree,
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: String, cap: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid composition {0:?}")]
    InvalidComposition(Vec<usize>),
    #[error("characteristic {0} equals the defining characteristic")]
    SameCharacteristic(u64),
    #[error(transparent)]
    Field(#[from] ExactError),
    #[error(transparent)]
    Weyl(#[from] CoxeterError),
}

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_index: u64,
    pub max_unipotent: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_index: DEFAULT_MAX_INDEX, max_unipotent: DEFAULT_MAX_UNIPOTENT }
    }
}

/// What a generator of the fixed generating set is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenKind {
    /// `x_{ij}(t)` where `t` is the `basis`-th power of the field generator.
    Root { i: usize, j: usize, basis: usize },
    /// `diag(1, .., ζ, .., 1)` with `ζ` primitive, at position `i`.
    Torus { i: usize },
    /// Permutation matrix of the simple reflection `s`.
    Weyl { s: usize },
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub kind: GenKind,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOrders {
    pub g: BigUint,
    pub b: BigUint,
    pub u: BigUint,
    pub h: BigUint,
    pub index: BigUint,
}

/// `g = b n_w u` with `u ∈ U_w`.
#[derive(Debug, Clone)]
pub struct Bruhat {
    pub b: Matrix,
    pub w: usize,
    pub u: Matrix,
}

/// `g = u n_w b` with `u ∈ U_{w^{-1}}`.
#[derive(Debug, Clone)]
pub struct ReversedBruhat {
    pub u: Matrix,
    pub w: usize,
    pub b: Matrix,
}

#[derive(Debug, Clone)]
pub struct BNGroup {
    n: usize,
    q: u64,
    field: Field,
    weyl: CoxeterGroup,
    weyl_reps: Vec<Matrix>,
    generators: Vec<Generator>,
    orders: GroupOrders,
    caps: Caps,
}

/// `[m]_q = 1 + q + ... + q^{m-1}`.
pub fn q_integer(m: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    (0..m).fold(BigUint::from(0u32), |acc, i| acc + q.pow(i as u32))
}

pub fn q_factorial(m: usize, q: u64) -> BigUint {
    (1..=m).fold(BigUint::from(1u32), |acc, i| acc * q_integer(i, q))
}

/// Gaussian multinomial `[n]_q! / Π [λ_i]_q!`.
pub fn gaussian_multinomial(parts: &[usize], q: u64) -> BigUint {
    let n = parts.iter().sum();
    let den = parts.iter().fold(BigUint::from(1u32), |acc, &p| acc * q_factorial(p, q));
    q_factorial(n, q) / den
}

pub fn gl_orders(n: usize, q: u64) -> GroupOrders {
    let qb = BigUint::from(q);
    let qn = qb.pow(n as u32);
    let g = (0..n).fold(BigUint::from(1u32), |acc, i| acc * (&qn - qb.pow(i as u32)));
    let u = qb.pow((n * (n - 1) / 2) as u32);
    let h = BigUint::from(q - 1).pow(n as u32);
    let b = &u * &h;
    let index = q_factorial(n, q);
    GroupOrders { g, b, u, h, index }
}

fn check_composition(n: usize, parts: &[usize]) -> Result<(), GroupError> {
    if parts.iter().sum::<usize>() != n || parts.contains(&0) {
        return Err(GroupError::InvalidComposition(parts.to_vec()));
    }
    Ok(())
}

/// Block index of each row for a composition.
fn block_of(parts: &[usize]) -> Vec<usize> {
    parts.iter().enumerate().flat_map(|(b, &p)| std::iter::repeat_n(b, p)).collect()
}

/// `P_λ = U_λ ⋊ L_λ` for a composition `λ` of `n`, in terms of the fixed
/// generating set.
#[derive(Debug, Clone)]
pub struct Parabolic {
    pub composition: Vec<usize>,
    /// Generators lying in the Levi factor `L_λ`.
    pub levi_generators: Vec<usize>,
    /// Generators of the unipotent radical `U_λ`.
    pub radical_generators: Vec<usize>,
    pub index: BigUint,
}

/// The coset space `G/P_λ` with a fixed representative per coset.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    composition: Vec<usize>,
    reps: Vec<Matrix>,
    lookup: HashMap<Vec<u32>, usize>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    pub fn reps(&self) -> &[Matrix] {
        &self.reps
    }

    pub fn key(&self, g: &Matrix) -> Vec<u32> {
        flag_key(g, &self.composition)
    }

    /// Index of the coset `g P`.
    pub fn locate(&self, g: &Matrix) -> usize {
        self.lookup[&self.key(g)]
    }

    /// Permutation `i -> j` with `g · rep_i P = rep_j P`.
    pub fn action(&self, g: &Matrix) -> Vec<usize> {
        self.reps.iter().map(|r| self.locate(&g.mul(r))).collect()
    }
}

/// Canonical form of `g P_λ`: reduced echelon bases of the column spans of
/// `g` cut at each block boundary.
pub fn flag_key(g: &Matrix, composition: &[usize]) -> Vec<u32> {
    let t = g.transpose();
    let mut key = Vec::new();
    let mut k = 0;
    for &p in &composition[..composition.len().saturating_sub(1)] {
        k += p;
        let idx: Vec<usize> = (0..k).collect();
        let ech = t.select_rows(&idx).echelonize();
        key.extend_from_slice(ech.rref.data());
    }
    key
}

impl BNGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic() as u64
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn weyl(&self) -> &CoxeterGroup {
        &self.weyl
    }

    pub fn orders(&self) -> &GroupOrders {
        &self.orders
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| g.matrix.clone()).collect()
    }

    pub fn label(&self) -> String {
        format!("GL{}({})", self.n, self.q)
    }

    /// `q_s = |U_s|`; the same for every `s` in `GL_n(q)`.
    pub fn q_s(&self) -> u64 {
        self.q
    }

    /// Permutation matrix `n_w`.
    pub fn n_w(&self, w: usize) -> &Matrix {
        &self.weyl_reps[w]
    }

    fn select(&self, pred: impl Fn(&GenKind) -> bool) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| pred(&self.generators[i].kind)).collect()
    }

    pub fn unipotent_generators(&self) -> Vec<usize> {
        self.select(|k| matches!(k, GenKind::Root { .. }))
    }

    pub fn borel_generators(&self) -> Vec<usize> {
        self.select(|k| matches!(k, GenKind::Root { .. } | GenKind::Torus { .. }))
    }

    /// Generators of the simple root subgroup `U_s`, `s = (s, s+1)`.
    pub fn simple_root_generators(&self, s: usize) -> Vec<usize> {
        self.select(|k| matches!(*k, GenKind::Root { i, j, .. } if i == s && j == s + 1))
    }

    pub fn is_upper_triangular(&self, m: &Matrix) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| m.get(r, c) == 0)) && (0..self.n).all(|i| m.get(i, i) != 0)
    }

    pub fn is_unitriangular(&self, m: &Matrix) -> bool {
        self.is_upper_triangular(m) && (0..self.n).all(|i| m.get(i, i) == 1)
    }

    /// Membership in `U_w`: unitriangular, supported on the inversions of `w`.
    pub fn in_u_w(&self, m: &Matrix, w: usize) -> bool {
        let p = self.weyl.perm(w);
        self.is_unitriangular(m)
            && (0..self.n).all(|i| (i + 1..self.n).all(|j| m.get(i, j) == 0 || p[i] > p[j]))
    }

    fn root_positions(&self, w: Option<usize>) -> Vec<(usize, usize)> {
        let mut pos = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if w.is_none_or(|w| self.weyl.perm(w)[i] > self.weyl.perm(w)[j]) {
                    pos.push((i, j));
                }
            }
        }
        pos
    }

    fn unitriangular_family(&self, pos: &[(usize, usize)]) -> Result<Vec<Matrix>, GroupError> {
        let q = self.q;
        let size = BigUint::from(q).pow(pos.len() as u32);
        if size > BigUint::from(self.caps.max_unipotent) {
            return Err(GroupError::CapExceeded {
                what: "|U|",
                value: size.to_string(),
                cap: self.caps.max_unipotent,
            });
        }
        let count = q.pow(pos.len() as u32);
        let id = Matrix::identity(&self.field, self.n);
        Ok((0..count)
            .map(|mut c| {
                let mut m = id.clone();
                for &(i, j) in pos {
                    m.set(i, j, (c % q) as u32);
                    c /= q;
                }
                m
            })
            .collect())
    }

    /// All elements of `U`, in a fixed order starting with the identity.
    pub fn unipotent_elements(&self) -> Result<Vec<Matrix>, GroupError> {
        self.unitriangular_family(&self.root_positions(None))
    }

    /// All elements of `U_w`.
    pub fn u_w_elements(&self, w: usize) -> Result<Vec<Matrix>, GroupError> {
        self.unitriangular_family(&self.root_positions(Some(w)))
    }

    /// Sharp Bruhat decomposition `g = b n_w u`, `u ∈ U_w`.
    ///
    /// Row operations from the left by `B` bring `g` to `X = n_w u`: working
    /// upwards, each row is cleared in the pivot columns of the rows below
    /// it and scaled so its leftmost entry is 1.
    pub fn bruhat(&self, g: &Matrix) -> Result<Bruhat, GroupError> {
        let f = &self.field;
        let n = self.n;
        let mut x = g.clone();
        let mut pivot = vec![usize::MAX; n];
        for r in (0..n).rev() {
            for r2 in (r + 1..n).rev() {
                let c = x.get(r, pivot[r2]);
                if c != 0 {
                    let lower = x.row(r2).to_vec();
                    f.axpy(x.row_mut(r), &lower, f.neg(c));
                }
            }
            let Some(c) = (0..n).find(|&c| x.get(r, c) != 0) else {
                return Err(GroupError::Singular);
            };
            let inv = f.inv(x.get(r, c));
            f.scale(x.row_mut(r), inv);
            pivot[r] = c;
        }
        // row r has its pivot in column i  <=>  w(i) = r
        let mut perm = vec![0u16; n];
        for (r, &c) in pivot.iter().enumerate() {
            perm[c] = r as u16;
        }
        let w = self.weyl.index_of(&perm).expect("pivot pattern is a permutation");
        let ninv = self.weyl_reps[self.weyl.inverse(w)].clone();
        let u = ninv.mul(&x);
        let b = g.mul(&x.inverse().expect("echelon form is invertible"));
        Ok(Bruhat { b, w, u })
    }

    /// Reversed decomposition `g = u n_w b`, `u ∈ U_{w^{-1}}`, obtained from
    /// the sharp decomposition of `g^{-1}`.
    pub fn bruhat_reversed(&self, g: &Matrix) -> Result<ReversedBruhat, GroupError> {
        let ginv = g.inverse().ok_or(GroupError::Singular)?;
        let d = self.bruhat(&ginv)?;
        Ok(ReversedBruhat {
            u: d.u.inverse().unwrap(),
            w: self.weyl.inverse(d.w),
            b: d.b.inverse().unwrap(),
        })
    }

    /// Bruhat cell of `g`, i.e. the `w` with `g ∈ B n_w B`.
    pub fn cell(&self, g: &Matrix) -> Result<usize, GroupError> {
        Ok(self.bruhat(g)?.w)
    }

    pub fn parabolic(&self, composition: &[usize]) -> Result<Parabolic, GroupError> {
        check_composition(self.n, composition)?;
        let blk = block_of(composition);
        let mut levi = Vec::new();
        let mut radical = Vec::new();
        for (idx, g) in self.generators.iter().enumerate() {
            match g.kind {
                GenKind::Root { i, j, .. } if blk[i] != blk[j] => radical.push(idx),
                GenKind::Root { .. } | GenKind::Torus { .. } => levi.push(idx),
                GenKind::Weyl { s } if blk[s] == blk[s + 1] => levi.push(idx),
                GenKind::Weyl { .. } => {}
            }
        }
        Ok(Parabolic {
            composition: composition.to_vec(),
            levi_generators: levi,
            radical_generators: radical,
            index: gaussian_multinomial(composition, self.q),
        })
    }

    /// Enumerates `G/P_λ` by closing the base coset under the generators.
    pub fn coset_space(&self, composition: &[usize]) -> Result<CosetSpace, GroupError> {
        check_composition(self.n, composition)?;
        let expected = gaussian_multinomial(composition, self.q);
        if expected > BigUint::from(self.caps.max_index) {
            return Err(GroupError::CapExceeded {
                what: "coset count",
                value: expected.to_string(),
                cap: self.caps.max_index,
            });
        }
        let id = Matrix::identity(&self.field, self.n);
        let mut space = CosetSpace { composition: composition.to_vec(), reps: vec![], lookup: HashMap::new() };
        space.lookup.insert(space.key(&id), 0);
        space.reps.push(id);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &self.generators {
                let h = g.matrix.mul(&space.reps[i]);
                let key = space.key(&h);
                if !space.lookup.contains_key(&key) {
                    space.lookup.insert(key, space.reps.len());
                    space.reps.push(h);
                    queue.push_back(space.reps.len() - 1);
                }
            }
        }
        debug_assert_eq!(BigUint::from(space.reps.len()), expected);
        Ok(space)
    }

    /// `G/B`.
    pub fn flag_cosets(&self) -> Result<CosetSpace, GroupError> {
        self.coset_space(&vec![1; self.n])
    }

    /// The regular character of `U` into `GF(ℓ^d)^×`, `d` the order of `ℓ`
    /// modulo `p`: `σ(u) = ζ^{Σ_i Tr(u_{i,i+1})}` for a fixed primitive
    /// `p`-th root of unity `ζ`.
    pub fn regular_character(&self, ell: u64) -> Result<RegularCharacter, GroupError> {
        let p = self.characteristic();
        if ell == p {
            return Err(GroupError::SameCharacteristic(ell));
        }
        if !crate::exactfield::is_prime(ell) {
            return Err(GroupError::Field(ExactError::NotPrime(ell)));
        }
        let mut d = 1u32;
        let mut acc = ell % p;
        while acc != 1 {
            acc = acc * ell % p;
            d += 1;
        }
        let target = Field::new(ell, d)?;
        let zeta = target.root_of_unity(p).expect("p divides ℓ^d - 1");
        Ok(RegularCharacter { source: self.field.clone(), target, zeta, degree: d, n: self.n })
    }

    /// Group-level self test: decompose and reconstruct, and check the
    /// factor memberships, on `count` seeded random elements.
    pub fn bruhat_selftest(&self, count: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = self.field.order();
        let mut done = 0;
        while done < count {
            let data = (0..self.n * self.n).map(|_| rng.random_range(0..q)).collect();
            let g = Matrix::from_vec(&self.field, self.n, self.n, data);
            let Ok(d) = self.bruhat(&g) else { continue };
            if d.b.mul(&self.weyl_reps[d.w]).mul(&d.u) != g
                || !self.is_upper_triangular(&d.b)
                || !self.in_u_w(&d.u, d.w)
            {
                return false;
            }
            let Ok(r) = self.bruhat_reversed(&g) else { return false };
            if r.u.mul(&self.weyl_reps[r.w]).mul(&r.b) != g
                || !self.in_u_w(&r.u, self.weyl.inverse(r.w))
                || !self.is_upper_triangular(&r.b)
            {
                return false;
            }
            done += 1;
        }
        true
    }

    pub fn report(&self, seed: u64) -> GroupReport {
        GroupReport {
            type_tag: "GL".into(),
            n: self.n,
            q: self.q,
            orders: OrdersReport {
                g: self.orders.g.to_string(),
                b: self.orders.b.to_string(),
                u: self.orders.u.to_string(),
                h: self.orders.h.to_string(),
            },
            index: self.orders.index.to_string(),
            length_distribution: self.weyl.length_distribution(),
            bruhat_selftest: if self.bruhat_selftest(200, seed) { "pass" } else { "fail" },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrdersReport {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "U")]
    pub u: String,
    #[serde(rename = "H")]
    pub h: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    #[serde(rename = "type")]
    pub type_tag: String,
    pub n: usize,
    pub q: u64,
    pub orders: OrdersReport,
    pub index: String,
    pub length_distribution: Vec<usize>,
    pub bruhat_selftest: &'static str,
}

#[derive(Debug, Clone)]
pub struct RegularCharacter {
    source: Field,
    target: Field,
    zeta: u32,
    degree: u32,
    n: usize,
}

impl RegularCharacter {
    pub fn field(&self) -> &Field {
        &self.target
    }

    /// `d` with `GF(ℓ^d)` the smallest field holding the values.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn zeta(&self) -> u32 {
        self.zeta
    }

    pub fn value(&self, u: &Matrix) -> u32 {
        let p = self.source.characteristic();
        let e = (0..self.n.saturating_sub(1)).map(|i| self.source.trace(u.get(i, i + 1))).sum::<u32>() % p;
        self.target.pow(self.zeta, e as u64)
    }
}

pub fn build_gl(n: usize, q: u64) -> Result<BNGroup, GroupError> {
    build_gl_with(n, q, Caps::default())
}

pub fn build_gl_with(n: usize, q: u64, caps: Caps) -> Result<BNGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroDegree);
    }
    let (p, k) = prime_power(q).ok_or(GroupError::NotPrimePower(q))?;
    let orders = gl_orders(n, q);
    if orders.index > BigUint::from(caps.max_index) {
        return Err(GroupError::CapExceeded {
            what: "[G:B]",
            value: orders.index.to_string(),
            cap: caps.max_index,
        });
    }
    if orders.u > BigUint::from(caps.max_unipotent) {
        return Err(GroupError::CapExceeded { what: "|U|", value: orders.u.to_string(), cap: caps.max_unipotent });
    }
    let field = Field::new(p, k)?;
    let weyl = CoxeterGroup::build(CoxeterType::A(n - 1))?;
    let weyl_reps = (0..weyl.order())
        .map(|w| {
            let inv: Vec<usize> = weyl.perm(weyl.inverse(w)).iter().map(|&x| x as usize).collect();
            Matrix::permutation(&field, &inv)
        })
        .collect();
    let mut generators = Vec::new();
    let id = Matrix::identity(&field, n);
    for i in 0..n {
        for j in i + 1..n {
            // additive basis 1, a, a^2, .. of GF(q) over GF(p); element a^b is p^b
            for b in 0..k as usize {
                let mut m = id.clone();
                m.set(i, j, (p as u32).pow(b as u32));
                generators.push(Generator { kind: GenKind::Root { i, j, basis: b }, matrix: m });
            }
        }
    }
    if q > 2 {
        for i in 0..n {
            let mut m = id.clone();
            m.set(i, i, field.primitive_element());
            generators.push(Generator { kind: GenKind::Torus { i }, matrix: m });
        }
    }
    for s in 0..n - 1 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(s, s + 1);
        generators.push(Generator { kind: GenKind::Weyl { s }, matrix: Matrix::permutation(&field, &perm) });
    }
    Ok(BNGroup { n, q, field, weyl, weyl_reps, generators, orders, caps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn random_invertible(g: &BNGroup, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let data = (0..g.n * g.n).map(|_| rng.random_range(0..g.field.order())).collect();
            let m = Matrix::from_vec(&g.field, g.n, g.n, data);
            if m.rank() == g.n {
                return m;
            }
        }
    }

    #[test]
    fn small_orders() {
        let g = build_gl(2, 2).unwrap();
        let o = g.orders();
        assert_eq!((o.g.clone(), o.b.clone(), o.index.clone(), o.u.clone()), (big(6), big(2), big(3), big(2)));
        let g = build_gl(3, 2).unwrap();
        assert_eq!(g.orders().index, big(21));
        let g = build_gl(2, 3).unwrap();
        assert_eq!((g.orders().index.clone(), g.orders().u.clone()), (big(4), big(3)));
    }

    #[test]
    fn poincare_identity_and_cell_partition() {
        for (n, q) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let g = build_gl(n, q).unwrap();
            let w = g.weyl();
            let sum: BigUint = (0..w.order()).map(|x| big(q).pow(w.length(x) as u32)).sum();
            assert_eq!(sum, g.orders().index);
            assert_eq!(&sum * &g.orders().b, g.orders().g);
            assert_eq!(BigUint::from(g.flag_cosets().unwrap().len()), g.orders().index);
        }
    }

    #[test]
    fn u_w_sizes() {
        let g = build_gl(3, 2).unwrap();
        let w = g.weyl();
        for x in 0..w.order() {
            let els = g.u_w_elements(x).unwrap();
            assert_eq!(els.len() as u64, 2u64.pow(w.length(x) as u32));
            assert!(els.iter().all(|u| g.in_u_w(u, x)));
        }
        assert_eq!(g.u_w_elements(0).unwrap().len(), 1);
        assert_eq!(g.u_w_elements(w.longest()).unwrap().len(), 8);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(build_gl(2, 6).unwrap_err(), GroupError::NotPrimePower(6));
        assert!(matches!(build_gl(6, 2), Err(GroupError::CapExceeded { .. })));
        assert!(matches!(build_gl(0, 2), Err(GroupError::ZeroDegree)));
        let g = build_gl(2, 3).unwrap();
        assert_eq!(g.bruhat(&Matrix::zeros(g.field(), 2, 2)).unwrap_err(), GroupError::Singular);
        assert!(g.parabolic(&[1, 2]).is_err());
        assert_eq!(g.regular_character(3).unwrap_err(), GroupError::SameCharacteristic(3));
    }

    #[test]
    fn bruhat_trivial_cases() {
        let g = build_gl(3, 3).unwrap();
        let d = g.bruhat(&Matrix::identity(g.field(), 3)).unwrap();
        assert_eq!(d.w, 0);
        assert!(d.b.is_identity() && d.u.is_identity());
        let w0 = g.weyl().longest();
        let d = g.bruhat(g.n_w(w0)).unwrap();
        assert_eq!(d.w, w0);
        assert!(d.b.is_identity() && d.u.is_identity());
    }

    #[test]
    fn bruhat_reconstructs_gl3_3() {
        let g = build_gl(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = random_invertible(&g, &mut rng);
            let d = g.bruhat(&x).unwrap();
            assert_eq!(d.b.mul(g.n_w(d.w)).mul(&d.u), x);
            assert!(g.is_upper_triangular(&d.b));
            assert!(g.in_u_w(&d.u, d.w));
        }
        assert!(g.bruhat_selftest(1000, 5));
    }

    #[test]
    fn bruhat_uniqueness() {
        // b n_w u' re-decomposes to u' itself
        let g = build_gl(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let x = random_invertible(&g, &mut rng);
            let d = g.bruhat(&x).unwrap();
            for u2 in g.u_w_elements(d.w).unwrap() {
                let y = d.b.mul(g.n_w(d.w)).mul(&u2);
                let e = g.bruhat(&y).unwrap();
                assert_eq!((e.w, &e.u, &e.b), (d.w, &u2, &d.b));
            }
        }
    }

    #[test]
    fn selftest_over_extension_field() {
        assert!(build_gl(3, 4).unwrap().bruhat_selftest(1000, 1));
        assert!(build_gl(4, 2).unwrap().bruhat_selftest(1000, 1));
    }

    #[test]
    fn torus_normalizes_u_w() {
        let g = build_gl(3, 4).unwrap();
        let torus: Vec<&Matrix> = g
            .generators()
            .iter()
            .filter(|x| matches!(x.kind, GenKind::Torus { .. }))
            .map(|x| &x.matrix)
            .collect();
        assert_eq!(torus.len(), 3);
        for w in 0..g.weyl().order() {
            for u in g.u_w_elements(w).unwrap() {
                for h in &torus {
                    let c = h.mul(&u).mul(&h.inverse().unwrap());
                    assert!(g.in_u_w(&c, w));
                }
            }
        }
    }

    #[test]
    fn coset_action_properties() {
        let g = build_gl(3, 2).unwrap();
        let cs = g.flag_cosets().unwrap();
        let id = Matrix::identity(g.field(), 3);
        assert_eq!(cs.action(&id), (0..21).collect::<Vec<_>>());
        for &b in &g.borel_generators() {
            assert_eq!(cs.action(&g.generators()[b].matrix)[0], 0);
        }
        // composition of actions follows the matrix product
        let gens = g.generator_matrices();
        let (x, y) = (&gens[0], &gens[gens.len() - 1]);
        let (ax, ay, axy) = (cs.action(x), cs.action(y), cs.action(&x.mul(y)));
        assert!((0..21).all(|i| axy[i] == ax[ay[i]]));
        // transitivity: the orbit of the base coset is everything
        let mut seen = vec![false; cs.len()];
        seen[0] = true;
        let mut stack = vec![0];
        let acts: Vec<Vec<usize>> = gens.iter().map(|m| cs.action(m)).collect();
        while let Some(i) = stack.pop() {
            for a in &acts {
                if !seen[a[i]] {
                    seen[a[i]] = true;
                    stack.push(a[i]);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn parabolic_indices() {
        let g = build_gl(3, 2).unwrap();
        assert_eq!(g.parabolic(&[2, 1]).unwrap().index, big(7));
        assert_eq!(g.coset_space(&[2, 1]).unwrap().len(), 7);
        assert_eq!(g.coset_space(&[3]).unwrap().len(), 1);
        let p = g.parabolic(&[1, 1, 1]).unwrap();
        assert_eq!(p.radical_generators, g.unipotent_generators());
        let g = build_gl(4, 2).unwrap();
        assert_eq!(g.coset_space(&[2, 2]).unwrap().len(), 35);
        assert_eq!(g.coset_space(&[1, 3]).unwrap().len(), 15);
    }

    #[test]
    fn regular_character_properties() {
        let g = build_gl(2, 2).unwrap();
        let s = g.regular_character(3).unwrap();
        assert_eq!(s.degree(), 1);
        let u = g.unipotent_elements().unwrap();
        assert_eq!(s.value(&u[1]), s.field().from_int(-1));

        let g = build_gl(3, 2).unwrap();
        let s = g.regular_character(7).unwrap();
        let f = s.field();
        let one = Matrix::identity(g.field(), 3);
        for (i, j, expect_trivial) in [(0, 1, false), (1, 2, false), (0, 2, true)] {
            let mut x = one.clone();
            x.set(i, j, 1);
            assert_eq!(s.value(&x) == 1, expect_trivial);
        }
        let us = g.unipotent_elements().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let (a, b) = (&us[rng.random_range(0..8)], &us[rng.random_range(0..8)]);
            assert_eq!(s.value(&a.mul(b)), f.mul(s.value(a), s.value(b)));
        }

        let g = build_gl(2, 3).unwrap();
        let s = g.regular_character(2).unwrap();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.field().element_order(s.zeta()), 3);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_multinomial(&[2, 1], 2), big(7));
        assert_eq!(gaussian_multinomial(&[2, 2], 3), big(130));
        assert_eq!(q_integer(3, 3), big(13));
    }
}
