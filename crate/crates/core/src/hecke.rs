//! Iwahori–Hecke algebra `H(G, B)` in the standard basis `{T_w}`, and its
//! realization on the Borel permutation module.
//!
//! Realized matrices use row vectors: row `i` of `R_w` is the image of the
//! `i`-th coset, so `R_x R_y` realizes the algebra product `T_x T_y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bngroup::{BNGroup, CosetSpace, GroupError};
use crate::coxeter::CoxeterGroup;
use crate::exactfield::{intersect, Field, Matrix};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("elements belong to algebras of different size ({0} vs {1})")]
    Mismatch(usize, usize),
    #[error("parameter of generator {0} is not invertible")]
    NonInvertible(usize),
    #[error("ℓ = {0} is the defining characteristic")]
    SameCharacteristic(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Coefficient ring for Hecke algebra elements.
pub trait Ring: Clone {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// The integers, with arbitrary precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.is_one() || (-a).is_one()).then(|| a.clone())
    }
}

impl Ring for Field {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, v: i64) -> u32 {
        Field::from_int(self, v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        Field::add(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        Field::mul(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        Field::neg(self, *a)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| Field::inv(self, *a))
    }
}

/// Dense element `Σ c_w T_w`, indexed like the elements of the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement<E> {
    pub coeffs: Vec<E>,
}

#[derive(Debug, Clone)]
pub struct HeckeAlgebra<R: Ring> {
    weyl: CoxeterGroup,
    ring: R,
    params: Vec<R::Elem>,
}

impl<R: Ring> HeckeAlgebra<R> {
    pub fn new(weyl: CoxeterGroup, ring: R, params: Vec<R::Elem>) -> Self {
        assert_eq!(params.len(), weyl.rank());
        Self { weyl, ring, params }
    }

    /// Equal parameters `q_s = q` for every `s`.
    pub fn equal_parameters(weyl: CoxeterGroup, ring: R, q: i64) -> Self {
        let params = vec![ring.from_int(q); weyl.rank()];
        Self::new(weyl, ring, params)
    }

    pub fn weyl(&self) -> &CoxeterGroup {
        &self.weyl
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn param(&self, s: usize) -> &R::Elem {
        &self.params[s]
    }

    pub fn dim(&self) -> usize {
        self.weyl.order()
    }

    pub fn zero(&self) -> HeckeElement<R::Elem> {
        HeckeElement { coeffs: vec![self.ring.zero(); self.dim()] }
    }

    pub fn basis(&self, w: usize) -> HeckeElement<R::Elem> {
        let mut z = self.zero();
        z.coeffs[w] = self.ring.one();
        z
    }

    pub fn one(&self) -> HeckeElement<R::Elem> {
        self.basis(self.weyl.identity())
    }

    pub fn generator(&self, s: usize) -> HeckeElement<R::Elem> {
        self.basis(self.weyl.generator(s))
    }

    fn check(&self, a: &HeckeElement<R::Elem>) -> Result<(), HeckeError> {
        if a.coeffs.len() != self.dim() {
            return Err(HeckeError::Mismatch(a.coeffs.len(), self.dim()));
        }
        Ok(())
    }

    pub fn add(&self, a: &HeckeElement<R::Elem>, b: &HeckeElement<R::Elem>) -> Result<HeckeElement<R::Elem>, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.ring.add(x, y)).collect();
        Ok(HeckeElement { coeffs })
    }

    pub fn scale(&self, a: &HeckeElement<R::Elem>, c: &R::Elem) -> HeckeElement<R::Elem> {
        HeckeElement { coeffs: a.coeffs.iter().map(|x| self.ring.mul(x, c)).collect() }
    }

    /// `T_s · a` by the defining rules.
    pub fn left_mul_generator(&self, s: usize, a: &HeckeElement<R::Elem>) -> HeckeElement<R::Elem> {
        let r = &self.ring;
        let q = &self.params[s];
        let qm1 = r.sub(q, &r.one());
        let mut out = self.zero();
        for (w, c) in a.coeffs.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            let sw = self.weyl.left_mul(s, w);
            if self.weyl.length(sw) > self.weyl.length(w) {
                out.coeffs[sw] = r.add(&out.coeffs[sw], c);
            } else {
                out.coeffs[sw] = r.add(&out.coeffs[sw], &r.mul(q, c));
                out.coeffs[w] = r.add(&out.coeffs[w], &r.mul(&qm1, c));
            }
        }
        out
    }

    /// `T_w · a`, factoring `T_w` along the stored reduced word.
    pub fn left_mul_basis(&self, w: usize, a: &HeckeElement<R::Elem>) -> HeckeElement<R::Elem> {
        self.weyl.word(w).iter().rev().fold(a.clone(), |acc, &s| self.left_mul_generator(s, &acc))
    }

    pub fn multiply(&self, a: &HeckeElement<R::Elem>, b: &HeckeElement<R::Elem>) -> Result<HeckeElement<R::Elem>, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (w, c) in a.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let t = self.scale(&self.left_mul_basis(w, b), c);
            out = self.add(&out, &t)?;
        }
        Ok(out)
    }

    /// Product of the basis elements along an arbitrary word.
    pub fn word_product(&self, word: &[usize]) -> HeckeElement<R::Elem> {
        word.iter().rev().fold(self.one(), |acc, &s| self.left_mul_generator(s, &acc))
    }

    /// `ε(T_w) = (-1)^{l(w)}`.
    pub fn char_eps(&self, a: &HeckeElement<R::Elem>) -> R::Elem {
        let r = &self.ring;
        a.coeffs.iter().enumerate().fold(r.zero(), |acc, (w, c)| {
            if self.weyl.length(w).is_multiple_of(2) {
                r.add(&acc, c)
            } else {
                r.sub(&acc, c)
            }
        })
    }

    /// `ind(T_w) = q_{s_1} ... q_{s_k}` for a reduced word of `w`.
    pub fn ind_basis(&self, w: usize) -> R::Elem {
        self.weyl.word(w).iter().fold(self.ring.one(), |acc, &s| self.ring.mul(&acc, &self.params[s]))
    }

    pub fn char_ind(&self, a: &HeckeElement<R::Elem>) -> R::Elem {
        let r = &self.ring;
        a.coeffs.iter().enumerate().fold(r.zero(), |acc, (w, c)| r.add(&acc, &r.mul(c, &self.ind_basis(w))))
    }

    /// `γ(T_s) = -q_s T_s^{-1} = (q_s - 1) T_1 - T_s`, extended multiplicatively.
    pub fn gamma(&self, a: &HeckeElement<R::Elem>) -> Result<HeckeElement<R::Elem>, HeckeError> {
        self.check(a)?;
        let r = &self.ring;
        for (s, q) in self.params.iter().enumerate() {
            if r.inv(q).is_none() {
                return Err(HeckeError::NonInvertible(s));
            }
        }
        let gens: Vec<HeckeElement<R::Elem>> = (0..self.weyl.rank())
            .map(|s| {
                let mut g = self.zero();
                g.coeffs[self.weyl.identity()] = r.sub(&self.params[s], &r.one());
                g.coeffs[self.weyl.generator(s)] = r.neg(&r.one());
                g
            })
            .collect();
        let mut out = self.zero();
        for (w, c) in a.coeffs.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            let mut img = self.one();
            for &s in self.weyl.word(w) {
                img = self.multiply(&img, &gens[s])?;
            }
            out = self.add(&out, &self.scale(&img, c))?;
        }
        Ok(out)
    }

    /// `τ(T_1) = 1`, `τ(T_w) = 0` otherwise.
    pub fn trace(&self, a: &HeckeElement<R::Elem>) -> R::Elem {
        a.coeffs[self.weyl.identity()].clone()
    }

    /// `Σ_w (-1)^{l(w)} q^{N - l(w)} T_w` for equal parameters `q`, `N = l(w_0)`.
    /// Every `T_s` acts on it by `-1`.
    pub fn sign_symmetrizer(&self) -> HeckeElement<R::Elem> {
        let r = &self.ring;
        let q = &self.params.first().cloned().unwrap_or_else(|| r.one());
        let top = self.weyl.length(self.weyl.longest());
        let coeffs = (0..self.dim())
            .map(|w| {
                let l = self.weyl.length(w);
                let mag = (0..top - l).fold(r.one(), |acc, _| r.mul(&acc, q));
                if l.is_multiple_of(2) {
                    mag
                } else {
                    r.neg(&mag)
                }
            })
            .collect();
        HeckeElement { coeffs }
    }
}

/// The Hecke algebra `End(kG b̲)^opp` realized on the flag cosets of a group.
#[derive(Debug, Clone)]
pub struct BorelHecke {
    weyl: CoxeterGroup,
    q: u64,
    /// `positions[i][j]` is the Bruhat cell of `g_i^{-1} g_j`.
    positions: Vec<Vec<usize>>,
    /// Coset of `n_w B` for each `w`.
    weyl_cosets: Vec<usize>,
}

impl BorelHecke {
    pub fn new(group: &BNGroup, cosets: &CosetSpace) -> Result<Self, HeckeError> {
        let inverses: Vec<Matrix> = cosets.reps().iter().map(|g| g.inverse().expect("invertible")).collect();
        let positions = inverses
            .iter()
            .map(|gi| cosets.reps().iter().map(|gj| group.cell(&gi.mul(gj))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let weyl_cosets = (0..group.weyl().order()).map(|w| cosets.locate(group.n_w(w))).collect();
        Ok(Self { weyl: group.weyl().clone(), q: group.q(), positions, weyl_cosets })
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn weyl(&self) -> &CoxeterGroup {
        &self.weyl
    }

    pub fn positions(&self) -> &[Vec<usize>] {
        &self.positions
    }

    pub fn weyl_coset(&self, w: usize) -> usize {
        self.weyl_cosets[w]
    }

    pub fn algebra<R: Ring>(&self, ring: R) -> HeckeAlgebra<R> {
        HeckeAlgebra::equal_parameters(self.weyl.clone(), ring, self.q as i64)
    }

    /// `R_w` over `field`.
    pub fn matrix(&self, field: &Field, w: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                if self.positions[i][j] == w {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }

    /// Realization of an arbitrary element over `field`.
    pub fn realize(&self, field: &Field, a: &HeckeElement<u32>) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, a.coeffs[self.positions[i][j]]);
            }
        }
        m
    }

    /// `R_w` with integer entries.
    pub fn int_matrix(&self, w: usize) -> Vec<Vec<i64>> {
        self.positions.iter().map(|row| row.iter().map(|&c| (c == w) as i64).collect()).collect()
    }

    /// Coordinates of `e = Σ_w (-1)^{l(w)} n_w b̲` over the integers.
    pub fn steinberg_int(&self) -> Vec<i64> {
        let mut e = vec![0i64; self.dim()];
        for w in 0..self.weyl.order() {
            e[self.weyl_cosets[w]] += if self.weyl.length(w).is_multiple_of(2) { 1 } else { -1 };
        }
        e
    }

    pub fn steinberg(&self, field: &Field) -> Vec<u32> {
        self.steinberg_int().into_iter().map(|x| field.from_int(x)).collect()
    }

    /// `T_w(e) = (-1)^{l(w)} e` for every `w`, over the integers.
    pub fn lemma_over_integers(&self) -> bool {
        let e = self.steinberg_int();
        (0..self.weyl.order()).all(|w| {
            let sign = if self.weyl.length(w).is_multiple_of(2) { 1 } else { -1 };
            (0..self.dim()).all(|j| {
                let img: i64 = (0..self.dim()).filter(|&i| self.positions[i][j] == w).map(|i| e[i]).sum();
                img == sign * e[j]
            })
        })
    }

    pub fn lemma_over_field(&self, field: &Field) -> bool {
        let e = self.steinberg(field);
        (0..self.weyl.order()).all(|w| {
            let img = self.matrix(field, w).apply(&e);
            let expect: Vec<u32> = if self.weyl.length(w).is_multiple_of(2) {
                e.clone()
            } else {
                e.iter().map(|&x| field.neg(x)).collect()
            };
            img == expect
        })
    }

    /// `∩_s ker(T_s + 1)`, in reduced echelon form.
    pub fn sign_eigenspace(&self, field: &Field) -> Matrix {
        let n = self.dim();
        let id = Matrix::identity(field, n);
        let mut space = id.clone();
        for s in 0..self.weyl.rank() {
            let k = self.matrix(field, self.weyl.generator(s)).add(&id).left_kernel();
            space = intersect(&space, &k).expect("same ambient dimension");
        }
        space
    }

    /// Quadratic relations, and `R_x R_y = R(T_x T_y)` over all basis
    /// pairs (which contains the braid relations).
    pub fn relations_hold(&self, field: &Field) -> bool {
        let alg = self.algebra(field.clone());
        let mats: Vec<Matrix> = (0..self.weyl.order()).map(|w| self.matrix(field, w)).collect();
        let id = Matrix::identity(field, self.dim());
        let q = field.from_int(self.q as i64);
        let quad = (0..self.weyl.rank()).all(|s| {
            let r = &mats[self.weyl.generator(s)];
            let mut rhs = id.scaled(q);
            rhs.add_scaled(r, field.sub(q, 1));
            r.mul(r) == rhs
        });
        quad && (0..self.weyl.order()).all(|x| {
            (0..self.weyl.order()).all(|y| {
                let prod = alg.left_mul_basis(x, &alg.basis(y));
                mats[x].mul(&mats[y]) == self.realize(field, &prod)
            })
        })
    }
}

/// `R_w` over `GF(ℓ)` on the Borel module of `group`.
pub fn act_on_borel_module(group: &BNGroup, ell: u64, w: usize) -> Result<Matrix, HeckeError> {
    if ell == group.characteristic() {
        return Err(HeckeError::SameCharacteristic(ell));
    }
    let field = Field::prime(ell).map_err(GroupError::from)?;
    let cosets = group.flag_cosets()?;
    Ok(BorelHecke::new(group, &cosets)?.matrix(&field, w))
}

pub fn sign_eigenspace(group: &BNGroup, ell: u64) -> Result<Matrix, HeckeError> {
    if ell == group.characteristic() {
        return Err(HeckeError::SameCharacteristic(ell));
    }
    let field = Field::prime(ell).map_err(GroupError::from)?;
    let cosets = group.flag_cosets()?;
    Ok(BorelHecke::new(group, &cosets)?.sign_eigenspace(&field))
}

/// The abstract identities of `H` with equal parameters `q` over `field`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbstractChecks {
    pub quadratic: bool,
    pub braid: bool,
    pub eps_homomorphism: bool,
    pub ind_homomorphism: bool,
    pub eps_gamma_is_ind: bool,
    pub gamma_involution: bool,
    pub trace_symmetric: bool,
}

impl AbstractChecks {
    pub fn all(&self) -> bool {
        self.quadratic
            && self.braid
            && self.eps_homomorphism
            && self.ind_homomorphism
            && self.eps_gamma_is_ind
            && self.gamma_involution
            && self.trace_symmetric
    }
}

pub fn abstract_identities(weyl: &CoxeterGroup, q: i64, field: &Field) -> Result<AbstractChecks, HeckeError> {
    let h = HeckeAlgebra::equal_parameters(weyl.clone(), field.clone(), q);
    let r = field;
    let rank = weyl.rank();
    let qf = r.from_int(q);
    let quadratic = (0..rank).all(|s| {
        let t = h.generator(s);
        let mut rhs = h.scale(&h.one(), &qf);
        rhs.coeffs[weyl.generator(s)] = r.sub(qf, 1);
        h.multiply(&t, &t).is_ok_and(|p| p == rhs)
    });
    let cm = weyl.coxeter_matrix();
    let mut braid = true;
    for (s, row) in cm.iter().enumerate() {
        for (t, &m) in row.iter().enumerate().skip(s + 1) {
            let a: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect();
            let b: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { t } else { s }).collect();
            braid &= h.word_product(&a) == h.word_product(&b);
        }
    }
    // products of at most three elements from {T_1, T_s}
    let mut gens = vec![h.one()];
    gens.extend((0..rank).map(|s| h.generator(s)));
    let (mut eps_hom, mut ind_hom) = (true, true);
    for a in &gens {
        for b in &gens {
            let ab = h.multiply(a, b)?;
            for c in &gens {
                let p = h.multiply(&ab, c)?;
                let eps = r.mul(r.mul(h.char_eps(a), h.char_eps(b)), h.char_eps(c));
                let ind = r.mul(r.mul(h.char_ind(a), h.char_ind(b)), h.char_ind(c));
                eps_hom &= h.char_eps(&p) == eps;
                ind_hom &= h.char_ind(&p) == ind;
            }
        }
    }
    let (mut eps_gamma, mut involution, mut trace) = (true, true, true);
    for w in 0..h.dim() {
        let g = h.gamma(&h.basis(w))?;
        eps_gamma &= h.char_eps(&g) == h.char_ind(&h.basis(w));
        involution &= h.gamma(&g)? == h.basis(w);
        for y in 0..w {
            let xy = h.multiply(&h.basis(w), &h.basis(y))?;
            let yx = h.multiply(&h.basis(y), &h.basis(w))?;
            trace &= h.trace(&xy) == h.trace(&yx);
        }
    }
    Ok(AbstractChecks {
        quadratic,
        braid,
        eps_homomorphism: eps_hom,
        ind_homomorphism: ind_hom,
        eps_gamma_is_ind: eps_gamma,
        gamma_involution: involution,
        trace_symmetric: trace,
    })
}
