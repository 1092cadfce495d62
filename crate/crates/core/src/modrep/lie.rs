//! Modules attached to the BN-pair of `GL_n(q)`: the permutation module on
//! `G/B` and its Steinberg submodule, parabolic permutation modules, and
//! Harish-Chandra restriction and induction.

use std::collections::{HashMap, VecDeque};

use crate::bngroup::{BNGroup, CosetSpace, Parabolic};
use crate::exactfield::{intersect, is_prime, row_space, Field, Matrix};

use super::meataxe::{composition_factors, is_irreducible, multiplicity, CompositionFactor};
use super::module::{fixed_points, spin, spin_vector, GModule, Submodule};
use super::ModError;

/// `GF(ℓ^d)` after checking `ℓ` is a prime different from the defining
/// characteristic.
pub fn coefficient_field(group: &BNGroup, ell: u64, degree: u32) -> Result<Field, ModError> {
    if ell == group.characteristic() {
        return Err(ModError::SameCharacteristic(ell));
    }
    if !is_prime(ell) {
        return Err(ModError::Field(crate::exactfield::ExactError::NotPrime(ell)));
    }
    Ok(Field::new(ell, degree)?)
}

fn permutation_module(group: &BNGroup, field: &Field, cosets: &CosetSpace) -> Result<GModule, ModError> {
    let actions: Vec<Vec<usize>> = group.generators().iter().map(|g| cosets.action(&g.matrix)).collect();
    GModule::permutation(field, &actions)
}

/// `kG b̲` on the flag cosets, in their enumeration order.
#[derive(Debug, Clone)]
pub struct BorelModule {
    pub cosets: CosetSpace,
    pub module: GModule,
}

impl BorelModule {
    pub fn new(group: &BNGroup, ell: u64, degree: u32) -> Result<Self, ModError> {
        let field = coefficient_field(group, ell, degree)?;
        Self::over(group, &field)
    }

    pub fn over(group: &BNGroup, field: &Field) -> Result<Self, ModError> {
        if field.characteristic() as u64 == group.characteristic() {
            return Err(ModError::SameCharacteristic(field.characteristic() as u64));
        }
        let cosets = group.flag_cosets()?;
        let module = permutation_module(group, field, &cosets)?.with_label("kG b");
        Ok(Self { cosets, module })
    }

    pub fn field(&self) -> &Field {
        self.module.field()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Matrix of an arbitrary group element.
    pub fn element_matrix(&self, g: &Matrix) -> Matrix {
        Matrix::permutation(self.field(), &self.cosets.action(g))
    }

    /// `e = Σ_w (-1)^{l(w)} n_w b̲` over the integers.
    pub fn steinberg_int(&self, group: &BNGroup) -> Vec<i64> {
        let w = group.weyl();
        let mut e = vec![0i64; self.dim()];
        for x in 0..w.order() {
            e[self.cosets.locate(group.n_w(x))] += if w.length(x).is_multiple_of(2) { 1 } else { -1 };
        }
        e
    }

    pub fn steinberg_element(&self, group: &BNGroup) -> Vec<u32> {
        self.steinberg_int(group).into_iter().map(|x| self.field().from_int(x)).collect()
    }

    /// `u̲₁ v = Σ_{u ∈ U} u v`.
    pub fn unipotent_sum(&self, group: &BNGroup, v: &[u32]) -> Result<Vec<u32>, ModError> {
        let f = self.field();
        let mut acc = vec![0u32; self.dim()];
        for u in group.unipotent_elements()? {
            for (i, &j) in self.cosets.action(&u).iter().enumerate() {
                acc[j] = f.add(acc[j], v[i]);
            }
        }
        Ok(acc)
    }
}

/// `Σ_w Σ_{u ∈ U} (-1)^{l(w)} n_w u e = [G:B] e`, computed over the integers.
pub fn theta_identity(group: &BNGroup, borel: &BorelModule) -> Result<bool, ModError> {
    let e = borel.steinberg_int(group);
    let n = e.len();
    let mut x = vec![0i64; n];
    for u in group.unipotent_elements()? {
        for (i, &j) in borel.cosets.action(&u).iter().enumerate() {
            x[j] += e[i];
        }
    }
    let w = group.weyl();
    let mut y = vec![0i64; n];
    for k in 0..w.order() {
        let sign = if w.length(k).is_multiple_of(2) { 1 } else { -1 };
        for (i, &j) in borel.cosets.action(group.n_w(k)).iter().enumerate() {
            y[j] += sign * x[i];
        }
    }
    let index = n as i64;
    Ok(y.iter().zip(&e).all(|(a, b)| *a == index * b))
}

/// Everything about `St_k = kG e` needed by the checks, computed once.
#[derive(Debug, Clone)]
pub struct SteinbergData {
    pub borel: BorelModule,
    pub e: Vec<u32>,
    /// `St_k` inside the Borel module.
    pub st: Submodule,
    pub st_module: GModule,
    /// `u̲₁ e`.
    pub socle_vector: Vec<u32>,
    /// `Y = kG u̲₁ e` inside the Borel module.
    pub y: Submodule,
    pub y_module: GModule,
}

impl SteinbergData {
    pub fn new(group: &BNGroup, field: &Field) -> Result<Self, ModError> {
        let borel = BorelModule::over(group, field)?;
        let e = borel.steinberg_element(group);
        let st = spin_vector(&borel.module, &e);
        let st_module = borel.module.submodule(&st.basis)?.with_label("St");
        let socle_vector = borel.unipotent_sum(group, &e)?;
        let y = spin_vector(&borel.module, &socle_vector);
        let y_module = borel.module.submodule(&y.basis)?.with_label("Y");
        Ok(Self { borel, e, st, st_module, socle_vector, y, y_module })
    }

    /// Fixed points in `St_k` of the listed generators, as a subspace of the
    /// Borel module.
    pub fn fixed_in_st(&self, gens: &[usize]) -> Matrix {
        let fix = fixed_points(&self.borel.module, gens);
        intersect(&fix, &self.st.basis).expect("same ambient dimension")
    }

    pub fn socle_is_trivial(&self) -> bool {
        self.y.dim() == 1 && self.y_module.gens().iter().all(Matrix::is_identity)
    }

    pub fn factors(&self, seed: u64) -> Result<Vec<CompositionFactor>, ModError> {
        composition_factors(&self.st_module, seed)
    }
}

/// `Y = kG u̲₁ e`, verified irreducible.
pub fn socle_of_steinberg(group: &BNGroup, ell: u64, seed: u64) -> Result<Submodule, ModError> {
    let data = SteinbergData::new(group, &coefficient_field(group, ell, 1)?)?;
    if !is_irreducible(&data.y_module, seed)?.irreducible {
        return Err(ModError::Inconclusive);
    }
    Ok(data.y)
}

/// `M_λ`, the permutation module on `G/P_λ`.
pub fn parabolic_perm_module(group: &BNGroup, composition: &[usize], field: &Field) -> Result<GModule, ModError> {
    let cosets = group.coset_space(composition)?;
    Ok(permutation_module(group, field, &cosets)?.with_label(format!("M{composition:?}")))
}

/// Composition multiplicity of the simple module `s` in `M_λ`.
pub fn multiplicity_in_parabolic(
    group: &BNGroup,
    s: &GModule,
    composition: &[usize],
    seed: u64,
) -> Result<usize, ModError> {
    let m = parabolic_perm_module(group, composition, s.field())?;
    multiplicity(s, &m, seed)
}

/// `*R_λ(M) = Fix_{U_λ}(M)` with the Levi generators acting. The result is
/// a module for `parabolic.levi_generators`; `None` when the fixed space is 0.
pub fn hc_restrict(parabolic: &Parabolic, m: &GModule) -> Result<Option<GModule>, ModError> {
    let fix = fixed_points(m, &parabolic.radical_generators);
    if fix.rows() == 0 {
        return Ok(None);
    }
    Ok(Some(m.restrict(&parabolic.levi_generators).submodule(&fix)?))
}

/// Matrices of all elements of `L_λ` on a module for the Levi generators,
/// keyed by the group element.
struct LeviDictionary {
    map: HashMap<Vec<u32>, Matrix>,
}

impl LeviDictionary {
    fn new(group: &BNGroup, parabolic: &Parabolic, x: &GModule, cap: usize) -> Result<Self, ModError> {
        let gens: Vec<&Matrix> = parabolic.levi_generators.iter().map(|&i| &group.generators()[i].matrix).collect();
        let id = Matrix::identity(group.field(), group.n());
        let mut map = HashMap::new();
        let mut queue = VecDeque::new();
        map.insert(id.data().to_vec(), Matrix::identity(x.field(), x.dim()));
        queue.push_back(id);
        while let Some(l) = queue.pop_front() {
            let al = map[l.data()].clone();
            for (k, g) in gens.iter().enumerate() {
                let gl = g.mul(&l);
                if !map.contains_key(gl.data()) {
                    if map.len() >= cap {
                        return Err(ModError::CapExceeded { what: "|L|", value: map.len() + 1, cap });
                    }
                    // left action written on the right: A_{g l} = A_l A_g
                    map.insert(gl.data().to_vec(), al.mul(&x.gens()[k]));
                    queue.push_back(gl);
                }
            }
        }
        Ok(Self { map })
    }

    fn get(&self, l: &Matrix) -> &Matrix {
        &self.map[l.data()]
    }
}

pub const MAX_LEVI_ORDER: usize = 200_000;

fn levi_part(p: &Matrix, composition: &[usize]) -> Matrix {
    let blk: Vec<usize> =
        composition.iter().enumerate().flat_map(|(b, &k)| std::iter::repeat_n(b, k)).collect();
    let mut l = p.clone();
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            if blk[i] != blk[j] {
                l.set(i, j, 0);
            }
        }
    }
    l
}

/// `R_λ(X)`: the module induced from `P_λ` of the inflation of `X`, where
/// `X` is a module for `parabolic.levi_generators`.
pub fn hc_induce(group: &BNGroup, parabolic: &Parabolic, x: &GModule) -> Result<GModule, ModError> {
    if x.gen_count() != parabolic.levi_generators.len() {
        return Err(ModError::GeneratorMismatch);
    }
    let cosets = group.coset_space(&parabolic.composition)?;
    let cap = group.caps().max_index as usize;
    let dim = cosets.len() * x.dim();
    if dim > cap {
        return Err(ModError::CapExceeded { what: "induced dimension", value: dim, cap });
    }
    let dict = LeviDictionary::new(group, parabolic, x, MAX_LEVI_ORDER)?;
    let inverses: Vec<Matrix> = cosets.reps().iter().map(|r| r.inverse().expect("invertible")).collect();
    let dx = x.dim();
    let f = x.field();
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            let mut m = Matrix::zeros(f, dim, dim);
            for (i, r) in cosets.reps().iter().enumerate() {
                let h = g.matrix.mul(r);
                let j = cosets.locate(&h);
                let l = levi_part(&inverses[j].mul(&h), &parabolic.composition);
                let block = dict.get(&l);
                for a in 0..dx {
                    m.row_mut(i * dx + a)[j * dx..(j + 1) * dx].copy_from_slice(block.row(a));
                }
            }
            m
        })
        .collect();
    GModule::new(f, dim, gens)
}

/// `kL_λ b̲_λ`: the `L_λ`-orbit of the base flag, as a permutation module
/// for the Levi generators.
pub fn levi_borel_module(group: &BNGroup, parabolic: &Parabolic, field: &Field) -> Result<GModule, ModError> {
    let cosets = group.flag_cosets()?;
    let actions: Vec<Vec<usize>> = parabolic
        .levi_generators
        .iter()
        .map(|&i| cosets.action(&group.generators()[i].matrix))
        .collect();
    let mut orbit = vec![0usize];
    let mut pos = HashMap::from([(0usize, 0usize)]);
    let mut i = 0;
    while i < orbit.len() {
        for a in &actions {
            let j = a[orbit[i]];
            if let std::collections::hash_map::Entry::Vacant(v) = pos.entry(j) {
                v.insert(orbit.len());
                orbit.push(j);
            }
        }
        i += 1;
    }
    let restricted: Vec<Vec<usize>> = actions.iter().map(|a| orbit.iter().map(|&c| pos[&a[c]]).collect()).collect();
    if restricted.is_empty() {
        return GModule::trivial(field, orbit.len(), 0);
    }
    GModule::permutation(field, &restricted)
}

/// No proper Harish-Chandra restriction is nonzero. It suffices to look at
/// the maximal parabolics `(k, n-k)`.
pub fn is_cuspidal(group: &BNGroup, m: &GModule) -> Result<bool, ModError> {
    let n = group.n();
    for k in 1..n {
        let par = group.parabolic(&[k, n - k])?;
        if fixed_points(m, &par.radical_generators).rows() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spin of several vectors, as a subspace.
pub fn spin_rows(m: &GModule, rows: &Matrix) -> Matrix {
    row_space(&spin(m, rows).basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bngroup::build_gl;
    use crate::modrep::hom::{hom_space, is_isomorphic};

    #[test]
    fn borel_dimensions() {
        for (n, q, ell, dim) in [(2, 2, 3, 3), (3, 2, 7, 21), (2, 3, 2, 4)] {
            let g = build_gl(n, q).unwrap();
            assert_eq!(BorelModule::new(&g, ell, 1).unwrap().dim(), dim);
        }
        let g = build_gl(2, 2).unwrap();
        assert_eq!(BorelModule::new(&g, 2, 1).unwrap_err(), ModError::SameCharacteristic(2));
    }

    #[test]
    fn steinberg_element_small() {
        let g = build_gl(2, 2).unwrap();
        let b = BorelModule::new(&g, 3, 1).unwrap();
        let e = b.steinberg_int(&g);
        assert_eq!(e.iter().sum::<i64>(), 0);
        assert_eq!(e.iter().filter(|&&x| x != 0).count(), 2);
        assert_eq!(e[0], 1);
        assert!(theta_identity(&g, &b).unwrap());
    }

    #[test]
    fn steinberg_rank_is_unipotent_order() {
        for (n, q, ell, u) in [(2, 2, 3, 2), (2, 3, 2, 3), (3, 2, 7, 8)] {
            let g = build_gl(n, q).unwrap();
            let d = SteinbergData::new(&g, &Field::prime(ell).unwrap()).unwrap();
            assert_eq!(d.st.dim(), u);
            assert!(d.borel.module.is_invariant(&d.st.basis));
        }
    }

    #[test]
    fn socle_gl22_is_trivial() {
        let g = build_gl(2, 2).unwrap();
        let d = SteinbergData::new(&g, &Field::prime(3).unwrap()).unwrap();
        assert!(d.socle_is_trivial());
        assert_eq!(d.fixed_in_st(&g.unipotent_generators()).rows(), 1);
    }

    #[test]
    fn gl32_mod7() {
        let g = build_gl(3, 2).unwrap();
        let d = SteinbergData::new(&g, &Field::prime(7).unwrap()).unwrap();
        assert!(!d.socle_is_trivial());
        assert!(is_irreducible(&d.y_module, 1).unwrap().irreducible);
        assert_eq!(d.fixed_in_st(&g.unipotent_generators()).rows(), 1);
        let fix_b = d.fixed_in_st(&g.borel_generators());
        let line = row_space(&Matrix::from_rows(d.borel.field(), d.borel.dim(), std::slice::from_ref(&d.socle_vector)));
        assert_eq!(fix_b, line);
        assert_eq!(multiplicity(&d.y_module, &d.st_module, 3).unwrap(), 1);
        assert_eq!(multiplicity_in_parabolic(&g, &d.y_module, &[2, 1], 5).unwrap(), 1);
        assert_eq!(multiplicity_in_parabolic(&g, &d.y_module, &[3], 5).unwrap(), 0);
    }

    #[test]
    fn parabolic_modules() {
        let g = build_gl(3, 2).unwrap();
        let f = Field::prime(7).unwrap();
        assert_eq!(parabolic_perm_module(&g, &[2, 1], &f).unwrap().dim(), 7);
        let top = parabolic_perm_module(&g, &[3], &f).unwrap();
        assert_eq!(top.dim(), 1);
        assert!(top.gens().iter().all(Matrix::is_identity));
        let bottom = parabolic_perm_module(&g, &[1, 1, 1], &f).unwrap();
        assert_eq!(bottom, BorelModule::over(&g, &f).unwrap().module.with_label("M[1, 1, 1]"));
    }

    #[test]
    fn harish_chandra_functors() {
        let g = build_gl(3, 2).unwrap();
        let f = Field::prime(7).unwrap();
        let borel = BorelModule::over(&g, &f).unwrap();
        // restriction to the whole group is the identity
        let all = g.parabolic(&[3]).unwrap();
        assert_eq!(hc_restrict(&all, &borel.module).unwrap().unwrap().gens(), borel.module.gens());
        // induction from the torus of the trivial module
        let torus = g.parabolic(&[1, 1, 1]).unwrap();
        let triv = GModule::trivial(&f, 1, torus.levi_generators.len()).unwrap();
        let ind = hc_induce(&g, &torus, &triv).unwrap();
        assert!(is_isomorphic(&ind, &borel.module, 1).unwrap());
        // transitivity through the (2,1) Levi
        let p = g.parabolic(&[2, 1]).unwrap();
        let lb = levi_borel_module(&g, &p, &f).unwrap();
        assert_eq!(lb.dim(), 3);
        let ind = hc_induce(&g, &p, &lb).unwrap();
        assert_eq!(ind.dim(), 21);
        assert!(is_isomorphic(&ind, &borel.module, 2).unwrap());
        // adjunction on a test pair
        let d = SteinbergData::new(&g, &f).unwrap();
        let left = hom_space(&ind, &d.st_module).unwrap().len();
        let res = hc_restrict(&p, &d.st_module).unwrap().unwrap();
        let right = hom_space(&lb, &res).unwrap().len();
        assert_eq!(left, right);
    }

    #[test]
    fn induction_with_torus_generators() {
        let g = build_gl(2, 3).unwrap();
        let f = Field::prime(2).unwrap();
        let torus = g.parabolic(&[1, 1]).unwrap();
        let triv = GModule::trivial(&f, 1, torus.levi_generators.len()).unwrap();
        let ind = hc_induce(&g, &torus, &triv).unwrap();
        assert!(is_isomorphic(&ind, &BorelModule::over(&g, &f).unwrap().module, 1).unwrap());
    }
}
