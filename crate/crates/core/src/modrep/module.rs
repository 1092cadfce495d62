use crate::exactfield::{row_space, Field, Matrix};

use super::ModError;

/// A representation given by one matrix per generator of a fixed generating
/// set. Vectors are rows; generator `g` acts by `v -> v A_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
    pub label: Option<String>,
}

/// Invariant subspace, stored as a reduced echelon basis in the coordinates
/// of the parent module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    pub basis: Matrix,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Semi-echelon basis that reduces new vectors as they arrive.
#[derive(Debug, Clone)]
pub(crate) struct Echelonizer {
    field: Field,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelonizer {
    pub fn new(field: &Field) -> Self {
        Self { field: field.clone(), rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                self.field.axpy(v, row, self.field.neg(c));
            }
        }
    }

    /// Adds `v` if it is independent of the stored rows.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = self.field.inv(v[p]);
        self.field.scale(&mut v, inv);
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_matrix(self, cols: usize) -> Matrix {
        Matrix::from_rows(&self.field, cols, &self.rows)
    }
}

impl GModule {
    pub fn new(field: &Field, dim: usize, gens: Vec<Matrix>) -> Result<Self, ModError> {
        if dim == 0 {
            return Err(ModError::ZeroModule);
        }
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim || g.field() != field) {
            return Err(ModError::Shape);
        }
        Ok(Self { field: field.clone(), dim, gens, label: None })
    }

    /// Trivial module of dimension `dim` for `count` generators.
    pub fn trivial(field: &Field, dim: usize, count: usize) -> Result<Self, ModError> {
        Self::new(field, dim, vec![Matrix::identity(field, dim); count])
    }

    /// Permutation module; `actions[g][i]` is the image of point `i`.
    pub fn permutation(field: &Field, actions: &[Vec<usize>]) -> Result<Self, ModError> {
        let dim = actions.first().map_or(0, |a| a.len());
        let gens = actions.iter().map(|a| Matrix::permutation(field, a)).collect();
        Self::new(field, dim, gens)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    /// The module restricted to the generators listed in `idx`.
    pub fn restrict(&self, idx: &[usize]) -> GModule {
        let gens = idx.iter().map(|&i| self.gens[i].clone()).collect();
        GModule { field: self.field.clone(), dim: self.dim, gens, label: None }
    }

    /// Same subspaces, transposed action; invariant subspaces of this module
    /// are the annihilators of submodules of `self`.
    pub fn transposed(&self) -> GModule {
        let gens = self.gens.iter().map(Matrix::transpose).collect();
        GModule { field: self.field.clone(), dim: self.dim, gens, label: None }
    }

    /// Contragredient module: `g` acts by the inverse transpose.
    pub fn dual(&self) -> GModule {
        let gens = self.gens.iter().map(|g| g.inverse().expect("generators are invertible").transpose()).collect();
        GModule { field: self.field.clone(), dim: self.dim, gens, label: None }
    }

    pub fn is_invariant(&self, space: &Matrix) -> bool {
        let r = space.rank();
        self.gens.iter().all(|g| space.vstack(&space.mul(g)).rank() == r)
    }

    /// Action on an invariant subspace given in reduced echelon form.
    pub fn submodule(&self, sub: &Matrix) -> Result<GModule, ModError> {
        let ech = sub.echelonize();
        let basis = row_space(sub);
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let img = basis.mul(g);
                let rows: Vec<Vec<u32>> =
                    (0..img.rows()).map(|r| ech.pivots.iter().map(|&p| img.get(r, p)).collect()).collect();
                Matrix::from_rows(&self.field, basis.rows(), &rows)
            })
            .collect();
        GModule::new(&self.field, basis.rows(), gens)
    }

    /// Action on `self / sub`, in the basis of non-pivot unit vectors.
    pub fn quotient(&self, sub: &Matrix) -> Result<GModule, ModError> {
        let basis = row_space(sub);
        let ech = basis.echelonize();
        let free: Vec<usize> = (0..self.dim).filter(|c| !ech.pivots.contains(c)).collect();
        let f = &self.field;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u32>> = free
                    .iter()
                    .map(|&j| {
                        let mut v = g.row(j).to_vec();
                        for (r, &p) in ech.pivots.iter().enumerate() {
                            let c = v[p];
                            if c != 0 {
                                f.axpy(&mut v, basis.row(r), f.neg(c));
                            }
                        }
                        free.iter().map(|&c| v[c]).collect()
                    })
                    .collect();
                Matrix::from_rows(f, free.len(), &rows)
            })
            .collect();
        GModule::new(f, free.len(), gens)
    }

    /// Coordinates of `v` (lying in the invariant subspace `sub`) in the
    /// basis used by [`GModule::submodule`].
    pub fn coordinates_in(sub: &Matrix, v: &[u32]) -> Vec<u32> {
        let basis = row_space(sub);
        let ech = basis.echelonize();
        ech.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Direct sum, generator by generator.
    pub fn direct_sum(&self, other: &GModule) -> Result<GModule, ModError> {
        if self.gens.len() != other.gens.len() || self.field != other.field {
            return Err(ModError::GeneratorMismatch);
        }
        let n = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(&self.field, n, n);
                for r in 0..self.dim {
                    m.row_mut(r)[..self.dim].copy_from_slice(a.row(r));
                }
                for r in 0..other.dim {
                    m.row_mut(self.dim + r)[self.dim..].copy_from_slice(b.row(r));
                }
                m
            })
            .collect();
        GModule::new(&self.field, n, gens)
    }
}

/// Smallest invariant subspace containing the rows of `seeds`.
pub fn spin(m: &GModule, seeds: &Matrix) -> Submodule {
    let mut ech = Echelonizer::new(m.field());
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for r in 0..seeds.rows() {
        let mut v = seeds.row(r).to_vec();
        ech.reduce(&mut v);
        if ech.insert(v.clone()) {
            basis.push(v);
        }
    }
    let mut i = 0;
    while i < basis.len() && basis.len() < m.dim() {
        for g in m.gens() {
            let w = g.apply(&basis[i]);
            let mut red = w.clone();
            ech.reduce(&mut red);
            if ech.insert(red.clone()) {
                basis.push(red);
            }
        }
        i += 1;
    }
    Submodule { basis: row_space(&ech.into_matrix(m.dim())) }
}

pub fn spin_vector(m: &GModule, v: &[u32]) -> Submodule {
    spin(m, &Matrix::from_rows(m.field(), m.dim(), &[v.to_vec()]))
}

/// Common fixed space of the listed generators.
pub fn fixed_points(m: &GModule, gens: &[usize]) -> Matrix {
    let id = Matrix::identity(m.field(), m.dim());
    let mut space = id.clone();
    for &g in gens {
        let k = m.gens()[g].sub(&id).left_kernel();
        space = crate::exactfield::intersect(&space, &k).expect("same ambient dimension");
    }
    row_space(&space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3_natural(f: &Field) -> GModule {
        GModule::permutation(f, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn zero_module_rejected() {
        let f = Field::prime(3).unwrap();
        assert_eq!(GModule::new(&f, 0, vec![]).unwrap_err(), ModError::ZeroModule);
        assert_eq!(GModule::new(&f, 2, vec![Matrix::identity(&f, 3)]).unwrap_err(), ModError::Shape);
    }

    #[test]
    fn spin_basics() {
        let f = Field::prime(3).unwrap();
        let m = s3_natural(&f);
        assert_eq!(spin(&m, &Matrix::zeros(&f, 1, 3)).dim(), 0);
        let ones = spin_vector(&m, &[1, 1, 1]);
        assert_eq!(ones.dim(), 1);
        assert_eq!(spin_vector(&m, &[1, 0, 0]).dim(), 3);
        // sum-zero vectors contain the all-ones line in characteristic 3
        let aug = spin_vector(&m, &[1, 2, 0]);
        assert_eq!(aug.dim(), 2);
        assert!(m.is_invariant(&aug.basis));
    }

    #[test]
    fn sub_and_quotient_dims() {
        let f = Field::prime(3).unwrap();
        let m = s3_natural(&f);
        let line = spin_vector(&m, &[1, 1, 1]).basis;
        let sub = m.submodule(&line).unwrap();
        assert!(sub.gens().iter().all(Matrix::is_identity));
        let quo = m.quotient(&line).unwrap();
        assert_eq!(quo.dim(), 2);
        let fix = fixed_points(&m, &[0, 1]);
        assert_eq!(fix, line);
        assert_eq!(m.direct_sum(&quo).unwrap().dim(), 5);
    }

    #[test]
    fn dual_of_permutation_module() {
        let f = Field::prime(5).unwrap();
        let m = s3_natural(&f);
        assert_eq!(m.dual().gens(), m.gens());
    }

    proptest! {
        #[test]
        fn spin_is_idempotent_and_invariant(v in proptest::collection::vec(0u32..3, 3)) {
            let f = Field::prime(3).unwrap();
            let m = s3_natural(&f);
            let s = spin_vector(&m, &v);
            prop_assert!(m.is_invariant(&s.basis));
            prop_assert_eq!(spin(&m, &s.basis).basis, s.basis.clone());
        }

        #[test]
        fn spin_is_monotone(v in proptest::collection::vec(0u32..3, 3), w in proptest::collection::vec(0u32..3, 3)) {
            let f = Field::prime(3).unwrap();
            let m = s3_natural(&f);
            let small = spin_vector(&m, &v);
            let big = spin(&m, &Matrix::from_rows(&f, 3, &[v.clone(), w]));
            prop_assert_eq!(small.basis.vstack(&big.basis).rank(), big.dim());
        }
    }
}
