//! Irreducibility testing in the style of Holt and Rees, and composition
//! series by recursive splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactfield::poly::{self, Poly};
use crate::exactfield::Matrix;

use super::hom::hom_space;
use super::module::{spin_vector, GModule, Submodule};
use super::ModError;

const MAX_ATTEMPTS: usize = 2000;

/// Outcome of an irreducibility test. A reducible module comes with a
/// proper nonzero submodule.
#[derive(Debug, Clone)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub witness: Option<Submodule>,
}

fn random_element(m: &GModule, rng: &mut ChaCha8Rng) -> Matrix {
    let f = m.field();
    let n = m.dim();
    let mut acc = Matrix::zeros(f, n, n);
    for _ in 0..3 {
        let mut word = Matrix::identity(f, n);
        if m.gen_count() > 0 {
            for _ in 0..rng.random_range(1..=4) {
                word = word.mul(&m.gens()[rng.random_range(0..m.gen_count())]);
            }
        }
        acc.add_scaled(&word, rng.random_range(0..f.order()));
    }
    acc
}

/// Seeded, deterministic irreducibility test.
pub fn is_irreducible(m: &GModule, seed: u64) -> Result<Irreducibility, ModError> {
    if m.dim() == 0 {
        return Err(ModError::ZeroModule);
    }
    if m.dim() == 1 {
        return Ok(Irreducibility { irreducible: true, witness: None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dual = m.transposed();
    for _ in 0..MAX_ATTEMPTS {
        let a = random_element(m, &mut rng);
        let factors = poly::irreducible_factors(m.field(), &a.charpoly());
        for p in factors {
            let nmat = a.eval_poly(&p);
            let kernel = nmat.left_kernel();
            let v = kernel.row(0).to_vec();
            let sub = spin_vector(m, &v);
            if sub.dim() < m.dim() {
                return Ok(Irreducibility { irreducible: false, witness: Some(sub) });
            }
            if kernel.rows() == poly::degree(&p).unwrap() {
                // the good case: one vector of ker p(A) and one of its
                // transpose decide the question
                let w = nmat.kernel().row(0).to_vec();
                let dsub = spin_vector(&dual, &w);
                if dsub.dim() < m.dim() {
                    let witness = Submodule { basis: crate::exactfield::row_space(&dsub.basis.kernel()) };
                    return Ok(Irreducibility { irreducible: false, witness: Some(witness) });
                }
                return Ok(Irreducibility { irreducible: true, witness: None });
            }
        }
    }
    Err(ModError::Inconclusive)
}

/// Dimension plus characteristic polynomials of a fixed list of algebra
/// elements. Depends only on the isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FactorFingerprint {
    pub dim: usize,
    pub charpolys: Vec<Poly>,
}

pub fn fingerprint(m: &GModule) -> FactorFingerprint {
    let g = m.gens();
    let mut charpolys = Vec::new();
    for (i, a) in g.iter().enumerate() {
        charpolys.push(a.charpoly());
        for (j, b) in g.iter().enumerate() {
            if i != j {
                charpolys.push(a.mul(b).charpoly());
            }
            if i < j {
                charpolys.push(a.add(b).charpoly());
            }
        }
    }
    if !g.is_empty() {
        let long = g.iter().fold(Matrix::identity(m.field(), m.dim()), |acc, x| acc.mul(x));
        charpolys.push(long.charpoly());
    }
    FactorFingerprint { dim: m.dim(), charpolys }
}

/// Composition factors from the bottom up.
pub fn composition_series(m: &GModule, seed: u64) -> Result<Vec<GModule>, ModError> {
    let test = is_irreducible(m, seed)?;
    if test.irreducible {
        return Ok(vec![m.clone()]);
    }
    let sub = test.witness.expect("reducible module has a witness");
    let mut out = composition_series(&m.submodule(&sub.basis)?, seed.wrapping_add(1))?;
    out.extend(composition_series(&m.quotient(&sub.basis)?, seed.wrapping_add(2))?);
    Ok(out)
}

/// One isomorphism type of composition factor.
#[derive(Debug, Clone)]
pub struct CompositionFactor {
    pub module: GModule,
    pub fingerprint: FactorFingerprint,
    pub multiplicity: usize,
}

/// Irreducible modules are isomorphic iff a nonzero homomorphism exists.
pub fn simple_isomorphic(a: &GModule, b: &GModule) -> Result<bool, ModError> {
    Ok(a.dim() == b.dim() && fingerprint(a) == fingerprint(b) && !hom_space(a, b)?.is_empty())
}

/// Groups a list of simple modules into isomorphism types, keeping the
/// order of first appearance.
pub fn group_factors(series: Vec<GModule>) -> Result<Vec<CompositionFactor>, ModError> {
    let mut out: Vec<CompositionFactor> = Vec::new();
    for m in series {
        let fp = fingerprint(&m);
        let mut found = false;
        for f in out.iter_mut() {
            if f.fingerprint == fp && !hom_space(&f.module, &m)?.is_empty() {
                f.multiplicity += 1;
                found = true;
                break;
            }
        }
        if !found {
            out.push(CompositionFactor { module: m, fingerprint: fp, multiplicity: 1 });
        }
    }
    Ok(out)
}

pub fn composition_factors(m: &GModule, seed: u64) -> Result<Vec<CompositionFactor>, ModError> {
    group_factors(composition_series(m, seed)?)
}

/// How often the simple module `s` occurs as a composition factor of `m`.
pub fn multiplicity(s: &GModule, m: &GModule, seed: u64) -> Result<usize, ModError> {
    let mut count = 0;
    for f in composition_series(m, seed)? {
        if simple_isomorphic(s, &f)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Sorted `(dim, multiplicity)` pairs; a seed-independent summary.
pub fn factor_summary(factors: &[CompositionFactor]) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = factors.iter().map(|f| (f.module.dim(), f.multiplicity)).collect();
    v.sort_unstable();
    v
}
