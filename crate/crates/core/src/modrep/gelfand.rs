//! Gelfand-Graev modules `Γ_σ = kG u̲_σ`, realized as `Ind_U^G(σ^{-1})`
//! on the cosets `G/U`.

use std::collections::{HashMap, VecDeque};

use crate::bngroup::{BNGroup, RegularCharacter};
use crate::exactfield::{Field, Matrix};

use super::hom::{hom_space, radical_and_head};
use super::lie::SteinbergData;
use super::meataxe::{is_irreducible, multiplicity};
use super::module::{spin_vector, GModule};
use super::ModError;

pub const MAX_GELFAND_GRAEV_DIM: usize = 1000;

/// `u̲_σ = Σ σ(u) u` as a coefficient vector over the listed elements of `U`.
pub fn unipotent_twisted_sum(units: &[Matrix], sigma: &RegularCharacter) -> Vec<u32> {
    units.iter().map(|u| sigma.value(u)).collect()
}

/// `u̲_σ² = |U| u̲_σ`, multiplied out in the group algebra of `U`.
pub fn idempotency_holds(group: &BNGroup, sigma: &RegularCharacter) -> Result<bool, ModError> {
    let units = group.unipotent_elements()?;
    let index: HashMap<Vec<u32>, usize> = units.iter().enumerate().map(|(i, u)| (u.data().to_vec(), i)).collect();
    let f = sigma.field();
    let coeffs = unipotent_twisted_sum(&units, sigma);
    let mut square = vec![0u32; units.len()];
    for (a, ua) in units.iter().enumerate() {
        for (b, ub) in units.iter().enumerate() {
            let k = index[ua.mul(ub).data()];
            square[k] = f.add(square[k], f.mul(coeffs[a], coeffs[b]));
        }
    }
    let order = f.from_int(units.len() as i64);
    Ok(square.iter().zip(&coeffs).all(|(&s, &c)| s == f.mul(order, c)))
}

/// Right action matrix `P_σ = Σ σ(u) A_u` on the Borel module, so that
/// `u̲_σ v = v P_σ`.
pub fn twisted_sum_matrix(group: &BNGroup, data: &SteinbergData, sigma: &RegularCharacter) -> Result<Matrix, ModError> {
    let f = data.borel.field();
    let mut p = Matrix::zeros(f, data.borel.dim(), data.borel.dim());
    for u in group.unipotent_elements()? {
        p.add_scaled(&data.borel.element_matrix(&u), sigma.value(&u));
    }
    Ok(p)
}

/// Canonical representative `u n_w h` of the coset `gU`.
fn coset_rep(group: &BNGroup, g: &Matrix) -> Result<Matrix, ModError> {
    let d = group.bruhat_reversed(g)?;
    let mut h = Matrix::zeros(group.field(), group.n(), group.n());
    for i in 0..group.n() {
        h.set(i, i, d.b.get(i, i));
    }
    Ok(d.u.mul(group.n_w(d.w)).mul(&h))
}

/// `Γ_σ ≅ Ind_U^G(σ^{-1})`, monomial on `G/U`.
pub fn gelfand_graev_module(group: &BNGroup, sigma: &RegularCharacter) -> Result<GModule, ModError> {
    let f = sigma.field();
    let expected = &group.orders().g / &group.orders().u;
    if expected > MAX_GELFAND_GRAEV_DIM.into() {
        return Err(ModError::CapExceeded {
            what: "dim Γ_σ",
            value: usize::try_from(expected).unwrap_or(usize::MAX),
            cap: MAX_GELFAND_GRAEV_DIM,
        });
    }
    let id = Matrix::identity(group.field(), group.n());
    let mut reps = vec![id.clone()];
    let mut lookup = HashMap::from([(id.data().to_vec(), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in group.generators() {
            let r = coset_rep(group, &g.matrix.mul(&reps[i]))?;
            if !lookup.contains_key(r.data()) {
                lookup.insert(r.data().to_vec(), reps.len());
                reps.push(r);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    let dim = reps.len();
    let inverses: Vec<Matrix> = reps.iter().map(|r| r.inverse().expect("invertible")).collect();
    let mut gens = Vec::new();
    for g in group.generators() {
        let mut m = Matrix::zeros(f, dim, dim);
        for (i, r) in reps.iter().enumerate() {
            let h = g.matrix.mul(r);
            let j = lookup[coset_rep(group, &h)?.data()];
            // g r_i = r_j u with u in U; r_i ⊗ 1 maps to σ(u)^{-1} r_j ⊗ 1
            let u = inverses[j].mul(&h);
            m.set(i, j, f.inv(sigma.value(&u)));
        }
        gens.push(m);
    }
    Ok(GModule::new(f, dim, gens)?.with_label("Gamma"))
}

/// Results of the Gelfand-Graev checks for one group and `ℓ`.
#[derive(Debug, Clone)]
pub struct GelfandGraevReport {
    pub degree: u32,
    pub idempotent: bool,
    /// `dim u̲_σ St_k`.
    pub image_dim: usize,
    /// `dim Hom(Γ_σ, St_k)`, when `Γ_σ` is below the cap.
    pub hom_dim: Option<usize>,
    /// Dimension of `D_σ`, the head of `kG u̲_σ e`.
    pub d_sigma_dim: usize,
    pub d_sigma_simple: bool,
    /// Multiplicity of `D_σ` in `St_k`.
    pub d_sigma_multiplicity: usize,
}

pub fn gelfand_graev_k(group: &BNGroup, ell: u64, seed: u64) -> Result<GelfandGraevReport, ModError> {
    let sigma = group.regular_character(ell)?;
    let field: &Field = sigma.field();
    let data = SteinbergData::new(group, field)?;
    let p = twisted_sum_matrix(group, &data, &sigma)?;
    let image_dim = data.st.basis.mul(&p).rank();
    let gamma_e = p.apply(&data.e);
    let image = spin_vector(&data.borel.module, &gamma_e);
    let image_module = data.borel.module.submodule(&image.basis)?;
    let (_, head) = radical_and_head(&image_module, seed)?;
    let d_sigma_simple = is_irreducible(&head, seed)?.irreducible;
    let d_sigma_multiplicity = multiplicity(&head, &data.st_module, seed)?;
    let hom_dim = match gelfand_graev_module(group, &sigma) {
        Ok(gamma) => Some(hom_space(&gamma, &data.st_module)?.len()),
        Err(ModError::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(GelfandGraevReport {
        degree: sigma.degree(),
        idempotent: idempotency_holds(group, &sigma)?,
        image_dim,
        hom_dim,
        d_sigma_dim: head.dim(),
        d_sigma_simple,
        d_sigma_multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bngroup::build_gl;

    #[test]
    fn extension_degree() {
        let g = build_gl(2, 3).unwrap();
        assert_eq!(g.regular_character(2).unwrap().degree(), 2);
        let g = build_gl(2, 2).unwrap();
        assert_eq!(g.regular_character(3).unwrap().degree(), 1);
    }

    #[test]
    fn gelfand_graev_dimension() {
        let g = build_gl(2, 3).unwrap();
        let sigma = g.regular_character(2).unwrap();
        assert_eq!(gelfand_graev_module(&g, &sigma).unwrap().dim(), 16);
        let g = build_gl(3, 2).unwrap();
        let sigma = g.regular_character(7).unwrap();
        assert_eq!(gelfand_graev_module(&g, &sigma).unwrap().dim(), 21);
    }

    #[test]
    fn small_reports() {
        for (n, q, ell) in [(2, 2, 3), (2, 3, 2), (3, 2, 7)] {
            let g = build_gl(n, q).unwrap();
            let r = gelfand_graev_k(&g, ell, 11).unwrap();
            assert!(r.idempotent);
            assert_eq!(r.image_dim, 1);
            assert_eq!(r.hom_dim, Some(1));
            assert!(r.d_sigma_simple);
            assert_eq!(r.d_sigma_multiplicity, 1);
        }
    }
}
