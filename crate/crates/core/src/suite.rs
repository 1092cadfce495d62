//! The invariant suite for one `GL_n(q)` and one prime `ℓ ≠ p`, shared by
//! the command line and the acceptance tests.

use num_bigint::BigUint;
use serde::Serialize;

use crate::bngroup::{build_gl_with, BNGroup, Caps, GroupError};
use crate::combinat::{
    comp_length_gl, dominance_leq, e_value, mullineux_socle_label, partitions, CombinatError, EValue,
};
use crate::exactfield::{row_space, ExactError, Matrix};
use crate::hecke::{abstract_identities, BorelHecke, HeckeError};
use crate::modrep::lie::{coefficient_field, multiplicity_in_parabolic};
use crate::modrep::{
    composition_factors, composition_series, factor_summary, gelfand_graev_k, hc_induce, hc_restrict, hom_space,
    is_cuspidal, is_irreducible, is_isomorphic, levi_borel_module, multiplicity, radical_and_head, theta_identity,
    GModule, ModError, SteinbergData,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Every check, in the order it is run and reported.
pub const CHECK_NAMES: [&str; 24] = [
    "bruhat_selftest",
    "hecke_relations",
    "hecke_abstract_identities",
    "sign_eigenvector_integers",
    "sign_eigenvector_field",
    "steinberg_pairing",
    "theta_identity",
    "steinberg_rank",
    "sign_eigenspace_equals_st",
    "irreducibility_criterion",
    "socle_irreducible",
    "fix_u_dimension_one",
    "fix_b_spanned_by_socle_vector",
    "socle_multiplicity_one",
    "trivial_socle_criterion",
    "trivial_factor_absent",
    "composition_length_formula",
    "multiplicity_free",
    "seed_independence",
    "socle_label_dominance",
    "harish_chandra_transitivity",
    "harish_chandra_adjunction",
    "gelfand_graev",
    "radical_factors_noncuspidal",
];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error(transparent)]
    Field(#[from] ExactError),
}

impl SuiteError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            SuiteError::Group(GroupError::CapExceeded { .. }) | SuiteError::Module(ModError::CapExceeded { .. }) => {
                "cap_exceeded"
            }
            SuiteError::Group(GroupError::SameCharacteristic(_))
            | SuiteError::Module(ModError::SameCharacteristic(_))
            | SuiteError::Hecke(HeckeError::SameCharacteristic(_))
            | SuiteError::Combinat(CombinatError::SameCharacteristic { .. }) => "same_characteristic",
            SuiteError::Group(GroupError::NotPrimePower(_)) | SuiteError::Combinat(CombinatError::NotPrimePower(_)) => {
                "not_prime_power"
            }
            SuiteError::Field(ExactError::NotPrime(_))
            | SuiteError::Module(ModError::Field(ExactError::NotPrime(_)))
            | SuiteError::Group(GroupError::Field(ExactError::NotPrime(_)))
            | SuiteError::Combinat(CombinatError::NotPrime(_)) => "not_prime",
            SuiteError::Module(ModError::Inconclusive) => "inconclusive",
            _ => "invalid_input",
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FactorEntry {
    pub dim: usize,
    pub mult: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub n: usize,
    pub q: u64,
    pub ell: u64,
    pub seed: u64,
    pub e: EValue,
    pub mu0: String,
    pub checks: Vec<Check>,
    pub factors: Vec<FactorEntry>,
    /// Milliseconds per check; text output only, so JSON stays reproducible.
    #[serde(skip)]
    pub timings: Vec<(&'static str, f64)>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_index: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, max_index: Caps::default().max_index }
    }
}

struct Runner {
    checks: Vec<Check>,
    timings: Vec<(&'static str, f64)>,
}

impl Runner {
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Result<(bool, String), SuiteError>) -> Result<(), SuiteError> {
        let (result, ms) = timed(f);
        let (pass, details) = result?;
        self.timings.push((name, ms));
        self.checks.push(Check { name, pass, details });
        Ok(())
    }
}

#[cfg(not(target_arch = "wasm32"))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = std::time::Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1000.0)
}

// no monotonic clock in the browser build
#[cfg(target_arch = "wasm32")]
fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    (f(), 0.0)
}

fn is_trivial(m: &GModule) -> bool {
    m.dim() == 1 && m.gens().iter().all(Matrix::is_identity)
}

fn not_applicable(reason: &str) -> Result<(bool, String), SuiteError> {
    Ok((true, format!("not applicable: {reason}")))
}

/// Builds the group with the given cap and runs [`verify_group`].
pub fn verify(n: usize, q: u64, ell: u64, opts: VerifyOptions) -> Result<VerificationReport, SuiteError> {
    let caps = Caps { max_index: opts.max_index, ..Caps::default() };
    let group = build_gl_with(n, q, caps)?;
    verify_group(&group, ell, opts.seed)
}

pub fn verify_group(group: &BNGroup, ell: u64, seed: u64) -> Result<VerificationReport, SuiteError> {
    let field = coefficient_field(group, ell, 1)?;
    let n = group.n();
    let q = group.q();
    let e = e_value(q, ell)?;
    let mu0 = mullineux_socle_label(n, e);
    let index = group.orders().index.clone();
    let ell_divides_index = (&index % BigUint::from(ell)) == BigUint::from(0u32);
    let q_is_minus_one = (q + 1).is_multiple_of(ell);

    let mut r = Runner { checks: Vec::new(), timings: Vec::new() };
    r.run("bruhat_selftest", || Ok((group.bruhat_selftest(50, seed), "50 random elements".into())))?;

    let cosets = group.flag_cosets()?;
    let hecke = BorelHecke::new(group, &cosets)?;
    r.run("hecke_relations", || Ok((hecke.relations_hold(&field), "quadratic and all basis products".into())))?;
    r.run("hecke_abstract_identities", || {
        let c = abstract_identities(group.weyl(), q as i64, &field)?;
        Ok((c.all(), serde_json::to_string(&c).expect("serializable")))
    })?;
    r.run("sign_eigenvector_integers", || Ok((hecke.lemma_over_integers(), format!("|W| = {}", group.weyl().order()))))?;
    r.run("sign_eigenvector_field", || Ok((hecke.lemma_over_field(&field), format!("over GF({ell})"))))?;

    let data = SteinbergData::new(group, &field)?;
    r.run("steinberg_pairing", || {
        let s: i64 = data.borel.steinberg_int(group).iter().sum();
        Ok((s == 0, format!("coordinate sum {s}")))
    })?;
    r.run("theta_identity", || Ok((theta_identity(group, &data.borel)?, "over the integers".into())))?;
    r.run("steinberg_rank", || {
        let u = &group.orders().u;
        Ok((BigUint::from(data.st.dim()) == *u, format!("dim St = {}, |U| = {u}", data.st.dim())))
    })?;
    r.run("sign_eigenspace_equals_st", || {
        let eig = hecke.sign_eigenspace(&field);
        Ok((row_space(&eig) == data.st.basis, format!("dims {} and {}", eig.rows(), data.st.dim())))
    })?;

    let st_irreducible = is_irreducible(&data.st_module, seed)?.irreducible;
    r.run("irreducibility_criterion", || {
        Ok((
            st_irreducible != ell_divides_index,
            format!("irreducible = {st_irreducible}, ℓ | [G:B] = {ell_divides_index}"),
        ))
    })?;
    let y_irreducible = is_irreducible(&data.y_module, seed)?.irreducible;
    r.run("socle_irreducible", || Ok((y_irreducible, format!("dim Y = {}", data.y.dim()))))?;
    r.run("fix_u_dimension_one", || {
        let d = data.fixed_in_st(&group.unipotent_generators()).rows();
        Ok((d == 1, format!("dim Fix_U(St) = {d}")))
    })?;
    r.run("fix_b_spanned_by_socle_vector", || {
        let fix = data.fixed_in_st(&group.borel_generators());
        let line = row_space(&Matrix::from_rows(&field, data.borel.dim(), std::slice::from_ref(&data.socle_vector)));
        Ok((fix == line && line.rows() == 1, format!("dim Fix_B(St) = {}", fix.rows())))
    })?;
    r.run("socle_multiplicity_one", || {
        let m = multiplicity(&data.y_module, &data.st_module, seed)?;
        Ok((m == 1, format!("multiplicity {m}")))
    })?;
    r.run("trivial_socle_criterion", || {
        let t = data.socle_is_trivial();
        Ok((t == q_is_minus_one, format!("trivial = {t}, q ≡ -1 mod ℓ = {q_is_minus_one}")))
    })?;

    let factors = composition_factors(&data.st_module, seed)?;
    let summary = factor_summary(&factors);
    r.run("trivial_factor_absent", || {
        if q_is_minus_one || !ell_divides_index {
            return not_applicable("needs q ≢ -1 mod ℓ and ℓ | [G:B]");
        }
        let present = factors.iter().any(|f| is_trivial(&f.module));
        Ok((!present, format!("trivial factor present = {present}")))
    })?;
    r.run("composition_length_formula", || {
        let len: usize = factors.iter().map(|f| f.multiplicity).sum();
        let formula = comp_length_gl(n, q, ell)?;
        Ok((BigUint::from(len) == formula, format!("computed {len}, formula {formula}")))
    })?;
    r.run("multiplicity_free", || {
        Ok((factors.iter().all(|f| f.multiplicity == 1), format!("{summary:?}")))
    })?;
    r.run("seed_independence", || {
        let other_seed = seed ^ 0x9e37_79b9_7f4a_7c15;
        let other = factor_summary(&composition_factors(&data.st_module, other_seed)?);
        Ok((other == summary, format!("second seed {other_seed}")))
    })?;
    r.run("socle_label_dominance", || {
        let top = multiplicity_in_parabolic(group, &data.y_module, mu0.parts(), seed)?;
        let mut pass = top == 1;
        let mut checked = Vec::new();
        for lambda in partitions(n) {
            if !dominance_leq(&lambda, &mu0)? {
                let m = multiplicity_in_parabolic(group, &data.y_module, lambda.parts(), seed)?;
                pass &= m == 0;
                checked.push(format!("{lambda}:{m}"));
            }
        }
        Ok((pass, format!("mu0 = {mu0}: {top}; others [{}]", checked.join(", "))))
    })?;

    let hc = if n >= 2 {
        let par = group.parabolic(&[n - 1, 1])?;
        let lb = levi_borel_module(group, &par, &field)?;
        let ind = hc_induce(group, &par, &lb)?;
        Some((par, lb, ind))
    } else {
        None
    };
    r.run("harish_chandra_transitivity", || match &hc {
        None => not_applicable("n = 1"),
        Some((_, lb, ind)) => Ok((
            is_isomorphic(ind, &data.borel.module, seed)?,
            format!("dim kL b = {}, induced dim {}", lb.dim(), ind.dim()),
        )),
    })?;
    r.run("harish_chandra_adjunction", || match &hc {
        None => not_applicable("n = 1"),
        Some((par, lb, ind)) => {
            let left = hom_space(ind, &data.st_module)?.len();
            let right = match hc_restrict(par, &data.st_module)? {
                Some(res) => hom_space(lb, &res)?.len(),
                None => 0,
            };
            Ok((left == right, format!("dim Hom = {left} and {right}")))
        }
    })?;
    r.run("gelfand_graev", || {
        let g = gelfand_graev_k(group, ell, seed)?;
        let hom_ok = g.hom_dim.is_none_or(|d| d == 1);
        let pass = g.idempotent && g.image_dim == 1 && hom_ok && g.d_sigma_simple && g.d_sigma_multiplicity == 1;
        let hom = g.hom_dim.map_or("skipped (above cap)".to_string(), |d| d.to_string());
        Ok((
            pass,
            format!(
                "d = {}, idempotent = {}, dim u_sigma St = {}, dim Hom(Gamma, St) = {hom}, dim D_sigma = {}, mult = {}",
                g.degree, g.idempotent, g.image_dim, g.d_sigma_dim, g.d_sigma_multiplicity
            ),
        ))
    })?;
    r.run("radical_factors_noncuspidal", || {
        let (rad, _) = radical_and_head(&data.st_module, seed)?;
        if rad.dim() == 0 {
            return Ok((true, "radical is zero".into()));
        }
        let series = composition_series(&data.st_module.submodule(&rad.basis)?, seed)?;
        let mut dims = Vec::new();
        let mut pass = true;
        for f in &series {
            pass &= !is_cuspidal(group, f)?;
            dims.push(f.dim());
        }
        Ok((pass, format!("radical factor dims {dims:?}")))
    })?;

    debug_assert_eq!(r.checks.iter().map(|c| c.name).collect::<Vec<_>>(), CHECK_NAMES);
    Ok(VerificationReport {
        group: group.label(),
        n,
        q,
        ell,
        seed,
        e,
        mu0: mu0.to_string(),
        checks: r.checks,
        factors: summary.into_iter().map(|(dim, mult)| FactorEntry { dim, mult }).collect(),
        timings: r.timings,
    })
}
