//! Homomorphism spaces between modules for the same generating set, and the
//! socle and head built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{row_space, sum_spaces, Matrix};

use super::meataxe::{composition_factors, fingerprint};
use super::module::{Echelonizer, GModule, Submodule};
use super::ModError;

enum Origin {
    Seed,
    Image { parent: usize, gen: usize },
}

/// A basis of `X` made of seed vectors and their images along words.
struct WordBasis {
    vectors: Vec<Vec<u32>>,
    origin: Vec<Origin>,
    root: Vec<usize>,
    seeds: usize,
}

fn word_basis(x: &GModule) -> WordBasis {
    let n = x.dim();
    let f = x.field();
    let mut ech = Echelonizer::new(f);
    let mut wb = WordBasis { vectors: vec![], origin: vec![], root: vec![], seeds: 0 };
    let mut next_seed = 0;
    while wb.vectors.len() < n {
        // first unit vector outside the current span
        let e = loop {
            let mut e = vec![0u32; n];
            e[next_seed] = 1;
            next_seed += 1;
            if ech.insert(e.clone()) {
                break e;
            }
        };
        let s = wb.seeds;
        wb.seeds += 1;
        let start = wb.vectors.len();
        wb.vectors.push(e);
        wb.origin.push(Origin::Seed);
        wb.root.push(s);
        let mut i = start;
        while i < wb.vectors.len() {
            for (g, a) in x.gens().iter().enumerate() {
                let w = a.apply(&wb.vectors[i]);
                if ech.insert(w.clone()) {
                    wb.vectors.push(w);
                    wb.origin.push(Origin::Image { parent: i, gen: g });
                    wb.root.push(s);
                }
            }
            i += 1;
        }
    }
    wb
}

/// Basis of `Hom_G(X, Y)`; each map is a `dim X × dim Y` matrix `Φ` with
/// `A^X_g Φ = Φ A^Y_g`.
pub fn hom_space(x: &GModule, y: &GModule) -> Result<Vec<Matrix>, ModError> {
    if x.gen_count() != y.gen_count() || x.field() != y.field() {
        return Err(ModError::GeneratorMismatch);
    }
    let f = x.field();
    let (dx, dy) = (x.dim(), y.dim());
    let wb = word_basis(x);
    let k = wb.seeds;
    // image of b_t is y_{root(t)} L_t
    let mut l: Vec<Matrix> = Vec::with_capacity(dx);
    for o in &wb.origin {
        let m = match *o {
            Origin::Seed => Matrix::identity(f, dy),
            Origin::Image { parent, gen } => l[parent].mul(&y.gens()[gen]),
        };
        l.push(m);
    }
    let bmat = Matrix::from_rows(f, dx, &wb.vectors);
    let binv = bmat.inverse().expect("word basis spans X");
    let defining: std::collections::HashSet<(usize, usize)> = wb
        .origin
        .iter()
        .filter_map(|o| match *o {
            Origin::Image { parent, gen } => Some((parent, gen)),
            Origin::Seed => None,
        })
        .collect();
    let unknowns = k * dy;
    let mut eqs = Echelonizer::new(f);
    for t in 0..dx {
        for (g, a) in x.gens().iter().enumerate() {
            if defining.contains(&(t, g)) {
                continue;
            }
            // b_t A_g = Σ_u c_u b_u must map to the same vector
            let c = binv.apply(&a.apply(&wb.vectors[t]));
            let mut blocks: Vec<Matrix> = vec![Matrix::zeros(f, dy, dy); k];
            blocks[wb.root[t]] = l[t].mul(&y.gens()[g]);
            for (u, &cu) in c.iter().enumerate() {
                if cu != 0 {
                    blocks[wb.root[u]].add_scaled(&l[u], f.neg(cu));
                }
            }
            for col in 0..dy {
                let mut row = vec![0u32; unknowns];
                for (s, blk) in blocks.iter().enumerate() {
                    for a_ in 0..dy {
                        row[s * dy + a_] = blk.get(a_, col);
                    }
                }
                eqs.insert(row);
                if eqs.len() == unknowns {
                    return Ok(Vec::new());
                }
            }
        }
    }
    let sys = eqs.into_matrix(unknowns);
    let sols = if sys.rows() == 0 { Matrix::identity(f, unknowns) } else { sys.kernel() };
    let mut out = Vec::with_capacity(sols.rows());
    for r in 0..sols.rows() {
        let yv = sols.row(r);
        let rows: Vec<Vec<u32>> = (0..dx)
            .map(|t| {
                let s = wb.root[t];
                l[t].apply(&yv[s * dy..(s + 1) * dy])
            })
            .collect();
        out.push(binv.mul(&Matrix::from_rows(f, dy, &rows)));
    }
    Ok(out)
}

pub fn is_homomorphism(x: &GModule, y: &GModule, phi: &Matrix) -> bool {
    x.gens().iter().zip(y.gens()).all(|(a, b)| a.mul(phi) == phi.mul(b))
}

/// Isomorphism test: a random combination of a hom-space basis is tried for
/// invertibility.
pub fn is_isomorphic(x: &GModule, y: &GModule, seed: u64) -> Result<bool, ModError> {
    if x.dim() != y.dim() {
        return Ok(false);
    }
    let homs = hom_space(x, y)?;
    if homs.is_empty() {
        return Ok(false);
    }
    let f = x.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut m = Matrix::zeros(f, x.dim(), y.dim());
        for h in &homs {
            m.add_scaled(h, rng.random_range(0..f.order()));
        }
        if m.rank() == x.dim() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sum of all simple submodules.
pub fn socle(m: &GModule, seed: u64) -> Result<Submodule, ModError> {
    let mut space = Matrix::zeros(m.field(), 0, m.dim());
    for factor in composition_factors(m, seed)? {
        for phi in hom_space(&factor.module, m)? {
            space = sum_spaces(&space, &phi);
        }
    }
    Ok(Submodule { basis: row_space(&space) })
}

/// Radical (as a submodule of `m`) and the head `m / rad(m)`.
pub fn radical_and_head(m: &GModule, seed: u64) -> Result<(Submodule, GModule), ModError> {
    let soc_dual = socle(&m.dual(), seed)?;
    let rad = if soc_dual.dim() == m.dim() {
        Matrix::zeros(m.field(), 0, m.dim())
    } else {
        row_space(&soc_dual.basis.kernel())
    };
    let head = if rad.rows() == 0 { m.clone() } else { m.quotient(&rad)? };
    Ok((Submodule { basis: rad }, head))
}

/// Cheap necessary condition for isomorphism.
pub fn same_fingerprint(a: &GModule, b: &GModule) -> bool {
    fingerprint(a) == fingerprint(b)
}
