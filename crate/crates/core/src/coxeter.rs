//! Finite Weyl groups realized as permutation groups.
//!
//! Elements are stored by their permutation; lengths come from the
//! breadth-first enumeration over the simple reflections, which also fixes
//! one reduced word per element (the first one found).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

/// Largest group order the enumerator accepts.
pub const MAX_WEYL_ORDER: u64 = 1_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("unsupported Coxeter type {0}")]
    Unsupported(String),
    #[error("group order {0} exceeds the enumeration cap {MAX_WEYL_ORDER}")]
    TooLarge(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoxeterType {
    /// `A_n`, the symmetric group on `n + 1` points. `A_0` is trivial.
    A(usize),
    B(usize),
    D(usize),
    /// Dihedral group of order `2m`.
    I2(usize),
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::I2(_) => 2,
        }
    }

    /// Group order from the closed product formula.
    pub fn expected_order(&self) -> u64 {
        let fact = |n: usize| (1..=n as u64).fold(1u64, |a, b| a.saturating_mul(b));
        match *self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => fact(n).saturating_mul(1u64 << n.min(63)),
            CoxeterType::D(n) => fact(n).saturating_mul(1u64 << (n.max(1) - 1).min(63)),
            CoxeterType::I2(m) => 2 * m as u64,
        }
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        let ok = match *self {
            CoxeterType::A(_) => true,
            CoxeterType::B(n) => n >= 2,
            CoxeterType::D(n) => n >= 2,
            CoxeterType::I2(m) => m >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(CoxeterError::Unsupported(self.to_string()))
        }
    }

    /// Simple reflections as permutations of the underlying point set.
    fn generators(&self) -> Vec<Vec<u16>> {
        let swap = |size: usize, pairs: &[(usize, usize)]| {
            let mut p: Vec<u16> = (0..size as u16).collect();
            for &(a, b) in pairs {
                p.swap(a, b);
            }
            p
        };
        match *self {
            CoxeterType::A(n) => (0..n).map(|i| swap(n + 1, &[(i, i + 1)])).collect(),
            CoxeterType::B(n) | CoxeterType::D(n) => {
                // points i and i + n stand for +e_i and -e_i
                let size = 2 * n;
                let first = if matches!(self, CoxeterType::B(_)) {
                    swap(size, &[(0, n)])
                } else {
                    swap(size, &[(0, n + 1), (1, n)])
                };
                let mut gens = vec![first];
                gens.extend((1..n).map(|i| swap(size, &[(i - 1, i), (i - 1 + n, i + n)])));
                gens
            }
            CoxeterType::I2(m) => {
                // point k is the root at angle k*pi/m
                let size = 2 * m;
                let refl = |a: usize| -> Vec<u16> {
                    (0..size).map(|k| ((m + 2 * a + size - k) % size) as u16).collect()
                };
                vec![refl(0), refl(m - 1)]
            }
        }
    }
}

/// A Weyl group element: permutation, a reduced word and its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<u16>,
    pub word: Vec<usize>,
    pub length: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParabolicSubset {
    pub subset: Vec<usize>,
    /// Index of the longest element of `W_J`.
    pub longest: usize,
    /// For type `A_{n-1}`, the partition of `n` attached to `J`.
    pub partition: Option<Vec<usize>>,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoxeterSummary {
    #[serde(rename = "type")]
    pub type_tag: String,
    pub rank: usize,
    pub order: usize,
    pub length_distribution: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    ctype: CoxeterType,
    generators: Vec<Vec<u16>>,
    elements: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
    lengths: Vec<usize>,
    words: Vec<Vec<usize>>,
    /// `right[s][w]` is the index of `w s`.
    right: Vec<Vec<usize>>,
    /// `left[s][w]` is the index of `s w`.
    left: Vec<Vec<usize>>,
    longest: usize,
    coxeter_matrix: Vec<Vec<usize>>,
}

fn compose(x: &[u16], y: &[u16]) -> Vec<u16> {
    // (x y)(i) = x(y(i))
    y.iter().map(|&i| x[i as usize]).collect()
}

fn invert(x: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; x.len()];
    for (i, &j) in x.iter().enumerate() {
        inv[j as usize] = i as u16;
    }
    inv
}

impl CoxeterGroup {
    pub fn build(ctype: CoxeterType) -> Result<Self, CoxeterError> {
        ctype.validate()?;
        let expected = ctype.expected_order();
        if expected > MAX_WEYL_ORDER {
            return Err(CoxeterError::TooLarge(expected));
        }
        let generators = ctype.generators();
        let npts = match ctype {
            CoxeterType::A(n) => n + 1,
            CoxeterType::B(n) | CoxeterType::D(n) => 2 * n,
            CoxeterType::I2(m) => 2 * m,
        };
        let id: Vec<u16> = (0..npts as u16).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut lengths = vec![0];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let ws = compose(&elements[w], g);
                if !index.contains_key(&ws) {
                    let k = elements.len();
                    index.insert(ws.clone(), k);
                    elements.push(ws);
                    lengths.push(lengths[w] + 1);
                    let mut word = words[w].clone();
                    word.push(s);
                    words.push(word);
                    queue.push_back(k);
                }
            }
        }
        let right = generators
            .iter()
            .map(|g| elements.iter().map(|w| index[&compose(w, g)]).collect())
            .collect();
        let left = generators
            .iter()
            .map(|g| elements.iter().map(|w| index[&compose(g, w)]).collect())
            .collect();
        let max_len = *lengths.iter().max().unwrap();
        let longest = lengths.iter().position(|&l| l == max_len).unwrap();
        let r = generators.len();
        let mut coxeter_matrix = vec![vec![1; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    let st = compose(&generators[i], &generators[j]);
                    let mut acc = st.clone();
                    let mut m = 1;
                    while acc != elements[0] {
                        acc = compose(&acc, &st);
                        m += 1;
                    }
                    coxeter_matrix[i][j] = m;
                }
            }
        }
        Ok(Self {
            ctype,
            generators,
            elements,
            index,
            lengths,
            words,
            right,
            left,
            longest,
            coxeter_matrix,
        })
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn coxeter_matrix(&self) -> &[Vec<usize>] {
        &self.coxeter_matrix
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn perm(&self, w: usize) -> &[u16] {
        &self.elements[w]
    }

    pub fn generator(&self, s: usize) -> usize {
        self.right[s][0]
    }

    pub fn index_of(&self, perm: &[u16]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn element(&self, w: usize) -> WeylElement {
        WeylElement {
            perm: self.elements[w].clone(),
            word: self.words[w].clone(),
            length: self.lengths[w],
        }
    }

    /// Index of `x y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&compose(&self.elements[x], &self.elements[y])]
    }

    pub fn multiply(&self, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let p = compose(&x.perm, &y.perm);
        self.element(self.index[&p])
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.index[&invert(&self.elements[w])]
    }

    /// Index of `s w`.
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w]
    }

    /// Index of `w s`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[s][w]
    }

    /// Element from a word in the simple reflections.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &s| self.right[s][w])
    }

    /// A reduced word recovered by greedy left descents.
    pub fn reduced_word_by_descent(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w;
        while self.lengths[cur] > 0 {
            let s = (0..self.rank())
                .find(|&s| self.lengths[self.left[s][cur]] < self.lengths[cur])
                .expect("nontrivial element has a left descent");
            word.push(s);
            cur = self.left[s][cur];
        }
        word
    }

    /// Number of elements of each length (coefficients of the Poincaré polynomial).
    pub fn length_distribution(&self) -> Vec<usize> {
        let max = self.lengths[self.longest];
        let mut dist = vec![0; max + 1];
        for &l in &self.lengths {
            dist[l] += 1;
        }
        dist
    }

    pub fn summary(&self) -> CoxeterSummary {
        CoxeterSummary {
            type_tag: self.ctype.to_string(),
            rank: self.rank(),
            order: self.order(),
            length_distribution: self.length_distribution(),
        }
    }

    /// Elements of the standard parabolic subgroup generated by `subset`.
    pub fn parabolic_elements(&self, subset: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let w = out[i];
            for &s in subset {
                let ws = self.right[s][w];
                if !seen[ws] {
                    seen[ws] = true;
                    out.push(ws);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// All reflections lying in `W_J`, sorted.
    pub fn parabolic_reflections(&self, subset: &[usize]) -> Vec<usize> {
        let elems = self.parabolic_elements(subset);
        let mut refl: Vec<usize> = elems
            .iter()
            .flat_map(|&w| {
                let winv = self.inverse(w);
                subset.iter().map(move |&s| (w, s, winv))
            })
            .map(|(w, s, winv)| self.mul(self.right[s][w], winv))
            .collect();
        refl.sort_unstable();
        refl.dedup();
        refl
    }

    /// One representative per W-conjugacy class of subsets `J ⊆ S`, where
    /// `J ~ J'` when some `w` conjugates the reflections of `W_J` onto those
    /// of `W_J'`.
    pub fn parabolic_classes(&self) -> Vec<ParabolicSubset> {
        let r = self.rank();
        let subsets: Vec<Vec<usize>> = (0..1u32 << r)
            .map(|mask| (0..r).filter(|&i| mask >> i & 1 == 1).collect())
            .collect();
        let refl: Vec<Vec<usize>> = subsets.iter().map(|j| self.parabolic_reflections(j)).collect();
        let lookup: HashMap<&Vec<usize>, usize> =
            refl.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let inverses: Vec<usize> = (0..self.order()).map(|w| self.inverse(w)).collect();
        let mut class_of = vec![usize::MAX; subsets.len()];
        let mut reps = Vec::new();
        for j in 0..subsets.len() {
            if class_of[j] != usize::MAX {
                continue;
            }
            let cid = reps.len();
            reps.push(j);
            class_of[j] = cid;
            for (w, &w_inv) in inverses.iter().enumerate() {
                let mut conj: Vec<usize> = refl[j].iter().map(|&t| self.mul(self.mul(w, t), w_inv)).collect();
                conj.sort_unstable();
                if let Some(&k) = lookup.get(&conj) {
                    class_of[k] = cid;
                }
            }
        }
        let mut out: Vec<ParabolicSubset> = reps
            .into_iter()
            .map(|j| {
                let subset = subsets[j].clone();
                let elems = self.parabolic_elements(&subset);
                let longest = *elems.iter().max_by_key(|&&w| self.lengths[w]).unwrap();
                let partition = match self.ctype {
                    CoxeterType::A(n) => Some(type_a_partition(n + 1, &subset)),
                    _ => None,
                };
                let label = match &partition {
                    Some(p) => format!("{p:?}").replace('[', "(").replace(']', ")").replace(' ', ""),
                    None => format!("J={subset:?}").replace(' ', ""),
                };
                ParabolicSubset { subset, longest, partition, label }
            })
            .collect();
        if matches!(self.ctype, CoxeterType::A(_)) {
            out.sort_by(|a, b| b.partition.cmp(&a.partition));
        }
        out
    }
}

/// Composition of `n` cut out by `J` (runs of consecutive simple
/// reflections), sorted into a partition.
pub fn type_a_partition(n: usize, subset: &[usize]) -> Vec<usize> {
    let mut parts = type_a_composition(n, subset);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn type_a_composition(n: usize, subset: &[usize]) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut cur = 1;
    for i in 0..n.saturating_sub(1) {
        if subset.contains(&i) {
            cur += 1;
        } else {
            parts.push(cur);
            cur = 1;
        }
    }
    if n > 0 {
        parts.push(cur);
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inversions(p: &[u16]) -> usize {
        (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
    }

    #[test]
    fn small_orders() {
        let a2 = CoxeterGroup::build(CoxeterType::A(2)).unwrap();
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.length(a2.longest()), 3);
        let i28 = CoxeterGroup::build(CoxeterType::I2(8)).unwrap();
        assert_eq!(i28.order(), 16);
        assert_eq!(i28.length(i28.longest()), 8);
        let b2 = CoxeterGroup::build(CoxeterType::B(2)).unwrap();
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.coxeter_matrix()[0][1], 4);
        let a0 = CoxeterGroup::build(CoxeterType::A(0)).unwrap();
        assert_eq!(a0.order(), 1);
    }

    #[test]
    fn orders_match_product_formula() {
        for t in [
            CoxeterType::A(1),
            CoxeterType::A(3),
            CoxeterType::A(5),
            CoxeterType::B(3),
            CoxeterType::B(4),
            CoxeterType::D(4),
            CoxeterType::D(3),
            CoxeterType::I2(5),
            CoxeterType::I2(6),
        ] {
            let w = CoxeterGroup::build(t).unwrap();
            assert_eq!(w.order() as u64, t.expected_order(), "{t}");
            // Poincaré polynomial at t = 1
            assert_eq!(w.length_distribution().iter().sum::<usize>(), w.order());
            let w0 = w.longest();
            assert_eq!(w.mul(w0, w0), 0);
            let max = w.length(w0);
            assert_eq!((0..w.order()).filter(|&x| w.length(x) == max).count(), 1);
        }
    }

    #[test]
    fn rejects_bad_types() {
        assert!(matches!(CoxeterGroup::build(CoxeterType::I2(1)), Err(CoxeterError::Unsupported(_))));
        assert!(matches!(CoxeterGroup::build(CoxeterType::A(12)), Err(CoxeterError::TooLarge(_))));
    }

    #[test]
    fn involutions_and_longest() {
        let w = CoxeterGroup::build(CoxeterType::A(2)).unwrap();
        for s in 0..w.rank() {
            let g = w.generator(s);
            assert_eq!(w.mul(g, g), w.identity());
        }
        let w0 = w.element(w.longest());
        assert_eq!(w.multiply(&w0, &w0).length, 0);
    }

    #[test]
    fn s3_products_match_permutation_composition() {
        let w = CoxeterGroup::build(CoxeterType::A(2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (x, y) = (rng.random_range(0..6), rng.random_range(0..6));
            let (px, py) = (w.perm(x), w.perm(y));
            let direct: Vec<u16> = (0..3).map(|i| px[py[i] as usize]).collect();
            assert_eq!(w.perm(w.mul(x, y)), &direct[..]);
        }
    }

    #[test]
    fn type_a_length_is_inversion_count() {
        let w = CoxeterGroup::build(CoxeterType::A(4)).unwrap();
        for x in 0..w.order() {
            assert_eq!(w.length(x), inversions(w.perm(x)));
            assert_eq!(w.word(x).len(), w.length(x));
            assert_eq!(w.from_word(w.word(x)), x);
            let d = w.reduced_word_by_descent(x);
            assert_eq!(d.len(), w.length(x));
            assert_eq!(w.from_word(&d), x);
        }
    }

    #[test]
    fn type_b_length_matches_signed_inversions() {
        // For signed permutations, l(w) = inv(w) + sum over negative positions
        // i of (i+1), counting pairs with the usual B_n inversion rule.
        let n = 3;
        let w = CoxeterGroup::build(CoxeterType::B(n)).unwrap();
        for x in 0..w.order() {
            let p = w.perm(x);
            let signed: Vec<i32> = (0..n)
                .map(|i| {
                    let img = p[i] as usize;
                    if img < n { img as i32 + 1 } else { -((img - n) as i32 + 1) }
                })
                .collect();
            let mut l = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if signed[i] > signed[j] {
                        l += 1;
                    }
                    if -signed[i] > signed[j] {
                        l += 1;
                    }
                }
                if signed[i] < 0 {
                    l += 1;
                }
            }
            assert_eq!(w.length(x), l);
        }
    }

    #[test]
    fn longest_element_permutes_generators() {
        for t in [CoxeterType::A(1), CoxeterType::A(3), CoxeterType::B(3), CoxeterType::I2(8), CoxeterType::D(4)] {
            let w = CoxeterGroup::build(t).unwrap();
            let w0 = w.longest();
            let mut conj: Vec<usize> =
                (0..w.rank()).map(|s| w.mul(w.mul(w0, w.generator(s)), w0)).collect();
            conj.sort_unstable();
            let mut gens: Vec<usize> = (0..w.rank()).map(|s| w.generator(s)).collect();
            gens.sort_unstable();
            assert_eq!(conj, gens, "{t}");
        }
    }

    #[test]
    fn parabolic_classes_type_a() {
        let a2 = CoxeterGroup::build(CoxeterType::A(2)).unwrap();
        let labels: Vec<_> = a2.parabolic_classes().into_iter().map(|c| c.partition.unwrap()).collect();
        assert_eq!(labels, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        let a3 = CoxeterGroup::build(CoxeterType::A(3)).unwrap();
        assert_eq!(a3.parabolic_classes().len(), 5);
    }

    #[test]
    fn parabolic_classes_b2_by_brute_force() {
        let b2 = CoxeterGroup::build(CoxeterType::B(2)).unwrap();
        let classes = b2.parabolic_classes();
        assert_eq!(classes.len(), 4);
        // {s1} and {s2} are not conjugate: no w maps s1 to s2
        let (s1, s2) = (b2.generator(0), b2.generator(1));
        assert!((0..8).all(|w| b2.mul(b2.mul(w, s1), b2.inverse(w)) != s2));
    }

    proptest::proptest! {
        #[test]
        fn length_subadditive_and_parity(x in 0usize..120, y in 0usize..120) {
            let w = CoxeterGroup::build(CoxeterType::A(4)).unwrap();
            let xy = w.mul(x, y);
            proptest::prop_assert!(w.length(xy) <= w.length(x) + w.length(y));
            proptest::prop_assert_eq!(w.length(xy) % 2, (w.length(x) + w.length(y)) % 2);
            let z = (x * 7 + y) % 120;
            proptest::prop_assert_eq!(w.mul(w.mul(x, y), z), w.mul(x, w.mul(y, z)));
        }
    }
}
