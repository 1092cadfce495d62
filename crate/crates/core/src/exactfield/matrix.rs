use std::fmt;

use super::{ExactError, Field};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        debug_assert!(data.iter().all(|&x| x < field.order()));
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Permutation matrix for the row action `e_i -> e_{perm[i]}`.
    pub fn permutation(field: &Field, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a != 0 {
                    f.axpy(dst, other.row(k), a);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                self.field.axpy(&mut out, self.row(k), a);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, &other.data, 1);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        let m1 = self.field.neg(1);
        self.field.axpy(&mut out.data, &other.data, m1);
        out
    }

    pub fn scaled(&self, c: u32) -> Self {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &Matrix, c: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, &other.data, c);
    }

    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Self::from_vec(&self.field, idx.len(), self.cols, data)
    }

    /// Reduced row echelon form; pivots are chosen leftmost column first,
    /// topmost available row within the column.
    pub fn echelonize(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            f.scale(m.row_mut(r), inv);
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let x = m.get(i, c);
                    if x != 0 {
                        f.axpy(m.row_mut(i), &pivot_row, f.neg(x));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, rank: r, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelonize().rank
    }

    /// Basis (as rows) of `{x : A x^T = 0}`.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let ech = self.echelonize();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            k.set(i, fc, 1);
            for (pr, &pc) in ech.pivots.iter().enumerate() {
                let v = ech.rref.get(pr, fc);
                if v != 0 {
                    k.set(i, pc, f.neg(v));
                }
            }
        }
        k
    }

    /// Basis (as rows) of `{v : v A = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug.set(r, n + r, 1);
        }
        let ech = aug.echelonize();
        if ech.pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) || ech.rank < n {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            inv.row_mut(r).copy_from_slice(&ech.rref.row(r)[n..]);
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(tI - A)`, coefficients low to high.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap_rows(i, j + 1);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
            let pinv = f.inv(h.get(j + 1, j));
            for r in j + 2..n {
                let u = f.mul(h.get(r, j), pinv);
                if u == 0 {
                    continue;
                }
                let src = h.row(j + 1).to_vec();
                f.axpy(h.row_mut(r), &src, f.neg(u));
                for row in 0..n {
                    let v = f.add(h.get(row, j + 1), f.mul(u, h.get(row, r)));
                    h.set(row, j + 1, v);
                }
            }
        }
        // p_m(t) = (t - h_mm) p_{m-1} - sum_i h_{i,m} prod_{j=i+1..m} h_{j,j-1} p_{i-1}
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u32; m + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h.get(m, m), c));
            }
            let mut prod = 1u32;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                if prod == 0 {
                    break;
                }
                let coef = f.mul(h.get(i, m), prod);
                if coef != 0 {
                    for (d, &c) in polys[i].iter().enumerate() {
                        next[d] = f.sub(next[d], f.mul(coef, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Evaluates a polynomial (low to high) at this square matrix.
    pub fn eval_poly(&self, poly: &[u32]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in poly.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Writes the text format: `p k rows cols` then row-major entries.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {} {}\n",
            self.field.characteristic(),
            self.field.degree(),
            self.rows,
            self.cols
        );
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix, ExactError> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<u64>().map_err(|_| ExactError::Parse(format!("bad token {t:?}")))
        });
        let mut next = |what: &str| {
            tokens.next().ok_or_else(|| ExactError::Parse(format!("missing {what}")))?
        };
        let p = next("p")?;
        let k = next("k")? as u32;
        let rows = next("rows")? as usize;
        let cols = next("cols")? as usize;
        let field = Field::new(p, k)?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let v = next("entry")?;
            if v >= field.order() as u64 {
                return Err(ExactError::Parse(format!("entry {v} out of range for {field:?}")));
            }
            data.push(v as u32);
        }
        if tokens.next().is_some() {
            return Err(ExactError::Parse("trailing data".into()));
        }
        Ok(Matrix::from_vec(&field, rows, cols, data))
    }
}

/// Row space of `rows` in reduced echelon form (zero rows dropped).
pub fn row_space(m: &Matrix) -> Matrix {
    let ech = m.echelonize();
    let idx: Vec<usize> = (0..ech.rank).collect();
    ech.rref.select_rows(&idx)
}

/// Intersection of two row spaces, returned in reduced echelon form.
pub fn intersect(u: &Matrix, v: &Matrix) -> Result<Matrix, ExactError> {
    if u.cols() != v.cols() {
        return Err(ExactError::DimensionMismatch { left: u.cols(), right: v.cols() });
    }
    let f = u.field();
    let n = u.cols();
    // Zassenhaus: rows (u, u) and (v, 0); rows with zero left half span U ∩ V.
    let mut z = Matrix::zeros(f, u.rows() + v.rows(), 2 * n);
    for r in 0..u.rows() {
        z.row_mut(r)[..n].copy_from_slice(u.row(r));
        z.row_mut(r)[n..].copy_from_slice(u.row(r));
    }
    for r in 0..v.rows() {
        z.row_mut(u.rows() + r)[..n].copy_from_slice(v.row(r));
    }
    let ech = z.echelonize();
    let rows: Vec<Vec<u32>> = (0..ech.rank)
        .filter(|&r| ech.pivots[r] >= n)
        .map(|r| ech.rref.row(r)[n..].to_vec())
        .collect();
    Ok(row_space(&Matrix::from_rows(f, n, &rows)))
}

/// Sum of two row spaces, in reduced echelon form.
pub fn sum_spaces(u: &Matrix, v: &Matrix) -> Matrix {
    row_space(&u.vstack(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..r * c).map(|_| rng.random_range(0..f.order())).collect();
        Matrix::from_vec(f, r, c, data)
    }

    // Independent rank oracle: elimination choosing the bottom-most pivot
    // and processing columns right to left.
    fn rank_reversed(m: &Matrix) -> usize {
        let f = m.field();
        let mut rows = m.row_vecs();
        let mut rank = 0;
        for c in (0..m.cols()).rev() {
            let Some(pos) = (rank..rows.len()).rev().find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, pos);
            let inv = f.inv(rows[rank][c]);
            let pivot: Vec<u32> = rows[rank].iter().map(|&x| f.mul(x, inv)).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                let x = row[c];
                if x != 0 {
                    for (a, &b) in row.iter_mut().zip(&pivot) {
                        *a = f.sub(*a, f.mul(x, b));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn identity_and_zero_echelon() {
        let f = Field::prime(5).unwrap();
        let id = Matrix::identity(&f, 4);
        let e = id.echelonize();
        assert_eq!(e.rref, id);
        assert_eq!(e.rank, 4);
        let z = Matrix::zeros(&f, 3, 4);
        let e = z.echelonize();
        assert_eq!(e.rref, z);
        assert_eq!(e.rank, 0);
        assert_eq!(id.kernel().rows(), 0);
    }

    #[test]
    fn rank_matches_reordered_elimination() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut m = random(&f, 5, 5, &mut rng);
            // force some rank deficiency now and then
            if rng.random_bool(0.5) {
                let r0 = m.row(0).to_vec();
                let r1 = m.row(1).to_vec();
                let mut combo = r0.clone();
                f.axpy(&mut combo, &r1, 2);
                m.row_mut(4).copy_from_slice(&combo);
            }
            assert_eq!(m.rank(), rank_reversed(&m));
        }
    }

    #[test]
    fn echelon_is_idempotent() {
        let f = Field::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random(&f, 6, 8, &mut rng);
        let e1 = m.echelonize();
        let e2 = e1.rref.echelonize();
        assert_eq!(e1.rref, e2.rref);
    }

    #[test]
    fn charpoly_of_zero_and_cayley_hamilton() {
        let f = Field::prime(7).unwrap();
        assert_eq!(Matrix::zeros(&f, 2, 2).charpoly(), vec![0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, k) in [(7, 1), (2, 1), (3, 2), (2, 3)] {
            let f = Field::new(p, k).unwrap();
            for n in 1..9 {
                let a = random(&f, n, n, &mut rng);
                let cp = a.charpoly();
                assert_eq!(cp.len(), n + 1);
                assert!(a.eval_poly(&cp).is_zero(), "Cayley-Hamilton over {f:?}");
            }
        }
    }

    #[test]
    fn intersection_is_idempotent() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = row_space(&random(&f, 3, 6, &mut rng));
        assert_eq!(intersect(&u, &u).unwrap(), u);
        let w = row_space(&random(&f, 4, 6, &mut rng));
        let i = intersect(&u, &w).unwrap();
        assert_eq!(i.rows() + sum_spaces(&u, &w).rows(), u.rows() + w.rows());
    }

    #[test]
    fn intersect_dimension_mismatch() {
        let f = Field::prime(3).unwrap();
        let a = Matrix::zeros(&f, 1, 2);
        let b = Matrix::zeros(&f, 1, 3);
        assert!(matches!(intersect(&a, &b), Err(ExactError::DimensionMismatch { .. })));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random(&f, 4, 4, &mut rng);
            match a.inverse() {
                Some(inv) => assert!(a.mul(&inv).is_identity()),
                None => assert!(a.rank() < 4),
            }
        }
    }

    #[test]
    fn text_format() {
        let f = Field::new(2, 2).unwrap();
        let m = Matrix::from_vec(&f, 2, 3, vec![0, 1, 2, 3, 2, 1]);
        let text = m.to_text();
        assert_eq!(text, "2 2 2 3\n0 1 2\n3 2 1\n");
        assert_eq!(Matrix::from_text(&text).unwrap(), m);
        assert!(Matrix::from_text("2 1 1 1 5").is_err());
        assert!(Matrix::from_text("2 1 1 2 1").is_err());
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(seed in 0u64..500, rows in 1usize..7, cols in 1usize..7) {
            let f = Field::prime(5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random(&f, rows, cols, &mut rng);
            let k = a.kernel();
            proptest::prop_assert_eq!(a.rank() + k.rows(), cols);
            proptest::prop_assert!(a.mul(&k.transpose()).is_zero());
        }
    }
}
