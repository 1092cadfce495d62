//! Univariate polynomials over a [`Field`], enough to split characteristic
//! polynomials into irreducible factors.

use num_bigint::BigUint;

use super::Field;

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
pub type Poly = Vec<u32>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn add(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = f.add(out[i], c);
    }
    trim(out)
}

pub fn sub(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let nb: Vec<u32> = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            f.axpy(&mut out[i..i + b.len()], b, x);
        }
    }
    trim(out)
}

/// Euclidean division; panics if `b` is zero.
pub fn divrem(f: &Field, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = f.inv(b[db]);
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        q[dr - db] = c;
        f.axpy(&mut r[dr - db..=dr], &b[..=db], f.neg(c));
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Field, a: &[u32]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]);
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &Field, a: &[u32], b: &[u32]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn mulmod(f: &Field, a: &[u32], b: &[u32], m: &[u32]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &Field, base: &[u32], e: &BigUint, m: &[u32]) -> Poly {
    let mut acc: Poly = rem(f, &[1], m);
    let b = rem(f, base, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(f, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(f, &acc, &b, m);
        }
    }
    acc
}

pub fn eval(f: &Field, p: &[u32], x: u32) -> u32 {
    p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn is_one(p: &[u32]) -> bool {
    p.len() == 1 && p[0] == 1
}

/// Distinct monic irreducible factors of `a`, sorted by degree and then
/// coefficients. Deterministic.
pub fn irreducible_factors(f: &Field, a: &[u32]) -> Vec<Poly> {
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    if degree(&rest).unwrap_or(0) == 0 {
        return out;
    }
    let q = BigUint::from(f.order());
    let x: Poly = vec![0, 1];
    let mut xq = x.clone(); // x^(q^d) mod rest
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 1 {
        if 2 * d > degree(&rest).unwrap() {
            // every factor left has degree > deg(rest)/2, so rest is irreducible
            out.push(monic(f, &rest));
            break;
        }
        xq = powmod(f, &xq, &q, &rest);
        let g = gcd(f, &rest, &sub(f, &xq, &x));
        if !is_one(&g) {
            for h in equal_degree_split(f, &g, d) {
                while rem(f, &rest, &h).is_empty() {
                    rest = divrem(f, &rest, &h).0;
                }
                out.push(h);
            }
            if degree(&rest).unwrap_or(0) >= 1 {
                xq = rem(f, &xq, &rest);
            }
        }
        d += 1;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree_split(f: &Field, g: &[u32], d: usize) -> Vec<Poly> {
    let n = degree(g).unwrap();
    if n == d {
        return vec![monic(f, g)];
    }
    let q = f.order() as u64;
    let mut counter: u64 = 1;
    loop {
        // deterministic candidate polynomials of degree < n
        let mut cand = Vec::new();
        let mut c = counter;
        while c > 0 {
            cand.push((c % q) as u32);
            c /= q;
        }
        counter += 1;
        let cand = trim(cand);
        if degree(&cand).unwrap_or(0) == 0 {
            continue;
        }
        let probe = if f.characteristic() == 2 {
            // trace map: a + a^2 + ... + a^(2^(m d - 1)) where q = 2^m
            let steps = f.degree() as usize * d;
            let mut t = rem(f, &cand, g);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = mulmod(f, &t, &t, g);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            sub(f, &powmod(f, &cand, &e, g), &[1])
        };
        let h = gcd(f, g, &probe);
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let (other, _) = divrem(f, g, &h);
            let mut out = equal_degree_split(f, &h, d);
            out.extend(equal_degree_split(f, &monic(f, &other), d));
            return out;
        }
    }
}
