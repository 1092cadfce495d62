//! Finite fields GF(p^k).
//!
//! Elements are encoded as `u32` values `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! i.e. base-`p` digits of the residue polynomial modulo a fixed monic
//! irreducible. Prime fields are plain residues `0..p`.

use std::fmt;
use std::sync::Arc;

use super::ExactError;

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
const TABLE_ORDER_LIMIT: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 1 << 8;

#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus, coefficients low to high (length `degree + 1`).
    modulus: Vec<u32>,
    primitive: u32,
    mul: MulRepr,
    add_table: Option<Vec<u32>>,
}

enum MulRepr {
    Prime,
    Tables { log: Vec<u32>, exp: Vec<u32> },
    Poly,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.degree == other.0.degree)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.degree)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p) used only while setting up the field.
fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn encode(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn prime_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible_over_prime(m: &[u32], p: u32) -> bool {
    let k = m.len() as u32 - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d);
        for code in 0..count {
            let mut f = digits(code, p, d);
            f.push(1);
            if prime_poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^k) with the lexicographically least monic irreducible
    /// modulus (lower coefficients read as a base-`p` integer).
    pub fn new(p: u64, k: u32) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        if k == 0 {
            return Err(ExactError::FieldTooLarge { p, k });
        }
        let order = p.checked_pow(k).filter(|&o| o <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(ExactError::FieldTooLarge { p, k });
        };
        let (p, order) = (p as u32, order as u32);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..order)
                .map(|code| {
                    let mut m = digits(code, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible_over_prime(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let field = Field(Arc::new(FieldData {
            p,
            degree: k,
            order,
            modulus,
            primitive: 0,
            mul: if k == 1 { MulRepr::Prime } else { MulRepr::Poly },
            add_table: None,
        }));
        let primitive = field.find_primitive();
        let mul = if k > 1 && order <= TABLE_ORDER_LIMIT {
            let n = (order - 1) as usize;
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; order as usize];
            let mut x = 1u32;
            for i in 0..n {
                exp[i] = x;
                exp[i + n] = x;
                log[x as usize] = i as u32;
                x = field.poly_mul(x, primitive);
            }
            Some(MulRepr::Tables { log, exp })
        } else {
            None
        };
        let add_table = (k > 1 && order <= ADD_TABLE_LIMIT).then(|| {
            let o = order as usize;
            let mut t = vec![0u32; o * o];
            for a in 0..order {
                for b in 0..order {
                    t[a as usize * o + b as usize] = field.digit_add(a, b);
                }
            }
            t
        });
        let mut data = Arc::try_unwrap(field.0).ok().expect("field not yet shared");
        data.primitive = primitive;
        if let Some(mul) = mul {
            data.mul = mul;
        }
        data.add_table = add_table;
        Ok(Field(Arc::new(data)))
    }

    pub fn prime(p: u64) -> Result<Self, ExactError> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Monic modulus, coefficients low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The least (by encoding) generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.0.primitive
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }

    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &self.0;
        if d.degree == 1 {
            let s = a + b;
            return if s >= d.p { s - d.p } else { s };
        }
        if d.p == 2 {
            return a ^ b;
        }
        match &d.add_table {
            Some(t) => t[a as usize * d.order as usize + b as usize],
            None => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let d = &self.0;
        if d.degree == 1 {
            return if a == 0 { 0 } else { d.p - a };
        }
        if d.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((d.p - a % d.p) % d.p) * place;
            a /= d.p;
            place *= d.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.mul {
            MulRepr::Prime => (a as u64 * b as u64 % self.0.p as u64) as u32,
            MulRepr::Tables { log, exp } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            MulRepr::Poly => self.poly_mul(a, b),
        }
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let d = &self.0;
        let (p, k) = (d.p, d.degree);
        let (da, db) = (digits(a, p, k), digits(b, p, k));
        let mut prod = vec![0u32; (2 * k - 1) as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        encode(&prime_poly_rem(&prod, &d.modulus, p), p)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        match &self.0.mul {
            MulRepr::Tables { log, exp } => {
                let n = self.0.order - 1;
                exp[((n - log[a as usize]) % n) as usize]
            }
            _ => self.pow(a, self.0.order as u64 - 2),
        }
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }

    /// Absolute trace to the prime subfield, returned as an integer in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.degree {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc < self.0.p);
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> u64 {
        assert!(a != 0);
        let n = self.0.order as u64 - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        ord
    }

    fn find_primitive(&self) -> u32 {
        let n = self.0.order as u64 - 1;
        if n == 1 {
            return 1;
        }
        let factors = prime_factors(n);
        (1..self.0.order)
            .find(|&g| factors.iter().all(|&r| self.pow(g, n / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    /// A fixed primitive `m`-th root of unity, if `m` divides `|F^x|`.
    pub fn root_of_unity(&self, m: u64) -> Option<u32> {
        let n = self.0.order as u64 - 1;
        (m > 0 && n.is_multiple_of(m)).then(|| self.pow(self.0.primitive, n / m))
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], src: &[u32], c: u32) {
        if c == 0 {
            return;
        }
        let d = &self.0;
        if d.degree == 1 {
            let p = d.p as u64;
            let c = c as u64;
            for (x, &y) in dst.iter_mut().zip(src) {
                if y != 0 {
                    *x = ((*x as u64 + c * y as u64) % p) as u32;
                }
            }
        } else {
            for (x, &y) in dst.iter_mut().zip(src) {
                if y != 0 {
                    *x = self.add(*x, self.mul(c, y));
                }
            }
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [u32], c: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Embeds an element of the prime field `GF(p)` (given as `0..p`).
    pub fn embed_prime(&self, v: u32) -> u32 {
        debug_assert!(v < self.0.p);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_and_gf4() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.order(), 4);
    }

    #[test]
    fn gf7_products() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.from_int(-1), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Field::new(6, 1), Err(ExactError::NotPrime(6))));
        assert!(matches!(Field::new(2, 21), Err(ExactError::FieldTooLarge { .. })));
    }

    #[test]
    fn gf9_uses_least_modulus() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // x has order 4 here, so the primitive element is something else
        assert_eq!(f.element_order(3), 4);
        assert_eq!(f.element_order(f.primitive_element()), 8);
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, k) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1), (2, 4), (13, 1)] {
            let f = Field::new(p, k).unwrap();
            let q = f.order() as u64;
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.pow(a, q), a, "x^q = x in {f:?}");
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
            assert_eq!(f.element_order(f.primitive_element()), q - 1);
        }
    }

    #[test]
    fn polynomial_path_matches_tables() {
        let f = Field::new(2, 17).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.element_order(g), (1 << 17) - 1);
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    #[test]
    fn trace_lands_in_prime_field() {
        let f = Field::new(2, 2).unwrap();
        let traces: Vec<u32> = f.elements().map(|a| f.trace(a)).collect();
        assert_eq!(traces, vec![0, 0, 1, 1]);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
