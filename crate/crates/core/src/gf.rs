//! Finite fields GF(p^k).
//!
//! Elements are stored as packed coefficient vectors: the code of
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! Matrices keep raw codes and call back into the field for arithmetic, so the
//! field is the only place that knows about the modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Fields up to this order get precomputed addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

#[derive(Clone)]
pub struct GaloisField(Arc<FieldInner>);

struct FieldInner {
    p: u32,
    k: u32,
    order: u32,
    /// Monic modulus, ascending degree, length k + 1.
    modulus: Vec<u32>,
    add_table: Option<Vec<u16>>,
    mul_table: Option<Vec<u16>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime factor of `n`, or `None` for `n <= 1`.
pub fn smallest_prime_factor(n: u128) -> Option<u128> {
    if n <= 1 {
        return None;
    }
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

impl GaloisField {
    /// Builds GF(p^k) with the lexicographically least monic irreducible
    /// modulus (coefficients compared from the constant term upwards).
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = (p as u128).checked_pow(k);
        if order.map_or(true, |o| o > MAX_FIELD_ORDER as u128) {
            return Err(Error::FieldTooLarge { p, k });
        }
        let p32 = p as u32;
        let order = order.unwrap() as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p32, k as usize)
        };
        let mut inner = FieldInner {
            p: p32,
            k,
            order,
            modulus,
            add_table: None,
            mul_table: None,
        };
        if k > 1 && order <= TABLE_LIMIT {
            let n = order as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..order {
                for b in 0..order {
                    add[a as usize * n + b as usize] = inner.add_slow(a, b) as u16;
                    mul[a as usize * n + b as usize] = inner.mul_slow(a, b) as u16;
                }
            }
            inner.add_table = Some(add);
            inner.mul_table = Some(mul);
        }
        Ok(GaloisField(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Monic modulus coefficients, ascending degree.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.k == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if let Some(t) = &f.add_table {
            t[(a * f.order + b) as usize] as u32
        } else {
            f.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if f.k == 1 {
            if a == 0 {
                0
            } else {
                f.p - a
            }
        } else {
            let mut out = 0;
            let mut scale = 1;
            let mut rest = a;
            for _ in 0..f.k {
                let c = rest % f.p;
                rest /= f.p;
                out += ((f.p - c) % f.p) * scale;
                scale *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.k == 1 {
            ((a as u64 * b as u64) % f.p as u64) as u32
        } else if let Some(t) = &f.mul_table {
            t[(a * f.order + b) as usize] as u32
        } else {
            f.mul_slow(a, b)
        }
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

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.order as u64 - 2))
    }

    /// Image of an integer under the prime-field embedding.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Packs an ascending coefficient vector; shorter vectors are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        let f = &*self.0;
        if coeffs.len() > f.k as usize {
            return Err(Error::Parse(format!(
                "coefficient vector of length {} for a degree-{} field",
                coeffs.len(),
                f.k
            )));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= f.p {
                return Err(Error::Parse(format!("coefficient {c} not reduced mod {}", f.p)));
            }
            code = code * f.p + c;
        }
        Ok(code)
    }

    pub fn coeffs(&self, code: u32) -> Vec<u32> {
        self.0.digits(code)
    }

    pub fn elem(&self, code: u32) -> FieldElem {
        assert!(code < self.0.order, "code {code} outside GF({})", self.0.order);
        FieldElem {
            field: self.clone(),
            code,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1u64;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// The smallest-code element of multiplicative order exactly `n`.
    pub fn root_of_unity(&self, n: u64) -> Option<u32> {
        (1..self.0.order).find(|&a| self.multiplicative_order(a) == Some(n))
    }

    /// The smallest-code generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.root_of_unity(self.0.order as u64 - 1)
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Renders a code either as an integer (prime fields) or a coefficient list.
    pub fn display(&self, code: u32) -> String {
        if self.0.k == 1 {
            code.to_string()
        } else {
            format!("{:?}", self.coeffs(code))
        }
    }
}

impl FieldInner {
    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let out: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&out)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p), ascending degree.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p = p as u64;
    while r.len() > dm {
        let top = r.pop().unwrap();
        if top != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - top) * c as u64 % p) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// All monic polynomials of the given degree, ascending-degree coefficient vectors.
fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree as u32);
    (0..count).map(move |mut n| {
        let mut v = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            v.push((n % p as u64) as u32);
            n /= p as u64;
        }
        v.push(1);
        v
    })
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for m in monic_polys(p, d) {
            if poly_rem(poly, &m, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: usize) -> Vec<u32> {
    // Lexicographic order on (c_0, c_1, ..., c_{k-1}): c_0 is the most
    // significant digit of the counter.
    let count = (p as u64).pow(k as u32);
    for n in 0..count {
        let mut low = vec![0u32; k];
        let mut rest = n;
        for slot in low.iter_mut().rev() {
            *slot = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        low.push(1);
        if is_irreducible(&low, p) {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field element carrying its field, for standalone arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: GaloisField,
    code: u32,
}

impl FieldElem {
    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.mul(self.code, other.code)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.field.elem(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.elem(self.field.pow(self.code, e))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.display(self.code))
    }
}
