//! The finite field F_q, q = p^n, realized by lookup tables.
//!
//! Elements are indices `0..q`. The index `Σ d_i p^i` stands for `Σ d_i α^i`
//! where α is a root of the field's defining polynomial. For n = 1 the index is
//! simply the residue mod p.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::AlgebraError;

/// Largest field size supported by the table realization.
pub const MAX_Q: u32 = 1024;

/// An element of F_q, stored as its table index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u16);

impl Fe {
    /// The additive identity.
    pub const ZERO: Fe = Fe(0);
    /// The multiplicative identity.
    pub const ONE: Fe = Fe(1);

    /// Table index of the element.
    pub fn index(self) -> u32 {
        u32::from(self.0)
    }

    /// True for the zero element.
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic context for one finite field.
pub struct Fq {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u16>,
    primitive: Fe,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for Fq {}

fn registry() -> &'static Mutex<HashMap<u32, &'static Fq>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static Fq>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Splits `q` as `p^n` if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut n) = (q, 0);
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

impl Fq {
    /// Returns the (interned) field with `q` elements.
    pub fn new(q: u32) -> Result<&'static Fq, AlgebraError> {
        let (p, n) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.get(&q) {
            return Ok(f);
        }
        let field: &'static Fq = Box::leak(Box::new(Fq::build(p, n)));
        reg.insert(q, field);
        Ok(field)
    }

    fn build(p: u32, n: u32) -> Fq {
        let q = p.pow(n);
        let modulus = if n == 1 { vec![0, 1] } else { defining_polynomial(p, n) };
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(n as usize);
            let mut y = x;
            for _ in 0..n {
                v.push(y % p);
                y /= p;
            }
            v
        };
        let undigits = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u16;
                let prod = if n == 1 {
                    vec![(a * b) % p]
                } else {
                    mul_mod_poly(&da, &db, &modulus, p)
                };
                mul[(a * q + b) as usize] = undigits(&prod) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u16;
                }
                if a != 0 && mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                }
            }
        }
        let mut field = Fq {
            p,
            n,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace: vec![0; qs],
            primitive: Fe(1),
        };
        // trace to F_p: a + a^p + ... + a^{p^{n-1}}, an element of the prime field
        for a in 0..q {
            let mut acc = Fe(0);
            let mut x = Fe(a as u16);
            for _ in 0..n {
                acc = field.add(acc, x);
                x = field.pow(x, u64::from(p));
            }
            field.trace[a as usize] = acc.0;
        }
        field.primitive = (1..q)
            .map(|a| Fe(a as u16))
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("a finite field has a primitive element");
        field
    }

    /// Characteristic p.
    pub fn p(&self) -> u32 {
        self.p
    }
    /// Degree n over the prime field.
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Cardinality q.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Defining polynomial over F_p (coefficients low to high); `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// A fixed generator of F_q^*.
    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    /// The element with the given table index.
    pub fn elem(&self, index: u32) -> Fe {
        assert!(index < self.q, "index {index} out of range for F_{}", self.q);
        Fe(index as u16)
    }

    /// Reduces an integer into the prime field.
    pub fn from_int(&self, x: i64) -> Fe {
        Fe(x.rem_euclid(i64::from(self.p)) as u16)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(|a| Fe(a as u16))
    }

    /// Sum.
    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }
    /// Difference.
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    /// Product.
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }
    /// Additive inverse.
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }
    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (!a.is_zero()).then(|| Fe(self.inv[a.0 as usize]))
    }
    /// Power by square-and-multiply.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (a, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    /// Absolute trace F_q -> F_p, returned as a residue in `0..p`.
    pub fn trace(&self, a: Fe) -> u32 {
        u32::from(self.trace[a.0 as usize])
    }

    fn multiplicative_order(&self, a: Fe) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != Fe::ONE {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}

fn mul_mod_poly(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let n = m.len() - 1;
    let mut r = vec![0u32; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    for deg in (n..r.len()).rev() {
        let c = r[deg];
        if c != 0 {
            for (i, mc) in m.iter().enumerate().take(n) {
                let idx = deg - n + i;
                r[idx] = (r[idx] + (p - c) * mc % p) % p;
            }
            r[deg] = 0;
        }
    }
    r.truncate(n);
    r
}

/// Least monic irreducible polynomial of degree n over F_p whose roots are
/// primitive, in the order (coefficient tuple read from the constant term).
fn defining_polynomial(p: u32, n: u32) -> Vec<u32> {
    let q = p.pow(n);
    let total = p.pow(n);
    for code in 0..total {
        let mut m: Vec<u32> = (0..n).map(|i| (code / p.pow(i)) % p).collect();
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        // x has order q-1 in F_p[x]/(m) iff m is irreducible and x primitive
        let x = {
            let mut v = vec![0u32; n as usize];
            v[1 % n as usize] = 1;
            if n == 1 {
                v[0] = (p - m[0]) % p;
            }
            v
        };
        let mut acc = x.clone();
        let mut order = 1;
        let one = {
            let mut v = vec![0u32; n as usize];
            v[0] = 1;
            v
        };
        while acc != one && order <= q {
            acc = mul_mod_poly(&acc, &x, &m, p);
            order += 1;
        }
        if order == q - 1 {
            return m;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(Fq::new(12).is_err());
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = Fq::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            assert_eq!(f.multiplicative_order(f.primitive()), q - 1);
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let f = Fq::new(9).unwrap();
        let mut hit = [false; 3];
        for a in f.elements() {
            hit[f.trace(a) as usize] = true;
            for b in f.elements() {
                assert_eq!((f.trace(a) + f.trace(b)) % 3, f.trace(f.add(a, b)));
            }
        }
        assert!(hit.iter().all(|&h| h));
    }
}
