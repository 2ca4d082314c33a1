//! Table-driven arithmetic in a small field F_q, used for the constant field
//! of A = F_q[T] and for all exact linear algebra.
//!
//! Elements are `u32` indices: the index of an element is its coefficient
//! sequence over F_p (in the canonical modulus of degree e) read as a base-p
//! integer, constant term least significant. For prime q this is the residue.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::fp_poly::{inv_mod, is_prime, prime_factors};
use super::{make_extension, FieldElement, FieldRef};
use crate::error::{Error, Result};

/// Largest constant field supported by the table representation.
pub const MAX_BASE_FIELD: u32 = 1 << 16;

pub struct Fq {
    p: u32,
    e: u32,
    q: u32,
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    descriptor: FieldRef,
}

impl std::fmt::Debug for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power_parts(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePowerSize(q));
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(Error::NotPrimePowerSize(q));
    }
    let p = factors[0];
    let mut e = 0u32;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Ok((p as u32, e))
}

static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Fq>>>> = OnceLock::new();

impl Fq {
    /// The field with `q` elements (cached, one instance per `q`).
    pub fn get(q: u64) -> Result<Arc<Fq>> {
        let (p, e) = prime_power_parts(q)?;
        if q > MAX_BASE_FIELD as u64 {
            return Err(Error::FieldTooLarge(format!(
                "constant field of size {q} exceeds {MAX_BASE_FIELD}"
            )));
        }
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(q as u32)) {
            return Ok(f.clone());
        }
        let built = Arc::new(Fq::build(p, e)?);
        let mut guard = cache.lock().unwrap();
        Ok(guard.entry(q as u32).or_insert(built).clone())
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Arc<Fq>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Fq::get(p as u64)
    }

    fn build(p: u32, e: u32) -> Result<Fq> {
        let q = p.pow(e);
        let descriptor = make_extension(p, e as usize)?;
        let (exp, log) = if e == 1 {
            (Vec::new(), Vec::new())
        } else {
            let order = (q - 1) as u64;
            let factors = prime_factors(order);
            let generator = (2..q)
                .map(|idx| descriptor.element_from_index(idx as u64))
                .find(|g| factors.iter().all(|&l| !g.pow(order / l).is_one()))
                .expect("multiplicative group of a finite field is cyclic");
            let mut exp = Vec::with_capacity(2 * (q as usize - 1));
            let mut log = vec![0u32; q as usize];
            let mut acc = descriptor.one();
            for i in 0..(q - 1) {
                let idx = acc.index() as u32;
                exp.push(idx);
                log[idx as usize] = i;
                acc = &acc * &generator;
            }
            let copy = exp.clone();
            exp.extend(copy);
            (exp, log)
        };
        Ok(Fq {
            p,
            e,
            q,
            exp,
            log,
            descriptor,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree of F_q over its prime field.
    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// The canonical descriptor F_{p^e} whose elements these indices encode.
    pub fn descriptor(&self) -> &FieldRef {
        &self.descriptor
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let (mut out, mut place) = (0, 1);
            while a > 0 || b > 0 {
                out += ((a % self.p + b % self.p) % self.p) * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let (mut out, mut place) = (0, 1);
            while a > 0 {
                out += ((self.p - a % self.p) % self.p) * place;
                a /= self.p;
                place *= self.p;
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
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        if self.e == 1 {
            inv_mod(a, self.p)
        } else {
            let l = self.log[a as usize];
            self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
        }
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The element of the canonical descriptor F_{p^e} with this index.
    pub fn to_element(&self, a: u32) -> FieldElement {
        self.descriptor.element_from_index(a as u64)
    }

    /// Index of an element of the canonical descriptor F_{p^e}.
    pub fn from_element(&self, x: &FieldElement) -> u32 {
        assert!(
            x.field().degree() == self.e as usize && x.field().characteristic() == self.p,
            "element does not belong to F_{}",
            self.q
        );
        x.index() as u32
    }
}
