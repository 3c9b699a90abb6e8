//! Arithmetic in GF(q), q = p^e.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! residue polynomial, constant term first. `0` and `1` are the identities.
//! Every operation goes through precomputed tables; the tables are built from
//! log/antilog tables of a primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GdlError, Result};

/// Encoded field element. Fields are limited to q <= 256.
pub type Elem = u8;

pub const MAX_ORDER: u32 = 256;

/// Description of a finite field: prime, extension degree and the monic
/// irreducible modulus (coefficients from the constant term up).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let spec = FieldSpec { p, e, modulus };
        spec.validate()?;
        Ok(spec)
    }

    /// The shipped default field of order `q`.
    ///
    /// GF(4), GF(8), GF(9) use x^2+x+1, x^3+x+1, x^2+1. Other prime powers use
    /// the least irreducible modulus in digit order.
    pub fn for_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| GdlError::InvalidField(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(GdlError::InvalidField(format!("q = {q} exceeds {MAX_ORDER}")));
        }
        let modulus = match q {
            4 => vec![1, 1, 1],
            8 => vec![1, 1, 0, 1],
            9 => vec![1, 0, 1],
            _ if e == 1 => vec![0, 1],
            _ => least_irreducible(p, e as usize),
        };
        FieldSpec::new(p, e, modulus)
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GdlError::InvalidField(m));
        if !is_prime(self.p) {
            return bad(format!("p = {} is not prime", self.p));
        }
        if self.e == 0 {
            return bad("extension degree must be >= 1".into());
        }
        if (self.p as u64).pow(self.e) > MAX_ORDER as u64 {
            return bad(format!("{}^{} exceeds {MAX_ORDER}", self.p, self.e));
        }
        if self.modulus.len() != self.e as usize + 1 {
            return bad(format!("modulus must have {} coefficients", self.e + 1));
        }
        if self.modulus.iter().any(|&c| c >= self.p) {
            return bad("modulus coefficient out of range".into());
        }
        if *self.modulus.last().unwrap() != 1 {
            return bad("modulus must be monic".into());
        }
        if !is_irreducible(&self.modulus, self.p) {
            return bad(format!("modulus {:?} is reducible over GF({})", self.modulus, self.p));
        }
        Ok(())
    }
}

struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
    /// `exp[i] = g^i` for a primitive element g, i in [0, q-1).
    exp: Vec<Elem>,
    /// `log[a]` for a != 0; `log[0]` is unused.
    log: Vec<u32>,
}

/// An instantiated finite field. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    q: usize,
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}; {:?})", self.q, self.spec.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Field {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Frobenius,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.validate()?;
        let q = spec.order() as usize;
        let p = spec.p;
        let digits = |a: usize| -> Vec<u32> {
            let mut v = vec![0u32; spec.e as usize];
            let mut x = a as u32;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> Elem {
            v.iter().rev().fold(0u32, |acc, &d| acc * p + d) as Elem
        };

        let mut add = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
            }
        }
        let mut neg = vec![0; q];
        for a in 0..q {
            neg[a] = encode(&digits(a).iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
        }

        // Multiplication by x is a shift reduced by the modulus; find a
        // primitive element by walking powers of each candidate.
        let mulx_poly = |a: &[u32], b: &[u32]| -> Vec<u32> { poly_mulmod(a, b, &spec.modulus, p) };
        let mut exp = Vec::new();
        let mut log = vec![0u32; q];
        'cand: for g in 1..q {
            let dg = digits(g);
            let mut cur = digits(1);
            let mut seen = vec![false; q];
            let mut powers = Vec::with_capacity(q - 1);
            for _ in 0..q - 1 {
                let c = encode(&cur) as usize;
                if seen[c] {
                    continue 'cand;
                }
                seen[c] = true;
                powers.push(c as Elem);
                cur = mulx_poly(&cur, &dg);
            }
            exp = powers;
            break;
        }
        if exp.len() != q - 1 {
            return Err(GdlError::Inconsistent("no primitive element found".into()));
        }
        for (i, &a) in exp.iter().enumerate() {
            log[a as usize] = i as u32;
        }
        let order = (q - 1) as u32;
        let mut mul = vec![0; q * q];
        let mut inv = vec![0; q];
        for a in 1..q {
            for b in 1..q {
                mul[a * q + b] = exp[((log[a] + log[b]) % order) as usize];
            }
            inv[a] = exp[((order - log[a]) % order) as usize];
        }
        let mut frob = vec![0; q];
        for a in 1..q {
            frob[a] = exp[((log[a] as u64 * p as u64) % order as u64) as usize];
        }

        Ok(Field { spec, q, t: Arc::new(Tables { add, mul, neg, inv, frob, exp, log }) })
    }

    /// The default field of order `q`.
    pub fn of_order(q: u32) -> Result<Self> {
        Field::new(FieldSpec::for_order(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn p(&self) -> u32 {
        self.spec.p
    }
    pub fn e(&self) -> u32 {
        self.spec.e
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.t.add[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.t.neg[b as usize])
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul[a as usize * self.q + b as usize]
    }
    /// Inverse of a nonzero element. Panics on zero in debug builds.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0, "zero inverse");
        self.t.inv[a as usize]
    }
    pub fn checked_inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(GdlError::ZeroInverse)
        } else {
            Ok(self.t.inv[a as usize])
        }
    }
    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.t.frob[a as usize]
    }
    /// `a^(p^k)`.
    pub fn frobenius_pow(&self, mut a: Elem, k: u32) -> Elem {
        for _ in 0..k % self.spec.e {
            a = self.frobenius(a);
        }
        a
    }
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        self.t.exp[((self.t.log[a as usize] as u64 * (k % order)) % order) as usize]
    }
    /// A fixed primitive element.
    pub fn primitive_element(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.t.exp[1]
        }
    }
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.t.log[a as usize])
    }

    pub fn check(&self, a: u32) -> Result<Elem> {
        if (a as usize) < self.q {
            Ok(a as Elem)
        } else {
            Err(GdlError::OutOfRange { value: a, q: self.q as u32 })
        }
    }

    /// Dispatching entry point over the encoded representation.
    pub fn arith(&self, op: FieldOp, a: u32, b: Option<u32>) -> Result<Elem> {
        let a = self.check(a)?;
        let need_b = || -> Result<Elem> {
            match b {
                Some(b) => self.check(b),
                None => Err(GdlError::param("binary operation needs a second operand")),
            }
        };
        Ok(match op {
            FieldOp::Add => self.add(a, need_b()?),
            FieldOp::Sub => self.sub(a, need_b()?),
            FieldOp::Mul => self.mul(a, need_b()?),
            FieldOp::Inv => self.checked_inv(a)?,
            FieldOp::Frobenius => self.frobenius(a),
        })
    }

    /// Lexicographically least `(alpha, beta)` with `t^2 + alpha t + beta`
    /// rootless over this field.
    pub fn find_irreducible_quadratic(&self) -> (Elem, Elem) {
        for alpha in 0..self.q as u32 {
            for beta in 0..self.q as u32 {
                let (a, b) = (alpha as Elem, beta as Elem);
                let rootless = (0..self.q as u32).all(|t| {
                    let t = t as Elem;
                    self.add(self.add(self.mul(t, t), self.mul(a, t)), b) != 0
                });
                if rootless {
                    return (a, b);
                }
            }
        }
        unreachable!("every finite field has an irreducible quadratic")
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `q = p^e` decomposition, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a as u64 * *x as u64) % p as u64 == 1).expect("nonzero mod p")
}

/// Remainder of `a` modulo `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(*m.last().unwrap(), p);
    loop {
        r = trim(r);
        let zero = r.len() == 1 && r[0] == 0;
        if zero || r.len() - 1 < dm {
            return r;
        }
        let shift = r.len() - 1 - dm;
        let coef = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (coef as u64 * mi as u64 % p as u64) as u32;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most half the degree.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut c = code;
            for gi in g.iter_mut().take(d) {
                *gi = (c % p as u64) as u32;
                c /= p as u64;
            }
            g[d] = 1;
            let r = poly_rem(&f, &g, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, e: usize) -> Vec<u32> {
    let count = (p as u64).pow(e as u32);
    for code in 0..count {
        let mut f = vec![0u32; e + 1];
        let mut c = code;
        for fi in f.iter_mut().take(e) {
            *fi = (c % p as u64) as u32;
            c /= p as u64;
        }
        f[e] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent reference multiplication: schoolbook product of digit
    /// vectors followed by long division by the modulus.
    fn oracle_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
        let p = spec.p;
        let e = spec.e as usize;
        let dig = |mut x: u32| {
            let mut v = vec![0u32; e];
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let (da, db) = (dig(a), dig(b));
        let mut prod = vec![0u32; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for top in (e..2 * e).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..=e {
                let idx = top - e + i;
                prod[idx] = (prod[idx] + p * p - c * spec.modulus[i]) % p;
            }
        }
        prod[..e].iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    const ORDERS: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

    #[test]
    fn tables_match_polynomial_oracle() {
        for q in ORDERS {
            let f = Field::of_order(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(
                        f.mul(a as Elem, b as Elem) as u32,
                        oracle_mul(f.spec(), a, b),
                        "GF({q}) {a}*{b}"
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = Field::of_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.sub(0, a)), 0);
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                assert_eq!(f.frobenius_pow(a, f.e()), a, "frobenius^e is identity");
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn worked_examples() {
        let gf5 = Field::of_order(5).unwrap();
        assert_eq!(gf5.arith(FieldOp::Mul, 2, Some(3)).unwrap(), 1);
        let gf4 = Field::of_order(4).unwrap();
        assert_eq!(gf4.spec().modulus, vec![1, 1, 1]);
        assert_eq!(gf4.arith(FieldOp::Mul, 2, Some(3)).unwrap(), 1);
        let gf7 = Field::of_order(7).unwrap();
        assert_eq!(gf7.arith(FieldOp::Inv, 3, None).unwrap(), 5);
        assert!(matches!(gf7.arith(FieldOp::Inv, 0, None), Err(GdlError::ZeroInverse)));
        assert!(matches!(gf7.arith(FieldOp::Add, 7, Some(1)), Err(GdlError::OutOfRange { .. })));
        assert_eq!(gf4.frobenius(2), 3, "x^2 = x + 1");
    }

    #[test]
    fn irreducible_quadratics() {
        let expect = [(2, (1, 1)), (3, (0, 1)), (5, (0, 2))];
        for (q, ab) in expect {
            assert_eq!(Field::of_order(q).unwrap().find_irreducible_quadratic(), ab);
        }
        for q in ORDERS {
            let f = Field::of_order(q).unwrap();
            let (a, b) = f.find_irreducible_quadratic();
            for t in f.elements() {
                assert_ne!(f.add(f.add(f.mul(t, t), f.mul(a, t)), b), 0);
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err(), "x^2+1 = (x+1)^2 over GF(2)");
        assert!(FieldSpec::new(4, 1, vec![0, 1]).is_err());
        assert!(FieldSpec::new(2, 3, vec![1, 1, 1]).is_err());
        assert!(FieldSpec::for_order(6).is_err());
        assert_eq!(FieldSpec::for_order(8).unwrap().modulus, vec![1, 1, 0, 1]);
        assert_eq!(FieldSpec::for_order(9).unwrap().modulus, vec![1, 0, 1]);
    }
}
