//! Families of `k`-spaces as bitsets over the canonical enumeration, and
//! rational weight certificates on `d`-spaces.

use std::collections::BTreeMap;

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::enumerate::{SubspaceIndex, ORDER_NAME};
use crate::error::{GdlError, Result};
use crate::field::{Field, FieldSpec};
use crate::gauss::gaussian_binomial;
use crate::linalg::{format_rational, int, parse_rational, Rational};
use crate::subspace::{Space, Subspace};

pub const FORMAT_VERSION: &str = "gdl-v1";

#[derive(Clone, Debug)]
pub struct Family {
    space: Space,
    k: usize,
    total: usize,
    bits: Vec<u64>,
    pub construction: String,
    pub params: BTreeMap<String, Value>,
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.k == other.k && self.bits == other.bits
    }
}

impl Family {
    pub fn empty(space: &Space, k: usize) -> Result<Self> {
        let total = gaussian_binomial(space.n() as u32, k as u32, space.q() as u64);
        if k > space.n() {
            return Err(GdlError::param(format!("k = {k} exceeds n = {}", space.n())));
        }
        let total = usize::try_from(total).map_err(|_| GdlError::CapExceeded {
            what: "family bitset".into(),
            needed: total,
            cap: usize::MAX as u128,
        })?;
        Ok(Family {
            space: space.clone(),
            k,
            total,
            bits: vec![0; total.div_ceil(64)],
            construction: String::new(),
            params: BTreeMap::new(),
        })
    }

    pub fn full(space: &Space, k: usize) -> Result<Self> {
        let mut f = Self::empty(space, k)?;
        for i in 0..f.total {
            f.insert(i);
        }
        f.construction = "full".into();
        Ok(f)
    }

    /// Members are the `k`-spaces satisfying `pred`, evaluated in parallel.
    pub fn from_predicate<P>(index: &SubspaceIndex, pred: P) -> Result<Self>
    where
        P: Fn(&Subspace) -> bool + Sync,
    {
        let mut f = Self::empty(index.space(), index.k())?;
        let total = f.total;
        f.bits.par_iter_mut().enumerate().for_each(|(w, word)| {
            let lo = w * 64;
            for b in 0..64.min(total - lo) {
                if pred(&index.unrank(lo + b)) {
                    *word |= 1 << b;
                }
            }
        });
        Ok(f)
    }

    pub fn from_indices(space: &Space, k: usize, idx: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut f = Self::empty(space, k)?;
        for i in idx {
            if i >= f.total {
                return Err(GdlError::param(format!("index {i} out of range {}", f.total)));
            }
            f.insert(i);
        }
        Ok(f)
    }

    pub fn with_name(mut self, construction: &str, params: impl IntoIterator<Item = (&'static str, Value)>) -> Self {
        self.construction = construction.to_string();
        self.params = params.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self
    }

    pub fn space(&self) -> &Space {
        &self.space
    }
    pub fn n(&self) -> usize {
        self.space.n()
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn q(&self) -> usize {
        self.space.q()
    }
    /// `Gauss(n,k)`, the length of the bitset.
    pub fn total(&self) -> usize {
        self.total
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }
    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    pub fn size(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
    pub fn is_full(&self) -> bool {
        self.size() == self.total
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + b)
            })
        })
    }

    fn check_compatible(&self, other: &Family) -> Result<()> {
        if self.space != other.space || self.k != other.k {
            return Err(GdlError::AmbientMismatch("families live in different Grassmannians".into()));
        }
        Ok(())
    }

    pub fn complement(&self) -> Family {
        let mut f = self.clone();
        for w in f.bits.iter_mut() {
            *w = !*w;
        }
        f.mask_tail();
        f.construction = format!("complement({})", self.construction);
        f
    }

    fn mask_tail(&mut self) {
        let r = self.total % 64;
        if r != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.check_compatible(other)?;
        let mut f = self.clone();
        f.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a |= b);
        f.construction = format!("union({}, {})", self.construction, other.construction);
        Ok(f)
    }

    pub fn intersection(&self, other: &Family) -> Result<Family> {
        self.check_compatible(other)?;
        let mut f = self.clone();
        f.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a &= b);
        f.construction = format!("intersection({}, {})", self.construction, other.construction);
        Ok(f)
    }

    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.check_compatible(other)?;
        let mut f = self.clone();
        f.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a &= !b);
        f.construction = format!("difference({}, {})", self.construction, other.construction);
        Ok(f)
    }

    pub fn index(&self) -> Result<SubspaceIndex> {
        SubspaceIndex::with_cap(&self.space, self.k, u128::MAX)
    }

    /// Bitset bytes, bit `i` at byte `i/8`, position `i%8` (LSB first).
    pub fn bitset_bytes(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.bits.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.truncate(self.total.div_ceil(8));
        out
    }

    pub fn to_json(&self, certificate: Option<&WeightCertificate>) -> FamilyJson {
        FamilyJson {
            version: FORMAT_VERSION.into(),
            n: self.n(),
            k: self.k,
            field: self.space.field().spec().clone(),
            order: ORDER_NAME.into(),
            construction: self.construction.clone(),
            params: self.params.clone(),
            size: Some(self.size()),
            bitset: B64.encode(self.bitset_bytes()),
            certificate: certificate.map(WeightCertificate::to_json),
        }
    }
}

/// Rational weights on `d`-spaces; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCertificate {
    pub d: usize,
    pub weights: BTreeMap<usize, Rational>,
}

impl WeightCertificate {
    pub fn new(d: usize) -> Self {
        WeightCertificate { d, weights: BTreeMap::new() }
    }

    pub fn from_dense(d: usize, w: Vec<Rational>) -> Self {
        let weights = w.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        WeightCertificate { d, weights }
    }

    pub fn get(&self, i: usize) -> Rational {
        self.weights.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&mut self, i: usize, x: &Rational) {
        let e = self.weights.entry(i).or_insert_with(Rational::zero);
        *e += x;
        if e.is_zero() {
            self.weights.remove(&i);
        }
    }

    /// Weights adding `other` to `self`, scaled by `c`.
    pub fn add_scaled(&mut self, other: &WeightCertificate, c: &Rational) {
        assert_eq!(self.d, other.d);
        for (&i, x) in &other.weights {
            self.add(i, &(x * c));
        }
    }

    /// Certificate of the constant function 1: every `d`-space weighs
    /// `1/Gauss(k,d)`.
    pub fn constant_one(space: &Space, k: usize, d: usize) -> Self {
        let per = gaussian_binomial(k as u32, d as u32, space.q() as u64);
        let nd = gaussian_binomial(space.n() as u32, d as u32, space.q() as u64) as usize;
        let w = Rational::new(1.into(), per.into());
        WeightCertificate { d, weights: (0..nd).map(|i| (i, w.clone())).collect() }
    }

    /// Certificate of `1 - f`.
    pub fn complement(&self, space: &Space, k: usize) -> Self {
        let mut c = Self::constant_one(space, k, self.d);
        c.add_scaled(self, &int(-1));
        c
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            d: self.d,
            weights: self.weights.iter().map(|(i, x)| (i.to_string(), format_rational(x))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub d: usize,
    pub weights: BTreeMap<String, String>,
}

impl CertificateJson {
    pub fn to_certificate(&self) -> Result<WeightCertificate> {
        let mut c = WeightCertificate::new(self.d);
        for (i, x) in &self.weights {
            let i: usize = i.parse().map_err(|_| GdlError::Format(format!("bad certificate index '{i}'")))?;
            let x = parse_rational(x).ok_or_else(|| GdlError::Format(format!("bad rational '{x}'")))?;
            c.add(i, &x);
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub version: String,
    pub n: usize,
    pub k: usize,
    pub field: FieldSpec,
    pub order: String,
    pub construction: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub bitset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl FamilyJson {
    pub fn to_family(&self) -> Result<(Family, Option<WeightCertificate>)> {
        if self.version != FORMAT_VERSION {
            return Err(GdlError::Format(format!("unsupported version '{}'", self.version)));
        }
        if self.order != ORDER_NAME {
            return Err(GdlError::Format(format!("unsupported order '{}'", self.order)));
        }
        let space = Space::new(Field::new(self.field.clone())?, self.n)?;
        let mut f = Family::empty(&space, self.k)?;
        let bytes = B64.decode(&self.bitset).map_err(|e| GdlError::Format(format!("bitset: {e}")))?;
        if bytes.len() != f.total.div_ceil(8) {
            return Err(GdlError::Format(format!(
                "bitset length mismatch: {} bytes for {} subspaces",
                bytes.len(),
                f.total
            )));
        }
        for (i, &b) in bytes.iter().enumerate() {
            f.bits[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let before = f.bits.clone();
        f.mask_tail();
        if before != f.bits {
            return Err(GdlError::Format("bitset length mismatch: bits set past the end".into()));
        }
        if let Some(sz) = self.size {
            if sz != f.size() {
                return Err(GdlError::Format(format!("header size {sz} but bitset holds {}", f.size())));
            }
        }
        f.construction = self.construction.clone();
        f.params = self.params.clone();
        let cert = self.certificate.as_ref().map(CertificateJson::to_certificate).transpose()?;
        Ok((f, cert))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let v = Space::of(2, 4).unwrap();
        let a = Family::from_indices(&v, 2, [0, 1, 2, 34]).unwrap();
        let b = Family::from_indices(&v, 2, [2, 3]).unwrap();
        assert_eq!(a.size(), 4);
        assert_eq!(a.complement().size(), 31);
        assert!(!a.complement().contains(34));
        assert_eq!(a.union(&b).unwrap().size(), 5);
        assert_eq!(a.intersection(&b).unwrap().members().collect::<Vec<_>>(), vec![2]);
        assert_eq!(a.difference(&b).unwrap().size(), 3);
        assert!(Family::from_indices(&v, 2, [35]).is_err());
        assert!(Family::full(&v, 2).unwrap().is_full());
    }

    #[test]
    fn json_round_trip_and_corruption() {
        let v = Space::of(3, 4).unwrap();
        let f = Family::from_indices(&v, 2, [0, 7, 8, 129]).unwrap().with_name("test", [("q", 3.into())]);
        let mut cert = WeightCertificate::new(1);
        cert.add(3, &crate::linalg::rat(-2, 7));
        let js = serde_json::to_string(&f.to_json(Some(&cert))).unwrap();
        let back: FamilyJson = serde_json::from_str(&js).unwrap();
        let (g, c) = back.to_family().unwrap();
        assert_eq!(g, f);
        assert_eq!(g.construction, "test");
        assert_eq!(c.unwrap(), cert);
        assert!(js.contains("\"-2/7\""));

        let mut bad = back.clone();
        bad.bitset = B64.encode([0u8; 3]);
        bad.size = None;
        let err = bad.to_family().unwrap_err().to_string();
        assert!(err.contains("bitset length mismatch"), "{err}");
    }

    #[test]
    fn bit_layout_is_lsb_first() {
        let v = Space::of(2, 4).unwrap();
        let f = Family::from_indices(&v, 1, [0, 9]).unwrap();
        assert_eq!(f.bitset_bytes(), vec![0b0000_0001, 0b0000_0010]);
    }
}
