//! Ranking and unranking of `k`-subspaces in the canonical "rref-lex" order.
//!
//! Subspaces are ordered first by their pivot tuple (lexicographically
//! ascending), then by the flattened RREF matrix in lexicographic order of
//! the element encodings. Within one pivot pattern only the free entries
//! vary, so the rank inside a pattern is the base-`q` number formed by the
//! free entries in row-major order.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{GdlError, Result};
use crate::field::Elem;
use crate::gauss::gaussian_binomial;
use crate::subspace::{Space, Subspace};

pub const DEFAULT_CAP: u128 = 1 << 21;

static CAP: AtomicU64 = AtomicU64::new(DEFAULT_CAP as u64);

/// Largest Grassmannian `SubspaceIndex::new` will enumerate.
pub fn enumeration_cap() -> u128 {
    CAP.load(Ordering::Relaxed) as u128
}

/// Sets the process-wide enumeration cap.
pub fn set_enumeration_cap(cap: u64) {
    CAP.store(cap, Ordering::Relaxed);
}

/// Name of the ordering, recorded in file headers.
pub const ORDER_NAME: &str = "rref-lex";

#[derive(Clone, Debug)]
struct Pattern {
    pivots: Vec<u8>,
    /// Flattened positions of the free entries, row-major.
    free: Vec<u16>,
    offset: usize,
}

/// Bijection between `k`-subspaces of `F_q^n` and `[0, Gauss(n,k))`.
#[derive(Clone, Debug)]
pub struct SubspaceIndex {
    space: Space,
    k: usize,
    total: usize,
    patterns: Vec<Pattern>,
    by_mask: Vec<u32>,
    /// `q^i` for the longest free list.
    powers: Vec<usize>,
}

impl SubspaceIndex {
    pub fn new(space: &Space, k: usize) -> Result<Self> {
        Self::with_cap(space, k, enumeration_cap())
    }

    pub fn with_cap(space: &Space, k: usize, cap: u128) -> Result<Self> {
        let n = space.n();
        if k > n {
            return Err(GdlError::param(format!("k = {k} exceeds n = {n}")));
        }
        let q = space.q();
        let total = gaussian_binomial(n as u32, k as u32, q as u64);
        if total > cap {
            return Err(GdlError::CapExceeded {
                what: format!("{k}-spaces of F_{q}^{n}"),
                needed: total,
                cap,
            });
        }
        let mut patterns = Vec::new();
        let mut by_mask = vec![u32::MAX; 1 << n];
        let mut offset = 0usize;
        let mut max_free = 0;
        for pivots in combinations(n, k) {
            let mut is_pivot = vec![false; n];
            for &c in &pivots {
                is_pivot[c] = true;
            }
            let mut free = Vec::new();
            for (r, &c) in pivots.iter().enumerate() {
                for col in c + 1..n {
                    if !is_pivot[col] {
                        free.push((r * n + col) as u16);
                    }
                }
            }
            let mask: u32 = pivots.iter().map(|&c| 1u32 << c).sum();
            by_mask[mask as usize] = patterns.len() as u32;
            max_free = max_free.max(free.len());
            let size = q.pow(free.len() as u32);
            patterns.push(Pattern { pivots: pivots.iter().map(|&c| c as u8).collect(), free, offset });
            offset += size;
        }
        debug_assert_eq!(offset as u128, total);
        let powers = (0..=max_free).map(|i| q.pow(i as u32)).collect();
        Ok(SubspaceIndex { space: space.clone(), k, total: total as usize, patterns, by_mask, powers })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn len(&self) -> usize {
        self.total
    }
    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    #[inline]
    pub fn rank(&self, s: &Subspace) -> usize {
        debug_assert_eq!(s.dim(), self.k);
        debug_assert_eq!(s.n(), self.space.n());
        let pat = &self.patterns[self.by_mask[s.pivot_mask() as usize] as usize];
        let q = self.space.q();
        let rows = s.rows();
        let mut r = 0usize;
        for &pos in &pat.free {
            r = r * q + rows[pos as usize] as usize;
        }
        pat.offset + r
    }

    pub fn unrank(&self, i: usize) -> Subspace {
        assert!(i < self.total, "index {i} out of range {}", self.total);
        let pi = self.patterns.partition_point(|p| p.offset <= i) - 1;
        let pat = &self.patterns[pi];
        let n = self.space.n();
        let mut m = vec![0 as Elem; self.k * n];
        for (r, &c) in pat.pivots.iter().enumerate() {
            m[r * n + c as usize] = 1;
        }
        let mut rest = i - pat.offset;
        let nf = pat.free.len();
        for (j, &pos) in pat.free.iter().enumerate() {
            let pw = self.powers[nf - 1 - j];
            m[pos as usize] = (rest / pw) as Elem;
            rest %= pw;
        }
        // Already in RREF; canonicalize is the identity here.
        let s = self.space.canonicalize_flat(m);
        debug_assert_eq!(s.dim(), self.k);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.total).map(move |i| self.unrank(i))
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The `d`-subspaces of `F_q^k`, used as coordinate templates inside a
/// `k`-space.
pub fn templates(space: &Space, k: usize, d: usize) -> Result<Vec<Subspace>> {
    let small = space.with_dim(k.max(1))?;
    if k == 0 {
        return Ok(vec![Subspace::zero(0)]);
    }
    Ok(SubspaceIndex::new(&small, d)?.iter().collect())
}
