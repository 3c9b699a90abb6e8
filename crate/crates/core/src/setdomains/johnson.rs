//! Families of `k`-subsets of `{0..n-1}` in colex order.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::certify::QuotientMatrix;
use crate::error::{GdlError, Result};
use crate::linalg::{int, solve, Rational};

pub const JOHNSON_CAP: u128 = 4096;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Colex rank of a subset given as a bitmask.
pub fn colex_rank(mask: u64) -> usize {
    let mut r = 0;
    let mut i = 0;
    let mut m = mask;
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        i += 1;
        r += binomial(c, i) as usize;
        m &= m - 1;
    }
    r
}

pub fn colex_unrank(mut r: usize, k: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) as usize <= r {
            c += 1;
        }
        r -= binomial(c, i) as usize;
        mask |= 1 << c;
    }
    mask
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    k: usize,
    members: Vec<bool>,
}

impl SetFamily {
    pub fn from_predicate(n: usize, k: usize, pred: impl Fn(u64) -> bool) -> Result<Self> {
        if n > 63 || k > n {
            return Err(GdlError::param(format!("need k <= n <= 63, got n={n}, k={k}")));
        }
        let total = binomial(n, k) as usize;
        Ok(SetFamily { n, k, members: (0..total).map(|r| pred(colex_unrank(r, k))).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn total(&self) -> usize {
        self.members.len()
    }
    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }
    pub fn contains_rank(&self, r: usize) -> bool {
        self.members[r]
    }
    pub fn contains(&self, mask: u64) -> bool {
        self.members[colex_rank(mask)]
    }
    pub fn sets(&self) -> impl Iterator<Item = (u64, bool)> + '_ {
        self.members.iter().enumerate().map(|(r, &b)| (colex_unrank(r, self.k), b))
    }
    pub fn complement(&self) -> Self {
        SetFamily { n: self.n, k: self.k, members: self.members.iter().map(|b| !b).collect() }
    }
}

/// Quotient matrix of the bipartition, if equitable (neither side empty).
pub fn johnson_equitable(f: &SetFamily) -> Option<QuotientMatrix> {
    let valency = (f.k * (f.n - f.k)) as i64;
    let full = (1u64 << f.n) - 1;
    let (mut a, mut b) = (None, None);
    for (x, member) in f.sets() {
        let mut count = 0i64;
        let mut ins = x;
        while ins != 0 {
            let i = ins & ins.wrapping_neg();
            let mut outs = full & !x;
            while outs != 0 {
                let o = outs & outs.wrapping_neg();
                count += f.contains(x ^ i ^ o) as i64;
                outs ^= o;
            }
            ins ^= i;
        }
        let slot = if member { &mut a } else { &mut b };
        match *slot {
            None => *slot = Some(count),
            Some(c) if c != count => return None,
            _ => {}
        }
    }
    Some(QuotientMatrix::new(a?, b?, valency))
}

/// Whether membership is a function of `x ∩ coords`.
pub fn depends_only_on(f: &SetFamily, coords: u64) -> bool {
    let mut seen: HashMap<u64, bool> = HashMap::new();
    f.sets().all(|(x, m)| *seen.entry(x & coords).or_insert(m) == m)
}

/// Smallest coordinate sets the family depends on: the minimum size and all
/// sets of that size.
pub fn relevant_coordinates(f: &SetFamily) -> (usize, Vec<u64>) {
    for size in 0..=f.n {
        let found: Vec<u64> = (0..binomial(f.n, size) as usize)
            .map(|r| colex_unrank(r, size))
            .filter(|&c| depends_only_on(f, c))
            .collect();
        if !found.is_empty() {
            return (size, found);
        }
    }
    unreachable!("every family depends on all coordinates")
}

#[derive(Clone, Debug, Serialize)]
pub struct Example84 {
    #[serde(skip)]
    pub family: SetFamily,
    pub size: usize,
    pub matrix: Option<QuotientMatrix>,
    pub relevant: usize,
    pub relevant_sets: Vec<Vec<usize>>,
}

pub const EXAMPLE84_PREFIXES: [&str; 10] =
    ["11000", "01100", "00110", "00011", "10001", "11100", "01110", "00111", "10011", "11001"];

/// The `J(8,4)` family of 4-sets whose trace on the first five coordinates
/// is one of ten cyclic patterns.
pub fn johnson_example_84() -> Example84 {
    let prefixes: Vec<u64> = EXAMPLE84_PREFIXES
        .iter()
        .map(|p| p.chars().enumerate().fold(0, |acc, (i, c)| acc | ((c == '1') as u64) << i))
        .collect();
    let family = SetFamily::from_predicate(8, 4, |x| prefixes.contains(&(x & 0b11111))).expect("J(8,4)");
    let (relevant, sets) = relevant_coordinates(&family);
    Example84 {
        size: family.size(),
        matrix: johnson_equitable(&family),
        relevant,
        relevant_sets: sets.iter().map(|&c| (0..8).filter(|i| c >> i & 1 == 1).map(|i| i + 1).collect()).collect(),
        family,
    }
}

/// `k`-sets containing one block of the partition into consecutive `d`-sets.
pub fn groupwise_family(n: usize, d: usize, k: usize) -> Result<SetFamily> {
    if d == 0 || n % d != 0 {
        return Err(GdlError::param(format!("d = {d} must divide n = {n}")));
    }
    if k > 2 * d - 1 {
        return Err(GdlError::param(format!("need k <= 2d-1, got k={k}, d={d}")));
    }
    let blocks: Vec<u64> = (0..n / d).map(|b| ((1u64 << d) - 1) << (b * d)).collect();
    SetFamily::from_predicate(n, k, |x| blocks.iter().any(|&b| x & b == b))
}

#[derive(Clone, Debug, Serialize)]
pub struct JohnsonVerdict {
    pub d: usize,
    pub certified: bool,
    /// Weights on `d`-sets in colex order.
    #[serde(skip)]
    pub weights: Option<Vec<Rational>>,
}

/// Exact solve against the `d`-set to `k`-set inclusion matrix; a returned
/// certificate is replayed before it is accepted.
pub fn johnson_degree_test(f: &SetFamily, d: usize) -> Result<JohnsonVerdict> {
    if d > f.k {
        return Err(GdlError::param(format!("d = {d} exceeds k = {}", f.k)));
    }
    let nd = binomial(f.n, d);
    if nd > JOHNSON_CAP {
        return Err(GdlError::CapExceeded { what: "d-sets".into(), needed: nd, cap: JOHNSON_CAP });
    }
    let nd = nd as usize;
    let subsets = |x: u64| -> Vec<usize> {
        (0..nd).filter(|&r| {
            let y = colex_unrank(r, d);
            x & y == y
        }).collect()
    };
    let rows: Vec<Vec<usize>> = f.sets().map(|(x, _)| subsets(x)).collect();
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![Rational::zero(); nd];
            for &c in r {
                row[c] = int(1);
            }
            row
        })
        .collect();
    let b: Vec<Rational> = f.members.iter().map(|&m| int(m as u8)).collect();
    let Some(w) = solve(&a, &b) else {
        return Ok(JohnsonVerdict { d, certified: false, weights: None });
    };
    for (r, row) in rows.iter().enumerate() {
        let s: Rational = row.iter().map(|&c| &w[c]).sum();
        if s != b[r] {
            return Err(GdlError::Inconsistent(format!("solver certificate fails replay at k-set {r}")));
        }
    }
    Ok(JohnsonVerdict { d, certified: true, weights: Some(w) })
}
