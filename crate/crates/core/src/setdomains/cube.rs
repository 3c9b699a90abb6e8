use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GdlError, Result};

pub const MAX_ARITY: usize = 16;

/// A Boolean function on `{0,1}^m`. Bit `i` of an input index is `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeFunction {
    m: usize,
    table: Vec<bool>,
}

impl CubeFunction {
    pub fn from_table(m: usize, table: Vec<bool>) -> Result<Self> {
        if m > MAX_ARITY {
            return Err(GdlError::param(format!("arity {m} exceeds {MAX_ARITY}")));
        }
        if table.len() != 1 << m {
            return Err(GdlError::param(format!("truth table of arity {m} needs {} entries", 1 << m)));
        }
        Ok(CubeFunction { m, table })
    }

    pub fn from_fn(m: usize, f: impl Fn(u32) -> bool) -> Result<Self> {
        Self::from_table(m, (0..1u32 << m).map(f).collect())
    }

    /// Truth table packed into an integer, entry `x` at bit `x` (`m <= 6`).
    pub fn from_bits(m: usize, bits: u64) -> Result<Self> {
        if m > 6 {
            return Err(GdlError::param("packed truth tables need m <= 6"));
        }
        Self::from_fn(m, |x| bits >> x & 1 == 1)
    }

    pub fn constant(m: usize, value: bool) -> Result<Self> {
        Self::from_fn(m, |_| value)
    }
    pub fn and(m: usize) -> Result<Self> {
        Self::from_fn(m, |x| x == (1 << m) - 1)
    }
    pub fn xor(m: usize) -> Result<Self> {
        Self::from_fn(m, |x| x.count_ones() % 2 == 1)
    }

    /// Parses a named function: `const0`, `const1`, `and<m>`, `xor<m>`,
    /// `or<m>`, or `table:<m>:<bits>` with the truth table as a 0/1 string.
    pub fn parse(s: &str) -> Result<Self> {
        let arity = |p: &str| p.parse::<usize>().map_err(|_| GdlError::param(format!("bad arity in {s:?}")));
        match s {
            "const0" => return Self::constant(0, false),
            "const1" => return Self::constant(0, true),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("table:") {
            let (m, bits) = rest.split_once(':').ok_or_else(|| GdlError::param("expected table:<m>:<bits>"))?;
            let table = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(GdlError::param("truth table must be a 0/1 string")),
                })
                .collect::<Result<_>>()?;
            return Self::from_table(arity(m)?, table);
        }
        if let Some(m) = s.strip_prefix("and") {
            return Self::and(arity(m)?);
        }
        if let Some(m) = s.strip_prefix("xor") {
            return Self::xor(arity(m)?);
        }
        if let Some(m) = s.strip_prefix("or") {
            return Self::from_fn(arity(m)?, |x| x != 0);
        }
        Err(GdlError::param(format!("unknown cube function {s:?}")))
    }

    pub fn arity(&self) -> usize {
        self.m
    }
    pub fn eval(&self, x: u32) -> bool {
        self.table[x as usize]
    }
    pub fn table(&self) -> &[bool] {
        &self.table
    }
    pub fn complement(&self) -> Self {
        CubeFunction { m: self.m, table: self.table.iter().map(|b| !b).collect() }
    }
}

/// Coefficients of the multilinear expansion, indexed by monomial bitmask.
pub fn multilinear_coefficients(f: &CubeFunction) -> Vec<i64> {
    let mut c: Vec<i64> = f.table.iter().map(|&b| b as i64).collect();
    for i in 0..f.m {
        let bit = 1 << i;
        for mask in 0..c.len() {
            if mask & bit != 0 {
                c[mask] -= c[mask ^ bit];
            }
        }
    }
    c
}

pub fn multilinear_degree(f: &CubeFunction) -> usize {
    multilinear_coefficients(f)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(mask, _)| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn degree16(t: u16) -> usize {
    let f = CubeFunction::from_bits(4, t as u64).expect("arity 4");
    multilinear_degree(&f)
}

/// Input maps `x -> sigma(x) xor flip` for all 24 permutations and 16 flips.
fn input_maps() -> Vec<[u8; 16]> {
    let mut perms = Vec::new();
    let mut p = [0usize, 1, 2, 3];
    permute(&mut p, 0, &mut perms);
    let mut out = Vec::with_capacity(384);
    for perm in &perms {
        for flip in 0..16u8 {
            let mut map = [0u8; 16];
            for (x, slot) in map.iter_mut().enumerate() {
                let mut y = 0u8;
                for (i, &pi) in perm.iter().enumerate() {
                    y |= ((x >> i & 1) as u8) << pi;
                }
                *slot = y ^ flip;
            }
            out.push(map);
        }
    }
    out
}

fn permute(p: &mut [usize; 4], i: usize, out: &mut Vec<[usize; 4]>) {
    if i == 4 {
        out.push(*p);
        return;
    }
    for j in i..4 {
        p.swap(i, j);
        permute(p, i + 1, out);
        p.swap(i, j);
    }
}

fn canonical(t: u16, maps: &[[u8; 16]]) -> u16 {
    let mut best = u16::MAX;
    for map in maps {
        let mut u = 0u16;
        for (x, &y) in map.iter().enumerate() {
            u |= (t >> y & 1) << x;
        }
        best = best.min(u).min(!u);
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeClass {
    /// Least truth table in the class, entry `x` at bit `x`.
    pub representative: u16,
    pub degree: usize,
    pub members: usize,
    /// Name from the known list, if the class contains that function.
    pub name: Option<String>,
}

/// The known degree-2 list on four inputs, as (name, truth table).
pub fn known_degree2_list() -> Vec<(&'static str, u16)> {
    let t = |f: &dyn Fn(u32, u32, u32, u32) -> bool| -> u16 {
        (0..16u32).fold(0, |acc, v| acc | (f(v & 1, v >> 1 & 1, v >> 2 & 1, v >> 3 & 1) as u16) << v)
    };
    vec![
        ("0", 0),
        ("x", t(&|x, _, _, _| x == 1)),
        ("xy", t(&|x, y, _, _| x & y == 1)),
        ("x XOR y", t(&|x, y, _, _| x ^ y == 1)),
        ("xy+(1-x)z", t(&|x, y, z, _| if x == 1 { y == 1 } else { z == 1 })),
        ("Ind(x=y=z)", t(&|x, y, z, _| x == y && y == z)),
        ("Ind(x<=y<=z<=w OR x>=y>=z>=w)", t(&|x, y, z, w| (x <= y && y <= z && z <= w) || (x >= y && y >= z && z >= w))),
    ]
}

/// All Boolean functions of degree at most 2 on four inputs, up to input
/// permutation, input negation and output complement.
pub fn classify_degree2_small() -> Vec<CubeClass> {
    let maps = input_maps();
    let low: Vec<u16> = (0..=u16::MAX).into_par_iter().filter(|&t| degree16(t) <= 2).collect();
    let mut classes: BTreeMap<u16, usize> = BTreeMap::new();
    for c in low.par_iter().map(|&t| canonical(t, &maps)).collect::<Vec<_>>() {
        *classes.entry(c).or_default() += 1;
    }
    let names: Vec<(u16, &str)> = known_degree2_list().into_iter().map(|(n, t)| (canonical(t, &maps), n)).collect();
    classes
        .into_iter()
        .map(|(rep, members)| CubeClass {
            representative: rep,
            degree: degree16(rep),
            members,
            name: names.iter().find(|(c, _)| *c == rep).map(|(_, n)| n.to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(multilinear_degree(&CubeFunction::xor(2).unwrap()), 2);
        assert_eq!(multilinear_degree(&CubeFunction::constant(3, true).unwrap()), 0);
        assert_eq!(multilinear_degree(&CubeFunction::and(3).unwrap()), 3);
        // x XOR y = x + y - 2xy over the reals
        assert_eq!(multilinear_coefficients(&CubeFunction::xor(2).unwrap()), vec![0, 1, 1, -2]);
    }

    #[test]
    fn equal_triple_expansion() {
        let f = CubeFunction::from_fn(3, |v| v == 0 || v == 7).unwrap();
        // 1 - x - y - z + xy + xz + yz
        assert_eq!(multilinear_coefficients(&f), vec![1, -1, -1, 1, -1, 1, 1, 0]);
    }

    #[test]
    fn seven_classes() {
        let classes = classify_degree2_small();
        assert_eq!(classes.len(), 7);
        assert!(classes.iter().all(|c| c.name.is_some() && c.degree <= 2));
        let total: usize = classes.iter().map(|c| c.members).sum();
        let direct = (0..=u16::MAX).filter(|&t| degree16(t) <= 2).count();
        assert_eq!(total, direct);
    }

    #[test]
    fn parse_names() {
        assert_eq!(CubeFunction::parse("xor2").unwrap(), CubeFunction::xor(2).unwrap());
        assert_eq!(CubeFunction::parse("table:2:0110").unwrap(), CubeFunction::xor(2).unwrap());
        assert!(CubeFunction::parse("nand").is_err());
    }
}
