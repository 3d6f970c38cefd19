//! Finite groups as Cayley tables, the order-`p^4` group models and the
//! classification of a brace's multiplicative group.

mod classify;
mod models;

pub use classify::{
    abelian_invariants, classify_group, classify_multiplicative_group, Classification,
};
pub use models::{
    build_model, smallest_non_residue, verify_presentation_relations, GroupModel, RelationReport,
    Tag,
};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::brace::Brace;
use crate::exec::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("tag {tag} is not modelled at p = {p}")]
    UnsupportedPrime { tag: Tag, p: u64 },
    #[error("alpha = {alpha} is not in the residue class required by {tag} at p = {p}")]
    BadAlpha { tag: Tag, p: u64, alpha: u64 },
    #[error("relation {relation} fails")]
    RelationFailure { relation: String },
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("group of order {order} is not of order p^4")]
    BadOrder { order: usize },
    #[error("no model matches a nonabelian group with fingerprint {0:?}")]
    NoMatch(Box<GroupFingerprint>),
}

/// A finite group given by its full multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl FiniteGroup {
    /// Tabulates `mul`. The identity is located, inverses are computed, and
    /// every row and column must be a permutation; associativity is not
    /// checked here (see [`FiniteGroup::associativity_witness`]).
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Option<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return None;
                }
                table.push(c as u32);
            }
        }
        let identity = (0..n).find(|&e| {
            (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
        })?;
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] {
                    return None;
                }
                seen[c] = true;
                if c == identity {
                    inv[a] = b as u32;
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] {
                    return None;
                }
                seen[c] = true;
            }
        }
        Some(Self {
            n,
            table,
            inv,
            identity,
        })
    }

    /// `(A,∘)` of a brace.
    pub fn from_brace(b: &Brace) -> Self {
        let n = b.order();
        let table = b.circ_table();
        let inv = (0..n).map(|a| b.circ_inverse(a) as u32).collect();
        Self {
            n,
            table,
            inv,
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^{-1} b a`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), b), a)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.commutes(a, b)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.n).all(|b| self.commutes(a, b))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_central(a)).collect()
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    pub fn derived_subgroup_order(&self) -> usize {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.generated(&comms).iter().filter(|&&x| x).count()
    }

    /// First `(a, b, c)` with `(ab)c != a(bc)`: exhaustive up to
    /// `exhaustive_limit` triples, seeded samples beyond.
    pub fn associativity_witness(
        &self,
        exec: Exec,
        exhaustive_limit: u64,
        samples: u64,
        seed: u64,
    ) -> (Option<(usize, usize, usize)>, u64, bool) {
        let (hit, checked, exhaustive) =
            exec::sweep_tuples(exec, 3, self.n, exhaustive_limit, samples, seed, |t| {
                self.mul(self.mul(t[0], t[1]), t[2]) == self.mul(t[0], self.mul(t[1], t[2]))
            });
        (hit.map(|t| (t[0], t[1], t[2])), checked, exhaustive)
    }

    /// Per-element isomorphism invariants: order, centralizer size and the
    /// number of `p`-th roots for each prime `p` dividing the group order.
    fn element_invariants(&self) -> Vec<(u64, usize, Vec<usize>)> {
        let primes = crate::abelian::prime_factors(self.n as u64);
        let mut roots = vec![vec![0usize; primes.len()]; self.n];
        for y in 0..self.n {
            for (i, &p) in primes.iter().enumerate() {
                roots[self.pow(y, p as i64)][i] += 1;
            }
        }
        (0..self.n)
            .map(|a| {
                let cent = (0..self.n).filter(|&b| self.commutes(a, b)).count();
                (self.element_order(a), cent, std::mem::take(&mut roots[a]))
            })
            .collect()
    }
}

/// Cheap isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    /// element order -> count
    pub order_histogram: BTreeMap<u64, usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    let mut order_histogram = BTreeMap::new();
    let mut exponent = 1;
    for a in 0..g.order() {
        let o = g.element_order(a);
        exponent = crate::abelian::lcm(exponent, o);
        *order_histogram.entry(o).or_insert(0) += 1;
    }
    GroupFingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        exponent,
        order_histogram,
        center_order: g.center().len(),
        derived_order: g.derived_subgroup_order(),
    }
}

/// A generating set chosen greedily: repeatedly the least element of
/// largest order outside the subgroup generated so far.
pub fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let orders: Vec<u64> = (0..g.order()).map(|a| g.element_order(a)).collect();
    let mut gens = Vec::new();
    let mut mask = g.generated(&gens);
    while mask.iter().any(|&x| !x) {
        let next = (0..g.order())
            .filter(|&a| !mask[a])
            .max_by_key(|&a| (orders[a], std::cmp::Reverse(a)))
            .expect("some element is missing");
        gens.push(next);
        mask = g.generated(&gens);
    }
    gens
}

/// Finds an isomorphism `φ: G -> H` as a map on element indices.
///
/// Images of a generating set of `G` are chosen by backtracking among
/// elements of `H` with the same invariants. After each choice the map is
/// extended along the Cayley graph of the generators chosen so far
/// (`φ(xg) = φ(x)φ(g)`); any clash or loss of injectivity prunes the branch.
/// A consistent extension along every edge is a homomorphism, so a total
/// injective extension is an isomorphism.
pub fn find_group_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() || fingerprint(g) != fingerprint(h) {
        return None;
    }
    let ig = g.element_invariants();
    let ih = h.element_invariants();
    let gens = greedy_generators(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| ih[y] == ig[x]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let j = images.len();
    if j == gens.len() {
        return extend(g, h, gens, images).filter(|m| m.iter().all(|&x| x != usize::MAX));
    }
    for &y in &candidates[j] {
        images.push(y);
        if extend(g, h, &gens[..=j], images).is_some() {
            if let Some(found) = search(g, h, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let z = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[z] {
                    return None;
                }
                used[z] = true;
                map[y] = z;
                stack.push(y);
            } else if map[y] != z {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_product(m: &[usize]) -> FiniteGroup {
        let n: usize = m.iter().product();
        FiniteGroup::from_fn(n, |a, b| {
            let (mut x, mut y, mut out, mut stride) = (a, b, 0, 1);
            for &d in m {
                out += ((x % d + y % d) % d) * stride;
                x /= d;
                y /= d;
                stride *= d;
            }
            out
        })
        .unwrap()
    }

    #[test]
    fn abelian_fingerprint() {
        let g = cyclic_product(&[9, 9]);
        let f = fingerprint(&g);
        assert!(f.abelian);
        assert_eq!(f.exponent, 9);
        assert_eq!(f.center_order, 81);
        assert_eq!(f.derived_order, 1);
        assert_eq!(f.order_histogram.values().sum::<usize>(), 81);
    }

    #[test]
    fn isomorphism_between_relabelings() {
        let a = cyclic_product(&[4, 2]);
        let b = cyclic_product(&[2, 4]);
        let m = find_group_isomorphism(&a, &b).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(m[a.mul(x, y)], b.mul(m[x], m[y]));
            }
        }
        assert!(find_group_isomorphism(&a, &cyclic_product(&[8])).is_none());
        assert!(find_group_isomorphism(&a, &cyclic_product(&[2, 2, 2])).is_none());
    }

    #[test]
    fn rejects_non_latin_tables() {
        assert!(FiniteGroup::from_fn(3, |a, _| a).is_none());
    }
}
