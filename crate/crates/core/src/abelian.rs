//! Finite abelian groups given as products of cyclic groups.
//!
//! Elements are addressed by their little-endian mixed-radix rank:
//! `rank(a) = a_1 + a_2 d_1 + a_3 d_1 d_2 + ...`. Every table in the crate
//! (λ-tables, Cayley tables, solution tables, file formats) is indexed by
//! this rank.

use std::fmt;

use thiserror::Error;

/// Hard cap on group order; tables of size order² must stay in memory.
pub const MAX_ORDER: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("cyclic factor of order {0} is not allowed (need at least 2)")]
    BadModulus(u64),
    #[error("no cyclic factors given")]
    Empty,
    #[error("group order exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge,
    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element has {got} coordinates, group has {expected} factors")]
    Arity { expected: usize, got: usize },
    #[error("coordinate {value} out of range for factor {factor} of order {modulus}")]
    CoordinateOutOfRange {
        factor: usize,
        value: u64,
        modulus: u64,
    },
    #[error("image of generator {column} has order not dividing {modulus}")]
    NotHomomorphism { column: usize, modulus: u64 },
    #[error("map is not bijective (image has {image} of {order} elements)")]
    NotBijective { image: usize, order: usize },
}

/// Coordinate tuple of an element, `0 <= a_i < d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u64>);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{d_1} x ... x Z_{d_k}`. The empty product is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicDecomposition {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

impl CyclicDecomposition {
    pub fn new(moduli: Vec<u64>) -> Result<Self, AbelianError> {
        if moduli.is_empty() {
            return Err(AbelianError::Empty);
        }
        Self::with_moduli(moduli)
    }

    /// The one-element group (appears as a quotient `A/A`).
    pub fn trivial() -> Self {
        Self {
            moduli: Vec::new(),
            strides: Vec::new(),
            order: 1,
        }
    }

    fn with_moduli(moduli: Vec<u64>) -> Result<Self, AbelianError> {
        let mut strides = Vec::with_capacity(moduli.len());
        let mut order: usize = 1;
        for &d in &moduli {
            if d < 2 {
                return Err(AbelianError::BadModulus(d));
            }
            strides.push(order);
            order = order
                .checked_mul(d as usize)
                .filter(|&o| o <= MAX_ORDER)
                .ok_or(AbelianError::TooLarge)?;
        }
        Ok(Self {
            moduli,
            strides,
            order,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank_count(&self) -> usize {
        self.moduli.len()
    }

    /// Rank of the standard generator `e_j`.
    pub fn generator(&self, j: usize) -> usize {
        self.strides[j]
    }

    pub fn rank(&self, e: &Element) -> Result<usize, AbelianError> {
        if e.0.len() != self.moduli.len() {
            return Err(AbelianError::Arity {
                expected: self.moduli.len(),
                got: e.0.len(),
            });
        }
        let mut r = 0;
        for (i, (&c, &d)) in e.0.iter().zip(&self.moduli).enumerate() {
            if c >= d {
                return Err(AbelianError::CoordinateOutOfRange {
                    factor: i,
                    value: c,
                    modulus: d,
                });
            }
            r += c as usize * self.strides[i];
        }
        Ok(r)
    }

    pub fn unrank(&self, index: usize) -> Result<Element, AbelianError> {
        if index >= self.order {
            return Err(AbelianError::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(Element(
            (0..self.moduli.len())
                .map(|i| self.coord(index, i))
                .collect(),
        ))
    }

    /// Coordinate `i` of the element with rank `a`.
    #[inline]
    pub fn coord(&self, a: usize, i: usize) -> u64 {
        ((a / self.strides[i]) as u64) % self.moduli[i]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        for (i, &d) in self.moduli.iter().enumerate() {
            let d = d as usize;
            let s = a % d + b % d;
            r += if s >= d { s - d } else { s } * self.strides[i];
            a /= d;
            b /= d;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        let mut a = a;
        let mut r = 0;
        for (i, &d) in self.moduli.iter().enumerate() {
            let d = d as usize;
            let x = a % d;
            r += if x == 0 { 0 } else { d - x } * self.strides[i];
            a /= d;
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `n * a`, any sign of `n`.
    pub fn scalar(&self, n: i64, a: usize) -> usize {
        let mut a = a;
        let mut r = 0;
        for (i, &d) in self.moduli.iter().enumerate() {
            let x = (a % d as usize) as i128;
            let v = (n as i128 * x).rem_euclid(d as i128) as usize;
            r += v * self.strides[i];
            a /= d as usize;
        }
        r
    }

    /// Sum of `coef_j * x_j`.
    pub fn combination(&self, terms: &[(i64, usize)]) -> usize {
        terms
            .iter()
            .fold(0, |acc, &(n, x)| self.add(acc, self.scalar(n, x)))
    }

    pub fn additive_order(&self, a: usize) -> u64 {
        let mut a = a;
        let mut ord = 1u64;
        for &d in &self.moduli {
            let x = (a % d as usize) as u64;
            a /= d as usize;
            let o = d / gcd(d, x);
            ord = lcm(ord, o);
        }
        ord
    }

    /// Exponent of the group (lcm of the moduli).
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    /// Moduli sorted ascending; two decompositions into prime powers with the
    /// same sorted moduli are isomorphic.
    pub fn sorted_moduli(&self) -> Vec<u64> {
        let mut m = self.moduli.clone();
        m.sort_unstable();
        m
    }

    pub fn multiples_subgroup(&self, k: i64) -> Subgroup {
        let mut mask = vec![false; self.order];
        for a in 0..self.order {
            mask[self.scalar(k, a)] = true;
        }
        Subgroup::from_mask(mask)
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut h = Subgroup::zero(self.order);
        for &g in gens {
            h.extend(self, g);
        }
        h.finish();
        h
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_mask(vec![true; self.order])
    }
}

impl fmt::Display for CyclicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "C1");
        }
        for (i, d) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{d}")?;
        }
        Ok(())
    }
}

/// An additive subgroup stored as its explicit member set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn zero(group_order: usize) -> Self {
        let mut mask = vec![false; group_order];
        mask[0] = true;
        Self {
            members: vec![0],
            mask,
        }
    }

    fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Self { members, mask }
    }

    /// Adds `g` and closes under addition.
    pub(crate) fn extend(&mut self, group: &CyclicDecomposition, g: usize) {
        if self.mask[g] {
            return;
        }
        let base = self.members.clone();
        let mut x = g;
        while !self.mask[x] {
            for &h in &base {
                let y = group.add(h, x);
                self.mask[y] = true;
                self.members.push(y);
            }
            x = group.add(x, g);
        }
    }

    pub(crate) fn finish(&mut self) {
        self.members.sort_unstable();
    }

    /// Smallest subgroup containing `self` and `gens`.
    pub fn join(&self, group: &CyclicDecomposition, gens: &[usize]) -> Subgroup {
        let mut h = self.clone();
        for &g in gens {
            h.extend(group, g);
        }
        h.finish();
        h
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    /// Closure check against the ambient group.
    pub fn is_closed(&self, group: &CyclicDecomposition) -> bool {
        self.mask[0]
            && self.members.iter().all(|&a| {
                self.contains(group.neg(a))
                    && self.members.iter().all(|&b| self.contains(group.add(a, b)))
            })
    }
}

/// An additive automorphism, stored as the ranks of the images of the
/// standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianAutomorphism {
    columns: Vec<usize>,
}

impl AbelianAutomorphism {
    pub fn identity(group: &CyclicDecomposition) -> Self {
        Self {
            columns: (0..group.rank_count())
                .map(|j| group.generator(j))
                .collect(),
        }
    }

    /// Checks the order condition per column and bijectivity by enumerating
    /// the image.
    pub fn validate(
        group: &CyclicDecomposition,
        columns: Vec<usize>,
    ) -> Result<Self, AbelianError> {
        if columns.len() != group.rank_count() {
            return Err(AbelianError::Arity {
                expected: group.rank_count(),
                got: columns.len(),
            });
        }
        for (j, &c) in columns.iter().enumerate() {
            if c >= group.order() {
                return Err(AbelianError::IndexOutOfRange {
                    index: c,
                    order: group.order(),
                });
            }
            let d = group.moduli()[j];
            if group.scalar(d as i64, c) != 0 {
                return Err(AbelianError::NotHomomorphism {
                    column: j,
                    modulus: d,
                });
            }
        }
        let candidate = Self { columns };
        let mut seen = vec![false; group.order()];
        let mut image = 0;
        for b in 0..group.order() {
            let x = candidate.apply(group, b);
            if !seen[x] {
                seen[x] = true;
                image += 1;
            }
        }
        if image != group.order() {
            return Err(AbelianError::NotBijective {
                image,
                order: group.order(),
            });
        }
        Ok(candidate)
    }

    /// Builds without checks; callers guarantee validity.
    pub(crate) fn from_columns_unchecked(columns: Vec<usize>) -> Self {
        Self { columns }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    #[inline]
    pub fn apply(&self, group: &CyclicDecomposition, b: usize) -> usize {
        let mut acc = 0;
        for (j, &c) in self.columns.iter().enumerate() {
            let x = group.coord(b, j);
            if x != 0 {
                acc = group.add(acc, group.scalar(x as i64, c));
            }
        }
        acc
    }

    /// `self ∘ other` as maps.
    pub fn compose(&self, group: &CyclicDecomposition, other: &Self) -> Self {
        Self {
            columns: other
                .columns
                .iter()
                .map(|&c| self.apply(group, c))
                .collect(),
        }
    }

    pub fn is_identity(&self, group: &CyclicDecomposition) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, &c)| c == group.generator(j))
    }

    /// The map as a permutation table over ranks.
    pub fn to_perm(&self, group: &CyclicDecomposition) -> Vec<u32> {
        (0..group.order())
            .map(|b| self.apply(group, b) as u32)
            .collect()
    }
}

/// All automorphisms of `group`, in lexicographic order of their column
/// ranks (first column most significant).
pub fn enumerate_automorphisms(group: &CyclicDecomposition) -> Vec<AbelianAutomorphism> {
    let k = group.rank_count();
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            let d = group.moduli()[j] as i64;
            (0..group.order())
                .filter(|&c| group.scalar(d, c) == 0)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if k == 0 {
        return vec![AbelianAutomorphism { columns: vec![] }];
    }
    loop {
        let columns: Vec<usize> = idx
            .iter()
            .enumerate()
            .map(|(j, &i)| candidates[j][i])
            .collect();
        if let Ok(a) = AbelianAutomorphism::validate(group, columns) {
            out.push(a);
        }
        // odometer with the last column fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Number of automorphisms, counted without materialising them.
pub fn automorphism_count(group: &CyclicDecomposition) -> u64 {
    // product formula would need the p-primary structure; counting by
    // enumeration is fine at the orders where this is called
    enumerate_automorphisms(group).len() as u64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> CyclicDecomposition {
        CyclicDecomposition::new(m.to_vec()).unwrap()
    }

    fn el(v: &[u64]) -> Element {
        Element(v.to_vec())
    }

    #[test]
    fn rank_examples() {
        let a = g(&[4, 4]);
        assert_eq!(a.rank(&el(&[0, 0])).unwrap(), 0);
        assert_eq!(a.rank(&el(&[2, 1])).unwrap(), 6);
        assert_eq!(g(&[3, 27]).rank(&el(&[1, 2])).unwrap(), 7);
    }

    #[test]
    fn rank_errors() {
        let a = g(&[4, 4]);
        assert!(matches!(
            a.unrank(16),
            Err(AbelianError::IndexOutOfRange {
                index: 16,
                order: 16
            })
        ));
        assert!(a.rank(&el(&[4, 0])).is_err());
        assert!(a.rank(&el(&[1])).is_err());
        assert_eq!(
            CyclicDecomposition::new(vec![4, 1]),
            Err(AbelianError::BadModulus(1))
        );
        assert_eq!(CyclicDecomposition::new(vec![]), Err(AbelianError::Empty));
    }

    #[test]
    fn rank_unrank_inverse_exhaustive() {
        for m in [
            vec![4, 4],
            vec![3, 27],
            vec![2, 2, 2, 2],
            vec![25, 25],
            vec![7, 343],
        ] {
            let a = g(&m);
            for i in 0..a.order() {
                assert_eq!(a.rank(&a.unrank(i).unwrap()).unwrap(), i);
            }
        }
    }

    #[test]
    fn scalar_examples() {
        let a = g(&[4, 4]);
        let x = a.rank(&el(&[1, 3])).unwrap();
        assert_eq!(a.unrank(a.scalar(2, x)).unwrap(), el(&[2, 2]));
        assert_eq!(a.scalar(0, x), 0);
        let y = a.rank(&el(&[1, 0])).unwrap();
        assert_eq!(a.unrank(a.scalar(-1, y)).unwrap(), el(&[3, 0]));
    }

    #[test]
    fn add_matches_coordinates() {
        let a = g(&[3, 27]);
        for x in 0..a.order() {
            for y in 0..a.order() {
                let ex = a.unrank(x).unwrap().0;
                let ey = a.unrank(y).unwrap().0;
                let s: Vec<u64> = ex
                    .iter()
                    .zip(&ey)
                    .zip(a.moduli())
                    .map(|((p, q), d)| (p + q) % d)
                    .collect();
                assert_eq!(a.add(x, y), a.rank(&Element(s)).unwrap());
            }
            assert_eq!(a.add(x, a.neg(x)), 0);
        }
    }

    #[test]
    fn automorphism_examples() {
        let a = g(&[4, 4]);
        let id = AbelianAutomorphism::identity(&a);
        assert!(AbelianAutomorphism::validate(&a, id.columns().to_vec()).is_ok());
        let c = vec![a.rank(&el(&[3, 0])).unwrap(), a.rank(&el(&[0, 1])).unwrap()];
        assert!(AbelianAutomorphism::validate(&a, c).is_ok());
        let c = vec![a.rank(&el(&[2, 0])).unwrap(), a.rank(&el(&[0, 1])).unwrap()];
        assert_eq!(
            AbelianAutomorphism::validate(&a, c),
            Err(AbelianError::NotBijective {
                image: 8,
                order: 16
            })
        );
        let b = g(&[2, 4]);
        // (0,1) has order 4, cannot be the image of a generator of order 2
        let c = vec![b.rank(&el(&[0, 1])).unwrap(), b.rank(&el(&[1, 0])).unwrap()];
        assert!(matches!(
            AbelianAutomorphism::validate(&b, c),
            Err(AbelianError::NotHomomorphism { column: 0, .. })
        ));
    }

    #[test]
    fn automorphisms_are_homomorphisms() {
        for m in [vec![4, 4], vec![3, 9], vec![2, 2, 2]] {
            let a = g(&m);
            for phi in enumerate_automorphisms(&a) {
                for x in 0..a.order() {
                    for y in 0..a.order() {
                        assert_eq!(
                            phi.apply(&a, a.add(x, y)),
                            a.add(phi.apply(&a, x), phi.apply(&a, y))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphism_count(&g(&[4])), 2);
        assert_eq!(automorphism_count(&g(&[2, 2])), 6);
        assert_eq!(automorphism_count(&g(&[4, 4])), 96);
        assert_eq!(automorphism_count(&g(&[2, 2, 2])), 168);
        assert_eq!(automorphism_count(&g(&[2, 4])), 8);
    }

    #[test]
    fn subgroup_generated_examples() {
        let a = g(&[4, 4]);
        assert_eq!(a.subgroup_generated(&[]).members(), &[0]);
        let x = a.rank(&el(&[2, 0])).unwrap();
        assert_eq!(a.subgroup_generated(&[x]).members(), &[0, 2]);
        assert_eq!(a.subgroup_generated(&[1, 4]).order(), 16);
        let h = a.subgroup_generated(&[6, 9]);
        assert!(h.is_closed(&a));
    }

    #[test]
    fn multiples_examples() {
        let a = g(&[4, 4]);
        let two = a.multiples_subgroup(2);
        let expect: Vec<usize> = [[0, 0], [2, 0], [0, 2], [2, 2]]
            .iter()
            .map(|c| a.rank(&el(c)).unwrap())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(two.members(), expect.as_slice());
        let b = g(&[3, 27]);
        let nine = b.multiples_subgroup(9);
        let expect: Vec<usize> = [[0, 0], [0, 9], [0, 18]]
            .iter()
            .map(|c| b.rank(&el(c)).unwrap())
            .collect();
        assert_eq!(nine.members(), expect.as_slice());
        assert_eq!(b.multiples_subgroup(1).order(), 81);
    }

    #[test]
    fn p_multiples_orders() {
        for p in [2u64, 3, 5] {
            assert_eq!(
                g(&[p * p, p * p]).multiples_subgroup(p as i64).order() as u64,
                p * p
            );
            assert_eq!(
                g(&[p, p * p * p]).multiples_subgroup(p as i64).order() as u64,
                p * p
            );
        }
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(7) && !is_prime(9));
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }
}
