use std::collections::HashMap;

use crate::abelian::{enumerate_automorphisms, AbelianAutomorphism, CyclicDecomposition};

/// `Aut(A,+)` with permutation tables and a composition table, indexed in
/// the order of [`enumerate_automorphisms`].
pub(crate) struct AutTable {
    pub auts: Vec<AbelianAutomorphism>,
    pub perms: Vec<Vec<u32>>,
    pub identity: usize,
    /// `compose[i * m + j]` is the index of `auts[i] ∘ auts[j]`.
    pub compose: Vec<u32>,
    pub inverse: Vec<u32>,
}

impl AutTable {
    /// Enumerates `Aut(A)`, or returns its size alone if it exceeds `cap`.
    pub fn build(group: &CyclicDecomposition, cap: Option<usize>) -> Result<Self, usize> {
        let auts = enumerate_automorphisms(group);
        match cap {
            Some(c) if auts.len() > c => Err(auts.len()),
            _ => Ok(Self::from_auts(group, auts)),
        }
    }

    fn from_auts(group: &CyclicDecomposition, auts: Vec<AbelianAutomorphism>) -> Self {
        let m = auts.len();
        let perms: Vec<Vec<u32>> = auts.iter().map(|a| a.to_perm(group)).collect();
        let index: HashMap<&[usize], usize> = auts
            .iter()
            .enumerate()
            .map(|(i, a)| (a.columns(), i))
            .collect();
        let gens: Vec<usize> = (0..group.rank_count())
            .map(|j| group.generator(j))
            .collect();
        let identity = index[gens.as_slice()];
        let mut compose = vec![0u32; m * m];
        let mut cols = vec![0usize; gens.len()];
        for i in 0..m {
            for j in 0..m {
                for (slot, &c) in cols.iter_mut().zip(auts[j].columns()) {
                    *slot = perms[i][c] as usize;
                }
                compose[i * m + j] = index[cols.as_slice()] as u32;
            }
        }
        let inverse = (0..m)
            .map(|i| {
                (0..m)
                    .find(|&j| compose[i * m + j] as usize == identity)
                    .expect("group") as u32
            })
            .collect();
        Self {
            auts,
            perms,
            identity,
            compose,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.auts.len()
    }

    #[inline]
    pub fn comp(&self, i: usize, j: usize) -> usize {
        self.compose[i * self.auts.len() + j] as usize
    }

    #[inline]
    pub fn apply(&self, i: usize, x: usize) -> usize {
        self.perms[i][x] as usize
    }

    /// `ψ φ ψ^{-1}`.
    #[inline]
    pub fn conj(&self, psi: usize, phi: usize) -> usize {
        self.comp(self.comp(psi, phi), self.inverse[psi] as usize)
    }
}
