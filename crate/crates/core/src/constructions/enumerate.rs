use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::abelian::{AbelianAutomorphism, CyclicDecomposition};
use crate::brace::{element_fingerprints, is_isomorphic, Brace};
use crate::exec::Exec;

use super::auts::AutTable;
use super::ConstructionError;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub max_order: usize,
    pub max_aut: usize,
    /// Skip both guards.
    pub force: bool,
    pub exec: Exec,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            max_order: 16,
            max_aut: 2000,
            force: false,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumStats {
    pub aut_count: usize,
    /// Search nodes, one per tentative λ assignment.
    pub nodes: u64,
    /// Pairs of representatives compared with the isomorphism search.
    pub iso_pairs_checked: usize,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    /// One brace per isomorphism class, the trivial brace first.
    pub braces: Vec<Brace>,
    /// Number of λ-maps on the fixed additive group.
    pub labeled_count: u64,
    pub iso_count: usize,
    pub stats: EnumStats,
}

const UNSET: u32 = u32::MAX;

#[derive(Clone)]
struct State<'a> {
    auts: &'a AutTable,
    add: &'a [u32],
    n: usize,
    lam: Vec<u32>,
    trail: Vec<usize>,
}

impl State<'_> {
    /// Assigns `λ_x = φ` and closes under `λ_{u∘v} = λ_u λ_v`. On conflict
    /// the state is left dirty; callers roll back with [`State::undo`].
    fn assign(&mut self, x: usize, phi: usize) -> bool {
        self.lam[x] = phi as u32;
        self.trail.push(x);
        let mut queue = vec![x];
        while let Some(u) = queue.pop() {
            let mut i = 0;
            while i < self.trail.len() {
                let v = self.trail[i];
                i += 1;
                for (a, b) in [(u, v), (v, u)] {
                    let la = self.lam[a] as usize;
                    let c = self.add[a * self.n + self.auts.apply(la, b)] as usize;
                    let target = self.auts.comp(la, self.lam[b] as usize) as u32;
                    if self.lam[c] == UNSET {
                        self.lam[c] = target;
                        self.trail.push(c);
                        queue.push(c);
                    } else if self.lam[c] != target {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.lam[x] = UNSET;
        }
    }
}

#[derive(Default)]
struct Found {
    keys: BTreeSet<Vec<u32>>,
    labeled: u64,
    nodes: u64,
}

fn dfs(st: &mut State, found: &mut Found) {
    let Some(x) = st.lam.iter().position(|&l| l == UNSET) else {
        found.labeled += 1;
        found.keys.insert(canonical(st.auts, &st.lam));
        return;
    };
    for phi in 0..st.auts.len() {
        found.nodes += 1;
        let mark = st.trail.len();
        if st.assign(x, phi) {
            dfs(st, found);
        }
        st.undo(mark);
    }
}

/// Transport of `lam` along `ψ`: `λ'_{ψ(t)} = ψ λ_t ψ^{-1}`.
fn transport(auts: &AutTable, psi: usize, lam: &[u32], out: &mut [u32]) {
    for (t, &l) in lam.iter().enumerate() {
        out[auts.apply(psi, t)] = auts.conj(psi, l as usize) as u32;
    }
}

/// Lexicographically least transport over `Aut(A)`.
fn canonical(auts: &AutTable, lam: &[u32]) -> Vec<u32> {
    let mut best = lam.to_vec();
    let mut cur = vec![0u32; lam.len()];
    for psi in 0..auts.len() {
        transport(auts, psi, lam, &mut cur);
        if cur < best {
            best.copy_from_slice(&cur);
        }
    }
    best
}

fn stabilizer_size(auts: &AutTable, lam: &[u32]) -> usize {
    let mut cur = vec![0u32; lam.len()];
    (0..auts.len())
        .filter(|&psi| {
            transport(auts, psi, lam, &mut cur);
            cur == lam
        })
        .count()
}

/// Every brace with additive group `Z_{d_1} x ... x Z_{d_k}`, up to
/// isomorphism.
///
/// λ-maps are built by backtracking: the smallest element without a λ gets
/// each automorphism in turn, and the cocycle law is closed over all pairs
/// of assigned elements, which either fills in further values or rejects the
/// branch. Complete maps are reduced to a canonical form under relabelling
/// by `Aut(A)`. The representatives are then cross-checked two ways: the
/// orbit sizes `|Aut(A)| / |Stab|` must add up to the labelled count, and
/// no two representatives with equal fingerprints may be isomorphic.
pub fn enumerate_braces(
    moduli: &[u64],
    opts: EnumOptions,
) -> Result<EnumerationResult, ConstructionError> {
    let group = CyclicDecomposition::new(moduli.to_vec())?;
    let n = group.order();
    if !opts.force && n > opts.max_order {
        return Err(guard(n, None, opts));
    }
    let auts = AutTable::build(&group, (!opts.force).then_some(opts.max_aut))
        .map_err(|m| guard(n, Some(m), opts))?;
    let m = auts.len();
    let add: Vec<u32> = (0..n * n).map(|i| group.add(i / n, i % n) as u32).collect();
    let root = {
        let mut st = State {
            auts: &auts,
            add: &add,
            n,
            lam: vec![UNSET; n],
            trail: Vec::new(),
        };
        assert!(st.assign(0, auts.identity));
        st
    };

    // element 1 is the first unassigned one; split on its λ
    let found = {
        let parts = opts.exec.map_collect(m, |phi| {
            let mut st = root.clone();
            let mut f = Found {
                nodes: 1,
                ..Found::default()
            };
            if st.assign(1, phi) {
                dfs(&mut st, &mut f);
            }
            f
        });
        parts.into_iter().fold(Found::default(), |mut acc, f| {
            acc.keys.extend(f.keys);
            acc.labeled += f.labeled;
            acc.nodes += f.nodes;
            acc
        })
    };

    let orbit_total: u64 = found
        .keys
        .iter()
        .map(|k| (m / stabilizer_size(&auts, k)) as u64)
        .sum();
    if orbit_total != found.labeled {
        return Err(ConstructionError::Inconsistent(format!(
            "orbit sizes add to {orbit_total}, search found {} labelled maps",
            found.labeled
        )));
    }

    let mut keys: Vec<Vec<u32>> = found.keys.into_iter().collect();
    let id = auts.identity as u32;
    keys.sort_by_key(|k| (k.iter().filter(|&&l| l != id).count(), k.clone()));
    let braces = keys
        .iter()
        .map(|k| {
            let lambdas: Vec<AbelianAutomorphism> =
                k.iter().map(|&l| auts.auts[l as usize].clone()).collect();
            Brace::new(group.clone(), lambdas)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut buckets: BTreeMap<Vec<_>, Vec<usize>> = BTreeMap::new();
    for (i, b) in braces.iter().enumerate() {
        let mut fp = element_fingerprints(b);
        fp.sort();
        buckets.entry(fp).or_default().push(i);
    }
    let pairs: Vec<(usize, usize)> = buckets
        .values()
        .flat_map(|idx| {
            idx.iter()
                .enumerate()
                .flat_map(move |(s, &i)| idx[s + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let clash = opts.exec.find_first(pairs.len() as u64, |k| {
        let (i, j) = pairs[k as usize];
        is_isomorphic(&braces[i], &braces[j]).map(|_| (i, j))
    });
    if let Some((_, (i, j))) = clash {
        return Err(ConstructionError::Inconsistent(format!(
            "representatives {i} and {j} are isomorphic"
        )));
    }

    Ok(EnumerationResult {
        iso_count: braces.len(),
        braces,
        labeled_count: found.labeled,
        stats: EnumStats {
            aut_count: m,
            nodes: found.nodes,
            iso_pairs_checked: pairs.len(),
        },
    })
}

pub(crate) fn guard(
    order: usize,
    aut_count: Option<usize>,
    opts: EnumOptions,
) -> ConstructionError {
    ConstructionError::GuardExceeded {
        order,
        max_order: opts.max_order,
        aut_count: aut_count.unwrap_or(0),
        max_aut: opts.max_aut,
    }
}
