//! Involutive set-theoretic solutions of the Yang–Baxter equation attached
//! to braces, their axiom checks, retractions and multipermutation level.
//!
//! Level convention: the least `n` with `|Ret^n(X)| = 1`, so a one-point
//! solution has level 0 and any solution whose left maps all coincide on a
//! carrier with more than one point has level 1.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::brace::Brace;
use crate::exec::{sweep_tuples, Exec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum YbeError {
    #[error("solution property fails: {0}")]
    PropertyFailure(String),
    #[error("retraction is not well defined at ({x}, {y})")]
    NotWellDefined { x: usize, y: usize },
    #[error("table has {got} entries, expected {expected}")]
    WrongTableSize { expected: usize, got: usize },
}

/// `r(x, y) = (σ_x(y), τ_y(x))` on `{0..n}`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbeSolution {
    n: usize,
    table: Vec<(u32, u32)>,
}

impl YbeSolution {
    pub fn from_table(n: usize, table: Vec<(u32, u32)>) -> Result<Self, YbeError> {
        if table.len() != n * n {
            return Err(YbeError::WrongTableSize {
                expected: n * n,
                got: table.len(),
            });
        }
        if let Some(i) = table
            .iter()
            .position(|&(u, v)| u as usize >= n || v as usize >= n)
        {
            return Err(YbeError::PropertyFailure(format!("entry {i} out of range")));
        }
        Ok(Self { n, table })
    }

    /// The twist `r(x, y) = (y, x)`.
    pub fn twist(n: usize) -> Self {
        let table = (0..n * n)
            .map(|i| ((i % n) as u32, (i / n) as u32))
            .collect();
        Self { n, table }
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[(u32, u32)] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        let (u, v) = self.table[x * self.n + y];
        (u as usize, v as usize)
    }

    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.apply(x, y).0
    }

    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.apply(x, y).1
    }
}

/// `r(x, y) = (λ_x(y), λ_u^{-1}(x))` with `u = λ_x(y)`. The second entry is
/// compared against `u^{-1}∘x∘y`; the solution is also checked to be
/// involutive and non-degenerate before it is returned.
pub fn solution_from_brace(b: &Brace) -> Result<YbeSolution, YbeError> {
    let n = b.order();
    let rows = Exec::default().map_collect(n, |x| {
        (0..n)
            .map(|y| {
                let u = b.lambda(x, y);
                let v = b.lambda_inv(u, x);
                let alt = b.circ(b.circ(b.circ_inverse(u), x), y);
                (v == alt).then_some((u as u32, v as u32)).ok_or((x, y))
            })
            .collect::<Result<Vec<_>, _>>()
    });
    let mut table = Vec::with_capacity(n * n);
    for row in rows {
        let row = row.map_err(|(x, y)| {
            YbeError::PropertyFailure(format!("two formulas for v disagree at ({x}, {y})"))
        })?;
        table.extend(row);
    }
    let r = YbeSolution { n, table };
    if let Some((x, y)) = involutivity_witness(&r) {
        return Err(YbeError::PropertyFailure(format!(
            "r^2 != id at ({x}, {y})"
        )));
    }
    if let Some(w) = nondegeneracy_witness(&r) {
        return Err(YbeError::PropertyFailure(format!("degenerate: {w:?}")));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "side", rename_all = "snake_case")]
pub enum Degeneracy {
    /// `y ↦ σ_x(y)` is not injective: `σ_x(y1) = σ_x(y2)`.
    Left { x: usize, y1: usize, y2: usize },
    /// `x ↦ τ_y(x)` is not injective.
    Right { y: usize, x1: usize, x2: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct SolutionCheckOptions {
    /// Carriers up to this size get every triple checked.
    pub exhaustive_carrier: usize,
    pub sampled_triples: u64,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SolutionCheckOptions {
    fn default() -> Self {
        Self {
            exhaustive_carrier: 81,
            sampled_triples: 1_000_000,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub carrier: usize,
    pub braid: bool,
    pub braid_witness: Option<(usize, usize, usize)>,
    pub braid_triples_checked: u64,
    pub braid_exhaustive: bool,
    pub involutive: bool,
    pub involutive_witness: Option<(usize, usize)>,
    pub nondegenerate: bool,
    pub degeneracy_witness: Option<Degeneracy>,
}

impl SolutionReport {
    pub fn passed(&self) -> bool {
        self.braid && self.involutive && self.nondegenerate
    }
}

fn involutivity_witness(r: &YbeSolution) -> Option<(usize, usize)> {
    let n = r.n;
    (0..n * n).map(|i| (i / n, i % n)).find(|&(x, y)| {
        let (u, v) = r.apply(x, y);
        r.apply(u, v) != (x, y)
    })
}

fn nondegeneracy_witness(r: &YbeSolution) -> Option<Degeneracy> {
    let n = r.n;
    for x in 0..n {
        let mut seen = vec![usize::MAX; n];
        for y in 0..n {
            let u = r.sigma(x, y);
            if seen[u] != usize::MAX {
                return Some(Degeneracy::Left {
                    x,
                    y1: seen[u],
                    y2: y,
                });
            }
            seen[u] = y;
        }
    }
    for y in 0..n {
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let v = r.tau(y, x);
            if seen[v] != usize::MAX {
                return Some(Degeneracy::Right {
                    y,
                    x1: seen[v],
                    x2: x,
                });
            }
            seen[v] = x;
        }
    }
    None
}

/// `r_12 r_23 r_12 = r_23 r_12 r_23` at `(x, y, z)`.
fn braid_holds(r: &YbeSolution, x: usize, y: usize, z: usize) -> bool {
    let lhs = {
        let (a, b) = r.apply(x, y);
        let (b, c) = r.apply(b, z);
        let (a, b) = r.apply(a, b);
        (a, b, c)
    };
    let rhs = {
        let (b, c) = r.apply(y, z);
        let (a, b) = r.apply(x, b);
        let (b, c) = r.apply(b, c);
        (a, b, c)
    };
    lhs == rhs
}

pub fn check_solution(r: &YbeSolution, opts: SolutionCheckOptions) -> SolutionReport {
    let n = r.n;
    let limit = if n <= opts.exhaustive_carrier {
        (n as u64).pow(3)
    } else {
        0
    };
    let (witness, checked, exhaustive) = sweep_tuples(
        opts.exec,
        3,
        n,
        limit,
        opts.sampled_triples,
        opts.seed,
        |t| braid_holds(r, t[0], t[1], t[2]),
    );
    let inv = involutivity_witness(r);
    let deg = nondegeneracy_witness(r);
    SolutionReport {
        carrier: n,
        braid: witness.is_none(),
        braid_witness: witness.map(|t| (t[0], t[1], t[2])),
        braid_triples_checked: checked,
        braid_exhaustive: exhaustive,
        involutive: inv.is_none(),
        involutive_witness: inv,
        nondegenerate: deg.is_none(),
        degeneracy_witness: deg,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub solution: YbeSolution,
    /// Class index of each point of the original carrier.
    pub class_of: Vec<usize>,
}

/// Identifies `x ~ y` when `σ_x = σ_y` and induces `r` on the classes.
/// Classes are numbered by their least member.
pub fn retraction(r: &YbeSolution) -> Result<Retraction, YbeError> {
    let n = r.n;
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(n);
    for x in 0..n {
        let row: Vec<u32> = (0..n).map(|y| r.sigma(x, y) as u32).collect();
        let next = index.len();
        class_of.push(*index.entry(row).or_insert(next));
    }
    let m = index.len();
    let mut table = vec![(u32::MAX, u32::MAX); m * m];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = r.apply(x, y);
            let img = (class_of[u] as u32, class_of[v] as u32);
            let slot = &mut table[class_of[x] * m + class_of[y]];
            if slot.0 == u32::MAX {
                *slot = img;
            } else if *slot != img {
                return Err(YbeError::NotWellDefined { x, y });
            }
        }
    }
    Ok(Retraction {
        solution: YbeSolution { n: m, table },
        class_of,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    /// `None` when the retractions stop shrinking above one point.
    pub level: Option<usize>,
    /// Carrier sizes of `X, Ret(X), Ret²(X), ...`.
    pub carrier_sizes: Vec<usize>,
    pub convention: &'static str,
}

pub const LEVEL_CONVENTION: &str = "least n with |Ret^n(X)| = 1; a one-point solution has level 0";

pub fn multipermutation_level(r: &YbeSolution) -> Result<LevelReport, YbeError> {
    let mut cur = r.clone();
    let mut sizes = vec![cur.n];
    while cur.n > 1 {
        let next = retraction(&cur)?.solution;
        if next.n == cur.n {
            return Ok(LevelReport {
                level: None,
                carrier_sizes: sizes,
                convention: LEVEL_CONVENTION,
            });
        }
        sizes.push(next.n);
        cur = next;
    }
    Ok(LevelReport {
        level: Some(sizes.len() - 1),
        carrier_sizes: sizes,
        convention: LEVEL_CONVENTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, diag44, g};

    #[test]
    fn trivial_gives_twist() {
        let t = Brace::trivial(g(&[3, 3]));
        let r = solution_from_brace(&t).unwrap();
        assert_eq!(r, YbeSolution::twist(9));
        assert!(check_solution(&r, SolutionCheckOptions::default()).passed());
        let lvl = multipermutation_level(&r).unwrap();
        assert_eq!(lvl.level, Some(1));
        assert_eq!(lvl.carrier_sizes, vec![9, 1]);
    }

    #[test]
    fn identity_map_is_degenerate() {
        let n = 3;
        let id = YbeSolution::from_table(
            n,
            (0..n * n)
                .map(|i| ((i / n) as u32, (i % n) as u32))
                .collect(),
        )
        .unwrap();
        let rep = check_solution(&id, SolutionCheckOptions::default());
        assert!(rep.braid && rep.involutive);
        assert!(!rep.nondegenerate);
        assert_eq!(
            rep.degeneracy_witness,
            Some(Degeneracy::Left { x: 0, y1: 0, y2: 1 })
        );
    }

    #[test]
    fn one_point() {
        let r = YbeSolution::twist(1);
        let ret = retraction(&r).unwrap();
        assert_eq!(ret.solution, r);
        assert_eq!(multipermutation_level(&r).unwrap().level, Some(0));
    }

    #[test]
    fn diagonal_solutions() {
        let r = solution_from_brace(&diag44()).unwrap();
        let rep = check_solution(&r, SolutionCheckOptions::default());
        assert!(rep.passed() && rep.braid_exhaustive);
        assert_eq!(retraction(&r).unwrap().solution.carrier_size(), 2);
        assert_eq!(multipermutation_level(&r).unwrap().level, Some(2));

        let r = solution_from_brace(&diag327()).unwrap();
        let rep = check_solution(&r, SolutionCheckOptions::default());
        assert!(rep.passed());
        assert_eq!(rep.braid_triples_checked, 81u64.pow(3));
        assert!(multipermutation_level(&r).unwrap().level.is_some());
    }

    #[test]
    fn not_well_defined() {
        // σ_0 = σ_1 but r(0,0) and r(1,0) land in different classes
        let t = vec![
            (0, 0),
            (1, 2),
            (2, 1),
            (0, 1),
            (1, 0),
            (2, 2),
            (2, 0),
            (0, 1),
            (1, 2),
        ];
        let r = YbeSolution::from_table(3, t).unwrap();
        assert!(matches!(
            retraction(&r),
            Err(YbeError::NotWellDefined { .. })
        ));
    }

    #[test]
    fn non_shrinking_is_infinite() {
        // σ_x(y) = x + y on Z/3: the rows are pairwise distinct
        let n = 3;
        let table = (0..n * n)
            .map(|i| (((i / n + i % n) % n) as u32, (i / n) as u32))
            .collect();
        let r = YbeSolution::from_table(n, table).unwrap();
        let lvl = multipermutation_level(&r).unwrap();
        assert_eq!(lvl.level, None);
        assert_eq!(lvl.carrier_sizes, vec![3]);
    }
}
