use serde::Serialize;

use crate::abelian::Subgroup;
use crate::brace::Brace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `A^{i+1} = A ∗ A^i`
    Left,
    /// `A^{(i+1)} = A^{(i)} ∗ A`
    Right,
    /// `A^{[i+1]} = Σ_{j=1}^{i} A^{[j]} ∗ A^{[i+1-j]}`
    Strong,
}

/// Hard cap on computed terms; the stabilisation rules below always fire
/// long before this at the supported orders.
const MAX_TERMS: usize = 256;

#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    /// `chain[0]` is the first term, `A` itself.
    pub chain: Vec<Subgroup>,
    /// The chain stopped at a non-zero term that provably repeats forever.
    pub stabilized: bool,
    /// Smallest `n` with term `n` equal to `{0}`.
    pub class: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSummary {
    pub kind: SeriesKind,
    pub orders: Vec<usize>,
    pub class: Option<usize>,
}

impl SeriesResult {
    /// Term `i`, 1-indexed. Beyond the computed chain the last term repeats.
    pub fn term(&self, i: usize) -> &Subgroup {
        assert!(i >= 1);
        &self.chain[(i - 1).min(self.chain.len() - 1)]
    }

    pub fn is_nilpotent(&self) -> bool {
        self.class.is_some()
    }

    pub fn summary(&self) -> SeriesSummary {
        SeriesSummary {
            kind: self.kind,
            orders: self.chain.iter().map(Subgroup::order).collect(),
            class: self.class,
        }
    }
}

/// Computes the left, right or strong series until it reaches `{0}` or
/// provably stabilises.
///
/// Left and right terms depend only on the previous term, so a repeat is a
/// fixed point. A strong term depends on all earlier terms; if terms
/// `m..=2m` coincide then every later term equals them too (every split
/// `j + (N-j)` with `N >= 2m` pairs an early term with the plateau or two
/// plateau terms), which is the stopping rule used here.
pub fn series(b: &Brace, kind: SeriesKind) -> SeriesResult {
    let all = b.all_elements();
    let mut chain = vec![b.group().whole()];
    if b.order() == 1 {
        return SeriesResult {
            kind,
            chain,
            stabilized: false,
            class: Some(1),
        };
    }
    loop {
        let i = chain.len(); // computing term i+1
        let last = &chain[i - 1];
        let next = match kind {
            SeriesKind::Left => b.subset_star(&all, last.members()),
            SeriesKind::Right => b.subset_star(last.members(), &all),
            SeriesKind::Strong => {
                let mut acc = Subgroup::zero(b.order());
                for j in 1..=i {
                    let s = b.subset_star(chain[j - 1].members(), chain[i - j].members());
                    acc = acc.join(b.group(), s.members());
                }
                acc
            }
        };
        if next.is_trivial() {
            chain.push(next);
            let class = chain.len();
            return SeriesResult {
                kind,
                chain,
                stabilized: false,
                class: Some(class),
            };
        }
        chain.push(next);
        let len = chain.len();
        let stable = match kind {
            SeriesKind::Left | SeriesKind::Right => chain[len - 1] == chain[len - 2],
            SeriesKind::Strong => {
                // terms m..=2m equal, with 2m = len or 2m = len - 1
                let m = len / 2;
                m >= 1 && (m..=len).all(|t| chain[t - 1] == chain[m - 1])
            }
        };
        if stable || len >= MAX_TERMS {
            return SeriesResult {
                kind,
                chain,
                stabilized: true,
                class: None,
            };
        }
    }
}

/// True when the left series has reached `{0}` by its fifth term.
pub fn left_fifth_term_vanishes(b: &Brace) -> bool {
    series(b, SeriesKind::Left).class.is_some_and(|c| c <= 5)
}

/// `Z(A) = {c : c∗a = a∗c for all a}`, as a plain set.
pub fn center_star(b: &Brace) -> Vec<usize> {
    let n = b.order();
    (0..n)
        .filter(|&c| (0..n).all(|a| b.star(c, a) == b.star(a, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, diag44, g, r};

    #[test]
    fn trivial_right_series() {
        let t = Brace::trivial(g(&[4, 4]));
        let s = series(&t, SeriesKind::Right);
        assert_eq!(s.summary().orders, vec![16, 1]);
        assert_eq!(s.class, Some(2));
    }

    #[test]
    fn diagonal_series() {
        let d = diag44();
        let x = r(d.group(), &[2, 0]);
        for kind in [SeriesKind::Right, SeriesKind::Left] {
            let s = series(&d, kind);
            assert_eq!(s.class, Some(3));
            assert_eq!(s.term(2).members(), &[0, x]);
        }
        let s = series(&d, SeriesKind::Strong);
        assert_eq!(s.class, Some(3));
    }

    #[test]
    fn center_examples() {
        let t = Brace::trivial(g(&[3, 3]));
        assert_eq!(center_star(&t).len(), 9);
        let d = diag44();
        let gr = d.group();
        let mut expect: Vec<usize> = [[0, 0], [2, 0], [0, 2], [2, 2]]
            .iter()
            .map(|c| r(gr, c))
            .collect();
        expect.sort();
        assert_eq!(center_star(&d), expect);
        let e = diag327();
        assert!(center_star(&e).contains(&r(e.group(), &[0, 9])));
    }

    #[test]
    fn strong_dominates() {
        for b in [diag44(), diag327()] {
            let l = series(&b, SeriesKind::Left);
            let rr = series(&b, SeriesKind::Right);
            let s = series(&b, SeriesKind::Strong);
            for i in 1..6 {
                assert!(l.term(i).is_subset_of(s.term(i)));
                assert!(rr.term(i).is_subset_of(s.term(i)));
                assert!(s.term(i + 1).is_subset_of(s.term(i)));
            }
        }
    }
}
