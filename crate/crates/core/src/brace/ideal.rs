use crate::abelian::{prime_factors, AbelianAutomorphism, CyclicDecomposition, Subgroup};

use super::{Brace, BraceError};

/// An additive subgroup that is λ-invariant and closed under `a∗x` and
/// `x∗a` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    members: Subgroup,
}

/// A quotient brace together with the projection `A -> A/I` on ranks.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub brace: Brace,
    pub projection: Vec<usize>,
}

impl Ideal {
    pub fn new(brace: &Brace, members: Subgroup) -> Result<Self, BraceError> {
        let g = brace.group();
        if !members.is_closed(g) {
            return Err(BraceError::NotAnIdeal("not an additive subgroup".into()));
        }
        for a in 0..brace.order() {
            for &x in members.members() {
                if !members.contains(brace.lambda(a, x)) {
                    return Err(BraceError::NotAnIdeal(format!(
                        "lambda_{a} moves {x} outside"
                    )));
                }
                if !members.contains(brace.star(a, x)) {
                    return Err(BraceError::NotAnIdeal(format!("{a}*{x} outside")));
                }
                if !members.contains(brace.star(x, a)) {
                    return Err(BraceError::NotAnIdeal(format!("{x}*{a} outside")));
                }
            }
        }
        Ok(Self { members })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.order()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }
}

impl Brace {
    /// Smallest ideal containing `c`, by fixed-point iteration over additive
    /// closure, λ-images and both one-sided star products.
    pub fn ideal_generated(&self, c: usize) -> Ideal {
        let g = self.group();
        let mut h = g.subgroup_generated(&[c]);
        loop {
            let mut extra = Vec::new();
            for &x in h.members() {
                for a in 0..self.order() {
                    for y in [self.lambda(a, x), self.star(a, x), self.star(x, a)] {
                        if !h.contains(y) {
                            extra.push(y);
                        }
                    }
                }
            }
            if extra.is_empty() {
                break;
            }
            h = h.join(g, &extra);
        }
        Ideal::new(self, h).expect("closure is an ideal")
    }

    /// The brace `A/I` on an explicit cyclic decomposition of the quotient
    /// group.
    pub fn quotient(&self, ideal: &Ideal) -> Result<Quotient, BraceError> {
        // re-verify: the ideal may come from another brace
        let ideal = Ideal::new(self, ideal.subgroup().clone())?;
        let g = self.group();
        let n = self.order();
        let coset_min = coset_minima(g, ideal.subgroup());
        let basis = quotient_basis(g, ideal.subgroup());
        let qgroup = if basis.is_empty() {
            CyclicDecomposition::trivial()
        } else {
            CyclicDecomposition::new(basis.iter().map(|&(_, d)| d).collect())
                .expect("quotient orders are at least 2")
        };
        let m = qgroup.order();
        // representative in A of each quotient rank, and the inverse map
        let mut rep = vec![0usize; m];
        let mut class_rank = vec![usize::MAX; n];
        for (q, slot) in rep.iter_mut().enumerate() {
            let x = basis.iter().enumerate().fold(0, |acc, (j, &(b, _))| {
                g.add(acc, g.scalar(qgroup.coord(q, j) as i64, b))
            });
            *slot = x;
            let cm = coset_min[x];
            assert_eq!(
                class_rank[cm],
                usize::MAX,
                "quotient basis is not independent"
            );
            class_rank[cm] = q;
        }
        let projection: Vec<usize> = (0..n).map(|a| class_rank[coset_min[a]]).collect();
        let lambdas = rep
            .iter()
            .map(|&x| {
                let cols = basis
                    .iter()
                    .map(|&(b, _)| projection[self.lambda(x, b)])
                    .collect();
                AbelianAutomorphism::from_columns_unchecked(cols)
            })
            .collect();
        let brace = Brace::new(qgroup, lambdas)?;
        Ok(Quotient { brace, projection })
    }
}

/// Smallest rank in each coset of `h`.
fn coset_minima(g: &CyclicDecomposition, h: &Subgroup) -> Vec<usize> {
    let n = g.order();
    let mut out = vec![usize::MAX; n];
    for a in 0..n {
        if out[a] == usize::MAX {
            for &x in h.members() {
                out[g.add(a, x)] = a;
            }
        }
    }
    out
}

fn order_modulo(g: &CyclicDecomposition, h: &Subgroup, x: usize) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !h.contains(y) {
        y = g.add(y, x);
        k += 1;
    }
    k
}

/// Elements of `A` whose images form a basis of `A/I` with prime-power
/// orders, listed per prime in decreasing order.
///
/// For each prime the elements are picked greedily: one of maximal order
/// modulo the span so far, then lifted inside its coset to an element whose
/// order modulo `I` is the same. This is the inductive step of the usual
/// proof of the structure theorem, so the lifts always exist.
pub(crate) fn quotient_basis(g: &CyclicDecomposition, ideal: &Subgroup) -> Vec<(usize, u64)> {
    let n = g.order();
    let index = (n / ideal.order()) as u64;
    let mut basis = Vec::new();
    for q in prime_factors(index) {
        let mut qpart = 1u64;
        let mut rest = index;
        while rest.is_multiple_of(q) {
            rest /= q;
            qpart *= q;
        }
        let primary: Vec<usize> = (0..n)
            .filter(|&x| ideal.contains(g.scalar(qpart as i64, x)))
            .collect();
        let mut span = ideal.clone();
        while (span.order() / ideal.order()) as u64 != qpart {
            let (x, ord) = primary
                .iter()
                .map(|&x| (x, order_modulo(g, &span, x)))
                .fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
            let lift = span
                .members()
                .iter()
                .map(|&h| g.add(x, h))
                .filter(|&y| order_modulo(g, ideal, y) == ord)
                .min()
                .expect("order-preserving lift exists");
            basis.push((lift, ord));
            span = span.join(g, &[lift]);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::super::tests::{diag327, diag44, g, r};
    use super::*;

    #[test]
    fn ideal_examples() {
        let d = diag44();
        assert_eq!(d.ideal_generated(0).subgroup().members(), &[0]);
        let x = r(d.group(), &[2, 0]);
        assert_eq!(d.ideal_generated(x).subgroup().members(), &[0, x]);
        let t = Brace::trivial(g(&[4, 4]));
        assert_eq!(t.ideal_generated(1).subgroup().members(), &[0, 1, 2, 3]);
    }

    #[test]
    fn not_an_ideal() {
        let d = diag44();
        // (0,1)∗(1,0) = (2,0) leaves <(0,1)>
        let h = d.group().subgroup_generated(&[r(d.group(), &[0, 1])]);
        assert!(matches!(Ideal::new(&d, h), Err(BraceError::NotAnIdeal(_))));
    }

    #[test]
    fn quotient_examples() {
        let d = diag44();
        let zero = d.ideal_generated(0);
        let q = d.quotient(&zero).unwrap();
        assert_eq!(q.brace.order(), 16);
        assert!(super::super::is_isomorphic(&q.brace, &d).is_some());

        let all = Ideal::new(&d, d.group().whole()).unwrap();
        let q = d.quotient(&all).unwrap();
        assert_eq!(q.brace.order(), 1);

        let i = d.ideal_generated(r(d.group(), &[2, 0]));
        let q = d.quotient(&i).unwrap();
        assert_eq!(q.brace.order(), 8);
        assert_eq!(q.brace.group().sorted_moduli(), vec![2, 4]);
        // projection is a brace homomorphism
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(
                    q.projection[d.circ(a, b)],
                    q.brace.circ(q.projection[a], q.projection[b])
                );
                assert_eq!(
                    q.projection[d.group().add(a, b)],
                    q.brace.group().add(q.projection[a], q.projection[b])
                );
            }
        }
    }

    #[test]
    fn quotient_basis_non_cyclic() {
        let a = g(&[3, 27]);
        let nine = a.multiples_subgroup(9);
        let b = quotient_basis(&a, &nine);
        let mut orders: Vec<u64> = b.iter().map(|x| x.1).collect();
        orders.sort();
        assert_eq!(orders, vec![3, 9]);
        let e = diag327();
        let c = e.ideal_generated(r(e.group(), &[0, 9]));
        let q = e.quotient(&c).unwrap();
        assert_eq!(q.brace.order(), 27);
    }

    #[test]
    fn mixed_primes() {
        let a = g(&[6, 4]);
        let h = a.subgroup_generated(&[r(&a, &[3, 2])]);
        let b = quotient_basis(&a, &h);
        let prod: u64 = b.iter().map(|x| x.1).product();
        assert_eq!(prod, 12);
        let t = Brace::trivial(a.clone());
        let q = t.quotient(&Ideal::new(&t, h).unwrap()).unwrap();
        assert_eq!(q.brace.order(), 12);
    }
}
