//! Finite left braces in λ-table form.
//!
//! A brace on `(A,+)` is stored as one additive automorphism `λ_a` per
//! element. The multiplicative operation is `a∘b = a + λ_a(b)` and the star
//! operation is `a∗b = λ_a(b) − b`, so `a∘b = a∗b + a + b`. The table is a
//! brace exactly when `λ_0 = id` and `λ_{a∘b} = λ_a λ_b` for all pairs.

mod ideal;
mod iso;

pub use ideal::{Ideal, Quotient};
pub use iso::{element_fingerprints, is_isomorphic, ElementFingerprint};

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{AbelianAutomorphism, AbelianError, CyclicDecomposition, Subgroup};
use crate::exec::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceError {
    #[error("expected {expected} lambda entries, got {got}")]
    WrongTableSize { expected: usize, got: usize },
    #[error("lambda of the zero element is not the identity")]
    BadLambdaZero,
    #[error("lambda of element {a} is not an automorphism: {source}")]
    NotAutomorphism { a: usize, source: AbelianError },
    #[error("cocycle law fails at a={a}, b={b}")]
    CocycleViolation { a: usize, b: usize },
    #[error("distributivity fails at a={a}, b={b}, c={c}")]
    DistributivityViolation { a: usize, b: usize, c: usize },
    #[error("x -> a∘x - a is not additive for a={a}")]
    NotAdditive { a: usize },
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
}

/// One recorded axiom failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BadLambdaZero,
    NotAutomorphism { a: usize, reason: String },
    Cocycle { a: usize, b: usize },
    Distributivity { a: usize, b: usize, c: usize },
}

/// Outcome of a full axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct BraceReport {
    pub order: usize,
    pub pairs_checked: u64,
    pub cocycle_failures: u64,
    pub triples_checked: u64,
    pub triples_exhaustive: bool,
    pub witnesses: Vec<Violation>,
}

impl BraceReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Controls how much of the distributivity self-test runs.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Triples are checked exhaustively up to this many.
    pub exhaustive_triples: u64,
    /// Otherwise this many seeded samples.
    pub sampled_triples: u64,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            exhaustive_triples: 81 * 81 * 81,
            sampled_triples: 10_000,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

impl CheckOptions {
    /// Exhaustive to order 81, a million sampled triples beyond.
    pub fn thorough(seed: u64) -> Self {
        Self {
            sampled_triples: 1_000_000,
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Brace {
    group: CyclicDecomposition,
    lambdas: Vec<AbelianAutomorphism>,
    // derived views, n*n row-major
    lambda: Vec<u32>,
    lambda_inv: Vec<u32>,
    circ_inv: Vec<u32>,
}

impl PartialEq for Brace {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.lambdas == other.lambdas
    }
}

impl Eq for Brace {}

/// Runs every axiom check and collects witnesses instead of stopping.
pub fn check_brace(
    group: &CyclicDecomposition,
    lambdas: &[AbelianAutomorphism],
    opts: CheckOptions,
) -> BraceReport {
    let n = group.order();
    let mut report = BraceReport {
        order: n,
        pairs_checked: 0,
        cocycle_failures: 0,
        triples_checked: 0,
        triples_exhaustive: false,
        witnesses: Vec::new(),
    };
    if lambdas.len() != n {
        report.witnesses.push(Violation::NotAutomorphism {
            a: lambdas.len(),
            reason: format!("expected {n} lambda entries, got {}", lambdas.len()),
        });
        return report;
    }
    for (a, l) in lambdas.iter().enumerate() {
        if let Err(e) = AbelianAutomorphism::validate(group, l.columns().to_vec()) {
            report.witnesses.push(Violation::NotAutomorphism {
                a,
                reason: e.to_string(),
            });
        }
    }
    if !lambdas[0].is_identity(group) {
        report.witnesses.push(Violation::BadLambdaZero);
    }
    if !report.witnesses.is_empty() {
        return report;
    }
    let table = Tables::build(group, lambdas);
    let per_row = opts.exec.map_collect(n, |a| table.cocycle_row(group, a));
    report.pairs_checked = (n * n) as u64;
    for (a, (count, first)) in per_row.into_iter().enumerate() {
        report.cocycle_failures += count;
        if let Some(b) = first {
            if report.witnesses.len() < 16 {
                report.witnesses.push(Violation::Cocycle { a, b });
            }
        }
    }
    let total = (n as u64).pow(3);
    let (hit, checked, exhaustive) = if total <= opts.exhaustive_triples {
        (table.distributivity_sweep(group, opts.exec), total, true)
    } else {
        exec::sweep_tuples(opts.exec, 3, n, 0, opts.sampled_triples, opts.seed, |t| {
            table.distributive(group, t[0], t[1], t[2])
        })
    };
    report.triples_checked = checked;
    report.triples_exhaustive = exhaustive;
    if let Some(t) = hit {
        report.witnesses.push(Violation::Distributivity {
            a: t[0],
            b: t[1],
            c: t[2],
        });
    }
    report
}

struct Tables {
    n: usize,
    lambda: Vec<u32>,
}

impl Tables {
    fn build(group: &CyclicDecomposition, lambdas: &[AbelianAutomorphism]) -> Self {
        let n = group.order();
        let mut lambda = Vec::with_capacity(n * n);
        for l in lambdas {
            lambda.extend(l.to_perm(group));
        }
        Self { n, lambda }
    }

    #[inline]
    fn lam(&self, a: usize, b: usize) -> usize {
        self.lambda[a * self.n + b] as usize
    }

    /// Failures of `λ_{a∘b} = λ_a λ_b` in row `a`, with the first `b`.
    fn cocycle_row(&self, group: &CyclicDecomposition, a: usize) -> (u64, Option<usize>) {
        let k = group.rank_count();
        let mut count = 0;
        let mut first = None;
        for b in 0..self.n {
            let c = group.add(a, self.lam(a, b));
            let ok = (0..k).all(|j| {
                let e = group.generator(j);
                self.lam(c, e) == self.lam(a, self.lam(b, e))
            });
            if !ok {
                count += 1;
                first.get_or_insert(b);
            }
        }
        (count, first)
    }

    fn circ(&self, group: &CyclicDecomposition, a: usize, b: usize) -> usize {
        group.add(a, self.lam(a, b))
    }

    /// Lexicographically least `(a, b, c)` violating distributivity, using
    /// an addition table.
    fn distributivity_sweep(&self, group: &CyclicDecomposition, exec: Exec) -> Option<Vec<usize>> {
        let n = self.n;
        let add: Vec<u32> = (0..n * n).map(|i| group.add(i / n, i % n) as u32).collect();
        let plus = |x: u32, y: u32| add[x as usize * n + y as usize];
        exec.find_first(n as u64, |a| {
            let a = a as usize;
            let row = &self.lambda[a * n..(a + 1) * n];
            let circ: Vec<u32> = row.iter().map(|&l| plus(a as u32, l)).collect();
            for b in 0..n {
                let ab = circ[b];
                let sums = &add[b * n..(b + 1) * n];
                for c in 0..n {
                    let lhs = plus(circ[sums[c] as usize], a as u32);
                    if lhs != plus(ab, circ[c]) {
                        return Some((b, c));
                    }
                }
            }
            None
        })
        .map(|(a, (b, c))| vec![a as usize, b, c])
    }

    fn distributive(&self, group: &CyclicDecomposition, a: usize, b: usize, c: usize) -> bool {
        let lhs = group.add(self.circ(group, a, group.add(b, c)), a);
        let rhs = group.add(self.circ(group, a, b), self.circ(group, a, c));
        lhs == rhs
    }
}

impl Brace {
    /// Validates and builds. Distributivity is spot-checked per
    /// [`CheckOptions::default`].
    pub fn new(
        group: CyclicDecomposition,
        lambdas: Vec<AbelianAutomorphism>,
    ) -> Result<Self, BraceError> {
        Self::with_options(group, lambdas, CheckOptions::default())
    }

    pub fn with_options(
        group: CyclicDecomposition,
        lambdas: Vec<AbelianAutomorphism>,
        opts: CheckOptions,
    ) -> Result<Self, BraceError> {
        let n = group.order();
        if lambdas.len() != n {
            return Err(BraceError::WrongTableSize {
                expected: n,
                got: lambdas.len(),
            });
        }
        let report = check_brace(&group, &lambdas, opts);
        if let Some(v) = report.witnesses.first() {
            return Err(match v {
                Violation::BadLambdaZero => BraceError::BadLambdaZero,
                Violation::NotAutomorphism { a, .. } => {
                    let source =
                        AbelianAutomorphism::validate(&group, lambdas[*a].columns().to_vec())
                            .err()
                            .unwrap_or(AbelianError::NotBijective { image: 0, order: n });
                    BraceError::NotAutomorphism { a: *a, source }
                }
                Violation::Cocycle { a, b } => BraceError::CocycleViolation { a: *a, b: *b },
                Violation::Distributivity { a, b, c } => BraceError::DistributivityViolation {
                    a: *a,
                    b: *b,
                    c: *c,
                },
            });
        }
        Ok(Self::assemble(group, lambdas))
    }

    /// Builds the derived tables of an already validated λ-table.
    fn assemble(group: CyclicDecomposition, lambdas: Vec<AbelianAutomorphism>) -> Self {
        let n = group.order();
        let Tables { lambda, .. } = Tables::build(&group, &lambdas);
        let mut lambda_inv = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                lambda_inv[a * n + lambda[a * n + b] as usize] = b as u32;
            }
        }
        let circ_inv = (0..n).map(|a| lambda_inv[a * n + group.neg(a)]).collect();
        Self {
            group,
            lambdas,
            lambda,
            lambda_inv,
            circ_inv,
        }
    }

    /// Builds from a multiplication table `circ[a*n+b] = a∘b`.
    pub fn from_circ_table(group: CyclicDecomposition, circ: &[usize]) -> Result<Self, BraceError> {
        let n = group.order();
        if circ.len() != n * n {
            return Err(BraceError::WrongTableSize {
                expected: n * n,
                got: circ.len(),
            });
        }
        if let Some(&bad) = circ.iter().find(|&&x| x >= n) {
            return Err(BraceError::NotAutomorphism {
                a: 0,
                source: AbelianError::IndexOutOfRange {
                    index: bad,
                    order: n,
                },
            });
        }
        let mut lambdas = Vec::with_capacity(n);
        for a in 0..n {
            let row = &circ[a * n..(a + 1) * n];
            let columns: Vec<usize> = (0..group.rank_count())
                .map(|j| group.sub(row[group.generator(j)], a))
                .collect();
            let l = AbelianAutomorphism::from_columns_unchecked(columns);
            if (0..n).any(|b| l.apply(&group, b) != group.sub(row[b], a)) {
                return Err(BraceError::NotAdditive { a });
            }
            lambdas.push(l);
        }
        Self::new(group, lambdas)
    }

    /// The brace with every `λ_a` the identity, so `a∘b = a+b`.
    pub fn trivial(group: CyclicDecomposition) -> Self {
        let id = AbelianAutomorphism::identity(&group);
        let lambdas = vec![id; group.order()];
        Self::assemble(group, lambdas)
    }

    pub fn group(&self) -> &CyclicDecomposition {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn lambdas(&self) -> &[AbelianAutomorphism] {
        &self.lambdas
    }

    /// `λ_a(b)`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.lambda[a * self.order() + b] as usize
    }

    /// `λ_a^{-1}(b)`.
    #[inline]
    pub fn lambda_inv(&self, a: usize, b: usize) -> usize {
        self.lambda_inv[a * self.order() + b] as usize
    }

    /// Row `a` of the λ-table as a permutation of ranks.
    pub fn lambda_row(&self, a: usize) -> &[u32] {
        let n = self.order();
        &self.lambda[a * n..(a + 1) * n]
    }

    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.group.sub(self.lambda(a, b), b)
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.group.add(a, self.lambda(a, b))
    }

    #[inline]
    pub fn circ_inverse(&self, a: usize) -> usize {
        self.circ_inv[a] as usize
    }

    /// `a^{∘n}` by binary powering; negative `n` uses the inverse.
    pub fn circ_power(&self, a: usize, n: i64) -> usize {
        let mut base = if n < 0 { self.circ_inverse(a) } else { a };
        let mut e = n.unsigned_abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.circ(acc, base);
            }
            base = self.circ(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn circ_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.circ(x, a);
            k += 1;
        }
        k
    }

    /// `a^{-1}∘b^{-1}∘a∘b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ai = self.circ_inverse(a);
        let bi = self.circ_inverse(b);
        self.circ(self.circ(ai, bi), self.circ(a, b))
    }

    /// Order of `λ_a` as a permutation.
    pub fn lambda_order(&self, a: usize) -> u64 {
        let g = &self.group;
        let l = &self.lambdas[a];
        let mut cur = l.clone();
        let mut k = 1;
        while !cur.is_identity(g) {
            cur = l.compose(g, &cur);
            k += 1;
        }
        k
    }

    /// The full `∘` table, row-major.
    pub fn circ_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.circ(a, b) as u32);
            }
        }
        t
    }

    pub fn is_multiplicatively_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.circ(a, b) == self.circ(b, a)))
    }

    /// Additive span of `{x∗y : x ∈ xs, y ∈ ys}`.
    pub fn subset_star(&self, xs: &[usize], ys: &[usize]) -> Subgroup {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut h = Subgroup::zero(n);
        for &x in xs {
            for &y in ys {
                let s = self.star(x, y);
                if !seen[s] {
                    seen[s] = true;
                    if !h.contains(s) {
                        h.extend(&self.group, s);
                    }
                }
            }
        }
        h.finish();
        h
    }

    pub fn all_elements(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }

    /// `A∗A`, the second term of both the left and the right series.
    pub fn square(&self) -> Subgroup {
        let all = self.all_elements();
        self.subset_star(&all, &all)
    }

    /// Elements with `λ_a = id`, i.e. `a∗b = 0` for all `b`.
    pub fn socle(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| self.lambdas[a].is_identity(&self.group))
            .collect()
    }

    /// First `(a, b, c)` with `a∗(b∗c) != (a∗b)∗c`, if any.
    pub fn star_associativity_witness(&self, exec: Exec) -> Option<(usize, usize, usize)> {
        let n = self.order();
        exec.find_first((n * n * n) as u64, |i| {
            let t = exec::tuple_of(i, 3, n);
            let (a, b, c) = (t[0], t[1], t[2]);
            (self.star(a, self.star(b, c)) != self.star(self.star(a, b), c)).then_some((a, b, c))
        })
        .map(|(_, w)| w)
    }

    /// Re-runs the axiom checks on this brace with explicit options.
    pub fn recheck(&self, opts: CheckOptions) -> BraceReport {
        check_brace(&self.group, &self.lambdas, opts)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::abelian::Element;

    pub(crate) fn g(m: &[u64]) -> CyclicDecomposition {
        CyclicDecomposition::new(m.to_vec()).unwrap()
    }

    pub(crate) fn r(group: &CyclicDecomposition, c: &[u64]) -> usize {
        group.rank(&Element(c.to_vec())).unwrap()
    }

    /// λ_{(a,b)} = diag(u^b, 1) on Z_d x Z_d, written independently of the
    /// constructions module.
    pub(crate) fn diag_first(d: u64, u: u64, second_controls: bool) -> Brace {
        let group = g(&[d, d]);
        let n = group.order();
        let lambdas = (0..n)
            .map(|x| {
                let e = group.coord(x, if second_controls { 1 } else { 0 });
                let mut f = 1u64;
                for _ in 0..e {
                    f = f * u % d;
                }
                let c0 = r(&group, &[f, 0]);
                let c1 = r(&group, &[0, 1]);
                AbelianAutomorphism::validate(&group, vec![c0, c1]).unwrap()
            })
            .collect();
        Brace::new(group, lambdas).unwrap()
    }

    pub(crate) fn diag44() -> Brace {
        diag_first(4, 3, true)
    }

    /// λ_{(a,b)}(x,y) = (x, 10^a y) on Z_3 x Z_27.
    pub(crate) fn diag327() -> Brace {
        let group = g(&[3, 27]);
        let lambdas = (0..group.order())
            .map(|x| {
                let a = group.coord(x, 0);
                let f = [1u64, 10, 19][a as usize];
                let c0 = r(&group, &[1, 0]);
                let c1 = r(&group, &[0, f]);
                AbelianAutomorphism::validate(&group, vec![c0, c1]).unwrap()
            })
            .collect();
        Brace::new(group, lambdas).unwrap()
    }

    #[test]
    fn validation_examples() {
        let t = Brace::trivial(g(&[4, 4]));
        assert!(Brace::new(t.group().clone(), t.lambdas().to_vec()).is_ok());
        let d = diag44();
        assert_eq!(d.order(), 16);
    }

    #[test]
    fn cocycle_violation_detected() {
        let d = diag44();
        let group = d.group().clone();
        let mut lambdas = d.lambdas().to_vec();
        // (0,2) gets the coordinate swap instead of the identity
        let swap =
            AbelianAutomorphism::validate(&group, vec![r(&group, &[0, 1]), r(&group, &[1, 0])])
                .unwrap();
        lambdas[r(&group, &[0, 2])] = swap;
        let err = Brace::new(group.clone(), lambdas.clone()).unwrap_err();
        assert!(matches!(err, BraceError::CocycleViolation { .. }));
        let report = check_brace(&group, &lambdas, CheckOptions::default());
        assert!(!report.passed());
        assert!(report.cocycle_failures > 0);
    }

    #[test]
    fn bad_lambda_zero() {
        let d = diag44();
        let mut lambdas = d.lambdas().to_vec();
        lambdas[0] = lambdas[r(d.group(), &[0, 1])].clone();
        assert_eq!(
            Brace::new(d.group().clone(), lambdas).unwrap_err(),
            BraceError::BadLambdaZero
        );
    }

    #[test]
    fn star_examples() {
        let d = diag44();
        let gr = d.group();
        assert_eq!(d.star(r(gr, &[0, 1]), r(gr, &[1, 0])), r(gr, &[2, 0]));
        let e = diag327();
        let gr = e.group();
        assert_eq!(e.star(r(gr, &[1, 0]), r(gr, &[0, 1])), r(gr, &[0, 9]));
        let t = Brace::trivial(g(&[4, 4]));
        assert!((0..16).all(|a| (0..16).all(|b| t.star(a, b) == 0)));
    }

    #[test]
    fn circ_examples() {
        let d = diag44();
        let gr = d.group();
        assert_eq!(d.circ(r(gr, &[0, 1]), r(gr, &[1, 0])), r(gr, &[3, 1]));
        assert_eq!(d.circ_inverse(r(gr, &[0, 1])), r(gr, &[0, 3]));
        let e = diag327();
        let gr = e.group();
        assert_eq!(e.circ_power(r(gr, &[0, 1]), 9), r(gr, &[0, 9]));
    }

    #[test]
    fn circ_consistency() {
        for b in [diag44(), diag327()] {
            let gr = b.group();
            for x in 0..b.order() {
                assert_eq!(b.circ(x, b.circ_inverse(x)), 0);
                assert_eq!(b.circ(b.circ_inverse(x), x), 0);
                let ord = b.circ_order(x);
                assert_eq!(b.circ_power(x, ord as i64), 0);
                for n in 0..5 {
                    assert_eq!(b.circ_power(x, -n), b.circ_inverse(b.circ_power(x, n)));
                }
                for y in 0..b.order() {
                    assert_eq!(b.circ(x, y), gr.add(gr.add(b.star(x, y), x), y));
                }
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let t = Brace::trivial(g(&[4, 4]));
        assert!((0..16).all(|a| (0..16).all(|b| t.commutator(a, b) == 0)));
        let e = diag327();
        let gr = e.group();
        let c = e.commutator(r(gr, &[0, 1]), r(gr, &[1, 0]));
        assert_ne!(c, 0);
        assert!(e.square().contains(c));
        for x in 0..e.order() {
            assert_eq!(e.commutator(x, x), 0);
        }
    }

    #[test]
    fn subset_star_examples() {
        let d = diag44();
        let gr = d.group();
        let all = d.all_elements();
        assert_eq!(d.subset_star(&[0], &all).members(), &[0]);
        assert_eq!(d.square().members(), &[0, r(gr, &[2, 0])]);
        let e = diag327();
        let gr = e.group();
        let mut expect = vec![0, r(gr, &[0, 9]), r(gr, &[0, 18])];
        expect.sort();
        assert_eq!(e.square().members(), expect.as_slice());
    }

    #[test]
    fn brace_identities_exhaustive() {
        for b in [diag44(), diag327(), Brace::trivial(g(&[2, 8]))] {
            let gr = b.group();
            let sq = b.square();
            for x in 0..b.order() {
                for y in 0..b.order() {
                    for n in [-3i64, 2, 5] {
                        assert_eq!(b.star(x, gr.scalar(n, y)), gr.scalar(n, b.star(x, y)));
                    }
                    assert!(sq.contains(b.commutator(x, y)));
                    let lxy = &b.lambdas()[b.circ(x, y)];
                    assert_eq!(*lxy, b.lambdas()[x].compose(gr, &b.lambdas()[y]));
                    for z in 0..b.order() {
                        assert_eq!(b.star(x, gr.add(y, z)), gr.add(b.star(x, y), b.star(x, z)));
                        let lhs = b.star(x, b.circ(y, z));
                        let rhs =
                            gr.add(gr.add(b.star(x, b.star(y, z)), b.star(x, y)), b.star(x, z));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn circ_table_roundtrip() {
        let e = diag327();
        let t: Vec<usize> = e.circ_table().into_iter().map(|x| x as usize).collect();
        let back = Brace::from_circ_table(e.group().clone(), &t).unwrap();
        assert_eq!(back, e);
        let mut bad = t.clone();
        bad.swap(5, 6);
        assert!(Brace::from_circ_table(e.group().clone(), &bad).is_err());
    }

    #[test]
    fn socle_and_abelian_flag() {
        let d = diag44();
        assert!(!d.is_multiplicatively_abelian());
        // λ depends on the second coordinate mod 2
        assert_eq!(d.socle().len(), 8);
        assert!(Brace::trivial(g(&[3, 3])).is_multiplicatively_abelian());
    }
}
