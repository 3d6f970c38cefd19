use std::sync::OnceLock;

use proptest::prelude::*;

use braces::abelian::{enumerate_automorphisms, CyclicDecomposition};
use braces::brace::{is_isomorphic, Brace};
use braces::cli::{BraceFile, Metadata};
use braces::constructions::{builtin_corpus, CorpusEntry};
use braces::exec::Exec;
use braces::nilpotency::{certify_right_nilpotent, series, SeriesKind};
use braces::ybe::{multipermutation_level, solution_from_brace};

fn corpus() -> &'static [CorpusEntry] {
    static C: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    C.get_or_init(|| {
        builtin_corpus()
            .unwrap()
            .into_iter()
            .filter(|e| e.brace.order() <= 81)
            .collect()
    })
}

fn brace_and_elems() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0..corpus().len()).prop_flat_map(|i| {
        let n = corpus()[i].brace.order();
        (Just(i), 0..n, 0..n, 0..n)
    })
}

/// Transport of `b` along the permutation `perm` of its underlying set.
fn transport(b: &Brace, perm: &[usize]) -> Brace {
    let n = b.order();
    let mut circ = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            circ[perm[x] * n + perm[y]] = perm[b.circ(x, y)];
        }
    }
    Brace::from_circ_table(b.group().clone(), &circ).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_round_trip(moduli in prop::collection::vec(2u64..9, 1..4), seed in any::<u64>()) {
        let g = CyclicDecomposition::new(moduli).unwrap();
        let x = (seed as usize) % g.order();
        let e = g.unrank(x).unwrap();
        prop_assert_eq!(g.rank(&e).unwrap(), x);
        let y = (seed as usize / 7) % g.order();
        prop_assert_eq!(g.add(x, y), g.add(y, x));
        prop_assert_eq!(g.sub(g.add(x, y), y), x);
        prop_assert_eq!(g.add(x, g.neg(x)), 0);
        prop_assert_eq!(g.scalar(g.additive_order(x) as i64, x), 0);
    }

    #[test]
    fn brace_laws((i, a, b, c) in brace_and_elems()) {
        let br = &corpus()[i].brace;
        let g = br.group();
        prop_assert_eq!(br.circ(br.circ(a, b), c), br.circ(a, br.circ(b, c)));
        prop_assert_eq!(br.circ(a, br.circ_inverse(a)), 0);
        // a∘(b+c) + a = a∘b + a∘c
        prop_assert_eq!(g.add(br.circ(a, g.add(b, c)), a), g.add(br.circ(a, b), br.circ(a, c)));
        // λ_{a∘b} = λ_a λ_b
        prop_assert_eq!(br.lambda(br.circ(a, b), c), br.lambda(a, br.lambda(b, c)));
        // a∗(b+c) = a∗b + a∗c
        prop_assert_eq!(br.star(a, g.add(b, c)), g.add(br.star(a, b), br.star(a, c)));
    }

    #[test]
    fn quotient_projection_is_homomorphism((i, c, a, b) in brace_and_elems()) {
        let br = &corpus()[i].brace;
        let ideal = br.ideal_generated(c);
        let q = br.quotient(&ideal).unwrap();
        prop_assert_eq!(q.brace.order() * ideal.order(), br.order());
        let pr = &q.projection;
        prop_assert_eq!(pr[br.circ(a, b)], q.brace.circ(pr[a], pr[b]));
        prop_assert_eq!(pr[br.group().add(a, b)], q.brace.group().add(pr[a], pr[b]));
    }

    #[test]
    fn ybe_braid_on_random_triples((i, x, y, z) in brace_and_elems()) {
        let r = solution_from_brace(&corpus()[i].brace).unwrap();
        let (a, b) = r.apply(x, y);
        let (b, c) = r.apply(b, z);
        let lhs = { let (a, b) = r.apply(a, b); (a, b, c) };
        let (b2, c2) = r.apply(y, z);
        let (a2, b2) = r.apply(x, b2);
        let rhs = { let (b2, c2) = r.apply(b2, c2); (a2, b2, c2) };
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(r.apply(r.apply(x, y).0, r.apply(x, y).1), (x, y));
    }

    #[test]
    fn file_round_trip(i in 0..corpus().len(), mul in any::<bool>()) {
        let b = &corpus()[i].brace;
        let f = if mul { BraceFile::from_brace_mul(b, Metadata::default()) } else { BraceFile::from_brace(b, Metadata::default()) };
        let back: BraceFile = serde_json::from_str(&f.to_json()).unwrap();
        prop_assert_eq!(&back.to_brace().unwrap(), b);
    }

    #[test]
    fn exec_strategies_agree(len in 0u64..5000, modulus in 1u64..300, target in 0u64..300) {
        let f = |i: u64| (i * 7919 % modulus == target % modulus).then_some(i * 3);
        prop_assert_eq!(Exec::Sequential.find_first(len, f), Exec::Parallel.find_first(len, f));
        let g = |i: u64| i.is_multiple_of(modulus);
        prop_assert_eq!(Exec::Sequential.count(len, g), Exec::Parallel.count(len, g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Relabelling by an additive automorphism gives an isomorphic brace
    /// with the same nilpotency data.
    #[test]
    fn invariants_survive_relabelling(i in 0..corpus().len(), k in any::<usize>()) {
        let b = &corpus()[i].brace;
        prop_assume!(b.order() <= 27);
        let g = b.group();
        let auts = enumerate_automorphisms(g);
        let psi = &auts[k % auts.len()];
        let perm: Vec<usize> = (0..b.order()).map(|x| psi.apply(g, x)).collect();
        let c = transport(b, &perm);
        let map = is_isomorphic(b, &c);
        prop_assert!(map.is_some());
        for kind in [SeriesKind::Left, SeriesKind::Right, SeriesKind::Strong] {
            prop_assert_eq!(series(b, kind).summary(), series(&c, kind).summary());
        }
        prop_assert_eq!(
            certify_right_nilpotent(b).unwrap().right_nilpotent,
            certify_right_nilpotent(&c).unwrap().right_nilpotent
        );
        let lvl = |x: &Brace| multipermutation_level(&solution_from_brace(x).unwrap()).unwrap().level;
        prop_assert_eq!(lvl(b), lvl(&c));
    }
}
