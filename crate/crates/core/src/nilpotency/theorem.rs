use serde::Serialize;

use crate::abelian::is_prime;
use crate::brace::Brace;
use crate::exec::Exec;

use super::identities::{identity_suite, Scope, Stage, StageResult, TheoremFocus};
use super::NilpotencyError;

#[derive(Clone, Debug)]
pub struct Theorem1Input<'a> {
    pub brace: &'a Brace,
    pub p: u64,
    /// 1 for `C_{p²} x C_{p²}`, 2 for `C_p x C_{p³}`.
    pub m: u32,
    pub p_elem: usize,
    pub qs: Vec<usize>,
    pub exec: Exec,
}

impl<'a> Theorem1Input<'a> {
    pub fn new(brace: &'a Brace, p: u64, m: u32, p_elem: usize, qs: Vec<usize>) -> Self {
        Self {
            brace,
            p,
            m,
            p_elem,
            qs,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub index: u8,
    pub statement: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub p: u64,
    pub m: u32,
    pub p_m: u64,
    pub p_element: Vec<u64>,
    pub q_elements: Vec<Vec<u64>>,
    /// `P` and the `Q_j` generate `(A,∘)`.
    pub generates: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub q_orders: Vec<u64>,
    /// Hypothesis 4 with the `Q_j` in some fixed order (the pass criterion).
    pub factorization_some_order: bool,
    /// Hypothesis 4 for every order of the `Q_j`.
    pub factorization_every_order: bool,
    pub conclusion_holds: bool,
    pub window: (i64, i64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion_witness: Option<i64>,
    /// Staged propositions; empty unless every hypothesis holds.
    pub stages: Vec<StageResult>,
}

impl Theorem1Report {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis(&self, i: u8) -> &Hypothesis {
        &self.hypotheses[(i - 1) as usize]
    }

    pub fn stages_pass(&self) -> bool {
        self.stages
            .iter()
            .all(|s| s.status == super::identities::StageStatus::Passed)
    }
}

pub(crate) struct Hypotheses {
    pub list: Vec<Hypothesis>,
    pub generates: bool,
    pub q_orders: Vec<u64>,
    pub some_order: bool,
    pub every_order: bool,
}

impl Hypotheses {
    pub fn first_failure(&self) -> Option<u8> {
        self.list.iter().find(|h| !h.holds).map(|h| h.index)
    }
}

fn check_shape(b: &Brace, f: &TheoremFocus) -> Result<(), NilpotencyError> {
    let bad = |s: String| Err(NilpotencyError::InputShapeMismatch(s));
    let p = f.p;
    if !is_prime(p) {
        return bad(format!("{p} is not prime"));
    }
    if b.order() as u64 != p.pow(4) {
        return bad(format!("order {} is not {p}^4", b.order()));
    }
    let want = match f.m {
        1 => vec![p * p, p * p],
        2 => vec![p, p * p * p],
        m => return bad(format!("m = {m}, expected 1 or 2")),
    };
    if b.group().sorted_moduli() != want {
        return bad(format!(
            "additive group {} does not match m = {}",
            b.group(),
            f.m
        ));
    }
    if let Some(&x) = std::iter::once(&f.p_elem)
        .chain(&f.qs)
        .find(|&&x| x >= b.order())
    {
        return bad(format!("rank {x} out of range"));
    }
    Ok(())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// `{P^k ∘ Q_{σ1}^{a1} ∘ ... }` as a membership mask.
fn normal_form_cover(b: &Brace, pe: usize, qs: &[usize], order: &[usize]) -> Vec<bool> {
    let n = b.order();
    let mut mask = vec![false; n];
    let mut x = 0;
    loop {
        mask[x] = true;
        x = b.circ(x, pe);
        if x == 0 {
            break;
        }
    }
    for &j in order {
        let q = qs[j];
        let current: Vec<usize> = (0..n).filter(|&s| mask[s]).collect();
        for s in current {
            let mut y = s;
            loop {
                y = b.circ(y, q);
                if y == s {
                    break;
                }
                mask[y] = true;
            }
        }
    }
    mask
}

fn generated(b: &Brace, gens: &[usize]) -> usize {
    let n = b.order();
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = b.circ(x, g);
            if !mask[y] {
                mask[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

pub(crate) fn evaluate_hypotheses(
    b: &Brace,
    f: &TheoremFocus,
) -> Result<Hypotheses, NilpotencyError> {
    check_shape(b, f)?;
    let g = b.group();
    let n = b.order();
    let pm = f.p.pow(f.m);
    let ppm = b.circ_power(f.p_elem, pm as i64);
    let coords = |x: usize| g.unrank(x).expect("rank in range");

    let central = (0..n).all(|a| b.star(ppm, a) == b.star(a, ppm));
    let in_square = b.square().contains(ppm);
    let q_orders: Vec<u64> = f.qs.iter().map(|&q| b.circ_order(q)).collect();
    let bounded = q_orders.iter().all(|&o| o <= pm);
    let covers: Vec<bool> = permutations(f.qs.len())
        .iter()
        .map(|ord| {
            normal_form_cover(b, f.p_elem, &f.qs, ord)
                .iter()
                .all(|&x| x)
        })
        .collect();
    let some_order = covers.iter().any(|&c| c);
    let every_order = covers.iter().all(|&c| c);
    let mut gens = vec![f.p_elem];
    gens.extend(&f.qs);

    let list = vec![
        Hypothesis {
            index: 1,
            statement: "P^(p^m) is central",
            holds: central,
            detail: format!("P^(p^m) = {}", coords(ppm)),
        },
        Hypothesis {
            index: 2,
            statement: "P^(p^m) lies in A^2",
            holds: in_square,
            detail: format!("|A^2| = {}", b.square().order()),
        },
        Hypothesis {
            index: 3,
            statement: "ord(Q_j) <= p^m",
            holds: bounded,
            detail: format!("orders {q_orders:?}, p^m = {pm}"),
        },
        Hypothesis {
            index: 4,
            statement: "every a is P^k ∘ prod Q_j^(a_j)",
            holds: some_order,
            detail: format!(
                "{} of {} orderings cover A",
                covers.iter().filter(|&&c| c).count(),
                covers.len()
            ),
        },
    ];
    Ok(Hypotheses {
        list,
        generates: generated(b, &gens) == n,
        q_orders,
        some_order,
        every_order,
    })
}

/// Checks the four hypotheses, the conclusion `P∗(p^m·P^k) = 0` over
/// `k ∈ [-ord(P), ord(P)]` regardless of them, and the staged propositions
/// when they all hold.
pub fn theorem1_check(input: &Theorem1Input) -> Result<Theorem1Report, NilpotencyError> {
    let b = input.brace;
    let g = b.group();
    let focus = TheoremFocus {
        p_elem: input.p_elem,
        qs: input.qs.clone(),
        p: input.p,
        m: input.m,
    };
    let h = evaluate_hypotheses(b, &focus)?;
    let pm = input.p.pow(input.m);
    let pe = input.p_elem;
    let ord = b.circ_order(pe) as i64;
    let conclusion_witness =
        (-ord..=ord).find(|&k| b.star(pe, g.scalar(pm as i64, b.circ_power(pe, k))) != 0);
    let stages = if h.first_failure().is_none() {
        let scope = Scope {
            stages: Stage::THEOREM.to_vec(),
            focus: Some(focus),
            exec: input.exec,
            ..Scope::default()
        };
        identity_suite(b, &scope).stages
    } else {
        Vec::new()
    };
    let coords = |x: usize| g.unrank(x).expect("rank in range").0;
    Ok(Theorem1Report {
        p: input.p,
        m: input.m,
        p_m: pm,
        p_element: coords(pe),
        q_elements: input.qs.iter().map(|&q| coords(q)).collect(),
        generates: h.generates,
        hypotheses: h.list,
        q_orders: h.q_orders,
        factorization_some_order: h.some_order,
        factorization_every_order: h.every_order,
        conclusion_holds: conclusion_witness.is_none(),
        window: (-ord, ord),
        conclusion_witness,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, diag_first, g, r};

    #[test]
    fn c3_c27_all_hypotheses() {
        let e = diag327();
        let gr = e.group();
        let input = Theorem1Input::new(&e, 3, 2, r(gr, &[0, 1]), vec![r(gr, &[1, 0])]);
        let rep = theorem1_check(&input).unwrap();
        assert!(rep.hypotheses_hold(), "{:?}", rep.hypotheses);
        assert!(rep.generates && rep.factorization_every_order);
        assert!(rep.conclusion_holds);
        assert_eq!(rep.window, (-27, 27));
        assert_eq!(rep.stages.len(), Stage::THEOREM.len());
        assert!(rep.stages_pass());
        assert_eq!(e.circ_power(r(gr, &[0, 1]), 9), r(gr, &[0, 9]));
    }

    #[test]
    fn hypothesis_three_fails_at_p5() {
        // λ_(a,b) = diag(6^b, 1) on Z_25 x Z_25
        let d = diag_first(25, 6, true);
        let gr = d.group();
        let input = Theorem1Input::new(&d, 5, 1, r(gr, &[1, 0]), vec![r(gr, &[0, 1])]);
        let rep = theorem1_check(&input).unwrap();
        assert!(!rep.hypothesis(3).holds);
        assert_eq!(rep.q_orders, vec![25]);
        assert!(rep.conclusion_holds);
        assert!(rep.stages.is_empty());
    }

    #[test]
    fn trivial_fails_hypothesis_two() {
        let t = Brace::trivial(g(&[3, 27]));
        let gr = t.group();
        let input = Theorem1Input::new(&t, 3, 2, r(gr, &[0, 1]), vec![r(gr, &[1, 0])]);
        let rep = theorem1_check(&input).unwrap();
        assert!(rep.hypothesis(1).holds);
        assert!(!rep.hypothesis(2).holds);
        assert!(rep.conclusion_holds);
    }

    #[test]
    fn shape_mismatch() {
        let e = diag327();
        let err = theorem1_check(&Theorem1Input::new(&e, 3, 1, 1, vec![3])).unwrap_err();
        assert!(matches!(err, NilpotencyError::InputShapeMismatch(_)));
        let t = Brace::trivial(g(&[4, 4]));
        assert!(theorem1_check(&Theorem1Input::new(&t, 3, 1, 1, vec![])).is_err());
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
    }
}
