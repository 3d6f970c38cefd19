use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::abelian::prime_power;
use crate::brace::Brace;
use crate::exec::{self, Exec};

use super::series::{series, SeriesKind, SeriesResult};
use super::theorem::evaluate_hypotheses;
use super::{c1, c2};

/// One identity family of the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// `P∗P^n = C1(n)·P∗(P∗(P∗P)) + C2(n)·P∗(P∗P) + n·(P∗P)` for `n >= 0`.
    Ppn,
    /// `p^m(P∗P) ∈ A^3` and `P∗P^{p^m} = C2(p^m)·P∗(P∗P) + p^m(P∗P)`.
    Prop1,
    /// `p^m·P∗(P∗P) = P∗(P∗P^{p^m})`.
    Cor1,
    /// `P^{p^m} = p^m·P` and `p^m·P∗(P∗P^n) = n·p^m·P∗(P∗P) = 0`.
    Prop2,
    /// `p^m(P∗P^n) = n·p^m(P∗P)`.
    Np2pp,
    /// `p^m·P^{-1} = -p^m·P`.
    Negpow,
    /// `P∗(p^m·a) = 0` for every `a`.
    FinalLemma,
    /// `c^k∗(c^l∗a) = c^l∗(c^k∗a)`.
    Commpow,
    /// `P^n∗Q^c = Q^c∗P^{(1+cp²)n} + P^{(1+cp²)n} - P^n`.
    Rel1,
    /// `Q^c∗P^k = P^{k(1-cp²)}∗Q^c - P^k + P^{k(1-cp²)}`.
    Qp,
    /// `P^n∗(Q^c∗D) + P^n∗D = Q^c∗(P^{(1+cp²)n}∗D) + P^{(1+cp²)n}∗D` and
    /// `P^p∗(Q^c∗D) = Q^c∗(P^p∗D)`.
    Rel2,
}

impl Stage {
    pub const ALL: [Stage; 11] = [
        Stage::Ppn,
        Stage::Prop1,
        Stage::Cor1,
        Stage::Prop2,
        Stage::Np2pp,
        Stage::Negpow,
        Stage::FinalLemma,
        Stage::Commpow,
        Stage::Rel1,
        Stage::Qp,
        Stage::Rel2,
    ];

    /// The stages run by the theorem pipeline, in proof order.
    pub const THEOREM: [Stage; 7] = [
        Stage::Ppn,
        Stage::Prop1,
        Stage::Cor1,
        Stage::Prop2,
        Stage::Np2pp,
        Stage::Negpow,
        Stage::FinalLemma,
    ];

    pub const REL: [Stage; 3] = [Stage::Rel1, Stage::Qp, Stage::Rel2];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Ppn => "ppn",
            Stage::Prop1 => "prop1",
            Stage::Cor1 => "cor1",
            Stage::Prop2 => "prop2",
            Stage::Np2pp => "np2pp",
            Stage::Negpow => "negpow",
            Stage::FinalLemma => "final_lemma",
            Stage::Commpow => "commpow",
            Stage::Rel1 => "rel1",
            Stage::Qp => "qp",
            Stage::Rel2 => "rel2",
        }
    }

    fn needs_focus(self) -> bool {
        matches!(
            self,
            Stage::Prop1
                | Stage::Cor1
                | Stage::Prop2
                | Stage::Np2pp
                | Stage::Negpow
                | Stage::FinalLemma
        )
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == norm || (norm == "finallemma" && *st == Stage::FinalLemma))
            .ok_or_else(|| format!("unknown stage '{s}'"))
    }
}

/// The generator data the theorem stages are about.
#[derive(Clone, Debug)]
pub struct TheoremFocus {
    pub p_elem: usize,
    pub qs: Vec<usize>,
    pub p: u64,
    pub m: u32,
}

#[derive(Clone, Debug)]
pub struct Scope {
    pub stages: Vec<Stage>,
    pub focus: Option<TheoremFocus>,
    /// `(P, Q)` for the rel stages; searched for when absent.
    pub rel_generators: Option<(usize, usize)>,
    /// Case spaces up to this size are swept exhaustively.
    pub exhaustive_limit: u64,
    /// Seeded samples drawn for larger case spaces.
    pub sample_budget: u64,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for Scope {
    fn default() -> Self {
        Self {
            stages: Stage::ALL.to_vec(),
            focus: None,
            rel_generators: None,
            exhaustive_limit: 1 << 22,
            sample_budget: 100_000,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Passed,
    Failed,
    Skipped,
}

/// First counterexample: the elements involved (as coordinates) and the
/// integer parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<Vec<u64>>,
    pub integers: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageResult {
    pub stage: Stage,
    pub status: StageStatus,
    pub checked: u64,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl StageResult {
    fn skipped(stage: Stage, reason: impl Into<String>) -> Self {
        Self {
            stage,
            status: StageStatus::Skipped,
            checked: 0,
            exhaustive: false,
            reason: Some(reason.into()),
            witness: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub stages: Vec<StageResult>,
}

impl SuiteReport {
    /// No stage failed. Skipped stages do not count against this.
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.status != StageStatus::Failed)
    }

    pub fn get(&self, stage: Stage) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.stage == stage)
    }
}

/// Runs the selected stages in the canonical stage order.
pub fn identity_suite(b: &Brace, scope: &Scope) -> SuiteReport {
    let mut stages = scope.stages.clone();
    stages.sort();
    stages.dedup();
    let cx = Cx {
        b,
        scope,
        left: series(b, SeriesKind::Left),
    };
    let focus_gate = scope.focus.as_ref().map(|f| cx.focus_gate(f));
    let rel = cx.rel_gate();
    let stages = stages
        .into_iter()
        .map(|st| {
            if st == Stage::Ppn || st.needs_focus() {
                if let Some(r) = cx.a5_gate(st) {
                    return r;
                }
            }
            match st {
                Stage::Ppn => cx.ppn(),
                Stage::Commpow => cx.commpow(),
                Stage::Rel1 | Stage::Qp | Stage::Rel2 => match &rel {
                    Ok(gens) => cx.rel(st, *gens),
                    Err(why) => StageResult::skipped(st, why.clone()),
                },
                _ => match (&scope.focus, &focus_gate) {
                    (None, _) => StageResult::skipped(st, "no generator focus given"),
                    (Some(_), Some(Err(why))) => StageResult::skipped(st, why.clone()),
                    (Some(f), _) => cx.theorem_stage(st, f),
                },
            }
        })
        .collect();
    SuiteReport { stages }
}

/// Finds `(P, Q, p)` with `|A| = p^4`, `ord(P) = p^3`, `ord(Q) = p`,
/// `Q^{-1}∘P∘Q = P^{1+p²}` and `Q` outside `<P>`, least ranks first.
pub fn find_g4_generators(b: &Brace) -> Option<(usize, usize, u64)> {
    let (p, k) = prime_power(b.order() as u64)?;
    if k != 4 {
        return None;
    }
    let n = b.order();
    let p3 = p * p * p;
    let pe = (0..n).find(|&x| b.circ_order(x) == p3)?;
    let powers: Vec<usize> = (0..p3 as i64).map(|i| b.circ_power(pe, i)).collect();
    let target = b.circ_power(pe, 1 + (p * p) as i64);
    let q = (0..n).find(|&q| {
        b.circ_order(q) == p
            && !powers.contains(&q)
            && b.circ(b.circ(b.circ_inverse(q), pe), q) == target
    })?;
    Some((pe, q, p))
}

struct Cx<'a> {
    b: &'a Brace,
    scope: &'a Scope,
    left: SeriesResult,
}

impl Cx<'_> {
    fn coords(&self, x: usize) -> Vec<u64> {
        self.b.group().unrank(x).expect("rank in range").0
    }

    fn witness(&self, elements: &[usize], integers: &[i64]) -> Witness {
        Witness {
            elements: elements.iter().map(|&x| self.coords(x)).collect(),
            integers: integers.to_vec(),
        }
    }

    fn finish(
        &self,
        stage: Stage,
        checked: u64,
        exhaustive: bool,
        witness: Option<Witness>,
    ) -> StageResult {
        StageResult {
            stage,
            status: if witness.is_some() {
                StageStatus::Failed
            } else {
                StageStatus::Passed
            },
            checked,
            exhaustive,
            reason: None,
            witness,
        }
    }

    fn a5_gate(&self, stage: Stage) -> Option<StageResult> {
        match self.left.class {
            Some(c) if c <= 5 => None,
            _ => Some(StageResult::skipped(
                stage,
                "left series does not reach {0} by term 5",
            )),
        }
    }

    fn focus_gate(&self, f: &TheoremFocus) -> Result<(), String> {
        let h = evaluate_hypotheses(self.b, f).map_err(|e| e.to_string())?;
        match h.first_failure() {
            None => Ok(()),
            Some(i) => Err(format!("hypothesis {i} fails")),
        }
    }

    fn rel_gate(&self) -> Result<(usize, usize, u64), String> {
        let b = self.b;
        match self.scope.rel_generators {
            None => find_g4_generators(b).ok_or_else(|| {
                "no generators with Q^-1 P Q = P^(1+p^2) of orders p^3, p".to_string()
            }),
            Some((pe, q)) => {
                let (p, k) = prime_power(b.order() as u64).ok_or("order is not a prime power")?;
                if k != 4 || pe >= b.order() || q >= b.order() {
                    return Err("generators do not fit an order p^4 brace".into());
                }
                let target = b.circ_power(pe, 1 + (p * p) as i64);
                if b.circ(b.circ(b.circ_inverse(q), pe), q) != target {
                    return Err("supplied generators do not satisfy Q^-1 P Q = P^(1+p^2)".into());
                }
                Ok((pe, q, p))
            }
        }
    }

    fn ppn(&self) -> StageResult {
        let b = self.b;
        let g = b.group();
        let n = b.order();
        let ords: Vec<u64> = (0..n).map(|x| b.circ_order(x)).collect();
        let hit = self.scope.exec.find_first(n as u64, |pi| {
            let pe = pi as usize;
            let t1 = b.star(pe, pe);
            let t2 = b.star(pe, t1);
            let t3 = b.star(pe, t2);
            let mut pw = 0;
            for k in 0..=(2 * ords[pe]) as i64 {
                let lhs = b.star(pe, pw);
                let rhs = g.combination(&[(c1(k), t3), (c2(k), t2), (k, t1)]);
                if lhs != rhs {
                    return Some(k);
                }
                pw = b.circ(pw, pe);
            }
            None
        });
        let checked = ords.iter().map(|&o| 2 * o + 1).sum();
        let witness = hit.map(|(pe, k)| self.witness(&[pe as usize], &[k]));
        self.finish(Stage::Ppn, checked, true, witness)
    }

    fn theorem_stage(&self, stage: Stage, f: &TheoremFocus) -> StageResult {
        let b = self.b;
        let g = b.group();
        let pe = f.p_elem;
        let pm = f.p.pow(f.m) as i64;
        let t1 = b.star(pe, pe);
        let t2 = b.star(pe, t1);
        let ord = b.circ_order(pe) as i64;
        let window = -ord..=ord;
        let wlen = (2 * ord + 1) as u64;
        let ppm = b.circ_power(pe, pm);
        match stage {
            Stage::Prop1 => {
                let in_a3 = self.left.term(3).contains(g.scalar(pm, t1));
                let formula = b.star(pe, ppm) == g.combination(&[(c2(pm), t2), (pm, t1)]);
                let w = match (in_a3, formula) {
                    (true, true) => None,
                    (false, _) => Some(self.witness(&[g.scalar(pm, t1)], &[0])),
                    (true, false) => Some(self.witness(&[b.star(pe, ppm)], &[1])),
                };
                self.finish(stage, 2, true, w)
            }
            Stage::Cor1 => {
                let lhs = g.scalar(pm, t2);
                let rhs = b.star(pe, b.star(pe, ppm));
                let w = (lhs != rhs).then(|| self.witness(&[lhs, rhs], &[]));
                self.finish(stage, 1, true, w)
            }
            Stage::Prop2 => {
                if ppm != g.scalar(pm, pe) {
                    return self.finish(
                        stage,
                        1,
                        true,
                        Some(self.witness(&[ppm, g.scalar(pm, pe)], &[])),
                    );
                }
                let w = window.clone().find_map(|k| {
                    let lhs = g.scalar(pm, b.star(pe, b.star(pe, b.circ_power(pe, k))));
                    let mid = g.scalar(k * pm, t2);
                    (lhs != mid || mid != 0).then(|| self.witness(&[lhs, mid], &[k]))
                });
                self.finish(stage, wlen + 1, true, w)
            }
            Stage::Np2pp => {
                let w = window.clone().find_map(|k| {
                    let lhs = g.scalar(pm, b.star(pe, b.circ_power(pe, k)));
                    let rhs = g.scalar(k * pm, t1);
                    (lhs != rhs).then(|| self.witness(&[lhs, rhs], &[k]))
                });
                self.finish(stage, wlen, true, w)
            }
            Stage::Negpow => {
                let lhs = g.scalar(pm, b.circ_inverse(pe));
                let rhs = g.scalar(-pm, pe);
                let w = (lhs != rhs).then(|| self.witness(&[lhs, rhs], &[]));
                self.finish(stage, 1, true, w)
            }
            Stage::FinalLemma => {
                let hit = (0..b.order()).find(|&a| b.star(pe, g.scalar(pm, a)) != 0);
                let w = hit.map(|a| self.witness(&[a], &[]));
                self.finish(stage, b.order() as u64, true, w)
            }
            _ => unreachable!("not a theorem stage"),
        }
    }

    fn commpow(&self) -> StageResult {
        let b = self.b;
        let n = b.order();
        let ords: Vec<usize> = (0..n).map(|x| b.circ_order(x) as usize).collect();
        let total: u64 = ords.iter().map(|&o| (o * (o - 1) / 2 * n) as u64).sum();
        let holds = |c: usize, k: usize, l: usize, a: usize| {
            let ck = b.circ_power(c, k as i64);
            let cl = b.circ_power(c, l as i64);
            b.star(ck, b.star(cl, a)) == b.star(cl, b.star(ck, a))
        };
        if total <= self.scope.exhaustive_limit {
            let hit = self.scope.exec.find_first(n as u64, |ci| {
                let c = ci as usize;
                let o = ords[c];
                for k in 0..o {
                    for l in 0..k {
                        for a in 0..n {
                            if !holds(c, k, l, a) {
                                return Some((k, l, a));
                            }
                        }
                    }
                }
                None
            });
            let w = hit.map(|(c, (k, l, a))| self.witness(&[c as usize, a], &[k as i64, l as i64]));
            self.finish(Stage::Commpow, total, true, w)
        } else {
            let hit = exec::sample_find_first(
                self.scope.exec,
                self.scope.seed,
                self.scope.sample_budget,
                &[n, n, n, n],
                |t| holds(t[0], t[1] % ords[t[0]], t[2] % ords[t[0]], t[3]),
            );
            let w = hit.map(|t| {
                let o = ords[t[0]];
                self.witness(&[t[0], t[3]], &[(t[1] % o) as i64, (t[2] % o) as i64])
            });
            self.finish(Stage::Commpow, self.scope.sample_budget, false, w)
        }
    }

    fn rel(&self, stage: Stage, (pe, q, p): (usize, usize, u64)) -> StageResult {
        let b = self.b;
        let g = b.group();
        let n = b.order();
        let p2 = (p * p) as i64;
        let p3 = (p * p * p) as usize;
        let pp = |e: i64| b.circ_power(pe, e);
        let qp = |e: i64| b.circ_power(q, e);
        let bounds: Vec<usize> = match stage {
            Stage::Rel2 => vec![p3, p as usize, n],
            _ => vec![p3, p as usize],
        };
        let check = |t: &[usize]| {
            let (e, c) = (t[0] as i64, t[1] as i64);
            let qc = qp(c);
            match stage {
                Stage::Rel1 => {
                    let pn = pp(e);
                    let x = pp((1 + c * p2) * e);
                    b.star(pn, qc) == g.combination(&[(1, b.star(qc, x)), (1, x), (-1, pn)])
                }
                Stage::Qp => {
                    let pk = pp(e);
                    let x = pp(e * (1 - c * p2));
                    b.star(qc, pk) == g.combination(&[(1, b.star(x, qc)), (-1, pk), (1, x)])
                }
                _ => {
                    let d = t[2];
                    let pn = pp(e);
                    let x = pp((1 + c * p2) * e);
                    let lhs = g.add(b.star(pn, b.star(qc, d)), b.star(pn, d));
                    let rhs = g.add(b.star(qc, b.star(x, d)), b.star(x, d));
                    let ppw = pp(p as i64);
                    lhs == rhs && b.star(ppw, b.star(qc, d)) == b.star(qc, b.star(ppw, d))
                }
            }
        };
        let (hit, checked, exhaustive) = exec::sweep_mixed(
            self.scope.exec,
            &bounds,
            self.scope.exhaustive_limit,
            self.scope.sample_budget,
            self.scope.seed,
            check,
        );
        let w = hit.map(|t| {
            let mut els = vec![pe, q];
            if t.len() == 3 {
                els.push(t[2]);
            }
            self.witness(&els, &[t[0] as i64, t[1] as i64])
        });
        self.finish(stage, checked, exhaustive, w)
    }
}
