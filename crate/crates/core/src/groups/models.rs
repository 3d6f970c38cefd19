use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::abelian::is_prime;
use crate::exec::Exec;

use super::{FiniteGroup, GroupError};

/// The nonabelian groups of order `p^4` that are modelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tag {
    /// `P^{p³} = Q^p = 1`, `Q^{-1}PQ = P^{1+p²}`.
    G4,
    /// `P^{p²} = Q^p = R^p = 1`, `P` central, `R^{-1}QR = QP^p`.
    VII,
    /// `P^{p²} = Q^{p²} = 1`, `Q^{-1}PQ = P^{1+p}`.
    VIII,
    /// `P^{p²} = Q^p = R^p = 1`, `Q` central, `R^{-1}PR = P^{1+p}`.
    IX,
    /// `P^{p²} = Q^p = R^p = 1`, `Q` central, `R^{-1}PR = PQ`.
    X,
    /// `Q^{-1}PQ = P^{1+p}`, `R^{-1}PR = PQ`, `R^{-1}QR = P^{αp}Q` with `α = 0`.
    XI,
    /// As XI with `α` a nonzero quadratic residue.
    XII,
    /// As XI with `α` a quadratic non-residue.
    XIII,
}

impl Tag {
    pub const ALL: [Tag; 8] = [
        Tag::G4,
        Tag::VII,
        Tag::VIII,
        Tag::IX,
        Tag::X,
        Tag::XI,
        Tag::XII,
        Tag::XIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::G4 => "G4",
            Tag::VII => "VII",
            Tag::VIII => "VIII",
            Tag::IX => "IX",
            Tag::X => "X",
            Tag::XI => "XI",
            Tag::XII => "XII",
            Tag::XIII => "XIII",
        }
    }

    /// Tags with a model at `p`.
    pub fn available(p: u64) -> Vec<Tag> {
        if p == 2 {
            vec![Tag::G4]
        } else {
            Tag::ALL.to_vec()
        }
    }

    fn uses_alpha(self) -> bool {
        matches!(self, Tag::XI | Tag::XII | Tag::XIII)
    }

    /// Exponent bounds of the normal form `P^a Q^b [R^c]`.
    fn radices(self, p: u64) -> Vec<u64> {
        match self {
            Tag::G4 => vec![p * p * p, p],
            Tag::VIII => vec![p * p, p * p],
            _ => vec![p * p, p, p],
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown group tag '{s}'"))
    }
}

fn is_residue(a: u64, p: u64) -> bool {
    !a.is_multiple_of(p) && (1..p).any(|x| x * x % p == a % p)
}

/// Least quadratic non-residue modulo an odd prime.
pub fn smallest_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&a| !is_residue(a, p))
        .expect("odd primes have non-residues")
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub tag: Tag,
    pub p: u64,
    pub relations: Vec<RelationCheck>,
    pub associativity_checked: u64,
    pub associativity_exhaustive: bool,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }
}

/// A group of order `p^4` on normal forms `P^a Q^b [R^c]`, indexed little
/// endian by the exponents.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub tag: Tag,
    pub p: u64,
    pub alpha: Option<u64>,
    radices: Vec<u64>,
    group: FiniteGroup,
    report: RelationReport,
}

impl GroupModel {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    /// Index of `P^a Q^b R^c` (missing exponents are zero).
    pub fn element(&self, exps: &[u64]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (i, &r) in self.radices.iter().enumerate() {
            idx += (exps.get(i).copied().unwrap_or(0) % r) as usize * stride;
            stride *= r as usize;
        }
        idx
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<u64> {
        self.radices
            .iter()
            .map(|&r| {
                let e = (idx % r as usize) as u64;
                idx /= r as usize;
                e
            })
            .collect()
    }

    /// The generators `P, Q[, R]`.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.radices.len())
            .map(|i| {
                let mut e = vec![0; self.radices.len()];
                e[i] = 1;
                self.element(&e)
            })
            .collect()
    }

    /// The relation and associativity checks run at build time.
    pub fn report(&self) -> &RelationReport {
        &self.report
    }
}

fn decode(idx: usize, radices: &[u64]) -> [u64; 3] {
    let mut out = [0; 3];
    let mut rest = idx as u64;
    for (slot, &r) in out.iter_mut().zip(radices) {
        *slot = rest % r;
        rest /= r;
    }
    out
}

fn encode(e: [u64; 3], radices: &[u64]) -> usize {
    let mut idx = 0u64;
    let mut stride = 1u64;
    for (&x, &r) in e.iter().zip(radices) {
        idx += (x % r) * stride;
        stride *= r;
    }
    idx as usize
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `N = <P, Q>` with `P^{p²} = Q^p = 1`, `Q^{-1}PQ = P^{1+p}`, and the
/// automorphism `θ(x) = R^{-1}xR` with `θ(P) = PQ`, `θ(Q) = P^{αp}Q`, as
/// tables of `θ^k` for `k < p`.
struct SemidirectData {
    n_mul: Vec<usize>,
    theta_pow: Vec<Vec<usize>>,
}

fn semidirect_data(p: u64, alpha: u64) -> Option<SemidirectData> {
    let p2 = p * p;
    let size = (p2 * p) as usize;
    let idx = |a: u64, b: u64| (a % p2 + p2 * (b % p)) as usize;
    let mut n_mul = vec![0usize; size * size];
    for x in 0..size {
        let (a, b) = (x as u64 % p2, x as u64 / p2);
        for y in 0..size {
            let (c, d) = (y as u64 % p2, y as u64 / p2);
            // Q^b P^c = P^{c(1-p)^b} Q^b
            n_mul[x * size + y] = idx(a + c * pow_mod(p2 + 1 - p, b, p2), b + d);
        }
    }
    let mul = |x: usize, y: usize| n_mul[x * size + y];
    let npow = |x: usize, k: u64| (0..k).fold(0, |acc, _| mul(acc, x));
    let tp = idx(1, 1);
    let tq = idx(alpha * p, 1);
    let theta: Vec<usize> = (0..size)
        .map(|x| mul(npow(tp, x as u64 % p2), npow(tq, x as u64 / p2)))
        .collect();
    let hom = (0..size).all(|x| (0..size).all(|y| theta[mul(x, y)] == mul(theta[x], theta[y])));
    let mut seen = vec![false; size];
    for &t in &theta {
        seen[t] = true;
    }
    if !hom || !seen.iter().all(|&s| s) {
        return None;
    }
    let mut theta_pow = vec![(0..size).collect::<Vec<usize>>()];
    for k in 1..=p as usize {
        let prev = &theta_pow[k - 1];
        theta_pow.push(prev.iter().map(|&x| theta[x]).collect());
    }
    if theta_pow[p as usize]
        .iter()
        .enumerate()
        .any(|(i, &x)| i != x)
    {
        return None;
    }
    theta_pow.pop();
    Some(SemidirectData { n_mul, theta_pow })
}

/// Builds the model and runs [`verify_presentation_relations`] on it.
pub fn build_model(tag: Tag, p: u64, alpha: Option<u64>) -> Result<GroupModel, GroupError> {
    if !is_prime(p) || (p == 2 && tag != Tag::G4) {
        return Err(GroupError::UnsupportedPrime { tag, p });
    }
    let alpha = if tag.uses_alpha() {
        let a = alpha.unwrap_or(match tag {
            Tag::XI => 0,
            Tag::XII => 1,
            _ => smallest_non_residue(p),
        });
        let ok = match tag {
            Tag::XI => a.is_multiple_of(p),
            Tag::XII => is_residue(a, p),
            _ => !a.is_multiple_of(p) && !is_residue(a, p),
        };
        if !ok {
            return Err(GroupError::BadAlpha { tag, p, alpha: a });
        }
        Some(a % p)
    } else {
        if let Some(a) = alpha {
            return Err(GroupError::BadAlpha { tag, p, alpha: a });
        }
        None
    };
    let radices = tag.radices(p);
    let n = radices.iter().product::<u64>() as usize;
    let (p2, p3) = (p * p, p * p * p);
    let semi = match alpha {
        Some(a) => Some(semidirect_data(p, a).ok_or(GroupError::UnsupportedPrime { tag, p })?),
        None => None,
    };
    let mul = |x: usize, y: usize| -> usize {
        let [a, b, c] = decode(x, &radices);
        let [d, e, f] = decode(y, &radices);
        let r = &radices;
        match tag {
            // Q^b P^d = P^{d(1-bp²)} Q^b
            Tag::G4 => encode([a + d * ((p3 + 1 - (b * p2) % p3) % p3), b + e, 0], r),
            // Q^b P^d = P^{d(1-p)^b} Q^b
            Tag::VIII => encode([a + d * pow_mod(p2 + 1 - p, b, p2), b + e, 0], r),
            // R^c Q^e = Q^e P^{-pce} R^c, P central
            Tag::VII => encode([a + d + p2 - (p * c * e) % p2, b + e, c + f], r),
            // R^c P^d = P^{d(1-cp)} R^c, Q central
            Tag::IX => encode([a + d * ((p2 + 1 - (c * p) % p2) % p2), b + e, c + f], r),
            // R^c P^d = P^d Q^{-cd} R^c, Q central
            Tag::X => encode([a + d, b + e + p - (c * d) % p, c + f], r),
            _ => {
                let s = semi.as_ref().expect("semidirect data");
                let nsize = (p2 * p) as usize;
                let n1 = (a + p2 * b) as usize;
                let n2 = (d + p2 * e) as usize;
                let k = ((p - c) % p) as usize;
                let prod = s.n_mul[n1 * nsize + s.theta_pow[k][n2]];
                encode([prod as u64 % p2, prod as u64 / p2, c + f], r)
            }
        }
    };
    let group = FiniteGroup::from_fn(n, mul).ok_or(GroupError::UnsupportedPrime { tag, p })?;
    let mut model = GroupModel {
        tag,
        p,
        alpha,
        radices,
        group,
        report: RelationReport {
            tag,
            p,
            relations: Vec::new(),
            associativity_checked: 0,
            associativity_exhaustive: false,
        },
    };
    model.report = verify_presentation_relations(&model)?;
    Ok(model)
}

/// Checks associativity (exhaustive at order 81 or less, `10^5` seeded
/// triples above), the defining relations and the derived identities.
pub fn verify_presentation_relations(model: &GroupModel) -> Result<RelationReport, GroupError> {
    let g = &model.group;
    let (p, n) = (model.p as i64, g.order());
    let (hit, checked, exhaustive) =
        g.associativity_witness(Exec::default(), 81 * 81 * 81, 100_000, 0);
    if let Some((a, b, c)) = hit {
        return Err(GroupError::NotAssociative(a, b, c));
    }
    let gens = model.generators();
    let (pe, q) = (gens[0], gens[1]);
    let r = gens.get(2).copied();
    let e = g.identity();
    let pw = |x: usize, k: i64| g.pow(x, k);
    let mut rel: Vec<(String, bool)> = Vec::new();
    let mut push = |name: &str, ok: bool| rel.push((name.to_string(), ok));
    push("generators span", g.generated(&gens).iter().all(|&x| x));
    push("order p^4", n as i64 == p.pow(4));
    match model.tag {
        Tag::G4 => {
            push("P^(p^3) = 1", pw(pe, p.pow(3)) == e);
            push("Q^p = 1", pw(q, p) == e);
            push("Q^-1 P Q = P^(1+p^2)", g.conj(q, pe) == pw(pe, 1 + p * p));
            push("Q^-1 P^p Q = P^p", g.conj(q, pw(pe, p)) == pw(pe, p));
            push("P^(p^2) central", g.is_central(pw(pe, p * p)));
            push("P^p central", g.is_central(pw(pe, p)));
        }
        Tag::VIII => {
            push("P^(p^2) = 1", pw(pe, p * p) == e);
            push("Q^(p^2) = 1", pw(q, p * p) == e);
            push("Q^-1 P Q = P^(1+p)", g.conj(q, pe) == pw(pe, 1 + p));
        }
        tag => {
            let r = r.expect("three generators");
            push("P^(p^2) = 1", pw(pe, p * p) == e);
            push("Q^p = 1", pw(q, p) == e);
            push("R^p = 1", pw(r, p) == e);
            match tag {
                Tag::VII => {
                    push("PQ = QP", g.commutes(pe, q));
                    push("PR = RP", g.commutes(pe, r));
                    push("R^-1 Q R = Q P^p", g.conj(r, q) == g.mul(q, pw(pe, p)));
                }
                Tag::IX => {
                    push("PQ = QP", g.commutes(pe, q));
                    push("QR = RQ", g.commutes(q, r));
                    push("R^-1 P R = P^(1+p)", g.conj(r, pe) == pw(pe, 1 + p));
                    push("R^-1 P^p R = P^p", g.conj(r, pw(pe, p)) == pw(pe, p));
                    push("P^p central", g.is_central(pw(pe, p)));
                }
                Tag::X => {
                    push("R^-1 P R = PQ", g.conj(r, pe) == g.mul(pe, q));
                    push("PQ = QP", g.commutes(pe, q));
                    push("QR = RQ", g.commutes(q, r));
                    push("P^p central", g.is_central(pw(pe, p)));
                }
                _ => {
                    let alpha = model.alpha.expect("alpha") as i64;
                    push("Q^-1 P Q = P^(1+p)", g.conj(q, pe) == pw(pe, 1 + p));
                    push("R^-1 P R = PQ", g.conj(r, pe) == g.mul(pe, q));
                    push(
                        "R^-1 Q R = P^(alpha p) Q",
                        g.conj(r, q) == g.mul(pw(pe, alpha * p), q),
                    );
                    push("R^-1 P^p R = Q^p P^p = P^p", {
                        let lhs = g.conj(r, pw(pe, p));
                        lhs == g.mul(pw(q, p), pw(pe, p)) && lhs == pw(pe, p)
                    });
                    push("P^p central", g.is_central(pw(pe, p)));
                }
            }
        }
    }
    if let Some((name, _)) = rel.iter().find(|(_, ok)| !ok) {
        return Err(GroupError::RelationFailure {
            relation: name.clone(),
        });
    }
    Ok(RelationReport {
        tag: model.tag,
        p: model.p,
        relations: rel
            .into_iter()
            .map(|(relation, holds)| RelationCheck { relation, holds })
            .collect(),
        associativity_checked: checked,
        associativity_exhaustive: exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fingerprint;
    use super::*;

    #[test]
    fn all_tags_build_at_three() {
        for tag in Tag::ALL {
            let m = build_model(tag, 3, None).unwrap();
            assert_eq!(m.group().order(), 81);
            assert!(m.report().passed() && m.report().associativity_exhaustive);
            assert!(!m.group().is_abelian());
        }
    }

    #[test]
    fn spec_examples() {
        let g4 = build_model(Tag::G4, 3, None).unwrap();
        let g = g4.group();
        let (pe, q) = (g4.generators()[0], g4.generators()[1]);
        assert_eq!(g.conj(q, pe), g.pow(pe, 10));
        assert_eq!(g.pow(pe, 27), g.identity());
        let f = fingerprint(g);
        assert_eq!(f.exponent, 27);
        assert!(f.order_histogram.contains_key(&27));

        let m8 = build_model(Tag::VIII, 3, None).unwrap();
        let g = m8.group();
        let (pe, q) = (m8.generators()[0], m8.generators()[1]);
        assert_eq!(g.conj(q, pe), g.pow(pe, 4));
        assert_eq!(fingerprint(g).center_order, 9);

        assert_eq!(build_model(Tag::XIII, 5, Some(2)).unwrap().alpha, Some(2));
        assert!(matches!(
            build_model(Tag::XIII, 5, Some(4)),
            Err(GroupError::BadAlpha { .. })
        ));
        assert!(matches!(
            build_model(Tag::XII, 5, Some(2)),
            Err(GroupError::BadAlpha { .. })
        ));
        assert!(matches!(
            build_model(Tag::VII, 2, None),
            Err(GroupError::UnsupportedPrime { .. })
        ));
        assert_eq!(build_model(Tag::G4, 2, None).unwrap().group().order(), 16);
    }

    #[test]
    fn normal_form_indexing() {
        let m = build_model(Tag::IX, 3, None).unwrap();
        for i in 0..81 {
            assert_eq!(m.element(&m.exponents(i)), i);
        }
        assert_eq!(smallest_non_residue(5), 2);
        assert_eq!(smallest_non_residue(7), 3);
        assert_eq!("xiii".parse::<Tag>().unwrap(), Tag::XIII);
    }

    #[test]
    fn only_g4_has_exponent_p_cubed() {
        for tag in Tag::ALL {
            let m = build_model(tag, 3, None).unwrap();
            assert_eq!(
                fingerprint(m.group()).exponent == 27,
                tag == Tag::G4,
                "{tag}"
            );
        }
    }
}
