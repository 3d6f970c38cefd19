use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::abelian::{prime_factors, prime_power};
use crate::brace::Brace;

use super::models::{build_model, GroupModel, Tag};
use super::{find_group_isomorphism, fingerprint, FiniteGroup, GroupError, GroupFingerprint};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// Abelian, with its elementary divisors in increasing order.
    Abelian { invariants: Vec<u64> },
    Matched {
        tag: Tag,
        p: u64,
        alpha: Option<u64>,
        /// Brace elements (as coordinates) playing `P, Q[, R]`.
        generator_images: Vec<Vec<u64>>,
        /// `map[i]` is the brace rank of model element `i`.
        #[serde(skip)]
        map: Vec<usize>,
    },
    /// No model at this prime matches; only reported where coverage is not
    /// expected.
    Unmatched { fingerprint: GroupFingerprint },
}

impl Classification {
    pub fn tag(&self) -> Option<Tag> {
        match self {
            Classification::Matched { tag, .. } => Some(*tag),
            _ => None,
        }
    }

    /// Short label: the tag, `abelian C3xC27`, or `unmatched`.
    pub fn label(&self) -> String {
        match self {
            Classification::Abelian { invariants } => {
                let parts: Vec<String> = invariants.iter().map(|d| format!("C{d}")).collect();
                format!("abelian {}", parts.join("x"))
            }
            Classification::Matched { tag, .. } => tag.to_string(),
            Classification::Unmatched { .. } => "unmatched".to_string(),
        }
    }
}

/// Elementary divisors of an abelian group, from the counts of elements
/// killed by each prime power.
pub fn abelian_invariants(g: &FiniteGroup) -> Vec<u64> {
    let n = g.order();
    let mut out = Vec::new();
    for q in prime_factors(n as u64) {
        // s[k] = log_q #{x : x^{q^k} = 1}
        let mut s = vec![0u32];
        loop {
            let k = s.len() as u32;
            let count = (0..n)
                .filter(|&x| g.pow(x, q.pow(k) as i64) == g.identity())
                .count();
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= q as usize;
                log += 1;
            }
            if log == *s.last().expect("nonempty") {
                break;
            }
            s.push(log);
        }
        // at least k: s[k] - s[k-1]
        let at_least: Vec<u32> = s.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 1..=at_least.len() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(q.pow(k as u32));
            }
        }
    }
    out.sort();
    out
}

type ModelCache = Mutex<BTreeMap<(Tag, u64), Arc<(GroupModel, GroupFingerprint)>>>;

fn cached_model(tag: Tag, p: u64) -> Result<Arc<(GroupModel, GroupFingerprint)>, GroupError> {
    static CACHE: OnceLock<ModelCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(m) = cache.lock().expect("model cache").get(&(tag, p)) {
        return Ok(m.clone());
    }
    let model = build_model(tag, p, None)?;
    let fp = fingerprint(model.group());
    let entry = Arc::new((model, fp));
    cache
        .lock()
        .expect("model cache")
        .insert((tag, p), entry.clone());
    Ok(entry)
}

/// Identifies `(A,∘)`: abelian groups by their invariants, nonabelian ones
/// by a fingerprint screen against every model at `p` confirmed by an
/// explicit isomorphism.
///
/// A nonabelian group that matches nothing is an error (`NoMatch`) for odd
/// `p > 3` when `(A,+)` is `C_{p²} x C_{p²}` or `C_p x C_{p³}`, where the
/// models are expected to cover every case; otherwise it is reported as
/// `Unmatched`.
pub fn classify_multiplicative_group(b: &Brace) -> Result<Classification, GroupError> {
    let order = b.order();
    let p = match prime_power(order as u64) {
        Some((p, 4)) => p,
        _ => return Err(GroupError::BadOrder { order }),
    };
    let g = FiniteGroup::from_brace(b);
    if g.is_abelian() {
        return Ok(Classification::Abelian {
            invariants: abelian_invariants(&g),
        });
    }
    let fp = fingerprint(&g);
    for tag in Tag::available(p) {
        let entry = cached_model(tag, p)?;
        let (model, mfp) = (&entry.0, &entry.1);
        if *mfp != fp {
            continue;
        }
        if let Some(map) = find_group_isomorphism(model.group(), &g) {
            let coords = |x: usize| b.group().unrank(x).expect("rank in range").0;
            return Ok(Classification::Matched {
                tag,
                p,
                alpha: model.alpha,
                generator_images: model.generators().iter().map(|&x| coords(map[x])).collect(),
                map,
            });
        }
    }
    let shape = b.group().sorted_moduli();
    if p > 3 && (shape == [p * p, p * p] || shape == [p, p * p * p]) {
        return Err(GroupError::NoMatch(Box::new(fp)));
    }
    Ok(Classification::Unmatched { fingerprint: fp })
}

/// The tag of a nonabelian group of order `p^4` given as a table, if any
/// model matches.
pub fn classify_group(g: &FiniteGroup, p: u64) -> Result<Option<Tag>, GroupError> {
    let fp = fingerprint(g);
    for tag in Tag::available(p) {
        let entry = cached_model(tag, p)?;
        if entry.1 == fp && find_group_isomorphism(entry.0.group(), g).is_some() {
            return Ok(Some(tag));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, g};

    #[test]
    fn trivial_is_abelian() {
        let c = classify_multiplicative_group(&Brace::trivial(g(&[3, 27]))).unwrap();
        assert_eq!(c.label(), "abelian C3xC27");
    }

    #[test]
    fn diagonal_is_g4() {
        let c = classify_multiplicative_group(&diag327()).unwrap();
        assert_eq!(c.tag(), Some(Tag::G4));
        if let Classification::Matched { map, .. } = &c {
            let e = diag327();
            let m = build_model(Tag::G4, 3, None).unwrap();
            let mg = m.group();
            for x in 0..81 {
                for y in 0..81 {
                    assert_eq!(map[mg.mul(x, y)], e.circ(map[x], map[y]));
                }
            }
        }
    }

    #[test]
    fn round_trip_at_three() {
        for tag in Tag::ALL {
            let m = build_model(tag, 3, None).unwrap();
            let expect = if tag == Tag::XII { Tag::XI } else { tag };
            assert_eq!(classify_group(m.group(), 3).unwrap(), Some(expect), "{tag}");
        }
    }

    #[test]
    fn xi_and_xii_coincide_at_three() {
        // R -> PR turns R^-1 Q R = P^3 Q into R^-1 Q R = Q
        let a = build_model(Tag::XI, 3, None).unwrap();
        let b = build_model(Tag::XII, 3, None).unwrap();
        let (ga, gb) = (a.group(), b.group());
        let images = [
            b.element(&[1, 0, 0]),
            b.element(&[0, 1, 0]),
            b.element(&[1, 0, 1]),
        ];
        let m = super::super::extend(ga, gb, &a.generators(), &images).unwrap();
        assert!(m.iter().all(|&x| x != usize::MAX));
        for x in 0..81 {
            for y in 0..81 {
                assert_eq!(m[ga.mul(x, y)], gb.mul(m[x], m[y]));
            }
        }
    }

    #[test]
    fn round_trip_at_five() {
        for tag in Tag::ALL {
            let m = build_model(tag, 5, None).unwrap();
            assert_eq!(classify_group(m.group(), 5).unwrap(), Some(tag), "{tag}");
        }
    }

    #[test]
    fn invariants_of_products() {
        let t = FiniteGroup::from_brace(&Brace::trivial(g(&[4, 2, 3])));
        assert_eq!(abelian_invariants(&t), vec![2, 3, 4]);
        let t = FiniteGroup::from_brace(&Brace::trivial(g(&[9, 9])));
        assert_eq!(abelian_invariants(&t), vec![9, 9]);
    }

    #[test]
    fn wrong_order() {
        assert!(matches!(
            classify_multiplicative_group(&Brace::trivial(g(&[4, 2]))),
            Err(GroupError::BadOrder { order: 8 })
        ));
    }
}
