use serde::Serialize;

use crate::abelian::prime_power;
use crate::brace::{Brace, Ideal};

use super::series::{center_star, series, SeriesKind};
use super::NilpotencyError;

/// A nonzero `c ∈ Z(A)` with `A∗c = 0`, and what was verified about it.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub c: usize,
    pub coordinates: Vec<u64>,
    /// Ranks of the ideal used for the quotient.
    pub ideal: Vec<usize>,
    /// `c∗A = 0`.
    pub right_annihilated: bool,
    /// The additive span `<c>` is itself an ideal.
    pub span_is_ideal: bool,
    /// `I∗A = A∗I = 0` for the ideal used.
    pub ideal_annihilated: bool,
    pub quotient_order: usize,
}

/// `Z(A) ∩ {c : A∗c = 0}` without zero, in rank order.
pub fn certificate_candidates(b: &Brace) -> Vec<usize> {
    let n = b.order();
    center_star(b)
        .into_iter()
        .filter(|&c| c != 0 && (0..n).all(|a| b.lambda(a, c) == c))
        .collect()
}

/// Picks the candidate of least additive order, ties broken by rank, so the
/// quotient step removes as little as possible.
pub fn annihilator_certificate(b: &Brace) -> Option<Certificate> {
    let g = b.group();
    let c = certificate_candidates(b)
        .into_iter()
        .min_by_key(|&c| (g.additive_order(c), c))?;
    let n = b.order();
    let right_annihilated = (0..n).all(|a| b.star(c, a) == 0);
    let span = g.subgroup_generated(&[c]);
    let (ideal, span_is_ideal) = match Ideal::new(b, span) {
        Ok(i) => (i, true),
        Err(_) => (b.ideal_generated(c), false),
    };
    let ideal_annihilated = ideal
        .subgroup()
        .members()
        .iter()
        .all(|&x| (0..n).all(|a| b.star(x, a) == 0 && b.star(a, x) == 0));
    Some(Certificate {
        c,
        coordinates: g.unrank(c).expect("rank in range").0,
        ideal: ideal.subgroup().members().to_vec(),
        right_annihilated,
        span_is_ideal,
        ideal_annihilated,
        quotient_order: n / ideal.order(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyStep {
    pub order: usize,
    pub moduli: Vec<u64>,
    /// All stars vanish at this level, which ends the recursion.
    pub trivial: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RightNilpotencyVerdict {
    pub right_nilpotent: bool,
    pub steps: Vec<CertifyStep>,
    pub series_class: Option<usize>,
    /// Every certificate found also satisfied `c∗A = 0`.
    pub lemma_held: bool,
}

impl RightNilpotencyVerdict {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }
}

/// Extracts certificates and passes to quotients until the brace is trivial
/// or no certificate exists, then cross-checks against the right series.
pub fn certify_right_nilpotent(b: &Brace) -> Result<RightNilpotencyVerdict, NilpotencyError> {
    let order = b.order();
    if order > 1 && prime_power(order as u64).is_none() {
        return Err(NilpotencyError::NotPrimePower { order });
    }
    let mut steps = Vec::new();
    let mut current = b.clone();
    let verdict = loop {
        let trivial = current.socle().len() == current.order();
        let certificate = if trivial {
            None
        } else {
            annihilator_certificate(&current)
        };
        let next = certificate.as_ref().map(|c| {
            let ideal = Ideal::new(&current, current.group().subgroup_generated(&c.ideal))
                .expect("certificate ideal re-verifies");
            current
                .quotient(&ideal)
                .expect("quotient of a valid brace")
                .brace
        });
        steps.push(CertifyStep {
            order: current.order(),
            moduli: current.group().moduli().to_vec(),
            trivial,
            certificate,
        });
        match next {
            _ if trivial => break true,
            None => break false,
            Some(q) => current = q,
        }
    };
    let series_class = series(b, SeriesKind::Right).class;
    if verdict != series_class.is_some() {
        return Err(NilpotencyError::ConsistencyFailure {
            certificate: verdict,
            series: series_class.is_some(),
        });
    }
    let lemma_held = steps
        .iter()
        .filter_map(|s| s.certificate.as_ref())
        .all(|c| c.right_annihilated);
    Ok(RightNilpotencyVerdict {
        right_nilpotent: verdict,
        steps,
        series_class,
        lemma_held,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, diag44, g, r};

    #[test]
    fn trivial_certificate() {
        let t = Brace::trivial(g(&[4, 4]));
        let c = annihilator_certificate(&t).unwrap();
        assert_eq!(c.coordinates, vec![2, 0]);
        assert!(c.right_annihilated && c.ideal_annihilated);
        assert_eq!(c.quotient_order, 8);
        let v = certify_right_nilpotent(&t).unwrap();
        assert!(v.right_nilpotent);
        assert_eq!(v.depth(), 1);
    }

    #[test]
    fn diagonal_certificates() {
        let d = diag44();
        let c = annihilator_certificate(&d).unwrap();
        assert_eq!(c.coordinates, vec![2, 0]);
        assert!(c.span_is_ideal && c.right_annihilated);
        let v = certify_right_nilpotent(&d).unwrap();
        assert!(v.right_nilpotent && v.lemma_held);
        assert_eq!(
            v.steps[0].certificate.as_ref().unwrap().c,
            r(d.group(), &[2, 0])
        );
        assert!(v.steps.last().unwrap().trivial);
        assert_eq!(v.series_class, Some(3));

        let e = diag327();
        let c = annihilator_certificate(&e).unwrap();
        assert_eq!(c.coordinates, vec![0, 9]);
        assert!(certificate_candidates(&e).contains(&r(e.group(), &[0, 3])));
        assert!(certify_right_nilpotent(&e).unwrap().right_nilpotent);
    }

    #[test]
    fn rejects_composite_order() {
        let t = Brace::trivial(g(&[6]));
        assert_eq!(
            certify_right_nilpotent(&t).unwrap_err(),
            NilpotencyError::NotPrimePower { order: 6 }
        );
    }
}
