use serde::Serialize;

use crate::abelian::prime_power;
use crate::brace::Brace;

use super::series::{center_star, series, SeriesKind};
use super::NilpotencyError;

#[derive(Clone, Debug, Serialize)]
pub struct PaBoundReport {
    pub p: u64,
    pub pa_order: usize,
    /// `|A∗pA|`.
    pub a_star_pa_order: usize,
    /// `|A∗(A∗pA)|`.
    pub a_star_a_star_pa_order: usize,
    /// `|A∗pA| <= p`, and `A∗(A∗pA) = 0` when `A∗pA != 0`.
    pub bound_holds: bool,
    /// `pA ⊆ Z(A)`.
    pub pa_central: bool,
    /// The bound restricted to braces with `pA ⊆ Z(A)`.
    pub conditional_holds: bool,
}

/// The `|A∗pA| ∈ {1, p}` dichotomy on `C_{p²} x C_{p²}`.
pub fn pa_bound_check(b: &Brace) -> Result<PaBoundReport, NilpotencyError> {
    let bad = |s: String| Err(NilpotencyError::PreconditionMismatch(s));
    let (p, k) = match prime_power(b.order() as u64) {
        Some(pk) => pk,
        None => return bad(format!("order {} is not a prime power", b.order())),
    };
    if k != 4 || b.group().sorted_moduli() != vec![p * p, p * p] {
        return bad(format!("additive group {} is not C_p^2 x C_p^2", b.group()));
    }
    if !series(b, SeriesKind::Left).class.is_some_and(|c| c <= 5) {
        return bad("left series does not reach {0} by term 5".into());
    }
    let g = b.group();
    let all = b.all_elements();
    let pa = g.multiples_subgroup(p as i64);
    let s = b.subset_star(&all, pa.members());
    let t = b.subset_star(&all, s.members());
    let bound_holds = s.order() as u64 <= p && (s.is_trivial() || t.is_trivial());
    let center = center_star(b);
    let pa_central = pa.members().iter().all(|x| center.binary_search(x).is_ok());
    Ok(PaBoundReport {
        p,
        pa_order: pa.order(),
        a_star_pa_order: s.order(),
        a_star_a_star_pa_order: t.order(),
        bound_holds,
        pa_central,
        conditional_holds: !pa_central || bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::{diag327, diag44, g};

    #[test]
    fn examples() {
        let t = pa_bound_check(&Brace::trivial(g(&[4, 4]))).unwrap();
        assert_eq!(t.a_star_pa_order, 1);
        assert!(t.bound_holds && t.pa_central);
        let d = pa_bound_check(&diag44()).unwrap();
        assert_eq!(d.a_star_pa_order, 1);
        assert!(d.bound_holds);
        assert_eq!(d.pa_order, 4);
    }

    #[test]
    fn wrong_shape() {
        assert!(matches!(
            pa_bound_check(&diag327()),
            Err(NilpotencyError::PreconditionMismatch(_))
        ));
    }
}
