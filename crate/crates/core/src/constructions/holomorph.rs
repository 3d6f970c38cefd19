use serde::Serialize;

use crate::abelian::CyclicDecomposition;

use super::auts::AutTable;
use super::enumerate::{guard, EnumOptions};
use super::ConstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HolomorphCount {
    /// Regular subgroups of `Hol(A) = A ⋊ Aut(A)`.
    pub total: u64,
    /// Their classes under conjugation by `Aut(A)`.
    pub classes: u64,
}

/// Element `(t, φ)` of the holomorph, stored as `t * m + φ`.
struct Hol<'a> {
    group: &'a CyclicDecomposition,
    auts: &'a AutTable,
    m: usize,
}

impl Hol<'_> {
    /// `(s, ψ)(t, φ) = (s + ψ(t), ψφ)`.
    fn mul(&self, x: usize, y: usize) -> usize {
        let (s, psi) = (x / self.m, x % self.m);
        let (t, phi) = (y / self.m, y % self.m);
        self.group.add(s, self.auts.apply(psi, t)) * self.m + self.auts.comp(psi, phi)
    }

    /// Closes `elems` under multiplication. Fails as soon as two elements
    /// share a translation part, i.e. the subgroup is not semiregular.
    fn close(&self, by_translation: &mut [usize], elems: &mut Vec<usize>) -> bool {
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            let mut j = 0;
            while j <= i {
                let y = elems[j];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    let t = z / self.m;
                    if by_translation[t] == usize::MAX {
                        by_translation[t] = z;
                        elems.push(z);
                    } else if by_translation[t] != z {
                        return false;
                    }
                }
                j += 1;
            }
            i += 1;
        }
        true
    }

    fn search(&self, by_translation: &[usize], elems: &[usize], out: &mut Vec<Vec<usize>>) {
        let Some(t) = by_translation.iter().position(|&z| z == usize::MAX) else {
            out.push(by_translation.iter().map(|z| z % self.m).collect());
            return;
        };
        for phi in 0..self.m {
            let (mut bt, mut el) = (by_translation.to_vec(), elems.to_vec());
            let z = t * self.m + phi;
            bt[t] = z;
            el.push(z);
            if self.close(&mut bt, &mut el) {
                self.search(&bt, &el, out);
            }
        }
    }
}

/// Counts regular subgroups of the holomorph of `A`, directly from the
/// semidirect product, and their `Aut(A)`-conjugacy classes by Burnside's
/// lemma. These equal the labelled and isomorphism-class counts of braces
/// with additive group `A`.
pub fn holomorph_count_oracle(
    moduli: &[u64],
    opts: EnumOptions,
) -> Result<HolomorphCount, ConstructionError> {
    let group = CyclicDecomposition::new(moduli.to_vec())?;
    let n = group.order();
    if !opts.force && n > opts.max_order {
        return Err(guard(n, None, opts));
    }
    let auts = AutTable::build(&group, (!opts.force).then_some(opts.max_aut))
        .map_err(|m| guard(n, Some(m), opts))?;
    let m = auts.len();
    let hol = Hol {
        group: &group,
        auts: &auts,
        m,
    };
    let mut by_translation = vec![usize::MAX; n];
    let identity = auts.identity;
    by_translation[0] = identity;
    let elems = vec![identity];
    let mut subgroups = Vec::new();
    hol.search(&by_translation, &elems, &mut subgroups);

    // ψ fixes H = {(t, φ_t)} iff φ_{ψ(t)} = ψ φ_t ψ^{-1} for every t
    let fixed_total: u64 = opts
        .exec
        .map_collect(m, |psi| {
            subgroups
                .iter()
                .filter(|h| (0..n).all(|t| h[auts.apply(psi, t)] == auts.conj(psi, h[t])))
                .count() as u64
        })
        .into_iter()
        .sum();
    Ok(HolomorphCount {
        total: subgroups.len() as u64,
        classes: fixed_total / m as u64,
    })
}
