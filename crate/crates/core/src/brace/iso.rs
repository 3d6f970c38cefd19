use std::collections::BTreeMap;

use serde::Serialize;

use super::Brace;

/// Isomorphism-invariant data attached to a single element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementFingerprint {
    pub additive_order: u64,
    pub circ_order: u64,
    pub lambda_order: u64,
    /// Number of fixed points of `λ_a`.
    pub lambda_fixed: usize,
}

pub fn element_fingerprints(b: &Brace) -> Vec<ElementFingerprint> {
    (0..b.order())
        .map(|a| ElementFingerprint {
            additive_order: b.group().additive_order(a),
            circ_order: b.circ_order(a),
            lambda_order: b.lambda_order(a),
            lambda_fixed: b
                .lambda_row(a)
                .iter()
                .enumerate()
                .filter(|&(x, &y)| x == y as usize)
                .count(),
        })
        .collect()
}

fn histogram(fp: &[ElementFingerprint]) -> BTreeMap<ElementFingerprint, usize> {
    let mut h = BTreeMap::new();
    for f in fp {
        *h.entry(*f).or_insert(0) += 1;
    }
    h
}

/// Finds `φ: A -> B` with `φ(a+b) = φ(a)+φ(b)` and `φ(a∘b) = φ(a)∘φ(b)`.
///
/// `φ` is additive, so it is fixed by the images of the standard generators
/// of `A`. Those images are searched by backtracking, restricted to elements
/// with the generator's fingerprint; after each assignment the partial map on
/// the span of the assigned generators is checked for injectivity,
/// fingerprint agreement and λ-compatibility wherever it is defined.
pub fn is_isomorphic(a: &Brace, b: &Brace) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let fa = element_fingerprints(a);
    let fb = element_fingerprints(b);
    if histogram(&fa) != histogram(&fb) {
        return None;
    }
    let mut search = Search {
        a,
        b,
        fa: &fa,
        fb: &fb,
        images: Vec::new(),
    };
    search.run(0)
}

struct Search<'x> {
    a: &'x Brace,
    b: &'x Brace,
    fa: &'x [ElementFingerprint],
    fb: &'x [ElementFingerprint],
    images: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, j: usize) -> Option<Vec<usize>> {
        let ga = self.a.group();
        let k = ga.rank_count();
        if j == k {
            let map = self.partial_map(k)?;
            return self.is_full_isomorphism(&map).then_some(map);
        }
        let target = self.fa[ga.generator(j)];
        for y in 0..self.b.order() {
            if self.fb[y] != target {
                continue;
            }
            self.images.push(y);
            let ok = match self.partial_map(j + 1) {
                Some(map) => self.consistent_on_span(&map),
                None => false,
            };
            if ok {
                if let Some(found) = self.run(j + 1) {
                    return Some(found);
                }
            }
            self.images.pop();
        }
        None
    }

    /// φ on span(e_0..e_{j-1}) as a vector over ranks of `A`, `usize::MAX`
    /// outside the span. `None` if not injective.
    fn partial_map(&self, j: usize) -> Option<Vec<usize>> {
        let ga = self.a.group();
        let gb = self.b.group();
        let mut map = vec![usize::MAX; self.a.order()];
        let mut hit = vec![false; self.b.order()];
        map[0] = 0;
        hit[0] = true;
        let mut frontier = vec![(0usize, 0usize)];
        for i in 0..j {
            let d = ga.moduli()[i] as usize;
            let step_a = ga.generator(i);
            let step_b = self.images[i];
            let mut next = Vec::with_capacity(frontier.len() * d);
            for &(x, y) in &frontier {
                let (mut xa, mut yb) = (x, y);
                for c in 0..d {
                    if c > 0 {
                        xa += step_a;
                        yb = gb.add(yb, step_b);
                        if hit[yb] {
                            return None;
                        }
                        hit[yb] = true;
                        map[xa] = yb;
                    }
                    next.push((xa, yb));
                }
            }
            frontier = next;
        }
        Some(map)
    }

    fn consistent_on_span(&self, map: &[usize]) -> bool {
        let dom: Vec<usize> = (0..map.len()).filter(|&x| map[x] != usize::MAX).collect();
        if dom.iter().any(|&x| self.fa[x] != self.fb[map[x]]) {
            return false;
        }
        for &x in &dom {
            for &y in &dom {
                let l = self.a.lambda(x, y);
                if map[l] != usize::MAX && map[l] != self.b.lambda(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }

    fn is_full_isomorphism(&self, map: &[usize]) -> bool {
        let ga = self.a.group();
        (0..self.a.order()).all(|x| {
            (0..ga.rank_count()).all(|j| {
                let e = ga.generator(j);
                map[self.a.lambda(x, e)] == self.b.lambda(map[x], self.images[j])
            })
        })
    }
}
