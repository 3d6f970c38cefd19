use serde::{Deserialize, Serialize};

use crate::abelian::{is_prime, AbelianAutomorphism, AbelianError, CyclicDecomposition, Element};
use crate::brace::Brace;

use super::ConstructionError;

/// A named brace family and its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Trivial {
        moduli: Vec<u64>,
    },
    /// `Z_{p²} x Z_{p²}`, `λ_(a,b)(x,y) = ((1+p)^b x, y)`.
    DiagonalM1 {
        p: u64,
    },
    /// `Z_p x Z_{p³}`, `λ_(a,b)(x,y) = (x, (1+p²)^a y)`.
    DiagonalM2 {
        p: u64,
    },
    Ring(RingSpec),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Brace, ConstructionError> {
        match self {
            ConstructionSpec::Trivial { moduli } => trivial_brace(moduli),
            ConstructionSpec::DiagonalM1 { p } => diagonal_brace_m1(*p),
            ConstructionSpec::DiagonalM2 { p } => diagonal_brace_m2(*p),
            ConstructionSpec::Ring(r) => ring_brace(r),
        }
    }

    /// A short name such as `diagonal-m1 p=3`.
    pub fn label(&self) -> String {
        let mods = |m: &[u64]| m.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            ConstructionSpec::Trivial { moduli } => format!("trivial [{}]", mods(moduli)),
            ConstructionSpec::DiagonalM1 { p } => format!("diagonal-m1 p={p}"),
            ConstructionSpec::DiagonalM2 { p } => format!("diagonal-m2 p={p}"),
            ConstructionSpec::Ring(r) => match &r.name {
                Some(n) => format!("ring {n}"),
                None => format!("ring [{}]", mods(&r.moduli)),
            },
        }
    }
}

/// Structure constants of a ring on `Z_{d_1} x ... x Z_{d_k}`: the nonzero
/// products `e_i · e_j` of standard generators, as coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub moduli: Vec<u64>,
    pub products: Vec<RingProduct>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingProduct {
    pub i: usize,
    pub j: usize,
    pub value: Vec<u64>,
}

pub fn trivial_brace(moduli: &[u64]) -> Result<Brace, ConstructionError> {
    Ok(Brace::trivial(CyclicDecomposition::new(moduli.to_vec())?))
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

fn prime(p: u64) -> Result<u64, ConstructionError> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(ConstructionError::NotPrime(p))
    }
}

/// λ_x scales coordinate `target` by `unit^(coordinate control of x)`.
fn diagonal(
    moduli: Vec<u64>,
    control: usize,
    target: usize,
    unit: u64,
) -> Result<Brace, ConstructionError> {
    let group = CyclicDecomposition::new(moduli)?;
    let d = group.moduli()[target];
    let lambdas = (0..group.order())
        .map(|x| {
            let f = pow_mod(unit, group.coord(x, control), d);
            let cols = (0..group.rank_count())
                .map(|j| {
                    let g = group.generator(j);
                    if j == target {
                        group.scalar(f as i64, g)
                    } else {
                        g
                    }
                })
                .collect();
            AbelianAutomorphism::validate(&group, cols)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Brace::new(group, lambdas)?)
}

pub fn diagonal_brace_m1(p: u64) -> Result<Brace, ConstructionError> {
    let p = prime(p)?;
    diagonal(vec![p * p, p * p], 1, 0, 1 + p)
}

pub fn diagonal_brace_m2(p: u64) -> Result<Brace, ConstructionError> {
    let p = prime(p)?;
    diagonal(vec![p, p * p * p], 0, 1, 1 + p * p)
}

/// The bilinear product on ranks.
struct RingTable {
    n: usize,
    mul: Vec<usize>,
}

fn ring_table(group: &CyclicDecomposition, basis: &[Vec<usize>]) -> RingTable {
    let n = group.order();
    let k = group.rank_count();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = 0;
            for (i, row) in basis.iter().enumerate().take(k) {
                let ai = group.coord(a, i);
                if ai == 0 {
                    continue;
                }
                for (j, &v) in row.iter().enumerate().take(k) {
                    let bj = group.coord(b, j);
                    if bj != 0 {
                        acc = group.add(acc, group.scalar((ai * bj) as i64, v));
                    }
                }
            }
            mul[a * n + b] = acc;
        }
    }
    RingTable { n, mul }
}

/// The brace of a nilpotent ring: `a∘b = a + b + a·b`, so `λ_a(b) = b + a·b`.
pub fn ring_brace(spec: &RingSpec) -> Result<Brace, ConstructionError> {
    let group = CyclicDecomposition::new(spec.moduli.clone())?;
    let k = group.rank_count();
    let mut basis = vec![vec![0usize; k]; k];
    for pr in &spec.products {
        if pr.i >= k || pr.j >= k {
            return Err(ConstructionError::Abelian(AbelianError::IndexOutOfRange {
                index: pr.i.max(pr.j),
                order: k,
            }));
        }
        let v = group.rank(&Element(pr.value.clone()))?;
        // e_i·e_j must be killed by both d_i and d_j for the product to be
        // well defined on Z_{d_i} x Z_{d_j}
        let (di, dj) = (group.moduli()[pr.i], group.moduli()[pr.j]);
        if group.scalar(di as i64, v) != 0 || group.scalar(dj as i64, v) != 0 {
            return Err(ConstructionError::NotDistributive { i: pr.i, j: pr.j });
        }
        basis[pr.i][pr.j] = v;
    }
    let t = ring_table(&group, &basis);
    let n = t.n;
    let m = |a: usize, b: usize| t.mul[a * n + b];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let (a, b, c) = (group.generator(i), group.generator(j), group.generator(l));
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(ConstructionError::NotAssociative { i, j, k: l });
                }
            }
        }
    }
    // R ⊇ R² ⊇ R³ ...; nilpotent iff it reaches 0
    let all: Vec<usize> = (0..n).collect();
    let mut power = group.whole();
    loop {
        let gens: Vec<usize> = power
            .members()
            .iter()
            .flat_map(|&x| all.iter().map(move |&y| (x, y)))
            .map(|(x, y)| m(x, y))
            .collect();
        let next = group.subgroup_generated(&gens);
        if next.is_trivial() {
            break;
        }
        if next.order() == power.order() {
            return Err(ConstructionError::NotNilpotent);
        }
        power = next;
    }
    let lambdas = (0..n)
        .map(|a| {
            let cols = (0..k)
                .map(|j| {
                    let e = group.generator(j);
                    group.add(e, m(a, e))
                })
                .collect();
            AbelianAutomorphism::validate(&group, cols)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Brace::new(group, lambdas)?)
}

/// The ring examples of the built-in corpus.
pub fn ring_examples() -> Vec<RingSpec> {
    let prod = |i, j, value: &[u64]| RingProduct {
        i,
        j,
        value: value.to_vec(),
    };
    vec![
        RingSpec {
            name: Some("Z4 x*y=2xy".into()),
            moduli: vec![4],
            products: vec![prod(0, 0, &[2])],
        },
        RingSpec {
            name: Some("C2xC2 e1*e1=e2".into()),
            moduli: vec![2, 2],
            products: vec![prod(0, 0, &[0, 1])],
        },
        RingSpec {
            name: Some("Z9 x*y=3xy".into()),
            moduli: vec![9],
            products: vec![prod(0, 0, &[3])],
        },
        RingSpec {
            name: Some("C3xC3 e1*e1=e2".into()),
            moduli: vec![3, 3],
            products: vec![prod(0, 0, &[0, 1])],
        },
        RingSpec {
            name: Some("C4xC2 e1*e1=e2".into()),
            moduli: vec![4, 2],
            products: vec![prod(0, 0, &[0, 1])],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(b: &Brace, c: &[u64]) -> usize {
        b.group().rank(&Element(c.to_vec())).unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let d = diagonal_brace_m1(2).unwrap();
        assert_eq!(d.star(r(&d, &[0, 1]), r(&d, &[1, 0])), r(&d, &[2, 0]));
        assert_eq!(d.lambdas()[r(&d, &[0, 1])], d.lambdas()[r(&d, &[0, 3])]);
        assert!(!d.is_multiplicatively_abelian());
        let d5 = diagonal_brace_m1(5).unwrap();
        assert_eq!(d5.square().order(), 5);

        let e = diagonal_brace_m2(3).unwrap();
        assert_eq!(e.star(r(&e, &[1, 0]), r(&e, &[0, 1])), r(&e, &[0, 9]));
        assert_eq!(e.circ_order(r(&e, &[0, 1])), 27);
        assert!(!e.is_multiplicatively_abelian());
        assert!(matches!(
            diagonal_brace_m2(4),
            Err(ConstructionError::NotPrime(4))
        ));
    }

    #[test]
    fn ring_examples_validate() {
        let z4 = ring_brace(&ring_examples()[0]).unwrap();
        assert_eq!(z4.circ(1, 1), 0);
        assert_eq!(z4.circ_order(1), 2);
        assert_eq!(z4.group().additive_order(1), 4);
        let v = ring_brace(&ring_examples()[1]).unwrap();
        assert!(v.is_multiplicatively_abelian());
        for spec in ring_examples() {
            let b = ring_brace(&spec).unwrap();
            // a∗b is the ring product, so ∗ is associative
            assert_eq!(
                b.star_associativity_witness(crate::exec::Exec::Sequential),
                None,
                "{:?}",
                spec.name
            );
        }
        let zero = RingSpec {
            name: None,
            moduli: vec![3, 9],
            products: vec![],
        };
        assert_eq!(ring_brace(&zero).unwrap(), trivial_brace(&[3, 9]).unwrap());
    }

    #[test]
    fn ring_errors() {
        let bad = |moduli: Vec<u64>, products: Vec<RingProduct>| {
            ring_brace(&RingSpec {
                name: None,
                moduli,
                products,
            })
        };
        let p = |i, j, v: &[u64]| RingProduct {
            i,
            j,
            value: v.to_vec(),
        };
        // x*y = xy on Z4 is not nilpotent
        assert!(matches!(
            bad(vec![4], vec![p(0, 0, &[1])]),
            Err(ConstructionError::NotNilpotent)
        ));
        // e1*e1 = e1 + e2 on C2 x C4 needs an order-2 product
        assert!(matches!(
            bad(vec![2, 4], vec![p(0, 1, &[0, 1])]),
            Err(ConstructionError::NotDistributive { .. })
        ));
        // e1 e1 = e2, e2 e1 = e1 is not associative
        assert!(matches!(
            bad(vec![2, 2], vec![p(0, 0, &[0, 1]), p(1, 0, &[1, 0])]),
            Err(ConstructionError::NotAssociative { .. })
        ));
    }

    #[test]
    fn star_associativity_on_m2() {
        // recorded: no ∗-associativity violation exists on diagonal-m2 at p = 3
        let e = diagonal_brace_m2(3).unwrap();
        assert_eq!(
            e.star_associativity_witness(crate::exec::Exec::default()),
            None
        );
    }
}
