use crate::brace::Brace;

use super::enumerate::{enumerate_braces, EnumOptions};
use super::families::{ring_examples, ConstructionSpec};
use super::ConstructionError;

/// Every abelian group of prime-power order at most 16 except `C2^4`,
/// whose automorphism group exceeds the enumeration guard.
pub const ENUMERATED_MODULI: &[&[u64]] = &[
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[7],
    &[8],
    &[2, 4],
    &[2, 2, 2],
    &[9],
    &[3, 3],
    &[11],
    &[13],
    &[16],
    &[2, 8],
    &[4, 4],
    &[2, 2, 4],
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: Option<ConstructionSpec>,
    pub brace: Brace,
}

/// Named families, ring examples and every brace on the groups in
/// [`ENUMERATED_MODULI`].
pub fn builtin_corpus() -> Result<Vec<CorpusEntry>, ConstructionError> {
    let mut specs: Vec<ConstructionSpec> = [&[4u64, 4][..], &[2, 8], &[3, 27], &[9, 9], &[25, 25]]
        .iter()
        .map(|m| ConstructionSpec::Trivial { moduli: m.to_vec() })
        .collect();
    for p in [2, 3, 5] {
        specs.push(ConstructionSpec::DiagonalM1 { p });
        specs.push(ConstructionSpec::DiagonalM2 { p });
    }
    specs.extend(ring_examples().into_iter().map(ConstructionSpec::Ring));
    let mut out = specs
        .into_iter()
        .map(|spec| {
            Ok(CorpusEntry {
                name: spec.label(),
                brace: spec.build()?,
                spec: Some(spec),
            })
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    for m in ENUMERATED_MODULI {
        let r = enumerate_braces(m, EnumOptions::default())?;
        let mods = m.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        for (i, b) in r.braces.into_iter().enumerate() {
            out.push(CorpusEntry {
                name: format!("enumerated [{mods}] #{i}"),
                spec: None,
                brace: b,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds() {
        let c = builtin_corpus().unwrap();
        assert!(c.len() > 20);
        let names: std::collections::BTreeSet<_> = c.iter().map(|e| e.name.clone()).collect();
        assert_eq!(names.len(), c.len());
    }
}
