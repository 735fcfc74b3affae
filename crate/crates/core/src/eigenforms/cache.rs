//! Plain-text coefficient cache.
//!
//! ```text
//! FUNCTORIA-CACHE v1 <form_id> <weight> <N>
//! 1 1
//! 2 -24
//! ...
//! ```

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FormId, HeckeRelation, QExpansion};
use crate::error::{Error, Result};

const MAGIC: &str = "FUNCTORIA-CACHE";
const VERSION: &str = "v1";

pub fn write_cache<W: Write>(q: &QExpansion, mut out: W) -> Result<()> {
    writeln!(out, "{MAGIC} {VERSION} {} {} {}", q.form_id(), q.weight(), q.len())?;
    for (i, a) in q.coeffs().iter().enumerate() {
        writeln!(out, "{} {}", i + 1, a)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads and validates a cache: header, contiguous indices, `a(1) = 1`, and
/// ten spot-checked Hecke relations.
pub fn read_cache<R: BufRead>(input: R) -> Result<QExpansion> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Cache("empty file".into()))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [magic, version, form, weight, n] = fields[..] else {
        return Err(Error::Cache(format!("bad header `{header}`")));
    };
    if magic != MAGIC || version != VERSION {
        return Err(Error::Cache(format!("unsupported header `{header}`")));
    }
    let form_id: FormId = form.parse().map_err(|_| Error::Cache(format!("unknown form `{form}`")))?;
    let weight: u32 = weight.parse().map_err(|_| Error::Cache(format!("bad weight `{weight}`")))?;
    if weight != form_id.weight() {
        return Err(Error::Cache(format!("weight {weight} does not match {form_id}")));
    }
    let n: usize = n.parse().map_err(|_| Error::Cache(format!("bad length `{n}`")))?;
    if n == 0 {
        return Err(Error::Cache("zero length".into()));
    }

    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::zero());
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (idx, value) = line
            .split_once(' ')
            .ok_or_else(|| Error::Cache(format!("bad row `{line}`")))?;
        let idx: usize = idx.parse().map_err(|_| Error::Cache(format!("bad index in `{line}`")))?;
        if idx != coeffs.len() {
            return Err(Error::Cache(format!("expected row {}, found {idx}", coeffs.len())));
        }
        let value: BigInt = value
            .trim()
            .parse()
            .map_err(|_| Error::Cache(format!("bad coefficient in `{line}`")))?;
        coeffs.push(value);
    }
    if coeffs.len() != n + 1 {
        return Err(Error::Cache(format!("header promises {n} rows, found {}", coeffs.len() - 1)));
    }
    let q = QExpansion::from_coeffs_unchecked(form_id, coeffs);
    if !q.coeff(1).is_one() {
        return Err(Error::Cache(format!("a(1) = {}, expected 1", q.coeff(1))));
    }
    for rel in spot_relations(n) {
        if let Some(diff) = q.check_relation(rel) {
            if !diff.is_zero() {
                return Err(Error::Cache(format!("Hecke relation {rel:?} fails by {diff}")));
            }
        }
    }
    Ok(q)
}

/// Ten relations: eight fixed low ones and two reaching the top of the range.
fn spot_relations(n: usize) -> Vec<HeckeRelation> {
    use HeckeRelation::*;
    let mut rels = vec![
        PrimePower { p: 2, exponent: 2 },
        Multiplicative { m: 2, n: 3 },
        PrimePower { p: 3, exponent: 2 },
        Multiplicative { m: 4, n: 5 },
        PrimePower { p: 2, exponent: 3 },
        Multiplicative { m: 7, n: 9 },
        PrimePower { p: 5, exponent: 2 },
        Multiplicative { m: 8, n: 11 },
    ];
    let odd_half = (n / 2).saturating_sub(1 - (n / 2) % 2).max(1);
    rels.push(Multiplicative { m: 2, n: odd_half });
    let mut third = (n / 3).max(1);
    while third > 1 && third % 3 == 0 {
        third -= 1;
    }
    rels.push(Multiplicative { m: 3, n: third });
    rels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenforms::{build_weight16, sieve_delta};

    fn round_trip(q: &QExpansion) -> QExpansion {
        let mut buf = Vec::new();
        write_cache(q, &mut buf).unwrap();
        read_cache(buf.as_slice()).unwrap()
    }

    #[test]
    fn format_is_stable() {
        let q = build_weight16(3).unwrap();
        let mut buf = Vec::new();
        write_cache(&q, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "FUNCTORIA-CACHE v1 e4delta16 16 3\n1 1\n2 216\n3 -3348\n"
        );
    }

    #[test]
    fn round_trips() {
        let q = sieve_delta(1000).unwrap();
        assert_eq!(round_trip(&q), q);
        let q = build_weight16(1).unwrap();
        assert_eq!(round_trip(&q), q);
    }

    #[test]
    fn spot_relations_are_valid() {
        for n in [1usize, 2, 10, 97, 100, 1000, 100_000] {
            let rels = spot_relations(n);
            assert_eq!(rels.len(), 10);
            for r in rels {
                if let HeckeRelation::Multiplicative { m, n } = r {
                    assert_eq!(crate::arith::gcd(m as u64, n as u64), 1, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad_a1 = "FUNCTORIA-CACHE v1 delta12 12 2\n1 2\n2 -24\n";
        assert!(matches!(read_cache(bad_a1.as_bytes()), Err(Error::Cache(_))));
        let short = "FUNCTORIA-CACHE v1 delta12 12 3\n1 1\n2 -24\n";
        assert!(matches!(read_cache(short.as_bytes()), Err(Error::Cache(_))));
        let wrong_weight = "FUNCTORIA-CACHE v1 delta12 16 1\n1 1\n";
        assert!(matches!(read_cache(wrong_weight.as_bytes()), Err(Error::Cache(_))));
        let gap = "FUNCTORIA-CACHE v1 delta12 12 2\n1 1\n3 252\n";
        assert!(matches!(read_cache(gap.as_bytes()), Err(Error::Cache(_))));
        assert!(matches!(read_cache("".as_bytes()), Err(Error::Cache(_))));
    }

    #[test]
    fn rejects_hecke_violation() {
        let q = sieve_delta(10).unwrap();
        let mut buf = Vec::new();
        write_cache(&q, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replace("\n4 -1472\n", "\n4 -1471\n");
        let err = read_cache(text.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("Hecke"), "{err}");
    }
}
