//! Additive integer partitions in the ordering used by the coefficient
//! table: shorter partitions before longer ones, and within equal length,
//! larger entries first at the first differing position.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A partition of a nonnegative integer: a nonincreasing list of positive
/// parts.  The empty list is the null partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition; parts are sorted nonincreasing.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Weight m = sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Bracketed form used in tables and JSON keys, e.g. "[2,1,1]".
    pub fn key(&self) -> String {
        format!(
            "[{}]",
            self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )
    }

    /// Parses "[2,1,1]" or "2,1,1" (empty string and "[]" give the null partition).
    pub fn parse(s: &str) -> crate::error::Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| crate::error::Error::Parse(format!("bad partition {s:?}")))?;
        if parts.iter().any(|&p| p == 0) {
            return Err(crate::error::Error::Parse("partition parts must be positive".into()));
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// All partitions of `m` in table order: sorted by length, then by
/// descending comparison of entries at the first differing position.
///
/// ```
/// use apery::exact::partitions_of;
/// let p4: Vec<String> = partitions_of(4).iter().map(|p| p.key()).collect();
/// assert_eq!(p4, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
/// ```
pub fn partitions_of(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen(m, m, &mut cur, &mut out);
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| b.parts().cmp(a.parts()))
    });
    out
}

fn gen(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rem.min(max)).rev() {
        cur.push(p);
        gen(rem - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_partition_of_zero() {
        let p0 = partitions_of(0);
        assert_eq!(p0, vec![Partition::empty()]);
    }

    #[test]
    fn table_order_weight_3_and_4() {
        let p3: Vec<_> = partitions_of(3).iter().map(|p| p.key()).collect();
        assert_eq!(p3, ["[3]", "[2,1]", "[1,1,1]"]);
        let p4: Vec<_> = partitions_of(4).iter().map(|p| p.key()).collect();
        assert_eq!(p4, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn partition_counts() {
        let expect = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (m, &c) in expect.iter().enumerate() {
            assert_eq!(partitions_of(m as u32).len(), c, "p({m})");
        }
    }

    #[test]
    fn key_round_trip() {
        for m in 0..=6 {
            for p in partitions_of(m) {
                assert_eq!(Partition::parse(&p.key()).unwrap(), p);
            }
        }
    }

    #[test]
    fn json_form_is_integer_array() {
        let p = Partition::new(vec![1, 2, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,1]");
        let q: Partition = serde_json::from_str("[2,1,1]").unwrap();
        assert_eq!(p, q);
    }
}
