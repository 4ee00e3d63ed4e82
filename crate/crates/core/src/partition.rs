//! Integer partitions.

use std::fmt;
use std::str::FromStr;

use crate::error::CoreError;

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
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

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (0-indexed), zero past the end. Several alternant formulas
    /// need the zero-padded reading.
    pub fn part_or_zero(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = CoreError;

    /// Comma-separated weakly decreasing positive integers, e.g. `3,1,1`.
    /// `0` or an empty string denotes the empty partition.
    fn from_str(s: &str) -> Result<Self, CoreError> {
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for (i, piece) in t.split(',').enumerate() {
            let v: u32 = piece.trim().parse().map_err(|_| CoreError::Parse {
                pos: i,
                msg: format!("invalid partition part {:?}", piece),
            })?;
            if v == 0 {
                return Err(CoreError::Parse {
                    pos: i,
                    msg: "partition parts must be positive".into(),
                });
            }
            if let Some(&prev) = parts.last() {
                if v > prev {
                    return Err(CoreError::Parse {
                        pos: i,
                        msg: "partition parts must be weakly decreasing".into(),
                    });
                }
            }
            parts.push(v);
        }
        Ok(Partition { parts })
    }
}

/// All partitions of `n` (largest part first within each partition).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let top = rem.min(max);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All partitions of weight at most `w` (including the empty one).
pub fn partitions_up_to(w: u32) -> Vec<Partition> {
    (0..=w).flat_map(partitions_of).collect()
}

/// All partitions of weight at most `w` with at most `max_len` parts.
pub fn partitions_up_to_bounded(w: u32, max_len: usize) -> Vec<Partition> {
    partitions_up_to(w)
        .into_iter()
        .filter(|p| p.len() <= max_len)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting() {
        assert_eq!(partitions_of(0).len(), 1);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(6).len(), 11);
        assert_eq!(partitions_up_to(6).len(), 1 + 1 + 2 + 3 + 5 + 7 + 11);
    }

    #[test]
    fn parse_and_display() {
        let p: Partition = "3,1,1".parse().unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.weight(), 5);
        assert_eq!(p.to_string(), "3,1,1");
        assert!("1,3".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }
}
