//! Distinguished nilpotent orbits: partitions, jumps and even weighted Dynkin diagrams.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{dot2, simple_roots, HalfInt, Kind, RootSystemSpec};
use crate::segments::{floor_value, multiplicities, ResidualSegment};

/// A distinguished Jordan partition, parts in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub kind: Kind,
    pub rank: usize,
    pub parts: Vec<u32>,
}

fn total(kind: Kind, rank: usize) -> u32 {
    let n = rank as u32;
    match kind {
        Kind::A => n + 1,
        Kind::B => 2 * n + 1,
        Kind::C | Kind::D => 2 * n,
    }
}

impl Partition {
    pub fn new(kind: Kind, rank: usize, mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let bad = |why: &str| Error::InvalidPartition(format!("{parts:?} for {kind}{rank}: {why}"));
        if parts.iter().sum::<u32>() != total(kind, rank) {
            return Err(bad("wrong sum"));
        }
        if parts.contains(&0) {
            return Err(bad("zero part"));
        }
        if parts.windows(2).any(|p| p[0] == p[1]) {
            return Err(bad("repeated part"));
        }
        match kind {
            Kind::A if parts.len() != 1 => return Err(bad("kind A needs a single part")),
            Kind::B if parts.iter().any(|p| p % 2 == 0) => return Err(bad("even part")),
            Kind::C if parts.iter().any(|p| p % 2 == 1) => return Err(bad("odd part")),
            Kind::D if parts.iter().any(|p| p % 2 == 0) => return Err(bad("even part")),
            Kind::D if parts.len() % 2 == 1 => return Err(bad("odd number of parts")),
            _ => {}
        }
        Ok(Partition { kind, rank, parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn distinct_parts(sum: u32, max: u32, step_parity: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if sum == 0 {
        out.push(cur.clone());
        return;
    }
    let mut p = max.min(sum);
    while p >= 1 {
        if p % 2 == step_parity {
            cur.push(p);
            distinct_parts(sum - p, p - 1, step_parity, out, cur);
            cur.pop();
        }
        p -= 1;
    }
}

/// All distinguished partitions, in decreasing lexicographic order.
pub fn distinguished_partitions(spec: RootSystemSpec) -> Vec<Partition> {
    let n = total(spec.kind, spec.rank);
    let mut raw = Vec::new();
    match spec.kind {
        Kind::A => raw.push(vec![n]),
        Kind::B | Kind::D => distinct_parts(n, n, 1, &mut raw, &mut Vec::new()),
        Kind::C => distinct_parts(n, n, 0, &mut raw, &mut Vec::new()),
    }
    raw.into_iter()
        .filter_map(|p| Partition::new(spec.kind, spec.rank, p).ok())
        .collect()
}

/// Half-width `a` of the symmetric string `a, ..., -a` of a part `2a + 1`.
fn half_width(part: u32) -> HalfInt {
    HalfInt::from_twice(i64::from(part) - 1)
}

/// The dominant residual point of the orbit.
pub fn partition_to_segment(p: &Partition) -> ResidualSegment {
    let mut full: Vec<HalfInt> = Vec::new();
    for &part in &p.parts {
        let a = half_width(part);
        full.extend((0..part as i64).map(|k| a - HalfInt::from_int(k)));
    }
    full.sort_unstable_by(|a, b| b.cmp(a));
    let values = match p.kind {
        Kind::A => full,
        _ => {
            let positive: Vec<HalfInt> = full.iter().copied().filter(|v| *v > HalfInt::ZERO).collect();
            let zeros = full.iter().filter(|v| **v == HalfInt::ZERO).count();
            let keep = if p.kind == Kind::B { (zeros - 1) / 2 } else { zeros / 2 };
            let mut v = positive;
            v.extend(std::iter::repeat_n(HalfInt::ZERO, keep));
            v
        }
    };
    ResidualSegment::new(p.kind, values).expect("distinguished partitions give residual segments")
}

/// Multiplicity of `v` in the full symmetric string.
fn full_count(s: &ResidualSegment, v: HalfInt) -> usize {
    let n = s.multiplicity(v);
    if v != HalfInt::ZERO {
        return n;
    }
    match s.kind() {
        Kind::B => 2 * n + 1,
        _ => 2 * n,
    }
}

/// Jumps in decreasing order; `2a + 1` over the jumps is the Jordan partition.
pub fn jumps_of(s: &ResidualSegment) -> Result<Vec<HalfInt>> {
    let kind = s.kind();
    if kind == Kind::A {
        let vals = s.values();
        let top = vals[0];
        if top != -vals[vals.len() - 1] {
            return Err(Error::InvalidSegment(format!("{s} is not symmetric")));
        }
        return Ok(vec![top]);
    }
    let low = floor_value(kind);
    let parts = full_count(s, low);
    let levels: Vec<HalfInt> = multiplicities(s.values()).keys().rev().copied().collect();
    let mut out = Vec::with_capacity(parts);
    for i in 1..=parts {
        let a = levels
            .iter()
            .copied()
            .find(|&v| full_count(s, v) >= i)
            .unwrap_or(low);
        out.push(a);
    }
    Ok(out)
}

pub fn jordan_partition(s: &ResidualSegment) -> Result<Partition> {
    let parts = jumps_of(s)?
        .into_iter()
        .map(|a| (a.twice() + 1) as u32)
        .collect();
    Partition::new(s.kind(), s.rank(), parts)
}

pub fn segment_from_jumps(kind: Kind, jumps: &[HalfInt]) -> Result<ResidualSegment> {
    if jumps.windows(2).any(|p| p[0] <= p[1]) {
        return Err(Error::InvalidPartition("jumps must be strictly decreasing".into()));
    }
    if jumps.iter().any(|a| *a < HalfInt::ZERO) {
        return Err(Error::InvalidPartition("negative jump".into()));
    }
    let parts: Vec<u32> = jumps.iter().map(|a| (a.twice() + 1) as u32).collect();
    let sum: u32 = parts.iter().sum();
    let rank = match kind {
        Kind::A => (sum as usize).saturating_sub(1),
        Kind::B => ((sum.max(1) - 1) / 2) as usize,
        Kind::C | Kind::D => (sum / 2) as usize,
    };
    let p = Partition::new(kind, rank, parts)?;
    Ok(partition_to_segment(&p))
}

/// Diagram labels `2 (nu, alpha_i)` over the simple roots.
pub fn segment_to_wdd(s: &ResidualSegment) -> Result<Vec<i64>> {
    let spec = RootSystemSpec::new(s.kind(), s.rank())?;
    Ok(simple_roots(spec)
        .iter()
        .map(|alpha| dot2(s.values(), alpha))
        .collect())
}

pub fn wdd_to_segment(kind: Kind, labels: &[i64]) -> Result<ResidualSegment> {
    let n = labels.len();
    RootSystemSpec::new(kind, n)?;
    if labels.iter().any(|l| *l != 0 && *l != 2) {
        return Err(Error::NoEvenDiagram(format!("{labels:?}")));
    }
    let inconsistent = || Error::InconsistentLabels(format!("{labels:?} for {kind}{n}"));
    // Twice the coordinates, filled from the end.
    let mut t = vec![0i64; if kind == Kind::A { n + 1 } else { n }];
    let chain_end = match kind {
        Kind::A => {
            if labels.iter().any(|l| *l != 2) {
                return Err(inconsistent());
            }
            // Centre the string: the labels fix only the differences.
            for (i, ti) in t.iter_mut().enumerate() {
                *ti = n as i64 - 2 * i as i64;
            }
            return ResidualSegment::new(kind, t.into_iter().map(HalfInt::from_twice).collect())
                .map_err(|_| inconsistent());
        }
        Kind::B => {
            t[n - 1] = labels[n - 1];
            n - 1
        }
        Kind::C => {
            if labels[n - 1] % 2 != 0 {
                return Err(inconsistent());
            }
            t[n - 1] = labels[n - 1] / 2;
            n - 1
        }
        Kind::D => {
            let (l1, l2) = (labels[n - 2], labels[n - 1]);
            if (l2 - l1) % 2 != 0 {
                return Err(inconsistent());
            }
            t[n - 1] = (l2 - l1) / 2;
            t[n - 2] = (l2 + l1) / 2;
            n - 2
        }
    };
    for i in (0..chain_end).rev() {
        t[i] = t[i + 1] + labels[i];
    }
    let values: Vec<HalfInt> = t.into_iter().map(HalfInt::from_twice).collect();
    ResidualSegment::new(kind, values).map_err(|_| inconsistent())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: Kind, rank: usize) -> RootSystemSpec {
        RootSystemSpec::new(kind, rank).unwrap()
    }

    fn seg(p: &[u32], kind: Kind, rank: usize) -> String {
        partition_to_segment(&Partition::new(kind, rank, p.to_vec()).unwrap()).to_string()
    }

    #[test]
    fn b14_distinguished_orbit() {
        assert_eq!(seg(&[11, 9, 5, 3, 1], Kind::B, 14), "54433222111100");
    }

    #[test]
    fn b9_orbits_contain_listed() {
        let all: Vec<String> = distinguished_partitions(spec(Kind::B, 9))
            .iter()
            .map(|p| partition_to_segment(p).to_string())
            .collect();
        for s in ["987654321", "765432110", "654322110", "543322110"] {
            assert!(all.contains(&s.to_string()), "{s}");
        }
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn d9_has_five_orbits() {
        let ps = distinguished_partitions(spec(Kind::D, 9));
        assert_eq!(ps.len(), 5);
        assert_eq!(partition_to_segment(&ps[0]).to_string(), "876543210");
    }

    #[test]
    fn c_segments() {
        let s = seg(&[14, 4], Kind::C, 9);
        assert_eq!(s, "13/2,11/2,9/2,7/2,5/2,3/2,3/2,1/2,1/2");
        assert_eq!(distinguished_partitions(spec(Kind::C, 9)).len(), 8);
    }

    #[test]
    fn b9_jumps_include_zero() {
        let s = ResidualSegment::parse(Kind::B, "543322110").unwrap();
        let j: Vec<String> = jumps_of(&s).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(j, ["5", "3", "0"]);
        let s = ResidualSegment::parse(Kind::B, "54433322221111100").unwrap();
        let j: Vec<String> = jumps_of(&s).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(j, ["5", "4", "3", "2", "1"]);
    }

    #[test]
    fn wdd_examples() {
        let b3 = ResidualSegment::parse(Kind::B, "321").unwrap();
        assert_eq!(segment_to_wdd(&b3).unwrap(), vec![2, 2, 2]);
        let d9 = ResidualSegment::parse(Kind::D, "765432110").unwrap();
        assert_eq!(segment_to_wdd(&d9).unwrap(), vec![2, 2, 2, 2, 2, 2, 0, 2, 2]);
        assert_eq!(wdd_to_segment(Kind::D, &[2, 2, 2, 2, 2, 2, 0, 2, 2]).unwrap(), d9);
        assert!(matches!(wdd_to_segment(Kind::B, &[1, 2, 2]), Err(Error::NoEvenDiagram(_))));
        assert!(matches!(wdd_to_segment(Kind::B, &[0, 0, 2]), Err(Error::InconsistentLabels(_))));
    }

    #[test]
    fn jumps_round_trip_small() {
        for kind in [Kind::B, Kind::C, Kind::D] {
            for rank in kind.min_rank()..=10 {
                for p in distinguished_partitions(spec(kind, rank)) {
                    let s = partition_to_segment(&p);
                    assert_eq!(jordan_partition(&s).unwrap(), p);
                    assert_eq!(segment_from_jumps(kind, &jumps_of(&s).unwrap()).unwrap(), s);
                    assert_eq!(wdd_to_segment(kind, &segment_to_wdd(&s).unwrap()).unwrap(), s);
                }
            }
        }
    }
}
