//! Residual segments and the jump-pair extraction and merging operations on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::jumps_of;
use crate::error::{Error, Result};
use crate::langlands::{linked, LinearSegment};
use crate::rootsys::{HalfInt, Kind};

/// A dominant residual point attached to a distinguished nilpotent orbit.
///
/// For kinds B, C, D the values are the nonnegative half of the symmetric
/// string of the orbit; for kind A they form one decreasing string with step 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidualSegment {
    kind: Kind,
    values: Vec<HalfInt>,
}

/// Smallest value that may occur in a segment of the given kind.
pub(crate) fn floor_value(kind: Kind) -> HalfInt {
    match kind {
        Kind::C => HalfInt::HALF,
        _ => HalfInt::ZERO,
    }
}

/// Counts `n_v` of each value, keyed by value.
pub fn multiplicities(values: &[HalfInt]) -> BTreeMap<HalfInt, usize> {
    let mut m = BTreeMap::new();
    for &v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// Multiplicity rules characterizing residual segments of kinds B, C, D.
///
/// The top value occurs once, consecutive counts grow by at most one going
/// down, and the count at the bottom is tied to the count just above it.
pub fn satisfies_multiplicity_relations(kind: Kind, values: &[HalfInt]) -> bool {
    if kind == Kind::A {
        return !values.is_empty()
            && values.windows(2).all(|p| p[0] - p[1] == HalfInt::ONE);
    }
    if values.is_empty() {
        return true;
    }
    if values.windows(2).any(|p| p[0] < p[1]) {
        return false;
    }
    let low = floor_value(kind);
    let integral = kind != Kind::C;
    if values.iter().any(|v| v.is_integer() != integral || *v < low) {
        return false;
    }
    let n = multiplicities(values);
    let count = |v: HalfInt| n.get(&v).copied().unwrap_or(0);
    let top = values[0];
    if count(top) != 1 {
        return false;
    }
    // Every level from top down to the first level above `low` is present with steps 0 or 1.
    let mut v = top;
    while v > low + HalfInt::ONE {
        let below = v - HalfInt::ONE;
        let step = count(below) as i64 - count(v) as i64;
        if !(0..=1).contains(&step) {
            return false;
        }
        v = below;
    }
    let n1 = count(low + HalfInt::ONE);
    let n0 = count(low);
    match kind {
        Kind::B => n0 == n1 / 2,
        Kind::D => n0 == n1.div_ceil(2),
        Kind::C => {
            let step = n0 as i64 - n1 as i64;
            (0..=1).contains(&step)
        }
        Kind::A => unreachable!(),
    }
}

impl ResidualSegment {
    pub fn new(kind: Kind, values: Vec<HalfInt>) -> Result<Self> {
        if !satisfies_multiplicity_relations(kind, &values) {
            let s = ResidualSegment { kind, values };
            return Err(Error::InvalidSegment(format!("{s} is not residual for {kind}")));
        }
        Ok(ResidualSegment { kind, values })
    }

    /// Sorts the values in decreasing order before validating.
    pub fn from_unsorted(kind: Kind, mut values: Vec<HalfInt>) -> Result<Self> {
        values.sort_unstable_by(|a, b| b.cmp(a));
        ResidualSegment::new(kind, values)
    }

    pub fn parse(kind: Kind, text: &str) -> Result<Self> {
        ResidualSegment::new(kind, parse_values(text)?)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn values(&self) -> &[HalfInt] {
        &self.values
    }

    /// Rank of the root system the point lives in.
    pub fn rank(&self) -> usize {
        match self.kind {
            Kind::A => self.values.len().saturating_sub(1),
            _ => self.values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn multiplicity(&self, v: HalfInt) -> usize {
        self.values.iter().filter(|&&x| x == v).count()
    }

    pub fn contains_zero(&self) -> bool {
        self.values.contains(&HalfInt::ZERO)
    }
}

/// Parses a comma list or, when there is no comma, one digit per value.
pub fn parse_values(text: &str) -> Result<Vec<HalfInt>> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    if !t.contains(',') && t.len() > 1 && t.chars().all(|c| c.is_ascii_digit()) {
        return Ok(t
            .chars()
            .map(|c| HalfInt::from_int(i64::from(c.to_digit(10).unwrap())))
            .collect());
    }
    t.split(',').map(str::parse).collect()
}

/// Compact digits when every value is an integer in `0..=9`, a comma list otherwise.
pub fn format_values(values: &[HalfInt]) -> String {
    let compact = values
        .iter()
        .all(|v| v.to_int().is_some_and(|n| (0..=9).contains(&n)));
    if compact && values.len() > 1 {
        values.iter().map(|v| v.to_string()).collect()
    } else {
        let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for ResidualSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_values(&self.values))
    }
}

/// Removes `|x|` for every `x` in `seg` from the multiset `values`.
pub(crate) fn remove_abs(values: &[HalfInt], seg: &LinearSegment) -> Option<Vec<HalfInt>> {
    let mut out = values.to_vec();
    for x in seg.values() {
        let pos = out.iter().position(|&v| v == x.abs())?;
        out.remove(pos);
    }
    Some(out)
}

/// Adds `|x|` for every `x` in `seg`, keeping the values sorted decreasingly.
pub(crate) fn insert_abs(values: &[HalfInt], seg: &LinearSegment) -> Vec<HalfInt> {
    let mut out = values.to_vec();
    out.extend(seg.values().map(HalfInt::abs));
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Splits off the segment `(a_i, -a_{i+1})` for the consecutive jumps `a_i > a_{i+1}`.
///
/// `i` is 1-based. The residue is again residual of the same kind.
pub fn extract_jump_pair(
    s: &ResidualSegment,
    i: usize,
) -> Result<(LinearSegment, ResidualSegment)> {
    if s.kind == Kind::A {
        return Err(Error::NonConsecutiveJumps("kind A has a single jump".into()));
    }
    let jumps = jumps_of(s)?;
    if i == 0 || i >= jumps.len() {
        return Err(Error::NonConsecutiveJumps(format!(
            "no jumps a_{i}, a_{} among {} jumps of {s}",
            i + 1,
            jumps.len()
        )));
    }
    let lin = LinearSegment::new(jumps[i - 1], -jumps[i])?;
    let rest = remove_abs(&s.values, &lin)
        .ok_or_else(|| Error::InvalidSegment(format!("{lin} does not fit in {s}")))?;
    let residue = ResidualSegment::new(s.kind, rest)?;
    Ok((lin, residue))
}

/// Index of a segment whose absolute values merge with `tail` into a residual segment.
///
/// Zero-free segments are tried first, then longer ones.
pub fn find_mergeable(
    segs: &[LinearSegment],
    tail: &ResidualSegment,
    target: &ResidualSegment,
) -> Result<usize> {
    if tail.kind != target.kind {
        return Err(Error::NotJointlyResidual("kinds differ".into()));
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if linked(&segs[i], &segs[j])? {
                return Err(Error::Linked(format!("{} and {}", segs[i], segs[j])));
            }
        }
    }
    let mut all = tail.values.clone();
    for s in segs {
        all = insert_abs(&all, s);
    }
    if all != target.values {
        return Err(Error::NotJointlyResidual(format!(
            "segments and tail {tail} do not assemble to {target}"
        )));
    }
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by_key(|&k| (segs[k].contains_value(HalfInt::ZERO), std::cmp::Reverse(segs[k].len()), k));
    order
        .into_iter()
        .find(|&k| ResidualSegment::new(tail.kind, insert_abs(&tail.values, &segs[k])).is_ok())
        .ok_or_else(|| Error::NotJointlyResidual("no segment merges with the tail".into()))
}
