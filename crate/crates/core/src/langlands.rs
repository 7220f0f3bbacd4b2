//! Linear segments, the Langlands order on exponents and minimization of segment multisets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{HalfInt, Kind, RootSystemSpec, Weight};

/// The string `a, a-1, ..., b` with `a - b` a nonnegative integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearSegment {
    pub a: HalfInt,
    pub b: HalfInt,
}

impl LinearSegment {
    pub fn new(a: HalfInt, b: HalfInt) -> Result<Self> {
        if !a.same_class(b) {
            return Err(Error::ParityMismatch(format!("({a},{b})")));
        }
        if a < b {
            return Err(Error::InvalidSegment(format!("({a},{b}) has a < b")));
        }
        Ok(LinearSegment { a, b })
    }

    pub fn len(&self) -> usize {
        ((self.a - self.b).twice() / 2 + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn midpoint(&self) -> HalfInt {
        HalfInt::from_twice((self.a + self.b).twice() / 2)
    }

    pub fn contains_value(&self, v: HalfInt) -> bool {
        v.same_class(self.a) && self.b <= v && v <= self.a
    }

    pub fn contains(&self, other: &LinearSegment) -> bool {
        self.b <= other.b && other.a <= self.a
    }

    /// Values from `a` down to `b`.
    pub fn values(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len() as i64).map(move |k| self.a - HalfInt::from_int(k))
    }

    pub fn same_class(&self, other: &LinearSegment) -> bool {
        self.a.same_class(other.a)
    }
}

impl fmt::Display for LinearSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl FromStr for LinearSegment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (a,b), got {t:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (a,b), got {t:?}")))?;
        LinearSegment::new(a.parse()?, b.parse()?)
    }
}

/// Neither segment contains the other and their union is again a segment.
pub fn linked(s1: &LinearSegment, s2: &LinearSegment) -> Result<bool> {
    if !s1.same_class(s2) {
        return Err(Error::ParityMismatch(format!("{s1} and {s2}")));
    }
    if s1.contains(s2) || s2.contains(s1) {
        return Ok(false);
    }
    let top = s1.a.min(s2.a);
    let bottom = s1.b.max(s2.b);
    Ok(bottom <= top + HalfInt::ONE)
}

/// Union and (possibly empty) intersection of two linked segments.
pub fn union_intersection(
    s1: &LinearSegment,
    s2: &LinearSegment,
) -> Result<(LinearSegment, Option<LinearSegment>)> {
    if !linked(s1, s2)? {
        return Err(Error::Unlinked(format!("{s1} and {s2}")));
    }
    let union = LinearSegment { a: s1.a.max(s2.a), b: s1.b.min(s2.b) };
    let (ia, ib) = (s1.a.min(s2.a), s1.b.max(s2.b));
    let inter = (ia >= ib).then_some(LinearSegment { a: ia, b: ib });
    Ok((union, inter))
}

/// Segments kept sorted by midpoint, then by length, both decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentMultiset(Vec<LinearSegment>);

impl SegmentMultiset {
    pub fn new(mut segs: Vec<LinearSegment>) -> Self {
        segs.sort_by(|x, y| {
            y.midpoint()
                .cmp(&x.midpoint())
                .then(y.len().cmp(&x.len()))
                .then(y.a.cmp(&x.a))
        });
        SegmentMultiset(segs)
    }

    pub fn segments(&self) -> &[LinearSegment] {
        &self.0
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(LinearSegment::len).sum()
    }

    pub fn has_linked_pair(&self) -> Result<bool> {
        Ok(self.first_linked_pair()?.is_some())
    }

    fn first_linked_pair(&self) -> Result<Option<(usize, usize)>> {
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if linked(&self.0[i], &self.0[j])? {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Replace the pair `(i, j)` by its union and intersection.
    pub fn elementary_step(&self, i: usize, j: usize) -> Result<SegmentMultiset> {
        let (u, inter) = union_intersection(&self.0[i], &self.0[j])?;
        let mut segs: Vec<LinearSegment> = self
            .0
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, s)| *s)
            .collect();
        segs.push(u);
        segs.extend(inter);
        Ok(SegmentMultiset::new(segs))
    }
}

impl fmt::Display for SegmentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for SegmentMultiset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let segs = s
            .split('|')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(SegmentMultiset::new(segs))
    }
}

/// Each midpoint repeated as many times as its segment is long.
pub fn langlands_param(m: &SegmentMultiset) -> Weight {
    m.0.iter()
        .flat_map(|s| std::iter::repeat_n(s.midpoint(), s.len()))
        .collect()
}

/// `mu <= pi` for the order defined by nonnegative combinations of simple roots.
pub fn leq_order(spec: RootSystemSpec, mu: &[HalfInt], pi: &[HalfInt]) -> Result<bool> {
    spec.check_dim(mu)?;
    spec.check_dim(pi)?;
    let d: Vec<i64> = pi.iter().zip(mu).map(|(p, m)| (*p - *m).twice()).collect();
    let n = d.len();
    let prefix: Vec<i64> = d
        .iter()
        .scan(0i64, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    Ok(match spec.kind {
        Kind::A => {
            // Compare modulo the line spanned by (1, ..., 1).
            let total = prefix[n - 1];
            (1..n).all(|k| n as i64 * prefix[k - 1] - k as i64 * total >= 0)
        }
        Kind::B | Kind::C => prefix.iter().all(|&s| s >= 0),
        Kind::D => {
            let last = d[n - 1];
            prefix[..n - 1].iter().all(|&s| s >= 0) && prefix[n - 2] >= last.abs()
        }
    })
}

/// Replace linked pairs by union and intersection until none is left.
pub fn minimize(m: &SegmentMultiset) -> Result<SegmentMultiset> {
    let mut cur = m.clone();
    while let Some((i, j)) = cur.first_linked_pair()? {
        cur = cur.elementary_step(i, j)?;
    }
    Ok(cur)
}

/// All nonempty prefix sums are strictly positive.
pub fn positive_partial_sums(lambda: &[HalfInt]) -> bool {
    let mut acc = HalfInt::ZERO;
    for &x in lambda {
        acc += x;
        if acc <= HalfInt::ZERO {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(s: &str) -> LinearSegment {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Weight {
        crate::rootsys::parse_weight(s).unwrap()
    }

    #[test]
    fn linkage() {
        assert!(linked(&seg("(3,1)"), &seg("(2,0)")).unwrap());
        assert!(!linked(&seg("(3,0)"), &seg("(2,1)")).unwrap());
        assert!(!linked(&seg("(3,2)"), &seg("(0,-1)")).unwrap());
        assert!(linked(&seg("(3,2)"), &seg("(1,0)")).unwrap());
        assert!(linked(&seg("(3,1)"), &seg("(3/2,1/2)")).is_err());
    }

    #[test]
    fn union_and_intersection() {
        let (u, i) = union_intersection(&seg("(3,1)"), &seg("(2,0)")).unwrap();
        assert_eq!((u, i), (seg("(3,0)"), Some(seg("(2,1)"))));
        let (u, i) = union_intersection(&seg("(3,2)"), &seg("(1,0)")).unwrap();
        assert_eq!((u, i), (seg("(3,0)"), None));
        assert!(union_intersection(&seg("(5,-4)"), &seg("(4,-4)")).is_err());
    }

    #[test]
    fn param_and_order() {
        let m: SegmentMultiset = "(3,1)|(2,0)".parse().unwrap();
        assert_eq!(langlands_param(&m), w("2,2,2,1,1,1"));
        let mm = minimize(&m).unwrap();
        assert_eq!(mm.to_string(), "(3,0)|(2,1)");
        assert_eq!(langlands_param(&mm), w("3/2,3/2,3/2,3/2,3/2,3/2"));
        let b4 = RootSystemSpec::new(Kind::B, 4).unwrap();
        assert!(leq_order(b4, &w("3/2,3/2,1/2,1/2"), &w("2,2,1,1")).unwrap());
        let d3 = RootSystemSpec::new(Kind::D, 3).unwrap();
        assert!(leq_order(d3, &w("0,0,0"), &w("1,0,-1")).unwrap());
        assert!(!leq_order(d3, &w("0,0,0"), &w("0,0,1")).unwrap());
    }

    #[test]
    fn minimize_points() {
        let m: SegmentMultiset = "(2,2)|(1,1)|(1,1)|(0,0)".parse().unwrap();
        assert_eq!(minimize(&m).unwrap().to_string(), "(2,0)|(1,1)");
    }

    #[test]
    fn partial_sums() {
        assert!(positive_partial_sums(&w("3,2,1")));
        assert!(!positive_partial_sums(&w("1,-1,2")));
        assert!(!positive_partial_sums(&w("0,0,0,0,0")));
    }
}
