//! Half-integers, classical root systems and their Weyl groups.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_twice(t: i64) -> Self {
        HalfInt(t)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn signum(self) -> i64 {
        self.0.signum()
    }

    /// Integer value, if any.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Numerator and denominator in lowest terms.
    pub fn num_den(self) -> (i64, i64) {
        if self.is_integer() {
            (self.0 / 2, 1)
        } else {
            (self.0, 2)
        }
    }

    /// Two half-integers lie in the same class of `Z` or `1/2 + Z`.
    pub fn same_class(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.0 += o.0;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, o: HalfInt) {
        self.0 -= o.0;
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt(self.0 * k)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, |a, b| a + b)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.num_den();
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/2")
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `n`, `n/2` and decimal forms ending in `.5` or `.0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::NotHalfIntegral(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt(n)),
                _ if d != 0 && (2 * n) % d == 0 => Ok(HalfInt(2 * n / d)),
                _ => Err(bad()),
            };
        }
        if let Some((ip, fp)) = s.split_once('.') {
            let neg = ip.starts_with('-');
            let i: i64 = ip.parse().map_err(|_| bad())?;
            let frac = fp.trim_end_matches('0');
            let t = match frac {
                "" => 2 * i,
                "5" if neg || i < 0 => 2 * i - 1,
                "5" => 2 * i + 1,
                _ => return Err(bad()),
            };
            return Ok(HalfInt(t));
        }
        s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad())
    }
}

#[derive(Serialize, Deserialize)]
struct NumDen {
    num: i64,
    den: i64,
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (num, den) = self.num_den();
        NumDen { num, den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nd = NumDen::deserialize(d)?;
        match nd.den {
            1 => Ok(HalfInt::from_int(nd.num)),
            2 => Ok(HalfInt(nd.num)),
            _ => Err(serde::de::Error::custom("denominator must be 1 or 2")),
        }
    }
}

/// A point of the ambient space, in the standard coordinates.
pub type Weight = Vec<HalfInt>;

pub fn parse_weight(s: &str) -> Result<Weight> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

pub fn format_weight(w: &[HalfInt]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
    D,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::A, Kind::B, Kind::C, Kind::D];

    pub fn min_rank(self) -> usize {
        match self {
            Kind::A | Kind::B | Kind::C => 1,
            Kind::D => 2,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
            Kind::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "B" | "b" => Ok(Kind::B),
            "C" | "c" => Ok(Kind::C),
            "D" | "d" => Ok(Kind::D),
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

pub const MAX_RANK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub kind: Kind,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        if rank < kind.min_rank() || rank > MAX_RANK {
            return Err(Error::RankOutOfRange(rank));
        }
        Ok(RootSystemSpec { kind, rank })
    }

    /// Number of standard coordinates.
    pub fn dim(&self) -> usize {
        match self.kind {
            Kind::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn check_dim(&self, w: &[HalfInt]) -> Result<()> {
        if w.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: w.len() });
        }
        Ok(())
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

/// Roots have integer coordinates; they are stored as `i64` vectors.
pub type Root = Vec<i64>;

fn unit_combo(dim: usize, terms: &[(usize, i64)]) -> Root {
    let mut r = vec![0; dim];
    for &(i, c) in terms {
        r[i] += c;
    }
    r
}

/// Simple roots in Bourbaki order.
pub fn simple_roots(spec: RootSystemSpec) -> Vec<Root> {
    let n = spec.rank;
    let dim = spec.dim();
    let mut out: Vec<Root> = Vec::with_capacity(n);
    let chain = match spec.kind {
        Kind::A => n,
        _ => n - 1,
    };
    for i in 0..chain {
        out.push(unit_combo(dim, &[(i, 1), (i + 1, -1)]));
    }
    match spec.kind {
        Kind::A => {}
        Kind::B => out.push(unit_combo(dim, &[(n - 1, 1)])),
        Kind::C => out.push(unit_combo(dim, &[(n - 1, 2)])),
        Kind::D => out.push(unit_combo(dim, &[(n - 2, 1), (n - 1, 1)])),
    }
    out
}

pub fn positive_roots(spec: RootSystemSpec) -> Vec<Root> {
    let dim = spec.dim();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            out.push(unit_combo(dim, &[(i, 1), (j, -1)]));
            if spec.kind != Kind::A {
                out.push(unit_combo(dim, &[(i, 1), (j, 1)]));
            }
        }
        match spec.kind {
            Kind::B => out.push(unit_combo(dim, &[(i, 1)])),
            Kind::C => out.push(unit_combo(dim, &[(i, 2)])),
            _ => {}
        }
    }
    out
}

/// Twice the inner product of a weight with a root, as an integer.
pub fn dot2(lambda: &[HalfInt], root: &[i64]) -> i64 {
    lambda.iter().zip(root).map(|(l, r)| l.twice() * r).sum()
}

/// `2(lambda, alpha)/(alpha, alpha)`.
pub fn pairing(lambda: &[HalfInt], alpha: &[i64]) -> Result<HalfInt> {
    if lambda.len() != alpha.len() {
        return Err(Error::DimensionMismatch { expected: alpha.len(), got: lambda.len() });
    }
    let norm: i64 = alpha.iter().map(|a| a * a).sum();
    if norm == 0 {
        return Err(Error::InvalidSegment("zero root".into()));
    }
    // 2 * (2 dot(lambda, alpha)) / norm is twice the pairing.
    let num = 2 * dot2(lambda, alpha);
    if num % norm != 0 {
        return Err(Error::NotHalfIntegral(format!("{num}/{norm}")));
    }
    Ok(HalfInt::from_twice(num / norm))
}

/// `w` acts by `result[perm[j]] = signs[perm[j]] * lambda[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::InvalidPermutation("length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidPermutation("signs must be +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn negations(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }
}

pub fn weyl_apply(kind: Kind, w: &SignedPermutation, lambda: &[HalfInt]) -> Result<Weight> {
    let n = lambda.len();
    if w.perm.len() != n {
        return Err(Error::DimensionMismatch { expected: w.perm.len(), got: n });
    }
    match kind {
        Kind::A if w.negations() > 0 => {
            return Err(Error::InvalidPermutation("type A admits no sign changes".into()))
        }
        Kind::D if w.negations() % 2 == 1 && !lambda.contains(&HalfInt::ZERO) => {
            return Err(Error::InvalidPermutation(
                "odd number of sign changes in type D".into(),
            ))
        }
        _ => {}
    }
    let mut out = vec![HalfInt::ZERO; n];
    for (j, &l) in lambda.iter().enumerate() {
        let i = w.perm[j];
        out[i] = l * i64::from(w.signs[i]);
    }
    Ok(out)
}

pub fn is_dominant(spec: RootSystemSpec, lambda: &[HalfInt]) -> Result<bool> {
    spec.check_dim(lambda)?;
    let dec = |v: &[HalfInt]| v.windows(2).all(|p| p[0] >= p[1]);
    Ok(match spec.kind {
        Kind::A => dec(lambda),
        Kind::B | Kind::C => dec(lambda) && lambda.last().is_none_or(|l| *l >= HalfInt::ZERO),
        Kind::D => {
            let n = lambda.len();
            dec(&lambda[..n - 1]) && lambda[n - 2] >= lambda[n - 1].abs()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn halfint_parse_and_print() {
        assert_eq!(h("3/2").twice(), 3);
        assert_eq!(h("-1/2").twice(), -1);
        assert_eq!(h("-1.5").twice(), -3);
        assert_eq!(h("2.5").twice(), 5);
        assert_eq!(h("4/2"), HalfInt::from_int(2));
        assert_eq!(h("7").to_string(), "7");
        assert_eq!(h("-7/2").to_string(), "-7/2");
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.25".parse::<HalfInt>().is_err());
    }

    #[test]
    fn halfint_json() {
        let v = serde_json::to_string(&h("3/2")).unwrap();
        assert_eq!(v, r#"{"num":3,"den":2}"#);
        let back: HalfInt = serde_json::from_str(r#"{"num":-4,"den":1}"#).unwrap();
        assert_eq!(back, HalfInt::from_int(-4));
    }

    #[test]
    fn positive_root_counts() {
        for n in 1..=9 {
            let b = RootSystemSpec::new(Kind::B, n).unwrap();
            assert_eq!(positive_roots(b).len(), n * n);
            let a = RootSystemSpec::new(Kind::A, n).unwrap();
            assert_eq!(positive_roots(a).len(), n * (n + 1) / 2);
            if n >= 2 {
                let c = RootSystemSpec::new(Kind::C, n).unwrap();
                assert_eq!(positive_roots(c).len(), n * n);
            }
            if n >= 3 {
                let d = RootSystemSpec::new(Kind::D, n).unwrap();
                assert_eq!(positive_roots(d).len(), n * (n - 1));
            }
        }
    }

    #[test]
    fn simple_roots_shape() {
        let b3 = RootSystemSpec::new(Kind::B, 3).unwrap();
        assert_eq!(simple_roots(b3), vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]);
        let d4 = RootSystemSpec::new(Kind::D, 4).unwrap();
        assert_eq!(simple_roots(d4)[3], vec![0, 0, 1, 1]);
        assert!(RootSystemSpec::new(Kind::D, 1).is_err());
        assert!(RootSystemSpec::new(Kind::B, 0).is_err());
    }

    #[test]
    fn pairing_examples() {
        let l = vec![h("3/2"), h("1/2")];
        assert_eq!(pairing(&l, &[0, 2]).unwrap(), h("1/2"));
        assert_eq!(pairing(&l, &[1, -1]).unwrap(), h("1"));
        assert_eq!(pairing(&l, &[0, 1]).unwrap(), h("1"));
    }

    #[test]
    fn weyl_action() {
        let w = SignedPermutation::new(vec![1, 0], vec![1, -1]).unwrap();
        let l = vec![h("3"), h("1")];
        assert_eq!(weyl_apply(Kind::B, &w, &l).unwrap(), vec![h("1"), h("-3")]);
        assert!(weyl_apply(Kind::D, &w, &l).is_err());
        let z = vec![h("3"), h("0")];
        assert!(weyl_apply(Kind::D, &w, &z).is_ok());
        assert!(SignedPermutation::new(vec![0, 0], vec![1, 1]).is_err());
    }

    #[test]
    fn dominance() {
        let d3 = RootSystemSpec::new(Kind::D, 3).unwrap();
        assert!(is_dominant(d3, &[h("2"), h("1"), h("-1")]).unwrap());
        assert!(!is_dominant(d3, &[h("2"), h("1"), h("-2")]).unwrap());
        let b2 = RootSystemSpec::new(Kind::B, 2).unwrap();
        assert!(!is_dominant(b2, &[h("2"), h("-1")]).unwrap());
    }
}
