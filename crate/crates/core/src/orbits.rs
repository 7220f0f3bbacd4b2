//! Weyl orbits of parameters, cuspidal strings, the set of strings with one
//! linear segment and the statistic `C(1, lambda)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::langlands::LinearSegment;
use crate::rootsys::{dot2, positive_roots, HalfInt, Kind, RootSystemSpec, SignedPermutation, Weight};
use crate::segments::{remove_abs, ResidualSegment};

/// Default cap on the rank for full orbit enumeration.
pub const DEFAULT_ORBIT_GUARD: usize = 8;

/// Reads `RESIDUA_MAX_RANK`, falling back to `default`.
pub fn rank_guard(default: usize) -> usize {
    std::env::var("RESIDUA_MAX_RANK")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitContext {
    pub spec: RootSystemSpec,
    pub epsilon: HalfInt,
}

impl OrbitContext {
    pub fn new(spec: RootSystemSpec, epsilon: HalfInt) -> Result<Self> {
        let ok = match spec.kind {
            Kind::B => epsilon == HalfInt::ONE,
            Kind::C => epsilon == HalfInt::HALF,
            Kind::A | Kind::D => epsilon == HalfInt::ONE || epsilon == HalfInt::HALF,
        };
        if !ok {
            return Err(Error::InvalidEpsilon(format!("{epsilon} for kind {}", spec.kind)));
        }
        Ok(OrbitContext { spec, epsilon })
    }

    /// The context with the usual epsilon for the kind.
    pub fn standard(kind: Kind, rank: usize) -> Result<Self> {
        let eps = if kind == Kind::C { HalfInt::HALF } else { HalfInt::ONE };
        OrbitContext::new(RootSystemSpec::new(kind, rank)?, eps)
    }

    pub fn kind(&self) -> Kind {
        self.spec.kind
    }
}

/// Linear segments followed by a residual tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuspidalString {
    pub linear: Vec<LinearSegment>,
    pub tail: ResidualSegment,
}

impl CuspidalString {
    pub fn new(linear: Vec<LinearSegment>, tail: ResidualSegment) -> Result<Self> {
        let integral = tail.kind() != Kind::C;
        for s in &linear {
            if s.a.is_integer() != integral && tail.kind() != Kind::A {
                return Err(Error::ParityMismatch(format!("{s} against a {} tail", tail.kind())));
            }
        }
        Ok(CuspidalString { linear, tail })
    }

    pub fn dominant(tail: ResidualSegment) -> Self {
        CuspidalString { linear: Vec::new(), tail }
    }

    pub fn kind(&self) -> Kind {
        self.tail.kind()
    }

    /// The concatenated coordinate vector.
    pub fn flatten(&self) -> Weight {
        let mut out: Weight = self.linear.iter().flat_map(|s| s.values()).collect();
        out.extend_from_slice(self.tail.values());
        out
    }

    pub fn len(&self) -> usize {
        self.linear.iter().map(LinearSegment::len).sum::<usize>() + self.tail.values().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parses `(a,b)|(a2,b2)|[segment]@KIND`.
    pub fn parse(text: &str) -> Result<Self> {
        let (body, kind) = text
            .trim()
            .rsplit_once('@')
            .ok_or_else(|| Error::Parse("missing @KIND suffix".into()))?;
        let kind: Kind = kind.parse()?;
        let mut linear = Vec::new();
        let mut tail = None;
        for piece in body.split('|') {
            let piece = piece.trim();
            if piece.starts_with('[') {
                if tail.is_some() {
                    return Err(Error::Parse("more than one residual tail".into()));
                }
                tail = Some(ResidualSegment::parse(kind, piece)?);
            } else if !piece.is_empty() {
                if tail.is_some() {
                    return Err(Error::Parse("the residual tail must come last".into()));
                }
                linear.push(piece.parse()?);
            }
        }
        let tail = match tail {
            Some(t) => t,
            None => ResidualSegment::new(kind, Vec::new())?,
        };
        CuspidalString::new(linear, tail)
    }
}

impl fmt::Display for CuspidalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.linear {
            write!(f, "{s}|")?;
        }
        write!(f, "[{}]@{}", self.tail, self.kind())
    }
}

fn kappas(kind: Kind) -> (i64, i64) {
    match kind {
        Kind::A => (0, 0),
        Kind::D => (0, 1),
        Kind::B | Kind::C => (1, 1),
    }
}

/// The counting identity characterizing residual points.
pub fn residual_defect(ctx: &OrbitContext, lambda: &[HalfInt]) -> Result<i64> {
    ctx.spec.check_dim(lambda)?;
    let (kappa, kappa_plus) = kappas(ctx.kind());
    let one = HalfInt::ONE;
    let (mut ones, mut zeros) = (0i64, 0i64);
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            let d = (lambda[i] - lambda[j]).abs();
            let s = (lambda[i] + lambda[j]).abs();
            ones += i64::from(d == one) + kappa_plus * i64::from(s == one);
            zeros += i64::from(d == HalfInt::ZERO) + kappa_plus * i64::from(s == HalfInt::ZERO);
        }
        ones += kappa * i64::from(lambda[i].abs() == ctx.epsilon);
        zeros += kappa * i64::from(lambda[i] == HalfInt::ZERO);
    }
    Ok(ones - 2 * zeros)
}

pub fn is_residual_point(ctx: &OrbitContext, lambda: &[HalfInt]) -> Result<bool> {
    Ok(residual_defect(ctx, lambda)? == ctx.spec.rank as i64)
}

pub fn dominant_rep(ctx: &OrbitContext, lambda: &[HalfInt]) -> Result<(Weight, SignedPermutation)> {
    ctx.spec.check_dim(lambda)?;
    let n = lambda.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut perm = vec![0; n];
    let mut signs = vec![1i8; n];
    if ctx.kind() == Kind::A {
        order.sort_by(|&x, &y| lambda[y].cmp(&lambda[x]));
    } else {
        order.sort_by(|&x, &y| lambda[y].abs().cmp(&lambda[x].abs()));
    }
    let mut out = vec![HalfInt::ZERO; n];
    for (i, &j) in order.iter().enumerate() {
        perm[j] = i;
        if ctx.kind() != Kind::A && lambda[j] < HalfInt::ZERO {
            signs[i] = -1;
        }
        out[i] = lambda[j] * i64::from(signs[i]);
    }
    if ctx.kind() == Kind::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
        // Flip a zero if there is one; otherwise the last coordinate stays negative.
        if let Some(z) = out.iter().position(|v| *v == HalfInt::ZERO) {
            signs[z] = -signs[z];
        } else {
            signs[n - 1] = -signs[n - 1];
            out[n - 1] = -out[n - 1];
        }
    }
    Ok((out, SignedPermutation { perm, signs }))
}

fn sorted_desc(mut v: Vec<HalfInt>) -> Vec<HalfInt> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn orbit_equivalent(ctx: &OrbitContext, l1: &[HalfInt], l2: &[HalfInt]) -> bool {
    if l1.len() != l2.len() {
        return false;
    }
    if ctx.kind() == Kind::A {
        return sorted_desc(l1.to_vec()) == sorted_desc(l2.to_vec());
    }
    let abs = |l: &[HalfInt]| sorted_desc(l.iter().map(|v| v.abs()).collect());
    if abs(l1) != abs(l2) {
        return false;
    }
    if ctx.kind() == Kind::D && !l1.contains(&HalfInt::ZERO) {
        let neg = |l: &[HalfInt]| l.iter().filter(|v| **v < HalfInt::ZERO).count();
        return (neg(l1) + neg(l2)) % 2 == 0;
    }
    true
}

/// Distinct permutations of a sorted multiset, in lexicographic order.
fn multiset_permutations(sorted: &[HalfInt]) -> Vec<Vec<HalfInt>> {
    let mut cur: Vec<HalfInt> = sorted.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Standard next-permutation iteration.
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// The full Weyl orbit in lexicographic order.
pub fn enumerate_orbit(ctx: &OrbitContext, lambda: &[HalfInt]) -> Result<Vec<Weight>> {
    ctx.spec.check_dim(lambda)?;
    let limit = rank_guard(DEFAULT_ORBIT_GUARD);
    if ctx.spec.rank > limit {
        return Err(Error::RankGuard { rank: ctx.spec.rank, limit });
    }
    if ctx.kind() == Kind::A {
        return Ok(multiset_permutations(lambda));
    }
    let abs: Vec<HalfInt> = lambda.iter().map(|v| v.abs()).collect();
    let has_zero = abs.contains(&HalfInt::ZERO);
    let base_neg = lambda.iter().filter(|v| **v < HalfInt::ZERO).count();
    let mut out = BTreeSet::new();
    for p in multiset_permutations(&abs) {
        let nonzero: Vec<usize> = (0..p.len()).filter(|&i| p[i] != HalfInt::ZERO).collect();
        for mask in 0u64..(1u64 << nonzero.len()) {
            if ctx.kind() == Kind::D && !has_zero && (mask.count_ones() as usize + base_neg) % 2 == 1 {
                continue;
            }
            let mut v = p.clone();
            for (bit, &i) in nonzero.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    v[i] = -v[i];
                }
            }
            out.insert(v);
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of positive roots pairing negatively with `lambda`.
pub fn c1(ctx: &OrbitContext, lambda: &[HalfInt]) -> Result<usize> {
    ctx.spec.check_dim(lambda)?;
    Ok(positive_roots(ctx.spec)
        .iter()
        .filter(|beta| dot2(lambda, beta) < 0)
        .count())
}

/// Orbit points `(a,b)(n)` with `a > b` and a residual tail, preceded by the dominant point.
///
/// Candidates are sorted by decreasing `a`, then decreasing `b`.
pub fn enumerate_l(ctx: &OrbitContext, dominant: &ResidualSegment) -> Result<Vec<CuspidalString>> {
    let kind = ctx.kind();
    if dominant.kind() != kind {
        return Err(Error::InvalidSegment(format!("{dominant} is not a {kind} segment")));
    }
    let flat = dominant.values();
    if !is_residual_point(ctx, flat)? {
        return Err(Error::InvalidSegment(format!("{dominant} is not a residual point")));
    }
    let mut out = vec![CuspidalString::dominant(dominant.clone())];
    // A single string has a single jump, so nothing splits off.
    if kind == Kind::A {
        return Ok(out);
    }
    let mut tops: Vec<HalfInt> = flat.to_vec();
    tops.dedup();
    for &a in &tops {
        for len in 2..=flat.len() {
            let b = a - HalfInt::from_int(len as i64 - 1);
            if a + b < HalfInt::ZERO {
                break;
            }
            let lin = LinearSegment::new(a, b)?;
            let Some(rest) = remove_abs(flat, &lin) else { continue };
            let Ok(tail) = ResidualSegment::new(kind, rest) else { continue };
            let s = CuspidalString::new(vec![lin], tail)?;
            if orbit_equivalent(ctx, &s.flatten(), flat) {
                out.push(s);
            }
        }
    }
    out[1..].sort_by(|x, y| {
        let (lx, ly) = (x.linear[0], y.linear[0]);
        ly.a.cmp(&lx.a).then(ly.b.cmp(&lx.b))
    });
    Ok(out)
}
