//! Rank-one intertwining moves, paths of moves with non-generic kernel between
//! cuspidal strings, and the case classifier for strings with one linear segment.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::jumps_of;
use crate::error::{Error, Result};
use crate::langlands::{leq_order, LinearSegment};
use crate::orbits::{dominant_rep, is_residual_point, orbit_equivalent, CuspidalString, OrbitContext};
use crate::rootsys::{HalfInt, Kind, Weight};
use crate::segments::{remove_abs, ResidualSegment};

/// `Transpose(i)` swaps the 0-based positions `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Transpose(usize),
    SignFlipLast,
    DReflectionLastPair,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Transpose(i) => write!(f, "transpose({})", i + 1),
            Move::SignFlipLast => f.write_str("sign_flip_last"),
            Move::DReflectionLastPair => f.write_str("d_reflection_last_pair"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveStatus {
    NonGenericKernel,
    Bijective,
    Forbidden,
}

impl fmt::Display for MoveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveStatus::NonGenericKernel => "nonGenericKernel",
            MoveStatus::Bijective => "bijective",
            MoveStatus::Forbidden => "forbidden",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AppliedMove {
    pub mv: Move,
    pub status: MoveStatus,
}

fn status_of(x: HalfInt) -> MoveStatus {
    match x.signum() {
        -1 => MoveStatus::NonGenericKernel,
        0 => MoveStatus::Bijective,
        _ => MoveStatus::Forbidden,
    }
}

fn check_move(ctx: &OrbitContext, lambda: &[HalfInt], m: Move) -> Result<()> {
    ctx.spec.check_dim(lambda)?;
    let n = lambda.len();
    match m {
        Move::Transpose(i) if i + 1 >= n => {
            Err(Error::MoveMismatch(format!("{m} on a vector of length {n}")))
        }
        Move::SignFlipLast if !matches!(ctx.kind(), Kind::B | Kind::C) => {
            Err(Error::MoveMismatch(format!("{m} in kind {}", ctx.kind())))
        }
        Move::DReflectionLastPair if ctx.kind() != Kind::D => {
            Err(Error::MoveMismatch(format!("{m} in kind {}", ctx.kind())))
        }
        _ => Ok(()),
    }
}

pub fn move_status(ctx: &OrbitContext, lambda: &[HalfInt], m: Move) -> Result<MoveStatus> {
    check_move(ctx, lambda, m)?;
    let n = lambda.len();
    Ok(match m {
        Move::Transpose(i) => status_of(lambda[i] - lambda[i + 1]),
        Move::SignFlipLast => status_of(lambda[n - 1]),
        Move::DReflectionLastPair => status_of(lambda[n - 2] + lambda[n - 1]),
    })
}

pub fn apply_move(lambda: &[HalfInt], m: Move) -> Weight {
    let mut out = lambda.to_vec();
    let n = out.len();
    match m {
        Move::Transpose(i) => out.swap(i, i + 1),
        Move::SignFlipLast => out[n - 1] = -out[n - 1],
        Move::DReflectionLastPair => {
            let (x, y) = (out[n - 2], out[n - 1]);
            out[n - 2] = -y;
            out[n - 1] = -x;
        }
    }
    out
}

/// Applies the moves in order, failing on a forbidden move or a wrong endpoint.
pub fn replay(ctx: &OrbitContext, src: &[HalfInt], dst: &[HalfInt], path: &[AppliedMove]) -> Result<bool> {
    let mut cur = src.to_vec();
    for step in path {
        let status = move_status(ctx, &cur, step.mv)?;
        if status == MoveStatus::Forbidden || status != step.status {
            return Ok(false);
        }
        cur = apply_move(&cur, step.mv);
    }
    Ok(cur == dst)
}

/// Records moves while mutating a working vector.
struct Walker<'a> {
    ctx: &'a OrbitContext,
    cur: Weight,
    path: Vec<AppliedMove>,
}

impl Walker<'_> {
    /// Applies `m` unless it is forbidden.
    fn step(&mut self, m: Move) -> Result<bool> {
        let status = move_status(self.ctx, &self.cur, m)?;
        if status == MoveStatus::Forbidden {
            return Ok(false);
        }
        self.cur = apply_move(&self.cur, m);
        self.path.push(AppliedMove { mv: m, status });
        Ok(true)
    }

    /// Moves the entry at `from` to the left end of `[to, from]` by adjacent swaps.
    fn bubble_left(&mut self, mut from: usize, to: usize) -> Result<bool> {
        while from > to {
            if !self.step(Move::Transpose(from - 1))? {
                return Ok(false);
            }
            from -= 1;
        }
        Ok(true)
    }

    /// Inserts the entry at `pos` into the dominant suffix starting at `pos + 1`.
    fn insert(&mut self, pos: usize) -> Result<bool> {
        let n = self.cur.len();
        let mut i = pos;
        while i + 1 < n && self.cur[i + 1] > self.cur[i] {
            self.step(Move::Transpose(i))?;
            i += 1;
        }
        let p = self.cur[i];
        match self.ctx.kind() {
            Kind::A => Ok(true),
            Kind::B | Kind::C => {
                if p >= HalfInt::ZERO {
                    return Ok(true);
                }
                // A negative entry has passed every entry of the suffix.
                if !self.step(Move::SignFlipLast)? {
                    return Ok(false);
                }
                self.settle_left(n - 1, pos)
            }
            Kind::D => {
                if i + 1 == n {
                    if i == pos || self.cur[i - 1] >= p.abs() {
                        return Ok(true);
                    }
                    // Here p < 0 and its left neighbour is smaller than |p|.
                    if !self.step(Move::DReflectionLastPair)? {
                        return Ok(false);
                    }
                    self.settle_left(n - 2, pos)
                } else if i + 2 == n && self.cur[n - 1] < HalfInt::ZERO && p < self.cur[n - 1].abs() {
                    self.step(Move::DReflectionLastPair)
                } else {
                    Ok(true)
                }
            }
        }
    }

    /// Moves the entry at `i` left while its left neighbour is smaller, not past `floor`.
    fn settle_left(&mut self, mut i: usize, floor: usize) -> Result<bool> {
        while i > floor && self.cur[i - 1] < self.cur[i] {
            if !self.step(Move::Transpose(i - 1))? {
                return Ok(false);
            }
            i -= 1;
        }
        Ok(true)
    }
}

/// A chain of non-forbidden moves from `flatten(src)` to `flatten(dst)`.
///
/// Two constructions are tried. When `dst` is a rearrangement of `src`, each
/// entry of `dst` is brought into place by left shifts. Otherwise the linear
/// part of `dst` must be a prefix of `src`, and the remaining entries of
/// `src` are inserted one at a time, right to left, into the dominant tail.
pub fn path_nongeneric(
    ctx: &OrbitContext,
    src: &CuspidalString,
    dst: &CuspidalString,
) -> Result<Option<Vec<AppliedMove>>> {
    let (from, to) = (src.flatten(), dst.flatten());
    ctx.spec.check_dim(&from)?;
    ctx.spec.check_dim(&to)?;
    if !orbit_equivalent(ctx, &from, &to) {
        return Err(Error::NonEquivalentEndpoints);
    }
    if from == to {
        return Ok(Some(Vec::new()));
    }
    if let Some(p) = permutation_path(ctx, &from, &to)? {
        return Ok(Some(p));
    }
    absorption_path(ctx, &from, dst)
}

fn permutation_path(ctx: &OrbitContext, from: &[HalfInt], to: &[HalfInt]) -> Result<Option<Vec<AppliedMove>>> {
    let mut a = from.to_vec();
    let mut b = to.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }
    let mut w = Walker { ctx, cur: from.to_vec(), path: Vec::new() };
    for k in 0..to.len() {
        let j = (k..to.len()).find(|&j| w.cur[j] == to[k]).expect("same multiset");
        if !w.bubble_left(j, k)? {
            return Ok(None);
        }
    }
    Ok(Some(w.path))
}

fn absorption_path(ctx: &OrbitContext, from: &[HalfInt], dst: &CuspidalString) -> Result<Option<Vec<AppliedMove>>> {
    let to = dst.flatten();
    let keep = to.len() - dst.tail.values().len();
    if from[..keep] != to[..keep] {
        return Ok(None);
    }
    let mut w = Walker { ctx, cur: from.to_vec(), path: Vec::new() };
    // The rightmost entries already in dominant position form the initial suffix.
    let n = from.len();
    let mut start = n;
    while start > keep && suffix_dominant(ctx.kind(), &w.cur[start - 1..]) {
        start -= 1;
    }
    for pos in (keep..start).rev() {
        if !w.insert(pos)? {
            return Ok(None);
        }
    }
    Ok((w.cur == to).then_some(w.path))
}

fn suffix_dominant(kind: Kind, s: &[HalfInt]) -> bool {
    let dec = s.windows(2).all(|p| p[0] >= p[1]);
    match kind {
        Kind::A => dec,
        Kind::B | Kind::C => dec && s.last().is_none_or(|l| *l >= HalfInt::ZERO),
        Kind::D => {
            let m = s.len();
            m < 2 || (s[..m - 1].windows(2).all(|p| p[0] >= p[1]) && s[m - 2] >= s[m - 1].abs())
        }
    }
}

fn all_moves(ctx: &OrbitContext, n: usize) -> Vec<Move> {
    let mut moves: Vec<Move> = (0..n.saturating_sub(1)).map(Move::Transpose).collect();
    match ctx.kind() {
        Kind::B | Kind::C => moves.push(Move::SignFlipLast),
        Kind::D => moves.push(Move::DReflectionLastPair),
        Kind::A => {}
    }
    moves
}

/// Breadth-first search over non-forbidden moves; returns the lexicographically
/// smallest shortest path, or `None` if `max_states` is exhausted first.
pub fn search_path(
    ctx: &OrbitContext,
    src: &CuspidalString,
    dst: &CuspidalString,
    max_states: usize,
) -> Result<Option<Vec<AppliedMove>>> {
    let (from, to) = (src.flatten(), dst.flatten());
    ctx.spec.check_dim(&from)?;
    ctx.spec.check_dim(&to)?;
    if !orbit_equivalent(ctx, &from, &to) {
        return Err(Error::NonEquivalentEndpoints);
    }
    let moves = all_moves(ctx, from.len());
    let mut parent: HashMap<Weight, Option<(Weight, AppliedMove)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut path = Vec::new();
            let mut node = cur;
            while let Some(Some((prev, m))) = parent.get(&node) {
                path.push(*m);
                node = prev.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        for &m in &moves {
            let status = move_status(ctx, &cur, m)?;
            if status == MoveStatus::Forbidden {
                continue;
            }
            let next = apply_move(&cur, m);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= max_states {
                return Ok(None);
            }
            parent.insert(next.clone(), Some((cur.clone(), AppliedMove { mv: m, status })));
            queue.push_back(next);
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "1a")]
    T1a,
    #[serde(rename = "1b")]
    T1b,
    #[serde(rename = "1c")]
    T1c,
    #[serde(rename = "2a")]
    T2a,
    #[serde(rename = "2b")]
    T2b,
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::T1a => "1a",
            Tag::T1b => "1b",
            Tag::T1c => "1c",
            Tag::T2a => "2a",
            Tag::T2b => "2b",
            Tag::Unclassified => "unclassified",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "subrepresentation")]
    Subrepresentation,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Subrepresentation => "subrepresentation",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Classification of a string; the verdict assumes the (CS) conditions on the cuspidal data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTag {
    pub tag: Tag,
    pub verdict: Verdict,
    pub assumption: String,
}

impl CaseTag {
    fn new(tag: Tag) -> Self {
        let verdict = if tag == Tag::Unclassified { Verdict::Unknown } else { Verdict::Subrepresentation };
        CaseTag { tag, verdict, assumption: "(CS) conditions on the cuspidal support assumed".into() }
    }
}

/// All strings `(a', b')(n')` with midpoint `>= 0` in the orbit of `lambda`.
pub fn standard_forms(ctx: &OrbitContext, lambda: &[HalfInt]) -> Result<Vec<CuspidalString>> {
    let kind = ctx.kind();
    if kind == Kind::A {
        return Err(Error::MoveMismatch("standard forms need kind B, C or D".into()));
    }
    let mut abs: Vec<HalfInt> = lambda.iter().map(|v| v.abs()).collect();
    abs.sort_unstable_by(|a, b| b.cmp(a));
    let mut tops: Vec<HalfInt> = abs.iter().flat_map(|&v| [v, -v]).collect();
    tops.sort_unstable_by(|a, b| b.cmp(a));
    tops.dedup();
    let mut out = Vec::new();
    for &a in &tops {
        for len in 1..=abs.len() {
            let b = a - HalfInt::from_int(len as i64 - 1);
            if (a + b) < HalfInt::ZERO {
                break;
            }
            let lin = LinearSegment::new(a, b)?;
            let Some(rest) = remove_abs(&abs, &lin) else { continue };
            let Ok(tail) = ResidualSegment::new(kind, rest) else { continue };
            let s = CuspidalString::new(vec![lin], tail)?;
            if orbit_equivalent(ctx, &s.flatten(), lambda) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// The exponent `(s, ..., s, 0, ..., 0)` of a string with one linear segment.
pub fn standard_parameter(s: &CuspidalString) -> Weight {
    let mut v: Weight = s.linear.iter().flat_map(|l| std::iter::repeat_n(l.midpoint(), l.len())).collect();
    v.extend(std::iter::repeat_n(HalfInt::ZERO, s.tail.values().len()));
    v
}

pub fn classify_case(ctx: &OrbitContext, s: &CuspidalString) -> Result<CaseTag> {
    if s.linear.len() > 1 {
        return Err(Error::InvalidSegment("expected at most one linear segment".into()));
    }
    let lambda = s.flatten();
    ctx.spec.check_dim(&lambda)?;
    let (dom, _) = dominant_rep(ctx, &lambda)?;
    if is_residual_point(ctx, &dom)? {
        let Some(lin) = s.linear.first() else { return Ok(CaseTag::new(Tag::T1a)) };
        if dom == lambda {
            return Ok(CaseTag::new(Tag::T1a));
        }
        let Ok(dseg) = ResidualSegment::new(ctx.kind(), dom) else {
            return Ok(CaseTag::new(Tag::Unclassified));
        };
        let jumps = jumps_of(&dseg)?;
        if let Some(k) = jumps.iter().position(|&j| j == lin.a) {
            if let Some(&next) = jumps.get(k + 1) {
                if lin.b == -next {
                    return Ok(CaseTag::new(Tag::T1b));
                }
                if lin.b > -next {
                    return Ok(CaseTag::new(Tag::T1c));
                }
            }
        }
        return Ok(CaseTag::new(Tag::Unclassified));
    }
    let Some(lin) = s.linear.first() else { return Ok(CaseTag::new(Tag::Unclassified)) };
    let forms = standard_forms(ctx, &lambda)?;
    let params: Vec<Weight> = forms.iter().map(standard_parameter).collect();
    let least = |p: &Weight| -> Result<bool> {
        for q in &params {
            if !leq_order(ctx.spec, p, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if lin.midpoint() >= HalfInt::ZERO && least(&standard_parameter(s))? {
        return Ok(CaseTag::new(Tag::T2a));
    }
    for (f, p) in forms.iter().zip(&params) {
        let fl = f.linear[0];
        if fl.a == lin.a && lin.b > fl.b && least(p)? {
            return Ok(CaseTag::new(Tag::T2b));
        }
    }
    Ok(CaseTag::new(Tag::Unclassified))
}
