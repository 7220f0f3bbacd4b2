//! Projections of a root system onto the orthogonal complement of a set of
//! simple roots, and the root subsystems contained in the projected set.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, simple_roots, Kind, RootSystemSpec};

pub type QVec = Vec<Rational64>;

/// The removed simple roots `Delta \ Theta`, as 1-based Bourbaki indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaSubset {
    pub spec: RootSystemSpec,
    pub removed: Vec<usize>,
}

impl ThetaSubset {
    pub fn new(spec: RootSystemSpec, removed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = removed.into_iter().collect();
        if set.is_empty() || set.len() >= spec.rank {
            return Err(Error::InvalidSubset(format!("{} removed roots out of {}", set.len(), spec.rank)));
        }
        if let Some(&i) = set.iter().find(|&&i| i == 0 || i > spec.rank) {
            return Err(Error::InvalidSubset(format!("no simple root {i} in {spec}")));
        }
        Ok(ThetaSubset { spec, removed: set.into_iter().collect() })
    }

    /// Builds the subset from the kept roots `Theta`.
    pub fn from_kept(spec: RootSystemSpec, kept: &[usize]) -> Result<Self> {
        if let Some(&i) = kept.iter().find(|&&i| i == 0 || i > spec.rank) {
            return Err(Error::InvalidSubset(format!("no simple root {i} in {spec}")));
        }
        ThetaSubset::new(spec, (1..=spec.rank).filter(|i| !kept.contains(i)))
    }

    pub fn kept(&self) -> Vec<usize> {
        (1..=self.spec.rank).filter(|i| !self.removed.contains(i)).collect()
    }

    pub fn d(&self) -> usize {
        self.removed.len()
    }

    /// Every nonempty proper subset of the simple roots, as removed sets.
    pub fn all(spec: RootSystemSpec) -> Vec<ThetaSubset> {
        let n = spec.rank;
        (1u64..(1u64 << n) - 1)
            .map(|mask| ThetaSubset {
                spec,
                removed: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
            })
            .collect()
    }
}

/// Sizes of the coordinate blocks glued by roots of `Theta`, left to right,
/// and the size of the block killed by the projection (0 if none).
pub fn block_structure(theta: &ThetaSubset) -> (Vec<usize>, usize) {
    let spec = theta.spec;
    let n = spec.rank;
    let kept = |i: usize| !theta.removed.contains(&i);
    let dim = spec.dim();
    // joined[c] says whether coordinates c and c + 1 lie in the same block.
    let mut joined = vec![false; dim.saturating_sub(1)];
    match spec.kind {
        Kind::A => (1..=n).for_each(|i| joined[i - 1] = kept(i)),
        Kind::B | Kind::C => (1..n).for_each(|i| joined[i - 1] = kept(i)),
        Kind::D => {
            (1..n - 1).for_each(|i| joined[i - 1] = kept(i));
            joined[n - 2] = kept(n - 1) || kept(n);
        }
    }
    let mut sizes = vec![1usize];
    for &j in &joined {
        if j {
            *sizes.last_mut().unwrap() += 1;
        } else {
            sizes.push(1);
        }
    }
    let tail = match spec.kind {
        Kind::A => false,
        Kind::B | Kind::C => kept(n),
        Kind::D => kept(n - 1) && kept(n),
    };
    let tail_size = if tail { sizes.pop().unwrap() } else { 0 };
    (sizes, tail_size)
}

fn adjacent(kind: Kind, n: usize, i: usize, j: usize) -> bool {
    let (i, j) = (i.min(j), i.max(j));
    match kind {
        Kind::D if j == n => i == n - 2,
        _ => j == i + 1,
    }
}

/// No two removed roots are adjacent in the Dynkin graph.
pub fn removed_independent(theta: &ThetaSubset) -> bool {
    let r = &theta.removed;
    r.iter()
        .enumerate()
        .all(|(k, &i)| r[k + 1..].iter().all(|&j| !adjacent(theta.spec.kind, theta.spec.rank, i, j)))
}

/// Removed roots pairwise non-adjacent and all glued blocks of equal size.
pub fn theta_condition(theta: &ThetaSubset) -> bool {
    let (sizes, _) = block_structure(theta);
    removed_independent(theta) && sizes.windows(2).all(|w| w[0] == w[1])
}

/// Number of changes of block size, read left to right.
pub fn length_changes(theta: &ThetaSubset) -> usize {
    let (sizes, _) = block_structure(theta);
    sizes.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentType {
    A,
    B,
    C,
    D,
    BC,
    E,
    F,
    G,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComponentType::A => "A",
            ComponentType::B => "B",
            ComponentType::C => "C",
            ComponentType::D => "D",
            ComponentType::BC => "BC",
            ComponentType::E => "E",
            ComponentType::F => "F",
            ComponentType::G => "G",
        };
        f.write_str(s)
    }
}

/// An irreducible component; `roots` are its positive roots as coefficient
/// vectors over the projected removed simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentType,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    /// For BC, the reduced subsystems of the same rank it contains.
    pub reduced: Vec<String>,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedSystem {
    pub theta: ThetaSubset,
    /// Nonzero projections of all roots, with multiplicity.
    pub sigma_theta: Vec<QVec>,
    pub delta_theta: Vec<QVec>,
    /// Gram matrix of `delta_theta`.
    pub gram: Vec<Vec<Rational64>>,
    pub components: Vec<Component>,
    /// Other subsystems of the same rank and size, as component lists.
    pub alternatives: Vec<Vec<Component>>,
    pub total_rank: usize,
}

impl ProjectedSystem {
    pub fn subsystem_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn components_label(&self) -> String {
        if self.components.is_empty() {
            return "none".into();
        }
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        parts.join(" + ")
    }
}

fn dot(u: &[Rational64], v: &[Rational64]) -> Rational64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn to_q(r: &[i64]) -> QVec {
    r.iter().map(|&x| Rational64::from_integer(x)).collect()
}

/// Orthogonal projection away from the span of the kept simple roots.
fn projector(spec: RootSystemSpec, kept: &[usize]) -> impl Fn(&[i64]) -> QVec {
    let simple = simple_roots(spec);
    let mut basis: Vec<QVec> = Vec::new();
    for &i in kept {
        let mut v = to_q(&simple[i - 1]);
        for u in &basis {
            let c = dot(&v, u) / dot(u, u);
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
        }
        basis.push(v);
    }
    move |r: &[i64]| {
        let mut v = to_q(r);
        for u in &basis {
            let c = dot(&v, u) / dot(u, u);
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
        }
        v
    }
}

pub fn project_roots(theta: &ThetaSubset) -> ProjectedSystem {
    let spec = theta.spec;
    let proj = projector(spec, &theta.kept());
    let mut sigma_theta = Vec::new();
    for r in positive_roots(spec) {
        let v = proj(&r);
        if v.iter().any(|x| !x.is_zero()) {
            sigma_theta.push(v.iter().map(|x| -x).collect());
            sigma_theta.push(v);
        }
    }
    sigma_theta.sort();
    let simple = simple_roots(spec);
    let delta_theta: Vec<QVec> = theta.removed.iter().map(|&i| proj(&simple[i - 1])).collect();
    let gram = delta_theta
        .iter()
        .map(|u| delta_theta.iter().map(|v| dot(u, v)).collect())
        .collect();
    ProjectedSystem {
        theta: theta.clone(),
        sigma_theta,
        delta_theta,
        gram,
        components: Vec::new(),
        alternatives: Vec::new(),
        total_rank: theta.d(),
    }
}

/// Solves `M x = b` over the rationals for square invertible `M`.
fn solve(m: &[Vec<Rational64>], b: &[Rational64]) -> Option<QVec> {
    let n = m.len();
    let mut a: Vec<QVec> = m.iter().zip(b).map(|(row, y)| {
        let mut r = row.clone();
        r.push(*y);
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        a[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                a[r].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n]).collect())
}

/// Coefficients of `v` over `delta_theta`.
pub fn coefficients(p: &ProjectedSystem, v: &[Rational64]) -> Option<QVec> {
    let rhs: QVec = p.delta_theta.iter().map(|u| dot(u, v)).collect();
    let c = solve(&p.gram, &rhs)?;
    // Reject vectors outside the span.
    let back: QVec = (0..v.len())
        .map(|k| c.iter().zip(&p.delta_theta).map(|(ci, u)| ci * u[k]).sum())
        .collect();
    (back == v).then_some(c)
}

/// Each projected root is an integral combination of `delta_theta` with coefficients of one sign.
pub fn uniqueway_holds(p: &ProjectedSystem) -> bool {
    p.sigma_theta.iter().all(|v| {
        coefficients(p, v).is_some_and(|c| {
            c.iter().all(|x| x.is_integer())
                && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
        })
    })
}

/// Positive projected roots as integer coefficient vectors plus an integral Gram form.
struct Reps {
    roots: Vec<Vec<i64>>,
    ip: Vec<Vec<i64>>,
}

fn integer_reps(p: &ProjectedSystem) -> Result<Reps> {
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for v in &p.sigma_theta {
        let c = coefficients(p, v)
            .ok_or_else(|| Error::InvalidSubset("projection outside the span".into()))?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvalidSubset("non-integral coefficients".into()));
        }
        let c: Vec<i64> = c.iter().map(|x| x.to_integer()).collect();
        if c.iter().all(|x| *x >= 0) {
            set.insert(c);
        }
    }
    let lcm = p
        .gram
        .iter()
        .flatten()
        .fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
    let g: Vec<Vec<i64>> = p
        .gram
        .iter()
        .map(|row| row.iter().map(|x| (x * Rational64::from_integer(lcm)).to_integer()).collect())
        .collect();
    let roots: Vec<Vec<i64>> = set.into_iter().collect();
    let form = |u: &[i64], v: &[i64]| -> i64 {
        let mut s = 0;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += ui * g[i][j] * vj;
            }
        }
        s
    };
    let ip = roots.iter().map(|u| roots.iter().map(|v| form(u, v)).collect()).collect();
    Ok(Reps { roots, ip })
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

type Mask = u128;

const SOLUTION_CAP: usize = 64;

/// Pairwise data for the subsystem search.
struct Table {
    m: usize,
    /// `compat[i]` has bit `j` when the pair is integral and reflection-closed in the set.
    compat: Vec<Mask>,
    /// `refl[i][j]` is the representative of `s_i(r_j)`.
    refl: Vec<Vec<usize>>,
}

fn build_table(reps: &Reps) -> Table {
    let m = reps.roots.len();
    let index = |v: &Vec<i64>| -> Option<usize> {
        let pos: Vec<i64> = if v.iter().any(|x| *x < 0) { v.iter().map(|x| -x).collect() } else { v.clone() };
        reps.roots.binary_search(&pos).ok()
    };
    let mut compat = vec![0 as Mask; m];
    let mut refl = vec![vec![usize::MAX; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (ii, jj, ij) = (reps.ip[i][i], reps.ip[j][j], reps.ip[i][j]);
            if (2 * ij) % ii != 0 || (2 * ij) % jj != 0 {
                continue;
            }
            let (cij, cji) = (2 * ij / jj, 2 * ij / ii);
            let proportional = ij * ij == ii * jj;
            let ok = if i == j {
                true
            } else if proportional {
                ii == 4 * jj || jj == 4 * ii
            } else {
                (0..=3).contains(&(cij * cji))
            };
            if !ok {
                continue;
            }
            // s_i(r_j) = r_j - <r_j, r_i^vee> r_i
            let img: Vec<i64> = reps.roots[j].iter().zip(&reps.roots[i]).map(|(a, b)| a - cji * b).collect();
            let Some(k) = index(&img) else { continue };
            refl[i][j] = k;
        }
    }
    for i in 0..m {
        for j in 0..m {
            if refl[i][j] != usize::MAX && refl[j][i] != usize::MAX {
                compat[i] |= 1 << j;
            }
        }
    }
    Table { m, compat, refl }
}

fn rank_of(roots: &[Vec<i64>], mask: Mask) -> usize {
    let mut rows: Vec<Vec<i128>> = (0..roots.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| roots[i].iter().map(|&x| x as i128).collect())
        .collect();
    let cols = roots.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                for k in 0..cols {
                    rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
                }
                let g = rows[r].iter().fold(0i128, |acc, &x| gcd128(acc, x));
                if g > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd128(b, a % b) }
}

struct Search<'a> {
    t: &'a Table,
    roots: &'a [Vec<i64>],
    best: (usize, usize),
    sols: Vec<Mask>,
    cap: usize,
}

impl Search<'_> {
    /// Closure of `x` with `i` added, or `None` if it meets `excluded` or an incompatible pair.
    fn close(&self, x: Mask, i: usize, excluded: Mask) -> Option<Mask> {
        let mut set = x;
        let mut queue = vec![i];
        set |= 1 << i;
        while let Some(k) = queue.pop() {
            if self.t.compat[k] & set != set {
                return None;
            }
            for j in 0..self.t.m {
                if set >> j & 1 == 0 {
                    continue;
                }
                for r in [self.t.refl[k][j], self.t.refl[j][k]] {
                    if set >> r & 1 == 0 {
                        if excluded >> r & 1 == 1 {
                            return None;
                        }
                        set |= 1 << r;
                        queue.push(r);
                    }
                }
            }
        }
        Some(set)
    }

    fn value(&self, x: Mask) -> (usize, usize) {
        (rank_of(self.roots, x), x.count_ones() as usize)
    }

    fn dfs(&mut self, x: Mask, excluded: Mask) {
        let all: Mask = if self.t.m == 128 { !0 } else { (1 << self.t.m) - 1 };
        let mut cand = all & !x & !excluded;
        for k in 0..self.t.m {
            if x >> k & 1 == 1 {
                cand &= self.t.compat[k];
            }
        }
        let ub = self.value(x | cand);
        if ub < self.best {
            return;
        }
        if cand == 0 {
            let val = self.value(x);
            if val > self.best {
                self.best = val;
                self.sols.clear();
            }
            if val == self.best && self.sols.len() < self.cap {
                self.sols.push(x);
            }
            return;
        }
        let i = (0..self.t.m)
            .filter(|&k| cand >> k & 1 == 1)
            .max_by_key(|&k| ((self.t.compat[k] & cand).count_ones(), std::cmp::Reverse(k)))
            .unwrap();
        if let Some(x2) = self.close(x, i, excluded) {
            self.dfs(x2, excluded);
        }
        self.dfs(x, excluded | 1 << i);
    }
}

fn components_of(reps: &Reps, mask: Mask, ambient: Kind) -> Vec<Component> {
    let members: Vec<usize> = (0..reps.roots.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let mut seen = vec![false; reps.roots.len()];
    let mut out = Vec::new();
    for &start in &members {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for &b in &members {
                if !seen[b] && reps.ip[a][b] != 0 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(classify_one(reps, &comp, ambient));
    }
    out.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.kind.cmp(&b.kind)));
    out
}

fn classify_one(reps: &Reps, comp: &[usize], ambient: Kind) -> Component {
    let roots: Vec<Vec<i64>> = comp.iter().map(|&i| reps.roots[i].clone()).collect();
    let rank = rank_of(&roots, if roots.len() == 128 { !0 } else { (1 << roots.len()) - 1 });
    let doubled = comp.iter().any(|&i| {
        let two: Vec<i64> = reps.roots[i].iter().map(|x| 2 * x).collect();
        roots.contains(&two)
    });
    if doubled {
        let reduced = if rank == 1 {
            vec!["A_1".to_string()]
        } else {
            vec![format!("B_{rank}"), format!("C_{rank}"), format!("D_{rank}")]
        };
        return Component { kind: ComponentType::BC, rank, roots, reduced };
    }
    // Simple roots: positive roots that are not a sum of two positive roots.
    let simple: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&i| {
            !comp.iter().any(|&a| {
                comp.iter().any(|&b| {
                    reps.roots[a].iter().zip(&reps.roots[b]).zip(&reps.roots[i]).all(|((x, y), z)| x + y == *z)
                })
            })
        })
        .collect();
    let r = simple.len();
    let cartan = |i: usize, j: usize| 2 * reps.ip[simple[i]][simple[j]] / reps.ip[simple[j]][simple[j]];
    let kind = if r == 1 {
        ComponentType::A
    } else {
        let mut deg = vec![0usize; r];
        let mut doubles = Vec::new();
        let mut triple = false;
        for i in 0..r {
            for j in i + 1..r {
                let mult = cartan(i, j) * cartan(j, i);
                if mult != 0 {
                    deg[i] += 1;
                    deg[j] += 1;
                }
                match mult {
                    2 => doubles.push((i, j)),
                    3 => triple = true,
                    _ => {}
                }
            }
        }
        let norm = |i: usize| reps.ip[simple[i]][simple[i]];
        if triple {
            ComponentType::G
        } else if let Some(&(i, j)) = doubles.first() {
            if r == 2 {
                if ambient == Kind::C { ComponentType::C } else { ComponentType::B }
            } else {
                let end = if deg[i] == 1 { Some(i) } else if deg[j] == 1 { Some(j) } else { None };
                let other = |e: usize| if e == i { j } else { i };
                match end {
                    Some(e) if norm(e) < norm(other(e)) => ComponentType::B,
                    Some(_) => ComponentType::C,
                    None => ComponentType::F,
                }
            }
        } else if deg.iter().all(|&x| x <= 2) {
            ComponentType::A
        } else {
            let leaves = deg.iter().filter(|&&x| x == 1).count();
            // D_r has a branch node with two arms of length one.
            let branch = deg.iter().position(|&x| x == 3).unwrap();
            let short_arms = (0..r)
                .filter(|&k| deg[k] == 1 && cartan(k, branch) != 0)
                .count();
            if leaves == 3 && short_arms >= 2 { ComponentType::D } else { ComponentType::E }
        }
    };
    Component { kind, rank, roots, reduced: Vec::new() }
}

/// Largest root subsystem of the projected set, by rank then by number of roots.
pub fn classify_components(mut p: ProjectedSystem) -> Result<ProjectedSystem> {
    let reps = integer_reps(&p)?;
    if reps.roots.len() > 128 {
        return Err(Error::RankOutOfRange(p.theta.spec.rank));
    }
    let table = build_table(&reps);
    let mut search = Search { t: &table, roots: &reps.roots, best: (0, 0), sols: Vec::new(), cap: SOLUTION_CAP };
    search.dfs(0, 0);
    let ambient = p.theta.spec.kind;
    let mut options: Vec<Vec<Component>> =
        search.sols.iter().map(|&mask| components_of(&reps, mask, ambient)).collect();
    // Most components first; ties by type list.
    options.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| label(a).cmp(&label(b))));
    let mut seen = BTreeSet::new();
    options.retain(|o| seen.insert(label(o)));
    if !options.is_empty() {
        p.components = options.remove(0);
    }
    p.alternatives = options;
    Ok(p)
}

/// Splits `Sigma_Theta` along runs of equal-size blocks.
///
/// Each run contributes the projected roots supported on its coordinates.
/// Returns `None` when some run does not carry an irreducible root system
/// whose rank is the number of blocks in the run.
pub fn block_run_decomposition(p: &ProjectedSystem) -> Result<Option<Vec<Component>>> {
    let reps = integer_reps(p)?;
    let (sizes, _) = block_structure(&p.theta);
    let mut runs: Vec<(usize, usize, usize)> = Vec::new(); // (first coordinate, end coordinate, blocks)
    let mut start = 0;
    for (k, &size) in sizes.iter().enumerate() {
        match runs.last_mut() {
            Some(run) if sizes[k - 1] == size => {
                run.1 += size;
                run.2 += 1;
            }
            _ => runs.push((start, start + size, 1)),
        }
        start += size;
    }
    let ambient = p.theta.spec.kind;
    let mut out = Vec::new();
    for (lo, hi, blocks) in runs {
        let mut members: Vec<usize> = Vec::new();
        for v in &p.sigma_theta {
            let inside = v.iter().enumerate().all(|(c, x)| x.is_zero() || (lo..hi).contains(&c));
            if !inside {
                continue;
            }
            let Some(c) = coefficients(p, v) else { continue };
            let c: Vec<i64> = c.iter().map(|x| x.to_integer()).collect();
            if let Ok(k) = reps.roots.binary_search(&c) {
                members.push(k);
            }
        }
        members.sort_unstable();
        members.dedup();
        let mask = members.iter().fold(0 as Mask, |m, &k| m | 1 << k);
        let comps = components_of(&reps, mask, ambient);
        match comps.as_slice() {
            [c] if c.rank == blocks && component_axioms_hold(p, c) => out.push(c.clone()),
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Whether some rank-`d` decomposition of `Sigma_Theta` has `length_changes + 1`
/// irreducible components, among the reported options and the block-run split.
pub fn reducible_law_holds(p: &ProjectedSystem) -> Result<bool> {
    let want = length_changes(&p.theta) + 1;
    let d = p.theta.d();
    let fits = |cs: &[Component]| cs.len() == want && cs.iter().map(|c| c.rank).sum::<usize>() == d;
    if fits(&p.components) || p.alternatives.iter().any(|o| fits(o)) {
        return Ok(true);
    }
    Ok(block_run_decomposition(p)?.is_some_and(|cs| fits(&cs)))
}

fn label(cs: &[Component]) -> String {
    let parts: Vec<String> = cs.iter().map(ToString::to_string).collect();
    parts.join(" + ")
}

/// Root-system axioms for one component: closed under reflections, integral
/// Cartan numbers, and only the multiples allowed in a possibly non-reduced system.
pub fn component_axioms_hold(p: &ProjectedSystem, c: &Component) -> bool {
    let q: Vec<QVec> = c.roots.iter().map(|r| to_q(r)).collect();
    let form = |u: &QVec, v: &QVec| -> Rational64 {
        let mut s = Rational64::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += ui * p.gram[i][j] * vj;
            }
        }
        s
    };
    let two = Rational64::from_integer(2);
    let all: Vec<QVec> = q.iter().flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()]).collect();
    for u in &all {
        for v in &all {
            let c_uv = two * form(u, v) / form(v, v);
            if !c_uv.is_integer() {
                return false;
            }
            let proportional = form(u, v) * form(u, v) == form(u, u) * form(v, v);
            let cc = c_uv * (two * form(u, v) / form(u, u));
            if proportional {
                let ratio = form(u, v) / form(v, v);
                let allowed = [1, 2, -1, -2].iter().any(|&k| ratio == Rational64::from_integer(k))
                    || ratio.abs() == Rational64::new(1, 2);
                if !allowed {
                    return false;
                }
            } else if cc < Rational64::zero() || cc > Rational64::from_integer(3) {
                return false;
            }
            let img: QVec = u.iter().zip(v).map(|(a, b)| a - c_uv * b).collect();
            if !all.contains(&img) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(kind: Kind, rank: usize, kept: &[usize]) -> ThetaSubset {
        ThetaSubset::from_kept(RootSystemSpec::new(kind, rank).unwrap(), kept).unwrap()
    }

    fn classify(t: &ThetaSubset) -> ProjectedSystem {
        classify_components(project_roots(t)).unwrap()
    }

    #[test]
    fn b4_theta_13() {
        let t = theta(Kind::B, 4, &[1, 3]);
        assert_eq!(t.removed, vec![2, 4]);
        assert!(theta_condition(&t));
        let p = classify(&t);
        assert!(uniqueway_holds(&p));
        assert_eq!(p.components_label(), "BC_2");
        let half = Rational64::new(1, 2);
        let xbar = vec![half, half, Rational64::zero(), Rational64::zero()];
        assert!(p.sigma_theta.contains(&xbar));
    }

    #[test]
    fn b4_theta_1() {
        let t = theta(Kind::B, 4, &[1]);
        assert!(!theta_condition(&t));
        assert_eq!(block_structure(&t), (vec![2, 1, 1], 0));
        let p = classify(&t);
        assert_eq!(p.components.len(), 2);
        let mut names: Vec<String> = p.components.iter().map(ToString::to_string).collect();
        names.sort();
        assert_eq!(names, ["BC_1", "B_2"]);
    }

    #[test]
    fn a5_alternate() {
        let t = theta(Kind::A, 5, &[1, 3, 5]);
        let p = classify(&t);
        assert_eq!(p.components_label(), "A_2");
        assert_eq!(p.gram[0][0], Rational64::from_integer(1));
    }

    #[test]
    fn a4_no_rank_two() {
        let t = theta(Kind::A, 4, &[1, 4]);
        assert!(!theta_condition(&t));
        let p = classify(&t);
        assert_eq!(p.subsystem_rank(), 1);
    }

    #[test]
    fn subsets_validated() {
        let b3 = RootSystemSpec::new(Kind::B, 3).unwrap();
        assert!(ThetaSubset::new(b3, []).is_err());
        assert!(ThetaSubset::new(b3, [1, 2, 3]).is_err());
        assert!(ThetaSubset::new(b3, [4]).is_err());
        assert_eq!(ThetaSubset::all(b3).len(), 6);
    }
}
