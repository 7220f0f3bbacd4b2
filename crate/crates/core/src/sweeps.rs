//! Exhaustive property sweeps over all orbits or subsets up to a rank bound.
//!
//! Each sweep returns a report; failures are listed with a short witness.
//! Work is spread with rayon, results are collected in input order.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynkin::{
    distinguished_partitions, jordan_partition, jumps_of, partition_to_segment, segment_from_jumps,
    segment_to_wdd, wdd_to_segment,
};
use crate::intertwine::{path_nongeneric, replay};
use crate::orbits::{c1, enumerate_l, CuspidalString, OrbitContext};
use crate::projections::{
    block_structure, classify_components, component_axioms_hold, project_roots, reducible_law_holds,
    removed_independent, theta_condition, uniqueway_holds, ComponentType, ThetaSubset,
};
use crate::rootsys::{Kind, RootSystemSpec};
use crate::segments::extract_jump_pair;
use crate::Result;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    fn new(name: &str) -> Self {
        SweepReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    fn absorb(&mut self, other: SweepReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {status} ({} checks, {} failures)", self.name, self.checked, self.failures.len())
    }
}

fn specs(kinds: &[Kind], max_rank: usize) -> Vec<RootSystemSpec> {
    let mut out = Vec::new();
    for &kind in kinds {
        for rank in kind.min_rank()..=max_rank {
            out.push(RootSystemSpec::new(kind, rank).expect("rank in range"));
        }
    }
    out
}

fn merge(name: &str, parts: Vec<SweepReport>) -> SweepReport {
    let mut r = SweepReport::new(name);
    parts.into_iter().for_each(|p| r.absorb(p));
    r
}

/// Partition, segment, jumps and diagram round trips for every orbit.
pub fn bijection_sweep(max_rank: usize) -> SweepReport {
    let parts = specs(&Kind::ALL, max_rank)
        .into_par_iter()
        .map(|spec| {
            let mut r = SweepReport::new("");
            for p in distinguished_partitions(spec) {
                let s = partition_to_segment(&p);
                let back = jordan_partition(&s);
                r.check(back.as_ref() == Ok(&p), || format!("{spec} {p}: jordan {back:?}"));
                let again = jumps_of(&s).and_then(|j| segment_from_jumps(spec.kind, &j));
                r.check(again.as_ref() == Ok(&s), || format!("{spec} {s}: from jumps {again:?}"));
                let labels = segment_to_wdd(&s);
                let round = labels.as_ref().ok().map(|l| wdd_to_segment(spec.kind, l));
                r.check(matches!(&round, Some(Ok(t)) if *t == s), || format!("{spec} {s}: wdd {labels:?}"));
            }
            r
        })
        .collect();
    merge("bijections", parts)
}

/// On every family 𝓛, C(1,.) vanishes only at the dominant point and, among
/// strings with top `a`, is maximal exactly at the point `(a,-a_-)(n)`.
pub fn c1_sweep(max_rank: usize) -> Result<SweepReport> {
    let parts = specs(&Kind::ALL, max_rank)
        .into_par_iter()
        .map(|spec| -> Result<SweepReport> {
            let mut r = SweepReport::new("");
            let ctx = OrbitContext::standard(spec.kind, spec.rank)?;
            for p in distinguished_partitions(spec) {
                let s = partition_to_segment(&p);
                let dominant = s.values().to_vec();
                let family = enumerate_l(&ctx, &s)?;
                for x in &family {
                    let flat = x.flatten();
                    let zero = c1(&ctx, &flat)? == 0;
                    r.check(zero == (flat == dominant), || format!("{spec} {x}: C(1) zero={zero}"));
                }
                if spec.kind == Kind::A {
                    continue;
                }
                let jumps = jumps_of(&s)?;
                for i in 1..jumps.len() {
                    let a = jumps[i - 1];
                    let (lin, rest) = extract_jump_pair(&s, i)?;
                    let expected = CuspidalString::new(vec![lin], rest)?.flatten();
                    let mut scored = Vec::new();
                    for x in family.iter().filter(|x| x.linear.first().is_some_and(|l| l.a == a)) {
                        let flat = x.flatten();
                        scored.push((c1(&ctx, &flat)?, flat));
                    }
                    let best = scored.iter().map(|(v, _)| *v).max();
                    let mut winners: Vec<_> =
                        scored.iter().filter(|(v, _)| Some(*v) == best).map(|(_, w)| w.clone()).collect();
                    winners.sort();
                    winners.dedup();
                    r.check(winners == [expected.clone()], || format!("{spec} {s} a={a}: maximizers {winners:?}"));
                }
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("C(1,.) lattice", parts))
}

/// Within each family 𝓛, every `(a,b)(n) -> (a,b')(n')` with `b' >= b`, and
/// every string to the dominant point, has a replayable non-generic path.
pub fn path_sweep(max_rank: usize) -> Result<SweepReport> {
    let parts = specs(&[Kind::B, Kind::C, Kind::D], max_rank)
        .into_par_iter()
        .map(|spec| -> Result<SweepReport> {
            let mut r = SweepReport::new("");
            let ctx = OrbitContext::standard(spec.kind, spec.rank)?;
            for p in distinguished_partitions(spec) {
                let family = enumerate_l(&ctx, &partition_to_segment(&p))?;
                for x in &family {
                    for y in &family {
                        let wanted = match (x.linear.first(), y.linear.first()) {
                            (Some(u), Some(v)) => u.a == v.a && v.b >= u.b,
                            (_, None) => true,
                            (None, Some(_)) => false,
                        };
                        if !wanted {
                            continue;
                        }
                        let ok = match path_nongeneric(&ctx, x, y)? {
                            Some(path) => replay(&ctx, &x.flatten(), &y.flatten(), &path)?,
                            None => false,
                        };
                        r.check(ok, || format!("{spec} {x} -> {y}"));
                    }
                }
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("paths", parts))
}

/// Reports of the projection suite, one per law.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionSweep {
    pub uniqueway: SweepReport,
    pub irreducible: SweepReport,
    pub reducible: SweepReport,
    pub type_a: SweepReport,
    pub axioms: SweepReport,
}

impl ProjectionSweep {
    pub fn reports(&self) -> [&SweepReport; 5] {
        [&self.uniqueway, &self.irreducible, &self.reducible, &self.type_a, &self.axioms]
    }
}

/// All subsets Θ for every kind up to `max_rank`.
///
/// The irreducible law is checked where `theta_condition` holds (kinds B, C, D);
/// the reducible law on kinds B, C, D where the removed roots are pairwise
/// non-adjacent but the blocks differ in size.
pub fn projection_sweep(max_rank: usize) -> Result<ProjectionSweep> {
    let mut jobs: Vec<ThetaSubset> = Vec::new();
    for spec in specs(&Kind::ALL, max_rank) {
        if spec.rank >= 2 {
            jobs.extend(ThetaSubset::all(spec));
        }
    }
    let parts = jobs
        .into_par_iter()
        .map(|t| -> Result<[SweepReport; 5]> {
            let mut out: [SweepReport; 5] = Default::default();
            let spec = t.spec;
            let p = classify_components(project_roots(&t))?;
            let tag = || format!("{spec} removed {:?}: {}", t.removed, p.components_label());
            out[0].check(uniqueway_holds(&p), tag);
            let classical = spec.kind != Kind::A;
            if classical && theta_condition(&t) {
                let ok = p.components.len() == 1 && p.subsystem_rank() == t.d();
                out[1].check(ok, tag);
            }
            if classical && removed_independent(&t) && !theta_condition(&t) {
                let ok = reducible_law_holds(&p)?;
                out[2].check(ok, || format!("{} blocks {:?}", tag(), block_structure(&t)));
            }
            if spec.kind == Kind::A {
                let ok = p.components.iter().chain(p.alternatives.iter().flatten()).all(|c| c.kind == ComponentType::A);
                out[3].check(ok, tag);
            }
            let ok = p.components.iter().all(|c| component_axioms_hold(&p, c));
            out[4].check(ok, tag);
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let names = ["uniqueway", "theta condition gives rank d", "reducible count", "type A only", "component axioms"];
    let mut acc: Vec<SweepReport> = names.iter().map(|n| SweepReport::new(n)).collect();
    for part in parts {
        for (a, r) in acc.iter_mut().zip(part) {
            a.absorb(r);
        }
    }
    let [uniqueway, irreducible, reducible, type_a, axioms]: [SweepReport; 5] =
        acc.try_into().expect("five reports");
    Ok(ProjectionSweep { uniqueway, irreducible, reducible, type_a, axioms })
}
