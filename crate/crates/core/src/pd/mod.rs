//! Proportionality degree: failures, verification, exact profiles and
//! committee search.
//!
//! A committee `W` has PD `f` if every `ℓ`-cohesive group has average
//! satisfaction at least `f(ℓ)`. Dropping the most satisfied members of a
//! group never raises its average, so a failure exists iff one exists among
//! groups of exactly `s = ⌈ℓn/k⌉` voters; every routine here searches those.

mod committee;
mod models;
mod structured;

pub use committee::{pd_committee_exists, CommitteeMethod};
pub(crate) use committee::check_committee_count;
pub use models::{build_pd_committee_ilp, build_pd_failure_ilp, PdCommitteeIlp};
pub use structured::{pd_failure_ci, pd_failure_vi};

use std::ops::ControlFlow;

use num_bigint::BigInt;

use crate::bitset::BitSet;
use crate::cohesive::{check_level, find_cohesive_group, for_each_candidate_subset, group_if_cohesive, CohesiveGroup};
use crate::election::{is_large_enough, min_group_size, satisfaction, Committee, Election, IntervalOrder, PdFunction};
use crate::error::{Error, Result};
use crate::ilp;
use crate::limits::Limits;
use crate::rational::Rational;

/// A cohesive group whose average satisfaction is below the queried threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdFailureWitness {
    pub group: CohesiveGroup,
    pub total_satisfaction: usize,
    pub average: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureMethod {
    Enumerate,
    Ilp,
    Ci(IntervalOrder),
    Vi(IntervalOrder),
}

impl FailureMethod {
    pub fn name(&self) -> &'static str {
        match self {
            FailureMethod::Enumerate => "enumerate",
            FailureMethod::Ilp => "ilp",
            FailureMethod::Ci(_) => "ci",
            FailureMethod::Vi(_) => "vi",
        }
    }
}

/// Per-voter satisfaction with `w`.
pub(crate) fn satisfactions(election: &Election, w: &Committee) -> Vec<usize> {
    (0..election.num_voters())
        .map(|v| satisfaction(election, v, w))
        .collect()
}

/// The `s` least satisfied members of `pool` (ties by voter index), returned
/// sorted by index together with their total satisfaction.
pub(crate) fn least_satisfied(sats: &[usize], pool: &BitSet, s: usize) -> Option<(usize, Vec<usize>)> {
    if pool.len() < s || s == 0 {
        return None;
    }
    let mut members: Vec<(usize, usize)> = pool.iter().map(|v| (sats[v], v)).collect();
    members.sort_unstable();
    members.truncate(s);
    let total = members.iter().map(|&(sat, _)| sat).sum();
    let mut voters: Vec<usize> = members.into_iter().map(|(_, v)| v).collect();
    voters.sort_unstable();
    Some((total, voters))
}

/// Keeps the least-total candidate group; the first one wins ties.
#[derive(Default)]
pub(crate) struct Lowest(Option<(usize, Vec<usize>)>);

impl Lowest {
    pub(crate) fn offer(&mut self, candidate: Option<(usize, Vec<usize>)>) {
        if let Some((total, voters)) = candidate {
            if self.0.as_ref().is_none_or(|(best, _)| total < *best) {
                self.0 = Some((total, voters));
            }
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self.0, Some((0, _)))
    }

    pub(crate) fn into_inner(self) -> Option<(usize, Vec<usize>)> {
        self.0
    }
}

fn check_query(w: &Committee, ell: usize, y: &Rational) -> Result<()> {
    let k = w.size();
    check_level(k, ell)?;
    if y.is_negative() || *y > Rational::from(k as i64) {
        return Err(Error::invalid(format!("threshold {y} outside [0, k={k}]")));
    }
    Ok(())
}

fn check_committee(election: &Election, w: &Committee) -> Result<()> {
    if w.mask().capacity() != election.num_candidates() {
        return Err(Error::DimensionMismatch(format!(
            "committee is over {} candidates, election has {}",
            w.mask().capacity(),
            election.num_candidates()
        )));
    }
    Ok(())
}

/// Turns the least-total size-`s` group into a witness if its average is
/// below `y`.
pub(crate) fn into_witness(
    election: &Election,
    k: usize,
    ell: usize,
    y: &Rational,
    lowest: Option<(usize, Vec<usize>)>,
) -> Option<PdFailureWitness> {
    let (total, voters) = lowest?;
    let average = Rational::new(BigInt::from(total), BigInt::from(voters.len()));
    if average >= *y {
        return None;
    }
    let group = group_if_cohesive(election, k, ell, voters).expect("search only yields cohesive groups");
    Some(PdFailureWitness {
        group,
        total_satisfaction: total,
        average,
    })
}

/// Least total satisfaction over `ℓ`-cohesive groups of size `s`, by
/// enumerating `ℓ`-subsets of candidates.
fn lowest_by_enumeration(election: &Election, sats: &[usize], k: usize, ell: usize) -> Option<(usize, Vec<usize>)> {
    let n = election.num_voters();
    let s = min_group_size(n, k, ell).ok()?;
    if s == 0 {
        return None;
    }
    let mut lowest = Lowest::default();
    let mut keep = |common: &BitSet| is_large_enough(common.len(), n, k, ell);
    for_each_candidate_subset::<()>(election, ell, &mut keep, &mut |_, common| {
        lowest.offer(least_satisfied(sats, common, s));
        if lowest.is_zero() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    lowest.into_inner()
}

fn decode_failure_ilp(
    election: &Election,
    w: &Committee,
    ell: usize,
    y: &Rational,
    limits: &Limits,
) -> Result<Option<PdFailureWitness>> {
    let model = build_pd_failure_ilp(election, w, ell, y)?;
    let Some(asg) = ilp::solve(&model, limits.ilp_nodes)? else {
        return Ok(None);
    };
    let voters: Vec<usize> = (0..election.num_voters()).filter(|&v| asg.value(v) == 1).collect();
    let total = voters.iter().map(|&v| satisfaction(election, v, w)).sum();
    let witness = into_witness(election, w.size(), ell, y, Some((total, voters)));
    debug_assert!(witness.is_some(), "a feasible failure model encodes a failing group");
    Ok(witness)
}

/// Finds an `ℓ`-cohesive group whose average satisfaction with `w` is below
/// `y`. Returned witnesses have exactly `⌈ℓn/k⌉` voters; the enumeration and
/// interval methods return the least satisfied such group (first in scan
/// order on ties), the ILP method any one.
pub fn pd_failure(
    election: &Election,
    w: &Committee,
    ell: usize,
    y: &Rational,
    method: &FailureMethod,
    limits: &Limits,
) -> Result<Option<PdFailureWitness>> {
    check_committee(election, w)?;
    check_query(w, ell, y)?;
    let k = w.size();
    match method {
        FailureMethod::Enumerate => {
            let sats = satisfactions(election, w);
            Ok(into_witness(election, k, ell, y, lowest_by_enumeration(election, &sats, k, ell)))
        }
        FailureMethod::Ilp => decode_failure_ilp(election, w, ell, y, limits),
        FailureMethod::Ci(order) => pd_failure_ci(election, order, w, ell, y),
        FailureMethod::Vi(order) => pd_failure_vi(election, order, w, ell, y),
    }
}

/// Polynomial check for a constant PD function `f ≡ x`: for each candidate
/// `c` with `|A(c)|·k ≥ n`, the `⌈n/k⌉` least satisfied approvers of `c` must
/// average at least `x`.
pub fn verify_constant_pd(election: &Election, w: &Committee, x: &Rational) -> Result<bool> {
    check_committee(election, w)?;
    check_query(w, 1, x)?;
    let n = election.num_voters();
    let k = w.size();
    let s = min_group_size(n, k, 1)?;
    let sats = satisfactions(election, w);
    let mut lowest = Lowest::default();
    for c in 0..election.num_candidates() {
        if is_large_enough(election.approvers(c).len(), n, k, 1) {
            lowest.offer(least_satisfied(&sats, election.approvers(c), s));
        }
    }
    Ok(match lowest.into_inner() {
        None => true,
        Some((total, voters)) => Rational::new(BigInt::from(total), BigInt::from(voters.len())) >= *x,
    })
}

fn check_function(w: &Committee, f: &PdFunction) -> Result<()> {
    if f.k() != w.size() {
        return Err(Error::DimensionMismatch(format!(
            "PD function has {} values for a committee of size {}",
            f.k(),
            w.size()
        )));
    }
    Ok(())
}

/// The first failure found scanning `ℓ = 1..k`, if any.
pub fn pd_counterexample(
    election: &Election,
    w: &Committee,
    f: &PdFunction,
    method: &FailureMethod,
    limits: &Limits,
) -> Result<Option<(usize, PdFailureWitness)>> {
    check_function(w, f)?;
    for ell in 1..=w.size() {
        if let Some(witness) = pd_failure(election, w, ell, f.at(ell), method, limits)? {
            return Ok(Some((ell, witness)));
        }
    }
    Ok(None)
}

/// Whether `w` has PD `f`.
pub fn pd_verification(
    election: &Election,
    w: &Committee,
    f: &PdFunction,
    method: &FailureMethod,
    limits: &Limits,
) -> Result<bool> {
    Ok(pd_counterexample(election, w, f, method, limits)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelMinimum {
    NoGroups,
    MinAverage(Rational),
}

/// `levels[ℓ − 1]` is the minimum average satisfaction over `ℓ`-cohesive
/// groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdProfile {
    pub levels: Vec<LevelMinimum>,
}

impl PdProfile {
    pub fn at(&self, ell: usize) -> &LevelMinimum {
        &self.levels[ell - 1]
    }
}

/// Exact PD profile. For each level the least total `T*` over size-`s`
/// groups is found by binary search on integer totals, asking whether some
/// group has average below `(T + 1)/s`.
pub fn pd_profile(election: &Election, w: &Committee, method: &FailureMethod, limits: &Limits) -> Result<PdProfile> {
    check_committee(election, w)?;
    let k = w.size();
    let n = election.num_voters();
    let mut levels = Vec::with_capacity(k);
    for ell in 1..=k {
        if find_cohesive_group(election, k, ell)?.is_none() {
            levels.push(LevelMinimum::NoGroups);
            continue;
        }
        let s = min_group_size(n, k, ell)?;
        // Every total is at most s·k, so the predicate holds at the top.
        let (mut lo, mut hi) = (0usize, s * k);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let threshold = Rational::new(BigInt::from(mid + 1), BigInt::from(s));
            if pd_failure(election, w, ell, &threshold, method, limits)?.is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        levels.push(LevelMinimum::MinAverage(Rational::new(BigInt::from(lo), BigInt::from(s))));
    }
    Ok(PdProfile { levels })
}
