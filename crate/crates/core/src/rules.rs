//! Exact AV, CC and PAV winners and the JR/EJR axioms.
//!
//! The three rules are Thiele rules: a committee scores `Σ_v w(|A(v) ∩ S|)`
//! with `w(t) = t` (AV), `w(t) = min(t, 1)` (CC) and `w(t) = Σ_{j ≤ t} 1/j`
//! (PAV). Scores are kept as integers scaled by `lcm(1..k)`.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::bitset::BitSet;
use crate::cohesive::for_each_candidate_subset;
use crate::combinatorics::{binomial_u128, Combinations};
use crate::election::{is_large_enough, Committee, Election};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::pd::check_committee_count;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Av,
    Cc,
    Pav,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Av => "AV",
            Rule::Cc => "CC",
            Rule::Pav => "PAV",
        }
    }

    /// `(w(0), …, w(k))` scaled by the returned common denominator.
    fn scaled_weights(self, k: usize) -> (Vec<u128>, u128) {
        match self {
            Rule::Av => ((0..=k as u128).collect(), 1),
            Rule::Cc => ((0..=k as u128).map(|t| t.min(1)).collect(), 1),
            Rule::Pav => {
                let scale = (1..=k as u128).fold(1u128, |acc, j| acc.lcm(&j));
                let mut weights = vec![0u128; k + 1];
                for t in 1..=k {
                    weights[t] = weights[t - 1] + scale / t as u128;
                }
                (weights, scale)
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All optimal committees of a rule, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleResult {
    pub rule: Rule,
    pub winners: Vec<Committee>,
    pub score: Rational,
}

/// Scores every size-`k` committee and keeps the ties at the top.
pub fn rule_winners(election: &Election, k: usize, rule: Rule, limits: &Limits) -> Result<RuleResult> {
    let m = election.num_candidates();
    check_committee_count(m, k, limits)?;
    let (weights, scale) = rule.scaled_weights(k);
    let mut best: Option<u128> = None;
    let mut winners = Vec::new();
    for members in Combinations::new(m, k) {
        let w = Committee::new(members, m)?;
        let score: u128 = election
            .ballots()
            .map(|ballot| weights[ballot.intersection_len(w.mask())])
            .sum();
        match best {
            Some(b) if score < b => {}
            Some(b) if score == b => winners.push(w),
            _ => {
                best = Some(score);
                winners = vec![w];
            }
        }
    }
    let best = best.expect("at least one committee exists when 1 ≤ k ≤ m");
    Ok(RuleResult {
        rule,
        winners,
        score: Rational::new(BigInt::from(best), BigInt::from(scale)),
    })
}

pub fn av_winners(election: &Election, k: usize, limits: &Limits) -> Result<RuleResult> {
    rule_winners(election, k, Rule::Av, limits)
}

pub fn cc_winners(election: &Election, k: usize, limits: &Limits) -> Result<RuleResult> {
    rule_winners(election, k, Rule::Cc, limits)
}

pub fn pav_winners(election: &Election, k: usize, limits: &Limits) -> Result<RuleResult> {
    rule_winners(election, k, Rule::Pav, limits)
}

fn check_size(election: &Election, k: usize, w: &Committee) -> Result<()> {
    if w.size() != k {
        return Err(Error::DimensionMismatch(format!("committee has {} members, k={k}", w.size())));
    }
    if w.mask().capacity() != election.num_candidates() {
        return Err(Error::DimensionMismatch(format!(
            "committee is over {} candidates, election has {}",
            w.mask().capacity(),
            election.num_candidates()
        )));
    }
    Ok(())
}

/// Voters approving fewer than `ell` members of `w`.
fn below(election: &Election, w: &Committee, ell: usize) -> BitSet {
    BitSet::from_indices(
        election.num_voters(),
        (0..election.num_voters()).filter(|&v| election.approvals(v).intersection_len(w.mask()) < ell),
    )
}

/// JR fails iff some candidate is approved by at least `n/k` voters none of
/// whom approves a member of `w`.
pub fn provides_jr(election: &Election, k: usize, w: &Committee) -> Result<bool> {
    check_size(election, k, w)?;
    let n = election.num_voters();
    let unrepresented = below(election, w, 1);
    Ok(!(0..election.num_candidates()).any(|c| {
        let count = election.approvers(c).intersection_len(&unrepresented);
        count > 0 && is_large_enough(count, n, k, 1)
    }))
}

/// EJR fails iff for some `ℓ` an `ℓ`-subset of candidates is commonly
/// approved by at least `ℓn/k` voters who each approve fewer than `ℓ`
/// members of `w`.
pub fn provides_ejr(election: &Election, k: usize, w: &Committee, limits: &Limits) -> Result<bool> {
    check_size(election, k, w)?;
    let n = election.num_voters();
    let m = election.num_candidates() as u128;
    let subsets = (1..=k as u128).fold(0u128, |acc, ell| acc.saturating_add(binomial_u128(m, ell)));
    if subsets > limits.max_candidate_subsets {
        return Err(Error::ResourceLimit {
            what: "candidate subsets for the EJR check",
            size: subsets,
            cap: limits.max_candidate_subsets,
        });
    }
    for ell in 1..=k {
        let poor = below(election, w, ell);
        let mut keep = |common: &BitSet| {
            let count = common.intersection_len(&poor);
            count > 0 && is_large_enough(count, n, k, ell)
        };
        if for_each_candidate_subset(election, ell, &mut keep, &mut |_, _| ControlFlow::Break(())).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
