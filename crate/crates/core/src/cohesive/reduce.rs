//! Reductions between counting all cohesive groups and counting groups of a
//! fixed size, and the set-cover election used to show that counting
//! 1-cohesive groups is hard.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{check_level, count_fixed_size, count_groups, CountMethod, GroupCount};
use crate::combinatorics::Binomials;
use crate::election::{is_large_enough, min_group_size, Election};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Counts all `ℓ`-cohesive groups as `Σ_{x=⌈ℓn/k⌉}^{n}` of fixed-size counts.
pub fn reduce_counting_to_fscg(
    election: &Election,
    k: usize,
    ell: usize,
    method: &CountMethod,
    limits: &Limits,
) -> Result<GroupCount> {
    check_level(k, ell)?;
    let n = election.num_voters();
    let lo = min_group_size(n, k, ell)?.max(1);
    let mut value = BigUint::zero();
    for x in lo..=n {
        value += count_fixed_size(election, k, ell, x, method, limits)?.value;
    }
    Ok(GroupCount {
        value,
        method: method.tag(),
    })
}

/// Counts `ℓ`-cohesive groups of exactly `x` voters with two calls to the
/// all-sizes counter on a padded election.
///
/// The padded election has `n' = n·x·(x+1)` voters and `m' = n'·m`
/// candidates; the new ones approve / are approved by nobody. With
/// `k'₁ = ℓ·n·x` the minimum group size becomes `x + 1`, and with
/// `k'₂ = ℓ·n·(x+1)` it becomes `x`, so the answer is
/// `count(E', k'₂) − count(E', k'₁)`.
///
/// Returns zero outside `ℓ·n/k ≤ x ≤ n`, `1 ≤ ℓ ≤ m`.
pub fn reduce_fscg_to_counting(
    election: &Election,
    k: usize,
    ell: usize,
    x: usize,
    method: &CountMethod,
    limits: &Limits,
) -> Result<GroupCount> {
    check_level(k, ell)?;
    let n = election.num_voters();
    let m = election.num_candidates();
    let zero = GroupCount {
        value: BigUint::zero(),
        method: method.tag(),
    };
    if x == 0 || x > n || !is_large_enough(x, n, k, ell) || ell > m {
        return Ok(zero);
    }
    let n_pad = n
        .checked_mul(x)
        .and_then(|v| v.checked_mul(x + 1))
        .ok_or_else(|| Error::invalid("padded election is too large"))?;
    let m_pad = n_pad
        .checked_mul(m)
        .ok_or_else(|| Error::invalid("padded election is too large"))?;
    let padded = election.padded(n_pad - n, m_pad - m);
    let padded_method = match method {
        CountMethod::Ci(order) => CountMethod::Ci(order.extended(m_pad - m)),
        CountMethod::Vi(order) => CountMethod::Vi(order.extended(n_pad - n)),
        other => other.clone(),
    };
    let k1 = ell * n * x;
    let k2 = ell * n * (x + 1);
    let at_least_x = count_groups(&padded, k2, ell, &padded_method, limits)?.value;
    let more_than_x = count_groups(&padded, k1, ell, &padded_method, limits)?.value;
    let diff = BigInt::from(at_least_x) - BigInt::from(more_than_x);
    Ok(GroupCount {
        value: diff
            .to_biguint()
            .expect("groups of size ≥ x+1 are a subset of groups of size ≥ x"),
        method: method.tag(),
    })
}

/// The complement-membership election of a set family: candidates are the
/// universe elements (plus unapproved padding), voters are the sets, and voter
/// `S_j` approves element `u_i` iff `u_i ∉ S_j`. The committee size equals the
/// number of sets, so every voter set with a common candidate is 1-cohesive,
/// and a subfamily fails to cover the universe iff its voters are 1-cohesive.
#[derive(Debug, Clone)]
pub struct SetCoverElection {
    pub election: Election,
    pub committee_size: usize,
    pub universe_size: usize,
}

pub fn setcover_election(universe_size: usize, sets: &[Vec<usize>]) -> Result<SetCoverElection> {
    if sets.is_empty() {
        return Err(Error::invalid("set family must be nonempty"));
    }
    let num_sets = sets.len();
    let m = universe_size + num_sets.saturating_sub(universe_size);
    let mut ballots = Vec::with_capacity(num_sets);
    for (j, set) in sets.iter().enumerate() {
        let mut member = vec![false; universe_size];
        for &u in set {
            if u >= universe_size {
                return Err(Error::invalid(format!(
                    "set {} contains element {} outside a universe of {universe_size}",
                    j + 1,
                    u + 1
                )));
            }
            member[u] = true;
        }
        ballots.push((0..universe_size).filter(|&u| !member[u]).collect::<Vec<_>>());
    }
    Ok(SetCoverElection {
        election: Election::new(m, ballots)?,
        committee_size: num_sets,
        universe_size,
    })
}

impl SetCoverElection {
    pub fn num_sets(&self) -> usize {
        self.committee_size
    }

    /// Number of subfamilies of at most `max_sets` sets that cover the
    /// universe: `Σ_{x=1}^{K} (C(|S|, x) − #1-cohesive groups of size x)`.
    pub fn count_covers_at_most(
        &self,
        max_sets: usize,
        method: &CountMethod,
        limits: &Limits,
    ) -> Result<BigUint> {
        let s = self.num_sets();
        let binom = Binomials::new(s);
        let mut total = BigInt::zero();
        for x in 1..=max_sets.min(s) {
            let groups = count_fixed_size(&self.election, s, 1, x, method, limits)?.value;
            total += BigInt::from(binom.get(s, x)) - BigInt::from(groups);
        }
        Ok(total.to_biguint().expect("cover counts are nonnegative"))
    }
}
