//! Polynomial PD-failure search for candidate-interval and voter-interval
//! elections.

use super::{check_committee, check_query, into_witness, least_satisfied, satisfactions, Lowest, PdFailureWitness};
use crate::bitset::BitSet;
use crate::election::{min_group_size, require_order, Committee, Election, IntervalOrder, OrderKind};
use crate::error::Result;
use crate::rational::Rational;

/// Under CI, a group's common approvals form an interval of the order, so
/// every `ℓ`-cohesive group commonly approves some window of `ℓ` consecutive
/// candidates. For each window the `s` least satisfied common approvers are
/// tested.
pub fn pd_failure_ci(
    election: &Election,
    order: &IntervalOrder,
    w: &Committee,
    ell: usize,
    y: &Rational,
) -> Result<Option<PdFailureWitness>> {
    check_committee(election, w)?;
    check_query(w, ell, y)?;
    require_order(election, order, OrderKind::Ci)?;
    let k = w.size();
    let s = min_group_size(election.num_voters(), k, ell)?;
    let sats = satisfactions(election, w);
    let pos = order.order();
    let mut lowest = Lowest::default();
    for window in pos.windows(ell) {
        let common = election.common_approvers(window.iter().copied());
        lowest.offer(least_satisfied(&sats, &common, s));
    }
    Ok(into_witness(election, k, ell, y, lowest.into_inner()))
}

/// Under VI, the voters after `v_i` sharing at least `ℓ` candidates with it
/// form a contiguous run `v_i..v_j`, and all of them commonly approve
/// `A(v_i) ∩ A(v_j)`. Every cohesive group lies in the run of its first
/// member.
pub fn pd_failure_vi(
    election: &Election,
    order: &IntervalOrder,
    w: &Committee,
    ell: usize,
    y: &Rational,
) -> Result<Option<PdFailureWitness>> {
    check_committee(election, w)?;
    check_query(w, ell, y)?;
    require_order(election, order, OrderKind::Vi)?;
    let n = election.num_voters();
    let k = w.size();
    let s = min_group_size(n, k, ell)?;
    let sats = satisfactions(election, w);
    let pos = order.order();
    let mut lowest = Lowest::default();
    for i in 0..n.saturating_sub(s.saturating_sub(1)) {
        let first = election.approvals(pos[i]);
        if first.len() < ell {
            continue;
        }
        let mut run = BitSet::new(n);
        run.insert(pos[i]);
        for &v in &pos[i + 1..] {
            if first.intersection_len(election.approvals(v)) < ell {
                break;
            }
            run.insert(v);
        }
        lowest.offer(least_satisfied(&sats, &run, s));
    }
    Ok(into_witness(election, k, ell, y, lowest.into_inner()))
}
