//! Cohesive voter groups: membership tests, search and exact counting.
//!
//! A voter set `X` is `ℓ`-cohesive for committee size `k` when
//! `|X|·k ≥ ℓ·n` and the members commonly approve at least `ℓ` candidates.

mod count;
mod reduce;

pub use count::{
    count_fixed_size, count_fscg_ci, count_fscg_vi, count_groups, CountMethod, GroupCount,
    MethodTag,
};
pub use reduce::{
    reduce_counting_to_fscg, reduce_fscg_to_counting, setcover_election, SetCoverElection,
};

use std::ops::ControlFlow;

use crate::bitset::BitSet;
use crate::election::{is_large_enough, Election};
use crate::error::{Error, Result};

/// An `ℓ`-cohesive voter group together with the candidates its members
/// commonly approve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohesiveGroup {
    pub level: usize,
    /// Sorted voter indices.
    pub voters: Vec<usize>,
    /// All candidates approved by every member; at least `level` of them.
    pub witness: Vec<usize>,
}

impl CohesiveGroup {
    pub fn size(&self) -> usize {
        self.voters.len()
    }
}

pub(crate) fn check_level(k: usize, ell: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("committee size k must be positive"));
    }
    if ell == 0 || ell > k {
        return Err(Error::invalid(format!(
            "cohesiveness level {ell} outside [1, k={k}]"
        )));
    }
    Ok(())
}

/// Builds the group for `voters` if it is `ℓ`-cohesive. Callers guarantee
/// valid, sorted, nonempty `voters`.
pub(crate) fn group_if_cohesive(
    election: &Election,
    k: usize,
    ell: usize,
    voters: Vec<usize>,
) -> Option<CohesiveGroup> {
    if voters.is_empty() || !is_large_enough(voters.len(), election.num_voters(), k, ell) {
        return None;
    }
    let common = election.common_approvals(voters.iter().copied());
    (common.len() >= ell).then(|| CohesiveGroup {
        level: ell,
        voters,
        witness: common.to_vec(),
    })
}

/// Returns the group if `voters` is `ℓ`-cohesive, `None` otherwise.
pub fn is_cohesive(
    election: &Election,
    k: usize,
    ell: usize,
    voters: &[usize],
) -> Result<Option<CohesiveGroup>> {
    check_level(k, ell)?;
    if voters.is_empty() {
        return Err(Error::invalid("voter set must be nonempty"));
    }
    let mut sorted = voters.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != voters.len() {
        return Err(Error::invalid("voter set contains duplicates"));
    }
    if let Some(&v) = sorted.iter().find(|&&v| v >= election.num_voters()) {
        return Err(Error::invalid(format!("voter index {v} out of range")));
    }
    Ok(group_if_cohesive(election, k, ell, sorted))
}

/// Visits the size-`size` candidate subsets in lexicographic order together
/// with their common approvers. Any prefix whose common approvers fail `keep`
/// is not extended, so `keep` must be monotone: if it rejects a voter set it
/// rejects every subset of it.
pub(crate) fn for_each_candidate_subset<B>(
    election: &Election,
    size: usize,
    keep: &mut dyn FnMut(&BitSet) -> bool,
    visit: &mut dyn FnMut(&[usize], &BitSet) -> ControlFlow<B>,
) -> Option<B> {
    fn rec<B>(
        election: &Election,
        size: usize,
        start: usize,
        stack: &mut [BitSet],
        chosen: &mut Vec<usize>,
        keep: &mut dyn FnMut(&BitSet) -> bool,
        visit: &mut dyn FnMut(&[usize], &BitSet) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let depth = chosen.len();
        if depth == size {
            return visit(chosen, &stack[depth]);
        }
        let m = election.num_candidates();
        for c in start..=m - (size - depth) {
            let (head, tail) = stack.split_at_mut(depth + 1);
            tail[0].assign_intersection(&head[depth], election.approvers(c));
            if keep(&tail[0]) {
                chosen.push(c);
                rec(election, size, c + 1, stack, chosen, keep, visit)?;
                chosen.pop();
            }
        }
        ControlFlow::Continue(())
    }

    if size > election.num_candidates() {
        return None;
    }
    let mut stack = vec![BitSet::full(election.num_voters()); size + 1];
    let mut chosen = Vec::with_capacity(size);
    match rec(election, size, 0, &mut stack, &mut chosen, keep, visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

/// Searches `ℓ`-subsets `R` of candidates in lexicographic order; the first
/// `R` with enough common approvers yields the group of all of them.
pub fn find_cohesive_group(
    election: &Election,
    k: usize,
    ell: usize,
) -> Result<Option<CohesiveGroup>> {
    check_level(k, ell)?;
    let n = election.num_voters();
    if n == 0 {
        return Ok(None);
    }
    let mut keep = |common: &BitSet| is_large_enough(common.len(), n, k, ell);
    Ok(for_each_candidate_subset(
        election,
        ell,
        &mut keep,
        &mut |_, common| {
            ControlFlow::Break(
                group_if_cohesive(election, k, ell, common.to_vec())
                    .expect("common approvers of an ℓ-set of candidates are ℓ-cohesive"),
            )
        },
    ))
}

/// Polynomial test for 1-cohesive groups: the first candidate `c` with
/// `|A(c)|·k ≥ n` yields the group `A(c)` with witness `{c}`.
pub fn find_one_cohesive_group_poly(election: &Election, k: usize) -> Result<Option<CohesiveGroup>> {
    check_level(k, 1)?;
    let n = election.num_voters();
    Ok((0..election.num_candidates())
        .find(|&c| {
            let a = election.approvers(c).len();
            a > 0 && is_large_enough(a, n, k, 1)
        })
        .map(|c| CohesiveGroup {
            level: 1,
            voters: election.approvers(c).to_vec(),
            witness: vec![c],
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::generate::{generate_election, Model};
    use crate::election::example_election;

    /// Existence of an ℓ-cohesive group by looking at every voter subset.
    fn exists_by_voter_subsets(e: &Election, k: usize, ell: usize) -> bool {
        let n = e.num_voters();
        (1u32..1 << n).any(|mask| {
            let voters: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            is_large_enough(voters.len(), n, k, ell)
                && e.common_approvals(voters.iter().copied()).len() >= ell
        })
    }

    #[test]
    fn example_triples() {
        let e = example_election();
        let g = is_cohesive(&e, 5, 1, &[0, 1, 2]).unwrap().unwrap();
        assert_eq!(g.witness, vec![0]);
        assert!(is_cohesive(&e, 5, 1, &[0, 3]).unwrap().is_none());
        assert!(is_cohesive(&e, 1, 2, &[0]).is_err());
        assert!(is_cohesive(&e, 5, 1, &[]).is_err());
        assert!(is_cohesive(&e, 5, 1, &[15]).is_err());
    }

    #[test]
    fn single_voter_when_k_equals_n() {
        let e = Election::new(3, vec![vec![1], vec![], vec![0, 2]]).unwrap();
        assert!(is_cohesive(&e, 3, 1, &[0]).unwrap().is_some());
        assert!(is_cohesive(&e, 3, 1, &[1]).unwrap().is_none());
    }

    #[test]
    fn find_in_example() {
        let e = example_election();
        let g = find_cohesive_group(&e, 5, 1).unwrap().unwrap();
        assert_eq!(g.voters, vec![0, 1, 2]);
        assert_eq!(g.witness, vec![0]);
        assert!(find_cohesive_group(&e, 5, 2).unwrap().is_none());
        let tiny = Election::new(1, vec![vec![0]]).unwrap();
        assert_eq!(find_cohesive_group(&tiny, 1, 1).unwrap().unwrap().voters, vec![0]);
    }

    #[test]
    fn poly_in_example() {
        let e = example_election();
        let g = find_one_cohesive_group_poly(&e, 5).unwrap().unwrap();
        assert_eq!(g.voters, vec![0, 1, 2]);
        let nobody = Election::new(3, vec![Vec::<usize>::new(); 4]).unwrap();
        assert!(find_one_cohesive_group_poly(&nobody, 2).unwrap().is_none());
    }

    #[test]
    fn poly_agrees_with_voter_subsets_seed_13() {
        let g = generate_election(8, 10, Model::Impartial { p: 0.3 }, 13).unwrap();
        let e = &g.election;
        assert_eq!(
            find_one_cohesive_group_poly(e, 3).unwrap().is_some(),
            exists_by_voter_subsets(e, 3, 1)
        );
    }

    #[test]
    fn find_agrees_with_voter_subsets() {
        for seed in 0..40 {
            let g = generate_election(6, 9, Model::Impartial { p: 0.5 }, seed).unwrap();
            for k in 1..=4 {
                for ell in 1..=k {
                    let found = find_cohesive_group(&g.election, k, ell).unwrap();
                    assert_eq!(found.is_some(), exists_by_voter_subsets(&g.election, k, ell));
                    if let Some(grp) = found {
                        assert!(is_cohesive(&g.election, k, ell, &grp.voters).unwrap().is_some());
                    }
                }
            }
        }
    }
}
