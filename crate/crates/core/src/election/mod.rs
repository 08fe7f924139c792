//! Elections, committees, PD functions and interval orders.
//!
//! Indices are 0-based everywhere in the API. The text formats in [`format`]
//! use 1-based indices.

pub mod format;
pub mod generate;
mod pd_function;

pub use pd_function::{PdFunction, PdKind};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// An approval election with `m` candidates and `n` voters.
///
/// Both views of the approval matrix are stored: the candidates each voter
/// approves and the voters approving each candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    num_candidates: usize,
    by_voter: Vec<BitSet>,
    by_candidate: Vec<BitSet>,
}

impl Election {
    /// Builds an election from per-voter ballots of 0-based candidate indices.
    ///
    /// Empty ballots are allowed. Out-of-range or repeated indices are errors.
    pub fn new<B, I>(num_candidates: usize, ballots: B) -> Result<Self>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut by_voter = Vec::new();
        for (v, ballot) in ballots.into_iter().enumerate() {
            let mut set = BitSet::new(num_candidates);
            for c in ballot {
                if c >= num_candidates {
                    return Err(Error::invalid(format!(
                        "voter {} approves candidate index {c}, but m={num_candidates}",
                        v + 1
                    )));
                }
                if !set.insert(c) {
                    return Err(Error::invalid(format!(
                        "voter {} approves candidate {} twice",
                        v + 1,
                        c + 1
                    )));
                }
            }
            by_voter.push(set);
        }
        Ok(Self::from_voter_sets(num_candidates, by_voter))
    }

    pub(crate) fn from_voter_sets(num_candidates: usize, by_voter: Vec<BitSet>) -> Self {
        let n = by_voter.len();
        let mut by_candidate = vec![BitSet::new(n); num_candidates];
        for (v, set) in by_voter.iter().enumerate() {
            debug_assert_eq!(set.capacity(), num_candidates);
            for c in set {
                by_candidate[c].insert(v);
            }
        }
        Election {
            num_candidates,
            by_voter,
            by_candidate,
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    pub fn num_voters(&self) -> usize {
        self.by_voter.len()
    }

    /// `A(v)`: the candidates voter `v` approves.
    pub fn approvals(&self, voter: usize) -> &BitSet {
        &self.by_voter[voter]
    }

    /// `A(c)`: the voters approving candidate `c`.
    pub fn approvers(&self, candidate: usize) -> &BitSet {
        &self.by_candidate[candidate]
    }

    pub fn ballots(&self) -> impl Iterator<Item = &BitSet> {
        self.by_voter.iter()
    }

    /// Candidates approved by every voter in `voters` (all candidates if
    /// `voters` is empty).
    pub fn common_approvals<I: IntoIterator<Item = usize>>(&self, voters: I) -> BitSet {
        let mut common = BitSet::full(self.num_candidates);
        for v in voters {
            common.intersect_with(&self.by_voter[v]);
        }
        common
    }

    /// Voters approving every candidate in `candidates` (all voters if empty).
    pub fn common_approvers<I: IntoIterator<Item = usize>>(&self, candidates: I) -> BitSet {
        let mut common = BitSet::full(self.num_voters());
        for c in candidates {
            common.intersect_with(&self.by_candidate[c]);
        }
        common
    }

    /// A copy extended with `extra_voters` empty ballots and `extra_candidates`
    /// candidates nobody approves. New indices follow the existing ones.
    pub fn padded(&self, extra_voters: usize, extra_candidates: usize) -> Election {
        let m = self.num_candidates + extra_candidates;
        let mut by_voter: Vec<BitSet> = self.by_voter.iter().map(|b| b.widened(m)).collect();
        by_voter.resize(self.num_voters() + extra_voters, BitSet::new(m));
        Election::from_voter_sets(m, by_voter)
    }
}

/// A committee: a nonempty, duplicate-free set of candidates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Committee {
    members: Vec<usize>,
    mask: BitSet,
}

impl Committee {
    /// Members may be given in any order; they are stored sorted.
    pub fn new(members: impl IntoIterator<Item = usize>, num_candidates: usize) -> Result<Self> {
        let mut mask = BitSet::new(num_candidates);
        for c in members {
            if c >= num_candidates {
                return Err(Error::invalid(format!(
                    "committee member index {c} out of range for m={num_candidates}"
                )));
            }
            if !mask.insert(c) {
                return Err(Error::invalid(format!(
                    "candidate {} appears twice in committee",
                    c + 1
                )));
            }
        }
        if mask.is_empty() {
            return Err(Error::invalid("committee must have at least one member"));
        }
        Ok(Committee {
            members: mask.to_vec(),
            mask,
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub fn contains(&self, candidate: usize) -> bool {
        self.mask.contains(candidate)
    }

    /// 1-based member list, space separated.
    pub fn to_one_based_string(&self) -> String {
        self.members
            .iter()
            .map(|c| (c + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `|A(voter) ∩ W|`.
pub fn satisfaction(election: &Election, voter: usize, committee: &Committee) -> usize {
    election.approvals(voter).intersection_len(committee.mask())
}

/// `⌈ℓ·n/k⌉`, the least group size `s` with `s·k ≥ ℓ·n`.
pub fn min_group_size(n: usize, k: usize, ell: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::invalid("committee size k must be positive"));
    }
    let (n, k, ell) = (n as u128, k as u128, ell as u128);
    Ok((ell * n).div_ceil(k) as usize)
}

/// `size·k ≥ ℓ·n` in exact integer arithmetic.
pub(crate) fn is_large_enough(size: usize, n: usize, k: usize, ell: usize) -> bool {
    size as u128 * k as u128 >= ell as u128 * n as u128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Candidate interval: every ballot is contiguous in a candidate order.
    Ci,
    /// Voter interval: every approver set is contiguous in a voter order.
    Vi,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Ci => "CI",
            OrderKind::Vi => "VI",
        }
    }
}

/// An order of candidates (CI) or voters (VI).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalOrder {
    kind: OrderKind,
    order: Vec<usize>,
}

impl IntervalOrder {
    /// `order[p]` is the element at position `p`. Must be a permutation of
    /// `0..order.len()`.
    pub fn new(kind: OrderKind, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &x in &order {
            if x >= order.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid(format!(
                    "{} order is not a permutation of 1..{}",
                    kind.name(),
                    order.len()
                )));
            }
        }
        Ok(IntervalOrder { kind, order })
    }

    pub fn identity(kind: OrderKind, len: usize) -> Self {
        IntervalOrder {
            kind,
            order: (0..len).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `positions()[x]` is the position of element `x`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &x) in self.order.iter().enumerate() {
            pos[x] = p;
        }
        pos
    }

    /// The same order followed by `extra` new elements in index order.
    pub fn extended(&self, extra: usize) -> IntervalOrder {
        let len = self.order.len();
        let mut order = self.order.clone();
        order.extend(len..len + extra);
        IntervalOrder {
            kind: self.kind,
            order,
        }
    }

    fn expected_len(&self, election: &Election) -> usize {
        match self.kind {
            OrderKind::Ci => election.num_candidates(),
            OrderKind::Vi => election.num_voters(),
        }
    }
}

/// Checks that every ballot (CI) or every approver set (VI) is an interval of
/// the given order.
pub fn verify_interval_order(election: &Election, order: &IntervalOrder) -> Result<bool> {
    let expected = order.expected_len(election);
    if order.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "{} order has {} entries, election needs {expected}",
            order.kind().name(),
            order.len()
        )));
    }
    let pos = order.positions();
    let contiguous = |set: &crate::bitset::BitSet| {
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut count = 0;
        for x in set {
            lo = lo.min(pos[x]);
            hi = hi.max(pos[x]);
            count += 1;
        }
        count == 0 || hi - lo + 1 == count
    };
    Ok(match order.kind() {
        OrderKind::Ci => election.ballots().all(contiguous),
        OrderKind::Vi => (0..election.num_candidates()).all(|c| contiguous(election.approvers(c))),
    })
}

/// Fails with [`Error::UnverifiedOrder`] unless `order` has the expected kind
/// and makes `election` an interval election.
pub(crate) fn require_order(
    election: &Election,
    order: &IntervalOrder,
    kind: OrderKind,
) -> Result<()> {
    if order.kind() != kind {
        return Err(Error::invalid(format!(
            "expected a {} order, got a {} order",
            kind.name(),
            order.kind().name()
        )));
    }
    if !verify_interval_order(election, order)? {
        return Err(Error::UnverifiedOrder(kind.name()));
    }
    Ok(())
}

/// The 15-voter, 7-candidate election that is both CI and VI but admits no
/// committee of size 5 with perfect (or even unit) PD.
///
/// Candidate `c_i` is approved by voters `v_{2i-1}, v_{2i}, v_{2i+1}`
/// (1-based).
pub fn example_election() -> Election {
    let mut ballots = vec![Vec::new(); 15];
    for c in 0..7 {
        for ballot in &mut ballots[2 * c..2 * c + 3] {
            ballot.push(c);
        }
    }
    Election::new(7, ballots).expect("static election is valid")
}
