use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::Zero;

use super::check_level;
use crate::bitset::BitSet;
use crate::combinatorics::Binomials;
use crate::election::{min_group_size, require_order, Election, IntervalOrder, OrderKind};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountMethod {
    /// Enumerate voter subsets.
    Brute,
    /// Signed sum over candidate subsets.
    InclusionExclusion,
    /// Polynomial counting for a candidate-interval order.
    Ci(IntervalOrder),
    /// Polynomial counting for a voter-interval order.
    Vi(IntervalOrder),
}

impl CountMethod {
    pub fn tag(&self) -> MethodTag {
        match self {
            CountMethod::Brute => MethodTag::Brute,
            CountMethod::InclusionExclusion => MethodTag::InclusionExclusion,
            CountMethod::Ci(_) => MethodTag::Ci,
            CountMethod::Vi(_) => MethodTag::Vi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    Brute,
    InclusionExclusion,
    Ci,
    Vi,
}

impl MethodTag {
    pub fn name(self) -> &'static str {
        match self {
            MethodTag::Brute => "brute",
            MethodTag::InclusionExclusion => "inclusion_exclusion",
            MethodTag::Ci => "ci",
            MethodTag::Vi => "vi",
        }
    }
}

/// An exact number of cohesive groups and the method that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCount {
    pub value: BigUint,
    pub method: MethodTag,
}

/// Number of `ℓ`-cohesive groups of any size.
pub fn count_groups(
    election: &Election,
    k: usize,
    ell: usize,
    method: &CountMethod,
    limits: &Limits,
) -> Result<GroupCount> {
    check_level(k, ell)?;
    let n = election.num_voters();
    let lo = min_group_size(n, k, ell)?.max(1);
    count_sizes(election, k, ell, lo..=n, method, limits)
}

/// Number of `ℓ`-cohesive groups with exactly `x` voters.
pub fn count_fixed_size(
    election: &Election,
    k: usize,
    ell: usize,
    x: usize,
    method: &CountMethod,
    limits: &Limits,
) -> Result<GroupCount> {
    check_level(k, ell)?;
    if x == 0 {
        return Err(Error::invalid("group size x must be positive"));
    }
    count_sizes(election, k, ell, x..=x, method, limits)
}

/// Counts `ℓ`-cohesive groups whose size lies in `sizes`. Sizes below the
/// cohesiveness bound are dropped before dispatch.
fn count_sizes(
    election: &Election,
    k: usize,
    ell: usize,
    sizes: RangeInclusive<usize>,
    method: &CountMethod,
    limits: &Limits,
) -> Result<GroupCount> {
    let n = election.num_voters();
    let lo = (*sizes.start()).max(min_group_size(n, k, ell)?).max(1);
    let hi = (*sizes.end()).min(n);
    let value = match method {
        CountMethod::Ci(order) => {
            require_order(election, order, OrderKind::Ci)?;
            if lo > hi {
                BigUint::zero()
            } else {
                ci_count(election, order, ell, lo..=hi)
            }
        }
        CountMethod::Vi(order) => {
            require_order(election, order, OrderKind::Vi)?;
            if lo > hi {
                BigUint::zero()
            } else {
                vi_count(election, order, ell, lo..=hi)
            }
        }
        _ if lo > hi => BigUint::zero(),
        CountMethod::Brute => brute_count(election, ell, lo..=hi, limits)?,
        CountMethod::InclusionExclusion => ie_count(election, ell, lo..=hi, limits)?,
    };
    Ok(GroupCount {
        value,
        method: method.tag(),
    })
}

/// Largest approver set size; no group can be bigger.
fn max_approval_score(election: &Election) -> usize {
    (0..election.num_candidates())
        .map(|c| election.approvers(c).len())
        .max()
        .unwrap_or(0)
}

fn brute_count(
    election: &Election,
    ell: usize,
    sizes: RangeInclusive<usize>,
    limits: &Limits,
) -> Result<BigUint> {
    // A voter approving fewer than ℓ candidates is never in a group.
    let active: Vec<usize> = (0..election.num_voters())
        .filter(|&v| election.approvals(v).len() >= ell)
        .collect();
    if active.len() > limits.brute_voters {
        return Err(Error::ResourceLimit {
            what: "voters considered by brute-force counting",
            size: active.len() as u128,
            cap: limits.brute_voters as u128,
        });
    }

    struct Walk<'a> {
        election: &'a Election,
        active: &'a [usize],
        ell: usize,
        lo: usize,
        hi: usize,
        count: u128,
    }

    impl Walk<'_> {
        fn rec(&mut self, from: usize, size: usize, common: &BitSet) {
            for i in from..self.active.len() {
                let next = common.intersection(self.election.approvals(self.active[i]));
                if next.len() < self.ell {
                    continue;
                }
                if size + 1 >= self.lo {
                    self.count += 1;
                }
                if size + 1 < self.hi {
                    self.rec(i + 1, size + 1, &next);
                }
            }
        }
    }

    let mut walk = Walk {
        election,
        active: &active,
        ell,
        lo: *sizes.start(),
        hi: *sizes.end(),
        count: 0,
    };
    walk.rec(0, 0, &BitSet::full(election.num_candidates()));
    Ok(BigUint::from(walk.count))
}

/// Inclusion–exclusion over candidate subsets `T`.
///
/// For a voter set `X` let `C(X)` be the candidates all members approve. With
/// `coef(t) = (−1)^(t−ℓ)·C(t−1, ℓ−1)` for `t ≥ ℓ` (zero below `ℓ`) we have
/// `Σ_{T ⊆ U} coef(|T|) = [|U| ≥ ℓ]` for every set `U`, hence
///
/// `#groups = Σ_X [|C(X)| ≥ ℓ] = Σ_T coef(|T|) · #{X ⊆ A(T) : |X| ∈ sizes}`
///
/// where `A(T)` is the set of common approvers of `T`. The inner count is a
/// binomial tail. Subsets whose common approvers are already too few for the
/// smallest admissible size contribute zero and are pruned with all their
/// supersets.
fn ie_count(
    election: &Election,
    ell: usize,
    sizes: RangeInclusive<usize>,
    limits: &Limits,
) -> Result<BigUint> {
    let (lo, hi) = (*sizes.start(), *sizes.end());
    let active: Vec<usize> = (0..election.num_candidates())
        .filter(|&c| election.approvers(c).len() >= lo)
        .collect();
    if active.len() > limits.ie_candidates {
        return Err(Error::ResourceLimit {
            what: "candidates considered by inclusion-exclusion counting",
            size: active.len() as u128,
            cap: limits.ie_candidates as u128,
        });
    }
    let max_a = max_approval_score(election);
    let binom = Binomials::new(max_a.max(active.len()));
    // ways[a] = number of voter sets of admissible size inside a set of a voters
    let ways: Vec<BigUint> = (0..=max_a)
        .map(|a| (lo..=hi.min(a)).map(|x| binom.get(a, x)).sum())
        .collect();

    struct Walk<'a> {
        election: &'a Election,
        active: &'a [usize],
        ell: usize,
        lo: usize,
        binom: &'a Binomials,
        ways: &'a [BigUint],
        plus: BigUint,
        minus: BigUint,
    }

    impl Walk<'_> {
        fn rec(&mut self, from: usize, t: usize, common: &BitSet) {
            for i in from..self.active.len() {
                let next = common.intersection(self.election.approvers(self.active[i]));
                let a = next.len();
                if a < self.lo {
                    continue;
                }
                let t = t + 1;
                if t >= self.ell {
                    let term = self.binom.get(t - 1, self.ell - 1) * &self.ways[a];
                    if (t - self.ell).is_multiple_of(2) {
                        self.plus += term;
                    } else {
                        self.minus += term;
                    }
                }
                self.rec(i + 1, t, &next);
            }
        }
    }

    let mut walk = Walk {
        election,
        active: &active,
        ell,
        lo,
        binom: &binom,
        ways: &ways,
        plus: BigUint::zero(),
        minus: BigUint::zero(),
    };
    walk.rec(0, 0, &BitSet::full(election.num_voters()));
    assert!(walk.plus >= walk.minus, "inclusion-exclusion produced a negative count");
    Ok(walk.plus - walk.minus)
}

/// For each window start `j` of `ℓ` consecutive candidates in the CI order,
/// `(|L1|, |L2|)`: common approvers of the window that do / do not approve
/// some candidate placed before `j`.
fn ci_windows(election: &Election, order: &IntervalOrder, ell: usize) -> Vec<(usize, usize)> {
    let m = election.num_candidates();
    let n = election.num_voters();
    let pos = order.order();
    let mut before = BitSet::new(n);
    let mut out = Vec::new();
    for j in 0..m {
        if j + ell <= m {
            let window = election.common_approvers(pos[j..j + ell].iter().copied());
            let l1 = window.intersection_len(&before);
            out.push((l1, window.len() - l1));
        }
        before.union_with(election.approvers(pos[j]));
    }
    out
}

fn ci_count(
    election: &Election,
    order: &IntervalOrder,
    ell: usize,
    sizes: RangeInclusive<usize>,
) -> BigUint {
    let windows = ci_windows(election, order, ell);
    let hi = (*sizes.end()).min(max_approval_score(election));
    let binom = Binomials::new(max_approval_score(election));
    let mut total = BigUint::zero();
    for x in *sizes.start()..=hi {
        for &(l1, l2) in &windows {
            for t in 1..=l2.min(x) {
                if x - t <= l1 {
                    total += binom.get(l2, t) * binom.get(l1, x - t);
                }
            }
        }
    }
    total
}

/// Number of `ℓ`-cohesive groups of size `x` in a CI election, as the sum over
/// candidates `c_j` of the groups whose smallest commonly approved candidate
/// is `c_j`.
pub fn count_fscg_ci(
    election: &Election,
    order: &IntervalOrder,
    k: usize,
    ell: usize,
    x: usize,
) -> Result<GroupCount> {
    count_fixed_size(election, k, ell, x, &CountMethod::Ci(order.clone()), &Limits::default())
}

/// For each voter position `i` in the VI order, the length of the window
/// `v_i..v_j` where `j` is the last voter sharing at least `ℓ` candidates with
/// `v_i`; zero if `v_i` approves fewer than `ℓ` candidates.
fn vi_windows(election: &Election, order: &IntervalOrder, ell: usize) -> Vec<usize> {
    let pos = order.order();
    let n = pos.len();
    (0..n)
        .map(|i| {
            let first = election.approvals(pos[i]);
            if first.len() < ell {
                return 0;
            }
            // Under VI, the voters sharing ≥ ℓ candidates with v_i that come
            // after it form a contiguous run starting at v_i.
            let mut j = i;
            while j + 1 < n && first.intersection_len(election.approvals(pos[j + 1])) >= ell {
                j += 1;
            }
            j - i + 1
        })
        .collect()
}

fn vi_count(
    election: &Election,
    order: &IntervalOrder,
    ell: usize,
    sizes: RangeInclusive<usize>,
) -> BigUint {
    let windows = vi_windows(election, order, ell);
    let longest = windows.iter().copied().max().unwrap_or(0);
    let binom = Binomials::new(longest);
    let mut total = BigUint::zero();
    for x in *sizes.start()..=(*sizes.end()).min(longest) {
        for &w in &windows {
            if w >= x {
                total += binom.get(w - 1, x - 1);
            }
        }
    }
    total
}

/// Number of `ℓ`-cohesive groups of size `x` in a VI election, as the sum over
/// voters `v_i` of the groups whose first member in the order is `v_i`.
pub fn count_fscg_vi(
    election: &Election,
    order: &IntervalOrder,
    k: usize,
    ell: usize,
    x: usize,
) -> Result<GroupCount> {
    count_fixed_size(election, k, ell, x, &CountMethod::Vi(order.clone()), &Limits::default())
}
