use super::{models::build_pd_committee_ilp, pd_verification, FailureMethod};
use crate::combinatorics::{binomial_u128, Combinations};
use crate::election::{Committee, Election, PdFunction};
use crate::error::{Error, Result};
use crate::ilp;
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommitteeMethod {
    Exhaustive,
    IlpVoterTypes,
}

impl CommitteeMethod {
    pub fn name(self) -> &'static str {
        match self {
            CommitteeMethod::Exhaustive => "exhaustive",
            CommitteeMethod::IlpVoterTypes => "ilp_voter_types",
        }
    }
}

pub(crate) fn check_committee_count(m: usize, k: usize, limits: &Limits) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::invalid(format!("committee size {k} outside [1, m={m}]")));
    }
    let count = binomial_u128(m as u128, k as u128);
    if count > limits.max_committees {
        return Err(Error::ResourceLimit {
            what: "number of size-k committees",
            size: count,
            cap: limits.max_committees,
        });
    }
    Ok(())
}

/// A size-`k` committee with PD `f`, if one exists. The exhaustive method
/// returns the lexicographically first one.
pub fn pd_committee_exists(
    election: &Election,
    k: usize,
    f: &PdFunction,
    method: CommitteeMethod,
    limits: &Limits,
) -> Result<Option<Committee>> {
    let m = election.num_candidates();
    if f.k() != k {
        return Err(Error::DimensionMismatch(format!("PD function has {} values for k={k}", f.k())));
    }
    match method {
        CommitteeMethod::Exhaustive => {
            check_committee_count(m, k, limits)?;
            for members in Combinations::new(m, k) {
                let w = Committee::new(members, m)?;
                if pd_verification(election, &w, f, &FailureMethod::Enumerate, limits)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
        CommitteeMethod::IlpVoterTypes => {
            let built = build_pd_committee_ilp(election, k, f, limits)?;
            match ilp::solve(&built.model, limits.ilp_nodes)? {
                Some(asg) => Ok(Some(built.decode(&asg, m)?)),
                None => Ok(None),
            }
        }
    }
}
