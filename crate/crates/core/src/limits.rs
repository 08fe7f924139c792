/// Search caps shared by the exponential-time routines.
///
/// Caps are measured on the part of the instance that can actually take part
/// in a cohesive group: voters approving at least `ℓ` candidates for the
/// voter-subset enumeration, and candidates with enough approvers for the
/// candidate-subset enumeration. Padding voters and candidates (as produced by
/// the counting reductions) never count against a cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of active voters for voter-subset enumeration.
    pub brute_voters: usize,
    /// Maximum number of active candidates for inclusion–exclusion counting.
    pub ie_candidates: usize,
    /// Maximum number of size-`k` committees an exhaustive scan may visit.
    pub max_committees: u128,
    /// Maximum number of candidate subsets an EJR check may consider.
    pub max_candidate_subsets: u128,
    /// Maximum number of voters for the voter-type PD-committee ILP.
    pub voter_type_voters: usize,
    /// Maximum number of branch-and-bound nodes per ILP solve.
    pub ilp_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_voters: 22,
            ie_candidates: 22,
            max_committees: 5_000_000,
            max_candidate_subsets: 50_000_000,
            voter_type_voters: 16,
            ilp_nodes: 20_000_000,
        }
    }
}
