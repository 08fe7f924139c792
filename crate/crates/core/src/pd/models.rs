//! Integer programs for PD failure and PD committee search.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{check_committee, check_query, satisfactions};
use crate::bitset::BitSet;
use crate::cohesive::check_level;
use crate::election::{is_large_enough, min_group_size, Committee, Election, PdFunction};
use crate::error::{Error, Result};
use crate::ilp::{Assignment, IlpModel, Relation};
use crate::limits::Limits;
use crate::rational::Rational;

fn to_i64(value: &BigInt, what: &str) -> Result<i64> {
    value
        .to_i64()
        .ok_or_else(|| Error::invalid(format!("{what} {value} does not fit a 64-bit coefficient")))
}

/// Selects `s` voters (`v1..vn`) and at least `ℓ` candidates (`c1..cm`) all
/// of them approve, with total satisfaction strictly below `s·y`. Variable
/// `i < n` is voter `i`; variable `n + j` is candidate `j`.
pub fn build_pd_failure_ilp(election: &Election, w: &Committee, ell: usize, y: &Rational) -> Result<IlpModel> {
    check_committee(election, w)?;
    check_query(w, ell, y)?;
    let n = election.num_voters();
    let m = election.num_candidates();
    let k = w.size();
    let s = min_group_size(n, k, ell)?;
    let s_i64 = s as i64;
    let sats = satisfactions(election, w);

    let mut model = IlpModel::new();
    for v in 0..n {
        model.add_variable(format!("v{}", v + 1), 0, 1)?;
    }
    for c in 0..m {
        model.add_variable(format!("c{}", c + 1), 0, 1)?;
    }
    let voters: Vec<(usize, i64)> = (0..n).map(|v| (v, 1)).collect();
    model.add_constraint(&voters, Relation::Eq, s_i64)?;
    let candidates: Vec<(usize, i64)> = (0..m).map(|c| (n + c, 1)).collect();
    model.add_constraint(&candidates, Relation::Ge, ell as i64)?;
    for c in 0..m {
        let mut terms: Vec<(usize, i64)> = election.approvers(c).iter().map(|v| (v, 1)).collect();
        terms.push((n + c, -s_i64));
        model.add_constraint(&terms, Relation::Ge, 0)?;
    }
    // total < s·y over integers: total ≤ s·y − 1 when s·y is integral, else ⌊s·y⌋.
    let sy = &Rational::from(s as i64) * y;
    let t_max = if sy.is_integer() { sy.floor() - 1 } else { sy.floor() };
    let sat_terms: Vec<(usize, i64)> = sats.iter().enumerate().map(|(v, &sat)| (v, sat as i64)).collect();
    model.add_constraint(&sat_terms, Relation::Le, to_i64(&t_max, "satisfaction bound")?)?;
    Ok(model)
}

/// The voter-type committee model and the candidate classes behind its
/// variables.
#[derive(Debug, Clone)]
pub struct PdCommitteeIlp {
    pub model: IlpModel,
    /// Candidates of each type (identical approver sets), ascending; variable
    /// `i` counts how many members are drawn from `types[i]`.
    pub types: Vec<Vec<usize>>,
}

impl PdCommitteeIlp {
    /// Takes the lowest-index candidates of each type.
    pub fn decode(&self, assignment: &Assignment, num_candidates: usize) -> Result<Committee> {
        let members = self
            .types
            .iter()
            .enumerate()
            .flat_map(|(i, cands)| cands.iter().copied().take(assignment.value(i) as usize));
        Committee::new(members, num_candidates)
    }
}

/// One integer variable per candidate type with `0 ≤ x_i ≤ c_i` and
/// `Σ x_i = k`; for every `ℓ` and every `ℓ`-cohesive voter set `S`, the total
/// satisfaction of `S` is at least `|S|·f(ℓ)` (denominators cleared).
pub fn build_pd_committee_ilp(election: &Election, k: usize, f: &PdFunction, limits: &Limits) -> Result<PdCommitteeIlp> {
    let m = election.num_candidates();
    let n = election.num_voters();
    check_level(k, 1)?;
    if k > m {
        return Err(Error::invalid(format!("committee size {k} exceeds m={m}")));
    }
    if f.k() != k {
        return Err(Error::DimensionMismatch(format!("PD function has {} values for k={k}", f.k())));
    }
    let active: Vec<usize> = (0..n).filter(|&v| !election.approvals(v).is_empty()).collect();
    if active.len() > limits.voter_type_voters {
        return Err(Error::ResourceLimit {
            what: "voters with nonempty ballots for the voter-type ILP",
            size: active.len() as u128,
            cap: limits.voter_type_voters as u128,
        });
    }

    let mut types: Vec<(BitSet, Vec<usize>)> = Vec::new();
    for c in 0..m {
        match types.iter_mut().find(|(a, _)| a == election.approvers(c)) {
            Some((_, cands)) => cands.push(c),
            None => types.push((election.approvers(c).clone(), vec![c])),
        }
    }
    let mut model = IlpModel::new();
    for (i, (_, cands)) in types.iter().enumerate() {
        model.add_variable(format!("t{}", i + 1), 0, cands.len() as i64)?;
    }
    let all: Vec<(usize, i64)> = (0..types.len()).map(|i| (i, 1)).collect();
    model.add_constraint(&all, Relation::Eq, k as i64)?;

    let fractions: Vec<(i64, i64)> = (1..=k)
        .map(|ell| {
            let v = f.at(ell);
            Ok((to_i64(v.numer(), "PD numerator")?, to_i64(v.denom(), "PD denominator")?))
        })
        .collect::<Result<_>>()?;

    // Depth-first over voter sets with a nonempty common ballot.
    let mut stack = vec![(0usize, Vec::<usize>::new(), BitSet::full(m))];
    while let Some((start, members, common)) = stack.pop() {
        if !members.is_empty() {
            let top = common.len().min(k);
            for ell in (1..=top).filter(|&l| is_large_enough(members.len(), n, k, l)) {
                let (num, den) = fractions[ell - 1];
                let terms: Vec<(usize, i64)> = types
                    .iter()
                    .enumerate()
                    .map(|(i, (approvers, _))| {
                        let hits = members.iter().filter(|&&v| approvers.contains(v)).count() as i64;
                        (i, den * hits)
                    })
                    .collect();
                model.add_constraint(&terms, Relation::Ge, members.len() as i64 * num)?;
            }
        }
        for idx in (start..active.len()).rev() {
            let v = active[idx];
            let next = common.intersection(election.approvals(v));
            if !next.is_empty() {
                let mut grown = members.clone();
                grown.push(v);
                stack.push((idx + 1, grown, next));
            }
        }
    }
    Ok(PdCommitteeIlp {
        model,
        types: types.into_iter().map(|(_, cands)| cands).collect(),
    })
}
