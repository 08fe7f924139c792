//! Depth-first branch and bound with bound propagation.
//!
//! Every node tightens variable domains against each constraint until a
//! fixpoint, then branches on the unfixed variable with the smallest domain
//! (lowest index on ties), trying `x = lower` before `x ≥ lower + 1`. With an
//! objective, nodes whose optimistic bound cannot beat the incumbent are cut.

use super::{Assignment, Constraint, IlpModel, Relation, Sense};
use crate::error::{Error, Result};

#[derive(Clone)]
struct Domains {
    lo: Vec<i128>,
    hi: Vec<i128>,
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Tightens domains for `Σ a·x ≤ rhs`. Returns `false` on infeasibility.
fn propagate_le(terms: &[(usize, i128)], rhs: i128, d: &mut Domains, changed: &mut bool) -> bool {
    let min_act: i128 = terms
        .iter()
        .map(|&(v, a)| if a > 0 { a * d.lo[v] } else { a * d.hi[v] })
        .sum();
    if min_act > rhs {
        return false;
    }
    let slack = rhs - min_act;
    for &(v, a) in terms {
        if a > 0 {
            let cap = d.lo[v] + div_floor(slack, a);
            if cap < d.hi[v] {
                d.hi[v] = cap;
                *changed = true;
            }
        } else {
            let floor = d.hi[v] - div_floor(slack, -a);
            if floor > d.lo[v] {
                d.lo[v] = floor;
                *changed = true;
            }
        }
    }
    true
}

struct Rows {
    /// Each model constraint as one or two `≤` rows.
    le: Vec<(Vec<(usize, i128)>, i128)>,
}

impl Rows {
    fn new(constraints: &[Constraint]) -> Self {
        let mut le = Vec::new();
        for c in constraints {
            let pos: Vec<(usize, i128)> = c.terms.iter().map(|&(v, a)| (v, a as i128)).collect();
            let neg: Vec<(usize, i128)> = pos.iter().map(|&(v, a)| (v, -a)).collect();
            let rhs = c.rhs as i128;
            match c.relation {
                Relation::Le => le.push((pos, rhs)),
                Relation::Ge => le.push((neg, -rhs)),
                Relation::Eq => {
                    le.push((pos, rhs));
                    le.push((neg, -rhs));
                }
            }
        }
        Rows { le }
    }

    fn propagate(&self, d: &mut Domains) -> bool {
        loop {
            let mut changed = false;
            for (terms, rhs) in &self.le {
                if !propagate_le(terms, *rhs, d, &mut changed) {
                    return false;
                }
            }
            if d.lo.iter().zip(&d.hi).any(|(l, h)| l > h) {
                return false;
            }
            if !changed {
                return true;
            }
        }
    }
}

struct Search<'a> {
    rows: Rows,
    /// Objective as a maximisation: `Σ c·x`.
    objective: Option<Vec<(usize, i128)>>,
    best: Option<(i128, Vec<i128>)>,
    nodes: u64,
    node_cap: u64,
    model: &'a IlpModel,
}

impl Search<'_> {
    fn optimistic(&self, d: &Domains) -> Option<i128> {
        self.objective.as_ref().map(|terms| {
            terms
                .iter()
                .map(|&(v, c)| if c > 0 { c * d.hi[v] } else { c * d.lo[v] })
                .sum()
        })
    }

    /// Returns `Ok(true)` to stop the search (first feasible point found when
    /// there is no objective).
    fn dfs(&mut self, mut d: Domains) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::ResourceLimit {
                what: "branch-and-bound nodes",
                size: self.nodes as u128,
                cap: self.node_cap as u128,
            });
        }
        if !self.rows.propagate(&mut d) {
            return Ok(false);
        }
        if let (Some(bound), Some((best, _))) = (self.optimistic(&d), &self.best) {
            if bound <= *best {
                return Ok(false);
            }
        }
        let branch = (0..self.model.variables().len())
            .filter(|&v| d.lo[v] < d.hi[v])
            .min_by_key(|&v| (d.hi[v] - d.lo[v], v));
        let Some(v) = branch else {
            // All fixed, and propagation at a fixpoint means every row holds.
            let value = self.optimistic(&d).unwrap_or(0);
            self.best = Some((value, d.lo.clone()));
            return Ok(self.objective.is_none());
        };
        let mut down = d.clone();
        down.hi[v] = d.lo[v];
        if self.dfs(down)? {
            return Ok(true);
        }
        let mut up = d;
        up.lo[v] += 1;
        self.dfs(up)
    }
}

/// Finds a feasible assignment (an optimal one if the model has an objective),
/// or `None` if the model is infeasible. Errors if more than `node_cap` nodes
/// would be explored.
pub fn solve(model: &IlpModel, node_cap: u64) -> Result<Option<Assignment>> {
    let objective = model.objective().map(|o| {
        let sign = match o.sense {
            Sense::Maximize => 1,
            Sense::Minimize => -1,
        };
        o.terms.iter().map(|&(v, c)| (v, sign * c as i128)).collect()
    });
    let mut search = Search {
        rows: Rows::new(model.constraints()),
        objective,
        best: None,
        nodes: 0,
        node_cap,
        model,
    };
    let root = Domains {
        lo: model.variables().iter().map(|v| v.lower as i128).collect(),
        hi: model.variables().iter().map(|v| v.upper as i128).collect(),
    };
    search.dfs(root)?;
    Ok(search.best.map(|(_, values)| Assignment {
        values: values.into_iter().map(|x| x as i64).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ilp::{validate, Relation};
    use proptest::prelude::*;

    const CAP: u64 = 1_000_000;

    #[test]
    fn trivial_feasible() {
        let mut m = IlpModel::new();
        let x = m.add_variable("x", 0, 1).unwrap();
        m.add_constraint(&[(x, 1)], Relation::Eq, 1).unwrap();
        assert_eq!(solve(&m, CAP).unwrap().unwrap().values, vec![1]);
    }

    #[test]
    fn trivial_infeasible() {
        let mut m = IlpModel::new();
        let x = m.add_variable("x", 0, 1).unwrap();
        let y = m.add_variable("y", 0, 1).unwrap();
        m.add_constraint(&[(x, 1), (y, 1)], Relation::Eq, 2).unwrap();
        m.add_constraint(&[(x, 1), (y, -1)], Relation::Ge, 1).unwrap();
        assert!(solve(&m, CAP).unwrap().is_none());
    }

    #[test]
    fn empty_model_is_feasible() {
        assert_eq!(solve(&IlpModel::new(), CAP).unwrap().unwrap().values, Vec::<i64>::new());
    }

    #[test]
    fn optimizes_objective() {
        // max 3x + 2y  s.t. x + y ≤ 4, x ≤ 3, y ∈ [0, 4], x − y ≤ 1
        let mut m = IlpModel::new();
        let x = m.add_variable("x", 0, 3).unwrap();
        let y = m.add_variable("y", 0, 4).unwrap();
        m.add_constraint(&[(x, 1), (y, 1)], Relation::Le, 4).unwrap();
        m.add_constraint(&[(x, 1), (y, -1)], Relation::Le, 1).unwrap();
        m.set_objective(Sense::Maximize, &[(x, 3), (y, 2)]).unwrap();
        let a = solve(&m, CAP).unwrap().unwrap();
        // x = 2, y = 2 gives 10; x = 3 needs y ≥ 2 and y ≤ 1.
        assert_eq!(a.values, vec![2, 2]);
        m.set_objective(Sense::Minimize, &[(x, 1), (y, 1)]).unwrap();
        assert_eq!(solve(&m, CAP).unwrap().unwrap().values, vec![0, 0]);
    }

    #[test]
    fn node_cap_is_enforced() {
        // Parity-style infeasible model that propagation cannot refute.
        let mut m = IlpModel::new();
        let vars: Vec<usize> = (0..20).map(|i| m.add_variable(format!("x{i}"), 0, 1).unwrap()).collect();
        let terms: Vec<(usize, i64)> = vars.iter().map(|&v| (v, 2)).collect();
        m.add_constraint(&terms, Relation::Eq, 21).unwrap();
        let err = solve(&m, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn negative_bounds() {
        let mut m = IlpModel::new();
        let x = m.add_variable("x", -5, 5).unwrap();
        let y = m.add_variable("y", -5, 5).unwrap();
        m.add_constraint(&[(x, 3), (y, -2)], Relation::Eq, 7).unwrap();
        m.add_constraint(&[(x, 1)], Relation::Le, -1).unwrap();
        let a = solve(&m, CAP).unwrap().unwrap();
        assert!(validate(&m, &a).unwrap());
        // 3x − 2y = 7 needs x odd; x = −1, y = −5 is the only point in range.
        assert_eq!(a.values, vec![-1, -5]);
    }

    fn arb_model() -> impl Strategy<Value = IlpModel> {
        let vars = proptest::collection::vec((-2i64..=1, 0i64..=2), 1..5);
        vars.prop_flat_map(|bounds| {
            let nv = bounds.len();
            let row = (
                proptest::collection::vec(-3i64..=3, nv),
                prop_oneof![Just(Relation::Le), Just(Relation::Ge), Just(Relation::Eq)],
                -4i64..=4,
            );
            (Just(bounds), proptest::collection::vec(row, 0..5))
        })
        .prop_map(|(bounds, rows)| {
            let mut m = IlpModel::new();
            for (i, (lo, span)) in bounds.iter().enumerate() {
                m.add_variable(format!("v{i}"), *lo, lo + span).unwrap();
            }
            for (coefs, rel, rhs) in rows {
                let terms: Vec<(usize, i64)> = coefs.into_iter().enumerate().collect();
                m.add_constraint(&terms, rel, rhs).unwrap();
            }
            m
        })
    }

    fn enumerate_feasible(m: &IlpModel) -> bool {
        let vars = m.variables();
        let mut values: Vec<i64> = vars.iter().map(|v| v.lower).collect();
        loop {
            if validate(m, &Assignment { values: values.clone() }).unwrap() {
                return true;
            }
            let mut i = 0;
            loop {
                if i == vars.len() {
                    return false;
                }
                if values[i] < vars[i].upper {
                    values[i] += 1;
                    break;
                }
                values[i] = vars[i].lower;
                i += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn sound_and_complete(m in arb_model()) {
            let got = solve(&m, CAP).unwrap();
            if let Some(a) = &got {
                prop_assert!(validate(&m, a).unwrap());
            }
            prop_assert_eq!(got.is_some(), enumerate_feasible(&m));
        }
    }
}
