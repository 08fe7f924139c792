//! Seeded random elections for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Election, IntervalOrder, OrderKind};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Every voter approves every candidate independently with probability `p`.
    Impartial { p: f64 },
    /// Ballots are random intervals of a random candidate order.
    CiIntervals,
    /// Approver sets are random intervals of a random voter order.
    ViIntervals,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub election: Election,
    /// Present for the structured models; the election is an interval
    /// election under it.
    pub order: Option<IntervalOrder>,
}

/// A random interval of `0..len`; empty with probability 1/8. Lengths favour
/// short intervals so that cohesive groups of several levels appear.
fn random_interval(rng: &mut ChaCha8Rng, len: usize) -> std::ops::Range<usize> {
    if rng.gen_ratio(1, 8) {
        return 0..0;
    }
    let start = rng.gen_range(0..len);
    let max_len = (len - start).min(len.div_ceil(2).max(1));
    let width = rng.gen_range(1..=max_len);
    start..start + width
}

/// Deterministic for a fixed `(m, n, model, seed)`.
pub fn generate_election(m: usize, n: usize, model: Model, seed: u64) -> Result<Generated> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("m and n must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        Model::Impartial { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("probability {p} outside [0, 1]")));
            }
            let ballots = (0..n)
                .map(|_| BitSet::from_indices(m, (0..m).filter(|_| rng.gen_bool(p))))
                .collect();
            Ok(Generated {
                election: Election::from_voter_sets(m, ballots),
                order: None,
            })
        }
        Model::CiIntervals => {
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(&mut rng);
            let ballots = (0..n)
                .map(|_| {
                    let span = random_interval(&mut rng, m);
                    BitSet::from_indices(m, order[span].iter().copied())
                })
                .collect();
            Ok(Generated {
                election: Election::from_voter_sets(m, ballots),
                order: Some(IntervalOrder::new(OrderKind::Ci, order)?),
            })
        }
        Model::ViIntervals => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut ballots = vec![BitSet::new(m); n];
            for c in 0..m {
                for &v in &order[random_interval(&mut rng, n)] {
                    ballots[v].insert(c);
                }
            }
            Ok(Generated {
                election: Election::from_voter_sets(m, ballots),
                order: Some(IntervalOrder::new(OrderKind::Vi, order)?),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::verify_interval_order;

    #[test]
    fn extreme_probabilities() {
        let g = generate_election(5, 5, Model::Impartial { p: 0.0 }, 1).unwrap();
        assert!(g.election.ballots().all(|b| b.is_empty()));
        let g = generate_election(5, 5, Model::Impartial { p: 1.0 }, 1).unwrap();
        assert!(g.election.ballots().all(|b| b.len() == 5));
        assert!(generate_election(5, 5, Model::Impartial { p: 1.5 }, 1).is_err());
        assert!(generate_election(0, 5, Model::CiIntervals, 1).is_err());
    }

    #[test]
    fn structured_models_verify() {
        for seed in 0..50 {
            let g = generate_election(6, 9, Model::CiIntervals, seed).unwrap();
            assert!(verify_interval_order(&g.election, g.order.as_ref().unwrap()).unwrap());
            let g = generate_election(6, 9, Model::ViIntervals, seed).unwrap();
            assert!(verify_interval_order(&g.election, g.order.as_ref().unwrap()).unwrap());
        }
        let g = generate_election(6, 9, Model::CiIntervals, 7).unwrap();
        assert_eq!(g.order.as_ref().unwrap().kind(), OrderKind::Ci);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_election(7, 10, Model::Impartial { p: 0.4 }, 42).unwrap();
        let b = generate_election(7, 10, Model::Impartial { p: 0.4 }, 42).unwrap();
        assert_eq!(a.election, b.election);
        let c = generate_election(7, 10, Model::Impartial { p: 0.4 }, 43).unwrap();
        assert_ne!(a.election, c.election);
    }
}
