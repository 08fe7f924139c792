//! Acceptance gate. Prints one `[PASS]`/`[FAIL]` line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propdeg::cohesive::{
    count_fixed_size, count_groups, find_cohesive_group, find_one_cohesive_group_poly, is_cohesive,
    reduce_counting_to_fscg, reduce_fscg_to_counting, setcover_election, CountMethod,
};
use propdeg::combinatorics::Combinations;
use propdeg::election::generate::{generate_election, Generated, Model};
use propdeg::ilp;
use propdeg::pd::{
    build_pd_committee_ilp, build_pd_failure_ilp, pd_committee_exists, pd_failure, pd_profile, pd_verification,
    CommitteeMethod, FailureMethod, LevelMinimum,
};
use propdeg::rules::{av_winners, cc_winners, pav_winners, provides_ejr, provides_jr};
use propdeg::{example_election, verify_interval_order, Committee, Election, IntervalOrder, Limits, OrderKind, PdFunction, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: propdeg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn lim() -> Limits {
    Limits::default()
}

/// 210 elections with m ≤ 8, n ≤ 12 over all three generators.
fn corpus() -> Vec<Generated> {
    (0..210u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = rng.gen_range(4..=8);
            let n = rng.gen_range(5..=12);
            let model = match seed % 5 {
                0 => Model::CiIntervals,
                1 => Model::ViIntervals,
                _ => Model::Impartial { p: rng.gen_range(0.2..0.7) },
            };
            generate_election(m, n, model, seed).expect("valid generator parameters")
        })
        .collect()
}

fn profile_bound(
    e: &Election,
    w: &Committee,
    bound: impl Fn(usize) -> Rational,
    what: &str,
) -> Result<(), String> {
    let profile = lib(pd_profile(e, w, &FailureMethod::Enumerate, &lim()))?;
    for (i, level) in profile.levels.iter().enumerate() {
        let ell = i + 1;
        if let LevelMinimum::MinAverage(avg) = level {
            ensure(*avg >= bound(ell), || {
                format!("{what} committee {:?} has profile({ell}) = {avg} below {}", w.members(), bound(ell))
            })?;
        }
    }
    Ok(())
}

fn ac1() -> Outcome {
    let e = example_election();
    let unit = PdFunction::unit(5).unwrap();
    let mut checked = 0;
    for members in Combinations::new(7, 5) {
        let w = Committee::new(members, 7).unwrap();
        ensure(!lib(pd_verification(&e, &w, &unit, &FailureMethod::Enumerate, &lim()))?, || {
            format!("committee {:?} passes unit PD", w.members())
        })?;
        checked += 1;
    }
    ensure(checked == 21, || format!("expected 21 committees, saw {checked}"))?;
    let found = lib(pd_committee_exists(&e, 5, &unit, CommitteeMethod::Exhaustive, &lim()))?;
    ensure(found.is_none(), || "exhaustive search found a unit-PD committee".into())?;
    Ok(format!("none of {checked} committees has unit PD"))
}

fn ac2() -> Outcome {
    let e = example_election();
    let mut accepted = Vec::new();
    for start in 0..13 {
        if lib(is_cohesive(&e, 5, 1, &[start, start + 1, start + 2]))?.is_some() {
            accepted.push(start);
        }
    }
    let expected: Vec<usize> = (0..7).map(|i| 2 * i).collect();
    ensure(accepted == expected, || format!("accepted consecutive triples start at {accepted:?}"))?;
    for c in 0..7 {
        let triple = vec![2 * c, 2 * c + 1, 2 * c + 2];
        let g = lib(is_cohesive(&e, 5, 1, &triple))?.ok_or("triple rejected")?;
        ensure(g.witness == vec![c], || format!("triple {triple:?} has witness {:?}", g.witness))?;
        ensure(e.approvers(c).to_vec() == triple, || format!("A(c{}) is not {triple:?}", c + 1))?;
    }
    let size3 = lib(count_fixed_size(&e, 5, 1, 3, &CountMethod::Brute, &lim()))?.value;
    ensure(size3 == BigUint::from(7u32), || format!("{size3} size-3 groups instead of 7"))?;
    Ok("exactly the 7 triples {2i-1, 2i, 2i+1} are 1-cohesive of size 3".into())
}

fn ac3(corpus: &[Generated]) -> Outcome {
    let mut winners = 0;
    for g in corpus {
        let e = &g.election;
        for k in 1..=4.min(e.num_candidates()) {
            for w in lib(pav_winners(e, k, &lim()))?.winners {
                profile_bound(e, &w, |ell| Rational::from(ell as i64 - 1), "PAV")?;
                winners += 1;
            }
        }
    }
    Ok(format!("{} elections, {winners} PAV winners", corpus.len()))
}

fn ac4(corpus: &[Generated]) -> Outcome {
    let mut ejr = 0;
    for g in corpus {
        let e = &g.election;
        let m = e.num_candidates();
        for k in 1..=4.min(m) {
            for members in Combinations::new(m, k) {
                let w = Committee::new(members, m).unwrap();
                if lib(provides_ejr(e, k, &w, &lim()))? {
                    profile_bound(e, &w, |ell| Rational::new(ell as i64 - 1, 2), "EJR")?;
                    ejr += 1;
                }
            }
        }
    }
    Ok(format!("{ejr} EJR committees"))
}

fn ac5(corpus: &[Generated]) -> Outcome {
    let (mut cc, mut pav) = (0, 0);
    for g in corpus {
        let e = &g.election;
        for k in 1..=4.min(e.num_candidates()) {
            for w in lib(cc_winners(e, k, &lim()))?.winners {
                ensure(lib(provides_jr(e, k, &w))?, || format!("CC winner {:?} fails JR", w.members()))?;
                cc += 1;
            }
            for w in lib(pav_winners(e, k, &lim()))?.winners {
                ensure(lib(provides_ejr(e, k, &w, &lim()))?, || format!("PAV winner {:?} fails EJR", w.members()))?;
                pav += 1;
            }
        }
    }
    let fixture = Election::new(
        4,
        vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2], vec![3], vec![3]],
    )
    .unwrap();
    let av = lib(av_winners(&fixture, 3, &lim()))?;
    let failing = av
        .winners
        .iter()
        .filter(|w| !provides_jr(&fixture, 3, w).unwrap_or(true))
        .count();
    ensure(failing > 0, || "no AV winner of the fixture fails JR".into())?;
    Ok(format!("{cc} CC winners give JR, {pav} PAV winners give EJR, {failing} AV winner fails JR"))
}

/// A VI order for a CI election by sorting voters on their interval
/// endpoints, if that order happens to verify.
fn derived_vi(e: &Election, ci: &IntervalOrder) -> Option<IntervalOrder> {
    let pos = ci.positions();
    let mut voters: Vec<usize> = (0..e.num_voters()).collect();
    voters.sort_by_key(|&v| {
        let ps: Vec<usize> = e.approvals(v).iter().map(|c| pos[c]).collect();
        (ps.iter().min().copied(), ps.iter().max().copied(), v)
    });
    let order = IntervalOrder::new(OrderKind::Vi, voters).ok()?;
    verify_interval_order(e, &order).ok()?.then_some(order)
}

fn ac6() -> Outcome {
    let mut instances = vec![(
        example_election(),
        vec![
            CountMethod::Ci(IntervalOrder::identity(OrderKind::Ci, 7)),
            CountMethod::Vi(IntervalOrder::identity(OrderKind::Vi, 15)),
        ],
    )];
    for seed in 0..120u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let m = rng.gen_range(3..=10);
        let n = rng.gen_range(4..=12);
        let model = if seed % 2 == 0 { Model::CiIntervals } else { Model::ViIntervals };
        let g = generate_election(m, n, model, 10_000 + seed).unwrap();
        let order = g.order.clone().unwrap();
        ensure(lib(verify_interval_order(&g.election, &order))?, || format!("seed {seed}: order fails"))?;
        let mut methods = Vec::new();
        match order.kind() {
            OrderKind::Ci => {
                if let Some(vi) = derived_vi(&g.election, &order) {
                    methods.push(CountMethod::Vi(vi));
                }
                methods.push(CountMethod::Ci(order));
            }
            OrderKind::Vi => methods.push(CountMethod::Vi(order)),
        }
        instances.push((g.election, methods));
    }
    let (mut values, mut both) = (0usize, 0usize);
    for (e, structured) in &instances {
        if structured.len() == 2 {
            both += 1;
        }
        let mut methods = vec![CountMethod::Brute, CountMethod::InclusionExclusion];
        methods.extend(structured.iter().cloned());
        let n = e.num_voters();
        for k in 1..=4.min(e.num_candidates()) {
            for ell in 1..=k {
                let want = lib(count_groups(e, k, ell, &CountMethod::Brute, &lim()))?.value;
                for method in &methods[1..] {
                    let got = lib(count_groups(e, k, ell, method, &lim()))?.value;
                    ensure(got == want, || format!("count_groups k={k} ell={ell} {}: {got} != {want}", method.tag().name()))?;
                }
                for x in 1..=n {
                    let want = lib(count_fixed_size(e, k, ell, x, &CountMethod::Brute, &lim()))?.value;
                    for method in &methods[1..] {
                        let got = lib(count_fixed_size(e, k, ell, x, method, &lim()))?.value;
                        ensure(got == want, || {
                            format!("count_fixed_size k={k} ell={ell} x={x} {}: {got} != {want}", method.tag().name())
                        })?;
                        values += 1;
                    }
                }
            }
        }
    }
    ensure(instances.len() >= 100, || format!("only {} instances", instances.len()))?;
    Ok(format!("{} instances ({both} with both orders), {values} fixed-size comparisons", instances.len()))
}

fn ac7() -> Outcome {
    let (mut sums, mut padded) = (0, 0);
    for seed in 0..60u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(20_000 + seed);
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(2..=7);
        let model = match seed % 3 {
            0 => Model::CiIntervals,
            1 => Model::ViIntervals,
            _ => Model::Impartial { p: 0.5 },
        };
        let g = generate_election(m, n, model, 20_000 + seed).unwrap();
        let e = &g.election;
        let mut methods = vec![CountMethod::Brute, CountMethod::InclusionExclusion];
        match &g.order {
            Some(o) if o.kind() == OrderKind::Ci => methods.push(CountMethod::Ci(o.clone())),
            Some(o) => methods.push(CountMethod::Vi(o.clone())),
            None => {}
        }
        for k in 1..=3.min(m) {
            for ell in 1..=k {
                let total = lib(count_groups(e, k, ell, &CountMethod::Brute, &lim()))?.value;
                for method in &methods {
                    let sum = lib(reduce_counting_to_fscg(e, k, ell, method, &lim()))?.value;
                    ensure(sum == total, || format!("seed {seed} k={k} ell={ell}: sum {sum} != {total}"))?;
                    sums += 1;
                }
                for x in 1..=n {
                    if x * k < ell * n || ell > m {
                        continue;
                    }
                    let want = lib(count_fixed_size(e, k, ell, x, &CountMethod::Brute, &lim()))?.value;
                    for method in &methods {
                        let got = lib(reduce_fscg_to_counting(e, k, ell, x, method, &lim()))?.value;
                        ensure(got == want, || {
                            format!("seed {seed} k={k} ell={ell} x={x} {}: {got} != {want}", method.tag().name())
                        })?;
                        padded += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{sums} sum identities, {padded} padded-difference identities"))
}

fn brute_covers(universe: usize, sets: &[Vec<usize>], max_sets: usize) -> BigUint {
    let s = sets.len();
    let count = (1u32..1 << s)
        .filter(|mask| mask.count_ones() as usize <= max_sets)
        .filter(|mask| {
            let mut covered = vec![false; universe];
            for (j, set) in sets.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    for &u in set {
                        covered[u] = true;
                    }
                }
            }
            covered.into_iter().all(|c| c)
        })
        .count();
    BigUint::from(count)
}

fn check_cover_family(universe: usize, sets: &[Vec<usize>]) -> Result<usize, String> {
    let sc = lib(setcover_election(universe, sets))?;
    let mut checks = 0;
    for max_sets in 1..=sets.len() {
        let want = brute_covers(universe, sets, max_sets);
        for method in [CountMethod::Brute, CountMethod::InclusionExclusion] {
            let got = lib(sc.count_covers_at_most(max_sets, &method, &lim()))?;
            ensure(got == want, || format!("U={universe} S={sets:?} K={max_sets}: {got} != {want}"))?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn ac8() -> Outcome {
    let mut families = 0;
    let mut checks = 0;
    // Every family with |U| ≤ 3 and |S| ≤ 3.
    for universe in 1..=3usize {
        let subsets = 1usize << universe;
        for size in 1..=3u32 {
            for code in 0..subsets.pow(size) {
                let sets: Vec<Vec<usize>> = (0..size)
                    .map(|j| {
                        let mask = code / subsets.pow(j) % subsets;
                        (0..universe).filter(|u| mask >> u & 1 == 1).collect()
                    })
                    .collect();
                checks += check_cover_family(universe, &sets)?;
                families += 1;
            }
        }
    }
    // Seeded families up to |U| = |S| = 6.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for universe in 1..=6usize {
        for size in 1..=6usize {
            for _ in 0..20 {
                let sets: Vec<Vec<usize>> = (0..size)
                    .map(|_| (0..universe).filter(|_| rng.gen_bool(0.45)).collect())
                    .collect();
                checks += check_cover_family(universe, &sets)?;
                families += 1;
            }
        }
    }
    Ok(format!("{families} set families, {checks} cover-count identities"))
}

fn ac9() -> Outcome {
    let mut failure = 0;
    for seed in 0..120u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(30_000 + seed);
        let m = rng.gen_range(3..=8);
        let n = rng.gen_range(4..=12);
        let g = generate_election(m, n, Model::Impartial { p: rng.gen_range(0.3..0.7) }, 30_000 + seed).unwrap();
        let e = &g.election;
        let k = rng.gen_range(1..=4.min(m));
        let w = Committee::new(sample(&mut rng, m, k).into_vec(), m).unwrap();
        let ell = rng.gen_range(1..=k);
        let y = Rational::new(rng.gen_range(0..=2 * k as i64), 2);
        let model = lib(build_pd_failure_ilp(e, &w, ell, &y))?;
        let solved = lib(ilp::solve(&model, lim().ilp_nodes))?;
        if let Some(a) = &solved {
            ensure(lib(ilp::validate(&model, a))?, || format!("seed {seed}: invalid ILP solution"))?;
        }
        let want = lib(pd_failure(e, &w, ell, &y, &FailureMethod::Enumerate, &lim()))?;
        ensure(solved.is_some() == want.is_some(), || format!("seed {seed}: failure ILP disagrees"))?;
        failure += 1;
    }
    let mut committee = 0;
    for seed in 0..120u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(40_000 + seed);
        let m = rng.gen_range(3..=7);
        let n = rng.gen_range(3..=8);
        let g = generate_election(m, n, Model::Impartial { p: rng.gen_range(0.3..0.7) }, 40_000 + seed).unwrap();
        let e = &g.election;
        let k = rng.gen_range(1..=3.min(m));
        let f = match seed % 4 {
            0 => PdFunction::unit(k),
            1 => PdFunction::nearly_perfect(k),
            2 => PdFunction::perfect(k),
            _ => PdFunction::new((0..k).map(|_| Rational::new(rng.gen_range(0..=2 * k as i64), 2)).collect()),
        }
        .unwrap();
        let built = lib(build_pd_committee_ilp(e, k, &f, &lim()))?;
        let solved = lib(ilp::solve(&built.model, lim().ilp_nodes))?;
        let want = lib(pd_committee_exists(e, k, &f, CommitteeMethod::Exhaustive, &lim()))?;
        ensure(solved.is_some() == want.is_some(), || format!("seed {seed}: committee ILP disagrees"))?;
        if let Some(a) = solved {
            let w = lib(built.decode(&a, m))?;
            ensure(lib(pd_verification(e, &w, &f, &FailureMethod::Enumerate, &lim()))?, || {
                format!("seed {seed}: decoded committee {:?} lacks the PD", w.members())
            })?;
        }
        committee += 1;
    }
    Ok(format!("{failure} failure models, {committee} committee models"))
}

fn exists_by_voter_subsets(e: &Election, k: usize) -> bool {
    let n = e.num_voters();
    (1u32..1 << n).any(|mask| {
        let voters = (0..n).filter(|v| mask >> v & 1 == 1);
        (mask.count_ones() as usize) * k >= n && !e.common_approvals(voters).is_empty()
    })
}

fn ac10(corpus: &[Generated]) -> Outcome {
    let mut elections: Vec<&Election> = corpus.iter().map(|g| &g.election).collect();
    let extra: Vec<Generated> = (0..40u64)
        .map(|seed| generate_election(7, 13 + (seed % 2) as usize, Model::Impartial { p: 0.25 }, 50_000 + seed).unwrap())
        .collect();
    elections.extend(extra.iter().map(|g| &g.election));
    let mut checks = 0;
    for e in elections {
        for k in 1..=4.min(e.num_candidates()) {
            let poly = lib(find_one_cohesive_group_poly(e, k))?;
            let want = exists_by_voter_subsets(e, k);
            ensure(poly.is_some() == want, || format!("k={k}: poly says {}, brute {want}", poly.is_some()))?;
            ensure(lib(find_cohesive_group(e, k, 1))?.is_some() == want, || "find_cohesive_group disagrees".into())?;
            checks += 1;
        }
    }
    Ok(format!("{checks} instances with n ≤ 14"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<(&str, &str, Duration, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("AC1", "no size-5 committee of the 15-voter example has unit PD", Duration::from_secs(1), Box::new(ac1)),
        ("AC2", "cohesive triples of the 15-voter example", Duration::from_secs(1), Box::new(ac2)),
        ("AC3", "PAV winners have nearly perfect PD", Duration::from_secs(60), Box::new(|| ac3(&corpus))),
        ("AC4", "EJR committees have PD (l-1)/2", Duration::from_secs(60), Box::new(|| ac4(&corpus))),
        ("AC5", "axiom chain", Duration::MAX, Box::new(|| ac5(&corpus))),
        ("AC6", "counting methods agree on interval elections", Duration::from_secs(60), Box::new(ac6)),
        ("AC7", "counting reductions round trip", Duration::from_secs(60), Box::new(ac7)),
        ("AC8", "set-cover count identity", Duration::MAX, Box::new(ac8)),
        ("AC9", "ILP models agree with enumeration", Duration::MAX, Box::new(ac9)),
        ("AC10", "polynomial 1-cohesive check agrees with brute force", Duration::MAX, Box::new(|| ac10(&corpus))),
    ];
    let mut failed = 0;
    for (id, title, budget, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > *budget {
                Err(format!("took {elapsed:.2?}, budget {budget:?}"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail} ({elapsed:.2?})"),
            Err(reason) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {reason} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
