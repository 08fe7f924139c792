//! Line-based text formats.
//!
//! Election file: optional `#` comment lines anywhere, a header line `m n`,
//! then exactly `n` voter lines, each listing the 1-based candidates that
//! voter approves (a voter line may be empty). Committee and order files hold
//! one line of 1-based indices.

use super::{Committee, Election, IntervalOrder, OrderKind};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a positive integer, found {tok:?}")))
}

pub fn parse_election(text: &str) -> Result<Election> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !is_comment(l));

    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(1, "missing header \"m n\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(header_line, "malformed header, expected \"m n\""));
    }
    let m = parse_index(fields[0], header_line)?;
    let n = parse_index(fields[1], header_line)?;
    if m == 0 {
        return Err(Error::parse(header_line, "candidate count m must be positive"));
    }

    let mut ballots = Vec::with_capacity(n);
    let mut last_line = header_line;
    for _ in 0..n {
        let Some((no, line)) = lines.next() else {
            return Err(Error::parse(
                last_line + 1,
                format!("expected {n} voter lines, found {}", ballots.len()),
            ));
        };
        last_line = no;
        let mut set = BitSet::new(m);
        for tok in line.split_whitespace() {
            let c = parse_index(tok, no)?;
            if c == 0 || c > m {
                return Err(Error::parse(no, format!("candidate index {c} > m={m}")));
            }
            if !set.insert(c - 1) {
                return Err(Error::parse(no, format!("duplicate candidate index {c}")));
            }
        }
        ballots.push(set);
    }
    if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(no, format!("unexpected data after {n} voter lines")));
    }
    Ok(Election::from_voter_sets(m, ballots))
}

pub fn serialize_election(election: &Election) -> String {
    let mut out = format!("{} {}\n", election.num_candidates(), election.num_voters());
    for ballot in election.ballots() {
        let line: Vec<String> = ballot.iter().map(|c| (c + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Collects the 1-based indices on the single data line of `text`.
fn parse_index_line(text: &str, what: &str) -> Result<Vec<usize>> {
    let mut data = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !is_comment(l) && !l.trim().is_empty());
    let Some((i, line)) = data.next() else {
        return Err(Error::parse(1, format!("empty {what} file")));
    };
    if let Some((j, _)) = data.next() {
        return Err(Error::parse(j + 1, format!("{what} file must contain one line")));
    }
    line.split(|ch: char| ch.is_whitespace() || ch == ',')
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let x = parse_index(tok, i + 1)?;
            if x == 0 {
                return Err(Error::parse(i + 1, "indices are 1-based"));
            }
            Ok(x - 1)
        })
        .collect()
}

pub fn parse_committee(text: &str, num_candidates: usize) -> Result<Committee> {
    Committee::new(parse_index_line(text, "committee")?, num_candidates)
}

pub fn serialize_committee(committee: &Committee) -> String {
    format!("{}\n", committee.to_one_based_string())
}

pub fn parse_order(text: &str, kind: OrderKind) -> Result<IntervalOrder> {
    IntervalOrder::new(kind, parse_index_line(text, "order")?)
}

pub fn serialize_order(order: &IntervalOrder) -> String {
    let line: Vec<String> = order.order().iter().map(|x| (x + 1).to_string()).collect();
    format!("{}\n", line.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::example_election;
    use proptest::prelude::*;

    #[test]
    fn minimal_file() {
        let e = parse_election("2 1\n1 2\n").unwrap();
        assert_eq!((e.num_candidates(), e.num_voters()), (2, 1));
        assert_eq!(e.approvals(0).to_vec(), vec![0, 1]);
    }

    #[test]
    fn out_of_range_names_line() {
        let err = parse_election("2 1\n1 3\n").unwrap_err();
        assert_eq!(err.to_string(), "candidate index 3 > m=2 on line 2");
    }

    #[test]
    fn other_errors() {
        assert!(matches!(parse_election("2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_election("2 1\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_election("2 2\n1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_election("2 1\n1\n2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_election("2 1\n0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_election("").is_err());
    }

    #[test]
    fn comments_and_empty_ballots() {
        let e = parse_election("# header comment\n3 3\n1 2\n# between\n\n3\n").unwrap();
        assert_eq!(e.num_voters(), 3);
        assert!(e.approvals(1).is_empty());
        assert_eq!(e.approvals(2).to_vec(), vec![2]);
    }

    #[test]
    fn example_table_serialized() {
        let text = serialize_election(&example_election());
        assert!(text.starts_with("7 15\n1\n1\n1 2\n2\n"));
        let e = parse_election(&text).unwrap();
        assert_eq!(e.approvals(2).to_vec(), vec![0, 1]);
        assert_eq!(e, example_election());
    }

    #[test]
    fn committee_and_order_files() {
        let w = parse_committee("# W\n1 2 3 4 5\n", 7).unwrap();
        assert_eq!(w.members(), &[0, 1, 2, 3, 4]);
        assert_eq!(parse_committee(&serialize_committee(&w), 7).unwrap(), w);
        assert!(parse_committee("1 9\n", 7).is_err());
        let o = parse_order("3 1 2\n", OrderKind::Ci).unwrap();
        assert_eq!(o.order(), &[2, 0, 1]);
        assert_eq!(parse_order(&serialize_order(&o), OrderKind::Ci).unwrap(), o);
        assert!(parse_order("1 1\n", OrderKind::Vi).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(m in 1usize..12, ballots in proptest::collection::vec(
            proptest::collection::btree_set(0usize..12, 0..6), 0..10)) {
            let ballots: Vec<Vec<usize>> = ballots.into_iter()
                .map(|b| b.into_iter().filter(|&c| c < m).collect()).collect();
            let e = Election::new(m, ballots).unwrap();
            let text = serialize_election(&e);
            let back = parse_election(&text).unwrap();
            prop_assert_eq!(serialize_election(&back), text);
            prop_assert_eq!(back, e);
        }
    }
}
