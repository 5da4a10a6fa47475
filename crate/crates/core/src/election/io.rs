//! Plain-text election files.
//!
//! ```text
//! # optional comments
//! 3 2
//! 0 1 2
//! 2 1 0
//! ```

use super::{Election, Vote};
use crate::error::{Error, Result};

pub fn parse_election(text: &str) -> Result<Election> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#') && !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: format!("header must be \"m n\", got \"{header}\""),
        });
    }
    let parse_num = |s: &str, line: usize| -> Result<usize> {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("not a nonnegative integer: \"{s}\""),
        })
    };
    let m = parse_num(fields[0], hline)?;
    let n = parse_num(fields[1], hline)?;

    let mut votes = Vec::with_capacity(n);
    for (line, body) in lines {
        let ranking = body
            .split_whitespace()
            .map(|s| parse_num(s, line))
            .collect::<Result<Vec<_>>>()?;
        if ranking.len() != m {
            return Err(Error::Parse {
                line,
                message: format!("expected {m} candidates, got {}", ranking.len()),
            });
        }
        let vote = Vote::new(ranking).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        votes.push(vote);
    }
    if votes.len() != n {
        return Err(Error::Parse {
            line: hline,
            message: format!("header declares {n} votes, found {}", votes.len()),
        });
    }
    Election::new(m, votes)
}

pub fn serialize_election(e: &Election) -> String {
    let mut out = format!("{} {}\n", e.m(), e.n());
    for v in e.votes() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
