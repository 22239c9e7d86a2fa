//! Plain-text rendering.

use upq_core::tableau::{Antitableau, Row, ZeroCause};
use upq_core::Sign;

/// Rows of the antitableau as a right-aligned grid.
pub fn grid(t: &Antitableau) -> String {
    let width = t
        .rows
        .iter()
        .flatten()
        .map(|x| x.to_string().chars().count())
        .max()
        .unwrap_or(1);
    t.rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| format!("{:>width$}", x.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// `+-+ -+ +` style: each row written out with alternating signs.
pub fn rows(rows: &[Row]) -> String {
    rows.iter()
        .map(|r| {
            (0..r.length)
                .map(|t| {
                    let back = r.length - 1 - t;
                    if (back % 2 == 0) == (r.sign == Sign::Plus) {
                        '+'
                    } else {
                        '-'
                    }
                })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn signs(eta: &[Sign]) -> String {
    eta.iter().map(Sign::to_string).collect::<Vec<_>>().join("")
}

pub fn vector(v: &[i64]) -> String {
    format!(
        "({})",
        v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    )
}

pub fn cause(c: &ZeroCause) -> String {
    match c {
        ZeroCause::OutsideBox { position, value, m } => {
            format!(
                "entry {value} at position {} lies outside [0, {m}]",
                position + 1
            )
        }
        ZeroCause::Overlap {
            position,
            overlap,
            sing,
        } => format!(
            "columns {} and {} overlap by {overlap}, below their intersection {sing}",
            position + 1,
            position + 2
        ),
    }
}
