//! Matrix literal text format: rows separated by `;`, entries by `,`, e.g. `1,3;0,1`.

use std::fmt::Display;

use num_bigint::BigInt;

use crate::error::{FiltraError, Result};

pub(crate) fn parse_rows(s: &str) -> Result<(usize, Vec<BigInt>)> {
    let rows: Vec<Vec<BigInt>> = s
        .trim()
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<BigInt>()
                        .map_err(|_| FiltraError::Parse(format!("bad matrix entry {:?} in {s:?}", e.trim())))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(FiltraError::Parse(format!("matrix literal {s:?} is not square")));
    }
    Ok((n, rows.into_iter().flatten().collect()))
}

pub(crate) fn format_rows<T: Display>(n: usize, entries: &[T]) -> String {
    entries
        .chunks(n)
        .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}
