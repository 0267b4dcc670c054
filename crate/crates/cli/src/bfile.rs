//! Parser for the OEIS b-file text format: one `n value` pair per line.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BFileError {
    #[error("line {line}: expected `n value`, found {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: duplicate index {index}")]
    Duplicate { line: usize, index: i64 },
    #[error("line {line}: index {index} is smaller than the previous index")]
    Decreasing { line: usize, index: i64 },
    #[error("no entries")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub entries: Vec<(i64, BigInt)>,
    /// Indices increase by exactly one throughout.
    pub contiguous: bool,
}

pub fn parse_bfile(text: &str) -> Result<BFile, BFileError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let malformed = || BFileError::Malformed {
            line,
            text: raw.to_string(),
        };
        let mut parts = body.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed());
        };
        let index: i64 = n.parse().map_err(|_| malformed())?;
        let value: BigInt = v.parse().map_err(|_| malformed())?;
        if let Some(&(prev, _)) = entries.last() {
            if index == prev {
                return Err(BFileError::Duplicate { line, index });
            }
            if index < prev {
                return Err(BFileError::Decreasing { line, index });
            }
        }
        entries.push((index, value));
    }
    let contiguous = entries.windows(2).all(|w| w[1].0 == w[0].0 + 1);
    Ok(BFile {
        entries,
        contiguous,
    })
}

impl BFile {
    pub fn offset(&self) -> Option<i64> {
        self.entries.first().map(|e| e.0)
    }

    /// Values of the leading contiguous run.
    pub fn leading_run(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut expect = self.offset();
        for (n, v) in &self.entries {
            if Some(*n) != expect {
                break;
            }
            out.push(v.clone());
            expect = Some(n + 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix() {
        let b = parse_bfile("1 1\n2 1\n3 2\n").unwrap();
        assert!(b.contiguous);
        assert_eq!(b.entries.len(), 3);
        assert_eq!(b.entries[2], (3, BigInt::from(2)));
    }

    #[test]
    fn comments_and_blanks() {
        let b = parse_bfile("# comment\n\n1 5\n").unwrap();
        assert_eq!(b.entries, vec![(1, BigInt::from(5))]);
    }

    #[test]
    fn gaps_cut_the_run() {
        let b = parse_bfile("1 1\n3 2\n").unwrap();
        assert!(!b.contiguous);
        assert_eq!(b.leading_run(), vec![BigInt::from(1)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_bfile("1 1\nx 2\n"),
            Err(BFileError::Malformed {
                line: 2,
                text: "x 2".into()
            })
        );
        assert_eq!(
            parse_bfile("1 1\n1 2\n"),
            Err(BFileError::Duplicate { line: 2, index: 1 })
        );
        assert_eq!(
            parse_bfile("2 1\n1 2\n"),
            Err(BFileError::Decreasing { line: 2, index: 1 })
        );
        assert!(parse_bfile("1 2 3\n").is_err());
    }

    #[test]
    fn huge_values_and_offsets() {
        let b = parse_bfile("0 1\n1 123456789012345678901234567890\n").unwrap();
        assert_eq!(b.offset(), Some(0));
        assert_eq!(
            b.leading_run()[1].to_string(),
            "123456789012345678901234567890"
        );
    }
}
