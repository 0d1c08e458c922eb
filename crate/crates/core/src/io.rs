//! Plain-text instance files.
//!
//! ```text
//! 3
//! 0 1.5 2
//! 1.5 0 4
//! 2 4 0
//! ```
//!
//! The first line holds `n`; each of the following `n` lines holds the
//! benefits of one agent, whitespace separated. Blank lines are ignored.

use std::io::{BufRead, Write};

use crate::error::{LsapError, Result};
use crate::model::Instance;

pub fn write_instance<W: Write>(inst: &Instance, mut sink: W) -> Result<()> {
    let n = inst.n();
    writeln!(sink, "{n}")?;
    let mut line = String::new();
    for i in 0..n {
        line.clear();
        for (k, v) in inst.agent_row(i).iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            // Display for f64 is the shortest representation that round-trips.
            line.push_str(&v.to_string());
        }
        writeln!(sink, "{line}")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn read_instance<R: BufRead>(source: R) -> Result<Instance> {
    let mut lines = source
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let (header_line, header) = match lines.next() {
        Some((k, l)) => (k, l?),
        None => {
            return Err(LsapError::Parse {
                line: 1,
                message: "missing header (problem size)".into(),
            })
        }
    };
    let n: usize = header.trim().parse().map_err(|_| LsapError::Parse {
        line: header_line,
        message: format!("header must be a positive integer, got {:?}", header.trim()),
    })?;
    if n == 0 {
        return Err(LsapError::Parse {
            line: header_line,
            message: "problem size must be at least 1".into(),
        });
    }

    let mut benefits = Vec::with_capacity(n * n);
    let mut last_line = header_line;
    for row in 0..n {
        let (k, l) = match lines.next() {
            Some((k, l)) => (k, l?),
            None => {
                return Err(LsapError::Parse {
                    line: last_line + 1,
                    message: format!("expected {n} rows, found {row}"),
                })
            }
        };
        last_line = k;
        let before = benefits.len();
        for tok in l.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| LsapError::Parse {
                line: k,
                message: format!("not a number: {tok:?}"),
            })?;
            if !v.is_finite() {
                return Err(LsapError::Parse {
                    line: k,
                    message: format!("non-finite value: {tok:?}"),
                });
            }
            benefits.push(v);
        }
        let got = benefits.len() - before;
        if got != n {
            return Err(LsapError::Parse {
                line: k,
                message: format!("expected {n} entries, found {got}"),
            });
        }
    }
    if let Some((k, _)) = lines.next() {
        return Err(LsapError::Parse {
            line: k,
            message: format!("unexpected data after {n} rows"),
        });
    }
    Instance::new(n, benefits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{generate_geom, GeomParams};

    fn parse(text: &str) -> Result<Instance> {
        read_instance(text.as_bytes())
    }

    #[test]
    fn round_trip_generated() {
        let inst = generate_geom(&GeomParams::new(16, 100.0, 5).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_instance(&inst, &mut buf).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.n(), 16);
        for (a, b) in inst.as_row_major().iter().zip(back.as_row_major()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn short_row_names_its_line() {
        let err = parse("3\n1 2 3\n4 5\n7 8 9\n").unwrap_err();
        assert!(matches!(err, LsapError::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn empty_file_is_missing_header() {
        let err = parse("").unwrap_err();
        assert!(matches!(err, LsapError::Parse { line: 1, .. }));
    }

    #[test]
    fn bad_tokens() {
        assert!(matches!(
            parse("2\n1 x\n3 4\n").unwrap_err(),
            LsapError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("two\n").unwrap_err(),
            LsapError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse("2\n1 2\n").unwrap_err(),
            LsapError::Parse { line: 3, .. }
        ));
        assert!(matches!(
            parse("1\n1\n2\n").unwrap_err(),
            LsapError::Parse { line: 3, .. }
        ));
        assert!(parse("1\ninf\n").is_err());
    }

    #[test]
    fn blank_lines_are_skipped() {
        let inst = parse("\n2\n\n1 2\n3 4\n\n").unwrap();
        assert_eq!(inst.benefit(1, 0), 3.0);
    }
}
