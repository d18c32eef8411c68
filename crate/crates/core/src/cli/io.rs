//! Plain-text matrix and signal files.
//!
//! Matrix: first data line `m n`, then `m` lines of `n` whitespace-separated
//! decimals. Signal: first data line `n K`, then `K` lines `index value` with
//! 1-based indices. Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::Path;

use super::CliError;
use crate::matcore::DenseMatrix;
use crate::pursuit::SparseVector;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

fn header(
    path: &Path,
    line: Option<(usize, &str)>,
    what: &str,
) -> Result<(usize, usize, usize), CliError> {
    let (ln, l) = line.ok_or_else(|| parse_err(path, 0, format!("missing `{what}` header")))?;
    let parts: Vec<&str> = l.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(parse_err(
            path,
            ln,
            format!("expected `{what}`, found `{l}`"),
        ));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| parse_err(path, ln, format!("bad count `{}`", parts[0])))?;
    let b = parts[1]
        .parse()
        .map_err(|_| parse_err(path, ln, format!("bad count `{}`", parts[1])))?;
    Ok((ln, a, b))
}

fn parse_float(path: &Path, line: usize, tok: &str) -> Result<f64, CliError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(path, line, format!("bad number `{tok}`")))?;
    if !v.is_finite() {
        return Err(parse_err(path, line, format!("non-finite number `{tok}`")));
    }
    Ok(v)
}

pub fn parse_matrix(path: &Path, text: &str) -> Result<DenseMatrix, CliError> {
    let mut lines = data_lines(text);
    let (hl, m, n) = header(path, lines.next(), "m n")?;
    if m == 0 || n == 0 {
        return Err(parse_err(path, hl, "matrix dimensions must be positive"));
    }
    let mut entries = Vec::with_capacity(m * n);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if entries.len() == m * n {
            return Err(parse_err(path, ln, format!("extra data after {m} rows")));
        }
        let row: Vec<&str> = l.split_whitespace().collect();
        if row.len() != n {
            return Err(parse_err(
                path,
                ln,
                format!("expected {n} values, found {}", row.len()),
            ));
        }
        for tok in row {
            entries.push(parse_float(path, ln, tok)?);
        }
    }
    if entries.len() != m * n {
        return Err(parse_err(
            path,
            last,
            format!("expected {m} rows, found {}", entries.len() / n),
        ));
    }
    Ok(DenseMatrix::from_row_major(m, n, &entries).expect("validated entries"))
}

pub fn parse_signal(path: &Path, text: &str) -> Result<SparseVector, CliError> {
    let mut lines = data_lines(text);
    let (hl, n, k) = header(path, lines.next(), "n K")?;
    let mut pairs: Vec<(usize, f64)> = Vec::with_capacity(k);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if pairs.len() == k {
            return Err(parse_err(path, ln, format!("extra data after {k} entries")));
        }
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_err(path, ln, "expected `index value`"));
        }
        let idx: usize = parts[0]
            .parse()
            .map_err(|_| parse_err(path, ln, format!("bad index `{}`", parts[0])))?;
        if idx == 0 || idx > n {
            return Err(parse_err(path, ln, format!("index {idx} outside 1..={n}")));
        }
        if pairs.iter().any(|p| p.0 == idx - 1) {
            return Err(parse_err(path, ln, format!("duplicate index {idx}")));
        }
        let v = parse_float(path, ln, parts[1])?;
        if v == 0.0 {
            return Err(parse_err(path, ln, "support values must be nonzero"));
        }
        pairs.push((idx - 1, v));
    }
    if pairs.len() != k {
        return Err(parse_err(
            path,
            last,
            format!("expected {k} entries, found {}", pairs.len()),
        ));
    }
    SparseVector::from_pairs(n, pairs).map_err(|e| parse_err(path, hl, e.to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix, CliError> {
    parse_matrix(path, &read(path)?)
}

pub fn read_signal(path: &Path) -> Result<SparseVector, CliError> {
    parse_signal(path, &read(path)?)
}

/// Shortest round-trip decimal for every entry, so reading back is exact.
pub fn format_matrix(a: &DenseMatrix) -> String {
    let mut s = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|v| format!("{v:?}")).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn format_signal(x: &SparseVector) -> String {
    let mut s = format!("{} {}\n", x.dim(), x.sparsity());
    for (i, v) in x.support().iter().zip(x.values()) {
        s.push_str(&format!("{} {v:?}\n", i + 1));
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("input.txt")
    }

    #[test]
    fn matrix_with_comments() {
        let text = "# sampling matrix\n2 3\n1 0 0.5\n\n# second row\n0 1 -0.5\n";
        let a = parse_matrix(p(), text).unwrap();
        assert_eq!(a.row(1), vec![0.0, 1.0, -0.5]);
    }

    #[test]
    fn matrix_errors_carry_line_numbers() {
        let short = parse_matrix(p(), "2 2\n1 0\n0\n").unwrap_err();
        assert!(
            matches!(short, CliError::Parse { line: 3, .. }),
            "{short:?}"
        );
        let bad = parse_matrix(p(), "1 2\n1 x\n").unwrap_err();
        assert!(matches!(bad, CliError::Parse { line: 2, .. }));
        let missing = parse_matrix(p(), "2 1\n1\n").unwrap_err();
        assert!(matches!(missing, CliError::Parse { line: 2, .. }));
        let extra = parse_matrix(p(), "1 1\n1\n2\n").unwrap_err();
        assert!(matches!(extra, CliError::Parse { line: 3, .. }));
        assert!(matches!(
            parse_matrix(p(), "").unwrap_err(),
            CliError::Parse { line: 0, .. }
        ));
    }

    #[test]
    fn signal_parsing() {
        let x = parse_signal(p(), "5 2\n4 -2\n2 5\n").unwrap();
        assert_eq!(x.support(), &[1, 3]);
        assert_eq!(x.values(), &[5.0, -2.0]);
        assert!(matches!(
            parse_signal(p(), "5 1\n6 1\n"),
            Err(CliError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_signal(p(), "5 2\n1 1\n1 2\n"),
            Err(CliError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_signal(p(), "5 1\n1 0\n"),
            Err(CliError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn written_files_read_back_exactly() {
        let a = DenseMatrix::from_row_major(2, 2, &[1.0 / 3.0, -2f64.sqrt(), 1e-300, 7.0]).unwrap();
        assert_eq!(parse_matrix(p(), &format_matrix(&a)).unwrap(), a);
        let x = SparseVector::new(4, vec![0, 2], vec![-1.0 / 7.0, 3.0]).unwrap();
        assert_eq!(parse_signal(p(), &format_signal(&x)).unwrap(), x);
    }
}
