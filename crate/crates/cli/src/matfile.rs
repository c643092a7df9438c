//! Whitespace matrix file format.
//!
//! Line 1: `d1 d2` (ASCII decimal). Then `d1` lines of `d2`
//! whitespace-separated decimal reals. Lines starting with `#` are ignored
//! anywhere in the file. Parse errors name the offending 1-based line.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use pgd_core::mat::Mat;

#[derive(Debug)]
pub struct MatFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for MatFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for MatFileError {}

pub fn parse_matrix(text: &str) -> Result<Mat, MatFileError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dims: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match dims {
            None => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(MatFileError {
                        line: line_no,
                        message: format!("expected header `d1 d2`, got {parts:?}"),
                    });
                }
                let d1 = parts[0].parse::<usize>().map_err(|e| MatFileError {
                    line: line_no,
                    message: format!("bad row count {:?}: {e}", parts[0]),
                })?;
                let d2 = parts[1].parse::<usize>().map_err(|e| MatFileError {
                    line: line_no,
                    message: format!("bad column count {:?}: {e}", parts[1]),
                })?;
                if d1 == 0 || d2 == 0 {
                    return Err(MatFileError {
                        line: line_no,
                        message: "matrix dimensions must be positive".into(),
                    });
                }
                dims = Some((d1, d2));
            }
            Some((d1, d2)) => {
                if rows.len() == d1 {
                    return Err(MatFileError {
                        line: line_no,
                        message: format!("extra data after {d1} rows"),
                    });
                }
                let mut row = Vec::with_capacity(d2);
                for tok in line.split_whitespace() {
                    let v = tok.parse::<f64>().map_err(|e| MatFileError {
                        line: line_no,
                        message: format!("bad number {tok:?}: {e}"),
                    })?;
                    row.push(v);
                }
                if row.len() != d2 {
                    return Err(MatFileError {
                        line: line_no,
                        message: format!("expected {d2} entries, got {}", row.len()),
                    });
                }
                rows.push(row);
            }
        }
    }
    let (d1, _) = dims.ok_or(MatFileError {
        line: 1,
        message: "empty file".into(),
    })?;
    if rows.len() != d1 {
        return Err(MatFileError {
            line: text.lines().count() + 1,
            message: format!("expected {d1} rows, got {}", rows.len()),
        });
    }
    Mat::from_rows(&rows).map_err(|e| MatFileError {
        line: 1,
        message: e.to_string(),
    })
}

pub fn read_matrix(path: &Path) -> anyhow::Result<Mat> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    parse_matrix(&text)
        .map_err(|e| anyhow::Error::new(e).context(format!("in {}", path.display())))
}

pub fn write_matrix(path: &Path, m: &Mat) -> anyhow::Result<()> {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let mut file = fs::File::create(path)?;
    file.write_all(out.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# a comment\n2 3\n1 2 3\n# interior comment\n4 5 6\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m[(1, 2)], 6.0);
    }

    #[test]
    fn errors_name_the_line() {
        let text = "2 2\n1 2\n3 oops\n";
        let err = parse_matrix(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("oops"));
    }

    #[test]
    fn wrong_entry_count_is_reported() {
        let text = "2 2\n1 2 3\n4 5\n";
        let err = parse_matrix(text).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn roundtrip_through_file() {
        let dir = std::env::temp_dir().join("pgd_matfile_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.mat");
        let m = Mat::from_rows(&[vec![1.5, -2.25], vec![0.125, 3.0]]).unwrap();
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(m, back);
    }
}
