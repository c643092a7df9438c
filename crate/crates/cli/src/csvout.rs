//! CSV output: RFC-4180-style rows, `.` decimal point, no locale, with a
//! leading comment line binding the file to its configuration hash.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Result;

pub struct CsvWriter {
    buffer: String,
}

impl CsvWriter {
    pub fn new(config_hash: u64, header: &str) -> Self {
        let mut buffer = String::new();
        buffer.push_str(&format!("# config_hash={config_hash:016x}\n"));
        buffer.push_str(header);
        buffer.push('\n');
        CsvWriter { buffer }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buffer.push_str(&fields.join(","));
        self.buffer.push('\n');
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut file = fs::File::create(path)?;
        file.write_all(self.buffer.as_bytes())?;
        Ok(())
    }

    pub fn contents(&self) -> &str {
        &self.buffer
    }
}

/// Shortest-roundtrip decimal rendering of a float (deterministic, exact).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows() {
        let mut w = CsvWriter::new(0xabcd, "a,b");
        w.row(&["1".into(), fmt_f64(0.5)]);
        assert_eq!(w.contents(), "# config_hash=000000000000abcd\na,b\n1,0.5\n");
    }

    #[test]
    fn fmt_roundtrips() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.powi(-40), -13.25] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }
}
