//! Plain-text archives of generator matrices.
//!
//! ```text
//! q n k count
//! #task <fingerprint>        (optional)
//! <k lines of n symbols>     one block per code,
//!                            each followed by an empty line
//! #complete                  or #partial
//! ```
//!
//! Symbols are field element indices `0..q` written as single digits.
//! Matrices are systematic, as produced by
//! [`LinearCode::to_systematic_generator_matrix`].

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::classify::ClassificationResult;
use crate::code::{CodeError, GeneratorMatrix, LinearCode};

#[derive(Debug, Error)]
pub enum ArchiveError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn parse_err(line: usize, message: impl Into<String>) -> ArchiveError {
    ArchiveError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeArchive {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub matrices: Vec<GeneratorMatrix>,
    pub complete: bool,
    pub task: Option<String>,
}

impl CodeArchive {
    pub fn new(q: u32, n: usize, k: usize) -> Self {
        CodeArchive {
            q,
            n,
            k,
            matrices: Vec::new(),
            complete: true,
            task: None,
        }
    }

    pub fn from_codes(q: u32, n: usize, k: usize, codes: &[LinearCode], complete: bool, task: Option<String>) -> Self {
        CodeArchive {
            q,
            n,
            k,
            matrices: codes.iter().map(|c| c.to_systematic_generator_matrix()).collect(),
            complete,
            task,
        }
    }

    pub fn count(&self) -> usize {
        self.matrices.len()
    }

    pub fn to_codes(&self) -> Result<Vec<LinearCode>, ArchiveError> {
        self.matrices
            .iter()
            .map(|m| LinearCode::from_generator_matrix(m).map_err(ArchiveError::from))
            .collect()
    }

    pub fn read(path: &Path) -> Result<Self, ArchiveError> {
        fs::read_to_string(path)?.parse()
    }

    pub fn write(&self, path: &Path) -> Result<(), ArchiveError> {
        write_atomic(path, &self.to_string())
    }
}

impl fmt::Display for CodeArchive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.q, self.n, self.k, self.matrices.len())?;
        if let Some(t) = &self.task {
            writeln!(f, "#task {t}")?;
        }
        for m in &self.matrices {
            for row in m.to_strings() {
                writeln!(f, "{row}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "{}", if self.complete { "#complete" } else { "#partial" })
    }
}

impl FromStr for CodeArchive {
    type Err = ArchiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = s.lines().collect();
        let header = lines.first().ok_or_else(|| parse_err(1, "empty archive"))?;
        let fields: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(1, format!("bad header field {t:?}"))))
            .collect::<Result<_, _>>()?;
        let &[q, n, k, count] = fields.as_slice() else {
            return Err(parse_err(1, "header must be `q n k count`"));
        };
        if k == 0 || n == 0 {
            return Err(parse_err(1, "n and k must be positive"));
        }
        let mut arch = CodeArchive::new(q as u32, n, k);
        let mut i = 1;
        if let Some(rest) = lines.get(i).and_then(|l| l.strip_prefix("#task ")) {
            arch.task = Some(rest.trim().to_string());
            i += 1;
        }
        let mut footer = None;
        while i < lines.len() {
            let line = lines[i];
            if line.starts_with('#') {
                footer = Some((i, line));
                break;
            }
            if i + k > lines.len() {
                return Err(parse_err(i + 1, "truncated matrix"));
            }
            let rows = &lines[i..i + k];
            if let Some(bad) = rows.iter().position(|r| r.len() != n) {
                return Err(parse_err(i + bad + 1, format!("expected {n} symbols")));
            }
            let m = GeneratorMatrix::from_strings(q as u32, rows).map_err(|e| parse_err(i + 1, e.to_string()))?;
            LinearCode::from_generator_matrix(&m).map_err(|e| parse_err(i + 1, e.to_string()))?;
            arch.matrices.push(m);
            i += k;
            if lines.get(i) != Some(&"") {
                return Err(parse_err(i + 1, "expected an empty line after a matrix"));
            }
            i += 1;
        }
        let Some((at, marker)) = footer else {
            return Err(parse_err(lines.len(), "missing #complete or #partial footer"));
        };
        arch.complete = match marker.trim() {
            "#complete" => true,
            "#partial" => false,
            other => return Err(parse_err(at + 1, format!("unknown footer {other:?}"))),
        };
        if at + 1 != lines.len() {
            return Err(parse_err(at + 2, "content after footer"));
        }
        if arch.matrices.len() != count {
            return Err(parse_err(1, format!("header announces {count} codes, found {}", arch.matrices.len())));
        }
        Ok(arch)
    }
}

/// Writes via a temporary file and a rename, so readers never see half a cell.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), ArchiveError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// `n<TAB>k<TAB>count<TAB>complete` rows after a header line.
pub fn count_table(result: &ClassificationResult) -> String {
    let mut s = String::from("n\tk\tcount\tcomplete\n");
    for (&(n, k), cell) in &result.cells {
        s.push_str(&format!("{n}\t{k}\t{}\t{}\n", cell.count, u8::from(cell.complete)));
    }
    s
}

pub fn write_count_table(path: &Path, result: &ClassificationResult) -> Result<(), ArchiveError> {
    write_atomic(path, &count_table(result))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "2 7 2 1\n#task 00ff\n1011111\n0100111\n\n#complete\n";
        let arch: CodeArchive = text.parse().unwrap();
        assert_eq!(arch.count(), 1);
        assert_eq!(arch.task.as_deref(), Some("00ff"));
        assert_eq!(arch.to_string(), text);
        let empty = "3 41 2 0\n#partial\n";
        let arch: CodeArchive = empty.parse().unwrap();
        assert!(!arch.complete);
        assert_eq!(arch.to_string(), empty);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "2 7 2\n#complete\n",
            "2 7 2 2\n1011111\n0100111\n\n#complete\n",
            "2 7 2 1\n1011111\n010011\n\n#complete\n",
            "2 7 2 1\n1011111\n0100111\n\n",
            "2 3 1 1\n000\n\n#complete\n",
            "2 3 1 1\n121\n\n#complete\n",
            "2 3 1 1\n111\n\n#done\n",
        ] {
            assert!(bad.parse::<CodeArchive>().is_err(), "{bad:?}");
        }
    }
}
