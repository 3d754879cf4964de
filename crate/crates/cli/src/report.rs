//! Line-oriented `key: value` reports with input attribution.

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

/// Accumulates report lines; emitted either plainly or as `#`-prefixed
/// comment lines when the command's stdout doubles as a model file.
#[derive(Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.kv("command", command);
        r
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    /// Records the path and content hash of an input file, so results stay
    /// attributable to exact inputs.
    pub fn input(&mut self, path: &Path, contents: &str) {
        let digest = Sha256::digest(contents.as_bytes());
        self.lines.push(format!("input: {} sha256:{}", path.display(), hex::encode(digest)));
    }

    pub fn emit<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for line in &self.lines {
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn emit_as_comments<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for line in &self.lines {
            writeln!(out, "# {line}")?;
        }
        Ok(())
    }
}
