use std::env;
use std::fs;
use std::path::PathBuf;

use csm_core::{CartanData, Error};

pub const ENV_VAR: &str = "CSM_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".csm-cache";

pub struct Key<'a> {
    pub kind: &'a str,
    pub cartan: &'a CartanData,
    pub w: String,
    pub v: Option<String>,
    pub format: &'a str,
}

impl Key<'_> {
    fn file_name(&self) -> String {
        // Labels are not unique for hand-written matrices, so the matrix is always part of the key.
        let matrix: Vec<String> = self.cartan.matrix().iter().flatten().map(|a| a.to_string()).collect();
        let raw = format!(
            "{}__{}__{}__w-{}__v-{}.{}",
            self.kind,
            self.cartan.label().unwrap_or("custom"),
            matrix.join("_"),
            self.w,
            self.v.as_deref().unwrap_or("all"),
            self.format
        );
        raw.chars()
            .map(|c| if c.is_ascii_alphanumeric() || "_.-".contains(c) { c } else { 'x' })
            .collect()
    }
}

/// Rendered tables on disk; single writer, last write wins.
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    /// Enabled by `--cache` or by setting the environment variable.
    pub fn from_flag(flag: bool) -> Option<Self> {
        let from_env = env::var_os(ENV_VAR).filter(|v| !v.is_empty());
        if !flag && from_env.is_none() {
            return None;
        }
        let dir = from_env.map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Some(ResultCache { dir })
    }

    pub fn get(&self, key: &Key) -> Option<String> {
        fs::read_to_string(self.dir.join(key.file_name())).ok()
    }

    pub fn put(&self, key: &Key, text: &str) -> Result<(), Error> {
        let io = |e: std::io::Error| Error::Parse(format!("cache {}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let path = self.dir.join(key.file_name());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }
}
