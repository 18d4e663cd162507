//! Run manifests and the on-disk output cache.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// SHA-256 of the output bytes.
    pub digest: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, output: &[u8]) -> Self {
        RunManifest {
            command: command.into(),
            parameters,
            version: paramedial::VERSION.into(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            digest: sha256_hex(output),
        }
    }

    /// `<out>.manifest.json`
    pub fn path_for(out: &Path) -> PathBuf {
        let mut name = out.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        out.with_file_name(name)
    }

    pub fn write_next_to(&self, out: &Path) -> io::Result<PathBuf> {
        let path = Self::path_for(out);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}

/// Output cache keyed by command, parameters and library version.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn key(command: &str, parameters: &BTreeMap<String, String>) -> String {
        let canonical = serde_json::json!({
            "command": command,
            "parameters": parameters,
            "version": paramedial::VERSION,
        });
        sha256_hex(canonical.to_string().as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get(&self, key: &str) -> Option<Vec<u8>> {
        fs::read(self.path(key)).ok()
    }

    /// Written to a temporary name first so readers never see a partial entry.
    pub fn put(&self, key: &str, bytes: &[u8]) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, self.path(key))
    }
}
