//! Run provenance: configuration hashing, artifact emission and exit codes.
//!
//! Text artifacts (CSV, TSV, one-per-line lists) start with `# cubesq <version> config <hash>`;
//! JSON artifacts carry a `meta` object; binary artifacts get a `<name>.meta.json` sidecar
//! because their layout has no room for a header.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cubes::DEFAULT_MEMORY_BUDGET;
use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable overriding the memory budget, in bytes.
pub const MEMORY_BUDGET_ENV: &str = "CUBESQ_MEMORY_BUDGET";

/// SHA-256 of the canonical JSON form, hex encoded.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let bytes = serde_json::to_vec(config)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Memory budget in bytes: the environment override if set and valid, else the default.
pub fn memory_budget() -> Result<u128> {
    match std::env::var(MEMORY_BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| Error::Contract(format!("{MEMORY_BUDGET_ENV} = {v:?} is not a byte count"))),
        Err(_) => Ok(DEFAULT_MEMORY_BUDGET),
    }
}

/// Process exit code for an error: 2 capacity, 3 verification or convergence, 4 bad
/// configuration, 1 I/O.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => 2,
        Error::Verification(_) | Error::NonConvergence { .. } => 3,
        Error::DegenerateParams(_)
        | Error::Contract(_)
        | Error::DegeneratePrimeRange { .. }
        | Error::Format(_)
        | Error::Json(_) => 4,
        Error::Io(_) => 1,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
}

impl Provenance {
    pub fn new<T: Serialize>(config: &T) -> Result<Self> {
        Ok(Provenance { tool: "cubesq", version: VERSION, config_hash: config_hash(config)? })
    }

    pub fn header(&self) -> String {
        format!("# {} {} config {}", self.tool, self.version, self.config_hash)
    }
}

/// Writes artifacts to a directory, or text artifacts to a stream when no directory is set.
pub struct Emitter<W: Write> {
    pub provenance: Provenance,
    pub out_dir: Option<PathBuf>,
    pub stdout: W,
    /// Paths written so far.
    pub written: Vec<PathBuf>,
}

impl<W: Write> Emitter<W> {
    pub fn new(provenance: Provenance, out_dir: Option<PathBuf>, stdout: W) -> Result<Self> {
        if let Some(dir) = &out_dir {
            fs::create_dir_all(dir)?;
        }
        Ok(Emitter { provenance, out_dir, stdout, written: Vec::new() })
    }

    fn target(&self, name: &str) -> Option<PathBuf> {
        self.out_dir.as_ref().map(|d| d.join(name))
    }

    fn put(&mut self, name: &str, body: &[u8]) -> Result<()> {
        match self.target(name) {
            Some(path) => {
                fs::write(&path, body)?;
                self.written.push(path);
            }
            None => self.stdout.write_all(body)?,
        }
        Ok(())
    }

    /// A text artifact; `body` must end in a newline or be empty.
    pub fn text(&mut self, name: &str, body: &str) -> Result<()> {
        let full = format!("{}\n{body}", self.provenance.header());
        self.put(name, full.as_bytes())
    }

    /// A JSON artifact; objects gain a `meta` field, other values are wrapped.
    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut v = serde_json::to_value(value)?;
        let meta = serde_json::to_value(&self.provenance)?;
        let v = match v {
            serde_json::Value::Object(ref mut map) => {
                map.insert("meta".into(), meta);
                v
            }
            other => serde_json::json!({ "meta": meta, "result": other }),
        };
        let mut body = serde_json::to_string_pretty(&v)?;
        body.push('\n');
        self.put(name, body.as_bytes())
    }

    /// A binary artifact plus its `.meta.json` sidecar; needs an output directory.
    pub fn binary(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let Some(path) = self.target(name) else {
            return Err(Error::Contract(format!("binary artifact {name} needs --out")));
        };
        fs::write(&path, bytes)?;
        let sidecar = sidecar_path(&path);
        let mut meta = serde_json::to_string_pretty(&self.provenance)?;
        meta.push('\n');
        fs::write(&sidecar, meta)?;
        self.written.push(path);
        self.written.push(sidecar);
        Ok(())
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    path.with_file_name(name)
}
