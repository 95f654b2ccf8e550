//! Content-addressed on-disk store for built objects.
//!
//! Each entry is a JSON envelope named by the SHA-256 of its key material.
//! The envelope repeats the key and carries a hash of the payload text, so a
//! truncated or edited file is reported as an integrity failure instead of
//! being silently rebuilt. Writes go to a temporary file in the same
//! directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CACHE_SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema: u32,
    kind: String,
    key: String,
    payload_sha256: String,
    payload: serde_json::Value,
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Clone, Debug)]
pub struct Store {
    dir: PathBuf,
}

impl Store {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Store {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, kind: &str, key: &str) -> PathBuf {
        let name = sha256_hex(format!("{kind}\n{key}").as_bytes());
        self.dir.join(format!("{kind}-{name}.json"))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Result<Option<T>> {
        let path = self.path_for(kind, key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let fail = |why: &str| Error::Integrity(format!("{}: {why}", path.display()));
        let env: Envelope = serde_json::from_str(&text).map_err(|_| fail("not a cache envelope"))?;
        if env.schema != CACHE_SCHEMA {
            return Err(fail("unknown schema version"));
        }
        if env.kind != kind || env.key != key {
            return Err(fail("key mismatch"));
        }
        let payload_text = serde_json::to_string(&env.payload)?;
        if sha256_hex(payload_text.as_bytes()) != env.payload_sha256 {
            return Err(fail("payload hash mismatch"));
        }
        serde_json::from_value(env.payload)
            .map(Some)
            .map_err(|_| fail("payload does not decode"))
    }

    pub fn save<T: Serialize>(&self, kind: &str, key: &str, value: &T) -> Result<()> {
        let payload = serde_json::to_value(value)?;
        let payload_text = serde_json::to_string(&payload)?;
        let env = Envelope {
            schema: CACHE_SCHEMA,
            kind: kind.to_string(),
            key: key.to_string(),
            payload_sha256: sha256_hex(payload_text.as_bytes()),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&env)?.as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path_for(kind, key))
            .map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    /// Re-read every entry and report the ones that fail verification.
    pub fn verify_all(&self) -> Result<Vec<(PathBuf, Error)>> {
        let mut bad = Vec::new();
        let mut entries: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        entries.sort();
        for path in entries {
            let text = fs::read_to_string(&path)?;
            let check = || -> Result<()> {
                let env: Envelope = serde_json::from_str(&text)
                    .map_err(|_| Error::Integrity("not a cache envelope".into()))?;
                let payload_text = serde_json::to_string(&env.payload)?;
                if sha256_hex(payload_text.as_bytes()) != env.payload_sha256 {
                    return Err(Error::Integrity("payload hash mismatch".into()));
                }
                if self.path_for(&env.kind, &env.key) != path {
                    return Err(Error::Integrity("file name does not match key".into()));
                }
                Ok(())
            };
            if let Err(e) = check() {
                bad.push((path, e));
            }
        }
        Ok(bad)
    }
}
