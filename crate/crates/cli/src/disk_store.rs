//! Append-only on-disk value cache.
//!
//! One `key<TAB>value` line per entry. Lines are appended with a single
//! write, so concurrent writers of the same key leave duplicate but
//! identical lines, which collapse on the next load.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{Context, Result};
use evsc_core::kernel::rational::{format_rational, parse_rational};
use evsc_core::store::ValueStore;
use evsc_core::Rational;

pub const FILE_NAME: &str = "values.tsv";

pub struct DiskStore {
    path: PathBuf,
    map: Mutex<HashMap<String, Rational>>,
}

fn parse_file(path: &Path) -> std::result::Result<HashMap<String, Rational>, String> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(e) => return Err(e.to_string()),
    };
    let mut map = HashMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('\t')
            .ok_or_else(|| format!("line {}: no tab", i + 1))?;
        let value =
            parse_rational(value).ok_or_else(|| format!("line {}: bad value {value:?}", i + 1))?;
        if let Some(old) = map.insert(key.to_string(), value.clone()) {
            if old != value {
                return Err(format!("line {}: conflicting values for {key}", i + 1));
            }
        }
    }
    Ok(map)
}

impl DiskStore {
    /// Opens (or creates) the cache in `dir`. A corrupt file is discarded
    /// with a warning and the cache starts empty.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        let path = dir.join(FILE_NAME);
        let map = match parse_file(&path) {
            Ok(map) => map,
            Err(reason) => {
                log::warn!(
                    "cache file {} is corrupt ({reason}); rebuilding from scratch",
                    path.display()
                );
                fs::remove_file(&path).with_context(|| format!("removing {}", path.display()))?;
                HashMap::new()
            }
        };
        log::debug!("cache {} holds {} values", path.display(), map.len());
        Ok(DiskStore {
            path,
            map: Mutex::new(map),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Entries sorted by key.
    pub fn entries(&self) -> Vec<(String, Rational)> {
        let map = self.map.lock().expect("cache lock poisoned");
        let mut v: Vec<_> = map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn clear(&self) -> Result<()> {
        self.map.lock().expect("cache lock poisoned").clear();
        match fs::remove_file(&self.path) {
            Err(e) if e.kind() != std::io::ErrorKind::NotFound => {
                Err(e).with_context(|| format!("removing {}", self.path.display()))
            }
            _ => Ok(()),
        }
    }

    fn append(&self, key: &str, value: &Rational) -> std::io::Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        f.write_all(format!("{key}\t{}\n", format_rational(value)).as_bytes())
    }
}

impl ValueStore for DiskStore {
    fn get(&self, key: &str) -> Option<Rational> {
        self.map
            .lock()
            .expect("cache lock poisoned")
            .get(key)
            .cloned()
    }

    fn put(&self, key: &str, value: &Rational) {
        let mut map = self.map.lock().expect("cache lock poisoned");
        if map.get(key) == Some(value) {
            return;
        }
        if let Err(e) = self.append(key, value) {
            log::warn!("could not write to {}: {e}", self.path.display());
        }
        map.insert(key.to_string(), value.clone());
    }

    fn len(&self) -> usize {
        self.map.lock().expect("cache lock poisoned").len()
    }
}
