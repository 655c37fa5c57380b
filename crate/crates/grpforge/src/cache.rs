//! Advisory on-disk cache of automorphism-group results, one JSON file per
//! multiplication table. Unreadable or mismatched entries are ignored and
//! overwritten.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use grpforge_core::group::ConcreteGroup;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const CACHE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutEntry {
    pub schema: u32,
    pub key: String,
    pub group_order: usize,
    pub aut_order: u64,
    pub inn_order: u64,
    pub out_order: u64,
    pub out_structure: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// An entry existed but could not be used.
    Corrupt,
}

impl Lookup {
    pub fn as_str(self) -> &'static str {
        match self {
            Lookup::Hit => "hit",
            Lookup::Miss => "miss",
            Lookup::Corrupt => "recomputed",
        }
    }
}

/// SHA-256 over the order and the row-major table, as hex.
pub fn table_key(g: &ConcreteGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    for x in g.multiplication_table() {
        h.update(x.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("aut-{key}.json"))
    }

    pub fn load(&self, key: &str) -> (Lookup, Option<AutEntry>) {
        let text = match fs::read_to_string(self.path_for(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return (Lookup::Miss, None),
            Err(_) => return (Lookup::Corrupt, None),
        };
        match serde_json::from_str::<AutEntry>(&text) {
            Ok(e) if e.schema == CACHE_SCHEMA && e.key == key && e.aut_order == e.inn_order * e.out_order => {
                (Lookup::Hit, Some(e))
            }
            _ => (Lookup::Corrupt, None),
        }
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn store(&self, entry: &AutEntry) -> io::Result<()> {
        let path = self.path_for(&entry.key);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(entry).expect("entries serialize"))?;
        fs::rename(tmp, path)
    }
}

impl AutEntry {
    pub fn new(key: String, group_order: usize, aut: u64, inn: u64, out: u64, structure: Option<String>) -> Self {
        Self {
            schema: CACHE_SCHEMA,
            key,
            group_order,
            aut_order: aut,
            inn_order: inn,
            out_order: out,
            out_structure: structure,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let g = ConcreteGroup::cyclic(5);
        let key = table_key(&g);
        assert_eq!(cache.load(&key).0, Lookup::Miss);
        let e = AutEntry::new(key.clone(), 5, 4, 1, 4, Some("C4".into()));
        cache.store(&e).unwrap();
        assert_eq!(cache.load(&key), (Lookup::Hit, Some(e)));
        fs::write(cache.path_for(&key), "{ not json").unwrap();
        assert_eq!(cache.load(&key), (Lookup::Corrupt, None));
        let wrong = AutEntry::new(key.clone(), 5, 4, 1, 3, None);
        cache.store(&wrong).unwrap();
        assert_eq!(cache.load(&key).0, Lookup::Corrupt);
    }

    #[test]
    fn keys_separate_tables() {
        assert_ne!(
            table_key(&ConcreteGroup::cyclic(4)),
            table_key(&ConcreteGroup::cyclic(5))
        );
        assert_eq!(
            table_key(&ConcreteGroup::cyclic(4)),
            table_key(&ConcreteGroup::cyclic(4))
        );
    }
}
