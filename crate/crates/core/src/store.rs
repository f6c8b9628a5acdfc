//! Key-value storage for computed constants.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::kernel::Rational;

/// Memo table shared by every computation in a [`Session`](crate::session::Session).
///
/// Writes must be idempotent: storing a value twice under one key is harmless.
pub trait ValueStore: Send + Sync {
    fn get(&self, key: &str) -> Option<Rational>;
    fn put(&self, key: &str, value: &Rational);
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Default)]
pub struct MemoryStore {
    map: RwLock<HashMap<String, Rational>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshot(&self) -> Vec<(String, Rational)> {
        let map = self.map.read().expect("store lock poisoned");
        let mut v: Vec<_> = map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

impl ValueStore for MemoryStore {
    fn get(&self, key: &str) -> Option<Rational> {
        self.map
            .read()
            .expect("store lock poisoned")
            .get(key)
            .cloned()
    }

    fn put(&self, key: &str, value: &Rational) {
        self.map
            .write()
            .expect("store lock poisoned")
            .insert(key.to_string(), value.clone());
    }

    fn len(&self) -> usize {
        self.map.read().expect("store lock poisoned").len()
    }
}
