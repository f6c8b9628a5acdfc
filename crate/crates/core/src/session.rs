//! A space together with its memo tables and evaluation settings.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::genus0::MirrorMaps;
use crate::geometry::SpaceSpec;
use crate::kernel::{GradedSeries, ResidueMethod};
use crate::store::{MemoryStore, ValueStore};

/// How the cluster-star graphs are handled on Calabi-Yau targets, where their
/// contribution is known to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClusterPolicy {
    /// Skip them on Calabi-Yau targets.
    #[default]
    SkipWhenCalabiYau,
    /// Always evaluate them.
    Evaluate,
}

pub struct Session {
    space: SpaceSpec,
    store: Arc<dyn ValueStore>,
    method: ResidueMethod,
    cluster: ClusterPolicy,
    mirror: Mutex<HashMap<usize, Arc<MirrorMaps>>>,
    series: Mutex<HashMap<String, Arc<GradedSeries>>>,
}

impl Session {
    pub fn new(space: SpaceSpec) -> Self {
        Self::with_store(space, Arc::new(MemoryStore::new()))
    }

    pub fn with_store(space: SpaceSpec, store: Arc<dyn ValueStore>) -> Self {
        Session {
            space,
            store,
            method: ResidueMethod::Derivative,
            cluster: ClusterPolicy::default(),
            mirror: Mutex::new(HashMap::new()),
            series: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_method(mut self, method: ResidueMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_cluster_policy(mut self, cluster: ClusterPolicy) -> Self {
        self.cluster = cluster;
        self
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn store(&self) -> &dyn ValueStore {
        self.store.as_ref()
    }

    pub fn method(&self) -> ResidueMethod {
        self.method
    }

    pub fn cluster_policy(&self) -> ClusterPolicy {
        self.cluster
    }

    pub(crate) fn cached_mirror(&self, order: usize) -> Option<Arc<MirrorMaps>> {
        let map = self.mirror.lock().expect("mirror cache poisoned");
        if let Some(m) = map.get(&order) {
            return Some(m.clone());
        }
        None
    }

    /// Memoised series under `key`; the lock is not held while computing.
    pub(crate) fn cached_series(
        &self,
        key: String,
        compute: impl FnOnce() -> Result<GradedSeries>,
    ) -> Result<Arc<GradedSeries>> {
        if let Some(s) = self.series.lock().expect("series cache poisoned").get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(compute()?);
        self.series
            .lock()
            .expect("series cache poisoned")
            .insert(key, s.clone());
        Ok(s)
    }

    pub(crate) fn store_mirror(&self, maps: Arc<MirrorMaps>) {
        self.mirror
            .lock()
            .expect("mirror cache poisoned")
            .insert(maps.order, maps);
    }
}
