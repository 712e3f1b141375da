use nalgebra::DVector;

use crate::linalg::max_abs_diff;
use crate::scalarize::ScalarizationResult;

/// Vertices closer than this are the same cache key.
const KEY_TOL: f64 = 1e-9;

pub(super) struct Entry {
    pub vertex: DVector<f64>,
    pub euclid: ScalarizationResult,
    /// Latest solve in the selection metric, tagged with the metric version.
    pub metric: Option<(usize, ScalarizationResult)>,
}

/// Per-vertex scalarization results that survive cuts.
#[derive(Default)]
pub(super) struct DistanceCache {
    entries: Vec<Entry>,
}

impl DistanceCache {
    fn position(&self, v: &DVector<f64>) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| max_abs_diff(&e.vertex, v) <= KEY_TOL)
    }

    pub fn get(&self, v: &DVector<f64>) -> Option<&Entry> {
        self.position(v).map(|i| &self.entries[i])
    }

    pub fn get_mut(&mut self, v: &DVector<f64>) -> Option<&mut Entry> {
        self.position(v).map(move |i| &mut self.entries[i])
    }

    pub fn insert(&mut self, vertex: DVector<f64>, euclid: ScalarizationResult) {
        self.entries.push(Entry {
            vertex,
            euclid,
            metric: None,
        });
    }

    /// Drops entries whose vertex is no longer present.
    pub fn retain(&mut self, vertices: &[DVector<f64>]) {
        self.entries.retain(|e| {
            vertices
                .iter()
                .any(|v| max_abs_diff(&e.vertex, v) <= KEY_TOL)
        });
    }
}
