//! JSON instance documents: one window with optional partition,
//! filtration, region, development and generator metadata.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complex::{ComplexError, Region, TriId, Triangle, TriangulatedComplex, Vertex, VertexId};
use crate::covering::{Development, SuspensionInstance};
use crate::geometry::Point;
use crate::relations::{Filtration, FinitePartition, RelationError};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("invalid relation: {0}")]
    Relation(#[from] RelationError),
    #[error("document has no `{0}` block")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

/// `[id, x, y, frontier]`; the flag may be omitted on input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexRow {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub frontier: bool,
}

impl Serialize for VertexRow {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.id, self.x, self.y, self.frontier).serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexRow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Row {
            Full(u32, f64, f64, bool),
            Short(u32, f64, f64),
        }
        Ok(match Row::deserialize(d)? {
            Row::Full(id, x, y, frontier) => VertexRow { id, x, y, frontier },
            Row::Short(id, x, y) => VertexRow { id, x, y, frontier: false },
        })
    }
}

/// `{class_id: [triangle ids]}`.
pub type PartitionBlock = BTreeMap<u32, Vec<u32>>;

/// Rational approximant `p/q` standing in for an irrational slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximant {
    pub alpha: [i64; 2],
    pub beta: [i64; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vertices: Vec<VertexRow>,
    pub triangles: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_index: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<PartitionBlock>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub development: Option<BTreeMap<u32, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_values: Option<BTreeMap<u32, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approximant: Option<Approximant>,
    /// Fiber point of every triangle, for windows of a suspension or a
    /// linear foliation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_labels: Option<BTreeMap<u32, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suspension: Option<SuspensionInstance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_relation: Option<Vec<Vec<u32>>>,
}

pub fn partition_block(p: &FinitePartition) -> PartitionBlock {
    p.classes()
        .iter()
        .enumerate()
        .map(|(k, c)| (k as u32, c.iter().map(|t| t.0).collect()))
        .collect()
}

pub fn partition_from_block(b: &PartitionBlock) -> Result<FinitePartition, RelationError> {
    FinitePartition::from_classes(b.values().map(|ids| ids.iter().map(|&t| TriId(t)).collect::<BTreeSet<_>>()))
}

impl Instance {
    pub fn from_complex(c: &TriangulatedComplex) -> Self {
        Instance {
            vertices: c
                .vertices()
                .iter()
                .map(|v| VertexRow { id: v.id.0, x: v.pos.x, y: v.pos.y, frontier: v.on_frontier })
                .collect(),
            triangles: c.triangles().map(|t| [t.id.0, t.vertices[0].0, t.vertices[1].0, t.vertices[2].0]).collect(),
            period: c.period(),
            ..Default::default()
        }
    }

    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance documents serialize");
        s.push('\n');
        s
    }

    pub fn complex(&self) -> Result<TriangulatedComplex, InstanceError> {
        let vertices = self
            .vertices
            .iter()
            .map(|r| Vertex { id: VertexId(r.id), pos: Point::new(r.x, r.y), on_frontier: r.frontier })
            .collect();
        let triangles = self
            .triangles
            .iter()
            .map(|t| Triangle { id: TriId(t[0]), vertices: [VertexId(t[1]), VertexId(t[2]), VertexId(t[3])] })
            .collect();
        Ok(TriangulatedComplex::new(vertices, triangles, self.period)?)
    }

    pub fn partition(&self) -> Result<FinitePartition, InstanceError> {
        let b = self.partition.as_ref().ok_or(InstanceError::Missing("partition"))?;
        Ok(partition_from_block(b)?)
    }

    pub fn filtration(&self) -> Result<Filtration, InstanceError> {
        let f = self.filtration.as_ref().ok_or(InstanceError::Missing("filtration"))?;
        let steps = f.iter().map(partition_from_block).collect::<Result<Vec<_>, _>>()?;
        Ok(Filtration::new(steps)?)
    }

    pub fn set_filtration(&mut self, f: &Filtration) {
        self.filtration = Some(f.steps().iter().map(partition_block).collect());
    }

    pub fn region(&self) -> Result<Region, InstanceError> {
        let r = self.region.as_ref().ok_or(InstanceError::Missing("region"))?;
        let mut region = Region::from_ids(r.iter().map(|&t| TriId(t)));
        region.leaf_index = self.leaf_index;
        Ok(region)
    }

    /// Development on the triangles all of whose vertices have coordinates.
    pub fn development(&self, c: &TriangulatedComplex) -> Result<Development, InstanceError> {
        let d = self.development.as_ref().ok_or(InstanceError::Missing("development"))?;
        let coords: BTreeMap<VertexId, Point> = d.iter().map(|(&v, &p)| (VertexId(v), Point::from(p))).collect();
        let domain = Region::from_ids(
            c.triangles().filter(|t| t.vertices.iter().all(|v| coords.contains_key(v))).map(|t| t.id),
        );
        Ok(Development::new(domain, coords))
    }

    pub fn set_development(&mut self, d: &Development) {
        self.development = Some(d.coords.iter().map(|(v, p)| (v.0, [p.x, p.y])).collect());
    }

    pub fn boundary_values(&self) -> Option<BTreeMap<VertexId, f64>> {
        self.boundary_values.as_ref().map(|b| b.iter().map(|(&v, &x)| (VertexId(v), x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{block_filtration, grid_disk};

    #[test]
    fn grid_round_trip() {
        let g = grid_disk(2);
        let mut doc = Instance::from_complex(&g);
        doc.set_filtration(&block_filtration(&g, &[1, 2], 3));
        let text = doc.to_json();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        let c = back.complex().unwrap();
        assert_eq!(c.num_triangles(), 32);
        assert_eq!(back.filtration().unwrap().len(), 3);
    }

    #[test]
    fn short_vertex_rows() {
        let doc = Instance::from_json(r#"{"vertices": [[0, 0, 0], [1, 1, 0, true], [2, 0, 1]], "triangles": [[7, 0, 1, 2]]}"#)
            .unwrap();
        assert!(!doc.vertices[0].frontier && doc.vertices[1].frontier);
        assert_eq!(doc.complex().unwrap().num_triangles(), 1);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(Instance::from_json("{\"vertices\": 3}"), Err(InstanceError::Parse(_))));
        assert!(matches!(Instance::from_json("{\"vertices\": [], \"triangles\": [], \"bogus\": 1}"), Err(InstanceError::Parse(_))));
        let doc = Instance::from_json(r#"{"vertices": [[0, 0, 0]], "triangles": [[0, 0, 1, 2]]}"#).unwrap();
        assert!(matches!(doc.complex(), Err(InstanceError::Complex(_))));
    }

    #[test]
    fn odd_floats_round_trip() {
        let mut doc = Instance::from_complex(&grid_disk(1));
        doc.development = Some([(0, [0.1 + 0.2, -1e-300]), (1, [1.0 / 3.0, 2f64.sqrt()])].into_iter().collect());
        assert_eq!(Instance::from_json(&doc.to_json()).unwrap(), doc);
    }
}
