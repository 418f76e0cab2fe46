//! JSON exchange formats for trees and covers.
//!
//! ```json
//! {"vertices": [{"id": "a", "geometry": "seifert"}],
//!  "edges": [{"u": "a", "v": "b", "label_beyond_u": "st", "label_beyond_v": "other"}]}
//! ```
//!
//! `label_beyond_u` names the region on the far side of the torus from `u`,
//! the side containing `v`. A cover adds
//! `"involution": {"vertex_map": {"a": "a", "b1": "b2", "b2": "b1"}}`;
//! vertices missing from the map are fixed, and the edge map is induced.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::tree::{Geometry, Region};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawVertex {
    pub id: String,
    pub geometry: Geometry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub u: String,
    pub v: String,
    pub label_beyond_u: Region,
    pub label_beyond_v: Region,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTree {
    pub vertices: Vec<RawVertex>,
    #[serde(default)]
    pub edges: Vec<RawEdge>,
}

impl RawTree {
    pub fn vertex(&mut self, id: impl Into<String>, geometry: Geometry) -> &mut Self {
        self.vertices.push(RawVertex {
            id: id.into(),
            geometry,
        });
        self
    }

    pub fn edge(
        &mut self,
        u: impl Into<String>,
        v: impl Into<String>,
        label_beyond_u: Region,
        label_beyond_v: Region,
    ) -> &mut Self {
        self.edges.push(RawEdge {
            u: u.into(),
            v: v.into(),
            label_beyond_u,
            label_beyond_v,
        });
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInvolution {
    pub vertex_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCover {
    #[serde(flatten)]
    pub tree: RawTree,
    pub involution: RawInvolution,
}

pub fn parse_tree(json: &str) -> serde_json::Result<RawTree> {
    serde_json::from_str(json)
}

pub fn parse_cover(json: &str) -> serde_json::Result<RawCover> {
    serde_json::from_str(json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tree() {
        let raw = parse_tree(
            r#"{"vertices": [{"id": "a", "geometry": "hyperbolic"}, {"id": "b", "geometry": "seifert"}],
                "edges": [{"u": "a", "v": "b", "label_beyond_u": "khb", "label_beyond_v": "other"}]}"#,
        )
        .unwrap();
        assert_eq!(raw.vertices.len(), 2);
        assert_eq!(raw.edges[0].label_beyond_u, Region::KnottedHoleBall);
    }

    #[test]
    fn edges_default_to_empty() {
        let raw = parse_tree(r#"{"vertices": [{"id": "v", "geometry": "seifert"}]}"#).unwrap();
        assert!(raw.edges.is_empty());
    }

    #[test]
    fn rejects_unknown_labels() {
        assert!(parse_tree(
            r#"{"vertices": [], "edges": [{"u": "a", "v": "b", "label_beyond_u": "ball", "label_beyond_v": "st"}]}"#
        )
        .is_err());
    }

    #[test]
    fn parses_cover() {
        let raw = parse_cover(
            r#"{"vertices": [{"id": "a", "geometry": "seifert"}],
                "involution": {"vertex_map": {"a": "a"}}}"#,
        )
        .unwrap();
        assert_eq!(raw.involution.vertex_map["a"], "a");
    }
}
