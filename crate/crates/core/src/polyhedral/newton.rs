//! Newton polyhedra `conv(support) + recession`, their normal fans and Newton cones.

use std::collections::BTreeSet;

use num_traits::Signed;

use super::cone::Cone;
use super::fan::Fan;
use super::plset::PlSet;
use crate::arith::{dot_qz, rank_z, to_q, Q, Z};
use crate::error::{precondition, schema, Result};

/// The Newton polyhedron of a finite point set with a pointed recession cone.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    n: usize,
    vertices: Vec<Vec<Z>>,
    normal_cones: Vec<Cone>,
    recession: Cone,
    sigma: Cone,
}

/// A face of a Newton polyhedron, described by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyFace {
    pub vertices: Vec<Vec<Z>>,
    pub bounded: bool,
}

impl PolyFace {
    pub fn dim(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[0];
        let diffs: Vec<Vec<Z>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        rank_z(&diffs, base.len())
    }
}

impl NewtonPolyhedron {
    /// `recession` must be full-dimensional and pointed (its dual is then full-dimensional).
    pub fn new(points: &[Vec<Z>], recession: &Cone) -> Result<NewtonPolyhedron> {
        if points.is_empty() {
            return schema("the zero polynomial has no Newton polyhedron");
        }
        if !recession.is_pointed() || !recession.is_full_dim() {
            return precondition("the recession cone must be pointed and full-dimensional");
        }
        let n = recession.ambient_dim();
        let sigma = recession.dual();
        let mut pts: Vec<Vec<Z>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut vertices = Vec::new();
        let mut normal_cones = Vec::new();
        for p in &pts {
            let ineqs: Vec<Vec<Z>> = pts
                .iter()
                .filter(|q| *q != p)
                .map(|q| q.iter().zip(p).map(|(a, b)| a - b).collect())
                .collect();
            let nc = sigma.restrict(&ineqs, &[]);
            if nc.dim() == n {
                vertices.push(p.clone());
                normal_cones.push(nc);
            }
        }
        Ok(NewtonPolyhedron {
            n,
            vertices,
            normal_cones,
            recession: recession.clone(),
            sigma,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Z>] {
        &self.vertices
    }

    pub fn recession(&self) -> &Cone {
        &self.recession
    }

    /// The dual of the recession cone, where weight vectors live.
    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    /// Normal cone of each vertex inside `sigma`, in vertex order.
    pub fn vertex_normal_cones(&self) -> &[Cone] {
        &self.normal_cones
    }

    /// The face where `<w, .>` is minimized.
    pub fn face_cut_by(&self, w: &[Q]) -> Result<PolyFace> {
        if w.len() != self.n {
            return schema("weight has the wrong length");
        }
        if !self.sigma.contains_point_q(w) {
            return precondition("weight is negative on the recession cone");
        }
        let vals: Vec<Q> = self.vertices.iter().map(|v| dot_qz(w, v)).collect();
        let min = vals.iter().min().cloned().unwrap_or_default();
        let vertices: Vec<Vec<Z>> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, x)| **x == min)
            .map(|(v, _)| v.clone())
            .collect();
        let bounded = self
            .recession
            .rays()
            .iter()
            .all(|r| dot_qz(w, r).is_positive());
        Ok(PolyFace { vertices, bounded })
    }

    /// Normal fan restricted to `sigma`: the vertex normal cones and all their faces.
    pub fn normal_fan(&self) -> Fan {
        Fan::from_maximal(self.n, &self.normal_cones)
    }

    /// All compact faces (the Newton diagram together with its vertices).
    pub fn compact_faces(&self) -> Vec<PolyFace> {
        let fan = self.normal_fan();
        let mut out: BTreeSet<PolyFace> = BTreeSet::new();
        for c in fan.cones() {
            let w = to_q(&c.relint_point());
            let f = self.face_cut_by(&w).expect("relint point lies in sigma");
            if f.bounded {
                out.insert(f);
            }
        }
        out.into_iter().collect()
    }

    /// Weights whose minimizing face meets the compact part in positive dimension.
    pub fn newton_cone(&self) -> PlSet {
        let fan = self.normal_fan();
        let pieces: Vec<Cone> = fan
            .cones()
            .iter()
            .filter(|c| {
                let w = to_q(&c.relint_point());
                self.face_cut_by(&w)
                    .map(|f| f.vertices.len() >= 2)
                    .unwrap_or(false)
            })
            .cloned()
            .collect();
        PlSet::from_pieces(self.n, pieces)
    }
}
