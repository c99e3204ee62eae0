//! Fans of rational cones: face closure, axiom checks and common refinements.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::cone::Cone;
use super::plset::PlSet;
use crate::error::{precondition, Result};

/// A finite set of cones closed under taking faces, stored sorted by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// The fan formed by the given cones together with all their faces.
    pub fn from_maximal(n: usize, maximal: &[Cone]) -> Fan {
        let set: BTreeSet<Cone> = maximal.par_iter().flat_map(|c| c.faces()).collect();
        Fan {
            n,
            cones: set.into_iter().collect(),
        }
    }

    /// Builds a fan from an explicit list without closing it under faces, for checking.
    pub fn from_cones_unchecked(n: usize, mut cones: Vec<Cone>) -> Fan {
        cones.sort();
        cones.dedup();
        Fan { n, cones }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    /// Cones that are not a proper face of another cone of the fan.
    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.contains(c))
            })
            .cloned()
            .collect()
    }

    /// Indices of the codimension-one faces of cone `i`.
    pub fn facet_indices(&self, i: usize) -> Vec<usize> {
        let c = &self.cones[i];
        let mut v: Vec<usize> = c
            .facet_cones()
            .iter()
            .filter_map(|f| self.index_of(f))
            .collect();
        v.sort();
        v
    }

    /// Checks face closure and that any two maximal cones meet in a common face.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let set: BTreeSet<&Cone> = self.cones.iter().collect();
        for c in &self.cones {
            if c.ambient_dim() != self.n {
                return Err("cone with wrong ambient dimension".into());
            }
            for f in c.faces() {
                if !set.contains(&f) {
                    return Err(format!("face {:?} of a cone is missing", f.rays()));
                }
            }
        }
        let max = self.maximal_cones();
        let pairs: Vec<(usize, usize)> = (0..max.len())
            .flat_map(|i| ((i + 1)..max.len()).map(move |j| (i, j)))
            .collect();
        let bad = pairs.par_iter().find_any(|&&(i, j)| {
            let k = max[i].intersect(&max[j]);
            !(k.is_face_of(&max[i]) && k.is_face_of(&max[j]))
        });
        match bad {
            Some((i, j)) => Err(format!(
                "cones {:?} and {:?} do not meet in a common face",
                max[*i].rays(),
                max[*j].rays()
            )),
            None => Ok(()),
        }
    }

    /// Union of the cones as a piecewise-linear set.
    pub fn support(&self) -> PlSet {
        PlSet::from_pieces(self.n, self.maximal_cones())
    }

    /// Coarsest fan refining every input fan, restricted to `within`.
    pub fn common_refinement(fans: &[Fan], within: &Cone) -> Result<Fan> {
        let n = within.ambient_dim();
        let target = within.dim();
        let w = PlSet::from_pieces(n, vec![within.clone()]);
        for f in fans {
            if f.n != n {
                return precondition("fans live in different ambient spaces");
            }
            if !w.is_subset(&f.support()) {
                return precondition("a fan does not cover the refinement domain");
            }
        }
        let mut cells: Vec<Cone> = vec![within.clone()];
        for f in fans {
            let max: Vec<Cone> = f
                .maximal_cones()
                .into_iter()
                .filter(|c| c.dim() >= target)
                .collect();
            let next: BTreeSet<Cone> = cells
                .par_iter()
                .flat_map_iter(|a| {
                    max.iter()
                        .map(move |b| a.intersect(b))
                        .filter(|k| k.dim() == target)
                        .collect::<Vec<_>>()
                })
                .collect();
            cells = next.into_iter().collect();
        }
        Ok(Fan::from_maximal(n, &cells))
    }
}
