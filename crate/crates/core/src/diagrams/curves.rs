//! Dual curves and the labelling laws they obey.
//!
//! A dual curve runs through edge midpoints: straight across a square (from
//! a side to the opposite side) and three ways through the centre of a
//! triangle. Curves are the components of the incidence graph whose nodes
//! are the edges and the triangle centres, so every edge lies on exactly
//! one curve.

use std::collections::HashMap;
use std::fmt;

use super::{Diagram, UnionFind};
use crate::words::{GraphProduct, Syllable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveShape {
    /// Connected and 2-regular: never meets the boundary.
    Circle,
    /// Acyclic.
    Tree,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCurve {
    /// Crossed edges, each given by its smaller dart, sorted.
    pub edges: Vec<usize>,
    /// Triangles on the curve, each given by its smallest dart.
    pub singularities: Vec<usize>,
    /// The vertex labelling every crossed edge, if they agree.
    pub label: Option<usize>,
    pub shape: CurveShape,
}

impl DualCurve {
    pub fn is_regular(&self) -> bool {
        self.singularities.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    /// All edges crossed by one curve carry the same vertex.
    CurveLabel,
    /// Two curves crossing in a square carry adjacent vertices.
    TransverseLabels,
    /// Opposite sides of a square, read in the same direction, carry the
    /// same element.
    ParallelLabels,
    /// In a disc diagram every curve is a circle or a tree.
    CirclesOrTrees,
    /// A graphically reduced boundary segment is crossed at most once by
    /// each curve.
    SegmentCrossing,
}

impl Law {
    pub const ALL: [Law; 5] = [
        Law::CurveLabel,
        Law::TransverseLabels,
        Law::ParallelLabels,
        Law::CirclesOrTrees,
        Law::SegmentCrossing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::CurveLabel => "curve-label",
            Law::TransverseLabels => "transverse-labels",
            Law::ParallelLabels => "parallel-labels",
            Law::CirclesOrTrees => "circles-or-trees",
            Law::SegmentCrossing => "segment-crossing",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `len` consecutive darts of the outer boundary, starting `start` darts
/// after the basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: Law,
    /// False when nothing in the diagram falls under the law.
    pub applicable: bool,
    pub violations: Vec<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn get(&self, law: Law) -> &LawResult {
        self.results.iter().find(|r| r.law == law).expect("every law is reported")
    }

    pub fn violation_count(&self) -> usize {
        self.results.iter().map(|r| r.violations.len()).sum()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let verdict = match (r.applicable, r.passed()) {
                (false, _) => "n/a",
                (true, true) => "pass",
                (true, false) => "FAIL",
            };
            writeln!(f, "{}: {verdict}", r.law)?;
            for v in &r.violations {
                writeln!(f, "  {v}")?;
            }
        }
        Ok(())
    }
}

/// Per-diagram bookkeeping shared by curve extraction and law checks.
struct Incidence {
    /// Curve index of each dart's edge.
    curve_of: Vec<usize>,
    curves: Vec<DualCurve>,
}

impl Diagram {
    fn edge_id(&self, d: usize) -> usize {
        d.min(self.darts[d].opposite)
    }

    fn incidence(&self) -> Incidence {
        let n = self.darts.len();
        let interior = self.interior_faces();
        let mut uf = UnionFind::new(n);
        for d in 0..n {
            uf.union(d, self.darts[d].opposite);
        }
        // A square joins opposite sides; a triangle joins each side to its
        // centre (the `None` end).
        let mut segments: Vec<(usize, Option<usize>)> = Vec::new();
        for face in &interior {
            match face.len() {
                4 => {
                    uf.union(face[0], face[2]);
                    uf.union(face[1], face[3]);
                    segments.push((face[0], Some(face[2])));
                    segments.push((face[1], Some(face[3])));
                }
                3 => {
                    uf.union(face[0], face[1]);
                    uf.union(face[0], face[2]);
                    segments.extend(face.iter().map(|&d| (d, None)));
                }
                _ => {}
            }
        }

        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut curve_of = vec![0; n];
        for d in 0..n {
            let root = uf.find(d);
            let next = index.len();
            curve_of[d] = *index.entry(root).or_insert(next);
        }
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); index.len()];
        for e in self.edges() {
            edges[curve_of[e]].push(e);
        }
        let mut singularities: Vec<Vec<usize>> = vec![Vec::new(); index.len()];
        for face in interior.iter().filter(|f| f.len() == 3) {
            let first = *face.iter().min().expect("non-empty face");
            singularities[curve_of[first]].push(first);
        }

        // Node degrees and segment counts per curve. Triangle centres are
        // extra nodes with degree 3.
        let mut degree: HashMap<usize, usize> = HashMap::new();
        let mut segment_count = vec![0usize; index.len()];
        for &(a, b) in &segments {
            segment_count[curve_of[a]] += 1;
            *degree.entry(self.edge_id(a)).or_default() += 1;
            if let Some(b) = b {
                *degree.entry(self.edge_id(b)).or_default() += 1;
            }
        }
        let curves = (0..index.len())
            .map(|c| {
                let nodes = edges[c].len() + singularities[c].len();
                let all_two = singularities[c].is_empty()
                    && edges[c].iter().all(|e| degree.get(e).copied().unwrap_or(0) == 2);
                let shape = if segment_count[c] + 1 == nodes {
                    CurveShape::Tree
                } else if all_two {
                    CurveShape::Circle
                } else {
                    CurveShape::Other
                };
                let vertices: Vec<usize> = edges[c].iter().map(|&e| self.darts[e].label.vertex).collect();
                let label = vertices.iter().all(|&v| v == vertices[0]).then(|| vertices[0]);
                let mut sing = std::mem::take(&mut singularities[c]);
                sing.sort_unstable();
                DualCurve { edges: std::mem::take(&mut edges[c]), singularities: sing, label, shape }
            })
            .collect();
        Incidence { curve_of, curves }
    }

    /// The dual curves, ordered by their smallest crossed edge.
    pub fn dual_curves(&self) -> Vec<DualCurve> {
        self.incidence().curves
    }

    /// Evaluates every law. `segments` designates stretches of the outer
    /// boundary for the segment-crossing law; segments whose word is not
    /// graphically reduced are skipped.
    pub fn check_dual_curve_laws(&self, product: &GraphProduct, segments: &[Segment]) -> LawReport {
        let inc = self.incidence();
        let interior = self.interior_faces();
        let squares: Vec<&Vec<usize>> = interior.iter().filter(|f| f.len() == 4).collect();
        let mut results = Vec::with_capacity(Law::ALL.len());

        let curve_label = inc
            .curves
            .iter()
            .filter(|c| c.label.is_none())
            .map(|c| format!("curve through edges {:?} crosses several vertices", c.edges))
            .collect();
        results.push(LawResult {
            law: Law::CurveLabel,
            applicable: !inc.curves.is_empty(),
            violations: curve_label,
        });

        let mut transverse = Vec::new();
        for f in &squares {
            let (c0, c1) = (inc.curve_of[f[0]], inc.curve_of[f[1]]);
            if c0 == c1 {
                transverse.push(format!("square at dart {}: a curve crosses itself", f[0]));
                continue;
            }
            let (u, v) = (inc.curves[c0].label, inc.curves[c1].label);
            let ok = matches!((u, v), (Some(u), Some(v)) if product.graph().adjacent(u, v));
            if !ok {
                transverse.push(format!(
                    "square at dart {}: crossing curves labelled {} and {} are not adjacent",
                    f[0],
                    vertex_name(product, u),
                    vertex_name(product, v)
                ));
            }
        }
        results.push(LawResult {
            law: Law::TransverseLabels,
            applicable: !squares.is_empty(),
            violations: transverse,
        });

        let mut parallel = Vec::new();
        for f in &squares {
            for k in 0..2 {
                let (d, e) = (f[k], self.darts[f[k + 2]].opposite);
                if self.darts[d].label != self.darts[e].label {
                    parallel.push(format!(
                        "square at dart {}: darts {d} and {e} read {} and {}",
                        f[0],
                        product.format_syllable(&self.darts[d].label),
                        product.format_syllable(&self.darts[e].label)
                    ));
                }
            }
        }
        results.push(LawResult {
            law: Law::ParallelLabels,
            applicable: !squares.is_empty(),
            violations: parallel,
        });

        let disc = !self.is_annular();
        let shapes = if disc {
            inc.curves
                .iter()
                .filter(|c| c.shape == CurveShape::Other)
                .map(|c| format!("curve through edges {:?} is neither a circle nor a tree", c.edges))
                .collect()
        } else {
            Vec::new()
        };
        results.push(LawResult { law: Law::CirclesOrTrees, applicable: disc, violations: shapes });

        let boundary = self.outer_boundary();
        let mut crossing = Vec::new();
        let mut checked = false;
        for seg in segments {
            if seg.start + seg.len > boundary.len() {
                crossing.push(format!(
                    "segment {}..{} exceeds the boundary of length {}",
                    seg.start,
                    seg.start + seg.len,
                    boundary.len()
                ));
                continue;
            }
            let darts = &boundary[seg.start..seg.start + seg.len];
            let word: Vec<Syllable> = darts.iter().map(|&d| self.darts[d].label).collect();
            if !product.is_graphically_reduced(&word.into()) {
                continue;
            }
            checked = true;
            let mut hits: HashMap<usize, usize> = HashMap::new();
            for &d in darts {
                *hits.entry(inc.curve_of[d]).or_default() += 1;
            }
            let mut bad: Vec<(usize, usize)> = hits.into_iter().filter(|&(_, k)| k > 1).collect();
            bad.sort_unstable();
            for (c, k) in bad {
                crossing.push(format!(
                    "segment {}..{}: curve through edges {:?} crosses it {k} times",
                    seg.start,
                    seg.start + seg.len,
                    inc.curves[c].edges
                ));
            }
        }
        results.push(LawResult {
            law: Law::SegmentCrossing,
            applicable: checked || !crossing.is_empty(),
            violations: crossing,
        });
        LawReport { results }
    }
}

fn vertex_name(product: &GraphProduct, v: Option<usize>) -> String {
    v.map_or_else(|| "?".to_string(), |v| product.graph().name(v).to_string())
}
