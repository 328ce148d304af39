//! Minimal invariant edge paths on the Farey strip and their sections.
//!
//! A minimal path never takes two successive edges inside one strip triangle,
//! which forces it to either run along the whole outer side of a fan or cross
//! the strip at a fan boundary. A monodromy-invariant minimal path is
//! therefore determined by the set of fans it passes on the outside: no two
//! chosen fans may be adjacent, and a fan passed at its pivot with crossings
//! on both sides must have length at least two.

use serde::Serialize;

use crate::strip::{FareyStrip, StripEdge};
use crate::word::Letter;
use crate::{Error, Result};

/// The four section types of a path: two straight runs along a fan side and
/// the two strip crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SectionType {
    /// Along the outer side of an `R` fan, between two `L`-side pivots.
    LL,
    /// Along the outer side of an `L` fan, between two `R`-side pivots.
    RR,
    /// Crossing at a hinge with the `R` run above the `L` run.
    RL,
    /// Crossing at a hinge with the `L` run above the `R` run.
    LR,
}

/// One section of a decomposed path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    pub kind: SectionType,
    /// For straight sections, the fan passed on the outside; for crossings,
    /// the fan below the crossed hinge.
    pub fan: usize,
    /// Length (in triangles) of that fan.
    pub fan_length: usize,
    /// For crossings, the hinge tetrahedron index.
    pub hinge_tet: Option<usize>,
}

/// A minimal `phi`-invariant edge path, encoded by the set of fans it passes
/// on the outer side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePath {
    /// One flag per fan: passed on the outer side?
    pub outer: Vec<bool>,
}

/// A path expanded against a strip: edges, sections, tightness.
#[derive(Debug, Clone, Serialize)]
pub struct PathData {
    pub path: EdgePath,
    /// Strip edges over one period, in order up the strip.
    pub edges: Vec<StripEdge>,
    /// Per edge: does it cross the strip?
    pub crossing_flags: Vec<bool>,
    pub sections: Vec<Section>,
    pub semi_fiber: bool,
    /// Tightness per path vertex, aligned with `edges` (vertex `i` is the one
    /// between `edges[i]` and `edges[i + 1]`, cyclically).
    pub tight_vertices: Vec<bool>,
    /// Maximal runs of tight vertices containing at least one LR crossing,
    /// as lists of section indices of the LR sections involved.
    pub tight_lr_chains: Vec<Vec<usize>>,
}

impl EdgePath {
    /// Validate the choice set against the strip.
    pub fn validate(&self, strip: &FareyStrip) -> Result<()> {
        let f = strip.fan_count();
        if self.outer.len() != f {
            return Err(Error::MalformedPath(format!(
                "expected {f} fan choices, got {}",
                self.outer.len()
            )));
        }
        for i in 0..f {
            if self.outer[i] && self.outer[(i + 1) % f] {
                return Err(Error::MalformedPath(format!(
                    "adjacent fans {i} and {} both passed outside",
                    (i + 1) % f
                )));
            }
        }
        for i in 0..f {
            let prev = self.outer[(i + f - 1) % f];
            let next = self.outer[(i + 1) % f];
            if !self.outer[i] && !prev && !next && strip.fans()[i].len < 2 {
                return Err(Error::MalformedPath(format!(
                    "consecutive crossings at the pivot of length-1 fan {i}"
                )));
            }
        }
        Ok(())
    }
}

/// Enumerate all minimal invariant paths of the strip.
///
/// The outer-fan subsets are generated exhaustively and filtered by the two
/// structural constraints; every subset corresponds to exactly one minimal
/// path and vice versa.
pub fn enumerate_minimal_paths(strip: &FareyStrip) -> Vec<EdgePath> {
    let f = strip.fan_count();
    let mut out = Vec::new();
    for mask in 0..(1u64 << f) {
        let outer: Vec<bool> = (0..f).map(|i| mask >> i & 1 == 1).collect();
        let path = EdgePath { outer };
        if path.validate(strip).is_ok() {
            out.push(path);
        }
    }
    out
}

/// Expand a path into edges, sections and tightness data.
pub fn expand_path(strip: &FareyStrip, path: &EdgePath) -> Result<PathData> {
    path.validate(strip)?;
    let f = strip.fan_count() as i64;
    let n = strip.period();
    let outer = |i: i64| path.outer[i.rem_euclid(f) as usize];

    // Walk one period of fans, collecting edges in stack order. An outer fan
    // contributes the side edges of its triangles; a crossing at the boundary
    // between two pivot fans contributes the level edge there.
    let mut edges: Vec<StripEdge> = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    for i in 0..f {
        let fan = strip.fans()[i as usize];
        if outer(i) {
            for t in strip.fan_letters(i) {
                edges.push(StripEdge::Side(t));
            }
            let kind = match fan.letter {
                Letter::R => SectionType::LL,
                Letter::L => SectionType::RR,
            };
            sections.push(Section {
                kind,
                fan: i as usize,
                fan_length: fan.len,
                hinge_tet: None,
            });
        }
        // Crossing at the boundary between fan i and fan i+1.
        if !outer(i) && !outer(i + 1) {
            let boundary_level = strip.fan_letters(i).end;
            edges.push(StripEdge::Level(boundary_level));
            // Hinge tetrahedron at the boundary: the last letter of fan i.
            let hinge = (boundary_level - 1).rem_euclid(n as i64) as usize;
            let kind = match fan.letter {
                // R run below, L above: the elaborate crossing.
                Letter::R => SectionType::LR,
                Letter::L => SectionType::RL,
            };
            sections.push(Section {
                kind,
                fan: i as usize,
                fan_length: fan.len,
                hinge_tet: Some(hinge),
            });
        }
    }
    if edges.is_empty() {
        return Err(Error::MalformedPath("path has no edges".into()));
    }

    // Sort edges by their position up the strip so tightness sees them in
    // path order. Side(t) sits at height t + 1/2, Level(k) at height k.
    let mut order: Vec<usize> = (0..edges.len()).collect();
    let height = |e: &StripEdge| -> i64 {
        match *e {
            StripEdge::Side(t) => 2 * t + 1,
            StripEdge::Level(k) => 2 * k,
        }
    };
    order.sort_by_key(|&i| height(&edges[i]));
    let edges: Vec<StripEdge> = order.iter().map(|&i| edges[i]).collect();
    let crossing_flags: Vec<bool> =
        edges.iter().map(|e| matches!(e, StripEdge::Level(_))).collect();

    // Minimality re-check: consecutive edges share a vertex and no triangle.
    let m = edges.len();
    for j in 0..m {
        let a = edges[j];
        let b = shift_edge(edges[(j + 1) % m], if j + 1 == m { n as i64 } else { 0 });
        let va = strip.edge_vertices(a);
        let vb = strip.edge_vertices(b);
        if !va.iter().any(|x| vb.contains(x)) {
            return Err(Error::MalformedPath(format!("edges {a:?} and {b:?} do not meet")));
        }
        let ta = strip.edge_triangles(a);
        let tb = strip.edge_triangles(b);
        if ta.iter().any(|x| tb.contains(x)) {
            return Err(Error::MalformedPath(format!(
                "edges {a:?} and {b:?} share a strip triangle"
            )));
        }
    }

    // Tightness at the vertex between consecutive edges: the two edges must
    // lie in neighbouring (index-adjacent) triangles.
    let mut tight_vertices = Vec::with_capacity(m);
    for j in 0..m {
        let a = edges[j];
        let b = shift_edge(edges[(j + 1) % m], if j + 1 == m { n as i64 } else { 0 });
        let ta = strip.edge_triangles(a);
        let tb = strip.edge_triangles(b);
        let tight = ta.iter().any(|&x| tb.iter().any(|&y| (x - y).abs() == 1));
        tight_vertices.push(tight);
    }
    let semi_fiber = tight_vertices.iter().all(|&t| t);

    // Maximal tight sub-paths containing an LR crossing: group the LR
    // sections by chains of consecutive crossings through tight pivots. Two
    // LR crossings interact exactly when their hinge tetrahedra are four
    // levels apart with everything between crossed.
    let lr_sections: Vec<usize> = sections
        .iter()
        .enumerate()
        .filter(|(_, s)| s.kind == SectionType::LR)
        .map(|(i, _)| i)
        .collect();
    let mut tight_lr_chains: Vec<Vec<usize>> = Vec::new();
    if !lr_sections.is_empty() {
        // Work on hinge positions in letter coordinates over one period.
        let hinges: Vec<i64> =
            lr_sections.iter().map(|&i| sections[i].hinge_tet.unwrap() as i64).collect();
        let linked = |a: i64, b: i64| -> bool {
            let diff = (b - a).rem_euclid(n as i64);
            diff == 4
        };
        let k = lr_sections.len();
        let mut used = vec![false; k];
        // Order LR sections by hinge position.
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by_key(|&i| hinges[i]);
        for &start in &idx {
            if used[start] {
                continue;
            }
            // Extend forward while linked.
            let mut chain = vec![start];
            used[start] = true;
            loop {
                let last = *chain.last().unwrap();
                let next = idx
                    .iter()
                    .copied()
                    .find(|&j| !used[j] && linked(hinges[last], hinges[j]));
                match next {
                    Some(j) => {
                        used[j] = true;
                        chain.push(j);
                    }
                    None => break,
                }
            }
            // Extend backwards.
            loop {
                let first = chain[0];
                let prev = idx
                    .iter()
                    .copied()
                    .find(|&j| !used[j] && linked(hinges[j], hinges[first]));
                match prev {
                    Some(j) => {
                        used[j] = true;
                        chain.insert(0, j);
                    }
                    None => break,
                }
            }
            tight_lr_chains.push(chain.into_iter().map(|i| lr_sections[i]).collect());
        }
        tight_lr_chains.sort();
    }

    Ok(PathData {
        path: path.clone(),
        edges,
        crossing_flags,
        sections,
        semi_fiber,
        tight_vertices,
        tight_lr_chains,
    })
}

fn shift_edge(e: StripEdge, by: i64) -> StripEdge {
    match e {
        StripEdge::Side(t) => StripEdge::Side(t + by),
        StripEdge::Level(k) => StripEdge::Level(k + by),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::MonodromyWord;

    fn paths_of(text: &str) -> (FareyStrip, Vec<EdgePath>) {
        let strip = FareyStrip::new(&MonodromyWord::parse(text).unwrap());
        let paths = enumerate_minimal_paths(&strip);
        (strip, paths)
    }

    #[test]
    fn figure_eight_has_two_paths() {
        // The two non-fiber incompressible surfaces of the figure-eight knot
        // complement: the all-crossings choice is excluded by the length-1 fans.
        let (strip, paths) = paths_of("LR");
        assert_eq!(paths.len(), 2);
        for p in &paths {
            let d = expand_path(&strip, &p).unwrap();
            assert!(!d.semi_fiber);
        }
    }

    #[test]
    fn llrr_has_three_paths_one_semi_fiber() {
        let (strip, paths) = paths_of("LLRR");
        assert_eq!(paths.len(), 3);
        let mut semis = 0;
        for p in &paths {
            let d = expand_path(&strip, &p).unwrap();
            if d.semi_fiber {
                semis += 1;
                // The all-crossings path is the semi-fiber.
                assert!(p.outer.iter().all(|&o| !o));
            }
        }
        assert_eq!(semis, 1);
    }

    #[test]
    fn sections_partition_by_fan_lengths() {
        for text in ["LR", "LLR", "LLRR", "LRLRR", "LLRRLR"] {
            let (strip, paths) = paths_of(text);
            for p in &paths {
                let d = expand_path(&strip, p).unwrap();
                // Straight-section fan lengths plus one edge per crossing sum
                // to the number of path edges.
                let edge_count: usize = d
                    .sections
                    .iter()
                    .map(|s| match s.kind {
                        SectionType::LL | SectionType::RR => s.fan_length,
                        _ => 1,
                    })
                    .sum();
                assert_eq!(edge_count, d.edges.len(), "word {text} path {:?}", p.outer);
            }
        }
    }

    #[test]
    fn outer_paths_are_never_tight_at_pivots() {
        // A path passing every other fan outside on LLRR is not a semi-fiber.
        let (strip, _) = paths_of("LLRR");
        let p = EdgePath { outer: vec![true, false] };
        let d = expand_path(&strip, &p).unwrap();
        assert!(!d.semi_fiber);
    }

    #[test]
    fn tight_chains_require_lr() {
        let (strip, paths) = paths_of("LLRRLLRR");
        for p in &paths {
            let d = expand_path(&strip, p).unwrap();
            for chain in &d.tight_lr_chains {
                assert!(!chain.is_empty());
                for &s in chain {
                    assert_eq!(d.sections[s].kind, SectionType::LR);
                }
            }
        }
    }
}
