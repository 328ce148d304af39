//! The Farey strip of a monodromy word.
//!
//! Levels of the strip are the partial products of the generator matrices:
//! level `k` carries the two column slopes of `M_k = G_0 .. G_{k-1}`. Letter
//! `k` creates the triangle spanned by the level-`k` edge and the mediant of
//! its endpoints; consecutive triangles share a level edge and each adjacent
//! pair corresponds to one tetrahedron of the canonical triangulation.
//!
//! Vertices are tracked by *birth index*: vertex `b` (for `b >= 0`) is the
//! mediant created by letter `b`; negative indices denote backward
//! `phi`-translates, so `v_{b+N} = phi(v_b)` throughout. A vertex created by
//! `L` lands in column 2 of the partial products and survives until the next
//! `L`; symmetrically for `R`.

use serde::Serialize;

use crate::word::{Letter, Mat2, MonodromyWord, Slope};
use crate::Result;

/// A maximal run of equal letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub letter: Letter,
    /// Letter index of the first letter of the run (in `0..period`).
    pub start: usize,
    /// Number of letters (= strip triangles) in the run.
    pub len: usize,
}

impl Fan {
    /// Number of non-hinge tetrahedra inside this fan.
    pub fn interior_tets(&self) -> usize {
        self.len - 1
    }
}

/// One triangle of the strip, with vertices as birth indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StripTriangle {
    /// Letter index that created the triangle.
    pub index: i64,
    /// The vertex created by this letter.
    pub new_vertex: i64,
    /// The two vertices of the level edge below (level `index`).
    pub old_vertices: [i64; 2],
}

/// An edge of the Farey strip between two vertices (birth indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum StripEdge {
    /// Level edge at level `k` (shared by triangles `k-1` and `k`); these are
    /// the edges crossing the strip.
    Level(i64),
    /// The outer edge of triangle `i`, joining `v_i` to the previous vertex on
    /// the same side.
    Side(i64),
}

/// The periodic strip of Farey triangles of a hyperbolic monodromy.
#[derive(Debug, Clone)]
pub struct FareyStrip {
    word: MonodromyWord,
    fans: Vec<Fan>,
    /// Fan id per letter index.
    fan_of_letter: Vec<usize>,
}

impl FareyStrip {
    pub fn new(word: &MonodromyWord) -> FareyStrip {
        let mut fans = Vec::new();
        let mut fan_of_letter = vec![0usize; word.period()];
        let mut start = 0usize;
        for len in word.fan_lengths() {
            let id = fans.len();
            fans.push(Fan { letter: word.letter(start), start, len });
            for i in start..start + len {
                fan_of_letter[i] = id;
            }
            start += len;
        }
        FareyStrip { word: word.clone(), fans, fan_of_letter }
    }

    pub fn word(&self) -> &MonodromyWord {
        &self.word
    }

    pub fn period(&self) -> usize {
        self.word.period()
    }

    pub fn fans(&self) -> &[Fan] {
        &self.fans
    }

    pub fn fan_count(&self) -> usize {
        self.fans.len()
    }

    pub fn fan_of_letter(&self, letter_index: usize) -> usize {
        self.fan_of_letter[letter_index % self.period()]
    }

    /// Letter at an absolute index (periodic).
    pub fn letter(&self, index: i64) -> Letter {
        self.word.letter(index.rem_euclid(self.period() as i64) as usize)
    }

    /// Birth index of the vertex in the given column of level `k`.
    ///
    /// Column 1 was last written by an `R`, column 2 by an `L`; the basis
    /// vertices of level 0 are the translates of the last such letters of the
    /// previous period.
    pub fn column_vertex(&self, level: i64, column: u8) -> i64 {
        let want = if column == 1 { Letter::R } else { Letter::L };
        let mut j = level - 1;
        loop {
            if self.letter(j) == want {
                return j;
            }
            j -= 1;
            if level - j > 2 * self.period() as i64 {
                unreachable!("hyperbolic word has both letters");
            }
        }
    }

    /// Death index of vertex `b`: the first letter index `> b` whose letter
    /// equals the creating letter (that letter overwrites the column).
    pub fn death(&self, birth: i64) -> i64 {
        let letter = self.letter(birth);
        let mut j = birth + 1;
        while self.letter(j) != letter {
            j += 1;
        }
        j
    }

    /// Strip triangle created by letter `index`.
    pub fn triangle(&self, index: i64) -> StripTriangle {
        StripTriangle {
            index,
            new_vertex: index,
            old_vertices: [self.column_vertex(index, 1), self.column_vertex(index, 2)],
        }
    }

    /// The two triangles containing a strip edge.
    pub fn edge_triangles(&self, edge: StripEdge) -> Vec<i64> {
        match edge {
            StripEdge::Level(k) => vec![k - 1, k],
            StripEdge::Side(i) => vec![i],
        }
    }

    /// Endpoint vertices (birth indices) of a strip edge.
    pub fn edge_vertices(&self, edge: StripEdge) -> [i64; 2] {
        match edge {
            StripEdge::Level(k) => [self.column_vertex(k, 1), self.column_vertex(k, 2)],
            StripEdge::Side(i) => {
                // New vertex of triangle i joined to the previous vertex on the
                // same side, which is the previous letter equal to letter(i).
                let mut j = i - 1;
                while self.letter(j) != self.letter(i) {
                    j -= 1;
                }
                [j, i]
            }
        }
    }

    /// Slope of vertex `b` via partial products; valid for `b >= -period`.
    pub fn vertex_slope(&self, birth: i64) -> Result<Slope> {
        let n = self.period() as i64;
        // v_b is the mediant of M_b for b >= 0; for negative b use v_b =
        // phi^{-1}(v_{b+n}), i.e. compute in the shifted window and pull back.
        let (b, pullback) = if birth >= 0 { (birth, 0) } else { (birth + n, 1) };
        debug_assert!(b >= 0);
        let m = self.word.partial_product(b as usize)?;
        let (q, p) = (m.a + m.b, m.c + m.d);
        if pullback == 0 {
            Slope::new(q, p)
        } else {
            // phi^{-1} = adj(phi) since det = 1.
            let phi = self.word.monodromy_matrix()?;
            let inv = Mat2 { a: phi.d, b: -phi.b, c: -phi.c, d: phi.a };
            let (q, p) = inv.apply((q, p));
            Slope::new(q, p)
        }
    }

    /// Pivot vertex of a fan: the vertex kept through the whole run, created
    /// by the last letter of the previous run.
    pub fn pivot(&self, fan_index: i64) -> i64 {
        let f = self.fan_count() as i64;
        let base = fan_index.rem_euclid(f) as usize;
        let shift = fan_index.div_euclid(f) * self.period() as i64;
        self.fans[base].start as i64 + shift - 1
    }

    /// Letter index range of a fan at an absolute fan index.
    pub fn fan_letters(&self, fan_index: i64) -> std::ops::Range<i64> {
        let f = self.fan_count() as i64;
        let base = self.fans[fan_index.rem_euclid(f) as usize];
        let shift = fan_index.div_euclid(f) * self.period() as i64;
        let start = base.start as i64 + shift;
        start..start + base.len as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(text: &str) -> FareyStrip {
        FareyStrip::new(&MonodromyWord::parse(text).unwrap())
    }

    #[test]
    fn lr_strip_shape() {
        let s = strip("LR");
        assert_eq!(s.period(), 2);
        assert_eq!(s.fans().len(), 2);
        assert_eq!(s.fans()[0], Fan { letter: Letter::L, start: 0, len: 1 });
        assert_eq!(s.fans()[1], Fan { letter: Letter::R, start: 1, len: 1 });
    }

    #[test]
    fn partial_product_slopes() {
        // Slopes of the LR strip around the first period: basis 0/1 and 1/0,
        // then mediants 1/1, 1/2, ...
        let s = strip("LR");
        assert_eq!(s.vertex_slope(0).unwrap(), Slope::new(1, 1).unwrap());
        assert_eq!(s.vertex_slope(1).unwrap(), Slope::new(2, 1).unwrap());
        // Level-0 columns are the basis vectors.
        let b1 = s.column_vertex(0, 1);
        let b2 = s.column_vertex(0, 2);
        assert_eq!(s.vertex_slope(b1).unwrap(), Slope::new(1, 0).unwrap());
        assert_eq!(s.vertex_slope(b2).unwrap(), Slope::new(0, 1).unwrap());
    }

    #[test]
    fn strip_edges_are_farey_adjacent() {
        for text in ["LR", "LLR", "LLRR", "LRLRR", "LLLRRLR"] {
            let s = strip(text);
            let n = s.period() as i64;
            for k in 0..n {
                for edge in [StripEdge::Level(k), StripEdge::Side(k)] {
                    let [u, v] = s.edge_vertices(edge);
                    let su = s.vertex_slope(u).unwrap();
                    let sv = s.vertex_slope(v).unwrap();
                    assert!(su.farey_adjacent(sv), "{text} {edge:?}: {su} vs {sv}");
                }
            }
        }
    }

    #[test]
    fn triangles_are_farey_triangles() {
        for text in ["LR", "LLR", "LLRR", "LRLRLLRR"] {
            let s = strip(text);
            for i in 0..s.period() as i64 {
                let t = s.triangle(i);
                let vs: Vec<Slope> = [t.new_vertex, t.old_vertices[0], t.old_vertices[1]]
                    .iter()
                    .map(|&b| s.vertex_slope(b).unwrap())
                    .collect();
                for a in 0..3 {
                    for b in a + 1..3 {
                        assert!(vs[a].farey_adjacent(vs[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn pivots_survive_their_fan() {
        let s = strip("LLRRR");
        for f in 0..s.fan_count() as i64 {
            let p = s.pivot(f);
            let letters = s.fan_letters(f);
            // The pivot is created just before the fan and dies just after it.
            assert_eq!(s.death(p), letters.end);
        }
    }
}
