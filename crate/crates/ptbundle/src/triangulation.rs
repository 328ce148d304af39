//! The canonical layered triangulation and its gluing equations.
//!
//! One tetrahedron per letter: tet `k` realises the diagonal flip of letter
//! `k`, sitting between the punctured-torus triangulations before and after.
//! Its middle edge pairs carry the two slopes of the level-`(k+1)` edge of the
//! Farey strip, its bottom edge the slope removed by the flip and its top edge
//! the mediant created next.
//!
//! Edge classes are indexed by strip vertices: class `j` is the manifold edge
//! of the vertex created by letter `j` (mod period). The incidence pattern
//! follows from the vertex lifespan: one slot-0 corner from the tetrahedron
//! below its birth, a squared middle contribution from every tetrahedron whose
//! level edges contain it, and one slot-0 corner from the tetrahedron that
//! kills it. Middle contributions on the side a fan pivots on carry slot 2
//! (`1/(1-z)`), the other side slot 1 (`(z-1)/z`); this reproduces the
//! familiar fan recursions `z_{k-1} z_{k+1} = (1 - z_k)^2` at 4-valent edges.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{slot_value, Real, C};
use crate::strip::FareyStrip;
use crate::word::{Letter, MonodromyWord};
use crate::{Error, Result};

/// Slot of the labelled ("uppermost") dihedral angle.
pub const SLOT_TOP: u8 = 0;

/// Slot carried by the middle pair in direction `u` (the column kept by the
/// letter): `1/(1-z)` for an `L` tetrahedron, `(z-1)/z` for an `R`.
pub fn slot_u(letter: Letter) -> u8 {
    match letter {
        Letter::L => 2,
        Letter::R => 1,
    }
}

/// Slot carried by the middle pair in the mediant direction `v`.
pub fn slot_v(letter: Letter) -> u8 {
    match letter {
        Letter::L => 1,
        Letter::R => 2,
    }
}

/// One tetrahedron of the layered triangulation.
#[derive(Debug, Clone, Serialize)]
pub struct Tetrahedron {
    pub index: usize,
    pub letter: Letter,
    /// Between two distinct letters (the crossing sites of the strip).
    pub hinge: bool,
    /// Fan (letter run) the tetrahedron belongs to.
    pub fan: usize,
    /// Diagnostic name following the block labelling: hinges `t`/`v`, fan
    /// interiors `x_i` (in `L` runs) and `z_j` (in `R` runs), indexed from the
    /// hinge above the run downward.
    pub label: String,
}

/// One corner-incidence term of a gluing equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquationTerm {
    pub tet: usize,
    pub slot: u8,
    pub exponent: u32,
}

/// Gluing equation of one edge class: product of slot angles equals 1.
#[derive(Debug, Clone, Serialize)]
pub struct GluingEquation {
    pub edge: usize,
    pub terms: Vec<EquationTerm>,
}

/// An edge class of the triangulation.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeClass {
    pub index: usize,
    /// Valence = number of tetrahedron corners glued around the edge.
    pub valence: usize,
    /// Diagnostic name in the block scheme: `λ` for vertices created by `R`
    /// letters, `ρ` for `L`; a star marks the fan pivots (valence > 4).
    pub label: String,
    /// Incidences in stack order: (tet, slot, multiplicity).
    pub incidences: Vec<EquationTerm>,
}

/// The canonical triangulation of a hyperbolic punctured-torus bundle.
#[derive(Debug, Clone)]
pub struct Triangulation {
    word: MonodromyWord,
    strip: FareyStrip,
    tets: Vec<Tetrahedron>,
    edges: Vec<EdgeClass>,
}

/// Build the canonical triangulation of the bundle of `word`.
pub fn build_triangulation(word: &MonodromyWord) -> Triangulation {
    Triangulation::new(word)
}

impl Triangulation {
    pub fn new(word: &MonodromyWord) -> Triangulation {
        let strip = FareyStrip::new(word);
        let n = word.period();
        let mut tets = Vec::with_capacity(n);
        for k in 0..n {
            let letter = word.letter(k);
            let next = word.letter(k + 1);
            let hinge = letter != next;
            let fan = strip.fan_of_letter(k);
            let label = if hinge {
                match letter {
                    // Last letter of an R run, L above: the `t` hinge.
                    Letter::R => format!("t{k}"),
                    Letter::L => format!("v{k}"),
                }
            } else {
                // Interior tet of a run; index counts down from the hinge at
                // the top of the run: the tet just below the hinge is x_1/z_1.
                let mut dist = 1usize;
                let mut j = k + 1;
                while word.letter(j) == letter {
                    dist += 1;
                    j += 1;
                }
                match letter {
                    Letter::L => format!("x{dist}.{k}"),
                    Letter::R => format!("z{dist}.{k}"),
                }
            };
            tets.push(Tetrahedron { index: k, letter, hinge, fan, label });
        }

        let mut edges = Vec::with_capacity(n);
        for j in 0..n {
            let birth = j as i64;
            let death = strip.death(birth);
            let mut incidences = Vec::new();
            let md = |i: i64| i.rem_euclid(n as i64) as usize;
            incidences.push(EquationTerm { tet: md(birth - 1), slot: SLOT_TOP, exponent: 1 });
            incidences.push(EquationTerm {
                tet: md(birth),
                slot: slot_v(word.letter(j)),
                exponent: 2,
            });
            for k in birth + 1..death {
                incidences.push(EquationTerm {
                    tet: md(k),
                    slot: slot_u(strip.letter(k)),
                    exponent: 2,
                });
            }
            incidences.push(EquationTerm { tet: md(death), slot: SLOT_TOP, exponent: 1 });
            let valence: usize = incidences.iter().map(|t| t.exponent as usize).sum();
            let symbol = match word.letter(j) {
                Letter::R => "λ",
                Letter::L => "ρ",
            };
            let star = if valence > 4 { "*" } else { "" };
            edges.push(EdgeClass {
                index: j,
                valence,
                label: format!("{symbol}{star}{j}"),
                incidences,
            });
        }

        Triangulation { word: word.clone(), strip, tets, edges }
    }

    pub fn word(&self) -> &MonodromyWord {
        &self.word
    }

    pub fn strip(&self) -> &FareyStrip {
        &self.strip
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn tets(&self) -> &[Tetrahedron] {
        &self.tets
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn tet(&self, index: i64) -> &Tetrahedron {
        &self.tets[index.rem_euclid(self.tets.len() as i64) as usize]
    }

    /// Gluing equations, one per edge class, terms aggregated by (tet, slot).
    pub fn gluing_equations(&self) -> Vec<GluingEquation> {
        self.edges
            .iter()
            .map(|e| {
                let mut by_corner: BTreeMap<(usize, u8), u32> = BTreeMap::new();
                for t in &e.incidences {
                    *by_corner.entry((t.tet, t.slot)).or_insert(0) += t.exponent;
                }
                GluingEquation {
                    edge: e.index,
                    terms: by_corner
                        .into_iter()
                        .map(|((tet, slot), exponent)| EquationTerm { tet, slot, exponent })
                        .collect(),
                }
            })
            .collect()
    }

    /// Evaluate the left-hand side of one gluing equation at the given shapes.
    pub fn equation_value<T: Real>(&self, eq: &GluingEquation, shapes: &[C<T>]) -> C<T> {
        let mut acc = C::new(T::one(), T::zero());
        for t in &eq.terms {
            let v = slot_value(shapes[t.tet], t.slot);
            for _ in 0..t.exponent {
                acc = acc * v;
            }
        }
        acc
    }

    /// Max `|lhs - 1|` over all gluing equations.
    pub fn gluing_residual<T: Real>(&self, shapes: &[C<T>]) -> T {
        let one = C::new(T::one(), T::zero());
        self.gluing_equations()
            .iter()
            .map(|eq| (self.equation_value(eq, shapes) - one).norm())
            .fold(T::zero(), T::max)
    }

    /// Reject shape assignments touching the degenerate values 0 and 1.
    pub fn check_shapes_nondegenerate<T: Real>(&self, shapes: &[C<T>], radius: T) -> Result<()> {
        let one = C::new(T::one(), T::zero());
        for (i, z) in shapes.iter().enumerate() {
            if z.norm() <= radius || (*z - one).norm() <= radius {
                return Err(Error::DegenerateShape(i));
            }
        }
        Ok(())
    }

    /// Export as a documented JSON object for debugging and cross-tool diffs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "word": self.word.to_string(),
            "period": self.word.period(),
            "fan_lengths": self.word.fan_lengths(),
            "tets": self.tets,
            "edges": self.edges,
            "equations": self.gluing_equations(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tri(text: &str) -> Triangulation {
        Triangulation::new(&MonodromyWord::parse(text).unwrap())
    }

    fn all_words(max_period: usize) -> Vec<MonodromyWord> {
        let mut out = Vec::new();
        for n in 2..=max_period {
            for mask in 1..(1u32 << n) - 1 {
                let letters: Vec<Letter> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { Letter::R } else { Letter::L })
                    .collect();
                out.push(MonodromyWord::from_letters(letters).unwrap());
            }
        }
        out.sort_by_key(|w| w.to_string());
        out.dedup();
        out
    }

    #[test]
    fn figure_eight_counts() {
        let t = tri("LR");
        assert_eq!(t.len(), 2);
        assert_eq!(t.edges().len(), 2);
        for e in t.edges() {
            assert_eq!(e.valence, 6);
        }
    }

    #[test]
    fn llrr_counts() {
        let t = tri("LLRR");
        assert_eq!(t.len(), 4);
        assert_eq!(t.edges().len(), 4);
        let mut valences: Vec<usize> = t.edges().iter().map(|e| e.valence).collect();
        valences.sort();
        // 4-valent edges inside fans, 8-valent fan pivots.
        assert_eq!(valences, vec![4, 4, 8, 8]);
    }

    #[test]
    fn edge_count_equals_tet_count_and_slot_totals() {
        for w in all_words(8) {
            let t = Triangulation::new(&w);
            assert_eq!(t.edges().len(), t.len(), "word {w}");
            // Each tet contributes exactly (2, 2, 2) over the three slots.
            let mut totals = vec![[0u32; 3]; t.len()];
            for e in t.edges() {
                for term in &e.incidences {
                    totals[term.tet][term.slot as usize] += term.exponent;
                }
            }
            for (k, tot) in totals.iter().enumerate() {
                assert_eq!(tot, &[2, 2, 2], "word {w} tet {k}");
            }
        }
    }

    #[test]
    fn fan_interior_equations_have_lambda_shape() {
        // λ_1 for an R fan: terms (t: slot0, exp1), (z_1: slot2, exp2), (z_2: slot0, exp1).
        let t = tri("LRRR");
        // Edge created by the first R of the run dies at the next R: 4-valent,
        // middle tet is the z just below the t hinge.
        let eqs = t.gluing_equations();
        let four: Vec<_> = t.edges().iter().filter(|e| e.valence == 4).collect();
        assert!(!four.is_empty());
        for e in four {
            let eq = &eqs[e.index];
            let squared: Vec<_> = eq.terms.iter().filter(|t| t.exponent == 2).collect();
            assert_eq!(squared.len(), 1);
            let mid = squared[0];
            let mid_letter = t.tets()[mid.tet].letter;
            // a-type fans (R runs) square slot 2, b-type (L runs) slot 1.
            let expect = match mid_letter {
                Letter::R => 2,
                Letter::L => 1,
            };
            assert_eq!(mid.slot, expect);
            for other in eq.terms.iter().filter(|t| t.exponent == 1) {
                assert_eq!(other.slot, SLOT_TOP);
            }
        }
    }

    #[test]
    fn figure_eight_geometric_solution() {
        // Both shapes exp(i pi / 3): the regular ideal solution; every
        // equation residual below 1e-12 by direct substitution.
        let t = tri("LR");
        let w = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let shapes = vec![w, w];
        assert!(t.gluing_residual(&shapes) < 1e-12);
    }

    #[test]
    fn equation_product_dependency() {
        // Product of all equation left-hand sides is 1 at arbitrary shapes:
        // the equations multiply to a product of the per-tet identities.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for w in all_words(6) {
            let t = Triangulation::new(&w);
            for _ in 0..20 {
                let shapes: Vec<Complex64> = (0..t.len())
                    .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0)))
                    .collect();
                let mut prod = Complex64::new(1.0, 0.0);
                for eq in t.gluing_equations() {
                    prod *= t.equation_value(&eq, &shapes);
                }
                assert!((prod - 1.0).norm() < 1e-9, "word {w} product {prod}");
            }
        }
    }
}
