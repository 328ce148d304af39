//! Twisted-square degeneration data for a path: per-tetrahedron rates and
//! collapse types, the 0-∞ matching condition, sphere vertices and the
//! sphere-adding algorithm.
//!
//! Section contributions follow the translation tables: a straight section
//! ramps by two along its fan and closes with a single type-1 square one
//! tetrahedron beyond the hinge; the trivial crossing is one type-1 square in
//! its hinge; the elaborate crossing carries a type-1 square flanked by an
//! `∞`-arm above and a `0`-arm below, each arm extending through the whole
//! neighbouring fan when the adjacent run has length one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::paths::{PathData, Section, SectionType};
use crate::strip::FareyStrip;
use crate::triangulation::Triangulation;
use crate::{Error, Result};

/// Which pair of opposite edges collapses, named by where the labelled
/// (top/bottom) angle goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SquareType {
    /// Labelled angle -> 0 (slot 0 collapses to 0).
    Zero,
    /// Labelled angle -> 1 (slot 1 collapses to 0).
    One,
    /// Labelled angle -> infinity (slot 2 collapses to 0).
    Infinity,
}

impl SquareType {
    /// Slot whose angle tends to 0.
    pub fn zero_slot(self) -> u8 {
        match self {
            SquareType::Zero => 0,
            SquareType::One => 1,
            SquareType::Infinity => 2,
        }
    }

    /// Slot whose angle tends to 1.
    pub fn one_slot(self) -> u8 {
        match self {
            SquareType::Zero => 2,
            SquareType::One => 0,
            SquareType::Infinity => 1,
        }
    }

    /// Slot whose angle tends to infinity.
    pub fn infinity_slot(self) -> u8 {
        match self {
            SquareType::Zero => 1,
            SquareType::One => 2,
            SquareType::Infinity => 0,
        }
    }

    /// Where does the given slot go under this collapse?
    pub fn slot_role(self, slot: u8) -> SlotRole {
        if slot == self.zero_slot() {
            SlotRole::ToZero
        } else if slot == self.one_slot() {
            SlotRole::ToOne
        } else {
            SlotRole::ToInfinity
        }
    }
}

/// Limit of one angle slot under a collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SlotRole {
    ToZero,
    ToOne,
    ToInfinity,
}

/// Per-tetrahedron twisted-square counts and types.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerationProfile {
    /// Number of parallel twisted squares per tetrahedron.
    pub rates: Vec<u64>,
    /// Collapse type, `None` iff the rate is 0.
    pub types: Vec<Option<SquareType>>,
    /// Doubled for orientability: all rates were multiplied by two and the
    /// blow-up parameter is to be read as `zeta^2`.
    pub doubled: bool,
}

impl DegenerationProfile {
    pub fn empty(n: usize) -> DegenerationProfile {
        DegenerationProfile { rates: vec![0; n], types: vec![None; n], doubled: false }
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    pub fn is_degenerate(&self, tet: usize) -> bool {
        self.rates[tet] > 0
    }

    /// Blow-up exponent base: 1 normally, 2 when doubled.
    pub fn zeta_unit(&self) -> u32 {
        if self.doubled {
            2
        } else {
            1
        }
    }

    fn add(&mut self, tet: usize, ty: SquareType, rate: u64) -> Result<()> {
        if rate == 0 {
            return Ok(());
        }
        match self.types[tet] {
            None => self.types[tet] = Some(ty),
            Some(prev) if prev == ty => {}
            Some(prev) => {
                return Err(Error::SectionTableMiss(format!(
                    "tet {tet}: section types disagree ({prev:?} vs {ty:?})"
                )))
            }
        }
        self.rates[tet] += rate;
        Ok(())
    }

    /// Role of a slot of a tetrahedron, if it degenerates.
    pub fn slot_role(&self, tet: usize, slot: u8) -> Option<SlotRole> {
        self.types[tet].map(|t| t.slot_role(slot))
    }
}

/// One (tetrahedron, type, rate) increment of a section or sphere.
pub type Increment = (usize, SquareType, u64);

/// The sphere attachment sites of an LR crossing.
#[derive(Debug, Clone, Serialize)]
pub struct LrGeometry {
    /// Index of the section in the path's section list.
    pub section: usize,
    /// Crossing hinge tetrahedron.
    pub hinge: usize,
    /// Tets of the `∞` arm above the hinge, bottom-up.
    pub upper_arm: Vec<usize>,
    /// Closing type-1 tetrahedron above the arm.
    pub upper_close: usize,
    /// Tets of the `0` arm below the hinge, top-down.
    pub lower_arm: Vec<usize>,
    /// Closing type-1 tetrahedron below the arm.
    pub lower_close: usize,
}

impl LrGeometry {
    /// Increments of one upper sphere.
    pub fn upper_sphere(&self) -> Vec<Increment> {
        let mut out = vec![(self.hinge, SquareType::One, 1)];
        out.extend(self.upper_arm.iter().map(|&t| (t, SquareType::Infinity, 2)));
        out.push((self.upper_close, SquareType::One, 1));
        out
    }

    /// Increments of one lower sphere.
    pub fn lower_sphere(&self) -> Vec<Increment> {
        let mut out = vec![(self.hinge, SquareType::One, 1)];
        out.extend(self.lower_arm.iter().map(|&t| (t, SquareType::Zero, 2)));
        out.push((self.lower_close, SquareType::One, 1));
        out
    }
}

/// Classification of one edge class against a profile.
#[derive(Debug, Clone, Serialize)]
pub enum VertexClass {
    /// Some incident angle collapses to 0 or infinity (the surface boundary
    /// passes through); the tilde equation stays multiplicative.
    Regular,
    /// Every incident degenerating angle tends to 1.
    Sphere(SphereVertexReport),
}

/// Report for an all-to-one ("sphere") vertex.
#[derive(Debug, Clone, Serialize)]
pub struct SphereVertexReport {
    pub edge: usize,
    /// (tet, rate at this edge, multiplicity), in incidence order.
    pub incident: Vec<(usize, u64, u32)>,
    pub min_rate: u64,
    /// Distinct tetrahedra achieving the minimum rate.
    pub achievers: Vec<usize>,
}

impl SphereVertexReport {
    /// Non-unique minimum rate condition: a positive minimum must be achieved
    /// by at least two distinct tetrahedra; a zero minimum needs total
    /// multiplicity at least two (the chain equations stay solvable).
    pub fn non_unique_min(&self) -> bool {
        if self.min_rate > 0 {
            self.achievers.len() >= 2
        } else {
            self.incident
                .iter()
                .filter(|&&(_, r, _)| r == self.min_rate)
                .map(|&(_, _, m)| m)
                .sum::<u32>()
                >= 2
        }
    }
}

/// Sphere counts chosen for one LR section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SphereCounts {
    pub section: usize,
    pub upper: u64,
    pub lower: u64,
}

fn md(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Contributions of one section to the profile.
pub fn section_increments(
    strip: &FareyStrip,
    section: &Section,
) -> Result<Vec<Increment>> {
    let n = strip.period();
    let fan = strip.fans()[section.fan];
    let a = fan.start as i64;
    let len = fan.len as i64;
    let mut out: Vec<Increment> = Vec::new();
    match section.kind {
        SectionType::RL => {
            let h = section
                .hinge_tet
                .ok_or_else(|| Error::SectionTableMiss("RL crossing without hinge".into()))?;
            out.push((h, SquareType::One, 1));
        }
        SectionType::RR => {
            // Along the outer side of an L fan with m interior tets: squares
            // of type 0 ramping to the hinge below, closing with one type-1
            // square one tetrahedron further down.
            let m = len - 1;
            for i in 0..m {
                out.push((md(a + i, n), SquareType::Zero, (2 * (m - i)) as u64));
            }
            out.push((md(a - 1, n), SquareType::Zero, (2 * m + 2) as u64));
            out.push((md(a - 2, n), SquareType::One, (m + 1) as u64));
        }
        SectionType::LL => {
            // Mirror image: along an R fan, type-infinity squares ramping to
            // the hinge above.
            let n1 = len - 1;
            for i in 0..n1 {
                out.push((md(a + i, n), SquareType::Infinity, (2 + 2 * i) as u64));
            }
            out.push((md(a + n1, n), SquareType::Infinity, (2 * n1 + 2) as u64));
            out.push((md(a + n1 + 1, n), SquareType::One, (n1 + 1) as u64));
        }
        SectionType::LR => {
            let geo = lr_geometry(strip, section, 0)?;
            out.push((geo.hinge, SquareType::One, 1));
            for &t in &geo.upper_arm {
                out.push((t, SquareType::Infinity, 2));
            }
            out.push((geo.upper_close, SquareType::One, 1));
            for &t in &geo.lower_arm {
                out.push((t, SquareType::Zero, 2));
            }
            out.push((geo.lower_close, SquareType::One, 1));
        }
    }
    Ok(out)
}

/// Arms and closing tets of an LR crossing.
pub fn lr_geometry(
    strip: &FareyStrip,
    section: &Section,
    section_index: usize,
) -> Result<LrGeometry> {
    if section.kind != SectionType::LR {
        return Err(Error::SectionTableMiss("lr_geometry on a non-LR section".into()));
    }
    let n = strip.period();
    let f = strip.fan_count() as i64;
    let fan_below = section.fan as i64;
    let h = section
        .hinge_tet
        .ok_or_else(|| Error::SectionTableMiss("LR crossing without hinge".into()))?
        as i64;

    // Upper arm: through the L run above (fan_below + 1); when that run has
    // length one the arm extends over the whole R fan above it and its hinge.
    let len_u = strip.fans()[((fan_below + 1).rem_euclid(f)) as usize].len as i64;
    let (upper_arm, upper_close) = if len_u >= 2 {
        (vec![md(h + 1, n)], md(h + 2, n))
    } else {
        let n2 = strip.fans()[((fan_below + 2).rem_euclid(f)) as usize].len as i64 - 1;
        let mut arm = vec![md(h + 1, n)];
        for i in 0..n2 {
            arm.push(md(h + 2 + i, n));
        }
        arm.push(md(h + 2 + n2, n));
        (arm, md(h + 3 + n2, n))
    };

    // Lower arm: through the R run below; when it has length one the arm
    // extends over the whole L fan below and its hinge.
    let len_d = strip.fans()[fan_below as usize].len as i64;
    let (lower_arm, lower_close) = if len_d >= 2 {
        (vec![md(h - 1, n)], md(h - 2, n))
    } else {
        let m2 = strip.fans()[((fan_below - 1).rem_euclid(f)) as usize].len as i64 - 1;
        let mut arm = vec![md(h - 1, n)];
        for i in 0..m2 {
            arm.push(md(h - 2 - i, n));
        }
        arm.push(md(h - 2 - m2, n));
        (arm, md(h - 3 - m2, n))
    };

    Ok(LrGeometry {
        section: section_index,
        hinge: md(h, n),
        upper_arm,
        upper_close,
        lower_arm,
        lower_close,
    })
}

/// Assemble the Yoshida data of a path: per-tet rates and types.
pub fn path_to_yoshida(strip: &FareyStrip, data: &PathData) -> Result<DegenerationProfile> {
    let mut profile = DegenerationProfile::empty(strip.period());
    for section in &data.sections {
        for (tet, ty, rate) in section_increments(strip, section)? {
            profile.add(tet, ty, rate)?;
        }
    }
    Ok(profile)
}

/// Per-edge imbalance `#0-sides - #∞-sides`, counting multiplicity and rate.
pub fn check_zero_infty_matching(
    profile: &DegenerationProfile,
    tri: &Triangulation,
) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for edge in tri.edges() {
        let mut imbalance = 0i64;
        for term in &edge.incidences {
            if let Some(role) = profile.slot_role(term.tet, term.slot) {
                let weight = (term.exponent as i64) * profile.rates[term.tet] as i64;
                match role {
                    SlotRole::ToZero => imbalance += weight,
                    SlotRole::ToInfinity => imbalance -= weight,
                    SlotRole::ToOne => {}
                }
            }
        }
        out.insert(edge.index, imbalance);
    }
    out
}

/// Classify every edge class as regular or sphere vertex.
pub fn find_sphere_vertices(
    profile: &DegenerationProfile,
    tri: &Triangulation,
) -> Result<Vec<VertexClass>> {
    let imbalances = check_zero_infty_matching(profile, tri);
    let mut out = Vec::with_capacity(tri.edges().len());
    for edge in tri.edges() {
        let mut any_zero_infty = false;
        let mut any_degenerate = false;
        let mut incident: Vec<(usize, u64, u32)> = Vec::new();
        for term in &edge.incidences {
            let rate = profile.rates[term.tet];
            match profile.slot_role(term.tet, term.slot) {
                Some(SlotRole::ToZero) | Some(SlotRole::ToInfinity) => any_zero_infty = true,
                Some(SlotRole::ToOne) => any_degenerate = true,
                None => {}
            }
            let effective = match profile.slot_role(term.tet, term.slot) {
                Some(SlotRole::ToOne) => rate,
                _ => 0,
            };
            incident.push((term.tet, effective, term.exponent));
        }
        if any_zero_infty {
            if imbalances[&edge.index] != 0 {
                return Err(Error::UnsupportedVertex(
                    edge.index,
                    format!("0-∞ imbalance {}", imbalances[&edge.index]),
                ));
            }
            out.push(VertexClass::Regular);
        } else if any_degenerate {
            let min_rate = incident.iter().map(|&(_, r, _)| r).min().unwrap_or(0);
            let mut achievers: Vec<usize> = incident
                .iter()
                .filter(|&&(_, r, _)| r == min_rate)
                .map(|&(t, _, _)| t)
                .collect();
            achievers.sort();
            achievers.dedup();
            out.push(VertexClass::Sphere(SphereVertexReport {
                edge: edge.index,
                incident,
                min_rate,
                achievers,
            }));
        } else {
            out.push(VertexClass::Regular);
        }
    }
    Ok(out)
}

/// Does the non-unique minimum rate condition hold at every sphere vertex?
pub fn non_unique_minimum_holds(
    profile: &DegenerationProfile,
    tri: &Triangulation,
) -> Result<bool> {
    Ok(find_sphere_vertices(profile, tri)?
        .iter()
        .all(|c| match c {
            VertexClass::Regular => true,
            VertexClass::Sphere(rep) => rep.non_unique_min(),
        }))
}

/// Choose sphere counts for an interacting chain of LR crossings by the
/// balance construction: split the weight sequence at an exact balance point
/// or at a dominating weight, fill in from both ends, and close the middle.
///
/// `weights` are listed top-down, one more than the number of blocks;
/// returns `(upper, lower)` sphere counts per block, top-down.
pub fn solve_sphere_chain(weights: &[u64]) -> Result<Vec<(u64, u64)>> {
    let k = weights.len().checked_sub(1).ok_or_else(|| Error::internal("empty chain"))?;
    if k == 0 {
        return Err(Error::internal("chain must contain a block"));
    }
    let total: u64 = weights.iter().sum();
    let prefix = |j: usize| -> u64 { weights[..j].iter().sum() };
    // Case 1: exact balance between blocks j and j+1.
    let case1 = (1..=k).find(|&j| 2 * prefix(j) == total);
    let mut counts = vec![(0u64, 0u64); k];
    if let Some(j) = case1 {
        for (b, c) in counts.iter_mut().enumerate().take(j - 1) {
            let a = prefix(b + 1);
            *c = (a + 1, a);
        }
        let a_mid = prefix(j);
        counts[j - 1] = (a_mid, a_mid);
        for (b, c) in counts.iter_mut().enumerate().skip(j) {
            let bb = total - prefix(b + 1);
            *c = (bb, bb + 1);
        }
        return Ok(counts);
    }
    // Case 2: a weight heavier than the imbalance of the rest.
    let case2 = (1..=k + 1).find(|&j| {
        let before = prefix(j - 1);
        let after = total - prefix(j);
        weights[j - 1] > before.abs_diff(after)
    });
    let j = case2.ok_or_else(|| Error::internal("balance point not found"))?;
    for (b, c) in counts.iter_mut().enumerate().take(j - 1) {
        let a = prefix(b + 1);
        *c = (a + 1, a);
    }
    for (b, c) in counts.iter_mut().enumerate().skip(j - 1) {
        let bb = total - prefix(b + 1);
        *c = (bb, bb + 1);
    }
    Ok(counts)
}

/// Locate the balance point of a weight sequence (for the oracle tests):
/// returns `(k, case)` with `case` 1 or 2, 1-indexed like the construction.
pub fn balance_point(weights: &[u64]) -> Option<(usize, u8)> {
    let k = weights.len().checked_sub(1)?;
    let total: u64 = weights.iter().sum();
    let prefix = |j: usize| -> u64 { weights[..j].iter().sum() };
    if let Some(j) = (1..=k).find(|&j| 2 * prefix(j) == total) {
        return Some((j, 1));
    }
    (1..=k + 1)
        .find(|&j| weights[j - 1] > prefix(j - 1).abs_diff(total - prefix(j)))
        .map(|j| (j, 2))
}

/// Result of the sphere-adding pass.
#[derive(Debug, Clone, Serialize)]
pub struct SphereAddition {
    pub profile: DegenerationProfile,
    pub counts: Vec<SphereCounts>,
}

/// Add spheres around the LR crossings until the non-unique minimum rate
/// condition holds at every sphere vertex. Refuses semi-fibers.
pub fn add_spheres(
    strip: &FareyStrip,
    tri: &Triangulation,
    data: &PathData,
    profile: &DegenerationProfile,
) -> Result<SphereAddition> {
    if data.semi_fiber {
        return Err(Error::SemiFiber);
    }
    let mut profile = profile.clone();
    let mut counts: Vec<SphereCounts> = Vec::new();

    for chain in &data.tight_lr_chains {
        let geos: Vec<LrGeometry> = chain
            .iter()
            .map(|&s| lr_geometry(strip, &data.sections[s], s))
            .collect::<Result<_>>()?;
        // Skip chains whose sphere vertices already satisfy the condition.
        let classes = find_sphere_vertices(&profile, tri)?;
        let needs_fix = geos.iter().any(|g| {
            sphere_vertex_edges(tri, g).iter().any(|&e| match &classes[e] {
                VertexClass::Sphere(rep) => !rep.non_unique_min(),
                VertexClass::Regular => false,
            })
        });
        if !needs_fix {
            for g in &geos {
                counts.push(SphereCounts { section: g.section, upper: 0, lower: 0 });
            }
            continue;
        }
        // Chain blocks bottom-up by hinge; the construction runs top-down.
        let weights_top_down: Vec<u64> = {
            let mut w = Vec::with_capacity(geos.len() + 1);
            w.push(profile.rates[geos.last().unwrap().upper_close] - 1);
            for g in geos.iter().rev() {
                w.push(profile.rates[g.lower_close] - 1);
            }
            w
        };
        // Shared closes between linked blocks must agree.
        for pair in geos.windows(2) {
            if pair[0].upper_close != pair[1].lower_close {
                return Err(Error::internal("linked LR crossings do not share a close"));
            }
        }
        let solved = solve_sphere_chain(&weights_top_down)?;
        for (j, &(upper, lower)) in solved.iter().enumerate() {
            let g = &geos[geos.len() - 1 - j];
            for _ in 0..upper {
                for (tet, ty, rate) in g.upper_sphere() {
                    profile.add(tet, ty, rate)?;
                }
            }
            for _ in 0..lower {
                for (tet, ty, rate) in g.lower_sphere() {
                    profile.add(tet, ty, rate)?;
                }
            }
            counts.push(SphereCounts { section: g.section, upper, lower });
        }
    }

    // Final check: every sphere vertex now satisfies the condition.
    for class in find_sphere_vertices(&profile, tri)? {
        if let VertexClass::Sphere(rep) = class {
            if !rep.non_unique_min() {
                return Err(Error::UniqueMinimum(rep.edge));
            }
        }
    }
    counts.sort_by_key(|c| c.section);
    Ok(SphereAddition { profile, counts })
}

/// The two sphere-vertex edge classes of an LR crossing: the edges where its
/// arm tetrahedra contribute their squared middle corners.
pub fn sphere_vertex_edges(tri: &Triangulation, geo: &LrGeometry) -> Vec<usize> {
    let mut out = Vec::new();
    for arm_tet in [geo.upper_arm[0], geo.lower_arm[0]] {
        // The edge where this tet appears with exponent 2 together with the
        // hinge: the sphere-end vertex.
        for edge in tri.edges() {
            let has_mid = edge
                .incidences
                .iter()
                .any(|t| t.tet == arm_tet && t.exponent == 2);
            let has_hinge = edge.incidences.iter().any(|t| t.tet == geo.hinge);
            if has_mid && has_hinge {
                out.push(edge.index);
                break;
            }
        }
    }
    out
}

/// A surface is orientable iff its path has an even number of edges per
/// period: each saddle junction reverses the induced orientation once.
pub fn is_orientable(data: &PathData) -> bool {
    data.edges.len() % 2 == 0
}

/// Double a non-orientable profile (boundary of a tubular neighbourhood).
pub fn orientability_and_double(
    data: &PathData,
    profile: &DegenerationProfile,
) -> DegenerationProfile {
    if is_orientable(data) {
        profile.clone()
    } else {
        DegenerationProfile {
            rates: profile.rates.iter().map(|r| r * 2).collect(),
            types: profile.types.clone(),
            doubled: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{enumerate_minimal_paths, expand_path};
    use crate::word::MonodromyWord;

    fn setup(text: &str) -> (FareyStrip, Triangulation) {
        let w = MonodromyWord::parse(text).unwrap();
        (FareyStrip::new(&w), Triangulation::new(&w))
    }

    #[test]
    fn rl_crossing_is_one_square() {
        let (strip, _) = setup("LLRR");
        // Path crossing at both hinges (the semi-fiber) has two crossings.
        let path = crate::paths::EdgePath { outer: vec![false, false] };
        let data = expand_path(&strip, &path).unwrap();
        let rl: Vec<&Section> =
            data.sections.iter().filter(|s| s.kind == SectionType::RL).collect();
        assert_eq!(rl.len(), 1);
        let inc = section_increments(&strip, rl[0]).unwrap();
        assert_eq!(inc.len(), 1);
        assert_eq!(inc[0].1, SquareType::One);
        assert_eq!(inc[0].2, 1);
    }

    #[test]
    fn ll_section_over_fan() {
        // LL section over a fan of n interior tets: rates 2, 4, ..., 2n+2 and
        // a closing type-1 square of rate n+1.
        let (strip, _) = setup("LRRRR");
        let path = crate::paths::EdgePath { outer: vec![false, true] };
        let data = expand_path(&strip, &path).unwrap();
        let ll: Vec<&Section> =
            data.sections.iter().filter(|s| s.kind == SectionType::LL).collect();
        assert_eq!(ll.len(), 1);
        let inc = section_increments(&strip, ll[0]).unwrap();
        let n1 = (ll[0].fan_length - 1) as u64;
        let infinity_rates: Vec<u64> = inc
            .iter()
            .filter(|&&(_, t, _)| t == SquareType::Infinity)
            .map(|&(_, _, r)| r)
            .collect();
        let mut want: Vec<u64> = (0..n1).map(|i| 2 + 2 * i).collect();
        want.push(2 * n1 + 2);
        assert_eq!(infinity_rates, want);
        let ones: Vec<u64> = inc
            .iter()
            .filter(|&&(_, t, _)| t == SquareType::One)
            .map(|&(_, _, r)| r)
            .collect();
        assert_eq!(ones, vec![n1 + 1]);
    }

    #[test]
    fn matching_holds_for_all_paths() {
        for text in ["LR", "LLR", "LLRR", "LRLRR", "LLRRLR", "LRRRLR"] {
            let (strip, tri) = setup(text);
            for p in enumerate_minimal_paths(&strip) {
                let data = expand_path(&strip, &p).unwrap();
                let profile = path_to_yoshida(&strip, &data).unwrap();
                let imb = check_zero_infty_matching(&profile, &tri);
                assert!(
                    imb.values().all(|&v| v == 0),
                    "word {text} path {:?}: {imb:?}",
                    p.outer
                );
            }
        }
    }

    #[test]
    fn perturbed_profile_breaks_matching() {
        let (strip, tri) = setup("LLRR");
        let path = crate::paths::EdgePath { outer: vec![true, false] };
        let data = expand_path(&strip, &path).unwrap();
        let mut profile = path_to_yoshida(&strip, &data).unwrap();
        let tet = profile.rates.iter().position(|&r| r > 0).unwrap();
        profile.rates[tet] += 1;
        let imb = check_zero_infty_matching(&profile, &tri);
        assert!(imb.values().any(|&v| v != 0));
    }

    #[test]
    fn sphere_templates_are_balanced() {
        // A sphere is a closed surface: its increments alone satisfy matching.
        for text in ["LLRR", "LLRRLLRR", "LRLRR"] {
            let (strip, tri) = setup(text);
            for p in enumerate_minimal_paths(&strip) {
                let data = expand_path(&strip, &p).unwrap();
                for (i, s) in data.sections.iter().enumerate() {
                    if s.kind != SectionType::LR {
                        continue;
                    }
                    let geo = lr_geometry(&strip, s, i).unwrap();
                    for sphere in [geo.upper_sphere(), geo.lower_sphere()] {
                        let mut profile = DegenerationProfile::empty(strip.period());
                        for (tet, ty, rate) in sphere {
                            profile.add(tet, ty, rate).unwrap();
                        }
                        let imb = check_zero_infty_matching(&profile, &tri);
                        assert!(
                            imb.values().all(|&v| v == 0),
                            "word {text} section {i}: {imb:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn two_weight_rules() {
        // alpha < beta: a = alpha + 1, b = alpha.
        assert_eq!(solve_sphere_chain(&[1, 3]).unwrap(), vec![(2, 1)]);
        // alpha = beta: a = b = alpha.
        assert_eq!(solve_sphere_chain(&[0, 0]).unwrap(), vec![(0, 0)]);
        assert_eq!(solve_sphere_chain(&[2, 2]).unwrap(), vec![(2, 2)]);
        // alpha > beta: a = beta, b = beta + 1.
        assert_eq!(solve_sphere_chain(&[3, 1]).unwrap(), vec![(1, 2)]);
    }

    #[test]
    fn five_row_rate_columns() {
        // alpha = 1, beta = 3 gives the rate column (4, 6, 4, 4, 5).
        let (a, b) = solve_sphere_chain(&[1, 3]).unwrap()[0];
        let rates = [1 + a + 1, 2 * a + 2, a + b + 1, 2 * b + 2, 3 + b + 1];
        assert_eq!(rates, [4, 6, 4, 4, 5]);
    }

    #[test]
    fn three_weight_balance() {
        // Weights (0, 2, 0): balance by the dominating middle weight.
        assert_eq!(balance_point(&[0, 2, 0]), Some((2, 2)));
        let counts = solve_sphere_chain(&[0, 2, 0]).unwrap();
        // Verify the resulting rate rows window by window.
        let w = [0u64, 2, 0];
        let mut rows: Vec<u64> = Vec::new();
        for (j, &(a, b)) in counts.iter().enumerate() {
            let b_prev = if j == 0 { 0 } else { counts[j - 1].1 };
            rows.push(w[j] + 1 + b_prev + a);
            rows.push(2 * a + 2);
            rows.push(a + b + 1);
            rows.push(2 * b + 2);
        }
        rows.push(w[2] + 1 + counts[1].1);
        for win in rows.windows(3).step_by(2) {
            let min = win.iter().min().unwrap();
            assert!(win.iter().filter(|&v| v == min).count() >= 2, "rows {rows:?}");
        }
    }
}
