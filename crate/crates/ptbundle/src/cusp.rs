//! The induced triangulation of the boundary torus and peripheral curves.
//!
//! Each tetrahedron is modelled on the parallelogram it flips: vertices
//! `P00, P10, P11, P01` with bottom diagonal `P10-P01`, top diagonal
//! `P00-P11` and two middle pairs in the kept-column direction (`u`) and the
//! mediant direction (`v`). Truncating the four ideal vertices gives four
//! link triangles per tetrahedron; gluing bottom faces of each tetrahedron to
//! the top faces of the one below assembles the boundary torus.
//!
//! Curves on the torus are combinatorial: a walk through triangles, each step
//! entering and leaving through two distinct sides and thereby turning around
//! the corner between them. The holonomy is the product of the corner angles,
//! inverted at clockwise turns. The meridian is realised canonically as the
//! push-off of the boundary of a fibre (the cycle of truncation edges on the
//! two bottom faces of one tetrahedron); the semi-meridian is half of it under
//! the 2-fold translation symmetry of the boundary picture.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{slot_value, Real, C};
use crate::triangulation::{slot_u, slot_v, Triangulation, SLOT_TOP};
use crate::word::Letter;
use crate::{Error, Result};

/// Vertices of the flip parallelogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Vert {
    P00,
    P10,
    P11,
    P01,
}

use Vert::*;

pub const VERTS: [Vert; 4] = [P00, P10, P11, P01];

/// Faces of a tetrahedron: two bottoms (glued downward) and two tops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Face {
    /// Bottom face {P00, P10, P01}.
    BottomP,
    /// Bottom face {P10, P11, P01}.
    BottomM,
    /// Top face {P00, P10, P11}.
    TopP,
    /// Top face {P00, P11, P01}.
    TopM,
}

use Face::*;

impl Face {
    pub fn verts(self) -> [Vert; 3] {
        match self {
            BottomP => [P00, P10, P01],
            BottomM => [P10, P11, P01],
            TopP => [P00, P10, P11],
            TopM => [P00, P11, P01],
        }
    }

    pub fn contains(self, v: Vert) -> bool {
        self.verts().contains(&v)
    }
}

/// An edge of the model tetrahedron (unordered vertex pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TetEdge(pub Vert, pub Vert);

impl TetEdge {
    pub fn new(a: Vert, b: Vert) -> TetEdge {
        if a <= b {
            TetEdge(a, b)
        } else {
            TetEdge(b, a)
        }
    }

    /// Angle slot carried by this edge in a tetrahedron of the given letter.
    pub fn slot(self, letter: Letter) -> u8 {
        match (self.0, self.1) {
            (P00, P11) | (P10, P01) => SLOT_TOP,
            (P00, P10) | (P11, P01) => slot_u(letter),
            (P00, P01) | (P10, P11) => slot_v(letter),
            pair => unreachable!("not an edge: {pair:?}"),
        }
    }

    /// Is this tetrahedron edge contained in the given face?
    pub fn in_face(self, f: Face) -> bool {
        f.contains(self.0) && f.contains(self.1)
    }
}

fn vert_index(v: Vert) -> usize {
    match v {
        P00 => 0,
        P10 => 1,
        P11 => 2,
        P01 => 3,
    }
}

/// The three tetrahedron edges at a vertex.
fn edges_at(v: Vert) -> [TetEdge; 3] {
    let mut out = [TetEdge(P00, P00); 3];
    let mut i = 0;
    for &w in &VERTS {
        if w != v {
            out[i] = TetEdge::new(v, w);
            i += 1;
        }
    }
    out
}

const TET_EDGES: [(Vert, Vert); 6] =
    [(P00, P11), (P10, P01), (P00, P10), (P11, P01), (P00, P01), (P10, P11)];

/// A corner of a link triangle: the truncation corner at one tetrahedron edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Corner {
    pub tri: usize,
    /// Index into the triangle's corner list.
    pub slot: usize,
}

/// One step of a combinatorial curve: pass through `tri`, entering and
/// leaving through the given cusp edges, turning around the corner between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveStep {
    pub tri: usize,
    pub enter: usize,
    pub exit: usize,
}

/// Turn direction of a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Turn {
    Anticlockwise,
    Clockwise,
}

/// A closed combinatorial curve on the boundary torus with its declared
/// homology class in the (meridian, fibre-transversal) basis.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryCurve {
    pub steps: Vec<CurveStep>,
    pub homology: (i64, i64),
    pub name: String,
}

/// One link triangle: the truncated end of `tet` at `vert`.
#[derive(Debug, Clone)]
pub struct LinkTriangle {
    pub tet: usize,
    pub vert: Vert,
    /// The three corners, as tetrahedron edges at `vert` (fixed base order).
    pub corners: [TetEdge; 3],
    /// Cusp-edge id of each of the three sides, indexed like `faces`.
    pub sides: [usize; 3],
    /// The three faces at `vert`, matching `sides`.
    pub faces: [Face; 3],
    /// Counterclockwise cyclic order of the local side indices.
    pub ccw: [usize; 3],
}

/// A cusp edge: a truncation edge shared by two link triangles, as
/// (triangle, local side index) pairs, with the explicit identification of
/// its endpoint corners (corner keys `3 * tri + slot`).
#[derive(Debug, Clone, Copy)]
pub struct CuspEdge {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub corner_pairs: [(usize, usize); 2],
}

impl CuspEdge {
    fn other(&self, side: (usize, usize)) -> (usize, usize) {
        if self.left == side {
            self.right
        } else {
            self.left
        }
    }
}

/// The triangulated boundary torus of the layered triangulation.
#[derive(Debug, Clone)]
pub struct CuspTriangulation {
    n: usize,
    pub triangles: Vec<LinkTriangle>,
    pub cusp_edges: Vec<CuspEdge>,
    /// Cusp vertex class per corner key (tri * 3 + corner slot).
    pub vertex_of_corner: Vec<usize>,
    pub vertex_count: usize,
    /// Manifold edge class (triangulation edge index) per corner key.
    pub edge_of_corner: Vec<usize>,
    /// Corner cycles around each cusp vertex, in rotation order; entry `j`
    /// holds a corner and the cusp edge crossed to reach the next corner.
    pub vertex_cycles: Vec<Vec<(Corner, usize)>>,
}

/// Face gluing data between a tetrahedron and the one above it.
fn gluings(letter_low: Letter, letter_high: Letter) -> [(Face, Face, [(Vert, Vert); 3]); 2] {
    if letter_low == letter_high {
        [
            (TopP, BottomP, [(P00, P00), (P10, P10), (P11, P01)]),
            (TopM, BottomM, [(P00, P10), (P11, P11), (P01, P01)]),
        ]
    } else {
        [
            (TopM, BottomP, [(P00, P00), (P01, P10), (P11, P01)]),
            (TopP, BottomM, [(P00, P10), (P10, P01), (P11, P11)]),
        ]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl CuspTriangulation {
    pub fn new(tri: &Triangulation) -> Result<CuspTriangulation> {
        let n = tri.len();
        let tri_id = |tet: usize, v: Vert| 4 * (tet % n) + vert_index(v);

        let mut faces_of: Vec<[Face; 3]> = Vec::with_capacity(4 * n);
        let mut corners_of: Vec<[TetEdge; 3]> = Vec::with_capacity(4 * n);
        for _tet in 0..n {
            for &v in &VERTS {
                let fs: Vec<Face> =
                    [BottomP, BottomM, TopP, TopM].into_iter().filter(|f| f.contains(v)).collect();
                faces_of.push([fs[0], fs[1], fs[2]]);
                corners_of.push(edges_at(v));
            }
        }
        let corner_key = |t: usize, e: TetEdge| -> usize {
            let slot = corners_of[t].iter().position(|&c| c == e).expect("corner at vertex");
            3 * t + slot
        };
        let tet_edge_id = |tet: usize, e: TetEdge| -> usize {
            let idx = TET_EDGES
                .iter()
                .position(|&(a, b)| TetEdge::new(a, b) == e)
                .expect("valid tetrahedron edge");
            6 * (tet % n) + idx
        };

        // Face gluings: cusp edges, corner classes, manifold edge classes.
        type SidePair = (((usize, usize), (usize, usize)), [(usize, usize); 2]);
        let mut side_pairs: Vec<SidePair> = Vec::new();
        let mut corner_uf = UnionFind::new(12 * n);
        let mut tet_edge_uf = UnionFind::new(6 * n);
        for k in 0..n {
            let low = tri.tet(k as i64).letter;
            let high = tri.tet(k as i64 + 1).letter;
            for (f_top, f_bot, vmap) in gluings(low, high) {
                let map = |v: Vert| -> Vert {
                    vmap.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b).expect("vertex in face")
                };
                for &v in &f_top.verts() {
                    let ta = tri_id(k, v);
                    let tb = tri_id(k + 1, map(v));
                    let sa = faces_of[ta].iter().position(|&f| f == f_top).unwrap();
                    let sb = faces_of[tb].iter().position(|&f| f == f_bot).unwrap();
                    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(2);
                    for e in edges_at(v) {
                        if e.in_face(f_top) {
                            let e_img = TetEdge::new(map(e.0), map(e.1));
                            let (ca, cb) = (corner_key(ta, e), corner_key(tb, e_img));
                            corner_uf.union(ca, cb);
                            tet_edge_uf.union(tet_edge_id(k, e), tet_edge_id(k + 1, e_img));
                            pairs.push((ca, cb));
                        }
                    }
                    if pairs.len() != 2 {
                        return Err(Error::internal("side must have two endpoint corners"));
                    }
                    side_pairs.push((((ta, sa), (tb, sb)), [pairs[0], pairs[1]]));
                }
            }
        }

        let mut sides_of: Vec<[usize; 3]> = vec![[usize::MAX; 3]; 4 * n];
        let mut cusp_edges = Vec::with_capacity(6 * n);
        for ((a, b), corner_pairs) in side_pairs {
            let id = cusp_edges.len();
            cusp_edges.push(CuspEdge { left: a, right: b, corner_pairs });
            sides_of[a.0][a.1] = id;
            sides_of[b.0][b.1] = id;
        }
        if cusp_edges.len() != 6 * n || sides_of.iter().flatten().any(|&s| s == usize::MAX) {
            return Err(Error::internal("cusp edge assembly incomplete"));
        }

        // Flatten the union-finds.
        let corner_root: Vec<usize> = (0..12 * n).map(|k| corner_uf.find(k)).collect();
        let tet_edge_root: Vec<usize> = (0..6 * n).map(|k| tet_edge_uf.find(k)).collect();

        // Map manifold-edge roots to strip edge classes: the top edge of the
        // tetrahedron below letter j is the vertex created by letter j.
        let mut root_to_edge: BTreeMap<usize, usize> = BTreeMap::new();
        for j in 0..n {
            let k = (j + n - 1) % n;
            let root = tet_edge_root[tet_edge_id(k, TetEdge::new(P00, P11))];
            if root_to_edge.insert(root, j).map_or(false, |old| old != j) {
                return Err(Error::internal("edge class mismatch"));
            }
        }
        let mut edge_of_corner = vec![usize::MAX; 12 * n];
        for t in 0..4 * n {
            for (slot, &e) in corners_of[t].iter().enumerate() {
                let root = tet_edge_root[tet_edge_id(t / 4, e)];
                let class = *root_to_edge
                    .get(&root)
                    .ok_or_else(|| Error::internal("tet edge missing from class map"))?;
                edge_of_corner[3 * t + slot] = class;
            }
        }

        // Cusp vertices.
        let mut vertex_of_corner = vec![usize::MAX; 12 * n];
        let mut vertex_ids: BTreeMap<usize, usize> = BTreeMap::new();
        for ck in 0..12 * n {
            let next = vertex_ids.len();
            let id = *vertex_ids.entry(corner_root[ck]).or_insert(next);
            vertex_of_corner[ck] = id;
        }
        let vertex_count = vertex_ids.len();
        if vertex_count != 2 * n {
            return Err(Error::internal(format!(
                "expected {} cusp vertices, found {vertex_count}",
                2 * n
            )));
        }

        // Orient the link triangles consistently. The boundary cycle of a
        // triangle visits each side from its corner shared with the previous
        // side to its corner shared with the next; the two triangles of a
        // cusp edge must traverse it in opposite directions.
        let side_dir = |t: usize, s_local: usize, ccw: [usize; 3]| -> (usize, usize) {
            let pos = ccw.iter().position(|&x| x == s_local).unwrap();
            let prev = ccw[(pos + 2) % 3];
            let next = ccw[(pos + 1) % 3];
            let corner_between = |a: usize, b: usize| -> usize {
                let (fa, fb) = (faces_of[t][a], faces_of[t][b]);
                corners_of[t]
                    .iter()
                    .position(|&e| e.in_face(fa) && e.in_face(fb))
                    .expect("corner between adjacent sides")
            };
            (corner_between(prev, s_local), corner_between(s_local, next))
        };
        const CCW_BASE: [usize; 3] = [0, 1, 2];
        const CCW_FLIP: [usize; 3] = [0, 2, 1];
        let mut ccw_of: Vec<[usize; 3]> = vec![CCW_BASE; 4 * n];
        let mut assigned = vec![false; 4 * n];
        let mut flipped = vec![false; 4 * n];
        assigned[0] = true;
        let mut queue = vec![0usize];
        while let Some(t) = queue.pop() {
            let my_ccw = ccw_of[t];
            for s_local in 0..3 {
                let eid = sides_of[t][s_local];
                let (ot, os) = cusp_edges[eid].other((t, s_local));
                let (a, b) = side_dir(t, s_local, my_ccw);
                // Match corners across the edge by the stored identification.
                let pair = |slot: usize| -> Result<usize> {
                    let key = 3 * t + slot;
                    cusp_edges[eid]
                        .corner_pairs
                        .iter()
                        .find_map(|&(x, y)| {
                            if x == key {
                                Some(y % 3)
                            } else if y == key {
                                Some(x % 3)
                            } else {
                                None
                            }
                        })
                        .ok_or_else(|| Error::internal("paired corner across cusp edge"))
                };
                let (oa, ob) = (pair(a)?, pair(b)?);
                let want = (ob, oa);
                let needs_flip = if side_dir(ot, os, CCW_BASE) == want {
                    false
                } else if side_dir(ot, os, CCW_FLIP) == want {
                    true
                } else {
                    return Err(Error::internal("orientation pairing failed"));
                };
                if !assigned[ot] {
                    assigned[ot] = true;
                    flipped[ot] = needs_flip;
                    ccw_of[ot] = if needs_flip { CCW_FLIP } else { CCW_BASE };
                    queue.push(ot);
                } else if flipped[ot] != needs_flip {
                    return Err(Error::internal("cusp surface not orientable"));
                }
            }
        }
        if assigned.iter().any(|&a| !a) {
            return Err(Error::internal("cusp triangulation disconnected"));
        }

        let mut triangles = Vec::with_capacity(4 * n);
        for t in 0..4 * n {
            triangles.push(LinkTriangle {
                tet: t / 4,
                vert: VERTS[t % 4],
                corners: corners_of[t],
                sides: sides_of[t],
                faces: faces_of[t],
                ccw: ccw_of[t],
            });
        }

        let mut cusp = CuspTriangulation {
            n,
            triangles,
            cusp_edges,
            vertex_of_corner,
            vertex_count,
            edge_of_corner,
            vertex_cycles: Vec::new(),
        };
        cusp.vertex_cycles = cusp.build_vertex_cycles()?;
        Ok(cusp)
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle_id(&self, tet: usize, v: Vert) -> usize {
        4 * (tet % self.n) + vert_index(v)
    }

    fn side_local(&self, tri: usize, cusp_edge: usize) -> Result<usize> {
        self.triangles[tri]
            .sides
            .iter()
            .position(|&s| s == cusp_edge)
            .ok_or_else(|| Error::internal("cusp edge is not a side of the triangle"))
    }

    /// Corner of `tri` between the two given cusp edges.
    pub fn corner_between(&self, tri: usize, e1: usize, e2: usize) -> Result<Corner> {
        let t = &self.triangles[tri];
        let f1 = t.faces[self.side_local(tri, e1)?];
        let f2 = t.faces[self.side_local(tri, e2)?];
        let slot = t
            .corners
            .iter()
            .position(|&e| e.in_face(f1) && e.in_face(f2))
            .ok_or_else(|| Error::internal("no corner between sides"))?;
        Ok(Corner { tri, slot })
    }

    /// (tet, angle slot) of a corner.
    pub fn corner_angle(&self, c: Corner, tri: &Triangulation) -> (usize, u8) {
        let t = &self.triangles[c.tri];
        let letter = tri.tets()[t.tet].letter;
        (t.tet, t.corners[c.slot].slot(letter))
    }

    /// Turn direction of a step: clockwise when the exit side follows the
    /// entered one in the triangle's ccw cycle (corner on the right of travel).
    pub fn turn(&self, step: CurveStep) -> Result<Turn> {
        let t = &self.triangles[step.tri];
        let s_in = self.side_local(step.tri, step.enter)?;
        let s_out = self.side_local(step.tri, step.exit)?;
        let pos_in = t.ccw.iter().position(|&x| x == s_in).unwrap();
        if t.ccw[(pos_in + 1) % 3] == s_out {
            Ok(Turn::Clockwise)
        } else {
            Ok(Turn::Anticlockwise)
        }
    }

    /// The corner cut by a step.
    pub fn step_corner(&self, step: CurveStep) -> Result<Corner> {
        self.corner_between(step.tri, step.enter, step.exit)
    }

    fn build_vertex_cycles(&self) -> Result<Vec<Vec<(Corner, usize)>>> {
        let mut cycles = vec![Vec::new(); self.vertex_count];
        let mut seen = vec![false; self.triangles.len() * 3];
        for start_key in 0..self.triangles.len() * 3 {
            if seen[start_key] {
                continue;
            }
            let v = self.vertex_of_corner[start_key];
            if !cycles[v].is_empty() {
                continue;
            }
            let mut c = Corner { tri: start_key / 3, slot: start_key % 3 };
            loop {
                let key = 3 * c.tri + c.slot;
                if seen[key] {
                    break;
                }
                seen[key] = true;
                let (next, crossed) = self.rotate_corner(c)?;
                cycles[v].push((c, crossed));
                c = next;
            }
        }
        for (v, cyc) in cycles.iter().enumerate() {
            if cyc.is_empty() {
                return Err(Error::internal(format!("empty corner cycle at vertex {v}")));
            }
        }
        Ok(cycles)
    }

    /// Rotate one step around the vertex of a corner (fixed rotational sense);
    /// returns the next corner and the cusp edge crossed.
    fn rotate_corner(&self, c: Corner) -> Result<(Corner, usize)> {
        let t = &self.triangles[c.tri];
        let e = t.corners[c.slot];
        let flanks: Vec<usize> = (0..3).filter(|&s| e.in_face(t.faces[s])).collect();
        if flanks.len() != 2 {
            return Err(Error::internal("corner must have two flanking sides"));
        }
        // Exit through the flank whose ccw successor is the other flank.
        let pos0 = t.ccw.iter().position(|&x| x == flanks[0]).unwrap();
        let exit_local = if t.ccw[(pos0 + 1) % 3] == flanks[1] { flanks[0] } else { flanks[1] };
        let eid = t.sides[exit_local];
        let key = 3 * c.tri + c.slot;
        let paired = self.cusp_edges[eid]
            .corner_pairs
            .iter()
            .find_map(|&(x, y)| {
                if x == key {
                    Some(y)
                } else if y == key {
                    Some(x)
                } else {
                    None
                }
            })
            .ok_or_else(|| Error::internal("no paired corner while rotating"))?;
        Ok((Corner { tri: paired / 3, slot: paired % 3 }, eid))
    }

    /// A small loop turning once around a cusp vertex (all turns one way);
    /// its holonomy equals the gluing-equation product of the manifold edge.
    pub fn vertex_loop(&self, vertex: usize) -> Result<Vec<CurveStep>> {
        let cyc = &self.vertex_cycles[vertex];
        let m = cyc.len();
        let mut steps = Vec::with_capacity(m);
        for j in 0..m {
            let (c, crossed) = cyc[j];
            let prev = cyc[(j + m - 1) % m].1;
            steps.push(CurveStep { tri: c.tri, enter: prev, exit: crossed });
        }
        Ok(steps)
    }

    /// The truncation-edge cycle of the fibre below tetrahedron `level`: the
    /// six cusp edges on its two bottom faces in cyclic order around the
    /// puncture, each with the cusp vertex at which it meets the next edge.
    /// Both the cyclic order and the junction corners come from the sector
    /// pattern of the flip parallelogram and depend on its handedness, i.e.
    /// on the letter of the tetrahedron.
    pub fn fiber_cycle(
        &self,
        tri_data: &Triangulation,
        level: usize,
    ) -> Result<Vec<(usize, usize)>> {
        // (link vertex, bottom face, junction tet-edge towards the next entry).
        let order_l = [
            (P00, BottomP, TetEdge::new(P00, P01)),
            (P10, BottomM, TetEdge::new(P10, P01)),
            (P10, BottomP, TetEdge::new(P10, P00)),
            (P11, BottomM, TetEdge::new(P11, P10)),
            (P01, BottomP, TetEdge::new(P01, P10)),
            (P01, BottomM, TetEdge::new(P01, P11)),
        ];
        let order_r = [
            (P00, BottomP, TetEdge::new(P00, P10)),
            (P01, BottomM, TetEdge::new(P01, P10)),
            (P01, BottomP, TetEdge::new(P01, P00)),
            (P11, BottomM, TetEdge::new(P11, P01)),
            (P10, BottomP, TetEdge::new(P10, P00)),
            (P10, BottomM, TetEdge::new(P10, P11)),
        ];
        let order = match tri_data.tet(level as i64).letter {
            Letter::L => order_l,
            Letter::R => order_r,
        };
        let mut out = Vec::with_capacity(6);
        for &(v, f, junction) in &order {
            let t = self.triangle_id(level, v);
            let s = self.triangles[t]
                .faces
                .iter()
                .position(|&ff| ff == f)
                .ok_or_else(|| Error::internal("bottom face missing"))?;
            let eid = self.triangles[t].sides[s];
            let corner_slot = self.triangles[t]
                .corners
                .iter()
                .position(|&e| e == junction)
                .ok_or_else(|| Error::internal("junction corner missing"))?;
            let omega = self.vertex_of_corner[3 * t + corner_slot];
            out.push((eid, omega));
        }
        // Each junction vertex must be an endpoint of both adjacent edges.
        for j in 0..6 {
            let (e, omega) = out[j];
            let (e_next, _) = out[(j + 1) % 6];
            if !self.edge_endpoints(e).contains(&omega)
                || !self.edge_endpoints(e_next).contains(&omega)
            {
                return Err(Error::internal(format!(
                    "fiber cycle junction mismatch at level {level} slot {j}: edge {e} ends {:?}, next {e_next} ends {:?}, junction {omega}",
                    self.edge_endpoints(e),
                    self.edge_endpoints(e_next)
                )));
            }
        }
        Ok(out)
    }

    /// Endpoint cusp-vertex classes of a cusp edge.
    fn edge_endpoints(&self, eid: usize) -> [usize; 2] {
        let pairs = self.cusp_edges[eid].corner_pairs;
        [self.vertex_of_corner[pairs[0].0], self.vertex_of_corner[pairs[1].0]]
    }

    fn shared_vertex(&self, a: usize, b: usize) -> Option<usize> {
        let ea = self.edge_endpoints(a);
        let eb = self.edge_endpoints(b);
        ea.iter().find(|v| eb.contains(v)).copied()
    }

    /// Push the fibre cycle off itself into the tetrahedron above, yielding
    /// the canonical meridian representative at this level.
    pub fn meridian_walk(&self, tri_data: &Triangulation, level: usize) -> Result<Vec<CurveStep>> {
        let cycle = self.fiber_cycle(tri_data, level)?;
        let m = cycle.len();
        let mut steps: Vec<CurveStep> = Vec::new();
        for j in 0..m {
            let (e_in, omega) = cycle[j];
            let (e_out, _) = cycle[(j + 1) % m];
            let cyc = &self.vertex_cycles[omega];
            let d = cyc.len();
            let pos_of = |eid: usize| (0..d).find(|&i| cyc[i].1 == eid);
            let a = pos_of(e_in).ok_or_else(|| Error::internal("edge not around vertex"))?;
            let b = pos_of(e_out).ok_or_else(|| Error::internal("edge not around vertex"))?;
            if a == b {
                return Err(Error::internal("degenerate fan sweep"));
            }
            // Sweep the corner fan between the two edges on the side of
            // tetrahedron `level` (the side of e_in away from the fibre).
            let upper_tri_of = |eid: usize| -> usize {
                let (lt, _) = self.cusp_edges[eid].left;
                let (rt, _) = self.cusp_edges[eid].right;
                if self.triangles[lt].tet == level % self.n {
                    lt
                } else {
                    rt
                }
            };
            let fwd_first = cyc[(a + 1) % d].0;
            if fwd_first.tri == upper_tri_of(e_in) {
                // Corners a+1 .. b, entering across s_{i-1}, exiting s_i.
                let len = (b + d - a) % d;
                let mut enter = e_in;
                for step in 1..=len {
                    let i = (a + step) % d;
                    let (c, crossed) = cyc[i];
                    steps.push(CurveStep { tri: c.tri, enter, exit: crossed });
                    enter = crossed;
                }
            } else {
                // Corners a, a-1, ..., b+1, entering across s_i, exiting s_{i-1}.
                let len = (a + d - b) % d;
                let mut enter = e_in;
                for step in 0..len {
                    let i = (a + d - step) % d;
                    let (c, _) = cyc[i];
                    let exit = cyc[(i + d - 1) % d].1;
                    steps.push(CurveStep { tri: c.tri, enter, exit });
                    enter = exit;
                }
            }
        }
        for j in 0..steps.len() {
            let next = steps[(j + 1) % steps.len()];
            if steps[j].exit != next.enter {
                return Err(Error::internal("meridian walk does not chain"));
            }
        }
        Ok(steps)
    }

    /// The translation involution of the boundary picture.
    pub fn sigma_tri(&self, t: usize) -> usize {
        let tet = t / 4;
        let sv = match VERTS[t % 4] {
            P00 => P11,
            P11 => P00,
            P10 => P01,
            P01 => P10,
        };
        self.triangle_id(tet, sv)
    }

    pub fn sigma_edge(&self, eid: usize) -> Result<usize> {
        let (t, s) = self.cusp_edges[eid].left;
        let sf = match self.triangles[t].faces[s] {
            BottomP => BottomM,
            BottomM => BottomP,
            TopP => TopM,
            TopM => TopP,
        };
        let st = self.sigma_tri(t);
        let s2 = self.triangles[st]
            .faces
            .iter()
            .position(|&ff| ff == sf)
            .ok_or_else(|| Error::internal("sigma face missing"))?;
        Ok(self.triangles[st].sides[s2])
    }

    fn sigma_step(&self, s: &CurveStep) -> Result<CurveStep> {
        Ok(CurveStep {
            tri: self.sigma_tri(s.tri),
            enter: self.sigma_edge(s.enter)?,
            exit: self.sigma_edge(s.exit)?,
        })
    }

    /// Half of a meridian walk under the translation symmetry: the
    /// semi-meridian as a path closing up in the quotient.
    pub fn semi_meridian_walk(&self, tri_data: &Triangulation, level: usize) -> Result<Vec<CurveStep>> {
        let w = self.meridian_walk(tri_data, level)?;
        let m = w.len();
        if m % 2 != 0 {
            return Err(Error::internal("meridian walk has odd length"));
        }
        for (j, s) in w.iter().enumerate() {
            if self.sigma_step(s)? != w[(j + m / 2) % m] {
                return Err(Error::internal("meridian walk is not sigma symmetric"));
            }
        }
        Ok(w[..m / 2].to_vec())
    }

    /// The canonical transversal: a closed walk crossing every layer once
    /// through the P00 links.
    pub fn vertical_walk(&self, tri_data: &Triangulation) -> Result<Vec<CurveStep>> {
        let n = self.n;
        let mut steps = Vec::with_capacity(n);
        for k in 0..n {
            let t = self.triangle_id(k, P00);
            let low = tri_data.tet(k as i64).letter;
            let high = tri_data.tet(k as i64 + 1).letter;
            let exit_face = if low == high { TopP } else { TopM };
            let enter_local = self.triangles[t].faces.iter().position(|&f| f == BottomP).unwrap();
            let exit_local = self.triangles[t].faces.iter().position(|&f| f == exit_face).unwrap();
            steps.push(CurveStep {
                tri: t,
                enter: self.triangles[t].sides[enter_local],
                exit: self.triangles[t].sides[exit_local],
            });
        }
        for j in 0..steps.len() {
            let next = steps[(j + 1) % steps.len()];
            if steps[j].exit != next.enter {
                return Err(Error::internal("vertical walk does not chain"));
            }
        }
        Ok(steps)
    }

    /// Holonomy of a walk at the given shapes: product of corner angles,
    /// inverted at clockwise turns.
    pub fn holonomy<T: Real>(
        &self,
        tri: &Triangulation,
        shapes: &[C<T>],
        steps: &[CurveStep],
    ) -> Result<C<T>> {
        tri.check_shapes_nondegenerate(shapes, T::zero())?;
        let mut acc = C::new(T::one(), T::zero());
        for &s in steps {
            let corner = self.step_corner(s)?;
            let (tet, slot) = self.corner_angle(corner, tri);
            let v = slot_value(shapes[tet], slot);
            match self.turn(s)? {
                Turn::Anticlockwise => acc = acc * v,
                Turn::Clockwise => {
                    if v.norm() == T::zero() {
                        return Err(Error::DivisionByZero(format!("angle of tet {tet}")));
                    }
                    acc = acc / v;
                }
            }
        }
        Ok(acc)
    }

    /// (tet, slot, turn sign) sequence of a walk.
    pub fn walk_corners(
        &self,
        tri: &Triangulation,
        steps: &[CurveStep],
    ) -> Result<Vec<(usize, u8, i32)>> {
        steps
            .iter()
            .map(|&s| {
                let corner = self.step_corner(s)?;
                let (tet, slot) = self.corner_angle(corner, tri);
                let sign = match self.turn(s)? {
                    Turn::Anticlockwise => 1,
                    Turn::Clockwise => -1,
                };
                Ok((tet, slot, sign))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::MonodromyWord;
    use num_complex::Complex64;

    fn setup(text: &str) -> (Triangulation, CuspTriangulation) {
        let tri = Triangulation::new(&MonodromyWord::parse(text).unwrap());
        let cusp = CuspTriangulation::new(&tri).unwrap();
        (tri, cusp)
    }

    fn words() -> Vec<&'static str> {
        vec!["LR", "LLR", "LLRR", "LRLRR", "LLLRRR", "LLRLRR", "LRRRRR"]
    }

    fn random_shapes(n: usize, seed: u64) -> Vec<Complex64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..2.0)))
            .collect()
    }

    #[test]
    fn euler_characteristic_is_zero() {
        for text in words() {
            let (tri, cusp) = setup(text);
            let n = tri.len();
            assert_eq!(cusp.vertex_count, 2 * n);
            assert_eq!(cusp.cusp_edges.len(), 6 * n);
            assert_eq!(cusp.triangles.len(), 4 * n);
        }
    }

    #[test]
    fn vertex_cycles_match_gluing_equations() {
        for text in words() {
            let (tri, cusp) = setup(text);
            let mut ends_per_edge = vec![0usize; tri.len()];
            for (v, cyc) in cusp.vertex_cycles.iter().enumerate() {
                let class = cusp.edge_of_corner[3 * cyc[0].0.tri + cyc[0].0.slot];
                ends_per_edge[class] += 1;
                let mut got: Vec<(usize, u8)> =
                    cyc.iter().map(|&(c, _)| cusp.corner_angle(c, &tri)).collect();
                got.sort();
                let mut want: Vec<(usize, u8)> = Vec::new();
                for term in &tri.edges()[class].incidences {
                    for _ in 0..term.exponent {
                        want.push((term.tet, term.slot));
                    }
                }
                want.sort();
                assert_eq!(got, want, "word {text} vertex {v}");
            }
            assert!(ends_per_edge.iter().all(|&c| c == 2), "word {text}");
        }
    }

    #[test]
    fn vertex_loops_recover_gluing_products() {
        for text in words() {
            let (tri, cusp) = setup(text);
            let shapes = random_shapes(tri.len(), 11);
            let eqs = tri.gluing_equations();
            for v in 0..cusp.vertex_count {
                let steps = cusp.vertex_loop(v).unwrap();
                let turns: Vec<Turn> = steps.iter().map(|&s| cusp.turn(s).unwrap()).collect();
                assert!(turns.iter().all(|&t| t == turns[0]), "word {text} vertex {v}");
                let h = cusp.holonomy(&tri, &shapes, &steps).unwrap();
                let class =
                    cusp.edge_of_corner[3 * cusp.vertex_cycles[v][0].0.tri + cusp.vertex_cycles[v][0].0.slot];
                let want = tri.equation_value(&eqs[class], &shapes);
                let ok = (h / want - 1.0).norm() < 1e-9 || (h * want - 1.0).norm() < 1e-9;
                assert!(ok, "word {text} vertex {v}: {h} vs {want}");
            }
        }
    }

    #[test]
    fn meridian_walks_chain_and_square_to_semi() {
        for text in words() {
            let (tri, cusp) = setup(text);
            for level in 0..tri.len() {
                let walk = cusp.meridian_walk(&tri, level).unwrap();
                let semi = cusp.semi_meridian_walk(&tri, level).unwrap();
                assert_eq!(walk.len(), 2 * semi.len(), "word {text} level {level}");
                let shapes = random_shapes(tri.len(), 5 + level as u64);
                let hm = cusp.holonomy(&tri, &shapes, &walk).unwrap();
                let hs = cusp.holonomy(&tri, &shapes, &semi).unwrap();
                assert!(
                    (hs * hs - hm).norm() < 1e-9 * hm.norm().max(1.0),
                    "word {text} level {level}: semi^2 {} vs meridian {}",
                    hs * hs,
                    hm
                );
            }
        }
    }

    #[test]
    fn meridian_measurements_agree_at_solutions() {
        // At a gluing-equation solution all meridian measurements agree; the
        // figure-eight geometric solution also has meridian holonomy 1
        // (completeness).
        let (tri, cusp) = setup("LR");
        let w = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let shapes = vec![w, w];
        let h0 = cusp.holonomy(&tri, &shapes, &cusp.meridian_walk(&tri, 0).unwrap()).unwrap();
        let h1 = cusp.holonomy(&tri, &shapes, &cusp.meridian_walk(&tri, 1).unwrap()).unwrap();
        assert!((h0 - h1).norm() < 1e-12);
        assert!((h0 - 1.0).norm() < 1e-12, "meridian at figure-eight: {h0}");
    }

    #[test]
    fn vertical_walk_closes() {
        for text in words() {
            let (tri, cusp) = setup(text);
            let w = cusp.vertical_walk(&tri).unwrap();
            assert_eq!(w.len(), tri.len());
        }
    }
}
