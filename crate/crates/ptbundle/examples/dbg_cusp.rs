use ptbundle::cusp::{CuspTriangulation, Face, TetEdge, Vert};
use ptbundle::triangulation::Triangulation;
use ptbundle::word::MonodromyWord;

fn main() {
    use Vert::*;
    let tri = Triangulation::new(&MonodromyWord::parse("LR").unwrap());
    let cusp = CuspTriangulation::new(&tri).unwrap();
    let level = 0usize;
    let order_l = [
        (P00, Face::BottomP, TetEdge::new(P00, P01)),
        (P10, Face::BottomM, TetEdge::new(P10, P01)),
        (P10, Face::BottomP, TetEdge::new(P10, P00)),
        (P11, Face::BottomM, TetEdge::new(P11, P10)),
        (P01, Face::BottomP, TetEdge::new(P01, P10)),
        (P01, Face::BottomM, TetEdge::new(P01, P11)),
    ];
    for &(v, f, junction) in &order_l {
        let t = cusp.triangle_id(level, v);
        let lt = &cusp.triangles[t];
        let s = lt.faces.iter().position(|&ff| ff == f).unwrap();
        let eid = lt.sides[s];
        let corner_slot = lt.corners.iter().position(|&e| e == junction).unwrap();
        let omega = cusp.vertex_of_corner[3 * t + corner_slot];
        // endpoint vertices of eid via corner pairs
        let ce = &cusp.cusp_edges[eid];
        let ends: Vec<usize> =
            ce.corner_pairs.iter().map(|p| cusp.vertex_of_corner[p.0]).collect();
        println!("({v:?},{f:?}) edge {eid} ends {ends:?} junction corner {junction:?} -> vertex {omega}");
    }
}
