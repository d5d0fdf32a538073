//! Tutte's bijection between rooted maps with n edges and rooted
//! quadrangulations with n faces.
//!
//! Forward: place a vertex in each face of the map and join it to every
//! corner of that face; the old edges are dropped and the edge crossing the
//! old root corner becomes the root, pointing away from it. Backward: split
//! the quadrangulation vertices by distance parity from the origin, draw in
//! each face the diagonal joining its two even ("real") corners, and root at
//! the corner the old root edge was issued from.

use crate::error::{MapError, Result};
use crate::map::{DartId, Quadrangulation, RootedMap};

/// Image of a map under the bijection, with the edge-to-face correspondence
/// and the parity split of the quadrangulation vertices.
pub struct TutteImage {
    pub quad: Quadrangulation,
    /// map edge (min dart) -> face id of the quadrangulation (per its topology)
    pub edge_to_face: Vec<(DartId, usize)>,
    /// vertex ids of the quadrangulation at even distance from the origin
    pub real_vertices: Vec<usize>,
}

/// Preimage of a quadrangulation, with the edge-to-corner correspondence.
pub struct TutteInverse {
    pub map: RootedMap,
    /// quadrangulation edge (min dart) -> corner (dart) of the map
    pub corner_of_edge: Vec<(DartId, DartId)>,
}

/// Quadrangulation dart ids: map dart d contributes the edge `E_d` drawn
/// inside its corner, with dart 2d at the map vertex and 2d+1 at the face
/// vertex.
pub fn tutte_forward(m: &RootedMap) -> TutteImage {
    let nd = m.n_darts();
    let mut alpha = vec![0; 2 * nd];
    let mut sigma = vec![0; 2 * nd];
    for d in 0..nd {
        alpha[2 * d] = 2 * d + 1;
        alpha[2 * d + 1] = 2 * d;
        sigma[2 * d] = 2 * m.sigma(d);
        sigma[2 * d + 1] = 2 * m.face_prev(d) + 1;
    }
    let root = 2 * m.root();
    let qm = RootedMap::from_parts_unchecked(alpha, sigma, root);
    let quad = Quadrangulation::new(qm).expect("Tutte image is a quadrangulation");
    let topo = quad.map().topology();
    let mut edge_to_face = Vec::new();
    for e in m.edges() {
        // the quadrangular face around map edge e contains the map-vertex
        // dart of the edge drawn in the corner after e around its tail
        edge_to_face.push((e, topo.face_of_dart[2 * m.sigma(e)]));
    }
    let dist = quad.map().graph_distance(quad.map().origin());
    let (vid, nv) = quad.map().vertex_ids();
    let _ = vid;
    let real_vertices = (0..nv).filter(|&v| dist[v] % 2 == 0).collect();
    TutteImage {
        quad,
        edge_to_face,
        real_vertices,
    }
}

pub fn tutte_inverse(q: &Quadrangulation) -> Result<TutteInverse> {
    if q.is_sentinel() {
        return Err(MapError::ValidationError(
            "the sentinel has no Tutte preimage".into(),
        ));
    }
    let qm = q.map();
    let nd = qm.n_darts();
    let dist = qm.graph_distance(qm.origin());
    let (vid, _) = qm.vertex_ids();
    let even = |d: DartId| dist[vid[d]] % 2 == 0;

    // assign one map dart per corner at an even vertex
    let mut dart_of_corner = vec![usize::MAX; nd];
    let mut n_mdarts = 0;
    for k in 0..nd {
        if even(k) {
            dart_of_corner[k] = n_mdarts;
            n_mdarts += 1;
        }
    }
    debug_assert_eq!(n_mdarts, nd / 2);
    let mut alpha = vec![usize::MAX; n_mdarts];
    let mut sigma = vec![usize::MAX; n_mdarts];
    for k in 0..nd {
        if !even(k) {
            continue;
        }
        sigma[dart_of_corner[k]] = dart_of_corner[qm.sigma(k)];
        // diagonal partner: the opposite corner of the face of k
        let opp = qm.face_next(qm.face_next(k));
        debug_assert!(even(opp));
        alpha[dart_of_corner[k]] = dart_of_corner[opp];
    }
    let root = dart_of_corner[qm.sigma(qm.root())];
    let map = RootedMap::from_parts_unchecked(alpha, sigma, root);
    map.validate()?;
    let mut corner_of_edge = Vec::new();
    for e in qm.edges() {
        let x = if even(e) { e } else { qm.alpha(e) };
        corner_of_edge.push((e, dart_of_corner[qm.sigma(x)]));
    }
    Ok(TutteInverse {
        map,
        corner_of_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{loop_map, m0, single_edge};

    #[test]
    fn forward_counts() {
        for m in [single_edge(), loop_map(), m0(2), m0(3)] {
            let img = tutte_forward(&m);
            assert_eq!(img.quad.n_faces(), m.n_edges());
            assert_eq!(
                img.quad.map().vertex_count(),
                m.vertex_count() + m.face_count()
            );
            assert_eq!(img.edge_to_face.len(), m.n_edges());
            // edge_to_face is a bijection onto faces
            let mut faces: Vec<usize> = img.edge_to_face.iter().map(|&(_, f)| f).collect();
            faces.sort_unstable();
            faces.dedup();
            assert_eq!(faces.len(), m.n_edges());
        }
    }

    #[test]
    fn single_edge_image_is_path() {
        // one face of degree 2 -> quadrangulation whose face contour visits
        // three distinct vertices (the two-edge path doubled)
        let img = tutte_forward(&single_edge());
        let qm = img.quad.map();
        assert_eq!(qm.n_edges(), 2);
        assert_eq!(qm.vertex_count(), 3);
        let orbit = qm.face_orbit(0);
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn roundtrip_small() {
        for m in [single_edge(), loop_map(), m0(2), m0(3), m0(4)] {
            let img = tutte_forward(&m);
            let back = tutte_inverse(&img.quad).unwrap();
            assert_eq!(back.map.canonical_code(), m.canonical_code());
        }
    }

    #[test]
    fn q1_images_distinct() {
        let a = tutte_forward(&single_edge()).quad;
        let b = tutte_forward(&loop_map()).quad;
        assert_ne!(a.code(), b.code());
    }
}
