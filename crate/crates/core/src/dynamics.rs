//! Local moves: edge rotation on rooted maps, edge flip on quadrangulations,
//! the associated Markov chains and the normalisation walk to the nested-loop
//! map.

use crate::error::{MapError, Result};
use crate::map::{DartId, Quadrangulation, RootedMap};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Sign of a rotation: keep, clockwise, counterclockwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum Sign3 {
    Eq,
    Plus,
    Minus,
}

/// Sign of a flip.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A rotation move: corner (dart) plus sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationMove {
    pub corner: DartId,
    pub sign: Sign3,
}

/// Which Markov chain is being run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ChainKind {
    /// Edge rotations on rooted maps with n edges.
    Rotation,
    /// Edge flips on quadrangulations, root edge never flipped.
    FlipNoRoot,
    /// Edge flips on quadrangulations, root edge flippable.
    FlipWithRoot,
}

// --------------------------------------------------------------------------
// low-level surgery helpers

/// Splice dart `k` out of its sigma cycle, routing its live predecessor to
/// its first live successor. `dead` marks every dart being removed.
fn splice_out(sigma: &mut [DartId], dead: &[bool], k: DartId) {
    let Some(pred) = (0..sigma.len()).find(|&i| !dead[i] && sigma[i] == k) else {
        return;
    };
    let mut succ = sigma[k];
    while dead[succ] {
        succ = sigma[succ];
    }
    sigma[pred] = succ;
}

/// Remove the given darts (already spliced out of sigma; alpha-paired among
/// themselves) compacting indices by descending swap-remove.
fn compact(alpha: &mut Vec<DartId>, sigma: &mut Vec<DartId>, root: &mut DartId, mut kills: Vec<DartId>) {
    kills.sort_unstable_by(|a, b| b.cmp(a));
    for k in kills {
        let last = alpha.len() - 1;
        if k != last {
            let a = alpha[last];
            alpha[k] = a;
            alpha[a] = k;
            let s = sigma[last];
            sigma[k] = if s == last { k } else { s };
            for i in 0..last {
                if sigma[i] == last {
                    sigma[i] = k;
                }
            }
            if *root == last {
                *root = k;
            }
        }
        alpha.pop();
        sigma.pop();
    }
}

// --------------------------------------------------------------------------
// edge rotation

/// The rotated map `m^{c,s}`. The corner `c` must differ from the root
/// corner. A triangular face is created by joining the contour neighbours of
/// `c` (or by sprouting a fresh vertex inside a degree-1 face) and then one of
/// its sides is erased according to `s`.
pub fn rotate(m: &RootedMap, c: DartId, s: Sign3) -> Result<RootedMap> {
    if c >= m.n_darts() {
        return Err(MapError::InvalidCorner(c));
    }
    if c == m.root() {
        return Err(MapError::RootCorner);
    }
    if s == Sign3::Eq {
        return Ok(m.clone());
    }
    let mut alpha = m.alpha_slice().to_vec();
    let mut sigma = m.sigma_slice().to_vec();
    let mut root = m.root();
    let d = c;
    let nd = alpha.len();

    let kills: Vec<DartId>;
    if m.face_next(d) == d {
        // degree-1 face: sprout a pendant vertex inside the loop, then erase
        // the loop (both signs agree here)
        let n_u = nd;
        let n_x = nd + 1;
        alpha.extend_from_slice(&[n_x, n_u]);
        sigma.extend_from_slice(&[n_u, n_x]);
        let pred_d = sigma.iter().position(|&x| x == d).unwrap();
        sigma[pred_d] = n_u;
        sigma[n_u] = d;
        sigma[n_x] = n_x;
        kills = vec![d, alpha[d]];
    } else {
        let p = alpha[d];
        let y = sigma[p]; // corner after c in the clockwise contour
        let sid = m.sigma_inv(d);
        let z = alpha[sid]; // corner before c in the clockwise contour
        let n1 = nd;
        let n2 = nd + 1;
        alpha.extend_from_slice(&[n2, n1]);
        sigma.extend_from_slice(&[n1, n2]);
        // insert n2 into corner y, then n1 into corner z; when y == z this
        // leaves the cyclic order p, n2, n1, y around their shared vertex
        sigma[p] = n2;
        sigma[n2] = y;
        let pz = sigma.iter().position(|&x| x == z).unwrap();
        sigma[pz] = n1;
        sigma[n1] = z;
        kills = match s {
            Sign3::Plus => vec![d, p],
            Sign3::Minus => vec![sid, z],
            Sign3::Eq => unreachable!(),
        };
        // rerooting: a root corner at one of the joined corners keeps the part
        // outside the new triangle
        if root == z {
            root = n1;
        }
        // root == y keeps its dart
    }

    let mut dead = vec![false; alpha.len()];
    for &k in &kills {
        dead[k] = true;
    }
    for &k in &kills {
        splice_out(&mut sigma, &dead, k);
    }
    if dead[root] {
        let mut x = sigma[root];
        while dead[x] {
            x = sigma[x];
        }
        root = x;
    }
    compact(&mut alpha, &mut sigma, &mut root, kills);
    let out = RootedMap::from_parts_unchecked(alpha, sigma, root);
    debug_assert!(out.validate().is_ok(), "rotation produced an invalid map");
    Ok(out)
}

// --------------------------------------------------------------------------
// edge flip

/// Flip edge `e` of a quadrangulation. The replacement edge reuses the dart
/// indices of `e`, so callers may track an edge through a flip sequence by
/// index. Root flips require `allow_root`.
pub fn flip(q: &Quadrangulation, e: DartId, s: Sign, allow_root: bool) -> Result<Quadrangulation> {
    let m = q.map();
    if e >= m.n_darts() {
        return Err(MapError::InvalidCorner(e));
    }
    let d = m.edge_of(e);
    let db = m.alpha(d);
    let is_root_edge = m.root_edge() == d;
    if is_root_edge && !allow_root {
        return Err(MapError::RootEdgeForbidden);
    }
    let n = q.n_faces();
    let mut alpha = m.alpha_slice().to_vec();
    let mut sigma = m.sigma_slice().to_vec();
    let mut root = m.root();

    let orbit = m.face_orbit(d);
    let same_face = orbit.contains(&db);
    let dead_pair = |dd: DartId, dbb: DartId, sigma: &mut Vec<DartId>| {
        let dead: Vec<bool> = {
            let mut v = vec![false; sigma.len()];
            v[dd] = true;
            v[dbb] = true;
            v
        };
        splice_out(sigma, &dead, dd);
        splice_out(sigma, &dead, dbb);
        // park the removed darts on themselves so later predecessor scans
        // cannot match their stale entries
        sigma[dd] = dd;
        sigma[dbb] = dbb;
    };

    if same_face {
        // internal edge of a degenerate face: re-hang the pendant from the
        // opposite boundary vertex; both signs agree
        let tip = if m.vertex_degree(d) == 1 { d } else { db };
        let base = alpha[tip];
        let g = sigma[base];
        let h = m.face_next(g);
        debug_assert_eq!(m.face_next(h), base, "degenerate face pattern");
        dead_pair(base, tip, &mut sigma);
        // new edge joins the far bigon vertex (tail of h) to the tip; reuse
        // indices: base -> dart at the far vertex, tip -> dart at the tip
        let n_v = base;
        let n_w = tip;
        let ph = sigma.iter().position(|&x| x == h).unwrap();
        sigma[ph] = n_v;
        sigma[n_v] = h;
        sigma[n_w] = n_w;
        alpha[n_v] = n_w;
        alpha[n_w] = n_v;
        // a root at the old pendant keeps its index and its orientation
        // relative to the degree-1 endpoint
    } else {
        let fr = orbit; // (d, a1, a2, a3)
        let fl = m.face_orbit(db); // (db, b1, b2, b3)
        if fr.len() != 4 || fl.len() != 4 {
            return Err(MapError::ValidationError(
                "flip applies to quadrangulations only".into(),
            ));
        }
        let (a2, a3) = (fr[2], fr[3]);
        let (b2, b3) = (fl[2], fl[3]);
        dead_pair(d, db, &mut sigma);
        let (ca, cb) = match s {
            // clockwise: insert before a2 (d side) and before b2
            Sign::Plus => (a2, b2),
            // counterclockwise: insert before b3 (d side) and before a3
            Sign::Minus => (b3, a3),
        };
        let (na, nb) = (d, db);
        let pa = sigma.iter().position(|&x| x == ca).unwrap();
        sigma[pa] = na;
        sigma[na] = ca;
        let pb = sigma.iter().position(|&x| x == cb).unwrap();
        sigma[pb] = nb;
        sigma[nb] = cb;
        alpha[na] = nb;
        alpha[nb] = na;
        if is_root_edge {
            // preserve the root orientation through the rotation
            root = if root == d { db } else { d };
        }
    }
    let out = RootedMap::from_parts_unchecked(alpha, sigma, root);
    debug_assert!(out.validate().is_ok(), "flip produced an invalid map");
    let out = Quadrangulation::from_map_unchecked(out, n);
    debug_assert!(Quadrangulation::new(out.map().clone()).is_ok());
    Ok(out)
}

// --------------------------------------------------------------------------
// chains

fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact transition probability of one chain step from `x` to `y`.
/// States are compared by canonical code.
pub fn transition_probability(kind: ChainKind, x: &RootedMap, y: &RootedMap) -> BigRational {
    let cy = y.canonical_code();
    let n = x.n_edges();
    let mut hits = BigRational::zero();
    match kind {
        ChainKind::Rotation => {
            for c in 0..x.n_darts() {
                if c == x.root() {
                    continue;
                }
                for s in [Sign3::Plus, Sign3::Minus] {
                    if rotate(x, c, s).unwrap().canonical_code() == cy {
                        hits += BigRational::one();
                    }
                }
            }
            if x.canonical_code() == cy {
                hits += big((2 * n - 1) as i64);
            }
            hits / big((3 * (2 * n - 1)) as i64)
        }
        ChainKind::FlipNoRoot | ChainKind::FlipWithRoot => {
            let allow_root = kind == ChainKind::FlipWithRoot;
            let q = Quadrangulation::new(x.clone()).expect("flip chains run on quadrangulations");
            let mut count_e = 0i64;
            for e in x.edges() {
                if !allow_root && e == x.root_edge() {
                    continue;
                }
                count_e += 1;
                for s in [Sign::Plus, Sign::Minus] {
                    if flip(&q, e, s, allow_root).unwrap().map().canonical_code() == cy {
                        hits += BigRational::one();
                    }
                }
            }
            if x.canonical_code() == cy {
                hits += big(count_e);
            }
            hits / big(3 * count_e)
        }
    }
}

/// One sampled step of the chain.
pub fn step<R: Rng>(kind: ChainKind, x: &RootedMap, rng: &mut R) -> RootedMap {
    match kind {
        ChainKind::Rotation => {
            let nd = x.n_darts();
            let mut c = rng.gen_range(0..nd - 1);
            if c >= x.root() {
                c += 1;
            }
            let s = match rng.gen_range(0..3) {
                0 => Sign3::Eq,
                1 => Sign3::Plus,
                _ => Sign3::Minus,
            };
            rotate(x, c, s).unwrap()
        }
        ChainKind::FlipNoRoot | ChainKind::FlipWithRoot => {
            let allow_root = kind == ChainKind::FlipWithRoot;
            let q = Quadrangulation::new(x.clone()).expect("flip chains run on quadrangulations");
            let edges: Vec<DartId> = x
                .edges()
                .into_iter()
                .filter(|&e| allow_root || e != x.root_edge())
                .collect();
            let e = edges[rng.gen_range(0..edges.len())];
            match rng.gen_range(0..3) {
                0 => x.clone(),
                1 => flip(&q, e, Sign::Plus, allow_root).unwrap().into_map(),
                _ => flip(&q, e, Sign::Minus, allow_root).unwrap().into_map(),
            }
        }
    }
}

/// Replay of the irreducibility proof: rotations taking `m` to the nested
/// loop map with the same number of edges.
pub fn normalize_to_m0(m: &RootedMap) -> Vec<RotationMove> {
    let n = m.n_edges();
    let target = crate::map::m0(n).canonical_code();
    let mut cur = m.clone();
    let mut moves = Vec::new();
    let budget = 64 * n * n + 64;
    // first reduce the degree of the face containing the root corner to 1
    while cur.face_degree(cur.root()) > 1 {
        let c1 = cur.face_next(cur.root());
        moves.push(RotationMove {
            corner: c1,
            sign: Sign3::Minus,
        });
        cur = rotate(&cur, c1, Sign3::Minus).unwrap();
        assert!(moves.len() <= budget, "normalisation did not converge");
    }
    // then shrink, in counterclockwise order around the origin, every face of
    // degree more than 2
    loop {
        let around = cur.vertex_orbit(cur.root());
        let Some(&c) = around.iter().find(|&&c| cur.face_degree(c) > 2) else {
            break;
        };
        let c1 = cur.face_next(c);
        moves.push(RotationMove {
            corner: c1,
            sign: Sign3::Minus,
        });
        cur = rotate(&cur, c1, Sign3::Minus).unwrap();
        assert!(moves.len() <= budget, "normalisation did not converge");
    }
    assert_eq!(cur.canonical_code(), target, "normalisation missed m0");
    moves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{build_map, loop_map, m0, single_edge};

    #[test]
    fn rotation_eq_is_identity() {
        let m = m0(2);
        for c in 0..m.n_darts() {
            if c == m.root() {
                continue;
            }
            let r = rotate(&m, c, Sign3::Eq).unwrap();
            assert_eq!(r.canonical_code(), m.canonical_code());
        }
    }

    #[test]
    fn root_corner_rejected() {
        let m = m0(1);
        assert_eq!(rotate(&m, m.root(), Sign3::Plus).unwrap_err(), MapError::RootCorner);
    }

    #[test]
    fn loop_to_pendant_fixture() {
        // rotating at the outer corner of the rooted loop yields the single
        // edge map, for either sign
        let m = m0(1);
        let outer = 1 - m.root();
        for s in [Sign3::Plus, Sign3::Minus] {
            let r = rotate(&m, outer, s).unwrap();
            assert_eq!(r.canonical_code(), single_edge().canonical_code());
        }
        // and back: the single edge map has two corners; rotating at the
        // non-root one recreates a loop
        let e = single_edge();
        let r = rotate(&e, 1, Sign3::Plus).unwrap();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.face_count(), 2);
    }

    #[test]
    fn rotations_preserve_edge_count_and_validity() {
        for m in [single_edge(), loop_map(), m0(2), m0(3)] {
            for c in 0..m.n_darts() {
                if c == m.root() {
                    continue;
                }
                for s in [Sign3::Plus, Sign3::Minus] {
                    let r = rotate(&m, c, s).unwrap();
                    r.validate().unwrap();
                    assert_eq!(r.n_edges(), m.n_edges());
                }
            }
        }
    }

    #[test]
    fn normalize_small() {
        assert!(normalize_to_m0(&m0(3)).is_empty());
        let moves = normalize_to_m0(&single_edge());
        assert!(!moves.is_empty());
        // replay
        let mut cur = single_edge();
        for mv in &moves {
            cur = rotate(&cur, mv.corner, mv.sign).unwrap();
        }
        assert_eq!(cur.canonical_code(), m0(1).canonical_code());
    }

    #[test]
    fn degenerate_flip_signs_agree() {
        // path-shaped element of Q_1: origin at an end
        let q = path_q1();
        // non-root edges
        let root_edge = q.map().root_edge();
        for e in q.map().edges() {
            if e == root_edge {
                continue;
            }
            let a = flip(&q, e, Sign::Plus, false).unwrap();
            let b = flip(&q, e, Sign::Minus, false).unwrap();
            assert_eq!(a.code(), b.code());
        }
    }

    /// The 1-face quadrangulation shaped as a two-edge path, rooted end to
    /// middle.
    fn path_q1() -> Quadrangulation {
        // vertices u - v - w, darts: 0:u->v 1:v->u 2:v->w 3:w->v
        let m = build_map(vec![1, 0, 3, 2], vec![0, 2, 1, 3], 0).unwrap();
        Quadrangulation::new(m).unwrap()
    }

    /// The cherry: same path, rooted middle to end.
    fn cherry_q1() -> Quadrangulation {
        let m = build_map(vec![1, 0, 3, 2], vec![0, 2, 1, 3], 1).unwrap();
        Quadrangulation::new(m).unwrap()
    }

    #[test]
    fn q1_flip_fixture() {
        // flipping the non-root edge of the path-shaped quadrangulation gives
        // the cherry-shaped one, for either sign
        let q = path_q1();
        let root_edge = q.map().root_edge();
        let e = q.map().edges().into_iter().find(|&e| e != root_edge).unwrap();
        for s in [Sign::Plus, Sign::Minus] {
            let r = flip(&q, e, s, false).unwrap();
            assert_eq!(r.code(), cherry_q1().code());
        }
    }

    #[test]
    fn flip_preserves_structure() {
        let q = path_q1();
        let root_edge = q.map().root_edge();
        for e in q.map().edges() {
            if e == root_edge {
                continue;
            }
            for s in [Sign::Plus, Sign::Minus] {
                let r = flip(&q, e, s, false).unwrap();
                Quadrangulation::new(r.map().clone()).unwrap();
            }
        }
    }
}
