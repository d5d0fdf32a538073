//! Dart-based rotation systems for rooted planar maps.
//!
//! A map is a pair of permutations on the dart set: `alpha` pairs the two
//! darts of each edge, `sigma` lists darts counterclockwise around their tail
//! vertex. Faces are orbits of `d -> sigma(alpha(d))`; the orbit of `d` is the
//! face directly to the right of `d`, and successive orbit elements walk the
//! face boundary so that corners appear in clockwise contour order. The corner
//! of a dart is the angular sector at its tail inside the face to its right.

use crate::error::{MapError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Index of a dart (oriented edge / corner) in `[0, 2E)`.
pub type DartId = usize;

/// A rooted planar map given by its rotation system.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootedMap {
    alpha: Vec<DartId>,
    sigma: Vec<DartId>,
    root: DartId,
}

/// Canonical traversal encoding; equal codes iff equal rooted maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MapCode(pub Vec<u32>);

/// Structure report: vertex cycles, face cycles and degrees.
#[derive(Debug, Clone)]
pub struct Topology {
    pub vertex_cycles: Vec<Vec<DartId>>,
    pub face_cycles: Vec<Vec<DartId>>,
    pub vertex_of_dart: Vec<usize>,
    pub face_of_dart: Vec<usize>,
    pub origin: usize,
}

impl fmt::Debug for RootedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RootedMap {{ n: {}, alpha: {:?}, sigma: {:?}, root: {} }}",
            self.n_edges(),
            self.alpha,
            self.sigma,
            self.root
        )
    }
}

fn is_permutation(p: &[DartId]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Validating constructor: involution, connectivity and genus-0 Euler count.
pub fn build_map(alpha: Vec<DartId>, sigma: Vec<DartId>, root: DartId) -> Result<RootedMap> {
    if alpha.len() != sigma.len() || alpha.is_empty() || alpha.len() % 2 != 0 {
        return Err(MapError::NotInvolution);
    }
    if !is_permutation(&alpha) || alpha.iter().enumerate().any(|(d, &a)| a == d || alpha[a] != d) {
        return Err(MapError::NotInvolution);
    }
    if !is_permutation(&sigma) {
        return Err(MapError::ValidationError("sigma is not a permutation".into()));
    }
    if root >= alpha.len() {
        return Err(MapError::BadRoot(root));
    }
    let m = RootedMap { alpha, sigma, root };
    m.check_connected()?;
    m.check_planar()?;
    Ok(m)
}

impl RootedMap {
    /// Construct without validation; callers must uphold the invariants.
    pub(crate) fn from_parts_unchecked(alpha: Vec<DartId>, sigma: Vec<DartId>, root: DartId) -> Self {
        RootedMap { alpha, sigma, root }
    }

    pub fn n_darts(&self) -> usize {
        self.alpha.len()
    }

    pub fn n_edges(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn root(&self) -> DartId {
        self.root
    }

    pub(crate) fn set_root(&mut self, root: DartId) {
        debug_assert!(root < self.n_darts());
        self.root = root;
    }

    pub fn alpha(&self, d: DartId) -> DartId {
        self.alpha[d]
    }

    pub fn sigma(&self, d: DartId) -> DartId {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: DartId) -> DartId {
        // maps are small; scan rather than caching an inverse table
        self.sigma.iter().position(|&x| x == d).unwrap()
    }

    /// Next corner in the clockwise contour of the face right of `d`.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.sigma[self.alpha[d]]
    }

    /// Previous corner in the clockwise contour.
    pub fn face_prev(&self, d: DartId) -> DartId {
        self.alpha[self.sigma_inv(d)]
    }

    /// Representative edge id of the dart's edge.
    pub fn edge_of(&self, d: DartId) -> DartId {
        d.min(self.alpha[d])
    }

    /// Root edge id.
    pub fn root_edge(&self) -> DartId {
        self.edge_of(self.root)
    }

    /// One dart per edge, ascending.
    pub fn edges(&self) -> Vec<DartId> {
        (0..self.n_darts()).filter(|&d| d < self.alpha[d]).collect()
    }

    pub(crate) fn alpha_slice(&self) -> &[DartId] {
        &self.alpha
    }

    pub(crate) fn sigma_slice(&self) -> &[DartId] {
        &self.sigma
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(d) = stack.pop() {
            for nd in [self.alpha[d], self.sigma[d]] {
                if !seen[nd] {
                    seen[nd] = true;
                    cnt += 1;
                    stack.push(nd);
                }
            }
        }
        if cnt == n {
            Ok(())
        } else {
            Err(MapError::Disconnected)
        }
    }

    fn check_planar(&self) -> Result<()> {
        let v = count_cycles(&self.sigma) as i64;
        let e = self.n_edges() as i64;
        let f = self.face_count() as i64;
        let chi = v - e + f;
        if chi == 2 {
            Ok(())
        } else {
            Err(MapError::NonPlanar(chi))
        }
    }

    /// Re-validate all construction invariants.
    pub fn validate(&self) -> Result<()> {
        build_map(self.alpha.clone(), self.sigma.clone(), self.root).map(|_| ())
    }

    pub fn vertex_count(&self) -> usize {
        count_cycles(&self.sigma)
    }

    pub fn face_count(&self) -> usize {
        let face = |d: DartId| self.sigma[self.alpha[d]];
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut cnt = 0;
        for d in 0..n {
            if !seen[d] {
                cnt += 1;
                let mut x = d;
                while !seen[x] {
                    seen[x] = true;
                    x = face(x);
                }
            }
        }
        cnt
    }

    /// Clockwise contour of the face right of `d`, starting at `d`.
    pub fn face_orbit(&self, d: DartId) -> Vec<DartId> {
        let mut out = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    pub fn face_degree(&self, d: DartId) -> usize {
        self.face_orbit(d).len()
    }

    /// Darts around the tail vertex of `d`, counterclockwise, starting at `d`.
    pub fn vertex_orbit(&self, d: DartId) -> Vec<DartId> {
        let mut out = vec![d];
        let mut x = self.sigma[d];
        while x != d {
            out.push(x);
            x = self.sigma[x];
        }
        out
    }

    pub fn vertex_degree(&self, d: DartId) -> usize {
        self.vertex_orbit(d).len()
    }

    /// Full structure report.
    pub fn topology(&self) -> Topology {
        let n = self.n_darts();
        let mut vertex_of_dart = vec![usize::MAX; n];
        let mut vertex_cycles = Vec::new();
        for d in 0..n {
            if vertex_of_dart[d] == usize::MAX {
                let cyc = self.vertex_orbit(d);
                for &x in &cyc {
                    vertex_of_dart[x] = vertex_cycles.len();
                }
                vertex_cycles.push(cyc);
            }
        }
        let mut face_of_dart = vec![usize::MAX; n];
        let mut face_cycles = Vec::new();
        for d in 0..n {
            if face_of_dart[d] == usize::MAX {
                let cyc = self.face_orbit(d);
                for &x in &cyc {
                    face_of_dart[x] = face_cycles.len();
                }
                face_cycles.push(cyc);
            }
        }
        let origin = vertex_of_dart[self.root];
        Topology {
            vertex_cycles,
            face_cycles,
            vertex_of_dart,
            face_of_dart,
            origin,
        }
    }

    /// Map from darts to vertex ids (sigma-cycle ids in first-dart order).
    pub fn vertex_ids(&self) -> (Vec<usize>, usize) {
        let n = self.n_darts();
        let mut vid = vec![usize::MAX; n];
        let mut cnt = 0;
        for d in 0..n {
            if vid[d] == usize::MAX {
                let mut x = d;
                while vid[x] == usize::MAX {
                    vid[x] = cnt;
                    x = self.sigma[x];
                }
                cnt += 1;
            }
        }
        (vid, cnt)
    }

    /// Breadth-first graph distances from vertex `v` (a vertex id).
    pub fn graph_distance(&self, v: usize) -> Vec<usize> {
        let (vid, nv) = self.vertex_ids();
        let mut adj = vec![Vec::new(); nv];
        for d in 0..self.n_darts() {
            if d < self.alpha[d] {
                let (a, b) = (vid[d], vid[self.alpha[d]]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut dist = vec![usize::MAX; nv];
        let mut queue = std::collections::VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertex id of the origin (tail of the root dart).
    pub fn origin(&self) -> usize {
        let (vid, _) = self.vertex_ids();
        vid[self.root]
    }

    /// Canonical code from the root-anchored traversal. Rooted maps are rigid,
    /// so equal codes characterise equal rooted maps.
    pub fn canonical_code(&self) -> MapCode {
        let n = self.n_darts();
        let mut lab = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        lab[self.root] = 0;
        order.push(self.root);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for nd in [self.sigma[d], self.alpha[d]] {
                if lab[nd] == u32::MAX {
                    lab[nd] = order.len() as u32;
                    order.push(nd);
                }
            }
        }
        let mut code = Vec::with_capacity(2 * n);
        for &d in &order {
            code.push(lab[self.sigma[d]]);
            code.push(lab[self.alpha[d]]);
        }
        MapCode(code)
    }

    /// Dart relabeling sending this map onto its canonical form.
    pub fn canonical_relabeling(&self) -> Vec<u32> {
        let n = self.n_darts();
        let mut lab = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        lab[self.root] = 0;
        order.push(self.root);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for nd in [self.sigma[d], self.alpha[d]] {
                if lab[nd] == u32::MAX {
                    lab[nd] = order.len() as u32;
                    order.push(nd);
                }
            }
        }
        lab
    }

    /// Canonical id of the edge of `d`: min canonical dart label on the edge.
    pub fn canonical_edge_id(&self, d: DartId) -> u32 {
        let lab = self.canonical_relabeling();
        lab[d].min(lab[self.alpha[d]])
    }

    /// Canonical id of the vertex of `d`: min canonical dart label around it.
    pub fn canonical_vertex_id_of_dart(&self, d: DartId) -> u32 {
        let lab = self.canonical_relabeling();
        self.vertex_orbit(d).iter().map(|&x| lab[x]).min().unwrap()
    }

    /// Rebuild a map with darts renamed by a permutation (for tests).
    pub fn relabeled(&self, perm: &[DartId]) -> RootedMap {
        let n = self.n_darts();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[self.alpha[d]];
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        RootedMap {
            alpha,
            sigma,
            root: perm[self.root],
        }
    }
}

fn count_cycles(p: &[DartId]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cnt = 0;
    for d in 0..p.len() {
        if !seen[d] {
            cnt += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
    }
    cnt
}

/// Rebuild the rooted map encoded by a canonical code.
pub fn decode_code(code: &MapCode) -> Result<RootedMap> {
    if code.0.len() % 2 != 0 {
        return Err(MapError::ParseError("odd code length".into()));
    }
    let n = code.0.len() / 2;
    let mut sigma = vec![0; n];
    let mut alpha = vec![0; n];
    for i in 0..n {
        sigma[i] = code.0[2 * i] as usize;
        alpha[i] = code.0[2 * i + 1] as usize;
        if sigma[i] >= n || alpha[i] >= n {
            return Err(MapError::ParseError("dart index out of bounds in code".into()));
        }
    }
    build_map(alpha, sigma, 0)
}

/// The map of `n` nested loops on a single vertex, rooted inside the
/// innermost loop. Irreducibility of the rotation chain is proved by
/// normalising every map to this one.
pub fn m0(n: usize) -> RootedMap {
    assert!(n >= 1, "m0 requires at least one edge");
    // loop i has darts a_i = 2i, b_i = 2i+1; sigma cycle:
    // a_{n-1}, ..., a_1, a_0, b_0, b_1, ..., b_{n-1}
    let nd = 2 * n;
    let mut alpha = vec![0; nd];
    for i in 0..n {
        alpha[2 * i] = 2 * i + 1;
        alpha[2 * i + 1] = 2 * i;
    }
    let mut cyc: Vec<DartId> = (0..n).rev().map(|i| 2 * i).collect();
    cyc.extend((0..n).map(|i| 2 * i + 1));
    let mut sigma = vec![0; nd];
    for k in 0..nd {
        sigma[cyc[k]] = cyc[(k + 1) % nd];
    }
    RootedMap {
        alpha,
        sigma,
        root: 1, // b_0 = corner inside the central loop
    }
}

/// Single edge on two vertices, rooted at one end. Doubles as the
/// quadrangulation sentinel of size zero.
pub fn single_edge() -> RootedMap {
    RootedMap {
        alpha: vec![1, 0],
        sigma: vec![0, 1],
        root: 0,
    }
}

/// One loop on one vertex, rooted inside.
pub fn loop_map() -> RootedMap {
    m0(1)
}

// ---------------------------------------------------------------------------
// text and JSON serialization

/// One-line text format: `n=<edges> alpha=<perm> sigma=<perm> root=<dart>`.
pub fn encode_map(m: &RootedMap) -> String {
    let join = |p: &[DartId]| {
        p.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "n={} alpha={} sigma={} root={}",
        m.n_edges(),
        join(&m.alpha),
        join(&m.sigma),
        m.root
    )
}

pub fn decode_map(text: &str) -> Result<RootedMap> {
    let text = text.trim();
    let npos = text
        .strip_prefix("n=")
        .ok_or_else(|| MapError::ParseError("missing n=".into()))?;
    let (nstr, rest) = npos
        .split_once(" alpha=")
        .ok_or_else(|| MapError::ParseError("missing alpha=".into()))?;
    let (astr, rest) = rest
        .split_once(" sigma=")
        .ok_or_else(|| MapError::ParseError("missing sigma=".into()))?;
    let (sstr, rootstr) = rest
        .split_once(" root=")
        .ok_or_else(|| MapError::ParseError("missing root=".into()))?;
    let n: usize = nstr
        .trim()
        .parse()
        .map_err(|_| MapError::ParseError("bad edge count".into()))?;
    let parse_perm = |s: &str| -> Result<Vec<DartId>> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<DartId>()
                    .map_err(|_| MapError::ParseError(format!("bad dart index {t:?}")))
            })
            .collect()
    };
    let alpha = parse_perm(astr)?;
    let sigma = parse_perm(sstr)?;
    let root: DartId = rootstr
        .trim()
        .parse()
        .map_err(|_| MapError::ParseError("bad root".into()))?;
    if alpha.len() != 2 * n {
        return Err(MapError::ParseError(format!(
            "expected {} darts, got {}",
            2 * n,
            alpha.len()
        )));
    }
    build_map(alpha, sigma, root).map_err(|e| match e {
        MapError::ParseError(s) => MapError::ParseError(s),
        other => MapError::ValidationError(other.to_string()),
    })
}

/// JSON record mirroring the text format fields.
#[derive(Serialize, Deserialize)]
pub struct MapRecord {
    pub n: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    pub root: usize,
}

pub fn encode_map_json(m: &RootedMap) -> String {
    serde_json::to_string(&MapRecord {
        n: m.n_edges(),
        alpha: m.alpha.clone(),
        sigma: m.sigma.clone(),
        root: m.root,
    })
    .expect("serializable")
}

pub fn decode_map_json(text: &str) -> Result<RootedMap> {
    let rec: MapRecord =
        serde_json::from_str(text).map_err(|e| MapError::ParseError(e.to_string()))?;
    if rec.alpha.len() != 2 * rec.n {
        return Err(MapError::ParseError("edge count disagrees with darts".into()));
    }
    build_map(rec.alpha, rec.sigma, rec.root)
        .map_err(|e| MapError::ValidationError(e.to_string()))
}

// ---------------------------------------------------------------------------

/// A rooted quadrangulation: every face has degree 4, except the size-0
/// sentinel which is the single-edge map.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Quadrangulation {
    map: RootedMap,
    n: usize,
}

impl Quadrangulation {
    /// Wrap a map after checking the quadrangulation invariants.
    pub fn new(map: RootedMap) -> Result<Quadrangulation> {
        map.validate()?;
        if map.n_edges() == 1 && map.vertex_count() == 2 {
            return Ok(Quadrangulation { map, n: 0 });
        }
        let e = map.n_edges();
        if e % 2 != 0 {
            return Err(MapError::ValidationError(format!(
                "{e} edges cannot form a quadrangulation"
            )));
        }
        let n = e / 2;
        let topo = map.topology();
        if topo.face_cycles.len() != n {
            return Err(MapError::ValidationError(format!(
                "expected {n} faces, found {}",
                topo.face_cycles.len()
            )));
        }
        for cyc in &topo.face_cycles {
            if cyc.len() != 4 {
                return Err(MapError::ValidationError(format!(
                    "face of degree {} in a quadrangulation",
                    cyc.len()
                )));
            }
        }
        // bipartite: distances of adjacent vertices differ by exactly one
        let dist = map.graph_distance(map.origin());
        let (vid, _) = map.vertex_ids();
        for d in 0..map.n_darts() {
            if d < map.alpha(d) {
                let (a, b) = (dist[vid[d]], dist[vid[map.alpha(d)]]);
                if a.abs_diff(b) != 1 {
                    return Err(MapError::ValidationError(
                        "quadrangulation is not bipartite".into(),
                    ));
                }
            }
        }
        Ok(Quadrangulation { map, n })
    }

    pub(crate) fn from_map_unchecked(map: RootedMap, n: usize) -> Quadrangulation {
        Quadrangulation { map, n }
    }

    /// The sentinel element of size 0.
    pub fn sentinel() -> Quadrangulation {
        Quadrangulation {
            map: single_edge(),
            n: 0,
        }
    }

    pub fn is_sentinel(&self) -> bool {
        self.n == 0
    }

    pub fn n_faces(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &RootedMap {
        &self.map
    }

    pub fn into_map(self) -> RootedMap {
        self.map
    }

    pub fn code(&self) -> MapCode {
        self.map.canonical_code()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_counts() {
        let m = build_map(vec![1, 0], vec![0, 1], 0).unwrap();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.n_edges(), 1);
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.face_degree(0), 2);
    }

    #[test]
    fn loop_map_counts() {
        let m = build_map(vec![1, 0], vec![1, 0], 0).unwrap();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.face_count(), 2);
        let topo = m.topology();
        assert!(topo.face_cycles.iter().all(|c| c.len() == 1));
        assert_eq!(m.vertex_degree(0), 2);
    }

    #[test]
    fn fixed_point_alpha_rejected() {
        assert_eq!(
            build_map(vec![0, 1], vec![1, 0], 0).unwrap_err(),
            MapError::NotInvolution
        );
    }

    #[test]
    fn disconnected_rejected() {
        // two separate single edges
        let r = build_map(vec![1, 0, 3, 2], vec![0, 1, 2, 3], 0);
        assert_eq!(r.unwrap_err(), MapError::Disconnected);
    }

    #[test]
    fn m0_euler() {
        for n in 1..=5 {
            let m = m0(n);
            m.validate().unwrap();
            assert_eq!(m.vertex_count(), 1);
            assert_eq!(m.n_edges(), n);
            assert_eq!(m.face_count(), n + 1);
        }
        // root corner sits in a degree-1 face
        assert_eq!(m0(3).face_degree(m0(3).root()), 1);
    }

    #[test]
    fn distances() {
        let m = single_edge();
        assert_eq!(m.graph_distance(m.origin()), vec![0, 1]);
        let l = loop_map();
        assert_eq!(l.graph_distance(l.origin()), vec![0]);
    }

    #[test]
    fn code_roundtrip_and_label_independence() {
        for m in [single_edge(), loop_map(), m0(2), m0(4)] {
            let code = m.canonical_code();
            let back = decode_code(&code).unwrap();
            assert_eq!(back.canonical_code(), code);
            // swap two dart labels not touching the root
            let n = m.n_darts();
            if n >= 4 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(n - 1, n - 2);
                let r = m.relabeled(&perm);
                assert_eq!(r.canonical_code(), code);
            }
        }
        assert_ne!(single_edge().canonical_code(), loop_map().canonical_code());
    }

    #[test]
    fn text_roundtrip() {
        for m in [single_edge(), loop_map(), m0(3)] {
            let s = encode_map(&m);
            let back = decode_map(&s).unwrap();
            assert_eq!(back.canonical_code(), m.canonical_code());
            assert_eq!(encode_map(&back), s);
            let j = encode_map_json(&m);
            let back = decode_map_json(&j).unwrap();
            assert_eq!(back.canonical_code(), m.canonical_code());
        }
        assert!(decode_map("n=1 alpha=0 1 sigma=0 1 root=0").is_err());
    }
}
