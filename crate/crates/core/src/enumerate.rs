//! Exhaustive enumeration of rooted maps and quadrangulations at small sizes,
//! with ranking along the canonical code order.

use crate::dynamics::{rotate, Sign3};
use crate::error::{MapError, Result};
use crate::map::{m0, MapCode, Quadrangulation, RootedMap};
use crate::tutte::tutte_forward;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// Default guard for exhaustive enumeration.
pub const DEFAULT_LIMIT: usize = 6;

/// Closed-form count of rooted planar maps with n edges:
/// 2·3^n (2n)!/(n!(n+2)!) = 2·3^n·C(2n,n)/((n+1)(n+2)).
pub fn map_count_formula(n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let mut binom: u128 = 1;
    for k in 0..n {
        binom = binom * (n + 1 + k) as u128 / (k + 1) as u128;
    }
    2 * 3u128.pow(n as u32) * binom / ((n + 1) as u128 * (n + 2) as u128)
}

/// Enumerations of M_n and Q_n, indexed by canonical code order.
#[derive(Default)]
pub struct Atlas {
    maps: BTreeMap<usize, Vec<RootedMap>>,
    map_ranks: BTreeMap<usize, BTreeMap<MapCode, usize>>,
    quads: BTreeMap<usize, Vec<Quadrangulation>>,
    quad_ranks: BTreeMap<usize, BTreeMap<MapCode, usize>>,
    pub limit: usize,
}

impl Atlas {
    pub fn new() -> Atlas {
        Atlas {
            limit: DEFAULT_LIMIT,
            ..Default::default()
        }
    }

    pub fn with_limit(limit: usize) -> Atlas {
        Atlas {
            limit,
            ..Default::default()
        }
    }

    /// All rooted maps with n edges, sorted by canonical code. Computed by
    /// breadth-first closure of the rotation moves from the nested loop map,
    /// which reaches everything because the rotation chain is irreducible.
    pub fn maps(&mut self, n: usize) -> Result<&[RootedMap]> {
        if n == 0 || n > self.limit {
            return Err(MapError::LimitExceeded {
                requested: n,
                limit: self.limit,
            });
        }
        if let Entry::Vacant(e) = self.maps.entry(n) {
            let seed = m0(n);
            let mut seen: BTreeMap<MapCode, RootedMap> = BTreeMap::new();
            let mut frontier = vec![seed.clone()];
            seen.insert(seed.canonical_code(), seed);
            while let Some(m) = frontier.pop() {
                for c in 0..m.n_darts() {
                    if c == m.root() {
                        continue;
                    }
                    for s in [Sign3::Plus, Sign3::Minus] {
                        let r = rotate(&m, c, s).expect("legal rotation");
                        let code = r.canonical_code();
                        if let Entry::Vacant(v) = seen.entry(code) {
                            v.insert(r.clone());
                            frontier.push(r);
                        }
                    }
                }
            }
            let sorted: Vec<RootedMap> = seen.into_values().collect();
            let ranks = sorted
                .iter()
                .enumerate()
                .map(|(i, m)| (m.canonical_code(), i))
                .collect();
            self.map_ranks.insert(n, ranks);
            e.insert(sorted);
        }
        Ok(&self.maps[&n])
    }

    /// All rooted quadrangulations with n faces, sorted by canonical code:
    /// the image of M_n under the Tutte bijection.
    pub fn quads(&mut self, n: usize) -> Result<&[Quadrangulation]> {
        if n > self.limit {
            return Err(MapError::LimitExceeded {
                requested: n,
                limit: self.limit,
            });
        }
        if !self.quads.contains_key(&n) {
            let list: Vec<Quadrangulation> = if n == 0 {
                vec![Quadrangulation::sentinel()]
            } else {
                let maps = self.maps(n)?.to_vec();
                let mut by_code: BTreeMap<MapCode, Quadrangulation> = BTreeMap::new();
                for m in &maps {
                    let q = tutte_forward(m).quad;
                    by_code.insert(q.code(), q);
                }
                by_code.into_values().collect()
            };
            let ranks = list
                .iter()
                .enumerate()
                .map(|(i, q)| (q.code(), i))
                .collect();
            self.quad_ranks.insert(n, ranks);
            self.quads.insert(n, list);
        }
        Ok(&self.quads[&n])
    }

    pub fn map_count(&mut self, n: usize) -> Result<usize> {
        Ok(self.maps(n)?.len())
    }

    pub fn quad_count(&mut self, n: usize) -> Result<usize> {
        Ok(self.quads(n)?.len())
    }

    /// Rank of a map inside the sorted enumeration of M_n.
    pub fn rank_map(&mut self, n: usize, m: &RootedMap) -> Result<usize> {
        self.maps(n)?;
        self.map_ranks[&n]
            .get(&m.canonical_code())
            .copied()
            .ok_or(MapError::OutOfRange(usize::MAX))
    }

    pub fn unrank_map(&mut self, n: usize, i: usize) -> Result<RootedMap> {
        let maps = self.maps(n)?;
        maps.get(i).cloned().ok_or(MapError::OutOfRange(i))
    }

    pub fn rank_quad(&mut self, n: usize, q: &Quadrangulation) -> Result<usize> {
        self.quads(n)?;
        self.quad_ranks[&n]
            .get(&q.code())
            .copied()
            .ok_or(MapError::OutOfRange(usize::MAX))
    }

    pub fn unrank_quad(&mut self, n: usize, i: usize) -> Result<Quadrangulation> {
        let quads = self.quads(n)?;
        quads.get(i).cloned().ok_or(MapError::OutOfRange(i))
    }

    /// Canonical representative of a quadrangulation value.
    pub fn canon_quad(&mut self, q: &Quadrangulation) -> Result<Quadrangulation> {
        let n = q.n_faces();
        let i = self.rank_quad(n, q)?;
        self.unrank_quad(n, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(map_count_formula(1), 2);
        assert_eq!(map_count_formula(2), 9);
        assert_eq!(map_count_formula(3), 54);
        assert_eq!(map_count_formula(4), 378);
        assert_eq!(map_count_formula(5), 2916);
        assert_eq!(map_count_formula(6), 24057);
    }

    #[test]
    fn closure_counts_small() {
        let mut atlas = Atlas::new();
        assert_eq!(atlas.map_count(1).unwrap(), 2);
        assert_eq!(atlas.map_count(2).unwrap(), 9);
        assert_eq!(atlas.map_count(3).unwrap(), 54);
    }

    #[test]
    fn rank_unrank_inverse() {
        let mut atlas = Atlas::new();
        let maps = atlas.maps(2).unwrap().to_vec();
        for (i, m) in maps.iter().enumerate() {
            assert_eq!(atlas.rank_map(2, m).unwrap(), i);
            assert_eq!(
                atlas.unrank_map(2, i).unwrap().canonical_code(),
                m.canonical_code()
            );
        }
        assert!(atlas.unrank_map(2, 99).is_err());
    }

    #[test]
    fn limit_guard() {
        let mut atlas = Atlas::with_limit(2);
        assert!(matches!(
            atlas.maps(3),
            Err(MapError::LimitExceeded { .. })
        ));
    }
}
