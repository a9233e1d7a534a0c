//! Oriented 3-valent maps as rotation systems over darts.
//!
//! A map is a pair of dart permutations: `sigma` rotates the three darts at
//! each vertex and `alpha` swaps the two darts of each edge. Faces are the
//! orbits of `phi = sigma ∘ alpha`, meaning `phi(d) = sigma(alpha(d))`:
//! cross the edge first, then turn at the far vertex. A dart `d` of a face
//! stands for both the corner of that face at `d`'s vertex and the side of
//! that face along `d`'s edge.
//!
//! Orbits are numbered by their smallest dart and listed starting from it,
//! so any two equal rotation systems produce identical numberings.

mod build;
mod catalog;
mod file;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use build::{hex_torus, platonic, prism, theta, truncate, Platonic};
pub use catalog::{by_name, catalog_names, default_suite};
pub use file::{load, parse, save, MapFile};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("not 3-valent: vertex rotation {0:?} does not have length 3")]
    NotTrivalent(Vec<usize>),
    #[error("edge involution invalid: {0}")]
    NotInvolution(String),
    #[error("map is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("malformed map: {0}")]
    MalformedInput(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("faces cannot be oriented consistently")]
    NonOrientable,
    #[error("unknown catalog map {0:?}")]
    UnknownMap(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub struct Map {
    name: String,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    phi: Vec<usize>,
    vertices: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    face_of: Vec<usize>,
}

impl PartialEq for Map {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.sigma == other.sigma && self.alpha == other.alpha
    }
}

impl Eq for Map {}

/// Orbits of `perm`, each listed from its smallest element, ordered by it.
fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            orbit.push(d);
            d = perm[d];
        }
        out.push(orbit);
    }
    out
}

fn index_of(orbits: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, orbit) in orbits.iter().enumerate() {
        for &d in orbit {
            idx[d] = i;
        }
    }
    idx
}

impl Map {
    /// Builds a map from 1-based vertex rotations and edge pairs.
    pub fn from_rotation_system(
        sigma_cycles: &[Vec<usize>],
        alpha_pairs: &[[usize; 2]],
        name: impl Into<String>,
    ) -> Result<Map, MapError> {
        if let Some(c) = sigma_cycles.iter().find(|c| c.len() != 3) {
            return Err(MapError::NotTrivalent(c.clone()));
        }
        let n = 3 * sigma_cycles.len();
        if n == 0 {
            return Err(MapError::MalformedInput("no darts".into()));
        }
        if n % 2 == 1 {
            return Err(MapError::MalformedInput(format!(
                "odd dart count {n}: darts cannot be paired into edges"
            )));
        }
        let in_range = |d: usize| {
            if (1..=n).contains(&d) {
                Ok(d - 1)
            } else {
                Err(MapError::MalformedInput(format!("dart {d} outside 1..={n}")))
            }
        };

        let mut sigma = vec![usize::MAX; n];
        for cycle in sigma_cycles {
            for k in 0..3 {
                let d = in_range(cycle[k])?;
                if sigma[d] != usize::MAX {
                    return Err(MapError::MalformedInput(format!(
                        "dart {} appears in two vertex rotations",
                        d + 1
                    )));
                }
                sigma[d] = in_range(cycle[(k + 1) % 3])?;
            }
        }

        let mut alpha = vec![usize::MAX; n];
        for &[a, b] in alpha_pairs {
            if a == b {
                return Err(MapError::NotInvolution(format!("dart {a} is paired with itself")));
            }
            let (a, b) = (in_range(a)?, in_range(b)?);
            for d in [a, b] {
                if alpha[d] != usize::MAX {
                    return Err(MapError::NotInvolution(format!(
                        "dart {} appears in two edges",
                        d + 1
                    )));
                }
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        if let Some(d) = alpha.iter().position(|&x| x == usize::MAX) {
            return Err(MapError::MalformedInput(format!(
                "dart {} belongs to no edge",
                d + 1
            )));
        }

        Map::from_permutations(name, sigma, alpha)
    }

    /// Builds a map from 0-based `sigma` and `alpha` image arrays.
    pub fn from_permutations(
        name: impl Into<String>,
        sigma: Vec<usize>,
        alpha: Vec<usize>,
    ) -> Result<Map, MapError> {
        let n = sigma.len();
        if alpha.len() != n {
            return Err(MapError::MalformedInput("sigma and alpha differ in size".into()));
        }
        let mut hit = vec![false; n];
        for &x in &sigma {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return Err(MapError::MalformedInput("sigma is not a permutation".into()));
            }
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n || alpha[a] != d {
                return Err(MapError::NotInvolution(format!(
                    "alpha is not an involution at dart {}",
                    d + 1
                )));
            }
            if a == d {
                return Err(MapError::NotInvolution(format!("dart {} is fixed", d + 1)));
            }
        }

        let vertex_orbits = orbits(&sigma);
        if let Some(v) = vertex_orbits.iter().find(|v| v.len() != 3) {
            return Err(MapError::NotTrivalent(v.iter().map(|d| d + 1).collect()));
        }

        let components = count_components(&sigma, &alpha);
        if components != 1 {
            return Err(MapError::Disconnected { components });
        }

        let phi: Vec<usize> = (0..n).map(|d| sigma[alpha[d]]).collect();
        let faces = orbits(&phi);
        let vertices: Vec<[usize; 3]> = vertex_orbits.iter().map(|v| [v[0], v[1], v[2]]).collect();
        let edges: Vec<[usize; 2]> = orbits(&alpha).iter().map(|e| [e[0], e[1]]).collect();

        Ok(Map {
            name: name.into(),
            vertex_of: index_of(&vertex_orbits, n),
            edge_of: index_of(&orbits(&alpha), n),
            face_of: index_of(&faces, n),
            sigma,
            alpha,
            phi,
            vertices,
            edges,
            faces,
        })
    }

    /// Builds a map from face boundaries given as vertex cycles. The faces
    /// are reoriented as needed so that every edge is traversed once in
    /// each direction; the first face keeps the orientation given.
    pub fn from_faces(name: impl Into<String>, faces: &[Vec<usize>]) -> Result<Map, MapError> {
        // occurrences of each undirected edge: (face, traversed low -> high)
        let mut occurrences: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 2 {
                return Err(MapError::MalformedInput(format!("face {} is too short", f + 1)));
            }
            for k in 0..face.len() {
                let (u, v) = (face[k], face[(k + 1) % face.len()]);
                occurrences
                    .entry((u.min(v), u.max(v)))
                    .or_default()
                    .push((f, u < v));
            }
        }
        if let Some((e, _)) = occurrences.iter().find(|(_, occ)| occ.len() != 2) {
            return Err(MapError::MalformedInput(format!(
                "edge {{{}, {}}} is not on exactly two face sides",
                e.0, e.1
            )));
        }

        // flipped[f]: whether face f must be traversed backwards
        let mut flipped: Vec<Option<bool>> = vec![None; faces.len()];
        let mut neighbours: Vec<Vec<(usize, bool)>> = vec![Vec::new(); faces.len()];
        for occ in occurrences.values() {
            let [(f, df), (g, dg)] = [occ[0], occ[1]];
            // opposite traversal needed: flip_g = flip_f xor (df == dg)
            neighbours[f].push((g, df == dg));
            neighbours[g].push((f, df == dg));
        }
        for start in 0..faces.len() {
            if flipped[start].is_some() {
                continue;
            }
            flipped[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                let ff = flipped[f].unwrap();
                for &(g, differs) in &neighbours[f] {
                    let want = ff ^ differs;
                    match flipped[g] {
                        None => {
                            flipped[g] = Some(want);
                            queue.push_back(g);
                        }
                        Some(x) if x != want => return Err(MapError::NonOrientable),
                        Some(_) => {}
                    }
                }
            }
        }

        let oriented: Vec<Vec<usize>> = faces
            .iter()
            .zip(&flipped)
            .map(|(face, flip)| {
                let mut f = face.clone();
                if flip.unwrap() {
                    f.reverse();
                }
                f
            })
            .collect();

        let mut darts: Vec<(usize, usize)> = oriented
            .iter()
            .flat_map(|f| (0..f.len()).map(move |k| (f[k], f[(k + 1) % f.len()])))
            .collect();
        darts.sort_unstable();
        if darts.windows(2).any(|w| w[0] == w[1]) {
            return Err(MapError::MalformedInput(
                "a directed edge is used by two faces".into(),
            ));
        }
        let id: HashMap<(usize, usize), usize> =
            darts.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = darts.len();
        let alpha: Vec<usize> = darts.iter().map(|&(u, v)| id[&(v, u)]).collect();
        let mut sigma = vec![usize::MAX; n];
        for f in &oriented {
            let p = f.len();
            for k in 0..p {
                let (u, v, w) = (f[k], f[(k + 1) % p], f[(k + 2) % p]);
                sigma[id[&(v, u)]] = id[&(v, w)];
            }
        }
        Map::from_permutations(name, sigma, alpha)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Map {
        self.name = name.into();
        self
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Genus of the orientable surface the map lives on.
    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && chi % 2 == 0);
        ((2 - chi) / 2) as usize
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn phi(&self, d: usize) -> usize {
        self.phi[d]
    }

    /// Vertex rotations, each starting at its smallest dart.
    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Face boundaries in traversal order, each starting at its smallest dart.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> Option<&[usize]> {
        self.faces.get(f).map(Vec::as_slice)
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    pub fn edge_of(&self, d: usize) -> usize {
        self.edge_of[d]
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Face sizes, sorted.
    pub fn face_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn all_faces_odd(&self) -> bool {
        self.faces.iter().all(|f| f.len() % 2 == 1)
    }

    /// 1-based vertex rotations, as written to map files.
    pub fn sigma_cycles(&self) -> Vec<Vec<usize>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|d| d + 1).collect())
            .collect()
    }

    /// 1-based edge pairs, as written to map files.
    pub fn alpha_pairs(&self) -> Vec<[usize; 2]> {
        self.edges.iter().map(|&[a, b]| [a + 1, b + 1]).collect()
    }
}

fn count_components(sigma: &[usize], alpha: &[usize]) -> usize {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(d) = stack.pop() {
            for next in [sigma[d], alpha[d]] {
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_theta() {
        let m = Map::from_rotation_system(
            &[vec![1, 2, 3], vec![4, 6, 5]],
            &[[1, 4], [2, 5], [3, 6]],
            "theta",
        )
        .unwrap();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (2, 3, 3));
        assert_eq!(m.genus(), 0);
        assert_eq!(m.face_sizes(), vec![2, 2, 2]);
    }

    #[test]
    fn same_rotation_at_both_ends_is_a_torus() {
        // With equal rotations at both vertices the single face winds
        // around everything: V - E + F = 2 - 3 + 1 = 0.
        let m = Map::from_rotation_system(
            &[vec![1, 2, 3], vec![4, 5, 6]],
            &[[1, 4], [2, 5], [3, 6]],
            "theta-torus",
        )
        .unwrap();
        assert_eq!(m.face_sizes(), vec![6]);
        assert_eq!(m.genus(), 1);
    }

    #[test]
    fn rejects_two_cycle_in_sigma() {
        let err = Map::from_rotation_system(&[vec![1, 2], vec![3, 4, 5]], &[], "bad").unwrap_err();
        assert!(matches!(err, MapError::NotTrivalent(_)));
    }

    #[test]
    fn rejects_bad_involutions() {
        let sigma = [vec![1, 2, 3], vec![4, 6, 5]];
        let fixed = Map::from_rotation_system(&sigma, &[[1, 1], [2, 5], [3, 6]], "x").unwrap_err();
        assert!(matches!(fixed, MapError::NotInvolution(_)));
        let repeated =
            Map::from_rotation_system(&sigma, &[[1, 4], [1, 5], [3, 6]], "x").unwrap_err();
        assert!(matches!(repeated, MapError::NotInvolution(_)));
        let missing = Map::from_rotation_system(&sigma, &[[1, 4], [3, 6]], "x").unwrap_err();
        assert!(matches!(missing, MapError::MalformedInput(_)));
    }

    #[test]
    fn rejects_duplicated_or_out_of_range_darts() {
        let dup = Map::from_rotation_system(
            &[vec![1, 2, 3], vec![3, 5, 6]],
            &[[1, 4], [2, 5], [3, 6]],
            "x",
        )
        .unwrap_err();
        assert!(matches!(dup, MapError::MalformedInput(_)));
        let range = Map::from_rotation_system(
            &[vec![1, 2, 3], vec![4, 5, 7]],
            &[[1, 4], [2, 5], [3, 6]],
            "x",
        )
        .unwrap_err();
        assert!(matches!(range, MapError::MalformedInput(_)));
        let odd =
            Map::from_rotation_system(&[vec![1, 2, 3]], &[[1, 2]], "x").unwrap_err();
        assert!(matches!(odd, MapError::MalformedInput(_)));
    }

    #[test]
    fn rejects_disconnected() {
        let err = Map::from_rotation_system(
            &[vec![1, 2, 3], vec![4, 6, 5], vec![7, 8, 9], vec![10, 12, 11]],
            &[[1, 4], [2, 5], [3, 6], [7, 10], [8, 11], [9, 12]],
            "two thetas",
        )
        .unwrap_err();
        assert!(matches!(err, MapError::Disconnected { components: 2 }));
    }

    #[test]
    fn face_boundaries_start_at_smallest_dart() {
        let m = prism(5).unwrap();
        for (i, f) in m.faces().iter().enumerate() {
            assert_eq!(f[0], *f.iter().min().unwrap());
            for w in f.windows(2) {
                assert_eq!(m.phi(w[0]), w[1]);
            }
            assert!(f.iter().all(|&d| m.face_of(d) == i));
        }
        let mins: Vec<usize> = m.faces().iter().map(|f| f[0]).collect();
        assert!(mins.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn from_faces_checks_edge_sides() {
        let faces = vec![
            vec![0, 1, 4, 3],
            vec![1, 2, 5, 4],
            vec![2, 0, 3, 5],
            vec![0, 1, 2],
            vec![3, 4, 5],
        ];
        let m = Map::from_faces("prism", &faces).unwrap();
        assert_eq!(m.face_sizes(), vec![3, 3, 4, 4, 4]);
        // {2,3} is on one face only and {0,3} on three
        let broken = vec![
            vec![0, 1, 4, 3],
            vec![1, 2, 5, 4],
            vec![2, 3, 0, 5],
            vec![0, 1, 2],
            vec![3, 4, 5],
        ];
        assert!(matches!(
            Map::from_faces("broken", &broken),
            Err(MapError::MalformedInput(_))
        ));
    }
}
