//! The side-movement presentation of a map.
//!
//! Every dart `d` stands for one corner (the face of `d` at `d`'s vertex)
//! and one side edge (the face of `d` along `d`'s edge). Points are
//! numbered face by face in canonical face order, following each boundary
//! from its smallest dart: the dart at position `i` owns corner point `i`
//! and side-edge point `n + i`, where `n` is the dart count.
//!
//! The side movement of a face with boundary `d_0 .. d_{p-1}` turns the
//! layer one step along the boundary. At each boundary vertex the three
//! corners keep their rotational offset from the face, so for `k` in
//! `0..3` the corner of `sigma^k(d_i)` goes to the corner of
//! `sigma^k(d_{i+1})`. The side edges of the face advance the same way,
//! and so do the side edges on the far side of its boundary edges.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::group::{BuildOptions, GroupError, PermGroup, Projection};
use crate::map::Map;
use crate::perm::{Perm, PermError};

#[derive(Debug, Error)]
pub enum RubikError {
    #[error("face {face} is not a face of the map ({count} faces)")]
    FaceNotInMap { face: usize, count: usize },
    #[error("face {face} meets the same vertex or edge twice; its side movement is not defined")]
    DegenerateFace { face: usize },
    #[error("malformed script: {0}")]
    MalformedScript(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub struct RubikPresentation {
    map: Map,
    /// Position of each dart in the face-major numbering.
    position: Vec<usize>,
    /// Dart at each position.
    dart_at: Vec<usize>,
    generators: Vec<Perm>,
}

/// The side movement of face `face` (0-based) on the `2n`-point domain.
pub fn side_movement(map: &Map, face: usize) -> Result<Perm, RubikError> {
    let position = positions(map);
    side_movement_with(map, &position, face)
}

/// One side movement per face, in canonical face order.
pub fn rubik_generators(map: &Map) -> Result<RubikPresentation, RubikError> {
    RubikPresentation::new(map.clone())
}

fn positions(map: &Map) -> Vec<usize> {
    let mut position = vec![0; map.dart_count()];
    for (i, d) in map.faces().iter().flatten().enumerate() {
        position[*d] = i;
    }
    position
}

fn side_movement_with(map: &Map, position: &[usize], face: usize) -> Result<Perm, RubikError> {
    let boundary = map.face(face).ok_or(RubikError::FaceNotInMap {
        face: face + 1,
        count: map.face_count(),
    })?;
    let n = map.dart_count();
    let p = boundary.len();
    let mut images: Vec<Option<usize>> = vec![None; 2 * n];
    let mut set = |from: usize, to: usize| -> Result<(), RubikError> {
        match images[from] {
            None => {
                images[from] = Some(to);
                Ok(())
            }
            Some(_) => Err(RubikError::DegenerateFace { face: face + 1 }),
        }
    };
    for i in 0..p {
        let (d, e) = (boundary[i], boundary[(i + 1) % p]);
        let (mut a, mut b) = (d, e);
        for _ in 0..3 {
            set(position[a], position[b])?;
            a = map.sigma(a);
            b = map.sigma(b);
        }
        set(n + position[d], n + position[e])?;
        set(n + position[map.alpha(d)], n + position[map.alpha(e)])?;
    }
    let images: Vec<usize> = images
        .iter()
        .enumerate()
        .map(|(x, img)| img.unwrap_or(x))
        .collect();
    Perm::from_images(images).map_err(|_| RubikError::DegenerateFace { face: face + 1 })
}

impl RubikPresentation {
    pub fn new(map: Map) -> Result<Self, RubikError> {
        let position = positions(&map);
        let mut dart_at = vec![0; position.len()];
        for (d, &i) in position.iter().enumerate() {
            dart_at[i] = d;
        }
        let generators = (0..map.face_count())
            .map(|f| side_movement_with(&map, &position, f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RubikPresentation {
            map,
            position,
            dart_at,
            generators,
        })
    }

    pub fn map(&self) -> &Map {
        &self.map
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator(&self, face: usize) -> Result<&Perm, RubikError> {
        self.generators.get(face).ok_or(RubikError::FaceNotInMap {
            face: face + 1,
            count: self.generators.len(),
        })
    }

    /// Number of corners, equal to the number of side edges.
    pub fn corner_count(&self) -> usize {
        self.map.dart_count()
    }

    /// Size of the full corner and side-edge domain.
    pub fn degree(&self) -> usize {
        2 * self.map.dart_count()
    }

    pub fn corner_point(&self, dart: usize) -> usize {
        self.position[dart]
    }

    pub fn side_edge_point(&self, dart: usize) -> usize {
        self.map.dart_count() + self.position[dart]
    }

    /// The dart owning a corner or side-edge point.
    pub fn dart_of_point(&self, point: usize) -> usize {
        self.dart_at[point % self.map.dart_count()]
    }

    pub fn is_corner_point(&self, point: usize) -> bool {
        point < self.map.dart_count()
    }

    /// The face a sticker sits on in the solved state.
    pub fn home_face(&self, point: usize) -> usize {
        self.map.face_of(self.dart_of_point(point))
    }

    pub fn group(&self) -> Result<PermGroup, GroupError> {
        PermGroup::from_generators(self.generators.clone())
    }

    pub fn group_with(&self, opts: &BuildOptions) -> Result<PermGroup, GroupError> {
        PermGroup::with_options(self.generators.clone(), opts)
    }

    /// The identity on corners and side edges.
    pub fn to_corner_side_edge(&self) -> Projection {
        Projection::identity(self.degree())
    }

    /// Corners stay, side edges collapse onto their edge (`n + edge`).
    pub fn to_corner_edge(&self) -> Projection {
        let n = self.corner_count();
        let map = (0..2 * n)
            .map(|x| {
                Some(if x < n {
                    x
                } else {
                    n + self.map.edge_of(self.dart_of_point(x))
                })
            })
            .collect();
        Projection::new(n + self.map.edge_count(), map).expect("edge collapse is onto")
    }

    /// Corners only.
    pub fn to_corner(&self) -> Projection {
        let n = self.corner_count();
        Projection::new(n, (0..2 * n).map(|x| (x < n).then_some(x)).collect())
            .expect("corner restriction is onto")
    }

    /// Corners collapse onto their vertex; side edges are dropped.
    pub fn to_vertex(&self) -> Projection {
        let n = self.corner_count();
        let map = (0..2 * n)
            .map(|x| (x < n).then(|| self.map.vertex_of(self.dart_of_point(x))))
            .collect();
        Projection::new(self.map.vertex_count(), map).expect("vertex collapse is onto")
    }

    /// From the corner and edge domain to corners.
    pub fn corner_edge_to_corner(&self) -> Projection {
        let n = self.corner_count();
        let e = self.map.edge_count();
        Projection::new(n, (0..n + e).map(|x| (x < n).then_some(x)).collect())
            .expect("corner restriction is onto")
    }

    /// From corners to vertices.
    pub fn corner_to_vertex(&self) -> Projection {
        let n = self.corner_count();
        let map = (0..n)
            .map(|x| Some(self.map.vertex_of(self.dart_of_point(x))))
            .collect();
        Projection::new(self.map.vertex_count(), map).expect("vertex collapse is onto")
    }

    /// Action of `g` on the corner points alone.
    pub fn corner_action(&self, g: &Perm) -> Perm {
        g.restrict(0..self.corner_count())
            .expect("group elements preserve the corner block")
    }

    /// GAP script declaring the group. Output depends only on the map.
    pub fn script(&self) -> String {
        let n = self.corner_count();
        let ident = gap_identifier(self.map.name());
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# Rubik group of map {}: {} side movements on {} points",
            self.map.name(),
            self.generators.len(),
            self.degree()
        );
        let _ = writeln!(out, "# corners 1..{n}, side edges {}..{}", n + 1, 2 * n);
        for (f, g) in self.generators.iter().enumerate() {
            let _ = writeln!(out, "F{} := {};", f + 1, g);
        }
        let names: Vec<String> = (1..=self.generators.len()).map(|f| format!("F{f}")).collect();
        let _ = writeln!(out, "{ident} := Group([{}]);", names.join(", "));
        let _ = writeln!(out, "Print(Size({ident}), \"\\n\");");
        out
    }

    pub fn export_script(&self, path: impl AsRef<Path>) -> Result<(), RubikError> {
        fs::write(path, self.script())?;
        Ok(())
    }
}

/// Map names become GAP identifiers: other characters turn into `_`.
fn gap_identifier(name: &str) -> String {
    let mut id: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if id.is_empty() || id.starts_with(|c: char| c.is_ascii_digit()) {
        id.insert_str(0, "M_");
    }
    id
}

/// Reads the generators back from a script written by
/// [`RubikPresentation::script`].
pub fn import_script(text: &str) -> Result<Vec<Perm>, RubikError> {
    let degree = text
        .lines()
        .next()
        .and_then(|l| l.strip_suffix(" points"))
        .and_then(|l| l.rsplit(' ').next())
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| RubikError::MalformedScript("missing point count in header".into()))?;
    let mut gens = Vec::new();
    for line in text.lines() {
        let Some((name, rhs)) = line.split_once(" := ") else {
            continue;
        };
        if !name.starts_with('F') || !name[1..].chars().all(|c| c.is_ascii_digit()) {
            continue;
        }
        let index: usize = name[1..]
            .parse()
            .map_err(|_| RubikError::MalformedScript(line.to_string()))?;
        if index != gens.len() + 1 {
            return Err(RubikError::MalformedScript(format!(
                "generator {name} out of sequence"
            )));
        }
        let body = rhs
            .strip_suffix(';')
            .ok_or_else(|| RubikError::MalformedScript(line.to_string()))?;
        gens.push(Perm::parse_cycles(body, degree)?);
    }
    if gens.is_empty() {
        return Err(RubikError::MalformedScript("no generators".into()));
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{hex_torus, platonic, prism, theta, Platonic};

    #[test]
    fn prism3_generators_have_the_expected_shape() {
        let p = rubik_generators(&prism(3).unwrap()).unwrap();
        assert_eq!(p.generators().len(), 5);
        assert_eq!(p.degree(), 36);
        let mut types: Vec<Vec<usize>> =
            p.generators().iter().map(Perm::cycle_type).collect();
        types.sort();
        assert_eq!(
            types,
            vec![vec![3; 5], vec![3; 5], vec![4; 5], vec![4; 5], vec![4; 5]]
        );
    }

    #[test]
    fn cube_and_theta_sizes() {
        let c = rubik_generators(&platonic(Platonic::Cube)).unwrap();
        assert_eq!((c.generators().len(), c.degree()), (6, 48));
        let t = rubik_generators(&theta()).unwrap();
        assert_eq!((t.generators().len(), t.degree()), (3, 12));
        assert!(t.generators().iter().all(|g| g.element_order() == 2));
    }

    #[test]
    fn side_edge_cycles_are_on_the_face_and_across_it() {
        let m = prism(4).unwrap();
        let p = rubik_generators(&m).unwrap();
        let n = p.corner_count();
        for (f, g) in p.generators().iter().enumerate() {
            let cycles: Vec<Vec<usize>> = g
                .cycles()
                .into_iter()
                .filter(|c| c[0] >= n)
                .collect();
            assert_eq!(cycles.len(), 2);
            let on_face = cycles
                .iter()
                .filter(|c| c.iter().all(|&x| p.home_face(x) == f))
                .count();
            assert_eq!(on_face, 1);
        }
    }

    #[test]
    fn unknown_face() {
        assert!(matches!(
            side_movement(&prism(3).unwrap(), 5),
            Err(RubikError::FaceNotInMap { face: 6, count: 5 })
        ));
    }

    #[test]
    fn degenerate_face_is_reported() {
        // the single hexagon of the 1x1 torus meets each vertex three times
        let m = hex_torus(1, 1).unwrap();
        assert!(matches!(
            rubik_generators(&m),
            Err(RubikError::DegenerateFace { face: 1 })
        ));
    }

    #[test]
    fn projections_are_well_defined_on_generators() {
        let p = rubik_generators(&platonic(Platonic::Dodecahedron)).unwrap();
        for g in p.generators() {
            let ce = p.to_corner_edge().apply(g).unwrap();
            let c = p.corner_edge_to_corner().apply(&ce).unwrap();
            assert_eq!(c, p.corner_action(g));
            let v = p.corner_to_vertex().apply(&c).unwrap();
            assert_eq!(v, p.to_vertex().apply(g).unwrap());
            assert_eq!(p.to_corner().apply(g).unwrap(), c);
        }
    }

    #[test]
    fn script_round_trip() {
        let p = rubik_generators(&prism(3).unwrap()).unwrap();
        let text = p.script();
        assert!(text.starts_with("# Rubik group of map prism3"));
        assert!(text.contains("prism3 := Group([F1, F2, F3, F4, F5]);"));
        assert_eq!(import_script(&text).unwrap(), p.generators());
        assert_eq!(text, p.script());
    }

    #[test]
    fn identifiers() {
        assert_eq!(gap_identifier("hex_torus_2x3"), "hex_torus_2x3");
        assert_eq!(gap_identifier("3-prism"), "M_3_prism");
    }
}
