use super::{Map, MapError};

/// Theta graph on the sphere: two vertices, three parallel edges, three
/// digon faces.
pub fn theta() -> Map {
    Map::from_rotation_system(
        &[vec![1, 2, 3], vec![4, 6, 5]],
        &[[1, 4], [2, 5], [3, 6]],
        "theta",
    )
    .expect("theta rotation system is valid")
}

/// The `n`-gonal prism: two `n`-gons joined by a ring of squares.
pub fn prism(n: usize) -> Result<Map, MapError> {
    if n < 3 {
        return Err(MapError::ParameterOutOfRange(format!(
            "prism needs n >= 3, got {n}"
        )));
    }
    let mut faces = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).rev().collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, n + i, n + j, j]);
    }
    Map::from_faces(format!("prism{n}"), &faces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Platonic {
    Tetrahedron,
    Cube,
    Dodecahedron,
}

impl Platonic {
    pub fn name(self) -> &'static str {
        match self {
            Platonic::Tetrahedron => "tetrahedron",
            Platonic::Cube => "cube",
            Platonic::Dodecahedron => "dodecahedron",
        }
    }

    pub fn from_name(name: &str) -> Option<Platonic> {
        match name {
            "tetrahedron" => Some(Platonic::Tetrahedron),
            "cube" => Some(Platonic::Cube),
            "dodecahedron" => Some(Platonic::Dodecahedron),
            _ => None,
        }
    }
}

/// The 3-valent platonic solids.
pub fn platonic(solid: Platonic) -> Map {
    let faces: Vec<Vec<usize>> = match solid {
        Platonic::Tetrahedron => vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
        Platonic::Cube => {
            return prism(4).expect("n = 4 is in range").with_name("cube");
        }
        Platonic::Dodecahedron => {
            // top ring a_i, then b_i below a_i, c_i between b_i and b_{i+1},
            // bottom ring d_i below c_i
            let a = |i: usize| i % 5;
            let b = |i: usize| 5 + i % 5;
            let c = |i: usize| 10 + i % 5;
            let d = |i: usize| 15 + i % 5;
            let mut faces = vec![(0..5).map(a).collect::<Vec<_>>()];
            for i in 0..5 {
                faces.push(vec![a(i), a(i + 1), b(i + 1), c(i), b(i)]);
                faces.push(vec![c(i), b(i + 1), c(i + 1), d(i + 1), d(i)]);
            }
            faces.push((0..5).map(d).collect());
            faces
        }
    };
    Map::from_faces(solid.name(), &faces).expect("platonic face lists are valid")
}

/// Vertex truncation: every vertex becomes a triangle and every `p`-gon a
/// `2p`-gon. Each dart `d` of the input becomes a vertex near `d`'s end
/// with darts along the old edge, towards `sigma(d)`'s new vertex and
/// towards `sigma^-1(d)`'s new vertex, in that rotation order.
pub fn truncate(map: &Map) -> Map {
    let n = map.dart_count();
    let along = |d: usize| 3 * d;
    let next = |d: usize| 3 * d + 1;
    let prev = |d: usize| 3 * d + 2;
    let mut sigma = vec![0; 3 * n];
    let mut alpha = vec![0; 3 * n];
    for d in 0..n {
        sigma[along(d)] = next(d);
        sigma[next(d)] = prev(d);
        sigma[prev(d)] = along(d);
        alpha[along(d)] = along(map.alpha(d));
        let s = map.sigma(d);
        alpha[next(d)] = prev(s);
        alpha[prev(s)] = next(d);
    }
    Map::from_permutations(format!("truncated_{}", map.name()), sigma, alpha)
        .expect("truncation of a valid map is valid")
}

/// Hexagonal grid on the torus with `rows * cols` hexagons.
///
/// The honeycomb is bipartite: black vertex `(i, j)` joins white `(i, j)`,
/// white `(i - 1, j)` and white `(i, j - 1)`, indices taken cyclically.
pub fn hex_torus(rows: usize, cols: usize) -> Result<Map, MapError> {
    if rows == 0 || cols == 0 {
        return Err(MapError::ParameterOutOfRange(format!(
            "hex torus needs positive dimensions, got {rows}x{cols}"
        )));
    }
    let black = |i: usize, j: usize| (i % rows) * cols + (j % cols);
    // dart of edge type t at black vertex v: black end 6v + 2t, white end +1
    let black_end = |v: usize, t: usize| 6 * v + 2 * t;
    let white_end = |v: usize, t: usize| 6 * v + 2 * t + 1;
    let n = 6 * rows * cols;
    let mut sigma = vec![0; n];
    let mut alpha = vec![0; n];
    for i in 0..rows {
        for j in 0..cols {
            let v = black(i, j);
            for t in 0..3 {
                sigma[black_end(v, t)] = black_end(v, (t + 1) % 3);
                alpha[black_end(v, t)] = white_end(v, t);
                alpha[white_end(v, t)] = black_end(v, t);
            }
            // white (i, j) sees type 1 from black (i+1, j), type 2 from
            // black (i, j+1) and type 0 from black (i, j), in that order
            let w = [
                white_end(black(i + 1, j), 1),
                white_end(black(i, j + 1), 2),
                white_end(v, 0),
            ];
            for k in 0..3 {
                sigma[w[k]] = w[(k + 1) % 3];
            }
        }
    }
    Map::from_permutations(format!("hex_torus_{rows}x{cols}"), sigma, alpha)
}
