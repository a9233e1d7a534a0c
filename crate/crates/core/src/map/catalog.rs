use super::build::{hex_torus, platonic, prism, theta, truncate, Platonic};
use super::{Map, MapError};

/// Looks up a built-in map: `theta`, `tetrahedron`, `cube`,
/// `dodecahedron`, `prism<n>`, `hex_torus_<r>x<c>` and
/// `truncated_<name>` of any of these.
pub fn by_name(name: &str) -> Result<Map, MapError> {
    let unknown = || MapError::UnknownMap(name.to_string());
    if let Some(inner) = name.strip_prefix("truncated_") {
        return Ok(truncate(&by_name(inner).map_err(|_| unknown())?));
    }
    if name == "theta" {
        return Ok(theta());
    }
    if let Some(solid) = Platonic::from_name(name) {
        return Ok(platonic(solid));
    }
    if let Some(n) = name.strip_prefix("prism") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        return prism(n);
    }
    if let Some(dims) = name.strip_prefix("hex_torus_") {
        let (r, c) = dims.split_once('x').ok_or_else(unknown)?;
        let r: usize = r.parse().map_err(|_| unknown())?;
        let c: usize = c.parse().map_err(|_| unknown())?;
        return hex_torus(r, c);
    }
    Err(unknown())
}

/// Names listed by the CLI and the service.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = ["theta", "tetrahedron", "cube", "dodecahedron"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((3..=10).map(|n| format!("prism{n}")));
    names.extend(
        ["truncated_tetrahedron", "truncated_cube", "hex_torus_2x3"]
            .iter()
            .map(|s| s.to_string()),
    );
    names
}

/// Maps checked by the conjecture suite: prisms 3 to 10, the three
/// 3-valent platonic solids, two truncations and one torus.
pub fn default_suite() -> Vec<Map> {
    let mut names: Vec<String> = (3..=10).map(|n| format!("prism{n}")).collect();
    names.extend(
        [
            "tetrahedron",
            "cube",
            "dodecahedron",
            "truncated_tetrahedron",
            "truncated_cube",
            "hex_torus_2x3",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    names
        .iter()
        .map(|n| by_name(n).expect("suite maps are in the catalog"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_name_resolves() {
        for name in catalog_names() {
            let m = by_name(&name).unwrap();
            assert_eq!(m.name(), name);
            assert_eq!(2 * m.edge_count(), 3 * m.vertex_count());
        }
    }

    #[test]
    fn unknown_names() {
        for bad in ["", "prism", "prismx", "octahedron", "hex_torus_3", "truncated_foo"] {
            assert!(matches!(by_name(bad), Err(MapError::UnknownMap(_))), "{bad}");
        }
        assert!(matches!(by_name("prism2"), Err(MapError::ParameterOutOfRange(_))));
    }

    #[test]
    fn nested_truncation() {
        let m = by_name("truncated_truncated_tetrahedron").unwrap();
        assert_eq!(m.vertex_count(), 36);
    }
}
