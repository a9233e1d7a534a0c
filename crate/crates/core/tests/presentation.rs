mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rubikmap::group::PermGroup;
use rubikmap::map::{by_name, catalog_names, prism};
use rubikmap::rubik::{import_script, rubik_generators, RubikPresentation};
use rubikmap::shift::CornerOrientation;

fn catalog() -> Vec<RubikPresentation> {
    catalog_names()
        .iter()
        .map(|n| rubik_generators(&by_name(n).unwrap()).unwrap())
        .collect()
}

#[test]
fn generator_order_and_support() {
    for p in catalog() {
        let n = p.corner_count();
        assert_eq!(n, 3 * p.map().vertex_count());
        for (f, g) in p.generators().iter().enumerate() {
            let size = p.map().faces()[f].len();
            assert_eq!(g.element_order(), size as u64, "{} F{}", p.map().name(), f + 1);
            assert!(g.pow(size as i64).is_identity());
            assert_eq!(g.moved_points(), 5 * size);
            let corners = (0..n).filter(|&x| g.image(x) != x).count();
            assert_eq!(corners, 3 * size);
        }
    }
}

#[test]
fn side_edge_and_vertex_signatures() {
    for p in catalog() {
        let n = p.corner_count();
        let e = p.map().edge_count();
        for (f, g) in p.generators().iter().enumerate() {
            let side = g.sign_on(n..2 * n).unwrap();
            assert_eq!(side, 1, "{} F{}", p.map().name(), f + 1);
            let edges = p.to_corner_edge().apply(g).unwrap().sign_on(n..n + e).unwrap();
            let vertices = p.to_vertex().apply(g).unwrap();
            assert_eq!(vertices.sign(), edges);
            let size = p.map().faces()[f].len();
            assert_eq!(vertices.cycle_type(), vec![size]);
            assert_eq!(vertices.sign() as i32, if size % 2 == 1 { 1 } else { -1 });
        }
    }
}

#[test]
fn generators_preserve_oriented_triples() {
    for p in catalog() {
        let o = CornerOrientation::new(&p);
        for g in p.generators() {
            assert!(o.is_ormap(&p.corner_action(g)));
        }
    }
}

#[test]
fn random_words_keep_the_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in catalog() {
        let n = p.corner_count();
        for _ in 0..20 {
            let x = common::random_word_element(p.generators(), 25, &mut rng);
            assert!((0..n).all(|c| x.image(c) < n));
        }
    }
}

#[test]
fn prism3_script_export() {
    let p = rubik_generators(&prism(3).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.g");
    let b = dir.path().join("b.g");
    p.export_script(&a).unwrap();
    p.export_script(&b).unwrap();
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text.as_bytes(), std::fs::read(&b).unwrap().as_slice());
    let gens = import_script(&text).unwrap();
    assert_eq!(gens.len(), 5);
    let mut types = common::cycle_types(&gens);
    types.dedup();
    assert_eq!(types, vec![vec![3; 5], vec![4; 5]]);
    let reimported = PermGroup::from_generators(gens).unwrap();
    assert_eq!(reimported.order(), p.group().unwrap().order());
}

#[test]
fn matches_published_listing_up_to_relabelling() {
    let p = rubik_generators(&prism(3).unwrap()).unwrap();
    let published = common::prism3_listing();
    assert_eq!(common::cycle_types(p.generators()), common::cycle_types(&published));
    let a = PermGroup::from_generators(published).unwrap();
    assert_eq!(a.order(), p.group().unwrap().order());
}
