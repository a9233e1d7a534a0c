#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rubikmap::map::Map;
use rubikmap::perm::Perm;

/// An independent listing of the five side movements of the triangular
/// prism, on 36 points with a numbering unrelated to ours. Only orders and
/// cycle types can be compared against it.
pub const PRISM3_LISTING: [&str; 5] = [
    "(31,35,33)(36,34,32)(3,19,11)(5,21,13)(8,24,16)",
    "(29,27,25)(30,28,26)(6,14,22)(4,12,20)(1,9,17)",
    "(1,6,8,3)(4,7,5,2)(17,35,16,25)(19,31,14,27)(18,36,15,26)",
    "(19,17,22,24)(18,20,23,21)(7,28,10,34)(8,27,9,33)(6,29,11,35)",
    "(9,14,16,11)(12,15,13,10)(1,31,24,29)(2,32,23,30)(3,33,22,25)",
];

pub fn prism3_listing() -> Vec<Perm> {
    PRISM3_LISTING
        .iter()
        .map(|s| Perm::parse_cycles(s, 36).unwrap())
        .collect()
}

/// Sorted cycle types of a generator list.
pub fn cycle_types(gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut t: Vec<Vec<usize>> = gens.iter().map(Perm::cycle_type).collect();
    t.sort();
    t
}

/// The same map with darts renamed by a random bijection.
pub fn relabel(map: &Map, rng: &mut impl Rng) -> Map {
    let n = map.dart_count();
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(rng);
    let mut sigma = vec![0; n];
    let mut alpha = vec![0; n];
    for d in 0..n {
        sigma[pi[d]] = pi[map.sigma(d)];
        alpha[pi[d]] = pi[map.alpha(d)];
    }
    Map::from_permutations(map.name(), sigma, alpha).unwrap()
}

/// A random word of `len` generator powers.
pub fn random_word_element(gens: &[Perm], len: usize, rng: &mut impl Rng) -> Perm {
    let mut acc = Perm::identity(gens[0].degree());
    for _ in 0..len {
        let g = &gens[rng.random_range(0..gens.len())];
        acc.mul_assign(&g.pow(rng.random_range(1..4)));
    }
    acc
}
