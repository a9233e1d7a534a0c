//! Checks the predicted structure of a map's Rubik group.
//!
//! The group acts on corners and side edges. Forgetting which side of an
//! edge a sticker is on, then forgetting edges, then collapsing each
//! vertex's corners gives the chain
//!
//! ```text
//! G -> G(corner, edge) -> G(corner) -> G(vertex)
//! ```
//!
//! with kernels `H1`, `H2`, `H3`. The prediction is that `H1` is
//! elementary abelian of order `2^(E-1)`, `H2` is the alternating group on
//! edges, `H3` is elementary abelian of order `3^(V-1)`, and the vertex
//! image is alternating when every face is odd and symmetric otherwise.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{BuildOptions, GroupError, PermGroup};
use crate::map::Map;
use crate::rubik::{RubikError, RubikPresentation};
use crate::shift::CornerOrientation;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("map {0} is outside the conjecture's scope: {1}")]
    OutOfConjectureScope(String, String),
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error(transparent)]
    Rubik(RubikError),
    #[error(transparent)]
    Group(GroupError),
}

impl From<GroupError> for VerifyError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::BudgetExceeded => VerifyError::BudgetExceeded,
            e => VerifyError::Group(e),
        }
    }
}

impl From<RubikError> for VerifyError {
    fn from(e: RubikError) -> Self {
        match e {
            RubikError::Group(g) => g.into(),
            e => VerifyError::Rubik(e),
        }
    }
}

impl VerifyError {
    /// Stable short code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            VerifyError::OutOfConjectureScope(..) => "OutOfConjectureScope",
            VerifyError::BudgetExceeded => "BudgetExceeded",
            VerifyError::Rubik(_) => "RubikError",
            VerifyError::Group(_) => "GroupError",
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn power(base: u32, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Predicted sizes of `H1`, `H2`, `H3` and the vertex image.
fn predicted_parts(map: &Map) -> [BigUint; 4] {
    let (v, e) = (map.vertex_count(), map.edge_count());
    let two = BigUint::from(2u32);
    let vertex = if map.all_faces_odd() {
        factorial(v) / &two
    } else {
        factorial(v)
    };
    [power(2, e - 1), factorial(e) / &two, power(3, v - 1), vertex]
}

fn check_scope(map: &Map) -> Result<(), VerifyError> {
    if let Some(f) = map.faces().iter().position(|f| f.len() < 3) {
        return Err(VerifyError::OutOfConjectureScope(
            map.name().to_string(),
            format!("face {} has size {}", f + 1, map.faces()[f].len()),
        ));
    }
    Ok(())
}

/// `2^(E-1) * (E!/2) * 3^(V-1) * (V! or V!/2)`, the latter when all faces
/// are odd.
pub fn predicted_order(map: &Map) -> Result<BigUint, VerifyError> {
    check_scope(map)?;
    Ok(predicted_parts(map).iter().product())
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOrders {
    #[serde(with = "decimal")]
    pub total: BigUint,
    #[serde(with = "decimal")]
    pub corner_edge: BigUint,
    #[serde(with = "decimal")]
    pub corner: BigUint,
    #[serde(with = "decimal")]
    pub vertex_image: BigUint,
    #[serde(with = "decimal")]
    pub h1: BigUint,
    #[serde(with = "decimal")]
    pub h2: BigUint,
    #[serde(with = "decimal")]
    pub h3: BigUint,
}

impl ChainOrders {
    /// Whether every step of the chain splits the order exactly.
    pub fn is_exact(&self) -> bool {
        self.total == &self.corner_edge * &self.h1
            && self.corner_edge == &self.corner * &self.h2
            && self.corner == &self.vertex_image * &self.h3
    }
}

/// Results of the four conjecture clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseChecks {
    pub h1_order: bool,
    pub h1_abelian: bool,
    pub h1_exponent_2: bool,
    pub h2_order: bool,
    pub h2_even_on_edges: bool,
    pub h3_order: bool,
    pub h3_abelian: bool,
    pub h3_exponent_3: bool,
    pub h3_shift_zero: bool,
    pub vertex_image_order: bool,
}

impl ClauseChecks {
    pub fn clause_i(&self) -> bool {
        self.h1_order && self.h1_abelian && self.h1_exponent_2
    }

    pub fn clause_ii(&self) -> bool {
        self.h2_order && self.h2_even_on_edges
    }

    pub fn clause_iii(&self) -> bool {
        self.h3_order && self.h3_abelian && self.h3_exponent_3 && self.h3_shift_zero
    }

    pub fn clause_iv(&self) -> bool {
        self.vertex_image_order
    }

    pub fn all(&self) -> bool {
        self.clause_i() && self.clause_ii() && self.clause_iii() && self.clause_iv()
    }
}

/// Upper bounds that hold for every map, whatever the conjecture says.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChecks {
    pub chain_exact: bool,
    pub h1_divides: bool,
    pub h2_divides: bool,
    pub h3_divides: bool,
    /// Vacuously true unless every face is odd.
    pub vertex_image_even: bool,
}

impl BoundChecks {
    pub fn all(&self) -> bool {
        self.chain_exact
            && self.h1_divides
            && self.h2_divides
            && self.h3_divides
            && self.vertex_image_even
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
    pub face_sizes: Vec<usize>,
    pub all_odd: bool,
    pub orders: Option<ChainOrders>,
    #[serde(with = "decimal_opt")]
    pub predicted: Option<BigUint>,
    pub clauses: Option<ClauseChecks>,
    pub bounds: Option<BoundChecks>,
    pub pass: bool,
    /// Error code when the map could not be checked.
    pub error: Option<String>,
    pub message: Option<String>,
    pub seconds: f64,
}

impl ConjectureReport {
    fn skeleton(map: &Map) -> Self {
        ConjectureReport {
            name: map.name().to_string(),
            vertices: map.vertex_count(),
            edges: map.edge_count(),
            faces: map.face_count(),
            genus: map.genus(),
            face_sizes: map.face_sizes(),
            all_odd: map.all_faces_odd(),
            orders: None,
            predicted: None,
            clauses: None,
            bounds: None,
            pass: false,
            error: None,
            message: None,
            seconds: 0.0,
        }
    }

    fn failed(map: &Map, err: &VerifyError, seconds: f64) -> Self {
        ConjectureReport {
            error: Some(err.code().to_string()),
            message: Some(err.to_string()),
            seconds,
            ..ConjectureReport::skeleton(map)
        }
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    /// The report with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> ConjectureReport {
        ConjectureReport {
            seconds: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Wall-clock limit per map.
    pub budget: Option<Duration>,
    /// Random elements sampled for exponent and shift checks.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 1,
            budget: None,
            samples: 50,
        }
    }
}

/// Builds the chain for `map` and checks every clause.
pub fn verify(map: &Map, opts: &VerifyOptions) -> Result<ConjectureReport, VerifyError> {
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let out_of_time = || deadline.is_some_and(|d| Instant::now() >= d);
    check_scope(map)?;
    if out_of_time() {
        return Err(VerifyError::BudgetExceeded);
    }

    let pres = RubikPresentation::new(map.clone())?;
    let build = BuildOptions {
        seed: opts.seed,
        base_prefix: Vec::new(),
        deadline,
    };
    let g = pres.group_with(&build)?;
    let to_ce = pres.to_corner_edge();
    let ce_to_c = pres.corner_edge_to_corner();
    let c_to_v = pres.corner_to_vertex();

    let ce = g.action_image_within(&to_ce, deadline)?;
    let h1 = g.kernel_within(&to_ce, deadline)?;
    let c = ce.action_image_within(&ce_to_c, deadline)?;
    let h2 = ce.kernel_within(&ce_to_c, deadline)?;
    let vimg = c.action_image_within(&c_to_v, deadline)?;
    let h3 = c.kernel_within(&c_to_v, deadline)?;

    let orders = ChainOrders {
        total: g.order(),
        corner_edge: ce.order(),
        corner: c.order(),
        vertex_image: vimg.order(),
        h1: h1.order(),
        h2: h2.order(),
        h3: h3.order(),
    };

    let [p1, p2, p3, p4] = predicted_parts(map);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = pres.corner_count();
    let edge_block = n..n + map.edge_count();
    let orient = CornerOrientation::new(&pres);
    let zero_shift = |h: &PermGroup, rng: &mut ChaCha8Rng| {
        h.generators()
            .iter()
            .cloned()
            .chain((0..opts.samples).map(|_| h.random_element(rng)))
            .all(|f| orient.shift(&f).is_ok_and(|s| s.value() == 0))
    };

    let clauses = ClauseChecks {
        h1_order: orders.h1 == p1,
        h1_abelian: h1.is_abelian(),
        h1_exponent_2: h1.has_exponent(2, opts.samples, &mut rng),
        h2_order: orders.h2 == p2,
        h2_even_on_edges: h2
            .generators()
            .iter()
            .all(|g| g.sign_on(edge_block.clone()) == Some(1)),
        h3_order: orders.h3 == p3,
        h3_abelian: h3.is_abelian(),
        h3_exponent_3: h3.has_exponent(3, opts.samples, &mut rng),
        h3_shift_zero: zero_shift(&h3, &mut rng),
        vertex_image_order: orders.vertex_image == p4,
    };
    let divides = |bound: &BigUint, x: &BigUint| !x.is_zero() && (bound % x).is_zero();
    let bounds = BoundChecks {
        chain_exact: orders.is_exact(),
        h1_divides: divides(&p1, &orders.h1),
        h2_divides: divides(&p2, &orders.h2),
        h3_divides: divides(&p3, &orders.h3),
        vertex_image_even: !map.all_faces_odd()
            || vimg.generators().iter().all(|g| g.sign() == 1),
    };
    let predicted = &p1 * &p2 * &p3 * &p4;
    let pass = clauses.all() && bounds.all() && orders.total == predicted;

    Ok(ConjectureReport {
        orders: Some(orders),
        predicted: Some(predicted),
        clauses: Some(clauses),
        bounds: Some(bounds),
        pass,
        seconds: start.elapsed().as_secs_f64(),
        ..ConjectureReport::skeleton(map)
    })
}

/// Verifies every map in parallel. Failures are recorded in the reports,
/// which come back in input order.
pub fn run_suite(maps: &[Map], opts: &VerifyOptions) -> Vec<ConjectureReport> {
    maps.par_iter()
        .map(|m| {
            let start = Instant::now();
            verify(m, opts)
                .unwrap_or_else(|e| ConjectureReport::failed(m, &e, start.elapsed().as_secs_f64()))
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub maps: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    /// Failures and errors on maps of positive genus.
    pub non_planar_failures: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[ConjectureReport]) -> Self {
        let mut s = SuiteSummary {
            maps: reports.len(),
            ..Default::default()
        };
        for r in reports {
            if r.pass {
                s.passed += 1;
                continue;
            }
            if r.error.is_some() {
                s.errors += 1;
            } else {
                s.failed += 1;
            }
            if !r.is_planar() {
                s.non_planar_failures += 1;
            }
        }
        s
    }

    /// Whether every planar map passed.
    pub fn planar_ok(&self) -> bool {
        self.failed + self.errors == self.non_planar_failures
    }
}

pub const CSV_COLUMNS: [&str; 13] = [
    "name",
    "V",
    "E",
    "F",
    "all_odd",
    "order",
    "h1",
    "h2",
    "h3",
    "vertex_image",
    "predicted",
    "pass",
    "seconds",
];

fn row(r: &ConjectureReport) -> Vec<String> {
    let order = |f: fn(&ChainOrders) -> &BigUint| {
        r.orders.as_ref().map(|o| f(o).to_string()).unwrap_or_default()
    };
    vec![
        r.name.clone(),
        r.vertices.to_string(),
        r.edges.to_string(),
        r.faces.to_string(),
        r.all_odd.to_string(),
        order(|o| &o.total),
        order(|o| &o.h1),
        order(|o| &o.h2),
        order(|o| &o.h3),
        order(|o| &o.vertex_image),
        r.predicted.as_ref().map(|p| p.to_string()).unwrap_or_default(),
        r.pass.to_string(),
        format!("{:.3}", r.seconds),
    ]
}

pub fn to_csv(reports: &[ConjectureReport]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in reports {
        out += &row(r).join(",");
        out.push('\n');
    }
    out
}

/// Fixed-width table with a status column and a summary line.
pub fn to_table(reports: &[ConjectureReport]) -> String {
    let mut header: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.push("note".into());
    let mut rows = vec![header];
    for r in reports {
        let mut cells = row(r);
        let note = match (&r.error, r.genus) {
            (Some(code), _) => code.clone(),
            (None, 0) => String::new(),
            (None, g) => format!("genus {g}"),
        };
        cells.push(note);
        rows.push(cells);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for cells in &rows {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    let s = SuiteSummary::of(reports);
    out += &format!(
        "{} maps: {} passed, {} failed, {} errors ({} on non-planar maps)\n",
        s.maps, s.passed, s.failed, s.errors, s.non_planar_failures
    );
    out
}

pub fn to_json(reports: &[ConjectureReport]) -> String {
    let doc = serde_json::json!({
        "reports": reports,
        "summary": SuiteSummary::of(reports),
    });
    serde_json::to_string_pretty(&doc).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{platonic, prism, theta, Platonic};

    #[test]
    fn predicted_orders() {
        let cube = platonic(Platonic::Cube);
        assert_eq!(
            predicted_order(&cube).unwrap().to_string(),
            "43252003274489856000"
        );
        let tetra = platonic(Platonic::Tetrahedron);
        assert_eq!(predicted_order(&tetra).unwrap(), BigUint::from(3732480u32));
        assert!(matches!(
            predicted_order(&theta()),
            Err(VerifyError::OutOfConjectureScope(..))
        ));
    }

    #[test]
    fn tetrahedron_passes() {
        let r = verify(&platonic(Platonic::Tetrahedron), &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        let o = r.orders.unwrap();
        assert_eq!(o.vertex_image, BigUint::from(12u32));
        assert_eq!(o.total, BigUint::from(3732480u32));
    }

    #[test]
    fn zero_budget_is_exceeded() {
        let opts = VerifyOptions {
            budget: Some(Duration::ZERO),
            ..Default::default()
        };
        let reports = run_suite(&[prism(3).unwrap(), prism(4).unwrap()], &opts);
        assert!(reports
            .iter()
            .all(|r| r.error.as_deref() == Some("BudgetExceeded")));
    }

    #[test]
    fn empty_suite() {
        let reports = run_suite(&[], &VerifyOptions::default());
        assert!(reports.is_empty());
        assert_eq!(to_csv(&reports), CSV_COLUMNS.join(",") + "\n");
    }

    #[test]
    fn json_round_trip() {
        let r = verify(&prism(3).unwrap(), &VerifyOptions::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"total\":\""));
        let back: ConjectureReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
