use num_bigint::BigUint;
use rubikmap::map::{platonic, prism, theta, Platonic};
use rubikmap::verify::{
    predicted_order, run_suite, to_csv, to_json, verify, VerifyError, VerifyOptions,
};

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

#[test]
fn cube_chain() {
    let r = verify(&platonic(Platonic::Cube), &VerifyOptions::default()).unwrap();
    let o = r.orders.as_ref().unwrap();
    assert_eq!(o.h1, big("2048"));
    assert_eq!(o.h2, big("239500800"));
    assert_eq!(o.h3, big("2187"));
    assert_eq!(o.vertex_image, big("40320"));
    assert_eq!(o.total, big("43252003274489856000"));
    assert!(r.pass);
    assert!(r.bounds.unwrap().all());
}

#[test]
fn megaminx_chain() {
    let m = platonic(Platonic::Dodecahedron);
    let r = verify(&m, &VerifyOptions::default()).unwrap();
    let o = r.orders.as_ref().unwrap();
    let fact = |n: u32| (1..=n).fold(BigUint::from(1u32), |a, k| a * k);
    assert_eq!(o.vertex_image, fact(20) / 2u32);
    assert_eq!(o.total, predicted_order(&m).unwrap());
    assert!(r.pass);
}

#[test]
fn tetrahedron_vertex_image_is_alternating() {
    let r = verify(&platonic(Platonic::Tetrahedron), &VerifyOptions::default()).unwrap();
    assert_eq!(r.orders.as_ref().unwrap().vertex_image, big("12"));
    assert!(r.pass);
}

#[test]
fn theta_is_out_of_scope() {
    assert!(matches!(
        verify(&theta(), &VerifyOptions::default()),
        Err(VerifyError::OutOfConjectureScope(..))
    ));
    let reports = run_suite(&[theta()], &VerifyOptions::default());
    assert_eq!(reports[0].error.as_deref(), Some("OutOfConjectureScope"));
    assert!(!reports[0].pass);
}

#[test]
fn reports_do_not_depend_on_the_seed() {
    let maps: Vec<_> = (3..7).map(|n| prism(n).unwrap()).collect();
    let run = |seed| {
        let opts = VerifyOptions {
            seed,
            ..Default::default()
        };
        run_suite(&maps, &opts)
            .iter()
            .map(|r| r.without_timing())
            .collect::<Vec<_>>()
    };
    assert_eq!(run(1), run(77));
}

#[test]
fn output_formats() {
    let reports = run_suite(&[prism(3).unwrap()], &VerifyOptions::default());
    let csv = to_csv(&reports);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,V,E,F,all_odd,order,h1,h2,h3,vertex_image,predicted,pass,seconds"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..12], &[
        "prism3", "6", "9", "5", "false", "8126654054400", "256", "181440", "243", "720",
        "8126654054400", "true"
    ]);
    let doc: serde_json::Value = serde_json::from_str(&to_json(&reports)).unwrap();
    assert_eq!(doc["reports"][0]["orders"]["h2"], "181440");
    assert_eq!(doc["summary"]["passed"], 1);
}
