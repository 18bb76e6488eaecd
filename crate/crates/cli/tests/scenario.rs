use proptest::prelude::*;
use stablehom_cli::exec::{probe_rings, render, run_scenario, Format, Options};
use stablehom_cli::scenario::{parse_scenario, Decl};

const SOCLE: &str = "\
field Q
ring R = poly[x] / (x^2)   # the dual numbers
module k over R = coker [[x]]
module k1 over R = coker [[x]] degrees [1]
module F over R = coker [[]]
map f : k1 -> F = [[x]]
check tn f 1
check rbm f
";

#[test]
fn minimal_scenario_parses() {
    let sc = parse_scenario("field Q\nring R = poly[x] / (x^2)\nmodule k over R = coker [[x]]\n").unwrap();
    assert_eq!(sc.items.len(), 3);
    assert!(matches!(&sc.items[2], Decl::Module { name, rows, .. } if name == "k" && rows == &vec![vec!["x".to_string()]]));
}

#[test]
fn use_before_declaration_is_reported_with_its_line() {
    let text = "field Q\nring R = poly[x] / (x^2)\nmodule k over R = coker [[x]]\ncheck tn f 2\nmap f : k -> k = [[1]]\n";
    let e = parse_scenario(text).unwrap_err();
    assert_eq!(e.line, 4);
    assert!(e.message.contains("not declared before use"), "{e}");
}

#[test]
fn degree_one_generator_is_rejected() {
    let e = parse_scenario("field Q\nring R = poly[x] / (x)\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(e.message.contains("degree below 2"), "{e}");
}

#[test]
fn other_errors_carry_lines() {
    for (text, line) in [
        ("field Q\nring R = poly[x,y] / (x^2 + y)\n", 2),
        ("field Q\nring R = poly[x] / (x^2)\n\nmodule M over R = coker [[x, x^2]] degrees [0]\nmodule N over R = coker [[x + 1]]\n", 5),
        ("field Q\nring R = poly[x] / (x^2)\nmodule k over R = coker [[x]]\nmap f : k -> k = [[x, 1]]\n", 4),
        ("field Q\nring R = poly[x] / (x^2)\nmodule k over R = coker [[x]]\nmodule F over R = coker [[]]\nmap f : k -> F = [[1]]\n", 5),
        ("ring R = poly[x] / (x^2)\n", 1),
        ("field F 4\n", 1),
        ("field Q\nfrobnicate\n", 2),
        ("field Q\nring R = poly[x] / (x^2)\ncheck nothing R\n", 3),
        ("field Q\nring R = poly[x] / (x^2)\nmodule k over R = coker [[x]]\ncheck ext k two\n", 4),
    ] {
        let e = parse_scenario(text).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
    }
}

#[test]
fn serialization_round_trips() {
    let sc = parse_scenario(SOCLE).unwrap();
    let again = parse_scenario(&sc.to_string()).unwrap();
    assert_eq!(sc, again);
    assert_eq!(sc.to_string(), again.to_string());
}

#[test]
fn socle_inclusion_has_t1() {
    let recs = run_scenario(&parse_scenario(SOCLE).unwrap(), &Options::default()).unwrap();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0].tree.get("verdict").unwrap(), &stablehom_lab::report::Tree::leaf("true"));
    assert!(recs.iter().all(|r| !r.failed));
}

#[test]
fn probe_on_the_square_zero_ring_is_false_with_evidence() {
    let sc = parse_scenario("field Q\nring S = poly[x,y] / (x^2, x*y, y^2)\ncheck probe-gorenstein S\n").unwrap();
    let recs = run_scenario(&sc, &Options::default()).unwrap();
    let t = &recs[0].tree;
    assert_eq!(t.get("verdict").unwrap(), &stablehom_lab::report::Tree::leaf("false"));
    let w = t.get("witnesses").unwrap();
    assert!(w.get("depth").is_some() && w.get("ext_lengths").is_some());
    assert_eq!(probe_rings(&sc, &Options::default()).unwrap().len(), 1);
}

#[test]
fn empty_scenario_gives_an_empty_report() {
    let sc = parse_scenario("# nothing here\n\n").unwrap();
    let recs = run_scenario(&sc, &Options::default()).unwrap();
    assert!(recs.is_empty());
    assert_eq!(render(&[], Format::JsonLikeTree), "[]\n");
    assert_eq!(render(&[], Format::Text), "");
}

#[test]
fn caps_are_reported_as_failures() {
    let sc = parse_scenario("field Q\nring R = poly[x] / (x^2)\nmodule k over R = coker [[x]]\ncheck resolve k 9\n").unwrap();
    let recs = run_scenario(&sc, &Options::default()).unwrap();
    assert!(recs[0].failed);
}

#[test]
fn machine_report_is_reproducible() {
    let text = format!("{SOCLE}check psi k 1\ncheck verify main2 R\n");
    let sc = parse_scenario(&text).unwrap();
    let opts = Options { seed: 7, corpus_size: 20, ..Options::default() };
    let a: Vec<_> = run_scenario(&sc, &opts).unwrap().into_iter().map(|r| r.tree).collect();
    let b: Vec<_> = run_scenario(&sc, &opts).unwrap().into_iter().map(|r| r.tree).collect();
    let ja = render(&a, Format::JsonLikeTree);
    assert_eq!(ja, render(&b, Format::JsonLikeTree));
    for key in ["\"command\"", "\"inputs\"", "\"verdict\"", "\"witnesses\"", "\"failure\""] {
        assert!(ja.contains(key));
    }
    // no floating point numbers anywhere
    let b = ja.as_bytes();
    assert!(!(1..b.len() - 1).any(|i| b[i] == b'.' && b[i - 1].is_ascii_digit() && b[i + 1].is_ascii_digit()));
}

fn poly_entry() -> impl Strategy<Value = String> {
    prop_oneof![Just("0".to_string()), Just("x".to_string()), Just("y".to_string()), Just("x + y".to_string()), Just("2*x - y".to_string())]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, .. ProptestConfig::default() })]

    #[test]
    fn generated_scenarios_round_trip(
        rels in proptest::collection::vec(proptest::collection::vec(poly_entry(), 1..3), 1..3),
        checks in proptest::collection::vec(0usize..4, 0..5),
    ) {
        let ncols = rels[0].len();
        let rows: Vec<String> = rels.iter().map(|r| {
            let mut r = r.clone();
            r.resize(ncols, "0".to_string());
            format!("[{}]", r.join(", "))
        }).collect();
        // the zero map has one column per generator of M
        let zrow = vec!["0"; rels.len()].join(", ");
        let mut text = format!(
            "field Q\nring R = poly[x, y] / (x*y)\nmodule M over R = coker [{}]\nmodule F over R = coker [[]]\nmap z : M -> F = [[{zrow}]]\n",
            rows.join(", "),
        );
        for c in checks {
            text.push_str(["check grade M\n", "check ext M 1\n", "check tn z 2\n", "check resolve M 2\n"][c]);
        }
        let sc = parse_scenario(&text).unwrap();
        let again = parse_scenario(&sc.to_string()).unwrap();
        prop_assert_eq!(&sc, &again);
    }
}

#[test]
fn shipped_scenarios_run_cleanly() {
    for name in ["dual_numbers.scn", "square_zero.scn"] {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name);
        let sc = parse_scenario(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(parse_scenario(&sc.to_string()).unwrap(), sc);
        let opts = Options { corpus_size: 20, ..Options::default() };
        assert!(run_scenario(&sc, &opts).unwrap().iter().all(|r| !r.failed), "{name}");
    }
}
