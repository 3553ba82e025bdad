//! Parsing, rendering, and diagnostics of the structure format.

use cofrob_cli::document::{parse, render, Document};
use cofrob_core::models::*;
use cofrob_core::structures::BialgebraData;
use cofrob_core::Field;

const S2: &str = "\
# cohomology of the 2-sphere
field Q
flavor biunital
module:
1 0
ω 2
map mu degree 0:
1,1 -> 1 * 1
1,ω -> 1 * ω
ω,1 -> 1 * ω
map lambda degree 2:
1 -> 1 * 1#ω + 1 * ω#1
ω -> 1 * ω#ω
eta:
1 * 1
map eps degree -2:
ω -> 1 * R
";

fn round_trip(doc: &Document) {
    let text = render(doc);
    let back = parse(&text).unwrap_or_else(|e| panic!("{}\n{}", e, text));
    assert_eq!(&back, doc, "round trip changed the document:\n{}", text);
    assert_eq!(render(&back), text);
}

#[test]
fn two_sphere_file_parses_to_the_library_model() {
    let doc = parse(S2).unwrap();
    assert_eq!(doc.closed.module.dim(), 2);
    let maps = [doc.closed.mu.is_some(), doc.closed.lambda.is_some(), doc.closed.eta.is_some(), doc.closed.eps.is_some()];
    assert_eq!(maps, [true; 4]);
    assert_eq!(doc.structure().unwrap(), sphere_cohomology(2).unwrap());
    round_trip(&doc);
}

#[test]
fn every_example_round_trips() {
    let singles: Vec<BialgebraData> = vec![
        sphere_cohomology(3).unwrap(),
        torus(),
        s2xs2(),
        loop_sphere(3, 4).unwrap(),
        based_loop_sphere(3, 4).unwrap(),
        rabinowitz_loop_sphere(5, 4).unwrap(),
        based_rabinowitz_loop_sphere(3, 4).unwrap(),
        circle_models(4, VectorField::Minus, CircleFlavor::Loop).unwrap(),
        circle_models(4, VectorField::Plus, CircleFlavor::Rabinowitz).unwrap(),
    ];
    for d in &singles {
        let doc = Document::from_structure(d);
        round_trip(&doc);
        assert_eq!(&parse(&render(&doc)).unwrap().structure().unwrap(), d);
    }
    for t in [equator_tqft(), diagonal_tqft(), slice_tqft(), loop_tqft_sphere(3, 4).unwrap()] {
        let doc = Document::from_tqft(&t);
        round_trip(&doc);
        let back = parse(&render(&doc)).unwrap().tqft().unwrap();
        assert_eq!((back.zipper, back.cozipper), (t.zipper, t.cozipper));
    }
}

#[test]
fn fractions_signs_and_prime_fields() {
    let text = S2.replace("1 -> 1 * 1#ω + 1 * ω#1", "1 -> 1/2 * 1#ω - 3 * ω#1 + -1/2 * 1#ω");
    let doc = parse(&text).unwrap();
    let lam = doc.closed.lambda.as_ref().unwrap();
    let col = lam.image(&[0]).unwrap();
    assert_eq!(col.len(), 1, "1/2 and -1/2 cancel");
    assert_eq!(col[&vec![1, 0]], Field::Q.int(-3));
    round_trip(&doc);

    let fp = parse(&S2.replace("field Q", "field Fp 5").replace("1 * ω#ω", "1/2 * ω#ω")).unwrap();
    assert_eq!(fp.field, Field::Fp(5));
    assert_eq!(fp.closed.lambda.as_ref().unwrap().image(&[1]).unwrap()[&vec![1, 1]], Field::Fp(5).int(3));
    round_trip(&fp);
}

#[test]
fn undeclared_label_is_reported_at_its_position() {
    let text = S2.replace("ω -> 1 * ω#ω", "ω -> 1 * ω#x");
    let e = parse(&text).unwrap_err();
    assert_eq!((e.line, e.column), (13, 12));
    assert!(e.message.contains("unknown label 'x'"), "{}", e);
}

#[test]
fn degree_inconsistency_names_the_entry() {
    let text = S2.replace("ω -> 1 * ω#ω", "ω -> 1 * 1#ω");
    let e = parse(&text).unwrap_err();
    assert_eq!(e.line, 13);
    assert!(e.message.contains("'ω -> 1#ω'") && e.message.contains("map lambda"), "{}", e);
}

#[test]
fn malformed_scalar_is_reported() {
    let e = parse(&S2.replace("1,ω -> 1 * ω", "1,ω -> 1/0 * ω")).unwrap_err();
    assert_eq!((e.line, e.column), (9, 8));
    assert!(e.message.contains("malformed scalar '1/0'"));
    let e = parse(&S2.replace("ω -> 1 * R", "ω -> two * R")).unwrap_err();
    assert!(e.message.contains("malformed scalar 'two'"));
}

#[test]
fn structural_errors() {
    let cases = [
        (S2.replace("map mu degree 0:", "map nu degree 0:"), "unknown map 'nu'"),
        (S2.replace("ω 2\n", "ω 2\nω 4\n"), "duplicate label 'ω'"),
        (S2.replace("1,1 -> 1 * 1", "1 -> 1 * 1"), "has 1 tensor factors, expected 2"),
        (S2.replace("ω -> 1 * R", "ω -> 1 * 1"), "the target of eps is R"),
        (S2.replace("field Q", "field Fp 6"), "not a supported prime"),
        (format!("{}map zipper degree 0:\n", S2), "needs the open: sector"),
        (S2.replace("module:\n", ""), "outside any section"),
        (S2.replace("1 * ω#1", "1 * ω#1 +"), "dangling sign"),
    ];
    for (text, needle) in cases {
        let e = parse(&text).unwrap_err();
        assert!(e.message.contains(needle), "expected '{}', got '{}'", needle, e);
    }
}

#[test]
fn comments_blank_lines_and_zero_images() {
    let text = S2.replace("eta:\n", "\n# unit below\neta:\n").replace("ω,1 -> 1 * ω", "ω,1 -> 1 * ω\nω,ω -> 0");
    assert_eq!(parse(&text).unwrap(), parse(S2).unwrap());
}

#[test]
fn missing_maps_surface_when_a_structure_is_requested() {
    let doc = parse(&S2.replace("map lambda degree 2:\n1 -> 1 * 1#ω + 1 * ω#1\nω -> 1 * ω#ω\n", "")).unwrap();
    assert!(doc.closed.lambda.is_none());
    assert!(doc.structure().unwrap_err().to_string().contains("missing map lambda"));
}
