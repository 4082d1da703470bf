use kummer_core::algebra::{rat, series_at};
use kummer_core::classify::{classify_text, render_report, verify_report, ClassificationReport, Format};
use kummer_core::galois::{apply_to_series, series_solutions};
use kummer_core::{verify_identities, ProjectiveStructure};

const CORPUS: &[&str] = &[
    "0",
    "-4/x^2",
    "-2",
    "-2*(1+x^2)",
    "-2*x",
    "3/(8*x^2) + 4/(9*(x-1)^2) - 3/(8*x*(x-1))",
    "-2*(1+4/x+6/x^2)",
    "1/(x*(x-1))",
];

#[test]
fn reports_survive_json_and_reverify() {
    for text in CORPUS {
        let report = classify_text(text, "x").unwrap();
        let json = render_report(&report, Format::Json);
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report, "{text}");
        let structure = ProjectiveStructure::new(back.input.parse().unwrap()).unwrap();
        verify_report(&back, &structure).unwrap();
    }
}

#[test]
fn classification_ignores_the_variable_name() {
    for text in CORPUS {
        let renamed = text.replace('x', "lambda");
        assert_eq!(
            classify_text(&renamed, "lambda").unwrap(),
            classify_text(text, "x").unwrap(),
            "{text}"
        );
    }
}

#[test]
fn text_reports_are_deterministic() {
    for text in CORPUS {
        let once = render_report(&classify_text(text, "x").unwrap(), Format::Text);
        let twice = render_report(&classify_text(text, "x").unwrap(), Format::Text);
        assert_eq!(once, twice);
        assert!(once.starts_with("input: "));
    }
}

#[test]
fn rational_symmetric_square_matches_series() {
    let order = 30;
    for text in ["0", "-4/x^2"] {
        let report = classify_text(text, "x").unwrap();
        let basis = report.rational_sym2_basis.expect("trivial image");
        let structure = ProjectiveStructure::new(report.input.parse().unwrap()).unwrap();
        let lie = structure.lie_operator();
        let point = rat(1, 1);
        let fundamental = series_solutions(&lie, &point, order).unwrap();
        for b in &basis {
            let taylor = series_at(b, &point, order).unwrap();
            assert!(fundamental.spans(&taylor), "{b} for R = {text}");
            let residual = apply_to_series(&lie, &point, &taylor, order - 3).unwrap();
            assert!(residual.iter().all(|c| *c == rat(0, 1)));
        }
    }
}

#[test]
fn identity_suite_passes() {
    let suite = verify_identities();
    assert!(suite.all_passed(), "{:?}", suite.results);
}
