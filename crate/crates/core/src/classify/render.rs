use std::str::FromStr;

use super::{ClassificationReport, ProjectiveImage, Verdict};
use crate::galois::GaloisTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected text or json)")),
        }
    }
}

pub fn render_report(rep: &ClassificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rep).expect("report serializes"),
        Format::Text => render_text(rep),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn galois_reason(tag: GaloisTag) -> &'static str {
    match tag {
        GaloisTag::ProjectivelyTrivial => "all solutions of the symmetric square are rational",
        GaloisTag::TorusFinite => "two rational Riccati solutions with algebraic exponentials",
        GaloisTag::TorusInfinite => "two rational Riccati solutions, transcendental exponentials",
        GaloisTag::BorelFull => "exactly one rational Riccati solution",
        GaloisTag::Dihedral(_) => "quadratic algebraic Riccati solution, no rational one",
        GaloisTag::Tetrahedral => "algebraic Riccati solution of degree 4, none of lower degree",
        GaloisTag::Octahedral => "algebraic Riccati solution of degree 6, none of lower degree",
        GaloisTag::Icosahedral => "algebraic Riccati solution of degree 12 only",
        GaloisTag::FullSL2 => "no Liouvillian solution: every Kovacic case fails",
    }
}

fn minimal_line(rep: &ClassificationReport) -> String {
    let why = match rep.minimal {
        Verdict::Yes => "Lie-irreducible Galois image; Lie-irreducibility criterion".to_string(),
        Verdict::Undetermined => "dihedral image: the invariant Cartan line suggests a subgroupoid, \
             but the Riccati solutions are algebraic of degree 2 and only reduce the structure on a double cover"
            .to_string(),
        Verdict::No => match (&rep.affine_subgroupoid, rep.projective_image) {
            (_, ProjectiveImage::Trivial) => {
                "trivial projective image; every algebraic subgroup of the structure group pulls back to a subgroupoid"
                    .to_string()
            }
            (Some(w), _) => format!("rational Riccati solution u = {}; affine reduction r = {}", w.u, w.r),
            (None, _) => "invariant subalgebra of the Galois image".to_string(),
        },
    };
    format!("minimal: {} ({why})", rep.minimal.label())
}

fn render_text(rep: &ClassificationReport) -> String {
    let mut s = String::new();
    let mut line = |t: String| {
        s.push_str(&t);
        s.push('\n');
    };
    line(format!("input: R(x) = {}", rep.input));
    line(format!(
        "galois class: {} ({})",
        rep.galois_class,
        galois_reason(rep.galois_class)
    ));
    line(format!("projective image: {}", rep.projective_image.describe()));
    line(format!(
        "integrable pullback: {} (pullback criterion: projective image trivial iff the symmetric square has a rational basis)",
        yes_no(rep.integrable_pullback)
    ));
    line(format!(
        "integrable isogeny: {} (isogeny criterion: Galois group finite)",
        rep.integrable_isogeny.label()
    ));
    match &rep.affine_subgroupoid {
        Some(w) => line(format!(
            "affine subgroupoid: u = {}, r = {}, operator {} = 0",
            w.u, w.r, w.operator
        )),
        None => line("affine subgroupoid: none".to_string()),
    }
    line(minimal_line(rep));
    line(format!(
        "n-minimal for all n: {} (Lie-irreducibility criterion applied to Cartesian powers)",
        yes_no(rep.n_minimal_all_n)
    ));
    line(format!(
        "product rigidity: {} (simple Lie algebra with non-trivial Galois group)",
        yes_no(rep.product_rigidity)
    ));
    line(format!(
        "acts diagonally: {} (diagonal action iff integrable pullback)",
        yes_no(rep.acts_diagonally)
    ));
    match &rep.rational_sym2_basis {
        Some(b) => {
            let items: Vec<String> = b.iter().map(ToString::to_string).collect();
            line(format!("rational sym2 basis: {{{}}}", items.join(", ")));
        }
        None => line("rational sym2 basis: none".to_string()),
    }
    s
}
