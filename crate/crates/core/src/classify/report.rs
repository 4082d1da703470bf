use serde::{Deserialize, Serialize};

use crate::algebra::{rational_poles, RatFunc};
use crate::error::{Error, Result};
use crate::galois::{analyze, Finiteness, GaloisTag};
use crate::groupoid::{AffineStructure, LinearODE, ProjectiveStructure};

/// Image of the Galois group in `PSL₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjectiveImage {
    #[serde(rename = "trivial")]
    Trivial,
    #[serde(rename = "finite_cyclic")]
    FiniteCyclic,
    #[serde(rename = "infinite_torus_image")]
    InfiniteTorusImage,
    #[serde(rename = "borel_image")]
    BorelImage,
    #[serde(rename = "dihedral_image")]
    DihedralImage,
    #[serde(rename = "a4")]
    A4,
    #[serde(rename = "s4")]
    S4,
    #[serde(rename = "a5")]
    A5,
    #[serde(rename = "full_psl2")]
    FullPSL2,
}

impl ProjectiveImage {
    pub fn of(tag: GaloisTag) -> Self {
        match tag {
            GaloisTag::ProjectivelyTrivial => ProjectiveImage::Trivial,
            GaloisTag::TorusFinite => ProjectiveImage::FiniteCyclic,
            GaloisTag::TorusInfinite => ProjectiveImage::InfiniteTorusImage,
            GaloisTag::BorelFull => ProjectiveImage::BorelImage,
            GaloisTag::Dihedral(_) => ProjectiveImage::DihedralImage,
            GaloisTag::Tetrahedral => ProjectiveImage::A4,
            GaloisTag::Octahedral => ProjectiveImage::S4,
            GaloisTag::Icosahedral => ProjectiveImage::A5,
            GaloisTag::FullSL2 => ProjectiveImage::FullPSL2,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(
            self,
            ProjectiveImage::Trivial
                | ProjectiveImage::FiniteCyclic
                | ProjectiveImage::A4
                | ProjectiveImage::S4
                | ProjectiveImage::A5
        )
    }

    pub fn describe(&self) -> &'static str {
        match self {
            ProjectiveImage::Trivial => "trivial",
            ProjectiveImage::FiniteCyclic => "finite cyclic",
            ProjectiveImage::InfiniteTorusImage => "infinite torus",
            ProjectiveImage::BorelImage => "Borel subgroup",
            ProjectiveImage::DihedralImage => "dihedral",
            ProjectiveImage::A4 => "tetrahedral (A4)",
            ProjectiveImage::S4 => "octahedral (S4)",
            ProjectiveImage::A5 => "icosahedral (A5)",
            ProjectiveImage::FullPSL2 => "PSL2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::Undetermined => "Undetermined",
        }
    }
}

/// Affine reduction attached to a rational Riccati solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWitness {
    pub u: RatFunc,
    pub r: RatFunc,
    pub operator: LinearODE,
}

/// Verdicts on the Kummer groupoid of `S(τ) = R`, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input: String,
    pub galois_class: GaloisTag,
    pub projective_image: ProjectiveImage,
    pub integrable_pullback: bool,
    pub integrable_isogeny: Verdict,
    pub affine_subgroupoid: Option<AffineWitness>,
    pub minimal: Verdict,
    pub n_minimal_all_n: bool,
    pub product_rigidity: bool,
    pub acts_diagonally: bool,
    pub rational_sym2_basis: Option<Vec<RatFunc>>,
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

/// Classifies `R`; every witness is re-verified before the report is returned.
pub fn classify(r: &RatFunc) -> Result<ClassificationReport> {
    let structure = ProjectiveStructure::new(r.clone())?;
    let analysis = analyze(&structure)?;
    let tag = analysis.class.tag;
    let image = ProjectiveImage::of(tag);

    let rational_sym2_basis = (analysis.sym2_basis.len() == 3).then(|| analysis.sym2_basis.clone());
    let integrable_pullback = image == ProjectiveImage::Trivial;
    let integrable_isogeny = match tag {
        GaloisTag::Dihedral(Finiteness::Undetermined) => Verdict::Undetermined,
        GaloisTag::Dihedral(Finiteness::Finite) => Verdict::Yes,
        _ if image.is_finite() => Verdict::Yes,
        _ => Verdict::No,
    };
    let solutions = &analysis.riccati.solutions;
    let rational_poles_only = solutions.iter().find(|u| rational_poles(u, -1).is_ok());
    let affine_subgroupoid = match rational_poles_only.or(solutions.first()) {
        Some(u) => {
            let affine = AffineStructure::from_riccati(u)?;
            Some(AffineWitness {
                u: u.clone(),
                r: affine.connection().clone(),
                operator: affine.affine_operator(),
            })
        }
        None => None,
    };
    let minimal = if tag.lie_irreducible() {
        Verdict::Yes
    } else if matches!(tag, GaloisTag::Dihedral(_)) {
        Verdict::Undetermined
    } else {
        Verdict::No
    };
    let report = ClassificationReport {
        input: r.to_string(),
        galois_class: tag,
        projective_image: image,
        integrable_pullback,
        integrable_isogeny,
        affine_subgroupoid,
        minimal,
        n_minimal_all_n: minimal == Verdict::Yes,
        product_rigidity: image != ProjectiveImage::Trivial,
        acts_diagonally: integrable_pullback,
        rational_sym2_basis,
    };
    verify_report(&report, &structure)?;
    Ok(report)
}

/// Re-checks every witness and coherence rule of a report against `R`.
pub fn verify_report(rep: &ClassificationReport, structure: &ProjectiveStructure) -> Result<()> {
    let lie = structure.lie_operator();
    if let Some(basis) = &rep.rational_sym2_basis {
        check(basis.len() == 3, "symmetric-square basis has three entries")?;
        check(
            crate::algebra::rational_kernel(&basis.iter().map(|b| vec![b.clone()]).collect::<Vec<_>>()).is_empty(),
            "symmetric-square basis is independent",
        )?;
        for b in basis {
            check(lie.apply(b).is_zero(), "symmetric-square basis solves the Lie operator")?;
        }
    }
    check(
        rep.integrable_pullback == rep.rational_sym2_basis.is_some(),
        "pullback verdict matches the rational symmetric square",
    )?;
    check(
        rep.integrable_pullback == (rep.projective_image == ProjectiveImage::Trivial),
        "pullback verdict matches the projective image",
    )?;
    if let Some(w) = &rep.affine_subgroupoid {
        let half_r = structure.curvature().scale(&crate::algebra::rat(1, 2));
        let residual = &(&w.u.derivative() + &(&w.u * &w.u)) + &half_r;
        check(residual.is_zero(), "affine witness solves the Riccati equation")?;
        let affine = AffineStructure::new(w.r.clone())?;
        check(w.r == w.u.scale(&crate::algebra::int(-2)), "affine witness has r = -2u")?;
        check(
            affine.to_projective().curvature() == structure.curvature(),
            "affine reduction recovers R = r' - r^2/2",
        )?;
        check(w.operator == affine.affine_operator(), "affine operator matches r")?;
    }
    check(
        !rep.integrable_pullback || rep.integrable_isogeny == Verdict::Yes,
        "integrable pullback implies integrable isogeny",
    )?;
    check(
        rep.minimal != Verdict::Yes || rep.affine_subgroupoid.is_none(),
        "minimal structures carry no affine reduction",
    )?;
    check(
        rep.acts_diagonally == rep.integrable_pullback,
        "diagonal action matches pullback",
    )?;
    check(
        rep.product_rigidity == (rep.projective_image != ProjectiveImage::Trivial),
        "product rigidity matches the projective image",
    )?;
    check(
        rep.minimal == Verdict::Yes
            || rep.affine_subgroupoid.is_some()
            || rep.projective_image == ProjectiveImage::Trivial
            || rep.minimal == Verdict::Undetermined,
        "non-minimality carries a witness",
    )?;
    Ok(())
}
