use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, RatFunc};

/// Whether a dihedral Galois group is finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Finiteness {
    Finite,
    Infinite,
    Undetermined,
}

/// Differential Galois group of `ψ″ + ½Rψ = 0` inside `SL₂`, up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaloisTag {
    ProjectivelyTrivial,
    TorusFinite,
    TorusInfinite,
    BorelFull,
    Dihedral(Finiteness),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    FullSL2,
}

impl GaloisTag {
    pub const ALL: [GaloisTag; 11] = [
        GaloisTag::ProjectivelyTrivial,
        GaloisTag::TorusFinite,
        GaloisTag::TorusInfinite,
        GaloisTag::BorelFull,
        GaloisTag::Dihedral(Finiteness::Finite),
        GaloisTag::Dihedral(Finiteness::Infinite),
        GaloisTag::Dihedral(Finiteness::Undetermined),
        GaloisTag::Tetrahedral,
        GaloisTag::Octahedral,
        GaloisTag::Icosahedral,
        GaloisTag::FullSL2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GaloisTag::ProjectivelyTrivial => "projectively_trivial",
            GaloisTag::TorusFinite => "torus_finite",
            GaloisTag::TorusInfinite => "torus_infinite",
            GaloisTag::BorelFull => "borel_full",
            GaloisTag::Dihedral(Finiteness::Finite) => "dihedral_finite",
            GaloisTag::Dihedral(Finiteness::Infinite) => "dihedral_infinite",
            GaloisTag::Dihedral(Finiteness::Undetermined) => "dihedral_undetermined",
            GaloisTag::Tetrahedral => "tetrahedral",
            GaloisTag::Octahedral => "octahedral",
            GaloisTag::Icosahedral => "icosahedral",
            GaloisTag::FullSL2 => "full_sl2",
        }
    }

    /// No proper nonzero subalgebra of `sl₂` is invariant under the image.
    pub fn lie_irreducible(&self) -> bool {
        matches!(
            self,
            GaloisTag::Tetrahedral | GaloisTag::Octahedral | GaloisTag::Icosahedral | GaloisTag::FullSL2
        )
    }
}

impl fmt::Display for GaloisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GaloisTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        GaloisTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown Galois class '{s}'"))
    }
}

impl Serialize for GaloisTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for GaloisTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Certificate attached to a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisWitness {
    /// Basis of the rational solutions of the symmetric square.
    Sym2Basis(Vec<RatFunc>),
    /// Rational solution `u` of `u′ + u² + R/2 = 0`.
    Riccati(RatFunc),
    /// `φ` such that `ω² − φω + φ′/2 + φ²/2 − r = 0` has a solution `ω = y′/y`.
    QuadraticRiccati(RatFunc),
    /// Polynomial `P` of the degree-`n` algebraic Riccati certificate.
    Primitive { n: usize, polynomial: Poly },
    /// Why each case of the algorithm failed.
    Failures(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisClass {
    pub tag: GaloisTag,
    pub witness: GaloisWitness,
}

/// `true` iff the image acts on `sl₂` with no invariant proper subalgebra.
pub fn lie_irreducible(g: &GaloisClass) -> bool {
    g.tag.lie_irreducible()
}
