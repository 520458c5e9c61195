//! Builtin matroids and counterexample families.

use crate::error::{Error, Result};
use crate::family::SubspaceFamily;
use crate::lattice::Lattice;
use crate::matroid::{FamilyKind, QMatroid};
use crate::representable::{build_spread, matroid_from_matrix, theorem_matrix};
use crate::subspace::Subspace;

pub const FIXTURE_NAMES: [&str; 6] = ["jp18-example10", "jp18-example10-circuits", "lo-prime", "m6", "m6-dual", "u45"];

#[derive(Clone, Debug)]
pub enum Fixture {
    Matroid(QMatroid),
    Family { kind: FamilyKind, family: SubspaceFamily },
}

pub fn fixture(name: &str) -> Result<Fixture> {
    Ok(match name {
        "jp18-example10" => Fixture::Family { kind: FamilyKind::Independent, family: example10_independent()? },
        "jp18-example10-circuits" => Fixture::Family { kind: FamilyKind::Circuit, family: example10_circuits()? },
        "lo-prime" => Fixture::Family { kind: FamilyKind::Open, family: lo_prime()? },
        "m6" => Fixture::Matroid(m6()?),
        "m6-dual" => Fixture::Matroid(m6()?.dual()),
        "u45" => Fixture::Matroid(QMatroid::uniform(4, 5, 2)?),
        other => return Err(Error::UnknownFixture(other.to_string())),
    })
}

/// M₆: the representable q-matroid of the 2×6 theorem matrix over GF(64).
pub fn m6() -> Result<QMatroid> {
    matroid_from_matrix(&theorem_matrix(2, 3, 2)?)
}

/// The 2-space I = ⟨1001, 0110⟩ of F₂⁴.
pub fn example10_space() -> Subspace {
    Subspace::from_strings(&["1001", "0110"], 2, 4).unwrap()
}

/// I together with all of its subspaces.
pub fn example10_independent() -> Result<SubspaceFamily> {
    SubspaceFamily::from_members(2, 4, [example10_space()])?.low()
}

/// min(opp(·)) of the family above: the twelve lines outside I.
pub fn example10_circuits() -> Result<SubspaceFamily> {
    Ok(example10_independent()?.opp()?.min())
}

/// {0}, G₁⊥, …, G₈⊥ and F₂⁶: the open spaces of M₆* without G₉⊥.
pub fn lo_prime() -> Result<SubspaceFamily> {
    let spread = build_spread(2, 3, 6)?;
    let lat = Lattice::shared(2, 6)?;
    let mut members = vec![lat.space(lat.bottom()).clone(), lat.space(lat.top()).clone()];
    members.extend(spread.elements()[..8].iter().map(Subspace::perp));
    SubspaceFamily::from_members(2, 6, members)
}
