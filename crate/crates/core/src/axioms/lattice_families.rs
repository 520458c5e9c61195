//! Flats, hyperplanes and open spaces.

use super::{first_hit, least_common_line, verdict, AxiomReport, CheckOptions, Coverage, Fam};
use crate::error::Result;
use crate::family::SubspaceFamily;
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperplaneVariant {
    H3,
    H3p,
}

impl HyperplaneVariant {
    pub fn name(self) -> &'static str {
        match self {
            HyperplaneVariant::H3 => "H3",
            HyperplaneVariant::H3p => "H3'",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpenVariant {
    O3,
    O3bar,
}

impl OpenVariant {
    pub fn name(self) -> &'static str {
        match self {
            OpenVariant::O3 => "O3",
            OpenVariant::O3bar => "O3bar",
        }
    }
}

pub fn check_flats(family: &SubspaceFamily, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(flats(&lat, family.flags(&lat)?, opts))
}

pub fn check_hyperplanes(
    family: &SubspaceFamily,
    variant: HyperplaneVariant,
    opts: &CheckOptions,
) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(hyperplanes(&lat, family.flags(&lat)?, variant, opts))
}

pub fn check_open(family: &SubspaceFamily, variant: OpenVariant, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(open(&lat, family.flags(&lat)?, variant, opts))
}

pub(crate) fn flats(lat: &Lattice, flags: Vec<bool>, _opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("flats", None);
    let found = (!f.has(lat.top())).then(Vec::new);
    report.push(verdict(lat, "F1", &[], found, Coverage::Exhaustive, "E is not a member"));

    let found = first_hit(&f.members, |a| {
        f.members.iter().find(|&&b| !f.has(lat.meet(a, b))).map(|&b| vec![a, b])
    });
    report.push(verdict(lat, "F2", &["F1", "F2"], found, Coverage::Exhaustive, "F1 ∩ F2 is not a member"));

    let found = first_hit(&f.members, |a| {
        let covers = f.covers_above(a);
        (0..lat.lines().len())
            .find(|&x| !lat.has_line(a, x) && covers.iter().filter(|&&c| lat.has_line(c, x)).count() != 1)
            .map(|x| vec![a, lat.lines()[x] as usize])
    });
    report.push(verdict(lat, "F3", &["F", "x"], found, Coverage::Exhaustive, "x lies in no cover of F or in several"));
    report
}

pub(crate) fn hyperplanes(
    lat: &Lattice,
    flags: Vec<bool>,
    variant: HyperplaneVariant,
    _opts: &CheckOptions,
) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("hyperplanes", Some(variant.name()));
    let found = f.has(lat.top()).then(|| vec![lat.top()]);
    report.push(verdict(lat, "H1", &["E"], found, Coverage::Exhaustive, "E is a member"));

    let found = first_hit(&f.members, |a| {
        f.members.iter().find(|&&b| b != a && lat.le(a, b)).map(|&b| vec![a, b])
    });
    report.push(verdict(lat, "H2", &["H1", "H2"], found, Coverage::Exhaustive, "H1 ⊊ H2"));

    let l = lat.lines().len();
    let line = |x: usize| lat.lines()[x] as usize;
    match variant {
        HyperplaneVariant::H3 => {
            let above = f.member_above();
            let found = first_hit(&f.members, |h1| {
                f.members.iter().filter(|&&h2| h2 != h1).find_map(|&h2| {
                    let m = lat.meet(h1, h2);
                    (0..l).find(|&x| !above[lat.join_line(m, x)]).map(|x| vec![h1, h2, line(x)])
                })
            });
            report.push(verdict(lat, "H3", &["H1", "H2", "x"], found, Coverage::Exhaustive, "no member contains (H1∩H2)+x"));
        }
        HyperplaneVariant::H3p => {
            let common = f.and_over(true);
            let found = first_hit(&f.members, |h1| {
                f.members.iter().filter(|&&h2| h2 != h1).find_map(|&h2| {
                    let m = lat.meet(h1, h2);
                    (0..l).filter(|&x| !lat.has_line(h1, x) && !lat.has_line(h2, x)).find_map(|x| {
                        let k = lat.join_line(m, x);
                        least_common_line(lat.bits(h1), &common[k], Some(lat.bits(h2)))
                            .map(|y| vec![h1, h2, line(x), line(y)])
                    })
                })
            });
            report.push(verdict(
                lat,
                "H3'",
                &["H1", "H2", "x", "y"],
                found,
                Coverage::Exhaustive,
                "every member containing (H1∩H2)+x contains y",
            ));
        }
    }
    report
}

pub(crate) fn open(lat: &Lattice, flags: Vec<bool>, variant: OpenVariant, _opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("open", Some(variant.name()));
    let found = (!f.has(lat.bottom())).then(Vec::new);
    report.push(verdict(lat, "O1", &[], found, Coverage::Exhaustive, "{0} is not a member"));

    let found = first_hit(&f.members, |a| {
        f.members.iter().find(|&&b| !f.has(lat.join(a, b))).map(|&b| vec![a, b])
    });
    report.push(verdict(lat, "O2", &["O1", "O2"], found, Coverage::Exhaustive, "O1 + O2 is not a member"));

    match variant {
        OpenVariant::O3 => {
            let found = first_hit(&f.members, |o| {
                let covered = f.covered_below(o);
                lat.coatoms()
                    .find(|&x| !lat.le(o, x) && covered.iter().filter(|&&c| lat.le(c, x)).count() != 1)
                    .map(|x| vec![o, x])
            });
            report.push(verdict(
                lat,
                "O3",
                &["O", "X"],
                found,
                Coverage::Exhaustive,
                "X ∩ O does not hold exactly one space covered by O",
            ));
        }
        OpenVariant::O3bar => {
            let found = f
                .members
                .iter()
                .copied()
                .find(|&o| {
                    let covered = f.covered_below(o);
                    if covered.is_empty() {
                        return o != lat.bottom();
                    }
                    covered.iter().fold(lat.top(), |acc, &c| lat.meet(acc, c)) != lat.bottom()
                })
                .map(|o| vec![o]);
            report.push(verdict(
                lat,
                "O3bar",
                &["O"],
                found,
                Coverage::Exhaustive,
                "the spaces covered by O meet in a nonzero space",
            ));
        }
    }
    report
}
