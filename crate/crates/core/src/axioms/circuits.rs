//! Circuits and dependent spaces.

use super::{first_hit, least_common_line, verdict, AxiomReport, CheckOptions, Coverage, Fam};
use crate::error::Result;
use crate::family::SubspaceFamily;
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitVariant {
    C3,
    C3p,
    C3bar,
}

impl CircuitVariant {
    pub fn name(self) -> &'static str {
        match self {
            CircuitVariant::C3 => "C3",
            CircuitVariant::C3p => "C3'",
            CircuitVariant::C3bar => "C3bar",
        }
    }
}

pub fn check_circuits(family: &SubspaceFamily, variant: CircuitVariant, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(circuits(&lat, family.flags(&lat)?, variant, opts))
}

pub fn check_dependence(family: &SubspaceFamily, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(dependence(&lat, family.flags(&lat)?, opts))
}

/// Sum of the members inside each position ({0} if none).
fn sum_below(f: &Fam) -> Vec<usize> {
    let lat = f.lat;
    let mut sb = vec![lat.bottom(); lat.len()];
    for w in 0..lat.len() {
        sb[w] = if f.has(w) {
            w
        } else {
            lat.lower_covers(w).iter().fold(lat.bottom(), |acc, &c| lat.join(acc, sb[c as usize]))
        };
    }
    sb
}

pub(crate) fn circuits(lat: &Lattice, flags: Vec<bool>, variant: CircuitVariant, _opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("circuits", Some(variant.name()));
    let found = f.has(lat.bottom()).then(|| vec![lat.bottom()]);
    report.push(verdict(lat, "C1", &["C"], found, Coverage::Exhaustive, "{0} is a member"));

    let found = first_hit(&f.members, |a| {
        f.members.iter().find(|&&b| b != a && lat.le(a, b)).map(|&b| vec![a, b])
    });
    report.push(verdict(lat, "C2", &["C1", "C2"], found, Coverage::Exhaustive, "C1 ⊊ C2"));

    match variant {
        CircuitVariant::C3 => {
            let below = f.member_below();
            let found = first_hit(&f.members, |c1| {
                f.members.iter().filter(|&&c2| c2 != c1).find_map(|&c2| {
                    let s = lat.join(c1, c2);
                    lat.coatoms().find(|&x| !below[lat.meet(s, x)]).map(|x| vec![c1, c2, x])
                })
            });
            report.push(verdict(
                lat,
                "C3",
                &["C1", "C2", "X"],
                found,
                Coverage::Exhaustive,
                "no member inside (C1+C2) ∩ X",
            ));
        }
        CircuitVariant::C3p => {
            let sb = sum_below(&f);
            let found = first_hit(&f.members, |c1| {
                f.members.iter().filter(|&&c2| c2 != c1).find_map(|&c2| {
                    let s = lat.join(c1, c2);
                    lat.coatoms().filter(|&x| !lat.le(c1, x) && !lat.le(c2, x)).find_map(|x| {
                        let floor = lat.join(c1, sb[lat.meet(s, x)]);
                        if lat.le(c2, floor) {
                            return None;
                        }
                        lat.coatoms()
                            .find(|&y| lat.le(floor, y) && !lat.le(c2, y))
                            .map(|y| vec![c1, c2, x, y])
                    })
                })
            });
            report.push(verdict(
                lat,
                "C3'",
                &["C1", "C2", "X", "Y"],
                found,
                Coverage::Exhaustive,
                "every member inside (C1+C2) ∩ X lies in Y",
            ));
        }
        CircuitVariant::C3bar => {
            let common = f.and_over(false);
            let found = first_hit(&f.members, |c1| {
                f.members.iter().filter(|&&c2| c2 != c1).find_map(|&c2| {
                    let m = lat.meet(c1, c2);
                    least_common_line(lat.bits(m), &common[lat.join(c1, c2)], None)
                        .map(|x| vec![c1, c2, lat.lines()[x] as usize])
                })
            });
            report.push(verdict(
                lat,
                "C3bar",
                &["C1", "C2", "x"],
                found,
                Coverage::Exhaustive,
                "every member inside C1+C2 contains x",
            ));
        }
    }
    report
}

pub(crate) fn dependence(lat: &Lattice, flags: Vec<bool>, _opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("dependence", None);
    let found = f.has(lat.bottom()).then(|| vec![lat.bottom()]);
    report.push(verdict(lat, "D1", &["D"], found, Coverage::Exhaustive, "{0} is a member"));

    let found = first_hit(&f.members, |d1| {
        (d1..lat.len()).find(|&d2| !f.has(d2) && lat.le(d1, d2)).map(|d2| vec![d1, d2])
    });
    report.push(verdict(lat, "D2", &["D1", "D2"], found, Coverage::Exhaustive, "D1 ⊆ D2 but D2 ∉ family"));

    let found = first_hit(&f.members, |d1| {
        f.members.iter().filter(|&&d2| !f.has(lat.meet(d1, d2))).find_map(|&d2| {
            lat.lower_covers(lat.join(d1, d2))
                .iter()
                .find(|&&d| !f.has(d as usize))
                .map(|&d| vec![d1, d2, d as usize])
        })
    });
    report.push(verdict(
        lat,
        "D3",
        &["D1", "D2", "D"],
        found,
        Coverage::Exhaustive,
        "D1 ∩ D2 ∉ family and D has codimension one in D1+D2 but D ∉ family",
    ));
    report
}
