//! Spanning and non-spanning spaces.

use rand_chacha::ChaCha8Rng;

use super::{
    first_hit, first_in_range, run_sweep, uniform, verdict, AxiomReport, CheckOptions, Cost, Coverage, Fam, Verdict,
};
use crate::error::Result;
use crate::family::SubspaceFamily;
use crate::lattice::Lattice;

pub fn check_spanning(family: &SubspaceFamily, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(spanning(&lat, family.flags(&lat)?, opts))
}

pub fn check_nonspanning(family: &SubspaceFamily, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(nonspanning(&lat, family.flags(&lat)?, opts))
}

pub(crate) fn spanning(lat: &Lattice, flags: Vec<bool>, opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("spanning", None);
    let found = (!f.has(lat.top())).then(Vec::new);
    report.push(verdict(lat, "S1", &[], found, Coverage::Exhaustive, "E is not a member"));

    let below = f.member_below();
    let found = (0..lat.len())
        .find(|&i| !f.has(i) && below[i])
        .map(|i| vec![i, *f.members.iter().find(|&&j| lat.le(j, i)).unwrap()]);
    report.push(verdict(lat, "S2", &["I", "J"], found, Coverage::Exhaustive, "J ⊆ I with J ∈ family but I ∉ family"));

    let found = first_hit(&f.members, |i| {
        f.members
            .iter()
            .filter(|&&j| lat.dim(j) < lat.dim(i))
            .find(|&&j| {
                !lat.lower_covers(i).iter().any(|&k| f.has(k as usize) && !lat.le(i, lat.join(k as usize, j)))
            })
            .map(|&j| vec![i, j])
    });
    report.push(verdict(
        lat,
        "S3",
        &["I", "J"],
        found,
        Coverage::Exhaustive,
        "no hyperplane X ⊇ J with I ⊄ X and I ∩ X in the family",
    ));

    report.push(s4(&f, opts));
    report
}

fn pick(rng: &mut ChaCha8Rng, v: &[usize]) -> usize {
    if v.is_empty() {
        usize::MAX
    } else {
        v[uniform(rng, v.len())]
    }
}

fn s4(f: &Fam, opts: &CheckOptions) -> Verdict {
    let lat = f.lat;
    let n = lat.len();
    let mu = f.min_dim_above();
    let cov = opts.sweep(Cost::Quartic, lat);
    let found = run_sweep(
        cov,
        || {
            let min: Vec<Vec<usize>> = (0..n).map(|a| f.min_sets(&mu, a)).collect();
            first_in_range(0..n, |a| {
                (0..n).find_map(|b| {
                    let target = mu[lat.meet(a, b)];
                    min[a].iter().find_map(|&i| {
                        min[b].iter().find(|&&j| mu[lat.meet(i, j)] != target).map(|&j| vec![a, b, i, j])
                    })
                })
            })
        },
        |rng| {
            let (a, b) = (uniform(rng, n), uniform(rng, n));
            let i = pick(rng, &f.min_sets(&mu, a));
            let j = pick(rng, &f.min_sets(&mu, b));
            vec![a, b, i, j]
        },
        |t: &[usize]| {
            if t.contains(&usize::MAX) {
                return None;
            }
            (mu[lat.meet(t[2], t[3])] != mu[lat.meet(t[0], t[1])]).then(|| t.to_vec())
        },
    );
    verdict(lat, "S4", &["A", "B", "I", "J"], found, cov, "no minimal member above A ∩ B contains I ∩ J")
}

pub(crate) fn nonspanning(lat: &Lattice, flags: Vec<bool>, _opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("nonspanning", None);
    let found = f.has(lat.top()).then(|| vec![lat.top()]);
    report.push(verdict(lat, "N1", &["E"], found, Coverage::Exhaustive, "E is a member"));

    let found = first_hit(&f.members, |n1| {
        (0..=n1).find(|&n2| !f.has(n2) && lat.le(n2, n1)).map(|n2| vec![n1, n2])
    });
    report.push(verdict(lat, "N2", &["N1", "N2"], found, Coverage::Exhaustive, "N2 ⊆ N1 but N2 ∉ family"));

    let found = first_hit(&f.members, |n1| {
        f.members.iter().filter(|&&n2| !f.has(lat.join(n1, n2))).find_map(|&n2| {
            lat.upper_covers(lat.meet(n1, n2))
                .iter()
                .find(|&&m| !f.has(m as usize))
                .map(|&m| vec![n1, n2, m as usize])
        })
    });
    report.push(verdict(
        lat,
        "N3",
        &["N1", "N2", "N"],
        found,
        Coverage::Exhaustive,
        "N1 + N2 ∉ family and N covers N1 ∩ N2 but N ∉ family",
    ));
    report
}
