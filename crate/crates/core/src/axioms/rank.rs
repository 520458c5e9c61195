use super::{first_in_range, run_sweep, uniform, verdict, AxiomReport, CheckOptions, Cost, Verdict};
use crate::lattice::Lattice;
use crate::matroid::RankTable;

/// Global (R1)-(R3), or the local one-line-at-a-time (R1′)-(R3′).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankVariant {
    Global,
    Local,
}

impl RankVariant {
    pub fn name(self) -> &'static str {
        match self {
            RankVariant::Global => "global",
            RankVariant::Local => "local",
        }
    }
}

pub fn check_rank(table: &RankTable, variant: RankVariant, opts: &CheckOptions) -> AxiomReport {
    let lat = &**table.lattice();
    let r = table.values();
    let mut report = AxiomReport::new("rank", Some(variant.name()));
    match variant {
        RankVariant::Global => {
            report.push(r1(lat, r));
            report.push(r2(lat, r, opts));
            report.push(r3(lat, r, opts));
        }
        RankVariant::Local => {
            report.push(r1_local(lat, r));
            report.push(r2_local(lat, r));
            report.push(r3_local(lat, r, opts));
        }
    }
    report
}

fn r1(lat: &Lattice, r: &[i64]) -> Verdict {
    let found = (0..lat.len()).find(|&a| r[a] < 0 || r[a] > lat.dim(a) as i64).map(|a| vec![a]);
    verdict(lat, "R1", &["A"], found, super::Coverage::Exhaustive, "r(A) outside [0, dim A]")
}

fn r2(lat: &Lattice, r: &[i64], opts: &CheckOptions) -> Verdict {
    let cov = opts.sweep(Cost::Pairwise, lat);
    let bad = |a: usize, b: usize| lat.le(a, b) && r[a] > r[b];
    let found = run_sweep(
        cov,
        || first_in_range(0..lat.len(), |a| (a..lat.len()).find(|&b| bad(a, b)).map(|b| vec![a, b])),
        |rng| {
            let a = uniform(rng, lat.len());
            vec![a, lat.join(a, uniform(rng, lat.len()))]
        },
        |t| bad(t[0], t[1]).then(|| t.to_vec()),
    );
    verdict(lat, "R2", &["A", "B"], found, cov, "A ⊆ B but r(A) > r(B)")
}

fn r3(lat: &Lattice, r: &[i64], opts: &CheckOptions) -> Verdict {
    let cov = opts.sweep(Cost::Pairwise, lat);
    let bad = |a: usize, b: usize| r[lat.join(a, b)] + r[lat.meet(a, b)] > r[a] + r[b];
    let found = run_sweep(
        cov,
        || first_in_range(0..lat.len(), |a| (0..lat.len()).find(|&b| bad(a, b)).map(|b| vec![a, b])),
        |rng| vec![uniform(rng, lat.len()), uniform(rng, lat.len())],
        |t| bad(t[0], t[1]).then(|| t.to_vec()),
    );
    verdict(lat, "R3", &["A", "B"], found, cov, "r(A+B) + r(A∩B) > r(A) + r(B)")
}

fn r1_local(lat: &Lattice, r: &[i64]) -> Verdict {
    let found = (r[lat.bottom()] != 0).then(|| vec![lat.bottom()]);
    verdict(lat, "R1'", &["A"], found, super::Coverage::Exhaustive, "r({0}) ≠ 0")
}

fn r2_local(lat: &Lattice, r: &[i64]) -> Verdict {
    let l = lat.lines().len();
    let found = first_in_range(0..lat.len(), |a| {
        (0..l)
            .find(|&x| {
                let ax = r[lat.join_line(a, x)];
                ax < r[a] || ax > r[a] + 1
            })
            .map(|x| vec![a, lat.lines()[x] as usize])
    });
    verdict(lat, "R2'", &["A", "x"], found, super::Coverage::Exhaustive, "r(A+x) ∉ {r(A), r(A)+1}")
}

fn r3_local(lat: &Lattice, r: &[i64], opts: &CheckOptions) -> Verdict {
    let cov = opts.sweep(Cost::Pairwise, lat);
    let lines = lat.lines();
    let l = lines.len();
    let bad = |a: usize, x: usize, y: usize| {
        let ax = lat.join_line(a, x);
        r[a] == r[ax] && r[a] == r[lat.join_line(a, y)] && r[lat.join_line(ax, y)] != r[a]
    };
    let found = run_sweep(
        cov,
        || {
            first_in_range(0..lat.len(), |a| {
                (0..l).find_map(|x| (0..l).find(|&y| bad(a, x, y)).map(|y| vec![a, x, y]))
            })
        },
        |rng| vec![uniform(rng, lat.len()), uniform(rng, l), uniform(rng, l)],
        |t| bad(t[0], t[1], t[2]).then(|| t.to_vec()),
    )
    .map(|t| vec![t[0], lines[t[1]] as usize, lines[t[2]] as usize]);
    verdict(lat, "R3'", &["A", "x", "y"], found, cov, "r(A) = r(A+x) = r(A+y) but r(A+x+y) ≠ r(A)")
}
