use rand_chacha::ChaCha8Rng;

use super::{
    disjoint, first_hit, first_in_range, run_sweep, uniform, verdict, AxiomReport, CheckOptions, Cost, Coverage,
    Fam, Mode, Verdict, QUARTIC_EXHAUSTIVE_LIMIT,
};
use crate::error::Result;
use crate::family::SubspaceFamily;
use crate::lattice::Lattice;

/// Which form of the fourth independence axiom to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependenceVariant {
    I4,
    I4p,
    I4pp,
}

impl IndependenceVariant {
    pub fn name(self) -> &'static str {
        match self {
            IndependenceVariant::I4 => "I4",
            IndependenceVariant::I4p => "I4'",
            IndependenceVariant::I4pp => "I4''",
        }
    }
}

pub fn check_independence(
    family: &SubspaceFamily,
    variant: IndependenceVariant,
    opts: &CheckOptions,
) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(independence(&lat, family.flags(&lat)?, variant, opts))
}

pub fn check_bases(family: &SubspaceFamily, opts: &CheckOptions) -> Result<AxiomReport> {
    let lat = family.lattice()?;
    Ok(bases(&lat, family.flags(&lat)?, opts))
}

/// Draws a random element of `v`, or `usize::MAX` when it is empty.
fn pick(rng: &mut ChaCha8Rng, v: &[usize]) -> usize {
    if v.is_empty() {
        usize::MAX
    } else {
        v[uniform(rng, v.len())]
    }
}

/// Line sets {x : x ⊄ A, A + x ∈ family} per position.
fn extension_lines(f: &Fam) -> Vec<Vec<u64>> {
    let lat = f.lat;
    let w = lat.bits(0).len();
    (0..lat.len())
        .map(|a| {
            let mut v = vec![0u64; w];
            for x in 0..lat.lines().len() {
                if !lat.has_line(a, x) && f.has(lat.join_line(a, x)) {
                    v[x / 64] |= 1 << (x % 64);
                }
            }
            v
        })
        .collect()
}

fn nonempty(lat: &Lattice, f: &Fam, axiom: &str) -> Verdict {
    let found = f.members.is_empty().then(Vec::new);
    verdict(lat, axiom, &[], found, Coverage::Exhaustive, "the family is empty")
}

pub(crate) fn independence(
    lat: &Lattice,
    flags: Vec<bool>,
    variant: IndependenceVariant,
    opts: &CheckOptions,
) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("independence", Some(variant.name()));
    report.push(nonempty(lat, &f, "I1"));

    let above = f.member_above();
    let found = (0..lat.len())
        .find(|&i| !f.has(i) && above[i])
        .map(|i| vec![i, *f.members.iter().find(|&&j| lat.le(i, j)).unwrap()]);
    report.push(verdict(lat, "I2", &["I", "J"], found, Coverage::Exhaustive, "I ⊆ J ∈ family but I ∉ family"));

    let ext = extension_lines(&f);
    let found = first_hit(&f.members, |i| {
        f.members
            .iter()
            .find(|&&j| lat.dim(i) < lat.dim(j) && disjoint(lat.bits(j), &ext[i]))
            .map(|&j| vec![i, j])
    });
    report.push(verdict(lat, "I3", &["I", "J"], found, Coverage::Exhaustive, "no x ⊆ J, x ⊄ I with I+x in the family"));

    let md = f.max_dim_below();
    let substitute = variant == IndependenceVariant::I4
        && opts.mode == Mode::Auto
        && lat.len() > QUARTIC_EXHAUSTIVE_LIMIT;
    let v = if substitute {
        let mut v = i4pp(&f, &md);
        v.axiom = "I4".into();
        v.via = Some("I4''".into());
        v
    } else {
        match variant {
            IndependenceVariant::I4 => i4(&f, &md, opts),
            IndependenceVariant::I4p => i4p(&f, &md, opts),
            IndependenceVariant::I4pp => i4pp(&f, &md),
        }
    };
    report.push(v);
    report
}

fn all_max_sets(f: &Fam, md: &[i32]) -> Vec<Vec<usize>> {
    (0..f.lat.len()).map(|a| f.max_sets(md, a)).collect()
}

fn i4(f: &Fam, md: &[i32], opts: &CheckOptions) -> Verdict {
    let lat = f.lat;
    let n = lat.len();
    let cov = opts.sweep(Cost::Quartic, lat);
    let check = |t: &[usize]| {
        if t.contains(&usize::MAX) {
            return None;
        }
        (md[lat.join(t[2], t[3])] != md[lat.join(t[0], t[1])]).then(|| t.to_vec())
    };
    let found = run_sweep(
        cov,
        || {
            let max = all_max_sets(f, md);
            first_in_range(0..n, |a| {
                (0..n).find_map(|b| {
                    let target = md[lat.join(a, b)];
                    max[a].iter().find_map(|&i| {
                        max[b].iter().find(|&&j| md[lat.join(i, j)] != target).map(|&j| vec![a, b, i, j])
                    })
                })
            })
        },
        |rng| {
            let (a, b) = (uniform(rng, n), uniform(rng, n));
            let i = pick(rng, &f.max_sets(md, a));
            let j = pick(rng, &f.max_sets(md, b));
            vec![a, b, i, j]
        },
        check,
    );
    verdict(lat, "I4", &["A", "B", "I", "J"], found, cov, "no maximal member of A+B lies in I+J")
}

fn i4p(f: &Fam, md: &[i32], opts: &CheckOptions) -> Verdict {
    let lat = f.lat;
    let n = lat.len();
    let cov = opts.sweep(Cost::Quartic, lat);
    let check = |t: &[usize]| {
        if t.contains(&usize::MAX) {
            return None;
        }
        (md[lat.join(t[1], t[2])] != md[lat.join(t[0], t[2])]).then(|| t.to_vec())
    };
    let found = run_sweep(
        cov,
        || {
            first_in_range(0..n, |a| {
                f.max_sets(md, a).into_iter().find_map(|i| {
                    (0..n).find(|&b| md[lat.join(i, b)] != md[lat.join(a, b)]).map(|b| vec![a, i, b])
                })
            })
        },
        |rng| {
            let a = uniform(rng, n);
            let i = pick(rng, &f.max_sets(md, a));
            vec![a, i, uniform(rng, n)]
        },
        check,
    );
    verdict(lat, "I4'", &["A", "I", "B"], found, cov, "no maximal member of A+B lies in I+B")
}

fn i4pp(f: &Fam, md: &[i32]) -> Verdict {
    let lat = f.lat;
    let l = lat.lines().len();
    let found = first_in_range(0..lat.len(), |a| {
        f.max_sets(md, a).into_iter().find_map(|i| {
            (0..l)
                .find(|&x| md[lat.join_line(i, x)] != md[lat.join_line(a, x)])
                .map(|x| vec![a, i, lat.lines()[x] as usize])
        })
    });
    verdict(lat, "I4''", &["A", "I", "x"], found, Coverage::Exhaustive, "no maximal member of A+x lies in I+x")
}

pub(crate) fn bases(lat: &Lattice, flags: Vec<bool>, opts: &CheckOptions) -> AxiomReport {
    let f = Fam::new(lat, flags);
    let mut report = AxiomReport::new("bases", None);
    report.push(nonempty(lat, &f, "B1"));

    let found = first_hit(&f.members, |b1| {
        f.members.iter().find(|&&b2| b2 != b1 && lat.le(b1, b2)).map(|&b2| vec![b1, b2])
    });
    report.push(verdict(lat, "B2", &["B1", "B2"], found, Coverage::Exhaustive, "B1 ⊊ B2"));

    let ext = extension_lines(&f);
    let found = first_hit(&f.members, |b1| {
        f.members.iter().find_map(|&b2| {
            let m = lat.meet(b1, b2);
            lat.lower_covers(b1)
                .iter()
                .map(|&a| a as usize)
                .find(|&a| {
                    lat.le(m, a)
                        && disjoint(lat.bits(b2), &ext[a])
                        && !(f.has(a) && !disjoint(lat.bits(b2), lat.bits(a)))
                })
                .map(|a| vec![b1, b2, a])
        })
    });
    report.push(verdict(lat, "B3", &["B1", "B2", "A"], found, Coverage::Exhaustive, "no y ⊆ B2 with A+y a basis"));

    report.push(b4(&f, opts));
    report
}

/// Dimension-maximal intersections of members with `x`, ascending.
fn max_intersections(f: &Fam, x: usize) -> Vec<usize> {
    let lat = f.lat;
    let mut meets: Vec<usize> = f.members.iter().map(|&b| lat.meet(b, x)).collect();
    let top = meets.iter().map(|&m| lat.dim(m)).max();
    meets.retain(|&m| Some(lat.dim(m)) == top);
    meets.sort_unstable();
    meets.dedup();
    meets
}

fn b4(f: &Fam, opts: &CheckOptions) -> Verdict {
    let lat = f.lat;
    let n = lat.len();
    let cov = opts.sweep(Cost::Quartic, lat);
    let good = |t: &[usize], s: &[usize]| s.iter().any(|&k| lat.le(k, lat.join(t[2], t[3])));
    let found = run_sweep(
        cov,
        || {
            let t: Vec<Vec<usize>> = (0..n).map(|x| max_intersections(f, x)).collect();
            first_in_range(0..n, |u| {
                (0..n).find_map(|v| {
                    let s = &t[lat.join(u, v)];
                    t[u].iter().find_map(|&i| {
                        t[v].iter().find(|&&j| !good(&[u, v, i, j], s)).map(|&j| vec![u, v, i, j])
                    })
                })
            })
        },
        |rng| {
            let (u, v) = (uniform(rng, n), uniform(rng, n));
            let i = pick(rng, &max_intersections(f, u));
            let j = pick(rng, &max_intersections(f, v));
            vec![u, v, i, j]
        },
        |t: &[usize]| {
            if t.contains(&usize::MAX) {
                return None;
            }
            (!good(t, &max_intersections(f, lat.join(t[0], t[1])))).then(|| t.to_vec())
        },
    );
    verdict(lat, "B4", &["U", "V", "I", "J"], found, cov, "no maximal intersection with U+V lies in I+J")
}
