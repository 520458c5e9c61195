use super::{first_in_range, run_sweep, uniform, verdict, AxiomReport, CheckOptions, Cost, Coverage};
use crate::matroid::ClosureMap;

pub fn check_closure(map: &ClosureMap, opts: &CheckOptions) -> AxiomReport {
    let lat = &**map.lattice();
    let cl = |a: usize| map.image_at(a);
    let n = lat.len();
    let mut report = AxiomReport::new("closure", None);

    let found = (0..n).find(|&a| !lat.le(a, cl(a))).map(|a| vec![a]);
    report.push(verdict(lat, "Cl1", &["A"], found, Coverage::Exhaustive, "A ⊄ cl(A)"));

    let cov = opts.sweep(Cost::Pairwise, lat);
    let bad2 = |a: usize, b: usize| lat.le(a, b) && !lat.le(cl(a), cl(b));
    let found = run_sweep(
        cov,
        || first_in_range(0..n, |a| (a..n).find(|&b| bad2(a, b)).map(|b| vec![a, b])),
        |rng| {
            let a = uniform(rng, n);
            vec![a, lat.join(a, uniform(rng, n))]
        },
        |t| bad2(t[0], t[1]).then(|| t.to_vec()),
    );
    report.push(verdict(lat, "Cl2", &["A", "B"], found, cov, "A ⊆ B but cl(A) ⊄ cl(B)"));

    let found = (0..n).find(|&a| cl(cl(a)) != cl(a)).map(|a| vec![a]);
    report.push(verdict(lat, "Cl3", &["A"], found, Coverage::Exhaustive, "cl(cl(A)) ≠ cl(A)"));

    let cov = opts.sweep(Cost::Pairwise, lat);
    let lines = lat.lines();
    let l = lines.len();
    let bad4 = |a: usize, x: usize, y: usize| {
        lat.has_line(cl(lat.join_line(a, x)), y)
            && !lat.has_line(cl(a), y)
            && !lat.has_line(cl(lat.join_line(a, y)), x)
    };
    let found = run_sweep(
        cov,
        || first_in_range(0..n, |a| (0..l).find_map(|x| (0..l).find(|&y| bad4(a, x, y)).map(|y| vec![a, x, y]))),
        |rng| vec![uniform(rng, n), uniform(rng, l), uniform(rng, l)],
        |t| bad4(t[0], t[1], t[2]).then(|| t.to_vec()),
    )
    .map(|t| vec![t[0], lines[t[1]] as usize, lines[t[2]] as usize]);
    report.push(verdict(lat, "Cl4", &["A", "x", "y"], found, cov, "y ⊆ cl(A+x), y ⊄ cl(A), x ⊄ cl(A+y)"));
    report
}
