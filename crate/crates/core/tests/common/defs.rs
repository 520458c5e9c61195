//! Families computed from the rank function by their textbook definitions,
//! using only `Subspace` arithmetic.

use std::collections::HashSet;

use qmatroid::{enumerate_subspaces, QMatroid, Subspace, SubspaceFamily};

/// Subspaces of `a` of dimension `k`, as images of the k-spaces of F_q^dim(a).
pub fn subspaces_of(a: &Subspace, k: usize) -> Vec<Subspace> {
    let basis = a.basis();
    let q = a.q();
    enumerate_subspaces(q, basis.len(), Some(k))
        .unwrap()
        .map(|w| {
            let gens: Vec<Vec<u32>> = w
                .basis()
                .iter()
                .map(|c| {
                    let mut v = vec![0u32; a.n()];
                    for (coef, row) in c.iter().zip(&basis) {
                        for (x, y) in v.iter_mut().zip(row) {
                            *x = (*x + coef * y) % q;
                        }
                    }
                    v
                })
                .collect();
            Subspace::canonicalize(&gens, q, a.n()).unwrap()
        })
        .collect()
}

pub fn all_spaces(m: &QMatroid) -> Vec<Subspace> {
    enumerate_subspaces(m.q(), m.n(), None).unwrap().collect()
}

fn rank(m: &QMatroid, a: &Subspace) -> u32 {
    m.rank(a).unwrap()
}

fn collect(m: &QMatroid, spaces: impl IntoIterator<Item = Subspace>) -> SubspaceFamily {
    SubspaceFamily::from_members(m.q(), m.n(), spaces).unwrap()
}

/// r*(A) = dim A − r(E) + r(A⊥).
pub fn dual_ranks(m: &QMatroid) -> Vec<(Subspace, i64)> {
    all_spaces(m)
        .into_iter()
        .map(|a| {
            let r = a.dim() as i64 - m.full_rank() as i64 + rank(m, &a.perp()) as i64;
            (a, r)
        })
        .collect()
}

pub fn independent(m: &QMatroid) -> SubspaceFamily {
    collect(m, all_spaces(m).into_iter().filter(|a| rank(m, a) as usize == a.dim()))
}

pub fn bases(m: &QMatroid) -> SubspaceFamily {
    collect(
        m,
        all_spaces(m).into_iter().filter(|a| rank(m, a) as usize == a.dim() && rank(m, a) == m.full_rank()),
    )
}

/// Dependent spaces all of whose codimension-one subspaces are independent.
pub fn circuits(m: &QMatroid) -> SubspaceFamily {
    collect(
        m,
        all_spaces(m).into_iter().filter(|a| {
            a.dim() > 0
                && (rank(m, a) as usize) < a.dim()
                && subspaces_of(a, a.dim() - 1).iter().all(|b| rank(m, b) as usize == b.dim())
        }),
    )
}

/// Spaces whose rank rises when any outside line is added.
pub fn flats(m: &QMatroid) -> SubspaceFamily {
    let lines: Vec<Subspace> = enumerate_subspaces(m.q(), m.n(), Some(1)).unwrap().collect();
    collect(
        m,
        all_spaces(m).into_iter().filter(|a| {
            lines.iter().filter(|x| !a.contains(x).unwrap()).all(|x| rank(m, &a.sum(x).unwrap()) > rank(m, a))
        }),
    )
}

pub fn hyperplanes(m: &QMatroid) -> SubspaceFamily {
    let target = m.full_rank().checked_sub(1);
    collect(m, flats(m).iter().filter(|a| Some(rank(m, a)) == target).cloned())
}

/// All sums of circuits, {0} included.
pub fn opens(m: &QMatroid) -> SubspaceFamily {
    let circ: Vec<Subspace> = circuits(m).iter().cloned().collect();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut frontier = vec![Subspace::zero(m.q(), m.n()).unwrap()];
    while let Some(a) = frontier.pop() {
        if !seen.insert(a.clone()) {
            continue;
        }
        for c in &circ {
            let s = a.sum(c).unwrap();
            if !seen.contains(&s) {
                frontier.push(s);
            }
        }
    }
    collect(m, seen)
}
