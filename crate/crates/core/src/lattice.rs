//! The full subspace lattice L(F_q^n), materialized with index-based
//! operations for exhaustive sweeps.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::subspace::{Packing, Subspace};

/// Default bound on the number of subspaces a lattice may hold.
pub const DEFAULT_LATTICE_CAP: u128 = 30_000;
/// Lattices up to this size get dense join/meet tables.
const PAIR_TABLE_LIMIT: usize = 4096;

/// Number of k-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

pub fn lattice_size(q: u32, n: usize) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// The active cap: `QMAT_LATTICE_CAP` if set and valid, else the default.
pub fn lattice_cap() -> u128 {
    std::env::var("QMAT_LATTICE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_LATTICE_CAP)
}

fn check_cap(q: u32, n: usize) -> Result<()> {
    Packing::new(q, n)?;
    let count = lattice_size(q, n);
    let cap = lattice_cap();
    if count > cap {
        return Err(Error::LatticeTooLarge { q, n, count, cap });
    }
    Ok(())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All k-dimensional subspaces in canonical order.
fn subspaces_of_dim(q: u32, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let total = (q as u64).pow(free.len() as u32);
        for t in 0..total {
            let mut rows = vec![vec![0u32; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut v = t;
            for &(i, c) in &free {
                rows[i][c] = (v % q as u64) as u32;
                v /= q as u64;
            }
            out.push(Subspace::canonicalize(&rows, q, n).expect("valid RREF"));
        }
    }
    out.sort();
    out
}

/// Every subspace of F_q^n (or only those of dimension `dim`) in canonical
/// order: by dimension, then lexicographically by packed RREF rows.
pub fn enumerate_subspaces(q: u32, n: usize, dim: Option<usize>) -> Result<impl Iterator<Item = Subspace>> {
    check_cap(q, n)?;
    let dims: Vec<usize> = match dim {
        Some(k) if k <= n => vec![k],
        Some(_) => vec![],
        None => (0..=n).collect(),
    };
    Ok(dims.into_iter().flat_map(move |k| subspaces_of_dim(q, n, k)))
}

/// A closed interval [lo, hi] of the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Subspace,
    hi: Subspace,
}

impl Interval {
    pub fn new(lo: Subspace, hi: Subspace) -> Result<Self> {
        if !hi.contains(&lo)? {
            return Err(Error::DimensionMismatch("interval bounds are not nested".into()));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Subspace {
        &self.lo
    }

    pub fn hi(&self) -> &Subspace {
        &self.hi
    }

    pub fn contains(&self, a: &Subspace) -> Result<bool> {
        Ok(a.contains(&self.lo)? && self.hi.contains(a)?)
    }

    /// Members of the interval in canonical order.
    pub fn members(&self) -> Result<Vec<Subspace>> {
        let lat = Lattice::shared(self.lo.q(), self.lo.n())?;
        let (lo, hi) = (lat.index_of(&self.lo).unwrap(), lat.index_of(&self.hi).unwrap());
        Ok((0..lat.len()).filter(|&i| lat.le(lo, i) && lat.le(i, hi)).map(|i| lat.space(i).clone()).collect())
    }
}

struct PairTables {
    join: Vec<u16>,
    meet: Vec<u16>,
}

/// L(F_q^n) with subspaces addressed by their canonical index.
pub struct Lattice {
    q: u32,
    n: usize,
    spaces: Vec<Subspace>,
    index: HashMap<Subspace, u32>,
    dim_start: Vec<usize>,
    lines: Vec<u32>,
    words: usize,
    line_bits: Vec<u64>,
    row_lines: Vec<Vec<u32>>,
    perp: Vec<u32>,
    join_line: OnceLock<Vec<u32>>,
    pairs: OnceLock<Option<PairTables>>,
    upper: OnceLock<Vec<Vec<u32>>>,
    lower: OnceLock<Vec<Vec<u32>>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(F_{}^{}, {} subspaces)", self.q, self.n, self.spaces.len())
    }
}

fn cache() -> &'static Mutex<HashMap<(u32, usize), Arc<Lattice>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<Lattice>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Lattice {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        check_cap(q, n)?;
        let mut spaces = Vec::new();
        let mut dim_start = Vec::with_capacity(n + 2);
        for k in 0..=n {
            dim_start.push(spaces.len());
            spaces.extend(subspaces_of_dim(q, n, k));
        }
        dim_start.push(spaces.len());
        let index: HashMap<Subspace, u32> = spaces.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let lines: Vec<u32> = (dim_start[1] as u32..dim_start.get(2).copied().unwrap_or(dim_start[1]) as u32).collect();
        let line_of_vector: HashMap<u64, u32> =
            lines.iter().enumerate().map(|(pos, &i)| (spaces[i as usize].rows()[0], pos as u32)).collect();
        let words = lines.len().div_ceil(64).max(1);
        let mut line_bits = vec![0u64; spaces.len() * words];
        let mut row_lines = Vec::with_capacity(spaces.len());
        for (i, s) in spaces.iter().enumerate() {
            for v in s.packed_lines() {
                let pos = line_of_vector[&v] as usize;
                line_bits[i * words + pos / 64] |= 1 << (pos % 64);
            }
            row_lines.push(s.rows().iter().map(|r| line_of_vector[r]).collect());
        }
        let perp = spaces.iter().map(|s| index[&s.perp()]).collect();
        Ok(Lattice {
            q,
            n,
            spaces,
            index,
            dim_start,
            lines,
            words,
            line_bits,
            row_lines,
            perp,
            join_line: OnceLock::new(),
            pairs: OnceLock::new(),
            upper: OnceLock::new(),
            lower: OnceLock::new(),
        })
    }

    /// Process-wide shared lattice for (q, n); the cap is checked on every call.
    pub fn shared(q: u32, n: usize) -> Result<Arc<Lattice>> {
        check_cap(q, n)?;
        if let Some(l) = cache().lock().unwrap().get(&(q, n)) {
            return Ok(l.clone());
        }
        let lat = Arc::new(Lattice::new(q, n)?);
        Ok(cache().lock().unwrap().entry((q, n)).or_insert(lat).clone())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn space(&self, i: usize) -> &Subspace {
        &self.spaces[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    /// Index of `s`, or a dimension mismatch error naming the ambient space.
    pub fn require(&self, s: &Subspace) -> Result<usize> {
        self.index_of(s).ok_or_else(|| {
            Error::DimensionMismatch(format!("{s} is not a subspace of F_{}^{}", self.q, self.n))
        })
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dim(&self, i: usize) -> usize {
        self.spaces[i].dim()
    }

    pub fn dim_range(&self, k: usize) -> Range<usize> {
        if k > self.n {
            return 0..0;
        }
        self.dim_start[k]..self.dim_start[k + 1]
    }

    /// Lattice indices of the one-dimensional subspaces; a line's position
    /// in this slice is its line number.
    pub fn lines(&self) -> &[u32] {
        &self.lines
    }

    /// Lattice indices of the codimension-one subspaces of E.
    pub fn coatoms(&self) -> Range<usize> {
        if self.n == 0 {
            0..0
        } else {
            self.dim_range(self.n - 1)
        }
    }

    pub fn perp(&self, i: usize) -> usize {
        self.perp[i] as usize
    }

    pub(crate) fn bits(&self, i: usize) -> &[u64] {
        &self.line_bits[i * self.words..(i + 1) * self.words]
    }

    /// Whether a ⊆ b.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.bits(a).iter().zip(self.bits(b)).all(|(x, y)| x & !y == 0)
    }

    /// Whether line number `x` lies in subspace `a`.
    pub fn has_line(&self, a: usize, x: usize) -> bool {
        self.bits(a)[x / 64] >> (x % 64) & 1 == 1
    }

    /// Line numbers contained in `a`, ascending.
    pub fn lines_in(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.bits(a)
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }

    /// Line numbers of the RREF basis rows of `a`.
    pub fn row_lines(&self, a: usize) -> &[u32] {
        &self.row_lines[a]
    }

    fn direct_join(&self, a: usize, b: usize) -> usize {
        let s = self.spaces[a].sum(&self.spaces[b]).unwrap();
        self.index[&s] as usize
    }

    fn join_line_table(&self) -> &[u32] {
        self.join_line.get_or_init(|| {
            let l = self.lines.len();
            (0..self.spaces.len())
                .into_par_iter()
                .flat_map_iter(|a| {
                    (0..l).map(move |x| {
                        if self.has_line(a, x) {
                            a as u32
                        } else {
                            self.direct_join(a, self.lines[x] as usize) as u32
                        }
                    })
                })
                .collect()
        })
    }

    /// a + x for line number x.
    pub fn join_line(&self, a: usize, x: usize) -> usize {
        self.join_line_table()[a * self.lines.len() + x] as usize
    }

    fn pair_tables(&self) -> Option<&PairTables> {
        self.pairs
            .get_or_init(|| {
                let n = self.spaces.len();
                if n > PAIR_TABLE_LIMIT {
                    return None;
                }
                let jl = self.join_line_table();
                let l = self.lines.len();
                let join: Vec<u16> = (0..n)
                    .into_par_iter()
                    .flat_map_iter(|a| {
                        (0..n).map(move |b| {
                            self.row_lines[b].iter().fold(a, |acc, &x| jl[acc * l + x as usize] as usize) as u16
                        })
                    })
                    .collect();
                let meet = (0..n)
                    .into_par_iter()
                    .flat_map_iter(|a| {
                        let join = &join;
                        (0..n).map(move |b| {
                            self.perp[join[self.perp[a] as usize * n + self.perp[b] as usize] as usize] as u16
                        })
                    })
                    .collect();
                Some(PairTables { join, meet })
            })
            .as_ref()
    }

    /// a + b
    pub fn join(&self, a: usize, b: usize) -> usize {
        match self.pair_tables() {
            Some(t) => t.join[a * self.spaces.len() + b] as usize,
            None => self.row_lines[b].iter().fold(a, |acc, &x| self.join_line(acc, x as usize)),
        }
    }

    /// a ∩ b
    pub fn meet(&self, a: usize, b: usize) -> usize {
        match self.pair_tables() {
            Some(t) => t.meet[a * self.spaces.len() + b] as usize,
            None => self.perp(self.join(self.perp(a), self.perp(b))),
        }
    }

    /// Subspaces covering `a` (one dimension higher), ascending.
    pub fn upper_covers(&self, a: usize) -> &[u32] {
        &self.upper.get_or_init(|| {
            (0..self.spaces.len())
                .into_par_iter()
                .map(|a| {
                    let mut v: Vec<u32> = (0..self.lines.len())
                        .filter(|&x| !self.has_line(a, x))
                        .map(|x| self.join_line(a, x) as u32)
                        .collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect()
        })[a]
    }

    /// Codimension-one subspaces of `a`, ascending.
    pub fn lower_covers(&self, a: usize) -> &[u32] {
        &self.lower.get_or_init(|| {
            let mut lower = vec![Vec::new(); self.spaces.len()];
            for b in 0..self.spaces.len() {
                for &c in self.upper_covers(b) {
                    lower[c as usize].push(b as u32);
                }
            }
            lower
        })[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(6, 1, 2), 63);
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
        assert_eq!(gaussian_binomial(6, 2, 2), 651);
        assert_eq!(lattice_size(2, 6), 2825);
        assert_eq!(lattice_size(2, 7), 29212);
        assert_eq!(lattice_size(3, 4), 212);
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)] {
            for k in 0..=n {
                let count = enumerate_subspaces(q, n, Some(k)).unwrap().count() as u128;
                assert_eq!(count, gaussian_binomial(n, k, q), "q={q} n={n} k={k}");
            }
        }
        assert_eq!(enumerate_subspaces(2, 6, None).unwrap().count(), 2825);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all: Vec<Subspace> = enumerate_subspaces(3, 3, None).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_guard() {
        assert!(matches!(Lattice::new(2, 8), Err(Error::LatticeTooLarge { .. })));
        assert!(matches!(enumerate_subspaces(3, 6, None).map(|_| ()), Err(Error::LatticeTooLarge { .. })));
    }

    #[test]
    fn index_operations_match_subspace_operations() {
        let lat = Lattice::new(2, 4).unwrap();
        for a in 0..lat.len() {
            assert_eq!(lat.perp(lat.perp(a)), a);
            for b in 0..lat.len() {
                let (sa, sb) = (lat.space(a), lat.space(b));
                assert_eq!(lat.space(lat.join(a, b)), &sa.sum(sb).unwrap());
                assert_eq!(lat.space(lat.meet(a, b)), &sa.intersect(sb).unwrap());
                assert_eq!(lat.le(a, b), sb.contains(sa).unwrap());
                // De Morgan under perp.
                assert_eq!(lat.perp(lat.join(a, b)), lat.meet(lat.perp(a), lat.perp(b)));
                assert_eq!(lat.perp(lat.meet(a, b)), lat.join(lat.perp(a), lat.perp(b)));
                assert_eq!(lat.dim(lat.join(a, b)) + lat.dim(lat.meet(a, b)), lat.dim(a) + lat.dim(b));
            }
        }
    }

    #[test]
    fn covers() {
        let lat = Lattice::new(3, 3).unwrap();
        for a in 0..lat.len() {
            let expected: Vec<u32> = (0..lat.len())
                .filter(|&b| lat.dim(b) == lat.dim(a) + 1 && lat.le(a, b))
                .map(|b| b as u32)
                .collect();
            assert_eq!(lat.upper_covers(a), expected.as_slice());
            let expected: Vec<u32> = (0..lat.len())
                .filter(|&b| lat.dim(b) + 1 == lat.dim(a) && lat.le(b, a))
                .map(|b| b as u32)
                .collect();
            assert_eq!(lat.lower_covers(a), expected.as_slice());
        }
    }

    #[test]
    fn large_lattice_without_pair_tables() {
        let lat = Lattice::new(2, 7).unwrap();
        assert_eq!(lat.len(), 29212);
        let a = lat.dim_range(3).start + 17;
        let b = lat.dim_range(4).start + 1000;
        assert_eq!(lat.space(lat.join(a, b)), &lat.space(a).sum(lat.space(b)).unwrap());
        assert_eq!(lat.space(lat.meet(a, b)), &lat.space(a).intersect(lat.space(b)).unwrap());
    }

    #[test]
    fn interval_members() {
        let lo = Subspace::from_strings(&["1000"], 2, 4).unwrap();
        let hi = Subspace::from_strings(&["1000", "0100", "0010"], 2, 4).unwrap();
        let iv = Interval::new(lo.clone(), hi).unwrap();
        // [<e1>, <e1,e2,e3>] is isomorphic to L(F_2^2): 1 + 3 + 1 members.
        assert_eq!(iv.members().unwrap().len(), 5);
        assert!(Interval::new(Subspace::from_strings(&["0001"], 2, 4).unwrap(), lo).is_err());
    }
}
