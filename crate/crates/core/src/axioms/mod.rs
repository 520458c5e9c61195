//! Decision procedures for the q-matroid axiom systems.
//!
//! Every check returns one verdict per axiom. A failing verdict carries the
//! least violating tuple in canonical subspace order, with the tuple's
//! variables taken in the order the axiom quantifies them. Exhaustive sweeps
//! split the outermost variable across rayon workers and keep the first hit
//! in sequential order, so serial and parallel runs agree.

use std::collections::HashSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::lattice::Lattice;
use crate::subspace::Subspace;

mod circuits;
mod closure;
mod independence;
mod lattice_families;
mod rank;
mod spanning;

pub use circuits::{check_circuits, check_dependence, CircuitVariant};
pub use closure::check_closure;
pub use independence::{check_bases, check_independence, IndependenceVariant};
pub use lattice_families::{check_flats, check_hyperplanes, check_open, HyperplaneVariant, OpenVariant};
pub use rank::{check_rank, RankVariant};
pub use spanning::{check_nonspanning, check_spanning};

/// Seed used when the automatic policy falls back to sampling.
pub const AUTO_SEED: u64 = 0x5eed;
/// Sample count for pairwise sweeps beyond the pair-table limit.
pub const AUTO_PAIR_SAMPLES: usize = 1_000_000;
/// Sample count for quartic sweeps beyond [`QUARTIC_EXHAUSTIVE_LIMIT`].
pub const AUTO_QUARTIC_SAMPLES: usize = 20_000;
/// Lattices up to this size get exhaustive quartic sweeps (F_2^4 has 67).
pub const QUARTIC_EXHAUSTIVE_LIMIT: usize = 256;
/// Lattices up to this size get exhaustive pairwise and line-triple sweeps.
pub const PAIR_EXHAUSTIVE_LIMIT: usize = 4096;

/// How quantifiers are swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Exhaustive where affordable; large quantifier spaces are sampled, and
    /// (I4) is replaced by the equivalent (I4″) beyond the quartic limit.
    #[default]
    Auto,
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CheckOptions {
    pub mode: Mode,
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        CheckOptions { mode: Mode::Exhaustive }
    }

    pub fn sampled(seed: u64, count: usize) -> Self {
        CheckOptions { mode: Mode::Sampled { seed, count } }
    }

    pub(crate) fn sweep(&self, cost: Cost, lat: &Lattice) -> Coverage {
        match (cost, self.mode) {
            (_, Mode::Exhaustive) => Coverage::Exhaustive,
            (_, Mode::Sampled { seed, count }) => Coverage::Sampled { seed, count },
            (Cost::Pairwise, Mode::Auto) if lat.len() <= PAIR_EXHAUSTIVE_LIMIT => Coverage::Exhaustive,
            (Cost::Pairwise, Mode::Auto) => Coverage::Sampled { seed: AUTO_SEED, count: AUTO_PAIR_SAMPLES },
            (Cost::Quartic, Mode::Auto) if lat.len() <= QUARTIC_EXHAUSTIVE_LIMIT => Coverage::Exhaustive,
            (Cost::Quartic, Mode::Auto) => Coverage::Sampled { seed: AUTO_SEED, count: AUTO_QUARTIC_SAMPLES },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cost {
    Pairwise,
    Quartic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coverage::Exhaustive => write!(f, "exhaustive"),
            Coverage::Sampled { seed, count } => write!(f, "sampled({seed},{count})"),
        }
    }
}

/// The subspaces of a violating tuple, by variable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub entries: Vec<(String, Subspace)>,
    pub note: String,
}

impl Witness {
    pub fn get(&self, name: &str) -> Option<&Subspace> {
        self.entries.iter().find(|(k, _)| k == name).map(|(_, s)| s)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, s) in &self.entries {
            map.insert(k.clone(), json!(s.to_strings()));
        }
        Value::Object(map)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(k, s)| format!("{k}={s}")).collect();
        if parts.is_empty() {
            write!(f, "{}", self.note)
        } else {
            write!(f, "{} ({})", parts.join(", "), self.note)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub axiom: String,
    pub pass: bool,
    pub witness: Option<Witness>,
    pub coverage: Coverage,
    /// Set when the axiom was decided through an equivalent variant.
    pub via: Option<String>,
}

impl Verdict {
    pub fn to_violation(&self, system: &str) -> Error {
        Error::AxiomViolation {
            system: system.to_string(),
            axiom: self.axiom.clone(),
            witness: self.witness.as_ref().map_or_else(String::new, |w| w.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("axiom".into(), json!(self.axiom));
        map.insert("pass".into(), json!(self.pass));
        if let Some(w) = &self.witness {
            map.insert("witness".into(), w.to_json());
        }
        if self.coverage != Coverage::Exhaustive {
            map.insert("coverage".into(), json!(self.coverage.to_string()));
        }
        if let Some(v) = &self.via {
            map.insert("via".into(), json!(v));
        }
        Value::Object(map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub system: String,
    pub variant: Option<String>,
    pub verdicts: Vec<Verdict>,
}

impl AxiomReport {
    pub(crate) fn new(system: &str, variant: Option<&str>) -> Self {
        AxiomReport { system: system.into(), variant: variant.map(String::from), verdicts: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.pass)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    /// "exhaustive", or the sampling parameters if any verdict was sampled.
    pub fn mode(&self) -> String {
        self.verdicts
            .iter()
            .map(|v| v.coverage)
            .find(|c| *c != Coverage::Exhaustive)
            .unwrap_or(Coverage::Exhaustive)
            .to_string()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("system".into(), json!(self.system));
        if let Some(v) = &self.variant {
            map.insert("variant".into(), json!(v));
        }
        map.insert("mode".into(), json!(self.mode()));
        map.insert("verdicts".into(), Value::Array(self.verdicts.iter().map(Verdict::to_json).collect()));
        Value::Object(map)
    }

    pub(crate) fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }
}

/// A violating tuple of lattice indices (unused slots are ignored).
pub(crate) type Tuple = Vec<usize>;

pub(crate) fn verdict(
    lat: &Lattice,
    axiom: &str,
    names: &[&str],
    found: Option<Tuple>,
    coverage: Coverage,
    note: &str,
) -> Verdict {
    let witness = found.map(|t| Witness {
        entries: names.iter().zip(t).map(|(n, i)| (n.to_string(), lat.space(i).clone())).collect(),
        note: note.to_string(),
    });
    Verdict { axiom: axiom.into(), pass: witness.is_none(), witness, coverage, via: None }
}

/// First hit over `domain` in sequential order, computed in parallel.
pub(crate) fn first_hit<T: Send>(domain: &[usize], f: impl Fn(usize) -> Option<T> + Sync + Send) -> Option<T> {
    domain.par_iter().find_map_first(|&a| f(a))
}

pub(crate) fn first_in_range<T: Send>(
    range: std::ops::Range<usize>,
    f: impl Fn(usize) -> Option<T> + Sync + Send,
) -> Option<T> {
    range.into_par_iter().find_map_first(f)
}

/// Least witness among `count` seeded random draws. `draw` proposes the
/// quantified prefix, `check` completes it to a witness when it violates.
pub(crate) fn sample_least(
    seed: u64,
    count: usize,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Tuple,
    check: impl Fn(&[usize]) -> Option<Tuple> + Sync,
) -> Option<Tuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Tuple> = None;
    let mut remaining = count;
    while remaining > 0 {
        let chunk = remaining.min(1 << 16);
        remaining -= chunk;
        let drawn: Vec<Tuple> = (0..chunk).map(|_| draw(&mut rng)).collect();
        if let Some(t) = drawn.par_iter().filter_map(|t| check(t)).min() {
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    best
}

/// Runs an exhaustive sweep or a sampled one according to `coverage`.
pub(crate) fn run_sweep(
    coverage: Coverage,
    exhaustive: impl FnOnce() -> Option<Tuple>,
    draw: impl FnMut(&mut ChaCha8Rng) -> Tuple,
    check: impl Fn(&[usize]) -> Option<Tuple> + Sync,
) -> Option<Tuple> {
    match coverage {
        Coverage::Exhaustive => exhaustive(),
        Coverage::Sampled { seed, count } => sample_least(seed, count, draw, check),
    }
}

/// Context shared by family checks: membership flags and sorted members.
pub(crate) struct Fam<'a> {
    pub lat: &'a Lattice,
    pub flags: Vec<bool>,
    pub members: Vec<usize>,
}

impl<'a> Fam<'a> {
    pub(crate) fn new(lat: &'a Lattice, flags: Vec<bool>) -> Self {
        let members = crate::family::flags::members(&flags);
        Fam { lat, flags, members }
    }

    pub(crate) fn has(&self, a: usize) -> bool {
        self.flags[a]
    }

    /// Whether some member lies below each position (the flags of upp).
    pub(crate) fn member_below(&self) -> Vec<bool> {
        crate::family::flags::upp(self.lat, &self.flags)
    }

    /// Whether some member lies above each position (the flags of low).
    pub(crate) fn member_above(&self) -> Vec<bool> {
        crate::family::flags::low(self.lat, &self.flags)
    }

    fn reach(&self, a: usize, up: bool) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut stack = vec![a];
        let mut found = Vec::new();
        while let Some(y) = stack.pop() {
            let next = if up { self.lat.upper_covers(y) } else { self.lat.lower_covers(y) };
            for &c in next {
                let c = c as usize;
                if seen.insert(c) {
                    if self.flags[c] {
                        found.push(c);
                    } else {
                        stack.push(c);
                    }
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Members B ⊋ a with no member strictly between, ascending.
    pub(crate) fn covers_above(&self, a: usize) -> Vec<usize> {
        let c = self.reach(a, true);
        c.iter().copied().filter(|&b| !c.iter().any(|&d| d != b && self.lat.le(d, b))).collect()
    }

    /// Members B ⊊ a with no member strictly between, ascending.
    pub(crate) fn covered_below(&self, a: usize) -> Vec<usize> {
        let c = self.reach(a, false);
        c.iter().copied().filter(|&b| !c.iter().any(|&d| d != b && self.lat.le(b, d))).collect()
    }

    /// Largest dimension of a member inside each position, −1 if none.
    pub(crate) fn max_dim_below(&self) -> Vec<i32> {
        let lat = self.lat;
        let mut md = vec![-1i32; lat.len()];
        for x in 0..lat.len() {
            md[x] = if self.flags[x] {
                lat.dim(x) as i32
            } else {
                lat.lower_covers(x).iter().map(|&c| md[c as usize]).max().unwrap_or(-1)
            };
        }
        md
    }

    /// Smallest dimension of a member containing each position, `n+1` if none.
    pub(crate) fn min_dim_above(&self) -> Vec<i32> {
        let lat = self.lat;
        let none = lat.n() as i32 + 1;
        let mut mu = vec![none; lat.len()];
        for x in (0..lat.len()).rev() {
            mu[x] = if self.flags[x] {
                lat.dim(x) as i32
            } else {
                lat.upper_covers(x).iter().map(|&c| mu[c as usize]).min().unwrap_or(none)
            };
        }
        mu
    }

    /// Members inside `a` of dimension `md[a]`, ascending.
    pub(crate) fn max_sets(&self, md: &[i32], a: usize) -> Vec<usize> {
        self.extremal_sets(md, a, false)
    }

    /// Members containing `a` of dimension `mu[a]`, ascending.
    pub(crate) fn min_sets(&self, mu: &[i32], a: usize) -> Vec<usize> {
        self.extremal_sets(mu, a, true)
    }

    fn extremal_sets(&self, level: &[i32], a: usize, up: bool) -> Vec<usize> {
        let target = level[a];
        let mut seen = HashSet::from([a]);
        let mut stack = vec![a];
        let mut found = Vec::new();
        while let Some(y) = stack.pop() {
            if self.flags[y] && self.lat.dim(y) as i32 == target {
                found.push(y);
                continue;
            }
            let next = if up { self.lat.upper_covers(y) } else { self.lat.lower_covers(y) };
            for &c in next {
                let c = c as usize;
                if level[c] == target && seen.insert(c) {
                    stack.push(c);
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Intersection of the line sets of the members containing (`up`) or
    /// contained in each position; all ones when there are none.
    pub(crate) fn and_over(&self, up: bool) -> Vec<Vec<u64>> {
        let lat = self.lat;
        let w = lat.bits(0).len();
        let mut acc = vec![vec![u64::MAX; w]; lat.len()];
        let order: Vec<usize> = if up { (0..lat.len()).rev().collect() } else { (0..lat.len()).collect() };
        for x in order {
            let mut v = if self.flags[x] { lat.bits(x).to_vec() } else { vec![u64::MAX; w] };
            let next = if up { lat.upper_covers(x) } else { lat.lower_covers(x) };
            for &c in next {
                for (a, b) in v.iter_mut().zip(&acc[c as usize]) {
                    *a &= b;
                }
            }
            acc[x] = v;
        }
        acc
    }
}

/// Least set bit of `a & b & !c`, as a line number.
pub(crate) fn least_common_line(a: &[u64], b: &[u64], c: Option<&[u64]>) -> Option<usize> {
    for (w, (&x, &y)) in a.iter().zip(b).enumerate() {
        let z = c.map_or(0, |c| c[w]);
        let m = x & y & !z;
        if m != 0 {
            return Some(w * 64 + m.trailing_zeros() as usize);
        }
    }
    None
}

pub(crate) fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

pub(crate) fn uniform(rng: &mut ChaCha8Rng, n: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..n)
}

/// The axiom systems a family can be checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    Rank,
    Closure,
    Independence,
    Bases,
    Flats,
    Hyperplanes,
    Circuits,
    Dependence,
    Open,
    Spanning,
    Nonspanning,
}

impl System {
    pub const ALL: [System; 11] = [
        System::Rank,
        System::Closure,
        System::Independence,
        System::Bases,
        System::Flats,
        System::Hyperplanes,
        System::Circuits,
        System::Dependence,
        System::Open,
        System::Spanning,
        System::Nonspanning,
    ];

    pub fn name(self) -> &'static str {
        match self {
            System::Rank => "rank",
            System::Closure => "closure",
            System::Independence => "independence",
            System::Bases => "bases",
            System::Flats => "flats",
            System::Hyperplanes => "hyperplanes",
            System::Circuits => "circuits",
            System::Dependence => "dependence",
            System::Open => "open",
            System::Spanning => "spanning",
            System::Nonspanning => "nonspanning",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().to_ascii_lowercase();
        System::ALL.iter().copied().find(|sys| sys.name() == s).or(match s.as_str() {
            "independent" | "independents" => Some(System::Independence),
            "basis" => Some(System::Bases),
            "flat" => Some(System::Flats),
            "hyperplane" => Some(System::Hyperplanes),
            "circuit" => Some(System::Circuits),
            "dependent" | "dependents" => Some(System::Dependence),
            "opens" => Some(System::Open),
            _ => None,
        })
    }

    /// The family kind whose axioms this system describes, if any.
    pub fn family_kind(self) -> Option<crate::matroid::FamilyKind> {
        use crate::matroid::FamilyKind as K;
        match self {
            System::Rank | System::Closure => None,
            System::Independence => Some(K::Independent),
            System::Bases => Some(K::Basis),
            System::Flats => Some(K::Flat),
            System::Hyperplanes => Some(K::Hyperplane),
            System::Circuits => Some(K::Circuit),
            System::Dependence => Some(K::Dependent),
            System::Open => Some(K::Open),
            System::Spanning => Some(K::Spanning),
            System::Nonspanning => Some(K::Nonspanning),
        }
    }

    /// The system whose axioms a family kind must satisfy. Cocircuits and
    /// co-open spaces are circuits and open spaces of the dual.
    pub fn for_kind(kind: crate::matroid::FamilyKind) -> Self {
        use crate::matroid::FamilyKind as K;
        match kind {
            K::Independent => System::Independence,
            K::Dependent => System::Dependence,
            K::Basis => System::Bases,
            K::Circuit | K::Cocircuit => System::Circuits,
            K::Spanning => System::Spanning,
            K::Nonspanning => System::Nonspanning,
            K::Flat => System::Flats,
            K::Hyperplane => System::Hyperplanes,
            K::Open | K::Coopen => System::Open,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Run the full axiom system of `system` on a family with its default variant.
pub fn check_family(
    system: System,
    family: &crate::family::SubspaceFamily,
    opts: &CheckOptions,
) -> crate::error::Result<AxiomReport> {
    Ok(match system {
        System::Independence => check_independence(family, IndependenceVariant::I4, opts)?,
        System::Bases => check_bases(family, opts)?,
        System::Flats => check_flats(family, opts)?,
        System::Hyperplanes => check_hyperplanes(family, HyperplaneVariant::H3, opts)?,
        System::Circuits => check_circuits(family, CircuitVariant::C3, opts)?,
        System::Dependence => check_dependence(family, opts)?,
        System::Open => check_open(family, OpenVariant::O3, opts)?,
        System::Spanning => check_spanning(family, opts)?,
        System::Nonspanning => check_nonspanning(family, opts)?,
        System::Rank | System::Closure => {
            return Err(Error::Unsupported(format!("{system} is not a family system")));
        }
    })
}
