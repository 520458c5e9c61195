//! The rank-function q-matroid, its closure function, every derived family
//! and the dual.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::axioms::{check_rank, RankVariant};
use crate::error::{Error, Result};
use crate::family::{flags, SubspaceFamily};
use crate::lattice::Lattice;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Independent,
    Dependent,
    Basis,
    Circuit,
    Spanning,
    Nonspanning,
    Flat,
    Hyperplane,
    Open,
    Cocircuit,
    Coopen,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 11] = [
        FamilyKind::Independent,
        FamilyKind::Dependent,
        FamilyKind::Basis,
        FamilyKind::Circuit,
        FamilyKind::Spanning,
        FamilyKind::Nonspanning,
        FamilyKind::Flat,
        FamilyKind::Hyperplane,
        FamilyKind::Open,
        FamilyKind::Cocircuit,
        FamilyKind::Coopen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Independent => "independent",
            FamilyKind::Dependent => "dependent",
            FamilyKind::Basis => "basis",
            FamilyKind::Circuit => "circuit",
            FamilyKind::Spanning => "spanning",
            FamilyKind::Nonspanning => "nonspanning",
            FamilyKind::Flat => "flat",
            FamilyKind::Hyperplane => "hyperplane",
            FamilyKind::Open => "open",
            FamilyKind::Cocircuit => "cocircuit",
            FamilyKind::Coopen => "coopen",
        }
    }

    /// Accepts singular and plural spellings ("flat", "flats", "bases", ...).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        let kind = match s.as_str() {
            "independent" | "independents" => FamilyKind::Independent,
            "dependent" | "dependents" => FamilyKind::Dependent,
            "basis" | "bases" => FamilyKind::Basis,
            "circuit" | "circuits" => FamilyKind::Circuit,
            "spanning" => FamilyKind::Spanning,
            "nonspanning" => FamilyKind::Nonspanning,
            "flat" | "flats" => FamilyKind::Flat,
            "hyperplane" | "hyperplanes" => FamilyKind::Hyperplane,
            "open" | "opens" => FamilyKind::Open,
            "cocircuit" | "cocircuits" => FamilyKind::Cocircuit,
            "coopen" | "coopens" => FamilyKind::Coopen,
            _ => return None,
        };
        Some(kind)
    }

    fn slot(self) -> usize {
        FamilyKind::ALL.iter().position(|&k| k == self).unwrap()
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a q-matroid came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    RankTable,
    Uniform { k: usize },
    Representable { description: String },
    Derived { path: Vec<String> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::RankTable => write!(f, "rank_table"),
            Provenance::Uniform { k } => write!(f, "uniform({k})"),
            Provenance::Representable { description } => write!(f, "representable({description})"),
            Provenance::Derived { path } => write!(f, "derived({})", path.join(",")),
        }
    }
}

/// An integer-valued function on L(F_q^n), not necessarily a rank function.
#[derive(Clone)]
pub struct RankTable {
    lattice: Arc<Lattice>,
    values: Vec<i64>,
}

impl fmt::Debug for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankTable(F_{}^{})", self.lattice.q(), self.lattice.n())
    }
}

impl PartialEq for RankTable {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.q() == other.lattice.q() && self.lattice.n() == other.lattice.n() && self.values == other.values
    }
}

impl RankTable {
    /// Values indexed by canonical lattice position.
    pub fn new(lattice: Arc<Lattice>, values: Vec<i64>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::NotTotal { missing: lattice.len().saturating_sub(values.len()) });
        }
        Ok(RankTable { lattice, values })
    }

    pub fn from_fn(q: u32, n: usize, f: impl Fn(&Subspace) -> i64) -> Result<Self> {
        let lattice = Lattice::shared(q, n)?;
        let values = lattice.spaces().iter().map(f).collect();
        Ok(RankTable { lattice, values })
    }

    /// A total table from explicit entries; every subspace must appear.
    pub fn from_entries(q: u32, n: usize, entries: impl IntoIterator<Item = (Subspace, i64)>) -> Result<Self> {
        let lattice = Lattice::shared(q, n)?;
        let mut values: Vec<Option<i64>> = vec![None; lattice.len()];
        for (s, v) in entries {
            let i = lattice.require(&s)?;
            if let Some(old) = values[i] {
                if old != v {
                    return Err(Error::Parse(format!("conflicting values {old} and {v} for {s}")));
                }
            }
            values[i] = Some(v);
        }
        let missing = values.iter().filter(|v| v.is_none()).count();
        if missing > 0 {
            return Err(Error::NotTotal { missing });
        }
        Ok(RankTable { lattice, values: values.into_iter().map(Option::unwrap).collect() })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value_at(&self, i: usize) -> i64 {
        self.values[i]
    }

    pub fn get(&self, s: &Subspace) -> Result<i64> {
        Ok(self.values[self.lattice.require(s)?])
    }
}

/// A map L(F_q^n) → L(F_q^n), stored by lattice index.
#[derive(Clone)]
pub struct ClosureMap {
    lattice: Arc<Lattice>,
    image: Vec<u32>,
}

impl fmt::Debug for ClosureMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosureMap(F_{}^{})", self.lattice.q(), self.lattice.n())
    }
}

impl PartialEq for ClosureMap {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.q() == other.lattice.q() && self.lattice.n() == other.lattice.n() && self.image == other.image
    }
}

impl ClosureMap {
    pub(crate) fn from_image(lattice: Arc<Lattice>, image: Vec<u32>) -> Self {
        ClosureMap { lattice, image }
    }

    pub fn from_fn(q: u32, n: usize, f: impl Fn(&Subspace) -> Subspace) -> Result<Self> {
        let lattice = Lattice::shared(q, n)?;
        let image = lattice
            .spaces()
            .iter()
            .map(|s| lattice.require(&f(s)).map(|i| i as u32))
            .collect::<Result<_>>()?;
        Ok(ClosureMap { lattice, image })
    }

    pub fn from_entries(q: u32, n: usize, entries: impl IntoIterator<Item = (Subspace, Subspace)>) -> Result<Self> {
        let lattice = Lattice::shared(q, n)?;
        let mut image: Vec<Option<u32>> = vec![None; lattice.len()];
        for (a, b) in entries {
            image[lattice.require(&a)?] = Some(lattice.require(&b)? as u32);
        }
        let missing = image.iter().filter(|v| v.is_none()).count();
        if missing > 0 {
            return Err(Error::NotTotal { missing });
        }
        Ok(ClosureMap { lattice, image: image.into_iter().map(Option::unwrap).collect() })
    }

    pub fn identity(q: u32, n: usize) -> Result<Self> {
        let lattice = Lattice::shared(q, n)?;
        let image = (0..lattice.len() as u32).collect();
        Ok(ClosureMap { lattice, image })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn image_at(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, a: &Subspace) -> Result<Subspace> {
        Ok(self.lattice.space(self.image_at(self.lattice.require(a)?)).clone())
    }
}

/// A q-matroid (E, r) with E = F_q^n and its full rank table.
#[derive(Clone)]
pub struct QMatroid {
    lattice: Arc<Lattice>,
    ranks: Vec<u32>,
    provenance: Provenance,
    closure: OnceLock<Vec<u32>>,
    families: [OnceLock<Vec<bool>>; 11],
}

impl fmt::Debug for QMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QMatroid(F_{}^{}, rank {}, {})",
            self.lattice.q(),
            self.lattice.n(),
            self.full_rank(),
            self.provenance
        )
    }
}

impl PartialEq for QMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.n() == other.n() && self.ranks == other.ranks
    }
}

impl QMatroid {
    /// Validate a table against the rank axioms: all of (R1)-(R3) for n ≤ 5,
    /// the equivalent local axioms beyond that.
    pub fn from_table(table: RankTable, provenance: Provenance) -> Result<Self> {
        let variant = if table.lattice.n() <= 5 { RankVariant::Global } else { RankVariant::Local };
        let report = check_rank(&table, variant, &Default::default());
        if let Some(v) = report.first_failure() {
            return Err(v.to_violation("rank"));
        }
        let ranks = table.values.iter().map(|&v| v as u32).collect();
        Ok(Self::assemble(table.lattice, ranks, provenance))
    }

    pub fn from_rank_table(q: u32, n: usize, entries: impl IntoIterator<Item = (Subspace, i64)>) -> Result<Self> {
        Self::from_table(RankTable::from_entries(q, n, entries)?, Provenance::RankTable)
    }

    pub(crate) fn assemble(lattice: Arc<Lattice>, ranks: Vec<u32>, provenance: Provenance) -> Self {
        QMatroid { lattice, ranks, provenance, closure: OnceLock::new(), families: Default::default() }
    }

    /// U_{k,n}(F_q): r(A) = min(dim A, k).
    pub fn uniform(k: usize, n: usize, q: u32) -> Result<Self> {
        if k > n {
            return Err(Error::BadRank { k, n });
        }
        let lattice = Lattice::shared(q, n)?;
        let ranks = (0..lattice.len()).map(|i| lattice.dim(i).min(k) as u32).collect();
        Ok(Self::assemble(lattice, ranks, Provenance::Uniform { k }))
    }

    pub fn q(&self) -> u32 {
        self.lattice.q()
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank_at(&self, i: usize) -> u32 {
        self.ranks[i]
    }

    pub fn rank(&self, a: &Subspace) -> Result<u32> {
        Ok(self.ranks[self.lattice.require(a)?])
    }

    /// r(E)
    pub fn full_rank(&self) -> u32 {
        self.ranks[self.lattice.top()]
    }

    pub fn rank_table(&self) -> RankTable {
        RankTable { lattice: self.lattice.clone(), values: self.ranks.iter().map(|&r| r as i64).collect() }
    }

    /// Closure images indexed by lattice position.
    pub fn closure_table(&self) -> &[u32] {
        self.closure.get_or_init(|| {
            let lat = &self.lattice;
            (0..lat.len())
                .map(|a| {
                    (0..lat.lines().len())
                        .filter(|&x| self.ranks[lat.join_line(a, x)] == self.ranks[a])
                        .fold(a, |acc, x| lat.join_line(acc, x)) as u32
                })
                .collect()
        })
    }

    pub fn closure(&self, a: &Subspace) -> Result<Subspace> {
        let i = self.lattice.require(a)?;
        Ok(self.lattice.space(self.closure_table()[i] as usize).clone())
    }

    pub fn closure_map(&self) -> ClosureMap {
        ClosureMap::from_image(self.lattice.clone(), self.closure_table().to_vec())
    }

    /// Membership flags of a derived family, indexed by lattice position.
    pub fn family_flags(&self, kind: FamilyKind) -> &[bool] {
        if let Some(f) = self.families[kind.slot()].get() {
            return f;
        }
        let computed = self.compute_flags(kind);
        self.families[kind.slot()].get_or_init(|| computed)
    }

    fn compute_flags(&self, kind: FamilyKind) -> Vec<bool> {
        let lat = &*self.lattice;
        let r = &self.ranks;
        match kind {
            FamilyKind::Independent => (0..lat.len()).map(|a| r[a] as usize == lat.dim(a)).collect(),
            FamilyKind::Dependent => flags::opp(self.family_flags(FamilyKind::Independent)),
            FamilyKind::Basis => flags::max(lat, self.family_flags(FamilyKind::Independent)),
            FamilyKind::Circuit => flags::min(lat, self.family_flags(FamilyKind::Dependent)),
            FamilyKind::Spanning => (0..lat.len()).map(|a| r[a] == self.full_rank()).collect(),
            FamilyKind::Nonspanning => flags::opp(self.family_flags(FamilyKind::Spanning)),
            FamilyKind::Flat => (0..lat.len())
                .map(|a| (0..lat.lines().len()).all(|x| lat.has_line(a, x) || r[lat.join_line(a, x)] > r[a]))
                .collect(),
            FamilyKind::Hyperplane => {
                let mut proper = self.family_flags(FamilyKind::Flat).to_vec();
                proper[lat.top()] = false;
                flags::max(lat, &proper)
            }
            FamilyKind::Open => {
                let circuits = flags::members(self.family_flags(FamilyKind::Circuit));
                sum_closure(lat, std::iter::once(lat.bottom()).chain(circuits))
            }
            FamilyKind::Cocircuit => flags::perp(lat, self.family_flags(FamilyKind::Hyperplane)),
            FamilyKind::Coopen => flags::perp(lat, self.family_flags(FamilyKind::Flat)),
        }
    }

    pub fn derive_family(&self, kind: FamilyKind) -> SubspaceFamily {
        SubspaceFamily::from_flags(&self.lattice, self.family_flags(kind))
    }

    /// M*: r*(A) = dim A − r(E) + r(A⊥).
    pub fn dual(&self) -> QMatroid {
        let lat = &self.lattice;
        let ranks = (0..lat.len())
            .map(|a| (lat.dim(a) as i64 - self.full_rank() as i64 + self.ranks[lat.perp(a)] as i64) as u32)
            .collect();
        let mut path = match &self.provenance {
            Provenance::Derived { path } => path.clone(),
            other => vec![other.to_string()],
        };
        path.push("dual".into());
        Self::assemble(lat.clone(), ranks, Provenance::Derived { path })
    }

    /// (subspace, rank) pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Subspace, u32)> {
        self.lattice.spaces().iter().zip(self.ranks.iter().copied())
    }
}

/// Closure of `seed` under pairwise sums.
pub(crate) fn sum_closure(lat: &Lattice, seed: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut member = vec![false; lat.len()];
    let mut list = Vec::new();
    for s in seed {
        if !member[s] {
            member[s] = true;
            list.push(s);
        }
    }
    let mut next = 0;
    while next < list.len() {
        let a = list[next];
        next += 1;
        let mut j = 0;
        while j < next {
            let s = lat.join(a, list[j]);
            if !member[s] {
                member[s] = true;
                list.push(s);
            }
            j += 1;
        }
    }
    member
}
