//! Per-dimension classification of every subspace of a q-matroid.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::fixtures::m6;
use crate::matroid::{FamilyKind, QMatroid};

/// Row order of the text rendering.
pub const ROWS: [FamilyKind; 11] = [
    FamilyKind::Independent,
    FamilyKind::Basis,
    FamilyKind::Spanning,
    FamilyKind::Circuit,
    FamilyKind::Dependent,
    FamilyKind::Nonspanning,
    FamilyKind::Flat,
    FamilyKind::Open,
    FamilyKind::Hyperplane,
    FamilyKind::Cocircuit,
    FamilyKind::Coopen,
];

/// A published figure for M₆ set against the enumerated value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceFigure {
    pub quantity: &'static str,
    pub published: usize,
    pub computed: usize,
}

impl ReferenceFigure {
    pub fn agrees(&self) -> bool {
        self.published == self.computed
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub q: u32,
    pub n: usize,
    pub full_rank: u32,
    /// Number of subspaces of each dimension.
    pub per_dim: Vec<usize>,
    /// `ranks[d][r]`: d-spaces of rank r.
    pub ranks: Vec<BTreeMap<u32, usize>>,
    /// `closures[d][e]`: d-spaces whose closure has dimension e.
    pub closures: Vec<BTreeMap<usize, usize>>,
    pub families: Vec<(FamilyKind, Vec<usize>)>,
    /// Present when the matroid is M₆.
    pub reference: Option<Vec<ReferenceFigure>>,
}

pub fn classify(m: &QMatroid) -> Classification {
    let lat = m.lattice();
    let n = m.n();
    let mut per_dim = vec![0; n + 1];
    let mut ranks = vec![BTreeMap::new(); n + 1];
    let mut closures = vec![BTreeMap::new(); n + 1];
    let cl = m.closure_table();
    for i in 0..lat.len() {
        let d = lat.dim(i);
        per_dim[d] += 1;
        *ranks[d].entry(m.rank_at(i)).or_insert(0) += 1;
        *closures[d].entry(lat.dim(cl[i] as usize)).or_insert(0) += 1;
    }
    let families = ROWS.iter().map(|&k| (k, m.derive_family(k).dim_counts())).collect();
    let mut c = Classification { q: m.q(), n, full_rank: m.full_rank(), per_dim, ranks, closures, families, reference: None };
    if m.q() == 2 && n == 6 && m6().map(|r| &r == m).unwrap_or(false) {
        c.reference = Some(m6_reference(&c));
    }
    c
}

fn m6_reference(c: &Classification) -> Vec<ReferenceFigure> {
    let fam = |k: FamilyKind, d: usize| c.family(k).map_or(0, |v| v[d]);
    let total = |k: FamilyKind| c.family(k).map_or(0, |v| v.iter().sum());
    let rank1 = |d: usize| c.ranks[d].get(&1).copied().unwrap_or(0);
    let figure = |quantity, published, computed| ReferenceFigure { quantity, published, computed };
    vec![
        figure("3-dimensional spaces", 1395, c.per_dim[3]),
        figure("2-dimensional spaces of rank 1", 63, rank1(2)),
        figure("3-dimensional spaces of rank 1", 9, rank1(3)),
        figure("2-dimensional circuits", 63, fam(FamilyKind::Circuit, 2)),
        figure("3-dimensional circuits", 1332, fam(FamilyKind::Circuit, 3)),
        figure("4-dimensional open spaces", 651, fam(FamilyKind::Open, 4)),
        figure("5-dimensional open spaces", 63, fam(FamilyKind::Open, 5)),
        figure("hyperplanes", 9, total(FamilyKind::Hyperplane)),
        figure("flats", 11, total(FamilyKind::Flat)),
    ]
}

impl Classification {
    pub fn family(&self, kind: FamilyKind) -> Option<&[usize]> {
        self.families.iter().find(|(k, _)| *k == kind).map(|(_, v)| v.as_slice())
    }

    /// Published figures that the enumeration does not reproduce.
    pub fn deltas(&self) -> Vec<&ReferenceFigure> {
        self.reference.iter().flatten().filter(|f| !f.agrees()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut families = serde_json::Map::new();
        for (k, v) in &self.families {
            families.insert(k.name().into(), json!(v));
        }
        let mut out = json!({
            "q": self.q,
            "n": self.n,
            "rank": self.full_rank,
            "subspaces_per_dim": self.per_dim,
            "rank_distribution": self.ranks.iter().map(hist).collect::<Vec<_>>(),
            "closure_dims": self.closures.iter().map(hist).collect::<Vec<_>>(),
            "families": families,
        });
        if let Some(refs) = &self.reference {
            let figs: Vec<Value> = refs
                .iter()
                .map(|f| {
                    json!({"quantity": f.quantity, "published": f.published, "computed": f.computed, "agrees": f.agrees()})
                })
                .collect();
            out["published_figures"] = json!(figs);
            out["deltas"] = json!(self.deltas().iter().map(|f| f.quantity).collect::<Vec<_>>());
        }
        out
    }

    /// Aligned table: one row per family, one column per dimension.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        rows.push(("spaces".into(), self.per_dim.iter().map(|c| c.to_string()).collect()));
        rows.push(("rank".into(), self.ranks.iter().map(|m| fmt_hist(m, "r")).collect()));
        rows.push(("closure dim".into(), self.closures.iter().map(|m| fmt_hist(m, "d")).collect()));
        for (k, v) in &self.families {
            rows.push((k.name().into(), v.iter().map(|c| c.to_string()).collect()));
        }
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let mut col_w = vec![0; self.n + 1];
        for (d, w) in col_w.iter_mut().enumerate() {
            *w = rows.iter().map(|(_, cells)| cells[d].len()).max().unwrap_or(0).max(d.to_string().len());
        }
        let mut s = String::new();
        let _ = writeln!(s, "q-matroid on F_{}^{} of rank {}", self.q, self.n, self.full_rank);
        let _ = write!(s, "{:label_w$}", "dim");
        for (d, w) in col_w.iter().enumerate() {
            let _ = write!(s, " | {d:>w$}");
        }
        s.push('\n');
        for (label, cells) in &rows {
            let _ = write!(s, "{label:label_w$}");
            for (cell, w) in cells.iter().zip(&col_w) {
                let _ = write!(s, " | {cell:>w$}");
            }
            s.push('\n');
        }
        if let Some(refs) = &self.reference {
            s.push_str("\npublished figures for M6:\n");
            for f in refs {
                let mark = if f.agrees() { "ok" } else { "DELTA" };
                let _ = writeln!(s, "  {:5} {}: published {}, enumerated {}", mark, f.quantity, f.published, f.computed);
            }
        }
        s
    }
}

fn hist<K: ToString>(m: &BTreeMap<K, usize>) -> Value {
    m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>().into()
}

fn fmt_hist<K: std::fmt::Display>(m: &BTreeMap<K, usize>, prefix: &str) -> String {
    m.iter().map(|(k, v)| format!("{prefix}{k}:{v}")).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_matroid_has_no_circuits() {
        let c = classify(&QMatroid::uniform(3, 3, 2).unwrap());
        assert!(c.family(FamilyKind::Circuit).unwrap().iter().all(|&x| x == 0));
        assert!(c.reference.is_none());
        assert_eq!(c.per_dim, vec![1, 7, 7, 1]);
    }

    #[test]
    fn m6_flags_the_diverging_counts() {
        let c = classify(&m6().unwrap());
        assert_eq!(c.family(FamilyKind::Flat).unwrap(), &[1, 0, 0, 9, 0, 0, 1]);
        let deltas: Vec<_> = c.deltas().iter().map(|f| (f.quantity, f.published, f.computed)).collect();
        assert_eq!(deltas, [("3-dimensional circuits", 1332, 504), ("4-dimensional open spaces", 651, 588)]);
        assert!(c.to_text().contains("DELTA"));
    }
}
