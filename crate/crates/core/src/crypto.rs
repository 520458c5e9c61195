//! Converters between the cryptomorphic descriptions of a q-matroid, and
//! round-trip verification along conversion paths.
//!
//! Every converter validates its input against the matching axiom system
//! before converting and fails with [`Error::AxiomViolation`] otherwise.
//! Successful validations are memoised per (system, object), so repeated
//! conversions of the same object along many paths are cheap.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::axioms::{check_closure, check_family, CheckOptions, Fam, System};
use crate::error::{Error, Result};
use crate::family::{flags, SubspaceFamily};
use crate::io::{closure_to_json, family_to_json, matroid_to_json, to_canonical_string};
use crate::lattice::Lattice;
use crate::matroid::{sum_closure, ClosureMap, FamilyKind, Provenance, QMatroid};

/// A vertex of the conversion graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Rank,
    Closure,
    Family(FamilyKind),
}

impl Node {
    pub fn all() -> Vec<Node> {
        [Node::Rank, Node::Closure].into_iter().chain(FamilyKind::ALL.map(Node::Family)).collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Node::Rank => "rank",
            Node::Closure => "closure",
            Node::Family(k) => k.name(),
        }
    }

    pub fn parse(s: &str) -> Option<Node> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rank" => Some(Node::Rank),
            "closure" | "cl" => Some(Node::Closure),
            other => FamilyKind::parse(other).map(Node::Family),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How one family is obtained from another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    Opp,
    Min,
    Max,
    Low,
    Upp,
    Perp,
    /// Maximal proper members.
    MaxProper,
    /// All intersections of sub-collections, E included.
    Meets,
    /// All sums of sub-collections, {0} included.
    Sums,
    /// Minimal nonzero members.
    MinNonzero,
}

/// The arrow between two family kinds, if the conversion graph has one.
pub fn family_arrow(from: FamilyKind, to: FamilyKind) -> Option<Arrow> {
    use FamilyKind::*;
    Some(match (from, to) {
        (Independent, Dependent) | (Dependent, Independent) => Arrow::Opp,
        (Spanning, Nonspanning) | (Nonspanning, Spanning) => Arrow::Opp,
        (Dependent, Circuit) | (Spanning, Basis) => Arrow::Min,
        (Independent, Basis) | (Nonspanning, Hyperplane) => Arrow::Max,
        (Basis, Independent) | (Hyperplane, Nonspanning) => Arrow::Low,
        (Circuit, Dependent) | (Basis, Spanning) => Arrow::Upp,
        (Hyperplane, Cocircuit) | (Cocircuit, Hyperplane) | (Flat, Coopen) | (Coopen, Flat) => Arrow::Perp,
        (Flat, Hyperplane) => Arrow::MaxProper,
        (Hyperplane, Flat) => Arrow::Meets,
        (Circuit, Open) => Arrow::Sums,
        (Open, Circuit) => Arrow::MinNonzero,
        _ => return None,
    })
}

/// Whether a converter from `from` to `to` exists.
pub fn has_edge(from: Node, to: Node) -> bool {
    use FamilyKind::*;
    match (from, to) {
        (Node::Rank, t) => t != Node::Rank,
        (Node::Closure, t) => matches!(t, Node::Rank | Node::Family(Independent | Flat)),
        (Node::Family(Independent | Flat), Node::Rank | Node::Closure) => true,
        (Node::Family(Open), Node::Rank) => true,
        (Node::Family(a), Node::Family(b)) => family_arrow(a, b).is_some(),
        _ => false,
    }
}

/// All edges of the conversion graph in node order.
pub fn edges() -> Vec<(Node, Node)> {
    let nodes = Node::all();
    let mut out = Vec::new();
    for &a in &nodes {
        for &b in &nodes {
            if has_edge(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A value living at some node of the conversion graph.
#[derive(Clone, Debug)]
pub enum Object {
    Rank(QMatroid),
    Closure(ClosureMap),
    Family(FamilyKind, SubspaceFamily),
}

impl Object {
    pub fn node(&self) -> Node {
        match self {
            Object::Rank(_) => Node::Rank,
            Object::Closure(_) => Node::Closure,
            Object::Family(k, _) => Node::Family(*k),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Object::Rank(m) => matroid_to_json(m),
            Object::Closure(cl) => closure_to_json(cl),
            Object::Family(k, f) => family_to_json(k.name(), f),
        }
    }

    /// Canonical serialization used for equality; provenance is ignored.
    pub fn canonical_bytes(&self) -> String {
        let mut v = self.to_json();
        if let Some(obj) = v.as_object_mut() {
            obj.remove("provenance");
        }
        to_canonical_string(&v)
    }
}

/// M's own object at `node`.
pub fn native(m: &QMatroid, node: Node) -> Object {
    match node {
        Node::Rank => Object::Rank(m.clone()),
        Node::Closure => Object::Closure(m.closure_map()),
        Node::Family(k) => Object::Family(k, m.derive_family(k)),
    }
}

fn key(parts: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    parts.hash(&mut h);
    h.finish()
}

fn validated() -> &'static Mutex<HashSet<u64>> {
    static CACHE: OnceLock<Mutex<HashSet<u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn validate_family(kind: FamilyKind, family: &SubspaceFamily) -> Result<()> {
    let system = System::for_kind(kind);
    let k = key((system.name(), family));
    if validated().lock().unwrap().contains(&k) {
        return Ok(());
    }
    let report = check_family(system, family, &CheckOptions::default())?;
    if let Some(v) = report.first_failure() {
        return Err(v.to_violation(system.name()));
    }
    validated().lock().unwrap().insert(k);
    Ok(())
}

fn validate_closure(cl: &ClosureMap) -> Result<()> {
    let lat = cl.lattice();
    let k = key(("closure", lat.q(), lat.n(), cl.image()));
    if validated().lock().unwrap().contains(&k) {
        return Ok(());
    }
    let report = check_closure(cl, &CheckOptions::default());
    if let Some(v) = report.first_failure() {
        return Err(v.to_violation("closure"));
    }
    validated().lock().unwrap().insert(k);
    Ok(())
}

fn checked(kind: FamilyKind, family: &SubspaceFamily) -> Result<(Arc<Lattice>, Vec<bool>)> {
    validate_family(kind, family)?;
    let lat = family.lattice()?;
    let f = family.flags(&lat)?;
    Ok((lat, f))
}

fn derived(lat: Arc<Lattice>, ranks: Vec<u32>, from: &str) -> QMatroid {
    QMatroid::assemble(lat, ranks, Provenance::Derived { path: vec![from.to_string(), "rank".to_string()] })
}

/// r(A) = max{dim I : I ∈ ℐ, I ⊆ A}.
pub fn independents_to_rank(family: &SubspaceFamily) -> Result<QMatroid> {
    let (lat, f) = checked(FamilyKind::Independent, family)?;
    let md = Fam::new(&lat, f).max_dim_below();
    Ok(derived(lat, md.into_iter().map(|d| d as u32).collect(), "independent"))
}

/// cl(A) = A + Σ{x : the largest independent space in A + x is no larger
/// than the one in A}.
pub fn independents_to_closure(family: &SubspaceFamily) -> Result<ClosureMap> {
    let (lat, f) = checked(FamilyKind::Independent, family)?;
    let md = Fam::new(&lat, f).max_dim_below();
    let image = (0..lat.len())
        .map(|a| {
            (0..lat.lines().len())
                .filter(|&x| md[lat.join_line(a, x)] == md[a])
                .fold(a, |acc, x| lat.join_line(acc, x)) as u32
        })
        .collect();
    Ok(ClosureMap::from_image(lat, image))
}

/// I is independent iff every codimension-1 subspace of I has a different
/// closure.
pub fn closure_to_independents(cl: &ClosureMap) -> Result<SubspaceFamily> {
    validate_closure(cl)?;
    let lat = cl.lattice();
    let img = cl.image();
    let f: Vec<bool> = (0..lat.len()).map(|a| lat.lower_covers(a).iter().all(|&b| img[b as usize] != img[a])).collect();
    Ok(SubspaceFamily::from_flags(lat, &f))
}

/// r(A) = min{dim I : I ⊆ A, cl(I) = cl(A)}.
pub fn closure_to_rank(cl: &ClosureMap) -> Result<QMatroid> {
    validate_closure(cl)?;
    let lat = cl.lattice();
    let img = cl.image();
    // A witness below A lies below some lower cover with the same closure.
    let mut best = vec![0u32; lat.len()];
    for a in 0..lat.len() {
        best[a] = lat
            .lower_covers(a)
            .iter()
            .filter(|&&b| img[b as usize] == img[a])
            .map(|&b| best[b as usize])
            .fold(lat.dim(a) as u32, u32::min);
    }
    Ok(derived(lat.clone(), best, "closure"))
}

/// Fixed points of cl.
pub fn closure_to_flats(cl: &ClosureMap) -> Result<SubspaceFamily> {
    validate_closure(cl)?;
    let lat = cl.lattice();
    let f: Vec<bool> = (0..lat.len()).map(|a| cl.image_at(a) == a).collect();
    Ok(SubspaceFamily::from_flags(lat, &f))
}

fn flats_closure_image(lat: &Lattice, f: &[bool]) -> Vec<u32> {
    let mut img = vec![0u32; lat.len()];
    for a in (0..lat.len()).rev() {
        img[a] = if f[a] {
            a as u32
        } else {
            lat.upper_covers(a).iter().fold(lat.top(), |acc, &c| lat.meet(acc, img[c as usize] as usize)) as u32
        };
    }
    img
}

/// cl(A) = ⋂{F ∈ ℱ : A ⊆ F}.
pub fn flats_to_closure(family: &SubspaceFamily) -> Result<ClosureMap> {
    let (lat, f) = checked(FamilyKind::Flat, family)?;
    let img = flats_closure_image(&lat, &f);
    Ok(ClosureMap::from_image(lat, img))
}

fn flats_ranks(lat: &Lattice, f: Vec<bool>) -> Vec<u32> {
    let img = flats_closure_image(lat, &f);
    let fam = Fam::new(lat, f);
    let start = img[lat.bottom()] as usize;
    let mut covers: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut height: HashMap<usize, u32> = HashMap::new();
    for &t in &fam.members {
        if !lat.le(start, t) {
            continue;
        }
        let (mut cur, mut steps) = (start, 0);
        while cur != t {
            let up = covers.entry(cur).or_insert_with(|| fam.covers_above(cur));
            cur = up.iter().copied().find(|&c| lat.le(c, t)).expect("a flat above the current one lies below t");
            steps += 1;
        }
        height.insert(t, steps);
    }
    img.iter().map(|&c| height[&(c as usize)]).collect()
}

/// r(A) is the length of a maximal chain of flats from cl({0}) to cl(A),
/// following the least cover at each step.
pub fn flats_to_rank(family: &SubspaceFamily) -> Result<QMatroid> {
    let (lat, f) = checked(FamilyKind::Flat, family)?;
    let ranks = flats_ranks(&lat, f);
    Ok(derived(lat, ranks, "flat"))
}

/// Maximal proper flats.
pub fn flats_to_hyperplanes(family: &SubspaceFamily) -> Result<SubspaceFamily> {
    let (lat, mut f) = checked(FamilyKind::Flat, family)?;
    f[lat.top()] = false;
    Ok(SubspaceFamily::from_flags(&lat, &flags::max(&lat, &f)))
}

/// Intersections of all sub-collections, E for the empty one.
pub fn hyperplanes_to_flats(family: &SubspaceFamily) -> Result<SubspaceFamily> {
    let (lat, f) = checked(FamilyKind::Hyperplane, family)?;
    Ok(SubspaceFamily::from_flags(&lat, &meet_closure(&lat, &flags::members(&f))))
}

fn meet_closure(lat: &Lattice, gens: &[usize]) -> Vec<bool> {
    let mut member = vec![false; lat.len()];
    member[lat.top()] = true;
    let mut stack = vec![lat.top()];
    while let Some(s) = stack.pop() {
        for &h in gens {
            let m = lat.meet(s, h);
            if !member[m] {
                member[m] = true;
                stack.push(m);
            }
        }
    }
    member
}

/// Open spaces are the co-open spaces of M*, so their complements are the
/// flats of M*; rank M* from those and dualise back.
pub fn opens_to_rank(family: &SubspaceFamily) -> Result<QMatroid> {
    let (lat, f) = checked(FamilyKind::Open, family)?;
    let dual_flats = flags::perp(&lat, &f);
    validate_family(FamilyKind::Flat, &SubspaceFamily::from_flags(&lat, &dual_flats))?;
    let dual = QMatroid::assemble(lat.clone(), flats_ranks(&lat, dual_flats), Provenance::RankTable);
    Ok(dual.dual().with_provenance(Provenance::Derived { path: vec!["open".into(), "rank".into()] }))
}

/// Apply a family-to-family arrow after validating the source.
pub fn opp_and_extremal_transfers(from: FamilyKind, family: &SubspaceFamily, to: FamilyKind) -> Result<SubspaceFamily> {
    let arrow = family_arrow(from, to)
        .ok_or_else(|| Error::PathEdgeMissing { from: from.name().into(), to: to.name().into() })?;
    let (lat, f) = checked(from, family)?;
    let out = match arrow {
        Arrow::Opp => flags::opp(&f),
        Arrow::Min => flags::min(&lat, &f),
        Arrow::Max => flags::max(&lat, &f),
        Arrow::Low => flags::low(&lat, &f),
        Arrow::Upp => flags::upp(&lat, &f),
        Arrow::Perp => flags::perp(&lat, &f),
        Arrow::MaxProper => {
            let mut proper = f;
            proper[lat.top()] = false;
            flags::max(&lat, &proper)
        }
        Arrow::Meets => meet_closure(&lat, &flags::members(&f)),
        Arrow::Sums => sum_closure(&lat, std::iter::once(lat.bottom()).chain(flags::members(&f))),
        Arrow::MinNonzero => {
            let mut nonzero = f;
            nonzero[lat.bottom()] = false;
            flags::min(&lat, &nonzero)
        }
    };
    Ok(SubspaceFamily::from_flags(&lat, &out))
}

/// Convert along one edge of the conversion graph.
pub fn convert(obj: &Object, to: Node) -> Result<Object> {
    let from = obj.node();
    if !has_edge(from, to) {
        return Err(Error::PathEdgeMissing { from: from.name().into(), to: to.name().into() });
    }
    use FamilyKind::*;
    Ok(match (obj, to) {
        (Object::Rank(m), t) => native(m, t),
        (Object::Closure(cl), Node::Rank) => Object::Rank(closure_to_rank(cl)?),
        (Object::Closure(cl), Node::Family(Independent)) => Object::Family(Independent, closure_to_independents(cl)?),
        (Object::Closure(cl), _) => Object::Family(Flat, closure_to_flats(cl)?),
        (Object::Family(Independent, f), Node::Rank) => Object::Rank(independents_to_rank(f)?),
        (Object::Family(Independent, f), Node::Closure) => Object::Closure(independents_to_closure(f)?),
        (Object::Family(Flat, f), Node::Rank) => Object::Rank(flats_to_rank(f)?),
        (Object::Family(Flat, f), Node::Closure) => Object::Closure(flats_to_closure(f)?),
        (Object::Family(Open, f), Node::Rank) => Object::Rank(opens_to_rank(f)?),
        (Object::Family(k, f), Node::Family(t)) => Object::Family(t, opp_and_extremal_transfers(*k, f, t)?),
        _ => unreachable!("edge table and converters disagree"),
    })
}

/// A walk through the conversion graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionPath {
    nodes: Vec<Node>,
}

impl ConversionPath {
    pub fn new(nodes: Vec<Node>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Parse("empty conversion path".into()));
        }
        for w in nodes.windows(2) {
            if !has_edge(w[0], w[1]) {
                return Err(Error::PathEdgeMissing { from: w[0].name().into(), to: w[1].name().into() });
            }
        }
        Ok(ConversionPath { nodes })
    }

    /// Comma-separated node names, e.g. "rank,closure,flats,rank".
    pub fn parse(s: &str) -> Result<Self> {
        let nodes = s
            .split(',')
            .map(|t| Node::parse(t).ok_or_else(|| Error::Parse(format!("unknown system {:?}", t.trim()))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_cycle(&self) -> bool {
        self.nodes.first() == self.nodes.last()
    }
}

impl fmt::Display for ConversionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.nodes.iter().map(|n| n.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// The first step whose object differs from M's own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub step: usize,
    pub node: Node,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub path: ConversionPath,
    pub ok: bool,
    pub divergence: Option<Divergence>,
}

impl RoundTrip {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"path": self.path.to_string(), "ok": self.ok});
        if let Some(d) = &self.divergence {
            v["divergence"] = json!({"step": d.step, "node": d.node.name(), "detail": d.detail});
        }
        v
    }
}

fn first_difference(got: &Object, want: &Object) -> String {
    match (got, want) {
        (Object::Rank(a), Object::Rank(b)) => {
            let lat = a.lattice();
            match (0..lat.len()).find(|&i| a.rank_at(i) != b.rank_at(i)) {
                Some(i) => format!("rank of {} is {} instead of {}", lat.space(i), a.rank_at(i), b.rank_at(i)),
                None => "ambient spaces differ".into(),
            }
        }
        (Object::Closure(a), Object::Closure(b)) => {
            let lat = a.lattice();
            match (0..lat.len()).find(|&i| a.image_at(i) != b.image_at(i)) {
                Some(i) => format!(
                    "closure of {} is {} instead of {}",
                    lat.space(i),
                    lat.space(a.image_at(i)),
                    lat.space(b.image_at(i))
                ),
                None => "ambient spaces differ".into(),
            }
        }
        (Object::Family(_, a), Object::Family(_, b)) => {
            let extra = a.iter().find(|s| !b.contains(s));
            let missing = b.iter().find(|s| !a.contains(s));
            match (extra, missing) {
                (Some(e), Some(m)) if m < e => format!("{m} is missing"),
                (Some(e), _) => format!("{e} is not a member"),
                (None, Some(m)) => format!("{m} is missing"),
                (None, None) => "ambient spaces differ".into(),
            }
        }
        _ => "objects live at different nodes".into(),
    }
}

/// Start from M's object at the first node, convert along the path, and
/// compare each intermediate result with M's own object at that node.
pub fn roundtrip_verify(m: &QMatroid, path: &ConversionPath) -> Result<RoundTrip> {
    let mut obj = native(m, path.nodes[0]);
    for (step, &node) in path.nodes.iter().enumerate().skip(1) {
        obj = convert(&obj, node)?;
        let want = native(m, node);
        if obj.canonical_bytes() != want.canonical_bytes() {
            let detail = first_difference(&obj, &want);
            return Ok(RoundTrip {
                path: path.clone(),
                ok: false,
                divergence: Some(Divergence { step, node, detail }),
            });
        }
    }
    Ok(RoundTrip { path: path.clone(), ok: true, divergence: None })
}

/// Every simple directed cycle with at most `max_len` edges, once per
/// starting node, in lexicographic order of node sequences.
pub fn cycles(max_len: usize) -> Vec<ConversionPath> {
    fn extend(start: Node, walk: &mut Vec<Node>, max_len: usize, nodes: &[Node], out: &mut Vec<Vec<Node>>) {
        let last = *walk.last().unwrap();
        for &next in nodes {
            if !has_edge(last, next) {
                continue;
            }
            if next == start {
                let mut c = walk.clone();
                c.push(start);
                out.push(c);
            } else if walk.len() < max_len && !walk.contains(&next) {
                walk.push(next);
                extend(start, walk, max_len, nodes, out);
                walk.pop();
            }
        }
    }
    let nodes = Node::all();
    let mut out = Vec::new();
    for &start in &nodes {
        extend(start, &mut vec![start], max_len, &nodes, &mut out);
    }
    out.sort();
    out.into_iter().map(|nodes| ConversionPath { nodes }).collect()
}

/// Families obtained from other families by orthogonal complement.
#[derive(Clone, Debug)]
pub struct PerpTransfers {
    /// perp of the hyperplanes.
    pub cocircuits: SubspaceFamily,
    /// perp of the flats.
    pub coopens: SubspaceFamily,
    /// perp of the independent spaces of M*.
    pub spanning: SubspaceFamily,
    /// perp of the dependent spaces of M*.
    pub nonspanning: SubspaceFamily,
}

/// Compute and validate every perp transfer of M.
pub fn perp_transfers(m: &QMatroid) -> Result<PerpTransfers> {
    let dual = m.dual();
    let t = |src: &QMatroid, from: FamilyKind, to: FamilyKind| -> Result<SubspaceFamily> {
        let source = src.derive_family(from);
        validate_family(from, &source)?;
        let out = source.perp();
        validate_family(to, &out)?;
        Ok(out)
    };
    Ok(PerpTransfers {
        cocircuits: t(m, FamilyKind::Hyperplane, FamilyKind::Cocircuit)?,
        coopens: t(m, FamilyKind::Flat, FamilyKind::Coopen)?,
        spanning: t(&dual, FamilyKind::Independent, FamilyKind::Spanning)?,
        nonspanning: t(&dual, FamilyKind::Dependent, FamilyKind::Nonspanning)?,
    })
}

/// Two readings of how spanning and independent spaces relate under perp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanningReadings {
    /// spanning(M) = perp(independent(M*)).
    pub through_dual: bool,
    /// perp(spanning(M)) = independent(M).
    pub same_matroid: bool,
    /// nonspanning(M) = perp(dependent(M*)).
    pub nonspanning_through_dual: bool,
    /// perp(nonspanning(M)) = dependent(M).
    pub nonspanning_same_matroid: bool,
}

pub fn spanning_readings(m: &QMatroid) -> SpanningReadings {
    let dual = m.dual();
    let fam = |x: &QMatroid, k| x.derive_family(k);
    use FamilyKind::*;
    SpanningReadings {
        through_dual: fam(m, Spanning) == fam(&dual, Independent).perp(),
        same_matroid: fam(m, Spanning).perp() == fam(m, Independent),
        nonspanning_through_dual: fam(m, Nonspanning) == fam(&dual, Dependent).perp(),
        nonspanning_same_matroid: fam(m, Nonspanning).perp() == fam(m, Dependent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_parsing() {
        let p = ConversionPath::parse("rank,closure,flats,hyperplanes,flats,rank").unwrap();
        assert_eq!(p.nodes().len(), 6);
        assert!(p.is_cycle());
        assert_eq!(p.to_string(), "rank,closure,flat,hyperplane,flat,rank");
        assert_eq!(
            ConversionPath::parse("basis,rank").unwrap_err(),
            Error::PathEdgeMissing { from: "basis".into(), to: "rank".into() }
        );
        assert!(matches!(ConversionPath::parse("rank,bogus"), Err(Error::Parse(_))));
    }

    #[test]
    fn cycles_are_closed_and_simple() {
        let cs = cycles(4);
        assert!(!cs.is_empty());
        for c in &cs {
            assert!(c.is_cycle());
            let inner = &c.nodes()[..c.nodes().len() - 1];
            let distinct: HashSet<_> = inner.iter().collect();
            assert_eq!(distinct.len(), inner.len());
            assert!(inner.len() <= 4);
        }
        assert!(cs.iter().any(|c| c.to_string() == "flat,coopen,flat"));
    }

    #[test]
    fn closure_small_cases() {
        let id = ClosureMap::identity(2, 3).unwrap();
        let lat = id.lattice().clone();
        assert_eq!(closure_to_independents(&id).unwrap().len(), lat.len());
        assert_eq!(closure_to_rank(&id).unwrap(), QMatroid::uniform(3, 3, 2).unwrap());
        let top = lat.space(lat.top()).clone();
        let constant = ClosureMap::from_fn(2, 3, |_| top.clone()).unwrap();
        let ind = closure_to_independents(&constant).unwrap();
        assert_eq!(ind.len(), 1);
        assert!(ind.iter().next().unwrap().is_zero());
    }

    #[test]
    fn bad_input_is_rejected() {
        let lat = Lattice::shared(2, 3).unwrap();
        let no_top = SubspaceFamily::from_members(2, 3, [lat.space(lat.bottom()).clone()]).unwrap();
        assert!(matches!(flats_to_rank(&no_top), Err(Error::AxiomViolation { .. })));
    }
}
