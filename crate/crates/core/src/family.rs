//! Families of subspaces and the lattice operators on them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subspace::Subspace;

/// A set of subspaces of F_q^n in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceFamily {
    q: u32,
    n: usize,
    members: BTreeSet<Subspace>,
}

impl SubspaceFamily {
    pub fn new(q: u32, n: usize) -> Self {
        SubspaceFamily { q, n, members: BTreeSet::new() }
    }

    pub fn from_members(q: u32, n: usize, members: impl IntoIterator<Item = Subspace>) -> Result<Self> {
        let mut f = Self::new(q, n);
        for m in members {
            f.insert(m)?;
        }
        Ok(f)
    }

    pub(crate) fn from_indices(lat: &Lattice, idx: impl IntoIterator<Item = usize>) -> Self {
        SubspaceFamily {
            q: lat.q(),
            n: lat.n(),
            members: idx.into_iter().map(|i| lat.space(i).clone()).collect(),
        }
    }

    pub(crate) fn from_flags(lat: &Lattice, flags: &[bool]) -> Self {
        Self::from_indices(lat, flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i))
    }

    /// Membership flags indexed by lattice position.
    pub(crate) fn flags(&self, lat: &Lattice) -> Result<Vec<bool>> {
        if lat.q() != self.q || lat.n() != self.n {
            return Err(Error::DimensionMismatch("family and lattice differ in ambient space".into()));
        }
        let mut flags = vec![false; lat.len()];
        for m in &self.members {
            flags[lat.require(m)?] = true;
        }
        Ok(flags)
    }

    pub fn insert(&mut self, s: Subspace) -> Result<bool> {
        if s.q() != self.q || s.n() != self.n {
            return Err(Error::DimensionMismatch(format!("{s} does not live in F_{}^{}", self.q, self.n)));
        }
        Ok(self.members.insert(s))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subspace> {
        self.members.iter()
    }

    pub fn lattice(&self) -> Result<std::sync::Arc<Lattice>> {
        Lattice::shared(self.q, self.n)
    }

    /// Count of members per dimension, index = dimension.
    pub fn dim_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for m in &self.members {
            counts[m.dim()] += 1;
        }
        counts
    }

    fn derived(&self, members: impl IntoIterator<Item = Subspace>) -> Self {
        SubspaceFamily { q: self.q, n: self.n, members: members.into_iter().collect() }
    }

    /// Every subspace containing some member.
    pub fn upp(&self) -> Result<Self> {
        let lat = self.lattice()?;
        let idx: Vec<usize> = self.members.iter().map(|m| lat.require(m)).collect::<Result<_>>()?;
        Ok(Self::from_indices(&lat, (0..lat.len()).filter(|&a| idx.iter().any(|&m| lat.le(m, a)))))
    }

    /// Every subspace contained in some member.
    pub fn low(&self) -> Result<Self> {
        let lat = self.lattice()?;
        let idx: Vec<usize> = self.members.iter().map(|m| lat.require(m)).collect::<Result<_>>()?;
        Ok(Self::from_indices(&lat, (0..lat.len()).filter(|&a| idx.iter().any(|&m| lat.le(a, m)))))
    }

    /// The complement of the family in the lattice.
    pub fn opp(&self) -> Result<Self> {
        let lat = self.lattice()?;
        let flags = self.flags(&lat)?;
        Ok(Self::from_indices(&lat, (0..lat.len()).filter(|&a| !flags[a])))
    }

    /// Inclusion-maximal members.
    pub fn max(&self) -> Self {
        self.derived(
            self.members
                .iter()
                .filter(|a| !self.members.iter().any(|b| b != *a && b.contains(a).unwrap()))
                .cloned(),
        )
    }

    /// Inclusion-minimal members.
    pub fn min(&self) -> Self {
        self.derived(
            self.members
                .iter()
                .filter(|a| !self.members.iter().any(|b| b != *a && a.contains(b).unwrap()))
                .cloned(),
        )
    }

    pub fn perp(&self) -> Self {
        self.derived(self.members.iter().map(Subspace::perp))
    }

    /// Members inside `x` of the largest dimension attained by such members.
    pub fn max_in(&self, x: &Subspace) -> Result<Self> {
        let mut inside = Vec::new();
        for m in &self.members {
            if x.contains(m)? {
                inside.push(m);
            }
        }
        let top = inside.iter().map(|m| m.dim()).max();
        Ok(self.derived(inside.into_iter().filter(|m| Some(m.dim()) == top).cloned()))
    }

    /// Members B ⊋ a with no member strictly between a and B.
    pub fn covers_of(&self, a: &Subspace) -> Result<Self> {
        if !self.members.contains(a) {
            return Err(Error::NotAMember);
        }
        let above: Vec<&Subspace> =
            self.members.iter().filter(|b| *b != a && b.contains(a).unwrap()).collect();
        Ok(self.derived(
            above
                .iter()
                .filter(|b| !above.iter().any(|c| c != *b && b.contains(c).unwrap()))
                .map(|b| (*b).clone()),
        ))
    }

    /// Whether `b` covers `a` in this family.
    pub fn is_cover(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        Ok(self.covers_of(a)?.contains(b))
    }
}

/// Operators on membership flags indexed by lattice position.
pub(crate) mod flags {
    use crate::lattice::Lattice;

    pub(crate) fn members(flags: &[bool]) -> Vec<usize> {
        flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect()
    }

    pub(crate) fn opp(flags: &[bool]) -> Vec<bool> {
        flags.iter().map(|f| !f).collect()
    }

    pub(crate) fn perp(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        (0..lat.len()).map(|a| flags[lat.perp(a)]).collect()
    }

    /// Whether some member lies strictly above each position.
    fn strictly_above(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        let mut above = vec![false; lat.len()];
        for a in (0..lat.len()).rev() {
            above[a] = lat.upper_covers(a).iter().any(|&c| flags[c as usize] || above[c as usize]);
        }
        above
    }

    fn strictly_below(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        let mut below = vec![false; lat.len()];
        for a in 0..lat.len() {
            below[a] = lat.lower_covers(a).iter().any(|&c| flags[c as usize] || below[c as usize]);
        }
        below
    }

    pub(crate) fn upp(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        let below = strictly_below(lat, flags);
        (0..lat.len()).map(|a| flags[a] || below[a]).collect()
    }

    pub(crate) fn low(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        let above = strictly_above(lat, flags);
        (0..lat.len()).map(|a| flags[a] || above[a]).collect()
    }

    pub(crate) fn max(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        let above = strictly_above(lat, flags);
        (0..lat.len()).map(|a| flags[a] && !above[a]).collect()
    }

    pub(crate) fn min(lat: &Lattice, flags: &[bool]) -> Vec<bool> {
        let below = strictly_below(lat, flags);
        (0..lat.len()).map(|a| flags[a] && !below[a]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[&str]) -> Subspace {
        Subspace::from_strings(rows, 2, 4).unwrap()
    }

    fn fam(items: &[&[&str]]) -> SubspaceFamily {
        SubspaceFamily::from_members(2, 4, items.iter().map(|r| s(r))).unwrap()
    }

    #[test]
    fn operators_on_a_chain() {
        let zero = Subspace::zero(2, 4).unwrap();
        let f = SubspaceFamily::from_members(2, 4, [s(&["1000"]), s(&["1000", "0100"])]).unwrap();
        assert_eq!(f.max().len(), 1);
        assert_eq!(f.min().len(), 1);
        // low of a 2-space: {0}, its three lines, itself.
        assert_eq!(f.low().unwrap().len(), 5);
        assert!(f.low().unwrap().contains(&zero));
        // upp of a line in F_2^4: 1 + 7 + 7 + 1 = 16 spaces.
        assert_eq!(f.upp().unwrap().len(), 16);
        assert_eq!(f.opp().unwrap().opp().unwrap(), f);
        assert_eq!(f.perp().perp(), f);
    }

    #[test]
    fn single_member_extremes() {
        let f = fam(&[&["1010", "0101"]]);
        assert_eq!(f.max(), f);
        assert_eq!(f.min(), f);
    }

    #[test]
    fn downward_closed_sandwich() {
        let f = fam(&[&["1000", "0110"]]).low().unwrap();
        let mx = f.max();
        assert!(mx.iter().all(|m| f.contains(m)));
        assert_eq!(mx.low().unwrap(), f);
    }

    #[test]
    fn covers_and_max_in() {
        let f = fam(&[&[], &["1000"], &["0100"], &["1000", "0100"], &["1000", "0100", "0010", "0001"]]);
        let zero = Subspace::zero(2, 4).unwrap();
        assert_eq!(f.covers_of(&zero).unwrap(), fam(&[&["1000"], &["0100"]]));
        assert!(f.is_cover(&s(&["1000"]), &s(&["1000", "0100"])).unwrap());
        assert!(!f.is_cover(&zero, &s(&["1000", "0100"])).unwrap());
        let top = Subspace::full(2, 4).unwrap();
        assert!(f.covers_of(&top).unwrap().is_empty());
        assert_eq!(f.covers_of(&s(&["0010"])), Err(Error::NotAMember));
        assert_eq!(f.max_in(&s(&["1000", "0010"])).unwrap(), fam(&[&["1000"]]));
        assert_eq!(f.max_in(&zero).unwrap(), fam(&[&[]]));
    }
}
