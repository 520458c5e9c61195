//! Subspaces of F_q^n in reduced row echelon form.
//!
//! Vectors are packed into a `u64`, coordinate 0 in the most significant
//! position: one bit per coordinate for q = 2, one nibble otherwise. With that
//! layout numeric order on packed rows is lexicographic order on digit strings.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Packing {
    q: u32,
    n: usize,
    width: u32,
    mask: u64,
}

impl Packing {
    pub(crate) fn new(q: u32, n: usize) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NonPrimeModulus(q as u64));
        }
        if q > 13 {
            return Err(Error::Unsupported(format!("packed vectors need q <= 13, got {q}")));
        }
        let width = if q == 2 { 1 } else { 4 };
        if n as u32 * width > 64 {
            return Err(Error::Unsupported(format!("ambient dimension {n} too large for q = {q}")));
        }
        Ok(Packing { q, n, width, mask: (1 << width) - 1 })
    }

    fn shift(&self, j: usize) -> u32 {
        (self.n - 1 - j) as u32 * self.width
    }

    pub(crate) fn get(&self, v: u64, j: usize) -> u32 {
        ((v >> self.shift(j)) & self.mask) as u32
    }

    pub(crate) fn from_digits(&self, digits: &[u32]) -> u64 {
        digits.iter().enumerate().fold(0, |acc, (j, &d)| acc | (d as u64) << self.shift(j))
    }

    pub(crate) fn digits(&self, v: u64) -> Vec<u32> {
        (0..self.n).map(|j| self.get(v, j)).collect()
    }

    /// a + c·b
    pub(crate) fn axpy(&self, a: u64, c: u32, b: u64) -> u64 {
        if self.q == 2 {
            return if c & 1 == 1 { a ^ b } else { a };
        }
        let mut out = 0;
        for j in 0..self.n {
            let s = self.shift(j);
            let d = (((a >> s) & self.mask) as u32 + c * ((b >> s) & self.mask) as u32) % self.q;
            out |= (d as u64) << s;
        }
        out
    }

    pub(crate) fn scale(&self, v: u64, c: u32) -> u64 {
        self.axpy(0, c, v)
    }

    /// Column of the first nonzero coordinate.
    pub(crate) fn leading(&self, v: u64) -> Option<usize> {
        if v == 0 {
            None
        } else {
            let top = (63 - v.leading_zeros()) / self.width;
            Some(self.n - 1 - top as usize)
        }
    }

    /// Scale `v` so its leading coordinate is 1.
    pub(crate) fn normalize(&self, v: u64) -> u64 {
        match self.leading(v) {
            None => 0,
            Some(c) => {
                let lead = self.get(v, c);
                if lead == 1 {
                    v
                } else {
                    self.scale(v, self.inv(lead))
                }
            }
        }
    }

    pub(crate) fn neg(&self, c: u32) -> u32 {
        (self.q - c % self.q) % self.q
    }

    pub(crate) fn inv(&self, c: u32) -> u32 {
        (1..self.q).find(|&x| x * c % self.q == 1).expect("nonzero digit")
    }
}

/// Insert `v` into an RREF basis kept sorted by pivot column.
fn insert_row(p: &Packing, rows: &mut Vec<u64>, mut v: u64) {
    for &r in rows.iter() {
        let c = p.leading(r).unwrap();
        let d = p.get(v, c);
        if d != 0 {
            v = p.axpy(v, p.neg(d), r);
        }
    }
    if v == 0 {
        return;
    }
    v = p.normalize(v);
    let c = p.leading(v).unwrap();
    for r in rows.iter_mut() {
        let d = p.get(*r, c);
        if d != 0 {
            *r = p.axpy(*r, p.neg(d), v);
        }
    }
    let pos = rows.iter().position(|&r| p.leading(r).unwrap() > c).unwrap_or(rows.len());
    rows.insert(pos, v);
}

/// A subspace of F_q^n stored as its unique RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    q: u32,
    n: usize,
    rows: Vec<u64>,
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.n, self.rows.len())
            .cmp(&(other.q, other.n, other.rows.len()))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_strings().join(","))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn digit_char(d: u32) -> char {
    char::from_digit(d, 16).unwrap()
}

impl Subspace {
    pub(crate) fn packing(&self) -> Packing {
        Packing::new(self.q, self.n).expect("validated at construction")
    }

    pub(crate) fn from_packed(q: u32, n: usize, gens: impl IntoIterator<Item = u64>) -> Result<Self> {
        let p = Packing::new(q, n)?;
        let mut rows = Vec::new();
        for g in gens {
            insert_row(&p, &mut rows, g);
            if rows.len() == n {
                break;
            }
        }
        Ok(Subspace { q, n, rows })
    }

    /// Span of `generators`, each a length-n vector with entries in [0, q).
    pub fn canonicalize(generators: &[Vec<u32>], q: u32, n: usize) -> Result<Self> {
        let p = Packing::new(q, n)?;
        let mut packed = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch(format!("vector of length {} in F_{q}^{n}", g.len())));
            }
            if let Some(&d) = g.iter().find(|&&d| d >= q) {
                return Err(Error::DimensionMismatch(format!("entry {d} is not in GF({q})")));
            }
            packed.push(p.from_digits(g));
        }
        Self::from_packed(q, n, packed)
    }

    /// Parse row strings such as `["110000", "001100"]`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S], q: u32, n: usize) -> Result<Self> {
        let mut gens = Vec::with_capacity(rows.len());
        for r in rows {
            let v: Option<Vec<u32>> = r.as_ref().chars().map(|c| c.to_digit(16)).collect();
            gens.push(v.ok_or_else(|| Error::Parse(format!("bad vector {:?}", r.as_ref())))?);
        }
        Self::canonicalize(&gens, q, n)
    }

    pub fn zero(q: u32, n: usize) -> Result<Self> {
        Packing::new(q, n)?;
        Ok(Subspace { q, n, rows: Vec::new() })
    }

    pub fn full(q: u32, n: usize) -> Result<Self> {
        let p = Packing::new(q, n)?;
        let rows = (0..n).map(|j| 1u64 << p.shift(j)).collect();
        Ok(Subspace { q, n, rows })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Packed RREF rows ordered by pivot column.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        let p = self.packing();
        self.rows.iter().map(|&r| p.digits(r)).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let p = self.packing();
        self.rows.iter().map(|&r| p.leading(r).unwrap()).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        let p = self.packing();
        self.rows.iter().map(|&r| p.digits(r).into_iter().map(digit_char).collect()).collect()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "F_{}^{} versus F_{}^{}",
                self.q, self.n, other.q, other.n
            )));
        }
        Ok(())
    }

    fn reduce(&self, p: &Packing, mut v: u64) -> u64 {
        for &r in &self.rows {
            let d = p.get(v, p.leading(r).unwrap());
            if d != 0 {
                v = p.axpy(v, p.neg(d), r);
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!("vector of length {} in F_{}^{}", v.len(), self.q, self.n)));
        }
        let p = self.packing();
        Ok(self.reduce(&p, p.from_digits(v)) == 0)
    }

    /// Whether `other` ⊆ `self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        let p = self.packing();
        Ok(other.rows.iter().all(|&r| self.reduce(&p, r) == 0))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Self::from_packed(self.q, self.n, self.rows.iter().chain(&other.rows).copied())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        self.perp().sum(&other.perp()).map(|s| s.perp())
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self) -> Self {
        let p = self.packing();
        let pivots = self.pivots();
        let mut gens = Vec::with_capacity(self.n - self.rows.len());
        for f in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut y = vec![0u32; self.n];
            y[f] = 1;
            for (&r, &pc) in self.rows.iter().zip(&pivots) {
                y[pc] = p.neg(p.get(r, f));
            }
            gens.push(p.from_digits(&y));
        }
        Self::from_packed(self.q, self.n, gens).unwrap()
    }

    /// All vectors of the subspace (q^dim of them), as packed words.
    pub(crate) fn packed_vectors(&self) -> Vec<u64> {
        let p = self.packing();
        let mut out = vec![0u64];
        for &r in &self.rows {
            let cur = out.clone();
            for c in 1..self.q {
                out.extend(cur.iter().map(|&v| p.axpy(v, c, r)));
            }
        }
        out
    }

    /// The one-dimensional subspaces contained in this one, as normalized packed vectors.
    pub(crate) fn packed_lines(&self) -> Vec<u64> {
        let p = self.packing();
        self.packed_vectors().into_iter().filter(|&v| v != 0 && p.normalize(v) == v).collect()
    }
}
