//! Representable q-matroids M[G] and the Desarguesian spread rank formula.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{matrix_rank_ext, moore_determinant, ExtElem, ExtField};
use crate::lattice::Lattice;
use crate::matroid::{Provenance, QMatroid};
use crate::subspace::Subspace;

/// A k×n matrix over GF(q^m) of full row rank k.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    field: ExtField,
    entries: Vec<Vec<ExtElem>>,
}

impl GeneratorMatrix {
    pub fn new(field: ExtField, entries: Vec<Vec<ExtElem>>) -> Result<Self> {
        let n = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows differ in length".into()));
        }
        if entries.iter().flatten().any(|x| x.coeffs().len() != field.m()) {
            return Err(Error::DimensionMismatch("entry outside the field".into()));
        }
        let rank = matrix_rank_ext(&field, &entries);
        if rank != entries.len() {
            return Err(Error::RankDeficientG { rank, k: entries.len() });
        }
        Ok(GeneratorMatrix { field, entries })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entries(&self) -> &[Vec<ExtElem>] {
        &self.entries
    }

    /// Columns of G·Y for the GF(q)-vectors `basis`, returned as rows.
    fn image(&self, basis: &[Vec<u32>]) -> Vec<Vec<ExtElem>> {
        let f = &self.field;
        basis
            .iter()
            .map(|v| {
                self.entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(v)
                            .filter(|(_, &c)| c != 0)
                            .fold(f.zero(), |acc, (g, &c)| f.add(&acc, &f.scale(c, g)))
                    })
                    .collect()
            })
            .collect()
    }

    /// F_{q^m}-rank of G·Y where the columns of Y span `a`.
    pub fn rank_of(&self, a: &Subspace) -> Result<usize> {
        if a.q() != self.field.q() || a.n() != self.n() {
            return Err(Error::DimensionMismatch(format!("{a} is not a subspace of F_{}^{}", self.field.q(), self.n())));
        }
        Ok(matrix_rank_ext(&self.field, &self.image(&a.basis())))
    }
}

/// M[G]: r(A) = rank of G·Y over GF(q^m).
pub fn matroid_from_matrix(g: &GeneratorMatrix) -> Result<QMatroid> {
    let lat = Lattice::shared(g.field.q(), g.n())?;
    let ranks = lat.spaces().par_iter().map(|a| g.rank_of(a).map(|r| r as u32)).collect::<Result<Vec<_>>>()?;
    let description = format!("{}x{} matrix over GF({}^{})", g.k(), g.n(), g.field.q(), g.field.m());
    Ok(QMatroid::assemble(lat, ranks, Provenance::Representable { description }))
}

/// The spread {G_1, …, G_e} of F_q^m with G_i = ⟨α^i, α^{i+e}, …, α^{i+(s−1)e}⟩.
#[derive(Clone, Debug)]
pub struct Spread {
    field: ExtField,
    s: usize,
    e: u64,
    elements: Vec<Subspace>,
}

pub fn build_spread(q: u32, s: usize, m: usize) -> Result<Spread> {
    if s == 0 || m == 0 || !m.is_multiple_of(s) {
        return Err(Error::BadDivisibility { s, m });
    }
    build_spread_in(&ExtField::build(q, m)?, s)
}

/// The spread inside a given GF(q^m), using that field's α.
pub fn build_spread_in(field: &ExtField, s: usize) -> Result<Spread> {
    let (q, m) = (field.q(), field.m());
    if s == 0 || m % s != 0 {
        return Err(Error::BadDivisibility { s, m });
    }
    let e = (field.order() - 1) / ((q as u64).pow(s as u32) - 1);
    let elements = (1..=e)
        .map(|i| {
            let gens: Vec<Vec<u32>> = (0..s as u64).map(|j| field.gamma(&field.alpha_pow(i + j * e))).collect();
            Subspace::canonicalize(&gens, q, m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spread { field: field.clone(), s, e, elements })
}

impl Spread {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    /// Number of elements, (q^m − 1)/(q^s − 1).
    pub fn e(&self) -> u64 {
        self.e
    }

    /// G_1, …, G_e (G_i at position i − 1).
    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    /// G_i for 1 ≤ i ≤ e.
    pub fn element(&self, i: u64) -> &Subspace {
        &self.elements[(i - 1) as usize]
    }

    fn index_of_vector(&self, v: &[u32]) -> Result<u64> {
        let theta = self.field.gamma_inv(v)?;
        let log = self.field.log_alpha(&theta).ok_or(Error::ZeroSpace)?;
        Ok(match log % self.e {
            0 => self.e,
            i => i,
        })
    }

    /// Index found by scanning the elements for membership.
    pub fn index_by_scan(&self, v: &[u32]) -> Result<u64> {
        if v.iter().all(|&c| c == 0) {
            return Err(Error::ZeroSpace);
        }
        let hits: Vec<u64> = (1..=self.e).filter(|&i| self.element(i).contains_vector(v).unwrap_or(false)).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::DimensionMismatch(format!("vector lies in {} spread elements", hits.len()))),
        }
    }
}

/// The unique i with x ⊆ G_i, via log_α(x) mod e.
pub fn spread_index_of(spread: &Spread, x: &Subspace) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroSpace);
    }
    if x.dim() != 1 || x.n() != spread.m() || x.q() != spread.q() {
        return Err(Error::DimensionMismatch(format!("{x} is not a line of F_{}^{}", spread.q(), spread.m())));
    }
    spread.index_of_vector(&x.basis()[0])
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The p×ps matrix with row j equal to (α^{i·q^{js}})_{i<ps}.
pub fn theorem_matrix(p: usize, s: usize, q: u32) -> Result<GeneratorMatrix> {
    theorem_matrix_in(&ExtField::build(q, p * s)?, p, s)
}

pub fn theorem_matrix_in(field: &ExtField, p: usize, s: usize) -> Result<GeneratorMatrix> {
    if p == 0 || s == 0 || gcd(p, s) != 1 {
        return Err(Error::NotCoprime { p, s });
    }
    let m = p * s;
    if field.m() != m {
        return Err(Error::DimensionMismatch(format!("field degree {} is not {p}·{s}", field.m())));
    }
    let qs = (field.q() as u64).pow(s as u32);
    let rows = (0..p as u32)
        .map(|j| {
            let base = field.pow(&field.alpha(), qs.pow(j));
            (0..m as u64).map(|i| field.pow(&base, i)).collect()
        })
        .collect();
    GeneratorMatrix::new(field.clone(), rows)
}

/// Everything the closed-form rank of M[G] for the theorem matrix needs.
#[derive(Clone, Debug)]
pub struct SpreadRankInput {
    p: usize,
    matrix: GeneratorMatrix,
    spread: Spread,
}

impl SpreadRankInput {
    pub fn new(p: usize, s: usize, q: u32) -> Result<Self> {
        if p == 0 || s == 0 || gcd(p, s) != 1 {
            return Err(Error::NotCoprime { p, s });
        }
        Self::in_field(&ExtField::build(q, p * s)?, p, s)
    }

    pub fn in_field(field: &ExtField, p: usize, s: usize) -> Result<Self> {
        let matrix = theorem_matrix_in(field, p, s)?;
        let spread = build_spread_in(field, s)?;
        Ok(SpreadRankInput { p, matrix, spread })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn s(&self) -> usize {
        self.spread.s
    }

    pub fn matrix(&self) -> &GeneratorMatrix {
        &self.matrix
    }

    pub fn spread(&self) -> &Spread {
        &self.spread
    }

    /// 𝒮: spread indices of the vectors of `basis`, ascending and distinct.
    pub fn support(&self, basis: &[Vec<u32>]) -> Result<Vec<u64>> {
        let mut idx = basis.iter().map(|v| self.spread.index_of_vector(v)).collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    /// μ: dimension over GF(q^s) of ⟨α^ℓ : ℓ ∈ 𝒮⟩, by greedy Moore-determinant tests.
    pub fn mu(&self, support: &[u64]) -> usize {
        let f = &self.spread.field;
        let step = (f.q() as u64).pow(self.spread.s as u32);
        let mut kept: Vec<ExtElem> = Vec::new();
        for &l in support {
            kept.push(f.alpha_pow(l));
            if moore_determinant(f, &kept, step).map_or(true, |d| d.is_zero()) {
                kept.pop();
            }
        }
        kept.len()
    }

    /// μ recomputed as dim_Fq(Σ_{ℓ∈𝒮} G_ℓ) / s.
    pub fn mu_by_span(&self, support: &[u64]) -> Result<usize> {
        let mut sum = Subspace::zero(self.spread.q(), self.spread.m())?;
        for &l in support {
            sum = sum.sum(self.spread.element(l))?;
        }
        Ok(sum.dim() / self.spread.s)
    }

    /// min(p, μ) for the given basis of a subspace.
    pub fn rank_for_basis(&self, basis: &[Vec<u32>]) -> Result<usize> {
        Ok(self.p.min(self.mu(&self.support(basis)?)))
    }
}

/// min(p, μ) computed from the RREF basis of `a`.
pub fn rank_via_spread_formula(input: &SpreadRankInput, a: &Subspace) -> Result<usize> {
    if a.q() != input.spread.q() || a.n() != input.spread.m() {
        return Err(Error::DimensionMismatch(format!("{a} is not a subspace of F_{}^{}", input.spread.q(), input.spread.m())));
    }
    input.rank_for_basis(&a.basis())
}
