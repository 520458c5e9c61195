//! Prime fields GF(q) and extensions GF(q^m) with a fixed primitive element.
//!
//! Extension elements are dense coefficient vectors over the basis
//! 1, α, …, α^{m−1}. The modulus defaults to the least monic primitive
//! polynomial, comparing polynomials as base-q numerals, so α and every label
//! derived from it are reproducible.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest field order accepted by [`ExtField::build`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
const LOG_TABLE_LIMIT: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NonPrimeModulus(q as u64));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.q) {
            None
        } else {
            Some(self.pow(a, self.q as u64 - 2))
        }
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let factors = prime_factors(self.q as u64 - 1);
        (2..self.q)
            .find(|&g| factors.iter().all(|&p| self.pow(g, (self.q as u64 - 1) / p) != 1))
            .expect("every prime field has a primitive root")
    }
}

/// An element of GF(q^m): coefficients of 1, α, …, α^{m−1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem {
    coeffs: Vec<u32>,
}

impl ExtElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(q^m) = GF(q)[x]/(f) with α the residue of x (for m = 1, α is the least
/// primitive root of GF(q) and the modulus is x).
#[derive(Clone)]
pub struct ExtField {
    base: PrimeField,
    m: usize,
    modulus: Vec<u32>,
    alpha: ExtElem,
    alpha_order_checked: bool,
    order: u64,
    logs: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.base.q)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

fn checked_order(q: u32, m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::Unsupported("extension degree must be positive".into()));
    }
    let mut order: u64 = 1;
    for _ in 0..m {
        order = order.saturating_mul(q as u64);
        if order > MAX_FIELD_ORDER {
            return Err(Error::DegreeTooLarge { q: q as u64, m });
        }
    }
    Ok(order)
}

// Polynomials below are coefficient vectors, low degree first, over GF(q).

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `f`.
fn poly_rem(fq: &PrimeField, a: &[u32], f: &[u32]) -> Vec<u32> {
    let df = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for (i, &c) in f.iter().enumerate() {
                r[shift + i] = fq.sub(r[shift + i], fq.mul(lead, c));
            }
        }
        r.pop();
    }
    r.resize(df, 0);
    r
}

fn poly_mulmod(fq: &PrimeField, a: &[u32], b: &[u32], f: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = fq.add(prod[i + j], fq.mul(x, y));
        }
    }
    poly_rem(fq, &prod, f)
}

fn poly_powmod(fq: &PrimeField, a: &[u32], mut e: u64, f: &[u32]) -> Vec<u32> {
    let m = f.len() - 1;
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut base = poly_rem(fq, a, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(fq, &acc, &base, f);
        }
        base = poly_mulmod(fq, &base, &base, f);
        e >>= 1;
    }
    acc
}

fn poly_is_irreducible(fq: &PrimeField, f: &[u32]) -> bool {
    let m = f.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    let q = fq.q as u64;
    for deg in 1..=m / 2 {
        let count = q.pow(deg as u32);
        for t in 0..count {
            let mut d = Vec::with_capacity(deg + 1);
            let mut v = t;
            for _ in 0..deg {
                d.push((v % q) as u32);
                v /= q;
            }
            d.push(1);
            if poly_trim(poly_rem(fq, f, &d)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Whether x has multiplicative order q^m − 1 modulo the monic `f` of degree m ≥ 2.
fn poly_x_is_primitive(fq: &PrimeField, f: &[u32]) -> bool {
    let m = f.len() - 1;
    let n = (fq.q as u64).pow(m as u32) - 1;
    let x = vec![0, 1];
    let mut one = vec![0u32; m];
    one[0] = 1;
    if poly_powmod(fq, &x, n, f) != one {
        return false;
    }
    prime_factors(n).into_iter().all(|p| poly_powmod(fq, &x, n / p, f) != one)
}

impl ExtField {
    /// GF(q^m) with the least primitive monic modulus of degree m.
    pub fn build(q: u32, m: usize) -> Result<Self> {
        let base = PrimeField::new(q)?;
        let order = checked_order(q, m)?;
        if m == 1 {
            return Ok(Self::assemble(base, vec![0, 1], order));
        }
        for t in 0..order {
            let mut f = Vec::with_capacity(m + 1);
            let mut v = t;
            for _ in 0..m {
                f.push((v % q as u64) as u32);
                v /= q as u64;
            }
            f.push(1);
            if f[0] == 0 {
                continue;
            }
            if poly_is_irreducible(&base, &f) && poly_x_is_primitive(&base, &f) {
                return Ok(Self::assemble(base, f, order));
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    /// GF(q^m) with a caller-supplied modulus (low degree first, monic).
    pub fn with_modulus(q: u32, modulus: Vec<u32>) -> Result<Self> {
        let base = PrimeField::new(q)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(Error::BadModulus(modulus));
        }
        let m = modulus.len() - 1;
        let order = checked_order(q, m)?;
        if m == 1 {
            if modulus != [0, 1] {
                return Err(Error::BadModulus(modulus));
            }
            return Ok(Self::assemble(base, modulus, order));
        }
        if !poly_is_irreducible(&base, &modulus) || !poly_x_is_primitive(&base, &modulus) {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Self::assemble(base, modulus, order))
    }

    fn assemble(base: PrimeField, modulus: Vec<u32>, order: u64) -> Self {
        let m = modulus.len() - 1;
        let mut alpha = vec![0u32; m];
        if m == 1 {
            alpha[0] = base.primitive_root();
        } else {
            alpha[1] = 1;
        }
        ExtField {
            base,
            m,
            modulus,
            alpha: ExtElem { coeffs: alpha },
            alpha_order_checked: true,
            order,
            logs: OnceLock::new(),
        }
    }

    pub fn q(&self) -> u32 {
        self.base.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn prime_field(&self) -> PrimeField {
        self.base
    }

    /// Number of elements, q^m.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> ExtElem {
        self.alpha.clone()
    }

    pub fn alpha_order_checked(&self) -> bool {
        self.alpha_order_checked
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> ExtElem {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> ExtElem {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.base.q;
        ExtElem { coeffs }
    }

    pub fn from_coeffs(&self, coeffs: Vec<u32>) -> Result<ExtElem> {
        if coeffs.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.base.q) {
            return Err(Error::Parse(format!("coefficient {c} out of range for q = {}", self.base.q)));
        }
        Ok(ExtElem { coeffs })
    }

    /// Coordinates of `theta` over GF(q) with respect to 1, α, …, α^{m−1}.
    pub fn gamma(&self, theta: &ExtElem) -> Vec<u32> {
        theta.coeffs.clone()
    }

    pub fn gamma_inv(&self, v: &[u32]) -> Result<ExtElem> {
        self.from_coeffs(v.to_vec())
    }

    pub fn encode(&self, a: &ExtElem) -> u32 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.base.q as u64 + c as u64) as u32
    }

    pub fn decode(&self, mut code: u32) -> ExtElem {
        let q = self.base.q;
        let coeffs = (0..self.m)
            .map(|_| {
                let c = code % q;
                code /= q;
                c
            })
            .collect();
        ExtElem { coeffs }
    }

    /// All field elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order as u32).map(move |c| self.decode(c))
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.add(x, y)).collect();
        ExtElem { coeffs }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.sub(x, y)).collect();
        ExtElem { coeffs }
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        self.sub(&self.zero(), a)
    }

    /// Multiplication by an element of the prime field.
    pub fn scale(&self, c: u32, a: &ExtElem) -> ExtElem {
        let coeffs = a.coeffs.iter().map(|&x| self.base.mul(c, x)).collect();
        ExtElem { coeffs }
    }

    fn logs(&self) -> Option<&LogTables> {
        self.logs
            .get_or_init(|| {
                if self.order > LOG_TABLE_LIMIT {
                    return None;
                }
                let n = (self.order - 1) as usize;
                let mut exp = Vec::with_capacity(n);
                let mut log = vec![0u32; self.order as usize];
                let mut cur = self.one();
                for k in 0..n {
                    let code = self.encode(&cur);
                    exp.push(code);
                    log[code as usize] = k as u32;
                    cur = self.mul_poly(&cur, &self.alpha);
                }
                Some(LogTables { exp, log })
            })
            .as_ref()
    }

    fn mul_poly(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem { coeffs: poly_mulmod(&self.base, &a.coeffs, &b.coeffs, &self.modulus) }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        match self.logs() {
            Some(t) => {
                let n = t.exp.len() as u64;
                let k = (t.log[self.encode(a) as usize] as u64 + t.log[self.encode(b) as usize] as u64) % n;
                self.decode(t.exp[k as usize])
            }
            None => self.mul_poly(a, b),
        }
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        if let Some(t) = self.logs() {
            let n = t.exp.len() as u64;
            let k = (t.log[self.encode(a) as usize] as u128 * (e % n) as u128) % n as u128;
            return self.decode(t.exp[k as usize]);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(&acc, &base);
            }
            base = self.mul_poly(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// α^k, with k taken modulo q^m − 1.
    pub fn alpha_pow(&self, k: u64) -> ExtElem {
        self.pow(&self.alpha, k % (self.order - 1))
    }

    /// Discrete logarithm to base α; `None` for zero.
    pub fn log_alpha(&self, a: &ExtElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        if let Some(t) = self.logs() {
            return Some(t.log[self.encode(a) as usize] as u64);
        }
        let mut cur = self.one();
        for k in 0..self.order - 1 {
            if &cur == a {
                return Some(k);
            }
            cur = self.mul_poly(&cur, &self.alpha);
        }
        None
    }

    pub fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }
}

/// Row rank of a matrix over GF(q^m) by Gaussian elimination.
pub fn matrix_rank_ext(field: &ExtField, rows: &[Vec<ExtElem>]) -> usize {
    let mut a: Vec<Vec<ExtElem>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = field.inv(&a[rank][col]).unwrap();
        let pivot: Vec<ExtElem> = a[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..ncols {
                a[r][c] = field.sub(&a[r][c], &field.mul(&f, &pivot[c]));
            }
        }
        a[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix over GF(q^m).
pub fn determinant(field: &ExtField, rows: &[Vec<ExtElem>]) -> ExtElem {
    let n = rows.len();
    let mut a: Vec<Vec<ExtElem>> = rows.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return field.zero();
        };
        if p != col {
            a.swap(p, col);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[col][col]);
        let inv = field.inv(&a[col][col]).unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = field.mul(&a[r][col], &inv);
            for c in col..n {
                a[r][c] = field.sub(&a[r][c], &field.mul(&f, &a[col][c]));
            }
        }
    }
    det
}

/// Rows `elems^(step^i)` for i = 0..rows.
pub fn moore_matrix(field: &ExtField, elems: &[ExtElem], step: u64, rows: usize) -> Vec<Vec<ExtElem>> {
    let mut out: Vec<Vec<ExtElem>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let row = if i == 0 {
            elems.to_vec()
        } else {
            out[i - 1].iter().map(|x| field.pow(x, step)).collect()
        };
        out.push(row);
    }
    out
}

/// Determinant of the square Moore matrix of `elems` with Frobenius step `step`.
pub fn moore_determinant(field: &ExtField, elems: &[ExtElem], step: u64) -> Result<ExtElem> {
    if elems.is_empty() {
        return Err(Error::EmptyList);
    }
    Ok(determinant(field, &moore_matrix(field, elems, step, elems.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force least primitive modulus for q = 2 using u64 bit polynomials.
    fn oracle_least_primitive_gf2(m: u32) -> u64 {
        let reduce = |mut v: u64, f: u64| {
            while v >> m != 0 {
                let shift = 63 - v.leading_zeros() - m;
                v ^= f << shift;
            }
            v
        };
        'cand: for low in 0..(1u64 << m) {
            let f = (1 << m) | low;
            let mut cur = 1u64;
            let n = (1u64 << m) - 1;
            for k in 1..=n {
                cur = reduce(cur << 1, f);
                if cur == 1 {
                    if k == n {
                        return f;
                    }
                    continue 'cand;
                }
            }
        }
        unreachable!()
    }

    fn bits_of(modulus: &[u32]) -> u64 {
        modulus.iter().enumerate().map(|(i, &c)| (c as u64) << i).sum()
    }

    #[test]
    fn least_primitive_modulus_matches_bruteforce() {
        for m in 2..=8 {
            let f = ExtField::build(2, m).unwrap();
            assert_eq!(bits_of(f.modulus()), oracle_least_primitive_gf2(m as u32), "m = {m}");
        }
        assert_eq!(ExtField::build(2, 6).unwrap().modulus(), &[1, 1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn prime_field_degenerate_case() {
        let f = ExtField::build(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.alpha(), f.one());
        let f5 = ExtField::build(5, 1).unwrap();
        assert_eq!(f5.alpha().coeffs(), &[2]);
        assert_eq!(f5.gamma(&f5.constant(3)), vec![3]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(ExtField::build(4, 2).unwrap_err(), Error::NonPrimeModulus(4));
        assert!(matches!(ExtField::build(2, 21), Err(Error::DegreeTooLarge { .. })));
        assert!(ExtField::build(2, 20).is_ok());
        assert!(matches!(ExtField::with_modulus(2, vec![1, 0, 0, 0, 0, 0, 1]), Err(Error::BadModulus(_))));
        assert!(ExtField::with_modulus(2, vec![1, 1, 0, 0, 0, 0, 1]).is_ok());
    }

    #[test]
    fn alpha_order_in_gf64() {
        let f = ExtField::build(2, 6).unwrap();
        let a = f.alpha();
        let mut cur = a.clone();
        let mut order = 1;
        while cur != f.one() {
            cur = f.mul(&cur, &a);
            order += 1;
        }
        assert_eq!(order, 63);
        let b = f.alpha_pow(9);
        let mut cur = b.clone();
        let mut order = 1;
        while cur != f.one() {
            cur = f.mul(&cur, &b);
            order += 1;
        }
        assert_eq!(order, 7);
    }

    #[test]
    fn gamma_examples() {
        let f = ExtField::build(2, 6).unwrap();
        assert_eq!(f.gamma(&f.one()), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(f.gamma(&f.alpha_pow(2)), vec![0, 0, 1, 0, 0, 0]);
        assert_eq!(f.gamma(&f.alpha_pow(6)), vec![1, 1, 0, 0, 0, 0]);
        let f3 = ExtField::build(3, 3).unwrap();
        let neg_low: Vec<u32> = f3.modulus()[..3].iter().map(|&c| (3 - c) % 3).collect();
        assert_eq!(f3.gamma(&f3.alpha_pow(3)), neg_low);
    }

    #[test]
    fn field_axioms_exact_parts() {
        for (q, m) in [(2, 6), (3, 3), (5, 2), (2, 12), (7, 1)] {
            let f = ExtField::build(q, m).unwrap();
            let one = f.one();
            for a in f.elements() {
                assert_eq!(f.add(&a, &f.zero()), a);
                assert_eq!(f.mul(&a, &one), a);
                assert!(f.add(&a, &f.neg(&a)).is_zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), one);
                }
            }
        }
    }

    #[test]
    fn log_and_poly_multiplication_agree() {
        let f = ExtField::build(3, 4).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(5) {
                assert_eq!(f.mul(&a, &b), f.mul_poly(&a, &b));
            }
        }
    }

    fn gf2_rank(vectors: &[u64]) -> usize {
        let mut basis: Vec<u64> = Vec::new();
        for &v in vectors {
            let mut v = v;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    #[test]
    fn moore_determinant_detects_independence_gf16() {
        let f = ExtField::build(2, 4).unwrap();
        let codes: Vec<u32> = (0..16).collect();
        for len in 1..=3usize {
            let total = 16usize.pow(len as u32);
            for t in 0..total {
                let tuple: Vec<u32> = (0..len).map(|i| codes[(t / 16usize.pow(i as u32)) % 16]).collect();
                let elems: Vec<ExtElem> = tuple.iter().map(|&c| f.decode(c)).collect();
                let independent = gf2_rank(&tuple.iter().map(|&c| c as u64).collect::<Vec<_>>()) == len;
                let det = moore_determinant(&f, &elems, 2).unwrap();
                assert_eq!(!det.is_zero(), independent, "{tuple:?}");
            }
        }
    }

    fn product_formula(f: &ExtField, elems: &[ExtElem]) -> ExtElem {
        let mut acc = elems[0].clone();
        for j in 1..elems.len() {
            for mask in 0u32..(1 << j) {
                let mut comb = f.zero();
                for (k, e) in elems.iter().take(j).enumerate() {
                    if mask >> k & 1 == 1 {
                        comb = f.add(&comb, e);
                    }
                }
                acc = f.mul(&acc, &f.sub(&elems[j], &comb));
            }
        }
        acc
    }

    #[test]
    fn moore_determinant_product_formula_gf8() {
        let f = ExtField::build(2, 3).unwrap();
        for len in 1..=3usize {
            for t in 0..8usize.pow(len as u32) {
                let elems: Vec<ExtElem> = (0..len).map(|i| f.decode(((t >> (3 * i)) & 7) as u32)).collect();
                assert_eq!(moore_determinant(&f, &elems, 2).unwrap(), product_formula(&f, &elems));
            }
        }
    }

    #[test]
    fn moore_determinant_examples() {
        let f = ExtField::build(2, 6).unwrap();
        let a = f.alpha_pow(5);
        assert!(moore_determinant(&f, &[a.clone(), a.clone()], 2).unwrap().is_zero());
        assert_eq!(moore_determinant(&f, std::slice::from_ref(&a), 2).unwrap(), a);
        assert!(!moore_determinant(&f, &[f.one(), f.alpha()], 2).unwrap().is_zero());
        assert_eq!(moore_determinant(&f, &[], 2), Err(Error::EmptyList));
    }

    #[test]
    fn rank_examples() {
        let f = ExtField::build(2, 6).unwrap();
        assert_eq!(matrix_rank_ext(&f, &vec![vec![f.zero(); 6]; 2]), 0);
        let id: Vec<Vec<ExtElem>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        assert_eq!(matrix_rank_ext(&f, &id), 3);
    }

    proptest! {
        #[test]
        fn gamma_is_linear(a in 0u32..3, b in 0u32..3, x in 0u32..243, y in 0u32..243) {
            let f = ExtField::build(3, 5).unwrap();
            let (x, y) = (f.decode(x), f.decode(y));
            let lhs = f.gamma(&f.add(&f.scale(a, &x), &f.scale(b, &y)));
            let rhs: Vec<u32> = f.gamma(&x).iter().zip(f.gamma(&y))
                .map(|(&u, v)| (a * u + b * v) % 3).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn associative_and_distributive(a in 0u32..4096, b in 0u32..4096, c in 0u32..4096) {
            let f = ExtField::build(2, 12).unwrap();
            let (a, b, c) = (f.decode(a), f.decode(b), f.decode(c));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        }
    }
}
