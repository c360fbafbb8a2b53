//! Closed-form counts of LCD and GI-reducible codes, orders of orthogonal
//! groups, and an exhaustive census of all `k`-dimensional subspaces of
//! `F_q^n` to check them against.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{LinearCode, StructureParams};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::MatrixFq;

/// Largest number of subspaces [`grassmannian_census`] will visit by default.
pub const DEFAULT_CENSUS_CAP: u64 = 10_000_000;

/// Square class of a discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaClass {
    Square,
    Nonsquare,
}

fn require_odd(field: &Field) -> Result<()> {
    if field.is_odd() {
        Ok(())
    } else {
        Err(Error::CharacteristicTwo)
    }
}

fn check_eps(eps: i8) -> Result<()> {
    match eps {
        1 | -1 => Ok(()),
        _ => Err(Error::Precondition(format!("type must be +1 or -1, got {eps}"))),
    }
}

fn big_pow(base: u64, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

fn chi(field: &Field, x: i64) -> Result<i64> {
    Ok(field.quadratic_character(field.from_int(x))? as i64)
}

fn minus_one_pow(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn to_count(x: BigInt) -> BigUint {
    x.to_biguint().expect("closed-form counts are nonnegative")
}

/// Number of `k`-dimensional subspaces of `F_q^n`; zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= big_pow(q, (n - i) as u64) - 1u32;
        den *= big_pow(q, (i + 1) as u64) - 1u32;
    }
    num / den
}

/// Number of zeros of `Σ dᵢ xᵢ²` on `F_q^n`.
pub fn weil_count(diag: &[FieldElement], field: &Field) -> Result<BigUint> {
    require_odd(field)?;
    if diag.iter().any(|d| d.is_zero()) {
        return Err(Error::DegenerateForm("zero diagonal entry".into()));
    }
    let n = diag.len();
    let q = field.order() as u64;
    if n == 0 {
        return Ok(BigUint::one());
    }
    let main = BigInt::from(big_pow(q, n as u64 - 1));
    if n % 2 == 1 {
        return Ok(to_count(main));
    }
    let det = diag.iter().fold(field.one(), |acc, &d| field.mul(acc, d));
    let sign = field.quadratic_character(field.mul(field.from_int(minus_one_pow(n / 2)), det))?;
    let correction = BigInt::from(sign) * BigInt::from(q - 1) * BigInt::from(big_pow(q, (n as u64 - 2) / 2));
    Ok(to_count(main + correction))
}

/// `|{x ∈ F_q^n : (x, x) = 0, (x, 1) ≠ 0}|`.
pub fn count_k(n: usize, field: &Field) -> Result<BigUint> {
    require_odd(field)?;
    if n < 2 {
        return Err(Error::Precondition(format!("length must be at least 2, got {n}")));
    }
    let q = field.order() as u64;
    let p = field.characteristic() as usize;
    let base = BigInt::from(big_pow(q, n as u64 - 2) * (q - 1));
    if n % p == 0 {
        return Ok(to_count(base));
    }
    let n_mod = (n % p) as i64;
    let (sign, term) = if n % 2 == 1 {
        let s = chi(field, minus_one_pow((n - 1) / 2) * n_mod)?;
        (-s, big_pow(q, (n as u64 - 3) / 2))
    } else {
        let s = chi(field, minus_one_pow(n / 2))?;
        (s, big_pow(q, (n as u64 - 2) / 2))
    };
    Ok(to_count(base + BigInt::from(sign) * BigInt::from(q - 1) * BigInt::from(term)))
}

fn check_dims(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Precondition(format!("dimension {k} exceeds length {n}")));
    }
    Ok(())
}

/// Number of LCD `[n, k]_q` codes under the standard inner product. The
/// zero code and the full space count as LCD.
pub fn count_l(n: usize, k: usize, field: &Field) -> Result<BigUint> {
    if field.is_odd() {
        count_l_eps(n, k, field, 1)
    } else {
        check_dims(n, k)?;
        if k == 0 || k == n {
            return Ok(BigUint::one());
        }
        Ok(count_l_even(n as u64, k as u64, field.order() as u64))
    }
}

fn count_l_even(n: u64, k: u64, q: u64) -> BigUint {
    let q2 = q * q;
    let gb = |a: u64, b: u64| gaussian_binomial(a as usize, b as usize, q2);
    match (k % 2 == 1, n % 2 == 1) {
        (true, false) => big_pow(q, (n * k - k * k + n - 1) / 2) * gb(n / 2 - 1, (k - 1) / 2),
        (true, true) => big_pow(q, (n - k) * (k + 1) / 2) * gb((n - 1) / 2, (k - 1) / 2),
        (false, true) => big_pow(q, k * (n - k + 1) / 2) * gb((n - 1) / 2, k / 2),
        (false, false) => {
            big_pow(q, k * (n - k) / 2)
                * (big_pow(q, n - k) * gb(n / 2 - 1, k / 2 - 1) + gb(n / 2 - 1, k / 2))
        }
    }
}

/// Number of `[n, k]_q` codes that are LCD for `diag(1, …, 1, τ)`, with
/// `τ = 1` for type `+1` and `τ` the smallest non-square for type `-1`.
pub fn count_l_eps(n: usize, k: usize, field: &Field, eps: i8) -> Result<BigUint> {
    require_odd(field)?;
    check_eps(eps)?;
    check_dims(n, k)?;
    if k == 0 || k == n {
        return Ok(BigUint::one());
    }
    let q = field.order() as u64;
    let q2 = q * q;
    let (n, k) = (n as u64, k as u64);
    let gb = |a: u64, b: u64| gaussian_binomial(a as usize, b as usize, q2);
    let count = match (k % 2 == 1, n % 2 == 1) {
        (true, false) => {
            // the type enters as a sign on the character value
            let s = chi(field, minus_one_pow((n / 2) as usize))? * eps as i64;
            let middle = BigInt::from(big_pow(q, n / 2)) - s;
            to_count(BigInt::from(big_pow(q, (k * (n - k) - 1) / 2)) * middle) * gb(n / 2 - 1, (k - 1) / 2)
        }
        (true, true) => big_pow(q, (k + 1) * (n - k) / 2) * gb((n - 1) / 2, (k - 1) / 2),
        (false, true) => big_pow(q, k * (n - k + 1) / 2) * gb((n - 1) / 2, k / 2),
        (false, false) => big_pow(q, k * (n - k) / 2) * gb(n / 2, k / 2),
    };
    Ok(count)
}

/// LCD codes plus hull-line codes whose hull vector is not orthogonal to
/// the all-ones vector.
pub fn count_gi_reducible(n: usize, k: usize, field: &Field) -> Result<BigUint> {
    require_odd(field)?;
    check_dims(n, k)?;
    let lcd = count_l(n, k, field)?;
    if k == 0 || n < 2 || k - 1 > n - 2 {
        return Ok(lcd);
    }
    let q = field.order() as u64;
    let lines = count_k(n, field)? / (q - 1);
    let eps = field.quadratic_character(field.from_int(-1))?;
    Ok(lcd + lines * count_l_eps(n - 2, k - 1, field, eps)?)
}

/// Order of the orthogonal group of `diag(1, …, 1, δ)` on `F_q^m`.
pub fn orth_group_order(m: usize, delta: DeltaClass, field: &Field) -> Result<BigUint> {
    require_odd(field)?;
    if m == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    let q = field.order() as u64;
    let m64 = m as u64;
    let prod = |top: u64| -> BigUint { (1..=top).map(|i| big_pow(q, 2 * i) - 1u32).product() };
    if m % 2 == 1 {
        return Ok(BigUint::from(2u32) * big_pow(q, (m64 - 1) * (m64 - 1) / 4) * prod((m64 - 1) / 2));
    }
    let d = match delta {
        DeltaClass::Square => 1,
        DeltaClass::Nonsquare => -1,
    };
    let s = chi(field, minus_one_pow(m / 2))? * d;
    let middle = to_count(BigInt::from(big_pow(q, m64 / 2)) - s);
    Ok(BigUint::from(2u32) * big_pow(q, m64 * (m64 - 2) / 4) * middle * prod(m64 / 2 - 1))
}

/// `diag(1, …, 1, τ)` with `τ = 1` for type `+1`, the smallest non-square for `-1`.
pub fn type_form(n: usize, field: &Field, eps: i8) -> Result<MatrixFq> {
    require_odd(field)?;
    check_eps(eps)?;
    let mut m = MatrixFq::identity(field, n);
    if eps == -1 && n > 0 {
        m.set(n - 1, n - 1, field.smallest_nonsquare()?);
    }
    Ok(m)
}

/// A code of type `(n, k)` that is LCD for [`type_form`]`(n, eps)` with the
/// requested square class of `det(G M Gᵀ)`.
pub fn reference_code(n: usize, k: usize, field: &Field, eps: i8, delta: DeltaClass) -> Result<LinearCode> {
    require_odd(field)?;
    check_eps(eps)?;
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    let unit = |i: usize| {
        let mut v = vec![FieldElement::ZERO; n];
        v[i] = FieldElement::ONE;
        v
    };
    let mut rows: Vec<Vec<FieldElement>> = (0..k - 1).map(unit).collect();
    match delta {
        DeltaClass::Square => rows.push(unit(k - 1)),
        DeltaClass::Nonsquare => {
            let (a, b) = field.sum_of_two_squares(field.smallest_nonsquare()?)?;
            let (i, j) = if k <= n - 2 { (k - 1, k) } else { (n - 2, n - 1) };
            let v = if k == n - 1 && eps == -1 {
                unit(n - 1)
            } else {
                let mut v = vec![FieldElement::ZERO; n];
                v[i] = a;
                v[j] = b;
                v
            };
            rows.push(v);
        }
    }
    let g = MatrixFq::from_rows(field, n, &rows)?;
    let form = type_form(n, field, eps)?;
    let det = g.mul(&form)?.mul(&g.transpose())?.det()?;
    let expected = match delta {
        DeltaClass::Square => 1,
        DeltaClass::Nonsquare => -1,
    };
    if field.quadratic_character(det)? != expected {
        return Err(Error::Precondition("reference code has the wrong discriminant".into()));
    }
    LinearCode::new(g)
}

/// The bilinear form a census classifies against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusForm {
    Standard,
    /// [`type_form`] with the given type.
    TypeEps(i8),
    Structure(StructureParams),
}

impl CensusForm {
    fn describe(&self) -> String {
        match self {
            CensusForm::Standard => "standard".into(),
            CensusForm::TypeEps(e) => format!("type{e:+}"),
            CensusForm::Structure(p) => format!("a={},b={}", p.a(), p.b()),
        }
    }

    /// `(d, b)` with Gram entries `Σ_l d_l g_il g_jl + b s_i s_j`.
    fn weights(&self, n: usize, field: &Field) -> Result<(Vec<FieldElement>, FieldElement)> {
        match self {
            CensusForm::Standard => Ok((vec![field.one(); n], FieldElement::ZERO)),
            CensusForm::TypeEps(eps) => {
                let m = type_form(n, field, *eps)?;
                Ok(((0..n).map(|i| m.get(i, i)).collect(), FieldElement::ZERO))
            }
            CensusForm::Structure(p) => {
                if p.len() != n {
                    return Err(Error::LengthMismatch(p.len(), n));
                }
                Ok((vec![p.a(); n], p.b()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullLineCount {
    /// Hull generator scaled so its first nonzero entry is 1.
    pub vector: Vec<u64>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub form: String,
    pub total_subspaces: u64,
    pub lcd_count: u64,
    /// `hull_dim_histogram[h]` codes have hull dimension `h`.
    pub hull_dim_histogram: Vec<u64>,
    /// LCD codes plus hull-line codes with `(x, 1) ≠ 0`.
    pub gi_reducible_count: u64,
    pub hull_lines: Vec<HullLineCount>,
}

impl CensusReport {
    pub fn hull_line_count(&self, x: &[u64]) -> u64 {
        self.hull_lines
            .iter()
            .find(|h| h.vector == x)
            .map_or(0, |h| h.count)
    }
}

#[derive(Default)]
struct Partial {
    histogram: Vec<u64>,
    gi_reducible: u64,
    lines: BTreeMap<Vec<u64>, u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (a, b) in self.histogram.iter_mut().zip(&other.histogram) {
            *a += b;
        }
        self.gi_reducible += other.gi_reducible;
        for (k, v) in other.lines {
            *self.lines.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// Pivot sets of `k`-subsets of `0..n` in colexicographic order.
fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    sets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    sets
}

/// `(row, col)` positions of free entries of an RREF with these pivots.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect()
}

/// Every `k`-dimensional subspace of `F_q^n`, each exactly once, ordered
/// by pivot set (colex) and then by free entries, first entry most
/// significant.
pub fn subspaces(n: usize, k: usize, field: &Field) -> impl Iterator<Item = LinearCode> + '_ {
    pivot_sets(n, k).into_iter().flat_map(move |pivots| {
        let free = free_positions(n, &pivots);
        let q = field.order() as u64;
        let count = q.pow(free.len() as u32);
        (0..count).map(move |t| LinearCode::from_canonical(rref_matrix(field, n, &pivots, &free, t)))
    })
}

fn rref_matrix(field: &Field, n: usize, pivots: &[usize], free: &[(usize, usize)], mut t: u64) -> MatrixFq {
    let q = field.order() as u64;
    let mut m = MatrixFq::zeros(field, pivots.len(), n);
    for (r, &p) in pivots.iter().enumerate() {
        m.set(r, p, FieldElement::ONE);
    }
    for &(r, c) in free.iter().rev() {
        m.set(r, c, field.element(t % q).expect("digit below q"));
        t /= q;
    }
    m
}

fn classify_into(
    field: &Field,
    g: &MatrixFq,
    weights: &(Vec<FieldElement>, FieldElement),
    acc: &mut Partial,
) -> Result<()> {
    let (d, b) = weights;
    let k = g.rows();
    let n = g.cols();
    let sums: Vec<FieldElement> = (0..k)
        .map(|r| g.row(r).iter().fold(FieldElement::ZERO, |s, &x| field.add(s, x)))
        .collect();
    let mut gram = MatrixFq::zeros(field, k, k);
    for i in 0..k {
        for j in 0..=i {
            let (ri, rj) = (g.row(i), g.row(j));
            let mut x = (0..n).fold(FieldElement::ZERO, |s, l| {
                field.add(s, field.mul(d[l], field.mul(ri[l], rj[l])))
            });
            x = field.add(x, field.mul(*b, field.mul(sums[i], sums[j])));
            gram.set(i, j, x);
            gram.set(j, i, x);
        }
    }
    let hull = k - gram.rank();
    if acc.histogram.len() <= hull {
        acc.histogram.resize(hull + 1, 0);
    }
    acc.histogram[hull] += 1;
    match hull {
        0 => acc.gi_reducible += 1,
        1 => {
            let c = gram.nullspace_right().pop().expect("one-dimensional kernel");
            let x = g.vec_mul(&c)?;
            let lead = *x.iter().find(|v| !v.is_zero()).expect("nonzero hull vector");
            let inv = field.inv(lead)?;
            let x: Vec<FieldElement> = x.iter().map(|&v| field.mul(v, inv)).collect();
            let sum = x.iter().fold(FieldElement::ZERO, |s, &v| field.add(s, v));
            if !sum.is_zero() {
                acc.gi_reducible += 1;
            }
            *acc.lines.entry(x.iter().map(|v| v.index() as u64).collect()).or_insert(0) += 1;
        }
        _ => {}
    }
    Ok(())
}

const CHUNK: u64 = 1 << 12;

/// Visits every `k`-dimensional subspace of `F_q^n` and tallies hull
/// dimensions under `form`. Work is split into disjoint index ranges and
/// run on the current rayon pool; the result does not depend on it.
pub fn grassmannian_census(n: usize, k: usize, field: &Field, form: CensusForm, cap: u64) -> Result<CensusReport> {
    check_dims(n, k)?;
    let q = field.order() as u64;
    let total = gaussian_binomial(n, k, q);
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded(format!(
            "{total} subspaces of dimension {k} in F_{q}^{n} exceed the cap {cap}"
        )));
    }
    let weights = form.weights(n, field)?;
    let mut work = Vec::new();
    for pivots in pivot_sets(n, k) {
        let free = free_positions(n, &pivots);
        let count = q.pow(free.len() as u32);
        let mut start = 0;
        while start < count {
            let end = (start + CHUNK).min(count);
            work.push((pivots.clone(), free.clone(), start, end));
            start = end;
        }
    }
    let partial = work
        .par_iter()
        .map(|(pivots, free, start, end)| {
            let mut acc = Partial::default();
            for t in *start..*end {
                let g = rref_matrix(field, n, pivots, free, t);
                classify_into(field, &g, &weights, &mut acc)?;
            }
            Ok(acc)
        })
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;
    let mut histogram = partial.histogram;
    histogram.resize(histogram.len().max(1), 0);
    let total_subspaces: u64 = histogram.iter().sum();
    Ok(CensusReport {
        n,
        k,
        q: q as usize,
        form: form.describe(),
        total_subspaces,
        lcd_count: histogram[0],
        hull_dim_histogram: histogram,
        gi_reducible_count: partial.gi_reducible,
        hull_lines: partial
            .lines
            .into_iter()
            .map(|(vector, count)| HullLineCount { vector, count })
            .collect(),
    })
}

/// Brute-force `|{x : (x, x) = 0, (x, 1) ≠ 0}|` over all of `F_q^n`.
pub fn count_k_exhaustive(n: usize, field: &Field) -> Result<u64> {
    let q = field.order();
    let total = (q as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= DEFAULT_CENSUS_CAP)
        .ok_or_else(|| Error::CapExceeded(format!("{q}^{n} vectors exceed the cap")))?;
    let mut count = 0;
    let mut x = vec![FieldElement::ZERO; n];
    for mut t in 0..total {
        for slot in x.iter_mut() {
            *slot = field.element(t % q as u64)?;
            t /= q as u64;
        }
        let sum = x.iter().fold(FieldElement::ZERO, |s, &v| field.add(s, v));
        if field.dot(&x, &x).is_zero() && !sum.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(5, 0, 7), big(1));
        assert_eq!(gaussian_binomial(2, 1, 3), big(4));
        assert_eq!(gaussian_binomial(4, 2, 3), big(130));
        assert_eq!(gaussian_binomial(2, 3, 3), big(0));
    }

    #[test]
    fn weil_examples() {
        let f3 = f(3);
        let d = |v: &[u64]| v.iter().map(|&x| f3.element(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(weil_count(&d(&[1, 1]), &f3).unwrap(), big(1));
        assert_eq!(weil_count(&d(&[1, 2, 2]), &f3).unwrap(), big(9));
        assert_eq!(weil_count(&d(&[1, 2]), &f3).unwrap(), big(5));
        assert!(weil_count(&d(&[1, 0]), &f3).is_err());
    }

    #[test]
    fn k_examples() {
        assert_eq!(count_k(3, &f(3)).unwrap(), big(6));
        assert_eq!(count_k(4, &f(3)).unwrap(), big(24));
        assert_eq!(count_k(2, &f(3)).unwrap(), big(0));
        assert_eq!(count_k(3, &f(5)).unwrap(), big(24));
        assert_eq!(count_k(4, &f(4)), Err(Error::CharacteristicTwo));
        for (n, q) in [(2, 3), (3, 3), (4, 3), (5, 3), (3, 5), (4, 5), (4, 9)] {
            assert_eq!(count_k(n, &f(q)).unwrap(), big(count_k_exhaustive(n, &f(q)).unwrap()), "n={n} q={q}");
        }
    }

    #[test]
    fn l_examples() {
        assert_eq!(count_l(2, 1, &f(2)).unwrap(), big(2));
        assert_eq!(count_l(3, 1, &f(3)).unwrap(), big(9));
        assert_eq!(count_l(4, 2, &f(3)).unwrap(), big(90));
        assert_eq!(count_l(4, 0, &f(3)).unwrap(), big(1));
        assert_eq!(count_l(4, 4, &f(4)).unwrap(), big(1));
        assert!(count_l(3, 4, &f(3)).is_err());
    }

    #[test]
    fn l_eps_examples() {
        assert_eq!(count_l_eps(2, 1, &f(3), -1).unwrap(), big(2));
        assert_eq!(count_l_eps(2, 1, &f(3), 1).unwrap(), big(4));
        for (n, k) in [(4, 2), (5, 2), (5, 1), (6, 3)] {
            assert_eq!(count_l_eps(n, k, &f(5), 1).unwrap(), count_l(n, k, &f(5)).unwrap());
        }
        assert!(count_l_eps(2, 1, &f(3), 0).is_err());
    }

    #[test]
    fn gi_reducible_examples() {
        assert_eq!(count_gi_reducible(4, 2, &f(3)).unwrap(), big(114));
        assert_eq!(count_gi_reducible(3, 1, &f(5)).unwrap(), big(31));
        // k - 1 > n - 2: no hull lines possible
        assert_eq!(count_gi_reducible(3, 3, &f(3)).unwrap(), big(1));
    }

    #[test]
    fn orthogonal_group_examples() {
        assert_eq!(orth_group_order(1, DeltaClass::Square, &f(3)).unwrap(), big(2));
        assert_eq!(orth_group_order(2, DeltaClass::Square, &f(3)).unwrap(), big(8));
        assert_eq!(orth_group_order(3, DeltaClass::Nonsquare, &f(3)).unwrap(), big(48));
    }

    #[test]
    fn reference_code_examples() {
        let f3 = f(3);
        let c = reference_code(4, 2, &f3, 1, DeltaClass::Square).unwrap();
        assert_eq!(c.generator().to_ints(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let c = reference_code(4, 2, &f3, 1, DeltaClass::Nonsquare).unwrap();
        assert_eq!(c.generator().to_ints(), vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]]);
        let c = reference_code(3, 2, &f3, -1, DeltaClass::Nonsquare).unwrap();
        assert_eq!(c.generator().to_ints(), vec![vec![1, 0, 0], vec![0, 0, 1]]);
        let c = reference_code(3, 2, &f3, 1, DeltaClass::Nonsquare).unwrap();
        assert_eq!(c.generator().to_ints(), vec![vec![1, 0, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn census_examples() {
        let r = grassmannian_census(4, 2, &f(3), CensusForm::Standard, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!((r.total_subspaces, r.lcd_count, r.gi_reducible_count), (130, 90, 114));
        let r = grassmannian_census(2, 1, &f(2), CensusForm::Standard, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!((r.total_subspaces, r.lcd_count), (3, 2));
        let r = grassmannian_census(5, 0, &f(5), CensusForm::Standard, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!((r.total_subspaces, r.lcd_count), (1, 1));
        let r = grassmannian_census(2, 1, &f(3), CensusForm::TypeEps(-1), DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!(r.lcd_count, 2);
        assert!(matches!(
            grassmannian_census(6, 3, &f(9), CensusForm::Standard, DEFAULT_CENSUS_CAP),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn subspace_enumeration_is_complete_and_distinct() {
        let f3 = f(3);
        let all: Vec<LinearCode> = subspaces(4, 2, &f3).collect();
        assert_eq!(all.len(), 130);
        let mut canon: Vec<Vec<Vec<u64>>> = all.iter().map(|c| c.canonical().to_ints()).collect();
        canon.sort();
        canon.dedup();
        assert_eq!(canon.len(), 130);
        assert_eq!(all[0].canonical().to_ints(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    }

    #[test]
    fn census_is_independent_of_thread_count() {
        let f5 = f(5);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| grassmannian_census(5, 2, &f5, CensusForm::Standard, DEFAULT_CENSUS_CAP).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
