//! Linear codes, bilinear forms `M = aI + bJ`, M-hulls and the
//! GI-reducibility classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::matrix::{echelon_basis, MatrixFq};

/// An `[n, k]_q` code. Equality is equality of the canonical RREF generator.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    k: usize,
    gen: MatrixFq,
    canon: MatrixFq,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.canon == other.canon
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] code over {:?} {:?}",
            self.n,
            self.k,
            self.field(),
            self.canon.to_ints()
        )
    }
}

impl LinearCode {
    /// Code spanned by the rows of `gen`. Dependent rows are allowed; the
    /// dimension is the rank.
    pub fn new(gen: MatrixFq) -> Result<Self> {
        if gen.cols() == 0 {
            return Err(Error::ShapeMismatch("code length must be positive".into()));
        }
        let red = gen.rref();
        let n = gen.cols();
        let k = red.rank;
        let canon = MatrixFq::from_rows(
            gen.field(),
            n,
            &(0..k).map(|r| red.matrix.row(r).to_vec()).collect::<Vec<_>>(),
        )?;
        let gen = if gen.rows() == k { gen } else { canon.clone() };
        Ok(Self { n, k, gen, canon })
    }

    pub fn from_ints(field: &Field, rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(MatrixFq::from_ints(field, rows)?)
    }

    /// The `[n, 0]` code.
    pub fn zero(field: &Field, n: usize) -> Self {
        let z = MatrixFq::zeros(field, 0, n);
        Self {
            n,
            k: 0,
            gen: z.clone(),
            canon: z,
        }
    }

    /// `F_q^n` itself.
    pub fn full(field: &Field, n: usize) -> Self {
        Self::new(MatrixFq::identity(field, n)).expect("identity has full rank")
    }

    /// Builds directly from an RREF matrix with exactly `k` nonzero rows.
    pub(crate) fn from_canonical(canon: MatrixFq) -> Self {
        Self {
            n: canon.cols(),
            k: canon.rows(),
            gen: canon.clone(),
            canon,
        }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn generator(&self) -> &MatrixFq {
        &self.gen
    }

    pub fn canonical(&self) -> &MatrixFq {
        &self.canon
    }

    /// Same code with a different generator matrix `R·G` (`R` must be invertible).
    pub fn regenerate(&self, r: &MatrixFq) -> Result<Self> {
        if r.rows() != self.k || r.det()?.is_zero() {
            return Err(Error::Precondition("change of basis must be invertible k×k".into()));
        }
        let gen = r.mul(&self.gen)?;
        Ok(Self {
            n: self.n,
            k: self.k,
            gen,
            canon: self.canon.clone(),
        })
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut rows = self.canon.row_vecs();
        rows.push(v.to_vec());
        echelon_basis(self.field(), self.n, &rows).len() == self.k
    }

    /// `C P_π`: coordinate `i` moves to position `π(i)`.
    pub fn apply_permutation(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch(perm.len(), self.n));
        }
        let rows: Vec<Vec<FieldElement>> = self
            .gen
            .row_vecs()
            .iter()
            .map(|r| perm.permute_vector(r))
            .collect();
        Self::new(MatrixFq::from_rows(self.field(), self.n, &rows)?)
    }

    /// Row sums `v = G 1ᵀ`.
    pub fn row_sums(&self) -> Vec<FieldElement> {
        let f = self.field();
        (0..self.k)
            .map(|r| {
                self.gen
                    .row(r)
                    .iter()
                    .fold(FieldElement::ZERO, |acc, &x| f.add(acc, x))
            })
            .collect()
    }

    /// `G M Gᵀ` computed as `a·GGᵀ + b·vvᵀ` with `v = G1ᵀ`.
    pub fn gram(&self, form: &StructureParams) -> Result<MatrixFq> {
        form.check_len(self.n)?;
        let f = self.field();
        let mut out = MatrixFq::zeros(f, self.k, self.k);
        let v = self.row_sums();
        for i in 0..self.k {
            for j in 0..=i {
                let g = f.dot(self.gen.row(i), self.gen.row(j));
                let x = f.add(f.mul(form.a, g), f.mul(form.b, f.mul(v[i], v[j])));
                out.set(i, j, x);
                out.set(j, i, x);
            }
        }
        Ok(out)
    }

    /// `dim Hull_M(C) = k − rank(G M Gᵀ)`.
    pub fn hull_dim(&self, form: &StructureParams) -> Result<usize> {
        Ok(self.k - self.gram(form)?.rank())
    }

    pub fn is_m_lcd(&self, form: &StructureParams) -> Result<bool> {
        Ok(self.hull_dim(form)? == 0)
    }

    /// RREF basis of `Hull_M(C)`, lifted from the left kernel of the Gram matrix.
    pub fn hull_basis(&self, form: &StructureParams) -> Result<Vec<Vec<FieldElement>>> {
        let coeffs = self.gram(form)?.nullspace_left();
        let lifted = coeffs
            .iter()
            .map(|c| self.gen.vec_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(echelon_basis(self.field(), self.n, &lifted))
    }

    /// `C^{⊥_M} = {y : G M yᵀ = 0}`.
    pub fn dual(&self, form: &StructureParams) -> Result<Self> {
        form.check_len(self.n)?;
        let f = self.field();
        if self.k == 0 {
            return Ok(Self::full(f, self.n));
        }
        let v = self.row_sums();
        let mut gm = MatrixFq::zeros(f, self.k, self.n);
        for r in 0..self.k {
            let shift = f.mul(form.b, v[r]);
            for c in 0..self.n {
                gm.set(r, c, f.add(f.mul(form.a, self.gen.get(r, c)), shift));
            }
        }
        let basis = gm.nullspace_right();
        if basis.is_empty() {
            return Ok(Self::zero(f, self.n));
        }
        Ok(Self::from_canonical(MatrixFq::from_rows(f, self.n, &basis)?))
    }

    /// GI-reducibility class under the projector method.
    pub fn classify(&self) -> Result<ReducibilityVerdict> {
        let f = self.field();
        let standard = StructureParams::standard(self.n);
        let hull = self.hull_basis(&standard)?;
        let verdict = match hull.len() {
            0 => ReducibilityVerdict {
                tag: ReducibilityTag::Lcd,
                hull_dim: 0,
                hull_vector: None,
                witness_b: None,
            },
            1 => {
                let x = hull.into_iter().next().unwrap();
                let sum = x.iter().fold(FieldElement::ZERO, |acc, &c| f.add(acc, c));
                if sum.is_zero() {
                    ReducibilityVerdict {
                        tag: ReducibilityTag::HullOneIrreducible,
                        hull_dim: 1,
                        hull_vector: Some(x),
                        witness_b: None,
                    }
                } else {
                    ReducibilityVerdict {
                        tag: ReducibilityTag::HullOneReducible,
                        hull_dim: 1,
                        hull_vector: Some(x),
                        witness_b: self.smallest_lcd_b()?,
                    }
                }
            }
            d => ReducibilityVerdict {
                tag: ReducibilityTag::HullTooLarge,
                hull_dim: d,
                hull_vector: None,
                witness_b: None,
            },
        };
        Ok(verdict)
    }

    /// Smallest `b ≠ 0` (canonical order) with `I + bJ` nondegenerate and
    /// this code `(I + bJ)`-LCD.
    pub fn smallest_lcd_b(&self) -> Result<Option<FieldElement>> {
        for form in StructureParams::candidates(self.field(), self.n) {
            if self.is_m_lcd(&form)? {
                return Ok(Some(form.b));
            }
        }
        Ok(None)
    }
}

/// On-disk form of a code: `{field, n, k, gen}`. `k` may be omitted on
/// input; when present it must equal the rank of `gen`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub gen: Vec<Vec<u64>>,
}

impl LinearCode {
    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            field: self.field().spec().clone(),
            n: self.n,
            k: Some(self.k),
            gen: self.gen.to_ints(),
        }
    }

    pub fn from_json(json: &CodeJson) -> Result<Self> {
        let field = Field::from_spec(&json.field)?;
        let q = field.order() as u64;
        if json.n == 0 {
            return Err(Error::Parse("code length n must be positive".into()));
        }
        for (r, row) in json.gen.iter().enumerate() {
            if row.len() != json.n {
                return Err(Error::Parse(format!(
                    "gen row {r} has {} entries, expected n = {}",
                    row.len(),
                    json.n
                )));
            }
            if let Some(c) = row.iter().position(|&x| x >= q) {
                return Err(Error::Parse(format!(
                    "gen row {r}, column {c}: entry {} is not an element of F_{q}",
                    row[c]
                )));
            }
        }
        let code = if json.gen.is_empty() {
            Self::zero(&field, json.n)
        } else {
            Self::new(MatrixFq::from_ints(&field, &json.gen)?)?
        };
        if let Some(k) = json.k {
            if k != code.k {
                return Err(Error::Parse(format!(
                    "declared k = {k} but gen has rank {}",
                    code.k
                )));
            }
        }
        Ok(code)
    }
}

/// The symmetric bilinear form with structure matrix `M = aI + bJ` on
/// `F_q^n`. Always nondegenerate: `a ≠ 0` and `a + n·b ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructureParams {
    a: FieldElement,
    b: FieldElement,
    n: usize,
}

impl StructureParams {
    pub fn new(field: &Field, a: FieldElement, b: FieldElement, n: usize) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegenerateForm("a = 0".into()));
        }
        let nb = field.mul(field.from_int(n as i64), b);
        if field.add(a, nb).is_zero() {
            return Err(Error::DegenerateForm(format!("a + {n}·b = 0")));
        }
        Ok(Self { a, b, n })
    }

    /// The standard inner product, `M = I`.
    pub fn standard(n: usize) -> Self {
        Self {
            a: FieldElement::ONE,
            b: FieldElement::ZERO,
            n,
        }
    }

    /// `M = I + bJ` for every admissible `b ≠ 0`, in canonical order of `b`.
    pub fn candidates(field: &Field, n: usize) -> impl Iterator<Item = StructureParams> + '_ {
        field
            .nonzero()
            .filter_map(move |b| StructureParams::new(field, FieldElement::ONE, b, n).ok())
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_standard(&self) -> bool {
        self.a == FieldElement::ONE && self.b.is_zero()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch(self.n, n))
        }
    }

    /// Dense `aI + bJ`.
    pub fn matrix(&self, field: &Field) -> MatrixFq {
        let diag = field.add(self.a, self.b);
        let mut m = MatrixFq::zeros(field, self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, if i == j { diag } else { self.b });
            }
        }
        m
    }

    /// `x M yᵀ = a(x·y) + b(Σx)(Σy)`.
    pub fn pair(&self, field: &Field, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let sum = |v: &[FieldElement]| v.iter().fold(FieldElement::ZERO, |acc, &c| field.add(acc, c));
        field.add(
            field.mul(self.a, field.dot(x, y)),
            field.mul(self.b, field.mul(sum(x), sum(y))),
        )
    }
}

/// True iff `M` has constant diagonal and constant off-diagonal entries.
pub fn centralizer_check(m: &MatrixFq) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    if n == 0 {
        return true;
    }
    let diag = m.get(0, 0);
    let off = if n > 1 { Some(m.get(0, 1)) } else { None };
    (0..n).all(|i| {
        (0..n).all(|j| {
            if i == j {
                m.get(i, j) == diag
            } else {
                Some(m.get(i, j)) == off
            }
        })
    })
}

/// An element of `S_n`, acting on row vectors by `x ↦ x P_π` where
/// `(P_π)_{ij} = 1` iff `j = π(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, j);
        Self { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Self { image: inv }
    }

    /// `self` followed by `next`: `P_self · P_next`.
    pub fn then(&self, next: &Permutation) -> Self {
        Self {
            image: self.image.iter().map(|&j| next.image[j]).collect(),
        }
    }

    /// `x P_π`.
    pub fn permute_vector<T: Copy + Default>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); x.len()];
        for (i, &v) in x.iter().enumerate() {
            out[self.image[i]] = v;
        }
        out
    }

    pub fn matrix(&self, field: &Field) -> MatrixFq {
        let mut m = MatrixFq::zeros(field, self.len(), self.len());
        for (i, &j) in self.image.iter().enumerate() {
            m.set(i, j, FieldElement::ONE);
        }
        m
    }

    /// `P_πᵀ A P_π`, i.e. entry `(π(i), π(j))` of the result is `A[i][j]`.
    pub fn conjugate(&self, a: &MatrixFq) -> Result<MatrixFq> {
        if !a.is_square() || a.rows() != self.len() {
            return Err(Error::LengthMismatch(a.rows(), self.len()));
        }
        let mut out = MatrixFq::zeros(a.field(), a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.set(self.image[i], self.image[j], a.get(i, j));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReducibilityTag {
    #[serde(rename = "LCD")]
    Lcd,
    HullOneReducible,
    HullOneIrreducible,
    HullTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityVerdict {
    pub tag: ReducibilityTag,
    pub hull_dim: usize,
    /// RREF-normalised hull generator, present iff `hull_dim == 1`.
    pub hull_vector: Option<Vec<FieldElement>>,
    /// For `HullOneReducible`: smallest `b` making the code `(I + bJ)`-LCD.
    pub witness_b: Option<FieldElement>,
}

impl ReducibilityVerdict {
    pub fn is_gi_reducible(&self) -> bool {
        matches!(
            self.tag,
            ReducibilityTag::Lcd | ReducibilityTag::HullOneReducible
        )
    }
}
