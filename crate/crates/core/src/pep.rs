//! Permutation equivalence through projector graphs, plus an exhaustive
//! oracle and a search for witnesses that a form is not permutation
//! invariant.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::code::{centralizer_check, LinearCode, Permutation, StructureParams};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::graph::{wdg_iso, WeightedDigraph};
use crate::matrix::MatrixFq;
use crate::projector::Projector;

/// Default largest length accepted by [`pep_brute_force`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PepTag {
    Equivalent,
    NotEquivalent,
    NotReducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PepReason {
    /// Standard hull dimensions differ.
    HullMismatch,
    /// The codes have different dimensions.
    DimensionMismatch,
    /// No `b` makes both codes `(I + bJ)`-LCD while at least one code has such a `b`.
    NoValidB,
    GraphNonIso,
    GraphIso,
    /// Common hull dimension is at least 2.
    HullTooLarge,
    /// Both hulls are lines orthogonal to the all-ones vector: no form in
    /// the family makes either code LCD.
    HullOneIrreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PepVerdict {
    pub tag: PepTag,
    pub permutation: Option<Permutation>,
    pub used_b: Option<FieldElement>,
    pub reason: PepReason,
    /// Length at most 2, where the form characterisation is not established;
    /// the verdict itself is still sound.
    pub short_length: bool,
}

impl PepVerdict {
    fn new(tag: PepTag, reason: PepReason, n: usize) -> Self {
        Self {
            tag,
            permutation: None,
            used_b: None,
            reason,
            short_length: n <= 2,
        }
    }
}

fn check_compatible(c1: &LinearCode, c2: &LinearCode) -> Result<()> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch);
    }
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch(c1.len(), c2.len()));
    }
    Ok(())
}

/// Smallest `b ≠ 0` with `1 + nb ≠ 0` such that both codes are `(I + bJ)`-LCD.
pub fn find_shared_b(c1: &LinearCode, c2: &LinearCode) -> Result<Option<FieldElement>> {
    check_compatible(c1, c2)?;
    for form in StructureParams::candidates(c1.field(), c1.len()) {
        if c1.is_m_lcd(&form)? && c2.is_m_lcd(&form)? {
            return Ok(Some(form.b()));
        }
    }
    Ok(None)
}

/// Decides whether `C₂ = C₁P` for some permutation matrix `P`.
pub fn pep_solve(c1: &LinearCode, c2: &LinearCode) -> Result<PepVerdict> {
    check_compatible(c1, c2)?;
    let n = c1.len();
    if c1.dim() != c2.dim() {
        return Ok(PepVerdict::new(PepTag::NotEquivalent, PepReason::DimensionMismatch, n));
    }
    let standard = StructureParams::standard(n);
    let h1 = c1.hull_dim(&standard)?;
    let h2 = c2.hull_dim(&standard)?;
    if h1 != h2 {
        return Ok(PepVerdict::new(PepTag::NotEquivalent, PepReason::HullMismatch, n));
    }
    if h1 >= 2 {
        return Ok(PepVerdict::new(PepTag::NotReducible, PepReason::HullTooLarge, n));
    }
    let (form, used_b) = if h1 == 0 {
        (standard, None)
    } else {
        match find_shared_b(c1, c2)? {
            Some(b) => (StructureParams::new(c1.field(), FieldElement::ONE, b, n)?, Some(b)),
            None => {
                // Closure under permutations only separates the codes when
                // one of them is LCD for some form in the family.
                let verdict = if c1.smallest_lcd_b()?.is_none() && c2.smallest_lcd_b()?.is_none() {
                    PepVerdict::new(PepTag::NotReducible, PepReason::HullOneIrreducible, n)
                } else {
                    PepVerdict::new(PepTag::NotEquivalent, PepReason::NoValidB, n)
                };
                return Ok(verdict);
            }
        }
    };
    let g1 = WeightedDigraph::new(Projector::new(c1, &form)?.into_matrix())?;
    let g2 = WeightedDigraph::new(Projector::new(c2, &form)?.into_matrix())?;
    let mut verdict = match wdg_iso(&g1, &g2) {
        // the graph solver is not trusted: re-check against the codes
        Some(perm) if c1.apply_permutation(&perm)? == *c2 => PepVerdict {
            permutation: Some(perm),
            ..PepVerdict::new(PepTag::Equivalent, PepReason::GraphIso, n)
        },
        Some(_) => {
            return Err(Error::Precondition(
                "graph isomorphism does not map the codes onto each other".into(),
            ))
        }
        None => PepVerdict::new(PepTag::NotEquivalent, PepReason::GraphNonIso, n),
    };
    verdict.used_b = used_b;
    Ok(verdict)
}

/// First permutation in lexicographic order with `C₁P = C₂`, if any.
pub fn pep_brute_force(c1: &LinearCode, c2: &LinearCode, cap: usize) -> Result<Option<Permutation>> {
    check_compatible(c1, c2)?;
    let n = c1.len();
    if n > cap {
        return Err(Error::CapExceeded(format!("length {n} exceeds brute-force cap {cap}")));
    }
    if c1.dim() != c2.dim() {
        return Ok(None);
    }
    for image in (0..n).permutations(n) {
        let perm = Permutation::new(image)?;
        if c1.apply_permutation(&perm)? == *c2 {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

fn quadratic(field: &Field, m: &MatrixFq, u: &[FieldElement]) -> Result<FieldElement> {
    Ok(field.dot(&m.vec_mul(u)?, u))
}

/// Looks for a vector `u` and a transposition `P` such that exactly one of
/// `⟨u⟩` and `⟨u⟩P` is `M`-LCD, showing that `M` does not give a
/// permutation-invariant notion of LCD.
pub fn necessity_witness(m: &MatrixFq) -> Result<Option<(Vec<FieldElement>, Permutation)>> {
    let f = m.field();
    let n = m.rows();
    if !m.is_square() || !m.is_symmetric() {
        return Err(Error::Precondition("form matrix must be square and symmetric".into()));
    }
    if !f.is_odd() {
        return Err(Error::CharacteristicTwo);
    }
    if n < 3 {
        return Err(Error::Precondition(format!("length must be at least 3, got {n}")));
    }
    if m.det()?.is_zero() {
        return Err(Error::DegenerateForm("form matrix is singular".into()));
    }
    if centralizer_check(m) {
        return Err(Error::Precondition("form matrix is of the form aI + bJ".into()));
    }
    let transpositions: Vec<Permutation> = (0..n)
        .tuple_combinations()
        .map(|(i, j)| Permutation::transposition(n, i, j))
        .collect();
    let q = f.order();
    let mut u = vec![FieldElement::ZERO; n];
    // vectors in increasing integer order, first coordinate most significant
    for code in 1..q.pow(n as u32) {
        let mut c = code;
        for slot in u.iter_mut().rev() {
            *slot = f.element((c % q) as u64)?;
            c /= q;
        }
        let before = !quadratic(f, m, &u)?.is_zero();
        for t in &transpositions {
            let after = !quadratic(f, m, &t.permute_vector(&u))?.is_zero();
            if before != after {
                return Ok(Some((u, t.clone())));
            }
        }
    }
    Ok(None)
}
