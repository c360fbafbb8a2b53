//! Seeded consistency checks runnable from an installed binary.

use anyhow::Result;
use pep2gi::{
    count_gi_reducible, count_l, grassmannian_census, pep_brute_force, pep_solve, wdg_iso, CensusForm, Field,
    LinearCode, Permutation, PepTag, Projector, ReducibilityTag, StructureParams, WeightedDigraph,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run(seed: u64) -> Result<SelfTestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        field_inverses()?,
        solver_matches_oracle(&mut rng)?,
        code_json_round_trip(&mut rng)?,
        projector_graphs_are_equivariant(&mut rng)?,
        counts_match_census()?,
    ];
    Ok(SelfTestReport {
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Collects cases until the first failure.
struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            failure: self.failure,
        }
    }
}

fn random_code(rng: &mut ChaCha8Rng, field: &Field, n: usize, k: usize) -> Result<LinearCode> {
    let q = field.order() as u64;
    let rows: Vec<Vec<u64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
    Ok(if k == 0 {
        LinearCode::zero(field, n)
    } else {
        LinearCode::from_ints(field, &rows)?
    })
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffled identity is a permutation")
}

fn field_inverses() -> Result<Check> {
    let mut t = Tally::new("field_inverses");
    for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let f = Field::of_order(q)?;
        for x in f.nonzero() {
            let ok = f.mul(x, f.inv(x)?) == f.one();
            t.record(ok, || format!("x = {x} in F_{q}"));
        }
    }
    Ok(t.finish())
}

fn solver_matches_oracle(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut t = Tally::new("solver_matches_oracle");
    for trial in 0..120 {
        let f = Field::of_order(if trial % 2 == 0 { 3 } else { 5 })?;
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(1..n);
        let c1 = random_code(rng, &f, n, k)?;
        let c2 = if rng.gen_bool(0.5) {
            c1.apply_permutation(&random_perm(rng, n))?
        } else {
            random_code(rng, &f, n, k)?
        };
        let v = pep_solve(&c1, &c2)?;
        let oracle = pep_brute_force(&c1, &c2, n)?;
        let ok = match v.tag {
            PepTag::Equivalent => {
                oracle.is_some() && v.permutation.as_ref().map(|p| c1.apply_permutation(p)).transpose()? == Some(c2.clone())
            }
            PepTag::NotEquivalent => oracle.is_none(),
            PepTag::NotReducible => {
                let (h1, h2) = (c1.classify()?.tag, c2.classify()?.tag);
                !matches!(h1, ReducibilityTag::Lcd | ReducibilityTag::HullOneReducible)
                    || !matches!(h2, ReducibilityTag::Lcd | ReducibilityTag::HullOneReducible)
            }
        };
        t.record(ok, || format!("{c1:?} vs {c2:?}: {v:?}"));
    }
    Ok(t.finish())
}

fn code_json_round_trip(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut t = Tally::new("code_json_round_trip");
    for q in [2, 3, 4, 9, 27] {
        let f = Field::of_order(q)?;
        for _ in 0..20 {
            let n = rng.gen_range(1..=7);
            let k = rng.gen_range(0..=n);
            let c = random_code(rng, &f, n, k)?;
            let text = serde_json::to_string(&c.to_json())?;
            let back = LinearCode::from_json(&serde_json::from_str(&text)?)?;
            t.record(back == c, || text.clone());
        }
    }
    Ok(t.finish())
}

fn projector_graphs_are_equivariant(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut t = Tally::new("projector_graphs_are_equivariant");
    let f = Field::of_order(5)?;
    while t.cases < 40 {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..n);
        let c = random_code(rng, &f, n, k)?;
        let m = StructureParams::standard(n);
        if !c.is_m_lcd(&m)? {
            continue;
        }
        let p = random_perm(rng, n);
        let g1 = WeightedDigraph::new(Projector::new(&c, &m)?.into_matrix())?;
        let g2 = WeightedDigraph::new(Projector::new(&c.apply_permutation(&p)?, &m)?.into_matrix())?;
        let relabeled = g1.relabel(&p)?;
        let ok = relabeled == g2 && wdg_iso(&g1, &g2).is_some();
        t.record(ok, || format!("{c:?} under {p:?}"));
    }
    Ok(t.finish())
}

fn counts_match_census() -> Result<Check> {
    let mut t = Tally::new("counts_match_census");
    for (n, k, q) in [(4, 2, 3), (5, 2, 3), (5, 3, 3), (4, 2, 5), (3, 1, 7), (4, 2, 9)] {
        let f = Field::of_order(q)?;
        let report = grassmannian_census(n, k, &f, CensusForm::Standard, pep2gi::census::DEFAULT_CENSUS_CAP)?;
        let (l, gi) = (count_l(n, k, &f)?, count_gi_reducible(n, k, &f)?);
        let ok = l == report.lcd_count.into() && gi == report.gi_reducible_count.into();
        t.record(ok, || {
            format!(
                "[{n}, {k}]_{q}: census {}/{}, closed form {l}/{gi}",
                report.lcd_count, report.gi_reducible_count
            )
        });
    }
    Ok(t.finish())
}
