//! Self-checks behind `pq verify`.

use std::fmt;

use paramedial::affine::{AffineForm, GroupDescriptor};
use paramedial::oracle::{
    classify_triples, congruence_subgroups, has_proper_congruence, table_isomorphic, Budget,
};
use paramedial::{pq_group, Error};

use crate::record::{enumerate, FormRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check {
            name,
            status,
            detail: detail.into(),
        }
    }

    fn skip(name: &'static str, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: Status::Skip,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

const TABLE_LIMIT: usize = 25;
const ISOMORPHISM_LIMIT: usize = 9;

/// Runs the checks for `level`. Only oracle bounds produce `Err`.
pub fn run(g: GroupDescriptor, level: Level) -> Result<Vec<Check>, Error> {
    let entries = enumerate(g, false)?;
    let forms: Vec<AffineForm> = entries.iter().map(|(f, _)| *f).collect();
    let records: Vec<&FormRecord> = entries.iter().map(|(_, r)| r).collect();
    let n = g.order();
    let mut checks = Vec::new();

    let expected = pq_group(g);
    checks.push(Check::new(
        "count",
        forms.len() as u64 == expected,
        format!("{} classes over {g}, closed form {expected}", forms.len()),
    ));

    let bad_pairs = forms
        .iter()
        .filter(|f| f.phi().square() != f.psi().square())
        .count();
    checks.push(Check::new(
        "phi^2 = psi^2",
        bad_pairs == 0,
        format!("{bad_pairs} violations"),
    ));

    let mut sorted = forms.clone();
    sorted.sort();
    sorted.dedup();
    checks.push(Check::new(
        "distinct representatives",
        sorted.len() == forms.len(),
        format!("{} distinct of {}", sorted.len(), forms.len()),
    ));

    if n <= TABLE_LIMIT {
        let bad = forms.iter().filter(|f| {
            let t = f.materialize();
            !(t.is_latin() && t.is_paramedial())
        });
        let bad = bad.count();
        checks.push(Check::new(
            "latin and paramedial tables",
            bad == 0,
            format!("{bad} failing tables of order {n}"),
        ));
    } else {
        checks.push(Check::skip(
            "latin and paramedial tables",
            format!("order {n} > {TABLE_LIMIT}"),
        ));
    }

    let flag_mismatch = entries
        .iter()
        .filter(|(f, r)| f.is_simple() != r.simple)
        .count();
    let simple = records.iter().filter(|r| r.simple).count();
    checks.push(Check::new(
        "simple flags",
        flag_mismatch == 0,
        format!("{simple} simple, {flag_mismatch} disagree with the invariant-subgroup test"),
    ));

    if level == Level::Fast {
        return Ok(checks);
    }

    let budget = Budget::default();
    let oracle = classify_triples(g, &budget)?;
    checks.push(Check::new(
        "oracle class count",
        oracle.count() == forms.len(),
        format!(
            "{} orbits of the affine group on valid triples",
            oracle.count()
        ),
    ));
    checks.push(Check::new(
        "one representative per orbit",
        oracle.hits_each_class_once(&forms),
        format!("{} representatives", forms.len()),
    ));

    if n <= ISOMORPHISM_LIMIT {
        let tables: Vec<_> = forms.iter().map(AffineForm::materialize).collect();
        let mut iso_pairs = 0;
        for i in 0..tables.len() {
            for j in i + 1..tables.len() {
                if table_isomorphic(&tables[i], &tables[j], &budget)? {
                    iso_pairs += 1;
                }
            }
        }
        checks.push(Check::new(
            "pairwise non-isomorphic tables",
            iso_pairs == 0,
            format!("{iso_pairs} isomorphic pairs among {}", tables.len()),
        ));
        let mismatch = entries
            .iter()
            .filter(|(f, r)| has_proper_congruence(&f.materialize()) == r.simple)
            .count();
        checks.push(Check::new(
            "congruence search",
            mismatch == 0,
            format!("{mismatch} simple flags disagree with the exhaustive congruence search"),
        ));
    } else {
        checks.push(Check::skip(
            "pairwise non-isomorphic tables",
            format!("order {n} > {ISOMORPHISM_LIMIT}"),
        ));
        let mismatch = entries
            .iter()
            .filter(|(f, r)| congruence_subgroups(f).is_empty() != r.simple)
            .count();
        checks.push(Check::new(
            "congruence subgroups",
            mismatch == 0,
            format!("{mismatch} simple flags disagree with the subgroup-congruence search"),
        ));
    }
    Ok(checks)
}
