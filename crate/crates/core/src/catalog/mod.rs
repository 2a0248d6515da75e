//! The table of known eigen-sequences.
//!
//! Records live in `catalog.txt`, one per line:
//!
//! ```text
//! id | offset | property | operator | comma-separated terms
//! ```
//!
//! Some ids appear on more than one line with different operators. Terms
//! are stored verbatim and recomputed by [`Catalog::verify_entry`].

mod closed_forms;

use std::fmt;

use crate::eigen::{
    revert_lex_search, solve_xor_special, verify_eigen, EigenProblem, DEFAULT_REVERT_CAP,
};
use crate::error::{Error, Result};
use crate::expr::TransformExpr;
use crate::product::partition_xform;
use crate::seq::{Offset, Sequence};

pub use closed_forms::{check_closed_forms, ordered_factorizations, ClosedFormCheck};

const BUILTIN: &str = include_str!("catalog.txt");

/// How an entry is singled out by its operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// The unique fixed point, attracting every start.
    Alpha,
    /// The unique fixed point beginning with 1.
    Beta,
    /// `[0, 1, a_2, ...]` mapped to `[0, a_2, a_3, ...]` by XOR-CONV.
    Gamma,
    /// A PARTITION fixed point or 2-cycle member.
    Delta,
    /// Lexicographically first increasing REVERT fixed point.
    Epsilon,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Alpha => "alpha",
            Property::Beta => "beta",
            Property::Gamma => "gamma",
            Property::Delta => "delta",
            Property::Epsilon => "epsilon",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Property::Alpha => 'α',
            Property::Beta => 'β',
            Property::Gamma => 'γ',
            Property::Delta => 'δ',
            Property::Epsilon => 'ε',
        }
    }

    fn parse(s: &str) -> Option<Property> {
        [
            Property::Alpha,
            Property::Beta,
            Property::Gamma,
            Property::Delta,
            Property::Epsilon,
        ]
        .into_iter()
        .find(|p| p.name() == s || s.chars().eq([p.symbol()]))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub terms: Sequence,
    pub operator: TransformExpr,
    pub property: Property,
}

impl CatalogEntry {
    pub fn offset(&self) -> Offset {
        self.terms.offset()
    }

    pub fn notes(&self) -> &'static str {
        notes(&self.id)
    }
}

/// Free-text remarks keyed by id.
pub fn notes(id: &str) -> &'static str {
    match id {
        "S1" => "Bell numbers",
        "S2" => "a_6 = 1539 follows from the recurrence; the value 1531 sometimes quoted for it is a misprint",
        "S6" => "ordered Bell (Fubini) numbers, e.g.f. 1/(2-e^x)",
        "S11" => "Catalan numbers",
        "S12" | "S13" => "generalised Catalan numbers C(rn,n)/((r-1)n+1)",
        "S15" => "factorials",
        "S22" => "the XOR fixed point starts 0,1; the shift operator label alone would force a leading 1",
        "S23" => "a_{n+1} is the sum of a_d over divisors d of n",
        "S26" => "number of ordered factorizations of n",
        "S30" => "unlabeled rooted trees",
        "S34" => "PARTITION fixed point",
        "S35" => "swaps with S36 under PARTITION",
        "S36" => "swaps with S35 under PARTITION",
        "S37" => "swaps with S38 under PARTITION",
        "S38" => "swaps with S37 under PARTITION",
        "S39" => "super-Catalan (little Schroeder) numbers",
        "S41" => "Motzkin numbers",
        "S44" => "minimal relative to a value cap and search horizon",
        "S45" => "Euler up/down numbers, e.g.f. (1+sin x)/cos x",
        "S48" => "exp A = 2A + 1 - x",
        "S49" => "2/(1+e^x); related to Bernoulli numbers",
        "S52" => "2^(n-1) a_n is an integer",
        _ => "",
    }
}

/// PARTITION partners among the delta entries.
fn partition_partner(id: &str) -> Option<&'static str> {
    match id {
        "S35" => Some("S36"),
        "S36" => Some("S35"),
        "S37" => Some("S38"),
        "S38" => Some("S37"),
        _ => None,
    }
}

/// Outcome of recomputing one catalog line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub id: String,
    pub operator: TransformExpr,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for EntryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        write!(
            f,
            "{} {} [{}]: {}",
            status, self.id, self.operator, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub reports: Vec<EntryReport>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

/// Which listed sequences a PARTITION cycle matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleMatch {
    /// Ids of the matching delta entries, in cycle order.
    Listed(Vec<String>),
    /// The all-ones fixed point, which the catalog does not list.
    AllOnes,
    Unlisted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The table shipped with the crate.
    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN).expect("built-in catalog is well formed")
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let bad = |reason: String| Error::CatalogFormat { line, reason };
            let fields: Vec<&str> = body.split('|').map(str::trim).collect();
            let [id, offset, property, operator, terms] = fields[..] else {
                return Err(bad(format!("expected 5 fields, found {}", fields.len())));
            };
            if !id
                .strip_prefix('S')
                .is_some_and(|n| n.parse::<u32>().is_ok())
            {
                return Err(bad(format!("bad id `{id}`")));
            }
            let offset = offset
                .parse::<usize>()
                .ok()
                .and_then(Offset::from_index)
                .ok_or_else(|| bad(format!("bad offset `{offset}`")))?;
            let property = Property::parse(property)
                .ok_or_else(|| bad(format!("bad property `{property}`")))?;
            let operator =
                TransformExpr::parse(operator).map_err(|e| bad(format!("operator: {e}")))?;
            let terms = Sequence::parse(terms, offset).map_err(|e| bad(format!("terms: {e}")))?;
            if terms.is_empty() {
                return Err(bad("no terms".into()));
            }
            entries.push(CatalogEntry {
                id: id.to_string(),
                terms,
                operator,
                property,
            });
        }
        Ok(Catalog { entries })
    }

    /// Serialises back to the line format.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                format!(
                    "{} | {} | {} | {} | {}\n",
                    e.id,
                    e.offset(),
                    e.property,
                    e.operator,
                    e.terms
                )
            })
            .collect()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Distinct ids in table order.
    pub fn ids(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !seen.contains(&e.id.as_str()) {
                seen.push(&e.id);
            }
        }
        seen
    }

    /// First line with the given id.
    pub fn lookup(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn entries_for(&self, id: &str) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.id == id).collect()
    }

    /// Recomputes every line with this id.
    pub fn verify_entry(&self, id: &str) -> Result<Vec<EntryReport>> {
        let rows = self.entries_for(id);
        if rows.is_empty() {
            return Err(Error::UnknownId(id.to_string()));
        }
        Ok(rows.into_iter().map(|e| self.verify_row(e)).collect())
    }

    pub fn verify_all(&self) -> VerifySummary {
        VerifySummary {
            reports: self.entries.iter().map(|e| self.verify_row(e)).collect(),
        }
    }

    fn verify_row(&self, e: &CatalogEntry) -> EntryReport {
        let (passed, detail) = match self.check_row(e) {
            Ok(res) => res,
            Err(err) => (false, err.to_string()),
        };
        EntryReport {
            id: e.id.clone(),
            operator: e.operator.clone(),
            passed,
            detail,
        }
    }

    fn check_row(&self, e: &CatalogEntry) -> Result<(bool, String)> {
        let n = e.terms.len();
        match e.property {
            Property::Gamma => {
                let solved = solve_xor_special(n)?;
                Ok(compare(&solved, &e.terms))
            }
            Property::Epsilon => {
                let found = revert_lex_search(n, DEFAULT_REVERT_CAP)?;
                let (ok, detail) = compare(&found.terms, &e.terms);
                let fixed = verify_eigen(&e.terms, &e.operator);
                Ok((
                    ok && fixed,
                    format!("{detail}; cap {}, horizon {}", found.cap, found.horizon),
                ))
            }
            Property::Delta => {
                let image = partition_xform(&e.terms)?;
                match partition_partner(&e.id) {
                    None => Ok(match compare(&image, &e.terms) {
                        (true, _) => (true, "fixed by PARTITION".into()),
                        (false, d) => (false, format!("not fixed: {d}")),
                    }),
                    Some(partner_id) => {
                        let partner = self.lookup(partner_id)?;
                        let back = partition_xform(&partner.terms)?;
                        let there = image.truncated(partner.terms.len())
                            == partner.terms.truncated(image.len());
                        let home = back.truncated(n) == e.terms.truncated(back.len());
                        let twice = verify_eigen(&e.terms, &e.operator);
                        Ok((
                            there && home && twice,
                            format!("PARTITION maps {} -> {partner_id} -> {}", e.id, e.id),
                        ))
                    }
                }
            }
            Property::Alpha | Property::Beta => {
                let problem = EigenProblem::from_expr(&e.operator)?;
                let solved = problem.solve(n, e.offset())?;
                let (ok, detail) = compare(&solved, &e.terms);
                Ok((ok && problem.holds_for(&e.terms)?, detail))
            }
        }
    }

    /// Matches a PARTITION cycle against the delta entries. Sequences are
    /// compared on their common prefix.
    pub fn classify_cycle(&self, cycle: &[Sequence]) -> CycleMatch {
        let matches = |a: &Sequence, b: &Sequence| {
            let n = a.len().min(b.len());
            n > 0 && a.truncated(n) == b.truncated(n)
        };
        let ids: Option<Vec<String>> = cycle
            .iter()
            .map(|member| {
                self.entries
                    .iter()
                    .filter(|e| e.property == Property::Delta)
                    .find(|e| matches(member, &e.terms))
                    .map(|e| e.id.clone())
            })
            .collect();
        if let Some(ids) = ids {
            return CycleMatch::Listed(ids);
        }
        let ones = |s: &Sequence| s.terms().iter().all(|t| *t == crate::rational::int(1));
        if cycle.len() == 1 && ones(&cycle[0]) {
            CycleMatch::AllOnes
        } else {
            CycleMatch::Unlisted
        }
    }
}

fn compare(got: &Sequence, want: &Sequence) -> (bool, String) {
    if got.offset() != want.offset() {
        return (
            false,
            format!("offset {} != {}", got.offset(), want.offset()),
        );
    }
    let mismatch = got
        .terms()
        .iter()
        .zip(want.terms())
        .position(|(g, w)| g != w);
    match mismatch {
        Some(i) => (
            false,
            format!(
                "term {} is {}, expected {}",
                want.offset().index() + i,
                got.terms()[i],
                want.terms()[i]
            ),
        ),
        None if got.len() < want.len() => {
            (false, format!("only {} of {} terms", got.len(), want.len()))
        }
        None => (true, format!("{} terms match", want.len())),
    }
}
