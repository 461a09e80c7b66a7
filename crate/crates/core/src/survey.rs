//! Corpus survey: one row per (group, maximal subgroup class).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorizer::cdi_factorize;
use crate::group::FiniteGroup;
use crate::irreducible::{analyze_irreducible, IrreducibleCase};
use crate::maximal::maximal_subgroup_classes;
use crate::subgroup::Subgroup;
use crate::thickening::degree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub group: String,
    pub order: usize,
    pub h_order: usize,
    pub h_index: usize,
    pub faithful: Option<bool>,
    pub case: Option<IrreducibleCase>,
    #[serde(rename = "type")]
    pub type_tag: Option<String>,
    pub minimal_normals: Option<usize>,
    pub monolith_order: Option<usize>,
    /// `deg(G/H, U, S)` with `U` the least minimal normal subgroup of `G`
    /// and `S` the generators of `H`.
    pub degree: Option<usize>,
    pub series_length: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub rows: usize,
    pub errors: usize,
    pub cases: BTreeMap<String, usize>,
    pub types: BTreeMap<String, usize>,
    /// Observed `|M_G|` values and how often each occurs.
    pub minimal_normal_counts: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyTable {
    pub rows: Vec<SurveyRow>,
    pub summary: SurveySummary,
}

impl SurveyTable {
    /// Histogram totals match the row count.
    pub fn reconciles(&self) -> bool {
        let s = &self.summary;
        let analysed = s.rows - s.errors;
        s.rows == self.rows.len()
            && s.cases.values().sum::<usize>() == analysed
            && s.types.values().sum::<usize>() == analysed
            && s.minimal_normal_counts.values().sum::<usize>() == analysed
    }
}

fn blank_row(g: &FiniteGroup, h: Option<&Subgroup>) -> SurveyRow {
    SurveyRow {
        group: g.label(),
        order: g.order(),
        h_order: h.map_or(0, Subgroup::order),
        h_index: h.map_or(0, |h| g.order() / h.order()),
        faithful: None,
        case: None,
        type_tag: None,
        minimal_normals: None,
        monolith_order: None,
        degree: None,
        series_length: None,
        error: None,
    }
}

fn analyse_pair(g: &FiniteGroup, h: &Subgroup) -> SurveyRow {
    let mut row = blank_row(g, Some(h));
    let result: Result<()> = (|| {
        let report = analyze_irreducible(g, h)?;
        row.faithful = Some(report.faithful);
        row.case = Some(report.case);
        row.type_tag = Some(
            report
                .onan_scott
                .as_ref()
                .map_or_else(|| "Unclassifiable".to_owned(), |t| t.tag.label().to_owned()),
        );
        row.minimal_normals = Some(report.minimal_normals.len());
        row.monolith_order = Some(report.monolith.as_ref().map_or(1, Subgroup::order));
        let u = g
            .minimal_normal_subgroups()?
            .into_iter()
            .min_by(|a, b| a.members().cmp(b.members()))
            .unwrap_or_else(|| Subgroup::trivial(g));
        row.degree = Some(degree(g, h, &u, h.generators())?.value);
        row.series_length = Some(cdi_factorize(g, h, &u, h.generators())?.len());
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(format!("{}: {e}", e.name()));
    }
    row
}

/// Analyses every maximal subgroup class of every group. Rows are computed
/// in parallel on the current rayon pool and returned in corpus order.
pub fn survey(groups: &[FiniteGroup]) -> SurveyTable {
    let classes: Vec<std::result::Result<Vec<Subgroup>, String>> = groups
        .par_iter()
        .map(|g| {
            if g.order() == 1 {
                Ok(Vec::new())
            } else {
                maximal_subgroup_classes(g).map_err(|e| format!("{}: {e}", e.name()))
            }
        })
        .collect();
    let pairs: Vec<(usize, Option<&Subgroup>, Option<&String>)> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| -> Vec<(usize, Option<&Subgroup>, Option<&String>)> {
            match c {
                Ok(hs) => hs.iter().map(|h| (i, Some(h), None)).collect(),
                Err(e) => vec![(i, None, Some(e))],
            }
        })
        .collect();
    let rows: Vec<SurveyRow> = pairs
        .par_iter()
        .map(|&(i, h, err)| match (h, err) {
            (Some(h), _) => analyse_pair(&groups[i], h),
            (None, e) => SurveyRow {
                error: e.cloned(),
                ..blank_row(&groups[i], None)
            },
        })
        .collect();
    let mut cases: BTreeMap<String, usize> = ["i", "ii", "iii", "iv"]
        .iter()
        .map(|c| (c.to_string(), 0))
        .collect();
    let mut types = BTreeMap::new();
    let mut minimal_normal_counts = BTreeMap::new();
    let mut errors = 0;
    for r in &rows {
        if r.error.is_some() {
            errors += 1;
            continue;
        }
        if let Some(c) = r.case {
            *cases.entry(c.to_string()).or_insert(0) += 1;
        }
        if let Some(t) = &r.type_tag {
            *types.entry(t.clone()).or_insert(0) += 1;
        }
        if let Some(m) = r.minimal_normals {
            *minimal_normal_counts.entry(m).or_insert(0) += 1;
        }
    }
    SurveyTable {
        summary: SurveySummary {
            rows: rows.len(),
            errors,
            cases,
            types,
            minimal_normal_counts,
        },
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::symmetric;

    #[test]
    fn symmetric_five_has_one_as_row() {
        let table = survey(&[symmetric(5).unwrap()]);
        assert!(table.reconciles());
        let as_rows: Vec<_> = table
            .rows
            .iter()
            .filter(|r| r.type_tag.as_deref() == Some("AS"))
            .collect();
        assert!(as_rows.iter().any(|r| r.h_order == 24 && r.faithful == Some(true)));
        assert_eq!(table.summary.cases["ii"], 0);
        assert_eq!(table.summary.cases["iv"], 0);
        assert_eq!(table.summary.errors, 0);
    }

    #[test]
    fn empty_corpus() {
        let table = survey(&[]);
        assert!(table.rows.is_empty());
        assert!(table.reconciles());
    }
}
