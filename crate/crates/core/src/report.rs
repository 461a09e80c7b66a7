//! Serializable report types, DOT emitters and CSV tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagonal::ThetaReport;
use crate::error::{CoreError, Result};
use crate::factorizer::{Certificate, FactorTag, FactorizationSeries, SeriesVerification};
use crate::group::FiniteGroup;
use crate::irreducible::{CaseEvidence, IrreducibleCase, IrreducibleReport, OnanScottTag};
use crate::lattice::SubgroupLattice;
use crate::subgroup::Subgroup;
use crate::survey::SurveyTable;
use crate::tree::FocalCensus;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDto {
    pub order: usize,
    /// Generators in cycle notation.
    pub generators: Vec<String>,
}

impl SubgroupDto {
    pub fn new(g: &FiniteGroup, k: &Subgroup) -> SubgroupDto {
        SubgroupDto {
            order: k.order(),
            generators: k.generator_strings(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub abelian: bool,
    pub conjugacy_classes: usize,
    pub normal_subgroup_orders: Vec<usize>,
}

impl GroupReport {
    pub fn new(g: &FiniteGroup) -> Result<GroupReport> {
        Ok(GroupReport {
            name: g.label(),
            degree: g.degree(),
            order: g.order(),
            generators: g.generator_permutations().iter().map(|p| p.to_string()).collect(),
            abelian: g.is_abelian(),
            conjugacy_classes: g.conjugacy_classes().len(),
            normal_subgroup_orders: g.normal_subgroups()?.iter().map(Subgroup::order).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub group: String,
    pub nodes: Vec<SubgroupDto>,
    /// Covering pairs `(lower, upper)` as node indices.
    pub covers: Vec<(usize, usize)>,
}

impl LatticeReport {
    pub fn new(g: &FiniteGroup, lattice: &SubgroupLattice) -> LatticeReport {
        LatticeReport {
            group: g.label(),
            nodes: lattice.nodes().iter().map(|k| SubgroupDto::new(g, k)).collect(),
            covers: lattice
                .covers()
                .iter()
                .enumerate()
                .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickeningReport {
    pub h: SubgroupDto,
    pub u: SubgroupDto,
    pub thickening: SubgroupDto,
    pub thick: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub value: usize,
    pub representatives: Vec<String>,
    pub covered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDto {
    pub from: usize,
    pub to: usize,
    pub tag: FactorTag,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub group: String,
    pub u: SubgroupDto,
    pub s: Vec<String>,
    pub chain: Vec<SubgroupDto>,
    pub steps: Vec<StepDto>,
    pub degree_trace: Vec<usize>,
    pub initial_degree: usize,
    pub verification: SeriesVerification,
}

impl SeriesReport {
    pub fn new(g: &FiniteGroup, series: &FactorizationSeries, verification: SeriesVerification) -> SeriesReport {
        SeriesReport {
            group: g.label(),
            u: SubgroupDto::new(g, &series.u),
            s: series.s.iter().map(|&x| g.permutation(x).to_string()).collect(),
            chain: series.chain.iter().map(|k| SubgroupDto::new(g, k)).collect(),
            steps: series
                .tags
                .iter()
                .enumerate()
                .map(|(i, t)| StepDto {
                    from: i,
                    to: i + 1,
                    tag: t.tag,
                    certificate: t.certificate.clone(),
                })
                .collect(),
            degree_trace: series.degree_trace.clone(),
            initial_degree: series.initial_degree,
            verification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub group: String,
    pub chief_series: Vec<SubgroupDto>,
    pub theta: Option<ThetaReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFlagsDto {
    pub subgroup: SubgroupDto,
    pub free: bool,
    pub supplement: bool,
    pub complement: bool,
    pub centralizer_order: usize,
    pub centralizer_in_h_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedPairDto {
    pub degree: usize,
    pub order: usize,
    pub h_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleDto {
    pub group: String,
    pub core: SubgroupDto,
    pub faithful: bool,
    pub reduced_pair: Option<ReducedPairDto>,
    pub irreducible: bool,
    pub minimal_normals: Vec<SubgroupDto>,
    pub monolith: Option<SubgroupDto>,
    pub per_normal: Vec<NormalFlagsDto>,
    pub case: IrreducibleCase,
    pub evidence: CaseEvidence,
    #[serde(rename = "type")]
    pub type_tag: Option<OnanScottTag>,
    pub typing_error: Option<String>,
}

impl IrreducibleDto {
    pub fn new(g: &FiniteGroup, r: &IrreducibleReport) -> IrreducibleDto {
        let w = r.group(g);
        IrreducibleDto {
            group: g.label(),
            core: SubgroupDto::new(g, &r.core),
            faithful: r.faithful,
            reduced_pair: r.faithful_form.as_ref().map(|f| ReducedPairDto {
                degree: f.group.degree(),
                order: f.group.order(),
                h_order: f.h.order(),
            }),
            irreducible: r.irreducible,
            minimal_normals: r.minimal_normals.iter().map(|m| SubgroupDto::new(w, m)).collect(),
            monolith: r.monolith.as_ref().map(|m| SubgroupDto::new(w, m)),
            per_normal: r
                .per_normal
                .iter()
                .map(|f| NormalFlagsDto {
                    subgroup: SubgroupDto::new(w, &f.subgroup),
                    free: f.free,
                    supplement: f.supplement,
                    complement: f.complement,
                    centralizer_order: f.centralizer.order(),
                    centralizer_in_h_order: f.centralizer_in_h.order(),
                })
                .collect(),
            case: r.case,
            evidence: r.evidence.clone(),
            type_tag: r.onan_scott.clone(),
            typing_error: r.typing_error.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkDto {
    pub k: usize,
    pub h: SubgroupDto,
    pub direct: SubgroupDto,
    pub via_thickening: SubgroupDto,
    pub representatives: Vec<u32>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeReport {
    pub d: usize,
    pub radius: usize,
    pub vertices: usize,
    pub group_order: usize,
    /// `|G_{v,k}|` for the center and each `k` in `0..=2R`.
    pub center_fixator_orders: Vec<usize>,
    pub closure: Option<PkDto>,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| CoreError::Parse(e.to_string()))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CoreError::Parse(e.to_string()))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Lattice as a DOT digraph: one node per subgroup, covering edges only.
pub fn lattice_dot(lattice: &SubgroupLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for (i, k) in lattice.nodes().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"order {}\"];", k.order());
    }
    for (i, ups) in lattice.covers().iter().enumerate() {
        for j in ups {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
    }
    out.push_str("}\n");
    out
}

/// A chain as a DOT path graph; `labels[i]` names the edge `i → i+1`.
pub fn chain_dot(name: &str, orders: &[usize], labels: &[String]) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for (i, o) in orders.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"order {o}\"];");
    }
    for (i, l) in labels.iter().enumerate().take(orders.len().saturating_sub(1)) {
        let _ = writeln!(out, "  n{i} -> n{} [label=\"{}\"];", i + 1, dot_escape(l));
    }
    out.push_str("}\n");
    out
}

pub fn series_dot(series: &FactorizationSeries) -> String {
    let orders: Vec<usize> = series.chain.iter().map(Subgroup::order).collect();
    let labels: Vec<String> = series.tags.iter().map(|t| t.tag.label().to_owned()).collect();
    chain_dot("series", &orders, &labels)
}

pub fn chief_series_dot(series: &[Subgroup]) -> String {
    let orders: Vec<usize> = series.iter().map(Subgroup::order).collect();
    let labels = vec!["chief".to_owned(); orders.len().saturating_sub(1)];
    chain_dot("chief_series", &orders, &labels)
}

fn csv_text<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CoreError::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CoreError::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CoreError::Parse(e.to_string()))
}

#[derive(Serialize)]
struct SurveyCsvRow<'a> {
    group: &'a str,
    order: usize,
    h_order: usize,
    h_index: usize,
    faithful: Option<bool>,
    case: Option<String>,
    #[serde(rename = "type")]
    type_tag: Option<&'a str>,
    minimal_normals: Option<usize>,
    monolith_order: Option<usize>,
    degree: Option<usize>,
    series_length: Option<usize>,
    error: Option<&'a str>,
}

/// One CSV line per survey row, with a header. Empty tables still get the
/// header line.
pub fn survey_csv(table: &SurveyTable) -> Result<String> {
    if table.rows.is_empty() {
        return Ok("group,order,h_order,h_index,faithful,case,type,minimal_normals,monolith_order,degree,series_length,error\n".into());
    }
    csv_text(table.rows.iter().map(|r| SurveyCsvRow {
        group: &r.group,
        order: r.order,
        h_order: r.h_order,
        h_index: r.h_index,
        faithful: r.faithful,
        case: r.case.map(|c| c.to_string()),
        type_tag: r.type_tag.as_deref(),
        minimal_normals: r.minimal_normals,
        monolith_order: r.monolith_order,
        degree: r.degree,
        series_length: r.series_length,
        error: r.error.as_deref(),
    }))
}

/// Census rows as `level,vertices,orbit`.
pub fn census_csv(census: &FocalCensus) -> Result<String> {
    csv_text(census.rows.iter())
}
