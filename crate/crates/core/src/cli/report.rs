//! JSON report types. Every rational function is written as `num/den`.

use serde::Serialize;

use crate::algebra::{Monomial, RatFunc, Rational};
use crate::brieskorn::{BClass, FamilyContext};
use crate::criteria::CriterionReport;
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyEcho {
    pub variables: Vec<String>,
    pub parameter: String,
    pub f: String,
    pub f_expanded: String,
    pub df_dt: String,
    pub b_order: usize,
    pub order: String,
    pub global_mu: Option<usize>,
    pub corner: u32,
    pub exponent: u32,
}

/// One `mu x mu` block: coefficients of `b^row` in images of `b^col` basis elements.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Block {
    pub row: usize,
    pub col: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorMatrix {
    pub op: String,
    pub mu: usize,
    pub b_order: usize,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Matrices {
    pub a: OperatorMatrix,
    pub nabla: OperatorMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Term {
    pub b: usize,
    pub monomial: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeReport {
    pub rank: usize,
    pub layer_ranks: Vec<usize>,
    pub generators: Vec<Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Line {
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GReport {
    #[serde(flatten)]
    pub lattice: LatticeReport,
    pub steps: usize,
    pub ranks: Vec<usize>,
    pub confirmed: bool,
    pub equals_e: bool,
    /// Smallest `k` with `G = M^k`, if found.
    pub equals_m_power: Option<u32>,
    /// Smallest `k` with `b^k E ⊂ G`.
    pub contains_b_power: Option<usize>,
    pub invariant_lines: Vec<Line>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionJson {
    pub name: String,
    pub holds: bool,
    pub checks: Vec<CheckRow>,
    pub certificates: usize,
    pub certificates_verified: bool,
    pub bad_t: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl FixtureRow {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        FixtureRow {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub family: FamilyEcho,
    pub staircase: Vec<String>,
    pub mu: usize,
    pub bad_t: Vec<String>,
    pub matrices: Matrices,
    #[serde(rename = "P")]
    pub p: LatticeReport,
    #[serde(rename = "G")]
    pub g: GReport,
    pub criteria: Vec<CriterionJson>,
    pub fixtures: Vec<FixtureRow>,
}

impl Report {
    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn rat(q: &Rational) -> String {
    q.to_string()
}

pub fn rats(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(rat).collect()
}

pub fn staircase(ctx: &FamilyContext) -> Vec<String> {
    ctx.staircase().iter().map(|m| m.render(ctx.names())).collect()
}

pub fn monomial(ctx: &FamilyContext, m: &Monomial) -> String {
    m.render(ctx.names())
}

pub fn operator_matrix(ctx: &FamilyContext, name: &str, full: &[Vec<RatFunc>]) -> OperatorMatrix {
    let mu = ctx.mu();
    let n = ctx.b_order();
    let mut blocks = Vec::new();
    for col in 0..n {
        for row in 0..n {
            let entries: Vec<Vec<RatFunc>> = (0..mu)
                .map(|i| (0..mu).map(|k| full[row * mu + i][col * mu + k].clone()).collect())
                .collect();
            if entries.iter().flatten().all(RatFunc::is_zero) {
                continue;
            }
            blocks.push(Block {
                row,
                col,
                entries: entries
                    .iter()
                    .map(|r| r.iter().map(RatFunc::canonical_string).collect())
                    .collect(),
            });
        }
    }
    OperatorMatrix {
        op: name.to_string(),
        mu,
        b_order: n,
        blocks,
    }
}

pub fn class_terms(ctx: &FamilyContext, x: &BClass) -> Vec<Term> {
    let mu = ctx.mu();
    let mut out = Vec::new();
    for j in 0..x.order() {
        for i in 0..mu {
            let c = x.coord(j, i);
            if !c.is_zero() {
                out.push(Term {
                    b: j,
                    monomial: monomial(ctx, &ctx.staircase()[i]),
                    coeff: c.canonical_string(),
                });
            }
        }
    }
    out
}

pub fn lattice(ctx: &FamilyContext, l: &Lattice) -> LatticeReport {
    LatticeReport {
        rank: l.rank(),
        layer_ranks: l.layer_ranks(),
        generators: l.generators().iter().map(|g| class_terms(ctx, g)).collect(),
    }
}

pub fn criterion(rep: &CriterionReport) -> CriterionJson {
    CriterionJson {
        name: rep.name.clone(),
        holds: rep.holds,
        checks: rep
            .checks
            .iter()
            .map(|c| CheckRow {
                name: c.name.clone(),
                holds: c.holds,
                detail: c.detail.clone(),
            })
            .collect(),
        certificates: rep.certificates.len(),
        certificates_verified: rep.certificates_verify(),
        bad_t: rats(&rep.bad_t),
    }
}
