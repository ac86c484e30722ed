use serde::Serialize;

use super::family::{CheckSpec, FamilySpec};
use super::report::{
    self, CriterionJson, FamilyEcho, FixtureRow, GReport, LatticeReport, Line, OperatorMatrix, Report,
};
use super::CliError;
use crate::algebra::{MPoly, RatFunc, Rational};
use crate::brieskorn::{FamilyContext, Operator};
use crate::criteria::{self, CriterionReport};
use crate::lattice::{self, Lattice};

/// Largest `k` tried when matching `G` against `M^k`.
const M_POWER_SEARCH: u32 = 3;

/// Build the module context for a validated spec.
pub fn context(spec: &FamilySpec) -> Result<FamilyContext, CliError> {
    spec.validate()?;
    let f = spec.polynomial()?;
    for i in 0..f.nvars() {
        let d = f.derivative(i).expect("index in range");
        if !d.constant_term().is_zero() {
            return Err(CliError::Unsupported("the origin is not a critical point of f".into()));
        }
    }
    Ok(FamilyContext::new(
        f,
        spec.variables.clone(),
        spec.monomial_order(),
        spec.b_order,
    )?)
}

fn echo(spec: &FamilySpec, ctx: &FamilyContext) -> FamilyEcho {
    FamilyEcho {
        variables: spec.variables.clone(),
        parameter: spec.parameter.clone(),
        f: spec.f.clone(),
        f_expanded: ctx.f().render(ctx.names()),
        df_dt: ctx.dfdt().render(ctx.names()),
        b_order: ctx.b_order(),
        order: spec.order.name().to_string(),
        global_mu: ctx.global_mu(),
        corner: ctx.corner(),
        exponent: ctx.exponent(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisReport {
    pub family: FamilyEcho,
    pub staircase: Vec<String>,
    pub mu: usize,
    pub bad_t: Vec<String>,
}

pub fn basis(spec: &FamilySpec) -> Result<BasisReport, CliError> {
    let ctx = context(spec)?;
    Ok(BasisReport {
        family: echo(spec, &ctx),
        staircase: report::staircase(&ctx),
        mu: ctx.mu(),
        bad_t: report::rats(&ctx.bad_t()),
    })
}

pub fn matrix(spec: &FamilySpec, op: Operator) -> Result<OperatorMatrix, CliError> {
    let ctx = context(spec)?;
    Ok(report::operator_matrix(&ctx, op.name(), &ctx.operator_matrix(op)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeGReport {
    #[serde(rename = "P")]
    pub p: LatticeReport,
    #[serde(rename = "G")]
    pub g: GReport,
}

fn g_report(ctx: &FamilyContext) -> Result<(Lattice, GReport), CliError> {
    let sat = lattice::saturate_g(ctx)?;
    let confirmed = lattice::confirm_g(ctx, &sat)?;
    let g = sat.lattice.clone();
    let full = Lattice::full(ctx);
    let equals_m_power = (0..=M_POWER_SEARCH).find(|&k| lattice::m_power(ctx, k) == g);
    let mut contains_b_power = None;
    let mut bk = full.clone();
    for k in 0..ctx.b_order() {
        if g.contains_lattice(&bk) {
            contains_b_power = Some(k);
            break;
        }
        bk = bk.b_times();
    }
    let invariant_lines = lattice::kernel_nabla_mod_b(ctx, &g)
        .into_iter()
        .map(|l| Line {
            monomial: report::monomial(ctx, &l.monomial),
            coefficient: l.coefficient.canonical_string(),
        })
        .collect();
    let rep = GReport {
        lattice: report::lattice(ctx, &g),
        steps: sat.steps,
        ranks: sat.ranks,
        confirmed,
        equals_e: g == full,
        equals_m_power,
        contains_b_power,
        invariant_lines,
    };
    Ok((g, rep))
}

pub fn lattice_g(spec: &FamilySpec) -> Result<LatticeGReport, CliError> {
    let ctx = context(spec)?;
    let p = lattice::compute_p(&ctx);
    let (_, g) = g_report(&ctx)?;
    Ok(LatticeGReport {
        p: report::lattice(&ctx, &p),
        g,
    })
}

pub fn check_criterion(spec: &FamilySpec, k: u32) -> Result<CriterionJson, CliError> {
    let ctx = context(spec)?;
    Ok(report::criterion(&criteria::estim_criterion(&ctx, k)))
}

fn failed(name: String, detail: String) -> CriterionReport {
    CriterionReport {
        name,
        holds: false,
        checks: vec![criteria::Check {
            name: "applicable".into(),
            holds: false,
            detail,
        }],
        certificates: Vec::new(),
        bad_t: Vec::new(),
    }
}

/// Probe points when the spec gives none: the bad values and `-1, 0, 1`.
fn default_samples(ctx: &FamilyContext) -> Vec<Rational> {
    let mut s = ctx.bad_t();
    for v in [-1, 0, 1] {
        s.push(Rational::from_integer(v.into()));
    }
    s.sort();
    s.dedup();
    s
}

fn quasihomogeneous(ctx: &FamilyContext, param: &str) -> CriterionReport {
    let mut rep = CriterionReport {
        name: "quasihomogeneous".into(),
        holds: true,
        checks: Vec::new(),
        certificates: Vec::new(),
        bad_t: ctx.bad_t(),
    };
    let Some(w) = criteria::quasihomogeneous_detect(ctx.f()) else {
        rep.holds = false;
        rep.checks.push(criteria::Check {
            name: "weights".into(),
            holds: false,
            detail: "no weights make f quasi-homogeneous".into(),
        });
        return rep;
    };
    let shown: Vec<String> = ctx
        .names()
        .iter()
        .map(String::as_str)
        .chain(std::iter::once(param))
        .zip(&w)
        .map(|(v, q)| format!("{v}:{q}"))
        .collect();
    rep.checks.push(criteria::Check {
        name: "weights".into(),
        holds: true,
        detail: shown.join(" "),
    });
    let n = ctx.nvars();
    if w[n] == Rational::from_integer(0.into()) {
        let rows = criteria::spectral_identity(ctx, &w);
        let bad: Vec<String> = rows
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(m, _)| report::monomial(ctx, m))
            .collect();
        let ok = bad.is_empty();
        rep.holds = ok;
        rep.checks.push(criteria::Check {
            name: "spectral identity".into(),
            holds: ok,
            detail: if ok {
                format!("{} standard monomials", rows.len())
            } else {
                format!("fails on {}", bad.join(", "))
            },
        });
    }
    rep
}

fn lemma(ctx: &FamilyContext, k: u32) -> Result<CriterionReport, CliError> {
    let name = format!("lemma:{k}");
    let f = ctx.f();
    if !f.t_derivative().t_derivative().is_zero() {
        return Ok(failed(name, "f is not of the form P + tQ".into()));
    }
    let q = ctx.dfdt().clone();
    if !q.is_parameter_free() {
        return Ok(failed(name, "f is not of the form P + tQ".into()));
    }
    let p: MPoly = match f.specialize(&Rational::from_integer(0.into())) {
        Ok(p0) => p0.to_ratfunc(),
        Err(e) => return Ok(failed(name, e.to_string())),
    };
    Ok(criteria::example1_lemma(&p, &q, k, ctx.order())?)
}

fn extension(ctx: &FamilyContext) -> CriterionReport {
    match lattice::verify_extension_example2(ctx) {
        Err(e) => failed("extension".into(), e.to_string()),
        Ok(ext) => CriterionReport {
            name: "extension".into(),
            holds: ext.all_hold(),
            checks: ext
                .checks
                .iter()
                .map(|c| criteria::Check {
                    name: c.name.clone(),
                    holds: c.holds,
                    detail: String::new(),
                })
                .chain([
                    criteria::Check {
                        name: "lambda".into(),
                        holds: true,
                        detail: ext.lambda.canonical_string(),
                    },
                    criteria::Check {
                        name: "rho".into(),
                        holds: true,
                        detail: ext.rho.canonical_string(),
                    },
                ])
                .collect(),
            certificates: Vec::new(),
            bad_t: ctx.bad_t(),
        },
    }
}

fn run_check(spec: &FamilySpec, ctx: &FamilyContext, c: CheckSpec) -> Result<CriterionReport, CliError> {
    Ok(match c {
        CheckSpec::GEqualsE => criteria::g_equals_e_test(ctx, true)?,
        CheckSpec::Estim(k) => criteria::estim_criterion(ctx, k),
        CheckSpec::MuProbe => {
            let samples = if spec.samples.is_empty() {
                default_samples(ctx)
            } else {
                spec.samples.clone()
            };
            criteria::mu_constancy_probe(ctx, &samples).0
        }
        CheckSpec::QuasiHomogeneous => quasihomogeneous(ctx, &spec.parameter),
        CheckSpec::Lemma(k) => lemma(ctx, k)?,
        CheckSpec::Relations(p, q, r) => {
            if ctx.nvars() != 3 {
                failed(c.to_string(), "needs three variables".into())
            } else {
                criteria::example3_relations(ctx, p, q, r)
            }
        }
        CheckSpec::Extension => extension(ctx),
    })
}

/// Structural identities every family must satisfy.
fn self_checks(ctx: &FamilyContext, p: &Lattice, g: &Lattice, grep: &GReport) -> Vec<FixtureRow> {
    let mu = ctx.mu();
    let t = RatFunc::t();
    let mut comm = true;
    let mut leib = true;
    for i in 0..mu {
        let x = ctx.basis(0, i);
        comm &= ctx.a_apply(&x.b()).sub(&ctx.a_apply(&x).b()) == x.b_pow(2);
        let tx = x.scale(&t);
        leib &= ctx.nabla(&tx).sub(&ctx.nabla(&x).scale(&t)) == x.b();
    }
    vec![
        FixtureRow::new("commutator ab - ba = b^2", comm, format!("{mu} basis elements")),
        FixtureRow::new(
            "Leibniz nabla(t x) = t nabla(x) + b x",
            leib,
            format!("{mu} basis elements"),
        ),
        FixtureRow::new("G stable under b^-1 nabla", lattice::is_stable(ctx, g), ""),
        FixtureRow::new("G in P", p.contains_lattice(g), ""),
        FixtureRow::new(
            "b^k E in G",
            grep.contains_b_power.is_some(),
            grep.contains_b_power
                .map_or("not within the truncation".into(), |k| format!("k = {k}")),
        ),
    ]
}

/// Full pipeline: staircase, operator matrices, P, G, requested criteria and
/// structural self-checks.
pub fn analyze(spec: &FamilySpec) -> Result<Report, CliError> {
    let ctx = context(spec)?;
    let p = lattice::compute_p(&ctx);
    let (g, grep) = g_report(&ctx)?;
    let mut criteria_out = Vec::with_capacity(spec.checks.len());
    for &c in &spec.checks {
        criteria_out.push(report::criterion(&run_check(spec, &ctx, c)?));
    }
    let fixtures = self_checks(&ctx, &p, &g, &grep);
    Ok(Report {
        family: echo(spec, &ctx),
        staircase: report::staircase(&ctx),
        mu: ctx.mu(),
        bad_t: report::rats(&ctx.bad_t()),
        matrices: report::Matrices {
            a: report::operator_matrix(&ctx, "a", &ctx.operator_matrix(Operator::A)),
            nabla: report::operator_matrix(&ctx, "nabla", &ctx.operator_matrix(Operator::Nabla)),
        },
        p: report::lattice(&ctx, &p),
        g: grep,
        criteria: criteria_out,
        fixtures,
    })
}
