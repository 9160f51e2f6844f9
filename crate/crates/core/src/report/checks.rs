use std::collections::BTreeMap;
use std::time::Instant;

use super::{residual_status, Describe, FirstNonzero, RelationReport, Status};
use crate::algebra::{Field, Monomial, Order, PuiseuxSeries};
use crate::bilinear::{
    beta20_convolution_identity, convolution_replay, cs_beta_identity, cs_convolution_replay, relation_residual, sufficiency_check, Minus2Relation,
    RelationId,
};
use crate::blowup::{beta_coeff, derive_beta, describe_exponent, ny_residual};
use crate::identities::{
    check_symmetry, check_z2_z0, convergence_probe, recursion_reconstruct, ProbeConfig, RecursionFamily, RecursionState, SymmetryKind,
};
use crate::nekrasov::{EpsilonPair, Level, Parity, Sign};
use crate::{Error, Result};

/// Checks that stand apart from the blowup and bilinear families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Symmetry { kind: SymmetryKind, l: i64 },
    Z2Z0,
    Recursion(RecursionFamily),
    CsConvolution,
    CsBetaIdentity,
    Beta20Convolution,
    Sufficiency { d12: i64, d12p: i64, p: i64 },
}

/// One unit of work of the suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    DeriveBeta { l: i64, j: u8, d: i64 },
    Ny { l: i64, d: i64, j: u8 },
    Bilinear { id: RelationId, eps: Sign },
    Convolution { d1: i64, d2: i64, j: u8, eps: Sign },
    Identity(IdentityCheck),
    Probe(ProbeConfig),
}

struct Ctx<'a, B> {
    backend: &'a B,
    order: &'a Order,
    label: String,
}

impl<B: Describe> Ctx<'_, B> {
    fn report(&self, relation: &str, params: &[(&str, String)], status: Status, first_nonzero: Option<FirstNonzero>) -> RelationReport {
        RelationReport {
            relation: relation.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<BTreeMap<_, _>>(),
            order: self.order.to_string(),
            backend: self.label.clone(),
            status,
            first_nonzero,
            seconds: 0.0,
            cache_hits: 0,
        }
    }

    fn residual(&self, relation: &str, params: &[(&str, String)], s: Result<PuiseuxSeries<B::Coeff>>) -> RelationReport {
        match s {
            Ok(s) => {
                let (status, first) = residual_status(&s, self.backend);
                self.report(relation, params, status, first)
            }
            Err(e) => self.error(relation, params, &e),
        }
    }

    fn error(&self, relation: &str, params: &[(&str, String)], e: &Error) -> RelationReport {
        let mut p = params.to_vec();
        p.push(("error", e.to_string()));
        self.report(relation, &p, Status::Error, None)
    }
}

fn parity(j: u8) -> Result<Parity> {
    Parity::from_index(j)
}

/// Runs a check and returns its reports, timing and cache hits included.
/// Failures inside the check become reports with status `error`.
pub fn run_check<B: Describe>(check: &Check, order: &Order, backend: &B) -> Vec<RelationReport> {
    let before = backend.cache().stats();
    let start = Instant::now();
    let ctx = Ctx { backend, order, label: backend.label() };
    let mut reports = match check {
        Check::DeriveBeta { l, j, d } => vec![derive_report(&ctx, *l, *j, *d)],
        Check::Ny { l, d, j } => vec![ny_report(&ctx, *l, *d, *j)],
        Check::Bilinear { id, eps } => {
            let params = [("relation", id.to_string()), ("eps", eps.to_string())];
            let r = Minus2Relation::new(*id, *eps).and_then(|rel| relation_residual(&rel, order, backend));
            vec![ctx.residual("bilinear", &params, r)]
        }
        Check::Convolution { d1, d2, j, eps } => convolution_reports(&ctx, *d1, *d2, *j, *eps),
        Check::Identity(c) => identity_reports(&ctx, c),
        Check::Probe(cfg) => vec![probe_report(&ctx, cfg)],
    };
    let seconds = start.elapsed().as_secs_f64();
    let hits = backend.cache().stats().since(&before).hits();
    for r in reports.iter_mut() {
        r.seconds = seconds;
        r.cache_hits = hits;
    }
    reports
}

fn derive_report<B: Describe>(ctx: &Ctx<'_, B>, l: i64, j: u8, d: i64) -> RelationReport {
    let mut params = vec![("l", l.to_string()), ("j", j.to_string()), ("d", d.to_string())];
    let mut run = || -> Result<RelationReport> {
        let (level, par) = (Level::new(l)?, parity(j)?);
        let derived = match derive_beta(level, par, d, ctx.order, ctx.backend) {
            Ok(s) => s,
            Err(Error::UDependentBeta { .. }) => {
                params.push(("derived", "u-dependent".into()));
                return Ok(ctx.report("derive-beta", &params, Status::NoBeta, None));
            }
            Err(e) => return Err(e),
        };
        params.push(("derived", ctx.backend.describe_series(&derived)));
        match beta_coeff(d, par, level) {
            Ok(b) => {
                let table = b.series(&EpsilonPair::standard(ctx.backend.grid()), Monomial::ONE, ctx.order, ctx.backend)?;
                Ok(ctx.residual("derive-beta", &params, Ok(derived.sub(&table))))
            }
            Err(Error::UnsupportedBeta { .. }) => Ok(ctx.report("derive-beta", &params, Status::NoBeta, None)),
            Err(e) => Err(e),
        }
    };
    run().unwrap_or_else(|e| ctx.error("derive-beta", &[("l", l.to_string()), ("j", j.to_string()), ("d", d.to_string())], &e))
}

fn ny_report<B: Describe>(ctx: &Ctx<'_, B>, l: i64, d: i64, j: u8) -> RelationReport {
    let params = [("l", l.to_string()), ("d", d.to_string()), ("j", j.to_string())];
    let r = Level::new(l).and_then(|level| Ok((level, parity(j)?))).and_then(|(level, par)| ny_residual(level, d, par, ctx.order, ctx.backend));
    match r {
        Err(Error::UnsupportedBeta { .. }) => ctx.report("ny", &params, Status::NoBeta, None),
        other => ctx.residual("ny", &params, other),
    }
}

fn convolution_reports<B: Describe>(ctx: &Ctx<'_, B>, d1: i64, d2: i64, j: u8, eps: Sign) -> Vec<RelationReport> {
    let params = [("d1", d1.to_string()), ("d2", d2.to_string()), ("j", j.to_string()), ("eps", eps.to_string())];
    match parity(j).and_then(|par| convolution_replay(d1, d2, par, eps, ctx.order, ctx.backend)) {
        Ok(c) => {
            let mut out = vec![ctx.residual("convolution", &params, Ok(c.residual()))];
            if let Some(l) = c.listed_residual() {
                out.push(ctx.residual("convolution-listed", &params, Ok(l)));
            }
            out
        }
        Err(e) => vec![ctx.error("convolution", &params, &e)],
    }
}

fn first_mismatch<C: Field>(states: &[RecursionState<C>], pick: impl Fn(&RecursionState<C>) -> bool) -> Option<&RecursionState<C>> {
    states.iter().find(|s| !pick(s))
}

fn identity_reports<B: Describe>(ctx: &Ctx<'_, B>, check: &IdentityCheck) -> Vec<RelationReport> {
    let (b, order) = (ctx.backend, ctx.order);
    match check {
        IdentityCheck::Symmetry { kind, l } => {
            let params = [("kind", kind.to_string()), ("l", l.to_string())];
            vec![ctx.residual("symmetry", &params, Level::new(*l).and_then(|lv| check_symmetry(*kind, lv, order, b)))]
        }
        IdentityCheck::Z2Z0 => vec![ctx.residual("z2-z0", &[], check_z2_z0(order, b))],
        IdentityCheck::CsBetaIdentity => vec![ctx.residual("cs-beta-identity", &[], cs_beta_identity(order, b))],
        IdentityCheck::Beta20Convolution => vec![ctx.residual("beta20-convolution", &[], beta20_convolution_identity(order, b))],
        IdentityCheck::CsConvolution => match cs_convolution_replay(order, b) {
            Ok(r) => {
                let mut out = vec![ctx.residual("cs-convolution", &[], Ok(r.residual()))];
                for (d, s) in r.term_residuals() {
                    out.push(ctx.residual("cs-convolution-term", &[("d", d.to_string())], Ok(s)));
                }
                out
            }
            Err(e) => vec![ctx.error("cs-convolution", &[], &e)],
        },
        IdentityCheck::Sufficiency { d12, d12p, p } => {
            let params = [("d12", d12.to_string()), ("d12p", d12p.to_string()), ("p", p.to_string())];
            match sufficiency_check(*d12, *d12p, *p, b) {
                Ok(true) => vec![ctx.report("sufficiency-determinant", &params, Status::ExactZero, None)],
                Ok(false) => {
                    let f = FirstNonzero { exponent: "0".into(), coefficient: "determinant differs from its factored form or vanishes".into() };
                    vec![ctx.report("sufficiency-determinant", &params, Status::Nonzero, Some(f))]
                }
                Err(e) => vec![ctx.error("sufficiency-determinant", &params, &e)],
            }
        }
        IdentityCheck::Recursion(family) => {
            let name = match family {
                RecursionFamily::Level2 => "l2",
                RecursionFamily::Level1 => "l1",
            };
            let params = [("family", name.to_string())];
            let k = order.floor().max(1);
            match recursion_reconstruct(*family, k, b) {
                Ok(states) => {
                    let d = b.grid().denominator();
                    let rec = match first_mismatch(&states, |s| s.matches_direct()) {
                        None => ctx.report("recursion", &params, Status::ExactZero, None),
                        Some(s) => {
                            let diff = if s.c1 != s.direct.0 { s.c1.minus(&s.direct.0) } else { s.c2.minus(&s.direct.1) };
                            let f = FirstNonzero { exponent: describe_exponent(s.k * d, d), coefficient: b.describe_coeff(&diff) };
                            ctx.report("recursion", &params, Status::Nonzero, Some(f))
                        }
                    };
                    let det = match first_mismatch(&states, |s| s.determinant_matches()) {
                        None => ctx.report("recursion-determinant", &params, Status::ExactZero, None),
                        Some(s) => {
                            let ratio = s.determinant.divided_by(&s.stated_determinant).map(|r| b.describe_coeff(&r)).unwrap_or_default();
                            let f = FirstNonzero { exponent: describe_exponent(s.k * d, d), coefficient: format!("computed/stated = {ratio}") };
                            ctx.report("recursion-determinant", &params, Status::Nonzero, Some(f))
                        }
                    };
                    vec![rec, det]
                }
                Err(e) => vec![ctx.error("recursion", &params, &e)],
            }
        }
    }
}

fn probe_report<B: Describe>(ctx: &Ctx<'_, B>, cfg: &ProbeConfig) -> RelationReport {
    use crate::algebra::format_rational;
    let mut params = vec![
        ("m", cfg.m.to_string()),
        ("n", cfg.n.to_string()),
        ("q", format_rational(&cfg.q)),
        ("u", format_rational(&cfg.u)),
        ("z0", format_rational(&cfg.z0)),
        ("kmax", cfg.kmax.to_string()),
    ];
    let mut r = match convergence_probe(cfg) {
        Ok(p) => {
            params.extend([("L1", p.l1.clone()), ("L2", p.l2.clone()), ("C", p.constant.clone())]);
            let status = if p.ok() { Status::BoundSatisfied } else { Status::BoundViolated };
            let first = p.rows.iter().find(|r| !(r.coefficient_ok && r.partial_sum_ok && r.determinants_nonzero)).map(|r| FirstNonzero {
                exponent: r.k.to_string(),
                coefficient: format!("|c_k| = {}, partial sum = {}", r.magnitude, r.partial_sum),
            });
            ctx.report("convergence-probe", &params, status, first)
        }
        Err(e) => ctx.error("convergence-probe", &params, &e),
    };
    r.order = cfg.kmax.to_string();
    r.backend = "exact-values".into();
    r
}
