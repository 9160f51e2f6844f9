use rayon::prelude::*;

use super::{run_check, Check, Describe, IdentityCheck, RelationReport, RunConfig};
use crate::algebra::{BackendKind, DiskCache, PointBackend, SymbolicBackend, CACHE_DIR_ENV};
use crate::bilinear::{listed_cases, Minus2Relation};
use crate::identities::{ProbeConfig, RecursionFamily, SymmetryKind};
use crate::nekrasov::{Parity, Sign};
use crate::Result;

/// Every check the full run performs, in report order.
pub fn default_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for l in 0..=2 {
        for d in -1..=1 {
            for j in 0..=1 {
                out.push(Check::DeriveBeta { l, j, d });
            }
        }
    }
    for (l, j, d) in [(0, 0, 2), (0, 0, -2), (1, 0, 2), (1, 0, -2)] {
        out.push(Check::DeriveBeta { l, j, d });
    }
    for l in 0..=2 {
        for d in -1..=1 {
            for j in 0..=1 {
                out.push(Check::Ny { l, d, j });
            }
        }
    }
    for (l, d) in [(0, 2), (0, -2), (1, 2), (1, -2)] {
        out.push(Check::Ny { l, d, j: 0 });
    }
    for rel in Minus2Relation::all() {
        out.push(Check::Bilinear { id: rel.id, eps: rel.eps });
    }
    for par in [Parity::Even, Parity::Odd] {
        for (d1, d2) in listed_cases(par) {
            for eps in [Sign::Plus, Sign::Minus] {
                out.push(Check::Convolution { d1, d2, j: par.index(), eps });
            }
        }
    }
    out.extend(
        [
            IdentityCheck::CsConvolution,
            IdentityCheck::CsBetaIdentity,
            IdentityCheck::Beta20Convolution,
            IdentityCheck::Sufficiency { d12: 1, d12p: -1, p: 0 },
            IdentityCheck::Sufficiency { d12: 1, d12p: -1, p: 1 },
            IdentityCheck::Sufficiency { d12: 3, d12p: -1, p: 0 },
        ]
        .map(Check::Identity),
    );
    for kind in SymmetryKind::ALL {
        for &l in kind.levels() {
            out.push(Check::Identity(IdentityCheck::Symmetry { kind, l }));
        }
    }
    out.push(Check::Identity(IdentityCheck::Z2Z0));
    out.push(Check::Identity(IdentityCheck::Recursion(RecursionFamily::Level2)));
    out.push(Check::Identity(IdentityCheck::Recursion(RecursionFamily::Level1)));
    out.push(Check::Probe(ProbeConfig::default()));
    out
}

fn disk_cache(config: &RunConfig) -> Result<Option<DiskCache>> {
    let dir = config.cache_dir.clone().or_else(|| std::env::var_os(CACHE_DIR_ENV).map(Into::into));
    dir.map(DiskCache::new).transpose()
}

fn run_on<B: Describe>(checks: &[Check], config: &RunConfig, backend: &B) -> Vec<RelationReport> {
    checks.iter().flat_map(|c| run_check(c, &config.order, backend)).collect()
}

/// Runs `checks` at every configured point (in parallel) or once
/// symbolically. The probe does not depend on the backend and runs once.
/// Output order is deterministic.
pub fn run_checks(config: &RunConfig, checks: &[Check]) -> Result<Vec<RelationReport>> {
    let (probes, rest): (Vec<Check>, Vec<Check>) = checks.iter().cloned().partition(|c| matches!(c, Check::Probe(_)));
    let disk = disk_cache(config)?;
    let mut out: Vec<RelationReport> = match config.backend {
        BackendKind::Symbolic => run_on(&rest, config, &SymbolicBackend::new(config.grid)),
        BackendKind::Point => config
            .points
            .par_iter()
            .map(|p| {
                let mut backend = PointBackend::new(p.clone(), config.grid);
                if let Some(d) = &disk {
                    backend = backend.with_disk_cache(d.clone());
                }
                run_on(&rest, config, &backend)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
    };
    if !probes.is_empty() {
        // the probe ignores the backend; any one will do
        let b = SymbolicBackend::new(config.grid);
        out.extend(run_on(&probes, config, &b));
    }
    Ok(out)
}

/// [`run_checks`] with [`default_checks`].
pub fn run_suite(config: &RunConfig) -> Result<Vec<RelationReport>> {
    run_checks(config, &default_checks())
}

/// Drops the fields that legitimately differ between two identical runs.
pub fn strip_timing(reports: &[RelationReport]) -> Vec<RelationReport> {
    reports.iter().map(|r| RelationReport { seconds: 0.0, cache_hits: 0, ..r.clone() }).collect()
}
