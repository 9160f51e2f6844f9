//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::time::Instant;

use nekrasov_blowup::algebra::{int, Backend, Field, Grid, Monomial, Order, ParameterPoint, PointBackend, PuiseuxSeries, SymbolicBackend};
use nekrasov_blowup::bilinear::{
    beta20_convolution_identity, convolution_replay, cs_beta_identity, cs_convolution_replay, listed_cases, relation_residual, Minus2Relation,
};
use nekrasov_blowup::blowup::{beta_coeff, derive_beta, ny_residual};
use nekrasov_blowup::identities::{
    check_symmetry, check_z2_z0, convergence_probe, recursion_reconstruct, ProbeConfig, RecursionFamily, SymmetryKind,
};
use nekrasov_blowup::nekrasov::{EpsilonPair, Level, Parity, Sign};
use nekrasov_blowup::partitions::partitions_of;
use nekrasov_blowup::report::{run_suite, strip_timing, RunConfig};
use num_bigint::BigUint;

const G: i64 = 16;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn expect_zero<C: Field>(&mut self, r: nekrasov_blowup::Result<PuiseuxSeries<C>>, what: impl Into<String>) {
        let what = what.into();
        match r {
            Ok(s) if s.is_zero() => {}
            Ok(s) => {
                let (e, _) = s.leading().expect("nonzero");
                self.failures.push(format!("{what} (nonzero at z^{e}/{G})"));
            }
            Err(e) => self.failures.push(format!("{what} ({e})")),
        }
    }
}

fn points() -> Vec<PointBackend> {
    ParameterPoint::defaults().into_iter().map(|p| PointBackend::new(p, Grid::default())).collect()
}

/// `sum c * Q1^a Q2^b z^(e/16)` built directly from monomials.
fn series<B: Backend>(b: &B, trunc: i64, terms: &[(i64, i64, i64, i64)]) -> PuiseuxSeries<B::Coeff> {
    let mut s = PuiseuxSeries::zero(b.grid(), trunc);
    for &(c, q1, q2, e) in terms {
        let m = b.monomial(Monomial::new(q1, q2, 0)).unwrap().scaled(&int(c));
        s.add_term(e, &m);
    }
    s
}

type Terms = Vec<(i64, i64, i64, i64)>;

/// The β table, written out independently of the library's.
fn table(d: i64, j: u8) -> Terms {
    match (d, j) {
        (_, 0) => vec![(1, 0, 0, 0)],
        (-1, 1) => vec![(1, -4, -4, 4)],
        (0, 1) => vec![],
        (1, 1) => vec![(-1, 4, 4, 4)],
        _ => unreachable!(),
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let order = Order::integer(3);
    for b in points() {
        for d in -1..=1 {
            for j in 0..=1u8 {
                let par = Parity::from_index(j).unwrap();
                let expected = series(&b, 3 * G, &table(d, j));
                let tab = beta_coeff(d, par, Level::ZERO).unwrap().series(&EpsilonPair::standard(b.grid()), Monomial::ONE, &order, &b).unwrap();
                o.expect(tab == expected, format!("table entry d={d} j={j}"));
                for l in [0, 1] {
                    let r = derive_beta(Level::new(l).unwrap(), par, d, &order, &b).map(|s| s.sub(&expected));
                    o.expect_zero(r, format!("derive_beta l={l} j={j} d={d} at {}", b.label()));
                }
            }
        }
    }
    o.notes.push("six entries, derived at l=0,1, order 3, 3 points".into());
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let mut run = |b: &dyn Fn(Level, i64, Parity) -> nekrasov_blowup::Result<bool>, label: &str| {
        for l in 0..=2 {
            for d in -1..=1 {
                for j in 0..=1u8 {
                    match b(Level::new(l).unwrap(), d, Parity::from_index(j).unwrap()) {
                        Ok(true) => {}
                        Ok(false) => o.failures.push(format!("(l,j,d)=({l},{j},{d}) {label}")),
                        Err(e) => o.failures.push(format!("(l,j,d)=({l},{j},{d}) {label}: {e}")),
                    }
                }
            }
        }
    };
    for b in points() {
        run(&|l, d, j| Ok(ny_residual(l, d, j, &Order::integer(3), &b)?.is_zero()), &format!("order 3 at {}", b.label()));
    }
    let s = SymbolicBackend::new(Grid::default());
    run(&|l, d, j| Ok(ny_residual(l, d, j, &Order::integer(2), &s)?.is_zero()), "order 2 symbolic");
    dedup_by_tuple(&mut o);
    o
}

/// Collapses per-point failures of the same tuple into one line.
fn dedup_by_tuple(o: &mut Outcome) {
    let mut seen: Vec<String> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for f in &o.failures {
        let key = f.split(' ').next().unwrap_or_default().to_string();
        match seen.iter().position(|k| *k == key) {
            Some(i) => counts[i] += 1,
            None => {
                seen.push(key);
                counts.push(1);
            }
        }
    }
    o.failures = seen.into_iter().zip(counts).map(|(k, n)| format!("{k} fails in {n} of 4 runs")).collect();
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let order = Order::integer(3);
    let cases: [(i64, i64, Terms); 3] =
        [(0, 2, vec![(1, 0, 0, 0), (-1, 16, 16, 16)]), (0, -2, vec![(1, 0, 0, 0), (-1, -16, -16, 16)]), (1, 2, vec![(1, 0, 0, 0)])];
    for p in ParameterPoint::defaults() {
        let other = p.with_u(ParameterPoint::alternate_u()).unwrap();
        for (l, d, want) in &cases {
            let level = Level::new(*l).unwrap();
            for q in [&p, &other] {
                let b = PointBackend::new(q.clone(), Grid::default());
                let r = derive_beta(level, Parity::Even, *d, &order, &b).map(|s| s.sub(&series(&b, 3 * G, want)));
                o.expect_zero(r, format!("beta(l={l}, j=0, d={d}) at {q}"));
            }
        }
    }
    o.notes.push("order 3, 3 points, each at two values of u".into());
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let order = Order::integer(2);
    for b in points() {
        for rel in Minus2Relation::all() {
            o.expect_zero(relation_residual(&rel, &order, &b), format!("{} eps={} at {}", rel.id, rel.eps, b.label()));
        }
    }
    if o.failures.iter().all(|f| f.starts_with("RCS1-printed")) && !o.failures.is_empty() {
        o.notes.push("the level-one relation as printed is false; the corrected RCS1 holds".into());
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let order = Order::integer(2);
    for b in points() {
        for par in [Parity::Even, Parity::Odd] {
            for (d1, d2) in listed_cases(par) {
                for eps in [Sign::Plus, Sign::Minus] {
                    let tag = format!("j={} (d1,d2)=({d1},{d2}) eps={eps}", par.index());
                    match convolution_replay(d1, d2, par, eps, &order, &b) {
                        Ok(c) => {
                            o.expect(c.residual().is_zero(), format!("{tag}: direct != collapsed"));
                            o.expect(c.listed_residual().is_some_and(|r| r.is_zero()), format!("{tag}: listed coefficient"));
                            if (par, d1, d2) == (Parity::Odd, 1, 1) {
                                o.expect(c.direct.is_zero() == (eps == Sign::Minus), format!("{tag}: vanishing pattern"));
                            }
                        }
                        Err(e) => o.failures.push(format!("{tag}: {e}")),
                    }
                }
            }
        }
        o.expect_zero(beta20_convolution_identity(&order, &b), format!("beta(2,0) convolution identity at {}", b.label()));
        o.expect_zero(cs_beta_identity(&order, &b), format!("level-one beta identity at {}", b.label()));
        match cs_convolution_replay(&order, &b) {
            Ok(r) => o.expect(r.residual().is_zero() && r.term_residuals().iter().all(|(_, s)| s.is_zero()), "level-one convolution"),
            Err(e) => o.failures.push(format!("level-one convolution: {e}")),
        }
    }
    // the same failures recur at every point
    o.failures.sort();
    o.failures.dedup();
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    for b in points() {
        o.expect_zero(check_z2_z0(&Order::integer(4), &b), format!("Z2=Z0 at {}", b.label()));
        for kind in SymmetryKind::ALL {
            for &l in kind.levels() {
                o.expect_zero(check_symmetry(kind, Level::new(l).unwrap(), &Order::integer(3), &b), format!("{kind} l={l}"));
            }
        }
        for family in [RecursionFamily::Level2, RecursionFamily::Level1] {
            match recursion_reconstruct(family, 3, &b) {
                Ok(states) => {
                    for s in states {
                        o.expect(s.matches_direct(), format!("{family:?} k={} reconstruction at {}", s.k, b.label()));
                        o.expect(s.determinant_matches(), format!("{family:?} k={} determinant", s.k));
                    }
                }
                Err(e) => o.failures.push(format!("{family:?}: {e}")),
            }
        }
    }
    o.failures.sort();
    o.failures.dedup();
    o
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `n! / prod hooks`, the hook-length formula with hooks computed here.
fn dim(parts: &[u32]) -> BigUint {
    let n: u32 = parts.iter().sum();
    let mut hooks = BigUint::from(1u32);
    for (i, &r) in parts.iter().enumerate() {
        for j in 0..r {
            let below = parts[i + 1..].iter().filter(|&&p| p > j).count() as u32;
            hooks *= BigUint::from(r - j - 1 + below + 1);
        }
    }
    factorial(n) / hooks
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let cfg = ProbeConfig::default();
    match convergence_probe(&cfg) {
        Ok(p) => {
            o.expect(p.ok(), "probe bounds");
            o.expect(p.rows.len() == 9, "rows for k = 0..8");
            o.notes.push(format!("L1={}, L2={}, C={}, bound {}", p.l1, p.l2, p.constant, p.bound));
        }
        Err(e) => o.failures.push(e.to_string()),
    }
    for n in 0..=8 {
        let total: BigUint = partitions_of(n).iter().map(|p| dim(p.parts()).pow(2)).sum();
        o.expect(total == factorial(n), format!("sum of dim^2 for n={n}"));
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let dir = tempfile::tempdir().expect("temp dir");
    let config = RunConfig { cache_dir: Some(dir.path().to_path_buf()), ..RunConfig::default() };
    let files = || std::fs::read_dir(dir.path()).map(|d| d.count()).unwrap_or(0);
    let first = run_suite(&config).expect("first run");
    let written = files();
    let second = run_suite(&config).expect("second run");
    let json = |r: &[nekrasov_blowup::report::RelationReport]| {
        strip_timing(r).iter().map(|x| serde_json::to_string(x).unwrap()).collect::<Vec<_>>().join("\n")
    };
    let hits = |r: &[nekrasov_blowup::report::RelationReport]| r.iter().map(|x| x.cache_hits).sum::<u64>();
    o.expect(json(&first) == json(&second), "reports differ between runs");
    o.expect(written > 0, "first run wrote no cache files");
    o.expect(files() == written, "second run recomputed and wrote new cache entries");
    o.expect(hits(&second) > hits(&first), "second run not served from cache");
    o.notes.push(format!("{} reports, {written} cache files, cache hits {} then {}", first.len(), hits(&first), hits(&second)));
    o
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("beta table reproduction", criterion_1),
        ("blowup relations", criterion_2),
        ("higher-order beta", criterion_3),
        ("-2 bilinear relations", criterion_4),
        ("convolution replay", criterion_5),
        ("identities", criterion_6),
        ("convergence probe", criterion_7),
        ("determinism and cache", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict}: {name} ({:.1}s)", i + 1, t.elapsed().as_secs_f64());
        for n in &o.notes {
            println!("    {n}");
        }
        for fl in &o.failures {
            println!("    failed: {fl}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("{} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
