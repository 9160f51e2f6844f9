use nekrasov_blowup::algebra::{Backend, DiskCache, Grid, Order, ParameterPoint, PointBackend, PuiseuxSeries, Rational};
use nekrasov_blowup::nekrasov::{instanton_series, EpsilonPair, Level};

fn backend(dir: &std::path::Path) -> PointBackend {
    PointBackend::new(ParameterPoint::defaults()[0].clone(), Grid::default()).with_disk_cache(DiskCache::new(dir).unwrap())
}

fn z(b: &PointBackend) -> PuiseuxSeries<Rational> {
    let g = Grid::default();
    instanton_series(Level::ONE, &EpsilonPair::standard(g), g.u(), &Order::integer(2), b).unwrap()
}

#[test]
fn put_then_get_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path()).unwrap();
    let s = z(&PointBackend::new(ParameterPoint::defaults()[1].clone(), Grid::default()));
    cache.put("k", &s).unwrap();
    let back: PuiseuxSeries<Rational> = cache.get("k").unwrap().unwrap();
    assert_eq!(back, s);
    assert!(cache.get::<Rational>("other").is_none());
}

#[test]
fn second_backend_reads_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let first = backend(dir.path());
    let a = z(&first);
    assert_eq!(first.cache().stats().disk_hits, 0);
    assert!(first.cache().stats().misses > 0);

    let second = backend(dir.path());
    let b = z(&second);
    assert_eq!(a, b);
    assert!(second.cache().stats().disk_hits > 0);
    assert_eq!(second.cache().stats().misses, 0);
}

#[test]
fn corrupt_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let a = z(&backend(dir.path()));
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace(" : z^(", " : zz^(")).unwrap();
    }
    let b = backend(dir.path());
    assert_eq!(z(&b), a);
    assert_eq!(b.cache().stats().disk_hits, 0);
    assert!(b.cache().stats().misses > 0);
}

#[test]
fn keys_depend_on_the_point() {
    let dir = tempfile::tempdir().unwrap();
    z(&backend(dir.path()));
    let n = std::fs::read_dir(dir.path()).unwrap().count();
    let other = PointBackend::new(ParameterPoint::defaults()[2].clone(), Grid::default()).with_disk_cache(DiskCache::new(dir.path()).unwrap());
    z(&other);
    assert_eq!(other.cache().stats().disk_hits, 0);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > n);
}
