//! Cache behaviour: bit-exact round-trips, stale-version invalidation, and
//! concurrent readers.

use holocoh::groups::{Group, GroupSpec};
use holocoh::resolution::{Limits, Resolution};
use holocoh_cli::cache;
use std::fs;
use std::sync::Arc;

fn build(spec: GroupSpec, degree: usize) -> Resolution {
    let g = Group::new(spec).unwrap();
    Resolution::new(&g, degree).unwrap()
}

#[test]
fn round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let res = build(GroupSpec::Holomorph { rho: 3 }, 5);
    let path = cache::store(dir.path(), &res).unwrap().expect("lock free");
    assert!(path.exists());

    let group = res.group().clone();
    let loaded = cache::load(dir.path(), &group, Limits::default()).expect("hit");
    assert_eq!(loaded.ranks(), res.ranks());
    for n in 1..=res.max_degree() {
        let a = res.differential(n);
        let b = loaded.differential(n);
        assert_eq!(a.src_rank, b.src_rank);
        assert_eq!(a.tgt_rank, b.tgt_rank);
        for (x, y) in a.images.iter().zip(&b.images) {
            assert_eq!(x, y, "differential {n} images must round-trip bit-exactly");
        }
    }
    loaded.check_invariants().unwrap();
}

#[test]
fn stale_version_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let res = build(GroupSpec::Cyclic { order: 8 }, 4);
    let path = cache::store(dir.path(), &res).unwrap().unwrap();

    // Flip the format version field (right after the 6-byte magic).
    let mut bytes = fs::read(&path).unwrap();
    bytes[6] ^= 0xFF;
    fs::write(&path, &bytes).unwrap();

    let group = res.group().clone();
    assert!(cache::load(dir.path(), &group, Limits::default()).is_none());
}

#[test]
fn truncated_file_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let res = build(GroupSpec::Cyclic { order: 4 }, 4);
    let path = cache::store(dir.path(), &res).unwrap().unwrap();
    let bytes = fs::read(&path).unwrap();
    fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
    let group = res.group().clone();
    assert!(cache::load(dir.path(), &group, Limits::default()).is_none());
}

#[test]
fn wrong_group_key_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let res = build(GroupSpec::Cyclic { order: 8 }, 3);
    cache::store(dir.path(), &res).unwrap().unwrap();
    // Same file name cannot collide, but force the issue by renaming.
    let src = cache::entry_path(dir.path(), res.group());
    let other = Group::new(GroupSpec::Cyclic { order: 16 }).unwrap();
    let dst = cache::entry_path(dir.path(), &other);
    fs::rename(&src, &dst).unwrap();
    assert!(cache::load(dir.path(), &other, Limits::default()).is_none());
}

#[test]
fn concurrent_readers_agree() {
    let dir = tempfile::tempdir().unwrap();
    let res = build(GroupSpec::DihedralGz { rho: 3 }, 5);
    cache::store(dir.path(), &res).unwrap().unwrap();
    let group = res.group().clone();
    let dir_path = Arc::new(dir.path().to_path_buf());

    let handles: Vec<_> = (0..8)
        .map(|_| {
            let group = group.clone();
            let dir_path = Arc::clone(&dir_path);
            std::thread::spawn(move || {
                let loaded = cache::load(&dir_path, &group, Limits::default()).expect("hit");
                loaded.ranks()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), res.ranks());
    }
}

#[test]
fn list_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    cache::store(dir.path(), &build(GroupSpec::Cyclic { order: 8 }, 4))
        .unwrap()
        .unwrap();
    cache::store(dir.path(), &build(GroupSpec::DihedralGz { rho: 3 }, 3))
        .unwrap()
        .unwrap();
    let entries = cache::list(dir.path());
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().any(|e| e.key == "cyclic-8"));
    assert!(entries
        .iter()
        .any(|e| e.key == "gz-rho3" && e.ranks == vec![1, 2, 3, 4]));
    let removed = cache::clear(dir.path()).unwrap();
    assert_eq!(removed, 2);
    assert!(cache::list(dir.path()).is_empty());
}
