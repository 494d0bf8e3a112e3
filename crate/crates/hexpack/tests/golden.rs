//! Byte-for-byte comparison of CLI outputs with the checked-in copies.
//! Set `UPDATE_GOLDEN=1` to rewrite them after an intended change.

mod support;

use support::golden;

#[test]
fn outputs_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let names = golden::render_all(dir.path());
    let golden_dir = golden::golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    if update {
        std::fs::create_dir_all(&golden_dir).unwrap();
    }
    for name in names {
        let fresh = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        let path = golden_dir.join(&name);
        if update {
            std::fs::write(&path, &fresh).unwrap();
            continue;
        }
        let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(stored == fresh, "{name} differs from its golden copy; rerun with UPDATE_GOLDEN=1 if intended");
    }
}

#[test]
fn two_runs_write_identical_bytes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let names = golden::render_all(a.path());
    golden::render_all(b.path());
    for name in names {
        assert_eq!(std::fs::read(a.path().join(&name)).unwrap(), std::fs::read(b.path().join(&name)).unwrap(), "{name}");
    }
}
