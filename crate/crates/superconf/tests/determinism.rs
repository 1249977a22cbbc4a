use std::fs;
use std::path::Path;
use std::process::Command;

fn construct(out: &Path, threads: &str) {
    let status = Command::new(env!("CARGO_BIN_EXE_superconf"))
        .env("SUPERCONF_THREADS", threads)
        .args(["construct", "--curve", "whitney", "--grid", "24,20", "--project", "stereo", "--out"])
        .arg(out)
        .status()
        .expect("binary runs");
    assert_eq!(status.code(), Some(0));
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("t1");
    construct(&one, "1");
    let mut names: Vec<_> = fs::read_dir(&one).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 7);
    for threads in ["2", "4"] {
        let other = dir.path().join(format!("t{threads}"));
        construct(&other, threads);
        for n in &names {
            let a = fs::read(one.join(n)).unwrap();
            let b = fs::read(other.join(n)).unwrap();
            assert!(a == b, "{n:?} differs between 1 and {threads} threads");
        }
    }
}
