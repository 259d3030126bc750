use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/../cyclotome/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cyclotome");
    let ok = Command::new(bin).args(["hopf", "verify", "--algebra", &data("double_z2")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let missing = Command::new(bin).args(["hopf", "verify", "--algebra", "missing.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let rejected = Command::new(bin).args(["tqft", "verify", "--algebra", &data("z2_trivial")]).output().unwrap();
    assert_eq!(rejected.status.code(), Some(1));
}

#[test]
fn cat_writes_to_stdout() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclotome")).args(["cat", "count", "1", "1", "cyclic"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "6\n");
}
