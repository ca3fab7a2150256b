//! The bundled `corpus/` directory matches what the generator writes, and
//! every file is a parse/serialize fixpoint.

use std::path::PathBuf;

use qcat_core::corpus::write_corpus;
use qcat_core::io::{
    cat_from_json, cat_to_json, cert_from_json, cert_to_json, fun_from_json, fun_to_json, read_json, sset_from_json,
    sset_to_json, to_json_string, CatJson, CertJson, FunJson, SsetJson,
};

fn bundled() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn bundled_corpus_is_current() {
    let dir = std::env::temp_dir().join(format!("qcat-corpus-check-{}", std::process::id()));
    let files = write_corpus(&dir).unwrap();
    for f in &files {
        let name = f.file_name().unwrap();
        let fresh = std::fs::read_to_string(f).unwrap();
        let shipped = std::fs::read_to_string(bundled().join(name))
            .unwrap_or_else(|_| panic!("corpus/{} is missing", name.to_string_lossy()));
        assert_eq!(fresh, shipped, "corpus/{} is stale", name.to_string_lossy());
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn every_file_round_trips() {
    let mut seen = 0;
    for entry in std::fs::read_dir(bundled()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(&path).unwrap();
        let again = if name.ends_with(".sset.json") {
            let j: SsetJson = read_json(&path).unwrap();
            to_json_string(&sset_to_json(&sset_from_json(&j).unwrap())).unwrap()
        } else if name.ends_with(".cat.json") {
            let j: CatJson = read_json(&path).unwrap();
            to_json_string(&cat_to_json(&cat_from_json(&j).unwrap())).unwrap()
        } else if name.ends_with(".fun.json") {
            let j: FunJson = read_json(&path).unwrap();
            to_json_string(&fun_to_json(&fun_from_json(&j).unwrap())).unwrap()
        } else if name.ends_with(".cert.json") {
            let j: CertJson = read_json(&path).unwrap();
            to_json_string(&cert_to_json(&cert_from_json(&j).unwrap())).unwrap()
        } else {
            continue;
        };
        assert_eq!(again, text, "{name}");
        seen += 1;
    }
    assert!(seen >= 50);
}
