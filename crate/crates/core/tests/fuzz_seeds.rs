//! The checked-in fuzz seeds are valid inputs for their targets.

use std::fs;
use std::path::PathBuf;

use multicat::automata::{format, parse_transform};
use multicat::bounds::SizeVector;
use multicat::grid::SweepGrid;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn text_seeds_parse() {
    for (p, b) in seeds("parse_text") {
        format::parse_text(text(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}

#[test]
fn json_seeds_parse() {
    for (p, b) in seeds("parse_json") {
        format::parse_json(text(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}

#[test]
fn transform_seeds_parse() {
    for (p, b) in seeds("parse_transform") {
        let n = usize::from(b[0] % 16) + 1;
        parse_transform(text(&b[1..]), n).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}

#[test]
fn size_vector_and_grid_seeds_parse() {
    for (p, b) in seeds("size_vector") {
        text(&b).parse::<SizeVector>().unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, b) in seeds("sweep_grid") {
        let g = text(&b).parse::<SweepGrid>().unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert!(!g.cases().unwrap().is_empty());
    }
}
