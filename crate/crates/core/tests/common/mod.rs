#![allow(dead_code)]

pub mod oracles;

use belyi_core::belyi::BelyiModP;
use belyi_core::cli::{parse_poly_file, parse_triple_file, TripleFile};

pub const MAP_FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/j2_283.poly");
pub const TRIPLE_FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/j2_280.triple");

pub fn map_text() -> String {
    std::fs::read_to_string(MAP_FIXTURE).unwrap()
}

pub fn map_from_text(text: &str) -> BelyiModP {
    let pf = parse_poly_file(text).unwrap();
    BelyiModP::new(pf.get("q").unwrap().clone(), pf.get("r").unwrap().clone()).unwrap()
}

/// The transcribed map; anything other than a monic `p` of degree 280 is a
/// transcription error.
pub fn load_map() -> BelyiModP {
    let b = map_from_text(&map_text());
    b.require_shape(280, true).unwrap();
    b
}

pub fn load_triple() -> TripleFile {
    parse_triple_file(&std::fs::read_to_string(TRIPLE_FIXTURE).unwrap()).unwrap()
}
