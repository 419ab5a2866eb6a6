//! Fixture library and input loading.

use std::sync::Arc;

use adams_tower::exactlin::Field;
use adams_tower::simplicial::fixtures::{
    eilenberg_maclane, free_fixture, mutated_face_fixture, sum_fixture, two_generator_fixture,
};
use adams_tower::simplicial::schema::{export_algebra, parse_algebra};
use adams_tower::simplicial::{SimplicialAlgebra, Truncation};
use adams_tower::Result;
use sha2::{Digest, Sha256};

pub const FIXTURES: [(&str, &str); 8] = [
    ("k0", "K(k,0) on one generator x"),
    ("k1", "K(k,1) on one generator x"),
    ("k2", "K(k,2) on one generator x"),
    ("k3", "K(k,3) on one generator x"),
    ("free", "free algebra on x (degree 1, weight 1)"),
    ("free2", "free algebra on x (degree 1, weight 1) and y (degree 2, weight 2)"),
    ("sum", "K(k,1) + K(k,2)"),
    ("mutant", "K(k,2) with one face entry changed"),
];

pub const DEFAULT_SET: [&str; 2] = ["k1", "free"];

pub struct Input {
    /// Fixture name or file path as given.
    pub name: String,
    pub alg: Arc<dyn SimplicialAlgebra>,
    /// sha256 of the exported schema text for fixtures, of the bytes for files.
    pub hash: String,
}

pub fn fixture(name: &str, field: Field, t: Truncation) -> Option<Result<Arc<dyn SimplicialAlgebra>>> {
    let wrap = |r: Result<_>| r.map(|a| Arc::new(a) as Arc<dyn SimplicialAlgebra>);
    Some(match name {
        "k0" | "k1" | "k2" | "k3" => wrap(eilenberg_maclane(field, name[1..].parse().unwrap(), t, "x")),
        "free" => wrap(free_fixture(field, t)),
        "free2" => wrap(two_generator_fixture(field, t)),
        "sum" => wrap(sum_fixture(field, t)),
        "mutant" => wrap(mutated_face_fixture(field, t)),
        _ => return None,
    })
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Core(adams_tower::Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(s) => f.write_str(s),
            LoadError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// A fixture name, or a path to a file in the input schema. Files carry
/// their own field and truncation.
pub fn load(arg: &str, field: Field, t: Truncation) -> std::result::Result<Input, LoadError> {
    if let Some(alg) = fixture(arg, field, t) {
        let alg = alg.map_err(LoadError::Core)?;
        let hash = sha256(export_algebra(alg.as_ref()).map_err(LoadError::Core)?.as_bytes());
        return Ok(Input { name: arg.into(), alg, hash });
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| LoadError::Io(format!("{arg}: not a fixture ({}) and not readable: {e}", fixture_names())))?;
    let alg = parse_algebra(arg, &text).map_err(LoadError::Core)?;
    Ok(Input { name: arg.into(), alg: Arc::new(alg), hash: sha256(text.as_bytes()) })
}

pub fn fixture_names() -> String {
    FIXTURES.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
}
