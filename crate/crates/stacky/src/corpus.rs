//! The bundled example files, embedded at compile time.

/// `(file name, contents)` for every file under `data/`.
pub const FILES: &[(&str, &str)] = &[
    ("m11.json", include_str!("../data/m11.json")),
    ("z3-twisted.json", include_str!("../data/z3-twisted.json")),
    ("z3-split.json", include_str!("../data/z3-split.json")),
    ("p121.json", include_str!("../data/p121.json")),
    ("f2.json", include_str!("../data/f2.json")),
    ("p121-f2.json", include_str!("../data/p121-f2.json")),
    ("p112-resolved.json", include_str!("../data/p112-resolved.json")),
    ("p1113-resolved.json", include_str!("../data/p1113-resolved.json")),
    ("octant-twisted.json", include_str!("../data/octant-twisted.json")),
    ("dependent.json", include_str!("../data/dependent.json")),
];

pub fn get(name: &str) -> &'static str {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap_or_else(|| panic!("no bundled file {name}"))
}

/// Bundled files describing complete stacky fans.
pub const COMPLETE: &[&str] = &[
    "m11.json",
    "z3-twisted.json",
    "z3-split.json",
    "p121.json",
    "f2.json",
    "p121-f2.json",
    "p112-resolved.json",
    "p1113-resolved.json",
];

/// Bundled files whose subdivision block is a crepant resolution.
pub const CREPANT_PAIRS: &[&str] = &["p121-f2.json", "p112-resolved.json", "p1113-resolved.json"];
