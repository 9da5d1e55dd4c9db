//! Bundled published encoders.
//!
//! Referenced by name, e.g. `table1-01`, `pto1r`, `pto1rea`.
//! The `*ea` names are the same matrices with ancillas relabelled as ebits.

use crate::encoder::{ConvolutionalEncoder, ResourceSignature};
use crate::error::{Error, Result};

const FILES: &[(&str, &str)] = &[
    ("table1-01", include_str!("../data/encoders/table1-01.txt")),
    ("table1-02", include_str!("../data/encoders/table1-02.txt")),
    ("table1-03", include_str!("../data/encoders/table1-03.txt")),
    ("table1-04", include_str!("../data/encoders/table1-04.txt")),
    ("table1-05", include_str!("../data/encoders/table1-05.txt")),
    ("table1-06", include_str!("../data/encoders/table1-06.txt")),
    ("table1-07", include_str!("../data/encoders/table1-07.txt")),
    ("table1-08", include_str!("../data/encoders/table1-08.txt")),
    ("table1-09", include_str!("../data/encoders/table1-09.txt")),
    ("table1-10", include_str!("../data/encoders/table1-10.txt")),
    ("pto1r", include_str!("../data/encoders/pto1r.txt")),
    ("pto3r", include_str!("../data/encoders/pto3r.txt")),
    ("cea-m6", include_str!("../data/encoders/cea-m6.txt")),
    ("cea-m5", include_str!("../data/encoders/cea-m5.txt")),
];

/// Encoders named in the literature whose matrices were never published.
pub const UNAVAILABLE: &[&str] = &["wh11"];

/// Names accepted by [`bundled`], in a stable order.
pub fn names() -> Vec<&'static str> {
    let mut out: Vec<&str> = FILES.iter().map(|(n, _)| *n).collect();
    out.extend(["pto1rea", "pto3rea"]);
    out
}

/// Raw text of a bundled encoder file.
pub fn bundled_text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn bundled(name: &str) -> Result<ConvolutionalEncoder> {
    let name = name.to_ascii_lowercase();
    if let Some(text) = bundled_text(&name) {
        return text.parse();
    }
    if let Some(base) = name.strip_suffix("ea") {
        if let Some(text) = bundled_text(base) {
            let enc: ConvolutionalEncoder = text.parse()?;
            let s = *enc.signature();
            let sig = ResourceSignature {
                a: 0,
                c: s.c + s.a,
                ..s
            };
            return enc.substitute_resources(sig);
        }
    }
    if UNAVAILABLE.contains(&name.as_str()) {
        return Err(Error::Signature(format!(
            "encoder {name:?} was never published with its matrix"
        )));
    }
    Err(Error::Signature(format!("no bundled encoder named {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_load() {
        for name in names() {
            bundled(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn ea_variants() {
        let s = *bundled("pto1rea").unwrap().signature();
        assert_eq!((s.m, s.k_q, s.a, s.c), (3, 1, 0, 2));
        let s = *bundled("pto3rea").unwrap().signature();
        assert_eq!((s.m, s.k_q, s.a, s.c), (4, 1, 0, 1));
        assert!(bundled("wh11").is_err());
    }
}
