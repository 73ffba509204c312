//! Reading and writing automata as text.

pub mod ba;
pub mod hoa;

pub use ba::{parse_ba, parse_ba_with_alphabet, serialize_ba};
pub use hoa::{
    parse_hoa, parse_hoa_with, serialize_coba_hoa, serialize_hoa, HoaAutomaton, HoaOptions,
    DEFAULT_MAX_APS,
};

use crate::automaton::BuchiAutomaton;
use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Hoa,
    Ba,
}

impl Format {
    /// Texts starting with `HOA:` (after whitespace and comments) are HOA.
    pub fn detect(text: &str) -> Format {
        let mut rest = text.trim_start();
        while let Some(after) = rest.strip_prefix("/*") {
            rest = after.split_once("*/").map_or("", |(_, r)| r).trim_start();
        }
        if rest.starts_with("HOA:") {
            Format::Hoa
        } else {
            Format::Ba
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Hoa => "hoa",
            Format::Ba => "ba",
        }
    }
}

/// Parses a Büchi automaton in either format.
pub fn parse_automaton(text: &str) -> Result<BuchiAutomaton> {
    match Format::detect(text) {
        Format::Hoa => parse_hoa(text),
        Format::Ba => parse_ba(text),
    }
}

pub fn serialize(a: &BuchiAutomaton, format: Format) -> Result<String> {
    match format {
        Format::Hoa => Ok(serialize_hoa(a)),
        Format::Ba => serialize_ba(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::w1;

    #[test]
    fn detection() {
        assert_eq!(Format::detect("  /* x */ HOA: v1"), Format::Hoa);
        assert_eq!(Format::detect("[0]\n"), Format::Ba);
        let a = w1();
        assert_eq!(
            parse_automaton(&serialize(&a, Format::Hoa).unwrap()).unwrap(),
            a
        );
    }
}
