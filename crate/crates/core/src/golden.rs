//! Reference values for the quintic mirror map, J-function slots and
//! genus-zero invariant tables, shipped with the crate.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::ring::{parse_rational, Rational};

const GOLDEN_V1: &str = include_str!("../data/golden_v1.json");

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Raw {
    version: u32,
    inverse_mirror_map: BTreeMap<String, String>,
    j_slot_z_minus1: BTreeMap<String, String>,
    j_slot_z_minus2: BTreeMap<String, String>,
    primary: BTreeMap<String, String>,
    descendant: BTreeMap<String, String>,
}

/// Sparse tables `exponent or n -> exact value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Golden {
    pub version: u32,
    pub inverse_mirror_map: Vec<(usize, Rational)>,
    pub j_slot_z_minus_1: Vec<(usize, Rational)>,
    pub j_slot_z_minus_2: Vec<(usize, Rational)>,
    pub primary: Vec<(usize, Rational)>,
    pub descendant: Vec<(usize, Rational)>,
}

fn table(raw: &BTreeMap<String, String>) -> Vec<(usize, Rational)> {
    let mut out: Vec<(usize, Rational)> = raw
        .iter()
        .map(|(k, v)| {
            let k = k.parse().expect("golden key is an integer");
            (k, parse_rational(v).expect("golden value is a rational"))
        })
        .collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

pub fn golden() -> Golden {
    let raw: Raw = serde_json::from_str(GOLDEN_V1).expect("golden data parses");
    Golden {
        version: raw.version,
        inverse_mirror_map: table(&raw.inverse_mirror_map),
        j_slot_z_minus_1: table(&raw.j_slot_z_minus1),
        j_slot_z_minus_2: table(&raw.j_slot_z_minus2),
        primary: table(&raw.primary),
        descendant: table(&raw.descendant),
    }
}
