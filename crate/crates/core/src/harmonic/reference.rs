//! Published integer-normalized spanning sets of `H_4`, `H_6` and `H_8`, and the
//! per-element rational scale between them and the closed-formula family.

use serde::Serialize;

use super::spanning::equivariant_spanning_set;
use super::HarmonicError;
use crate::poly::{Rational, TernaryForm};

const H4: [[&str; 3]; 3] = [
    [
        "y^4 - 6 y^2 z^2 + z^4",
        "z^4 - 6 z^2 x^2 + x^4",
        "x^4 - 6 x^2 y^2 + y^4",
    ],
    ["y^3 z - y z^3", "z^3 x - z x^3", "x^3 y - x y^3"],
    [
        "6 x^2 y z - y^3 z - y z^3",
        "6 y^2 z x - z^3 x - z x^3",
        "6 z^2 x y - x^3 y - x y^3",
    ],
];

const H6_SYMMETRIC: &str = "-2 x^6 - 2 z^6 - 2 y^6 + 15 x^4 y^2 + 15 y^4 z^2 + 15 z^4 x^2 \
     + 15 x^4 z^2 + 15 y^4 x^2 + 15 z^4 y^2 - 180 x^2 y^2 z^2";

const H6: [[&str; 3]; 5] = [
    [H6_SYMMETRIC, H6_SYMMETRIC, H6_SYMMETRIC],
    [
        "-y^6 + 15 y^4 z^2 - 15 y^2 z^4 + z^6",
        "-z^6 + 15 z^4 x^2 - 15 z^2 x^4 + x^6",
        "-x^6 + 15 x^4 y^2 - 15 x^2 y^4 + y^6",
    ],
    [
        "3 y^5 z - 10 y^3 z^3 + 3 y z^5",
        "3 z^5 x - 10 z^3 x^3 + 3 z x^5",
        "3 x^5 y - 10 x^3 y^3 + 3 x y^5",
    ],
    [
        "-10 x^2 y^3 z + 10 x^2 y z^3 + y^5 z - y z^5",
        "-10 y^2 z^3 x + 10 y^2 z x^3 + z^5 x - z x^5",
        "-10 z^2 x^3 y + 10 z^2 x y^3 + x^5 y - x y^5",
    ],
    [
        "10 x^4 y z - 10 x^2 y^3 z - 10 x^2 y z^3 + y^5 z + y z^5",
        "10 y^4 z x - 10 y^2 z^3 x - 10 y^2 z x^3 + z^5 x + z x^5",
        "10 z^4 x y - 10 z^2 x^3 y - 10 z^2 x y^3 + x^5 y + x y^5",
    ],
];

const H8: [[&str; 3]; 6] = [
    [
        "-14 x^2 y^6 + 210 z^2 x^2 y^4 - 210 y^2 z^4 x^2 + 14 z^6 x^2 + y^8 - 14 y^6 z^2 + 14 y^2 z^6 - z^8",
        "-14 y^2 z^6 + 210 y^2 z^4 x^2 - 210 z^2 x^4 y^2 + 14 x^6 y^2 + z^8 - 14 z^6 x^2 + 14 z^2 x^6 - x^8",
        "-14 z^2 x^6 + 210 z^2 x^4 y^2 - 210 z^2 x^2 y^4 + 14 y^6 z^2 + x^8 - 14 x^6 y^2 + 14 x^2 y^6 - y^8",
    ],
    [
        "y^8 - 28 y^6 z^2 + 70 y^4 z^4 - 28 y^2 z^6 + z^8",
        "z^8 - 28 z^6 x^2 + 70 z^4 x^4 - 28 z^2 x^6 + x^8",
        "x^8 - 28 x^6 y^2 + 70 x^4 y^4 - 28 x^2 y^6 + y^8",
    ],
    [
        "-y^7 z + 7 y^5 z^3 - 7 y^3 z^5 + y z^7",
        "-z^7 x + 7 z^5 x^3 - 7 z^3 x^5 + z x^7",
        "-x^7 y + 7 x^5 y^3 - 7 x^3 y^5 + x y^7",
    ],
    [
        "42 x^2 y^5 z - 140 x^2 y^3 z^3 + 42 x^2 y z^5 - 3 y^7 z + 7 y^5 z^3 + 7 y^3 z^5 - 3 y z^7",
        "42 y^2 z^5 x - 140 y^2 z^3 x^3 + 42 y^2 z x^5 - 3 z^7 x + 7 z^5 x^3 + 7 z^3 x^5 - 3 z x^7",
        "42 z^2 x^5 y - 140 z^2 x^3 y^3 + 42 z^2 x y^5 - 3 x^7 y + 7 x^5 y^3 + 7 x^3 y^5 - 3 x y^7",
    ],
    [
        "-35 x^4 y^3 z + 35 x^4 y z^3 + 21 x^2 y^5 z - 21 x^2 y z^5 - y^7 z + y z^7",
        "-35 y^4 z^3 x + 35 y^4 z x^3 + 21 y^2 z^5 x - 21 y^2 z x^5 - z^7 x + z x^7",
        "-35 z^4 x^3 y + 35 z^4 x y^3 + 21 z^2 x^5 y - 21 z^2 x y^5 - x^7 y + x y^7",
    ],
    [
        "14 x^6 y z - 35 x^4 y^3 z - 35 x^4 y z^3 + 21 x^2 y^5 z + 21 x^2 y z^5 - y^7 z - y z^7",
        "14 y^6 z x - 35 y^4 z^3 x - 35 y^4 z x^3 + 21 y^2 z^5 x + 21 y^2 z x^5 - z^7 x - z x^7",
        "14 z^6 x y - 35 z^4 x^3 y - 35 z^4 x y^3 + 21 z^2 x^5 y + 21 z^2 x y^5 - x^7 y - x y^7",
    ],
];

/// Published family `elements[j][i]` for `2d ∈ {4, 6, 8}`.
pub fn printed_family(d: u32) -> Option<Vec<[TernaryForm; 3]>> {
    let table: &[[&str; 3]] = match d {
        2 => &H4,
        3 => &H6,
        4 => &H8,
        _ => return None,
    };
    Some(
        table
            .iter()
            .map(|row| row.map(|s| TernaryForm::parse(s).expect("reference polynomial parses")))
            .collect(),
    )
}

/// One row of the scale table: `computed u_{i,j} = scale · printed u_{i,j}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleEntry {
    pub i: usize,
    pub j: usize,
    #[serde(with = "crate::poly::rational_string")]
    pub scale: Rational,
}

/// Scale factors of the closed-formula family against the published one.
///
/// Fails with [`HarmonicError::Mismatch`] when some element is not a rational
/// multiple of its published counterpart.
pub fn scale_table(d: u32) -> Result<Vec<ScaleEntry>, HarmonicError> {
    let printed = printed_family(d).ok_or_else(|| {
        HarmonicError::OutOfRange(format!("no published family for 2d = {}", 2 * d))
    })?;
    let computed = equivariant_spanning_set(d)?;
    if computed.elements.len() != printed.len() {
        return Err(HarmonicError::Mismatch(format!(
            "family sizes differ: {} vs {}",
            computed.elements.len(),
            printed.len()
        )));
    }
    let mut out = Vec::new();
    for (j, (c, p)) in computed.elements.iter().zip(&printed).enumerate() {
        for i in 0..3 {
            let scale = c[i].ratio_to(&p[i]).ok_or_else(|| {
                HarmonicError::Mismatch(format!(
                    "u[{}][{j}] is not proportional to the published element",
                    i + 1
                ))
            })?;
            out.push(ScaleEntry { i: i + 1, j, scale });
        }
    }
    Ok(out)
}
