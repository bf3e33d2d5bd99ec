//! Signed-permutation equivariant spanning sets `u_{i,j}` of `H_{2d}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::generators::{cyclic_images, even_generator, odd_generator};
use super::HarmonicError;
use crate::poly::TernaryForm;

/// Per-index characters `(ζ(j), ξ(j))` of an equivariant family.
///
/// A family `{u_{i,j}}` is `(ζ, ξ)`-equivariant when a permutation matrix `g_σ`
/// sends `u_{i,j}` to `sgn(σ)^{ζ(j)} u_{σ(i),j}` and a sign change `g_τ`
/// sends it to `(τ1 τ2 τ3 / τ_i)^{ξ(j)} u_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantSignature {
    pub zeta: Vec<u8>,
    pub xi: Vec<u8>,
}

impl EquivariantSignature {
    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    pub fn get(&self, j: usize) -> (u8, u8) {
        (self.zeta[j], self.xi[j])
    }
}

/// Linear relation among the `j = 0` triple, determined by `d mod 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `d ≡ 2`: the whole family is a basis.
    None,
    /// `d ≡ 1`: `u_{1,0} + u_{2,0} + u_{3,0} = 0`.
    Sum,
    /// `d ≡ 0`: `u_{1,0} = u_{2,0} = u_{3,0}`.
    Equal,
}

impl Relation {
    pub fn for_half_degree(d: u32) -> Relation {
        match d % 3 {
            2 => Relation::None,
            1 => Relation::Sum,
            _ => Relation::Equal,
        }
    }
}

/// The family `u_{i,j}`, `0 ≤ i < 3`, `0 ≤ j < k`, spanning `H_{2d}`.
///
/// Indices are zero-based: `elements[j][i]` is the element usually written `u_{i+1,j}`.
#[derive(Clone, Debug)]
pub struct EquivariantSpanningSet {
    pub half_degree: u32,
    pub k0: u32,
    pub k: u32,
    pub elements: Vec<[TernaryForm; 3]>,
    pub signature: EquivariantSignature,
    pub relation: Relation,
}

impl EquivariantSpanningSet {
    /// `u_{i,j}` with zero-based `i`.
    pub fn get(&self, i: usize, j: usize) -> &TernaryForm {
        &self.elements[j][i]
    }

    /// A basis of `H_{2d}`: the family with the dependent `j = 0` members removed.
    pub fn independent(&self) -> Vec<TernaryForm> {
        let keep0 = match self.relation {
            Relation::None => 3,
            Relation::Sum => 2,
            Relation::Equal => 1,
        };
        let mut out: Vec<TernaryForm> = self.elements[0][..keep0].to_vec();
        for triple in &self.elements[1..] {
            out.extend(triple.iter().cloned());
        }
        out
    }

    /// Checks the relation among the `j = 0` triple exactly.
    pub fn relation_holds(&self) -> bool {
        let [a, b, c] = &self.elements[0];
        match self.relation {
            Relation::None => true,
            Relation::Sum => (&(a + b) + c).is_zero(),
            Relation::Equal => a == b && b == c,
        }
    }
}

/// `⌈(d − 2)/3⌉`.
pub fn k0_for(d: u32) -> u32 {
    d / 3
}

/// Builds the spanning family of `H_{2d}` for `d ≥ 2`.
pub fn build_spanning_set(d: u32) -> Result<EquivariantSpanningSet, HarmonicError> {
    if d < 2 {
        return Err(HarmonicError::OutOfRange(format!(
            "spanning sets need d ≥ 2, got {d}"
        )));
    }
    let k0 = k0_for(d);
    let k = k0 + d + 1;
    let relation = Relation::for_half_degree(d);
    let mut elements = Vec::with_capacity(k as usize);
    let g0 = even_generator(d, k0)?;
    let first = match relation {
        Relation::Equal => {
            let [a, b, c] = cyclic_images(&g0);
            let s = &(&a + &b) + &c;
            [s.clone(), s.clone(), s]
        }
        _ => cyclic_images(&g0),
    };
    elements.push(first);
    for j in 1..=k0 {
        elements.push(cyclic_images(&even_generator(d, k0 - j)?));
    }
    for j in k0 + 1..k {
        elements.push(cyclic_images(&odd_generator(d, j - k0 - 1)?));
    }
    let zeta = (0..k).map(|j| ((d + k0 + j) % 2) as u8).collect();
    let xi = (0..k).map(|j| (j > k0) as u8).collect();
    Ok(EquivariantSpanningSet {
        half_degree: d,
        k0,
        k,
        elements,
        signature: EquivariantSignature { zeta, xi },
        relation,
    })
}

/// Cached spanning family of `H_{2d}`.
pub fn equivariant_spanning_set(d: u32) -> Result<Arc<EquivariantSpanningSet>, HarmonicError> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<EquivariantSpanningSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("spanning-set cache poisoned");
    if let Some(s) = guard.get(&d) {
        return Ok(s.clone());
    }
    let s = Arc::new(build_spanning_set(d)?);
    guard.insert(d, s.clone());
    Ok(s)
}

/// Multiplicities of the irreducible signed-permutation representations in `H_{2d}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepMultiplicities {
    pub w00: u32,
    pub w10: u32,
    pub w01: u32,
    pub w11: u32,
    pub triv: u32,
    pub std: u32,
}

impl RepMultiplicities {
    /// Total dimension, with `W_{ζ,ξ}` three-dimensional, `W_triv` one and `W_std` two.
    pub fn dimension(&self) -> u32 {
        3 * (self.w00 + self.w10 + self.w01 + self.w11) + self.triv + 2 * self.std
    }
}

/// Tallies `(ζ(j), ξ(j))` over the spanning family, treating the dependent `j = 0`
/// triple as `W_triv` (`d ≡ 0`) or `W_std` (`d ≡ 1`).
pub fn rep_multiplicities(d: u32) -> Result<RepMultiplicities, HarmonicError> {
    let s = equivariant_spanning_set(d)?;
    let mut m = RepMultiplicities::default();
    for j in 0..s.k as usize {
        if j == 0 {
            match s.relation {
                Relation::Equal => {
                    m.triv += 1;
                    continue;
                }
                Relation::Sum => {
                    m.std += 1;
                    continue;
                }
                Relation::None => {}
            }
        }
        match s.signature.get(j) {
            (0, 0) => m.w00 += 1,
            (1, 0) => m.w10 += 1,
            (0, 1) => m.w01 += 1,
            _ => m.w11 += 1,
        }
    }
    Ok(m)
}

/// Closed-form multiplicities by residue of `d` modulo 3.
pub fn rep_multiplicities_closed_form(d: u32) -> RepMultiplicities {
    let ceil = |a: u32, b: u32| a.div_ceil(b);
    match d % 3 {
        2 => RepMultiplicities {
            w00: ceil(d + 1, 6),
            w10: (d + 1) / 6,
            w01: ceil(d, 2),
            w11: d / 2,
            ..Default::default()
        },
        0 => RepMultiplicities {
            triv: 1,
            w00: d / 6,
            w10: ceil(d, 6),
            w01: ceil(d, 2),
            w11: d / 2,
            ..Default::default()
        },
        _ => RepMultiplicities {
            std: 1,
            w00: ceil(d - 1, 6),
            w10: (d - 1) / 6,
            w01: ceil(d, 2),
            w11: d / 2,
            ..Default::default()
        },
    }
}

/// Exact check that `g u_{i,j}` equals the image predicted by the signature.
pub fn check_equivariance(
    family: &[[TernaryForm; 3]],
    signature: &EquivariantSignature,
    g: &crate::poly::SignedPermutation,
) -> bool {
    let m = g.matrix();
    family.iter().enumerate().all(|(j, triple)| {
        let (zeta, xi) = signature.get(j);
        (0..3).all(|i| {
            let (target, sign) = g.equivariant_image(i, zeta, xi);
            let expected = triple[target].scale(&crate::poly::int(sign as i64));
            triple[i].act_unchecked(&m) == expected
        })
    })
}
