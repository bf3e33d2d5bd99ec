//! Symbols of the rewriting algebra.

use std::fmt;

/// A variable of the rewriting algebra.
///
/// Slice coordinates are `a_i`, `α_{i,j}` and `α_∞`. The minimal generators are
/// `P_{i,j}` and `P_∞` with the abbreviation `D2 = δ²`. The quartic auxiliary
/// generators are `Il_i`, `Ir_i`, `Is_i`, `It_i`, `It0` with the abbreviation
/// `Il0 = [λ]²`. `Delta` and `LamBracket` stand for `δ` and `[λ]` inside the
/// engine only and never appear in input or output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    A(u8),
    Alpha(u8, u16),
    AlphaInf,
    P(u8, u16),
    PInf,
    D2,
    Il(u8),
    Ir(u8),
    Is(u8),
    It(u8),
    It0,
    Il0,
    Delta,
    LamBracket,
}

impl Sym {
    /// Whether the symbol is a slice coordinate (as opposed to a generator or abbreviation).
    pub fn is_coordinate(self) -> bool {
        matches!(
            self,
            Sym::A(_) | Sym::Alpha(..) | Sym::AlphaInf | Sym::Delta | Sym::LamBracket
        )
    }

    /// Whether the symbol abbreviates a polynomial in other generators.
    pub fn is_abbreviation(self) -> bool {
        matches!(self, Sym::D2 | Sym::Il0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::A(i) => write!(f, "a{i}"),
            Sym::Alpha(i, j) => write!(f, "al[{i}][{j}]"),
            Sym::AlphaInf => write!(f, "ainf"),
            Sym::P(i, j) => write!(f, "P[{i}][{j}]"),
            Sym::PInf => write!(f, "Pinf"),
            Sym::D2 => write!(f, "D2"),
            Sym::Il(i) => write!(f, "Il[{i}]"),
            Sym::Ir(i) => write!(f, "Ir[{i}]"),
            Sym::Is(i) => write!(f, "Is[{i}]"),
            Sym::It(i) => write!(f, "It[{i}]"),
            Sym::It0 => write!(f, "It0"),
            Sym::Il0 => write!(f, "Il0"),
            Sym::Delta => write!(f, "delta"),
            Sym::LamBracket => write!(f, "lbr"),
        }
    }
}

/// Named quartic coordinate blocks, resolved against the quartic slice layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarticBlock {
    Lambda,
    R,
    S,
}

/// Index triple positions `(j_λ, j_r, j_s)` of the quartic coordinate blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarticLayout {
    pub lambda: u16,
    pub r: u16,
    pub s: u16,
}

impl QuarticLayout {
    pub fn get() -> Self {
        let basis = crate::harmonic::slice_basis(2).expect("quartic slice basis exists");
        let find = |sig: (u8, u8)| {
            (1..basis.k_slice)
                .find(|&j| j != basis.quadratic_index && basis.signature.get(j) == sig)
                .expect("quartic layout has one triple per character") as u16
        };
        QuarticLayout {
            lambda: basis.quadratic_index as u16,
            r: find((0, 0)),
            s: find((1, 1)),
        }
    }

    pub fn sym(&self, block: QuarticBlock, i: u8) -> Sym {
        let j = match block {
            QuarticBlock::Lambda => self.lambda,
            QuarticBlock::R => self.r,
            QuarticBlock::S => self.s,
        };
        Sym::Alpha(i, j)
    }
}

/// Resolves a parsed symbol name with indices.
///
/// Accepted names: `a1`..`a3` (or `a[i]`), `al[i][j]`, `ainf`, `P[i][j]`, `Pinf`,
/// `D2`, `Il[i]`, `Ir[i]`, `Is[i]`, `It[i]`, `It0`, `Il0` and, for quartics, the
/// aliases `lam[i]`, `r[i]`, `s[i]`, `t[i]`.
pub fn resolve(name: &str, indices: &[u32], quartic: Option<&QuarticLayout>) -> Option<Sym> {
    let idx3 = |i: u32| (1..=3).contains(&i).then_some(i as u8);
    let one = |f: fn(u8) -> Sym| match indices {
        [i] => idx3(*i).map(f),
        _ => None,
    };
    let none = |s: Sym| indices.is_empty().then_some(s);
    match name {
        "a1" | "a2" | "a3" => none(Sym::A(name.as_bytes()[1] - b'0')),
        "a" | "t" => one(Sym::A),
        "al" => match indices {
            [i, j] if *j >= 1 && *j <= u16::MAX as u32 => {
                idx3(*i).map(|i| Sym::Alpha(i, *j as u16))
            }
            _ => None,
        },
        "ainf" => none(Sym::AlphaInf),
        "P" => match indices {
            [i, j] if *j <= u16::MAX as u32 => idx3(*i).map(|i| Sym::P(i, *j as u16)),
            _ => None,
        },
        "Pinf" => none(Sym::PInf),
        "D2" => none(Sym::D2),
        "Il" => one(Sym::Il),
        "Ir" => one(Sym::Ir),
        "Is" => one(Sym::Is),
        "It" => one(Sym::It),
        "It0" => none(Sym::It0),
        "Il0" => none(Sym::Il0),
        "lam" | "r" | "s" => {
            let layout = quartic?;
            let block = match name {
                "lam" => QuarticBlock::Lambda,
                "r" => QuarticBlock::R,
                _ => QuarticBlock::S,
            };
            match indices {
                [i] => idx3(*i).map(|i| layout.sym(block, i)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let layout = QuarticLayout::get();
        for s in [
            Sym::A(2),
            Sym::Alpha(3, 4),
            Sym::AlphaInf,
            Sym::P(1, 0),
            Sym::PInf,
            Sym::Is(2),
            Sym::It0,
        ] {
            let e = crate::expr::parse(&s.to_string()).unwrap();
            let crate::expr::Expr::Sym { name, indices } = e else {
                panic!()
            };
            assert_eq!(resolve(&name, &indices, Some(&layout)), Some(s));
        }
        assert_eq!(resolve("t", &[2], None), Some(Sym::A(2)));
        assert_eq!(
            resolve("lam", &[1], Some(&layout)),
            Some(Sym::Alpha(1, layout.lambda))
        );
        assert_eq!(resolve("al", &[4, 1], None), None);
        assert_eq!(resolve("lam", &[1], None), None);
    }
}
