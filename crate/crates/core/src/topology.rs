//! Betti tables of compact spaces of real dimension 8 and the Chern/Salamon
//! arithmetic of hyperkähler 4-folds.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// `3·c₂² − c₄` for every hyperkähler 4-fold (720·χ(O) with χ(O) = 3).
pub const CHERN_IDENTITY: i64 = 2160;

/// Right-hand side of the Salamon relation `b₄ + b₃ − 10·b₂ = 46`.
pub const SALAMON_CONSTANT: i64 = 46;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("negative Betti number b{degree} = {value}")]
    NegativeBetti { degree: usize, value: i64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inadmissible pair (b2, b3) = ({b2}, {b3}): {reason}")]
    InadmissiblePair { b2: i64, b3: i64, reason: String },
    #[error("not a hyperkähler Betti table: {0}")]
    NotHyperkahler(String),
    #[error("integer overflow in Betti arithmetic")]
    Overflow,
}

/// Betti numbers `b₀..b₈`.
///
/// With `strict_hk` set the table additionally satisfies the constraints of a
/// hyperkähler 4-fold: `b₀ = b₈ = 1`, `b₁ = b₇ = 0`, Poincaré duality and
/// `b₃` even. Tables of singular quotients are kept with the flag cleared.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BettiTable {
    b: [i64; 9],
    strict_hk: bool,
}

impl BettiTable {
    pub fn new(b: [i64; 9]) -> Result<Self, TopologyError> {
        if let Some((degree, &value)) = b.iter().enumerate().find(|(_, v)| **v < 0) {
            return Err(TopologyError::NegativeBetti { degree, value });
        }
        Ok(BettiTable {
            b,
            strict_hk: false,
        })
    }

    /// Pads a shorter sequence (e.g. a surface's `b₀..b₄`) with zeros.
    pub fn from_prefix(prefix: &[i64]) -> Result<Self, TopologyError> {
        if prefix.len() > 9 {
            return Err(TopologyError::Domain(format!(
                "{} Betti numbers given, at most 9 allowed",
                prefix.len()
            )));
        }
        let mut b = [0; 9];
        b[..prefix.len()].copy_from_slice(prefix);
        Self::new(b)
    }

    pub fn strict(b: [i64; 9]) -> Result<Self, TopologyError> {
        Self::new(b)?.into_strict()
    }

    /// Validates the hyperkähler constraints and sets the flag.
    pub fn into_strict(mut self) -> Result<Self, TopologyError> {
        let b = &self.b;
        if b[0] != 1 || b[8] != 1 {
            return Err(TopologyError::NotHyperkahler(format!(
                "b0 = {}, b8 = {} (expected 1)",
                b[0], b[8]
            )));
        }
        if b[1] != 0 || b[7] != 0 {
            return Err(TopologyError::NotHyperkahler(format!(
                "b1 = {}, b7 = {} (expected 0)",
                b[1], b[7]
            )));
        }
        if let Some(j) = (0..9).find(|&j| b[j] != b[8 - j]) {
            return Err(TopologyError::NotHyperkahler(format!(
                "Poincaré duality fails: b{j} = {} but b{} = {}",
                b[j],
                8 - j,
                b[8 - j]
            )));
        }
        if b[3] % 2 != 0 {
            return Err(TopologyError::NotHyperkahler(format!(
                "b3 = {} is odd",
                b[3]
            )));
        }
        self.strict_hk = true;
        Ok(self)
    }

    /// Same numbers with the hyperkähler flag dropped.
    pub fn relaxed(&self) -> Self {
        BettiTable {
            b: self.b,
            strict_hk: false,
        }
    }

    pub fn is_strict_hk(&self) -> bool {
        self.strict_hk
    }

    pub fn entries(&self) -> &[i64; 9] {
        &self.b
    }

    /// `b_j`, zero outside `0..=8` (including negative degrees).
    pub fn get(&self, j: isize) -> i64 {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.b.get(j).copied())
            .unwrap_or(0)
    }

    pub fn b2(&self) -> i64 {
        self.b[2]
    }

    pub fn b3(&self) -> i64 {
        self.b[3]
    }

    pub fn b4(&self) -> i64 {
        self.b[4]
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, v) in self.b.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Chern numbers `(∫c₂², ∫c₄)` of a hyperkähler 4-fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChernData {
    pub c2sq: i64,
    pub c4: i64,
}

impl ChernData {
    /// `3·c₂² − c₄`; equals [`CHERN_IDENTITY`] on a hyperkähler 4-fold.
    pub fn todd_combination(&self) -> i64 {
        3 * self.c2sq - self.c4
    }
}

/// Compact complex surfaces that occur as fixed components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurfaceKind {
    K3,
    Torus2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceProfile {
    pub kind: SurfaceKind,
    /// `(b₀, b₁, b₂)`; the rest follows by duality.
    pub betti: (i64, i64, i64),
}

impl SurfaceProfile {
    pub const K3: SurfaceProfile = SurfaceProfile {
        kind: SurfaceKind::K3,
        betti: (1, 0, 22),
    };
    pub const TORUS2: SurfaceProfile = SurfaceProfile {
        kind: SurfaceKind::Torus2,
        betti: (1, 4, 6),
    };

    pub fn of(kind: SurfaceKind) -> Self {
        match kind {
            SurfaceKind::K3 => Self::K3,
            SurfaceKind::Torus2 => Self::TORUS2,
        }
    }

    /// `(b₀, b₁, b₂, b₃, b₄)` of the surface.
    pub fn full_betti(&self) -> [i64; 5] {
        let (b0, b1, b2) = self.betti;
        [b0, b1, b2, b1, b0]
    }

    pub fn table(&self) -> BettiTable {
        BettiTable::from_prefix(&self.full_betti()).expect("surface Betti numbers are nonnegative")
    }

    pub fn euler(&self) -> i64 {
        euler_characteristic(&self.table())
    }
}

fn require_nonnegative(b2: i64, b3: i64) -> Result<(), TopologyError> {
    if b2 < 0 || b3 < 0 {
        return Err(TopologyError::Domain(format!(
            "Betti numbers must be nonnegative, got (b2, b3) = ({b2}, {b3})"
        )));
    }
    Ok(())
}

/// `c₂² = 736 + 4b₂ − b₃`, `c₄ = 48 + 12b₂ − 3b₃`.
///
/// Total on nonnegative input: `c₄` may come out negative for pairs that are
/// not realized by any manifold.
pub fn chern_from_betti(b2: i64, b3: i64) -> Result<ChernData, TopologyError> {
    require_nonnegative(b2, b3)?;
    let c2sq = 4i64
        .checked_mul(b2)
        .and_then(|x| x.checked_add(736))
        .and_then(|x| x.checked_sub(b3))
        .ok_or(TopologyError::Overflow)?;
    let c4 = 12i64
        .checked_mul(b2)
        .and_then(|x| x.checked_add(48))
        .and_then(|x| 3i64.checked_mul(b3).and_then(|y| x.checked_sub(y)))
        .ok_or(TopologyError::Overflow)?;
    Ok(ChernData { c2sq, c4 })
}

/// Full Betti table of a hyperkähler 4-fold with the given `(b₂, b₃)`, using
/// the Salamon relation for `b₄` and duality for the upper half.
pub fn betti_from_pair(b2: i64, b3: i64) -> Result<BettiTable, TopologyError> {
    require_nonnegative(b2, b3)?;
    let inadmissible = |reason: String| TopologyError::InadmissiblePair { b2, b3, reason };
    if b3 % 2 != 0 {
        return Err(inadmissible("b3 is odd".into()));
    }
    let b4 = 10i64
        .checked_mul(b2)
        .and_then(|x| x.checked_add(SALAMON_CONSTANT))
        .and_then(|x| x.checked_sub(b3))
        .ok_or(TopologyError::Overflow)?;
    if b4 < 0 {
        return Err(inadmissible(format!(
            "Salamon relation forces b4 = {b4} < 0"
        )));
    }
    BettiTable::strict([1, 0, b2, b3, b4, b3, b2, 0, 1])
}

/// `b₄ + b₃ − 10·b₂ − 46`; zero iff the Salamon relation holds.
pub fn salamon_defect(bt: &BettiTable) -> i64 {
    bt.b4() + bt.b3() - 10 * bt.b2() - SALAMON_CONSTANT
}

pub fn euler_characteristic(bt: &BettiTable) -> i64 {
    bt.entries()
        .iter()
        .enumerate()
        .map(|(j, &b)| if j % 2 == 0 { b } else { -b })
        .sum()
}
