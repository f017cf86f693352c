//! Fixed loci of prime-order symplectic automorphisms and Betti transport from
//! the quotient `Y = X/⟨g⟩` to its crepant partial resolution `W`.
//!
//! Each codimension-2 singular stratum `S` of `Y` (a K3 surface or a 2-torus)
//! is replaced by `S × C_p`, where `C_p` is a chain of `p − 1` rational curves.
//! Mayer–Vietoris together with injectivity of the pullback gives, degree by
//! degree,
//!
//! ```text
//! b_j(W) = b_j(Y) + Σ_S [ b_j(S × C_p) − b_j(S) ] = b_j(Y) + (p − 1)·Σ_S b_{j−2}(S).
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::topology::{
    betti_from_pair, salamon_defect, BettiTable, SurfaceKind, SurfaceProfile, TopologyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("integer overflow in transport arithmetic")]
    Overflow,
    #[error("Salamon balance has no unique solution: {0}")]
    NoUniqueSolution(String),
}

/// A prime order of an automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, QuotientError> {
        let small = u32::try_from(p).map_err(|_| QuotientError::NotPrime(p))?;
        if is_prime(p) {
            Ok(Prime(small))
        } else {
            Err(QuotientError::NotPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `p − 1`, the number of curves in the exceptional chain.
    pub fn chain_length(self) -> i64 {
        i64::from(self.0) - 1
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `X^g` = `m` isolated points ⊔ `k` K3 surfaces ⊔ `t` 2-tori, for `g` of
/// prime order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FixedLocusProfile {
    pub p: Prime,
    pub m: u32,
    pub k: u32,
    pub t: u32,
}

impl FixedLocusProfile {
    pub fn new(p: Prime, m: u32, k: u32, t: u32) -> Self {
        FixedLocusProfile { p, m, k, t }
    }
}

/// Preimage `S × C_p` of a codimension-2 stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExceptionalFiber {
    pub surface: SurfaceProfile,
    pub chain_length: i64,
}

impl ExceptionalFiber {
    pub fn new(surface: SurfaceProfile, p: Prime) -> Self {
        ExceptionalFiber {
            surface,
            chain_length: p.chain_length(),
        }
    }

    /// `(b₀, b₁, b₂)` of the chain: connected, no odd cohomology, one class
    /// per curve in degree 2.
    pub fn chain_betti(&self) -> [i64; 3] {
        [1, 0, self.chain_length]
    }

    pub fn betti(&self) -> Result<BettiTable, QuotientError> {
        let s = self.surface.full_betti();
        let c = self.chain_betti();
        let mut out = [0i64; 9];
        for (i, &bs) in s.iter().enumerate() {
            for (j, &bc) in c.iter().enumerate() {
                let term = bs.checked_mul(bc).ok_or(QuotientError::Overflow)?;
                out[i + j] = out[i + j]
                    .checked_add(term)
                    .ok_or(QuotientError::Overflow)?;
            }
        }
        Ok(BettiTable::new(out)?)
    }
}

/// Künneth product `b(S × C_p)`, nonzero in degrees `0..=6`.
pub fn exceptional_betti(surface: SurfaceProfile, p: u64) -> Result<BettiTable, QuotientError> {
    ExceptionalFiber::new(surface, Prime::new(p)?).betti()
}

/// `b_j(S × C_p) − b_j(S)` for every degree.
fn exceptional_increment(surface: SurfaceProfile, p: Prime) -> Result<[i64; 9], QuotientError> {
    let fiber = ExceptionalFiber::new(surface, p).betti()?;
    let base = surface.table();
    let mut diff = [0i64; 9];
    for (j, d) in diff.iter_mut().enumerate() {
        *d = fiber.entries()[j] - base.entries()[j];
    }
    Ok(diff)
}

/// Betti numbers of `W` from those of `Y` and the fixed-locus profile.
///
/// Isolated points contribute nothing here: they stay as terminal quotient
/// singularities of `W`.
pub fn transport_betti(
    b_y: &BettiTable,
    profile: &FixedLocusProfile,
) -> Result<BettiTable, QuotientError> {
    let k3 = exceptional_increment(SurfaceProfile::K3, profile.p)?;
    let torus = exceptional_increment(SurfaceProfile::TORUS2, profile.p)?;
    let (k, t) = (i64::from(profile.k), i64::from(profile.t));
    let mut out = *b_y.entries();
    for (j, b) in out.iter_mut().enumerate() {
        let add = k
            .checked_mul(k3[j])
            .zip(t.checked_mul(torus[j]))
            .and_then(|(x, y)| x.checked_add(y))
            .ok_or(QuotientError::Overflow)?;
        *b = b.checked_add(add).ok_or(QuotientError::Overflow)?;
    }
    Ok(BettiTable::new(out)?)
}

/// `b₄ + b₃ − 10b₂ − 46 + m(p − 1)`: the Salamon defect corrected by the
/// contribution `s = −m(p − 1)` of the `m` isolated quotient singularities.
pub fn orbifold_salamon_defect(b_w: &BettiTable, profile: &FixedLocusProfile) -> i64 {
    salamon_defect(b_w) + i64::from(profile.m) * profile.p.chain_length()
}

/// `χ_top(X^g)`; equals `χ_top(X)` when `g` acts trivially on cohomology.
pub fn lefschetz_euler_fixed(profile: &FixedLocusProfile) -> i64 {
    i64::from(profile.m)
        + i64::from(profile.k) * SurfaceProfile::of(SurfaceKind::K3).euler()
        + i64::from(profile.t) * SurfaceProfile::of(SurfaceKind::Torus2).euler()
}

/// Linear constraint `m_coeff·m + k_coeff·k + t_coeff·t = 0` that the orbifold
/// Salamon relation imposes on the fixed locus, and its nonnegative solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MkSolution {
    pub p: Prime,
    pub m: u32,
    pub k: u32,
    pub m_coeff: i64,
    pub k_coeff: i64,
    pub t_coeff: i64,
}

impl MkSolution {
    /// The balance `−m(p−1) = (p−1)(22k + 6t + 4t − 10k − 10t)` with `p`
    /// substituted.
    pub fn balance_equation(&self) -> String {
        let q = self.p.chain_length();
        format!(
            "-{q}m = {q}(22k + 6t + 4t - 10k - 10t)  <=>  {}m + {}k + {}t = 0",
            self.m_coeff, self.k_coeff, self.t_coeff
        )
    }
}

impl fmt::Display for MkSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}  =>  (m, k) = ({}, {})",
            self.balance_equation(),
            self.m,
            self.k
        )
    }
}

/// Forces `m = k = 0` for a numerically trivial `g` of order `p`.
///
/// `Y` has the Betti numbers of `X`, which satisfies the Salamon relation, and
/// `W` satisfies its orbifold version. The orbifold defect of the transported
/// table is affine in `(m, k, t)`; its coefficients are read off by
/// transporting along unit profiles.
pub fn solve_mk(p: u64) -> Result<MkSolution, QuotientError> {
    let p = Prime::new(p)?;
    let b_y = betti_from_pair(0, 0)?;
    let defect_at = |m, k, t| -> Result<i64, QuotientError> {
        let profile = FixedLocusProfile::new(p, m, k, t);
        Ok(orbifold_salamon_defect(
            &transport_betti(&b_y, &profile)?,
            &profile,
        ))
    };
    let base = defect_at(0, 0, 0)?;
    debug_assert_eq!(base, 0);
    let m_coeff = defect_at(1, 0, 0)? - base;
    let k_coeff = defect_at(0, 1, 0)? - base;
    let t_coeff = defect_at(0, 0, 1)? - base;

    // With t free, the equation constrains only (m, k); positive coefficients
    // leave (0, 0) as the sole nonnegative solution.
    if t_coeff != 0 || m_coeff <= 0 || k_coeff <= 0 {
        return Err(QuotientError::NoUniqueSolution(format!(
            "{m_coeff}m + {k_coeff}k + {t_coeff}t = 0"
        )));
    }
    Ok(MkSolution {
        p,
        m: 0,
        k: 0,
        m_coeff,
        k_coeff,
        t_coeff,
    })
}
