//! Replays the contradiction for a hypothetical numerically trivial
//! automorphism `g` of prime order `p` on a hyperkähler 4-fold `X`.
//!
//! For each candidate `(b₂, b₃)`, prime `p` and torus count `t`:
//!
//! 1. `b(X)` from the pair, `b(Y) = b(X)` since `g` acts trivially.
//! 2. The orbifold Salamon balance forces `m = k = 0`.
//! 3. Lefschetz: `χ_top(X) = χ_top(X^g) = t·χ(torus) = 0`. A nonzero
//!    `χ_top(X)` is already a contradiction.
//! 4. Otherwise `W` is a smooth hyperkähler 4-fold with `c₄(W) = χ_top(W) = 0`,
//!    and a line bundle with vanishing cohomology would need a rational root of
//!    the Riemann–Roch quadratic at `c₄ = 0`. There is none.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{rational_sqrt_exact, Rational};
use crate::pipeline::candidates::CandidateFile;
use crate::quotient::{
    lefschetz_euler_fixed, orbifold_salamon_defect, solve_mk, transport_betti, FixedLocusProfile,
    Prime, QuotientError,
};
use crate::riemann_roch::{admits_zero_chi, delta};
use crate::topology::{
    betti_from_pair, chern_from_betti, euler_characteristic, salamon_defect, TopologyError,
};

/// A consistency check inside the replay failed. Indicates a bug, never a gap
/// in the argument.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerificationError {
    #[error("candidate ({b2}, {b3}), p = {p}, t = {t}: {message}")]
    Check {
        b2: i64,
        b3: i64,
        p: u32,
        t: u32,
        message: String,
    },
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    LefschetzMismatch,
    Table1Exclusion,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::LefschetzMismatch => "LefschetzMismatch",
            Branch::Table1Exclusion => "Table1Exclusion",
        })
    }
}

/// Assumptions taken from cited theorems rather than computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    NumericalTriviality,
    PullbackInjective,
    ExceptionalChains,
    OrbifoldSalamon,
    LefschetzFixedPoint,
    ResolutionSmoothHyperkahler,
    VanishingLineBundle,
}

impl Hypothesis {
    pub fn id(self) -> &'static str {
        match self {
            Hypothesis::NumericalTriviality => "numerical_triviality",
            Hypothesis::PullbackInjective => "pullback_injective",
            Hypothesis::ExceptionalChains => "exceptional_chains",
            Hypothesis::OrbifoldSalamon => "orbifold_salamon",
            Hypothesis::LefschetzFixedPoint => "lefschetz_fixed_point",
            Hypothesis::ResolutionSmoothHyperkahler => "resolution_smooth_hyperkahler",
            Hypothesis::VanishingLineBundle => "vanishing_line_bundle",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Hypothesis::NumericalTriviality => {
                "g acts as the identity on H*(X, Q), so b_j(X/<g>) = b_j(X) for all j"
            }
            Hypothesis::PullbackInjective => {
                "pullback along W -> X/<g> is injective on rational cohomology, so Mayer-Vietoris splits into short exact sequences"
            }
            Hypothesis::ExceptionalChains => {
                "each codimension-2 stratum S of X/<g> has preimage S x C_p in W, C_p a chain of p-1 smooth rational curves"
            }
            Hypothesis::OrbifoldSalamon => {
                "W satisfies b4 + b3 - 10 b2 = 46 + s with s = -m(p-1) from its m cyclic quotient points"
            }
            Hypothesis::LefschetzFixedPoint => {
                "for g acting trivially on cohomology, chi_top(X) = chi_top(X^g)"
            }
            Hypothesis::ResolutionSmoothHyperkahler => {
                "with m = 0 the partial resolution W is smooth, hence a compact hyperkahler 4-fold"
            }
            Hypothesis::VanishingLineBundle => {
                "W carries a line bundle L with H^i(W, L) = 0 for all i, so chi(W, L) = 0"
            }
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id(), self.statement())
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

const COMMON_HYPOTHESES: [Hypothesis; 5] = [
    Hypothesis::NumericalTriviality,
    Hypothesis::PullbackInjective,
    Hypothesis::ExceptionalChains,
    Hypothesis::OrbifoldSalamon,
    Hypothesis::LefschetzFixedPoint,
];

/// A named exact value in a certificate. Integers serialize as JSON numbers,
/// rationals as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detail {
    Int(i64),
    Rational(Rational),
    Rationals(Vec<Rational>),
    Absent,
}

impl Serialize for Detail {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Detail::Int(n) => serializer.serialize_i64(*n),
            Detail::Rational(q) => q.serialize(serializer),
            Detail::Rationals(qs) => qs.serialize(serializer),
            Detail::Absent => serializer.serialize_none(),
        }
    }
}

impl fmt::Display for Detail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Detail::Int(n) => write!(f, "{n}"),
            Detail::Rational(q) => write!(f, "{q}"),
            Detail::Rationals(qs) => {
                let parts: Vec<String> = qs.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", parts.join("; "))
            }
            Detail::Absent => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Candidate {
    pub b2: i64,
    pub b3: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub candidate: Candidate,
    pub prime: Prime,
    pub t: u32,
    pub branch: Branch,
    pub details: BTreeMap<String, Detail>,
    pub hypotheses: Vec<Hypothesis>,
}

impl Certificate {
    pub fn sort_key(&self) -> (i64, i64, Prime, u32) {
        (self.candidate.b2, self.candidate.b3, self.prime, self.t)
    }

    pub fn detail(&self, key: &str) -> Option<&Detail> {
        self.details.get(key)
    }

    pub fn int_detail(&self, key: &str) -> Option<i64> {
        match self.details.get(key) {
            Some(Detail::Int(n)) => Some(*n),
            _ => None,
        }
    }

    /// Re-checks the branch invariants from the recorded values alone.
    pub fn check_invariants(&self) -> Result<(), String> {
        let chi_x = self.int_detail("chi_top_x").ok_or("missing chi_top_x")?;
        match self.branch {
            Branch::LefschetzMismatch => {
                if chi_x == 0 {
                    return Err("LefschetzMismatch with chi_top(X) = 0".into());
                }
            }
            Branch::Table1Exclusion => {
                if chi_x != 0 {
                    return Err(format!("Table1Exclusion with chi_top(X) = {chi_x}"));
                }
                if self.int_detail("c4_w") != Some(0) {
                    return Err("Table1Exclusion with c4(W) != 0".into());
                }
                if !admits_zero_chi(0).is_empty() {
                    return Err("Riemann-Roch quadratic at c4 = 0 has rational roots".into());
                }
                match self.detail("lambda_roots") {
                    Some(Detail::Rationals(r)) if r.is_empty() => {}
                    other => return Err(format!("unexpected lambda_roots {other:?}")),
                }
            }
        }
        Ok(())
    }
}

/// Produces the certificate for one `(candidate, p, t)` triple.
pub fn certify(b2: i64, b3: i64, p: Prime, t: u32) -> Result<Certificate, VerificationError> {
    let fail = |message: String| VerificationError::Check {
        b2,
        b3,
        p: p.get(),
        t,
        message,
    };
    let mut details = BTreeMap::new();
    let mut hypotheses = COMMON_HYPOTHESES.to_vec();

    let b_x = betti_from_pair(b2, b3)?;
    let b_y = b_x.relaxed();

    let mk = solve_mk(u64::from(p.get()))?;
    details.insert("m".to_string(), Detail::Int(i64::from(mk.m)));
    details.insert("k".to_string(), Detail::Int(i64::from(mk.k)));
    let profile = FixedLocusProfile::new(p, mk.m, mk.k, t);

    let chi_x = euler_characteristic(&b_x);
    let chi_fixed = lefschetz_euler_fixed(&profile);
    details.insert("chi_top_x".to_string(), Detail::Int(chi_x));
    details.insert("chi_top_fixed".to_string(), Detail::Int(chi_fixed));
    let c4_x = chern_from_betti(b2, b3)?.c4;
    if c4_x != chi_x {
        return Err(fail(format!("c4(X) = {c4_x} but chi_top(X) = {chi_x}")));
    }

    if chi_x != chi_fixed {
        let cert = Certificate {
            candidate: Candidate { b2, b3 },
            prime: p,
            t,
            branch: Branch::LefschetzMismatch,
            details,
            hypotheses,
        };
        cert.check_invariants().map_err(fail)?;
        return Ok(cert);
    }

    let b_w = transport_betti(&b_y, &profile)?;
    let orbifold_defect = orbifold_salamon_defect(&b_w, &profile);
    if orbifold_defect != 0 {
        return Err(fail(format!(
            "orbifold Salamon defect of W is {orbifold_defect}"
        )));
    }
    let b_w = b_w
        .into_strict()
        .map_err(|e| fail(format!("transported table is not hyperkahler: {e}")))?;
    let defect_w = salamon_defect(&b_w);
    if defect_w != 0 {
        return Err(fail(format!("Salamon defect of W is {defect_w}")));
    }
    let chi_w = euler_characteristic(&b_w);
    if chi_w != chi_x {
        return Err(fail(format!(
            "chi_top(W) = {chi_w} but chi_top(Y) = {chi_x}"
        )));
    }
    let chern_w = chern_from_betti(b_w.b2(), b_w.b3())?;
    if chern_w.c4 != chi_w || chern_w.c4 != 0 {
        return Err(fail(format!(
            "c4(W) = {} with chi_top(W) = {chi_w}",
            chern_w.c4
        )));
    }
    let delta_w = delta(chern_w.c4);
    let roots = admits_zero_chi(chern_w.c4);
    if !roots.is_empty() {
        return Err(fail(format!(
            "chi(W, L) = 0 is solvable at c4 = {}: no contradiction",
            chern_w.c4
        )));
    }

    details.insert("b2_w".to_string(), Detail::Int(b_w.b2()));
    details.insert("b3_w".to_string(), Detail::Int(b_w.b3()));
    details.insert("b4_w".to_string(), Detail::Int(b_w.b4()));
    details.insert("salamon_defect_w".to_string(), Detail::Int(defect_w));
    details.insert("chi_top_w".to_string(), Detail::Int(chi_w));
    details.insert("c2sq_w".to_string(), Detail::Int(chern_w.c2sq));
    details.insert("c4_w".to_string(), Detail::Int(chern_w.c4));
    details.insert(
        "delta_sqrt".to_string(),
        rational_sqrt_exact(&delta_w).map_or(Detail::Absent, Detail::Rational),
    );
    details.insert("delta".to_string(), Detail::Rational(delta_w));
    details.insert(
        "lambda_roots".to_string(),
        Detail::Rationals(roots.into_iter().collect()),
    );
    hypotheses.push(Hypothesis::ResolutionSmoothHyperkahler);
    hypotheses.push(Hypothesis::VanishingLineBundle);

    let cert = Certificate {
        candidate: Candidate { b2, b3 },
        prime: p,
        t,
        branch: Branch::Table1Exclusion,
        details,
        hypotheses,
    };
    cert.check_invariants().map_err(fail)?;
    Ok(cert)
}

/// Certificates for every valid candidate row, every prime and every
/// `t ∈ 0..=t_max`, sorted by `(b₂, b₃, p, t)`. Invalid rows are skipped.
pub fn prove(
    candidates: &CandidateFile,
    primes: &[Prime],
    t_max: u32,
) -> Result<Vec<Certificate>, VerificationError> {
    let mut certs = Vec::new();
    for row in candidates.valid_rows() {
        for &p in primes {
            for t in 0..=t_max {
                certs.push(certify(row.b2, row.b3, p, t)?);
            }
        }
    }
    certs.sort_by_key(Certificate::sort_key);
    Ok(certs)
}
