//! Riemann–Roch in the characteristic value λ and the discriminant filter on
//! Betti candidates.
//!
//! For a hyperkähler 4-fold with Chern numbers `(c₂², c₄)` and a line bundle of
//! characteristic value λ,
//!
//! ```text
//! χ(L) = χ(O) + (7/2·c₂² − 2c₄)/720 · λ + (7/8·c₂² − c₄/2)/720 · λ²
//! ```
//!
//! and with `3c₂² − c₄ = 2160`, `χ(O) = 3` this collapses to a quadratic whose
//! coefficients depend on `c₄` alone. A line bundle with `χ(L) = 0` can only
//! exist when that quadratic has a rational root.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::exact::{rational_sqrt_exact, solve_rational_quadratic, Rational};
use crate::topology::{chern_from_betti, ChernData, TopologyError};

/// χ(W, O_W) of a hyperkähler 4-fold.
pub const CHI_O: i64 = 3;

/// The `c₄` at which both non-constant coefficients vanish.
pub const DEGENERATE_C4: i64 = 3024;

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero literal denominator")
}

/// `constant + linear·λ + quadratic·λ²` for a hyperkähler 4-fold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RrPolynomial {
    pub constant: Rational,
    pub linear: Rational,
    pub quadratic: Rational,
}

impl RrPolynomial {
    /// Coefficients `3`, `7/2 − c₄/864`, `7/8 − c₄/3456`.
    pub fn for_c4(c4: i64) -> Self {
        RrPolynomial {
            constant: Rational::from_integer(CHI_O),
            linear: rat(7, 2) - rat(c4, 864),
            quadratic: rat(7, 8) - rat(c4, 3456),
        }
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        crate::exact::eval_quadratic(&self.quadratic, &self.linear, &self.constant, lambda)
    }

    /// `linear² − 4·quadratic·constant`.
    pub fn discriminant(&self) -> Rational {
        self.linear.square() - &(&Rational::from_integer(4) * &(&self.quadratic * &self.constant))
    }

    pub fn rational_roots(&self) -> BTreeSet<Rational> {
        // constant is 3, so the polynomial is never identically zero.
        solve_rational_quadratic(&self.quadratic, &self.linear, &self.constant)
            .expect("constant term is nonzero")
    }
}

/// `48·∫exp(L) / ∫c₂·exp(L)`, or 0 when the denominator vanishes.
pub fn characteristic_value(int_exp_l: &Rational, int_c2_exp_l: &Rational) -> Rational {
    if int_c2_exp_l.is_zero() {
        return Rational::zero();
    }
    (&Rational::from_integer(48) * int_exp_l)
        .checked_div(int_c2_exp_l)
        .expect("denominator checked nonzero")
}

/// Riemann–Roch with independent `c₂²`, `c₄`, `χ(O)`.
pub fn rr_chi_full(c2sq: i64, c4: i64, chi_o: &Rational, lambda: &Rational) -> Rational {
    let c2sq = Rational::from_integer(c2sq);
    let c4 = Rational::from_integer(c4);
    let linear = &(&(&rat(7, 2) * &c2sq) - &(&Rational::from_integer(2) * &c4)) * &rat(1, 720);
    let quadratic = &(&(&rat(7, 8) * &c2sq) - &(&rat(1, 2) * &c4)) * &rat(1, 720);
    chi_o + &(&(&linear * lambda) + &(&quadratic * &lambda.square()))
}

/// Riemann–Roch after substituting `3c₂² − c₄ = 2160` and `χ(O) = 3`.
pub fn rr_chi_hk(c4: i64, lambda: &Rational) -> Rational {
    RrPolynomial::for_c4(c4).eval(lambda)
}

/// `(7/2 − c₄/864)² − 12·(7/8 − c₄/3456)`.
pub fn delta(c4: i64) -> Rational {
    let linear = rat(7, 2) - rat(c4, 864);
    let quadratic = rat(7, 8) - rat(c4, 3456);
    linear.square() - &(&Rational::from_integer(12) * &quadratic)
}

/// Every rational λ with `rr_chi_hk(c4, λ) = 0`.
///
/// Empty at `c₄ = 3024`, where χ is the constant 3 even though Δ = 0.
pub fn admits_zero_chi(c4: i64) -> BTreeSet<Rational> {
    RrPolynomial::for_c4(c4).rational_roots()
}

/// Outcome of the discriminant filter for one `(b₂, b₃)` candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub b2: i64,
    pub b3: i64,
    pub chern: ChernData,
    pub delta: Rational,
    pub delta_sqrt: Option<Rational>,
    pub lambda_roots: BTreeSet<Rational>,
    pub accepted: bool,
}

impl CandidateRecord {
    pub fn evaluate(b2: i64, b3: i64) -> Result<Self, TopologyError> {
        let chern = chern_from_betti(b2, b3)?;
        let delta = delta(chern.c4);
        let delta_sqrt = rational_sqrt_exact(&delta);
        let lambda_roots = admits_zero_chi(chern.c4);
        Ok(CandidateRecord {
            b2,
            b3,
            chern,
            delta,
            delta_sqrt,
            accepted: !lambda_roots.is_empty(),
            lambda_roots,
        })
    }
}

/// Evaluates each pair in input order.
pub fn filter_candidates(pairs: &[(i64, i64)]) -> Result<Vec<CandidateRecord>, TopologyError> {
    pairs
        .iter()
        .map(|&(b2, b3)| CandidateRecord::evaluate(b2, b3))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Rational> {
        items.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn characteristic_value_cases() {
        assert_eq!(characteristic_value(&q("1"), &q("48")), q("1"));
        assert_eq!(characteristic_value(&q("0"), &q("5")), q("0"));
        assert_eq!(characteristic_value(&q("3"), &q("0")), q("0"));
        assert_eq!(characteristic_value(&q("1/2"), &q("-3")), q("-8"));
    }

    #[test]
    fn full_form_examples() {
        let three = Rational::from_integer(3);
        assert_eq!(rr_chi_full(828, 324, &three, &Rational::zero()), three);
        assert!(rr_chi_full(828, 324, &three, &q("-8/5")).is_zero());
        assert!(rr_chi_full(756, 108, &three, &q("-4/3")).is_zero());
    }

    #[test]
    fn hk_form_examples() {
        assert!(rr_chi_hk(324, &q("-12/5")).is_zero());
        assert_eq!(rr_chi_hk(108, &q("1")), q("231/32"));
        for l in ["0", "1", "-7/3", "1000000/7"] {
            assert_eq!(rr_chi_hk(DEGENERATE_C4, &q(l)), q("3"));
        }
    }

    #[test]
    fn polynomial_coefficients() {
        let p = RrPolynomial::for_c4(324);
        assert_eq!(p.linear, q("25/8"));
        assert_eq!(p.quadratic, q("25/32"));
        let p = RrPolynomial::for_c4(DEGENERATE_C4);
        assert!(p.linear.is_zero() && p.quadratic.is_zero());
        assert_eq!(p.discriminant(), Rational::zero());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(0), q("7/4"));
        assert_eq!(delta(324), q("25/64"));
        assert_eq!(delta(108), q("81/64"));
        assert_eq!(rational_sqrt_exact(&delta(324)), Some(q("5/8")));
        assert_eq!(rational_sqrt_exact(&delta(108)), Some(q("9/8")));
        assert_eq!(rational_sqrt_exact(&delta(0)), None);
    }

    #[test]
    fn delta_is_discriminant() {
        for c4 in -500..4000 {
            assert_eq!(delta(c4), RrPolynomial::for_c4(c4).discriminant());
        }
    }

    #[test]
    fn root_sets() {
        assert_eq!(admits_zero_chi(324), set(&["-8/5", "-12/5"]));
        assert_eq!(admits_zero_chi(108), set(&["-4/3", "-8/3"]));
        assert!(admits_zero_chi(0).is_empty());
        assert!(admits_zero_chi(DEGENERATE_C4).is_empty());
    }

    #[test]
    fn filter_examples() {
        let recs = filter_candidates(&[(23, 0), (7, 8), (6, 4), (5, 0)]).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.accepted));
        let chern: BTreeSet<_> = recs.iter().map(|r| (r.chern.c2sq, r.chern.c4)).collect();
        assert_eq!(chern, [(756, 108), (828, 324)].into_iter().collect());

        let recs = filter_candidates(&[(4, 32)]).unwrap();
        assert_eq!(recs[0].chern.c4, 0);
        assert_eq!(recs[0].delta, q("7/4"));
        assert!(recs[0].delta_sqrt.is_none());
        assert!(!recs[0].accepted);

        assert!(filter_candidates(&[]).unwrap().is_empty());
        assert!(filter_candidates(&[(-1, 0)]).is_err());
    }

    #[test]
    fn filter_preserves_order() {
        let pairs = [(5, 0), (23, 0), (4, 32), (7, 8)];
        let recs = filter_candidates(&pairs).unwrap();
        let got: Vec<_> = recs.iter().map(|r| (r.b2, r.b3)).collect();
        assert_eq!(got, pairs);
    }
}
