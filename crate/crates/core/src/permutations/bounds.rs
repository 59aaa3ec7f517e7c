//! Union bound, the Stirling inequality chain and the threshold
//! `m <= (n / 48e)^2` with its tail `8 * 4^(-n/12)`.
//!
//! Anything that depends on `e` is evaluated against a rational enclosure
//! `e_lo < e < e_hi` whose width is below `2^-256`, so integer decisions
//! (floors, the `ell >= 2e sqrt(m)` precondition) are exact unless the
//! enclosure straddles the boundary, in which case that is reported.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Taylor terms used for the enclosure of `e`; `1/(60! * 60) < 2^-280`.
const E_TERMS: u64 = 60;

/// Rational bounds `lo < e < hi` from the Taylor series with its remainder
/// bound `sum_{k>N} 1/k! < 1/(N! N)`.
pub fn e_interval() -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut factorial = BigInt::one();
    for k in 0..=E_TERMS {
        if k > 0 {
            factorial *= k;
        }
        sum += BigRational::new(BigInt::one(), factorial.clone());
    }
    let tail = BigRational::new(BigInt::one(), factorial * E_TERMS);
    let hi = &sum + tail;
    (sum, hi)
}

fn binomial(m: u64, ell: u64) -> BigInt {
    if ell > m {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..ell {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionBound {
    /// `C(m, ell) * 2 / ell!`.
    pub uncapped: BigRational,
    /// `min(1, uncapped)`.
    pub capped: BigRational,
}

pub fn union_bound(m: u64, ell: u64) -> Result<UnionBound> {
    if ell == 0 {
        return Err(Error::Precondition("union bound needs ell >= 1".into()));
    }
    let uncapped = BigRational::new(binomial(m, ell) * 2, factorial(ell));
    let capped = if uncapped > BigRational::one() {
        BigRational::one()
    } else {
        uncapped.clone()
    };
    Ok(UnionBound { uncapped, capped })
}

/// `log2` of a positive big integer, accurate to f64 precision.
fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

pub(crate) fn log2_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    assert!(r.is_positive(), "log of a negative number");
    log2_biguint(r.numer().magnitude()) - log2_biguint(r.denom().magnitude())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainStep {
    pub name: &'static str,
    pub formula: &'static str,
    /// `log2` of the bound; `-inf` for an exact zero.
    pub log2: f64,
    /// `2^log2`, which underflows to zero for very small bounds.
    pub value: f64,
}

impl ChainStep {
    fn new(name: &'static str, formula: &'static str, log2: f64) -> Self {
        ChainStep {
            name,
            formula,
            log2,
            value: log2.exp2(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub m: u64,
    pub ell: u64,
    /// `union`, `stirling`, `collected`, then `claim` when it applies.
    pub steps: Vec<ChainStep>,
    /// Whether `ell >= 2e sqrt(m)`, decided exactly.
    pub final_step_applies: bool,
    /// Every step is at least the previous one.
    pub monotone: bool,
    /// `8 * 4^(-n/12)` for the smallest and largest `n` with `floor(n/12) = ell`.
    pub tail_smallest_n: ChainStep,
    pub tail_largest_n: ChainStep,
}

/// Numerically evaluate each line of the inequality chain
/// `C(m,l) 2/l! <= 2 m^l / (l/e)^(2l) = 2 (m e^2 / l^2)^l <= 2 * 4^-l`.
pub fn stirling_chain(m: u64, ell: u64) -> Result<ChainReport> {
    let union = union_bound(m, ell)?;
    let log2_e = std::f64::consts::LOG2_E;
    let (lf, mf) = (ell as f64, m as f64);
    let log2_m = if m == 0 { f64::NEG_INFINITY } else { mf.log2() };

    let mut steps = vec![
        ChainStep::new("union", "C(m,l)*2/l!", log2_rational(&union.uncapped)),
        ChainStep::new(
            "stirling",
            "2*m^l/(l/e)^(2l)",
            1.0 + lf * log2_m - 2.0 * lf * (lf.log2() - log2_e),
        ),
        ChainStep::new(
            "collected",
            "2*(m*e^2/l^2)^l",
            1.0 + lf * (log2_m + 2.0 * log2_e - 2.0 * lf.log2()),
        ),
    ];

    // ell^2 >= 4 e^2 m, checked against the upper end of the enclosure.
    let (_, e_hi) = e_interval();
    let lhs = BigRational::from_integer(BigInt::from(ell) * BigInt::from(ell));
    let rhs = &e_hi * &e_hi * BigInt::from(4u64 * m);
    let final_step_applies = lhs >= rhs;
    if final_step_applies {
        steps.push(ChainStep::new("claim", "2*4^(-l)", 1.0 - 2.0 * lf));
    }

    // Steps two and three are the same quantity evaluated two ways.
    let monotone = steps.windows(2).all(|w| {
        let slack = 1e-9 * w[0].log2.abs().max(1.0);
        w[0].log2 == f64::NEG_INFINITY || w[1].log2 >= w[0].log2 - slack
    });
    let tail = |n: f64| ChainStep::new("tail", "8*4^(-n/12)", 3.0 - n / 6.0);
    Ok(ChainReport {
        m,
        ell,
        steps,
        final_step_applies,
        monotone,
        tail_smallest_n: tail(12.0 * lf),
        tail_largest_n: tail(12.0 * lf + 11.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Threshold {
    pub n: u64,
    /// `floor((n / 48e)^2)`; the smaller candidate if the enclosure straddles.
    pub m_max: u64,
    /// Both floor candidates; equal unless `boundary_flag`.
    pub m_max_candidates: [u64; 2],
    pub boundary_flag: bool,
    /// `8 * 4^(-n/12)`.
    pub tail: f64,
    pub tail_log2: f64,
}

pub fn theorem_threshold(n: u64) -> Result<Threshold> {
    if n < 4 {
        return Err(Error::Precondition(format!("threshold needs n >= 4, got {n}")));
    }
    let (e_lo, e_hi) = e_interval();
    let n2 = BigInt::from(n) * BigInt::from(n);
    // (n / 48e)^2 = n^2 / (2304 e^2), decreasing in e.
    let at = |e: &BigRational| -> u64 {
        let q = BigRational::from_integer(n2.clone()) / (e * e * BigInt::from(2304));
        let (floor, _) = q.numer().div_mod_floor(q.denom());
        floor.to_u64().expect("threshold fits in u64")
    };
    let (lo, hi) = (at(&e_hi), at(&e_lo));
    let tail_log2 = 3.0 - n as f64 / 6.0;
    Ok(Threshold {
        n,
        m_max: lo,
        m_max_candidates: [lo, hi],
        boundary_flag: lo != hi,
        tail: tail_log2.exp2(),
        tail_log2,
    })
}
