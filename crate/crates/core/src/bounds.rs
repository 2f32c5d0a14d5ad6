//! Exponential growth bounds for `C_n` and radius-of-convergence estimates.
//!
//! Every pass/fail decision here is an exact integer comparison. Floating point
//! only appears in the root/ratio/asymptotic estimators, where huge integers are
//! reduced through [`big_log`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::catalan::{catalan_closed_form, catalan_product_recurrence, even_binomial_sum};
use crate::{Error, Result};

/// Range over which [`minimal_inductive_constant`] scans `C_n / 4^n`.
pub const INDUCTION_SCAN_RANGE: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundName {
    /// `C_n <= A 4^n`, propagated through the Touchard recurrence.
    UpperTouchard,
    /// `C_n <= 4^n`, propagated through the Segner convolution.
    UpperSegner,
    /// `C_n >= 4^n / ((n+1)(2n+1))` from the central binomial coefficient.
    LowerCentralBinomial,
    /// `C_n >= 2^(n-1)` from the leading Touchard term.
    LowerTouchard,
}

impl BoundName {
    pub fn name(self) -> &'static str {
        match self {
            BoundName::UpperTouchard => "upper_touchard",
            BoundName::UpperSegner => "upper_segner",
            BoundName::LowerCentralBinomial => "lower_central_binomial",
            BoundName::LowerTouchard => "lower_touchard",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An auxiliary inequality used inside an inductive step, checked per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCheck {
    pub inequality: &'static str,
    /// Steps `first_step..=last_step` were evaluated.
    pub first_step: u64,
    pub last_step: u64,
    /// First step at which the inequality fails, if any.
    pub first_failure: Option<u64>,
}

impl StepCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub bound_name: BoundName,
    pub checked_up_to: u64,
    pub holds: bool,
    pub first_violation: Option<u64>,
    pub constant_a: Option<BigRational>,
    pub step_check: Option<StepCheck>,
}

impl BoundReport {
    fn new(bound_name: BoundName, checked_up_to: u64, first_violation: Option<u64>) -> Self {
        BoundReport {
            bound_name,
            checked_up_to,
            holds: first_violation.is_none(),
            first_violation,
            constant_a: None,
            step_check: None,
        }
    }
}

fn table(n_max: u64) -> Result<Vec<BigInt>> {
    Ok(catalan_product_recurrence(n_max)?
        .into_values()
        .into_iter()
        .map(BigInt::from)
        .collect())
}

fn pow4(n: u64) -> BigInt {
    BigInt::one() << (2 * n)
}

/// `lhs <= a * rhs` for rational `a`.
fn le_scaled(lhs: &BigInt, a: &BigRational, rhs: &BigInt) -> bool {
    lhs * a.denom() <= a.numer() * rhs
}

/// Checks `C_n <= A 4^n` the way the Touchard induction does.
///
/// Base cases `C_0 <= A` and `C_1 <= 4A` are checked directly. For each step
/// `1 <= n < n_max` the recurrence bounds `C_{n+1}` by
/// `A 2^n sum_k binom(n, 2k) = (A/2) 4^n`, which is at most `A 4^(n+1)`;
/// that intermediate bound is evaluated against the table as the step check,
/// and `C_{n+1} <= A 4^(n+1)` decides `holds`.
pub fn verify_upper_bound_induction(a: &BigRational, n_max: u64) -> Result<BoundReport> {
    if !a.is_positive() {
        return Err(Error::Domain(format!(
            "induction constant must be positive, got {a}"
        )));
    }
    let top = n_max.max(1);
    let c = table(top)?;
    let first_violation = (0..=top).find(|&n| !le_scaled(&c[n as usize], a, &pow4(n)));

    let mut step_failure = None;
    for n in 1..top {
        // 2^n sum_k binom(n, 2k) collapses to 4^n / 2
        let budget = BigInt::from(even_binomial_sum(n)?) << n;
        let collapses = budget == pow4(n) >> 1usize;
        if !collapses || !le_scaled(&c[n as usize + 1], a, &budget) {
            step_failure = Some(n);
            break;
        }
    }

    let mut report = BoundReport::new(BoundName::UpperTouchard, top, first_violation);
    report.constant_a = Some(a.clone());
    report.step_check = Some(StepCheck {
        inequality: "C_{n+1} <= A 2^n sum_k binom(n,2k) = (A/2) 4^n",
        first_step: 1,
        last_step: top.saturating_sub(1),
        first_failure: step_failure,
    });
    Ok(report)
}

/// The least `A` with `C_n <= A 4^n` on the scanned range, i.e. `max C_n / 4^n`.
///
/// The maximum sits at `n = 0`, so this is 1.
pub fn minimal_inductive_constant() -> Result<BigRational> {
    let c = table(INDUCTION_SCAN_RANGE)?;
    let best = c
        .into_iter()
        .enumerate()
        .map(|(n, cn)| BigRational::new(cn, pow4(n as u64)))
        .max()
        .expect("table is never empty");
    Ok(best)
}

/// Checks `C_n <= 4^n` for `0 <= n <= n_max`.
///
/// The step check records where `(n+1) 4^n <= 4^(n+1)` actually holds: it fails
/// from `n = 4` on, so the end-to-end inequality is what decides `holds`.
pub fn verify_segner_upper_bound(n_max: u64) -> Result<BoundReport> {
    let c = table(n_max)?;
    let first_violation = (0..=n_max).find(|&n| c[n as usize] > pow4(n));
    let step_failure = (0..n_max).find(|&n| BigInt::from(n + 1) * pow4(n) > pow4(n + 1));
    let mut report = BoundReport::new(BoundName::UpperSegner, n_max, first_violation);
    report.step_check = Some(StepCheck {
        inequality: "(n+1) 4^n <= 4^(n+1)",
        first_step: 0,
        last_step: n_max.saturating_sub(1),
        first_failure: step_failure,
    });
    Ok(report)
}

/// Checks `binom(2n, n) >= 4^n/(2n+1)` and `C_n >= 4^n/((n+1)(2n+1))` for
/// `1 <= n <= n_max`.
pub fn verify_lower_central_binomial(n_max: u64) -> Result<BoundReport> {
    if n_max == 0 {
        return Err(Error::Precondition(
            "central binomial bound is stated for n >= 1".into(),
        ));
    }
    let c = table(n_max)?;
    let first_violation = (1..=n_max).find(|&n| {
        let cn = &c[n as usize];
        let central = cn * BigInt::from(n + 1);
        let binom_ok = central * BigInt::from(2 * n + 1) >= pow4(n);
        let catalan_ok = cn * BigInt::from((n + 1) * (2 * n + 1)) >= pow4(n);
        !(binom_ok && catalan_ok)
    });
    Ok(BoundReport::new(
        BoundName::LowerCentralBinomial,
        n_max,
        first_violation,
    ))
}

/// Checks `C_n >= 2^(n-1)` for `0 <= n <= n_max` (at `n = 0`: `1 >= 1/2`).
pub fn verify_lower_touchard(n_max: u64) -> Result<BoundReport> {
    let c = table(n_max)?;
    let first_violation = (0..=n_max).find(|&n| (&c[n as usize] << 1usize) < (BigInt::one() << n));
    Ok(BoundReport::new(
        BoundName::LowerTouchard,
        n_max,
        first_violation,
    ))
}

/// Natural logarithm of a big integer with an a-priori error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigLog {
    pub value: f64,
    pub abs_error_bound: f64,
}

// ln 2 split so that k * LN2_HI is exact for k < 2^32.
const LN2_HI: f64 = 6.931_471_803_691_238e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_7e-10;

/// `ln(x / 2^shift)` from the bit length and the leading 64 bits of `x`.
fn scaled_ln(x: &BigUint, shift: u64) -> BigLog {
    let bits = x.bits();
    let top = if bits >= 64 {
        x >> (bits - 64)
    } else {
        x << (64 - bits)
    };
    let mantissa = top.to_u64().expect("exactly 64 bits");
    // x = 2^(bits-1) * frac, frac in [1, 2); truncation loses < 2^-63 relative
    let frac = mantissa as f64 / 2f64.powi(63);
    let k = bits as f64 - 1.0 - shift as f64;
    let value = k * LN2_HI + (k * LN2_LO + frac.ln());
    let abs_error_bound = 2f64.powi(-63) + 2f64.powi(-51) + f64::EPSILON * value.abs();
    BigLog {
        value,
        abs_error_bound,
    }
}

/// `ln(x)` for `x >= 1`.
///
/// The bound stays below `2^-40` while `ln(x) < 4096` (about 5900 bits); past
/// that the spacing of `f64` values near the result dominates.
pub fn big_log(x: &BigInt) -> Result<BigLog> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("logarithm needs x >= 1, got {x}")));
    }
    Ok(scaled_ln(x.magnitude(), 0))
}

/// `C_n^(1/n)`, evaluated as `4 exp(ln(C_n / 4^n) / n)`.
pub fn root_test(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("root test needs n >= 1".into()));
    }
    let log = scaled_ln(&catalan_closed_form(n), 2 * n);
    Ok(4.0 * (log.value / n as f64).exp())
}

/// `C_{n+1} / C_n` as an exact rational.
pub fn ratio_test_exact(n: u64) -> BigRational {
    BigRational::new(
        BigInt::from(catalan_closed_form(n + 1)),
        BigInt::from(catalan_closed_form(n)),
    )
}

pub fn ratio_test(n: u64) -> f64 {
    ratio_to_f64(&ratio_test_exact(n))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("ratio is finite")
}

/// `C_n n^(3/2) sqrt(pi) / 4^n`, which tends to 1 from below.
pub fn asymptotic_ratio(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("asymptotic ratio needs n >= 1".into()));
    }
    let log = scaled_ln(&catalan_closed_form(n), 2 * n);
    let n = n as f64;
    Ok((log.value + 1.5 * n.ln() + 0.5 * std::f64::consts::PI.ln()).exp())
}

/// The radius bracket `[1/4, 1/2]` that the Touchard recurrence alone yields:
/// the upper growth bound gives `R >= 1/4`, the `2^(n-1)` lower bound `R <= 1/2`.
pub fn touchard_only_bracket() -> (BigRational, BigRational) {
    (
        BigRational::new(1.into(), 4.into()),
        BigRational::new(1.into(), 2.into()),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusEstimate {
    pub n_used: u64,
    pub root_test_value: f64,
    pub ratio_test_value: f64,
    pub ratio_test_exact: BigRational,
    /// `1 / ratio_test`; converges faster than the root-test reciprocal.
    pub radius_point_estimate: f64,
    pub root_radius_estimate: f64,
    pub touchard_only_bracket: (BigRational, BigRational),
    pub asymptotic_ratio: f64,
}

pub fn radius_estimate(n: u64) -> Result<RadiusEstimate> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "radius estimate needs n >= 2, got {n}"
        )));
    }
    let ratio = ratio_test_exact(n);
    let root = root_test(n)?;
    Ok(RadiusEstimate {
        n_used: n,
        root_test_value: root,
        ratio_test_value: ratio_to_f64(&ratio),
        radius_point_estimate: ratio_to_f64(&ratio.recip()),
        ratio_test_exact: ratio,
        root_radius_estimate: 1.0 / root,
        touchard_only_bracket: touchard_only_bracket(),
        asymptotic_ratio: asymptotic_ratio(n)?,
    })
}
