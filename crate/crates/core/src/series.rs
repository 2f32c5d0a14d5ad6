//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` is known modulo `x^(N+1)`. Binary
//! operations truncate to the smaller operand order; nothing is ever
//! zero-extended past what an operand actually knows.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::catalan::{catalan_closed_form_table, catalan_touchard};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Series from its first `order + 1` coefficients.
    ///
    /// Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        TruncatedSeries { coeffs }
    }

    /// A polynomial viewed as a series of the given order. Terms above `order`
    /// are dropped; missing terms are genuinely zero.
    pub fn from_poly<T: Clone + Into<BigInt>>(poly: &[T], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|j| {
                poly.get(j)
                    .map(|c| BigRational::from_integer(c.clone().into()))
                    .unwrap_or_else(BigRational::zero)
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn from_rational_poly(poly: &[BigRational], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|j| poly.get(j).cloned().unwrap_or_else(BigRational::zero))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Lifts a list of integers (e.g. a Catalan table) to a series of order `len - 1`.
    pub fn from_naturals(values: &[BigUint]) -> Self {
        Self::from_coeffs(
            values
                .iter()
                .map(|v| BigRational::from_integer(BigInt::from(v.clone())))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&[1], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_poly(&[0, 1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<&BigRational> {
        self.coeffs.get(j)
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops everything above `order`. Asking for more than is known keeps the
    /// current order.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    // Only valid where the caller knows the missing coefficients are refined later
    // (Newton and fixed-point iterations).
    fn zero_extended(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let coeffs = (0..=order)
            .map(|j| {
                if j < k {
                    BigRational::zero()
                } else {
                    self.coeffs[j - k].clone()
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Divides by `x^k`. The first `k` coefficients must vanish and the order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Domain(format!(
                "cannot divide an order-{} series by x^{k}",
                self.order()
            )));
        }
        if let Some(j) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Domain(format!(
                "coefficient of x^{j} is nonzero; series is not divisible by x^{k}"
            )));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse modulo `x^(order+1)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.constant_term().is_zero() {
            return Err(Error::Domain(
                "series inverse needs a nonzero constant term".into(),
            ));
        }
        let (ints, den) = integerize(&self.coeffs);
        // 1/(A/den) = den/A. With A = sum A_j x^j write 1/A = sum B_n / A_0^(n+1) x^n;
        // then B_0 = 1 and B_n = -sum_{j=1}^{n} A_j A_0^(j-1) B_{n-j}, all integers.
        let a0 = &ints[0];
        let order = self.order();
        let mut a0_pows = vec![BigInt::one()];
        for j in 1..=order + 1 {
            let p = &a0_pows[j - 1] * a0;
            a0_pows.push(p);
        }
        let weighted: Vec<BigInt> = (0..=order)
            .map(|j| {
                if j == 0 {
                    BigInt::zero()
                } else {
                    &ints[j] * &a0_pows[j - 1]
                }
            })
            .collect();
        let mut b: Vec<BigInt> = Vec::with_capacity(order + 1);
        b.push(BigInt::one());
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=n {
                if !weighted[j].is_zero() {
                    acc += &weighted[j] * &b[n - j];
                }
            }
            b.push(-acc);
        }
        let coeffs = b
            .into_iter()
            .enumerate()
            .map(|(n, bn)| BigRational::new(bn * &den, a0_pows[n + 1].clone()))
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Square root with constant term 1, by Newton iteration `y <- (y + a/y)/2`
    /// with the working order doubling each pass.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(format!(
                "series sqrt needs constant term 1, got {}",
                self.constant_term()
            )));
        }
        let target = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut y = TruncatedSeries::one(0);
        let mut prec = 0;
        while prec < target {
            prec = (2 * prec + 1).min(target);
            let y_ext = y.zero_extended(prec);
            let quotient = &self.truncate(prec) * &y_ext.inverse()?;
            y = (&y_ext + &quotient).scale(&half);
        }
        Ok(y)
    }

    /// `f(g(x))` by Horner's rule. Needs `g(0) = 0`; the result has order
    /// `min(order(f), order(g))`.
    pub fn compose(&self, g: &TruncatedSeries) -> Result<Self> {
        if !g.constant_term().is_zero() {
            return Err(Error::Domain(
                "composition needs an inner series with zero constant term".into(),
            ));
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = TruncatedSeries::from_rational_poly(&[self.coeffs[order].clone()], order);
        for j in (0..order).rev() {
            acc = &acc * &g;
            acc.coeffs[0] += &self.coeffs[j];
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = TruncatedSeries::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

/// Scales a rational vector to integers: returns `(v * d, d)` with `d` the lcm
/// of the denominators.
fn integerize(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let abs = c.abs();
            match j {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => {}
                _ => write!(f, "{abs}*")?,
            }
            match j {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product, computed on integerized coefficient vectors.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let (a, da) = integerize(&self.coeffs[..=order]);
        let (b, db) = integerize(&rhs.coeffs[..=order]);
        let mut prod = vec![BigInt::zero(); order + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b[..=order - i].iter().enumerate() {
                if !bj.is_zero() {
                    prod[i + j] += ai * bj;
                }
            }
        }
        let den = da * db;
        TruncatedSeries {
            coeffs: prod
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;

            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                $tr::$method(&self, &rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

/// Difference between two series over their common order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesResidual {
    /// Largest `|lhs_j - rhs_j|`; zero exactly when the series agree.
    pub max_abs_deviation: BigRational,
    pub first_failing_index: Option<usize>,
    pub order: usize,
}

impl SeriesResidual {
    pub fn between(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Self {
        let diff = lhs - rhs;
        let first_failing_index = diff.coeffs.iter().position(|c| !c.is_zero());
        let max_abs_deviation = diff
            .coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero);
        SeriesResidual {
            max_abs_deviation,
            first_failing_index,
            order: diff.order(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.first_failing_index.is_none()
    }
}

/// `C(x)` modulo `x^(order+1)` as the fixed point of `w = 1 + x w^2`.
///
/// Starting from `w = 1`, each pass fixes one more coefficient; pass `i`
/// squares the order-`(i-1)` iterate and yields an order-`i` series.
pub fn catalan_series_fixed_point(order: usize) -> TruncatedSeries {
    let mut w = TruncatedSeries::one(0);
    for i in 1..=order {
        let w_ext = w.zero_extended(i - 1);
        let square = &w_ext * &w_ext;
        let mut coeffs = Vec::with_capacity(i + 1);
        coeffs.push(BigRational::one());
        coeffs.extend(square.coeffs);
        w = TruncatedSeries { coeffs };
    }
    w
}

/// `C(x) = (1 - sqrt(1 - 4x)) / (2x)` modulo `x^(order+1)`.
pub fn catalan_series_sqrt_formula(order: usize) -> Result<TruncatedSeries> {
    let root = TruncatedSeries::from_poly(&[1, -4], order + 1).sqrt()?;
    let numerator = &TruncatedSeries::one(order + 1) - &root;
    if !numerator.constant_term().is_zero() {
        return Err(Error::Internal(format!(
            "1 - sqrt(1 - 4x) has constant term {}",
            numerator.constant_term()
        )));
    }
    let shifted = numerator.shift_down(1)?;
    Ok(shifted.scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
}

/// `1/(1-2x)^(2k+1) = sum_m binom(m+2k, 2k) 2^m x^m` modulo `x^(order+1)`.
pub fn negative_binomial_expansion(k: usize, order: usize) -> TruncatedSeries {
    let two_k = 2 * k as u64;
    let mut binom = BigUint::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order as u64 {
        coeffs.push(BigRational::from_integer(BigInt::from(&binom << m)));
        binom = binom * (m + 1 + two_k) / (m + 1);
    }
    TruncatedSeries { coeffs }
}

/// Checks `sum_{k=0}^{K} C_k x^(2k) / (1-2x)^(2k+1) = C(x)^2` modulo `x^(order+1)`.
///
/// `C_k` comes from the closed-form table; `C(x)` from the square-root formula.
/// Requires `K >= ceil(order/2)` so every coefficient receives all its terms.
pub fn verify_touchard_derivation(order: usize, term_cutoff: usize) -> Result<SeriesResidual> {
    let needed = order.div_ceil(2);
    if term_cutoff < needed {
        return Err(Error::Precondition(format!(
            "term cutoff {term_cutoff} is below ceil({order}/2) = {needed}"
        )));
    }
    let table = catalan_closed_form_table(term_cutoff as u64)?;
    let mut lhs = TruncatedSeries::zero(order);
    for (k, ck) in table.values().iter().enumerate() {
        if 2 * k > order {
            break;
        }
        let term = negative_binomial_expansion(k, order)
            .shift_up(2 * k)
            .scale(&BigRational::from_integer(BigInt::from(ck.clone())));
        lhs = &lhs + &term;
    }
    let c = catalan_series_sqrt_formula(order)?;
    Ok(SeriesResidual::between(&lhs, &(&c * &c)))
}

/// One step of the generating-function derivation of the Touchard recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub name: &'static str,
    pub residual: SeriesResidual,
}

/// Replays every intermediate identity from `C = 1 + xC^2` down to the Touchard
/// coefficient formula, each modulo `x^(order+1)`.
pub fn replay_touchard_chain(order: usize) -> Result<Vec<ChainStep>> {
    let c_ext = catalan_series_fixed_point(order + 2);
    let c = c_ext.truncate(order);
    let square = &c * &c;
    let mut steps = Vec::new();

    // (C - 1)/x = C^2
    let shifted = (&c_ext.truncate(order + 1) - &TruncatedSeries::one(order + 1)).shift_down(1)?;
    steps.push(ChainStep {
        name: "functional_equation",
        residual: SeriesResidual::between(&shifted, &square),
    });

    // C^2 = (1 - 2x - sqrt(1-4x)) / (2x^2)
    let root = TruncatedSeries::from_poly(&[1, -4], order + 2).sqrt()?;
    let numer = &TruncatedSeries::from_poly(&[1, -2], order + 2) - &root;
    let closed = numer
        .shift_down(2)?
        .scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
    steps.push(ChainStep {
        name: "square_closed_expression",
        residual: SeriesResidual::between(&closed, &square),
    });

    // u = x^2 / (1-2x)^2
    let one_minus_2x = TruncatedSeries::from_poly(&[1, -2], order);
    let inv = one_minus_2x.inverse()?;
    let u = (&inv * &inv).shift_up(2);

    // sqrt(1-4x) = (1-2x) sqrt(1-4u)
    let root_t = TruncatedSeries::from_poly(&[1, -4], order).sqrt()?;
    let factored = &one_minus_2x * &root_t.compose(&u)?;
    steps.push(ChainStep {
        name: "sqrt_factorization",
        residual: SeriesResidual::between(&root.truncate(order), &factored),
    });

    // C(x)^2 = C(u) / (1-2x)
    let via_u = &c.compose(&u)? * &inv;
    steps.push(ChainStep {
        name: "catalan_in_u",
        residual: SeriesResidual::between(&via_u, &square),
    });

    steps.push(ChainStep {
        name: "negative_binomial_expansion",
        residual: verify_touchard_derivation(order, order.div_ceil(2))?,
    });

    // [x^n] C^2 = C_{n+1}, with C_{n+1} from the Touchard recurrence
    let touchard = catalan_touchard(order as u64 + 1)?;
    let extracted = TruncatedSeries::from_naturals(&touchard.values()[1..]);
    steps.push(ChainStep {
        name: "coefficient_extraction",
        residual: SeriesResidual::between(&extracted, &square),
    });

    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_poly(c, order)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            &poly(&[1, 1], 3) + &TruncatedSeries::zero(3),
            poly(&[1, 1], 3)
        );
        assert_eq!(&poly(&[1, 2], 1) + &poly(&[3, 4], 1), poly(&[4, 6], 1));
        let a = poly(&[5, -3, 7], 4);
        assert!((&a + &a.scale(&rat(-1, 1))).is_zero());
    }

    #[test]
    fn binary_ops_truncate_to_min_order() {
        let a = poly(&[1, 1, 1, 1], 3);
        let b = poly(&[1, 1], 1);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!((&b - &a).order(), 1);
    }

    #[test]
    fn mul_examples() {
        let a = poly(&[3, -1, 4, 1, -5], 4);
        assert_eq!(&a * &TruncatedSeries::one(4), a);
        assert_eq!(&poly(&[1, 1], 2) * &poly(&[1, 1], 2), poly(&[1, 2, 1], 2));
        let half = TruncatedSeries::from_rational_poly(&[rat(1, 2), rat(1, 3)], 2);
        assert_eq!((&half * &half).coeffs(), &[rat(1, 4), rat(1, 3), rat(1, 9)]);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            TruncatedSeries::one(5).inverse().unwrap(),
            TruncatedSeries::one(5)
        );
        assert_eq!(poly(&[1, -2], 3).inverse().unwrap(), poly(&[1, 2, 4, 8], 3));
        let a = poly(&[1, -4], 10);
        assert_eq!(&a.inverse().unwrap() * &a, TruncatedSeries::one(10));
        assert!(matches!(poly(&[0, 1], 3).inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_with_non_unit_constant() {
        let a = TruncatedSeries::from_rational_poly(&[rat(3, 2), rat(-5, 7), rat(2, 1)], 8);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeff(0), Some(&rat(2, 3)));
        assert_eq!(&a * &inv, TruncatedSeries::one(8));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(
            TruncatedSeries::one(4).sqrt().unwrap(),
            TruncatedSeries::one(4)
        );
        // (1-4x)^(1/2) = 1 - 2x - 2x^2 - 4x^3 - ...
        assert_eq!(poly(&[1, -4], 2).sqrt().unwrap(), poly(&[1, -2, -2], 2));
        assert!(matches!(poly(&[4, 1], 2).sqrt(), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt_matches_binomial_series() {
        // oracle: coefficient j of (1+t)^(1/2) is prod_{i<j} (1/2 - i) / j!
        let order = 20;
        let root = poly(&[1, -4], order).sqrt().unwrap();
        let mut c = rat(1, 1);
        for j in 0..=order {
            let expected = &c * BigRational::from_integer(BigInt::from(-4).pow(j as u32));
            assert_eq!(root.coeff(j), Some(&expected), "coefficient {j}");
            c = c * (rat(1, 2) - rat(j as i64, 1)) / rat(j as i64 + 1, 1);
        }
    }

    #[test]
    fn compose_examples() {
        let f = poly(&[2, -1, 3, 5], 3);
        assert_eq!(f.compose(&TruncatedSeries::x(3)).unwrap(), f);
        let geom = poly(&[1, -1], 6).inverse().unwrap();
        assert_eq!(
            geom.compose(&poly(&[0, 2], 6)).unwrap(),
            poly(&[1, 2, 4, 8, 16, 32, 64], 6)
        );
        assert!(matches!(
            f.compose(&poly(&[1, 1], 3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn shift_down_rejects_nonzero_prefix() {
        assert!(poly(&[0, 0, 3], 4).shift_down(2).is_ok());
        assert!(poly(&[0, 1, 3], 4).shift_down(2).is_err());
        assert!(poly(&[0], 0).shift_down(1).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(catalan_series_fixed_point(0), TruncatedSeries::one(0));
        assert_eq!(catalan_series_fixed_point(4), poly(&[1, 1, 2, 5, 14], 4));
    }

    #[test]
    fn fixed_point_residual_zero() {
        let n = 64;
        let w = catalan_series_fixed_point(n);
        let rhs = &TruncatedSeries::one(n) + &(&w * &w).shift_up(1);
        assert!(SeriesResidual::between(&w, &rhs).is_zero());
    }

    #[test]
    fn sqrt_formula_examples() {
        assert_eq!(
            catalan_series_sqrt_formula(0).unwrap(),
            TruncatedSeries::one(0)
        );
        assert_eq!(
            catalan_series_sqrt_formula(4).unwrap(),
            poly(&[1, 1, 2, 5, 14], 4)
        );
    }

    #[test]
    fn negative_binomial_examples() {
        assert_eq!(negative_binomial_expansion(0, 3), poly(&[1, 2, 4, 8], 3));
        // binom(3, 2) * 2 = 6, binom(4, 2) * 4 = 24
        assert_eq!(negative_binomial_expansion(1, 2), poly(&[1, 6, 24], 2));
    }

    #[test]
    fn negative_binomial_matches_repeated_products() {
        let order = 64;
        let inv = poly(&[1, -2], order).inverse().unwrap();
        let mut oracle = inv.clone();
        for k in 0..=5 {
            assert_eq!(negative_binomial_expansion(k, order), oracle, "k = {k}");
            oracle = &(&oracle * &inv) * &inv;
        }
    }

    #[test]
    fn touchard_derivation_small() {
        assert!(verify_touchard_derivation(0, 0).unwrap().is_zero());
        assert!(verify_touchard_derivation(10, 5).unwrap().is_zero());
        assert!(matches!(
            verify_touchard_derivation(10, 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn residual_reports_first_failure() {
        let a = poly(&[1, 2, 3], 2);
        let b = poly(&[1, 2, 7], 2);
        let r = SeriesResidual::between(&a, &b);
        assert_eq!(r.first_failing_index, Some(2));
        assert_eq!(r.max_abs_deviation, rat(4, 1));
        assert!(SeriesResidual::between(&a, &a).is_zero());
    }

    #[test]
    fn chain_replays_cleanly() {
        for step in replay_touchard_chain(24).unwrap() {
            assert!(step.residual.is_zero(), "{} failed", step.name);
        }
    }

    #[test]
    fn display() {
        assert_eq!(
            poly(&[1, -2, 0, 3], 3).to_string(),
            "1 - 2*x + 3*x^3 + O(x^4)"
        );
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(x^2)");
    }
}
