//! Dominant singularities of generating functions defined by a curve
//! `F(z, w) = a(z) w^2 + b(z) w + c(z) = 0`.
//!
//! The implicit function theorem gives an analytic branch wherever
//! `dF/dw = 2 a(z) w + b(z)` is nonzero. Together with `F = 0` that partial
//! vanishes exactly where the discriminant `b^2 - 4ac` does, so candidate
//! singularities are discriminant roots. Rational roots are found exactly;
//! irrational real roots are only isolated between rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest `|coefficient|` at the ends of an integerized polynomial for which
/// divisor enumeration is attempted.
pub const MAX_DIVISOR_SEARCH: u64 = 1_000_000_000_000;

/// Polynomial in `z` with exact rational coefficients, constant term first.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialInZ {
    coeffs: Vec<BigRational>,
}

impl PolynomialInZ {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolynomialInZ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        PolynomialInZ { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigRational::from_integer(j.into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|j| self.coeffs.get(j).unwrap_or(&zero) + other.coeffs.get(j).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree().filter(|&d| d >= d_deg) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); n_deg - d_deg + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d_deg] / lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(d_deg);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Integer coefficients with content 1 and the same roots.
    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }
}

impl fmt::Display for PolynomialInZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, sign) {
                (true, "-") => f.write_str("-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            first = false;
            let abs = c.abs();
            match j {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => f.write_str("z")?,
                1 => write!(f, "{abs}*z")?,
                _ if abs.is_one() => write!(f, "z^{j}")?,
                _ => write!(f, "{abs}*z^{j}")?,
            }
        }
        Ok(())
    }
}

/// `F(z, w) = a(z) w^2 + b(z) w + c(z)` with `a` not identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitQuadratic {
    a: PolynomialInZ,
    b: PolynomialInZ,
    c: PolynomialInZ,
}

impl ImplicitQuadratic {
    pub fn new(a: PolynomialInZ, b: PolynomialInZ, c: PolynomialInZ) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Domain(
                "a(z) is the zero polynomial; curve is not quadratic in w".into(),
            ));
        }
        Ok(ImplicitQuadratic { a, b, c })
    }

    /// `w - 1 - z w^2`, satisfied by the Catalan generating function.
    pub fn catalan() -> Self {
        ImplicitQuadratic {
            a: PolynomialInZ::from_ints(&[0, -1]),
            b: PolynomialInZ::from_ints(&[1]),
            c: PolynomialInZ::from_ints(&[-1]),
        }
    }

    pub fn a(&self) -> &PolynomialInZ {
        &self.a
    }

    pub fn b(&self) -> &PolynomialInZ {
        &self.b
    }

    pub fn c(&self) -> &PolynomialInZ {
        &self.c
    }

    pub fn evaluate(&self, z: &BigRational, w: &BigRational) -> BigRational {
        self.a.eval(z) * w * w + self.b.eval(z) * w + self.c.eval(z)
    }

    /// `dF/dw = 2 a(z) w + b(z)`.
    pub fn partial_w(&self, z: &BigRational, w: &BigRational) -> BigRational {
        BigRational::from_integer(2.into()) * self.a.eval(z) * w + self.b.eval(z)
    }

    /// Whether the implicit function theorem applies at an on-curve point.
    pub fn regular_point_check(&self, z0: &BigRational, w0: &BigRational) -> Result<bool> {
        let value = self.evaluate(z0, w0);
        if !value.is_zero() {
            return Err(Error::Precondition(format!(
                "({z0}, {w0}) is not on the curve: F = {value}"
            )));
        }
        Ok(!self.partial_w(z0, w0).is_zero())
    }

    /// `b(z)^2 - 4 a(z) c(z)`.
    pub fn discriminant(&self) -> PolynomialInZ {
        let four = BigRational::from_integer(4.into());
        self.b.mul(&self.b).sub(&self.a.mul(&self.c).scale(&four))
    }
}

/// Point where both `F` and `dF/dw` vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub z_star: BigRational,
    pub w_star: BigRational,
}

/// Result of a singularity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularityOutcome {
    /// Smallest-modulus rational discriminant root with its `w`.
    Located {
        point: SingularPoint,
        /// Isolating intervals of any irrational real discriminant roots.
        irrational_roots: Vec<(BigRational, BigRational)>,
    },
    /// The discriminant has no rational root.
    NoRationalSingularity {
        irrational_roots: Vec<(BigRational, BigRational)>,
    },
}

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= MAX_DIVISOR_SEARCH)
        .ok_or_else(|| {
            Error::Domain(format!(
                "coefficient {n} too large for rational root search (limit {MAX_DIVISOR_SEARCH})"
            ))
        })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Orders by modulus, positive before negative on ties.
fn modulus_order(x: &BigRational, y: &BigRational) -> Ordering {
    x.abs()
        .cmp(&y.abs())
        .then_with(|| y.is_positive().cmp(&x.is_positive()))
}

/// All distinct rational roots, sorted by modulus (positive first on ties).
pub fn rational_roots(p: &PolynomialInZ) -> Result<Vec<BigRational>> {
    if p.is_zero() {
        return Err(Error::Domain(
            "the zero polynomial has every value as a root".into(),
        ));
    }
    let ints = p.primitive_integer_coeffs();
    let low = ints
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let trailing = &ints[low];
    let leading = ints.last().expect("nonzero polynomial");
    if ints.len() - low > 1 {
        let ps = divisors(trailing)?;
        let qs = divisors(leading)?;
        for &num in &ps {
            for &den in &qs {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                    if p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort_by(modulus_order);
    roots.dedup();
    Ok(roots)
}

fn sign_variations(chain: &[PolynomialInZ], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolating intervals `(lo, hi]`, of width at most `1/1024`, for the real
/// roots of `p` that are not rational.
pub fn irrational_real_roots(p: &PolynomialInZ) -> Result<Vec<(BigRational, BigRational)>> {
    if p.is_zero() {
        return Err(Error::Domain(
            "the zero polynomial has every value as a root".into(),
        ));
    }
    // square-free part with the rational roots divided out
    let mut q = p.div_rem(&p.gcd(&p.derivative())).0;
    for r in rational_roots(&q)? {
        let linear = PolynomialInZ::new(vec![-r, BigRational::one()]);
        q = q.div_rem(&linear).0;
    }
    if q.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }

    let mut chain = vec![q.clone(), q.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-BigRational::one()));
    }

    let lead = q.leading().expect("nonconstant").abs();
    let bound = q
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .expect("nonconstant")
        + BigRational::one();

    let two = BigRational::from_integer(2.into());
    let width = BigRational::new(BigInt::one(), BigInt::from(1024));
    let mut pending = vec![(-bound.clone(), bound)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        let count = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
        match count {
            0 => {}
            1 => {
                let (mut lo, mut hi) = (lo, hi);
                while &hi - &lo > width {
                    let mid = (&lo + &hi) / &two;
                    if q.eval(&lo).is_positive() == q.eval(&mid).is_positive() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                found.push((lo, hi));
            }
            _ => {
                let mid = (&lo + &hi) / &two;
                pending.push((mid.clone(), hi));
                pending.push((lo, mid));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(found)
}

/// Locates the smallest-modulus rational zero `z*` of the discriminant and the
/// double root `w* = -b(z*) / (2 a(z*))` there.
pub fn locate_singularity(f: &ImplicitQuadratic) -> Result<SingularityOutcome> {
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(Error::Domain(
            "discriminant vanishes identically; F is a perfect square in w".into(),
        ));
    }
    let roots = rational_roots(&disc)?;
    let irrational_roots = irrational_real_roots(&disc)?;
    let Some(z_star) = roots.into_iter().next() else {
        return Ok(SingularityOutcome::NoRationalSingularity { irrational_roots });
    };
    let a_val = f.a.eval(&z_star);
    if a_val.is_zero() {
        return Err(Error::DegenerateLeadingCoefficient(z_star.to_string()));
    }
    let w_star = -f.b.eval(&z_star) / (BigRational::from_integer(2.into()) * a_val);
    if !f.evaluate(&z_star, &w_star).is_zero() || !f.partial_w(&z_star, &w_star).is_zero() {
        return Err(Error::Internal(format!(
            "({z_star}, {w_star}) does not satisfy F = dF/dw = 0"
        )));
    }
    Ok(SingularityOutcome::Located {
        point: SingularPoint { z_star, w_star },
        irrational_roots,
    })
}
