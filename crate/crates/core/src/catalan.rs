//! Catalan number generators.
//!
//! Four algorithms produce the same table `C_0..C_n`:
//!
//! - closed form `binom(2n, n) / (n + 1)`, evaluated independently per index
//! - the Segner convolution `C_{n+1} = sum_k C_k C_{n-k}`
//! - the Touchard recurrence `C_{n+1} = sum_k binom(n, 2k) 2^(n-2k) C_k`
//! - the product recurrence `C_{n+1} = C_n * 2(2n+1) / (n+2)`
//!
//! Only `C_0 = 1` is seeded; every other entry is derived by the generator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Largest index the generators accept.
pub const MAX_INDEX: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorMethod {
    ClosedForm,
    Segner,
    Touchard,
    ProductRecurrence,
}

impl GeneratorMethod {
    pub const ALL: [GeneratorMethod; 4] = [
        GeneratorMethod::ClosedForm,
        GeneratorMethod::Segner,
        GeneratorMethod::Touchard,
        GeneratorMethod::ProductRecurrence,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            GeneratorMethod::ClosedForm => "closed",
            GeneratorMethod::Segner => "segner",
            GeneratorMethod::Touchard => "touchard",
            GeneratorMethod::ProductRecurrence => "product",
        }
    }

    /// Rough description of the big-integer work needed for a table of size `n`.
    pub fn cost_class(self) -> &'static str {
        match self {
            GeneratorMethod::ClosedForm => {
                "quadratic number of big-int by word multiplications and divisions"
            }
            GeneratorMethod::Segner => "quadratic number of big-int multiplications",
            GeneratorMethod::Touchard => {
                "quadratic number of big-int additions (Pascal rows) plus n^2/4 big-int multiplications"
            }
            GeneratorMethod::ProductRecurrence => {
                "linear number of big-int by word multiplications and divisions"
            }
        }
    }

    pub fn generate(self, n_max: u64) -> Result<CatalanTable> {
        match self {
            GeneratorMethod::ClosedForm => catalan_closed_form_table(n_max),
            GeneratorMethod::Segner => catalan_segner(n_max),
            GeneratorMethod::Touchard => catalan_touchard(n_max),
            GeneratorMethod::ProductRecurrence => catalan_product_recurrence(n_max),
        }
    }
}

impl fmt::Display for GeneratorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown generator method `{s}`")))
    }
}

/// An immutable prefix `C_0..C_max_index` of the Catalan sequence, tagged with
/// the generator that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanTable {
    values: Vec<BigUint>,
    method: GeneratorMethod,
}

impl CatalanTable {
    fn new(method: GeneratorMethod, values: Vec<BigUint>) -> Self {
        debug_assert!(values.first().is_some_and(One::is_one));
        debug_assert!(values.iter().all(|v| !v.is_zero()));
        CatalanTable { values, method }
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigUint> {
        self.values
    }

    pub fn method(&self) -> GeneratorMethod {
        self.method
    }

    pub fn max_index(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Never true: a table always holds at least `C_0`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: u64) -> Option<&BigUint> {
        self.values.get(usize::try_from(n).ok()?)
    }
}

fn check_capacity(n_max: u64) -> Result<usize> {
    if n_max > MAX_INDEX {
        return Err(Error::Capacity {
            requested: n_max,
            limit: MAX_INDEX,
        });
    }
    Ok(n_max as usize)
}

/// `binom(n, k)` by the multiplicative formula; every intermediate division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan_closed_form(n: u64) -> BigUint {
    let (q, r) = binomial(2 * n, n).div_rem(&BigUint::from(n + 1));
    debug_assert!(r.is_zero(), "binom(2n, n) not divisible by n + 1");
    q
}

/// Table built by evaluating the closed form independently at every index.
pub fn catalan_closed_form_table(n_max: u64) -> Result<CatalanTable> {
    let len = check_capacity(n_max)? + 1;
    let values = (0..len as u64).map(catalan_closed_form).collect();
    Ok(CatalanTable::new(GeneratorMethod::ClosedForm, values))
}

/// Table built from the Segner convolution.
pub fn catalan_segner(n_max: u64) -> Result<CatalanTable> {
    let n_max = check_capacity(n_max)?;
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    values.push(BigUint::one());
    for n in 0..n_max {
        let next = (0..=n).fold(BigUint::zero(), |acc, k| acc + &values[k] * &values[n - k]);
        values.push(next);
    }
    Ok(CatalanTable::new(GeneratorMethod::Segner, values))
}

/// The summands `C_k * C_{n-k}`, `k = 0..=n`, of the Segner convolution for `C_{n+1}`.
///
/// Panics if `values` does not reach index `n`.
pub fn segner_summands(values: &[BigUint], n: usize) -> Vec<BigUint> {
    (0..=n).map(|k| &values[k] * &values[n - k]).collect()
}

/// Table built from the Touchard recurrence.
///
/// One Pascal row is carried along and extended by one step per index, so the
/// binomials `binom(n, 2k)` are shared across the inner sum.
pub fn catalan_touchard(n_max: u64) -> Result<CatalanTable> {
    let n_max = check_capacity(n_max)?;
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    values.push(BigUint::one());
    let mut row = vec![BigUint::one()];
    for n in 0..n_max {
        let mut next = BigUint::zero();
        for k in 0..=n / 2 {
            next += (&row[2 * k] * &values[k]) << (n - 2 * k);
        }
        values.push(next);
        row = next_pascal_row(&row);
    }
    Ok(CatalanTable::new(GeneratorMethod::Touchard, values))
}

fn next_pascal_row(row: &[BigUint]) -> Vec<BigUint> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(BigUint::one());
    next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
    next.push(BigUint::one());
    next
}

/// Table built from `C_{n+1} = C_n * 2(2n+1) / (n+2)`.
pub fn catalan_product_recurrence(n_max: u64) -> Result<CatalanTable> {
    let n_max = check_capacity(n_max)?;
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    values.push(BigUint::one());
    for n in 0..n_max as u64 {
        let numer = &values[n as usize] * (2 * (2 * n + 1));
        let (q, r) = numer.div_rem(&BigUint::from(n + 2));
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "product recurrence left remainder {r} at n = {n}"
            )));
        }
        values.push(q);
    }
    Ok(CatalanTable::new(
        GeneratorMethod::ProductRecurrence,
        values,
    ))
}

/// `sum_{k=0}^{floor(n/2)} binom(n, 2k)`, which equals `2^(n-1)` for `n >= 1`.
///
/// Rejects `n = 0`: the sum is 1 there while `2^(n-1)` would be 1/2.
pub fn even_binomial_sum(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain(
            "even binomial sum identity requires n >= 1 (at n = 0 the sum is 1, not 1/2)".into(),
        ));
    }
    let mut sum = BigUint::zero();
    let mut b = BigUint::one();
    for j in 0..=n {
        if j % 2 == 0 {
            sum += &b;
        }
        b = b * (n - j) / (j + 1);
    }
    Ok(sum)
}

/// Outcome of running all generators to the same index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub n_max: u64,
    pub methods: Vec<GeneratorMethod>,
    /// `agreement[n]` is true when every generator produced the same `C_n`.
    pub agreement: Vec<bool>,
    pub first_disagreement: Option<u64>,
}

impl ValidationReport {
    pub fn all_agree(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Compares a set of tables index by index.
pub fn compare_tables(tables: &[CatalanTable]) -> ValidationReport {
    let len = tables.iter().map(CatalanTable::len).min().unwrap_or(0);
    let agreement: Vec<bool> = (0..len)
        .map(|n| {
            let first = &tables[0].values[n];
            tables[1..].iter().all(|t| &t.values[n] == first)
        })
        .collect();
    let first_disagreement = agreement.iter().position(|ok| !ok).map(|n| n as u64);
    ValidationReport {
        n_max: len.saturating_sub(1) as u64,
        methods: tables.iter().map(CatalanTable::method).collect(),
        agreement,
        first_disagreement,
    }
}

/// Runs all four generators to `n_max` and reports exact element-wise agreement.
pub fn cross_validate(n_max: u64) -> Result<ValidationReport> {
    let tables = GeneratorMethod::ALL
        .into_iter()
        .map(|m| m.generate(n_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(compare_tables(&tables))
}
