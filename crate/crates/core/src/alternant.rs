//! Difference products, Vandermonde and power alternant matrices, and the
//! exact determinant oracle every identity is checked against.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::symmetric::{h_closed_form, h_recurrence, power_table, Nodes};

/// Dense square matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Matrix("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Matrix(format!(
                "{n}x{n} matrix needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(ExactMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Matrix(
                "rows must all have length equal to the row count".into(),
            ));
        }
        ExactMatrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n)
    }

    pub fn scale_row(&mut self, row: usize, c: &Rational) {
        let n = self.n;
        for x in &mut self.entries[row * n..(row + 1) * n] {
            *x *= c;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for col in 0..self.n {
            self.entries.swap(a * self.n + col, b * self.n + col);
        }
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: usize,
            entries: Vec<Rational>,
        }
        let raw = Raw::deserialize(d)?;
        ExactMatrix::new(raw.n, raw.entries).map_err(serde::de::Error::custom)
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first multiplied by the lcm of its denominators so the
/// elimination runs over integers; the product of those multipliers and the
/// row-swap parity are divided back out at the end.
pub fn det_oracle(m: &ExactMatrix) -> Rational {
    let n = m.n();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            scale *= &lcm;
            ints
        })
        .collect();

    match bareiss_in_place(&mut a) {
        None => Rational::zero(),
        Some(negate) => {
            let det = a[n - 1][n - 1].clone();
            let det = if negate { -det } else { det };
            Rational::new(det, scale).expect("row multipliers are positive")
        }
    }
}

/// Runs Bareiss elimination on an integer matrix. Returns `None` if the
/// matrix is singular, otherwise whether the row swaps flipped the sign; the
/// determinant (up to that sign) is left in the bottom-right entry.
fn bareiss_in_place(a: &mut [Vec<BigInt>]) -> Option<bool> {
    let n = a.len();
    let mut negate = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, swap);
            negate = !negate;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let num = &pivot_row[k] * &row[j] - &row[k] * &pivot_row[j];
                row[j] = num / &prev_pivot;
            }
            row[k] = BigInt::zero();
        }
        prev_pivot = pivot_row[k].clone();
    }
    Some(negate)
}

/// Determinant by plain Gaussian elimination over the rationals. Slower than
/// [`det_oracle`]; kept as an independent cross-check.
pub fn det_gaussian(m: &ExactMatrix) -> Rational {
    let n = m.n();
    let mut a: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &pivot;
            for j in k + 1..n {
                let delta = &factor * &pivot_row[j];
                row[j] -= &delta;
            }
            row[k] = Rational::zero();
        }
    }
    det
}

/// Rows `(1, x_i, x_i^2, ..., x_i^{n-1})`.
pub fn vandermonde_matrix(xs: &Nodes) -> ExactMatrix {
    let n = xs.len();
    let entries = xs.iter().flat_map(|x| power_table(x, n - 1)).collect();
    ExactMatrix::new(n, entries).expect("n x n by construction")
}

/// `prod_{i<j} (x_j - x_i)`; one for a single node.
pub fn difference_product(xs: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for j in 0..xs.len() {
        for i in 0..j {
            acc *= &(&xs[j] - &xs[i]);
        }
    }
    acc
}

/// Difference product of the nodes with position `k` (one-based) removed,
/// the others keeping their order.
pub fn difference_product_omit(xs: &Nodes, k: usize) -> Result<Rational> {
    if k == 0 || k > xs.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: xs.len(),
        });
    }
    let rest: Vec<Rational> = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != k)
        .map(|(_, x)| x.clone())
        .collect();
    Ok(difference_product(&rest))
}

fn require_at_least_two(op: &'static str, xs: &Nodes) -> Result<()> {
    if xs.len() < 2 {
        return Err(Error::Arity {
            op,
            expected: "at least 2",
            got: xs.len(),
        });
    }
    Ok(())
}

fn exponent(e: usize) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))
}

/// Rows `(1, x_i, ..., x_i^{n-2}, x_i^{n+m-1})`.
pub fn alternant_matrix(m: usize, xs: &Nodes) -> Result<ExactMatrix> {
    require_at_least_two("alternant_matrix", xs)?;
    let n = xs.len();
    let top = exponent(n + m - 1)?;
    let entries = xs
        .iter()
        .flat_map(|x| {
            let mut row = power_table(x, n - 2);
            row.push(x.pow(top));
            row
        })
        .collect();
    ExactMatrix::new(n, entries)
}

/// `sum_k (-1)^{n-k} x_k^{n+m-1} d(x_1..x_{k-1}, x_{k+1}..x_n)`, the cofactor
/// expansion of the alternant along its last column.
pub fn alternant_cofactor_sum(m: usize, xs: &Nodes) -> Result<Rational> {
    require_at_least_two("alternant_cofactor_sum", xs)?;
    let n = xs.len();
    let top = exponent(n + m - 1)?;
    let mut total = Rational::zero();
    for k in 1..=n {
        let term = xs[k - 1].pow(top) * difference_product_omit(xs, k)?;
        if (n - k) % 2 == 0 {
            total += term;
        } else {
            total -= &term;
        }
    }
    Ok(total)
}

/// Which evaluator supplies h_m on the right-hand side of the alternant
/// identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HLeg {
    /// Tolerates repeated nodes.
    #[default]
    Recurrence,
    /// Fails with [`Error::DuplicateNode`] on repeats.
    ClosedForm,
}

/// Both sides of `det(A) = d(xs) h_m(xs)`.
pub fn det_identity_sides(m: usize, xs: &Nodes, leg: HLeg) -> Result<(Rational, Rational)> {
    let lhs = det_oracle(&alternant_matrix(m, xs)?);
    let h = match leg {
        HLeg::Recurrence => h_recurrence(m, xs),
        HLeg::ClosedForm => h_closed_form(m, xs)?,
    };
    Ok((lhs, difference_product(xs) * h))
}

pub fn det_identity_check(m: usize, xs: &Nodes, leg: HLeg) -> Result<bool> {
    let (lhs, rhs) = det_identity_sides(m, xs, leg)?;
    Ok(lhs == rhs)
}
