//! Complete homogeneous symmetric polynomials h_d(x_1, ..., x_n).
//!
//! Three evaluators are provided and are expected to agree exactly:
//!
//! * [`h_naive`] enumerates every exponent vector of total degree `d`;
//! * [`h_recurrence`] runs the suffix grouping recurrence
//!   `h_s(x_j..x_n) = sum_{k>=j} x_k h_{s-1}(x_k..x_n)` bottom up;
//! * [`h_closed_form`] evaluates the divided-difference sum
//!   `sum_i x_i^{n+m-1} / prod_{j != i} (x_i - x_j)`, which needs distinct nodes.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Default cap on the number of monomials [`h_naive`] will enumerate.
pub const DEFAULT_NAIVE_CAP: u128 = 1 << 20;

/// Ordered, non-empty tuple of sample values.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Nodes(Vec<Rational>);

impl Nodes {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Arity {
                op: "nodes",
                expected: "at least 1",
                got: 0,
            });
        }
        Ok(Nodes(values))
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Nodes::new(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    /// First coinciding pair `(i, j)` with `i < j`, if any.
    pub fn first_duplicate(&self) -> Option<(usize, usize)> {
        let xs = &self.0;
        (0..xs.len())
            .flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j)))
            .find(|&(i, j)| xs[i] == xs[j])
    }

    pub fn is_distinct(&self) -> bool {
        self.first_duplicate().is_none()
    }

    pub fn require_distinct(&self) -> Result<()> {
        match self.first_duplicate() {
            None => Ok(()),
            Some((first, second)) => Err(Error::DuplicateNode {
                first,
                second,
                value: self.0[first].to_string(),
            }),
        }
    }

    /// The suffix `x_start..x_n` (zero-based start).
    pub fn suffix(&self, start: usize) -> Nodes {
        Nodes(self.0[start..].to_vec())
    }

    pub fn scaled(&self, c: &Rational) -> Nodes {
        Nodes(self.0.iter().map(|x| x * c).collect())
    }
}

impl Deref for Nodes {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Debug for Nodes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl<'de> Deserialize<'de> for Nodes {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<Rational>::deserialize(d)?;
        Nodes::new(values).map_err(serde::de::Error::custom)
    }
}

impl FromStr for Nodes {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Nodes::new(crate::scalar::parse_list(s)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Naive,
    Recurrence,
    ClosedForm,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Naive, Strategy::Recurrence, Strategy::ClosedForm];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::Recurrence => "recurrence",
            Strategy::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "recurrence" => Ok(Strategy::Recurrence),
            "closed" | "closed_form" => Ok(Strategy::ClosedForm),
            other => Err(Error::InvalidArgument(format!(
                "unknown strategy {other:?} (expected naive, recurrence or closed_form)"
            ))),
        }
    }
}

/// A request to evaluate h_d at some nodes with a chosen strategy.
#[derive(Clone, Debug)]
pub struct HRequest {
    pub degree: usize,
    pub nodes: Nodes,
    pub strategy: Strategy,
    pub naive_cap: u128,
}

impl HRequest {
    pub fn new(degree: usize, nodes: Nodes, strategy: Strategy) -> Self {
        HRequest {
            degree,
            nodes,
            strategy,
            naive_cap: DEFAULT_NAIVE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.naive_cap = cap;
        self
    }

    pub fn evaluate(&self) -> Result<Rational> {
        match self.strategy {
            Strategy::Naive => h_naive_capped(self.degree, &self.nodes, self.naive_cap),
            Strategy::Recurrence => Ok(h_recurrence(self.degree, &self.nodes)),
            Strategy::ClosedForm => h_closed_form(self.degree, &self.nodes),
        }
    }
}

/// Number of monomials of degree `d` in `n` variables, C(d+n-1, n-1).
/// Saturates at `u128::MAX`.
pub fn monomial_count(d: usize, n: usize) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    // C(d+k, k) built up as prod_{i=1..k} (d+i)/i; every prefix is itself a
    // binomial coefficient, so the division is exact.
    let k = (n - 1).min(d) as u128;
    let top = (d + n - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        let factor = top - k + i;
        acc = match acc.checked_mul(factor) {
            Some(v) => v / i,
            None => {
                let g = gcd(acc, i);
                match (acc / g).checked_mul(factor / (i / g)) {
                    Some(v) => v,
                    None => return u128::MAX,
                }
            }
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// x^0, x^1, ..., x^max.
pub(crate) fn power_table(x: &Rational, max: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(max + 1);
    let mut acc = Rational::one();
    for _ in 0..max {
        let next = &acc * x;
        table.push(acc);
        acc = next;
    }
    table.push(acc);
    table
}

/// h_d by enumerating all exponent vectors, refusing more than
/// [`DEFAULT_NAIVE_CAP`] monomials.
pub fn h_naive(d: usize, xs: &Nodes) -> Result<Rational> {
    h_naive_capped(d, xs, DEFAULT_NAIVE_CAP)
}

pub fn h_naive_capped(d: usize, xs: &Nodes, cap: u128) -> Result<Rational> {
    let n = xs.len();
    let count = monomial_count(d, n);
    if count > cap {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    // Every monomial is summed exactly over the common denominator L^d.
    let (lcm, scaled) = common_denominator(xs);
    let powers: Vec<Vec<BigInt>> = scaled
        .iter()
        .map(|a| {
            let mut table = Vec::with_capacity(d + 1);
            table.push(BigInt::one());
            for k in 0..d {
                let next = &table[k] * a;
                table.push(next);
            }
            table
        })
        .collect();

    // Exponent vectors in colexicographic order, starting from (d, 0, ..., 0).
    let mut exps = vec![0usize; n];
    exps[0] = d;
    let mut total = BigInt::zero();
    loop {
        let mut term = BigInt::one();
        for (&e, table) in exps.iter().zip(&powers) {
            if e > 0 {
                term *= &table[e];
            }
        }
        total += term;

        let Some(first) = exps.iter().position(|&e| e > 0) else {
            break; // d == 0: the single empty monomial
        };
        if first == n - 1 {
            break;
        }
        let v = exps[first];
        exps[first] = 0;
        exps[0] = v - 1;
        exps[first + 1] += 1;
    }
    let scale = num_traits::pow(lcm, d);
    Ok(Rational::new(total, scale).expect("lcm of positive denominators"))
}

/// L = lcm of the node denominators and the integers a_i = L x_i.
fn common_denominator(xs: &Nodes) -> (BigInt, Vec<BigInt>) {
    let lcm = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = xs.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    (lcm, scaled)
}

/// h_0, h_1, ..., h_max at `xs`, from the suffix grouping recurrence.
///
/// `row[j]` holds h_s(x_j..x_n) at level s; each level costs O(n^2)
/// multiplications. Values at level s are kept as integer numerators over the
/// shared denominator L^s. Repeated nodes are fine.
pub fn h_recurrence_upto(max: usize, xs: &Nodes) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    recurrence_levels(max, xs, |_, value| out.push(value()));
    out
}

/// h_d via the grouping recurrence.
pub fn h_recurrence(d: usize, xs: &Nodes) -> Rational {
    let mut last = None;
    recurrence_levels(d, xs, |s, value| {
        if s == d {
            last = Some(value());
        }
    });
    last.expect("level d is always visited")
}

/// Runs the recurrence up to level `max`, handing each level's h_s(xs) to
/// `visit` lazily so unused levels are never reduced.
fn recurrence_levels(max: usize, xs: &Nodes, mut visit: impl FnMut(usize, &dyn Fn() -> Rational)) {
    let n = xs.len();
    let (lcm, a) = common_denominator(xs);
    let mut prev = vec![BigInt::one(); n];
    let mut denom = BigInt::one();
    visit(0, &Rational::one);
    for s in 1..=max {
        let row: Vec<BigInt> = (0..n)
            .map(|j| (j..n).fold(BigInt::zero(), |acc, k| acc + &a[k] * &prev[k]))
            .collect();
        denom *= &lcm;
        visit(s, &|| {
            Rational::new(row[0].clone(), denom.clone()).expect("positive denominator")
        });
        prev = row;
    }
}

/// `sum_i x_i^k / prod_{j != i} (x_i - x_j)` over distinct nodes.
///
/// Zero for `k <= n - 2`; equals h_{k-n+1} for larger `k`.
pub fn vanishing_sum(k: usize, xs: &Nodes) -> Result<Rational> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::Arity {
            op: "vanishing_sum",
            expected: "at least 2",
            got: n,
        });
    }
    xs.require_distinct()?;
    let exp =
        u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("exponent {k} too large")))?;
    let mut total = Rational::zero();
    for (i, xi) in xs.iter().enumerate() {
        let denom: Rational = xs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, xj)| xi - xj)
            .product();
        total += xi.pow(exp) / denom;
    }
    Ok(total)
}

/// h_m from the divided-difference closed form. Needs `n >= 2` distinct nodes.
pub fn h_closed_form(m: usize, xs: &Nodes) -> Result<Rational> {
    if xs.len() < 2 {
        return Err(Error::Arity {
            op: "h_closed_form",
            expected: "at least 2",
            got: xs.len(),
        });
    }
    vanishing_sum(xs.len() + m - 1, xs)
}

/// Right-hand side of the three-variable step
/// `h_m = (x1 + x2) h_{m-1} - x1 x2 h_{m-2} + x3^m`, with the lower-degree
/// terms taken from [`h_recurrence`].
pub fn h_three_variable_step(m: usize, xs: &Nodes) -> Result<Rational> {
    if xs.len() != 3 {
        return Err(Error::Arity {
            op: "h_three_variable_step",
            expected: "exactly 3",
            got: xs.len(),
        });
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "three-variable step needs m >= 2, got {m}"
        )));
    }
    let (x1, x2, x3) = (&xs[0], &xs[1], &xs[2]);
    let lower = h_recurrence_upto(m - 1, xs);
    let exp =
        u32::try_from(m).map_err(|_| Error::InvalidArgument(format!("degree {m} too large")))?;
    Ok((x1 + x2) * &lower[m - 1] - x1 * x2 * &lower[m - 2] + x3.pow(exp))
}

/// `sum_j x_j h_{s-1}(x_j..x_n)` for `s >= 1`; equals h_s(xs).
pub fn grouped_sum(s: usize, xs: &Nodes) -> Result<Rational> {
    if s == 0 {
        return Err(Error::InvalidArgument("grouped sum needs s >= 1".into()));
    }
    Ok((0..xs.len())
        .map(|j| &xs[j] * h_recurrence(s - 1, &xs.suffix(j)))
        .sum())
}

/// Both sides of the three-variable factorization
/// `(x3-x2) x1^{m+1} + (x1-x3) x2^{m+1} + (x2-x1) x3^{m+1}
///   = (x3-x2)(x3-x1)(x2-x1) h_{m-1}(x1, x2, x3)`, for `m >= 1`.
pub fn three_variable_sides(m: usize, xs: &Nodes) -> Result<(Rational, Rational)> {
    if xs.len() != 3 {
        return Err(Error::Arity {
            op: "three_variable_sides",
            expected: "exactly 3",
            got: xs.len(),
        });
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "three-variable factorization needs m >= 1".into(),
        ));
    }
    let (x1, x2, x3) = (&xs[0], &xs[1], &xs[2]);
    let e = u32::try_from(m + 1)
        .map_err(|_| Error::InvalidArgument(format!("degree {m} too large")))?;
    let lhs = (x3 - x2) * x1.pow(e) + (x1 - x3) * x2.pow(e) + (x2 - x1) * x3.pow(e);
    let rhs = (x3 - x2) * (x3 - x1) * (x2 - x1) * h_recurrence(m - 1, xs);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(v: &[i64]) -> Nodes {
        Nodes::from_ints(v).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn naive_examples() {
        assert_eq!(h_naive(0, &nodes(&[7, -2, 9])).unwrap(), q("1"));
        assert_eq!(h_naive(1, &nodes(&[1, 2, 3])).unwrap(), q("6"));
        assert_eq!(h_naive(2, &nodes(&[1, 2])).unwrap(), q("7"));
        assert_eq!(h_naive(3, &nodes(&[2])).unwrap(), q("8"));
    }

    #[test]
    fn naive_cap_is_enforced() {
        let xs = nodes(&[1, 2, 3, 4]);
        // C(67, 3) = 47905
        assert_eq!(monomial_count(64, 4), 47905);
        let err = h_naive_capped(64, &xs, 47904).unwrap_err();
        assert_eq!(
            err,
            Error::EnumerationTooLarge {
                count: 47905,
                cap: 47904
            }
        );
        assert!(h_naive_capped(64, &xs, 47905).is_ok());
        assert!(matches!(
            h_naive(200, &nodes(&[1, 2, 3, 4, 5, 6])),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn monomial_count_values() {
        assert_eq!(monomial_count(0, 1), 1);
        assert_eq!(monomial_count(5, 1), 1);
        assert_eq!(monomial_count(5, 2), 6);
        assert_eq!(monomial_count(3, 3), 10);
        assert_eq!(monomial_count(0, 0), 1);
        assert_eq!(monomial_count(3, 0), 0);
        assert_eq!(monomial_count(10_000, 10_000), u128::MAX);
        // brute force over small ranges
        for n in 1..6 {
            for d in 0..8 {
                let mut count = 0u128;
                let mut stack = vec![(0usize, d)];
                while let Some((var, left)) = stack.pop() {
                    if var == n - 1 {
                        count += 1;
                        continue;
                    }
                    for e in 0..=left {
                        stack.push((var + 1, left - e));
                    }
                }
                assert_eq!(monomial_count(d, n), count, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(h_recurrence(2, &nodes(&[1, 2])), q("7"));
        assert_eq!(h_recurrence(3, &nodes(&[2])), q("8"));
        assert_eq!(h_recurrence(5, &nodes(&[1, 1])), q("6"));
        assert_eq!(h_recurrence(0, &nodes(&[4, 4, 4])), q("1"));
        assert_eq!(h_recurrence(3, &nodes(&[1, 1, 1])), q("10"));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(h_closed_form(1, &nodes(&[1, 2])).unwrap(), q("3"));
        assert_eq!(h_closed_form(2, &nodes(&[1, 2, 3])).unwrap(), q("25"));
        assert_eq!(h_closed_form(0, &nodes(&[1, 2, 3])).unwrap(), q("1"));
    }

    #[test]
    fn closed_form_rejects_repeats_and_single_node() {
        let err = h_closed_form(2, &nodes(&[1, 2, 1])).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateNode {
                first: 0,
                second: 2,
                value: "1".into()
            }
        );
        assert!(matches!(
            h_closed_form(2, &nodes(&[5])),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn three_variable_step_examples() {
        assert_eq!(
            h_three_variable_step(2, &nodes(&[1, 2, 3])).unwrap(),
            q("25")
        );
        assert_eq!(
            h_three_variable_step(2, &nodes(&[0, 0, 0])).unwrap(),
            q("0")
        );
        assert_eq!(
            h_three_variable_step(3, &nodes(&[1, 1, 1])).unwrap(),
            q("10")
        );
        assert!(matches!(
            h_three_variable_step(3, &nodes(&[1, 2])),
            Err(Error::Arity { .. })
        ));
        assert!(matches!(
            h_three_variable_step(1, &nodes(&[1, 2, 3])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn vanishing_examples() {
        assert_eq!(vanishing_sum(0, &nodes(&[1, 2])).unwrap(), q("0"));
        assert_eq!(vanishing_sum(1, &nodes(&[1, 2, 4])).unwrap(), q("0"));
        assert_eq!(vanishing_sum(2, &nodes(&[1, 2])).unwrap(), q("3"));
        assert!(matches!(
            vanishing_sum(0, &nodes(&[3, 3])),
            Err(Error::DuplicateNode { .. })
        ));
    }

    #[test]
    fn grouped_and_three_variable() {
        let xs = nodes(&[1, 2, 3]);
        assert_eq!(grouped_sum(2, &xs).unwrap(), q("25"));
        assert!(grouped_sum(0, &xs).is_err());
        let (lhs, rhs) = three_variable_sides(1, &xs).unwrap();
        // (1)(1) + (-2)(4) + (1)(9) = 2 = 1*2*1*h_0
        assert_eq!(lhs, q("2"));
        assert_eq!(rhs, q("2"));
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert_eq!("closed".parse::<Strategy>().unwrap(), Strategy::ClosedForm);
        assert!("fast".parse::<Strategy>().is_err());
    }

    #[test]
    fn nodes_validation() {
        assert!(Nodes::new(vec![]).is_err());
        assert!(serde_json::from_str::<Nodes>("[]").is_err());
        let xs: Nodes = "1/2,3,-1/2".parse().unwrap();
        assert!(xs.is_distinct());
        assert_eq!(nodes(&[1, 2, 2]).first_duplicate(), Some((1, 2)));
    }
}
