//! Triangles and simplices whose vertices lie on a polynomial curve.
//!
//! For nodes x_1..x_n and a polynomial p, the curve matrix M_n has rows
//! `(1, x_i, ..., x_i^{n-2}, p(x_i))`. Its determinant factors as
//! `d(xs) * sum_{k=n-1}^{N} a_k h_{k-n+1}(xs)` and vanishes when
//! `deg p <= n - 2`. For n = 3 this is twice the signed area of the triangle
//! on the graph of p.

use serde::{Deserialize, Serialize};

use crate::alternant::{det_oracle, difference_product, ExactMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Poly, Rational};
use crate::symmetric::{h_recurrence_upto, power_table, Nodes};

/// A polynomial together with the nodes at which its curve is sampled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveSimplexSpec {
    pub poly: Poly,
    pub nodes: Nodes,
}

impl CurveSimplexSpec {
    pub fn new(poly: Poly, nodes: Nodes) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::Arity {
                op: "curve simplex",
                expected: "at least 2",
                got: nodes.len(),
            });
        }
        Ok(CurveSimplexSpec { poly, nodes })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }
}

impl<'de> Deserialize<'de> for CurveSimplexSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            poly: Poly,
            nodes: Nodes,
        }
        let raw = Raw::deserialize(d)?;
        CurveSimplexSpec::new(raw.poly, raw.nodes).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factored {
    pub difference_product: Rational,
    pub h_sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeResult {
    /// Signed det(M_n).
    pub det: Rational,
    pub parallelepiped_volume: Rational,
    /// |det| / n!
    pub simplex_volume: Rational,
    pub factored: Factored,
}

impl VolumeResult {
    fn from_det(det: Rational, n: usize, factored: Factored) -> Self {
        let parallelepiped_volume = det.abs();
        let simplex_volume = &parallelepiped_volume / &Rational::factorial(n);
        VolumeResult {
            det,
            parallelepiped_volume,
            simplex_volume,
            factored,
        }
    }
}

fn require_three(op: &'static str, xs: &Nodes) -> Result<()> {
    if xs.len() != 3 {
        return Err(Error::Arity {
            op,
            expected: "exactly 3",
            got: xs.len(),
        });
    }
    Ok(())
}

/// `sum_{k=n-1}^{N} a_k h_{k-n+1}(xs)`; zero when `N <= n - 2` or p = 0.
pub fn h_sum(p: &Poly, xs: &Nodes) -> Rational {
    let n = xs.len();
    let Some(degree) = p.degree() else {
        return Rational::zero();
    };
    if degree + 1 < n {
        return Rational::zero();
    }
    let hs = h_recurrence_upto(degree + 1 - n, xs);
    (n - 1..=degree)
        .map(|k| &p.coeffs()[k] * &hs[k + 1 - n])
        .sum()
}

/// Signed area from the three-term expansion
/// `((x3-x2) p(x1) - (x3-x1) p(x2) + (x2-x1) p(x3)) / 2`.
pub fn signed_area_direct(p: &Poly, xs: &Nodes) -> Result<Rational> {
    require_three("signed_area_direct", xs)?;
    let (x1, x2, x3) = (&xs[0], &xs[1], &xs[2]);
    let twice = (x3 - x2) * p.eval(x1) - (x3 - x1) * p.eval(x2) + (x2 - x1) * p.eval(x3);
    Ok(twice / Rational::from_integer(2))
}

/// Pieces of the factored triangle area.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AreaFactors {
    /// `|x1-x2|, |x1-x3|, |x2-x3|`
    pub differences: [Rational; 3],
    /// `sum_{k=2}^{N} a_k h_{k-2}(x1, x2, x3)`
    pub h_sum: Rational,
    pub area: Rational,
}

pub fn area_factors(p: &Poly, xs: &Nodes) -> Result<AreaFactors> {
    require_three("area_factored", xs)?;
    let (x1, x2, x3) = (&xs[0], &xs[1], &xs[2]);
    let differences = [(x1 - x2).abs(), (x1 - x3).abs(), (x2 - x3).abs()];
    let h_sum = h_sum(p, xs);
    let area = differences.iter().product::<Rational>() * h_sum.abs() / Rational::from_integer(2);
    Ok(AreaFactors {
        differences,
        h_sum,
        area,
    })
}

/// Unsigned triangle area `|x1-x2||x1-x3||x2-x3| |sum_k a_k h_{k-2}| / 2`,
/// with no determinant involved.
pub fn area_factored(p: &Poly, xs: &Nodes) -> Result<Rational> {
    Ok(area_factors(p, xs)?.area)
}

/// Rows `(1, x_i, ..., x_i^{n-2}, p(x_i))`.
pub fn curve_matrix(p: &Poly, xs: &Nodes) -> Result<ExactMatrix> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::Arity {
            op: "curve_matrix",
            expected: "at least 2",
            got: n,
        });
    }
    let entries = xs
        .iter()
        .flat_map(|x| {
            let mut row = power_table(x, n - 2);
            row.push(p.eval(x));
            row
        })
        .collect();
    ExactMatrix::new(n, entries)
}

fn factored_parts(spec: &CurveSimplexSpec) -> Factored {
    Factored {
        difference_product: difference_product(&spec.nodes),
        h_sum: h_sum(&spec.poly, &spec.nodes),
    }
}

/// det(M_n) and volumes from the factored form alone.
pub fn volume_factored(spec: &CurveSimplexSpec) -> VolumeResult {
    let factored = factored_parts(spec);
    let det = &factored.difference_product * &factored.h_sum;
    VolumeResult::from_det(det, spec.n(), factored)
}

/// det(M_n) from the elimination oracle; the factored pieces are filled in
/// alongside for comparison.
pub fn volume_direct(spec: &CurveSimplexSpec) -> VolumeResult {
    let m = curve_matrix(&spec.poly, &spec.nodes).expect("spec has at least two nodes");
    VolumeResult::from_det(det_oracle(&m), spec.n(), factored_parts(spec))
}
