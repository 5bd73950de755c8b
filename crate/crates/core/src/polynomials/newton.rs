use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::{Error, Result};

/// `v_p(n)`; `None` for `n = 0`.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut cur = n.abs();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        cur = q;
    }
}

/// Lower convex hull of `(j, v_p(c_j))` and the valuations of the roots it
/// encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub p: u64,
    pub points: Vec<(usize, u32)>,
    pub hull: Vec<(usize, u32)>,
    /// Root valuations with multiplicities, strictly increasing.
    pub valuations: Vec<(Rational64, usize)>,
}

impl NewtonPolygon {
    pub fn min_valuation(&self) -> Option<Rational64> {
        self.valuations.first().map(|v| v.0)
    }

    /// Each root valuation repeated by its multiplicity.
    pub fn multiset(&self) -> Vec<Rational64> {
        self.valuations
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }
}

fn cross(o: (usize, u32), a: (usize, u32), b: (usize, u32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "Newton polygon of the zero polynomial".into(),
        ));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::InvalidInput(
            "zero constant term; divide out the power of T first".into(),
        ));
    }
    let points: Vec<(usize, u32)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| p_adic_valuation(c, p).map(|v| (j, v)))
        .collect();

    let mut hull: Vec<(usize, u32)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }

    // segment slopes increase left to right; root valuations are their negatives
    let mut valuations: Vec<(Rational64, usize)> = hull
        .windows(2)
        .map(|w| {
            let (j1, v1) = w[0];
            let (j2, v2) = w[1];
            let len = j2 - j1;
            (Rational64::new(v1 as i64 - v2 as i64, len as i64), len)
        })
        .collect();
    valuations.reverse();
    Ok(NewtonPolygon {
        p,
        points,
        hull,
        valuations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn double_root_at_p() {
        let p = 11;
        let f = IntPoly::from_i64(&[121, -22, 1]);
        let np = newton_polygon(&f, p).unwrap();
        assert_eq!(np.multiset(), vec![r(1, 1), r(1, 1)]);
    }

    #[test]
    fn ordinary_quadratic() {
        let np = newton_polygon(&IntPoly::from_i64(&[7, -1, 1]), 7).unwrap();
        assert_eq!(np.valuations, vec![(r(0, 1), 1), (r(1, 1), 1)]);
        assert_eq!(np.hull, vec![(0, 1), (1, 0), (2, 0)]);
    }

    #[test]
    fn collinear_points_merge() {
        // (T - p)^3 has points on a line; one segment of length 3
        let np = newton_polygon(&IntPoly::from_i64(&[-125, 75, -15, 1]), 5).unwrap();
        assert_eq!(np.valuations, vec![(r(1, 1), 3)]);
        assert_eq!(np.hull, vec![(0, 3), (3, 0)]);
    }

    #[test]
    fn rejects_zero_constant_term() {
        assert!(newton_polygon(&IntPoly::from_i64(&[0, 1]), 3).is_err());
    }

    #[test]
    fn valuation_sum_matches_endpoints() {
        let f = IntPoly::from_i64(&[11 * 11 * 11, 5 * 11, 3, 11, 1]);
        let np = newton_polygon(&f, 11).unwrap();
        let total: Rational64 = np.valuations.iter().map(|&(v, m)| v * m as i64).sum();
        assert_eq!(total, r(3, 1));
        assert_eq!(np.multiset().len(), 4);
        assert_eq!(p_adic_valuation(&BigInt::from(-242), 11), Some(2));
    }
}
