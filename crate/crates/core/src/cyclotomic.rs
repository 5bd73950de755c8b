//! Exact arithmetic in `Q(zeta)`, `zeta` a primitive 11th root of unity, and
//! the inverse discrete Fourier transform that turns the 11 integer traces
//! `tr_n(q)` into the relative traces `a_i(q)` on the `zeta^i` eigenspaces.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^9`, reduced with
//! `zeta^10 = -(1 + zeta + ... + zeta^9)`, so equality is coordinate-wise.
//! `Z[zeta]` is the full ring of integers, hence an element is an algebraic
//! integer exactly when all ten coordinates are integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub const ORDER: usize = 11;
pub const DIM: usize = ORDER - 1;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    coords: [BigRational; DIM],
}

impl CycNum {
    pub fn from_coords(coords: [BigRational; DIM]) -> Self {
        CycNum { coords }
    }

    pub fn from_int_coords(coords: [i64; DIM]) -> Self {
        CycNum {
            coords: coords.map(|c| BigRational::from_integer(c.into())),
        }
    }

    pub fn rational(c: BigRational) -> Self {
        let mut coords: [BigRational; DIM] = Default::default();
        coords[0] = c;
        CycNum { coords }
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(c.into()))
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let mut out = Self::zero();
        out.add_zeta_power(k.rem_euclid(ORDER as i64) as usize, &BigRational::one());
        out
    }

    pub fn coords(&self) -> &[BigRational; DIM] {
        &self.coords
    }

    // self += c * zeta^k, 0 <= k < 11
    fn add_zeta_power(&mut self, k: usize, c: &BigRational) {
        if k < DIM {
            self.coords[k] += c;
        } else {
            for x in self.coords.iter_mut() {
                *x -= c;
            }
        }
    }

    /// The rational value when `c_1 = ... = c_9 = 0`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integer_coords(&self) -> Option<[BigInt; DIM]> {
        if !self.is_integral() {
            return None;
        }
        Some(std::array::from_fn(|k| self.coords[k].to_integer()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycNum {
            coords: std::array::from_fn(|k| &self.coords[k] * c),
        }
    }

    /// Image under the field automorphism `zeta -> zeta^s`.
    pub fn galois_apply(&self, s: i64) -> Result<Self> {
        let s = s.rem_euclid(ORDER as i64) as usize;
        if s == 0 {
            return Err(Error::InvalidInput(
                "Galois exponent must be a unit mod 11".into(),
            ));
        }
        let mut out = Self::zero();
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                out.add_zeta_power(k * s % ORDER, c);
            }
        }
        Ok(out)
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum {
            coords: Default::default(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for CycNum {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum {
            coords: std::array::from_fn(|k| &self.coords[k] + &rhs.coords[k]),
        }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum {
            coords: std::array::from_fn(|k| &self.coords[k] - &rhs.coords[k]),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            coords: std::array::from_fn(|k| -&self.coords[k]),
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        // product in Z[x]/(x^11 - 1), then reduce zeta^10
        let mut wide: [BigRational; ORDER] = Default::default();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    wide[(i + j) % ORDER] += a * b;
                }
            }
        }
        let mut out = CycNum::zero();
        for (k, c) in wide.iter().enumerate() {
            if !c.is_zero() {
                out.add_zeta_power(k, c);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Relative traces `a_1(q), ..., a_10(q)` of Frobenius on the eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenTraces {
    pub q: u64,
    a: Vec<CycNum>,
}

impl EigenTraces {
    pub fn new(q: u64, a: Vec<CycNum>) -> Result<Self> {
        if a.len() != DIM {
            return Err(Error::InvalidInput(format!(
                "expected {DIM} eigentraces, got {}",
                a.len()
            )));
        }
        Ok(EigenTraces { q, a })
    }

    /// `a_i(q)` for `i` in `1..=10`.
    pub fn get(&self, i: usize) -> &CycNum {
        &self.a[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = &CycNum> {
        self.a.iter()
    }

    /// `sum_i a_i(q)`, the trace on the 20-dimensional complement.
    pub fn trace_sum(&self) -> Result<BigInt> {
        let total = self.a.iter().fold(CycNum::zero(), |acc, x| &acc + x);
        total
            .as_integer()
            .ok_or_else(|| Error::NonIntegral(format!("sum of eigentraces {total}")))
    }

    /// For `zeta -> zeta^s`, the index map `i -> j` with `sigma_s(a_i) = a_j`,
    /// or `None` if the multiset is not stable. Repeated values match first-fit.
    pub fn galois_permutation(&self, s: i64) -> Result<Option<Vec<usize>>> {
        let mut used = [false; DIM];
        let mut perm = Vec::with_capacity(DIM);
        for a in &self.a {
            let image = a.galois_apply(s)?;
            let hit = (0..DIM).find(|&j| !used[j] && self.a[j] == image);
            match hit {
                Some(j) => {
                    used[j] = true;
                    perm.push(j + 1);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(perm))
    }

    /// Multiset stability under every `zeta -> zeta^s`.
    pub fn is_galois_stable(&self) -> bool {
        (1..ORDER as i64).all(|s| matches!(self.galois_permutation(s), Ok(Some(_))))
    }
}

/// `a_i = (1/11) sum_n zeta^(-n i) tr_n`. Requires `a_0 = 2q` and integral
/// `a_1..a_10`.
pub fn inverse_dft(tr: &[i64], q: u64) -> Result<EigenTraces> {
    if tr.len() != ORDER {
        return Err(Error::InvalidInput(format!(
            "expected {ORDER} traces, got {}",
            tr.len()
        )));
    }
    let eleventh = BigRational::new(BigInt::one(), BigInt::from(ORDER));
    let total: BigInt = tr.iter().map(|&t| BigInt::from(t)).sum();
    let a0 = BigRational::from_integer(total) * &eleventh;
    if a0 != BigRational::from_integer(BigInt::from(2 * q)) {
        return Err(Error::InconsistentTrace {
            found: a0.to_string(),
            expected: 2 * q,
        });
    }
    let mut a = Vec::with_capacity(DIM);
    for i in 1..ORDER {
        let mut acc = CycNum::zero();
        for (n, &t) in tr.iter().enumerate() {
            let k = (ORDER - (n * i) % ORDER) % ORDER;
            acc.add_zeta_power(k, &BigRational::from_integer(t.into()));
        }
        let ai = acc.scale(&eleventh);
        if !ai.is_integral() {
            return Err(Error::NonIntegral(format!("a_{i}({q}) = {ai}")));
        }
        a.push(ai);
    }
    EigenTraces::new(q, a)
}

/// `tr_n = 2q + sum_i zeta^(n i) a_i`, the forward transform.
pub fn forward_dft(e: &EigenTraces) -> Result<Vec<i64>> {
    (0..ORDER)
        .map(|n| {
            let mut acc = CycNum::integer(2 * e.q);
            for i in 1..ORDER {
                acc = &acc + &(&CycNum::zeta_pow((n * i) as i64) * e.get(i));
            }
            acc.as_integer()
                .and_then(|v| i64::try_from(v).ok())
                .ok_or_else(|| Error::NonIntegral(format!("tr_{n} = {acc}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(k: i64) -> CycNum {
        CycNum::zeta_pow(k)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&zeta(6) * &zeta(7), zeta(2));
        assert_eq!(&zeta(1) * &zeta(9), CycNum::from_int_coords([-1; DIM]));
        let one_plus_zeta = &CycNum::one() + &zeta(1);
        assert_eq!(&one_plus_zeta * &CycNum::one(), one_plus_zeta);
        // 1 + zeta + ... + zeta^10 = 0
        let total = (0..11).fold(CycNum::zero(), |acc, k| &acc + &zeta(k));
        assert!(total.is_zero());
    }

    #[test]
    fn galois_examples() {
        let a = CycNum::from_int_coords([3, -1, 4, 1, -5, 9, 2, -6, 5, 3]);
        assert_eq!(a.galois_apply(1).unwrap(), a);
        assert_eq!(zeta(1).galois_apply(2).unwrap(), zeta(2));
        let r = CycNum::integer(7);
        for s in 1..11 {
            assert_eq!(r.galois_apply(s).unwrap(), r);
        }
        assert!(a.galois_apply(11).is_err());
        assert!(a.galois_apply(0).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(
            CycNum::from_int_coords([5, 0, 0, 0, 0, 0, 0, 0, 0, 0]).as_integer(),
            Some(5.into())
        );
        assert_eq!(zeta(1).as_rational(), None);
        // zeta^10 is not rational either
        assert_eq!(zeta(10).as_rational(), None);
    }

    #[test]
    fn constant_traces_have_no_eigen_contribution() {
        let q = 11;
        let e = inverse_dft(&[2 * q as i64; 11], q).unwrap();
        assert!(e.iter().all(Zero::is_zero));
    }

    #[test]
    fn inconsistent_traces_rejected() {
        let mut tr = [22i64; 11];
        tr[3] += 1;
        assert!(matches!(
            inverse_dft(&tr, 11),
            Err(Error::InconsistentTrace { .. })
        ));
        assert!(inverse_dft(&tr[..10], 11).is_err());
    }

    #[test]
    fn non_integral_eigentraces_rejected() {
        // sum preserved (a_0 = 2q) but not a valid trace vector
        let mut tr = [22i64; 11];
        tr[1] += 1;
        tr[2] -= 1;
        assert!(matches!(inverse_dft(&tr, 11), Err(Error::NonIntegral(_))));
    }

    fn small_cyc() -> impl Strategy<Value = CycNum> {
        proptest::array::uniform10(-6i64..6).prop_map(CycNum::from_int_coords)
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_cyc(), b in small_cyc(), c in small_cyc()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn galois_is_a_ring_map(a in small_cyc(), b in small_cyc(), s in 1i64..11) {
            let lhs = (&a * &b).galois_apply(s).unwrap();
            let rhs = &a.galois_apply(s).unwrap() * &b.galois_apply(s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dft_roundtrip(seed in small_cyc(), q in 1u64..200) {
            // a Galois-closed family a_i = sigma_i(seed) has integer traces
            let conj: Vec<CycNum> = (1..11).map(|s| seed.galois_apply(s).unwrap()).collect();
            let e = EigenTraces::new(q, conj).unwrap();
            let tr = forward_dft(&e).unwrap();
            let back = inverse_dft(&tr, q).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}
