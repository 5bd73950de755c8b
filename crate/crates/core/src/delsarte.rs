//! The Fermat cover of the uniform model and the congruence deciding when
//! supersingular reduction can occur.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ffield::is_prime;
use crate::{Error, Result};

pub const FERMAT_DEGREE: u32 = 11;

/// Exponent triple of `u^i v^j w^k`.
pub type Exponent = (u32, u32, u32);

/// Sparse polynomial in `u, v, w` over `Z`. Keys compare lexicographically,
/// which is the monomial order used for division.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, (0, 0, 0))
    }

    pub fn term(c: impl Into<BigInt>, e: Exponent) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c.into());
        out
    }

    pub fn u() -> Self {
        Self::term(1, (1, 0, 0))
    }

    pub fn v() -> Self {
        Self::term(1, (0, 1, 0))
    }

    pub fn w() -> Self {
        Self::term(1, (0, 0, 1))
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(*e, x * &c);
        }
        out
    }

    /// Leading term in lex order `u > v > w`.
    pub fn leading(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Self {
        let p = BigInt::from(p);
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.mod_floor(&p));
        }
        out
    }

    /// Division by a polynomial with unit leading coefficient. Each term of
    /// the remainder is not divisible by the leading monomial of `divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let (lead, lc) = divisor
            .leading()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        if !lc.abs().is_one() {
            return Err(Error::InvalidInput(
                "divisor leading coefficient must be +-1".into(),
            ));
        }
        let lc = lc.clone();
        let mut rest = self.clone();
        let mut quotient = Self::zero();
        let mut remainder = Self::zero();
        while let Some((e, c)) = rest.leading().map(|(e, c)| (e, c.clone())) {
            if e.0 >= lead.0 && e.1 >= lead.1 && e.2 >= lead.2 {
                let m = Self::term(&c * &lc, (e.0 - lead.0, e.1 - lead.1, e.2 - lead.2));
                rest = rest.sub(&m.mul(divisor));
                quotient = quotient.add(&m);
            } else {
                rest.terms.remove(&e);
                remainder.add_term(e, c);
            }
        }
        Ok((quotient, remainder))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((i, j, k), c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match n {
                0 if c.is_negative() => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let vars: Vec<String> = [("u", i), ("v", j), ("w", k)]
                .iter()
                .filter(|(_, &e)| e > 0)
                .map(|(x, &e)| {
                    if e == 1 {
                        x.to_string()
                    } else {
                        format!("{x}^{e}")
                    }
                })
                .collect();
            let mag = c.abs();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join(" "))?,
                (false, false) => write!(f, "{mag} {}", vars.join(" "))?,
            }
        }
        Ok(())
    }
}

/// Images of `x, y, t` in `Z[u, v, w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverMap {
    pub x: MultiPoly,
    pub y: MultiPoly,
    pub t: MultiPoly,
}

/// `x = -u^11 v^11`, `y = -u^22 v^11`, `t = -w u^3 v^2`.
pub fn fermat_cover_map() -> CoverMap {
    CoverMap {
        x: MultiPoly::term(-1, (11, 11, 0)),
        y: MultiPoly::term(-1, (22, 11, 0)),
        t: MultiPoly::term(-1, (3, 2, 1)),
    }
}

/// `u^11 + v^11 + w^11 + 1`.
pub fn fermat_relation() -> MultiPoly {
    [(11, 0, 0), (0, 11, 0), (0, 0, 11), (0, 0, 0)]
        .into_iter()
        .fold(MultiPoly::zero(), |acc, e| acc.add(&MultiPoly::term(1, e)))
}

/// `y^2 + x y - x^3 - t^11` after substitution.
pub fn substitute(map: &CoverMap) -> MultiPoly {
    let CoverMap { x, y, t } = map;
    y.mul(y)
        .add(&x.mul(y))
        .sub(&x.pow(3))
        .sub(&t.pow(FERMAT_DEGREE))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverIdentity {
    pub holds: bool,
    pub substituted: MultiPoly,
    pub cofactor: MultiPoly,
    pub remainder: MultiPoly,
}

impl CoverIdentity {
    /// The integer identity read modulo `p`.
    pub fn holds_mod(&self, p: u64) -> bool {
        let lhs = self.substituted.reduce_mod(p);
        let rhs = self.cofactor.mul(&fermat_relation()).reduce_mod(p);
        lhs == rhs && !self.cofactor.reduce_mod(p).is_zero()
    }
}

pub fn verify_cover_identity() -> CoverIdentity {
    verify_cover_identity_for(&fermat_cover_map())
}

pub fn verify_cover_identity_for(map: &CoverMap) -> CoverIdentity {
    let substituted = substitute(map);
    let (cofactor, remainder) = substituted
        .divrem(&fermat_relation())
        .expect("Fermat relation is monic");
    CoverIdentity {
        holds: remainder.is_zero(),
        substituted,
        cofactor,
        remainder,
    }
}

/// Multiplicative order of `p` modulo 11; `None` for `p = 11`.
pub fn order_mod_11(p: u64) -> Option<u32> {
    let r = p % 11;
    if r == 0 {
        return None;
    }
    let mut x = r;
    let mut k = 1;
    while x != 1 {
        x = x * r % 11;
        k += 1;
    }
    Some(k)
}

pub fn is_nonsquare_mod_11(p: u64) -> bool {
    let r = p % 11;
    r != 0 && !(1..11u64).any(|s| s * s % 11 == r)
}

/// `p = 11`, or `p^nu = -1 mod 11` for some `nu` (even order of `p`).
pub fn supersingular_possible(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let by_order = order_mod_11(p).is_none_or(|k| k % 2 == 0);
    if p != 11 && by_order != is_nonsquare_mod_11(p) {
        return Err(Error::Inconsistent(format!(
            "order and quadratic-residue criteria disagree at p = {p}"
        )));
    }
    Ok(by_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cover_identity_holds() {
        let id = verify_cover_identity();
        assert!(id.holds);
        assert_eq!(id.cofactor, MultiPoly::term(1, (33, 22, 0)));
        assert_eq!(id.cofactor.to_string(), "u^33 v^22");
        assert_eq!(id.substituted, id.cofactor.mul(&fermat_relation()));
        assert_eq!(
            id.substituted.to_string(),
            "u^44 v^22 + u^33 v^33 + u^33 v^22 w^11 + u^33 v^22"
        );
    }

    #[test]
    fn wrong_map_fails() {
        let mut map = fermat_cover_map();
        map.t = map.t.neg();
        let id = verify_cover_identity_for(&map);
        assert!(!id.holds);
        assert!(!id.remainder.is_zero());
    }

    #[test]
    fn reductions() {
        let id = verify_cover_identity();
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(id.holds_mod(p), "p = {p}");
        }
    }

    #[test]
    fn supersingular_examples() {
        assert!(supersingular_possible(11).unwrap());
        assert!(supersingular_possible(2).unwrap());
        assert!(!supersingular_possible(3).unwrap());
        assert_eq!(order_mod_11(2), Some(10));
        assert_eq!(order_mod_11(3), Some(5));
        assert!(matches!(supersingular_possible(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn criteria_agree_below_1000() {
        for p in (2..1000).filter(|&p| is_prime(p)) {
            let s = supersingular_possible(p).unwrap();
            if p != 11 {
                assert_eq!(s, is_nonsquare_mod_11(p), "p = {p}");
            }
        }
    }

    #[test]
    fn division_edge_cases() {
        let f = fermat_relation();
        assert!(MultiPoly::one().divrem(&MultiPoly::zero()).is_err());
        assert!(f.divrem(&f.scale(2)).is_err());
        let (q, r) = MultiPoly::v().divrem(&f).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, MultiPoly::v());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((-5i64..5, 0u32..14, 0u32..14, 0u32..14), 0..6).prop_map(|ts| {
            ts.into_iter().fold(MultiPoly::zero(), |acc, (c, i, j, k)| {
                acc.add(&MultiPoly::term(c, (i, j, k)))
            })
        })
    }

    proptest! {
        #[test]
        fn division_reconstructs(g in small_poly()) {
            let f = fermat_relation();
            let (q, r) = g.divrem(&f).unwrap();
            prop_assert_eq!(q.mul(&f).add(&r), g);
            prop_assert!(r.terms().keys().all(|e| e.0 < 11));
        }

        #[test]
        fn multiples_leave_no_remainder(g in small_poly()) {
            let (q, r) = g.mul(&fermat_relation()).divrem(&fermat_relation()).unwrap();
            prop_assert!(r.is_zero());
            prop_assert_eq!(q, g);
        }
    }
}
