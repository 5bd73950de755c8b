//! Dense univariate polynomials over `F_p`, including factorization into
//! irreducibles (square-free, distinct-degree and equal-degree splitting).

use std::fmt;

use super::{pow_mod, FieldElement, FieldSpec};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    // constant term first, no trailing zeros
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    /// `c * t^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.leading()))
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| a * (c % self.p) % self.p)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (self.coeff(k) + other.coeff(k)) % self.p)
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| (self.p - a) % self.p).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, coeffs)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = self.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k] * lead_inv % self.p;
            if c != 0 {
                quot[k - dd] = c;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    rem[idx] = (rem[idx] + self.p - c * d % self.p) % self.p;
                }
            }
            rem.pop();
        }
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % self.p) * c % self.p)
            .collect();
        Self::new(self.p, coeffs)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, t: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * (t % self.p) + c) % self.p)
    }

    /// Evaluation at an element of an extension of `F_p`.
    pub fn eval_in(&self, spec: &FieldSpec, t: &FieldElement) -> FieldElement {
        debug_assert_eq!(spec.characteristic(), self.p);
        self.coeffs.iter().rev().fold(spec.zero(), |acc, &c| {
            spec.add(&spec.mul(&acc, t), &spec.from_base(c))
        })
    }

    /// Multiplicity of `factor` in `self`; `None` for the zero polynomial.
    pub fn valuation(&self, factor: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(factor);
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            cur = q;
        }
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation_at_zero(&self) -> Option<u32> {
        self.coeffs.iter().position(|&c| c != 0).map(|k| k as u32)
    }

    /// `t^d * self(1/t)`, for `d >= deg self`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.coeffs.len() <= d + 1, "reverse: degree exceeds {d}");
        let mut coeffs = vec![0; d + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c;
        }
        Self::new(self.p, coeffs)
    }

    // g(t)^(1/p) for g with support on multiples of p
    fn pth_root(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .step_by(self.p as usize)
            .copied()
            .collect();
        Self::new(self.p, coeffs)
    }

    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then coefficients. Requires odd `p` and a nonzero polynomial.
    pub fn factor(&self) -> Result<Vec<(FpPoly, u32)>> {
        if self.p == 2 {
            return Err(Error::Unsupported("factorization over F_2".into()));
        }
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "cannot factor the zero polynomial".into(),
            ));
        }
        let mut out = Vec::new();
        for (sf, mult) in self.monic().squarefree_decomposition() {
            for (g, d) in sf.distinct_degree() {
                for f in g.equal_degree(d) {
                    out.push((f, mult));
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        Ok(out)
    }

    fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (f, m) in self.pth_root().squarefree_decomposition() {
                out.push((f, m * p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac.monic(), i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if !c.is_one() {
            for (f, m) in c.pth_root().squarefree_decomposition() {
                out.push((f, m * p as u32));
            }
        }
        out
    }

    // input square-free and monic
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let x = FpPoly::monomial(p, 1, 1);
        let mut f = self.clone();
        let mut h = x.rem(&f);
        let mut out = Vec::new();
        let mut i = 1;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.divrem(&g).0;
                h = h.rem(&f);
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = f.degree().filter(|&d| d > 0) {
            out.push((f, d));
        }
        out
    }

    // Cantor-Zassenhaus with a deterministic sequence of trial polynomials
    fn equal_degree(&self, d: usize) -> Vec<FpPoly> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return vec![self.monic()];
        }
        let p = self.p;
        let half = (p - 1) / 2;
        for k in p.. {
            let mut digits = Vec::new();
            let mut rest = k;
            while rest > 0 && digits.len() < n {
                digits.push(rest % p);
                rest /= p;
            }
            let a = FpPoly::new(p, digits);
            let g = self.gcd(&a);
            let split = if g.degree().unwrap_or(0) > 0 {
                g
            } else {
                // a^((p^d - 1)/2) = prod_j (a^((p-1)/2))^(p^j)
                let base = a.pow_mod(half, self);
                let mut conj = base.clone();
                let mut acc = base;
                for _ in 1..d {
                    conj = conj.pow_mod(p, self);
                    acc = acc.mul(&conj).rem(self);
                }
                self.gcd(&acc.sub(&FpPoly::one(p)))
            };
            let sd = split.degree().unwrap_or(0);
            if sd > 0 && sd < n {
                let other = self.divrem(&split).0;
                let mut out = split.equal_degree(d);
                out.extend(other.equal_degree(d));
                return out;
            }
        }
        unreachable!()
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product(p: u64, factors: &[(FpPoly, u32)]) -> FpPoly {
        factors
            .iter()
            .fold(FpPoly::one(p), |acc, (f, m)| acc.mul(&f.pow(*m as u64)))
    }

    #[test]
    fn divrem_roundtrip() {
        let a = FpPoly::from_i64(11, &[3, 0, 5, 1, 7]);
        let b = FpPoly::from_i64(11, &[1, 2, 3]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn uniform_discriminant_factor_mod_7() {
        // 432 t^11 + 1 = 5 t^11 + 1 over F_7: one root, then an irreducible of degree 10
        let f = FpPoly::from_i64(7, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 432]);
        let fac = f.factor().unwrap();
        let degs: Vec<_> = fac.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (10, 1)]);
        assert_eq!(product(7, &fac).scale(f.leading()), f);
    }

    #[test]
    fn pth_power_factor_mod_11() {
        // 3 t^11 + 1 = 3 (t + 4)^11 over F_11
        let f = FpPoly::from_i64(11, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3]);
        let fac = f.factor().unwrap();
        assert_eq!(fac, vec![(FpPoly::from_i64(11, &[4, 1]), 11)]);
    }

    #[test]
    fn artin_schreier_polynomial_splits() {
        // t^11 - t = prod_{a in F_11} (t - a)
        let f = FpPoly::from_i64(11, &[0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.len(), 11);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn mixed_multiplicities() {
        let p = 5;
        let a = FpPoly::from_i64(p, &[2, 0, 1]); // t^2 + 2, irreducible mod 5
        let b = FpPoly::from_i64(p, &[1, 1]);
        let c = FpPoly::from_i64(p, &[3, 1]);
        let f = a.pow(3).mul(&b.pow(5)).mul(&c).mul(&b.pow(2));
        let fac = f.factor().unwrap();
        assert_eq!(product(p, &fac), f);
        assert!(fac.contains(&(a, 3)));
        assert!(fac.contains(&(b, 7)));
        assert!(fac.contains(&(c, 1)));
    }

    #[test]
    fn reverse_and_valuation() {
        let f = FpPoly::from_i64(11, &[0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let r = f.reverse(12);
        assert_eq!(
            r,
            FpPoly::from_i64(11, &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1])
        );
        assert_eq!(r.valuation_at_zero(), Some(1));
        let lin = FpPoly::from_i64(11, &[0, 1]);
        assert_eq!(f.mul(&f).valuation(&lin), Some(2));
        assert_eq!(FpPoly::zero(11).valuation(&lin), None);
    }

    #[test]
    fn factor_rejects_characteristic_two() {
        assert!(FpPoly::one(2).factor().is_err());
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(coeffs in proptest::collection::vec(0u64..13, 2..14)) {
            let f = FpPoly::new(13, coeffs);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let fac = f.factor().unwrap();
            prop_assert_eq!(product(13, &fac).scale(f.leading()), f);
            for (g, _) in &fac {
                prop_assert_eq!(g.leading(), 1);
            }
            for i in 0..fac.len() {
                for j in i + 1..fac.len() {
                    prop_assert!(fac[i].0.gcd(&fac[j].0).is_one());
                }
            }
        }

        #[test]
        fn low_degree_factors_are_irreducible(coeffs in proptest::collection::vec(0u64..7, 2..12)) {
            let f = FpPoly::new(7, coeffs);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            for (g, _) in f.factor().unwrap() {
                let d = g.degree().unwrap();
                if d >= 2 {
                    prop_assert!((0..7).all(|a| g.eval(a) != 0));
                }
                if d >= 4 {
                    for b in 0..7 {
                        for c in 0..7 {
                            let q = FpPoly::new(7, vec![c, b, 1]);
                            prop_assert!(!g.rem(&q).is_zero());
                        }
                    }
                }
            }
        }
    }
}
