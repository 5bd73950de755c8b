//! Exact univariate polynomials over the integers, the rationals, and any
//! other commutative ring with exact arithmetic (used with [`CycNum`]
//! coefficients when expanding the characteristic polynomial).
//!
//! [`CycNum`]: crate::cyclotomic::CycNum

mod newton;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use newton::{newton_polygon, p_adic_valuation, NewtonPolygon};

/// Coefficient ring requirements for [`Poly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<R> Coeff for R where
    R: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = R>
        + Sub<Output = R>
        + Mul<Output = R>
        + Neg<Output = R>
{
}

/// Dense polynomial, constant term first, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<R: Coeff> Poly<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        let mut out = Poly { coeffs };
        while out.coeffs.last().is_some_and(|c| c.is_zero()) {
            out.coeffs.pop();
        }
        out
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<S: Coeff>(&self, f: impl FnMut(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `f(T^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `f(-T)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<R: Coeff> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<R: Coeff> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<R: Coeff> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<R: Coeff> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Coeff> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Self) -> Poly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Division by a monic polynomial; exact over the integers.
    pub fn divrem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !divisor.is_monic() {
            return Err(Error::InvalidInput("divisor must be monic".into()));
        }
        let dd = divisor.degree().unwrap_or(0);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem.pop().unwrap_or_default();
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate().take(dd) {
                    rem[k - dd + i] -= &c * d;
                }
                quot[k - dd] = c;
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }
}

impl RatPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_i64(coeffs).to_rat()
    }

    /// The integer polynomial, if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem.pop().unwrap_or_else(BigRational::zero) / &lead;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate().take(dd) {
                    rem[k - dd + i] -= &c * d;
                }
                quot[k - dd] = c;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn exact_div(&self, divisor: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> RatPoly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// The `k`-th cyclotomic polynomial, by dividing `T^k - 1` by `Phi_d` for
/// every proper divisor `d` of `k`.
pub fn cyclotomic_poly(k: u64) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "cyclotomic index must be positive".into(),
        ));
    }
    let mut acc = &IntPoly::monomial(BigInt::one(), k as usize) - &IntPoly::one();
    for d in divisors(k).into_iter().filter(|&d| d < k) {
        let (q, r) = acc.divrem_monic(&cyclotomic_poly(d)?)?;
        debug_assert!(r.is_zero());
        acc = q;
    }
    Ok(acc)
}

/// Largest `m` with `f^m | g`. Errors when the answer is unbounded
/// (`f` constant, or `g` zero).
pub fn divides_with_multiplicity(f: &RatPoly, g: &RatPoly) -> Result<u32> {
    match f.degree() {
        None => return Err(Error::InvalidInput("divisor is the zero polynomial".into())),
        Some(0) => return Err(Error::InvalidInput("divisor is a unit".into())),
        _ => {}
    }
    if g.is_zero() {
        return Err(Error::InvalidInput(
            "every power divides the zero polynomial".into(),
        ));
    }
    let mut m = 0;
    let mut cur = g.clone();
    while let Some(q) = cur.exact_div(f) {
        m += 1;
        cur = q;
    }
    Ok(m)
}

/// `+1` if the coefficient list is a palindrome, `-1` if it is an
/// anti-palindrome, `None` otherwise (and for the zero polynomial).
pub fn palindrome_sign(f: &RatPoly) -> Option<i8> {
    let c = f.coeffs();
    if c.is_empty() {
        return None;
    }
    let mirrored = || c.iter().zip(c.iter().rev());
    if mirrored().all(|(a, b)| a == b) {
        Some(1)
    } else if mirrored().all(|(a, b)| *a == -b) {
        Some(-1)
    } else {
        None
    }
}

impl<R: fmt::Display + Signed + Coeff> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ if unit => write!(f, "T")?,
                _ => write!(f, "{mag}*T")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}
