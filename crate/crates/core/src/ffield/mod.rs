//! Prime fields `F_p` and small extensions `F_{p^r}`.
//!
//! Elements are plain coordinate vectors with respect to the power basis of a
//! fixed monic irreducible modulus; all arithmetic goes through the
//! [`FieldSpec`] that describes the field, in the style of a ring object.

pub mod poly;

use crate::{Error, Result};
use poly::FpPoly;

/// Largest extension degree supported.
pub const MAX_DEGREE: usize = 4;

/// Largest field order supported by the enumeration routines.
pub const MAX_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Least `n >= 2` that is not a square modulo the odd prime `p`.
pub fn smallest_nonresidue(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidInput(
            "F_2 has no quadratic non-residue".into(),
        ));
    }
    (2..p)
        .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
        .ok_or_else(|| Error::Inconsistent(format!("no non-residue found mod {p}")))
}

/// An element of some `F_{p^r}`; meaningless without its [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coords: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn coords(&self) -> &[u32; MAX_DEGREE] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Description of `F_q`, `q = p^r`, as `F_p[u] / (modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    r: usize,
    q: u64,
    // monic, length r + 1, constant term first
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_{p^r}` with the canonical modulus: `u^2 - n` with `n` the least
    /// non-residue for `r = 2` and odd `p`, otherwise the first monic
    /// irreducible polynomial in enumeration order of its lower coefficients.
    pub fn new(p: u64, r: usize) -> Result<Self> {
        Self::check_size(p, r)?;
        let modulus = match (r, p) {
            (1, _) => vec![0, 1],
            (2, p) if p != 2 => vec![p - smallest_nonresidue(p)?, 0, 1],
            _ => first_irreducible(p, r)?,
        };
        Self::with_modulus(p, modulus)
    }

    /// `F_{p^r}` for an explicit monic modulus (constant term first). The
    /// modulus is checked for irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidInput("modulus must have degree >= 1".into()));
        }
        let r = modulus.len() - 1;
        Self::check_size(p, r)?;
        if modulus[r] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:?} is not a reduced monic polynomial mod {p}"
            )));
        }
        if !is_irreducible_small(&FpPoly::new(p, modulus.clone())) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(FieldSpec {
            p,
            r,
            q: p.pow(r as u32),
            modulus,
        })
    }

    fn check_size(p: u64, r: usize) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 || r > MAX_DEGREE {
            return Err(Error::Unsupported(format!(
                "extension degree {r} (supported: 1..={MAX_DEGREE})"
            )));
        }
        match p.checked_pow(r as u32) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(Error::Unsupported(format!(
                "field order {p}^{r} exceeds the enumeration cap {MAX_ORDER}"
            ))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    /// Embeds the residue `a mod p`.
    pub fn from_base(&self, a: u64) -> FieldElement {
        let mut coords = [0; MAX_DEGREE];
        coords[0] = (a % self.p) as u32;
        FieldElement { coords }
    }

    /// Embeds a signed integer.
    pub fn from_i64(&self, a: i64) -> FieldElement {
        self.from_base(a.rem_euclid(self.p as i64) as u64)
    }

    /// The class of `u` (the root of the modulus). For `r = 1` this is the
    /// root of `u`, namely zero.
    pub fn generator(&self) -> FieldElement {
        if self.r == 1 {
            return self.zero();
        }
        let mut coords = [0; MAX_DEGREE];
        coords[1] = 1;
        FieldElement { coords }
    }

    pub fn element(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() > self.r || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!(
                "{coords:?} is not an element of F_{}^{}",
                self.p, self.r
            )));
        }
        let mut out = [0; MAX_DEGREE];
        for (o, &c) in out.iter_mut().zip(coords) {
            *o = c as u32;
        }
        Ok(FieldElement { coords: out })
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coords[..self.r].iter().all(|&c| (c as u64) < self.p)
            && x.coords[self.r..].iter().all(|&c| c == 0)
    }

    pub fn is_base(&self, x: &FieldElement) -> bool {
        x.coords[1..].iter().all(|&c| c == 0)
    }

    /// Position of `x` in the enumeration order of [`Self::elements`].
    pub fn index(&self, x: &FieldElement) -> usize {
        x.coords[..self.r]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c as u64) as usize
    }

    pub fn from_index(&self, mut idx: usize) -> FieldElement {
        let mut coords = [0; MAX_DEGREE];
        for c in coords.iter_mut().take(self.r) {
            *c = (idx as u64 % self.p) as u32;
            idx /= self.p as usize;
        }
        FieldElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as usize).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut coords = [0; MAX_DEGREE];
        for (c, (x, y)) in coords
            .iter_mut()
            .zip(a.coords.iter().zip(&b.coords))
            .take(self.r)
        {
            *c = ((*x as u64 + *y as u64) % self.p) as u32;
        }
        FieldElement { coords }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let mut coords = [0; MAX_DEGREE];
        for (c, x) in coords.iter_mut().zip(&a.coords).take(self.r) {
            *c = ((self.p - *x as u64) % self.p) as u32;
        }
        FieldElement { coords }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let r = self.r;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..r {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + a.coords[i] as u64 * b.coords[j] as u64) % p;
            }
        }
        // u^r = -(m_0 + m_1 u + ... + m_{r-1} u^{r-1})
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..r {
                let sub = c * self.modulus[i] % p;
                prod[k - r + i] = (prod[k - r + i] + p - sub) % p;
            }
        }
        let mut coords = [0; MAX_DEGREE];
        for i in 0..r {
            coords[i] = prod[i] as u32;
        }
        FieldElement { coords }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = *a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.q - 2))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Trace `x + x^p + ... + x^{p^{r-1}}` down to `F_p`.
    pub fn trace_to_base(&self, x: &FieldElement) -> u64 {
        let mut acc = *x;
        let mut conj = *x;
        for _ in 1..self.r {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        assert!(self.is_base(&acc), "trace left the prime field: {acc:?}");
        acc.coords[0] as u64
    }

    /// Quadratic character via Euler's criterion `x^((q-1)/2)`.
    pub fn quadratic_character(&self, x: &FieldElement) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::Unsupported(
                "quadratic character in characteristic 2".into(),
            ));
        }
        if x.is_zero() {
            return Ok(0);
        }
        let e = self.pow(x, (self.q - 1) / 2);
        if e == self.one() {
            Ok(1)
        } else if e == self.neg(&self.one()) {
            Ok(-1)
        } else {
            Err(Error::Inconsistent(format!(
                "Euler criterion returned {e:?}"
            )))
        }
    }

    /// Lookup table of the quadratic character, indexed by [`Self::index`].
    /// Built by squaring every element, independently of Euler's criterion.
    pub fn character_table(&self) -> Result<CharacterTable> {
        if self.p == 2 {
            return Err(Error::Unsupported(
                "quadratic character in characteristic 2".into(),
            ));
        }
        let mut values = vec![-1i8; self.q as usize];
        values[0] = 0;
        for x in self.elements().skip(1) {
            values[self.index(&self.square(&x))] = 1;
        }
        Ok(CharacterTable { values })
    }
}

/// Precomputed quadratic character of a field; see [`FieldSpec::character_table`].
#[derive(Clone, Debug)]
pub struct CharacterTable {
    values: Vec<i8>,
}

impl CharacterTable {
    pub fn get(&self, spec: &FieldSpec, x: &FieldElement) -> i8 {
        self.values[spec.index(x)]
    }
}

// Irreducibility for degree <= 4 by exhaustive search: no roots, and for
// degree 4 no monic quadratic factor.
fn is_irreducible_small(f: &FpPoly) -> bool {
    let p = f.characteristic();
    let d = match f.degree() {
        Some(d) => d,
        None => return false,
    };
    if d <= 1 {
        return d == 1;
    }
    if (0..p).any(|a| f.eval(a) == 0) {
        return false;
    }
    if d >= 4 {
        for b in 0..p {
            for c in 0..p {
                let q = FpPoly::new(p, vec![c, b, 1]);
                if f.rem(&q).is_zero() {
                    return false;
                }
            }
        }
    }
    assert!(
        d <= 4,
        "degree {d} beyond the exhaustive irreducibility check"
    );
    true
}

fn first_irreducible(p: u64, r: usize) -> Result<Vec<u64>> {
    let count = p.pow(r as u32);
    for k in 0..count {
        let mut coeffs = Vec::with_capacity(r + 1);
        let mut rest = k;
        for _ in 0..r {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        if is_irreducible_small(&FpPoly::new(p, coeffs.clone())) {
            return Ok(coeffs);
        }
    }
    Err(Error::Inconsistent(format!(
        "no irreducible polynomial of degree {r} over F_{p}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nonresidues() {
        assert_eq!(smallest_nonresidue(11).unwrap(), 2);
        assert_eq!(smallest_nonresidue(3).unwrap(), 2);
        assert_eq!(smallest_nonresidue(7).unwrap(), 3);
        assert!(smallest_nonresidue(2).is_err());
        assert_eq!(smallest_nonresidue(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn canonical_quadratic_model() {
        let f = FieldSpec::new(11, 2).unwrap();
        assert_eq!(f.modulus(), &[9, 0, 1]);
        assert_eq!(f.order(), 121);
        let u = f.generator();
        assert_eq!(f.square(&u), f.from_base(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(12, 1), Err(Error::NotPrime(12)));
        assert!(matches!(FieldSpec::new(11, 5), Err(Error::Unsupported(_))));
        assert!(matches!(
            FieldSpec::new(1031, 2),
            Err(Error::Unsupported(_))
        ));
        // u^2 - 3 is reducible mod 11 (5^2 = 3)
        assert!(matches!(
            FieldSpec::with_modulus(11, vec![8, 0, 1]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn trace_examples() {
        let f = FieldSpec::new(11, 2).unwrap();
        for a in 0..11 {
            assert_eq!(f.trace_to_base(&f.from_base(a)), 2 * a % 11);
        }
        assert_eq!(f.trace_to_base(&f.generator()), 0);
        for a in 0..11 {
            for b in 0..11 {
                let x = f.element(&[a, b]).unwrap();
                assert_eq!(f.trace_to_base(&x), 2 * a % 11);
            }
        }
    }

    #[test]
    fn character_examples() {
        let f = FieldSpec::prime(11).unwrap();
        assert_eq!(f.quadratic_character(&f.from_base(3)).unwrap(), 1);
        assert_eq!(f.quadratic_character(&f.from_base(0)).unwrap(), 0);
        assert_eq!(f.quadratic_character(&f.from_base(2)).unwrap(), -1);
        let f2 = FieldSpec::new(2, 2).unwrap();
        assert!(matches!(
            f2.quadratic_character(&f2.one()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn fermat_exhaustive() {
        for (p, r) in [
            (2, 1),
            (2, 4),
            (3, 3),
            (5, 2),
            (7, 2),
            (11, 1),
            (11, 2),
            (3, 4),
        ] {
            let f = FieldSpec::new(p, r).unwrap();
            for x in f.elements().skip(1) {
                assert_eq!(f.pow(&x, f.order() - 1), f.one(), "F_{p}^{r}, {x:?}");
            }
        }
    }

    #[test]
    fn trace_is_equidistributed_on_f121() {
        let f = FieldSpec::new(11, 2).unwrap();
        let mut hits = [0u32; 11];
        for x in f.elements() {
            hits[f.trace_to_base(&x) as usize] += 1;
        }
        assert_eq!(hits, [11; 11]);
    }

    #[test]
    fn artin_schreier_image_is_trace_kernel() {
        for (p, r) in [(11, 2), (5, 2), (3, 3), (11, 1)] {
            let f = FieldSpec::new(p, r).unwrap();
            let mut hits = vec![0u32; f.order() as usize];
            for t in f.elements() {
                let c = f.sub(&f.frobenius(&t), &t);
                hits[f.index(&c)] += 1;
            }
            for c in f.elements() {
                let expected = if f.trace_to_base(&c) == 0 {
                    p as u32
                } else {
                    0
                };
                assert_eq!(hits[f.index(&c)], expected, "F_{p}^{r} at {c:?}");
            }
        }
    }

    #[test]
    fn character_table_matches_euler() {
        for (p, r) in [(11, 1), (11, 2), (7, 3), (3, 4)] {
            let f = FieldSpec::new(p, r).unwrap();
            let table = f.character_table().unwrap();
            for x in f.elements() {
                assert_eq!(table.get(&f, &x), f.quadratic_character(&x).unwrap());
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let f = FieldSpec::new(7, 3).unwrap();
        for (i, x) in f.elements().enumerate() {
            assert_eq!(f.index(&x), i);
            assert!(f.contains(&x));
        }
    }

    fn f121_element() -> impl Strategy<Value = (u64, u64)> {
        (0u64..11, 0u64..11)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in f121_element(), b in f121_element(), c in f121_element()) {
            let f = FieldSpec::new(11, 2).unwrap();
            let (a, b, c) = (
                f.element(&[a.0, a.1]).unwrap(),
                f.element(&[b.0, b.1]).unwrap(),
                f.element(&[c.0, c.1]).unwrap(),
            );
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        }

        #[test]
        fn character_is_multiplicative(a in 1u64..14641, b in 1u64..14641) {
            let f = FieldSpec::new(11, 4).unwrap();
            let (a, b) = (f.from_index(a as usize), f.from_index(b as usize));
            let chi = |x: &FieldElement| f.quadratic_character(x).unwrap();
            prop_assert_eq!(chi(&f.mul(&a, &b)), chi(&a) * chi(&b));
        }

        #[test]
        fn trace_is_linear(a in 0usize..1331, b in 0usize..1331, k in 0u64..11) {
            let f = FieldSpec::new(11, 3).unwrap();
            let (a, b) = (f.from_index(a), f.from_index(b));
            let lhs = f.trace_to_base(&f.add(&f.mul(&f.from_base(k), &a), &b));
            let rhs = (k * f.trace_to_base(&a) + f.trace_to_base(&b)) % 11;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fermat_sampled_f11_4(a in 1usize..14641) {
            let f = FieldSpec::new(11, 4).unwrap();
            let x = f.from_index(a);
            prop_assert_eq!(f.pow(&x, f.order() - 1), f.one());
        }
    }
}
