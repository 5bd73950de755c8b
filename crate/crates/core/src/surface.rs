//! Weierstrass models of the three fibred surfaces, their `c4` and
//! discriminant, and fibre-by-fibre point counting.
//!
//! Fibrewise counting never uses the order-11 automorphism, which makes it
//! the independent check for everything in [`crate::equivariant`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::ffield::poly::FpPoly;
use crate::ffield::{is_prime, CharacterTable, FieldElement, FieldSpec};
use crate::kodaira::{classify_fibers, KodairaType};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    /// `y^2 = x^3 + e x^2 + t^11 - t`
    Epsilon,
    /// `y^2 = x^3 + g x + t^11 - t`
    Gamma,
    /// `y^2 + x y = x^3 + t^11`
    Uniform,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Epsilon => "epsilon",
            ModelKind::Gamma => "gamma",
            ModelKind::Uniform => "uniform",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(ModelKind::Epsilon),
            "gamma" => Ok(ModelKind::Gamma),
            "uniform" => Ok(ModelKind::Uniform),
            other => Err(Error::InvalidInput(format!("unknown model kind {other:?}"))),
        }
    }
}

/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6` with `a_i in F_p[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCoeffs {
    pub a1: FpPoly,
    pub a2: FpPoly,
    pub a3: FpPoly,
    pub a4: FpPoly,
    pub a6: FpPoly,
}

impl WeierstrassCoeffs {
    fn characteristic(&self) -> u64 {
        self.a1.characteristic()
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> (FpPoly, FpPoly, FpPoly, FpPoly) {
        let p = self.characteristic();
        let k = |c: i64| FpPoly::from_i64(p, &[c]);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.mul(a1).add(&k(4).mul(a2));
        let b4 = a1.mul(a3).add(&k(2).mul(a4));
        let b6 = a3.mul(a3).add(&k(4).mul(a6));
        let b8 = a1
            .mul(a1)
            .mul(a6)
            .add(&k(4).mul(a2).mul(a6))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(a3).mul(a3))
            .sub(&a4.mul(a4));
        (b2, b4, b6, b8)
    }

    /// `(c4, Delta)` from the standard b-invariant formulas.
    pub fn c4_delta(&self) -> (FpPoly, FpPoly) {
        let p = self.characteristic();
        let k = |c: i64| FpPoly::from_i64(p, &[c]);
        let (b2, b4, b6, b8) = self.b_invariants();
        let c4 = b2.mul(&b2).sub(&k(24).mul(&b4));
        let delta = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&k(8).mul(&b4).mul(&b4).mul(&b4))
            .sub(&k(27).mul(&b6).mul(&b6))
            .add(&k(9).mul(&b2).mul(&b4).mul(&b6));
        (c4, delta)
    }

    fn specialize(&self, spec: &FieldSpec, t: &FieldElement) -> FiberCubic {
        let ev = |a: &FpPoly| a.eval_in(spec, t);
        FiberCubic {
            a1: ev(&self.a1),
            a2: ev(&self.a2),
            a3: ev(&self.a3),
            a4: ev(&self.a4),
            a6: ev(&self.a6),
        }
    }
}

/// A plane Weierstrass cubic over `F_q`.
#[derive(Clone, Copy, Debug)]
struct FiberCubic {
    a1: FieldElement,
    a2: FieldElement,
    a3: FieldElement,
    a4: FieldElement,
    a6: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    p: u64,
    kind: ModelKind,
    param: u64,
    affine: WeierstrassCoeffs,
    /// Model in `s = 1/t`, `x = X/s^4`, `y = Y/s^6`, scaled by `s^12`.
    infinity: WeierstrassCoeffs,
}

/// A fibre of the elliptic fibration over `P^1(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberLocation {
    Affine(FieldElement),
    Infinity,
}

pub fn make_model(kind: ModelKind, param: u64, p: u64) -> Result<WeierstrassModel> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if param >= p {
        return Err(Error::InvalidInput(format!(
            "parameter {param} is not a residue mod {p}"
        )));
    }
    let zero = FpPoly::zero(p);
    let artin_schreier = FpPoly::from_i64(p, &[0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    let affine = match kind {
        ModelKind::Epsilon => WeierstrassCoeffs {
            a1: zero.clone(),
            a2: FpPoly::constant(p, param),
            a3: zero.clone(),
            a4: zero,
            a6: artin_schreier,
        },
        ModelKind::Gamma => WeierstrassCoeffs {
            a1: zero.clone(),
            a2: zero.clone(),
            a3: zero,
            a4: FpPoly::constant(p, param),
            a6: artin_schreier,
        },
        ModelKind::Uniform => WeierstrassCoeffs {
            a1: FpPoly::one(p),
            a2: zero.clone(),
            a3: zero.clone(),
            a4: zero,
            a6: FpPoly::monomial(p, 1, 11),
        },
    };
    let bounds = [
        (&affine.a1, 2),
        (&affine.a2, 4),
        (&affine.a3, 6),
        (&affine.a4, 8),
        (&affine.a6, 12),
    ];
    for (a, bound) in bounds {
        if a.degree().unwrap_or(0) > bound {
            return Err(Error::Inconsistent(format!(
                "coefficient {a} exceeds degree {bound}"
            )));
        }
    }
    let infinity = WeierstrassCoeffs {
        a1: affine.a1.reverse(2),
        a2: affine.a2.reverse(4),
        a3: affine.a3.reverse(6),
        a4: affine.a4.reverse(8),
        a6: affine.a6.reverse(12),
    };
    let param = if kind == ModelKind::Uniform { 0 } else { param };
    Ok(WeierstrassModel {
        p,
        kind,
        param,
        affine,
        infinity,
    })
}

impl WeierstrassModel {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn param(&self) -> u64 {
        self.param
    }

    pub fn affine(&self) -> &WeierstrassCoeffs {
        &self.affine
    }

    pub fn infinity_chart(&self) -> &WeierstrassCoeffs {
        &self.infinity
    }
}

/// `c4` and discriminant of the affine model as polynomials in `t`.
pub fn c4_delta(model: &WeierstrassModel) -> (FpPoly, FpPoly) {
    model.affine.c4_delta()
}

/// Counts `F_q`-points on single fibres, reusing one character table.
pub struct FiberCounter<'a> {
    model: &'a WeierstrassModel,
    spec: &'a FieldSpec,
    // absent in characteristic 2, where fibres are counted by brute force
    chi: Option<CharacterTable>,
}

impl<'a> FiberCounter<'a> {
    pub fn new(model: &'a WeierstrassModel, spec: &'a FieldSpec) -> Result<Self> {
        if spec.characteristic() != model.p {
            return Err(Error::InvalidInput(format!(
                "field of characteristic {} does not extend F_{}",
                spec.characteristic(),
                model.p
            )));
        }
        let chi = if model.p == 2 {
            None
        } else {
            Some(spec.character_table()?)
        };
        Ok(FiberCounter { model, spec, chi })
    }

    /// Projective points of the Weierstrass cubic over `F_q`, including the
    /// point at infinity of the cubic.
    pub fn count(&self, loc: FiberLocation) -> u64 {
        let cubic = match loc {
            FiberLocation::Affine(t) => self.model.affine.specialize(self.spec, &t),
            FiberLocation::Infinity => self.model.infinity.specialize(self.spec, &self.spec.zero()),
        };
        let f = self.spec;
        match &self.chi {
            Some(chi) => {
                // 4 * (y + (a1 x + a3)/2)^2 = (a1 x + a3)^2 + 4 (x^3 + a2 x^2 + a4 x + a6)
                let four = f.from_base(4);
                let sum: i64 = f
                    .elements()
                    .map(|x| {
                        let lin = f.add(&f.mul(&cubic.a1, &x), &cubic.a3);
                        let cub = cubic_rhs(f, &cubic, &x);
                        let disc = f.add(&f.square(&lin), &f.mul(&four, &cub));
                        chi.get(f, &disc) as i64
                    })
                    .sum();
                (1 + f.order() as i64 + sum) as u64
            }
            None => {
                let mut n = 1;
                for x in f.elements() {
                    let rhs = cubic_rhs(f, &cubic, &x);
                    let lin = f.add(&f.mul(&cubic.a1, &x), &cubic.a3);
                    for y in f.elements() {
                        if f.mul(&y, &f.add(&y, &lin)) == rhs {
                            n += 1;
                        }
                    }
                }
                n
            }
        }
    }
}

fn cubic_rhs(f: &FieldSpec, c: &FiberCubic, x: &FieldElement) -> FieldElement {
    // ((x + a2) x + a4) x + a6
    let acc = f.add(x, &c.a2);
    let acc = f.add(&f.mul(&acc, x), &c.a4);
    f.add(&f.mul(&acc, x), &c.a6)
}

/// Points of the fibre over `loc`, counted on the Weierstrass cubic.
pub fn fiber_count(model: &WeierstrassModel, loc: FiberLocation, spec: &FieldSpec) -> Result<u64> {
    if let FiberLocation::Affine(t) = &loc {
        if !spec.contains(t) {
            return Err(Error::InvalidInput(format!(
                "{t:?} is not in F_{}",
                spec.order()
            )));
        }
    }
    Ok(FiberCounter::new(model, spec)?.count(loc))
}

/// `#X(F_q)` by summing fibre counts over `P^1(F_q)`.
///
/// Only valid when every singular fibre is irreducible (types `I_1` and
/// `II`), so that the Weierstrass surface is already the smooth model;
/// otherwise refuses with [`Error::ReducibleFiber`].
pub fn surface_count(model: &WeierstrassModel, spec: &FieldSpec) -> Result<u64> {
    let counter = FiberCounter::new(model, spec)?;
    for fiber in classify_fibers(model)? {
        if !matches!(fiber.kind, KodairaType::I(1) | KodairaType::II) {
            return Err(Error::ReducibleFiber {
                fiber: fiber.to_string(),
            });
        }
    }
    let affine: u64 = (0..spec.order() as usize)
        .into_par_iter()
        .map(|i| counter.count(FiberLocation::Affine(spec.from_index(i))))
        .sum();
    Ok(affine + counter.count(FiberLocation::Infinity))
}
