//! Singular fibres and the trivial lattice.
//!
//! For `p >= 5` the Kodaira type of a fibre is determined by the pair
//! `(v(c4), v(Delta))` once the model is minimal at the place, which is the
//! lookup form of Tate's algorithm used here. Characteristics 2 and 3 are
//! refused; for the uniform model [`wild_delta_report`] does the discriminant
//! bookkeeping instead.

use std::fmt;

use crate::ffield::poly::FpPoly;
use crate::surface::{ModelKind, WeierstrassCoeffs, WeierstrassModel};
use crate::{Error, Result};

/// Euler number of the fibre plus wild conductor, summed over the base.
pub const K3_DISCRIMINANT_DEGREE: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
    UndeterminedWild,
}

impl KodairaType {
    /// Number of irreducible components `m_v`.
    pub fn components(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
            KodairaType::UndeterminedWild => 1,
        }
    }

    /// Root lattice spanned by the components not meeting the zero section.
    pub fn root_lattice(&self) -> Option<RootLattice> {
        match *self {
            KodairaType::I(n) if n >= 2 => Some(RootLattice::A(n - 1)),
            KodairaType::III => Some(RootLattice::A(1)),
            KodairaType::IV => Some(RootLattice::A(2)),
            KodairaType::IStar(n) => Some(RootLattice::D(n + 4)),
            KodairaType::IVStar => Some(RootLattice::E(6)),
            KodairaType::IIIStar => Some(RootLattice::E(7)),
            KodairaType::IIStar => Some(RootLattice::E(8)),
            _ => None,
        }
    }

    /// Tame discriminant valuation (Euler number of the fibre).
    pub fn euler_number(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
            KodairaType::UndeterminedWild => 0,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::UndeterminedWild => write!(f, "wild"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLattice {
    A(u32),
    D(u32),
    E(u32),
}

impl RootLattice {
    pub fn rank(&self) -> u32 {
        match *self {
            RootLattice::A(n) | RootLattice::D(n) | RootLattice::E(n) => n,
        }
    }

    /// Absolute value of the discriminant.
    pub fn abs_disc(&self) -> u64 {
        match *self {
            RootLattice::A(n) => n as u64 + 1,
            RootLattice::D(_) => 4,
            RootLattice::E(n) => 9 - n as u64,
        }
    }
}

impl fmt::Display for RootLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLattice::A(n) => write!(f, "A{n}"),
            RootLattice::D(n) => write!(f, "D{n}"),
            RootLattice::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceLocation {
    /// `t = a` with `a in F_p`.
    Rational(u64),
    Infinity,
    /// The closed point cut out by a monic irreducible of degree > 1.
    Closed(FpPoly),
}

impl fmt::Display for PlaceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceLocation::Rational(a) => write!(f, "t={a}"),
            PlaceLocation::Infinity => write!(f, "t=inf"),
            PlaceLocation::Closed(g) => write!(f, "{g}=0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPlace {
    pub location: PlaceLocation,
    /// Degree of the closed point, i.e. the number of geometric fibres.
    pub degree: u32,
    pub vdelta: u32,
    /// `None` when `c4` vanishes identically.
    pub vc4: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaFiber {
    pub place: FiberPlace,
    pub kind: KodairaType,
}

impl KodairaFiber {
    pub fn components(&self) -> u32 {
        self.kind.components()
    }
}

impl fmt::Display for KodairaFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.place.location)?;
        if self.place.degree > 1 {
            write!(f, " (x{})", self.place.degree)?;
        }
        Ok(())
    }
}

/// Kodaira type from `(v(c4), v(Delta))`, valid for residue characteristic
/// at least 5. `vc4 = None` means `c4 = 0`.
pub fn type_from_valuations(vc4: Option<u32>, vdelta: u32) -> Result<Option<KodairaType>> {
    let mut vc4 = vc4.unwrap_or(u32::MAX);
    let mut vdelta = vdelta;
    // non-minimal at this place: rescale x -> s^2 x, y -> s^3 y
    while vc4 >= 4 && vdelta >= 12 {
        vc4 = vc4.saturating_sub(4);
        vdelta -= 12;
    }
    let kind = match (vc4, vdelta) {
        (_, 0) => return Ok(None),
        (0, n) => KodairaType::I(n),
        (_, 2) => KodairaType::II,
        (_, 3) => KodairaType::III,
        (_, 4) => KodairaType::IV,
        (c, 6) if c >= 2 => KodairaType::IStar(0),
        (2, n) if n > 6 => KodairaType::IStar(n - 6),
        (c, 8) if c >= 3 => KodairaType::IVStar,
        (3, 9) => KodairaType::IIIStar,
        (c, 10) if c >= 4 => KodairaType::IIStar,
        (c, n) => {
            return Err(Error::Inconsistent(format!(
                "no Kodaira type with v(c4) = {c}, v(Delta) = {n} in characteristic >= 5"
            )))
        }
    };
    Ok(Some(kind))
}

fn check_tame(p: u64) -> Result<()> {
    if p < 5 {
        return Err(Error::Unsupported(format!(
            "fibre classification in characteristic {p} (wild ramification)"
        )));
    }
    Ok(())
}

fn affine_places(coeffs: &WeierstrassCoeffs) -> Result<Vec<KodairaFiber>> {
    let (c4, delta) = coeffs.c4_delta();
    if delta.is_zero() {
        return Err(Error::InvalidInput(
            "singular generic fibre (Delta = 0)".into(),
        ));
    }
    let mut out = Vec::new();
    for (factor, vdelta) in delta.factor()? {
        let degree = factor.degree().unwrap_or(0) as u32;
        let vc4 = c4.valuation(&factor);
        let kind = type_from_valuations(vc4, vdelta)?.ok_or_else(|| {
            Error::Inconsistent(format!("factor {factor} of Delta has valuation 0"))
        })?;
        let location = if degree == 1 {
            // monic t + c
            let p = factor.characteristic();
            PlaceLocation::Rational((p - factor.coeff(0)) % p)
        } else {
            PlaceLocation::Closed(factor)
        };
        out.push(KodairaFiber {
            place: FiberPlace {
                location,
                degree,
                vdelta,
                vc4,
            },
            kind,
        });
    }
    Ok(out)
}

fn infinity_place(coeffs: &WeierstrassCoeffs) -> Result<Option<KodairaFiber>> {
    let (c4, delta) = coeffs.c4_delta();
    let vdelta = delta
        .valuation_at_zero()
        .ok_or_else(|| Error::InvalidInput("singular generic fibre (Delta = 0)".into()))?;
    let vc4 = c4.valuation_at_zero();
    Ok(type_from_valuations(vc4, vdelta)?.map(|kind| KodairaFiber {
        place: FiberPlace {
            location: PlaceLocation::Infinity,
            degree: 1,
            vdelta,
            vc4,
        },
        kind,
    }))
}

/// All singular fibres, `t = inf` first, then the affine places ordered by
/// degree and coefficients of the defining factor.
pub fn classify_fibers(model: &WeierstrassModel) -> Result<Vec<KodairaFiber>> {
    check_tame(model.characteristic())?;
    let mut out: Vec<KodairaFiber> = infinity_place(model.infinity_chart())?
        .into_iter()
        .collect();
    out.extend(affine_places(model.affine())?);
    Ok(out)
}

/// `sum_v deg(v) * v(Delta)` over all singular places, including infinity.
pub fn discriminant_degree(fibers: &[KodairaFiber]) -> u32 {
    fibers.iter().map(|f| f.place.degree * f.place.vdelta).sum()
}

/// Discriminant bookkeeping for the uniform model in characteristic 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildDeltaReport {
    pub p: u64,
    /// Affine discriminant reduced mod `p`.
    pub delta: FpPoly,
    pub affine_degree: u32,
    pub v_infinity: u32,
    /// Euler number of the fibre at infinity, taken to be type II.
    pub tame_at_infinity: u32,
    /// `v_inf(Delta) - tame_at_infinity`, the wild part of the conductor.
    pub wild_index: u32,
}

pub fn wild_delta_report(model: &WeierstrassModel) -> Result<WildDeltaReport> {
    let p = model.characteristic();
    if model.kind() != ModelKind::Uniform {
        return Err(Error::Unsupported(format!(
            "wild discriminant report for the {} model",
            model.kind()
        )));
    }
    if p != 2 && p != 3 {
        return Err(Error::InvalidInput(format!(
            "characteristic {p} is tame; use fibre classification"
        )));
    }
    let (_, delta) = model.affine().c4_delta();
    let (_, delta_inf) = model.infinity_chart().c4_delta();
    let affine_degree = delta.degree().unwrap_or(0) as u32;
    let v_infinity = delta_inf
        .valuation_at_zero()
        .ok_or_else(|| Error::Inconsistent("Delta vanishes identically".into()))?;
    let tame_at_infinity = KodairaType::II.euler_number();
    let wild_index = v_infinity.checked_sub(tame_at_infinity).ok_or_else(|| {
        Error::Inconsistent(format!(
            "v_inf(Delta) = {v_infinity} below the type II minimum"
        ))
    })?;
    Ok(WildDeltaReport {
        p,
        delta,
        affine_degree,
        v_infinity,
        tame_at_infinity,
        wild_index,
    })
}

/// Trivial lattice `U + sum_v T_v` of a jacobian elliptic surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSummary {
    pub rank: u32,
    pub abs_disc: u64,
    pub components: Vec<RootLattice>,
}

impl fmt::Display for LatticeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U")?;
        for c in &self.components {
            write!(f, " + {c}")?;
        }
        write!(f, " (rank {}, |disc| {})", self.rank, self.abs_disc)
    }
}

pub fn trivial_lattice(fibers: &[KodairaFiber]) -> Result<LatticeSummary> {
    let mut rank = 2;
    let mut abs_disc = 1u64;
    let mut components = Vec::new();
    for f in fibers {
        if let Some(root) = f.kind.root_lattice() {
            for _ in 0..f.place.degree {
                rank += root.rank();
                abs_disc *= root.abs_disc();
                components.push(root);
            }
        }
    }
    if rank > 22 {
        return Err(Error::Inconsistent(format!(
            "trivial lattice of rank {rank} > 22"
        )));
    }
    components.sort();
    Ok(LatticeSummary {
        rank,
        abs_disc,
        components,
    })
}

/// `sigma` with `|disc| = p^(2 sigma)` for a rank-22 lattice; `None` when the
/// rank is smaller or the discriminant is not an even power of `p`.
pub fn artin_invariant(ls: &LatticeSummary, p: u64) -> Option<u32> {
    if ls.rank != 22 || p < 2 {
        return None;
    }
    let mut d = ls.abs_disc;
    let mut e = 0;
    while d.is_multiple_of(p) {
        d /= p;
        e += 1;
    }
    (d == 1 && e > 0 && e % 2 == 0).then_some(e / 2)
}
