//! Point counts split by the order-11 automorphism, and the characteristic
//! polynomial of Frobenius they determine.
//!
//! On the epsilon and gamma models the automorphism is the translation
//! `t -> t + 1`. An affine pair `(x, y)` over `F_q` determines `t` up to the
//! Artin-Schreier equation `t^11 - t = c`, and the pair is fixed by
//! `phi^n o Frob_q` exactly when `n = -Tr(c)`. Each such pair lifts to 11
//! points, so it adds 11 to one bucket.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::cyclotomic::{inverse_dft, CycNum, EigenTraces, DIM, ORDER};
use crate::ffield::FieldSpec;
use crate::polynomials::{IntPoly, Poly};
use crate::surface::{make_model, ModelKind, WeierstrassModel};
use crate::{Error, Result};

/// The characteristic carrying the wild automorphism.
pub const WILD_PRIME: u64 = 11;

/// Maps `Tr(c)` to the bucket it feeds.
pub type BucketRule = fn(u64) -> usize;

/// `n = -Tr(c) mod 11`.
pub fn bucket_index(trace: u64) -> usize {
    ((ORDER as u64 - trace % ORDER as u64) % ORDER as u64) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixTally {
    pub q: u64,
    pub fix: [u64; ORDER],
}

impl FixTally {
    /// Bucket sum and per-bucket congruence. Tallies built here always pass;
    /// hand-built ones need not.
    pub fn verify(&self) -> Result<()> {
        let q = self.q;
        let boundary = 2 * q + 1;
        let expected = ORDER as u64 * (boundary + q * q);
        let total: u64 = self.fix.iter().sum();
        if total != expected {
            return Err(Error::Inconsistent(format!(
                "tally sum {total} differs from 11(2q+1) + 11q^2 = {expected}"
            )));
        }
        if let Some(n) = (0..ORDER).find(|&n| self.fix[n] % ORDER as u64 != boundary % ORDER as u64)
        {
            return Err(Error::Inconsistent(format!(
                "Fix_{n} = {} not = 2q+1 mod 11",
                self.fix[n]
            )));
        }
        Ok(())
    }
}

fn tally_precheck(model: &WeierstrassModel, spec: &FieldSpec) -> Result<()> {
    if model.kind() == ModelKind::Uniform {
        return Err(Error::Unsupported(
            "equivariant tally for the uniform model (no translation automorphism)".into(),
        ));
    }
    if model.characteristic() != WILD_PRIME {
        return Err(Error::Unsupported(format!(
            "equivariant tally in characteristic {} (needs 11)",
            model.characteristic()
        )));
    }
    if spec.characteristic() != WILD_PRIME {
        return Err(Error::InvalidInput(format!(
            "field of characteristic {} for a model over F_11",
            spec.characteristic()
        )));
    }
    if spec.degree() > 2 {
        return Err(Error::Unsupported(format!(
            "equivariant tally over F_11^{}",
            spec.degree()
        )));
    }
    Ok(())
}

pub fn fixed_locus_tally(model: &WeierstrassModel, spec: &FieldSpec) -> Result<FixTally> {
    fixed_locus_tally_with_rule(model, spec, bucket_index)
}

/// [`fixed_locus_tally`] with a caller-supplied bucket rule; only negative
/// controls should pass anything but [`bucket_index`].
pub fn fixed_locus_tally_with_rule(
    model: &WeierstrassModel,
    spec: &FieldSpec,
    rule: BucketRule,
) -> Result<FixTally> {
    tally_precheck(model, spec)?;
    let q = spec.order();
    let param = spec.from_base(model.param());
    let kind = model.kind();
    let squares: Vec<_> = spec.elements().map(|y| spec.square(&y)).collect();

    let counts = (0..q as usize)
        .into_par_iter()
        .fold(
            || [0u64; ORDER],
            |mut acc, ix| {
                let x = spec.from_index(ix);
                let x2 = spec.square(&x);
                let x3 = spec.mul(&x2, &x);
                let tail = match kind {
                    ModelKind::Epsilon => spec.mul(&param, &x2),
                    _ => spec.mul(&param, &x),
                };
                let rhs = spec.add(&x3, &tail);
                for y2 in &squares {
                    let c = spec.sub(y2, &rhs);
                    acc[rule(spec.trace_to_base(&c))] += 1;
                }
                acc
            },
        )
        .reduce(
            || [0u64; ORDER],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let boundary = 2 * q + 1;
    Ok(FixTally {
        q,
        fix: counts.map(|c| boundary + ORDER as u64 * c),
    })
}

/// `tr_n = Fix_n - 1 - q^2`.
pub fn traces_from_tally(tally: &FixTally) -> [i64; ORDER] {
    let base = 1 + tally.q as i64 * tally.q as i64;
    tally.fix.map(|f| f as i64 - base)
}

/// `T^2 - a T + b` on the `zeta^i` eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenFactor {
    pub i: usize,
    pub a: CycNum,
    pub b: CycNum,
}

impl EigenFactor {
    pub fn poly(&self) -> Poly<CycNum> {
        Poly::new(vec![self.b.clone(), -&self.a, CycNum::one()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyResult {
    pub p: u64,
    /// Degree 20, Frobenius on the complement of `U`.
    pub mu: IntPoly,
    /// Degree 22, `(T - p)^2 mu`.
    pub mu_full: IntPoly,
    pub per_eigenspace: Vec<EigenFactor>,
}

impl CharPolyResult {
    /// `prod b_i`, the determinant of Frobenius on the complement.
    pub fn determinant(&self) -> Result<BigInt> {
        let prod = self
            .per_eigenspace
            .iter()
            .fold(CycNum::one(), |acc, f| &acc * &f.b);
        prod.as_integer()
            .ok_or_else(|| Error::NonIntegral(format!("product of b_i = {prod}")))
    }

    /// Characteristic polynomial of `Frob_q^2` on the same space.
    pub fn mu_squared_frobenius(&self) -> Result<IntPoly> {
        let factors = self.per_eigenspace.iter().map(|f| {
            let two = CycNum::integer(2);
            let a2 = &(&f.a * &f.a) - &(&two * &f.b);
            EigenFactor {
                i: f.i,
                a: a2,
                b: &f.b * &f.b,
            }
        });
        expand_integral(factors)
    }
}

fn expand_integral(factors: impl Iterator<Item = EigenFactor>) -> Result<IntPoly> {
    let prod = factors.fold(Poly::<CycNum>::one(), |acc, f| &acc * &f.poly());
    let coeffs = prod
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            c.as_integer()
                .ok_or_else(|| Error::NonIntegral(format!("coefficient of T^{j} is {c}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

pub fn assemble_charpoly(e_p: &EigenTraces, e_p2: &EigenTraces, p: u64) -> Result<CharPolyResult> {
    if e_p.q != p || e_p2.q != p * p {
        return Err(Error::InvalidInput(format!(
            "eigentraces at q = {}, {} for p = {p}",
            e_p.q, e_p2.q
        )));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let per_eigenspace = (1..=DIM)
        .map(|i| {
            let a = e_p.get(i).clone();
            let b = (&(&a * &a) - e_p2.get(i)).scale(&half);
            if !b.is_integral() {
                return Err(Error::NonIntegral(format!("b_{i} = {b}")));
            }
            Ok(EigenFactor { i, a, b })
        })
        .collect::<Result<Vec<_>>>()?;
    let mu = expand_integral(per_eigenspace.iter().cloned())?;
    let linear = IntPoly::new(vec![-BigInt::from(p), BigInt::one()]);
    let mu_full = &(&linear * &linear) * &mu;
    Ok(CharPolyResult {
        p,
        mu,
        mu_full,
        per_eigenspace,
    })
}

/// Everything computed for one surface of a family.
#[derive(Clone, Debug)]
pub struct EquivariantRun {
    pub model: WeierstrassModel,
    pub tally_p: FixTally,
    pub tally_p2: FixTally,
    pub eigen_p: EigenTraces,
    pub eigen_p2: EigenTraces,
    pub charpoly: CharPolyResult,
}

/// Both tallies (run concurrently), the eigentraces and `mu` for one member
/// of the epsilon or gamma family over `F_11`.
pub fn run_equivariant(kind: ModelKind, param: u64) -> Result<EquivariantRun> {
    run_equivariant_with_rules(kind, param, bucket_index, bucket_index)
}

/// [`run_equivariant`] with separate bucket rules at `q = p` and `q = p^2`.
pub fn run_equivariant_with_rules(
    kind: ModelKind,
    param: u64,
    rule_p: BucketRule,
    rule_p2: BucketRule,
) -> Result<EquivariantRun> {
    let p = WILD_PRIME;
    let model = make_model(kind, param, p)?;
    let f1 = FieldSpec::prime(p)?;
    let f2 = FieldSpec::new(p, 2)?;
    let (t1, t2) = rayon::join(
        || fixed_locus_tally_with_rule(&model, &f1, rule_p),
        || fixed_locus_tally_with_rule(&model, &f2, rule_p2),
    );
    let (tally_p, tally_p2) = (t1?, t2?);
    let eigen_p = inverse_dft(&traces_from_tally(&tally_p), p)?;
    let eigen_p2 = inverse_dft(&traces_from_tally(&tally_p2), p * p)?;
    let charpoly = assemble_charpoly(&eigen_p, &eigen_p2, p)?;
    Ok(EquivariantRun {
        model,
        tally_p,
        tally_p2,
        eigen_p,
        eigen_p2,
        charpoly,
    })
}

/// `1 + 2q + sum_i a_i(q) + q^2`.
pub fn reconstructed_count(e: &EigenTraces) -> Result<BigInt> {
    let q = BigInt::from(e.q);
    Ok(BigInt::one() + BigInt::from(2) * &q + e.trace_sum()? + &q * &q)
}
