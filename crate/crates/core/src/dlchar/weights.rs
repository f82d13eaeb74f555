//! Weight partitions: group the v-exponents of a graded virtual character
//! by the reduction of the eigenvalue `(√q)^{δ i}` modulo ℓ. Two exponents
//! collide exactly when they agree modulo the multiplicative order of
//! `(√q)^δ` in `F̄_ℓ`, so a partition is a residue decomposition.

use crate::algebra::ff::{ff_order, ff_sqrt, FFElem};
use crate::error::{Error, Result};
use crate::dlchar::uniform::UniformVirtual;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SqrtChoice {
    #[default]
    Canonical,
    Other,
}

/// Pick the square root of q mod ℓ per the choice flag.
pub fn chosen_sqrt(q: u64, ell: u64, choice: SqrtChoice) -> Result<FFElem> {
    let s = ff_sqrt(q, ell)?;
    Ok(match choice {
        SqrtChoice::Canonical => s,
        SqrtChoice::Other => s.neg(),
    })
}

#[derive(Clone, Debug)]
pub struct WeightClass {
    /// Exponent residue modulo the period.
    pub residue: u64,
    /// The common eigenvalue `(√q)^{δ·residue}` in `F_ℓ` or `F_{ℓ²}`.
    pub lambda: FFElem,
    /// Exponents of the input falling in this class.
    pub exponents: Vec<i64>,
    /// Restriction of the input to those exponents.
    pub component: UniformVirtual,
}

#[derive(Clone, Debug)]
pub struct WeightPartition {
    pub q: u64,
    pub ell: u64,
    pub delta: u32,
    pub choice: SqrtChoice,
    /// The chosen square root of q in `F_ℓ` or `F_{ℓ²}`.
    pub sqrt: FFElem,
    /// Multiplicative order of `(√q)^δ`: exponents are classed modulo this.
    pub period: u64,
    pub classes: Vec<WeightClass>,
}

/// Partition the occurring exponents of `u` into λ̄-classes.
pub fn weight_partition(
    u: &UniformVirtual,
    q: u64,
    ell: u64,
    p: u64,
    delta: u32,
    choice: SqrtChoice,
) -> Result<WeightPartition> {
    if ell == p {
        return Err(Error::InvalidModulus(format!(
            "ℓ = {ell} equals the defining characteristic"
        )));
    }
    let s = chosen_sqrt(q, ell, choice)?;
    let sd = s.pow(delta as u64);
    let period = ff_order(&sd)?;
    let mut classes = Vec::new();
    let exps = u.occurring_exponents();
    for residue in 0..period {
        let exponents: Vec<i64> = exps
            .iter()
            .copied()
            .filter(|e| e.rem_euclid(period as i64) as u64 == residue)
            .collect();
        if exponents.is_empty() {
            continue;
        }
        let component = u.restrict_exponents(|e| e.rem_euclid(period as i64) as u64 == residue);
        classes.push(WeightClass {
            residue,
            lambda: sd.pow(residue),
            exponents,
            component,
        });
    }
    Ok(WeightPartition {
        q,
        ell,
        delta,
        choice,
        sqrt: s,
        period,
        classes,
    })
}

impl WeightPartition {
    /// The classes partition the input: components sum back exactly.
    pub fn reassemble(&self, group: &std::sync::Arc<crate::coxeter::weyl::WeylGroup>) -> UniformVirtual {
        let mut acc = UniformVirtual::zero(group.clone());
        for c in &self.classes {
            acc = acc.add(&c.component);
        }
        acc
    }
}
