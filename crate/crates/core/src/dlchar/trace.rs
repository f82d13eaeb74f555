//! The v = 1 trace map for split data, through the character table:
//! `tr(f) = Σ_E tr(f|_{v=1}, E) · R_E` with the almost characters expanded
//! as `R_E = |W|^{-1} Σ_w χ_E(w) R_w`, and the identity
//! `tr(H̲_w)|₁ = Σ_y h_{y,w}(1) R_y` checked against the sign pattern of
//! `ch ∘ b`.
//!
//! Class functions are returned in the `R_y` basis indexed by conjugacy
//! classes; all division is exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coxeter::chars::CharTable;
use crate::coxeter::weyl::ElemId;
use crate::error::{Error, Result};
use crate::hecke::elem::HeckeElem;
use crate::hecke::kl::KLTable;
use crate::dlchar::uniform::UniformVirtual;

/// `tr(h)` at v = 1 as a class-function vector over the classes of the
/// table: the coefficient of `R_K`.
pub fn tr_map(h: &HeckeElem, ct: &CharTable) -> Result<Vec<BigInt>> {
    let group = h.group();
    if !group.datum().tau_is_trivial() {
        return Err(Error::UnsupportedTwisted("the trace map needs split data".into()));
    }
    let order = BigInt::from(group.order());
    // v = 1 specialization of the coefficients
    let one = BigInt::one();
    let mut spec: Vec<(usize, BigInt)> = Vec::new();
    for (w, p) in h.iter() {
        spec.push((ct.class_of[w.index()], p.eval_int(&one)?));
    }
    // c_E = Σ_w c_w(1) χ_E(w)
    let c_e: Vec<BigInt> = ct
        .values
        .iter()
        .map(|row| {
            spec.iter()
                .map(|(k, c)| c * BigInt::from(row[*k]))
                .sum::<BigInt>()
        })
        .collect();
    // coefficient of R_K: |K|/|W| · Σ_E c_E χ_E(K)
    let mut out = Vec::with_capacity(ct.num_classes());
    for k in 0..ct.num_classes() {
        let mut acc = BigInt::zero();
        for (e, row) in ct.values.iter().enumerate() {
            acc += &c_e[e] * BigInt::from(row[k]);
        }
        acc *= BigInt::from(ct.classes[k].len());
        let (q, r) = num_integer::Integer::div_rem(&acc, &order);
        if !r.is_zero() {
            return Err(Error::IdentityViolation(
                "trace coefficient is not integral".into(),
            ));
        }
        out.push(q);
    }
    Ok(out)
}

/// v = 1 specialization of a uniform virtual character on the unipotent
/// part, with the Euler sign rule `ρ_y ↦ (−1)^{ℓ(y)} R_y`.
pub fn v1_class_vector(u: &UniformVirtual, ct: &CharTable) -> Result<Vec<BigInt>> {
    let group = u.group();
    let one = BigInt::one();
    let mut out = vec![BigInt::zero(); ct.num_classes()];
    for ((y, theta), p) in u.iter() {
        if !theta.is_trivial() {
            return Err(Error::InvalidDatum(
                "v = 1 specialization is defined on the unipotent part".into(),
            ));
        }
        let mut val = p.eval_int(&one)?;
        if group.length(*y) % 2 == 1 {
            val = -val;
        }
        out[ct.class_of[y.index()]] += val;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TrReport {
    pub w_word: Vec<u8>,
    pub sign: i64,
    pub lhs: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
    pub pass: bool,
}

/// Check `tr(H̲_w)|₁ = (−1)^{ℓ(w)} (ch ∘ b)(H̲_w)|₁` and, equivalently,
/// `tr(H̲_w)|₁ = Σ_y h_{y,w}(1) R_y`; reports the observed sign.
pub fn tr_identity_check(table: &KLTable, ct: &CharTable, w: ElemId) -> Result<TrReport> {
    let group = table.group();
    let lhs = tr_map(&table.kl_basis(w), ct)?;
    // (ch ∘ b)(H̲_w) = ch(H̲̃_w)
    let rhs_graded = UniformVirtual::ch_unip(&table.kl_basis(w).invol_b());
    let rhs = v1_class_vector(&rhs_graded, ct)?;
    let sign: i64 = if group.length(w) % 2 == 1 { -1 } else { 1 };
    let signed_rhs: Vec<BigInt> = rhs.iter().map(|x| x * BigInt::from(sign)).collect();
    let mut pass = lhs == signed_rhs;

    // independent form: Σ_{y ≤ w} h_{y,w}(1) on each class
    let mut direct = vec![BigInt::zero(); ct.num_classes()];
    let one = BigInt::one();
    for (y, p) in table.row(w) {
        direct[ct.class_of[y.index()]] += p.eval_int(&one)?;
    }
    pass &= lhs == direct;

    Ok(TrReport {
        w_word: group.word(w).to_vec(),
        sign,
        lhs,
        rhs,
        pass,
    })
}
