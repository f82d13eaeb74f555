//! The monodromic Hecke algebra, block by geometric class.
//!
//! A block is spanned by `H_{w,χ} = H_w 1_χ` where `w` runs over the group
//! and `χ` over the W-orbit of character data attached to the class. The
//! idempotents are orthogonal (`1_χ 1_{χ'} = δ 1_χ`), generators move them
//! (`T_w 1_χ = 1_{wχ} T_w`), and the quadratic relation depends on whether
//! the simple reflection fixes the character at the point of application:
//!
//! * `sχ = χ`:  `(H_s 1_χ)² = 1_χ + (v^{-1} − v) H_s 1_χ`  (the unipotent rule);
//! * `sχ ≠ χ`:  `H_s 1_{sχ} · H_s 1_χ = 1_χ`  (the free rule).
//!
//! On the trivial class this reproduces the generic Hecke algebra exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::laurent::LaurentPoly;
use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};
use crate::exec::{map_slice, ExecMode};
use crate::torus::series::{orbit_of, CharVector, GeomClass};

/// Basis index inside a block: the pair `(w, orbit position of χ)`.
pub type PairIdx = (ElemId, usize);

#[derive(Debug)]
pub struct MonoBlock {
    group: Arc<WeylGroup>,
    /// The W-orbit of character data, sorted canonically.
    orbit: Vec<CharVector>,
    /// `action[c][s]` = orbit index of `φ_c ∘ M_s` (the s-action on data).
    action: Vec<Vec<usize>>,
    /// `fixed[c]` bitmask: bit `s` set when `s` fixes `φ_c`.
    fixed: Vec<u32>,
}

impl MonoBlock {
    /// Build the block of a geometric class.
    pub fn build(group: &Arc<WeylGroup>, class: &GeomClass) -> Arc<MonoBlock> {
        MonoBlock::from_rep(group, &class.rep)
    }

    pub fn from_rep(group: &Arc<WeylGroup>, rep: &CharVector) -> Arc<MonoBlock> {
        let orbit = orbit_of(group, rep);
        let rank = group.rank();
        let n = group.num_simple();
        let mut action = Vec::with_capacity(orbit.len());
        let mut fixed = Vec::with_capacity(orbit.len());
        for phi in &orbit {
            let mut row = Vec::with_capacity(n);
            let mut mask = 0u32;
            for s in 0..n {
                let img = phi.precompose(group.matrix(group.simple(s)), rank);
                let idx = orbit.binary_search(&img).expect("orbit is action-closed");
                if idx == orbit.binary_search(phi).unwrap() {
                    mask |= 1 << s;
                }
                row.push(idx);
            }
            action.push(row);
            fixed.push(mask);
        }
        Arc::new(MonoBlock {
            group: group.clone(),
            orbit,
            action,
            fixed,
        })
    }

    /// Block of the trivial (unipotent) class.
    pub fn unipotent(group: &Arc<WeylGroup>) -> Arc<MonoBlock> {
        MonoBlock::from_rep(group, &CharVector::trivial(group.rank()))
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn orbit(&self) -> &[CharVector] {
        &self.orbit
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }

    /// Number of basis pairs: `|W| · |orbit|`.
    pub fn basis_size(&self) -> usize {
        self.group.order() * self.orbit.len()
    }

    pub fn basis(&self) -> Vec<PairIdx> {
        let mut out = Vec::with_capacity(self.basis_size());
        for w in self.group.elements() {
            for c in 0..self.orbit.len() {
                out.push((w, c));
            }
        }
        out
    }

    pub fn char_index(&self, phi: &CharVector) -> Option<usize> {
        self.orbit.binary_search(phi).ok()
    }

    /// Does the simple reflection `s` fix the character datum `c`?
    pub fn s_fixes(&self, c: usize, s: usize) -> bool {
        self.fixed[c] >> s & 1 == 1
    }

    pub fn apply_s(&self, c: usize, s: usize) -> usize {
        self.action[c][s]
    }

    fn same_block(&self, other: &MonoBlock) -> bool {
        self.group.signature() == other.group.signature() && self.orbit == other.orbit
    }

    /// Total order on basis pairs compatible with the Bruhat grading.
    fn pair_key(&self, (w, c): PairIdx) -> (u32, usize) {
        (w.0, c)
    }
}

#[derive(Clone)]
pub struct MonoElem {
    block: Arc<MonoBlock>,
    terms: BTreeMap<PairIdx, LaurentPoly>,
}

impl PartialEq for MonoElem {
    fn eq(&self, other: &Self) -> bool {
        self.block.same_block(&other.block) && self.terms == other.terms
    }
}

impl Eq for MonoElem {}

impl MonoElem {
    pub fn zero(block: Arc<MonoBlock>) -> Self {
        MonoElem {
            block,
            terms: BTreeMap::new(),
        }
    }

    /// `H_{w,χ}`.
    pub fn std_basis(block: Arc<MonoBlock>, w: ElemId, c: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((w, c), LaurentPoly::one());
        MonoElem { block, terms }
    }

    /// The idempotent `1_χ`.
    pub fn idempotent(block: Arc<MonoBlock>, c: usize) -> Self {
        MonoElem::std_basis(block, ElemId::IDENTITY, c)
    }

    /// The unit of the block, `Σ_χ 1_χ`.
    pub fn unit(block: Arc<MonoBlock>) -> Self {
        let mut terms = BTreeMap::new();
        for c in 0..block.orbit_size() {
            terms.insert((ElemId::IDENTITY, c), LaurentPoly::one());
        }
        MonoElem { block, terms }
    }

    pub fn block(&self) -> &Arc<MonoBlock> {
        &self.block
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: PairIdx) -> LaurentPoly {
        self.terms.get(&idx).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PairIdx, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, idx: PairIdx, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(LaurentPoly::zero);
        *entry = &*entry + p;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, rhs: &MonoElem) -> Result<MonoElem> {
        self.check_block(rhs)?;
        let mut out = self.clone();
        for (idx, p) in &rhs.terms {
            out.add_term(*idx, p);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &MonoElem) -> Result<MonoElem> {
        self.check_block(rhs)?;
        let mut out = self.clone();
        for (idx, p) in &rhs.terms {
            out.add_term(*idx, &-p);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> MonoElem {
        if c.is_zero() {
            return MonoElem::zero(self.block.clone());
        }
        let terms = self.terms.iter().map(|(i, p)| (*i, p * c)).collect();
        MonoElem {
            block: self.block.clone(),
            terms,
        }
    }

    fn check_block(&self, rhs: &MonoElem) -> Result<()> {
        if !self.block.same_block(&rhs.block) {
            return Err(Error::CrossBlockProduct);
        }
        Ok(())
    }

    /// Right multiplication by the bare generator `H_s`:
    /// `H_u 1_ψ · H_s = H_u H_s 1_{sψ}` expanded by the two quadratic rules.
    pub fn mul_gen_right(&self, s: usize) -> MonoElem {
        let b = &self.block;
        let g = &b.group;
        let mut out = MonoElem::zero(self.block.clone());
        let correction = {
            let mut c = LaurentPoly::v_pow(-1);
            c.add_term(1, &BigInt::from(-1));
            c // v^{-1} - v
        };
        for ((u, psi), p) in &self.terms {
            let us = g.right_mul_gen(*u, s);
            let spsi = b.apply_s(*psi, s);
            if g.length(us) > g.length(*u) {
                out.add_term((us, spsi), p);
            } else if b.s_fixes(*psi, s) {
                out.add_term((us, *psi), p);
                out.add_term((*u, *psi), &(p * &correction));
            } else {
                out.add_term((us, spsi), p);
            }
        }
        out
    }

    /// Left multiplication by the bare generator `H_s`; the relevant
    /// character for the quadratic rule is the one seen from the left,
    /// `(su)ψ`.
    pub fn mul_gen_left(&self, s: usize) -> MonoElem {
        let b = &self.block;
        let g = &b.group;
        let mut out = MonoElem::zero(self.block.clone());
        let correction = {
            let mut c = LaurentPoly::v_pow(-1);
            c.add_term(1, &BigInt::from(-1));
            c
        };
        for ((u, psi), p) in &self.terms {
            let su = g.left_mul_gen(s, *u);
            if g.length(su) > g.length(*u) {
                out.add_term((su, *psi), p);
            } else {
                // τ = (su)ψ viewed in the orbit: transport ψ along word(su)
                let tau_idx = transport(b, *psi, g.word(su));
                if b.s_fixes(tau_idx, s) {
                    out.add_term((su, *psi), p);
                    out.add_term((*u, *psi), &(p * &correction));
                } else {
                    out.add_term((su, *psi), p);
                }
            }
        }
        out
    }

    /// Project on the right idempotent: `m · 1_χ`.
    pub fn project_char(&self, c: usize) -> MonoElem {
        let terms = self
            .terms
            .iter()
            .filter(|((_, psi), _)| *psi == c)
            .map(|(i, p)| (*i, p.clone()))
            .collect();
        MonoElem {
            block: self.block.clone(),
            terms,
        }
    }

    /// Block product. Cross-block products are flagged (they vanish by
    /// idempotent orthogonality); `mul_permissive` returns the zero of the
    /// left block instead.
    pub fn mul(&self, rhs: &MonoElem) -> Result<MonoElem> {
        self.check_block(rhs)?;
        let g = &self.block.group;
        let mut out = MonoElem::zero(self.block.clone());
        for ((w, chi), p) in &rhs.terms {
            let mut acc = self.clone();
            for &s in g.word(*w) {
                acc = acc.mul_gen_right(s as usize);
            }
            acc = acc.project_char(*chi);
            for (idx, q) in &acc.terms {
                out.add_term(*idx, &(q * p));
            }
        }
        Ok(out)
    }

    pub fn mul_permissive(&self, rhs: &MonoElem) -> MonoElem {
        match self.mul(rhs) {
            Ok(x) => x,
            Err(_) => MonoElem::zero(self.block.clone()),
        }
    }

    /// The bar involution: `v^n H_w 1_χ ↦ v^{-n} H_{w^{-1}}^{-1} 1_χ`.
    pub fn bar(&self) -> MonoElem {
        let mut out = MonoElem::zero(self.block.clone());
        for ((w, chi), p) in &self.terms {
            let img = bar_basis(&self.block, (*w, *chi));
            let pb = p.bar();
            for (idx, q) in img.terms {
                out.add_term(idx, &(&q * &pb));
            }
        }
        out
    }

    /// Scalar twist `v ↦ −v^{-1}` fixing every basis element.
    pub fn b_twist(&self) -> MonoElem {
        let terms = self
            .terms
            .iter()
            .map(|(i, p)| (*i, p.b_twist()))
            .collect();
        MonoElem {
            block: self.block.clone(),
            terms,
        }
    }
}

fn transport(block: &MonoBlock, mut c: usize, word: &[u8]) -> usize {
    // index of (s_1⋯s_k)·ψ: apply generators right-to-left
    for &s in word.iter().rev() {
        c = block.apply_s(c, s as usize);
    }
    c
}

/// `H_s^{-1}` as a block element: `(H_s + (v − v^{-1})) 1_χ` at fixed
/// characters, `H_s 1_χ` at moved ones.
fn gen_inverse(block: &Arc<MonoBlock>) -> Vec<MonoElem> {
    let g = &block.group;
    (0..g.num_simple())
        .map(|s| {
            let mut x = MonoElem::zero(block.clone());
            for c in 0..block.orbit_size() {
                x.add_term((g.simple(s), c), &LaurentPoly::one());
                if block.s_fixes(c, s) {
                    let mut corr = LaurentPoly::v_pow(1);
                    corr.add_term(-1, &BigInt::from(-1));
                    x.add_term((ElemId::IDENTITY, c), &corr);
                }
            }
            x
        })
        .collect()
}

/// Bar image of a basis pair:
/// `bar(H_w 1_χ) = H_{s_1}^{-1} ⋯ H_{s_k}^{-1} 1_χ` along the canonical
/// word of `w`.
pub fn bar_basis(block: &Arc<MonoBlock>, (w, chi): PairIdx) -> MonoElem {
    let invs = gen_inverse(block);
    let mut x = MonoElem::idempotent(block.clone(), chi);
    for &s in block.group.word(w).iter().rev() {
        x = invs[s as usize].mul(&x).unwrap();
    }
    x
}

/// Both self-dual bases of a block, by the defect-correcting solve.
#[derive(Clone, Debug)]
pub struct MonoKLTable {
    block: Arc<MonoBlock>,
    rows: BTreeMap<PairIdx, BTreeMap<PairIdx, LaurentPoly>>,
    rows_tilde: BTreeMap<PairIdx, BTreeMap<PairIdx, LaurentPoly>>,
}

impl MonoKLTable {
    pub fn compute(block: &Arc<MonoBlock>, mode: ExecMode) -> MonoKLTable {
        // bar images of the whole basis, once
        let basis = block.basis();
        let bars: Vec<MonoElem> = map_slice(mode, &basis, |&idx| bar_basis(block, idx));
        let bar_map: BTreeMap<PairIdx, &MonoElem> =
            basis.iter().copied().zip(bars.iter()).collect();

        let solved: Vec<(BTreeMap<PairIdx, LaurentPoly>, BTreeMap<PairIdx, LaurentPoly>)> =
            map_slice(mode, &basis, |&idx| {
                (
                    defect_solve(block, &bar_map, idx, true),
                    defect_solve(block, &bar_map, idx, false),
                )
            });
        let mut rows = BTreeMap::new();
        let mut rows_tilde = BTreeMap::new();
        for (idx, (row, row_t)) in basis.iter().zip(solved) {
            rows.insert(*idx, row);
            rows_tilde.insert(*idx, row_t);
        }
        MonoKLTable {
            block: block.clone(),
            rows,
            rows_tilde,
        }
    }

    pub fn block(&self) -> &Arc<MonoBlock> {
        &self.block
    }

    /// `H̲_{w,χ}`.
    pub fn kl_basis(&self, idx: PairIdx) -> MonoElem {
        let mut out = MonoElem::zero(self.block.clone());
        for (i, p) in &self.rows[&idx] {
            out.add_term(*i, p);
        }
        out
    }

    /// `H̲̃_{w,χ}`.
    pub fn kl_tilde(&self, idx: PairIdx) -> MonoElem {
        let mut out = MonoElem::zero(self.block.clone());
        for (i, p) in &self.rows_tilde[&idx] {
            out.add_term(*i, p);
        }
        out
    }

    pub fn row(&self, idx: PairIdx) -> &BTreeMap<PairIdx, LaurentPoly> {
        &self.rows[&idx]
    }

    pub fn row_tilde(&self, idx: PairIdx) -> &BTreeMap<PairIdx, LaurentPoly> {
        &self.rows_tilde[&idx]
    }

    /// Unitriangularity and degree bounds over the block.
    pub fn verify_contract(&self) -> Result<()> {
        let g = &self.block.group;
        for idx @ (w, _) in self.rows.keys() {
            for (table, positive) in [(&self.rows, true), (&self.rows_tilde, false)] {
                let row = &table[idx];
                match row.get(idx) {
                    Some(p) if p.is_one() => {}
                    other => {
                        return Err(Error::IdentityViolation(format!(
                            "diagonal coefficient is {other:?}"
                        )))
                    }
                }
                for (pair @ (y, _), p) in row {
                    if pair == idx {
                        continue;
                    }
                    if y == w {
                        return Err(Error::IdentityViolation(
                            "off-diagonal term at the top Bruhat layer".into(),
                        ));
                    }
                    if !g.bruhat_leq(*y, *w) {
                        return Err(Error::IdentityViolation(
                            "support outside the Bruhat cone".into(),
                        ));
                    }
                    let bad = if positive {
                        p.min_exp().map(|m| m < 1).unwrap_or(false)
                    } else {
                        p.max_exp().map(|m| m > -1).unwrap_or(false)
                    };
                    if bad {
                        return Err(Error::IdentityViolation(format!(
                            "degree bound violated: {p}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn defect_solve(
    block: &Arc<MonoBlock>,
    bar_map: &BTreeMap<PairIdx, &MonoElem>,
    idx: PairIdx,
    positive: bool,
) -> BTreeMap<PairIdx, LaurentPoly> {
    let mut x = MonoElem::std_basis(block.clone(), idx.0, idx.1);
    let mut bx = bar_map[&idx].clone();
    loop {
        let defect = bx.sub(&x).unwrap();
        if defect.is_zero() {
            break;
        }
        let y = *defect
            .iter()
            .map(|(i, _)| i)
            .max_by_key(|i| block.pair_key(**i))
            .unwrap();
        let e = defect.coeff(y);
        debug_assert!(e.bar() == -&e, "defect coefficient must be bar-skew");
        let mut g = LaurentPoly::zero();
        for (n, c) in e.iter() {
            if (positive && *n > 0) || (!positive && *n < 0) {
                g.add_term(*n, c);
            }
        }
        x.add_term(y, &g);
        let gb = g.bar();
        for (j, q) in bar_map[&y].iter() {
            bx.add_term(*j, &(q * &gb));
        }
    }
    x.iter().map(|(i, p)| (*i, p.clone())).collect()
}

impl fmt::Debug for MonoElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((w, c), p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word: Vec<String> = self
                .block
                .group
                .word(*w)
                .iter()
                .map(|s| (s + 1).to_string())
                .collect();
            write!(f, "({p})·H[{}]·1_{c}", word.join("-"))?;
        }
        Ok(())
    }
}
