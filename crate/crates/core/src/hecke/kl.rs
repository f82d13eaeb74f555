//! The two self-dual Kazhdan-Lusztig bases and their base-change table.
//!
//! `KLTable` stores, for every `w`, the coefficients `h_{y,w}` of
//! `H̲_w = Σ_y h_{y,w} H_y` and `h̃_{y,w}` of `H̲̃_w = Σ_y h̃_{y,w} H_y`.
//! `H̲_w` is unitriangular with corrections in `vZ[v]`, `H̲̃_w` with
//! corrections in `v^{-1}Z[v^{-1}]`.
//!
//! Two independent algorithms are shipped:
//! * `compute` — the μ-recursion: `H̲_w` is extracted from
//!   `H̲_s · H̲_{sw}` by subtracting the integer constant terms, with `s`
//!   the lex-least left descent;
//! * `compute_bar_solve` — a direct self-duality solve: starting from
//!   `H_w`, repeatedly cancel the maximal defect of `bar(x) − x` with a
//!   correction in `vZ[v]` (resp. `v^{-1}Z[v^{-1}]`).
//!
//! Both fill whole length levels at a time, so the fill parallelizes over
//! incomparable elements without affecting the result.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::laurent::LaurentPoly;
use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};
use crate::exec::{map_slice, ExecMode};
use crate::hecke::elem::HeckeElem;

type Row = BTreeMap<ElemId, LaurentPoly>;

#[derive(Clone, Debug)]
pub struct KLTable {
    group: Arc<WeylGroup>,
    /// `h[w][y] = h_{y,w}`
    h: Vec<Row>,
    /// `h_tilde[w][y] = h̃_{y,w}`
    h_tilde: Vec<Row>,
}

impl KLTable {
    /// Primary algorithm: μ-recursion for both bases.
    pub fn compute(group: &Arc<WeylGroup>, mode: ExecMode) -> KLTable {
        let n = group.order();
        let mut h: Vec<Row> = vec![Row::new(); n];
        let mut h_tilde: Vec<Row> = vec![Row::new(); n];
        h[0].insert(ElemId::IDENTITY, LaurentPoly::one());
        h_tilde[0].insert(ElemId::IDENTITY, LaurentPoly::one());

        for l in 1..=group.max_length() {
            let level = group.elements_of_length(l);
            let rows = map_slice(mode, level, |&w| {
                (
                    mu_step(group, &h, ElemId(w), true),
                    mu_step(group, &h_tilde, ElemId(w), false),
                )
            });
            for (&w, (row, row_t)) in level.iter().zip(rows) {
                h[w as usize] = row;
                h_tilde[w as usize] = row_t;
            }
        }
        KLTable {
            group: group.clone(),
            h,
            h_tilde,
        }
    }

    /// Independent oracle: the direct bar-fixed-point solve.
    pub fn compute_bar_solve(group: &Arc<WeylGroup>, mode: ExecMode) -> KLTable {
        let ids: Vec<u32> = group.elements().map(|w| w.0).collect();
        // bar images of the whole standard basis, once
        let bar_table: Vec<HeckeElem> =
            map_slice(mode, &ids, |&w| HeckeElem::bar_std_basis(group, ElemId(w)));
        let rows = map_slice(mode, &ids, |&w| {
            (
                bar_solve(group, &bar_table, ElemId(w), true),
                bar_solve(group, &bar_table, ElemId(w), false),
            )
        });
        let mut h = Vec::with_capacity(ids.len());
        let mut h_tilde = Vec::with_capacity(ids.len());
        for (row, row_t) in rows {
            h.push(row);
            h_tilde.push(row_t);
        }
        KLTable {
            group: group.clone(),
            h,
            h_tilde,
        }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    /// `h_{y,w}` (zero unless `y ≤ w`).
    pub fn h(&self, y: ElemId, w: ElemId) -> LaurentPoly {
        self.h[w.index()]
            .get(&y)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn h_tilde(&self, y: ElemId, w: ElemId) -> LaurentPoly {
        self.h_tilde[w.index()]
            .get(&y)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn row(&self, w: ElemId) -> &Row {
        &self.h[w.index()]
    }

    pub fn row_tilde(&self, w: ElemId) -> &Row {
        &self.h_tilde[w.index()]
    }

    /// `H̲_w` as an element.
    pub fn kl_basis(&self, w: ElemId) -> HeckeElem {
        let mut out = HeckeElem::zero(self.group.clone());
        for (y, p) in &self.h[w.index()] {
            out.add_term(*y, p);
        }
        out
    }

    /// `H̲̃_w` as an element.
    pub fn kl_tilde(&self, w: ElemId) -> HeckeElem {
        let mut out = HeckeElem::zero(self.group.clone());
        for (y, p) in &self.h_tilde[w.index()] {
            out.add_term(*y, p);
        }
        out
    }

    pub fn rows_equal(&self, other: &KLTable) -> bool {
        self.h == other.h && self.h_tilde == other.h_tilde
    }

    /// Unitriangularity and the degree bounds:
    /// `h_{w,w} = 1`, `h_{y,w} = 0` unless `y ≤ w`, `h_{y,w} ∈ vZ[v]` and
    /// `h̃_{y,w} ∈ v^{-1}Z[v^{-1}]` for `y < w`.
    pub fn verify_contract(&self) -> Result<()> {
        let g = &self.group;
        for w in g.elements() {
            for (table, positive) in [(&self.h, true), (&self.h_tilde, false)] {
                let row = &table[w.index()];
                match row.get(&w) {
                    Some(p) if p.is_one() => {}
                    other => {
                        return Err(Error::IdentityViolation(format!(
                            "diagonal coefficient at {:?} is {other:?}",
                            g.word(w)
                        )))
                    }
                }
                for (y, p) in row {
                    if *y == w {
                        continue;
                    }
                    if !g.bruhat_leq(*y, w) {
                        return Err(Error::IdentityViolation(
                            "support outside the Bruhat interval".into(),
                        ));
                    }
                    let bad = if positive {
                        p.min_exp().map(|m| m < 1).unwrap_or(false)
                    } else {
                        p.max_exp().map(|m| m > -1).unwrap_or(false)
                    };
                    if bad {
                        return Err(Error::IdentityViolation(format!(
                            "degree bound violated at (y, w) = ({:?}, {:?}): {p}",
                            g.word(*y),
                            g.word(w)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One μ-recursion step: the row of `w` from the rows of shorter elements.
fn mu_step(group: &Arc<WeylGroup>, rows: &[Row], w: ElemId, positive: bool) -> Row {
    let s = group.left_descents(w).trailing_zeros() as usize;
    let u = group.left_mul_gen(s, w);
    debug_assert!(group.length(u) + 1 == group.length(w));

    // P = (H_s ± v^{∓1}) · H̲_u in the standard basis
    let mut kl_u = HeckeElem::zero(group.clone());
    for (y, p) in &rows[u.index()] {
        kl_u.add_term(*y, p);
    }
    let shift = if positive {
        LaurentPoly::v_pow(1)
    } else {
        LaurentPoly::monomial(-1, -1)
    };
    let mut prod = kl_u.mul_gen_left(s);
    for (y, p) in kl_u.iter() {
        prod.add_term(*y, &(p * &shift));
    }

    // Subtract the integer constant terms: P = H̲_w + Σ_{y<w} m_y(0) H̲_y.
    let mut row: Row = prod.iter().map(|(y, p)| (*y, p.clone())).collect();
    let corrections: Vec<(ElemId, BigInt)> = row
        .iter()
        .filter(|(y, _)| **y != w)
        .map(|(y, p)| (*y, p.coeff(0)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    for (y, c) in corrections {
        for (z, q) in &rows[y.index()] {
            let entry = row.entry(*z).or_insert_with(LaurentPoly::zero);
            *entry = &*entry - &q.scaled(&c);
            if entry.is_zero() {
                row.remove(z);
            }
        }
    }
    row
}

/// Direct self-duality solve for a single `w`, correcting defects
/// downwards. `bar(x)` is maintained incrementally: adding `g·H_y` to `x`
/// adds `bar(g)·bar(H_y)` to it.
fn bar_solve(group: &Arc<WeylGroup>, bar_table: &[HeckeElem], w: ElemId, positive: bool) -> Row {
    let mut x = HeckeElem::std_basis(group.clone(), w);
    let mut bx = bar_table[w.index()].clone();
    loop {
        let defect = bx.sub(&x).unwrap();
        if defect.is_zero() {
            break;
        }
        // maximal offending index in enumeration order (length, lex word)
        let y = defect.support().max().unwrap();
        debug_assert!(y != w && group.bruhat_leq(y, w));
        let e = defect.coeff(y);
        // e is bar-skew: e = Σ_{n>0} a_n (v^n − v^{-n}); cancel with the
        // half supported on the allowed side.
        debug_assert!(e.bar() == -&e, "defect coefficient must be bar-skew");
        let mut g = LaurentPoly::zero();
        for (n, c) in e.iter() {
            if (positive && *n > 0) || (!positive && *n < 0) {
                g.add_term(*n, c);
            }
        }
        x.add_term(y, &g);
        let gb = g.bar();
        for (u, q) in bar_table[y.index()].iter() {
            bx.add_term(*u, &(q * &gb));
        }
    }
    x.iter().map(|(y, p)| (*y, p.clone())).collect()
}
