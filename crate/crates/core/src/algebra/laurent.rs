//! Laurent polynomials in one variable `v` over arbitrary-precision
//! integers: the ring `Z[v^{±1}]`.
//!
//! Coefficients are `BigInt` and no zero coefficients are ever stored, so
//! equality of values is equality of representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::ff::FFElem;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// The monomial `c · v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The monomial `v^e`.
    pub fn v_pow(e: i64) -> Self {
        LaurentPoly::monomial(1, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Coefficient of `v^e` (zero when absent).
    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterator over `(exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiply by the monomial `v^k` (shift all exponents).
    pub fn shifted(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        LaurentPoly { terms }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let terms = self.terms.iter().map(|(e, k)| (*e, k * c)).collect();
        LaurentPoly { terms }
    }

    /// The bar substitution `v ↦ v^{-1}`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentPoly { terms }
    }

    /// The substitution `v ↦ -v^{-1}`: `c·v^n ↦ (-1)^n c·v^{-n}`.
    pub fn b_twist(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (-e, if e.rem_euclid(2) == 1 { -c } else { c.clone() }))
            .collect();
        LaurentPoly { terms }
    }

    /// Evaluate at an integer scalar. Negative exponents are only allowed at
    /// the invertible scalars ±1.
    pub fn eval_int(&self, t: &BigInt) -> Result<BigInt> {
        let neg = self.min_exp().map(|m| m < 0).unwrap_or(false);
        if neg && !(t.is_one() || (-t).is_one()) {
            return Err(Error::NonInvertibleEval(format!(
                "negative exponents present, scalar {t} is not a unit in Z"
            )));
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            // |t| = 1 here whenever e < 0, so t^e = t^{-e} = t^|e|.
            let p = t.pow(e.unsigned_abs() as u32);
            acc += c * p;
        }
        Ok(acc)
    }

    /// Evaluate at a finite-field element; `x = 0` is rejected when negative
    /// exponents are present.
    pub fn eval_ff(&self, x: FFElem) -> Result<FFElem> {
        let neg = self.min_exp().map(|m| m < 0).unwrap_or(false);
        if neg && x.is_zero() {
            return Err(Error::NonInvertibleEval(
                "negative exponents present, scalar 0 is not invertible".into(),
            ));
        }
        let inv = if neg { Some(x.inv()?) } else { None };
        let mut acc = FFElem::zero(x.characteristic(), x.is_extension());
        for (e, c) in &self.terms {
            let base = if *e < 0 { inv.clone().unwrap() } else { x.clone() };
            let p = base.pow(e.unsigned_abs());
            acc = acc.add(&p.scale_int(c));
        }
        Ok(acc)
    }

    /// Exponent-to-coefficient view, for serialization.
    pub fn to_map(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn from_map(terms: BTreeMap<i64, BigInt>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPoly { terms }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &(-c));
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // print highest exponent first
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn binomial_square() {
        // (v + v^{-1})^2 = v^2 + 2 + v^{-2}
        let f = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&f * &f, lp(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn zero_annihilates() {
        let f = lp(&[(3, 1), (1, 1)]);
        assert!((&LaurentPoly::zero() * &f).is_zero());
    }

    #[test]
    fn convolution_by_hand() {
        // (v^3 + v) * (-v^{-1}) = -v^2 - 1
        let f = lp(&[(3, 1), (1, 1)]);
        let g = lp(&[(-1, -1)]);
        assert_eq!(&f * &g, lp(&[(2, -1), (0, -1)]));
    }

    #[test]
    fn bar_negates_exponents() {
        let f = lp(&[(3, 1), (1, 1)]);
        assert_eq!(f.bar(), lp(&[(-3, 1), (-1, 1)]));
    }

    #[test]
    fn b_twist_examples() {
        // b(v^2) = v^{-2}; b(v^3 + v) = -v^{-3} - v^{-1}
        assert_eq!(LaurentPoly::v_pow(2).b_twist(), LaurentPoly::v_pow(-2));
        let f = lp(&[(3, 1), (1, 1)]);
        assert_eq!(f.b_twist(), lp(&[(-3, -1), (-1, -1)]));
    }

    #[test]
    fn degree_of_product_adds() {
        let f = lp(&[(5, 2), (-1, 3)]);
        let g = lp(&[(2, 7), (-4, 1)]);
        let fg = &f * &g;
        assert_eq!(fg.max_exp(), Some(7));
        assert_eq!(fg.min_exp(), Some(-5));
    }

    #[test]
    fn eval_rules() {
        let f = lp(&[(2, 3), (0, 1)]);
        assert_eq!(f.eval_int(&BigInt::from(2)).unwrap(), BigInt::from(13));
        let g = lp(&[(-1, 1), (1, 1)]);
        assert_eq!(g.eval_int(&BigInt::from(1)).unwrap(), BigInt::from(2));
        assert_eq!(g.eval_int(&BigInt::from(-1)).unwrap(), BigInt::from(-2));
        assert!(g.eval_int(&BigInt::from(2)).is_err());
        assert!(g.eval_int(&BigInt::from(0)).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-6i64..=6), (-9i64..=9)), 0..6)
            .prop_map(|pairs| lp(&pairs))
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 1000,
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_1e97),
            ..ProptestConfig::default()
        })]

        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        }

        #[test]
        fn bar_and_b_are_involutive(f in arb_poly()) {
            prop_assert_eq!(f.bar().bar(), f.clone());
            prop_assert_eq!(f.b_twist().b_twist(), f);
        }

        #[test]
        fn product_degree_bound(f in arb_poly(), g in arb_poly()) {
            if !f.is_zero() && !g.is_zero() {
                let fg = &f * &g;
                prop_assert_eq!(fg.max_exp().unwrap(), f.max_exp().unwrap() + g.max_exp().unwrap());
                prop_assert_eq!(fg.min_exp().unwrap(), f.min_exp().unwrap() + g.min_exp().unwrap());
            }
        }
    }
}
