//! Small finite fields `F_ℓ` and `F_{ℓ²}`, just enough to reduce the
//! half-power eigenvalue bookkeeping modulo ℓ: square roots, multiplicative
//! orders, and the arithmetic they need.
//!
//! Only quadratic extensions are ever required (square roots of integers),
//! so the extension degree is capped at 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest characteristic accepted; keeps the deterministic scans cheap.
const MAX_ELL: u64 = 1 << 20;

/// Element of `F_ℓ` (when `ext` is false) or `F_{ℓ²} = F_ℓ[x]/(x² + bx + a)`
/// (when `ext` is true), with the modulus chosen canonically from ℓ.
///
/// The representative is `c[0] + c[1]·x` with `0 ≤ c[i] < ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    ell: u64,
    ext: bool,
    c: [u64; 2],
}

/// The canonical irreducible quadratic `x² + b·x + a` over `F_ℓ`:
/// the lexicographically least `(b, a)` that is irreducible.
pub fn canonical_quadratic(ell: u64) -> (u64, u64) {
    for b in 0..ell {
        'a: for a in 0..ell {
            for r in 0..ell {
                if (r * r + b * r + a) % ell == 0 {
                    continue 'a;
                }
            }
            return (b, a);
        }
    }
    unreachable!("irreducible quadratics exist over every prime field");
}

fn check_prime(ell: u64) -> Result<()> {
    if !(2..=MAX_ELL).contains(&ell) {
        return Err(Error::InvalidModulus(format!("ℓ = {ell} out of range")));
    }
    let mut d = 2;
    while d * d <= ell {
        if ell.is_multiple_of(d) {
            return Err(Error::InvalidModulus(format!("ℓ = {ell} is not prime")));
        }
        d += 1;
    }
    Ok(())
}

impl FFElem {
    pub fn zero(ell: u64, ext: bool) -> Self {
        FFElem { ell, ext, c: [0, 0] }
    }

    pub fn one(ell: u64, ext: bool) -> Self {
        FFElem { ell, ext, c: [1 % ell, 0] }
    }

    /// Element of the prime field from an integer residue.
    pub fn from_int(ell: u64, n: i64) -> Result<Self> {
        check_prime(ell)?;
        Ok(FFElem {
            ell,
            ext: false,
            c: [n.rem_euclid(ell as i64) as u64, 0],
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.ell
    }

    pub fn is_extension(&self) -> bool {
        self.ext
    }

    pub fn extension_degree(&self) -> u32 {
        if self.ext {
            2
        } else {
            1
        }
    }

    /// The representative coefficients `(c0, c1)` of `c0 + c1·x`.
    pub fn rep(&self) -> (u64, u64) {
        (self.c[0], self.c[1])
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0]
    }

    pub fn is_one(&self) -> bool {
        self.c == [1 % self.ell, 0]
    }

    /// Lift into the quadratic extension.
    pub fn lift(&self) -> Self {
        FFElem { ell: self.ell, ext: true, c: self.c }
    }

    fn assert_same_field(&self, rhs: &FFElem) {
        assert_eq!(self.ell, rhs.ell, "mixed characteristics");
        assert_eq!(self.ext, rhs.ext, "mixed extension degrees");
    }

    pub fn add(&self, rhs: &FFElem) -> FFElem {
        self.assert_same_field(rhs);
        FFElem {
            ell: self.ell,
            ext: self.ext,
            c: [
                (self.c[0] + rhs.c[0]) % self.ell,
                (self.c[1] + rhs.c[1]) % self.ell,
            ],
        }
    }

    pub fn neg(&self) -> FFElem {
        FFElem {
            ell: self.ell,
            ext: self.ext,
            c: [
                (self.ell - self.c[0]) % self.ell,
                (self.ell - self.c[1]) % self.ell,
            ],
        }
    }

    pub fn mul(&self, rhs: &FFElem) -> FFElem {
        self.assert_same_field(rhs);
        let ell = self.ell as u128;
        let (x0, x1) = (self.c[0] as u128, self.c[1] as u128);
        let (y0, y1) = (rhs.c[0] as u128, rhs.c[1] as u128);
        if !self.ext {
            return FFElem {
                ell: self.ell,
                ext: false,
                c: [((x0 * y0) % ell) as u64, 0],
            };
        }
        // (x0 + x1 x)(y0 + y1 x) with x² = -b x - a
        let (b, a) = canonical_quadratic(self.ell);
        let (b, a) = (b as u128, a as u128);
        let t2 = (x1 * y1) % ell;
        let t1 = (x0 * y1 + x1 * y0) % ell;
        let t0 = (x0 * y0) % ell;
        let c1 = (t1 + (ell - (t2 * b) % ell)) % ell;
        let c0 = (t0 + (ell - (t2 * a) % ell)) % ell;
        FFElem {
            ell: self.ell,
            ext: true,
            c: [c0 as u64, c1 as u64],
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> FFElem {
        let r = k.mod_floor(&BigInt::from(self.ell)).to_u64().unwrap();
        let s = FFElem {
            ell: self.ell,
            ext: self.ext,
            c: [r, 0],
        };
        self.mul(&s)
    }

    pub fn pow(&self, mut n: u64) -> FFElem {
        let mut base = self.clone();
        let mut acc = FFElem::one(self.ell, self.ext);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Order of the ambient multiplicative group, `ℓ^k - 1`.
    pub fn unit_group_order(&self) -> u64 {
        if self.ext {
            self.ell * self.ell - 1
        } else {
            self.ell - 1
        }
    }

    pub fn inv(&self) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(self.unit_group_order() - 1))
    }
}

/// A canonical square root of `q` modulo ℓ, in `F_ℓ` when `q` is a residue
/// and in `F_{ℓ²}` otherwise. The canonical choice is the lexicographically
/// least representative `(c0, c1)`; the other root is its negative.
pub fn ff_sqrt(q: u64, ell: u64) -> Result<FFElem> {
    check_prime(ell)?;
    if q.is_multiple_of(ell) {
        return Err(Error::InvalidModulus(format!("ℓ = {ell} divides q = {q}")));
    }
    let qr = q % ell;
    // Ascending scan returns the least representative directly.
    for x in 0..ell {
        if (x * x) % ell == qr {
            return Ok(FFElem { ell, ext: false, c: [x, 0] });
        }
    }
    // Non-residue: ℓ is odd here (every element of F_2 is a square), and the
    // canonical modulus is x² + a, so q = (t·x)² with t² = q / (-a).
    let (b, a) = canonical_quadratic(ell);
    assert_eq!(b, 0, "odd ℓ admits a modulus x² + a");
    let n = (ell - a) % ell; // x² = n, a non-residue
    let n_inv = FFElem::from_int(ell, n as i64)?.inv()?.rep().0;
    let target = (qr as u128 * n_inv as u128 % ell as u128) as u64;
    for t in 0..ell {
        if (t * t) % ell == target {
            let s = t.min(ell - t);
            return Ok(FFElem { ell, ext: true, c: [0, s] });
        }
    }
    unreachable!("q/n is a quadratic residue when q and n are both non-residues");
}

/// Least `n ≥ 1` with `x^n = 1`.
pub fn ff_order(x: &FFElem) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let m = x.unit_group_order();
    let mut order = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            while order.is_multiple_of(p) && x.pow(order / p).is_one() {
                order /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        while order.is_multiple_of(rest) && x.pow(order / rest).is_one() {
            order /= rest;
        }
    }
    Ok(order)
}
