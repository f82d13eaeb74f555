//! Finite-torus arithmetic of the pair `(T, wF)`: the fixed-point groups
//! `T^{wF}` presented as cokernels of `qτw − 1` on the cocharacter lattice,
//! their character groups, the ℓ-part splitting, and geometric conjugacy
//! classes of pairs `(w, χ)`.

pub mod series;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::intmat::IntMatrix;
use crate::coxeter::datum::mat_mul;
use crate::coxeter::weyl::{ElemId, WeylGroup};
use crate::error::{Error, Result};
use crate::exec::{sum_range, ExecMode};

pub use series::{geometric_classes, pair_orbit_class_count, CharVector, GeomClass, SeriesTable};

/// The Frobenius datum `q = p^r` together with the twist τ of the root
/// datum and the splitting degree δ (minimal with τ^δ = 1 unless
/// overridden).
#[derive(Clone, Debug)]
pub struct FrobeniusDatum {
    pub q: u64,
    pub p: u64,
    pub delta: u32,
}

impl FrobeniusDatum {
    pub fn new(group: &WeylGroup, q: u64, delta_override: Option<u32>) -> Result<Self> {
        let p = prime_of(q)?;
        let delta = delta_override.unwrap_or_else(|| group.datum().tau_order());
        Ok(FrobeniusDatum { q, p, delta })
    }
}

fn prime_of(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidDatum(format!("q = {q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            if m != 1 {
                return Err(Error::InvalidDatum(format!("q = {q} is not a prime power")));
            }
            return Ok(p);
        }
        p += 1;
    }
    Ok(q) // q itself prime
}

/// The matrix of `qτw − 1` on `X_*`.
pub fn frobenius_matrix(group: &WeylGroup, w: ElemId, q: u64) -> IntMatrix {
    let r = group.rank();
    let tau = group.datum().tau_matrix();
    let wm = group.matrix(w);
    let wm_rows: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| wm[i * r + j]).collect())
        .collect();
    let tw = mat_mul(tau, &wm_rows);
    let mut m = IntMatrix::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            m[(i, j)] = BigInt::from(q as i64 * tw[i][j] - i64::from(i == j));
        }
    }
    m
}

/// The fixed-point group `T^{wF} ≅ X_* / (qτw − 1) X_* ≅ ⊕ Z/d_i`, carried
/// by the Smith normal form `U·M·V = D` of `M = qτw − 1`.
#[derive(Clone, Debug)]
pub struct FixedTorus {
    pub w: ElemId,
    /// Invariant factors `d_1 | d_2 | …`, all ≥ 1.
    pub invariants: Vec<u64>,
    /// Row transform of the SNF; maps `X_*` coordinates to `⊕ Z/d_i`.
    pub u: IntMatrix,
    /// Its inverse (unimodular).
    pub u_inv: IntMatrix,
}

impl FixedTorus {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

pub fn fixed_torus(group: &WeylGroup, w: ElemId, fd: &FrobeniusDatum) -> Result<FixedTorus> {
    let m = frobenius_matrix(group, w, fd.q);
    let det = m.det();
    if det.is_zero() {
        return Err(Error::SingularTorusMatrix(format!(
            "qτw − 1 is singular at w = {:?}",
            group.word(w)
        )));
    }
    let snf = m.snf();
    let invariants: Vec<u64> = snf
        .d
        .diagonal()
        .iter()
        .map(|d| d.to_u64().expect("invariant factor fits u64"))
        .collect();
    debug_assert_eq!(
        BigInt::from(invariants.iter().product::<u64>()),
        det.abs(),
        "∏ d_i = |det|"
    );
    let u_inv = snf.u.unimodular_inverse();
    Ok(FixedTorus {
        w,
        invariants,
        u: snf.u,
        u_inv,
    })
}

/// A character of `T^{wF} ≅ ⊕ Z/d_i`, stored in the invariant-factor
/// coordinates: the tuple `(a_1, …, a_r)` with `a_i ∈ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCharacter {
    pub moduli: Vec<u64>,
    pub tuple: Vec<u64>,
}

impl TorusCharacter {
    pub fn trivial(moduli: Vec<u64>) -> Self {
        let tuple = vec![0; moduli.len()];
        TorusCharacter { moduli, tuple }
    }

    pub fn is_trivial(&self) -> bool {
        self.tuple.iter().all(|&a| a == 0)
    }

    /// Multiplicative order: lcm of the component orders.
    pub fn order(&self) -> u64 {
        self.tuple
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &d)| d / a.gcd(&d))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }
}

/// All `∏ d_i` characters, in lexicographic tuple order.
pub fn characters(t: &FixedTorus) -> Vec<TorusCharacter> {
    let mut out = Vec::with_capacity(t.order() as usize);
    let r = t.invariants.len();
    let mut tuple = vec![0u64; r];
    loop {
        out.push(TorusCharacter {
            moduli: t.invariants.clone(),
            tuple: tuple.clone(),
        });
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < t.invariants[i] {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Unique factorization `χ = χ_ℓ · χ_{ℓ'}` with `ord(χ_ℓ)` an ℓ-power and
/// `ord(χ_{ℓ'})` prime to ℓ.
pub fn ell_part_split(
    chi: &TorusCharacter,
    ell: u64,
    p: u64,
) -> Result<(TorusCharacter, TorusCharacter)> {
    if ell == p {
        return Err(Error::InvalidModulus(format!(
            "ℓ = {ell} equals the defining characteristic p"
        )));
    }
    let mut ell_part = Vec::with_capacity(chi.tuple.len());
    let mut coprime_part = Vec::with_capacity(chi.tuple.len());
    for (&a, &d) in chi.tuple.iter().zip(&chi.moduli) {
        if d == 1 {
            ell_part.push(0);
            coprime_part.push(0);
            continue;
        }
        let mut le = 1u64;
        let mut m = d;
        while m % ell == 0 {
            m /= ell;
            le *= ell;
        }
        // Z/d = Z/le × Z/m; χ_ℓ ≡ a mod le, ≡ 0 mod m (CRT), and dually.
        let al = crt(a % le, le, 0, m);
        let am = crt(0, le, a % m, m);
        ell_part.push(al);
        coprime_part.push(am);
    }
    Ok((
        TorusCharacter {
            moduli: chi.moduli.clone(),
            tuple: ell_part,
        },
        TorusCharacter {
            moduli: chi.moduli.clone(),
            tuple: coprime_part,
        },
    ))
}

/// Characters of ℓ-power order (the ℓ-torsion characters of `T^{wF}`).
pub fn ell_power_characters(t: &FixedTorus, ell: u64) -> Vec<TorusCharacter> {
    characters(t)
        .into_iter()
        .filter(|chi| {
            let mut o = chi.order();
            while o % ell == 0 {
                o /= ell;
            }
            o == 1
        })
        .collect()
}

fn crt(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    // m1, m2 coprime; result mod m1·m2
    let m = m1 * m2;
    for k in 0..m1 {
        let x = a2 + k * m2;
        if x % m1 == a1 % m1 {
            return x % m;
        }
    }
    unreachable!("CRT with coprime moduli always solves");
}

/// Order of the finite part `τw` of `qτw`, i.e. the minimal `N` with
/// `(qτw)^N = q^N`. Every `wF`-fixed point of the torus is rational over
/// `F_{q^N}` for any multiple of this.
pub fn minimal_rational_degree(group: &WeylGroup, w: ElemId) -> u32 {
    let r = group.rank();
    let tau = group.datum().tau_matrix();
    let wm = group.matrix(w);
    let wm_rows: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| wm[i * r + j]).collect())
        .collect();
    let tw = mat_mul(tau, &wm_rows);
    let id: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut acc = tw.clone();
    for k in 1..=256u32 {
        if acc == id {
            return k;
        }
        acc = mat_mul(&acc, &tw);
    }
    panic!("τw has order > 256");
}

/// Brute-force oracle: count the points of `(F_{q^N}^×)^r` fixed by `wF`,
/// by enumerating exponent vectors over the cyclic group of order
/// `m = q^N − 1` (split across the prime-power factors of `m`) and
/// filtering by `(qτw)e ≡ e (mod m)`.
///
/// `N` must be a multiple of `minimal_rational_degree`; enumeration beyond
/// `cap` tuples per factor is refused.
pub fn brute_force_fixed_points(
    group: &WeylGroup,
    w: ElemId,
    fd: &FrobeniusDatum,
    n_ext: u32,
    cap: u64,
    mode: ExecMode,
) -> Result<u64> {
    if !n_ext.is_multiple_of(minimal_rational_degree(group, w)) {
        return Err(Error::OracleOutOfRange(format!(
            "N = {n_ext} is not a multiple of the rationality degree {}",
            minimal_rational_degree(group, w)
        )));
    }
    let r = group.rank() as u32;
    let m_big: BigInt = BigInt::from(fd.q).pow(n_ext) - 1;
    let m = m_big
        .to_u64()
        .ok_or_else(|| Error::OracleOutOfRange(format!("q^{n_ext} − 1 exceeds u64")))?;
    let mat = frobenius_matrix(group, w, fd.q);

    // CRT split of the modulus keeps each enumeration small.
    let mut factors: Vec<u64> = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            let mut pp = 1;
            while rest % d == 0 {
                rest /= d;
                pp *= d;
            }
            factors.push(pp);
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }

    let mut total: u64 = 1;
    for pp in factors {
        let tuples = (pp as u128).pow(r);
        if tuples > cap as u128 {
            return Err(Error::OracleOutOfRange(format!(
                "{pp}^{r} tuples exceed the cap {cap}"
            )));
        }
        let tuples = tuples as u64;
        let rr = r as usize;
        let count = sum_range(mode, tuples, |t| {
            let mut e = vec![0i64; rr];
            let mut x = t;
            for item in e.iter_mut() {
                *item = (x % pp) as i64;
                x /= pp;
            }
            // (M + I) e ≡ e  ⇔  M e ≡ 0, with M = qτw − 1
            let ok = (0..rr).all(|i| {
                let mut acc: i128 = 0;
                for j in 0..rr {
                    let mij = mat[(i, j)].to_i128().unwrap();
                    acc += mij * e[j] as i128;
                }
                acc.rem_euclid(pp as i128) == 0
            });
            u64::from(ok)
        });
        total *= count;
    }
    Ok(total)
}

/// Convenience: the fixed tori of every element.
pub fn all_fixed_tori(
    group: &Arc<WeylGroup>,
    fd: &FrobeniusDatum,
) -> Result<Vec<FixedTorus>> {
    group
        .elements()
        .map(|w| fixed_torus(group, w, fd))
        .collect()
}
