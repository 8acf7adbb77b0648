//! Exact arithmetic over the supported commutative rings with 1 ≠ 0:
//! ℤ (arbitrary precision), ℤ_m for any m ≥ 2, and F_{p^k} as a polynomial
//! quotient ring F_p\[t\]/(f). F_p itself can be used either as ℤ_p or as the
//! degenerate extension F_{p^1}.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Descriptor of a Galois field F_{p^k} = F_p\[t\]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfDescriptor {
    p: u64,
    k: usize,
    /// Ascending coefficients, constant term first; length k+1, monic.
    modulus: Vec<u64>,
}

impl GfDescriptor {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// A commutative ring with 1 ≠ 0. Cheap to clone and compare; elements carry
/// their ring so that cross-ring operations can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    IntegersMod { modulus: u64 },
    GaloisField(Arc<GfDescriptor>),
}

/// Payload of a ring element, canonically reduced at all times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    /// Residue in [0, m).
    Res(u64),
    /// Coefficient vector of length k, entries in [0, p), constant first.
    Gf(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    repr: Repr,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Product of the distinct prime factors of m (trial division; m is desk scale).
pub fn radical(mut m: u64) -> u64 {
    let mut rad = 1u64;
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= m) {
        if m.is_multiple_of(d) {
            rad *= d;
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        rad *= m;
    }
    rad
}

// ---------------------------------------------------------------------------
// F_p scalar and univariate helpers (internal to GF arithmetic)
// ---------------------------------------------------------------------------

fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn fp_sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> Option<u64> {
    // Extended Euclid over the integers, result lifted into [0, p).
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Trim trailing zeros; [] represents the zero polynomial.
fn fpoly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fpoly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = fp_add(x, y, p);
    }
    fpoly_trim(out)
}

fn fpoly_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    fpoly_trim(a.iter().map(|&x| fp_mul(x, c, p)).collect())
}

fn fpoly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp_add(out[i + j], fp_mul(x, y, p), p);
        }
    }
    fpoly_trim(out)
}

/// Division with remainder by a monic divisor; returns (quotient, remainder).
fn fpoly_divrem_monic(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    debug_assert_eq!(*m.last().unwrap(), 1);
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    if rem.len() <= dm {
        return (Vec::new(), fpoly_trim(rem));
    }
    let mut quo = vec![0u64; rem.len() - dm];
    for i in (dm..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quo[i - dm] = c;
        for (j, &mj) in m.iter().enumerate() {
            rem[i - dm + j] = fp_sub(rem[i - dm + j], fp_mul(c, mj, p), p);
        }
    }
    (fpoly_trim(quo), fpoly_trim(rem))
}

/// Inverse of `a` modulo the monic polynomial `m` over F_p, if coprime.
fn fpoly_inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // Extended Euclid on (m, a).
    let mut r0 = m.to_vec();
    let mut r1 = fpoly_trim(a.to_vec());
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // Make r1 monic for the divrem helper, tracking the scale factor.
        let lead = *r1.last().unwrap();
        let lead_inv = fp_inv(lead, p)?;
        let r1m = fpoly_scale(&r1, lead_inv, p);
        let (q, rem) = fpoly_divrem_monic(&r0, &r1m, p);
        // r0 = q·r1m + rem = (q·lead_inv)·r1 + rem
        let q_adj = fpoly_scale(&q, lead_inv, p);
        let qt1 = fpoly_mul(&q_adj, &t1, p);
        let new_t = fpoly_add(&t0, &fpoly_scale(&qt1, p - 1, p), p);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = new_t;
    }
    // gcd = r0 must be a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c_inv = fp_inv(r0[0], p)?;
    Some(fpoly_scale(&t0, c_inv, p))
}

fn fpoly_is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    // Trial division against all monic polynomials of degree 1..=k/2.
    for deg in 1..=(k / 2) {
        let mut count = 1u128;
        for _ in 0..deg {
            count *= p as u128;
        }
        for idx in 0..count {
            let mut divisor = vec![0u64; deg + 1];
            let mut t = idx;
            for c in divisor.iter_mut().take(deg) {
                *c = (t % p as u128) as u64;
                t /= p as u128;
            }
            divisor[deg] = 1;
            let (_, rem) = fpoly_divrem_monic(m, &divisor, p);
            if rem.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Built-in monic irreducible modulus polynomials (ascending coefficients)
/// for the small fields used throughout; verified again at construction.
pub fn default_gf_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    if k == 1 {
        return Some(vec![1, 1]); // t + 1
    }
    let table: &[(u64, usize, &[u64])] = &[
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (2, 5, &[1, 0, 1, 0, 0, 1]),
        (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
        (3, 2, &[2, 2, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (5, 2, &[2, 4, 1]),
        (7, 2, &[3, 6, 1]),
    ];
    table
        .iter()
        .find(|(tp, tk, _)| *tp == p && *tk == k)
        .map(|(_, _, m)| m.to_vec())
}

// ---------------------------------------------------------------------------
// Ring
// ---------------------------------------------------------------------------

impl Ring {
    pub fn integers() -> Ring {
        Ring::Integers
    }

    pub fn integers_mod(modulus: u64) -> Result<Ring> {
        if modulus < 2 {
            return Err(Error::InvalidDescriptor(format!(
                "modulus must be >= 2, got {modulus}"
            )));
        }
        Ok(Ring::IntegersMod { modulus })
    }

    /// F_{p^k} with an explicit monic irreducible modulus polynomial
    /// (ascending coefficients, constant term first, length k+1).
    pub fn galois_field(p: u64, k: usize, modulus: Vec<u64>) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidDescriptor(
                "extension degree k must be >= 1".into(),
            ));
        }
        if modulus.len() != k + 1 {
            return Err(Error::InvalidDescriptor(format!(
                "modulus polynomial must have degree {k} (length {})",
                k + 1
            )));
        }
        if modulus[k] != 1 {
            return Err(Error::InvalidDescriptor(
                "modulus polynomial must be monic".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidDescriptor(
                "modulus coefficients must be reduced into [0, p)".into(),
            ));
        }
        if !fpoly_is_irreducible(&modulus, p) {
            return Err(Error::InvalidDescriptor(
                "modulus polynomial is reducible over F_p".into(),
            ));
        }
        Ok(Ring::GaloisField(Arc::new(GfDescriptor { p, k, modulus })))
    }

    /// F_{p^k} with the built-in modulus for p^k ≤ 64 (k = 1 works for any p).
    pub fn galois_field_default(p: u64, k: usize) -> Result<Ring> {
        let modulus = default_gf_modulus(p, k).ok_or_else(|| {
            Error::InvalidDescriptor(format!("no built-in modulus for GF({p}^{k})"))
        })?;
        Ring::galois_field(p, k, modulus)
    }

    /// Number of elements; None for ℤ.
    pub fn size(&self) -> Option<u128> {
        match self {
            Ring::Integers => None,
            Ring::IntegersMod { modulus } => Some(*modulus as u128),
            Ring::GaloisField(gf) => {
                let mut n = 1u128;
                for _ in 0..gf.k {
                    n = n.checked_mul(gf.p as u128)?;
                }
                Some(n)
            }
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::IntegersMod { modulus } => is_prime(*modulus),
            Ring::GaloisField(_) => true,
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Ring::Integers) || self.is_field()
    }

    /// (p, k) when the ring is a finite field: F_{p^k} or a prime ℤ_p.
    pub fn field_order(&self) -> Option<(u64, usize)> {
        match self {
            Ring::Integers => None,
            Ring::IntegersMod { modulus } if is_prime(*modulus) => Some((*modulus, 1)),
            Ring::IntegersMod { .. } => None,
            Ring::GaloisField(gf) => Some((gf.p, gf.k)),
        }
    }

    pub fn zero(&self) -> RingElement {
        self.integer(0)
    }

    pub fn one(&self) -> RingElement {
        self.integer(1)
    }

    /// The image of n under ℤ → R.
    pub fn integer(&self, n: i64) -> RingElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElement {
        let repr = match self {
            Ring::Integers => Repr::Int(n.clone()),
            Ring::IntegersMod { modulus } => {
                let m = BigInt::from(*modulus);
                let r = n.mod_floor(&m);
                Repr::Res(u64::try_from(&r).expect("reduced residue fits u64"))
            }
            Ring::GaloisField(gf) => {
                let p = BigInt::from(gf.p);
                let r = n.mod_floor(&p);
                let c = u64::try_from(&r).expect("reduced residue fits u64");
                let mut v = vec![0u64; gf.k];
                v[0] = c;
                Repr::Gf(v)
            }
        };
        RingElement {
            ring: self.clone(),
            repr,
        }
    }

    /// Residue constructor for ℤ_m.
    pub fn residue(&self, r: u64) -> Result<RingElement> {
        match self {
            Ring::IntegersMod { modulus } => Ok(RingElement {
                ring: self.clone(),
                repr: Repr::Res(r % modulus),
            }),
            _ => Err(Error::Precondition(
                "residue constructor needs a ℤ_m ring".into(),
            )),
        }
    }

    /// Element of F_{p^k} from its coefficient vector (ascending, length ≤ k).
    pub fn gf_element(&self, coeffs: &[u64]) -> Result<RingElement> {
        match self {
            Ring::GaloisField(gf) => {
                if coeffs.len() > gf.k {
                    return Err(Error::ArityMismatch {
                        expected: gf.k,
                        got: coeffs.len(),
                    });
                }
                let mut v = vec![0u64; gf.k];
                for (i, &c) in coeffs.iter().enumerate() {
                    v[i] = c % gf.p;
                }
                Ok(RingElement {
                    ring: self.clone(),
                    repr: Repr::Gf(v),
                })
            }
            _ => Err(Error::Precondition(
                "coefficient constructor needs a GF ring".into(),
            )),
        }
    }

    /// All |R| elements exactly once in canonical order: ascending residues
    /// for ℤ_m, coefficient vectors counted with the constant term fastest
    /// for F_{p^k} (0, 1, ..., t, t+1, ...).
    pub fn elements(&self) -> Result<Vec<RingElement>> {
        match self {
            Ring::Integers => Err(Error::InfiniteRing),
            Ring::IntegersMod { modulus } => Ok((0..*modulus)
                .map(|r| RingElement {
                    ring: self.clone(),
                    repr: Repr::Res(r),
                })
                .collect()),
            Ring::GaloisField(gf) => {
                let size = self.size().ok_or(Error::InfiniteRing)?;
                let size = u64::try_from(size)
                    .map_err(|_| Error::InvalidDescriptor("field too large to enumerate".into()))?;
                let mut out = Vec::with_capacity(size as usize);
                for idx in 0..size {
                    let mut v = vec![0u64; gf.k];
                    let mut t = idx;
                    for c in v.iter_mut() {
                        *c = t % gf.p;
                        t /= gf.p;
                    }
                    out.push(RingElement {
                        ring: self.clone(),
                        repr: Repr::Gf(v),
                    });
                }
                Ok(out)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// RingElement
// ---------------------------------------------------------------------------

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.is_zero(),
            Repr::Res(r) => *r == 0,
            Repr::Gf(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// Underlying integer for ℤ elements.
    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Int(n) => Some(n),
            _ => None,
        }
    }

    /// Residue in [0, m) for ℤ_m elements.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Res(r) => Some(*r),
            _ => None,
        }
    }

    /// Coefficient vector (length k) for F_{p^k} elements.
    pub fn as_gf_coeffs(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Gf(v) => Some(v),
            _ => None,
        }
    }

    fn check_same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::Res(a), Repr::Res(b)) => {
                let m = self.modulus();
                Repr::Res(((*a as u128 + *b as u128) % m as u128) as u64)
            }
            (Repr::Gf(a), Repr::Gf(b)) => {
                let p = self.char_p();
                Repr::Gf(a.iter().zip(b).map(|(&x, &y)| fp_add(x, y, p)).collect())
            }
            _ => unreachable!("same ring implies same representation"),
        };
        Ok(RingElement {
            ring: self.ring.clone(),
            repr,
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        let repr = match &self.repr {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Res(a) => {
                let m = self.modulus();
                Repr::Res(if *a == 0 { 0 } else { m - a })
            }
            Repr::Gf(v) => {
                let p = self.char_p();
                Repr::Gf(v.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
            }
        };
        RingElement {
            ring: self.ring.clone(),
            repr,
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::Res(a), Repr::Res(b)) => {
                let m = self.modulus();
                Repr::Res(((*a as u128 * *b as u128) % m as u128) as u64)
            }
            (Repr::Gf(a), Repr::Gf(b)) => {
                let gf = self.gf_descriptor();
                let prod = fpoly_mul(a, b, gf.p);
                let (_, rem) = if prod.len() > gf.k {
                    fpoly_divrem_monic(&prod, &gf.modulus, gf.p)
                } else {
                    (Vec::new(), prod)
                };
                let mut v = vec![0u64; gf.k];
                v[..rem.len()].copy_from_slice(&rem);
                Repr::Gf(v)
            }
            _ => unreachable!("same ring implies same representation"),
        };
        Ok(RingElement {
            ring: self.ring.clone(),
            repr,
        })
    }

    pub fn pow(&self, mut e: u128) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Multiplicative inverse, or None when the element is not a unit.
    pub fn try_invert(&self) -> Option<RingElement> {
        match &self.repr {
            Repr::Int(n) => {
                if n.is_one() || (-n).is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Repr::Res(r) => {
                let m = self.modulus();
                fp_inv(*r, m).map(|inv| RingElement {
                    ring: self.ring.clone(),
                    repr: Repr::Res(inv),
                })
            }
            Repr::Gf(v) => {
                let gf = self.gf_descriptor();
                let inv = fpoly_inv_mod(v, &gf.modulus, gf.p)?;
                let mut out = vec![0u64; gf.k];
                out[..inv.len()].copy_from_slice(&inv);
                Some(RingElement {
                    ring: self.ring.clone(),
                    repr: Repr::Gf(out),
                })
            }
        }
    }

    /// True iff a ≠ 0 and a·b = 0 for some b ≠ 0. Zero itself is, by the
    /// convention used here, not a zero divisor.
    pub fn is_zero_divisor(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        match &self.repr {
            Repr::Int(_) | Repr::Gf(_) => false,
            Repr::Res(r) => r.gcd(&self.modulus()) > 1,
        }
    }

    /// True iff a^t = 0 for some t ≥ 1 (so 0 is nilpotent).
    pub fn is_nilpotent(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.is_zero(),
            Repr::Res(r) => *r % radical(self.modulus()) == 0,
            Repr::Gf(v) => v.iter().all(|&c| c == 0),
        }
    }

    fn modulus(&self) -> u64 {
        match &self.ring {
            Ring::IntegersMod { modulus } => *modulus,
            _ => unreachable!("residue element outside ℤ_m"),
        }
    }

    fn char_p(&self) -> u64 {
        self.gf_descriptor().p
    }

    fn gf_descriptor(&self) -> &GfDescriptor {
        match &self.ring {
            Ring::GaloisField(gf) => gf,
            _ => unreachable!("GF element outside a Galois field"),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Int(n) => write!(f, "{n}"),
            Repr::Res(r) => write!(f, "{r}"),
            Repr::Gf(v) => {
                let mut first = true;
                for (i, &c) in v.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match (i, c) {
                        (0, c) => write!(f, "{c}")?,
                        (1, 1) => write!(f, "t")?,
                        (1, c) => write!(f, "{c}t")?,
                        (i, 1) => write!(f, "t^{i}")?,
                        (i, c) => write!(f, "{c}t^{i}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

/// Solve a·c = b for c by scanning a finite ring. Exists for completeness on
/// integral-but-not-division grids; in a finite commutative ring every
/// non-zero-divisor is a unit, so the inversion path is taken in practice.
pub fn solve_in_ring(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.check_same_ring(b)?;
    if let Some(inv) = a.try_invert() {
        return inv.mul(b);
    }
    let candidates = a.ring().elements()?;
    let mut found: Option<RingElement> = None;
    for c in candidates {
        if a.mul(&c)? == *b {
            if found.is_some() {
                return Err(Error::DivisionFailed(format!(
                    "equation {a}·c = {b} has multiple solutions"
                )));
            }
            found = Some(c);
        }
    }
    found.ok_or_else(|| Error::DivisionFailed(format!("equation {a}·c = {b} has no solution")))
}
