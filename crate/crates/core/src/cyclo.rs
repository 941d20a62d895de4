//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are stored in the power basis 1, z, ..., z^(phi(m)-1) where z is a
//! primitive m-th root of unity, as sparse (index, coefficient) pairs with the
//! index sorted ascending and no zero coefficients. Within a fixed conductor
//! this form is canonical, so derived equality and hashing are exact.
//!
//! Equality and hashing are structural: the same value stored at conductors 5
//! and 10 compares unequal. Callers that mix conductors should embed into a
//! common field first (`embed`, `unify`) or use `eq_in_common_field`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Multiplicities of the prime factors of `n`, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
///
/// Computed by deflation: x^m - 1 divided by the cyclotomic polynomials of
/// the proper divisors of m. Results are memoized per process.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    let poly = if m == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^m - 1
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                num = int_poly_exact_div(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    let arc = Arc::new(poly);
    cache
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// Exact division of integer polynomials, panics on nonzero remainder.
/// Both inputs are constant-term-first with nonzero leading coefficient.
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd, "degree underflow in exact division");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    let lead = &den[dd];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].div_rem(lead);
        assert!(r.is_zero(), "non-exact division in cyclotomic deflation");
        for j in 0..=dd {
            let delta = &q * &den[j];
            rem[i - dd + j] -= delta;
        }
        quot[i - dd] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder");
    quot
}

/// An element of Q(zeta_conductor) in reduced power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coords: Vec<(u32, Rational)>,
}

impl CyclotomicNumber {
    pub fn zero(conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        Ok(Self {
            conductor,
            coords: Vec::new(),
        })
    }

    pub fn one(conductor: u64) -> Result<Self> {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u64, value: Rational) -> Result<Self> {
        let mut out = Self::zero(conductor)?;
        if !value.is_zero() {
            out.coords.push((0, value));
        }
        Ok(out)
    }

    /// zeta_conductor^exponent, reduced to the power basis.
    pub fn root_of_unity(conductor: u64, exponent: i64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let e = exponent.rem_euclid(conductor as i64) as usize;
        let mut dense = vec![Rational::zero(); e + 1];
        dense[e] = Rational::one();
        Ok(Self::from_dense(conductor, dense))
    }

    /// Reduces a dense coefficient vector modulo the cyclotomic polynomial.
    fn from_dense(conductor: u64, mut dense: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        if dense.len() > deg {
            for i in (deg..dense.len()).rev() {
                if dense[i].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut dense[i], Rational::zero());
                for (j, coeff) in phi.iter().enumerate().take(deg) {
                    if !coeff.is_zero() {
                        let delta = &c * Rational::from_integer(coeff.clone());
                        dense[i - deg + j] -= delta;
                    }
                }
            }
        }
        let coords = dense
            .into_iter()
            .enumerate()
            .take(deg)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        Self { conductor, coords }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[(u32, Rational)] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].0 == 0 && self.coords[0].1.is_one()
    }

    /// The value as a rational if it lies in Q, else None.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(Rational::zero()),
            1 if self.coords[0].0 == 0 => Some(self.coords[0].1.clone()),
            _ => None,
        }
    }

    fn to_dense(&self) -> Vec<Rational> {
        let deg = euler_phi(self.conductor) as usize;
        let mut dense = vec![Rational::zero(); deg.max(1)];
        for (i, c) in &self.coords {
            dense[*i as usize] = c.clone();
        }
        dense
    }

    /// Rewrites the element over a larger conductor that this one divides.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 {
            return Err(Error::ZeroConductor);
        }
        if target % self.conductor != 0 {
            return Err(Error::NonDivisibleConductors {
                sub: self.conductor,
                sup: target,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let factor = (target / self.conductor) as usize;
        let mut dense = vec![Rational::zero(); 1];
        for (i, c) in &self.coords {
            let e = *i as usize * factor;
            if dense.len() <= e {
                dense.resize(e + 1, Rational::zero());
            }
            dense[e] = c.clone();
        }
        Ok(Self::from_dense(target, dense))
    }

    /// Embeds both operands into Q(zeta_lcm).
    pub fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        let m = lcm_u64(self.conductor, other.conductor);
        Ok((self.embed(m)?, other.embed(m)?))
    }

    /// Mathematical equality, tolerating different conductors.
    pub fn eq_in_common_field(&self, other: &Self) -> Result<bool> {
        if self.conductor == other.conductor {
            return Ok(self == other);
        }
        let (a, b) = self.unify(other)?;
        Ok(a == b)
    }

    /// Applies the field automorphism zeta -> zeta^t for t coprime to the conductor.
    pub fn galois(&self, t: u64) -> Result<Self> {
        let m = self.conductor;
        if m > 1 && t.gcd(&m) != 1 {
            return Err(Error::Schema(format!(
                "galois exponent {t} not coprime to conductor {m}"
            )));
        }
        let mut dense = vec![Rational::zero(); m as usize];
        if dense.is_empty() {
            dense.push(Rational::zero());
        }
        for (i, c) in &self.coords {
            let e = ((*i as u64) * t % m) as usize;
            dense[e] += c;
        }
        Ok(Self::from_dense(m, dense))
    }

    /// Complex conjugation, zeta -> zeta^(-1).
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
            .expect("m-1 is always coprime to m")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        let mut coords = Vec::with_capacity(a.coords.len() + b.coords.len());
        let (mut i, mut j) = (0, 0);
        while i < a.coords.len() || j < b.coords.len() {
            match (a.coords.get(i), b.coords.get(j)) {
                (Some((ia, ca)), Some((ib, cb))) if ia == ib => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        coords.push((*ia, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ia, ca)), Some((ib, _))) if ia < ib => {
                    coords.push((*ia, ca.clone()));
                    i += 1;
                }
                (Some(_), Some((ib, cb))) => {
                    coords.push((*ib, cb.clone()));
                    j += 1;
                }
                (Some((ia, ca)), None) => {
                    coords.push((*ia, ca.clone()));
                    i += 1;
                }
                (None, Some((ib, cb))) => {
                    coords.push((*ib, cb.clone()));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Self {
            conductor: a.conductor,
            coords,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            conductor: self.conductor,
            coords: self.coords.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.conductor);
        }
        let deg = euler_phi(a.conductor) as usize;
        let mut dense = vec![Rational::zero(); 2 * deg.max(1)];
        for (ia, ca) in &a.coords {
            for (ib, cb) in &b.coords {
                dense[(*ia + *ib) as usize] += ca * cb;
            }
        }
        Ok(Self::from_dense(a.conductor, dense))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self {
                conductor: self.conductor,
                coords: Vec::new(),
            };
        }
        Self {
            conductor: self.conductor,
            coords: self.coords.iter().map(|(i, c)| (*i, c * factor)).collect(),
        }
    }

    /// Multiplicative inverse via the extended euclidean algorithm against
    /// the cyclotomic polynomial, which is irreducible over Q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                conductor: self.conductor,
            });
        }
        if let Some(r) = self.as_rational() {
            return Self::from_rational(self.conductor, r.recip());
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a = self.to_dense();
        let (g, u, _) = poly_xgcd(&a, &phi);
        debug_assert_eq!(poly_degree(&g), Some(0), "cyclotomic polynomial reducible?");
        let g0 = g[0].clone();
        let scaled: Vec<Rational> = u.into_iter().map(|c| c / &g0).collect();
        Ok(Self::from_dense(self.conductor, scaled))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unify(other)?;
        a.mul(&b.inverse()?)
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.coords.iter().enumerate() {
            let positive = c.is_positive();
            if k == 0 {
                if !positive {
                    write!(f, "-")?;
                }
            } else if positive {
                write!(f, " + ")?;
            } else {
                write!(f, " - ")?;
            }
            let mag = c.abs();
            if *i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if *i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Remainder of a by b over Q, together with the quotient.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut rem = poly_trim(a.to_vec());
    let da = match poly_degree(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![Rational::zero()], rem),
    };
    let mut quot = vec![Rational::zero(); da - db + 1];
    let lead = b[db].clone();
    for i in (db..=da).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / &lead;
        for j in 0..=db {
            if !b[j].is_zero() {
                let delta = &q * &b[j];
                rem[i - db + j] -= delta;
            }
        }
        quot[i - db] = q;
    }
    (quot, poly_trim(rem))
}

/// Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g.
fn poly_xgcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    let mut v0 = vec![Rational::zero()];
    let mut v1 = vec![Rational::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let nu = poly_sub(&u0, &poly_mul(&q, &u1));
        let nv = poly_sub(&v0, &poly_mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    (r0, u0, v0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (da, db) = match (poly_degree(a), poly_degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return vec![Rational::zero()],
    };
    let mut out = vec![Rational::zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[i64]) -> Vec<BigInt> {
        p.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_105_has_coefficient_minus_two() {
        // Smallest index whose cyclotomic polynomial has a coefficient of
        // absolute value 2; it appears at degree 7.
        let phi = cyclotomic_polynomial(105);
        assert_eq!(phi.len() - 1, euler_phi(105) as usize);
        assert_eq!(phi[7], BigInt::from(-2));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(125), 100);
        assert_eq!(euler_phi(40), 16);
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let mut acc = CyclotomicNumber::zero(5).unwrap();
        for k in 0..5 {
            acc = acc.add(&CyclotomicNumber::root_of_unity(5, k).unwrap()).unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn cube_root_pair_sums_to_minus_one() {
        let z = CyclotomicNumber::root_of_unity(3, 1).unwrap();
        let s = z.add(&z.pow(2).unwrap()).unwrap();
        assert_eq!(s.as_rational(), Some(rational_int(-1)));
    }

    #[test]
    fn embedding_matches_lower_conductor_value() {
        let z6 = CyclotomicNumber::root_of_unity(6, 1).unwrap();
        let z12_sq = CyclotomicNumber::root_of_unity(12, 2).unwrap();
        assert!(z6.eq_in_common_field(&z12_sq).unwrap());
        assert!(!z6.eq_in_common_field(&CyclotomicNumber::root_of_unity(12, 3).unwrap()).unwrap());
    }

    #[test]
    fn conjugate_is_inverse_on_roots_of_unity() {
        for m in [3u64, 4, 5, 8, 12, 15] {
            for k in 1..m.min(7) {
                let u = CyclotomicNumber::root_of_unity(m, k as i64).unwrap();
                let prod = u.conjugate().mul(&u).unwrap();
                assert!(prod.is_one(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let z = CyclotomicNumber::root_of_unity(5, 1).unwrap();
        let x = CyclotomicNumber::one(5).unwrap().add(&z).unwrap();
        let prod = x.inverse().unwrap().mul(&x).unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn half_turn_is_minus_one() {
        let x = CyclotomicNumber::root_of_unity(8, 4).unwrap();
        assert_eq!(x.as_rational(), Some(rational_int(-1)));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let z = CyclotomicNumber::zero(7).unwrap();
        assert!(matches!(
            z.inverse(),
            Err(Error::DivisionByZero { conductor: 7 })
        ));
    }

    #[test]
    fn zero_conductor_is_rejected() {
        assert!(matches!(CyclotomicNumber::zero(0), Err(Error::ZeroConductor)));
    }

    #[test]
    fn galois_permutes_primitive_roots() {
        let z = CyclotomicNumber::root_of_unity(7, 1).unwrap();
        let image = z.galois(3).unwrap();
        assert_eq!(image, CyclotomicNumber::root_of_unity(7, 3).unwrap());
        let twice = image.galois(3).unwrap();
        assert_eq!(twice, CyclotomicNumber::root_of_unity(7, 2).unwrap());
    }

    #[test]
    fn display_is_readable() {
        let z = CyclotomicNumber::root_of_unity(12, 3).unwrap();
        let x = z.scale(&rational(3, 2)).add(&CyclotomicNumber::one(12).unwrap()).unwrap();
        assert_eq!(x.to_string(), "1 + 3/2*z12^3");
        let y = CyclotomicNumber::root_of_unity(12, 5).unwrap();
        assert_eq!(y.to_string(), "-z12 + z12^3");
    }
}
