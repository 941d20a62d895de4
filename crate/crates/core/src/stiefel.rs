//! Homological bookkeeping for partial unitary flag quotients U(n)/U(k):
//! sphere dimension signatures, Poincare series, factorial obstruction
//! orders, mapping-cone homology with its torsion Euler characteristic, unit
//! residues mod the group order, and the eligibility report that combines
//! them with the fixity data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};

use crate::cyclo::{factorize, Rational};
use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::rep::Representation;

/// Integer-coefficient polynomial in one variable, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

impl IntPolynomial {
    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0 {
            self.coeffs.pop();
        }
        self
    }

    /// Multiply by (1 + t^shift).
    fn mul_one_plus_power(&self, shift: usize) -> Self {
        let mut out = vec![0u64; self.coeffs.len() + shift];
        for (d, &c) in self.coeffs.iter().enumerate() {
            out[d] += c;
            out[d + shift] += c;
        }
        IntPolynomial { coeffs: out }.trim()
    }

    pub fn coeff(&self, degree: usize) -> u64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|d| self.coeffs[d] == self.coeffs[n - 1 - d])
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, d) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, d) => write!(f, "t^{d}")?,
                (c, 1) => write!(f, "{c}*t")?,
                (c, d) => write!(f, "{c}*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// One degree of a finitely generated graded abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSummand {
    pub free_rank: u64,
    /// Orders of the cyclic torsion summands, each at least 2, ascending.
    pub torsion: Vec<u64>,
}

/// Finitely generated graded abelian group, nonzero in finitely many degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedGroup {
    summands: BTreeMap<usize, DegreeSummand>,
}

impl GradedGroup {
    pub fn new() -> Self {
        GradedGroup::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn add_free(&mut self, degree: usize, rank: u64) {
        if rank == 0 {
            return;
        }
        self.summands.entry(degree).or_default().free_rank += rank;
    }

    /// Records a cyclic summand Z/order; order 1 contributes nothing.
    pub fn add_torsion(&mut self, degree: usize, order: u64) -> Result<()> {
        if order == 0 {
            return Err(Error::DegreeZero);
        }
        if order == 1 {
            return Ok(());
        }
        let slot = self.summands.entry(degree).or_default();
        slot.torsion.push(order);
        slot.torsion.sort_unstable();
        Ok(())
    }

    pub fn summand(&self, degree: usize) -> Option<&DegreeSummand> {
        self.summands.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.summands.keys().copied()
    }

    pub fn total_free_rank(&self) -> u64 {
        self.summands.values().map(|s| s.free_rank).sum()
    }

    /// Poincare polynomial of the free part.
    pub fn poincare_polynomial(&self) -> IntPolynomial {
        let top = self.summands.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![0u64; top + 1];
        for (&d, s) in &self.summands {
            coeffs[d] = s.free_rank;
        }
        IntPolynomial { coeffs }.trim()
    }
}

/// Odd sphere dimensions of U(n)/U(k), descending: [2n-1, 2n-3, ..., 2k+1].
pub fn sphere_dims(n: u32, k: u32) -> Result<Vec<u64>> {
    if k >= n {
        return Err(Error::StageRange { n, k });
    }
    Ok((k..n).rev().map(|i| 2 * i as u64 + 1).collect())
}

fn poincare_product(n: u32, k: u32) -> IntPolynomial {
    let mut p = IntPolynomial::one();
    for i in k..n {
        p = p.mul_one_plus_power(2 * i as usize + 1);
    }
    p
}

fn poincare_recursive(n: u32, k: u32) -> IntPolynomial {
    if k == n {
        return IntPolynomial::one();
    }
    poincare_recursive(n, k + 1).mul_one_plus_power(2 * k as usize + 1)
}

/// Poincare series of U(n)/U(k), computed both as the exterior product
/// prod_{i=k}^{n-1} (1 + t^{2i+1}) and by peeling one sphere at a time; the
/// two routes must agree.
pub fn poincare_series(n: u32, k: u32) -> Result<IntPolynomial> {
    if k >= n {
        return Err(Error::StageRange { n, k });
    }
    let product = poincare_product(n, k);
    let recursive = poincare_recursive(n, k);
    if product != recursive {
        return Err(Error::RouteMismatch {
            context: format!("poincare series of U({n})/U({k})"),
            lhs: product.to_string(),
            rhs: recursive.to_string(),
        });
    }
    Ok(product)
}

/// Order of the obstruction group for extending a bundle over the 2n+2-cell:
/// n factorial.
pub fn bott_order(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::FamilyParameter(
            "factorial obstruction order needs n >= 1".into(),
        ));
    }
    let mut acc = BigUint::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    Ok(acc)
}

/// Sphere dimensions [2n-1, 4n-5] of the two-sphere product that a degree-n
/// fixity-one action lands on.
pub fn fixity_one_target(n: u32) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::FamilyParameter(
            "two-sphere target needs degree n >= 2".into(),
        ));
    }
    Ok(vec![2 * u64::from(n) - 1, 4 * u64::from(n) - 5])
}

/// Counts of subsets of `dims` with each possible sum, as a polynomial in
/// the sum.
fn subset_sum_counts(dims: &[u64]) -> Vec<u64> {
    let total: usize = dims.iter().map(|&d| d as usize).sum();
    let mut ways = vec![0u64; total + 1];
    ways[0] = 1;
    for &d in dims {
        let d = d as usize;
        for s in (0..=total - d).rev() {
            if ways[s] > 0 {
                ways[s + d] += ways[s];
            }
        }
    }
    ways
}

/// Free homology of a product of spheres: rank in degree d equals the number
/// of sub-products with dimensions summing to d.
pub fn product_homology(sig: &[u64]) -> GradedGroup {
    let mut out = GradedGroup::new();
    for (degree, &count) in subset_sum_counts(sig).iter().enumerate() {
        out.add_free(degree, count);
    }
    out
}

/// Homology of the mapping cone of (g x id) where g is a self-map of the top
/// sphere with the given degree and id covers the remaining factors. The
/// long exact sequence leaves one Z/|d| summand in degree top+s for every
/// sub-product of the remaining factors with dimensions summing to s.
pub fn cone_homology(sig: &[u64], map_degree: i64) -> Result<GradedGroup> {
    let (&top, rest) = sig.split_first().ok_or_else(|| {
        Error::FamilyParameter("mapping cone needs at least one sphere factor".into())
    })?;
    if map_degree == 0 {
        return Err(Error::DegreeZero);
    }
    let order = map_degree.unsigned_abs();
    let mut out = GradedGroup::new();
    if order == 1 {
        return Ok(out);
    }
    for (s, &count) in subset_sum_counts(rest).iter().enumerate() {
        for _ in 0..count {
            out.add_torsion(top as usize + s, order)?;
        }
    }
    Ok(out)
}

/// Alternating product of the homology orders, prod |H_i|^{(-1)^i}, defined
/// only when every degree is finite.
pub fn chi_tor(c: &GradedGroup) -> Result<Rational> {
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for degree in c.degrees() {
        let summand = c.summand(degree).unwrap();
        if summand.free_rank > 0 {
            return Err(Error::InfiniteHomology { degree });
        }
        let mut order = BigUint::one();
        for &t in &summand.torsion {
            order *= t;
        }
        if degree % 2 == 0 {
            numerator *= order;
        } else {
            denominator *= order;
        }
    }
    Ok(Rational::new(numerator.into(), denominator.into()))
}

fn factorial_u64(m: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for i in 2..=m {
        acc = acc
            .checked_mul(i)
            .ok_or_else(|| Error::FamilyParameter(format!("{m}! overflows u64")))?;
    }
    Ok(acc)
}

/// Torsion Euler characteristic of the composite of stage maps collapsing
/// U(n)/U(k) onto a product of spheres. Stage j cones off a degree-(j-1)!
/// self-map of the top sphere S^{2j-1} over the remaining factors; each
/// stage is computed both by the signed-subset-count exponent formula and
/// from the cone homology, and the routes must agree. The total is 1.
pub fn chi_tor_composite(n: u32, k: u32) -> Result<Rational> {
    if k == 0 || k >= n {
        return Err(Error::StageRange { n, k });
    }
    let mut total = Rational::one();
    for j in ((k + 2)..=n).rev() {
        let map_degree = factorial_u64(u64::from(j) - 1)?;
        let sig = sphere_dims(j, k)?;

        // Exponent route: chi^tor(f x id) = deg^{chi~}, where chi~ is the
        // signed count of sub-products, each sphere factor contributing
        // (1 + (-1)^dim), all taken in cone degrees top + s.
        let mut exponent: i64 = 1;
        for &dim in &sig[1..] {
            exponent *= 1 + if dim % 2 == 0 { 1 } else { -1 };
        }
        if sig[0] % 2 == 1 {
            exponent = -exponent;
        }
        let base = BigInt::from(map_degree);
        let route_a = if exponent >= 0 {
            Rational::from_integer(base.pow(exponent as u32))
        } else {
            Rational::new(BigInt::one(), base.pow(exponent.unsigned_abs() as u32))
        };

        let route_b = chi_tor(&cone_homology(&sig, map_degree as i64)?)?;
        if route_a != route_b {
            return Err(Error::ChiTorMismatch {
                stage: j,
                lhs: route_a.to_string(),
                rhs: route_b.to_string(),
            });
        }
        total *= route_b;
    }
    Ok(total)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(q as i128) as u64)
}

fn residue_mod(value: &BigInt, q: u64) -> u64 {
    let q_big = BigInt::from(q);
    let mut r = value % &q_big;
    if r.is_negative() {
        r += &q_big;
    }
    r.to_u64().expect("residue fits u64 after reduction")
}

/// Residue of the rational x in (Z/q)^x: numerator times inverse
/// denominator. Both must be units mod q.
pub fn swan_unit(x: &Rational, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::NotAUnit {
            numerator: x.numer().to_string(),
            denominator: x.denom().to_string(),
            modulus: q,
        });
    }
    if q == 1 {
        return Ok(0);
    }
    let numerator = residue_mod(x.numer(), q);
    let denominator = residue_mod(x.denom(), q);
    if gcd_u64(numerator, q) != 1 || gcd_u64(denominator, q) != 1 {
        return Err(Error::NotAUnit {
            numerator: x.numer().to_string(),
            denominator: x.denom().to_string(),
            modulus: q,
        });
    }
    let inverse = mod_inverse(denominator, q).expect("coprime residue is invertible");
    Ok((numerator as u128 * inverse as u128 % q as u128) as u64)
}

/// True when every prime factor of q is at least n, i.e. q is coprime to
/// (n-1)! without forming the factorial.
pub fn coprime_to_lower_factorial(q: u64, n: u32) -> bool {
    factorize(q).into_iter().all(|(p, _)| p >= u64::from(n))
}

/// True when the p-rank admits a free action on a product of two spheres:
/// rank at most 2 is necessary.
pub fn two_sphere_necessity(group: &MatrixGroup, p: u64) -> bool {
    group.p_rank(p).r_p <= 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    SmoothManifold,
    FiniteComplex,
    FiniteDimensionalComplex,
    Ineligible,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tier::SmoothManifold => "smooth-manifold",
            Tier::FiniteComplex => "finite-complex",
            Tier::FiniteDimensionalComplex => "finite-dimensional-complex",
            Tier::Ineligible => "ineligible",
        };
        f.write_str(s)
    }
}

/// Eligibility summary for propagating the linear action on U(n)/U(k) to a
/// free action on the product of spheres with the recorded dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationReport {
    pub group_order: u64,
    pub degree: u32,
    pub stage: u32,
    pub free: bool,
    pub coprime: bool,
    pub chi_tor: Rational,
    pub swan_unit: Option<u64>,
    pub target: Vec<u64>,
    pub tier: Tier,
    pub notes: Vec<String>,
}

/// Combines freeness at the stage, order coprimality, and the torsion Euler
/// characteristic into a tier:
///
/// * smooth-manifold: free at stage k >= 1, order coprime, chi^tor = 1;
/// * finite-complex: k = 0, order coprime, and top-sphere isotropy of rank
///   at most one, trading one stage for an extra sphere factor;
/// * finite-dimensional-complex: free and coprime but chi^tor is a
///   nontrivial unit;
/// * ineligible otherwise, with every failed condition named in the notes.
pub fn propagation_report(rep: &Representation, k: u32) -> Result<PropagationReport> {
    let n = rep.degree() as u32;
    if k >= n {
        return Err(Error::StageRange { n, k });
    }
    let q = rep.order() as u64;
    let free = rep.free_on_stiefel(k as usize)?;
    let coprime = coprime_to_lower_factorial(q, n);
    let chi = if n >= 2 {
        chi_tor_composite(n, k.max(1))?
    } else {
        Rational::one()
    };
    let swan = match swan_unit(&chi, q) {
        Ok(u) => Some(u),
        Err(Error::NotAUnit { .. }) => None,
        Err(e) => return Err(e),
    };
    let fixity = rep.fixity()?.fixity;
    let mut notes = Vec::new();

    let tier = if k >= 1 && free && coprime && chi.is_one() {
        notes.push(
            "freeness, coprimality, and torsion Euler characteristic verified here; \
             smoothness and homological triviality of the propagated action come from \
             the general propagation machinery"
                .into(),
        );
        Tier::SmoothManifold
    } else if k == 0 && coprime && n >= 2 {
        let tower = rep.isotropy_tower()?;
        if tower.ranks[n as usize - 1] <= 1 {
            notes.push(
                "top-sphere isotropy has rank at most one; the target gains one extra \
                 sphere factor of unspecified odd dimension"
                    .into(),
            );
            Tier::FiniteComplex
        } else {
            notes.push(format!(
                "failed: isotropy on the top sphere has rank {} > 1",
                tower.ranks[n as usize - 1]
            ));
            Tier::Ineligible
        }
    } else {
        if k >= 1 && !free {
            notes.push(format!("failed: action is not free on U({n})/U({k})"));
        }
        if !coprime {
            notes.push(format!(
                "failed: group order {q} shares a prime factor with ({n}-1)!"
            ));
        }
        if k >= 1 && free && coprime && !chi.is_one() {
            notes.push(format!(
                "torsion Euler characteristic {chi} is a nontrivial unit; finiteness \
                 obstruction not evaluated"
            ));
            Tier::FiniteDimensionalComplex
        } else {
            Tier::Ineligible
        }
    };

    match swan {
        Some(1) => notes.push("unit class 1: finiteness obstruction vanishes".into()),
        Some(u) => notes.push(format!(
            "unit class {u} mod {q}: finiteness obstruction not evaluated"
        )),
        None => notes.push(format!(
            "torsion Euler characteristic is not a unit mod {q}"
        )),
    }
    if tier == Tier::Ineligible && fixity == 1 && n >= 2 {
        let pair = fixity_one_target(n)?;
        notes.push(format!(
            "fixity one still gives a free smooth action on a product of spheres of \
             dimensions {pair:?}"
        ));
    }

    let target = if tier == Tier::FiniteComplex {
        sphere_dims(n, 1)?
    } else {
        sphere_dims(n, k.max(1).min(n - 1))?
    };

    Ok(PropagationReport {
        group_order: q,
        degree: n,
        stage: k,
        free,
        coprime,
        chi_tor: chi,
        swan_unit: swan,
        target,
        tier,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn sphere_dims_descend_from_2n_minus_1() {
        assert_eq!(sphere_dims(4, 1).unwrap(), vec![7, 5, 3]);
        assert_eq!(sphere_dims(3, 1).unwrap(), vec![5, 3]);
        for n in 1..=6 {
            assert_eq!(sphere_dims(n, n - 1).unwrap(), vec![2 * u64::from(n) - 1]);
        }
        assert!(matches!(
            sphere_dims(3, 3),
            Err(Error::StageRange { n: 3, k: 3 })
        ));
    }

    #[test]
    fn poincare_series_small_cases() {
        let p21 = poincare_series(2, 1).unwrap();
        assert_eq!(p21.coeffs(), &[1, 0, 0, 1]);
        assert_eq!(p21.to_string(), "1 + t^3");
        let p31 = poincare_series(3, 1).unwrap();
        assert_eq!(p31.coeffs(), &[1, 0, 0, 1, 0, 1, 0, 0, 1]);
        assert_eq!(p31.to_string(), "1 + t^3 + t^5 + t^8");
    }

    #[test]
    fn euler_coefficient_vanishes_in_the_next_stage_series() {
        // Coefficient of t^{2k+2} in the series one stage up is zero.
        for n in 2..=6u32 {
            for k in 1..n {
                if k + 1 > n {
                    continue;
                }
                let series = if k + 1 == n {
                    IntPolynomial::one()
                } else {
                    poincare_series(n, k + 1).unwrap()
                };
                assert_eq!(series.coeff(2 * k as usize + 2), 0, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn poincare_series_total_rank_and_palindrome() {
        for n in 1..=6u32 {
            for k in 0..n {
                let p = poincare_series(n, k).unwrap();
                assert_eq!(p.eval_at_one(), 1 << (n - k), "n={n} k={k}");
                assert!(p.is_palindromic(), "n={n} k={k}");
                assert_eq!(p.degree(), (n * n - k * k) as usize, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn factorial_orders_satisfy_the_recurrence() {
        assert_eq!(bott_order(1).unwrap(), BigUint::from(1u32));
        assert_eq!(bott_order(2).unwrap(), BigUint::from(2u32));
        assert_eq!(bott_order(4).unwrap(), BigUint::from(24u32));
        assert_eq!(bott_order(8).unwrap(), BigUint::from(40320u32));
        for n in 2..=8u32 {
            assert_eq!(
                bott_order(n).unwrap(),
                bott_order(n - 1).unwrap() * BigUint::from(n)
            );
        }
        assert!(bott_order(0).is_err());
    }

    #[test]
    fn two_sphere_target_dimensions() {
        assert_eq!(fixity_one_target(2).unwrap(), vec![3, 3]);
        assert_eq!(fixity_one_target(3).unwrap(), vec![5, 7]);
        assert_eq!(fixity_one_target(4).unwrap(), vec![7, 11]);
        assert!(fixity_one_target(1).is_err());
    }

    #[test]
    fn product_homology_matches_the_exterior_pattern() {
        let single = product_homology(&[3]);
        assert_eq!(single.summand(0).unwrap().free_rank, 1);
        assert_eq!(single.summand(3).unwrap().free_rank, 1);
        assert!(single.summand(1).is_none());

        let double = product_homology(&[5, 3]);
        for d in [0, 3, 5, 8] {
            assert_eq!(double.summand(d).unwrap().free_rank, 1, "degree {d}");
        }
        assert_eq!(double.total_free_rank(), 4);

        let triple = product_homology(&[7, 5, 3]);
        assert_eq!(triple.total_free_rank(), 8);
        assert_eq!(triple.poincare_polynomial(), poincare_series(4, 1).unwrap());
    }

    #[test]
    fn cone_homology_of_a_degree_two_self_map_is_a_moore_space() {
        let c = cone_homology(&[3], 2).unwrap();
        assert_eq!(c.summand(3).unwrap().torsion, vec![2]);
        assert_eq!(c.degrees().count(), 1);
        let neg = cone_homology(&[3], -2).unwrap();
        assert_eq!(neg, c);
    }

    #[test]
    fn cone_homology_of_the_order_24_stage_map() {
        let c = cone_homology(&[9, 7], 24).unwrap();
        assert_eq!(c.summand(9).unwrap().torsion, vec![24]);
        assert_eq!(c.summand(16).unwrap().torsion, vec![24]);
        assert_eq!(c.degrees().count(), 2);
    }

    #[test]
    fn cone_homology_rejects_degree_zero_and_collapses_degree_one() {
        assert!(matches!(cone_homology(&[5], 0), Err(Error::DegreeZero)));
        assert!(cone_homology(&[5], 1).unwrap().is_trivial());
    }

    #[test]
    fn chi_tor_alternates_over_degrees() {
        let moore = cone_homology(&[3], 2).unwrap();
        assert_eq!(chi_tor(&moore).unwrap(), Rational::new(1.into(), 2.into()));
        let stage = cone_homology(&[9, 7], 24).unwrap();
        assert!(chi_tor(&stage).unwrap().is_one());
        assert!(chi_tor(&GradedGroup::new()).unwrap().is_one());
    }

    #[test]
    fn chi_tor_rejects_infinite_homology() {
        let mut g = GradedGroup::new();
        g.add_free(4, 1);
        assert!(matches!(
            chi_tor(&g),
            Err(Error::InfiniteHomology { degree: 4 })
        ));
    }

    #[test]
    fn composite_chi_tor_is_one_across_the_desk_range() {
        assert!(chi_tor_composite(5, 3).unwrap().is_one());
        assert!(chi_tor_composite(3, 1).unwrap().is_one());
        assert!(chi_tor_composite(2, 1).unwrap().is_one());
        for n in 2..=6u32 {
            for k in 1..n {
                assert!(chi_tor_composite(n, k).unwrap().is_one(), "n={n} k={k}");
            }
        }
        assert!(matches!(
            chi_tor_composite(3, 0),
            Err(Error::StageRange { .. })
        ));
    }

    #[test]
    fn swan_unit_inverts_the_denominator() {
        assert_eq!(swan_unit(&Rational::one(), 625).unwrap(), 1);
        let r = swan_unit(&Rational::new(1.into(), 24.into()), 625).unwrap();
        assert_eq!(r, 599);
        assert_eq!(24 * r % 625, 1);
        assert_eq!(
            swan_unit(&Rational::from_integer(6.into()), 35).unwrap(),
            6
        );
    }

    #[test]
    fn swan_unit_rejects_shared_factors() {
        let x = Rational::new(5.into(), 7.into());
        assert!(matches!(swan_unit(&x, 35), Err(Error::NotAUnit { .. })));
        let y = Rational::new(3.into(), 4.into());
        assert!(matches!(swan_unit(&y, 9), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn swan_unit_is_multiplicative() {
        let a = Rational::new(3.into(), 8.into());
        let b = Rational::new(11.into(), 2.into());
        let q = 35;
        let lhs = swan_unit(&(a.clone() * b.clone()), q).unwrap();
        let rhs = swan_unit(&a, q).unwrap() * swan_unit(&b, q).unwrap() % q;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coprimality_means_no_prime_below_n() {
        assert!(coprime_to_lower_factorial(625, 5));
        assert!(coprime_to_lower_factorial(27, 3));
        assert!(!coprime_to_lower_factorial(60, 3));
        assert!(coprime_to_lower_factorial(1, 7));
        assert!(!coprime_to_lower_factorial(108, 3));
    }

    #[test]
    fn smooth_tier_for_the_order_625_metacyclic_action() {
        let rep = families::modular_metacyclic(5, 4).unwrap();
        let report = propagation_report(&rep, 3).unwrap();
        assert_eq!(report.tier, Tier::SmoothManifold);
        assert_eq!(report.target, vec![9, 7]);
        assert!(report.free);
        assert!(report.coprime);
        assert!(report.chi_tor.is_one());
        assert_eq!(report.swan_unit, Some(1));
    }

    #[test]
    fn finite_complex_tier_at_stage_zero() {
        let rep = families::heisenberg(3).unwrap();
        let report = propagation_report(&rep, 0).unwrap();
        assert_eq!(report.tier, Tier::FiniteComplex);
        assert_eq!(report.target, vec![5, 3]);
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("extra sphere factor")));
    }

    #[test]
    fn smooth_tier_for_the_heisenberg_two_sphere_stage() {
        let rep = families::heisenberg(3).unwrap();
        let report = propagation_report(&rep, 1).unwrap();
        assert_eq!(report.tier, Tier::SmoothManifold);
        assert_eq!(report.target, vec![5, 3]);
    }

    #[test]
    fn rank_three_isotropy_blocks_the_stage_zero_route() {
        let rep = families::wreath(3).unwrap();
        let report = propagation_report(&rep, 0).unwrap();
        assert_eq!(report.tier, Tier::Ineligible);
        assert!(report.notes.iter().any(|n| n.contains("rank")));
    }

    #[test]
    fn shared_small_primes_block_eligibility_but_keep_the_fixity_route() {
        let rep = families::g_p(3).unwrap();
        let report = propagation_report(&rep, 1).unwrap();
        assert_eq!(report.tier, Tier::Ineligible);
        assert!(!report.coprime);
        assert!(report.free);
        assert!(report.notes.iter().any(|n| n.contains("prime factor")));
        assert!(report.notes.iter().any(|n| n.contains("fixity one")));
    }

    #[test]
    fn stage_out_of_range_is_rejected() {
        let rep = families::heisenberg(3).unwrap();
        assert!(matches!(
            propagation_report(&rep, 3),
            Err(Error::StageRange { n: 3, k: 3 })
        ));
    }

    #[test]
    fn two_sphere_necessity_tracks_the_rank() {
        let h = families::heisenberg(3).unwrap();
        assert!(two_sphere_necessity(h.group(), 3));
        let w = families::wreath(3).unwrap();
        assert!(!two_sphere_necessity(w.group(), 3));
    }
}
