//! Character-based analysis of a matrix group acting on its natural module:
//! fixed-subspace dimensions, fixity, freeness on partial frame quotients,
//! isotropy towers, irreducibility, and the structural cross-checks tying
//! fixity to p-rank, center, and maximal subgroups.

use num_traits::{One, Signed, ToPrimitive};

use crate::cyclo::{factorize, CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::group::{MatrixGroup, SubgroupHandle};
use crate::matrix::CycloMatrix;

/// A matrix group together with its trace character, analyzed as the
/// representation given by the matrices themselves.
pub struct Representation {
    group: MatrixGroup,
    character: Vec<CyclotomicNumber>,
}

/// Fixity data: the maximum fixed-space dimension over nontrivial elements.
#[derive(Clone, Debug)]
pub struct FixityReport {
    /// -1 for the trivial group, by convention.
    pub fixity: i64,
    /// Element index attaining the maximum, if the group is nontrivial.
    pub witness: Option<u32>,
    /// dim V^<g> for every element index.
    pub per_element: Vec<usize>,
    pub trivial_group: bool,
}

/// Maximal isotropy rank at each stage U(n)/U(k), k = 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyTower {
    pub n: usize,
    pub ranks: Vec<usize>,
    /// breakpoints[t] = first k at which rank t occurs, t = 0..=r(G).
    pub breakpoints: Vec<usize>,
}

/// Consistency record tying fixity f to the subgroup structure: rank f+1,
/// cyclic center, and an abelian maximal subgroup of the Sylow p-subgroup.
#[derive(Clone, Debug)]
pub struct CrosscheckRecord {
    pub p: u64,
    pub fixity: i64,
    pub r_p: usize,
    pub sylow_order: usize,
    pub rank_matches: bool,
    pub cyclic_center: bool,
    pub abelian_maximal: bool,
}

impl CrosscheckRecord {
    pub fn all_pass(&self) -> bool {
        self.rank_matches && self.cyclic_center && self.abelian_maximal
    }
}

impl Representation {
    pub fn from_group(group: MatrixGroup) -> Result<Self> {
        let character = group
            .elements()
            .iter()
            .map(|m| m.trace())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { group, character })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn character(&self, element: u32) -> &CyclotomicNumber {
        &self.character[element as usize]
    }

    fn average_to_dim(&self, sum: &CyclotomicNumber, count: usize) -> Result<usize> {
        let avg = sum.scale(&Rational::new(1.into(), (count as i64).into()));
        let as_int = avg
            .as_rational()
            .filter(|r| r.is_integer() && !r.is_negative())
            .and_then(|r| r.to_integer().to_usize());
        match as_int {
            Some(d) if d <= self.degree() => Ok(d),
            _ => Err(Error::NonIntegerAverage {
                value: avg.to_string(),
            }),
        }
    }

    /// Dimension of the common fixed subspace, by character averaging.
    pub fn fixed_dim(&self, s: &SubgroupHandle) -> Result<usize> {
        let mut sum = CyclotomicNumber::zero(self.group.conductor())?;
        for &h in s.elements() {
            sum = sum.add(&self.character[h as usize])?;
        }
        self.average_to_dim(&sum, s.order())
    }

    /// Fixed dimension of the cyclic subgroup generated by one element.
    pub fn fixed_dim_cyclic(&self, g: u32) -> Result<usize> {
        if g == 0 {
            return Ok(self.degree());
        }
        let mut sum = self.character[0].clone();
        let mut cur = g;
        let mut count = 1usize;
        while cur != 0 {
            sum = sum.add(&self.character[cur as usize])?;
            cur = self.group.mul_index(cur, g);
            count += 1;
        }
        self.average_to_dim(&sum, count)
    }

    /// Fixed dimension by exact linear algebra: the common kernel of
    /// (rho(g) - I) over a generating set.
    pub fn fixed_dim_kernel(&self, s: &SubgroupHandle) -> Result<usize> {
        let gens = if s.generators().is_empty() {
            self.group.subgroup_generators(s.elements())
        } else {
            s.generators().to_vec()
        };
        if gens.is_empty() {
            return Ok(self.degree());
        }
        let id = CycloMatrix::identity(self.degree(), self.group.conductor())?;
        let blocks = gens
            .iter()
            .map(|&g| self.group.element(g).sub(&id))
            .collect::<Result<Vec<_>>>()?;
        CycloMatrix::vstack(&blocks)?.kernel_rank()
    }

    /// dim V^<g> for every element, by the character route.
    pub fn per_element_fixed_dims(&self) -> Result<Vec<usize>> {
        (0..self.order() as u32).map(|g| self.fixed_dim_cyclic(g)).collect()
    }

    /// Asserts the character route and the kernel route agree on every
    /// element's fixed dimension.
    pub fn verify_fixed_dims_kernel(&self) -> Result<()> {
        let id = CycloMatrix::identity(self.degree(), self.group.conductor())?;
        for g in 1..self.order() as u32 {
            let character_route = self.fixed_dim_cyclic(g)?;
            let kernel_route = self.group.element(g).sub(&id)?.kernel_rank()?;
            if character_route != kernel_route {
                return Err(Error::FixedDimMismatch {
                    context: format!("element {g}"),
                    character_route,
                    kernel_route,
                });
            }
        }
        Ok(())
    }

    /// Max fixed dimension over nontrivial elements; -1 for the trivial group.
    pub fn fixity(&self) -> Result<FixityReport> {
        let per_element = self.per_element_fixed_dims()?;
        if self.order() == 1 {
            return Ok(FixityReport {
                fixity: -1,
                witness: None,
                per_element,
                trivial_group: true,
            });
        }
        let n = self.degree();
        let mut best = 0usize;
        let mut witness = 1u32;
        for (g, &d) in per_element.iter().enumerate().skip(1) {
            if d == n {
                return Err(Error::NotFaithful { element: g });
            }
            if d > best {
                best = d;
                witness = g as u32;
            }
        }
        Ok(FixityReport {
            fixity: best as i64,
            witness: Some(witness),
            per_element,
            trivial_group: false,
        })
    }

    /// True iff every nontrivial element moves every (n-k)-frame, i.e. all
    /// nontrivial fixed dimensions are below n-k.
    pub fn free_on_stiefel(&self, k: usize) -> Result<bool> {
        let n = self.degree();
        if k >= n {
            return Err(Error::StageRange {
                n: n as u32,
                k: k as u32,
            });
        }
        let report = self.fixity()?;
        if report.trivial_group {
            return Ok(true);
        }
        Ok((report.fixity as usize) < n - k)
    }

    /// Exact norm of the character: true iff <chi, chi> = 1.
    pub fn is_irreducible(&self) -> Result<bool> {
        let mut sum = CyclotomicNumber::zero(self.group.conductor())?;
        for chi in &self.character {
            sum = sum.add(&chi.mul(&chi.conjugate())?)?;
        }
        let norm = sum.scale(&Rational::new(1.into(), (self.order() as i64).into()));
        Ok(norm.as_rational().map(|r| r.is_one()).unwrap_or(false))
    }

    /// Maximal isotropy rank at each stage U(n)/U(k).
    ///
    /// An isotropy subgroup at stage k fixes an (n-k)-frame, so its rank is
    /// realized by an elementary abelian subgroup E with dim V^E >= n-k.
    pub fn isotropy_tower(&self) -> Result<IsotropyTower> {
        let n = self.degree();
        // best_dim[r-1] = max over rank-r elementary abelian E of dim V^E.
        let mut best_dim: Vec<usize> = Vec::new();
        for (p, _) in factorize(self.order() as u64) {
            let inventory = self.group.p_rank(p);
            for (t, subs) in inventory.by_rank.iter().enumerate() {
                if best_dim.len() <= t {
                    best_dim.resize(t + 1, 0);
                }
                for e in subs {
                    best_dim[t] = best_dim[t].max(self.fixed_dim(e)?);
                }
            }
        }
        let mut ranks = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let need = n - k;
            let rank = best_dim
                .iter()
                .rposition(|&d| d >= need)
                .map(|t| t + 1)
                .unwrap_or(0);
            ranks.push(rank);
        }
        if ranks[0] != 0 {
            return Err(Error::TowerInvariant(ranks));
        }
        for k in 0..n {
            if ranks[k + 1] < ranks[k] || ranks[k + 1] > ranks[k] + 1 {
                return Err(Error::TowerInvariant(ranks));
            }
        }
        let r = ranks[n];
        let breakpoints = (0..=r)
            .map(|t| ranks.iter().position(|&x| x == t).unwrap())
            .collect();
        Ok(IsotropyTower {
            n,
            ranks,
            breakpoints,
        })
    }

    /// r(G) <= fixity + 1, with fixity measured on this module.
    pub fn rank_fixity_bound(&self) -> Result<bool> {
        let report = self.fixity()?;
        if report.trivial_group {
            return Ok(true);
        }
        Ok(self.group.rank() as i64 <= report.fixity + 1)
    }

    /// Ties fixity f < p to the structure of the Sylow p-subgroup: p-rank
    /// f+1, cyclic center, and an abelian maximal subgroup.
    pub fn classification_crosscheck(&self, p: u64) -> Result<CrosscheckRecord> {
        let report = self.fixity()?;
        if report.trivial_group || report.fixity >= p as i64 {
            return Err(Error::PreconditionViolation {
                fixity: report.fixity,
                p,
            });
        }
        let sylow = self.group.sylow_subgroup(p);
        let center = self.group.subgroup_center(&sylow);
        let cyclic_center = self.group.is_cyclic_subgroup(&center);
        let maximals = self.group.subgroup_maximals(&sylow, p)?;
        let abelian_maximal = maximals.iter().any(|m| self.group.is_abelian_subgroup(m));
        let r_p = self.group.p_rank(p).r_p;
        Ok(CrosscheckRecord {
            p,
            fixity: report.fixity,
            r_p,
            sylow_order: sylow.order(),
            rank_matches: r_p as i64 == report.fixity + 1,
            cyclic_center,
            abelian_maximal,
        })
    }

    /// Freeness of the unique order-p subgroup of a cyclic p-subgroup B:
    /// true iff that subgroup has no nonzero fixed vectors.
    pub fn mackey_free_check(&self, b: &SubgroupHandle, p: u64) -> Result<bool> {
        let omega = b
            .elements()
            .iter()
            .copied()
            .find(|&x| self.group.element_order(x) == p);
        let x = omega.ok_or(Error::NoCentralOrderP {
            order: b.order(),
            p,
        })?;
        Ok(self.fixed_dim_cyclic(x)? == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_CAP;

    fn shift(p: usize, conductor: u64) -> CycloMatrix {
        let sigma: Vec<usize> = (0..p).map(|j| (j + 1) % p).collect();
        CycloMatrix::permutation(&sigma, conductor).unwrap()
    }

    fn omega_diag(p: u64) -> CycloMatrix {
        let diag: Vec<CyclotomicNumber> = (0..p)
            .map(|i| CyclotomicNumber::root_of_unity(p, i as i64).unwrap())
            .collect();
        CycloMatrix::diagonal(diag).unwrap()
    }

    fn heisenberg_rep(p: u64) -> Representation {
        let gens = vec![shift(p as usize, p), omega_diag(p)];
        let group = MatrixGroup::generate(gens, DEFAULT_ENUMERATION_CAP).unwrap();
        Representation::from_group(group).unwrap()
    }

    fn cyclic_shift_rep(p: usize) -> Representation {
        let group = MatrixGroup::generate(vec![shift(p, 1)], 50).unwrap();
        Representation::from_group(group).unwrap()
    }

    #[test]
    fn fixed_dim_of_trivial_subgroup_is_degree() {
        let rep = heisenberg_rep(3);
        let t = rep.group().trivial_subgroup();
        assert_eq!(rep.fixed_dim(&t).unwrap(), 3);
        assert_eq!(rep.fixed_dim_kernel(&t).unwrap(), 3);
    }

    #[test]
    fn shift_subgroup_fixes_constants_only() {
        let rep = cyclic_shift_rep(3);
        let whole = rep.group().full_subgroup();
        assert_eq!(rep.fixed_dim(&whole).unwrap(), 1);
        assert_eq!(rep.fixed_dim_kernel(&whole).unwrap(), 1);
    }

    #[test]
    fn heisenberg_module_has_no_invariants() {
        let rep = heisenberg_rep(3);
        let whole = rep.group().full_subgroup();
        assert_eq!(rep.fixed_dim(&whole).unwrap(), 0);
        assert_eq!(rep.fixed_dim_kernel(&whole).unwrap(), 0);
    }

    #[test]
    fn heisenberg_fixity_is_one() {
        let rep = heisenberg_rep(3);
        let report = rep.fixity().unwrap();
        assert_eq!(report.fixity, 1);
        assert!(!report.trivial_group);
        let w = report.witness.unwrap();
        assert_eq!(report.per_element[w as usize], 1);
        // Central nontrivial elements act without fixed vectors.
        for &z in rep.group().center().elements() {
            if z != 0 {
                assert_eq!(report.per_element[z as usize], 0);
            }
        }
    }

    #[test]
    fn character_and_kernel_routes_agree_on_heisenberg() {
        heisenberg_rep(3).verify_fixed_dims_kernel().unwrap();
    }

    #[test]
    fn scalar_action_on_line_has_fixity_zero() {
        let z5 = CycloMatrix::diagonal(vec![CyclotomicNumber::root_of_unity(5, 1).unwrap()])
            .unwrap();
        let group = MatrixGroup::generate(vec![z5], 10).unwrap();
        let rep = Representation::from_group(group).unwrap();
        assert_eq!(rep.fixity().unwrap().fixity, 0);
    }

    #[test]
    fn trivial_group_fixity_convention() {
        let id = CycloMatrix::identity(2, 1).unwrap();
        let group = MatrixGroup::generate(vec![id], 10).unwrap();
        let rep = Representation::from_group(group).unwrap();
        let report = rep.fixity().unwrap();
        assert_eq!(report.fixity, -1);
        assert!(report.trivial_group);
        assert!(report.witness.is_none());
    }

    #[test]
    fn heisenberg_freeness_thresholds() {
        let rep = heisenberg_rep(3);
        assert!(rep.free_on_stiefel(0).unwrap());
        assert!(rep.free_on_stiefel(1).unwrap());
        assert!(!rep.free_on_stiefel(2).unwrap());
        assert!(matches!(
            rep.free_on_stiefel(3),
            Err(Error::StageRange { n: 3, k: 3 })
        ));
    }

    #[test]
    fn heisenberg_module_is_irreducible() {
        assert!(heisenberg_rep(3).is_irreducible().unwrap());
    }

    #[test]
    fn permutation_module_is_reducible() {
        assert!(!cyclic_shift_rep(3).is_irreducible().unwrap());
    }

    #[test]
    fn sum_of_two_distinct_characters_is_reducible() {
        let m = CycloMatrix::diagonal(vec![
            CyclotomicNumber::root_of_unity(3, 1).unwrap(),
            CyclotomicNumber::root_of_unity(3, 2).unwrap(),
        ])
        .unwrap();
        let group = MatrixGroup::generate(vec![m], 10).unwrap();
        let rep = Representation::from_group(group).unwrap();
        assert!(!rep.is_irreducible().unwrap());
    }

    #[test]
    fn heisenberg_isotropy_tower() {
        let rep = heisenberg_rep(3);
        let tower = rep.isotropy_tower().unwrap();
        // Fixity 1 forces freeness through stage 1; rank-one isotropy enters
        // at stage 2 and full rank 2 only at the point stage.
        assert_eq!(tower.ranks, vec![0, 0, 1, 2]);
        assert_eq!(tower.breakpoints, vec![0, 2, 3]);
    }

    #[test]
    fn fixity_zero_tower_pattern() {
        let z5 = CycloMatrix::diagonal(vec![CyclotomicNumber::root_of_unity(5, 1).unwrap()])
            .unwrap();
        let group = MatrixGroup::generate(vec![z5], 10).unwrap();
        let rep = Representation::from_group(group).unwrap();
        let tower = rep.isotropy_tower().unwrap();
        assert_eq!(tower.ranks, vec![0, 1]);
        assert_eq!(tower.breakpoints, vec![0, 1]);
    }

    #[test]
    fn heisenberg_rank_fixity_bound() {
        assert!(heisenberg_rep(3).rank_fixity_bound().unwrap());
        assert!(cyclic_shift_rep(3).rank_fixity_bound().unwrap());
    }

    #[test]
    fn heisenberg_crosscheck_passes() {
        let rep = heisenberg_rep(3);
        let record = rep.classification_crosscheck(3).unwrap();
        assert_eq!(record.r_p, 2);
        assert_eq!(record.sylow_order, 27);
        assert!(record.all_pass());
    }

    #[test]
    fn crosscheck_rejects_fixity_at_least_p() {
        // Z/2 acting as diag(1, 1, -1) on C^3 has fixity 2 >= 2.
        let m = CycloMatrix::diagonal(vec![
            CyclotomicNumber::one(2).unwrap(),
            CyclotomicNumber::one(2).unwrap(),
            CyclotomicNumber::root_of_unity(2, 1).unwrap(),
        ])
        .unwrap();
        let group = MatrixGroup::generate(vec![m], 10).unwrap();
        let rep = Representation::from_group(group).unwrap();
        assert!(matches!(
            rep.classification_crosscheck(2),
            Err(Error::PreconditionViolation { fixity: 2, p: 2 })
        ));
    }

    #[test]
    fn mackey_check_on_center_and_on_permutation_module() {
        let rep = heisenberg_rep(3);
        let center = rep.group().center();
        assert!(rep.mackey_free_check(&center, 3).unwrap());

        let perm = cyclic_shift_rep(3);
        let whole = perm.group().full_subgroup();
        assert!(!perm.mackey_free_check(&whole, 3).unwrap());
    }

    #[test]
    fn mackey_check_requires_order_p_subgroup() {
        let rep = heisenberg_rep(3);
        let trivial = rep.group().trivial_subgroup();
        assert!(matches!(
            rep.mackey_free_check(&trivial, 3),
            Err(Error::NoCentralOrderP { order: 1, p: 3 })
        ));
    }
}
