//! Finite matrix groups enumerated from generators, with structural
//! predicates: centers, quotients, Frattini and maximal subgroups, p-rank
//! inventories, Sylow subgroups, and metacyclicity.
//!
//! Elements are indexed with the identity at index 0. Each element stores the
//! generator word discovered by breadth-first closure, so arbitrary products
//! fold through `gen_table` in O(word length) without a full multiplication
//! table.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;

pub const DEFAULT_ENUMERATION_CAP: usize = 50_000;
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

#[derive(Clone)]
pub struct MatrixGroup {
    degree: usize,
    conductor: u64,
    elements: Vec<CycloMatrix>,
    /// Generator element indices, one per generator slot.
    generator_indices: Vec<u32>,
    /// Generator word for each element, in product order.
    words: Vec<Vec<u8>>,
    /// gen_table[x][s] = index of elements[x] * generator s.
    gen_table: Vec<Vec<u32>>,
    orders: Vec<u64>,
    inverses: Vec<u32>,
}

/// A subgroup given by its sorted element-index set inside a parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl SubgroupHandle {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, element: u32) -> bool {
        self.elements.binary_search(&element).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Elementary abelian subgroups of a fixed prime, grouped by rank.
#[derive(Clone, Debug)]
pub struct RankInventory {
    pub p: u64,
    pub r_p: usize,
    /// by_rank[t] lists the elementary abelian subgroups of rank t+1.
    pub by_rank: Vec<Vec<SubgroupHandle>>,
}

/// Multiplication table of a quotient group, indexed by coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    order: usize,
    table: Vec<u32>,
    element_to_coset: Vec<u32>,
    coset_reps: Vec<u32>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn coset_of(&self, element: u32) -> u32 {
        self.element_to_coset[element as usize]
    }

    pub fn representative(&self, coset: u32) -> u32 {
        self.coset_reps[coset as usize]
    }

    pub fn coset_order(&self, coset: u32) -> u64 {
        let mut cur = coset;
        let mut ord = 1u64;
        while cur != 0 {
            cur = self.mul(cur, coset);
            ord += 1;
        }
        ord
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order as u32).any(|c| self.coset_order(c) == self.order as u64)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32)
            .all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order as u32)
            .map(|c| self.coset_order(c))
            .fold(1, num_integer::lcm)
    }
}

impl MatrixGroup {
    /// Breadth-first closure of the generators under multiplication.
    pub fn generate(generators: Vec<CycloMatrix>, cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Schema("at least one generator required".into()));
        }
        if generators.len() > u8::MAX as usize {
            return Err(Error::Schema("more than 255 generators".into()));
        }
        let degree = generators[0].n_rows();
        let mut conductor = 1u64;
        for (i, g) in generators.iter().enumerate() {
            if !g.is_square() || g.n_rows() != degree {
                return Err(Error::DimensionMismatch(
                    degree,
                    degree,
                    g.n_rows(),
                    g.n_cols(),
                ));
            }
            if g.rank()? != degree {
                return Err(Error::NonInvertibleGenerator { index: i });
            }
            conductor = crate::cyclo::lcm_u64(conductor, g.conductor());
        }
        let gens: Vec<CycloMatrix> = generators
            .iter()
            .map(|g| g.embed(conductor))
            .collect::<Result<_>>()?;

        let identity = CycloMatrix::identity(degree, conductor)?;
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index: HashMap<CycloMatrix, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut gen_table: Vec<Vec<u32>> = Vec::new();

        let mut head = 0usize;
        while head < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, g) in gens.iter().enumerate() {
                let prod = elements[head].mul(g)?;
                let idx = match index.get(&prod) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        let i = elements.len() as u32;
                        let mut w = words[head].clone();
                        w.push(s as u8);
                        elements.push(prod.clone());
                        words.push(w);
                        index.insert(prod, i);
                        i
                    }
                };
                row.push(idx);
            }
            gen_table.push(row);
            head += 1;
        }

        let generator_indices: Vec<u32> = (0..gens.len()).map(|s| gen_table[0][s]).collect();
        let mut group = Self {
            degree,
            conductor,
            elements,
            generator_indices,
            words,
            gen_table,
            orders: Vec::new(),
            inverses: Vec::new(),
        };
        group.fill_orders_and_inverses();
        Ok(group)
    }

    fn fill_orders_and_inverses(&mut self) {
        let n = self.elements.len();
        let mut orders = vec![1u64; n];
        let mut inverses = vec![0u32; n];
        for i in 1..n as u32 {
            let mut cur = i;
            let mut prev = 0u32;
            let mut ord = 1u64;
            while cur != 0 {
                prev = cur;
                cur = self.mul_index(cur, i);
                ord += 1;
            }
            orders[i as usize] = ord;
            inverses[i as usize] = prev;
        }
        self.orders = orders;
        self.inverses = inverses;
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn element(&self, i: u32) -> &CycloMatrix {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[CycloMatrix] {
        &self.elements
    }

    pub fn n_generators(&self) -> usize {
        self.generator_indices.len()
    }

    pub fn generator_index(&self, slot: usize) -> u32 {
        self.generator_indices[slot]
    }

    pub fn element_order(&self, i: u32) -> u64 {
        self.orders[i as usize]
    }

    /// Generator word (slot indices) whose left-to-right product is element i.
    pub fn word(&self, i: u32) -> &[u8] {
        &self.words[i as usize]
    }

    pub fn inverse_index(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    /// Index of elements[a] * elements[b], folding b's generator word.
    pub fn mul_index(&self, a: u32, b: u32) -> u32 {
        self.words[b as usize]
            .iter()
            .fold(a, |acc, &s| self.gen_table[acc as usize][s as usize])
    }

    pub fn pow_index(&self, g: u32, mut exp: u64) -> u32 {
        let mut base = g;
        let mut acc = 0u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_index(acc, base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_index(base, base);
            }
        }
        acc
    }

    /// g^-1 x g.
    pub fn conjugate_index(&self, g: u32, x: u32) -> u32 {
        self.mul_index(self.mul_index(self.inverses[g as usize], x), g)
    }

    /// x^-1 y^-1 x y.
    pub fn commutator_index(&self, x: u32, y: u32) -> u32 {
        let xi = self.inverses[x as usize];
        let yi = self.inverses[y as usize];
        self.mul_index(self.mul_index(self.mul_index(xi, yi), x), y)
    }

    fn closure_set(&self, seed: &[u32]) -> Vec<u32> {
        let mut seen = HashSet::new();
        seen.insert(0u32);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in seed {
                let y = self.mul_index(x, s);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        let mut out: Vec<u32> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, seed: &[u32]) -> SubgroupHandle {
        let elements = self.closure_set(seed);
        let mut generators: Vec<u32> = seed.iter().copied().filter(|&s| s != 0).collect();
        generators.sort_unstable();
        generators.dedup();
        SubgroupHandle {
            elements,
            generators,
        }
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle {
            elements: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn full_subgroup(&self) -> SubgroupHandle {
        SubgroupHandle {
            elements: (0..self.order() as u32).collect(),
            generators: self.generator_indices.clone(),
        }
    }

    pub fn cyclic_subgroup(&self, g: u32) -> SubgroupHandle {
        let mut elements = vec![0u32];
        let mut cur = g;
        while cur != 0 {
            elements.push(cur);
            cur = self.mul_index(cur, g);
        }
        elements.sort_unstable();
        let generators = if g == 0 { Vec::new() } else { vec![g] };
        SubgroupHandle {
            elements,
            generators,
        }
    }

    /// Greedy minimal generating sequence for a closed element set.
    pub fn subgroup_generators(&self, elements: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut closure = vec![0u32];
        for &x in elements {
            if closure.binary_search(&x).is_err() {
                gens.push(x);
                closure = self.closure_set(&gens);
                if closure.len() == elements.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.n_generators();
        for i in 0..k {
            for j in i + 1..k {
                let gi = self.generator_indices[i];
                let gj = self.generator_indices[j];
                if self.mul_index(gi, gj) != self.mul_index(gj, gi) {
                    return false;
                }
            }
        }
        true
    }

    /// All elements commuting with every generator.
    pub fn center(&self) -> SubgroupHandle {
        let mut elements = Vec::new();
        for z in 0..self.order() as u32 {
            let central = self.generator_indices.iter().all(|&g| {
                self.mul_index(z, g) == self.mul_index(g, z)
            });
            if central {
                elements.push(z);
            }
        }
        let generators = self.subgroup_generators(&elements);
        SubgroupHandle {
            elements,
            generators,
        }
    }

    /// True iff some element's order equals the subgroup order.
    pub fn is_cyclic_subgroup(&self, s: &SubgroupHandle) -> bool {
        s.elements
            .iter()
            .any(|&x| self.orders[x as usize] == s.order() as u64)
    }

    pub fn is_abelian_subgroup(&self, s: &SubgroupHandle) -> bool {
        let gens = if s.generators.is_empty() {
            self.subgroup_generators(&s.elements)
        } else {
            s.generators.clone()
        };
        for (i, &a) in gens.iter().enumerate() {
            for &b in gens.iter().skip(i + 1) {
                if self.mul_index(a, b) != self.mul_index(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks closure of the subgroup under conjugation by group generators.
    pub fn check_normal(&self, s: &SubgroupHandle) -> Result<()> {
        let gens = if s.generators.is_empty() && !s.is_trivial() {
            self.subgroup_generators(&s.elements)
        } else {
            s.generators.clone()
        };
        for &g in &self.generator_indices {
            for &x in &gens {
                let c = self.conjugate_index(g, x);
                if !s.contains(c) {
                    return Err(Error::NotNormal {
                        element: x as usize,
                        by: g as usize,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, s: &SubgroupHandle) -> bool {
        self.check_normal(s).is_ok()
    }

    /// Smallest normal subgroup containing the seed elements.
    pub fn normal_closure(&self, seed: &[u32]) -> SubgroupHandle {
        let mut gens: Vec<u32> = seed.iter().copied().filter(|&x| x != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        loop {
            let closure = self.closure_set(&gens);
            let mut grew = false;
            'outer: for &g in &self.generator_indices {
                for &x in &closure {
                    let c = self.conjugate_index(g, x);
                    if closure.binary_search(&c).is_err() {
                        gens.push(c);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                let generators = gens;
                return SubgroupHandle {
                    elements: closure,
                    generators,
                };
            }
        }
    }

    /// Coset multiplication table of G/N; N must be normal.
    pub fn quotient(&self, n: &SubgroupHandle) -> Result<CosetTable> {
        self.subgroup_quotient(&self.full_subgroup(), n)
    }

    /// Checks closure of `inner` under conjugation by `ambient`'s generators.
    pub fn check_normal_in(&self, ambient: &SubgroupHandle, inner: &SubgroupHandle) -> Result<()> {
        let inner_gens = if inner.generators.is_empty() && !inner.is_trivial() {
            self.subgroup_generators(&inner.elements)
        } else {
            inner.generators.clone()
        };
        for &g in &ambient.generators {
            for &x in &inner_gens {
                let c = self.conjugate_index(g, x);
                if !inner.contains(c) {
                    return Err(Error::NotNormal {
                        element: x as usize,
                        by: g as usize,
                    });
                }
            }
        }
        Ok(())
    }

    /// Coset table of ambient/N for a subgroup N normal in ambient.
    pub fn subgroup_quotient(
        &self,
        ambient: &SubgroupHandle,
        n: &SubgroupHandle,
    ) -> Result<CosetTable> {
        for &x in &n.elements {
            if !ambient.contains(x) {
                return Err(Error::NotNormal {
                    element: x as usize,
                    by: 0,
                });
            }
        }
        self.check_normal_in(ambient, n)?;
        let order = ambient.order() / n.order();
        let unset = u32::MAX;
        let mut element_to_coset = vec![unset; self.order()];
        let mut coset_reps: Vec<u32> = Vec::new();

        let label_coset = |of: u32,
                           element_to_coset: &mut Vec<u32>,
                           coset_reps: &mut Vec<u32>| {
            let id = coset_reps.len() as u32;
            let mut min_member = u32::MAX;
            for &x in &n.elements {
                let member = self.mul_index(x, of);
                element_to_coset[member as usize] = id;
                min_member = min_member.min(member);
            }
            coset_reps.push(min_member);
            id
        };

        label_coset(0, &mut element_to_coset, &mut coset_reps);
        let mut head = 0usize;
        while head < coset_reps.len() {
            let rep = coset_reps[head];
            for &g in &ambient.generators {
                let img = self.mul_index(rep, g);
                if element_to_coset[img as usize] == unset {
                    label_coset(img, &mut element_to_coset, &mut coset_reps);
                }
            }
            head += 1;
        }
        debug_assert_eq!(coset_reps.len(), order);

        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let prod = self.mul_index(coset_reps[a], coset_reps[b]);
                table[a * order + b] = element_to_coset[prod as usize];
            }
        }
        Ok(CosetTable {
            order,
            table,
            element_to_coset,
            coset_reps,
        })
    }

    /// Elements of ambient commuting with all of ambient.
    pub fn subgroup_center(&self, ambient: &SubgroupHandle) -> SubgroupHandle {
        let mut elements = Vec::new();
        for &z in &ambient.elements {
            let central = ambient
                .generators
                .iter()
                .all(|&g| self.mul_index(z, g) == self.mul_index(g, z));
            if central {
                elements.push(z);
            }
        }
        let generators = self.subgroup_generators(&elements);
        SubgroupHandle {
            elements,
            generators,
        }
    }

    /// Smallest subgroup containing the seed and closed under conjugation by
    /// ambient's generators.
    pub fn subgroup_normal_closure(&self, ambient: &SubgroupHandle, seed: &[u32]) -> SubgroupHandle {
        let mut gens: Vec<u32> = seed.iter().copied().filter(|&x| x != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        loop {
            let closure = self.closure_set(&gens);
            let mut grew = false;
            'outer: for &g in &ambient.generators {
                for &x in &closure {
                    let c = self.conjugate_index(g, x);
                    if closure.binary_search(&c).is_err() {
                        gens.push(c);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                let generators = gens;
                return SubgroupHandle {
                    elements: closure,
                    generators,
                };
            }
        }
    }

    /// Frattini subgroup of a p-group: normal closure of generator
    /// commutators and generator p-th powers.
    pub fn frattini_subgroup(&self, p: u64) -> Result<SubgroupHandle> {
        self.subgroup_frattini(&self.full_subgroup(), p)
    }

    /// Frattini subgroup of a p-subgroup, relative to it.
    pub fn subgroup_frattini(&self, ambient: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
        check_power_of(ambient.order(), p)?;
        let mut seed = Vec::new();
        let gens = &ambient.generators;
        for (i, &gi) in gens.iter().enumerate() {
            for &gj in gens.iter().skip(i + 1) {
                seed.push(self.commutator_index(gi, gj));
            }
            seed.push(self.pow_index(gi, p));
        }
        Ok(self.subgroup_normal_closure(ambient, &seed))
    }

    /// Maximal subgroups of a p-group: preimages of the hyperplanes of the
    /// elementary abelian quotient G/Frattini.
    pub fn maximal_subgroups_p_group(&self, p: u64) -> Result<Vec<SubgroupHandle>> {
        self.subgroup_maximals(&self.full_subgroup(), p)
    }

    /// Maximal subgroups of a p-subgroup, relative to it.
    pub fn subgroup_maximals(
        &self,
        ambient: &SubgroupHandle,
        p: u64,
    ) -> Result<Vec<SubgroupHandle>> {
        check_power_of(ambient.order(), p)?;
        if ambient.order() == 1 {
            return Ok(Vec::new());
        }
        let frattini = self.subgroup_frattini(ambient, p)?;
        let quot = self.subgroup_quotient(ambient, &frattini)?;
        let q_order = quot.order() as u64;
        let mut d = 0u32;
        let mut t = q_order;
        while t > 1 {
            t /= p;
            d += 1;
        }
        debug_assert_eq!(p.pow(d), q_order);

        // Greedy basis of the quotient as an F_p vector space.
        let mut basis: Vec<u32> = Vec::new();
        let mut span: HashSet<u32> = HashSet::new();
        span.insert(0);
        for q in 1..quot.order() as u32 {
            if span.contains(&q) {
                continue;
            }
            basis.push(q);
            let old: Vec<u32> = span.iter().copied().collect();
            let mut power = 0u32;
            for _ in 1..p {
                power = quot.mul(power, q);
                for &s in &old {
                    span.insert(quot.mul(s, power));
                }
            }
            if span.len() == quot.order() {
                break;
            }
        }
        debug_assert_eq!(basis.len(), d as usize);

        // Coordinates of every coset in the chosen basis.
        let dn = d as usize;
        let mut coords_of = vec![vec![0u8; dn]; quot.order()];
        let mut digits = vec![0u64; dn];
        loop {
            let mut coset = 0u32;
            for (i, &b) in basis.iter().enumerate() {
                let mut power = 0u32;
                for _ in 0..digits[i] {
                    power = quot.mul(power, b);
                }
                coset = quot.mul(coset, power);
            }
            coords_of[coset as usize] = digits.iter().map(|&x| x as u8).collect();
            let mut i = 0;
            loop {
                if i == dn {
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == dn {
                break;
            }
        }

        // One functional per hyperplane: first nonzero coefficient equals 1.
        let mut out = Vec::new();
        let mut func = vec![0u64; dn];
        loop {
            let mut i = 0;
            loop {
                if i == dn {
                    break;
                }
                func[i] += 1;
                if func[i] < p {
                    break;
                }
                func[i] = 0;
                i += 1;
            }
            if i == dn {
                break;
            }
            let lead = func.iter().position(|&c| c != 0);
            if lead.map(|l| func[l] != 1).unwrap_or(true) {
                continue;
            }
            let mut elements = Vec::new();
            for &el in &ambient.elements {
                let v = &coords_of[quot.coset_of(el) as usize];
                let dot: u64 = func
                    .iter()
                    .zip(v.iter())
                    .map(|(&f, &c)| f * c as u64)
                    .sum();
                if dot % p == 0 {
                    elements.push(el);
                }
            }
            let generators = self.subgroup_generators(&elements);
            out.push(SubgroupHandle {
                elements,
                generators,
            });
        }
        Ok(out)
    }

    pub fn has_abelian_maximal(&self, p: u64) -> Result<bool> {
        let maximals = self.maximal_subgroups_p_group(p)?;
        Ok(maximals.iter().any(|m| self.is_abelian_subgroup(m)))
    }

    /// All elementary abelian subgroups for the prime p, grouped by rank.
    ///
    /// Depth-first search over commuting order-p elements; a new generator is
    /// accepted only when it is the smallest index in the extension, so each
    /// subgroup is visited exactly once.
    pub fn p_rank(&self, p: u64) -> RankInventory {
        if self.order() as u64 % p != 0 {
            return RankInventory {
                p,
                r_p: 0,
                by_rank: Vec::new(),
            };
        }
        let candidates: Vec<u32> = (1..self.order() as u32)
            .filter(|&x| self.orders[x as usize] == p)
            .collect();
        let mut by_rank: Vec<Vec<SubgroupHandle>> = Vec::new();
        let mut gens: Vec<u32> = Vec::new();
        let sub = vec![0u32];
        self.extend_elementary_abelian(p, &sub, &mut gens, &candidates, &mut by_rank);
        RankInventory {
            p,
            r_p: by_rank.len(),
            by_rank,
        }
    }

    fn extend_elementary_abelian(
        &self,
        p: u64,
        sub: &[u32],
        gens: &mut Vec<u32>,
        candidates: &[u32],
        by_rank: &mut Vec<Vec<SubgroupHandle>>,
    ) {
        for (pos, &c) in candidates.iter().enumerate() {
            if sub.binary_search(&c).is_ok() {
                continue;
            }
            // Closure of sub and <c>: products s * c^j, all commuting.
            let mut new_elems = sub.to_vec();
            let mut power = c;
            for _ in 1..p {
                for &s in sub {
                    new_elems.push(self.mul_index(s, power));
                }
                power = self.mul_index(power, c);
            }
            new_elems.sort_unstable();
            // Canonical chain: c must be the smallest new element.
            let min_new = *new_elems
                .iter()
                .find(|x| sub.binary_search(x).is_err())
                .expect("extension must add elements");
            if min_new != c {
                continue;
            }
            gens.push(c);
            let rank = gens.len();
            if by_rank.len() < rank {
                by_rank.push(Vec::new());
            }
            by_rank[rank - 1].push(SubgroupHandle {
                elements: new_elems.clone(),
                generators: gens.clone(),
            });
            let next: Vec<u32> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&x| {
                    new_elems.binary_search(&x).is_err()
                        && self.mul_index(x, c) == self.mul_index(c, x)
                })
                .collect();
            self.extend_elementary_abelian(p, &new_elems, gens, &next, by_rank);
            gens.pop();
        }
    }

    /// Max of r_p over the prime divisors of |G|.
    pub fn rank(&self) -> usize {
        crate::cyclo::factorize(self.order() as u64)
            .into_iter()
            .map(|(p, _)| self.p_rank(p).r_p)
            .max()
            .unwrap_or(0)
    }

    /// Searches for a normal cyclic subgroup with cyclic quotient.
    pub fn is_metacyclic(&self) -> Result<bool> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for g in 0..self.order() as u32 {
            let c = self.cyclic_subgroup(g);
            if !seen.insert(c.elements.clone()) {
                continue;
            }
            if !self.is_normal(&c) {
                continue;
            }
            if self.quotient(&c)?.is_cyclic() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sylow p-subgroup by greedy extension; maximal p-subgroups are Sylow.
    pub fn sylow_subgroup(&self, p: u64) -> SubgroupHandle {
        let mut gens: Vec<u32> = Vec::new();
        let mut current = vec![0u32];
        loop {
            let mut grew = false;
            for x in 1..self.order() as u32 {
                if !self.orders[x as usize].is_power_of(p) {
                    continue;
                }
                if current.binary_search(&x).is_ok() {
                    continue;
                }
                gens.push(x);
                let closure = self.closure_set(&gens);
                if (closure.len() as u64).is_power_of(p) {
                    current = closure;
                    grew = true;
                    break;
                }
                gens.pop();
            }
            if !grew {
                return SubgroupHandle {
                    elements: current,
                    generators: gens,
                };
            }
        }
    }
}

fn check_power_of(order: usize, p: u64) -> Result<()> {
    if (order as u64).is_power_of(p) {
        Ok(())
    } else {
        Err(Error::NotAPGroup { order, p })
    }
}

trait IsPowerOf {
    fn is_power_of(self, p: u64) -> bool;
}

impl IsPowerOf for u64 {
    fn is_power_of(mut self, p: u64) -> bool {
        if self == 0 {
            return false;
        }
        while self % p == 0 {
            self /= p;
        }
        self == 1
    }
}
