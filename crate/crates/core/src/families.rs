//! Constructors for the built-in monomial group families, plus induced
//! representations and presentation audits.
//!
//! Every family ships a concrete matrix model. Constructors check the
//! defining relations on the matrices, enumerate the generated group, and
//! compare the enumerated order against the predicted order, so a returned
//! `Representation` is always faithful for the presented group.

use crate::cyclo::{lcm_u64, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::group::{MatrixGroup, SubgroupHandle, DEFAULT_ENUMERATION_CAP, DEFAULT_ORDER_CAP};
use crate::matrix::CycloMatrix;
use crate::rep::Representation;
use std::fmt;

/// Monomial matrix given as a permutation plus a diagonal of roots of unity.
/// Column j carries `diagonal[j]` into row `permutation[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSpec {
    permutation: Vec<usize>,
    diagonal: Vec<CyclotomicNumber>,
}

impl MonomialSpec {
    pub fn new(permutation: Vec<usize>, diagonal: Vec<CyclotomicNumber>) -> Result<Self> {
        if permutation.len() != diagonal.len() || permutation.is_empty() {
            return Err(Error::FamilyParameter(
                "monomial spec needs one diagonal entry per permuted column".into(),
            ));
        }
        for value in &diagonal {
            // Roots of unity in a field of conductor m all have order dividing 2m.
            let order_bound = 2 * value.conductor();
            if !value.pow(order_bound)?.is_one() {
                return Err(Error::FamilyParameter(
                    "monomial diagonal entries must be roots of unity".into(),
                ));
            }
        }
        Ok(MonomialSpec {
            permutation,
            diagonal,
        })
    }

    pub fn degree(&self) -> usize {
        self.permutation.len()
    }

    pub fn compile(&self) -> Result<CycloMatrix> {
        let conductor = self
            .diagonal
            .iter()
            .fold(1, |c, v| lcm_u64(c, v.conductor()));
        let perm = CycloMatrix::permutation(&self.permutation, conductor)?;
        let diag = CycloMatrix::diagonal(self.diagonal.clone())?;
        perm.mul(&diag)
    }
}

/// One letter of a presentation word: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sym {
    Gen(u8),
    Inv(u8),
}

/// A relation `left = right` between words in the generators. An empty side
/// denotes the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationWord {
    pub left: Vec<Sym>,
    pub right: Vec<Sym>,
}

impl PresentationWord {
    /// Relation `word = 1`.
    pub fn relator(left: Vec<Sym>) -> Self {
        PresentationWord {
            left,
            right: Vec::new(),
        }
    }

    pub fn equation(left: Vec<Sym>, right: Vec<Sym>) -> Self {
        PresentationWord { left, right }
    }

    /// The word g^k, with negative k spelled in inverse letters.
    pub fn pow(g: u8, k: i64) -> Vec<Sym> {
        let letter = if k >= 0 { Sym::Gen(g) } else { Sym::Inv(g) };
        vec![letter; k.unsigned_abs() as usize]
    }

    pub fn repeat(word: &[Sym], times: u64) -> Vec<Sym> {
        let mut out = Vec::with_capacity(word.len() * times as usize);
        for _ in 0..times {
            out.extend_from_slice(word);
        }
        out
    }

    pub fn invert(word: &[Sym]) -> Vec<Sym> {
        word.iter()
            .rev()
            .map(|s| match *s {
                Sym::Gen(g) => Sym::Inv(g),
                Sym::Inv(g) => Sym::Gen(g),
            })
            .collect()
    }

    /// Commutator u^{-1} v^{-1} u v.
    pub fn commutator(u: &[Sym], v: &[Sym]) -> Vec<Sym> {
        let mut out = Self::invert(u);
        out.extend(Self::invert(v));
        out.extend_from_slice(u);
        out.extend_from_slice(v);
        out
    }
}

fn render_word(word: &[Sym]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut run: Option<(Sym, i64)> = None;
    let flush = |parts: &mut Vec<String>, sym: Sym, count: i64| {
        let (g, signed) = match sym {
            Sym::Gen(g) => (g, count),
            Sym::Inv(g) => (g, -count),
        };
        if signed == 1 {
            parts.push(format!("g{g}"));
        } else {
            parts.push(format!("g{g}^{signed}"));
        }
    };
    for &sym in word {
        match run {
            Some((prev, count)) if prev == sym => run = Some((prev, count + 1)),
            Some((prev, count)) => {
                flush(&mut parts, prev, count);
                run = Some((sym, 1));
            }
            None => run = Some((sym, 1)),
        }
    }
    if let Some((prev, count)) = run {
        flush(&mut parts, prev, count);
    }
    parts.join("*")
}

impl fmt::Display for PresentationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", render_word(&self.left), render_word(&self.right))
    }
}

fn matrix_pow(m: &CycloMatrix, mut exp: u64) -> Result<CycloMatrix> {
    let mut result = CycloMatrix::identity(m.n_rows(), m.conductor())?;
    let mut base = m.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = result.mul(&base)?;
        }
        exp >>= 1;
        if exp > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(result)
}

fn matrix_inverse(m: &CycloMatrix) -> Result<CycloMatrix> {
    let order = m.order(DEFAULT_ORDER_CAP)?;
    matrix_pow(m, order - 1)
}

fn eval_word(
    word: &[Sym],
    gens: &[CycloMatrix],
    invs: &[CycloMatrix],
    degree: usize,
    conductor: u64,
    relation_index: usize,
) -> Result<CycloMatrix> {
    let mut acc = CycloMatrix::identity(degree, conductor)?;
    for sym in word {
        let (slot, table): (usize, &[CycloMatrix]) = match *sym {
            Sym::Gen(g) => (g as usize, gens),
            Sym::Inv(g) => (g as usize, invs),
        };
        if slot >= gens.len() {
            return Err(Error::MalformedWord {
                index: relation_index,
                count: gens.len(),
            });
        }
        acc = acc.mul(&table[slot])?;
    }
    Ok(acc)
}

fn first_failing_relation(
    generators: &[CycloMatrix],
    relations: &[PresentationWord],
) -> Result<Option<usize>> {
    if generators.is_empty() {
        for (index, rel) in relations.iter().enumerate() {
            if !rel.left.is_empty() || !rel.right.is_empty() {
                return Err(Error::MalformedWord { index, count: 0 });
            }
        }
        return Ok(None);
    }
    let conductor = generators
        .iter()
        .fold(1, |c, m| lcm_u64(c, m.conductor()));
    let gens: Vec<CycloMatrix> = generators
        .iter()
        .map(|m| m.embed(conductor))
        .collect::<Result<_>>()?;
    let mut invs = Vec::with_capacity(gens.len());
    for g in &gens {
        invs.push(matrix_inverse(g)?);
    }
    let degree = gens[0].n_rows();
    for (index, rel) in relations.iter().enumerate() {
        let lhs = eval_word(&rel.left, &gens, &invs, degree, conductor, index)?;
        let rhs = eval_word(&rel.right, &gens, &invs, degree, conductor, index)?;
        if lhs != rhs {
            return Ok(Some(index));
        }
    }
    Ok(None)
}

/// Evaluates every relation as a matrix identity. `Ok(false)` names no
/// offender; use the family constructors when a failure should be an error.
pub fn verify_presentation(
    generators: &[CycloMatrix],
    relations: &[PresentationWord],
) -> Result<bool> {
    Ok(first_failing_relation(generators, relations)?.is_none())
}

fn require_relations(generators: &[CycloMatrix], relations: &[PresentationWord]) -> Result<()> {
    match first_failing_relation(generators, relations)? {
        None => Ok(()),
        Some(index) => Err(Error::RelationFailure {
            index,
            relation: relations[index].to_string(),
        }),
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && crate::cyclo::factorize(p) == vec![(p, 1)]
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p == 2 {
        return Err(Error::FamilyParameter(format!(
            "parameter p = {p} must be an odd prime"
        )));
    }
    Ok(())
}

fn pow_checked(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::FamilyParameter(format!("{base}^{exp} overflows u64")))
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn primitive_root(p: u64) -> u64 {
    'outer: for g in 2..p {
        let mut x = g;
        for _ in 1..p - 1 {
            if x == 1 {
                continue 'outer;
            }
            x = x * g % p;
        }
        if x == 1 {
            return g;
        }
    }
    1
}

/// Cyclic shift sending v_j to v_{j+1 mod n}.
fn shift_up(n: usize, conductor: u64) -> Result<CycloMatrix> {
    let sigma: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
    CycloMatrix::permutation(&sigma, conductor)
}

/// Cyclic shift sending v_j to v_{j-1 mod n}.
fn shift_down(n: usize, conductor: u64) -> Result<CycloMatrix> {
    let sigma: Vec<usize> = (0..n).map(|j| (j + n - 1) % n).collect();
    CycloMatrix::permutation(&sigma, conductor)
}

fn scalar_matrix(n: usize, value: &CyclotomicNumber) -> Result<CycloMatrix> {
    CycloMatrix::identity(n, value.conductor())?.scale(value)
}

/// diag(z^{step*0}, z^{step*1}, ..., z^{step*(n-1)}) with z of the given conductor.
fn diag_root_powers(n: usize, conductor: u64, step: i64) -> Result<CycloMatrix> {
    let mut diag = Vec::with_capacity(n);
    for j in 0..n {
        diag.push(CyclotomicNumber::root_of_unity(conductor, step * j as i64)?);
    }
    CycloMatrix::diagonal(diag)
}

fn expect_order(group: &MatrixGroup, want: u64, context: &str) -> Result<()> {
    if group.order() as u64 != want {
        return Err(Error::RouteMismatch {
            context: context.into(),
            lhs: group.order().to_string(),
            rhs: want.to_string(),
        });
    }
    Ok(())
}

/// Extraspecial group of order p^3 and exponent p in its degree-p monomial
/// representation: x is the cyclic shift v_j -> v_{j-1} and y = diag(w^j)
/// with w = zeta_p, so [x,y] = w*I.
pub fn heisenberg(p: u64) -> Result<Representation> {
    require_odd_prime(p)?;
    let degree = p as usize;
    let x = shift_down(degree, p)?;
    let y = diag_root_powers(degree, p, 1)?;
    let xy = PresentationWord::commutator(&[Sym::Gen(0)], &[Sym::Gen(1)]);
    let relations = vec![
        PresentationWord::relator(PresentationWord::pow(0, p as i64)),
        PresentationWord::relator(PresentationWord::pow(1, p as i64)),
        PresentationWord::relator(PresentationWord::repeat(&xy, p)),
        PresentationWord::relator(PresentationWord::commutator(&xy, &[Sym::Gen(0)])),
        PresentationWord::relator(PresentationWord::commutator(&xy, &[Sym::Gen(1)])),
    ];
    require_relations(&[x.clone(), y.clone()], &relations)?;
    let group = MatrixGroup::generate(vec![x, y], DEFAULT_ENUMERATION_CAP)?;
    expect_order(&group, pow_checked(p, 3)?, "extraspecial group order")?;
    Representation::from_group(group)
}

/// Modular group of order p^n presented by a^{p^{n-1}} = b^p = 1 and
/// b^{-1} a b = a^{1+p^{n-2}}, realized by inducing the character
/// a -> zeta_{p^{n-1}} of the cyclic normal subgroup up the transversal
/// {1, b, ..., b^{p-1}}: a becomes diag(zeta^{(1+p^{n-2})^i}) and b the
/// cyclic shift v_j -> v_{j+1}.
pub fn modular_metacyclic(p: u64, n: u32) -> Result<Representation> {
    if !is_prime(p) || p < 3 {
        return Err(Error::FamilyParameter(format!(
            "parameter p = {p} must be an odd prime"
        )));
    }
    if n < 3 {
        return Err(Error::FamilyParameter(format!(
            "modular family needs n >= 3, got {n}"
        )));
    }
    let q = pow_checked(p, n - 1)?;
    let twist = 1 + pow_checked(p, n - 2)?;
    let degree = p as usize;
    let mut diag = Vec::with_capacity(degree);
    let mut exponent: u64 = 1;
    for _ in 0..degree {
        diag.push(CyclotomicNumber::root_of_unity(q, exponent as i64)?);
        exponent = exponent
            .checked_mul(twist)
            .ok_or_else(|| Error::FamilyParameter("twist exponent overflows u64".into()))?
            % q;
    }
    let a = CycloMatrix::diagonal(diag)?;
    let b = shift_up(degree, q)?;
    let relations = vec![
        PresentationWord::relator(PresentationWord::pow(0, q as i64)),
        PresentationWord::relator(PresentationWord::pow(1, p as i64)),
        PresentationWord::equation(
            vec![Sym::Inv(1), Sym::Gen(0), Sym::Gen(1)],
            PresentationWord::pow(0, twist as i64),
        ),
    ];
    require_relations(&[a.clone(), b.clone()], &relations)?;
    let group = MatrixGroup::generate(vec![a, b], DEFAULT_ENUMERATION_CAP)?;
    expect_order(&group, pow_checked(p, n)?, "modular group order")?;
    Representation::from_group(group)
}

/// Order-p^n group presented by a^{p^{n-3}} = [x,y] and
/// a^{p^{n-2}} = [a,x] = [a,y] = x^p = y^p = 1, for p >= 5 and n >= 4.
/// Model: a is the scalar zeta_{p^{n-2}}, x the shift v_j -> v_{j-1}, and
/// y = diag(mu^j) with mu = a^{p^{n-3}}, so [x,y] = mu*I exactly.
pub fn exceptional_family_two(p: u64, n: u32) -> Result<Representation> {
    require_odd_prime(p)?;
    if p < 5 || n < 4 {
        return Err(Error::FamilyParameter(format!(
            "exceptional family two needs p >= 5 and n >= 4, got p = {p}, n = {n}"
        )));
    }
    let q = pow_checked(p, n - 2)?;
    let mu_step = pow_checked(p, n - 3)?;
    let degree = p as usize;
    let zeta = CyclotomicNumber::root_of_unity(q, 1)?;
    let a = scalar_matrix(degree, &zeta)?;
    let x = shift_down(degree, q)?;
    let y = diag_root_powers(degree, q, mu_step as i64)?;
    let relations = vec![
        PresentationWord::equation(
            PresentationWord::pow(0, mu_step as i64),
            PresentationWord::commutator(&[Sym::Gen(1)], &[Sym::Gen(2)]),
        ),
        PresentationWord::relator(PresentationWord::pow(0, q as i64)),
        PresentationWord::relator(PresentationWord::commutator(&[Sym::Gen(0)], &[Sym::Gen(1)])),
        PresentationWord::relator(PresentationWord::commutator(&[Sym::Gen(0)], &[Sym::Gen(2)])),
        PresentationWord::relator(PresentationWord::pow(1, p as i64)),
        PresentationWord::relator(PresentationWord::pow(2, p as i64)),
    ];
    require_relations(&[a.clone(), x.clone(), y.clone()], &relations)?;
    let group = MatrixGroup::generate(vec![a, x, y], DEFAULT_ENUMERATION_CAP)?;
    expect_order(&group, pow_checked(p, n)?, "exceptional family two order")?;
    Representation::from_group(group)
}

fn is_quadratic_nonresidue(value: u64, p: u64) -> bool {
    mod_pow(value, (p - 1) / 2, p) == p - 1
}

/// Order-p^n group presented by a^{-lambda*p^{n-3}} = [x,a,x] and
/// a^{p^{n-2}} = x^p = [x,a]^p = [x,a,a] = 1, with lambda = 1 or a
/// quadratic non-residue mod p. Found by a bounded search over linear
/// characters chi of the abelian subgroup <a, [x,a]>: each candidate induces
/// to a degree-p monomial model, and the first one (lowest (u, v) character
/// exponents) passing the relation audit with the full order p^n wins.
pub fn exceptional_family_three(p: u64, n: u32, lambda: u64) -> Result<Representation> {
    require_odd_prime(p)?;
    if p < 5 || n < 4 {
        return Err(Error::FamilyParameter(format!(
            "exceptional family three needs p >= 5 and n >= 4, got p = {p}, n = {n}"
        )));
    }
    let lambda_mod = lambda % p;
    if !(lambda == 1 || is_quadratic_nonresidue(lambda_mod, p)) {
        return Err(Error::FamilyParameter(format!(
            "lambda = {lambda} must be 1 or a quadratic non-residue mod {p}"
        )));
    }
    let q = pow_checked(p, n - 2)?;
    let step = pow_checked(p, n - 3)?;
    let target_order = pow_checked(p, n)?;
    let degree = p as usize;
    // Conjugating a by x^j scales the a-exponent pattern by
    // e_j = 1 + C(j,2)*lambda*p^{n-3} and shifts the [x,a]-part linearly.
    let mut e = vec![0u64; degree];
    for (j, slot) in e.iter_mut().enumerate() {
        let binom = (j as u128) * (j as u128).saturating_sub(1) / 2;
        let term = binom % q as u128 * (lambda_mod as u128 * step as u128 % q as u128);
        *slot = ((1 + term % q as u128) % q as u128) as u64;
    }
    let xa = PresentationWord::commutator(&[Sym::Gen(1)], &[Sym::Gen(0)]);
    let relations = vec![
        PresentationWord::relator(PresentationWord::pow(0, q as i64)),
        PresentationWord::relator(PresentationWord::pow(1, p as i64)),
        PresentationWord::relator(PresentationWord::repeat(&xa, p)),
        PresentationWord::relator(PresentationWord::commutator(&xa, &[Sym::Gen(0)])),
        PresentationWord::equation(
            PresentationWord::commutator(&xa, &[Sym::Gen(1)]),
            PresentationWord::pow(0, -((lambda_mod * step) as i64)),
        ),
    ];
    let mut tried = 0usize;
    for u in 0..q {
        for v in 0..p {
            tried += 1;
            let mut diag = Vec::with_capacity(degree);
            for (j, &ej) in e.iter().enumerate() {
                // Candidate character: chi(a) = zeta^u, chi([x,a]) = omega^v,
                // giving diagonal entries zeta^{u*e_j - v*j*p^{n-3}}.
                let qq = q as u128;
                let neg = v as u128 * j as u128 % qq * (step as u128) % qq;
                let exponent = ((u as u128 * ej as u128 + (qq - neg)) % qq) as u64;
                diag.push(CyclotomicNumber::root_of_unity(q, exponent as i64)?);
            }
            let a = CycloMatrix::diagonal(diag)?;
            let x = shift_up(degree, q)?;
            if first_failing_relation(&[a.clone(), x.clone()], &relations)?.is_some() {
                continue;
            }
            let group = match MatrixGroup::generate(vec![a, x], target_order as usize) {
                Ok(g) => g,
                Err(Error::CapExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            if group.order() as u64 == target_order {
                return Representation::from_group(group);
            }
        }
    }
    Err(Error::SearchExhausted { tried })
}

/// Group of order 2p^3(p-1) generated in U(p) by the scalar A = w*I, the
/// diagonal B = diag(w^j), the shift C: v_j -> v_{j+1}, and the twist
/// D: v_j -> mu*v_{xj} where x is the smallest primitive root mod p and
/// mu = zeta_{2(p-1)}. Lives at conductor lcm(p, 2(p-1)).
pub fn g_p(p: u64) -> Result<Representation> {
    require_odd_prime(p)?;
    let degree = p as usize;
    let conductor = lcm_u64(p, 2 * (p - 1));
    let omega_step = (conductor / p) as i64;
    let mu = CyclotomicNumber::root_of_unity(conductor, (conductor / (2 * (p - 1))) as i64)?;
    let a = scalar_matrix(degree, &CyclotomicNumber::root_of_unity(conductor, omega_step)?)?;
    let b = diag_root_powers(degree, conductor, omega_step)?;
    let c = shift_up(degree, conductor)?;
    let root = primitive_root(p);
    let sigma: Vec<usize> = (0..degree).map(|j| (root as usize * j) % degree).collect();
    let d = MonomialSpec::new(sigma, vec![mu; degree])?.compile()?;
    let group = MatrixGroup::generate(vec![a, b, c, d], DEFAULT_ENUMERATION_CAP)?;
    expect_order(&group, 2 * pow_checked(p, 3)? * (p - 1), "twisted group order")?;
    Representation::from_group(group)
}

/// Wreath product (Z/p)^p with Z/p permuting coordinates, in its degree-p
/// monomial representation: diag(w, 1, ..., 1) plus the cyclic shift.
/// Order p^{p+1}; exceeds the default enumeration cap for p >= 7.
pub fn wreath(p: u64) -> Result<Representation> {
    require_odd_prime(p)?;
    let degree = p as usize;
    let mut diag = vec![CyclotomicNumber::one(p)?; degree];
    diag[0] = CyclotomicNumber::root_of_unity(p, 1)?;
    let base = CycloMatrix::diagonal(diag)?;
    let shift = shift_up(degree, p)?;
    let group = MatrixGroup::generate(vec![base, shift], DEFAULT_ENUMERATION_CAP)?;
    expect_order(&group, pow_checked(p, p as u32 + 1)?, "wreath product order")?;
    Representation::from_group(group)
}

/// Data for inducing a linear character of an abelian subgroup up to the
/// whole group. `chi` aligns with `subgroup.elements()`; the transversal
/// lists one representative per left coset, identity coset first.
pub struct InductionRecipe<'g> {
    parent: &'g MatrixGroup,
    subgroup: SubgroupHandle,
    chi: Vec<CyclotomicNumber>,
    transversal: Vec<u32>,
    conductor: u64,
}

/// Smallest-index representative of each left coset g*B, ascending, so the
/// identity coset comes first.
pub fn left_transversal(parent: &MatrixGroup, subgroup: &SubgroupHandle) -> Vec<u32> {
    let mut seen = vec![false; parent.order()];
    let mut reps = Vec::new();
    for g in 0..parent.order() as u32 {
        if seen[g as usize] {
            continue;
        }
        reps.push(g);
        for &h in subgroup.elements() {
            seen[parent.mul_index(g, h) as usize] = true;
        }
    }
    reps
}

impl<'g> InductionRecipe<'g> {
    pub fn new(
        parent: &'g MatrixGroup,
        subgroup: SubgroupHandle,
        chi: Vec<CyclotomicNumber>,
    ) -> Result<Self> {
        let transversal = left_transversal(parent, &subgroup);
        Self::with_transversal(parent, subgroup, chi, transversal)
    }

    pub fn with_transversal(
        parent: &'g MatrixGroup,
        subgroup: SubgroupHandle,
        chi: Vec<CyclotomicNumber>,
        transversal: Vec<u32>,
    ) -> Result<Self> {
        if chi.len() != subgroup.order() {
            return Err(Error::FamilyParameter(format!(
                "character has {} values for a subgroup of order {}",
                chi.len(),
                subgroup.order()
            )));
        }
        if !parent.is_abelian_subgroup(&subgroup) {
            return Err(Error::FamilyParameter(
                "induction subgroup must be abelian".into(),
            ));
        }
        let conductor = chi.iter().fold(1, |c, v| lcm_u64(c, v.conductor()));
        let chi: Vec<CyclotomicNumber> = chi
            .iter()
            .map(|v| v.embed(conductor))
            .collect::<Result<_>>()?;
        let recipe = InductionRecipe {
            parent,
            subgroup,
            chi,
            transversal,
            conductor,
        };
        recipe.check_homomorphism()?;
        recipe.check_transversal()?;
        Ok(recipe)
    }

    fn chi_at(&self, element: u32) -> Option<&CyclotomicNumber> {
        self.subgroup
            .elements()
            .binary_search(&element)
            .ok()
            .map(|pos| &self.chi[pos])
    }

    fn check_homomorphism(&self) -> Result<()> {
        match self.chi_at(0) {
            Some(v) if v.is_one() => {}
            _ => return Err(Error::NonHomomorphism),
        }
        // Multiplicativity against every generator propagates to all products.
        for &x in self.subgroup.elements() {
            for &g in self.subgroup.generators() {
                let product = self.parent.mul_index(x, g);
                let lhs = match self.chi_at(product) {
                    Some(v) => v.clone(),
                    None => return Err(Error::NonHomomorphism),
                };
                let rhs = self
                    .chi_at(x)
                    .ok_or(Error::NonHomomorphism)?
                    .mul(self.chi_at(g).ok_or(Error::NonHomomorphism)?)?;
                if lhs != rhs {
                    return Err(Error::NonHomomorphism);
                }
            }
        }
        Ok(())
    }

    fn check_transversal(&self) -> Result<()> {
        let expected = self.parent.order() / self.subgroup.order();
        if self.transversal.len() != expected {
            return Err(Error::FamilyParameter(format!(
                "transversal has {} cosets, index is {expected}",
                self.transversal.len()
            )));
        }
        let mut seen = vec![false; self.parent.order()];
        for &t in &self.transversal {
            for &h in self.subgroup.elements() {
                let covered = self.parent.mul_index(t, h) as usize;
                if seen[covered] {
                    return Err(Error::FamilyParameter(
                        "transversal covers a coset twice".into(),
                    ));
                }
                seen[covered] = true;
            }
        }
        Ok(())
    }

    /// Induced matrix of a parent element: entry (i, j) is chi(t_i^{-1} g t_j)
    /// when that element lands in the subgroup, zero otherwise.
    pub fn formula_matrix(&self, g: u32) -> Result<CycloMatrix> {
        let degree = self.transversal.len();
        let mut out = CycloMatrix::zeros(degree, degree, self.conductor)?;
        for (j, &tj) in self.transversal.iter().enumerate() {
            let moved = self.parent.mul_index(g, tj);
            for (i, &ti) in self.transversal.iter().enumerate() {
                let pulled = self
                    .parent
                    .mul_index(self.parent.inverse_index(ti), moved);
                if let Some(value) = self.chi_at(pulled) {
                    *out.entry_mut(i, j) = value.clone();
                }
            }
        }
        Ok(out)
    }

    /// Trace of the induced matrix, i.e. the induced character value.
    pub fn induced_character(&self, g: u32) -> Result<CyclotomicNumber> {
        self.formula_matrix(g)?.trace()
    }
}

/// Builds the induced representation and audits it: for every parent element
/// the formula matrix must equal the product of the generator images along
/// that element's word.
pub fn induce(recipe: &InductionRecipe) -> Result<Representation> {
    let parent = recipe.parent;
    if parent.n_generators() == 0 {
        return Err(Error::FamilyParameter(
            "induction needs a generated parent group".into(),
        ));
    }
    let mut gen_matrices = Vec::with_capacity(parent.n_generators());
    for slot in 0..parent.n_generators() {
        gen_matrices.push(recipe.formula_matrix(parent.generator_index(slot))?);
    }
    let group = MatrixGroup::generate(gen_matrices, parent.order())?;
    for g in 0..parent.order() as u32 {
        let image = parent
            .word(g)
            .iter()
            .fold(0u32, |acc, &slot| {
                group.mul_index(acc, group.generator_index(slot as usize))
            });
        // The group's ambient conductor equals the recipe conductor because
        // every generator image was built at it, so equality is structural.
        let formula = recipe.formula_matrix(g)?;
        if *group.element(image) != formula {
            return Err(Error::RouteMismatch {
                context: format!("induced matrix for parent element {g}"),
                lhs: "generator word product".into(),
                rhs: "character formula".into(),
            });
        }
    }
    Representation::from_group(group)
}

/// Witness that the metacyclic extension of Z/p^t by Z/p^s acts freely on
/// the product of spheres of the recorded dimensions: every nontrivial
/// element either moves every vector of the induced module or maps outside
/// the kernel subgroup and so rotates the circle factor freely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductActionCertificate {
    pub sphere_dims: (u64, u64),
    pub group_order: u64,
    pub kernel_order: u64,
    pub checked: usize,
}

pub fn product_action_certificate(p: u64, t: u32, s: u32) -> Result<ProductActionCertificate> {
    require_odd_prime(p)?;
    if t < 1 {
        return Err(Error::FamilyParameter(format!(
            "kernel exponent t must be at least 1, got {t}"
        )));
    }
    match s {
        0 => {
            let order = pow_checked(p, t)?;
            let z = CyclotomicNumber::root_of_unity(order, 1)?;
            let m = CycloMatrix::from_rows(vec![vec![z]])?;
            let group = MatrixGroup::generate(vec![m], order as usize)?;
            expect_order(&group, order, "cyclic kernel order")?;
            let rep = Representation::from_group(group)?;
            let mut checked = 0;
            for g in 1..rep.order() as u32 {
                if rep.fixed_dim_cyclic(g)? != 0 {
                    return Err(Error::CertificateFailure {
                        element: g as usize,
                    });
                }
                checked += 1;
            }
            Ok(ProductActionCertificate {
                sphere_dims: (1, 1),
                group_order: order,
                kernel_order: order,
                checked,
            })
        }
        1 => {
            if t < 2 {
                return Err(Error::FamilyParameter(
                    "split quotient needs kernel exponent t >= 2".into(),
                ));
            }
            let rep = modular_metacyclic(p, t + 1)?;
            let kernel = rep.group().cyclic_subgroup(rep.group().generator_index(0));
            let expected_kernel = pow_checked(p, t)?;
            if kernel.order() as u64 != expected_kernel {
                return Err(Error::RouteMismatch {
                    context: "certificate kernel order".into(),
                    lhs: kernel.order().to_string(),
                    rhs: expected_kernel.to_string(),
                });
            }
            let mut checked = 0;
            for g in 1..rep.order() as u32 {
                if kernel.contains(g) && rep.fixed_dim_cyclic(g)? != 0 {
                    return Err(Error::CertificateFailure {
                        element: g as usize,
                    });
                }
                checked += 1;
            }
            Ok(ProductActionCertificate {
                sphere_dims: (2 * p - 1, 1),
                group_order: rep.order() as u64,
                kernel_order: expected_kernel,
                checked,
            })
        }
        _ => Err(Error::FamilyParameter(format!(
            "no monomial model for quotient exponent s = {s}; use s = 0 or 1"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_scalar(m: &CycloMatrix) -> bool {
        let first = m.entry(0, 0).clone();
        let scalar = scalar_matrix(m.n_rows(), &first).unwrap();
        *m == scalar
    }

    #[test]
    fn monomial_spec_compiles_to_expected_matrix() {
        let i4 = CyclotomicNumber::root_of_unity(4, 1).unwrap();
        let spec = MonomialSpec::new(vec![1, 0], vec![i4.clone(), i4.clone()]).unwrap();
        let m = spec.compile().unwrap();
        assert_eq!(spec.degree(), 2);
        assert_eq!(*m.entry(1, 0), i4);
        assert_eq!(*m.entry(0, 1), i4);
        assert!(m.entry(0, 0).is_zero());
    }

    #[test]
    fn monomial_spec_rejects_non_root_diagonal() {
        let two = CyclotomicNumber::from_rational(1, crate::cyclo::rational_int(2)).unwrap();
        let err = MonomialSpec::new(vec![0], vec![two]).unwrap_err();
        assert!(matches!(err, Error::FamilyParameter(_)));
    }

    #[test]
    fn presentation_word_renders_with_exponents() {
        let rel = PresentationWord::equation(
            PresentationWord::commutator(&[Sym::Gen(0)], &[Sym::Gen(1)]),
            PresentationWord::pow(0, 3),
        );
        assert_eq!(rel.to_string(), "g0^-1*g1^-1*g0*g1 = g0^3");
        let inv = PresentationWord::relator(PresentationWord::pow(1, -2));
        assert_eq!(inv.to_string(), "g1^-2 = 1");
    }

    #[test]
    fn verify_presentation_accepts_true_and_rejects_false_relations() {
        let shift = shift_up(3, 3).unwrap();
        let cube = vec![PresentationWord::relator(PresentationWord::pow(0, 3))];
        assert!(verify_presentation(&[shift.clone()], &cube).unwrap());
        let square = vec![PresentationWord::relator(PresentationWord::pow(0, 2))];
        assert!(!verify_presentation(&[shift.clone()], &square).unwrap());
        assert!(verify_presentation(&[shift], &[]).unwrap());
    }

    #[test]
    fn verify_presentation_flags_out_of_range_symbols() {
        let shift = shift_up(3, 3).unwrap();
        let bad = vec![PresentationWord::relator(vec![Sym::Gen(7)])];
        let err = verify_presentation(&[shift], &bad).unwrap_err();
        assert!(matches!(err, Error::MalformedWord { index: 0, count: 1 }));
    }

    #[test]
    fn heisenberg_three_has_order_27_and_scalar_commutator() {
        let rep = heisenberg(3).unwrap();
        assert_eq!(rep.order(), 27);
        assert_eq!(rep.degree(), 3);
        let g = rep.group();
        let c = g.commutator_index(g.generator_index(0), g.generator_index(1));
        let omega = CyclotomicNumber::root_of_unity(3, 1).unwrap();
        assert_eq!(*g.element(c), scalar_matrix(3, &omega).unwrap());
    }

    #[test]
    fn heisenberg_three_is_irreducible_with_fixity_one() {
        let rep = heisenberg(3).unwrap();
        assert!(rep.is_irreducible().unwrap());
        assert_eq!(rep.fixity().unwrap().fixity, 1);
        assert!(rep.free_on_stiefel(1).unwrap());
    }

    #[test]
    fn heisenberg_center_is_the_scalar_subgroup_of_order_three() {
        let rep = heisenberg(3).unwrap();
        let g = rep.group();
        let center = g.center();
        assert_eq!(center.order(), 3);
        for &z in center.elements() {
            assert!(is_scalar(g.element(z)));
        }
    }

    #[test]
    fn heisenberg_five_has_order_125_and_fixity_one() {
        let rep = heisenberg(5).unwrap();
        assert_eq!(rep.order(), 125);
        assert_eq!(rep.fixity().unwrap().fixity, 1);
    }

    #[test]
    fn heisenberg_rejects_two_and_composites() {
        assert!(matches!(heisenberg(2), Err(Error::FamilyParameter(_))));
        assert!(matches!(heisenberg(9), Err(Error::FamilyParameter(_))));
    }

    #[test]
    fn modular_27_has_fixity_one() {
        let rep = modular_metacyclic(3, 3).unwrap();
        assert_eq!(rep.order(), 27);
        assert_eq!(rep.fixity().unwrap().fixity, 1);
        assert!(rep.is_irreducible().unwrap());
    }

    #[test]
    fn modular_625_is_free_on_stage_three() {
        let rep = modular_metacyclic(5, 4).unwrap();
        assert_eq!(rep.order(), 625);
        assert_eq!(rep.fixity().unwrap().fixity, 1);
        assert!(rep.free_on_stiefel(3).unwrap());
    }

    #[test]
    fn modular_625_central_order_five_subgroup_acts_as_scalar() {
        let rep = modular_metacyclic(5, 4).unwrap();
        let g = rep.group();
        let a = g.generator_index(0);
        let a25 = g.pow_index(a, 25);
        let zeta5 = CyclotomicNumber::root_of_unity(125, 25).unwrap();
        assert_eq!(*g.element(a25), scalar_matrix(5, &zeta5).unwrap());
        let b = g.cyclic_subgroup(a);
        assert!(rep.mackey_free_check(&b, 5).unwrap());
    }

    #[test]
    fn modular_81_passes_the_cyclic_freeness_check() {
        let rep = modular_metacyclic(3, 4).unwrap();
        assert_eq!(rep.order(), 81);
        let g = rep.group();
        let a = g.generator_index(0);
        let a9 = g.pow_index(a, 9);
        assert!(is_scalar(g.element(a9)));
        assert_eq!(g.element_order(a9), 3);
        let b = g.cyclic_subgroup(a);
        assert!(rep.mackey_free_check(&b, 3).unwrap());
    }

    #[test]
    fn modular_rejects_short_or_even_parameters() {
        assert!(matches!(
            modular_metacyclic(3, 2),
            Err(Error::FamilyParameter(_))
        ));
        assert!(matches!(
            modular_metacyclic(2, 3),
            Err(Error::FamilyParameter(_))
        ));
    }

    #[test]
    fn exceptional_two_625_satisfies_its_commutator_identity() {
        let rep = exceptional_family_two(5, 4).unwrap();
        assert_eq!(rep.order(), 625);
        let g = rep.group();
        let a = g.generator_index(0);
        let x = g.generator_index(1);
        let y = g.generator_index(2);
        let xy = g.commutator_index(x, y);
        assert_eq!(xy, g.pow_index(a, 5));
        let mu = CyclotomicNumber::root_of_unity(25, 5).unwrap();
        assert_eq!(*g.element(xy), scalar_matrix(5, &mu).unwrap());
        assert_eq!(rep.fixity().unwrap().fixity, 1);
    }

    #[test]
    fn exceptional_two_3125_has_cyclic_center_of_order_125() {
        let rep = exceptional_family_two(5, 5).unwrap();
        assert_eq!(rep.order(), 3125);
        let g = rep.group();
        let center = g.center();
        assert_eq!(center.order(), 125);
        assert!(g.is_cyclic_subgroup(&center));
    }

    #[test]
    fn exceptional_two_rejects_small_primes() {
        assert!(matches!(
            exceptional_family_two(3, 4),
            Err(Error::FamilyParameter(_))
        ));
    }

    #[test]
    fn exceptional_three_search_finds_order_625_fixity_one() {
        let rep = exceptional_family_three(5, 4, 1).unwrap();
        assert_eq!(rep.order(), 625);
        assert_eq!(rep.fixity().unwrap().fixity, 1);
        let record = rep.classification_crosscheck(5).unwrap();
        assert!(record.all_pass(), "{record:?}");
    }

    #[test]
    fn exceptional_three_accepts_nonresidue_twist() {
        let rep = exceptional_family_three(5, 4, 2).unwrap();
        assert_eq!(rep.order(), 625);
        assert_eq!(rep.fixity().unwrap().fixity, 1);
    }

    #[test]
    fn exceptional_three_rejects_nontrivial_residue_twist() {
        assert!(matches!(
            exceptional_family_three(5, 4, 4),
            Err(Error::FamilyParameter(_))
        ));
    }

    #[test]
    fn twisted_group_has_order_108_with_normal_diagonal_part() {
        let rep = g_p(3).unwrap();
        assert_eq!(rep.order(), 108);
        let g = rep.group();
        assert_eq!(g.element_order(g.generator_index(3)), 4);
        let ab = g.subgroup(&[g.generator_index(0), g.generator_index(1)]);
        assert_eq!(ab.order(), 9);
        assert!(g.is_normal(&ab));
        assert_eq!(rep.fixity().unwrap().fixity, 1);
        assert!(rep.free_on_stiefel(1).unwrap());
    }

    #[test]
    fn wreath_three_has_order_81_rank_three_fixity_two() {
        let rep = wreath(3).unwrap();
        assert_eq!(rep.order(), 81);
        let g = rep.group();
        assert_eq!(g.p_rank(3).r_p, 3);
        assert!(g.has_abelian_maximal(3).unwrap());
        assert_eq!(rep.fixity().unwrap().fixity, 2);
    }

    fn cyclic_character(
        g: &MatrixGroup,
        generator: u32,
        handle: &SubgroupHandle,
        conductor: u64,
    ) -> Vec<CyclotomicNumber> {
        let order = g.element_order(generator);
        let mut power_of = vec![0u64; g.order()];
        let mut cur = 0u32;
        for k in 0..order {
            power_of[cur as usize] = k;
            cur = g.mul_index(cur, generator);
        }
        handle
            .elements()
            .iter()
            .map(|&e| {
                CyclotomicNumber::root_of_unity(conductor, power_of[e as usize] as i64).unwrap()
            })
            .collect()
    }

    #[test]
    fn inducing_the_faithful_cyclic_character_recovers_the_modular_rep() {
        let rep = modular_metacyclic(3, 3).unwrap();
        let g = rep.group();
        let a = g.generator_index(0);
        let b = g.cyclic_subgroup(a);
        let chi = cyclic_character(g, a, &b, 9);
        let recipe = InductionRecipe::new(g, b, chi).unwrap();
        let induced = induce(&recipe).unwrap();
        assert_eq!(induced.degree(), 3);
        assert_eq!(induced.order(), 27);
        assert!(induced.is_irreducible().unwrap());
        assert_eq!(induced.fixity().unwrap().fixity, 1);
    }

    #[test]
    fn inducing_the_trivial_character_gives_the_coset_permutation_rep() {
        let rep = modular_metacyclic(3, 3).unwrap();
        let g = rep.group();
        let b = g.cyclic_subgroup(g.generator_index(0));
        let chi = vec![CyclotomicNumber::one(1).unwrap(); b.order()];
        let recipe = InductionRecipe::new(g, b, chi).unwrap();
        let induced = induce(&recipe).unwrap();
        assert_eq!(induced.degree(), 3);
        assert_eq!(induced.order(), 3);
        let whole = induced.group().full_subgroup();
        assert_eq!(induced.fixed_dim(&whole).unwrap(), 1);
    }

    #[test]
    fn inducing_from_the_whole_group_returns_the_character_itself() {
        let z5 = CyclotomicNumber::root_of_unity(5, 1).unwrap();
        let m = CycloMatrix::from_rows(vec![vec![z5.clone()]]).unwrap();
        let g = MatrixGroup::generate(vec![m], 10).unwrap();
        let whole = g.full_subgroup();
        let chi = cyclic_character(&g, g.generator_index(0), &whole, 5);
        let recipe = InductionRecipe::new(&g, whole, chi).unwrap();
        let induced = induce(&recipe).unwrap();
        assert_eq!(induced.degree(), 1);
        assert_eq!(induced.order(), 5);
        assert_eq!(*induced.character(g.generator_index(0)), z5);
    }

    #[test]
    fn induction_rejects_non_multiplicative_characters() {
        let rep = modular_metacyclic(3, 3).unwrap();
        let g = rep.group();
        let b = g.cyclic_subgroup(g.generator_index(0));
        let bad = vec![CyclotomicNumber::root_of_unity(9, 1).unwrap(); b.order()];
        match InductionRecipe::new(g, b, bad) {
            Err(Error::NonHomomorphism) => {}
            Err(other) => panic!("unexpected error {other}"),
            Ok(_) => panic!("constant nontrivial character accepted"),
        }
    }

    #[test]
    fn induction_rejects_a_repeated_transversal() {
        let rep = modular_metacyclic(3, 3).unwrap();
        let g = rep.group();
        let a = g.generator_index(0);
        let b = g.cyclic_subgroup(a);
        let chi = cyclic_character(g, a, &b, 9);
        match InductionRecipe::with_transversal(g, b, chi, vec![0, 0, 0]) {
            Err(Error::FamilyParameter(_)) => {}
            Err(other) => panic!("unexpected error {other}"),
            Ok(_) => panic!("repeated transversal accepted"),
        }
    }

    #[test]
    fn induced_character_matches_the_trace_of_the_formula_matrix() {
        let rep = modular_metacyclic(3, 3).unwrap();
        let g = rep.group();
        let a = g.generator_index(0);
        let b = g.cyclic_subgroup(a);
        let chi = cyclic_character(g, a, &b, 9);
        let recipe = InductionRecipe::new(g, b, chi).unwrap();
        let induced = induce(&recipe).unwrap();
        for e in 0..g.order() as u32 {
            let formula = recipe.induced_character(e).unwrap();
            assert!(formula.eq_in_common_field(induced.character(e)).unwrap());
        }
    }

    #[test]
    fn product_certificate_passes_for_order_27() {
        let cert = product_action_certificate(3, 2, 1).unwrap();
        assert_eq!(cert.sphere_dims, (5, 1));
        assert_eq!(cert.group_order, 27);
        assert_eq!(cert.kernel_order, 9);
        assert_eq!(cert.checked, 26);
    }

    #[test]
    fn product_certificate_passes_for_order_625() {
        let cert = product_action_certificate(5, 3, 1).unwrap();
        assert_eq!(cert.sphere_dims, (9, 1));
        assert_eq!(cert.group_order, 625);
        assert_eq!(cert.kernel_order, 125);
        assert_eq!(cert.checked, 624);
    }

    #[test]
    fn degenerate_certificate_reduces_to_a_free_cyclic_action() {
        let cert = product_action_certificate(3, 4, 0).unwrap();
        assert_eq!(cert.sphere_dims, (1, 1));
        assert_eq!(cert.group_order, 81);
        assert_eq!(cert.kernel_order, 81);
    }

    #[test]
    fn certificate_rejects_large_quotient_exponents() {
        assert!(matches!(
            product_action_certificate(3, 2, 2),
            Err(Error::FamilyParameter(_))
        ));
    }

    #[test]
    fn heisenberg_center_passes_the_cyclic_freeness_check() {
        let rep = heisenberg(3).unwrap();
        let center = rep.group().center();
        assert!(rep.mackey_free_check(&center, 3).unwrap());
    }

    #[test]
    fn fixity_one_families_pass_the_classification_crosscheck() {
        for (rep, p) in [
            (heisenberg(3).unwrap(), 3),
            (modular_metacyclic(3, 3).unwrap(), 3),
        ] {
            let record = rep.classification_crosscheck(p).unwrap();
            assert!(record.all_pass(), "p = {p}: {record:?}");
        }
    }
}
