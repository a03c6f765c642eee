//! Exact multivariate elements over phase-variable quotient rings.
//!
//! A [`VariableSpace`] declares named generators organized in *blocks*. A
//! block is a set of Cartesian generators (say L₁,L₂,L₃) optionally equipped
//! with a *radial* generator S subject to the relation S² = ΣᵢLᵢ². Radial
//! generators may carry arbitrary half-integer (including negative) powers —
//! exactly the forms 1/√L, 1/L², √(ΣΛ²) that the operator calculus produces.
//!
//! A [`RingElement`] is a finite sum of monomials with [`ScalarExact`]
//! coefficients, kept in a canonical normal form so that equality is
//! decidable by structural comparison. The normal form eliminates the square
//! of the **last** Cartesian generator of every radial block via the block
//! relation (e.g. L₃² → S² − L₁² − L₂²), so a basis of the quotient is
//!
//! ```text
//!     L₁^a · L₂^b · L₃^c · S^(e/2)      with  c ∈ {0, 1},  e ∈ ℤ
//! ```
//!
//! and likewise per block. The reduction strictly decreases the eliminated
//! exponent, so it terminates and the normal form is unique; idempotence is
//! property-tested.
//!
//! Differentiation is defined with respect to Cartesian generators only and
//! applies the chain rule through radial generators (∂S/∂Lₖ = Lₖ/S).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::ScalarExact;

/// Index of a generator within its [`VariableSpace`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GenId(pub usize);

/// What a generator is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenKind {
    /// Coordinate generator; nonnegative integer exponents (the eliminated
    /// one of a radial block stays in {0, 1} in normal form).
    Cartesian,
    /// Radial generator of a block; exponents are half-integers of either
    /// sign, stored in half-units.
    Radial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Gen {
    name: String,
    kind: GenKind,
}

/// A block of Cartesian generators, optionally tied to a radial generator by
/// the relation radial² = Σ members².
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    members: Vec<usize>,
    radial: Option<usize>,
}

/// Named generators plus their block/relation structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableSpace {
    gens: Vec<Gen>,
    blocks: Vec<Block>,
}

/// Builder for [`VariableSpace`].
#[derive(Default)]
pub struct SpaceBuilder {
    gens: Vec<Gen>,
    blocks: Vec<Block>,
}

impl SpaceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a block of Cartesian generators with a radial generator bound by
    /// radial² = Σ members². Returns the member ids and the radial id.
    pub fn block_with_radial(
        &mut self,
        members: &[&str],
        radial: &str,
    ) -> (Vec<GenId>, GenId) {
        let ids = self.push_members(members);
        let rid = self.gens.len();
        self.gens.push(Gen {
            name: radial.to_string(),
            kind: GenKind::Radial,
        });
        self.blocks.push(Block {
            members: ids.iter().map(|g| g.0).collect(),
            radial: Some(rid),
        });
        (ids, GenId(rid))
    }

    /// Add a block of plain Cartesian generators with no radial relation.
    pub fn block_plain(&mut self, members: &[&str]) -> Vec<GenId> {
        let ids = self.push_members(members);
        self.blocks.push(Block {
            members: ids.iter().map(|g| g.0).collect(),
            radial: None,
        });
        ids
    }

    fn push_members(&mut self, members: &[&str]) -> Vec<GenId> {
        members
            .iter()
            .map(|name| {
                let id = self.gens.len();
                self.gens.push(Gen {
                    name: name.to_string(),
                    kind: GenKind::Cartesian,
                });
                GenId(id)
            })
            .collect()
    }

    pub fn build(self) -> Arc<VariableSpace> {
        assert!(!self.gens.is_empty(), "space needs at least one generator");
        Arc::new(VariableSpace {
            gens: self.gens,
            blocks: self.blocks,
        })
    }
}

impl VariableSpace {
    /// Number of generators (Cartesian and radial).
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator name.
    pub fn name(&self, g: GenId) -> &str {
        &self.gens[g.0].name
    }

    /// Generator kind.
    pub fn kind(&self, g: GenId) -> &GenKind {
        &self.gens[g.0].kind
    }

    /// Look a generator up by name.
    pub fn gen_by_name(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name).map(GenId)
    }

    /// Ids of all Cartesian generators in declaration order.
    pub fn cartesian_gens(&self) -> Vec<GenId> {
        (0..self.gens.len())
            .filter(|&i| self.gens[i].kind == GenKind::Cartesian)
            .map(GenId)
            .collect()
    }

    /// The blocks of this space.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block index containing generator `g`.
    pub fn block_of(&self, g: GenId) -> usize {
        self.blocks
            .iter()
            .position(|b| b.members.contains(&g.0) || b.radial == Some(g.0))
            .expect("generator belongs to a block")
    }

    /// The Cartesian generator eliminated by the block's radial relation
    /// (the last member), if the block has a radial generator.
    fn eliminated_of_block(&self, block: usize) -> Option<usize> {
        let b = &self.blocks[block];
        b.radial.and_then(|_| b.members.last().copied())
    }
}

impl Block {
    pub fn members(&self) -> impl Iterator<Item = GenId> + '_ {
        self.members.iter().map(|&i| GenId(i))
    }

    pub fn radial(&self) -> Option<GenId> {
        self.radial.map(GenId)
    }
}

/// Exponent vector over the space's generators. Cartesian entries are whole
/// exponents; radial entries are in half-units (so `3` means power 3/2).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Exact element of the quotient ring of a [`VariableSpace`], in canonical
/// normal form. Coefficients are [`ScalarExact`] values.
#[derive(Clone)]
pub struct RingElement {
    space: Arc<VariableSpace>,
    terms: BTreeMap<Monomial, ScalarExact>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.space_eq(other) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl RingElement {
    /// The zero element.
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    /// The unit element.
    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::scalar(space, ScalarExact::one())
    }

    /// A scalar as a ring element.
    pub fn scalar(space: &Arc<VariableSpace>, s: ScalarExact) -> Self {
        let mut e = Self::zero(space);
        e.add_term(Monomial::unit(space.len()), s);
        e
    }

    /// A single generator.
    pub fn gen(space: &Arc<VariableSpace>, g: GenId) -> Self {
        Self::gen_pow(space, g, 1)
    }

    /// `g^p` for a Cartesian generator (whole power p ≥ 0).
    pub fn gen_pow(space: &Arc<VariableSpace>, g: GenId, p: u32) -> Self {
        assert_eq!(
            space.kind(g),
            &GenKind::Cartesian,
            "use gen_pow_half for radial generators"
        );
        let mut m = Monomial::unit(space.len());
        m.0[g.0] = p as i32;
        let mut e = Self::zero(space);
        e.add_term(m, ScalarExact::one());
        e
    }

    /// `r^(h/2)` for a radial generator, h in half-units of either sign.
    pub fn gen_pow_half(space: &Arc<VariableSpace>, g: GenId, h: i32) -> Self {
        assert_eq!(
            space.kind(g),
            &GenKind::Radial,
            "half powers are reserved for radial generators"
        );
        let mut m = Monomial::unit(space.len());
        m.0[g.0] = h;
        let mut e = Self::zero(space);
        e.add_term(m, ScalarExact::one());
        e
    }

    /// The space this element lives in.
    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn space_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit(self.space.len()))
                .map(|s| s.is_one())
                .unwrap_or(false)
    }

    /// If the element is a pure scalar, return it.
    pub fn as_scalar(&self) -> Option<ScalarExact> {
        if self.is_zero() {
            return Some(ScalarExact::zero());
        }
        if self.terms.len() == 1 {
            if let Some(s) = self.terms.get(&Monomial::unit(self.space.len())) {
                return Some(s.clone());
            }
        }
        None
    }

    /// Iterate over (monomial, coefficient) pairs in canonical order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarExact)> {
        self.terms.iter()
    }

    /// Number of monomials.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Insert `coeff·monomial`, reducing to normal form. This is the single
    /// entry point through which every term passes, so all stored elements
    /// are canonical.
    fn add_term(&mut self, m: Monomial, coeff: ScalarExact) {
        if coeff.is_zero() {
            return;
        }
        // Find an eliminated generator with exponent ≥ 2.
        for block in 0..self.space.blocks.len() {
            let Some(e_gen) = self.space.eliminated_of_block(block) else {
                continue;
            };
            if m.0[e_gen] >= 2 {
                let b = self.space.blocks[block].clone();
                let radial = b.radial.expect("eliminated gen implies radial");
                // g_e² = radial² − Σ_{other members} g_i²
                let mut base = m.clone();
                base.0[e_gen] -= 2;
                let mut with_radial = base.clone();
                with_radial.0[radial] += 4; // radial² in half-units
                self.add_term(with_radial, coeff.clone());
                for &g in &b.members {
                    if g == e_gen {
                        continue;
                    }
                    let mut with_sq = base.clone();
                    with_sq.0[g] += 2;
                    self.add_term(with_sq, -coeff.clone());
                }
                return;
            }
        }
        let entry = self
            .terms
            .entry(m)
            .or_insert_with(ScalarExact::zero);
        *entry += coeff;
        if entry.is_zero() {
            // Cheap re-lookup to drop the zero: the borrow above ends here.
            let dead: Vec<Monomial> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(m, _)| m.clone())
                .collect();
            for m in dead {
                self.terms.remove(&m);
            }
        }
    }

    /// Multiply by an exact scalar.
    pub fn mul_scalar(&self, s: &ScalarExact) -> Self {
        if s.is_zero() {
            return Self::zero(&self.space);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self {
            space: Arc::clone(&self.space),
            terms,
        }
    }

    /// Multiply by a single generator power (Cartesian whole power or radial
    /// half-units, of either sign for radial).
    pub fn mul_gen_pow(&self, g: GenId, pow_units: i32) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[g.0] += pow_units;
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Complex-conjugate all coefficients.
    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.conj()))
            .collect();
        Self {
            space: Arc::clone(&self.space),
            terms,
        }
    }

    /// Map coefficients, dropping zeros (no renormalization needed since
    /// monomials are untouched).
    pub fn map_coeffs(&self, f: impl Fn(&ScalarExact) -> ScalarExact) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c2 = f(c);
                (!c2.is_zero()).then(|| (m.clone(), c2))
            })
            .collect();
        Self {
            space: Arc::clone(&self.space),
            terms,
        }
    }

    /// Derivative with respect to a Cartesian generator, applying the chain
    /// rule through every radial generator of the same block
    /// (∂R/∂g = g/R).
    pub fn derivative(&self, g: GenId) -> Self {
        assert_eq!(
            self.space.kind(g),
            &GenKind::Cartesian,
            "derivatives are taken with respect to Cartesian generators"
        );
        let block = self.space.block_of(g);
        let radial = self.space.blocks[block].radial;
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            // Product-rule term from the explicit g power.
            let a = m.0[g.0];
            if a != 0 {
                let mut m2 = m.clone();
                m2.0[g.0] -= 1;
                out.add_term(m2, c * &ScalarExact::integer(a as i64));
            }
            // Chain-rule term from the radial power: R^(h/2) has
            // ∂/∂g = (h/2)·g·R^(h/2 − 2).
            if let Some(r) = radial {
                let h = m.0[r];
                if h != 0 {
                    // (h/2)·g·R^(h/2 − 2): −4 half-units on R, +1 on g.
                    let mut m2 = m.clone();
                    m2.0[r] -= 4;
                    m2.0[g.0] += 1;
                    let coeff = c * &ScalarExact::rational(crate::scalar::rat(h as i64, 2));
                    out.add_term(m2, coeff);
                }
            }
        }
        out
    }

    /// Uniform homogeneity degree (in half-units) of the element within one
    /// block, counting Cartesian exponents ×2 and radial half-units; `None`
    /// when the element mixes degrees (or is zero).
    pub fn block_degree_half(&self, block: usize) -> Option<i32> {
        let b = &self.space.blocks[block];
        let mut deg: Option<i32> = None;
        for m in self.terms.keys() {
            let mut d = 0;
            for &g in &b.members {
                d += 2 * m.0[g];
            }
            if let Some(r) = b.radial {
                d += m.0[r];
            }
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Evaluate at a numeric point. `point[i]` must hold the value of
    /// Cartesian generator i (entries for radial generators are ignored and
    /// recomputed as √Σ members²).
    pub fn eval_c64(&self, point: &[f64], hbar: f64) -> num::Complex<f64> {
        assert_eq!(point.len(), self.space.len());
        // Precompute radial values.
        let mut vals = point.to_vec();
        for b in &self.space.blocks {
            if let Some(r) = b.radial {
                let s: f64 = b.members.iter().map(|&g| point[g] * point[g]).sum();
                vals[r] = s.sqrt();
            }
        }
        let mut acc = num::Complex::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut mag = 1.0;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match self.space.gens[i].kind {
                    GenKind::Cartesian => mag *= vals[i].powi(e),
                    GenKind::Radial => mag *= vals[i].powf(e as f64 / 2.0),
                }
            }
            acc += c.to_c64(hbar) * mag;
        }
        acc
    }

    /// Keep only the ħ⁰ part of every coefficient; `Err` if any coefficient
    /// carries a negative ħ power (no classical limit).
    pub fn hbar_constant_part(&self) -> Result<Self, String> {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            let mut kept = ScalarExact::zero();
            for (p, q, r, coeff) in c.iter_terms() {
                if q < 0 {
                    return Err(format!(
                        "coefficient of {} carries hbar^({}/2)",
                        DisplayMonomial(&self.space, m),
                        q
                    ));
                }
                if q == 0 {
                    kept += ScalarExact::term(coeff.clone(), p, 0, r);
                }
            }
            out.add_term(m.clone(), kept);
        }
        Ok(out)
    }

    /// Construct from raw term data (deserialization); inputs are reduced to
    /// normal form.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, ScalarExact)>>(
        space: &Arc<VariableSpace>,
        it: I,
    ) -> Self {
        let mut e = Self::zero(space);
        for (m, c) in it {
            assert_eq!(m.0.len(), space.len(), "monomial arity mismatch");
            e.add_term(m, c);
        }
        e
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: Self) -> RingElement {
        assert!(self.space_eq(rhs), "ring elements from different spaces");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: Self) -> RingElement {
        &self + &rhs
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: Self) -> RingElement {
        assert!(self.space_eq(rhs), "ring elements from different spaces");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: Self) -> RingElement {
        &self - &rhs
    }
}

impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.map_coeffs(|c| -c.clone())
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: Self) -> RingElement {
        assert!(self.space_eq(rhs), "ring elements from different spaces");
        let mut out = RingElement::zero(&self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: Self) -> RingElement {
        &self * &rhs
    }
}

struct DisplayMonomial<'a>(&'a Arc<VariableSpace>, &'a Monomial);

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.1 .0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = &self.0.gens[i].name;
            match self.0.gens[i].kind {
                GenKind::Cartesian => {
                    if e == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{e}")?;
                    }
                }
                GenKind::Radial => {
                    if e == 2 {
                        write!(f, "{name}")?;
                    } else if e % 2 == 0 {
                        write!(f, "{name}^{}", e / 2)?;
                    } else {
                        write!(f, "{name}^({e}/2)")?;
                    }
                }
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", c, DisplayMonomial(&self.space, m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn euler_space() -> (Arc<VariableSpace>, Vec<GenId>, GenId) {
        let mut b = SpaceBuilder::new();
        let (ls, s) = b.block_with_radial(&["L1", "L2", "L3"], "S");
        (b.build(), ls, s)
    }

    #[test]
    fn eliminated_square_reduces() {
        let (sp, ls, s) = euler_space();
        let l3 = RingElement::gen(&sp, ls[2]);
        let l3sq = &l3 * &l3;
        // L3² = S² − L1² − L2²
        let expected = RingElement::gen_pow_half(&sp, s, 4)
            - RingElement::gen_pow(&sp, ls[0], 2)
            - RingElement::gen_pow(&sp, ls[1], 2);
        assert_eq!(l3sq, expected);
        // and the normal form has no L3 power ≥ 2 anywhere
        for (m, _) in l3sq.iter_terms() {
            assert!(m.0[ls[2].0] <= 1);
        }
    }

    #[test]
    fn sum_of_squares_is_radial_square() {
        let (sp, ls, s) = euler_space();
        let sum = ls
            .iter()
            .map(|&l| RingElement::gen_pow(&sp, l, 2))
            .fold(RingElement::zero(&sp), |a, b| a + b);
        assert_eq!(sum, RingElement::gen_pow_half(&sp, s, 4));
    }

    #[test]
    fn radial_powers_cancel() {
        let (sp, _, s) = euler_space();
        let a = RingElement::gen_pow_half(&sp, s, -1); // S^{-1/2}
        let b = RingElement::gen_pow_half(&sp, s, 5); // S^{5/2}
        assert_eq!(&a * &b, RingElement::gen_pow_half(&sp, s, 4));
    }

    #[test]
    fn derivative_chain_rule_through_radial() {
        let (sp, ls, s) = euler_space();
        // ∂/∂L1 S = L1/S
        let sgen = RingElement::gen_pow_half(&sp, s, 2);
        let d = sgen.derivative(ls[0]);
        let expected =
            RingElement::gen(&sp, ls[0]).mul_gen_pow(s, -2);
        assert_eq!(d, expected);
        // ∂/∂L1 S² = 2L1 (the relation makes S² an honest polynomial)
        let s2 = RingElement::gen_pow_half(&sp, s, 4);
        assert_eq!(
            s2.derivative(ls[0]),
            RingElement::gen(&sp, ls[0]).mul_scalar(&ScalarExact::integer(2))
        );
        // ∂/∂L3 (L3·S^{-1}) = S^{-1} − L3²·S^{-3} (chain rule together with
        // the eliminated-square reduction)
        let e = RingElement::gen(&sp, ls[2]).mul_gen_pow(s, -2);
        let d3 = e.derivative(ls[2]);
        let l1sq = RingElement::gen_pow(&sp, ls[0], 2);
        let l2sq = RingElement::gen_pow(&sp, ls[1], 2);
        let expected3 = RingElement::gen_pow_half(&sp, s, -2)
            - (RingElement::gen_pow_half(&sp, s, 4) - l1sq - l2sq).mul_gen_pow(s, -6);
        assert_eq!(d3, expected3);
    }

    #[test]
    fn derivatives_commute() {
        let (sp, ls, s) = euler_space();
        // Mixed partials agree on a messy element.
        let e = RingElement::gen(&sp, ls[2]).mul_gen_pow(s, -3)
            + RingElement::gen_pow(&sp, ls[0], 2).mul_gen_pow(s, 1);
        let d12 = e.derivative(ls[0]).derivative(ls[1]);
        let d21 = e.derivative(ls[1]).derivative(ls[0]);
        assert_eq!(d12, d21);
    }

    #[test]
    fn eval_matches_symbolic_reduction() {
        let (sp, ls, s) = euler_space();
        let l3sq = RingElement::gen_pow(&sp, ls[2], 2);
        let pt = {
            let mut p = vec![0.0; sp.len()];
            p[ls[0].0] = 0.3;
            p[ls[1].0] = -1.2;
            p[ls[2].0] = 0.7;
            p[s.0] = 0.0; // ignored, recomputed
            p
        };
        let v = l3sq.eval_c64(&pt, 1.0);
        assert!((v.re - 0.49).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
        // S^{-1} at the same point
        let sinv = RingElement::gen_pow_half(&sp, s, -2);
        let norm = (0.3f64 * 0.3 + 1.2 * 1.2 + 0.7 * 0.7).sqrt();
        assert!((sinv.eval_c64(&pt, 1.0).re - 1.0 / norm).abs() < 1e-14);
    }

    #[test]
    fn hbar_constant_part_filters() {
        let (sp, ls, _) = euler_space();
        let e = RingElement::gen(&sp, ls[0])
            .mul_scalar(&(ScalarExact::one() + ScalarExact::hbar_pow(2)));
        let cl = e.hbar_constant_part().unwrap();
        assert_eq!(cl, RingElement::gen(&sp, ls[0]));
        let bad = RingElement::one(&sp).mul_scalar(&ScalarExact::hbar_pow(-1));
        assert!(bad.hbar_constant_part().is_err());
    }

    #[test]
    fn block_degree_tracks_homogeneity() {
        let (sp, ls, s) = euler_space();
        // L1·S^{-1/2}: degree 2 − 1 = 1 in half-units … L1 contributes 2.
        let e = RingElement::gen(&sp, ls[0]).mul_gen_pow(s, -1);
        assert_eq!(e.block_degree_half(0), Some(1));
        let mixed = RingElement::gen(&sp, ls[0]) + RingElement::one(&sp);
        assert_eq!(mixed.block_degree_half(0), None);
    }

    #[test]
    fn normal_form_is_idempotent_under_rebuild() {
        let (sp, ls, s) = euler_space();
        let e = (RingElement::gen(&sp, ls[2]) + RingElement::gen_pow_half(&sp, s, 2))
            .mul_scalar(&ScalarExact::rational(rat(3, 7)));
        let sq = &e * &e;
        let rebuilt = RingElement::from_terms(
            &sp,
            sq.iter_terms().map(|(m, c)| (m.clone(), c.clone())),
        );
        assert_eq!(sq, rebuilt);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// A random small element of the Euler-block ring.
        fn arb_elem() -> impl Strategy<Value = RingElement> {
            let term = (
                0u32..3,
                0u32..3,
                0u32..2,
                -3i32..4,
                -4i64..5,
                1i64..5,
            );
            proptest::collection::vec(term, 1..5).prop_map(|ts| {
                let (sp, ls, s) = euler_space();
                let mut acc = RingElement::zero(&sp);
                for (a, b, c, h, num, den) in ts {
                    let mono = RingElement::gen_pow(&sp, ls[0], a)
                        * RingElement::gen_pow(&sp, ls[1], b)
                        * RingElement::gen_pow(&sp, ls[2], c)
                        * RingElement::gen_pow_half(&sp, s, h);
                    acc = acc + mono.mul_scalar(&ScalarExact::rational(rat(num, den)));
                }
                acc
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn multiplication_commutes_and_distributes(
                a in arb_elem(), b in arb_elem(), c in arb_elem()
            ) {
                prop_assert_eq!(&a * &b, &b * &a);
                let lhs = &a * &(&b + &c);
                let rhs = &(&a * &b) + &(&a * &c);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn leibniz_rule_holds(a in arb_elem(), b in arb_elem()) {
                // d(ab) = da·b + a·db exercises the chain rule through the
                // radial generator together with the square elimination.
                let (sp, ls, _) = euler_space();
                let _ = sp;
                for &g in &ls {
                    let lhs = (&a * &b).derivative(g);
                    let rhs = &(&a.derivative(g) * &b) + &(&a * &b.derivative(g));
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn eval_is_a_ring_homomorphism(a in arb_elem(), b in arb_elem()) {
                let (sp, ls, s) = euler_space();
                let mut pt = vec![0.0; sp.len()];
                pt[ls[0].0] = 0.9;
                pt[ls[1].0] = -0.4;
                pt[ls[2].0] = 1.3;
                pt[s.0] = 0.0;
                let hbar = 0.7;
                let va = a.eval_c64(&pt, hbar);
                let vb = b.eval_c64(&pt, hbar);
                let vab = (&a * &b).eval_c64(&pt, hbar);
                prop_assert!((vab - va * vb).norm() < 1e-9 * (1.0 + vab.norm()));
            }
        }
    }
}
