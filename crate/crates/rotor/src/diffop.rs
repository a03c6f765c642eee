//! Exact differential operators with [`RingElement`] coefficients.
//!
//! A [`DiffOp`] is a finite sum Σ_α c_α ∂^α with the coefficient acting by
//! multiplication on the left. Composition applies the generalized Leibniz
//! rule exactly,
//!
//! ```text
//!     ∂^α ∘ M_c = Σ_{γ ≤ α} C(α,γ) · M_{∂^{α−γ} c} · ∂^γ ,
//! ```
//!
//! so products, commutators, and powers of operators stay in the class and
//! equality is decidable. Formal adjoints integrate by parts under a chosen
//! weight; boundary terms vanish for the exponentially weighted symbol class
//! this crate works with, and that assumption is a documented precondition.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::BigInt;

use crate::ring::{GenId, GenKind, Monomial, RingElement, VariableSpace};
use crate::scalar::{Rat, ScalarExact};
use crate::special::binomial;

/// Derivative multi-index: one order per generator (entries for radial
/// generators are always zero; derivatives act on Cartesian coordinates).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DerivIdx(pub Vec<u16>);

impl DerivIdx {
    pub fn unit(n: usize) -> Self {
        DerivIdx(vec![0; n])
    }

    pub fn order(&self) -> u32 {
        self.0.iter().map(|&k| k as u32).sum()
    }

    fn add(&self, other: &DerivIdx) -> DerivIdx {
        DerivIdx(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn sub(&self, other: &DerivIdx) -> DerivIdx {
        DerivIdx(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Enumerate all γ ≤ α component-wise (odometer walk).
fn sub_indices(alpha: &DerivIdx) -> Vec<DerivIdx> {
    let mut out = vec![DerivIdx::unit(alpha.0.len())];
    for (axis, &top) in alpha.0.iter().enumerate() {
        if top == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (top as usize + 1));
        for base in &out {
            for k in 0..=top {
                let mut g = base.clone();
                g.0[axis] = k;
                next.push(g);
            }
        }
        out = next;
    }
    out
}

/// Π_i C(α_i, γ_i) as an exact scalar.
fn multi_binomial(alpha: &DerivIdx, gamma: &DerivIdx) -> ScalarExact {
    let mut b = BigInt::from(1);
    for (&a, &g) in alpha.0.iter().zip(&gamma.0) {
        b *= binomial(a as u64, g as u64);
    }
    ScalarExact::rational(Rat::from_integer(b))
}

/// Integration weight for formal adjoints.
#[derive(Clone, Debug)]
pub enum Measure {
    /// Plain Lebesgue measure on the Cartesian coordinates.
    Flat,
    /// e^{a·R} with R the given radial generator; `a` must be real.
    ExpRadial { radial: GenId, a: ScalarExact },
    /// e^{w·Σ g²} over the members of the given block; `w` must be real.
    ExpGaussSquare { block: usize, w: ScalarExact },
}

/// Finite sum Σ_α c_α ∂^α in canonical form.
#[derive(Clone)]
pub struct DiffOp {
    space: Arc<VariableSpace>,
    terms: BTreeMap<DerivIdx, RingElement>,
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        self.space_eq(other) && self.terms == other.terms
    }
}

impl Eq for DiffOp {}

impl DiffOp {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator.
    pub fn identity(space: &Arc<VariableSpace>) -> Self {
        Self::mult(RingElement::one(space))
    }

    /// Multiplication operator M_c.
    pub fn mult(c: RingElement) -> Self {
        let space = Arc::clone(c.space());
        let mut op = Self::zero(&space);
        op.add_term(DerivIdx::unit(space.len()), c);
        op
    }

    /// First derivative ∂/∂g.
    pub fn partial(space: &Arc<VariableSpace>, g: GenId) -> Self {
        assert_eq!(
            space.kind(g),
            &GenKind::Cartesian,
            "derivatives act on Cartesian generators"
        );
        let mut idx = DerivIdx::unit(space.len());
        idx.0[g.0] = 1;
        let mut op = Self::zero(space);
        op.add_term(idx, RingElement::one(space));
        op
    }

    /// c·∂^α from parts.
    pub fn term(c: RingElement, idx: DerivIdx) -> Self {
        let space = Arc::clone(c.space());
        assert_eq!(idx.0.len(), space.len());
        for (i, &k) in idx.0.iter().enumerate() {
            if k > 0 {
                assert_eq!(
                    space.kind(GenId(i)),
                    &GenKind::Cartesian,
                    "derivatives act on Cartesian generators"
                );
            }
        }
        let mut op = Self::zero(&space);
        op.add_term(idx, c);
        op
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn space_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.order()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&DerivIdx, &RingElement)> {
        self.terms.iter()
    }

    fn add_term(&mut self, idx: DerivIdx, c: RingElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Multiply every coefficient by an exact scalar.
    pub fn scale(&self, s: &ScalarExact) -> Self {
        if s.is_zero() {
            return Self::zero(&self.space);
        }
        Self {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.mul_scalar(s)))
                .collect(),
        }
    }

    /// Left-multiply by a ring element: M_c ∘ A.
    pub fn mul_coeff_left(&self, c: &RingElement) -> Self {
        let mut out = Self::zero(&self.space);
        for (k, coeff) in &self.terms {
            out.add_term(k.clone(), c * coeff);
        }
        out
    }

    /// Composition A∘B: exact Leibniz expansion, relations reduced.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert!(self.space_eq(rhs), "operators from different spaces");
        let mut out = Self::zero(&self.space);
        for (alpha, c_a) in &self.terms {
            for (beta, c_b) in &rhs.terms {
                for gamma in sub_indices(alpha) {
                    // ∂^{α−γ} c_b
                    let mut der = c_b.clone();
                    let rem = alpha.sub(&gamma);
                    for (axis, &k) in rem.0.iter().enumerate() {
                        for _ in 0..k {
                            der = der.derivative(GenId(axis));
                        }
                        if der.is_zero() {
                            break;
                        }
                    }
                    if der.is_zero() {
                        continue;
                    }
                    let coeff = (c_a * &der).mul_scalar(&multi_binomial(alpha, &gamma));
                    out.add_term(gamma.add(beta), coeff);
                }
            }
        }
        out
    }

    /// Commutator [A, B] = A∘B − B∘A.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// A^n by repeated composition.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(&self.space);
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// Coefficient-wise complex conjugation (i → −i); derivative structure
    /// unchanged.
    pub fn conjugate(&self) -> Self {
        Self {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.conj()))
                .collect(),
        }
    }

    /// Formal adjoint under ∫ f̄ (A g) w dV with the given weight: each term
    /// contributes (−1)^{|α|} ∂^α ∘ M_{c̄_α}, then the weight conjugates the
    /// derivatives (∂ₖ ↦ ∂ₖ + ∂ₖ(log w)). Boundary terms are assumed to
    /// vanish on the exponentially weighted symbol class.
    pub fn adjoint(&self, measure: &Measure) -> Self {
        let mut flat = Self::zero(&self.space);
        for (alpha, c) in &self.terms {
            let sign = if alpha.order() % 2 == 0 {
                ScalarExact::one()
            } else {
                -ScalarExact::one()
            };
            let pure = Self::term(RingElement::one(&self.space), alpha.clone());
            let m = Self::mult(c.conj().mul_scalar(&sign));
            flat = &flat + &pure.compose(&m);
        }
        match measure {
            Measure::Flat => flat,
            _ => flat.conjugate_derivatives(measure),
        }
    }

    /// Replace ∂^α by Π (∂ₖ + vₖ)^{αₖ} where vₖ = ∂ₖ(log w). The shifted
    /// first-order factors commute for both weight families, so the
    /// composition order is immaterial.
    fn conjugate_derivatives(&self, measure: &Measure) -> Self {
        let shift = |g: GenId| -> Option<RingElement> {
            match measure {
                Measure::Flat => None,
                Measure::ExpRadial { radial, a } => {
                    assert!(a.conj() == *a, "weight exponent must be real");
                    let block = self.space.block_of(*radial);
                    let b = &self.space.blocks()[block];
                    b.members().any(|m| m == g).then(|| {
                        RingElement::gen(&self.space, g)
                            .mul_gen_pow(*radial, -2)
                            .mul_scalar(a)
                    })
                }
                Measure::ExpGaussSquare { block, w } => {
                    assert!(w.conj() == *w, "weight exponent must be real");
                    let b = &self.space.blocks()[*block];
                    b.members().any(|m| m == g).then(|| {
                        RingElement::gen(&self.space, g)
                            .mul_scalar(&(w + w))
                    })
                }
            }
        };
        let mut out = Self::zero(&self.space);
        for (alpha, c) in &self.terms {
            let mut acc = Self::mult(c.clone());
            for (axis, &k) in alpha.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let g = GenId(axis);
                let factor = match shift(g) {
                    Some(v) => &Self::partial(&self.space, g) + &Self::mult(v),
                    None => Self::partial(&self.space, g),
                };
                for _ in 0..k {
                    acc = acc.compose(&factor);
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Retain the ħ⁰ part of every coefficient; error if any coefficient
    /// still carries a negative ħ power.
    pub fn classical_limit(&self) -> Result<Self, String> {
        let mut out = Self::zero(&self.space);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.hbar_constant_part()?);
        }
        Ok(out)
    }

    /// Apply to a plain ring element (no exponential weight).
    pub fn apply_poly(&self, f: &RingElement) -> RingElement {
        let mut out = RingElement::zero(&self.space);
        for (alpha, c) in &self.terms {
            let mut der = f.clone();
            for (axis, &k) in alpha.0.iter().enumerate() {
                for _ in 0..k {
                    der = der.derivative(GenId(axis));
                }
                if der.is_zero() {
                    break;
                }
            }
            out = out + (c * &der);
        }
        out
    }
}

impl std::ops::Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: Self) -> DiffOp {
        assert!(self.space_eq(rhs), "operators from different spaces");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: Self) -> DiffOp {
        assert!(self.space_eq(rhs), "operators from different spaces");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.map_coeffs(|s| -s.clone()));
        }
        out
    }
}

impl std::ops::Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.map_coeffs(|s| -s.clone())))
                .collect(),
        }
    }
}

impl std::ops::Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: Self) -> DiffOp {
        &self + &rhs
    }
}

impl std::ops::Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: Self) -> DiffOp {
        &self - &rhs
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (idx, c) in &self.terms {
            let mut d = String::new();
            for (i, &k) in idx.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = self.space.name(GenId(i));
                if k == 1 {
                    d.push_str(&format!("∂{name} "));
                } else {
                    d.push_str(&format!("∂{name}^{k} "));
                }
            }
            let d = d.trim_end();
            if d.is_empty() {
                parts.push(format!("[{c}]"));
            } else {
                parts.push(format!("[{c}] {d}"));
            }
        }
        write!(f, "{}", parts.join("  +  "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exponent data for serialization: `(monomial exponents, coefficient)`.
pub fn diffop_from_terms<I>(space: &Arc<VariableSpace>, it: I) -> DiffOp
where
    I: IntoIterator<Item = (DerivIdx, Vec<(Monomial, ScalarExact)>)>,
{
    let mut op = DiffOp::zero(space);
    for (idx, terms) in it {
        op.add_term(idx, RingElement::from_terms(space, terms));
    }
    op
}
