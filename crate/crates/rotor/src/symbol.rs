//! Weighted phase-space symbols and exact operator application.
//!
//! A [`WeylSymbol`] is `body × Π_blocks weight` where the body is a
//! [`RingElement`] and each weight is an exponential attached to one block
//! of the variable space: either e^{a·R} on the block's radial generator or
//! a Gaussian e^{w·Σg²} over the block's Cartesian generators. The class is
//! closed under differentiation (∂ₖ e^{aR} = a·(gₖ/R)·e^{aR}, ∂ₖ e^{wΣg²} =
//! 2w·gₖ·e^{wΣg²}), under products (weights add), and under multiplication
//! by ring elements — exactly what repeated application of Bopp-type
//! differential operators produces.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::diffop::DiffOp;
use crate::ring::{GenId, RingElement, VariableSpace};
use crate::scalar::ScalarExact;

/// Exponential weight attached to one block.
#[derive(Clone, PartialEq, Debug)]
pub enum Weight {
    /// e^{a·R} with R the block's radial generator; `a` is real and may
    /// carry ħ powers (e.g. −4/ħ).
    ExpRadial(ScalarExact),
    /// e^{w·Σ g²} over the block's Cartesian generators; `w` real.
    ExpGaussSquare(ScalarExact),
}

impl Weight {
    fn assert_real(&self) {
        let (Weight::ExpRadial(a) | Weight::ExpGaussSquare(a)) = self;
        assert!(a.conj() == *a, "weight exponent must be real");
    }

    fn combine(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::ExpRadial(a), Weight::ExpRadial(b)) => Weight::ExpRadial(a + b),
            (Weight::ExpGaussSquare(a), Weight::ExpGaussSquare(b)) => {
                Weight::ExpGaussSquare(a + b)
            }
            _ => panic!("cannot combine radial and Gaussian weights on one block"),
        }
    }
}

/// `body × Π weights`, the closed symbol class.
#[derive(Clone, PartialEq, Debug)]
pub struct WeylSymbol {
    weights: BTreeMap<usize, Weight>,
    body: RingElement,
}

impl WeylSymbol {
    /// A weightless symbol.
    pub fn new(body: RingElement) -> Self {
        Self {
            weights: BTreeMap::new(),
            body,
        }
    }

    /// Attach (or merge) a weight on a block.
    pub fn with_weight(mut self, block: usize, w: Weight) -> Self {
        w.assert_real();
        if let Weight::ExpRadial(_) = w {
            assert!(
                self.space().blocks()[block].radial().is_some(),
                "radial weight needs a radial generator"
            );
        }
        match self.weights.remove(&block) {
            None => {
                self.weights.insert(block, w);
            }
            Some(prev) => {
                self.weights.insert(block, prev.combine(&w));
            }
        }
        self
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        self.body.space()
    }

    pub fn body(&self) -> &RingElement {
        &self.body
    }

    pub fn weights(&self) -> &BTreeMap<usize, Weight> {
        &self.weights
    }

    pub fn weight_on(&self, block: usize) -> Option<&Weight> {
        self.weights.get(&block)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Whether both symbols carry identical weights on every block.
    pub fn same_weights(&self, other: &Self) -> bool {
        self.weights == other.weights
    }

    /// Replace the body, keeping weights.
    pub fn map_body(&self, f: impl FnOnce(&RingElement) -> RingElement) -> Self {
        Self {
            weights: self.weights.clone(),
            body: f(&self.body),
        }
    }

    /// Multiply by a ring element.
    pub fn mul_ring(&self, c: &RingElement) -> Self {
        self.map_body(|b| b * c)
    }

    /// Multiply by an exact scalar.
    pub fn mul_scalar(&self, s: &ScalarExact) -> Self {
        self.map_body(|b| b.mul_scalar(s))
    }

    /// Complex conjugation (weights are real by construction).
    pub fn conj(&self) -> Self {
        self.map_body(|b| b.conj())
    }

    /// Product of two symbols: bodies multiply, weights add per block.
    pub fn mul_symbol(&self, other: &Self) -> Self {
        assert!(self.body.space_eq(&other.body), "symbols from different spaces");
        let mut weights = self.weights.clone();
        for (&blk, w) in &other.weights {
            match weights.remove(&blk) {
                None => {
                    weights.insert(blk, w.clone());
                }
                Some(prev) => {
                    weights.insert(blk, prev.combine(w));
                }
            }
        }
        Self {
            weights,
            body: &self.body * &other.body,
        }
    }

    /// Exact derivative, including weight differentiation.
    pub fn derivative(&self, g: GenId) -> Self {
        let space = Arc::clone(self.space());
        let blk = space.block_of(g);
        let mut body = self.body.derivative(g);
        if let Some(w) = self.weights.get(&blk) {
            let dlog = match w {
                Weight::ExpRadial(a) => {
                    let radial = space.blocks()[blk]
                        .radial()
                        .expect("radial weight has radial generator");
                    RingElement::gen(&space, g)
                        .mul_gen_pow(radial, -2)
                        .mul_scalar(a)
                }
                Weight::ExpGaussSquare(w) => {
                    RingElement::gen(&space, g).mul_scalar(&(w + w))
                }
            };
            body = body + &self.body * &dlog;
        }
        Self {
            weights: self.weights.clone(),
            body,
        }
    }

    /// Evaluate at a numeric point (Cartesian coordinates; radial values are
    /// recomputed).
    pub fn eval_c64(&self, point: &[f64], hbar: f64) -> num::Complex<f64> {
        let space = self.space();
        let mut v = self.body.eval_c64(point, hbar);
        for (&blk, w) in &self.weights {
            let b = &space.blocks()[blk];
            let sq: f64 = b.members().map(|g| point[g.0] * point[g.0]).sum();
            let arg = match w {
                Weight::ExpRadial(a) => a.to_f64_real(hbar) * sq.sqrt(),
                Weight::ExpGaussSquare(we) => we.to_f64_real(hbar) * sq,
            };
            v *= arg.exp();
        }
        v
    }
}

impl std::ops::Add for &WeylSymbol {
    type Output = WeylSymbol;
    fn add(self, rhs: Self) -> WeylSymbol {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert!(
            self.same_weights(rhs),
            "cannot add symbols with different weights"
        );
        WeylSymbol {
            weights: self.weights.clone(),
            body: &self.body + &rhs.body,
        }
    }
}

impl std::ops::Add for WeylSymbol {
    type Output = WeylSymbol;
    fn add(self, rhs: Self) -> WeylSymbol {
        &self + &rhs
    }
}

impl std::ops::Sub for &WeylSymbol {
    type Output = WeylSymbol;
    fn sub(self, rhs: Self) -> WeylSymbol {
        self + &rhs.mul_scalar(&-ScalarExact::one())
    }
}

impl std::ops::Sub for WeylSymbol {
    type Output = WeylSymbol;
    fn sub(self, rhs: Self) -> WeylSymbol {
        &self - &rhs
    }
}

impl fmt::Display for WeylSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.body)?;
        for (&blk, w) in &self.weights {
            let b = &self.space().blocks()[blk];
            match w {
                Weight::ExpRadial(a) => {
                    let r = b.radial().expect("radial weight has radial generator");
                    write!(f, " * exp(({})*{})", a, self.space().name(r))?;
                }
                Weight::ExpGaussSquare(we) => {
                    let names: Vec<_> = b
                        .members()
                        .map(|g| format!("{}^2", self.space().name(g)))
                        .collect();
                    write!(f, " * exp(({})*({}))", we, names.join("+"))?;
                }
            }
        }
        Ok(())
    }
}

/// Apply a differential operator to a symbol exactly.
pub fn op_apply(op: &DiffOp, f: &WeylSymbol) -> WeylSymbol {
    assert!(
        op.space().as_ref() == f.space().as_ref(),
        "operator and symbol from different spaces"
    );
    let mut out = WeylSymbol {
        weights: f.weights.clone(),
        body: RingElement::zero(f.space()),
    };
    for (alpha, c) in op.iter_terms() {
        let mut g = f.clone();
        for (axis, &k) in alpha.0.iter().enumerate() {
            for _ in 0..k {
                g = g.derivative(GenId(axis));
            }
            if g.is_zero() {
                break;
            }
        }
        out = &out + &g.mul_ring(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SpaceBuilder;
    use crate::scalar::rat;

    fn euler_space() -> (Arc<VariableSpace>, Vec<GenId>, GenId) {
        let mut b = SpaceBuilder::new();
        let (ls, s) = b.block_with_radial(&["L1", "L2", "L3"], "S");
        (b.build(), ls, s)
    }

    /// Weight a = −4/ħ as in the ground-state symbols.
    fn minus_four_over_hbar() -> ScalarExact {
        ScalarExact::integer(-4) * ScalarExact::hbar_pow(-1)
    }

    #[test]
    fn weight_derivative_matches_chain_rule() {
        let (sp, ls, _) = euler_space();
        // ∂/∂L₃ e^{−4S/ħ} = −(4/ħ)(L₃/S) e^{−4S/ħ}
        let f = WeylSymbol::new(RingElement::one(&sp))
            .with_weight(0, Weight::ExpRadial(minus_four_over_hbar()));
        let d = f.derivative(ls[2]);
        assert_eq!(d.weights(), f.weights());
        let s = sp.gen_by_name("S").unwrap();
        let expected = RingElement::gen(&sp, ls[2])
            .mul_gen_pow(s, -2)
            .mul_scalar(&minus_four_over_hbar());
        assert_eq!(*d.body(), expected);
    }

    #[test]
    fn gaussian_weight_derivative() {
        let mut b = SpaceBuilder::new();
        let (lam, _r) = b.block_with_radial(&["X0", "X1", "X2", "X3"], "R");
        let sp = b.build();
        let w = ScalarExact::rational(rat(-1, 2));
        let f = WeylSymbol::new(RingElement::one(&sp))
            .with_weight(0, Weight::ExpGaussSquare(w.clone()));
        let d = f.derivative(lam[1]);
        let expected = RingElement::gen(&sp, lam[1]).mul_scalar(&(&w + &w));
        assert_eq!(*d.body(), expected);
    }

    #[test]
    fn op_apply_identity_and_numeric_cross_check() {
        let (sp, ls, s) = euler_space();
        let f = WeylSymbol::new(
            RingElement::gen(&sp, ls[0]) + RingElement::gen_pow_half(&sp, s, 2),
        )
        .with_weight(0, Weight::ExpRadial(ScalarExact::integer(-2)));
        assert_eq!(op_apply(&DiffOp::identity(&sp), &f), f);

        // (∂₁² + L₂∂₃) f against central finite differences.
        let op = &DiffOp::partial(&sp, ls[0]).pow(2)
            + &DiffOp::partial(&sp, ls[2]).mul_coeff_left(&RingElement::gen(&sp, ls[1]));
        let g = op_apply(&op, &f);
        let pt = [0.8, -0.5, 0.9, 0.0];
        let hbar = 1.0;
        let fe = |x: f64, y: f64, z: f64| {
            let s = (x * x + y * y + z * z).sqrt();
            (x + s) * (-2.0 * s).exp()
        };
        let e = 1e-4;
        let d11 = (fe(pt[0] + e, pt[1], pt[2]) - 2.0 * fe(pt[0], pt[1], pt[2])
            + fe(pt[0] - e, pt[1], pt[2]))
            / (e * e);
        let d3 = (fe(pt[0], pt[1], pt[2] + e) - fe(pt[0], pt[1], pt[2] - e)) / (2.0 * e);
        let numeric = d11 + pt[1] * d3;
        let sym = g.eval_c64(&pt, hbar);
        assert!((sym.re - numeric).abs() < 1e-6, "{} vs {}", sym.re, numeric);
    }

    #[test]
    fn products_add_weights() {
        let (sp, _, _) = euler_space();
        let a = WeylSymbol::new(RingElement::one(&sp))
            .with_weight(0, Weight::ExpRadial(ScalarExact::integer(-1)));
        let b = WeylSymbol::new(RingElement::one(&sp))
            .with_weight(0, Weight::ExpRadial(ScalarExact::integer(-3)));
        let p = a.mul_symbol(&b);
        assert_eq!(
            p.weight_on(0),
            Some(&Weight::ExpRadial(ScalarExact::integer(-4)))
        );
    }
}
