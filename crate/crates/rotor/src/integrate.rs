//! Exact integration of weighted polynomial symbols.
//!
//! Every integral this crate needs factorizes per block into an angular
//! moment over a unit sphere and a radial Γ-type moment:
//!
//! ```text
//!   ∫_{S^{d−1}} Π xᵢ^{aᵢ} dω = 2 Π Γ((aᵢ+1)/2) / Γ((Σaᵢ+d)/2)   (all aᵢ even)
//!   ∫₀^∞ R^p e^{aR}  dR = Γ(p+1)·(−a)^{−(p+1)}                   (Re a < 0)
//!   ∫₀^∞ R^p e^{wR²} dR = ½·Γ((p+1)/2)·(−w)^{−(p+1)/2}           (Re w < 0)
//! ```
//!
//! with Γ at half-integer arguments exact (rational × √π). All values stay
//! in [`ScalarExact`].

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::error::AlgebraError;
use crate::scalar::ScalarExact;
use crate::special::gamma_half_exact;
use crate::symbol::{Weight, WeylSymbol};

/// How one block of the variable space is integrated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockDomain {
    /// Lebesgue integral over ℝ^m in the block's Cartesian coordinates;
    /// requires a decaying exponential weight on the block.
    FullSpace,
    /// Integral over the unit sphere: the block's radial value is fixed to 1
    /// and Cartesian monomials are replaced by their sphere moments. No
    /// weight may be attached to the block.
    UnitSphere,
}

/// Which blocks to integrate. Blocks not mentioned must not occur in the
/// integrand.
#[derive(Clone, Default, Debug)]
pub struct Domain {
    blocks: BTreeMap<usize, BlockDomain>,
}

impl Domain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn full_space(mut self, block: usize) -> Self {
        self.blocks.insert(block, BlockDomain::FullSpace);
        self
    }

    pub fn unit_sphere(mut self, block: usize) -> Self {
        self.blocks.insert(block, BlockDomain::UnitSphere);
        self
    }
}

/// Moment of a monomial over the unit sphere S^{d−1}; exact zero for odd
/// exponents.
pub fn sphere_moment(exps: &[i32]) -> ScalarExact {
    if exps.iter().any(|&a| a % 2 != 0) {
        return ScalarExact::zero();
    }
    let d = exps.len() as i64;
    let total: i64 = exps.iter().map(|&a| a as i64).sum();
    let mut num = ScalarExact::integer(2);
    for &a in exps {
        num = num * gamma_half_exact(a as i64 + 1);
    }
    num.div_single(&gamma_half_exact(total + d))
}

/// Check a weight exponent is a strictly negative real single term and
/// return −a.
fn neg_of_weight(a: &ScalarExact, what: &str) -> Result<ScalarExact, AlgebraError> {
    let (c, _, _, _) = a
        .as_single_term()
        .ok_or_else(|| AlgebraError::NotIntegrable(format!("{what}: multi-term exponent")))?;
    if !c.im.is_zero() || !c.re.is_negative() {
        return Err(AlgebraError::NotIntegrable(format!(
            "{what}: weight exponent {a} is not negative real"
        )));
    }
    Ok(-a.clone())
}

/// Exact integral of a weighted symbol over the given domain.
///
/// Errors: a `FullSpace` block without a decaying weight, a `UnitSphere`
/// block with a weight, generators outside the domain, a radial power too
/// singular at the origin, or exponent arithmetic leaving the exact class.
pub fn integrate_exact(f: &WeylSymbol, domain: &Domain) -> Result<ScalarExact, AlgebraError> {
    let space = f.space();
    // Weights on non-integrated blocks are an error.
    for (&blk, _) in f.weights() {
        match domain.blocks.get(&blk) {
            Some(BlockDomain::FullSpace) => {}
            Some(BlockDomain::UnitSphere) => {
                return Err(AlgebraError::Domain(format!(
                    "block {blk}: sphere integration admits no weight"
                )))
            }
            None => {
                return Err(AlgebraError::Domain(format!(
                    "block {blk} carries a weight but is not integrated"
                )))
            }
        }
    }
    let mut acc = ScalarExact::zero();
    'terms: for (mono, coeff) in f.body().iter_terms() {
        let mut term = coeff.clone();
        for (blk_idx, block) in space.blocks().iter().enumerate() {
            let cart: Vec<i32> = block.members().map(|g| mono.0[g.0]).collect();
            let radial_half = block.radial().map(|r| mono.0[r.0]).unwrap_or(0);
            match domain.blocks.get(&blk_idx) {
                None => {
                    if cart.iter().any(|&a| a != 0) || radial_half != 0 {
                        return Err(AlgebraError::Domain(format!(
                            "free generators of block {blk_idx} remain in the integrand"
                        )));
                    }
                }
                Some(BlockDomain::UnitSphere) => {
                    let m = sphere_moment(&cart);
                    if m.is_zero() {
                        continue 'terms;
                    }
                    term = term * m;
                }
                Some(BlockDomain::FullSpace) => {
                    let m_dim = cart.len() as i64;
                    let angular = sphere_moment(&cart);
                    if angular.is_zero() {
                        continue 'terms;
                    }
                    // Radial power in half-units: Σ cart + radial + (m−1).
                    let p_half: i64 = 2 * cart.iter().map(|&a| a as i64).sum::<i64>()
                        + radial_half as i64
                        + 2 * (m_dim - 1);
                    let radial = match f.weight_on(blk_idx) {
                        Some(Weight::ExpRadial(a)) => {
                            let neg_a = neg_of_weight(a, "radial weight")?;
                            if p_half <= -2 {
                                return Err(AlgebraError::Domain(format!(
                                    "radial power {p_half}/2 too singular at the origin"
                                )));
                            }
                            // Γ(p+1)·(−a)^{−(p+1)},  p = p_half/2.
                            gamma_half_exact(p_half + 2)
                                * neg_a.pow_half(-(p_half as i32 + 2))
                        }
                        Some(Weight::ExpGaussSquare(w)) => {
                            let neg_w = neg_of_weight(w, "Gaussian weight")?;
                            if p_half <= -2 {
                                return Err(AlgebraError::Domain(format!(
                                    "radial power {p_half}/2 too singular at the origin"
                                )));
                            }
                            if p_half % 2 != 0 {
                                return Err(AlgebraError::Domain(
                                    "Gaussian radial moment at quarter-integer Γ argument"
                                        .into(),
                                ));
                            }
                            let p = p_half / 2;
                            gamma_half_exact(p + 1)
                                * ScalarExact::rational(crate::scalar::rat(1, 2))
                                * neg_w.pow_half(-(p as i32 + 1))
                        }
                        None => {
                            return Err(AlgebraError::NotIntegrable(format!(
                                "block {blk_idx} integrated over ℝ^{m_dim} without a weight"
                            )))
                        }
                    };
                    term = term * angular * radial;
                }
            }
        }
        acc += term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{gauss_hermite, sphere_s2};
    use crate::ring::{GenId, RingElement, SpaceBuilder, VariableSpace};
    use crate::scalar::rat;
    use std::sync::Arc;

    fn euler_space() -> (Arc<VariableSpace>, Vec<GenId>, GenId) {
        let mut b = SpaceBuilder::new();
        let (ls, s) = b.block_with_radial(&["L1", "L2", "L3"], "S");
        (b.build(), ls, s)
    }

    #[test]
    fn sphere_moments_match_quadrature() {
        let rule = sphere_s2(10);
        for exps in [[0, 0, 0], [2, 0, 0], [0, 2, 2], [4, 2, 0], [1, 0, 0], [3, 1, 2]] {
            let exact = sphere_moment(&exps).to_f64_real(1.0);
            let num: f64 = rule
                .iter()
                .map(|&(n, w)| {
                    w * n[0].powi(exps[0]) * n[1].powi(exps[1]) * n[2].powi(exps[2])
                })
                .sum();
            assert!(
                (exact - num).abs() < 1e-10 * (1.0 + exact.abs()),
                "{exps:?}: {exact} vs {num}"
            );
        }
    }

    #[test]
    fn ground_state_norm_integral_is_one() {
        // ∫_{ℝ³} 16/(ħ²πL) · e^{−8L/ħ} d³L = 1: the |ρ̃|² normalization check.
        let (sp, _, s) = euler_space();
        let body = RingElement::gen_pow_half(&sp, s, -2).mul_scalar(
            &(ScalarExact::integer(16)
                * ScalarExact::hbar_pow(-2)
                * ScalarExact::pi_pow_half(-2)),
        );
        let w = ScalarExact::integer(-8) * ScalarExact::hbar_pow(-1);
        let f = crate::symbol::WeylSymbol::new(body)
            .with_weight(0, Weight::ExpRadial(w));
        let v = integrate_exact(&f, &Domain::new().full_space(0)).unwrap();
        assert!(v.is_one(), "got {v}");
    }

    #[test]
    fn odd_sphere_monomial_is_zero_not_error() {
        let (sp, ls, _) = euler_space();
        let f = crate::symbol::WeylSymbol::new(RingElement::gen(&sp, ls[0]));
        let v = integrate_exact(&f, &Domain::new().unit_sphere(0)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn one_dimensional_gaussian() {
        // ∫ e^{−x²} dx = √π as a 1-member block.
        let mut b = SpaceBuilder::new();
        let _ = b.block_with_radial(&["X"], "RX");
        let sp = b.build();
        let f = crate::symbol::WeylSymbol::new(RingElement::one(&sp))
            .with_weight(0, Weight::ExpGaussSquare(ScalarExact::integer(-1)));
        let v = integrate_exact(&f, &Domain::new().full_space(0)).unwrap();
        assert_eq!(v, ScalarExact::pi_pow_half(1));
    }

    #[test]
    fn unweighted_full_space_is_error() {
        let (sp, _, _) = euler_space();
        let f = crate::symbol::WeylSymbol::new(RingElement::one(&sp));
        assert!(matches!(
            integrate_exact(&f, &Domain::new().full_space(0)),
            Err(AlgebraError::NotIntegrable(_))
        ));
    }

    #[test]
    fn leftover_generator_is_error() {
        let mut b = SpaceBuilder::new();
        let (_, _) = b.block_with_radial(&["L1", "L2", "L3"], "S");
        let extra = b.block_plain(&["K"]);
        let sp = b.build();
        let f = crate::symbol::WeylSymbol::new(RingElement::gen(&sp, extra[0]))
            .with_weight(0, Weight::ExpRadial(ScalarExact::integer(-1)));
        assert!(matches!(
            integrate_exact(&f, &Domain::new().full_space(0)),
            Err(AlgebraError::Domain(_))
        ));
    }

    #[test]
    fn gaussian_4d_matches_tensor_hermite() {
        // Random-ish polynomial × e^{−½ΣΛ²} over ℝ⁴ against tensor
        // Gauss–Hermite (substitution Λ = √2·y).
        let mut b = SpaceBuilder::new();
        let (lam, r) = b.block_with_radial(&["A0", "A1", "A2", "A3"], "R");
        let sp = b.build();
        let body = RingElement::gen_pow(&sp, lam[0], 2)
            + RingElement::gen_pow(&sp, lam[1], 1) * RingElement::gen_pow(&sp, lam[3], 1)
            + RingElement::gen_pow_half(&sp, r, 4).mul_scalar(&ScalarExact::rational(rat(1, 3)));
        let f = crate::symbol::WeylSymbol::new(body.clone()).with_weight(
            0,
            Weight::ExpGaussSquare(ScalarExact::rational(rat(-1, 2))),
        );
        let exact = integrate_exact(&f, &Domain::new().full_space(0))
            .unwrap()
            .to_f64_real(1.0);
        let rule = gauss_hermite(12);
        let s2 = 2f64.sqrt();
        let mut num = 0.0;
        for &(y0, w0) in &rule {
            for &(y1, w1) in &rule {
                for &(y2, w2) in &rule {
                    for &(y3, w3) in &rule {
                        let pt = [s2 * y0, s2 * y1, s2 * y2, s2 * y3, 0.0];
                        let v = body.eval_c64(&pt, 1.0).re;
                        num += w0 * w1 * w2 * w3 * v * 4.0; // Jacobian (√2)⁴
                    }
                }
            }
        }
        assert!(
            (exact - num).abs() < 1e-9 * (1.0 + exact.abs()),
            "{exact} vs {num}"
        );
    }

    #[test]
    fn random_radial_symbols_match_numeric_quadrature() {
        // Spec-level cross-check: exact integrals vs an independent numeric
        // route (sphere product rule × adaptive radial quadrature) for a
        // batch of randomized integrable symbols.
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x524f544f52);
        let (sp, ls, s) = euler_space();
        let rule = sphere_s2(14);
        let hbar = 1.0;
        for trial in 0..20 {
            // Random body: up to 3 monomials with radial half-powers ≥ −1.
            let mut body = RingElement::zero(&sp);
            for _ in 0..rng.random_range(1..4) {
                let a = rng.random_range(0..3u32);
                let b = rng.random_range(0..2u32);
                let c = rng.random_range(0..2u32);
                let h = rng.random_range(-1..4i32);
                let q = rat(rng.random_range(-9..10i64), rng.random_range(1..7i64));
                let mono = RingElement::gen_pow(&sp, ls[0], a)
                    * RingElement::gen_pow(&sp, ls[1], b)
                    * RingElement::gen_pow(&sp, ls[2], c);
                body = body + mono.mul_gen_pow(s, h).mul_scalar(&ScalarExact::rational(q));
            }
            if body.is_zero() {
                continue;
            }
            let aw = rat(-rng.random_range(1..5i64), rng.random_range(1..3i64));
            let f = crate::symbol::WeylSymbol::new(body.clone())
                .with_weight(0, Weight::ExpRadial(ScalarExact::rational(aw.clone())));
            let exact = integrate_exact(&f, &Domain::new().full_space(0))
                .unwrap()
                .to_f64_real(hbar);
            // Numeric: Σ_sphere w · ∫₀^∞ body(R·n̂)e^{aR} R² dR via adaptive
            // sampling on a truncated interval.
            let a_f = aw.numer().to_string().parse::<f64>().unwrap()
                / aw.denom().to_string().parse::<f64>().unwrap();
            let r_max = 120.0 / (-a_f);
            let mut num = 0.0;
            for &(n, w) in &rule {
                let g = |r: f64| {
                    if r == 0.0 {
                        // R² beats every admissible radial half-power.
                        return 0.0;
                    }
                    let pt = [r * n[0], r * n[1], r * n[2], 0.0];
                    body.eval_c64(&pt, hbar).re * (a_f * r).exp() * r * r
                };
                // Composite Simpson with graded mesh toward 0 (integrand may
                // behave like √R there).
                let mut acc = 0.0;
                let steps = 4000;
                for i in 0..steps {
                    let t0 = i as f64 / steps as f64;
                    let t1 = (i + 1) as f64 / steps as f64;
                    // Quadratic grading resolves the origin.
                    let (x0, x1) = (r_max * t0 * t0, r_max * t1 * t1);
                    let xm = 0.5 * (x0 + x1);
                    acc += (x1 - x0) / 6.0 * (g(x0) + 4.0 * g(xm) + g(x1));
                }
                num += w * acc;
            }
            let scale = 1.0 + exact.abs().max(num.abs());
            assert!(
                (exact - num).abs() < 1e-8 * scale,
                "trial {trial}: exact {exact} vs numeric {num}"
            );
        }
    }
}
