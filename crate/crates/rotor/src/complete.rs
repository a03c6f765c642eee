//! The full quantizer on the six-dimensional orientation phase space.
//!
//! Where [`crate::euler`] works on body momenta alone, this module carries
//! the complete chart: a quaternion-valued configuration block Λ = (Λ₀..Λ₃)
//! with radial norm T (T² = ΣΛ²), the lab angular-momentum block
//! L′ = (L′₁,L′₂,L′₃) with radius S (S² = ΣL′²), and two residual angle
//! variables for the evolution generator of the symmetric top. Throughout,
//! the momentum direction enters only as the unit vector n = L′/S, so every
//! operator coefficient lives in the quotient ring generated by
//! {Λ, T, L′, S} and the effective phase space is six-dimensional.
//!
//! The operator dictionary is split into two families:
//!
//! - the **A family** ([`CompleteRep::bopp_a`]) acts on the quaternion chart
//!   {λ, L′} by momentum shifts: multiplication by λ plus first-order ∂_{L′}
//!   corrections, with images of body momenta, quaternion components, and
//!   the norm operator;
//! - the **B family** ([`CompleteRep::bopp_b`]) acts on the orientation
//!   chart {Λ, n, L′}: second-order images of body and lab angular momenta,
//!   the orbital-number operator l̂, and Schwinger-type ladder pairs.
//!
//! The central structural facts, all verified exactly in the tests:
//!
//! ```text
//! [L̂ᵢ, L̂ⱼ]  = −iħ εᵢⱼₖ L̂ₖ        [L̂′ᵢ, L̂′ⱼ] = +iħ εᵢⱼₖ L̂′ₖ
//! [L̂ᵢ, L̂′ⱼ] = 0                   Σ L̂ₖ² = Σ L̂′ₖ² = l̂(l̂ + ħ)
//! ```
//!
//! Basis blocks are indexed by half-integers (l, m, k) with m the lab and
//! k the body magnetic number. The identity-block symbols are Laguerre
//! polynomials in T² under the Gaussian weight e^{−T²/2}; general basis
//! symbols are produced from the ground block by compound half-step raising
//! operators ([`CompleteRep::compound_ladder`]) whose spectral prefactors
//! √(2l̂/ħ + 1 + 1)^{±1} are applied exactly after a finite eigen-content
//! decomposition against l̂. Quaternion-component multiplication operators
//! ([`CompleteRep::quaternion_image`]) are phase-weighted sums of the four
//! half-step channels sandwiched between diagonal normalizers, and reduce
//! to multiplication by λ in the classical scaling limit
//! ([`CompleteRep::classical_leading`]) where Λ ~ √(8L′/ħ)·λ on the unit
//! shell.
//!
//! Pairings use the weighted surface integral
//!
//! ```text
//! (f, g) = ħ⁻² ∫ dΛ ∮_{|n|=1} dn  conj(f) g,
//! ```
//!
//! whose value is independent of the momentum-shell radius exactly when the
//! integrand is homogeneous of degree zero in L′; the implementation checks
//! that admissibility on every call. The matrix ↔ symbol maps
//! ([`CompleteRep::weyl_dir_full`], [`CompleteRep::weyl_rev_full`]) are
//! exact on finite orbital content, and a ⋆-variant
//! ([`CompleteRep::star_variant`]) turns the total identity into the
//! constant symbol 1.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::diffop::{DerivIdx, DiffOp, Measure};
use crate::error::{AlgebraError, RepError};
use crate::integrate::{integrate_exact, Domain};
use crate::quat::{
    dcm, qconj, qmul, quaternion_from_rotation, InertiaTensor, MQTensor, QTensor, Quaternion,
    RotationMatrix,
};
use crate::ring::{GenId, Monomial, RingElement, SpaceBuilder, VariableSpace};
use crate::scalar::{crat, rat, Rat, ScalarExact};
use crate::special::{factorial, laguerre_coeffs};
use crate::symbol::{op_apply, Weight, WeylSymbol};

/// Structure constants of the quaternion product, `mq.get(k, i, j)` being
/// the k-th component of eᵢ∗eⱼ.
fn mq(k: usize, i: usize, j: usize) -> i64 {
    MQTensor::standard().get(k, i, j) as i64
}

/// Quadratic rotation-matrix coefficients Qᵢⱼ = Σ qc(i,j,m,n) λₘλₙ, with
/// axes i, j ∈ 1..=3.
fn qc(i: usize, j: usize, m: usize, n: usize) -> i64 {
    QTensor::standard().get(i - 1, j - 1, m, n) as i64
}

/// Component signature (+1, −1, −1, +1) distinguishing the scalar/third
/// quaternion axes from the first/second.
fn sig(n: usize) -> i64 {
    let n = n as i64;
    1 - (3 - n) * n
}

fn kd(a: i64, b: i64) -> i64 {
    i64::from(a == b)
}

/// Real rational scalar n/d.
fn sc(n: i64, d: i64) -> ScalarExact {
    ScalarExact::rational(rat(n, d))
}

/// Imaginary rational scalar i·n/d.
fn sci(n: i64, d: i64) -> ScalarExact {
    ScalarExact::from_crat(crat(rat(0, 1), rat(n, d)))
}

/// Integer power of the imaginary unit, iᵏ for any sign of k.
fn i_pow(k: i64) -> ScalarExact {
    match k.rem_euclid(4) {
        0 => ScalarExact::one(),
        1 => ScalarExact::i(),
        2 => -ScalarExact::one(),
        _ => -ScalarExact::i(),
    }
}

/// e^{±iπ/4} = (1 ± i)/√2.
fn phase_pi4(sign: i64) -> ScalarExact {
    ScalarExact::term(crat(rat(1, 2), rat(sign.signum(), 2)), 0, 0, 2)
}

/// Which half of a ±1-valued channel index, as an array position.
fn pm_idx(v: i64) -> usize {
    usize::from(v < 0)
}

// ---------------------------------------------------------------------------
// charts
// ---------------------------------------------------------------------------

/// The orientation chart {Λ₀..Λ₃, T; L′₁..L′₃, S; α, γ}.
struct OrientChart {
    space: Arc<VariableSpace>,
    la: [GenId; 4],
    t: GenId,
    lp: [GenId; 3],
    s: GenId,
    angles: [GenId; 2],
}

impl OrientChart {
    fn build() -> Self {
        let mut b = SpaceBuilder::new();
        let (la, t) = b.block_with_radial(&["La0", "La1", "La2", "La3"], "T");
        let (lp, s) = b.block_with_radial(&["Lp1", "Lp2", "Lp3"], "S");
        let angles = b.block_plain(&["al", "ga"]);
        OrientChart {
            space: b.build(),
            la: [la[0], la[1], la[2], la[3]],
            t,
            lp: [lp[0], lp[1], lp[2]],
            s,
            angles: [angles[0], angles[1]],
        }
    }

    fn la_ring(&self, n: usize) -> RingElement {
        RingElement::gen(&self.space, self.la[n])
    }

    /// Lab momentum component L′_k, k = 1..3.
    fn p_ring(&self, k: usize) -> RingElement {
        RingElement::gen(&self.space, self.lp[k - 1])
    }

    /// Half-integer power S^{h/2} of the momentum norm.
    fn s_pow(&self, h: i32) -> RingElement {
        RingElement::gen_pow_half(&self.space, self.s, h)
    }

    /// The momentum norm S = |L′| itself.
    fn s_elem(&self) -> RingElement {
        self.s_pow(2)
    }

    /// T² = ΣΛ².
    fn t2(&self) -> RingElement {
        RingElement::gen_pow_half(&self.space, self.t, 4)
    }

    /// Unit momentum direction n_k = L′_k/S.
    fn n_dir(&self, k: usize) -> RingElement {
        self.p_ring(k).mul_gen_pow(self.s, -2)
    }

    fn d_la(&self, n: usize) -> DiffOp {
        DiffOp::partial(&self.space, self.la[n])
    }

    fn d_lp(&self, k: usize) -> DiffOp {
        DiffOp::partial(&self.space, self.lp[k - 1])
    }

    /// The integer-spectrum number operator X = 2l̂/ħ, i.e.
    /// ¼(T² − 4 − Σ∂²_Λ) − (i/2)Σ mq(n,k,m) n_k Λ_m ∂_{Λn}. Its eigenvalue
    /// on an orbital block with half-integer l is the integer 2l.
    fn number_op(&self) -> DiffOp {
        let mut op = DiffOp::mult(self.t2()) - DiffOp::identity(&self.space).scale(&sc(4, 1));
        for m in 0..4 {
            op = &op - &self.d_la(m).pow(2);
        }
        op = op.scale(&sc(1, 4));
        let mut twist = DiffOp::zero(&self.space);
        for n in 0..4 {
            for k in 1..4 {
                for m in 0..4 {
                    let c = mq(n, k, m);
                    if c == 0 {
                        continue;
                    }
                    let coeff = (&self.n_dir(k) * &self.la_ring(m)).mul_scalar(&sc(c, 1));
                    twist = &twist + &self.d_la(n).mul_coeff_left(&coeff);
                }
            }
        }
        &op - &twist.scale(&sci(1, 2))
    }

    /// The ħ-free symmetric part (l̂ + l̂ʳ)/ħ = ¼(T² − 4 − Σ∂²_Λ); the twist
    /// terms of the left and right number operators cancel exactly.
    fn number_symmetric(&self) -> DiffOp {
        let mut op = DiffOp::mult(self.t2()) - DiffOp::identity(&self.space).scale(&sc(4, 1));
        for m in 0..4 {
            op = &op - &self.d_la(m).pow(2);
        }
        op.scale(&sc(1, 4))
    }

    /// Body angular momentum image with an explicit direction coefficient
    /// triple in place of n (the generic chart passes n itself; the aligned
    /// gauge of the ladder tests passes the constants (0,0,1)):
    ///
    /// ```text
    /// L̂_k = (ħ/8)[ Σ qc(k,s,m,n) dir_s (Λ_mΛ_n − ∂_m∂_n)
    ///              + 2i Σ mq(m,n,k) Λ_m ∂_n ]
    /// ```
    fn body_momentum_with_dir(&self, k: usize, dir: &[RingElement; 3]) -> DiffOp {
        let mut quad = DiffOp::zero(&self.space);
        for s_i in 1..4 {
            if dir[s_i - 1].is_zero() {
                continue;
            }
            for m in 0..4 {
                for n in 0..4 {
                    let c = qc(k, s_i, m, n);
                    if c == 0 {
                        continue;
                    }
                    let w = dir[s_i - 1].mul_scalar(&sc(c, 1));
                    let mults = &self.la_ring(m) * &self.la_ring(n);
                    quad = &quad + &DiffOp::mult(&mults * &w);
                    quad = &quad - &self.d_la(m).compose(&self.d_la(n)).mul_coeff_left(&w);
                }
            }
        }
        let mut twist = DiffOp::zero(&self.space);
        for m in 0..4 {
            for n in 0..4 {
                let c = mq(m, n, k);
                if c == 0 {
                    continue;
                }
                twist = &twist + &self.d_la(n).mul_coeff_left(&self.la_ring(m).mul_scalar(&sc(c, 1)));
            }
        }
        (&quad + &twist.scale(&sci(2, 1))).scale(&(ScalarExact::hbar_pow(1) * sc(1, 8)))
    }

    /// Tangential rotation generator about the s-axis,
    /// D̂_s = Σ mq(n,s,m)(2[m,n ≥ 1] L′_m ∂_{L′_n} + Λ_m ∂_{Λ_n}).
    fn rot_gen(&self, s_i: usize) -> DiffOp {
        let mut out = DiffOp::zero(&self.space);
        for m in 0..4 {
            for n in 0..4 {
                let c = mq(n, s_i, m);
                if c == 0 {
                    continue;
                }
                if m >= 1 && n >= 1 {
                    out = &out
                        + &self
                            .d_lp(n)
                            .mul_coeff_left(&self.p_ring(m).mul_scalar(&sc(2 * c, 1)));
                }
                out = &out + &self.d_la(n).mul_coeff_left(&self.la_ring(m).mul_scalar(&sc(c, 1)));
            }
        }
        out
    }

    /// Lab angular momentum image
    /// L̂′_k = n_k (l̂ + l̂ʳ)/2 − (ħ/4) Σ mq(k,r,s) w_r D̂_s with w₀ = i and
    /// w_r = n_r for r ≥ 1.
    fn lab_momentum(&self, k: usize) -> DiffOp {
        let sym_half = self
            .number_symmetric()
            .scale(&(ScalarExact::hbar_pow(1) * sc(1, 2)));
        let mut out = sym_half.mul_coeff_left(&self.n_dir(k));
        for r in 0..4 {
            for s_i in 1..4 {
                let c = mq(k, r, s_i);
                if c == 0 {
                    continue;
                }
                let d = self.rot_gen(s_i);
                let weighted = if r == 0 {
                    d.scale(&sci(c, 1))
                } else {
                    d.mul_coeff_left(&self.n_dir(r).mul_scalar(&sc(c, 1)))
                };
                out = &out - &weighted.scale(&(ScalarExact::hbar_pow(1) * sc(1, 4)));
            }
        }
        out
    }

    /// Channel polynomial shared by the lowering kernel,
    /// ½[(Sξσ_n + L′₃)(1 − ξχσ_n) + (ξχ + σ_n)(L′₁ + iL′₂ξσ_n)].
    fn f_channel(&self, xi: i64, chi: i64, n: usize) -> RingElement {
        let s_n = sig(n);
        let a = (&self.s_elem().mul_scalar(&sc(xi * s_n, 1)) + &self.p_ring(3))
            .mul_scalar(&sc(1 - xi * chi * s_n, 1));
        let b = (&self.p_ring(1) + &self.p_ring(2).mul_scalar(&sci(xi * s_n, 1)))
            .mul_scalar(&sc(xi * chi + s_n, 1));
        (&a + &b).mul_scalar(&sc(1, 2))
    }

    /// Raising half-step kernel for channel (ξ, χ): ξ steps the body
    /// magnetic number, χ the lab one, each by ½.
    fn raise_kernel(&self, xi: i64, chi: i64) -> DiffOp {
        let delta = kd(chi, -xi) + chi * kd(chi, xi);
        let t1c = {
            let a = (&self.s_elem().mul_scalar(&sc(xi, 1)) + &self.p_ring(3))
                .mul_scalar(&sc(xi + chi, 2));
            let b = (&self.p_ring(1) - &self.p_ring(2).mul_scalar(&sci(xi, 1)))
                .mul_scalar(&sc(xi - chi, 2));
            (&a + &b).mul_scalar(&sc(delta, 1))
        };
        let t2c = {
            let a = (&self.p_ring(3) - &self.s_elem().mul_scalar(&sc(xi, 1)))
                .mul_scalar(&sc(chi - xi, 2));
            let b = (&self.p_ring(1) + &self.p_ring(2).mul_scalar(&sci(xi, 1)))
                .mul_scalar(&sc(xi * chi + 1, 2));
            &a + &b
        };
        let lower_pair = |m: usize| &DiffOp::mult(self.la_ring(m)) - &self.d_la(m);
        let a3 = &lower_pair(3) - &lower_pair(0).scale(&sci(xi, 1));
        let a1 = &lower_pair(1) - &lower_pair(2).scale(&sci(xi, 1));
        // prefactor e^{−iπ/4}/(2√(2ħ)) · S^{−1/2} = (1 − i)/4 · ħ^{−1/2} · S^{−1/2}
        let pre = ScalarExact::term(crat(rat(1, 4), rat(-1, 4)), 0, -1, 1);
        let sum = &a3.mul_coeff_left(&t1c) + &a1.mul_coeff_left(&t2c);
        sum.mul_coeff_left(&self.s_pow(-1)).scale(&pre)
    }

    /// Principal lowering half-step kernel for channel (ξ, χ), including the
    /// channel-dependent sign that makes lowering invert raising on every
    /// channel.
    fn lower_kernel(&self, xi: i64, chi: i64) -> DiffOp {
        let raise_pair = |m: usize| &DiffOp::mult(self.la_ring(m)) + &self.d_la(m);
        let mut first = DiffOp::zero(&self.space);
        for n in [1i64, -1] {
            let cf = {
                let a = (&self.p_ring(3) - &self.s_elem().mul_scalar(&sc(xi * n, 1)))
                    .mul_scalar(&sc(xi * chi - n, 1));
                let b = (&self.p_ring(1) - &self.p_ring(2).mul_scalar(&sci(n * xi, 1)))
                    .mul_scalar(&sc(n * xi * chi + 1, 1));
                (&a + &b).mul_scalar(&sc(1, 2))
            };
            let lo = (2 - n) as usize;
            let hi = (n + 1) as usize;
            let g1 = &raise_pair(hi) - &raise_pair(lo).scale(&sci(xi, 1));
            let rot = &self.d_la(hi).mul_coeff_left(&self.la_ring(lo))
                - &self.d_la(lo).mul_coeff_left(&self.la_ring(hi));
            let head = &(&rot.scale(&sc(n, 1)) - &DiffOp::identity(&self.space).scale(&sci(chi, 1)))
                + &self.d_lp(3).mul_coeff_left(&self.s_elem()).scale(&sci(2, 1));
            first = &first + &head.compose(&g1).mul_coeff_left(&cf);
        }
        let mut second = DiffOp::zero(&self.space);
        for n in 0..4usize {
            let s_n = sig(n);
            let amp = rat((xi + chi * s_n).pow(2), 4);
            let g0 = raise_pair(n);
            let fx = self.f_channel(xi, chi, n);
            let mut acc = g0
                .mul_coeff_left(&self.s_elem())
                .scale(&(sci(4, 1) * ScalarExact::rational(amp.clone())));
            let dp = &self.d_lp(2).compose(&g0) + &self.d_lp(1).compose(&g0).scale(&sci(chi, 1));
            acc = &acc + &dp.mul_coeff_left(&(&self.s_elem() * &fx).mul_scalar(&sc(2 * xi, 1)));
            for k in 0..4usize {
                for s_i in 1..4usize {
                    for jj in 0..4usize {
                        let c = mq(k, s_i, jj);
                        if c == 0 {
                            continue;
                        }
                        let gate = 1 - sig(s_i)
                            * (2 * (kd(jj as i64, 3 - n as i64) + kd(k as i64, 3 - n as i64)) - 1);
                        let mut w = self
                            .p_ring(s_i)
                            .mul_scalar(&(ScalarExact::rational(amp.clone()) * sc(gate, 1)));
                        if s_i != 3 {
                            let d = kd(jj as i64, n as i64) + kd(k as i64, n as i64);
                            if d != 0 {
                                w = &w
                                    + &fx.mul_scalar(
                                        &(i_pow(1 - s_i as i64 * chi) * sc(xi * d, 1)),
                                    );
                            }
                        }
                        if w.is_zero() {
                            continue;
                        }
                        acc = &acc
                            + &self
                                .d_la(k)
                                .compose(&g0)
                                .mul_coeff_left(&(&w * &self.la_ring(jj)).mul_scalar(&sc(c, 1)));
                    }
                }
            }
            second = &second + &acc.scale(&i_pow(xi * n as i64));
        }
        // prefactor −e^{iπ/4}√ħ(χδ_{ξ,χ} + δ_{ξ,−χ})/(8√2) · S^{−3/2}, times
        // the extra (−1) on χ = +1 channels
        let delta = chi * kd(xi, chi) + kd(xi, -chi);
        let fix = if chi == 1 { -1 } else { 1 };
        let num = -delta * fix;
        let pre = ScalarExact::term(crat(rat(num, 16), rat(num, 16)), 0, 1, 1);
        (&first + &second).mul_coeff_left(&self.s_pow(-3)).scale(&pre)
    }

    /// First-order correction to the lowering half-step: a momentum-space
    /// rotation of (l̂ + l̂ʳ)/ħ, subleading in the classical scaling but
    /// required for exact inversion of raising.
    fn lower_correction(&self, xi: i64, chi: i64) -> DiffOp {
        let lf = self.number_symmetric();
        let raise_pair = |m: usize| &DiffOp::mult(self.la_ring(m)) + &self.d_la(m);
        let mut out = DiffOp::zero(&self.space);
        for n in 0..2usize {
            let pm = if n == 0 { 1i64 } else { -1 };
            let da = kd(xi, -pm * chi);
            let db = kd(xi, pm * chi);
            let base = &(&self.s_elem() + &self.p_ring(3).mul_scalar(&sc(chi, 1)))
                .mul_scalar(&sc(da, 1))
                + &(&self.p_ring(1) - &self.p_ring(2).mul_scalar(&sci(chi, 1)))
                    .mul_scalar(&sc(db, 1));
            if base.is_zero() {
                continue;
            }
            // scalar part iⁿ e^{iπ/4}/4; ring part S^{−1}
            let cf = (&base * &self.s_pow(-2))
                .mul_scalar(&(i_pow(n as i64) * ScalarExact::term(crat(rat(1, 8), rat(1, 8)), 0, 0, 2)));
            let g1 = (&raise_pair(1 - n) + &raise_pair(n + 2).scale(&sci(xi * pm, 1))).compose(&lf);
            out = &out + &g1.mul_coeff_left(&cf);
        }
        out
    }
}

/// The quaternion chart {λ₀..λ₃, r; L′₁..L′₃, S} of the A family.
struct QuatChart {
    space: Arc<VariableSpace>,
    la: [GenId; 4],
    r: GenId,
    lp: [GenId; 3],
    s: GenId,
}

impl QuatChart {
    fn build() -> Self {
        let mut b = SpaceBuilder::new();
        let (la, r) = b.block_with_radial(&["la0", "la1", "la2", "la3"], "r");
        let (lp, s) = b.block_with_radial(&["Lp1", "Lp2", "Lp3"], "S");
        QuatChart {
            space: b.build(),
            la: [la[0], la[1], la[2], la[3]],
            r,
            lp: [lp[0], lp[1], lp[2]],
            s,
        }
    }

    fn lam(&self, m: usize) -> RingElement {
        RingElement::gen(&self.space, self.la[m])
    }

    fn p(&self, j: usize) -> RingElement {
        RingElement::gen(&self.space, self.lp[j - 1])
    }

    fn d_lam(&self, m: usize) -> DiffOp {
        DiffOp::partial(&self.space, self.la[m])
    }

    fn d_p(&self, j: usize) -> DiffOp {
        DiffOp::partial(&self.space, self.lp[j - 1])
    }

    /// Rotation-matrix entry as a quadratic form, Q_{k,j}(λ).
    fn q_poly(&self, k: usize, j: usize) -> RingElement {
        let mut out = RingElement::zero(&self.space);
        for m in 0..4 {
            for n in 0..4 {
                let c = qc(k, j, m, n);
                if c != 0 {
                    out = &out + &(&self.lam(m) * &self.lam(n)).mul_scalar(&sc(c, 1));
                }
            }
        }
        out
    }

    /// Angular frequency component ω_k = Σ_j Q_{k,j} L′_j / I_k.
    fn omega(&self, k: usize, inertia: &InertiaTensor<Rat>) -> RingElement {
        let inv = inertia.principal()[k - 1].recip();
        let mut out = RingElement::zero(&self.space);
        for j in 1..4 {
            out = &out + &(&self.q_poly(k, j) * &self.p(j));
        }
        out.mul_scalar(&ScalarExact::rational(inv))
    }

    /// Normalized rotation-matrix row entry W_k = Σ_s Q_{k,s} L′_s r^{−2}.
    fn w_row(&self, k: usize) -> RingElement {
        let mut out = RingElement::zero(&self.space);
        for s_i in 1..4 {
            out = &out + &(&self.q_poly(k, s_i) * &self.p(s_i));
        }
        out.mul_gen_pow(self.r, -4)
    }

    /// 1 − (ħ²/16)Σ ∂²_{L′}.
    fn shift_correction(&self) -> DiffOp {
        let mut out = DiffOp::identity(&self.space);
        for j in 1..4 {
            out = &out
                - &self
                    .d_p(j)
                    .pow(2)
                    .scale(&(ScalarExact::hbar_pow(2) * sc(1, 16)));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// symbols
// ---------------------------------------------------------------------------

/// A phase-space symbol on the full chart: a ring element under the
/// canonical Gaussian configuration weight e^{−T²/2}, or a weightless probe
/// (the constant used in trace pairings, or the ⋆-scaled total identity).
#[derive(Clone, Debug)]
pub struct CompleteSymbol {
    w: WeylSymbol,
}

impl CompleteSymbol {
    /// Wrap `body` under the canonical Gaussian weight e^{−T²/2}.
    pub fn gaussian(_rep: &CompleteRep, body: RingElement) -> Self {
        CompleteSymbol {
            w: WeylSymbol::new(body).with_weight(0, Weight::ExpGaussSquare(sc(-1, 2))),
        }
    }

    /// Wrap `body` with no weight at all.
    pub fn weightless(body: RingElement) -> Self {
        CompleteSymbol {
            w: WeylSymbol::new(body),
        }
    }

    fn wrap(w: WeylSymbol) -> Self {
        CompleteSymbol { w }
    }

    pub fn weyl(&self) -> &WeylSymbol {
        &self.w
    }

    pub fn body(&self) -> &RingElement {
        self.w.body()
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero()
    }

    /// Apply a differential operator (weight derivatives included).
    pub fn apply(&self, op: &DiffOp) -> Self {
        Self::wrap(op_apply(op, &self.w))
    }

    pub fn mul_scalar(&self, s: &ScalarExact) -> Self {
        Self::wrap(self.w.mul_scalar(s))
    }

    pub fn mul_ring(&self, c: &RingElement) -> Self {
        Self::wrap(self.w.mul_ring(c))
    }

    /// Sum; zero operands adopt the other side's weights, otherwise the
    /// weights must agree.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert!(
            self.w.same_weights(&other.w),
            "cannot add symbols with different weights"
        );
        Self::wrap(self.w.map_body(|b| b + other.w.body()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.mul_scalar(&sc(-1, 1)))
    }

    /// Homogeneity degree in the momentum block (doubled, so S¹ counts 2),
    /// or None if the body mixes degrees.
    pub fn momentum_degree_half(&self) -> Option<i32> {
        self.w.body().block_degree_half(1)
    }

    pub fn eval_c64(&self, point: &[f64], hbar: f64) -> num::Complex<f64> {
        self.w.eval_c64(point, hbar)
    }
}

// ---------------------------------------------------------------------------
// basis labels and matrices
// ---------------------------------------------------------------------------

/// A basis-block label (l, m, k) in doubled (integer) form: `two_l = 2l` with
/// m the lab and k the body magnetic number, each stepping in halves and
/// matching l's parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisLabelFull {
    two_l: i64,
    two_m: i64,
    two_k: i64,
}

impl BasisLabelFull {
    pub fn new(two_l: i64, two_m: i64, two_k: i64) -> Result<Self, RepError> {
        if two_l < 0 {
            return Err(RepError::InvalidIndex(format!(
                "orbital label needs 2l ≥ 0, got {two_l}"
            )));
        }
        if two_m.abs() > two_l || two_k.abs() > two_l {
            return Err(RepError::InvalidIndex(format!(
                "magnetic labels (2m, 2k) = ({two_m}, {two_k}) exceed 2l = {two_l}"
            )));
        }
        if (two_l - two_m) % 2 != 0 || (two_l - two_k) % 2 != 0 {
            return Err(RepError::InvalidIndex(format!(
                "magnetic labels (2m, 2k) = ({two_m}, {two_k}) must match the parity of 2l = {two_l}"
            )));
        }
        Ok(BasisLabelFull { two_l, two_m, two_k })
    }

    pub fn ground() -> Self {
        BasisLabelFull { two_l: 0, two_m: 0, two_k: 0 }
    }

    pub fn two_l(&self) -> i64 {
        self.two_l
    }

    pub fn two_m(&self) -> i64 {
        self.two_m
    }

    pub fn two_k(&self) -> i64 {
        self.two_k
    }

    fn key(&self) -> (i64, i64, i64) {
        (self.two_l, self.two_m, self.two_k)
    }

    /// Ladder-word exponents (ξ, χ, power) that build this label from the
    /// ground block, for internal composition parameter `s` (the number of
    /// (+,+) steps): p₊₊ = s, p₊₋ = l+k−s, p₋₊ = l+m−s, p₋₋ = s−k−m.
    fn ladder_powers(&self, s: i64) -> [(i64, i64, i64); 4] {
        let lk = (self.two_l + self.two_k) / 2;
        let lm = (self.two_l + self.two_m) / 2;
        let km = (self.two_k + self.two_m) / 2;
        [
            (1, 1, s),
            (1, -1, lk - s),
            (-1, 1, lm - s),
            (-1, -1, s - km),
        ]
    }

    /// Admissible range of the composition parameter.
    fn s_range(&self) -> (i64, i64) {
        let lk = (self.two_l + self.two_k) / 2;
        let lm = (self.two_l + self.two_m) / 2;
        let km = (self.two_k + self.two_m) / 2;
        (km.max(0), lk.min(lm))
    }

    /// Product of the four normalization factorials (l+k)!(l−k)!(l+m)!(l−m)!.
    fn norm_factorial(&self) -> Rat {
        let f = |v: i64| factorial(v as u64);
        let num = f((self.two_l + self.two_k) / 2)
            * f((self.two_l - self.two_k) / 2)
            * f((self.two_l + self.two_m) / 2)
            * f((self.two_l - self.two_m) / 2);
        Rat::new(num, 1.into())
    }
}

/// A sparse operator in the (l, m, k) basis: entries ⟨α|F̂|β⟩ keyed by the
/// doubled label triples (row, column).
#[derive(Clone, Debug, Default)]
pub struct FullMatrix {
    entries: BTreeMap<((i64, i64, i64), (i64, i64, i64)), ScalarExact>,
}

impl FullMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, row: &BasisLabelFull, col: &BasisLabelFull, v: ScalarExact) {
        if v.is_zero() {
            self.entries.remove(&(row.key(), col.key()));
        } else {
            self.entries.insert((row.key(), col.key()), v);
        }
    }

    pub fn get(&self, row: &BasisLabelFull, col: &BasisLabelFull) -> ScalarExact {
        self.entries
            .get(&(row.key(), col.key()))
            .cloned()
            .unwrap_or_else(ScalarExact::zero)
    }

    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (&((i64, i64, i64), (i64, i64, i64)), &ScalarExact)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

// ---------------------------------------------------------------------------
// ladders and component images
// ---------------------------------------------------------------------------

/// Raising or lowering of the orbital number by ½.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Which factor of the bimodule an operator acts on: `Left` steps the body
/// magnetic number k, `Right` the lab one m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A compound half-step ladder for one channel (ξ, χ): a fixed differential
/// kernel combined with a diagonal spectral factor that is applied exactly
/// after decomposing the input into orbital eigen-content.
pub struct CompoundLadder<'a> {
    rep: &'a CompleteRep,
    kernel: DiffOp,
    direction: Direction,
    side: Side,
}

impl CompoundLadder<'_> {
    pub fn apply(&self, f: &CompleteSymbol) -> Result<CompleteSymbol, RepError> {
        let parts = self.rep.l_content(self.side, f.weyl())?;
        let mut out = f.mul_scalar(&ScalarExact::zero());
        for (two_l, piece) in parts.iter() {
            match self.direction {
                Direction::Raise => {
                    // diagonal factor √(2l + 2) on input content l
                    let applied = op_apply(&self.kernel, piece);
                    let factor = ScalarExact::sqrt_rational(&rat(two_l + 2, 1));
                    out = out.add(&CompleteSymbol::wrap(applied.mul_scalar(&factor)));
                }
                Direction::Lower => {
                    // diagonal factor 1/√(2l + 1) on input content l
                    let applied = op_apply(&self.kernel, piece);
                    let factor = ScalarExact::sqrt_rational(&rat(1, two_l + 1));
                    out = out.add(&CompleteSymbol::wrap(applied.mul_scalar(&factor)));
                }
            }
        }
        Ok(out)
    }
}

/// The multiplication image of one quaternion component λ_n: a phase-locked
/// sum of the four half-step channels, sandwiched between the diagonal
/// normalizers 1/√(2l̂/ħ + 1).
pub struct QuaternionImage<'a> {
    rep: &'a CompleteRep,
    n: usize,
}

impl QuaternionImage<'_> {
    pub fn component(&self) -> usize {
        self.n
    }

    pub fn apply(&self, f: &CompleteSymbol) -> Result<CompleteSymbol, RepError> {
        let n = self.n;
        let sg = sig(n);
        let parts = self.rep.l_content(Side::Left, f.weyl())?;
        let mut out = f.mul_scalar(&ScalarExact::zero());
        for (two_l, piece) in parts.iter() {
            let piece_sym = CompleteSymbol::wrap(piece.clone());
            let sand_in = ScalarExact::sqrt_rational(&rat(1, 2 * (two_l + 1)));
            let up_a = self
                .rep
                .compound_ladder(-1, -sg, Direction::Raise, Side::Left)?
                .apply(&piece_sym)?;
            let up_b = self
                .rep
                .compound_ladder(1, sg, Direction::Raise, Side::Left)?
                .apply(&piece_sym)?;
            let ph_up_a = phase_pi4(1) * i_pow(-(n as i64));
            let ph_up_b = phase_pi4(if n % 2 == 0 { 1 } else { -1 });
            let sand_up = ScalarExact::sqrt_rational(&rat(1, 2 * (two_l + 2)));
            let mut acc = up_a
                .mul_scalar(&ph_up_a)
                .add(&up_b.mul_scalar(&ph_up_b))
                .mul_scalar(&sand_up);
            if *two_l > 0 {
                let dn_a = self
                    .rep
                    .compound_ladder(1, sg, Direction::Lower, Side::Left)?
                    .apply(&piece_sym)?;
                let dn_b = self
                    .rep
                    .compound_ladder(-1, -sg, Direction::Lower, Side::Left)?
                    .apply(&piece_sym)?;
                let ph_dn_a = -phase_pi4(if n % 2 == 0 { -1 } else { 1 });
                let ph_dn_b = -(phase_pi4(-1) * i_pow(n as i64));
                let sand_dn = ScalarExact::sqrt_rational(&rat(1, 2 * two_l));
                acc = acc.add(
                    &dn_a
                        .mul_scalar(&ph_dn_a)
                        .add(&dn_b.mul_scalar(&ph_dn_b))
                        .mul_scalar(&sand_dn),
                );
            }
            out = out.add(&acc.mul_scalar(&(sand_in * ScalarExact::i())));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// operator-family selectors
// ---------------------------------------------------------------------------

/// Selector for the A family on the quaternion chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoppAKind {
    /// Body angular momentum component L_k, k = 1..3.
    Momentum(usize),
    /// Quaternion component λ_j, j = 0..3, modulo the pending normalizer.
    Component(usize),
    /// The norm operator N̂ = r²(1 − (ħ²/16)Σ∂²_{L′}).
    Normalizer,
}

/// An A-family image. `pending_normalizer` flags component images, which are
/// exact only up to a diagonal factor N̂^{−1/2} that this family does not
/// apply.
pub struct BoppAImage {
    pub op: DiffOp,
    pub pending_normalizer: bool,
}

/// Selector for the B family on the orientation chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoppBKind {
    /// Body angular momentum L̂_k, k = 1..3.
    Body(usize),
    /// Lab angular momentum L̂′_k, k = 1..3.
    Lab(usize),
    /// Orbital number operator l̂, with eigenvalue ħl on an l block.
    LNumber,
    /// Schwinger ladder of the body pair in the momentum-aligned gauge
    /// n = (0,0,1): plus selects the (Λ₃, Λ₀) mode, dagger the creator.
    ALadder { plus: bool, dagger: bool },
    /// Auxiliary oscillator ladders on the four-component square-root chart
    /// q (an independent variable space, used for norm bookkeeping).
    BLadder { plus: bool, dagger: bool },
}

/// Exact residuals of the formal-adjoint checks under the flat measure; the
/// report is all-zero precisely when every listed identity holds as an
/// operator identity.
pub struct HermiticityReport {
    /// adjoint(L̂_k) − L̂_k for k = 1..3.
    pub body_residuals: [DiffOp; 3],
    /// adjoint(ΣL̂²) − ΣL̂².
    pub casimir_residual: DiffOp,
    /// adjoint(h) − h for the symmetrized h = ½(L̂′₃ − L̂′₃ʳ).
    pub lab3_symmetrized_residual: DiffOp,
    /// adjoint(L̂′_k) − conj-flip(L̂′_k) − ħ·n_k for k = 1..3, where
    /// conj-flip sends Σ c_α ∂^α to Σ (−1)^{|α|} conj(c_α) ∂^α.
    pub lab_defect_residuals: [DiffOp; 3],
}

impl HermiticityReport {
    pub fn all_zero(&self) -> bool {
        self.body_residuals.iter().all(DiffOp::is_zero)
            && self.casimir_residual.is_zero()
            && self.lab3_symmetrized_residual.is_zero()
            && self.lab_defect_residuals.iter().all(DiffOp::is_zero)
    }
}

/// The ⋆-scaled presentation: symbols are multiplied by 256π³T⁻², operators
/// conjugated accordingly, and the total identity becomes the constant 1.
pub struct StarVariant<'a> {
    rep: &'a CompleteRep,
    factor: RingElement,
    inverse: RingElement,
}

impl StarVariant<'_> {
    pub fn symbol_star(&self, f: &CompleteSymbol) -> CompleteSymbol {
        f.mul_ring(&self.factor)
    }

    pub fn symbol_unstar(&self, f: &CompleteSymbol) -> CompleteSymbol {
        f.mul_ring(&self.inverse)
    }

    pub fn op_star(&self, op: &DiffOp) -> DiffOp {
        DiffOp::mult(self.factor.clone())
            .compose(op)
            .compose(&DiffOp::mult(self.inverse.clone()))
    }

    /// The ⋆-image of the total identity: the constant symbol 1.
    pub fn identity_star(&self) -> CompleteSymbol {
        self.rep
            .identity_total_symbol_full()
            .mul_ring(&self.factor)
    }
}

/// Suites accepted by [`CompleteRep::verify_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifySuite {
    Su2,
    Ladders,
    Hermiticity,
    Invariance,
    ClassicalLimit,
}

// ---------------------------------------------------------------------------
// the representation
// ---------------------------------------------------------------------------

type ContentCache = RwLock<HashMap<(&'static str, String), Arc<Vec<(i64, WeylSymbol)>>>>;

/// The full-chart representation: variable spaces, precomputed operator
/// kernels, and a concurrent cache of orbital eigen-content decompositions.
pub struct CompleteRep {
    chart: OrientChart,
    quat: QuatChart,
    q_space: Arc<VariableSpace>,
    q_gens: [GenId; 4],
    number: DiffOp,
    l_op: DiffOp,
    body: [DiffOp; 3],
    lab: [DiffOp; 3],
    raise_kernels: [[DiffOp; 2]; 2],
    lower_kernels: [[DiffOp; 2]; 2],
    cache: ContentCache,
}

impl Default for CompleteRep {
    fn default() -> Self {
        Self::new()
    }
}

impl CompleteRep {
    pub fn new() -> Self {
        let chart = OrientChart::build();
        let quat = QuatChart::build();
        let mut b = SpaceBuilder::new();
        let q = b.block_plain(&["q0", "q1", "q2", "q3"]);
        let q_space = b.build();
        let number = chart.number_op();
        let l_op = number.scale(&(ScalarExact::hbar_pow(1) * sc(1, 2)));
        let n_dir = [chart.n_dir(1), chart.n_dir(2), chart.n_dir(3)];
        let body = std::array::from_fn(|k| chart.body_momentum_with_dir(k + 1, &n_dir));
        let lab = std::array::from_fn(|k| chart.lab_momentum(k + 1));
        // Raising kernel including its √(ħ/2)·S^{−1/2} scale; lowering kernel
        // √(2/ħ)·S^{1/2}·(principal) + correction. Diagonal factors stay
        // spectral and live in CompoundLadder.
        let raise_scale = ScalarExact::hbar_pow_half(1) * ScalarExact::sqrt_rational(&rat(1, 2));
        let lower_scale = ScalarExact::hbar_pow_half(-1) * ScalarExact::sqrt_radicand(2);
        let build_pair = |xi: i64, chi: i64| {
            let raise = chart
                .raise_kernel(xi, chi)
                .mul_coeff_left(&chart.s_pow(-1))
                .scale(&raise_scale);
            let lower = &chart
                .lower_kernel(xi, chi)
                .mul_coeff_left(&chart.s_pow(1))
                .scale(&lower_scale)
                + &chart.lower_correction(xi, chi);
            (raise, lower)
        };
        let mut raise_kernels: [[DiffOp; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| DiffOp::zero(&chart.space)));
        let mut lower_kernels: [[DiffOp; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| DiffOp::zero(&chart.space)));
        for xi in [1i64, -1] {
            for chi in [1i64, -1] {
                let (r, l) = build_pair(xi, chi);
                raise_kernels[pm_idx(xi)][pm_idx(chi)] = r;
                lower_kernels[pm_idx(xi)][pm_idx(chi)] = l;
            }
        }
        CompleteRep {
            chart,
            quat,
            q_space,
            q_gens: [q[0], q[1], q[2], q[3]],
            number,
            l_op,
            body,
            lab,
            raise_kernels,
            lower_kernels,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// The orientation-chart variable space {Λ, T, L′, S, α, γ}.
    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.chart.space
    }

    /// The quaternion-chart variable space {λ, r, L′, S} of the A family.
    pub fn a_space(&self) -> &Arc<VariableSpace> {
        &self.quat.space
    }

    /// The auxiliary square-root chart {q₀..q₃}.
    pub fn q_space(&self) -> &Arc<VariableSpace> {
        &self.q_space
    }

    // -- B family -----------------------------------------------------------

    /// The orbital number operator l̂ (eigenvalue ħl on an l block).
    pub fn l_number(&self) -> DiffOp {
        self.l_op.clone()
    }

    /// The body Casimir Σ L̂ₖ².
    pub fn casimir_body(&self) -> DiffOp {
        let mut out = DiffOp::zero(&self.chart.space);
        for k in 0..3 {
            out = &out + &self.body[k].pow(2);
        }
        out
    }

    /// The lab Casimir Σ L̂′ₖ².
    pub fn casimir_lab(&self) -> DiffOp {
        let mut out = DiffOp::zero(&self.chart.space);
        for k in 0..3 {
            out = &out + &self.lab[k].pow(2);
        }
        out
    }

    /// B-family operator images on the orientation chart. Right-acting
    /// partners are `op.conjugate()` of the returned left images.
    pub fn bopp_b(&self, kind: BoppBKind) -> Result<DiffOp, RepError> {
        match kind {
            BoppBKind::Body(k) => {
                check_axis(k)?;
                Ok(self.body[k - 1].clone())
            }
            BoppBKind::Lab(k) => {
                check_axis(k)?;
                Ok(self.lab[k - 1].clone())
            }
            BoppBKind::LNumber => Ok(self.l_op.clone()),
            BoppBKind::ALadder { plus, dagger } => Ok(self.aligned_ladder(plus, dagger)),
            BoppBKind::BLadder { plus, dagger } => Ok(self.sqrt_chart_ladder(plus, dagger)),
        }
    }

    /// Schwinger ladders of the aligned gauge n = (0,0,1); the plus mode
    /// pairs (Λ₃, Λ₀), the minus mode (Λ₁, Λ₂) with a phase chosen so that
    /// L̂₁ + iL̂₂ = ħ â†₋ â₊ exactly.
    fn aligned_ladder(&self, plus: bool, dagger: bool) -> DiffOp {
        let c = &self.chart;
        let m = |n: usize| DiffOp::mult(c.la_ring(n));
        let half = sc(1, 2);
        let op = match (plus, dagger) {
            // â₊ = ½(Λ₃ + iΛ₀ + ∂₃ + i∂₀)
            (true, false) => {
                &(&m(3) + &m(0).scale(&sci(1, 1))) + &(&c.d_la(3) + &c.d_la(0).scale(&sci(1, 1)))
            }
            // â†₊ = ½(Λ₃ − iΛ₀ − ∂₃ + i∂₀)
            (true, true) => {
                &(&m(3) - &m(0).scale(&sci(1, 1))) + &(&c.d_la(0).scale(&sci(1, 1)) - &c.d_la(3))
            }
            // â₋ = ½(Λ₁ − iΛ₂ + ∂₁ − i∂₂)
            (false, false) => {
                &(&m(1) - &m(2).scale(&sci(1, 1))) + &(&c.d_la(1) - &c.d_la(2).scale(&sci(1, 1)))
            }
            // â†₋ = ½(Λ₁ + iΛ₂ − ∂₁ − i∂₂)
            (false, true) => {
                &(&m(1) + &m(2).scale(&sci(1, 1))) - &(&c.d_la(1) + &c.d_la(2).scale(&sci(1, 1)))
            }
        };
        op.scale(&half)
    }

    /// Oscillator ladders on the square-root chart: b̂†₊ = √2(q₀ + iq₃),
    /// b̂₊ = (∂₀ − i∂₃)/√8, and the minus pair on (q₂, q₁).
    fn sqrt_chart_ladder(&self, plus: bool, dagger: bool) -> DiffOp {
        let sp = &self.q_space;
        let g = |n: usize| RingElement::gen(sp, self.q_gens[n]);
        let d = |n: usize| DiffOp::partial(sp, self.q_gens[n]);
        let (lo, hi) = if plus { (0usize, 3usize) } else { (2usize, 1usize) };
        if dagger {
            DiffOp::mult((&g(lo) + &g(hi).mul_scalar(&sci(1, 1))).mul_scalar(&ScalarExact::sqrt_radicand(2)))
        } else {
            (&d(lo) - &d(hi).scale(&sci(1, 1))).scale(&ScalarExact::sqrt_rational(&rat(1, 8)))
        }
    }

    // -- A family -----------------------------------------------------------

    /// A-family operator images on the quaternion chart.
    pub fn bopp_a(&self, kind: BoppAKind) -> Result<BoppAImage, RepError> {
        let q = &self.quat;
        match kind {
            BoppAKind::Momentum(k) => {
                check_axis(k)?;
                let w = DiffOp::mult(q.w_row(k));
                let corr = q.shift_correction();
                let sym = (&w.compose(&corr) + &corr.compose(&w)).scale(&sc(1, 2));
                let mut cross = DiffOp::zero(&q.space);
                for s_i in 1..4 {
                    for m in 0..4 {
                        for n in 0..4 {
                            let c = qc(k, s_i, m, n);
                            if c == 0 {
                                continue;
                            }
                            cross = &cross
                                + &q.d_lam(n)
                                    .compose(&q.d_p(s_i))
                                    .mul_coeff_left(&q.lam(m).mul_scalar(&sc(c, 1)));
                        }
                    }
                }
                let mut rot = DiffOp::zero(&q.space);
                for m in 0..4 {
                    for n in 0..4 {
                        let c = mq(m, n, k);
                        if c == 0 {
                            continue;
                        }
                        rot = &rot + &q.d_lam(n).mul_coeff_left(&q.lam(m).mul_scalar(&sc(c, 1)));
                    }
                }
                let op = &(&sym - &cross.scale(&(ScalarExact::hbar_pow(2) * sc(1, 16))))
                    + &rot.scale(&(ScalarExact::hbar_pow(1) * sci(1, 4)));
                Ok(BoppAImage { op, pending_normalizer: false })
            }
            BoppAKind::Component(j) => {
                if j > 3 {
                    return Err(RepError::InvalidIndex(format!(
                        "quaternion component index must be 0..=3, got {j}"
                    )));
                }
                let mut op = DiffOp::mult(q.lam(j));
                for n in 1..4 {
                    for m in 0..4 {
                        let c = mq(j, n, m);
                        if c == 0 {
                            continue;
                        }
                        op = &op
                            + &q.d_p(n)
                                .mul_coeff_left(&q.lam(m).mul_scalar(&sc(c, 1)))
                                .scale(&(ScalarExact::hbar_pow(1) * sci(1, 4)));
                    }
                }
                Ok(BoppAImage { op, pending_normalizer: true })
            }
            BoppAKind::Normalizer => {
                let r2 = RingElement::gen_pow_half(&q.space, q.r, 4);
                let op = q.shift_correction().mul_coeff_left(&r2);
                Ok(BoppAImage { op, pending_normalizer: false })
            }
        }
    }

    /// Classical evolution generator of the free top on the quaternion
    /// chart: λ̇ = ½λ∗ω with body frequency ω_k = Σ_j Q_{k,j} L′_j / I_k.
    /// The field is divergence-free and conserves Σλ².
    pub fn classical_liouvillian_quaternion(&self, inertia: &InertiaTensor<Rat>) -> DiffOp {
        let q = &self.quat;
        let mut out = DiffOp::zero(&q.space);
        for n in 0..4 {
            let mut coeff = RingElement::zero(&q.space);
            for k in 1..4 {
                for m in 0..4 {
                    let c = mq(n, m, k);
                    if c == 0 {
                        continue;
                    }
                    coeff = &coeff + &(&q.omega(k, inertia) * &q.lam(m)).mul_scalar(&sc(c, 1));
                }
            }
            if coeff.is_zero() {
                continue;
            }
            out = &out + &q.d_lam(n).mul_coeff_left(&coeff.mul_scalar(&sc(1, 2)));
        }
        out
    }

    /// Evolution generator of the free symmetric top on the orientation
    /// chart, −A·𝔍∘∂_α + (A−B)·𝔎∘∂_γ with A = 1/I₁ = 1/I₂ and B = 1/I₃
    /// (B = 0 is the linear top). 𝔍 = (l̂ + l̂ʳ + ħ)/2 and 𝔎 = (L̂₃ + L̂₃ʳ)/2
    /// are the symmetrized action operators.
    pub fn symmetric_top_liouvillian(&self, a: &Rat, b: &Rat) -> DiffOp {
        let sp = &self.chart.space;
        let jop = (&(&self.l_op + &self.l_op.conjugate())
            + &DiffOp::identity(sp).scale(&ScalarExact::hbar_pow(1)))
            .scale(&sc(1, 2));
        let kop = (&self.body[2] + &self.body[2].conjugate()).scale(&sc(1, 2));
        let da = DiffOp::partial(sp, self.chart.angles[0]);
        let dg = DiffOp::partial(sp, self.chart.angles[1]);
        &jop.compose(&da).scale(&-ScalarExact::rational(a.clone()))
            + &kop.compose(&dg).scale(&ScalarExact::rational(a - b))
    }

    ///같은 generator from principal moments; errors unless I₁ = I₂.
    pub fn symmetric_top_liouvillian_inertia(
        &self,
        inertia: &InertiaTensor<Rat>,
    ) -> Result<DiffOp, RepError> {
        let p = inertia.principal();
        if p[0] != p[1] {
            return Err(RepError::InvalidParameter(format!(
                "symmetric top needs I₁ = I₂, got {} ≠ {}",
                p[0], p[1]
            )));
        }
        Ok(self.symmetric_top_liouvillian(&p[0].recip(), &p[2].recip()))
    }

    // -- spectral machinery ---------------------------------------------------

    /// Decompose a symbol into its orbital eigen-content against l̂ (`Left`)
    /// or l̂ʳ (`Right`): a finite list of (2l, component) pairs summing to
    /// the input. Results are cached per (side, symbol) for concurrent reuse.
    fn l_content(
        &self,
        side: Side,
        f: &WeylSymbol,
    ) -> Result<Arc<Vec<(i64, WeylSymbol)>>, RepError> {
        if f.is_zero() {
            return Ok(Arc::new(Vec::new()));
        }
        let tag = match side {
            Side::Left => "number-left",
            Side::Right => "number-right",
        };
        let key = (tag, format!("{f}"));
        if let Some(hit) = self.cache.read().expect("content cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let x = match side {
            Side::Left => self.number.clone(),
            Side::Right => self.number.conjugate(),
        };
        let bound = self.orbital_degree_bound(f);
        let xf = op_apply(&x, f);
        let mut pure = None;
        for t in 0..=bound {
            if (xf.body() - &f.body().mul_scalar(&sc(t, 1))).is_zero() {
                pure = Some(t);
                break;
            }
        }
        let parts: Vec<(i64, WeylSymbol)> = if let Some(t) = pure {
            vec![(t, f.clone())]
        } else {
            let mut parts = Vec::new();
            let mut total = f.mul_scalar(&ScalarExact::zero());
            for j in 0..=bound {
                let mut g = f.clone();
                for i in 0..=bound {
                    if i == j {
                        continue;
                    }
                    let xg = op_apply(&x, &g);
                    let num = xg.body() - &g.body().mul_scalar(&sc(i, 1));
                    g = xg.map_body(|_| num.mul_scalar(&sc(1, j - i)));
                }
                if !g.is_zero() {
                    total = total.map_body(|b| b + g.body());
                    parts.push((j, g));
                }
            }
            if !(total.body() - f.body()).is_zero() {
                return Err(RepError::IllConditioned(format!(
                    "orbital content up to 2l = {bound} does not reproduce the symbol; \
                     it is not a finite combination of orbital blocks"
                )));
            }
            parts
        };
        let arc = Arc::new(parts);
        self.cache
            .write()
            .expect("content cache poisoned")
            .insert(key, arc.clone());
        Ok(arc)
    }

    /// Upper bound for the orbital content of a polynomial symbol: half its
    /// total configuration degree, rounded up.
    fn orbital_degree_bound(&self, f: &WeylSymbol) -> i64 {
        let mut d = 0i64;
        for (mono, _) in f.body().iter_terms() {
            let mut h = 0i64;
            for i in 0..4 {
                h += 2 * mono.0[self.chart.la[i].0] as i64;
            }
            h += mono.0[self.chart.t.0] as i64;
            d = d.max((h + 1) / 2);
        }
        d
    }

    // -- symbols --------------------------------------------------------------

    /// Identity-block symbol for orbital number l (doubled argument):
    /// (−1)^{2l}(2l+1)/(16π³) · 𝓛¹_{2l}(T²) e^{−T²/2}, an eigenfunction of
    /// l̂ with eigenvalue ħl, isotropic in n.
    pub fn identity_symbol_full(&self, two_l: i64) -> Result<CompleteSymbol, RepError> {
        if two_l < 0 {
            return Err(RepError::InvalidParameter(format!(
                "identity block needs 2l ≥ 0, got {two_l}"
            )));
        }
        let coeffs = laguerre_coeffs(two_l as u32, 1);
        let sign = if two_l % 2 == 0 { 1 } else { -1 };
        let pre = ScalarExact::pi_pow_half(-6) * sc(sign * (two_l + 1), 16);
        let mut terms = Vec::new();
        for (j, c) in coeffs.iter().enumerate() {
            let mut mono = Monomial(vec![0; self.chart.space.len()]);
            mono.0[self.chart.t.0] = 4 * j as i32;
            terms.push((mono, ScalarExact::rational(c.clone()) * pre.clone()));
        }
        Ok(CompleteSymbol::gaussian(
            self,
            RingElement::from_terms(&self.chart.space, terms),
        ))
    }

    /// The weightless total identity T²/(256π³), the Abel sum of all
    /// identity blocks.
    pub fn identity_total_symbol_full(&self) -> CompleteSymbol {
        CompleteSymbol::weightless(
            self.chart
                .t2()
                .mul_scalar(&(ScalarExact::pi_pow_half(-6) * sc(1, 256))),
        )
    }

    /// Basis symbol ρ̃_{αβ} built from the ground block by normalized
    /// raising words (left word for α, right word for β), at the canonical
    /// composition parameter.
    pub fn basis_symbol_full(
        &self,
        alpha: &BasisLabelFull,
        beta: &BasisLabelFull,
    ) -> Result<CompleteSymbol, RepError> {
        let sa = alpha.s_range().0;
        let sb = beta.s_range().0;
        self.basis_symbol_with_s(alpha, beta, sa, sb)
    }

    /// Same, at explicit composition parameters; the result is
    /// s-independent, which the tests verify directly.
    fn basis_symbol_with_s(
        &self,
        alpha: &BasisLabelFull,
        beta: &BasisLabelFull,
        s_a: i64,
        s_b: i64,
    ) -> Result<CompleteSymbol, RepError> {
        for (label, s) in [(alpha, s_a), (beta, s_b)] {
            let (lo, hi) = label.s_range();
            if s < lo || s > hi {
                return Err(RepError::InvalidIndex(format!(
                    "composition parameter {s} outside [{lo}, {hi}] for label {label:?}"
                )));
            }
        }
        let mut sym = self.identity_symbol_full(0)?;
        for (side, label, s) in [(Side::Left, alpha, s_a), (Side::Right, beta, s_b)] {
            for (xi, chi, p) in label.ladder_powers(s) {
                debug_assert!(p >= 0);
                if p == 0 {
                    continue;
                }
                let ladder = self.compound_ladder(xi, chi, Direction::Raise, side)?;
                for _ in 0..p {
                    sym = ladder.apply(&sym)?;
                }
            }
            sym = sym.mul_scalar(&ScalarExact::sqrt_rational(&label.norm_factorial().recip()));
        }
        Ok(sym)
    }

    // -- ladders and images -----------------------------------------------------

    /// The compound half-step ladder of channel (ξ, χ) ∈ {±1}², raising or
    /// lowering the orbital number by ½ on the chosen side.
    pub fn compound_ladder(
        &self,
        xi: i64,
        chi: i64,
        direction: Direction,
        side: Side,
    ) -> Result<CompoundLadder<'_>, RepError> {
        if xi.abs() != 1 || chi.abs() != 1 {
            return Err(RepError::InvalidParameter(format!(
                "channel indices must be ±1, got (ξ, χ) = ({xi}, {chi})"
            )));
        }
        let base = match direction {
            Direction::Raise => &self.raise_kernels[pm_idx(xi)][pm_idx(chi)],
            Direction::Lower => &self.lower_kernels[pm_idx(xi)][pm_idx(chi)],
        };
        let kernel = match side {
            Side::Left => base.clone(),
            Side::Right => base.conjugate(),
        };
        Ok(CompoundLadder { rep: self, kernel, direction, side })
    }

    /// The multiplication image of quaternion component λ_n, n = 0..3.
    pub fn quaternion_image(&self, n: usize) -> Result<QuaternionImage<'_>, RepError> {
        if n > 3 {
            return Err(RepError::InvalidIndex(format!(
                "quaternion component index must be 0..=3, got {n}"
            )));
        }
        Ok(QuaternionImage { rep: self, n })
    }

    // -- pairings ---------------------------------------------------------------

    /// The weighted pairing (f, g) = ħ⁻²∫dΛ ∮dn conj(f)·g. The momentum
    /// integral runs over the unit direction sphere with weight 1/(ħκ)², so
    /// the value is independent of the shell radius κ exactly when the
    /// integrand is homogeneous of degree zero in L′; any inhomogeneous
    /// contribution with a nonvanishing integral is rejected.
    pub fn inner_product_full(
        &self,
        f: &CompleteSymbol,
        g: &CompleteSymbol,
        kappa: &Rat,
    ) -> Result<ScalarExact, RepError> {
        if *kappa <= Rat::from_integer(0.into()) {
            return Err(RepError::InvalidParameter(format!(
                "momentum-shell radius must be positive, got {kappa}"
            )));
        }
        let prod = f.weyl().conj().mul_symbol(g.weyl());
        for (mono, _) in prod.body().iter_terms() {
            for gid in self.chart.angles {
                if mono.0[gid.0] != 0 {
                    return Err(RepError::Inadmissible(
                        "angle-dependent integrand in the surface pairing".into(),
                    ));
                }
            }
        }
        let mut groups: BTreeMap<i32, Vec<(Monomial, ScalarExact)>> = BTreeMap::new();
        for (mono, c) in prod.body().iter_terms() {
            let mut gam = mono.0[self.chart.s.0];
            for lpg in self.chart.lp {
                gam += 2 * mono.0[lpg.0];
            }
            groups
                .entry(gam)
                .or_default()
                .push((mono.clone(), c.clone()));
        }
        let dom = Domain::new().full_space(0).unit_sphere(1);
        let mut acc = ScalarExact::zero();
        for (gam, terms) in groups {
            let body = RingElement::from_terms(&self.chart.space, terms);
            let mut sub = WeylSymbol::new(body);
            for (blk, w) in prod.weights() {
                sub = sub.with_weight(*blk, w.clone());
            }
            let val = integrate_exact(&sub, &dom).map_err(RepError::from)?;
            if gam == 0 {
                acc = acc + val;
            } else if !val.is_zero() {
                return Err(RepError::Inadmissible(format!(
                    "integrand carries momentum homogeneity {gam}/2, so the pairing would \
                     depend on the shell radius κ = {kappa}"
                )));
            }
        }
        Ok(acc * ScalarExact::hbar_pow(-2))
    }

    /// Trace pairing against the constant symbol 1.
    pub fn pair_with_unit(&self, f: &CompleteSymbol) -> Result<ScalarExact, RepError> {
        let one = CompleteSymbol::weightless(RingElement::one(&self.chart.space));
        self.inner_product_full(&one, f, &rat(1, 1))
    }

    /// Normalized expectation value ⟨F̂⟩ = (1, F̂ρ̃)/(1, ρ̃).
    pub fn average(
        &self,
        observable: &DiffOp,
        state: &CompleteSymbol,
    ) -> Result<ScalarExact, RepError> {
        let num = self.pair_with_unit(&state.apply(observable))?;
        let den = self.pair_with_unit(state)?;
        if den.is_zero() {
            return Err(RepError::InvalidParameter(
                "state has zero trace pairing".into(),
            ));
        }
        if den.as_single_term().is_none() {
            return Err(RepError::Inadmissible(
                "trace pairing is not a single exact term; cannot normalize exactly".into(),
            ));
        }
        Ok(num.div_single(&den))
    }

    // -- matrix ↔ symbol maps ------------------------------------------------------

    /// Matrix → symbol: Σ ⟨α|F̂|β⟩ ρ̃_{αβ}.
    pub fn weyl_dir_full(&self, m: &FullMatrix) -> Result<CompleteSymbol, RepError> {
        let mut out = CompleteSymbol::weightless(RingElement::zero(&self.chart.space));
        for ((row, col), v) in m.iter() {
            let alpha = BasisLabelFull::new(row.0, row.1, row.2)?;
            let beta = BasisLabelFull::new(col.0, col.1, col.2)?;
            out = out.add(&self.basis_symbol_full(&alpha, &beta)?.mul_scalar(v));
        }
        Ok(out)
    }

    /// Symbol → matrix: project onto each basis block by the normalized
    /// lowering word and the ground pairing, then verify the finite
    /// reconstruction reproduces the input exactly.
    pub fn weyl_rev_full(&self, f: &CompleteSymbol) -> Result<FullMatrix, RepError> {
        let ground = self.identity_symbol_full(0)?;
        let n0 = self.inner_product_full(&ground, &ground, &rat(1, 1))?;
        let left = self.l_content(Side::Left, f.weyl())?;
        let mut out = FullMatrix::new();
        let mut recon = CompleteSymbol::weightless(RingElement::zero(&self.chart.space));
        for (two_la, fl) in left.iter() {
            let right = self.l_content(Side::Right, fl)?;
            for (two_lb, flr) in right.iter() {
                let piece = CompleteSymbol::wrap(flr.clone());
                for two_ma in magnetic_range(*two_la) {
                    for two_ka in magnetic_range(*two_la) {
                        let alpha = BasisLabelFull::new(*two_la, two_ma, two_ka)?;
                        for two_mb in magnetic_range(*two_lb) {
                            for two_kb in magnetic_range(*two_lb) {
                                let beta = BasisLabelFull::new(*two_lb, two_mb, two_kb)?;
                                let lowered = self.lowering_word(&alpha, &beta, &piece)?;
                                let c = self
                                    .inner_product_full(&ground, &lowered, &rat(1, 1))?
                                    .div_single(&n0);
                                if c.is_zero() {
                                    continue;
                                }
                                recon = recon
                                    .add(&self.basis_symbol_full(&alpha, &beta)?.mul_scalar(&c));
                                let prev = out.get(&alpha, &beta);
                                out.set(&alpha, &beta, prev + c);
                            }
                        }
                    }
                }
            }
        }
        if !recon.sub(f).is_zero() {
            return Err(RepError::Truncation(
                "basis expansion does not close on the given symbol".into(),
            ));
        }
        Ok(out)
    }

    /// Apply the normalized lowering word of (α, β) to a symbol.
    fn lowering_word(
        &self,
        alpha: &BasisLabelFull,
        beta: &BasisLabelFull,
        f: &CompleteSymbol,
    ) -> Result<CompleteSymbol, RepError> {
        let mut sym = f.clone();
        for (side, label) in [(Side::Left, alpha), (Side::Right, beta)] {
            let s = label.s_range().0;
            for (xi, chi, p) in label.ladder_powers(s) {
                if p == 0 {
                    continue;
                }
                let ladder = self.compound_ladder(xi, chi, Direction::Lower, side)?;
                for _ in 0..p {
                    sym = ladder.apply(&sym)?;
                    if sym.is_zero() {
                        return Ok(sym);
                    }
                }
            }
            sym = sym.mul_scalar(&ScalarExact::sqrt_rational(&label.norm_factorial().recip()));
        }
        Ok(sym)
    }

    /// The ⋆-scaled presentation.
    pub fn star_variant(&self) -> StarVariant<'_> {
        // factor = 256π³·T⁻², inverse = T²/(256π³)
        let factor = RingElement::gen_pow_half(&self.chart.space, self.chart.t, -4)
            .mul_scalar(&(ScalarExact::pi_pow_half(6) * sc(256, 1)));
        let inverse = self
            .chart
            .t2()
            .mul_scalar(&(ScalarExact::pi_pow_half(-6) * sc(1, 256)));
        StarVariant { rep: self, factor, inverse }
    }

    // -- adjoints and limits -------------------------------------------------------

    /// Exact adjoint residuals under the flat measure; see
    /// [`HermiticityReport`].
    pub fn hermiticity_report(&self) -> HermiticityReport {
        let m = Measure::Flat;
        let body_residuals =
            std::array::from_fn(|k| &self.body[k].adjoint(&m) - &self.body[k]);
        let cas = self.casimir_body();
        let casimir_residual = &cas.adjoint(&m) - &cas;
        let lab3_sym = (&self.lab[2] - &self.lab[2].conjugate()).scale(&sc(1, 2));
        let lab3_symmetrized_residual = &lab3_sym.adjoint(&m) - &lab3_sym;
        let lab_defect_residuals = std::array::from_fn(|k| {
            let defect = &self.lab[k].adjoint(&m) - &conj_flip(&self.lab[k]);
            &defect
                - &DiffOp::mult(
                    self.chart
                        .n_dir(k + 1)
                        .mul_scalar(&ScalarExact::hbar_pow(1)),
                )
        });
        HermiticityReport {
            body_residuals,
            casimir_residual,
            lab3_symmetrized_residual,
            lab_defect_residuals,
        }
    }

    /// Leading classical part of an orientation-chart operator under the
    /// scaling Λ = √(8L′/ħ)·λ with λ on the unit shell: selects the maximal
    /// scaling grade, requires it to be purely multiplicative, and returns
    /// its image in the quaternion chart. Operators whose leading grade
    /// retains derivatives or angle content have no such limit.
    pub fn classical_leading(&self, op: &DiffOp) -> Result<RingElement, RepError> {
        if op.is_zero() {
            return Ok(RingElement::zero(&self.quat.space));
        }
        struct Piece {
            deriv: DerivIdx,
            mono: Monomial,
            pi: i32,
            hb: i32,
            rad: u64,
            c: crate::scalar::CRat,
            lam_half: i64,
        }
        let mut best = i64::MIN;
        let mut pieces: Vec<(i64, Piece)> = Vec::new();
        for (idx, coeff) in op.iter_terms() {
            let mut dla = 0i64;
            for i in 0..4 {
                dla += idx.0[self.chart.la[i].0] as i64;
            }
            for (mono, sca) in coeff.iter_terms() {
                let mut lam_half = mono.0[self.chart.t.0] as i64;
                for i in 0..4 {
                    lam_half += 2 * mono.0[self.chart.la[i].0] as i64;
                }
                for (pi, hb, rad, c) in sca.iter_terms() {
                    let grade = lam_half - 2 * hb as i64 - 2 * dla;
                    if grade > best {
                        best = grade;
                        pieces.clear();
                    }
                    if grade == best {
                        pieces.push((
                            grade,
                            Piece {
                                deriv: idx.clone(),
                                mono: mono.clone(),
                                pi,
                                hb,
                                rad,
                                c: c.clone(),
                                lam_half,
                            },
                        ));
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, ScalarExact)> = Vec::new();
        for (_, p) in pieces {
            if p.deriv.order() != 0 {
                return Err(RepError::Algebra(AlgebraError::NoClassicalLimit(
                    "leading scaling grade retains derivatives; no multiplicative limit".into(),
                )));
            }
            for gid in self.chart.angles {
                if p.mono.0[gid.0] != 0 {
                    return Err(RepError::Algebra(AlgebraError::NoClassicalLimit(
                        "leading scaling grade depends on angle variables".into(),
                    )));
                }
            }
            if p.lam_half % 2 != 0 {
                return Err(RepError::Algebra(AlgebraError::NoClassicalLimit(
                    "leading scaling grade has half-integer configuration degree".into(),
                )));
            }
            let q8 = p.lam_half / 2;
            let mut mono = Monomial(vec![0; self.quat.space.len()]);
            for i in 0..4 {
                mono.0[self.quat.la[i].0] = p.mono.0[self.chart.la[i].0];
            }
            for i in 0..3 {
                mono.0[self.quat.lp[i].0] = p.mono.0[self.chart.lp[i].0];
            }
            mono.0[self.quat.s.0] = p.mono.0[self.chart.s.0] + q8 as i32;
            let scalar = ScalarExact::term(p.c, p.pi, p.hb, p.rad)
                * ScalarExact::rational(rat(8, 1)).pow_half(q8 as i32)
                * ScalarExact::hbar_pow_half(-(q8 as i32));
            terms.push((mono, scalar));
        }
        Ok(RingElement::from_terms(&self.quat.space, terms))
    }

    // -- verification suites ----------------------------------------------------

    /// Run one named verification suite; returns (check name, passed) pairs.
    pub fn verify_suite(&self, suite: VerifySuite) -> Vec<(String, bool)> {
        match suite {
            VerifySuite::Su2 => self.verify_su2(),
            VerifySuite::Ladders => self.verify_ladders(),
            VerifySuite::Hermiticity => self.verify_hermiticity(),
            VerifySuite::Invariance => self.verify_invariance(),
            VerifySuite::ClassicalLimit => self.verify_classical_limit(),
        }
    }

    fn verify_su2(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let eps = |i: usize, j: usize, k: usize| mq(k + 1, i + 1, j + 1);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let mut expect_body = DiffOp::zero(&self.chart.space);
                let mut expect_lab = DiffOp::zero(&self.chart.space);
                for k in 0..3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        expect_body = &expect_body
                            + &self.body[k].scale(&(sci(-e, 1) * ScalarExact::hbar_pow(1)));
                        expect_lab = &expect_lab
                            + &self.lab[k].scale(&(sci(e, 1) * ScalarExact::hbar_pow(1)));
                    }
                }
                out.push((
                    format!("[L{}, L{}] = -ihbar eps L (body)", i + 1, j + 1),
                    (&self.body[i].commutator(&self.body[j]) - &expect_body).is_zero(),
                ));
                out.push((
                    format!("[L'{}, L'{}] = +ihbar eps L' (lab)", i + 1, j + 1),
                    (&self.lab[i].commutator(&self.lab[j]) - &expect_lab).is_zero(),
                ));
            }
        }
        let cross = (0..3).all(|i| (0..3).all(|j| self.body[i].commutator(&self.lab[j]).is_zero()));
        out.push(("body-lab cross commutators vanish".into(), cross));
        let cb = self.casimir_body();
        out.push((
            "sum L^2 = sum L'^2".into(),
            (&cb - &self.casimir_lab()).is_zero(),
        ));
        let lshift =
            &self.l_op + &DiffOp::identity(&self.chart.space).scale(&ScalarExact::hbar_pow(1));
        out.push((
            "sum L^2 = l(l + hbar)".into(),
            (&cb - &self.l_op.compose(&lshift)).is_zero(),
        ));
        out
    }

    fn verify_ladders(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let a = |plus, dagger| self.aligned_ladder(plus, dagger);
        let one = DiffOp::identity(&self.chart.space);
        out.push((
            "[a+, a+^dag] = 1".into(),
            (&a(true, false).commutator(&a(true, true)) - &one).is_zero(),
        ));
        out.push((
            "[a-, a-^dag] = 1".into(),
            (&a(false, false).commutator(&a(false, true)) - &one).is_zero(),
        ));
        out.push((
            "[a-, a+^dag] = 0".into(),
            a(false, false).commutator(&a(true, true)).is_zero(),
        ));
        out.push((
            "[a+, a-] = 0".into(),
            a(true, false).commutator(&a(false, false)).is_zero(),
        ));
        // aligned-gauge reconstruction of the body momenta
        let zero = RingElement::zero(&self.chart.space);
        let dir3: [RingElement; 3] =
            [zero.clone(), zero, RingElement::one(&self.chart.space)];
        let l1 = self.chart.body_momentum_with_dir(1, &dir3);
        let l2 = self.chart.body_momentum_with_dir(2, &dir3);
        let l3 = self.chart.body_momentum_with_dir(3, &dir3);
        let raising = &l1 + &l2.scale(&sci(1, 1));
        let want = a(false, true)
            .compose(&a(true, false))
            .scale(&ScalarExact::hbar_pow(1));
        out.push(("L1 + iL2 = hbar a-^dag a+ (aligned)".into(), (&raising - &want).is_zero()));
        let n_diff = &a(true, true).compose(&a(true, false))
            - &a(false, true).compose(&a(false, false));
        out.push((
            "L3 = (hbar/2)(N+ - N-) (aligned)".into(),
            (&l3 - &n_diff.scale(&(ScalarExact::hbar_pow(1) * sc(1, 2)))).is_zero(),
        ));
        // square-root-chart ladders
        let b = |plus, dagger| self.sqrt_chart_ladder(plus, dagger);
        let one_q = DiffOp::identity(&self.q_space);
        out.push((
            "[b+, b+^dag] = 1".into(),
            (&b(true, false).commutator(&b(true, true)) - &one_q).is_zero(),
        ));
        out.push((
            "[b-, b-^dag] = 1".into(),
            (&b(false, false).commutator(&b(false, true)) - &one_q).is_zero(),
        ));
        out.push((
            "[b+, b-^dag] = 0".into(),
            b(true, false).commutator(&b(false, true)).is_zero(),
        ));
        // compound inversion and ground annihilation
        let ground = match self.identity_symbol_full(0) {
            Ok(g) => g,
            Err(_) => return out,
        };
        for xi in [1i64, -1] {
            for chi in [1i64, -1] {
                let ok = (|| -> Result<bool, RepError> {
                    let up = self
                        .compound_ladder(xi, chi, Direction::Raise, Side::Left)?
                        .apply(&ground)?;
                    let back = self
                        .compound_ladder(xi, chi, Direction::Lower, Side::Left)?
                        .apply(&up)?;
                    let killed = self
                        .compound_ladder(xi, chi, Direction::Lower, Side::Left)?
                        .apply(&ground)?;
                    Ok(back.sub(&ground).is_zero() && killed.is_zero())
                })()
                .unwrap_or(false);
                out.push((format!("lower after raise = id, ({xi}, {chi})"), ok));
            }
        }
        out
    }

    fn verify_hermiticity(&self) -> Vec<(String, bool)> {
        let r = self.hermiticity_report();
        vec![
            (
                "body momenta self-adjoint".into(),
                r.body_residuals.iter().all(DiffOp::is_zero),
            ),
            ("casimir self-adjoint".into(), r.casimir_residual.is_zero()),
            (
                "symmetrized lab L'3 self-adjoint".into(),
                r.lab3_symmetrized_residual.is_zero(),
            ),
            (
                "lab adjoint defect = hbar n_k".into(),
                r.lab_defect_residuals.iter().all(DiffOp::is_zero),
            ),
        ]
    }

    fn verify_invariance(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let s2 = DiffOp::mult(self.chart.s_pow(4));
        let mut euler = DiffOp::zero(&self.chart.space);
        for k in 1..4 {
            euler = &euler + &self.chart.d_lp(k).mul_coeff_left(&self.chart.p_ring(k));
        }
        let basis = [self.l_op.clone(), self.l_op.conjugate(), s2, euler];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for w in 0..3 {
            let mut word = DiffOp::zero(&self.chart.space);
            for i in 0..basis.len() {
                word = &word + &basis[i].scale(&sc(next(), 1));
                for j in i..basis.len() {
                    word = &word + &basis[i].compose(&basis[j]).scale(&sc(next(), 1));
                }
            }
            let ok = self
                .body
                .iter()
                .chain(self.lab.iter())
                .all(|m| word.commutator(m).is_zero());
            out.push((format!("random invariant word {} commutes with all momenta", w + 1), ok));
        }
        out
    }

    fn verify_classical_limit(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let q = &self.quat;
        let s_ring = RingElement::gen_pow_half(&q.space, q.s, 2);
        out.push((
            "l -> S".into(),
            self.classical_leading(&self.l_op)
                .map(|r| (&r - &s_ring).is_zero())
                .unwrap_or(false),
        ));
        for k in 1..4usize {
            let mut expect = RingElement::zero(&q.space);
            for s_i in 1..4 {
                expect = &expect + &(&q.q_poly(k, s_i) * &q.p(s_i));
            }
            out.push((
                format!("L{k} -> sum Q lambda lambda n"),
                self.classical_leading(&self.body[k - 1])
                    .map(|r| (&r - &expect).is_zero())
                    .unwrap_or(false),
            ));
            out.push((
                format!("L'{k} -> L'{k}"),
                self.classical_leading(&self.lab[k - 1])
                    .map(|r| (&r - &q.p(k)).is_zero())
                    .unwrap_or(false),
            ));
        }
        out.push((
            "lambda0 image -> lambda0 on the unit shell".into(),
            self.classical_channel_sum(0)
                .map(|r| (&r - &q.lam(0)).is_zero())
                .unwrap_or(false),
        ));
        out
    }

    /// The λ_n channel sum with the spectral staging replaced by its
    /// classical values, reduced by [`Self::classical_leading`]; used by the
    /// classical-limit suite and the tests.
    fn classical_channel_sum(&self, n: usize) -> Result<RingElement, RepError> {
        let c = &self.chart;
        let sg = sig(n);
        // classical stand-ins: raising staging → 1 (already in the stored
        // kernel), lowering staging → √(ħ/2)·S^{−1/2}, sandwich → ½√(ħ/S)
        let lower_stage = c
            .s_pow(-1)
            .mul_scalar(&(ScalarExact::hbar_pow_half(1) * ScalarExact::sqrt_rational(&rat(1, 2))));
        let sand = c
            .s_pow(-1)
            .mul_scalar(&(ScalarExact::hbar_pow_half(1) * sc(1, 2)));
        let channel = |xi: i64, chi: i64, raise: bool| -> DiffOp {
            if raise {
                self.raise_kernels[pm_idx(xi)][pm_idx(chi)].clone()
            } else {
                self.lower_kernels[pm_idx(xi)][pm_idx(chi)]
                    .compose(&DiffOp::mult(lower_stage.clone()))
            }
        };
        let mut total = DiffOp::zero(&c.space);
        let ph = [
            (phase_pi4(1) * i_pow(-(n as i64)), -1i64, -sg, true),
            (phase_pi4(if n % 2 == 0 { 1 } else { -1 }), 1, sg, true),
            (-phase_pi4(if n % 2 == 0 { -1 } else { 1 }), 1, sg, false),
            (-(phase_pi4(-1) * i_pow(n as i64)), -1, -sg, false),
        ];
        for (phase, xi, chi, raise) in ph {
            total = &total + &channel(xi, chi, raise).scale(&phase);
        }
        let sandwich = DiffOp::mult(sand);
        let dressed = sandwich
            .compose(&total)
            .compose(&sandwich)
            .scale(&ScalarExact::i());
        self.classical_leading(&dressed)
    }
}

fn check_axis(k: usize) -> Result<(), RepError> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(RepError::InvalidIndex(format!(
            "momentum axis must be 1..=3, got {k}"
        )))
    }
}

fn magnetic_range(two_l: i64) -> impl Iterator<Item = i64> {
    (-two_l..=two_l).step_by(2)
}

/// Σ (−1)^{|α|} conj(c_α) ∂^α — the transpose-conjugate without the
/// integration-by-parts coefficient derivatives.
fn conj_flip(op: &DiffOp) -> DiffOp {
    let mut out = DiffOp::zero(op.space());
    for (idx, c) in op.iter_terms() {
        let sign = if idx.order() % 2 == 0 { 1 } else { -1 };
        out = &out + &DiffOp::term(c.conj().mul_scalar(&sc(sign, 1)), idx.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// lab-frame transform
// ---------------------------------------------------------------------------

/// The float-level frame transform q = |p|·λ between lab quaternions and
/// momentum-aligned ones: λ rotates the lab third axis onto the momentum
/// direction using a fixed gauge section (the lab first axis projected
/// orthogonal to p, with the second axis completing a right-handed triad),
/// and the gauge freedom is a rotation about the aligned axis.
#[derive(Clone, Debug)]
pub struct FrameTransform {
    q: Quaternion<f64>,
}

impl FrameTransform {
    /// Build the transform for a nonzero lab momentum vector.
    pub fn from_lab_momentum(p: [f64; 3]) -> Result<Self, RepError> {
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(RepError::InvalidParameter(
                "frame transform needs a finite nonzero momentum".into(),
            ));
        }
        let e3 = [p[0] / norm, p[1] / norm, p[2] / norm];
        let mut e1 = [1.0 - e3[0] * e3[0], -e3[0] * e3[1], -e3[0] * e3[2]];
        let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
        if n1 < 1e-12 {
            e1 = [-e3[1] * e3[0], 1.0 - e3[1] * e3[1], -e3[1] * e3[2]];
        }
        let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
        let e1 = [e1[0] / n1, e1[1] / n1, e1[2] / n1];
        let e2 = [
            e3[1] * e1[2] - e3[2] * e1[1],
            e3[2] * e1[0] - e3[0] * e1[2],
            e3[0] * e1[1] - e3[1] * e1[0],
        ];
        let rot = RotationMatrix([e1, e2, e3]);
        let lambda = quaternion_from_rotation(&rot);
        Ok(FrameTransform {
            q: Quaternion(lambda.0.map(|c| c * norm)),
        })
    }

    pub fn quaternion(&self) -> &Quaternion<f64> {
        &self.q
    }

    /// The lab momentum encoded in the transform, |q| times the aligned
    /// third axis.
    pub fn lab_momentum(&self) -> [f64; 3] {
        let norm = self.q.norm();
        let m = dcm(&self.q);
        [m.0[2][0] / norm, m.0[2][1] / norm, m.0[2][2] / norm]
    }

    /// Map a lab-chart quaternion to its frame-relative version,
    /// ϡ = q̄ ∗ Λ / |q|.
    pub fn to_frame(&self, lab: &Quaternion<f64>) -> Quaternion<f64> {
        let prod = qmul(&qconj(&self.q), lab);
        let norm = self.q.norm();
        Quaternion(prod.0.map(|c| c / norm))
    }

    /// Inverse of [`Self::to_frame`]: Λ = q ∗ ϡ / |q|.
    pub fn from_frame(&self, rel: &Quaternion<f64>) -> Quaternion<f64> {
        let prod = qmul(&self.q, rel);
        let norm = self.q.norm();
        Quaternion(prod.0.map(|c| c / norm))
    }

    /// The same physical transform in a different gauge: right-multiply by
    /// a rotation of φ about the aligned axis.
    pub fn gauge_rotated(&self, phi: f64) -> Self {
        let g = Quaternion([(phi / 2.0).cos(), 0.0, 0.0, (phi / 2.0).sin()]);
        FrameTransform { q: qmul(&self.q, &g) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::wigner_3j;
    use std::sync::OnceLock;

    fn rep() -> &'static CompleteRep {
        static REP: OnceLock<CompleteRep> = OnceLock::new();
        REP.get_or_init(CompleteRep::new)
    }

    fn assert_sym_eq(a: &CompleteSymbol, b: &CompleteSymbol, what: &str) {
        assert!(
            a.sub(b).is_zero(),
            "{what}: symbols differ\n  left: {}\n  right: {}",
            a.weyl(),
            b.weyl()
        );
    }

    fn assert_suite_passes(suite: VerifySuite) {
        let results = rep().verify_suite(suite);
        assert!(!results.is_empty());
        let failures: Vec<&str> = results
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect();
        assert!(failures.is_empty(), "suite {suite:?} failed: {failures:?}");
    }

    fn label(two_l: i64, two_m: i64, two_k: i64) -> BasisLabelFull {
        BasisLabelFull::new(two_l, two_m, two_k).unwrap()
    }

    fn hbar2(n: i64, d: i64) -> ScalarExact {
        ScalarExact::hbar_pow(2) * sc(n, d)
    }

    /// 1/(64π³ħ²), the squared pairing norm of the ground identity block.
    fn ground_norm() -> ScalarExact {
        ScalarExact::pi_pow_half(-6) * ScalarExact::hbar_pow(-2) * sc(1, 64)
    }

    #[test]
    fn su2_suite_passes() {
        assert_suite_passes(VerifySuite::Su2);
    }

    #[test]
    fn ladder_suite_passes() {
        assert_suite_passes(VerifySuite::Ladders);
    }

    #[test]
    fn hermiticity_suite_passes() {
        assert_suite_passes(VerifySuite::Hermiticity);
        assert!(rep().hermiticity_report().all_zero());
    }

    #[test]
    fn invariance_suite_passes() {
        assert_suite_passes(VerifySuite::Invariance);
    }

    #[test]
    fn classical_limit_suite_passes() {
        assert_suite_passes(VerifySuite::ClassicalLimit);
    }

    #[test]
    fn quaternion_liouvillian_is_divergence_free_and_conserves_norm() {
        let r = rep();
        let inertia = InertiaTensor::new([rat(1, 1), rat(3, 2), rat(2, 1)]).unwrap();
        let op = r.classical_liouvillian_quaternion(&inertia);
        // first-order fields: adjoint + op = −(divergence)
        assert!(
            (&op.adjoint(&Measure::Flat) + &op).is_zero(),
            "flow must be divergence-free"
        );
        // Σλ² is invariant along the flow
        let mut norm2 = RingElement::zero(r.a_space());
        for m in 0..4 {
            norm2 = &norm2 + &(&r.quat.lam(m) * &r.quat.lam(m));
        }
        assert!(op.apply_poly(&norm2).is_zero(), "flow must conserve the norm");
    }

    #[test]
    fn quaternion_liouvillian_matches_kinematics_numerically() {
        let r = rep();
        let inertia_r = [rat(1, 1), rat(3, 2), rat(2, 1)];
        let inertia_f = [1.0, 1.5, 2.0];
        let op = r.classical_liouvillian_quaternion(&InertiaTensor::new(inertia_r).unwrap());
        // the field components as polynomials in (λ, L′)
        let fields: Vec<RingElement> = (0..4).map(|n| op.apply_poly(&r.quat.lam(n))).collect();
        let p_lab = [0.7f64, -0.4, 1.1];
        let field_at = |lam: &Quaternion<f64>| -> [f64; 4] {
            // point layout: (λ0..λ3, r, L′1..3, S)
            let t = lam.norm();
            let s = (p_lab[0] * p_lab[0] + p_lab[1] * p_lab[1] + p_lab[2] * p_lab[2]).sqrt();
            let pt = [
                lam.0[0], lam.0[1], lam.0[2], lam.0[3], t, p_lab[0], p_lab[1], p_lab[2], s,
            ];
            std::array::from_fn(|n| {
                let v = fields[n].eval_c64(&pt, 1.0);
                assert!(v.im.abs() < 1e-12);
                v.re
            })
        };
        let kinematic_at = |lam: &Quaternion<f64>| -> [f64; 4] {
            let q = dcm(lam);
            let nrm2 = lam.norm_sq();
            let mut omega = [0.0f64; 3];
            for k in 0..3 {
                for j in 0..3 {
                    omega[k] += q.0[k][j] * p_lab[j] / nrm2;
                }
                omega[k] /= inertia_f[k];
            }
            // λ̇ = ½ λ ∗ (0, ω), with the quadratic form restoring the ‖λ‖² scale
            let w = Quaternion([0.0, omega[0] * nrm2, omega[1] * nrm2, omega[2] * nrm2]);
            let dot = qmul(lam, &w);
            std::array::from_fn(|n| 0.5 * dot.0[n])
        };
        let start = Quaternion([0.5f64, -0.5, 0.5, 0.5]);
        assert!(start.is_unit(1e-12));
        // pointwise agreement of the two presentations of the field
        for q in [
            start.clone(),
            Quaternion([1.0, 0.0, 0.0, 0.0]),
            Quaternion([0.36, 0.48, 0.6, 0.52]).normalized(),
        ] {
            let a = field_at(&q);
            let b = kinematic_at(&q);
            for n in 0..4 {
                assert!(
                    (a[n] - b[n]).abs() < 1e-12,
                    "field component {n} mismatch: {} vs {}",
                    a[n],
                    b[n]
                );
            }
        }
        // RK4 along the flow: unit norm and rotational energy are conserved
        let energy = |lam: &Quaternion<f64>| -> f64 {
            let q = dcm(lam);
            let mut e = 0.0;
            for k in 0..3 {
                let mut pk = 0.0;
                for j in 0..3 {
                    pk += q.0[k][j] * p_lab[j];
                }
                e += pk * pk / (2.0 * inertia_f[k]);
            }
            e
        };
        let e0 = energy(&start);
        let mut lam = start;
        let dt = 1e-3;
        for _ in 0..2000 {
            let k1 = field_at(&lam);
            let at = |base: &Quaternion<f64>, k: &[f64; 4], h: f64| {
                Quaternion(std::array::from_fn(|n| base.0[n] + h * k[n]))
            };
            let k2 = field_at(&at(&lam, &k1, dt / 2.0));
            let k3 = field_at(&at(&lam, &k2, dt / 2.0));
            let k4 = field_at(&at(&lam, &k3, dt));
            lam = Quaternion(std::array::from_fn(|n| {
                lam.0[n] + dt / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n])
            }));
        }
        assert!(
            (lam.norm() - 1.0).abs() < 1e-9,
            "norm drifted to {}",
            lam.norm()
        );
        let e1 = energy(&lam);
        assert!(
            ((e1 - e0) / e0).abs() < 1e-9,
            "energy drifted from {e0} to {e1}"
        );
    }

    #[test]
    fn momentum_shift_family_structure() {
        let r = rep();
        let mom: Vec<DiffOp> = (1..4)
            .map(|k| r.bopp_a(BoppAKind::Momentum(k)).unwrap().op)
            .collect();
        let comp: Vec<DiffOp> = (0..4)
            .map(|j| r.bopp_a(BoppAKind::Component(j)).unwrap().op)
            .collect();
        let norm = r.bopp_a(BoppAKind::Normalizer).unwrap().op;
        // su(2) among the momentum images
        for i in 0..3 {
            for j in 0..3 {
                let mut expect = DiffOp::zero(r.a_space());
                for k in 0..3 {
                    let e = mq(k + 1, i + 1, j + 1);
                    if e != 0 {
                        expect = &expect
                            + &mom[k].scale(&(sci(-e, 1) * ScalarExact::hbar_pow(1)));
                    }
                }
                assert!(
                    (&mom[i].commutator(&mom[j]) - &expect).is_zero(),
                    "momentum bracket ({i}, {j})"
                );
            }
        }
        // the norm operator is central for the family
        for m in &mom {
            assert!(norm.commutator(m).is_zero());
        }
        for c in &comp {
            assert!(norm.commutator(c).is_zero());
        }
        // components rotate as a quaternion multiplet
        for k in 0..3 {
            for j in 0..4 {
                let mut expect = DiffOp::zero(r.a_space());
                for m in 0..4 {
                    let e = mq(j, m, k + 1);
                    if e != 0 {
                        expect = &expect
                            + &comp[m]
                                .scale(&(sci(-e, 2) * ScalarExact::hbar_pow(1)));
                    }
                }
                assert!(
                    (&mom[k].commutator(&comp[j]) - &expect).is_zero(),
                    "component rotation ({k}, {j})"
                );
            }
        }
        // normalizer bookkeeping
        assert!(!r.bopp_a(BoppAKind::Momentum(1)).unwrap().pending_normalizer);
        assert!(!r.bopp_a(BoppAKind::Normalizer).unwrap().pending_normalizer);
        assert!(r.bopp_a(BoppAKind::Component(0)).unwrap().pending_normalizer);
        // ħ → 0 limits are the classical multiplication operators
        for k in 0..3 {
            let lim = mom[k].classical_limit().unwrap();
            assert!((&lim - &DiffOp::mult(r.quat.w_row(k + 1))).is_zero());
        }
        for j in 0..4 {
            let lim = comp[j].classical_limit().unwrap();
            assert!((&lim - &DiffOp::mult(r.quat.lam(j))).is_zero());
        }
    }

    #[test]
    fn identity_blocks_are_orbital_eigenfunctions() {
        let r = rep();
        for two_l in 0..=3i64 {
            let id = r.identity_symbol_full(two_l).unwrap();
            let expect = id.mul_scalar(&(ScalarExact::hbar_pow(1) * sc(two_l, 2)));
            assert_sym_eq(
                &id.apply(&r.l_number()),
                &expect,
                &format!("orbital number on identity block 2l = {two_l}"),
            );
        }
        // the ground block is the bare Gaussian over 16π³
        let ground = r.identity_symbol_full(0).unwrap();
        let expect = CompleteSymbol::gaussian(
            r,
            RingElement::one(r.space()).mul_scalar(&(ScalarExact::pi_pow_half(-6) * sc(1, 16))),
        );
        assert_sym_eq(&ground, &expect, "ground identity block");
        assert!(ground.weyl().weight_on(0).is_some());
        assert!(ground.weyl().weight_on(1).is_none());
    }

    #[test]
    fn identity_block_norms_and_overlaps() {
        let r = rep();
        let n0 = ground_norm();
        for two_l in 0..=2i64 {
            let id = r.identity_symbol_full(two_l).unwrap();
            let nn = r.inner_product_full(&id, &id, &rat(1, 1)).unwrap();
            let expect = n0.clone() * sc((two_l + 1).pow(3), 1);
            assert!(
                (nn.clone() - expect.clone()).is_zero(),
                "norm of identity block 2l = {two_l}: {nn} vs {expect}"
            );
        }
        for (a, b) in [(0i64, 1i64), (0, 2), (1, 2)] {
            let ia = r.identity_symbol_full(a).unwrap();
            let ib = r.identity_symbol_full(b).unwrap();
            assert!(
                r.inner_product_full(&ia, &ib, &rat(1, 1)).unwrap().is_zero(),
                "blocks {a} and {b} must be orthogonal"
            );
        }
    }

    #[test]
    fn label_validation_rejects_bad_input() {
        assert!(matches!(
            BasisLabelFull::new(-1, 0, 0),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            BasisLabelFull::new(1, 3, 1),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            BasisLabelFull::new(2, 1, 0),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            rep().identity_symbol_full(-2),
            Err(RepError::InvalidParameter(_))
        ));
        assert!(matches!(
            rep().bopp_b(BoppBKind::Body(0)),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            rep().bopp_b(BoppBKind::Lab(4)),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            rep().bopp_a(BoppAKind::Component(5)),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            rep().quaternion_image(4),
            Err(RepError::InvalidIndex(_))
        ));
        assert!(matches!(
            rep().compound_ladder(0, 1, Direction::Raise, Side::Left),
            Err(RepError::InvalidParameter(_))
        ));
    }
}
