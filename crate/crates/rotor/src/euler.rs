//! Phase-space quantizer on the body-frame angular-momentum space
//! {L₁, L₂, L₃}.
//!
//! The left/right operator images of the angular-momentum components split
//! into a real and an imaginary part,
//!
//! ```text
//!     L_im,k = (ħ/2) Σ_{i,j} ε_{i,j,k} L_i ∂/∂L_j ,
//!     L_re,k = L_k + (ħ²/16)(−2 Σ_i L_i ∂_i ∂_k + L_k Δ + c₁ ∂_k + ξ² L_k/L²),
//!     L_left,k = L_re,k + i·L_im,k ,    L_right,k = (L_left,k)* ,
//! ```
//!
//! parametrized by two real constants (c₁, ξ). All admissible parameter
//! choices reproduce the same commutator table; c₁ = −3 is the unique
//! Hermitian choice, and ξ = ½ gives the non-singular closed forms used for
//! exact basis generation. The quantum generator of free-top motion is
//! ℒ̂ = 2 Σ_k L_re,k L_im,k/(ħ I_k).
//!
//! Basis symbols ρ̃_{l,k₁;l,k₂} represent the reduced projectors
//! |l,k₁⟩⟨l,k₂| (traced over the laboratory projection quantum number);
//! they are generated exactly by ladder powers acting on the closed-form
//! top-state symbol and satisfy ladder, eigenvalue, and orthonormality
//! identities that the tests check with exact arithmetic. The isotropic
//! combinations ρ̃_I,l = Σ_k ρ̃_{l,k;l,k} have closed forms built on
//! generalized Laguerre polynomials; their formal sum over l is the symbol
//! of the identity, 1/(ħ√(πL)).
//!
//! A non-unitary rescaling F̂ ↦ L^η F̂ L^{−η}, ρ̃ ↦ (ħ²πL)^η ρ̃ connects the
//! named parameter presets; η = +½ lands in the ⋆-form, where the symbol of
//! the identity is the constant 1 and a star product of symbols is defined
//! through the matrix isomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, Zero};

use crate::diffop::{DerivIdx, DiffOp, Measure};
use crate::error::{AlgebraError, RepError};
use crate::integrate::{integrate_exact, Domain};
use crate::quat::{epsilon3, InertiaTensor};
use crate::ring::{GenId, Monomial, RingElement, SpaceBuilder, VariableSpace};
use crate::scalar::{pow_rat, rat, Rat, ScalarExact};
use crate::special::{
    binomial, factorial, gamma_f64, kummer_u, laguerre_coeffs, laguerre_f64,
};
use crate::symbol::{op_apply, Weight, WeylSymbol};

/// Representation parameters (c₁, ξ).
///
/// Named presets:
/// - `hermitian()`: (−3, ½) — Hermitian images, exact basis construction;
/// - `normalized_average()`: (−4, 0) — averages against the flat density;
/// - `star()`: (−2, 0) — the ⋆-form, identity symbol ≡ 1.
#[derive(Clone, PartialEq, Debug)]
pub struct EulerParams {
    pub c1: Rat,
    pub xi: Rat,
}

impl EulerParams {
    pub fn new(c1: Rat, xi: Rat) -> Self {
        EulerParams { c1, xi }
    }

    pub fn hermitian() -> Self {
        Self::new(rat(-3, 1), rat(1, 2))
    }

    pub fn normalized_average() -> Self {
        Self::new(rat(-4, 1), rat(0, 1))
    }

    pub fn star() -> Self {
        Self::new(rat(-2, 1), rat(0, 1))
    }
}

/// Which operator image to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoppKind {
    Imag,
    Real,
    Left,
    Right,
}

/// Basis label (l; k₁, k₂) stored in half-units: l ≥ 0, |kᵢ| ≤ l and
/// l − kᵢ ∈ ℤ.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BasisLabel {
    two_l: i32,
    two_k1: i32,
    two_k2: i32,
}

impl BasisLabel {
    pub fn new(two_l: i32, two_k1: i32, two_k2: i32) -> Result<Self, RepError> {
        if two_l < 0 {
            return Err(RepError::InvalidIndex(format!("2l = {two_l} < 0")));
        }
        for two_k in [two_k1, two_k2] {
            if two_k.abs() > two_l || (two_l - two_k) % 2 != 0 {
                return Err(RepError::InvalidIndex(format!(
                    "2k = {two_k} incompatible with 2l = {two_l}"
                )));
            }
        }
        Ok(BasisLabel {
            two_l,
            two_k1,
            two_k2,
        })
    }

    pub fn two_l(&self) -> i32 {
        self.two_l
    }

    pub fn two_k1(&self) -> i32 {
        self.two_k1
    }

    pub fn two_k2(&self) -> i32 {
        self.two_k2
    }
}

/// The {L₁,L₂,L₃} representation: variable space plus the operator and
/// symbol constructors.
pub struct EulerRep {
    space: Arc<VariableSpace>,
    l: [GenId; 3],
    s: GenId,
}

impl Default for EulerRep {
    fn default() -> Self {
        Self::new()
    }
}

impl EulerRep {
    pub fn new() -> Self {
        let mut b = SpaceBuilder::new();
        let (ls, s) = b.block_with_radial(&["L1", "L2", "L3"], "S");
        let space = b.build();
        EulerRep {
            space,
            l: [ls[0], ls[1], ls[2]],
            s,
        }
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    /// Generator id of L_k, k ∈ 1..=3.
    pub fn l_gen(&self, k: usize) -> GenId {
        self.l[k - 1]
    }

    pub fn s_gen(&self) -> GenId {
        self.s
    }

    fn l_ring(&self, k: usize) -> RingElement {
        RingElement::gen(&self.space, self.l[k - 1])
    }

    fn d_idx(&self, orders: &[(GenId, u16)]) -> DerivIdx {
        let mut v = vec![0u16; self.space.len()];
        for &(g, o) in orders {
            v[g.0] += o;
        }
        DerivIdx(v)
    }

    /// L_im,k = (ħ/2) Σ ε_{i,j,k} L_i ∂_j (c₁, ξ drop out).
    fn bopp_im(&self, k: usize) -> DiffOp {
        let mut out = DiffOp::zero(&self.space);
        for i in 1..=3usize {
            for j in 1..=3usize {
                let e = epsilon3(i, j, k);
                if e == 0 {
                    continue;
                }
                let c = ScalarExact::hbar_pow_half(2)
                    * ScalarExact::rational(rat(e as i64, 2));
                out = out
                    + DiffOp::term(
                        self.l_ring(i).mul_scalar(&c),
                        self.d_idx(&[(self.l[j - 1], 1)]),
                    );
            }
        }
        out
    }

    /// L_re,k = L_k + (ħ²/16)(−2ΣL_i∂_i∂_k + L_kΔ + c₁∂_k + ξ²L_k/L²).
    fn bopp_re(&self, k: usize, params: &EulerParams) -> DiffOp {
        let gk = self.l[k - 1];
        let mut corr = DiffOp::zero(&self.space);
        for i in 1..=3usize {
            corr = corr
                + DiffOp::term(
                    self.l_ring(i).mul_scalar(&ScalarExact::integer(-2)),
                    self.d_idx(&[(self.l[i - 1], 1), (gk, 1)]),
                );
            corr = corr + DiffOp::term(self.l_ring(k), self.d_idx(&[(self.l[i - 1], 2)]));
        }
        corr = corr
            + DiffOp::term(
                RingElement::scalar(&self.space, ScalarExact::rational(params.c1.clone())),
                self.d_idx(&[(gk, 1)]),
            );
        if !params.xi.is_zero() {
            let xi2 = ScalarExact::rational(&params.xi * &params.xi);
            corr = corr
                + DiffOp::mult(self.l_ring(k).mul_gen_pow(self.s, -4).mul_scalar(&xi2));
        }
        let h2_16 = ScalarExact::hbar_pow(2) * ScalarExact::rational(rat(1, 16));
        DiffOp::mult(self.l_ring(k)) + corr.scale(&h2_16)
    }

    /// Operator image of L_k, k ∈ 1..=3.
    pub fn bopp(&self, kind: BoppKind, k: usize, params: &EulerParams) -> DiffOp {
        assert!((1..=3).contains(&k), "component index out of range");
        match kind {
            BoppKind::Imag => self.bopp_im(k),
            BoppKind::Real => self.bopp_re(k, params),
            BoppKind::Left => {
                self.bopp_re(k, params) + self.bopp_im(k).scale(&ScalarExact::i())
            }
            BoppKind::Right => self.bopp(BoppKind::Left, k, params).conjugate(),
        }
    }

    /// L̂² as Σ_k L_left,k², which coincides with the right-image square.
    pub fn l_squared(&self, params: &EulerParams) -> DiffOp {
        let mut out = DiffOp::zero(&self.space);
        for k in 1..=3 {
            let a = self.bopp(BoppKind::Left, k, params);
            out = out + a.compose(&a);
        }
        out
    }

    /// Quantum generator of free-top motion, ℒ̂ = 2Σ_k L_re,k L_im,k/(ħI_k).
    pub fn liouvillian(&self, inertia: &InertiaTensor<Rat>, params: &EulerParams) -> DiffOp {
        let mut out = DiffOp::zero(&self.space);
        for k in 1..=3usize {
            let c = ScalarExact::hbar_pow(-1)
                * ScalarExact::rational(rat(2, 1) / inertia.principal()[k - 1].clone());
            out = out
                + self
                    .bopp_re(k, params)
                    .compose(&self.bopp_im(k))
                    .scale(&c);
        }
        out
    }

    /// Isotropic symbol ρ̃_I,l of the l-block identity (ξ = ½ closed form):
    /// (4/(ħ√(πL)))·(−1)^{2l}·e^{−4L/ħ}·𝓛⁽¹⁾_{2l}(8L/ħ).
    pub fn identity_symbol(&self, two_l: i32) -> Result<WeylSymbol, RepError> {
        if two_l < 0 {
            return Err(RepError::InvalidParameter(format!(
                "identity block needs 2l ≥ 0, got {two_l}"
            )));
        }
        let coeffs = laguerre_coeffs(two_l as u32, 1);
        let sign = if two_l % 2 == 0 { 1 } else { -1 };
        let mut terms = Vec::new();
        for (m, cm) in coeffs.iter().enumerate() {
            let c = ScalarExact::rational(cm * rat(4 * sign, 1) * pow_rat(&rat(8, 1), m as i32))
                * ScalarExact::hbar_pow(-1 - m as i32)
                * ScalarExact::pi_pow_half(-1);
            let mut mono = Monomial(vec![0; self.space.len()]);
            mono.0[self.s.0] = 2 * m as i32 - 1;
            terms.push((mono, c));
        }
        Ok(WeylSymbol::new(RingElement::from_terms(&self.space, terms))
            .with_weight(0, self.gaussian_weight()))
    }

    fn gaussian_weight(&self) -> Weight {
        Weight::ExpRadial(ScalarExact::integer(-4) * ScalarExact::hbar_pow(-1))
    }

    /// Symbol of the full reduced identity, 1/(ħ√(πL)) (the Abel sum of all
    /// ρ̃_I,l blocks).
    pub fn identity_total_symbol(&self) -> WeylSymbol {
        let c = ScalarExact::hbar_pow(-1) * ScalarExact::pi_pow_half(-1);
        WeylSymbol::new(
            RingElement::gen_pow_half(&self.space, self.s, -1).mul_scalar(&c),
        )
    }

    /// Closed form of ρ̃_{l,l;l,l}:
    /// (4/(ħ√(πL)))·(−1)^{2l}·e^{−4L/ħ}·𝓛_{2l}[4(L+L₃)/ħ].
    fn top_projector_symbol(&self, two_l: i32) -> WeylSymbol {
        let coeffs = laguerre_coeffs(two_l as u32, 0);
        let sign = if two_l % 2 == 0 { 1 } else { -1 };
        let mut terms = Vec::new();
        for (m, cm) in coeffs.iter().enumerate() {
            let base = ScalarExact::rational(
                cm * rat(4 * sign, 1) * pow_rat(&rat(4, 1), m as i32),
            ) * ScalarExact::hbar_pow(-1 - m as i32)
                * ScalarExact::pi_pow_half(-1);
            for j in 0..=m {
                let c = base.clone()
                    * ScalarExact::rational(Rat::from(binomial(m as u64, j as u64)));
                let mut mono = Monomial(vec![0; self.space.len()]);
                mono.0[self.s.0] = 2 * j as i32 - 1;
                mono.0[self.l[2].0] = (m - j) as i32;
                terms.push((mono, c));
            }
        }
        WeylSymbol::new(RingElement::from_terms(&self.space, terms))
            .with_weight(0, self.gaussian_weight())
    }

    /// L_left,1 + i·L_left,2 (lowers k₁) or L_right,1 − i·L_right,2
    /// (lowers k₂). `left` picks the side.
    fn ladder_lower(&self, left: bool, params: &EulerParams) -> DiffOp {
        if left {
            self.bopp(BoppKind::Left, 1, params)
                + self.bopp(BoppKind::Left, 2, params).scale(&ScalarExact::i())
        } else {
            self.bopp(BoppKind::Right, 1, params)
                + self
                    .bopp(BoppKind::Right, 2, params)
                    .scale(&(-ScalarExact::i()))
        }
    }

    /// L_left,1 − i·L_left,2 (raises k₁) or L_right,1 + i·L_right,2
    /// (raises k₂).
    fn ladder_raise(&self, left: bool, params: &EulerParams) -> DiffOp {
        if left {
            self.bopp(BoppKind::Left, 1, params)
                + self
                    .bopp(BoppKind::Left, 2, params)
                    .scale(&(-ScalarExact::i()))
        } else {
            self.bopp(BoppKind::Right, 1, params)
                + self.bopp(BoppKind::Right, 2, params).scale(&ScalarExact::i())
        }
    }

    /// Exact symbol of the reduced projector |l,k₁⟩⟨l,k₂|, built by lowering
    /// the closed-form top state with
    ///
    /// ```text
    ///   ρ̃_{l,k₁;l,k₂} = c·(L_left,1+iL_left,2)^{l−k₁}
    ///                     (L_right,1−iL_right,2)^{l−k₂} ρ̃_{l,l;l,l},
    ///   c = ħ^{k₁+k₂−2l}/(2l)!·√[(l+k₁)!(l+k₂)!/((l−k₁)!(l−k₂)!)] .
    /// ```
    ///
    /// Defined at the Hermitian preset (−3, ½); other presets are reached by
    /// `rescale_symbol`.
    pub fn basis_symbol(
        &self,
        label: &BasisLabel,
        params: &EulerParams,
    ) -> Result<WeylSymbol, RepError> {
        if *params != EulerParams::hermitian() {
            return Err(RepError::InvalidParameter(
                "exact basis symbols are generated at the (−3, 1/2) preset".into(),
            ));
        }
        let (tl, tk1, tk2) = (label.two_l, label.two_k1, label.two_k2);
        let n1 = ((tl - tk1) / 2) as u32;
        let n2 = ((tl - tk2) / 2) as u32;
        let mut f = self.top_projector_symbol(tl);
        if n1 > 0 {
            let lower = self.ladder_lower(true, params);
            for _ in 0..n1 {
                f = op_apply(&lower, &f);
            }
        }
        if n2 > 0 {
            let lower = self.ladder_lower(false, params);
            for _ in 0..n2 {
                f = op_apply(&lower, &f);
            }
        }
        let num = factorial(((tl + tk1) / 2) as u64) * factorial(((tl + tk2) / 2) as u64);
        let den = factorial(n1 as u64) * factorial(n2 as u64);
        let c = ScalarExact::hbar_pow_half(tk1 + tk2 - 2 * tl)
            * ScalarExact::rational(Rat::new(BigInt::from(1), factorial(tl as u64)))
            * ScalarExact::sqrt_rational(&Rat::new(num, den));
        Ok(f.mul_scalar(&c))
    }

    /// Hermitian pairing (f, g)_W = ∫ f̄ g d³L over the full momentum space.
    pub fn inner_product(
        &self,
        f: &WeylSymbol,
        g: &WeylSymbol,
    ) -> Result<ScalarExact, AlgebraError> {
        integrate_exact(&f.conj().mul_symbol(g), &Domain::new().full_space(0))
    }

    /// ⟨F̂⟩ = (ρ̃_I, F̂_left ρ̃)_W at the Hermitian preset, with
    /// ρ̃_I = 1/(ħ√(πL)).
    pub fn average(
        &self,
        op: &DiffOp,
        rho: &WeylSymbol,
        params: &EulerParams,
    ) -> Result<ScalarExact, RepError> {
        if *params != EulerParams::hermitian() {
            return Err(RepError::InvalidParameter(
                "averages against 1/(ħ√(πL)) hold at the (−3, 1/2) preset".into(),
            ));
        }
        Ok(self.inner_product(&self.identity_total_symbol(), &op_apply(op, rho))?)
    }

    /// Multiply a symbol by (ħ²πL)^η, with η given in half-units.
    pub fn rescale_symbol(&self, f: &WeylSymbol, eta_half: i32) -> WeylSymbol {
        let c = ScalarExact::hbar_pow_half(2 * eta_half) * ScalarExact::pi_pow_half(eta_half);
        f.mul_ring(&RingElement::gen_pow_half(&self.space, self.s, eta_half))
            .mul_scalar(&c)
    }

    /// Conjugate an operator as F̂ ↦ L^η F̂ L^{−η}, with η in half-units.
    /// η = −½ maps the (−3, ½) images onto (−4, 0); η = +½ onto the ⋆-form
    /// (−2, 0).
    pub fn rescale_op(&self, op: &DiffOp, eta_half: i32) -> DiffOp {
        let pre = DiffOp::mult(RingElement::gen_pow_half(&self.space, self.s, eta_half));
        let post = DiffOp::mult(RingElement::gen_pow_half(&self.space, self.s, -eta_half));
        pre.compose(&op.compose(&post))
    }
}

/// Reduced matrix in the (l, k) projector basis. Entries are exact scalars
/// keyed by ((2l₁, 2k₁), (2l₂, 2k₂)); off-block (l₁ ≠ l₂) entries are
/// storable but rejected by the symbol map, which is many-to-one there.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ReducedMatrix {
    entries: BTreeMap<((i32, i32), (i32, i32)), ScalarExact>,
}

impl ReducedMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(
        &mut self,
        two_l1: i32,
        two_k1: i32,
        two_l2: i32,
        two_k2: i32,
        v: ScalarExact,
    ) -> Result<(), RepError> {
        BasisLabel::new(two_l1, two_k1, two_k1)?;
        BasisLabel::new(two_l2, two_k2, two_k2)?;
        let key = ((two_l1, two_k1), (two_l2, two_k2));
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
        Ok(())
    }

    pub fn get(&self, two_l1: i32, two_k1: i32, two_l2: i32, two_k2: i32) -> ScalarExact {
        self.entries
            .get(&((two_l1, two_k1), (two_l2, two_k2)))
            .cloned()
            .unwrap_or_else(ScalarExact::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (&((i32, i32), (i32, i32)), &ScalarExact)> {
        self.entries.iter()
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.entries.iter().all(|(((l1, _), (l2, _)), _)| l1 == l2)
    }

    /// Exact matrix product over the concatenated (l, k) index.
    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = ReducedMatrix::new();
        for ((a, mid), va) in &self.entries {
            for ((mid2, b), vb) in &rhs.entries {
                if mid != mid2 {
                    continue;
                }
                let key = (*a, *b);
                let add = va.clone() * vb.clone();
                let cur = out.entries.remove(&key).unwrap_or_else(ScalarExact::zero);
                let sum = cur + add;
                if !sum.is_zero() {
                    out.entries.insert(key, sum);
                }
            }
        }
        out
    }

    /// Conjugate transpose (exact).
    pub fn dagger(&self) -> Self {
        let mut out = ReducedMatrix::new();
        for ((a, b), v) in &self.entries {
            out.entries.insert((*b, *a), v.conj());
        }
        out
    }
}

impl EulerRep {
    /// Matrix → symbol: Σ M_{(l,k₁),(l,k₂)} ρ̃_{l,k₁;l,k₂}. Matrices with
    /// cross-l coherences are rejected: those operators share their symbol
    /// with a family of others, so no faithful image exists.
    pub fn weyl_dir(&self, m: &ReducedMatrix) -> Result<WeylSymbol, RepError> {
        if !m.is_block_diagonal() {
            return Err(RepError::InvalidParameter(
                "matrix couples different l blocks; its symbol image is many-to-one"
                    .into(),
            ));
        }
        let params = EulerParams::hermitian();
        let mut acc = WeylSymbol::new(RingElement::zero(&self.space));
        for (((tl, tk1), (_, tk2)), v) in m.iter() {
            let b = self.basis_symbol(&BasisLabel::new(*tl, *tk1, *tk2)?, &params)?;
            acc = acc + b.mul_scalar(v);
        }
        Ok(acc)
    }

    /// Symbol → matrix by projection on the basis symbols,
    /// M_{(l,k₁),(l,k₂)} = (ρ̃_{l,k₁;l,k₂}, f)_W, followed by an exact
    /// round-trip check that the symbol is fully inside the span.
    pub fn weyl_rev(&self, f: &WeylSymbol, two_l_max: i32) -> Result<ReducedMatrix, RepError> {
        let m = self.project_matrix(f, two_l_max)?;
        let back = self.weyl_dir(&m)?;
        let faithful = if back.is_zero() || f.is_zero() {
            back.is_zero() && f.is_zero()
        } else if f.same_weights(&back) {
            (f.clone() - back).is_zero()
        } else {
            false
        };
        if !faithful {
            return Err(RepError::InvalidParameter(format!(
                "symbol has content outside the projector span with 2l ≤ {two_l_max}"
            )));
        }
        Ok(m)
    }

    /// Projection half of `weyl_rev`, without the faithfulness check.
    fn project_matrix(
        &self,
        f: &WeylSymbol,
        two_l_max: i32,
    ) -> Result<ReducedMatrix, RepError> {
        let params = EulerParams::hermitian();
        let mut m = ReducedMatrix::new();
        for tl in 0..=two_l_max {
            for tk1 in (-tl..=tl).step_by(2) {
                for tk2 in (-tl..=tl).step_by(2) {
                    let b = self.basis_symbol(&BasisLabel::new(tl, tk1, tk2)?, &params)?;
                    let c = self.inner_product(&b, f)?;
                    m.set(tl, tk1, tl, tk2, c)?;
                }
            }
        }
        Ok(m)
    }

    /// ⋆-form basis symbol ρ̃⋆_{l,k₁;l,k₂} = ħ√(πL)·ρ̃_{l,k₁;l,k₂}.
    pub fn star_basis_symbol(&self, label: &BasisLabel) -> Result<WeylSymbol, RepError> {
        Ok(self.rescale_symbol(
            &self.basis_symbol(label, &EulerParams::hermitian())?,
            1,
        ))
    }

    /// The quantization-kernel table up to the truncation: pairs of basis
    /// label and ⋆-form basis symbol. The kernel operator is
    /// Σ ρ̃⋆_{l,k₁;l,k₂}·ρ̂_{l,k₂;l,k₁} over this table.
    pub fn sw_kernel(&self, two_l_max: i32) -> Result<Vec<(BasisLabel, WeylSymbol)>, RepError> {
        let mut out = Vec::new();
        for tl in 0..=two_l_max {
            for tk1 in (-tl..=tl).step_by(2) {
                for tk2 in (-tl..=tl).step_by(2) {
                    let label = BasisLabel::new(tl, tk1, tk2)?;
                    out.push((label, self.star_basis_symbol(&label)?));
                }
            }
        }
        Ok(out)
    }

    /// Reverse ⋆-transform: matrix of the operator whose ⋆-symbol is f⋆.
    ///
    /// Symbols carrying the Gaussian weight are finite-content and get an
    /// exact round-trip check (content above the truncation is an error).
    /// Weightless symbols (the constant 1 and its polynomial multiples) are
    /// formal sums over all l; they are projected onto the truncated blocks,
    /// which is exact for the matrix algebra on those blocks.
    pub fn star_rev(&self, f_star: &WeylSymbol, two_l_max: i32) -> Result<ReducedMatrix, RepError> {
        let f = self.rescale_symbol(f_star, -1);
        if f_star.weight_on(0).is_some() {
            self.weyl_rev(&f, two_l_max)
        } else {
            self.project_matrix(&f, two_l_max)
        }
    }

    /// Direct ⋆-transform: ⋆-symbol of a block-diagonal matrix.
    pub fn star_dir(&self, m: &ReducedMatrix) -> Result<WeylSymbol, RepError> {
        Ok(self.rescale_symbol(&self.weyl_dir(m)?, 1))
    }

    /// Star product f⋆ ⋆ g⋆ through the matrix isomorphism.
    pub fn star_product(
        &self,
        f_star: &WeylSymbol,
        g_star: &WeylSymbol,
        two_l_max: i32,
    ) -> Result<WeylSymbol, RepError> {
        let mf = self.star_rev(f_star, two_l_max)?;
        let mg = self.star_rev(g_star, two_l_max)?;
        self.star_dir(&mf.matmul(&mg))
    }
}

/// Float evaluation of the isotropic identity-block symbol ρ̃_I,l(L) for any
/// real l > −½ and real ξ, via confluent hypergeometric functions of the
/// second kind:
///
/// ```text
///   ρ̃_I,l(L) = √[(2l+1)·2^{6ξ+1}/(Γ(2l−ξ+3/2)Γ(2l+ξ+3/2))]
///              · e^{−4L/ħ}/(√π ħ^{3/2}) · (L/ħ)^{ξ−1}
///              · [U(−2l+ξ−½, 2ξ+1, 8L/ħ)
///                 − Γ(2l+ξ+3/2)/Γ(−2l+ξ−½) · U(2l+ξ+3/2, 2ξ+1, 8L/ħ)]
/// ```
pub fn identity_symbol_numeric(
    l: f64,
    xi: f64,
    hbar: f64,
) -> Result<impl Fn(f64) -> f64, RepError> {
    if !(l > -0.5) {
        return Err(RepError::InvalidParameter(format!(
            "identity block needs l > −1/2, got {l}"
        )));
    }
    let norm = ((2.0 * l + 1.0) * 2f64.powf(6.0 * xi + 1.0)
        / (gamma_f64(2.0 * l - xi + 1.5) * gamma_f64(2.0 * l + xi + 1.5)))
    .sqrt();
    // 1/Γ(x) via reflection for x ≤ 0 so the Γ poles become exact zeros.
    let recip_gamma = |x: f64| -> f64 {
        if x > 0.0 {
            1.0 / gamma_f64(x)
        } else {
            gamma_f64(1.0 - x) * (std::f64::consts::PI * x).sin() / std::f64::consts::PI
        }
    };
    let ratio = gamma_f64(2.0 * l + xi + 1.5) * recip_gamma(-2.0 * l + xi - 0.5);
    let pref = norm / (std::f64::consts::PI.sqrt() * hbar.powf(1.5));
    Ok(move |big_l: f64| -> f64 {
        let z = 8.0 * big_l / hbar;
        let u1 = kummer_u(-2.0 * l + xi - 0.5, 2.0 * xi + 1.0, z);
        let u2 = if ratio == 0.0 {
            0.0
        } else {
            kummer_u(2.0 * l + xi + 1.5, 2.0 * xi + 1.0, z)
        };
        pref * (-4.0 * big_l / hbar).exp() * (big_l / hbar).powf(xi - 1.0) * (u1 - ratio * u2)
    })
}

/// Float evaluation of the ξ = ½ closed form of ρ̃_I,l for 2l ∈ ℤ.
pub fn identity_symbol_f64(two_l: i32, hbar: f64, big_l: f64) -> f64 {
    let sign = if two_l % 2 == 0 { 1.0 } else { -1.0 };
    4.0 / (hbar * (std::f64::consts::PI * big_l).sqrt())
        * sign
        * (-4.0 * big_l / hbar).exp()
        * laguerre_f64(two_l as u32, 1.0, 8.0 * big_l / hbar)
}

/// Expansion coefficients κ_{l,j} of the isotropic block ρ̃_I,l on the
/// half-integer family {ρ̃_I,j/2}, j = 0..=j_max, by projection with the
/// exact block norms (ρ̃_I,j/2, ρ̃_I,j/2)_W = j+1. The family is exactly
/// orthogonal, so no linear solve (and no conditioning concern) is involved.
/// For non-integer 2l the tail behaves like (−1)^j/j, so some κ are negative
/// and the expanded operator is not a physical state.
pub fn expand_identity_fractional(
    l: f64,
    j_max: usize,
    hbar: f64,
) -> Result<Vec<f64>, RepError> {
    let target = identity_symbol_numeric(l, 0.5, hbar)?;
    // Graded Gauss-Legendre panels on [0, 30ħ]; the integrands are
    // poly(j_max)·e^{−8L/ħ} with an L^{−3/2} edge for fractional l, tamed by
    // the L² volume factor.
    let edges: Vec<f64> = [
        0.0, 0.02, 0.08, 0.2, 0.5, 1.0, 1.8, 3.0, 4.5, 6.5, 9.0, 12.0, 16.0, 22.0, 30.0,
    ]
    .iter()
    .map(|e| e * hbar)
    .collect();
    let rule = crate::quadrature::gauss_legendre(40);
    let mut nodes = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        for &(x, wt) in &rule {
            let t = 0.5 * (b - a) * x + 0.5 * (a + b);
            nodes.push((t, 0.5 * (b - a) * wt));
        }
    }
    // Shared factor: target block times volume element.
    let base: Vec<f64> = nodes
        .iter()
        .map(|&(x, w)| w * x * x * target(x))
        .collect();
    let mut kappa = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let overlap: f64 = nodes
            .iter()
            .zip(&base)
            .map(|(&(x, _), &b)| b * identity_symbol_f64(j as i32, hbar, x))
            .sum();
        kappa.push(4.0 * std::f64::consts::PI * overlap / (j as f64 + 1.0));
    }
    Ok(kappa)
}
