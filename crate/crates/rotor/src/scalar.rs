//! Exact scalar arithmetic over ℚ(i) extended by powers of π, powers of ħ,
//! and square roots of integers.
//!
//! A [`ScalarExact`] is a finite sum of terms
//!
//! ```text
//!     c · π^(p/2) · ħ^(q/2) · √r
//! ```
//!
//! with `c` a Gaussian rational (complex number with exact rational parts),
//! `p, q` integers (so π and ħ may carry half-integer exponents), and `r` a
//! squarefree positive integer. This is exactly the value class produced by
//! the operator algebra in this crate: radial Γ-moments contribute √π and
//! half-integer ħ powers, ladder normalizations contribute square roots of
//! factorial ratios, and phase factors such as e^{iπ/4} = (1+i)√2/2 live in
//! ℚ(i)(√2).
//!
//! All arithmetic is exact; equality is decidable (canonical collected form
//! with zero terms dropped). Division is supported by nonzero single-term
//! scalars, which is the only shape of divisor the algebra ever produces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, Complex, One, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rat = BigRational;

/// Gaussian rational: complex number with exact rational real and imaginary
/// parts.
pub type CRat = Complex<Rat>;

/// Convenience: exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience: Gaussian rational from exact rational real/imaginary parts.
pub fn crat(re: Rat, im: Rat) -> CRat {
    Complex::new(re, im)
}

/// Exact integer power of a rational, negative exponents allowed.
pub fn pow_rat(x: &Rat, k: i32) -> Rat {
    use num::One;
    let mut acc = Rat::one();
    let base = if k >= 0 { x.clone() } else { x.recip() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Key of one term: π exponent and ħ exponent in half-integer units, and the
/// squarefree radicand `r ≥ 1` standing for √r.
type TermKey = (i32, i32, u64);

/// Split `n ≥ 1` as `s²·m` with `m` squarefree; returns `(s, m)`.
fn squarefree_split(n: u64) -> (u64, u64) {
    debug_assert!(n >= 1);
    let mut outer = 1u64;
    let mut rad = 1u64;
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            outer *= p.pow(e / 2);
            if e % 2 == 1 {
                rad *= p;
            }
        }
        p += 1;
    }
    // n is now 1 or a prime.
    rad *= n;
    (outer, rad)
}

/// Exact scalar: finite sum of Gaussian-rational multiples of
/// π^(p/2)·ħ^(q/2)·√r.
///
/// The zero scalar is the empty sum. Terms are kept in a canonical sorted map
/// keyed by (p, q, r); coefficients are never zero after normalization, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ScalarExact {
    terms: BTreeMap<TermKey, CRat>,
}

impl ScalarExact {
    /// The zero scalar (empty sum).
    pub fn zero() -> Self {
        Self::default()
    }

    /// The scalar 1.
    pub fn one() -> Self {
        Self::from_crat(CRat::one())
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Self::from_crat(crat(Rat::zero(), Rat::one()))
    }

    /// Scalar from an integer.
    pub fn integer(n: i64) -> Self {
        Self::rational(rat(n, 1))
    }

    /// Scalar from an exact rational.
    pub fn rational(r: Rat) -> Self {
        Self::from_crat(crat(r, Rat::zero()))
    }

    /// Scalar from a Gaussian rational.
    pub fn from_crat(c: CRat) -> Self {
        Self::term(c, 0, 0, 1)
    }

    /// A single term c·π^(p/2)·ħ^(q/2)·√r. `r ≥ 1` need not be squarefree;
    /// its square part is folded into the coefficient.
    pub fn term(c: CRat, pi_half: i32, hbar_half: i32, radicand: u64) -> Self {
        let mut s = Self::default();
        s.add_term(c, pi_half, hbar_half, radicand);
        s
    }

    /// π^(k/2).
    pub fn pi_pow_half(k: i32) -> Self {
        Self::term(CRat::one(), k, 0, 1)
    }

    /// ħ^(k/2).
    pub fn hbar_pow_half(k: i32) -> Self {
        Self::term(CRat::one(), 0, k, 1)
    }

    /// ħ^k.
    pub fn hbar_pow(k: i32) -> Self {
        Self::hbar_pow_half(2 * k)
    }

    /// √r for an integer r ≥ 1.
    pub fn sqrt_radicand(r: u64) -> Self {
        Self::term(CRat::one(), 0, 0, r)
    }

    /// √(p/q) for a nonnegative exact rational, as √(pq)/q.
    ///
    /// # Panics
    /// Panics if the rational is negative or does not fit in `u64` after
    /// clearing denominators (the algebra only takes roots of small
    /// combinatorial factors).
    pub fn sqrt_rational(r: &Rat) -> Self {
        use num::{Signed, ToPrimitive};
        assert!(!r.is_negative(), "sqrt of negative rational");
        if r.is_zero() {
            return Self::zero();
        }
        let p = r.numer().to_u64().expect("sqrt radicand numerator too large");
        let q = r.denom().to_u64().expect("sqrt radicand denominator too large");
        let inner = p.checked_mul(q).expect("sqrt radicand overflow");
        let coeff = crat(Rat::new(BigInt::one(), BigInt::from(q)), Rat::zero());
        Self::term(coeff, 0, 0, inner)
    }

    fn add_term(&mut self, c: CRat, pi_half: i32, hbar_half: i32, radicand: u64) {
        if c.is_zero() {
            return;
        }
        let (outer, rad) = squarefree_split(radicand);
        let c = c * crat(rat(outer as i64, 1), Rat::zero());
        let key = (pi_half, hbar_half, rad);
        let entry = self.terms.entry(key).or_insert_with(CRat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// True for the zero scalar.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if this is exactly the scalar 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0, 1))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Complex conjugate (i → −i on every coefficient).
    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.conj()))
            .collect();
        Self { terms }
    }

    /// If the scalar is a plain Gaussian rational (no π, ħ, or radical
    /// content), return it.
    pub fn as_crat(&self) -> Option<CRat> {
        if self.is_zero() {
            return Some(CRat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0, 1)) {
                return Some(c.clone());
            }
        }
        None
    }

    /// If the scalar is a single term, return (coefficient, π half-power,
    /// ħ half-power, radicand).
    pub fn as_single_term(&self) -> Option<(CRat, i32, i32, u64)> {
        if self.terms.len() == 1 {
            let (&(p, q, r), c) = self.terms.iter().next().unwrap();
            Some((c.clone(), p, q, r))
        } else {
            None
        }
    }

    /// Multiplicative inverse of a nonzero single-term scalar:
    /// 1/(c·π^a·ħ^b·√r) = (1/(c·r))·π^{−a}·ħ^{−b}·√r.
    ///
    /// Returns `None` if the scalar is zero or has more than one term.
    pub fn inv_single(&self) -> Option<Self> {
        let (c, p, q, r) = self.as_single_term()?;
        let cr = c * crat(rat(r as i64, 1), Rat::zero());
        Some(Self::term(cr.inv(), -p, -q, r))
    }

    /// Exact division by a nonzero single-term scalar.
    ///
    /// # Panics
    /// Panics if the divisor is zero or not a single term.
    pub fn div_single(&self, d: &Self) -> Self {
        let inv = d
            .inv_single()
            .expect("division requires a nonzero single-term scalar");
        self.clone() * inv
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Self {
        self.clone() * Self::i()
    }

    /// Exact `self^(k/2)` for a single-term, real, positive scalar.
    ///
    /// For odd `k` the term's radicand must be 1 and its π/ħ half-powers
    /// even, otherwise the result would leave the representable class; those
    /// combinations do not arise in the integral tables this supports.
    ///
    /// # Panics
    /// Panics on zero/multi-term/complex/negative input or on an odd-`k`
    /// exponent clash as described above.
    pub fn pow_half(&self, k: i32) -> Self {
        use num::Signed;
        let (c, p, q, r) = self
            .as_single_term()
            .expect("pow_half requires a single-term scalar");
        assert!(c.im.is_zero(), "pow_half requires a real scalar");
        assert!(c.re.is_positive(), "pow_half requires a positive scalar");
        if k == 0 {
            return Self::one();
        }
        if k % 2 == 0 {
            let t = k / 2; // integer power
            let mut out = Self::term(
                crat(pow_rat(&c.re, t), Rat::zero()),
                p * t,
                q * t,
                1,
            );
            // r^{t/2}: whole powers of r for even t, one leftover √r else.
            let (whole, rem) = (t.div_euclid(2), t.rem_euclid(2));
            out = out
                * Self::rational(pow_rat(&Rat::from_integer(r.into()), whole))
                * if rem == 1 {
                    Self::sqrt_radicand(r)
                } else {
                    Self::one()
                };
            out
        } else {
            assert!(r == 1, "pow_half with odd exponent requires radicand 1");
            assert!(
                p % 2 == 0 && q % 2 == 0,
                "pow_half with odd exponent requires whole π/ħ powers"
            );
            // (c·π^{p/2}ħ^{q/2})^{k/2} = √(c^k)·π^{pk/4·2}… with p,q even:
            // π^{(p/2)·k} half-powers, ħ likewise.
            let ck = pow_rat(&c.re, k);
            Self::sqrt_rational(&ck) * Self::term(CRat::one(), p / 2 * k, q / 2 * k, 1)
        }
    }

    /// Evaluate to a complex double, substituting the given numeric ħ.
    pub fn to_c64(&self, hbar: f64) -> Complex<f64> {
        use num::ToPrimitive;
        let mut acc = Complex::new(0.0, 0.0);
        for (&(p, q, r), c) in &self.terms {
            let mag = std::f64::consts::PI.powf(p as f64 / 2.0)
                * hbar.powf(q as f64 / 2.0)
                * (r as f64).sqrt();
            let re = c.re.to_f64().unwrap_or(f64::NAN);
            let im = c.im.to_f64().unwrap_or(f64::NAN);
            acc += Complex::new(re * mag, im * mag);
        }
        acc
    }

    /// Evaluate the real part to a double (asserting the imaginary part is
    /// exactly zero), substituting the given numeric ħ.
    pub fn to_f64_real(&self, hbar: f64) -> f64 {
        for c in self.terms.values() {
            assert!(c.im.is_zero(), "scalar has nonzero imaginary part");
        }
        self.to_c64(hbar).re
    }

    /// Iterate over terms as (π half-power, ħ half-power, radicand,
    /// coefficient).
    pub fn iter_terms(&self) -> impl Iterator<Item = (i32, i32, u64, &CRat)> {
        self.terms.iter().map(|(&(p, q, r), c)| (p, q, r, c))
    }

    /// Build from raw term data (used by deserialization).
    pub fn from_terms<I: IntoIterator<Item = (i32, i32, u64, CRat)>>(it: I) -> Self {
        let mut s = Self::default();
        for (p, q, r, c) in it {
            s.add_term(c, p, q, r);
        }
        s
    }
}

impl Add for ScalarExact {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl Add for &ScalarExact {
    type Output = ScalarExact;
    fn add(self, rhs: Self) -> ScalarExact {
        self.clone() + rhs.clone()
    }
}

impl Sub for &ScalarExact {
    type Output = ScalarExact;
    fn sub(self, rhs: Self) -> ScalarExact {
        self.clone() - rhs.clone()
    }
}

impl AddAssign for ScalarExact {
    fn add_assign(&mut self, rhs: Self) {
        for ((p, q, r), c) in rhs.terms {
            self.add_term(c, p, q, r);
        }
    }
}

impl Sub for ScalarExact {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for ScalarExact {
    fn sub_assign(&mut self, rhs: Self) {
        *self += -rhs;
    }
}

impl Neg for ScalarExact {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(k, c)| (k, -c)).collect();
        Self { terms }
    }
}

impl Mul for ScalarExact {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &ScalarExact {
    type Output = ScalarExact;
    fn mul(self, rhs: Self) -> ScalarExact {
        let mut out = ScalarExact::default();
        for (&(p1, q1, r1), c1) in &self.terms {
            for (&(p2, q2, r2), c2) in &rhs.terms {
                // √r1·√r2 = s·√m with r1·r2 = s²·m.
                let (s, m) = squarefree_split(r1 * r2);
                let c = c1 * c2 * crat(rat(s as i64, 1), Rat::zero());
                out.add_term(c, p1 + p2, q1 + q2, m);
            }
        }
        out
    }
}

impl MulAssign for ScalarExact {
    fn mul_assign(&mut self, rhs: Self) {
        *self = &*self * &rhs;
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_crat(c: &CRat) -> String {
    if c.im.is_zero() {
        fmt_rat(&c.re)
    } else if c.re.is_zero() {
        format!("{}i", fmt_rat(&c.im))
    } else {
        format!("({}+{}i)", fmt_rat(&c.re), fmt_rat(&c.im))
    }
}

fn fmt_half_pow(base: &str, half: i32) -> Option<String> {
    match half {
        0 => None,
        2 => Some(base.to_string()),
        h if h % 2 == 0 => Some(format!("{}^{}", base, h / 2)),
        h => Some(format!("{}^({}/2)", base, h)),
    }
}

impl fmt::Display for ScalarExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(p, q, r), c)| {
                let mut factors = vec![fmt_crat(c)];
                if let Some(s) = fmt_half_pow("pi", p) {
                    factors.push(s);
                }
                if let Some(s) = fmt_half_pow("hbar", q) {
                    factors.push(s);
                }
                if r != 1 {
                    factors.push(format!("sqrt({r})"));
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Debug delegates to Display so assert_eq! failures print readable values.
impl fmt::Debug for ScalarExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn squarefree_split_basics() {
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(8), (2, 2));
        assert_eq!(squarefree_split(36), (6, 1));
        assert_eq!(squarefree_split(720), (12, 5));
        assert_eq!(squarefree_split(97), (1, 97));
    }

    #[test]
    fn radicals_collect() {
        let s6 = ScalarExact::sqrt_radicand(2) * ScalarExact::sqrt_radicand(3);
        assert_eq!(s6, ScalarExact::sqrt_radicand(6));
        let six = &s6 * &s6;
        assert_eq!(six, ScalarExact::integer(6));
        // √8 = 2√2
        assert_eq!(
            ScalarExact::sqrt_radicand(8),
            ScalarExact::integer(2) * ScalarExact::sqrt_radicand(2)
        );
    }

    #[test]
    fn eighth_root_of_unity_squares_to_i() {
        // e^{iπ/4} = (1+i)√2/2
        let c = crat(rat(1, 2), rat(1, 2));
        let e = ScalarExact::term(c, 0, 0, 2);
        assert_eq!(&e * &e, ScalarExact::i());
    }

    #[test]
    fn half_powers_accumulate() {
        let h = ScalarExact::hbar_pow_half(1) * ScalarExact::hbar_pow_half(3);
        assert_eq!(h, ScalarExact::hbar_pow(2));
        let p = ScalarExact::pi_pow_half(1) * ScalarExact::pi_pow_half(1);
        assert_eq!(p, ScalarExact::pi_pow_half(2));
        assert!((p.to_f64_real(1.0) - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn sqrt_rational_clears_denominator() {
        // √(3/4) = √3/2
        let s = ScalarExact::sqrt_rational(&rat(3, 4));
        let expected = ScalarExact::term(crat(rat(1, 2), Rat::zero()), 0, 0, 3);
        assert_eq!(s, expected);
        // √(9/25) = 3/5 exactly
        let t = ScalarExact::sqrt_rational(&rat(9, 25));
        assert_eq!(t, ScalarExact::rational(rat(3, 5)));
    }

    #[test]
    fn single_term_division() {
        let a = ScalarExact::term(crat(rat(3, 1), Rat::zero()), 1, 2, 2);
        let b = ScalarExact::term(crat(rat(1, 2), Rat::zero()), 1, 0, 2);
        let q = a.div_single(&b);
        // 3π^{1/2}ħ√2 / (π^{1/2}√2/2) = 6ħ
        assert_eq!(q, ScalarExact::integer(6) * ScalarExact::hbar_pow(1));
        assert_eq!(q.div_single(&q), ScalarExact::one());
    }

    #[test]
    fn conjugation_is_involutive_and_fixes_reals() {
        let z = ScalarExact::i() * ScalarExact::pi_pow_half(1)
            + ScalarExact::rational(rat(2, 3));
        assert_eq!(z.conj().conj(), z);
        let r = ScalarExact::sqrt_radicand(5);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn to_c64_mixed_term() {
        // 2π^{1/2}ħ^{3/2}√2 at ħ = 0.25
        let s = ScalarExact::term(crat(rat(2, 1), Rat::zero()), 1, 3, 2);
        let v = s.to_c64(0.25);
        let expected = 2.0 * std::f64::consts::PI.sqrt() * 0.25f64.powf(1.5) * 2f64.sqrt();
        assert!((v.re - expected).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarExact> {
        let term = (
            -3i64..4,
            1i64..5,
            -3i64..4,
            1i64..5,
            -2i32..3,
            -2i32..3,
            prop::sample::select(vec![1u64, 2, 3, 5, 6]),
        )
            .prop_map(|(rn, rd, in_, id, p, q, r)| {
                ScalarExact::term(crat(rat(rn, rd), rat(in_, id)), p, q, r)
            });
        prop::collection::vec(term, 0..4)
            .prop_map(|ts| ts.into_iter().fold(ScalarExact::zero(), |a, b| a + b))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            // Associativity and commutativity of + and ·, distributivity.
            prop_assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(
                (&(&a * &b)) * (&c),
                (&a) * (&(&b * &c))
            );
            prop_assert_eq!(
                &a * &(b.clone() + c.clone()),
                (&a * &b) + (&a * &c)
            );
            // Conjugation is a ring homomorphism.
            prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn numeric_agreement(a in arb_scalar(), b in arb_scalar()) {
            // Exact product evaluates to the product of evaluations.
            let hbar = 0.7;
            let lhs = (&a * &b).to_c64(hbar);
            let rhs = a.to_c64(hbar) * b.to_c64(hbar);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }
}
