//! Combinatorial and special-function helpers: exact factorials and
//! double factorials, generalized Laguerre polynomials (exact coefficients
//! and float evaluation), the confluent hypergeometric function of the
//! second kind U(a,b,z) in float mode, Euler summation of alternating
//! series, and exact Wigner 3-j symbols.

use num::{BigInt, One, ToPrimitive, Zero};

use crate::scalar::{crat, Rat, ScalarExact};

/// n! as an exact big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// n!! as an exact big integer, with the empty products (−1)!! = 0!! = 1.
///
/// # Panics
/// Panics for n < −1 (not a value the moment formulas produce).
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial defined here for n >= -1");
    let mut acc = BigInt::one();
    let mut k = n;
    while k >= 2 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Binomial coefficient C(n, k) as an exact big integer (0 when k > n).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact coefficients of the generalized Laguerre polynomial L_n^{(α)}(x)
/// for integer α ≥ 0; entry `i` is the coefficient of xⁱ:
///
/// ```text
///     L_n^{(α)}(x) = Σ_{i=0}^{n} (−1)^i C(n+α, n−i) xⁱ / i!
/// ```
pub fn laguerre_coeffs(n: u32, alpha: u32) -> Vec<Rat> {
    (0..=n)
        .map(|i| {
            let c = binomial((n + alpha) as u64, (n - i) as u64);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            Rat::new(c * sign, factorial(i as u64))
        })
        .collect()
}

/// Float evaluation of L_n^{(α)}(x) for real α via the three-term
/// recurrence (k+1)L_{k+1} = (2k+1+α−x)L_k − (k+α)L_{k−1}.
pub fn laguerre_f64(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0;
    let mut l = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * l - (kf + alpha) * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance `tol`.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, b, fb, fm);
    rec(f, a, fa, b, fb, fm, whole, tol, 48)
}

/// Adaptive quadrature on [a, b] (public wrapper with sane defaults).
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    adaptive_simpson(&f, a, b, tol)
}

/// U(a, b, z) for z > 0 via the Laplace integral for a in (0, 2], extended to
/// arbitrary real a by the three-term recurrence in a.
///
/// For a > 0:
///
/// ```text
///     U(a,b,z) = 1/Γ(a) ∫₀^∞ e^{−zt} t^{a−1} (1+t)^{b−a−1} dt
/// ```
///
/// The [0,1] piece is regularized with t = u^{1/a} so the integrand is
/// bounded for a < 1. For a ≤ 0 the value follows from the downward
/// recurrence U(a−1,b,z) = (z + 2a − b)·U(a,b,z) − a(a−b+1)·U(a+1,b,z),
/// which is the stable direction (U grows as a decreases).
pub fn kummer_u(a: f64, b: f64, z: f64) -> f64 {
    assert!(z > 0.0, "U(a,b,z) evaluated only for z > 0");
    if a > 0.0 && a <= 2.0 {
        return kummer_u_integral(a, b, z);
    }
    if a > 2.0 {
        // Upward in a is the stable inverse of the downward recurrence:
        // U(a+1) = (U(a−1) − (z+2a−b)·U(a))/(−a(a−b+1)) is unstable, so use
        // the integral directly; it converges for every a > 0.
        return kummer_u_integral(a, b, z);
    }
    // a ≤ 0: step down from the (0,1] window.
    let steps = (-a).ceil() as u32 + 1;
    let a0 = a + steps as f64; // in (0, 2] after at most one extra step
    debug_assert!(a0 > 0.0);
    let mut u_hi = kummer_u_integral(a0 + 1.0, b, z); // U(a0+1)
    let mut u = kummer_u_integral(a0, b, z); // U(a0)
    let mut ak = a0;
    for _ in 0..steps {
        // U(ak−1) = (z + 2ak − b)·U(ak) − ak(ak−b+1)·U(ak+1)
        let u_lo = (z + 2.0 * ak - b) * u - ak * (ak - b + 1.0) * u_hi;
        u_hi = u;
        u = u_lo;
        ak -= 1.0;
    }
    u
}

fn kummer_u_integral(a: f64, b: f64, z: f64) -> f64 {
    use statrs::function::gamma::gamma;
    let pow_exp = b - a - 1.0;
    // ∫₀^1 e^{−zt} t^{a−1}(1+t)^{p} dt  =  (1/a)∫₀^1 e^{−z u^{1/a}} (1+u^{1/a})^{p} du
    let head = {
        let f = |u: f64| {
            if u <= 0.0 {
                // limit u→0+: t→0, integrand → (1+0)^p = 1
                return 1.0;
            }
            let t = u.powf(1.0 / a);
            (-z * t).exp() * (1.0 + t).powf(pow_exp)
        };
        adaptive_simpson(&f, 0.0, 1.0, 1e-13) / a
    };
    // Tail with t = 1 + s/z: (e^{−z}/z)∫₀^∞ e^{−s}(1+s/z)^{a−1}(2+s/z)^{p} ds.
    // The s-domain scale is O(1) uniformly in z, unlike the raw t-domain
    // whose support stretches to ~745/z for small z.
    let tail = {
        let g = |s: f64| (-s).exp() * (1.0 + s / z).powf(a - 1.0) * (2.0 + s / z).powf(pow_exp);
        let s_max = 745.0;
        // Normalize the tolerance to the integrand's magnitude, which varies
        // over many decades with z.
        let peak = (0..24)
            .map(|i| g(s_max * (i as f64 + 0.5) / 24.0).abs())
            .fold(g(0.0).abs(), f64::max);
        if peak == 0.0 || !peak.is_finite() {
            0.0
        } else {
            adaptive_simpson(&|s| g(s) / peak, 0.0, s_max, 1e-12) * peak * (-z).exp() / z
        }
    };
    (head + tail) / gamma(a)
}

/// Euler-transformed sum of an alternating series given its leading terms
/// s_j = (−1)^j a_j (signs included, a_j ≥ 0 not required but the transform
/// is designed for eventually alternating tails):
///
/// ```text
///     Σ_j (−1)^j a_j ≈ Σ_{k=0}^{N} (∇ᵏa)₀ / 2^{k+1},    (∇a)(j) = a(j) − a(j+1)
/// ```
///
/// With N+1 input terms the truncation error is O(2^{−N}) for series with
/// smoothly varying a_j.
pub fn euler_transform_sum(terms: &[f64]) -> f64 {
    assert!(!terms.is_empty());
    // Recover a_j = (−1)^j s_j, run the difference tableau in place.
    let mut a: Vec<f64> = terms
        .iter()
        .enumerate()
        .map(|(j, s)| if j % 2 == 0 { *s } else { -*s })
        .collect();
    let mut sum = 0.0;
    let mut pow = 0.5;
    for k in 0..a.len() {
        sum += pow * a[0];
        pow *= 0.5;
        for j in 0..a.len() - 1 - k {
            a[j] -= a[j + 1];
        }
    }
    sum
}

/// Exact Wigner 3-j symbol with all angular momenta and projections given as
/// doubled integers (so j = 3/2 is `two_j = 3`). Returns an exact scalar in
/// ℚ extended by square roots.
///
/// Implemented from the Racah single-sum formula; used as an independent
/// oracle for matrix elements of quaternion-component images.
pub fn wigner_3j(two_j: [i64; 3], two_m: [i64; 3]) -> ScalarExact {
    let [tj1, tj2, tj3] = two_j;
    let [tm1, tm2, tm3] = two_m;
    // Selection rules.
    if tm1 + tm2 + tm3 != 0
        || tj1 < 0
        || tj2 < 0
        || tj3 < 0
        || tm1.abs() > tj1
        || tm2.abs() > tj2
        || tm3.abs() > tj3
        || (tj1 + tm1) % 2 != 0
        || (tj2 + tm2) % 2 != 0
        || (tj3 + tm3) % 2 != 0
        || tj3 < (tj1 - tj2).abs()
        || tj3 > tj1 + tj2
        || (tj1 + tj2 + tj3) % 2 != 0
    {
        return ScalarExact::zero();
    }
    let half = |x: i64| -> u64 {
        debug_assert!(x >= 0 && x % 2 == 0);
        (x / 2) as u64
    };
    // Triangle coefficient Δ² = (j1+j2−j3)!(j1−j2+j3)!(−j1+j2+j3)!/(j1+j2+j3+1)!
    let delta_sq = Rat::new(
        factorial(half(tj1 + tj2 - tj3))
            * factorial(half(tj1 - tj2 + tj3))
            * factorial(half(-tj1 + tj2 + tj3)),
        factorial(half(tj1 + tj2 + tj3) + 1),
    );
    // Projection factorials under the root.
    let proj = Rat::from(
        factorial(half(tj1 + tm1))
            * factorial(half(tj1 - tm1))
            * factorial(half(tj2 + tm2))
            * factorial(half(tj2 - tm2))
            * factorial(half(tj3 + tm3))
            * factorial(half(tj3 - tm3)),
    );
    // Single sum over t.
    let t_min = 0i64
        .max((tj2 - tj3 - tm1) / 2)
        .max((tj1 - tj3 + tm2) / 2);
    let t_max = (half(tj1 + tj2 - tj3) as i64)
        .min(half(tj1 - tm1) as i64)
        .min(half(tj2 + tm2) as i64);
    let mut series = Rat::zero();
    for t in t_min..=t_max {
        let denom = factorial(t as u64)
            * factorial((half(tj1 + tj2 - tj3) as i64 - t) as u64)
            * factorial((half(tj1 - tm1) as i64 - t) as u64)
            * factorial((half(tj2 + tm2) as i64 - t) as u64)
            * factorial((t - (tj2 - tj3 - tm1) / 2) as u64)
            * factorial((t - (tj1 - tj3 + tm2) / 2) as u64);
        let sign = if t % 2 == 0 { 1 } else { -1 };
        series += Rat::new(BigInt::from(sign), denom);
    }
    if series.is_zero() {
        return ScalarExact::zero();
    }
    // Overall phase (−1)^{j1−j2−m3}; the exponent is an integer here.
    let phase = {
        let e = (tj1 - tj2 - tm3) / 2;
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    };
    let root = ScalarExact::sqrt_rational(&(delta_sq * proj));
    let series_scalar = ScalarExact::from_crat(crat(
        series * Rat::new(BigInt::from(phase), BigInt::one()),
        Rat::zero(),
    ));
    root * series_scalar
}

/// Float Γ(x) re-exported for callers that need it alongside the exact
/// helpers.
pub fn gamma_f64(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// Exact Γ(k/2) for positive half-integers, as a rational times √π when k is
/// odd: Γ(n) = (n−1)!, Γ(n+1/2) = (2n−1)!!/2ⁿ·√π.
///
/// # Panics
/// Panics for k ≤ 0.
pub fn gamma_half_exact(k: i64) -> ScalarExact {
    assert!(k > 0, "gamma_half_exact needs a positive half-integer argument");
    if k % 2 == 0 {
        ScalarExact::rational(Rat::from(factorial((k / 2 - 1) as u64)))
    } else {
        let n = (k - 1) / 2; // Γ(n + 1/2)
        let coeff = Rat::new(double_factorial(2 * n - 1), BigInt::from(2u32).pow(n as u32));
        ScalarExact::term(crat(coeff, Rat::zero()), 1, 0, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 7), BigInt::zero());
    }

    #[test]
    fn gamma_half_values() {
        // Γ(1/2) = √π, Γ(3/2) = √π/2, Γ(3) = 2
        assert_eq!(gamma_half_exact(1), ScalarExact::pi_pow_half(1));
        assert_eq!(
            gamma_half_exact(3),
            ScalarExact::rational(rat(1, 2)) * ScalarExact::pi_pow_half(1)
        );
        assert_eq!(gamma_half_exact(6), ScalarExact::integer(2));
        // Numeric agreement with the float Γ.
        for k in 1..12i64 {
            let exact = gamma_half_exact(k).to_f64_real(1.0);
            let float = gamma_f64(k as f64 / 2.0);
            assert!((exact - float).abs() < 1e-12 * float.abs());
        }
    }

    #[test]
    fn laguerre_exact_matches_recurrence() {
        for n in 0..8u32 {
            for alpha in 0..3u32 {
                let coeffs = laguerre_coeffs(n, alpha);
                for &x in &[0.0f64, 0.3, 1.7, 8.2] {
                    let exact: f64 = coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let cf = c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap();
                            cf * x.powi(i as i32)
                        })
                        .sum();
                    let rec = laguerre_f64(n, alpha as f64, x);
                    assert!(
                        (exact - rec).abs() <= 1e-10 * (1.0 + exact.abs()),
                        "L_{n}^{alpha}({x}): {exact} vs {rec}"
                    );
                }
            }
        }
    }

    #[test]
    fn laguerre_known_values() {
        // L_2(x) = 1 − 2x + x²/2 at x = 2 → −1
        assert!((laguerre_f64(2, 0.0, 2.0) + 1.0).abs() < 1e-14);
        // L_1^{(1)}(x) = 2 − x
        assert!((laguerre_f64(1, 1.0, 0.5) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn kummer_u_power_law() {
        // U(a, a+1, z) = z^{−a} exactly.
        for &(a, z) in &[(0.5, 3.0), (1.0, 8.0), (1.7, 2.5), (0.25, 12.0)] {
            let u = kummer_u(a, a + 1.0, z);
            let expected = z.powf(-a);
            assert!(
                (u - expected).abs() < 1e-9 * expected.abs(),
                "U({a},{},{z}) = {u}, expected {expected}",
                a + 1.0
            );
        }
    }

    #[test]
    fn kummer_u_reduces_to_laguerre_at_negative_integers() {
        // U(−n, α+1, x) = (−1)ⁿ n! L_n^{(α)}(x)
        for &(n, alpha) in &[(1u32, 1u32), (2, 1), (3, 0), (4, 1)] {
            for &x in &[2.0, 5.0, 9.5] {
                let u = kummer_u(-(n as f64), alpha as f64 + 1.0, x);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let expected = sign
                    * factorial(n as u64).to_f64().unwrap()
                    * laguerre_f64(n, alpha as f64, x);
                assert!(
                    (u - expected).abs() < 1e-7 * (1.0 + expected.abs()),
                    "U(−{n},{},{x}) = {u}, expected {expected}",
                    alpha + 1
                );
            }
        }
    }

    #[test]
    fn kummer_transform() {
        // U(a,b,z) = z^{1−b} U(a−b+1, 2−b, z)
        let (a, b, z) = (0.75, 1.5, 6.0);
        let lhs = kummer_u(a, b, z);
        let rhs = z.powf(1.0 - b) * kummer_u(a - b + 1.0, 2.0 - b, z);
        assert!((lhs - rhs).abs() < 1e-9 * lhs.abs());
    }

    #[test]
    fn euler_transform_log2() {
        // Σ (−1)^j/(j+1) = ln 2, using only 12 terms.
        let terms: Vec<f64> = (0..12)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } / (j as f64 + 1.0))
            .collect();
        let s = euler_transform_sum(&terms);
        assert!((s - std::f64::consts::LN_2).abs() < 5e-5);
        // Raw partial sum is far worse.
        let raw: f64 = terms.iter().sum();
        assert!((raw - std::f64::consts::LN_2).abs() > 1e-2);
    }

    #[test]
    fn wigner_3j_known_values() {
        // (1 1 0; m −m 0) = (−1)^{1−m}/√3
        for m in -1i64..=1 {
            let v = wigner_3j([2, 2, 0], [2 * m, -2 * m, 0]);
            let sign = if (1 - m).rem_euclid(2) == 0 { 1 } else { -1 };
            let expected = ScalarExact::rational(rat(sign, 3)) * ScalarExact::sqrt_radicand(3);
            assert_eq!(v, expected, "m = {m}");
        }
        // (1/2 1/2 1; 1/2 1/2 −1) = −1/√3 = −√3/3
        let v = wigner_3j([1, 1, 2], [1, 1, -2]);
        assert_eq!(
            v,
            ScalarExact::rational(rat(-1, 3)) * ScalarExact::sqrt_radicand(3)
        );
        // Violated selection rule → exact zero.
        assert!(wigner_3j([2, 2, 2], [2, 2, 2]).is_zero());
    }

    #[test]
    fn wigner_3j_orthogonality_exact() {
        // Σ_{m1,m2} (2j3+1)·3j(j1 j2 j3; m1 m2 m3)² = 1 for admissible j3, m3.
        for &(tj1, tj2, tj3, tm3) in &[(1i64, 1i64, 2i64, 0i64), (2, 1, 1, 1), (2, 2, 2, 2)] {
            let mut acc = ScalarExact::zero();
            let mut tm1 = -tj1;
            while tm1 <= tj1 {
                let tm2 = -tm3 - tm1;
                if tm2.abs() <= tj2 {
                    let w = wigner_3j([tj1, tj2, tj3], [tm1, tm2, tm3]);
                    acc += &w * &w;
                }
                tm1 += 2;
            }
            let expected =
                ScalarExact::rational(Rat::new(BigInt::one(), BigInt::from(tj3 + 1)));
            assert_eq!(acc, expected, "j set ({tj1},{tj2},{tj3}) doubled");
        }
    }
}
