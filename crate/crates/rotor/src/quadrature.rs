//! Numeric Gaussian quadrature rules (Golub–Welsch construction).
//!
//! These rules serve as independent numeric oracles for the exact integral
//! tables and as the workhorse for the few diagnostics that have no closed
//! form (fractional-index expansions). Nodes and weights come from the
//! eigendecomposition of the Jacobi matrix of the orthogonal-polynomial
//! recurrence: nodes are its eigenvalues, weights are μ₀·(first eigenvector
//! component)².

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights from a symmetric tridiagonal Jacobi matrix with zero
/// diagonal and off-diagonal `offdiag`, total mass `mu0`.
fn golub_welsch(offdiag: &[f64], mu0: f64) -> Vec<(f64, f64)> {
    let n = offdiag.len() + 1;
    let j = DMatrix::from_fn(n, n, |r, c| {
        if r + 1 == c {
            offdiag[r]
        } else if c + 1 == r {
            offdiag[c]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(j);
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// n-point Gauss–Legendre rule on [−1, 1]; exact for polynomials of degree
/// ≤ 2n−1.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    golub_welsch(&offdiag, 2.0)
}

/// n-point Gauss–Hermite rule for ∫ f(x) e^{−x²} dx on ℝ; exact for
/// polynomials of degree ≤ 2n−1.
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    golub_welsch(&offdiag, std::f64::consts::PI.sqrt())
}

/// Product rule on the unit sphere S²: Gauss–Legendre in cosθ × uniform
/// trapezoid in φ. Integrates spherical polynomials of degree ≤ `order`
/// exactly (up to roundoff). Returns (unit vector, weight) with Σw = 4π.
pub fn sphere_s2(order: usize) -> Vec<([f64; 3], f64)> {
    let n_theta = order / 2 + 1;
    let n_phi = order + 2;
    let gl = gauss_legendre(n_theta);
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for &(u, wu) in &gl {
        let sin_t = (1.0 - u * u).max(0.0).sqrt();
        for m in 0..n_phi {
            let phi = dphi * m as f64;
            out.push(([sin_t * phi.cos(), sin_t * phi.sin(), u], wu * dphi));
        }
    }
    out
}

/// n-point Gauss–Chebyshev rule of the second kind: ∫ f(u)√(1−u²) du on
/// [−1,1]; nodes and weights are analytic. Exact for f of degree ≤ 2n−1.
pub fn gauss_chebyshev2(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let m = (n + 1) as f64;
    (1..=n)
        .map(|k| {
            let t = k as f64 * std::f64::consts::PI / m;
            (t.cos(), std::f64::consts::PI / m * t.sin() * t.sin())
        })
        .collect()
}

/// Product rule on the unit sphere S³ ⊂ ℝ⁴ using coordinates
/// x = (sinχ·n̂, cosχ) with dω₃ = sin²χ dχ dω₂ = √(1−u²) du dω₂ (u = cosχ),
/// so the u-factor is a Gauss–Chebyshev-2 rule and the result is exact for
/// polynomials of degree ≤ `order`. Returns (unit 4-vector, weight) with
/// Σw = 2π².
pub fn sphere_s3(order: usize) -> Vec<([f64; 4], f64)> {
    let n_chi = order / 2 + 1;
    let gc = gauss_chebyshev2(n_chi);
    let s2 = sphere_s2(order);
    let mut out = Vec::with_capacity(n_chi * s2.len());
    for &(u, wu) in &gc {
        let sin_chi = (1.0 - u * u).max(0.0).sqrt();
        for &(n, wn) in &s2 {
            out.push((
                [sin_chi * n[0], sin_chi * n[1], sin_chi * n[2], u],
                wu * wn,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_monomial_moments() {
        let rule = gauss_legendre(8);
        for k in 0..16u32 {
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - exact).abs() < 1e-13, "k={k}: {got} vs {exact}");
        }
    }

    #[test]
    fn hermite_monomial_moments() {
        let rule = gauss_hermite(10);
        // ∫x^{2k}e^{−x²}dx = Γ(k+1/2) = √π·(2k−1)!!/2^k
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let mut dfact = 1.0;
        for k in 0..8u32 {
            let exact = if k == 0 {
                sqrt_pi
            } else {
                dfact *= (2 * k - 1) as f64;
                sqrt_pi * dfact / 2f64.powi(k as i32)
            };
            let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(2 * k as i32)).sum();
            assert!(
                (got - exact).abs() < 1e-12 * exact.max(1.0),
                "k={k}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn sphere_s2_low_moments() {
        let rule = sphere_s2(6);
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        // ∫n₃² dω = 4π/3; ∫n₁²n₂² dω = 4π/15; odd → 0
        let m2: f64 = rule.iter().map(|&(n, w)| w * n[2] * n[2]).sum();
        assert!((m2 - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        let m22: f64 = rule
            .iter()
            .map(|&(n, w)| w * n[0] * n[0] * n[1] * n[1])
            .sum();
        assert!((m22 - 4.0 * std::f64::consts::PI / 15.0).abs() < 1e-12);
        let modd: f64 = rule.iter().map(|&(n, w)| w * n[0]).sum();
        assert!(modd.abs() < 1e-13);
    }

    #[test]
    fn sphere_s3_low_moments() {
        let rule = sphere_s3(6);
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        let two_pi2 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((total - two_pi2).abs() < 1e-9);
        // ∫x₀²dω₃ = 2π²/4 by symmetry; ∫x₀²x₃²dω₃ = 2π²/24.
        let m2: f64 = rule.iter().map(|&(x, w)| w * x[3] * x[3]).sum();
        assert!((m2 - two_pi2 / 4.0).abs() < 1e-9, "{m2}");
        let m22: f64 = rule.iter().map(|&(x, w)| w * x[0] * x[0] * x[3] * x[3]).sum();
        assert!((m22 - two_pi2 / 24.0).abs() < 1e-9, "{m22}");
    }
}
