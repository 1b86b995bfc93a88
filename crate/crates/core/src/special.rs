//! Compensated summation and the few special functions the estimators need.

use num_complex::Complex64;

/// Euler-Mascheroni constant, 15 digits.
pub const EULER_GAMMA: f64 = 0.577215664901533;

/// Neumaier-compensated accumulator; keeps 1e-9-scale identities intact
/// across millions of additions.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    s: f64,
    c: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum { s: 0.0, c: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

// Bernoulli numbers B_2, B_4, ..., B_12 over (2j)!
const EM_COEFFS: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
];

/// Hurwitz zeta(s, a) for real s > 1, a > 0, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0);
    let n = 40usize;
    let mut acc = KahanSum::new();
    for k in 0..n {
        acc.add((a + k as f64).powf(-s));
    }
    let w = a + n as f64;
    acc.add(w.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * w.powf(-s));
    // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}
    let mut poch = s;
    let mut wpow = w.powf(-s - 1.0);
    for (j, coef) in EM_COEFFS.iter().enumerate() {
        acc.add(coef * poch * wpow);
        let m = 2 * j as i32 + 1;
        poch *= (s + m as f64) * (s + m as f64 + 1.0);
        wpow /= w * w;
        let _ = m;
    }
    acc.value()
}

/// Digamma by the defining series psi(s) = -gamma + sum_k (1/(k+1) - 1/(k+s)),
/// with a first-order tail correction. Deliberately a plain series (it serves
/// as an independent reference, not a performance path).
pub fn digamma(s: Complex64) -> Complex64 {
    assert!(s.re > 0.0 || s.im != 0.0, "pole at nonpositive reals");
    let n = 200_000usize;
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for k in 0..n {
        let kf = k as f64;
        let term = 1.0 / (kf + 1.0) - (s + kf).inv();
        re.add(term.re);
        im.add(term.im);
    }
    // tail: sum_{k>=n} (s-1)/((k+1)(k+s)) ~ (s-1)/n
    let tail = (s - 1.0) / n as f64;
    Complex64::new(re.value(), im.value()) + tail - EULER_GAMMA
}

/// Logarithmic integral from 2 to x by composite Simpson.
pub fn log_integral(x: f64) -> f64 {
    assert!(x >= 2.0);
    let n = 20_000usize;
    let h = (x - 2.0) / n as f64;
    let f = |t: f64| 1.0 / t.ln();
    let mut acc = KahanSum::new();
    acc.add(f(2.0) + f(x));
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc.add(w * f(2.0 + i as f64 * h));
    }
    acc.value() * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_handles_many_small_terms() {
        let mut acc = KahanSum::new();
        for _ in 0..10_000_000 {
            acc.add(0.1);
        }
        assert!((acc.value() - 1_000_000.0).abs() < 1e-6);
    }

    #[test]
    fn hurwitz_matches_zeta2() {
        assert!((hurwitz_zeta(2.0, 1.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        let s = 3.0;
        let lhs = hurwitz_zeta(s, 0.5);
        let rhs = (2f64.powf(s) - 1.0) * hurwitz_zeta(s, 1.0);
        assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn digamma_reference_points() {
        // psi(1) = -gamma
        let v = digamma(Complex64::new(1.0, 0.0));
        assert!((v.re + EULER_GAMMA).abs() < 2e-5, "psi(1) = {v}");
        assert!(v.im.abs() < 1e-12);
        // psi(2) = 1 - gamma
        let v = digamma(Complex64::new(2.0, 0.0));
        assert!((v.re - (1.0 - EULER_GAMMA)).abs() < 2e-5);
        // recurrence psi(s+1) = psi(s) + 1/s at a complex point
        let s = Complex64::new(1.5, 2.0);
        let lhs = digamma(s + 1.0);
        let rhs = digamma(s) + s.inv();
        assert!((lhs - rhs).norm() < 5e-5);
    }

    #[test]
    fn log_integral_reference() {
        // li(10) - li(2) = integral_2^10 dt/ln t ~ 5.120435724669806
        let v = log_integral(10.0);
        assert!((v - 5.120435724669806).abs() < 1e-6, "{v}");
    }
}
