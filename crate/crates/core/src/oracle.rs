//! Slow, independent reference computations used by the test suites. These
//! deliberately avoid the production code paths they are checked against:
//! enumeration scans raw HNF triples, and the averaged log-derivative is
//! integrated numerically instead of through its closed form.

use crate::field::{FieldElement, ImagQuadField};
use crate::ideal::IdealHnf;
use crate::special::KahanSum;

/// Every integral ideal of norm <= x by scanning HNF triples directly:
/// primitive parts [a', b'+omega] with a' | N(b'+omega), scaled by c.
/// Quadratic in x; keep x modest.
pub fn enumerate_ideals_bruteforce(field: &ImagQuadField, x: u64) -> Vec<IdealHnf> {
    assert!(x <= 200_000, "brute-force oracle is O(x^2)");
    let t = field.omega_trace as i128;
    let n = field.omega_norm as i128;
    let mut out = Vec::new();
    let mut ap: i64 = 1;
    while (ap as u64) <= x {
        for bp in 0..ap {
            let norm_elem = (bp as i128) * (bp as i128) + t * bp as i128 + n;
            if norm_elem % (ap as i128) == 0 {
                let mut c: i64 = 1;
                while (ap as u64) * (c as u64) * (c as u64) <= x {
                    out.push(IdealHnf {
                        a: ap * c,
                        b: bp * c,
                        c,
                    });
                    c += 1;
                }
            }
        }
        ap += 1;
    }
    out.sort_by_key(|i| (i.norm(), i.a, i.b, i.c));
    out
}

/// Riemann-sum evaluation of the averaged truncation
///   (1/(x-1)) * int_1^x  S(t) dt,   S(t) = sum over rows with norm <= t,
/// where `rows` carries (norm, weight) pairs. Midpoint rule on a fine grid;
/// accuracy is limited by the jump sizes, so tolerances stay around 1e-3.
pub fn averaged_step_integral(rows: &[(f64, f64)], x: f64, panels: usize) -> f64 {
    assert!(x > 1.0);
    let mut sorted: Vec<(f64, f64)> = rows.iter().filter(|r| r.0 <= x).cloned().collect();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let h = (x - 1.0) / panels as f64;
    let mut acc = KahanSum::new();
    let mut idx = 0usize;
    let mut partial = 0.0;
    for i in 0..panels {
        let mid = 1.0 + (i as f64 + 0.5) * h;
        while idx < sorted.len() && sorted[idx].0 <= mid {
            partial += sorted[idx].1;
            idx += 1;
        }
        acc.add(partial);
    }
    acc.value() * h / (x - 1.0)
}

/// #{alpha != 0 : 1 <= N(alpha) <= u, (alpha(t*alpha + 1), P(z)) = 1} by raw
/// lattice sweep and per-prime membership tests.
pub fn sifted_pair_survivors(
    field: &ImagQuadField,
    sieve_primes: &[IdealHnf],
    t: FieldElement,
    u: u64,
) -> u64 {
    let mut count = 0u64;
    for alpha in crate::ideal::lattice_points_up_to(field, u) {
        let w = field.mul(alpha, field.add(field.mul(t, alpha), FieldElement::ONE));
        if w.is_zero() {
            continue;
        }
        if sieve_primes.iter().all(|p| !p.contains(w)) {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::lattice_points_up_to;

    #[test]
    fn lattice_point_count_matches_area() {
        // Gaussian integers with norm <= u: roughly pi*u points
        let f = ImagQuadField::new(-1).unwrap();
        let pts = lattice_points_up_to(&f, 1000);
        let expected = std::f64::consts::PI * 1000.0;
        assert!((pts.len() as f64 - expected).abs() < 150.0, "{}", pts.len());
        // exactness near the boundary: every point has norm in [1, u]
        for p in &pts {
            let n = f.norm(*p);
            assert!(n >= 1 && n <= 1000);
        }
        // no duplicates
        let mut v = pts.clone();
        v.sort_by_key(|e| (e.x, e.y));
        v.dedup();
        assert_eq!(v.len(), pts.len());
    }

    #[test]
    fn step_integral_of_constant() {
        // single jump of weight w at t=2: integral = w*(x-2)/(x-1)
        let rows = vec![(2.0, 3.5)];
        let v = averaged_step_integral(&rows, 11.0, 200_000);
        assert!((v - 3.5 * 9.0 / 10.0).abs() < 1e-3);
    }
}
