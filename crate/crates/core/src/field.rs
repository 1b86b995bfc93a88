//! Exact arithmetic in an imaginary quadratic field K = Q(sqrt(d)).
//!
//! Elements are written x + y*omega in the integral basis {1, omega}, where
//! omega = (1+sqrt(d))/2 when d = 1 (mod 4) and omega = sqrt(d) otherwise.
//! omega satisfies omega^2 = omega_trace*omega - omega_norm, so all products
//! stay in exact integer arithmetic. Coordinates live in i128 and every
//! multiplication is overflow-checked; wraparound would silently corrupt all
//! downstream counts, so it aborts instead.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An algebraic integer x + y*omega of K.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    pub x: i128,
    pub y: i128,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { x: 0, y: 0 };
    pub const ONE: FieldElement = FieldElement { x: 1, y: 0 };

    pub fn new(x: i128, y: i128) -> Self {
        FieldElement { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}w", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy)]
struct ClassData {
    h_k: u64,
    rho_k: f64,
}

/// The field K = Q(sqrt(d)) for squarefree d < 0.
///
/// The class number and zeta residue are filled in by the class-group
/// construction; the struct is immutable afterwards and freely shareable.
#[derive(Debug, Clone)]
pub struct ImagQuadField {
    pub d: i64,
    pub d_k: i64,
    pub omega_trace: i64,
    pub omega_norm: i64,
    pub mu_count: u32,
    class: OnceLock<ClassData>,
}

fn is_squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[inline]
fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("i128 overflow in {a} * {b}"))
}

#[inline]
fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("i128 overflow in {a} + {b}"))
}

impl ImagQuadField {
    /// Builds the field from a squarefree negative d.
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::NonNegativeD(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        let one_mod4 = d.rem_euclid(4) == 1;
        let d_k = if one_mod4 { d } else { 4 * d };
        if d_k.abs() > 10_000 {
            return Err(Error::DiscriminantTooLarge(d_k));
        }
        let (omega_trace, omega_norm) = if one_mod4 { (1, (1 - d) / 4) } else { (0, -d) };
        let mu_count = match d_k {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        Ok(ImagQuadField {
            d,
            d_k,
            omega_trace,
            omega_norm,
            mu_count,
            class: OnceLock::new(),
        })
    }

    /// N(x + y*omega) = x^2 + xy*omega_trace + y^2*omega_norm, always >= 0.
    pub fn norm(&self, e: FieldElement) -> i128 {
        let t = self.omega_trace as i128;
        let n = self.omega_norm as i128;
        let v = cadd(
            cadd(cmul(e.x, e.x), cmul(cmul(e.x, e.y), t)),
            cmul(cmul(e.y, e.y), n),
        );
        debug_assert!(v >= 0);
        v
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        // omega^2 = t*omega - n
        let t = self.omega_trace as i128;
        let n = self.omega_norm as i128;
        let yy = cmul(a.y, b.y);
        FieldElement {
            x: cadd(cmul(a.x, b.x), -cmul(n, yy)),
            y: cadd(cadd(cmul(a.x, b.y), cmul(a.y, b.x)), cmul(t, yy)),
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement {
            x: cadd(a.x, b.x),
            y: cadd(a.y, b.y),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement {
            x: cadd(a.x, -b.x),
            y: cadd(a.y, -b.y),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement { x: -a.x, y: -a.y }
    }

    /// Complex conjugate: omega-bar = omega_trace - omega.
    pub fn conj(&self, a: FieldElement) -> FieldElement {
        FieldElement {
            x: cadd(a.x, cmul(self.omega_trace as i128, a.y)),
            y: -a.y,
        }
    }

    /// Minkowski embedding into R^2; |embed(e)|^2 equals N(e).
    pub fn embed(&self, e: FieldElement) -> (f64, f64) {
        let half_t = self.omega_trace as f64 / 2.0;
        let half_root = (self.d_k.unsigned_abs() as f64).sqrt() / 2.0;
        (e.x as f64 + e.y as f64 * half_t, e.y as f64 * half_root)
    }

    /// The mu_count roots of unity, listed as powers of a generator of mu_K.
    pub fn units(&self) -> Vec<FieldElement> {
        let g = self.mu_generator();
        let mut out = Vec::with_capacity(self.mu_count as usize);
        let mut cur = FieldElement::ONE;
        for _ in 0..self.mu_count {
            out.push(cur);
            cur = self.mul(cur, g);
        }
        debug_assert_eq!(cur, FieldElement::ONE);
        out
    }

    /// A generator of the cyclic group mu_K.
    pub fn mu_generator(&self) -> FieldElement {
        match self.d_k {
            -3 | -4 => FieldElement::new(0, 1),
            _ => FieldElement::new(-1, 0),
        }
    }

    pub fn is_unit(&self, e: FieldElement) -> bool {
        self.norm(e) == 1
    }

    /// Records the class number and derives the zeta residue from the class
    /// number formula rho_K = 2*pi*h_K / (|mu_K| * sqrt|d_K|). Idempotent.
    pub fn finalize_class_data(&self, h_k: u64) {
        let rho_k = 2.0 * std::f64::consts::PI * h_k as f64
            / (self.mu_count as f64 * (self.d_k.unsigned_abs() as f64).sqrt());
        let data = self.class.get_or_init(|| ClassData { h_k, rho_k });
        assert_eq!(data.h_k, h_k, "conflicting class numbers for d={}", self.d);
    }

    pub fn h_k(&self) -> u64 {
        self.class
            .get()
            .expect("class data not finalized; construct the class group first")
            .h_k
    }

    pub fn rho_k(&self) -> f64 {
        self.class
            .get()
            .expect("class data not finalized; construct the class group first")
            .rho_k
    }

    pub fn try_h_k(&self) -> Option<u64> {
        self.class.get().map(|c| c.h_k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let k = ImagQuadField::new(-1).unwrap();
        assert_eq!(
            (k.d_k, k.omega_trace, k.omega_norm, k.mu_count),
            (-4, 0, 1, 4)
        );
        let k = ImagQuadField::new(-3).unwrap();
        assert_eq!(
            (k.d_k, k.omega_trace, k.omega_norm, k.mu_count),
            (-3, 1, 1, 6)
        );
        let k = ImagQuadField::new(-5).unwrap();
        assert_eq!(
            (k.d_k, k.omega_trace, k.omega_norm, k.mu_count),
            (-20, 0, 5, 2)
        );
    }

    #[test]
    fn rejects_bad_d() {
        assert!(matches!(ImagQuadField::new(3), Err(Error::NonNegativeD(_))));
        assert!(matches!(ImagQuadField::new(0), Err(Error::NonNegativeD(_))));
        assert!(matches!(
            ImagQuadField::new(-4),
            Err(Error::NotSquarefree(_))
        ));
        assert!(matches!(
            ImagQuadField::new(-12),
            Err(Error::NotSquarefree(_))
        ));
        assert!(matches!(
            ImagQuadField::new(-10007),
            Err(Error::DiscriminantTooLarge(_))
        ));
    }

    #[test]
    fn norm_examples() {
        let k = ImagQuadField::new(-1).unwrap();
        assert_eq!(k.norm(FieldElement::new(2, 1)), 5);
        let k = ImagQuadField::new(-3).unwrap();
        assert_eq!(k.norm(FieldElement::new(0, 1)), 1);
        let k = ImagQuadField::new(-5).unwrap();
        assert_eq!(k.norm(FieldElement::new(1, 1)), 6);
    }

    #[test]
    fn units_examples() {
        let k = ImagQuadField::new(-1).unwrap();
        let u = k.units();
        assert_eq!(u.len(), 4);
        assert!(u.contains(&FieldElement::new(0, 1)));
        assert!(u.contains(&FieldElement::new(-1, 0)));
        let k = ImagQuadField::new(-3).unwrap();
        assert_eq!(k.units().len(), 6);
        let k = ImagQuadField::new(-5).unwrap();
        assert_eq!(k.units(), vec![FieldElement::ONE, FieldElement::new(-1, 0)]);
    }

    #[test]
    fn units_closed_under_multiplication() {
        for d in [-1, -2, -3, -5, -7, -11] {
            let k = ImagQuadField::new(d).unwrap();
            let u = k.units();
            for &a in &u {
                assert_eq!(k.norm(a), 1);
                for &b in &u {
                    assert!(u.contains(&k.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn embed_examples() {
        let k = ImagQuadField::new(-1).unwrap();
        assert_eq!(k.embed(FieldElement::ONE), (1.0, 0.0));
        let (re, im) = k.embed(FieldElement::new(2, 1));
        assert_eq!((re, im), (2.0, 1.0));
        let k3 = ImagQuadField::new(-3).unwrap();
        let (re, im) = k3.embed(FieldElement::new(0, 1));
        assert!((re - 0.5).abs() < 1e-15);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn embed_matches_norm() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for d in [-1, -2, -3, -5, -7, -11, -15, -23] {
            let k = ImagQuadField::new(d).unwrap();
            for _ in 0..2000 {
                let x = (next() % 2001) as i128 - 1000;
                let y = (next() % 2001) as i128 - 1000;
                let e = FieldElement::new(x, y);
                let (re, im) = k.embed(e);
                let n = k.norm(e) as f64;
                assert!((re * re + im * im - n).abs() <= 1e-9 * n.max(1.0));
            }
        }
    }

    #[test]
    fn norm_multiplicative_random_pairs() {
        // 10^4 random pairs per field, exact integer identity
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for d in [-1, -2, -3, -5, -7, -11, -15, -23] {
            let k = ImagQuadField::new(d).unwrap();
            for _ in 0..10_000 {
                let a = FieldElement::new(
                    (next() % 20001) as i128 - 10000,
                    (next() % 20001) as i128 - 10000,
                );
                let b = FieldElement::new(
                    (next() % 20001) as i128 - 10000,
                    (next() % 20001) as i128 - 10000,
                );
                assert_eq!(k.norm(k.mul(a, b)), k.norm(a) * k.norm(b));
            }
        }
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let k = ImagQuadField::new(-1).unwrap();
        let big = FieldElement::new(1 << 70, 1 << 70);
        let _ = k.norm(big);
    }
}
