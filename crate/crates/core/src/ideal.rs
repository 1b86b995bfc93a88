//! Integral ideals in Hermite normal form, rational prime splitting, ideal
//! enumeration up to a norm bound, and the multiplicative arithmetic tables
//! (von Mangoldt, Moebius, generalized Euler phi, sigma, divisor counts).
//!
//! An ideal is stored as Z*a + Z*(b + c*omega) with c | a, c | b, 0 <= b < a
//! and a*c | N(b + c*omega); the triple is unique per ideal and the norm is
//! a*c. Products are computed by reducing the four generator products back
//! to HNF, which keeps everything in exact integer arithmetic.

use crate::error::{Error, Result};
use crate::field::{FieldElement, ImagQuadField};
use crate::rational::{kronecker, sieve_primes, sqrt_mod_p};
use crate::special::KahanSum;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IdealHnf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl IdealHnf {
    pub const UNIT: IdealHnf = IdealHnf { a: 1, b: 0, c: 1 };

    pub fn norm(&self) -> i64 {
        self.a * self.c
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.a == 1 && self.c == 1
    }

    /// The principal ideal (e), from generators e and e*omega.
    pub fn principal(field: &ImagQuadField, e: FieldElement) -> IdealHnf {
        assert!(!e.is_zero(), "zero ideal");
        let ew = field.mul(e, FieldElement::new(0, 1));
        hnf_from_generators(&[(e.x, e.y), (ew.x, ew.y)])
    }

    /// Product of two ideals; the norm multiplies exactly.
    pub fn mul(&self, other: &IdealHnf, field: &ImagQuadField) -> IdealHnf {
        let g1 = (self.a as i128, 0i128);
        let g2 = (self.b as i128, self.c as i128);
        let mut gens = Vec::with_capacity(4);
        for &(x1, y1) in &[g1, g2] {
            for &(x2, y2) in &[(other.a as i128, 0i128), (other.b as i128, other.c as i128)] {
                let e = field.mul(FieldElement::new(x1, y1), FieldElement::new(x2, y2));
                gens.push((e.x, e.y));
            }
        }
        let out = hnf_from_generators(&gens);
        assert_eq!(
            out.norm() as i128,
            self.norm() as i128 * other.norm() as i128,
            "ideal product norm mismatch"
        );
        out
    }

    pub fn pow(&self, k: u32, field: &ImagQuadField) -> IdealHnf {
        let mut acc = IdealHnf::UNIT;
        for _ in 0..k {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Complex conjugate ideal.
    pub fn conj(&self, field: &ImagQuadField) -> IdealHnf {
        let t = field.omega_trace;
        let nb = (-(self.b + self.c * t)).rem_euclid(self.a);
        IdealHnf {
            a: self.a,
            b: nb,
            c: self.c,
        }
    }

    /// Membership test for x + y*omega.
    pub fn contains(&self, e: FieldElement) -> bool {
        let c = self.c as i128;
        if e.y % c != 0 {
            return false;
        }
        let k = e.y / c;
        (e.x - k * self.b as i128) % (self.a as i128) == 0
    }

    /// self | other, i.e. other is contained in self.
    pub fn divides(&self, other: &IdealHnf) -> bool {
        self.contains(FieldElement::new(other.a as i128, 0))
            && self.contains(FieldElement::new(other.b as i128, other.c as i128))
    }

    /// Ideal sum (gcd).
    pub fn sum(&self, other: &IdealHnf) -> IdealHnf {
        hnf_from_generators(&[
            (self.a as i128, 0),
            (self.b as i128, self.c as i128),
            (other.a as i128, 0),
            (other.b as i128, other.c as i128),
        ])
    }

    pub fn is_coprime(&self, other: &IdealHnf) -> bool {
        self.sum(other).is_unit_ideal()
    }

    /// Primitive part: self = c * primitive, primitive has HNF [a/c, b/c, 1].
    pub fn primitive_part(&self) -> IdealHnf {
        IdealHnf {
            a: self.a / self.c,
            b: self.b / self.c,
            c: 1,
        }
    }
}

fn igcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// HNF of the Z-module spanned by (x, y) generator pairs (coordinates in the
/// {1, omega} basis). The module must have full rank.
fn hnf_from_generators(gens: &[(i128, i128)]) -> IdealHnf {
    let mut a_acc: i128 = 0; // gcd of pure-x vectors
    let mut bv: i128 = 0;
    let mut cv: i128 = 0; // current (B, C) with C = gcd of y-components
    for &(u, vy) in gens {
        if vy == 0 {
            a_acc = igcd(a_acc, u);
            continue;
        }
        if cv == 0 {
            bv = u;
            cv = vy;
            continue;
        }
        let (g, s, t) = ext_gcd(cv, vy);
        let leftover = (cv / g) * u - (vy / g) * bv;
        a_acc = igcd(a_acc, leftover);
        bv = s * bv + t * u;
        cv = g;
    }
    assert!(a_acc != 0 && cv != 0, "module does not have full rank");
    if cv < 0 {
        cv = -cv;
        bv = -bv;
    }
    let a_out = a_acc.abs();
    let b_out = bv.rem_euclid(a_out);
    let (a, b, c) = (
        i64::try_from(a_out).expect("HNF entry overflow"),
        i64::try_from(b_out).expect("HNF entry overflow"),
        i64::try_from(cv).expect("HNF entry overflow"),
    );
    debug_assert!(a % c == 0 && b % c == 0, "not omega-closed: ({a},{b},{c})");
    IdealHnf { a, b, c }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub ideal: IdealHnf,
    pub p: u64,
    pub f: u8,
    pub ramified: bool,
}

impl PrimeIdeal {
    pub fn norm(&self) -> i64 {
        self.ideal.norm()
    }
}

#[derive(Clone, Debug)]
pub enum Splitting {
    Split(PrimeIdeal, PrimeIdeal),
    Inert(PrimeIdeal),
    Ramified(PrimeIdeal),
}

impl Splitting {
    pub fn primes(&self) -> Vec<PrimeIdeal> {
        match self {
            Splitting::Split(p1, p2) => vec![*p1, *p2],
            Splitting::Inert(p) | Splitting::Ramified(p) => vec![*p],
        }
    }
}

/// Splits a rational prime according to the Kronecker symbol (d_K | p).
pub fn factor_rational_prime(field: &ImagQuadField, p: u64) -> Splitting {
    let t = field.omega_trace;
    let n = field.omega_norm;
    let sym = kronecker(field.d_k, p as i64);
    let mk = |b: i64| PrimeIdeal {
        ideal: IdealHnf {
            a: p as i64,
            b: b.rem_euclid(p as i64),
            c: 1,
        },
        p,
        f: 1,
        ramified: sym == 0,
    };
    match sym {
        1 => {
            // roots of b^2 + t b + n mod p
            if p == 2 {
                let roots: Vec<i64> = (0..2).filter(|&b| (b * b + t * b + n) % 2 == 0).collect();
                assert_eq!(roots.len(), 2);
                let (mut q1, mut q2) = (mk(roots[0]), mk(roots[1]));
                if q1.ideal.b > q2.ideal.b {
                    std::mem::swap(&mut q1, &mut q2);
                }
                Splitting::Split(q1, q2)
            } else {
                let s = sqrt_mod_p(field.d_k.rem_euclid(p as i64) as u64, p)
                    .expect("split prime must have a square root of d_K");
                let inv2 = crate::rational::mod_inverse(2 % p, p) as i128;
                let r1 = ((-(t as i128) + s as i128) * inv2).rem_euclid(p as i128) as i64;
                let r2 = ((-(t as i128) - s as i128) * inv2).rem_euclid(p as i128) as i64;
                let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                Splitting::Split(mk(lo), mk(hi))
            }
        }
        -1 => Splitting::Inert(PrimeIdeal {
            ideal: IdealHnf {
                a: p as i64,
                b: 0,
                c: p as i64,
            },
            p,
            f: 2,
            ramified: false,
        }),
        _ => {
            let b = if p == 2 {
                (0..2)
                    .find(|&b| (b * b + t * b + n) % 2 == 0)
                    .expect("ramified 2 must have a root")
            } else {
                let inv2 = crate::rational::mod_inverse(2 % p, p) as i128;
                ((-(t as i128)) * inv2).rem_euclid(p as i128) as i64
            };
            Splitting::Ramified(mk(b))
        }
    }
}

/// All prime ideals of norm <= x, sorted by (norm, b).
pub fn prime_ideals_up_to(field: &ImagQuadField, x: u64) -> Vec<PrimeIdeal> {
    let mut out = Vec::new();
    for p in sieve_primes(x) {
        match factor_rational_prime(field, p) {
            Splitting::Split(q1, q2) => {
                out.push(q1);
                out.push(q2);
            }
            Splitting::Ramified(q) => out.push(q),
            Splitting::Inert(q) => {
                if p * p <= x {
                    out.push(q);
                }
            }
        }
    }
    out.sort_by_key(|q| (q.norm(), q.ideal.b));
    out
}

const ENUM_CAP: f64 = 1e7 + 0.5;

/// Every integral ideal of norm <= x, each exactly once, sorted by
/// (norm, a, b, c). Built by multiplicative composition over prime ideals;
/// the raw HNF scan lives in `oracle` as the testing oracle.
pub fn enumerate_ideals(field: &ImagQuadField, x: f64) -> Result<Vec<IdealHnf>> {
    if x > ENUM_CAP {
        return Err(Error::EnumerationTooLarge(x));
    }
    if x < 1.0 {
        return Ok(Vec::new());
    }
    let bound = x.floor() as i64;
    let primes = prime_ideals_up_to(field, bound as u64);
    let mut out = Vec::new();
    fn rec(
        field: &ImagQuadField,
        primes: &[PrimeIdeal],
        start: usize,
        cur: IdealHnf,
        norm: i64,
        bound: i64,
        out: &mut Vec<IdealHnf>,
    ) {
        out.push(cur);
        for (i, q) in primes.iter().enumerate().skip(start) {
            let nq = q.norm();
            if norm.saturating_mul(nq) > bound {
                break;
            }
            let mut id = cur.mul(&q.ideal, field);
            let mut n = norm * nq;
            loop {
                rec(field, primes, i + 1, id, n, bound, out);
                if n.saturating_mul(nq) > bound {
                    break;
                }
                id = id.mul(&q.ideal, field);
                n *= nq;
            }
        }
    }
    rec(field, &primes, 0, IdealHnf::UNIT, 1, bound, &mut out);
    out.sort_by_key(|i| (i.norm(), i.a, i.b, i.c));
    Ok(out)
}

/// r_K(n) = number of integral ideals of norm n, for n <= limit, by a
/// multiplicative sieve over smallest prime factors and splitting types.
pub fn ideal_counts(field: &ImagQuadField, limit: u64) -> Vec<u32> {
    assert!(limit <= 10_000_000, "count sieve capped at 10^7");
    let n = limit as usize;
    let mut lp = vec![0u32; n + 1];
    let mut ppow = vec![0u32; n + 1]; // spf^multiplicity part of n
    let mut r = vec![0u32; n + 1];
    if n >= 1 {
        r[1] = 1;
    }
    let mut primes: Vec<u32> = Vec::new();
    // r at a prime power, from the splitting type
    let r_pp = |p: u32, e: u32| -> u32 {
        match kronecker(field.d_k, p as i64) {
            1 => e + 1,
            -1 => 1 - (e & 1),
            _ => 1,
        }
    };
    for i in 2..=n {
        if lp[i] == 0 {
            lp[i] = i as u32;
            ppow[i] = i as u32;
            primes.push(i as u32);
        }
        let li = lp[i];
        // r[i]: split off the spf-power part
        let pp = ppow[i] as usize;
        if pp == i {
            // prime power p^e
            let p = li;
            let mut e = 0;
            let mut m = i;
            while m > 1 {
                m /= p as usize;
                e += 1;
            }
            r[i] = r_pp(p, e);
        } else {
            r[i] = r[i / pp] * r[pp];
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > li || ip > n {
                break;
            }
            lp[ip] = p;
            ppow[ip] = if p == li { ppow[i] * p } else { p };
        }
    }
    r
}

/// Per-ideal record of the arithmetic functions used throughout the bounds.
#[derive(Clone, Copy, Debug)]
pub struct ArithRecord {
    pub ideal: IdealHnf,
    pub norm: u64,
    /// von Mangoldt: log N(P) on prime powers, else 0
    pub lambda: f64,
    pub mu: i8,
    pub phi: u64,
    pub sigma: u64,
    pub big_omega: u8,
    pub divisors: u32,
}

pub struct ArithTable {
    pub x: u64,
    pub records: Vec<ArithRecord>,
}

impl ArithTable {
    pub fn record_for(&self, ideal: &IdealHnf) -> Option<&ArithRecord> {
        self.records
            .binary_search_by_key(&(ideal.norm(), ideal.a, ideal.b, ideal.c), |r| {
                (r.ideal.norm(), r.ideal.a, r.ideal.b, r.ideal.c)
            })
            .ok()
            .map(|i| &self.records[i])
    }
}

/// Exact tables of Lambda, mu, phi_K, sigma, Omega_K, d for all norms <= x.
pub fn arith_table(field: &ImagQuadField, x: f64) -> Result<ArithTable> {
    if x > ENUM_CAP {
        return Err(Error::EnumerationTooLarge(x));
    }
    if x < 1.0 {
        return Err(Error::OutOfRange(format!(
            "arith_table needs x >= 1, got {x}"
        )));
    }
    let bound = x.floor() as i64;
    let primes = prime_ideals_up_to(field, bound as u64);

    struct St {
        ideal: IdealHnf,
        norm: i64,
        mu: i8,
        phi: u64,
        sigma: u64,
        big_omega: u8,
        divisors: u32,
        support: u8,
        lambda: f64,
    }

    fn rec(
        field: &ImagQuadField,
        primes: &[PrimeIdeal],
        start: usize,
        st: &St,
        bound: i64,
        out: &mut Vec<ArithRecord>,
    ) {
        out.push(ArithRecord {
            ideal: st.ideal,
            norm: st.norm as u64,
            lambda: if st.support == 1 { st.lambda } else { 0.0 },
            mu: st.mu,
            phi: st.phi,
            sigma: st.sigma,
            big_omega: st.big_omega,
            divisors: st.divisors,
        });
        for (i, q) in primes.iter().enumerate().skip(start) {
            let nq = q.norm();
            if st.norm.saturating_mul(nq) > bound {
                break;
            }
            let mut id = st.ideal.mul(&q.ideal, field);
            let mut n = st.norm * nq;
            let mut e = 1u32;
            let mut sigma_pk = 1 + nq as u64; // 1 + NP
            let mut phi_pk = (nq - 1) as u64; // NP^{e-1} (NP - 1)
            loop {
                let next = St {
                    ideal: id,
                    norm: n,
                    mu: if e == 1 { -st.mu } else { 0 },
                    phi: st.phi * phi_pk,
                    sigma: st.sigma * sigma_pk,
                    big_omega: st.big_omega + e as u8,
                    divisors: st.divisors * (e + 1),
                    support: st.support + 1,
                    lambda: (nq as f64).ln(), // log NP, independent of e
                };
                rec(field, primes, i + 1, &next, bound, out);
                if n.saturating_mul(nq) > bound {
                    break;
                }
                id = id.mul(&q.ideal, field);
                n *= nq;
                e += 1;
                sigma_pk = sigma_pk * nq as u64 + 1;
                phi_pk *= nq as u64;
            }
        }
    }

    let mut out = Vec::new();
    let root = St {
        ideal: IdealHnf::UNIT,
        norm: 1,
        mu: 1,
        phi: 1,
        sigma: 1,
        big_omega: 0,
        divisors: 1,
        support: 0,
        lambda: 0.0,
    };
    rec(field, &primes, 0, &root, bound, &mut out);
    out.sort_by_key(|r| (r.norm, r.ideal.a, r.ideal.b, r.ideal.c));
    Ok(ArithTable {
        x: bound as u64,
        records: out,
    })
}

/// All nonzero lattice points with norm <= u.
pub fn lattice_points_up_to(field: &ImagQuadField, u: u64) -> Vec<FieldElement> {
    let dk = field.d_k.unsigned_abs() as f64;
    let t = field.omega_trace as i128;
    let y_max = (2.0 * (u as f64 / dk).sqrt()).floor() as i128 + 1;
    let mut out = Vec::new();
    for y in -y_max..=y_max {
        let disc = 4 * u as i128 - field.d_k.unsigned_abs() as i128 * y * y;
        if disc < 0 {
            continue;
        }
        let root = (disc as f64).sqrt() as i128 + 2;
        let lo = (-t * y - root) / 2 - 2;
        let hi = (-t * y + root) / 2 + 2;
        for x in lo..=hi {
            let e = FieldElement::new(x, y);
            let norm = field.norm(e);
            if norm >= 1 && norm as u128 <= u as u128 {
                out.push(e);
            }
        }
    }
    out
}

/// An element is prime iff the ideal it generates is prime: its norm is a
/// rational prime, or the square of an inert prime with the element a
/// rational-prime associate.
pub fn is_prime_element(field: &ImagQuadField, e: FieldElement) -> bool {
    let n = field.norm(e);
    if n <= 1 || n > u64::MAX as i128 {
        return false;
    }
    let n = n as u64;
    if crate::rational::is_prime_u64(n) {
        return true;
    }
    let p = n.isqrt();
    if p * p != n || !crate::rational::is_prime_u64(p) {
        return false;
    }
    // inert p with e an associate of p: both coordinates divisible by p
    kronecker(field.d_k, p as i64) == -1 && e.x % p as i128 == 0 && e.y % p as i128 == 0
}

/// sum_{NP <= x} log NP / NP over prime ideals.
pub fn mertens_sum(field: &ImagQuadField, x: f64) -> f64 {
    let mut acc = KahanSum::new();
    if x < 2.0 {
        return 0.0;
    }
    for q in prime_ideals_up_to(field, x.floor() as u64) {
        let nq = q.norm() as f64;
        if nq <= x {
            acc.add(nq.ln() / nq);
        }
    }
    acc.value()
}
