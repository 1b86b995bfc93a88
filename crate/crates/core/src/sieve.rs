//! Selberg sieve over O_K for pairs (alpha, t*alpha + 1) both prime.
//!
//! P(z) is the product of the prime ideals of norm <= z lying over rational
//! primes coprime to 2310 = 2*3*5*7*11. For a shift t the weights are
//!   rho(b)   = 2^{Omega(b_(t))}, b_(t) the maximal divisor coprime to (t),
//!   f(b)     = Nb / rho(b),
//!   f1       = mu * f (Dirichlet convolution),
//! all multiplicative, and the sieve weights are
//!   lambda_e = mu(e) f(e) S_e(z/Ne) / (f1(e) S_OK(z)),
//! supported on squarefree e | P(z) with Ne <= z, where
//!   S_e(y)   = sum_{Na <= y, (a,(2310)e)=1} mu^2(a)/f1(a).
//!
//! Weights are exact rationals while the divisor lattice of P(z) stays
//! within 2^20 nodes, doubles beyond that; all sieve identities are checked
//! exactly on the rational path and to 1e-10 on the double path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::class_group::ClassContext;
use crate::error::{Error, Result};
use crate::field::{FieldElement, ImagQuadField};
use crate::ideal::{is_prime_element, lattice_points_up_to, prime_ideals_up_to, IdealHnf};

/// Scalar the weight tables are computed in: exact rationals or doubles.
trait Weight: Clone + PartialEq {
    fn w_zero() -> Self;
    fn w_one() -> Self;
    fn w_ratio(num: i64, den: u64) -> Self;
    fn w_add(&self, o: &Self) -> Self;
    fn w_sub(&self, o: &Self) -> Self;
    fn w_mul(&self, o: &Self) -> Self;
    fn w_div(&self, o: &Self) -> Self;
    fn w_neg(&self) -> Self;
    fn w_to_f64(&self) -> f64;
}

impl Weight for BigRational {
    fn w_zero() -> Self {
        Zero::zero()
    }
    fn w_one() -> Self {
        One::one()
    }
    fn w_ratio(num: i64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn w_add(&self, o: &Self) -> Self {
        self + o
    }
    fn w_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn w_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn w_div(&self, o: &Self) -> Self {
        self / o
    }
    fn w_neg(&self) -> Self {
        -self
    }
    fn w_to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).expect("rational out of f64 range")
    }
}

impl Weight for f64 {
    fn w_zero() -> Self {
        0.0
    }
    fn w_one() -> Self {
        1.0
    }
    fn w_ratio(num: i64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn w_add(&self, o: &Self) -> Self {
        self + o
    }
    fn w_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn w_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn w_div(&self, o: &Self) -> Self {
        self / o
    }
    fn w_neg(&self) -> Self {
        -self
    }
    fn w_to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SievePrime {
    pub ideal: IdealHnf,
    pub norm: u64,
    /// 2^{Omega(P_(t))}: 1 when P | (t), else 2
    pub rho: u32,
}

/// Squarefree divisor of P(z) as a bitmask over the sieve primes.
pub type DivisorMask = u32;

pub struct SieveContext {
    pub t: FieldElement,
    pub z: f64,
    pub primes: Vec<SievePrime>,
    /// all squarefree divisors with Ne <= z (the lambda support), sorted by
    /// (norm, mask); the empty mask (O_K) comes first
    pub support: Vec<(DivisorMask, u64)>,
    lambda_exact: Option<Vec<BigRational>>,
    lambda_f64: Vec<f64>,
    s_unit_exact: Option<BigRational>,
    s_unit_f64: f64,
    pub exact: bool,
}

const EXACT_NODE_CAP: u32 = 20; // 2^20 divisor-lattice nodes

/// Builds the full weight system for shift t and level z >= 13.
pub fn build_context(ctx: &ClassContext, t: FieldElement, z: f64) -> Result<SieveContext> {
    let field = &ctx.field;
    if t.is_zero() || field.is_unit(t) {
        return Err(Error::UnitShift);
    }
    if z < 13.0 {
        return Err(Error::OutOfRange(format!(
            "sieve level z must be >= 13, got {z}"
        )));
    }
    let t_ideal = IdealHnf::principal(field, t);
    let mut primes: Vec<SievePrime> = prime_ideals_up_to(field, z.floor() as u64)
        .into_iter()
        .filter(|q| ![2u64, 3, 5, 7, 11].contains(&q.p) && (q.norm() as f64) <= z)
        .map(|q| SievePrime {
            ideal: q.ideal,
            norm: q.norm() as u64,
            rho: if t_ideal.divides(&q.ideal) || q.ideal.contains(t) {
                1
            } else {
                2
            },
        })
        .collect();
    primes.sort_by_key(|p| (p.norm, p.ideal.b));
    if primes.len() as u32 > 31 {
        return Err(Error::OutOfRange(
            "more than 31 sieve primes; bitmask representation capped".into(),
        ));
    }

    // all squarefree divisors with norm <= z
    let mut support: Vec<(DivisorMask, u64)> = vec![(0, 1)];
    for (i, p) in primes.iter().enumerate() {
        let mut extra = Vec::new();
        for &(mask, norm) in &support {
            let nn = norm.saturating_mul(p.norm);
            if (nn as f64) <= z {
                extra.push((mask | (1 << i), nn));
            }
        }
        support.extend(extra);
    }
    support.sort_by_key(|&(mask, norm)| (norm, mask));

    let exact = (primes.len() as u32) < EXACT_NODE_CAP;
    let mut out = SieveContext {
        t,
        z,
        primes,
        support,
        lambda_exact: None,
        lambda_f64: Vec::new(),
        s_unit_exact: None,
        s_unit_f64: 0.0,
        exact,
    };
    if exact {
        let (lambda, s_unit) = out.weights::<BigRational>();
        out.lambda_f64 = lambda.iter().map(|l| l.w_to_f64()).collect();
        out.s_unit_f64 = s_unit.w_to_f64();
        out.lambda_exact = Some(lambda);
        out.s_unit_exact = Some(s_unit);
    } else {
        let (lambda, s_unit) = out.weights::<f64>();
        out.lambda_f64 = lambda;
        out.s_unit_f64 = s_unit;
    }
    Ok(out)
}

impl SieveContext {
    pub fn mask_norm(&self, mask: DivisorMask) -> u64 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p.norm)
            .product()
    }

    pub fn mask_ideal(&self, mask: DivisorMask, field: &ImagQuadField) -> IdealHnf {
        let mut acc = IdealHnf::UNIT;
        for (i, p) in self.primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc.mul(&p.ideal, field);
            }
        }
        acc
    }

    pub fn rho_of_mask(&self, mask: DivisorMask) -> u64 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p.rho as u64)
            .product()
    }

    fn f_of<W: Weight>(&self, mask: DivisorMask) -> W {
        let mut acc = W::w_one();
        for (i, p) in self.primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc.w_mul(&W::w_ratio(p.norm as i64, p.rho as u64));
            }
        }
        acc
    }

    fn f1_of<W: Weight>(&self, mask: DivisorMask) -> W {
        let mut acc = W::w_one();
        for (i, p) in self.primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let fp = W::w_ratio(p.norm as i64, p.rho as u64);
                acc = acc.w_mul(&fp.w_sub(&W::w_one()));
            }
        }
        acc
    }

    pub fn f_f64(&self, mask: DivisorMask) -> f64 {
        self.f_of::<f64>(mask)
    }

    pub fn f1_f64(&self, mask: DivisorMask) -> f64 {
        self.f1_of::<f64>(mask)
    }

    /// S_e(y) = sum over squarefree a coprime to (2310) e with Na <= y of
    /// 1/f1(a); the summands are exactly the P(z)-divisor masks disjoint
    /// from e.
    fn s_value<W: Weight>(&self, e_mask: DivisorMask, y: f64) -> W {
        let mut acc = W::w_zero();
        for &(mask, norm) in &self.support {
            if mask & e_mask == 0 && (norm as f64) <= y {
                acc = acc.w_add(&W::w_one().w_div(&self.f1_of::<W>(mask)));
            }
        }
        acc
    }

    fn weights<W: Weight>(&self) -> (Vec<W>, W) {
        let s_unit: W = self.s_value(0, self.z);
        let lambda: Vec<W> = self
            .support
            .iter()
            .map(|&(mask, norm)| {
                let mu_sign = mask.count_ones() % 2 == 1;
                let f = self.f_of::<W>(mask);
                let f1 = self.f1_of::<W>(mask);
                let s_e: W = self.s_value(mask, self.z / norm as f64);
                let v = f.w_mul(&s_e).w_div(&f1.w_mul(&s_unit));
                if mu_sign {
                    v.w_neg()
                } else {
                    v
                }
            })
            .collect();
        (lambda, s_unit)
    }

    pub fn lambda_f64(&self, support_index: usize) -> f64 {
        self.lambda_f64[support_index]
    }

    pub fn lambda_unit_is_one(&self) -> bool {
        match &self.lambda_exact {
            Some(l) => l[0].is_one(),
            None => (self.lambda_f64[0] - 1.0).abs() < 1e-12,
        }
    }

    /// Verifies  sum_{c | P(z), a | c} lambda_c / f(c)
    ///         = [Na <= z] * mu(a) / (f1(a) S_OK(z))
    /// for a squarefree divisor a of P(z) (any norm). Exact on the rational
    /// path, 1e-10 otherwise.
    pub fn dual_identity_check(&self, a_mask: DivisorMask) -> bool {
        match &self.lambda_exact {
            Some(lambda) => {
                let mut lhs: BigRational = Zero::zero();
                for (idx, &(mask, _)) in self.support.iter().enumerate() {
                    if mask & a_mask == a_mask {
                        lhs += &lambda[idx] / self.f_of::<BigRational>(mask);
                    }
                }
                let a_norm = self.mask_norm(a_mask);
                let rhs: BigRational = if (a_norm as f64) <= self.z {
                    let mu: BigRational = if a_mask.count_ones() % 2 == 1 {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    mu / (self.f1_of::<BigRational>(a_mask) * self.s_unit_exact.clone().unwrap())
                } else {
                    Zero::zero()
                };
                lhs == rhs
            }
            None => {
                let mut lhs = 0.0;
                for (idx, &(mask, _)) in self.support.iter().enumerate() {
                    if mask & a_mask == a_mask {
                        lhs += self.lambda_f64[idx] / self.f_f64(mask);
                    }
                }
                let a_norm = self.mask_norm(a_mask);
                let rhs = if (a_norm as f64) <= self.z {
                    let mu = if a_mask.count_ones() % 2 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    mu / (self.f1_f64(a_mask) * self.s_unit_f64)
                } else {
                    0.0
                };
                (lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0)
            }
        }
    }

    /// The quadratic-form upper bound
    ///   sum_{b1, b2} lambda_{b1} lambda_{b2} #{alpha : 1 <= N(alpha) <= u,
    ///                                           \[b1,b2\] | (alpha (t alpha + 1))}
    /// by direct residue counting (no asymptotic substitution). Selberg
    /// majorization makes this an upper bound for the sifted count, up to
    /// nothing: the dominance is exact.
    pub fn sieve_upper_bound(&self, field: &ImagQuadField, u: u64) -> Result<f64> {
        if (u as f64) < self.z * self.z {
            return Err(Error::OutOfRange(format!(
                "sieve_upper_bound needs u >= z^2 = {}, got {u}",
                self.z * self.z
            )));
        }
        let counts = self.pair_divisibility_counts(field, u);
        match &self.lambda_exact {
            Some(lambda) => {
                let mut acc: BigRational = Zero::zero();
                for (i, &(m1, _)) in self.support.iter().enumerate() {
                    for (j, &(m2, _)) in self.support.iter().enumerate() {
                        let lcm = m1 | m2;
                        acc += &lambda[i] * &lambda[j] * BigInt::from(counts[lcm as usize]);
                    }
                }
                Ok(acc.to_f64().unwrap())
            }
            None => {
                let mut acc = 0.0;
                for (i, &(m1, _)) in self.support.iter().enumerate() {
                    for (j, &(m2, _)) in self.support.iter().enumerate() {
                        acc += self.lambda_f64[i]
                            * self.lambda_f64[j]
                            * counts[(m1 | m2) as usize] as f64;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Exact-rational version of the quadratic form, for dominance tests.
    pub fn sieve_upper_bound_exact(
        &self,
        field: &ImagQuadField,
        u: u64,
    ) -> Result<Option<BigRational>> {
        if (u as f64) < self.z * self.z {
            return Err(Error::OutOfRange(format!(
                "sieve_upper_bound needs u >= z^2 = {}, got {u}",
                self.z * self.z
            )));
        }
        let Some(lambda) = &self.lambda_exact else {
            return Ok(None);
        };
        let counts = self.pair_divisibility_counts(field, u);
        let mut acc: BigRational = Zero::zero();
        for (i, &(m1, _)) in self.support.iter().enumerate() {
            for (j, &(m2, _)) in self.support.iter().enumerate() {
                let lcm = m1 | m2;
                acc += &lambda[i] * &lambda[j] * BigInt::from(counts[lcm as usize]);
            }
        }
        Ok(Some(acc))
    }

    /// counts[mask] = #{alpha : 1 <= N(alpha) <= u, mask-ideal | (alpha(t alpha+1))}
    fn pair_divisibility_counts(&self, field: &ImagQuadField, u: u64) -> Vec<u64> {
        let full: u32 = if self.primes.is_empty() {
            0
        } else {
            (1u32 << self.primes.len()) - 1
        };
        let mut counts = vec![0u64; full as usize + 1];
        for alpha in lattice_points_up_to(field, u) {
            let w = field.mul(
                alpha,
                field.add(field.mul(self.t, alpha), FieldElement::ONE),
            );
            let mut divmask: u32 = 0;
            for (i, p) in self.primes.iter().enumerate() {
                if p.ideal.contains(w) {
                    divmask |= 1 << i;
                }
            }
            // every mask contained in divmask divides the product
            let mut sub = divmask;
            loop {
                counts[sub as usize] += 1;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & divmask;
            }
        }
        counts
    }

    /// #{alpha : 1 <= N(alpha) <= u, (alpha(t alpha + 1), P(z)) = 1}.
    pub fn sifted_count(&self, field: &ImagQuadField, u: u64) -> u64 {
        let prime_ideals: Vec<IdealHnf> = self.primes.iter().map(|p| p.ideal).collect();
        crate::oracle::sifted_pair_survivors(field, &prime_ideals, self.t, u)
    }

    /// sum over support pairs of |lambda lambda| rho(\[b1,b2\]) / sqrt(N\[b1,b2\]).
    pub fn error_term_sum(&self) -> f64 {
        let mut acc = 0.0;
        for (i, &(m1, _)) in self.support.iter().enumerate() {
            for (j, &(m2, _)) in self.support.iter().enumerate() {
                let lcm = m1 | m2;
                let n = self.mask_norm(lcm) as f64;
                acc += self.lambda_f64[i].abs()
                    * self.lambda_f64[j].abs()
                    * self.rho_of_mask(lcm) as f64
                    / n.sqrt();
            }
        }
        acc
    }

    pub fn all_divisor_masks(&self) -> impl Iterator<Item = DivisorMask> {
        let n = self.primes.len();
        0..(1u32 << n)
    }
}

/// Omega of the maximal divisor of b coprime to (t): the valuations of b
/// at every prime ideal not dividing (t), summed with multiplicity.
pub fn omega_coprime_part(field: &ImagQuadField, t: FieldElement, b: &IdealHnf) -> u32 {
    let t_ideal = IdealHnf::principal(field, t);
    let mut omega = 0u32;
    for p in crate::rational::factor_u64(b.norm() as u64) {
        for q in crate::ideal::factor_rational_prime(field, p.0).primes() {
            if t_ideal.divides(&q.ideal) || q.ideal.contains(t) {
                continue;
            }
            let mut power = q.ideal;
            while power.divides(b) {
                omega += 1;
                power = power.mul(&q.ideal, field);
            }
        }
    }
    omega
}

/// rho(b) = 2^{Omega(b_(t))} for an arbitrary nonzero integral ideal.
pub fn rho_of_ideal(field: &ImagQuadField, t: FieldElement, b: &IdealHnf) -> u64 {
    1u64 << omega_coprime_part(field, t, b)
}

/// f_(t)(b) = Nb / rho(b) for an arbitrary nonzero integral ideal.
pub fn f_of_ideal(field: &ImagQuadField, t: FieldElement, b: &IdealHnf) -> f64 {
    b.norm() as f64 / rho_of_ideal(field, t, b) as f64
}

/// #{alpha : 1 <= N(alpha) <= u, alpha and t*alpha + 1 both prime elements}
/// by exhaustive sweep; an element is prime iff its ideal is prime.
pub fn direct_pair_count(field: &ImagQuadField, t: FieldElement, u: u64) -> Result<u64> {
    if u > 1_000_000 {
        return Err(Error::OutOfRange(format!(
            "direct_pair_count capped at u <= 10^6, got {u}"
        )));
    }
    let mut count = 0u64;
    for alpha in lattice_points_up_to(field, u) {
        if !is_prime_element(field, alpha) {
            continue;
        }
        let second = field.add(field.mul(t, alpha), FieldElement::ONE);
        if is_prime_element(field, second) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::class_context;

    #[test]
    fn gaussian_weight_examples() {
        let ctx = class_context(-1).unwrap();
        // t = 3: the norm-13 primes are coprime to (3), rho = 2
        let sv = build_context(&ctx, FieldElement::new(3, 0), 13.0).unwrap();
        assert_eq!(sv.primes.len(), 2); // two primes of norm 13
        assert_eq!(sv.primes[0].rho, 2);
        assert!((sv.f_f64(1) - 13.0 / 2.0).abs() < 1e-12);
        assert!(sv.lambda_unit_is_one());

        // t = 1+i is a nonunit of norm 2; every P(z) prime stays coprime
        let sv = build_context(&ctx, FieldElement::new(1, 1), 13.0).unwrap();
        assert_eq!(sv.primes[0].rho, 2);

        // rho = 1 on primes dividing (t): t = 13 is divisible by both
        // norm-13 primes
        let sv = build_context(&ctx, FieldElement::new(13, 0), 13.0).unwrap();
        assert_eq!(sv.primes[0].rho, 1);
        assert_eq!(sv.primes[1].rho, 1);
        assert!((sv.f_f64(1) - 13.0).abs() < 1e-12);
    }

    #[test]
    fn general_ideal_weights() {
        // Q(i), e = (1+i):
        //   t = 3:   e coprime to (3), rho = 2, f = 2/2 = 1
        //   t = 1+i: e_(t) = O_K,      rho = 1, f = 2
        let ctx = class_context(-1).unwrap();
        let e = IdealHnf::principal(&ctx.field, FieldElement::new(1, 1));
        let t3 = FieldElement::new(3, 0);
        assert_eq!(rho_of_ideal(&ctx.field, t3, &e), 2);
        assert!((f_of_ideal(&ctx.field, t3, &e) - 1.0).abs() < 1e-15);
        let t1i = FieldElement::new(1, 1);
        assert_eq!(rho_of_ideal(&ctx.field, t1i, &e), 1);
        assert!((f_of_ideal(&ctx.field, t1i, &e) - 2.0).abs() < 1e-15);
        // multiplicativity against the mask path on a sieve prime
        let sv = build_context(&ctx, t3, 13.0).unwrap();
        let p13 = sv.primes[0].ideal;
        assert_eq!(rho_of_ideal(&ctx.field, t3, &p13), sv.rho_of_mask(1));
        // prime powers count with multiplicity: (1+i)^3 has Omega = 3
        let e3 = e.pow(3, &ctx.field);
        assert_eq!(rho_of_ideal(&ctx.field, t3, &e3), 8);
    }

    #[test]
    fn rejects_unit_shift_and_small_z() {
        let ctx = class_context(-1).unwrap();
        assert!(matches!(
            build_context(&ctx, FieldElement::new(0, 1), 20.0),
            Err(Error::UnitShift)
        ));
        assert!(matches!(
            build_context(&ctx, FieldElement::ZERO, 20.0),
            Err(Error::UnitShift)
        ));
        assert!(build_context(&ctx, FieldElement::new(3, 0), 12.0).is_err());
    }

    #[test]
    fn dual_identity_all_divisors() {
        for d in [-1i64, -3, -5] {
            let ctx = class_context(d).unwrap();
            for z in [13.0, 30.0] {
                let sv = build_context(&ctx, FieldElement::new(3, 0), z).unwrap();
                for mask in sv.all_divisor_masks() {
                    assert!(sv.dual_identity_check(mask), "d={d} z={z} mask={mask:b}");
                }
            }
        }
    }

    #[test]
    fn multiplicativity_on_coprime_masks() {
        let ctx = class_context(-1).unwrap();
        let sv = build_context(&ctx, FieldElement::new(3, 0), 45.0).unwrap();
        let n = sv.primes.len();
        for m1 in 0..(1u32 << n) {
            for m2 in 0..(1u32 << n) {
                if m1 & m2 == 0 {
                    let m = m1 | m2;
                    assert_eq!(sv.rho_of_mask(m), sv.rho_of_mask(m1) * sv.rho_of_mask(m2));
                    assert!((sv.f_f64(m) - sv.f_f64(m1) * sv.f_f64(m2)).abs() < 1e-9);
                    assert!((sv.f1_f64(m) - sv.f1_f64(m1) * sv.f1_f64(m2)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn direct_pair_count_tiny() {
        // Q(i), t = 3, u = 2: alpha = -1 +/- i are the only pairs
        let ctx = class_context(-1).unwrap();
        let c = direct_pair_count(&ctx.field, FieldElement::new(3, 0), 2).unwrap();
        assert_eq!(c, 2);
        assert!(direct_pair_count(&ctx.field, FieldElement::new(3, 0), 2_000_000).is_err());
        // u < 2: only units are in range and units are never prime
        assert_eq!(
            direct_pair_count(&ctx.field, FieldElement::new(3, 0), 1).unwrap(),
            0
        );
        // determinism across reruns
        let again = direct_pair_count(&ctx.field, FieldElement::new(3, 0), 2).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn dominance_small() {
        let ctx = class_context(-1).unwrap();
        let sv = build_context(&ctx, FieldElement::new(3, 0), 13.0).unwrap();
        let ub = sv
            .sieve_upper_bound_exact(&ctx.field, 2000)
            .unwrap()
            .unwrap();
        let sifted = sv.sifted_count(&ctx.field, 2000);
        assert!(
            ub >= BigRational::from(BigInt::from(sifted)),
            "{} < {sifted}",
            ub.to_f64().unwrap()
        );
        // and dominance against the direct pair count minus the boundary
        // correction 4 |mu_K| z
        let pairs = direct_pair_count(&ctx.field, FieldElement::new(3, 0), 2000).unwrap();
        let slack = 4.0 * ctx.field.mu_count as f64 * 13.0;
        assert!(ub.to_f64().unwrap() >= pairs as f64 - slack);
    }

    #[test]
    fn lambda_support_structure() {
        let ctx = class_context(-1).unwrap();
        let sv = build_context(&ctx, FieldElement::new(3, 0), 30.0).unwrap();
        // every support mask is squarefree by construction with norm <= z
        for &(mask, norm) in &sv.support {
            assert_eq!(norm, sv.mask_norm(mask));
            assert!((norm as f64) <= 30.0);
        }
        // support divisor count: O_K + primes of norm 13, 17, 29 (two each)
        assert_eq!(sv.support.len(), 7);
    }
}
