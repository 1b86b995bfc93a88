//! Numerical verification of the explicit counting theorems and
//! inequalities: ideal and ray-class counts, lattice counts in residue
//! classes, psi and Chebotarev deviations, principal-prime counts, Mertens
//! and prime-window sums, and the pure bound-formula evaluators.
//!
//! Every check enumerates its left-hand side exactly and compares against
//! the published bound; GRH-conditional bounds are marked, and the checks
//! observe that they hold on the computed range rather than assuming
//! anything. The explicit constants are generous by design, so a failure
//! indicates an implementation bug; the `empirical_ratio` field keeps the
//! actual error scale visible where the constants would mask a regression.

use num_complex::Complex64;

use crate::class_group::ClassContext;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ideal::{
    arith_table, enumerate_ideals, ideal_counts, lattice_points_up_to, mertens_sum,
    prime_ideals_up_to, IdealHnf,
};
use crate::lfunctions::{
    dedekind_zeta, modulus_dlogs, prime_power_table, psi, psi_class, psi_trivial_class,
    ModulusDlogs, PrimePowerTable,
};
use crate::ray_class::{Modulus, RayClassGroup};
use crate::special::{digamma, log_integral, KahanSum};

pub const FIELD_MATRIX: [i64; 8] = [-1, -2, -3, -5, -7, -11, -15, -23];

const PASS_SLACK: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub d_k: i64,
    pub params: String,
    pub lhs: f64,
    pub bound: f64,
    pub pass: bool,
    pub empirical_ratio: f64,
    pub grh_conditional: bool,
    pub hypothesis_unmet: bool,
}

impl CheckReport {
    fn new(name: &'static str, d_k: i64, params: String, lhs: f64, bound: f64) -> Self {
        CheckReport {
            name,
            d_k,
            params,
            lhs,
            bound,
            pass: lhs <= bound * (1.0 + PASS_SLACK),
            empirical_ratio: 0.0,
            grh_conditional: false,
            hypothesis_unmet: false,
        }
    }

    fn grh(mut self) -> Self {
        self.grh_conditional = true;
        self
    }

    fn ratio(mut self, r: f64) -> Self {
        self.empirical_ratio = r;
        self
    }
}

/// Ideal-count deviation |#{Na <= x} - rho_K x| against the explicit
/// 10^15 (h log 3h)^{1/2} x^{1/2} bound; the ratio column records
/// |error|/sqrt(x), which stays below 10 on the test matrix.
pub fn check_ideal_count(ctx: &ClassContext, x: u64) -> CheckReport {
    let counts = ideal_counts(&ctx.field, x);
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    let rho = ctx.field.rho_k();
    let h = ctx.field.h_k() as f64;
    let lhs = (total as f64 - rho * x as f64).abs();
    let bound = 1e15 * (h * (3.0 * h).ln()).sqrt() * (x as f64).sqrt();
    CheckReport::new("ideal-count", ctx.field.d_k, format!("x={x}"), lhs, bound)
        .ratio(lhs / (x as f64).sqrt())
}

/// Ray-class count deviation against
/// rho phi(q) x / (|H_q| Nq) + O*(10^21 (x/Nq)^{1/2} + 4*10^5).
pub fn check_ray_count(
    ctx: &ClassContext,
    group: &RayClassGroup,
    target: &[u64],
    x: u64,
) -> Result<CheckReport> {
    let q = match &group.modulus {
        Modulus::Prime(q) => q,
        Modulus::Unit => return Err(Error::OutOfRange("prime modulus required".into())),
    };
    let nq = q.norm() as f64;
    let mut count = 0u64;
    for ideal in enumerate_ideals(&ctx.field, x as f64)? {
        if !ideal.is_coprime(&q.ideal) {
            continue;
        }
        if group.dlog(ctx, &ideal)? == target {
            count += 1;
        }
    }
    let phi_q = nq - 1.0;
    let main = ctx.field.rho_k() * phi_q / group.order as f64 * x as f64 / nq;
    let lhs = (count as f64 - main).abs();
    let bound = 1e21 * (x as f64 / nq).sqrt() + 4e5;
    Ok(CheckReport::new(
        "ray-class-count",
        ctx.field.d_k,
        format!("Nq={},class={:?},x={x}", q.norm(), target),
        lhs,
        bound,
    )
    .ratio(lhs / (x as f64 / nq).sqrt()))
}

#[derive(Clone, Debug)]
pub struct LatticeCountReport {
    pub d_k: i64,
    pub a: IdealHnf,
    pub q: IdealHnf,
    pub beta: FieldElement,
    pub t_squared: u64,
    pub exact: u64,
    pub main: f64,
    /// max over integral b in the inverse class of aq of 1/sqrt(Nb),
    /// realized at the minimal-norm reduced representative
    pub class_norm_factor: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Counts {alpha in a : |theta(alpha)|^2 <= t^2, alpha = beta mod q} and
/// compares with 2 pi t^2 / (sqrt|d_K| N(aq)), error
/// 10^{13.66} Nfrac(C^{-1}) t / sqrt(N(aq)) + 1, where Nfrac is realized by
/// the minimal-norm reduced representative of the inverse class of aq.
pub fn check_lattice_count(
    ctx: &ClassContext,
    a: &IdealHnf,
    q: &IdealHnf,
    beta: FieldElement,
    t_squared: u64,
) -> Result<LatticeCountReport> {
    if !a.is_coprime(q) && !q.is_unit_ideal() {
        return Err(Error::OutOfRange("a and q must be coprime".into()));
    }
    let field = &ctx.field;
    let mut exact = 0u64;
    // alpha = 0 qualifies when beta = 0 mod q
    if q.contains(beta) {
        exact += 1;
    }
    for alpha in lattice_points_up_to(field, t_squared) {
        if a.contains(alpha) && q.contains(field.sub(alpha, beta)) {
            exact += 1;
        }
    }
    let aq = a.mul(q, field);
    let naq = aq.norm() as f64;
    let dk = field.d_k.unsigned_abs() as f64;
    let main = 2.0 * std::f64::consts::PI * t_squared as f64 / (dk.sqrt() * naq);
    let inv_class = ctx.group.inverse(ctx.class_index(&aq));
    let min_norm = ctx.group.forms[inv_class as usize].a as f64;
    let nfrac = 1.0 / min_norm.sqrt();
    let plus_one = if q.is_unit_ideal() { 0.0 } else { 1.0 };
    let bound = 10f64.powf(13.66) * nfrac * (t_squared as f64).sqrt() / naq.sqrt() + plus_one;
    let lhs = (exact as f64 - main).abs();
    Ok(LatticeCountReport {
        d_k: field.d_k,
        a: *a,
        q: *q,
        beta,
        t_squared,
        exact,
        main,
        class_norm_factor: nfrac,
        bound,
        pass: lhs <= bound * (1.0 + PASS_SLACK),
    })
}

impl LatticeCountReport {
    pub fn to_check(&self) -> CheckReport {
        CheckReport::new(
            "lattice-count",
            self.d_k,
            format!(
                "a=({},{},{}),q=({},{},{}),t2={}",
                self.a.a, self.a.b, self.a.c, self.q.a, self.q.b, self.q.c, self.t_squared
            ),
            (self.exact as f64 - self.main).abs(),
            self.bound,
        )
    }
}

/// |psi(x) - x| <= 7 log|d_K| sqrt(x) log x + sqrt(x) log^2 x + 19 sqrt(x).
pub fn check_psi(ctx: &ClassContext, table: &PrimePowerTable, x: f64) -> CheckReport {
    assert!(x >= 3.0);
    let lhs = (psi(table, x) - x).abs();
    let sx = x.sqrt();
    let lx = x.ln();
    let dk = ctx.field.d_k.unsigned_abs() as f64;
    let bound = 7.0 * dk.ln() * sx * lx + sx * lx * lx + 19.0 * sx;
    CheckReport::new("psi-deviation", ctx.field.d_k, format!("x={x}"), lhs, bound)
        .ratio(lhs / (sx * lx))
        .grh()
}

/// | |H_q| psi(x, q, \[1\]) - x | against the explicit Chebotarev bound with
/// log|d_{K(q)}| replaced by its conductor-discriminant upper bound
/// rho sqrt|d_K| Nq log(|d_K| Nq) and n_L = 2 |H_q|. That substitution makes
/// the checked inequality weaker than the sharp one, which is recorded here
/// rather than hidden: constructing K(q) itself is out of scope.
/// The ratio column records lhs / (sqrt(x) log^2 x), observed < 50.
pub fn check_chebotarev(
    ctx: &ClassContext,
    group: &RayClassGroup,
    table: &PrimePowerTable,
    dlogs: &ModulusDlogs,
    x: f64,
) -> Result<CheckReport> {
    let q = match &group.modulus {
        Modulus::Prime(q) => q,
        Modulus::Unit => return Err(Error::OutOfRange("prime modulus required".into())),
    };
    let h = group.order as f64;
    let lhs = (h * psi_trivial_class(group, table, dlogs, x) - x).abs();
    let dk = ctx.field.d_k.unsigned_abs() as f64;
    let nq = q.norm() as f64;
    let disc_bound = ctx.field.rho_k() * dk.sqrt() * nq * (dk * nq).ln();
    let sx = x.sqrt();
    let lx = x.ln();
    let pi = std::f64::consts::PI;
    let bound =
        sx * ((lx / (2.0 * pi) + 2.0) * disc_bound + (lx * lx / (8.0 * pi) + 2.0) * 2.0 * h);
    Ok(CheckReport::new(
        "chebotarev-trivial-class",
        ctx.field.d_k,
        format!("Nq={},x={x}", q.norm()),
        lhs,
        bound,
    )
    .ratio(lhs / (sx * lx * lx))
    .grh())
}

/// psi additivity: psi(x) = sum over H_q classes of psi(x, q, class) plus
/// the q-power terms, exactly (to compensated-summation accuracy).
pub fn check_psi_additivity(
    ctx: &ClassContext,
    group: &RayClassGroup,
    table: &PrimePowerTable,
    dlogs: &ModulusDlogs,
    x: f64,
) -> CheckReport {
    let q_norm = group.modulus.norm();
    let mut total = KahanSum::new();
    for class in group.elements() {
        total.add(psi_class(table, dlogs, &class, x));
    }
    // powers of q
    let mut qk = q_norm as f64;
    while qk <= x {
        total.add((q_norm as f64).ln());
        qk *= q_norm as f64;
    }
    let lhs = (total.value() - psi(table, x)).abs();
    CheckReport::new(
        "psi-additivity",
        ctx.field.d_k,
        format!("Nq={q_norm},x={x}"),
        lhs,
        1e-9 * psi(table, x).max(1.0),
    )
}

/// pi*(Q): principal primes with norm in (Q/2, Q], by principality tests.
pub fn principal_prime_pi_star(ctx: &ClassContext, q_upper: u64) -> u64 {
    prime_ideals_up_to(&ctx.field, q_upper)
        .into_iter()
        .filter(|p| {
            let n = p.norm() as u64;
            2 * n > q_upper && n <= q_upper && ctx.is_principal(&p.ideal).is_some()
        })
        .count() as u64
}

/// Same count through class-group discrete logs (trivial class).
pub fn pi_star_via_classes(ctx: &ClassContext, q_upper: u64) -> u64 {
    prime_ideals_up_to(&ctx.field, q_upper)
        .into_iter()
        .filter(|p| {
            let n = p.norm() as u64;
            2 * n > q_upper && n <= q_upper && ctx.class_index(&p.ideal) == ctx.group.identity
        })
        .count() as u64
}

/// Principal-prime counting against (1/h) int_2^x dt/log t with the
/// explicit 5 sqrt(x) log|d_K| + 2 sqrt(x) (log x / 8pi + 9) error.
pub fn check_principal_prime_count(ctx: &ClassContext, x: u64) -> CheckReport {
    let count = prime_ideals_up_to(&ctx.field, x)
        .into_iter()
        .filter(|p| ctx.is_principal(&p.ideal).is_some())
        .count() as f64;
    let h = ctx.field.h_k() as f64;
    let main = log_integral(x as f64) / h;
    let lhs = (count - main).abs();
    let dk = ctx.field.d_k.unsigned_abs() as f64;
    let sx = (x as f64).sqrt();
    let bound =
        5.0 * sx * dk.ln() + 2.0 * sx * ((x as f64).ln() / (8.0 * std::f64::consts::PI) + 9.0);
    CheckReport::new(
        "principal-prime-count",
        ctx.field.d_k,
        format!("x={x}"),
        lhs,
        bound,
    )
    .ratio(lhs / sx)
    .grh()
}

/// Mertens-type sum deviation |sum_{NP<=x} log NP/NP - log x| against
/// 3 + e^75 |d_K|^{1/3} (log|d_K|)^2 / rho_K.
pub fn check_mertens(ctx: &ClassContext, x: f64) -> CheckReport {
    let lhs = (mertens_sum(&ctx.field, x) - x.ln()).abs();
    let dk = ctx.field.d_k.unsigned_abs() as f64;
    let bound = 3.0 + 75f64.exp() * dk.powf(1.0 / 3.0) * dk.ln().powi(2) / ctx.field.rho_k();
    CheckReport::new(
        "mertens-prime-sum",
        ctx.field.d_k,
        format!("x={x}"),
        lhs,
        bound,
    )
    .ratio(lhs)
}

/// Window sum over prime ideals: sum_{Q/2 < Nq <= Q} log Nq/(Nq - 1)
/// against 14 + 4 e^75 |d_K|^{1/3} (log|d_K|)^2 / rho_K.
pub fn check_qsum(ctx: &ClassContext, q_upper: u64) -> CheckReport {
    let mut acc = KahanSum::new();
    for p in prime_ideals_up_to(&ctx.field, q_upper) {
        let n = p.norm() as u64;
        if 2 * n > q_upper && n <= q_upper {
            acc.add((n as f64).ln() / (n as f64 - 1.0));
        }
    }
    let dk = ctx.field.d_k.unsigned_abs() as f64;
    let bound = 14.0 + 4.0 * 75f64.exp() * dk.powf(1.0 / 3.0) * dk.ln().powi(2) / ctx.field.rho_k();
    CheckReport::new(
        "prime-window-log-sum",
        ctx.field.d_k,
        format!("Q={q_upper}"),
        acc.value(),
        bound,
    )
}

/// Conditional two-sided range for the Euler-Kronecker constant in terms of
/// the degree and D = log sqrt|d|; pure formula evaluation.
pub fn eval_ihara_bound(n_k: u32, d_big: f64) -> Result<(f64, f64)> {
    if d_big <= 1.0 {
        return Err(Error::OutOfRange(format!(
            "upper formula has a pole at D = 1; got D = {d_big}"
        )));
    }
    if n_k < 2 {
        return Err(Error::OutOfRange("degree must be at least 2".into()));
    }
    let n = n_k as f64;
    let lower = -2.0 * (n - 1.0) * (d_big - n + 1.0) / (d_big + n - 1.0)
        * ((d_big / (n - 1.0)).ln() + 1.0)
        - 1.0;
    let upper = (d_big + 1.0) / (d_big - 1.0) * (2.0 * d_big.ln() + 1.0);
    Ok((lower, upper))
}

/// Zero-count bound 50 n_K log(|d_K| Nc' (|t| + 2)); formula only, no zeros
/// are computed anywhere in this crate.
pub fn eval_zero_count_bound(n_k: u32, abs_d_k: u64, conductor_norm: u64, t: f64) -> f64 {
    50.0 * n_k as f64 * ((abs_d_k * conductor_norm) as f64 * (t.abs() + 2.0)).ln()
}

#[derive(Clone, Copy, Debug)]
pub struct GammaFactorParams {
    pub n_k: u32,
    pub a_chi: u32,
}

/// Archimedean-factor bound n_K (log(|s+1|/2 + 2) - log(pi)/2) for
/// Re(s) > 1.
pub fn eval_regamma_bound(params: GammaFactorParams, s: Complex64) -> Result<f64> {
    if params.a_chi > params.n_k {
        return Err(Error::OutOfRange("a_chi must lie in [0, n_K]".into()));
    }
    if s.re <= 1.0 {
        return Err(Error::OutOfRange("bound stated for Re(s) > 1".into()));
    }
    let n = params.n_k as f64;
    Ok(n * (((s + 1.0).norm() / 2.0 + 2.0).ln() - std::f64::consts::PI.ln() / 2.0))
}

/// Re of the actual archimedean logarithmic derivative
///   -(n/2) log pi + (a/2) psi((s+1)/2) + ((n-a)/2) psi(s/2)
/// from the independent digamma series; for bound verification.
pub fn regamma_actual(params: GammaFactorParams, s: Complex64) -> f64 {
    let n = params.n_k as f64;
    let a = params.a_chi as f64;
    let val = digamma((s + 1.0) / 2.0) * (a / 2.0) + digamma(s / 2.0) * ((n - a) / 2.0);
    -n / 2.0 * std::f64::consts::PI.ln() + val.re
}

/// h_K pi*(Q) >= 2Q/(25 log Q): its hypothesis Q >= exp(10^45 |d_K|) is
/// unreachable at desk scale, so the report is informational only and
/// always carries hypothesis_unmet.
pub fn check_comparison(ctx: &ClassContext, q_upper: u64) -> CheckReport {
    let pi_star = principal_prime_pi_star(ctx, q_upper);
    let lhs = 2.0 * q_upper as f64 / (25.0 * (q_upper as f64).ln());
    let bound = ctx.field.h_k() as f64 * pi_star as f64;
    let mut rep = CheckReport::new(
        "principal-prime-density-floor",
        ctx.field.d_k,
        format!("Q={q_upper},pi_star={pi_star}"),
        lhs,
        bound,
    )
    .grh();
    rep.hypothesis_unmet = true;
    rep
}

/// sum_{Na<=x} sigma(a)/Na <= zeta_K(2) rho x
///                           + 10^15 zeta_K(3/2) (h log 3h)^{1/2} sqrt(x).
pub fn check_sigma_sum(ctx: &ClassContext, x: f64) -> Result<CheckReport> {
    let table = arith_table(&ctx.field, x)?;
    let mut acc = KahanSum::new();
    for r in &table.records {
        acc.add(r.sigma as f64 / r.norm as f64);
    }
    let z2 = dedekind_zeta(&ctx.field, 2.0)?;
    let z32 = dedekind_zeta(&ctx.field, 1.5)?;
    let h = ctx.field.h_k() as f64;
    let bound = z2 * ctx.field.rho_k() * x + 1e15 * z32 * (h * (3.0 * h).ln()).sqrt() * x.sqrt();
    Ok(CheckReport::new(
        "sigma-over-norm-sum",
        ctx.field.d_k,
        format!("x={x}"),
        acc.value(),
        bound,
    ))
}

/// Pointwise Na/phi(a) <= zeta_K(2) sigma(a)/Na for Na <= x: reports the
/// worst ratio (Na^2)/(phi sigma) against zeta_K(2).
pub fn check_phi_pointwise(ctx: &ClassContext, x: f64) -> Result<CheckReport> {
    let table = arith_table(&ctx.field, x)?;
    let mut worst = 0.0f64;
    for r in &table.records {
        let ratio = (r.norm as f64) * (r.norm as f64) / (r.phi as f64 * r.sigma as f64);
        worst = worst.max(ratio);
    }
    let z2 = dedekind_zeta(&ctx.field, 2.0)?;
    Ok(CheckReport::new(
        "norm-phi-pointwise",
        ctx.field.d_k,
        format!("x={x}"),
        worst,
        z2,
    ))
}

/// sum_{Na<=x} 1/phi(a) <= zeta_K(2)^2 rho log(ex)
///                        + 2*10^15 zeta_K(3/2) zeta_K(2) (h log 3h)^{1/2}.
pub fn check_phi_reciprocal_sum(ctx: &ClassContext, x: f64) -> Result<CheckReport> {
    let table = arith_table(&ctx.field, x)?;
    let mut acc = KahanSum::new();
    for r in &table.records {
        acc.add(1.0 / r.phi as f64);
    }
    let z2 = dedekind_zeta(&ctx.field, 2.0)?;
    let z32 = dedekind_zeta(&ctx.field, 1.5)?;
    let h = ctx.field.h_k() as f64;
    let bound = z2 * z2 * ctx.field.rho_k() * (std::f64::consts::E * x).ln()
        + 2e15 * z32 * z2 * (h * (3.0 * h).ln()).sqrt();
    Ok(CheckReport::new(
        "euler-phi-reciprocal-sum",
        ctx.field.d_k,
        format!("x={x}"),
        acc.value(),
        bound,
    ))
}

/// The default verification battery for one field.
pub fn standard_suite(d: i64, x_cap: u64) -> Result<Vec<CheckReport>> {
    let ctx = crate::class_group::class_context(d)?;
    let mut out = Vec::new();
    for x in [1_000u64, 10_000, 100_000] {
        if x <= x_cap {
            out.push(check_ideal_count(&ctx, x));
        }
    }
    let x_psi = x_cap.min(100_000);
    let table = prime_power_table(&ctx, x_psi)?;
    for x in [1_000u64, 10_000, x_psi] {
        if x <= x_cap && x >= 3 {
            out.push(check_psi(&ctx, &table, x as f64));
        }
    }
    // smallest principal prime modulus of norm >= 3
    let modulus = prime_ideals_up_to(&ctx.field, 200)
        .into_iter()
        .find(|p| p.norm() >= 3 && ctx.is_principal(&p.ideal).is_some());
    if let Some(q) = modulus {
        let group = crate::ray_class::ray_class_group(&ctx, Modulus::Prime(q))?;
        let dlogs = modulus_dlogs(&ctx, &group, &table)?;
        out.push(check_chebotarev(
            &ctx,
            &group,
            &table,
            &dlogs,
            x_psi as f64,
        )?);
        out.push(check_psi_additivity(
            &ctx,
            &group,
            &table,
            &dlogs,
            (x_psi / 10) as f64,
        ));
        let ray_x = x_cap.min(10_000);
        out.push(check_ray_count(
            &ctx,
            &group,
            &vec![0; group.invariants.len()],
            ray_x,
        )?);
        if group.order > 1 {
            let mut nontrivial = vec![0; group.invariants.len()];
            nontrivial[0] = 1;
            out.push(check_ray_count(&ctx, &group, &nontrivial, ray_x)?);
        }
        out.push(
            check_lattice_count(
                &ctx,
                &IdealHnf::UNIT,
                &q.ideal,
                FieldElement::ONE,
                x_cap.min(40_000),
            )?
            .to_check(),
        );
    }
    out.push(
        check_lattice_count(
            &ctx,
            &IdealHnf::UNIT,
            &IdealHnf::UNIT,
            FieldElement::ZERO,
            x_cap.min(40_000),
        )?
        .to_check(),
    );
    for x in [1_000.0, 10_000.0, 100_000.0, 1_000_000.0] {
        if x <= x_cap as f64 {
            out.push(check_mertens(&ctx, x));
        }
    }
    for q in [50u64, 100, 1000] {
        if q <= x_cap {
            out.push(check_qsum(&ctx, q));
        }
    }
    out.push(check_principal_prime_count(&ctx, x_cap.min(10_000)));
    out.push(check_comparison(&ctx, x_cap.min(100)));
    for x in [1_000.0, 10_000.0] {
        if x <= x_cap as f64 {
            out.push(check_sigma_sum(&ctx, x)?);
            out.push(check_phi_reciprocal_sum(&ctx, x)?);
        }
    }
    out.push(check_phi_pointwise(&ctx, x_cap.min(10_000) as f64)?);

    // pi* route consistency is a hard invariant, reported as a check row
    let q_up = x_cap.min(100);
    let a = principal_prime_pi_star(&ctx, q_up);
    let b = pi_star_via_classes(&ctx, q_up);
    out.push(CheckReport::new(
        "pi-star-route-consistency",
        ctx.field.d_k,
        format!("Q={q_up}"),
        (a as f64 - b as f64).abs(),
        0.0,
    ));

    // archimedean-factor bound on a grid with Re(s) > 1
    let params = GammaFactorParams { n_k: 2, a_chi: 1 };
    let mut worst_margin = f64::NEG_INFINITY;
    for re in [1.1, 1.5, 2.0, 3.0, 5.0] {
        for im in [0.0, 1.0, 5.0, 10.0] {
            let s = Complex64::new(re, im);
            let actual = regamma_actual(params, s);
            let bound = eval_regamma_bound(params, s)?;
            worst_margin = worst_margin.max(actual - bound);
        }
    }
    out.push(CheckReport::new(
        "archimedean-factor-bound",
        ctx.field.d_k,
        "grid Re in [1.1,5], |Im| <= 10".into(),
        worst_margin,
        0.0,
    ));

    Ok(out)
}
