//! Ideal class group via reduced binary quadratic forms, principality tests
//! with explicit generators, and the generator/relation data reused by the
//! ray class group construction.
//!
//! Composition of reduced forms is computed through the form <-> ideal
//! correspondence: multiply the HNF ideals, take the primitive part, reduce
//! the associated form. That reuses the exact ideal arithmetic instead of a
//! hand-rolled composition formula, and the group laws are verified on the
//! full table during construction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, ImagQuadField};
use crate::ideal::{prime_ideals_up_to, IdealHnf, PrimeIdeal};

/// A primitive positive definite binary quadratic form (A, B, C) of
/// discriminant d_K = B^2 - 4AC.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Reduction to the canonical representative: |B| <= A <= C with B >= 0
/// whenever |B| = A or A = C.
pub fn reduce_form(mut f: Form) -> Form {
    loop {
        if f.b > f.a || f.b <= -f.a {
            let two_a = 2 * f.a;
            let mut r = f.b % two_a;
            if r > f.a {
                r -= two_a;
            } else if r <= -f.a {
                r += two_a;
            }
            let dk = f.b * f.b - 4 * f.a * f.c;
            f.b = r;
            f.c = (r * r - dk) / (4 * f.a);
        }
        if f.a > f.c {
            f = Form {
                a: f.c,
                b: -f.b,
                c: f.a,
            };
            continue;
        }
        break;
    }
    if (f.a == f.c || f.b == -f.a) && f.b < 0 {
        f.b = -f.b;
    }
    f
}

/// All reduced primitive forms of discriminant d_k < 0, sorted.
pub fn reduced_forms(d_k: i64) -> Vec<Form> {
    assert!(d_k < 0);
    let mut out = Vec::new();
    let abs = -d_k;
    let a_max = ((abs as f64) / 3.0).sqrt().floor() as i64;
    for a in 1..=a_max {
        for b in (-a + 1)..=a {
            if (b * b - d_k) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d_k) / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            if gcd3(a, b, c) != 1 {
                continue;
            }
            out.push(Form { a, b, c });
        }
    }
    out.sort_by_key(|f| (f.a, f.b, f.c));
    out
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(a: i64, b: i64) -> i64 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    g(g(a, b), c)
}

/// The form attached to an ideal: primitive part [A, b0 + omega] maps to
/// (A, 2*b0 + omega_trace, N(b0 + omega)/A).
pub fn form_from_ideal(field: &ImagQuadField, ideal: &IdealHnf) -> Form {
    let prim = ideal.primitive_part();
    let a = prim.a;
    let b0 = prim.b;
    let n = field.norm(FieldElement::new(b0 as i128, 1)) as i64;
    debug_assert_eq!(n % a, 0);
    reduce_form(Form {
        a,
        b: 2 * b0 + field.omega_trace,
        c: n / a,
    })
}

/// The ideal attached to a form: [A, (B - omega_trace)/2 + omega].
pub fn ideal_from_form(field: &ImagQuadField, f: &Form) -> IdealHnf {
    let b0 = (f.b - field.omega_trace).div_euclid(2).rem_euclid(f.a);
    IdealHnf {
        a: f.a,
        b: b0,
        c: 1,
    }
}

/// The ideal class group presented on reduced forms, with a full
/// composition table.
pub struct FormClassGroup {
    pub d_k: i64,
    pub forms: Vec<Form>,
    pub h: u64,
    pub identity: u32,
    table: Vec<u32>,
    index: HashMap<Form, u32>,
}

impl FormClassGroup {
    pub fn compose(&self, i: u32, j: u32) -> u32 {
        self.table[i as usize * self.forms.len() + j as usize]
    }

    pub fn inverse(&self, i: u32) -> u32 {
        let f = self.forms[i as usize];
        // the inverse class is represented by (A, -B, C)
        self.index[&reduce_form(Form {
            a: f.a,
            b: -f.b,
            c: f.c,
        })]
    }

    pub fn order_of(&self, i: u32) -> u64 {
        let mut cur = i;
        let mut n = 1u64;
        while cur != self.identity {
            cur = self.compose(cur, i);
            n += 1;
        }
        n
    }

    pub fn class_of_ideal(&self, field: &ImagQuadField, ideal: &IdealHnf) -> u32 {
        self.index[&form_from_ideal(field, ideal)]
    }

    pub fn power(&self, i: u32, e: u64) -> u32 {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.compose(acc, i);
        }
        acc
    }
}

/// Builds the class group of K, verifies the group laws on the full table,
/// and finalizes h_K and rho_K on the field.
pub fn class_group(field: &ImagQuadField) -> Result<FormClassGroup> {
    if field.d_k.abs() > 10_000 {
        return Err(Error::DiscriminantTooLarge(field.d_k));
    }
    let forms = reduced_forms(field.d_k);
    let h = forms.len() as u64;
    let index: HashMap<Form, u32> = forms
        .iter()
        .enumerate()
        .map(|(i, f)| (*f, i as u32))
        .collect();
    let ideals: Vec<IdealHnf> = forms.iter().map(|f| ideal_from_form(field, f)).collect();
    let mut table = vec![0u32; forms.len() * forms.len()];
    for i in 0..forms.len() {
        for j in 0..=i {
            let prod = ideals[i].mul(&ideals[j], field);
            let f = form_from_ideal(field, &prod);
            let k = index[&f];
            table[i * forms.len() + j] = k;
            table[j * forms.len() + i] = k;
        }
    }
    let principal = Form {
        a: 1,
        b: field.omega_trace,
        c: field.omega_norm,
    };
    let identity = index[&reduce_form(principal)];
    let g = FormClassGroup {
        d_k: field.d_k,
        forms,
        h,
        identity,
        table,
        index,
    };

    // group laws on the full table
    let n = g.forms.len();
    for i in 0..n as u32 {
        assert_eq!(g.compose(g.identity, i), i, "identity law fails");
        assert_eq!(g.compose(i, g.inverse(i)), g.identity, "inverse law fails");
        for j in 0..n as u32 {
            assert_eq!(g.compose(i, j), g.compose(j, i), "commutativity fails");
            for k in 0..n as u32 {
                assert_eq!(
                    g.compose(g.compose(i, j), k),
                    g.compose(i, g.compose(j, k)),
                    "associativity fails"
                );
            }
        }
    }

    field.finalize_class_data(h);
    Ok(g)
}

/// Searches the ideal lattice for an element of norm exactly N(ideal); such
/// an element generates the ideal. Exhaustive over the lattice slice, so it
/// doubles as its own oracle. Budgeted: errs when the slice is too long.
pub fn generator_of(
    field: &ImagQuadField,
    ideal: &IdealHnf,
    budget: u64,
) -> Result<Option<FieldElement>> {
    let target = ideal.norm() as i128;
    let dk = field.d_k.unsigned_abs() as i128;
    let t = field.omega_trace as i128;
    let (a, b, c) = (ideal.a as i128, ideal.b as i128, ideal.c as i128);
    // alpha = m*a + k*(b + c*omega): y = k*c, x = m*a + k*b
    let k_max = {
        let val = 4 * target / (dk * c * c);
        isqrt_i128(val) + 1
    };
    if k_max as u128 > budget as u128 {
        return Err(Error::RelationBudget(format!(
            "generator search slice {k_max} exceeds budget {budget}"
        )));
    }
    for k in -k_max..=k_max {
        let y = k * c;
        let disc = 4 * target - dk * y * y;
        if disc < 0 {
            continue;
        }
        let r = isqrt_i128(disc);
        if r * r != disc {
            continue;
        }
        for sign in [1i128, -1] {
            let num = -t * y + sign * r;
            if num % 2 != 0 {
                continue;
            }
            let x = num / 2;
            if (x - k * b) % a == 0 {
                let e = FieldElement::new(x, y);
                debug_assert_eq!(field.norm(e), target);
                debug_assert!(ideal.contains(e));
                return Ok(Some(e));
            }
        }
    }
    Ok(None)
}

fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0);
    if n <= u64::MAX as i128 {
        (n as u64).isqrt() as i128
    } else {
        (n as u128).isqrt() as i128
    }
}

/// True iff h_K is not a power of two; then the Hilbert class field, and
/// with it every ray class field of K, is non-abelian over Q.
pub fn nonabelian_certificate(group: &FormClassGroup) -> bool {
    !group.h.is_power_of_two()
}

/// Class-group generator data shared by the ray class machinery: a pool of
/// small non-principal primes spanning Cl_K, exponent representatives per
/// class, and a generating set of the relation lattice.
pub struct ClassContext {
    pub field: ImagQuadField,
    pub group: FormClassGroup,
    /// pool primes whose classes generate Cl_K (empty when h = 1)
    pub generators: Vec<PrimeIdeal>,
    /// a second prime in the same class per slot, for moduli that collide
    /// with a pool prime
    pub backup_generators: Vec<PrimeIdeal>,
    /// order of each generator class
    pub orders: Vec<u64>,
    /// r(c): exponents with prod gen^r in class c, entries in [0, o_i)
    pub rep: Vec<Vec<u32>>,
    /// (o_i - r_i) mod o_i: exponents landing in the inverse class
    pub inv_rep: Vec<Vec<u32>>,
    /// J_c = prod gen^{inv_rep(c)}, an integral ideal in class c^{-1}
    pub j_ideal: Vec<IdealHnf>,
    /// nonnegative rows generating the relation lattice of the generators
    pub relations: Vec<Vec<u32>>,
}

const GENERATOR_BUDGET: u64 = 30_000_000;

pub fn class_context(d: i64) -> Result<ClassContext> {
    let field = ImagQuadField::new(d)?;
    let group = class_group(&field)?;
    let h = group.h as usize;

    // pool: minimal-norm non-principal primes until their classes span Cl
    let mut generators: Vec<PrimeIdeal> = Vec::new();
    let mut gen_classes: Vec<u32> = Vec::new();
    let span = |gens: &[u32], group: &FormClassGroup| -> Vec<bool> {
        let mut seen = vec![false; h];
        seen[group.identity as usize] = true;
        let mut frontier = vec![group.identity];
        while let Some(c) = frontier.pop() {
            for &g in gens {
                let nc = group.compose(c, g);
                if !seen[nc as usize] {
                    seen[nc as usize] = true;
                    frontier.push(nc);
                }
            }
        }
        seen
    };
    let mut backup_generators: Vec<Option<PrimeIdeal>> = Vec::new();
    if h > 1 {
        let bound = (20.0 * (field.d_k.abs() as f64).sqrt()).max(2000.0) as u64;
        let small_primes = prime_ideals_up_to(&field, bound);
        for q in &small_primes {
            let ci = group.class_of_ideal(&field, &q.ideal);
            if ci == group.identity {
                continue;
            }
            let seen = span(&gen_classes, &group);
            if seen.iter().all(|&s| s) {
                break;
            }
            if !seen[ci as usize] {
                generators.push(*q);
                gen_classes.push(ci);
                backup_generators.push(None);
            }
        }
        let seen = span(&gen_classes, &group);
        if !seen.iter().all(|&s| s) {
            return Err(Error::RelationBudget(
                "small primes do not span the class group".into(),
            ));
        }
        // a second prime per generator class, with a distinct ideal
        for q in &small_primes {
            let ci = group.class_of_ideal(&field, &q.ideal);
            for (slot, &gc) in gen_classes.iter().enumerate() {
                if gc == ci
                    && backup_generators[slot].is_none()
                    && q.ideal != generators[slot].ideal
                {
                    backup_generators[slot] = Some(*q);
                }
            }
        }
        if backup_generators.iter().any(|b| b.is_none()) {
            return Err(Error::RelationBudget(
                "no backup prime found for a generator class".into(),
            ));
        }
    }
    let backup_generators: Vec<PrimeIdeal> =
        backup_generators.into_iter().map(|b| b.unwrap()).collect();
    let k = generators.len();
    let orders: Vec<u64> = gen_classes.iter().map(|&c| group.order_of(c)).collect();

    // BFS representatives r(c), entries reduced mod the generator order
    let mut rep: Vec<Option<Vec<u32>>> = vec![None; h];
    rep[group.identity as usize] = Some(vec![0; k]);
    let mut queue = vec![group.identity];
    while let Some(c) = queue.pop() {
        let base = rep[c as usize].clone().unwrap();
        for (i, &g) in gen_classes.iter().enumerate() {
            let nc = group.compose(c, g);
            if rep[nc as usize].is_none() {
                let mut r = base.clone();
                r[i] = (r[i] + 1) % orders[i] as u32;
                rep[nc as usize] = Some(r);
                queue.push(nc);
            }
        }
    }
    let rep: Vec<Vec<u32>> = rep.into_iter().map(|r| r.expect("span checked")).collect();
    let inv_rep: Vec<Vec<u32>> = rep
        .iter()
        .map(|r| {
            r.iter()
                .zip(&orders)
                .map(|(&ri, &o)| ((o as u32) - ri) % o as u32)
                .collect()
        })
        .collect();

    // relation lattice: order rows plus BFS edge rows, componentwise-reduced
    let mut relations: Vec<Vec<u32>> = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        let mut row = vec![0u32; k];
        row[i] = o as u32;
        relations.push(row);
    }
    for c in 0..h as u32 {
        for (i, &g) in gen_classes.iter().enumerate() {
            let nc = group.compose(c, g);
            // r(c) + e_i - r(nc), reduced mod orders into [0, o_i)
            let row: Vec<u32> = (0..k)
                .map(|j| {
                    let v =
                        rep[c as usize][j] as i64 + i64::from(j == i) - rep[nc as usize][j] as i64;
                    v.rem_euclid(orders[j] as i64) as u32
                })
                .collect();
            if row.iter().any(|&x| x != 0) && !relations.contains(&row) {
                relations.push(row);
            }
        }
    }

    // J_c products
    let mut j_ideal = Vec::with_capacity(h);
    for c in 0..h {
        let mut acc = IdealHnf::UNIT;
        for (i, q) in generators.iter().enumerate() {
            for _ in 0..inv_rep[c][i] {
                acc = acc.mul(&q.ideal, &field);
            }
        }
        j_ideal.push(acc);
    }

    Ok(ClassContext {
        field,
        group,
        generators,
        backup_generators,
        orders,
        rep,
        inv_rep,
        j_ideal,
        relations,
    })
}

impl ClassContext {
    /// Returns a generator when the ideal is principal, None otherwise.
    pub fn is_principal(&self, ideal: &IdealHnf) -> Option<FieldElement> {
        if self.group.class_of_ideal(&self.field, ideal) != self.group.identity {
            return None;
        }
        let gen = generator_of(&self.field, ideal, GENERATOR_BUDGET)
            .expect("generator search exceeded desk-scale budget")
            .expect("principal class must contain a generator");
        Some(gen)
    }

    pub fn class_index(&self, ideal: &IdealHnf) -> u32 {
        self.group.class_of_ideal(&self.field, ideal)
    }

    /// beta with (beta) = ideal * J_{class(ideal)}; the workhorse behind the
    /// ray class discrete log.
    pub fn principalization(&self, ideal: &IdealHnf) -> Result<(u32, FieldElement)> {
        let ci = self.class_index(ideal);
        let prod = ideal.mul(&self.j_ideal[ci as usize], &self.field);
        let gen = generator_of(&self.field, &prod, GENERATOR_BUDGET)?
            .expect("ideal * J_c lies in the principal class");
        Ok((ci, gen))
    }

    /// The product ideal prod gen^{e}, for nonnegative exponent rows.
    pub fn generator_product(&self, exponents: &[u32]) -> IdealHnf {
        let mut acc = IdealHnf::UNIT;
        for (i, q) in self.generators.iter().enumerate() {
            for _ in 0..exponents[i] {
                acc = acc.mul(&q.ideal, &self.field);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        for (d, h) in [
            (-1i64, 1u64),
            (-2, 1),
            (-3, 1),
            (-5, 2),
            (-7, 1),
            (-11, 1),
            (-15, 2),
            (-23, 3),
        ] {
            let field = ImagQuadField::new(d).unwrap();
            let g = class_group(&field).unwrap();
            assert_eq!(g.h, h, "d = {d}");
            assert_eq!(field.h_k(), h);
        }
    }

    #[test]
    fn reduced_forms_examples() {
        assert_eq!(reduced_forms(-4), vec![Form { a: 1, b: 0, c: 1 }]);
        let f20 = reduced_forms(-20);
        assert_eq!(
            f20,
            vec![Form { a: 1, b: 0, c: 5 }, Form { a: 2, b: 2, c: 3 }]
        );
        assert_eq!(reduced_forms(-23).len(), 3);
    }

    #[test]
    fn rho_bounds_hold() {
        // pi/(3 sqrt|d_K|) <= rho_K <= 6 (2 pi^2/5)^2 |d_K|^{1/4}
        for d in [-1, -2, -3, -5, -7, -11, -15, -23, -163] {
            let field = ImagQuadField::new(d).unwrap();
            class_group(&field).unwrap();
            let rho = field.rho_k();
            let abs = field.d_k.unsigned_abs() as f64;
            let lo = std::f64::consts::PI / (3.0 * abs.sqrt());
            let hi = 6.0 * (2.0 * std::f64::consts::PI.powi(2) / 5.0).powi(2) * abs.powf(0.25);
            assert!(lo <= rho && rho <= hi, "d = {d}: rho = {rho}");
            // stored exactly as 2 pi h / (|mu| sqrt|d_K|)
            let expect = 2.0 * std::f64::consts::PI * field.h_k() as f64
                / (field.mu_count as f64 * abs.sqrt());
            assert_eq!(rho, expect);
        }
    }

    #[test]
    fn principality_examples() {
        let ctx = class_context(-5).unwrap();
        // (2, 1+sqrt(-5)): norm 2, x^2+5y^2 = 2 unsolvable
        let p2 = IdealHnf { a: 2, b: 1, c: 1 };
        assert!(ctx.is_principal(&p2).is_none());

        let ctx1 = class_context(-1).unwrap();
        let three = IdealHnf::principal(&ctx1.field, FieldElement::new(3, 0));
        let g = ctx1.is_principal(&three).unwrap();
        assert_eq!(ctx1.field.norm(g), 9);
        assert!(ctx1.is_principal(&IdealHnf::UNIT).is_some());
    }

    #[test]
    fn generator_norm_matches() {
        for d in [-1, -5, -23] {
            let ctx = class_context(d).unwrap();
            for id in crate::ideal::enumerate_ideals(&ctx.field, 200.0).unwrap() {
                if let Some(g) = ctx.is_principal(&id) {
                    assert_eq!(ctx.field.norm(g), id.norm() as i128);
                    assert_eq!(IdealHnf::principal(&ctx.field, g), id);
                }
            }
        }
    }

    #[test]
    fn certificate_examples() {
        for (d, expect) in [(-23i64, true), (-1, false), (-5, false)] {
            let field = ImagQuadField::new(d).unwrap();
            let g = class_group(&field).unwrap();
            assert_eq!(nonabelian_certificate(&g), expect, "d = {d}");
        }
    }

    #[test]
    fn class_of_product_is_composition() {
        for d in [-5, -15, -23] {
            let ctx = class_context(d).unwrap();
            let ids = crate::ideal::enumerate_ideals(&ctx.field, 80.0).unwrap();
            for i in &ids {
                for j in ids.iter().take(20) {
                    let ci = ctx.class_index(i);
                    let cj = ctx.class_index(j);
                    let cp = ctx.class_index(&i.mul(j, &ctx.field));
                    assert_eq!(cp, ctx.group.compose(ci, cj));
                }
            }
        }
    }

    #[test]
    fn context_relations_are_relations() {
        for d in [-5, -15, -23] {
            let ctx = class_context(d).unwrap();
            for row in &ctx.relations {
                let prod = ctx.generator_product(row);
                assert_eq!(
                    ctx.class_index(&prod),
                    ctx.group.identity,
                    "d={d} row {row:?}"
                );
            }
            // rep vectors really represent their class
            for (c, r) in ctx.rep.iter().enumerate() {
                let prod = ctx.generator_product(r);
                assert_eq!(ctx.class_index(&prod), c as u32);
            }
        }
    }
}
