//! Perfect pairings, Poincaré duality, and the transforms that build new
//! structures from old ones (dual, shift, sign rescaling, transpose, completion
//! from a pairing).

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{all_acceptable, check_equal, failures, CheckReport, Window};
use crate::error::Error;
use crate::linalg::invert_map;
use crate::module::{compose, Element, GradedMap, GradedModule, Shape, Terms};
use crate::op::Op;
use crate::scalar::Field;
use crate::structures::{check_cofrobenius, check_cocommutativity, check_commutativity, BialgebraData, Flavor};
use crate::tensor::{double_dual_iso, dual_map, dual_module, permute, shift_map, shift_module, twist, Permutation, ShiftMaps};

/// A pairing `p: A⊗A → R` with its adjoint `vec_p: A → A∨`, `⟨vec_p(a), b⟩ = p(a⊗b)`.
#[derive(Clone, Debug)]
pub struct PairingHandle {
    pub p: GradedMap,
    pub vec_p: GradedMap,
}

impl PairingHandle {
    pub fn new(p: GradedMap) -> Result<PairingHandle, Error> {
        let module = pairing_module(&p.src, &p.dst)?;
        let field = p.src.field;
        let dual = Shape::new(field, vec![dual_module(&module)]);
        let mut vec_p = GradedMap::zero(Shape::power(field, &module, 1), dual, p.degree);
        for (t, col) in p.columns() {
            if let Some(c) = col.get(&Vec::new()) {
                vec_p.add_entry(vec![t[0]], vec![t[1]], c.clone())?;
            }
        }
        Ok(PairingHandle { p, vec_p })
    }

    /// `ev ∘ (vec_p ⊗ 1)`, which must give back `p`.
    pub fn reconstruct(&self) -> GradedMap {
        let mut out = GradedMap::zero(self.p.src.clone(), self.p.dst.clone(), self.p.degree);
        for (a, col) in self.vec_p.columns() {
            for (f, c) in col {
                out.add_entry(vec![a[0], f[0]], Vec::new(), c.clone()).expect("homogeneous");
            }
        }
        out
    }
}

fn pairing_module(two: &Shape, ground: &Shape) -> Result<Arc<GradedModule>, Error> {
    if two.arity() != 2 || ground.arity() != 0 || two.factors[0] != two.factors[1] {
        return Err(Error::Shape(String::from("a pairing maps A⊗A to R")));
    }
    Ok(two.factors[0].clone())
}

/// A copairing `c ∈ A⊗A` of known degree with `vec_c: A∨ → A`, `vec_c(f) = (-1)^{|f||c|}(f⊗1)c`.
#[derive(Clone, Debug)]
pub struct CopairingHandle {
    pub c: Element,
    pub degree: i64,
    pub vec_c: GradedMap,
}

impl CopairingHandle {
    pub fn new(c: Element, degree: i64) -> Result<CopairingHandle, Error> {
        let module = pairing_module(&c.shape, &Shape::ground(c.shape.field))?;
        if let Some(d) = c.degree() {
            if d != degree {
                return Err(Error::Degree(format!("copairing has degree {}, not {}", d, degree)));
            }
        }
        let field = c.shape.field;
        let dual = Shape::new(field, vec![dual_module(&module)]);
        let mut vec_c = GradedMap::zero(dual, Shape::power(field, &module, 1), degree);
        for (t, x) in &c.terms {
            let sign = module.degree(t[0]) * degree;
            vec_c.add_entry(vec![t[0]], vec![t[1]], x.clone().signed(sign))?;
        }
        Ok(CopairingHandle { c, degree, vec_c })
    }

    fn op(&self) -> Op {
        Op::element(&self.c, self.degree)
    }
}

/// `(1⊗p)(c⊗1) = 1 = (-1)^{|p||c|}(p⊗1)(1⊗c)`, and `vec_c`, `vec_p` mutually inverse.
pub fn check_perfect(
    pair: &PairingHandle,
    copair: &CopairingHandle,
    window: Option<Window>,
) -> Result<Vec<CheckReport>, Error> {
    let (dp, dc) = (pair.p.degree, copair.degree);
    if dp != -dc {
        return Err(Error::Degree(format!("pairing degree {} is not minus copairing degree {}", dp, dc)));
    }
    let module = pairing_module(&pair.p.src, &pair.p.dst)?;
    if *copair.c.shape.factors[0] != *module {
        return Err(Error::Shape(String::from("pairing and copairing live on different modules")));
    }
    let field = pair.p.src.field;
    let id = Op::id(Shape::power(field, &module, 1));
    let p = Op::map(pair.p.clone());
    let c = copair.op();
    let zig = Op::tensor_all(&[id.clone(), p.clone()]).after(&c.tensor(&id));
    let zag = p.tensor(&id).after(&id.tensor(&c)).sign(dp * dc);
    let vp = Op::map(pair.vec_p.clone());
    let vc = Op::map(copair.vec_c.clone());
    let dual_id = Op::id(vp.dst().clone());
    Ok(vec![
        check_equal("(1⊗p)(c⊗1) = 1 = (-1)^|p||c|(p⊗1)(1⊗c)", &[zig, id.clone(), zag], window),
        check_equal("vec_c vec_p = 1", &[vc.after(&vp), id], window),
        check_equal("vec_p vec_c = 1", &[vp.after(&vc), dual_id], window),
    ])
}

/// The pairing and copairing handles of a structure, when both (co)units are present.
pub fn handles(d: &BialgebraData) -> Option<(PairingHandle, CopairingHandle)> {
    let p = PairingHandle::new(d.pairing()?).ok()?;
    let c = CopairingHandle::new(d.copairing()?, d.copairing_degree()?).ok()?;
    Some((p, c))
}

/// `(A∨, λ∨, μ∨, ε∨, η∨)`.
pub fn dualize(d: &BialgebraData) -> BialgebraData {
    let module = dual_module(&d.module);
    let mu = dual_map(&d.lambda);
    let lambda = dual_map(&d.mu);
    let eta = d.eps.as_ref().map(|e| dual_map(e).to_element());
    let eps = d.eta_map().map(|e| dual_map(&e));
    BialgebraData::new(module, d.field, mu, lambda, eta, eps)
        .expect("duals have the right shapes")
        .with_window(d.window)
}

/// `(A[1], sμ(ω⊗ω), (s⊗s)λω, (-1)^{|μ|}sη, (-1)^{|λ|}εω)`.
pub fn shift_structure(d: &BialgebraData) -> BialgebraData {
    let module = shift_module(&d.module);
    let m = d.mu_degree();
    let l = d.lambda_degree();
    let mu = shift_map(&d.mu).expect("product of a single module");
    let lambda = shift_map(&d.lambda).expect("coproduct of a single module");
    let eta = d.eta_map().map(|e| shift_map(&e).expect("unit").to_element().signed(m));
    let eps = d.eps.as_ref().map(|e| shift_map(e).expect("counit").signed(l));
    BialgebraData::new(module, d.field, mu, lambda, eta, eps)
        .expect("shifts have the right shapes")
        .with_window(d.window)
}

/// `s: A → B` (degree −1) and `ω: B → A` (degree +1) for modules with the same basis order.
fn shift_pair(field: Field, a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> ShiftMaps {
    let sa = Shape::power(field, a, 1);
    let sb = Shape::power(field, b, 1);
    let mut s = GradedMap::zero(sa.clone(), sb.clone(), -1);
    let mut omega = GradedMap::zero(sb, sa, 1);
    for i in 0..a.dim() as u32 {
        s.add_entry(vec![i], vec![i], field.one()).expect("degree -1");
        omega.add_entry(vec![i], vec![i], field.one()).expect("degree +1");
    }
    ShiftMaps { s, omega }
}

/// Inverse of [`shift_structure`]: desuspends and strips the `s·` label prefix.
pub fn unshift_structure(d: &BialgebraData) -> BialgebraData {
    let module = d.module.relabel(
        |l| match l.strip_prefix("s·") {
            Some(rest) => String::from(rest),
            None => format!("ω·{}", l),
        },
        |deg| deg + 1,
    );
    let field = d.field;
    let sh = shift_pair(field, &module, &d.module);
    let (s, omega) = (Op::map(sh.s), Op::map(sh.omega));
    let (m, l) = (d.mu_degree(), d.lambda_degree());
    // (ω⊗ω)(s⊗s) = -1 = (s⊗s)(ω⊗ω) by the Koszul rule.
    let mu = omega.after(&Op::map(d.mu.clone())).after(&s.tensor(&s)).neg().materialize();
    let lambda = omega.tensor(&omega).after(&Op::map(d.lambda.clone())).after(&s).neg().materialize();
    let eta = d.eta_map().map(|e| omega.after(&Op::map(e)).materialize().to_element().signed(m - 1));
    let eps = d.eps.as_ref().map(|e| Op::map(e.clone()).after(&s).materialize().signed(l + 1));
    BialgebraData::new(module, field, mu, lambda, eta, eps)
        .expect("desuspension keeps shapes")
        .with_window(d.window)
}

/// `(A, (-1)^m μ, (-1)^ℓ λ, (-1)^m η, (-1)^ℓ ε)`.
pub fn rescale_signs(d: &BialgebraData, m: i64, l: i64) -> BialgebraData {
    BialgebraData {
        mu: d.mu.signed(m),
        lambda: d.lambda.signed(l),
        eta: d.eta.as_ref().map(|e| e.signed(m)),
        eps: d.eps.as_ref().map(|e| e.signed(l)),
        ..d.clone()
    }
}

fn require_biunital(d: &BialgebraData) -> Result<(), Error> {
    let reports = check_cofrobenius(d, Flavor::Biunital);
    match failures(&reports).first() {
        None => Ok(()),
        Some(r) => Err(Error::Relation(r.name.clone())),
    }
}

/// `(A, μτ, τλ, (-1)^{|μ|}η, (-1)^{|λ|}ε)`, defined for biunital coFrobenius input.
pub fn transpose_structure(d: &BialgebraData) -> Result<BialgebraData, Error> {
    require_biunital(d)?;
    let tau = twist(d.field, &d.module, &d.module);
    let mu = compose(&d.mu, &tau)?;
    let lambda = compose(&tau, &d.lambda)?;
    let eta = d.eta.as_ref().map(|e| e.signed(d.mu_degree()));
    let eps = d.eps.as_ref().map(|e| e.signed(d.lambda_degree()));
    Ok(BialgebraData { mu, lambda, eta, eps, ..d.clone() })
}

fn window_of(a: &BialgebraData, b: &BialgebraData) -> Option<Window> {
    a.window.or(b.window)
}

/// `φμ_A = (-1)^{|φ||μ_A|} μ_B φ^{⊗2}`; for bijective `φ` also `η_B = (-1)^{|φ|} φη_A`.
///
/// The first report is the intertwining relation itself.
pub fn check_intertwines_product(phi: &GradedMap, a: &BialgebraData, b: &BialgebraData) -> Vec<CheckReport> {
    let w = window_of(a, b);
    let f = Op::map(phi.clone());
    let lhs = f.after(&Op::map(a.mu.clone()));
    let rhs = Op::map(b.mu.clone()).after(&f.tensor(&f)).sign(phi.degree * a.mu_degree());
    let main = check_equal("φ intertwines the products", &[lhs, rhs], w);
    let mut out = vec![main.clone()];
    if main.passed() && invert_map(phi).is_ok() {
        if let (Some(ea), Some(eb)) = (a.eta_map(), b.eta_map()) {
            let moved = f.after(&Op::map(ea)).sign(phi.degree);
            out.push(check_equal("unit transport η_B = (-1)^|φ| φη_A", &[Op::map(eb), moved], w));
        }
    }
    out
}

/// `φ^{⊗2}λ_A = (-1)^{|φ||λ_A|} λ_B φ`; for bijective `φ` also `ε_A = ε_B φ`.
pub fn check_intertwines_coproduct(phi: &GradedMap, a: &BialgebraData, b: &BialgebraData) -> Vec<CheckReport> {
    let w = window_of(a, b);
    let f = Op::map(phi.clone());
    let lhs = f.tensor(&f).after(&Op::map(a.lambda.clone()));
    let rhs = Op::map(b.lambda.clone()).after(&f).sign(phi.degree * a.lambda_degree());
    let main = check_equal("φ intertwines the coproducts", &[lhs, rhs], w);
    let mut out = vec![main.clone()];
    if main.passed() && invert_map(phi).is_ok() {
        if let (Some(ea), Some(eb)) = (&a.eps, &b.eps) {
            let moved = Op::map(eb.clone()).after(&f);
            out.push(check_equal("counit transport ε_A = ε_B φ", &[Op::map(ea.clone()), moved], w));
        }
    }
    out
}

/// Compares `d` with a structure on `A∨∨` through the canonical `a ↦ (-1)^{|a|} a∨∨`.
pub fn compare_double_dual(d: &BialgebraData, dd: &BialgebraData) -> Vec<CheckReport> {
    let iso = double_dual_iso(&d.shape(1));
    let mut out = check_intertwines_product(&iso, d, dd);
    out.extend(check_intertwines_coproduct(&iso, d, dd));
    out
}

/// The structure `vec_p` maps onto:
/// `(A∨, (-1)^{|λ|}λ∨τ, (-1)^{|μ||λ|+|λ|}τμ∨, ε∨, (-1)^{|μ||λ|+|λ|+|μ|}η∨)`.
pub fn poincare_target(d: &BialgebraData) -> BialgebraData {
    let (m, l) = (d.mu_degree(), d.lambda_degree());
    let dual = dualize(d);
    let tau = twist(d.field, &dual.module, &dual.module);
    let mu = compose(&dual.mu, &tau).expect("twist on A∨⊗A∨").signed(l);
    let lambda = compose(&tau, &dual.lambda).expect("twist on A∨⊗A∨").signed(m * l + l);
    let eps = dual.eps.as_ref().map(|e| e.signed(m * l + l + m));
    BialgebraData { mu, lambda, eps, ..dual }
}

/// `vec_p` is an isomorphism of biunital coFrobenius bialgebras onto [`poincare_target`],
/// with inverse `vec_c`.
pub fn check_poincare_duality(d: &BialgebraData) -> Result<Vec<CheckReport>, Error> {
    require_biunital(d)?;
    let (pair, copair) = handles(d).ok_or_else(|| Error::Input(String::from("needs unit and counit")))?;
    let target = poincare_target(d);
    let mut out = Vec::new();
    let target_suite = check_cofrobenius(&target, Flavor::Biunital);
    out.push(CheckReport::decided(
        "target is biunital coFrobenius",
        all_acceptable(&target_suite),
        failures(&target_suite).first().map(|r| r.name.clone()),
    ));
    let vp = pair.vec_p.clone();
    let vc = copair.vec_c.clone();
    let name = |r: CheckReport, prefix: &str| {
        let n = r.name.replacen('φ', prefix, 1);
        r.renamed(&n)
    };
    out.extend(check_intertwines_product(&vp, d, &target).into_iter().map(|r| name(r, "vec_p")));
    out.extend(check_intertwines_coproduct(&vp, d, &target).into_iter().map(|r| name(r, "vec_p")));
    out.extend(check_intertwines_product(&vc, &target, d).into_iter().map(|r| name(r, "vec_c")));
    out.extend(check_intertwines_coproduct(&vc, &target, d).into_iter().map(|r| name(r, "vec_c")));
    out.extend(check_perfect(&pair, &copair, d.window)?);
    Ok(out)
}

/// Builds `λ = (1⊗μ)(c⊗1)` from `(μ, η, ε)`, where `c` inverts `p = (-1)^{|λ|}εμ`
/// and `|λ|` is taken to be `-|ε|`.
///
/// Returns the structure together with the copairing it was built from.
pub fn complete_from_pairing_parts(
    module: Arc<GradedModule>,
    field: Field,
    mu: GradedMap,
    eta: Element,
    eps: GradedMap,
) -> Result<(BialgebraData, Element), Error> {
    let l = -eps.degree;
    let p = compose(&eps, &mu)?.signed(l);
    if p.is_zero() {
        return Err(Error::NotPerfect(String::from("the pairing vanishes")));
    }
    let pair = PairingHandle::new(p)?;
    let inv = invert_map(&pair.vec_p)?;
    let a2 = Shape::power(field, &module, 2);
    let mut terms = Terms::new();
    for (f, col) in inv.columns() {
        let i = f[0];
        for (t, x) in col {
            terms.insert(vec![i, t[0]], x.clone().signed(pair.p.degree * module.degree(i)));
        }
    }
    let c = Element { shape: a2.clone(), terms };
    let c_degree = -pair.p.degree;
    let id = Op::id(Shape::power(field, &module, 1));
    let lambda = id
        .tensor(&Op::map(mu.clone()))
        .after(&Op::element(&c, c_degree).tensor(&id))
        .materialize();
    let d = BialgebraData::new(module, field, mu, lambda, Some(eta), Some(eps))?;
    require_biunital(&d)?;
    Ok((d, c))
}

pub fn complete_from_pairing(
    module: Arc<GradedModule>,
    field: Field,
    mu: GradedMap,
    eta: Element,
    eps: GradedMap,
) -> Result<BialgebraData, Error> {
    complete_from_pairing_parts(module, field, mu, eta, eps).map(|(d, _)| d)
}

/// Cyclic symmetry of `β = (1⊗μ⊗1)(c⊗c)` and `B = (p⊗p)(1⊗λ⊗1)`.
pub fn cyclic_triple_checks(d: &BialgebraData) -> Vec<CheckReport> {
    let k = d.kit();
    let a3 = d.shape(3);
    let sigma = Op::map(permute(&Permutation::cycle(3), &a3).expect("three factors"));
    let t12 = Op::map(permute(&Permutation::transposition(3, 0, 1), &a3).expect("three factors"));
    let mut out = Vec::new();
    let unital = all_acceptable(&check_cofrobenius(d, Flavor::Unital));
    let counital = all_acceptable(&check_cofrobenius(d, Flavor::Counital));
    match (&k.c, unital) {
        (Some(c), true) => {
            let beta = k.t(&[&k.id, &k.mu, &k.id]).after(&k.t(&[c, c]));
            out.push(k.eq("σβ = β", &[sigma.after(&beta), beta.clone()]));
            if check_cocommutativity(d).passed() {
                out.push(k.eq("τ12 β = (-1)^|λ| β", &[t12.after(&beta), beta.sign(k.l)]));
            }
        }
        _ => out.push(CheckReport::skipped("σβ = β", "not unital coFrobenius")),
    }
    match (&k.p, counital) {
        (Some(p), true) => {
            let big_b = k.t(&[p, p]).after(&k.t(&[&k.id, &k.lam, &k.id]));
            out.push(k.eq("Bσ = B", &[big_b.after(&sigma), big_b.clone()]));
            if check_commutativity(d).passed() {
                out.push(k.eq("Bτ12 = (-1)^|μ| B", &[big_b.after(&t12), big_b.sign(k.m)]));
            }
        }
        _ => out.push(CheckReport::skipped("Bσ = B", "not counital coFrobenius")),
    }
    out
}

/// Products and coproducts transported along `s: A → A[1]` with the composition-stable signs
/// `μ̄ = (-1)^{|μ|} sμ(s⊗s)⁻¹` and `λ̄ = (-1)^{|λ|}(s⊗s)λs⁻¹`, so that `s` intertwines
/// both and composites of such shifts do too.
///
/// Returns the shifted structure together with `s`.
pub fn stable_shift(d: &BialgebraData) -> (BialgebraData, GradedMap) {
    let target = shift_module(&d.module);
    let sh = shift_pair(d.field, &d.module, &target);
    let (s, omega) = (Op::map(sh.s.clone()), Op::map(sh.omega));
    let (m, l) = (d.mu_degree(), d.lambda_degree());
    // (s⊗s)⁻¹ = -(ω⊗ω) and s⁻¹ = ω.
    let mu = s.after(&Op::map(d.mu.clone())).after(&omega.tensor(&omega)).sign(m + 1).materialize();
    let lambda = s.tensor(&s).after(&Op::map(d.lambda.clone())).after(&omega).sign(l).materialize();
    // the unit moves as η_B = (-1)^{|s|} sη, the counit as ε_B = εs⁻¹
    let eta = d.eta_map().map(|e| s.after(&Op::map(e)).materialize().to_element().signed(1));
    let eps = d.eps.as_ref().map(|e| Op::map(e.clone()).after(&omega).materialize());
    let shifted = BialgebraData::new(target, d.field, mu, lambda, eta, eps)
        .expect("shift keeps shapes")
        .with_window(d.window);
    (shifted, sh.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::make_module;

    #[test]
    fn pairing_reconstruction() {
        let a = make_module(vec![("1", 0), ("x", 2)]).unwrap();
        let q = Field::Q;
        let mut p = GradedMap::zero(Shape::power(q, &a, 2), Shape::ground(q), -2);
        p.add_labels(&["1", "x"], &[], 1).unwrap();
        p.add_labels(&["x", "1"], &[], 1).unwrap();
        let h = PairingHandle::new(p.clone()).unwrap();
        assert!(crate::module::map_equal(&h.reconstruct(), &p));
        assert!(invert_map(&h.vec_p).is_ok());
    }
}
