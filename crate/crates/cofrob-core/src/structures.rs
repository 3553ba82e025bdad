//! Products, coproducts, (co)units, and the axiom systems built from them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{check_equal, check_zero, CheckReport, Window};
use crate::error::Error;
use crate::module::{add_term, Element, GradedMap, GradedModule, Shape, Terms};
use crate::op::Op;
use crate::scalar::Field;
use crate::tensor::twist;

/// A graded module with product, coproduct, and optional unit and counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraData {
    pub module: Arc<GradedModule>,
    pub field: Field,
    pub mu: GradedMap,
    pub lambda: GradedMap,
    pub eta: Option<Element>,
    pub eps: Option<GradedMap>,
    pub window: Option<Window>,
}

/// Which (co)units a coFrobenius check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Unital,
    Counital,
    Biunital,
}

impl BialgebraData {
    /// Validates shapes: `μ: A⊗A → A`, `λ: A → A⊗A`, `η ∈ A` homogeneous, `ε: A → R`.
    pub fn new(
        module: Arc<GradedModule>,
        field: Field,
        mu: GradedMap,
        lambda: GradedMap,
        eta: Option<Element>,
        eps: Option<GradedMap>,
    ) -> Result<BialgebraData, Error> {
        let a1 = Shape::power(field, &module, 1);
        let a2 = Shape::power(field, &module, 2);
        if mu.src != a2 || mu.dst != a1 {
            return Err(Error::Shape(String::from("the product must map A⊗A to A")));
        }
        if lambda.src != a1 || lambda.dst != a2 {
            return Err(Error::Shape(String::from("the coproduct must map A to A⊗A")));
        }
        if let Some(e) = &eta {
            if e.shape != a1 {
                return Err(Error::Shape(String::from("the unit must be an element of A")));
            }
            if !e.is_zero() && e.degree().is_none() {
                return Err(Error::Degree(String::from("the unit is not homogeneous")));
            }
        }
        if let Some(e) = &eps {
            if e.src != a1 || e.dst != Shape::ground(field) {
                return Err(Error::Shape(String::from("the counit must map A to R")));
            }
        }
        Ok(BialgebraData { module, field, mu, lambda, eta, eps, window: None })
    }

    pub fn with_window(mut self, window: Option<Window>) -> BialgebraData {
        self.window = window;
        self
    }

    pub fn shape(&self, k: usize) -> Shape {
        Shape::power(self.field, &self.module, k)
    }

    pub fn mu_degree(&self) -> i64 {
        self.mu.degree
    }

    pub fn lambda_degree(&self) -> i64 {
        self.lambda.degree
    }

    /// Degree of the unit; a zero unit is assigned `-|μ|`.
    pub fn eta_degree(&self) -> Option<i64> {
        self.eta.as_ref().map(|e| e.degree().unwrap_or(-self.mu.degree))
    }

    pub fn eps_degree(&self) -> Option<i64> {
        self.eps.as_ref().map(|e| e.degree)
    }

    /// The unit as a map `R → A`.
    pub fn eta_map(&self) -> Option<GradedMap> {
        let d = self.eta_degree()?;
        GradedMap::from_element(self.eta.as_ref()?, d).ok()
    }

    /// `c = (-1)^{|λ||μ|+|μ|} λη`.
    pub fn copairing(&self) -> Option<Element> {
        let l = self.lambda_degree();
        let m = self.mu_degree();
        let eta = self.eta.as_ref()?;
        Some(self.lambda.apply(eta).ok()?.signed(l * m + m))
    }

    pub fn copairing_degree(&self) -> Option<i64> {
        Some(self.lambda_degree() + self.eta_degree()?)
    }

    /// `p = (-1)^{|λ|} εμ`.
    pub fn pairing(&self) -> Option<GradedMap> {
        let eps = self.eps.as_ref()?;
        Some(crate::module::compose(eps, &self.mu).ok()?.signed(self.lambda_degree()))
    }

    pub fn kit(&self) -> Kit {
        Kit::new(self)
    }

    /// Replaces the product, keeping everything else.
    pub fn with_mu(&self, mu: GradedMap) -> BialgebraData {
        BialgebraData { mu, ..self.clone() }
    }

    pub fn with_lambda(&self, lambda: GradedMap) -> BialgebraData {
        BialgebraData { lambda, ..self.clone() }
    }
}

/// The building blocks of relations, as lazily evaluated operations.
#[derive(Clone, Debug)]
pub struct Kit {
    pub id: Op,
    pub mu: Op,
    pub lam: Op,
    pub tau: Op,
    pub eta: Option<Op>,
    pub eps: Option<Op>,
    /// `c` as a map `R → A⊗A`.
    pub c: Option<Op>,
    /// `p: A⊗A → R`.
    pub p: Option<Op>,
    /// `|μ|`
    pub m: i64,
    /// `|λ|`
    pub l: i64,
    pub window: Option<Window>,
}

impl Kit {
    fn new(d: &BialgebraData) -> Kit {
        let id = Op::id(d.shape(1));
        let mu = Op::map(d.mu.clone());
        let lam = Op::map(d.lambda.clone());
        let tau = Op::map(twist(d.field, &d.module, &d.module));
        let m = d.mu_degree();
        let l = d.lambda_degree();
        let eta = d.eta_map().map(Op::map);
        let eps = d.eps.clone().map(Op::map);
        let c = eta.as_ref().map(|e| lam.after(e).sign(l * m + m));
        let p = eps.as_ref().map(|e| e.after(&mu).sign(l));
        Kit { id, mu, lam, tau, eta, eps, c, p, m, l, window: d.window }
    }

    pub fn t(&self, ops: &[&Op]) -> Op {
        let v: Vec<Op> = ops.iter().map(|o| (*o).clone()).collect();
        Op::tensor_all(&v)
    }

    pub fn eq(&self, name: &str, sides: &[Op]) -> CheckReport {
        check_equal(name, sides, self.window)
    }

    /// `λη`
    pub fn lam_eta(&self) -> Option<Op> {
        Some(self.lam.after(self.eta.as_ref()?))
    }

    /// `εμ`
    pub fn eps_mu(&self) -> Option<Op> {
        Some(self.eps.as_ref()?.after(&self.mu))
    }
}

const NO_UNIT: &str = "no unit given";
const NO_COUNIT: &str = "no counit given";

pub fn check_associativity(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    let lhs = k.mu.after(&k.t(&[&k.mu, &k.id]));
    let rhs = k.mu.after(&k.t(&[&k.id, &k.mu])).sign(k.m);
    k.eq("associativity", &[lhs, rhs])
}

pub fn check_commutativity(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    k.eq("commutativity", &[k.mu.after(&k.tau), k.mu.sign(k.m)])
}

pub fn check_unit(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    let Some(eta) = &k.eta else { return CheckReport::skipped("unit", NO_UNIT) };
    let left = k.mu.after(&k.t(&[eta, &k.id])).sign(k.m);
    let right = k.mu.after(&k.t(&[&k.id, eta]));
    k.eq("unit", &[left, k.id.clone(), right])
}

pub fn check_coassociativity(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    let lhs = k.t(&[&k.lam, &k.id]).after(&k.lam);
    let rhs = k.t(&[&k.id, &k.lam]).after(&k.lam).sign(k.l);
    k.eq("coassociativity", &[lhs, rhs])
}

pub fn check_cocommutativity(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    k.eq("cocommutativity", &[k.tau.after(&k.lam), k.lam.sign(k.l)])
}

pub fn check_counit(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    let Some(eps) = &k.eps else { return CheckReport::skipped("counit", NO_COUNIT) };
    let left = k.t(&[eps, &k.id]).after(&k.lam);
    let right = k.t(&[&k.id, eps]).after(&k.lam).sign(k.l);
    k.eq("counit", &[left, k.id.clone(), right])
}

/// Associativity, commutativity (informational) and the unit.
pub fn check_product_laws(d: &BialgebraData) -> Vec<CheckReport> {
    let mut unit = check_unit(d);
    if d.eta.is_none() {
        unit = unit.informational();
    }
    vec![check_associativity(d), check_commutativity(d).informational(), unit]
}

/// Coassociativity, cocommutativity (informational) and the counit.
pub fn check_coproduct_laws(d: &BialgebraData) -> Vec<CheckReport> {
    let mut counit = check_counit(d);
    if d.eps.is_none() {
        counit = counit.informational();
    }
    vec![check_coassociativity(d), check_cocommutativity(d).informational(), counit]
}

/// `(1⊗μ)(λ⊗1) + (μ⊗1)(1⊗λ)`, the two terms shared by all infinitesimal relations.
fn leibniz_terms(k: &Kit) -> Op {
    let a = k.t(&[&k.id, &k.mu]).after(&k.t(&[&k.lam, &k.id]));
    let b = k.t(&[&k.mu, &k.id]).after(&k.t(&[&k.id, &k.lam]));
    a.plus(&b)
}

/// `(μ⊗μ)(1⊗λη⊗1)`
fn unit_correction(k: &Kit, left_twisted: bool, right_twisted: bool) -> Option<Op> {
    let le = k.lam_eta()?;
    let mt = k.mu.after(&k.tau);
    let ml = if left_twisted { &mt } else { &k.mu };
    let mr = if right_twisted { &mt } else { &k.mu };
    Some(k.t(&[ml, mr]).after(&k.t(&[&k.id, &le, &k.id])))
}

/// `(1⊗εμ⊗1)(x⊗y)` for coproduct-like `x, y`.
fn counit_correction(k: &Kit, x: &Op, y: &Op) -> Option<Op> {
    let em = k.eps_mu()?;
    Some(k.t(&[&k.id, &em, &k.id]).after(&k.t(&[x, y])))
}

pub fn check_unital_infinitesimal(d: &BialgebraData) -> CheckReport {
    let name = "unital infinitesimal relation";
    let k = d.kit();
    let Some(corr) = unit_correction(&k, false, false) else { return CheckReport::skipped(name, NO_UNIT) };
    let lhs = k.lam.after(&k.mu);
    let rhs = leibniz_terms(&k).sign(k.l * k.m).minus(&corr.sign(k.m));
    k.eq(name, &[lhs, rhs])
}

pub fn check_counital_infinitesimal(d: &BialgebraData) -> CheckReport {
    let name = "counital infinitesimal relation";
    let k = d.kit();
    let Some(corr) = counit_correction(&k, &k.lam, &k.lam) else {
        return CheckReport::skipped(name, NO_COUNIT);
    };
    let lhs = k.lam.after(&k.mu);
    let rhs = leibniz_terms(&k).sign(k.l * k.m).minus(&corr.sign(k.l));
    k.eq(name, &[lhs, rhs])
}

/// The four terms common to both anti-symmetry relations, as `(lhs, rhs)`.
fn antisymmetry_core(k: &Kit) -> (Op, Op) {
    let (m, l) = (k.m, k.l);
    let tl = k.tau.after(&k.lam);
    let mt = k.mu.after(&k.tau);
    let l1 = k.t(&[&k.id, &k.mu]).after(&k.t(&[&tl, &k.id])).sign(m * (l + 1));
    let l2 = k.t(&[&mt, &k.id]).after(&k.t(&[&k.id, &k.lam])).sign(l * (m + 1));
    let r1 = k.tau.after(&k.t(&[&k.id, &mt])).after(&k.t(&[&k.lam, &k.id])).sign(l * m);
    let r2 = k.tau.after(&k.t(&[&k.mu, &k.id])).after(&k.t(&[&k.id, &tl])).sign((l + 1) * (m + 1));
    (l1.plus(&l2), r1.minus(&r2))
}

pub fn check_unital_antisymmetry(d: &BialgebraData) -> CheckReport {
    let name = "unital anti-symmetry";
    let k = d.kit();
    let (Some(cl), Some(cr)) = (unit_correction(&k, true, false), unit_correction(&k, false, true)) else {
        return CheckReport::skipped(name, NO_UNIT);
    };
    let (lhs, rhs) = antisymmetry_core(&k);
    let lhs = lhs.minus(&cl.sign(k.l + k.m));
    let rhs = rhs.minus(&k.tau.after(&cr).sign(k.m));
    k.eq(name, &[lhs, rhs])
}

/// `τSτ = -(-1)^{|S|} S` for `S = (μ⊗1)(1⊗τλ) - (-1)^{|μ|}(1⊗μ)(τλ⊗1)`.
pub fn check_antisymmetry_s_form(d: &BialgebraData) -> CheckReport {
    let k = d.kit();
    let tl = k.tau.after(&k.lam);
    let s = k
        .t(&[&k.mu, &k.id])
        .after(&k.t(&[&k.id, &tl]))
        .minus(&k.t(&[&k.id, &k.mu]).after(&k.t(&[&tl, &k.id])).sign(k.m));
    let lhs = k.tau.after(&s).after(&k.tau);
    let rhs = s.sign(1 + k.m + k.l);
    k.eq("anti-symmetry (S-operator form)", &[lhs, rhs])
}

/// `τλη = (-1)^{|λ|} λη`
pub fn check_copairing_twist(d: &BialgebraData) -> CheckReport {
    let name = "τλη = (-1)^|λ| λη";
    let k = d.kit();
    let Some(le) = k.lam_eta() else { return CheckReport::skipped(name, NO_UNIT) };
    k.eq(name, &[k.tau.after(&le), le.sign(k.l)])
}

pub fn check_counital_antisymmetry(d: &BialgebraData) -> CheckReport {
    let name = "counital anti-symmetry";
    let k = d.kit();
    let tl = k.tau.after(&k.lam);
    let (Some(cl), Some(cr)) = (counit_correction(&k, &tl, &k.lam), counit_correction(&k, &k.lam, &tl)) else {
        return CheckReport::skipped(name, NO_COUNIT);
    };
    let (lhs, rhs) = antisymmetry_core(&k);
    let lhs = lhs.minus(&cl.sign(k.l + k.m));
    let rhs = rhs.minus(&cr.after(&k.tau).sign(k.l));
    k.eq(name, &[lhs, rhs])
}

/// `εμτ = (-1)^{|μ|} εμ`
pub fn check_pairing_twist(d: &BialgebraData) -> CheckReport {
    let name = "εμτ = (-1)^|μ| εμ";
    let k = d.kit();
    let Some(em) = k.eps_mu() else { return CheckReport::skipped(name, NO_COUNIT) };
    k.eq(name, &[em.after(&k.tau), em.sign(k.m)])
}

/// The three bridges tying the unital and counital corrections together.
pub fn check_biunital_bridges(d: &BialgebraData) -> Vec<CheckReport> {
    let k = d.kit();
    let names = ["infinitesimal bridge", "anti-symmetry bridge (μτ⊗μ)", "anti-symmetry bridge (μ⊗μτ)"];
    if k.eta.is_none() || k.eps.is_none() {
        let why = if k.eta.is_none() { NO_UNIT } else { NO_COUNIT };
        return names.iter().map(|n| CheckReport::skipped(n, why)).collect();
    }
    let tl = k.tau.after(&k.lam);
    let b0l = counit_correction(&k, &k.lam, &k.lam).unwrap().sign(k.l);
    let b0r = unit_correction(&k, false, false).unwrap().sign(k.m);
    let b1l = unit_correction(&k, true, false).unwrap();
    let b1r = counit_correction(&k, &tl, &k.lam).unwrap();
    let b2l = unit_correction(&k, false, true).unwrap();
    let b2r = counit_correction(&k, &k.lam, &tl).unwrap();
    vec![
        k.eq(names[0], &[b0l, b0r]),
        k.eq(names[1], &[b1l, b1r]),
        k.eq(names[2], &[b2l, b2r]),
    ]
}

/// Unit, associativity, coassociativity, the unital relations and the S-form cross-check.
pub fn unital_infinitesimal_suite(d: &BialgebraData) -> Vec<CheckReport> {
    vec![
        check_unit(d),
        check_associativity(d),
        check_coassociativity(d),
        check_unital_infinitesimal(d),
        check_unital_antisymmetry(d),
        check_antisymmetry_s_form(d).informational(),
        check_copairing_twist(d),
    ]
}

pub fn counital_infinitesimal_suite(d: &BialgebraData) -> Vec<CheckReport> {
    vec![
        check_counit(d),
        check_associativity(d),
        check_coassociativity(d),
        check_counital_infinitesimal(d),
        check_counital_antisymmetry(d),
        check_pairing_twist(d),
    ]
}

pub fn biunital_infinitesimal_suite(d: &BialgebraData) -> Vec<CheckReport> {
    let mut out = vec![
        check_unit(d),
        check_counit(d),
        check_associativity(d),
        check_coassociativity(d),
        check_unital_infinitesimal(d),
        check_counital_infinitesimal(d),
        check_unital_antisymmetry(d),
        check_counital_antisymmetry(d),
    ];
    out.extend(check_biunital_bridges(d));
    out
}

/// `λ = (1⊗μ)(c⊗1) = (-1)^{|μ|}(μ⊗1)(1⊗c)`
pub fn check_unital_cofrobenius_relation(d: &BialgebraData) -> CheckReport {
    let name = "unital coFrobenius relation";
    let k = d.kit();
    let Some(c) = &k.c else { return CheckReport::skipped(name, NO_UNIT) };
    let a = k.t(&[&k.id, &k.mu]).after(&k.t(&[c, &k.id]));
    let b = k.t(&[&k.mu, &k.id]).after(&k.t(&[&k.id, c])).sign(k.m);
    k.eq(name, &[k.lam.clone(), a, b])
}

/// `μ = (-1)^{|μ||λ|+|λ|}(p⊗1)(1⊗λ) = (-1)^{|μ||λ|}(1⊗p)(λ⊗1)`
pub fn check_counital_cofrobenius_relation(d: &BialgebraData) -> CheckReport {
    let name = "counital coFrobenius relation";
    let k = d.kit();
    let Some(p) = &k.p else { return CheckReport::skipped(name, NO_COUNIT) };
    let a = k.t(&[p, &k.id]).after(&k.t(&[&k.id, &k.lam])).sign(k.m * k.l + k.l);
    let b = k.t(&[&k.id, p]).after(&k.t(&[&k.lam, &k.id])).sign(k.m * k.l);
    k.eq(name, &[k.mu.clone(), a, b])
}

/// `τc = (-1)^{|λ|} c`
pub fn check_copairing_symmetry(d: &BialgebraData) -> CheckReport {
    let name = "copairing symmetry";
    let k = d.kit();
    let Some(c) = &k.c else { return CheckReport::skipped(name, NO_UNIT) };
    k.eq(name, &[k.tau.after(c), c.sign(k.l)])
}

/// `pτ = (-1)^{|μ|} p`
pub fn check_pairing_symmetry(d: &BialgebraData) -> CheckReport {
    let name = "pairing symmetry";
    let k = d.kit();
    let Some(p) = &k.p else { return CheckReport::skipped(name, NO_COUNIT) };
    k.eq(name, &[p.after(&k.tau), p.sign(k.m)])
}

/// All defining relations of the given coFrobenius flavor.
pub fn check_cofrobenius(d: &BialgebraData, flavor: Flavor) -> Vec<CheckReport> {
    let unital = matches!(flavor, Flavor::Unital | Flavor::Biunital);
    let counital = matches!(flavor, Flavor::Counital | Flavor::Biunital);
    let mut out = Vec::new();
    if unital {
        out.push(check_unit(d));
    }
    if counital {
        out.push(check_counit(d));
    }
    out.push(check_associativity(d));
    out.push(check_coassociativity(d));
    if unital {
        out.push(check_unital_cofrobenius_relation(d));
        out.push(check_copairing_symmetry(d));
    }
    if counital {
        out.push(check_counital_cofrobenius_relation(d));
        out.push(check_pairing_symmetry(d));
    }
    out
}

/// The identities that follow from the coFrobenius relations of a flavor.
pub fn check_derived_identities(d: &BialgebraData, flavor: Flavor) -> Vec<CheckReport> {
    let k = d.kit();
    let (m, l) = (k.m, k.l);
    let unital = matches!(flavor, Flavor::Unital | Flavor::Biunital);
    let counital = matches!(flavor, Flavor::Counital | Flavor::Biunital);
    let mut out = Vec::new();
    let one_mu = k.t(&[&k.id, &k.mu]).after(&k.t(&[&k.lam, &k.id]));
    let mu_one = k.t(&[&k.mu, &k.id]).after(&k.t(&[&k.id, &k.lam]));
    let lm = k.lam.after(&k.mu).sign(l * m);
    if unital {
        match &k.c {
            None => out.push(CheckReport::skipped("c⊗c identity", NO_UNIT)),
            Some(c) => {
                let cc = k.t(&[&k.id, &k.mu, &k.id]).after(&k.t(&[c, c]));
                let a = k.t(&[&k.lam, &k.id]).after(c);
                let b = k.t(&[&k.id, &k.lam]).after(c).sign(l);
                out.push(k.eq("(1⊗μ⊗1)(c⊗c) = (λ⊗1)c = (-1)^|λ|(1⊗λ)c", &[cc, a, b]));
                let mm = k.t(&[&k.mu, &k.mu]).after(&k.t(&[&k.id, c, &k.id]));
                out.push(k.eq(
                    "(1⊗μ)(λ⊗1) = (μ⊗1)(1⊗λ) = (μ⊗μ)(1⊗c⊗1) = (-1)^|λ||μ| λμ",
                    &[one_mu.clone(), mu_one.clone(), mm, lm.clone()],
                ));
            }
        }
    }
    if counital {
        match &k.p {
            None => out.push(CheckReport::skipped("p⊗p identity", NO_COUNIT)),
            Some(p) => {
                let pdeg = p.degree();
                let pp = k.t(&[p, p]).after(&k.t(&[&k.id, &k.lam, &k.id])).sign(pdeg * m);
                let a = p.after(&k.t(&[&k.mu, &k.id]));
                let b = p.after(&k.t(&[&k.id, &k.mu])).sign(m);
                out.push(k.eq("(-1)^|p||μ|(p⊗p)(1⊗λ⊗1) = p(μ⊗1) = (-1)^|μ| p(1⊗μ)", &[pp, a, b]));
                let pl = k.t(&[&k.id, p, &k.id]).after(&k.t(&[&k.lam, &k.lam])).sign(l * m);
                out.push(k.eq(
                    "(μ⊗1)(1⊗λ) = (1⊗μ)(λ⊗1) = (-1)^|λ||μ|(1⊗p⊗1)(λ⊗λ) = (-1)^|λ||μ| λμ",
                    &[mu_one, one_mu, pl, lm],
                ));
            }
        }
    }
    if flavor == Flavor::Biunital {
        let names = [
            "p(μ⊗1) = (-1)^|μ| p(1⊗μ)",
            "(λ⊗1)c = (-1)^|λ|(1⊗λ)c",
            "(-1)^|λ| ε = p(1⊗η) = (-1)^|μ| p(η⊗1)",
            "(-1)^(|λ||μ|+|μ|) η = (ε⊗1)c = (-1)^|λ|(1⊗ε)c",
            "(1⊗p)(c⊗1) = (-1)^(|λ|+|μ|)(p⊗1)(1⊗c) = 1",
        ];
        match (&k.c, &k.p, &k.eta, &k.eps) {
            (Some(c), Some(p), Some(eta), Some(eps)) => {
                out.push(k.eq(
                    names[0],
                    &[p.after(&k.t(&[&k.mu, &k.id])), p.after(&k.t(&[&k.id, &k.mu])).sign(m)],
                ));
                out.push(k.eq(
                    names[1],
                    &[k.t(&[&k.lam, &k.id]).after(c), k.t(&[&k.id, &k.lam]).after(c).sign(l)],
                ));
                out.push(k.eq(
                    names[2],
                    &[eps.sign(l), p.after(&k.t(&[&k.id, eta])), p.after(&k.t(&[eta, &k.id])).sign(m)],
                ));
                out.push(k.eq(
                    names[3],
                    &[eta.sign(l * m + m), k.t(&[eps, &k.id]).after(c), k.t(&[&k.id, eps]).after(c).sign(l)],
                ));
                out.push(k.eq(
                    names[4],
                    &[
                        k.t(&[&k.id, p]).after(&k.t(&[c, &k.id])),
                        k.t(&[p, &k.id]).after(&k.t(&[&k.id, c])).sign(l + m),
                        k.id.clone(),
                    ],
                ));
            }
            _ => {
                for n in names {
                    out.push(CheckReport::skipped(n, "needs both unit and counit"));
                }
            }
        }
    }
    out
}

/// `μλ = 0`, with the flavor-specific equivalent forms as cross-checks.
pub fn check_involutive(d: &BialgebraData) -> Vec<CheckReport> {
    let k = d.kit();
    let ml = k.mu.after(&k.lam);
    let main = check_zero("μλ = 0", &ml, k.window);
    let mut out = vec![main.clone()];
    let unital_ok = crate::check::all_acceptable(&check_cofrobenius(d, Flavor::Unital));
    let counital_ok = crate::check::all_acceptable(&check_cofrobenius(d, Flavor::Counital));
    if let Some(c) = &k.c {
        let mc = check_zero("μc = 0", &k.mu.after(c), k.window).informational();
        if unital_ok {
            let agree = mc.passed() == main.passed();
            out.push(CheckReport::decided("μλ = 0 ⇔ μc = 0", agree, None));
        }
        out.push(mc);
    }
    if let Some(p) = &k.p {
        let pl = check_zero("pλ = 0", &p.after(&k.lam), k.window).informational();
        if counital_ok {
            let agree = pl.passed() == main.passed();
            out.push(CheckReport::decided("μλ = 0 ⇔ pλ = 0", agree, None));
        }
        out.push(pl);
    }
    out
}

/// Block sum of two structures with matching degrees and (co)unit availability.
pub fn direct_sum(d1: &BialgebraData, d2: &BialgebraData) -> Result<BialgebraData, Error> {
    if d1.field != d2.field {
        return Err(Error::Input(String::from("summands over different fields")));
    }
    if d1.eta.is_some() != d2.eta.is_some() || d1.eps.is_some() != d2.eps.is_some() {
        return Err(Error::Input(String::from("summands have different structure flavors")));
    }
    let (m1, m2) = (&d1.module, &d2.module);
    let clash = m1.basis().any(|(l, _, _)| m2.index_of(l).is_some());
    let label = |k: usize, l: &str| if clash { format!("{}.{}", k, l) } else { String::from(l) };
    let mut basis = Vec::new();
    for (l, deg, w) in m1.basis() {
        basis.push((label(1, l), deg, w));
    }
    for (l, deg, w) in m2.basis() {
        basis.push((label(2, l), deg, w));
    }
    let module = GradedModule::with_weights(basis)?;
    let field = d1.field;
    let off = m1.dim() as u32;
    let embed = |t: &[u32], k: usize| -> Vec<u32> {
        t.iter().map(|&i| if k == 1 { i } else { i + off }).collect()
    };
    let sum_map = |f1: &GradedMap, f2: &GradedMap, src: Shape, dst: Shape| -> Result<GradedMap, Error> {
        let degree = if f1.is_zero() { f2.degree } else { f1.degree };
        if !f1.is_zero() && !f2.is_zero() && f1.degree != f2.degree {
            return Err(Error::Degree(String::from("summands have operations of different degrees")));
        }
        let mut out = GradedMap::zero(src, dst, degree);
        for (k, f) in [(1, f1), (2, f2)] {
            for (s, col) in f.columns() {
                let mut img = Terms::new();
                for (t, c) in col {
                    add_term(&mut img, embed(t, k), c.clone());
                }
                out.set_image(embed(s, k), img)?;
            }
        }
        Ok(out)
    };
    let sh = |k| Shape::power(field, &module, k);
    let mu = sum_map(&d1.mu, &d2.mu, sh(2), sh(1))?;
    let lambda = sum_map(&d1.lambda, &d2.lambda, sh(1), sh(2))?;
    let eta = match (&d1.eta, &d2.eta) {
        (Some(e1), Some(e2)) => {
            let mut terms = Terms::new();
            for (k, e) in [(1, e1), (2, e2)] {
                for (t, c) in &e.terms {
                    add_term(&mut terms, embed(t, k), c.clone());
                }
            }
            Some(Element { shape: sh(1), terms })
        }
        _ => None,
    };
    let eps = match (&d1.eps, &d2.eps) {
        (Some(e1), Some(e2)) => Some(sum_map(e1, e2, sh(1), Shape::ground(field))?),
        _ => None,
    };
    let window = match (d1.window, d2.window) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Input(String::from("summands use different windows")));
        }
        (a, b) => a.or(b),
    };
    Ok(BialgebraData::new(module, field, mu, lambda, eta, eps)?.with_window(window))
}
