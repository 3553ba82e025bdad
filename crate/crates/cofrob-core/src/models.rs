//! Built-in structures: cohomology of closed manifolds and submanifolds, and
//! truncated Laurent models of loop space homology of odd spheres.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::Window;
use crate::duality::complete_from_pairing;
use crate::error::Error;
use crate::module::{map_equal, Element, GradedMap, GradedModule, Shape, Terms};
use crate::op::Op;
use crate::scalar::Field;
use crate::structures::{check_cocommutativity, check_commutativity, direct_sum, BialgebraData};
use crate::tqft::{derive_cozipper, OpenClosedTQFT};

/// `a ∪ b = Σ c·x`, as `(a, b, [(x, c)])`.
pub type CupEntry = (String, String, Vec<(String, i64)>);

/// Cohomology ring data of a closed oriented `n`-manifold.
///
/// `H^i` sits in module degree `i`. Products of basis elements not listed in
/// `cup` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupData {
    pub n: i64,
    pub field: Field,
    pub basis: Vec<(String, i64)>,
    pub unit: String,
    pub cup: Vec<CupEntry>,
    /// `∫_M` on top-degree basis elements.
    pub integral: Vec<(String, i64)>,
}

impl CupData {
    fn module(&self) -> Result<alloc::sync::Arc<GradedModule>, Error> {
        GradedModule::new(self.basis.clone())
    }
}

fn s(x: &str) -> String {
    String::from(x)
}

fn cup_entry(a: &str, b: &str, terms: &[(&str, i64)]) -> (String, String, Vec<(String, i64)>) {
    (s(a), s(b), terms.iter().map(|(l, c)| (s(l), *c)).collect())
}

/// `H^*(S^n)` with basis `1`, `ω`.
pub fn sphere_cup(n: i64) -> CupData {
    CupData {
        n,
        field: Field::Q,
        basis: vec![(s("1"), 0), (s("ω"), n)],
        unit: s("1"),
        cup: vec![cup_entry("1", "1", &[("1", 1)]), cup_entry("1", "ω", &[("ω", 1)]), cup_entry("ω", "1", &[("ω", 1)])],
        integral: vec![(s("ω"), 1)],
    }
}

/// `H^*(T²)` with basis `1, a, b, ab` and `a∪b = ab = -b∪a`.
pub fn torus_cup() -> CupData {
    let mut cup = unit_products(&["1", "a", "b", "ab"]);
    cup.push(cup_entry("a", "b", &[("ab", 1)]));
    cup.push(cup_entry("b", "a", &[("ab", -1)]));
    CupData {
        n: 2,
        field: Field::Q,
        basis: vec![(s("1"), 0), (s("a"), 1), (s("b"), 1), (s("ab"), 2)],
        unit: s("1"),
        cup,
        integral: vec![(s("ab"), 1)],
    }
}

/// `H^*(S²×S²)` with basis `1, x, y, xy` and `x∪y = y∪x = xy`.
pub fn s2xs2_cup() -> CupData {
    let mut cup = unit_products(&["1", "x", "y", "xy"]);
    cup.push(cup_entry("x", "y", &[("xy", 1)]));
    cup.push(cup_entry("y", "x", &[("xy", 1)]));
    CupData {
        n: 4,
        field: Field::Q,
        basis: vec![(s("1"), 0), (s("x"), 2), (s("y"), 2), (s("xy"), 4)],
        unit: s("1"),
        cup,
        integral: vec![(s("xy"), 1)],
    }
}

fn unit_products(labels: &[&str]) -> Vec<CupEntry> {
    let mut out = vec![cup_entry("1", "1", &[("1", 1)])];
    for l in &labels[1..] {
        out.push(cup_entry("1", l, &[(l, 1)]));
        out.push(cup_entry(l, "1", &[(l, 1)]));
    }
    out
}

/// The biunital coFrobenius structure on `H^*(M)`: cup product, unit `1`, counit `∫_M`,
/// coproduct from the inverse of the intersection pairing.
pub fn manifold_from_cup(data: &CupData) -> Result<BialgebraData, Error> {
    let module = data.module()?;
    let field = data.field;
    let sh = |k| Shape::power(field, &module, k);
    let mut mu = GradedMap::zero(sh(2), sh(1), 0);
    for (a, b, terms) in &data.cup {
        for (c, x) in terms {
            mu.add_labels(&[a, b], &[c], *x)?;
        }
    }
    let mut eps = GradedMap::zero(sh(1), Shape::ground(field), -data.n);
    for (a, x) in &data.integral {
        eps.add_labels(&[a], &[], *x)?;
    }
    let eta = Element::from_labels(sh(1), &[(&[data.unit.as_str()], 1)])?;
    let d = complete_from_pairing(module, field, mu, eta, eps).map_err(|e| match e {
        Error::NotPerfect(m) => Error::NotPerfect(format!("input is not a Poincaré-duality algebra ({})", m)),
        other => other,
    })?;
    for r in [check_commutativity(&d), check_cocommutativity(&d)] {
        if !r.passed() {
            return Err(Error::Relation(r.name));
        }
    }
    Ok(d)
}

pub fn sphere_cohomology(n: i64) -> Result<BialgebraData, Error> {
    if n < 1 {
        return Err(Error::Input(format!("sphere dimension must be positive, got {}", n)));
    }
    manifold_from_cup(&sphere_cup(n))
}

pub fn torus() -> BialgebraData {
    manifold_from_cup(&torus_cup()).expect("the torus is a Poincaré-duality algebra")
}

pub fn s2xs2() -> BialgebraData {
    manifold_from_cup(&s2xs2_cup()).expect("S²×S² is a Poincaré-duality algebra")
}

/// The open-closed structure of a submanifold `Z ⊂ M`: zipper the restriction map,
/// cozipper derived from the pairing form of the duality relation.
///
/// `restriction` lists `incl^*` on the basis of `H^*(M)`; unlisted elements restrict to zero.
pub fn submanifold_tqft(
    m: &CupData,
    z: &CupData,
    restriction: &[(&str, &[(&str, i64)])],
) -> Result<OpenClosedTQFT, Error> {
    let closed = manifold_from_cup(m)?;
    let open = manifold_from_cup(z)?;
    let mut zeta = GradedMap::zero(closed.shape(1), open.shape(1), 0);
    for (src, terms) in restriction {
        for (dst, c) in terms.iter() {
            zeta.add_labels(&[src], &[dst], *c)?;
        }
    }
    let zop = Op::map(zeta.clone());
    let ring_map = Op::map(open.mu.clone()).after(&zop.tensor(&zop));
    let direct = zop.after(&Op::map(closed.mu.clone()));
    let unit_ok = zop.apply(closed.eta.as_ref().expect("unit")) == *open.eta.as_ref().expect("unit");
    if !map_equal(&ring_map.materialize(), &direct.materialize()) || !unit_ok {
        return Err(Error::Input(String::from("restriction is not a unital ring map")));
    }
    let cozipper = derive_cozipper(&closed, &open, &zeta)?;
    OpenClosedTQFT::new(closed, open, zeta, cozipper)
}

/// Equator `S¹ ⊂ S²`.
pub fn equator_tqft() -> OpenClosedTQFT {
    let mut z = sphere_cup(1);
    z.basis[1].0 = s("θ");
    z.cup = vec![cup_entry("1", "1", &[("1", 1)]), cup_entry("1", "θ", &[("θ", 1)]), cup_entry("θ", "1", &[("θ", 1)])];
    z.integral = vec![(s("θ"), 1)];
    submanifold_tqft(&sphere_cup(2), &z, &[("1", &[("1", 1)])]).expect("equator pair")
}

fn s2_factor() -> CupData {
    sphere_cup(2)
}

/// Diagonal `S² ⊂ S²×S²`.
pub fn diagonal_tqft() -> OpenClosedTQFT {
    submanifold_tqft(&s2xs2_cup(), &s2_factor(), &[("1", &[("1", 1)]), ("x", &[("ω", 1)]), ("y", &[("ω", 1)])])
        .expect("diagonal pair")
}

/// `S²×{pt} ⊂ S²×S²`.
pub fn slice_tqft() -> OpenClosedTQFT {
    submanifold_tqft(&s2xs2_cup(), &s2_factor(), &[("1", &[("1", 1)]), ("x", &[("ω", 1)])]).expect("slice pair")
}

/// Exponent ranges and degrees of an exterior Laurent model `Λ[A, U^{±1}]` or `Λ[U^{±1}]`.
#[derive(Clone, Debug)]
struct Laurent {
    u: String,
    a: String,
    with_a: bool,
    lo: i64,
    hi: i64,
    du: i64,
    da: i64,
    /// Printed exponent is `orientation * k` for internal exponent `k`.
    orientation: i64,
}

impl Laurent {
    fn label(&self, a: bool, k: i64) -> String {
        let e = self.orientation * k;
        if a {
            format!("{}{}^{}", self.a, self.u, e)
        } else {
            format!("{}^{}", self.u, e)
        }
    }

    fn index(&self, a: bool, k: i64) -> Option<u32> {
        if k < self.lo || k > self.hi || (a && !self.with_a) {
            return None;
        }
        let step = if self.with_a { 2 } else { 1 };
        Some(((k - self.lo) * step + if a { 1 } else { 0 }) as u32)
    }

    fn module(&self) -> alloc::sync::Arc<GradedModule> {
        let mut basis = Vec::new();
        for k in self.lo..=self.hi {
            let w = k.unsigned_abs() as u32;
            basis.push((self.label(false, k), k * self.du, w));
            if self.with_a {
                basis.push((self.label(true, k), k * self.du + self.da, w));
            }
        }
        GradedModule::with_weights(basis).expect("distinct labels")
    }

    fn letters(&self) -> Vec<bool> {
        if self.with_a {
            vec![false, true]
        } else {
            vec![false]
        }
    }

    fn product(&self, field: Field, module: &alloc::sync::Arc<GradedModule>) -> GradedMap {
        let mut mu = GradedMap::zero(Shape::power(field, module, 2), Shape::power(field, module, 1), 0);
        for k1 in self.lo..=self.hi {
            for k2 in self.lo..=self.hi {
                for &a1 in &self.letters() {
                    for &a2 in &self.letters() {
                        if a1 && a2 {
                            continue;
                        }
                        if let Some(t) = self.index(a1 || a2, k1 + k2) {
                            let (x, y) = (self.index(a1, k1).unwrap(), self.index(a2, k2).unwrap());
                            mu.add_entry(vec![x, y], vec![t], field.one()).expect("degree 0");
                        }
                    }
                }
            }
        }
        mu
    }

    /// `λ(AU^k) = Σ c AU^i⊗AU^j` and `λ(U^k) = Σ c (AU^i⊗U^j - U^i⊗AU^j)`, or
    /// `λ(U^k) = Σ c U^i⊗U^j` without `A`, over the `(i, j, c)` listed by `terms(k)`.
    fn coproduct(
        &self,
        field: Field,
        module: &alloc::sync::Arc<GradedModule>,
        degree: i64,
        terms: impl Fn(i64) -> Vec<(i64, i64, i64)>,
    ) -> GradedMap {
        let mut lam = GradedMap::zero(Shape::power(field, module, 1), Shape::power(field, module, 2), degree);
        for k in self.lo..=self.hi {
            for (i, j, c) in terms(k) {
                let mut put = |src: Option<u32>, x: Option<u32>, y: Option<u32>, c: i64| {
                    if let (Some(s0), Some(x), Some(y)) = (src, x, y) {
                        lam.add_entry(vec![s0], vec![x, y], field.int(c)).expect("homogeneous coproduct");
                    }
                };
                if self.with_a {
                    put(self.index(true, k), self.index(true, i), self.index(true, j), c);
                    put(self.index(false, k), self.index(true, i), self.index(false, j), c);
                    put(self.index(false, k), self.index(false, i), self.index(true, j), -c);
                } else {
                    put(self.index(false, k), self.index(false, i), self.index(false, j), c);
                }
            }
        }
        lam
    }

    fn unit(&self, field: Field, module: &alloc::sync::Arc<GradedModule>) -> Element {
        Element::basis(Shape::power(field, module, 1), vec![self.index(false, 0).expect("U^0 in window")])
    }

    fn counit_at(&self, field: Field, module: &alloc::sync::Arc<GradedModule>, a: bool, k: i64) -> GradedMap {
        let i = self.index(a, k).expect("counit support in window");
        let mut eps = GradedMap::zero(Shape::power(field, module, 1), Shape::ground(field), -module.degree(i));
        eps.add_entry(vec![i], vec![], field.one()).expect("degree fits");
        eps
    }
}

/// All `(i, k-1-i, 1)` with both exponents in `[lo, hi]`.
fn shifted_sum(lo: i64, hi: i64, shift: i64) -> impl Fn(i64) -> Vec<(i64, i64, i64)> {
    move |k| (lo..=hi).map(|i| (i, k - shift - i, 1)).filter(|&(_, j, _)| j >= lo && j <= hi).collect()
}

fn require_odd(n: i64) -> Result<(), Error> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Input(format!("loop models need an odd n ≥ 3, got {}", n)));
    }
    Ok(())
}

fn require_window(bound: i64) -> Result<(), Error> {
    if bound < 3 {
        return Err(Error::Input(format!("window bound must be at least 3, got {}", bound)));
    }
    Ok(())
}

fn free_loop(n: i64, lo: i64, hi: i64) -> Laurent {
    Laurent { u: s("U"), a: s("A"), with_a: true, lo, hi, du: n - 1, da: -n, orientation: 1 }
}

fn based_loop(n: i64, lo: i64, hi: i64) -> Laurent {
    Laurent { u: s("U"), a: s("A"), with_a: false, lo, hi, du: n - 1, da: 0, orientation: 1 }
}

/// Rabinowitz loop homology of `S^n`, `n` odd: `Λ[A, U, U⁻¹]`, `|U| = n-1`, `|A| = -n`,
/// exponents in `[-N, N]`.
pub fn rabinowitz_loop_sphere(n: i64, bound: i64) -> Result<BialgebraData, Error> {
    require_odd(n)?;
    require_window(bound)?;
    let l = free_loop(n, -bound, bound);
    let field = Field::Q;
    let module = l.module();
    let mu = l.product(field, &module);
    let lam = l.coproduct(field, &module, 1 - 2 * n, shifted_sum(-bound, bound, 1));
    let eta = l.unit(field, &module);
    let eps = l.counit_at(field, &module, true, -1);
    Ok(BialgebraData::new(module, field, mu, lam, Some(eta), Some(eps))?.with_window(Some(Window::new(bound as u32))))
}

/// Loop homology of `S^n`, `n` odd: `Λ[A, U]` with exponents in `[0, N]`; no counit.
pub fn loop_sphere(n: i64, bound: i64) -> Result<BialgebraData, Error> {
    require_odd(n)?;
    require_window(bound)?;
    let l = free_loop(n, 0, bound);
    let field = Field::Q;
    let module = l.module();
    let mu = l.product(field, &module);
    let lam = l.coproduct(field, &module, 1 - 2 * n, shifted_sum(0, bound, 1));
    let eta = l.unit(field, &module);
    Ok(BialgebraData::new(module, field, mu, lam, Some(eta), None)?.with_window(Some(Window::new(bound as u32))))
}

/// Based Rabinowitz loop homology of `S^n`, `n` odd: `Λ[U, U⁻¹]`, `|U| = n-1`.
pub fn based_rabinowitz_loop_sphere(n: i64, bound: i64) -> Result<BialgebraData, Error> {
    require_odd(n)?;
    require_window(bound)?;
    let l = based_loop(n, -bound, bound);
    let field = Field::Q;
    let module = l.module();
    let mu = l.product(field, &module);
    let lam = l.coproduct(field, &module, 1 - n, shifted_sum(-bound, bound, 1));
    let eta = l.unit(field, &module);
    let eps = l.counit_at(field, &module, false, -1);
    Ok(BialgebraData::new(module, field, mu, lam, Some(eta), Some(eps))?.with_window(Some(Window::new(bound as u32))))
}

/// Based loop homology of `S^n`, `n` odd: `Λ[U]` with exponents in `[0, N]`; no counit.
pub fn based_loop_sphere(n: i64, bound: i64) -> Result<BialgebraData, Error> {
    require_odd(n)?;
    require_window(bound)?;
    let l = based_loop(n, 0, bound);
    let field = Field::Q;
    let module = l.module();
    let mu = l.product(field, &module);
    let lam = l.coproduct(field, &module, 1 - n, shifted_sum(0, bound, 1));
    let eta = l.unit(field, &module);
    Ok(BialgebraData::new(module, field, mu, lam, Some(eta), None)?.with_window(Some(Window::new(bound as u32))))
}

/// Choice of nowhere vanishing vector field on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorField {
    Plus,
    Minus,
}

/// Which circle model to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleFlavor {
    /// Loop homology `Λ[A, U, U⁻¹]` with `λ±`.
    Loop,
    /// Based loop homology `Λ[U, U⁻¹]` with `λ±`.
    BasedLoop,
    /// Rabinowitz loop homology, the sum of the `+` and `-` components.
    Rabinowitz,
    /// Based Rabinowitz loop homology, the sum of the `+` and `-` components.
    BasedRabinowitz,
}

/// The piecewise `λ±` index sets for the circle.
fn circle_terms(v: VectorField) -> impl Fn(i64) -> Vec<(i64, i64, i64)> {
    move |k| {
        let (range, c): (Vec<i64>, i64) = match v {
            VectorField::Plus if k >= 0 => ((0..=k).collect(), 1),
            VectorField::Plus => ((k + 1..=-1).collect(), -1),
            VectorField::Minus if k > 0 => ((1..k).collect(), 1),
            VectorField::Minus => ((k..=0).collect(), -1),
        };
        range.into_iter().map(|i| (i, k - i, c)).collect()
    }
}

fn circle_component(bound: i64, with_a: bool, sign: &str, orientation: i64) -> Result<BialgebraData, Error> {
    let l = Laurent {
        u: format!("U{}", sign),
        a: format!("A{}", sign),
        with_a,
        lo: -bound,
        hi: bound,
        du: 0,
        da: -1,
        orientation,
    };
    let field = Field::Q;
    let module = l.module();
    let mu = l.product(field, &module);
    let degree = if with_a { -1 } else { 0 };
    let lam = l.coproduct(field, &module, degree, shifted_sum(-bound, bound, 0));
    let eta = l.unit(field, &module);
    let eps = l.counit_at(field, &module, with_a, 0);
    Ok(BialgebraData::new(module, field, mu, lam, Some(eta), Some(eps))?.with_window(Some(Window::new(bound as u32))))
}

/// One component of the circle's Rabinowitz models (`+`: `U₊`, `-`: `U₋` with reversed exponents).
pub fn circle_rabinowitz_component(bound: i64, which: VectorField, based: bool) -> Result<BialgebraData, Error> {
    require_window(bound)?;
    match which {
        VectorField::Plus => circle_component(bound, !based, "+", 1),
        VectorField::Minus => circle_component(bound, !based, "-", -1),
    }
}

/// Circle models with exponents in `[-N, N]`; `which` selects `λ±` for the ordinary flavors.
pub fn circle_models(bound: i64, which: VectorField, flavor: CircleFlavor) -> Result<BialgebraData, Error> {
    require_window(bound)?;
    let field = Field::Q;
    match flavor {
        CircleFlavor::Loop | CircleFlavor::BasedLoop => {
            let with_a = flavor == CircleFlavor::Loop;
            let l = Laurent { u: s("U"), a: s("A"), with_a, lo: -bound, hi: bound, du: 0, da: -1, orientation: 1 };
            let module = l.module();
            let mu = l.product(field, &module);
            let degree = if with_a { -1 } else { 0 };
            let lam = l.coproduct(field, &module, degree, circle_terms(which));
            let eta = l.unit(field, &module);
            Ok(BialgebraData::new(module, field, mu, lam, Some(eta), None)?
                .with_window(Some(Window::new(bound as u32))))
        }
        CircleFlavor::Rabinowitz | CircleFlavor::BasedRabinowitz => {
            let based = flavor == CircleFlavor::BasedRabinowitz;
            direct_sum(
                &circle_rabinowitz_component(bound, VectorField::Plus, based)?,
                &circle_rabinowitz_component(bound, VectorField::Minus, based)?,
            )
        }
    }
}

/// `ζ(AU^k) = 0`, `ζ(U^k) = U^k` and `ζ*(U^k) = AU^k` between Laurent models with equal windows.
fn loop_zippers(closed: &BialgebraData, open: &BialgebraData, cozipper_degree: i64) -> Result<(GradedMap, GradedMap), Error> {
    let mut zeta = GradedMap::zero(closed.shape(1), open.shape(1), 0);
    let mut zeta_star = GradedMap::zero(open.shape(1), closed.shape(1), cozipper_degree);
    for (label, _, _) in open.module.basis() {
        // open labels look like U^k or U±^k; the closed partner of U^k is A U^k
        let (stem, exp) = label.split_once('^').expect("Laurent label");
        let a_label = format!("{}{}^{}", stem.replacen('U', "A", 1), stem, exp);
        zeta.add_labels(&[label], &[label], 1)?;
        zeta_star.add_labels(&[label], &[&a_label], 1)?;
    }
    Ok((zeta, zeta_star))
}

/// `(C, A) = (Rabinowitz loop homology, based Rabinowitz loop homology)` of `S^n`.
///
/// `n = 1` gives the two-component circle version.
pub fn loop_tqft_sphere(n: i64, bound: i64) -> Result<OpenClosedTQFT, Error> {
    let (closed, open) = if n == 1 {
        (
            circle_models(bound, VectorField::Plus, CircleFlavor::Rabinowitz)?,
            circle_models(bound, VectorField::Plus, CircleFlavor::BasedRabinowitz)?,
        )
    } else {
        (rabinowitz_loop_sphere(n, bound)?, based_rabinowitz_loop_sphere(n, bound)?)
    };
    let (zeta, zeta_star) = loop_zippers(&closed, &open, closed.lambda_degree() - open.lambda_degree())?;
    OpenClosedTQFT::new(closed, open, zeta, zeta_star)
}

/// Whether some `ε` satisfies both counit equations on every window-valid input.
///
/// Solves the linear system for `ε`, which has degree `-|λ|` and so lives on `A_{|λ|}`.
pub fn counit_exists(d: &BialgebraData) -> bool {
    let field = d.field;
    let m = &d.module;
    let l = d.lambda_degree();
    let unknowns: Vec<u32> = (0..m.dim() as u32).filter(|&i| m.degree(i) == l).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..m.dim() as u32 {
        if let Some(w) = d.window {
            if m.weight(x) + w.slack > w.bound {
                continue;
            }
        }
        let img: Terms = d.lambda.image(&[x]).cloned().unwrap_or_default();
        for y in 0..m.dim() as u32 {
            // (ε⊗1)λ(x) = x and (-1)^{|λ|}(1⊗ε)λ(x) = x, coefficient of y
            let left: Vec<_> = unknowns
                .iter()
                .map(|&a| img.get(&vec![a, y]).cloned().unwrap_or_else(|| field.zero()))
                .collect();
            let right: Vec<_> = unknowns
                .iter()
                .map(|&a| {
                    let c = img.get(&vec![y, a]).cloned().unwrap_or_else(|| field.zero());
                    c.signed(l + l * m.degree(y))
                })
                .collect();
            let target = if x == y { field.one() } else { field.zero() };
            rows.push(left);
            rhs.push(target.clone());
            rows.push(right);
            rhs.push(target);
        }
    }
    if unknowns.is_empty() {
        return rhs.iter().all(|b| b.is_zero());
    }
    crate::linalg::solve(field, &rows, &rhs).is_some()
}
