//! Koszul-signed tensor calculus: twists, permutations, duals, ι and shifts.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::module::{GradedMap, GradedModule, Shape, Terms};
use crate::op::Op;
use crate::scalar::Field;

/// `A ⊗ B` as a single module with basis labels `a⊗b`, ordered lexicographically.
pub fn tensor_modules(a: &GradedModule, b: &GradedModule) -> Arc<GradedModule> {
    let mut basis = Vec::with_capacity(a.dim() * b.dim());
    for (la, da, wa) in a.basis() {
        for (lb, db, wb) in b.basis() {
            basis.push((format!("{}⊗{}", la, lb), da + db, wa + wb));
        }
    }
    GradedModule::with_weights(basis).expect("pair labels are distinct")
}

/// The degree-zero identification `A ⊗ B → (A ⊗ B)` of a two-factor shape with its flattening.
pub fn flatten(field: Field, a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> GradedMap {
    let flat = tensor_modules(a, b);
    let src = Shape::new(field, alloc::vec![a.clone(), b.clone()]);
    let dst = Shape::new(field, alloc::vec![flat]);
    let mut m = GradedMap::zero(src, dst, 0);
    for i in 0..a.dim() as u32 {
        for j in 0..b.dim() as u32 {
            let k = i * b.dim() as u32 + j;
            m.add_entry(alloc::vec![i, j], alloc::vec![k], field.one()).expect("degree zero");
        }
    }
    m
}

/// `φ ⊗ ψ` with `(φ⊗ψ)(a⊗b) = (-1)^{|ψ||a|} φ(a)⊗ψ(b)`.
pub fn tensor_maps(f: &GradedMap, g: &GradedMap) -> GradedMap {
    Op::map(f.clone()).tensor(&Op::map(g.clone())).materialize()
}

/// The twist `τ(a⊗b) = (-1)^{|a||b|} b⊗a` from `A ⊗ B` to `B ⊗ A`.
pub fn twist(field: Field, a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> GradedMap {
    permute(&Permutation::transposition(2, 0, 1), &Shape::new(field, alloc::vec![a.clone(), b.clone()]))
        .expect("arity two")
}

/// A permutation of `{0, …, n-1}`; `images[i]` is where factor `i` is sent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation, Error> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Input(format!("{:?} is not a permutation", images)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    /// Swaps positions `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    /// The cycle `1 ↦ 2 ↦ … ↦ n ↦ 1` (zero-based: `i ↦ i+1 mod n`).
    pub fn cycle(n: usize) -> Permutation {
        Permutation { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, acting as `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }
}

/// The action `ρ(a_1⊗…⊗a_n) = ε(ρ,a) a_{ρ⁻¹(1)}⊗…⊗a_{ρ⁻¹(n)}`.
///
/// The sign counts inversions among odd-degree factors.
pub fn permute(rho: &Permutation, shape: &Shape) -> Result<GradedMap, Error> {
    let n = rho.arity();
    if n != shape.arity() {
        return Err(Error::Shape(format!(
            "permutation of {} letters applied to {} tensor factors",
            n,
            shape.arity()
        )));
    }
    let mut factors = shape.factors.clone();
    for i in 0..n {
        factors[rho.image(i)] = shape.factors[i].clone();
    }
    let dst = Shape::new(shape.field, factors);
    let mut m = GradedMap::zero(shape.clone(), dst, 0);
    for t in shape.tuples() {
        let mut u = t.clone();
        let mut odd_inversions = 0i64;
        for i in 0..n {
            u[rho.image(i)] = t[i];
            for k in i + 1..n {
                if rho.image(i) > rho.image(k) {
                    let di = shape.factors[i].degree(t[i]);
                    let dk = shape.factors[k].degree(t[k]);
                    odd_inversions += di * dk;
                }
            }
        }
        m.add_entry(t, u, shape.field.sign(odd_inversions))?;
    }
    Ok(m)
}

/// `A∨` with basis `a∨` in degree `-|a|`.
pub fn dual_module(a: &GradedModule) -> Arc<GradedModule> {
    a.relabel(|l| format!("{}∨", l), |d| -d)
}

/// Factorwise dual of a tensor power.
pub fn dual_shape(s: &Shape) -> Shape {
    Shape::new(s.field, s.factors.iter().map(|m| dual_module(m)).collect())
}

/// Koszul sign `(-1)^{Σ_{i<j}|t_i||t_j|}` relating `ι(t_1∨⊗…⊗t_n∨)` and `(t_1⊗…⊗t_n)∨`.
fn iota_sign(shape: &Shape, t: &[u32]) -> i64 {
    let mut e = 0;
    let degs: Vec<i64> = t.iter().zip(&shape.factors).map(|(&i, m)| m.degree(i)).collect();
    for i in 0..degs.len() {
        for j in i + 1..degs.len() {
            e += degs[i] * degs[j];
        }
    }
    e
}

/// Dual map `φ∨` routed through ι on both sides.
///
/// For `φ: A_1⊗…⊗A_k → B_1⊗…⊗B_l` this is `ι⁻¹ ∘ φ∨ ∘ ι : B_1∨⊗…⊗B_l∨ → A_1∨⊗…⊗A_k∨`,
/// which for `k = l = 1` is the plain dual `⟨φ∨g, a⟩ = (-1)^{|g||φ|}⟨g, φ(a)⟩`.
pub fn dual_map(f: &GradedMap) -> GradedMap {
    let src = dual_shape(&f.dst);
    let dst = dual_shape(&f.src);
    let mut out = GradedMap::zero(src, dst, f.degree);
    for (a, col) in f.columns() {
        let ea = iota_sign(&f.src, a);
        for (b, c) in col {
            let eb = iota_sign(&f.dst, b);
            let db = f.dst.tuple_degree(b);
            let coeff = c.clone().signed(ea + eb + db * f.degree);
            out.add_entry(b.clone(), a.clone(), coeff).expect("dual of a homogeneous map");
        }
    }
    out
}

/// `ι: A∨⊗B∨ → (A⊗B)∨`, `ι(f⊗g)(a⊗b) = (-1)^{|g||a|} f(a)g(b)`.
pub fn iota(field: Field, a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> GradedMap {
    let src = Shape::new(field, alloc::vec![dual_module(a), dual_module(b)]);
    let flat = dual_module(&tensor_modules(a, b));
    let dst = Shape::new(field, alloc::vec![flat]);
    let mut m = GradedMap::zero(src, dst, 0);
    for i in 0..a.dim() as u32 {
        for j in 0..b.dim() as u32 {
            let k = i * b.dim() as u32 + j;
            let sign = field.sign(a.degree(i) * b.degree(j));
            m.add_entry(alloc::vec![i, j], alloc::vec![k], sign).expect("degree zero");
        }
    }
    m
}

/// Canonical `A_1⊗…⊗A_n → A_1∨∨⊗…⊗A_n∨∨`, factorwise `a ↦ a∨∨` with `⟨a∨∨, f⟩ = (-1)^{|a|} f(a)`.
pub fn double_dual_iso(shape: &Shape) -> GradedMap {
    let dd = dual_shape(&dual_shape(shape));
    let mut m = GradedMap::zero(shape.clone(), dd, 0);
    for t in shape.tuples() {
        let e = shape.tuple_degree(&t);
        m.add_entry(t.clone(), t, shape.field.sign(e)).expect("degree zero");
    }
    m
}

/// `A[1]` with `A[1]_i = A_{i+1}` and labels `s·a`.
pub fn shift_module(a: &GradedModule) -> Arc<GradedModule> {
    a.relabel(|l| format!("s·{}", l), |d| d - 1)
}

/// The canonical maps `s: A → A[1]` (degree −1) and `ω: A[1] → A` (degree +1).
#[derive(Clone, Debug)]
pub struct ShiftMaps {
    pub s: GradedMap,
    pub omega: GradedMap,
}

pub fn shift_maps(field: Field, a: &Arc<GradedModule>) -> ShiftMaps {
    let shifted = shift_module(a);
    let sa = Shape::new(field, alloc::vec![a.clone()]);
    let sb = Shape::new(field, alloc::vec![shifted]);
    let mut s = GradedMap::zero(sa.clone(), sb.clone(), -1);
    let mut omega = GradedMap::zero(sb, sa, 1);
    for i in 0..a.dim() as u32 {
        s.add_entry(alloc::vec![i], alloc::vec![i], field.one()).expect("degree -1");
        omega.add_entry(alloc::vec![i], alloc::vec![i], field.one()).expect("degree +1");
    }
    ShiftMaps { s, omega }
}

fn tensor_power_op(f: &GradedMap, k: usize) -> Op {
    if k == 0 {
        return Op::id(Shape::ground(f.src.field));
    }
    let parts: Vec<Op> = (0..k).map(|_| Op::map(f.clone())).collect();
    Op::tensor_all(&parts)
}

/// `φ̄ = s^{⊗ℓ} ∘ φ ∘ ω^{⊗k}` for `φ: A^{⊗k} → A^{⊗ℓ}`.
pub fn shift_map(f: &GradedMap) -> Result<GradedMap, Error> {
    let module = single_module(&f.src).or_else(|| single_module(&f.dst)).ok_or_else(|| {
        Error::Shape(String::from("shift needs tensor powers of a single module"))
    })?;
    for m in f.src.factors.iter().chain(&f.dst.factors) {
        if **m != *module {
            return Err(Error::Shape(String::from("shift needs tensor powers of a single module")));
        }
    }
    let sh = shift_maps(f.src.field, &module);
    let outer = tensor_power_op(&sh.s, f.dst.arity());
    let inner = tensor_power_op(&sh.omega, f.src.arity());
    Ok(outer.after(&Op::map(f.clone())).after(&inner).materialize())
}

fn single_module(s: &Shape) -> Option<Arc<GradedModule>> {
    s.factors.first().cloned()
}

/// Transports a map along per-factor relabelling isomorphisms that keep basis order.
///
/// Used to identify modules with the same basis order, such as `A[1]∨` and `A∨[-1]`.
pub fn reidentify(f: &GradedMap, src: Shape, dst: Shape) -> Result<GradedMap, Error> {
    if src.arity() != f.src.arity() || dst.arity() != f.dst.arity() {
        return Err(Error::Shape(String::from("arity mismatch in reidentification")));
    }
    let mut out = GradedMap::zero(src, dst, f.degree);
    for (a, col) in f.columns() {
        let img: Terms = col.clone();
        out.set_image(a.clone(), img)?;
    }
    Ok(out)
}
