//! Lazily evaluated composites of graded maps.
//!
//! Relations are checked by expanding both sides on basis tuples, so composite
//! operations are kept as expression trees instead of being multiplied out.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::module::{add_term, Element, GradedMap, Shape, Terms, Tuple};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
enum Kind {
    Map(Arc<GradedMap>),
    Id,
    /// `ops[0] ∘ ops[1] ∘ …`
    Compose(Vec<Op>),
    Tensor(Vec<Op>),
    Scale(Scalar, Box<Op>),
    Sum(Vec<Op>),
}

/// A composite of graded maps with known source, target and degree.
#[derive(Clone, Debug)]
pub struct Op {
    kind: Kind,
    src: Shape,
    dst: Shape,
    degree: i64,
}

impl Op {
    pub fn map(f: GradedMap) -> Op {
        Op::shared(Arc::new(f))
    }

    pub fn shared(f: Arc<GradedMap>) -> Op {
        Op { src: f.src.clone(), dst: f.dst.clone(), degree: f.degree, kind: Kind::Map(f) }
    }

    /// The map `R → A^{⊗k}` picking out an element.
    pub fn element(x: &Element, degree: i64) -> Op {
        Op::map(GradedMap::from_element(x, degree).expect("element is homogeneous of its degree"))
    }

    pub fn id(shape: Shape) -> Op {
        Op { src: shape.clone(), dst: shape, degree: 0, kind: Kind::Id }
    }

    pub fn src(&self) -> &Shape {
        &self.src
    }

    pub fn dst(&self) -> &Shape {
        &self.dst
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `self ∘ inner`; fails on mismatched shapes.
    pub fn try_after(&self, inner: &Op) -> Result<Op, Error> {
        if inner.dst != self.src {
            return Err(Error::Shape(alloc::format!(
                "cannot compose: inner target has arity {}, outer source has arity {}",
                inner.dst.arity(),
                self.src.arity()
            )));
        }
        let mut ops = Vec::new();
        for o in [self, inner] {
            match &o.kind {
                Kind::Compose(v) => ops.extend(v.iter().cloned()),
                Kind::Id => {}
                _ => ops.push(o.clone()),
            }
        }
        let kind = match ops.len() {
            0 => Kind::Id,
            1 => return Ok(ops.pop().unwrap()),
            _ => Kind::Compose(ops),
        };
        Ok(Op { kind, src: inner.src.clone(), dst: self.dst.clone(), degree: self.degree + inner.degree })
    }

    /// `self ∘ inner`. Panics on mismatched shapes; used where shapes are known to fit.
    pub fn after(&self, inner: &Op) -> Op {
        self.try_after(inner).expect("composable shapes")
    }

    /// `self ⊗ other` with the Koszul rule.
    pub fn tensor(&self, other: &Op) -> Op {
        Op::tensor_all(&[self.clone(), other.clone()])
    }

    pub fn tensor_all(ops: &[Op]) -> Op {
        let field = ops[0].src.field;
        let mut src = Shape::ground(field);
        let mut dst = Shape::ground(field);
        let mut parts = Vec::new();
        for o in ops {
            src = src.concat(&o.src);
            dst = dst.concat(&o.dst);
            match &o.kind {
                Kind::Tensor(v) => parts.extend(v.iter().cloned()),
                _ => parts.push(o.clone()),
            }
        }
        let degree = ops.iter().map(|o| o.degree).sum();
        if parts.iter().all(|p| matches!(p.kind, Kind::Id)) {
            return Op::id(src);
        }
        Op { kind: Kind::Tensor(parts), src, dst, degree }
    }

    pub fn scale(&self, c: Scalar) -> Op {
        Op {
            kind: Kind::Scale(c, Box::new(self.clone())),
            src: self.src.clone(),
            dst: self.dst.clone(),
            degree: self.degree,
        }
    }

    /// Multiplies by `(-1)^e`.
    pub fn sign(&self, e: i64) -> Op {
        if e.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.scale(self.src.field.int(-1))
        }
    }

    pub fn neg(&self) -> Op {
        self.sign(1)
    }

    pub fn try_plus(&self, other: &Op) -> Result<Op, Error> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::Shape(alloc::string::String::from("cannot add operations of different shapes")));
        }
        let mut parts = Vec::new();
        for o in [self, other] {
            match &o.kind {
                Kind::Sum(v) => parts.extend(v.iter().cloned()),
                _ => parts.push(o.clone()),
            }
        }
        Ok(Op { kind: Kind::Sum(parts), src: self.src.clone(), dst: self.dst.clone(), degree: self.degree })
    }

    pub fn plus(&self, other: &Op) -> Op {
        self.try_plus(other).expect("operations of equal shape")
    }

    pub fn minus(&self, other: &Op) -> Op {
        self.plus(&other.neg())
    }

    /// Image of a basis tuple of the source.
    pub fn eval(&self, t: &[u32]) -> Terms {
        match &self.kind {
            Kind::Map(f) => f.image(t).cloned().unwrap_or_default(),
            Kind::Id => {
                let mut out = Terms::new();
                out.insert(t.to_vec(), self.src.field.one());
                out
            }
            Kind::Compose(ops) => {
                let mut cur = ops[ops.len() - 1].eval(t);
                for o in ops[..ops.len() - 1].iter().rev() {
                    if cur.is_empty() {
                        break;
                    }
                    cur = o.apply_terms(&cur);
                }
                cur
            }
            Kind::Tensor(parts) => self.eval_tensor(parts, t),
            Kind::Scale(c, inner) => {
                let mut out = Terms::new();
                for (u, x) in inner.eval(t) {
                    add_term(&mut out, u, &x * c);
                }
                out
            }
            Kind::Sum(parts) => {
                let mut out = Terms::new();
                for p in parts {
                    for (u, x) in p.eval(t) {
                        add_term(&mut out, u, x);
                    }
                }
                out
            }
        }
    }

    fn eval_tensor(&self, parts: &[Op], t: &[u32]) -> Terms {
        let mut offset = 0;
        let mut sign_exp = 0i64;
        let mut piece_degrees: Vec<i64> = Vec::with_capacity(parts.len());
        let mut images: Vec<Terms> = Vec::with_capacity(parts.len());
        for p in parts {
            let k = p.src.arity();
            let piece = &t[offset..offset + k];
            let d = p.src.tuple_degree(piece);
            // (f_1 ⊗ … ⊗ f_n)(a_1 ⊗ … ⊗ a_n) picks up (-1)^{|f_j||a_i|} for i < j.
            let earlier: i64 = piece_degrees.iter().sum();
            sign_exp += p.degree * earlier;
            piece_degrees.push(d);
            let img = p.eval(piece);
            if img.is_empty() {
                return Terms::new();
            }
            images.push(img);
            offset += k;
        }
        let mut acc: Vec<(Tuple, Scalar)> = vec![(Vec::new(), self.src.field.sign(sign_exp))];
        for img in &images {
            let mut next = Vec::with_capacity(acc.len() * img.len());
            for (u, c) in &acc {
                for (v, d) in img {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    next.push((w, c * d));
                }
            }
            acc = next;
        }
        let mut out = Terms::new();
        for (u, c) in acc {
            add_term(&mut out, u, c);
        }
        out
    }

    /// Applies the operation to a sparse vector of the source.
    pub fn apply_terms(&self, x: &Terms) -> Terms {
        let mut out = Terms::new();
        for (t, c) in x {
            for (u, d) in self.eval(t) {
                add_term(&mut out, u, c * &d);
            }
        }
        out
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element { shape: self.dst.clone(), terms: self.apply_terms(&x.terms) }
    }

    /// Multiplies the composite out into an explicit matrix.
    pub fn materialize(&self) -> GradedMap {
        if let Kind::Map(f) = &self.kind {
            return (**f).clone();
        }
        let mut m = GradedMap::zero(self.src.clone(), self.dst.clone(), self.degree);
        for t in self.src.tuples() {
            let img = self.eval(&t);
            if !img.is_empty() {
                m.set_image(t, img).expect("composites of homogeneous maps are homogeneous");
            }
        }
        m
    }
}
