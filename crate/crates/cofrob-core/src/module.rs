//! Graded modules, their tensor powers, elements, and degree-homogeneous maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::scalar::{Field, Scalar};

/// A basis tuple: one basis index per tensor factor.
pub type Tuple = Vec<u32>;

/// Sparse coefficient vector indexed by basis tuples.
pub type Terms = BTreeMap<Tuple, Scalar>;

/// Adds `c` to the coefficient of `t`, dropping the entry if it cancels.
pub fn add_term(terms: &mut Terms, t: Tuple, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(t) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Free graded module with a finite, ordered, labelled basis.
///
/// Each basis element also carries a window weight (the absolute value of its
/// Laurent exponent in truncated models, zero otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    labels: Vec<String>,
    degrees: Vec<i64>,
    weights: Vec<u32>,
    index: BTreeMap<String, u32>,
}

impl GradedModule {
    pub fn new<S: Into<String>>(basis: Vec<(S, i64)>) -> Result<Arc<GradedModule>, Error> {
        Self::with_weights(basis.into_iter().map(|(l, d)| (l, d, 0)).collect())
    }

    pub fn with_weights<S: Into<String>>(
        basis: Vec<(S, i64, u32)>,
    ) -> Result<Arc<GradedModule>, Error> {
        let mut m = GradedModule {
            labels: Vec::new(),
            degrees: Vec::new(),
            weights: Vec::new(),
            index: BTreeMap::new(),
        };
        for (label, degree, weight) in basis {
            let label = label.into();
            if m.index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            m.index.insert(label.clone(), m.labels.len() as u32);
            m.labels.push(label);
            m.degrees.push(degree);
            m.weights.push(weight);
        }
        Ok(Arc::new(m))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: u32) -> &str {
        &self.labels[i as usize]
    }

    pub fn degree(&self, i: u32) -> i64 {
        self.degrees[i as usize]
    }

    pub fn weight(&self, i: u32) -> u32 {
        self.weights[i as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    /// Basis as `(label, degree, weight)` triples in order.
    pub fn basis(&self) -> impl Iterator<Item = (&str, i64, u32)> + '_ {
        (0..self.dim()).map(move |i| {
            (self.labels[i].as_str(), self.degrees[i], self.weights[i])
        })
    }

    /// Number of basis elements in each degree.
    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// Same basis with new labels and degrees computed from the old ones.
    pub fn relabel(
        &self,
        label: impl Fn(&str) -> String,
        degree: impl Fn(i64) -> i64,
    ) -> Arc<GradedModule> {
        let basis = self
            .basis()
            .map(|(l, d, w)| (label(l), degree(d), w))
            .collect::<Vec<_>>();
        GradedModule::with_weights(basis).expect("relabelling keeps labels distinct")
    }
}

/// Builds a module, reporting duplicate labels.
pub fn make_module<S: Into<String>>(basis: Vec<(S, i64)>) -> Result<Arc<GradedModule>, Error> {
    GradedModule::new(basis)
}

fn same_module(a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A tensor product `A_1 ⊗ … ⊗ A_k` over a field; arity zero is the ground ring.
#[derive(Clone, Debug)]
pub struct Shape {
    pub field: Field,
    pub factors: Vec<Arc<GradedModule>>,
}

impl PartialEq for Shape {
    fn eq(&self, other: &Shape) -> bool {
        self.field == other.field
            && self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| same_module(a, b))
    }
}

impl Eq for Shape {}

impl Shape {
    pub fn new(field: Field, factors: Vec<Arc<GradedModule>>) -> Shape {
        Shape { field, factors }
    }

    /// The ground ring `R`, a rank-one module in degree zero.
    pub fn ground(field: Field) -> Shape {
        Shape { field, factors: Vec::new() }
    }

    pub fn power(field: Field, a: &Arc<GradedModule>, k: usize) -> Shape {
        Shape { field, factors: (0..k).map(|_| a.clone()).collect() }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn concat(&self, other: &Shape) -> Shape {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Shape { field: self.field, factors }
    }

    pub fn slice(&self, from: usize, to: usize) -> Shape {
        Shape { field: self.field, factors: self.factors[from..to].to_vec() }
    }

    pub fn tuple_degree(&self, t: &[u32]) -> i64 {
        t.iter().zip(&self.factors).map(|(&i, m)| m.degree(i)).sum()
    }

    pub fn tuple_weight(&self, t: &[u32]) -> u32 {
        t.iter().zip(&self.factors).map(|(&i, m)| m.weight(i)).sum()
    }

    /// Total number of basis tuples.
    pub fn size(&self) -> usize {
        self.factors.iter().map(|m| m.dim()).product()
    }

    /// All basis tuples in lexicographic order.
    pub fn tuples(&self) -> Vec<Tuple> {
        let mut out: Vec<Tuple> = alloc::vec![Vec::new()];
        for m in &self.factors {
            let mut next = Vec::with_capacity(out.len() * m.dim());
            for t in &out {
                for i in 0..m.dim() as u32 {
                    let mut u = t.clone();
                    u.push(i);
                    next.push(u);
                }
            }
            out = next;
        }
        out
    }

    pub fn check_tuple(&self, t: &[u32]) -> Result<(), Error> {
        if t.len() != self.arity() || t.iter().zip(&self.factors).any(|(&i, m)| i as usize >= m.dim())
        {
            return Err(Error::Shape(format!("tuple {:?} is not a basis tuple", t)));
        }
        Ok(())
    }

    /// Renders a basis tuple as `a⊗b`; the empty tuple is `1`.
    pub fn render_tuple(&self, t: &[u32]) -> String {
        if t.is_empty() {
            return String::from("1");
        }
        let parts: Vec<&str> = t.iter().zip(&self.factors).map(|(&i, m)| m.label(i)).collect();
        parts.join("⊗")
    }

    /// Looks up a tuple from labels.
    pub fn tuple_of(&self, labels: &[&str]) -> Result<Tuple, Error> {
        if labels.len() != self.arity() {
            return Err(Error::Shape(format!(
                "expected {} tensor factors, got {}",
                self.arity(),
                labels.len()
            )));
        }
        labels
            .iter()
            .zip(&self.factors)
            .map(|(l, m)| m.index_of(l).ok_or_else(|| Error::UnknownLabel(String::from(*l))))
            .collect()
    }
}

/// A vector in a tensor power, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub shape: Shape,
    pub terms: Terms,
}

impl Element {
    pub fn zero(shape: Shape) -> Element {
        Element { shape, terms: Terms::new() }
    }

    /// The basis vector of a tuple.
    pub fn basis(shape: Shape, t: Tuple) -> Element {
        let one = shape.field.one();
        let mut terms = Terms::new();
        terms.insert(t, one);
        Element { shape, terms }
    }

    /// Builds an element from `(labels, coefficient)` pairs.
    pub fn from_labels(shape: Shape, items: &[(&[&str], i64)]) -> Result<Element, Error> {
        let mut terms = Terms::new();
        for (labels, c) in items {
            let t = shape.tuple_of(labels)?;
            add_term(&mut terms, t, shape.field.int(*c));
        }
        Ok(Element { shape, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &[u32]) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(|| self.shape.field.zero())
    }

    /// Coefficient looked up by labels; unknown labels read as zero.
    pub fn coeff_of(&self, labels: &[&str]) -> Scalar {
        match self.shape.tuple_of(labels) {
            Ok(t) => self.coeff(&t),
            Err(_) => self.shape.field.zero(),
        }
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|t| self.shape.tuple_degree(t));
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut terms = self.terms.clone();
        for (t, c) in &other.terms {
            add_term(&mut terms, t.clone(), c.clone());
        }
        Element { shape: self.shape.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut terms = Terms::new();
        for (t, x) in &self.terms {
            add_term(&mut terms, t.clone(), x * c);
        }
        Element { shape: self.shape.clone(), terms }
    }

    /// Multiplies by `(-1)^e`.
    pub fn signed(&self, e: i64) -> Element {
        if e.rem_euclid(2) == 0 {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(t, c)| (t.clone(), -c.clone())).collect();
        Element { shape: self.shape.clone(), terms }
    }

    /// Tensor product `a ⊗ b` of elements (no sign: the factors are not reordered).
    pub fn tensor(&self, other: &Element) -> Element {
        let mut terms = Terms::new();
        for (s, x) in &self.terms {
            for (t, y) in &other.terms {
                let mut u = s.clone();
                u.extend_from_slice(t);
                add_term(&mut terms, u, x * y);
            }
        }
        Element { shape: self.shape.concat(&other.shape), terms }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let tuple = self.shape.render_tuple(t);
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, tuple)?;
        }
        Ok(())
    }
}

/// A degree-homogeneous linear map between tensor powers, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub src: Shape,
    pub dst: Shape,
    pub degree: i64,
    cols: BTreeMap<Tuple, Terms>,
}

impl GradedMap {
    pub fn zero(src: Shape, dst: Shape, degree: i64) -> GradedMap {
        GradedMap { src, dst, degree, cols: BTreeMap::new() }
    }

    pub fn identity(shape: Shape) -> GradedMap {
        let mut m = GradedMap::zero(shape.clone(), shape.clone(), 0);
        for t in shape.tuples() {
            m.cols.insert(t.clone(), core::iter::once((t, shape.field.one())).collect());
        }
        m
    }

    /// Adds `c · dst` to the image of `src`, enforcing homogeneity.
    pub fn add_entry(&mut self, src: Tuple, dst: Tuple, c: Scalar) -> Result<(), Error> {
        self.src.check_tuple(&src)?;
        self.dst.check_tuple(&dst)?;
        let want = self.src.tuple_degree(&src) + self.degree;
        let got = self.dst.tuple_degree(&dst);
        if c.is_zero() {
            return Ok(());
        }
        if want != got {
            return Err(Error::Degree(format!(
                "{} -> {} has degree {} but the map has degree {}",
                self.src.render_tuple(&src),
                self.dst.render_tuple(&dst),
                got - self.src.tuple_degree(&src),
                self.degree
            )));
        }
        let col = self.cols.entry(src.clone()).or_default();
        add_term(col, dst, c);
        if col.is_empty() {
            self.cols.remove(&src);
        }
        Ok(())
    }

    /// Adds an entry given by labels and an integer coefficient.
    pub fn add_labels(&mut self, src: &[&str], dst: &[&str], c: i64) -> Result<(), Error> {
        let s = self.src.tuple_of(src)?;
        let d = self.dst.tuple_of(dst)?;
        let c = self.src.field.int(c);
        self.add_entry(s, d, c)
    }

    /// Sets the image of a basis tuple, enforcing homogeneity.
    pub fn set_image(&mut self, src: Tuple, image: Terms) -> Result<(), Error> {
        self.cols.remove(&src);
        for (t, c) in image {
            self.add_entry(src.clone(), t, c)?;
        }
        Ok(())
    }

    /// Image of a basis tuple (`None` when it is zero).
    pub fn image(&self, t: &[u32]) -> Option<&Terms> {
        self.cols.get(t)
    }

    /// Nonzero columns in canonical order.
    pub fn columns(&self) -> impl Iterator<Item = (&Tuple, &Terms)> {
        self.cols.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    /// Number of stored nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.cols.values().map(|c| c.len()).sum()
    }

    pub fn apply(&self, x: &Element) -> Result<Element, Error> {
        if x.shape != self.src {
            return Err(Error::Shape(String::from("element does not live in the source")));
        }
        let mut terms = Terms::new();
        for (t, c) in &x.terms {
            if let Some(col) = self.cols.get(t) {
                for (u, d) in col {
                    add_term(&mut terms, u.clone(), c * d);
                }
            }
        }
        Ok(Element { shape: self.dst.clone(), terms })
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let mut out = GradedMap::zero(self.src.clone(), self.dst.clone(), self.degree);
        for (s, col) in &self.cols {
            let mut image = Terms::new();
            for (t, x) in col {
                add_term(&mut image, t.clone(), x * c);
            }
            if !image.is_empty() {
                out.cols.insert(s.clone(), image);
            }
        }
        out
    }

    /// Multiplies by `(-1)^e`.
    pub fn signed(&self, e: i64) -> GradedMap {
        if e.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.scale(&self.src.field.int(-1))
        }
    }

    /// Sum of two maps of identical signature.
    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, Error> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::Shape(String::from("cannot add maps of different shapes")));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Degree(String::from("cannot add maps of different degrees")));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = self.clone();
        out.degree = degree;
        for (s, col) in &other.cols {
            for (t, c) in col {
                out.add_entry(s.clone(), t.clone(), c.clone())?;
            }
        }
        Ok(out)
    }

    /// Converts an element into the map `R → shape` sending `1` to it.
    pub fn from_element(x: &Element, degree: i64) -> Result<GradedMap, Error> {
        let mut m = GradedMap::zero(Shape::ground(x.shape.field), x.shape.clone(), degree);
        m.set_image(Vec::new(), x.terms.clone())?;
        Ok(m)
    }

    /// The image of `1` for a map out of the ground ring.
    pub fn to_element(&self) -> Element {
        let terms = self.cols.get(&Vec::new()).cloned().unwrap_or_default();
        Element { shape: self.dst.clone(), terms }
    }
}

/// `g ∘ f`, without any sign.
pub fn compose(g: &GradedMap, f: &GradedMap) -> Result<GradedMap, Error> {
    if f.dst != g.src {
        return Err(Error::Shape(String::from("target of f is not the source of g")));
    }
    let mut out = GradedMap::zero(f.src.clone(), g.dst.clone(), f.degree + g.degree);
    for (s, col) in &f.cols {
        let mut image = Terms::new();
        for (t, c) in col {
            if let Some(gcol) = g.cols.get(t) {
                for (u, d) in gcol {
                    add_term(&mut image, u.clone(), c * d);
                }
            }
        }
        if !image.is_empty() {
            out.cols.insert(s.clone(), image);
        }
    }
    Ok(out)
}

/// Exact equality of two maps; different signatures compare unequal.
pub fn map_equal(f: &GradedMap, g: &GradedMap) -> bool {
    if f.src != g.src || f.dst != g.dst {
        return false;
    }
    if f.cols != g.cols {
        return false;
    }
    f.degree == g.degree || f.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s2() -> Arc<GradedModule> {
        make_module(vec![("1", 0), ("ω", 2)]).unwrap()
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert_eq!(
            make_module(vec![("x", 0), ("x", 1)]).unwrap_err(),
            Error::DuplicateLabel("x".into())
        );
    }

    #[test]
    fn window_module_dims() {
        let m = make_module(vec![("U^{-1}", -2), ("U^0", 0), ("U^1", 2)]).unwrap();
        let dims = m.dims_by_degree();
        assert_eq!(dims.get(&-2), Some(&1));
        assert_eq!(dims.get(&2), Some(&1));
    }

    #[test]
    fn inhomogeneous_entry_is_rejected() {
        let a = s2();
        let sh = Shape::power(Field::Q, &a, 1);
        let mut f = GradedMap::zero(sh.clone(), sh, 0);
        assert!(matches!(f.add_labels(&["1"], &["ω"], 1), Err(Error::Degree(_))));
        f.add_labels(&["ω"], &["ω"], 3).unwrap();
        assert_eq!(f.nnz(), 1);
    }

    #[test]
    fn identity_and_zero_act_as_expected() {
        let a = s2();
        let sh = Shape::power(Field::Q, &a, 2);
        let x = Element::from_labels(sh.clone(), &[(&["1", "ω"], 2), (&["ω", "1"], -1)]).unwrap();
        assert_eq!(GradedMap::identity(sh.clone()).apply(&x).unwrap(), x);
        assert!(GradedMap::zero(sh.clone(), sh, 5).apply(&x).unwrap().is_zero());
        assert_eq!(x.degree(), Some(2));
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let a = s2();
        let sh = Shape::power(Field::Q, &a, 1);
        let mut f = GradedMap::zero(sh.clone(), sh.clone(), 2);
        f.add_labels(&["1"], &["ω"], 7).unwrap();
        let id = GradedMap::identity(sh);
        assert!(map_equal(&compose(&id, &f).unwrap(), &f));
        assert!(map_equal(&compose(&f, &id).unwrap(), &f));
        assert!(compose(&f, &f).unwrap().is_zero());
    }
}
