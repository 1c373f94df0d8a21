//! Sparse multivariate polynomials over exact rationals with pluggable
//! monomial orders.
//!
//! A [`VariableUniverse`] fixes the set of variables and, crucially, their
//! precedence: monomial orders always rank the first declared variable
//! highest. Reproducing printed bases therefore amounts to declaring the
//! universe in the same written order as the source ring.

mod order;
mod parse;

pub use order::{MonomialOrder, OrderBlock, OrderKind};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::ExactScalar;

/// Errors raised by polynomial construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    UniverseMismatch,
    DuplicateVariable(String),
    UnknownVariable(String),
    /// A variable had to be eliminated by substitution but no binding was
    /// given and it does not exist in the target universe.
    UnboundVariable(String),
    Parse { msg: String, pos: usize },
    InvalidOrder(String),
    Shape,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::UniverseMismatch => write!(f, "polynomials live in different variable universes"),
            PolyError::DuplicateVariable(v) => write!(f, "duplicate variable `{v}`"),
            PolyError::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            PolyError::UnboundVariable(v) => write!(f, "variable `{v}` is unbound and absent from the target universe"),
            PolyError::Parse { msg, pos } => write!(f, "parse error at byte {pos}: {msg}"),
            PolyError::InvalidOrder(m) => write!(f, "invalid monomial order: {m}"),
            PolyError::Shape => write!(f, "matrix shape mismatch"),
        }
    }
}

/// Ordered set of distinct variable names. The declared order fixes the
/// precedence used by every monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableUniverse {
    names: Vec<String>,
}

/// Shared handle to a universe; polynomials hold one of these.
pub type Universe = Arc<VariableUniverse>;

impl VariableUniverse {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Universe, PolyError> {
        let mut seen: Vec<&str> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if seen.contains(&n) {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
            seen.push(n);
        }
        Ok(Arc::new(VariableUniverse {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }))
    }

    /// Universe `p0..p3 q0..q3 ...` for a list of quadruple prefixes.
    pub fn quadruples(prefixes: &[&str]) -> Universe {
        let mut names = Vec::new();
        for p in prefixes {
            for i in 0..4 {
                names.push(alloc::format!("{p}{i}"));
            }
        }
        VariableUniverse::new(&names).expect("distinct prefixes")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector over a universe. The derived `Ord` is a storage order
/// only; semantic comparisons go through [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, idx: usize) -> Self {
        let mut m = Monomial::unit(n);
        m.exps[idx] = 1;
        m
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// Sparse multivariate polynomial over [`ExactScalar`]. Zero coefficients
/// are never stored. Immutable value semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    universe: Universe,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl Polynomial {
    pub fn zero(universe: &Universe) -> Self {
        Polynomial { universe: universe.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(universe: &Universe, c: ExactScalar) -> Self {
        let mut p = Polynomial::zero(universe);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(universe.len()), c);
        }
        p
    }

    pub fn one(universe: &Universe) -> Self {
        Polynomial::constant(universe, ExactScalar::one())
    }

    pub fn variable(universe: &Universe, idx: usize) -> Self {
        assert!(idx < universe.len());
        let mut p = Polynomial::zero(universe);
        p.terms.insert(Monomial::var(universe.len(), idx), ExactScalar::one());
        p
    }

    pub fn var_named(universe: &Universe, name: &str) -> Result<Self, PolyError> {
        let idx = universe.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::variable(universe, idx))
    }

    pub fn from_terms<I>(universe: &Universe, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ExactScalar)>,
    {
        let mut p = Polynomial::zero(universe);
        for (m, c) in terms {
            debug_assert_eq!(m.len(), universe.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.terms.is_empty() {
            Some(ExactScalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_universe(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe {
            Ok(())
        } else {
            Err(PolyError::UniverseMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_universe(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_universe(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_universe(rhs)?;
        let mut out = Polynomial::zero(&self.universe);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, k: &ExactScalar) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(&self.universe);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    /// Multiplies by a single term `k * m`.
    pub fn mul_term(&self, m: &Monomial, k: &ExactScalar) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(&self.universe);
        }
        let mut out = Polynomial::zero(&self.universe);
        for (m1, c1) in &self.terms {
            out.terms.insert(m1.mul(m), c1 * k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.universe);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Leading term under `order` (scan of all stored terms).
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &ExactScalar)> {
        self.terms
            .iter()
            .max_by(|(m1, _), (m2, _)| order.compare(m1, m2))
    }

    /// Terms sorted strictly decreasing under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &ExactScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(m1, _), (m2, _)| order.compare(m2, m1));
        v
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.universe);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            out.add_term(Monomial::from_exps(exps), c * &ExactScalar::from_int(e as i64));
        }
        out
    }

    /// Exact substitution into a declared target universe. Variables either
    /// map through `bindings` (polynomials over the target universe) or must
    /// exist in the target by name.
    pub fn substitute(
        &self,
        target: &Universe,
        bindings: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        // index map: var -> Err(target index) | Ok(binding)
        let mut map: Vec<Option<&Polynomial>> = Vec::with_capacity(self.universe.len());
        let mut idx_map: Vec<Option<usize>> = Vec::with_capacity(self.universe.len());
        for name in self.universe.names() {
            match bindings.get(name) {
                Some(p) => {
                    if p.universe() != target {
                        return Err(PolyError::UniverseMismatch);
                    }
                    map.push(Some(p));
                    idx_map.push(None);
                }
                None => {
                    map.push(None);
                    idx_map.push(target.index_of(name));
                }
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut factor = Polynomial::constant(target, c.clone());
            for (var, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[var] {
                    Some(p) => factor = &factor * &p.pow(e),
                    None => match idx_map[var] {
                        Some(t) => {
                            let mono = {
                                let mut exps = vec![0u32; target.len()];
                                exps[t] = e;
                                Monomial::from_exps(exps)
                            };
                            factor = factor.mul_term(&mono, &ExactScalar::one());
                        }
                        None => {
                            return Err(PolyError::UnboundVariable(self.universe.name(var).to_string()))
                        }
                    },
                }
            }
            out = &out + &factor;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a universe containing all of its
    /// variables by name.
    pub fn embed(&self, target: &Universe) -> Result<Polynomial, PolyError> {
        self.substitute(target, &BTreeMap::new())
    }

    /// Exact evaluation at a full rational point (one value per variable).
    pub fn eval_exact(&self, point: &[ExactScalar]) -> ExactScalar {
        assert_eq!(point.len(), self.universe.len());
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (var, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[var];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Double-precision evaluation; used only by the residual sampler.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.universe.len());
        let mut acc = 0.0f64;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (var, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= point[var];
                }
            }
            acc += t;
        }
        acc
    }

    /// If the polynomial has the shape `c*x + r` with scalar `c != 0` and
    /// `r` free of `x`, returns `(c, r)` so that `x = -r/c` on its zero set.
    pub fn linear_solve_for(&self, var: usize) -> Option<(ExactScalar, Polynomial)> {
        let n = self.universe.len();
        let x = Monomial::var(n, var);
        let c = self.terms.get(&x)?.clone();
        let mut rest = Polynomial::zero(&self.universe);
        for (m, k) in &self.terms {
            if m == &x {
                continue;
            }
            if m.exp(var) != 0 {
                return None;
            }
            rest.add_term(m.clone(), k.clone());
        }
        Some((c, rest))
    }

    /// Coefficient polynomials with respect to one variable: index `j`
    /// holds the coefficient of `var^j` (with the `var` exponent zeroed),
    /// over the same universe.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(&self.universe); d + 1];
        for (m, c) in &self.terms {
            let j = m.exp(var) as usize;
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            out[j].add_term(Monomial::from_exps(exps), c.clone());
        }
        out
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.universe.len()];
        for m in self.terms.keys() {
            for v in m.support() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i).collect()
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl core::ops::$trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("universe mismatch")
            }
        }
        impl core::ops::$trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$checked(&rhs).expect("universe mismatch")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl core::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Rectangular matrix of polynomials over a shared universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> Polynomial>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(PolyError::Shape);
        }
        Ok(PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(universe: &Universe, n: usize) -> Self {
        PolyMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Polynomial::one(universe)
            } else {
                Polynomial::zero(universe)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != rhs.rows {
            return Err(PolyError::Shape);
        }
        let universe = self.data[0].universe().clone();
        Ok(PolyMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Polynomial::zero(&universe);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(PolyError::Shape);
        }
        Ok(PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(PolyError::Shape);
        }
        Ok(PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    pub fn scale(&self, k: &Polynomial) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * k)
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
        if v.len() != self.cols {
            return Err(PolyError::Shape);
        }
        let universe = self.data[0].universe().clone();
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&universe);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * &v[k]);
                }
                acc
            })
            .collect())
    }

    /// Exact determinant by Laplace expansion along the first row.
    /// Intended for the small minors of Fitting-ideal computations.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::Shape);
        }
        let universe = self.data[0].universe().clone();
        fn det_rec(m: &PolyMatrix, rows: &[usize], cols: &[usize], universe: &Universe) -> Polynomial {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = Polynomial::zero(universe);
            let sub_rows = &rows[1..];
            for (k, &cj) in cols.iter().enumerate() {
                let entry = m.get(rows[0], cj);
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> =
                    cols.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, c)| *c).collect();
                let minor = det_rec(m, sub_rows, &sub_cols, universe);
                let term = entry * &minor;
                if k % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(det_rec(self, &rows, &cols, &universe))
    }

    /// Submatrix selected by row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}
