//! Buchberger-based ideal computations: reduced Gröbner bases, membership,
//! elimination, intersection, variety dimension, Fitting ideals, and the
//! Jacobian regularity criterion.
//!
//! All computations are exact over Q. Every potentially long-running entry
//! point takes a [`Budget`] capping the number of reduction steps, so a
//! runaway computation fails deterministically instead of hanging.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{Monomial, MonomialOrder, OrderBlock, OrderKind, PolyError, PolyMatrix, Polynomial, Universe, VariableUniverse};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    /// The configured S-pair/reduction budget ran out.
    BudgetExhausted { spent: u64 },
    Poly(PolyError),
    Invalid(String),
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::BudgetExhausted { spent } => {
                write!(f, "computation budget exhausted after {spent} reduction steps")
            }
            GroebnerError::Poly(e) => write!(f, "{e}"),
            GroebnerError::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl From<PolyError> for GroebnerError {
    fn from(e: PolyError) -> Self {
        GroebnerError::Poly(e)
    }
}

/// Cap on reduction steps for one engine call.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 1_000_000 }
    }
}

impl Budget {
    pub fn new(max_steps: u64) -> Self {
        Budget { max_steps }
    }
}

struct Meter {
    left: u64,
    spent: u64,
}

impl Meter {
    fn new(b: &Budget) -> Self {
        Meter { left: b.max_steps, spent: 0 }
    }

    fn spend(&mut self) -> Result<(), GroebnerError> {
        if self.left == 0 {
            return Err(GroebnerError::BudgetExhausted { spent: self.spent });
        }
        self.left -= 1;
        self.spent += 1;
        Ok(())
    }
}

/// A finite presentation of an ideal: a universe and nonzero generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    universe: Universe,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    /// Builds a presentation, dropping zero generators. All generators must
    /// share the universe.
    pub fn new(universe: &Universe, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for g in &generators {
            if g.universe() != universe {
                return Err(GroebnerError::Poly(PolyError::UniverseMismatch));
            }
        }
        Ok(IdealPresentation {
            universe: universe.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Ideal sum: concatenated generators over the shared universe.
    pub fn sum(&self, other: &IdealPresentation) -> Result<IdealPresentation, GroebnerError> {
        if self.universe != other.universe {
            return Err(GroebnerError::Poly(PolyError::UniverseMismatch));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        IdealPresentation::new(&self.universe, gens)
    }

    pub fn with_extra(&self, extra: &[Polynomial]) -> Result<IdealPresentation, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        IdealPresentation::new(&self.universe, gens)
    }
}

/// A reduced, monic Gröbner basis under a declared monomial order.
/// Elements are sorted by leading monomial, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    universe: Universe,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// True for the unit ideal's basis `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_ideal(&self) -> IdealPresentation {
        IdealPresentation { universe: self.universe.clone(), generators: self.elements.clone() }
    }
}

fn leading_cached<'a>(p: &'a Polynomial, order: &MonomialOrder) -> (Monomial, ExactScalar) {
    let (m, c) = p.leading(order).expect("nonzero polynomial");
    (m.clone(), c.clone())
}

/// Full reduction of `f` modulo `basis`: returns the unique remainder none
/// of whose monomials is divisible by any basis leading monomial.
fn reduce_full(
    f: &Polynomial,
    basis: &[Polynomial],
    lms: &[(Monomial, ExactScalar)],
    order: &MonomialOrder,
    meter: &mut Meter,
) -> Result<Polynomial, GroebnerError> {
    let universe = f.universe().clone();
    let mut p = f.clone();
    let mut remainder = Polynomial::zero(&universe);
    'outer: while !p.is_zero() {
        let (lm, lc) = leading_cached(&p, order);
        for (g, (glm, glc)) in basis.iter().zip(lms) {
            if glm.divides(&lm) {
                meter.spend()?;
                let factor = lc.checked_div(glc).expect("monic divisor");
                let shift = glm.div_into(&lm);
                p = &p - &g.mul_term(&shift, &factor);
                continue 'outer;
            }
        }
        // leading term is irreducible; move it to the remainder
        let term = Polynomial::from_terms(&universe, [(lm.clone(), lc.clone())]);
        remainder = &remainder + &term;
        p = &p - &term;
    }
    Ok(remainder)
}

/// Multivariate division: `f = sum q_i * d_i + r` with no monomial of `r`
/// divisible by any divisor's leading monomial.
pub fn multivariate_divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial), GroebnerError> {
    if divisors.iter().any(|d| d.is_zero()) {
        return Err(GroebnerError::Invalid("division by zero polynomial".into()));
    }
    let universe = f.universe().clone();
    let lms: Vec<_> = divisors.iter().map(|d| leading_cached(d, order)).collect();
    let mut quotients = vec![Polynomial::zero(&universe); divisors.len()];
    let mut p = f.clone();
    let mut remainder = Polynomial::zero(&universe);
    'outer: while !p.is_zero() {
        let (lm, lc) = leading_cached(&p, order);
        for (i, (d, (dlm, dlc))) in divisors.iter().zip(&lms).enumerate() {
            if dlm.divides(&lm) {
                let factor = lc.checked_div(dlc).expect("nonzero divisor");
                let shift = dlm.div_into(&lm);
                let term = Polynomial::from_terms(&universe, [(shift.clone(), factor.clone())]);
                quotients[i] = &quotients[i] + &term;
                p = &p - &d.mul_term(&shift, &factor);
                continue 'outer;
            }
        }
        let term = Polynomial::from_terms(&universe, [(lm.clone(), lc.clone())]);
        remainder = &remainder + &term;
        p = &p - &term;
    }
    Ok((quotients, remainder))
}

/// Computes the reduced monic Gröbner basis of the ideal under `order`.
///
/// Normal selection strategy (smallest leading-monomial lcm first) with
/// Buchberger's coprimality and chain criteria.
pub fn buchberger(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    order.validate(ideal.universe.len())?;
    let mut meter = Meter::new(budget);
    buchberger_inner(ideal, order, &mut meter)
}

fn unit_basis(universe: &Universe, order: &MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        universe: universe.clone(),
        order: order.clone(),
        elements: vec![Polynomial::one(universe)],
    }
}

fn buchberger_inner(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    meter: &mut Meter,
) -> Result<GroebnerBasis, GroebnerError> {
    let universe = ideal.universe.clone();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lms: Vec<(Monomial, ExactScalar)> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let insert = |g: Polynomial,
                      basis: &mut Vec<Polynomial>,
                      lms: &mut Vec<(Monomial, ExactScalar)>,
                      pairs: &mut Vec<(usize, usize)>|
     -> Option<GroebnerBasis> {
        if g.is_constant() {
            return Some(unit_basis(&universe, order));
        }
        let g = g.monic(order);
        let lm = leading_cached(&g, order);
        let idx = basis.len();
        for i in 0..idx {
            pairs.push((i, idx));
        }
        basis.push(g);
        lms.push(lm);
        None
    };

    for g in &ideal.generators {
        let r = reduce_full(g, &basis, &lms, order, meter)?;
        if r.is_zero() {
            continue;
        }
        if let Some(unit) = insert(r, &mut basis, &mut lms, &mut pairs) {
            return Ok(unit);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm (by degree, then by the order) first
        let mut best = 0;
        let mut best_lcm = lms[pairs[0].0].0.lcm(&lms[pairs[0].1].0);
        for (k, (i, j)) in pairs.iter().enumerate().skip(1) {
            let lcm = lms[*i].0.lcm(&lms[*j].0);
            let better = match lcm.total_degree().cmp(&best_lcm.total_degree()) {
                core::cmp::Ordering::Less => true,
                core::cmp::Ordering::Greater => false,
                core::cmp::Ordering::Equal => order.compare(&lcm, &best_lcm) == core::cmp::Ordering::Less,
            };
            if better {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let lcm = &best_lcm;

        // product criterion
        if lms[i].0.coprime(&lms[j].0) {
            continue;
        }
        // chain criterion: some k with lm_k | lcm and both (i,k), (j,k) done
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].0.divides(lcm)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        meter.spend()?;
        let si = basis[i].mul_term(&lms[i].0.div_into(lcm), &ExactScalar::one());
        let sj = basis[j].mul_term(&lms[j].0.div_into(lcm), &ExactScalar::one());
        let spoly = &si - &sj;
        let r = reduce_full(&spoly, &basis, &lms, order, meter)?;
        if r.is_zero() {
            continue;
        }
        if let Some(unit) = insert(r, &mut basis, &mut lms, &mut pairs) {
            return Ok(unit);
        }
    }

    // minimalize: drop elements whose leading monomial another one divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if lms[j].0.divides(&lms[i].0) && (lms[j].0 != lms[i].0 || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> =
        basis.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(g, _)| g).collect();

    // inter-reduce tails
    let min_lms: Vec<_> = minimal.iter().map(|g| leading_cached(g, order)).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let other_lms: Vec<_> =
            min_lms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, l)| l.clone()).collect();
        let r = reduce_full(g, &others, &other_lms, order, meter)?;
        reduced.push(r.monic(order));
    }
    reduced.sort_by(|a, b| {
        let la = a.leading(order).expect("nonzero").0;
        let lb = b.leading(order).expect("nonzero").0;
        order.compare(lb, la)
    });

    Ok(GroebnerBasis { universe, order: order.clone(), elements: reduced })
}

/// Unique remainder of `f` modulo the reduced basis `gb`; zero iff `f` is
/// a member of the ideal.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let lms: Vec<_> = gb.elements.iter().map(|g| leading_cached(g, &gb.order)).collect();
    let mut meter = Meter { left: u64::MAX, spent: 0 };
    reduce_full(f, &gb.elements, &lms, &gb.order, &mut meter).expect("unmetered reduction")
}

/// True iff the ideal is the whole ring (its reduced basis is `{1}`).
pub fn is_trivial(ideal: &IdealPresentation, budget: &Budget) -> Result<bool, GroebnerError> {
    let gb = buchberger(ideal, &MonomialOrder::DegRevLex, budget)?;
    Ok(gb.is_unit())
}

/// Generators of the elimination ideal `I ∩ K[kept variables]`, computed
/// with a product order whose leading block holds the dropped variables.
/// The result lives in the restricted universe and is a Gröbner basis of
/// the elimination ideal under `keep_kind`.
pub fn eliminate(
    ideal: &IdealPresentation,
    drop: &[usize],
    keep_kind: OrderKind,
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    let n = ideal.universe.len();
    for &v in drop {
        if v >= n {
            return Err(GroebnerError::Invalid(format!("drop variable index {v} out of range")));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|v| !drop.contains(v)).collect();
    let order = MonomialOrder::elimination(drop, &keep, keep_kind);
    let gb = buchberger(ideal, &order, budget)?;

    let kept_names: Vec<String> = keep.iter().map(|&v| ideal.universe.name(v).to_string()).collect();
    let restricted = VariableUniverse::new(&kept_names)?;
    let mut gens = Vec::new();
    for g in gb.elements() {
        if g.support().iter().all(|v| keep.contains(v)) {
            gens.push(g.embed(&restricted)?);
        }
    }
    IdealPresentation::new(&restricted, gens)
}

/// Saturation `I : f^inf` via the Rabinowitsch trick: adjoin a fresh
/// inverse variable `w`, add `w*f - 1`, and eliminate `w`. Removes the
/// components of `V(I)` contained in `V(f)`.
pub fn saturate(
    ideal: &IdealPresentation,
    f: &Polynomial,
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    if f.universe() != &ideal.universe {
        return Err(GroebnerError::Poly(PolyError::UniverseMismatch));
    }
    let mut names: Vec<String> = vec!["satinv".to_string()];
    for n in ideal.universe.names() {
        if n == "satinv" {
            return Err(GroebnerError::Invalid(
                "universe already contains the reserved name `satinv`".to_string(),
            ));
        }
        names.push(n.clone());
    }
    let name_refs: Vec<&str> = names.iter().map(|n| n.as_str()).collect();
    let extended = VariableUniverse::new(&name_refs)?;
    let w = Polynomial::var_named(&extended, "satinv").map_err(GroebnerError::Poly)?;
    let mut gens: Vec<Polynomial> = Vec::with_capacity(ideal.generators.len() + 1);
    for g in &ideal.generators {
        gens.push(g.embed(&extended)?);
    }
    gens.push(&(&w * &f.embed(&extended)?) - &Polynomial::one(&extended));
    let big = IdealPresentation::new(&extended, gens)?;
    eliminate(&big, &[0], OrderKind::DegRevLex, budget)
}

/// Ideal intersection via the `t*I + (1-t)*J` elimination trick with a
/// fresh auxiliary variable in its own leading block.
pub fn intersect(
    a: &IdealPresentation,
    b: &IdealPresentation,
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    if a.universe != b.universe {
        return Err(GroebnerError::Poly(PolyError::UniverseMismatch));
    }
    let mut aux = String::from("t");
    while a.universe.index_of(&aux).is_some() {
        aux.push('_');
    }
    let mut names: Vec<String> = vec![aux.clone()];
    names.extend(a.universe.names().iter().cloned());
    let extended = VariableUniverse::new(&names)?;
    let t = Polynomial::var_named(&extended, &aux)?;
    let one_minus_t = &Polynomial::one(&extended) - &t;

    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(&t * &f.embed(&extended)?);
    }
    for g in b.generators() {
        gens.push(&one_minus_t * &g.embed(&extended)?);
    }
    let joined = IdealPresentation::new(&extended, gens)?;
    let eliminated = eliminate(&joined, &[0], OrderKind::DegRevLex, budget)?;

    // return over the original universe handle
    let mut out = Vec::new();
    for g in eliminated.generators() {
        out.push(g.embed(&a.universe)?);
    }
    IdealPresentation::new(&a.universe, out)
}

/// Krull dimension of the variety from a reduced basis: -1 for the unit
/// ideal, otherwise the largest cardinality of a variable set containing
/// no leading monomial's support.
pub fn ideal_dimension(gb: &GroebnerBasis) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    let n = gb.universe.len();
    if gb.elements.is_empty() {
        return n as i64;
    }
    let mut supports: Vec<Vec<usize>> = gb
        .elements
        .iter()
        .map(|g| g.leading(&gb.order).expect("nonzero").0.support().collect())
        .collect();
    supports.sort();
    supports.dedup();

    // dim = n - (minimum hitting set of the leading-monomial supports)
    fn min_hit(supports: &[Vec<usize>], chosen: &mut Vec<usize>, best: &mut usize) {
        if chosen.len() >= *best {
            return;
        }
        match supports.iter().find(|s| !s.iter().any(|v| chosen.contains(v))) {
            None => {
                *best = chosen.len();
            }
            Some(s) => {
                for &v in s {
                    chosen.push(v);
                    min_hit(supports, chosen, best);
                    chosen.pop();
                }
            }
        }
    }
    let mut best = n;
    min_hit(&supports, &mut Vec::new(), &mut best);
    (n - best) as i64
}

/// Jacobian matrix: one row per generator, one column per listed variable.
pub fn jacobian(gens: &[Polynomial], vars: &[usize]) -> PolyMatrix {
    PolyMatrix::from_fn(gens.len(), vars.len(), |i, j| gens[i].partial_derivative(vars[j]))
}

/// Ideal generated by all `m x m` minors of the matrix.
pub fn fitting_ideal(matrix: &PolyMatrix, m: usize) -> Result<IdealPresentation, GroebnerError> {
    if m == 0 || m > matrix.rows().min(matrix.cols()) {
        return Err(GroebnerError::Invalid(format!(
            "minor size {m} out of range for {}x{} matrix",
            matrix.rows(),
            matrix.cols()
        )));
    }
    let universe = matrix.get(0, 0).universe().clone();
    let row_sets = combinations(matrix.rows(), m);
    let col_sets = combinations(matrix.cols(), m);
    let mut gens = Vec::new();
    for rs in &row_sets {
        for cs in &col_sets {
            let minor = matrix.submatrix(rs, cs).determinant()?;
            if !minor.is_zero() {
                gens.push(minor);
            }
        }
    }
    IdealPresentation::new(&universe, gens)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            current.push(v);
            rec(v + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Result of the Jacobian criterion. The criterion assumes the ideal is
/// prime; the caller asserts this and the report records the assumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub dimension: i64,
    pub codim: i64,
    pub is_regular: bool,
    /// The Jacobian criterion's hypothesis, asserted by the caller.
    pub assumed_prime: bool,
}

/// Jacobian criterion: with `m = n - dim`, the variety is regular iff
/// `I + F_m(jacobian)` is the unit ideal.
pub fn regularity_check(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<RegularityReport, GroebnerError> {
    let n = ideal.universe.len() as i64;
    let gb = buchberger(ideal, order, budget)?;
    let dimension = ideal_dimension(&gb);
    let codim = n - dimension;
    if codim <= 0 {
        return Ok(RegularityReport { dimension, codim, is_regular: true, assumed_prime: true });
    }
    let vars: Vec<usize> = (0..ideal.universe.len()).collect();
    let jac = jacobian(ideal.generators(), &vars);
    let m = codim as usize;
    if m > jac.rows().min(jac.cols()) {
        // fewer generators than the codimension: the required minors do not
        // exist, so the criterion cannot certify regularity
        return Ok(RegularityReport { dimension, codim, is_regular: false, assumed_prime: true });
    }
    let fitting = fitting_ideal(&jac, m)?;
    let total = ideal.sum(&fitting)?;
    let is_regular = is_trivial(&total, budget)?;
    Ok(RegularityReport { dimension, codim, is_regular, assumed_prime: true })
}

/// Renders a monomial order in the text-format syntax (`lex`,
/// `degrevlex`, or `block kind(v1,v2) ...`).
pub fn render_order(order: &MonomialOrder, universe: &Universe) -> String {
    match order {
        MonomialOrder::Lex => "lex".to_string(),
        MonomialOrder::DegRevLex => "degrevlex".to_string(),
        MonomialOrder::Block(blocks) => {
            let mut out = String::from("block");
            for b in blocks {
                let kind = match b.kind {
                    OrderKind::Lex => "lex",
                    OrderKind::DegRevLex => "degrevlex",
                };
                let names: Vec<&str> =
                    b.vars.iter().map(|&i| universe.names()[i].as_str()).collect();
                out.push_str(&format!(" {kind}({})", names.join(",")));
            }
            out
        }
    }
}

/// Parses a monomial order from the text-format syntax; block variable
/// names are resolved against the given universe.
pub fn parse_order(text: &str, universe: &Universe) -> Result<MonomialOrder, GroebnerError> {
    let text = text.trim();
    if text == "lex" {
        return Ok(MonomialOrder::Lex);
    }
    if text == "degrevlex" {
        return Ok(MonomialOrder::DegRevLex);
    }
    let rest = text.strip_prefix("block").ok_or_else(|| {
        GroebnerError::Poly(PolyError::InvalidOrder(format!("unknown order `{text}`")))
    })?;
    let mut blocks = Vec::new();
    for piece in rest.split_whitespace() {
        let (kind_text, vars_text) = piece
            .strip_suffix(')')
            .and_then(|p| p.split_once('('))
            .ok_or_else(|| {
                GroebnerError::Poly(PolyError::InvalidOrder(format!(
                    "malformed order block `{piece}`, expected kind(v1,v2,...)"
                )))
            })?;
        let kind = match kind_text {
            "lex" => OrderKind::Lex,
            "degrevlex" => OrderKind::DegRevLex,
            other => {
                return Err(GroebnerError::Poly(PolyError::InvalidOrder(format!(
                    "unknown block kind `{other}`"
                ))))
            }
        };
        let mut vars = Vec::new();
        for name in vars_text.split(',') {
            let name = name.trim();
            let idx = universe.index_of(name).ok_or_else(|| {
                GroebnerError::Poly(PolyError::UnknownVariable(name.to_string()))
            })?;
            vars.push(idx);
        }
        blocks.push(OrderBlock { kind, vars });
    }
    if blocks.is_empty() {
        return Err(GroebnerError::Poly(PolyError::InvalidOrder(
            "block order needs at least one block".to_string(),
        )));
    }
    Ok(MonomialOrder::Block(blocks))
}

/// Serializes an ideal presentation to the text format: a `universe:`
/// header, an `order:` header, then one generator per line.
pub fn ideal_to_text(ideal: &IdealPresentation, order: &MonomialOrder) -> String {
    let mut out = String::new();
    out.push_str("universe: ");
    out.push_str(&ideal.universe.names().join(", "));
    out.push('\n');
    out.push_str("order: ");
    out.push_str(&render_order(order, &ideal.universe));
    out.push('\n');
    for g in &ideal.generators {
        out.push_str(&g.render(order));
        out.push('\n');
    }
    out
}

/// Parses the text format produced by [`ideal_to_text`]. Comment lines
/// start with `#`; blank lines are skipped. Errors carry one-based line
/// and column positions.
pub fn ideal_from_text(
    input: &str,
) -> Result<(IdealPresentation, MonomialOrder), GroebnerError> {
    let mut universe: Option<Universe> = None;
    let mut order: Option<MonomialOrder> = None;
    let mut gens: Vec<Polynomial> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("universe:") {
            let names: Vec<&str> = rest
                .split(',')
                .map(|n| n.trim())
                .filter(|n| !n.is_empty())
                .collect();
            universe = Some(VariableUniverse::new(&names).map_err(GroebnerError::Poly)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("order:") {
            let u = universe.as_ref().ok_or_else(|| {
                GroebnerError::Poly(PolyError::Parse {
                    msg: format!("line {}: order header before universe header", lineno + 1),
                    pos: 0,
                })
            })?;
            order = Some(parse_order(rest, u)?);
            continue;
        }
        let u = universe.as_ref().ok_or_else(|| {
            GroebnerError::Poly(PolyError::Parse {
                msg: format!("line {}: generator before universe header", lineno + 1),
                pos: 0,
            })
        })?;
        let poly = Polynomial::parse(u, line).map_err(|e| match e {
            PolyError::Parse { msg, pos } => GroebnerError::Poly(PolyError::Parse {
                msg: format!("line {}, column {}: {msg}", lineno + 1, pos + 1),
                pos,
            }),
            other => GroebnerError::Poly(other),
        })?;
        gens.push(poly);
    }
    let universe = universe.ok_or_else(|| {
        GroebnerError::Poly(PolyError::Parse {
            msg: "missing universe header".to_string(),
            pos: 0,
        })
    })?;
    let order = order.unwrap_or(MonomialOrder::DegRevLex);
    let ideal = IdealPresentation::new(&universe, gens)?;
    Ok((ideal, order))
}
