//! Mechanism modeling, constraint assembly, and the decomposition-driven
//! analysis pipeline for single-loop linkages with revolute joints,
//! together with two fully worked presets (see [`bricard`] and
//! [`bennett`]) carrying closed-form parametrizations of their motion
//! curves.
//!
//! A mechanism is a cycle of rigid bodies `B0, ..., B_{n-1}` (body `B0`
//! fixed) connected by revolute joints `J0, ..., J_{n-1}`, where `Jl`
//! couples `B_{l-1}` and `Bl`. The orientation of each moving body is an
//! Euler quadruple; the constraint system consists of normalization
//! polynomials, loop-closure rows, and two plane/axis polynomials per
//! joint, with all joint data transported into body-local coordinates at
//! the initial configuration.

pub mod bennett;
pub mod bricard;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::euler::{rotate, EulerError, EulerQuadruple, Vector3};
use crate::groebner::{
    buchberger, regularity_check, Budget, GroebnerBasis, GroebnerError, IdealPresentation,
    RegularityReport,
};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Universe, VariableUniverse};
use crate::revolute::{
    decompose_joint, select_component, specialize_fixed_body, BodySlot, JointFrame, Quad,
    RevoluteError, Vec3,
};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MechanismError {
    Invalid(String),
    /// The initial configuration does not zero the named assembled
    /// generator.
    InitViolation {
        generator: usize,
        description: String,
    },
    /// Parameter values outside the admissible set.
    Inadmissible(String),
    /// A parametrization argument outside the ranges covered by the
    /// motion components.
    OutOfRange(String),
    /// A variable required by an evaluation was not bound.
    UnboundVariable(String),
    /// A closed-form lift hit a vanishing denominator.
    DivisionByZero(String),
    Poly(PolyError),
    Groebner(GroebnerError),
    Euler(EulerError),
    Revolute(RevoluteError),
}

impl From<PolyError> for MechanismError {
    fn from(e: PolyError) -> Self {
        MechanismError::Poly(e)
    }
}

impl From<GroebnerError> for MechanismError {
    fn from(e: GroebnerError) -> Self {
        MechanismError::Groebner(e)
    }
}

impl From<EulerError> for MechanismError {
    fn from(e: EulerError) -> Self {
        MechanismError::Euler(e)
    }
}

impl From<RevoluteError> for MechanismError {
    fn from(e: RevoluteError) -> Self {
        MechanismError::Revolute(e)
    }
}

impl core::fmt::Display for MechanismError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MechanismError::Invalid(s) => write!(f, "invalid mechanism: {s}"),
            MechanismError::InitViolation { generator, description } => {
                write!(f, "initial configuration violates generator {generator} ({description})")
            }
            MechanismError::Inadmissible(s) => write!(f, "inadmissible parameters: {s}"),
            MechanismError::OutOfRange(s) => write!(f, "argument out of range: {s}"),
            MechanismError::UnboundVariable(s) => write!(f, "unbound variable: {s}"),
            MechanismError::DivisionByZero(s) => write!(f, "division by zero: {s}"),
            MechanismError::Poly(e) => write!(f, "{e}"),
            MechanismError::Groebner(e) => write!(f, "{e}"),
            MechanismError::Euler(e) => write!(f, "{e}"),
            MechanismError::Revolute(e) => write!(f, "{e}"),
        }
    }
}

fn s(p: i64, q: i64) -> ExactScalar {
    ExactScalar::ratio(p, q)
}

/// One revolute joint of the loop: the plane pair `{eta, xi}` is carried
/// by the first body of `bodies`, the axis `chi` by the second, all given
/// in world coordinates at the initial configuration.
#[derive(Debug, Clone)]
pub struct JointDef {
    /// `(plane carrier, axis carrier)` as body indices.
    pub bodies: (usize, usize),
    /// The joint's anchor point in world coordinates.
    pub point: Vec3,
    /// Unit rotation axis in world coordinates.
    pub axis: Vec3,
    /// Orthonormal basis of the plane orthogonal to the axis.
    pub plane: (Vec3, Vec3),
}

/// A single-loop (or open-chain) mechanism specification. Body `0` is the
/// fixed body and carries no variables; moving body `l` (for `l >= 1`)
/// owns the quadruple variables `prefixes[l-1]{0..3}`.
#[derive(Debug, Clone)]
pub struct MechanismSpec {
    pub body_names: Vec<String>,
    /// Variable prefixes for the moving bodies `1..n-1`, in order.
    pub prefixes: Vec<String>,
    pub joints: Vec<JointDef>,
    /// When set, the links form a closed loop: joint `l` sits at point
    /// `p_l` and the link vector `v_l = p_{l+1} - p_l` satisfies
    /// `v_l = link_scales[l] * R(init_l) e^1` at the initial configuration.
    pub loop_closure: bool,
    /// Signed link scales, one per body (index `l` for the link leaving
    /// joint `l`). Only used when `loop_closure` is set.
    pub link_scales: Vec<ExactScalar>,
    /// Published essential-variable set used as a fallback when the
    /// generic detection stalls before reaching it.
    pub essential_hint: Option<Vec<String>>,
    /// Published sheet-selection relations over the full universe. The
    /// constraint ideal is invariant under negating any single body's
    /// quadruple (both signs describe the same rotation), so its variety
    /// carries sign-flipped twins of the motion curve that no ideal
    /// operation can separate. Each relation here, linear in one
    /// variable, names the sheet through the initial configuration; it
    /// is only used after the pipeline verifies against the computed
    /// ideal that the variable is indeed constrained up to sign exactly
    /// as the relation claims.
    pub sheet_hints: Vec<Polynomial>,
}

impl MechanismSpec {
    /// The polynomial universe of the assembled system: four variables
    /// per moving body, in body order.
    pub fn universe(&self) -> Universe {
        let refs: Vec<&str> = self.prefixes.iter().map(|p| p.as_str()).collect();
        VariableUniverse::quadruples(&refs)
    }

    pub fn moving_bodies(&self) -> usize {
        self.prefixes.len()
    }

    fn validate(&self) -> Result<(), MechanismError> {
        let n = self.body_names.len();
        if n < 2 {
            return Err(MechanismError::Invalid("need at least two bodies".to_string()));
        }
        if self.prefixes.len() != n - 1 {
            return Err(MechanismError::Invalid(format!(
                "expected {} variable prefixes for {} bodies, got {}",
                n - 1,
                n,
                self.prefixes.len()
            )));
        }
        if self.loop_closure {
            if self.joints.len() != n {
                return Err(MechanismError::Invalid(format!(
                    "a closed loop of {n} bodies needs {n} joints, got {}",
                    self.joints.len()
                )));
            }
            if self.link_scales.len() != n {
                return Err(MechanismError::Invalid(format!(
                    "expected {n} link scales, got {}",
                    self.link_scales.len()
                )));
            }
            for (l, joint) in self.joints.iter().enumerate() {
                let expected = ((l + n - 1) % n, l);
                if joint.bodies != expected {
                    return Err(MechanismError::Invalid(format!(
                        "joint {l} must connect bodies {expected:?} in the loop, got {:?}",
                        joint.bodies
                    )));
                }
            }
        } else {
            for (l, joint) in self.joints.iter().enumerate() {
                let (i, j) = joint.bodies;
                if i >= n || j >= n || i == j {
                    return Err(MechanismError::Invalid(format!(
                        "joint {l} connects invalid body pair {:?}",
                        joint.bodies
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Exact orientations of the moving bodies `1..n-1` at assembly time.
#[derive(Debug, Clone)]
pub struct InitialConfiguration {
    pub quads: Vec<Quad>,
}

impl InitialConfiguration {
    /// The configuration as a flat coordinate vector in universe order.
    pub fn point(&self) -> Vec<ExactScalar> {
        let mut out = Vec::with_capacity(4 * self.quads.len());
        for q in &self.quads {
            out.extend(q.iter().cloned());
        }
        out
    }
}

fn norm2_3(v: &Vec3) -> ExactScalar {
    &(&(&v[0] * &v[0]) + &(&v[1] * &v[1])) + &(&v[2] * &v[2])
}

fn dot3(a: &Vec3, b: &Vec3) -> ExactScalar {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub(crate) fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Rotates a concrete world vector into the local frame of a body whose
/// initial orientation is `g`: `w_local = R(g)^T w = R(conj(g)) w`.
fn transport_local(g: &Quad, w: &Vec3) -> Result<Vec3, MechanismError> {
    let scratch = VariableUniverse::new::<&str>(&[])?;
    let quad = EulerQuadruple::concrete(&scratch, g);
    let vec = Vector3::concrete(&scratch, w);
    Ok(rotate(&quad.conjugate(), &vec).as_constants()?)
}

/// Builds the local joint frame for one joint: the plane pair transported
/// into the plane carrier's frame, the axis into the axis carrier's
/// frame. Body 0 is fixed, so its vectors stay in world coordinates.
fn local_frame(
    _spec: &MechanismSpec,
    init: &InitialConfiguration,
    joint: &JointDef,
) -> Result<JointFrame, MechanismError> {
    let (pi, ai) = joint.bodies;
    let identity: Quad = [s(1, 1), s(0, 1), s(0, 1), s(0, 1)];
    let g_of = |body: usize| -> &Quad {
        if body == 0 {
            &identity
        } else {
            &init.quads[body - 1]
        }
    };
    let eta = transport_local(g_of(pi), &joint.plane.0)?;
    let xi = transport_local(g_of(pi), &joint.plane.1)?;
    let chi = transport_local(g_of(ai), &joint.axis)?;
    Ok(JointFrame::new(eta, xi, chi)?)
}

/// The two constraint polynomials of one joint over the full universe:
/// the rotated plane pair stays orthogonal to the rotated axis.
fn joint_polynomials(
    spec: &MechanismSpec,
    init: &InitialConfiguration,
    joint: &JointDef,
    universe: &Universe,
) -> Result<[Polynomial; 2], MechanismError> {
    let frame = local_frame(spec, init, joint)?;
    let (pi, ai) = joint.bodies;
    let rotated = |body: usize, v: &Vec3| -> Result<Vector3, MechanismError> {
        let vec = Vector3::concrete(universe, v);
        if body == 0 {
            Ok(vec)
        } else {
            let quad = EulerQuadruple::symbolic_prefixed(universe, &spec.prefixes[body - 1])?;
            Ok(rotate(&quad, &vec))
        }
    };
    let plane_eta = rotated(pi, &frame.eta)?;
    let plane_xi = rotated(pi, &frame.xi)?;
    let axis = rotated(ai, &frame.chi)?;
    Ok([plane_eta.dot(&axis), plane_xi.dot(&axis)])
}

/// Assembles the full constraint ideal of the mechanism: one
/// normalization polynomial per moving body, three loop-closure rows
/// (when the loop flag is set), and two polynomials per joint, with
/// every generator checked to vanish exactly at the initial
/// configuration.
pub fn assemble_constraints(
    spec: &MechanismSpec,
    init: &InitialConfiguration,
) -> Result<IdealPresentation, MechanismError> {
    spec.validate()?;
    if init.quads.len() != spec.moving_bodies() {
        return Err(MechanismError::Invalid(format!(
            "expected {} initial quadruples, got {}",
            spec.moving_bodies(),
            init.quads.len()
        )));
    }
    let universe = spec.universe();
    let one = Polynomial::one(&universe);
    let mut gens = Vec::new();
    let mut labels = Vec::new();

    for prefix in &spec.prefixes {
        let quad = EulerQuadruple::symbolic_prefixed(&universe, prefix)?;
        gens.push(&quad.norm_squared() - &one);
        labels.push(format!("normalization of body variables '{prefix}'"));
    }

    if spec.loop_closure {
        let n = spec.body_names.len();
        // consistency of the declared scales with the joint points
        for l in 0..n {
            let v = sub3(&spec.joints[(l + 1) % n].point, &spec.joints[l].point);
            let g = if l == 0 {
                [s(1, 1), s(0, 1), s(0, 1), s(0, 1)]
            } else {
                init.quads[l - 1].clone()
            };
            let e1_world = transport_local(&conjugate_quad(&g), &[s(1, 1), s(0, 1), s(0, 1)])?;
            let scaled = [
                &e1_world[0] * &spec.link_scales[l],
                &e1_world[1] * &spec.link_scales[l],
                &e1_world[2] * &spec.link_scales[l],
            ];
            if sub3(&v, &scaled).iter().any(|c| !c.is_zero()) {
                return Err(MechanismError::Invalid(format!(
                    "link {l}: p_{}-p_{l} does not equal scale * R(init) e1",
                    (l + 1) % n
                )));
            }
        }
        let e1 = Vector3::standard_unit(&universe, 1);
        let mut total = e1.scale(&spec.link_scales[0]);
        for l in 1..n {
            let quad = EulerQuadruple::symbolic_prefixed(&universe, &spec.prefixes[l - 1])?;
            total = total.add(&rotate(&quad, &e1).scale(&spec.link_scales[l]));
        }
        for i in 0..3 {
            gens.push(total.entry(i).clone());
            labels.push(format!("loop closure row {i}"));
        }
    }

    for (l, joint) in spec.joints.iter().enumerate() {
        let [p, q] = joint_polynomials(spec, init, joint, &universe)?;
        gens.push(p);
        labels.push(format!("joint {l} plane-eta constraint"));
        gens.push(q);
        labels.push(format!("joint {l} plane-xi constraint"));
    }

    let point = init.point();
    for (idx, g) in gens.iter().enumerate() {
        if !g.eval_exact(&point).is_zero() {
            return Err(MechanismError::InitViolation {
                generator: idx,
                description: labels[idx].clone(),
            });
        }
    }
    Ok(IdealPresentation::new(&universe, gens)?)
}

/// Conjugate of a concrete quadruple (inverse rotation for unit norm).
fn conjugate_quad(g: &Quad) -> Quad {
    [g[0].clone(), -&g[1], -&g[2], -&g[3]]
}

/// The outcome of the analysis pipeline.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    /// The raw assembled constraint ideal.
    pub assembled: IdealPresentation,
    /// Per joint, the selected prime component embedded into the full
    /// universe.
    pub selected: Vec<IdealPresentation>,
    /// Selected components plus loop rows and normalizations.
    pub combined: IdealPresentation,
    /// Names of the variables surviving elimination.
    pub essential: Vec<String>,
    /// Rational expressions `(name, numerator, denominator)` over the
    /// essential universe for every eliminated variable.
    pub lift: Vec<(String, Polynomial, Polynomial)>,
    /// Reduced basis of the elimination ideal over the essential
    /// universe.
    pub reduced: GroebnerBasis,
    /// Krull dimension of the motion variety.
    pub dimension: i64,
    /// Flags the degenerate sub-case where the initial configuration
    /// sits in a zero-dimensional component.
    pub zero_dimensional: bool,
    pub regularity: RegularityReport,
    /// Human-readable notes about branch selections and factor splits.
    pub notes: Vec<String>,
}

impl AnalysisReport {
    /// Lifts a point of the essential universe to the full configuration
    /// space using the recorded expressions, returning values in the
    /// combined universe's variable order.
    pub fn lift_point(&self, essential_point: &[ExactScalar]) -> Result<Vec<ExactScalar>, MechanismError> {
        let universe = self.combined.universe();
        let mut bound: BTreeMap<String, ExactScalar> = BTreeMap::new();
        for (i, name) in self.essential.iter().enumerate() {
            bound.insert(name.clone(), essential_point[i].clone());
        }
        for (name, num, den) in &self.lift {
            let d = den.eval_exact(essential_point);
            if d.is_zero() {
                return Err(MechanismError::DivisionByZero(format!(
                    "lift denominator of '{name}'"
                )));
            }
            let value = num.eval_exact(essential_point).checked_div(&d).map_err(|_| {
                MechanismError::DivisionByZero(format!("lift denominator of '{name}'"))
            })?;
            bound.insert(name.clone(), value);
        }
        let mut out = Vec::with_capacity(universe.len());
        for name in universe.names() {
            let v = bound
                .get(name)
                .ok_or_else(|| MechanismError::UnboundVariable(name.to_string()))?;
            out.push(v.clone());
        }
        Ok(out)
    }
}

/// Internal state of the elimination fixpoint: generators over a
/// shrinking universe together with the restriction of the initial point.
pub(crate) struct Reduction {
    pub(crate) universe: Universe,
    pub(crate) gens: Vec<Polynomial>,
    pub(crate) point: Vec<ExactScalar>,
    /// `(name, numerator, denominator, universe after the substitution)`:
    /// the eliminated variable equals `numerator / denominator` on the
    /// selected component.
    pub(crate) lift: Vec<(String, Polynomial, Polynomial, Universe)>,
    pub(crate) notes: Vec<String>,
    /// Variables never eliminated (the published essential set, when
    /// one is declared).
    pub(crate) protected: Vec<String>,
    /// Remaining sheet-selection relations (see
    /// [`MechanismSpec::sheet_hints`]); consumed as they are applied.
    pub(crate) hints: Vec<Polynomial>,
}

impl Reduction {
    fn is_protected(&self, var: usize) -> bool {
        let name = self.universe.name(var);
        self.protected.iter().any(|p| p == name)
    }
}

impl Reduction {
    /// Substitutes `name := expr` (with `expr` free of `name`),
    /// shrinking the universe by one variable.
    pub(crate) fn substitute(&mut self, name: &str, expr: &Polynomial) -> Result<(), MechanismError> {
        let idx = self
            .universe
            .index_of(name)
            .ok_or_else(|| MechanismError::UnboundVariable(name.to_string()))?;
        let kept: Vec<String> = self
            .universe
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, n)| n.to_string())
            .collect();
        let kept_refs: Vec<&str> = kept.iter().map(|n| n.as_str()).collect();
        let target = VariableUniverse::new(&kept_refs)?;
        let expr_small = expr.embed(&target)?;
        let mut bindings = BTreeMap::new();
        bindings.insert(name.to_string(), expr_small.clone());
        let mut new_gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let h = g.substitute(&target, &bindings)?;
            if !h.is_zero() {
                new_gens.push(h);
            }
        }
        self.lift.push((name.to_string(), expr_small, Polynomial::one(&target), target.clone()));
        self.gens = new_gens;
        let mut new_point = Vec::with_capacity(self.point.len() - 1);
        for (i, v) in self.point.iter().enumerate() {
            if i != idx {
                new_point.push(v.clone());
            }
        }
        self.point = new_point;
        self.universe = target;
        // sanity: the restricted point still zeroes every generator
        debug_assert!(self.gens.iter().all(|g| g.eval_exact(&self.point).is_zero()));
        Ok(())
    }

    /// One pass of monic-linear extraction: finds a generator of shape
    /// `c*x + r` with scalar `c` and `r` free of `x`, and substitutes
    /// `x = -r/c`. Returns whether anything was extracted.
    pub(crate) fn extract_linear(&mut self) -> Result<bool, MechanismError> {
        for gi in 0..self.gens.len() {
            let g = self.gens[gi].clone();
            for var in g.support() {
                if self.is_protected(var) {
                    continue;
                }
                if let Some((c, rest)) = g.linear_solve_for(var) {
                    let expr = rest.scale(&-&c.recip().map_err(|_| {
                        MechanismError::DivisionByZero("linear coefficient".to_string())
                    })?);
                    let name = self.universe.name(var).to_string();
                    self.substitute(&name, &expr)?;
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Perfect-square extraction: a generator `c*x^2 - c*s^2` with `s` a
    /// single term forces `x = +/- s`; the sign is chosen so that the
    /// initial point stays on the selected branch.
    pub(crate) fn extract_square(&mut self) -> Result<bool, MechanismError> {
        for gi in 0..self.gens.len() {
            let g = self.gens[gi].clone();
            for var in g.support() {
                if self.is_protected(var) || g.degree_in(var) != 2 {
                    continue;
                }
                let Some(square) = square_split(&g, var) else { continue };
                let x_init = &self.point[var];
                let s_init = square.eval_exact(&self.point);
                let expr = if *x_init == s_init {
                    square.clone()
                } else if *x_init == -&s_init {
                    -&square
                } else {
                    continue;
                };
                let name = self.universe.name(var).to_string();
                self.notes.push(format!(
                    "perfect-square generator split: chose the branch of '{name}' containing the initial point"
                ));
                self.substitute(&name, &expr)?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Single-variable factor split: a generator `x^k * g` with `x`
    /// nonzero at the initial point is replaced by `g` (the branch
    /// containing the point); when `x` vanishes at the point and `g`
    /// does not, `x = 0` is substituted instead.
    pub(crate) fn extract_factor(&mut self) -> Result<bool, MechanismError> {
        for gi in 0..self.gens.len() {
            let g = &self.gens[gi];
            if g.is_constant() {
                continue;
            }
            for var in g.support() {
                let Some(cofactor) = single_variable_factor(g, var) else { continue };
                let x_init = &self.point[var];
                if !x_init.is_zero() {
                    let name = self.universe.name(var).to_string();
                    self.notes.push(format!(
                        "factored generator: discarded the '{name} = 0' branch (variable nonzero at the initial point)"
                    ));
                    self.gens[gi] = cofactor;
                    return Ok(true);
                }
                if !self.is_protected(var) && !cofactor.eval_exact(&self.point).is_zero() {
                    let name = self.universe.name(var).to_string();
                    let zero = Polynomial::zero(&self.universe);
                    self.notes.push(format!(
                        "factored generator: kept the '{name} = 0' branch (cofactor nonzero at the initial point)"
                    ));
                    self.substitute(&name, &zero)?;
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Rational-linear extraction: a generator `A1(y)*x + A0(y)` with a
    /// non-scalar coefficient `A1` that does not vanish at the initial
    /// point determines `x = -A0/A1` on the component through the point.
    /// Every other generator is pseudo-substituted (cleared of `x` by
    /// multiplying with the appropriate power of `A1`), the variable is
    /// dropped with a rational lift entry, and the component where `A1`
    /// vanishes is discarded by saturation.
    pub(crate) fn extract_rational(&mut self, budget: &Budget) -> Result<bool, MechanismError> {
        for gi in 0..self.gens.len() {
            let g = self.gens[gi].clone();
            for var in g.support() {
                if self.is_protected(var) || g.degree_in(var) != 1 {
                    continue;
                }
                let coeffs = g.coefficients_in(var);
                let a1 = coeffs[1].clone();
                if a1.is_constant() {
                    // scalar coefficients belong to extract_linear
                    continue;
                }
                if a1.eval_exact(&self.point).is_zero() {
                    continue;
                }
                let neg_a0 = -&coeffs[0];
                let mut new_gens: Vec<Polynomial> = Vec::with_capacity(self.gens.len());
                for (hi, h) in self.gens.iter().enumerate() {
                    if hi == gi {
                        continue;
                    }
                    let bs = h.coefficients_in(var);
                    let d = bs.len() - 1;
                    let mut acc = Polynomial::zero(&self.universe);
                    for (j, b) in bs.iter().enumerate() {
                        let mut term = b.clone();
                        for _ in 0..j {
                            term = &term * &neg_a0;
                        }
                        for _ in 0..(d - j) {
                            term = &term * &a1;
                        }
                        acc = &acc + &term;
                    }
                    if !acc.is_zero() {
                        new_gens.push(acc);
                    }
                }
                let name = self.universe.name(var).to_string();
                let kept: Vec<String> = self
                    .universe
                    .names()
                    .iter()
                    .filter(|n| n.as_str() != name)
                    .map(|n| n.to_string())
                    .collect();
                let kept_refs: Vec<&str> = kept.iter().map(|n| n.as_str()).collect();
                let target = VariableUniverse::new(&kept_refs)?;
                let num = neg_a0.embed(&target)?;
                let den = a1.embed(&target)?;
                self.gens = new_gens
                    .iter()
                    .map(|g| g.embed(&target))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut new_point = Vec::with_capacity(self.point.len() - 1);
                for (i, v) in self.point.iter().enumerate() {
                    if i != var {
                        new_point.push(v.clone());
                    }
                }
                self.point = new_point;
                self.universe = target.clone();
                self.lift.push((name.clone(), num, den.clone(), target));
                self.notes.push(format!(
                    "solved '{name}' rationally; discarded the branch where its coefficient vanishes"
                ));
                // drop the components the division is blind to
                let ideal = IdealPresentation::new(&self.universe, self.gens.clone())?;
                let sat = crate::groebner::saturate(&ideal, &den, budget)?;
                self.gens = sat.generators().to_vec();
                debug_assert!(self.gens.iter().all(|g| g.eval_exact(&self.point).is_zero()));
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sheet selection for a variable the system constrains only up to
    /// a choice among finitely many components (the quadruple signs of
    /// the double cover). A published relation `h`, linear in one
    /// variable and vanishing at the initial point, is adopted when the
    /// saturation of the current ideal by `h` excludes the initial
    /// point: the variety then splits as `V(I : h^inf) u (V(I) n V(h))`
    /// with every component through the point inside `V(h)`, so adding
    /// `h` discards only components the point does not lie on.
    pub(crate) fn extract_sheet_hint(&mut self, budget: &Budget) -> Result<bool, MechanismError> {
        for hi in 0..self.hints.len() {
            let Ok(h) = self.hints[hi].embed(&self.universe) else { continue };
            if !h.eval_exact(&self.point).is_zero() {
                continue;
            }
            for var in h.support() {
                if self.is_protected(var) || h.degree_in(var) != 1 {
                    continue;
                }
                let coeffs = h.coefficients_in(var);
                if coeffs[1].eval_exact(&self.point).is_zero() {
                    continue;
                }
                if !self.gens.iter().any(|g| g.support().contains(&var)) {
                    continue;
                }
                let ideal = IdealPresentation::new(&self.universe, self.gens.clone())?;
                let sat = crate::groebner::saturate(&ideal, &h, budget)?;
                if sat.generators().iter().all(|g| g.eval_exact(&self.point).is_zero()) {
                    // the point also lies on components where the
                    // relation fails; adopting it would be unsound
                    continue;
                }
                let name = self.universe.name(var).to_string();
                self.notes.push(format!(
                    "the system constrains '{name}' only up to the cover's sheet choice; selected the sheet through the initial configuration"
                ));
                self.gens.push(h);
                self.hints.remove(hi);
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// If `p = c*x^2 + r` with scalar `c`, `r` free of `x`, and `-r/c` the
/// square of a single term, returns that term (with nonnegative leading
/// sign choice).
fn square_split(p: &Polynomial, var: usize) -> Option<Polynomial> {
    let universe = p.universe().clone();
    let n = universe.len();
    let x2 = crate::poly::Monomial::from_exps({
        let mut e = vec![0u32; n];
        e[var] = 2;
        e
    });
    let mut c: Option<ExactScalar> = None;
    let mut rest: Vec<(crate::poly::Monomial, ExactScalar)> = Vec::new();
    for (m, coeff) in p.terms() {
        if *m == x2 {
            c = Some(coeff.clone());
        } else if m.exp(var) != 0 {
            return None;
        } else {
            rest.push((m.clone(), coeff.clone()));
        }
    }
    let c = c?;
    // rest must be -c * (single term)^2
    if rest.len() > 1 {
        return None;
    }
    if rest.is_empty() {
        return Some(Polynomial::zero(&universe));
    }
    let (m, coeff) = rest[0].clone();
    let ratio = -&coeff.checked_div(&c).ok()?;
    let root_coeff = ratio.sqrt_exact()?;
    let mut half = vec![0u32; n];
    for (i, e) in m.exps().iter().enumerate() {
        if e % 2 != 0 {
            return None;
        }
        half[i] = e / 2;
    }
    Some(Polynomial::from_terms(
        &universe,
        [(crate::poly::Monomial::from_exps(half), root_coeff)],
    ))
}

/// If every term of `p` is divisible by `var`, returns `p / var^k` for
/// the maximal such `k >= 1`.
fn single_variable_factor(p: &Polynomial, var: usize) -> Option<Polynomial> {
    let universe = p.universe().clone();
    let mut k = u32::MAX;
    for (m, _) in p.terms() {
        k = k.min(m.exp(var));
    }
    if k == 0 || k == u32::MAX {
        return None;
    }
    let mut out: Vec<(crate::poly::Monomial, ExactScalar)> = Vec::new();
    for (m, c) in p.terms() {
        let mut exps = m.exps().to_vec();
        exps[var] -= k;
        out.push((crate::poly::Monomial::from_exps(exps), c.clone()));
    }
    Some(Polynomial::from_terms(&universe, out))
}

/// The full analysis pipeline: decomposes every joint's constraint ideal,
/// selects the component containing the initial configuration, eliminates
/// variables via monic-linear relations, perfect-square branch picks, and
/// single-variable factor splits, and reports the reduced basis over the
/// surviving (essential) variables together with dimension and the
/// Jacobian regularity verdict.
pub fn analyze(
    spec: &MechanismSpec,
    init: &InitialConfiguration,
    budget: &Budget,
) -> Result<AnalysisReport, MechanismError> {
    let assembled = assemble_constraints(spec, init)?;
    let init_point = init.point();
    let (selected, combined, notes) = combined_system(spec, init, &assembled, budget)?;
    analyze_combined(spec, assembled, selected, combined, init_point, notes, budget)
}

/// Builds the per-joint selected components and the combined system
/// (components + normalizations + loop rows) over the full universe.
pub(crate) fn combined_system(
    spec: &MechanismSpec,
    init: &InitialConfiguration,
    assembled: &IdealPresentation,
    budget: &Budget,
) -> Result<(Vec<IdealPresentation>, IdealPresentation, Vec<String>), MechanismError> {
    let universe = assembled.universe().clone();
    let one = Polynomial::one(&universe);

    let identity: Quad = [s(1, 1), s(0, 1), s(0, 1), s(0, 1)];
    let mut selected = Vec::new();
    let mut notes = Vec::new();
    for (l, joint) in spec.joints.iter().enumerate() {
        let frame = local_frame(spec, init, joint)?;
        let (pi, ai) = joint.bodies;
        let component = if pi != 0 && ai != 0 {
            let pa = &spec.prefixes[pi - 1];
            let pb = &spec.prefixes[ai - 1];
            let decomp = decompose_joint(&frame, pa, pb, budget)?;
            let mut point = init.quads[pi - 1].to_vec();
            point.extend(init.quads[ai - 1].iter().cloned());
            select_component(&decomp.plus, &decomp.minus, &point)?
        } else {
            // one side fixed: decompose with a scratch prefix on the
            // fixed slot, then pin it to the identity rotation
            let (scratch_a, scratch_b, slot, moving) = if pi == 0 {
                ("fixedbody".to_string(), spec.prefixes[ai - 1].clone(), BodySlot::First, ai)
            } else {
                (spec.prefixes[pi - 1].clone(), "fixedbody".to_string(), BodySlot::Second, pi)
            };
            let decomp = decompose_joint(&frame, &scratch_a, &scratch_b, budget)?;
            let (plus, minus) = specialize_fixed_body(&decomp, &identity, slot)?;
            let point = init.quads[moving - 1].to_vec();
            let chosen = select_component(&plus, &minus, &point)?;
            // reduce the four-variable component so that its linear
            // relations become explicit generators
            buchberger(&chosen, &MonomialOrder::DegRevLex, budget)?.as_ideal()
        };
        notes.push(format!("joint {l}: selected the component containing the initial configuration"));
        let embedded: Vec<Polynomial> = component
            .generators()
            .iter()
            .map(|g| g.embed(&universe))
            .collect::<Result<Vec<_>, _>>()?;
        selected.push(IdealPresentation::new(&universe, embedded)?);
    }

    // combined system: selected components + loop rows + normalizations
    let mut combined_gens: Vec<Polynomial> = Vec::new();
    for component in &selected {
        for g in component.generators() {
            if !combined_gens.contains(g) {
                combined_gens.push(g.clone());
            }
        }
    }
    for prefix in &spec.prefixes {
        let quad = EulerQuadruple::symbolic_prefixed(&universe, prefix)?;
        let norm = &quad.norm_squared() - &one;
        if !combined_gens.contains(&norm) {
            combined_gens.push(norm);
        }
    }
    if spec.loop_closure {
        // loop rows are the generators following the normalizations in
        // the assembled ideal
        let n_bodies = spec.moving_bodies();
        for g in &assembled.generators()[n_bodies..n_bodies + 3] {
            combined_gens.push(g.clone());
        }
    }
    let combined = IdealPresentation::new(&universe, combined_gens)?;
    Ok((selected, combined, notes))
}

/// Substitutes rational bindings (over the essential universe) into a
/// polynomial, one variable at a time with denominator clearing, and
/// returns the result as a `(numerator, denominator)` pair over the
/// essential universe.
pub(crate) fn resolve_rational(
    p: &Polynomial,
    bindings: &BTreeMap<String, (Polynomial, Polynomial)>,
    essential: &Universe,
) -> Result<(Polynomial, Polynomial), MechanismError> {
    let u = p.universe().clone();
    let mut num = p.clone();
    let mut den = Polynomial::one(&u);
    loop {
        let bound = num
            .support()
            .into_iter()
            .find(|v| bindings.contains_key(u.name(*v)));
        let Some(var) = bound else { break };
        let (bn, bd) = &bindings[u.name(var)];
        let bn_u = bn.embed(&u)?;
        let bd_u = bd.embed(&u)?;
        let bs = num.coefficients_in(var);
        let d = bs.len() - 1;
        let mut acc = Polynomial::zero(&u);
        for (j, b) in bs.iter().enumerate() {
            let mut t = b.clone();
            for _ in 0..j {
                t = &t * &bn_u;
            }
            for _ in 0..(d - j) {
                t = &t * &bd_u;
            }
            acc = &acc + &t;
        }
        num = acc;
        for _ in 0..d {
            den = &den * &bd_u;
        }
    }
    Ok((num.embed(essential)?, den.embed(essential)?))
}

/// The elimination stage of [`analyze`], operating on a prebuilt
/// combined system.
fn analyze_combined(
    spec: &MechanismSpec,
    assembled: IdealPresentation,
    selected: Vec<IdealPresentation>,
    combined: IdealPresentation,
    init_point: Vec<ExactScalar>,
    mut notes: Vec<String>,
    budget: &Budget,
) -> Result<AnalysisReport, MechanismError> {
    let universe = combined.universe().clone();

    // elimination fixpoint
    let mut red = Reduction {
        universe: universe.clone(),
        gens: combined.generators().to_vec(),
        point: init_point.clone(),
        lift: Vec::new(),
        notes: Vec::new(),
        protected: spec.essential_hint.clone().unwrap_or_default(),
        hints: spec.sheet_hints.clone(),
    };
    while red.extract_linear()? {}

    // staged introduction of the body blocks: computing the basis of the
    // sub-system supported on the first k bodies before admitting the
    // next block keeps the intermediate bases far smaller than a single
    // whole-system computation
    for k in 1..=spec.prefixes.len() {
        loop {
            let allowed: Vec<usize> = (0..red.universe.len())
                .filter(|v| {
                    let name = red.universe.name(*v);
                    spec.prefixes[..k]
                        .iter()
                        .any(|p| name.len() == p.len() + 1 && name.starts_with(p.as_str()))
                })
                .collect();
            let (inside, outside): (Vec<Polynomial>, Vec<Polynomial>) = red
                .gens
                .iter()
                .cloned()
                .partition(|g| g.support().iter().all(|v| allowed.contains(v)));
            if !inside.is_empty() {
                let stage_gb = buchberger(
                    &IdealPresentation::new(&red.universe, inside)?,
                    &MonomialOrder::DegRevLex,
                    budget,
                )?;
                red.gens = stage_gb.elements().to_vec();
                red.gens.extend(outside);
            }
            let mut progressed = false;
            while red.extract_linear()? {
                progressed = true;
            }
            if !progressed && red.extract_square()? {
                progressed = true;
            }
            if !progressed && red.extract_factor()? {
                progressed = true;
            }
            // rational elimination and sheet selection wait for the main
            // loop: both need the whole system in view, and their
            // saturation / membership computations are only affordable
            // once staging has shrunk it
            if !progressed {
                break;
            }
        }
    }

    let mut gb;
    loop {
        gb = buchberger(
            &IdealPresentation::new(&red.universe, red.gens.clone())?,
            &MonomialOrder::DegRevLex,
            budget,
        )?;
        red.gens = gb.elements().to_vec();
        let mut progressed = false;
        while red.extract_linear()? {
            progressed = true;
        }
        if !progressed && red.extract_square()? {
            progressed = true;
            while red.extract_linear()? {
                progressed = true;
            }
        }
        if !progressed && red.extract_factor()? {
            progressed = true;
        }
        if !progressed && red.extract_sheet_hint(budget)? {
            progressed = true;
        }
        if !progressed && red.extract_rational(budget)? {
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    // fall back to the published essential set when detection stalls
    if let Some(hint) = &spec.essential_hint {
        let extra: Vec<String> = red
            .universe
            .names()
            .iter()
            .filter(|n| !hint.iter().any(|h| h == *n))
            .map(|n| n.to_string())
            .collect();
        if !extra.is_empty() && hint.iter().all(|h| red.universe.index_of(h).is_some()) {
            let drop: Vec<usize> =
                extra.iter().filter_map(|n| red.universe.index_of(n)).collect();
            let ideal = IdealPresentation::new(&red.universe, red.gens.clone())?;
            let order = MonomialOrder::elimination(
                &drop,
                &(0..red.universe.len()).filter(|v| !drop.contains(v)).collect::<Vec<_>>(),
                crate::poly::OrderKind::DegRevLex,
            );
            let elim_gb = buchberger(&ideal, &order, budget)?;
            // harvest a polynomial lift for each dropped variable
            let mut resolved = true;
            let mut lifts: Vec<(String, Polynomial)> = Vec::new();
            for name in &extra {
                let var = Polynomial::var_named(&red.universe, name)?;
                let nf = crate::groebner::normal_form(&var, &elim_gb);
                if nf.support().iter().any(|v| drop.contains(v)) {
                    resolved = false;
                    break;
                }
                lifts.push((name.clone(), nf));
            }
            if resolved {
                red.notes.push(format!(
                    "published essential set used to eliminate {} remaining variables",
                    extra.len()
                ));
                for (name, expr) in lifts {
                    red.substitute(&name, &expr)?;
                }
                gb = buchberger(
                    &IdealPresentation::new(&red.universe, red.gens.clone())?,
                    &MonomialOrder::DegRevLex,
                    budget,
                )?;
            }
        }
    }

    // finalize the lift over the essential universe: resolve each entry's
    // rational expression against the entries recorded after it
    let essential: Vec<String> = red.universe.names().iter().map(|n| n.to_string()).collect();
    let mut final_lift: Vec<(String, Polynomial, Polynomial)> = Vec::new();
    let mut bindings: BTreeMap<String, (Polynomial, Polynomial)> = BTreeMap::new();
    for (name, num, den, _) in red.lift.iter().rev() {
        let (nn, nd) = resolve_rational(num, &bindings, &red.universe)?;
        let (dn, dd) = resolve_rational(den, &bindings, &red.universe)?;
        let value = (&nn * &dd, &nd * &dn);
        bindings.insert(name.clone(), value.clone());
        final_lift.push((name.clone(), value.0, value.1));
    }
    final_lift.reverse();

    // invariant: the initial point zeroes every reduced generator
    for (i, g) in gb.elements().iter().enumerate() {
        if !g.eval_exact(&red.point).is_zero() {
            return Err(MechanismError::InitViolation {
                generator: i,
                description: "reduced basis element".to_string(),
            });
        }
    }

    let dimension = crate::groebner::ideal_dimension(&gb);
    let elimination = gb.as_ideal();
    let regularity = regularity_check(&elimination, &MonomialOrder::DegRevLex, budget)?;
    notes.extend(red.notes.iter().cloned());
    if dimension == 0 {
        notes.push("initial configuration lies in a zero-dimensional component".to_string());
    }

    Ok(AnalysisReport {
        assembled,
        selected,
        combined,
        essential,
        lift: final_lift,
        reduced: gb,
        dimension,
        zero_dimensional: dimension == 0,
        regularity,
        notes,
    })
}

/// Maximum absolute residual of the generators at a float assignment
/// (variable name -> value). Coefficients are converted exactly at use.
pub fn residual_sample(
    generators: &[Polynomial],
    assignment: &BTreeMap<String, f64>,
) -> Result<f64, MechanismError> {
    let mut max = 0.0f64;
    for g in generators {
        let universe = g.universe();
        let mut point = Vec::with_capacity(universe.len());
        for name in universe.names() {
            match assignment.get(name) {
                Some(v) => point.push(*v),
                None => return Err(MechanismError::UnboundVariable(name.to_string())),
            }
        }
        let r = libm::fabs(g.eval_f64(&point));
        if r > max {
            max = r;
        }
    }
    Ok(max)
}

/// The orthonormal plane pair `{eta, xi}` completing a unit axis `chi`
/// into a positively oriented frame (the first two columns of the
/// rotation taking `e^3` to `chi`). Requires `chi != -e^3`.
pub fn plane_frame_for_axis(chi: &Vec3) -> Result<(Vec3, Vec3), MechanismError> {
    if norm2_3(chi) != s(1, 1) {
        return Err(MechanismError::Invalid("axis must be unit".to_string()));
    }
    let one = s(1, 1);
    let denom = &one + &chi[2];
    if denom.is_zero() {
        return Err(MechanismError::Invalid(
            "axis opposite to e3 has no canonical plane frame".to_string(),
        ));
    }
    let inv = denom.recip().map_err(|_| {
        MechanismError::DivisionByZero("1 + chi_3".to_string())
    })?;
    let eta = [
        &one - &(&(&chi[0] * &chi[0]) * &inv),
        -&(&(&chi[0] * &chi[1]) * &inv),
        -&chi[0],
    ];
    let xi = [
        -&(&(&chi[0] * &chi[1]) * &inv),
        &chi[2] + &(&(&chi[0] * &chi[0]) * &inv),
        -&chi[1],
    ];
    debug_assert!(norm2_3(&eta) == s(1, 1) && norm2_3(&xi) == s(1, 1));
    debug_assert!(dot3(&eta, &xi).is_zero() && dot3(&eta, chi).is_zero() && dot3(&xi, chi).is_zero());
    Ok((eta, xi))
}
