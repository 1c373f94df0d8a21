//! Prime decomposition of revolute-joint constraint ideals.
//!
//! A revolute joint between bodies with Euler parameters a and b, axis chi
//! (in the b-body's local frame), and orthogonal-plane basis {eta, xi} (in
//! the a-body's local frame) is constrained by two degree-4 polynomials.
//! The constraint ideal is never prime: it splits into two components that
//! correspond to the two ways of assembling the joint (axis orientations
//! agreeing or opposing), and the components have disjoint varieties, so a
//! mechanism stays on its initial component forever.
//!
//! In the model frame (eta = e1, xi = e2, chi = e3) the two components are
//! generated by ten explicit degree-2 polynomials. This module pulls that
//! canonical decomposition back through rotation quadruples alpha (aligning
//! e1, e2 with eta, xi) and beta (aligning e3 with chi), producing the
//! decomposition for an arbitrary frame without ever running a general
//! primary-decomposition algorithm.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::euler::{matrix_ktilde, rotate, EulerError, EulerQuadruple, Vector3};
use crate::groebner::{buchberger, is_trivial, normal_form, Budget, GroebnerError, IdealPresentation};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Universe, VariableUniverse};
use crate::scalar::{BigInteger, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RevoluteError {
    FrameNotOrthonormal(String),
    /// A pulled-back generator mixed bilinear and pure-quadratic terms, so
    /// no rational clearing factor exists. Cannot happen for the canonical
    /// table; kept as an internal-consistency guard.
    MixedTermStructure,
    /// A constructed component failed one of its defining postconditions.
    ComponentCheck(String),
    PointInBothComponents,
    PointInNoComponent(String),
    Poly(PolyError),
    Groebner(GroebnerError),
    Euler(EulerError),
}

impl fmt::Display for RevoluteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RevoluteError::FrameNotOrthonormal(m) => write!(f, "frame is not orthonormal: {m}"),
            RevoluteError::MixedTermStructure => {
                write!(f, "generator mixes bilinear and pure quadratic terms")
            }
            RevoluteError::ComponentCheck(m) => write!(f, "component postcondition failed: {m}"),
            RevoluteError::PointInBothComponents => {
                write!(f, "point lies in both components; the components are not disjoint")
            }
            RevoluteError::PointInNoComponent(m) => {
                write!(f, "point lies in neither component: {m}")
            }
            RevoluteError::Poly(e) => write!(f, "{e}"),
            RevoluteError::Groebner(e) => write!(f, "{e}"),
            RevoluteError::Euler(e) => write!(f, "{e}"),
        }
    }
}

impl From<PolyError> for RevoluteError {
    fn from(e: PolyError) -> Self {
        RevoluteError::Poly(e)
    }
}

impl From<GroebnerError> for RevoluteError {
    fn from(e: GroebnerError) -> Self {
        RevoluteError::Groebner(e)
    }
}

impl From<EulerError> for RevoluteError {
    fn from(e: EulerError) -> Self {
        RevoluteError::Euler(e)
    }
}

pub type Vec3 = [ExactScalar; 3];
pub type Quad = [ExactScalar; 4];

fn dot3(a: &Vec3, b: &Vec3) -> ExactScalar {
    &(&a[0] * &b[0]) + &(&(&a[1] * &b[1]) + &(&a[2] * &b[2]))
}

fn norm2_4(a: &Quad) -> ExactScalar {
    &(&a[0] * &a[0]) + &(&(&a[1] * &a[1]) + &(&(&a[2] * &a[2]) + &(&a[3] * &a[3])))
}

fn s(p: i64, q: i64) -> ExactScalar {
    ExactScalar::ratio(p, q)
}

/// Joint geometry in body-local coordinates: {eta, xi} is an orthonormal
/// basis of the plane orthogonal to the axis, expressed in the first body's
/// local frame; chi is the unit axis in the second body's local frame.
/// Orthogonality between the plane and the axis is a statement about world
/// coordinates and is the caller's responsibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointFrame {
    pub eta: Vec3,
    pub xi: Vec3,
    pub chi: Vec3,
}

impl JointFrame {
    pub fn new(eta: Vec3, xi: Vec3, chi: Vec3) -> Result<Self, RevoluteError> {
        let check_unit = |v: &Vec3, name: &str| -> Result<(), RevoluteError> {
            if dot3(v, v).is_one() {
                Ok(())
            } else {
                Err(RevoluteError::FrameNotOrthonormal(format!("|{name}| != 1")))
            }
        };
        check_unit(&eta, "eta")?;
        check_unit(&xi, "xi")?;
        check_unit(&chi, "chi")?;
        if !dot3(&eta, &xi).is_zero() {
            return Err(RevoluteError::FrameNotOrthonormal("<eta, xi> != 0".to_string()));
        }
        Ok(JointFrame { eta, xi, chi })
    }
}

const K_PLUS: [&str; 5] = [
    "z1*u3 + z0*u2 - z3*u1 - z2*u0",
    "z2*u3 - z3*u2 - z0*u1 + z1*u0",
    "z3*z1 + z2*z0 - u3*u1 - u2*u0",
    "z3*z2 - z1*z0 - u3*u2 + u1*u0",
    "z2^2 + z1^2 - u2^2 - u1^2",
];

const K_MINUS: [&str; 5] = [
    "z0*u3 - z1*u2 + z2*u1 - z3*u0",
    "z3*u3 + z2*u2 + z1*u1 + z0*u0",
    "z3*z1 + z2*z0 + u3*u1 + u2*u0",
    "z3*z2 - z1*z0 + u3*u2 - u1*u0",
    "z3^2 + z0^2 - u2^2 - u1^2",
];

fn model_universe() -> Universe {
    VariableUniverse::quadruples(&["u", "z"])
}

/// The two generator families of the model-frame decomposition, in the
/// variables u0..u3, z0..z3, plus the two normalizers |u|^2-1, |z|^2-1.
pub fn canonical_components() -> (Vec<Polynomial>, Vec<Polynomial>, [Polynomial; 2]) {
    let u = model_universe();
    let parse = |t: &str| Polynomial::parse(&u, t).expect("fixed table");
    let plus: Vec<Polynomial> = K_PLUS.iter().map(|t| parse(t)).collect();
    let minus: Vec<Polynomial> = K_MINUS.iter().map(|t| parse(t)).collect();
    let normalizers = [
        parse("u0^2 + u1^2 + u2^2 + u3^2 - 1"),
        parse("z0^2 + z1^2 + z2^2 + z3^2 - 1"),
    ];
    (plus, minus, normalizers)
}

/// The model-frame constraint ideal itself:
/// <R(u)e1, R(z)e3>, <R(u)e2, R(z)e3>, and the normalizers.
pub fn canonical_joint_ideal() -> IdealPresentation {
    let frame = JointFrame::new(
        [s(1, 1), s(0, 1), s(0, 1)],
        [s(0, 1), s(1, 1), s(0, 1)],
        [s(0, 1), s(0, 1), s(1, 1)],
    )
    .expect("standard frame");
    joint_ideal(&frame, "u", "z").expect("standard frame")
}

/// A quadruple beta with R(beta)e3 = |beta|^2 * chi for a unit axis chi.
/// Generically beta = (1 + chi3, -chi2, chi1, 0); the two degenerate cases
/// chi = e3 and chi = -e3 get constant quadruples.
pub fn beta_for_axis(chi: &Vec3) -> Result<Quad, RevoluteError> {
    if !dot3(chi, chi).is_one() {
        return Err(RevoluteError::FrameNotOrthonormal("|chi| != 1".to_string()));
    }
    let zero = ExactScalar::zero();
    let one = ExactScalar::one();
    let beta = if chi[0].is_zero() && chi[1].is_zero() {
        if chi[2].is_one() {
            // axis already aligned with e3
            [one, zero.clone(), zero.clone(), zero]
        } else {
            // chi = -e3: a half-turn about e1 reverses e3
            [zero.clone(), one, zero.clone(), zero]
        }
    } else {
        [&ExactScalar::one() + &chi[2], -&chi[1], chi[0].clone(), zero]
    };
    debug_assert!(verify_axis_map(&beta, chi));
    Ok(beta)
}

fn verify_axis_map(beta: &Quad, chi: &Vec3) -> bool {
    let u = VariableUniverse::new::<&str>(&[]).expect("empty universe");
    let b = EulerQuadruple::concrete(&u, beta);
    let image = rotate(&b, &Vector3::standard_unit(&u, 3));
    let n2 = norm2_4(beta);
    (0..3).all(|i| image.entry(i).as_constant().expect("constant") == &n2 * &chi[i])
}

fn alpha1(eta: &Vec3, xi: &Vec3) -> Quad {
    let one = ExactScalar::one();
    [
        &eta[1] - &xi[0],
        &(&(&eta[1] * &xi[2]) - &(&xi[1] * &eta[2])) + &eta[2],
        &(&(&xi[0] * &eta[2]) - &(&xi[2] * &eta[0])) + &xi[2],
        &(&(&one - &(&eta[1] * &xi[0])) + &(&xi[1] * &eta[0])) - &(&xi[1] + &eta[0]),
    ]
}

fn alpha2(eta: &Vec3, xi: &Vec3) -> Quad {
    let one = ExactScalar::one();
    [
        &(&(&eta[1] * &xi[2]) - &(&xi[1] * &eta[2])) - &eta[2],
        &eta[1] + &xi[0],
        &(&(&one + &(&eta[1] * &xi[0])) - &(&xi[1] * &eta[0])) + &(&xi[1] - &eta[0]),
        &(&(&xi[0] * &eta[2]) - &(&xi[2] * &eta[0])) + &xi[2],
    ]
}

fn is_zero_quad(q: &Quad) -> bool {
    q.iter().all(|c| c.is_zero())
}

/// A nonzero quadruple alpha with R(alpha)e1 = |alpha|^2 * eta and
/// R(alpha)e2 = |alpha|^2 * xi for an orthonormal pair {eta, xi}.
///
/// Cases:
/// - eta3 != 0: the closed-form alpha^1, falling back to alpha^2 when
///   alpha^1 = 0 (they cannot both vanish).
/// - eta3 = 0, xi3 != 0: solve for the rotated pair (-xi, eta) and
///   compose with a quarter-turn about e3 mapping e1 -> e2, e2 -> -e1.
/// - eta3 = xi3 = 0 (the pair spans the e1-e2 plane): an in-plane
///   rotation (1 + c, 0, 0, s) or reflection-style (0, 1 + c, s, 0)
///   quadruple with eta = (c, s, 0), degenerating to quarter/half turns
///   when c = -1.
/// Every branch is validated against the defining property on return.
pub fn alpha_for_plane(eta: &Vec3, xi: &Vec3) -> Result<Quad, RevoluteError> {
    if !dot3(eta, eta).is_one() || !dot3(xi, xi).is_one() || !dot3(eta, xi).is_zero() {
        return Err(RevoluteError::FrameNotOrthonormal(
            "{eta, xi} is not an orthonormal pair".to_string(),
        ));
    }
    let zero = ExactScalar::zero;
    let one = ExactScalar::one;
    let alpha: Quad = if !eta[2].is_zero() {
        let a1 = alpha1(eta, xi);
        if is_zero_quad(&a1) {
            alpha2(eta, xi)
        } else {
            a1
        }
    } else if !xi[2].is_zero() {
        // {-xi, eta} is orthonormal with a nonzero third coordinate of the
        // first member; fix up orientation with rho = (1, 0, 0, 1), for
        // which R(rho)e1 = 2e2 and R(rho)e2 = -2e1.
        let eta_p = [-&xi[0], -&xi[1], -&xi[2]];
        let alpha_p = alpha_for_plane(&eta_p, eta)?;
        let u = VariableUniverse::new::<&str>(&[]).expect("empty universe");
        let rho = EulerQuadruple::concrete(&u, &[one(), zero(), zero(), one()]);
        let composed = crate::euler::compose(&rho, &EulerQuadruple::concrete(&u, &alpha_p));
        composed.as_constants()?
    } else if eta[0].is_one() && xi[1].is_one() {
        // exactly the model pair (e1, e2)
        [one(), zero(), zero(), zero()]
    } else {
        // in-plane pair: eta = (c, s, 0) with c^2 + s^2 = 1 and
        // xi = (-s, c, 0) (rotation) or xi = (s, -c, 0) (reflection)
        let c = &eta[0];
        let sn = &eta[1];
        let rotation = xi[0] == -sn && xi[1] == *c;
        let c_plus_1 = &one() + c;
        if rotation {
            if c_plus_1.is_zero() {
                [zero(), zero(), zero(), one()]
            } else {
                [c_plus_1, zero(), zero(), sn.clone()]
            }
        } else if c_plus_1.is_zero() {
            [zero(), zero(), one(), zero()]
        } else {
            [zero(), c_plus_1, sn.clone(), zero()]
        }
    };
    if is_zero_quad(&alpha) {
        return Err(RevoluteError::ComponentCheck("computed alpha is zero".to_string()));
    }
    if !verify_plane_map(&alpha, eta, xi) {
        return Err(RevoluteError::ComponentCheck(
            "alpha does not map e1, e2 onto the requested plane basis".to_string(),
        ));
    }
    Ok(alpha)
}

fn verify_plane_map(alpha: &Quad, eta: &Vec3, xi: &Vec3) -> bool {
    let u = VariableUniverse::new::<&str>(&[]).expect("empty universe");
    let a = EulerQuadruple::concrete(&u, alpha);
    let n2 = norm2_4(alpha);
    let check = |j: usize, target: &Vec3| {
        let image = rotate(&a, &Vector3::standard_unit(&u, j));
        (0..3).all(|i| image.entry(i).as_constant().expect("constant") == &n2 * &target[i])
    };
    check(1, eta) && check(2, xi)
}

/// The linear change of variables u = Ktilde(alpha)^T a / |alpha| and
/// z = Ktilde(beta)^T b / |beta|, returned without the norm denominators:
/// the polynomials are |alpha| u and |beta| z. Substituting them into the
/// degree-2 canonical generators only ever produces the rational squares
/// |alpha|^2, |beta|^2, so the square roots are never evaluated.
pub fn change_of_variables(
    alpha: &Quad,
    beta: &Quad,
    universe: &Universe,
    a_prefix: &str,
    b_prefix: &str,
) -> Result<([Polynomial; 4], [Polynomial; 4]), RevoluteError> {
    let lin = |q: &Quad, prefix: &str| -> Result<[Polynomial; 4], RevoluteError> {
        let quad = EulerQuadruple::concrete(universe, q);
        let vars = EulerQuadruple::symbolic_prefixed(universe, prefix)?;
        let out = matrix_ktilde(&quad).transpose().mul_vec(&vars.to_vec())?;
        let mut it = out.into_iter();
        Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
    };
    Ok((lin(alpha, a_prefix)?, lin(beta, b_prefix)?))
}

/// Divides by the rational content (sign preserved), so pulled-back
/// generators match their printed forms.
pub fn primitive_part(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut num_gcd = BigInteger::zero();
    let mut den_lcm = BigInteger::from(1);
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(&c.numer().abs());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let scale = ExactScalar::new(den_lcm, num_gcd).expect("nonzero content");
    p.scale(&scale)
}

/// Pulls one canonical generator back through the substitution. Bilinear
/// generators substitute directly (clearing |alpha||beta|); generators that
/// split into a pure z-quadratic and a pure u-quadratic part are cleared by
/// |alpha|^2 |beta|^2, scaling the z-part by |alpha|^2 and the u-part by
/// |beta|^2. The result is reduced to its primitive part.
fn pull_back(
    k: &Polynomial,
    u_sub: &[Polynomial; 4],
    z_sub: &[Polynomial; 4],
    alpha_n2: &ExactScalar,
    beta_n2: &ExactScalar,
) -> Result<Polynomial, RevoluteError> {
    let model = k.universe().clone();
    let target = u_sub[0].universe().clone();
    let mut bindings = BTreeMap::new();
    for i in 0..4 {
        bindings.insert(format!("u{i}"), u_sub[i].clone());
        bindings.insert(format!("z{i}"), z_sub[i].clone());
    }
    // classify terms by their degree in the u-block (variables u0..u3)
    let u_indices: Vec<usize> =
        (0..4).map(|i| model.index_of(&format!("u{i}")).expect("model var")).collect();
    let mut bilinear = Polynomial::zero(&model);
    let mut u_pure = Polynomial::zero(&model);
    let mut z_pure = Polynomial::zero(&model);
    for (m, c) in k.terms() {
        let u_deg: u32 = u_indices.iter().map(|&i| m.exps()[i]).sum();
        let term = Polynomial::from_terms(&model, [(m.clone(), c.clone())]);
        match u_deg {
            0 => z_pure = &z_pure + &term,
            1 => bilinear = &bilinear + &term,
            _ => u_pure = &u_pure + &term,
        }
    }
    let has_pure = !u_pure.is_zero() || !z_pure.is_zero();
    if !bilinear.is_zero() && has_pure {
        return Err(RevoluteError::MixedTermStructure);
    }
    let result = if has_pure {
        let z_image = z_pure.substitute(&target, &bindings)?.scale(alpha_n2);
        let u_image = u_pure.substitute(&target, &bindings)?.scale(beta_n2);
        &z_image + &u_image
    } else {
        bilinear.substitute(&target, &bindings)?
    };
    Ok(primitive_part(&result))
}

/// The raw joint constraint ideal over the 8-variable universe
/// (a_prefix 0..3, b_prefix 0..3): the two degree-4 plane-axis products
/// plus the two normalizers.
pub fn joint_ideal(
    frame: &JointFrame,
    a_prefix: &str,
    b_prefix: &str,
) -> Result<IdealPresentation, RevoluteError> {
    let universe = VariableUniverse::quadruples(&[a_prefix, b_prefix]);
    let a = EulerQuadruple::symbolic_prefixed(&universe, a_prefix)?;
    let b = EulerQuadruple::symbolic_prefixed(&universe, b_prefix)?;
    let eta = Vector3::concrete(&universe, &frame.eta);
    let xi = Vector3::concrete(&universe, &frame.xi);
    let chi = Vector3::concrete(&universe, &frame.chi);
    let axis_world = rotate(&b, &chi);
    let q1 = rotate(&a, &eta).dot(&axis_world);
    let q2 = rotate(&a, &xi).dot(&axis_world);
    let one = Polynomial::one(&universe);
    let gens = vec![q1, q2, &a.norm_squared() - &one, &b.norm_squared() - &one];
    Ok(IdealPresentation::new(&universe, gens)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodySlot {
    /// The body carrying {eta, xi} (variables `a`).
    First,
    /// The body carrying chi (variables `b`).
    Second,
}

/// The decomposition of one joint's constraint ideal into its two
/// components, together with the transformation data that produced it.
#[derive(Debug, Clone)]
pub struct JointDecomposition {
    pub plus: IdealPresentation,
    pub minus: IdealPresentation,
    pub alpha: Quad,
    pub beta: Quad,
    pub u_substitution: [Polynomial; 4],
    pub z_substitution: [Polynomial; 4],
    a_prefix: String,
    b_prefix: String,
}

impl JointDecomposition {
    pub fn universe(&self) -> &Universe {
        self.plus.universe()
    }

    pub fn prefixes(&self) -> (&str, &str) {
        (&self.a_prefix, &self.b_prefix)
    }
}

/// Builds the two components of the joint's constraint ideal by pulling
/// the canonical decomposition back through alpha and beta.
///
/// Postconditions verified on construction: the original degree-4
/// generators are members of both components, and the sum of the two
/// components is the unit ideal (disjoint varieties).
pub fn decompose_joint(
    frame: &JointFrame,
    a_prefix: &str,
    b_prefix: &str,
    budget: &Budget,
) -> Result<JointDecomposition, RevoluteError> {
    let universe = VariableUniverse::quadruples(&[a_prefix, b_prefix]);
    let alpha = alpha_for_plane(&frame.eta, &frame.xi)?;
    let beta = beta_for_axis(&frame.chi)?;
    let (u_sub, z_sub) = change_of_variables(&alpha, &beta, &universe, a_prefix, b_prefix)?;
    let alpha_n2 = norm2_4(&alpha);
    let beta_n2 = norm2_4(&beta);

    let (k_plus, k_minus, _) = canonical_components();
    let build = |table: &[Polynomial]| -> Result<IdealPresentation, RevoluteError> {
        let mut gens = Vec::with_capacity(table.len() + 2);
        for k in table {
            gens.push(pull_back(k, &u_sub, &z_sub, &alpha_n2, &beta_n2)?);
        }
        let one = Polynomial::one(&universe);
        let a = EulerQuadruple::symbolic_prefixed(&universe, a_prefix)?;
        let b = EulerQuadruple::symbolic_prefixed(&universe, b_prefix)?;
        gens.push(&a.norm_squared() - &one);
        gens.push(&b.norm_squared() - &one);
        Ok(IdealPresentation::new(&universe, gens)?)
    };
    let plus = build(&k_plus)?;
    let minus = build(&k_minus)?;

    // postcondition (i): original generators belong to both components
    let original = joint_ideal(frame, a_prefix, b_prefix)?;
    for (name, component) in [("plus", &plus), ("minus", &minus)] {
        let gb = buchberger(component, &MonomialOrder::DegRevLex, budget)?;
        for q in original.generators() {
            if !normal_form(q, &gb).is_zero() {
                return Err(RevoluteError::ComponentCheck(format!(
                    "original generator is not a member of the {name} component"
                )));
            }
        }
    }
    // postcondition (ii): the component varieties are disjoint
    if !is_trivial(&plus.sum(&minus)?, budget)? {
        return Err(RevoluteError::ComponentCheck(
            "the two components are not disjoint".to_string(),
        ));
    }

    Ok(JointDecomposition {
        plus,
        minus,
        alpha,
        beta,
        u_substitution: u_sub,
        z_substitution: z_sub,
        a_prefix: a_prefix.to_string(),
        b_prefix: b_prefix.to_string(),
    })
}

/// Substitutes a concrete unit quadruple for one body's variables in both
/// components, giving two ideals in the remaining four variables.
pub fn specialize_fixed_body(
    decomposition: &JointDecomposition,
    fixed: &Quad,
    which: BodySlot,
) -> Result<(IdealPresentation, IdealPresentation), RevoluteError> {
    let (fixed_prefix, free_prefix) = match which {
        BodySlot::First => (&decomposition.a_prefix, &decomposition.b_prefix),
        BodySlot::Second => (&decomposition.b_prefix, &decomposition.a_prefix),
    };
    let target = VariableUniverse::quadruples(&[free_prefix]);
    let mut bindings = BTreeMap::new();
    for i in 0..4 {
        bindings.insert(
            format!("{fixed_prefix}{i}"),
            Polynomial::constant(&target, fixed[i].clone()),
        );
    }
    let specialize = |ideal: &IdealPresentation| -> Result<IdealPresentation, RevoluteError> {
        let gens = ideal
            .generators()
            .iter()
            .map(|g| g.substitute(&target, &bindings))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealPresentation::new(&target, gens)?)
    };
    Ok((specialize(&decomposition.plus)?, specialize(&decomposition.minus)?))
}

/// Picks the unique component whose generators all vanish at the given
/// point (coordinates in universe order). The point must satisfy the
/// undecomposed constraints; by disjointness exactly one side vanishes.
pub fn select_component(
    plus: &IdealPresentation,
    minus: &IdealPresentation,
    point: &[ExactScalar],
) -> Result<IdealPresentation, RevoluteError> {
    let vanishes = |ideal: &IdealPresentation| -> Option<usize> {
        ideal.generators().iter().position(|g| !g.eval_exact(point).is_zero())
    };
    match (vanishes(plus), vanishes(minus)) {
        (None, None) => Err(RevoluteError::PointInBothComponents),
        (None, Some(_)) => Ok(plus.clone()),
        (Some(_), None) => Ok(minus.clone()),
        (Some(i), Some(j)) => Err(RevoluteError::PointInNoComponent(format!(
            "plus generator {i} and minus generator {j} are nonzero at the point"
        ))),
    }
}
