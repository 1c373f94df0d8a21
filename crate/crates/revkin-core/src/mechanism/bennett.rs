//! Preset for the spatial four-bar linkage that moves despite being
//! overconstrained by the usual mobility count. The family is driven by
//! three rational parameters `m = (m0, m1, m2)`; this module provides the
//! exact joint geometry, the closed-loop condition checks, the invariant
//! describing the shape space, the exact initial configuration, the
//! closed-form lift from the essential coordinates, the trigonometric
//! parametrization of the motion curve, and the degenerate `q5 = 0`
//! sub-family.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{
    cross3, dot3, norm2_3, plane_frame_for_axis, s, sub3, InitialConfiguration, JointDef,
    MechanismError, MechanismSpec,
};
use crate::poly::{Polynomial, Universe, VariableUniverse};
use crate::revolute::{Quad, Vec3};
use crate::scalar::ExactScalar;

/// The three exact rational parameters of the four-bar family. Admissible
/// values have all three nonzero and `m2 != +-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BennettParameters {
    pub m0: ExactScalar,
    pub m1: ExactScalar,
    pub m2: ExactScalar,
}

fn sq(x: &ExactScalar) -> ExactScalar {
    x * x
}

impl BennettParameters {
    pub fn new(
        m0: ExactScalar,
        m1: ExactScalar,
        m2: ExactScalar,
    ) -> Result<Self, MechanismError> {
        if m0.is_zero() {
            return Err(MechanismError::Inadmissible("m0 = 0".to_string()));
        }
        if m1.is_zero() {
            return Err(MechanismError::Inadmissible("m1 = 0".to_string()));
        }
        if m2.is_zero() {
            return Err(MechanismError::Inadmissible("m2 = 0".to_string()));
        }
        if sq(&m2) == s(1, 1) {
            return Err(MechanismError::Inadmissible(
                "m2 = +-1 (degenerate twist)".to_string(),
            ));
        }
        Ok(BennettParameters { m0, m1, m2 })
    }

    pub fn ratio(p0: i64, q0: i64, p1: i64, q1: i64, p2: i64, q2: i64) -> Result<Self, MechanismError> {
        BennettParameters::new(s(p0, q0), s(p1, q1), s(p2, q2))
    }

    /// `q = m0^2 (m2-1)^2 + (m2+1)^2`, strictly positive for admissible
    /// parameters.
    pub fn q(&self) -> ExactScalar {
        &(&sq(&self.m0) * &sq(&(&self.m2 - &s(1, 1)))) + &sq(&(&self.m2 + &s(1, 1)))
    }

    /// `q5 = m1 (m0^2 - 1) - 2 m0`; its vanishing marks the sub-family
    /// handled by [`q5zero_system`].
    pub fn q5(&self) -> ExactScalar {
        &(&self.m1 * &(&sq(&self.m0) - &s(1, 1))) - &(&s(2, 1) * &self.m0)
    }

    /// The signed second-link scale `r = (m0^2+1)(1-m2^2)/q`.
    pub fn r(&self) -> ExactScalar {
        let num = &(&sq(&self.m0) + &s(1, 1)) * &(&s(1, 1) - &sq(&self.m2));
        &num * &self.q().recip().expect("q > 0")
    }

    /// First parameter-involution of the shape fibration:
    /// `(m0, -1/m1, 1/m2)`.
    pub fn involution_one(&self) -> Result<Self, MechanismError> {
        BennettParameters::new(
            self.m0.clone(),
            -&self
                .m1
                .recip()
                .map_err(|_| MechanismError::DivisionByZero("m1".to_string()))?,
            self.m2
                .recip()
                .map_err(|_| MechanismError::DivisionByZero("m2".to_string()))?,
        )
    }

    /// Second parameter-involution: `(-1/m0, -m1, -m2)`.
    pub fn involution_two(&self) -> Result<Self, MechanismError> {
        BennettParameters::new(
            -&self
                .m0
                .recip()
                .map_err(|_| MechanismError::DivisionByZero("m0".to_string()))?,
            -&self.m1,
            -&self.m2,
        )
    }
}

/// Exact joint geometry of the loop: anchor points, unit axes, and the
/// orthonormal plane pair completing each axis.
#[derive(Debug, Clone)]
pub struct BennettGeometry {
    pub r: ExactScalar,
    pub points: [Vec3; 4],
    pub axes: [Vec3; 4],
    pub frames: [(Vec3, Vec3); 4],
}

pub fn geometry(m: &BennettParameters) -> Result<BennettGeometry, MechanismError> {
    let one = s(1, 1);
    let two = s(2, 1);
    let m0 = &m.m0;
    let m1 = &m.m1;
    let m2 = &m.m2;
    let m0s = sq(m0);
    let m1s = sq(m1);
    let m2s = sq(m2);
    let q = m.q();
    let qi = q.recip().expect("q > 0");
    let r = m.r();
    let m0p = &m0s + &one; // m0^2 + 1
    let m0m = &m0s - &one; // m0^2 - 1
    let m1p = &m1s + &one;
    let m12 = &m1s + &m2s;
    let m0p_i = m0p.recip().expect("positive");
    let m1p_i = m1p.recip().expect("positive");
    let m12_i = m12
        .recip()
        .map_err(|_| MechanismError::Inadmissible("m1^2 + m2^2 = 0".to_string()))?;
    let one_minus_m2s = &one - &m2s;

    let x1 = &(&r * &(&m1s - &one)) * &m1p_i;
    let x2 = &(&(&(&two * &(&r * m1)) * &m0m) * &m0p_i) * &m1p_i;
    let x3 = &(&(&(&s(4, 1) * &(&r * m0)) * m1) * &m0p_i) * &m1p_i;
    let y1 = &(&r * &(&m1s - &m2s)) * &m12_i;
    let y2 = &(&(&two * &(&r * &(m1 * m2))) * &m12_i) * &one;

    let points = [
        [s(0, 1), s(0, 1), s(0, 1)],
        [one.clone(), s(0, 1), s(0, 1)],
        [&one + &x1, x2, x3],
        [y1, y2, s(0, 1)],
    ];

    let chi0 = [s(0, 1), s(0, 1), one.clone()];
    let chi1 = [
        s(0, 1),
        &(&s(-2, 1) * m0) * &m0p_i,
        &m0m * &m0p_i,
    ];
    // chi2, scaled by 1/((m0^2+1)(m1^2+1)q)
    let c2scale = &(&m0p_i * &m1p_i) * &qi;
    let chi2 = [
        &(&(&(&s(4, 1) * &(m0 * m1)) * &one_minus_m2s) * &m0p) * &c2scale,
        &(&(&s(4, 1) * m0)
            * &(&(&(m2 * &m0p) * &m1p) - &(&m0m * &m12)))
            * &c2scale,
        &(&(&(&(&sq(&(m2 - &one)) * &m1p) * &sq(&m0s))
            + &(&(&two * &(&(&(&(&m2s - &s(3, 1)) * &m1s) - &(&s(3, 1) * &m2s)) + &one)) * &m0s))
            + &(&sq(&(m2 + &one)) * &m1p))
            * &c2scale,
    ];
    // chi3, scaled by 1/((m1^2+m2^2)q)
    let c3scale = &m12_i * &qi;
    let pm = &(&(m0 * m2) - m0) + &(m2 + &one); // m0 m2 - m0 + m2 + 1
    let mm = &(&(m0 * m2) - m0) - &(m2 + &one); // m0 m2 - m0 - m2 - 1
    let chi3 = [
        &(&(&s(4, 1) * &(&(m0 * m1) * m2)) * &one_minus_m2s) * &c3scale,
        &(&(&(&s(-2, 1) * m0) * &(&m1s - &m2s)) * &one_minus_m2s) * &c3scale,
        &(&(&pm * &mm) * &m12) * &c3scale,
    ];

    let axes = [chi0, chi1, chi2, chi3];
    let mut frames: Vec<(Vec3, Vec3)> = Vec::with_capacity(4);
    for axis in &axes {
        frames.push(plane_frame_for_axis(axis)?);
    }
    Ok(BennettGeometry {
        r,
        points,
        axes,
        frames: [
            frames[0].clone(),
            frames[1].clone(),
            frames[2].clone(),
            frames[3].clone(),
        ],
    })
}

/// Report of the three closed-loop existence conditions, all evaluated
/// exactly (the third in squared form to avoid radicals).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionsReport {
    /// Opposite link lengths agree: `|v0|^2 = |v2|^2`, `|v1|^2 = |v3|^2`.
    pub cond1: bool,
    /// Opposite twist cosines agree.
    pub cond2: bool,
    /// `|v0|^2 (1 - cos^2 phi1) = |v1|^2 (1 - cos^2 phi0)`.
    pub cond3_squared: bool,
    /// All axes parallel: the loop is planar and excluded from the
    /// moving spatial family.
    pub planar: bool,
}

pub fn conditions_check(points: &[Vec3; 4], axes: &[Vec3; 4]) -> ConditionsReport {
    let v: Vec<Vec3> = (0..4).map(|l| sub3(&points[(l + 1) % 4], &points[l])).collect();
    let n: Vec<ExactScalar> = v.iter().map(norm2_3).collect();
    let cos: Vec<ExactScalar> = (0..4).map(|l| dot3(&axes[l], &axes[(l + 1) % 4])).collect();
    let cond1 = n[0] == n[2] && n[1] == n[3];
    let cond2 = cos[0] == cos[2] && cos[1] == cos[3];
    let one = s(1, 1);
    let cond3_squared =
        &n[0] * &(&one - &sq(&cos[1])) == &n[1] * &(&one - &sq(&cos[0]));
    let planar = (0..4).all(|l| {
        cross3(&axes[l], &axes[(l + 1) % 4]).iter().all(|c| c.is_zero())
    });
    ConditionsReport { cond1, cond2, cond3_squared, planar }
}

/// The five-coordinate invariant separating the shapes of the family:
/// the moving anchor coordinates `(p2_1, p2_2, p2_3, p3_1, p3_2)`.
pub fn f_invariant(m: &BennettParameters) -> Result<[ExactScalar; 5], MechanismError> {
    let g = geometry(m)?;
    Ok([
        g.points[2][0].clone(),
        g.points[2][1].clone(),
        g.points[2][2].clone(),
        g.points[3][0].clone(),
        g.points[3][1].clone(),
    ])
}

/// Helper quantities `q0..q3` entering the initial configuration and the
/// bilinear lift coefficients.
fn q_helpers(m: &BennettParameters) -> [ExactScalar; 4] {
    let one = s(1, 1);
    let two = s(2, 1);
    let m0 = &m.m0;
    let m1 = &m.m1;
    let m2 = &m.m2;
    let m0s = sq(m0);
    let m1s = sq(m1);
    let m2s = sq(m2);
    let m12 = &m1s + &m2s;
    let q4 = &(&m0s * &(m2 - &one)) + &(m2 + &one);
    let q0 = &(&q4 * &(&m1s + m2)) - &(&(&two * &(m0 * m1)) * &(m2 - &one));
    let q1 = &(&(&q4 * m1) * &(m2 - &one)) + &(&(&two * m0) * &(&m1s + m2));
    let q2 = &(&(&one - m2) * &m12)
        * &(&(&(&(&m1s * m0) + &(m2 * m1)) + &(m2 * m0)) - &(&s(3, 1) * m1));
    let q3 = &m12
        * &(&(&(&(&(m2 * m1) * &(&(&(m2 * m0) - m1) - &(&two * m0))) - &m2s)
            + &(&s(3, 1) * &m1s))
            + &(&(m1 * m0) + &(&s(3, 1) * m2)));
    [q0, q1, q2, q3]
}

/// Exact initial configuration `(a, b, c)` of the preset loop, valid on
/// the whole admissible set (including `q5 = 0`).
pub fn initial(m: &BennettParameters) -> Result<InitialConfiguration, MechanismError> {
    let one = s(1, 1);
    let two = s(2, 1);
    let m0 = &m.m0;
    let m1 = &m.m1;
    let m2 = &m.m2;
    let m0s = sq(m0);
    let m1s = sq(m1);
    let m2s = sq(m2);
    let m0p = &m0s + &one;
    let m0p_i = m0p.recip().expect("positive");
    let m1p_i = (&m1s + &one).recip().expect("positive");
    let m12 = &m1s + &m2s;
    let m12_i = m12
        .recip()
        .map_err(|_| MechanismError::Inadmissible("m1^2 + m2^2 = 0".to_string()))?;
    let q = m.q();
    let [q0, q1, q2, q3] = q_helpers(m);
    let q5 = m.q5();

    let a: Quad = [
        m1 * &m1p_i,
        &m1s * &m1p_i,
        &(&q5 * &m0p_i) * &m1p_i,
        &(&(&(&m0s + &(&two * &(m0 * m1))) - &one) * &m0p_i) * &m1p_i,
    ];
    let c: Quad = [
        &(&(-m1) * m2) * &m12_i,
        &(-&m2s) * &m12_i,
        &(m1 * m2) * &m12_i,
        &m1s * &m12_i,
    ];
    let bscale = &(&m1p_i * &m12_i)
        * &q.recip().expect("q > 0");
    let m2s_minus = &m2s - &one;
    let lin = &(&one - m2) * &(&m1s - m2); // (1 - m2)(m1^2 - m2)
    let b2_extra = &(&s(-8, 1) * &m12)
        * &(&(&(&(&(&m1s * m0) + &(m2 * m1)) + &(m2 * m0)) - m1) * &m0p_i);
    let b3_extra = &(&s(8, 1) * &m12)
        * &(&(&(&(&(m2 * m1) * m0) - &m1s) - &(m1 * m0)) - m2)
        * &m0p_i;
    let b: Quad = [
        &(&(m1 * &m2s_minus) * &q0) * &bscale,
        &(&(m1 * &m2s_minus) * &q1) * &bscale,
        &(&(&(&lin * &q1) + &(&two * &q2)) + &b2_extra) * &bscale,
        &(&(&(&lin * &q0) + &(&two * &q3)) + &b3_extra) * &bscale,
    ];
    Ok(InitialConfiguration { quads: vec![a, b, c] })
}

/// The preset loop: four bodies, joints anchored at the exact geometry,
/// link scales `(1, r, 1, r)`, and essential hint `(a0, a2, c0, c2)`.
pub fn preset(
    m: &BennettParameters,
) -> Result<(MechanismSpec, InitialConfiguration), MechanismError> {
    let g = geometry(m)?;
    let n = 4usize;
    let joints: Vec<JointDef> = (0..n)
        .map(|l| JointDef {
            bodies: ((l + n - 1) % n, l),
            point: g.points[l].clone(),
            axis: g.axes[l].clone(),
            plane: g.frames[l].clone(),
        })
        .collect();
    let spec = MechanismSpec {
        body_names: vec![
            "base".to_string(),
            "body1".to_string(),
            "body2".to_string(),
            "body3".to_string(),
        ],
        prefixes: vec!["a".to_string(), "b".to_string(), "c".to_string()],
        joints,
        loop_closure: true,
        link_scales: vec![s(1, 1), g.r.clone(), s(1, 1), g.r],
        essential_hint: Some(vec![
            "a0".to_string(),
            "a2".to_string(),
            "c0".to_string(),
            "c2".to_string(),
        ]),
        // the bilinear closed-form relations of the second body double as
        // sheet selectors (the system constrains that body's quadruple
        // only up to sign); each is verified against the computed ideal
        // before use, and the sub-family q5 = 0 has its own system
        sheet_hints: sheet_relations(m).unwrap_or_default(),
    };
    let init = initial(m)?;
    Ok((spec, init))
}

/// The six exact coefficients of the bilinear lift of `b`; defined only
/// away from the `q5 = 0` sub-family.
pub fn t_coefficients(m: &BennettParameters) -> Result<[ExactScalar; 6], MechanismError> {
    let q5 = m.q5();
    if q5.is_zero() {
        return Err(MechanismError::Inadmissible(
            "q5 = 0: use the dedicated q5-zero system".to_string(),
        ));
    }
    let one = s(1, 1);
    let two = s(2, 1);
    let m0 = &m.m0;
    let m1 = &m.m1;
    let m2 = &m.m2;
    let m0s = sq(m0);
    let m1s = sq(m1);
    let m2s = sq(m2);
    let m0p = &m0s + &one;
    let m0m = &m0s - &one;
    let q = m.q();
    let [q0, q1, _, _] = q_helpers(m);
    let q4 = &(&m0s * &(m2 - &one)) + &(m2 + &one);
    let d01 = (&(m1 * m2) * &q)
        .recip()
        .map_err(|_| MechanismError::DivisionByZero("m1 m2 q".to_string()))?;
    let d24 = (&(m2 * &m0p) * &q)
        .recip()
        .map_err(|_| MechanismError::DivisionByZero("m2 (m0^2+1) q".to_string()))?;
    let d35 = (m1 * &q5)
        .recip()
        .map_err(|_| MechanismError::DivisionByZero("m1 q5".to_string()))?;
    let m2s_minus = &m2s - &one;
    let q4s4 = &sq(&q4) - &(&s(4, 1) * &m0s);
    let t0 = &(&m2s_minus * &q0) * &d01;
    let t1 = &(&m2s_minus * &q1) * &d01;
    let t2 = &(&(&(m1 * &(m2 - &one)) * &q4s4)
        + &(&(&(&s(4, 1) * m0) * &q4) * &(&m1s + m2)))
        * &d24;
    let t3 = &(&(&(m1 * &(m2 - &one)) * &m0m) - &(&(&two * m0) * &(m2 + &m1s))) * &d35;
    let t4 = &(&(&(&m1s + m2) * &q4s4)
        - &(&(&(&s(4, 1) * &(m0 * m1)) * &(m2 - &one)) * &q4))
        * &d24;
    let t5 = &(&(&(m2 + &m1s) * &m0m) + &(&(&two * &(m0 * m1)) * &(m2 - &one))) * &d35;
    Ok([t0, t1, t2, t3, t4, t5])
}

/// The four bilinear relations pinning the second body's quadruple to
/// the sheet through the initial configuration, over the preset
/// universe: `b0 + t0 a0 c0`, `b1 + t1 a0 c0`,
/// `b2 + t2 a0 c2 + t3 a2 c0`, and `b3 + t4 a0 c2 + t5 a2 c0`.
pub fn sheet_relations(m: &BennettParameters) -> Result<Vec<Polynomial>, MechanismError> {
    let [t0, t1, t2, t3, t4, t5] = t_coefficients(m)?;
    let u = VariableUniverse::quadruples(&["a", "b", "c"]);
    let v = |n: &str| Polynomial::var_named(&u, n).expect("preset variable");
    let c = |x: &ExactScalar| Polynomial::constant(&u, x.clone());
    let a0c0 = &v("a0") * &v("c0");
    let a0c2 = &v("a0") * &v("c2");
    let a2c0 = &v("a2") * &v("c0");
    Ok(vec![
        &v("b0") + &(&c(&t0) * &a0c0),
        &v("b1") + &(&c(&t1) * &a0c0),
        &(&v("b2") + &(&c(&t2) * &a0c2)) + &(&c(&t3) * &a2c0),
        &(&v("b3") + &(&c(&t4) * &a0c2)) + &(&c(&t5) * &a2c0),
    ])
}

/// Exact closed-form lift from the essential coordinates
/// `(a0, a2, c0, c2)` to the full twelve-variable configuration, in the
/// preset universe's order. Requires `q5 != 0`.
pub fn lift_exact(
    point: &[ExactScalar; 4],
    m: &BennettParameters,
) -> Result<Vec<ExactScalar>, MechanismError> {
    let [a0, a2, c0, c2] = point;
    let q5 = m.q5();
    if q5.is_zero() {
        return Err(MechanismError::Inadmissible(
            "q5 = 0: use the dedicated q5-zero system".to_string(),
        ));
    }
    let one = s(1, 1);
    let two = s(2, 1);
    let m0s = sq(&m.m0);
    let a3_coeff = &(&(&m0s + &(&two * &(&m.m0 * &m.m1))) - &one)
        * &q5.recip().expect("q5 nonzero");
    let [t0, t1, t2, t3, t4, t5] = t_coefficients(m)?;
    let c1_coeff = &m.m2 * &m.m1.recip().expect("m1 nonzero");
    let c3_coeff = &m.m1 * &m.m2.recip().expect("m2 nonzero");
    let a0c0 = a0 * c0;
    Ok(vec![
        a0.clone(),
        &m.m1 * a0,
        a2.clone(),
        &a3_coeff * a2,
        -&(&t0 * &a0c0),
        -&(&t1 * &a0c0),
        -&(&(&t2 * &(a0 * c2)) + &(&t3 * &(a2 * c0))),
        -&(&(&t4 * &(a0 * c2)) + &(&t5 * &(a2 * c0))),
        c0.clone(),
        &c1_coeff * c0,
        c2.clone(),
        &c3_coeff * c2,
    ])
}

/// Float version of [`lift_exact`], returned as a name-to-value
/// assignment for residual sampling.
pub fn lift_f64(
    point: &[f64; 4],
    m: &BennettParameters,
) -> Result<BTreeMap<String, f64>, MechanismError> {
    let [a0, a2, c0, c2] = *point;
    let [t0, t1, t2, t3, t4, t5] = t_coefficients(m)?;
    let q5 = m.q5();
    let m0 = m.m0.to_f64();
    let m1 = m.m1.to_f64();
    let m2 = m.m2.to_f64();
    let a3_coeff = (m0 * m0 + 2.0 * m0 * m1 - 1.0) / q5.to_f64();
    let values = [
        a0,
        m1 * a0,
        a2,
        a3_coeff * a2,
        -t0.to_f64() * a0 * c0,
        -t1.to_f64() * a0 * c0,
        -(t2.to_f64() * a0 * c2 + t3.to_f64() * a2 * c0),
        -(t4.to_f64() * a0 * c2 + t5.to_f64() * a2 * c0),
        c0,
        m2 / m1 * c0,
        c2,
        m1 / m2 * c2,
    ];
    let names = ["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "c0", "c1", "c2", "c3"];
    Ok(names
        .iter()
        .zip(values)
        .map(|(n, v)| (n.to_string(), v))
        .collect())
}

/// Trigonometric parametrization of the motion curve in the essential
/// coordinates; `plus_branch = false` flips the sign of the `c` pair
/// (the other real component of the same physical motion).
pub fn parametrize(
    t: f64,
    m: &BennettParameters,
    plus_branch: bool,
) -> Result<[f64; 4], MechanismError> {
    let (sin, cos) = libm::sincos(t);
    let m0 = m.m0.to_f64();
    let m1 = m.m1.to_f64();
    let m2 = m.m2.to_f64();
    let q5 = m.q5().to_f64();
    let sqrt_m1p = libm::sqrt(m1 * m1 + 1.0);
    let q6 = (m1 * m1 + m2 * m2) * (m2 * m2 * sin * sin + cos * cos);
    let sqrt_q6 = libm::sqrt(q6);
    let a0 = cos / sqrt_m1p;
    let a2 = -q5 * sin / ((m0 * m0 + 1.0) * sqrt_m1p);
    let sign = if plus_branch { 1.0 } else { -1.0 };
    let c0 = sign * m1 * m2 * sin / sqrt_q6;
    let c2 = sign * m2 * cos / sqrt_q6;
    Ok([a0, a2, c0, c2])
}

/// The exact essential coordinates produced by the parametrization at
/// its initial angle `(cos t, sin t) = (m1, -1) / sqrt(m1^2+1)`; equals
/// the essential coordinates of [`initial`].
pub fn parametrize_init_exact(m: &BennettParameters) -> [ExactScalar; 4] {
    let one = s(1, 1);
    let m1s = sq(&m.m1);
    let m1p_i = (&m1s + &one).recip().expect("positive");
    let m12_i = (&m1s + &sq(&m.m2)).recip().expect("nonzero");
    let m0p_i = (&sq(&m.m0) + &one).recip().expect("positive");
    [
        &m.m1 * &m1p_i,
        &(&m.q5() * &m0p_i) * &m1p_i,
        &(&(-&m.m1) * &m.m2) * &m12_i,
        &(&m.m1 * &m.m2) * &m12_i,
    ]
}

/// The three generators of the motion variety in the essential
/// coordinates, specialized at `m` (with `q5 != 0`), over any universe
/// containing `a0, a2, c0, c2`:
/// `g0 = a0^2 + ((m0^2+1)/q5)^2 a2^2 - 1/(m1^2+1)`,
/// `g1 = m2^2 c0^2 + m1^2 c2^2 - m1^2 m2^2/(m1^2+m2^2)`,
/// `g3 = m1 (m0^2+1) c2 a2 + q5 c0 a0`.
pub fn variety_generators(
    u: &Universe,
    m: &BennettParameters,
) -> Result<[Polynomial; 3], MechanismError> {
    let q5 = m.q5();
    if q5.is_zero() {
        return Err(MechanismError::Inadmissible(
            "q5 = 0: use the dedicated q5-zero system".to_string(),
        ));
    }
    let pv = |n: &str| Polynomial::var_named(u, n).expect("variable present");
    let pc = |x: ExactScalar| Polynomial::constant(u, x);
    let one = s(1, 1);
    let a0 = pv("a0");
    let a2 = pv("a2");
    let c0 = pv("c0");
    let c2 = pv("c2");
    let m0p = &sq(&m.m0) + &one;
    let m1s = sq(&m.m1);
    let m2s = sq(&m.m2);
    let ratio = sq(&(&m0p * &q5.recip().expect("q5 nonzero")));
    let g0 = &(&(&a0 * &a0) + &(&pc(ratio) * &(&a2 * &a2)))
        - &pc((&m1s + &one).recip().expect("positive"));
    let g1 = &(&(&pc(m2s.clone()) * &(&c0 * &c0)) + &(&pc(m1s.clone()) * &(&c2 * &c2)))
        - &pc(&(&m1s * &m2s) * &(&m1s + &m2s).recip().expect("nonzero"));
    let g3 = &(&pc(&m.m1 * &m0p) * &(&c2 * &a2)) + &(&pc(q5) * &(&c0 * &a0));
    Ok([g0, g1, g3])
}

/// The degenerate sub-family where `q5 = 0` forces `m1 = 2 m0/(m0^2-1)`
/// and `a2 = 0`, with `a3` taking over as essential coordinate.
#[derive(Debug, Clone)]
pub struct Q5ZeroSystem {
    pub m: BennettParameters,
    /// Universe of the essential coordinates `(a0, a3, c0, c2)`.
    pub universe: Universe,
    /// The three variety generators over `universe`.
    pub generators: Vec<Polynomial>,
}

pub fn q5zero_system(m0: ExactScalar, m2: ExactScalar) -> Result<Q5ZeroSystem, MechanismError> {
    let one = s(1, 1);
    let two = s(2, 1);
    if m0.is_zero() || sq(&m0) == one {
        return Err(MechanismError::Inadmissible(
            "q5 = 0 family needs m0 outside {0, +-1}".to_string(),
        ));
    }
    let m0s = sq(&m0);
    let m0m = &m0s - &one;
    let m1 = &(&two * &m0) * &m0m.recip().expect("m0^2 != 1");
    let m = BennettParameters::new(m0.clone(), m1, m2.clone())?;
    debug_assert!(m.q5().is_zero());
    let universe = VariableUniverse::new(&["a0", "a3", "c0", "c2"])?;
    let pv = |n: &str| Polynomial::var_named(&universe, n).expect("variable present");
    let pc = |x: ExactScalar| Polynomial::constant(&universe, x);
    let a0 = pv("a0");
    let a3 = pv("a3");
    let c0 = pv("c0");
    let c2 = pv("c2");
    let m0p = &m0s + &one;
    let m2s = sq(&m2);
    let m0m_sq_i = sq(&m0m).recip().expect("nonzero");
    let g_a = &(&(&pc(&sq(&m0p) * &m0m_sq_i) * &(&a0 * &a0)) + &(&a3 * &a3)) - &pc(one.clone());
    let four_m0s = &s(4, 1) * &m0s;
    let rhs = &(&four_m0s * &m2s)
        * &(&(&sq(&m0m) * &m2s) + &four_m0s).recip().expect("positive");
    let g_c = &(&(&pc(m2s) * &(&c0 * &c0)) + &(&pc(&four_m0s * &m0m_sq_i) * &(&c2 * &c2)))
        - &pc(rhs);
    let g_mix = &(&pc(&two * &m0) * &(&c2 * &a3)) + &(&pc(m0p) * &(&c0 * &a0));
    Ok(Q5ZeroSystem { m, universe, generators: vec![g_a, g_c, g_mix] })
}

impl Q5ZeroSystem {
    /// Exact lift from `(a0, a3, c0, c2)` to the full twelve-variable
    /// configuration (with `a2 = 0`), in the preset universe's order.
    pub fn lift_exact(&self, point: &[ExactScalar; 4]) -> Result<Vec<ExactScalar>, MechanismError> {
        let [a0, a3, c0, c2] = point;
        let m = &self.m;
        let one = s(1, 1);
        let two = s(2, 1);
        let m0s = sq(&m.m0);
        let m0m = &m0s - &one;
        let c1_coeff = &(&m.m2 * &m0m) * &(&two * &m.m0).recip().expect("m0 nonzero");
        let c3_coeff = c1_coeff.recip().map_err(|_| {
            MechanismError::DivisionByZero("m2 (m0^2-1)".to_string())
        })?;
        // t0, t1, t2, t4 specialize cleanly at q5 = 0; the two q5-singular
        // coefficients are replaced by their exact limits: -1 for the
        // b2 cross-term and m2 (m0^2-1)/(2 m0) for the b3 cross-term
        let [t0, t1, t2, _, t4, _] = t_limits_q5zero(m)?;
        let a0c0 = a0 * c0;
        Ok(vec![
            a0.clone(),
            &m.m1 * a0,
            s(0, 1),
            a3.clone(),
            -&(&t0 * &a0c0),
            -&(&t1 * &a0c0),
            &(-&(&t2 * &(a0 * c2))) + &(a3 * c0),
            &(-&(&t4 * &(a0 * c2))) - &(&c1_coeff * &(a3 * c0)),
            c0.clone(),
            &c1_coeff * c0,
            c2.clone(),
            &c3_coeff * c2,
        ])
    }

    /// Float lift as a name-to-value assignment; coefficients are
    /// evaluated exactly, then combined in floats.
    pub fn lift_f64(&self, point: &[f64; 4]) -> Result<BTreeMap<String, f64>, MechanismError> {
        let m = &self.m;
        let [t0, t1, t2, _, t4, _] = t_limits_q5zero(m)?;
        let [a0, a3, c0, c2] = *point;
        let m0 = m.m0.to_f64();
        let m1 = m.m1.to_f64();
        let m2 = m.m2.to_f64();
        let c1_coeff = m2 * (m0 * m0 - 1.0) / (2.0 * m0);
        let values = [
            a0,
            m1 * a0,
            0.0,
            a3,
            -t0.to_f64() * a0 * c0,
            -t1.to_f64() * a0 * c0,
            -t2.to_f64() * a0 * c2 + a3 * c0,
            -t4.to_f64() * a0 * c2 - c1_coeff * a3 * c0,
            c0,
            c1_coeff * c0,
            c2,
            m1 / m2 * c2,
        ];
        let names = ["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "c0", "c1", "c2", "c3"];
        Ok(names
            .iter()
            .zip(values)
            .map(|(n, v)| (n.to_string(), v))
            .collect())
    }

    /// Trigonometric parametrization: `a0 = (m0^2-1) cos t/(m0^2+1)`,
    /// `a3 = sin t`, with the `c` pair solved from the generators;
    /// `plus_branch = false` flips the `c` signs. Undefined where
    /// `cos t = 0`.
    pub fn parametrize(&self, t: f64, plus_branch: bool) -> Result<[f64; 4], MechanismError> {
        let (sin, cos) = libm::sincos(t);
        if libm::fabs(cos) < 1e-12 {
            return Err(MechanismError::OutOfRange(
                "parametrization undefined near cos t = 0".to_string(),
            ));
        }
        let m0 = self.m.m0.to_f64();
        let m2 = self.m.m2.to_f64();
        let m0s = m0 * m0;
        let m0m = m0s - 1.0;
        let m0p = m0s + 1.0;
        let a0 = m0m * cos / m0p;
        let a3 = sin;
        let four_m0s = 4.0 * m0s;
        let rhs = four_m0s * m2 * m2 / (m0m * m0m * m2 * m2 + four_m0s);
        let coeff = m2 * m2 * four_m0s * a3 * a3 / (m0p * m0p * a0 * a0) + four_m0s / (m0m * m0m);
        let sign = if plus_branch { 1.0 } else { -1.0 };
        let c2 = sign * libm::sqrt(rhs / coeff);
        let c0 = -2.0 * m0 * c2 * a3 / (m0p * a0);
        Ok([a0, a3, c0, c2])
    }
}

/// The four regular `t`-coefficients specialized to the `q5 = 0`
/// sub-family (the two `q5`-singular slots are returned as zero and must
/// be replaced by the limit cross-terms of the lift).
fn t_limits_q5zero(m: &BennettParameters) -> Result<[ExactScalar; 6], MechanismError> {
    let one = s(1, 1);
    let m0 = &m.m0;
    let m1 = &m.m1;
    let m2 = &m.m2;
    let m0s = sq(m0);
    let m1s = sq(m1);
    let m2s = sq(m2);
    let m0p = &m0s + &one;
    let q = m.q();
    let [q0, q1, _, _] = q_helpers(m);
    let q4 = &(&m0s * &(m2 - &one)) + &(m2 + &one);
    let d01 = (&(m1 * m2) * &q)
        .recip()
        .map_err(|_| MechanismError::DivisionByZero("m1 m2 q".to_string()))?;
    let d24 = (&(m2 * &m0p) * &q)
        .recip()
        .map_err(|_| MechanismError::DivisionByZero("m2 (m0^2+1) q".to_string()))?;
    let m2s_minus = &m2s - &one;
    let q4s4 = &sq(&q4) - &(&s(4, 1) * &m0s);
    let t0 = &(&m2s_minus * &q0) * &d01;
    let t1 = &(&m2s_minus * &q1) * &d01;
    let t2 = &(&(&(m1 * &(m2 - &one)) * &q4s4)
        + &(&(&(&s(4, 1) * m0) * &q4) * &(&m1s + m2)))
        * &d24;
    let t4 = &(&(&(&m1s + m2) * &q4s4)
        - &(&(&(&s(4, 1) * &(m0 * m1)) * &(m2 - &one)) * &q4))
        * &d24;
    Ok([t0, t1, t2, s(0, 1), t4, s(0, 1)])
}

#[cfg(test)]
mod tests {
    use super::super::{analyze, assemble_constraints, residual_sample};
    use super::*;
    use crate::groebner::{buchberger, normal_form, Budget, IdealPresentation};
    use crate::poly::MonomialOrder;

    fn named() -> BennettParameters {
        BennettParameters::ratio(7, 4, 5, 6, 1, 3).unwrap()
    }

    fn budget() -> Budget {
        Budget::new(50_000_000)
    }

    fn samples() -> Vec<BennettParameters> {
        [
            (7, 4, 5, 6, 1, 3),
            (2, 1, 1, 1, 1, 2),
            (3, 2, -1, 2, 2, 5),
            (-5, 3, 3, 4, -1, 2),
            (3, 1, 2, 1, -2, 3),
            (5, 4, -4, 3, 5, 7),
        ]
        .iter()
        .map(|&(a, b, c, d, e, f)| BennettParameters::ratio(a, b, c, d, e, f).unwrap())
        .collect()
    }

    #[test]
    fn admissibility_is_enforced() {
        assert!(BennettParameters::ratio(0, 1, 1, 1, 1, 2).is_err());
        assert!(BennettParameters::ratio(1, 1, 0, 1, 1, 2).is_err());
        assert!(BennettParameters::ratio(1, 1, 1, 1, 0, 1).is_err());
        assert!(BennettParameters::ratio(1, 1, 1, 1, 1, 1).is_err());
        assert!(BennettParameters::ratio(1, 1, 1, 1, -1, 1).is_err());
        assert!(BennettParameters::ratio(7, 4, 5, 6, 1, 3).is_ok());
    }

    #[test]
    fn geometry_matches_the_printed_values_at_the_named_parameters() {
        let m = named();
        assert_eq!(m.q(), s(113, 36));
        let g = geometry(&m).unwrap();
        assert_eq!(g.r, s(130, 113));
        // twist cosines between consecutive axes
        let cos0 = dot3(&g.axes[0], &g.axes[1]);
        let cos1 = dot3(&g.axes[1], &g.axes[2]);
        assert_eq!(cos0, s(33, 65));
        assert_eq!(cos1, s(-15, 113));
        // sin phi1 = 112/113 exactly in squared form
        let sin1sq = &s(1, 1) - &sq(&cos1);
        assert_eq!(sin1sq, sq(&s(112, 113)));
        // |r| sin phi0 = sin phi1: squared identity
        let sin0sq = &s(1, 1) - &sq(&cos0);
        assert_eq!(&sq(&g.r) * &sin0sq, sin1sq);
    }

    #[test]
    fn axes_are_unit_and_orthogonal_to_their_links() {
        for m in samples() {
            let g = geometry(&m).unwrap();
            for l in 0..4 {
                assert_eq!(norm2_3(&g.axes[l]), s(1, 1), "axis {l} not unit");
                let v_out = sub3(&g.points[(l + 1) % 4], &g.points[l]);
                let v_in = sub3(&g.points[l], &g.points[(l + 3) % 4]);
                assert!(dot3(&g.axes[l], &v_out).is_zero(), "axis {l} vs outgoing link");
                assert!(dot3(&g.axes[l], &v_in).is_zero(), "axis {l} vs incoming link");
                // frame orthonormality
                let (eta, xi) = &g.frames[l];
                assert_eq!(norm2_3(eta), s(1, 1));
                assert_eq!(norm2_3(xi), s(1, 1));
                assert!(dot3(eta, xi).is_zero());
                assert!(dot3(eta, &g.axes[l]).is_zero());
                assert!(dot3(xi, &g.axes[l]).is_zero());
            }
        }
    }

    #[test]
    fn loop_conditions_hold_exactly() {
        for m in samples() {
            let g = geometry(&m).unwrap();
            let report = conditions_check(&g.points, &g.axes);
            assert!(report.cond1 && report.cond2 && report.cond3_squared);
            assert!(!report.planar);
        }
        // a planar rectangle satisfies all three conditions but is
        // flagged planar
        let square = [
            [s(0, 1), s(0, 1), s(0, 1)],
            [s(1, 1), s(0, 1), s(0, 1)],
            [s(1, 1), s(1, 1), s(0, 1)],
            [s(0, 1), s(1, 1), s(0, 1)],
        ];
        let e3 = [s(0, 1), s(0, 1), s(1, 1)];
        let axes = [e3.clone(), e3.clone(), e3.clone(), e3];
        let report = conditions_check(&square, &axes);
        assert!(report.cond1 && report.cond2 && report.cond3_squared);
        assert!(report.planar);
    }

    #[test]
    fn shape_invariant_respects_the_parameter_involutions() {
        for m in samples() {
            let f = f_invariant(&m).unwrap();
            let g1 = m.involution_one().unwrap();
            let g2 = m.involution_two().unwrap();
            assert_eq!(f, f_invariant(&g1).unwrap());
            assert_eq!(f, f_invariant(&g2).unwrap());
            // involutive and commuting: the four maps form a group of
            // exponent two
            assert_eq!(g1.involution_one().unwrap(), m);
            assert_eq!(g2.involution_two().unwrap(), m);
            assert_eq!(
                g1.involution_two().unwrap(),
                g2.involution_one().unwrap()
            );
        }
    }

    #[test]
    fn preset_assembles_fourteen_generators_in_twelve_variables() {
        for m in samples() {
            let (spec, init) = preset(&m).unwrap();
            for q in &init.quads {
                let n: ExactScalar = q.iter().map(sq).fold(s(0, 1), |acc, x| &acc + &x);
                assert_eq!(n, s(1, 1), "initial quadruple not unit at {m:?}");
            }
            let ideal = assemble_constraints(&spec, &init).expect("assembles exactly");
            assert_eq!(ideal.universe().len(), 12);
            assert_eq!(ideal.generators().len(), 14);
        }
    }

    #[test]
    fn exact_lift_reproduces_the_initial_configuration() {
        for m in samples() {
            if m.q5().is_zero() {
                continue;
            }
            let (_, init) = preset(&m).unwrap();
            let essential = parametrize_init_exact(&m);
            // the parametrization's initial angle hits the initial
            // configuration's essential coordinates exactly
            assert_eq!(essential[0], init.quads[0][0]);
            assert_eq!(essential[1], init.quads[0][2]);
            assert_eq!(essential[2], init.quads[2][0]);
            assert_eq!(essential[3], init.quads[2][2]);
            let lifted = lift_exact(&essential, &m).unwrap();
            assert_eq!(lifted, init.point());
        }
        // the q5-singular coefficients are rejected
        let degenerate = BennettParameters::ratio(2, 1, 4, 3, 1, 2).unwrap();
        assert!(degenerate.q5().is_zero());
        assert!(t_coefficients(&degenerate).is_err());
        let half = [s(1, 2), s(1, 2), s(1, 2), s(1, 2)];
        assert!(lift_exact(&half, &degenerate).is_err());
    }

    #[test]
    fn parametrization_samples_stay_on_the_variety() {
        for m in [named(), BennettParameters::ratio(3, 2, -1, 2, 2, 5).unwrap()] {
            let (spec, init) = preset(&m).unwrap();
            let assembled = assemble_constraints(&spec, &init).unwrap();
            let eu = VariableUniverse::new(&["a0", "a2", "c0", "c2"]).unwrap();
            let vg = variety_generators(&eu, &m).unwrap();
            let mut max = 0.0f64;
            for i in 0..200 {
                let t = -core::f64::consts::PI + (i as f64) * core::f64::consts::PI / 100.0;
                for branch in [true, false] {
                    let p = parametrize(t, &m, branch).unwrap();
                    let assignment = lift_f64(&p, &m).unwrap();
                    let r = residual_sample(assembled.generators(), &assignment).unwrap();
                    let rv = residual_sample(&vg, &assignment).unwrap();
                    max = max.max(r).max(rv);
                }
            }
            assert!(max < 1e-9, "max residual {max} at {m:?}");
        }
    }

    #[test]
    fn analysis_finds_the_one_dimensional_regular_variety() {
        let m = named();
        let (spec, init) = preset(&m).unwrap();
        let b = budget();
        let report = analyze(&spec, &init, &b).expect("analysis succeeds");
        assert_eq!(report.dimension, 1);
        assert!(!report.zero_dimensional);
        let names: Vec<&str> = report.essential.iter().map(|n| n.as_str()).collect();
        assert_eq!(names, ["a0", "a2", "c0", "c2"]);

        // the specialized essential generators belong to the reduced
        // ideal and conversely generate it
        let eu = report.reduced.universe().clone();
        let vg = variety_generators(&eu, &m).unwrap();
        for g in &vg {
            assert!(normal_form(g, &report.reduced).is_zero());
        }
        let vg_gb = buchberger(
            &IdealPresentation::new(&eu, vg.to_vec()).unwrap(),
            &MonomialOrder::DegRevLex,
            &b,
        )
        .unwrap();
        for g in report.reduced.elements() {
            assert!(normal_form(g, &vg_gb).is_zero());
        }

        // regular complete intersection of codimension 3 in R^4
        assert!(report.regularity.is_regular);
        assert_eq!(report.regularity.codim, 3);

        // the recorded lift reproduces the initial configuration
        let essential = parametrize_init_exact(&m);
        let lifted = report.lift_point(&essential).unwrap();
        assert_eq!(lifted, init.point());
    }

    #[test]
    fn degenerate_family_matches_its_printed_system() {
        let sys = q5zero_system(s(2, 1), s(1, 2)).unwrap();
        assert_eq!(sys.m.m1, s(4, 3));
        // first generator specializes to (25/9) a0^2 + a3^2 - 1
        let u = &sys.universe;
        let a0 = Polynomial::var_named(u, "a0").unwrap();
        let a3 = Polynomial::var_named(u, "a3").unwrap();
        let expected = &(&(&Polynomial::constant(u, s(25, 9)) * &(&a0 * &a0)) + &(&a3 * &a3))
            - &Polynomial::one(u);
        assert_eq!(sys.generators[0], expected);

        // the full loop at these parameters accepts the lift samples
        let (spec, init) = preset(&sys.m).unwrap();
        let assembled = assemble_constraints(&spec, &init).unwrap();
        // the initial configuration lies on the degenerate variety and
        // lifts back to itself
        let a = &init.quads[0];
        let c = &init.quads[2];
        assert!(a[2].is_zero());
        let essential = [a[0].clone(), a[3].clone(), c[0].clone(), c[2].clone()];
        for g in &sys.generators {
            assert!(g.eval_exact(&essential).is_zero());
        }
        assert_eq!(sys.lift_exact(&essential).unwrap(), init.point());

        let mut max = 0.0f64;
        for i in 0..200 {
            let t = -1.5 + (i as f64) * 3.0 / 200.0;
            for branch in [true, false] {
                let p = sys.parametrize(t, branch).unwrap();
                for g in &sys.generators {
                    let r = libm::fabs(g.eval_f64(&p));
                    max = max.max(r);
                }
                let assignment = sys.lift_f64(&p).unwrap();
                let r = residual_sample(assembled.generators(), &assignment).unwrap();
                max = max.max(r);
            }
        }
        assert!(max < 1e-9, "max residual {max}");
        assert!(sys.parametrize(core::f64::consts::FRAC_PI_2, true).is_err());
        assert!(q5zero_system(s(1, 1), s(1, 2)).is_err());
        assert!(q5zero_system(s(0, 1), s(1, 2)).is_err());
    }
}

#[cfg(test)]
mod probe {
    extern crate std;
    use super::*;
    use crate::groebner::Budget;

    #[test]
    #[ignore]
    fn probe_stalled_basis() {
        let m = BennettParameters::ratio(7, 4, 5, 6, 1, 3).unwrap();
        let (spec, init) = preset(&m).unwrap();
        let report =
            crate::mechanism::analyze(&spec, &init, &Budget::new(50_000_000)).unwrap();
        std::println!("essential: {:?}", report.essential);
        for note in &report.notes {
            std::println!("note: {note}");
        }
        for g in report.reduced.elements() {
            std::println!("  {}", g.render(&crate::poly::MonomialOrder::DegRevLex));
        }
    }
}


#[cfg(test)]
mod flipprobe {
    extern crate std;
    use super::*;
    use crate::groebner::Budget;
    use crate::mechanism::{analyze, assemble_constraints};

    #[test]
    #[ignore]
    fn probe_flipped_point() {
        let m = BennettParameters::ratio(7, 4, 5, 6, 1, 3).unwrap();
        let (spec, init) = preset(&m).unwrap();
        let assembled = assemble_constraints(&spec, &init).unwrap();
        let report = analyze(&spec, &init, &Budget::new(50_000_000)).unwrap();
        std::println!("essential: {:?}", report.essential);
        // initial point restricted to the stalled coordinates, with the
        // leftover variable negated
        let mut pt: Vec<ExactScalar> = Vec::new();
        let full = init.point();
        let u = assembled.universe();
        for name in &report.essential {
            let idx = u.index_of(name).unwrap();
            let v = full[idx].clone();
            pt.push(if name == "b3" { -&v } else { v });
        }
        match report.lift_point(&pt) {
            Ok(lifted) => {
                for (g, i) in assembled.generators().iter().zip(0..) {
                    let val = g.eval_exact(&lifted);
                    if !val.is_zero() {
                        std::println!("assembled gen {i} nonzero at flipped point");
                    }
                }
                for (g, i) in report.combined.generators().iter().zip(0..) {
                    let val = g.eval_exact(&lifted);
                    if !val.is_zero() {
                        std::println!("combined gen {i} nonzero at flipped point");
                    }
                }
                std::println!("lifted point: {:?}", lifted.iter().map(|v| v.to_f64()).collect::<Vec<_>>());
                std::println!("init point:   {:?}", init.point().iter().map(|v| v.to_f64()).collect::<Vec<_>>());
                std::println!("done evaluating");
            }
            Err(e) => std::println!("lift failed: {e:?}"),
        }
    }
}
