//! Euler-parameter rotation algebra.
//!
//! Rotations of R^3 are encoded by quadruples a = (a0, a1, a2, a3); the
//! rotation matrix R(a) has homogeneous quadratic entries, so every law in
//! this module is a polynomial identity and is checked exactly. Quadruples
//! and vectors carry polynomial entries, which covers both symbolic
//! identities (entries are variables) and concrete configurations (entries
//! are constants).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{PolyError, PolyMatrix, Polynomial, Universe};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerError {
    ZeroVector,
    /// A check needed the exact rational norm of a vector whose squared
    /// norm is not a perfect square.
    IrrationalNorm,
    NotConcrete,
    Poly(PolyError),
}

impl fmt::Display for EulerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerError::ZeroVector => write!(f, "zero vector where a nonzero one is required"),
            EulerError::IrrationalNorm => write!(f, "vector norm is not rational"),
            EulerError::NotConcrete => write!(f, "constant (non-symbolic) entries required"),
            EulerError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl From<PolyError> for EulerError {
    fn from(e: PolyError) -> Self {
        EulerError::Poly(e)
    }
}

/// A rotation quadruple a = (a0, ã) with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerQuadruple {
    entries: [Polynomial; 4],
}

impl EulerQuadruple {
    pub fn new(entries: [Polynomial; 4]) -> Self {
        EulerQuadruple { entries }
    }

    /// Quadruple of the four named variables.
    pub fn symbolic(universe: &Universe, names: [&str; 4]) -> Result<Self, PolyError> {
        Ok(EulerQuadruple::new([
            Polynomial::var_named(universe, names[0])?,
            Polynomial::var_named(universe, names[1])?,
            Polynomial::var_named(universe, names[2])?,
            Polynomial::var_named(universe, names[3])?,
        ]))
    }

    /// Quadruple whose entries follow the `p0, p1, p2, p3` naming scheme.
    pub fn symbolic_prefixed(universe: &Universe, prefix: &str) -> Result<Self, PolyError> {
        let names: Vec<String> = (0..4).map(|i| format!("{prefix}{i}")).collect();
        EulerQuadruple::symbolic(
            universe,
            [&names[0], &names[1], &names[2], &names[3]],
        )
    }

    pub fn concrete(universe: &Universe, values: &[ExactScalar; 4]) -> Self {
        EulerQuadruple::new([
            Polynomial::constant(universe, values[0].clone()),
            Polynomial::constant(universe, values[1].clone()),
            Polynomial::constant(universe, values[2].clone()),
            Polynomial::constant(universe, values[3].clone()),
        ])
    }

    pub fn entries(&self) -> &[Polynomial; 4] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Polynomial {
        &self.entries[i]
    }

    pub fn universe(&self) -> &Universe {
        self.entries[0].universe()
    }

    /// Conjugate ā = (a0, -ã); R(ā) = R(a)ᵀ.
    pub fn conjugate(&self) -> EulerQuadruple {
        EulerQuadruple::new([
            self.entries[0].clone(),
            self.entries[1].neg(),
            self.entries[2].neg(),
            self.entries[3].neg(),
        ])
    }

    pub fn negated(&self) -> EulerQuadruple {
        EulerQuadruple::new([
            self.entries[0].neg(),
            self.entries[1].neg(),
            self.entries[2].neg(),
            self.entries[3].neg(),
        ])
    }

    pub fn norm_squared(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.universe());
        for e in &self.entries {
            acc = &acc + &(e * e);
        }
        acc
    }

    pub fn scale(&self, k: &ExactScalar) -> EulerQuadruple {
        EulerQuadruple::new([
            self.entries[0].scale(k),
            self.entries[1].scale(k),
            self.entries[2].scale(k),
            self.entries[3].scale(k),
        ])
    }

    pub fn as_constants(&self) -> Result<[ExactScalar; 4], EulerError> {
        let mut out = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()];
        for (i, e) in self.entries.iter().enumerate() {
            out[i] = e.as_constant().ok_or(EulerError::NotConcrete)?;
        }
        Ok(out)
    }

    pub fn to_vec(&self) -> Vec<Polynomial> {
        self.entries.to_vec()
    }
}

/// A vector in R^3 with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector3 {
    entries: [Polynomial; 3],
}

impl Vector3 {
    pub fn new(entries: [Polynomial; 3]) -> Self {
        Vector3 { entries }
    }

    pub fn concrete(universe: &Universe, values: &[ExactScalar; 3]) -> Self {
        Vector3::new([
            Polynomial::constant(universe, values[0].clone()),
            Polynomial::constant(universe, values[1].clone()),
            Polynomial::constant(universe, values[2].clone()),
        ])
    }

    /// Standard unit vector e^j (j = 1, 2, 3).
    pub fn standard_unit(universe: &Universe, j: usize) -> Self {
        let mut vals = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()];
        vals[j - 1] = ExactScalar::one();
        Vector3::concrete(universe, &vals)
    }

    pub fn entries(&self) -> &[Polynomial; 3] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Polynomial {
        &self.entries[i]
    }

    pub fn universe(&self) -> &Universe {
        self.entries[0].universe()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Embedding v̂ = (0, v) into R^4.
    pub fn hat(&self) -> EulerQuadruple {
        EulerQuadruple::new([
            Polynomial::zero(self.universe()),
            self.entries[0].clone(),
            self.entries[1].clone(),
            self.entries[2].clone(),
        ])
    }

    pub fn cross(&self, other: &Vector3) -> Vector3 {
        let [x1, y1, z1] = &self.entries;
        let [x2, y2, z2] = &other.entries;
        Vector3::new([&(y1 * z2) - &(z1 * y2), &(z1 * x2) - &(x1 * z2), &(x1 * y2) - &(y1 * x2)])
    }

    pub fn dot(&self, other: &Vector3) -> Polynomial {
        let mut acc = Polynomial::zero(self.universe());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = &acc + &(a * b);
        }
        acc
    }

    pub fn norm_squared(&self) -> Polynomial {
        self.dot(self)
    }

    pub fn sub(&self, other: &Vector3) -> Vector3 {
        Vector3::new([
            &self.entries[0] - &other.entries[0],
            &self.entries[1] - &other.entries[1],
            &self.entries[2] - &other.entries[2],
        ])
    }

    pub fn add(&self, other: &Vector3) -> Vector3 {
        Vector3::new([
            &self.entries[0] + &other.entries[0],
            &self.entries[1] + &other.entries[1],
            &self.entries[2] + &other.entries[2],
        ])
    }

    pub fn scale(&self, k: &ExactScalar) -> Vector3 {
        Vector3::new([self.entries[0].scale(k), self.entries[1].scale(k), self.entries[2].scale(k)])
    }

    pub fn as_constants(&self) -> Result<[ExactScalar; 3], EulerError> {
        let mut out = [ExactScalar::zero(), ExactScalar::zero(), ExactScalar::zero()];
        for (i, e) in self.entries.iter().enumerate() {
            out[i] = e.as_constant().ok_or(EulerError::NotConcrete)?;
        }
        Ok(out)
    }
}

fn a(q: &EulerQuadruple, i: usize) -> Polynomial {
    q.entries[i].clone()
}

fn na(q: &EulerQuadruple, i: usize) -> Polynomial {
    q.entries[i].neg()
}

/// 3x4 matrix H̃(a); rows (-a1 a0 -a3 a2 | -a2 a3 a0 -a1 | -a3 -a2 a1 a0).
pub fn matrix_htilde(q: &EulerQuadruple) -> PolyMatrix {
    PolyMatrix::from_rows(vec![
        vec![na(q, 1), a(q, 0), na(q, 3), a(q, 2)],
        vec![na(q, 2), a(q, 3), a(q, 0), na(q, 1)],
        vec![na(q, 3), na(q, 2), a(q, 1), a(q, 0)],
    ])
    .expect("fixed shape")
}

/// 3x4 matrix H(a); rows (-a1 a0 a3 -a2 | -a2 -a3 a0 a1 | -a3 a2 -a1 a0).
pub fn matrix_h(q: &EulerQuadruple) -> PolyMatrix {
    PolyMatrix::from_rows(vec![
        vec![na(q, 1), a(q, 0), a(q, 3), na(q, 2)],
        vec![na(q, 2), na(q, 3), a(q, 0), a(q, 1)],
        vec![na(q, 3), a(q, 2), na(q, 1), a(q, 0)],
    ])
    .expect("fixed shape")
}

/// 4x4 matrix K̃(a): first row (a0 a1 a2 a3), then the rows of H̃(a).
pub fn matrix_ktilde(q: &EulerQuadruple) -> PolyMatrix {
    PolyMatrix::from_rows(vec![
        vec![a(q, 0), a(q, 1), a(q, 2), a(q, 3)],
        vec![na(q, 1), a(q, 0), na(q, 3), a(q, 2)],
        vec![na(q, 2), a(q, 3), a(q, 0), na(q, 1)],
        vec![na(q, 3), na(q, 2), a(q, 1), a(q, 0)],
    ])
    .expect("fixed shape")
}

/// 4x4 matrix K(a): first row (a0 a1 a2 a3), then the rows of H(a).
pub fn matrix_k(q: &EulerQuadruple) -> PolyMatrix {
    PolyMatrix::from_rows(vec![
        vec![a(q, 0), a(q, 1), a(q, 2), a(q, 3)],
        vec![na(q, 1), a(q, 0), a(q, 3), na(q, 2)],
        vec![na(q, 2), na(q, 3), a(q, 0), a(q, 1)],
        vec![na(q, 3), a(q, 2), na(q, 1), a(q, 0)],
    ])
    .expect("fixed shape")
}

/// Rotation matrix R(a) = H̃(a)H(a)ᵀ with homogeneous quadratic entries.
/// R(a) is an honest rotation when |a| = 1; otherwise rotation and scaling.
pub fn matrix_r(q: &EulerQuadruple) -> PolyMatrix {
    matrix_htilde(q).mul(&matrix_h(q).transpose()).expect("fixed shape")
}

/// Rotation composition: the quadruple c = K(b)ᵀa satisfies
/// R(c) = R(b)R(a). The opposite sign -c encodes the same rotation.
pub fn compose(a: &EulerQuadruple, b: &EulerQuadruple) -> EulerQuadruple {
    let v = matrix_k(b).transpose().mul_vec(&a.to_vec()).expect("fixed shape");
    let mut it = v.into_iter();
    EulerQuadruple::new([
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ])
}

/// Applies the rotation: R(a)v as a polynomial vector.
pub fn rotate(a: &EulerQuadruple, v: &Vector3) -> Vector3 {
    let out = matrix_r(a).mul_vec(&[v.entries[0].clone(), v.entries[1].clone(), v.entries[2].clone()])
        .expect("fixed shape");
    let mut it = out.into_iter();
    Vector3::new([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}

/// The operator L = K̃(v̂)K(ŷ)ᵀ. For nonzero v, y it is symmetric with
/// L² = |v|²|y|²I, so its eigenvalues are ±|v||y|, each with a plane of
/// eigenvectors.
pub fn l_operator(v: &Vector3, y: &Vector3) -> Result<PolyMatrix, EulerError> {
    if v.is_zero() || y.is_zero() {
        return Err(EulerError::ZeroVector);
    }
    Ok(matrix_ktilde(&v.hat()).mul(&matrix_k(&y.hat()).transpose())?)
}

/// Verifies the structural laws of the L-operator exactly:
/// symmetry and L² = |v|²|y|²I.
pub fn l_operator_laws_hold(v: &Vector3, y: &Vector3) -> Result<bool, EulerError> {
    let l = l_operator(v, y)?;
    if l != l.transpose() {
        return Ok(false);
    }
    let universe = v.universe();
    let scale = &v.norm_squared() * &y.norm_squared();
    let expected = PolyMatrix::identity(universe, 4).scale(&scale);
    Ok(l.mul(&l)? == expected)
}

/// Verifies the commutator identity for L = K̃(v̂)K(ŷ)ᵀ and
/// L0 = K̃(û)ᵀK(ẑ):
/// LL0 - L0L = 2<u,v>K(d̂) + 2<y,z>K̃(q̂) with d = y×z, q = u×v.
pub fn l_commutator_identity_holds(
    v: &Vector3,
    y: &Vector3,
    u: &Vector3,
    z: &Vector3,
) -> Result<bool, EulerError> {
    let l = l_operator(v, y)?;
    let l0 = matrix_ktilde(&u.hat()).transpose().mul(&matrix_k(&z.hat()))?;
    let lhs = l.mul(&l0)?.sub(&l0.mul(&l)?)?;

    let two = ExactScalar::from_int(2);
    let d = y.cross(z);
    let q = u.cross(v);
    let term1 = matrix_k(&d.hat()).scale(&u.dot(v).scale(&two));
    let term2 = matrix_ktilde(&q.hat()).scale(&y.dot(z).scale(&two));
    Ok(lhs == term1.add(&term2)?)
}

/// Checks the two linear conditions satisfied by any eigenvector a of L
/// with eigenvalue |v||y| when v, y are linearly independent:
///   (|v||y| - <v,y>) a0 + <ã, y×v> = 0 and <|y|v - |v|y, ã> = 0.
/// Needs concrete vectors with exactly rational norms.
pub fn l_eigenvector_conditions_hold(
    v: &Vector3,
    y: &Vector3,
    a: &EulerQuadruple,
) -> Result<bool, EulerError> {
    let vv = v.as_constants()?;
    let yy = y.as_constants()?;
    let av = a.as_constants()?;
    let norm = |w: &[ExactScalar; 3]| -> Result<ExactScalar, EulerError> {
        let s = &(&w[0] * &w[0]) + &(&(&w[1] * &w[1]) + &(&w[2] * &w[2]));
        s.sqrt_exact().ok_or(EulerError::IrrationalNorm)
    };
    let nv = norm(&vv)?;
    let ny = norm(&yy)?;
    let dot = |p: &[ExactScalar; 3], q: &[ExactScalar; 3]| -> ExactScalar {
        &(&p[0] * &q[0]) + &(&(&p[1] * &q[1]) + &(&p[2] * &q[2]))
    };
    let cross = |p: &[ExactScalar; 3], q: &[ExactScalar; 3]| -> [ExactScalar; 3] {
        [
            &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
            &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
            &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
        ]
    };
    let a_tail = [av[1].clone(), av[2].clone(), av[3].clone()];
    let yxv = cross(&yy, &vv);
    let c1 = &(&(&(&nv * &ny) - &dot(&vv, &yy)) * &av[0]) + &dot(&a_tail, &yxv);
    let w = [
        &(&ny * &vv[0]) - &(&nv * &yy[0]),
        &(&ny * &vv[1]) - &(&nv * &yy[1]),
        &(&ny * &vv[2]) - &(&nv * &yy[2]),
    ];
    let c2 = dot(&w, &a_tail);
    Ok(c1.is_zero() && c2.is_zero())
}

/// Verifies the four basic identities for the supplied quadruples:
/// R(a)ᵀ = R(ā); K̃(a)ᵀb = K(b)ᵀa; R(K(b)ᵀa) = R(b)R(a);
/// K̃(a)K(a)ᵀ = diag(|a|², R(a)). All hold as polynomial identities.
pub fn euler_identities_check(a: &EulerQuadruple, b: &EulerQuadruple) -> Result<bool, EulerError> {
    // R(a)^T = R(conjugate a)
    if matrix_r(a).transpose() != matrix_r(&a.conjugate()) {
        return Ok(false);
    }
    // Ktilde(a)^T b = K(b)^T a
    let lhs = matrix_ktilde(a).transpose().mul_vec(&b.to_vec())?;
    let rhs = matrix_k(b).transpose().mul_vec(&a.to_vec())?;
    if lhs != rhs {
        return Ok(false);
    }
    // R(K(b)^T a) = R(b) R(a)
    let c = compose(a, b);
    if matrix_r(&c) != matrix_r(b).mul(&matrix_r(a))? {
        return Ok(false);
    }
    // Ktilde(a) K(a)^T = diag(|a|^2, R(a))
    let block = matrix_ktilde(a).mul(&matrix_k(a).transpose())?;
    let universe = a.universe();
    let n2 = a.norm_squared();
    let r = matrix_r(a);
    let expected = PolyMatrix::from_fn(4, 4, |i, j| {
        if i == 0 && j == 0 {
            n2.clone()
        } else if i == 0 || j == 0 {
            Polynomial::zero(universe)
        } else {
            r.get(i - 1, j - 1).clone()
        }
    });
    Ok(block == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableUniverse;
    use alloc::string::ToString;

    fn scalars(vals: &[(i64, i64)]) -> Vec<ExactScalar> {
        vals.iter().map(|&(p, q)| ExactScalar::ratio(p, q)).collect()
    }

    fn quad(u: &Universe, vals: &[(i64, i64); 4]) -> EulerQuadruple {
        let s = scalars(vals);
        EulerQuadruple::concrete(u, &[s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone()])
    }

    fn vec3(u: &Universe, vals: &[(i64, i64); 3]) -> Vector3 {
        let s = scalars(vals);
        Vector3::concrete(u, &[s[0].clone(), s[1].clone(), s[2].clone()])
    }

    fn empty() -> Universe {
        VariableUniverse::new::<&str>(&[]).unwrap()
    }

    /// Rational unit quadruple from a rational 3-space point via
    /// stereographic projection onto the unit 3-sphere.
    fn unit_quadruple(u: &Universe, w: &[ExactScalar; 3]) -> EulerQuadruple {
        let s = &(&w[0] * &w[0]) + &(&(&w[1] * &w[1]) + &(&w[2] * &w[2]));
        let denom = &ExactScalar::one() + &s;
        let two = ExactScalar::from_int(2);
        let a0 = (&ExactScalar::one() - &s).checked_div(&denom).unwrap();
        let t = two.checked_div(&denom).unwrap();
        EulerQuadruple::concrete(
            u,
            &[a0, &w[0] * &t, &w[1] * &t, &w[2] * &t],
        )
    }

    #[test]
    fn rotation_of_identity_quadruple_is_identity() {
        let u = empty();
        let q = quad(&u, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(matrix_r(&q), PolyMatrix::identity(&u, 3));
    }

    #[test]
    fn printed_rotation_entries_match_the_product_form() {
        let u = VariableUniverse::quadruples(&["a"]);
        let a = EulerQuadruple::symbolic_prefixed(&u, "a").unwrap();
        let r = matrix_r(&a);
        let e = |s: &str| Polynomial::parse(&u, s).unwrap();
        assert_eq!(r.get(0, 0), &e("a0^2 + a1^2 - a2^2 - a3^2"));
        assert_eq!(r.get(0, 1), &e("2*a1*a2 - 2*a0*a3"));
        assert_eq!(r.get(0, 2), &e("2*a1*a3 + 2*a0*a2"));
        assert_eq!(r.get(1, 0), &e("2*a1*a2 + 2*a0*a3"));
        assert_eq!(r.get(1, 1), &e("a0^2 - a1^2 + a2^2 - a3^2"));
        assert_eq!(r.get(1, 2), &e("2*a2*a3 - 2*a0*a1"));
        assert_eq!(r.get(2, 0), &e("2*a1*a3 - 2*a0*a2"));
        assert_eq!(r.get(2, 1), &e("2*a2*a3 + 2*a0*a1"));
        assert_eq!(r.get(2, 2), &e("a0^2 - a1^2 - a2^2 + a3^2"));
    }

    #[test]
    fn half_half_quadruples_rotate_the_unit_cube_edges() {
        let u = empty();
        let e1 = Vector3::standard_unit(&u, 1);
        let a = quad(&u, &[(1, 2), (1, 2), (1, 2), (-1, 2)]);
        assert_eq!(
            rotate(&a, &e1),
            vec3(&u, &[(0, 1), (0, 1), (-1, 1)])
        );
        let b = quad(&u, &[(1, 2), (1, 2), (1, 2), (1, 2)]);
        assert_eq!(rotate(&b, &e1), vec3(&u, &[(0, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn identities_hold_symbolically() {
        let u = VariableUniverse::quadruples(&["a", "b"]);
        let a = EulerQuadruple::symbolic_prefixed(&u, "a").unwrap();
        let b = EulerQuadruple::symbolic_prefixed(&u, "b").unwrap();
        assert!(euler_identities_check(&a, &b).unwrap());
    }

    #[test]
    fn identities_hold_on_concrete_unit_quadruples() {
        let u = empty();
        let a = quad(&u, &[(3, 5), (4, 5), (0, 1), (0, 1)]);
        let b = quad(&u, &[(5, 13), (0, 1), (12, 13), (0, 1)]);
        assert!(euler_identities_check(&a, &b).unwrap());
        let id = quad(&u, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(euler_identities_check(&id, &b).unwrap());
    }

    #[test]
    fn identities_hold_on_random_unit_quadruples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260826);
        let u = empty();
        for _ in 0..25 {
            let mut w = || {
                [
                    ExactScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
                    ExactScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
                    ExactScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
                ]
            };
            let a = unit_quadruple(&u, &w());
            let b = unit_quadruple(&u, &w());
            assert!(a.norm_squared().as_constant().unwrap().is_one());
            assert!(euler_identities_check(&a, &b).unwrap());
            // unit quadruples give honest rotations
            assert!(matrix_r(&a)
                .determinant()
                .unwrap()
                .as_constant()
                .unwrap()
                .is_one());
        }
    }

    #[test]
    fn compose_with_identity_and_conjugate() {
        let u = empty();
        let a = quad(&u, &[(3, 5), (0, 1), (4, 5), (0, 1)]);
        let id = quad(&u, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(compose(&a, &id), a);
        let c = compose(&a, &a.conjugate());
        assert_eq!(c, quad(&u, &[(1, 1), (0, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn compose_matches_the_matrix_product() {
        let u = empty();
        let a = quad(&u, &[(1, 2), (1, 2), (1, 2), (-1, 2)]);
        let b = quad(&u, &[(1, 2), (1, 2), (1, 2), (1, 2)]);
        let c = compose(&a, &b);
        assert_eq!(matrix_r(&c), matrix_r(&b).mul(&matrix_r(&a)).unwrap());
    }

    #[test]
    fn compose_is_associative_symbolically() {
        let u = VariableUniverse::quadruples(&["a", "b", "c"]);
        let a = EulerQuadruple::symbolic_prefixed(&u, "a").unwrap();
        let b = EulerQuadruple::symbolic_prefixed(&u, "b").unwrap();
        let c = EulerQuadruple::symbolic_prefixed(&u, "c").unwrap();
        assert_eq!(compose(&compose(&a, &b), &c).entries(),
                   compose(&a, &compose(&b, &c)).entries());
    }

    #[test]
    fn rotation_is_orthogonal_up_to_norm_symbolically() {
        let u = VariableUniverse::quadruples(&["a"]);
        let a = EulerQuadruple::symbolic_prefixed(&u, "a").unwrap();
        let r = matrix_r(&a);
        let n2 = a.norm_squared();
        let expected = PolyMatrix::identity(&u, 3).scale(&(&n2 * &n2));
        assert_eq!(r.mul(&r.transpose()).unwrap(), expected);
        // sign ambiguity: -a encodes the same rotation
        assert_eq!(matrix_r(&a.negated()), r);
    }

    #[test]
    fn l_operator_laws() {
        let u = empty();
        let e3 = Vector3::standard_unit(&u, 3);
        let l = l_operator(&e3, &e3).unwrap();
        assert_eq!(l.mul(&l).unwrap(), PolyMatrix::identity(&u, 4));
        assert!(l_operator_laws_hold(&e3, &e3).unwrap());

        let v = vec3(&u, &[(2, 3), (-1, 7), (5, 2)]);
        let y = vec3(&u, &[(0, 1), (3, 4), (-2, 5)]);
        assert!(l_operator_laws_hold(&v, &y).unwrap());

        let zero = vec3(&u, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(l_operator(&zero, &y).unwrap_err(), EulerError::ZeroVector);
    }

    #[test]
    fn l_operator_laws_hold_symbolically() {
        let u = VariableUniverse::new(&["v1", "v2", "v3", "y1", "y2", "y3"]).unwrap();
        let var = |n: &str| Polynomial::var_named(&u, n).unwrap();
        let v = Vector3::new([var("v1"), var("v2"), var("v3")]);
        let y = Vector3::new([var("y1"), var("y2"), var("y3")]);
        assert!(l_operator_laws_hold(&v, &y).unwrap());
    }

    #[test]
    fn l_commutator_identity() {
        let u = empty();
        let v = vec3(&u, &[(1, 1), (2, 1), (0, 1)]);
        let y = vec3(&u, &[(0, 1), (1, 3), (1, 1)]);
        let w = vec3(&u, &[(-1, 2), (1, 1), (3, 5)]);
        let z = vec3(&u, &[(2, 7), (0, 1), (-1, 1)]);
        assert!(l_commutator_identity_holds(&v, &y, &w, &z).unwrap());
    }

    #[test]
    fn axis_eigenvector_of_the_axis_alignment_operator() {
        // chi = (0, -2m0, m0^2-1)/(m0^2+1) at m0 = 7/4 is a unit vector and
        // beta = (1+chi3, -chi2, chi1, 0) is a fixed vector of
        // L = Ktilde(e3^)K(chi^)^T.
        let u = empty();
        let chi = vec3(&u, &[(0, 1), (-56, 65), (33, 65)]);
        assert!(chi.norm_squared().as_constant().unwrap().is_one());
        let e3 = Vector3::standard_unit(&u, 3);
        let l = l_operator(&e3, &chi).unwrap();
        let beta = quad(&u, &[(98, 65), (56, 65), (0, 1), (0, 1)]);
        let image = l.mul_vec(&beta.to_vec()).unwrap();
        assert_eq!(image.as_slice(), beta.to_vec().as_slice());
        assert!(l_eigenvector_conditions_hold(&e3, &chi, &beta).unwrap());
    }

    #[test]
    fn eigenvector_conditions_reject_non_eigenvectors() {
        let u = empty();
        let e1 = Vector3::standard_unit(&u, 1);
        let e2 = Vector3::standard_unit(&u, 2);
        let not_eig = quad(&u, &[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert!(!l_eigenvector_conditions_hold(&e1, &e2, &not_eig).unwrap());
    }

    #[test]
    fn irrational_norm_is_reported() {
        let u = empty();
        let v = vec3(&u, &[(1, 1), (1, 1), (0, 1)]);
        let y = Vector3::standard_unit(&u, 1);
        let a = quad(&u, &[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(
            l_eigenvector_conditions_hold(&v, &y, &a).unwrap_err(),
            EulerError::IrrationalNorm
        );
    }

    #[test]
    fn display_of_rotation_entry() {
        let u = VariableUniverse::quadruples(&["a"]);
        let a = EulerQuadruple::symbolic_prefixed(&u, "a").unwrap();
        let r = matrix_r(&a);
        assert_eq!(r.get(2, 2).to_string(), "a0^2 - a1^2 - a2^2 + a3^2");
    }
}
