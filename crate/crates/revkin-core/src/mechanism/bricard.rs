//! Preset for the classical octahedral six-bar linkage: six bodies in a
//! closed loop, unit link lengths, axes cycling through the coordinate
//! directions. Provides the mechanism data with its exact initial
//! configuration, the closed-form lift from the three essential
//! coordinates back to the full twenty-variable configuration, the
//! trigonometric parametrization of the two motion components, and the
//! reference bases used by the golden tests.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{
    s, InitialConfiguration, JointDef, MechanismError, MechanismSpec,
};
use crate::poly::{Polynomial, Universe, VariableUniverse};
use crate::revolute::Vec3;
use crate::scalar::ExactScalar;

fn e(i: usize) -> Vec3 {
    let mut v = [s(0, 1), s(0, 1), s(0, 1)];
    v[i - 1] = s(1, 1);
    v
}

fn pt(x: i64, y: i64, z: i64) -> Vec3 {
    [s(x, 1), s(y, 1), s(z, 1)]
}

/// The six-bar preset: joint anchor points on the unit cube, rotation
/// axes `e3, e2, e1, e3, e2, e1`, plane pairs completing each axis, unit
/// link scales, and the five exact initial quadruples.
pub fn preset() -> (MechanismSpec, InitialConfiguration) {
    let points = [
        pt(0, 0, 1),
        pt(1, 0, 1),
        pt(1, 0, 0),
        pt(1, 1, 0),
        pt(0, 1, 0),
        pt(0, 1, 1),
    ];
    let axes = [e(3), e(2), e(1), e(3), e(2), e(1)];
    let planes = [
        (e(1), e(2)),
        (e(1), e(3)),
        (e(2), e(3)),
        (e(1), e(2)),
        (e(1), e(3)),
        (e(2), e(3)),
    ];
    let n = 6usize;
    let joints: Vec<JointDef> = (0..n)
        .map(|l| JointDef {
            bodies: ((l + n - 1) % n, l),
            point: points[l].clone(),
            axis: axes[l].clone(),
            plane: planes[l].clone(),
        })
        .collect();
    let spec = MechanismSpec {
        body_names: vec![
            "base".to_string(),
            "body1".to_string(),
            "body2".to_string(),
            "body3".to_string(),
            "body4".to_string(),
            "body5".to_string(),
        ],
        prefixes: vec![
            "a".to_string(),
            "b".to_string(),
            "c".to_string(),
            "d".to_string(),
            "e".to_string(),
        ],
        joints,
        loop_closure: true,
        link_scales: vec![s(1, 1); 6],
        essential_hint: Some(vec!["a0".to_string(), "a2".to_string(), "c2".to_string()]),
        // the closed-form relations of the non-essential variables double
        // as sheet selectors; each is verified against the computed ideal
        // before use
        sheet_hints: {
            let mut relations = reference_basis().1;
            relations.split_off(2)
        },
    };
    let init = InitialConfiguration {
        quads: vec![
            [s(1, 2), s(1, 2), s(1, 2), s(-1, 2)],
            [s(1, 2), s(1, 2), s(1, 2), s(1, 2)],
            [s(0, 1), s(0, 1), s(0, 1), s(1, 1)],
            [s(1, 2), s(1, 2), s(-1, 2), s(1, 2)],
            [s(1, 2), s(1, 2), s(-1, 2), s(-1, 2)],
        ],
    };
    (spec, init)
}

/// Names of the essential coordinates of the motion variety, in universe
/// order.
pub const ESSENTIAL: [&str; 3] = ["a0", "a2", "c2"];

/// The exact closed-form lift from an essential point `(a0, a2, c2)` to
/// the full twenty-variable configuration, in the preset universe's
/// variable order. Requires `a0 != 0`.
pub fn lift_exact(point: &[ExactScalar; 3]) -> Result<Vec<ExactScalar>, MechanismError> {
    let [a0, a2, c2] = point;
    if a0.is_zero() {
        return Err(MechanismError::DivisionByZero(
            "lift undefined at a0 = 0".to_string(),
        ));
    }
    let inv4a0 = &s(1, 4)
        * &a0
            .recip()
            .map_err(|_| MechanismError::DivisionByZero("a0".to_string()))?;
    // d = a2 - c2; the off-diagonal lift entries are 2*a2*d and 2*a0*d
    let d = a2 - c2;
    let b1 = &s(2, 1) * &(a2 * &d);
    let b3 = &s(2, 1) * &(a0 * &d);
    let b2 = &s(2, 1) * &(a2 * &inv4a0);
    let c0 = a0 - &inv4a0;
    let mut out = Vec::with_capacity(20);
    // a
    out.extend([a0.clone(), a0.clone(), a2.clone(), -a2]);
    // b
    out.extend([s(1, 2), b1.clone(), b2.clone(), b3.clone()]);
    // c
    out.extend([c0.clone(), -&c0, c2.clone(), &(&s(2, 1) * a2) - c2]);
    // d
    out.extend([b1, s(1, 2), -&b3, b2]);
    // e
    out.extend([inv4a0.clone(), inv4a0, -&d, -&d]);
    Ok(out)
}

/// Float version of [`lift_exact`], returned as a name-to-value
/// assignment suitable for residual sampling.
pub fn lift_f64(point: &[f64; 3]) -> Result<BTreeMap<String, f64>, MechanismError> {
    let [a0, a2, c2] = *point;
    if a0 == 0.0 {
        return Err(MechanismError::DivisionByZero(
            "lift undefined at a0 = 0".to_string(),
        ));
    }
    let inv4a0 = 1.0 / (4.0 * a0);
    let d = a2 - c2;
    let values = [
        a0,
        a0,
        a2,
        -a2,
        0.5,
        2.0 * a2 * d,
        a2 / (2.0 * a0),
        2.0 * a0 * d,
        a0 - inv4a0,
        inv4a0 - a0,
        c2,
        2.0 * a2 - c2,
        2.0 * a2 * d,
        0.5,
        -2.0 * a0 * d,
        a2 / (2.0 * a0),
        inv4a0,
        inv4a0,
        -d,
        -d,
    ];
    let (spec, _) = preset();
    let universe = spec.universe();
    let mut out = BTreeMap::new();
    for (name, v) in universe.names().iter().zip(values) {
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

/// Trigonometric parametrization of the motion curve: for an angle `t`
/// with `4 cos^2 t - 1 >= 0` (the union of the two components), returns
/// the essential coordinates `(a0, a2, c2)` of both square-root branches
/// (`+` first). The branches coincide where the discriminant vanishes.
pub fn parametrize(t: f64) -> Result<([f64; 3], [f64; 3]), MechanismError> {
    let (sin, cos) = libm::sincos(t);
    let mut disc = 4.0 * cos * cos - 1.0;
    // tolerate roundoff at the component boundaries
    if disc < 0.0 && disc > -1e-12 {
        disc = 0.0;
    }
    if disc < 0.0 {
        return Err(MechanismError::OutOfRange(format!(
            "angle {t} lies outside both motion components (negative discriminant)"
        )));
    }
    let sqrt2 = libm::sqrt(2.0);
    let a0 = cos / sqrt2;
    let a2 = sin / sqrt2;
    let shift = libm::sqrt(disc) / (2.0 * sqrt2 * cos);
    Ok(([a0, a2, a2 + shift], [a0, a2, a2 - shift]))
}

use alloc::format;

fn pv(u: &Universe, name: &str) -> Polynomial {
    Polynomial::var_named(u, name).expect("variable present in universe")
}

fn pc(u: &Universe, p: i64, q: i64) -> Polynomial {
    Polynomial::constant(u, s(p, q))
}

/// The two generators of the motion variety's ideal in the essential
/// coordinates, over any universe containing `a0, a2, c2`:
/// `2 a2^2 + 2 a0^2 - 1` and `16 a0^2 (c2^2 - 2 c2 a2 - a0^2) + 1`.
pub fn variety_generators(u: &Universe) -> [Polynomial; 2] {
    let a0 = pv(u, "a0");
    let a2 = pv(u, "a2");
    let c2 = pv(u, "c2");
    let g0 = &(&(&pc(u, 2, 1) * &(&a2 * &a2)) + &(&pc(u, 2, 1) * &(&a0 * &a0))) - &pc(u, 1, 1);
    let w = &(&(&c2 * &c2) - &(&pc(u, 2, 1) * &(&c2 * &a2))) - &(&a0 * &a0);
    let g1 = &(&(&pc(u, 16, 1) * &(&a0 * &a0)) * &w) + &pc(u, 1, 1);
    [g0, g1]
}

/// The universe of the essential coordinates alone.
pub fn essential_universe() -> Universe {
    VariableUniverse::new(&ESSENTIAL).expect("distinct names")
}

/// The reference basis of the fully reduced constraint ideal over all
/// twenty variables: the two essential-variable generators followed by
/// seventeen relations expressing every other variable (used as a golden
/// oracle by the tests and the command-line golden check).
pub fn reference_basis() -> (Universe, Vec<Polynomial>) {
    let u = VariableUniverse::quadruples(&["a", "b", "c", "d", "e"]);
    let a0 = pv(&u, "a0");
    let a2 = pv(&u, "a2");
    let c2 = pv(&u, "c2");
    let one = pc(&u, 1, 1);
    let two = pc(&u, 2, 1);
    let w = &(&(&c2 * &c2) - &(&two * &(&c2 * &a2))) - &(&a0 * &a0);
    let a0w = &a0 * &w;
    // recurring pieces: 2*(c2 - a2) scaled by a2 or a0, and multiples of a0*w
    let diff = &c2 - &a2;
    let two_a2_diff = &two * &(&a2 * &diff);
    let two_a0_diff = &two * &(&a0 * &diff);
    let four_a0w = &pc(&u, 4, 1) * &a0w;
    let eight_a0a2w = &pc(&u, 8, 1) * &(&a2 * &a0w);
    let [h0, h1] = variety_generators(&u);
    let basis = vec![
        h0,
        h1,
        &pv(&u, "a1") - &a0,
        &pv(&u, "a3") + &a2,
        &(&pv(&u, "c0") - &four_a0w) - &a0,
        &(&pv(&u, "c1") + &four_a0w) + &a0,
        &(&pv(&u, "c3") + &c2) - &(&two * &a2),
        &(&two * &pv(&u, "b0")) - &one,
        &pv(&u, "b1") + &two_a2_diff,
        &pv(&u, "b2") + &eight_a0a2w,
        &pv(&u, "b3") + &two_a0_diff,
        &pv(&u, "d0") + &two_a2_diff,
        &(&two * &pv(&u, "d1")) - &one,
        &pv(&u, "d2") - &two_a0_diff,
        &pv(&u, "d3") + &eight_a0a2w,
        &pv(&u, "e0") + &four_a0w,
        &pv(&u, "e1") + &four_a0w,
        &(&pv(&u, "e2") - &c2) + &a2,
        &(&pv(&u, "e3") - &c2) + &a2,
    ];
    (u, basis)
}

/// The reference reduced lexicographic basis of the sub-ideal obtained
/// from the first two moving bodies alone (their two joint components
/// plus both normalizations), over the variable order
/// `a3 > a1 > b3 > b1 > b2 > b0 > a2 > a0`.
pub fn two_body_lex_basis() -> (Universe, Vec<Polynomial>) {
    let u = VariableUniverse::new(&["a3", "a1", "b3", "b1", "b2", "b0", "a2", "a0"])
        .expect("distinct names");
    let v = |n: &str| pv(&u, n);
    let a0 = v("a0");
    let a1 = v("a1");
    let a2 = v("a2");
    let a3 = v("a3");
    let b0 = v("b0");
    let b1 = v("b1");
    let b2 = v("b2");
    let b3 = v("b3");
    let one = pc(&u, 1, 1);
    let two = pc(&u, 2, 1);
    let basis = vec![
        &(&(&two * &(&a2 * &a2)) + &(&two * &(&a0 * &a0))) - &one,
        &(&b2 * &a0) - &(&b0 * &a2),
        &(&(&(&b1 * &b1) + &(&b2 * &b2)) + &(&two * &(&a0 * &a0))) - &one,
        &(&(&two * &(&b3 * &(&a0 * &a0))) - &b3) + &(&two * &(&b1 * &(&a2 * &a0))),
        &(&b3 * &a2) - &(&b1 * &a0),
        &(&b3 * &b2) - &(&b1 * &b0),
        &(&(&b3 * &b1) + &(&b2 * &b0)) - &(&two * &(&a2 * &a0)),
        &(&(&b3 * &b3) + &(&b0 * &b0)) - &(&two * &(&a0 * &a0)),
        &a1 - &a0,
        &a3 + &a2,
    ];
    (u, basis)
}

#[cfg(test)]
mod tests {
    use super::super::{
        analyze, assemble_constraints, local_frame, residual_sample,
    };
    use super::*;
    use crate::groebner::{buchberger, normal_form, Budget, IdealPresentation};
    use crate::poly::MonomialOrder;
    use crate::revolute::{decompose_joint, select_component, specialize_fixed_body, BodySlot};

    fn budget() -> Budget {
        Budget::new(50_000_000)
    }

    #[test]
    fn preset_assembles_twenty_generators_in_twenty_variables() {
        let (spec, init) = preset();
        let ideal = assemble_constraints(&spec, &init).expect("assembles");
        assert_eq!(ideal.universe().len(), 20);
        assert_eq!(ideal.generators().len(), 20);
        for q in &init.quads {
            let norm: ExactScalar = q.iter().map(|x| x * x).fold(s(0, 1), |acc, x| &acc + &x);
            assert_eq!(norm, s(1, 1));
        }
    }

    #[test]
    fn single_joint_chain_matches_axis_alignment_ideal() {
        // one moving body attached to the base by the second loop joint:
        // the assembled ideal is generated by the normalization together
        // with a0*a2 + a1*a3 and a0^2 - a1^2 - a2^2 + a3^2 (up to scale)
        let (full, full_init) = preset();
        let spec = MechanismSpec {
            body_names: vec!["base".to_string(), "body1".to_string()],
            prefixes: vec!["a".to_string()],
            joints: vec![JointDef { bodies: (0, 1), ..full.joints[1].clone() }],
            loop_closure: false,
            link_scales: vec![],
            essential_hint: None,
            sheet_hints: vec![],
        };
        let init = InitialConfiguration { quads: vec![full_init.quads[0].clone()] };
        let ideal = assemble_constraints(&spec, &init).expect("assembles");
        assert_eq!(ideal.generators().len(), 3);
        let u = ideal.universe().clone();
        let a0 = pv(&u, "a0");
        let a1 = pv(&u, "a1");
        let a2 = pv(&u, "a2");
        let a3 = pv(&u, "a3");
        let expected = vec![
            &(&(&(&(&a0 * &a0) + &(&a1 * &a1)) + &(&a2 * &a2)) + &(&a3 * &a3)) - &pc(&u, 1, 1),
            &(&a0 * &a2) + &(&a1 * &a3),
            &(&(&(&(&a0 * &a0) - &(&a1 * &a1)) - &(&a2 * &a2)) + &(&a3 * &a3)) * &pc(&u, 1, 1),
        ];
        let gb_ours = buchberger(&ideal, &MonomialOrder::DegRevLex, &budget()).unwrap();
        let gb_ref = buchberger(
            &IdealPresentation::new(&u, expected).unwrap(),
            &MonomialOrder::DegRevLex,
            &budget(),
        )
        .unwrap();
        assert_eq!(gb_ours.elements(), gb_ref.elements());
    }

    #[test]
    fn two_body_subchain_reproduces_reference_lex_basis() {
        let (spec, init) = preset();
        let (gu, golden) = two_body_lex_basis();
        let b = Budget::new(50_000_000);
        // component of the joint attaching body1 to the base
        let identity = [s(1, 1), s(0, 1), s(0, 1), s(0, 1)];
        let frame1 = local_frame(&spec, &init, &spec.joints[1]).unwrap();
        let d1 = decompose_joint(&frame1, "fixedbody", "a", &b).unwrap();
        let (plus, minus) = specialize_fixed_body(&d1, &identity, BodySlot::First).unwrap();
        let comp1 = select_component(&plus, &minus, &init.quads[0].to_vec()).unwrap();
        // component of the joint between body1 and body2
        let frame2 = local_frame(&spec, &init, &spec.joints[2]).unwrap();
        let d2 = decompose_joint(&frame2, "a", "b", &b).unwrap();
        let mut point = init.quads[0].to_vec();
        point.extend(init.quads[1].iter().cloned());
        let comp2 = select_component(&d2.plus, &d2.minus, &point).unwrap();

        let mut gens: Vec<Polynomial> = Vec::new();
        for g in comp1.generators().iter().chain(comp2.generators()) {
            gens.push(g.embed(&gu).unwrap());
        }
        for prefix in ["a", "b"] {
            let q = crate::euler::EulerQuadruple::symbolic_prefixed(&gu, prefix).unwrap();
            gens.push(&q.norm_squared() - &Polynomial::one(&gu));
        }
        let gb = buchberger(
            &IdealPresentation::new(&gu, gens).unwrap(),
            &MonomialOrder::Lex,
            &b,
        )
        .unwrap();
        // compare as monic sets
        let mut monic_golden: Vec<Polynomial> = golden
            .iter()
            .map(|g| {
                let (_, lc) = g.leading(&MonomialOrder::Lex).unwrap();
                g.scale(&lc.recip().unwrap())
            })
            .collect();
        monic_golden.sort_by_key(|p| format!("{p:?}"));
        let mut computed = gb.elements().to_vec();
        computed.sort_by_key(|p| format!("{p:?}"));
        assert_eq!(computed, monic_golden);
    }

    fn exact_norm_check(values: &[ExactScalar]) {
        for quad in values.chunks(4) {
            let n: ExactScalar = quad.iter().map(|x| x * x).fold(s(0, 1), |acc, x| &acc + &x);
            assert_eq!(n, s(1, 1));
        }
    }

    #[test]
    fn lift_reproduces_initial_configuration_and_zeroes_constraints() {
        let (spec, init) = preset();
        let assembled = assemble_constraints(&spec, &init).unwrap();
        // essential coordinates of the initial configuration
        let lifted = lift_exact(&[s(1, 2), s(1, 2), s(0, 1)]).unwrap();
        assert_eq!(lifted, init.point());
        // two more exact rational points of the variety
        for pt in [[s(1, 2), s(1, 2), s(1, 1)], [s(1, 2), s(-1, 2), s(-1, 1)]] {
            let values = lift_exact(&pt).unwrap();
            exact_norm_check(&values);
            for g in assembled.generators() {
                assert!(g.eval_exact(&values).is_zero());
            }
            let (ru, reference) = reference_basis();
            let _ = ru;
            for h in &reference {
                assert!(h.eval_exact(&values).is_zero());
            }
        }
        assert!(matches!(
            lift_exact(&[s(0, 1), s(1, 2), s(0, 1)]),
            Err(MechanismError::DivisionByZero(_))
        ));
    }

    #[test]
    fn lift_then_project_is_identity() {
        let (spec, _) = preset();
        let universe = spec.universe();
        let idx = |n: &str| universe.index_of(n).unwrap();
        for k in 1..=25i64 {
            let pt = [s(k, 26), s(k + 1, 27), s(k - 13, 9)];
            let values = lift_exact(&pt).unwrap();
            assert_eq!(values[idx("a0")], pt[0]);
            assert_eq!(values[idx("a2")], pt[1]);
            assert_eq!(values[idx("c2")], pt[2]);
        }
    }

    #[test]
    fn parametrization_samples_stay_on_the_variety() {
        let (spec, init) = preset();
        let assembled = assemble_constraints(&spec, &init).unwrap();
        let (_, reference) = reference_basis();
        let mut gens = assembled.generators().to_vec();
        gens.extend(reference.iter().cloned());
        let pi = core::f64::consts::PI;
        let mut max = 0.0f64;
        for i in 0..=100 {
            // sweep both components
            for t0 in [-pi / 3.0, 2.0 * pi / 3.0] {
                let t = t0 + (i as f64) / 100.0 * (2.0 * pi / 3.0);
                let (plus, minus) = parametrize(t).unwrap();
                for p in [plus, minus] {
                    let assignment = lift_f64(&p).unwrap();
                    let r = residual_sample(&gens, &assignment).unwrap();
                    if r > max {
                        max = r;
                    }
                }
            }
        }
        assert!(max < 1e-9, "max residual {max}");
        // outside both components
        assert!(parametrize(core::f64::consts::FRAC_PI_2).is_err());
        // boundary: branches coincide
        let (plus, minus) = parametrize(pi / 3.0).unwrap();
        // the gap scales like the square root of the discriminant's
        // roundoff, so only ~1e-7 agreement is achievable in floats
        assert!((plus[2] - minus[2]).abs() < 1e-7);
        // t = 0 hits the printed values
        let (p0, m0) = parametrize(0.0).unwrap();
        assert!((p0[0] - 1.0 / libm::sqrt(2.0)).abs() < 1e-15);
        assert!(p0[1].abs() < 1e-15);
        let c2 = libm::sqrt(3.0) / (2.0 * libm::sqrt(2.0));
        assert!((p0[2] - c2).abs() < 1e-15 && (m0[2] + c2).abs() < 1e-15);
        // second component at t = pi
        let (pp, _) = parametrize(pi).unwrap();
        assert!((pp[0] + 1.0 / libm::sqrt(2.0)).abs() < 1e-15 && pp[1].abs() < 1e-12);
    }

    fn stage_a_reduction() -> super::super::Reduction {
        let (spec, init) = preset();
        let assembled = assemble_constraints(&spec, &init).unwrap();
        let (_, combined, _) =
            super::super::combined_system(&spec, &init, &assembled, &budget()).unwrap();
        let mut red = super::super::Reduction {
            universe: combined.universe().clone(),
            gens: combined.generators().to_vec(),
            point: init.point(),
            lift: alloc::vec::Vec::new(),
            notes: alloc::vec::Vec::new(),
            protected: ESSENTIAL.iter().map(|s| s.to_string()).collect(),
            hints: alloc::vec::Vec::new(),
        };
        while red.extract_linear().unwrap() {}
        std::println!(
            "stage A: {} vars, {} gens",
            red.universe.len(),
            red.gens.len()
        );
        red
    }

    #[test]
    #[ignore]
    fn probe_block_elimination() {
        let red = stage_a_reduction();
        let keep: Vec<usize> = ESSENTIAL
            .iter()
            .filter_map(|n| red.universe.index_of(n))
            .collect();
        let drop: Vec<usize> =
            (0..red.universe.len()).filter(|v| !keep.contains(v)).collect();
        let order = MonomialOrder::elimination(&drop, &keep, crate::poly::OrderKind::DegRevLex);
        let t0 = std::time::Instant::now();
        let r = buchberger(
            &IdealPresentation::new(&red.universe, red.gens.clone()).unwrap(),
            &order,
            &Budget::new(20_000_000),
        );
        std::println!("block elim: {:?} -> {:?}", t0.elapsed(), r.map(|g| g.elements().len()));
    }

    #[test]
    #[ignore]
    fn probe_lex_triangular() {
        let red = stage_a_reduction();
        // reorder: non-essential first (current order), essential last
        let mut names: Vec<String> = red
            .universe
            .names()
            .iter()
            .filter(|n| !ESSENTIAL.contains(&n.as_str()))
            .map(|n| n.to_string())
            .collect();
        names.extend(["c2".to_string(), "a2".to_string(), "a0".to_string()]);
        let refs: Vec<&str> = names.iter().map(|n| n.as_str()).collect();
        let u = VariableUniverse::new(&refs).unwrap();
        let gens: Vec<Polynomial> = red.gens.iter().map(|g| g.embed(&u).unwrap()).collect();
        let t0 = std::time::Instant::now();
        let r = buchberger(
            &IdealPresentation::new(&u, gens).unwrap(),
            &MonomialOrder::Lex,
            &Budget::new(20_000_000),
        );
        std::println!("lex: {:?} -> {:?}", t0.elapsed(), r.map(|g| g.elements().len()));
    }

    #[test]
    #[ignore]
    fn probe_staged_degrevlex() {
        let mut red = stage_a_reduction();
        // introduce bodies one at a time: GB over gens supported on the
        // first k body blocks only, seeding the next stage
        let b = Budget::new(20_000_000);
        let t0 = std::time::Instant::now();
        let prefixes = ["a", "b", "c", "d", "e"];
        for k in 1..=prefixes.len() {
            let allowed: Vec<usize> = (0..red.universe.len())
                .filter(|v| {
                    let n = red.universe.name(*v);
                    prefixes[..k].iter().any(|p| n.starts_with(p))
                })
                .collect();
            let (inside, outside): (Vec<Polynomial>, Vec<Polynomial>) = red
                .gens
                .iter()
                .cloned()
                .partition(|g| g.support().iter().all(|v| allowed.contains(v)));
            if inside.is_empty() {
                continue;
            }
            std::println!("stage {k}: {} gens inside, {} outside", inside.len(), outside.len());
            let gb = buchberger(
                &IdealPresentation::new(&red.universe, inside).unwrap(),
                &MonomialOrder::DegRevLex,
                &b,
            )
            .unwrap();
            std::println!("stage {k}: gb {} elements, {:?}", gb.elements().len(), t0.elapsed());
            red.gens = gb.elements().to_vec();
            red.gens.extend(outside);
            while red.extract_linear().unwrap() {}
            std::println!("stage {k}: after linear extraction {} vars", red.universe.len());
        }
        std::println!("staged total: {:?}", t0.elapsed());
    }

    #[test]
    #[ignore]
    fn probe_continuation() {
        let mut red = stage_a_reduction();
        let b = Budget::new(50_000_000);
        let t0 = std::time::Instant::now();
        let prefixes = ["a", "b", "c", "d", "e"];
        for k in 1..=prefixes.len() {
            let allowed: Vec<usize> = (0..red.universe.len())
                .filter(|v| {
                    let n = red.universe.name(*v);
                    prefixes[..k].iter().any(|p| n.len() == p.len() + 1 && n.starts_with(p))
                })
                .collect();
            let (inside, outside): (Vec<Polynomial>, Vec<Polynomial>) = red
                .gens
                .iter()
                .cloned()
                .partition(|g| g.support().iter().all(|v| allowed.contains(v)));
            if inside.is_empty() {
                continue;
            }
            let gb = buchberger(
                &IdealPresentation::new(&red.universe, inside).unwrap(),
                &MonomialOrder::DegRevLex,
                &b,
            )
            .unwrap();
            red.gens = gb.elements().to_vec();
            red.gens.extend(outside);
            while red.extract_linear().unwrap() {}
            std::println!("stage {k}: {} vars, {} gens, {:?}", red.universe.len(), red.gens.len(), t0.elapsed());
        }
        // continuation: the main fixpoint loop
        for round in 0..10 {
            let gb = buchberger(
                &IdealPresentation::new(&red.universe, red.gens.clone()).unwrap(),
                &MonomialOrder::DegRevLex,
                &b,
            )
            .unwrap();
            red.gens = gb.elements().to_vec();
            std::println!(
                "round {round}: gb {} elements over {} vars, {:?}",
                red.gens.len(),
                red.universe.len(),
                t0.elapsed()
            );
            let mut progressed = false;
            while red.extract_linear().unwrap() {
                progressed = true;
            }
            if !progressed && red.extract_square().unwrap() {
                progressed = true;
                while red.extract_linear().unwrap() {
                    progressed = true;
                }
            }
            if !progressed && red.extract_factor().unwrap() {
                progressed = true;
            }
            std::println!(
                "round {round}: after extraction {} vars, {} gens, progressed={progressed}, {:?}",
                red.universe.len(),
                red.gens.len(),
                t0.elapsed()
            );
            if !progressed {
                break;
            }
        }
    }

    #[test]
    fn analysis_finds_the_one_dimensional_regular_variety() {
        let (spec, init) = preset();
        let b = Budget::new(50_000_000);
        let report = analyze(&spec, &init, &b).expect("analysis succeeds");
        assert_eq!(report.dimension, 1);
        assert!(!report.zero_dimensional);
        let names: Vec<&str> = report.essential.iter().map(|n| n.as_str()).collect();
        assert_eq!(names, ESSENTIAL);

        // the reduced basis is exactly the basis of the two published
        // essential generators
        let eu = report.reduced.universe().clone();
        let expected = buchberger(
            &IdealPresentation::new(&eu, variety_generators(&eu).to_vec()).unwrap(),
            &MonomialOrder::DegRevLex,
            &b,
        )
        .unwrap();
        assert_eq!(report.reduced.elements(), expected.elements());

        // regular complete intersection of codimension 2 in R^3
        assert!(report.regularity.is_regular);
        assert_eq!(report.regularity.codim, 2);
        assert_eq!(expected.elements().len(), 2);

        // mutual membership with the reference basis: every combined
        // generator lies in the reference ideal ...
        let (ru, reference) = reference_basis();
        let ref_gb = buchberger(
            &IdealPresentation::new(&ru, reference.clone()).unwrap(),
            &MonomialOrder::DegRevLex,
            &b,
        )
        .unwrap();
        for g in report.combined.generators() {
            assert!(normal_form(&g.embed(&ru).unwrap(), &ref_gb).is_zero());
        }
        // ... and every reference element, rewritten through the
        // (rational) lift and cleared of denominators, lies in the
        // reduced ideal
        let mut bindings: BTreeMap<String, (Polynomial, Polynomial)> = BTreeMap::new();
        for (name, num, den) in &report.lift {
            bindings.insert(name.clone(), (num.clone(), den.clone()));
        }
        for h in &reference {
            let (num, _den) =
                crate::mechanism::resolve_rational(h, &bindings, &eu).unwrap();
            assert!(normal_form(&num, &report.reduced).is_zero());
        }

        // the lift reproduces the full initial configuration
        let lifted = report
            .lift_point(&[s(1, 2), s(1, 2), s(0, 1)])
            .unwrap();
        assert_eq!(lifted, init.point());
    }
}

#[cfg(test)]
mod dump {
    extern crate std;
    use super::*;
    use crate::groebner::{ideal_to_text, Budget, IdealPresentation};
    use crate::mechanism::{assemble_constraints, combined_system, Reduction};
    use crate::poly::MonomialOrder;
    use std::io::Write;

    #[test]
    #[ignore]
    fn probe_dump_stalled() {
        let (spec, init) = preset();
        let assembled = assemble_constraints(&spec, &init).unwrap();
        let b = Budget::new(50_000_000);
        let (_, combined, _) = combined_system(&spec, &init, &assembled, &b).unwrap();
        let mut red = Reduction {
            universe: combined.universe().clone(),
            gens: combined.generators().to_vec(),
            point: init.point(),
            lift: Vec::new(),
            notes: Vec::new(),
            protected: spec.essential_hint.clone().unwrap(),
            hints: spec.sheet_hints.clone(),
        };
        let t0 = std::time::Instant::now();
        while red.extract_linear().unwrap() {}
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
                    let stage_gb = crate::groebner::buchberger(
                        &IdealPresentation::new(&red.universe, inside).unwrap(),
                        &MonomialOrder::DegRevLex,
                        &b,
                    )
                    .unwrap();
                    red.gens = stage_gb.elements().to_vec();
                    red.gens.extend(outside);
                }
                let mut progressed = false;
                while red.extract_linear().unwrap() {
                    progressed = true;
                }
                if !progressed && red.extract_square().unwrap() {
                    progressed = true;
                }
                if !progressed && red.extract_factor().unwrap() {
                    progressed = true;
                }
                std::println!(
                    "stage {k}: {} vars, {} gens, progressed={progressed}, {:?}",
                    red.universe.len(),
                    red.gens.len(),
                    t0.elapsed()
                );
                if !progressed {
                    break;
                }
            }
        }
        loop {
            let gb = crate::groebner::buchberger(
                &IdealPresentation::new(&red.universe, red.gens.clone()).unwrap(),
                &MonomialOrder::DegRevLex,
                &b,
            )
            .unwrap();
            red.gens = gb.elements().to_vec();
            let mut progressed = false;
            while red.extract_linear().unwrap() {
                progressed = true;
            }
            if !progressed && red.extract_square().unwrap() {
                progressed = true;
            }
            if !progressed && red.extract_factor().unwrap() {
                progressed = true;
            }
            if !progressed && red.extract_sheet_hint(&b).unwrap() {
                progressed = true;
            }
            if !progressed && red.extract_rational(&b).unwrap() {
                progressed = true;
            }
            std::println!(
                "main: {} vars, {} gens, progressed={progressed}, {:?}",
                red.universe.len(),
                red.gens.len(),
                t0.elapsed()
            );
            if !progressed {
                break;
            }
        }
        for note in &red.notes {
            std::println!("note: {note}");
        }
        let ideal = IdealPresentation::new(&red.universe, red.gens.clone()).unwrap();
        let text = ideal_to_text(&ideal, &MonomialOrder::DegRevLex);
        let mut f = std::fs::File::create("/tmp/bricard_stalled.txt").unwrap();
        f.write_all(text.as_bytes()).unwrap();
        let mut g = std::fs::File::create("/tmp/bricard_point.txt").unwrap();
        for (name, v) in red.universe.names().iter().zip(red.point.iter()) {
            std::writeln!(g, "{name} = {v}").unwrap();
        }
    }
}

#[cfg(test)]
mod elim_probe {
    extern crate std;
    use crate::groebner::{buchberger, ideal_from_text, Budget};
    use crate::poly::{MonomialOrder, OrderKind};
    use alloc::vec::Vec;

    #[test]
    #[ignore]
    fn probe_fallback_elimination() {
        let text = std::fs::read_to_string("/tmp/bricard_stalled.txt").unwrap();
        let (ideal, _) = ideal_from_text(&text).unwrap();
        let u = ideal.universe();
        let keep_names = ["a0", "a2", "c2"];
        let drop: Vec<usize> = (0..u.len())
            .filter(|v| !keep_names.contains(&u.names()[*v].as_str()))
            .collect();
        let keep: Vec<usize> = (0..u.len()).filter(|v| !drop.contains(v)).collect();
        let order = MonomialOrder::elimination(&drop, &keep, OrderKind::DegRevLex);
        let t0 = std::time::Instant::now();
        let gb = buchberger(&ideal, &order, &Budget::new(50_000_000)).unwrap();
        std::println!("elimination GB: {} elements, {:?}", gb.elements().len(), t0.elapsed());
        for g in gb.elements() {
            std::println!("  {}", g.render(&order));
        }
    }
}

#[cfg(test)]
mod sat_probe {
    extern crate std;
    use crate::groebner::{buchberger, ideal_from_text, normal_form, saturate, Budget};
    use crate::poly::{MonomialOrder, OrderKind, Polynomial};
    use alloc::vec::Vec;

    #[test]
    #[ignore]
    fn probe_saturation() {
        let text = std::fs::read_to_string("/tmp/bricard_stalled.txt").unwrap();
        let (ideal, _) = ideal_from_text(&text).unwrap();
        let u = ideal.universe().clone();
        let a0 = Polynomial::var_named(&u, "a0").unwrap();
        let budget = Budget::new(50_000_000);
        let t0 = std::time::Instant::now();
        let sat = saturate(&ideal, &a0, &budget).unwrap();
        std::println!("saturated: {} gens, {:?}", sat.generators().len(), t0.elapsed());
        // is the linear relation c3 = 2 a2 - c2 now a member?
        let c3 = Polynomial::var_named(&u, "c3").unwrap();
        let a2 = Polynomial::var_named(&u, "a2").unwrap();
        let c2 = Polynomial::var_named(&u, "c2").unwrap();
        let rel = &(&c3 - &a2.scale(&crate::scalar::ExactScalar::ratio(2, 1))) + &c2;
        let gb = buchberger(&sat, &MonomialOrder::DegRevLex, &budget).unwrap();
        std::println!("member: {}", normal_form(&rel.embed(sat.universe()).unwrap(), &gb).is_zero());
        let keep_names = ["a0", "a2", "c2"];
        let drop: Vec<usize> = (0..sat.universe().len())
            .filter(|v| !keep_names.contains(&sat.universe().names()[*v].as_str()))
            .collect();
        let elim = crate::groebner::eliminate(&sat, &drop, OrderKind::DegRevLex, &budget).unwrap();
        let egb = buchberger(&elim, &MonomialOrder::DegRevLex, &budget).unwrap();
        for g in egb.elements() {
            std::println!("  essential: {}", g.render(&MonomialOrder::DegRevLex));
        }
        std::println!("total {:?}", t0.elapsed());
    }
}
