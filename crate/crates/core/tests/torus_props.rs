use lietorus::liealg::{CartanType, SigmaSpec};
use lietorus::scalars::{q, CycScalar};
use lietorus::torus::{bracket_raw, CentralClass, CoordinateChange, Torus, TorusElement, TorusRoot, Weight};
use proptest::prelude::*;

fn torus(t: CartanType, l: usize, specs: &[SigmaSpec]) -> Torus {
    Torus::from_specs(t, l, specs).unwrap()
}

fn swap() -> SigmaSpec {
    SigmaSpec::Diagram { perm: vec![2, 1] }
}

fn jacobi_on_basis(t: &Torus, radius: i64) {
    let basis = t.sample_basis(radius);
    let n = basis.len();
    for a in 0..n {
        for b in a + 1..n {
            let ab = t.bracket(&basis[a], &basis[b]).unwrap();
            let ba = t.bracket(&basis[b], &basis[a]).unwrap();
            assert!(ab.add(&ba).is_zero(), "antisymmetry fails");
            for c in b + 1..n {
                let x = &basis[a];
                let y = &basis[b];
                let z = &basis[c];
                let s1 = t.bracket(x, &t.bracket(y, z).unwrap());
                let s2 = t.bracket(y, &t.bracket(z, x).unwrap());
                let s3 = t.bracket(z, &ab);
                // brackets may leave the sampled window but stay valid elements
                let total = s1.unwrap().add(&s2.unwrap()).add(&s3.unwrap());
                assert!(total.is_zero(), "Jacobi fails on basis triple ({a}, {b}, {c})");
            }
        }
    }
}

#[test]
fn jacobi_untwisted_sl2_two_variables() {
    jacobi_on_basis(&torus(CartanType::A, 1, &[SigmaSpec::Identity, SigmaSpec::Identity]), 1);
}

#[test]
fn jacobi_twisted_a2() {
    jacobi_on_basis(&torus(CartanType::A, 2, &[swap()]), 2);
}

#[test]
fn jacobi_twisted_a2_two_variables() {
    jacobi_on_basis(&torus(CartanType::A, 2, &[swap(), SigmaSpec::Identity]), 1);
}

#[test]
fn bracket_is_graded() {
    let t = torus(CartanType::A, 2, &[swap(), SigmaSpec::Identity]);
    let basis: Vec<_> = t.sample_basis(1).into_iter().filter(|e| e.degree().is_some()).collect();
    for a in &basis {
        for b in &basis {
            let r = t.bracket(a, b).unwrap();
            if r.is_zero() {
                continue;
            }
            let (ka, kb) = (a.degree().unwrap(), b.degree().unwrap());
            let sum: Vec<i64> = ka.iter().zip(&kb).map(|(x, y)| x + y).collect();
            assert_eq!(r.degree(), Some(sum));
        }
    }
}

#[test]
fn null_root_spaces_twisted_a2() {
    let t = torus(CartanType::A, 2, &[swap()]);
    let zero = t.grading.zero_weight();
    let rs = t.root_space(&TorusRoot::new(zero.clone(), vec![2]));
    assert_eq!(rs.dim(), 1);
    assert!(rs.consistent());
    for space in t.root_spaces(3).unwrap() {
        assert!(space.consistent(), "root space {:?} inconsistent", space.root);
    }
    // a weight of g_1 that does not occur in g_0 gives an empty space at even degree
    let odd_only = t.grading.weight_spaces[1]
        .keys()
        .find(|w| !t.grading.weight_spaces[0].contains_key(*w))
        .expect("twisted A2 has a weight only in the odd piece")
        .clone();
    assert_eq!(t.root_space(&TorusRoot::new(odd_only, vec![2])).dim(), 0);
}

#[test]
fn null_root_spaces_two_variables() {
    let t = torus(CartanType::A, 1, &[SigmaSpec::Identity, SigmaSpec::Identity]);
    let rs = t.root_space(&TorusRoot::new(t.grading.zero_weight(), vec![1, 2]));
    // h ⊗ t^k plus one central line
    assert_eq!(rs.dim(), 2);
}

#[test]
fn short_root_coroot() {
    // B2 untwisted: the short simple root has norm 1
    let t = torus(CartanType::B, 2, &[SigmaSpec::Identity, SigmaSpec::Identity]);
    let a2 = t.grading.basis_weight(t.g.e_index(1)).clone();
    assert_eq!(t.grading.weight_inner(&a2, &a2), q(1));
    let root = TorusRoot::new(a2, vec![0, 1]);
    let c = t.coroot(&root).unwrap();
    assert_eq!(c.k, vec![q(0), q(2)]);
    assert_eq!(root.as_weight().eval_coroot(&c), q(2));
}

#[test]
fn translation_lattice_twisted_a2() {
    // g_0 = A1 with θ the long root of Δ_0; M is generated by 2θ/(θ|θ)
    let t = torus(CartanType::A, 2, &[swap()]);
    let gens = t.translation_generators();
    assert_eq!(gens.len(), 2);
    let half: Vec<_> = gens[0].iter().map(|c| c / q(2)).collect();
    assert!(t.in_translation_lattice(&gens[0]));
    assert!(!t.in_translation_lattice(&half));
}

#[test]
fn change_of_coordinates_examples() {
    let t = torus(CartanType::A, 1, &[SigmaSpec::Identity, SigmaSpec::Identity]);
    let e10 = t.labelled("e1", &[1, 0]).unwrap();
    let swap_b = CoordinateChange::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(swap_b.apply(&e10, t.m()).unwrap(), t.labelled("e1", &[0, 1]).unwrap());
    let id = CoordinateChange::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
    for b in t.sample_basis(1) {
        assert_eq!(id.apply(&b, t.m()).unwrap(), b);
    }
}

fn check_homomorphism(t: &Torus, c: &CoordinateChange) {
    let basis = t.sample_basis(1);
    for a in &basis {
        for b in &basis {
            let lhs = c.apply(&t.bracket(a, b).unwrap(), t.m()).unwrap();
            let (ta, tb) = (c.apply(a, t.m()).unwrap(), c.apply(b, t.m()).unwrap());
            let rhs = bracket_raw(&t.g, t.m(), &ta, &tb).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn change_of_coordinates_is_homomorphism() {
    let t = torus(CartanType::A, 2, &[SigmaSpec::Identity, SigmaSpec::Identity]);
    for b in [vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 0]], vec![vec![2, 1], vec![1, 1]]] {
        check_homomorphism(&t, &CoordinateChange::new(b).unwrap());
    }
}

#[test]
fn change_of_coordinates_composes() {
    let t = torus(CartanType::A, 1, &[SigmaSpec::Identity, SigmaSpec::Identity]);
    let b1 = CoordinateChange::new(vec![vec![1, 1], vec![0, 1]]).unwrap();
    let b2 = CoordinateChange::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
    let both = b1.compose(&b2);
    for x in t.sample_basis(1) {
        let step = b1.apply(&b2.apply(&x, t.m()).unwrap(), t.m()).unwrap();
        assert_eq!(step, both.apply(&x, t.m()).unwrap());
    }
}

#[test]
fn element_json_round_trip() {
    let t = torus(CartanType::A, 1, &[SigmaSpec::Identity, SigmaSpec::Identity]);
    let e = t.labelled("e1", &[1, 1]).unwrap();
    let f = t.labelled("f1", &[1, 0]).unwrap();
    let x = e.add(&f).add(&TorusElement::central_term(vec![2, 1], 0, t.m()).unwrap()).add(&TorusElement::derivation(1, 2));
    let j = serde_json::to_string(&x.to_json()).unwrap();
    let back = TorusElement::from_json(&serde_json::from_str(&j).unwrap(), t.m()).unwrap();
    assert_eq!(back, x);
    assert!(j.contains("\"loop\""));
}

proptest! {
    #[test]
    fn normal_form_linear_and_idempotent(
        terms in proptest::collection::vec(((-3i64..=3, -3i64..=3), 0usize..2, -5i64..=5), 0..8),
        c in -3i64..=3,
    ) {
        let m = [1u32, 1];
        let raw: Vec<_> = terms.iter().map(|((a, b), i, v)| (vec![*a, *b], *i, CycScalar::from_int(*v))).collect();
        let nf = CentralClass::normal_form(raw.clone(), &m).unwrap();
        let again = CentralClass::normal_form(nf.terms().map(|(r, i, v)| (r.clone(), i, v.clone())), &m).unwrap();
        prop_assert_eq!(&nf, &again);
        let scaled = CentralClass::normal_form(
            raw.iter().map(|(r, i, v)| (r.clone(), *i, v * &CycScalar::from_int(c))), &m).unwrap();
        prop_assert_eq!(scaled, nf.scale(&CycScalar::from_int(c)));
        for (r, i, _) in nf.terms() {
            let lead = r.iter().position(|&x| x != 0);
            prop_assert!(lead != Some(i));
        }
    }

    #[test]
    fn single_variable_central_terms_vanish(r in -20i64..=20) {
        prop_assume!(r != 0);
        let nf = CentralClass::normal_form(vec![(vec![r], 0, CycScalar::one())], &[1]).unwrap();
        prop_assert!(nf.is_zero());
    }

    #[test]
    fn reflection_is_involutive(
        fin in proptest::collection::vec(-4i64..=4, 1),
        kap in -3i64..=3,
        dv in -3i64..=3,
        k in -3i64..=3,
        sign in prop::bool::ANY,
    ) {
        let t = Torus::from_specs(CartanType::A, 2, &[SigmaSpec::Diagram { perm: vec![2, 1] }]).unwrap();
        let roots = t.grading.roots_all();
        let alpha = if sign { roots[0].clone() } else { roots[roots.len() - 1].clone() };
        let ci = t.grading.class_index(&[k]);
        prop_assume!(t.grading.weight_spaces[ci].contains_key(&alpha));
        let g = TorusRoot::new(alpha, vec![k]);
        let lam = Weight { finite: fin.iter().map(|&x| q(x)).collect(), kappa: vec![q(kap)], dvals: vec![CycScalar::from_int(dv)] };
        let once = t.weyl_reflect(&g, &lam).unwrap();
        prop_assert_eq!(&once.kappa, &lam.kappa);
        prop_assert_eq!(t.weyl_reflect(&g, &once).unwrap(), lam);
    }
}
