use lietorus::liealg::{CartanType, SigmaSpec};
use lietorus::loopmod::{component_lattice, decompose, grade_shift_isomorphic, LoopWindow, Verdict};
use lietorus::repmod::EvalModule;
use lietorus::scalars::{CycScalar, Q};
use lietorus::torus::{Torus, TorusElement};
use proptest::prelude::*;

fn sl2(n: usize) -> Torus {
    Torus::from_specs(CartanType::A, 1, &vec![SigmaSpec::Identity; n]).unwrap()
}

fn int(x: i64) -> CycScalar {
    CycScalar::from_int(x)
}

fn two_point(t: &Torus) -> EvalModule {
    EvalModule::new(t, &[vec![1], vec![1]], vec![vec![int(1)], vec![int(-1)]]).unwrap()
}

#[test]
fn d_eigenvalue_is_shift_plus_degree() {
    let t = sl2(1);
    let m = EvalModule::new(&t, &[vec![1]], vec![vec![int(1)]]).unwrap();
    let half = CycScalar::from_q(Q::new(1.into(), 2.into()));
    let w = LoopWindow::new(&t, &m, vec![half], vec![(-4, 4)]).unwrap();
    assert_eq!(w.d_eigenvalue(0, &[3]), CycScalar::from_q(Q::new(7.into(), 2.into())));
    let w0 = LoopWindow::new(&t, &m, vec![int(0)], vec![(-4, 4)]).unwrap();
    assert!(w0.d_eigenvalue(0, &[0]).is_zero());
    let v = m.top_vector();
    let (img, escaped) = w.apply_element(&TorusElement::derivation(0, 1), &[3], &v);
    assert!(!escaped);
    assert_eq!(img[&vec![3]], v.iter().map(|x| x * &w.d_eigenvalue(0, &[3])).collect::<Vec<_>>());
}

#[test]
fn empty_box_rejected() {
    let t = sl2(1);
    let m = EvalModule::new(&t, &[vec![1]], vec![vec![int(1)]]).unwrap();
    assert!(LoopWindow::new(&t, &m, vec![int(0)], vec![(1, 0)]).is_err());
}

#[test]
fn loop_generator_moves_degree() {
    let t = sl2(1);
    let m = EvalModule::new(&t, &[vec![1]], vec![vec![int(2)]]).unwrap();
    let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(-3, 3)]).unwrap();
    let f = t.g.basis_vector(t.g.f_index(0));
    let x = TorusElement::loop_term(vec![1], f.clone());
    let v = m.top_vector();
    let (img, escaped) = w.apply_element(&x, &[-1], &v);
    assert!(!escaped);
    let expect = m.op(&t, &f, &[1]).unwrap().apply(&v);
    assert_eq!(img.len(), 1);
    assert_eq!(img[&vec![0]], expect);
    let (_, escaped) = w.apply_element(&x, &[3], &v);
    assert!(escaped);
}

#[test]
fn single_point_lattice_and_one_component() {
    let t = sl2(1);
    let m = EvalModule::new(&t, &[vec![1]], vec![vec![int(1)]]).unwrap();
    let lat = component_lattice(&t, &m);
    assert_eq!(lat.index, Some(1));
    assert!(lat.certified);
    let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(-3, 3)]).unwrap();
    let (rep, comps) = decompose(&w, &lat, 1);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].space.total_dim(), 2 * 7);
    assert_eq!(rep.verdicts.overall, Verdict::Pass, "{}", rep.to_text());
}

#[test]
fn two_point_example() {
    let t = sl2(1);
    let m = two_point(&t);
    let lat = component_lattice(&t, &m);
    assert_eq!(lat.lattice.hnf, vec![vec![2]]);
    assert_eq!(lat.index, Some(2));
    let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(-4, 4)]).unwrap();
    let (rep, comps) = decompose(&w, &lat, 1);
    assert_eq!(comps.len(), 2);
    assert_eq!(rep.verdicts.overall, Verdict::Pass, "{}", rep.to_text());
    for s in -4..=4 {
        assert_eq!(comps[0].space.dim_at(&[s]) + comps[1].space.dim_at(&[s]), 4);
        // symmetric tensors (dim 3) on one parity class, the alternating line on the other
        let (a, b) = (comps[0].space.dim_at(&[s]), comps[1].space.dim_at(&[s]));
        assert_eq!((a, b), if s.rem_euclid(2) == 0 { (3, 1) } else { (1, 3) });
    }
    assert!(grade_shift_isomorphic(&w, &comps[0].space, &comps[1].space, &[1], 1));
    assert!(!grade_shift_isomorphic(&w, &comps[0].space, &comps[1].space, &[0], 1));
    assert!(grade_shift_isomorphic(&w, &comps[0].space, &comps[0].space, &[0], 1));
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["lattice"]["index"], 2);
    assert_eq!(json["components"].as_array().unwrap().len(), 2);
}

#[test]
fn box_too_small_is_inconclusive() {
    let t = sl2(1);
    let m = two_point(&t);
    let lat = component_lattice(&t, &m);
    let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(0, 1)]).unwrap();
    let (rep, _) = decompose(&w, &lat, 1);
    assert_eq!(rep.verdicts.overall, Verdict::Inconclusive);
}

#[test]
fn zero_highest_weight_flagged() {
    let t = sl2(1);
    let m = EvalModule::new(&t, &[vec![0]], vec![vec![int(1)]]).unwrap();
    let lat = component_lattice(&t, &m);
    assert!(lat.zero_highest_weight);
    let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(-2, 2)]).unwrap();
    let (rep, _) = decompose(&w, &lat, 1);
    assert!(!rep.notes.is_empty());
}

#[test]
fn central_elements_act_trivially() {
    let t = sl2(2);
    let m = EvalModule::new(&t, &[vec![1]], vec![vec![int(2), int(3)]]).unwrap();
    let w = LoopWindow::new(&t, &m, vec![int(0), int(0)], vec![(-2, 2), (-2, 2)]).unwrap();
    let rep = w.check_central_trivial(1, 1);
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.central_checked > 0 && rep.pairs_checked > 0);

    // [e(1,0), f(-1,0)] acts like h(0,0)
    let e = t.g.basis_vector(t.g.e_index(0));
    let f = t.g.basis_vector(t.g.f_index(0));
    let a = TorusElement::loop_term(vec![1, 0], e);
    let b = TorusElement::loop_term(vec![-1, 0], f);
    let ab = t.bracket(&a, &b).unwrap();
    assert!(!ab.central.is_zero());
    let v = m.top_vector();
    let (lhs, _) = w.apply_element(&ab, &[0, 0], &v);
    let h = TorusElement::loop_term(vec![0, 0], t.g.basis_vector(t.g.h_index(0)));
    let (rhs, _) = w.apply_element(&h, &[0, 0], &v);
    assert_eq!(lhs, rhs);

    let k = TorusElement::central_term(vec![1, 0], 0, t.m()).unwrap();
    assert!(w.apply_element(&k, &[0, 0], &v).0.is_empty());
}

#[test]
fn twisted_window_weyl_invariance() {
    let t = Torus::from_specs(CartanType::A, 2, &[SigmaSpec::Diagram { perm: vec![2, 1] }]).unwrap();
    let m = EvalModule::new(&t, &[vec![1, 0]], vec![vec![int(1)]]).unwrap();
    let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(-4, 4)]).unwrap();
    let all = w.closure(&[(vec![0], m.top_vector())]);
    let rep = w.weyl_check(&all);
    assert!(rep.invariant && rep.integral && rep.comparisons > 0, "{rep:?}");
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

#[test]
fn finite_weights_do_not_grow_with_the_box() {
    let t = Torus::from_specs(CartanType::A, 2, &[SigmaSpec::Diagram { perm: vec![2, 1] }]).unwrap();
    let m = EvalModule::new(&t, &[vec![1, 1]], vec![vec![int(2)]]).unwrap();
    let sets: Vec<_> = [3, 6]
        .iter()
        .map(|&r| {
            let w = LoopWindow::new(&t, &m, vec![int(0)], vec![(-r, r)]).unwrap();
            let all = w.closure(&[(vec![0], m.top_vector())]);
            w.finite_weights(&all)
        })
        .collect();
    assert!(!sets[0].is_empty());
    assert_eq!(sets[0], sets[1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Untwisted sl2 with two points on the unit circle: the number of
    /// components equals the index gcd(L ∪ {P}) computed here directly.
    #[test]
    fn component_count_matches_index(l2 in 1i64..3, j in 0i64..6, num in -3i64..4) {
        let t = sl2(1);
        let b2 = CycScalar::zeta(6, j);
        let m = EvalModule::new(&t, &[vec![1], vec![l2]], vec![vec![int(1)], vec![b2.clone()]]).unwrap();
        let period = 6;
        let mut index = period;
        for r in 0..period {
            let v = &int(1) + &(&int(l2) * &b2.pow(r).unwrap());
            if !v.is_zero() {
                index = gcd(index, r);
            }
        }
        let lat = component_lattice(&t, &m);
        prop_assert_eq!(lat.index, Some(index as u64));
        let alpha = CycScalar::from_q(Q::new(num.into(), 3.into()));
        let w = LoopWindow::new(&t, &m, vec![alpha], vec![(-1, period)]).unwrap();
        let (rep, comps) = decompose(&w, &lat, 1);
        prop_assert_eq!(rep.verdicts.window, Verdict::Pass);
        prop_assert_eq!(comps.len() as i64, index);
        for s in -1..=period {
            prop_assert_eq!(w.d_eigenvalue(0, &[s]), &CycScalar::from_q(Q::new(num.into(), 3.into())) + &int(s));
        }
    }

    /// The homomorphism law with central terms sent to zero, for random points.
    #[test]
    fn central_action_consistent(b1 in 1i64..4, j in 0i64..4) {
        let t = sl2(2);
        let m = EvalModule::new(&t, &[vec![1]], vec![vec![int(b1), CycScalar::zeta(4, j)]]).unwrap();
        let w = LoopWindow::new(&t, &m, vec![int(0), int(1)], vec![(-2, 2), (-2, 2)]).unwrap();
        prop_assert!(w.check_central_trivial(1, 1).passed());
    }
}
