use lietorus::liealg::{CartanType, LieAlgebra, SigmaSpec};
use lietorus::repmod::{weyl_dimension, EvalModule, Freudenthal, HWModule};
use lietorus::scalars::{CycScalar, SparseMatrix};
use lietorus::torus::Torus;
use proptest::prelude::*;

/// Dominant weights with Weyl dimension at most `cap`.
fn small_weights(g: &LieAlgebra, cap: u64) -> Vec<Vec<i64>> {
    let l = g.rank();
    let mut out = Vec::new();
    let mut stack = vec![vec![0i64; l]];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) || weyl_dimension(&g.rs, &w) > cap {
            continue;
        }
        out.push(w.clone());
        for i in 0..l {
            let mut n = w.clone();
            n[i] += 1;
            stack.push(n);
        }
    }
    out.sort();
    out
}

fn check_type(t: CartanType, l: usize, cap: u64) -> usize {
    let g = LieAlgebra::new(t, l).unwrap();
    let ws = small_weights(&g, cap);
    for w in &ws {
        let v = HWModule::new(&g, w).unwrap();
        assert_eq!(v.dim() as u64, weyl_dimension(&g.rs, w), "{t:?}{l} {w:?}");
        let mut fr = Freudenthal::new(&g.rs, w);
        for (mu, mult) in v.weight_table() {
            assert_eq!(mult as u64, fr.multiplicity(&mu), "{t:?}{l} {w:?} at {mu:?}");
        }
        if v.dim() <= 27 {
            assert_eq!(v.representation_violation(&g), None, "{t:?}{l} {w:?}");
        }
    }
    ws.len()
}

#[test]
fn a1_modules() {
    assert_eq!(check_type(CartanType::A, 1, 64), 64);
}

#[test]
fn a2_modules() {
    assert!(check_type(CartanType::A, 2, 64) > 10);
}

#[test]
fn b2_modules() {
    assert!(check_type(CartanType::B, 2, 64) > 10);
}

#[test]
fn g2_modules() {
    assert!(check_type(CartanType::G, 2, 64) >= 5);
}

#[test]
fn representation_law_on_larger_modules() {
    let g = LieAlgebra::new(CartanType::G, 2).unwrap();
    assert_eq!(HWModule::new(&g, &[2, 0]).unwrap().representation_violation(&g), None);
    let c3 = LieAlgebra::new(CartanType::C, 3).unwrap();
    let v = HWModule::new(&c3, &[0, 1, 0]).unwrap();
    assert_eq!(v.dim(), 14);
    assert_eq!(v.representation_violation(&c3), None);
}

#[test]
fn d4_vector_module() {
    let g = LieAlgebra::new(CartanType::D, 4).unwrap();
    for w in [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] {
        let v = HWModule::new(&g, &w).unwrap();
        assert_eq!(v.dim(), 8);
        assert_eq!(v.representation_violation(&g), None);
    }
}

fn twisted_a2() -> Torus {
    Torus::from_specs(CartanType::A, 2, &[SigmaSpec::Diagram { perm: vec![2, 1] }]).unwrap()
}

fn commutator_law(t: &Torus, m: &EvalModule, radius: i64) {
    let basis: Vec<_> = t.sample_basis(radius).into_iter().filter(|e| e.loop_part.len() == 1).collect();
    let op = |e: &lietorus::torus::TorusElement| -> SparseMatrix {
        let (k, x) = e.loop_part.iter().next().unwrap();
        m.op(t, x, k).unwrap()
    };
    for a in &basis {
        for b in &basis {
            let br = t.bracket(a, b).unwrap();
            // the loop algebra has no central part
            let mut lhs = SparseMatrix::zeros(m.dim(), m.dim());
            for (k, x) in &br.loop_part {
                lhs = lhs.add(&m.op(t, x, k).unwrap());
            }
            assert_eq!(lhs, op(a).commutator(&op(b)));
        }
    }
}

#[test]
fn eval_action_is_homomorphism_twisted() {
    let t = twisted_a2();
    let m = EvalModule::new(&t, &[vec![1, 0]], vec![vec![CycScalar::from_int(3)]]).unwrap();
    commutator_law(&t, &m, 1);
    let rep = m.check_integrable(&t, 2);
    assert!(rep.integrable && rep.weyl_invariant && rep.integral_coroot_values);
}

#[test]
fn eval_action_rejects_grading_violation() {
    let t = twisted_a2();
    let m = EvalModule::new(&t, &[vec![1, 0]], vec![vec![CycScalar::one()]]).unwrap();
    let e1 = t.g.basis_vector(t.g.e_index(0));
    assert!(m.op(&t, &e1, &[0]).is_err());
}

#[test]
fn zero_point_rejected() {
    let t = twisted_a2();
    assert!(EvalModule::new(&t, &[vec![1, 0]], vec![vec![CycScalar::zero()]]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eval_action_is_homomorphism_two_points(b1 in 1i64..4, b2 in -3i64..0, l1 in 1i64..3) {
        let t = Torus::from_specs(CartanType::A, 1, &[SigmaSpec::Identity, SigmaSpec::Identity]).unwrap();
        let pts = vec![
            vec![CycScalar::from_int(b1), CycScalar::from_int(b2)],
            vec![CycScalar::zeta(4, 1), CycScalar::from_int(1)],
        ];
        let m = EvalModule::new(&t, &[vec![l1], vec![1]], pts).unwrap();
        commutator_law(&t, &m, 1);
    }
}
