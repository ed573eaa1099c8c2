use proptest::prelude::*;

use tcat_core::catalog;
use tcat_core::center::{
    average, functor_f, functor_f_morphism, functor_g, functor_g_morphism, DelMorphism, DelignePair,
};
use tcat_core::linalg;
use tcat_core::object::ObjectExpr;
use tcat_core::{CategoryData, Engine, Morphism};

const TOL: f64 = 1e-9;

fn category(idx: usize) -> CategoryData {
    catalog::catalog(catalog::NAMES[idx % catalog::NAMES.len()]).unwrap()
}

fn word(cat: &CategoryData, raw: &[usize]) -> ObjectExpr {
    ObjectExpr::word(raw.iter().map(|a| a % cat.n_labels()).collect())
}

fn raw_word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interchange_law(c in 0usize..6, x in raw_word(), y in raw_word(), seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let (x, y) = (word(&cat, &x), word(&cat, &y));
        let mut rng = linalg::rng(seed);
        let r = cat.ring();
        let (f1, f2) = (Morphism::random(r, &x, &x, &mut rng), Morphism::random(r, &x, &x, &mut rng));
        let (g1, g2) = (Morphism::random(r, &y, &y, &mut rng), Morphism::random(r, &y, &y, &mut rng));
        let lhs = eng.tensor(&f2, &g2).unwrap().compose(&eng.tensor(&f1, &g1).unwrap()).unwrap();
        let rhs = eng.tensor(&f2.compose(&f1).unwrap(), &g2.compose(&g1).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) < TOL * (1.0 + rhs.norm()));
    }

    #[test]
    fn braiding_is_natural(c in 0usize..6, x in raw_word(), y in raw_word(), seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let (x, y) = (word(&cat, &x), word(&cat, &y));
        let mut rng = linalg::rng(seed);
        let f = Morphism::random(cat.ring(), &x, &x, &mut rng);
        let g = Morphism::random(cat.ring(), &y, &y, &mut rng);
        let c_xy = eng.braiding(&x, &y, false).unwrap();
        let lhs = eng.tensor(&g, &f).unwrap().compose(&c_xy).unwrap();
        let rhs = c_xy.compose(&eng.tensor(&f, &g).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) < TOL * (1.0 + rhs.norm()));
    }

    #[test]
    fn braiding_inverse(c in 0usize..6, x in raw_word(), y in raw_word()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let (x, y) = (word(&cat, &x), word(&cat, &y));
        let c_xy = eng.braiding(&x, &y, false).unwrap();
        let inv = eng.braiding(&y, &x, true).unwrap();
        prop_assert!(inv.compose(&c_xy).unwrap().identity_defect() < TOL);
    }

    #[test]
    fn trace_is_cyclic(c in 0usize..6, x in raw_word(), y in raw_word(), seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let (x, y) = (word(&cat, &x), word(&cat, &y));
        let mut rng = linalg::rng(seed);
        let f = Morphism::random(cat.ring(), &x, &y, &mut rng);
        let g = Morphism::random(cat.ring(), &y, &x, &mut rng);
        let a = eng.quantum_trace(&f.compose(&g).unwrap()).unwrap();
        let b = eng.quantum_trace(&g.compose(&f).unwrap()).unwrap();
        prop_assert!((a - b).norm() < TOL * (1.0 + a.norm()));
    }

    #[test]
    fn diagrammatic_trace_matches_sector_trace(c in 0usize..6, x in raw_word(), seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let x = word(&cat, &x);
        let f = Morphism::random(cat.ring(), &x, &x, &mut linalg::rng(seed));
        let t = eng.quantum_trace(&f).unwrap();
        prop_assert!((eng.trace_right_loop(&f).unwrap() - t).norm() < TOL * (1.0 + t.norm()));
        prop_assert!((eng.trace_left_loop(&f).unwrap() - t).norm() < TOL * (1.0 + t.norm()));
    }

    #[test]
    fn omega_loop_is_central(c in 0usize..6, x in raw_word(), seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let x = word(&cat, &x);
        let f = Morphism::random(cat.ring(), &x, &x, &mut linalg::rng(seed));
        let l = eng.omega_loop(&x).unwrap();
        let lhs = l.compose(&f).unwrap();
        prop_assert!(lhs.distance(&f.compose(&l).unwrap()) < TOL * (1.0 + lhs.norm()));
    }

    #[test]
    fn f_is_functorial(c in 0usize..6, a in 0usize..8, b in 0usize..8, seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let r = cat.ring();
        let n = cat.n_labels();
        let x = ObjectExpr::word(vec![a % n, b % n]);
        let y = ObjectExpr::simple(b % n);
        let d = DelignePair::single(x.clone(), y.clone());
        let mut rng = linalg::rng(seed);
        let e = |rng: &mut _| {
            let f = Morphism::random(r, &x, &x, rng);
            let g = Morphism::random(r, &y, &y, rng);
            DelMorphism::elementary(r, &d, &d, 0, 0, &f, &g).unwrap()
        };
        let (p, q) = (e(&mut rng), e(&mut rng));
        let lhs = functor_f_morphism(&eng, &q.compose(&p).unwrap()).unwrap();
        let rhs = functor_f_morphism(&eng, &q).unwrap().compose(&functor_f_morphism(&eng, &p).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) < TOL * (1.0 + rhs.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn g_is_functorial(c in 0usize..6, a in 0usize..8, b in 0usize..8, seed in any::<u64>()) {
        let cat = category(c);
        let eng = Engine::new(&cat);
        let n = cat.n_labels();
        let obj = functor_f(&eng, &DelignePair::simple(a % n, b % n)).unwrap();
        let other = functor_f(&eng, &DelignePair::single(
            ObjectExpr::word(vec![a % n, b % n]),
            ObjectExpr::unit(),
        )).unwrap();
        let mut rng = linalg::rng(seed);
        let h1 = Morphism::random(cat.ring(), &obj.x, &other.x, &mut rng);
        let h2 = Morphism::random(cat.ring(), &other.x, &obj.x, &mut rng);
        let phi = average(&eng, &obj, &other, &h1).unwrap();
        let psi = average(&eng, &other, &obj, &h2).unwrap();
        let g1 = functor_g(&eng, &obj).unwrap();
        let g2 = functor_g(&eng, &other).unwrap();
        let lhs = functor_g_morphism(&eng, &g1, &g1, &psi.compose(&phi).unwrap()).unwrap();
        let rhs = functor_g_morphism(&eng, &g2, &g1, &psi).unwrap()
            .compose(&functor_g_morphism(&eng, &g1, &g2, &phi).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) < TOL * (1.0 + rhs.norm()));
    }
}
