use fscat::bundled;
use fscat::exactnum::{sqrt5, Cyc};
use fscat::fusioncat::{enumerate_pivotal_structures, Category, Label};
use fscat::homcalc::{Calc, LinMap, Side, Word};
use fscat::matrix::Matrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cat(name: &str) -> Category {
    bundled::category(name).unwrap()
}

/// `N_{x_1} … N_{x_n}` entry `(1, 1)`: the number of fusion paths from
/// the unit back to the unit.
fn path_count(c: &Category, letters: &[Label]) -> usize {
    let r = c.rank();
    let mut v = vec![0usize; r];
    v[c.ring.unit()] = 1;
    for &x in letters {
        let mut next = vec![0usize; r];
        for (p, &k) in v.iter().enumerate() {
            for q in 0..r {
                next[q] += k * c.ring.n(p, x, q) as usize;
            }
        }
        v = next;
    }
    v[c.ring.unit()]
}

fn random_endo(calc: &Calc, w: &Word, rng: &mut ChaCha8Rng) -> LinMap {
    let dims = calc.dims(w);
    let blocks = dims
        .iter()
        .map(|&d| {
            Matrix::from_dense(
                (0..d)
                    .map(|_| {
                        (0..d)
                            .map(|_| Cyc::from_int(rng.gen_range(-3..=3)))
                            .collect()
                    })
                    .collect(),
            )
        })
        .map(|m| {
            if m.rows() == 0 {
                Matrix::zeros(0, 0)
            } else {
                m
            }
        })
        .collect();
    LinMap {
        source: w.clone(),
        target: w.clone(),
        blocks,
    }
}

fn random_word(c: &Category, len: usize, rng: &mut ChaCha8Rng) -> Vec<Label> {
    (0..len).map(|_| rng.gen_range(0..c.rank())).collect()
}

#[test]
fn fibonacci_hom_dimensions() {
    let c = cat("fibonacci");
    let calc = Calc::new(&c);
    let t = c.label("tau").unwrap();
    // Fibonacci numbers.
    let expect = [1, 0, 1, 1, 2, 3, 5];
    for (n, &d) in expect.iter().enumerate() {
        assert_eq!(calc.hom_dimension(&vec![t; n]), d, "tau^{n}");
    }
}

#[test]
fn pointed_hom_dimensions() {
    let c = cat("vec_z2");
    let calc = Calc::new(&c);
    let g = c.label("g").unwrap();
    assert_eq!(calc.hom_dimension(&[g, g]), 1);
    assert_eq!(calc.hom_dimension(&[g, g, g]), 0);
    let ty = cat("ty_z2z2_plus");
    let s = ty.label("sigma").unwrap();
    assert_eq!(Calc::new(&ty).hom_dimension(&[s, s]), 1);
    assert_eq!(Calc::new(&ty).hom_dimension(&[s, s, s, s]), 4);
}

#[test]
fn hom_basis_paths() {
    let c = cat("fibonacci");
    let calc = Calc::new(&c);
    let t = c.label("tau").unwrap();
    let basis = calc.hom_basis(&[t, t, t, t]);
    assert_eq!(basis.len(), 2);
    assert_eq!(basis[0].path, vec![0, t, 0, t, 0]);
    assert_eq!(basis[1].path, vec![0, t, t, t, 0]);
    for tree in &basis {
        for (i, &x) in tree.word.iter().enumerate() {
            assert!(c.ring.admissible(tree.path[i], x, tree.path[i + 1]));
        }
    }
}

#[test]
fn quantum_dimensions() {
    let phi = (Cyc::one() + sqrt5()) * Cyc::from_frac(1, 2);
    let fib = cat("fibonacci");
    let calc = Calc::new(&fib);
    for side in [Side::L, Side::R] {
        assert_eq!(calc.ptr(&calc.identity(&Word::leaf(1)), side).unwrap(), phi);
    }
    let yl = cat("yang_lee");
    let calc = Calc::new(&yl);
    let d = (Cyc::one() - sqrt5()) * Cyc::from_frac(1, 2);
    assert_eq!(
        calc.ptr(&calc.identity(&Word::leaf(1)), Side::R).unwrap(),
        d
    );
}

#[test]
fn semion_dimension_depends_on_pivotal() {
    let c = cat("semion");
    let mut dims = Vec::new();
    for p in enumerate_pivotal_structures(&c).unwrap() {
        let c2 = c.with_pivotal(p.data);
        let calc = Calc::new(&c2);
        dims.push(calc.ptr(&calc.identity(&Word::leaf(1)), Side::R).unwrap());
    }
    dims.sort_by_key(|d| d.embed().0 as i64);
    assert_eq!(dims, vec![Cyc::from_int(-1), Cyc::one()]);
}

#[test]
fn assoc_is_invertible() {
    let c = cat("ising");
    let calc = Calc::new(&c);
    let (a, b, d) = (Word::leaf(2), Word::leaf(2), Word::leaf(1));
    let f = calc.assoc(&a, &b, &d);
    let g = calc.assoc_inv(&a, &b, &d);
    assert!(f.compose(&g).is_identity());
    assert!(g.compose(&f).is_identity());
    let from = Word::left_nested(&[2, 2, 2, 2]);
    let to = Word::right_nested(&[2, 2, 2, 2]);
    assert!(calc.assoc_matrix(&from, &to).unwrap().is_invertible());
    assert!(calc
        .rebracket(&to, &from)
        .unwrap()
        .compose(&calc.rebracket(&from, &to).unwrap())
        .is_identity());
}

#[test]
fn dual_words_reverse_letters() {
    let c = cat("vec_z3");
    let calc = Calc::new(&c);
    let w = Word::right_nested(&[1, 1, 2]);
    assert_eq!(calc.dual_word(&w).letters(), vec![1, 2, 2]);
    assert_eq!(calc.dual_word(&calc.dual_word(&w)).letters(), w.letters());
}

#[test]
fn close_loop_rejects_bad_arity() {
    let c = cat("fibonacci");
    let calc = Calc::new(&c);
    let id = calc.identity(&Word::right_nested(&[1, 1]));
    assert!(calc.close_loop(&id, Side::L, 0).is_err());
    assert!(calc.close_loop(&id, Side::R, 3).is_err());
    let partial = calc.close_loop(&id, Side::R, 1).unwrap();
    // Closing one strand of id_{tau tau} gives d(tau) id_tau.
    assert_eq!(
        partial.as_scalar().unwrap(),
        calc.ptr(&calc.identity(&Word::leaf(1)), Side::R).unwrap()
    );
}

fn names() -> impl Strategy<Value = &'static str> {
    prop::sample::select(bundled::NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hom_dimension_matches_path_count(name in names(), seed in any::<u64>(), len in 0usize..6) {
        let c = cat(name);
        let calc = Calc::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&c, len, &mut rng);
        prop_assert_eq!(calc.hom_dimension(&w), path_count(&c, &w));
        prop_assert_eq!(calc.hom_basis(&w).len(), path_count(&c, &w));
    }

    #[test]
    fn dual_swaps_left_and_right_traces(name in names(), seed in any::<u64>(), len in 1usize..4) {
        let c = cat(name);
        let calc = Calc::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Word::right_nested(&random_word(&c, len, &mut rng));
        let f = random_endo(&calc, &w, &mut rng);
        let fd = calc.dual_morphism(&f).unwrap();
        prop_assert_eq!(calc.ptr(&fd, Side::L).unwrap(), calc.ptr(&f, Side::R).unwrap());
        prop_assert_eq!(calc.ptr(&fd, Side::R).unwrap(), calc.ptr(&f, Side::L).unwrap());
    }

    #[test]
    fn dual_is_contravariant(name in names(), seed in any::<u64>(), len in 1usize..4) {
        let c = cat(name);
        let calc = Calc::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Word::right_nested(&random_word(&c, len, &mut rng));
        let f = random_endo(&calc, &w, &mut rng);
        let g = random_endo(&calc, &w, &mut rng);
        let lhs = calc.dual_morphism(&f.compose(&g)).unwrap();
        let rhs = calc.dual_morphism(&g).unwrap().compose(&calc.dual_morphism(&f).unwrap());
        prop_assert!(lhs == rhs);
        prop_assert!(calc.dual_morphism(&calc.identity(&w)).unwrap().is_identity());
        let dd = calc.dual_morphism(&calc.dual_morphism(&f).unwrap()).unwrap();
        for (x, y) in dd.blocks.iter().zip(&f.blocks) {
            prop_assert_eq!(x.trace(), y.trace());
        }
    }

    #[test]
    fn traces_are_cyclic_and_linear(name in names(), seed in any::<u64>(), len in 1usize..4) {
        let c = cat(name);
        let calc = Calc::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Word::right_nested(&random_word(&c, len, &mut rng));
        let f = random_endo(&calc, &w, &mut rng);
        let g = random_endo(&calc, &w, &mut rng);
        for side in [Side::L, Side::R] {
            prop_assert_eq!(calc.ptr(&f.compose(&g), side).unwrap(), calc.ptr(&g.compose(&f), side).unwrap());
            let sum = calc.ptr(&f.add(&g), side).unwrap();
            prop_assert_eq!(sum, calc.ptr(&f, side).unwrap() + calc.ptr(&g, side).unwrap());
        }
    }

    #[test]
    fn partial_then_full_trace(name in names(), seed in any::<u64>(), len in 2usize..4) {
        let c = cat(name);
        let calc = Calc::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Word::right_nested(&random_word(&c, len, &mut rng));
        let f = random_endo(&calc, &w, &mut rng);
        for side in [Side::L, Side::R] {
            let part = calc.close_loop(&f, side, 1).unwrap();
            prop_assert_eq!(calc.ptr(&part, side).unwrap(), calc.ptr(&f, side).unwrap());
        }
    }
}
