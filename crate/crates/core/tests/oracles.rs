use fscat::bundled;
use fscat::exactnum::Cyc;
use fscat::fusioncat::{validate, ObjectExpr};
use fscat::indicators::Indicators;
use fscat::matrix::Matrix;
use fscat::oracles::{
    brute_force_indicator, build_pointed, build_tambara_yamagami, char_indicator, chi_z2z2,
    d4_irreps, family, pointed, q8_irreps, s3_irreps, solve_pentagon_rank2, AbelianGroup,
    CharacterTable, MatrixRep, OracleError, FAMILIES,
};

fn groups() -> Vec<(CharacterTable, Vec<MatrixRep>)> {
    vec![
        (CharacterTable::s3(), s3_irreps().unwrap()),
        (CharacterTable::q8(), q8_irreps().unwrap()),
        (CharacterTable::d4(), d4_irreps().unwrap()),
    ]
}

#[test]
fn character_formula_matches_brute_force() {
    for (table, reps) in groups() {
        assert_eq!(table.characters.len(), reps.len());
        assert_eq!(reps.last().unwrap().order(), table.order as usize);
        for (i, rep) in reps.iter().enumerate() {
            for n in 1..=4 {
                for r in -1..=n as i64 {
                    assert_eq!(
                        char_indicator(&table, i, n, r).unwrap(),
                        brute_force_indicator(rep, n, r).unwrap(),
                        "{} n={n} r={r}",
                        rep.label
                    );
                }
            }
        }
    }
}

#[test]
fn classical_indicators() {
    let expect = [
        ("S3", vec![1, 1, 1]),
        ("Q8", vec![1, 1, 1, 1, -1]),
        ("D4", vec![1, 1, 1, 1, 1]),
    ];
    for ((table, _), (name, nus)) in groups().into_iter().zip(expect) {
        assert_eq!(table.name, name);
        for (i, nu) in nus.into_iter().enumerate() {
            assert_eq!(
                char_indicator(&table, i, 2, 1).unwrap(),
                Cyc::from_int(nu),
                "{name} #{i}"
            );
        }
    }
}

#[test]
fn frobenius_root_count() {
    // sum of deg(chi) nu_n(chi) counts solutions of g^n = 1.
    for (table, reps) in groups() {
        let faithful = reps.last().unwrap();
        for n in 1..=6u32 {
            let roots = faithful
                .elements
                .iter()
                .filter(|g| g.pow(n).is_identity())
                .count();
            let sum = table
                .characters
                .iter()
                .enumerate()
                .fold(Cyc::zero(), |acc, (i, chi)| {
                    acc + chi[0].clone() * char_indicator(&table, i, n, 1).unwrap()
                });
            assert_eq!(sum, Cyc::from_int(roots as i64), "{} n={n}", table.name);
        }
    }
}

#[test]
fn cyclic_group_indicators() {
    for m in 1..=6u32 {
        let table = CharacterTable::cyclic(m);
        for j in 0..m as usize {
            for n in 1..=6u32 {
                for r in 0..n as i64 {
                    let expect = i64::from((j as u32 * n).is_multiple_of(m));
                    assert_eq!(
                        char_indicator(&table, j, n, r).unwrap(),
                        Cyc::from_int(expect)
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_preconditions() {
    let table = CharacterTable::s3();
    assert!(char_indicator(&table, 0, 0, 0).is_err());
    assert!(char_indicator(&table, 9, 2, 1).is_err());
    let rep = &s3_irreps().unwrap()[2];
    assert!(matches!(
        brute_force_indicator(rep, 8, 1),
        Err(OracleError::Guard(_))
    ));
    assert!(MatrixRep::generate("none", &[]).is_err());
    let singular = Matrix::zeros(2, 2);
    assert!(MatrixRep::generate("singular", &[singular]).is_err());
}

#[test]
fn tambara_yamagami_matches_group_oracles() {
    // TY(Z2 x Z2, chi, +1/2) is Rep(D4) and the -1/2 twin is Rep(Q8); sigma
    // is the degree 2 irrep and the indicators agree in every degree.
    for (name, table) in [
        ("ty_z2z2_plus", CharacterTable::d4()),
        ("ty_z2z2_minus", CharacterTable::q8()),
    ] {
        let c = bundled::category(name).unwrap();
        let ind = Indicators::new(&c).unwrap();
        let s = ObjectExpr::simple(c.label("sigma").unwrap());
        for n in 1..=6 {
            for r in 0..n as i64 {
                assert_eq!(
                    ind.indicator(&s, n, r).unwrap(),
                    char_indicator(&table, 4, n as u32, r).unwrap(),
                    "{name} n={n} r={r}"
                );
            }
        }
    }
}

#[test]
fn tambara_yamagami_preconditions() {
    let g = AbelianGroup::new(&[2, 2]);
    let bad_tau = build_tambara_yamagami(&g, &chi_z2z2, &Cyc::one(), 4, "x");
    assert!(matches!(bad_tau, Err(OracleError::Precondition(_))));
    let trivial = |_: &[u32], _: &[u32]| Cyc::one();
    let degenerate = build_tambara_yamagami(&g, &trivial, &Cyc::from_frac(1, 2), 4, "x");
    assert!(matches!(degenerate, Err(OracleError::Precondition(_))));
}

#[test]
fn pointed_constructions() {
    assert!(pointed(0, 0).is_err());
    let bad = |a: u32, _: u32, _: u32| {
        if a == 0 {
            Cyc::from_int(-1)
        } else {
            Cyc::one()
        }
    };
    assert!(build_pointed(2, &bad, 2).is_err());
    for n in 1..=5 {
        for p in 0..n {
            let c = pointed(n, p).unwrap();
            assert!(validate(&c).is_valid(), "Z/{n} with cocycle {p}");
            assert!(c.pivotal.is_some());
        }
    }
}

#[test]
fn rank_two_pentagon_has_two_solutions() {
    let sols = solve_pentagon_rank2().unwrap();
    let names: Vec<&str> = sols.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["fibonacci", "yang_lee"]);
}

#[test]
fn bundled_files_come_from_the_builders() {
    assert_eq!(FAMILIES, bundled::NAMES);
    for name in FAMILIES {
        assert_eq!(
            family(name).unwrap(),
            bundled::category(name).unwrap(),
            "{name}"
        );
    }
    assert!(family("nope").is_err());
}

#[test]
fn rep_s3_matches_character_table() {
    let c = bundled::category("rep_s3").unwrap();
    let ind = Indicators::new(&c).unwrap();
    let table = CharacterTable::s3();
    for (i, label) in ["1", "sgn", "std"].into_iter().enumerate() {
        let v = ObjectExpr::simple(c.label(label).unwrap());
        for n in 1..=6 {
            for r in 0..n as i64 {
                assert_eq!(
                    ind.indicator(&v, n, r).unwrap(),
                    char_indicator(&table, i, n as u32, r).unwrap(),
                    "{label} n={n} r={r}"
                );
            }
        }
    }
}

#[test]
fn group_derived_indicators_are_integers() {
    for name in [
        "vec_z2",
        "vec_z3",
        "ty_z2z2_plus",
        "ty_z2z2_minus",
        "rep_s3",
    ] {
        let c = bundled::category(name).unwrap();
        let ind = Indicators::new(&c).unwrap();
        for a in 0..c.rank() {
            for n in 1..=6 {
                let nu = ind.indicator(&ObjectExpr::simple(a), n, 1).unwrap();
                let q = nu.as_rational();
                assert!(
                    q.is_some_and(|q| q.is_integer()),
                    "{name} nu_{n}({}) = {nu}",
                    c.ring.name(a)
                );
            }
        }
    }
}
