use fscat::bundled;
use fscat::exactnum::{sqrt5, Cyc};
use fscat::fusioncat::{
    canonical_pivotal, enumerate_pivotal_structures, fp_dimension, fp_dimension_simple,
    gauge_transform, global_dimension, is_pseudo_unitary, normed_square, random_gauge,
    reverse_category, transport_pivotal, validate, validate_spec, Category, FusionError, Gauge,
    ObjectExpr, PivotalData, SpecFile, DUALITY, PENTAGON, PIVOTAL_MONOIDALITY, RING_AXIOMS,
    UNIT_NORMALIZATION,
};
use fscat::homcalc::Side;
use proptest::prelude::*;

fn cat(name: &str) -> Category {
    bundled::category(name).unwrap()
}

fn spec(name: &str) -> SpecFile {
    SpecFile::from_json(bundled::spec_text(name).unwrap()).unwrap()
}

fn golden() -> Cyc {
    (Cyc::one() + sqrt5()) * Cyc::from_frac(1, 2)
}

#[test]
fn bundled_specs_are_valid() {
    for name in bundled::NAMES {
        let rep = validate(&cat(name));
        assert!(rep.is_valid(), "{name}:\n{}", rep.render_text());
        assert!(validate_spec(&spec(name)).is_valid());
    }
}

#[test]
fn spec_json_roundtrip() {
    for name in bundled::NAMES {
        let c = cat(name);
        let again = Category::from_json(&c.to_json()).unwrap();
        assert_eq!(again, c);
    }
}

#[test]
fn fibonacci_f_matrix_squares_to_identity() {
    let c = cat("fibonacci");
    let t = c.label("tau").unwrap();
    let fm = c.f_matrix(t, t, t, t);
    assert_eq!(fm.es, vec![0, 1]);
    assert!(fm.m.mul(&fm.m).is_identity());
    let phi_inv = golden().inv().unwrap();
    assert_eq!(fm.m.get(0, 0), phi_inv);
    assert_eq!(fm.m.get(1, 1), -phi_inv);
}

#[test]
fn unit_normalization_detects_mutation() {
    let mut c = cat("fibonacci");
    let t = c.label("tau").unwrap();
    c.f.set([0, t, t, t, t, t], Cyc::from_int(-1));
    let rep = validate(&c);
    assert!(!rep.group(UNIT_NORMALIZATION).unwrap().passed);
    assert!(!rep.is_valid());
}

#[test]
fn pentagon_detects_sign_flip() {
    let mut c = cat("ising");
    let s = c.label("sigma").unwrap();
    let g = c.label("g").unwrap();
    let v = c.f_value(g, s, g, s, s, s);
    c.f.set([g, s, g, s, s, s], -v);
    let rep = validate(&c);
    let p = rep.group(PENTAGON).unwrap();
    assert!(!p.passed && !p.failures.is_empty());
    assert!(rep.render_text().contains(PENTAGON));
}

#[test]
fn broken_fusion_fails_ring_axioms() {
    let mut s = spec("vec_z3");
    s.fusion.retain(|(a, b, _, _)| !(a == "g" && b == "g"));
    let rep = validate_spec(&s);
    assert!(!rep.group(RING_AXIOMS).unwrap().passed);
}

#[test]
fn structural_errors_are_itemized() {
    let mut s = spec("fibonacci");
    s.simples.push("tau".into());
    s.conductor = 0;
    s.fusion.push(("tau".into(), "x".into(), "1".into(), 1));
    let errs = s.structural_errors();
    assert!(errs.len() >= 3, "{errs:?}");
    assert!(errs.iter().any(|e| e.contains("duplicate label")));
    assert!(errs.iter().any(|e| e.contains("unknown label `x`")));
    assert!(s.to_category().is_err());
}

#[test]
fn inadmissible_f_entry_is_rejected() {
    let mut s = spec("vec_z2");
    let mut e = spec("fibonacci").f[0].clone();
    e.a = "g".into();
    e.b = "g".into();
    e.c = "g".into();
    e.d = "1".into();
    e.e = "1".into();
    e.f = "1".into();
    e.value.n = 2;
    e.value.c = vec!["1".into()];
    s.f.push(e);
    assert!(s
        .structural_errors()
        .iter()
        .any(|m| m.contains("not admissible")));
}

#[test]
fn malformed_json_is_an_error() {
    assert!(Category::from_json("").is_err());
    assert!(Category::from_json("{\"name\": 1}").is_err());
    let text = bundled::spec_text("ising").unwrap();
    assert!(Category::from_json(&text[..text.len() / 2]).is_err());
}

#[test]
fn object_expressions() {
    let c = cat("ty_z2z2_plus");
    let v = ObjectExpr::parse("2*sigma + a+ 1 + a", &c.ring).unwrap();
    let (one, a, s) = (
        c.label("1").unwrap(),
        c.label("a").unwrap(),
        c.label("sigma").unwrap(),
    );
    assert_eq!(v.terms(), &[(one, 1), (a, 2), (s, 2)]);
    assert_eq!(v.summands(), vec![one, a, a, s, s]);
    assert_eq!(v.display(&c.ring).to_string(), "1 + 2*a + 2*sigma");
    assert!(ObjectExpr::parse("0*a", &c.ring).unwrap().is_zero());
    for bad in ["", "a+", "+a", "*a", "2*", "a;b", "-1*a", "a*2", "2**a"] {
        assert!(
            matches!(
                ObjectExpr::parse(bad, &c.ring),
                Err(FusionError::BadExpr(_))
            ),
            "`{bad}` accepted"
        );
    }
    assert_eq!(
        ObjectExpr::parse("zz", &c.ring),
        Err(FusionError::UnknownLabel("zz".into()))
    );
}

#[test]
fn fp_dimensions() {
    let fib = cat("fibonacci");
    let tau = fib.label("tau").unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((fp_dimension_simple(&fib.ring, tau).unwrap() - phi).abs() < 1e-12);
    let v = ObjectExpr::parse("2*tau + 1", &fib.ring).unwrap();
    assert!((fp_dimension(&fib.ring, &v).unwrap() - (2.0 * phi + 1.0)).abs() < 1e-12);
    let ising = cat("ising");
    let s = ising.label("sigma").unwrap();
    assert!(
        (fp_dimension_simple(&ising.ring, s).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12
    );
    let ty = cat("ty_z2z2_minus");
    assert!(
        (fp_dimension_simple(&ty.ring, ty.label("sigma").unwrap()).unwrap() - 2.0).abs() < 1e-12
    );
}

#[test]
fn global_dimensions() {
    let half = Cyc::from_frac(1, 2);
    let expect = [
        ("trivial", Cyc::one()),
        ("vec_z3", Cyc::from_int(3)),
        ("semion", Cyc::from_int(2)),
        ("ising", Cyc::from_int(4)),
        ("ty_z2z2_plus", Cyc::from_int(8)),
        ("fibonacci", (Cyc::from_int(5) + sqrt5()) * half.clone()),
        ("yang_lee", (Cyc::from_int(5) - sqrt5()) * half),
    ];
    for (name, d) in expect {
        assert_eq!(global_dimension(&cat(name)).unwrap(), d, "{name}");
    }
    let fib = cat("fibonacci");
    assert_eq!(normed_square(&fib, 1).unwrap(), &golden() * &golden());
}

#[test]
fn pseudo_unitarity() {
    for name in bundled::PSEUDO_UNITARY {
        let (pu, gap) = is_pseudo_unitary(&cat(name)).unwrap();
        assert!(pu && gap < 1e-9, "{name}: gap {gap}");
    }
    let (pu, _) = is_pseudo_unitary(&cat("yang_lee")).unwrap();
    assert!(!pu);
}

#[test]
fn pivotal_structure_counts() {
    // One pivotal structure per character of the universal grading group.
    let expect = [
        ("trivial", 1),
        ("vec_z2", 2),
        ("semion", 2),
        ("vec_z3", 3),
        ("fibonacci", 1),
        ("yang_lee", 1),
        ("ising", 2),
        ("ty_z2z2_plus", 2),
        ("ty_z2z2_minus", 2),
    ];
    for (name, n) in expect {
        let c = cat(name);
        let all = enumerate_pivotal_structures(&c).unwrap();
        assert_eq!(all.len(), n, "{name}");
        let canonical = all.iter().filter(|p| p.canonical).count();
        assert_eq!(canonical, usize::from(name != "yang_lee"), "{name}");
        for p in &all {
            assert!(
                validate(&c.with_pivotal(p.data.clone())).is_valid(),
                "{name}"
            );
        }
    }
    assert!(canonical_pivotal(&cat("yang_lee")).unwrap().is_none());
    let semion = cat("semion");
    assert_eq!(
        canonical_pivotal(&semion).unwrap().unwrap().t,
        vec![Cyc::one(), Cyc::from_int(-1)]
    );
}

#[test]
fn bad_pivotal_data_fails() {
    let c = cat("vec_z3");
    let bad = c.with_pivotal(PivotalData {
        t: vec![Cyc::one(), Cyc::from_int(-1), Cyc::from_int(-1)],
    });
    let rep = validate(&bad);
    assert!(!rep.group(PIVOTAL_MONOIDALITY).unwrap().passed);
    assert!(rep.group(DUALITY).unwrap().passed);
}

#[test]
fn identity_gauge_is_trivial() {
    for name in bundled::NAMES {
        let c = cat(name);
        let g = gauge_transform(&c, &Gauge::identity(&c.ring)).unwrap();
        for (key, v) in c.f.entries() {
            assert_eq!(
                &g.f_value(key[0], key[1], key[2], key[3], key[4], key[5]),
                v
            );
        }
    }
}

#[test]
fn random_gauges_are_deterministic() {
    let c = cat("ising");
    assert_eq!(random_gauge(&c, 7), random_gauge(&c, 7));
    assert_ne!(random_gauge(&c, 7), random_gauge(&c, 8));
}

#[test]
fn gauge_with_zero_entry_is_rejected() {
    let c = cat("fibonacci");
    let g = Gauge::from_fn(&c.ring, |_, _, _| Cyc::zero());
    assert!(gauge_transform(&c, &g).is_err());
}

#[test]
fn reversal_is_an_involution_up_to_validity() {
    for name in bundled::NAMES {
        let c = cat(name);
        let r = reverse_category(&c).unwrap();
        assert!(validate(&r).is_valid(), "{name}");
        let rr = reverse_category(&r).unwrap();
        assert!(validate(&rr).is_valid(), "{name}");
        for (key, v) in c.f.entries() {
            assert_eq!(
                &rr.f_value(key[0], key[1], key[2], key[3], key[4], key[5]),
                v,
                "{name} {key:?}"
            );
        }
    }
}

#[test]
fn pivotal_transport_keeps_dimensions() {
    let c = cat("ty_z2z2_minus");
    let g = gauge_transform(&c, &random_gauge(&c, 3)).unwrap();
    for side in [Side::L, Side::R] {
        let p = transport_pivotal(&c, &g, side).unwrap();
        assert!(validate(&g.with_pivotal(p)).is_valid());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gauged_categories_stay_valid(seed in any::<u64>(), which in 0usize..9) {
        let c = cat(bundled::NAMES[which]);
        let g = gauge_transform(&c, &random_gauge(&c, seed)).unwrap();
        prop_assert!(validate(&g).is_valid());
        prop_assert_eq!(global_dimension(&g).unwrap(), global_dimension(&c).unwrap());
    }
}

proptest! {
    #[test]
    fn object_parser_never_panics(s in "[a-z0-9_*+ .]{0,16}") {
        let _ = ObjectExpr::parse_raw(&s);
    }

    #[test]
    fn object_display_roundtrip(ks in prop::collection::vec(0u32..4, 5)) {
        let c = cat("ty_z2z2_plus");
        let v = ObjectExpr::from_terms(ks.iter().enumerate().map(|(a, &k)| (a, k)));
        prop_assume!(!v.is_zero());
        let text = v.display(&c.ring).to_string();
        prop_assert_eq!(ObjectExpr::parse(&text, &c.ring).unwrap(), v);
    }
}
