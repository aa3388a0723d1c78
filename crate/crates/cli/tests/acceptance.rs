//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use fscat::bundled;
use fscat::exactnum::Cyc;
use fscat::fusioncat::{
    canonical_pivotal, fp_dimension_simple, gauge_transform, is_pseudo_unitary, random_gauge,
    reverse_category, validate, Category, ObjectExpr, PENTAGON,
};
use fscat::homcalc::Side;
use fscat::indicators::Indicators;
use fscat::oracles::{brute_force_indicator, char_indicator, q8_irreps, s3_irreps, CharacterTable};

type Outcome = Result<String, String>;

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/specs/{name}.json"))
}

fn load(name: &str) -> Category {
    bundled::category(name).unwrap_or_else(|e| panic!("bundled spec {name}: {e}"))
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    } else {
        Ok(t)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Simples and all two-term direct sums `a ⊕ b`, `a ≤ b`.
fn objects(cat: &Category) -> Vec<ObjectExpr> {
    let r = cat.rank();
    let mut out: Vec<ObjectExpr> = (0..r).map(ObjectExpr::simple).collect();
    for a in 0..r {
        for b in a..r {
            out.push(ObjectExpr::from_terms([(a, 1), (b, 1)]));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_fscat");
    for name in bundled::NAMES {
        let status = Command::new(bin)
            .arg("validate")
            .arg(spec_path(name))
            .output()
            .map_err(err)?
            .status;
        if !status.success() {
            return Err(format!("fscat validate {name} exited with {status}"));
        }
    }
    let fib = load("fibonacci");
    let mut mutations = 0;
    for key in all_f_keys(&fib) {
        let mut m = fib.clone();
        let v = m.f_value(key[0], key[1], key[2], key[3], key[4], key[5]);
        m.f.set(key, &v * &Cyc::from_int(2));
        let rep = validate(&m);
        let pent = rep.group(PENTAGON).ok_or("no pentagon group")?;
        if pent.passed || pent.skipped {
            return Err(format!("mutation of F{key:?} passes the pentagon"));
        }
        mutations += 1;
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{} specs valid, {mutations} single-entry mutations of fibonacci all fail ({t:.2?})",
        bundled::NAMES.len()
    ))
}

fn all_f_keys(cat: &Category) -> Vec<[usize; 6]> {
    let r = cat.rank();
    let mut keys = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let fm = cat.f_matrix(a, b, c, d);
                    for &e in &fm.es {
                        for &f in &fm.fs {
                            keys.push([a, b, c, d, e, f]);
                        }
                    }
                }
            }
        }
    }
    keys
}

/// Power identity and conjugation symmetry share the computed cells.
fn criteria_2_3() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut cells = 0;
    let mut conj_fail = None;
    for name in bundled::NAMES {
        let cat = load(name);
        let ind = match Indicators::new(&cat) {
            Ok(i) => i,
            Err(e) => return (Err(err(&e)), Err(err(e))),
        };
        for v in objects(&cat) {
            for n in 1..=6 {
                let rot = match ind.rotation_operator(&v, n) {
                    Ok(r) => r,
                    Err(e) => return (Err(err(&e)), Err(err(e))),
                };
                if !rot.power_is_identity() || !rot.matrix().pow(n as u32).is_identity() {
                    let what = format!("{name}: E^{n} != id on {}", v.display(&cat.ring));
                    return (Err(what.clone()), Err(format!("not reached: {what}")));
                }
                for r in 0..n as i64 {
                    let x = rot.trace_power(r).expect("trace");
                    let y = rot.trace_power(n as i64 - r).expect("trace");
                    cells += 1;
                    if x.conj() != y && conj_fail.is_none() {
                        conj_fail = Some(format!(
                            "{name}: conj nu({n},{r}) != nu({n},{})",
                            n as i64 - r
                        ));
                    }
                }
            }
        }
    }
    let c2 = within(start, Duration::from_secs(60))
        .map(|t| format!("all specs, simples and pairs, n <= 6 ({t:.2?})"));
    let c3 = match conj_fail {
        Some(f) => Err(f),
        None => Ok(format!("{cells} cells")),
    };
    (c2, c3)
}

fn criterion_4() -> Outcome {
    let q8 = CharacterTable::q8();
    let d4 = CharacterTable::d4();
    for (name, table) in [("ty_z2z2_minus", &q8), ("ty_z2z2_plus", &d4)] {
        let cat = load(name);
        let sigma = cat.label("sigma").map_err(err)?;
        let nu = Indicators::new(&cat)
            .and_then(|i| i.indicator(&ObjectExpr::simple(sigma), 2, 1))
            .map_err(err)?;
        let expect = char_indicator(table, 4, 2, 1).map_err(err)?;
        let sign = if name.ends_with("minus") { -1 } else { 1 };
        if nu != expect || nu != Cyc::from_int(sign) {
            return Err(format!(
                "{name}: nu_2(sigma) = {nu}, character oracle {expect}"
            ));
        }
    }
    let mut compared = 0;
    for (table, reps) in [
        (CharacterTable::s3(), s3_irreps().map_err(err)?),
        (CharacterTable::q8(), q8_irreps().map_err(err)?),
    ] {
        for (idx, rep) in reps.iter().enumerate() {
            if table.characters[idx][0] != Cyc::from_int(rep.degree as i64) {
                return Err(format!(
                    "{} does not line up with the {} table",
                    rep.label, table.name
                ));
            }
            for n in 1..=4u32 {
                for r in 0..n as i64 {
                    let a = char_indicator(&table, idx, n, r).map_err(err)?;
                    let b = brute_force_indicator(rep, n, r).map_err(err)?;
                    if a != b {
                        return Err(format!("{} n={n} r={r}: {a} vs {b}", rep.label));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!(
        "TY sigma matches Q8/D4; {compared} oracle cells agree"
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for name in bundled::PSEUDO_UNITARY {
        let cat = load(name);
        let p = canonical_pivotal(&cat)
            .map_err(err)?
            .ok_or(format!("{name}: no canonical pivotal"))?;
        let cat = cat.with_pivotal(p);
        let ind = Indicators::new(&cat).map_err(err)?;
        for a in 0..cat.rank() {
            let nu = ind.indicator(&ObjectExpr::simple(a), 2, 1).map_err(err)?;
            if ![-1, 0, 1].iter().any(|&k| nu == Cyc::from_int(k)) {
                return Err(format!("{name}: nu_2({}) = {nu}", cat.ring.name(a)));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} simples"))
}

fn indicator_table(cat: &Category) -> Result<Vec<Cyc>, String> {
    let ind = Indicators::new(cat).map_err(err)?;
    let mut out = Vec::new();
    for a in 0..cat.rank() {
        for n in 1..=4 {
            let rot = ind
                .rotation_operator(&ObjectExpr::simple(a), n)
                .map_err(err)?;
            for r in 0..n as i64 {
                out.push(rot.trace_power(r).map_err(err)?);
            }
        }
    }
    Ok(out)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    for name in bundled::NAMES {
        let cat = load(name);
        let reference = indicator_table(&cat)?;
        for seed in 0..20 {
            let gauged = gauge_transform(&cat, &random_gauge(&cat, seed)).map_err(err)?;
            if !validate(&gauged).is_valid() {
                return Err(format!("{name}: gauge seed {seed} breaks validity"));
            }
            if indicator_table(&gauged)? != reference {
                return Err(format!("{name}: indicators change under gauge seed {seed}"));
            }
        }
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "20 gauges x {} specs ({t:.2?})",
        bundled::NAMES.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for name in bundled::NAMES {
        let cat = load(name);
        let ind = Indicators::new(&cat).map_err(err)?;
        for a in 0..cat.rank() {
            let pl = ind.ptr_id(a, Side::L).map_err(err)?;
            let pr = ind.ptr_id(a, Side::R).map_err(err)?;
            for n in 1..=5 {
                let rot = ind
                    .rotation_operator(&ObjectExpr::simple(a), n)
                    .map_err(err)?;
                for k in 1..=n {
                    let lam = ind.fs_scalar(a, n, k - 1, 0).map_err(err)?;
                    let nu = rot.trace_power(k as i64).map_err(err)?;
                    if &pl * &lam != nu {
                        return Err(format!(
                            "{name}: nu({n},{k})({}) != ptr_l FS",
                            cat.ring.name(a)
                        ));
                    }
                    checked += 1;
                }
                for l in 0..n {
                    for r in 1..n - l {
                        let x = ind.fs_scalar(a, n, l, r).map_err(err)?;
                        let y = ind.fs_scalar(a, n, l + 1, r - 1).map_err(err)?;
                        if &pl * &x != &pr * &y {
                            return Err(format!(
                                "{name}: ptr_l FS({n},{l},{r}) != ptr_r FS({n},{},{}) on {}",
                                l + 1,
                                r - 1,
                                cat.ring.name(a)
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} identities"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for name in bundled::NAMES {
        let cat = load(name);
        let ind = Indicators::new(&cat).map_err(err)?;
        let r = cat.rank();
        for a in 0..r {
            for b in a..r {
                let sum = ObjectExpr::from_terms([(a, 1), (b, 1)]);
                for n in 1..=4 {
                    let lhs = ind.indicator(&sum, n, 1).map_err(err)?;
                    let x = ind.indicator(&ObjectExpr::simple(a), n, 1).map_err(err)?;
                    let y = ind.indicator(&ObjectExpr::simple(b), n, 1).map_err(err)?;
                    if lhs != x + y {
                        return Err(format!(
                            "{name}: nu_{n}({}+{}) not additive",
                            cat.ring.name(a),
                            cat.ring.name(b)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} sums"))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for name in bundled::NAMES {
        let cat = load(name);
        let rev = reverse_category(&cat).map_err(err)?;
        if !validate(&rev).is_valid() {
            return Err(format!("{name}: reversed category is not valid"));
        }
        let ind = Indicators::new(&cat).map_err(err)?;
        let rind = Indicators::new(&rev).map_err(err)?;
        for a in 0..cat.rank() {
            for n in 1..=4 {
                let rot = ind
                    .rotation_operator(&ObjectExpr::simple(a), n)
                    .map_err(err)?;
                let rrot = rind
                    .rotation_operator(&ObjectExpr::simple(a), n)
                    .map_err(err)?;
                for k in 0..n as i64 {
                    if rrot.trace_power(k).map_err(err)?
                        != rot.trace_power(n as i64 - k).map_err(err)?
                    {
                        return Err(format!(
                            "{name}: reversal fails at nu({n},{k})({})",
                            cat.ring.name(a)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} cells"))
}

fn criterion_10() -> Outcome {
    let fib = load("fibonacci");
    let tau = fib.label("tau").map_err(err)?;
    let d = fp_dimension_simple(&fib.ring, tau).map_err(err)?;
    if (d - 1.618033988749895).abs() > 1e-12 {
        return Err(format!("FPdim(tau) = {d}"));
    }
    let mut worst: f64 = 0.0;
    for name in bundled::PSEUDO_UNITARY {
        let cat = load(name);
        let (pu, gap) = is_pseudo_unitary(&cat).map_err(err)?;
        if !pu || gap >= 1e-9 {
            return Err(format!("{name}: pseudo-unitary {pu}, gap {gap:e}"));
        }
        let p = canonical_pivotal(&cat)
            .map_err(err)?
            .ok_or(format!("{name}: no canonical pivotal"))?;
        let cat = cat.with_pivotal(p);
        let ind = Indicators::new(&cat).map_err(err)?;
        for a in 0..cat.rank() {
            let (re, im) = ind.ptr_id(a, Side::R).map_err(err)?.embed();
            let fp = fp_dimension_simple(&cat.ring, a).map_err(err)?;
            let dev = (re - fp).abs().max(im.abs());
            worst = worst.max(dev);
            if dev > 1e-9 {
                return Err(format!(
                    "{name}: catr(j_{}) = {re}{im:+}i, FPdim {fp}",
                    cat.ring.name(a)
                ));
            }
        }
    }
    Ok(format!(
        "FPdim(tau) = {d}, worst catr deviation {worst:.1e}"
    ))
}

fn main() {
    let (c2, c3) = criteria_2_3();
    let results: Vec<(&str, Outcome)> = vec![
        ("validation suite", criterion_1()),
        ("power identity", c2),
        ("conjugation symmetry", c3),
        ("oracle agreement", criterion_4()),
        ("nu_2 value range", criterion_5()),
        ("gauge invariance", criterion_6()),
        ("trace formula", criterion_7()),
        ("additivity", criterion_8()),
        ("reversal symmetry", criterion_9()),
        ("dimension theory", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria pass", results.len());
}
