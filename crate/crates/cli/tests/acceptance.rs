//! Acceptance suite: one test per shipped acceptance criterion; each
//! prints a single `criterion N (...): PASS` line when it holds.
//! Everything is exact arithmetic — no tolerances anywhere.

use dualis_cli::scenario::{compile, parse_scenario, Compiled, Scenario};
use dualis_core::algebra::order::MonomialOrder;
use dualis_core::complexes::{hom_complex, shift_and_theta, tensor_complex, Complex};
use dualis_core::duality::{
    residue_base_change, theta_base_change, theta_transitivity, verdier_theta, FiniteFlatAlgebra,
    ResidueData, VerdierData,
};
use dualis_core::local_cohomology::{CechData, ExtData, KoszulData};
use dualis_core::{FieldKind, PolyMatrix, Polynomial, Ring, RingMap, RingPresentation, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::Command;

fn q() -> Ring {
    RingPresentation::polynomial(FieldKind::Q, Vec::new(), MonomialOrder::DegRevLex).unwrap()
}

fn qvars(vars: &[&str]) -> Ring {
    RingPresentation::polynomial(
        FieldKind::Q,
        vars.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::DegRevLex,
    )
    .unwrap()
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .ancestors()
        .nth(2)
        .unwrap()
        .to_path_buf()
}

fn corpus() -> Vec<(Scenario, Compiled)> {
    let dir = repo_root().join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().map(|x| x == "dual").unwrap_or(false))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).unwrap();
            let s = parse_scenario(&name, &text).unwrap_or_else(|d| panic!("{name}: {d}"));
            let c = compile(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
            (s, c)
        })
        .collect()
}

fn random_poly(ring: &Ring, rng: &mut ChaCha8Rng, max_deg: u32) -> Polynomial {
    let arity = ring.arity();
    let mut p = Polynomial::zero(arity);
    for _ in 0..rng.gen_range(1..=3) {
        let mut expo = vec![0u32; arity];
        let mut left = max_deg;
        for e in expo.iter_mut() {
            *e = rng.gen_range(0..=left);
            left -= *e;
        }
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        p = p.add(&Polynomial::monomial(
            arity,
            expo,
            Scalar::from_i64(ring.field(), c),
        ));
    }
    p
}

/// A random bounded free complex with zero-squared differentials:
/// either a two-term complex with an arbitrary matrix, or a tensor
/// product of up to three Koszul-type factors.
fn random_complex(ring: &Ring, rng: &mut ChaCha8Rng) -> Complex {
    if rng.gen_bool(0.5) {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let lo = rng.gen_range(-2i64..=1);
        let d = PolyMatrix::from_fn(ring, n, m, |_, _| random_poly(ring, rng, 2));
        Complex::new(ring, lo, vec![m, n], vec![d]).unwrap()
    } else {
        let factors = rng.gen_range(1..=3);
        let mut acc: Option<Complex> = None;
        for _ in 0..factors {
            let f = random_poly(ring, rng, 2);
            let d = PolyMatrix::from_fn(ring, 1, 1, |_, _| f.clone());
            let k = Complex::new(ring, 0, vec![1, 1], vec![d]).unwrap();
            acc = Some(match acc {
                None => k,
                Some(a) => tensor_complex(&a, &k).unwrap(),
            });
        }
        acc.unwrap().shift(rng.gen_range(-1i64..=1))
    }
}

#[test]
fn criterion_1_sign_conventions() {
    let ring = qvars(&["x", "y"]);
    let point = Complex::concentrated(&ring, 0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut assemblies = 0usize;
    for sample in 0..22 {
        let a = random_complex(&ring, &mut rng);
        let b = random_complex(&ring, &mut rng);

        // Hom, tensor and shift assemble into valid complexes: the
        // constructor rejects any differential that does not square
        // to zero, so success here is the d∘d = 0 check.
        let hom = hom_complex(&a, &b).unwrap();
        let tens = tensor_complex(&a, &b).unwrap();
        assert!(!hom.is_empty() || !tens.is_empty());
        let shifted = a.shift(1);
        tensor_complex(&shifted, &b.shift(-1)).unwrap();

        // Dualizing twice negates the differentials.
        let dual = hom_complex(&a, &point).unwrap();
        let double = hom_complex(&dual, &point).unwrap();
        assert_eq!(double, a.negate_diffs(), "double dual, sample {sample}");

        // Dualizing the sign-flipped dual recovers the original on
        // the nose.
        let back = hom_complex(&dual.negate_diffs(), &point).unwrap();
        assert_eq!(back, a, "flipped-dual inverse, sample {sample}");

        // A module concentrated in degree zero moves through Hom
        // without auxiliary signs.
        let m = Complex::concentrated(&ring, 0, rng.gen_range(1..=3));
        let lhs = tensor_complex(&m, &dual).unwrap();
        let rhs = hom_complex(&a, &m).unwrap();
        assert_eq!(lhs, rhs, "tensor-hom matching, sample {sample}");

        // The shift-commutation map is a chain isomorphism.
        let i = rng.gen_range(-2i64..=2);
        let j = rng.gen_range(-2i64..=2);
        let theta = shift_and_theta(&a, &b, i, j).unwrap();
        assert!(theta.is_isomorphism(), "theta iso, sample {sample}");
        assemblies += 1;
    }
    assert!(assemblies >= 20);
    println!("criterion 1 (sign conventions on {assemblies} random complexes): PASS");
}

#[test]
fn criterion_2_koszul_acyclicity_and_top_identification() {
    let mut count = 0usize;
    for (_, c) in corpus() {
        let Ok(kd) = KoszulData::new(&c.ring, c.t.clone(), c.alpha.clone()) else {
            continue;
        };
        let ed = ExtData::new(&kd, 1).unwrap();
        assert!(ed.vanishing_below_top().passed, "H^<r must vanish");
        assert!(ed.top_iso().passed, "top identification must be bijective");
        count += 1;
    }
    assert!(count >= 10, "only {count} complete intersections checked");
    println!("criterion 2 (Koszul acyclicity + top identification on {count} scenarios): PASS");
}

#[test]
fn criterion_3_cech_koszul_sign_square() {
    let mut count = 0usize;
    for (s, c) in corpus() {
        if !s.tasks.iter().any(|t| t.name == "cech-sign") {
            continue;
        }
        let r = c.t.len();
        if r > 2 {
            continue;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let cd = CechData::new(&c.ring, c.t.clone(), 1).unwrap();
        let top = cd.localized(
            dualis_core::algebra::module::ModuleElt::unit(1, c.ring.arity(), 0, c.ring.one()),
            1,
        );
        assert!(
            cd.connecting_vs_phi(&top, sign).unwrap().passed,
            "sign square failed for {}",
            s.name
        );
        count += 1;
    }
    assert!(count >= 5, "only {count} sign squares checked");

    // Negative control: demanding +1 at r = 1 on a nonzero class
    // must fail.
    let line = RingPresentation::algebra_over_parsed(&q(), &["x"], &[]).unwrap();
    let cd = CechData::new(&line, vec![line.parse("x").unwrap()], 1).unwrap();
    let top = cd.localized(
        dualis_core::algebra::module::ModuleElt::unit(1, 1, 0, line.one()),
        1,
    );
    assert!(!cd.connecting_vs_phi(&top, 1).unwrap().passed);
    println!("criterion 3 (sign square on {count} scenarios + negative control): PASS");
}

#[test]
fn criterion_4_perfect_pairing() {
    let mut count = 0usize;
    let mut nonmonomial = false;
    let mut modp = false;
    for (_, c) in corpus() {
        let Ok(rd) = ResidueData::new(&c.ring, &c.t, &c.alpha) else {
            continue;
        };
        assert!(rd.pairing_unimodular().passed);
        nonmonomial |= c.t.iter().any(|p| p.terms().count() > 1);
        modp |= c.field == FieldKind::Fp(101);
        count += 1;
    }
    assert!(count >= 10);
    assert!(nonmonomial, "corpus needs a non-monomial sequence");
    assert!(modp, "corpus needs an F_101 scenario");
    println!("criterion 4 (unimodular pairing on {count} scenarios): PASS");
}

#[test]
fn criterion_5_residue_trace_oracle() {
    let mut equalities = 0usize;
    for (_, c) in corpus() {
        let Ok(rd) = ResidueData::new(&c.ring, &c.t, &c.alpha) else {
            continue;
        };
        for g in rd.spanning_set() {
            assert!(rd.trace_consistency(&g).passed);
            equalities += 1;
        }
    }
    assert!(equalities >= 50, "only {equalities} equalities checked");
    println!("criterion 5 (residue = trace oracle, {equalities} exact equalities): PASS");
}

#[test]
fn criterion_6_base_change() {
    // Theta and residue base change across every corpus scenario that
    // declares a map.
    let mut theta_count = 0usize;
    let mut res_count = 0usize;
    let mut nilpotent = false;
    let mut specialization = false;
    for (s, c) in corpus() {
        let Some((_, g)) = c.maps.first() else {
            continue;
        };
        let powered: Vec<Polynomial> =
            c.t.iter()
                .zip(&c.alpha)
                .map(|(p, &a)| c.ring.nf(&p.pow(a)))
                .collect();
        let fa = FiniteFlatAlgebra::new(&c.ring, &powered).unwrap();
        let td = theta_base_change(&fa, g).unwrap();
        assert!(td.report.passed, "theta failed for {}", s.name);
        theta_count += 1;
        let rd = ResidueData::new(&c.ring, &c.t, &c.alpha).unwrap();
        let (_, outcome) = residue_base_change(&rd, g).unwrap();
        assert!(outcome.passed, "residue base change failed for {}", s.name);
        res_count += 1;
        let target = g.target();
        nilpotent |= target.has_relations();
        specialization |= g.source().arity() > 0 && target.arity() == 0;
    }
    assert!(theta_count >= 5, "only {theta_count} theta scenarios");
    assert!(res_count >= 5, "only {res_count} residue scenarios");
    assert!(nilpotent, "corpus needs a nilpotent target");
    assert!(specialization, "corpus needs a specialization to the field");

    // Transitivity across two-step chains, rebuilt from scratch.
    let dual_numbers = || {
        RingPresentation::quotient_parsed(
            FieldKind::Q,
            &["s"],
            MonomialOrder::DegRevLex,
            &["s^2"],
        )
        .unwrap()
    };
    let qa = qvars(&["a"]);
    let qb = qvars(&["b"]);
    let f101 = RingPresentation::polynomial(
        FieldKind::Fp(101),
        Vec::new(),
        MonomialOrder::DegRevLex,
    )
    .unwrap();
    let f101a = RingPresentation::polynomial(
        FieldKind::Fp(101),
        vec!["a".to_string()],
        MonomialOrder::DegRevLex,
    )
    .unwrap();
    let chains: Vec<(Ring, &str, RingMap, RingMap)> = vec![
        (
            qa.clone(),
            "x^2 - a",
            RingMap::new(qa.clone(), q(), vec![q().zero()]).unwrap(),
            RingMap::new(q(), dual_numbers(), vec![]).unwrap(),
        ),
        (
            qa.clone(),
            "x^2 - a",
            RingMap::new(qa.clone(), dual_numbers(), vec![dual_numbers().parse("s").unwrap()])
                .unwrap(),
            RingMap::new(dual_numbers(), q(), vec![q().zero()]).unwrap(),
        ),
        (
            q(),
            "x^2",
            RingMap::new(q(), dual_numbers(), vec![]).unwrap(),
            RingMap::new(dual_numbers(), q(), vec![q().zero()]).unwrap(),
        ),
        (
            qa.clone(),
            "x^2 - a",
            RingMap::new(qa.clone(), qb.clone(), vec![qb.parse("b^2").unwrap()]).unwrap(),
            RingMap::new(qb.clone(), q(), vec![q().constant_i64(1)]).unwrap(),
        ),
        (
            f101a.clone(),
            "x^2 - a",
            RingMap::new(f101a.clone(), f101.clone(), vec![f101.constant_i64(3)]).unwrap(),
            RingMap::new(f101.clone(), f101.clone(), vec![]).unwrap(),
        ),
    ];
    let mut chain_count = 0usize;
    for (base, tpoly, g1, g2) in &chains {
        let ring = RingPresentation::algebra_over_parsed(base, &["x"], &[]).unwrap();
        let fa = FiniteFlatAlgebra::new(&ring, &[ring.parse(tpoly).unwrap()]).unwrap();
        assert!(theta_transitivity(&fa, g1, g2).unwrap().passed);
        chain_count += 1;
    }
    assert!(chain_count >= 5);
    println!(
        "criterion 6 (base change: {theta_count} theta, {res_count} residue, {chain_count} transitivity chains): PASS"
    );
}

#[test]
fn criterion_7_truncated_local_duality() {
    let mut count = 0usize;
    let mut deepest = 0u32;
    for (_, c) in corpus() {
        let Ok(rd) = ResidueData::new(&c.ring, &c.t, &c.alpha) else {
            continue;
        };
        assert!(rd.local_duality_truncated().passed);
        deepest = deepest.max(*c.alpha.iter().max().unwrap());
        count += 1;
    }
    assert!(count >= 10);
    assert!(deepest >= 3, "corpus must reach level (3,3)");
    println!("criterion 7 (truncated local duality on {count} scenarios): PASS");
}

#[test]
fn criterion_8_verdier_normalization() {
    let qa = qvars(&["a"]);
    for fiber in [&["x"][..], &["x", "y"][..]] {
        let ring = RingPresentation::algebra_over_parsed(&qa, fiber, &[]).unwrap();
        let vd = VerdierData::new(&ring).unwrap();
        assert!(vd.normalization().unwrap().passed);
        // Theta in the coordinate trivialization equals the identity
        // pullback matrix, computed from the residue pairings.
        let g = RingMap::new(qa.clone(), q(), vec![q().zero()]).unwrap();
        let t: Vec<Polynomial> = fiber
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == 0 {
                    ring.parse(&format!("{v} - a")).unwrap()
                } else {
                    ring.parse(v).unwrap()
                }
            })
            .collect();
        let alpha = vec![1u32; fiber.len()];
        assert!(verdier_theta(&ring, &t, &alpha, &g).unwrap().passed);
    }
    println!("criterion 8 (Verdier normalization for one and two fiber variables): PASS");
}

#[test]
fn criterion_9_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_dualis");
    let dir = repo_root().join("corpus");
    let mut files: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .filter(|p| p.ends_with(".dual"))
        .collect();
    files.sort();
    let run = || {
        let out = Command::new(bin)
            .arg("run")
            .args(&files)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "corpus must pass");
        let stdout = String::from_utf8(out.stdout).unwrap();
        stdout
            .lines()
            .map(|line| {
                let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
                v.as_object_mut().unwrap().insert("ms".into(), 0.into());
                v.to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "output must be byte-identical modulo ms");
    assert!(!first.is_empty());
    println!("criterion 9 (CLI determinism over the corpus): PASS");
}
