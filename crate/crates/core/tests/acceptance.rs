//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed; exits non-zero if any
//! criterion fails.

mod common;

use std::ops::RangeInclusive;
use std::time::Instant;

use lf_forge::divides::{check_admissible, checkerboard_coloring, morse_data, standard_divide, MorseData};
use lf_forge::equivalence::{compare, extract_plumbing_pattern};
use lf_forge::fibration::{
    ishikawa_fibration, johns_fibration, johns_pattern, simultaneous_surgery, LefschetzFibration,
};
use lf_forge::invariants::{
    boundary_open_book, open_book_h1, total_space_euler, total_space_homology, unit_cotangent_h1, FinAbGroup, OpenBook,
};
use lf_forge::surface::{
    algebraic_intersection, curve_class, dehn_twist_on_class, dehn_twist_on_path, surface_invariants, CurveOnSurface,
    HalfEdgeId, OrientedSurface, Route,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Genus range covered by criteria 1–5, 7 and 9.
const GENERA: RangeInclusive<u32> = 0..=8;
/// Randomized cases for criterion 8, and their seed.
const RANDOM_CASES: usize = 1000;
const RANDOM_SEED: u64 = 0x5eed_1f0f;
/// Every comparison is exact: integers, groups in canonical form, and
/// walks up to cyclic rotation. No floating-point tolerance is involved.
const TOLERANCE: i64 = 0;

type Outcome = Result<String, String>;
type Builder = fn(u32) -> Result<LefschetzFibration, lf_forge::fibration::FibrationError>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn builders() -> [(&'static str, Builder); 2] {
    [("johns", johns_fibration), ("ishikawa", ishikawa_fibration)]
}

fn all_fibrations() -> Result<Vec<(&'static str, u32, LefschetzFibration)>, String> {
    let mut out = Vec::new();
    for g in GENERA {
        for (name, build) in builders() {
            out.push((name, g, build(g).map_err(|e| format!("{name} g={g}: {e}"))?));
        }
    }
    Ok(out)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(a: i64, b: i64) -> bool {
    (a - b).abs() <= TOLERANCE
}

fn criterion_1() -> Outcome {
    for (name, g, lf) in all_fibrations()? {
        let inv = surface_invariants(lf.fiber());
        let gg = g as i64;
        ensure(
            inv.orientable && inv.genus == Some(1) && inv.boundary as i64 == 4 * gg + 4 && exact(inv.chi, -4 * gg - 4),
            || format!("{name} g={g}: fiber {inv:?}"),
        )?;
    }
    Ok("fibers have genus 1, 4g+4 boundary components, chi = -4g-4, g = 0..8".into())
}

fn criterion_2() -> Outcome {
    for (name, g, lf) in all_fibrations()? {
        let n = 2 * g as usize + 2;
        let (x, y, z) = if name == "johns" {
            ("a", "b", "c")
        } else {
            ("alpha", "beta", "gamma")
        };
        let expected: Vec<String> = (1..=2)
            .map(|i| format!("{x}{i}"))
            .chain((1..=n).map(|j| format!("{y}{j}")))
            .chain((1..=2).map(|k| format!("{z}{k}")))
            .collect();
        ensure(lf.cycles().len() == 2 * g as usize + 6, || {
            format!("{name} g={g}: {} cycles", lf.cycles().len())
        })?;
        ensure(lf.order() == expected, || {
            format!("{name} g={g}: order {:?}", lf.order())
        })?;
    }
    Ok("2g+6 cycles in word order (first, second, resolved family), g = 0..8".into())
}

fn criterion_3() -> Outcome {
    for (name, g, lf) in all_fibrations()? {
        let [a, b, c] = lf.families().ok_or_else(|| format!("{name} g={g}: no families"))?;
        let surface = lf.surface();
        let cycles = lf.cycles();
        let out = simultaneous_surgery(&surface, &cycles[a.clone()], &cycles[b.clone()])
            .map_err(|e| format!("{name} g={g}: {e}"))?;
        ensure(out.len() == 2, || format!("{name} g={g}: {} components", out.len()))?;
        let sum = |cs: &[CurveOnSurface]| {
            cs.iter()
                .map(|c| curve_class(&surface, c).unwrap())
                .fold(surface.basis().zero(), |acc, x| &acc + &x)
        };
        ensure(sum(&cycles[a.start..b.end]) == sum(&out), || {
            format!("{name} g={g}: class not conserved")
        })?;
        // The Johns third family is defined as the surgery; for the divide
        // construction the gamma face cycles are computed independently.
        let graph = surface.graph();
        ensure(
            cycles[c]
                .iter()
                .all(|x| out.iter().any(|o| o.same_unoriented_cycle(graph, x.walk()))),
            || format!("{name} g={g}: surgery differs from the third family"),
        )?;
    }
    Ok("surgery gives 2 components, conserves homology, equals the gamma face cycles".into())
}

fn criterion_4() -> Outcome {
    for (name, g, lf) in all_fibrations()? {
        let chi = total_space_euler(&lf);
        let (h1, h2) = total_space_homology(&lf).map_err(|e| e.to_string())?;
        ensure(
            exact(chi, 2 - 2 * g as i64) && h1 == FinAbGroup::free(2 * g as usize) && h2 == FinAbGroup::free(1),
            || format!("{name} g={g}: chi={chi}, H1={h1}, H2={h2}"),
        )?;
    }
    Ok("chi = 2-2g, H1 = Z^2g, H2 = Z for both constructions, g = 0..8".into())
}

fn criterion_5() -> Outcome {
    for (name, g, lf) in all_fibrations()? {
        let h = open_book_h1(&boundary_open_book(&lf)).map_err(|e| e.to_string())?;
        ensure(h == unit_cotangent_h1(g), || {
            format!("{name} g={g}: boundary H1 = {h}, expected {}", unit_cotangent_h1(g))
        })?;
    }
    ensure(
        unit_cotangent_h1(0).to_string() == "Z/2" && unit_cotangent_h1(1).to_string() == "Z^3",
        || "Gysin oracle spot values".into(),
    )?;
    Ok("boundary H1 = Z^2g + Z/|2-2g| (Z/2 at g=0, Z^3 at g=1), g = 0..8".into())
}

fn criterion_6() -> Outcome {
    let annulus = common::annulus();
    let core = CurveOnSurface::new(&annulus, "core", vec![HalfEdgeId(0)]).unwrap();
    let expected = [
        FinAbGroup::free(1),
        FinAbGroup::trivial(),
        FinAbGroup::free_plus_cyclic(0, 2),
    ];
    for (k, want) in expected.iter().enumerate() {
        let got = open_book_h1(&OpenBook {
            page: annulus.clone(),
            word: vec![core.clone(); k],
        })
        .map_err(|e| e.to_string())?;
        ensure(&got == want, || {
            format!("annulus with {k} twists: {got}, expected {want}")
        })?;
    }
    let torus = common::punctured_torus();
    let a = CurveOnSurface::new(&torus, "a", vec![HalfEdgeId(0)]).unwrap();
    let b = CurveOnSurface::new(&torus, "b", vec![HalfEdgeId(2)]).unwrap();
    let got = open_book_h1(&OpenBook {
        page: torus,
        word: vec![a, b],
    })
    .map_err(|e| e.to_string())?;
    ensure(got.is_trivial(), || format!("punctured torus D(a)D(b): {got}"))?;
    Ok("annulus words of length 0/1/2 give Z / 0 / Z/2; punctured torus D(a)D(b) gives 0".into())
}

fn criterion_7() -> Outcome {
    let mut orientations = Vec::new();
    for g in GENERA {
        let (j, i) = (johns_fibration(g).unwrap(), ishikawa_fibration(g).unwrap());
        let pattern = extract_plumbing_pattern(&i).map_err(|e| e.to_string())?;
        ensure(pattern.relabeling_to(&johns_pattern(g)).is_some(), || {
            format!("g={g}: divide pattern does not relabel to the plumbing pattern")
        })?;
        let (iso, cert) = compare(&j, &i);
        let iso = iso.ok_or_else(|| format!("g={g}: {}", cert.reason.clone().unwrap_or_default()))?;
        ensure(cert.all_pass(), || format!("g={g}: failing checks in certificate"))?;
        for p in &iso.cycle_map {
            let ok = match p.source.as_bytes()[0] {
                b'a' => p.target == format!("alpha{}", &p.source[1..]),
                b'b' => p.target.starts_with("beta"),
                _ => p.target.starts_with("gamma"),
            };
            ensure(ok, || format!("g={g}: {} -> {}", p.source, p.target))?;
        }
        orientations.push(iso.orientation_preserving);
    }
    let (_, negative) = compare(&johns_fibration(1).unwrap(), &johns_fibration(2).unwrap());
    ensure(!negative.found, || "johns 1 vs johns 2 unexpectedly isomorphic".into())?;
    let preserving = orientations.iter().all(|&o| o);
    Ok(format!(
        "johns g ~ ishikawa g for g = 0..8 (a_i->alpha_i, b->beta, c->gamma; orientation-{}); johns 1 vs 2: none",
        if preserving { "preserving" } else { "mixed" }
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for case in 0..RANDOM_CASES {
        let g = common::random_ribbon_graph(&mut rng, 5, 5);
        let surface = OrientedSurface::new(&g).map_err(|e| e.to_string())?;
        let c = common::random_curve(&mut rng, &g, "c");
        let l = common::random_curve(&mut rng, &g, "x");
        let fail = |what: &str| format!("case {case}: {what}");
        let random_class = |rng: &mut ChaCha8Rng| {
            let coeffs = (0..surface.rank()).map(|_| rng.random_range(-3..=3)).collect();
            surface.basis().class_from_coeffs(coeffs).unwrap()
        };
        let (x, y) = (random_class(&mut rng), random_class(&mut rng));
        let tx = dehn_twist_on_class(&surface, &c, &x).unwrap();
        let ty = dehn_twist_on_class(&surface, &c, &y).unwrap();
        let pair = |p, q| algebraic_intersection(&surface, p, q).unwrap();
        ensure(exact(pair(&tx, &ty), pair(&x, &y)), || fail("pairing not preserved"))?;
        let cc = curve_class(&surface, &c).unwrap();
        ensure(dehn_twist_on_class(&surface, &c, &cc).unwrap() == cc, || {
            fail("[c] moved")
        })?;
        let by_class = dehn_twist_on_class(&surface, &c, &curve_class(&surface, &l).unwrap()).unwrap();
        let by_path = dehn_twist_on_path(&surface, &c, &Route::Loop(l.clone())).map_err(|e| e.to_string())?;
        ensure(surface.class_of_darts(by_path.darts()) == by_class, || {
            fail("path twist disagrees with class formula")
        })?;
    }
    Ok(format!(
        "{RANDOM_CASES} random cases: pairing preserved, [c] fixed, path and class twists agree"
    ))
}

fn criterion_9() -> Outcome {
    for g in GENERA {
        let d = standard_divide(g);
        let report = check_admissible(&d);
        let n = 2 * g as usize + 2;
        ensure(
            report.admissible && report.vertices == n && report.edges == 2 * n && report.faces == 4,
            || format!("g={g}: {report:?}"),
        )?;
        let col = checkerboard_coloring(&d).map_err(|e| e.to_string())?;
        let m = morse_data(&d, &col);
        ensure(
            m == (MorseData {
                index0: 2,
                index1: n,
                index2: 2,
            }) && exact(m.euler(), 2 - 2 * g as i64),
            || format!("g={g}: Morse data {m:?}"),
        )?;
    }
    Ok("standard divide admissible, V=2g+2, E=4g+4, F=4, Morse data (2, 2g+2, 2), g = 0..8".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "fiber invariants", criterion_1),
        (2, "word length and order", criterion_2),
        (3, "surgery", criterion_3),
        (4, "total space homology", criterion_4),
        (5, "boundary homology", criterion_5),
        (6, "open-book unit oracles", criterion_6),
        (7, "isomorphism", criterion_7),
        (8, "twist algebra", criterion_8),
        (9, "divides", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, title, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {k} [{title}]: PASS ({ms} ms) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k} [{title}]: FAIL ({ms} ms) {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1} s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
