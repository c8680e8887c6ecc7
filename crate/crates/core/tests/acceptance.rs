//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `SURFCODE_SLOW=1` to certify the degree-2 distance at q = 7 exactly
//! (about an hour on one core); otherwise a certified interval is checked.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfcode::bounds::{d1_bound, ds_bound, optimal_g1_count, predicted_nr, CubicClass, Verdict};
use surfcode::code::{
    apply_projective_transform, build_code, min_distance, weight_enumerator, DistanceOptions,
    DistanceResult, LinearCode, Method, Strategy,
};
use surfcode::families::{
    default_orbit, del_pezzo4_fixture, del_pezzo6, geometric_witness_dp6, random_cubic_search,
    random_form, shioda_surface, van_luijk_surface, SearchConfig,
};
use surfcode::geometry::{rational_points, DEFAULT_POINT_BUDGET};
use surfcode::poly::parse_poly;
use surfcode::report::CodeReport;
use surfcode::seed::substream_rng;
use surfcode::{Elem, FiniteField, Matrix, Surface};

type Outcome = Result<String, String>;
type Criterion = fn(&mut Ledger) -> Outcome;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn gf(p: u32, n: u32) -> FiniteField {
    FiniteField::new(p, n).unwrap()
}

fn exact(code: &LinearCode) -> Result<DistanceResult, String> {
    min_distance(code, &DistanceOptions::default()).map_err(e)
}

/// Codes computed along the way, revisited by the bound suite.
#[derive(Default)]
struct Ledger {
    reports: Vec<(String, CodeReport)>,
    /// `(label, n, d1, interval of d2)`
    degree_two: Vec<(String, u64, u64, (u64, u64))>,
    silent_alarms: Vec<(String, bool)>,
}

impl Ledger {
    fn add(&mut self, label: &str, code: &LinearCode, d: &DistanceResult, surface: &Surface) {
        self.reports.push((
            label.into(),
            CodeReport::new(code, d, surface.sectional_genus(), None),
        ));
    }
}

fn slow() -> bool {
    std::env::var("SURFCODE_SLOW").is_ok_and(|v| v == "1")
}

fn crit1(l: &mut Ledger) -> Outcome {
    let s = del_pezzo4_fixture().map_err(e)?;
    let n = s.rational_points(DEFAULT_POINT_BUDGET).map_err(e)?.len();
    check(n == 57, format!("{n} points"))?;
    let c = build_code(&s, 1).map_err(e)?;
    let d = min_distance(
        &c,
        &DistanceOptions {
            strategy: Strategy::Exhaustive,
            ..Default::default()
        },
    )
    .map_err(e)?;
    check(
        (c.len(), c.dimension(), d.upper, d.exact) == (57, 5, 44, true),
        format!("{d:?}"),
    )?;
    l.add("dp4", &c, &d, &s);
    Ok("57 points, [57,5,44] by exhaustive sweep".into())
}

fn crit2(l: &mut Ledger) -> Outcome {
    let mut got = Vec::new();
    for (p, n, want) in [
        (7, 1, (57, 7, 41)),
        (2, 3, (73, 7, 55)),
        (3, 2, (91, 7, 71)),
    ] {
        let f = gf(p, n);
        let s = del_pezzo6(&default_orbit(&f).map_err(e)?).map_err(e)?;
        let c = build_code(&s, 1).map_err(e)?;
        let d = exact(&c)?;
        check(d.method == Method::Exhaustive, "not exhaustive")?;
        let have = (c.len(), c.dimension(), d.upper);
        check(
            have == want && d.exact,
            format!("q={}: {have:?}", f.order()),
        )?;
        l.add(&format!("dp6-q{}-s1", f.order()), &c, &d, &s);
        got.push(format!("{have:?}"));
    }
    Ok(got.join(" "))
}

fn crit3(l: &mut Ledger) -> Outcome {
    for (p, n) in [(7, 1), (2, 3), (3, 2)] {
        let s = del_pezzo6(&default_orbit(&gf(p, n)).map_err(e)?).map_err(e)?;
        let k = build_code(&s, 2).map_err(e)?.dimension();
        check(k == 19, format!("k = {k} at q = {}", p.pow(n)))?;
    }
    let mut q7 = None;
    for (p, n, want) in [(7u32, 1u32, 27usize), (3, 2, 53)] {
        let orbit = default_orbit(&gf(p, n)).map_err(e)?;
        let s = del_pezzo6(&orbit).map_err(e)?;
        let c = build_code(&s, 2).map_err(e)?;
        let w = geometric_witness_dp6(&orbit, &s).map_err(e)?;
        let q = p.pow(n) as usize;
        check(c.contains(&w.word), "witness is not a codeword")?;
        check(
            w.weight == want && w.zeros == 4 * q + 2,
            format!("witness weight {}", w.weight),
        )?;
        if q == 7 {
            q7 = Some((s, c, w.word));
        }
    }
    let (s, c, hint) = q7.unwrap();
    let budget = if slow() { 100_000_000_000 } else { 100_000_000 };
    let d = min_distance(
        &c,
        &DistanceOptions {
            strategy: Strategy::InformationSet,
            budget,
            hint: Some(hint),
            ..Default::default()
        },
    )
    .map_err(e)?;
    check(
        d.contains(27),
        format!("[{}, {}] misses 27", d.lower, d.upper),
    )?;
    if slow() {
        check(
            d.exact,
            format!("not certified: [{}, {}]", d.lower, d.upper),
        )?;
    }
    let d1 = exact(&build_code(&s, 1).map_err(e)?)?.upper as u64;
    l.degree_two
        .push(("dp6-q7".into(), 57, d1, (d.lower as u64, d.upper as u64)));
    Ok(format!(
        "k=19 at q=7,8,9; witnesses 27 and 53; d in [{}, {}] at q=7{}",
        d.lower,
        d.upper,
        if slow() { " (slow suite)" } else { "" }
    ))
}

fn crit4(l: &mut Ledger) -> Outcome {
    let s = del_pezzo6(&default_orbit(&gf(2, 3)).map_err(e)?).map_err(e)?;
    let c = build_code(&s, 2).map_err(e)?;
    let d = min_distance(
        &c,
        &DistanceOptions {
            budget: 1_000_000,
            random_sets: 200,
            seed: 1,
            ..Default::default()
        },
    )
    .map_err(e)?;
    check(c.contains(&d.witness), "witness not in code")?;
    check(
        d.contains(37) && !d.contains(39),
        format!("[{}, {}]", d.lower, d.upper),
    )?;
    l.degree_two
        .push(("dp6-q8".into(), 73, 55, (d.lower as u64, d.upper as u64)));
    Ok(format!("d in [{}, {}], 39 excluded", d.lower, d.upper))
}

fn crit5(l: &mut Ledger) -> Outcome {
    let f = gf(7, 1);
    // Fixed seed schedule: seeds 1, 2, ... until a hit with an optimal section.
    for seed in 1..=4 {
        let cfg = SearchConfig {
            target: CubicClass::C12,
            seed,
            start: 0,
            samples: 16,
            screen_degree: 3,
            budget: DEFAULT_POINT_BUDGET,
        };
        for hit in random_cubic_search(&f, &cfg).map_err(e)? {
            let want: Vec<u64> = (1..=3)
                .map(|r| predicted_nr(CubicClass::C12, 7, r) as u64)
                .collect();
            check(
                hit.classification.observed == want,
                format!("N_r {:?}", hit.classification.observed),
            )?;
            if hit.surface.section_scan(u128::MAX).map_err(e)?.max != 13 {
                continue;
            }
            let s = &hit.surface;
            let c1 = build_code(s, 1).map_err(e)?;
            let d1 = exact(&c1)?;
            check(
                (c1.len(), c1.dimension(), d1.upper) == (64, 4, 51),
                format!("s=1 {}", d1.upper),
            )?;
            let c2 = build_code(s, 2).map_err(e)?;
            let d2 = exact(&c2)?;
            check(
                (c2.len(), c2.dimension(), d2.upper, d2.exact) == (64, 10, 38, true),
                format!("s=2 [{}, {}, {}]", c2.len(), c2.dimension(), d2.upper),
            )?;
            l.add("c12-s1", &c1, &d1, s);
            l.add("c12-s2", &c2, &d2, s);
            l.degree_two.push(("c12".into(), 64, 51, (38, 38)));
            let alarm = CodeReport::new(&c1, &d1, s.sectional_genus(), None)
                .bounds
                .ns_alarm;
            l.silent_alarms.push(("c12".into(), alarm == Some(false)));
            return Ok(format!(
                "seed {seed} substream {}: N_r {want:?}, [64,4,51], [64,10,38]",
                hit.substream
            ));
        }
    }
    Err("no C12 sample with an optimal section".into())
}

fn crit6(l: &mut Ledger) -> Outcome {
    for (m, f, want) in [(4, gf(11, 1), (144, 4, 120)), (5, gf(3, 2), (91, 4, 71))] {
        let s = shioda_surface(m, &f).map_err(e)?;
        let c = build_code(&s, 1).map_err(e)?;
        let d = min_distance(
            &c,
            &DistanceOptions {
                strategy: Strategy::Exhaustive,
                ..Default::default()
            },
        )
        .map_err(e)?;
        check(
            (c.len(), c.dimension(), d.upper) == want,
            format!("X_{m}: {}", d.upper),
        )?;
        let lines = s.lines(u128::MAX).map_err(e)?.len();
        check(lines == 0, format!("X_{m} has {lines} lines"))?;
        l.add(&format!("shioda-{m}"), &c, &d, &s);
    }
    Ok("[144,4,120] and [91,4,71], no rational lines".into())
}

/// Maximum affine-plus-infinity point count over nonsingular long
/// Weierstrass cubics, by direct evaluation.
fn weierstrass_max(f: &FiniteField) -> u64 {
    let els: Vec<Elem> = f.elements().collect();
    let q = els.len();
    let mut best = 0;
    let mut coeffs = [0usize; 5];
    loop {
        let [a1, a2, a3, a4, a6] = coeffs.map(|i| els[i]);
        let mut count = 1;
        let mut singular = false;
        for &x in &els {
            let x2 = f.mul(x, x);
            let rhs = f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.add(f.mul(a4, x), a6));
            for &y in &els {
                let lhs = f.add(f.mul(y, y), f.add(f.mul(a1, f.mul(x, y)), f.mul(a3, y)));
                if f.sub(lhs, rhs).is_zero() {
                    count += 1;
                    // Partials of y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6.
                    let three = f.from_int(3);
                    let two = f.from_int(2);
                    let dx = f.sub(
                        f.mul(a1, y),
                        f.add(f.add(f.mul(three, x2), f.mul(two, f.mul(a2, x))), a4),
                    );
                    let dy = f.add(f.add(f.mul(two, y), f.mul(a1, x)), a3);
                    singular |= dx.is_zero() && dy.is_zero();
                }
            }
        }
        if !singular {
            best = best.max(count);
        }
        let mut i = 0;
        while i < 5 {
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == 5 {
            return best;
        }
    }
}

fn crit7(_: &mut Ledger) -> Outcome {
    let f = gf(7, 1);
    let c = parse_poly(&f, &["x", "y", "z"], "y^2*z - x^3 - 3*z^3").map_err(e)?;
    let n = rational_points(&f, 2, &[c], u128::MAX).map_err(e)?.len();
    check(n == 13, format!("{n} points"))?;
    let t = Instant::now();
    let mut table = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let g = optimal_g1_count(q).map_err(e)?;
        check(g.verified, format!("q={q} unverified"))?;
        table.push((q, g.value));
    }
    check(
        t.elapsed().as_secs() < 600,
        "table generation over 10 minutes",
    )?;
    for (p, n) in [(7, 1), (2, 3), (3, 2)] {
        let f = gf(p, n);
        let oracle = weierstrass_max(&f);
        let got = table.iter().find(|(q, _)| *q == f.order()).unwrap().1;
        check(
            got == oracle,
            format!("q={}: {got} vs oracle {oracle}", f.order()),
        )?;
    }
    check(table.contains(&(7, 13)), "q=7 is not 13")?;
    Ok(format!("13 points; table {table:?} in {:.1?}", t.elapsed()))
}

fn crit8(l: &mut Ledger) -> Outcome {
    let mut notes = Vec::new();
    for (label, r) in &l.reports {
        check(
            r.bounds.singleton == Verdict::Holds,
            format!("{label}: Singleton"),
        )?;
        let defect = r.n as u64 - r.d_upper as u64;
        let hws = r.bounds.hws_section_bound.unwrap_or(u64::MAX);
        if label.starts_with("dp6") {
            // Reducible conic-plus-line sections: the Picard group is larger
            // than the hyperplane class, so the alarm must fire here.
            check(
                r.bounds.ns_alarm == Some(true),
                format!("{label}: alarm silent at defect {defect}"),
            )?;
            notes.push(format!("{label} alarm {defect}>{hws}"));
        } else if r.s == Some(1) {
            let g = r.bounds.sectional_genus.unwrap();
            let b = d1_bound(r.bounds.q, g, r.n as u64).value;
            check(
                r.d_lower as i64 >= b,
                format!("{label}: d1 {} < {b}", r.d_lower),
            )?;
            check(
                r.bounds.d1_verdict == Some(Verdict::Holds),
                format!("{label}: d1 verdict"),
            )?;
        }
    }
    for (label, n, d1, (lo, hi)) in &l.degree_two {
        let b = ds_bound(2, *n, *d1, true).value as u64;
        check(n - hi <= b, format!("{label}: n-d2 >= {} > {b}", n - hi))?;
        if n - lo <= b {
            notes.push(format!("{label} {}<={b}", n - lo));
        } else {
            check(
                !label.starts_with("c12"),
                format!("{label}: relation not certified"),
            )?;
            notes.push(format!("{label} undetermined {}..{}<=?{b}", n - hi, n - lo));
        }
    }
    for (label, silent) in &l.silent_alarms {
        check(*silent, format!("{label}: alarm fired"))?;
    }
    check(
        !l.reports.is_empty() && !l.degree_two.is_empty(),
        "no codes recorded",
    )?;
    Ok(notes.join("; "))
}

fn field_axioms(f: &FiniteField) -> Result<(), String> {
    let els: Vec<Elem> = f.elements().collect();
    for &a in &els {
        check(
            f.add(a, Elem::ZERO) == a && f.mul(a, Elem::ONE) == a,
            "identities",
        )?;
        check(f.add(a, f.neg(a)).is_zero(), "negation")?;
        check(f.pow(a, f.order() as u128) == a, "a^q")?;
        if !a.is_zero() {
            check(f.mul(a, f.inv(a).unwrap()) == Elem::ONE, "inverse")?;
        }
        for &b in &els {
            check(
                f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a),
                "commutativity",
            )?;
            for &c in &els {
                check(
                    f.add(f.add(a, b), c) == f.add(a, f.add(b, c)),
                    "additive associativity",
                )?;
                check(
                    f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)),
                    "multiplicative associativity",
                )?;
                check(
                    f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                    "distributivity",
                )?;
            }
        }
    }
    Ok(())
}

fn random_matrix(f: &FiniteField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data: Vec<Vec<Elem>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| Elem(rng.gen_range(0..f.order() as u32)))
                .collect()
        })
        .collect();
    Matrix::from_rows(f, &data).unwrap()
}

fn crit9(_: &mut Ledger) -> Outcome {
    for (p, n) in [(2, 2), (7, 1), (2, 3), (3, 2)] {
        field_axioms(&gf(p, n)).map_err(|m| format!("GF({}): {m}", p.pow(n)))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fields = [
        gf(2, 1),
        gf(3, 1),
        gf(2, 2),
        gf(5, 1),
        gf(7, 1),
        gf(2, 3),
        gf(3, 2),
    ];
    let mut codes = 0;
    while codes < 60 {
        let f = &fields[rng.gen_range(0..fields.len())];
        let k = rng.gen_range(1..=6usize);
        if (f.order() as f64).powi(k as i32) > 1e6 {
            continue;
        }
        let n = rng.gen_range(k..=k + 16);
        let Ok(c) = LinearCode::from_generator(&random_matrix(f, k, n, &mut rng)) else {
            continue;
        };
        let run = |strategy| {
            min_distance(
                &c,
                &DistanceOptions {
                    strategy,
                    ..Default::default()
                },
            )
            .map_err(e)
        };
        let (a, b) = (run(Strategy::Exhaustive)?, run(Strategy::InformationSet)?);
        check(
            a.exact && b.exact && a.upper == b.upper,
            format!("disagree: {} vs [{}, {}]", a.upper, b.lower, b.upper),
        )?;
        codes += 1;
    }

    for class in CubicClass::ALL {
        for r in 1..=12u64 {
            let mut z = 1.0;
            for &(d, m) in class.root_orders() {
                for j in (1..=d).filter(|j| gcd(*j, d) == 1) {
                    z += m as f64 * (2.0 * PI * (j * r) as f64 / d as f64).cos();
                }
            }
            check(
                (z - class.trace(r) as f64).abs() < 1e-6,
                format!("{class} r={r}: {z}"),
            )?;
            check((-6..=7).contains(&class.trace(r)), "trace out of range")?;
            for q in [7i128, 8, 9] {
                let qr = q.pow(r as u32);
                let direct = 1 + qr * qr + qr * z.round() as i128;
                check(
                    predicted_nr(class, q as u64, r as u32) == direct,
                    format!("{class} q={q} r={r}"),
                )?;
            }
        }
    }

    let dp4 = build_code(&del_pezzo4_fixture().map_err(e)?, 1).map_err(e)?;
    let f = dp4.field().clone();
    let base_d = exact(&dp4)?.upper;
    let base_w = weight_enumerator(&dp4, u128::MAX).map_err(e)?;
    let mut done = 0;
    while done < 10 {
        let a = random_matrix(&f, 5, 5, &mut rng);
        if a.determinant().map_err(e)?.is_zero() {
            continue;
        }
        let (t, w) = apply_projective_transform(&dp4, &a).map_err(e)?;
        check(w.verify(&dp4, &t), "witness does not verify")?;
        check(exact(&t)?.upper == base_d, "distance changed")?;
        check(
            weight_enumerator(&t, u128::MAX).map_err(e)? == base_w,
            "enumerator changed",
        )?;
        done += 1;
    }
    Ok("axioms on GF(4,7,8,9); 60 random codes agree; Ramanujan r<=12; 10 transforms".into())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn crit10(_: &mut Ledger) -> Outcome {
    let f = gf(7, 1);
    let cfg = SearchConfig {
        target: CubicClass::C10,
        seed: 10,
        start: 0,
        samples: 48,
        screen_degree: 2,
        budget: DEFAULT_POINT_BUDGET,
    };
    let hits = random_cubic_search(&f, &cfg).map_err(e)?;
    check(!hits.is_empty(), "no C10 sample")?;
    for h in &hits {
        check(
            h.smoothness.starts_with("heuristically smooth"),
            h.smoothness.clone(),
        )?;
        let c = build_code(&h.surface, 1).map_err(e)?;
        let d = exact(&c)?;
        check(
            (c.len(), c.dimension()) == (43, 4),
            format!("C10 code [{}, {}]", c.len(), c.dimension()),
        )?;
        let r = CodeReport::new(&c, &d, h.surface.sectional_genus(), None).bounds;
        check(
            r.singleton == Verdict::Holds && r.d1_verdict == Some(Verdict::Holds),
            "C10 bounds",
        )?;
        check(r.ns_alarm == Some(false), "C10 alarm")?;
    }
    let mut quartics = 0;
    for i in 0..6 {
        let h = random_form(&f, 4, 4, &mut substream_rng(20, i));
        let s = van_luijk_surface(&f, &h).map_err(e)?;
        if !s
            .singular_points(2, DEFAULT_POINT_BUDGET)
            .map_err(e)?
            .is_smooth()
        {
            continue;
        }
        let c = build_code(&s, 1).map_err(e)?;
        check(c.dimension() == 4, format!("quartic k = {}", c.dimension()))?;
        let d = exact(&c)?;
        let r = CodeReport::new(&c, &d, s.sectional_genus(), None).bounds;
        check(r.singleton == Verdict::Holds, "quartic Singleton")?;
        quartics += 1;
    }
    Ok(format!(
        "{} C10 samples [43,4,*] and {quartics} smooth quartics with k=4 pass the bound suite",
        hits.len()
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("degree-4 del Pezzo fixture", crit1),
        ("degree-6 del Pezzo, s=1", crit2),
        ("degree-6 del Pezzo, s=2", crit3),
        ("degree-6 del Pezzo, s=2, q=8", crit4),
        ("C12 pipeline over GF(7)", crit5),
        ("Shioda surfaces", crit6),
        ("Weierstrass cubic and genus-one oracle", crit7),
        ("bound conformance", crit8),
        ("property suites", crit9),
        ("sample-dependent rows replaced by properties", crit10),
    ];
    let mut ledger = Ledger::default();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f(&mut ledger);
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS  {:>2}  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
