//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::HashSet;
use std::time::Instant;

use cf_core::bijections::{
    motzkin_class_map, motzkin_class_paths, pair_to_two_colored, riordan_paths, schroder_elevate, schroder_flatten,
    schroder_paths, two_colored_to_pair, MotzkinCase,
};
use cf_core::family::{distribution_table, enumerate_family};
use cf_core::forms::{self, binom, sequence, t_table, variant_agreement, z_table, Family, FAMILIES};
use cf_core::series::{
    identity_check, lagrange_coeff, lagrange_phi_coeff, Laurent, named_series, q, scalar, solve_fixed_point, FixedPointMap, Series, Q,
};
use cf_core::theorems::{verify_theorem, Bounds};
use cf_core::{Budget, FamilySpec, Selector, Statistic};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

const T_GOLDEN: [[u64; 7]; 7] = [
    [1, 1, 2, 5, 14, 42, 132],
    [1, 3, 10, 35, 126, 462, 1716],
    [1, 6, 30, 140, 630, 2772, 12012],
    [1, 10, 70, 420, 2310, 12012, 60060],
    [1, 15, 140, 1050, 6930, 42042, 240240],
    [1, 21, 252, 2310, 18018, 126126, 816816],
    [1, 28, 420, 4620, 42042, 336336, 2450448],
];

const Z_GOLDEN: [[u64; 6]; 6] = [
    [1, 2, 5, 14, 42, 132],
    [1, 5, 21, 84, 330, 1287],
    [1, 9, 56, 300, 1485, 7007],
    [1, 14, 120, 825, 5005, 28028],
    [1, 20, 225, 1925, 14014, 91728],
    [1, 27, 385, 4004, 34398, 259896],
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn golden_tables() -> Outcome {
    for k in 0..=6usize {
        for l in 0..=6usize {
            let v = t_table(k as i64, l as i64).map_err(e)?;
            ensure(v == BigInt::from(T_GOLDEN[k][l]), || format!("T({k},{l}) = {v}, table has {}", T_GOLDEN[k][l]))?;
        }
    }
    for k in 1..=6usize {
        for l in 1..=6usize {
            let v = z_table(k as i64, l as i64).map_err(e)?;
            ensure(v == BigInt::from(Z_GOLDEN[k - 1][l - 1]), || format!("Z({k},{l}) = {v}, table has {}", Z_GOLDEN[k - 1][l - 1]))?;
        }
    }
    Ok("49 T cells and 36 Z cells".into())
}

fn golden_sequences() -> Outcome {
    let want: [(Family, &[u64]); 4] = [
        (Family::Motzkin, &[1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798]),
        (Family::Schroder, &[1, 2, 6, 22, 90, 394]),
        (Family::SmallSchroder, &[1, 1, 3, 11, 45, 197]),
        (Family::Riordan, &[0, 1, 1, 3, 6, 15, 36, 91]),
    ];
    for (f, terms) in want {
        let got = sequence(f, terms.len(), 1).map_err(e)?;
        let want: Vec<BigInt> = terms.iter().map(|&t| BigInt::from(t)).collect();
        ensure(got == want, || format!("{} gives {got:?}", f.name()))?;
    }
    Ok("Motzkin, Schröder, small Schröder, Riordan".into())
}

fn classic() -> Outcome {
    for n in 1..=6u32 {
        let t = distribution_table(
            &FamilySpec::p(n, 1, 0),
            Statistic::Below(Selector::UpStart),
            Some(0..=n as i64),
            Budget::from_env(),
        )
        .map_err(e)?;
        let c = forms::eval(forms::FormId::canonical(Family::Catalan), &forms::Args::n(n as i64)).map_err(e)?;
        ensure(t.is_uniform() && t.common_count().map(BigInt::from) == Some(c.clone()), || {
            format!("n={n}: counts {:?}, want all {c}", t.counts)
        })?;
        ensure(t.total == binom(2 * n as i64, n as i64).try_into().unwrap(), || format!("n={n}: total {}", t.total))?;
    }
    Ok("n = 1..6 uniform with common value C_n".into())
}

fn theorem_suite() -> Outcome {
    let six = Bounds { max_n: 6, max_r: 3 };
    let groups: Vec<(Vec<&str>, Bounds)> = vec![
        (vec!["t5.1", "t5.2", "t5.3"], six),
        (vec!["t6.1", "t6.2", "t6.3", "t6.4", "t6.5", "t6.6"], six),
        (vec!["narayana-cf"], six),
        (vec!["circular"], Bounds { max_n: 5, max_r: 3 }),
        (vec!["t8.1", "t8.2", "t8.3", "t8.4", "t8.5", "t8.6", "t8.7"], six),
        (vec!["th91.1", "th91.2"], six),
        (vec!["th11.1", "th11.2", "th11.3", "cf-corollary-r"], Bounds { max_n: 3, max_r: 3 }),
        (vec!["th12.1", "th12.2", "th12.3"], Bounds { max_n: 3, max_r: 3 }),
        (
            vec!["nr-nara-forms.1", "nr-nara-forms.2", "nr-nara-forms.3", "nr-nara-forms.4", "nr-nara-forms.5", "nr-nara-forms.6"],
            Bounds { max_n: 4, max_r: 2 },
        ),
        (vec!["nrnara.1", "nrnara.2"], Bounds { max_n: 4, max_r: 2 }),
        (vec!["sparre-andersen", "leftmost-highest"], six),
    ];
    let mut cases = 0;
    let mut ids = 0;
    for (list, b) in groups {
        for id in list {
            let rep = verify_theorem(id, b, Budget::from_env()).map_err(e)?;
            ensure(!rep.results.is_empty(), || format!("{id}: no cases"))?;
            if let Some(bad) = rep.results.iter().find(|r| !r.passed) {
                return Err(format!("{id} {}: counts {:?}, expected {}", bad.case.label, bad.table.counts, bad.case.expected));
            }
            cases += rep.results.len();
            ids += 1;
        }
    }
    Ok(format!("{ids} theorems, {cases} uniform distributions equal to their closed forms"))
}

fn form_equivalence() -> Outcome {
    let mut checked = 0;
    for f in FAMILIES {
        let rep = variant_agreement(f, 30).map_err(e)?;
        ensure(rep.passed(), || format!("{}: {:?}", f.name(), rep.failures.first()))?;
        checked += rep.checked;
    }
    Ok(format!("{checked} exact comparisons across {} families", FAMILIES.len()))
}

fn catalan_q(n: i64) -> Q {
    Q::from_integer(forms::eval(forms::FormId::canonical(Family::Catalan), &forms::Args::n(n)).unwrap())
}

fn series_identities() -> Outcome {
    let ids = ["e13a", "id-chain", "id2", "id3", "sqrt-1", "sqrt-2", "E-c", "E-M", "G1U-closed", "G1D-closed"];
    for id in ids {
        let rep = identity_check(id, 10).map_err(e)?;
        ensure(rep.passed(), || format!("{id}: {:?}", rep.failures))?;
    }
    let f = named_series("f_upper", 8, 1).map_err(e)?.series;
    let g = named_series("g_lower", 8, 1).map_err(e)?.series;
    let h = named_series("h_all", 8, 1).map_err(e)?.series;
    for n in 0..=8usize {
        for i in 0..=n {
            ensure(f.coeff(&[i, n - i]) == catalan_q(n as i64), || format!("f at x^{i} y^{}", n - i))?;
            ensure(g.coeff(&[i, n - i]) == catalan_q(n as i64 + 1), || format!("g at x^{i} y^{}", n - i))?;
        }
    }
    for n in 0..=4usize {
        for i in 0..=2 * n {
            ensure(h.coeff(&[i, 2 * n - i]) == catalan_q(n as i64), || format!("h at x^{i} y^{}", 2 * n - i))?;
        }
    }
    let ge = named_series("G_even", 8, 1).map_err(e)?.series;
    for (ex, c) in ge.terms() {
        let (n, i, j) = (ex[0] as i64, ex[1] as i64, ex[2] as i64);
        let k = i + j + 1;
        ensure(j >= 1, || format!("G_even has a term at {ex:?}"))?;
        let want = Q::from_integer(binom(n - 1, k - 2) * binom(n, k)) / q(k - 1);
        ensure(c == want, || format!("G_even at {ex:?}: {c}, want {want}"))?;
    }
    ensure(ge.coeff(&[4, 1, 1]) == q(6), || "G_even at x^4 a b".into())?;
    Ok("10 identities at order 10; f, g, h, G_even grids at order 8".into())
}

fn lagrange() -> Outcome {
    for r in 1..=3u32 {
        let f = solve_fixed_point(FixedPointMap::FussCatalan { r }, 10).map_err(e)?;
        for h in 1..=3u32 {
            let fh = f.pow(h);
            for n in 0..=10u32 {
                let m = (r + 1) * n + h;
                let o = [m as usize, n as usize + 1];
                let mut g = Series::one(&o);
                g.set_coeff(&[r as usize + 1, 1], q(1));
                let lag = lagrange_coeff(&g, h, m).map_err(e)?.coeff(&[n as usize]);
                let ballot = Q::new(BigInt::from(h) * binom(m as i64, n as i64), BigInt::from(m));
                let it = fh.coeff(&[n as usize]);
                let one_u = Series::from_ints(n as usize + 1, &[1, 1]);
                let phi = Laurent { valuation: 0, series: one_u.pow(h) };
                let via_phi = scalar(&lagrange_phi_coeff(&one_u.pow(r + 1), &phi, n).map_err(e)?);
                ensure(lag == it && it == ballot && via_phi == ballot, || format!("r={r} h={h} n={n}: lagrange {lag}, iteration {it}, ballot {ballot}"))?;
            }
        }
    }
    let g = Series::from_ints(6, &[1, 2, 1]);
    ensure(scalar(&lagrange_coeff(&g, 1, 3).map_err(e)?) == q(5), || "(1+u)^2 at n=3".into())?;
    Ok("r <= 3, h <= 3, n <= 10: inversion = iteration = ballot".into())
}

fn bijections() -> Outcome {
    for n in 1..=6u32 {
        let without = schroder_paths(n, false).map_err(e)?;
        let with = schroder_paths(n, true).map_err(e)?;
        let large = sequence(Family::Schroder, n as usize + 1, 1).map_err(e)?[n as usize].clone();
        ensure(BigInt::from(without.len() + with.len()) == large && without.len() == with.len(), || format!("R_{n} != 2 S_{n}"))?;
        let mut image = HashSet::new();
        for p in &without {
            let fl = schroder_flatten(p).map_err(e)?;
            ensure(&schroder_elevate(&fl).map_err(e)? == p, || format!("elevate(flatten({p}))"))?;
            image.insert(fl);
        }
        ensure(image == with.iter().cloned().collect(), || format!("flatten image at n={n}"))?;
        for w in &with {
            ensure(&schroder_flatten(&schroder_elevate(w).map_err(e)?).map_err(e)? == w, || format!("flatten(elevate({w}))"))?;
        }
    }
    let motzkin = sequence(Family::Motzkin, 8, 1).map_err(e)?;
    for n in 1..=7u32 {
        let mut total = 0;
        for (case, len) in [(MotzkinCase::LeadingFlat, n + 1), (MotzkinCase::LeadingDu, n)] {
            let dom = motzkin_class_paths(n, case).map_err(e)?;
            let image: HashSet<_> = dom.iter().map(|q| motzkin_class_map(q, case)).collect::<Result<_, _>>().map_err(e)?;
            let target: HashSet<_> = riordan_paths(len).map_err(e)?.into_iter().collect();
            ensure(image.len() == dom.len() && image == target, || format!("n={n} {case}: image is not the J_{len} paths"))?;
            total += dom.len();
        }
        ensure(BigInt::from(total) == motzkin[n as usize], || format!("M_{n} = {} but classes hold {total}", motzkin[n as usize]))?;
    }
    for n in 1..=5u32 {
        for p in enumerate_family(&FamilySpec::p(n - 1, 1, 2)).map_err(e)? {
            let c = pair_to_two_colored(&p).map_err(e)?;
            ensure(c.iter().map(|s| s.dy()).sum::<i64>() == 1, || format!("{p} image does not end at height 1"))?;
            ensure(two_colored_to_pair(&c, p.step_set()).map_err(e)? == p, || format!("{p} does not round-trip"))?;
        }
    }
    Ok("R_n = 2 S_n (n <= 6), M_n = J_n + J_{n+1} (n <= 7), pair map round-trips (n <= 5)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden T and Z tables", golden_tables),
        ("golden sequences", golden_sequences),
        ("classic up-steps-below distribution", classic),
        ("theorem suite", theorem_suite),
        ("closed-form variant equivalence", form_equivalence),
        ("series identities and coefficient grids", series_identities),
        ("Lagrange inversion", lagrange),
        ("bijections", bijections),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
