//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use cdim_core::apartment::{enumerate_box_vertices, enumerate_scaled_alcove_vertices, Budget};
use cdim_core::distance::wall_distance;
use cdim_core::growth::{cind_sandwich, growth_exponent, max_two_rho, parabolic_shift, theorem_table};
use cdim_core::point::{fmt_rational, int, rat, Rational};
use cdim_core::verify::{self, Suite, VerifyParams};
use cdim_core::{ApartmentPoint, Root, RootDatum, RootSystemType};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn ty(s: &str) -> RootSystemType {
    s.parse().unwrap()
}

fn datum(s: &str) -> RootDatum {
    RootDatum::build(ty(s))
}

/// `D` per family, written out independently of the library.
fn expected_d(family: char, d: i64) -> Rational {
    match family {
        'A' if d % 2 == 0 => int((d / 2) * (d / 2 + 1)),
        'A' => int(((d - 1) / 2 + 1).pow(2)),
        'B' if d == 2 => int(3),
        'B' if d == 3 => int(5),
        'B' => rat(d * d, 2),
        'C' => rat(d * (d + 1), 2),
        'D' => rat(d * (d - 1), 2),
        _ => unreachable!(),
    }
}

const EXCEPTIONAL: [(&str, &[i64], &[i64], (i64, i64), i64); 5] = [
    ("E6", &[1, 2, 2, 3, 2, 1], &[16, 22, 30, 42, 30, 16], (16, 1), 16),
    ("E7", &[2, 2, 3, 4, 3, 2, 1], &[34, 49, 66, 96, 75, 52, 27], (27, 1), 27),
    ("E8", &[2, 3, 4, 6, 5, 4, 3, 2], &[92, 136, 182, 270, 220, 168, 114, 58], (46, 1), 46),
    ("F4", &[2, 3, 4, 2], &[16, 30, 42, 22], (11, 1), 11),
    ("G2", &[3, 2], &[10, 6], (10, 3), 4),
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let table = theorem_table(12).unwrap();
    let mut bad = Vec::new();
    let mut checked = 0;
    for family in ['A', 'B', 'C', 'D'] {
        for d in 2..=12i64 {
            if family == 'D' && d < 4 {
                continue;
            }
            let name = format!("{family}{d}");
            let row = table.row(&name).unwrap();
            let want = expected_d(family, d);
            let want_cdim: i64 = want.ceil().to_integer().try_into().unwrap();
            checked += 1;
            if row.growth_exponent != want || row.cdim_lower != want_cdim {
                bad.push(format!("{name}: {} (want {})", fmt_rational(&row.growth_exponent), fmt_rational(&want)));
            }
        }
    }
    for (name, _, _, (n, m), cdim) in EXCEPTIONAL {
        let row = table.row(name).unwrap();
        checked += 1;
        if row.growth_exponent != rat(n, m) || row.cdim_lower != cdim {
            bad.push(format!("{name}: D {} cdim {}", fmt_rational(&row.growth_exponent), row.cdim_lower));
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(5);
    outcome(ok, format!("{checked} rows exact, {:.2?} (< 5 s) {}", elapsed, bad.join("; ")))
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for (name, c, cp, _, _) in EXCEPTIONAL {
        let d = datum(name);
        if d.highest_root_coeffs() != c || d.two_rho_coeffs() != cp {
            bad.push(format!("{name}: c {:?} c' {:?}", d.highest_root_coeffs(), d.two_rho_coeffs()));
        }
    }
    outcome(bad.is_empty(), format!("E6 E7 E8 F4 G2 c and c' vectors exact {}", bad.join("; ")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let b = Budget::default();
    let mut cases: Vec<(RootSystemType, Vec<u32>)> = RootSystemType::all_up_to(4)
        .into_iter()
        .filter(|t| t.family().is_classical() || t.to_string() == "F4" || t.to_string() == "G2")
        .map(|t| (t, if t.to_string() == "F4" { vec![1, 2] } else { (1..=5).collect() }))
        .collect();
    for e in ["E6", "E7", "E8"] {
        cases.push((ty(e), vec![1, 2]));
    }
    let mut bad = Vec::new();
    let mut n = 0;
    for (t, radii) in cases {
        let d = RootDatum::build(t);
        let dd = growth_exponent(&d);
        for r in radii {
            n += 1;
            let got = max_two_rho(&d, r, &b).unwrap();
            if got != &dd * int(r.into()) {
                bad.push(format!("{t} r={r}: {}", fmt_rational(&got)));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(600),
        format!("D(r) = rD on {n} (type, r) cases, {:.2?} {}", elapsed, bad.join("; ")),
    )
}

fn criterion_4() -> Outcome {
    let b = Budget::default();
    let mut bad = Vec::new();
    let mut n = 0;
    for t in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] {
        let d = datum(t);
        let rank = d.rank();
        let o = ApartmentPoint::origin(rank);
        for r in 0..=4u32 {
            n += 1;
            let boxed = enumerate_box_vertices(&d, &vec![int(0); rank], &vec![int(r.into()); rank], &b).unwrap();
            let oracle: BTreeSet<ApartmentPoint> = boxed
                .points()
                .iter()
                .filter(|x| wall_distance(&d, &o, x).unwrap().d <= r)
                .cloned()
                .collect();
            let alcove: BTreeSet<ApartmentPoint> =
                enumerate_scaled_alcove_vertices(&d, r, &b).unwrap().points().iter().cloned().collect();
            if oracle != alcove {
                bad.push(format!("{t} r={r}: {} vs {}", oracle.len(), alcove.len()));
            }
        }
    }
    outcome(bad.is_empty(), format!("{n} (type, r) set equalities {}", bad.join("; ")))
}

fn params(t: &str, radius: u32) -> VerifyParams {
    VerifyParams { root_type: Some(ty(t)), radius: Some(radius), ..VerifyParams::default() }
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for t in ["A2", "A3", "B2", "B3", "C3", "D4"] {
        let rep = verify::run(Suite::Distance, &params(t, 4)).unwrap();
        ok &= rep.pass;
        lines.push(format!(
            "{t}: {} pairs, {} with d'>d{}",
            rep.stats["pairs"],
            rep.stats["gap_pairs"],
            if rep.pass { String::new() } else { format!(" e.g. {}", rep.counterexamples[0]) }
        ));
    }
    let rep = verify::run(Suite::G2Gap, &params("G2", 4)).unwrap();
    ok &= rep.pass;
    lines.push(format!("G2: {} pairs with d'>d, witness {}", rep.stats["gap_pairs"], rep.stats["witness"]));
    outcome(ok, lines.join("; "))
}

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for t in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let mut p = params(t, 4);
        p.samples = Some(10_000);
        p.seed = 7;
        let rep = verify::run(Suite::Metric, &p).unwrap();
        ok &= rep.pass && rep.stats["triples_sampled"].as_u64() >= Some(10_000);
        lines.push(format!("{t}: {} triples, {} violations", rep.stats["triples_sampled"], rep.counterexamples.len()));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for t in ["A2", "B2", "G2", "A3", "C3"] {
        let mut p = params(t, 3);
        p.samples = Some(3_000);
        p.seed = 11;
        let rep = verify::run(Suite::Concavity, &p).unwrap();
        let implications = rep.stats["implications_checked"].as_u64().unwrap();
        ok &= rep.pass && implications >= 1_000;
        lines.push(format!("{t}: {} pairs, {implications} implications", rep.stats["pairs_sampled"]));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (t, r) in [("A2", 5), ("B2", 5), ("G2", 5), ("A3", 4), ("B3", 4), ("C3", 4), ("F4", 2)] {
        let rep = verify::run(Suite::Growth, &params(t, r)).unwrap();
        ok &= rep.pass;
        lines.push(format!("{t} r≤{r}: {} checks{}", rep.checks, if rep.pass { "" } else { " FAILED" }));
    }
    outcome(ok, lines.join("; "))
}

fn criterion_9() -> Outcome {
    let b = Budget::default();
    let mut bad = Vec::new();
    let mut n = 0;
    for (t, sum_c, rank) in [("A2", 2i64, 2u32), ("B2", 3, 2), ("G2", 5, 2)] {
        let d = datum(t);
        for depth in 0..=2u32 {
            for r in 0..=8u32 {
                n += 1;
                let s = cind_sandwich(&d, depth, r, &b).unwrap();
                let lr = i64::from(r) - i64::from(depth) - 2;
                let ur = 2 + (i64::from(r) + 1) * sum_c;
                let arith = s.lower_radius == lr
                    && s.upper_radius as i64 == ur
                    && s.upper_level == r + 1
                    && s.lower_divisor == rank + 1;
                let consistent = [2, 3, 5].iter().all(|&q| s.consistent_at(q));
                if !arith || !consistent {
                    bad.push(format!("{t} R={depth} r={r}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{n} (type, R, r) cases {}", bad.join("; ")))
}

/// `|Φ⁺ \ Φ_M⁺|`, with `Φ_M⁺` generated from the chosen simple roots by
/// repeatedly adding simple roots of the subset.
fn parabolic_oracle(d: &RootDatum, subset: &[usize]) -> usize {
    let rank = d.rank();
    let mut levi: HashSet<Vec<i64>> = subset.iter().map(|&i| Root::simple(rank, i).coeffs().to_vec()).collect();
    let mut frontier: Vec<Vec<i64>> = levi.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        for &i in subset {
            let mut s = a.clone();
            s[i - 1] += 1;
            if d.root_index(&s).is_some() && levi.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    d.num_positive() - levi.len()
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for t in RootSystemType::all_up_to(4) {
        let d = RootDatum::build(t);
        let rank = d.rank();
        for mask in 0u32..(1 << rank) {
            let subset: Vec<usize> = (1..=rank).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            n += 1;
            let got = parabolic_shift(&d, &subset).unwrap();
            if got != parabolic_oracle(&d, &subset) {
                bad.push(format!("{t} {subset:?}"));
            }
        }
        let full: Vec<usize> = (1..=rank).collect();
        if parabolic_shift(&d, &[]).unwrap() != d.num_positive() || parabolic_shift(&d, &full).unwrap() != 0 {
            bad.push(format!("{t} Borel/full"));
        }
    }
    outcome(bad.is_empty(), format!("{n} subsets {}", bad.join("; ")))
}

fn criterion_11() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_cdim");
    let mut lines = Vec::new();
    let mut ok = true;
    for (t, r) in [("E8", "1"), ("E7", "2")] {
        let mut outputs = Vec::new();
        let mut slowest = Duration::ZERO;
        for _ in 0..2 {
            let start = Instant::now();
            let out = Command::new(exe).args(["ball", "--type", t, "--radius", r]).output().unwrap();
            slowest = slowest.max(start.elapsed());
            ok &= out.status.success();
            outputs.push(out.stdout);
        }
        let same = outputs[0] == outputs[1] && !outputs[0].is_empty();
        ok &= same && slowest < Duration::from_secs(600);
        lines.push(format!("{t} r={r}: {:.2?}, identical={same}", slowest));
    }
    outcome(ok, lines.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("table reproduction", criterion_1),
        ("coefficient vectors", criterion_2),
        ("exact degree identity D(r) = rD", criterion_3),
        ("polytope oracle", criterion_4),
        ("distance comparison", criterion_5),
        ("metric properties", criterion_6),
        ("filtration bridge and concavity", criterion_7),
        ("ball-sum degree bounds", criterion_8),
        ("sandwich consistency", criterion_9),
        ("parabolic shift", criterion_10),
        ("feasibility and determinism", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", k + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail.trim_end());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
