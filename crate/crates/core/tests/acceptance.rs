//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use lie_sphere::census::verify::{
    bilinear_suite, conic_oracle_suite, four_way_suite, heisenberg_suite, pencil_oracle_suite,
    two_solutions_suite, SuiteResult,
};
use lie_sphere::census::{self, gen, io, CensusReport, PointSet, SphereSet};
use lie_sphere::bridge::sphere_to_hline;
use lie_sphere::structures::{common_contact_conic, conic_membership};
use lie_sphere::{FieldSpec, OrientedSphere};

const SEED: u64 = 1;
/// Seeds of the twenty random sets.
const RANDOM_SEEDS: std::ops::RangeInclusive<u64> = 1..=20;
const RANDOM_N: usize = 2000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn suites_ok(results: &[SuiteResult]) -> (bool, String) {
    let ok = results.iter().all(SuiteResult::passed);
    let detail = results
        .iter()
        .map(|r| {
            let mut s = format!("{} cases, {} failures", r.cases, r.failures);
            if let Some(c) = &r.counterexample {
                s.push_str(&format!(" [{c}]"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    (ok, detail)
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let el = start.elapsed();
    let within = limit.is_none_or(|l| el < l);
    let limit_txt = limit.map_or(String::new(), |l| format!(" (limit {:.0} s)", l.as_secs_f64()));
    Outcome {
        ok: ok && within,
        detail: format!("{detail}; {:.2} s{limit_txt}", el.as_secs_f64()),
    }
}

fn fields() -> [FieldSpec; 2] {
    [FieldSpec::prime(10007).unwrap(), FieldSpec::rational()]
}

fn c1() -> Outcome {
    timed(Some(Duration::from_secs(2)), || {
        let r: Vec<_> = fields().iter().map(|&f| bilinear_suite(f, SEED, 100_000, workers())).collect();
        suites_ok(&r)
    })
}

fn c2() -> Outcome {
    timed(Some(Duration::from_secs(5)), || {
        let r: Vec<_> = fields()
            .iter()
            .map(|&f| four_way_suite(f, SEED, 100_000, workers(), sphere_to_hline))
            .collect();
        suites_ok(&r)
    })
}

fn c3() -> Outcome {
    timed(None, || {
        let r: Vec<_> = fields()
            .iter()
            .map(|&f| heisenberg_suite(f, SEED, 10_000, 5, workers(), sphere_to_hline))
            .collect();
        suites_ok(&r)
    })
}

fn c4() -> Outcome {
    timed(Some(Duration::from_secs(10)), || suites_ok(&[pencil_oracle_suite(SEED, 100, workers())]))
}

/// Tangency of integer quadruples, evaluated directly in `i64`.
fn int_contact(a: [i64; 4], b: [i64; 4]) -> bool {
    let d: Vec<i64> = (0..4).map(|k| a[k] - b[k]).collect();
    d[0] * d[0] + d[1] * d[1] + d[2] * d[2] == d[3] * d[3]
}

fn c5() -> Outcome {
    timed(Some(Duration::from_secs(5)), || {
        let q = FieldSpec::rational();
        let mut notes = Vec::new();
        let mut ok = true;

        let cells: Vec<[i64; 4]> = (0..16).map(|v| [v / 8 % 2 + 1, v / 4 % 2 + 1, v / 2 % 2 + 1, v % 2 + 1]).collect();
        let mut pairs = 0;
        let mut brute = 0;
        for i in 0..16 {
            for j in (i + 1)..16 {
                pairs += 1;
                brute += int_contact(cells[i], cells[j]) as u64;
            }
        }
        let g2 = census::pencil_census(&gen::grid(q, 2).unwrap(), workers());
        ok &= pairs == 120 && brute == 24 && g2.contact_pairs == 24;
        notes.push(format!("m=2: oracle {brute}/{pairs} pairs, census {}", g2.contact_pairs));

        let mut pts = Vec::new();
        for m in 2..=6u32 {
            let rep = census::pencil_census(&gen::grid(q, m).unwrap(), workers());
            ok &= rep.max_richness() == Some(m as u64) && rep.histogram_pair_total() == rep.contact_pairs;
            if m >= 3 {
                pts.push(((rep.n as f64).ln(), (rep.contact_pairs as f64).ln()));
            }
            notes.push(format!("m={m}: n={} pairs={} max={:?}", rep.n, rep.contact_pairs, rep.max_richness()));
        }
        let k = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
        let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
            / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
        ok &= (1.3..=1.7).contains(&slope);
        notes.push(format!("slope {slope:.3}"));
        (ok, notes.join(", "))
    })
}

fn c6() -> Outcome {
    timed(Some(Duration::from_secs(60)), || {
        let f = FieldSpec::prime(11).unwrap();
        let s = |c| OrientedSphere::from_ints(f, c);
        let conic = common_contact_conic(&s([0, 0, 0, 1]), &s([4, 0, 0, 1]), &s([0, 4, 0, 1])).unwrap();
        let worked = conic_membership(&conic, &s([2, 2, 1, 4])) && conic_membership(&conic, &s([2, 2, 1, -2]));
        let q = FieldSpec::rational();
        let sq = |c| OrientedSphere::from_ints(q, c);
        let cq = common_contact_conic(&sq([0, 0, 0, 1]), &sq([4, 0, 0, 1]), &sq([0, 4, 0, 1])).unwrap();
        let worked_q = conic_membership(&cq, &sq([2, 2, 1, 4])) && conic_membership(&cq, &sq([2, 2, 1, -2]));
        let (ok, detail) = suites_ok(&[conic_oracle_suite(SEED, 20, workers())]);
        (ok && worked && worked_q, format!("worked triple members {worked}/{worked_q}; {detail}"))
    })
}

fn c7() -> Outcome {
    timed(Some(Duration::from_secs(60)), || suites_ok(&[two_solutions_suite(SEED, 10_000, workers())]))
}

fn direct_pairs(set: &SphereSet) -> u64 {
    let s = set.spheres();
    let mut n = 0;
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            n += lie_sphere::sphere::contact(&s[i], &s[j]).unwrap() as u64;
        }
    }
    n
}

fn nonzero_radius(set: &SphereSet) -> SphereSet {
    SphereSet::new(set.field(), set.spheres().iter().filter(|s| !s.r().is_zero()).copied()).unwrap()
}

fn centers(set: &SphereSet) -> PointSet {
    PointSet::new(set.field(), set.spheres().iter().map(|s| s.center())).unwrap()
}

/// Generator outputs: every kind over a few fields.
fn generator_outputs() -> Vec<(String, SphereSet, PointSet)> {
    let q = FieldSpec::rational();
    let f7 = FieldSpec::prime(7).unwrap();
    let f11 = FieldSpec::prime(11).unwrap();
    let f10007 = FieldSpec::prime(10007).unwrap();
    let mut out = Vec::new();
    for m in 2..=4 {
        let g = gen::grid(q, m).unwrap();
        let p = centers(&g);
        out.push((format!("grid m={m} over Q"), g, p));
    }
    let g = gen::grid(f11, 4).unwrap();
    out.push(("grid m=4 over F_11".into(), g.clone(), gen::plane_points(f11).unwrap()));
    let p = gen::pencil([q.zero(); 4], [3, 4, 0, 5].map(|v| q.int(v)), 5).unwrap();
    out.push(("pencil over Q".into(), p.clone(), centers(&p)));
    let p7 = gen::pencil([1, 1, 1, 1].map(|v| f7.int(v)), [3, 4, 0, 5].map(|v| f7.int(v)), 7).unwrap();
    out.push(("pencil over F_7".into(), p7, gen::plane_points(f7).unwrap()));
    let c = gen::conic_pair(f11, SEED).unwrap();
    out.push(("conic pair over F_11".into(), c.clone(), gen::plane_points(f11).unwrap()));
    let r = gen::random(q, 300, SEED, 6).unwrap();
    out.push(("random over Q".into(), r.clone(), gen::random_points(q, 300, SEED + 1, 6).unwrap()));
    let r = gen::random(f7, 300, SEED, 0).unwrap();
    out.push(("random over F_7".into(), r, gen::plane_points(f7).unwrap()));
    let r = gen::random(f10007, 500, SEED, 0).unwrap();
    out.push(("random over F_10007".into(), r, gen::random_points(f10007, 500, SEED, 0).unwrap()));
    out
}

/// Returns the incidence count on success.
fn identities(label: &str, set: &SphereSet, pts: &PointSet, rep: &CensusReport) -> Result<u64, String> {
    if rep.histogram_pair_total() != rep.contact_pairs {
        return Err(format!("{label}: histogram identity fails"));
    }
    let direct = direct_pairs(set);
    if direct != rep.contact_pairs {
        return Err(format!("{label}: census {} vs direct {direct}", rep.contact_pairs));
    }
    let inc = census::incidence_census(pts, &nonzero_radius(set), workers()).map_err(|e| e.to_string())?;
    if !inc.agree() {
        return Err(format!("{label}: incidences {} vs {}", inc.direct, inc.via_contact));
    }
    Ok(inc.direct)
}

fn random_reports() -> Vec<(SphereSet, CensusReport)> {
    let f = FieldSpec::prime(10007).unwrap();
    RANDOM_SEEDS
        .map(|seed| {
            let set = gen::random(f, RANDOM_N, seed, 0).unwrap();
            let rep = census::pencil_census(&set, workers());
            (set, rep)
        })
        .collect()
}

/// Also returns the random-set reports for the envelope check.
fn c8() -> (Outcome, Vec<(SphereSet, CensusReport)>) {
    let mut reports = Vec::new();
    let o = timed(Some(Duration::from_secs(120)), || {
        reports = random_reports();
        let f = FieldSpec::prime(10007).unwrap();
        let mut errors = Vec::new();
        let outputs = generator_outputs();
        for (label, set, pts) in &outputs {
            let rep = census::pencil_census(set, workers());
            if let Err(e) = identities(label, set, pts, &rep).map(drop) {
                errors.push(e);
            }
        }
        let mut incidences = 0;
        for (k, (set, rep)) in reports.iter().enumerate() {
            let pts = gen::random_points(f, RANDOM_N, 1000 + k as u64, 0).unwrap();
            match identities(&format!("random set {k}"), set, &pts, rep) {
                Ok(c) => incidences += c,
                Err(e) => errors.push(e),
            }
        }
        let detail = if errors.is_empty() {
            format!("{} generator outputs, {} random sets, {incidences} random-set incidences", outputs.len(), reports.len())
        } else {
            errors.join("; ")
        };
        (errors.is_empty(), detail)
    });
    (o, reports)
}

fn c9(reports: &[(SphereSet, CensusReport)]) -> Outcome {
    timed(None, || {
        let mut worst = 0f64;
        let mut ok = true;
        for (_, rep) in reports {
            let n = rep.n as f64;
            for k in 3..=rep.max_richness().unwrap_or(0).max(3) {
                let bound = 100.0 * n.powf(1.5) * (k as f64).powf(-1.5);
                let have = rep.at_least(k) as f64;
                ok &= have <= bound;
                worst = worst.max(have / bound);
            }
        }
        let max_k = reports.iter().filter_map(|(_, r)| r.max_richness()).max();
        (ok, format!("{} sets, max richness {max_k:?}, worst ratio to envelope {worst:.2e}", reports.len()))
    })
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_liesphere"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn c10() -> Outcome {
    timed(None, || {
        let dir = tempfile::tempdir().unwrap();
        let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
        let (grid, rnd, pts, cp, red, blue) =
            (path("grid.tsv"), path("rnd.tsv"), path("pts.tsv"), path("cp.tsv"), path("red.tsv"), path("blue.tsv"));
        let f = FieldSpec::prime(10007).unwrap();
        let red_set = gen::random(f, 300, 11, 0).unwrap();
        let blue_set = gen::random(f, 300, 12, 0).unwrap();
        std::fs::write(&red, io::format_spheres(&red_set)).unwrap();
        std::fs::write(&blue, io::format_spheres(&blue_set)).unwrap();
        let setup: Vec<Vec<&str>> = vec![
            vec!["gen", "grid", "--m", "4", "--field", "rational", "-o", &grid],
            vec!["gen", "random", "--n", "400", "--field", "p:10007", "-o", &rnd],
            vec!["gen", "random-points", "--n", "400", "--field", "p:10007", "--seed", "2", "-o", &pts],
            vec!["gen", "conic-pair", "--field", "p:11", "-o", &cp],
        ];
        for a in &setup {
            if let Err(e) = cli(a) {
                return (false, e);
            }
        }
        let runs: Vec<Vec<&str>> = vec![
            vec!["gen", "random", "--n", "50", "--field", "p:7"],
            vec!["gen", "pencil", "--k", "5", "--dir", "3,4,0,5"],
            vec!["pencils", &grid],
            vec!["pencils", &rnd, "--tsv"],
            vec!["distances", &pts, "--r", "3"],
            vec!["distances", &pts],
            vec!["incidences", "--points", &pts, "--spheres", &rnd],
            vec!["bichromatic", "--red", &red, "--blue", &blue],
            vec!["conics", &cp, "--threshold", "3"],
            vec!["conics", &rnd, "--threshold", "3", "--budget", "20000"],
            vec!["eta", &pts, "--sphere", "0,0,0,5"],
            vec!["verify", "--scale", "0.01"],
        ];
        let mut compared = 0;
        for a in &runs {
            let mut one = a.clone();
            one.extend(["--workers", "1"]);
            let mut eight = a.clone();
            eight.extend(["--workers", "8"]);
            match (cli(&one), cli(&eight)) {
                (Ok(x), Ok(y)) if x == y => compared += 1,
                (Ok(_), Ok(_)) => return (false, format!("{a:?}: outputs differ")),
                (Err(e), _) | (_, Err(e)) => return (false, e),
            }
        }
        (true, format!("{compared} invocations byte-identical"))
    })
}

fn main() {
    let mut all_ok = true;
    let mut report = |n: u32, name: &str, o: Outcome| {
        all_ok &= o.ok;
        println!("criterion {n:>2} {name}: {} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    };
    report(1, "bilinear identity", c1());
    report(2, "four-way contact agreement", c2());
    report(3, "heisenberg containment", c3());
    report(4, "pencil oracle over F_7", c4());
    report(5, "grid counts", c5());
    report(6, "conic oracle over F_11", c6());
    report(7, "at most two solutions", c7());
    let (o8, reports) = c8();
    report(8, "census identities", o8);
    report(9, "richness envelope", c9(&reports));
    report(10, "determinism across workers", c10());
    if !all_ok {
        std::process::exit(1);
    }
}
