//! One line per acceptance criterion: instance count, elapsed time and the
//! time budget. Any failed check or blown budget fails the test.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use fibseq::morse::{assemble_fibration, leray_serre_compare, CellularData};
use fibseq::specseq::SplitFilteredComplex;
use fibseq::Field;
use fibseq_acceptance::checks::{
    acyclic_fiber_vanishes, field_for, monodromy_e2, product_degenerates, tower_soundness, truncation_commutes, Check,
};
use fibseq_acceptance::local::{base_point_conjugacy, groupoid_laws, homotopy_invariance, unique_extension};
use fibseq_acceptance::{oracle_cohomology, random_split, rng, split_with, Oracle, V};
use fibseq_cli::doc::{parse_document, print_document, Built};

const F2: Field = Field::Prime(2);
const Q: Field = Field::Rationals;

struct Outcome {
    id: usize,
    title: &'static str,
    detail: String,
    elapsed: Duration,
    budget: Duration,
    error: Option<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.error.is_none() && self.elapsed <= self.budget
    }
}

/// Runs `body`, which returns a summary of what was checked.
fn criterion(id: usize, title: &'static str, budget_secs: u64, body: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (detail, error) = match result {
        Ok(d) => (d, None),
        Err(e) => (String::new(), Some(e)),
    };
    let out = Outcome {
        id,
        title,
        detail,
        elapsed,
        budget: Duration::from_secs(budget_secs),
        error,
    };
    let status = if out.passed() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {:>2} {:<44} {:<34} {:>7.2}s / {}s",
        out.id,
        out.title,
        out.detail,
        out.elapsed.as_secs_f64(),
        budget_secs
    );
    if let Some(e) = &out.error {
        println!("           {e}");
    }
    out
}

/// Runs `check` on seeds `0..count`, stopping at the first failure.
fn seeded(count: u64, salt: u64, check: impl Fn(u64) -> Check) -> Result<String, String> {
    for seed in 0..count {
        check(seed ^ salt).map_err(|e| format!("seed {:#x}: {e}", seed ^ salt))?;
    }
    Ok(format!("{count} instances"))
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/corpus")
}

fn load(name: &str, field: Field) -> Built {
    fibseq_cli::read_document(&corpus().join(name), Some(field))
        .and_then(|d| d.build())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn cellular(name: &str, field: Field) -> CellularData {
    match load(name, field) {
        Built::Cellular(cd, _) => cd,
        _ => panic!("{name} is not cellular"),
    }
}

fn betti(m: &BTreeMap<i64, usize>, top: i64) -> Vec<usize> {
    (0..=top).map(|k| m.get(&k).copied().unwrap_or(0)).collect()
}

/// Betti numbers straight from the incidence numbers, with dense ranks.
fn cellular_oracle(cd: &CellularData, field: Field) -> Vec<usize> {
    let o = Oracle::of(field);
    let cells = cd.cells();
    let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let index: Vec<(i64, usize)> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.dim, cells[..i].iter().filter(|x| x.dim == c.dim).count()))
        .collect();
    let count = |k: i64| cells.iter().filter(|c| c.dim == k).count();
    let rank = |k: i64| {
        let mut m = vec![vec![V::from_integer(0.into()); count(k)]; count(k + 1)];
        for inc in cd.incidences() {
            let ((a, i), (b, j)) = (index[inc.from], index[inc.to]);
            if a == k && b == k + 1 {
                m[j][i] = o.add(&m[j][i], &o.int(inc.coefficient));
            }
        }
        o.rank(&m)
    };
    (0..=top).map(|k| count(k) - rank(k) - if k > 0 { rank(k - 1) } else { 0 }).collect()
}

fn golden_models() -> Result<String, String> {
    let mut pages = 0;
    for field in [Q, F2] {
        for (cells, fib) in [("torus_cells.json", "torus_product.json"), ("klein_cells.json", "klein_fibration.json")] {
            let cd = cellular(cells, field);
            let Built::Fibration(fd) = load(fib, field) else {
                return Err(format!("{fib} is not a fibration"));
            };
            let report = leray_serre_compare(&cd, &fd).map_err(|e| e.to_string())?;
            if !report.equal || report.pages.is_empty() {
                return Err(format!("{cells} and {fib} differ over {field}"));
            }
            pages += report.pages.len();
            let got = betti(&report.cohomology, 2);
            if got != cellular_oracle(&cd, field) {
                return Err(format!("{cells} over {field}: {got:?} disagrees with the incidence oracle"));
            }
            let want = match (cells, field) {
                ("torus_cells.json", _) => vec![1, 2, 1],
                (_, Field::Rationals) => vec![1, 1, 0],
                _ => vec![1, 2, 1],
            };
            if got != want {
                return Err(format!("{cells} over {field}: totals {got:?}, expected {want:?}"));
            }
        }
    }
    Ok(format!("4 models, {pages} pages compared"))
}

fn hopf() -> Result<String, String> {
    let Built::Fibration(fd) = load("hopf.json", Q) else {
        return Err("hopf.json is not a fibration".into());
    };
    let sfc = assemble_fibration(&fd).map_err(|e| e.to_string())?;
    let ss = sfc.spectral_sequence();
    let e2 = ss.page(2).map_err(|e| e.to_string())?;
    if e2.target(0, 1) != (2, 0) || e2.d(0, 1).rank() != 1 {
        return Err(format!("d_2 from (0,1) has rank {}", e2.d(0, 1).rank()));
    }
    let report = ss.converge().map_err(|e| e.to_string())?;
    let e3 = ss.page(3).map_err(|e| e.to_string())?.dims();
    let e3: BTreeMap<_, _> = e3.into_iter().filter(|(_, d)| *d > 0).collect();
    if e3 != report.e_infinity || !report.certified {
        return Err("E_3 is not the limit page".into());
    }
    let totals = betti(&report.e_infinity_totals(), 3);
    if totals != vec![1, 0, 0, 1] || totals != betti(&oracle_cohomology(sfc.complex()), 3) {
        return Err(format!("totals {totals:?}"));
    }
    Ok("rank d_2 = 1, E_3 = E_inf".into())
}

fn local_systems() -> Result<String, String> {
    let checks: [fn(&mut rand_chacha::ChaCha8Rng, Field) -> Check; 4] =
        [groupoid_laws, homotopy_invariance, base_point_conjugacy, unique_extension];
    for (i, check) in checks.iter().enumerate() {
        seeded(100, 0x700 + i as u64, |seed| check(&mut rng(seed), field_for(seed)))?;
    }
    Ok("4 properties x 100 instances".into())
}

/// `E_{r+1}` has the same Euler characteristic as `E_r`; the limit totals
/// match the cohomology of the complex.
fn large_tower() -> Result<String, String> {
    let mut r = rng(0x9000);
    let sfc: SplitFilteredComplex = split_with(&mut r, F2, 2000, 4, 2000);
    let ss = sfc.spectral_sequence();
    let chi = |dims: &BTreeMap<(i64, i64), usize>| dims.iter().map(|((p, q), d)| if (p + q) % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum::<i64>();
    let stable = ss.stable_index();
    let mut expected = None;
    for r in 0..=stable {
        let x = chi(&ss.page(r).map_err(|e| e.to_string())?.dims());
        if *expected.get_or_insert(x) != x {
            return Err(format!("Euler characteristic changes at E_{r}"));
        }
    }
    let report = ss.converge().map_err(|e| e.to_string())?;
    let direct: BTreeMap<i64, usize> = sfc.complex().cohomology().dims().into_iter().filter(|(_, d)| *d > 0).collect();
    let totals: BTreeMap<i64, usize> = report.e_infinity_totals().into_iter().filter(|(_, d)| *d > 0).collect();
    if !report.certified || totals != direct {
        return Err("limit page does not match the cohomology".into());
    }
    Ok(format!("{} generators, {} pages", sfc.complex().total_dim(), stable + 1))
}

fn cli_contract() -> Result<String, String> {
    let dir = corpus();
    let text = std::fs::read_to_string(dir.join("cases.txt")).map_err(|e| e.to_string())?;
    let cases: Vec<(&str, Vec<&str>)> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('\t').expect("name<TAB>args");
            (name, args.split_whitespace().collect())
        })
        .collect();
    // paths in the cases and golden files are relative to the corpus
    std::env::set_current_dir(&dir).map_err(|e| e.to_string())?;
    let mut codes = BTreeSet::new();
    for (name, args) in &cases {
        let run = || {
            let t = fibseq_cli::execute(std::iter::once("fibseq").chain(args.iter().copied()));
            format!("{}--- stderr\n{}--- exit {}\n", t.stdout, t.stderr, t.code)
        };
        let first = run();
        let want = std::fs::read_to_string(dir.join("golden").join(format!("{name}.out"))).map_err(|e| format!("{name}: {e}"))?;
        if first != want {
            return Err(format!("{name}: transcript differs from golden"));
        }
        if run() != first {
            return Err(format!("{name}: output is not deterministic"));
        }
        codes.insert(first.rsplit("--- exit ").next().unwrap().trim().to_string());
    }
    if codes.len() != 5 {
        return Err(format!("exit codes exercised: {codes:?}"));
    }
    let mut docs = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_none_or(|x| x != "json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let Ok(doc) = parse_document(&text) else { continue };
        let canon = doc.canonical().map_err(|e| e.to_string())?;
        let printed = print_document(&canon);
        if parse_document(&printed).ok().as_ref() != Some(&canon) {
            return Err(format!("{} does not round-trip", path.display()));
        }
        docs += 1;
    }
    Ok(format!("{} cases, {docs} documents", cases.len()))
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "random split towers", 60, || {
            seeded(500, 0x100, |seed| tower_soundness(&random_split(&mut rng(seed), field_for(seed), 30, 5)))
        }),
        criterion(2, "product fibrations degenerate at E_2", 30, || {
            seeded(50, 0x200, |seed| product_degenerates(&mut rng(seed), field_for(seed)))
        }),
        criterion(3, "acyclic fibers", 10, || {
            seeded(20, 0x300, |seed| acyclic_fiber_vanishes(&mut rng(seed), field_for(seed)))
        }),
        criterion(4, "E_2 from local coefficients", 30, || {
            seeded(50, 0x400, |seed| monodromy_e2(&mut rng(seed), field_for(seed)))
        }),
        criterion(5, "torus and Klein bottle models", 5, golden_models),
        criterion(6, "Hopf fibration", 1, hopf),
        criterion(7, "local systems", 5, local_systems),
        criterion(8, "truncations commute with d_r", 10, || {
            seeded(20, 0x800, |seed| truncation_commutes(&mut rng(seed), field_for(seed)))
        }),
        criterion(9, "2000 generators over F2", 10, large_tower),
        criterion(10, "command-line contract", 30, cli_contract),
    ];
    let failed: Vec<usize> = results.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
