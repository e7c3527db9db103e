//! Acceptance criteria, one line per criterion.
//!
//! Each criterion is evaluated at full strictness and printed as PASS or FAIL. Criteria whose
//! failure has been analysed are listed in `DOCUMENTED_FAILURES`; the target exits nonzero if
//! any other criterion fails or if a documented failure stops failing.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use depthzero::engine::{rank_and_independence, OracleCell, SUPPORTED_Q};
use depthzero::labels::{CellIndex, CocycleLabel, Vertex};
use depthzero::oracle::{in_scope, OracleOptions};
use depthzero::suites::{self, oracle_cell, oracle_n_max};
use depthzero::tables::ErratumBranch;

/// Criteria that fail at full strictness.
const DOCUMENTED_FAILURES: [(u32, &str); 3] = [
    (4, "brute-force transform of phi_(0) lacks the sgn(-1) factor of the closed form"),
    (6, "s0 character rows disagree with enumeration"),
    (8, "pi(0,+-) at ramified cells for q = 3 follows the closed form, not the brute-force transform"),
];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn line(&self) -> String {
        let within = self.elapsed <= self.budget;
        let verdict = if self.pass && within { "PASS" } else { "FAIL" };
        format!(
            "criterion {:>2} {verdict} {}: {} [{:.2}s of {}s]",
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }

    fn ok(&self) -> bool {
        self.pass && self.elapsed <= self.budget
    }
}

fn timed(
    id: u32,
    name: &'static str,
    budget_s: u64,
    f: impl FnOnce() -> (bool, String),
) -> Outcome {
    let t = Instant::now();
    let (pass, detail) = f();
    Outcome {
        id,
        name,
        pass,
        detail,
        elapsed: t.elapsed(),
        budget: Duration::from_secs(budget_s),
    }
}

fn count(reports: &[depthzero::engine::CellValueReport]) -> (usize, usize) {
    (reports.len(), reports.iter().filter(|r| !r.pass).count())
}

fn c1() -> Outcome {
    timed(1, "Gauss-sum identities", 1, || {
        let mut all = Vec::new();
        for q in SUPPORTED_Q {
            all.extend(suites::gauss(q).unwrap());
        }
        let (n, f) = count(&all);
        (f == 0, format!("{n} identities, {f} failures"))
    })
}

fn c2() -> Outcome {
    timed(2, "Green's-function structure", 1, || {
        let mut all = Vec::new();
        for q in SUPPORTED_Q {
            all.extend(suites::green(q).unwrap());
        }
        let (n, f) = count(&all);
        (f == 0, format!("{n} identities, {f} failures"))
    })
}

fn c3() -> Outcome {
    timed(3, "Springer instance on the nilpotent cone", 5, || {
        let mut all = Vec::new();
        for q in SUPPORTED_Q {
            all.extend(suites::springer(q).unwrap());
        }
        let (n, f) = count(&all);
        (
            f == 0,
            format!("{n} (v, class) comparisons over all cone points, {f} failures"),
        )
    })
}

fn c4() -> Outcome {
    timed(4, "phi_(0), phi_(1) closed forms", 1, || {
        let mut all = Vec::new();
        for q in SUPPORTED_Q {
            all.extend(suites::phi01(q).unwrap());
        }
        let (n, f) = count(&all);
        let bad_q: BTreeSet<u64> = all.iter().filter(|r| !r.pass).map(|r| r.q).collect();
        (
            f == 0,
            format!("{n} orbit values, {f} failures at q in {bad_q:?}"),
        )
    })
}

fn c5() -> Outcome {
    timed(5, "point counts against motives", 5, || {
        let mut all = Vec::new();
        for q in [3, 5, 7] {
            all.extend(suites::point_counts(q).unwrap());
        }
        let (n, f) = count(&all);
        (f == 0, format!("{n} counts, {f} failures"))
    })
}

fn c6() -> Outcome {
    timed(6, "oracle against tables", 600, || {
        let mut all = Vec::new();
        for p in [3, 5] {
            for cell in CellIndex::grid(oracle_n_max(p).unwrap()) {
                if in_scope(p, cell) {
                    let reports =
                        oracle_cell(p, cell, ErratumBranch::Corrected, OracleOptions::default())
                            .unwrap();
                    all.extend(
                        reports
                            .into_iter()
                            .filter(|r| r.check.starts_with('M') || r.check.starts_with('N')),
                    );
                }
            }
        }
        let (n, f) = count(&all);
        let bad: BTreeSet<String> = all
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.cell.unwrap().z.to_string())
            .collect();
        (
            f == 0,
            format!("{n} counts, {f} differ, failing labels {bad:?}"),
        )
    })
}

fn c7() -> Outcome {
    timed(7, "character expansion grid, table mode", 30, || {
        let mut corrected = Vec::new();
        let mut printed = Vec::new();
        for q in SUPPORTED_Q {
            corrected.extend(suites::formula(q, 6, ErratumBranch::Corrected).unwrap());
            printed.extend(suites::formula(q, 6, ErratumBranch::Printed).unwrap());
        }
        let (n, fc) = count(&corrected);
        let fail_sites: BTreeSet<(Vertex, CocycleLabel, u64)> = printed
            .iter()
            .filter(|r| !r.pass)
            .map(|r| (r.pi.unwrap().x, r.cell.unwrap().z, r.q))
            .collect();
        let expected: BTreeSet<(Vertex, CocycleLabel, u64)> = SUPPORTED_Q
            .into_iter()
            .filter(|q| q % 4 == 3)
            .map(|q| (Vertex::V1, CocycleLabel::T1, q))
            .collect();
        let fp = printed.iter().filter(|r| !r.pass).count();
        (
            fc == 0 && fail_sites == expected,
            format!(
                "corrected: {n} checks, {fc} failures; printed: {fp} failures, confined to (x=(1), t1, q = 3 mod 4): {}",
                fail_sites == expected
            ),
        )
    })
}

fn c8() -> Outcome {
    timed(8, "character expansion, oracle mode", 600, || {
        let mut all = Vec::new();
        for p in [3, 5] {
            for cell in CellIndex::grid(oracle_n_max(p).unwrap()) {
                if in_scope(p, cell) {
                    let oc = OracleCell::compute(p, cell, OracleOptions::default()).unwrap();
                    for pi in depthzero::labels::ReprLabel::all() {
                        all.push(oc.check_expansion(pi).unwrap());
                    }
                }
            }
        }
        let (n, f) = count(&all);
        let sites: BTreeSet<String> = all
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("p={} {} {}", r.q, r.pi.unwrap(), r.cell.unwrap().z))
            .collect();
        (
            f == 0,
            format!("{n} checks, {f} nonzero residuals at {sites:?}"),
        )
    })
}

fn c9() -> Outcome {
    timed(9, "endoscopic expansion grid and uniqueness", 30, || {
        let mut all = Vec::new();
        let mut ranks = Vec::new();
        for q in SUPPORTED_Q {
            all.extend(suites::endoscopy(q, 6, ErratumBranch::Corrected).unwrap());
            ranks.push(
                rank_and_independence(q, 6, ErratumBranch::Corrected)
                    .unwrap()
                    .endoscopic_rank,
            );
        }
        let (n, f) = count(&all);
        (
            f == 0 && ranks.iter().all(|&r| r == 4),
            format!("{n} checks, {f} failures; endoscopic ranks {ranks:?}"),
        )
    })
}

fn c10() -> Outcome {
    timed(10, "rank, packet and stable sums, symmetry", 10, || {
        let mut ranks = Vec::new();
        let mut rel = Vec::new();
        for q in SUPPORTED_Q {
            ranks.push(
                rank_and_independence(q, 2, ErratumBranch::Corrected)
                    .unwrap()
                    .coefficient_rank,
            );
            rel.extend(suites::relations(q, 6, ErratumBranch::Corrected).unwrap());
        }
        let (n, f) = count(&rel);
        let sym = rel.iter().filter(|r| r.check == "symmetry").count();
        (
            f == 0 && ranks.iter().all(|&r| r == 4) && sym > 0,
            format!(
                "coefficient ranks {ranks:?}; {n} relation checks ({sym} symmetry), {f} failures"
            ),
        )
    })
}

fn main() -> ExitCode {
    let outcomes = [c1(), c2(), c3(), c4(), c5(), c6(), c7(), c8(), c9(), c10()];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let documented: BTreeSet<u32> = DOCUMENTED_FAILURES.iter().map(|(id, _)| *id).collect();
    let failing: BTreeSet<u32> = outcomes.iter().filter(|o| !o.ok()).map(|o| o.id).collect();
    for (id, why) in DOCUMENTED_FAILURES {
        if failing.contains(&id) {
            println!("criterion {id:>2} documented failure: {why}");
        }
    }
    let passed = outcomes.len() - failing.len();
    println!("{passed} of {} criteria pass", outcomes.len());
    if failing == documented {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome: failing {failing:?}, documented {documented:?}");
        ExitCode::FAILURE
    }
}
