// Every verification suite over every catalog entry.

use tangent_prolong::catalog::catalog_list;
use tangent_prolong::cli::{run_suite, Suite, SuiteParams, Target};
use tangent_prolong::rep_algebra::Verdict;

pub fn run_example() -> tangent_prolong::Result<()> {
    let params = SuiteParams {
        samples: 50,
        seed: 0,
        tol: 1e-9,
    };
    for entry in catalog_list() {
        let reports = run_suite(&Target::from_entry(entry), Suite::All, params)?;
        let count = |v| reports.iter().filter(|r| r.verdict == v).count();
        let failed: Vec<&str> = reports.iter().filter(|r| r.failed()).map(|r| r.name.as_str()).collect();
        println!(
            "{:<34} pass {:>2}  inconclusive {}  fail {:?}",
            entry.name,
            count(Verdict::Pass),
            count(Verdict::Inconclusive),
            failed
        );
        let expected: &[&str] = if entry.known_faithful { &[] } else { &["faithfulness"] };
        assert_eq!(failed, expected);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("catalog_report");
}
