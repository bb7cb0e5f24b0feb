use std::time::Instant;

use multicat::bounds::{count_valid_states, enumerate_valid_states, SizeVector};
use multicat::concat::{minimal_concat_dfa, ConcatInput};
use multicat::witness::{Expectation, WitnessFamily};
use multicat::Error;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    LowerBoundOk,
    SkippedCap,
    Mismatch,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::LowerBoundOk => "lower-bound-ok",
            Status::SkippedCap => "skipped-cap",
            Status::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub family: WitnessFamily,
    pub n: String,
    pub expected: Expectation,
    /// Where the expected value comes from.
    pub provenance: &'static str,
    /// Brute-force count of valid states, when within the enumeration limit.
    pub tau_enum: Option<u64>,
    pub minimal_observed: Option<usize>,
    pub status: Status,
    /// Present only when timing is requested, so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    #[serde(rename = "match")]
    pub matched: usize,
    pub lower_bound_ok: usize,
    pub mismatch: usize,
    pub skipped_cap: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub cases: Vec<Case>,
    pub summary: Summary,
}

fn uses_valid_state_count(family: WitnessFamily, n: &SizeVector) -> bool {
    matches!(
        family,
        WitnessFamily::Kp1 | WitnessFamily::Kp1Two | WitnessFamily::Kletter | WitnessFamily::Kletter2State
    ) || (family == WitnessFamily::BinaryK2 && n.as_slice().iter().all(|&x| x >= 2))
}

/// Runs generate, concatenate, determinize and minimize for one case and
/// compares the result with the expected value.
pub fn run_case(family: WitnessFamily, n: &SizeVector, cap: usize, timing: bool) -> Result<Case, Error> {
    let started = Instant::now();
    let expected = family.expected(n)?;
    let tau_enum = if uses_valid_state_count(family, n) {
        enumerate_valid_states(n).ok()
    } else {
        None
    };
    let provenance = match expected {
        Expectation::Exact(_) => "formula",
        Expectation::AtLeast(_) => "derived",
    };
    let mut note = None;
    if let Some(e) = tau_enum {
        let tau = count_valid_states(n)?.tau;
        if tau != e.into() {
            note = Some(format!("recursion gives {tau}, enumeration gives {e}"));
        }
    }
    let input = ConcatInput::new(family.generate(n)?)?;
    let (minimal_observed, mut status) = match minimal_concat_dfa(&input, cap) {
        Ok(dfa) => {
            let m = dfa.state_count();
            let status = match (&expected, expected.is_met_by(m)) {
                (_, false) => Status::Mismatch,
                (Expectation::Exact(_), true) => Status::Match,
                (Expectation::AtLeast(_), true) => Status::LowerBoundOk,
            };
            (Some(m), status)
        }
        Err(Error::CapExceeded { .. }) => (None, Status::SkippedCap),
        Err(e) => return Err(e),
    };
    if note.is_some() {
        status = Status::Mismatch;
    }
    Ok(Case {
        family,
        n: n.to_string(),
        expected,
        provenance,
        tau_enum,
        minimal_observed,
        status,
        wall_ms: timing.then(|| started.elapsed().as_millis()),
        note,
    })
}

/// Runs the cases in parallel; the report keeps the input order.
pub fn run_cases(cases: &[(WitnessFamily, SizeVector)], cap: usize, timing: bool) -> Result<Report, Error> {
    let cases: Vec<Case> = cases
        .par_iter()
        .map(|(f, n)| run_case(*f, n, cap, timing))
        .collect::<Result<_, _>>()?;
    let mut summary = Summary { total: cases.len(), ..Summary::default() };
    for c in &cases {
        match c.status {
            Status::Match => summary.matched += 1,
            Status::LowerBoundOk => summary.lower_bound_ok += 1,
            Status::Mismatch => summary.mismatch += 1,
            Status::SkippedCap => summary.skipped_cap += 1,
        }
    }
    Ok(Report { cases, summary })
}

impl Report {
    /// 0 when every case passed, 1 on any mismatch, 3 when cases were
    /// skipped for exceeding the cap.
    pub fn exit_code(&self) -> u8 {
        if self.summary.mismatch > 0 {
            1
        } else if self.summary.skipped_cap > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["family", "n", "tau_formula", "tau_enum", "minimal_observed", "status", "wall_ms"])
            .expect("in-memory write");
        for c in &self.cases {
            let opt = |v: Option<String>| v.unwrap_or_default();
            w.write_record([
                c.family.tag().to_string(),
                c.n.clone(),
                c.expected.value().to_string(),
                opt(c.tau_enum.map(|v| v.to_string())),
                opt(c.minimal_observed.map(|v| v.to_string())),
                c.status.as_str().to_string(),
                opt(c.wall_ms.map(|v| v.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(n: &[usize]) -> SizeVector {
        SizeVector::new(n.to_vec()).unwrap()
    }

    #[test]
    fn single_cases() {
        let c = run_case(WitnessFamily::Kp1, &sv(&[3, 3, 3]), 100_000, false).unwrap();
        assert_eq!((c.minimal_observed, c.status, c.tau_enum), (Some(106), Status::Match, Some(106)));
        let c = run_case(WitnessFamily::BinaryLb, &sv(&[3, 4, 3]), 100_000, false).unwrap();
        assert_eq!(c.status, Status::LowerBoundOk);
        let c = run_case(WitnessFamily::Kp1, &sv(&[3, 3, 3]), 10, false).unwrap();
        assert_eq!((c.minimal_observed, c.status), (None, Status::SkippedCap));
    }

    #[test]
    fn exit_code_reflects_worst_status() {
        let cases = vec![
            (WitnessFamily::Kp1, sv(&[3, 3])),
            (WitnessFamily::Kp1, sv(&[3, 3, 3])),
        ];
        assert_eq!(run_cases(&cases, 20, false).unwrap().exit_code(), 3);
        assert_eq!(run_cases(&cases, 100_000, false).unwrap().exit_code(), 0);
        let bad = vec![(WitnessFamily::Kletter2State, sv(&[2, 2, 2])), cases[1].clone()];
        assert_eq!(run_cases(&bad, 20, false).unwrap().exit_code(), 1);
    }

    #[test]
    fn csv_layout() {
        let r = run_cases(&[(WitnessFamily::Kp1, sv(&[3, 3]))], 1000, false).unwrap();
        assert_eq!(
            r.to_csv(),
            "family,n,tau_formula,tau_enum,minimal_observed,status,wall_ms\nkp1,\"3,3\",20,20,20,match,\n"
        );
    }
}
