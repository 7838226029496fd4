//! Check execution and stable machine-readable output. Structured output is
//! line-delimited tab-separated records with a schema-version header; timing
//! appears only in the human format so records stay byte-identical across
//! runs.

use std::time::{Duration, Instant};

use crate::criteria::{
    classify_spec, pcg_bruteforce, FamilyRow, Route, TableRow, Verdict, VerdictTag,
};
use crate::groups::{build_group, parse_spec};
use crate::PcgError;

/// Schema-version header emitted before any records.
pub const RECORDS_HEADER: &str = "#pcg-records v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Criterion,
    Both,
}

impl std::str::FromStr for Method {
    type Err = PcgError;

    fn from_str(s: &str) -> Result<Method, PcgError> {
        match s {
            "brute" => Ok(Method::Brute),
            "criterion" => Ok(Method::Criterion),
            "both" => Ok(Method::Both),
            other => Err(PcgError::InvalidParameter(format!(
                "unknown method '{other}' (expected brute, criterion or both)"
            ))),
        }
    }
}

/// Outcome of one route.
#[derive(Debug, Clone)]
pub struct RouteReport {
    pub route: Route,
    pub tag: VerdictTag,
    /// Present iff the verdict is NotCograph.
    pub witness: Option<String>,
    /// Evidence rendering for human output.
    pub detail: String,
}

/// Everything `check` reports about one spec.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub spec: String,
    pub label: String,
    pub order: u128,
    pub routes: Vec<RouteReport>,
    /// Some(..) when both routes produced verdicts; false means a conflict.
    pub agreement: Option<bool>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn conflict(&self) -> bool {
        self.agreement == Some(false)
    }

    fn sanitize(s: &str) -> String {
        s.replace(['\t', '\n'], " ")
    }

    pub fn to_records(&self) -> String {
        let mut out = format!("{RECORDS_HEADER}\n");
        for r in &self.routes {
            out.push_str(&format!(
                "check\tspec={}\tlabel={}\torder={}\troute={}\tverdict={}\twitness={}\n",
                Self::sanitize(&self.spec),
                Self::sanitize(&self.label),
                self.order,
                r.route,
                r.tag,
                Self::sanitize(r.witness.as_deref().unwrap_or("")),
            ));
        }
        if let Some(ok) = self.agreement {
            out.push_str(&format!(
                "agreement\tspec={}\tok={}\n",
                Self::sanitize(&self.spec),
                ok
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group: {} (order {})\n", self.label, self.order);
        for r in &self.routes {
            out.push_str(&format!("route {}: {} ({})\n", r.route, r.tag, r.detail));
        }
        if let Some(ok) = self.agreement {
            out.push_str(&format!(
                "agreement: {}\n",
                if ok { "ok" } else { "CONFLICT" }
            ));
        }
        out.push_str(&format!("elapsed: {:.3?}\n", self.elapsed));
        out
    }
}

fn route_report(verdict: &Verdict, group: Option<&crate::groups::FiniteGroup>) -> RouteReport {
    let detail = verdict.evidence_text(group);
    RouteReport {
        route: verdict.route,
        tag: verdict.tag,
        witness: (verdict.tag == VerdictTag::NotCograph).then(|| detail.clone()),
        detail,
    }
}

/// Runs the requested route(s) on a spec. A conflict between routes is
/// reported through `CheckReport::conflict`, not an error, so the caller can
/// both print the report and exit nonzero.
pub fn run_check(
    spec_text: &str,
    method: Method,
    cap: u64,
    budget: u64,
) -> Result<CheckReport, PcgError> {
    let spec = parse_spec(spec_text)?;
    let start = Instant::now();
    let mut routes = Vec::new();
    let mut group = None;
    if matches!(method, Method::Brute | Method::Both) {
        let g = build_group(&spec, cap)?;
        let verdict = pcg_bruteforce(&g);
        routes.push(route_report(&verdict, Some(&g)));
        group = Some(g);
    }
    if matches!(method, Method::Criterion | Method::Both) {
        let verdict = classify_spec(&spec, budget, cap)?;
        routes.push(route_report(&verdict, group.as_ref()));
    }
    let agreement = (routes.len() == 2).then(|| {
        let (a, b) = (routes[0].tag, routes[1].tag);
        !matches!(
            (a, b),
            (VerdictTag::IsCograph, VerdictTag::NotCograph)
                | (VerdictTag::NotCograph, VerdictTag::IsCograph)
        )
    });
    Ok(CheckReport {
        spec: spec.to_string(),
        label: spec.to_string(),
        order: spec.order(),
        routes,
        agreement,
        elapsed: start.elapsed(),
    })
}

fn row_numbers_field(row: &FamilyRow) -> String {
    row.numbers
        .iter()
        .map(|n| format!("{}={}:{}", n.label, n.value, n.class))
        .collect::<Vec<_>>()
        .join(",")
}

/// Records output for a family sweep.
pub fn family_records(family: &str, rows: &[FamilyRow]) -> String {
    let mut out = format!("{RECORDS_HEADER}\n");
    for row in rows {
        out.push_str(&format!(
            "family\tname={}\tparam={}\tverdict={}\tnumbers={}\tnote={}\n",
            family,
            row.param,
            row.verdict,
            row_numbers_field(row),
            row.note.as_deref().unwrap_or(""),
        ));
    }
    out
}

/// Human table for a family sweep.
pub fn family_table(family: &str, rows: &[FamilyRow]) -> String {
    let mut out = format!("family {family}\n");
    for row in rows {
        let numbers = row
            .numbers
            .iter()
            .map(|n| format!("{} = {} [{}]", n.label, n.value, n.class))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(&format!("{:>6}  {:<11}", row.param, row.verdict.to_string()));
        if !numbers.is_empty() {
            out.push_str("  ");
            out.push_str(&numbers);
        }
        if let Some(note) = &row.note {
            out.push_str(&format!("  ({note})"));
        }
        out.push('\n');
    }
    out
}

/// Records output for the static simple-group verdict table.
pub fn table_records(rows: &[TableRow]) -> String {
    let mut out = format!("{RECORDS_HEADER}\n");
    for row in rows {
        out.push_str(&format!(
            "table\tfamily={}\tcondition={}\tverdict={}\treason={}\n",
            row.family,
            row.condition.replace(['\t', '\n'], " "),
            row.verdict,
            row.reason.replace(['\t', '\n'], " "),
        ));
    }
    out
}

/// Human output for the static simple-group verdict table.
pub fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&format!(
            "{:<12} {}  [{}]\n    {}\n",
            row.family, row.verdict, row.condition, row.reason
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_both_agrees_on_sym5() {
        let report = run_check("sym:5", Method::Both, 100_000, 100_000).unwrap();
        assert_eq!(report.routes.len(), 2);
        assert!(report
            .routes
            .iter()
            .all(|r| r.tag == VerdictTag::IsCograph));
        assert_eq!(report.agreement, Some(true));
        assert!(!report.conflict());
        // Witness only on NotCograph.
        assert!(report.routes.iter().all(|r| r.witness.is_none()));
    }

    #[test]
    fn check_brute_m11_has_witness() {
        let report = run_check("m11", Method::Brute, 100_000, 100_000).unwrap();
        assert_eq!(report.routes.len(), 1);
        assert_eq!(report.routes[0].tag, VerdictTag::NotCograph);
        assert!(report.routes[0].witness.is_some());
    }

    #[test]
    fn records_are_deterministic() {
        let a = run_check("sym:6", Method::Both, 100_000, 100_000)
            .unwrap()
            .to_records();
        let b = run_check("sym:6", Method::Both, 100_000, 100_000)
            .unwrap()
            .to_records();
        assert_eq!(a, b);
        assert!(a.starts_with(RECORDS_HEADER));
    }

    #[test]
    fn cap_surfaces_as_error() {
        assert!(matches!(
            run_check("sym:9", Method::Brute, 100_000, 100_000),
            Err(PcgError::CapExceeded { .. })
        ));
    }
}
