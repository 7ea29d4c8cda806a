//! Run reports and CSV tables.

use flatfront_core::family::{completeness_report, CompletenessReport, CurvatureLine};
use flatfront_core::frontal::{
    build_front, front_condition, periodicity_class, validate_quadruple, DualityResiduals, FrontEvaluator,
    PeriodicityClass, Quadruple,
};
use flatfront_core::singularities::{singular_locus, ClassCounts, SingularReport, SingularSample};
use flatfront_core::{Error, Vec3};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{CliError, Result};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub tool: String,
    /// Value of `FLATFRONT_SEED`, if set.
    pub seed: Option<u64>,
    pub command: String,
    pub config: Config,
    /// Set for quadruples derived from the configured one.
    pub derived: Option<Derived>,
    pub validation: DualityResiduals,
    pub period_defect: Vec3,
    pub period_defect_warning: bool,
    pub front: FrontSummary,
    pub completeness: Option<CompletenessReport>,
    pub completeness_error: Option<String>,
    pub singular: SingularSummary,
    pub periodicity: PeriodicityClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Derived {
    pub operation: String,
    pub delta: Option<f64>,
    pub ruling_constant: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontSummary {
    pub is_front: bool,
    pub non_front_rulings: usize,
    pub umbilic_rulings: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSummary {
    pub samples: usize,
    pub counts: ClassCounts,
    pub noncusp_count: usize,
    pub noncusp_intervals: bool,
    pub image_diameter: f64,
    pub cone_point: Option<Vec3>,
    /// Samples that are not cuspidal edges, capped at 256 entries.
    pub noncusp_samples: Vec<SingularSample>,
}

/// Everything computed for one quadruple.
pub struct Analysis {
    pub front: FrontEvaluator,
    pub locus: SingularReport,
    pub report: RunReport,
}

pub fn seed_from_env() -> Option<u64> {
    std::env::var("FLATFRONT_SEED").ok().and_then(|s| s.trim().parse().ok())
}

pub fn analyze(q: &Quadruple, config: &Config, command: &str, derived: Option<Derived>) -> Result<Analysis> {
    let validation = validate_quadruple(q)?;
    let front = build_front(q)?;
    let fc = front_condition(q);
    let locus = singular_locus(q, q.grid())?;
    let (completeness, completeness_error) = match completeness_report(q) {
        Ok(c) => (Some(c), None),
        Err(e @ Error::PeriodConditionViolated { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let singular = SingularSummary {
        samples: locus.samples.len(),
        counts: locus.counts,
        noncusp_count: locus.noncusp_count,
        noncusp_intervals: locus.noncusp_intervals,
        image_diameter: locus.image_diameter,
        cone_point: locus.cone_point,
        noncusp_samples: locus.samples.iter().filter(|s| !s.class.is_cusp()).take(256).copied().collect(),
    };
    let report = RunReport {
        version: REPORT_VERSION,
        tool: format!("flatfront {}", env!("CARGO_PKG_VERSION")),
        seed: seed_from_env(),
        command: command.to_string(),
        config: config.clone(),
        derived,
        validation,
        period_defect: front.period_defect(),
        period_defect_warning: front.defect_warning(),
        front: FrontSummary {
            is_front: fc.is_front,
            non_front_rulings: fc.front.iter().filter(|f| !**f).count(),
            umbilic_rulings: fc.umbilic_rulings.len(),
        },
        completeness,
        completeness_error,
        singular,
        periodicity: periodicity_class(q),
    };
    Ok(Analysis { front, locus, report })
}

pub fn report_json(r: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serialises");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<RunReport> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: "report".to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
}

/// Columns `t,v,class,a,a_prime,mu1,mu2`.
pub fn singular_csv(r: &SingularReport) -> String {
    csv_string(|w| {
        w.write_record(["t", "v", "class", "a", "a_prime", "mu1", "mu2"])?;
        for s in &r.samples {
            w.write_record([
                s.t.to_string(),
                s.v.to_string(),
                s.class.name().to_string(),
                s.a.to_string(),
                s.a_prime.to_string(),
                s.mu1.to_string(),
                s.mu2.to_string(),
            ])?;
        }
        Ok(())
    })
}

/// Columns `t,v`.
pub fn curvline_csv(l: &CurvatureLine) -> String {
    csv_string(|w| {
        w.write_record(["t", "v"])?;
        for (t, v) in l.t.iter().zip(&l.v) {
            w.write_record([t.to_string(), v.to_string()])?;
        }
        Ok(())
    })
}
