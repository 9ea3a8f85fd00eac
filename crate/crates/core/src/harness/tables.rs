use std::fmt::Write as _;
use std::thread;

use crate::error::{invalid, Result};
use crate::fiducial::GpdSpec;
use crate::fiducial_bayes::{fb_limit, fb_prob_in, FidBayesConfig, Limit};
use crate::mixture::DEFAULT_KAPPA;
use crate::numerics::special::std_normal_quantile;
use crate::postdata::Method;
use crate::prior::SpikeSlabPrior;
use crate::pure_bayes::prob_in_interval;
use crate::scenario::{IntervalHypothesis, Scenario};

/// How x̄ is set for each column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XbarRule {
    Fixed(f64),
    /// x̄ = Φ⁻¹(1 − α/2)σ/√n
    Lindley {
        alpha: f64,
        sigma: f64,
    },
}

/// The swept parameter; `f64::INFINITY` is the limit column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    SlabScale,
    SampleSize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub id: u8,
    pub lam: f64,
    pub theta0: f64,
    /// Fixed σ0 when the axis is the sample size.
    pub sigma0: f64,
    /// Standard error when the axis is the slab scale.
    pub se: f64,
    pub xbar: XbarRule,
    pub kappa: f64,
    pub eps_rows: Vec<f64>,
    pub axis: Axis,
    pub axis_values: Vec<f64>,
}

const SIGMA0_GRID: [f64; 8] = [1.0, 2.0, 4.0, 10.0, 25.0, 100.0, 1000.0, f64::INFINITY];
const N_GRID: [f64; 9] = [1.0, 4.0, 10.0, 20.0, 50.0, 200.0, 1000.0, 5000.0, f64::INFINITY];

/// Parameters of tables 1 to 5.
pub fn table_spec(id: u8) -> Result<TableSpec> {
    let bartlett = |xbar: f64| TableSpec {
        id,
        lam: 0.4,
        theta0: 0.0,
        sigma0: f64::NAN,
        se: 1.0,
        xbar: XbarRule::Fixed(xbar),
        kappa: DEFAULT_KAPPA,
        eps_rows: vec![0.0, 0.1, 0.2],
        axis: Axis::SlabScale,
        axis_values: SIGMA0_GRID.to_vec(),
    };
    let lindley = |theta0: f64, sigma0: f64| TableSpec {
        id,
        lam: 0.4,
        theta0,
        sigma0,
        se: f64::NAN,
        xbar: XbarRule::Lindley { alpha: 0.01, sigma: 4.0 },
        kappa: DEFAULT_KAPPA,
        eps_rows: vec![0.0, 0.05, 0.1],
        axis: Axis::SampleSize,
        axis_values: N_GRID.to_vec(),
    };
    match id {
        1 => Ok(bartlett(std_normal_quantile(0.995)?)),
        // x̄ at which g(x̄; 0) equals the expected height 1/(2√π) of a flat fiducial draw
        2 => Ok(bartlett(std::f64::consts::LN_2.sqrt())),
        3 => Ok(bartlett(0.0)),
        4 => Ok(lindley(0.0, 4.0)),
        5 => Ok(lindley(1.5, 1.0)),
        _ => Err(invalid(format!("table id must be 1 to 5, got {id}"))),
    }
}

/// One table entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub method: Method,
    pub epsilon: f64,
    pub axis_value: f64,
    pub p_in: f64,
    pub quadrature_error: f64,
}

impl CellResult {
    /// p_in rounded to the four decimals of the published tables.
    pub fn rounded(&self) -> f64 {
        (self.p_in * 1e4).round() / 1e4
    }
}

impl TableSpec {
    /// Data of the column at `axis_value` (finite).
    pub fn scenario(&self, axis_value: f64) -> Result<Scenario> {
        match (self.axis, self.xbar) {
            (Axis::SlabScale, XbarRule::Fixed(x)) => Scenario::from_se(self.se, x),
            (Axis::SampleSize, XbarRule::Lindley { alpha, sigma }) => Scenario::lindley(alpha, sigma, axis_value),
            _ => Err(invalid("table axis and x̄ rule do not match")),
        }
    }

    /// (σ0, n) of a column; either may be infinite.
    pub fn column(&self, axis_value: f64) -> (f64, f64) {
        match self.axis {
            Axis::SlabScale => (axis_value, 1.0),
            Axis::SampleSize => (self.sigma0, axis_value),
        }
    }

    fn pure_cell(&self, eps: f64, axis_value: f64) -> Result<CellResult> {
        let (sigma0, n) = self.column(axis_value);
        let (p_in, quadrature_error) = if sigma0.is_infinite() || n.is_infinite() {
            // both limits drive the posterior to the null
            (1.0, 0.0)
        } else {
            let hyp = IntervalHypothesis::symmetric(eps, self.lam)?;
            let prior = SpikeSlabPrior::new(hyp, self.theta0, sigma0)?;
            let pd = prob_in_interval(&prior, &self.scenario(axis_value)?)?;
            (pd.p_in, pd.diagnostics.quad_error)
        };
        Ok(CellResult { method: Method::PureBayes, epsilon: eps, axis_value, p_in, quadrature_error })
    }

    fn fb_cell(&self, eps: f64, axis_value: f64) -> Result<CellResult> {
        let (sigma0, n) = self.column(axis_value);
        let hyp = IntervalHypothesis::symmetric(eps, self.lam)?;
        let (p_in, quadrature_error) = if n.is_infinite() {
            let alpha = match self.xbar {
                XbarRule::Lindley { alpha, .. } => alpha,
                XbarRule::Fixed(_) => return Err(invalid("sample-size limit needs the Lindley x̄ rule")),
            };
            (fb_limit(&hyp, Limit::SampleSize { alpha })?, 0.0)
        } else if sigma0.is_infinite() {
            (fb_limit(&hyp, Limit::SlabScale(self.scenario(axis_value)?))?, 0.0)
        } else {
            let cfg = FidBayesConfig::new(hyp, GpdSpec::normal(self.theta0, sigma0)?);
            let pd = fb_prob_in(&self.scenario(axis_value)?, &cfg)?;
            (pd.p_in, pd.diagnostics.quad_error)
        };
        Ok(CellResult { method: Method::FiducialBayes, epsilon: eps, axis_value, p_in, quadrature_error })
    }

    fn row(&self, method: Method, eps: f64) -> Result<Vec<CellResult>> {
        self.axis_values
            .iter()
            .map(|v| match method {
                Method::PureBayes => self.pure_cell(eps, *v),
                _ => self.fb_cell(eps, *v),
            })
            .collect()
    }
}

/// Every cell of a table: pure Bayesian rows, fiducial-Bayes rows, then the
/// point-null mixture row. Rows are computed on separate threads; the
/// output order does not depend on scheduling.
pub fn run_table(id: u8) -> Result<Vec<CellResult>> {
    let spec = table_spec(id)?;
    let jobs: Vec<(Method, f64)> = [Method::PureBayes, Method::FiducialBayes]
        .iter()
        .flat_map(|m| spec.eps_rows.iter().map(move |e| (*m, *e)))
        .collect();
    let rows: Vec<Result<Vec<CellResult>>> = thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(m, e)| {
                let spec = &spec;
                scope.spawn(move || spec.row(*m, *e))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table row worker panicked")).collect()
    });
    let mut cells = Vec::new();
    for row in rows {
        cells.extend(row?);
    }
    let point =
        |m: Method| cells.iter().filter(move |c| c.method == m && c.epsilon == 0.0).cloned().collect::<Vec<_>>();
    let mixture: Vec<CellResult> = point(Method::PureBayes)
        .iter()
        .zip(point(Method::FiducialBayes))
        .map(|(b, f)| CellResult {
            method: Method::Mixture,
            epsilon: 0.0,
            axis_value: b.axis_value,
            p_in: spec.kappa * b.p_in + (1.0 - spec.kappa) * f.p_in,
            quadrature_error: b.quadrature_error + f.quadrature_error,
        })
        .collect();
    cells.extend(mixture);
    Ok(cells)
}

pub const CSV_HEADER: &str = "method,epsilon,axis_value,p_in,p_in_full,quadrature_error";

/// CSV with LF line endings; the limit column reads `inf`.
pub fn table_csv(cells: &[CellResult]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{:.4},{},{:e}",
            c.method, c.epsilon, c.axis_value, c.p_in, c.p_in, c.quadrature_error
        );
    }
    out
}
