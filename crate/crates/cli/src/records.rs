//! Serialized forms of the solver results.
//!
//! Floats are written in the shortest form that parses back to the same
//! `f64`, so every record round-trips bit for bit.

use serde::{Deserialize, Serialize};
use unijac_core::asymptotics::{c_star, limit_constant, ConvergenceStudy, StarMapData, StudyRow};
use unijac_core::ball::{BallExtremal, MonomialIndex, RegionViolation, TriangleReport};
use unijac_core::comb::{CombDomainSpec, CombMapData, MapOrigin, Polyline};
use unijac_core::{AsymptoticProfile, Error, OracleResult, UniformJacobiSolution, WeightParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiRecord {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
    pub deviation: f64,
    pub log_leading: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl From<&UniformJacobiSolution> for JacobiRecord {
    fn from(s: &UniformJacobiSolution) -> Self {
        Self {
            alpha: s.weight.alpha(),
            beta: s.weight.beta(),
            n: s.degree,
            xi: s.roots.clone(),
            eta: s.alternation_points.clone(),
            deviation: s.deviation,
            log_leading: s.log_leading,
            residual: s.residual,
            iterations: s.iterations,
        }
    }
}

impl TryFrom<JacobiRecord> for UniformJacobiSolution {
    type Error = Error;

    fn try_from(r: JacobiRecord) -> Result<Self, Error> {
        Ok(UniformJacobiSolution {
            weight: WeightParams::new(r.alpha, r.beta)?,
            degree: r.n,
            roots: r.xi,
            alternation_points: r.eta,
            deviation: r.deviation,
            log_leading: r.log_leading,
            residual: r.residual,
            iterations: r.iterations,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginRecord {
    Remez,
    Newton,
    NewtonSeededFromRemez,
}

impl From<MapOrigin> for OriginRecord {
    fn from(o: MapOrigin) -> Self {
        match o {
            MapOrigin::Remez => Self::Remez,
            MapOrigin::Newton => Self::Newton,
            MapOrigin::NewtonSeededFromRemez => Self::NewtonSeededFromRemez,
        }
    }
}

impl From<OriginRecord> for MapOrigin {
    fn from(o: OriginRecord) -> Self {
        match o {
            OriginRecord::Remez => Self::Remez,
            OriginRecord::Newton => Self::Newton,
            OriginRecord::NewtonSeededFromRemez => Self::NewtonSeededFromRemez,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapRecord {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
    pub log_capacity: f64,
    pub branch_shift: f64,
    pub residual: f64,
    pub iterations: usize,
    pub origin: OriginRecord,
    /// Largest difference in `ξ`, `η`, `C_n` against the Remez solution,
    /// when a comparison was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remez_discrepancy: Option<f64>,
}

impl From<&CombMapData> for MapRecord {
    fn from(m: &CombMapData) -> Self {
        Self {
            alpha: m.spec.weight.alpha(),
            beta: m.spec.weight.beta(),
            n: m.spec.n,
            xi: m.prevertices_xi.clone(),
            eta: m.prevertices_eta.clone(),
            log_capacity: m.log_capacity,
            branch_shift: m.branch_shift,
            residual: m.residual,
            iterations: m.iterations,
            origin: m.origin.into(),
            remez_discrepancy: None,
        }
    }
}

impl TryFrom<MapRecord> for CombMapData {
    type Error = Error;

    fn try_from(r: MapRecord) -> Result<Self, Error> {
        Ok(CombMapData {
            spec: CombDomainSpec::new(WeightParams::new(r.alpha, r.beta)?, r.n),
            prevertices_xi: r.xi,
            prevertices_eta: r.eta,
            log_capacity: r.log_capacity,
            branch_shift: r.branch_shift,
            residual: r.residual,
            iterations: r.iterations,
            origin: r.origin.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolylineRecord {
    pub label: String,
    pub points: Vec<[f64; 2]>,
}

impl From<&Polyline> for PolylineRecord {
    fn from(p: &Polyline) -> Self {
        Self {
            label: p.label.clone(),
            points: p.points.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub region: String,
    pub point: [f64; 2],
    pub value: f64,
    pub detail: String,
}

impl From<&RegionViolation> for WitnessRecord {
    fn from(v: &RegionViolation) -> Self {
        Self {
            region: v.region.to_string(),
            point: v.point,
            value: v.value,
            detail: v.detail.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionsRecord {
    pub bound: bool,
    pub diagonal: bool,
    pub normalization: bool,
    pub corner_box: bool,
    pub first_tail: bool,
    pub second_tail: bool,
    pub alternation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub grid: usize,
    pub max_abs: f64,
    pub argmax: [f64; 2],
    pub line_residual: f64,
    pub regions_ok: bool,
    pub regions: RegionsRecord,
    /// The first failed check, `null` when all pass.
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<WitnessRecord>,
}

impl From<&TriangleReport> for TriangleRecord {
    fn from(r: &TriangleReport) -> Self {
        let f = r.regions;
        Self {
            grid: r.grid,
            max_abs: r.max_abs,
            argmax: r.argmax,
            line_residual: r.line_residual,
            regions_ok: r.regions_ok(),
            regions: RegionsRecord {
                bound: f.bound,
                diagonal: f.diagonal,
                normalization: f.normalization,
                corner_box: f.corner_box,
                first_tail: f.first_tail,
                second_tail: f.second_tail,
                alternation: f.alternation,
            },
            witness: r.violations.first().map(WitnessRecord::from),
            violations: r.violations.iter().map(WitnessRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallRecord {
    pub k1: u32,
    pub l1: u32,
    pub k2: u32,
    pub l2: u32,
    #[serde(flatten)]
    pub jacobi: JacobiRecord,
    pub lambda: f64,
    pub split: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<TriangleRecord>,
}

impl BallRecord {
    pub fn new(b: &BallExtremal, report: Option<&TriangleReport>) -> Self {
        let idx = b.requested;
        Self {
            k1: idx.k1,
            l1: idx.l1,
            k2: idx.k2,
            l2: idx.l2,
            jacobi: JacobiRecord::from(&b.jacobi),
            lambda: b.lambda,
            split: b.split,
            report: report.map(TriangleRecord::from),
        }
    }

    pub fn index(&self) -> MonomialIndex {
        MonomialIndex::new(self.k1, self.l1, self.k2, self.l2)
    }
}

impl TryFrom<BallRecord> for BallExtremal {
    type Error = Error;

    fn try_from(r: BallRecord) -> Result<Self, Error> {
        let index = r.index();
        Ok(BallExtremal::from_solution(index, r.jacobi.try_into()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<[u32; 4]>,
    pub deviation_lower: f64,
    pub deviation_upper: f64,
    pub coefficients: Vec<f64>,
    pub grid_size: usize,
}

impl OracleRecord {
    pub fn line(weight: WeightParams, n: usize, r: &OracleResult) -> Self {
        Self {
            mode: "line".into(),
            alpha: Some(weight.alpha()),
            beta: Some(weight.beta()),
            n: Some(n),
            index: None,
            deviation_lower: r.deviation_lower,
            deviation_upper: r.deviation_upper,
            coefficients: r.coefficients.clone(),
            grid_size: r.grid_size,
        }
    }

    pub fn triangle(idx: MonomialIndex, r: &OracleResult) -> Self {
        Self {
            mode: "triangle".into(),
            alpha: None,
            beta: None,
            n: None,
            index: Some([idx.k1, idx.l1, idx.k2, idx.l2]),
            deviation_lower: r.deviation_lower,
            deviation_upper: r.deviation_upper,
            coefficients: r.coefficients.clone(),
            grid_size: r.grid_size,
        }
    }
}

impl From<OracleRecord> for OracleResult {
    fn from(r: OracleRecord) -> Self {
        OracleResult {
            deviation_lower: r.deviation_lower,
            deviation_upper: r.deviation_upper,
            coefficients: r.coefficients,
            grid_size: r.grid_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub kappa1: f64,
    pub lambda1: f64,
    pub kappa2: f64,
    pub lambda2: f64,
    pub alpha: f64,
    pub beta: f64,
    /// The four-factor product.
    pub limit: f64,
    /// `exp(-C_*(α, β))`.
    pub capacity_form: f64,
    pub c_star: f64,
}

impl LimitRecord {
    pub fn new(p: &AsymptoticProfile) -> Result<Self, Error> {
        let lim = limit_constant(p)?;
        let (alpha, beta) = p.alpha_beta();
        Ok(Self {
            kappa1: p.kappa1,
            lambda1: p.lambda1,
            kappa2: p.kappa2,
            lambda2: p.lambda2,
            alpha,
            beta,
            limit: lim.product_form,
            capacity_form: lim.capacity_form,
            c_star: c_star(alpha, beta)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarRecord {
    pub alpha: f64,
    pub beta: f64,
    pub x1: f64,
    pub x2: f64,
    pub c_star: f64,
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<[f64; 2]>,
}

impl From<&StarMapData> for StarRecord {
    fn from(s: &StarMapData) -> Self {
        Self {
            alpha: s.alpha,
            beta: s.beta,
            x1: s.x1,
            x2: s.x2,
            c_star: s.c_star,
            degenerate: s.is_degenerate(),
            z: None,
            w: None,
        }
    }
}

/// One line of the convergence-study table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyCsvRow {
    pub n: usize,
    pub k1: u32,
    pub l1: u32,
    pub k2: u32,
    pub l2: u32,
    #[serde(rename = "L")]
    pub deviation: f64,
    #[serde(rename = "L_pow")]
    pub deviation_pow: f64,
    pub limit: f64,
    pub gap: f64,
}

impl From<&StudyRow> for StudyCsvRow {
    fn from(r: &StudyRow) -> Self {
        Self {
            n: r.n,
            k1: r.index.k1,
            l1: r.index.l1,
            k2: r.index.k2,
            l2: r.index.l2,
            deviation: r.deviation,
            deviation_pow: r.deviation_pow,
            limit: r.limit,
            gap: r.gap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRecord {
    pub rows: Vec<StudyCsvRow>,
    pub skipped: Vec<SkippedRecord>,
    pub gaps_decreasing: bool,
}

impl From<&ConvergenceStudy> for StudyRecord {
    fn from(s: &ConvergenceStudy) -> Self {
        Self {
            rows: s.rows.iter().map(StudyCsvRow::from).collect(),
            skipped: s
                .skipped
                .iter()
                .map(|k| SkippedRecord {
                    n: k.n,
                    reason: k.reason.to_string(),
                })
                .collect(),
            gaps_decreasing: s.gaps_decreasing(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}
