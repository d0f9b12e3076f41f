//! Job descriptors and their resolution into library objects.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::distributions::DistributionJson;
use crate::exactla::{Mat, Rat};
use crate::flags::{direct_sum, make_delta_rp, make_tau_m, AmbientKind, EndoDatum};
use crate::symbols::{
    build_commutative, build_free_nilpotent, build_heisenberg, build_heisenberg_with_form, NilpotentSymbol, RatJson,
    SymbolJson,
};

/// Matrix as a list of rows.
pub type MatJson = Vec<Vec<RatJson>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Check,
    Derivations,
    Prolong,
    FlagProlong,
    FlagProlongParam,
    Spencer,
    Symbol,
    Growth,
}

/// A declarative job. Which fields are required depends on `command`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<G0Desc>,
    /// Flag symbol for `flag-prolong` and `flag-prolong-param`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<FlagDesc>,
    /// Ambient algebra for flag symbols; defaults to `gl` without a
    /// symplectic form and `csp` with one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientKind>,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    /// Degree `k` of the Spencer operator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// Base point for distribution algebras; the origin by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<RatJson>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample_points: Vec<Vec<RatJson>>,
    #[serde(default)]
    pub require_finite: bool,
}

fn default_max_degree() -> usize {
    20
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraDesc {
    Commutative(usize),
    Heisenberg(usize),
    /// Heisenberg algebra of a given symplectic form.
    HeisenbergForm(MatJson),
    /// `[generators, depth]`.
    Free([usize; 2]),
    Custom(SymbolJson),
    /// Tanaka symbol of a distribution at the job's point.
    Distribution(DistributionJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum G0Desc {
    Full,
    /// Conformal symplectic algebra of the form read off a Heisenberg-type
    /// algebra.
    Csp,
    Sp,
    CspForm(MatJson),
    SpForm(MatJson),
    FlagProlongation(FlagDesc),
    /// Matrices on `g^{-1}` (rows) spanning a subalgebra.
    Custom(Vec<MatJson>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagDesc {
    /// `[r, p]`.
    DeltaRp([i32; 2]),
    TauM(TauDesc),
    Sum(Vec<FlagDesc>),
    Custom(CustomEndo),
}

/// `m`, or `[m, sign]` with `sign = ±1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauDesc {
    Plain(usize),
    Signed([i64; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomEndo {
    pub weights: Vec<i32>,
    /// Rows of the matrix of `δ` (columns are images).
    pub delta: MatJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<MatJson>,
}

pub(crate) fn schema(msg: impl std::fmt::Display) -> CliError {
    CliError::Schema(msg.to_string())
}

pub(crate) fn math(msg: impl std::fmt::Display) -> CliError {
    CliError::Math(msg.to_string())
}

pub(crate) fn rat_of(r: &RatJson) -> Result<Rat, CliError> {
    r.to_rat().map_err(schema)
}

pub(crate) fn mat_of(m: &MatJson) -> Result<Mat, CliError> {
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(schema("ragged matrix"));
    }
    let rows = m.iter().map(|r| r.iter().map(rat_of).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
    Ok(Mat::from_rows(cols, rows))
}

pub(crate) fn point_of(p: &[RatJson]) -> Result<Vec<Rat>, CliError> {
    p.iter().map(rat_of).collect()
}

impl JobSpec {
    pub(crate) fn algebra(&self) -> Result<&AlgebraDesc, CliError> {
        self.algebra.as_ref().ok_or_else(|| schema("this command needs an \"algebra\""))
    }

    pub(crate) fn base_point(&self, n: usize) -> Result<Vec<Rat>, CliError> {
        match &self.point {
            Some(p) if p.len() == n => point_of(p),
            Some(p) => Err(schema(format!("point has {} coordinates, expected {n}", p.len()))),
            None => Ok(vec![Rat::from_integer(0.into()); n]),
        }
    }

    pub(crate) fn samples(&self) -> Result<Vec<Vec<Rat>>, CliError> {
        self.sample_points.iter().map(|p| point_of(p)).collect()
    }

    /// The nilpotent algebra named by `algebra`.
    pub(crate) fn resolve_algebra(&self) -> Result<NilpotentSymbol, CliError> {
        Ok(match self.algebra()? {
            AlgebraDesc::Commutative(n) if *n >= 1 => build_commutative(*n),
            AlgebraDesc::Commutative(_) => return Err(schema("commutative algebra needs n >= 1")),
            AlgebraDesc::Heisenberg(n) => build_heisenberg(*n).map_err(schema)?,
            AlgebraDesc::HeisenbergForm(w) => build_heisenberg_with_form(&mat_of(w)?).map_err(math)?,
            AlgebraDesc::Free([l, mu]) if *l >= 2 && *mu >= 1 => build_free_nilpotent(*l, *mu),
            AlgebraDesc::Free(_) => return Err(schema("free algebra needs at least 2 generators and depth >= 1")),
            AlgebraDesc::Custom(s) => s.to_symbol().map_err(math)?,
            AlgebraDesc::Distribution(d) => {
                let spec = d.to_spec().map_err(schema)?;
                let p = self.base_point(spec.n_coords())?;
                spec.symbol_at(&p, &self.samples()?).map_err(math)?
            }
        })
    }
}

impl FlagDesc {
    pub fn resolve(&self) -> Result<EndoDatum, CliError> {
        match self {
            FlagDesc::DeltaRp([r, p]) => make_delta_rp(*r, *p).map_err(schema),
            FlagDesc::TauM(TauDesc::Plain(m)) => make_tau_m(*m, 1).map_err(schema),
            FlagDesc::TauM(TauDesc::Signed([m, s])) if *m >= 1 && (*s == 1 || *s == -1) => {
                make_tau_m(*m as usize, *s as i32).map_err(schema)
            }
            FlagDesc::TauM(_) => Err(schema("tau_m expects m >= 1 and sign 1 or -1")),
            FlagDesc::Sum(parts) => {
                let parts = parts.iter().map(FlagDesc::resolve).collect::<Result<Vec<_>, _>>()?;
                direct_sum(&parts).map_err(schema)
            }
            FlagDesc::Custom(c) => {
                let datum = EndoDatum {
                    weights: c.weights.clone(),
                    delta: mat_of(&c.delta)?,
                    omega: c.omega.as_ref().map(mat_of).transpose()?,
                };
                let n = datum.dim();
                if datum.delta.rows() != n || datum.delta.cols() != n {
                    return Err(schema("delta must be square of the size of weights"));
                }
                if datum.omega.as_ref().is_some_and(|w| w.rows() != n || w.cols() != n) {
                    return Err(schema("omega must be square of the size of weights"));
                }
                if !datum.is_degree_minus_one() {
                    return Err(math("delta does not lower weights by one"));
                }
                Ok(datum)
            }
        }
    }
}

pub(crate) fn default_ambient(datum: &EndoDatum, requested: Option<AmbientKind>) -> AmbientKind {
    requested.unwrap_or(if datum.omega.is_some() { AmbientKind::Csp } else { AmbientKind::Gl })
}
