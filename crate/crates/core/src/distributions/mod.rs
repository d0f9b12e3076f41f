//! Distributions spanned by polynomial vector fields: exact Lie brackets,
//! the weak derived flag at a rational point, and the Tanaka symbol there.
//!
//! Constancy of the symbol is approximated by comparing the flag dimensions
//! at user-supplied sample points; isomorphism of the resulting graded Lie
//! algebras is not tested.

mod poly;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::Poly;

use crate::exactla::{complement_in, is_zero_vec, one, solve_affine, zero_vec, Mat, Rat, Subspace};
use crate::symbols::{NilpotentSymbol, SymbolError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistError {
    #[error("cannot parse {input:?} at byte {at}: {msg}")]
    Parse { input: String, at: usize, msg: String },
    #[error("unknown component {0:?}, expected dx1..dxn")]
    UnknownComponent(String),
    #[error("coordinate counts differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("distribution has no fields")]
    Empty,
    #[error("the spanning fields are dependent at {0:?}")]
    DependentAtPoint(Vec<String>),
    #[error("flag dimensions {got:?} at {point:?} differ from {expected:?}")]
    NonConstantRank { point: Vec<String>, expected: Vec<usize>, got: Vec<usize> },
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// A polynomial vector field `Σ f_k ∂_k` on `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self, DistError> {
        let n = components.len();
        if let Some(p) = components.iter().find(|p| p.n_vars() != n) {
            return Err(DistError::DimensionMismatch(n, p.n_vars()));
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField { components: vec![Poly::zero(n); n] }
    }

    /// The coordinate field `∂_{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.components[i] = Poly::constant(n, one());
        f
    }

    /// Parses components given as `(k, polynomial)` pairs, `k` 0-based.
    pub fn parse<'a, I>(n: usize, components: I) -> Result<Self, DistError>
    where
        I: IntoIterator<Item = (usize, &'a str)>,
    {
        let mut f = Self::zero(n);
        for (k, src) in components {
            if k >= n {
                return Err(DistError::UnknownComponent(format!("dx{}", k + 1)));
            }
            f.components[k] = f.components[k].add(&Poly::parse(src, n)?);
        }
        Ok(f)
    }

    pub fn n_coords(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyVectorField { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PolyVectorField { components: self.components.iter().map(|a| a.scale(c)).collect() }
    }

    /// Directional derivative `X(f)`.
    fn apply(&self, f: &Poly) -> Poly {
        self.components
            .iter()
            .enumerate()
            .fold(Poly::zero(f.n_vars()), |acc, (j, xj)| acc.add(&xj.mul(&f.deriv(j))))
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Rat> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }
}

/// `[X, Y]_k = Σ_j (X_j ∂_j Y_k - Y_j ∂_j X_k)`.
pub fn bracket(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField, DistError> {
    if x.n_coords() != y.n_coords() {
        return Err(DistError::DimensionMismatch(x.n_coords(), y.n_coords()));
    }
    let components = x.components.iter().zip(&y.components).map(|(xk, yk)| x.apply(yk).sub(&y.apply(xk))).collect();
    Ok(PolyVectorField { components })
}

/// A distribution given by spanning polynomial fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionSpec {
    n: usize,
    fields: Vec<PolyVectorField>,
}

/// One level of the weak derived flag with the fields that realize it.
#[derive(Debug, Clone)]
struct Level {
    space: Subspace,
    /// Generators added at this level, independent modulo the previous one.
    generators: Vec<PolyVectorField>,
}

fn point_labels(point: &[Rat]) -> Vec<String> {
    point.iter().map(ToString::to_string).collect()
}

impl DistributionSpec {
    pub fn new(n: usize, fields: Vec<PolyVectorField>) -> Result<Self, DistError> {
        if fields.is_empty() {
            return Err(DistError::Empty);
        }
        if let Some(f) = fields.iter().find(|f| f.n_coords() != n) {
            return Err(DistError::DimensionMismatch(n, f.n_coords()));
        }
        Ok(DistributionSpec { n, fields })
    }

    pub fn n_coords(&self) -> usize {
        self.n
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    fn check_point(&self, point: &[Rat]) -> Result<(), DistError> {
        if point.len() != self.n {
            return Err(DistError::DimensionMismatch(self.n, point.len()));
        }
        let values: Vec<Vec<Rat>> = self.fields.iter().map(|f| f.eval(point)).collect();
        if Mat::from_rows(self.n, values).rank() < self.fields.len() {
            return Err(DistError::DependentAtPoint(point_labels(point)));
        }
        Ok(())
    }

    /// Flag levels with generating fields. Under constant rank near the
    /// point, fields independent at the point form a local frame, so
    /// bracketing the frame of each level with the original fields spans the
    /// next level.
    fn levels(&self, point: &[Rat], depth_cap: usize) -> Result<Vec<Level>, DistError> {
        self.check_point(point)?;
        let n = self.n;
        let mut space = Subspace::span(n, self.fields.iter().map(|f| f.eval(point)));
        let mut levels = vec![Level { space: space.clone(), generators: self.fields.clone() }];
        while levels.len() < depth_cap.max(1) && space.dim() < n {
            let mut generators = Vec::new();
            for x in &self.fields {
                for y in &levels.last().expect("nonempty").generators {
                    let z = bracket(x, y)?;
                    let v = z.eval(point);
                    if !space.contains(&v) {
                        space = space.sum(&Subspace::span(n, [v]));
                        generators.push(z);
                    }
                }
            }
            if generators.is_empty() {
                break;
            }
            levels.push(Level { space: space.clone(), generators });
        }
        Ok(levels)
    }

    /// `D^{-1}(p) ⊆ D^{-2}(p) ⊆ ...`, stopping when the flag stabilizes,
    /// fills the tangent space, or reaches `depth_cap` levels.
    pub fn weak_derived_flag(&self, point: &[Rat], depth_cap: usize) -> Result<Vec<Subspace>, DistError> {
        Ok(self.levels(point, depth_cap)?.into_iter().map(|l| l.space).collect())
    }

    /// Dimensions of the weak derived flag.
    pub fn flag_dims(&self, point: &[Rat]) -> Result<Vec<usize>, DistError> {
        Ok(self.weak_derived_flag(point, self.n)?.iter().map(Subspace::dim).collect())
    }

    /// The Tanaka symbol at `point`. The flag dimensions are first compared
    /// at every sample point; `g^{-j}` gets the pivot-rule complement of
    /// `D^{-j+1}(p)` in `D^{-j}(p)` as basis.
    pub fn symbol_at(&self, point: &[Rat], samples: &[Vec<Rat>]) -> Result<NilpotentSymbol, DistError> {
        let levels = self.levels(point, self.n)?;
        let expected: Vec<usize> = levels.iter().map(|l| l.space.dim()).collect();
        for s in samples {
            let got = self.flag_dims(s)?;
            if got != expected {
                return Err(DistError::NonConstantRank { point: point_labels(s), expected, got });
            }
        }
        let n = self.n;
        // Adapted basis vectors per degree.
        let mut graded: Vec<Vec<Vec<Rat>>> = Vec::new();
        let mut prev = Subspace::zero(n);
        for l in &levels {
            let c = complement_in(&prev, &l.space).expect("flag is increasing");
            graded.push(c.basis_vecs());
            prev = l.space.clone();
        }
        // Each adapted vector is lifted to a constant combination of the
        // generators of its level and below.
        let mut all_gens: Vec<PolyVectorField> = Vec::new();
        let mut lifts: Vec<PolyVectorField> = Vec::new();
        for (j, l) in levels.iter().enumerate() {
            all_gens.extend(l.generators.iter().cloned());
            let values = Mat::from_cols(n, all_gens.iter().map(|g| g.eval(point)).collect());
            for v in &graded[j] {
                let coeffs = solve_affine(&values, v).0.expect("adapted vector lies in the level");
                let lift = coeffs.iter().zip(&all_gens).fold(PolyVectorField::zero(n), |acc, (c, g)| acc.add(&g.scale(c)));
                lifts.push(lift);
            }
        }
        let dims: Vec<usize> = graded.iter().map(Vec::len).collect();
        let total: usize = dims.iter().sum();
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        }).collect();
        let degree_of = |idx: usize| offsets.iter().rposition(|&o| o <= idx).expect("index in range") + 1;
        let mut entries = Vec::new();
        for p in 0..total {
            for q in p + 1..total {
                let target = degree_of(p) + degree_of(q);
                if target > dims.len() {
                    continue;
                }
                let v = bracket(&lifts[p], &lifts[q])?.eval(point);
                // Coordinates in the adapted basis of D^{-target}(p).
                let basis: Vec<Vec<Rat>> = graded[..target].iter().flatten().cloned().collect();
                let coords = solve_affine(&Mat::from_cols(n, basis), &v).0.expect("bracket lies in the next level");
                let mut out = zero_vec(total);
                let o = offsets[target - 1];
                out[o..o + dims[target - 1]].clone_from_slice(&coords[o..o + dims[target - 1]]);
                if !is_zero_vec(&out) {
                    entries.push(((p, q), out));
                }
            }
        }
        Ok(NilpotentSymbol::new_validated(dims, None, entries)?)
    }
}

/// JSON form: `{"n": 3, "fields": [{"dx1": "1"}, {"dx2": "1", "dx3": "x1"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionJson {
    pub n: usize,
    pub fields: Vec<BTreeMap<String, String>>,
}

impl DistributionJson {
    pub fn to_spec(&self) -> Result<DistributionSpec, DistError> {
        let mut fields = Vec::new();
        for f in &self.fields {
            let mut comps = Vec::new();
            for (key, src) in f {
                let k: usize = key
                    .strip_prefix("dx")
                    .and_then(|s| s.parse().ok())
                    .filter(|&k| (1..=self.n).contains(&k))
                    .ok_or_else(|| DistError::UnknownComponent(key.clone()))?;
                comps.push((k - 1, src.as_str()));
            }
            fields.push(PolyVectorField::parse(self.n, comps)?);
        }
        DistributionSpec::new(self.n, fields)
    }

    pub fn from_spec(d: &DistributionSpec) -> Self {
        let fields = d
            .fields
            .iter()
            .map(|f| {
                f.components
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(k, p)| (format!("dx{}", k + 1), p.to_string()))
                    .collect()
            })
            .collect();
        DistributionJson { n: d.n, fields }
    }
}

/// Contact distribution on `Q^3`: `∂1`, `∂2 + x1 ∂3`.
pub fn contact_model() -> DistributionSpec {
    let json = DistributionJson {
        n: 3,
        fields: vec![
            BTreeMap::from([("dx1".into(), "1".into())]),
            BTreeMap::from([("dx2".into(), "1".into()), ("dx3".into(), "x1".into())]),
        ],
    };
    json.to_spec().expect("well formed")
}

/// Rank two distribution on `Q^5` with growth `(2, 3, 5)`:
/// `∂1` and `∂2 + x1 ∂3 + x1^2/2 ∂4 + x1 x2 ∂5`.
pub fn rank_two_model() -> DistributionSpec {
    let json = DistributionJson {
        n: 5,
        fields: vec![
            BTreeMap::from([("dx1".into(), "1".into())]),
            BTreeMap::from([
                ("dx2".into(), "1".into()),
                ("dx3".into(), "x1".into()),
                ("dx4".into(), "x1^2/2".into()),
                ("dx5".into(), "x1*x2".into()),
            ]),
        ],
    };
    json.to_spec().expect("well formed")
}
