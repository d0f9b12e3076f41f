use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{NilpotentSymbol, SymbolError};
use crate::exactla::{int, zero_vec, Rat};

/// A rational in JSON: either an integer or a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    pub fn to_rat(&self) -> Result<Rat, SymbolError> {
        match self {
            RatJson::Int(n) => Ok(int(*n)),
            RatJson::Str(s) => s.trim().parse::<Rat>().map_err(|_| SymbolError::BadRational(s.clone())),
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        if r.is_integer() {
            if let Ok(n) = r.to_integer().to_string().parse::<i64>() {
                return RatJson::Int(n);
            }
        }
        RatJson::Str(r.to_string())
    }
}

/// One structure constant entry: `[x, y] = Σ coeff · e_target`, where basis
/// vectors are addressed as `[degree, index within degree]` (0-based index).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub x: (i32, usize),
    pub y: (i32, usize),
    pub value: Vec<((i32, usize), RatJson)>,
}

/// Serialized form of a custom symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolJson {
    /// Degree (as a string key, `"-1"`, `"-2"`, ...) to dimension.
    pub dims: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

impl SymbolJson {
    /// Parses and validates; invalid algebras are rejected here.
    pub fn to_symbol(&self) -> Result<NilpotentSymbol, SymbolError> {
        let mut by_deg = BTreeMap::new();
        for (k, &d) in &self.dims {
            let deg: i32 = k.trim().parse().map_err(|_| SymbolError::InvalidDims(format!("bad degree key {k:?}")))?;
            if deg >= 0 {
                return Err(SymbolError::InvalidDims(format!("degree {deg} is not negative")));
            }
            by_deg.insert(-deg, d);
        }
        let mu = by_deg.keys().next_back().copied().unwrap_or(0);
        let dims: Vec<usize> = (1..=mu).map(|k| by_deg.get(&k).copied().unwrap_or(0)).collect();
        if dims.is_empty() || dims.contains(&0) {
            return Err(SymbolError::InvalidDims(format!("{dims:?}")));
        }
        let n: usize = dims.iter().sum();
        let index = |(deg, a): (i32, usize)| -> Result<usize, SymbolError> {
            if deg >= 0 || (-deg) as usize > dims.len() || a >= dims[(-deg - 1) as usize] {
                return Err(SymbolError::BadIndex { degree: deg, index: a });
            }
            Ok(dims[..(-deg - 1) as usize].iter().sum::<usize>() + a)
        };
        let mut entries = Vec::new();
        for e in &self.brackets {
            let mut v = zero_vec(n);
            for (t, c) in &e.value {
                v[index(*t)?] += c.to_rat()?;
            }
            entries.push(((index(e.x)?, index(e.y)?), v));
        }
        NilpotentSymbol::new_validated(dims, self.labels.clone(), entries)
    }

    /// Serializes a symbol, listing each nonzero bracket once with `x < y`.
    pub fn from_symbol(s: &NilpotentSymbol) -> Self {
        let addr = |i: usize| {
            let d = s.degree_of(i);
            (d, i - s.offset(d))
        };
        let dims = (1..=s.depth()).map(|k| (format!("-{k}"), s.dim(-(k as i32)))).collect();
        let brackets = s
            .nonzero_brackets()
            .into_iter()
            .map(|(p, q, v)| BracketEntry {
                x: addr(p),
                y: addr(q),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(r, c)| (addr(r), RatJson::from_rat(c)))
                    .collect(),
            })
            .collect();
        SymbolJson { dims, labels: Some(s.labels().to_vec()), brackets }
    }
}
