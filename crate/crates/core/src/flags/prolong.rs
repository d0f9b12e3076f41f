use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{EndoDatum, FlagError};
use crate::exactla::{kernel, one, Mat, Rat, Subspace};
use crate::graded::{gr_endomorphisms, FiltrationSpec, GradedSpace};
use crate::prolong::{derivations0, restrict_to, G0Family, Subalgebra0};
use crate::symbols::{build_commutative, build_heisenberg_with_form};

/// The matrix algebra inside which `gr g0` is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientKind {
    Gl,
    Sl,
    Sp,
    Csp,
    Custom,
}

/// Whether the flag is compatible with the grading of the ambient algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compatibility {
    Compatible,
    Incompatible,
    /// Not decided for this kind of ambient algebra.
    Undecided,
}

/// Result of testing `Λ_j^∠ = Λ_{c-j}` for all `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticCheck {
    pub symplectic: bool,
    /// The reflection index `c`.
    pub shift: i32,
    /// `c mod 2`.
    pub nu: u8,
}

/// Skew-orthogonal complement `S^∠ = {v : ω(s, v) = 0 for s ∈ S}`.
fn skew_complement(s: &Subspace, omega: &Mat) -> Subspace {
    if s.is_zero() {
        return Subspace::full(omega.rows());
    }
    kernel(&(s.basis() * omega))
}

/// Decides whether the flag is symplectic for `ω`. Only the reflection
/// `c = min + max + 1` can work, since `Λ_min` is everything and
/// `Λ_{max+1}` is zero.
pub fn symplectic_flag_check(flag: &FiltrationSpec, omega: &Mat) -> SymplecticCheck {
    let (lo, hi) = (flag.min_weight(), flag.max_weight());
    let c = lo + hi + 1;
    let symplectic = (lo..=hi + 1).all(|j| skew_complement(&flag.at(j), omega) == flag.at(c - j));
    SymplecticCheck { symplectic, shift: c, nu: c.rem_euclid(2) as u8 }
}

/// A flag symbol: a commutative space `δ` of degree `-1` elements of
/// `gr g0 ⊆ gl(gr W)`, optionally with a fixed element for the
/// parameterized variant. Matrices are row-major flattened in adapted
/// coordinates of the flag.
#[derive(Debug, Clone)]
pub struct FlagSymbol {
    flag: FiltrationSpec,
    ambient: Subalgebra0,
    kind: AmbientKind,
    omega: Option<Mat>,
    gr_ambient: GradedSpace,
    delta: Subspace,
    fixed: Option<Vec<Rat>>,
}

fn flat(m: &Mat) -> Vec<Rat> {
    m.as_slice().to_vec()
}

fn unflat(n: usize, v: &[Rat]) -> Mat {
    Mat::from_flat(n, n, v.to_vec())
}

impl FlagSymbol {
    /// Builds and validates a symbol. `delta` is given in `gl(gr W)`
    /// coordinates; when `parameterized`, it must be a single element.
    pub fn new(
        ambient: Subalgebra0,
        kind: AmbientKind,
        omega: Option<Mat>,
        flag: FiltrationSpec,
        delta: Vec<Mat>,
        parameterized: bool,
    ) -> Result<Self, FlagError> {
        let n = flag.ambient_dim();
        let mats = (0..ambient.dim()).map(|i| flat(&ambient.on_gminus1(i)));
        let gr_ambient = gr_endomorphisms(&flag, &Subspace::span(n * n, mats));
        let minus_one = gr_ambient.components.get(&-1).cloned().unwrap_or_else(|| Subspace::zero(n * n));
        if delta.iter().any(|d| !minus_one.contains(&flat(d))) {
            return Err(FlagError::DeltaNotInAmbient);
        }
        for a in &delta {
            for b in &delta {
                if !a.commutator(b).is_zero() {
                    return Err(FlagError::NotCommutative);
                }
            }
        }
        let fixed = if parameterized {
            match delta.as_slice() {
                [d] => Some(flat(d)),
                _ => return Err(FlagError::NotParameterized),
            }
        } else {
            None
        };
        let delta = Subspace::span(n * n, delta.iter().map(flat));
        Ok(FlagSymbol { flag, ambient, kind, omega, gr_ambient, delta, fixed })
    }

    /// Symbol `R·δ` (or the fixed element `δ`) of a datum, inside the
    /// requested ambient: `gl`/`sl` act on the commutative algebra `W`,
    /// `sp(ω)` likewise, and `csp(ω)` is realized as the derivations of the
    /// Heisenberg algebra built from `ω`.
    pub fn from_datum(datum: &EndoDatum, kind: AmbientKind, parameterized: bool) -> Result<Self, FlagError> {
        let n = datum.dim();
        let need_form = || datum.omega.clone().ok_or(FlagError::NoForm);
        let ambient = match kind {
            AmbientKind::Gl | AmbientKind::Custom => derivations0(&build_commutative(n)),
            AmbientKind::Sl => restrict_to(&build_commutative(n), &G0Family::Custom(sl_basis(n)))?,
            AmbientKind::Sp => restrict_to(&build_commutative(n), &G0Family::Sp(need_form()?))?,
            AmbientKind::Csp => derivations0(&build_heisenberg_with_form(&need_form()?)?),
        };
        // The flag of a datum is a coordinate flag, so adapted coordinates
        // coincide with the given ones.
        Self::new(ambient, kind, datum.omega.clone(), datum.flag(), vec![datum.delta.clone()], parameterized)
    }

    pub fn flag(&self) -> &FiltrationSpec {
        &self.flag
    }

    pub fn ambient(&self) -> &Subalgebra0 {
        &self.ambient
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    pub fn delta(&self) -> &Subspace {
        &self.delta
    }

    pub fn is_parameterized(&self) -> bool {
        self.fixed.is_some()
    }

    /// Dimensions of `gr g0` per degree.
    pub fn gr_ambient_dims(&self) -> BTreeMap<i32, usize> {
        self.gr_ambient.dims()
    }

    fn n(&self) -> usize {
        self.flag.ambient_dim()
    }

    /// Whether every graded element, transported back by `J`, lies in the
    /// ambient algebra (so `gr g0` and `g0` agree as subalgebras of `gl(W)`).
    pub fn gr_matches_ambient(&self) -> bool {
        let n = self.n();
        self.gr_ambient.components.values().all(|c| {
            c.basis_vecs().iter().all(|v| self.ambient.contains_gminus1(&self.transport(&unflat(n, v))))
        })
    }

    /// `J X J^{-1}`.
    fn transport(&self, x: &Mat) -> Mat {
        &(self.flag.adapted() * x) * self.flag.adapted_inverse()
    }

    pub fn compatibility(&self) -> Compatibility {
        match (self.kind, &self.omega) {
            (AmbientKind::Gl | AmbientKind::Sl, _) => Compatibility::Compatible,
            (AmbientKind::Sp | AmbientKind::Csp, Some(w)) => {
                if symplectic_flag_check(&self.flag, w).symplectic {
                    Compatibility::Compatible
                } else {
                    Compatibility::Incompatible
                }
            }
            _ => Compatibility::Undecided,
        }
    }
}

fn sl_basis(n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let mut m = Mat::zeros(n, n);
                m[(a, b)] = one();
                out.push(m);
            }
        }
    }
    for a in 0..n.saturating_sub(1) {
        let mut m = Mat::zeros(n, n);
        m[(a, a)] = one();
        m[(a + 1, a + 1)] = -one();
        out.push(m);
    }
    out
}

/// How a flag prolongation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlagStatus {
    /// Every degree present in `gr g0` was computed; the value is the top
    /// nonzero degree.
    Terminated(i32),
    /// The degree cap was reached first.
    Capped(usize),
}

/// `u^F(δ) = ⊕_{k >= -1} u_k`, as subspaces of `gl(gr W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagProlongation {
    pub components: BTreeMap<i32, Subspace>,
    pub status: FlagStatus,
    n: usize,
}

impl FlagProlongation {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.components.iter().map(|(&k, s)| (k, s.dim())).collect()
    }

    pub fn dim(&self, k: i32) -> usize {
        self.components.get(&k).map_or(0, Subspace::dim)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Subspace::dim).sum()
    }

    /// All basis elements as matrices on `gr W`, by ascending degree.
    pub fn elements(&self) -> Vec<(i32, Mat)> {
        self.components
            .iter()
            .flat_map(|(&k, s)| s.basis_vecs().into_iter().map(move |v| (k, unflat(self.n, &v))))
            .collect()
    }

    /// `[u_j, u_k] ⊆ u_{j+k}` on all basis pairs.
    pub fn is_closed(&self) -> bool {
        let els = self.elements();
        els.iter().all(|(j, a)| {
            els.iter().all(|(k, b)| {
                let c = a.commutator(b);
                c.is_zero() || self.components.get(&(j + k)).is_some_and(|s| s.contains(c.as_slice()))
            })
        })
    }

    /// The whole prolongation transported to `gl(W)` and extended to
    /// derivations of the symbol's `m`, for use as `g0`.
    pub fn to_subalgebra0(&self, sym: &FlagSymbol) -> Result<Subalgebra0, FlagError> {
        let mats: Vec<Mat> = self.elements().iter().map(|(_, x)| sym.transport(x)).collect();
        Ok(Subalgebra0::from_gminus1_matrices(sym.ambient.parent(), &mats)?)
    }
}

/// `u_k = {X ∈ (gr g0)_k : [X, Y] ∈ prev for all Y}`.
fn next_component(n: usize, candidates: &Subspace, ys: &[Mat], prev: &Subspace) -> Subspace {
    let basis = candidates.basis_vecs();
    if basis.is_empty() {
        return Subspace::zero(n * n);
    }
    let ann = prev.annihilator();
    let mut rows = Mat::zeros(0, basis.len());
    for y in ys {
        let cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|b| {
                let c = unflat(n, b).commutator(y);
                if ann.is_zero() {
                    Vec::new()
                } else {
                    ann.basis().mul_vec(c.as_slice())
                }
            })
            .collect();
        if ann.is_zero() {
            continue;
        }
        rows = rows.vstack(&Mat::from_cols(ann.dim(), cols));
    }
    let ker = kernel(&rows);
    Subspace::span(
        n * n,
        ker.basis_vecs().into_iter().map(|x| {
            let mut v = crate::exactla::zero_vec(n * n);
            for (c, b) in x.iter().zip(&basis) {
                crate::exactla::axpy(&mut v, c, b);
            }
            v
        }),
    )
}

fn run(sym: &FlagSymbol, max_degree: usize, ys: Vec<Mat>, first: Subspace, centralizer_at_zero: bool) -> FlagProlongation {
    let n = sym.n();
    let top_ambient = sym.gr_ambient.components.keys().next_back().copied().unwrap_or(-1);
    let mut components = BTreeMap::from([(-1, first)]);
    let mut status = FlagStatus::Capped(max_degree);
    let mut k = 0;
    loop {
        if k > top_ambient {
            let top = components.iter().rev().find(|(_, s)| !s.is_zero()).map_or(-1, |(&d, _)| d);
            status = FlagStatus::Terminated(top);
            break;
        }
        if k as usize >= max_degree {
            break;
        }
        let candidates = sym.gr_ambient.components.get(&k).cloned().unwrap_or_else(|| Subspace::zero(n * n));
        let prev = if k == 0 && centralizer_at_zero { Subspace::zero(n * n) } else { components[&(k - 1)].clone() };
        components.insert(k, next_component(n, &candidates, &ys, &prev));
        k += 1;
    }
    FlagProlongation { components, status, n }
}

/// `u^F(δ)`: computed in every degree present in `gr g0` (bounded by the
/// cap). Stopping at the top degree of `gr g0` replaces a stop-after-zeros
/// heuristic: components above it are zero for every `δ`.
pub fn flag_prolong(sym: &FlagSymbol, max_degree: usize) -> FlagProlongation {
    let n = sym.n();
    let ys: Vec<Mat> = sym.delta.basis_vecs().iter().map(|v| unflat(n, v)).collect();
    run(sym, max_degree, ys, sym.delta.clone(), false)
}

/// `u^{F,par}(δ)`: degree zero is the centralizer of the fixed `δ`, higher
/// degrees recurse with the parameterized components.
pub fn flag_prolong_param(sym: &FlagSymbol, max_degree: usize) -> Result<FlagProlongation, FlagError> {
    let fixed = sym.fixed.as_ref().ok_or(FlagError::NotParameterized)?;
    let n = sym.n();
    let first = Subspace::span(n * n, [fixed.clone()]);
    Ok(run(sym, max_degree, vec![unflat(n, fixed)], first, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{direct_sum, make_delta_rp, make_tau_m};

    #[test]
    fn ode_flag_symbol_is_gl2() {
        for n in 3..=8 {
            let d = make_delta_rp(-n, -1).unwrap();
            let sym = FlagSymbol::from_datum(&d, AmbientKind::Gl, false).unwrap();
            assert!(sym.gr_matches_ambient());
            let u = flag_prolong(&sym, 20);
            assert_eq!(u.dims(), (-1..=(n - 1)).map(|k| (k, [1, 2, 1].get((k + 1) as usize).copied().unwrap_or(0))).collect());
            assert_eq!(u.total_dim(), 4);
            assert!(u.is_closed());
        }
    }

    #[test]
    fn tau_two_in_csp() {
        let t = make_tau_m(2, 1).unwrap();
        let sym = FlagSymbol::from_datum(&t, AmbientKind::Csp, false).unwrap();
        assert_eq!(sym.compatibility(), Compatibility::Compatible);
        assert!(sym.gr_matches_ambient());
        let u = flag_prolong(&sym, 20);
        assert_eq!(u.total_dim(), 4);
        assert!(u.is_closed());
    }

    #[test]
    fn parameterized_so_counts() {
        let t1 = make_tau_m(1, 1).unwrap();
        let m1 = make_tau_m(1, -1).unwrap();
        let cases = [
            (direct_sum(&[t1.clone(), t1.clone()]).unwrap(), 1),
            (t1.clone(), 0),
            (direct_sum(&[t1.clone(), m1.clone()]).unwrap(), 1),
            (direct_sum(&[t1.clone(), t1.clone(), m1.clone()]).unwrap(), 3),
        ];
        for (d, expected) in cases {
            let sym = FlagSymbol::from_datum(&d, AmbientKind::Sp, true).unwrap();
            let u = flag_prolong_param(&sym, 20).unwrap();
            assert_eq!(u.dim(0), expected);
            assert!(u.components.iter().filter(|(&k, _)| k > 0).all(|(_, s)| s.is_zero()));
            // Parameterized components sit inside the unparameterized ones.
            let line = FlagSymbol::from_datum(&d, AmbientKind::Sp, false).unwrap();
            let full = flag_prolong(&line, 20);
            for (k, s) in &u.components {
                assert!(s.is_subspace_of(&full.components[k]));
            }
        }
    }

    #[test]
    fn symbol_validation() {
        let d = make_delta_rp(-2, -1).unwrap();
        let ambient = derivations0(&build_commutative(2));
        // Degree 0 element is not in (gr gl)_{-1}.
        let bad = FlagSymbol::new(ambient.clone(), AmbientKind::Gl, None, d.flag(), vec![Mat::identity(2)], false);
        assert!(matches!(bad, Err(FlagError::DeltaNotInAmbient)));
        let d3 = make_delta_rp(-3, -1).unwrap();
        let a3 = derivations0(&build_commutative(3));
        let e12 = Mat::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e23 = Mat::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let nc = FlagSymbol::new(a3, AmbientKind::Gl, None, d3.flag(), vec![e12, e23], false);
        assert!(matches!(nc, Err(FlagError::NotCommutative)));
        let two = FlagSymbol::new(ambient, AmbientKind::Gl, None, d.flag(), vec![d.delta.clone(), d.delta.clone()], true);
        assert!(matches!(two, Err(FlagError::NotParameterized)));
    }

    #[test]
    fn symplectic_flags() {
        // Lagrangian half-flag in dimension 4: Λ_0 = span(e1, e2).
        let mut w = Mat::zeros(4, 4);
        w[(0, 2)] = one();
        w[(2, 0)] = -one();
        w[(1, 3)] = one();
        w[(3, 1)] = -one();
        let half = FiltrationSpec::from_weights(&[0, 0, -1, -1]);
        let r = symplectic_flag_check(&half, &w);
        assert!(r.symplectic);
        for m in 1..=4 {
            let t = make_tau_m(m, 1).unwrap();
            assert!(symplectic_flag_check(&t.flag(), t.omega.as_ref().unwrap()).symplectic);
        }
        // Λ_0 = span(e1, e3) is symplectic, not coisotropic.
        let generic = FiltrationSpec::from_weights(&[0, -1, 0, -1]);
        assert!(!symplectic_flag_check(&generic, &w).symplectic);
    }

    #[test]
    fn tower_from_flag_symbol() {
        use crate::prolong::{tanaka_prolong, Status};
        let d = make_delta_rp(-3, -1).unwrap();
        let sym = FlagSymbol::from_datum(&d, AmbientKind::Gl, false).unwrap();
        let g0 = flag_prolong(&sym, 10).to_subalgebra0(&sym).unwrap();
        let alg = tanaka_prolong(sym.ambient().parent(), &g0, 6).unwrap();
        assert_eq!(alg.graded_dims(), vec![(-1, 3), (0, 4), (1, 3)]);
        assert_eq!(alg.status(), Status::Terminated(1));

        let t = make_tau_m(2, 1).unwrap();
        let sym = FlagSymbol::from_datum(&t, AmbientKind::Csp, false).unwrap();
        let g0 = flag_prolong(&sym, 10).to_subalgebra0(&sym).unwrap();
        let alg = tanaka_prolong(sym.ambient().parent(), &g0, 6).unwrap();
        assert_eq!(alg.graded_dims(), vec![(-2, 1), (-1, 4), (0, 4), (1, 4), (2, 1)]);
    }
}
