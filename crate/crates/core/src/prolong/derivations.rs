use super::tanaka::{leibniz_matrix, ProlongComponent, Tower};
use super::{Layout, ProlongError};
use crate::exactla::{axpy, kernel, solve_affine, zero_vec, Mat, Rat, Subspace};
use crate::symbols::NilpotentSymbol;

/// A subalgebra of the degree-preserving derivations of `m`.
///
/// Elements are stored as flattened block-diagonal actions: block `b` is the
/// image of the basis vector `e_b`, in the coordinates of its own degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra0 {
    parent: NilpotentSymbol,
    layout: Layout,
    space: Subspace,
}

/// Which degree-zero algebra to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum G0Family {
    /// All graded derivations.
    Full,
    /// Derivations whose `g^{-1}` part preserves `ω` up to scale.
    Csp(Mat),
    /// Derivations whose `g^{-1}` part preserves `ω`.
    Sp(Mat),
    /// The span of the given `g^{-1}` matrices, each extended to `m`.
    Custom(Vec<Mat>),
}

fn layout0(m: &NilpotentSymbol) -> Layout {
    Layout::new(m, 0, |d| m.dim(d))
}

/// All derivations of `m` preserving the grading, by solving the Leibniz
/// rule over block-diagonal endomorphisms.
pub fn derivations0(m: &NilpotentSymbol) -> Subalgebra0 {
    let tower = Tower { m, comps: &[] };
    let layout = layout0(m);
    let space = kernel(&leibniz_matrix(&tower, &layout));
    Subalgebra0 { parent: m.clone(), layout, space }
}

/// Intersects the derivations of `m` with the requested matrix algebra on
/// `g^{-1}`.
pub fn restrict_to(m: &NilpotentSymbol, family: &G0Family) -> Result<Subalgebra0, ProlongError> {
    let full = derivations0(m);
    let n1 = m.dim(-1);
    let condition = |omega: &Mat, conformal: bool| -> Result<Subalgebra0, ProlongError> {
        if omega.rows() != n1 || omega.cols() != n1 {
            return Err(ProlongError::BadShape { expected: n1, rows: omega.rows(), cols: omega.cols() });
        }
        // Columns: A^T ω + ω A for each derivation, then -ω for the scale.
        let mut cols: Vec<Vec<Rat>> = (0..full.dim())
            .map(|i| {
                let a = full.on_gminus1(i);
                (&a.transpose() * omega).add(&(omega * &a)).as_slice().to_vec()
            })
            .collect();
        if conformal {
            cols.push(omega.scale(&-crate::exactla::one()).as_slice().to_vec());
        }
        let ker = kernel(&Mat::from_cols(n1 * n1, cols));
        let r = full.dim();
        let elems = ker.basis_vecs().into_iter().map(|x| full.combine(&x[..r]));
        Ok(full.with_span(elems))
    };
    match family {
        G0Family::Full => Ok(full),
        G0Family::Sp(omega) => condition(omega, false),
        G0Family::Csp(omega) => condition(omega, true),
        G0Family::Custom(mats) => Subalgebra0::from_gminus1_matrices(m, mats),
    }
}

impl Subalgebra0 {
    /// Extends each matrix on `g^{-1}` to a derivation of `m` and checks
    /// that the span is closed under commutators.
    pub fn from_gminus1_matrices(m: &NilpotentSymbol, mats: &[Mat]) -> Result<Self, ProlongError> {
        let full = derivations0(m);
        let n1 = m.dim(-1);
        let restriction =
            Mat::from_cols(n1 * n1, (0..full.dim()).map(|i| full.on_gminus1(i).transpose().as_slice().to_vec()).collect());
        let mut elems = Vec::with_capacity(mats.len());
        for (idx, a) in mats.iter().enumerate() {
            if a.rows() != n1 || a.cols() != n1 {
                return Err(ProlongError::BadShape { expected: n1, rows: a.rows(), cols: a.cols() });
            }
            let target = a.transpose().as_slice().to_vec();
            let (x, _) = solve_affine(&restriction, &target);
            let x = x.ok_or(ProlongError::NotADerivation(idx))?;
            elems.push(full.combine(&x));
        }
        let sub = full.with_span(elems);
        if !sub.is_closed() {
            return Err(ProlongError::NotASubalgebra);
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &NilpotentSymbol {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Flattened action of the basis element `i`.
    pub fn element(&self, i: usize) -> &[Rat] {
        self.space.basis().row(i)
    }

    /// Matrix of basis element `i` on `g^deg` (columns are images).
    pub fn on_degree(&self, i: usize, deg: i32) -> Mat {
        let m = &self.parent;
        let v = self.element(i);
        let cols = m.range(deg).map(|b| self.layout.block(v, b).to_vec()).collect();
        Mat::from_cols(m.dim(deg), cols)
    }

    pub fn on_gminus1(&self, i: usize) -> Mat {
        self.on_degree(i, -1)
    }

    /// Basis element `i` as a block-diagonal matrix on all of `m`.
    pub fn full_matrix(&self, i: usize) -> Mat {
        let blocks: Vec<Mat> =
            (1..=self.parent.depth() as i32).map(|k| self.on_degree(i, -k)).collect();
        Mat::block_diag(&blocks)
    }

    fn flatten_full(&self, a: &Mat) -> Vec<Rat> {
        let m = &self.parent;
        let mut out = zero_vec(self.layout.len);
        for b in 0..m.total_dim() {
            let d = m.degree_of(b);
            let off = m.offset(d);
            for (r, slot) in out[self.layout.range(b)].iter_mut().enumerate() {
                *slot = a[(off + r, b)].clone();
            }
        }
        out
    }

    fn combine(&self, x: &[Rat]) -> Vec<Rat> {
        let mut out = zero_vec(self.layout.len);
        for (i, c) in x.iter().enumerate() {
            axpy(&mut out, c, self.element(i));
        }
        out
    }

    fn with_span(&self, elems: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        Subalgebra0 {
            parent: self.parent.clone(),
            layout: self.layout.clone(),
            space: Subspace::span(self.layout.len, elems),
        }
    }

    /// Whether commutators of basis elements stay in the span.
    pub fn is_closed(&self) -> bool {
        let mats: Vec<Mat> = (0..self.dim()).map(|i| self.full_matrix(i)).collect();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                if !self.space.contains(&self.flatten_full(&mats[i].commutator(&mats[j]))) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every basis element satisfies `D[x,y] = [Dx,y] + [x,Dy]` on
    /// all basis pairs.
    pub fn are_derivations(&self) -> bool {
        let m = &self.parent;
        let n = m.total_dim();
        (0..self.dim()).all(|i| {
            let d = self.full_matrix(i);
            (0..n).all(|p| {
                (0..n).all(|q| {
                    let lhs = d.mul_vec(m.bracket_basis(p, q));
                    let dp = d.col(p);
                    let dq = d.col(q);
                    let mut rhs = m.bracket(&dp, &crate::exactla::unit_vec(n, q));
                    axpy(&mut rhs, &crate::exactla::one(), &m.bracket(&crate::exactla::unit_vec(n, p), &dq));
                    lhs == rhs
                })
            })
        })
    }

    /// Whether the matrix `a` on `g^{-1}` is the restriction of an element.
    pub fn contains_gminus1(&self, a: &Mat) -> bool {
        let n1 = self.parent.dim(-1);
        let rows: Vec<Vec<Rat>> = (0..self.dim()).map(|i| self.on_gminus1(i).transpose().as_slice().to_vec()).collect();
        Subspace::span(n1 * n1, rows).contains(a.transpose().as_slice())
    }

    pub(crate) fn as_component(&self) -> ProlongComponent {
        ProlongComponent { degree: 0, layout: self.layout.clone(), space: self.space.clone() }
    }

    /// True when every element restricts to zero on `g^{-1}` only if zero.
    pub fn restriction_injective(&self) -> bool {
        let rows: Vec<Vec<Rat>> = (0..self.dim()).map(|i| self.on_gminus1(i).as_slice().to_vec()).collect();
        let n1 = self.parent.dim(-1);
        Mat::from_rows(n1 * n1, rows).rank() == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, one};
    use crate::symbols::{build_commutative, build_free_nilpotent, build_heisenberg};

    fn standard_omega(n: usize) -> Mat {
        let k = n / 2;
        let mut w = Mat::zeros(n, n);
        for a in 0..k {
            w[(a, k + a)] = one();
            w[(k + a, a)] = -one();
        }
        w
    }

    #[test]
    fn commutative_gives_gl() {
        for n in 1..=5 {
            let d = derivations0(&build_commutative(n));
            assert_eq!(d.dim(), n * n);
            assert!(d.is_closed() && d.are_derivations());
        }
    }

    #[test]
    fn heisenberg_five_gives_csp4() {
        let m = build_heisenberg(5).unwrap();
        let d = derivations0(&m);
        assert_eq!(d.dim(), 11);
        assert!(d.is_closed() && d.are_derivations() && d.restriction_injective());
        let csp = restrict_to(&m, &G0Family::Csp(m.symplectic_form().unwrap())).unwrap();
        assert_eq!(csp, d);
        let sp = restrict_to(&m, &G0Family::Sp(m.symplectic_form().unwrap())).unwrap();
        assert_eq!(sp.dim(), 10);
    }

    #[test]
    fn free_two_three_any_endomorphism_extends() {
        let d = derivations0(&build_free_nilpotent(2, 3));
        assert_eq!(d.dim(), 4);
    }

    #[test]
    fn sp_on_commutative_four() {
        let m = build_commutative(4);
        assert_eq!(restrict_to(&m, &G0Family::Full).unwrap().dim(), 16);
        let sp = restrict_to(&m, &G0Family::Sp(standard_omega(4))).unwrap();
        assert_eq!(sp.dim(), 10);
        assert!(sp.is_closed());
        assert_eq!(restrict_to(&m, &G0Family::Csp(standard_omega(4))).unwrap().dim(), 11);
    }

    #[test]
    fn custom_basis_checks() {
        let m = build_commutative(2);
        let e = Mat::from_i64(&[&[0, 1], &[0, 0]]);
        let f = Mat::from_i64(&[&[0, 0], &[1, 0]]);
        assert!(matches!(
            restrict_to(&m, &G0Family::Custom(vec![e.clone(), f.clone()])),
            Err(ProlongError::NotASubalgebra)
        ));
        let h = Mat::from_i64(&[&[1, 0], &[0, -1]]);
        let sl2 = restrict_to(&m, &G0Family::Custom(vec![e, f, h])).unwrap();
        assert_eq!(sl2.dim(), 3);
        // On heis(3) a matrix outside csp does not extend.
        let heis = build_heisenberg(3).unwrap();
        let bad = Mat::from_rows(2, vec![vec![int(1), int(0)], vec![int(0), int(0)]]);
        let ok = Subalgebra0::from_gminus1_matrices(&heis, &[bad]);
        assert!(ok.is_ok(), "diag(1,0) is conformal symplectic in dimension 2");
        let wrong = Subalgebra0::from_gminus1_matrices(&heis, &[Mat::identity(3)]);
        assert!(matches!(wrong, Err(ProlongError::BadShape { .. })));
    }
}
