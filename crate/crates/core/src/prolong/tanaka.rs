use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Layout, ProlongError, Subalgebra0};
use crate::exactla::{axpy, is_zero_vec, kernel, zero_vec, Mat, Rat, Subspace};
use crate::symbols::NilpotentSymbol;

/// Sparse coordinates `(index, coefficient)`.
pub type SparseVec = Vec<(usize, Rat)>;

/// One graded piece `g^k`, `k >= 0`, as a subspace of its action space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProlongComponent {
    pub degree: usize,
    pub layout: Layout,
    pub space: Subspace,
}

impl ProlongComponent {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Rat>> {
        self.space.basis_vecs()
    }

    /// Restriction of the basis element `i` to `g^{-1}`, concatenated blocks.
    pub fn restriction_to_gminus1(&self, m: &NilpotentSymbol, i: usize) -> Vec<Rat> {
        let v = self.space.basis().row(i);
        m.range(-1).flat_map(|b| self.layout.block(v, b).to_vec()).collect()
    }
}

/// How the prolongation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// `g^{l+1} = 0`, hence every higher component vanishes.
    Terminated(usize),
    /// Degrees up to `max_degree - 1` were computed and all were nonzero.
    Capped(usize),
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Terminated(l) => write!(f, "Terminated {l}"),
            Status::Capped(n) => write!(f, "Capped {n}"),
        }
    }
}

/// Outcome of the structural checks on an assembled prolongation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureChecks {
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub jacobi_triples_checked: usize,
    /// Triples whose brackets leave the computed range (capped runs only).
    pub jacobi_triples_skipped: usize,
    /// No nonzero positive-degree basis element annihilates `g^{-1}`.
    pub no_annihilator: bool,
    /// Restriction to `g^{-1}` is injective on every nonnegative component.
    pub determinacy: bool,
    /// For terminated runs, brackets landing above the top degree vanish.
    pub beyond_top_vanish: Option<bool>,
    /// For terminated runs, `g^{l+1}` recomputed from scratch is zero.
    pub termination_sound: Option<bool>,
}

impl StructureChecks {
    pub fn all(&self) -> bool {
        self.antisymmetric
            && self.jacobi
            && self.no_annihilator
            && self.determinacy
            && self.beyond_top_vanish.unwrap_or(true)
            && self.termination_sound.unwrap_or(true)
    }
}

/// Access to the components computed so far.
pub(crate) struct Tower<'a> {
    pub m: &'a NilpotentSymbol,
    pub comps: &'a [ProlongComponent],
}

impl Tower<'_> {
    pub fn cdim(&self, d: i32) -> usize {
        if d < 0 {
            self.m.dim(d)
        } else {
            self.comps.get(d as usize).map_or(0, ProlongComponent::dim)
        }
    }

    pub fn layout(&self, k: usize) -> Layout {
        Layout::new(self.m, k, |d| self.cdim(d))
    }

    /// Matrix of `u ↦ [u, e_q]` for `u` in the component of degree `j`.
    pub fn apply_matrix(&self, j: i32, q: usize) -> Mat {
        let t = j + self.m.degree_of(q);
        let (rows, cols) = (self.cdim(t), self.cdim(j));
        let mut out = Mat::zeros(rows, cols);
        if rows == 0 || cols == 0 {
            return out;
        }
        if j < 0 {
            let off = self.m.offset(j);
            for c in 0..cols {
                let v = self.m.project(self.m.bracket_basis(off + c, q), t);
                for (r, x) in v.into_iter().enumerate() {
                    out[(r, c)] = x;
                }
            }
        } else {
            let comp = &self.comps[j as usize];
            for c in 0..cols {
                let blk = comp.layout.block(comp.space.basis().row(c), q);
                for (r, x) in blk.iter().enumerate() {
                    out[(r, c)] = x.clone();
                }
            }
        }
        out
    }
}

/// Residual of the Leibniz rule on the pair `(e_p, e_q)`:
/// `f[e_p, e_q] - [f e_p, e_q] - [e_p, f e_q]`, as a matrix acting on the
/// flattened unknown `f` laid out by `layout`.
pub(crate) fn leibniz_block(
    tower: &Tower<'_>,
    layout: &Layout,
    p: usize,
    q: usize,
    cache: &mut HashMap<(i32, usize), Mat>,
) -> Mat {
    let m = tower.m;
    let k = layout.degree as i32;
    let (dp, dq) = (m.degree_of(p), m.degree_of(q));
    let rs = tower.cdim(dp + dq + k);
    let mut out = Mat::zeros(rs, layout.len);
    if rs == 0 {
        return out;
    }
    for (s, c) in m.bracket_basis(p, q).iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let off = layout.offsets[s];
        for r in 0..rs {
            out[(r, off + r)] += c;
        }
    }
    let mut put = |j: i32, blk: usize, other: usize, sign: bool| {
        let a = cache.entry((j, other)).or_insert_with(|| tower.apply_matrix(j, other));
        let off = layout.offsets[blk];
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let x = &a[(r, c)];
                if !x.is_zero() {
                    if sign {
                        out[(r, off + c)] += x;
                    } else {
                        out[(r, off + c)] -= x;
                    }
                }
            }
        }
    };
    put(dp + k, p, q, false);
    put(dq + k, q, p, true);
    out
}

/// All Leibniz constraints on a degree-`layout.degree` map, one block per
/// unordered pair of basis vectors of `m`.
pub(crate) fn leibniz_matrix(tower: &Tower<'_>, layout: &Layout) -> Mat {
    let n = tower.m.total_dim();
    let mut cache = HashMap::new();
    let mut out = Mat::zeros(0, layout.len);
    for p in 0..n {
        for q in p + 1..n {
            let blk = leibniz_block(tower, layout, p, q, &mut cache);
            if blk.rows() > 0 {
                out = out.vstack(&blk);
            }
        }
    }
    out
}

/// The universal prolongation `m ⊕ g^0 ⊕ g^1 ⊕ ...`.
#[derive(Debug, Clone)]
pub struct ProlongedAlgebra {
    m: NilpotentSymbol,
    comps: Vec<ProlongComponent>,
    status: Status,
    /// `(k, l) -> [i][j] ->` coordinates of `[g^k_i, g^l_j]` in `g^{k+l}`.
    pos_table: BTreeMap<(usize, usize), Vec<Vec<Vec<Rat>>>>,
    beyond_top_vanish: Option<bool>,
}

/// Computes `g^1, g^2, ...` up to degree `max_degree - 1`, stopping early at
/// the first vanishing component.
pub fn tanaka_prolong(
    m: &NilpotentSymbol,
    g0: &Subalgebra0,
    max_degree: usize,
) -> Result<ProlongedAlgebra, ProlongError> {
    if g0.parent() != m {
        return Err(ProlongError::InvalidSymbol);
    }
    let mut comps = vec![g0.as_component()];
    let mut status = Status::Capped(max_degree);
    for k in 1..max_degree {
        let space = solve_degree(m, &comps, k);
        if space.is_zero() {
            status = Status::Terminated(k - 1);
            break;
        }
        let layout = Tower { m, comps: &comps }.layout(k);
        comps.push(ProlongComponent { degree: k, layout, space });
    }
    let mut alg = ProlongedAlgebra { m: m.clone(), comps, status, pos_table: BTreeMap::new(), beyond_top_vanish: None };
    alg.assemble_brackets()?;
    Ok(alg)
}

fn solve_degree(m: &NilpotentSymbol, comps: &[ProlongComponent], k: usize) -> Subspace {
    let tower = Tower { m, comps };
    let layout = tower.layout(k);
    kernel(&leibniz_matrix(&tower, &layout))
}

impl ProlongedAlgebra {
    pub fn negative(&self) -> &NilpotentSymbol {
        &self.m
    }

    pub fn status(&self) -> Status {
        self.status
    }

    /// Highest computed degree (0 when only `g^0` is present).
    pub fn top_degree(&self) -> usize {
        self.comps.len() - 1
    }

    /// `g^k` for `0 <= k <= top_degree()`.
    pub fn component(&self, k: usize) -> Option<&ProlongComponent> {
        self.comps.get(k)
    }

    pub fn components(&self) -> &[ProlongComponent] {
        &self.comps
    }

    /// `(degree, dim)` from `-μ` up to the top computed degree.
    pub fn graded_dims(&self) -> Vec<(i32, usize)> {
        let mut out: Vec<(i32, usize)> =
            (1..=self.m.depth() as i32).rev().map(|i| (-i, self.m.dim(-i))).collect();
        out.extend(self.comps.iter().map(|c| (c.degree as i32, c.dim())));
        out
    }

    /// Dimensions of the nonnegative components.
    pub fn nonnegative_dims(&self) -> Vec<usize> {
        self.comps.iter().map(ProlongComponent::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.m.total_dim() + self.comps.iter().map(ProlongComponent::dim).sum::<usize>()
    }

    pub(crate) fn tower(&self) -> Tower<'_> {
        Tower { m: &self.m, comps: &self.comps }
    }

    fn cdim(&self, d: i32) -> usize {
        self.tower().cdim(d)
    }

    fn assemble_brackets(&mut self) -> Result<(), ProlongError> {
        let top = self.top_degree();
        let terminated = matches!(self.status, Status::Terminated(_));
        let limit = if terminated { 2 * top } else { top };
        let mut vanish = true;
        for total in 0..=limit {
            for k in 0..=top.min(total) {
                let l = total - k;
                if l > top {
                    continue;
                }
                let mut entry = Vec::with_capacity(self.comps[k].dim());
                for i in 0..self.comps[k].dim() {
                    let mut row = Vec::with_capacity(self.comps[l].dim());
                    for j in 0..self.comps[l].dim() {
                        let action = self.bracket_action(k, i, l, j);
                        if total <= top {
                            let coords = self.comps[total]
                                .space
                                .coordinates(&action)
                                .ok_or(ProlongError::NotClosed(k, l))?;
                            row.push(coords);
                        } else {
                            vanish &= is_zero_vec(&action);
                            row.push(Vec::new());
                        }
                    }
                    entry.push(row);
                }
                self.pos_table.insert((k, l), entry);
            }
        }
        self.beyond_top_vanish = terminated.then_some(vanish);
        Ok(())
    }

    /// `X(u)` for `X = g^k_i` and `u` in the component of degree `j`
    /// (negative: `u` in `m`; nonnegative: bracket via the table).
    fn act(&self, k: usize, i: usize, j: i32, u: &[Rat]) -> Vec<Rat> {
        let out_deg = k as i32 + j;
        let mut out = zero_vec(self.cdim(out_deg));
        if out.is_empty() {
            return out;
        }
        if j < 0 {
            let comp = &self.comps[k];
            let v = comp.space.basis().row(i);
            let off = self.m.offset(j);
            for (c, a) in u.iter().enumerate() {
                axpy(&mut out, a, comp.layout.block(v, off + c));
            }
        } else {
            let tab = &self.pos_table[&(k, j as usize)][i];
            for (c, a) in u.iter().enumerate() {
                axpy(&mut out, a, &tab[c]);
            }
        }
        out
    }

    /// Action on `m` of `[g^k_i, g^l_j]`:
    /// `[X, Y](v) = [X, Y(v)] - [Y, X(v)]`.
    fn bracket_action(&self, k: usize, i: usize, l: usize, j: usize) -> Vec<Rat> {
        let total = k + l;
        let layout = Layout::new(&self.m, total, |d| self.cdim(d));
        let xv = self.comps[k].space.basis().row(i);
        let yv = self.comps[l].space.basis().row(j);
        let mut out = zero_vec(layout.len);
        for b in 0..self.m.total_dim() {
            if layout.block_sizes[b] == 0 {
                continue;
            }
            let d = self.m.degree_of(b);
            let t1 = self.act(k, i, l as i32 + d, self.comps[l].layout.block(yv, b));
            let t2 = self.act(l, j, k as i32 + d, self.comps[k].layout.block(xv, b));
            for (slot, (a, c)) in out[layout.range(b)].iter_mut().zip(t1.iter().zip(&t2)) {
                *slot = a - c;
            }
        }
        out
    }

    /// Total dimension of the computed part, in the global order: `m`
    /// (degree `-1` first), then `g^0, g^1, ...`.
    pub fn global_dim(&self) -> usize {
        self.total_dim()
    }

    fn global_offset(&self, k: usize) -> usize {
        self.m.total_dim() + self.comps[..k].iter().map(ProlongComponent::dim).sum::<usize>()
    }

    /// Degree of a global basis index.
    pub fn global_degree(&self, idx: usize) -> i32 {
        let n = self.m.total_dim();
        if idx < n {
            return self.m.degree_of(idx);
        }
        let mut acc = n;
        for c in &self.comps {
            acc += c.dim();
            if idx < acc {
                return c.degree as i32;
            }
        }
        panic!("global index {idx} out of range");
    }

    fn local(&self, idx: usize) -> (usize, usize) {
        let k = self.global_degree(idx) as usize;
        (k, idx - self.global_offset(k))
    }

    /// Global labels: labels of `m`, then `g<k>_<i>`.
    pub fn global_labels(&self) -> Vec<String> {
        let mut out = self.m.labels().to_vec();
        for c in &self.comps {
            out.extend((0..c.dim()).map(|i| format!("g{}_{i}", c.degree)));
        }
        out
    }

    /// Embeds coordinates of the degree-`d` component into global sparse form.
    fn embed(&self, d: i32, v: &[Rat], sign: bool, out: &mut Vec<(usize, Rat)>) {
        let off = if d < 0 { self.m.offset(d) } else { self.global_offset(d as usize) };
        for (c, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out.push((off + c, if sign { x.clone() } else { -x }));
            }
        }
    }

    /// `[e_p, e_q]` in global coordinates as a sparse vector, or `None` when
    /// the result lies above the computed range of a capped run.
    pub fn bracket(&self, p: usize, q: usize) -> Option<Vec<(usize, Rat)>> {
        let n = self.m.total_dim();
        let mut out = Vec::new();
        match (p < n, q < n) {
            (true, true) => {
                for (r, x) in self.m.bracket_basis(p, q).iter().enumerate() {
                    if !x.is_zero() {
                        out.push((r, x.clone()));
                    }
                }
            }
            (false, true) | (true, false) => {
                let (x, v, sign) = if p < n { (q, p, false) } else { (p, q, true) };
                let (k, i) = self.local(x);
                let comp = &self.comps[k];
                let d = k as i32 + self.m.degree_of(v);
                if d > self.top_degree() as i32 {
                    return Some(out);
                }
                self.embed(d, comp.layout.block(comp.space.basis().row(i), v), sign, &mut out);
            }
            (false, false) => {
                let ((k, i), (l, j)) = (self.local(p), self.local(q));
                if k + l > self.top_degree() {
                    return match self.status {
                        Status::Terminated(_) => Some(out),
                        Status::Capped(_) => None,
                    };
                }
                self.embed((k + l) as i32, &self.pos_table[&(k, l)][i][j], true, &mut out);
            }
        }
        Some(out)
    }

    /// Dense structure-constant table in global coordinates.
    pub fn bracket_table(&self) -> Vec<Vec<Option<SparseVec>>> {
        let n = self.global_dim();
        (0..n).map(|p| (0..n).map(|q| self.bracket(p, q)).collect()).collect()
    }

    /// Runs the structural checks: antisymmetry and Jacobi over all basis
    /// triples inside the computed range, absence of positive-degree annihilators of `g^{-1}`,
    /// determinacy by the `g^{-1}` restriction, and termination soundness.
    pub fn check_structure(&self) -> StructureChecks {
        let n = self.global_dim();
        let table = self.bracket_table();
        let mut antisymmetric = true;
        for (p, row) in table.iter().enumerate() {
            for (q, entry) in row.iter().enumerate().skip(p) {
                if let (Some(a), Some(b)) = (entry, &table[q][p]) {
                    let mut s = dense(n, a);
                    axpy(&mut s, &crate::exactla::one(), &dense(n, b));
                    antisymmetric &= is_zero_vec(&s);
                }
            }
        }
        let bracket_vec = |x: usize, v: &[(usize, Rat)]| -> Option<Vec<Rat>> {
            let mut out = zero_vec(n);
            for (r, c) in v {
                for (t, y) in table[x][*r].as_ref()? {
                    out[*t] += c * y;
                }
            }
            Some(out)
        };
        let (mut checked, mut skipped, mut jacobi) = (0, 0, true);
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let terms = [(a, b, c), (b, c, a), (c, a, b)].map(|(x, y, z)| {
                        table[y][z].as_ref().and_then(|yz| bracket_vec(x, yz))
                    });
                    if terms.iter().any(Option::is_none) {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    let mut s = zero_vec(n);
                    for t in terms.iter().flatten() {
                        axpy(&mut s, &crate::exactla::one(), t);
                    }
                    jacobi &= is_zero_vec(&s);
                }
            }
        }
        let mut no_annihilator = true;
        let mut determinacy = true;
        for c in &self.comps {
            let rows: Vec<Vec<Rat>> = (0..c.dim()).map(|i| c.restriction_to_gminus1(&self.m, i)).collect();
            if c.degree > 0 {
                no_annihilator &= rows.iter().all(|r| !is_zero_vec(r));
            }
            let width = rows.first().map_or(0, Vec::len);
            determinacy &= Mat::from_rows(width, rows).rank() == c.dim();
        }
        let termination_sound = match self.status {
            Status::Terminated(l) => Some(solve_degree(&self.m, &self.comps, l + 1).is_zero()),
            Status::Capped(_) => None,
        };
        StructureChecks {
            antisymmetric,
            jacobi,
            jacobi_triples_checked: checked,
            jacobi_triples_skipped: skipped,
            no_annihilator,
            determinacy,
            beyond_top_vanish: self.beyond_top_vanish,
            termination_sound,
        }
    }
}

fn dense(n: usize, v: &[(usize, Rat)]) -> Vec<Rat> {
    let mut out = zero_vec(n);
    for (i, x) in v {
        out[*i] += x;
    }
    out
}
