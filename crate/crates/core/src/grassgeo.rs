//! Points, lines, strata and linear pieces of Grassmannians over F_q.
//!
//! V_{m-ℓ} is the span of e_1..e_{m-ℓ}; the big cell W_0 consists of the
//! ℓ-spaces meeting it trivially and the Schubert divisor Ω is the rest.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{guard, Error, Result};
use crate::exterior::{multi_index_list, ExteriorVector, MultiIndex};
use crate::gf::Field;
use crate::linalg::Matrix;

/// Largest point set enumerated explicitly.
pub const MAX_POINTS: u128 = 1 << 20;

/// A subspace of F_q^m stored by the RREF of a basis.
#[derive(Clone)]
pub struct Subspace {
    m: usize,
    pivots: Vec<u8>,
    // dim x m RREF, row-major
    rows: Vec<u32>,
    field: Field,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.pivots == other.pivots && self.rows == other.rows
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.pivots.hash(state);
        self.rows.hash(state);
    }
}

/// Pivot columns first, then the RREF entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.pivots.len(), &self.pivots, &self.rows).cmp(&(
            other.m,
            other.pivots.len(),
            &other.pivots,
            &other.rows,
        ))
    }
}
impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.basis())
    }
}

/// One RREF row per line of output, entries comma separated.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis())
    }
}

impl Subspace {
    /// Row space of `basis`.
    pub fn span(basis: &Matrix) -> Subspace {
        let r = basis.rref();
        let m = basis.cols();
        Subspace {
            m,
            pivots: r.pivots.iter().map(|&p| p as u8).collect(),
            rows: r.matrix.data()[..r.rank * m].to_vec(),
            field: basis.field().clone(),
        }
    }

    pub fn from_rows(field: &Field, m: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        if rows.is_empty() {
            return Ok(Subspace::zero(field, m));
        }
        Ok(Subspace::span(&Matrix::from_rows(field, rows)?))
    }

    pub fn zero(field: &Field, m: usize) -> Subspace {
        Subspace {
            m,
            pivots: Vec::new(),
            rows: Vec::new(),
            field: field.clone(),
        }
    }

    /// span(e_{from+1}, ..., e_{to}), 0-based half-open column range.
    pub fn coordinate(field: &Field, m: usize, from: usize, to: usize) -> Subspace {
        let mut rows = Vec::new();
        for i in from..to {
            let mut v = vec![0; m];
            v[i] = 1;
            rows.push(v);
        }
        Subspace::from_rows(field, m, &rows).expect("coordinate rows are well formed")
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient(&self) -> usize {
        self.m
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn pivots(&self) -> Vec<usize> {
        self.pivots.iter().map(|&p| p as usize).collect()
    }

    pub fn basis(&self) -> Matrix {
        Matrix::from_vec(&self.field, self.dim(), self.m, self.rows.clone()).unwrap()
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.rows
            .chunks(self.m.max(1))
            .map(|c| c.to_vec())
            .take(self.dim())
            .collect()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let f = &self.field;
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p as usize];
            if c == 0 {
                continue;
            }
            let row = &self.rows[i * self.m..(i + 1) * self.m];
            for (x, &r) in w.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, r));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// True when `other ⊂ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.basis_rows().iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 {
            return other.clone();
        }
        if other.dim() == 0 {
            return self.clone();
        }
        Subspace::span(&self.basis().vstack(&other.basis()))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn perp(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::coordinate(&self.field, self.m, 0, self.m);
        }
        let k = self.basis().kernel();
        if k.rows() == 0 {
            return Subspace::zero(&self.field, self.m);
        }
        Subspace::span(&k)
    }

    /// U ∩ W = (U^⊥ + W^⊥)^⊥.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp().sum(&other.perp()).perp()
    }

    /// dim(self ∩ span(e_1..e_{m-ℓ})), computed as dim − rank of the last ℓ columns.
    pub fn meet_dim_with_first(&self, first: usize) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        let cols: Vec<usize> = (first..self.m).collect();
        let rows: Vec<usize> = (0..self.dim()).collect();
        self.dim() - self.basis().submatrix(&rows, &cols).rank()
    }

    /// Image under x ↦ A·x (column vectors).
    pub fn image(&self, a: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        Subspace::span(&a.mul(&self.basis().transpose()).transpose())
    }
}

/// Number of r-dimensional subspaces of F_q^m.
pub fn gaussian_binomial(m: u32, r: u32, q: u64) -> u128 {
    if r > m {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..r {
        num *= q.pow(m - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// All r-dimensional subspaces of F_q^m, sorted by RREF encoding.
pub fn enumerate_subspaces(field: &Field, r: usize, m: usize) -> Result<Vec<Subspace>> {
    if r > m {
        return Err(Error::InvalidParameters(format!(
            "no {r}-dimensional subspaces of F^{m}"
        )));
    }
    guard(
        "subspace enumeration",
        gaussian_binomial(m as u32, r as u32, field.q() as u64),
        MAX_POINTS,
    )?;
    if r == 0 {
        return Ok(vec![Subspace::zero(field, m)]);
    }
    let q = field.q();
    let mut out = Vec::new();
    for piv in multi_index_list(r, m)? {
        let pivots: Vec<usize> = piv.0.iter().map(|&x| x as usize - 1).collect();
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..m {
                if !pivots.contains(&j) {
                    free.push(i * m + j);
                }
            }
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut rows = vec![0u32; r * m];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i * m + p] = 1;
            }
            for (&pos, &d) in free.iter().zip(&digits) {
                rows[pos] = d;
            }
            out.push(Subspace {
                m,
                pivots: pivots.iter().map(|&p| p as u8).collect(),
                rows,
                field: field.clone(),
            });
            // odometer, last digit fastest
            let mut i = free.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if free.is_empty() || i == usize::MAX {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn check_lm(l: usize, m: usize) -> Result<()> {
    if !(1 < l && l < m) {
        return Err(Error::InvalidParameters(format!(
            "need 1 < l < m, got l={l}, m={m}"
        )));
    }
    Ok(())
}

/// All ℓ-dimensional subspaces of F_q^m in canonical order.
pub fn enumerate_grassmannian(l: usize, m: usize, field: &Field) -> Result<Vec<Subspace>> {
    check_lm(l, m)?;
    enumerate_subspaces(field, l, m)
}

/// Raw ℓ×ℓ minors of a basis matrix in lexicographic index order.
pub fn plucker_raw(basis: &Matrix) -> Result<Vec<u32>> {
    let l = basis.rows();
    let rows: Vec<usize> = (0..l).collect();
    multi_index_list(l, basis.cols())?
        .iter()
        .map(|i| {
            let cols: Vec<usize> = i.0.iter().map(|&x| x as usize - 1).collect();
            basis.submatrix(&rows, &cols).det()
        })
        .collect()
}

/// Plücker coordinates, scaled so the first nonzero one is 1.
pub fn plucker(gamma: &Subspace) -> Result<ExteriorVector> {
    let raw = plucker_raw(&gamma.basis())?;
    ExteriorVector::from_coords(gamma.field(), gamma.dim(), gamma.ambient(), raw)?.normalized()
}

/// The subspace whose Plücker point is ξ, if ξ is decomposable.
pub fn is_decomposable(xi: &ExteriorVector) -> Result<Option<Subspace>> {
    let target = xi.normalized()?;
    if xi.l == 0 || xi.l == xi.m {
        return Ok(Some(Subspace::coordinate(&xi.field, xi.m, 0, xi.l)));
    }
    for gamma in enumerate_subspaces(&xi.field, xi.l, xi.m)? {
        if plucker(&gamma)? == target {
            return Ok(Some(gamma));
        }
    }
    Ok(None)
}

/// dim(γ ∩ V_{m-ℓ}).
pub fn stratum(gamma: &Subspace, l: usize, m: usize) -> usize {
    gamma.meet_dim_with_first(m - l)
}

/// The ℓ×m matrices (A | I_ℓ), A in lexicographic order of its entries.
pub fn big_cell_matrices(l: usize, m: usize, field: &Field) -> Result<Vec<Matrix>> {
    check_lm(l, m)?;
    let q = field.q();
    let free = l * (m - l);
    let count = (q as u128).pow(free as u32);
    guard("big cell enumeration", count, MAX_POINTS)?;
    let mut out = Vec::with_capacity(count as usize);
    for n in 0..count as u64 {
        let mut a = Matrix::zeros(field, l, m);
        let mut t = n;
        for pos in (0..free).rev() {
            a.set(pos / (m - l), pos % (m - l), (t % q as u64) as u32);
            t /= q as u64;
        }
        for i in 0..l {
            a.set(i, m - l + i, 1);
        }
        out.push(a);
    }
    Ok(out)
}

/// The q^{ℓ(m-ℓ)} points of W_0, ordered by A.
pub fn big_cell_points(l: usize, m: usize, field: &Field) -> Result<Vec<Subspace>> {
    Ok(big_cell_matrices(l, m, field)?
        .iter()
        .map(Subspace::span)
        .collect())
}

/// Points of Ω in canonical order.
pub fn schubert_points(l: usize, m: usize, field: &Field) -> Result<Vec<Subspace>> {
    Ok(enumerate_grassmannian(l, m, field)?
        .into_iter()
        .filter(|g| stratum(g, l, m) > 0)
        .collect())
}

/// All r-dimensional γ with lo ⊂ γ ⊂ hi.
pub fn sandwich(lo: &Subspace, hi: &Subspace, r: usize) -> Result<Vec<Subspace>> {
    if !hi.contains(lo) || r < lo.dim() || r > hi.dim() {
        return Ok(Vec::new());
    }
    let field = lo.field().clone();
    let m = lo.ambient();
    // complement of lo inside hi
    let mut basis = lo.basis_rows();
    let mut comp = Vec::new();
    for row in hi.basis_rows() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if Matrix::from_rows(&field, &trial)?.rank() == trial.len() {
            basis = trial;
            comp.push(row);
        }
    }
    let d = comp.len();
    let mut out = Vec::new();
    for sub in enumerate_subspaces(&field, r - lo.dim(), d)? {
        let mut rows = lo.basis_rows();
        for coeffs in sub.basis_rows() {
            let mut v = vec![0u32; m];
            for (c, w) in coeffs.iter().zip(&comp) {
                for (x, &y) in v.iter_mut().zip(w) {
                    *x = field.add(*x, field.mul(*c, y));
                }
            }
            rows.push(v);
        }
        out.push(Subspace::from_rows(&field, m, &rows)?);
    }
    out.sort();
    Ok(out)
}

/// A line π_β^δ = {γ : β ⊂ γ ⊂ δ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassLine {
    pub beta: Subspace,
    pub delta: Subspace,
}

impl GrassLine {
    pub fn new(beta: Subspace, delta: Subspace) -> Result<Self> {
        if beta.dim() + 2 != delta.dim() || !delta.contains(&beta) {
            return Err(Error::InvalidParameters(
                "beta must be a codimension-2 subspace of delta".into(),
            ));
        }
        Ok(GrassLine { beta, delta })
    }
}

/// The q+1 points of a line.
pub fn line_points(line: &GrassLine) -> Result<Vec<Subspace>> {
    sandwich(&line.beta, &line.delta, line.beta.dim() + 1)
}

/// Every incident pair (β, δ) with dim β = ℓ-1, dim δ = ℓ+1.
pub fn all_lines(l: usize, m: usize, field: &Field) -> Result<Vec<GrassLine>> {
    check_lm(l, m)?;
    let betas = enumerate_subspaces(field, l - 1, m)?;
    let deltas = enumerate_subspaces(field, l + 1, m)?;
    let mut out = Vec::new();
    for b in &betas {
        for d in &deltas {
            if d.contains(b) {
                out.push(GrassLine {
                    beta: b.clone(),
                    delta: d.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// A Grassmannian with its points indexed once.
pub struct Grassmannian {
    pub l: usize,
    pub m: usize,
    pub field: Field,
    pub points: Vec<Subspace>,
    /// Normalized Plücker vectors, aligned with `points`.
    pub plucker: Vec<Vec<u32>>,
    /// dim(γ ∩ V_{m-ℓ}) for each point.
    pub strata: Vec<usize>,
    by_subspace: HashMap<Subspace, usize>,
    by_plucker: HashMap<Vec<u32>, usize>,
}

impl Grassmannian {
    pub fn new(l: usize, m: usize, field: &Field) -> Result<Self> {
        let points = enumerate_grassmannian(l, m, field)?;
        let plucker: Vec<Vec<u32>> = points
            .iter()
            .map(|g| plucker(g).map(|v| v.coords))
            .collect::<Result<_>>()?;
        let strata = points.iter().map(|g| stratum(g, l, m)).collect();
        let by_subspace = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let by_plucker = plucker
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(Grassmannian {
            l,
            m,
            field: field.clone(),
            points,
            plucker,
            strata,
            by_subspace,
            by_plucker,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn k(&self) -> usize {
        self.plucker.first().map_or(0, |p| p.len())
    }

    pub fn index_of(&self, gamma: &Subspace) -> Option<usize> {
        self.by_subspace.get(gamma).copied()
    }

    /// Index of the point whose Plücker vector is proportional to v.
    pub fn index_of_plucker(&self, v: &[u32]) -> Option<usize> {
        let f = &self.field;
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = f.inv(lead);
        let w: Vec<u32> = v.iter().map(|&x| f.mul(inv, x)).collect();
        self.by_plucker.get(&w).copied()
    }

    pub fn indices(&self, pts: &[Subspace]) -> BTreeSet<usize> {
        pts.iter()
            .map(|g| self.index_of(g).expect("point of this Grassmannian"))
            .collect()
    }

    pub fn stratum_indices(&self, i: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&j| self.strata[j] == i).collect()
    }

    pub fn omega_indices(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&j| self.strata[j] > 0).collect()
    }

    /// (|W_0|, |W_1|, ..., |W_ℓ|).
    pub fn stratum_sizes(&self) -> Vec<usize> {
        (0..=self.l)
            .map(|i| self.strata.iter().filter(|&&s| s == i).count())
            .collect()
    }

    /// V_{m-ℓ}.
    pub fn v_fixed(&self) -> Subspace {
        Subspace::coordinate(&self.field, self.m, 0, self.m - self.l)
    }

    /// The index I_0 = (m-ℓ+1, ..., m).
    pub fn i0(&self) -> MultiIndex {
        MultiIndex::last(self.l, self.m)
    }

    /// Permutation of points induced by a matrix acting on ∧^ℓ, if it
    /// maps the Grassmannian onto itself.
    pub fn induced_permutation(&self, g: &crate::linalg::SemilinearMap) -> Option<Vec<u32>> {
        let mut out = Vec::with_capacity(self.len());
        for p in &self.plucker {
            out.push(self.index_of_plucker(&g.apply(p))? as u32);
        }
        Some(out)
    }

    /// Points on lines of this Grassmannian, as index sets.
    pub fn line_sets(&self) -> Result<Vec<BTreeSet<usize>>> {
        all_lines(self.l, self.m, &self.field)?
            .iter()
            .map(|line| Ok(self.indices(&line_points(line)?)))
            .collect()
    }
}

/// Which family a linear piece belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    PiBeta,
    PiDelta,
    TildePiBeta,
    TildePiDelta,
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PieceKind::PiBeta => "pi_beta",
            PieceKind::PiDelta => "pi_delta",
            PieceKind::TildePiBeta => "tilde_pi_beta",
            PieceKind::TildePiDelta => "tilde_pi_delta",
        };
        f.write_str(s)
    }
}

/// A linear subspace of the Grassmannian, as indices into its point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPiece {
    pub kind: PieceKind,
    pub anchor: Subspace,
    pub points: BTreeSet<usize>,
}

/// d with |P^d(F_q)| = n, if n has that form.
pub fn projective_dim(n: usize, q: u32) -> Option<usize> {
    let mut size = 1usize;
    let mut d = 0;
    while size < n {
        size = size * q as usize + 1;
        d += 1;
    }
    (size == n).then_some(d)
}

impl LinearPiece {
    pub fn projective_dim(&self, q: u32) -> Option<usize> {
        projective_dim(self.points.len(), q)
    }

    pub fn subspaces<'a>(&'a self, g: &'a Grassmannian) -> impl Iterator<Item = &'a Subspace> + 'a {
        self.points.iter().map(move |&i| &g.points[i])
    }
}

fn piece(
    g: &Grassmannian,
    kind: PieceKind,
    anchor: &Subspace,
    lo: &Subspace,
    hi: &Subspace,
) -> Result<LinearPiece> {
    Ok(LinearPiece {
        kind,
        anchor: anchor.clone(),
        points: g.indices(&sandwich(lo, hi, g.l)?),
    })
}

fn whole(g: &Grassmannian) -> Subspace {
    Subspace::coordinate(&g.field, g.m, 0, g.m)
}

/// π_β = {γ ⊃ β}.
pub fn pi_beta(g: &Grassmannian, beta: &Subspace) -> Result<LinearPiece> {
    piece(g, PieceKind::PiBeta, beta, beta, &whole(g))
}

/// π^δ = {γ ⊂ δ}.
pub fn pi_delta(g: &Grassmannian, delta: &Subspace) -> Result<LinearPiece> {
    piece(
        g,
        PieceKind::PiDelta,
        delta,
        &Subspace::zero(&g.field, g.m),
        delta,
    )
}

/// π̃_β = {β ⊂ γ ⊂ β + V_{m-ℓ}}.
pub fn tilde_pi_beta(g: &Grassmannian, beta: &Subspace) -> Result<LinearPiece> {
    piece(
        g,
        PieceKind::TildePiBeta,
        beta,
        beta,
        &beta.sum(&g.v_fixed()),
    )
}

/// π̃^δ = {δ ∩ V_{m-ℓ} ⊂ γ ⊂ δ}.
pub fn tilde_pi_delta(g: &Grassmannian, delta: &Subspace) -> Result<LinearPiece> {
    piece(
        g,
        PieceKind::TildePiDelta,
        delta,
        &delta.intersect(&g.v_fixed()),
        delta,
    )
}

/// All π_β and all π^δ.
pub fn max_linear_grassmannian(g: &Grassmannian) -> Result<Vec<LinearPiece>> {
    let mut out = Vec::new();
    for b in enumerate_subspaces(&g.field, g.l - 1, g.m)? {
        out.push(pi_beta(g, &b)?);
    }
    for d in enumerate_subspaces(&g.field, g.l + 1, g.m)? {
        out.push(pi_delta(g, &d)?);
    }
    Ok(out)
}

/// The four families listed for the Schubert divisor.
pub fn max_linear_schubert(g: &Grassmannian) -> Result<Vec<LinearPiece>> {
    let first = g.m - g.l;
    let betas = enumerate_subspaces(&g.field, g.l - 1, g.m)?;
    let deltas = enumerate_subspaces(&g.field, g.l + 1, g.m)?;
    let mut out = Vec::new();
    for b in betas.iter().filter(|b| b.meet_dim_with_first(first) > 0) {
        out.push(pi_beta(g, b)?);
    }
    for d in deltas.iter().filter(|d| d.meet_dim_with_first(first) > 1) {
        out.push(pi_delta(g, d)?);
    }
    for b in betas.iter().filter(|b| b.meet_dim_with_first(first) == 0) {
        out.push(tilde_pi_beta(g, b)?);
    }
    for d in deltas.iter().filter(|d| d.meet_dim_with_first(first) == 1) {
        out.push(tilde_pi_delta(g, d)?);
    }
    Ok(out)
}

/// β ∈ G_{ℓ-1} with β ∩ V_{m-ℓ} = 0.
pub fn w0_minus(g: &Grassmannian) -> Result<Vec<Subspace>> {
    let first = g.m - g.l;
    Ok(enumerate_subspaces(&g.field, g.l - 1, g.m)?
        .into_iter()
        .filter(|b| b.meet_dim_with_first(first) == 0)
        .collect())
}

/// δ ∈ G_{ℓ+1} with dim(δ ∩ V_{m-ℓ}) = 1.
pub fn w1_plus(g: &Grassmannian) -> Result<Vec<Subspace>> {
    let first = g.m - g.l;
    Ok(enumerate_subspaces(&g.field, g.l + 1, g.m)?
        .into_iter()
        .filter(|d| d.meet_dim_with_first(first) == 1)
        .collect())
}

/// {π̃_β : β ∈ W_0^-} ∪ {π̃^δ : δ ∈ W_1^+}.
pub fn max_linear_w1(g: &Grassmannian) -> Result<Vec<LinearPiece>> {
    let mut out = Vec::new();
    for b in w0_minus(g)? {
        out.push(tilde_pi_beta(g, &b)?);
    }
    for d in w1_plus(g)? {
        out.push(tilde_pi_delta(g, &d)?);
    }
    Ok(out)
}

/// Projective points of the span of `basis` (vectors in ∧^ℓ coordinates).
fn span_points(g: &Grassmannian, basis: &[Vec<u32>]) -> Vec<Option<usize>> {
    let f = &g.field;
    let q = f.q() as u64;
    let d = basis.len();
    let k = g.k();
    let mut out = Vec::new();
    for n in 1..q.pow(d as u32) {
        let coeffs = crate::perm::decode(n, f.q(), d);
        // one representative per projective point: leading coefficient 1
        if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u32; k];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        out.push(g.index_of_plucker(&v));
    }
    out
}

/// Maximal subsets of `set` that are full projective subspaces of P(∧^ℓ),
/// found by growing from single points.
pub fn maximal_linear_subsets(g: &Grassmannian, set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut frontier: Vec<(Vec<Vec<u32>>, BTreeSet<usize>)> = Vec::new();
    for &p in set {
        let s: BTreeSet<usize> = [p].into_iter().collect();
        if seen.insert(s.clone()) {
            frontier.push((vec![g.plucker[p].clone()], s));
        }
    }
    let mut maximal = Vec::new();
    while let Some((basis, pts)) = frontier.pop() {
        let mut extended = false;
        for &x in set {
            if pts.contains(&x) {
                continue;
            }
            let mut nb = basis.clone();
            nb.push(g.plucker[x].clone());
            let span = span_points(g, &nb);
            if span.iter().all(|p| p.is_some_and(|i| set.contains(&i))) {
                extended = true;
                let np: BTreeSet<usize> = span.into_iter().flatten().collect();
                if seen.insert(np.clone()) {
                    frontier.push((nb, np));
                }
            }
        }
        if !extended {
            maximal.push(pts);
        }
    }
    maximal.sort();
    maximal
}

/// Lines of P(∧^ℓ) through two points of G: how many meet G in exactly two
/// points, and the set of those lying entirely in G.
pub struct LineScan {
    pub secants: usize,
    pub bad: usize,
    pub contained: BTreeSet<BTreeSet<usize>>,
}

/// Scans every line of P(∧^ℓ) spanned by two Grassmannian points.
pub fn scan_projective_lines(g: &Grassmannian) -> LineScan {
    let mut scan = LineScan {
        secants: 0,
        bad: 0,
        contained: BTreeSet::new(),
    };
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            let pts = span_points(g, &[g.plucker[a].clone(), g.plucker[b].clone()]);
            let inside = pts.iter().filter(|p| p.is_some()).count();
            if inside == pts.len() {
                scan.contained.insert(pts.into_iter().flatten().collect());
            } else if inside == 2 {
                scan.secants += 1;
            } else {
                scan.bad += 1;
            }
        }
    }
    scan
}

/// Δ_γ computed as a union over β ⊂ γ and as a union over δ ⊃ γ.
#[derive(Debug, Clone)]
pub struct DeltaGamma {
    pub by_beta: BTreeSet<usize>,
    pub by_delta: BTreeSet<usize>,
    pub beta_disjoint: bool,
    pub delta_disjoint: bool,
}

impl DeltaGamma {
    pub fn consistent(&self) -> bool {
        self.by_beta == self.by_delta && self.beta_disjoint && self.delta_disjoint
    }

    pub fn points(&self) -> &BTreeSet<usize> {
        &self.by_beta
    }
}

pub fn delta_gamma(g: &Grassmannian, gamma: &Subspace) -> Result<DeltaGamma> {
    if stratum(gamma, g.l, g.m) != 0 {
        return Err(Error::InvalidParameters(
            "delta_gamma needs a point of the big cell".into(),
        ));
    }
    let zero = Subspace::zero(&g.field, g.m);
    let mut out = DeltaGamma {
        by_beta: BTreeSet::new(),
        by_delta: BTreeSet::new(),
        beta_disjoint: true,
        delta_disjoint: true,
    };
    for b in sandwich(&zero, gamma, g.l - 1)? {
        for p in tilde_pi_beta(g, &b)?.points {
            out.beta_disjoint &= out.by_beta.insert(p);
        }
    }
    for d in sandwich(gamma, &whole(g), g.l + 1)? {
        for p in tilde_pi_delta(g, &d)?.points {
            out.delta_disjoint &= out.by_delta.insert(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;

    #[test]
    fn counts() {
        let f2 = fq_make(2, 1).unwrap();
        let f3 = fq_make(3, 1).unwrap();
        assert_eq!(enumerate_grassmannian(2, 4, &f2).unwrap().len(), 35);
        assert_eq!(enumerate_grassmannian(2, 5, &f2).unwrap().len(), 155);
        assert_eq!(enumerate_grassmannian(2, 4, &f3).unwrap().len(), 130);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert!(enumerate_grassmannian(1, 4, &f2).is_err());
        for (r, m, q) in [(1, 3, 2), (2, 5, 3), (3, 6, 2), (2, 4, 4)] {
            let f = fq_make(
                crate::gf::split_prime_power(q).unwrap().0,
                crate::gf::split_prime_power(q).unwrap().1,
            )
            .unwrap();
            let pts = enumerate_subspaces(&f, r, m).unwrap();
            assert_eq!(pts.len() as u128, gaussian_binomial(m as u32, r as u32, q));
            let distinct: HashSet<&Subspace> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
        }
    }

    #[test]
    fn plucker_examples() {
        let f2 = fq_make(2, 1).unwrap();
        let s = |rows: &[Vec<u32>]| Subspace::from_rows(&f2, 4, rows).unwrap();
        let e12 = s(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert_eq!(plucker(&e12).unwrap().coords, vec![1, 0, 0, 0, 0, 0]);
        let e34 = s(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(plucker(&e34).unwrap().coords, vec![0, 0, 0, 0, 0, 1]);
        let g = s(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(plucker(&g).unwrap().coords, vec![1, 0, 1, 1, 0, 1]);
        assert_eq!(stratum(&e12, 2, 4), 2);
        assert_eq!(stratum(&e34, 2, 4), 0);
        let xi = ExteriorVector::from_coords(&f2, 2, 4, vec![1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(is_decomposable(&xi).unwrap(), Some(e12));
        let bad = ExteriorVector::from_coords(&f2, 2, 4, vec![1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(is_decomposable(&bad).unwrap(), None);
        assert!(is_decomposable(&ExteriorVector::zero(&f2, 2, 4)).is_err());
        assert_eq!(is_decomposable(&plucker(&g).unwrap()).unwrap(), Some(g));
    }

    #[test]
    fn strata_and_cells() {
        let f2 = fq_make(2, 1).unwrap();
        let g = Grassmannian::new(2, 4, &f2).unwrap();
        assert_eq!(g.stratum_sizes(), vec![16, 18, 1]);
        let cell = big_cell_points(2, 4, &f2).unwrap();
        assert_eq!(cell.len(), 16);
        assert_eq!(cell[0], Subspace::coordinate(&f2, 4, 2, 4));
        assert!(cell.iter().all(|c| stratum(c, 2, 4) == 0));
        let omega = schubert_points(2, 4, &f2).unwrap();
        assert_eq!(omega.len(), 19);
        assert!(omega.iter().all(|o| plucker(o).unwrap().coords[5] == 0));
        assert_eq!(schubert_points(2, 5, &f2).unwrap().len(), 91);
    }

    #[test]
    fn subspace_operations() {
        let f3 = fq_make(3, 1).unwrap();
        let u = Subspace::from_rows(&f3, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let w = Subspace::from_rows(&f3, 4, &[vec![1, 1, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let i = u.intersect(&w);
        assert_eq!(i, Subspace::from_rows(&f3, 4, &[vec![1, 1, 1, 0]]).unwrap());
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(u.contains(&i) && w.contains(&i));
        assert_eq!(u.perp().dim(), 2);
    }

    #[test]
    fn lines() {
        let f2 = fq_make(2, 1).unwrap();
        let lines = all_lines(2, 4, &f2).unwrap();
        assert_eq!(lines.len(), 105);
        for line in &lines {
            assert_eq!(line_points(line).unwrap().len(), 3);
        }
        let f3 = fq_make(3, 1).unwrap();
        let line = &all_lines(2, 4, &f3).unwrap()[0];
        assert_eq!(line_points(line).unwrap().len(), 4);
        assert!(GrassLine::new(line.delta.clone(), line.beta.clone()).is_err());
    }

    #[test]
    fn maximal_linear_pieces_small() {
        let f2 = fq_make(2, 1).unwrap();
        let g = Grassmannian::new(2, 4, &f2).unwrap();
        let all: BTreeSet<usize> = (0..g.len()).collect();
        let brute = maximal_linear_subsets(&g, &all);
        let mut listed: Vec<BTreeSet<usize>> = max_linear_grassmannian(&g)
            .unwrap()
            .into_iter()
            .map(|p| p.points)
            .collect();
        listed.sort();
        assert_eq!(brute, listed);
        assert_eq!(brute.len(), 30);

        let w1 = g.stratum_indices(1);
        let brute = maximal_linear_subsets(&g, &w1);
        let mut listed: Vec<BTreeSet<usize>> = max_linear_w1(&g)
            .unwrap()
            .into_iter()
            .map(|p| p.points)
            .collect();
        listed.sort();
        assert_eq!(brute, listed);

        let scan = scan_projective_lines(&g);
        assert_eq!(scan.bad, 0);
        let lines: BTreeSet<BTreeSet<usize>> = g.line_sets().unwrap().into_iter().collect();
        assert_eq!(scan.contained, lines);

        let omega = g.omega_indices();
        let brute = maximal_linear_subsets(&g, &omega);
        // only the π_β and π^δ planes survive in Ω(2,4,F_2)
        assert_eq!(brute.len(), 6);
        assert!(brute.iter().all(|s| s.len() == 7));
        let gamma = &g.points[g.stratum_indices(0).into_iter().next().unwrap()];
        let dg = delta_gamma(&g, gamma).unwrap();
        assert!(dg.consistent());
        assert_eq!(dg.points().len(), 9);
    }
}
