//! Grassmann, affine Grassmann and Schubert divisor codes, weights,
//! isometries, equivalence search and permutation automorphisms.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{guard, Error, Result};
use crate::exterior::{index_position, multi_index_list, MultiIndex};
use crate::gf::{field_automorphisms, Field, FieldAutomorphism};
use crate::grassgeo::{big_cell_matrices, plucker_raw, Grassmannian, Subspace};
use crate::linalg::{Matrix, SemilinearMap};
use crate::perm::{PermGroup, Permutation, MAX_VECTORS};

/// Largest length accepted by the permutation backtracking.
pub const MAX_PAUT_LENGTH: usize = 24;

/// A linear code given by a full-rank k×n generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub field: Field,
    pub genmat: Matrix,
    /// One identifier per column.
    pub labels: Vec<String>,
}

impl LinearCode {
    /// Rejects rank-deficient matrices and zero columns.
    pub fn new(genmat: Matrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != genmat.cols() {
            return Err(Error::Dimension("one label per column required".into()));
        }
        if genmat.rank() != genmat.rows() {
            return Err(Error::Degenerate(
                "generator matrix is not of full row rank".into(),
            ));
        }
        if let Some(j) = (0..genmat.cols()).find(|&j| genmat.column(j).iter().all(|&x| x == 0)) {
            return Err(Error::Degenerate(format!("column {j} is zero")));
        }
        Ok(LinearCode {
            field: genmat.field().clone(),
            genmat,
            labels,
        })
    }

    /// Labels the columns 0..n-1.
    pub fn unlabeled(genmat: Matrix) -> Result<Self> {
        let labels = (0..genmat.cols()).map(|j| j.to_string()).collect();
        LinearCode::new(genmat, labels)
    }

    pub fn n(&self) -> usize {
        self.genmat.cols()
    }

    pub fn k(&self) -> usize {
        self.genmat.rows()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.genmat.column(j)
    }

    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        self.genmat.vec_mul(msg)
    }

    pub fn codeword_count(&self) -> Result<u64> {
        let count = (self.q() as u128)
            .checked_pow(self.k() as u32)
            .unwrap_or(u128::MAX);
        guard("codeword enumeration", count, MAX_VECTORS)?;
        Ok(count as u64)
    }

    /// Calls `f` on every codeword, the zero word first.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&[u32])) -> Result<()> {
        let count = self.codeword_count()?;
        let fld = &self.field;
        let q = self.q();
        let (k, n) = (self.k(), self.n());
        // steps[i][a]: what to add to the word when digit i moves from a to a+1 mod q
        let steps: Vec<Vec<Vec<u32>>> = (0..k)
            .map(|i| {
                (0..q)
                    .map(|a| {
                        let d = fld.sub((a + 1) % q, a);
                        self.genmat.row(i).iter().map(|&x| fld.mul(d, x)).collect()
                    })
                    .collect()
            })
            .collect();
        let mut digits = vec![0u32; k];
        let mut word = vec![0u32; n];
        for step in 0..count {
            f(&word);
            if step + 1 == count {
                break;
            }
            for i in 0..k {
                let a = digits[i];
                for (w, &d) in word.iter_mut().zip(&steps[i][a as usize]) {
                    *w = fld.add(*w, d);
                }
                digits[i] = (a + 1) % q;
                if digits[i] != 0 {
                    break;
                }
            }
        }
        Ok(())
    }

    pub fn codewords(&self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        self.for_each_codeword(|c| out.push(c.to_vec()))?;
        Ok(out)
    }

    /// A_0, ..., A_n.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n() + 1];
        self.for_each_codeword(|c| dist[codeword_weight(c)] += 1)?;
        Ok(dist)
    }

    pub fn min_distance(&self) -> Result<usize> {
        let dist = self.weight_distribution()?;
        Ok((1..dist.len()).find(|&w| dist[w] > 0).unwrap_or(0))
    }

    /// True when the rows of `other` span the same space as ours.
    pub fn same_code(&self, other: &Matrix) -> bool {
        other.cols() == self.n()
            && other.rank() == self.k()
            && self.genmat.vstack(other).rank() == self.k()
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        let w = Matrix::from_vec(&self.field, 1, word.len(), word.to_vec());
        w.is_ok_and(|w| word.len() == self.n() && self.genmat.vstack(&w).rank() == self.k())
    }

    /// Columns scaled so the first nonzero entry is 1.
    pub fn projective_points(&self) -> Vec<Vec<u32>> {
        (0..self.n())
            .map(|j| normalize(&self.field, &self.column(j)).0)
            .collect()
    }
}

/// Number of nonzero entries.
pub fn codeword_weight(c: &[u32]) -> usize {
    c.iter().filter(|&&x| x != 0).count()
}

/// Scales v so its first nonzero entry is 1; returns the scaled vector and
/// that entry.
pub fn normalize(f: &Field, v: &[u32]) -> (Vec<u32>, u32) {
    let lead = v.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let inv = f.inv(lead);
    (v.iter().map(|&x| f.mul(inv, x)).collect(), lead)
}

/// Rows of a matrix as packed integers, "a b / c d".
fn rows_label(rows: &[Vec<u32>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn point_label(g: &Subspace) -> String {
    rows_label(&g.basis_rows())
}

/// Columns are the Plücker points of G(ℓ,m) in canonical order.
pub fn grassmann_code(l: usize, m: usize, field: &Field) -> Result<LinearCode> {
    let g = Grassmannian::new(l, m, field)?;
    grassmann_code_from(&g)
}

pub fn grassmann_code_from(g: &Grassmannian) -> Result<LinearCode> {
    let k = g.k();
    let n = g.len();
    let mut data = vec![0u32; k * n];
    for (j, p) in g.plucker.iter().enumerate() {
        for i in 0..k {
            data[i * n + j] = p[i];
        }
    }
    let labels = g.points.iter().map(point_label).collect();
    LinearCode::new(Matrix::from_vec(&g.field, k, n, data)?, labels)
}

/// Row order of the affine code: I_0 first, then the others lexicographically.
pub fn affine_row_order(l: usize, m: usize) -> Result<Vec<MultiIndex>> {
    let list = multi_index_list(l, m)?;
    let i0 = MultiIndex::last(l, m);
    let mut out = vec![i0.clone()];
    out.extend(list.into_iter().filter(|i| *i != i0));
    Ok(out)
}

/// Permutation of lexicographic positions: entry r is the lexicographic
/// position of the r-th affine row.
pub fn affine_row_positions(l: usize, m: usize) -> Result<Vec<usize>> {
    let list = multi_index_list(l, m)?;
    Ok(affine_row_order(l, m)?
        .iter()
        .map(|i| index_position(&list, i).expect("index in list"))
        .collect())
}

/// Columns are (p_I / p_{I_0}) over the big cell, ordered by A.
pub fn affine_grassmann_code(l: usize, m: usize, field: &Field) -> Result<LinearCode> {
    let cells = big_cell_matrices(l, m, field)?;
    let rows = affine_row_positions(l, m)?;
    let k = rows.len();
    let n = cells.len();
    let mut data = vec![0u32; k * n];
    let mut labels = Vec::with_capacity(n);
    for (j, a) in cells.iter().enumerate() {
        // p_{I_0}(A | I) = 1, so the raw minors are already affine coordinates
        let p = plucker_raw(a)?;
        for (r, &pos) in rows.iter().enumerate() {
            data[r * n + j] = p[pos];
        }
        let a_part: Vec<usize> = (0..m - l).collect();
        let rr: Vec<usize> = (0..l).collect();
        labels.push(format!(
            "A={}",
            rows_label(&a.submatrix(&rr, &a_part).row_vecs())
        ));
    }
    LinearCode::new(Matrix::from_vec(field, k, n, data)?, labels)
}

/// Columns are the Plücker points of Ω; the identically zero p_{I_0} row is dropped.
pub fn schubert_code(l: usize, m: usize, field: &Field) -> Result<LinearCode> {
    let g = Grassmannian::new(l, m, field)?;
    schubert_code_from(&g)
}

pub fn schubert_code_from(g: &Grassmannian) -> Result<LinearCode> {
    let k = g.k();
    let omega: Vec<usize> = g.omega_indices().into_iter().collect();
    let n = omega.len();
    let i0 = k - 1;
    let mut data = vec![0u32; (k - 1) * n];
    for (j, &pt) in omega.iter().enumerate() {
        let p = &g.plucker[pt];
        if p[i0] != 0 {
            return Err(Error::Degenerate(
                "point of the divisor with nonzero p_I0".into(),
            ));
        }
        for i in 0..k - 1 {
            data[i * n + j] = p[i];
        }
    }
    let labels = omega.iter().map(|&i| point_label(&g.points[i])).collect();
    LinearCode::new(Matrix::from_vec(&g.field, k - 1, n, data)?, labels)
}

/// A random nondegenerate [n,k] code whose columns are distinct projective points.
pub fn random_code<R: rand::Rng + ?Sized>(
    field: &Field,
    k: usize,
    n: usize,
    rng: &mut R,
) -> Result<LinearCode> {
    let q = field.q() as u128;
    let points = (q.pow(k as u32) - 1) / (q - 1);
    if (n as u128) > points || n < k {
        return Err(Error::InvalidParameters(format!(
            "no [{n},{k}] code with distinct projective columns"
        )));
    }
    loop {
        let mut seen = HashSet::new();
        let mut cols = Vec::with_capacity(n);
        while cols.len() < n {
            let v: Vec<u32> = (0..k).map(|_| rng.gen_range(0..field.q())).collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let (w, _) = normalize(field, &v);
            if seen.insert(w) {
                cols.push(v);
            }
        }
        let g = Matrix::from_rows(field, &cols)?.transpose();
        if g.rank() == k {
            return LinearCode::unlabeled(g);
        }
    }
}

/// Restricts to the columns not listed in `remove`; returns the code and
/// how much the dimension dropped.
pub fn puncture(code: &LinearCode, remove: &[usize]) -> Result<(LinearCode, usize)> {
    let drop: HashSet<usize> = remove.iter().copied().collect();
    let keep: Vec<usize> = (0..code.n()).filter(|j| !drop.contains(j)).collect();
    let g = code.genmat.select_columns(&keep).row_basis();
    let labels = keep.iter().map(|&j| code.labels[j].clone()).collect();
    let lost = code.k() - g.rows();
    Ok((LinearCode::new(g, labels)?, lost))
}

/// Weight of a subcode computed as a support union and as the averaged sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubcodeWeight {
    pub direct: u64,
    /// Σ over nonzero words of the subcode of their weights.
    pub total: u64,
    /// (q-1)·q^{r-1}.
    pub denominator: u64,
}

impl SubcodeWeight {
    pub fn averaged(&self) -> Option<u64> {
        self.total
            .is_multiple_of(self.denominator)
            .then(|| self.total / self.denominator)
    }

    pub fn agree(&self) -> bool {
        self.averaged() == Some(self.direct)
    }
}

/// `basis` rows are codewords spanning the subcode.
pub fn subcode_weight(code: &LinearCode, basis: &Matrix) -> Result<SubcodeWeight> {
    let r = basis.rows();
    if basis.cols() != code.n() {
        return Err(Error::Dimension(
            "subcode basis has the wrong length".into(),
        ));
    }
    if r == 0 || basis.rank() != r {
        return Err(Error::Degenerate("subcode basis is dependent".into()));
    }
    if code.genmat.vstack(basis).rank() != code.k() {
        return Err(Error::InvalidParameters(
            "subcode basis is not inside the code".into(),
        ));
    }
    let direct = (0..code.n())
        .filter(|&j| basis.column(j).iter().any(|&x| x != 0))
        .count() as u64;
    let sub = LinearCode::unlabeled(basis.clone()).unwrap_or_else(|_| LinearCode {
        field: code.field.clone(),
        genmat: basis.clone(),
        labels: Vec::new(),
    });
    let mut total = 0u64;
    sub.for_each_codeword(|c| total += codeword_weight(c) as u64)?;
    let q = code.q() as u64;
    Ok(SubcodeWeight {
        direct,
        total,
        denominator: (q - 1) * q.pow(r as u32 - 1),
    })
}

/// Monomial map c ↦ c' with c'_j = scales[j]·c_{perm(j)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub perm: Permutation,
    pub scales: Vec<u32>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial {
            perm: Permutation::identity(n),
            scales: vec![1; n],
        }
    }

    pub fn from_permutation(perm: Permutation) -> Self {
        let n = perm.degree();
        Monomial {
            perm,
            scales: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    /// The matrix M with c' = c·M, i.e. M[perm(j)][j] = scales[j].
    pub fn to_matrix(&self, field: &Field) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zeros(field, n, n);
        for j in 0..n {
            m.set(self.perm.apply(j as u32) as usize, j, self.scales[j]);
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_monomial() {
            return Err(Error::NotMonomial);
        }
        let n = m.cols();
        let mut images = vec![0u32; n];
        let mut scales = vec![0u32; n];
        for j in 0..n {
            let i = (0..n).find(|&i| m.get(i, j) != 0).expect("monomial column");
            images[j] = i as u32;
            scales[j] = m.get(i, j);
        }
        Ok(Monomial {
            perm: Permutation::from_images(images)?,
            scales,
        })
    }

    pub fn apply(&self, f: &Field, c: &[u32]) -> Vec<u32> {
        (0..self.len())
            .map(|j| f.mul(self.scales[j], c[self.perm.apply(j as u32) as usize]))
            .collect()
    }
}

/// c ↦ monomial(μ(c)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub monomial: Monomial,
    pub mu: FieldAutomorphism,
}

impl Isometry {
    /// Uniform permutation, nonzero scales and field automorphism.
    pub fn random<R: rand::Rng + ?Sized>(f: &Field, n: usize, rng: &mut R) -> Isometry {
        use rand::seq::SliceRandom;
        let mut images: Vec<u32> = (0..n as u32).collect();
        images.shuffle(rng);
        Isometry {
            monomial: Monomial {
                perm: Permutation::from_images(images).expect("shuffled identity"),
                scales: (0..n).map(|_| rng.gen_range(1..f.q())).collect(),
            },
            mu: FieldAutomorphism::new(rng.gen_range(0..f.e()), f),
        }
    }

    pub fn apply(&self, f: &Field, c: &[u32]) -> Vec<u32> {
        let t: Vec<u32> = c.iter().map(|&x| self.mu.apply(f, x)).collect();
        self.monomial.apply(f, &t)
    }

    /// Image of the code's generator matrix, row by row.
    pub fn apply_genmat(&self, g: &Matrix) -> Matrix {
        let f = g.field();
        let rows: Vec<Vec<u32>> = g.row_vecs().iter().map(|r| self.apply(f, r)).collect();
        Matrix::from_rows(f, &rows).expect("rows of equal length")
    }

    /// First this, then `other`.
    pub fn then(&self, other: &Isometry, f: &Field) -> Isometry {
        // other(self(c))_j = t_j μ'(s_{π'(j)}) μ'μ(c)_{π(π'(j))}
        let n = self.monomial.len();
        let images: Vec<u32> = (0..n as u32)
            .map(|j| self.monomial.perm.apply(other.monomial.perm.apply(j)))
            .collect();
        let scales = (0..n)
            .map(|j| {
                let pj = other.monomial.perm.apply(j as u32) as usize;
                f.mul(
                    other.monomial.scales[j],
                    other.mu.apply(f, self.monomial.scales[pj]),
                )
            })
            .collect();
        Isometry {
            monomial: Monomial {
                perm: Permutation::from_images(images).expect("composition of bijections"),
                scales,
            },
            mu: self.mu.compose(&other.mu, f),
        }
    }
}

/// (c_{σ(1)}, ..., c_{σ(n)}) ∈ C for every codeword c.
pub fn is_permutation_automorphism(code: &LinearCode, sigma: &Permutation) -> bool {
    let images: Vec<usize> = sigma.images().iter().map(|&x| x as usize).collect();
    sigma.degree() == code.n() && code.same_code(&code.genmat.select_columns(&images))
}

/// c·M ∈ C for all c.
pub fn is_monomial_automorphism(code: &LinearCode, m: &Matrix) -> Result<bool> {
    if m.rows() != code.n() || !m.is_monomial() {
        return Err(Error::NotMonomial);
    }
    Ok(code.same_code(&code.genmat.mul(m)))
}

/// μ(c)·M ∈ C for all c.
pub fn is_semilinear_automorphism(
    code: &LinearCode,
    m: &Matrix,
    mu: FieldAutomorphism,
) -> Result<bool> {
    if m.rows() != code.n() || !m.is_monomial() {
        return Err(Error::NotMonomial);
    }
    Ok(code.same_code(&code.genmat.frobenius(mu).mul(m)))
}

pub fn is_isometry_automorphism(code: &LinearCode, iso: &Isometry) -> bool {
    iso.monomial.len() == code.n() && code.same_code(&iso.apply_genmat(&code.genmat))
}

/// Lookup from normalized column to (column, leading scalar).
pub struct ColumnIndex {
    map: HashMap<Vec<u32>, Vec<(usize, u32)>>,
}

impl ColumnIndex {
    pub fn new(code: &LinearCode) -> Self {
        let mut map: HashMap<Vec<u32>, Vec<(usize, u32)>> = HashMap::new();
        for j in 0..code.n() {
            let (v, lead) = normalize(&code.field, &code.column(j));
            map.entry(v).or_default().push((j, lead));
        }
        ColumnIndex { map }
    }

    /// (column, a) with v = a·column, when v is proportional to exactly one column.
    pub fn locate(&self, f: &Field, v: &[u32]) -> Option<(usize, u32)> {
        let (w, lead) = normalize(f, v);
        match self.map.get(&w)?.as_slice() {
            [(j, l)] => Some((*j, f.mul(lead, f.inv(*l)))),
            _ => None,
        }
    }

    pub fn multiplicity_free(&self) -> bool {
        self.map.values().all(|v| v.len() == 1)
    }
}

/// The isometry of the code induced by a semilinear map of F^k acting on
/// columns, when every column goes to a multiple of a column.
pub fn induced_isometry(
    code: &LinearCode,
    index: &ColumnIndex,
    g: &SemilinearMap,
) -> Option<Isometry> {
    let f = &code.field;
    let n = code.n();
    // g(col_j) = a_j col_{σ(j)}
    let mut sigma = vec![0u32; n];
    let mut a = vec![0u32; n];
    for j in 0..n {
        let (t, c) = index.locate(f, &g.apply(&code.column(j)))?;
        sigma[j] = t as u32;
        a[j] = c;
    }
    let sigma = Permutation::from_images(sigma).ok()?;
    let pi = sigma.inverse();
    let scales = (0..n)
        .map(|i| f.inv(a[pi.apply(i as u32) as usize]))
        .collect();
    Some(Isometry {
        monomial: Monomial { perm: pi, scales },
        mu: g.mu,
    })
}

/// Permutation of columns j ↦ σ(j) induced by g, ignoring scalars.
pub fn induced_column_permutation(
    code: &LinearCode,
    index: &ColumnIndex,
    g: &SemilinearMap,
) -> Option<Permutation> {
    induced_isometry(code, index, g).map(|iso| iso.monomial.perm.inverse())
}

/// Proof that two codes are equivalent: rowspace(μ(G)·M) = rowspace(G′).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub isometry: Isometry,
    /// A with A·μ(g_j) = a_j·g′_{σ(j)} on the columns.
    pub matrix: Matrix,
}

impl Witness {
    pub fn maps(&self, from: &LinearCode, to: &LinearCode) -> bool {
        to.same_code(&self.isometry.apply_genmat(&from.genmat))
    }

    /// Exhaustive check: every codeword lands in `to`, injectively, keeping its weight.
    pub fn verify_exhaustive(&self, from: &LinearCode, to: &LinearCode) -> Result<bool> {
        if from.n() != to.n() || from.k() != to.k() {
            return Ok(false);
        }
        let mut target = HashSet::new();
        to.for_each_codeword(|c| {
            target.insert(c.to_vec());
        })?;
        let mut seen = HashSet::new();
        let mut ok = true;
        from.for_each_codeword(|c| {
            let d = self.isometry.apply(&from.field, c);
            ok &=
                codeword_weight(&d) == codeword_weight(c) && target.contains(&d) && seen.insert(d);
        })?;
        Ok(ok && seen.len() == target.len())
    }
}

/// For each column j, the weight distribution of the words vanishing at j.
fn column_invariants(code: &LinearCode) -> Result<Vec<Vec<u64>>> {
    let n = code.n();
    let mut inv = vec![vec![0u64; n + 1]; n];
    code.for_each_codeword(|c| {
        let w = codeword_weight(c);
        for (j, &x) in c.iter().enumerate() {
            if x == 0 {
                inv[j][w] += 1;
            }
        }
    })?;
    Ok(inv)
}

/// Columns chosen greedily to be independent; each subsequent choice spans as many
/// columns as possible with the previous ones.
fn information_set(g: &Matrix) -> Vec<usize> {
    let n = g.cols();
    let mut chosen: Vec<usize> = Vec::new();
    while chosen.len() < g.rows() {
        let mut best = None;
        for j in 0..n {
            if chosen.contains(&j) {
                continue;
            }
            let mut cand = chosen.clone();
            cand.push(j);
            let sub = g.select_columns(&cand);
            if sub.rank() < cand.len() {
                continue;
            }
            let span = (0..n)
                .filter(|&x| {
                    sub.transpose()
                        .vstack(&g.select_columns(&[x]).transpose())
                        .rank()
                        == cand.len()
                })
                .count();
            if best.is_none_or(|(s, _)| span > s) {
                best = Some((span, j));
            }
            // cheap enough for desk-scale codes; stop scanning early on big ones
            if n > 64 && best.is_some() {
                break;
            }
        }
        chosen.push(best.expect("full-rank matrix has an information set").1);
    }
    chosen
}

/// Coordinates of every column in the basis of the first t information columns,
/// for the smallest t whose span contains it.
fn span_levels(g: &Matrix, info: &[usize]) -> Vec<Vec<(usize, Vec<u32>)>> {
    let k = info.len();
    let basis = g.select_columns(info);
    let inv = basis.inverse().expect("information set is invertible");
    let mut levels = vec![Vec::new(); k];
    for j in 0..g.cols() {
        let coords = inv.mul_vec(&g.column(j));
        let depth = coords
            .iter()
            .rposition(|&c| c != 0)
            .expect("nonzero column");
        levels[depth].push((j, coords));
    }
    levels
}

struct Matcher<'a> {
    f: &'a Field,
    k: usize,
    levels: Vec<Vec<(usize, Vec<u32>)>>,
    info: Vec<usize>,
    target: &'a ColumnIndex,
    target_cols: Vec<Vec<u32>>,
    src_inv: Option<&'a [Vec<u64>]>,
    dst_inv: Option<&'a [Vec<u64>]>,
    // projective mode allows a scalar per column; exact mode needs equality
    projective: bool,
}

impl Matcher<'_> {
    fn invariants_match(&self, a: usize, b: usize) -> bool {
        match (self.src_inv, self.dst_inv) {
            (Some(s), Some(d)) => s[a] == d[b],
            _ => true,
        }
    }

    /// Sends information column t to a·target[dst] and checks every column
    /// whose image becomes determined. Leaves state untouched on failure.
    fn assign(
        &self,
        t: usize,
        dst: usize,
        a: u32,
        images: &mut Vec<Vec<u32>>,
        assigned: &mut [Option<(usize, u32)>],
        used: &mut [bool],
    ) -> bool {
        if used[dst] || !self.invariants_match(self.info[t], dst) {
            return false;
        }
        images.push(
            self.target_cols[dst]
                .iter()
                .map(|&x| self.f.mul(a, x))
                .collect(),
        );
        let mut newly = Vec::new();
        let mut ok = true;
        for (j, coords) in &self.levels[t] {
            let mut v = vec![0u32; images[0].len()];
            for (c, im) in coords.iter().zip(images.iter()) {
                if *c == 0 {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(im) {
                    *x = self.f.add(*x, self.f.mul(*c, y));
                }
            }
            let hit = self
                .target
                .locate(self.f, &v)
                .filter(|&(_, s)| self.projective || s == 1);
            match hit {
                Some((d, s)) if !used[d] && self.invariants_match(*j, d) => {
                    used[d] = true;
                    assigned[*j] = Some((d, s));
                    newly.push(*j);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            self.undo(t, &newly, images, assigned, used);
        }
        ok
    }

    fn undo(
        &self,
        _t: usize,
        newly: &[usize],
        images: &mut Vec<Vec<u32>>,
        assigned: &mut [Option<(usize, u32)>],
        used: &mut [bool],
    ) {
        for &j in newly {
            if let Some((d, _)) = assigned[j].take() {
                used[d] = false;
            }
        }
        images.pop();
    }

    fn assign_and_extend(
        &self,
        t: usize,
        dst: usize,
        a: u32,
        images: &mut Vec<Vec<u32>>,
        assigned: &mut [Option<(usize, u32)>],
        used: &mut [bool],
    ) -> bool {
        if !self.assign(t, dst, a, images, assigned, used) {
            return false;
        }
        if self.extend(images, assigned, used) {
            return true;
        }
        let newly: Vec<usize> = self.levels[t].iter().map(|(j, _)| *j).collect();
        self.undo(t, &newly, images, assigned, used);
        false
    }

    /// images[t] is the image vector of information column t.
    fn extend(
        &self,
        images: &mut Vec<Vec<u32>>,
        assigned: &mut [Option<(usize, u32)>],
        used: &mut [bool],
    ) -> bool {
        let t = images.len();
        if t == self.k {
            return true;
        }
        let scalars: Vec<u32> = if self.projective && t > 0 {
            self.f.nonzero().collect()
        } else {
            vec![1]
        };
        for dst in 0..self.target_cols.len() {
            for &a in &scalars {
                if self.assign_and_extend(t, dst, a, images, assigned, used) {
                    return true;
                }
            }
        }
        false
    }
}

/// Searches for an isometry x ↦ A·μ(x) between projective systems mapping C onto C′.
/// Returns None when the codes are not equivalent.
pub fn codes_equivalent(c: &LinearCode, d: &LinearCode) -> Result<Option<Witness>> {
    if c.n() != d.n() || c.k() != d.k() || *c.field != *d.field {
        return Ok(None);
    }
    if c.weight_distribution()? != d.weight_distribution()? {
        return Ok(None);
    }
    let f = &c.field;
    let target = ColumnIndex::new(d);
    if !target.multiplicity_free() || !ColumnIndex::new(c).multiplicity_free() {
        return Err(Error::InvalidParameters(
            "equivalence search needs distinct projective points".into(),
        ));
    }
    let dst_inv = column_invariants(d)?;
    for mu in field_automorphisms(f) {
        let cm = LinearCode {
            field: f.clone(),
            genmat: c.genmat.frobenius(mu),
            labels: c.labels.clone(),
        };
        let src_inv = column_invariants(&cm)?;
        let info = information_set(&cm.genmat);
        let matcher = Matcher {
            f,
            k: c.k(),
            levels: span_levels(&cm.genmat, &info),
            info: info.clone(),
            target: &target,
            target_cols: (0..d.n()).map(|j| d.column(j)).collect(),
            src_inv: Some(&src_inv),
            dst_inv: Some(&dst_inv),
            projective: true,
        };
        let mut images = Vec::new();
        let mut assigned = vec![None; c.n()];
        let mut used = vec![false; d.n()];
        if matcher.extend(&mut images, &mut assigned, &mut used) {
            // A·h_{info_t} = images[t]
            let h = cm.genmat.select_columns(&info);
            let img = Matrix::from_rows(f, &images)?.transpose();
            let a = img.mul(&h.inverse()?);
            let n = c.n();
            let mut sigma = vec![0u32; n];
            let mut scal = vec![0u32; n];
            for j in 0..n {
                let (t, s) = assigned[j].expect("every column assigned");
                sigma[j] = t as u32;
                scal[j] = s;
            }
            let pi = Permutation::from_images(sigma)?.inverse();
            let scales = (0..n)
                .map(|i| f.inv(scal[pi.apply(i as u32) as usize]))
                .collect();
            return Ok(Some(Witness {
                isometry: Isometry {
                    monomial: Monomial { perm: pi, scales },
                    mu,
                },
                matrix: a,
            }));
        }
    }
    Ok(None)
}

/// The group of column permutations preserving the code, by backtracking on
/// images of an information set with span pruning.
pub fn paut_brute_force(code: &LinearCode) -> Result<PermGroup> {
    let n = code.n();
    guard(
        "permutation backtracking length",
        n as u128,
        MAX_PAUT_LENGTH as u128,
    )?;
    let f = &code.field;
    // identical columns are interchangeable; work with one per class
    let mut classes: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        classes.entry(code.column(j)).or_default().push(j);
    }
    let reps: Vec<Vec<usize>> = {
        let mut v: Vec<Vec<usize>> = classes.into_values().collect();
        v.sort();
        v
    };
    let rn = reps.len();
    let rep_cols: Vec<usize> = reps.iter().map(|c| c[0]).collect();
    let reduced = LinearCode {
        field: f.clone(),
        genmat: code.genmat.select_columns(&rep_cols),
        labels: Vec::new(),
    };
    let sizes: Vec<Vec<u64>> = reps.iter().map(|c| vec![c.len() as u64]).collect();
    let col_inv = if reduced.codeword_count().is_ok() {
        let inv = column_invariants(&reduced)?;
        Some(
            inv.into_iter()
                .zip(&sizes)
                .map(|(mut a, s)| {
                    a.extend(s);
                    a
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let inv_ref: &[Vec<u64>] = col_inv.as_deref().unwrap_or(&sizes);
    let info = information_set(&reduced.genmat);
    let target = ColumnIndex::new(&reduced);
    let matcher = Matcher {
        f,
        k: reduced.k(),
        levels: span_levels(&reduced.genmat, &info),
        info: info.clone(),
        target: &target,
        target_cols: (0..rn).map(|j| reduced.column(j)).collect(),
        src_inv: Some(inv_ref),
        dst_inv: Some(inv_ref),
        projective: false,
    };

    let lift = |sigma: &[u32]| -> Permutation {
        let mut images = vec![0u32; n];
        for (a, &b) in sigma.iter().enumerate() {
            for (x, y) in reps[a].iter().zip(&reps[b as usize]) {
                images[*x] = *y as u32;
            }
        }
        Permutation::from_images(images).expect("class sizes match")
    };

    // stabilizer-chain search: deepest level first, one element per orbit
    // point not yet reached by the generators found so far
    let k = info.len();
    let mut found: Vec<Vec<u32>> = Vec::new();
    for level in (0..k).rev() {
        let fixed = &info[..level];
        let mut stab: Vec<Vec<u32>> = found
            .iter()
            .filter(|s| fixed.iter().all(|&p| s[p] as usize == p))
            .cloned()
            .collect();
        let mut orbit: HashSet<usize> = HashSet::new();
        close_orbit(&mut orbit, info[level], &stab);
        for cand in 0..rn {
            if orbit.contains(&cand) {
                continue;
            }
            let mut images: Vec<Vec<u32>> = Vec::new();
            let mut used = vec![false; rn];
            let mut assigned = vec![None; rn];
            let mut ok = true;
            for (t, &col) in info.iter().enumerate().take(level) {
                ok &= matcher.assign(t, col, 1, &mut images, &mut assigned, &mut used);
            }
            debug_assert!(ok, "identity is always consistent");
            if ok
                && matcher.assign_and_extend(level, cand, 1, &mut images, &mut assigned, &mut used)
            {
                let sigma: Vec<u32> = assigned
                    .iter()
                    .map(|a| a.expect("all columns assigned").0 as u32)
                    .collect();
                stab.push(sigma.clone());
                found.push(sigma);
                close_orbit(&mut orbit, info[level], &stab);
            }
        }
    }
    let mut gens: Vec<Permutation> = found.iter().map(|s| lift(s)).collect();
    for class in &reps {
        for w in class.windows(2) {
            gens.push(Permutation::cycle(n, &[w[0] as u32, w[1] as u32])?);
        }
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(n));
    }
    PermGroup::new(n, gens)
}

fn close_orbit(orbit: &mut HashSet<usize>, start: usize, gens: &[Vec<u32>]) {
    orbit.insert(start);
    let mut queue: Vec<usize> = orbit.iter().copied().collect();
    while let Some(x) = queue.pop() {
        for s in gens {
            let y = s[x] as usize;
            if orbit.insert(y) {
                queue.push(y);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parameters() {
        let f2 = fq_make(2, 1).unwrap();
        let c = grassmann_code(2, 4, &f2).unwrap();
        assert_eq!((c.n(), c.k(), c.min_distance().unwrap()), (35, 6, 16));
        let f3 = fq_make(3, 1).unwrap();
        let c = grassmann_code(2, 4, &f3).unwrap();
        assert_eq!((c.n(), c.k(), c.min_distance().unwrap()), (130, 6, 81));
        let a = affine_grassmann_code(2, 4, &f2).unwrap();
        assert_eq!((a.n(), a.k()), (16, 6));
        assert!(a.genmat.row(0).iter().all(|&x| x == 1));
        let s = schubert_code(2, 4, &f2).unwrap();
        assert_eq!((s.n(), s.k()), (19, 5));
        let s = schubert_code(2, 5, &f2).unwrap();
        assert_eq!((s.n(), s.k()), (91, 9));
        assert_eq!(codeword_weight(&[0, 0, 0]), 0);
    }

    #[test]
    fn subcodes() {
        let f2 = fq_make(2, 1).unwrap();
        let c = grassmann_code(2, 4, &f2).unwrap();
        let w = subcode_weight(&c, &c.genmat).unwrap();
        assert_eq!(w.direct, 35);
        assert!(w.agree());
        let one = Matrix::from_rows(&f2, &[c.encode(&[1, 0, 0, 0, 0, 0])]).unwrap();
        let w = subcode_weight(&c, &one).unwrap();
        assert_eq!(w.direct, 16);
        assert!(w.agree());
        let dep = c.genmat.row(0).to_vec();
        let bad = Matrix::from_rows(&f2, &[dep.clone(), dep]).unwrap();
        assert!(subcode_weight(&c, &bad).is_err());
    }

    #[test]
    fn membership() {
        let f2 = fq_make(2, 1).unwrap();
        let c = grassmann_code(2, 4, &f2).unwrap();
        assert!(is_permutation_automorphism(&c, &Permutation::identity(35)));
        assert!(is_monomial_automorphism(&c, &Matrix::identity(&f2, 35)).unwrap());
        assert!(is_semilinear_automorphism(
            &c,
            &Matrix::identity(&f2, 35),
            FieldAutomorphism::IDENTITY
        )
        .unwrap());
        assert!(!is_permutation_automorphism(
            &c,
            &Permutation::cycle(35, &[0, 1]).unwrap()
        ));
        assert!(is_monomial_automorphism(&c, &Matrix::zeros(&f2, 35, 35)).is_err());
        let m = Monomial {
            perm: Permutation::cycle(4, &[0, 2, 1]).unwrap(),
            scales: vec![1, 2, 3, 4],
        };
        let f5 = fq_make(5, 1).unwrap();
        assert_eq!(Monomial::from_matrix(&m.to_matrix(&f5)).unwrap(), m);
        assert_eq!(
            m.apply(&f5, &[1, 2, 3, 4]),
            m.to_matrix(&f5).vec_mul(&[1, 2, 3, 4])
        );
    }

    #[test]
    fn isometry_composition() {
        let f4 = fq_make(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Isometry::random(&f4, 6, &mut rng);
        let b = Isometry::random(&f4, 6, &mut rng);
        let c = vec![0, 1, 2, 3, 1, 2];
        assert_eq!(
            a.then(&b, &f4).apply(&f4, &c),
            b.apply(&f4, &a.apply(&f4, &c))
        );
    }

    #[test]
    fn permutation_groups() {
        let f2 = fq_make(2, 1).unwrap();
        let rep = LinearCode::unlabeled(Matrix::from_rows(&f2, &[vec![1; 5]]).unwrap()).unwrap();
        assert_eq!(paut_brute_force(&rep).unwrap().order(), 120);
        let a = affine_grassmann_code(2, 4, &f2).unwrap();
        let g = paut_brute_force(&a).unwrap();
        // det(A) = x1x4 + x2x3 is a quadratic form, so the affine symplectic
        // group ASp(4,2) of order 16·720 acts; cross-checked over AGL(4,2)
        assert_eq!(g.order(), 11520);
        assert!(g
            .generators()
            .iter()
            .all(|s| is_permutation_automorphism(&a, s)));
        let long = LinearCode::unlabeled(Matrix::identity(&f2, 25)).unwrap();
        assert!(paut_brute_force(&long).unwrap_err().is_guard());
        let id = LinearCode::unlabeled(Matrix::identity(&f2, 8)).unwrap();
        assert_eq!(paut_brute_force(&id).unwrap().order(), 40320);
    }

    #[test]
    fn equivalence() {
        let f2 = fq_make(2, 1).unwrap();
        let g = Grassmannian::new(2, 4, &f2).unwrap();
        let c = grassmann_code_from(&g).unwrap();
        let omega: Vec<usize> = g.omega_indices().into_iter().collect();
        let (p, lost) = puncture(&c, &omega).unwrap();
        assert_eq!(lost, 0);
        let a = affine_grassmann_code(2, 4, &f2).unwrap();
        let w = codes_equivalent(&a, &p).unwrap().expect("equivalent");
        assert!(w.maps(&a, &p));
        assert!(w.verify_exhaustive(&a, &p).unwrap());
        let (same, _) = puncture(&c, &[]).unwrap();
        assert!(c.same_code(&same.genmat));

        let s = schubert_code(2, 4, &fq_make(3, 1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let iso = Isometry::random(&s.field, s.n(), &mut rng);
            let t = LinearCode::unlabeled(iso.apply_genmat(&s.genmat)).unwrap();
            let w = codes_equivalent(&s, &t)
                .unwrap()
                .expect("transform is equivalent");
            assert!(w.verify_exhaustive(&s, &t).unwrap());
        }
        let r = random_code(&f2, 6, 35, &mut rng).unwrap();
        assert!(codes_equivalent(&c, &r).unwrap().is_none());
    }
}
