//! Multi-indices, compound matrices, the Hodge star and friends.
//!
//! Basis vectors e_I of ∧^ℓ F^m are indexed by strictly increasing
//! 1-based tuples in lexicographic order.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{kappa, Matrix};

/// Strictly increasing tuple of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u8>);

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl MultiIndex {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u8) -> bool {
        self.0.contains(&i)
    }

    /// Increasing complement in {1..m}.
    pub fn complement(&self, m: usize) -> MultiIndex {
        MultiIndex((1..=m as u8).filter(|i| !self.0.contains(i)).collect())
    }

    /// The last ℓ indices (m-ℓ+1, ..., m).
    pub fn last(l: usize, m: usize) -> MultiIndex {
        MultiIndex(((m - l + 1) as u8..=m as u8).collect())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All ℓ-subsets of {1..m} in lexicographic order.
pub fn multi_index_list(l: usize, m: usize) -> Result<Vec<MultiIndex>> {
    if l > m {
        return Err(Error::InvalidParameters(format!(
            "grade {l} exceeds dimension {m}"
        )));
    }
    let mut out = Vec::with_capacity(binomial(m, l));
    let mut cur: Vec<u8> = (1..=l as u8).collect();
    loop {
        out.push(MultiIndex(cur.clone()));
        // advance to the next combination
        let mut i = l;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (cur[i] as usize) < m - (l - 1 - i) {
                cur[i] += 1;
                for j in i + 1..l {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Position of `idx` in the lexicographic list.
pub fn index_position(list: &[MultiIndex], idx: &MultiIndex) -> Option<usize> {
    list.binary_search(idx).ok()
}

fn inversion_parity(seq: impl Iterator<Item = u8> + Clone) -> bool {
    let v: Vec<u8> = seq.collect();
    let mut odd = false;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Sign of the permutation (1..m) ↦ (I, I°).
pub fn sign_complement(idx: &MultiIndex, m: usize) -> i32 {
    let c = idx.complement(m);
    if inversion_parity(idx.0.iter().chain(c.0.iter()).copied()) {
        -1
    } else {
        1
    }
}

fn signed(field: &Field, s: i32) -> u32 {
    if s < 0 {
        field.neg(1)
    } else {
        1
    }
}

/// ∧^ℓ A: entry (I, J) is the minor on rows I and columns J.
pub fn compound_matrix(a: &Matrix, l: usize) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Dimension("compound of a non-square matrix".into()));
    }
    let m = a.rows();
    if l > m {
        return Err(Error::InvalidParameters(format!(
            "grade {l} exceeds size {m}"
        )));
    }
    let idx = multi_index_list(l, m)?;
    let pos: Vec<Vec<usize>> = idx
        .iter()
        .map(|i| i.0.iter().map(|&x| x as usize - 1).collect())
        .collect();
    let k = idx.len();
    let mut out = Matrix::zeros(a.field(), k, k);
    for (r, rows) in pos.iter().enumerate() {
        for (c, cols) in pos.iter().enumerate() {
            out.set(r, c, a.submatrix(rows, cols).det()?);
        }
    }
    Ok(out)
}

/// The map ∗_ℓ : ∧^ℓ → ∧^{m-ℓ}, e_I ↦ sgn(I I°) e_{I°}.
pub fn hodge_star_matrix(field: &Field, l: usize, m: usize) -> Result<Matrix> {
    if l == 0 || l >= m {
        return Err(Error::InvalidParameters(format!(
            "Hodge star needs 1 <= l < m, got l={l}, m={m}"
        )));
    }
    let src = multi_index_list(l, m)?;
    let dst = multi_index_list(m - l, m)?;
    let mut out = Matrix::zeros(field, dst.len(), src.len());
    for (c, i) in src.iter().enumerate() {
        let r = index_position(&dst, &i.complement(m)).unwrap();
        out.set(r, c, signed(field, sign_complement(i, m)));
    }
    Ok(out)
}

pub fn kappa_matrix(field: &Field, m: usize) -> Matrix {
    kappa(field, m)
}

/// ∗̃_ℓ = (∧^ℓ κ) ∘ ∗_ℓ on ∧^ℓ F^{2ℓ}.
pub fn tilde_star(field: &Field, l: usize, m: usize) -> Result<Matrix> {
    if m != 2 * l {
        return Err(Error::InvalidParameters(format!(
            "tilde star needs m = 2l, got l={l}, m={m}"
        )));
    }
    Ok(compound_matrix(&kappa(field, m), l)?.mul(&hodge_star_matrix(field, l, m)?))
}

/// A coordinate vector on the basis {e_I : I ∈ I(ℓ, m)}.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorVector {
    pub l: usize,
    pub m: usize,
    pub coords: Vec<u32>,
    pub field: Field,
}

impl fmt::Debug for ExteriorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Header line then the coordinates in canonical order.
impl fmt::Display for ExteriorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|&x| self.field.format(x)).collect();
        write!(
            f,
            "l={},m={},q={}\n{}",
            self.l,
            self.m,
            self.field.q(),
            c.join(",")
        )
    }
}

impl ExteriorVector {
    pub fn zero(field: &Field, l: usize, m: usize) -> Self {
        ExteriorVector {
            l,
            m,
            coords: vec![0; binomial(m, l)],
            field: field.clone(),
        }
    }

    pub fn from_coords(field: &Field, l: usize, m: usize, coords: Vec<u32>) -> Result<Self> {
        if l > m || coords.len() != binomial(m, l) {
            return Err(Error::Dimension(format!(
                "{} coordinates for grade {l} in dimension {m}",
                coords.len()
            )));
        }
        Ok(ExteriorVector {
            l,
            m,
            coords,
            field: field.clone(),
        })
    }

    /// The basis vector e_I.
    pub fn basis(field: &Field, m: usize, idx: &MultiIndex) -> Result<Self> {
        let list = multi_index_list(idx.len(), m)?;
        let p = index_position(&list, idx).ok_or_else(|| {
            Error::InvalidParameters(format!("{idx} is not a valid index for m={m}"))
        })?;
        let mut v = ExteriorVector::zero(field, idx.len(), m);
        v.coords[p] = 1;
        Ok(v)
    }

    /// A vector of F^m as a grade-one element.
    pub fn from_vector(field: &Field, v: &[u32]) -> Self {
        ExteriorVector {
            l: 1,
            m: v.len(),
            coords: v.to_vec(),
            field: field.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        ExteriorVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        ExteriorVector {
            coords: self.coords.iter().map(|&a| f.mul(c, a)).collect(),
            ..self.clone()
        }
    }

    /// Scales so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Result<Self> {
        let lead = *self
            .coords
            .iter()
            .find(|&&x| x != 0)
            .ok_or(Error::ZeroVector)?;
        Ok(self.scale(self.field.inv(lead)))
    }
}

/// u ∧ v.
pub fn wedge(u: &ExteriorVector, v: &ExteriorVector) -> Result<ExteriorVector> {
    if u.m != v.m || *u.field != *v.field {
        return Err(Error::Dimension(
            "wedge of vectors from different spaces".into(),
        ));
    }
    let m = u.m;
    if u.l + v.l > m {
        return Err(Error::InvalidParameters(format!(
            "grade {} exceeds dimension {m}",
            u.l + v.l
        )));
    }
    let f = &u.field;
    let iu = multi_index_list(u.l, m)?;
    let iv = multi_index_list(v.l, m)?;
    let iw = multi_index_list(u.l + v.l, m)?;
    let mut out = ExteriorVector::zero(f, u.l + v.l, m);
    for (a, ia) in iu.iter().enumerate() {
        if u.coords[a] == 0 {
            continue;
        }
        for (b, ib) in iv.iter().enumerate() {
            if v.coords[b] == 0 || ib.0.iter().any(|x| ia.contains(*x)) {
                continue;
            }
            let crossings =
                ia.0.iter()
                    .map(|&x| ib.0.iter().filter(|&&y| y < x).count())
                    .sum::<usize>();
            let mut merged: Vec<u8> = ia.0.iter().chain(ib.0.iter()).copied().collect();
            merged.sort_unstable();
            let p = index_position(&iw, &MultiIndex(merged)).unwrap();
            let mut c = f.mul(u.coords[a], v.coords[b]);
            if crossings % 2 == 1 {
                c = f.neg(c);
            }
            out.coords[p] = f.add(out.coords[p], c);
        }
    }
    Ok(out)
}

/// Contraction ι_ω ξ for a covector ω = Σ ω_i e^i, with
/// ι_{e^i} e_I = (-1)^{#{j ∈ I : j < i}} e_{I∖i}.
pub fn interior_mult(omega: &[u32], xi: &ExteriorVector) -> Result<ExteriorVector> {
    if xi.l == 0 {
        return Err(Error::InvalidParameters(
            "contraction of a grade-zero element".into(),
        ));
    }
    if omega.len() != xi.m {
        return Err(Error::Dimension("covector of the wrong length".into()));
    }
    let f = &xi.field;
    let src = multi_index_list(xi.l, xi.m)?;
    let dst = multi_index_list(xi.l - 1, xi.m)?;
    let mut out = ExteriorVector::zero(f, xi.l - 1, xi.m);
    for (a, ia) in src.iter().enumerate() {
        if xi.coords[a] == 0 {
            continue;
        }
        for (pos, &i) in ia.0.iter().enumerate() {
            let w = omega[i as usize - 1];
            if w == 0 {
                continue;
            }
            let rest: Vec<u8> = ia.0.iter().copied().filter(|&x| x != i).collect();
            let p = index_position(&dst, &MultiIndex(rest)).unwrap();
            let mut c = f.mul(w, xi.coords[a]);
            if pos % 2 == 1 {
                c = f.neg(c);
            }
            out.coords[p] = f.add(out.coords[p], c);
        }
    }
    Ok(out)
}

/// Applies a square matrix to the coordinate vector.
pub fn apply_matrix(a: &Matrix, xi: &ExteriorVector) -> ExteriorVector {
    ExteriorVector {
        coords: a.mul_vec(&xi.coords),
        ..xi.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;

    fn mi(v: &[u8]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn index_lists() {
        assert_eq!(
            multi_index_list(2, 3).unwrap(),
            vec![mi(&[1, 2]), mi(&[1, 3]), mi(&[2, 3])]
        );
        let l = multi_index_list(2, 4).unwrap();
        assert_eq!(
            (l.len(), l[0].clone(), l[5].clone()),
            (6, mi(&[1, 2]), mi(&[3, 4]))
        );
        assert_eq!(multi_index_list(0, 5).unwrap(), vec![mi(&[])]);
        assert_eq!(multi_index_list(3, 7).unwrap().len(), 35);
        assert!(multi_index_list(3, 2).is_err());
    }

    #[test]
    fn complement_signs() {
        assert_eq!(sign_complement(&mi(&[1, 2]), 4), 1);
        assert_eq!(sign_complement(&mi(&[1, 3]), 4), -1);
        assert_eq!(sign_complement(&mi(&[3, 4]), 4), 1);
    }

    #[test]
    fn compound_examples() {
        let f5 = fq_make(5, 1).unwrap();
        assert!(compound_matrix(&Matrix::identity(&f5, 4), 2)
            .unwrap()
            .is_identity());
        let d = Matrix::parse(&f5, "1,0,0,0;0,2,0,0;0,0,3,0;0,0,0,4").unwrap();
        let c = compound_matrix(&d, 2).unwrap();
        let diag: Vec<u32> = (0..6).map(|i| c.get(i, i)).collect();
        assert_eq!(diag, vec![2, 3, 4, 1, 3, 2]);
        assert!(compound_matrix(&Matrix::scalar(&f5, 4, 4), 2)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn hodge_examples() {
        let f3 = fq_make(3, 1).unwrap();
        let h = hodge_star_matrix(&f3, 2, 4).unwrap();
        assert_eq!(h.get(5, 0), 1);
        assert_eq!(h.get(4, 1), 2);
        assert!(h.mul(&h).is_identity());
        let k = kappa_matrix(&f3, 4);
        assert_eq!(k.column(0), vec![0, 0, 0, 1]);
        assert_eq!(k.column(1), vec![0, 0, 1, 0]);
        for f in [fq_make(2, 1).unwrap(), f3.clone()] {
            let t = tilde_star(&f, 2, 4).unwrap();
            assert!(t.mul(&t).is_identity());
            // e_{I0} is the last basis vector; it is sent to -e_{I0}
            assert_eq!(t.get(5, 5), f.neg(1));
        }
        assert!(tilde_star(&f3, 2, 5).is_err());
        assert!(hodge_star_matrix(&f3, 4, 4).is_err());
    }

    #[test]
    fn wedge_and_contraction() {
        let f3 = fq_make(3, 1).unwrap();
        let e = |i: u8| ExteriorVector::basis(&f3, 4, &mi(&[i])).unwrap();
        let e12 = ExteriorVector::basis(&f3, 4, &mi(&[1, 2])).unwrap();
        assert_eq!(wedge(&e(1), &e(2)).unwrap(), e12);
        assert!(wedge(&e(1), &e(1)).unwrap().is_zero());
        assert_eq!(wedge(&e(2), &e(1)).unwrap(), e12.scale(2));
        assert_eq!(interior_mult(&[1, 0, 0, 0], &e12).unwrap(), e(2));
        assert!(interior_mult(&[0, 0, 1, 0], &e12).unwrap().is_zero());
        let scalar = ExteriorVector::zero(&f3, 0, 4);
        assert!(interior_mult(&[1, 0, 0, 0], &scalar).is_err());
        assert!(wedge(&e12, &wedge(&e12, &e(3)).unwrap()).is_err());
    }

    #[test]
    fn pairing_identity() {
        // <ν, ι_ω ξ> = <ω ∧ ν, ξ> on basis elements, (l, m) = (3, 5)
        let f = fq_make(3, 1).unwrap();
        let m = 5;
        for xi_idx in multi_index_list(3, m).unwrap() {
            let xi = ExteriorVector::basis(&f, m, &xi_idx).unwrap();
            for i in 1..=m as u8 {
                let mut omega = vec![0; m];
                omega[i as usize - 1] = 1;
                let contracted = interior_mult(&omega, &xi).unwrap();
                for nu_idx in multi_index_list(2, m).unwrap() {
                    let nu = ExteriorVector::basis(&f, m, &nu_idx).unwrap();
                    let lhs = nu
                        .coords
                        .iter()
                        .zip(&contracted.coords)
                        .fold(0, |a, (&x, &y)| f.add(a, f.mul(x, y)));
                    let wn = wedge(&ExteriorVector::from_vector(&f, &omega), &nu).unwrap();
                    let rhs = wn
                        .coords
                        .iter()
                        .zip(&xi.coords)
                        .fold(0, |a, (&x, &y)| f.add(a, f.mul(x, y)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn wedge_is_associative_and_graded() {
        let f = fq_make(5, 1).unwrap();
        let v = |c: [u32; 4]| ExteriorVector::from_vector(&f, &c);
        let a = v([1, 2, 0, 3]);
        let b = v([4, 1, 1, 0]);
        let c = v([0, 3, 2, 1]);
        let ab = wedge(&a, &b).unwrap();
        assert_eq!(
            wedge(&ab, &c).unwrap(),
            wedge(&a, &wedge(&b, &c).unwrap()).unwrap()
        );
        assert_eq!(wedge(&b, &a).unwrap(), ab.scale(4));
        // grade 2 ∧ grade 1 commutes up to (-1)^{2}
        assert_eq!(wedge(&ab, &c).unwrap(), wedge(&c, &ab).unwrap());
    }
}
