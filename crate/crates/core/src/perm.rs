//! Permutations and a Schreier–Sims engine for group orders.

use std::fmt;

use crate::error::{guard, Error, Result};
use crate::linalg::SemilinearMap;

/// A bijection of {0..n-1}; `images[i]` is the image of i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidParameters(
                    "images do not form a bijection".into(),
                ));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// The cycle (c0 c1 ... ck) on n points.
    pub fn cycle(n: usize, cycle: &[u32]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for (i, &c) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            if c as usize >= n || next as usize >= n {
                return Err(Error::InvalidParameters("cycle point out of range".into()));
            }
            images[c as usize] = next;
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// Composition in the function sense: `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        other.then(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut r = Permutation::identity(self.degree());
        let mut b = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                r = r.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        r
    }
}

struct Level {
    base_point: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    // index into `orbit`, u32::MAX when absent
    pos: Vec<u32>,
    trans: Vec<Permutation>,
    trans_inv: Vec<Permutation>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut lv = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            pos: vec![u32::MAX; degree],
            trans: Vec::new(),
            trans_inv: Vec::new(),
        };
        lv.reset(degree);
        lv
    }

    fn reset(&mut self, degree: usize) {
        self.orbit.clear();
        self.trans.clear();
        self.trans_inv.clear();
        self.pos.iter_mut().for_each(|p| *p = u32::MAX);
        self.pos[self.base_point as usize] = 0;
        self.orbit.push(self.base_point);
        self.trans.push(Permutation::identity(degree));
        self.trans_inv.push(Permutation::identity(degree));
    }

    fn rebuild(&mut self, strong: &[Permutation]) {
        let degree = self.pos.len();
        self.reset(degree);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            for &g in &self.gens {
                let img = strong[g].apply(beta);
                if self.pos[img as usize] == u32::MAX {
                    let u = self.trans[head].then(&strong[g]);
                    self.pos[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    self.trans_inv.push(u.inverse());
                    self.trans.push(u);
                }
            }
            head += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .field("base", &self.base())
            .field("order", &self.order())
            .finish()
    }
}

impl PermGroup {
    /// Runs deterministic Schreier–Sims; the base is extended by the
    /// smallest point moved by each new strong generator.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Dimension("generators of different degrees".into()));
        }
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators.into_iter().filter(|g| !g.is_identity()) {
            if group
                .levels
                .iter()
                .all(|lv| g.apply(lv.base_point) == lv.base_point)
            {
                let b = g.smallest_moved_point().unwrap();
                group.levels.push(Level::new(b, degree));
            }
            group.strong.push(g);
        }
        let s = group.strong.len();
        for idx in 0..s {
            let g = &group.strong[idx];
            for l in 0..group.levels.len() {
                group.levels[l].gens.push(idx);
                let b = group.levels[l].base_point;
                if g.apply(b) != b {
                    break;
                }
            }
        }
        for l in 0..group.levels.len() {
            let strong = &group.strong;
            group.levels[l].rebuild(strong);
        }
        group.complete();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let mut k = 0;
            while k < self.levels[li].orbit.len() {
                let gens = self.levels[li].gens.clone();
                for &s in &gens {
                    let lv = &self.levels[li];
                    let beta = lv.orbit[k];
                    let img = self.strong[s].apply(beta);
                    let u_img = lv.pos[img as usize] as usize;
                    let g1 = lv.trans[k].then(&self.strong[s]);
                    if g1 == lv.trans[u_img] {
                        continue;
                    }
                    let schreier = g1.then(&lv.trans_inv[u_img]);
                    let (h, j) = self.strip(schreier, li + 1);
                    if j == self.levels.len() && h.is_identity() {
                        continue;
                    }
                    let top = if j == self.levels.len() {
                        let b = h.smallest_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                        self.levels.len() - 1
                    } else {
                        j
                    };
                    let idx = self.strong.len();
                    self.strong.push(h);
                    for l in li + 1..=top {
                        self.levels[l].gens.push(idx);
                        let strong = &self.strong;
                        self.levels[l].rebuild(strong);
                    }
                    i = top as isize;
                    continue 'outer;
                }
                k += 1;
            }
            i -= 1;
        }
    }

    /// Sifts g from `start`; returns the residue and the level where it stopped.
    fn strip(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for l in start..self.levels.len() {
            let lv = &self.levels[l];
            let b = g.apply(lv.base_point);
            let p = lv.pos[b as usize];
            if p == u32::MAX {
                return (g, l);
            }
            if p != 0 {
                g = g.then(&lv.trans_inv[p as usize]);
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Fundamental orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Orbit of a point under the generators.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut head = 0;
        while head < out.len() {
            let y = out[head];
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    out.push(z);
                }
            }
            head += 1;
        }
        out
    }
}

/// Order of the group generated by `gens` (1 for an empty list).
pub fn group_order(gens: &[Permutation]) -> Result<u128> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    Ok(PermGroup::new(first.degree(), gens.to_vec())?.order())
}

/// Largest vector space F_q^k whose points are enumerated explicitly.
pub const MAX_VECTORS: u128 = 1 << 20;

fn vector_count(q: u32, k: usize) -> Result<u64> {
    let n = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    guard("vector enumeration", n, MAX_VECTORS)?;
    Ok(n as u64)
}

pub(crate) fn encode(v: &[u32], q: u32) -> u64 {
    v.iter()
        .rev()
        .fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub(crate) fn decode(mut n: u64, q: u32, k: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push((n % q as u64) as u32);
        n /= q as u64;
    }
    v
}

/// The permutation a semilinear map induces on the nonzero vectors of F_q^k,
/// the vector with code n standing at position n-1.
pub fn vector_permutation(g: &SemilinearMap) -> Result<Permutation> {
    let q = g.field().q();
    let k = g.dim();
    let n = vector_count(q, k)?;
    let images = (1..n)
        .map(|x| (encode(&g.apply(&decode(x, q, k)), q) - 1) as u32)
        .collect();
    Ok(Permutation::from_images_unchecked(images))
}

/// Order of ⟨gens⟩ acting on the q^k - 1 nonzero vectors of F_q^k.
pub fn matrix_group_order(gens: &[SemilinearMap], k: usize) -> Result<u128> {
    if gens.iter().any(|g| g.dim() != k) {
        return Err(Error::Dimension("generator of the wrong size".into()));
    }
    let perms: Result<Vec<_>> = gens.iter().map(vector_permutation).collect();
    let perms = perms?;
    if perms.is_empty() {
        return Ok(1);
    }
    group_order(&perms)
}

/// Order of the image of ⟨gens⟩ in PΓL(k, q), acting on projective points.
pub fn projective_matrix_group_order(gens: &[SemilinearMap], k: usize) -> Result<u128> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let f = first.field().clone();
    let q = f.q();
    let n = vector_count(q, k)?;
    // normalized representatives: first nonzero coordinate equals 1
    let mut index = vec![u32::MAX; n as usize];
    let mut reps = Vec::new();
    for x in 1..n {
        let v = decode(x, q, k);
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            index[x as usize] = reps.len() as u32;
            reps.push(v);
        }
    }
    let mut perms = Vec::new();
    for g in gens {
        if g.dim() != k {
            return Err(Error::Dimension("generator of the wrong size".into()));
        }
        let images = reps
            .iter()
            .map(|v| {
                let w = g.apply(v);
                let lead = *w.iter().find(|&&c| c != 0).unwrap();
                let inv = f.inv(lead);
                let w: Vec<u32> = w.iter().map(|&c| f.mul(inv, c)).collect();
                index[encode(&w, q) as usize]
            })
            .collect();
        perms.push(Permutation::from_images_unchecked(images));
    }
    group_order(&perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;
    use crate::linalg::Matrix;

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn small_groups() {
        assert_eq!(group_order(&[]).unwrap(), 1);
        for n in 2..9 {
            let cyc: Vec<u32> = (0..n as u32).collect();
            let c = Permutation::cycle(n, &cyc).unwrap();
            assert_eq!(group_order(std::slice::from_ref(&c)).unwrap(), n as u128);
            let t = Permutation::cycle(n, &[0, 1]).unwrap();
            assert_eq!(group_order(&[t, c]).unwrap(), factorial(n as u128));
        }
        let t = Permutation::cycle(4, &[0, 1]).unwrap();
        let c = Permutation::cycle(4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(group_order(&[t, c]).unwrap(), 24);
    }

    #[test]
    fn alternating_and_products() {
        // A_7 from 3-cycles
        let gens: Vec<Permutation> = (0..5)
            .map(|i| Permutation::cycle(7, &[i, i + 1, i + 2]).unwrap())
            .collect();
        assert_eq!(group_order(&gens).unwrap(), 2520);
        // S_3 x S_4 on 7 points
        let gens = vec![
            Permutation::cycle(7, &[0, 1]).unwrap(),
            Permutation::cycle(7, &[0, 1, 2]).unwrap(),
            Permutation::cycle(7, &[3, 4]).unwrap(),
            Permutation::cycle(7, &[3, 4, 5, 6]).unwrap(),
        ];
        let g = PermGroup::new(7, gens.clone()).unwrap();
        assert_eq!(g.order(), 144);
        assert!(g.contains(&Permutation::cycle(7, &[4, 6]).unwrap()));
        assert!(!g.contains(&Permutation::cycle(7, &[2, 3]).unwrap()));
        // redundant products leave the order unchanged
        let mut more = gens.clone();
        more.push(gens[0].then(&gens[3]));
        more.push(gens[1].then(&gens[2]).inverse());
        assert_eq!(group_order(&more).unwrap(), 144);
        assert!(group_order(&[Permutation::identity(3), Permutation::identity(4)]).is_err());
    }

    #[test]
    fn large_symmetric_group() {
        let n = 24;
        let cyc: Vec<u32> = (0..n as u32).collect();
        let gens = vec![
            Permutation::cycle(n, &[0, 1]).unwrap(),
            Permutation::cycle(n, &cyc).unwrap(),
        ];
        assert_eq!(group_order(&gens).unwrap(), factorial(24));
    }

    #[test]
    fn matrix_groups() {
        let f2 = fq_make(2, 1).unwrap();
        let id = SemilinearMap::identity(&f2, 3);
        assert_eq!(matrix_group_order(&[id], 3).unwrap(), 1);
        let a = SemilinearMap::linear(Matrix::parse(&f2, "1,1;0,1").unwrap()).unwrap();
        let b = SemilinearMap::linear(Matrix::parse(&f2, "0,1;1,0").unwrap()).unwrap();
        assert_eq!(matrix_group_order(&[a, b], 2).unwrap(), 6);
        let f7 = fq_make(7, 1).unwrap();
        let s = SemilinearMap::linear(Matrix::scalar(&f7, 2, f7.primitive_element())).unwrap();
        assert_eq!(matrix_group_order(std::slice::from_ref(&s), 2).unwrap(), 6);
        assert_eq!(projective_matrix_group_order(&[s], 2).unwrap(), 1);
    }
}
