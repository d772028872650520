//! Signed coordinate permutations, the isometry group of Z_q^n for q > 3.
//!
//! For q in {2, 3} the torus has extra isometries beyond signed
//! permutations, so the group actions here refuse those alphabets.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::code::{Code, LinearCode, Word};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// An isometry x -> y with y[perm(i)] = x[i] followed by negation of the
/// marked target coordinates. Axes are 1-based in the public API.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isometry {
    perm: Vec<usize>, // 0-based internally: source i lands on perm[i]
    neg: Vec<bool>,   // indexed by target coordinate
}

impl Isometry {
    /// `perm` maps each 1-based source axis to its 1-based target axis;
    /// `neg[j]` requests negation of 1-based target axis j+1.
    pub fn new(perm: &[usize], neg: &[bool]) -> Result<Isometry> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::InvalidParams("empty permutation".into()));
        }
        if neg.len() != n {
            return Err(Error::DimensionMismatch(
                "negation mask and permutation lengths differ".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidParams(format!(
                    "{perm:?} is not a permutation of 1..={n}"
                )));
            }
            seen[p - 1] = true;
        }
        Ok(Isometry {
            perm: perm.iter().map(|&p| p - 1).collect(),
            neg: neg.to_vec(),
        })
    }

    pub fn identity(n: usize) -> Isometry {
        Isometry {
            perm: (0..n).collect(),
            neg: vec![false; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// 1-based image of each 1-based source axis.
    pub fn permutation(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p + 1).collect()
    }

    pub fn negations(&self) -> &[bool] {
        &self.neg
    }

    pub fn apply_word(&self, w: &[i64], q: i64) -> Result<Word> {
        if w.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "word has length {}, isometry acts on {} axes",
                w.len(),
                self.dim()
            )));
        }
        let mut out = vec![0i64; w.len()];
        for (i, &c) in w.iter().enumerate() {
            out[self.perm[i]] = c;
        }
        for (j, &flip) in self.neg.iter().enumerate() {
            if flip {
                out[j] = -out[j];
            }
        }
        Ok(Word::reduced(&out, q))
    }

    /// `self.compose(first)` applies `first`, then `self`.
    pub fn compose(&self, first: &Isometry) -> Result<Isometry> {
        if self.dim() != first.dim() {
            return Err(Error::DimensionMismatch("composing isometries of different dimensions".into()));
        }
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut neg = vec![false; n];
        for i in 0..n {
            perm[i] = self.perm[first.perm[i]];
        }
        for j in 0..n {
            // sign seen by target axis j of self: first's sign at self^{-1}(j)
            // composed with self's own sign at j
            let mid = self.perm.iter().position(|&p| p == j).unwrap();
            neg[j] = self.neg[j] ^ first.neg[mid];
        }
        Ok(Isometry { perm, neg })
    }

    pub fn inverse(&self) -> Isometry {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
        }
        // the sign this map applied at target j must be undone at the
        // inverse's target perm^{-1}(j)
        let mut neg = vec![false; n];
        for (j, &flip) in self.neg.iter().enumerate() {
            if flip {
                neg[perm[j]] = true;
            }
        }
        Isometry { perm, neg }
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm {:?}", self.permutation())?;
        if self.neg.iter().any(|&b| b) {
            let axes: Vec<usize> = self
                .neg
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(j, _)| j + 1)
                .collect();
            write!(f, ", negate {axes:?}")?;
        }
        Ok(())
    }
}

impl Serialize for Isometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Isometry", 2)?;
        st.serialize_field("perm", &self.permutation())?;
        st.serialize_field("negate", &self.neg)?;
        st.end()
    }
}

fn require_signed_permutation_group(q: i64) -> Result<()> {
    if q <= 3 {
        return Err(Error::Unsupported(format!(
            "isometry actions are only implemented for q > 3 (got q = {q}), where the isometry group is exactly the signed permutations"
        )));
    }
    Ok(())
}

const MAX_ORBIT_DIM: usize = 8;

/// All 2^n * n! signed permutations in a fixed deterministic order
/// (permutations lexicographic, negation masks ascending).
pub fn all_isometries(n: usize) -> Result<Vec<Isometry>> {
    if n == 0 {
        return Err(Error::InvalidParams("dimension must be at least 1".into()));
    }
    if n > MAX_ORBIT_DIM {
        return Err(Error::BudgetExceeded(format!(
            "2^n * n! isometries for n = {n} is beyond the enumeration limit"
        )));
    }
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in &perms {
        for mask in 0u32..(1 << n) {
            let neg: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
            out.push(Isometry::new(p, &neg)?);
        }
    }
    Ok(out)
}

/// Image of a code under an isometry (q > 3).
pub fn apply_isometry(g: &Isometry, c: &Code) -> Result<Code> {
    require_signed_permutation_group(c.q())?;
    if g.dim() != c.dim() {
        return Err(Error::DimensionMismatch(format!(
            "isometry on {} axes applied to a {}-dimensional code",
            g.dim(),
            c.dim()
        )));
    }
    let mut set = BTreeSet::new();
    for w in c.words() {
        set.insert(g.apply_word(w.coords(), c.q())?);
    }
    if set.len() != c.len() {
        return Err(Error::Internal("isometry image lost words".into()));
    }
    Code::from_set(c.q(), c.dim(), set)
}

/// Image of a linear code under an isometry: transform the basis rows and
/// re-canonicalize (q > 3).
pub fn apply_isometry_linear(g: &Isometry, l: &LinearCode) -> Result<LinearCode> {
    require_signed_permutation_group(l.q())?;
    if g.dim() != l.dim() {
        return Err(Error::DimensionMismatch(format!(
            "isometry on {} axes applied to a {}-dimensional code",
            g.dim(),
            l.dim()
        )));
    }
    let n = l.dim();
    let perm = g.permutation();
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = l.gen()[(i, j)].clone();
            if g.negations()[perm[j] - 1] {
                v = -v;
            }
            out.set(i, perm[j] - 1, v);
        }
    }
    LinearCode::from_generator_matrix(l.q(), &out)
}

/// The set of images of `c` under all signed permutations (q > 3, n <= 8).
pub fn isometry_orbit(c: &Code) -> Result<BTreeSet<Code>> {
    require_signed_permutation_group(c.q())?;
    let mut orbit = BTreeSet::new();
    for g in all_isometries(c.dim())? {
        orbit.insert(apply_isometry(&g, c)?);
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_swap() {
        let g = Isometry::new(&[2, 1], &[false, false]).unwrap();
        let w = g.apply_word(&[2, 3], 9).unwrap();
        assert_eq!(w.coords(), &[3, 2]);
    }

    #[test]
    fn apply_negation_convention() {
        // permute first, then negate target axis 2
        let g = Isometry::new(&[2, 1], &[false, true]).unwrap();
        let w = g.apply_word(&[2, 3], 9).unwrap();
        assert_eq!(w.coords(), &[3, 7]);
    }

    #[test]
    fn compose_and_inverse() {
        let a = Isometry::new(&[2, 3, 1], &[true, false, false]).unwrap();
        let b = Isometry::new(&[1, 3, 2], &[false, true, true]).unwrap();
        let ab = a.compose(&b).unwrap();
        let w = [5, 7, 1];
        let via_pair = a.apply_word(b.apply_word(&w, 11).unwrap().coords(), 11).unwrap();
        assert_eq!(ab.apply_word(&w, 11).unwrap(), via_pair);
        let inv = a.inverse();
        let round = inv.compose(&a).unwrap();
        assert_eq!(round, Isometry::identity(3));
        assert_eq!(a.compose(&inv).unwrap(), Isometry::identity(3));
    }

    #[test]
    fn swap_carries_types() {
        let l = LinearCode::from_generators(9, &[vec![2, 3]]).unwrap();
        let g = Isometry::new(&[2, 1], &[false, false]).unwrap();
        let img = apply_isometry_linear(&g, &l).unwrap();
        let expect = LinearCode::from_generators(9, &[vec![3, 2]]).unwrap();
        assert_eq!(img, expect);
        assert_eq!(img.types(1).unwrap().into_iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn orbit_of_cartesian_is_itself() {
        let l = LinearCode::from_generators(9, &[vec![3, 0], vec![0, 3]]).unwrap();
        let c = l.expand(10).unwrap();
        let orbit = isometry_orbit(&c).unwrap();
        assert_eq!(orbit.len(), 1);
        assert!(orbit.contains(&c));
    }

    #[test]
    fn refuses_tiny_alphabets() {
        let c = Code::new(3, &[vec![0, 0]]).unwrap();
        assert!(matches!(isometry_orbit(&c), Err(Error::Unsupported(_))));
        let g = Isometry::identity(2);
        assert!(matches!(apply_isometry(&g, &c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn all_isometries_count() {
        assert_eq!(all_isometries(1).unwrap().len(), 2);
        assert_eq!(all_isometries(2).unwrap().len(), 8);
        assert_eq!(all_isometries(3).unwrap().len(), 48);
    }
}
