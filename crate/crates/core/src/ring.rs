//! Integral group ring ℤΓ and boundary matrices over it.
//!
//! Elements are stored in normal form: a sorted map from group elements
//! to nonzero integer coefficients. Matrices of ring elements are the
//! equivariant boundary maps; the composition convention matches left
//! ℤΓ-modules, so the Fox identity Σ_x (∂r/∂x)(x − 1) = r − 1 makes
//! ∂∘∂ vanish exactly.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::LabError;
use crate::group::{GroupElement, GroupSpec};

/// An element of ℤΓ in normal form (no zero coefficients stored).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn term(coeff: i64, g: GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(g, coeff);
        }
        GroupRingElement { terms }
    }

    pub fn one(spec: &GroupSpec) -> Self {
        GroupRingElement::term(1, spec.identity())
    }

    /// g − 1, the ubiquitous augmentation-ideal generator.
    pub fn gen_minus_one(spec: &GroupSpec, g: GroupElement) -> Self {
        let mut e = GroupRingElement::term(1, g);
        e.add_term(-1, spec.identity());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, i64)> {
        self.terms.iter().map(|(g, &c)| (g, c))
    }

    pub fn coeff(&self, g: &GroupElement) -> i64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, coeff: i64, g: GroupElement) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.iter() {
            out.add_term(c, g.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Ring product; requires the spec for the group multiplication.
    pub fn mul(&self, other: &Self, spec: &GroupSpec) -> Result<Self, LabError> {
        let mut out = GroupRingElement::zero();
        for (g, cg) in self.iter() {
            for (h, ch) in other.iter() {
                out.add_term(cg * ch, spec.multiply(g, h)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(g, c)| format!("{c}*{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A dense matrix of group-ring elements (boundary maps are tiny:
/// orbit-count by orbit-count).
#[derive(Debug, Clone)]
pub struct RingMatrix {
    pub nrows: usize,
    pub ncols: usize,
    entries: Vec<GroupRingElement>,
}

impl RingMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RingMatrix {
            nrows,
            ncols,
            entries: vec![GroupRingElement::zero(); nrows * ncols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<GroupRingElement>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols));
        RingMatrix {
            nrows,
            ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &GroupRingElement {
        &self.entries[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GroupRingElement) {
        self.entries[r * self.ncols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Composite boundary ∂_j ∘ ∂_{j+1} as a group-ring matrix.
    ///
    /// Left-module convention: entry (p, q) = Σ_m next[m][q] · this[p][m],
    /// with the later boundary's entries multiplying from the left. With
    /// Fox-derivative boundary matrices this is exactly the telescoping
    /// product that vanishes.
    pub fn boundary_product(
        &self,
        next: &RingMatrix,
        spec: &GroupSpec,
    ) -> Result<RingMatrix, LabError> {
        assert_eq!(self.ncols, next.nrows, "boundary shapes do not chain");
        let mut out = RingMatrix::zeros(self.nrows, next.ncols);
        for p in 0..self.nrows {
            for q in 0..next.ncols {
                let mut acc = GroupRingElement::zero();
                for m in 0..self.ncols {
                    let prod = next.get(m, q).mul(self.get(p, m), spec)?;
                    acc = acc.add(&prod);
                }
                out.set(p, q, acc);
            }
        }
        Ok(out)
    }
}
