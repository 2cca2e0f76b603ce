//! Weights: exact rational coordinate vectors tagged by their ambient space.
//!
//! A `WeightSpace` fixes a coordinate system on (the real span of) a Cartan
//! dual together with the matrix of the inner product in those coordinates.
//! The same machinery serves torus-character lattices, root-coordinate
//! realizations and the split parts a_P of parabolics; only the gram matrix
//! differs.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::num::{fmt_rat, Rat, Scalar};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SpaceTag(pub String);

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl SpaceTag {
    pub fn new(s: impl Into<String>) -> Self {
        SpaceTag(s.into())
    }
}

/// Coordinate model of a weight space: dimension + inner-product matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightSpace {
    pub tag: SpaceTag,
    /// Symmetric positive-definite matrix of the inner product in these
    /// coordinates (for torus-character coordinates this is the dual gram).
    pub gram: Mat<Rat>,
}

impl WeightSpace {
    pub fn new(tag: impl Into<String>, gram: Mat<Rat>) -> Self {
        assert!(gram.is_square());
        WeightSpace { tag: SpaceTag::new(tag), gram }
    }

    /// Euclidean coordinates: gram = identity.
    pub fn euclidean(tag: impl Into<String>, dim: usize) -> Self {
        WeightSpace { tag: SpaceTag::new(tag), gram: Mat::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows
    }

    pub fn zero(&self) -> Weight {
        Weight { tag: self.tag.clone(), coords: vec![Rat::zero(); self.dim()] }
    }

    pub fn weight(&self, coords: Vec<Rat>) -> Weight {
        assert_eq!(coords.len(), self.dim(), "coordinate length vs space rank");
        Weight { tag: self.tag.clone(), coords }
    }

    pub fn weight_i64(&self, coords: &[i64]) -> Weight {
        self.weight(coords.iter().map(|&n| crate::num::rint(n)).collect())
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.tag != self.tag {
            return Err(Error::SpaceMismatch {
                expected: self.tag.0.clone(),
                got: w.tag.0.clone(),
            });
        }
        if w.coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} coordinates, space `{}` has rank {}",
                w.coords.len(),
                self.tag,
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Result<Rat> {
        self.check(a)?;
        self.check(b)?;
        let gb = self.gram.matvec(&b.coords);
        let mut acc = Rat::zero();
        for (x, y) in a.coords.iter().zip(&gb) {
            acc += x * y;
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, w: &Weight) -> Result<Rat> {
        self.inner(w, w)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub tag: SpaceTag,
    pub coords: Vec<Rat>,
}

impl Weight {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Weight) -> Weight {
        assert_eq!(self.tag, o.tag, "weight space tags differ");
        Weight {
            tag: self.tag.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        assert_eq!(self.tag, o.tag, "weight space tags differ");
        Weight {
            tag: self.tag.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight { tag: self.tag.clone(), coords: self.coords.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, s: &Rat) -> Weight {
        Weight { tag: self.tag.clone(), coords: self.coords.iter().map(|a| a * s).collect() }
    }

    /// All-coordinates-integer test (weight-lattice membership for shift 0).
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom() == &num_bigint::BigInt::from(1))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.tag)
    }
}

/// Linear map between weight spaces, e.g. restriction to a subgroup torus.
#[derive(Clone, Debug)]
pub struct WeightMap {
    pub from: SpaceTag,
    pub to: WeightSpace,
    /// to.dim() x from-dim matrix acting on coordinates.
    pub matrix: Mat<Rat>,
}

impl WeightMap {
    pub fn apply(&self, w: &Weight) -> Result<Weight> {
        if w.tag != self.from {
            return Err(Error::SpaceMismatch { expected: self.from.0.clone(), got: w.tag.0.clone() });
        }
        if w.coords.len() != self.matrix.ncols {
            return Err(Error::DimensionMismatch("weight map arity".into()));
        }
        Ok(self.to.weight(self.matrix.matvec(&w.coords)))
    }
}

/// Serialization helper: weights as lists of "p/q" strings.
pub mod serde_weight {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct WeightRepr {
        pub tag: String,
        pub coords: Vec<String>,
    }

    pub fn to_repr(w: &Weight) -> WeightRepr {
        WeightRepr { tag: w.tag.0.clone(), coords: w.coords.iter().map(fmt_rat).collect() }
    }

    pub fn from_repr(r: &WeightRepr) -> Result<Weight> {
        let coords = r
            .coords
            .iter()
            .map(|s| crate::num::parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { tag: SpaceTag::new(r.tag.clone()), coords })
    }
}

pub fn mat_to_strings(m: &Mat<Rat>) -> Vec<Vec<String>> {
    (0..m.nrows)
        .map(|r| (0..m.ncols).map(|c| fmt_rat(m.at(r, c))).collect())
        .collect()
}

pub fn mat_from_strings(rows: &[Vec<String>]) -> Result<Mat<Rat>> {
    let parsed: Result<Vec<Vec<Rat>>> = rows
        .iter()
        .map(|r| r.iter().map(|s| crate::num::parse_rat(s)).collect())
        .collect();
    Ok(Mat::from_rows(parsed?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rint, rq};

    #[test]
    fn inner_products_respect_gram() {
        let s = WeightSpace::new("t", Mat::from_rows(vec![vec![rq(1, 2)]]));
        let w = s.weight(vec![rint(4)]);
        assert_eq!(s.norm_sq(&w).unwrap(), rint(8));
        let e = WeightSpace::euclidean("u2", 2);
        let a = e.weight_i64(&[3, -1]);
        assert_eq!(e.norm_sq(&a).unwrap(), rint(10));
    }

    #[test]
    fn tag_mismatch_rejected() {
        let s = WeightSpace::euclidean("a", 1);
        let t = WeightSpace::euclidean("b", 1);
        let w = t.weight_i64(&[1]);
        assert!(matches!(s.norm_sq(&w), Err(Error::SpaceMismatch { .. })));
    }
}
