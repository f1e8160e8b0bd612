//! Constructors restricted to an exponent group `G`.

use std::cmp::Ordering;

use num_rational::BigRational;

use crate::boxmod::BoxModule;
use crate::complexes::BoxComplex;
use crate::error::{Error, Result};
use crate::exponents::{ExponentGroup, ExponentValue, ExponentVector};

use super::{ordinary_koszul, orthant_resolution, OrthantResolution, TruncationSequence};

/// An exponent group whose coordinate rays are all nontrivial, together with
/// checked versions of the constructors.
#[derive(Clone, Debug)]
pub struct GroupContext {
    group: ExponentGroup,
}

impl GroupContext {
    /// Fails unless every ray intersection `G ∩ ℝeᵢ` is nonzero.
    pub fn new(group: ExponentGroup) -> Result<Self> {
        for axis in 0..group.dimension() {
            if let Some(gens) = group.ray_intersection(axis)? {
                if gens.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "G meets coordinate ray {axis} only in 0"
                    )));
                }
            }
        }
        Ok(GroupContext { group })
    }

    pub fn group(&self) -> &ExponentGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.group.dimension()
    }

    /// `v ∈ G₊`.
    pub fn check_exponent(&self, v: &ExponentVector) -> Result<()> {
        if self.group.is_member(v)? && v.is_nonnegative()? {
            Ok(())
        } else {
            Err(Error::NotInGroup(format!("{v} is not in G₊")))
        }
    }

    /// Every entry in `G₊`, with its projections to the open coordinates in `G`.
    pub fn check_sequence(&self, seq: &TruncationSequence) -> Result<()> {
        for e in seq.entries() {
            self.check_exponent(e)?;
            if seq.sigma().iter().all(|&s| s) {
                if !self.group.in_open_cone(e)? {
                    return Err(Error::NotInOpenCone(e.to_string()));
                }
                continue;
            }
            for i in (0..seq.dimension()).filter(|&i| seq.sigma()[i]) {
                if !self.group.is_member(&e.projection(i))? {
                    return Err(Error::NotInOpenCone(format!(
                        "{e}: projection to coordinate {i} leaves G"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coordinatewise minimum of two members of `G̊₊`, again in `G̊₊`.
    pub fn meet(&self, a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
        for v in [a, b] {
            self.check_exponent(v)?;
            for i in 0..v.len() {
                if !self.group.is_member(&v.projection(i))? {
                    return Err(Error::NotInOpenCone(v.to_string()));
                }
            }
        }
        let m = a.meet(b)?;
        self.check_exponent(&m)?;
        Ok(m)
    }

    /// `count` strictly decreasing positive elements of `G ∩ ℝeᵢ`.
    ///
    /// With two or more ray generators these are the successive Euclidean
    /// remainders of the two smallest, which tend to `0` when the ray is
    /// dense. A discrete ray `gℤ` admits no such sequence; there the values
    /// `(count − k)·g` are returned, a finite truncation that stays in `G`.
    /// The full group uses `2⁻ᵏ`.
    pub fn ray_sequence(&self, axis: usize, count: usize) -> Result<Vec<ExponentValue>> {
        let gens = match self.group.ray_intersection(axis)? {
            None => {
                let half = BigRational::new(1.into(), 2.into());
                let mut out = vec![ExponentValue::from_integer(1)];
                while out.len() < count {
                    let next = out.last().expect("nonempty").scale(&half);
                    out.push(next);
                }
                out.truncate(count);
                return Ok(out);
            }
            Some(g) => g,
        };
        let mut positive = Vec::new();
        for g in gens {
            positive.push(match g.signum_with(&Default::default())? {
                Ordering::Less => -&g,
                _ => g,
            });
        }
        if positive.len() == 1 {
            let g = &positive[0];
            return Ok((0..count)
                .map(|k| g.scale_int(&((count - k) as i64).into()))
                .collect());
        }
        let mut sorted = positive;
        let mut order: Vec<usize> = (0..sorted.len()).collect();
        let mut err = None;
        order.sort_by(|&i, &j| {
            sorted[i].compare(&sorted[j]).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        sorted = order.into_iter().map(|i| sorted[i].clone()).collect();
        let (mut a, mut b) = (sorted[1].clone(), sorted[0].clone());
        let mut out = vec![a.clone(), b.clone()];
        while out.len() < count {
            let mut r = a.clone();
            while b.le(&r)? {
                r = &r - &b;
            }
            if r.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "ray {axis} is discrete below {b}; no further elements"
                )));
            }
            out.push(r.clone());
            a = b;
            b = r;
        }
        out.truncate(count);
        Ok(out)
    }

    /// A truncation sequence of depth `depth` open along `sigma`, built from
    /// ray sequences so that every projection stays in `G`.
    pub fn ray_truncation(&self, sigma: &[bool], depth: usize) -> Result<TruncationSequence> {
        let n = self.dimension();
        let mut columns = Vec::new();
        for i in 0..n {
            columns.push(if sigma[i] {
                Some(self.ray_sequence(i, depth + 1)?)
            } else {
                None
            });
        }
        let entries = (0..=depth)
            .map(|k| {
                columns
                    .iter()
                    .map(|c| {
                        c.as_ref()
                            .map_or_else(ExponentValue::zero, |c| c[k].clone())
                    })
                    .collect()
            })
            .collect();
        let seq = TruncationSequence::new(sigma.to_vec(), entries)?;
        self.check_sequence(&seq)?;
        Ok(seq)
    }

    pub fn ordinary_koszul(&self, eps: &ExponentVector) -> Result<BoxComplex> {
        self.check_exponent(eps)?;
        for i in 0..eps.len() {
            self.check_exponent(&eps.projection(i))?;
        }
        ordinary_koszul(eps)
    }

    pub fn orthant_resolution(
        &self,
        sigma: &[bool],
        seq: &TruncationSequence,
    ) -> Result<OrthantResolution> {
        self.check_sequence(seq)?;
        orthant_resolution(sigma, seq)
    }

    /// Boxes must have all endpoints in `G`.
    pub fn check_box(&self, b: &BoxModule) -> Result<()> {
        for (i, interval) in b.intervals().iter().enumerate() {
            for v in interval.endpoints() {
                let mut e = ExponentVector::zeros(b.dimension()).into_entries();
                e[i] = v.clone();
                let e = ExponentVector::new(e);
                if !self.group.is_member(&e)? {
                    return Err(Error::NotInGroup(format!("endpoint {v} of {b}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::dense_example_group;

    #[test]
    fn dense_example_sequences() {
        let ctx = GroupContext::new(dense_example_group()).unwrap();
        for axis in 0..2 {
            let seq = ctx.ray_sequence(axis, 8).unwrap();
            for w in seq.windows(2) {
                assert!(w[1].lt(&w[0]).unwrap());
                assert!(w[1].signum_with(&Default::default()).unwrap() == Ordering::Greater);
            }
        }
        let t = ctx.ray_truncation(&[true, true], 6).unwrap();
        assert_eq!(t.depth(), 6);
        // geometric sequences through (1,1) leave G̊₊
        let g = TruncationSequence::geometric(
            &[true, true],
            &ExponentVector::from_integers(&[1, 1]),
            2,
        )
        .unwrap();
        assert!(matches!(
            ctx.check_sequence(&g),
            Err(Error::NotInOpenCone(_))
        ));
        let g2 = TruncationSequence::geometric(
            &[true, true],
            &ExponentVector::from_integers(&[2, 2]),
            0,
        )
        .unwrap();
        assert!(ctx.check_sequence(&g2).is_ok());
    }

    #[test]
    fn meet_stays_in_open_cone() {
        let ctx = GroupContext::new(dense_example_group()).unwrap();
        let t = ctx.ray_truncation(&[true, true], 3).unwrap();
        let (a, b) = (&t.entries()[1], &t.entries()[3]);
        let swapped = ExponentVector::new(vec![b[0].clone(), a[1].clone()]);
        let m = ctx.meet(a, &swapped).unwrap();
        assert!(ctx.group().in_open_cone(&m).unwrap());
        assert!(ctx
            .meet(&ExponentVector::from_integers(&[1, 1]), a)
            .is_err());
    }

    #[test]
    fn rational_lattice_accepts_positive_members() {
        let ctx = GroupContext::new(ExponentGroup::rational_lattice(2, 3)).unwrap();
        let seq = ctx.ray_sequence(0, 4).unwrap();
        assert_eq!(seq[3], ExponentValue::from_ratio(1, 3));
        let v = ExponentVector::new(vec![
            ExponentValue::from_ratio(2, 3),
            ExponentValue::from_ratio(1, 3),
        ]);
        assert!(ctx.ordinary_koszul(&v).is_ok());
        let bad = ExponentVector::new(vec![
            ExponentValue::from_ratio(1, 2),
            ExponentValue::from_ratio(1, 3),
        ]);
        assert!(matches!(
            ctx.ordinary_koszul(&bad),
            Err(Error::NotInGroup(_))
        ));
    }
}
