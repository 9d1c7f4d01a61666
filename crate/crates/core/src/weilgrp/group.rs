use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

use super::matrix::FFMat;

/// A finite matrix group, stored as the full list of its elements.
#[derive(Clone, Debug)]
pub struct MatGroup {
    generators: Vec<FFMat>,
    elements: Vec<FFMat>,
}

impl MatGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn closure(generators: &[FFMat], cap: usize) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::Dimension("no generators".into()))?;
        let (field, n) = (first.field().clone(), first.dim());
        for g in generators {
            if g.field() != &field || g.dim() != n {
                return Err(Error::Dimension("generators differ in field or dimension".into()));
            }
            if g.det().is_zero() {
                return Err(Error::Singular);
            }
        }
        let id = FFMat::identity(&field, n);
        let mut seen: HashSet<Vec<u32>> = HashSet::from([id.entries().to_vec()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.mul_unchecked(g);
                if seen.insert(y.entries().to_vec()) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(MatGroup { generators: generators.to_vec(), elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[FFMat] {
        &self.generators
    }

    pub fn elements(&self) -> &[FFMat] {
        &self.elements
    }

    pub fn field(&self) -> &FieldSpec {
        self.elements[0].field()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    /// Evaluates `f` on every element (in parallel).
    pub fn class_function<F>(&self, name: &str, f: F) -> Result<ClassFunction>
    where
        F: Fn(&FFMat) -> Result<i64> + Sync,
    {
        let values = self.elements.par_iter().map(&f).collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { name: name.to_string(), order: self.order(), values })
    }

    /// Checks `f(g) = f(x g x⁻¹)` on `pairs` random pairs drawn with a fixed seed.
    pub fn conjugation_invariant<F>(&self, f: F, pairs: usize, seed: u64) -> Result<bool>
    where
        F: Fn(&FFMat) -> Result<i64>,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let g = &self.elements[rng.gen_range(0..self.order())];
            let x = &self.elements[rng.gen_range(0..self.order())];
            let c = x.mul_unchecked(g).mul_unchecked(&x.inverse()?);
            if f(g)? != f(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An integer-valued function on a group, aligned with its element list.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    pub name: String,
    order: usize,
    values: Vec<i64>,
}

impl ClassFunction {
    pub fn constant(group: &MatGroup, c: i64) -> Self {
        ClassFunction { name: format!("const {c}"), order: group.order(), values: vec![c; group.order()] }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Σ_g f(g) exactly.
    pub fn total(&self) -> BigInt {
        self.values.iter().map(|&v| BigInt::from(v)).sum()
    }

    /// `(1/|G|) Σ_g f₁(g) f₂(g)` (values are real, so no conjugation is needed).
    pub fn inner_product(&self, o: &ClassFunction) -> Result<BigRational> {
        if self.order != o.order || self.values.len() != o.values.len() {
            return Err(Error::Dimension(format!("class functions on groups of order {} and {}", self.order, o.order)));
        }
        let s: BigInt = self.values.par_iter().zip(&o.values).map(|(&a, &b)| BigInt::from(a) * b).sum();
        Ok(BigRational::new(s, BigInt::from(self.order)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn small_closures() {
        let k = make_field(3, 1).unwrap();
        let id = FFMat::identity(&k, 2);
        assert_eq!(MatGroup::closure(&[id], 10).unwrap().order(), 1);
        let t = FFMat::new(&k, 2, vec![1, 1, 0, 1]).unwrap();
        let j = FFMat::new(&k, 2, vec![0, 1, 2, 0]).unwrap();
        let g = MatGroup::closure(&[t.clone(), j.clone()], 100).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(MatGroup::closure(&[t, j], 10).unwrap_err(), Error::CapExceeded(10));
        let s = FFMat::new(&k, 2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(MatGroup::closure(&[s], 10).unwrap_err(), Error::Singular);
    }
}
