//! Crossed products by the group of order two and invariant subalgebras.

use super::{Coordinates, Elem, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::sparse::{self, SparseVec};

/// An involutive automorphism `sigma` of an algebra, given by its matrix.
#[derive(Clone, Debug)]
pub struct GroupAction2 {
    sigma: Matrix<Scalar>,
}

impl GroupAction2 {
    /// Checks `sigma^2 = 1`, unit preservation and multiplicativity on basis pairs.
    pub fn new(alg: &FinDimAlgebra, sigma: Matrix<Scalar>) -> Result<Self> {
        let n = alg.dim();
        if sigma.shape() != (n, n) {
            return Err(Error::InvalidAction(format!("matrix {:?} for dimension {n}", sigma.shape())));
        }
        if !sigma.mul(&sigma).is_identity() {
            return Err(Error::InvalidAction("sigma^2 != 1".into()));
        }
        if sigma.apply(alg.unit()) != *alg.unit() {
            return Err(Error::InvalidAction("unit is not fixed".into()));
        }
        let act = GroupAction2 { sigma };
        let images: Vec<SparseVec<Scalar>> = (0..n).map(|i| act.image_of_basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = act.apply_sparse(alg.basis_product(i, j));
                let mut rhs: SparseVec<Scalar> = Vec::new();
                for (k, c) in &images[i] {
                    rhs = sparse::axpy(&rhs, c, &alg.mul_basis_sparse(*k, &images[j]));
                }
                if lhs != rhs {
                    return Err(Error::InvalidAction(format!(
                        "sigma fails on {} * {}",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(act)
    }

    pub fn trivial(alg: &FinDimAlgebra) -> Self {
        GroupAction2 { sigma: Matrix::identity(alg.dim()) }
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.sigma
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        self.sigma.apply(x)
    }

    fn image_of_basis(&self, i: usize) -> SparseVec<Scalar> {
        sparse::from_dense(&self.sigma.col(i))
    }

    fn apply_sparse(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut out: SparseVec<Scalar> = Vec::new();
        for (j, c) in v {
            out = sparse::axpy(&out, c, &self.image_of_basis(*j));
        }
        out
    }
}

/// `Gamma[G]` with basis `b_i[e]` (indices `0..n`) then `b_i[sigma]`, and
/// product `a[f] b[g] = a f(b) [fg]`.
pub fn crossed_product(alg: &FinDimAlgebra, act: &GroupAction2) -> Result<FinDimAlgebra> {
    let n = alg.dim();
    let images: Vec<SparseVec<Scalar>> = (0..n).map(|i| act.image_of_basis(i)).collect();
    let mut labels: Vec<String> = alg.labels().iter().map(|l| format!("{l}[e]")).collect();
    labels.extend(alg.labels().iter().map(|l| format!("{l}[s]")));
    let mut unit = alg.unit().clone();
    unit.extend(vec![Scalar::zero(); n]);
    FinDimAlgebra::from_rule(labels, unit, |a, b| {
        let (i, f) = (a % n, a / n);
        let (j, g) = (b % n, b / n);
        let prod = if f == 0 {
            alg.basis_product(i, j).clone()
        } else {
            alg.mul_basis_sparse(i, &images[j])
        };
        let shift = ((f + g) % 2) * n;
        prod.into_iter().map(|(k, v)| (k + shift, v)).collect()
    })
}

/// Fixed subalgebra of the action, with its basis inside the ambient algebra.
pub fn invariant_subalgebra(alg: &FinDimAlgebra, act: &GroupAction2) -> Result<(FinDimAlgebra, Vec<Elem>)> {
    let n = alg.dim();
    let diff = act.sigma.sub(&Matrix::identity(n));
    let basis = diff.kernel();
    let labels = (0..basis.len()).map(|i| format!("g{i}")).collect();
    let sub = alg.subalgebra(&basis, alg.unit(), labels)?;
    Ok((sub, basis))
}

/// Coordinates of ambient elements in an invariant subalgebra basis.
pub fn invariant_coordinates(basis: &[Elem]) -> Result<Coordinates> {
    Coordinates::new(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conjugation() -> (FinDimAlgebra, GroupAction2) {
        let c = FinDimAlgebra::gaussian_field();
        let s = Matrix::<Scalar>::from_i64(&[&[1, 0], &[0, -1]]);
        let act = GroupAction2::new(&c, s).unwrap();
        (c, act)
    }

    #[test]
    fn galois_crossed_product_is_split() {
        let (c, act) = conjugation();
        let b = crossed_product(&c, &act).unwrap();
        assert_eq!(b.dim(), 4);
        b.check_associative().unwrap();
        b.check_unit().unwrap();
        assert!(b.is_semisimple());
        assert_eq!(b.center().len(), 1);
        let (fixed, _) = invariant_subalgebra(&c, &act).unwrap();
        assert_eq!(fixed.dim(), 1);
    }

    #[test]
    fn trivial_action_gives_group_algebra() {
        let q = FinDimAlgebra::from_rule(vec!["1".into()], vec![Scalar::one()], |_, _| vec![(0, Scalar::one())]).unwrap();
        let g = crossed_product(&q, &GroupAction2::trivial(&q)).unwrap();
        let half = Scalar::frac(1, 2);
        let p = vec![half.clone(), half.clone()];
        assert_eq!(g.mul(&p, &p), p);
        assert_eq!(g.basis_product(1, 1), &vec![(0, Scalar::one())]);
    }

    #[test]
    fn non_automorphism_rejected() {
        let c = FinDimAlgebra::gaussian_field();
        let s = Matrix::<Scalar>::from_i64(&[&[1, 0], &[0, 2]]);
        assert!(GroupAction2::new(&c, s).is_err());
    }
}
