use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, NcPolynomial};

/// Rank of a polynomial family and, if it is dependent, one explicit
/// relation `Σ cᵢ·pᵢ = 0` whose first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence {
    pub rank: usize,
    pub dependency: Option<Vec<BigRational>>,
}

impl Independence {
    pub fn independent(&self) -> bool {
        self.dependency.is_none()
    }
}

type Sparse = BTreeMap<Monomial, BigRational>;

struct Row {
    pivot: Monomial,
    vector: Sparse,
    combination: Vec<BigRational>,
}

fn axpy(target: &mut Sparse, factor: &BigRational, source: &Sparse) {
    for (m, c) in source {
        let value = match target.remove(m) {
            Some(t) => t - factor * c,
            None => -(factor * c),
        };
        if !value.is_zero() {
            target.insert(m.clone(), value);
        }
    }
}

fn axpy_dense(target: &mut [BigRational], factor: &BigRational, source: &[BigRational]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

/// Exact Gaussian elimination over the union of supports, processing the
/// polynomials in order. The reported relation is the first one found.
pub fn linear_independence(ps: &[NcPolynomial]) -> Independence {
    let n = ps.len();
    let mut rows: Vec<Row> = Vec::new();
    let mut dependency = None;
    for (i, p) in ps.iter().enumerate() {
        let mut vector: Sparse = p.terms.clone();
        let mut combination = vec![BigRational::zero(); n];
        combination[i] = BigRational::one();
        for row in &rows {
            if let Some(c) = vector.get(&row.pivot) {
                let factor = c / &row.vector[&row.pivot];
                axpy(&mut vector, &factor, &row.vector);
                axpy_dense(&mut combination, &factor, &row.combination);
            }
        }
        match vector.keys().next().cloned() {
            Some(pivot) => rows.push(Row {
                pivot,
                vector,
                combination,
            }),
            None => {
                if dependency.is_none() {
                    dependency = Some(normalize(combination));
                }
            }
        }
    }
    Independence {
        rank: rows.len(),
        dependency,
    }
}

fn normalize(mut v: Vec<BigRational>) -> Vec<BigRational> {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        for c in &mut v {
            *c = &*c / &lead;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monalg::poly::int;

    #[test]
    fn basis_pair() {
        let r = linear_independence(&[
            NcPolynomial::from_words(&[&[0]]),
            NcPolynomial::from_words(&[&[1]]),
        ]);
        assert_eq!(
            r,
            Independence {
                rank: 2,
                dependency: None
            }
        );
    }

    #[test]
    fn sum_dependency() {
        let r = linear_independence(&[
            NcPolynomial::from_words(&[&[0], &[1]]),
            NcPolynomial::from_words(&[&[0]]),
            NcPolynomial::from_words(&[&[1]]),
        ]);
        assert_eq!(r.rank, 2);
        assert_eq!(r.dependency, Some(vec![int(1), int(-1), int(-1)]));
    }

    #[test]
    fn zero_polynomial_is_dependent() {
        let r = linear_independence(&[NcPolynomial::from_words(&[&[0]]), NcPolynomial::zero()]);
        assert_eq!(r.rank, 1);
        assert_eq!(r.dependency, Some(vec![int(0), int(1)]));
    }

    #[test]
    fn rational_relation() {
        // 2x + 3y = 2·x + 3·y
        let p = NcPolynomial::from_terms([(vec![0], int(2)), (vec![1], int(3))]);
        let r = linear_independence(&[
            NcPolynomial::from_words(&[&[0]]),
            NcPolynomial::from_words(&[&[1]]),
            p,
        ]);
        let half = |n: i64| int(n) / int(2);
        assert_eq!(r.dependency, Some(vec![int(1), half(3), half(-1)]));
    }
}
