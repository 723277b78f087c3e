//! Literal N×N matrices for small instances.
//!
//! Entries are exact rationals. For arithmetic the matrix is rescaled to an
//! integer matrix (clearing denominators) and worked on with checked `i128`,
//! falling back to `BigInt` when an intermediate overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSymmetricMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl DenseSymmetricMatrix {
    /// Row-major entries; rejects non-square or non-symmetric input.
    pub fn new(order: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(domain(format!(
                "{} entries for a {order}x{order} matrix",
                entries.len()
            )));
        }
        for i in 0..order {
            for j in 0..i {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(domain(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> Rational {
        (0..self.order).map(|i| self.get(i, i).clone()).sum()
    }

    /// `scale · A` as an integer matrix, with the smallest positive `scale`.
    pub fn to_scaled_integer(&self) -> ScaledMatrix {
        let scale = self
            .entries
            .iter()
            .filter(|e| !e.denom().is_one())
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let data: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| {
                if e.denom().is_one() {
                    e.numer() * &scale
                } else {
                    e.numer() * (&scale / e.denom())
                }
            })
            .collect();
        ScaledMatrix::new(self.order, scale, data)
    }
}

/// An integer matrix `M = scale · A`.
#[derive(Debug, Clone)]
pub struct ScaledMatrix {
    pub order: usize,
    pub scale: BigInt,
    pub data: Vec<BigInt>,
    small: Option<Vec<i128>>,
}

impl ScaledMatrix {
    pub fn new(order: usize, scale: BigInt, data: Vec<BigInt>) -> Self {
        let small = data.iter().map(|x| x.to_i128()).collect();
        Self { order, scale, data, small }
    }

    /// `Σ M_ij²`, i.e. `tr(M²)` for symmetric `M`.
    pub fn frobenius_squared(&self) -> BigInt {
        if let Some(m) = &self.small {
            let acc = m.iter().try_fold(0i128, |acc, &x| acc.checked_add(x.checked_mul(x)?));
            if let Some(acc) = acc {
                return acc.into();
            }
        }
        self.data.iter().map(|x| x * x).sum()
    }

    /// `Π_l (M − shift_l I) v` applied right to left.
    pub fn apply_poly(&self, shifts: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        if let (Some(m), Some(s), Some(x)) = (
            self.small.as_ref(),
            shifts.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>(),
            v.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>(),
        ) {
            if let Some(out) = apply_poly_generic(m, self.order, &s, x) {
                return out.into_iter().map(BigInt::from).collect();
            }
        }
        apply_poly_generic(&self.data, self.order, shifts, v.to_vec()).expect("BigInt never overflows")
    }

    /// `M^p v` for `p = 0..=max_power`.
    pub fn krylov(&self, v: &[BigInt], max_power: usize) -> Vec<Vec<BigInt>> {
        let mut out = vec![v.to_vec()];
        for _ in 0..max_power {
            let next = self.apply_poly(&[BigInt::zero()], out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Rank of `M − shift·I` by fraction-free elimination.
    pub fn shifted_rank(&self, shift: &BigInt) -> usize {
        let n = self.order;
        let mut a: Vec<BigInt> = self.data.clone();
        for i in 0..n {
            a[i * n + i] -= shift;
        }
        bareiss_rank(&mut a, n)
    }

    /// Eigenvalues of the integer matrix, assuming it is symmetric with
    /// integral spectrum. Candidates are scanned over the Gershgorin range and
    /// multiplicities read off as nullities. Fails if the nullities do not add
    /// up to the order (some eigenvalue is not an integer).
    pub fn integer_spectrum(&self) -> Result<Vec<(BigInt, usize)>> {
        let n = self.order;
        let radius = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].iter().map(|x| x.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default();
        let radius = radius
            .to_i64()
            .ok_or_else(|| domain("Gershgorin radius too large for an eigenvalue scan"))?;
        let mut found = Vec::new();
        let mut total = 0;
        for lambda in -radius..=radius {
            let lambda = BigInt::from(lambda);
            let nullity = n - self.shifted_rank(&lambda);
            if nullity > 0 {
                total += nullity;
                found.push((lambda, nullity));
                if total == n {
                    return Ok(found);
                }
            }
        }
        Err(domain(format!(
            "only {total} of {n} eigenvalues are integers in [-{radius}, {radius}]"
        )))
    }
}

fn apply_poly_generic<T>(m: &[T], n: usize, shifts: &[T], mut v: Vec<T>) -> Option<Vec<T>>
where
    T: Clone + Zero + CheckedMul + CheckedAdd + CheckedSub,
{
    for shift in shifts.iter().rev() {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let row = &m[i * n..(i + 1) * n];
            let mut acc = T::zero();
            for (a, x) in row.iter().zip(&v) {
                if a.is_zero() || x.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&a.checked_mul(x)?)?;
            }
            acc = acc.checked_sub(&shift.checked_mul(&v[i])?)?;
            next.push(acc);
        }
        v = next;
    }
    Some(v)
}

fn bareiss_rank(a: &mut [BigInt], n: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..n {
        let Some(pivot) = (row..n).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        if pivot != row {
            for c in 0..n {
                a.swap(pivot * n + c, row * n + c);
            }
        }
        let p = a[row * n + col].clone();
        for r in row + 1..n {
            let f = a[r * n + col].clone();
            for c in col..n {
                let v = (&p * &a[r * n + c] - &f * &a[row * n + c]) / &prev;
                a[r * n + c] = v;
            }
        }
        prev = p;
        row += 1;
        rank += 1;
        if row == n {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::from_int;

    fn mat(order: usize, v: &[i64]) -> DenseSymmetricMatrix {
        DenseSymmetricMatrix::new(order, v.iter().map(|&x| from_int(x)).collect()).unwrap()
    }

    #[test]
    fn rejects_asymmetric() {
        let e = [0, 1, 2, 0].iter().map(|&x| from_int(x)).collect();
        assert!(DenseSymmetricMatrix::new(2, e).is_err());
    }

    #[test]
    fn scaling_clears_denominators() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let m = DenseSymmetricMatrix::new(2, vec![half.clone(), third.clone(), third, half]).unwrap();
        let s = m.to_scaled_integer();
        assert_eq!(s.scale, BigInt::from(6));
        assert_eq!(s.data, vec![3.into(), 2.into(), 2.into(), 3.into()]);
    }

    #[test]
    fn triangle_spectrum() {
        let k3 = mat(3, &[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        let spec = k3.to_scaled_integer().integer_spectrum().unwrap();
        assert_eq!(spec, vec![(BigInt::from(-1), 2), (BigInt::from(2), 1)]);
    }

    #[test]
    fn non_integral_spectrum_is_reported() {
        // Path on two vertices with weight 1 plus a loop: eigenvalues (1 ± √5)/2.
        let m = mat(2, &[1, 1, 1, 0]);
        assert!(m.to_scaled_integer().integer_spectrum().is_err());
    }

    #[test]
    fn poly_application_overflow_falls_back() {
        let big = i64::MAX;
        let m = mat(2, &[big, big, big, big]);
        let s = m.to_scaled_integer();
        let v = vec![BigInt::from(big), BigInt::from(big)];
        let out = s.apply_poly(&[BigInt::zero(), BigInt::zero()], &v);
        let expected: BigInt = num_traits::pow(BigInt::from(big), 3) * 4;
        assert_eq!(out, vec![expected.clone(), expected]);
    }
}
