//! The Bose–Mesner algebra of the Johnson scheme `J(n, k)`.
//!
//! A *profile matrix* has entries `A(x, y) = f(|x ∩ y|)`. Writing
//! `A = Σ_i b_i B_i` in the standard basis `B_i(x, y) = C(|x \ y|, i)` gives
//! the spectrum in closed form:
//!
//! ```text
//! μ_j(B_i) = (−1)^j · C(k−j, i−j) · C(n−i−j, k−j)
//! λ_j      = Σ_i b_i · μ_j(B_i)          j = 0..=min(k, n−k)
//! mult_j   = C(n, j) − C(n, j−1)
//! ```
//!
//! The closed forms need `n ≥ 2k`. Smaller `n` is handled by passing to
//! complements: `x ↦ [n] \ x` maps `J(n, k)` onto `J(n, n−k)` and
//! `|x̄ ∩ ȳ| = n − 2k + |x ∩ y|`, so the profile is shifted accordingly.
//!
//! The dense oracle in [`verify_spectrum_dense`] checks closed-form spectra
//! against the literal matrix. Every profile matrix commutes with the
//! permutation action of `S_n`, which is transitive on k-subsets, so a matrix
//! polynomial in `A` vanishes iff its first column does and all its diagonal
//! entries agree. Above [`FULL_COLUMN_LIMIT`] vertices the oracle uses that
//! reduction; below it every column is checked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{all_subsets, binomial, choose, meet, vertex_count, KSubset};
use crate::dense::{DenseSymmetricMatrix, ScaledMatrix};
use crate::error::{domain, Error, Result};
use crate::ratio::{self, from_int};
use crate::Rational;

/// Default vertex cap for the dense routines.
pub const DENSE_CAP: usize = 500;
/// Largest order for which the dense oracle checks every column.
pub const FULL_COLUMN_LIMIT: usize = 128;

/// `A(x, y) = f[|x ∩ y|]` on k-subsets of an n-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileMatrixSpec {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "profile", serialize_with = "ratio::ser_vec")]
    pub f: Vec<Rational>,
}

impl ProfileMatrixSpec {
    pub fn new(n: usize, k: usize, f: Vec<Rational>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(domain(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        if f.len() != k + 1 {
            return Err(domain(format!("profile needs {} values, got {}", k + 1, f.len())));
        }
        Ok(Self { n, k, f })
    }

    /// Indicator of intersection size `s`: the adjacency matrix of `J(n, k, s)`.
    pub fn delta(n: usize, k: usize, s: usize) -> Result<Self> {
        if s > k {
            return Err(domain(format!("intersection size {s} exceeds k = {k}")));
        }
        let f = (0..=k).map(|i| from_int(i64::from(i == s))).collect();
        Self::new(n, k, f)
    }

    /// Every entry set to `value`.
    pub fn constant(n: usize, k: usize, value: Rational) -> Result<Self> {
        Self::new(n, k, vec![value; k + 1])
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.f[self.k].is_zero()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { n: self.n, k: self.k, f: self.f.iter().map(|v| v * c).collect() }
    }

    pub fn entry(&self, x: &KSubset, y: &KSubset) -> Rational {
        self.f[meet(x.elements(), y.elements())].clone()
    }

    /// Number of classes of the scheme, `min(k, n−k)`.
    pub fn classes(&self) -> usize {
        self.k.min(self.n - self.k)
    }

    fn complement(&self) -> Self {
        let k = self.n - self.k;
        let offset = 2 * self.k - self.n;
        Self { n: self.n, k, f: (0..=k).map(|s| self.f[s + offset].clone()).collect() }
    }
}

/// Coefficients of a profile matrix in the basis `B_0..B_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCoefficients {
    #[serde(serialize_with = "ratio::ser_vec")]
    pub b: Vec<Rational>,
}

impl BasisCoefficients {
    /// The profile `f(k−d) = Σ_i b_i C(d, i)` these coefficients represent.
    pub fn reconstruct(&self) -> Vec<Rational> {
        let k = self.b.len() - 1;
        let mut f = vec![Rational::zero(); k + 1];
        for d in 0..=k {
            f[k - d] = self
                .b
                .iter()
                .enumerate()
                .map(|(i, b)| b * from_int(choose(d, i)))
                .sum();
        }
        f
    }
}

/// Binomial inversion: `b_i = Σ_{d ≤ i} (−1)^{i−d} C(i, d) f(k−d)`.
pub fn decompose(spec: &ProfileMatrixSpec) -> BasisCoefficients {
    let k = spec.k;
    let b = (0..=k)
        .map(|i| {
            (0..=i)
                .map(|d| {
                    let c = from_int(choose(i, d)) * &spec.f[k - d];
                    if (i - d) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .sum()
        })
        .collect();
    BasisCoefficients { b }
}

/// `μ_j` of `B_i` on `J(n, k)`; requires `n ≥ 2k`.
pub fn basis_eigenvalue(i: usize, j: usize, n: usize, k: usize) -> Result<BigInt> {
    if n < 2 * k {
        return Err(domain(format!("closed form needs n >= 2k, got n = {n}, k = {k}")));
    }
    if i > k || j > k {
        return Err(domain(format!("indices i = {i}, j = {j} outside 0..={k}")));
    }
    let (i, j, n, k) = (i as i64, j as i64, n as i64, k as i64);
    let v = binomial(k - j, i - j)? * binomial(n - i - j, k - j)?;
    Ok(if j % 2 == 0 { v } else { -v })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ratio::ser_vec")]
    pub profile: Vec<Rational>,
    #[serde(serialize_with = "ratio::ser_vec")]
    pub lambdas: Vec<Rational>,
    #[serde(serialize_with = "ser_counts")]
    pub multiplicities: Vec<BigInt>,
}

impl Spectrum {
    pub fn max(&self) -> &Rational {
        self.lambdas.iter().max().expect("non-empty spectrum")
    }

    pub fn min(&self) -> &Rational {
        self.lambdas.iter().min().expect("non-empty spectrum")
    }

    /// Distinct eigenvalues with their combined multiplicities, ascending.
    pub fn distinct(&self) -> Vec<(Rational, BigInt)> {
        let mut pairs: Vec<(Rational, BigInt)> = Vec::new();
        for (l, m) in self.lambdas.iter().zip(&self.multiplicities) {
            match pairs.iter_mut().find(|(v, _)| v == l) {
                Some((_, acc)) => *acc += m,
                None => pairs.push((l.clone(), m.clone())),
            }
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        pairs
    }

    /// `Σ_j mult_j · λ_j^p`.
    pub fn power_sum(&self, p: u32) -> Rational {
        self.lambdas
            .iter()
            .zip(&self.multiplicities)
            .map(|(l, m)| from_int(m.clone()) * num_traits::pow(l.clone(), p as usize))
            .sum()
    }
}

/// Multiplicities are JSON numbers while they fit in `u64`, decimal strings beyond.
fn ser_counts<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    #[serde(untagged)]
    enum Count {
        Small(u64),
        Big(String),
    }
    s.collect_seq(v.iter().map(|m| match m.to_u64() {
        Some(x) => Count::Small(x),
        None => Count::Big(m.to_string()),
    }))
}

/// Exact spectrum of a profile matrix, indexed by the common eigenspaces
/// `j = 0..=min(k, n−k)`.
pub fn spectrum(spec: &ProfileMatrixSpec) -> Result<Spectrum> {
    let (n, k) = (spec.n, spec.k);
    let lambdas = if n >= 2 * k {
        closed_form_lambdas(spec)?
    } else {
        closed_form_lambdas(&spec.complement())?
    };
    let multiplicities = (0..lambdas.len())
        .map(|j| {
            let below = if j == 0 { BigInt::zero() } else { choose(n, j - 1) };
            choose(n, j) - below
        })
        .collect();
    Ok(Spectrum { n, k, profile: spec.f.clone(), lambdas, multiplicities })
}

fn closed_form_lambdas(spec: &ProfileMatrixSpec) -> Result<Vec<Rational>> {
    let (n, k) = (spec.n, spec.k);
    let b = decompose(spec).b;
    (0..=k)
        .map(|j| {
            let mut acc = Rational::zero();
            for (i, bi) in b.iter().enumerate() {
                if !bi.is_zero() {
                    acc += bi * from_int(basis_eigenvalue(i, j, n, k)?);
                }
            }
            Ok(acc)
        })
        .collect()
}

pub fn dense_profile_matrix(spec: &ProfileMatrixSpec) -> Result<DenseSymmetricMatrix> {
    dense_profile_matrix_capped(spec, DENSE_CAP)
}

pub fn dense_profile_matrix_capped(
    spec: &ProfileMatrixSpec,
    cap: usize,
) -> Result<DenseSymmetricMatrix> {
    let (size, meets) = meet_table(spec.n, spec.k, cap)?;
    DenseSymmetricMatrix::new(size, meets.iter().map(|&m| spec.f[m as usize].clone()).collect())
}

/// `scale · A` as an integer matrix, built entry by entry without rationals.
pub fn scaled_profile_matrix(spec: &ProfileMatrixSpec, cap: usize) -> Result<ScaledMatrix> {
    let (size, meets) = meet_table(spec.n, spec.k, cap)?;
    let scale = spec.f.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let values: Vec<BigInt> = spec.f.iter().map(|e| e.numer() * (&scale / e.denom())).collect();
    let data = meets.iter().map(|&m| values[m as usize].clone()).collect();
    Ok(ScaledMatrix::new(size, scale, data))
}

/// Row-major `|x ∩ y|` over all pairs of k-subsets, in rank order.
fn meet_table(n: usize, k: usize, cap: usize) -> Result<(usize, Vec<u32>)> {
    let size = vertex_count(n, k, cap)?;
    let words = n.div_ceil(64);
    let masks: Vec<Vec<u64>> = all_subsets(n, k)
        .iter()
        .map(|x| {
            let mut m = vec![0u64; words];
            x.elements().iter().for_each(|&e| m[e / 64] |= 1 << (e % 64));
            m
        })
        .collect();
    let mut meets = Vec::with_capacity(size * size);
    for x in &masks {
        for y in &masks {
            meets.push(x.iter().zip(y).map(|(a, b)| (a & b).count_ones()).sum());
        }
    }
    Ok((size, meets))
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceCheck {
    pub power: u32,
    #[serde(serialize_with = "ratio::ser")]
    pub closed_form: Rational,
    #[serde(serialize_with = "ratio::ser")]
    pub dense: Rational,
    pub ok: bool,
}

/// Result of checking a closed-form spectrum against the literal matrix.
#[derive(Debug, Clone, Serialize)]
pub struct DenseCheckReport {
    pub n: usize,
    pub k: usize,
    pub order: usize,
    /// Whether every column was checked, or only the orbit representative.
    pub all_columns: bool,
    /// `Π_{distinct λ} (A − λI) = 0`.
    pub annihilation: bool,
    /// `Σ mult_j λ_j^p = tr(A^p)` for `p = 0, 1, 2`.
    pub traces: Vec<TraceCheck>,
    /// The multiplicities solve the Vandermonde system of power traces.
    pub vandermonde: bool,
    /// Multiplicities recovered from the traces, aligned with `distinct`.
    pub recovered_multiplicities: Option<Vec<String>>,
}

impl DenseCheckReport {
    pub fn passed(&self) -> bool {
        self.annihilation && self.traces.iter().all(|t| t.ok) && self.vandermonde
    }
}

pub fn verify_spectrum_dense(spec: &ProfileMatrixSpec) -> Result<DenseCheckReport> {
    verify_spectrum_dense_capped(spec, DENSE_CAP)
}

pub fn verify_spectrum_dense_capped(
    spec: &ProfileMatrixSpec,
    cap: usize,
) -> Result<DenseCheckReport> {
    let spectrum = spectrum(spec)?;
    let m = scaled_profile_matrix(spec, cap)?;
    let order = m.order;
    let scale = from_int(m.scale.clone());

    let distinct = spectrum.distinct();
    // Eigenvalues of the integer matrix scale·A; a non-integer cannot occur.
    let scaled: Option<Vec<BigInt>> = distinct
        .iter()
        .map(|(l, _)| {
            let v = l * &scale;
            ratio::is_integer(&v).then(|| v.to_integer())
        })
        .collect();

    let all_columns = order <= FULL_COLUMN_LIMIT;
    let columns: Vec<usize> = if all_columns { (0..order).collect() } else { vec![0] };

    let annihilation = match &scaled {
        Some(shifts) => columns.iter().all(|&c| {
            let out = m.apply_poly(shifts, &unit(order, c));
            out.iter().all(Zero::is_zero)
        }),
        None => false,
    };

    let mut traces = Vec::new();
    for p in 0..=2u32 {
        let dense_trace = match p {
            0 => from_int(order as i64),
            1 => Rational::new((0..order).map(|i| &m.data[i * order + i]).sum(), m.scale.clone()),
            _ => Rational::new(m.frobenius_squared(), &m.scale * &m.scale),
        };
        let closed = spectrum.power_sum(p);
        traces.push(TraceCheck { power: p, ok: closed == dense_trace, closed_form: closed, dense: dense_trace });
    }

    let (vandermonde, recovered) = match &scaled {
        Some(values) => vandermonde_check(&m, &columns, values, &distinct, spectrum.lambdas.len()),
        None => (false, None),
    };

    Ok(DenseCheckReport {
        n: spec.n,
        k: spec.k,
        order,
        all_columns,
        annihilation,
        traces,
        vandermonde,
        recovered_multiplicities: recovered,
    })
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Power traces `tr(M^p)` for `p = 0..=max_power` of the scaled integer matrix.
fn power_traces(m: &ScaledMatrix, columns: &[usize], max_power: usize) -> Vec<BigInt> {
    let mut traces = vec![BigInt::zero(); max_power + 1];
    for &c in columns {
        for (p, v) in m.krylov(&unit(m.order, c), max_power).into_iter().enumerate() {
            traces[p] += &v[c];
        }
    }
    if columns.len() < m.order {
        // Transitivity: every diagonal entry of M^p equals the sampled one.
        let factor = BigInt::from(m.order / columns.len());
        traces.iter_mut().for_each(|t| *t *= &factor);
    }
    traces
}

fn vandermonde_check(
    m: &ScaledMatrix,
    columns: &[usize],
    values: &[BigInt],
    distinct: &[(Rational, BigInt)],
    classes: usize,
) -> (bool, Option<Vec<String>>) {
    let r = values.len();
    let max_power = (classes - 1).max(r - 1);
    let traces = power_traces(m, columns, max_power);

    // Solve Σ_l v_l^p x_l = tr(M^p), p = 0..r−1.
    let mut rows: Vec<Vec<Rational>> = (0..r)
        .map(|p| {
            let mut row: Vec<Rational> =
                values.iter().map(|v| from_int(num_traits::pow(v.clone(), p))).collect();
            row.push(from_int(traces[p].clone()));
            row
        })
        .collect();
    let Some(solution) = solve(&mut rows) else {
        return (false, None);
    };
    let matches = solution
        .iter()
        .zip(distinct)
        .all(|(x, (_, mult))| *x == from_int(mult.clone()));
    // Remaining equations up to p = classes must also hold.
    let consistent = (r..=max_power).all(|p| {
        let lhs: BigInt = values
            .iter()
            .zip(distinct)
            .map(|(v, (_, mult))| num_traits::pow(v.clone(), p) * mult)
            .sum();
        lhs == traces[p]
    });
    let recovered = solution.iter().map(ratio::to_string).collect();
    (matches && consistent, Some(recovered))
}

/// Gauss–Jordan on an augmented square system; `None` if singular.
pub(crate) fn solve(rows: &mut [Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        rows[col].iter_mut().for_each(|x| *x /= &p);
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(rows.iter().map(|row| row[n].clone()).collect())
}

/// Squared norms of the projections of a family's indicator vector onto the
/// common eigenspaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenspaceProfile {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    #[serde(serialize_with = "ratio::ser_vec")]
    pub norms: Vec<Rational>,
}

impl EigenspaceProfile {
    /// Indices `j` with a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.norms.len()).filter(|&j| !self.norms[j].is_zero()).collect()
    }
}

/// Eigenvalues `(k−j)(n−k−j) − j` of the distance-1 matrix `|x ∩ y| = k−1`.
pub fn distance_one_eigenvalues(n: usize, k: usize) -> Vec<BigInt> {
    (0..=k.min(n - k))
        .map(|j| BigInt::from((k - j) * (n - k - j)) - j)
        .collect()
}

pub fn eigenspace_profile(family: &[KSubset], n: usize, k: usize) -> Result<EigenspaceProfile> {
    let (chi, parts) = projector_images(family, n, k, DENSE_CAP)?;
    let norms = parts
        .iter()
        .map(|(w, denom)| {
            let dot: BigInt = chi.iter().zip(w).filter(|(c, _)| !c.is_zero()).map(|(_, x)| x).sum();
            Rational::new(dot, denom.clone())
        })
        .collect();
    Ok(EigenspaceProfile { n, k, size: family.len(), norms })
}

/// The vectors `E_j χ` themselves.
pub fn eigenspace_projections(family: &[KSubset], n: usize, k: usize) -> Result<Vec<Vec<Rational>>> {
    let (_, parts) = projector_images(family, n, k, DENSE_CAP)?;
    Ok(parts
        .into_iter()
        .map(|(w, d)| w.into_iter().map(|x| Rational::new(x, d.clone())).collect())
        .collect())
}

/// For each `j`, `(w_j, d_j)` with `E_j χ = w_j / d_j`, where
/// `E_j = Π_{l≠j} (A₁ − θ_l I) / (θ_j − θ_l)`.
fn projector_images(
    family: &[KSubset],
    n: usize,
    k: usize,
    cap: usize,
) -> Result<(Vec<BigInt>, Vec<(Vec<BigInt>, BigInt)>)> {
    if k == 0 || k > n {
        return Err(domain(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let size = vertex_count(n, k, cap)?;
    let mut chi = vec![BigInt::zero(); size];
    for s in family {
        if s.n() != n || s.k() != k {
            return Err(Error::Mismatch(format!("member {s:?} is not a {k}-subset of [{n}]")));
        }
        let r = s.rank() as usize;
        if !chi[r].is_zero() {
            return Err(domain(format!("duplicate member {s:?}")));
        }
        chi[r] = BigInt::one();
    }

    let theta = distance_one_eigenvalues(n, k);
    for a in 0..theta.len() {
        for b in a + 1..theta.len() {
            if theta[a] == theta[b] {
                return Err(Error::CoincidentEigenvalues(a, b));
            }
        }
    }

    let adj = dense_profile_matrix_capped(&ProfileMatrixSpec::delta(n, k, k - 1)?, cap)?
        .to_scaled_integer();
    let parts = (0..theta.len())
        .map(|j| {
            let others: Vec<BigInt> =
                theta.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, t)| t.clone()).collect();
            let denom: BigInt = others.iter().map(|t| &theta[j] - t).product();
            let w = adj.apply_poly(&others, &chi);
            let (w, denom) = if denom.is_negative() {
                (w.into_iter().map(|x| -x).collect(), -denom)
            } else {
                (w, denom)
            };
            (w, denom)
        })
        .collect();
    Ok((chi, parts))
}
