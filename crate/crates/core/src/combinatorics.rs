//! Combinadic ranking of k-subsets and the Johnson graphs built on them.

use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Default vertex cap for [`build_johnson_graph`].
pub const GRAPH_CAP: usize = 5000;
/// Default vertex cap for [`verify_scheme_axioms`].
pub const AXIOM_CAP: usize = 300;

/// `C(n, k)` as an exact integer. Zero when `k < 0` or `k > n`; negative `n`
/// is an error rather than a silent zero.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeBinomial(n));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `binomial` for arguments already known to be in the non-negative domain.
pub(crate) fn choose(n: usize, k: usize) -> BigInt {
    binomial(n as i64, k as i64).expect("non-negative upper index")
}

/// Machine-word binomial; `None` on overflow.
pub fn choose_u64(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, k)` as a vertex count, failing if it exceeds `cap`.
pub(crate) fn vertex_count(n: usize, k: usize, cap: usize) -> Result<usize> {
    let count = choose(n, k);
    match count.to_usize() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::CapExceeded { size: count.to_u128().unwrap_or(u128::MAX), cap }),
    }
}

/// A sorted k-element subset of `{0, …, n−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    n: usize,
    elements: Vec<usize>,
}

impl KSubset {
    /// Sorts and validates `elements`.
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain(format!("repeated element in {elements:?}")));
        }
        if let Some(&e) = elements.iter().find(|&&e| e >= n) {
            return Err(domain(format!("element {e} outside ground set of size {n}")));
        }
        Ok(Self { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// Colexicographic rank: `Σ_i C(e_i, i+1)` over the sorted elements.
    pub fn rank(&self) -> u64 {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, &e)| choose_u64(e, i + 1).expect("rank overflows u64"))
            .sum()
    }

    /// Elements shifted to 1-based labels.
    pub fn one_indexed(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e + 1).collect()
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

/// Inverse of [`KSubset::rank`].
pub fn unrank(rank: u64, n: usize, k: usize) -> Result<KSubset> {
    let total = choose_u64(n, k).ok_or_else(|| domain("C(n, k) overflows u64"))?;
    if rank >= total {
        return Err(Error::RankOutOfRange { rank, n, k, total });
    }
    let mut r = rank;
    let mut elements = vec![0; k];
    let mut top = n;
    for i in (1..=k).rev() {
        // Largest c < top with C(c, i) <= r; C(i - 1, i) = 0 bounds it below.
        let fits = |c: usize| choose_u64(c, i).is_some_and(|v| v <= r);
        let (mut lo, mut hi) = (i - 1, top - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let c = lo;
        elements[i - 1] = c;
        r -= choose_u64(c, i).unwrap();
        top = c;
    }
    Ok(KSubset { n, elements })
}

/// All k-subsets of `[n]` in rank order.
pub fn all_subsets(n: usize, k: usize) -> Vec<KSubset> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(KSubset { n, elements: cur.clone() });
        // Colex successor: bump the lowest element that can move.
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { cur[i + 1] } else { n };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        if i == k {
            return out;
        }
    }
}

/// `|x ∩ y|` for two subsets of the same ground set and size.
pub fn intersection_size(x: &KSubset, y: &KSubset) -> Result<usize> {
    if x.n != y.n || x.k() != y.k() {
        return Err(Error::Mismatch(format!(
            "({}, {}) vs ({}, {})",
            x.n,
            x.k(),
            y.n,
            y.k()
        )));
    }
    Ok(meet(&x.elements, &y.elements))
}

pub(crate) fn meet(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// `J(n, k, t)`: k-subsets of an n-set, adjacent when they share exactly `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct JohnsonParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl JohnsonParams {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(domain(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        if t >= k {
            return Err(domain(format!("forbidden intersection t = {t} must be < k = {k}")));
        }
        Ok(Self { n, k, t })
    }

    /// Closed-form valency `C(k, t)·C(n−k, k−t)`.
    pub fn degree(&self) -> BigInt {
        choose(self.k, self.t) * choose(self.n - self.k, self.k - self.t)
    }
}

#[derive(Debug, Clone)]
pub struct JohnsonGraph {
    pub params: JohnsonParams,
    pub vertices: Vec<KSubset>,
    adjacency: Vec<FixedBitSet>,
}

impl JohnsonGraph {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }
}

pub fn build_johnson_graph(p: JohnsonParams) -> Result<JohnsonGraph> {
    build_johnson_graph_capped(p, GRAPH_CAP)
}

pub fn build_johnson_graph_capped(p: JohnsonParams, cap: usize) -> Result<JohnsonGraph> {
    let p = JohnsonParams::new(p.n, p.k, p.t)?;
    let size = vertex_count(p.n, p.k, cap)?;
    let vertices = all_subsets(p.n, p.k);
    debug_assert_eq!(vertices.len(), size);
    let mut adjacency = vec![FixedBitSet::with_capacity(size); size];
    for u in 0..size {
        for v in u + 1..size {
            if meet(&vertices[u].elements, &vertices[v].elements) == p.t {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
    }
    Ok(JohnsonGraph { params: p, vertices, adjacency })
}

/// Outcome of checking the four association-scheme axioms on the Johnson
/// scheme with relations `R_i = {(x, y) : |x ∩ y| = k − i}`.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub k: usize,
    pub vertices: usize,
    /// Relation indices that are non-empty; indices missing here have no pairs.
    pub relations: Vec<usize>,
    /// `|{y : (x, y) ∈ R_i}|`, indexed by relation `i`.
    pub valencies: Vec<u64>,
    pub partition: bool,
    pub diagonal: bool,
    pub symmetric: bool,
    pub constant_intersection_numbers: bool,
    /// `p[T][R][S]`, or `None` when relation `T` is empty.
    pub intersection_numbers: Vec<Option<Vec<Vec<u64>>>>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.partition && self.diagonal && self.symmetric && self.constant_intersection_numbers
    }
}

pub fn verify_scheme_axioms(n: usize, k: usize) -> Result<AxiomReport> {
    verify_scheme_axioms_capped(n, k, AXIOM_CAP)
}

pub fn verify_scheme_axioms_capped(n: usize, k: usize, cap: usize) -> Result<AxiomReport> {
    if k == 0 || k > n {
        return Err(domain(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let size = vertex_count(n, k, cap)?;
    let vs = all_subsets(n, k);
    let classes = k + 1;
    let mut rel = vec![0u8; size * size];
    let mut sizes = vec![0u64; classes];
    for x in 0..size {
        for y in 0..size {
            let i = k - meet(&vs[x].elements, &vs[y].elements);
            rel[x * size + y] = i as u8;
            sizes[i] += 1;
        }
    }
    let relations: Vec<usize> = (0..classes).filter(|&i| sizes[i] > 0).collect();

    let partition = sizes.iter().sum::<u64>() == (size * size) as u64;
    let diagonal = (0..size).all(|x| rel[x * size + x] == 0) && sizes[0] == size as u64;
    let symmetric = (0..size).all(|x| (0..x).all(|y| rel[x * size + y] == rel[y * size + x]));

    let mut table: Vec<Option<Vec<u64>>> = vec![None; classes];
    let mut constant = true;
    let mut counts = vec![0u64; classes * classes];
    'pairs: for u in 0..size {
        for w in 0..size {
            counts.iter_mut().for_each(|c| *c = 0);
            for v in 0..size {
                let r = rel[u * size + v] as usize;
                let s = rel[v * size + w] as usize;
                counts[r * classes + s] += 1;
            }
            let t = rel[u * size + w] as usize;
            match &table[t] {
                None => table[t] = Some(counts.clone()),
                Some(prev) if *prev != counts => {
                    constant = false;
                    break 'pairs;
                }
                Some(_) => {}
            }
        }
    }

    let valencies = sizes.iter().map(|&s| s / size as u64).collect();
    let intersection_numbers = table
        .into_iter()
        .map(|t| t.map(|flat| flat.chunks(classes).map(<[u64]>::to_vec).collect()))
        .collect();
    Ok(AxiomReport {
        n,
        k,
        vertices: size,
        relations,
        valencies,
        partition,
        diagonal,
        symmetric,
        constant_intersection_numbers: constant,
        intersection_numbers,
    })
}
