//! Independent families in Johnson graphs, from explicit constructions up to
//! exact search on small instances.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::combinatorics::{
    all_subsets, build_johnson_graph_capped, meet, JohnsonGraph, JohnsonParams, KSubset, GRAPH_CAP,
};
use crate::error::{domain, Result};

/// Default node budget for [`max_independent_set`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;
/// Default vertex cap for [`enumerate_maximum_independent_sets`].
pub const ENUMERATION_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CanonicalPair,
    SporadicK3,
    Solver,
    User,
    /// Lines of a projective plane; a clique rather than an independent family.
    PlaneLines,
}

/// A set of k-subsets of a common ground set, kept in rank order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    pub n: usize,
    pub k: usize,
    members: Vec<KSubset>,
    pub provenance: Provenance,
}

impl Family {
    pub fn new(n: usize, k: usize, mut members: Vec<KSubset>, provenance: Provenance) -> Result<Self> {
        if let Some(bad) = members.iter().find(|s| s.n() != n || s.k() != k) {
            return Err(domain(format!("member {bad:?} is not a {k}-subset of [{n}]")));
        }
        members.sort_by_key(KSubset::rank);
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain("duplicate member"));
        }
        Ok(Self { n, k, members, provenance })
    }

    /// Builds from raw element lists, e.g. parsed JSON.
    pub fn from_sets(n: usize, k: usize, sets: &[Vec<usize>], provenance: Provenance) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| {
                if s.len() != k {
                    return Err(domain(format!("{s:?} does not have {k} elements")));
                }
                KSubset::new(n, s.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, members, provenance)
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Elements common to every member.
    pub fn kernel(&self) -> Vec<usize> {
        let Some(first) = self.members.first() else {
            return Vec::new();
        };
        first
            .elements()
            .iter()
            .copied()
            .filter(|&e| self.members.iter().all(|m| m.contains(e)))
            .collect()
    }

    /// JSON array of sorted element arrays, optionally shifted to 1-based labels.
    pub fn to_json(&self, one_indexed: bool) -> serde_json::Value {
        self.members
            .iter()
            .map(|m| if one_indexed { m.one_indexed() } else { m.elements().to_vec() })
            .collect::<Vec<_>>()
            .into()
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter())
    }
}

/// All k-subsets of `[n]` containing both `a` and `b`.
pub fn canonical_family(n: usize, k: usize, a: usize, b: usize) -> Result<Family> {
    if a == b || a >= n || b >= n {
        return Err(domain(format!("need distinct a, b in [0, {n}), got {a}, {b}")));
    }
    if k < 2 || k > n {
        return Err(domain(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    let rest: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
    let members = all_subsets(n - 2, k - 2)
        .into_iter()
        .map(|s| {
            let mut e: Vec<usize> = s.elements().iter().map(|&i| rest[i]).collect();
            e.extend([a, b]);
            KSubset::new(n, e)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(n, k, members, Provenance::CanonicalPair)
}

/// `{{1,2,3},{1,2,4},{1,3,4},{2,3,4},{5,6,7}}` on `[7]`, stored 0-based.
pub fn sporadic_family_k3() -> Family {
    let sets = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [4, 5, 6]].map(|s| s.to_vec());
    Family::from_sets(7, 3, &sets, Provenance::SporadicK3).expect("valid constant family")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Independence {
    pub independent: bool,
    /// First pair (in rank order) meeting in exactly `t` elements.
    pub violation: Option<(KSubset, KSubset)>,
}

pub fn is_independent(fam: &Family, t: usize) -> Independence {
    let m = fam.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if meet(m[i].elements(), m[j].elements()) == t {
                return Independence {
                    independent: false,
                    violation: Some((m[i].clone(), m[j].clone())),
                };
            }
        }
    }
    Independence { independent: true, violation: None }
}

#[derive(Debug, Clone, Serialize)]
pub struct MisResult {
    pub size: usize,
    pub witness: Family,
    /// True iff the search finished, so no independent set of size `size + 1` exists.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

/// Exact independence number of `J(n, k, t)` by branch and bound.
///
/// This is maximum clique on the complement, with bitset greedy colouring as
/// the bound: each colour class is a clique of the Johnson graph, so it holds
/// at most one vertex of any independent set. The incumbent starts from the
/// pair family when it is independent. Ties are broken by vertex rank, so the
/// result is deterministic.
pub fn max_independent_set(p: JohnsonParams, budget: u64) -> Result<MisResult> {
    max_independent_set_capped(p, budget, GRAPH_CAP)
}

pub fn max_independent_set_capped(p: JohnsonParams, budget: u64, cap: usize) -> Result<MisResult> {
    let g = build_johnson_graph_capped(p, cap)?;
    let mut solver = Solver::new(&g, budget);

    if p.k >= 2 {
        let seed = canonical_family(p.n, p.k, 0, 1)?;
        if is_independent(&seed, p.t).independent {
            solver.best = seed.members().iter().map(|s| s.rank() as usize).collect();
        }
    }
    let greedy = solver.greedy();
    if greedy.len() > solver.best.len() {
        solver.best = greedy;
    }

    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    let mut current = Vec::new();
    solver.expand(&mut current, all);

    let members = solver.best.iter().map(|&v| g.vertices[v].clone()).collect();
    let witness = Family::new(p.n, p.k, members, Provenance::Solver)?;
    Ok(MisResult {
        size: witness.len(),
        witness,
        optimal: !solver.exhausted,
        nodes_explored: solver.nodes,
        budget_exhausted: solver.exhausted,
    })
}

struct Solver<'a> {
    g: &'a JohnsonGraph,
    /// Non-neighbours of each vertex, excluding itself.
    free: Vec<FixedBitSet>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Solver<'a> {
    fn new(g: &'a JohnsonGraph, budget: u64) -> Self {
        let order = g.order();
        let free = (0..order)
            .map(|v| {
                let mut row = g.row(v).clone();
                row.toggle_range(..);
                row.set(v, false);
                row
            })
            .collect();
        Self { g, free, best: Vec::new(), nodes: 0, budget, exhausted: false }
    }

    fn greedy(&self) -> Vec<usize> {
        let mut cand = FixedBitSet::with_capacity(self.g.order());
        cand.insert_range(..);
        let mut out = Vec::new();
        while let Some(v) = cand.ones().next() {
            out.push(v);
            cand.intersect_with(&self.free[v]);
        }
        out
    }

    /// Vertices of `cand` with their colour numbers, in colour order.
    fn colour(&self, cand: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut left = cand.clone();
        let mut out = Vec::with_capacity(cand.count_ones(..));
        let mut colour = 0;
        while !left.is_clear() {
            colour += 1;
            let mut open = left.clone();
            while let Some(v) = open.ones().next() {
                out.push((v, colour));
                left.set(v, false);
                // Only graph neighbours of every class member may join it.
                open.intersect_with(self.g.row(v));
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let coloured = self.colour(&cand);
        for &(v, colour) in coloured.iter().rev() {
            if current.len() + colour <= self.best.len() || self.exhausted {
                return;
            }
            current.push(v);
            let mut next = cand.clone();
            next.intersect_with(&self.free[v]);
            if next.is_clear() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.set(v, false);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Every member contains two fixed elements.
    PairJunta,
    /// All k-subsets of some (k+1)-set, other members disjoint from that set.
    Sporadic,
    Other,
}

pub fn classify(fam: &Family) -> FamilyKind {
    if fam.kernel().len() >= 2 {
        return FamilyKind::PairJunta;
    }
    if sporadic_core(fam).is_some() {
        return FamilyKind::Sporadic;
    }
    FamilyKind::Other
}

/// The (k+1)-set whose k-subsets all belong to `fam`, if the rest of `fam`
/// avoids it.
pub fn sporadic_core(fam: &Family) -> Option<Vec<usize>> {
    let m = fam.members();
    let k = fam.k;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if meet(m[i].elements(), m[j].elements()) + 1 != k {
                continue;
            }
            let mut core: Vec<usize> = m[i].elements().to_vec();
            core.extend(m[j].elements());
            core.sort_unstable();
            core.dedup();
            let inside = m.iter().filter(|s| s.elements().iter().all(|e| core.contains(e))).count();
            let rest_disjoint = m
                .iter()
                .filter(|s| !s.elements().iter().all(|e| core.contains(e)))
                .all(|s| s.elements().iter().all(|e| !core.contains(e)));
            if inside == k + 1 && rest_disjoint {
                return Some(core);
            }
        }
    }
    None
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub total: usize,
    pub pair_junta: usize,
    pub sporadic: usize,
    pub other: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub params: JohnsonParams,
    pub target_size: usize,
    pub families: Vec<Family>,
    pub kinds: Vec<FamilyKind>,
    pub census: Census,
}

/// Every independent set of exactly `target_size` vertices, in lexicographic
/// order of their rank sequences.
pub fn enumerate_maximum_independent_sets(p: JohnsonParams, target_size: usize) -> Result<Enumeration> {
    enumerate_capped(p, target_size, ENUMERATION_CAP)
}

pub fn enumerate_capped(p: JohnsonParams, target_size: usize, cap: usize) -> Result<Enumeration> {
    let g = build_johnson_graph_capped(p, cap)?;
    let solver = Solver::new(&g, u64::MAX);
    let mut found = Vec::new();
    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    let mut current = Vec::new();
    collect_sets(&solver, &mut current, all, target_size, &mut found);

    let families = found
        .into_iter()
        .map(|vs| {
            let members = vs.into_iter().map(|v| g.vertices[v].clone()).collect();
            Family::new(p.n, p.k, members, Provenance::Solver)
        })
        .collect::<Result<Vec<_>>>()?;
    let kinds: Vec<FamilyKind> = families.iter().map(classify).collect();
    let mut census = Census { total: families.len(), ..Census::default() };
    for kind in &kinds {
        match kind {
            FamilyKind::PairJunta => census.pair_junta += 1,
            FamilyKind::Sporadic => census.sporadic += 1,
            FamilyKind::Other => census.other += 1,
        }
    }
    Ok(Enumeration { params: p, target_size, families, kinds, census })
}

fn collect_sets(
    s: &Solver<'_>,
    current: &mut Vec<usize>,
    cand: FixedBitSet,
    target: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == target {
        out.push(current.clone());
        return;
    }
    if current.len() + cand.count_ones(..) < target {
        return;
    }
    let bound = s.colour(&cand).last().map_or(0, |&(_, c)| c);
    if current.len() + bound < target {
        return;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.intersect_with(&s.free[v]);
        // Only later vertices, so each set is produced once.
        next.set_range(..v + 1, false);
        current.push(v);
        collect_sets(s, current, next, target, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::choose_u64;

    fn params(n: usize, k: usize, t: usize) -> JohnsonParams {
        JohnsonParams::new(n, k, t).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let f = canonical_family(7, 3, 0, 1).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.members().iter().all(|m| m.contains(0) && m.contains(1)));
        assert!(is_independent(&f, 1).independent);

        let f = canonical_family(13, 4, 0, 1).unwrap();
        assert_eq!(f.len(), 55);
        assert!(is_independent(&f, 1).independent);

        let f = canonical_family(3, 2, 2, 0).unwrap();
        assert_eq!(f.to_json(false), serde_json::json!([[0, 2]]));

        assert!(canonical_family(7, 3, 1, 1).is_err());
        assert!(canonical_family(7, 3, 0, 7).is_err());
        assert!(canonical_family(7, 1, 0, 1).is_err());
    }

    #[test]
    fn canonical_sizes() {
        for (n, k) in [(5, 2), (7, 3), (9, 4), (10, 3), (13, 4)] {
            let f = canonical_family(n, k, n - 1, 2).unwrap();
            assert_eq!(f.len() as u64, choose_u64(n - 2, k - 2).unwrap());
        }
    }

    #[test]
    fn sporadic_family() {
        let f = sporadic_family_k3();
        assert_eq!(f.len(), 5);
        assert!(is_independent(&f, 1).independent);
        assert_eq!(
            f.to_json(true),
            serde_json::json!([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [5, 6, 7]])
        );
        assert_eq!(classify(&f), FamilyKind::Sporadic);
        assert_eq!(sporadic_core(&f), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn independence_violation_is_reported() {
        let f = Family::from_sets(5, 3, &[vec![0, 1, 2], vec![2, 3, 4]], Provenance::User).unwrap();
        let r = is_independent(&f, 1);
        assert!(!r.independent);
        let (a, b) = r.violation.unwrap();
        assert_eq!((a.elements(), b.elements()), (&[0, 1, 2][..], &[2, 3, 4][..]));
    }

    #[test]
    fn family_validation() {
        assert!(Family::from_sets(5, 3, &[vec![0, 1, 2], vec![2, 1, 0]], Provenance::User).is_err());
        assert!(Family::from_sets(5, 3, &[vec![0, 1]], Provenance::User).is_err());
        assert!(Family::from_sets(5, 3, &[vec![0, 1, 5]], Provenance::User).is_err());
    }

    #[test]
    fn mis_small_instances() {
        let r = max_independent_set(params(3, 2, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.size, r.optimal), (1, true));

        let r = max_independent_set(params(7, 3, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.size, r.optimal), (5, true));
        assert!(is_independent(&r.witness, 1).independent);

        let r = max_independent_set(params(7, 3, 0), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.size, r.optimal), (15, true));
        assert!(is_independent(&r.witness, 0).independent);
    }

    #[test]
    fn mis_budget_exhaustion() {
        let r = max_independent_set(params(9, 4, 1), 5).unwrap();
        assert!(r.budget_exhausted && !r.optimal);
        assert!(is_independent(&r.witness, 1).independent);
        assert!(r.size >= 21);
    }

    #[test]
    fn mis_is_deterministic() {
        let a = max_independent_set(params(8, 3, 1), DEFAULT_BUDGET).unwrap();
        let b = max_independent_set(params(8, 3, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn enumeration_of_triangle() {
        let e = enumerate_maximum_independent_sets(params(3, 2, 1), 1).unwrap();
        assert_eq!(e.census, Census { total: 3, pair_junta: 3, sporadic: 0, other: 0 });
    }

    #[test]
    fn enumeration_above_alpha_is_empty() {
        let e = enumerate_maximum_independent_sets(params(7, 3, 1), 6).unwrap();
        assert!(e.families.is_empty());
    }
}
