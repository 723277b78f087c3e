//! Independent oracles and invariants across modules.

use johnson_core::bose_mesner::{eigenspace_projections, DENSE_CAP};
use johnson_core::combinatorics::{all_subsets, choose_u64};
use johnson_core::extremal::{classify, DEFAULT_BUDGET};
use johnson_core::plane::prime_power;
use johnson_core::ratio::{self, from_int};
use johnson_core::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=6).into())
}

fn random_profile(rng: &mut impl Rng, n: usize, k: usize) -> ProfileMatrixSpec {
    ProfileMatrixSpec::new(n, k, (0..=k).map(|_| random_rational(rng)).collect()).unwrap()
}

fn set(n: usize, e: &[usize]) -> KSubset {
    KSubset::new(n, e.to_vec()).unwrap()
}

/// Instances with `C(n, k) <= cap` and `n >= 2k`.
fn scheme_instances(cap: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=cap as usize {
        for k in 1..=n / 2 {
            if !choose_u64(n, k).is_some_and(|c| c <= cap) {
                break;
            }
            out.push((n, k));
        }
    }
    out
}

proptest! {
    #[test]
    fn pascal(n in 1i64..=64, k in 1i64..=64) {
        prop_assume!(k <= n);
        prop_assert_eq!(
            binomial(n, k).unwrap(),
            binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
        );
    }

    #[test]
    fn hoffman_is_scale_free(num in 1i64..50, den in 1i64..50, w0 in 0i64..5, w1 in 1i64..5) {
        let spec = ProfileMatrixSpec::new(9, 3, vec![from_int(w0), from_int(w1), from_int(0), from_int(0)]).unwrap();
        let c = Rational::new(num.into(), den.into());
        prop_assert_eq!(hoffman_bound(&spec).unwrap().bound, hoffman_bound(&spec.scaled(&c)).unwrap().bound);
    }

    #[test]
    fn spectrum_is_linear(seed in any::<u64>(), nk in prop::sample::select(vec![(7usize, 3usize), (10, 4), (12, 2), (9, 6), (5, 5)])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, k) = nk;
        let f = random_profile(&mut rng, n, k);
        let g = random_profile(&mut rng, n, k);
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let mix = ProfileMatrixSpec::new(n, k, f.f.iter().zip(&g.f).map(|(x, y)| &a * x + &b * y).collect()).unwrap();
        let (sf, sg, sm) = (spectrum(&f).unwrap(), spectrum(&g).unwrap(), spectrum(&mix).unwrap());
        for j in 0..sm.lambdas.len() {
            prop_assert_eq!(&sm.lambdas[j], &(&a * &sf.lambdas[j] + &b * &sg.lambdas[j]));
        }
    }
}

#[test]
fn pascal_boundary() {
    for n in 1..=64 {
        for k in [1, n] {
            assert_eq!(
                binomial(n, k).unwrap(),
                binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
            );
        }
    }
}

fn check_rank_roundtrip(n: usize, k: usize, ranks: impl Iterator<Item = u64>) {
    for r in ranks {
        let s = unrank(r, n, k).unwrap();
        assert_eq!(s.rank(), r, "({n}, {k})");
    }
}

#[test]
fn rank_is_a_bijection() {
    for n in 1..=5000usize {
        // C(n, 5) > 5000 once n > 22, so larger n only needs k near 0 or n.
        for k in (1..=n).filter(|&k| n <= 40 || k.min(n - k) <= 4) {
            let Some(total) = choose_u64(n, k).filter(|&c| c <= 5000) else {
                continue;
            };
            // Unranking costs Θ(k log n), so the k ≈ n tail is sampled past n = 100.
            if 2 * k > n && n > 100 {
                let edge = (0..50.min(total)).chain(total.saturating_sub(50)..total);
                check_rank_roundtrip(n, k, edge.chain((0..total).step_by(97)));
                continue;
            }
            check_rank_roundtrip(n, k, 0..total);
            for s in all_subsets(n, k) {
                assert_eq!(unrank(s.rank(), n, k).unwrap(), s);
            }
        }
    }
}

#[test]
fn degree_regularity() {
    for (n, k) in [(6, 2), (7, 3), (8, 3), (9, 4), (10, 3), (12, 5)] {
        for t in 0..k {
            let p = JohnsonParams::new(n, k, t).unwrap();
            let g = build_johnson_graph(p).unwrap();
            let d = p.degree();
            assert!((0..g.order()).all(|v| BigInt::from(g.degree(v)) == d), "J({n},{k},{t})");
        }
    }
}

#[test]
fn intersection_numbers_are_constant() {
    for (n, k) in [(5, 2), (6, 3), (7, 3)] {
        let r = verify_scheme_axioms(n, k).unwrap();
        assert!(r.constant_intersection_numbers);
        // p^0_{R,S} = δ_{RS} · valency
        let p0 = r.intersection_numbers[0].as_ref().unwrap();
        for a in 0..=k {
            for b in 0..=k {
                assert_eq!(p0[a][b], if a == b { r.valencies[a] } else { 0 });
            }
        }
    }
}

#[test]
fn decomposition_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 2..=8 {
        for _ in 0..200 {
            let spec = random_profile(&mut rng, 2 * k + 1, k);
            assert_eq!(decompose(&spec).reconstruct(), spec.f);
        }
    }
}

#[test]
fn first_basis_eigenvalue_is_the_row_sum() {
    for (n, k) in scheme_instances(DENSE_CAP as u64) {
        let vs = all_subsets(n, k);
        for i in 0..=k {
            let row: u64 = vs
                .iter()
                .map(|y| choose_u64(k - intersection_size(&vs[0], y).unwrap(), i).unwrap())
                .sum();
            assert_eq!(basis_eigenvalue(i, 0, n, k).unwrap(), BigInt::from(row), "({n},{k}) i={i}");
        }
    }
}

#[test]
fn basis_matrix_b3_on_j73() {
    // B_3(x, y) = C(3 − |x ∩ y|, 3): the disjointness matrix.
    let f = (0..=3).map(|s| from_int(choose_u64(3 - s, 3).unwrap() as i64)).collect();
    let spec = ProfileMatrixSpec::new(7, 3, f).unwrap();
    assert!(verify_spectrum_dense(&spec).unwrap().passed());
    assert_eq!(spectrum(&spec).unwrap().lambdas[1], from_int(basis_eigenvalue(3, 1, 7, 3).unwrap()));
    assert_eq!(basis_eigenvalue(3, 1, 7, 3).unwrap(), BigInt::from(-3));
}

#[test]
fn spectrum_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, k) in [(7, 3), (13, 4), (21, 5), (30, 7), (5, 4), (9, 8)] {
        let spec = random_profile(&mut rng, n, k);
        let s = spectrum(&spec).unwrap();
        let total: BigInt = s.multiplicities.iter().sum();
        assert_eq!(total, BigInt::from(choose_u64(n, k).unwrap()));
        assert_eq!(s.power_sum(1), from_int(total) * &spec.f[k]);
    }
}

#[test]
fn parseval_and_first_component() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, k) in [(7, 3), (8, 3), (9, 4), (6, 2)] {
        let all = all_subsets(n, k);
        for _ in 0..10 {
            let fam: Vec<KSubset> = all.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
            let p = eigenspace_profile(&fam, n, k).unwrap();
            let size = fam.len() as i64;
            assert_eq!(p.norms.iter().sum::<Rational>(), from_int(size));
            assert_eq!(p.norms[0], Rational::new((size * size).into(), (all.len() as i64).into()));
        }
    }
}

#[test]
fn projections_diagonalize_every_profile() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = random_profile(&mut rng, 8, 3);
    let lambdas = spectrum(&spec).unwrap().lambdas;
    let a = dense_profile_matrix(&spec).unwrap();
    let fam = canonical_family(8, 3, 2, 5).unwrap();
    for (j, v) in eigenspace_projections(fam.members(), 8, 3).unwrap().iter().enumerate() {
        for i in 0..a.order() {
            let av: Rational = a.row(i).iter().zip(v).map(|(x, y)| x * y).sum();
            assert_eq!(av, &lambdas[j] * &v[i]);
        }
    }
}

fn brute_force_alpha(p: JohnsonParams) -> usize {
    let g = build_johnson_graph(p).unwrap();
    let n = g.order();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|mask| {
            (0..n).all(|u| mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || !g.adjacent(u, v)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

#[test]
fn solver_matches_brute_force() {
    for (n, k) in [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3)] {
        for t in 0..k {
            let p = JohnsonParams::new(n, k, t).unwrap();
            let r = max_independent_set(p, DEFAULT_BUDGET).unwrap();
            assert!(r.optimal);
            assert_eq!(r.size, brute_force_alpha(p), "J({n},{k},{t})");
            assert!(is_independent(&r.witness, t).independent);
        }
    }
}

#[test]
fn hoffman_is_sound() {
    for (n, k) in [(5, 2), (6, 2), (6, 3), (7, 3), (8, 3), (9, 3), (8, 4)] {
        for t in 0..k {
            let p = JohnsonParams::new(n, k, t).unwrap();
            let alpha = max_independent_set(p, DEFAULT_BUDGET).unwrap();
            assert!(alpha.optimal);
            let h = hoffman_bound(&ProfileMatrixSpec::delta(n, k, t).unwrap()).unwrap();
            assert!(BigInt::from(alpha.size) <= h.bound_floor, "J({n},{k},{t})");
        }
    }
}

#[test]
fn theorem_instances_are_tight() {
    for k in [2, 3] {
        let n = k * k - k + 1;
        let r = max_independent_set(JohnsonParams::new(n, k, 1).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(r.optimal);
        assert_eq!(BigInt::from(r.size), binomial(n as i64 - 2, k as i64 - 2).unwrap());
    }
}

#[test]
fn enumeration_matches_brute_force_over_quintuples() {
    let p = JohnsonParams::new(7, 3, 1).unwrap();
    let g = build_johnson_graph(p).unwrap();
    let mut brute = Vec::new();
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let q = [a, b, c, d, e];
                        if (0..5).all(|i| (i + 1..5).all(|j| !g.adjacent(q[i], q[j]))) {
                            brute.push(q.to_vec());
                        }
                    }
                }
            }
        }
    }
    let e = enumerate_maximum_independent_sets(p, 5).unwrap();
    let found: Vec<Vec<usize>> = e
        .families
        .iter()
        .map(|f| f.members().iter().map(|m| m.rank() as usize).collect())
        .collect();
    assert_eq!(found, brute);
    assert_eq!(brute.len(), 56);
    assert_eq!(e.census, Census { total: 56, pair_junta: 21, sporadic: 35, other: 0 });

    for a in 0..7 {
        for b in a + 1..7 {
            let c = canonical_family(7, 3, a, b).unwrap();
            assert!(e.families.iter().any(|f| f.members() == c.members()));
        }
    }
    let s = sporadic_family_k3();
    assert!(e.families.iter().any(|f| f.members() == s.members()));
}

#[test]
fn constructions_are_independent() {
    for (n, k) in [(3, 2), (7, 3), (13, 4), (9, 3)] {
        let f = canonical_family(n, k, 1, 0).unwrap();
        assert_eq!(classify(&f), FamilyKind::PairJunta);
        if n == k * k - k + 1 {
            assert!(is_independent(&f, 1).independent);
        }
    }
    assert!(is_independent(&sporadic_family_k3(), 1).independent);
}

#[test]
fn sporadic_family_projection_is_reported() {
    // Observed, not required: the sporadic family also lives in eigenspaces 0..=2.
    let p = eigenspace_profile(sporadic_family_k3().members(), 7, 3).unwrap();
    assert_eq!(p.norms.iter().sum::<Rational>(), from_int(5));
    assert_eq!(p.support(), vec![0, 1, 2]);
}

#[test]
fn solver_is_deterministic_across_runs() {
    for (n, k, t) in [(7, 3, 1), (7, 3, 0), (9, 3, 1), (8, 4, 2)] {
        let p = JohnsonParams::new(n, k, t).unwrap();
        let runs: Vec<_> = (0..3).map(|_| max_independent_set(p, DEFAULT_BUDGET).unwrap()).collect();
        assert!(runs.windows(2).all(|w| w[0].witness == w[1].witness));
    }
}

#[test]
fn field_axioms_sampled_for_large_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for q in (17..=256).filter(|&q| prime_power(q).is_some()) {
        let f = make_field(q).unwrap();
        for _ in 0..10_000 {
            let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
            assert!(f.axioms_hold_for(a, b, c), "GF({q}) at ({a}, {b}, {c})");
        }
    }
}

#[test]
fn plane_axioms_up_to_nine() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let p = build_plane(q).unwrap();
        assert!(p.verify_axioms().passed(), "PG(2, {q})");
        let (fam, cert) = plane_clique(q).unwrap();
        assert!(cert.clique);
        // Complement of independence: every pair meets in exactly one point.
        let m = fam.members();
        assert!((0..m.len()).all(|i| (i + 1..m.len()).all(|j| intersection_size(&m[i], &m[j]).unwrap() == 1)));
    }
}

#[test]
fn plane_bound_coincides_with_hoffman() {
    for q in [2, 3, 4, 5, 7] {
        let k = q + 1;
        let (_, cert) = plane_clique(q).unwrap();
        let vertices = binomial(cert.n as i64, k as i64).unwrap();
        let t = transitivity_bound(&BigInt::from(cert.size), &vertices).unwrap();
        assert_eq!(t, verify_theorem(k).unwrap().hoffman_value);
    }
}

#[test]
fn bruck_ryser_against_sieve() {
    let mut sums = [false; 31];
    for a in 0..6 {
        for b in 0..6 {
            if a * a + b * b <= 30 {
                sums[a * a + b * b] = true;
            }
        }
    }
    let excluded: Vec<u64> = (2..=30u64)
        .filter(|&n| matches!(n % 4, 1 | 2) && !sums[n as usize])
        .collect();
    assert_eq!(excluded, vec![6, 14, 21, 22, 30]);
    for n in 2..=30 {
        let v = bruck_ryser_excludes(n).unwrap().verdict;
        assert_eq!(v == BruckRyserVerdict::Excluded, excluded.contains(&n), "order {n}");
    }
}

#[test]
fn json_shapes() {
    let s = spectrum(&ProfileMatrixSpec::delta(7, 3, 1).unwrap()).unwrap();
    assert_eq!(
        serde_json::to_value(&s).unwrap(),
        serde_json::json!({
            "n": 7, "k": 3,
            "profile": ["0/1", "1/1", "0/1", "0/1"],
            "lambdas": ["18/1", "-3/1", "-3/1", "3/1"],
            "multiplicities": [1, 6, 14, 14]
        })
    );
    let big = spectrum(&ProfileMatrixSpec::delta(2451, 50, 1).unwrap()).unwrap();
    let v = serde_json::to_value(&big).unwrap();
    assert!(v["multiplicities"][50].is_string());

    let h = hoffman_bound(&ProfileMatrixSpec::delta(13, 4, 1).unwrap()).unwrap();
    let v = serde_json::to_value(&h).unwrap();
    assert_eq!(v["bound"], "55/1");
    assert_eq!(v["N"], "715");

    assert_eq!(
        serde_json::to_value(canonical_family(7, 3, 0, 1).unwrap()).unwrap(),
        serde_json::json!([[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5], [0, 1, 6]])
    );
    let fano = build_plane(2).unwrap().to_json();
    assert_eq!(fano["points"], 7);
    assert_eq!(fano["lines"].as_array().unwrap().len(), 7);

    let t = serde_json::to_value(verify_theorem(2).unwrap()).unwrap();
    assert!(t["lambda2"].is_null());
    assert_eq!(t["verdict"], true);
}

#[test]
fn small_index_conventions() {
    assert!(binomial(3, 4).unwrap().is_zero());
    assert!(binomial(0, 0).unwrap().is_one());
    assert_eq!(ratio::to_string(&ratio::parse("-6/4").unwrap()), "-3/2");
    assert_eq!(set(7, &[6, 0, 3]).elements(), &[0, 3, 6]);
}
