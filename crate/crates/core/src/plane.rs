//! Desarguesian projective planes `PG(2, q)` and the Bruck–Ryser criterion.
//!
//! The lines of a plane of order `q` are `(q+1)`-subsets of a
//! `(q²+q+1)`-set meeting pairwise in exactly one point, i.e. a clique of that
//! size in `J(q²+q+1, q+1, 1)`.

use serde::Serialize;

use crate::combinatorics::{meet, KSubset};
use crate::error::{domain, Error, Result};
use crate::extremal::{Family, Provenance};

pub const MAX_FIELD_ORDER: usize = 256;

/// `GF(p^m)` as lookup tables. Element `x` encodes the polynomial
/// `Σ c_i t^i` with `x = Σ c_i p^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteField {
    pub p: usize,
    pub m: usize,
    pub q: usize,
    /// Monic modulus, lowest coefficient first (length `m + 1`).
    pub modulus: Vec<usize>,
    #[serde(skip)]
    add: Vec<u8>,
    #[serde(skip)]
    mul: Vec<u8>,
}

impl FiniteField {
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// Field axioms on one triple of elements.
    pub fn axioms_hold_for(&self, a: usize, b: usize, c: usize) -> bool {
        let (add, mul) = (|x, y| self.add(x, y), |x, y| self.mul(x, y));
        add(a, b) == add(b, a)
            && mul(a, b) == mul(b, a)
            && add(add(a, b), c) == add(a, add(b, c))
            && mul(mul(a, b), c) == mul(a, mul(b, c))
            && mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
            && add(a, 0) == a
            && mul(a, 1) == a
            && add(a, self.neg(a)) == 0
            && (a == 0 || self.inv(a).is_some())
    }

    /// Every triple; `q³` checks.
    pub fn verify_axioms(&self) -> bool {
        (0..self.q).all(|a| (0..self.q).all(|b| (0..self.q).all(|c| self.axioms_hold_for(a, b, c))))
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (1, 0) => "1".into(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            });
        }
        terms.join(" + ")
    }
}

/// `(p, m)` with `q = p^m`, or `None`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Remainder of `num` modulo the monic `den` over `GF(p)`.
fn poly_rem(num: &[usize], den: &[usize], p: usize) -> Vec<usize> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - d;
            for (i, &c) in den[..d].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree `m` over `GF(p)`,
/// comparing coefficient sequences from `x^{m−1}` down to the constant.
pub fn least_irreducible(p: usize, m: usize) -> Vec<usize> {
    (0..p.pow(m as u32))
        .map(|low| {
            let mut f = digits(low, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

pub fn make_field(q: usize) -> Result<FiniteField> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q as u64))?;
    if q > MAX_FIELD_ORDER {
        return Err(domain(format!("field order {q} above {MAX_FIELD_ORDER}")));
    }
    let modulus = if m == 1 { vec![0, 1] } else { least_irreducible(p, m) };
    let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a, p, m);
        for b in 0..q {
            let db = digits(b, p, m);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&sum) as u8;
            let mut prod = vec![0; 2 * m - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = if m == 1 { prod } else { poly_rem(&prod, &modulus, p) };
            mul[a * q + b] = encode(&r) as u8;
        }
    }
    Ok(FiniteField { p, m, q, modulus, add, mul })
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneAxioms {
    pub lines_meet_once: bool,
    pub points_joined_once: bool,
    pub point_degree_ok: bool,
    pub line_size_ok: bool,
}

impl PlaneAxioms {
    pub fn passed(&self) -> bool {
        self.lines_meet_once && self.points_joined_once && self.point_degree_ok && self.line_size_ok
    }
}

#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    pub q: usize,
    /// Homogeneous coordinates, first nonzero coordinate equal to 1.
    pub points: Vec<[usize; 3]>,
    /// Each line as the set of ids of its points.
    pub lines: Vec<KSubset>,
    /// Normalized coefficients `(a, b, c)` of the form `ax + by + cz`.
    pub forms: Vec<[usize; 3]>,
}

impl ProjectivePlane {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn verify_axioms(&self) -> PlaneAxioms {
        let (q, v) = (self.q, self.points.len());
        let ls = &self.lines;
        let lines_meet_once = (0..ls.len())
            .all(|i| (i + 1..ls.len()).all(|j| meet(ls[i].elements(), ls[j].elements()) == 1));
        let mut on = vec![Vec::new(); v];
        for (l, line) in ls.iter().enumerate() {
            for &pt in line.elements() {
                on[pt].push(l);
            }
        }
        let points_joined_once =
            (0..v).all(|a| (a + 1..v).all(|b| meet(&on[a], &on[b]) == 1));
        PlaneAxioms {
            lines_meet_once,
            points_joined_once,
            point_degree_ok: on.iter().all(|ls| ls.len() == q + 1),
            line_size_ok: ls.len() == v && ls.iter().all(|l| l.k() == q + 1),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.q,
            "points": self.points.len(),
            "lines": self.lines.iter().map(|l| l.elements().to_vec()).collect::<Vec<_>>(),
        })
    }
}

fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    out.push([0, 0, 1]);
    out.extend((0..q).map(|z| [0, 1, z]));
    for y in 0..q {
        out.extend((0..q).map(|z| [1, y, z]));
    }
    out
}

pub fn build_plane(q: usize) -> Result<ProjectivePlane> {
    let f = make_field(q)?;
    let points = normalized_triples(q);
    let forms = normalized_triples(q);
    let v = points.len();
    let lines = forms
        .iter()
        .map(|a| {
            let incident = points
                .iter()
                .enumerate()
                .filter(|(_, x)| {
                    let s = f.add(f.add(f.mul(a[0], x[0]), f.mul(a[1], x[1])), f.mul(a[2], x[2]));
                    s == 0
                })
                .map(|(id, _)| id)
                .collect();
            KSubset::new(v, incident)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectivePlane { q, points, lines, forms })
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueCertificate {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub pairs_checked: usize,
    /// Every pair of lines meets in exactly one point.
    pub clique: bool,
}

/// The lines of `PG(2, q)` as a clique in `J(q²+q+1, q+1, 1)`.
pub fn plane_clique(q: usize) -> Result<(Family, CliqueCertificate)> {
    let plane = build_plane(q)?;
    let (n, k) = (plane.point_count(), q + 1);
    let fam = Family::new(n, k, plane.lines, Provenance::PlaneLines)?;
    let m = fam.members();
    let size = m.len();
    let clique = (0..size).all(|i| (i + 1..size).all(|j| meet(m[i].elements(), m[j].elements()) == 1));
    let cert = CliqueCertificate { n, k, size, pairs_checked: size * (size - 1) / 2, clique };
    Ok((fam, cert))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BruckRyserVerdict {
    Excluded,
    NotExcluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruckRyser {
    pub order: u64,
    pub verdict: BruckRyserVerdict,
    pub reason: String,
    /// `(a, b)` with `a² + b² = order` when one exists.
    pub two_squares: Option<(u64, u64)>,
}

pub fn two_squares(n: u64) -> Option<(u64, u64)> {
    let mut a = 0u64;
    while 2 * a * a <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return Some((a, b));
        }
        a += 1;
    }
    None
}

/// Orders `≡ 1, 2 (mod 4)` that are not a sum of two squares admit no plane.
pub fn bruck_ryser_excludes(order: u64) -> Result<BruckRyser> {
    if order < 2 {
        return Err(domain(format!("plane order must be >= 2, got {order}")));
    }
    let residue = order % 4;
    let squares = two_squares(order);
    let (verdict, reason) = match (residue, squares) {
        (1 | 2, None) => (
            BruckRyserVerdict::Excluded,
            format!("{order} ≡ {residue} (mod 4) and is not a sum of two squares"),
        ),
        (1 | 2, Some((a, b))) => (
            BruckRyserVerdict::NotExcluded,
            format!("{order} = {a}² + {b}²; the criterion does not apply"),
        ),
        _ => (
            BruckRyserVerdict::NotExcluded,
            format!("{order} ≡ {residue} (mod 4); the criterion does not apply"),
        ),
    };
    Ok(BruckRyser { order, verdict, reason, two_squares: squares })
}
