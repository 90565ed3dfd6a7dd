//! Reduced simplicial homology over the integers.
//!
//! Boundary matrices of the reduced chain complex (the empty face generates
//! C_{-1}) are reduced by sparse elimination with unit pivots; whatever
//! residue remains goes through a classical dense Smith normal form over
//! arbitrary-precision integers. Above the snf threshold the ranks are
//! computed modulo two distinct primes instead, which must agree.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::caps::Caps;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomologyMethod {
    Snf,
    TwoPrime,
}

/// Reduced Betti numbers and torsion per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub reduced_betti: BTreeMap<i64, usize>,
    /// Invariant factors > 1 of the boundary one dimension up, i.e. the
    /// torsion coefficients of the reduced homology in that dimension.
    /// Empty torsion is guaranteed exact only under the snf method.
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
    pub method: HomologyMethod,
    pub chi_tilde: i64,
}

impl HomologyReport {
    pub fn betti(&self, d: i64) -> usize {
        self.reduced_betti.get(&d).copied().unwrap_or(0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(|v| v.is_empty())
    }

    /// Homology is free of rank `count` in dimension `dim` and vanishes in
    /// all others: evidence consistent with a wedge of `count` `dim`-spheres.
    pub fn consistent_with_wedge(&self, dim: i64, count: usize) -> bool {
        self.is_torsion_free()
            && self.betti(dim) == count
            && self.reduced_betti.iter().all(|(&d, &b)| d == dim || b == 0)
    }
}

/// Reduced Betti numbers of a complex.
pub fn betti_numbers(complex: &SimplicialComplex, caps: &Caps) -> Result<HomologyReport> {
    if complex.is_void() {
        return Ok(HomologyReport {
            reduced_betti: BTreeMap::new(),
            torsion: BTreeMap::new(),
            method: HomologyMethod::Snf,
            chi_tilde: 0,
        });
    }
    let total = complex.total_faces();
    let top = complex.dim();
    // boundary matrices as sparse rows: row = d-face, entries over (d-1)-faces
    let boundaries: Vec<Vec<Vec<(u32, i64)>>> =
        (0..=top.max(-1)).map(|d| boundary_rows(complex, d)).collect();

    let use_snf = total <= caps.snf_threshold;
    let mut rank: HashMap<i64, usize> = HashMap::new();
    let mut factors: HashMap<i64, Vec<BigInt>> = HashMap::new();
    rank.insert(top + 1, 0);
    for (k, rows) in boundaries.iter().enumerate() {
        let d = k as i64;
        if use_snf {
            let snf = smith_rank_and_factors(rows.clone());
            factors.insert(d, snf.1);
            rank.insert(d, snf.0);
        } else {
            let (p1, p2) = caps.primes;
            let r1 = rank_mod_p(rows, p1);
            let r2 = rank_mod_p(rows, p2);
            if r1 != r2 {
                // escalate to the exact path
                let snf = smith_rank_and_factors(rows.clone());
                factors.insert(d, snf.1);
                rank.insert(d, snf.0);
            } else {
                rank.insert(d, r1);
            }
        }
    }
    let mut reduced_betti = BTreeMap::new();
    let mut torsion = BTreeMap::new();
    for d in -1..=top {
        let f_d = complex.f(d);
        let b = f_d - rank.get(&d).copied().unwrap_or(0) - rank.get(&(d + 1)).copied().unwrap_or(0);
        if b > 0 {
            reduced_betti.insert(d, b);
        }
        if let Some(fs) = factors.get(&(d + 1)) {
            let tors: Vec<BigInt> =
                fs.iter().filter(|f| f.abs() > BigInt::from(1)).map(|f| f.abs()).collect();
            if !tors.is_empty() {
                torsion.insert(d, tors);
            }
        }
    }
    let chi_tilde = complex.reduced_euler();
    let alt_sum: i64 = reduced_betti
        .iter()
        .map(|(&d, &b)| if d.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
        .sum();
    if alt_sum != chi_tilde {
        return Err(Error::Internal(format!(
            "Σ(-1)^d b_d = {alt_sum} but χ̃ = {chi_tilde}"
        )));
    }
    Ok(HomologyReport {
        reduced_betti,
        torsion,
        method: if use_snf { HomologyMethod::Snf } else { HomologyMethod::TwoPrime },
        chi_tilde,
    })
}

/// Rows of the boundary map C_d -> C_{d-1}. For d = 0 this is the
/// augmentation onto the empty face.
fn boundary_rows(complex: &SimplicialComplex, d: i64) -> Vec<Vec<(u32, i64)>> {
    if d < 0 {
        return Vec::new();
    }
    let d = d as usize;
    let faces = complex.faces_of_dim(d);
    if d == 0 {
        return faces.iter().map(|_| vec![(0u32, 1i64)]).collect();
    }
    let below = complex.faces_of_dim(d - 1);
    faces
        .iter()
        .map(|f| {
            let mut row = Vec::with_capacity(f.len());
            for i in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(i);
                let idx = below
                    .binary_search_by(|x| x.as_slice().cmp(sub.as_slice()))
                    .expect("complex is downward closed");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                row.push((idx as u32, sign));
            }
            row
        })
        .collect()
}

/// Rank and invariant factors over the integers. Unit pivots are eliminated
/// sparsely first; the residual block goes through dense BigInt SNF. Falls
/// back to full dense SNF if the sparse phase would overflow i128.
fn smith_rank_and_factors(rows: Vec<Vec<(u32, i64)>>) -> (usize, Vec<BigInt>) {
    match smith_sparse(&rows) {
        Some(result) => result,
        None => {
            let ncols =
                rows.iter().flat_map(|r| r.iter().map(|&(c, _)| c as usize + 1)).max().unwrap_or(0);
            let mut dense = vec![vec![BigInt::zero(); ncols]; rows.len()];
            for (i, row) in rows.iter().enumerate() {
                for &(c, v) in row {
                    dense[i][c as usize] = BigInt::from(v);
                }
            }
            let factors = dense_smith(dense);
            (factors.len(), factors)
        }
    }
}

fn smith_sparse(rows: &[Vec<(u32, i64)>]) -> Option<(usize, Vec<BigInt>)> {
    let nrows = rows.len();
    let mut mat: Vec<HashMap<u32, i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, v as i128)).collect())
        .collect();
    let mut col_rows: HashMap<u32, HashSet<u32>> = HashMap::new();
    for (r, row) in mat.iter().enumerate() {
        for &c in row.keys() {
            col_rows.entry(c).or_default().insert(r as u32);
        }
    }
    let mut row_alive = vec![true; nrows];
    let mut units = 0usize;
    loop {
        // best unit pivot by Markowitz cost
        let mut best: Option<(usize, u32, usize)> = None;
        for (r, row) in mat.iter().enumerate() {
            if !row_alive[r] {
                continue;
            }
            for (&c, &v) in row {
                if v == 1 || v == -1 {
                    let cost =
                        (row.len() - 1) * (col_rows.get(&c).map_or(1, |s| s.len()) - 1);
                    if best.is_none_or(|(_, _, bc)| cost < bc) {
                        best = Some((r, c, cost));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        units += 1;
        let pivot_row = mat[pr].clone();
        let pivot_val = pivot_row[&pc];
        // eliminate the pivot column from every other live row
        let touching: Vec<u32> = col_rows.get(&pc).map_or(Vec::new(), |s| {
            s.iter().copied().filter(|&r| r as usize != pr && row_alive[r as usize]).collect()
        });
        for r in touching {
            let r = r as usize;
            let Some(&val) = mat[r].get(&pc) else { continue };
            let factor = val * pivot_val; // pivot_val is ±1, its own inverse
            for (&c, &pv) in &pivot_row {
                let delta = factor.checked_mul(pv)?;
                let entry = mat[r].entry(c).or_insert(0);
                *entry = entry.checked_sub(delta)?;
                if *entry == 0 {
                    mat[r].remove(&c);
                    if let Some(s) = col_rows.get_mut(&c) {
                        s.remove(&(r as u32));
                    }
                } else {
                    col_rows.entry(c).or_default().insert(r as u32);
                }
            }
        }
        // retire the pivot row and column
        row_alive[pr] = false;
        for (&c, _) in &pivot_row {
            if let Some(s) = col_rows.get_mut(&c) {
                s.remove(&(pr as u32));
            }
        }
    }
    // residual dense block
    let live_rows: Vec<usize> =
        (0..nrows).filter(|&r| row_alive[r] && !mat[r].is_empty()).collect();
    let mut live_cols: Vec<u32> = live_rows
        .iter()
        .flat_map(|&r| mat[r].keys().copied())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    live_cols.sort_unstable();
    let col_pos: HashMap<u32, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense: Vec<Vec<BigInt>> =
        vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (&c, &v) in &mat[r] {
            dense[i][col_pos[&c]] = BigInt::from(v);
        }
    }
    let residual = dense_smith(dense);
    let mut factors = vec![BigInt::from(1); units];
    factors.extend(residual.iter().cloned());
    Some((units + residual.len(), factors))
}

/// Classical Smith normal form of a dense integer matrix; returns the
/// nonzero diagonal entries d1 | d2 | ...
fn dense_smith(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut k = 0usize;
    while k < nr.min(nc) {
        // smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        if m[k][k].is_negative() {
            for j in k..nc {
                m[k][j] = -m[k][j].clone();
            }
        }
        // clear the column and the row by division with remainder
        let mut dirty = false;
        for i in k + 1..nr {
            if !m[i][k].is_zero() {
                let q = div_round(&m[i][k], &m[k][k]);
                for j in k..nc {
                    let sub = &q * &m[k][j];
                    m[i][j] -= sub;
                }
                if !m[i][k].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in k + 1..nc {
            if !m[k][j].is_zero() {
                let q = div_round(&m[k][j], &m[k][k]);
                for i in k..nr {
                    let sub = &q * &m[i][k];
                    m[i][j] -= sub;
                }
                if !m[k][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // smaller remainders exist; retry the block
        }
        // divisibility: every remaining entry must be divisible by m[k][k]
        let mut fixed = false;
        'scan: for i in k + 1..nr {
            for j in k + 1..nc {
                if !(&m[i][j] % &m[k][k]).is_zero() {
                    // add row i to row k and retry
                    for jj in k..nc {
                        let add = m[i][jj].clone();
                        m[k][jj] += add;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        out.push(m[k][k].clone());
        k += 1;
    }
    out
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - q*b|
    let q = a / b;
    let r = a - &q * b;
    if r.abs() * BigInt::from(2) > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Rank of a sparse integer matrix modulo a prime.
fn rank_mod_p(rows: &[Vec<(u32, i64)>], p: u64) -> usize {
    let modp = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut rank = 0usize;
    for row in rows {
        let mut cur: BTreeMap<u32, u64> = BTreeMap::new();
        for &(c, v) in row {
            let v = modp(v);
            if v != 0 {
                cur.insert(c, v);
            }
        }
        while let Some((&c, &v)) = cur.iter().next() {
            match pivots.get(&c) {
                Some(prow) => {
                    // cur -= (v / prow[c]) * prow; prow is normalized to lead 1
                    let factor = v;
                    for &(cc, pv) in prow {
                        let e = cur.entry(cc).or_insert(0);
                        *e = (*e + p - factor * pv % p) % p;
                        if *e == 0 {
                            cur.remove(&cc);
                        }
                    }
                }
                None => {
                    // normalize to leading 1 and store
                    let inv = mod_inverse(v, p);
                    let stored: Vec<(u32, u64)> =
                        cur.iter().map(|(&cc, &vv)| (cc, vv * inv % p)).collect();
                    pivots.insert(c, stored);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{barycentric, order_complex};
    use crate::poset::Poset;

    fn betti(k: &SimplicialComplex) -> HomologyReport {
        betti_numbers(k, &Caps::default()).unwrap()
    }

    #[test]
    fn spheres_have_one_betti_number() {
        for d in -1..=4i64 {
            let report = betti(&SimplicialComplex::sphere(d));
            assert!(report.consistent_with_wedge(d, 1), "S^{d}: {report:?}");
            assert_eq!(report.chi_tilde, if d.rem_euclid(2) == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn contractibles_have_no_homology() {
        let report = betti(&SimplicialComplex::simplex(4));
        assert!(report.reduced_betti.is_empty());
        assert_eq!(report.chi_tilde, 0);
        let report = betti(&SimplicialComplex::void());
        assert!(report.reduced_betti.is_empty());
    }

    #[test]
    fn circle_from_poset() {
        let (bar, _) = Poset::boolean(3).proper_part().unwrap();
        let k = order_complex(&bar, 1_000_000).unwrap();
        let report = betti(&k);
        assert!(report.consistent_with_wedge(1, 1), "hexagon is a circle");
    }

    #[test]
    fn wedge_of_circles() {
        // theta graph: two vertices joined by three parallel paths
        let k = SimplicialComplex::from_facets(
            &[vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3]],
            1000,
        )
        .unwrap();
        let report = betti(&k);
        assert_eq!(report.betti(1), 2);
        assert_eq!(report.chi_tilde, -2);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // the 6-vertex triangulation of RP^2 (antipodal icosahedron)
        let facets: Vec<Vec<u32>> = vec![
            vec![0, 1, 3],
            vec![0, 1, 4],
            vec![0, 2, 3],
            vec![0, 2, 5],
            vec![0, 4, 5],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 5],
            vec![2, 3, 4],
            vec![3, 4, 5],
        ];
        let k = SimplicialComplex::from_facets(&facets, 1000).unwrap();
        assert_eq!(k.f_vector(), vec![6, 15, 10]);
        let report = betti(&k);
        assert_eq!(report.betti(1), 0);
        assert_eq!(report.betti(2), 0);
        assert_eq!(
            report.torsion.get(&1).map(|v| v.len()),
            Some(1),
            "H1(RP2) = Z/2: {report:?}"
        );
        assert_eq!(report.torsion[&1][0], BigInt::from(2));
        assert!(!report.is_torsion_free());
    }

    #[test]
    fn join_shifts_homology() {
        let caps = Caps::default();
        let s0 = SimplicialComplex::sphere(0);
        let s1 = SimplicialComplex::sphere(1);
        let j = s0.join(&s1, caps.face_cap).unwrap();
        let report = betti(&j);
        assert!(report.consistent_with_wedge(2, 1), "S0 * S1 = S2");
    }

    #[test]
    fn barycentric_preserves_betti() {
        let k = SimplicialComplex::sphere(1);
        let sd = barycentric(&k, 1_000_000).unwrap();
        assert_eq!(betti(&k).reduced_betti, betti(&sd).reduced_betti);
    }

    #[test]
    fn two_prime_path_agrees_with_snf() {
        let (bar, _) = Poset::boolean(4).proper_part().unwrap();
        let k = order_complex(&bar, 1_000_000).unwrap();
        let snf = betti_numbers(&k, &Caps::default()).unwrap();
        let mut small = Caps::default();
        small.snf_threshold = 1;
        let modp = betti_numbers(&k, &small).unwrap();
        assert_eq!(modp.method, HomologyMethod::TwoPrime);
        assert_eq!(snf.reduced_betti, modp.reduced_betti);
        assert_eq!(snf.chi_tilde, modp.chi_tilde);
    }

    #[test]
    fn euler_betti_consistency() {
        for d in 0..4i64 {
            let s = SimplicialComplex::sphere(d);
            let r = betti(&s);
            let alt: i64 = r
                .reduced_betti
                .iter()
                .map(|(&dd, &b)| if dd.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(alt, r.chi_tilde);
        }
    }
}
