//! Simplicial complexes: order complexes, crosscut complexes, joins,
//! barycentric subdivision, Euler characteristics and shellings.
//!
//! Faces are stored explicitly, grouped by dimension, each face a sorted
//! vertex list. The empty face is tracked: every nonvoid complex contains
//! it, and the complex `{∅}` is the (-1)-sphere. The void complex (no faces
//! at all) is distinct and has reduced Euler characteristic 0.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::poset::{NodeData, Poset};

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `faces[d]` = sorted list of d-dimensional faces (d+1 vertices each).
    faces: Vec<Vec<Vec<u32>>>,
    has_empty: bool,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(f = {:?}, empty = {})", self.f_vector(), self.has_empty)
    }
}

impl SimplicialComplex {
    /// The void complex: no faces, not even the empty one.
    pub fn void() -> Self {
        SimplicialComplex { faces: Vec::new(), has_empty: false }
    }

    /// The complex `{∅}`, i.e. the (-1)-sphere.
    pub fn empty() -> Self {
        SimplicialComplex { faces: Vec::new(), has_empty: true }
    }

    /// Downward closure of the given faces.
    pub fn from_facets(facets: &[Vec<u32>], face_cap: usize) -> Result<Self> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut count = 1usize; // the empty face
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            if k > 25 {
                return Err(Error::FaceCapExceeded { cap: face_cap });
            }
            for mask in 1u32..1 << k {
                let sub: Vec<u32> =
                    (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                if seen.insert(sub) {
                    count += 1;
                    if count > face_cap {
                        return Err(Error::FaceCapExceeded { cap: face_cap });
                    }
                }
            }
        }
        Ok(Self::from_face_set(seen))
    }

    fn from_face_set(set: HashSet<Vec<u32>>) -> Self {
        let maxdim = set.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); maxdim];
        for f in set {
            if !f.is_empty() {
                let d = f.len() - 1;
                faces[d].push(f);
            }
        }
        for bucket in &mut faces {
            bucket.sort();
        }
        while faces.last().is_some_and(|b| b.is_empty()) {
            faces.pop();
        }
        SimplicialComplex { faces, has_empty: true }
    }

    pub fn is_void(&self) -> bool {
        !self.has_empty
    }

    /// Dimension of the complex; -1 for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn has_empty_face(&self) -> bool {
        self.has_empty
    }

    /// Number of d-dimensional faces; `f(-1)` counts the empty face.
    pub fn f(&self, d: i64) -> usize {
        if d == -1 {
            return usize::from(self.has_empty);
        }
        usize::try_from(d).ok().and_then(|d| self.faces.get(d)).map_or(0, |b| b.len())
    }

    /// Face counts from dimension 0 upward.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|b| b.len()).collect()
    }

    pub fn faces_of_dim(&self, d: usize) -> &[Vec<u32>] {
        self.faces.get(d).map_or(&[], |b| b.as_slice())
    }

    /// Total face count including the empty face.
    pub fn total_faces(&self) -> usize {
        usize::from(self.has_empty) + self.faces.iter().map(|b| b.len()).sum::<usize>()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces_of_dim(0).iter().map(|f| f[0]).collect()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        if face.is_empty() {
            return self.has_empty;
        }
        self.faces
            .get(face.len() - 1)
            .is_some_and(|b| b.binary_search_by(|x| x.as_slice().cmp(face)).is_ok())
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        if self.is_void() {
            return Vec::new();
        }
        if self.faces.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            for f in &self.faces[d] {
                let contained = self
                    .faces
                    .get(d + 1)
                    .is_some_and(|next| next.iter().any(|g| is_subset_sorted(f, g)));
                if !contained {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// `χ̃ = Σ_{d ≥ -1} (-1)^d f_d`; the void complex has `χ̃ = 0`.
    pub fn reduced_euler(&self) -> i64 {
        if self.is_void() {
            return 0;
        }
        let mut chi: i64 = -1;
        for (d, bucket) in self.faces.iter().enumerate() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            chi += sign * bucket.len() as i64;
        }
        chi
    }

    /// Downward-closedness; a structural self-check used in tests.
    pub fn is_downward_closed(&self) -> bool {
        for d in 1..self.faces.len() {
            for f in &self.faces[d] {
                for i in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(i);
                    if !self.contains(&sub) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Join: faces are unions of a face of `self` and a face of `other`,
    /// with `other`'s vertices relabeled into a disjoint range.
    pub fn join(&self, other: &SimplicialComplex, face_cap: usize) -> Result<SimplicialComplex> {
        if self.is_void() || other.is_void() {
            return Ok(SimplicialComplex::void());
        }
        let offset = self.vertices().iter().copied().max().map_or(0, |m| m + 1);
        let mut set: HashSet<Vec<u32>> = HashSet::new();
        let mut count = 1usize;
        for a in self.all_faces_inclusive() {
            for b in other.all_faces_inclusive() {
                let mut f = a.clone();
                f.extend(b.iter().map(|&v| v + offset));
                if f.is_empty() {
                    continue;
                }
                if set.insert(f) {
                    count += 1;
                    if count > face_cap {
                        return Err(Error::FaceCapExceeded { cap: face_cap });
                    }
                }
            }
        }
        Ok(Self::from_face_set(set))
    }

    fn all_faces_inclusive(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for bucket in &self.faces {
            out.extend(bucket.iter().cloned());
        }
        out
    }

    /// Boundary of the (d+1)-simplex; `sphere(-1) = {∅}`.
    pub fn sphere(d: i64) -> SimplicialComplex {
        if d < -1 {
            return SimplicialComplex::void();
        }
        if d == -1 {
            return SimplicialComplex::empty();
        }
        let n = (d + 2) as u32;
        let vertices: Vec<u32> = (0..n).collect();
        let facets: Vec<Vec<u32>> = (0..n)
            .map(|skip| vertices.iter().copied().filter(|&v| v != skip).collect())
            .collect();
        Self::from_facets(&facets, usize::MAX).expect("simplex boundary is small")
    }

    /// The full simplex on `k` vertices.
    pub fn simplex(k: usize) -> SimplicialComplex {
        let all: Vec<u32> = (0..k as u32).collect();
        Self::from_facets(&[all], usize::MAX).expect("simplex is small")
    }
}

pub(crate) fn is_subset_sorted(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

/// The order complex Δ(P): faces are the chains of `P`, node ids become
/// vertex ids. Δ(empty poset) = {∅}.
pub fn order_complex(poset: &Poset, face_cap: usize) -> Result<SimplicialComplex> {
    let n = poset.len();
    let mut set: HashSet<Vec<u32>> = HashSet::new();
    let mut count = 1usize;
    let mut stack: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        count += 1;
        if count > face_cap {
            return Err(Error::FaceCapExceeded { cap: face_cap });
        }
        let last = *chain.last().unwrap() as usize;
        for j in 0..n {
            if poset.lt(last, j) {
                let mut next = chain.clone();
                next.push(j as u32);
                stack.push(next);
            }
        }
        let mut face = chain;
        face.sort_unstable();
        set.insert(face);
    }
    Ok(SimplicialComplex::from_face_set(set))
}

/// Face poset: all nonempty faces ordered by inclusion.
pub fn face_poset(complex: &SimplicialComplex) -> Poset {
    let mut payloads = Vec::new();
    let mut all: Vec<Vec<u32>> = Vec::new();
    for d in 0..complex.f_vector().len() {
        for f in complex.faces_of_dim(d) {
            payloads.push(NodeData::Face(f.clone()));
            all.push(f.clone());
        }
    }
    Poset::from_leq_fn(payloads, |a, b| is_subset_sorted(&all[a], &all[b]))
        .expect("inclusion of faces is a partial order")
}

/// First barycentric subdivision `sd(Ω) = Δ(P(Ω))`.
pub fn barycentric(complex: &SimplicialComplex, face_cap: usize) -> Result<SimplicialComplex> {
    order_complex(&face_poset(complex), face_cap)
}

/// Crosscut complex Δ(P, C): vertices are the positions in the cut `C`,
/// simplices the subsets of `C` having an upper or a lower bound in `P`.
/// The cut is verified to be a crosscut; violations name the condition.
pub fn crosscut_complex(
    poset: &Poset,
    cut: &[usize],
    face_cap: usize,
    search_cap: usize,
) -> Result<SimplicialComplex> {
    let n = poset.len();
    let m = cut.len();
    for (a, &x) in cut.iter().enumerate() {
        for &y in &cut[a + 1..] {
            if poset.leq(x, y) || poset.leq(y, x) {
                return Err(Error::NotACrosscut(format!(
                    "not an antichain: {x} and {y} are comparable"
                )));
            }
        }
    }
    verify_chain_comparability(poset, cut, search_cap)?;

    // The maximal bounded subsets of C are indexed by elements of P:
    // everything above p, and everything below p.
    let mut generators: HashSet<Vec<u32>> = HashSet::new();
    for p in 0..n {
        let above: Vec<u32> =
            (0..m).filter(|&c| poset.leq(p, cut[c])).map(|c| c as u32).collect();
        if !above.is_empty() {
            generators.insert(above);
        }
        let below: Vec<u32> =
            (0..m).filter(|&c| poset.leq(cut[c], p)).map(|c| c as u32).collect();
        if !below.is_empty() {
            generators.insert(below);
        }
    }
    let gen_list: Vec<Vec<u32>> = generators.into_iter().collect();
    let complex = SimplicialComplex::from_facets(&gen_list, face_cap)?;

    // Bound condition: every bounded subset needs a join or a meet in P.
    for d in 0..complex.f_vector().len() {
        for face in complex.faces_of_dim(d) {
            let members: Vec<usize> = face.iter().map(|&c| cut[c as usize]).collect();
            let uppers: Vec<usize> =
                (0..n).filter(|&p| members.iter().all(|&x| poset.leq(x, p))).collect();
            let lowers: Vec<usize> =
                (0..n).filter(|&p| members.iter().all(|&x| poset.leq(p, x))).collect();
            let join_ok = uppers.iter().any(|&u| uppers.iter().all(|&v| poset.leq(u, v)));
            let meet_ok = lowers.iter().any(|&u| lowers.iter().all(|&v| poset.leq(v, u)));
            if !(join_ok || meet_ok) {
                return Err(Error::NotACrosscut(format!(
                    "bounded subset {face:?} has neither a join nor a meet"
                )));
            }
        }
    }
    Ok(complex)
}

/// Crosscut condition (ii): every maximal chain has some cut element
/// comparable to all of its members. DFS over saturated chains carrying the
/// set of still-compatible cut members, memoized on (node, set).
fn verify_chain_comparability(poset: &Poset, cut: &[usize], search_cap: usize) -> Result<()> {
    let n = poset.len();
    let m = cut.len();
    if m > 64 {
        return Err(Error::SearchCapExceeded { cap: 64 });
    }
    let comparable: Vec<u64> = (0..n)
        .map(|x| {
            let mut mask = 0u64;
            for (c, &y) in cut.iter().enumerate() {
                if poset.leq(x, y) || poset.leq(y, x) {
                    mask |= 1 << c;
                }
            }
            mask
        })
        .collect();
    let mut memo: HashSet<(usize, u64)> = HashSet::new();
    let mut stack: Vec<(usize, u64)> =
        poset.minimals().into_iter().map(|x| (x, comparable[x])).collect();
    while let Some((x, compat)) = stack.pop() {
        if compat == 0 {
            return Err(Error::NotACrosscut(format!(
                "a maximal chain through node {x} is comparable to no cut element"
            )));
        }
        if !memo.insert((x, compat)) {
            continue;
        }
        if memo.len() > search_cap {
            return Err(Error::SearchCapExceeded { cap: search_cap });
        }
        for &y in poset.covers_up(x) {
            stack.push((y as usize, compat & comparable[y as usize]));
        }
    }
    Ok(())
}

/// Result of verifying a facet order against the shelling condition.
#[derive(Debug, Clone)]
pub struct ShellingReport {
    pub is_shelling: bool,
    /// 1-based step and reason of the first violation.
    pub violation: Option<(usize, String)>,
    /// For each dimension i, how many i-facets had their entire boundary in
    /// the union of earlier facets; these count the wedge spheres.
    pub sphere_counts: BTreeMap<i64, usize>,
}

/// Verify that each facet meets the union of the earlier ones in a pure
/// complex of dimension one less than its own.
pub fn verify_shelling(
    complex: &SimplicialComplex,
    order: &[Vec<u32>],
) -> Result<ShellingReport> {
    let mut facets = complex.facets();
    facets.sort();
    let given: Vec<Vec<u32>> = order
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f
        })
        .collect();
    {
        let mut sorted = given.clone();
        sorted.sort();
        if sorted != facets {
            return Err(Error::BadFacetOrder(
                "order must list every facet exactly once".into(),
            ));
        }
    }
    let mut sphere_counts: BTreeMap<i64, usize> = BTreeMap::new();
    for k in 1..given.len() {
        let fk = &given[k];
        let dim_fk = fk.len() as i64 - 1;
        let inters: Vec<Vec<u32>> = given[..k]
            .iter()
            .map(|earlier| {
                fk.iter().copied().filter(|v| earlier.binary_search(v).is_ok()).collect()
            })
            .collect();
        if fk.len() > 1 {
            let maximal: Vec<&Vec<u32>> = inters
                .iter()
                .filter(|i| {
                    !inters.iter().any(|j| j.len() > i.len() && is_subset_sorted(i, j))
                })
                .collect();
            let reason = if maximal.iter().all(|i| i.is_empty()) {
                Some(format!("facet {fk:?} does not meet the union of earlier facets"))
            } else {
                maximal.iter().find(|i| i.len() != fk.len() - 1).map(|bad| {
                    format!(
                        "intersection {bad:?} of facet {fk:?} with earlier facets \
                         is not pure of codimension 1"
                    )
                })
            };
            if let Some(reason) = reason {
                return Ok(ShellingReport {
                    is_shelling: false,
                    violation: Some((k + 1, reason)),
                    sphere_counts: BTreeMap::new(),
                });
            }
        }
        // fully covered: every boundary ridge lies in an earlier facet
        let fully = (0..fk.len()).all(|skip| {
            let ridge: Vec<u32> = fk
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            inters.iter().any(|i| is_subset_sorted(&ridge, i))
        });
        if fully {
            *sphere_counts.entry(dim_fk).or_insert(0) += 1;
        }
    }
    Ok(ShellingReport { is_shelling: true, violation: None, sphere_counts })
}

/// DFS for a shelling order, memoizing dead facet sets (extendability of a
/// partial shelling depends only on the set of placed facets).
pub fn search_shelling(
    complex: &SimplicialComplex,
    search_cap: usize,
) -> Result<Option<Vec<Vec<u32>>>> {
    let mut facets = complex.facets();
    for f in &mut facets {
        f.sort_unstable();
    }
    let t = facets.len();
    if t > 40 {
        return Err(Error::ParamBounds(format!(
            "shelling search limited to 40 facets, got {t}"
        )));
    }
    if t <= 1 {
        return Ok(Some(facets));
    }

    fn step_ok(facets: &[Vec<u32>], order: &[usize], candidate: usize) -> bool {
        let fk = &facets[candidate];
        if fk.len() == 1 {
            return true;
        }
        let inters: Vec<Vec<u32>> = order
            .iter()
            .map(|&i| {
                fk.iter()
                    .copied()
                    .filter(|v| facets[i].binary_search(v).is_ok())
                    .collect::<Vec<u32>>()
            })
            .collect();
        let maximal: Vec<&Vec<u32>> = inters
            .iter()
            .filter(|i| !inters.iter().any(|j| j.len() > i.len() && is_subset_sorted(i, j)))
            .collect();
        !maximal.iter().all(|i| i.is_empty())
            && maximal.iter().all(|i| i.len() == fk.len() - 1)
    }

    fn dfs(
        facets: &[Vec<u32>],
        order: &mut Vec<usize>,
        used: u64,
        dead: &mut HashSet<u64>,
        states: &mut usize,
        search_cap: usize,
    ) -> Result<bool> {
        if order.len() == facets.len() {
            return Ok(true);
        }
        if dead.contains(&used) {
            return Ok(false);
        }
        *states += 1;
        if *states > search_cap {
            return Err(Error::SearchCapExceeded { cap: search_cap });
        }
        for c in 0..facets.len() {
            if used >> c & 1 == 1 {
                continue;
            }
            if order.is_empty() || step_ok(facets, order, c) {
                order.push(c);
                if dfs(facets, order, used | 1 << c, dead, states, search_cap)? {
                    return Ok(true);
                }
                order.pop();
            }
        }
        dead.insert(used);
        Ok(false)
    }

    let mut order: Vec<usize> = Vec::new();
    let mut dead: HashSet<u64> = HashSet::new();
    let mut states = 0usize;
    if dfs(&facets, &mut order, 0, &mut dead, &mut states, search_cap)? {
        Ok(Some(order.into_iter().map(|i| facets[i].clone()).collect()))
    } else {
        Ok(None)
    }
}
