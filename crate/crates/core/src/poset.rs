//! Finite posets with explicit order matrices and Hasse cover lists.
//!
//! Nodes carry stable integer ids (their index) plus an opaque payload.
//! The order relation is stored as up-set bitsets; reflexivity, antisymmetry
//! and transitivity are verified on construction for posets of at most
//! [`VERIFY_LIMIT`] nodes.

use std::fmt;

use crate::bits::SubsetBits;
use crate::error::{Error, Result};
use crate::partition::{IntPartition, SetPartition};

pub const VERIFY_LIMIT: usize = 4096;

/// Payload attached to a poset node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum NodeData {
    /// A subset of some ground set (subracks, element sets).
    Subset(SubsetBits),
    /// A partition of a ground set (orbit structures).
    Partition(SetPartition),
    /// An integer partition.
    Ints(IntPartition),
    /// A free-form display label.
    Label(String),
    /// A product node.
    Pair(Box<NodeData>, Box<NodeData>),
    /// A simplicial-complex face, by vertex ids.
    Face(Vec<u32>),
    /// An orbit of node ids under a group action.
    OrbitClass(Vec<u32>),
    /// Adjoined bounds.
    Bottom,
    Top,
}

impl fmt::Debug for NodeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeData::Subset(s) => write!(f, "{s:?}"),
            NodeData::Partition(p) => write!(f, "{p:?}"),
            NodeData::Ints(p) => write!(f, "{p:?}"),
            NodeData::Label(l) => write!(f, "{l}"),
            NodeData::Pair(a, b) => write!(f, "({a:?},{b:?})"),
            NodeData::Face(v) => write!(f, "F{v:?}"),
            NodeData::OrbitClass(v) => write!(f, "O{v:?}"),
            NodeData::Bottom => write!(f, "0̂"),
            NodeData::Top => write!(f, "1̂"),
        }
    }
}

#[derive(Clone)]
pub struct Poset {
    payloads: Vec<NodeData>,
    /// `up[i]` = all `j` with `i ≤ j`, including `i` itself.
    up: Vec<SubsetBits>,
    covers_up: Vec<Vec<u32>>,
}

impl Poset {
    /// Build from a comparison predicate. The predicate must describe a
    /// partial order; axioms are verified up to [`VERIFY_LIMIT`] nodes
    /// (transitivity is the expensive one and is skipped above the limit).
    pub fn from_leq_fn<F: Fn(usize, usize) -> bool>(
        payloads: Vec<NodeData>,
        leq: F,
    ) -> Result<Self> {
        let n = payloads.len();
        let mut up = vec![SubsetBits::empty(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i].insert(j);
                }
            }
        }
        Self::from_up_sets(payloads, up)
    }

    fn from_up_sets(payloads: Vec<NodeData>, up: Vec<SubsetBits>) -> Result<Self> {
        let n = payloads.len();
        for (i, row) in up.iter().enumerate() {
            if !row.contains(i) {
                return Err(Error::NotAPoset("reflexivity"));
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAPoset("antisymmetry"));
                }
            }
        }
        if n <= VERIFY_LIMIT {
            for i in 0..n {
                for j in up[i].iter() {
                    if !up[j].is_subset(&up[i]) {
                        return Err(Error::NotAPoset("transitivity"));
                    }
                }
            }
        }
        let covers_up = Self::compute_covers(&up);
        Ok(Poset { payloads, up, covers_up })
    }

    fn compute_covers(up: &[SubsetBits]) -> Vec<Vec<u32>> {
        let n = up.len();
        let mut order: Vec<usize> = (0..n).collect();
        // larger up-set = lower in the order, so this is a linear extension
        order.sort_by_key(|&i| std::cmp::Reverse(up[i].count()));
        let mut covers = vec![Vec::new(); n];
        for i in 0..n {
            let mut accepted: Vec<usize> = Vec::new();
            for &j in &order {
                if j == i || !up[i].contains(j) {
                    continue;
                }
                if !accepted.iter().any(|&c| up[c].contains(j)) {
                    accepted.push(j);
                }
            }
            covers[i] = accepted.iter().map(|&j| j as u32).collect();
            covers[i].sort_unstable();
        }
        covers
    }

    pub fn len(&self) -> usize {
        self.payloads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payloads.is_empty()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn payload(&self, i: usize) -> &NodeData {
        &self.payloads[i]
    }

    pub fn payloads(&self) -> &[NodeData] {
        &self.payloads
    }

    pub fn up_set(&self, i: usize) -> &SubsetBits {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> SubsetBits {
        let mut s = SubsetBits::empty(self.len());
        for j in 0..self.len() {
            if self.leq(j, i) {
                s.insert(j);
            }
        }
        s
    }

    /// Upward cover lists (the Hasse diagram).
    pub fn covers_up(&self, i: usize) -> &[u32] {
        &self.covers_up[i]
    }

    pub fn cover_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for &j in &self.covers_up[i] {
                out.push((i as u32, j));
            }
        }
        out
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| !self.lt(j, i))).collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].count() == 1).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        let m = self.minimals();
        (m.len() == 1).then(|| m[0])
    }

    pub fn top(&self) -> Option<usize> {
        let m = self.maximals();
        (m.len() == 1).then(|| m[0])
    }

    /// A linear extension: ascending by shrinking up-sets.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.up[i].count()), i));
        order
    }

    /// Shortest and longest cover-path lengths from a minimal element to
    /// each node.
    pub fn heights(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut hmin = vec![usize::MAX; n];
        let mut hmax = vec![0usize; n];
        let mut covers_down: Vec<Vec<u32>> = vec![Vec::new(); n];
        for i in 0..n {
            for &j in &self.covers_up[i] {
                covers_down[j as usize].push(i as u32);
            }
        }
        for &i in &self.linear_extension() {
            if covers_down[i].is_empty() {
                hmin[i] = 0;
                hmax[i] = 0;
            } else {
                hmin[i] = covers_down[i].iter().map(|&j| hmin[j as usize]).min().unwrap() + 1;
                hmax[i] = covers_down[i].iter().map(|&j| hmax[j as usize]).max().unwrap() + 1;
            }
        }
        (hmin, hmax)
    }

    /// Length of the longest chain.
    pub fn length(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let (_, hmax) = self.heights();
        hmax.into_iter().max().unwrap()
    }

    /// Purity: all maximal chains share one length. When pure, returns the
    /// rank function; otherwise two witness maximal chains of different
    /// lengths.
    pub fn purity_and_rank(&self) -> PurityReport {
        if self.is_empty() {
            return PurityReport { is_pure: true, length: 0, rank: Some(vec![]), witness: None };
        }
        let (hmin, hmax) = self.heights();
        let length = hmax.iter().copied().max().unwrap();
        let ranks_agree = (0..self.len()).all(|i| hmin[i] == hmax[i]);
        let maximal_tops_agree =
            self.maximals().iter().all(|&i| hmax[i] == length);
        if ranks_agree && maximal_tops_agree {
            return PurityReport {
                is_pure: true,
                length,
                rank: Some(hmax),
                witness: None,
            };
        }
        // Two maximal chains of different lengths as evidence. Either some
        // node sees descents of two lengths, or two maximal elements sit at
        // different heights.
        let witness = if let Some(x) = (0..self.len()).find(|&i| hmin[i] != hmax[i]) {
            let ascent = self.saturated_ascent(x);
            let mut long = self.saturated_descent(x, &hmax, true);
            let mut short = self.saturated_descent(x, &hmin, false);
            long.extend_from_slice(&ascent[1..]);
            short.extend_from_slice(&ascent[1..]);
            (long, short)
        } else {
            let maximals = self.maximals();
            let a = *maximals.iter().max_by_key(|&&i| hmax[i]).unwrap();
            let b = *maximals.iter().min_by_key(|&&i| hmax[i]).unwrap();
            (self.saturated_descent(a, &hmax, true), self.saturated_descent(b, &hmax, true))
        };
        debug_assert_ne!(witness.0.len(), witness.1.len());
        PurityReport { is_pure: false, length, rank: None, witness: Some(witness) }
    }

    /// Cover path from a minimal element up to `x`, of length exactly `h[x]`
    /// (`h` = hmax when maximizing, hmin otherwise).
    fn saturated_descent(&self, x: usize, h: &[usize], maximize: bool) -> Vec<usize> {
        let mut covers_down: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for i in 0..self.len() {
            for &j in &self.covers_up[i] {
                covers_down[j as usize].push(i);
            }
        }
        let mut chain = vec![x];
        let mut cur = x;
        while !covers_down[cur].is_empty() {
            let next = if maximize {
                *covers_down[cur].iter().max_by_key(|&&j| h[j]).unwrap()
            } else {
                *covers_down[cur].iter().min_by_key(|&&j| h[j]).unwrap()
            };
            chain.push(next);
            cur = next;
        }
        chain.reverse();
        chain
    }

    /// Cover path from `x` up to some maximal element.
    fn saturated_ascent(&self, x: usize) -> Vec<usize> {
        let mut chain = vec![x];
        let mut cur = x;
        while let Some(&next) = self.covers_up[cur].first() {
            chain.push(next as usize);
            cur = next as usize;
        }
        chain
    }

    // ---- combinators ----

    pub fn induced(&self, nodes: &[usize]) -> Poset {
        let payloads = nodes.iter().map(|&i| self.payloads[i].clone()).collect();
        Poset::from_leq_fn(payloads, |a, b| self.leq(nodes[a], nodes[b]))
            .expect("induced subposet of a poset is a poset")
    }

    pub fn dual(&self) -> Poset {
        Poset::from_leq_fn(self.payloads.clone(), |a, b| self.leq(b, a))
            .expect("dual of a poset is a poset")
    }

    /// Drop the unique top and bottom. Errors when they do not exist.
    pub fn proper_part(&self) -> Result<(Poset, Vec<usize>)> {
        let bottom = self.bottom().ok_or(Error::NotAPoset("unique minimum"))?;
        let top = self.top().ok_or(Error::NotAPoset("unique maximum"))?;
        let nodes: Vec<usize> =
            (0..self.len()).filter(|&i| i != bottom && i != top).collect();
        Ok((self.induced(&nodes), nodes))
    }

    /// `P̂ = P ⊔ {0̂, 1̂}`: a new bottom and top are always adjoined.
    pub fn add_bounds(&self) -> Poset {
        let n = self.len();
        let mut payloads = self.payloads.clone();
        payloads.push(NodeData::Bottom);
        payloads.push(NodeData::Top);
        Poset::from_leq_fn(payloads, |a, b| {
            if a == b || a == n || b == n + 1 {
                return true;
            }
            if b == n || a == n + 1 {
                return false;
            }
            self.leq(a, b)
        })
        .expect("bound extension of a poset is a poset")
    }

    pub fn interval(&self, x: usize, y: usize) -> Result<Poset> {
        if !self.leq(x, y) {
            return Err(Error::BadInterval { x, y });
        }
        let nodes: Vec<usize> =
            (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect();
        Ok(self.induced(&nodes))
    }

    pub fn direct_product(&self, other: &Poset) -> Poset {
        let mut payloads = Vec::with_capacity(self.len() * other.len());
        for i in 0..self.len() {
            for j in 0..other.len() {
                payloads.push(NodeData::Pair(
                    Box::new(self.payloads[i].clone()),
                    Box::new(other.payloads[j].clone()),
                ));
            }
        }
        let m = other.len();
        Poset::from_leq_fn(payloads, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
        .expect("product of posets is a poset")
    }

    /// Ordinal sum: every element of `self` below every element of `other`.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let n = self.len();
        let mut payloads = self.payloads.clone();
        payloads.extend(other.payloads.iter().cloned());
        Poset::from_leq_fn(payloads, |a, b| match (a < n, b < n) {
            (true, true) => self.leq(a, b),
            (false, false) => other.leq(a - n, b - n),
            (true, false) => true,
            (false, true) => false,
        })
        .expect("ordinal sum of posets is a poset")
    }

    fn check_automorphism(&self, map: &[u32]) -> Result<()> {
        let n = self.len();
        if map.len() != n {
            return Err(Error::NotAnAutomorphism(map.len().min(n)));
        }
        let mut seen = vec![false; n];
        for &v in map {
            if v as usize >= n || seen[v as usize] {
                return Err(Error::NotAnAutomorphism(v as usize));
            }
            seen[v as usize] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) != self.leq(map[i] as usize, map[j] as usize) {
                    return Err(Error::NotAnAutomorphism(i));
                }
            }
        }
        Ok(())
    }

    /// Nodes fixed by every supplied automorphism.
    pub fn fixed_point_subposet(&self, maps: &[Vec<u32>]) -> Result<Poset> {
        for m in maps {
            self.check_automorphism(m)?;
        }
        let nodes: Vec<usize> = (0..self.len())
            .filter(|&i| maps.iter().all(|m| m[i] as usize == i))
            .collect();
        Ok(self.induced(&nodes))
    }

    /// Quotient by the group generated by the supplied automorphisms:
    /// nodes are orbits, the relation is generated by `U < V` between orbit
    /// representatives and then transitively closed. Returns the quotient
    /// and the orbit id of each node (the poset map ω).
    pub fn orb_poset(&self, maps: &[Vec<u32>]) -> Result<(Poset, Vec<u32>)> {
        for m in maps {
            self.check_automorphism(m)?;
        }
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for m in maps {
            for i in 0..n {
                let (a, b) = (find(&mut parent, i), find(&mut parent, m[i] as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbit_id = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            if orbit_id[r] == u32::MAX {
                orbit_id[r] = orbits.len() as u32;
                orbits.push(Vec::new());
            }
            orbit_id[i] = orbit_id[r];
            orbits[orbit_id[r] as usize].push(i as u32);
        }
        let m = orbits.len();
        let mut rel = vec![SubsetBits::empty(m); m];
        for (o, members) in orbits.iter().enumerate() {
            rel[o].insert(o);
            for &u in members {
                for v in self.up[u as usize].iter() {
                    rel[o].insert(orbit_id[v] as usize);
                }
            }
        }
        // transitive closure
        loop {
            let mut changed = false;
            for o in 0..m {
                let mut acc = rel[o].clone();
                for q in rel[o].iter() {
                    acc.union_with(&rel[q]);
                }
                if acc != rel[o] {
                    rel[o] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let payloads: Vec<NodeData> =
            orbits.iter().map(|o| NodeData::OrbitClass(o.clone())).collect();
        let poset = Poset::from_up_sets(payloads, rel)?;
        Ok((poset, orbit_id))
    }

    // ---- small standard posets ----

    /// Chain with `k+1` nodes (length `k`).
    pub fn chain(k: usize) -> Poset {
        let payloads = (0..=k).map(|i| NodeData::Label(i.to_string())).collect();
        Poset::from_leq_fn(payloads, |a, b| a <= b).expect("chain")
    }

    pub fn antichain(k: usize) -> Poset {
        let payloads = (0..k).map(|i| NodeData::Label(i.to_string())).collect();
        Poset::from_leq_fn(payloads, |a, b| a == b).expect("antichain")
    }

    /// Boolean algebra `B_m`: all subsets of an `m`-set ordered by inclusion.
    pub fn boolean(m: usize) -> Poset {
        let payloads: Vec<NodeData> = (0..1usize << m)
            .map(|mask| {
                NodeData::Subset(SubsetBits::from_indices(
                    m,
                    (0..m).filter(|&i| mask >> i & 1 == 1),
                ))
            })
            .collect();
        Poset::from_leq_fn(payloads, |a, b| a & !b == 0).expect("boolean algebra")
    }
}

#[derive(Debug, Clone)]
pub struct PurityReport {
    pub is_pure: bool,
    pub length: usize,
    pub rank: Option<Vec<usize>>,
    /// Two maximal chains with different lengths, when impure.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Poset({} nodes)", self.len())?;
        for i in 0..self.len() {
            writeln!(f, "  {i}: {:?} covers->{:?}", self.payloads[i], self.covers_up[i])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_of_boolean_algebra() {
        let b3 = Poset::boolean(3);
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.bottom(), Some(0));
        assert_eq!(b3.top(), Some(7));
        let total: usize = (0..8).map(|i| b3.covers_up(i).len()).sum();
        assert_eq!(total, 12, "B3 has 12 cover edges");
        let report = b3.purity_and_rank();
        assert!(report.is_pure);
        assert_eq!(report.length, 3);
    }

    #[test]
    fn rejects_non_posets() {
        // 2-cycle
        let err = Poset::from_leq_fn(
            vec![NodeData::Label("a".into()), NodeData::Label("b".into())],
            |_, _| true,
        );
        assert!(matches!(err, Err(Error::NotAPoset("antisymmetry"))));
        let err = Poset::from_leq_fn(vec![NodeData::Bottom], |_, _| false);
        assert!(matches!(err, Err(Error::NotAPoset("reflexivity"))));
        // 0<1, 1<2, but not 0<2
        let err = Poset::from_leq_fn(
            (0..3).map(|i| NodeData::Label(i.to_string())).collect(),
            |a, b| a == b || (a + 1 == b),
        );
        assert!(matches!(err, Err(Error::NotAPoset("transitivity"))));
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let p = Poset::boolean(3);
        let dd = p.dual().dual();
        assert_eq!(p.len(), dd.len());
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert_eq!(p.leq(i, j), dd.leq(i, j));
            }
        }
    }

    #[test]
    fn proper_part_and_bounds() {
        let b3 = Poset::boolean(3);
        let (bar, kept) = b3.proper_part().unwrap();
        assert_eq!(bar.len(), 6);
        assert_eq!(kept.len(), 6);
        // adding bounds to the proper part gives a bounded poset again
        let hat = bar.add_bounds();
        assert_eq!(hat.len(), 8);
        assert!(hat.bottom().is_some() && hat.top().is_some());
        // P̂ adds bounds even to a bounded poset
        assert_eq!(b3.add_bounds().len(), 10);
        assert!(Poset::antichain(2).proper_part().is_err());
    }

    #[test]
    fn interval_checks_order() {
        let b3 = Poset::boolean(3);
        assert!(b3.interval(1, 2).is_err());
        let iv = b3.interval(0, 3).unwrap();
        assert_eq!(iv.len(), 4, "[∅, {{0,1}}] is a diamond");
    }

    #[test]
    fn ordinal_sum_of_antichains_is_complete_bipartite() {
        let p = Poset::antichain(2).ordinal_sum(&Poset::antichain(2));
        assert_eq!(p.len(), 4);
        let covers: usize = (0..4).map(|i| p.covers_up(i).len()).sum();
        assert_eq!(covers, 4);
        assert!(p.leq(0, 2) && p.leq(0, 3) && p.leq(1, 2) && p.leq(1, 3));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn direct_product_of_chains_is_grid() {
        let p = Poset::chain(1).direct_product(&Poset::chain(1));
        assert_eq!(p.len(), 4);
        let report = p.purity_and_rank();
        assert!(report.is_pure);
        assert_eq!(report.length, 2);
    }

    #[test]
    fn purity_detects_uneven_chains() {
        // bottom < a < top and bottom < top': two maximal chains of lengths 2, 1
        let p = Poset::from_leq_fn(
            (0..4).map(|i| NodeData::Label(i.to_string())).collect(),
            |a, b| {
                a == b
                    || matches!(
                        (a, b),
                        (0, 1) | (0, 2) | (1, 2) // chain 0<1<2
                    )
                    || (a, b) == (0, 3) // short branch 0<3
            },
        )
        .unwrap();
        let report = p.purity_and_rank();
        assert!(!report.is_pure);
        assert_eq!(report.length, 2);
        let (long, short) = report.witness.unwrap();
        assert_ne!(long.len(), short.len());
        for chain in [&long, &short] {
            for w in chain.windows(2) {
                assert!(p.covers_up(w[0]).contains(&(w[1] as u32)));
            }
        }
    }

    #[test]
    fn chain_poset_is_pure_with_ranks() {
        let p = Poset::chain(3);
        let report = p.purity_and_rank();
        assert!(report.is_pure);
        assert_eq!(report.length, 3);
        assert_eq!(report.rank.unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn fixed_points_of_swap() {
        // B2: swapping the two atoms fixes bottom and top
        let b2 = Poset::boolean(2);
        let swap = vec![0u32, 2, 1, 3];
        let fixed = b2.fixed_point_subposet(&[swap]).unwrap();
        assert_eq!(fixed.len(), 2);
        // a non-automorphism is rejected
        let bad = vec![1u32, 0, 2, 3];
        assert!(b2.fixed_point_subposet(&[bad]).is_err());
    }

    #[test]
    fn orb_poset_trivial_and_full() {
        let b2 = Poset::boolean(2);
        let (q, omega) = b2.orb_poset(&[]).unwrap();
        assert_eq!(q.len(), b2.len());
        assert_eq!(omega.len(), 4);
        // full swap action on an antichain collapses it
        let a3 = Poset::antichain(3);
        let rot = vec![1u32, 2, 0];
        let (q, _) = a3.orb_poset(&[rot]).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn orb_poset_of_boolean_by_atom_swap() {
        let b2 = Poset::boolean(2);
        let swap = vec![0u32, 2, 1, 3];
        let (q, omega) = b2.orb_poset(&[swap]).unwrap();
        assert_eq!(q.len(), 3, "bottom, merged atoms, top");
        // ω is order-preserving
        for i in 0..4 {
            for j in 0..4 {
                if b2.leq(i, j) {
                    assert!(q.leq(omega[i] as usize, omega[j] as usize));
                }
            }
        }
    }
}
