//! Subrack lattice enumeration and lattice-theoretic helpers.
//!
//! Enumeration runs Ganter's Next-Closure over the subrack closure operator
//! in the canonical element order, so every closed set is produced exactly
//! once without storing candidates. A 2^n brute-force enumerator is kept as
//! the independent oracle for small racks.

use std::collections::HashMap;

use crate::bits::SubsetBits;
use crate::error::{Error, Result};
use crate::poset::{NodeData, Poset};
use crate::rack::FiniteRack;

/// The lattice of all subracks of a rack, as a poset under inclusion with
/// payloads carrying the subsets. Bottom is the empty subrack, top is X.
pub struct SubrackLattice {
    pub poset: Poset,
    index: HashMap<SubsetBits, u32>,
}

impl std::fmt::Debug for SubrackLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubrackLattice({} nodes)", self.len())
    }
}

impl SubrackLattice {
    /// Enumerate all closed sets lectically (Next-Closure).
    pub fn enumerate(rack: &FiniteRack, node_cap: usize) -> Result<Self> {
        let n = rack.size();
        let mut closed: Vec<SubsetBits> = Vec::new();
        let mut current = rack.subrack_closure(&SubsetBits::empty(n));
        loop {
            if closed.len() >= node_cap {
                return Err(Error::NodeCapExceeded { cap: node_cap });
            }
            closed.push(current.clone());
            match next_closure(rack, &current) {
                Some(next) => current = next,
                None => break,
            }
        }
        Ok(Self::from_closed_sets(closed))
    }

    /// Test all 2^n subsets for closure; the enumeration oracle.
    pub fn enumerate_by_bruteforce(rack: &FiniteRack) -> Result<Self> {
        let n = rack.size();
        if n > 25 {
            return Err(Error::ParamBounds(format!(
                "brute-force enumeration limited to 25 elements, got {n}"
            )));
        }
        let mut closed = Vec::new();
        for mask in 0u32..1 << n {
            let s = SubsetBits::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            if rack.is_subrack(&s) {
                closed.push(s);
            }
        }
        Ok(Self::from_closed_sets(closed))
    }

    fn from_closed_sets(mut closed: Vec<SubsetBits>) -> Self {
        closed.sort_by_key(|s| (s.count(), s.clone()));
        closed.dedup();
        let index: HashMap<SubsetBits, u32> =
            closed.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let payloads: Vec<NodeData> =
            closed.iter().map(|s| NodeData::Subset(s.clone())).collect();
        let poset = Poset::from_leq_fn(payloads, |a, b| closed[a].is_subset(&closed[b]))
            .expect("inclusion is a partial order");
        SubrackLattice { poset, index }
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn subset(&self, i: usize) -> &SubsetBits {
        match self.poset.payload(i) {
            NodeData::Subset(s) => s,
            _ => unreachable!("subrack lattice payloads are subsets"),
        }
    }

    pub fn subsets(&self) -> impl Iterator<Item = &SubsetBits> + '_ {
        (0..self.len()).map(|i| self.subset(i))
    }

    pub fn node_of(&self, s: &SubsetBits) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Meet = intersection (closed sets are intersection-closed).
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.subset(i).intersection(self.subset(j));
        self.node_of(&m).expect("intersection of closed sets is closed") as usize
    }

    /// Join = closure of the union.
    pub fn join(&self, rack: &FiniteRack, i: usize, j: usize) -> usize {
        let u = rack.subrack_closure(&self.subset(i).union(self.subset(j)));
        self.node_of(&u).expect("closure of a union is closed") as usize
    }
}

/// Lectic successor of a closed set, or `None` after the last one.
fn next_closure(rack: &FiniteRack, a: &SubsetBits) -> Option<SubsetBits> {
    let n = rack.size();
    let mut cur = a.clone();
    for i in (0..n).rev() {
        if cur.contains(i) {
            cur.remove(i);
        } else {
            let mut seed = cur.clone();
            seed.insert(i);
            let closed = rack.subrack_closure(&seed);
            if closed.below(i).is_subset(&cur) {
                return Some(closed);
            }
        }
    }
    None
}

/// Lower covers of the unique top element.
pub fn coatoms(poset: &Poset) -> Result<Vec<usize>> {
    let top = poset.top().ok_or(Error::NotAPoset("unique maximum"))?;
    Ok((0..poset.len()).filter(|&i| poset.covers_up(i) == [top as u32]).collect())
}

/// Upper covers of the unique bottom element.
pub fn atoms(poset: &Poset) -> Result<Vec<usize>> {
    let bottom = poset.bottom().ok_or(Error::NotAPoset("unique minimum"))?;
    Ok(poset.covers_up(bottom).iter().map(|&i| i as usize).collect())
}

/// Meet of a nonempty node set in a lattice-shaped poset.
pub fn meet_in(poset: &Poset, nodes: &[usize]) -> Result<usize> {
    debug_assert!(!nodes.is_empty());
    let mut lower = poset.down_set(nodes[0]);
    for &x in &nodes[1..] {
        lower.intersect_with(&poset.down_set(x));
    }
    let candidates: Vec<usize> = lower.iter().collect();
    let best = candidates
        .iter()
        .copied()
        .max_by_key(|&z| poset.down_set(z).count())
        .ok_or(Error::NotALattice { x: nodes[0], y: nodes[0], which: "meet" })?;
    if candidates.iter().all(|&z| poset.leq(z, best)) {
        Ok(best)
    } else {
        Err(Error::NotALattice { x: nodes[0], y: *nodes.last().unwrap(), which: "meet" })
    }
}

/// Join of a nonempty node set in a lattice-shaped poset.
pub fn join_in(poset: &Poset, nodes: &[usize]) -> Result<usize> {
    debug_assert!(!nodes.is_empty());
    let mut upper = poset.up_set(nodes[0]).clone();
    for &x in &nodes[1..] {
        upper.intersect_with(poset.up_set(x));
    }
    let candidates: Vec<usize> = upper.iter().collect();
    let best = candidates
        .iter()
        .copied()
        .max_by_key(|&z| poset.up_set(z).count())
        .ok_or(Error::NotALattice { x: nodes[0], y: nodes[0], which: "join" })?;
    if candidates.iter().all(|&z| poset.leq(best, z)) {
        Ok(best)
    } else {
        Err(Error::NotALattice { x: nodes[0], y: *nodes.last().unwrap(), which: "join" })
    }
}

/// Every pair has a meet and a join.
pub fn is_lattice(poset: &Poset) -> bool {
    for i in 0..poset.len() {
        for j in i + 1..poset.len() {
            if meet_in(poset, &[i, j]).is_err() || join_in(poset, &[i, j]).is_err() {
                return false;
            }
        }
    }
    true
}

/// The subposet `Inf(L, S)` of a bounded lattice: all meets of nonempty
/// subsets of `S` that land in the proper part. `S` defaults to the coatoms.
/// Meets hitting the bottom are dropped (Inf is built from nonempty coatom
/// sets and then intersected with the proper part).
pub struct InfPoset {
    pub poset: Poset,
    /// Lattice node id of each Inf node.
    pub lattice_ids: Vec<usize>,
}

pub fn inf_poset(lattice: &Poset, seeds: Option<&[usize]>) -> Result<InfPoset> {
    let bottom = lattice.bottom().ok_or(Error::NotAPoset("unique minimum"))?;
    let top = lattice.top().ok_or(Error::NotAPoset("unique maximum"))?;
    let seeds: Vec<usize> = match seeds {
        Some(s) => {
            if let Some(&bad) = s.iter().find(|&&x| x == top || x == bottom) {
                return Err(Error::ParamBounds(format!(
                    "seed node {bad} is not in the proper part"
                )));
            }
            s.to_vec()
        }
        None => coatoms(lattice)?,
    };
    let mut members: Vec<usize> = Vec::new();
    let mut seen = SubsetBits::empty(lattice.len());
    for &s in &seeds {
        if !seen.contains(s) {
            seen.insert(s);
            members.push(s);
        }
    }
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        k += 1;
        for idx in 0..members.len() {
            let y = members[idx];
            let m = meet_in(lattice, &[x, y])?;
            if m != bottom && !seen.contains(m) {
                seen.insert(m);
                members.push(m);
            }
        }
    }
    members.sort_unstable();
    Ok(InfPoset { poset: lattice.induced(&members), lattice_ids: members })
}

/// `ε(x)`: the meet of all coatoms above `x`. Defined on the proper part;
/// extensive upward, monotone and idempotent, with image `Inf(L)`.
pub fn epsilon_closure(lattice: &Poset, x: usize) -> Result<usize> {
    let top = lattice.top().ok_or(Error::NotAPoset("unique maximum"))?;
    let bottom = lattice.bottom().ok_or(Error::NotAPoset("unique minimum"))?;
    if x == top || x == bottom {
        return Err(Error::ParamBounds(format!("node {x} is not in the proper part")));
    }
    let above: Vec<usize> =
        coatoms(lattice)?.into_iter().filter(|&c| lattice.leq(x, c)).collect();
    if above.is_empty() {
        return Err(Error::ParamBounds(format!("no coatom above node {x}")));
    }
    meet_in(lattice, &above)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::iso::poset_isomorphic;
    use crate::rack::FiniteRack;
    use proptest::prelude::*;

    fn transposition_rack() -> FiniteRack {
        let g = named::symmetric(4, 20_000).unwrap();
        let t = g
            .conjugacy_classes()
            .into_iter()
            .find(|c| c.count() == 6 && g.order_of(c.min_element().unwrap() as u32) == 2)
            .unwrap();
        FiniteRack::conjugation_rack(&g, &t).unwrap()
    }

    fn a4_g3_rack() -> FiniteRack {
        let g = named::alternating(4, 20_000).unwrap();
        let g3 = g.p_power_elements(3).unwrap();
        FiniteRack::conjugation_rack(&g, &g3).unwrap()
    }

    #[test]
    fn transposition_lattice_has_fifteen_nodes() {
        let lattice = SubrackLattice::enumerate(&transposition_rack(), 200_000).unwrap();
        assert_eq!(lattice.len(), 15);
        assert_eq!(lattice.subset(lattice.bottom()).count(), 0);
        assert_eq!(lattice.subset(lattice.top()).count(), 6);
    }

    #[test]
    fn one_element_rack_lattice() {
        let rack = FiniteRack::new(crate::rack::RackTable::new(1, vec![0]).unwrap(), vec![])
            .unwrap();
        let lattice = SubrackLattice::enumerate(&rack, 200_000).unwrap();
        assert_eq!(lattice.len(), 2);
    }

    #[test]
    fn a4_g3_lattice_matches_bruteforce() {
        let rack = a4_g3_rack();
        let fast = SubrackLattice::enumerate(&rack, 200_000).unwrap();
        let brute = SubrackLattice::enumerate_by_bruteforce(&rack).unwrap();
        assert_eq!(fast.len(), 32, "frozen from the 2^9 oracle");
        let a: Vec<_> = fast.subsets().collect();
        let b: Vec<_> = brute.subsets().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn node_cap_is_enforced() {
        let err = SubrackLattice::enumerate(&a4_g3_rack(), 10).unwrap_err();
        assert!(matches!(err, Error::NodeCapExceeded { cap: 10 }));
    }

    #[test]
    fn meets_and_joins() {
        let rack = transposition_rack();
        let lattice = SubrackLattice::enumerate(&rack, 200_000).unwrap();
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let m = lattice.meet(i, j);
                assert_eq!(
                    lattice.subset(m),
                    &lattice.subset(i).intersection(lattice.subset(j))
                );
                let jn = lattice.join(&rack, i, j);
                assert!(lattice.subset(i).is_subset(lattice.subset(jn)));
                assert!(lattice.subset(j).is_subset(lattice.subset(jn)));
                // agreement with the generic lattice operations
                assert_eq!(meet_in(&lattice.poset, &[i, j]).unwrap(), m);
                assert_eq!(join_in(&lattice.poset, &[i, j]).unwrap(), jn);
            }
        }
        assert!(is_lattice(&lattice.poset));
    }

    #[test]
    fn inf_of_transposition_lattice_is_proper_part() {
        let lattice = SubrackLattice::enumerate(&transposition_rack(), 200_000).unwrap();
        let inf = inf_poset(&lattice.poset, None).unwrap();
        assert_eq!(inf.poset.len(), 13);
        let (bar, _) = lattice.poset.proper_part().unwrap();
        assert!(poset_isomorphic(&inf.poset, &bar).unwrap().is_some());
    }

    #[test]
    fn inf_of_boolean_algebra_is_proper_part() {
        let b3 = Poset::boolean(3);
        let inf = inf_poset(&b3, None).unwrap();
        assert_eq!(inf.poset.len(), 6);
    }

    #[test]
    fn epsilon_on_coatomic_lattice_is_identity() {
        let lattice = SubrackLattice::enumerate(&transposition_rack(), 200_000).unwrap();
        let top = lattice.top();
        let bottom = lattice.bottom();
        for x in 0..lattice.len() {
            if x == top || x == bottom {
                assert!(epsilon_closure(&lattice.poset, x).is_err());
            } else {
                assert_eq!(epsilon_closure(&lattice.poset, x).unwrap(), x);
            }
        }
    }

    #[test]
    fn epsilon_of_atom_below_unique_coatom() {
        // chain 0<1<2<3: proper part {1,2}; coatom {2}; ε(1) = 2
        let c = Poset::chain(3);
        assert_eq!(epsilon_closure(&c, 1).unwrap(), 2);
        assert_eq!(epsilon_closure(&c, 2).unwrap(), 2);
    }

    #[test]
    fn epsilon_laws_and_image() {
        let lattice = SubrackLattice::enumerate(&a4_g3_rack(), 200_000).unwrap();
        let poset = &lattice.poset;
        let top = lattice.top();
        let bottom = lattice.bottom();
        let inf = inf_poset(poset, None).unwrap();
        let mut image = Vec::new();
        for x in 0..poset.len() {
            if x == top || x == bottom {
                continue;
            }
            let e = epsilon_closure(poset, x).unwrap();
            assert!(poset.leq(x, e), "extensive");
            assert_eq!(epsilon_closure(poset, e).unwrap(), e, "idempotent");
            for y in 0..poset.len() {
                if y != top && y != bottom && poset.leq(x, y) {
                    let ey = epsilon_closure(poset, y).unwrap();
                    assert!(poset.leq(e, ey), "monotone");
                }
            }
            image.push(e);
        }
        image.sort_unstable();
        image.dedup();
        assert_eq!(image, inf.lattice_ids, "image(ε) = Inf(L)");
    }

    proptest! {
        /// Lattice laws on random triples: absorption and associativity.
        #[test]
        fn lattice_laws(seed in proptest::collection::vec(0usize..32, 3)) {
            let rack = a4_g3_rack();
            let lattice = SubrackLattice::enumerate(&rack, 200_000).unwrap();
            let (a, b, c) = (seed[0] % lattice.len(), seed[1] % lattice.len(),
                             seed[2] % lattice.len());
            prop_assert_eq!(lattice.meet(a, lattice.join(&rack, a, b)), a);
            prop_assert_eq!(lattice.join(&rack, a, lattice.meet(a, b)), a);
            prop_assert_eq!(
                lattice.meet(a, lattice.meet(b, c)),
                lattice.meet(lattice.meet(a, b), c)
            );
            prop_assert_eq!(
                lattice.join(&rack, a, lattice.join(&rack, b, c)),
                lattice.join(&rack, lattice.join(&rack, a, b), c)
            );
        }
    }
}
