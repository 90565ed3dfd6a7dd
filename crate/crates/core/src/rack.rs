//! Finite racks and conjugation racks.
//!
//! A rack is a set with a binary operation `▷` whose left multiplications
//! `φ_a : x ↦ a ▷ x` are automorphisms. Rack elements here are dense indices
//! `0..n` with display labels kept separately; subsets are `SubsetBits`.

use serde::{Deserialize, Serialize};

use crate::bits::SubsetBits;
use crate::error::{Error, Result};
use crate::group::{ElementSet, PermGroup};
use crate::partition::SetPartition;

/// Racks are capped at 128 elements (two machine words per subset).
pub const MAX_RACK_SIZE: usize = 128;

/// Partition of the rack's element set into orbits of a generated inner group.
pub type OrbitStructure = SetPartition;

/// How a rack was constructed, for artifact provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub group: String,
    /// Canonical group element indices backing each rack element.
    pub member_indices: Vec<u32>,
}

/// A raw operation table that may or may not satisfy the rack axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RackTable {
    size: usize,
    entries: Vec<u8>,
}

impl RackTable {
    pub fn new(size: usize, entries: Vec<u8>) -> Result<Self> {
        if size > MAX_RACK_SIZE {
            return Err(Error::RackTooLarge(size, MAX_RACK_SIZE));
        }
        if entries.len() != size * size {
            return Err(Error::InvalidInput(format!(
                "table has {} entries, expected {}",
                entries.len(),
                size * size
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as usize >= size) {
            return Err(Error::InvalidInput(format!("table entry {bad} out of range")));
        }
        Ok(RackTable { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.size + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u8] {
        &self.entries[a * self.size..(a + 1) * self.size]
    }
}

/// Verification report for the rack axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub is_rack: bool,
    pub is_quandle: bool,
    /// (a, b, c) with a ▷ (b ▷ c) != (a ▷ b) ▷ (a ▷ c).
    pub a1_violations: Vec<(usize, usize, usize)>,
    /// Rows that are not bijections.
    pub a2_violations: Vec<usize>,
    /// Elements with a ▷ a != a.
    pub a3_violations: Vec<usize>,
}

/// Exhaustive check of (A1) self-distributivity, (A2) row bijectivity and
/// (A3) idempotence.
pub fn check_axioms(table: &RackTable) -> AxiomReport {
    let n = table.size();
    let mut a2 = Vec::new();
    for a in 0..n {
        let mut seen = vec![false; n];
        let mut ok = true;
        for b in 0..n {
            let v = table.op(a, b);
            if seen[v] {
                ok = false;
            }
            seen[v] = true;
        }
        if !ok {
            a2.push(a);
        }
    }
    let mut a1 = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table.op(a, table.op(b, c)) != table.op(table.op(a, b), table.op(a, c)) {
                    a1.push((a, b, c));
                }
            }
        }
    }
    let a3: Vec<usize> = (0..n).filter(|&a| table.op(a, a) != a).collect();
    AxiomReport {
        is_rack: a1.is_empty() && a2.is_empty(),
        is_quandle: a1.is_empty() && a2.is_empty() && a3.is_empty(),
        a1_violations: a1,
        a2_violations: a2,
        a3_violations: a3,
    }
}

/// A verified finite rack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRack {
    table: RackTable,
    labels: Vec<String>,
    is_quandle: bool,
    provenance: Option<Provenance>,
}

impl FiniteRack {
    /// Wrap a table after verifying the rack axioms.
    pub fn new(table: RackTable, labels: Vec<String>) -> Result<Self> {
        let report = check_axioms(&table);
        if !report.is_rack {
            let why = if !report.a2_violations.is_empty() {
                format!("row {} is not a bijection", report.a2_violations[0])
            } else {
                let (a, b, c) = report.a1_violations[0];
                format!("self-distributivity fails at ({a},{b},{c})")
            };
            return Err(Error::NotARack(why));
        }
        let labels = if labels.is_empty() {
            (0..table.size()).map(|i| i.to_string()).collect()
        } else if labels.len() == table.size() {
            labels
        } else {
            return Err(Error::InvalidInput("label count differs from rack size".into()));
        };
        Ok(FiniteRack { is_quandle: report.is_quandle, table, labels, provenance: None })
    }

    /// The conjugation rack on a conjugation-closed subset of a group.
    ///
    /// Covers the three named constructions: the group rack (S = G), a class
    /// rack (S = union of conjugacy classes) and the p-power rack (S = G_p).
    pub fn conjugation_rack(group: &PermGroup, members: &ElementSet) -> Result<Self> {
        let idx: Vec<u32> = members.iter().map(|i| i as u32).collect();
        let n = idx.len();
        if n > MAX_RACK_SIZE {
            return Err(Error::RackTooLarge(n, MAX_RACK_SIZE));
        }
        let mut pos = vec![u8::MAX; group.order()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i as usize] = k as u8;
        }
        let mut entries = vec![0u8; n * n];
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                let c = group.conj(ia, ib);
                if pos[c as usize] == u8::MAX {
                    return Err(Error::NotConjugationClosed {
                        a: ia as usize,
                        b: ib as usize,
                    });
                }
                entries[a * n + b] = pos[c as usize];
            }
        }
        let table = RackTable::new(n, entries)?;
        let labels = idx.iter().map(|&i| group.element(i).to_string()).collect();
        let mut rack = FiniteRack::new(table, labels)?;
        debug_assert!(rack.is_quandle);
        rack.provenance = Some(Provenance {
            group: format!("group of order {} on {} points", group.order(), group.degree()),
            member_indices: idx,
        });
        Ok(rack)
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table.op(a, b)
    }

    pub fn table(&self) -> &RackTable {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn is_quandle(&self) -> bool {
        self.is_quandle
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn empty_subset(&self) -> SubsetBits {
        SubsetBits::empty(self.size())
    }

    pub fn full_subset(&self) -> SubsetBits {
        SubsetBits::full(self.size())
    }

    /// Least superset of `s` closed under `▷` restricted to itself. For
    /// finite racks closure under `▷` alone suffices: rows are bijections,
    /// so they restrict to bijections of closed subsets.
    pub fn subrack_closure(&self, s: &SubsetBits) -> SubsetBits {
        let mut cur = s.clone();
        let mut frontier: Vec<usize> = cur.iter().collect();
        while let Some(b) = frontier.pop() {
            for a in cur.clone().iter() {
                let ab = self.op(a, b);
                if !cur.contains(ab) {
                    cur.insert(ab);
                    frontier.push(ab);
                }
                let ba = self.op(b, a);
                if !cur.contains(ba) {
                    cur.insert(ba);
                    frontier.push(ba);
                }
            }
        }
        cur
    }

    /// `None` if closed, else a witness pair `(a, b)` with `a ▷ b` outside.
    pub fn closure_violation(&self, s: &SubsetBits) -> Option<(usize, usize)> {
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.op(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_subrack(&self, s: &SubsetBits) -> bool {
        self.closure_violation(s).is_none()
    }

    /// Orbits of the full inner automorphism group on the element set,
    /// computed by union-find over rows (never materializing Inn(X)).
    pub fn inner_orbits(&self) -> OrbitStructure {
        self.orbit_partition(&self.full_subset())
    }

    pub fn is_connected(&self) -> bool {
        self.inner_orbits().blocks().len() == 1
    }

    /// True iff no two rows of the table coincide (the map Φ is injective).
    pub fn is_faithful(&self) -> bool {
        let n = self.size();
        for a in 0..n {
            for b in a + 1..n {
                if self.table.row(a) == self.table.row(b) {
                    return false;
                }
            }
        }
        true
    }

    fn orbit_partition(&self, generators: &SubsetBits) -> SetPartition {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in generators.iter() {
            for b in 0..n {
                let (x, y) = (find(&mut parent, b), find(&mut parent, self.op(a, b)));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut blocks: Vec<SubsetBits> = Vec::new();
        let mut root_block = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(SubsetBits::empty(n));
            }
            blocks[root_block[r]].insert(i);
        }
        SetPartition::from_blocks(n, blocks).expect("union-find yields a partition")
    }

    /// Partition of the whole element set into orbits of the group generated
    /// by the rows of `s`. Requires `s` to be a subrack.
    pub fn orbit_structure(&self, s: &SubsetBits) -> Result<OrbitStructure> {
        if !self.is_subrack(s) {
            return Err(Error::NotASubrack);
        }
        Ok(self.orbit_partition(s))
    }

    /// The largest subrack with the same orbit structure as `s`: all elements
    /// whose row preserves every orbit block of `s` setwise. Rejected on
    /// disconnected racks, where the result can escape the proper part.
    pub fn eta_closure(&self, s: &SubsetBits) -> Result<SubsetBits> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        if s.is_empty() || s.is_full() {
            return Err(Error::NotProperSubrack);
        }
        let blocks = self.orbit_structure(s)?;
        let mut out = SubsetBits::empty(self.size());
        'next: for a in 0..self.size() {
            for block in blocks.blocks() {
                let image = SubsetBits::from_indices(
                    self.size(),
                    block.iter().map(|b| self.op(a, b)),
                );
                if image != *block {
                    continue 'next;
                }
            }
            out.insert(a);
        }
        debug_assert!(s.is_subset(&out));
        debug_assert!(self.is_subrack(&out));
        Ok(out)
    }

    /// Quotient quandle on the classes `[a] = {φ_a^n(a)}` with
    /// `[a] * [b] = [a ▷ b]`. Returns the quandle and the class of each
    /// element. The subrack lattices of the rack and its quotient agree.
    pub fn quandle_quotient(&self) -> (FiniteRack, Vec<u8>) {
        let n = self.size();
        let mut class_of = vec![u8::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for a in 0..n {
            if class_of[a] != u8::MAX {
                continue;
            }
            let c = reps.len() as u8;
            reps.push(a);
            let mut x = a;
            loop {
                class_of[x] = c;
                x = self.op(a, x);
                if x == a {
                    break;
                }
            }
        }
        let m = reps.len();
        let mut entries = vec![0u8; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                entries[i * m + j] = class_of[self.op(a, b)];
            }
        }
        let labels = reps.iter().map(|&a| format!("[{}]", self.labels[a])).collect();
        let table = RackTable::new(m, entries).expect("quotient table is well formed");
        let quotient = FiniteRack::new(table, labels).expect("quotient satisfies the axioms");
        (quotient, class_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::perm::Permutation;
    use proptest::prelude::*;

    fn s4_transposition_rack() -> FiniteRack {
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

    /// Paper labels 1..6 for the transpositions of S4 on {a,b,c,d} = {0,1,2,3},
    /// mapped to canonical rack indices.
    fn paper_t_index(rack: &FiniteRack, k: usize) -> usize {
        let label = match k {
            1 => "(0 1)",
            2 => "(2 3)",
            3 => "(0 2)",
            4 => "(1 3)",
            5 => "(0 3)",
            6 => "(1 2)",
            _ => unreachable!(),
        };
        rack.labels().iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn group_rack_of_s3_is_a_quandle() {
        let g = named::symmetric(3, 20_000).unwrap();
        let rack = FiniteRack::conjugation_rack(&g, &g.full_set()).unwrap();
        assert_eq!(rack.size(), 6);
        assert!(rack.is_quandle());
    }

    #[test]
    fn transposition_rack_is_connected_and_faithful() {
        let rack = s4_transposition_rack();
        assert_eq!(rack.size(), 6);
        assert!(rack.is_quandle());
        assert!(rack.is_connected());
        assert!(rack.is_faithful());
    }

    #[test]
    fn non_closed_subset_is_rejected_with_witness() {
        let g = named::alternating(4, 20_000).unwrap();
        // two 3-cycles that conjugate to a third one
        let x = g.index_of(&Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()).unwrap();
        let y = g.index_of(&Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap()).unwrap();
        let s = SubsetBits::from_indices(g.order(), [x as usize, y as usize]);
        match FiniteRack::conjugation_rack(&g, &s) {
            Err(Error::NotConjugationClosed { .. }) => {}
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn axiom_checks() {
        // conjugation rack: rack and quandle
        let rack = a4_g3_rack();
        let report = check_axioms(rack.table());
        assert!(report.is_rack && report.is_quandle);

        // non-bijective row: A2 violation
        let bad = RackTable::new(2, vec![0, 0, 0, 1]).unwrap();
        let report = check_axioms(&bad);
        assert!(!report.is_rack);
        assert_eq!(report.a2_violations, vec![0]);

        // cyclic rack table[a][b] = b+1 mod n: a rack but not a quandle
        let n = 5;
        let entries: Vec<u8> = (0..n * n).map(|i| ((i % n + 1) % n) as u8).collect();
        let cyclic = RackTable::new(n, entries).unwrap();
        let report = check_axioms(&cyclic);
        assert!(report.is_rack);
        assert!(!report.is_quandle);
        assert_eq!(report.a3_violations.len(), n);
    }

    #[test]
    fn closure_on_transposition_rack() {
        let rack = s4_transposition_rack();
        // singletons in a quandle are subracks
        let single = SubsetBits::singleton(6, paper_t_index(&rack, 1));
        assert_eq!(rack.subrack_closure(&single), single);
        // paper elements {1,3} = {(ab),(ac)} generate {(ab),(ac),(bc)} = {1,3,6}
        let s = SubsetBits::from_indices(
            6,
            [paper_t_index(&rack, 1), paper_t_index(&rack, 3)],
        );
        let expected = SubsetBits::from_indices(
            6,
            [paper_t_index(&rack, 1), paper_t_index(&rack, 3), paper_t_index(&rack, 6)],
        );
        assert_eq!(rack.subrack_closure(&s), expected);
        // full set and empty set are fixed points
        assert_eq!(rack.subrack_closure(&rack.full_subset()), rack.full_subset());
        assert_eq!(rack.subrack_closure(&rack.empty_subset()), rack.empty_subset());
    }

    #[test]
    fn inner_orbits_of_g3() {
        let rack = a4_g3_rack();
        let orbits = rack.inner_orbits();
        let mut sizes: Vec<usize> = orbits.blocks().iter().map(|b| b.count()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 4, 4]);
        assert!(!rack.is_connected());
        // identity sits in its own orbit
        assert!(orbits.blocks().iter().any(|b| b.count() == 1 && b.contains(0)));
    }

    #[test]
    fn one_element_rack() {
        let rack = FiniteRack::new(RackTable::new(1, vec![0]).unwrap(), vec![]).unwrap();
        assert!(rack.is_connected());
        assert!(rack.is_faithful());
        assert!(rack.is_quandle());
    }

    #[test]
    fn abelian_group_rack_is_unfaithful() {
        let z4 = named::cyclic(4, 20_000).unwrap();
        let rack = FiniteRack::conjugation_rack(&z4, &z4.full_set()).unwrap();
        assert!(!rack.is_faithful());
    }

    #[test]
    fn orbit_structure_examples() {
        let rack = a4_g3_rack();
        // full set reproduces the inner orbits
        assert_eq!(rack.orbit_structure(&rack.full_subset()).unwrap(), rack.inner_orbits());
        // the Sylow subrack {identity, (0 1 2), (0 2 1)} refines {1} ∪ C ∪ D
        let sylow = SubsetBits::from_indices(9, [0, 3, 5]);
        assert!(rack.is_subrack(&sylow));
        let part = rack.orbit_structure(&sylow).unwrap();
        let inner = rack.inner_orbits();
        assert!(part.refines(&inner));
        assert!(part.blocks().len() > inner.blocks().len());
        // a non-closed subset is rejected
        let open = SubsetBits::from_indices(9, [3, 4]);
        assert!(rack.closure_violation(&open).is_some());
        assert!(matches!(rack.orbit_structure(&open), Err(Error::NotASubrack)));
    }

    #[test]
    fn orbit_structure_of_singleton_uses_one_row() {
        let rack = s4_transposition_rack();
        let one = paper_t_index(&rack, 1);
        let part = rack.orbit_structure(&SubsetBits::singleton(6, one)).unwrap();
        // φ_(ab) fixes (ab),(cd) and pairs {(ac),(bc)}, {(ad),(bd)}
        let mut sizes: Vec<usize> = part.blocks().iter().map(|b| b.count()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
    }

    #[test]
    fn eta_fixes_inf_style_elements() {
        let rack = s4_transposition_rack();
        // η({1}) = {1}: no larger subrack shares the orbit structure of a
        // singleton transposition
        let one = SubsetBits::singleton(6, paper_t_index(&rack, 1));
        assert_eq!(rack.eta_closure(&one).unwrap(), one);
        // maximal subracks are η-closed
        let m = rack.subrack_closure(&SubsetBits::from_indices(
            6,
            [paper_t_index(&rack, 1), paper_t_index(&rack, 2)],
        ));
        assert_eq!(m.count(), 2, "{{(ab),(cd)}} is already closed");
        assert_eq!(rack.eta_closure(&m).unwrap(), m);
    }

    #[test]
    fn eta_requires_connected() {
        let rack = a4_g3_rack();
        let s = SubsetBits::singleton(9, 3);
        assert!(matches!(rack.eta_closure(&s), Err(Error::NotConnected)));
    }

    #[test]
    fn eta_rejects_empty_and_full() {
        let rack = s4_transposition_rack();
        assert!(rack.eta_closure(&rack.empty_subset()).is_err());
        assert!(rack.eta_closure(&rack.full_subset()).is_err());
    }

    #[test]
    fn quotient_of_quandle_is_identity_relabeling() {
        let rack = s4_transposition_rack();
        let (q, class_of) = rack.quandle_quotient();
        assert_eq!(q.size(), rack.size());
        assert!((0..rack.size()).all(|i| class_of[i] as usize == i));
    }

    #[test]
    fn quotient_of_cyclic_rack_collapses() {
        let n = 6;
        let entries: Vec<u8> = (0..n * n).map(|i| ((i % n + 1) % n) as u8).collect();
        let rack = FiniteRack::new(RackTable::new(n, entries).unwrap(), vec![]).unwrap();
        let (q, class_of) = rack.quandle_quotient();
        assert_eq!(q.size(), 1);
        assert!(class_of.iter().all(|&c| c == 0));
        assert!(q.is_quandle());
    }

    #[test]
    fn quotient_is_well_defined_on_class_representatives() {
        // [a] * [b] must not depend on the representatives chosen
        let n = 6;
        let entries: Vec<u8> = (0..n * n).map(|i| ((i % n + 1) % n) as u8).collect();
        let rack = FiniteRack::new(RackTable::new(n, entries).unwrap(), vec![]).unwrap();
        let (_, class_of) = rack.quandle_quotient();
        for a in 0..n {
            for a2 in 0..n {
                if class_of[a] != class_of[a2] {
                    continue;
                }
                for b in 0..n {
                    for b2 in 0..n {
                        if class_of[b] == class_of[b2] {
                            assert_eq!(
                                class_of[rack.op(a, b)],
                                class_of[rack.op(a2, b2)]
                            );
                        }
                    }
                }
            }
        }
    }

    proptest! {
        /// subrack_closure is a closure operator: extensive, monotone, idempotent.
        #[test]
        fn closure_operator_laws(bits in proptest::collection::vec(any::<bool>(), 9),
                                 more in proptest::collection::vec(any::<bool>(), 9)) {
            let rack = a4_g3_rack();
            let s = SubsetBits::from_indices(9, bits.iter().enumerate()
                .filter(|(_, &b)| b).map(|(i, _)| i));
            let t = s.union(&SubsetBits::from_indices(9, more.iter().enumerate()
                .filter(|(_, &b)| b).map(|(i, _)| i)));
            let cs = rack.subrack_closure(&s);
            let ct = rack.subrack_closure(&t);
            prop_assert!(s.is_subset(&cs));
            prop_assert!(cs.is_subset(&ct), "monotone on {s:?} ⊆ {t:?}");
            prop_assert_eq!(rack.subrack_closure(&cs.clone()), cs.clone());
            prop_assert!(rack.is_subrack(&cs));
        }

        /// Intersections of closed sets are closed (meets in R(X)).
        #[test]
        fn closed_sets_intersect_closed(xs in proptest::collection::vec(0usize..9, 0..5),
                                        ys in proptest::collection::vec(0usize..9, 0..5)) {
            let rack = a4_g3_rack();
            let a = rack.subrack_closure(&SubsetBits::from_indices(9, xs));
            let b = rack.subrack_closure(&SubsetBits::from_indices(9, ys));
            prop_assert!(rack.is_subrack(&a.intersection(&b)));
        }

        /// η is extensive and idempotent, and preserves the orbit structure.
        #[test]
        fn eta_laws(xs in proptest::collection::vec(0usize..6, 1..4)) {
            let rack = s4_transposition_rack();
            let s = rack.subrack_closure(&SubsetBits::from_indices(6, xs));
            prop_assume!(!s.is_full());
            let e = rack.eta_closure(&s).unwrap();
            prop_assert!(s.is_subset(&e));
            prop_assert_eq!(
                rack.orbit_structure(&e).unwrap(),
                rack.orbit_structure(&s).unwrap()
            );
            if !e.is_full() {
                prop_assert_eq!(rack.eta_closure(&e).unwrap(), e);
            }
        }
    }
}
