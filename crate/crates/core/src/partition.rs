//! Set partitions, integer partitions and their order relations.
//!
//! Set partitions of `[n]` are ordered by refinement (all singletons at the
//! bottom, one block at the top). Integer partitions of `n` are ordered by
//! block merging: `μ ≤ λ` when the parts of `μ` can be grouped so the group
//! sums are exactly the parts of `λ`.

use std::fmt;

use crate::bits::SubsetBits;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// A partition of `{0, .., n-1}` into disjoint blocks covering everything.
/// Blocks are kept sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<SubsetBits>,
}

impl SetPartition {
    pub fn from_blocks(n: usize, mut blocks: Vec<SubsetBits>) -> Result<Self> {
        let mut union = SubsetBits::empty(n);
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty partition block".into()));
            }
            if union.intersects(b) {
                return Err(Error::InvalidInput("overlapping partition blocks".into()));
            }
            union.union_with(b);
        }
        if !union.is_full() {
            return Err(Error::InvalidInput("partition blocks do not cover the set".into()));
        }
        blocks.sort_by_key(|b| b.min_element());
        Ok(SetPartition { n, blocks })
    }

    /// From a block-id assignment per element.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let n = assignment.len();
        let nblocks = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![SubsetBits::empty(n); nblocks];
        for (i, &b) in assignment.iter().enumerate() {
            blocks[b].insert(i);
        }
        blocks.retain(|b| !b.is_empty());
        Self::from_blocks(n, blocks).expect("assignment yields a partition")
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    pub fn one_block(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[SubsetBits] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> &SubsetBits {
        self.blocks.iter().find(|b| b.contains(i)).expect("partition covers the set")
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.blocks.iter().all(|b| {
            let rep = b.min_element().expect("blocks are nonempty");
            b.is_subset(other.block_of(rep))
        })
    }

    /// Common refinement (the meet in the partition lattice).
    pub fn meet(&self, other: &Self) -> Self {
        let mut blocks = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                let c = a.intersection(b);
                if !c.is_empty() {
                    blocks.push(c);
                }
            }
        }
        Self::from_blocks(self.n, blocks).expect("pairwise intersections partition the set")
    }

    /// Relabel the ground set through a permutation given as an image table.
    pub fn relabel(&self, images: &[usize]) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| SubsetBits::from_indices(self.n, b.iter().map(|i| images[i])))
            .collect();
        Self::from_blocks(self.n, blocks).expect("relabeling keeps a partition")
    }

    /// Multiset of block sizes, descending.
    pub fn shape(&self) -> IntPartition {
        IntPartition::new(self.blocks.iter().map(|b| b.count() as u32).collect())
    }

    pub fn num_nonsingleton_elements(&self) -> usize {
        self.blocks.iter().map(|b| b.count()).filter(|&c| c > 1).sum()
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            for (j, i) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

/// Enumerate all partitions of `{0, .., n-1}` via restricted growth strings,
/// in a deterministic order.
pub fn all_set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(rgs: &mut Vec<usize>, i: usize, maxused: usize, out: &mut Vec<SetPartition>) {
        let n = rgs.len();
        if i == n {
            out.push(SetPartition::from_assignment(rgs));
            return;
        }
        for b in 0..=maxused + 1 {
            rgs[i] = b;
            rec(rgs, i + 1, maxused.max(b), out);
        }
    }
    if n == 0 {
        return vec![SetPartition::from_blocks(0, vec![]).expect("empty partition")];
    }
    rec(&mut rgs, 1, 0, &mut out);
    out
}

/// A partition of the integer `n`; parts stored descending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPartition {
    parts: Vec<u32>,
}

impl IntPartition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Merge order: `self ≤ other` iff the parts of `self` can be grouped
    /// into `other.parts().len()` blocks whose sums are the parts of `other`.
    pub fn merges_to(&self, other: &Self) -> bool {
        if self.total() != other.total() {
            return false;
        }
        if self == other {
            return true;
        }
        if self.parts.len() < other.parts.len() {
            return false;
        }
        // Backtracking: assign each part (largest first) to a target bin.
        let mut remaining: Vec<u32> = other.parts.clone();
        fn assign(parts: &[u32], k: usize, remaining: &mut Vec<u32>) -> bool {
            if k == parts.len() {
                return remaining.iter().all(|&r| r == 0);
            }
            let p = parts[k];
            let mut tried = Vec::new();
            for i in 0..remaining.len() {
                if remaining[i] >= p && !tried.contains(&remaining[i]) {
                    tried.push(remaining[i]);
                    remaining[i] -= p;
                    if assign(parts, k + 1, remaining) {
                        remaining[i] += p;
                        return true;
                    }
                    remaining[i] += p;
                }
            }
            false
        }
        assign(&self.parts, 0, &mut remaining)
    }
}

impl fmt::Debug for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Which partition poset to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionLatticeVariant {
    /// Π_n: all set partitions under refinement.
    Full,
    /// Π_{n,k}: blocks are singletons or have at least k elements.
    KEqual(u32),
    /// Π_{n,k}^m: additionally, at least m*k elements lie in nonsingleton
    /// blocks (the all-singletons partition is always a member).
    KEqualM(u32, u32),
    /// I_n: integer partitions under block merging.
    Integer,
}

/// Build Π_n, Π_{n,k}, Π_{n,k}^m or I_n as a poset.
pub fn partition_lattice(n: usize, variant: PartitionLatticeVariant) -> Result<Poset> {
    use crate::poset::NodeData;
    if let PartitionLatticeVariant::Integer = variant {
        if n > 40 {
            return Err(Error::ParamBounds(format!("integer partitions limited to n <= 40, got {n}")));
        }
        let parts = all_int_partitions(n as u32);
        let payloads: Vec<NodeData> = parts.iter().map(|p| NodeData::Ints(p.clone())).collect();
        return Poset::from_leq_fn(payloads, |a, b| parts[a].merges_to(&parts[b]));
    }
    if n > 10 {
        return Err(Error::ParamBounds(format!(
            "set partition lattices limited to n <= 10, got {n}"
        )));
    }
    let keep: Box<dyn Fn(&SetPartition) -> bool> = match variant {
        PartitionLatticeVariant::Full => Box::new(|_| true),
        PartitionLatticeVariant::KEqual(k) => {
            if k < 2 {
                return Err(Error::ParamBounds("k-equal lattice needs k >= 2".into()));
            }
            Box::new(move |p| {
                p.blocks().iter().all(|b| b.count() == 1 || b.count() >= k as usize)
            })
        }
        PartitionLatticeVariant::KEqualM(k, m) => {
            if k < 2 || m < 1 {
                return Err(Error::ParamBounds("k-equal-m lattice needs k >= 2, m >= 1".into()));
            }
            Box::new(move |p| {
                let ok_blocks =
                    p.blocks().iter().all(|b| b.count() == 1 || b.count() >= k as usize);
                let all_singletons = p.blocks().iter().all(|b| b.count() == 1);
                ok_blocks
                    && (all_singletons || p.num_nonsingleton_elements() >= (m * k) as usize)
            })
        }
        PartitionLatticeVariant::Integer => unreachable!(),
    };
    let mut parts: Vec<SetPartition> =
        all_set_partitions(n).into_iter().filter(|p| keep(p)).collect();
    parts.sort_by_key(|p| (std::cmp::Reverse(p.blocks().len()), p.clone()));
    let payloads: Vec<NodeData> = parts.iter().map(|p| NodeData::Partition(p.clone())).collect();
    Poset::from_leq_fn(payloads, |a, b| parts[a].refines(&parts[b]))
}

/// π: send each subrack to its orbit structure (a partition of the rack's
/// element set). Inputs must be subracks.
pub fn pi_map(rack: &crate::rack::FiniteRack, subsets: &[SubsetBits]) -> Result<Vec<SetPartition>> {
    subsets.iter().map(|s| rack.orbit_structure(s)).collect()
}

/// The image of a partition family as a subposet of Π_n under refinement.
/// Returns the image poset and the image node of each input.
pub fn partition_image_poset(partitions: &[SetPartition]) -> Result<(Poset, Vec<u32>)> {
    use crate::poset::NodeData;
    let mut distinct: Vec<SetPartition> = partitions.to_vec();
    distinct.sort_by_key(|p| (std::cmp::Reverse(p.blocks().len()), p.clone()));
    distinct.dedup();
    let map: Vec<u32> = partitions
        .iter()
        .map(|p| distinct.iter().position(|q| q == p).unwrap() as u32)
        .collect();
    let payloads: Vec<NodeData> =
        distinct.iter().map(|p| NodeData::Partition(p.clone())).collect();
    let poset = Poset::from_leq_fn(payloads, |a, b| distinct[a].refines(&distinct[b]))?;
    Ok((poset, map))
}

/// ι: block-size shapes of a partition family, as a subposet of I_n under
/// the merge order. Returns the image poset and the image node per input.
pub fn iota_image_poset(partitions: &[SetPartition]) -> Result<(Poset, Vec<u32>)> {
    use crate::poset::NodeData;
    let shapes: Vec<IntPartition> = partitions.iter().map(|p| p.shape()).collect();
    let mut distinct = shapes.clone();
    distinct.sort();
    distinct.dedup();
    let map: Vec<u32> = shapes
        .iter()
        .map(|s| distinct.iter().position(|q| q == s).unwrap() as u32)
        .collect();
    let payloads: Vec<NodeData> = distinct.iter().map(|p| NodeData::Ints(p.clone())).collect();
    let poset = Poset::from_leq_fn(payloads, |a, b| distinct[a].merges_to(&distinct[b]))?;
    Ok((poset, map))
}

/// All partitions of the integer `n`, descending parts, deterministic order.
pub fn all_int_partitions(n: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(n: u32, maxpart: u32, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
        if n == 0 {
            out.push(IntPartition::new(cur.clone()));
            return;
        }
        let top = maxpart.min(n);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_basics() {
        let fine = SetPartition::from_assignment(&[0, 1, 2, 3]);
        let mid = SetPartition::from_assignment(&[0, 0, 1, 1]);
        let top = SetPartition::one_block(4);
        assert!(fine.refines(&mid));
        assert!(mid.refines(&top));
        assert!(fine.refines(&top));
        assert!(!mid.refines(&fine));
        assert!(mid.refines(&mid));
        let other = SetPartition::from_assignment(&[0, 1, 0, 1]);
        assert!(!mid.refines(&other));
        assert!(!other.refines(&mid));
    }

    #[test]
    fn meet_is_common_refinement() {
        let a = SetPartition::from_assignment(&[0, 0, 1, 1]);
        let b = SetPartition::from_assignment(&[0, 1, 1, 0]);
        let m = a.meet(&b);
        assert_eq!(m, SetPartition::singletons(4));
        assert!(m.refines(&a) && m.refines(&b));
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(all_set_partitions(1).len(), 1);
        assert_eq!(all_set_partitions(3).len(), 5);
        assert_eq!(all_set_partitions(4).len(), 15);
        assert_eq!(all_set_partitions(5).len(), 52);
    }

    #[test]
    fn shape_of_partition() {
        // 12|34|5|6 on six points (0-based: {0,1}{2,3}{4}{5})
        let p = SetPartition::from_assignment(&[0, 0, 1, 1, 2, 3]);
        assert_eq!(p.shape(), IntPartition::new(vec![2, 2, 1, 1]));
        assert_eq!(p.num_nonsingleton_elements(), 4);
    }

    #[test]
    fn int_partition_counts() {
        assert_eq!(all_int_partitions(4).len(), 5);
        assert_eq!(all_int_partitions(7).len(), 15);
        let i4: Vec<Vec<u32>> =
            all_int_partitions(4).iter().map(|p| p.parts().to_vec()).collect();
        assert!(i4.contains(&vec![1, 1, 1, 1]));
        assert!(i4.contains(&vec![2, 1, 1]));
        assert!(i4.contains(&vec![2, 2]));
        assert!(i4.contains(&vec![3, 1]));
        assert!(i4.contains(&vec![4]));
    }

    #[test]
    fn merge_order() {
        let ones = IntPartition::new(vec![1, 1, 1, 1]);
        let two11 = IntPartition::new(vec![2, 1, 1]);
        let two2 = IntPartition::new(vec![2, 2]);
        let three1 = IntPartition::new(vec![3, 1]);
        let four = IntPartition::new(vec![4]);
        assert!(ones.merges_to(&two11));
        assert!(two11.merges_to(&two2));
        assert!(two11.merges_to(&three1));
        assert!(two2.merges_to(&four));
        assert!(ones.merges_to(&four));
        assert!(!two2.merges_to(&three1));
        assert!(!three1.merges_to(&two2));
        assert!(!four.merges_to(&two2));
        assert!(four.merges_to(&four));
        // different totals never compare
        assert!(!IntPartition::new(vec![2]).merges_to(&four));
    }

    #[test]
    fn relabel_moves_blocks() {
        let p = SetPartition::from_assignment(&[0, 0, 1, 1]);
        // swap 0 and 2
        let q = p.relabel(&[2, 1, 0, 3]);
        assert_eq!(q, SetPartition::from_assignment(&[0, 1, 1, 0]));
    }

    #[test]
    fn pi4_has_fifteen_nodes_and_is_a_lattice() {
        let p = partition_lattice(4, PartitionLatticeVariant::Full).unwrap();
        assert_eq!(p.len(), 15);
        assert!(p.bottom().is_some() && p.top().is_some());
        assert!(crate::lattice::is_lattice(&p));
        let report = p.purity_and_rank();
        assert!(report.is_pure);
        assert_eq!(report.length, 3);
    }

    #[test]
    fn k_equal_lattice_pi43() {
        // all-singletons, four (3,1) shapes, one 4-block
        let p = partition_lattice(4, PartitionLatticeVariant::KEqual(3)).unwrap();
        assert_eq!(p.len(), 6);
        assert!(partition_lattice(4, PartitionLatticeVariant::KEqual(1)).is_err());
    }

    #[test]
    fn k_equal_m_lattice_admits_singleton_partition() {
        // Π_{6,2}^3: nonsingleton blocks cover >= 6 points, plus singletons
        let p = partition_lattice(6, PartitionLatticeVariant::KEqualM(2, 3)).unwrap();
        let bottom = p.bottom().expect("all-singletons is the bottom");
        match p.payload(bottom) {
            crate::poset::NodeData::Partition(part) => {
                assert!(part.blocks().iter().all(|b| b.count() == 1));
            }
            _ => panic!("partition payload expected"),
        }
        // strictly fewer members than Π_{6,2}
        let full = partition_lattice(6, PartitionLatticeVariant::KEqual(2)).unwrap();
        assert!(p.len() < full.len());
    }

    #[test]
    fn integer_partition_lattice_i4() {
        let p = partition_lattice(4, PartitionLatticeVariant::Integer).unwrap();
        assert_eq!(p.len(), 5);
        assert!(p.bottom().is_some() && p.top().is_some());
        assert_eq!(p.length(), 3, "1111 < 211 < 22 or 31 < 4");
    }

    #[test]
    fn size_bounds_enforced() {
        assert!(partition_lattice(11, PartitionLatticeVariant::Full).is_err());
        assert!(partition_lattice(41, PartitionLatticeVariant::Integer).is_err());
    }

    #[test]
    fn image_posets_dedup() {
        let a = SetPartition::from_assignment(&[0, 0, 1, 1]);
        let b = SetPartition::from_assignment(&[0, 1, 1, 0]);
        let (poset, map) = partition_image_poset(&[a.clone(), b.clone(), a.clone()]).unwrap();
        assert_eq!(poset.len(), 2);
        assert_eq!(map[0], map[2]);
        assert_ne!(map[0], map[1]);
        // both partitions have shape (2,2): the iota image is a single node
        let (ipos, imap) = iota_image_poset(&[a, b]).unwrap();
        assert_eq!(ipos.len(), 1);
        assert_eq!(imap, vec![0, 0]);
    }
}
