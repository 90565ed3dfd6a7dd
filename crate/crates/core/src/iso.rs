//! Exact poset isomorphism by invariant refinement plus backtracking.
//!
//! Node invariants (cover degrees, up/down-set sizes, heights) are refined
//! Weisfeiler-Leman style over the Hasse diagram until stable; the remaining
//! ambiguity is resolved by a consistency-checked backtracking search.
//! The verdict is exact: a witness bijection or definitive non-isomorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const ISO_SIZE_CAP: usize = 2000;

/// Returns a bijection `p -> q` preserving the order both ways, or `None`.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Result<Option<Vec<u32>>> {
    if p.len() > ISO_SIZE_CAP || q.len() > ISO_SIZE_CAP {
        return Err(Error::PosetCapExceeded {
            n: p.len().max(q.len()),
            cap: ISO_SIZE_CAP,
            what: "isomorphism",
        });
    }
    if p.len() != q.len() {
        return Ok(None);
    }
    let n = p.len();
    if n == 0 {
        return Ok(Some(vec![]));
    }
    let (pc, qc) = match refine_colors(p, q) {
        Some(pair) => pair,
        None => return Ok(None),
    };
    // candidate lists per color
    let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (j, &c) in qc.iter().enumerate() {
        by_color.entry(c).or_default().push(j);
    }
    // most-constrained-first: smallest candidate class, then id
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (by_color.get(&pc[i]).map_or(0, |v| v.len()), i));
    let mut mapping: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];
    if backtrack(p, q, &pc, &by_color, &order, 0, &mut mapping, &mut used) {
        Ok(Some(mapping.into_iter().map(|m| m.unwrap()).collect()))
    } else {
        Ok(None)
    }
}

fn backtrack(
    p: &Poset,
    q: &Poset,
    pc: &[u32],
    by_color: &BTreeMap<u32, Vec<usize>>,
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<Option<u32>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    for &j in by_color.get(&pc[i]).into_iter().flatten() {
        if used[j] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&k| {
            let mk = mapping[k].unwrap() as usize;
            p.leq(i, k) == q.leq(j, mk) && p.leq(k, i) == q.leq(mk, j)
        });
        if consistent {
            mapping[i] = Some(j as u32);
            used[j] = true;
            if backtrack(p, q, pc, by_color, order, depth + 1, mapping, used) {
                return true;
            }
            mapping[i] = None;
            used[j] = false;
        }
    }
    false
}

/// Stable joint color refinement; `None` when the color histograms differ
/// (definitive non-isomorphism).
fn refine_colors(p: &Poset, q: &Poset) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = p.len();
    let (phmin, phmax) = p.heights();
    let (qhmin, qhmax) = q.heights();
    let down_covers = |poset: &Poset| {
        let mut down: Vec<Vec<u32>> = vec![Vec::new(); poset.len()];
        for i in 0..poset.len() {
            for &j in poset.covers_up(i) {
                down[j as usize].push(i as u32);
            }
        }
        down
    };
    let pdown = down_covers(p);
    let qdown = down_covers(q);

    // initial invariant per node
    let init = |poset: &Poset, down: &[Vec<u32>], hmin: &[usize], hmax: &[usize], i: usize| {
        vec![
            poset.covers_up(i).len() as u64,
            down[i].len() as u64,
            poset.up_set(i).count() as u64,
            poset.down_set(i).count() as u64,
            hmin[i] as u64,
            hmax[i] as u64,
        ]
    };
    let mut intern: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
    let assign = |key: Vec<u64>, table: &mut BTreeMap<Vec<u64>, u32>| -> u32 {
        let next = table.len() as u32;
        *table.entry(key).or_insert(next)
    };
    let mut pc: Vec<u32> = (0..n)
        .map(|i| assign(init(p, &pdown, &phmin, &phmax, i), &mut intern))
        .collect();
    let mut qc: Vec<u32> = (0..n)
        .map(|i| assign(init(q, &qdown, &qhmin, &qhmax, i), &mut intern))
        .collect();

    for _ in 0..n {
        if histogram(&pc) != histogram(&qc) {
            return None;
        }
        let mut intern: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
        let signature = |poset: &Poset, down: &[Vec<u32>], colors: &[u32], i: usize| {
            let mut ups: Vec<u64> =
                poset.covers_up(i).iter().map(|&j| colors[j as usize] as u64).collect();
            ups.sort_unstable();
            let mut downs: Vec<u64> =
                down[i].iter().map(|&j| colors[j as usize] as u64).collect();
            downs.sort_unstable();
            let mut key = vec![colors[i] as u64, u64::MAX];
            key.extend(ups);
            key.push(u64::MAX);
            key.extend(downs);
            key
        };
        let new_pc: Vec<u32> =
            (0..n).map(|i| assign(signature(p, &pdown, &pc, i), &mut intern)).collect();
        let new_qc: Vec<u32> =
            (0..n).map(|i| assign(signature(q, &qdown, &qc, i), &mut intern)).collect();
        let stable = count_classes(&new_pc) == count_classes(&pc);
        pc = new_pc;
        qc = new_qc;
        if stable {
            break;
        }
    }
    if histogram(&pc) != histogram(&qc) {
        return None;
    }
    Some((pc, qc))
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

fn count_classes(colors: &[u32]) -> usize {
    histogram(colors).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::NodeData;

    #[test]
    fn chain_vs_antichain() {
        let c = Poset::chain(2);
        let a = Poset::antichain(3);
        assert!(poset_isomorphic(&c, &a).unwrap().is_none());
    }

    #[test]
    fn b2_proper_part_is_two_antichain() {
        let (bar, _) = Poset::boolean(2).proper_part().unwrap();
        let a2 = Poset::antichain(2);
        assert!(poset_isomorphic(&bar, &a2).unwrap().is_some());
    }

    #[test]
    fn relabeled_boolean_algebras_match() {
        let b3 = Poset::boolean(3);
        // rebuild with a permuted node order
        let perm: Vec<usize> = vec![5, 0, 7, 2, 6, 1, 4, 3];
        let payloads = perm.iter().map(|&i| b3.payload(i).clone()).collect();
        let shuffled =
            Poset::from_leq_fn(payloads, |a, b| b3.leq(perm[a], perm[b])).unwrap();
        let witness = poset_isomorphic(&b3, &shuffled).unwrap().expect("isomorphic");
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(
                    b3.leq(i, j),
                    shuffled.leq(witness[i] as usize, witness[j] as usize)
                );
            }
        }
    }

    #[test]
    fn same_profile_different_structure() {
        // two posets on 4 nodes with equal degree sums but different shape:
        // N-poset vs disjoint union of a diamond-less pair of chains
        let n_poset = Poset::from_leq_fn(
            (0..4).map(|i| NodeData::Label(i.to_string())).collect(),
            |a, b| a == b || matches!((a, b), (0, 2) | (0, 3) | (1, 3)),
        )
        .unwrap();
        let two_chains = Poset::from_leq_fn(
            (0..4).map(|i| NodeData::Label(i.to_string())).collect(),
            |a, b| a == b || matches!((a, b), (0, 2) | (1, 3)),
        )
        .unwrap();
        assert!(poset_isomorphic(&n_poset, &two_chains).unwrap().is_none());
    }

    #[test]
    fn size_cap() {
        let a = Poset::antichain(2001);
        assert!(matches!(
            poset_isomorphic(&a, &a),
            Err(Error::PosetCapExceeded { .. })
        ));
    }
}
