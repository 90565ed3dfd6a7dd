//! Finite permutation groups, fully materialized.
//!
//! Groups are stored as the complete, lexicographically sorted element list;
//! the identity always lands at index 0. All downstream determinism (rack
//! labels, lattice node ids, DOT output) derives from this canonical order.

use std::collections::HashMap;

use crate::bits::SubsetBits;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A set of group elements, as a bitset over the canonical element indices.
pub type ElementSet = SubsetBits;

/// Multiplication tables are materialized up to this order; larger groups
/// multiply through the element index map.
const MULT_TABLE_MAX: usize = 2048;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mult: Option<Vec<u32>>,
    inv: Vec<u32>,
    orders: Vec<u64>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(order {}, degree {})", self.order(), self.degree)
    }
}

impl PermGroup {
    /// Close a generator list under composition (breadth-first products).
    pub fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        element_cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(g.images().to_vec(), degree));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut seen: HashMap<Permutation, u32> = HashMap::new();
        seen.insert(identity, 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let x = elements[i].clone();
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if elements.len() >= element_cap {
                        return Err(Error::ElementCapExceeded { cap: element_cap });
                    }
                    seen.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        Self::from_element_list(degree, generators, elements)
    }

    /// Realize a group given by its Cayley table through the left-regular
    /// permutation representation (degree = table size).
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(Error::InvalidInput(format!("cayley table size {n} out of range")));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row {r} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n || seen[v] {
                    return Err(Error::NotLatinSquare { row: r, value: v });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for row in table {
                if seen[row[c]] {
                    return Err(Error::NotLatinSquare { row: c, value: row[c] });
                }
                seen[row[c]] = true;
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        let _ = e;
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::NonAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let perms: Vec<Permutation> = (0..n)
            .map(|a| Permutation::new(table[a].iter().map(|&x| x as u16).collect()))
            .collect::<Result<_>>()?;
        let generators = perms.iter().filter(|p| !p.is_identity()).cloned().collect();
        Self::from_element_list(n, generators, perms)
    }

    fn from_element_list(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        debug_assert!(elements[0].is_identity());
        let n = elements.len();
        let inv: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders: Vec<u64> = elements.iter().map(|p| p.order()).collect();
        let mult = if n <= MULT_TABLE_MAX {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = index[&elements[i].compose(&elements[j])];
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(PermGroup { degree, generators, elements, index, mult, inv, orders })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of the identity (always 0 under the canonical order).
    pub fn identity_index(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.mult {
            Some(t) => t[i as usize * self.elements.len() + j as usize],
            None => self.index[&self.elements[i as usize].compose(&self.elements[j as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// `i ▷ j = i j i⁻¹`.
    #[inline]
    pub fn conj(&self, i: u32, j: u32) -> u32 {
        self.mul(self.mul(i, j), self.inv(i))
    }

    pub fn order_of(&self, i: u32) -> u64 {
        self.orders[i as usize]
    }

    pub fn full_set(&self) -> ElementSet {
        SubsetBits::full(self.order())
    }

    /// Orbits of `g ↦ xgx⁻¹`, sorted by (size, least element index).
    pub fn conjugacy_classes(&self) -> Vec<ElementSet> {
        let n = self.order();
        let gen_idx: Vec<u32> =
            self.generators.iter().filter_map(|g| self.index_of(g)).collect();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = SubsetBits::empty(n);
            orbit.insert(start as usize);
            seen[start as usize] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &g in &gen_idx {
                    let y = self.conj(g, x);
                    if !orbit.contains(y as usize) {
                        orbit.insert(y as usize);
                        seen[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
            classes.push(orbit);
        }
        classes.sort_by_key(|c| (c.count(), c.min_element()));
        classes
    }

    /// Elements commuting with everything in `s`. Always a subgroup.
    pub fn centralizer(&self, s: &ElementSet) -> Result<ElementSet> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = self.order();
        let mut out = SubsetBits::empty(n);
        for g in 0..n as u32 {
            if s.iter().all(|x| self.mul(g, x as u32) == self.mul(x as u32, g)) {
                out.insert(g as usize);
            }
        }
        debug_assert!(self.is_subgroup(&out));
        Ok(out)
    }

    pub fn center(&self) -> ElementSet {
        self.centralizer(&self.full_set()).expect("full set is nonempty")
    }

    /// All elements whose order is a power of `p`; contains the identity.
    pub fn p_power_elements(&self, p: u32) -> Result<ElementSet> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = self.order();
        let mut out = SubsetBits::empty(n);
        for i in 0..n {
            let mut o = self.orders[i];
            while o % p as u64 == 0 {
                o /= p as u64;
            }
            if o == 1 {
                out.insert(i);
            }
        }
        Ok(out)
    }

    /// Closure of a set of element indices under multiplication.
    pub fn subgroup_generated(&self, seed: &[u32]) -> ElementSet {
        let n = self.order();
        let mut set = SubsetBits::empty(n);
        set.insert(0);
        let mut stack: Vec<u32> = vec![0];
        for &s in seed {
            if !set.contains(s as usize) {
                set.insert(s as usize);
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for &s in seed {
                let y = self.mul(x, s);
                if !set.contains(y as usize) {
                    set.insert(y as usize);
                    stack.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.mul(a as u32, b as u32) as usize) {
                    return false;
                }
            }
        }
        true
    }

    pub fn conjugate_set(&self, g: u32, s: &ElementSet) -> ElementSet {
        let mut out = SubsetBits::empty(self.order());
        for x in s.iter() {
            out.insert(self.conj(g, x as u32) as usize);
        }
        out
    }

    /// Normalizer of a subgroup given as an element set.
    pub fn normalizer(&self, s: &ElementSet) -> ElementSet {
        let mut out = SubsetBits::empty(self.order());
        for g in 0..self.order() as u32 {
            if self.conjugate_set(g, s) == *s {
                out.insert(g as usize);
            }
        }
        out
    }

    pub fn is_normal(&self, s: &ElementSet) -> bool {
        self.normalizer(s).is_full()
    }

    /// The p-part of the group order.
    pub fn p_part(&self, p: u32) -> usize {
        let mut n = self.order();
        let mut pk = 1;
        while n % p as usize == 0 {
            pk *= p as usize;
            n /= p as usize;
        }
        pk
    }

    /// Sylow p-subgroups, found by normalizer growth from a cyclic p-subgroup
    /// and closed under conjugation.
    pub fn sylow_p_subgroups(&self, p: u32) -> Result<Vec<ElementSet>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.order() % p as usize != 0 {
            return Err(Error::PrimeDoesNotDivide { p, order: self.order() });
        }
        let pk = self.p_part(p);
        // Cauchy: some power of an element of order divisible by p has order p.
        let x = (0..self.order() as u32)
            .find_map(|i| {
                let o = self.orders[i as usize];
                (o % p as u64 == 0).then(|| self.power(i, o / p as u64))
            })
            .expect("p divides |G| so an element of order p exists");
        let mut sylow = self.subgroup_generated(&[x]);
        while sylow.count() < pk {
            let normalizer = self.normalizer(&sylow);
            let mut grown = None;
            for y in normalizer.iter() {
                let y = y as u32;
                if sylow.contains(y as usize) {
                    continue;
                }
                // order of yP in N/P = least m with y^m in P
                let mut m = 1u64;
                let mut z = y;
                while !sylow.contains(z as usize) {
                    z = self.mul(z, y);
                    m += 1;
                }
                if m % p as u64 == 0 {
                    let w = self.power(y, m / p as u64);
                    if !sylow.contains(w as usize) {
                        grown = Some(w);
                        break;
                    }
                }
            }
            let w = grown.expect("a p-subgroup below Sylow order grows inside its normalizer");
            let mut seed: Vec<u32> = sylow.iter().map(|i| i as u32).collect();
            seed.push(w);
            sylow = self.subgroup_generated(&seed);
        }
        let mut all: Vec<ElementSet> = vec![sylow.clone()];
        for g in 0..self.order() as u32 {
            let conj = self.conjugate_set(g, &sylow);
            if !all.contains(&conj) {
                all.push(conj);
            }
        }
        all.sort();
        Ok(all)
    }

    /// Every p-subgroup, by breadth-first extension: a p-group of order
    /// p^(k+1) contains an index-p (hence normal) subgroup, so extending each
    /// known subgroup inside its normalizer by p-elements finds them all.
    pub fn all_p_subgroups(&self, p: u32, nontrivial_only: bool) -> Result<Vec<ElementSet>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let ppow = self.p_power_elements(p)?;
        let trivial = SubsetBits::singleton(self.order(), 0);
        let mut all: Vec<ElementSet> = vec![trivial.clone()];
        let mut level = vec![trivial.clone()];
        let mut size = 1usize;
        while !level.is_empty() {
            let target = size * p as usize;
            let mut next: Vec<ElementSet> = Vec::new();
            for h in &level {
                let normalizer = self.normalizer(h);
                for y in normalizer.intersection(&ppow).iter() {
                    if h.contains(y) {
                        continue;
                    }
                    let mut seed: Vec<u32> = h.iter().map(|i| i as u32).collect();
                    seed.push(y as u32);
                    let k = self.subgroup_generated(&seed);
                    if k.count() == target && !next.contains(&k) {
                        next.push(k);
                    }
                }
            }
            all.extend(next.iter().cloned());
            level = next;
            size = target;
        }
        if nontrivial_only {
            all.retain(|s| s.count() > 1);
        }
        all.sort();
        Ok(all)
    }

    /// `base^exp` by repeated squaring on element indices.
    pub fn power(&self, base: u32, exp: u64) -> u32 {
        let mut result = 0u32;
        let mut b = base;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Named group constructors used by the CLI and the test instances.
pub mod named {
    use super::*;

    pub fn symmetric(n: usize, cap: usize) -> Result<PermGroup> {
        if n == 0 {
            return Err(Error::ParamBounds("symmetric group needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
            let cycle: Vec<u16> = (0..n as u16).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle])?);
        }
        PermGroup::from_generators(n, gens, cap)
    }

    pub fn alternating(n: usize, cap: usize) -> Result<PermGroup> {
        if n == 0 {
            return Err(Error::ParamBounds("alternating group needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(2) {
            gens.push(Permutation::from_cycles(
                n,
                &[&[i as u16, i as u16 + 1, i as u16 + 2]],
            )?);
        }
        PermGroup::from_generators(n.max(1), gens, cap)
    }

    /// Dihedral group of order `2m`, acting on the `m` vertices of a polygon.
    pub fn dihedral(order: usize, cap: usize) -> Result<PermGroup> {
        if order < 6 || order % 2 != 0 {
            return Err(Error::ParamBounds(format!(
                "dihedral order must be an even number >= 6, got {order}"
            )));
        }
        let m = order / 2;
        let rotation: Vec<u16> = (0..m as u16).collect();
        let reflection =
            Permutation::new((0..m).map(|i| ((m - i) % m) as u16).collect())?;
        PermGroup::from_generators(
            m,
            vec![Permutation::from_cycles(m, &[&rotation])?, reflection],
            cap,
        )
    }

    /// Cyclic group of order `k` in its regular representation.
    pub fn cyclic(k: usize, cap: usize) -> Result<PermGroup> {
        if k == 0 {
            return Err(Error::ParamBounds("cyclic group needs order >= 1".into()));
        }
        let cycle: Vec<u16> = (0..k as u16).collect();
        PermGroup::from_generators(k, vec![Permutation::from_cycles(k, &[&cycle])?], cap)
    }

    /// Parse `"S4"`, `"A5"`, `"dihedral"` (+ order), `"cyclic"` (+ order).
    pub fn by_name(name: &str, order: Option<usize>, cap: usize) -> Result<PermGroup> {
        let lower = name.to_ascii_lowercase();
        if lower == "dihedral" {
            return dihedral(order.ok_or(Error::UnknownGroup(name.into()))?, cap);
        }
        if lower == "cyclic" {
            return cyclic(order.ok_or(Error::UnknownGroup(name.into()))?, cap);
        }
        if let Some(rest) = lower.strip_prefix('s') {
            if let Ok(n) = rest.parse::<usize>() {
                return symmetric(n, cap);
            }
        }
        if let Some(rest) = lower.strip_prefix('a') {
            if let Ok(n) = rest.parse::<usize>() {
                return alternating(n, cap);
            }
        }
        Err(Error::UnknownGroup(name.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        named::symmetric(3, 20_000).unwrap()
    }

    fn a4() -> PermGroup {
        named::alternating(4, 20_000).unwrap()
    }

    #[test]
    fn s3_from_generators() {
        assert_eq!(s3().order(), 6);
    }

    #[test]
    fn a4_from_two_three_cycles() {
        let g = PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
            ],
            20_000,
        )
        .unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn trivial_group_from_no_generators() {
        let g = PermGroup::from_generators(1, vec![], 20_000).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().len(), 1);
    }

    #[test]
    fn element_cap_enforced() {
        let err = named::symmetric(6, 100).unwrap_err();
        assert!(matches!(err, Error::ElementCapExceeded { cap: 100 }));
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let g1 = PermGroup::from_generators(4, vec![a.clone(), b.clone()], 20_000).unwrap();
        let g2 = PermGroup::from_generators(4, vec![b, a], 20_000).unwrap();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn canonical_order_puts_identity_first() {
        let g = s3();
        assert!(g.element(0).is_identity());
        let mut sorted = g.elements().to_vec();
        sorted.sort();
        assert_eq!(g.elements(), &sorted[..]);
    }

    #[test]
    fn conjugacy_class_sizes() {
        let s3_sizes: Vec<usize> = s3().conjugacy_classes().iter().map(|c| c.count()).collect();
        assert_eq!(s3_sizes, vec![1, 2, 3]);
        let a4_sizes: Vec<usize> = a4().conjugacy_classes().iter().map(|c| c.count()).collect();
        assert_eq!(a4_sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn classes_partition_the_group() {
        for g in [s3(), a4(), named::dihedral(30, 20_000).unwrap()] {
            let classes = g.conjugacy_classes();
            let total: usize = classes.iter().map(|c| c.count()).sum();
            assert_eq!(total, g.order());
            for c in &classes {
                assert_eq!(g.order() % c.count(), 0, "class size divides group order");
            }
            let mut union = SubsetBits::empty(g.order());
            for c in &classes {
                assert!(!union.intersects(c));
                union.union_with(c);
            }
            assert!(union.is_full());
            assert_eq!(classes[0].count(), 1);
            assert!(classes[0].contains(0), "identity class is {{identity}}");
        }
    }

    #[test]
    fn centers() {
        assert_eq!(s3().center().count(), 1);
        let z4 = named::cyclic(4, 20_000).unwrap();
        assert_eq!(z4.center().count(), 4);
    }

    #[test]
    fn centralizer_of_double_transposition_in_a4() {
        let g = a4();
        let x = g
            .index_of(&Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap())
            .unwrap();
        let c = g.centralizer(&SubsetBits::singleton(g.order(), x as usize)).unwrap();
        assert_eq!(c.count(), 4);
        assert!(g.centralizer(&SubsetBits::empty(g.order())).is_err());
    }

    #[test]
    fn p_power_element_counts() {
        assert_eq!(a4().p_power_elements(3).unwrap().count(), 9);
        let d30 = named::dihedral(30, 20_000).unwrap();
        assert_eq!(d30.p_power_elements(2).unwrap().count(), 16);
        let a5 = named::alternating(5, 20_000).unwrap();
        assert_eq!(a5.p_power_elements(2).unwrap().count(), 16);
        assert!(a4().p_power_elements(4).is_err());
        // p not dividing |G| yields just the identity
        assert_eq!(s3().p_power_elements(5).unwrap().count(), 1);
    }

    #[test]
    fn sylow_subgroups() {
        let sy3 = a4().sylow_p_subgroups(3).unwrap();
        assert_eq!(sy3.len(), 4);
        assert!(sy3.iter().all(|s| s.count() == 3));
        let sy2 = a4().sylow_p_subgroups(2).unwrap();
        assert_eq!(sy2.len(), 1);
        assert_eq!(sy2[0].count(), 4);
        let d30 = named::dihedral(30, 20_000).unwrap();
        assert_eq!(d30.sylow_p_subgroups(2).unwrap().len(), 15);
        assert!(a4().sylow_p_subgroups(5).is_err());
    }

    #[test]
    fn sylow_count_congruence_and_union() {
        for (g, p) in [
            (a4(), 3u32),
            (a4(), 2),
            (named::alternating(5, 20_000).unwrap(), 2),
            (named::dihedral(30, 20_000).unwrap(), 2),
            (named::symmetric(4, 20_000).unwrap(), 2),
        ] {
            let sylows = g.sylow_p_subgroups(p).unwrap();
            assert_eq!(sylows.len() % p as usize, 1, "Sylow count = 1 mod p");
            assert_eq!(g.order() % sylows.len(), 0, "Sylow count divides |G|");
            let mut union = SubsetBits::empty(g.order());
            for s in &sylows {
                union.union_with(s);
            }
            assert_eq!(union, g.p_power_elements(p).unwrap(), "G_p = union of Sylows");
        }
    }

    #[test]
    fn all_p_subgroups_of_z8() {
        let z8 = named::cyclic(8, 20_000).unwrap();
        let sylows = z8.sylow_p_subgroups(2).unwrap();
        assert_eq!(sylows.len(), 1);
        assert_eq!(sylows[0].count(), 8);
        let all = z8.all_p_subgroups(2, false).unwrap();
        let mut orders: Vec<usize> = all.iter().map(|s| s.count()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 8]);
        assert_eq!(z8.all_p_subgroups(2, true).unwrap().len(), 3);
    }

    /// Brute-force oracle: test every subset of the Sylow union for subgroup
    /// closure. Only usable on small racks of p-power elements.
    fn all_p_subgroups_brute(g: &PermGroup, p: u32) -> Vec<ElementSet> {
        let ppow = g.p_power_elements(p).unwrap();
        let pts: Vec<usize> = ppow.iter().collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << pts.len()) {
            let s = SubsetBits::from_indices(
                g.order(),
                pts.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i),
            );
            if s.is_empty() || !g.is_subgroup(&s) {
                continue;
            }
            let mut c = s.count();
            while c % p as usize == 0 {
                c /= p as usize;
            }
            if c == 1 {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn all_p_subgroups_matches_bruteforce() {
        for (g, p) in [(a4(), 2u32), (a4(), 3), (named::symmetric(4, 20_000).unwrap(), 3)] {
            let fast = g.all_p_subgroups(p, false).unwrap();
            let brute = all_p_subgroups_brute(&g, p);
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn cayley_roundtrip_s3() {
        let g = s3();
        let n = g.order();
        let table: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| g.mul(i as u32, j as u32) as usize).collect()).collect();
        let h = PermGroup::from_cayley_table(&table).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.degree(), 6);
        let sizes: Vec<usize> = h.conjugacy_classes().iter().map(|c| c.count()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn cayley_z2() {
        let g = PermGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn cayley_rejects_bad_tables() {
        let err = PermGroup::from_cayley_table(&[vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]])
            .unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare { .. }));
        // latin square whose only identity row fails as a column
        let err =
            PermGroup::from_cayley_table(&[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]])
                .unwrap_err();
        assert!(matches!(err, Error::NoIdentity));
    }

    #[test]
    fn dihedral_rejects_degenerate_orders() {
        assert!(named::dihedral(4, 20_000).is_err());
        assert!(named::dihedral(7, 20_000).is_err());
        assert_eq!(named::dihedral(30, 20_000).unwrap().order(), 30);
    }
}
