//! Named checkers for the structure theorems of subrack lattices.
//!
//! Each checker evaluates its hypotheses and conclusion separately and
//! returns a [`Verdict`] carrying structured evidence sufficient to re-derive
//! the outcome. Conclusions are only meaningful when the hypotheses hold.
//! Homotopy-type claims are certified at homology level: free homology of
//! the right rank concentrated in the right dimension, reported as
//! "consistent with a wedge of spheres", never as homotopy equivalence.

use std::collections::HashSet;

use serde::Serialize;
use serde_json::json;

use crate::bits::SubsetBits;
use crate::caps::Caps;
use crate::complex::{order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{ElementSet, PermGroup};
use crate::homology::{betti_numbers, HomologyReport};
use crate::iso::poset_isomorphic;
use crate::lattice::{inf_poset, InfPoset, SubrackLattice};
use crate::partition::{iota_image_poset, partition_image_poset, SetPartition};
use crate::poset::Poset;
use crate::rack::FiniteRack;

/// Machine-readable outcome of one checker run.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub claim_id: String,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub data: serde_json::Value,
}

impl Verdict {
    /// Overall status: failed hypotheses make a claim inapplicable, not false.
    pub fn ok(&self) -> bool {
        !self.hypotheses_hold || self.conclusion_holds
    }
}

/// A conjugation rack bundled with its group, defining subset and lattice.
pub struct RackContext {
    pub group: PermGroup,
    pub members: ElementSet,
    pub rack: FiniteRack,
    pub lattice: SubrackLattice,
}

impl RackContext {
    pub fn new(group: PermGroup, members: ElementSet, caps: &Caps) -> Result<Self> {
        let rack = FiniteRack::conjugation_rack(&group, &members)?;
        let lattice = SubrackLattice::enumerate(&rack, caps.node_cap)?;
        Ok(RackContext { group, members, rack, lattice })
    }

    pub fn p_power(group: PermGroup, p: u32, caps: &Caps) -> Result<Self> {
        let members = group.p_power_elements(p)?;
        Self::new(group, members, caps)
    }

    /// Proper part of the subrack lattice.
    pub fn proper(&self) -> Poset {
        let (bar, _) =
            self.lattice.poset.proper_part().expect("subrack lattices are bounded");
        bar
    }

    pub fn betti_of_proper(&self, caps: &Caps) -> Result<HomologyReport> {
        betti_numbers(&order_complex(&self.proper(), caps.face_cap)?, caps)
    }
}

fn subset_json(s: &SubsetBits) -> serde_json::Value {
    json!(s.to_indices())
}

fn betti_json(report: &HomologyReport) -> serde_json::Value {
    json!({
        "reduced_betti": report.reduced_betti.iter()
            .map(|(d, b)| (d.to_string(), *b))
            .collect::<std::collections::BTreeMap<_, _>>(),
        "torsion_free": report.is_torsion_free(),
        "chi_tilde": report.chi_tilde,
        "method": report.method,
    })
}

/// Spherical and parabolic subracks of a conjugation rack, with the orbit
/// count `c` and the minimal-parabolic count `k`.
pub struct SphericalParabolic {
    pub inf: InfPoset,
    /// Positions within `inf` of the spherical elements.
    pub spherical: Vec<usize>,
    /// Positions within `inf` of the parabolic elements.
    pub parabolic: Vec<usize>,
    pub inn_orbit_count: usize,
    pub minimal_parabolic_count: usize,
}

impl SphericalParabolic {
    pub fn spherical_poset(&self) -> Poset {
        self.inf.poset.induced(&self.spherical)
    }

    pub fn parabolic_poset(&self) -> Poset {
        self.inf.poset.induced(&self.parabolic)
    }
}

/// Spherical = Inf elements that are unions of Inn-orbits; parabolic = Inf
/// elements meeting every spherical one. Their underlying sets are disjoint.
pub fn spherical_and_parabolic(ctx: &RackContext) -> Result<SphericalParabolic> {
    let lattice = &ctx.lattice;
    let inf = inf_poset(&lattice.poset, None)?;
    let orbits = ctx.rack.inner_orbits();
    let is_orbit_union =
        |s: &SubsetBits| orbits.blocks().iter().all(|b| !s.intersects(b) || b.is_subset(s));
    let subsets: Vec<&SubsetBits> =
        inf.lattice_ids.iter().map(|&i| lattice.subset(i)).collect();
    let spherical: Vec<usize> =
        (0..subsets.len()).filter(|&i| is_orbit_union(subsets[i])).collect();
    let parabolic: Vec<usize> = (0..subsets.len())
        .filter(|&i| spherical.iter().all(|&s| subsets[i].intersects(subsets[s])))
        .collect();
    if spherical.iter().any(|s| parabolic.contains(s)) {
        return Err(Error::Internal(
            "spherical and parabolic subracks are not disjoint".into(),
        ));
    }
    let par_poset = inf.poset.induced(&parabolic);
    let minimal_parabolic_count = par_poset.minimals().len();
    Ok(SphericalParabolic {
        inf,
        spherical,
        parabolic,
        inn_orbit_count: orbits.blocks().len(),
        minimal_parabolic_count,
    })
}

/// Sphere theorem: when the proper part is nonempty and every maximal
/// subrack is preserved setwise by every inner map, the order complex of
/// the proper part has the homology of an (m-2)-sphere, m = orbit count.
/// For a group rack m is the conjugacy class count.
pub fn check_sphere_theorems(ctx: &RackContext, caps: &Caps) -> Result<Verdict> {
    let rack = &ctx.rack;
    let lattice = &ctx.lattice;
    let nonempty_proper = lattice.len() > 2;
    let coatom_ids = crate::lattice::coatoms(&lattice.poset)?;
    let mut stable = true;
    for &c in &coatom_ids {
        let m = lattice.subset(c);
        for a in 0..rack.size() {
            let image =
                SubsetBits::from_indices(rack.size(), m.iter().map(|b| rack.op(a, b)));
            if &image != m {
                stable = false;
            }
        }
    }
    let m = rack.inner_orbits().blocks().len();
    let hypotheses_hold = nonempty_proper && stable;
    let mut data = json!({
        "orbit_count": m,
        "maximal_subracks": coatom_ids.len(),
        "proper_part_nonempty": nonempty_proper,
        "maximal_subracks_inn_stable": stable,
    });
    let mut conclusion_holds = false;
    if hypotheses_hold {
        let betti = ctx.betti_of_proper(caps)?;
        conclusion_holds = betti.consistent_with_wedge(m as i64 - 2, 1);
        // the proof identifies Inf(R(X)) with the proper part of B_m
        let inf = inf_poset(&lattice.poset, None)?;
        let (bm_bar, _) = Poset::boolean(m).proper_part()?;
        let inf_is_boolean = poset_isomorphic(&inf.poset, &bm_bar)?.is_some();
        data["betti"] = betti_json(&betti);
        data["inf_isomorphic_to_boolean_proper_part"] = json!(inf_is_boolean);
    }
    Ok(Verdict { claim_id: "sphere_theorem".into(), hypotheses_hold, conclusion_holds, data })
}

/// Decomposition: Δ(R̄(X)) has the homology of Δ(S(X) ⊕ P(X)), and of
/// S^(c-2) * Δ(P(X)) when the spherical poset is Boolean of rank c. When a
/// prime is supplied and the parabolic elements are exactly the Sylow
/// subracks, the wedge count k-1 in dimension c-1 is asserted as well.
pub fn check_decomposition(ctx: &RackContext, p: Option<u32>, caps: &Caps) -> Result<Verdict> {
    let sp = spherical_and_parabolic(ctx)?;
    let c = sp.inn_orbit_count;
    let betti_bar = ctx.betti_of_proper(caps)?;
    let s_poset = sp.spherical_poset();
    let p_poset = sp.parabolic_poset();
    let ordinal = s_poset.ordinal_sum(&p_poset);
    let betti_ordinal = betti_numbers(&order_complex(&ordinal, caps.face_cap)?, caps)?;
    let p_complex = order_complex(&p_poset, caps.face_cap)?;
    let join = SimplicialComplex::sphere(c as i64 - 2).join(&p_complex, caps.face_cap)?;
    let betti_join = betti_numbers(&join, caps)?;

    let spherical_is_boolean = if c >= 2 {
        let (bc_bar, _) = Poset::boolean(c).proper_part()?;
        poset_isomorphic(&s_poset, &bc_bar)?.is_some()
    } else {
        sp.spherical.is_empty()
    };
    let ord_eq = betti_bar.reduced_betti == betti_ordinal.reduced_betti;
    let join_eq = betti_bar.reduced_betti == betti_join.reduced_betti;
    let mut conclusion_holds = ord_eq && (!spherical_is_boolean || join_eq);

    let mut data = json!({
        "c": c,
        "spherical": sp.spherical.len(),
        "parabolic": sp.parabolic.len(),
        "minimal_parabolic_count": sp.minimal_parabolic_count,
        "spherical_poset_is_boolean_proper_part": spherical_is_boolean,
        "betti_proper": betti_json(&betti_bar),
        "betti_ordinal_sum": betti_json(&betti_ordinal),
        "betti_sphere_join": betti_json(&betti_join),
    });

    if let Some(p) = p {
        let sylows = ctx.group.sylow_p_subgroups(p)?;
        let sylow_subsets: Vec<SubsetBits> = sylows
            .iter()
            .map(|s| group_set_to_rack_subset(ctx, s))
            .collect::<Result<_>>()?;
        let parabolic_subsets: Vec<&SubsetBits> = sp
            .parabolic
            .iter()
            .map(|&i| ctx.lattice.subset(sp.inf.lattice_ids[i]))
            .collect();
        let only_sylows = !parabolic_subsets.is_empty()
            && parabolic_subsets.iter().all(|s| sylow_subsets.contains(s))
            && sylow_subsets.iter().all(|s| parabolic_subsets.contains(&s));
        let k = sylows.len();
        data["sylow_count"] = json!(k);
        data["parabolic_elements_are_exactly_the_sylow_subracks"] = json!(only_sylows);
        if only_sylows && k > 1 {
            let wedge = betti_bar.consistent_with_wedge(c as i64 - 1, k - 1);
            data["wedge_of_k_minus_1_spheres"] = json!(wedge);
            conclusion_holds = conclusion_holds && wedge;
        }
    }
    Ok(Verdict {
        claim_id: "decomposition".into(),
        hypotheses_hold: true,
        conclusion_holds,
        data,
    })
}

/// Map a set of group elements to rack element indices. Errors when the set
/// leaves the rack.
fn group_set_to_rack_subset(ctx: &RackContext, s: &ElementSet) -> Result<SubsetBits> {
    let positions: Vec<usize> = ctx.members.iter().collect();
    let mut out = SubsetBits::empty(positions.len());
    for g in s.iter() {
        match positions.binary_search(&g) {
            Ok(i) => out.insert(i),
            Err(_) => {
                return Err(Error::InvalidInput(format!(
                    "group element {g} lies outside the rack"
                )))
            }
        }
    }
    Ok(out)
}

/// Euler congruence for the p-power rack: when every nontrivial p-subgroup
/// sees a unique minimal parabolic superset, χ̃(Δ(R̄(G_p))) ≡ 0 mod |G|_p
/// holds exactly when O_p(G) ≠ G_p. The hypothesis is read over nontrivial
/// subgroups; the reading including the trivial subgroup is surfaced in the
/// evidence whenever the two differ.
pub fn check_euler(group: &PermGroup, p: u32, caps: &Caps) -> Result<Verdict> {
    if group.order() % p as usize != 0 {
        return Err(Error::PrimeDoesNotDivide { p, order: group.order() });
    }
    let ctx = RackContext::p_power(group.clone(), p, caps)?;
    let sp = spherical_and_parabolic(&ctx)?;
    let parabolic_subsets: Vec<&SubsetBits> = sp
        .parabolic
        .iter()
        .map(|&i| ctx.lattice.subset(sp.inf.lattice_ids[i]))
        .collect();

    // O_p(G) = intersection of the Sylow p-subgroups; normality re-verified.
    let sylows = group.sylow_p_subgroups(p)?;
    let mut p_core = sylows[0].clone();
    for s in &sylows[1..] {
        p_core.intersect_with(s);
    }
    if !group.is_normal(&p_core) {
        return Err(Error::Internal("Sylow intersection is not normal".into()));
    }
    let g_p = group.p_power_elements(p)?;
    let core_is_gp = p_core == g_p;

    let nontrivial = group.all_p_subgroups(p, true)?;
    let unique_min = |candidates: &[&SubsetBits]| -> bool {
        !candidates.is_empty()
            && candidates
                .iter()
                .filter(|&&s| !candidates.iter().any(|&t| t != s && t.is_proper_subset(s)))
                .count()
                == 1
    };
    let mut hyp_nontrivial = true;
    if !parabolic_subsets.is_empty() {
        for j in &nontrivial {
            let j_rack = group_set_to_rack_subset(&ctx, j)?;
            let supersets: Vec<&SubsetBits> = parabolic_subsets
                .iter()
                .copied()
                .filter(|s| j_rack.is_subset(s))
                .collect();
            if !unique_min(&supersets) {
                hyp_nontrivial = false;
                break;
            }
        }
    }
    let hyp_trivial =
        parabolic_subsets.is_empty() || unique_min(&parabolic_subsets);

    let betti = ctx.betti_of_proper(caps)?;
    let chi = betti.chi_tilde;
    let p_part = group.p_part(p) as i64;
    let divisible = chi.rem_euclid(p_part) == 0;
    let conclusion_holds = divisible == !core_is_gp;

    Ok(Verdict {
        claim_id: "euler_congruence".into(),
        hypotheses_hold: hyp_nontrivial,
        conclusion_holds,
        data: json!({
            "p": p,
            "p_part": p_part,
            "chi_tilde": chi,
            "chi_divisible_by_p_part": divisible,
            "p_core_order": p_core.count(),
            "p_core_equals_p_power_rack": core_is_gp,
            "hypothesis_nontrivial_subgroups": hyp_nontrivial,
            "hypothesis_including_trivial_subgroup": hyp_trivial,
            "readings_differ": hyp_nontrivial != hyp_trivial,
            "parabolic_count": parabolic_subsets.len(),
        }),
    })
}

/// For a connected rack: Inf elements are fixed by the orbit-structure
/// closure, π embeds Inf(R(X)) into the partition lattice, the meet-of-
/// maximal-orbit-structures map is injective and order-preserving, and the
/// orbit poset of the image matches the integer-partition image exactly
/// when the inner group acts transitively on each shape class.
pub fn check_pi_ipi(ctx: &RackContext) -> Result<Verdict> {
    let rack = &ctx.rack;
    if !rack.is_connected() {
        return Err(Error::NotConnected);
    }
    let lattice = &ctx.lattice;
    let inf = inf_poset(&lattice.poset, None)?;
    let inf_subsets: Vec<&SubsetBits> =
        inf.lattice_ids.iter().map(|&i| lattice.subset(i)).collect();

    // (a) Inf elements are η-closed
    let eta_fixed = inf_subsets
        .iter()
        .all(|s| rack.eta_closure(s).map(|e| &e == *s).unwrap_or(false));

    // (b) π is injective on Inf and an isomorphism onto its image
    let pi: Vec<SetPartition> =
        inf_subsets.iter().map(|s| rack.orbit_structure(s)).collect::<Result<_>>()?;
    let (image, _image_map) = partition_image_poset(&pi)?;
    let injective = image.len() == inf.poset.len();
    let image_iso = poset_isomorphic(&inf.poset, &image)?.is_some();

    // (c) f(S) = common refinement of the orbit structures of the maximal
    // subracks above S: injective, order-preserving, valued in proper
    // partitions (hence in Inf(Π_n, π(M)) by construction)
    let coatom_ids = crate::lattice::coatoms(&lattice.poset)?;
    let coatom_partitions: Vec<SetPartition> = coatom_ids
        .iter()
        .map(|&c| rack.orbit_structure(lattice.subset(c)))
        .collect::<Result<_>>()?;
    let f: Vec<SetPartition> = inf_subsets
        .iter()
        .map(|s| {
            let mut meet: Option<SetPartition> = None;
            for (k, &c) in coatom_ids.iter().enumerate() {
                if s.is_subset(lattice.subset(c)) {
                    meet = Some(match meet {
                        None => coatom_partitions[k].clone(),
                        Some(m) => m.meet(&coatom_partitions[k]),
                    });
                }
            }
            meet.expect("every proper subrack lies below a coatom")
        })
        .collect();
    let f_injective = {
        let mut sorted = f.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == f.len()
    };
    let f_monotone = (0..f.len())
        .all(|a| (0..f.len()).all(|b| !inf.poset.leq(a, b) || f[a].refines(&f[b])));
    let f_proper = f.iter().all(|part| part.blocks().len() < rack.size());

    // (d) ι∘π and ω∘π are poset maps; Orb ≅ ι-image iff the inner group is
    // transitive on every shape class of the image
    let image_partitions: Vec<SetPartition> = (0..image.len())
        .map(|i| match image.payload(i) {
            crate::poset::NodeData::Partition(p) => p.clone(),
            _ => unreachable!("π image nodes are partitions"),
        })
        .collect();
    let row_maps: Vec<Vec<u32>> = (0..rack.size())
        .map(|a| {
            let images: Vec<usize> = (0..rack.size()).map(|b| rack.op(a, b)).collect();
            image_partitions
                .iter()
                .map(|p| {
                    let moved = p.relabel(&images);
                    image_partitions
                        .iter()
                        .position(|q| *q == moved)
                        .map(|x| x as u32)
                        .ok_or_else(|| {
                            Error::Internal("inner map does not act on the π image".into())
                        })
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let (orb, omega) = image.orb_poset(&row_maps)?;
    let (iota_img, iota_map) = iota_image_poset(&image_partitions)?;
    let omega_monotone = (0..image.len()).all(|a| {
        (0..image.len())
            .all(|b| !image.leq(a, b) || orb.leq(omega[a] as usize, omega[b] as usize))
    });
    let iota_monotone = (0..image.len()).all(|a| {
        (0..image.len()).all(|b| {
            !image.leq(a, b) || iota_img.leq(iota_map[a] as usize, iota_map[b] as usize)
        })
    });
    let transitive_on_classes = {
        let mut class_orbits: std::collections::HashMap<u32, HashSet<u32>> =
            std::collections::HashMap::new();
        for i in 0..image.len() {
            class_orbits.entry(iota_map[i]).or_default().insert(omega[i]);
        }
        class_orbits.values().all(|s| s.len() == 1)
    };
    let orb_iso_iota = poset_isomorphic(&orb, &iota_img)?.is_some();

    let conclusion_holds = eta_fixed
        && injective
        && image_iso
        && f_injective
        && f_monotone
        && f_proper
        && omega_monotone
        && iota_monotone
        && (orb_iso_iota == transitive_on_classes);
    Ok(Verdict {
        claim_id: "pi_ipi".into(),
        hypotheses_hold: true,
        conclusion_holds,
        data: json!({
            "inf_size": inf.poset.len(),
            "eta_fixes_inf": eta_fixed,
            "pi_injective_on_inf": injective,
            "pi_image_isomorphic": image_iso,
            "f_injective": f_injective,
            "f_order_preserving": f_monotone,
            "f_lands_in_proper_partitions": f_proper,
            "omega_pi_poset_map": omega_monotone,
            "iota_pi_poset_map": iota_monotone,
            "inn_transitive_on_shape_classes": transitive_on_classes,
            "orb_isomorphic_to_iota_image": orb_iso_iota,
        }),
    })
}

/// Central factorization: with Z = X ∩ Z(G) and X \ Z both nonempty, R(X)
/// is the direct product R(X\Z) × R(Z), χ̃ picks up the sign (-1)^|Z|, and
/// Δ(R̄(X)) has the homology of Δ(Inf(R(X\Z))) * S^(|Z|-1).
pub fn check_product(group: &PermGroup, members: &ElementSet, caps: &Caps) -> Result<Verdict> {
    let center = group.center();
    let z = members.intersection(&center);
    let y = members.difference(&z);
    if z.is_empty() || y.is_empty() {
        return Ok(Verdict {
            claim_id: "central_product".into(),
            hypotheses_hold: false,
            conclusion_holds: false,
            data: json!({
                "central_part": z.count(),
                "noncentral_part": y.count(),
            }),
        });
    }
    let ctx_x = RackContext::new(group.clone(), members.clone(), caps)?;
    let ctx_y = RackContext::new(group.clone(), y.clone(), caps)?;
    let ctx_z = RackContext::new(group.clone(), z.clone(), caps)?;

    let product = ctx_y.lattice.poset.direct_product(&ctx_z.lattice.poset);
    let product_iso = poset_isomorphic(&ctx_x.lattice.poset, &product)?.is_some();

    let betti_x = ctx_x.betti_of_proper(caps)?;
    let betti_y = ctx_y.betti_of_proper(caps)?;
    let sign = if z.count() % 2 == 0 { 1 } else { -1 };
    let chi_identity = betti_x.chi_tilde == sign * betti_y.chi_tilde;

    let inf_y = inf_poset(&ctx_y.lattice.poset, None)?;
    let inf_complex = order_complex(&inf_y.poset, caps.face_cap)?;
    let join =
        inf_complex.join(&SimplicialComplex::sphere(z.count() as i64 - 1), caps.face_cap)?;
    let betti_join = betti_numbers(&join, caps)?;
    let join_identity = betti_x.reduced_betti == betti_join.reduced_betti;

    Ok(Verdict {
        claim_id: "central_product".into(),
        hypotheses_hold: true,
        conclusion_holds: product_iso && chi_identity && join_identity,
        data: json!({
            "central_part": z.count(),
            "noncentral_part": y.count(),
            "lattice_nodes": ctx_x.lattice.len(),
            "product_nodes": ctx_y.lattice.len() * ctx_z.lattice.len(),
            "lattice_isomorphic_to_product": product_iso,
            "chi_x": betti_x.chi_tilde,
            "chi_y": betti_y.chi_tilde,
            "chi_sign_identity": chi_identity,
            "betti_join_identity": join_identity,
        }),
    })
}

/// Nilpotent class-lattice layers. The exponent t is fitted from the
/// lattice length rather than trusted: with ℓ = (p-1)t + 1 each rank layer
/// ((p-1)(k-1)+1 .. (p-1)k) must be a disjoint union of p^(t-k) copies of
/// the proper part of B_p. The t implied by |C| = p^(t-2) is reported
/// alongside for comparison, not asserted.
pub fn check_nilpotent_class(lattice: &SubrackLattice, p: u32) -> Result<Verdict> {
    let purity = lattice.poset.purity_and_rank();
    let class_size = lattice.subset(lattice.top()).count();
    let t_from_size = {
        let mut c = class_size;
        let mut t = 2u32;
        while c % p as usize == 0 {
            c /= p as usize;
            t += 1;
        }
        (c == 1).then_some(t)
    };
    if !purity.is_pure {
        let witness = purity
            .witness
            .as_ref()
            .map(|(a, b)| json!({"long_chain": a, "short_chain": b}));
        return Ok(Verdict {
            claim_id: "nilpotent_class_layers".into(),
            hypotheses_hold: true,
            conclusion_holds: false,
            data: json!({
                "pure": false,
                "length": purity.length,
                "witness": witness,
                "t_from_class_size": t_from_size,
            }),
        });
    }
    let length = purity.length;
    let rank = purity.rank.as_ref().expect("pure posets have a rank function");
    let t_from_length = (length as u32)
        .checked_sub(1)
        .filter(|l| l % (p - 1) == 0)
        .map(|l| l / (p - 1));
    let mut layers_match = t_from_length.is_some();
    let mut layer_report = Vec::new();
    if let Some(t) = t_from_length {
        let (bp_bar, _) = Poset::boolean(p as usize).proper_part()?;
        for k in 1..=t {
            let lo = (p - 1) * (k - 1) + 1;
            let hi = (p - 1) * k;
            let nodes: Vec<usize> = (0..lattice.len())
                .filter(|&i| {
                    let r = rank[i] as u32;
                    lo <= r && r <= hi
                })
                .collect();
            let layer = lattice.poset.induced(&nodes);
            let copies = p.checked_pow(t - k).unwrap_or(0) as usize;
            let mut expected = Poset::antichain(0);
            for _ in 0..copies {
                expected = disjoint_union(&expected, &bp_bar);
            }
            let iso = poset_isomorphic(&layer, &expected)?.is_some();
            layer_report.push(json!({
                "k": k,
                "layer_nodes": nodes.len(),
                "expected_copies": copies,
                "isomorphic": iso,
            }));
            layers_match = layers_match && iso;
        }
    }
    Ok(Verdict {
        claim_id: "nilpotent_class_layers".into(),
        hypotheses_hold: true,
        conclusion_holds: layers_match,
        data: json!({
            "pure": true,
            "length": length,
            "class_size": class_size,
            "t_from_length": t_from_length,
            "t_from_class_size": t_from_size,
            "t_parameterizations_agree": t_from_length.is_some()
                && t_from_length == t_from_size,
            "layers": layer_report,
        }),
    })
}

fn disjoint_union(a: &Poset, b: &Poset) -> Poset {
    let n = a.len();
    let mut payloads: Vec<crate::poset::NodeData> = a.payloads().to_vec();
    payloads.extend(b.payloads().iter().cloned());
    Poset::from_leq_fn(payloads, |x, y| match (x < n, y < n) {
        (true, true) => a.leq(x, y),
        (false, false) => b.leq(x - n, y - n),
        _ => false,
    })
    .expect("disjoint union of posets is a poset")
}

/// Every maximal proper subrack containing `s`, found by DFS over closures
/// of one-element extensions.
pub fn maximal_subracks_above(
    rack: &FiniteRack,
    s: &SubsetBits,
    state_cap: usize,
) -> Result<Vec<SubsetBits>> {
    if !rack.is_subrack(s) || s.is_full() {
        return Err(Error::NotASubrack);
    }
    let full = rack.full_subset();
    let mut seen: HashSet<SubsetBits> = HashSet::new();
    let mut maximals: Vec<SubsetBits> = Vec::new();
    let mut stack = vec![s.clone()];
    while let Some(t) = stack.pop() {
        if !seen.insert(t.clone()) {
            continue;
        }
        if seen.len() > state_cap {
            return Err(Error::SearchCapExceeded { cap: state_cap });
        }
        let mut extensions: Vec<SubsetBits> = Vec::new();
        for x in 0..rack.size() {
            if t.contains(x) {
                continue;
            }
            let mut seed = t.clone();
            seed.insert(x);
            let closed = rack.subrack_closure(&seed);
            if closed != full {
                extensions.push(closed);
            }
        }
        if extensions.is_empty() {
            if !maximals.contains(&t) {
                maximals.push(t);
            }
        } else {
            extensions.sort();
            extensions.dedup();
            stack.extend(extensions);
        }
    }
    maximals.sort();
    Ok(maximals)
}

/// Where a chain is checked for maximality.
pub enum ChainMode {
    /// In the proper part of the full subrack lattice.
    Full,
    /// In Inf(R(X)), relative to caller-supplied maximal subracks (full
    /// coatom enumeration of large racks is out of scope). The supplied set
    /// must be exactly the maximal subracks above the chain's bottom; any
    /// Inf element above the bottom is a meet of those.
    Inf { maximals: Vec<SubsetBits> },
}

/// Verify that a chain of proper subracks is a maximal chain: strictly
/// increasing, saturated (no subrack strictly between consecutive entries,
/// decided by closures of one-element extensions) and not extendable at
/// either end.
pub fn maximal_chain_check(
    rack: &FiniteRack,
    chain: &[SubsetBits],
    mode: ChainMode,
    state_cap: usize,
) -> Result<Verdict> {
    if chain.is_empty() {
        return Err(Error::InvalidInput("empty chain".into()));
    }
    for (i, s) in chain.iter().enumerate() {
        if !rack.is_subrack(s) {
            return Err(Error::ChainElementNotClosed(i));
        }
        if s.is_empty() || s.is_full() {
            return Err(Error::InvalidInput(format!(
                "chain element {i} is not in the proper part"
            )));
        }
    }
    let strict = chain.windows(2).all(|w| w[0].is_proper_subset(&w[1]));
    let full = rack.full_subset();
    let saturated_to = |s: &SubsetBits, t: &SubsetBits| {
        t.difference(s).iter().all(|x| {
            let mut seed = s.clone();
            seed.insert(x);
            rack.subrack_closure(&seed) == *t
        })
    };
    match mode {
        ChainMode::Full => {
            let saturated = chain.windows(2).all(|w| saturated_to(&w[0], &w[1]));
            let bottom_minimal = chain[0].iter().all(|x| {
                rack.subrack_closure(&SubsetBits::singleton(rack.size(), x)) == chain[0]
            });
            let top_maximal = saturated_to(chain.last().unwrap(), &full);
            Ok(Verdict {
                claim_id: "maximal_chain".into(),
                hypotheses_hold: true,
                conclusion_holds: strict && saturated && bottom_minimal && top_maximal,
                data: json!({
                    "within": "full",
                    "length": chain.len() - 1,
                    "strictly_increasing": strict,
                    "saturated": saturated,
                    "bottom_minimal": bottom_minimal,
                    "top_maximal": top_maximal,
                    "chain": chain.iter().map(subset_json).collect::<Vec<_>>(),
                }),
            })
        }
        ChainMode::Inf { maximals } => {
            for (i, m) in maximals.iter().enumerate() {
                if !rack.is_subrack(m) {
                    return Err(Error::ChainElementNotClosed(i));
                }
                if !saturated_to(m, &full) {
                    return Err(Error::InvalidInput(format!(
                        "supplied subrack {i} is not maximal"
                    )));
                }
            }
            let discovered = maximal_subracks_above(rack, &chain[0], state_cap)?;
            let mut supplied = maximals.clone();
            supplied.sort();
            supplied.dedup();
            let supplied_complete = supplied == discovered;
            // meet-closure of the maximals above the bottom: every Inf
            // element above the bottom is an intersection of these
            let mut family: Vec<SubsetBits> = supplied.clone();
            let mut i = 0;
            while i < family.len() {
                for j in 0..family.len() {
                    let m = family[i].intersection(&family[j]);
                    if !m.is_empty() && !family.contains(&m) {
                        family.push(m);
                    }
                }
                i += 1;
            }
            let in_family = chain.iter().all(|s| family.contains(s));
            let between = |s: &SubsetBits, t: &SubsetBits| {
                family.iter().any(|u| s.is_proper_subset(u) && u.is_proper_subset(t))
            };
            let saturated = chain.windows(2).all(|w| !between(&w[0], &w[1]));
            let top_is_max =
                !family.iter().any(|u| chain.last().unwrap().is_proper_subset(u));
            // bottom minimal in Inf: no proper nonempty subrack below the
            // bottom equals the meet of the maximals above itself
            let mut bottom_minimal = true;
            let bottom = &chain[0];
            let bottom_indices: Vec<usize> = bottom.iter().collect();
            for mask in 1u32..(1u32 << bottom_indices.len()) - 1 {
                let w = SubsetBits::from_indices(
                    rack.size(),
                    bottom_indices
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &x)| x),
                );
                if !rack.is_subrack(&w) {
                    continue;
                }
                let above = maximal_subracks_above(rack, &w, state_cap)?;
                let mut meet = full.clone();
                for m in &above {
                    meet.intersect_with(m);
                }
                if meet == w {
                    bottom_minimal = false;
                }
            }
            Ok(Verdict {
                claim_id: "maximal_chain".into(),
                hypotheses_hold: supplied_complete,
                conclusion_holds: strict
                    && in_family
                    && saturated
                    && top_is_max
                    && bottom_minimal,
                data: json!({
                    "within": "inf",
                    "length": chain.len() - 1,
                    "supplied_maximals_complete": supplied_complete,
                    "strictly_increasing": strict,
                    "elements_are_meets_of_maximals": in_family,
                    "saturated_in_inf": saturated,
                    "top_maximal_in_inf": top_is_max,
                    "bottom_minimal_in_inf": bottom_minimal,
                    "chain": chain.iter().map(subset_json).collect::<Vec<_>>(),
                }),
            })
        }
    }
}
