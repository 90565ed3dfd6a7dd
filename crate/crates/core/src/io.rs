//! JSON file formats: group specs, rack files, poset dumps, complex dumps
//! and homology reports. Serialization is deterministic (struct field order,
//! sorted keys in maps) so identical inputs produce byte-identical files.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{named, PermGroup};
use crate::homology::HomologyReport;
use crate::perm::Permutation;
use crate::poset::{NodeData, Poset};
use crate::rack::{FiniteRack, RackTable};
use crate::complex::SimplicialComplex;

/// Group input: generators, a Cayley table, or a named construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Generators { degree: usize, generators: Vec<Vec<u16>> },
    Cayley { table: Vec<Vec<usize>> },
    Named { name: String, #[serde(skip_serializing_if = "Option::is_none")] order: Option<usize> },
}

pub fn load_group(spec: &GroupSpec, caps: &Caps) -> Result<PermGroup> {
    match spec {
        GroupSpec::Generators { degree, generators } => {
            let gens = generators
                .iter()
                .map(|im| Permutation::new(im.clone()))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::from_generators(*degree, gens, caps.element_cap)
        }
        GroupSpec::Cayley { table } => PermGroup::from_cayley_table(table),
        GroupSpec::Named { name, order } => named::by_name(name, *order, caps.element_cap),
    }
}

pub fn parse_group_file(text: &str, caps: &Caps) -> Result<PermGroup> {
    let spec: GroupSpec = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("group file: {e}")))?;
    load_group(&spec, caps)
}

/// Rack file: explicit operation table plus display labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RackFile {
    pub size: usize,
    pub table: Vec<Vec<u8>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

pub fn rack_to_file(rack: &FiniteRack) -> RackFile {
    let n = rack.size();
    RackFile {
        size: n,
        table: (0..n).map(|a| rack.table().row(a).to_vec()).collect(),
        labels: rack.labels().to_vec(),
    }
}

pub fn rack_from_file(file: &RackFile) -> Result<FiniteRack> {
    if file.table.len() != file.size {
        return Err(Error::InvalidInput("rack table row count differs from size".into()));
    }
    let mut entries = Vec::with_capacity(file.size * file.size);
    for row in &file.table {
        if row.len() != file.size {
            return Err(Error::InvalidInput("rack table is not square".into()));
        }
        entries.extend_from_slice(row);
    }
    FiniteRack::new(RackTable::new(file.size, entries)?, file.labels.clone())
}

/// Poset dump: nodes with payload strings plus the Hasse cover pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDump {
    pub nodes: Vec<PosetNodeDump>,
    pub covers: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetNodeDump {
    pub id: u32,
    pub payload: serde_json::Value,
}

fn payload_json(data: &NodeData) -> serde_json::Value {
    match data {
        NodeData::Subset(s) => serde_json::json!({"subset": s.to_indices()}),
        NodeData::Partition(p) => serde_json::json!({
            "partition": p.blocks().iter().map(|b| b.to_indices()).collect::<Vec<_>>()
        }),
        NodeData::Ints(p) => serde_json::json!({"integer_partition": p.parts()}),
        NodeData::Label(l) => serde_json::json!({"label": l}),
        NodeData::Pair(a, b) => serde_json::json!({"pair": [payload_json(a), payload_json(b)]}),
        NodeData::Face(f) => serde_json::json!({"face": f}),
        NodeData::OrbitClass(o) => serde_json::json!({"orbit": o}),
        NodeData::Bottom => serde_json::json!({"label": "bottom"}),
        NodeData::Top => serde_json::json!({"label": "top"}),
    }
}

pub fn poset_dump(poset: &Poset) -> PosetDump {
    PosetDump {
        nodes: (0..poset.len())
            .map(|i| PosetNodeDump { id: i as u32, payload: payload_json(poset.payload(i)) })
            .collect(),
        covers: poset.cover_pairs(),
    }
}

/// Complex dump: the facet list determines the complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDump {
    pub facets: Vec<Vec<u32>>,
}

pub fn complex_dump(complex: &SimplicialComplex) -> ComplexDump {
    ComplexDump { facets: complex.facets() }
}

/// Homology report dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomologyDump {
    pub betti: std::collections::BTreeMap<String, usize>,
    pub torsion: std::collections::BTreeMap<String, Vec<String>>,
    pub chi_tilde: i64,
    pub method: String,
}

pub fn homology_dump(report: &HomologyReport) -> HomologyDump {
    HomologyDump {
        betti: report.reduced_betti.iter().map(|(d, b)| (d.to_string(), *b)).collect(),
        torsion: report
            .torsion
            .iter()
            .map(|(d, t)| (d.to_string(), t.iter().map(|x| x.to_string()).collect()))
            .collect(),
        chi_tilde: report.chi_tilde,
        method: match report.method {
            crate::homology::HomologyMethod::Snf => "snf".into(),
            crate::homology::HomologyMethod::TwoPrime => "two-prime".into(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn group_spec_roundtrip() {
        let caps = Caps::default();
        let spec: GroupSpec = serde_json::from_str(
            r#"{"kind":"generators","degree":3,"generators":[[1,0,2],[1,2,0]]}"#,
        )
        .unwrap();
        assert_eq!(load_group(&spec, &caps).unwrap().order(), 6);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"named","name":"A4"}"#).unwrap();
        assert_eq!(load_group(&spec, &caps).unwrap().order(), 12);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"named","name":"dihedral","order":30}"#).unwrap();
        assert_eq!(load_group(&spec, &caps).unwrap().order(), 30);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"cayley","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(load_group(&spec, &caps).unwrap().order(), 2);
    }

    #[test]
    fn bad_group_files_surface_codes() {
        let caps = Caps::default();
        assert!(parse_group_file("{", &caps).is_err());
        let err = parse_group_file(r#"{"kind":"named","name":"nope"}"#, &caps).unwrap_err();
        assert_eq!(err.code(), "unknown_group");
    }

    #[test]
    fn rack_file_roundtrip() {
        let g = named::symmetric(3, 20_000).unwrap();
        let full = g.full_set();
        let rack = FiniteRack::conjugation_rack(&g, &full).unwrap();
        let file = rack_to_file(&rack);
        let json = serde_json::to_string(&file).unwrap();
        let back: RackFile = serde_json::from_str(&json).unwrap();
        let rack2 = rack_from_file(&back).unwrap();
        assert_eq!(rack.table(), rack2.table());
        assert_eq!(rack.labels(), rack2.labels());
    }

    #[test]
    fn rack_file_rejects_non_racks() {
        let file = RackFile { size: 2, table: vec![vec![0, 0], vec![0, 1]], labels: vec![] };
        assert!(rack_from_file(&file).is_err());
    }

    #[test]
    fn poset_dump_shape() {
        let b2 = Poset::boolean(2);
        let dump = poset_dump(&b2);
        assert_eq!(dump.nodes.len(), 4);
        assert_eq!(dump.covers.len(), 4);
        let json = serde_json::to_string(&dump).unwrap();
        assert!(json.contains("\"covers\""));
    }

    #[test]
    fn dumps_are_byte_identical_across_runs() {
        let b3 = Poset::boolean(3);
        let a = serde_json::to_string(&poset_dump(&b3)).unwrap();
        let b = serde_json::to_string(&poset_dump(&b3)).unwrap();
        assert_eq!(a, b);
    }
}
