//! Graphviz DOT emission for Hasse diagrams.
//!
//! Output is a pure function of the poset: nodes are grouped into ranks by
//! height and edges are the cover relations, so identical input yields
//! byte-identical output.

use crate::poset::Poset;

/// Render the Hasse diagram. Nodes are labeled by their payloads and ranked
/// bottom-up by height.
pub fn poset_dot(poset: &Poset, graph_name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{graph_name}\" {{\n"));
    out.push_str("  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    let (_, hmax) = if poset.is_empty() { (vec![], vec![]) } else { poset.heights() };
    for i in 0..poset.len() {
        let label = format!("{:?}", poset.payload(i)).replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    let max_h = hmax.iter().copied().max().unwrap_or(0);
    for h in 0..=max_h {
        let level: Vec<usize> = (0..poset.len()).filter(|&i| hmax[i] == h).collect();
        if level.is_empty() {
            continue;
        }
        out.push_str("  { rank=same;");
        for i in level {
            out.push_str(&format!(" n{i};"));
        }
        out.push_str(" }\n");
    }
    for (a, b) in poset.cover_pairs() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn dot_is_deterministic_and_complete() {
        let b2 = Poset::boolean(2);
        let a = poset_dot(&b2, "b2");
        let b = poset_dot(&b2, "b2");
        assert_eq!(a, b);
        assert_eq!(a.matches(" -> ").count(), 4);
        assert!(a.contains("rank=same"));
        assert!(a.starts_with("digraph \"b2\""));
    }

    #[test]
    fn empty_poset_renders() {
        let p = Poset::antichain(0);
        let dot = poset_dot(&p, "empty");
        assert!(dot.contains("digraph"));
    }
}
