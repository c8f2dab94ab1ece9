//! Graphviz export: both Hasse diagrams plus dashed contraction edges.

use std::fmt::Write;

use spectra::{covering_pairs, Poset, SpectralMap, Target};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn node(side: &str, label: &str) -> String {
    quote(&format!("{side}:{label}"))
}

fn cluster(out: &mut String, side: &str, p: &Poset, with_top: bool) {
    writeln!(out, "  subgraph cluster_{side} {{").unwrap();
    writeln!(out, "    label={};", quote(side)).unwrap();
    for l in p.labels() {
        writeln!(out, "    {} [label={}];", node(side, l), quote(l)).unwrap();
    }
    if with_top {
        writeln!(out, "    {} [label=\"TOP\", shape=box];", node(side, "TOP")).unwrap();
    }
    for (a, b) in covering_pairs(p) {
        writeln!(out, "    {} -> {};", node(side, p.label(a)), node(side, p.label(b))).unwrap();
    }
    writeln!(out, "  }}").unwrap();
}

/// `s` and `r` as clusters drawn bottom to top, with `r -> s` contraction
/// edges that do not affect ranking. The TOP node appears only when used.
pub fn to_dot(m: &SpectralMap) -> String {
    let mut out = String::from("digraph spectral_map {\n  rankdir=BT;\n");
    cluster(&mut out, "s", m.s(), !m.is_unitary());
    cluster(&mut out, "r", m.r(), false);
    for q in 0..m.r().len() {
        let to = match m.target(q) {
            Target::Top => "TOP",
            Target::Prime(p) => m.s().label(p),
        };
        writeln!(
            out,
            "  {} -> {} [style=dashed, constraint=false];",
            node("r", m.r().label(q)),
            node("s", to)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    #[test]
    fn corner_embedding() {
        let s = Arc::new(Poset::antichain(&["p"]).unwrap());
        let r = Arc::new(spectra::make_poset(&["a", "b"], &[("a", "b")]).unwrap());
        let m = SpectralMap::new(s, r, vec![Target::Prime(0), Target::Top]).unwrap();
        let dot = to_dot(&m);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"s:TOP\" [label=\"TOP\", shape=box];"));
        assert!(dot.contains("\"r:a\" -> \"r:b\";"));
        assert!(dot.contains("\"r:b\" -> \"s:TOP\" [style=dashed, constraint=false];"));
        assert_eq!(dot.matches("style=dashed").count(), 2);
    }

    #[test]
    fn labels_are_escaped_and_top_omitted_when_unused() {
        let p = Arc::new(Poset::antichain(&["a\"b"]).unwrap());
        let dot = to_dot(&SpectralMap::identity(p));
        assert!(dot.contains(r#""s:a\"b" [label="a\"b"];"#));
        assert!(!dot.contains("TOP"));
    }
}
