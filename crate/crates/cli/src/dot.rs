use std::fmt::Write;

use restrix::algebra::FiniteBiunary;
use restrix::{Error, Result};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn nodes(s: &FiniteBiunary, out: &mut String) {
    for x in s.elements() {
        let _ = writeln!(out, "  {x} [label=\"{}\"];", escape(&s.label(x)));
    }
}

/// Hasse diagram of the natural partial order, smaller elements at the
/// bottom.
pub fn order(s: &FiniteBiunary) -> Result<String> {
    let covers = s.natural_order()?.covers();
    let mut out = String::from("digraph order {\n  rankdir=BT;\n  node [shape=box];\n");
    nodes(s, &mut out);
    for (a, b) in covers {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    out.push_str("}\n");
    Ok(out)
}

/// Right Cayley graph: an edge `x → xg` labelled `g` for each generator.
pub fn cayley(s: &FiniteBiunary, gens: &[usize]) -> Result<String> {
    if let Some(&g) = gens.iter().find(|&&g| g >= s.size()) {
        return Err(Error::Input(format!("generator {g} out of range")));
    }
    let mut out = String::from("digraph cayley {\n  node [shape=box];\n");
    nodes(s, &mut out);
    for x in s.elements() {
        for &g in gens {
            let _ = writeln!(out, "  {x} -> {} [label=\"{}\"];", s.mul(x, g), escape(&s.label(g)));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
