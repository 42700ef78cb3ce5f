//! Graphviz export of quiescent nets.

use std::collections::HashMap;
use std::fmt::Write as _;

/// Structural view of one agent, used for rendering and debugging.
pub enum NodeView<'a> {
    Symbol {
        label: &'static str,
        attrs: Vec<i64>,
        aux: Vec<&'a dyn Node>,
    },
    NamePos {
        cell: usize,
    },
    NameNeg {
        cell: usize,
    },
}

/// Anything that can be drawn as an agent.
pub trait Node {
    fn view(&self) -> NodeView<'_>;
}

/// Builder for a DOT snapshot. Node ids follow traversal order and name
/// cells are numbered by first appearance, so identical nets always render
/// to identical text.
#[derive(Default)]
pub struct Dot<'a> {
    pairs: Vec<(&'a dyn Node, &'a dyn Node)>,
    roots: Vec<&'a dyn Node>,
}

impl<'a> Dot<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds two agents connected principal to principal.
    pub fn pair(mut self, a: &'a dyn Node, b: &'a dyn Node) -> Self {
        self.pairs.push((a, b));
        self
    }

    /// Adds a free-standing agent (typically an interface name).
    pub fn root(mut self, a: &'a dyn Node) -> Self {
        self.roots.push(a);
        self
    }

    pub fn render(&self) -> String {
        let mut r = Renderer::default();
        for &(a, b) in &self.pairs {
            let ia = r.visit(a);
            let ib = r.visit(b);
            r.edges.push(format!(
                "  n{ia} -> n{ib} [dir=both, arrowhead=normal, arrowtail=normal];"
            ));
        }
        for &a in &self.roots {
            r.visit(a);
        }
        r.finish()
    }
}

/// Renders a list of free-standing agents.
pub fn to_dot(roots: &[&dyn Node]) -> String {
    roots.iter().fold(Dot::new(), |d, r| d.root(*r)).render()
}

#[derive(Default)]
struct Renderer {
    next: usize,
    nodes: Vec<String>,
    edges: Vec<String>,
    /// cell id -> (ordinal, pos node, neg node)
    cells: HashMap<usize, (usize, Option<usize>, Option<usize>)>,
}

impl Renderer {
    fn visit(&mut self, root: &dyn Node) -> usize {
        let root_id = self.next;
        // (node, parent id) in preorder
        let mut stack: Vec<(&dyn Node, Option<usize>)> = vec![(root, None)];
        while let Some((node, parent)) = stack.pop() {
            let id = self.next;
            self.next += 1;
            if let Some(p) = parent {
                self.edges
                    .push(format!("  n{p} -> n{id} [arrowhead=normal];"));
            }
            match node.view() {
                NodeView::Symbol { label, attrs, aux } => {
                    let text = if attrs.is_empty() {
                        label.to_owned()
                    } else {
                        let attrs: Vec<String> = attrs.iter().map(i64::to_string).collect();
                        format!("{label}[{}]", attrs.join(","))
                    };
                    self.nodes.push(format!("  n{id} [label=\"{text}\"];"));
                    for child in aux.into_iter().rev() {
                        stack.push((child, Some(id)));
                    }
                }
                NodeView::NamePos { cell } => {
                    self.nodes
                        .push(format!("  n{id} [label=\"NamePos\", shape=plaintext];"));
                    self.cell(cell).1 = Some(id);
                }
                NodeView::NameNeg { cell } => {
                    self.nodes
                        .push(format!("  n{id} [label=\"NameNeg\", shape=plaintext];"));
                    self.cell(cell).2 = Some(id);
                }
            }
        }
        root_id
    }

    fn cell(&mut self, cell: usize) -> &mut (usize, Option<usize>, Option<usize>) {
        let ordinal = self.cells.len();
        self.cells.entry(cell).or_insert((ordinal, None, None))
    }

    fn finish(mut self) -> String {
        let mut wires: Vec<_> = self.cells.into_values().collect();
        wires.sort_unstable_by_key(|w| w.0);
        for (_, pos, neg) in wires {
            if let (Some(p), Some(n)) = (pos, neg) {
                self.edges
                    .push(format!("  n{p} -> n{n} [style=dashed, dir=none];"));
            }
        }
        let mut out = String::from("digraph net {\n  node [shape=circle];\n");
        for line in self.nodes.iter().chain(&self.edges) {
            let _ = writeln!(out, "{line}");
        }
        out.push_str("}\n");
        out
    }
}
