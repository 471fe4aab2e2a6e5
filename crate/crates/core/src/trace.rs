//! Audit trail for derived constants.

use crate::interval::Interval;

/// Default bound on the relative width of every traced value.
pub const TRACE_REL_TOL: f64 = 1e-30;

#[derive(Clone, Debug, PartialEq)]
pub struct TraceNode {
    pub name: String,
    pub value: Interval,
    /// Closed form the value was evaluated from, in terms of other node names.
    pub formula: String,
    /// Set when a finite evaluation drops an asymptotic `1 + o(1)` factor.
    pub asymptotic: bool,
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    pub fn new(name: &str, value: Interval, formula: &str) -> Self {
        TraceNode {
            name: name.to_string(),
            value,
            formula: formula.to_string(),
            asymptotic: false,
            children: Vec::new(),
        }
    }

    pub fn asymptotic(mut self) -> Self {
        self.asymptotic = true;
        self
    }

    pub fn child(mut self, node: TraceNode) -> Self {
        self.children.push(node);
        self
    }
}

/// A boolean side condition checked during a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub name: String,
    pub condition: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DerivationTrace {
    pub nodes: Vec<TraceNode>,
    pub checks: Vec<TraceCheck>,
}

impl DerivationTrace {
    pub fn push(&mut self, node: TraceNode) {
        self.nodes.push(node);
    }

    pub fn check(&mut self, name: &str, condition: &str, passed: bool) {
        self.checks.push(TraceCheck { name: name.into(), condition: condition.into(), passed });
    }

    /// Depth-first walk over every node, paired with its depth.
    pub fn walk(&self) -> Vec<(usize, &TraceNode)> {
        fn go<'a>(n: &'a TraceNode, depth: usize, out: &mut Vec<(usize, &'a TraceNode)>) {
            out.push((depth, n));
            for c in &n.children {
                go(c, depth + 1, out);
            }
        }
        let mut out = Vec::new();
        for n in &self.nodes {
            go(n, 0, &mut out);
        }
        out
    }

    pub fn find(&self, name: &str) -> Option<&TraceNode> {
        self.walk().into_iter().map(|(_, n)| n).find(|n| n.name == name)
    }

    pub fn count(&self, name: &str) -> usize {
        self.walk().iter().filter(|(_, n)| n.name == name).count()
    }

    /// Largest relative width among nonzero-valued nodes.
    pub fn max_rel_width(&self) -> f64 {
        self.walk()
            .iter()
            .map(|(_, n)| n.value.rel_width())
            .filter(|w| w.is_finite())
            .fold(0.0, f64::max)
    }

    pub fn widths_within(&self, tol: f64) -> bool {
        self.walk().iter().all(|(_, n)| n.value.rel_width() < tol || n.value.is_point())
    }
}
