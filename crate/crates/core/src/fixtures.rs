//! Built-in commutation graphs.
//!
//! Two-pentagon graphs label the first pentagon `A1..A5` and the second
//! `A'1..A'5`; pentagon and cross edges are exclusive.

use crate::bell::BellScenario;
use crate::graph::CommutationGraph;

pub const NAMES: [&str; 5] = [
    "pentagon",
    "fig1",
    "fig3b",
    "bell-chsh-3party",
    "two-pentagons-complete",
];

/// Cross edges of the minimal two-pentagon monogamy configuration, as
/// `(i, j)` meaning `A{i+1}`-`A'{j+1}`: triangles `{A1, A'1, A'2}` and
/// `{A4, A5, A'5}`.
pub const FIG1_CROSS_EDGES: [(usize, usize); 4] = [(0, 0), (0, 1), (3, 4), (4, 4)];

pub fn by_name(name: &str) -> Option<CommutationGraph> {
    match name {
        "pentagon" => Some(pentagon()),
        "fig1" => Some(fig1()),
        "fig3b" => Some(fig3b()),
        "bell-chsh-3party" => Some(bell_chsh_3party()),
        "two-pentagons-complete" => Some(two_pentagons_complete()),
        _ => None,
    }
}

pub fn primed(i: usize) -> String {
    format!("A'{}", i + 1)
}

pub fn unprimed(i: usize) -> String {
    format!("A{}", i + 1)
}

/// The KCBS pentagon `A1..A5` with exclusive cyclic edges.
pub fn pentagon() -> CommutationGraph {
    let labels: Vec<String> = (0..5).map(unprimed).collect();
    let mut g = CommutationGraph::with_vertices(&labels).expect("fixture");
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5, true).expect("fixture");
    }
    g
}

/// Two disjoint exclusive pentagons plus the given exclusive cross edges.
pub fn two_pentagons(cross: &[(usize, usize)]) -> CommutationGraph {
    two_pentagons_with(cross, true)
}

/// As [`two_pentagons`], choosing the exclusivity of the cross edges.
pub fn two_pentagons_with(cross: &[(usize, usize)], exclusive: bool) -> CommutationGraph {
    let labels: Vec<String> = (0..5).map(unprimed).chain((0..5).map(primed)).collect();
    let mut g = CommutationGraph::with_vertices(&labels).expect("fixture");
    for offset in [0, 5] {
        for i in 0..5 {
            g.add_edge(offset + i, offset + (i + 1) % 5, true).expect("fixture");
        }
    }
    for &(i, j) in cross {
        g.add_edge(i, 5 + j, exclusive).expect("cross edge");
    }
    g
}

pub fn fig1() -> CommutationGraph {
    two_pentagons(&FIG1_CROSS_EDGES)
}

/// Orthogonality pattern of the explicit 4D projector family: `A'1` is
/// orthogonal to every `Ai`, and `A1` to every `A'j`.
pub fn fig3b() -> CommutationGraph {
    let mut cross: Vec<(usize, usize)> = (0..5).map(|i| (i, 0)).collect();
    cross.extend((1..5).map(|j| (0, j)));
    two_pentagons(&cross)
}

/// Every `Ai` compatible and exclusive with every `A'j`.
pub fn two_pentagons_complete() -> CommutationGraph {
    let cross: Vec<(usize, usize)> = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).collect();
    two_pentagons(&cross)
}

/// Three parties with two settings each; non-exclusive compatibility edges.
pub fn bell_chsh_3party() -> CommutationGraph {
    BellScenario::new(&["A", "B", "C"], 2).graph()
}

pub fn complete(n: usize) -> CommutationGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = CommutationGraph::with_vertices(&labels).expect("fixture");
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v, true).expect("fixture");
        }
    }
    g
}

pub fn cycle(n: usize) -> CommutationGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = CommutationGraph::with_vertices(&labels).expect("fixture");
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, true).expect("fixture");
    }
    g
}
