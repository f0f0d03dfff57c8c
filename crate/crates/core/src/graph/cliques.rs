use super::{bits, CommutationGraph};

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // Pivot on the vertex of P ∪ X with most neighbors in P.
    let pivot = bits(p | x)
        .max_by(|&a, &b| {
            (adj[a] & p)
                .count_ones()
                .cmp(&(adj[b] & p).count_ones())
                .then(b.cmp(&a))
        })
        .expect("P is non-empty");
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// All maximal cliques of the subgraph induced by `mask`, sorted by their
/// vertex lists.
pub(crate) fn maximal_cliques_in(adj: &[u64], mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if mask == 0 {
        return out;
    }
    let local: Vec<u64> = adj.iter().map(|&a| a & mask).collect();
    bron_kerbosch(&local, 0, mask, 0, &mut out);
    out.sort_by_key(|&m| bits(m).collect::<Vec<_>>());
    out
}

/// All maximal cliques as sorted vertex lists, in lexicographic order.
pub fn maximal_cliques(g: &CommutationGraph) -> Vec<Vec<usize>> {
    maximal_cliques_in(g.adjacency(), g.all())
        .into_iter()
        .map(|m| bits(m).collect())
        .collect()
}
