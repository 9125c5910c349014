//! Maximum matching in general graphs (Edmonds' blossom algorithm).
//!
//! Kekulization reduces to finding a perfect matching on the subgraph of
//! aromatic atoms that must host a ring double bond. Aromatic systems are
//! not bipartite in general (azulene fuses a 5- and a 7-ring), so simple
//! augmenting paths are not enough and odd cycles must be contracted.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Maximum matching over `n` vertices; `edges` are undirected pairs.
/// Returns the mate of each vertex, `None` for unmatched vertices.
///
/// O(V^3); fine for molecular graphs.
pub fn maximum_matching(n: usize, edges: &[(usize, usize)]) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }

    let mut mate = vec![NONE; n];
    for u in 0..n {
        if mate[u] != NONE {
            continue;
        }
        for &v in &adj[u] {
            if mate[v] == NONE {
                mate[u] = v;
                mate[v] = u;
                break;
            }
        }
    }

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(end) = find_augmenting_path(&adj, &mut mate, root) {
            // flip matched/unmatched edges back along the path
            let mut v = end.0;
            let p = end.1;
            while v != NONE {
                let pv = p[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }

    mate.iter()
        .map(|&m| if m == NONE { None } else { Some(m) })
        .collect()
}

type PathEnd = (usize, Vec<usize>);

fn find_augmenting_path(
    adj: &[Vec<usize>],
    mate: &mut [usize],
    root: usize,
) -> Option<PathEnd> {
    let n = adj.len();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;

    let mut queue = VecDeque::new();
    queue.push_back(root);

    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // odd cycle: contract the blossom down to its base
                let cur_base = lowest_common_base(&base, &parent, mate, v, to);
                let mut in_blossom = vec![false; n];
                mark_blossom_path(&mut in_blossom, &base, &mut parent, mate, v, cur_base, to);
                mark_blossom_path(&mut in_blossom, &base, &mut parent, mate, to, cur_base, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    return Some((to, parent));
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    None
}

fn lowest_common_base(
    base: &[usize],
    parent: &[usize],
    mate: &[usize],
    mut a: usize,
    mut b: usize,
) -> usize {
    let mut seen = vec![false; base.len()];
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_blossom_path(
    in_blossom: &mut [bool],
    base: &[usize],
    parent: &mut [usize],
    mate: &[usize],
    mut v: usize,
    blossom_base: usize,
    mut child: usize,
) {
    while base[v] != blossom_base {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}
