//! Slow, obviously-correct reference implementations.

use std::collections::HashMap;

use graph_stress::DistanceMatrix;

/// Hop distances by Floyd-Warshall; `None` for unreachable pairs.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<Option<u32>>> {
    let mut dist = vec![vec![None; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for &(u, v) in edges {
        dist[u][v] = Some(1);
        dist[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (dist[i][k], dist[k][j]) {
                    if dist[i][j].is_none_or(|c| a + b < c) {
                        dist[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    dist
}

/// True when every entry of `d` equals the reachable hop count in `hops`.
pub fn matches_hops(d: &DistanceMatrix, hops: &[Vec<Option<u32>>]) -> bool {
    hops.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, h)| h.map(f64::from) == Some(d.get(i, j)))
    })
}

/// Adjacency as neighbour bitmasks, at most 16 vertices.
pub type Adjacency = Vec<u16>;

pub fn edges_of(adj: &Adjacency) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut out = Vec::new();
    for (u, &row) in adj.iter().enumerate() {
        for v in u + 1..n {
            if row >> v & 1 == 1 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Colour refinement: isomorphism-invariant vertex colours.
fn refine(adj: &Adjacency) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    for _ in 0..n {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| colors[u])
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| distinct.binary_search(k).unwrap())
            .collect();
        let stable = {
            let mut a = colors.clone();
            a.sort_unstable();
            a.dedup();
            a.len() == distinct.len()
        };
        colors = next;
        if stable {
            break;
        }
    }
    colors
}

/// Canonical code: the largest upper-triangle bit string over all vertex
/// orders that list colour classes in colour order.
pub fn canonical_code(adj: &Adjacency) -> u128 {
    let n = adj.len();
    let colors = refine(adj);
    let mut slots: Vec<usize> = colors.clone();
    slots.sort_unstable();
    let mut best = 0u128;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn rec(
        adj: &Adjacency,
        colors: &[usize],
        slots: &[usize],
        order: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut u128,
    ) {
        let n = adj.len();
        if order.len() == n {
            let mut code = 0u128;
            for a in 0..n {
                for b in a + 1..n {
                    code = code << 1 | u128::from(adj[order[a]] >> order[b] & 1);
                }
            }
            *best = (*best).max(code);
            return;
        }
        let want = slots[order.len()];
        for v in 0..n {
            if !used[v] && colors[v] == want {
                used[v] = true;
                order.push(v);
                rec(adj, colors, slots, order, used, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    rec(adj, &colors, &slots, &mut order, &mut used, &mut best);
    best
}

/// One representative of every isomorphism class of graphs on `0..=max_n`
/// vertices, grouped by vertex count.
pub fn graphs_up_to_isomorphism(max_n: usize) -> Vec<Vec<Adjacency>> {
    let mut levels: Vec<Vec<Adjacency>> = vec![vec![vec![]]];
    for n in 1..=max_n {
        let mut seen: HashMap<u128, Adjacency> = HashMap::new();
        for g in &levels[n - 1] {
            for mask in 0u16..(1 << (n - 1)) {
                let mut adj = g.clone();
                for (u, row) in adj.iter_mut().enumerate() {
                    if mask >> u & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                adj.push(mask);
                seen.entry(canonical_code(&adj)).or_insert(adj);
            }
        }
        let mut reps: Vec<(u128, Adjacency)> = seen.into_iter().collect();
        reps.sort();
        levels.push(reps.into_iter().map(|(_, a)| a).collect());
    }
    levels
}

/// Least-squares non-decreasing fit by trying every split into contiguous
/// blocks, each fitted by its mean.
pub fn brute_isotonic(ys: &[f64]) -> Vec<f64> {
    let n = ys.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for cuts in 0u32..(1 << (n - 1)) {
        let mut fit = Vec::with_capacity(n);
        let mut start = 0;
        for end in 1..=n {
            if end == n || cuts >> (end - 1) & 1 == 1 {
                let mean = ys[start..end].iter().sum::<f64>() / (end - start) as f64;
                fit.extend(std::iter::repeat_n(mean, end - start));
                start = end;
            }
        }
        if fit.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let sse: f64 = fit.iter().zip(ys).map(|(f, y)| (f - y) * (f - y)).sum();
        if best.as_ref().is_none_or(|(b, _)| sse < *b) {
            best = Some((sse, fit));
        }
    }
    best.unwrap().1
}

/// Distance ratio stress straight from coordinates and a square hop matrix.
pub fn naive_drs(pos: &[[f64; 2]], hops: &[Vec<Option<u32>>]) -> f64 {
    let n = pos.len();
    let e = |i: usize, j: usize| {
        ((pos[i][0] - pos[j][0]).powi(2) + (pos[i][1] - pos[j][1]).powi(2)).sqrt()
    };
    let d = |i: usize, j: usize| f64::from(hops[i][j].unwrap());
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    let r = e(i, j) / e(k, l) - d(i, j) / d(k, l);
                    total += r * r;
                }
            }
        }
    }
    total
}
