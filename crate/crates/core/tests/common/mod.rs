//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BinaryHeap;

use cicdwoa::GridMap;

/// Mid-ranks (1-based) of `values`, computed by brute force counting.
pub fn naive_mid_ranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let below = values.iter().filter(|&&w| w < v).count() as f64;
            let equal = values.iter().filter(|&&w| w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Null distribution of the rank sum of the first sample: every way of
/// choosing `n1` of the pooled ranks is equally likely. Returns all sums.
pub fn rank_sum_null(ranks: &[f64], n1: usize) -> Vec<f64> {
    fn rec(ranks: &[f64], start: usize, left: usize, acc: f64, out: &mut Vec<f64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=ranks.len() - left {
            rec(ranks, i + 1, left - 1, acc + ranks[i], out);
        }
    }
    let mut out = Vec::new();
    rec(ranks, 0, n1, 0.0, &mut out);
    out
}

/// Two-sided exact rank-sum p-value: the share of assignments whose rank
/// sum is at least as far from its mean as the observed one.
pub fn exact_rank_sum_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = naive_mid_ranks(&pooled);
    let observed: f64 = ranks[..a.len()].iter().sum();
    let null = rank_sum_null(&ranks, a.len());
    let mu = a.len() as f64 * (pooled.len() as f64 + 1.0) / 2.0;
    let dev = (observed - mu).abs();
    let extreme = null
        .iter()
        .filter(|&&w| (w - mu).abs() >= dev - 1e-9)
        .count();
    extreme as f64 / null.len() as f64
}

fn segment_hits_box(a: [f64; 2], b: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> bool {
    // Liang-Barsky clip against the open box.
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let d = [b[0] - a[0], b[1] - a[1]];
    for k in 0..2 {
        for (p, q) in [(-d[k], a[k] - lo[k]), (d[k], hi[k] - a[k])] {
            if p.abs() < 1e-15 {
                if q <= 0.0 {
                    return false;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
    }
    t1 - t0 > 1e-9
}

/// Exact straight-segment feasibility against open blocked squares and the
/// closed map rectangle.
pub fn exact_segment_free(a: [f64; 2], b: [f64; 2], map: &GridMap) -> bool {
    let (w, h) = (map.width() as f64 + 0.5, map.height() as f64 + 0.5);
    for p in [a, b] {
        if !(p[0] >= 0.5 && p[0] <= w && p[1] >= 0.5 && p[1] <= h) {
            return false;
        }
    }
    map.blocked_cells().iter().all(|&[cx, cy]| {
        let (cx, cy) = (cx as f64, cy as f64);
        !segment_hits_box(a, b, [cx - 0.5, cy - 0.5], [cx + 0.5, cy + 0.5])
    })
}

#[derive(PartialEq)]
struct Item(f64, usize);
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Item {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.total_cmp(&self.0)
    }
}

/// Shortest collision-free start-goal length through blocked-cell corners
/// (visibility graph plus Dijkstra). Returns the length and the vertices.
pub fn visibility_shortest_path(map: &GridMap) -> (f64, Vec<[f64; 2]>) {
    let mut nodes = vec![map.start(), map.goal()];
    for &[cx, cy] in map.blocked_cells() {
        for dx in [-0.5, 0.5] {
            for dy in [-0.5, 0.5] {
                let p = [cx as f64 + dx, cy as f64 + dy];
                if !nodes.contains(&p) {
                    nodes.push(p);
                }
            }
        }
    }
    let n = nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[0] = 0.0;
    heap.push(Item(0.0, 0));
    while let Some(Item(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == 1 {
            break;
        }
        for v in 0..n {
            if done[v] || !exact_segment_free(nodes[u], nodes[v], map) {
                continue;
            }
            let nd = d + (nodes[v][0] - nodes[u][0]).hypot(nodes[v][1] - nodes[u][1]);
            if nd < dist[v] {
                dist[v] = nd;
                prev[v] = u;
                heap.push(Item(nd, v));
            }
        }
    }
    let mut path = vec![nodes[1]];
    let mut cur = 1;
    while prev[cur] != usize::MAX {
        cur = prev[cur];
        path.push(nodes[cur]);
    }
    path.reverse();
    (dist[1], path)
}
