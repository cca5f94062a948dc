//! Maximum cardinality bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Size of a maximum matching between `adj.len()` left vertices and
/// `n_right` right vertices, where `adj[l]` lists the neighbours of `l`.
pub fn max_matching_size(adj: &[Vec<usize>], n_right: usize) -> usize {
    let n_left = adj.len();
    let mut pair_left = vec![NIL; n_left];
    let mut pair_right = vec![NIL; n_right];
    let mut dist = vec![0usize; n_left];
    let mut size = 0;

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if pair_left[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NIL;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match pair_right[r] {
                    NIL => found = true,
                    l2 if dist[l2] == NIL => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return size;
        }
        for l in 0..n_left {
            if pair_left[l] == NIL && augment(l, adj, &mut pair_left, &mut pair_right, &mut dist) {
                size += 1;
            }
        }
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    pair_left: &mut [usize],
    pair_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        let next = pair_right[r];
        if next == NIL || (dist[next] == dist[l] + 1 && augment(next, adj, pair_left, pair_right, dist)) {
            pair_left[l] = r;
            pair_right[r] = l;
            return true;
        }
    }
    dist[l] = NIL;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::strategy::Strategy;

    fn brute(adj: &[Vec<usize>], n_right: usize) -> usize {
        fn go(l: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = go(l + 1, adj, used);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(l + 1, adj, used));
                    used[r] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; n_right])
    }

    #[test]
    fn small_cases() {
        assert_eq!(max_matching_size(&[], 0), 0);
        assert_eq!(max_matching_size(&[vec![0, 1], vec![0]], 2), 2);
        assert_eq!(max_matching_size(&[vec![0], vec![0], vec![0]], 1), 1);
        assert_eq!(max_matching_size(&[vec![], vec![1]], 3), 1);
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_exhaustive_search(
            adj in proptest::collection::vec(
                proptest::collection::btree_set(0usize..6, 0..4).prop_map(|s| s.into_iter().collect::<Vec<_>>()),
                0..7,
            )
        ) {
            proptest::prop_assert_eq!(max_matching_size(&adj, 6), brute(&adj, 6));
        }
    }
}
