use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, UnitDisc, UnitSphere};

use super::{EuclideanShape, GsTree};
use crate::election::{Election, Vote};

fn build(m: usize, rankings: Vec<Vec<usize>>) -> Election {
    Election::from_rankings(m, rankings).expect("generators emit permutations")
}

fn uniform_ranking<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<usize> {
    let mut v: Vec<usize> = (0..m).collect();
    v.shuffle(rng);
    v
}

pub fn sample_ic<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Election {
    build(m, (0..n).map(|_| uniform_ranking(m, rng)).collect())
}

/// Pólya–Eggenberger urn with contagion `alpha`.
pub fn sample_urn<R: Rng + ?Sized>(m: usize, n: usize, alpha: f64, rng: &mut R) -> Election {
    let mut votes: Vec<Vec<usize>> = Vec::with_capacity(n);
    for k in 0..n {
        let weight = k as f64 * alpha;
        let copy = k > 0 && rng.random::<f64>() < weight / (1.0 + weight);
        if copy {
            let j = rng.random_range(0..k);
            votes.push(votes[j].clone());
        } else {
            votes.push(uniform_ranking(m, rng));
        }
    }
    build(m, votes)
}

/// Repeated insertion around the central order `0 ≻ 1 ≻ … ≻ m−1`.
pub fn sample_mallows<R: Rng + ?Sized>(m: usize, n: usize, phi: f64, rng: &mut R) -> Election {
    let votes = (0..n)
        .map(|_| {
            let mut v: Vec<usize> = Vec::with_capacity(m);
            for c in 0..m {
                // candidate c goes to index j with weight phi^(c - j)
                let weights: Vec<f64> = (0..=c).map(|j| phi.powi((c - j) as i32)).collect();
                let total: f64 = weights.iter().sum();
                let mut u = rng.random::<f64>() * total;
                let mut at = c;
                for (j, w) in weights.iter().enumerate() {
                    if u < *w {
                        at = j;
                        break;
                    }
                    u -= w;
                }
                v.insert(at, c);
            }
            v
        })
        .collect();
    build(m, votes)
}

/// Expected swap distance to the central order, divided by `m(m−1)/2`.
fn mallows_normalized_expectation(m: usize, phi: f64) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 1..=m {
        let (mut num, mut den) = (0.0, 0.0);
        for k in 0..i {
            let w = phi.powi(k as i32);
            num += k as f64 * w;
            den += w;
        }
        total += num / den;
    }
    total / (m * (m - 1) / 2) as f64
}

/// The `phi` whose expected normalized swap distance equals `norm_phi / 2`.
pub fn mallows_phi_from_norm(m: usize, norm_phi: f64) -> f64 {
    let target = norm_phi.clamp(0.0, 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mallows_normalized_expectation(m, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Uniform single-peaked votes on the axis `0, 1, …, m−1`, built from the bottom.
pub fn sample_sp_walsh<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Election {
    let votes = (0..n)
        .map(|_| {
            let (mut l, mut r) = (0usize, m);
            let mut rev = Vec::with_capacity(m);
            while l < r {
                if r - l == 1 || rng.random_bool(0.5) {
                    rev.push(l);
                    l += 1;
                } else {
                    r -= 1;
                    rev.push(r);
                }
            }
            rev.reverse();
            rev
        })
        .collect();
    build(m, votes)
}

/// Uniform peak, then grow the interval left or right with equal odds.
pub fn sample_sp_conitzer<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Election {
    let votes = (0..n)
        .map(|_| {
            let peak = rng.random_range(0..m);
            let (mut l, mut r) = (peak, peak);
            let mut v = vec![peak];
            while v.len() < m {
                let go_left = if l == 0 {
                    false
                } else if r == m - 1 {
                    true
                } else {
                    rng.random_bool(0.5)
                };
                if go_left {
                    l -= 1;
                    v.push(l);
                } else {
                    r += 1;
                    v.push(r);
                }
            }
            v
        })
        .collect();
    build(m, votes)
}

/// Single-peaked on the circle `0, 1, …, m−1`: uniform top, then extend
/// clockwise or counterclockwise.
pub fn sample_spoc<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Election {
    let votes = (0..n)
        .map(|_| {
            let top = rng.random_range(0..m);
            let mut v = vec![top];
            let (mut ccw, mut cw) = (top, top);
            while v.len() < m {
                if rng.random_bool(0.5) {
                    cw = (cw + 1) % m;
                    v.push(cw);
                } else {
                    ccw = (ccw + m - 1) % m;
                    v.push(ccw);
                }
            }
            v
        })
        .collect();
    build(m, votes)
}

/// A random maximal single-crossing domain: adjacent swaps of
/// still-ordered neighbours from the identity until the reverse.
pub fn single_crossing_path<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..m).collect();
    let mut path = vec![cur.clone()];
    loop {
        let open: Vec<usize> = (0..m.saturating_sub(1)).filter(|&k| cur[k] < cur[k + 1]).collect();
        if open.is_empty() {
            break;
        }
        let k = open[rng.random_range(0..open.len())];
        cur.swap(k, k + 1);
        path.push(cur.clone());
    }
    path
}

pub fn sample_single_crossing<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Election {
    let path = single_crossing_path(m, rng);
    let votes = (0..n).map(|_| path[rng.random_range(0..path.len())].clone()).collect();
    build(m, votes)
}

fn euclidean_point<R: Rng + ?Sized>(shape: EuclideanShape, rng: &mut R) -> Vec<f64> {
    match shape {
        EuclideanShape::Interval1D => vec![rng.random::<f64>()],
        EuclideanShape::Disc2D => UnitDisc.sample(rng).to_vec(),
        EuclideanShape::Sphere2D => UnitSphere.sample(rng).to_vec(),
        EuclideanShape::Cube3D => (0..3).map(|_| rng.random::<f64>()).collect(),
    }
}

/// Candidates and voters uniform in `shape`; voters rank by distance.
pub fn sample_euclidean<R: Rng + ?Sized>(m: usize, n: usize, shape: EuclideanShape, rng: &mut R) -> Election {
    let cands: Vec<Vec<f64>> = (0..m).map(|_| euclidean_point(shape, rng)).collect();
    let votes = (0..n)
        .map(|_| {
            let p = euclidean_point(shape, rng);
            let dist: Vec<f64> = cands
                .iter()
                .map(|c| c.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum())
                .collect();
            let mut v: Vec<usize> = (0..m).collect();
            v.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
            v
        })
        .collect();
    build(m, votes)
}

fn read_tree<F: FnMut() -> bool>(lo: usize, hi: usize, tree: GsTree, flip: &mut F, out: &mut Vec<usize>) {
    if hi - lo == 1 {
        out.push(lo);
        return;
    }
    let mid = match tree {
        GsTree::Balanced => lo + (hi - lo).div_ceil(2),
        GsTree::Caterpillar => lo + 1,
    };
    if flip() {
        read_tree(mid, hi, tree, flip, out);
        read_tree(lo, mid, tree, flip, out);
    } else {
        read_tree(lo, mid, tree, flip, out);
        read_tree(mid, hi, tree, flip, out);
    }
}

/// Leaves `0..m` of an ordered binary tree; each internal node swaps its
/// children with probability 1/2.
pub fn sample_group_separable<R: Rng + ?Sized>(m: usize, n: usize, tree: GsTree, rng: &mut R) -> Election {
    let votes = (0..n)
        .map(|_| {
            let mut v = Vec::with_capacity(m);
            read_tree(0, m, tree, &mut || rng.random_bool(0.5), &mut v);
            v
        })
        .collect();
    build(m, votes)
}

/// Every vote reachable by some combination of flips.
pub fn group_separable_votes(m: usize, tree: GsTree) -> Vec<Vote> {
    let internal = m.saturating_sub(1);
    let mut out: Vec<Vote> = (0..1u64 << internal)
        .map(|mask| {
            let mut bit = 0;
            let mut v = Vec::with_capacity(m);
            read_tree(
                0,
                m,
                tree,
                &mut || {
                    let b = mask >> bit & 1 == 1;
                    bit += 1;
                    b
                },
                &mut v,
            );
            Vote::new(v).expect("tree leaves are a permutation")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cultures::{is_single_crossing, is_single_peaked, is_spoc_vote};
    use crate::metrics::vote_swap_distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn frequencies(e: &Election) -> HashMap<Vec<usize>, f64> {
        let mut f = HashMap::new();
        for v in e.votes() {
            *f.entry(v.ranking().to_vec()).or_insert(0.0) += 1.0 / e.n() as f64;
        }
        f
    }

    #[test]
    fn ic_uniform() {
        let e = sample_ic(3, 60000, &mut rng(1));
        let f = frequencies(&e);
        assert_eq!(f.len(), 6);
        for p in f.values() {
            assert!((p - 1.0 / 6.0).abs() < 0.01, "{p}");
        }
        assert!(sample_ic(1, 5, &mut rng(2)).votes().iter().all(|v| v.ranking() == [0]));
    }

    #[test]
    fn urn_extremes() {
        let mut same = 0;
        for s in 0..10000 {
            let e = sample_urn(4, 2, 1e9, &mut rng(s));
            same += (e.votes()[0] == e.votes()[1]) as usize;
        }
        assert!(same as f64 / 10000.0 >= 0.999);
        let f = frequencies(&sample_urn(3, 60000, 0.0, &mut rng(3)));
        for p in f.values() {
            assert!((p - 1.0 / 6.0).abs() < 0.01);
        }
    }

    #[test]
    fn mallows_dispersion() {
        let e = sample_mallows(5, 20, 0.0, &mut rng(4));
        assert!(e.votes().iter().all(|v| v.ranking() == [0, 1, 2, 3, 4]));
        let f = frequencies(&sample_mallows(3, 60000, 1.0, &mut rng(5)));
        assert_eq!(f.len(), 6);
        for p in f.values() {
            assert!((p - 1.0 / 6.0).abs() < 0.01);
        }
        let id = Vote::identity(6);
        let mean = |phi: f64| {
            let e = sample_mallows(6, 4000, phi, &mut rng(6));
            e.votes().iter().map(|v| vote_swap_distance(v, &id).unwrap() as f64).sum::<f64>() / 4000.0
        };
        let (a, b, c) = (mean(0.25), mean(0.5), mean(0.75));
        assert!(a < b && b < c);
    }

    #[test]
    fn mallows_normalization() {
        assert!(mallows_phi_from_norm(5, 0.0) < 1e-9);
        assert!((mallows_phi_from_norm(5, 1.0) - 1.0).abs() < 1e-9);
        for norm in [0.1, 0.4, 0.8] {
            let phi = mallows_phi_from_norm(6, norm);
            assert!((mallows_normalized_expectation(6, phi) - norm / 2.0).abs() < 1e-9);
        }
        let phi = mallows_phi_from_norm(5, 0.5);
        let e = sample_mallows(5, 20000, phi, &mut rng(7));
        let id = Vote::identity(5);
        let mean = e.votes().iter().map(|v| vote_swap_distance(v, &id).unwrap() as f64).sum::<f64>() / 20000.0;
        assert!((mean / 10.0 - 0.25).abs() < 0.01, "{mean}");
    }

    #[test]
    fn walsh_uniform_and_single_peaked() {
        let e = sample_sp_walsh(3, 40000, &mut rng(8));
        let f = frequencies(&e);
        assert_eq!(f.len(), 4);
        for p in f.values() {
            assert!((p - 0.25).abs() < 0.02);
        }
        let e = sample_sp_walsh(7, 200, &mut rng(9));
        assert!(is_single_peaked(&e, &(0..7).collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn conitzer_peaks() {
        let e = sample_sp_conitzer(3, 30000, &mut rng(10));
        let mut peaks = [0.0f64; 3];
        for v in e.votes() {
            peaks[v.at(0)] += 1.0 / 30000.0;
        }
        for p in peaks {
            assert!((p - 1.0 / 3.0).abs() < 0.02);
        }
        let e = sample_sp_conitzer(8, 200, &mut rng(11));
        assert!(is_single_peaked(&e, &(0..8).collect::<Vec<_>>()).unwrap());
    }

    #[test]
    fn spoc_structure() {
        let circle: Vec<usize> = (0..7).collect();
        let e = sample_spoc(7, 300, &mut rng(12));
        assert!(e.votes().iter().all(|v| is_spoc_vote(v, &circle).unwrap()));
        let f = frequencies(&sample_spoc(3, 60000, &mut rng(13)));
        assert_eq!(f.len(), 6);
        for p in f.values() {
            assert!((p - 1.0 / 6.0).abs() < 0.01);
        }
    }

    #[test]
    fn single_crossing_domain() {
        let path = single_crossing_path(6, &mut rng(14));
        assert_eq!(path.len(), 6 * 5 / 2 + 1);
        assert_eq!(path[0], (0..6).collect::<Vec<_>>());
        assert_eq!(path[path.len() - 1], (0..6).rev().collect::<Vec<_>>());
        let e = sample_single_crossing(6, 50, &mut rng(15));
        assert!(is_single_crossing(&e));
    }

    #[test]
    fn euclidean_structure() {
        let mut r = rng(16);
        let e = sample_euclidean(6, 100, EuclideanShape::Interval1D, &mut r);
        // recover the candidate axis by replaying the same stream
        let mut replay = rng(16);
        let coords: Vec<f64> = (0..6).map(|_| replay.random::<f64>()).collect();
        let mut axis: Vec<usize> = (0..6).collect();
        axis.sort_by(|&a, &b| coords[a].total_cmp(&coords[b]));
        assert!(is_single_peaked(&e, &axis).unwrap());
        for shape in [EuclideanShape::Disc2D, EuclideanShape::Sphere2D, EuclideanShape::Cube3D] {
            assert_eq!(sample_euclidean(5, 10, shape, &mut r).n(), 10);
        }
    }

    #[test]
    fn group_separable_domains() {
        let dom = group_separable_votes(3, GsTree::Caterpillar);
        assert_eq!(dom.len(), 4);
        let e = sample_group_separable(3, 40000, GsTree::Caterpillar, &mut rng(17));
        let f = frequencies(&e);
        assert_eq!(f.len(), 4);
        for (v, p) in &f {
            assert!(dom.iter().any(|d| d.ranking() == v.as_slice()));
            assert!((p - 0.25).abs() < 0.02);
        }
        for tree in [GsTree::Balanced, GsTree::Caterpillar] {
            let dom = group_separable_votes(4, tree);
            let e = sample_group_separable(4, 500, tree, &mut rng(18));
            assert!(e.votes().iter().all(|v| dom.contains(v)));
            let two = sample_group_separable(2, 50, tree, &mut rng(19));
            assert!(two.votes().iter().all(|v| v.ranking() == [0, 1] || v.ranking() == [1, 0]));
        }
    }
}
