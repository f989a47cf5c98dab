use diskpack_core::geometry::{
    overlap_status, phi0, oracle::s_distance_oracle, Disk, OverlapStatus, ToleranceConfig, UnitVec3,
    Vec3,
};
use diskpack_core::io::gen_random_cap;
use diskpack_core::packing::AxisClass;
use diskpack_core::par::Execution;
use diskpack_core::stabbing::matching::{max_weight_matching, min_weight_perfect_matching};
use diskpack_core::stabbing::{
    build_distance_matrix, build_distance_matrix_with, christofides_path, held_karp_path, mst,
    realize_stabbing, DistanceMatrix, Ordering,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tilted(deg: f64) -> Disk {
    let a = deg.to_radians();
    Disk::new(Vec3::new(a.sin(), 0.0, a.cos())).unwrap()
}

fn cap_matrix(n: usize, seed: u64) -> (Vec<Disk>, DistanceMatrix) {
    let inst = gen_random_cap(n, AxisClass::Z, phi0(), seed).unwrap();
    let m = build_distance_matrix(&inst.disks, UnitVec3::axis(2), &ToleranceConfig::default()).unwrap();
    (inst.disks, m)
}

#[test]
fn matrix_matches_oracle_for_tilt_family() {
    let disks = [tilted(0.0), tilted(30.0), tilted(60.0)];
    let z = UnitVec3::axis(2);
    let m = build_distance_matrix(&disks, z, &ToleranceConfig::default()).unwrap();
    for i in 0..3 {
        for j in i + 1..3 {
            let o = s_distance_oracle(&disks[i], &disks[j], z, 4096);
            assert!((m.get(i, j) - o).abs() < 1e-6);
        }
    }
}

#[test]
fn matrix_parallel_equals_sequential() {
    let inst = gen_random_cap(60, AxisClass::Z, phi0(), 5).unwrap();
    let tol = ToleranceConfig::default();
    let z = UnitVec3::axis(2);
    let a = build_distance_matrix_with(&inst.disks, z, &tol, Execution::Sequential).unwrap();
    let b = build_distance_matrix_with(&inst.disks, z, &tol, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn matrix_is_a_metric() {
    let (_, m) = cap_matrix(25, 8);
    for i in 0..25 {
        for j in 0..25 {
            assert!((m.get(i, j) - m.get(j, i)).abs() <= 1e-12);
            for k in 0..25 {
                assert!(m.get(i, k) <= m.get(i, j) + m.get(j, k) + 1e-9);
            }
        }
    }
}

#[test]
fn mst_beats_random_spanning_trees() {
    let (_, m) = cap_matrix(5, 17);
    let best = mst(&m).weight;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        // Random tree: attach each vertex of a shuffled order to an earlier one.
        let mut order: Vec<usize> = (0..5).collect();
        order.shuffle(&mut rng);
        let w: f64 = (1..5)
            .map(|k| m.get(order[k], order[rng.random_range(0..k)]))
            .sum();
        assert!(best <= w + 1e-12);
    }
}

/// Minimum perfect matching cost by subset dynamic programming.
fn brute_matching(n: usize, cost: &dyn Fn(usize, usize) -> f64) -> f64 {
    let full = (1usize << n) - 1;
    let mut best = vec![f64::INFINITY; full + 1];
    best[0] = 0.0;
    for mask in 0..=full {
        if best[mask].is_infinite() || mask == full {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        for j in i + 1..n {
            if mask & (1 << j) == 0 {
                let next = mask | 1 << i | 1 << j;
                best[next] = best[next].min(best[mask] + cost(i, j));
            }
        }
    }
    best[full]
}

#[test]
fn matching_is_optimal_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for trial in 0..300 {
        let n = 2 * rng.random_range(1..=7);
        let w: Vec<f64> = (0..n * n).map(|_| rng.random_range(0.0..10.0)).collect();
        let cost = |i: usize, j: usize| w[i.min(j) * n + i.max(j)];
        let mate = min_weight_perfect_matching(n, |i, j| Some(cost(i, j))).unwrap();
        let mut total = 0.0;
        for (i, &j) in mate.iter().enumerate() {
            assert_eq!(mate[j], i, "trial {trial}");
            if i < j {
                total += cost(i, j);
            }
        }
        let best = brute_matching(n, &cost);
        assert!((total - best).abs() < 1e-9, "trial {trial}: {total} vs {best}");
    }
}

#[test]
fn max_weight_matching_on_integer_graphs() {
    // Random sparse graphs, maximum weight (no cardinality constraint)
    // compared with exhaustive search over edge subsets.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.random_range(2..=8);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(0.5) {
                    edges.push((i, j, rng.random_range(-5..20i64)));
                }
            }
        }
        let mate = max_weight_matching(n, &edges, false);
        let got: i64 = edges
            .iter()
            .filter(|&&(i, j, _)| mate[i] == Some(j))
            .map(|e| e.2)
            .sum();
        let mut best = 0;
        for subset in 0u32..(1 << edges.len()) {
            let mut used = 0u32;
            let mut w = 0;
            let mut ok = true;
            for (k, &(i, j, wt)) in edges.iter().enumerate() {
                if subset >> k & 1 == 1 {
                    if used >> i & 1 == 1 || used >> j & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used |= 1 << i | 1 << j;
                    w += wt;
                }
            }
            if ok {
                best = best.max(w);
            }
        }
        assert_eq!(got, best);
    }
}

#[test]
fn christofides_within_three_halves() {
    for seed in 0..20 {
        let (_, m) = cap_matrix(10, 100 + seed);
        let c = christofides_path(&m).unwrap();
        let h = held_karp_path(&m, 15).unwrap();
        let (lc, lh) = (m.path_length(c.as_slice()), m.path_length(h.as_slice()));
        assert!(lc <= 1.5 * lh + 1e-12);
        assert!(lc >= mst(&m).weight - 1e-12);
    }
}

#[test]
fn three_vertex_paths_are_optimal() {
    let (_, m) = cap_matrix(3, 4);
    let heaviest = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| m.get(i, j))
        .fold(0.0, f64::max);
    let total = m.get(0, 1) + m.get(0, 2) + m.get(1, 2);
    let c = christofides_path(&m).unwrap();
    assert!((m.path_length(c.as_slice()) - (total - heaviest)).abs() < 1e-12);
}

#[test]
fn held_karp_beats_random_permutations() {
    let (_, m) = cap_matrix(9, 55);
    let h = m.path_length(held_karp_path(&m, 15).unwrap().as_slice());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut order: Vec<usize> = (0..9).collect();
    for _ in 0..1000 {
        order.shuffle(&mut rng);
        assert!(h <= m.path_length(&order) + 1e-12);
    }
}

#[test]
fn reversal_preserves_length() {
    let (disks, m) = cap_matrix(12, 6);
    let o = christofides_path(&m).unwrap();
    let tol = ToleranceConfig::default();
    let z = UnitVec3::axis(2);
    let (a, _) = realize_stabbing(&disks, &o, z, &tol).unwrap();
    let (b, _) = realize_stabbing(&disks, &o.reversed(), z, &tol).unwrap();
    assert!((a.length - b.length).abs() < 1e-12);
}

#[test]
fn realized_stabbing_has_no_overlaps() {
    let (disks, m) = cap_matrix(10, 31);
    let tol = ToleranceConfig::default();
    let o = held_karp_path(&m, 15).unwrap();
    let (st, placed) = realize_stabbing(&disks, &o, UnitVec3::axis(2), &tol).unwrap();
    assert_eq!(st.offsets[0], 0.0);
    assert!(st.offsets.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(st.length, *st.offsets.last().unwrap());
    for i in 0..10 {
        for j in i + 1..10 {
            let s = overlap_status(&placed[i], &placed[j], &tol).status;
            assert_ne!(s, OverlapStatus::Overlapping, "pair {i} {j}");
        }
    }
    let seq = o.as_slice();
    for w in seq.windows(2) {
        let s = overlap_status(&placed[w[0]], &placed[w[1]], &tol).status;
        assert_eq!(s, OverlapStatus::Touching);
    }
}

#[test]
fn two_disk_stabbing() {
    let disks = [tilted(0.0), tilted(30.0)];
    let (st, placed) = realize_stabbing(
        &disks,
        &Ordering::identity(2),
        UnitVec3::axis(2),
        &ToleranceConfig::default(),
    )
    .unwrap();
    assert!((st.length - 0.5).abs() < 1e-12);
    assert!((placed[1].center - Vec3::new(0.0, 0.0, 0.5)).norm() < 1e-12);
}
