//! Randomized invariants: norm axioms, exponent monotonicity, linearity of
//! the sewing maps, serialization round-trips.

use proptest::prelude::*;

use roughsew::dyadic_grid::{
    delta1, delta2, norm_c2, DyadicGrid, Grid1Fn, Grid2Fn, PairFn, TripleScan,
};
use roughsew::sewing::{lambda_unordered, sew_low};

const LEVEL: u32 = 3;

/// Random germ with vanishing diagonal — the class the coherence hypothesis
/// admits (a triple (t,t,t) gives |delta2(A)(t,t,t)| = |A(t,t)|, which any
/// finite modulus forces to zero).
fn pair_table() -> impl Strategy<Value = Grid2Fn> {
    let n = (1usize << LEVEL) + 1;
    proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |mut values| {
        for i in 0..n {
            values[i * n + i] = 0.0;
        }
        Grid2Fn::new(DyadicGrid::new(1.0, LEVEL).unwrap(), values).unwrap()
    })
}

fn path_table() -> impl Strategy<Value = Grid1Fn> {
    let n = (1usize << LEVEL) + 1;
    proptest::collection::vec(-1.0f64..1.0, n).prop_map(|mut values| {
        values[0] = 0.0;
        Grid1Fn::new(DyadicGrid::new(1.0, LEVEL).unwrap(), values).unwrap()
    })
}

proptest! {
    /// Absolute homogeneity of the pair norm, up to one rounding of the
    /// scalar multiplication per entry.
    #[test]
    fn norm_c2_is_absolutely_homogeneous(a in pair_table(), c in -4.0f64..4.0) {
        let scaled = Grid2Fn::linear(c, &a, 0.0, &a).unwrap();
        let lhs = norm_c2(&scaled, 0.7);
        let rhs = c.abs() * norm_c2(&a, 0.7);
        prop_assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON * rhs.max(1.0),
            "lhs {lhs} rhs {rhs}");
    }

    /// Triangle inequality of the pair norm.
    #[test]
    fn norm_c2_satisfies_the_triangle_inequality(a in pair_table(), b in pair_table()) {
        let sum = Grid2Fn::linear(1.0, &a, 1.0, &b).unwrap();
        let lhs = norm_c2(&sum, 0.7);
        let rhs = norm_c2(&a, 0.7) + norm_c2(&b, 0.7);
        prop_assert!(lhs <= rhs + 8.0 * f64::EPSILON * rhs.max(1.0), "lhs {lhs} rhs {rhs}");
    }

    /// On the unit horizon all gaps are at most 1, so the pair norm grows
    /// with the exponent.
    #[test]
    fn norm_c2_is_monotone_in_the_exponent(a in pair_table(),
                                           lo in 0.1f64..1.0,
                                           bump in 0.0f64..1.0) {
        let hi = lo + bump;
        prop_assert!(norm_c2(&a, lo) <= norm_c2(&a, hi) * (1.0 + 1e-12));
    }

    /// The norm vanishes exactly on tables that vanish off the diagonal.
    #[test]
    fn norm_c2_ignores_the_diagonal(d in proptest::collection::vec(-1.0f64..1.0, 9)) {
        let grid = DyadicGrid::new(1.0, 3).unwrap();
        let a = Grid2Fn::from_index_fn(grid, |i, j| {
            if i == j { d[i % 9] } else { 0.0 }
        }).unwrap();
        prop_assert_eq!(norm_c2(&a, 0.5), 0.0);
    }

    /// The dyadic sewing map is linear in the germ.
    #[test]
    fn dyadic_sewing_is_linear(a in pair_table(), b in pair_table(),
                               ca in -2.0f64..2.0, cb in -2.0f64..2.0) {
        let combo = Grid2Fn::linear(ca, &a, cb, &b).unwrap();
        let ia = sew_low(&a).unwrap().integral;
        let ib = sew_low(&b).unwrap().integral;
        let ic = sew_low(&combo).unwrap().integral;
        for k in 0..ia.grid().len() {
            let expect = ca * ia.value(k) + cb * ib.value(k);
            let scale = expect.abs().max(1.0);
            prop_assert!((ic.value(k) - expect).abs() <= 1e-12 * scale);
        }
    }

    /// The remainder of an arbitrary germ reproduces its coherence on all
    /// triples (the exponent only affects which construction runs, so both
    /// dispatch branches are exercised).
    #[test]
    fn remainder_reproduces_coherence(a in pair_table(), gamma in 0.2f64..2.0) {
        let r = lambda_unordered(&a, gamma).unwrap();
        let da = delta2(&a);
        let dr = delta2(&r);
        let scale = a.max_abs().max(1.0);
        let grid = a.grid();
        for i in 0..grid.len() {
            for j in 0..grid.len() {
                for k in 0..grid.len() {
                    prop_assert!(
                        (dr.at(i, j, k) - da.at(i, j, k)).abs() <= 1e-10 * scale,
                        "triple ({}, {}, {})", i, j, k
                    );
                }
            }
        }
    }

    /// Coboundaries sew back to their path.
    #[test]
    fn coboundaries_round_trip_through_sewing(f in path_table()) {
        let out = sew_low(&delta1(&f)).unwrap();
        for k in 0..f.grid().len() {
            prop_assert!((out.integral.value(k) - f.value(k)).abs() <= 1e-12);
        }
        prop_assert!(out.remainder.max_abs() <= 1e-12);
    }

    /// CSV round-trips are lossless (shortest round-trip float formatting).
    #[test]
    fn grid_csv_round_trips(f in path_table(), a in pair_table()) {
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        prop_assert_eq!(&Grid1Fn::read_csv(buf.as_slice()).unwrap(), &f);
        let mut buf = Vec::new();
        a.write_csv(&mut buf).unwrap();
        prop_assert_eq!(&Grid2Fn::read_csv(buf.as_slice()).unwrap(), &a);
    }

    /// Norms computed on a restriction never exceed the finer norm, and the
    /// restriction itself is bit-exact on shared points.
    #[test]
    fn restriction_is_monotone_for_norms(a in pair_table()) {
        let coarse = a.restrict(LEVEL - 1).unwrap();
        prop_assert!(norm_c2(&coarse, 0.6) <= norm_c2(&a, 0.6) * (1.0 + 1e-12));
        for i in 0..coarse.grid().len() {
            for j in 0..coarse.grid().len() {
                prop_assert_eq!(coarse.at(i, j), a.at(2 * i, 2 * j));
            }
        }
    }
}

/// Exactness of the two-step coboundary on random paths, with the triple
/// norm evaluated through both scan strategies.
#[test]
fn double_coboundary_is_exact_under_both_scans() {
    let grid = DyadicGrid::new(1.0, 9).unwrap();
    let f = Grid1Fn::from_fn(grid, |t| (5.0 * t).sin() * (1.0 + t)).unwrap();
    let pairs = delta1(&f);
    let view = delta2(&pairs);
    for scan in [TripleScan::Sampled, TripleScan::Auto] {
        let norm = roughsew::dyadic_grid::norm_c3(&view, 1.0, scan);
        assert!(norm <= 1e-12 * f.max_abs(), "{norm}");
    }
}
