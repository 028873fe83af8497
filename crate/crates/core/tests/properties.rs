mod common;

use num_traits::One;
use ppcolor::bounds::LogReal;
use ppcolor::coding::{
    code_from_lengths, entropy, expected_length, kraft_sum, relative_entropy, shannon_lengths, Distribution, PrefixCode,
};
use ppcolor::dyck::{dyck_to_tree, is_partial_dyck, tree_to_dyck, DyckWord, PlaneTree};
use ppcolor::ecrun::{
    project_record, reconstruct_acyclic, reconstruct_generic, run_acyclic, run_generic, theta, theta_inverse,
    RecordEntry, RecordTable,
};
use ppcolor::legit::PointColoring;
use ppcolor::plane::{build_plane, ProjectivePlane};
use proptest::prelude::*;

fn distribution(len: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(0.001f64..1.0, len).prop_map(|w| {
        let s: f64 = w.iter().sum();
        Distribution::new(w.into_iter().map(|x| x / s).collect()).unwrap()
    })
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn logreal_sum_matches_floats(xs in prop::collection::vec(-1e6f64..1e6, 1..8)) {
        let direct: f64 = xs.iter().sum();
        let lr = LogReal::sum(xs.iter().map(|&x| LogReal::from_f64(x)));
        let scale: f64 = xs.iter().map(|x| x.abs()).sum();
        prop_assert!((lr.to_f64() - direct).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn logreal_add_associates(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3) {
        let (x, y, z) = (LogReal::from_f64(a), LogReal::from_f64(b), LogReal::from_f64(c));
        let left = x.add(y).add(z).to_f64();
        let right = x.add(y.add(z)).to_f64();
        prop_assert!((left - right).abs() <= 1e-9 * (a.abs() + b.abs() + c.abs()).max(1.0));
        prop_assert!(rel_close(x.add(y).to_f64(), y.add(x).to_f64()));
    }

    #[test]
    fn logreal_mul_is_ln_sum(a in 1e-100f64..1e100, b in 1e-100f64..1e100, p in -3.0f64..3.0) {
        let (x, y) = (LogReal::from_f64(a), LogReal::from_f64(b));
        prop_assert!(rel_close((x * y).lnmag(), a.ln() + b.ln()));
        prop_assert!(rel_close((x / y).lnmag(), a.ln() - b.ln()));
        prop_assert!(rel_close(x.powf(p).lnmag(), p * a.ln()));
    }

    #[test]
    fn theta_round_trip(base in 1u64..8, word in prop::collection::vec(1u32..8, 0..10)) {
        let word: Vec<u32> = word.into_iter().map(|w| (w - 1) % base as u32 + 1).collect();
        let l = theta(&word, base);
        prop_assert!(l >= 1 && l <= base.pow(word.len() as u32));
        prop_assert_eq!(theta_inverse(l, word.len(), base), word);
    }

    #[test]
    fn canonical_code_is_prefix_free(lengths in prop::collection::vec(1u32..12, 1..20), d in 2u32..5) {
        match code_from_lengths(&lengths, d) {
            Ok(code) => {
                prop_assert!(code.is_prefix_free());
                prop_assert_eq!(code.lengths(), lengths.clone());
                prop_assert!(kraft_sum(&lengths, d).unwrap() <= One::one());
                prop_assert_eq!(PrefixCode::from_json(&code.to_json()).unwrap(), code);
            }
            Err(_) => prop_assert!(kraft_sum(&lengths, d).unwrap() > One::one()),
        }
    }

    #[test]
    fn shannon_code_within_one_bit(p in (2usize..12).prop_flat_map(distribution), d in 2u32..5) {
        let lengths = shannon_lengths(&p, d).unwrap();
        let flat: Vec<u32> = lengths.iter().map(|l| l.unwrap()).collect();
        prop_assert!(code_from_lengths(&flat, d).is_ok());
        let h = entropy(&p, f64::from(d)).unwrap();
        let l = expected_length(&p, &lengths).unwrap();
        prop_assert!(l >= h - 1e-9 && l < h + 1.0 + 1e-9);
    }

    #[test]
    fn relative_entropy_nonnegative(pair in (2usize..10).prop_flat_map(|n| (distribution(n), distribution(n)))) {
        let (p, q) = pair;
        prop_assert!(relative_entropy(&p, &q, 2.0).unwrap() >= -1e-12);
        prop_assert!(relative_entropy(&p, &p, 2.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn dyck_text_round_trip(bits in prop::collection::vec(any::<bool>(), 0..40)) {
        let word = DyckWord::new(bits.clone());
        prop_assert_eq!(word.to_string().parse::<DyckWord>().unwrap(), word.clone());
        let mut h = 0i64;
        let partial = bits.iter().all(|&b| { h += if b { -1 } else { 1 }; h >= 0 });
        prop_assert_eq!(is_partial_dyck(&bits), partial);
        // descents sum to the number of ones
        prop_assert_eq!(word.descents().iter().sum::<usize>(), word.ones());
    }

    #[test]
    fn tree_round_trip(choices in prop::collection::vec(any::<prop::sample::Index>(), 0..25)) {
        // attach each new vertex under a random earlier one
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, c) in choices.iter().enumerate() {
            children[c.index(i + 1)].push(i + 1);
            children.push(Vec::new());
        }
        let tree = PlaneTree::from_children(&children).unwrap();
        let word = tree_to_dyck(&tree);
        prop_assert!(word.is_full_dyck());
        prop_assert_eq!(word.len(), 2 * (tree.num_vertices() - 1));
        prop_assert_eq!(dyck_to_tree(&word).unwrap(), tree);
    }

    #[test]
    fn plane_and_coloring_serializers(q in prop::sample::select(vec![2usize, 3, 5, 7]), colors in prop::collection::vec(prop::option::of(1u32..5), 1..40)) {
        let plane = build_plane(q).unwrap();
        prop_assert_eq!(ProjectivePlane::from_csv(&plane.to_csv()).unwrap(), plane.clone());
        prop_assert_eq!(ProjectivePlane::from_json(&plane.to_json()).unwrap(), plane);
        let col = PointColoring::new(colors, 4).unwrap();
        prop_assert_eq!(PointColoring::from_json(&col.to_json(), 4).unwrap(), col);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn acyclic_runs_are_lossless(seed in any::<u64>()) {
        let (g, k, mut tape) = common::acyclic_case(seed);
        let run = run_acyclic(&g, k, &mut tape, 100 * g.num_edges()).unwrap();
        prop_assert_eq!(reconstruct_acyclic(&g, k, &run.record, &run.colors).unwrap(), run.consumed);
        let p = project_record(&run.record, &RecordTable::Acyclic { delta: g.max_degree() as u32 }).unwrap();
        prop_assert!(p.circle_word().is_partial_dyck());
        prop_assert_eq!(p.r_star.len(), run.record.len());
        let fixes = run.record.iter().filter(|e| **e != RecordEntry::Empty).count();
        prop_assert_eq!(p.r_circle.len() - run.record.len(), p.r_circle.matches('1').count());
        prop_assert!(fixes <= p.r_circle.matches('1').count());
    }

    #[test]
    fn sat_runs_are_lossless(seed in any::<u64>()) {
        let (ks, streams) = common::ksat_case(seed);
        let run = run_generic(&ks.instance, &streams, 10_000).unwrap();
        prop_assert_eq!(reconstruct_generic(&ks.instance, &run.record, &run.state).unwrap(), run.consumed);
    }
}
