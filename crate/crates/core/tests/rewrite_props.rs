use proptest::prelude::*;

use quiver_core::checks::{cm_point, rng};
use quiver_core::rewrite::engine::path_values;
use quiver_core::rewrite::{parse_path, random_closed_path, NcExpr, PathWord, RewriteKernel, Sym};

fn rel(a: quiver_core::C64, b: quiver_core::C64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_forms_evaluate_like_matrices(m in 2usize..=3, n in 1i64..=2, seed in 0u64..10_000) {
        let p = cm_point(&mut rng(seed), m, n, seed).unwrap();
        let path = random_closed_path(&mut rng(seed + 7), m, 10);
        let (wv, tr) = path_values(&path, &p);
        let mut kernel = RewriteKernel::new(m);
        let e_wv = kernel.normalize_wv(&path).unwrap();
        let e_tr = kernel.normalize_trace(&path).unwrap();
        prop_assert!(rel(e_wv.eval(&p).unwrap(), wv) < 1e-7, "w{}v", path);
        prop_assert!(rel(e_tr.eval(&p).unwrap(), tr) < 1e-7, "Tr {}", path);
    }

    #[test]
    fn printed_paths_parse_back(m in 1usize..=4, seed in 0u64..10_000) {
        let path = random_closed_path(&mut rng(seed), m, 12);
        let text = path.to_string();
        prop_assume!(!path.is_empty());
        prop_assert_eq!(parse_path(&text, m).unwrap(), path);
    }

    #[test]
    fn sorted_words_are_their_own_normal_form(m in 1usize..=3, i in 0usize..3, j in 0usize..3, k in 0usize..3) {
        let k = k % m;
        let word = PathWord::normal(m, i, j, k);
        let mut kernel = RewriteKernel::new(m);
        prop_assert_eq!(kernel.normalize_wv(&word).unwrap(), NcExpr::symbol(m, Sym::wv(i, j, k)));
    }

    #[test]
    fn rewriting_is_deterministic(m in 2usize..=3, seed in 0u64..10_000) {
        let path = random_closed_path(&mut rng(seed), m, 10);
        let a = RewriteKernel::new(m).normalize_trace(&path).unwrap().to_string();
        let b = RewriteKernel::new(m).normalize_trace(&path).unwrap().to_string();
        prop_assert_eq!(a, b);
    }
}
