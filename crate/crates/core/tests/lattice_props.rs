use proptest::prelude::*;

use quiver_core::lattice::{
    dual_reflection, p_of, reduce_to_cm, simple_reflection, symmetric_form, ParamVector, Vertex, WeylWord,
};
use quiver_core::DimVector;

fn vector(m: usize) -> impl Strategy<Value = DimVector> {
    (-1i64..=2, prop::collection::vec(-3i64..=6, m)).prop_map(|(inf, alpha)| DimVector::new(inf, &alpha))
}

fn vertex(m: usize) -> impl Strategy<Value = Vertex> {
    prop_oneof![Just(Vertex::Inf), (0..m).prop_map(Vertex::Cyc)]
}

fn setup() -> impl Strategy<Value = (usize, DimVector, DimVector, Vertex)> {
    (2usize..=5).prop_flat_map(|m| (Just(m), vector(m), vector(m), vertex(m)))
}

proptest! {
    #[test]
    fn reflection_is_an_involution((_, b, _, v) in setup()) {
        let once = simple_reflection(v, &b).unwrap();
        prop_assert_eq!(simple_reflection(v, &once).unwrap(), b);
    }

    #[test]
    fn reflection_preserves_form_and_p((_, b, c, v) in setup()) {
        let (sb, sc) = (simple_reflection(v, &b).unwrap(), simple_reflection(v, &c).unwrap());
        prop_assert_eq!(symmetric_form(&sb, &sc), symmetric_form(&b, &c));
        prop_assert_eq!(p_of(&sb), p_of(&b));
    }

    #[test]
    fn dual_reflection_preserves_pairing(
        (m, b, _, v) in setup(),
        lam in prop::collection::vec(-20i64..=20, 5),
        inf in -20i64..=20,
    ) {
        let tau = ParamVector::new(lam[..m].to_vec(), inf);
        let rt = dual_reflection(v, &tau).unwrap();
        let sb = simple_reflection(v, &b).unwrap();
        prop_assert_eq!(rt.pair(&sb).unwrap(), tau.pair(&b).unwrap());
        prop_assert_eq!(dual_reflection(v, &rt).unwrap(), tau);
    }

    #[test]
    fn braid_relations((m, b, i) in (3usize..=6).prop_flat_map(|m| (Just(m), vector(m), 0..m))) {
        let j = (i + 1) % m;
        let word = |l: &[usize]| WeylWord::cyclic(l).apply(&b).unwrap();
        prop_assert_eq!(word(&[i, j, i]), word(&[j, i, j]));
        if m >= 4 {
            let far = (i + 2) % m;
            prop_assert_eq!(word(&[i, far]), word(&[far, i]));
        }
        // the framing vertex is joined to 0 only
        let inf = |first: Vertex, second: Vertex| {
            WeylWord::new(vec![first, second, first]).apply(&b).unwrap()
        };
        prop_assert_eq!(inf(Vertex::Inf, Vertex::Cyc(0)), inf(Vertex::Cyc(0), Vertex::Inf));
    }

    #[test]
    fn reduction_round_trip(
        m in 2usize..=4,
        n in 1i64..=3,
        letters in prop::collection::vec(0usize..4, 0..=8),
    ) {
        let letters: Vec<usize> = letters.into_iter().map(|l| l % m).collect();
        let cm = DimVector::calogero_moser(m, n);
        let beta = WeylWord::cyclic(&letters).apply(&cm).unwrap();
        let red = reduce_to_cm(&beta).unwrap();
        prop_assert_eq!(red.n, n);
        prop_assert_eq!(red.word.apply(&beta).unwrap(), cm);
        prop_assert_eq!(red.replay(m).unwrap(), beta.clone());
        prop_assert_eq!(p_of(&beta), p_of(&DimVector::calogero_moser(m, n)));
    }
}
