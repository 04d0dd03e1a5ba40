mod common;

use common::{kunneth, p1, p2};
use num_bigint::BigUint;
use proptest::prelude::*;
use toric_cohom::{
    bundled, class_box, DivisorClass, DualFilter, Engine, EngineOptions, Error, Execution, FanOracle,
    ToricVarietyModel, VertexSet,
};

fn u64s(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).unwrap()).collect()
}

fn engine(model: &ToricVarietyModel, filter: DualFilter, execution: Execution) -> Engine {
    Engine::with_options(
        model,
        EngineOptions {
            filter,
            execution,
            ..EngineOptions::default()
        },
    )
    .unwrap()
}

#[test]
fn closed_forms() {
    let e = Engine::new(&bundled::model("P2").unwrap()).unwrap();
    for m in -20..=20 {
        let r = e.cohomology(&DivisorClass(vec![m])).unwrap();
        assert_eq!(u64s(&r.dims), p2(m).to_vec(), "O({m})");
    }
    let e = Engine::new(&bundled::model("P1xP1xP1").unwrap()).unwrap();
    for alpha in class_box(&[(-3, 3), (-3, 3), (-3, 3)]) {
        let expected = kunneth(&alpha.0.iter().map(|m| p1(*m).to_vec()).collect::<Vec<_>>());
        let r = e.cohomology(&alpha).unwrap();
        assert_eq!(u64s(&r.dims), expected, "{alpha}");
    }
}

#[test]
fn breakdown_is_consistent() {
    for (name, model) in bundled::all() {
        let e = Engine::new(&model).unwrap();
        let ranges = vec![(-2, 2); model.class_rank()];
        for alpha in class_box(&ranges).into_iter().step_by(7) {
            let r = e.cohomology(&alpha).unwrap();
            assert_eq!(r.dims.len(), model.dimension() + 1);
            let mut sums = vec![BigUint::default(); r.dims.len()];
            for c in &r.breakdown {
                let count = c.count.finite().unwrap();
                for (i, v) in &c.by_index {
                    assert_eq!(*v, count * c.factors[&(c.support_size() - i)], "{name}");
                    sums[*i] += v;
                }
            }
            assert_eq!(sums, r.dims, "{name} {alpha}");
        }
    }
}

#[test]
fn execution_modes_agree() {
    for (name, model) in bundled::all() {
        let ranges = vec![(-2, 2); model.class_rank()];
        let alphas = class_box(&ranges);
        let a = engine(&model, DualFilter::Checked, Execution::Parallel).cohomology_all(&alphas);
        let b = engine(&model, DualFilter::Checked, Execution::Sequential).cohomology_all(&alphas);
        assert_eq!(a, b, "{name}");
    }
}

/// Models with one maximal cone of the projective plane removed.
fn truncated_planes() -> Vec<ToricVarietyModel> {
    let cones = [[0, 1], [1, 2], [0, 2]];
    (0..3)
        .map(|drop| {
            let kept = (0..3)
                .filter(|c| *c != drop)
                .map(|c| VertexSet::from_indices(cones[c]))
                .collect();
            ToricVarietyModel::new(
                vec!["x1".into(), "x2".into(), "x3".into()],
                2,
                vec![vec![1], vec![1], vec![1]],
                None,
                Some(kept),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn incomplete_fans_never_return_partial_results() {
    for model in truncated_planes() {
        let e = Engine::new(&model).unwrap();
        assert_eq!(e.filter_is_sound(), Some(false));
        let oracle = FanOracle::new(&model).unwrap();
        for m in -8..=8 {
            let alpha = DivisorClass(vec![m]);
            match e.cohomology(&alpha) {
                Ok(r) => assert_eq!(r.dims, oracle.cohomology_via_fan(&alpha).unwrap()),
                Err(err) => assert!(matches!(err, Error::NonFinite { .. }), "{err}"),
            }
        }
    }
}

fn model_and_alpha() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0usize..5, prop::collection::vec(-6i64..=6, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn routes_agree((idx, alpha) in model_and_alpha()) {
        let (_, model) = bundled::all().swap_remove(idx);
        let alpha = DivisorClass(alpha[..model.class_rank()].to_vec());
        let r = Engine::new(&model).unwrap().cohomology(&alpha).unwrap();
        let o = FanOracle::new(&model).unwrap().cohomology_via_fan(&alpha).unwrap();
        prop_assert_eq!(r.dims, o);
    }

    #[test]
    fn serre_duality((idx, alpha) in model_and_alpha()) {
        let (_, model) = bundled::all().swap_remove(idx);
        let alpha = DivisorClass(alpha[..model.class_rank()].to_vec());
        let rep = Engine::new(&model).unwrap().serre_check(&alpha).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn filter_modes_agree((idx, alpha) in model_and_alpha()) {
        let (_, model) = bundled::all().swap_remove(idx);
        let alpha = DivisorClass(alpha[..model.class_rank()].to_vec());
        let dims: Vec<_> = [DualFilter::Checked, DualFilter::Trusted, DualFilter::Off]
            .into_iter()
            .map(|f| engine(&model, f, Execution::Parallel).cohomology(&alpha).unwrap().dims)
            .collect();
        prop_assert_eq!(&dims[0], &dims[1]);
        prop_assert_eq!(&dims[0], &dims[2]);
    }
}
