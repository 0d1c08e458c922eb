use lsap_core::{generate_geom, read_instance, write_instance, GeomParams, Instance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geom_is_a_metric(n in 1usize..24, bound in 0.5f64..1000.0, seed in any::<u64>()) {
        let inst = generate_geom(&GeomParams::new(n, bound, seed).unwrap()).unwrap();
        let max = bound * 2f64.sqrt();
        for i in 0..n {
            prop_assert_eq!(inst.benefit(i, i), 0.0);
            for j in 0..n {
                let d = inst.benefit(i, j);
                prop_assert_eq!(d, inst.benefit(j, i));
                prop_assert!(d >= 0.0 && d <= max);
                for k in 0..n {
                    prop_assert!(inst.benefit(i, k) <= d + inst.benefit(j, k) + 1e-9 * max);
                }
            }
        }
    }

    #[test]
    fn geom_is_deterministic(n in 1usize..40, seed in any::<u64>()) {
        let p = GeomParams::new(n, 100.0, seed).unwrap();
        prop_assert_eq!(generate_geom(&p).unwrap(), generate_geom(&p).unwrap());
    }

    #[test]
    fn instance_files_round_trip(n in 1usize..12, vals in prop::collection::vec(-1e12f64..1e12, 144)) {
        let inst = Instance::new(n, vals[..n * n].to_vec()).unwrap();
        let mut buf = Vec::new();
        write_instance(&inst, &mut buf).unwrap();
        let back = read_instance(buf.as_slice()).unwrap();
        prop_assert_eq!(back, inst);
    }
}
