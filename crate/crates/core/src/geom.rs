//! Random geometric (GEOM) instances: `n` points drawn uniformly in
//! `[0, bound]^2`, benefit of agent `i` on job `j` = distance between points
//! `i` and `j`.

use crate::error::{LsapError, Result};
use crate::model::Instance;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeomParams {
    pub n: usize,
    pub bound: f64,
    pub seed: u64,
}

impl GeomParams {
    pub fn new(n: usize, bound: f64, seed: u64) -> Result<Self> {
        let params = GeomParams { n, bound, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(LsapError::InvalidConfig("n must be at least 1".into()));
        }
        if !(self.bound.is_finite() && self.bound > 0.0) {
            return Err(LsapError::InvalidConfig(format!(
                "bound must be a positive finite number, got {}",
                self.bound
            )));
        }
        Ok(())
    }
}

/// Draws the point set: for each point the x coordinate first, then y.
pub fn geom_points(params: &GeomParams) -> Vec<(f64, f64)> {
    let mut rng = SplitMix64::new(params.seed);
    (0..params.n)
        .map(|_| {
            let x = rng.next_unit() * params.bound;
            let y = rng.next_unit() * params.bound;
            (x, y)
        })
        .collect()
}

pub fn generate_geom(params: &GeomParams) -> Result<Instance> {
    params.validate()?;
    let n = params.n;
    let points = geom_points(params);
    let mut benefits = vec![0.0; n * n];
    for i in 0..n {
        let (xi, yi) = points[i];
        for j in (i + 1)..n {
            let (xj, yj) = points[j];
            let d = (xi - xj).hypot(yi - yj);
            benefits[i * n + j] = d;
            benefits[j * n + i] = d;
        }
    }
    Instance::new(n, benefits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_zero() {
        let inst = generate_geom(&GeomParams::new(1, 5.0, 3).unwrap()).unwrap();
        assert_eq!(inst.as_row_major(), &[0.0]);
    }

    #[test]
    fn metric_properties() {
        let params = GeomParams::new(40, 100.0, 11).unwrap();
        let inst = generate_geom(&params).unwrap();
        let max = 100.0 * 2f64.sqrt();
        for i in 0..40 {
            assert_eq!(inst.benefit(i, i), 0.0);
            for j in 0..40 {
                let v = inst.benefit(i, j);
                assert_eq!(v, inst.benefit(j, i));
                assert!((0.0..=max).contains(&v));
            }
        }
    }

    #[test]
    fn triangle_inequality_small() {
        let inst = generate_geom(&GeomParams::new(4, 10.0, 42).unwrap()).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert!(inst.benefit(a, c) <= inst.benefit(a, b) + inst.benefit(b, c) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let p = GeomParams::new(16, 100.0, 9).unwrap();
        assert_eq!(generate_geom(&p).unwrap(), generate_geom(&p).unwrap());
        let q = GeomParams { seed: 10, ..p };
        assert_ne!(generate_geom(&p).unwrap(), generate_geom(&q).unwrap());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(GeomParams::new(0, 1.0, 0).is_err());
        assert!(GeomParams::new(3, 0.0, 0).is_err());
        assert!(GeomParams::new(3, f64::NAN, 0).is_err());
    }
}
