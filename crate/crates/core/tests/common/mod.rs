#![allow(dead_code)]

use randset::convex::hull;
use randset::rng::DrawStream;
use randset::{ConvexBody, DiscreteRandomSet, Vector};

pub fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

pub fn segment(a: &[f64], b: &[f64]) -> ConvexBody {
    hull(&[v(a), v(b)]).unwrap()
}

pub fn square(lo: [f64; 2], hi: [f64; 2]) -> ConvexBody {
    ConvexBody::cuboid(&lo, &hi).unwrap()
}

/// Horizontal and vertical unit segments at the origin, weights ½.
pub fn two_segments() -> DiscreteRandomSet {
    DiscreteRandomSet::new(vec![
        (0.5, segment(&[0.0, 0.0], &[1.0, 0.0])),
        (0.5, segment(&[0.0, 0.0], &[0.0, 1.0])),
    ])
    .unwrap()
}

/// `[0,1]²` and `[0,1]×[1,2]`, weights ½.
pub fn stacked_squares() -> DiscreteRandomSet {
    DiscreteRandomSet::new(vec![
        (0.5, square([0.0, 0.0], [1.0, 1.0])),
        (0.5, square([0.0, 1.0], [1.0, 2.0])),
    ])
    .unwrap()
}

/// `[0,1]²` and `[2,3]×[0,1]`, weights ½.
pub fn side_by_side() -> DiscreteRandomSet {
    DiscreteRandomSet::new(vec![
        (0.5, square([0.0, 0.0], [1.0, 1.0])),
        (0.5, square([2.0, 0.0], [3.0, 1.0])),
    ])
    .unwrap()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Seeded generator of random geometry for oracle sweeps.
pub struct Gen(DrawStream);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(DrawStream::new(seed, 0))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.0.next_uniform()
    }

    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.0.next_uniform() * (hi - lo + 1) as f64) as usize
    }

    pub fn points(&mut self, count: usize, half_width: f64) -> Vec<Vector> {
        (0..count)
            .map(|_| v(&[self.uniform(-half_width, half_width), self.uniform(-half_width, half_width)]))
            .collect()
    }

    pub fn body(&mut self, half_width: f64) -> ConvexBody {
        let count = self.index(1, 8);
        hull(&self.points(count, half_width)).unwrap()
    }

    pub fn direction(&mut self) -> Vector {
        let t = self.uniform(0.0, std::f64::consts::TAU);
        v(&[t.cos(), t.sin()])
    }

    pub fn random_set(&mut self) -> DiscreteRandomSet {
        let atoms = self.index(1, 4);
        let raw: Vec<f64> = (0..atoms).map(|_| self.uniform(0.05, 1.0)).collect();
        let total: f64 = raw.iter().sum();
        DiscreteRandomSet::new(raw.iter().map(|w| (w / total, self.body(1.0))).collect()).unwrap()
    }
}
