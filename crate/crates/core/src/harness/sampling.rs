use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::Sampling;
use crate::jetcore::JetPoint;

/// Seeded stream of jet points: each yⁱ log-uniform on [y_min, y_max], t
/// uniform on [t_min, t_max], x = 0.
#[derive(Debug, Clone)]
pub struct PointSampler {
    rng: ChaCha8Rng,
    ln_y: (f64, f64),
    t: (f64, f64),
}

impl PointSampler {
    pub fn new(s: &Sampling) -> Self {
        Self::with_stream(s, 0)
    }

    /// An independent stream for the same seed, so that every check draws
    /// its own points regardless of how many other checks ran.
    pub fn with_stream(s: &Sampling, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        rng.set_stream(stream);
        PointSampler {
            rng,
            ln_y: (s.y_min.ln(), s.y_max.ln()),
            t: (s.t_min, s.t_max),
        }
    }

    pub fn next_y(&mut self) -> [f64; 4] {
        let (lo, hi) = self.ln_y;
        std::array::from_fn(|_| (lo + (hi - lo) * self.rng.gen::<f64>()).exp())
    }

    pub fn next_t(&mut self) -> f64 {
        let (lo, hi) = self.t;
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    pub fn next_point(&mut self) -> JetPoint {
        let t = self.next_t();
        let y = self.next_y();
        JetPoint::at(t, y).expect("log-uniform draws are positive")
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.gen()
    }

    pub fn points(&mut self, n: usize) -> Vec<JetPoint> {
        (0..n).map(|_| self.next_point()).collect()
    }
}
