//! Shared Möbius test vectors: circles, maps and their images.
//!
//! The checked-in file `testdata/moebius_vectors.json` is produced by
//! [`generate`] with [`DEFAULT_SEED`]. Any other implementation of the circle
//! congruence (such as the explorer's client-side code) is expected to
//! reproduce every `image` to within `1e-7`.

use hexpack_core::moebius::Orientation;
use hexpack_core::{Complex, MoebiusMap, OrientedCircle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::api::MapDoc;
use crate::json::{CircleDoc, VERSION};

pub const FORMAT: &str = "hexpack-moebius-vectors";
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const COUNT: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorCase {
    pub map: MapDoc,
    pub circle: CircleDoc,
    pub image: CircleDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorFile {
    pub format: String,
    pub version: u32,
    pub seed: u64,
    pub cases: Vec<VectorCase>,
}

fn random_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex {
    Complex::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn random_circle(rng: &mut ChaCha8Rng, k: usize) -> OrientedCircle {
    if k % 10 == 9 {
        let p = random_complex(rng, 2.0);
        let dir = Complex::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        return OrientedCircle::line(p, dir);
    }
    let orient = if rng.gen_bool(0.5) { Orientation::Positive } else { Orientation::Negative };
    OrientedCircle::from_center_radius(random_complex(rng, 3.0), rng.gen_range(0.05..2.5), orient)
}

/// A well-conditioned map whose pole keeps clear of the circle, so that the
/// image is an honest circle of moderate size.
fn random_map(rng: &mut ChaCha8Rng, circle: &OrientedCircle) -> MoebiusMap {
    loop {
        let (a, b, c, d) = (random_complex(rng, 2.0), random_complex(rng, 2.0), random_complex(rng, 2.0), random_complex(rng, 2.0));
        if (a * d - b * c).norm() < 0.3 {
            continue;
        }
        let m = MoebiusMap::new(a, b, c, d).expect("determinant checked");
        let pole = m.inverse().apply(hexpack_core::ExtComplex::Infinity);
        if circle.incidence(pole) > 0.02 {
            return m;
        }
    }
}

pub fn generate(seed: u64) -> VectorFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..COUNT)
        .map(|k| {
            let circle = random_circle(&mut rng, k);
            let map = random_map(&mut rng, &circle);
            VectorCase {
                map: map.into(),
                circle: CircleDoc::from_circle(&circle, None),
                image: CircleDoc::from_circle(&circle.apply_moebius(&map), None),
            }
        })
        .collect();
    VectorFile { format: FORMAT.into(), version: VERSION, seed, cases }
}
