use plevo::GaussianSource;

#[test]
fn golden_vector_seed_42() {
    let v = GaussianSource::new(42).gaussian_vector(4, 1.0);
    let want = [
        -0.7689930538210061,
        1.6661184587142,
        -0.8684461074702454,
        -2.7391511556643047,
    ];
    assert_eq!(v, want);
}

/// Textbook SplitMix64 seeding and xoshiro256++ stepping.
struct Reference {
    s: [u64; 4],
}

impl Reference {
    fn new(seed: u64) -> Self {
        let mut x = seed;
        let mut s = [0u64; 4];
        for slot in &mut s {
            x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = x;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            *slot = z ^ (z >> 31);
        }
        Self { s }
    }

    fn next(&mut self) -> u64 {
        let s = &mut self.s;
        let out = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        out
    }

    fn uniform(&mut self) -> f64 {
        (self.next() >> 11) as f64 / 9_007_199_254_740_992.0
    }

    fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let a = 2.0 * std::f64::consts::PI * u2;
        (r * a.cos(), r * a.sin())
    }
}

#[test]
fn matches_documented_transform() {
    for seed in [0, 1, 42, u64::MAX] {
        let mut reference = Reference::new(seed);
        let mut source = GaussianSource::new(seed);
        for _ in 0..500 {
            let (z0, z1) = reference.normal_pair();
            assert!((source.standard_normal() - z0).abs() <= 1e-15);
            assert!((source.standard_normal() - z1).abs() <= 1e-15);
        }
    }
}

#[test]
fn standard_normal_moments() {
    let mut s = GaussianSource::new(2024);
    let n = 1_000_000;
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..n {
        let z = s.standard_normal();
        sum += z;
        sq += z * z;
    }
    let mean = sum / n as f64;
    let var = sq / n as f64 - mean * mean;
    assert!(mean.abs() < 5e-3, "{mean}");
    assert!((var - 1.0).abs() < 1e-2, "{var}");
}

#[test]
fn sigma_scales_draws() {
    let a = GaussianSource::new(5).gaussian_vector(64, 1.0);
    let b = GaussianSource::new(5).gaussian_vector(64, 0.25);
    for (a, b) in a.iter().zip(&b) {
        assert_eq!(a * 0.25, *b);
    }
}

#[test]
fn distinct_seeds_distinct_streams() {
    let a = GaussianSource::new(1).gaussian_vector(8, 1.0);
    let b = GaussianSource::new(2).gaussian_vector(8, 1.0);
    assert_ne!(a, b);
}
