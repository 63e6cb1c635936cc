//! Counter-based randomness addressed by `(seed, element, coordinate)`.
//!
//! Every uniform is a pure function of its address, so perturbed sequences can
//! be generated in any order, in parallel, or partially, with identical bits.

const PHILOX_M0: u32 = 0xD251_1F53;
const PHILOX_M1: u32 = 0xCD9E_8D57;
const PHILOX_W0: u32 = 0x9E37_79B9;
const PHILOX_W1: u32 = 0xBB67_AE85;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
#[inline]
pub fn philox4x32_10(counter: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = counter;
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(PHILOX_W0);
            k[1] = k[1].wrapping_add(PHILOX_W1);
        }
        let (hi0, lo0) = mulhilo(PHILOX_M0, c[0]);
        let (hi1, lo1) = mulhilo(PHILOX_M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

/// Seeded source of uniforms `U(seed, n, i)` in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform value for element `n` and coordinate `i`, with 53 random bits.
    #[inline]
    pub fn uniform_value(&self, n: u64, i: u64) -> f64 {
        let out = philox4x32_10(
            [n as u32, (n >> 32) as u32, i as u32, (i >> 32) as u32],
            [self.seed as u32, (self.seed >> 32) as u32],
        );
        let bits = (u64::from(out[0]) << 32 | u64::from(out[1])) >> 11;
        bits as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
