//! Deterministic counter-derived random streams.
//!
//! Every Monte Carlo trial draws from its own [`RngStream`], keyed by
//! `(master_seed, stream_index)`. The key is hashed through a SplitMix64
//! chain into xoshiro256++ state, so distinct keys give statistically
//! independent streams and the same key always replays the same sequence —
//! regardless of how trials are scheduled across workers.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_CONST1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_CONST2: u64 = 0x94D0_49BB_1331_11EB;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(MIX_CONST1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_CONST2);
    z ^ (z >> 31)
}

/// A reproducible random stream: xoshiro256++ seeded from
/// `(master_seed, stream_index)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    s: [u64; 4],
    master_seed: u64,
    stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        // Chain both key words through the mixer; the intermediate output
        // feeds back so (a, b) and (b, a) land in unrelated states.
        let mut state = master_seed;
        let mut s = [0u64; 4];
        state ^= splitmix64(&mut state).wrapping_add(stream_index);
        state = state.wrapping_add(stream_index.wrapping_mul(GOLDEN_GAMMA));
        for word in &mut s {
            *word = splitmix64(&mut state);
        }
        // xoshiro256++ requires a nonzero state; splitmix cannot produce
        // four zero outputs in a row, but keep the guard explicit.
        if s == [0, 0, 0, 0] {
            s = [GOLDEN_GAMMA, MIX_CONST1, MIX_CONST2, 1];
        }
        Self {
            s,
            master_seed,
            stream_index,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// xoshiro256++ step.
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`; safe to pass through `ln`.
    #[inline]
    fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One Box–Muller pair of independent standard normals.
    #[inline]
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_open01();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Fill `out` with i.i.d. standard normals.
    pub fn fill_gaussian(&mut self, out: &mut [f64]) {
        let mut i = 0;
        while i + 1 < out.len() {
            let (a, b) = self.next_gaussian_pair();
            out[i] = a;
            out[i + 1] = b;
            i += 2;
        }
        if i < out.len() {
            out[i] = self.next_gaussian_pair().0;
        }
    }
}
