/// The golden ratio and the constants derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    /// `r = (1 + √5) / 2`
    pub r: f64,
    /// `s = (1 - √5) / 2`
    pub s: f64,
    pub sqrt5: f64,
    /// `c = Σ_{n ≥ 1} log(1 - (-1)^n r^{-2n})`
    pub c: f64,
    /// `3 log r / π²`, the growth constant of `log lcm(F(1), …, F(x))`.
    pub three_logr_over_pi2: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants::new()
    }
}

impl Constants {
    pub fn new() -> Self {
        let sqrt5 = 5f64.sqrt();
        let r = (1.0 + sqrt5) / 2.0;
        let s = (1.0 - sqrt5) / 2.0;
        let c = crate::verify::constant_c(80);
        let three_logr_over_pi2 = 3.0 * r.ln() / (std::f64::consts::PI * std::f64::consts::PI);
        Constants { r, s, sqrt5, c, three_logr_over_pi2 }
    }

    /// `3 log r / (2π²)`
    pub fn pi_alpha_bound(&self) -> f64 {
        self.three_logr_over_pi2 / 2.0
    }

    pub fn binet(&self, n: u32) -> f64 {
        (self.r.powi(n as i32) - self.s.powi(n as i32)) / self.sqrt5
    }
}
