//! Reciprocal Gamma function on the complex plane.

use std::f64::consts::PI;

use num_complex::Complex64;

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` for `Re z ≥ 1/2` (Lanczos, g = 7).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `1/Γ(z)`, entire; exactly zero at the poles `0, −1, −2, …`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Γ(z) = Γ(1 − z) sin(πz) / π
        let s = (PI * z).sin();
        return (ln_gamma_right(1.0 - z)).exp() * s / PI;
    }
    (-ln_gamma_right(z)).exp()
}
