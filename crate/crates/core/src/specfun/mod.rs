//! Bessel and Hankel functions of orders 0 and 1 for real positive arguments.
//!
//! Small arguments use the ascending power series, summed in double-double
//! arithmetic so that the alternating terms (up to ~1e5 in magnitude near the
//! switch point) cancel without losing f64 accuracy. Large arguments use the
//! Hankel asymptotic expansion truncated at its smallest term.

mod dd;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{Result, WbmError};
use dd::Dd;

/// Argument at which evaluation switches from the power series to the
/// asymptotic expansion. The optimally truncated expansion is accurate to
/// ~2e-16 here.
pub const SERIES_ASYMPTOTIC_CROSSOVER: f64 = 16.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check_nonnegative(function: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(WbmError::Domain { function, arg: x });
    }
    Ok(())
}

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(WbmError::Domain { function, arg: x });
    }
    Ok(())
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> Result<f64> {
    check_nonnegative("bessel_j0", x)?;
    if x < SERIES_ASYMPTOTIC_CROSSOVER {
        Ok(series_order0(x).j.to_f64())
    } else {
        Ok(asymptotic(0, x).0)
    }
}

/// Bessel function of the second kind, order zero. Singular at the origin.
pub fn bessel_y0(x: f64) -> Result<f64> {
    check_positive("bessel_y0", x)?;
    if x < SERIES_ASYMPTOTIC_CROSSOVER {
        Ok(series_order0(x).y0(x))
    } else {
        Ok(asymptotic(0, x).1)
    }
}

/// Bessel function of the first kind, order one.
pub fn bessel_j1(x: f64) -> Result<f64> {
    check_nonnegative("bessel_j1", x)?;
    if x < SERIES_ASYMPTOTIC_CROSSOVER {
        Ok(series_order1(x).j1(x))
    } else {
        Ok(asymptotic(1, x).0)
    }
}

/// Bessel function of the second kind, order one. Singular at the origin.
pub fn bessel_y1(x: f64) -> Result<f64> {
    check_positive("bessel_y1", x)?;
    if x < SERIES_ASYMPTOTIC_CROSSOVER {
        Ok(series_order1(x).y1(x))
    } else {
        Ok(asymptotic(1, x).1)
    }
}

/// Hankel function of the first kind, order zero: `J0(x) + i Y0(x)`.
pub fn hankel1_0(x: f64) -> Result<Complex64> {
    check_positive("hankel1_0", x)?;
    let (j, y) = if x < SERIES_ASYMPTOTIC_CROSSOVER {
        let s = series_order0(x);
        (s.j.to_f64(), s.y0(x))
    } else {
        asymptotic(0, x)
    };
    Ok(Complex64::new(j, y))
}

/// Hankel function of the first kind, order one: `J1(x) + i Y1(x)`.
///
/// Note `d/dx H0(x) = -H1(x)`.
pub fn hankel1_1(x: f64) -> Result<Complex64> {
    check_positive("hankel1_1", x)?;
    let (j, y) = if x < SERIES_ASYMPTOTIC_CROSSOVER {
        let s = series_order1(x);
        (s.j1(x), s.y1(x))
    } else {
        asymptotic(1, x)
    };
    Ok(Complex64::new(j, y))
}

/// Series-only and asymptotic-only evaluations, exposed so the two branches
/// can be compared at the switch point.
pub mod branches {
    use super::*;

    /// `(J0, Y0)` from the ascending series.
    pub fn series0(x: f64) -> (f64, f64) {
        let s = series_order0(x);
        (s.j.to_f64(), s.y0(x))
    }

    /// `(J1, Y1)` from the ascending series.
    pub fn series1(x: f64) -> (f64, f64) {
        let s = series_order1(x);
        (s.j1(x), s.y1(x))
    }

    /// `(J_order, Y_order)` from the asymptotic expansion, order 0 or 1.
    pub fn asymptotic(order: u32, x: f64) -> (f64, f64) {
        super::asymptotic(order, x)
    }
}

/// Partial sums for order zero:
/// `j = sum t_k` and `h = sum H_k t_k` with `t_k = (-x^2/4)^k / (k!)^2`.
struct Order0Sums {
    j: Dd,
    h: Dd,
}

impl Order0Sums {
    fn y0(&self, x: f64) -> f64 {
        let log_term = (0.5 * x).ln() + EULER_GAMMA;
        FRAC_2_PI * (log_term * self.j.to_f64() - self.h.to_f64())
    }
}

fn series_order0(x: f64) -> Order0Sums {
    let q = Dd::square_of(x).div_f64(4.0);
    let mut term = Dd::from_f64(1.0);
    let mut harmonic = Dd::ZERO;
    let mut j = Dd::from_f64(1.0);
    let mut h = Dd::ZERO;
    let mut k: u32 = 0;
    loop {
        k += 1;
        term = (-(term * q)).div_f64(f64::from(k * k));
        harmonic = harmonic + Dd::recip_int(k);
        j = j + term;
        h = h + harmonic * term;
        if f64::from(k) > 0.5 * x && term.abs_f64() * harmonic.to_f64() < 1e-34 {
            break;
        }
    }
    Order0Sums { j, h }
}

/// Partial sums for order one:
/// `j = sum t_k` and `h = sum (H_k + H_{k+1}) t_k` with
/// `t_k = (-x^2/4)^k / (k! (k+1)!)`.
struct Order1Sums {
    j: Dd,
    h: Dd,
}

impl Order1Sums {
    fn j1(&self, x: f64) -> f64 {
        0.5 * x * self.j.to_f64()
    }

    fn y1(&self, x: f64) -> f64 {
        let log_term = (0.5 * x).ln() + EULER_GAMMA;
        -FRAC_2_PI / x + FRAC_2_PI * log_term * self.j1(x) - 0.5 * x * self.h.to_f64() / PI
    }
}

fn series_order1(x: f64) -> Order1Sums {
    let q = Dd::square_of(x).div_f64(4.0);
    let mut term = Dd::from_f64(1.0);
    // H_{k+1}
    let mut h_k1 = Dd::from_f64(1.0);
    let mut j = Dd::from_f64(1.0);
    let mut h = Dd::from_f64(1.0);
    let mut k: u32 = 0;
    loop {
        k += 1;
        term = (-(term * q)).div_f64(f64::from(k * (k + 1)));
        let h_k = h_k1;
        h_k1 = h_k1 + Dd::recip_int(k + 1);
        j = j + term;
        h = h + (h_k + h_k1) * term;
        if f64::from(k) > 0.5 * x && term.abs_f64() * h_k1.to_f64() < 1e-34 {
            break;
        }
    }
    Order1Sums { j, h }
}

/// Hankel asymptotic expansion `(J_nu, Y_nu)` for `nu` in {0, 1}, summed up
/// to (excluding) the first term that grows.
fn asymptotic(order: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * f64::from(order * order);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut k: u32 = 0;
    loop {
        k += 1;
        let odd = f64::from(2 * k - 1);
        let next = term * (mu - odd * odd) / (f64::from(k) * 8.0 * x);
        if next.abs() >= term.abs() || next == 0.0 {
            break;
        }
        term = next;
        // a_k / x^k enters P (even k) or Q (odd k) with alternating sign.
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    // chi = x - (order/2 + 1/4) pi, expanded to avoid cancellation in x - chi.
    let (cos_chi, sin_chi) = if order == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    let amp = (FRAC_2_PI / x).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}
