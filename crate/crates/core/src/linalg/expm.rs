//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant. Works unchanged for defective matrices.

use num_traits::Float;

use super::lu::Lu;
use super::matrix::{CMatrix, C64};

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled [13/13] approximant reaches
/// double precision.
const THETA13: f64 = 5.371_920_351_148_152;

/// `exp(a)`. Returns `None` if the Padé denominator is singular, which only
/// happens for non-finite input.
pub fn expm(a: &CMatrix) -> Option<CMatrix> {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return Some(a.clone());
    }
    if !a.is_finite() {
        return None;
    }
    let norm = a.norm_1();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale_real(0.5f64.powi(squarings));

    let id = CMatrix::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = |k: usize| C64::new(PADE13[k], 0.0);

    let inner_u = &(&a6.scale(b(13)) + &a4.scale(b(11))) + &a2.scale(b(9));
    let outer_u = &(&(&(&(&a6 * &inner_u) + &a6.scale(b(7))) + &a4.scale(b(5))) + &a2.scale(b(3)))
        + &id.scale(b(1));
    let u = &scaled * &outer_u;

    let inner_v = &(&a6.scale(b(12)) + &a4.scale(b(10))) + &a2.scale(b(8));
    let v = &(&(&(&(&a6 * &inner_v) + &a6.scale(b(6))) + &a4.scale(b(4))) + &a2.scale(b(2)))
        + &id.scale(b(0));

    let p = &v + &u;
    let q = &v - &u;
    let mut r = Lu::new(&q)?.solve(&p);
    for _ in 0..squarings {
        r = &r * &r;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_exponential() {
        let a = CMatrix::from_diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, -2.0)]);
        let e = expm(&a).unwrap();
        assert!((e[(0, 0)] - C64::new(1.0f64.exp(), 0.0)).norm() < 1e-14);
        assert!((e[(1, 1)] - C64::new(0.0, -2.0).exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn nilpotent_jordan_block() {
        // exp([[0, 1], [0, 0]] * 30) = [[1, 30], [0, 1]] even after scaling.
        let a = CMatrix::from_vec(
            2,
            2,
            alloc::vec![C64::new(0.0, 0.0), C64::new(30.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
        );
        let e = expm(&a).unwrap();
        assert!((e[(0, 1)] - C64::new(30.0, 0.0)).norm() < 1e-12);
        assert!((e[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn rotation_generator() {
        // exp(-i θ σ_y) for a large angle exercises the squaring phase.
        let th = 40.0;
        let a = CMatrix::from_vec(
            2,
            2,
            alloc::vec![C64::new(0.0, 0.0), C64::new(-th, 0.0), C64::new(th, 0.0), C64::new(0.0, 0.0)],
        );
        let e = expm(&a).unwrap();
        assert!((e[(0, 0)].re - th.cos()).abs() < 1e-12);
        assert!((e[(1, 0)].re - th.sin()).abs() < 1e-12);
    }
}
