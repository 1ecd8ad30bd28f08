use std::f64::consts::PI;

use num_complex::Complex64;

/// `F(l) = sum_j e^{-i 2 pi j l / N} x_j`, evaluated term by term in
/// `O(N^2)`.
pub fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|l| {
            x.iter()
                .enumerate()
                .map(|(j, &xj)| {
                    // Reduce j*l mod n first so the angle stays small.
                    let phase = -2.0 * PI * ((j * l) % n) as f64 / n as f64;
                    Complex64::from_polar(1.0, phase) * xj
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_gives_ones() {
        let mut x = vec![Complex64::new(0.0, 0.0); 5];
        x[0] = Complex64::new(1.0, 0.0);
        assert!(naive_dft(&x).iter().all(|z| (z - 1.0).norm() < 1e-15));
    }

    #[test]
    fn single_mode() {
        let n = 8;
        let x: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * 3.0 * j as f64 / n as f64))
            .collect();
        let y = naive_dft(&x);
        for (l, z) in y.iter().enumerate() {
            let expected = if l == 3 { n as f64 } else { 0.0 };
            assert!((z - expected).norm() < 1e-12);
        }
    }
}
