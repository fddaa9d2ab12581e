//! Quadratic least squares over (x, y) points.

/// Coefficients of `y = a x² + b x + c` and the coefficient of
/// determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r_squared: f64,
}

/// Fits `y = a x² + b x + c` by solving the normal equations. Returns `None`
/// with fewer than three distinct x values.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Option<QuadraticFit> {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return None;
    }

    // Normal equations A^T A w = A^T y for the Vandermonde design [x², x, 1].
    let n = points.len() as f64;
    let (mut s1, mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0, 0.0);
    let (mut sy, mut sxy, mut sx2y) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        sy += y;
        sxy += x * y;
        sx2y += x2 * y;
    }
    let mut m = [
        [s4, s3, s2, sx2y],
        [s3, s2, s1, sxy],
        [s2, s1, n, sy],
    ];

    // Gaussian elimination with partial pivoting.
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let factor = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= factor * m[col][k];
                }
            }
        }
    }
    let a = m[0][3] / m[0][0];
    let b = m[1][3] / m[1][1];
    let c = m[2][3] / m[2][2];

    let mean = sy / n;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for &(x, y) in points {
        let predicted = a * x * x + b * x + c;
        ss_res += (y - predicted) * (y - predicted);
        ss_tot += (y - mean) * (y - mean);
    }
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(QuadraticFit { a, b, c, r_squared })
}

/// Mean y per distinct x, sorted by x — the points the benchmark fit runs on.
pub fn mean_per_x(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i].0;
        let mut sum = 0.0;
        let mut count = 0.0;
        while i < sorted.len() && sorted[i].0 == x {
            sum += sorted[i].1;
            count += 1.0;
            i += 1;
        }
        out.push((x, sum / count));
    }
    out
}
