use rand::seq::SliceRandom;
use rand::Rng;

/// Dense row-major square matrix.
pub type Matrix = Vec<Vec<f64>>;

pub fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Random ordering of the axes; consecutive disjoint pairs of it are the
/// rotation planes.
pub fn random_plane_order<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<usize> {
    let mut axes: Vec<usize> = (0..d).collect();
    axes.shuffle(rng);
    axes
}

/// Product of Givens rotations by `angle` in the planes
/// `(axes[0], axes[1]), (axes[2], axes[3]), ...`. With an odd dimension the
/// last listed axis is left alone.
pub fn givens_rotation(angle: f64, axes: &[usize]) -> Matrix {
    let mut r = identity(axes.len());
    let (s, c) = angle.sin_cos();
    for pair in axes.chunks_exact(2) {
        let (p, q) = (pair[0], pair[1]);
        // r <- r * G(p, q); G only touches columns p and q.
        for row in r.iter_mut() {
            let (a, b) = (row[p], row[q]);
            row[p] = a * c + b * s;
            row[q] = -a * s + b * c;
        }
    }
    r
}

/// Draw a plane order from `rng` and rotate by `angle` in every plane.
pub fn rotation_from_angle<R: Rng + ?Sized>(angle: f64, d: usize, rng: &mut R) -> Matrix {
    assert!(d >= 1, "dimension must be positive");
    if d == 1 {
        return identity(1);
    }
    givens_rotation(angle, &random_plane_order(d, rng))
}

/// `RᵀR = I` within `tol`, entry-wise.
pub fn is_orthonormal(r: &Matrix, tol: f64) -> bool {
    let d = r.len();
    (0..d).all(|i| {
        (0..d).all(|j| {
            let dot: f64 = (0..d).map(|k| r[k][i] * r[k][j]).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            (dot - expected).abs() <= tol
        })
    })
}
