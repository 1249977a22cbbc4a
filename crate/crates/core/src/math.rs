//! Scalar functions (libm-backed, so the crate stays `no_std`) and the small
//! fixed-size linear algebra the geometry needs.

pub type Vector<const N: usize> = [f64; N];
pub type Mat2 = [[f64; 2]; 2];

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}
#[inline]
pub fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}
#[inline]
pub fn tan(x: f64) -> f64 {
    libm::tan(x)
}
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

/// Inner product signature of the ambient space.
///
/// `Lorentzian` negates the last coordinate: `⟨x,y⟩ = x₁y₁+…+x_{N-1}y_{N-1} − x_N y_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Euclidean,
    Lorentzian,
}

impl Signature {
    #[inline]
    pub fn weight(self, i: usize, n: usize) -> f64 {
        match self {
            Signature::Lorentzian if i + 1 == n => -1.0,
            _ => 1.0,
        }
    }

    pub fn dot<const N: usize>(self, a: &Vector<N>, b: &Vector<N>) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            s += self.weight(i, N) * a[i] * b[i];
        }
        s
    }
}

#[inline]
pub fn dot<const N: usize>(a: &Vector<N>, b: &Vector<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        s += a[i] * b[i];
    }
    s
}

#[inline]
pub fn norm<const N: usize>(a: &Vector<N>) -> f64 {
    sqrt(dot(a, a))
}

#[inline]
pub fn add<const N: usize>(a: &Vector<N>, b: &Vector<N>) -> Vector<N> {
    core::array::from_fn(|i| a[i] + b[i])
}

#[inline]
pub fn sub<const N: usize>(a: &Vector<N>, b: &Vector<N>) -> Vector<N> {
    core::array::from_fn(|i| a[i] - b[i])
}

#[inline]
pub fn scale<const N: usize>(s: f64, a: &Vector<N>) -> Vector<N> {
    core::array::from_fn(|i| s * a[i])
}

/// `a + s·b`
#[inline]
pub fn axpy<const N: usize>(a: &Vector<N>, s: f64, b: &Vector<N>) -> Vector<N> {
    core::array::from_fn(|i| a[i] + s * b[i])
}

#[inline]
pub fn max_abs<const N: usize>(a: &Vector<N>) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

#[inline]
pub fn unit<const N: usize>(i: usize) -> Vector<N> {
    core::array::from_fn(|k| if k == i { 1.0 } else { 0.0 })
}

/// Determinant of the matrix whose rows are `rows`, by Gaussian elimination
/// with partial pivoting.
pub fn det<const N: usize>(rows: &[Vector<N>; N]) -> f64 {
    let mut m = *rows;
    let mut d = 1.0;
    for col in 0..N {
        let mut piv = col;
        for r in col + 1..N {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        d *= m[col][col];
        for r in col + 1..N {
            let f = m[r][col] / m[col][col];
            for c in col..N {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    d
}

/// Ternary cross product in R⁴: the vector `X(a,b,c)` with `⟨X, d⟩ = det[a,b,c,d]`.
///
/// `X` is orthogonal to `a`, `b`, `c` and `det[a,b,c,X] = ‖X‖² ≥ 0`.
pub fn cross4(a: &Vector<4>, b: &Vector<4>, c: &Vector<4>) -> Vector<4> {
    core::array::from_fn(|i| det(&[*a, *b, *c, unit::<4>(i)]))
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub fn mat2_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

pub fn mat2_scale(s: f64, a: &Mat2) -> Mat2 {
    [[s * a[0][0], s * a[0][1]], [s * a[1][0], s * a[1][1]]]
}

pub fn mat2_max_abs(a: &Mat2) -> f64 {
    a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
}

pub fn mat2_inv(a: &Mat2) -> Option<Mat2> {
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    Some([[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]])
}

/// Eigen-decomposition of a symmetric 2×2 matrix.
///
/// Returns `(λ_max, λ_min, v_max, v_min)` with unit eigenvectors.
pub fn sym2_eigen(m: &Mat2) -> (f64, f64, [f64; 2], [f64; 2]) {
    let a = m[0][0];
    let b = 0.5 * (m[0][1] + m[1][0]);
    let d = m[1][1];
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let rad = sqrt(half * half + b * b);
    let l1 = mean + rad;
    let l2 = mean - rad;
    // angle of the eigenvector for l1
    let theta = 0.5 * atan2(2.0 * b, a - d);
    let v1 = [cos(theta), sin(theta)];
    let v2 = [-v1[1], v1[0]];
    (l1, l2, v1, v2)
}

/// Cyclic Jacobi eigen-solver for a symmetric N×N matrix.
///
/// Returns eigenvalues and the matrix whose columns are the eigenvectors.
pub fn sym_eigen<const N: usize>(m: &[Vector<N>; N]) -> (Vector<N>, [Vector<N>; N]) {
    let mut a = *m;
    let mut v: [Vector<N>; N] = core::array::from_fn(unit::<N>);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..N {
            for q in p + 1..N {
                off += a[p][q] * a[p][q];
            }
        }
        let scale_sq: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-32 * scale_sq.max(1e-300) {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..N {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    (core::array::from_fn(|i| a[i][i]), v)
}
