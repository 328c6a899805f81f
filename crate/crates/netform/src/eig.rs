//! Dense real nonsymmetric eigenvalues for small matrices.
//!
//! Classic three-stage routine: Parlett–Reinsch balancing (diagonal
//! similarity scaling), elimination to upper Hessenberg form with partial
//! pivoting, then Francis double-shift QR iteration for the eigenvalues.
//! Jacobian blocks here are at most a few dozen rows, so a plain dense
//! routine is the right tool; no eigenvectors are needed.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        SquareMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Determinant by partial-pivot LU; used as an independent check on the
    /// eigenvalue product in tests.
    pub fn determinant(&self) -> T {
        let n = self.n;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if a.at(r, col).abs() > a.at(pivot, col).abs() {
                    pivot = r;
                }
            }
            if a.at(pivot, col) == T::zero() {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(col, j);
                    a.set(col, j, a.at(pivot, j));
                    a.set(pivot, j, tmp);
                }
                det = -det;
            }
            det *= a.at(col, col);
            for r in col + 1..n {
                let factor = a.at(r, col) / a.at(col, col);
                for j in col..n {
                    let v = a.at(r, j) - factor * a.at(col, j);
                    a.set(r, j, v);
                }
            }
        }
        det
    }
}

fn sign_of<T: Real>(magnitude: T, sign_source: T) -> T {
    if sign_source >= T::zero() {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Parlett–Reinsch balancing: scale rows/columns by powers of two so row and
/// column norms match. A diagonal similarity, so eigenvalues are unchanged.
fn balance<T: Real>(a: &mut SquareMatrix<T>) {
    let n = a.n();
    let radix = T::of(2.0);
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c += a.at(j, i).abs();
                    r += a.at(i, j).abs();
                }
            }
            if c != T::zero() && r != T::zero() {
                let mut g = r / radix;
                let mut f = T::one();
                let s = c + r;
                let mut c_scaled = c;
                while c_scaled < g {
                    f *= radix;
                    c_scaled *= sqrdx;
                }
                g = r * radix;
                while c_scaled > g {
                    f /= radix;
                    c_scaled /= sqrdx;
                }
                if (c_scaled + r) / f < T::of(0.95) * s {
                    done = false;
                    let g = T::one() / f;
                    for j in 0..n {
                        let v = a.at(i, j) * g;
                        a.set(i, j, v);
                    }
                    for j in 0..n {
                        let v = a.at(j, i) * f;
                        a.set(j, i, v);
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Reduce to upper Hessenberg form by stabilized elementary similarity
/// transformations, then zero the garbage below the subdiagonal.
fn hessenberg<T: Real>(a: &mut SquareMatrix<T>) {
    let n = a.n();
    if n < 3 {
        return;
    }
    for m in 1..n - 1 {
        let mut x = T::zero();
        let mut pivot = m;
        for j in m..n {
            if a.at(j, m - 1).abs() > x.abs() {
                x = a.at(j, m - 1);
                pivot = j;
            }
        }
        if pivot != m {
            for j in m - 1..n {
                let tmp = a.at(pivot, j);
                a.set(pivot, j, a.at(m, j));
                a.set(m, j, tmp);
            }
            for i in 0..n {
                let tmp = a.at(i, pivot);
                a.set(i, pivot, a.at(i, m));
                a.set(i, m, tmp);
            }
        }
        if x != T::zero() {
            for i in m + 1..n {
                let mut y = a.at(i, m - 1);
                if y != T::zero() {
                    y = y / x;
                    a.set(i, m - 1, y);
                    for j in m..n {
                        let v = a.at(i, j) - y * a.at(m, j);
                        a.set(i, j, v);
                    }
                    for j in 0..n {
                        let v = a.at(j, m) + y * a.at(j, i);
                        a.set(j, m, v);
                    }
                }
            }
        }
    }
    for i in 2..n {
        for j in 0..i - 1 {
            a.set(i, j, T::zero());
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
fn hqr<T: Real>(a: &mut SquareMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = a.n();
    let mut eig: Vec<Complex<T>> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eig);
    }
    let eps = T::epsilon();
    let mut anorm = T::zero();
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a.at(i, j).abs();
        }
    }

    let mut nn = n - 1;
    let mut t = T::zero();
    'outer: loop {
        let mut its = 0u32;
        loop {
            // Find a negligible subdiagonal entry to split the problem.
            let mut l = 0;
            for cand in (1..=nn).rev() {
                let mut s = a.at(cand - 1, cand - 1).abs() + a.at(cand, cand).abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a.at(cand, cand - 1).abs() <= eps * s {
                    a.set(cand, cand - 1, T::zero());
                    l = cand;
                    break;
                }
            }
            let mut x = a.at(nn, nn);
            if l == nn {
                // One real eigenvalue isolated.
                eig.push(Complex::new(x + t, T::zero()));
                if nn == 0 {
                    break 'outer;
                }
                nn -= 1;
                break;
            }
            let mut y = a.at(nn - 1, nn - 1);
            let mut w = a.at(nn, nn - 1) * a.at(nn - 1, nn);
            if l + 1 == nn {
                // A 2x2 block isolated: real pair or conjugate pair.
                let p = T::of(0.5) * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= T::zero() {
                    z = p + sign_of(z, p);
                    eig.push(Complex::new(x + z, T::zero()));
                    let second = if z != T::zero() { x - w / z } else { x + z };
                    eig.push(Complex::new(second, T::zero()));
                } else {
                    eig.push(Complex::new(x + p, z));
                    eig.push(Complex::new(x + p, -z));
                }
                if nn <= 1 {
                    break 'outer;
                }
                nn -= 2;
                break;
            }
            if its == 30 {
                return Err(Error::NoConvergence);
            }
            if its == 10 || its == 20 {
                // Exceptional shift to break symmetry-induced stalls.
                t += x;
                for i in 0..=nn {
                    let v = a.at(i, i) - x;
                    a.set(i, i, v);
                }
                let s = a.at(nn, nn - 1).abs() + a.at(nn - 1, nn - 2).abs();
                x = T::of(0.75) * s;
                y = x;
                w = -T::of(0.4375) * s * s;
            }
            its += 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a.at(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a.at(m + 1, m) + a.at(m, m + 1);
                q = a.at(m + 1, m + 1) - z - rr - ss;
                r = a.at(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a.at(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (a.at(m - 1, m - 1).abs() + z.abs() + a.at(m + 1, m + 1).abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a.set(i, i - 2, T::zero());
                if i != m + 2 {
                    a.set(i, i - 3, T::zero());
                }
            }
            // Double QR sweep on rows l..=nn, columns m..=nn.
            for k in m..nn {
                if k != m {
                    p = a.at(k, k - 1);
                    q = a.at(k + 1, k - 1);
                    r = if k != nn - 1 {
                        a.at(k + 2, k - 1)
                    } else {
                        T::zero()
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != T::zero() {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s == T::zero() {
                    continue;
                }
                if k == m {
                    if l != m {
                        let v = -a.at(k, k - 1);
                        a.set(k, k - 1, v);
                    }
                } else {
                    a.set(k, k - 1, -s * x);
                }
                p += s;
                x = p / s;
                let y2 = q / s;
                let z2 = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pj = a.at(k, j) + q * a.at(k + 1, j);
                    if k != nn - 1 {
                        pj += r * a.at(k + 2, j);
                        let v = a.at(k + 2, j) - pj * z2;
                        a.set(k + 2, j, v);
                    }
                    let v1 = a.at(k + 1, j) - pj * y2;
                    a.set(k + 1, j, v1);
                    let v0 = a.at(k, j) - pj * x;
                    a.set(k, j, v0);
                }
                let mmin = nn.min(k + 3);
                for i in l..=mmin {
                    let mut pi = x * a.at(i, k) + y2 * a.at(i, k + 1);
                    if k != nn - 1 {
                        pi += z2 * a.at(i, k + 2);
                        let v = a.at(i, k + 2) - pi * r;
                        a.set(i, k + 2, v);
                    }
                    let v1 = a.at(i, k + 1) - pi * q;
                    a.set(i, k + 1, v1);
                    let v0 = a.at(i, k) - pi;
                    a.set(i, k, v0);
                }
            }
        }
    }
    Ok(eig)
}

/// All eigenvalues of a real square matrix, sorted by (real, imaginary).
pub fn eigenvalues<T: Real>(matrix: &SquareMatrix<T>) -> Result<Vec<Complex<T>>> {
    let mut work = matrix.clone();
    balance(&mut work);
    hessenberg(&mut work);
    let mut eig = hqr(&mut work)?;
    eig.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(eig)
}

/// Largest real part in a spectrum.
pub fn max_real_part<T: Real>(spectrum: &[Complex<T>]) -> T {
    spectrum
        .iter()
        .map(|z| z.re)
        .fold(T::neg_infinity(), T::max)
}
