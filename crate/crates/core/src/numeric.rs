//! Small numerical helpers shared across modules.

/// `ln sum exp(x_i)`, ignoring `-inf` terms. Returns `-inf` for an empty sum.
pub fn logsumexp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Lagrange interpolation weights at `x` for the given distinct nodes.
pub fn lagrange_weights(nodes: &[f64], x: f64) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| (x - xj) / (xi - xj))
                .product()
        })
        .collect()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre(q: usize) -> Vec<(f64, f64)> {
    (0..q)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                // three-term recurrence for P_q and its derivative
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=q {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let pq = if q == 0 {
                    1.0
                } else if q == 1 {
                    x
                } else {
                    p1
                };
                let pm = if q == 1 { 1.0 } else { p0 };
                dp = q as f64 * (x * pq - pm) / (x * x - 1.0);
                let step = pq / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Weights `w_i = int_a^b l_i(s) ds` of the Lagrange basis on `nodes`, by
/// Gauss-Legendre quadrature exact for the basis degree.
fn basis_integrals(nodes: &[f64], a: f64, b: f64) -> Vec<f64> {
    let m = nodes.len();
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let mut w = vec![0.0; m];
    for (x, gw) in gauss_legendre(m.div_ceil(2).max(1)) {
        for (wi, li) in w.iter_mut().zip(lagrange_weights(nodes, mid + half * x)) {
            *wi += gw * half * li;
        }
    }
    w
}

/// Order of the local interpolant used by [`cumulative_integral`].
pub const CUMULATIVE_STENCIL: usize = 20;

/// Running integral of uniformly spaced cell-centered samples.
///
/// Entry `j` approximates `int_{x_0 - dx/2}^{x_j} f`, integrating a local
/// interpolant of degree `CUMULATIVE_STENCIL - 1` across each cell.
pub fn cumulative_integral<T>(values: &[T], dx: f64) -> Vec<T>
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let n = values.len();
    let m = CUMULATIVE_STENCIL.min(n);
    let stencil_start = |cell: usize| -> usize {
        // stencil around [cell, cell+1], clamped to the array
        let lo = (cell + 1).saturating_sub(m / 2);
        lo.min(n - m)
    };
    // nodes in stencil-local coordinates; absolute indices make the basis
    // integrals ill-conditioned near the far end of long arrays
    let local = |start: usize, a: f64, b: f64| -> T {
        let nodes: Vec<f64> = (0..m).map(|k| k as f64).collect();
        let w = basis_integrals(&nodes, a - start as f64, b - start as f64);
        w.iter()
            .zip(&values[start..start + m])
            .fold(T::default(), |acc, (wi, v)| acc + *v * (wi * dx))
    };
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut acc = local(0, -0.5, 0.0);
    out.push(acc);
    // interior stencils share weights up to translation
    let interior: Vec<f64> = {
        let nodes: Vec<f64> = (0..m).map(|k| k as f64).collect();
        let c = (m / 2 - 1) as f64;
        basis_integrals(&nodes, c, c + 1.0)
    };
    for cell in 0..n - 1 {
        let start = stencil_start(cell);
        let piece = if start + m / 2 == cell + 1 && m == CUMULATIVE_STENCIL {
            interior
                .iter()
                .zip(&values[start..start + m])
                .fold(T::default(), |acc, (wi, v)| acc + *v * (wi * dx))
        } else {
            local(start, cell as f64, cell as f64 + 1.0)
        };
        acc = acc + piece;
        out.push(acc);
    }
    out
}

/// Full integral of cell-centered samples: the midpoint rule, which is
/// spectrally accurate for smooth rapidly decaying data.
pub fn midpoint_sum<T>(values: &[T], dx: f64) -> T
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    values.iter().fold(T::default(), |acc, v| acc + *v) * dx
}

/// `n` equally spaced points from `a` to `b` inclusive; the last is exactly `b`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Whether `times` are uniformly spaced to relative tolerance `1e-9`.
pub fn is_uniform(times: &[f64]) -> bool {
    if times.len() < 2 {
        return true;
    }
    let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    dt > 0.0
        && times
            .windows(2)
            .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.abs().max(1e-300))
}
