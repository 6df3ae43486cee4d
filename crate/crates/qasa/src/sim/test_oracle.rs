//! Dense-matrix oracle used only by unit tests: builds the explicit
//! Hamiltonian matrices and exponentiates them by scaling-and-squaring,
//! fully independent of the layer kernels under test.

use num_complex::Complex64;

use super::BasisEnergyTable;

pub(crate) type DenseMatrix = Vec<Vec<Complex64>>;

pub(crate) fn problem_hamiltonian(table: &BasisEnergyTable) -> DenseMatrix {
    let dim = table.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (k, &e) in table.energies().iter().enumerate() {
        m[k][k] = Complex64::new(e, 0.0);
    }
    m
}

pub(crate) fn mixer_hamiltonian(n: usize) -> DenseMatrix {
    let dim = 1usize << n;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for k in 0..dim {
        for q in 0..n {
            m[k][k ^ (1 << q)] += Complex64::new(1.0, 0.0);
        }
    }
    m
}

fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let dim = a.len();
    let mut c = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..dim {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// `exp(i · factor · H) · v` by scaling-and-squaring with a Taylor core.
pub(crate) fn expm_times_vec(h: &DenseMatrix, factor: f64, v: &[Complex64]) -> Vec<Complex64> {
    let dim = h.len();
    let a: DenseMatrix = h
        .iter()
        .map(|row| row.iter().map(|x| x * Complex64::new(0.0, factor)).collect())
        .collect();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 0.5f64.powi(squarings as i32);
    let scaled: DenseMatrix =
        a.iter().map(|row| row.iter().map(|x| x * scale).collect()).collect();

    // Taylor series of exp(scaled).
    let mut result: DenseMatrix = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mut term = result.clone();
    for k in 1..=30 {
        term = matmul(&term, &scaled);
        let inv = 1.0 / k as f64;
        for row in &mut term {
            for x in row.iter_mut() {
                *x *= inv;
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }

    (0..dim)
        .map(|i| (0..dim).map(|j| result[i][j] * v[j]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_of_pauli_x_matches_closed_form() {
        // exp(i t X) = [[cos t, i sin t], [i sin t, cos t]]
        let h = mixer_hamiltonian(1);
        let t = 0.8;
        let v = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let out = expm_times_vec(&h, t, &v);
        assert!((out[0] - Complex64::new(t.cos(), 0.0)).norm() <= 1e-12);
        assert!((out[1] - Complex64::new(0.0, t.sin())).norm() <= 1e-12);
    }
}
