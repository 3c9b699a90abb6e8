//! Gaussian coefficients and the spectrum of the Grassmann graph.

/// `[m]_q = (q^m - 1)/(q - 1)`, with `[0] = 0`.
pub fn q_int(m: u32, q: u64) -> u128 {
    (0..m).map(|i| (q as u128).pow(i)).sum()
}

/// Number of `k`-subspaces of `F_q^n`; zero when `k > n`.
///
/// Panics on `u128` overflow, far beyond any enumerable case.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q_int(n - i, q)).expect("gaussian binomial overflow");
        den = den.checked_mul(q_int(k - i, q)).expect("gaussian binomial overflow");
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num / den
}

/// Signed variant returning 0 for negative arguments.
pub fn gauss_i(n: i64, k: i64, q: u64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        gaussian_binomial(n as u32, k as u32, q)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Eigenvalue of `J_q(n,k)` on the eigenspace `V_j`:
/// `q^(j+1) [k-j][n-k-j] - [j]`. Parameters with `k > n/2` are dualized.
pub fn eigenvalue_grassmann(j: u32, n: u32, k: u32, q: u64) -> i128 {
    let k = if 2 * k > n { n - k } else { k };
    assert!(j <= k, "eigenspace index out of range");
    let lead = (q as i128).pow(j + 1) * q_int(k - j, q) as i128 * q_int(n - k - j, q) as i128;
    lead - q_int(j, q) as i128
}

/// All eigenvalues `theta_0 > ... > theta_min(k, n-k)`.
pub fn grassmann_spectrum(n: u32, k: u32, q: u64) -> Vec<i128> {
    let kk = k.min(n - k);
    (0..=kk).map(|j| eigenvalue_grassmann(j, n, k, q)).collect()
}

/// Dimension of `V_j`: `Gauss(n,j) - Gauss(n,j-1)`.
pub fn eigenspace_dimension(j: u32, n: u32, q: u64) -> u128 {
    let lower = if j == 0 { 0 } else { gaussian_binomial(n, j - 1, q) };
    gaussian_binomial(n, j, q) - lower
}

/// Number of `d`-subspaces of `F_q^k` meeting a fixed `w`-subspace in exactly
/// `j` dimensions.
pub fn count_meeting(k: u32, w: u32, d: u32, j: u32, q: u64) -> u128 {
    if j > d || j > w || d - j > k - w {
        return 0;
    }
    (q as u128).pow((d - j) * (w - j)) * gaussian_binomial(w, j, q) * gaussian_binomial(k - w, d - j, q)
}
