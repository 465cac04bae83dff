//! Closed-form and series oracles for the built-in families, in plain machine
//! integers. Deliberately independent of the recurrence code they check.
#![allow(dead_code)]

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Eulerian polynomial E_n from `sum_k (k+1)^n q^k = E_n(q) / (1-q)^(n+1)`,
/// via truncated power-series multiplication.
pub fn eulerian(n: u32) -> Vec<i128> {
    let len = n as usize + 1;
    let series: Vec<i128> = (0..len).map(|k| (k as i128 + 1).pow(n)).collect();
    let factor: Vec<i128> = (0..len)
        .map(|i| {
            let c = binomial(n as i128 + 1, i as i128);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let mut out = vec![0i128; len];
    for i in 0..len {
        for j in 0..=i {
            out[i] += series[j] * factor[i - j];
        }
    }
    trim(out)
}

/// Schroeder polynomial `R_n(q) = sum_k binom(n+k, n-k) binom(2k, k)/(k+1) q^k`.
pub fn schroder(n: u32) -> Vec<i128> {
    let n = n as i128;
    trim(
        (0..=n)
            .map(|k| binomial(n + k, n - k) * binomial(2 * k, k) / (k + 1))
            .collect(),
    )
}

/// Narayana polynomial `N_n(q) = sum_{k=1}^n binom(n, k-1) binom(n, k)/n q^k`,
/// with `N_0 = 1`.
pub fn narayana(n: u32) -> Vec<i128> {
    if n == 0 {
        return vec![1];
    }
    let n = n as i128;
    trim(
        (0..=n)
            .map(|k| {
                if k == 0 {
                    0
                } else {
                    binomial(n, k - 1) * binomial(n, k) / n
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod sanity {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(eulerian(0), vec![1]);
        assert_eq!(eulerian(3), vec![1, 4, 1]);
        assert_eq!(eulerian(4), vec![1, 11, 11, 1]);
        assert_eq!(schroder(1), vec![1, 1]);
        assert_eq!(schroder(2), vec![1, 3, 2]);
        assert_eq!(narayana(2), vec![0, 1, 1]);
        assert_eq!(narayana(3), vec![0, 1, 3, 1]);
        // Catalan and large Schroeder numbers at q = 1.
        assert_eq!(narayana(5).iter().sum::<i128>(), 42);
        assert_eq!(schroder(3).iter().sum::<i128>(), 22);
        // Eulerian coefficients sum to n!.
        assert_eq!(eulerian(6).iter().sum::<i128>(), 720);
    }
}
