//! Reference implementations that share no code with the library.

#![allow(dead_code)]

/// Central segment of `x` and the shifted `y` window, materialized by index.
pub fn shifted_pair<T: Copy>(x: &[T], y: &[T], n: usize, shift: i64) -> (Vec<T>, Vec<T>) {
    let d = x.len() - 2 * n;
    let mut xs = Vec::with_capacity(d);
    let mut ys = Vec::with_capacity(d);
    for t in 0..d {
        xs.push(x[n + t]);
        ys.push(y[(shift + n as i64 + t as i64) as usize]);
    }
    (xs, ys)
}

pub fn log_odds_oracle(x: &[u32], y: &[u32], eps: f64) -> f64 {
    let mut c = [[0u64; 2]; 2];
    for t in 0..x.len() {
        c[x[t] as usize][y[t] as usize] += 1;
    }
    let cell = |i: usize, j: usize| eps + c[i][j] as f64;
    ((cell(0, 0) * cell(1, 1)) / (cell(0, 1) * cell(1, 0))).ln()
}

/// Textbook two-pass Pearson correlation.
pub fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..x.len() {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Rank of each value by counting: 1 + #smaller + (#equal - 1) / 2.
pub fn mid_rank_oracle(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|a| {
            let less = v.iter().filter(|b| *b < a).count() as f64;
            let equal = v.iter().filter(|b| *b == a).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

pub fn spearman_oracle(x: &[f64], y: &[f64]) -> f64 {
    pearson_oracle(&mid_rank_oracle(x), &mid_rank_oracle(y))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Two-sided Fisher p-value by full enumeration with exact integer
/// comparison of point probabilities. `(a, b, c, d) = (c00, c01, c10, c11)`.
pub fn fisher_oracle(a: u64, b: u64, c: u64, d: u64) -> f64 {
    let (r1, r2, c1) = (a + b, c + d, a + c);
    let n = r1 + r2;
    let weight = |k: u64| binomial(r1, k) * binomial(r2, c1 - k);
    let observed = weight(a);
    let total = binomial(n, c1);
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);
    let extreme: u128 = (lo..=hi).map(weight).filter(|&w| w <= observed).sum();
    extreme as f64 / total as f64
}

/// Direct count of `(M, N)`-local maxima among `start..=start + n`.
pub fn local_maxima_scan(seq: &[f64], start: usize, m_bound: usize, n: usize) -> usize {
    let mut count = 0;
    for t in start..=start + n {
        let mut ge = 0;
        for s in t - n..=t + n {
            if seq[s] >= seq[t] {
                ge += 1;
            }
        }
        if ge <= m_bound {
            count += 1;
        }
    }
    count
}

/// Splitmix64, used only to draw test data.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn gaussian(&mut self) -> f64 {
        let u1 = self.uniform().max(f64::MIN_POSITIVE);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
