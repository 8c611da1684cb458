/// sin(x)/x with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

pub fn sinc2(x: f64) -> f64 {
    let s = sinc(x);
    s * s
}

/// Phase-matching weight sinc²[T·detuning/2] used for the entangled pump.
pub fn theta(entanglement_time: f64, anharmonicity: f64) -> f64 {
    sinc2(entanglement_time * anharmonicity / 2.0)
}

/// `n` log-spaced points covering [lo, hi], endpoints included.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > 0.0);
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
