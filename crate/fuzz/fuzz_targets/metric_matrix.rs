//! Fuzzes the distance-matrix validator: arbitrary bytes decoded into a
//! square matrix must produce a clean accept-or-violation answer, never a
//! panic, and accepted matrices must satisfy the pseudometric axioms.

#![no_main]

use libfuzzer_sys::fuzz_target;
use lipsel::metric::PseudoMetric;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let n = (data[0] % 8) as usize;
    let mut vals = data[1..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()));
    let d: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| vals.next().unwrap_or(0.0)).collect())
        .collect();
    let ids = (0..n).map(|i| format!("p{i}")).collect();
    if let Ok(m) = PseudoMetric::new(ids, d) {
        let mut max = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                max = max.max(m.dist(i, j).abs());
            }
        }
        let slack = 1e-9 * (1.0 + max);
        for i in 0..n {
            assert_eq!(m.dist(i, i), 0.0);
            for j in 0..n {
                let v = m.dist(i, j);
                assert!(v.is_finite() && v >= 0.0);
                assert_eq!(v, m.dist(j, i));
                for k in 0..n {
                    assert!(v <= m.dist(i, k) + m.dist(k, j) + slack);
                }
            }
        }
    }
});
