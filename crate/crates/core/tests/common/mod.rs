#![allow(dead_code)]

use bogoliubov_core::{CMatrix, QuadraticForm, C64};
use proptest::prelude::*;

/// Hermitian `A` and symmetric `B` from `4n²` numbers in `[-1, 1]`,
/// with `shift · I` added to `A`.
pub fn form_from(n: usize, raw: &[f64], shift: f64, pairing: f64) -> QuadraticForm {
    let mut k = 0;
    let mut next = || {
        let v = raw[k % raw.len()];
        k += 1;
        v
    };
    let mut a = CMatrix::zeros(n, n);
    let mut b = CMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = C64::new(next() + shift, 0.0);
        for j in i + 1..n {
            let z = C64::new(next(), next());
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
        for j in i..n {
            let z = C64::new(next(), next()) * pairing;
            b[(i, j)] = z;
            b[(j, i)] = z;
        }
    }
    QuadraticForm::new(a, b).expect("constructed with exact symmetry")
}

pub fn raw_entries() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (1usize..=3, prop::collection::vec(-1.0f64..1.0, 36))
}

/// Forms whose extended matrix is positive definite.
pub fn positive_form() -> impl Strategy<Value = QuadraticForm> {
    raw_entries().prop_map(|(n, raw)| form_from(n, &raw, 3.0 * n as f64 + 1.0, 1.0))
}

/// Forms with no sign constraint.
pub fn any_form() -> impl Strategy<Value = QuadraticForm> {
    raw_entries().prop_map(|(n, raw)| form_from(n, &raw, 0.0, 1.5))
}

pub fn sorted(mut v: Vec<C64>) -> Vec<C64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Largest distance between two multisets under greedy nearest matching.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}
