use crate::{Error, Result};

/// Percentage by which `c_a` improves on `c_b`: `(c_b - c_a) / c_b * 100`.
pub fn performance_improvement(c_a: f64, c_b: f64) -> Result<f64> {
    if c_b == 0.0 {
        return Err(Error::UndefinedMetric(
            "performance improvement against a zero baseline".into(),
        ));
    }
    Ok((c_b - c_a) / c_b * 100.0)
}

/// Sign-test tally over paired samples: how many pairs have `a < b`.
pub fn paired_wins(a: &[f64], b: &[f64]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x < y).count()
}

pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}
