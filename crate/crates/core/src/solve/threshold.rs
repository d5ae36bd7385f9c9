use crate::error::{param_err, Result};

/// Closed-form value of the 2-packing number of K(3r - t, r), where known:
/// 3 when t <= (r + 5) / 5 and 4 when (r + 5) / 5 < t <= (2r + 9) / 9.
pub fn threshold_predictions(r: u32, t: u32) -> Result<Option<u64>> {
    if t < 2 || t + 1 > r {
        return param_err(format!("threshold needs 2 <= t <= r - 1, got r = {r}, t = {t}"));
    }
    let (r, t) = (r as u64, t as u64);
    if 5 * t <= r + 5 {
        Ok(Some(3))
    } else if 9 * t <= 2 * r + 9 {
        Ok(Some(4))
    } else {
        Ok(None)
    }
}

/// The same ranges stated in n: 3 when 14r/5 - 1 <= n <= 3r - 2 and 4 when
/// 25r/9 - 1 <= n < 14r/5 - 1.
pub fn corollary_prediction(n: u32, r: u32) -> Option<u64> {
    let (n, r) = (n as u64, r as u64);
    if n + 2 > 3 * r {
        return None;
    }
    if 14 * r <= 5 * (n + 1) {
        Some(3)
    } else if 25 * r <= 9 * (n + 1) {
        Some(4)
    } else {
        None
    }
}
