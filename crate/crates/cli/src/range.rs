use std::str::FromStr;

/// Inclusive arithmetic grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

// Slack when deciding whether `stop` is reached, in units of `step`.
const ENDPOINT_SLACK: f64 = 1e-9;

impl Range {
    pub fn single(v: f64) -> Self {
        Self {
            start: v,
            stop: v,
            step: 1.0,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + ENDPOINT_SLACK).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(format!("range '{s}' must look like start:stop:step"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("range '{s}': '{t}': {e}"));
        let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(format!("range '{s}' has a non-finite bound"));
        }
        if step <= 0.0 {
            return Err(format!("range '{s}': step must be > 0"));
        }
        if stop < start {
            return Err(format!("range '{s}' is empty (stop < start)"));
        }
        Ok(Self { start, stop, step })
    }
}
