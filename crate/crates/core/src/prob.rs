use std::fmt;

/// Which evaluation route produced a probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalPath {
    /// Finite sum of probability masses.
    DirectSum,
    /// Regularized incomplete Beta function.
    IncompleteBeta,
}

impl fmt::Display for EvalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPath::DirectSum => f.write_str("direct-sum"),
            EvalPath::IncompleteBeta => f.write_str("incomplete-beta"),
        }
    }
}

/// A probability in `[0, 1]` tagged with the route that computed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbValue {
    value: f64,
    path: EvalPath,
}

impl ProbValue {
    /// Wraps `value`, clamping rounding excursions just outside `[0, 1]`.
    ///
    /// Panics in debug builds if `value` is NaN or strays more than a few ulps outside the unit interval.
    pub(crate) fn new(value: f64, path: EvalPath) -> Self {
        debug_assert!(
            (-1e-12..=1.0 + 1e-12).contains(&value),
            "probability {value} out of range"
        );
        Self {
            value: value.clamp(0.0, 1.0),
            path,
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    pub fn path(&self) -> EvalPath {
        self.path
    }
}

impl From<ProbValue> for f64 {
    fn from(p: ProbValue) -> f64 {
        p.value
    }
}
