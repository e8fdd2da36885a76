/// Neumaier's variant of Kahan compensated summation.
///
/// Unlike plain Kahan it stays accurate when an addend is larger in magnitude
/// than the running sum, which happens constantly in alternating series.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// How a long sum is accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Accumulation {
    #[default]
    Compensated,
    Naive,
}

/// Running sum that follows an [`Accumulation`] policy.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Accumulator {
    Compensated(NeumaierSum),
    Naive(f64),
}

impl Accumulator {
    pub(crate) fn new(policy: Accumulation) -> Self {
        match policy {
            Accumulation::Compensated => Accumulator::Compensated(NeumaierSum::new()),
            Accumulation::Naive => Accumulator::Naive(0.0),
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, value: f64) {
        match self {
            Accumulator::Compensated(s) => s.add(value),
            Accumulator::Naive(s) => *s += value,
        }
    }

    pub(crate) fn value(&self) -> f64 {
        match self {
            Accumulator::Compensated(s) => s.value(),
            Accumulator::Naive(s) => *s,
        }
    }
}
