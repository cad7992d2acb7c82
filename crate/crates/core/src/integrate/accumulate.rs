use serde::{Deserialize, Serialize};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn absorb(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Weighted sums for one metric over one block of points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockResult {
    pub count: u64,
    pub sum_w_metric: f64,
    pub sum_w_metric_sep: f64,
    pub sum_w_bures: f64,
    pub sum_w_bures_sep: f64,
    pub sumsq_w_metric: f64,
    pub sumsq_w_metric_sep: f64,
    pub sumsq_w_bures: f64,
    pub sumsq_w_bures_sep: f64,
    pub max_single_weight: f64,
}

impl BlockResult {
    pub fn empty() -> Self {
        BlockResult {
            count: 0,
            sum_w_metric: 0.0,
            sum_w_metric_sep: 0.0,
            sum_w_bures: 0.0,
            sum_w_bures_sep: 0.0,
            sumsq_w_metric: 0.0,
            sumsq_w_metric_sep: 0.0,
            sumsq_w_bures: 0.0,
            sumsq_w_bures_sep: 0.0,
            max_single_weight: 0.0,
        }
    }

    /// Every metric weight multiplied by `factor` (Bures weights untouched).
    pub fn scale_metric_weights(&self, factor: f64) -> Self {
        BlockResult {
            sum_w_metric: self.sum_w_metric * factor,
            sum_w_metric_sep: self.sum_w_metric_sep * factor,
            sumsq_w_metric: self.sumsq_w_metric * factor * factor,
            sumsq_w_metric_sep: self.sumsq_w_metric_sep * factor * factor,
            max_single_weight: self.max_single_weight * factor,
            ..*self
        }
    }

    fn add(&self, o: &BlockResult) -> BlockResult {
        BlockResult {
            count: self.count + o.count,
            sum_w_metric: self.sum_w_metric + o.sum_w_metric,
            sum_w_metric_sep: self.sum_w_metric_sep + o.sum_w_metric_sep,
            sum_w_bures: self.sum_w_bures + o.sum_w_bures,
            sum_w_bures_sep: self.sum_w_bures_sep + o.sum_w_bures_sep,
            sumsq_w_metric: self.sumsq_w_metric + o.sumsq_w_metric,
            sumsq_w_metric_sep: self.sumsq_w_metric_sep + o.sumsq_w_metric_sep,
            sumsq_w_bures: self.sumsq_w_bures + o.sumsq_w_bures,
            sumsq_w_bures_sep: self.sumsq_w_bures_sep + o.sumsq_w_bures_sep,
            max_single_weight: self.max_single_weight.max(o.max_single_weight),
        }
    }
}

/// Componentwise sums and max, folded left to right.
///
/// # Panics
/// On an empty slice.
pub fn merge(results: &[BlockResult]) -> BlockResult {
    let (first, rest) = results.split_first().expect("merge of an empty list");
    rest.iter().fold(*first, |acc, r| acc.add(r))
}

/// Compensated accumulator for one metric inside a chunk of points.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Accumulator {
    count: u64,
    metric: CompensatedSum,
    metric_sep: CompensatedSum,
    bures: CompensatedSum,
    bures_sep: CompensatedSum,
    metric_sq: CompensatedSum,
    metric_sep_sq: CompensatedSum,
    bures_sq: CompensatedSum,
    bures_sep_sq: CompensatedSum,
    max: f64,
}

impl Accumulator {
    pub fn push(&mut self, w_metric: f64, w_bures: f64, separable: bool) {
        self.count += 1;
        self.metric.add(w_metric);
        self.bures.add(w_bures);
        self.metric_sq.add(w_metric * w_metric);
        self.bures_sq.add(w_bures * w_bures);
        if separable {
            self.metric_sep.add(w_metric);
            self.bures_sep.add(w_bures);
            self.metric_sep_sq.add(w_metric * w_metric);
            self.bures_sep_sq.add(w_bures * w_bures);
        }
        self.max = self.max.max(w_metric);
    }

    pub fn absorb(&mut self, o: &Accumulator) {
        self.count += o.count;
        self.metric.absorb(&o.metric);
        self.metric_sep.absorb(&o.metric_sep);
        self.bures.absorb(&o.bures);
        self.bures_sep.absorb(&o.bures_sep);
        self.metric_sq.absorb(&o.metric_sq);
        self.metric_sep_sq.absorb(&o.metric_sep_sq);
        self.bures_sq.absorb(&o.bures_sq);
        self.bures_sep_sq.absorb(&o.bures_sep_sq);
        self.max = self.max.max(o.max);
    }

    pub fn finish(&self) -> BlockResult {
        BlockResult {
            count: self.count,
            sum_w_metric: self.metric.value(),
            sum_w_metric_sep: self.metric_sep.value(),
            sum_w_bures: self.bures.value(),
            sum_w_bures_sep: self.bures_sep.value(),
            sumsq_w_metric: self.metric_sq.value(),
            sumsq_w_metric_sep: self.metric_sep_sq.value(),
            sumsq_w_bures: self.bures_sq.value(),
            sumsq_w_bures_sep: self.bures_sep_sq.value(),
            max_single_weight: self.max,
        }
    }
}
