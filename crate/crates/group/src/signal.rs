use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{GroupError, Result};
use crate::group::Group;

/// A complex-valued function on a finite group, indexed by element index.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    group: Arc<Group>,
    values: Vec<Complex64>,
}

impl Signal {
    pub fn new(group: Arc<Group>, values: Vec<Complex64>) -> Result<Signal> {
        if values.len() != group.order() {
            return Err(GroupError::StructureMismatch(format!(
                "signal of length {} on group of order {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(GroupError::StructureMismatch(
                "signal contains non-finite entries".into(),
            ));
        }
        Ok(Signal { group, values })
    }

    pub fn zeros(group: Arc<Group>) -> Signal {
        let n = group.order();
        Signal {
            group,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// The point mass at element `at`.
    pub fn delta(group: Arc<Group>, at: usize) -> Signal {
        let mut s = Signal::zeros(group);
        s.values[at] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, e: usize) -> Complex64 {
        self.values[e]
    }

    pub fn set(&mut self, e: usize, v: Complex64) {
        self.values[e] = v;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other> = sum self(x) conj(other(x))`.
    pub fn inner(&self, other: &Signal) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scaled(&self, c: Complex64) -> Signal {
        Signal {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Signal) -> Signal {
        Signal {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Signal) -> Signal {
        Signal {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn same_group(&self, other: &Signal) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group.as_ref() == other.group.as_ref()
    }
}

/// A finite ordered family of generators on a common group.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorFamily {
    signals: Vec<Signal>,
}

impl GeneratorFamily {
    pub fn new(signals: Vec<Signal>) -> Result<GeneratorFamily> {
        let first = signals.first().ok_or_else(|| {
            GroupError::StructureMismatch("generator family must be nonempty".into())
        })?;
        for s in &signals[1..] {
            if !first.same_group(s) {
                return Err(GroupError::StructureMismatch(
                    "generator family mixes groups".into(),
                ));
            }
        }
        Ok(GeneratorFamily { signals })
    }

    pub fn group(&self) -> &Arc<Group> {
        self.signals[0].group()
    }

    pub fn len(&self) -> usize {
        self.signals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signals.is_empty()
    }

    pub fn signals(&self) -> &[Signal] {
        &self.signals
    }

    pub fn signal(&self, t: usize) -> &Signal {
        &self.signals[t]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Signal> {
        self.signals.iter()
    }
}
