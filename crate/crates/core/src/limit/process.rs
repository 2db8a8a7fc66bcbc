use crate::convex::{minkowski_sum, scale, ConvexBody};
use crate::error::{Error, Result};

/// Running Minkowski sum `Y_1 + … + Y_N` of the draws so far.
///
/// The sum is re-hulled after every extension, so its vertex list stays
/// minimal. In the plane the vertex count is bounded by the number of
/// distinct edge directions among the atoms.
#[derive(Clone, Debug, Default)]
pub struct MeanProcess {
    count: usize,
    running_sum: Option<ConvexBody>,
}

impl MeanProcess {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn running_sum(&self) -> Option<&ConvexBody> {
        self.running_sum.as_ref()
    }

    /// Adds one draw.
    pub fn extend(mut self, body: &ConvexBody) -> Result<Self> {
        self.push(body)?;
        Ok(self)
    }

    pub(crate) fn push(&mut self, body: &ConvexBody) -> Result<()> {
        self.running_sum = Some(match self.running_sum.take() {
            None => body.clone(),
            Some(sum) => minkowski_sum(&sum, body)?,
        });
        self.count += 1;
        Ok(())
    }

    /// The sample mean `(1/N) Σ Y_i`.
    pub fn mean(&self) -> Result<ConvexBody> {
        let sum = self
            .running_sum
            .as_ref()
            .ok_or(Error::Empty("mean process"))?;
        scale(sum, 1.0 / self.count as f64)
    }
}

/// Functional form of [`MeanProcess::extend`].
pub fn mean_process_extend(state: MeanProcess, body: &ConvexBody) -> Result<MeanProcess> {
    state.extend(body)
}
