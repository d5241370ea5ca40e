use super::path::StepPath;
use crate::scalar::Real;

/// Completed graph of a step path as an axis-aligned polyline in graph order:
/// horizontal runs between jumps and a vertical segment from `g(t-)` to
/// `g(t)` at every jump.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletedGraph<T> {
    vertices: Vec<(T, T)>,
}

impl<T: Real> CompletedGraph<T> {
    pub fn vertices(&self) -> &[(T, T)] {
        &self.vertices
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Whether `(t, x)` lies on the graph, i.e. `x` between `g(t-)` and `g(t)`.
    pub fn contains(&self, path: &StepPath<T>, t: T, x: T) -> bool {
        if t < path.start() || t > path.domain_end() {
            return false;
        }
        let a = path.left_limit(t);
        let b = path.eval(t);
        x >= a.min(b) && x <= a.max(b)
    }
}

pub fn completed_graph<T: Real>(g: &StepPath<T>) -> CompletedGraph<T> {
    let mut vertices = Vec::with_capacity(2 * g.jump_count() + 2);
    vertices.push((g.start(), g.initial_value()));
    for (t, before, after) in g.jumps() {
        vertices.push((t, before));
        vertices.push((t, after));
    }
    // Kept even after a jump at the terminal time, as a zero-length
    // segment, so that m jumps always give 2m + 2 vertices.
    vertices.push((g.domain_end(), g.final_value()));
    CompletedGraph { vertices }
}
