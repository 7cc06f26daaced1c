//! Cell grids aligned with the breakpoints of a step profile.

use rosenlab_core::StepProfile;

/// A partition of `[0, t_max]` into cells that never straddle a profile
/// breakpoint, together with the profile level on each cell.
#[derive(Debug, Clone)]
pub struct ProfileGrid {
    cells: Vec<(f64, f64)>,
    levels: Vec<f64>,
}

impl ProfileGrid {
    /// Cells as `(left, right)` endpoints, in increasing order.
    pub fn cells(&self) -> &[(f64, f64)] {
        &self.cells
    }

    /// Profile level on each cell.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Subdivide each profile interval uniformly, allocating roughly
/// `n_cells` cells over `[0, t_max]` in proportion to interval length.
/// Every interval receives at least one cell so no level is lost.
pub fn profile_grid(profile: &StepProfile, n_cells: usize) -> ProfileGrid {
    let t_max = profile.t_max();
    let breakpoints = profile.breakpoints();
    let levels = profile.levels();

    let mut cells = Vec::with_capacity(n_cells + breakpoints.len());
    let mut cell_levels = Vec::with_capacity(n_cells + breakpoints.len());
    for (j, window) in breakpoints.windows(2).enumerate() {
        let (a, b) = (window[0], window[1]);
        let share = (n_cells as f64 * (b - a) / t_max).round() as usize;
        let m = share.max(1);
        let h = (b - a) / m as f64;
        for i in 0..m {
            let left = a + i as f64 * h;
            let right = if i + 1 == m { b } else { a + (i + 1) as f64 * h };
            cells.push((left, right));
            cell_levels.push(levels[j]);
        }
    }
    ProfileGrid {
        cells,
        levels: cell_levels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_respects_breakpoints_and_levels() {
        let profile =
            StepProfile::from_coefficients(vec![0.25, 1.0], vec![1.0, -0.5]).unwrap();
        let grid = profile_grid(&profile, 100);
        assert!(grid.len() >= 100);
        // No cell straddles the interior breakpoint.
        for (cell, level) in grid.cells().iter().zip(grid.levels()) {
            assert!(cell.1 > cell.0);
            if cell.1 <= 0.25 + 1e-12 {
                assert_eq!(*level, 0.5); // 1.0 + (-0.5)
            } else {
                assert!(cell.0 >= 0.25 - 1e-12);
                assert_eq!(*level, -0.5);
            }
        }
        // Cells tile the support exactly.
        let total: f64 = grid.cells().iter().map(|(a, b)| b - a).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn short_interval_still_gets_a_cell() {
        let profile =
            StepProfile::from_coefficients(vec![1e-3, 1.0], vec![2.0, 1.0]).unwrap();
        let grid = profile_grid(&profile, 50);
        assert!(grid.levels().contains(&3.0));
    }
}
