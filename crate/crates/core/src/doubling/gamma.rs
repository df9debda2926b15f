use alloc::vec;
use alloc::vec::Vec;

/// Positions of a window grouped by class, with prefix sums of the sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaProfile {
    pub start: usize,
    pub len: usize,
    /// `gamma[j]`: offsets `i` in the window whose shift has class `j`.
    pub gamma: Vec<Vec<usize>>,
    /// `sums[j] = |γ_0| + ... + |γ_j|`.
    pub sums: Vec<usize>,
}

impl GammaProfile {
    pub fn from_classes(start: usize, classes: &[usize], class_count: usize) -> Self {
        let mut gamma = vec![Vec::new(); class_count];
        for (i, &j) in classes.iter().enumerate() {
            gamma[j].push(i);
        }
        let sums = gamma
            .iter()
            .scan(0, |acc, g| {
                *acc += g.len();
                Some(*acc)
            })
            .collect();
        Self {
            start,
            len: classes.len(),
            gamma,
            sums,
        }
    }

    /// `S_j`.
    pub fn s(&self, j: usize) -> usize {
        self.sums[j]
    }

    /// `S_{j-1}`, with `S_{-1} = 0`.
    pub fn s_before(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.sums[j - 1]
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.gamma.iter().map(Vec::len).collect()
    }

    /// First class with no position in the window.
    pub fn missing_class(&self) -> Option<usize> {
        self.gamma.iter().position(Vec::is_empty)
    }
}
