//! Exact measure expansion of the shears `a_k^{±1}, b_k^{±1}` on ℤ².

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Check {
    pub size: usize,
    pub image_size: usize,
    pub passes: bool,
}

/// Size of `a_k A ∪ a_k⁻¹ A ∪ b_k A ∪ b_k⁻¹ A`, compared to `2|A|`.
/// Duplicate entries of `points` are ignored.
pub fn z2_expansion_check(points: &[(i64, i64)], k: i64) -> Result<Z2Check> {
    let set: HashSet<(i64, i64)> = points.iter().copied().collect();
    if set.contains(&(0, 0)) {
        return Err(Error::ContainsOrigin);
    }
    let mut image: HashSet<(i64, i64)> = HashSet::with_capacity(4 * set.len());
    for &(x, y) in &set {
        image.insert((x + k * y, y));
        image.insert((x - k * y, y));
        image.insert((x, y + k * x));
        image.insert((x, y - k * x));
    }
    Ok(Z2Check { size: set.len(), image_size: image.len(), passes: image.len() >= 2 * set.len() })
}

/// Random finite subset of `[-bound, bound]² ∖ {0}` with between 1 and
/// `max_size` draws, taken from stream `index` of `seed`.
pub fn random_z2_set(seed: u64, index: u64, max_size: usize, bound: i64) -> Vec<(i64, i64)> {
    let mut r = rng::stream(seed, index);
    let count = r.gen_range(1..=max_size);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = (r.gen_range(-bound..=bound), r.gen_range(-bound..=bound));
        if p != (0, 0) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let c = z2_expansion_check(&[(1, 0)], 1).unwrap();
        assert_eq!((c.size, c.image_size, c.passes), (1, 3, true));
    }

    #[test]
    fn quadrant_block() {
        let a: Vec<(i64, i64)> =
            (1..=5).flat_map(|x| (0..=5).map(move |y| (x, y))).filter(|&p| p != (0, 0)).collect();
        let c = z2_expansion_check(&a, 2).unwrap();
        assert!(c.passes);
        assert_eq!(c.size, 30);
    }

    #[test]
    fn origin_rejected() {
        assert_eq!(z2_expansion_check(&[(0, 0)], 1).unwrap_err().name(), "ContainsOrigin");
    }

    #[test]
    fn random_sets_are_reproducible() {
        assert_eq!(random_z2_set(7, 3, 64, 1000), random_z2_set(7, 3, 64, 1000));
        assert_ne!(random_z2_set(7, 3, 64, 1000), random_z2_set(7, 4, 64, 1000));
        assert!(random_z2_set(1, 0, 64, 1000).iter().all(|&p| p != (0, 0)));
    }
}
