use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("f({0}) lies outside the index set")]
    OutOfRange(usize),
    #[error("index {0} is outside the index set")]
    IndexOutOfRange(usize),
    #[error("the fiber of {j} has {size} element(s); at least 2 are required")]
    FiberTooSmall { j: usize, size: usize },
    #[error("orbit/fiber intersection of {j} has {size} elements")]
    Violated { j: usize, size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitFiber {
    /// `j, f(j), f²(j), ...` up to the first repetition.
    pub orbit: Vec<usize>,
    /// `f⁻¹[{j}]`, ascending.
    pub fiber: Vec<usize>,
    pub intersection: Vec<usize>,
}

/// Computes the forward orbit of `j` under the endomap `f` of `0..f.len()`,
/// the fiber over `j` and their intersection, which has at most one element.
pub fn orbit_fiber_check(f: &[usize], j: usize) -> Result<OrbitFiber, OrbitError> {
    let n = f.len();
    if let Some(i) = f.iter().position(|&v| v >= n) {
        return Err(OrbitError::OutOfRange(i));
    }
    if j >= n {
        return Err(OrbitError::IndexOutOfRange(j));
    }
    let fiber: Vec<usize> = (0..n).filter(|&i| f[i] == j).collect();
    if fiber.len() < 2 {
        return Err(OrbitError::FiberTooSmall { j, size: fiber.len() });
    }
    let mut seen = vec![false; n];
    let mut orbit = Vec::new();
    let mut x = j;
    while !seen[x] {
        seen[x] = true;
        orbit.push(x);
        x = f[x];
    }
    let intersection: Vec<usize> = fiber.iter().copied().filter(|&i| seen[i]).collect();
    if intersection.len() > 1 {
        return Err(OrbitError::Violated {
            j,
            size: intersection.len(),
        });
    }
    Ok(OrbitFiber {
        orbit,
        fiber,
        intersection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_example() {
        let r = orbit_fiber_check(&[2, 2, 0], 2).unwrap();
        assert_eq!(r.orbit, [2, 0]);
        assert_eq!(r.fiber, [0, 1]);
        assert_eq!(r.intersection, [0]);
    }

    #[test]
    fn small_fibers_are_rejected() {
        assert_eq!(orbit_fiber_check(&[0, 0], 1), Err(OrbitError::FiberTooSmall { j: 1, size: 0 }));
        assert_eq!(orbit_fiber_check(&[1, 0], 0), Err(OrbitError::FiberTooSmall { j: 0, size: 1 }));
        assert_eq!(orbit_fiber_check(&[0, 3], 0), Err(OrbitError::OutOfRange(1)));
    }

    #[test]
    fn fixed_point_orbit() {
        let r = orbit_fiber_check(&[0, 0, 1], 0).unwrap();
        assert_eq!(r.orbit, [0]);
        assert_eq!(r.intersection, [0]);
    }
}
