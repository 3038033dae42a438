//! Partial maps on the state set, as induced by letters and words.

use alloc::vec::Vec;

/// A partial map `Q -> Q`; entry `q` is the image of `q` or `None` when the
/// transition is undefined.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Transformation {
    image: Vec<Option<usize>>,
}

impl Transformation {
    pub fn identity(state_count: usize) -> Self {
        Transformation {
            image: (0..state_count).map(Some).collect(),
        }
    }

    pub fn from_image(image: Vec<Option<usize>>) -> Self {
        Transformation { image }
    }

    /// A total map given by its images.
    pub fn from_total(image: &[usize]) -> Self {
        Transformation {
            image: image.iter().copied().map(Some).collect(),
        }
    }

    pub fn state_count(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, state: usize) -> Option<usize> {
        self.image.get(state).copied().flatten()
    }

    pub fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    /// `self` followed by `next`, i.e. `q -> next(self(q))`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation {
            image: self
                .image
                .iter()
                .map(|q| q.and_then(|q| next.apply(q)))
                .collect(),
        }
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = alloc::vec![false; self.image.len()];
        for q in &self.image {
            match q {
                Some(q) if *q < seen.len() && !seen[*q] => seen[*q] = true,
                _ => return false,
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(q, p)| *p == Some(q))
    }

    /// The images of a total map, if it is total.
    pub fn to_total(&self) -> Option<Vec<usize>> {
        self.image.iter().copied().collect()
    }

    pub fn inverse(&self) -> Option<Transformation> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = alloc::vec![None; self.image.len()];
        for (q, p) in self.image.iter().enumerate() {
            inv[p.unwrap()] = Some(q);
        }
        Some(Transformation { image: inv })
    }

    /// Disjoint cycles of a permutation, each starting at its smallest
    /// element, ordered by that element. Fixed points are omitted.
    pub fn cycles(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_bijective() {
            return None;
        }
        let mut seen = alloc::vec![false; self.image.len()];
        let mut cycles = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut q = start;
            while !seen[q] {
                seen[q] = true;
                cycle.push(q);
                q = self.image[q].unwrap();
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        Some(cycles)
    }

    /// Order of a permutation as the lcm of its cycle lengths. `None` for
    /// non-bijective maps or when the order overflows `u64`.
    pub fn order(&self) -> Option<u64> {
        self.cycles()?.iter().try_fold(1u64, |acc, c| {
            let len = c.len() as u64;
            (acc / gcd(acc, len)).checked_mul(len)
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
