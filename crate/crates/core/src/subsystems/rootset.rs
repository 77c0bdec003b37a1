use std::fmt;

/// A set of root indices; 256 bits covers `E8`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootSet([u64; 4]);

impl RootSet {
    pub const CAPACITY: usize = 256;

    pub fn empty() -> Self {
        RootSet([0; 4])
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty();
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |w| {
            let mut bits = self.0[w];
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    /// Image under a permutation of root indices.
    pub fn map(&self, perm: &[u16]) -> RootSet {
        let mut out = RootSet::empty();
        for i in self.iter() {
            out.insert(perm[i] as usize);
        }
        out
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        (0..4).all(|w| self.0[w] & !other.0[w] == 0)
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
