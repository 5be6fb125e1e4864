use alloc::vec;
use alloc::vec::Vec;

/// Fixed-size bitset used for membership tests during closures and BFS.
#[derive(Clone, Debug)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Sets bit `i`, returning whether it was previously clear.
    #[inline]
    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let mask = 1 << (i & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }
}
