//! Dense GF(2) vectors and incrementally maintained spans.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn lowest_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Copies the bits of `self` into a longer vector starting at `offset`.
    pub fn embed(&self, len: usize, offset: usize) -> BitVector {
        let mut out = BitVector::zeros(len);
        for i in self.ones() {
            out.set(offset + i, true);
        }
        out
    }

    /// Hex digits, most significant first; bit `i` has weight `2^i`.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nib = 0u8;
            for b in 0..4 {
                let i = d * 4 + b;
                if i < self.len && self.get(i) {
                    nib |= 1 << b;
                }
            }
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<BitVector, String> {
        let mut v = BitVector::zeros(len);
        for (d, c) in hex.trim().chars().rev().enumerate() {
            let nib = c.to_digit(16).ok_or_else(|| format!("bad hex digit {c:?}"))?;
            for b in 0..4 {
                if nib >> b & 1 == 1 {
                    let i = d * 4 + b;
                    if i >= len {
                        return Err(format!("bit {i} beyond vector length {len}"));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({}; {})", self.len, self.to_hex())
    }
}

/// Row-echelon basis keyed by lowest set bit.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    pivots: Vec<Option<BitVector>>,
    rank: usize,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Span { len, pivots: vec![None; len], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        while let Some(p) = v.lowest_set() {
            match &self.pivots[p] {
                Some(b) => v.xor_assign(b),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        match r.lowest_set() {
            Some(p) => {
                self.pivots[p] = Some(r);
                self.rank += 1;
                true
            }
            None => false,
        }
    }
}
