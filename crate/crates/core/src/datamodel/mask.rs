use crate::error::{Error, Result};

/// A row-major binary raster packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    height: usize,
    width: usize,
    words: Vec<u64>,
}

impl BinaryMask {
    pub fn empty(height: usize, width: usize) -> Self {
        BinaryMask {
            height,
            width,
            words: vec![0; (height * width).div_ceil(64)],
        }
    }

    pub fn from_bits(height: usize, width: usize, bits: &[bool]) -> Self {
        assert_eq!(
            bits.len(),
            height * width,
            "bit count must equal height * width"
        );
        let mut m = Self::empty(height, width);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                m.words[i / 64] |= 1 << (i % 64);
            }
        }
        m
    }

    /// Builds a mask from a predicate over (row, column).
    pub fn from_fn(height: usize, width: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::empty(height, width);
        for r in 0..height {
            for c in 0..width {
                if f(r, c) {
                    m.set(r * width + c, true);
                }
            }
        }
        m
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        let bit = 1u64 << (index % 64);
        if value {
            self.words[index / 64] |= bit;
        } else {
            self.words[index / 64] &= !bit;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Number of set pixels.
    pub fn area(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_dims(&self, other: &BinaryMask) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    pub fn intersection_area(&self, other: &BinaryMask) -> Result<usize> {
        self.check_dims(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    pub fn union_area(&self, other: &BinaryMask) -> Result<usize> {
        self.check_dims(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum())
    }

    pub fn union_with(&mut self, other: &BinaryMask) -> Result<()> {
        self.check_dims(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        Ok(())
    }
}

/// Run lengths of a mask in row-major order, alternating 0-runs and 1-runs and
/// starting with a (possibly empty) 0-run.
pub fn rle_encode(mask: &BinaryMask) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = false;
    let mut count = 0;
    for bit in mask.bits() {
        if bit != current {
            runs.push(count);
            current = bit;
            count = 0;
        }
        count += 1;
    }
    if count > 0 || runs.is_empty() {
        runs.push(count);
    }
    runs
}

/// Decodes run lengths into a mask. On a length mismatch the error carries the
/// actual sum; the caller supplies the file context.
pub fn rle_decode(runs: &[usize], height: usize, width: usize) -> Result<BinaryMask, usize> {
    let total: usize = runs.iter().sum();
    if total != height * width {
        return Err(total);
    }
    let mut m = BinaryMask::empty(height, width);
    let mut pos = 0;
    for (i, &run) in runs.iter().enumerate() {
        if i % 2 == 1 {
            for p in pos..pos + run {
                m.set(p, true);
            }
        }
        pos += run;
    }
    Ok(m)
}
