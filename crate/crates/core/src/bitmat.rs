//! Boolean (0,1)-matrices backed by bit vectors.
//!
//! Every matrix keeps two copies of its bits: one row-major and one
//! column-major. The product `β(X·Y)[i][j]` is then a single AND over
//! `X.row(i)` and `Y.col(j)`, with no transposition at query time.
//!
//! Word width is fixed at 64 bits.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};

const WORD: usize = u64::BITS as usize;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Square (0,1)-matrix. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = words_for(n);
        BitMatrix {
            n,
            words,
            rows: vec![0; n * words],
            cols: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rows = vec![0u64; n * words_for(n)];
        let words = words_for(n);
        for i in 0..n {
            for j in 0..n {
                if entry(i, j) {
                    rows[i * words + j / WORD] |= 1 << (j % WORD);
                }
            }
        }
        Self::from_row_words(n, rows)
    }

    /// Builds the column mirror from row-major words.
    fn from_row_words(n: usize, rows: Vec<u64>) -> Self {
        let words = words_for(n);
        let mut cols = vec![0u64; n * words];
        for i in 0..n {
            for (w, &word) in rows[i * words..(i + 1) * words].iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j = w * WORD + bits.trailing_zeros() as usize;
                    cols[j * words + i / WORD] |= 1 << (i % WORD);
                    bits &= bits - 1;
                }
            }
        }
        BitMatrix {
            n,
            words,
            rows,
            cols,
        }
    }

    /// Maps every nonzero entry to 1. The input must be square.
    pub fn booleanize<T: Zero, R: AsRef<[T]>>(m: &[R]) -> Result<Self> {
        let n = m.len();
        if let Some((i, row)) = m.iter().enumerate().find(|(_, r)| r.as_ref().len() != n) {
            return Err(Error::Dimension(alloc::format!(
                "row {} has {} entries, expected {}",
                i,
                row.as_ref().len(),
                n
            )));
        }
        Ok(Self::from_fn(n, |i, j| !m[i].as_ref()[j].is_zero()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        self.rows[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn col(&self, j: usize) -> &[u64] {
        &self.cols[j * self.words..(j + 1) * self.words]
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let j = w * WORD + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(j)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `β(self · other)`: entry (i, j) is set iff row i of `self` and
    /// column j of `other` share a set bit.
    pub fn bool_product(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.n != other.n {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.n,
                self.n,
                other.n,
                other.n
            )));
        }
        let (n, words) = (self.n, self.words);
        let mut rows = vec![0u64; n * words];
        for i in 0..n {
            let lhs = self.row(i);
            if lhs.iter().all(|&w| w == 0) {
                continue;
            }
            let out = &mut rows[i * words..(i + 1) * words];
            for j in 0..n {
                if lhs.iter().zip(other.col(j)).any(|(a, b)| a & b != 0) {
                    out[j / WORD] |= 1 << (j % WORD);
                }
            }
        }
        Ok(Self::from_row_words(n, rows))
    }

    /// `β(self^k)` by binary exponentiation; `k = 0` gives the identity.
    pub fn bool_power(&self, k: u64) -> BitMatrix {
        let mut result: Option<BitMatrix> = None;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.bool_product(&base).expect("same dimension"),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.bool_product(&base).expect("same dimension");
            }
        }
        result.unwrap_or_else(|| BitMatrix::identity(self.n))
    }

    /// True iff every entry is 1.
    pub fn is_all_ones(&self) -> bool {
        let full = self.n / WORD;
        let rem = self.n % WORD;
        (0..self.n).all(|i| {
            let row = self.row(i);
            row[..full].iter().all(|&w| w == u64::MAX)
                && (rem == 0 || row[full] == (1u64 << rem) - 1)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
    }

    /// Checks the row/column mirror invariant and that padding bits are clear.
    pub fn mirrors_consistent(&self) -> bool {
        let rem = self.n % WORD;
        let pad_clear = |v: &[u64]| {
            rem == 0
                || v
                    .chunks(self.words.max(1))
                    .all(|c| c.last().is_none_or(|&w| w >> rem == 0))
        };
        if !pad_clear(&self.rows) || !pad_clear(&self.cols) {
            return false;
        }
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let r = self.rows[i * self.words + j / WORD] >> (j % WORD) & 1;
                let c = self.cols[j * self.words + i / WORD] >> (i % WORD) & 1;
                r == c
            })
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}
