//! Dense bit-packed matrices over GF(2).

/// Row-major bit matrix; each row is `words` consecutive `u64`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    /// Builds a matrix from per-row column lists; repeated columns cancel.
    pub fn from_sparse_rows(cols: usize, rows: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, entries) in rows.iter().enumerate() {
            for &c in entries {
                m.toggle(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        if self.get(r, c) != value {
            self.toggle(r, c);
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    /// `row[dst] ^= row[src]`.
    fn xor_rows(&mut self, dst: usize, src: usize, from_word: usize) {
        let w = self.words;
        let (d, s) = (dst * w, src * w);
        for k in from_word..w {
            self.data[d + k] ^= self.data[s + k];
        }
    }

    /// Rank over GF(2) by forward elimination; consumes a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let (word, bit) = (c / 64, c % 64);
            let Some(pivot) = (rank..m.rows).find(|&r| m.row(r)[word] >> bit & 1 == 1) else {
                continue;
            };
            if pivot != rank {
                let w = m.words;
                for k in 0..w {
                    m.data.swap(pivot * w + k, rank * w + k);
                }
            }
            for r in rank + 1..m.rows {
                if m.row(r)[word] >> bit & 1 == 1 {
                    m.xor_rows(r, rank, word);
                }
            }
            rank += 1;
        }
        rank
    }
}
