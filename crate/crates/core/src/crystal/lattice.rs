use serde::{Deserialize, Serialize};

/// An integer lattice in Hermite normal form.
///
/// Rows are upper-echelon with positive pivots; entries above a pivot are
/// reduced into `[0, pivot)`, so equal lattices have equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

fn pivot_of(row: &[i64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

impl Lattice {
    /// The lattice spanned by `vectors`.
    pub fn span(dim: usize, vectors: &[Vec<i64>]) -> Self {
        let mut rows: Vec<Vec<i64>> = vectors
            .iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        assert!(rows.iter().all(|r| r.len() == dim), "vector dimension mismatch");
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for col in 0..dim {
            let mut with: Vec<Vec<i64>> = Vec::new();
            let mut without = Vec::new();
            for r in rows.drain(..) {
                if pivot_of(&r) == Some(col) {
                    with.push(r);
                } else {
                    without.push(r);
                }
            }
            rows = without;
            // Euclid on the column until one row remains.
            while with.len() > 1 {
                with.sort_by_key(|r| r[col].abs());
                let head = with[0].clone();
                for r in with.iter_mut().skip(1) {
                    let q = r[col] / head[col];
                    for (x, h) in r.iter_mut().zip(&head) {
                        *x -= q * h;
                    }
                }
                let mut keep = vec![head];
                for r in with.drain(1..) {
                    if r[col] == 0 {
                        if r.iter().any(|&x| x != 0) {
                            rows.push(r);
                        }
                    } else {
                        keep.push(r);
                    }
                }
                with = keep;
            }
            if let Some(mut r) = with.pop() {
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                basis.push(r);
            }
        }
        let mut lattice = Lattice { dim, rows: basis };
        lattice.normalize();
        lattice
    }

    fn normalize(&mut self) {
        for i in 0..self.rows.len() {
            let col = pivot_of(&self.rows[i]).expect("nonzero row");
            let pivot = self.rows[i][col];
            for j in 0..i {
                let q = self.rows[j][col].div_euclid(pivot);
                let row_i = self.rows[i].clone();
                for (x, y) in self.rows[j].iter_mut().zip(&row_i) {
                    *x -= q * y;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Canonical representative of `v` modulo the lattice: each pivot
    /// coordinate is reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let col = pivot_of(row).expect("nonzero row");
            let q = v[col].div_euclid(row[col]);
            for (x, r) in v.iter_mut().zip(row) {
                *x -= q * r;
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Volume of a fundamental cell; `None` unless full rank.
    pub fn covolume(&self) -> Option<i64> {
        self.is_full_rank()
            .then(|| self.rows.iter().enumerate().map(|(i, r)| r[i]).product())
    }

    /// Coset representatives of `self / sub` for a full-rank sublattice.
    pub fn transversal(&self, sub: &Lattice) -> Option<Vec<Vec<i64>>> {
        if !sub.is_full_rank() || !self.contains_lattice(sub) {
            return None;
        }
        let mut reps = vec![sub.reduce(&vec![0; self.dim])];
        let mut i = 0;
        while i < reps.len() {
            for b in &self.rows {
                let next: Vec<i64> = reps[i].iter().zip(b).map(|(x, y)| x + y).collect();
                let next = sub.reduce(&next);
                if !reps.contains(&next) {
                    reps.push(next);
                }
            }
            i += 1;
        }
        reps.sort();
        Some(reps)
    }

    /// Image under a coordinate projection.
    pub fn project(&self, coords: &[usize]) -> Lattice {
        let vecs: Vec<Vec<i64>> = self.rows.iter().map(|r| coords.iter().map(|&c| r[c]).collect()).collect();
        Lattice::span(coords.len(), &vecs)
    }

    pub fn scaled(&self, factor: i64) -> Lattice {
        let vecs: Vec<Vec<i64>> = self.rows.iter().map(|r| r.iter().map(|x| x * factor).collect()).collect();
        Lattice::span(self.dim, &vecs)
    }
}
