//! Integer lattices in Hermite normal form.

use serde::Serialize;

/// A subgroup of `Z^n` given by generators and canonicalised by its Hermite
/// normal form: rows in echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntLattice {
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
    pub hnf: Vec<Vec<i64>>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

fn hermite(rows: &[Vec<i64>], n: usize) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out_rows = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if out_rows == m.len() {
            break;
        }
        // Euclid on column c among rows out_rows..
        loop {
            let nz: Vec<usize> = (out_rows..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    m.swap(out_rows, i);
                }
                break;
            }
            let &piv = nz.iter().min_by_key(|&&i| m[i][c].abs()).expect("nonempty");
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let f = m[i][c].div_euclid(m[piv][c]);
                let prow = m[piv].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
        if m[out_rows][c] == 0 {
            continue;
        }
        if m[out_rows][c] < 0 {
            for x in m[out_rows].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[out_rows][c];
        let prow = m[out_rows].clone();
        for i in 0..out_rows {
            let f = m[i][c].div_euclid(p);
            if f != 0 {
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        out_rows += 1;
    }
    m.truncate(out_rows);
    let hnf = m
        .into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("lattice entries fit in i64")).collect())
        .collect();
    (hnf, pivots)
}

impl IntLattice {
    pub fn new(n: usize, generators: Vec<Vec<i64>>) -> Self {
        assert!(generators.iter().all(|g| g.len() == n), "generator length mismatch");
        let (hnf, pivots) = hermite(&generators, n);
        IntLattice { n, generators, hnf, pivots }
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    /// `[Z^n : L]` when finite.
    pub fn index(&self) -> Option<u64> {
        self.is_full_rank().then(|| self.hnf.iter().enumerate().map(|(i, r)| r[i] as u64).product())
    }

    /// Diagonal of the HNF (the `l_i` of the fundamental domain), when full rank.
    pub fn diagonal(&self) -> Option<Vec<i64>> {
        self.is_full_rank().then(|| self.hnf.iter().enumerate().map(|(i, r)| r[i]).collect())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut r: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &p) in self.hnf.iter().zip(&self.pivots) {
            let pv = row[p] as i128;
            if r[p] % pv != 0 {
                return false;
            }
            let f = r[p] / pv;
            for (x, y) in r.iter_mut().zip(row) {
                *x -= f * (*y as i128);
            }
        }
        r.iter().all(|&x| x == 0)
    }

    /// Canonical representative with `0 <= r_i < l_i`, for full-rank lattices.
    pub fn reduce(&self, v: &[i64]) -> Option<Vec<i64>> {
        if !self.is_full_rank() {
            return None;
        }
        let mut r = v.to_vec();
        for (i, row) in self.hnf.iter().enumerate() {
            let f = r[i].div_euclid(row[i]);
            for (x, y) in r.iter_mut().zip(row) {
                *x -= f * y;
            }
        }
        Some(r)
    }

    /// Coset representatives `{r : 0 <= r_i < l_i}` in lexicographic order.
    pub fn coset_representatives(&self) -> Option<Vec<Vec<i64>>> {
        let d = self.diagonal()?;
        let mut out = vec![vec![]];
        for &di in &d {
            let mut next = Vec::new();
            for p in &out {
                for k in 0..di {
                    let mut v: Vec<i64> = p.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out = next;
        }
        Some(out)
    }
}
