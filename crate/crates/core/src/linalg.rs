//! Small exact dense linear algebra over the rationals: row reduction,
//! rank, kernel bases and linear solves. Sizes here are tiny (tens of
//! rows), so plain fraction arithmetic is fine.

use crate::scalar::Rat;

/// Reduced row echelon form in place; returns pivot column per row.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = m[r][j] * f;
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut copy = m.to_vec();
    rref(&mut copy).len()
}

/// Basis of the kernel of the linear map given row-wise (`rows x cols`).
pub fn kernel_basis(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut copy = m.to_vec();
    let pivots = rref(&mut copy);
    let mut free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.sort();
    let mut out = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::ZERO; cols];
        v[f] = Rat::ONE;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -copy[r][f];
        }
        out.push(v);
    }
    out
}

/// Solves M x = b exactly; None when inconsistent. Free variables are set
/// to zero.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, &v)| {
            let mut r = row.clone();
            r.push(v);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent if a pivot lands in the augmented column
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::ZERO; cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols];
    }
    // verify (free variables may make the zero-fill wrong only if inconsistent)
    for (row, &v) in m.iter().zip(b) {
        let dot: Rat = row.iter().zip(&x).map(|(a, b)| *a * *b).sum();
        if dot != v {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Rat = m[0].iter().zip(v).map(|(a, b)| *a * *b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn exact_solve() {
        let m = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let b = vec![r(5), r(10)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(x, vec![r(1), r(3)]);
        assert!(solve(&vec![vec![r(1), r(1)], vec![r(1), r(1)]], &[r(0), r(1)]).is_none());
    }
}
