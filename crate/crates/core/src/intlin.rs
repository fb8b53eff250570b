//! Small exact integer linear algebra: rank, integer solutions of `A x = b`,
//! and canonical coset representatives modulo a lattice.

use num_integer::Integer;

use crate::error::SeedError;

type Row = Vec<i128>;

fn checked(x: Option<i128>) -> Result<i128, SeedError> {
    x.ok_or(SeedError::Overflow)
}

/// Rank over `Q` of a row-major `rows x cols` matrix (fraction-free elimination).
pub fn rank(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Row> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a0, b0) = (m[r][c], m[i][c]);
            let g = a0.gcd(&b0);
            let (fa, fb) = (b0 / g, a0 / g);
            for j in c..cols {
                m[i][j] = m[i][j] * fb - m[r][j] * fa;
            }
            let g_row = m[i].iter().fold(0i128, |acc, x| acc.gcd(x));
            if g_row > 1 {
                m[i].iter_mut().for_each(|x| *x /= g_row);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// All integer solutions of `A x = b`: a particular solution and a basis of the kernel lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<i64>,
    pub kernel: Vec<Vec<i64>>,
}

/// Column Hermite reduction: returns `(H, U, rank)` with `A U = H`, `U` unimodular,
/// and the first `rank` columns of `H` in echelon form (pivot rows strictly increasing).
fn column_hermite(a: &[Vec<i64>], cols: usize) -> Result<(Vec<Row>, Vec<Row>, usize, Vec<usize>), SeedError> {
    let rows = a.len();
    let mut h: Vec<Row> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Row> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivot_rows = Vec::new();
    let mut k = 0;
    for r in 0..rows {
        if k == cols {
            break;
        }
        // Euclid on columns k.. in row r
        loop {
            let nz: Vec<usize> = (k..cols).filter(|&j| h[r][j] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| h[r][j].abs()).expect("nonempty");
            swap_cols(&mut h, &mut u, k, piv);
            if nz.len() == 1 {
                break;
            }
            for j in k + 1..cols {
                if h[r][j] == 0 {
                    continue;
                }
                let q = Integer::div_floor(&h[r][j], &h[r][k]);
                col_axpy(&mut h, &mut u, j, k, -q)?;
            }
        }
        if h[r][k] != 0 {
            if h[r][k] < 0 {
                for row in h.iter_mut() {
                    row[k] = -row[k];
                }
                for row in u.iter_mut() {
                    row[k] = -row[k];
                }
            }
            pivot_rows.push(r);
            k += 1;
        }
    }
    Ok((h, u, k, pivot_rows))
}

fn swap_cols(h: &mut [Row], u: &mut [Row], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

/// column `dst += f * column src`
fn col_axpy(h: &mut [Row], u: &mut [Row], dst: usize, src: usize, f: i128) -> Result<(), SeedError> {
    for row in h.iter_mut().chain(u.iter_mut()) {
        let add = checked(row[src].checked_mul(f))?;
        row[dst] = checked(row[dst].checked_add(add))?;
    }
    Ok(())
}

fn to_i64(v: &[i128]) -> Result<Vec<i64>, SeedError> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| SeedError::Overflow))
        .collect()
}

/// Solves `A x = b` over the integers.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64], cols: usize) -> Result<Option<IntegerSolution>, SeedError> {
    let (h, u, rk, pivots) = column_hermite(a, cols)?;
    let mut y = vec![0i128; cols];
    for (j, &pr) in pivots.iter().enumerate() {
        let mut rhs = b[pr] as i128;
        for (i, yi) in y.iter().enumerate().take(j) {
            rhs = checked(rhs.checked_sub(checked(h[pr][i].checked_mul(*yi))?))?;
        }
        let (q, r) = rhs.div_rem(&h[pr][j]);
        if r != 0 {
            return Ok(None);
        }
        y[j] = q;
    }
    for (r, row) in h.iter().enumerate() {
        let mut s = 0i128;
        for (j, yj) in y.iter().enumerate().take(rk) {
            s = checked(s.checked_add(checked(row[j].checked_mul(*yj))?))?;
        }
        if s != b[r] as i128 {
            return Ok(None);
        }
    }
    let mut x = vec![0i128; cols];
    for (i, xi) in x.iter_mut().enumerate() {
        for (j, yj) in y.iter().enumerate().take(rk) {
            *xi = checked(xi.checked_add(checked(u[i][j].checked_mul(*yj))?))?;
        }
    }
    let kernel = (rk..cols)
        .map(|j| to_i64(&u.iter().map(|row| row[j]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(IntegerSolution {
        particular: to_i64(&x)?,
        kernel,
    }))
}

/// Row Hermite normal form of a lattice basis (rows), zero rows dropped.
pub fn row_hermite(basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, SeedError> {
    let Some(cols) = basis.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let mut m: Vec<Row> = basis.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out_rows = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (out_rows..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).expect("nonempty");
            m.swap(out_rows, p);
            if nz.len() == 1 {
                break;
            }
            for i in out_rows + 1..m.len() {
                if m[i][c] == 0 {
                    continue;
                }
                let q = Integer::div_floor(&m[i][c], &m[out_rows][c]);
                for j in 0..cols {
                    let sub = checked(m[out_rows][j].checked_mul(q))?;
                    m[i][j] = checked(m[i][j].checked_sub(sub))?;
                }
            }
        }
        if out_rows < m.len() && m[out_rows][c] != 0 {
            if m[out_rows][c] < 0 {
                m[out_rows].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(c);
            out_rows += 1;
        }
    }
    m.truncate(out_rows);
    // reduce entries above each pivot into [0, pivot)
    for (r, &c) in pivots.iter().enumerate() {
        for i in 0..r {
            let q = Integer::div_floor(&m[i][c], &m[r][c]);
            if q != 0 {
                for j in 0..cols {
                    let sub = checked(m[r][j].checked_mul(q))?;
                    m[i][j] = checked(m[i][j].checked_sub(sub))?;
                }
            }
        }
    }
    m.iter().map(|r| to_i64(r)).collect()
}

/// Reduces `x` modulo the lattice spanned by a row Hermite basis, so that every
/// pivot coordinate lands in `[0, pivot)`.
pub fn reduce_mod_lattice(x: &[i64], hermite: &[Vec<i64>]) -> Result<Vec<i64>, SeedError> {
    let mut y: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    for row in hermite {
        let Some(c) = row.iter().position(|&v| v != 0) else {
            continue;
        };
        let p = row[c] as i128;
        let q = Integer::div_floor(&y[c], &p);
        if q != 0 {
            for (yj, rj) in y.iter_mut().zip(row) {
                *yj = checked(yj.checked_sub(checked((*rj as i128).checked_mul(q))?))?;
            }
        }
    }
    to_i64(&y)
}
