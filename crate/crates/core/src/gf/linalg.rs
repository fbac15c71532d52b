/// Rank of a set of row vectors over F_p, by Gaussian elimination.
pub fn fp_rank(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let p64 = p as u64;
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse(rows[rank][col], p) as u64;
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * inv % p64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let c = row[col] as u64;
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + p64 * p64 - c * pv as u64) % p64) as u32;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inverse(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(fp_rank(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(fp_rank(vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(fp_rank(vec![vec![1, 2], vec![2, 1]], 5), 2);
        assert_eq!(fp_rank(vec![vec![0, 0], vec![0, 0]], 2), 0);
    }
}
