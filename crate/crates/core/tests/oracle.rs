//! Betti numbers of Chevalley-Eilenberg complexes recomputed with a
//! separate bitmask exterior algebra and dense elimination.

use cdga::models::builtin;
use num_rational::BigRational;
use num_traits::Zero;

/// `d x_i` as `(i, j, c)` meaning `c x_i x_j` with `i < j`.
type Diff = Vec<Vec<(usize, usize, i64)>>;

fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for j in 0..32 {
        if b >> j & 1 == 1 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

fn d_mask(n: usize, diff: &Diff, s: u32) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    for (i, di) in diff.iter().enumerate().take(n) {
        if s >> i & 1 == 0 {
            continue;
        }
        let below = s & ((1 << i) - 1);
        let above = s & !((1 << (i + 1)) - 1);
        let outer = if below.count_ones().is_multiple_of(2) { 1 } else { -1 };
        for &(p, r, c) in di {
            let t = (1u32 << p) | (1 << r);
            let Some(s1) = wedge_sign(below, t) else { continue };
            let Some(s2) = wedge_sign(below | t, above) else {
                continue;
            };
            out.push((below | t | above, outer * s1 * s2 * c));
        }
    }
    out
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let mut r = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= p * &f;
                }
            }
        }
        r += 1;
    }
    r
}

fn betti(n: usize, diff: &Diff) -> Vec<usize> {
    let basis = |k: u32| (0u32..1 << n).filter(|s| s.count_ones() == k).collect::<Vec<_>>();
    let d_rank = |k: u32| {
        let src = basis(k);
        let dst = basis(k + 1);
        let rows: Vec<Vec<BigRational>> = src
            .iter()
            .map(|&s| {
                let mut row = vec![BigRational::zero(); dst.len()];
                for (t, c) in d_mask(n, diff, s) {
                    let j = dst.iter().position(|&x| x == t).unwrap();
                    row[j] += BigRational::from_integer(c.into());
                }
                row
            })
            .collect();
        if rows.is_empty() || dst.is_empty() {
            0
        } else {
            rank(rows)
        }
    };
    (0..=n as u32)
        .map(|k| basis(k).len() - d_rank(k) - if k == 0 { 0 } else { d_rank(k - 1) })
        .collect()
}

fn check(name: &str, n: usize, diff: Diff) {
    let expected = betti(n, &diff);
    assert_eq!(builtin(name).unwrap().betti_vector(n as u32), expected, "{name}");
}

#[test]
fn heisenberg_and_kt() {
    // a1 a2 a3 (a4), d a3 = -a1 a2
    check("heisenberg3", 3, vec![vec![], vec![], vec![(0, 1, -1)]]);
    check("kt", 4, vec![vec![], vec![], vec![(0, 1, -1)], vec![]]);
}

#[test]
fn iwasawa() {
    // a1 a2 b1 b2 c1 c2
    let diff = vec![
        vec![],
        vec![],
        vec![],
        vec![],
        vec![(0, 2, -1), (1, 3, 1)],
        vec![(0, 3, -1), (1, 2, -1)],
    ];
    check("iwasawa", 6, diff);
}

#[test]
fn fls() {
    // alpha beta gamma1 gamma2 delta1 delta2
    let diff = vec![
        vec![],
        vec![],
        vec![(0, 2, -1), (1, 4, -1)],
        vec![(0, 3, 1), (1, 5, -1)],
        vec![(0, 4, -1)],
        vec![(0, 5, 1)],
    ];
    check("fls", 6, diff);
}

#[test]
fn tori() {
    for n in 1..=5 {
        check(&format!("torus{n}"), n, vec![vec![]; n]);
    }
}
