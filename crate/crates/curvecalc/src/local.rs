//! Local model of two generalized holomorphic discs meeting with negative sign.

use crate::rational::Q;

/// Columns `d_s u, d_t u, d_s v, d_t v` at the origin for `u(s,t) = (0,0,s,t)`
/// and `v(s,t) = (cs, t, s, t)`, written row by row.
pub fn intersection_matrix(c: Q) -> [[Q; 4]; 4] {
    let (o, i) = (Q::from_integer(0), Q::from_integer(1));
    [[o, o, c, o], [o, o, o, i], [i, o, i, o], [o, i, o, i]]
}

/// Exact determinant by fraction-exact Gaussian elimination.
pub fn det4(mut m: [[Q; 4]; 4]) -> Q {
    let zero = Q::from_integer(0);
    let mut det = Q::from_integer(1);
    for col in 0..4 {
        let Some(pivot) = (col..4).find(|&r| m[r][col] != zero) else {
            return zero;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (x, p) in row.iter_mut().zip(pivot_row).skip(col) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Local intersection sign of the model discs at the origin; `None` when not transverse.
pub fn local_intersection_sign(c: Q) -> Option<i64> {
    let det = det4(intersection_matrix(c));
    (det != Q::from_integer(0)).then(|| if det > Q::from_integer(0) { 1 } else { -1 })
}
