//! Resultants over k[t] by the subresultant pseudo-remainder sequence, plus the
//! Sylvester determinant used as an independent check.

use super::{Field, Poly};

/// Resultant of two x-polynomials with coefficients in k[t] (ascending in x),
/// computed with exact divisions only (Collins' subresultant sequence).
pub fn subresultant<F: Field>(a: &[Poly<F>], b: &[Poly<F>], base: &F) -> Poly<F> {
    let zero = Poly::zero(base.clone());
    let mut a = trimmed(a);
    let mut b = trimmed(b);
    if a.is_empty() || b.is_empty() {
        return zero;
    }
    let mut sign = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::one(base.clone());
    let mut h = Poly::one(base.clone());
    while b.len() > 1 {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return zero;
        }
        let div = &g * &h.pow(delta as u64);
        a = b;
        b = r
            .iter()
            .map(|c| c.exact_div(&div).expect("subresultant division is exact"))
            .collect();
        g = a.last().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u64)
                .exact_div(&h.pow(delta as u64 - 1))
                .expect("exact")
        };
    }
    let da = a.len() - 1;
    let lb = b[0].clone();
    let res = if da == 0 {
        Poly::one(base.clone())
    } else {
        lb.pow(da as u64)
            .exact_div(&h.pow(da as u64 - 1))
            .expect("exact")
    };
    if sign {
        -&res
    } else {
        res
    }
}

fn trimmed<F: Field>(a: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut v = a.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

// lc(b)^(deg a - deg b + 1) * a mod b over k[t][x].
fn pseudo_rem<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vec<Poly<F>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = a.len() - db;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &(&lr * bc);
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 && !r.is_empty() {
        let s = lb.pow(steps as u64);
        for c in r.iter_mut() {
            *c = &*c * &s;
        }
    }
    r
}

/// Resultant as the determinant of the Sylvester matrix, rows of `f` first.
pub fn sylvester_resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> F::Elem {
    let field = f.field().clone();
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return field.zero(),
    };
    let size = m + n;
    if size == 0 {
        return field.one();
    }
    let mut rows = vec![vec![field.zero(); size]; size];
    // Row i holds the coefficients of t^(n-1-i) * f, highest degree first.
    for i in 0..n {
        for (k, c) in f.coeffs().iter().enumerate() {
            rows[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().enumerate() {
            rows[n + i][i + n - k] = c.clone();
        }
    }
    determinant(&field, rows)
}

pub(crate) fn determinant<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> F::Elem {
    let size = rows.len();
    let mut det = field.one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !field.is_zero(&rows[r][col])) else {
            return field.zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = field.neg(&det);
        }
        let inv = field.inv(&rows[col][col]).unwrap();
        det = field.mul(&det, &rows[col][col]);
        for r in col + 1..size {
            if field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = field.mul(&rows[r][col], &inv);
            for c in col..size {
                let v = field.mul(&factor, &rows[col][c]);
                rows[r][c] = field.sub(&rows[r][c], &v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn sylvester_linear_convention() {
        let f = Poly::from_i64s(Rationals, &[-3, 1]);
        let g = Poly::from_i64s(Rationals, &[-5, 1]);
        assert_eq!(sylvester_resultant(&f, &g), Rationals.from_i64(-2));
        assert_eq!(f.resultant(&g), sylvester_resultant(&f, &g));
    }

    fn xpoly(p: &PrimeField, rows: &[Vec<i64>]) -> Vec<Poly<PrimeField>> {
        rows.iter().map(|c| Poly::from_i64s(*p, c)).collect()
    }

    // Oracle: resultant over k[t] evaluated at t = c equals the resultant of the specializations
    // whenever both leading coefficients survive.
    fn check_specialization(p: u64, a: &[Vec<i64>], b: &[Vec<i64>]) {
        let fp = PrimeField::new(p).unwrap();
        let pa = xpoly(&fp, a);
        let pb = xpoly(&fp, b);
        let r = subresultant(&pa, &pb, &fp);
        for c in 0..p {
            let sa = Poly::new(fp, pa.iter().map(|q| q.eval(&c)).collect());
            let sb = Poly::new(fp, pb.iter().map(|q| q.eval(&c)).collect());
            if sa.degree() != Some(pa.len() - 1) || sb.degree() != Some(pb.len() - 1) {
                continue;
            }
            assert_eq!(r.eval(&c), sylvester_resultant(&sa, &sb));
        }
    }

    #[test]
    fn subresultant_matches_specialized_determinant() {
        check_specialization(
            101,
            &[vec![1, 2], vec![0, 0, 1], vec![3], vec![1]],
            &[vec![0, 1], vec![5, 0, 2], vec![1, 1]],
        );
        check_specialization(
            7,
            &[vec![1], vec![0, 1], vec![0], vec![2, 3]],
            &[vec![0, 0, 1], vec![1, 1]],
        );
    }

    proptest! {
        #[test]
        fn euclid_matches_sylvester_over_fp(
            a in prop::collection::vec(0i64..13, 1..7),
            b in prop::collection::vec(0i64..13, 1..7),
        ) {
            let f13 = PrimeField::new(13).unwrap();
            let f = Poly::from_i64s(f13, &a);
            let g = Poly::from_i64s(f13, &b);
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(f.resultant(&g), sylvester_resultant(&f, &g));
        }

        #[test]
        fn subresultant_matches_sylvester_at_points(
            a in prop::collection::vec(prop::collection::vec(0i64..31, 0..4), 1..5),
            b in prop::collection::vec(prop::collection::vec(0i64..31, 0..4), 1..5),
        ) {
            let fp = PrimeField::new(31).unwrap();
            let pa = xpoly(&fp, &a);
            let pb = xpoly(&fp, &b);
            prop_assume!(pa.last().is_some_and(|c| !c.is_zero()));
            prop_assume!(pb.last().is_some_and(|c| !c.is_zero()));
            check_specialization(31, &a, &b);
        }
    }
}
