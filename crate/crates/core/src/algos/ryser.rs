use crate::count::Tally;
use crate::matrix::SquareMatrix;
use crate::ring::Ring;

/// Ryser's inclusion-exclusion formula
/// `per(A) = sum over nonempty S of (-1)^(n-|S|) * prod_i sum_{j in S} a_ij`.
///
/// Subsets are visited depth-first, each one extending its parent by a column
/// larger than the parent's maximum. The row sums of the parent are kept on a
/// stack, so a subset with `|S| >= 2` costs exactly `n` additions to update
/// and singletons cost none. Each subset then spends `n - 1` multiplications
/// on its product, and the `2^n - 1` signed products are folded with
/// `2^n - 2` additions. Sign flips are free.
pub fn ryser_with<R: Ring, T: Tally>(a: &SquareMatrix<R>, tally: &T) -> R {
    let n = a.order();
    let mut levels: Vec<Vec<R>> = vec![vec![R::zero(); n]; n];
    let mut walk = Walk {
        a,
        tally,
        total: None,
    };
    for first in 0..n {
        for (i, slot) in levels[0].iter_mut().enumerate() {
            *slot = a.get(i, first).clone();
        }
        walk.visit(&mut levels, first, 1);
    }
    walk.total.expect("order is at least 1")
}

struct Walk<'a, R, T> {
    a: &'a SquareMatrix<R>,
    tally: &'a T,
    total: Option<R>,
}

impl<R: Ring, T: Tally> Walk<'_, R, T> {
    /// `levels[0]` holds the row sums of the current subset, whose largest
    /// column is `last` and whose size is `size`.
    fn visit(&mut self, levels: &mut [Vec<R>], last: usize, size: usize) {
        let n = self.a.order();
        let (current, deeper) = levels.split_first_mut().expect("depth bounded by n");

        let mut product = current[0].clone();
        for sum in &current[1..] {
            product = self.tally.mul(&product, sum);
        }
        if (n - size) % 2 == 1 {
            product = product.neg();
        }
        self.total = Some(match self.total.take() {
            None => product,
            Some(t) => self.tally.add(&t, &product),
        });

        for next in last + 1..n {
            let child = &mut deeper[0];
            for (i, slot) in child.iter_mut().enumerate() {
                *slot = self.tally.add(&current[i], self.a.get(i, next));
            }
            self.visit(deeper, next, size + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{OpCount, OpCounter};
    use num_bigint::BigInt;

    fn int(rows: &[&[i64]]) -> SquareMatrix<BigInt> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_by_two() {
        let t = OpCounter::new();
        assert_eq!(
            ryser_with(&int(&[&[2, 3], &[5, 7]]), &t),
            BigInt::from(2 * 7 + 3 * 5)
        );
        assert_eq!(t.snapshot(), OpCount::new(3, 4));
        assert_eq!(ryser_with(&int(&[&[1, 0], &[0, 1]]), &t), BigInt::from(1));
    }

    #[test]
    fn order_one_costs_nothing() {
        let t = OpCounter::new();
        assert_eq!(ryser_with(&int(&[&[-4]]), &t), BigInt::from(-4));
        assert_eq!(t.snapshot(), OpCount::ZERO);
    }

    #[test]
    fn order_five_counts() {
        let t = OpCounter::new();
        let ones = SquareMatrix::from_fn(5, |_, _| BigInt::from(1)).unwrap();
        assert_eq!(ryser_with(&ones, &t), BigInt::from(120));
        assert_eq!(t.snapshot(), OpCount::new(124, 160));
    }
}
