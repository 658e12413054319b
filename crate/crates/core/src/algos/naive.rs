use crate::count::Tally;
use crate::matrix::SquareMatrix;
use crate::ring::Ring;

/// Sum over all `n!` permutations of the diagonal products.
///
/// Every product is formed from scratch (`n - 1` multiplications) and the
/// `n!` products are folded with `n! - 1` additions. Permutations are
/// generated with Heap's algorithm.
pub fn naive_with<R: Ring, T: Tally>(a: &SquareMatrix<R>, tally: &T) -> R {
    let n = a.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut stack = vec![0usize; n];

    let product = |perm: &[usize]| {
        let mut p = a.get(0, perm[0]).clone();
        for (i, &col) in perm.iter().enumerate().skip(1) {
            p = tally.mul(&p, a.get(i, col));
        }
        p
    };

    let mut total = product(&perm);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            total = tally.add(&total, &product(&perm));
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{OpCount, OpCounter};
    use num_bigint::BigInt;

    #[test]
    fn visits_every_permutation_once() {
        let ones = SquareMatrix::from_fn(5, |_, _| BigInt::from(1)).unwrap();
        assert_eq!(naive_with(&ones, &OpCounter::new()), BigInt::from(120));
    }

    #[test]
    fn counts_for_order_one_and_three() {
        let t = OpCounter::new();
        let a = SquareMatrix::new(1, vec![BigInt::from(9)]).unwrap();
        assert_eq!(naive_with(&a, &t), BigInt::from(9));
        assert_eq!(t.snapshot(), OpCount::ZERO);

        let t = OpCounter::new();
        let id = SquareMatrix::<BigInt>::identity(3).unwrap();
        assert_eq!(naive_with(&id, &t), BigInt::from(1));
        assert_eq!(t.snapshot(), OpCount::new(12, 5));
    }
}
