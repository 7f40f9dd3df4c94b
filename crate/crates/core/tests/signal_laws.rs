//! Property tests for the signal-operator algebra.

use nerode_core::signal::{Alphabet, IndexSet, Sequence, SymId};
use proptest::prelude::*;

fn alphabet() -> impl Strategy<Value = Alphabet> {
    (2usize..=4).prop_map(|n| Alphabet::numeric(n).unwrap())
}

fn sequence_over(a: Alphabet) -> impl Strategy<Value = Sequence> {
    let size = a.len();
    (
        -8i64..=8,
        prop::collection::vec(0..size, 0..=12),
    )
        .prop_map(move |(start, values)| Sequence::from_window(&a, start, values).unwrap())
}

fn pair() -> impl Strategy<Value = (Sequence, Sequence)> {
    alphabet().prop_flat_map(|a| (sequence_over(a.clone()), sequence_over(a)))
}

/// Pointwise equality over a window safely containing both supports.
fn agree_everywhere(x: &Sequence, y: &Sequence) -> bool {
    x == y
}

proptest! {
    // pi_{Z-} q^n u = q^n pi_{...,n-1,n} u, and the N0 twin
    #[test]
    fn projection_shift_halfline_laws(
        (u, _) in pair(),
        n in -8i64..=8,
    ) {
        let lhs = u.shift(n).project(&IndexSet::nonpositive());
        let rhs = u.project(&IndexSet::Before(n + 1)).shift(n);
        prop_assert!(agree_everywhere(&lhs, &rhs));

        let lhs2 = u.shift(n).project(&IndexSet::nonnegative());
        let rhs2 = u.project(&IndexSet::From(n)).shift(n);
        prop_assert!(agree_everywhere(&lhs2, &rhs2));
    }

    // pi_A q^n = q^n pi_{A+n} for finite A
    #[test]
    fn projection_shift_finite_law(
        (u, _) in pair(),
        n in -8i64..=8,
        idx in prop::collection::vec(-10i64..=10, 0..=6),
    ) {
        let a = IndexSet::finite(idx);
        let lhs = u.shift(n).project(&a);
        let rhs = u.project(&a.translate(n)).shift(n);
        prop_assert!(agree_everywhere(&lhs, &rhs));
    }

    // q^n (u1 <>_k u2) = (q^n u1) <>_{k-n} (q^n u2)
    #[test]
    fn shift_concat_law(
        (u1, u2) in pair(),
        k in -8i64..=8,
        n in -8i64..=8,
    ) {
        let lhs = u1.concat(&u2, k).unwrap().shift(n);
        let rhs = u1.shift(n).concat(&u2.shift(n), k - n).unwrap();
        prop_assert!(agree_everywhere(&lhs, &rhs));
    }

    // u1 <>_0 (u2, a)_0 = (u1, a)_0 <>_1 u2
    #[test]
    fn concat_insert_law(
        (u1, u2) in pair(),
        pick in 0usize..4,
    ) {
        let a: SymId = pick % u1.alphabet().len();
        let lhs = u1.concat(&u2.insert(a, 0).unwrap(), 0).unwrap();
        let rhs = u1.insert(a, 0).unwrap().concat(&u2, 1).unwrap();
        prop_assert!(agree_everywhere(&lhs, &rhs));
    }

    // canonical form: padding a window with defaults never changes the value
    #[test]
    fn canonical_uniqueness(
        (u, _) in pair(),
        pad_left in 0usize..4,
        pad_right in 0usize..4,
    ) {
        let o = u.alphabet().default_sym();
        let mut padded = vec![o; pad_left];
        padded.extend_from_slice(u.values());
        padded.extend(std::iter::repeat_n(o, pad_right));
        let rebuilt = Sequence::from_window(
            u.alphabet(),
            u.start() - pad_left as i64,
            padded,
        ).unwrap();
        prop_assert_eq!(&rebuilt, &u);
    }

    #[test]
    fn shift_is_bijective((u, _) in pair(), n in -8i64..=8) {
        prop_assert_eq!(u.shift(n).shift(-n), u);
    }
}
