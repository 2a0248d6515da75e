use eigenseq::eigen::{apply_expr, verify_eigen, EigenProblem};
use eigenseq::{Error, Offset, Sequence, TransformExpr};

fn expr(s: &str) -> TransformExpr {
    s.parse().unwrap()
}

#[test]
fn ascii_and_unicode_spellings_agree() {
    assert_eq!(expr("R^2 o MOBIUS-INV"), expr("R^2∘MÖBIUS^-1"));
    assert_eq!(expr("M^-1.EULER"), expr("M^{-1}∘EULER"));
}

#[test]
fn solve_then_verify_through_public_api() {
    for (text, offset, want) in [
        (
            "R∘STIRLING^2",
            Offset::One,
            vec![1, 1, 3, 14, 97, 934, 11814, 188650],
        ),
        (
            "R^2∘MOBIUS-INV",
            Offset::One,
            vec![1, 1, 1, 2, 2, 4, 3, 7, 4, 11, 6, 15, 7],
        ),
        (
            "M^-1∘EULER",
            Offset::One,
            vec![1, 1, 2, 5, 12, 33, 90, 261, 766, 2312],
        ),
        (
            "R∘GCD-CONV",
            Offset::Zero,
            vec![1, 1, 2, 3, 4, 6, 6, 11, 10, 18, 16],
        ),
    ] {
        let e = expr(text);
        let solved = EigenProblem::from_expr(&e)
            .unwrap()
            .solve(want.len(), offset)
            .unwrap();
        assert_eq!(solved, Sequence::from_ints(offset, &want), "{text}");
        assert!(verify_eigen(&solved, &e), "{text}");
    }
}

#[test]
fn factor_errors_name_the_factor() {
    let a = Sequence::from_ints(Offset::One, &[1, 2, 3]);
    let err = apply_expr(&expr("R∘PARTITION∘N"), &a).unwrap_err();
    match err {
        Error::InFactor { factor, name, .. } => {
            assert_eq!((factor, name.as_str()), (2, "PARTITION"))
        }
        other => panic!("{other:?}"),
    }
}
