use proptest::prelude::*;
use wordperm_cli::parse_spec;
use wordperm_core::word::{Letter, NamedWord};
use wordperm_core::WordSpec;

fn letters(min: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop_oneof![Just(Letter::Zero), Just(Letter::One)], min..6)
}

fn spec() -> impl Strategy<Value = WordSpec> {
    let leaf = prop_oneof![
        prop::sample::select(NamedWord::ALL.to_vec()).prop_map(WordSpec::named),
        (letters(1), letters(1)).prop_map(|(mut z, o)| {
            z.insert(0, Letter::Zero);
            WordSpec::morphic(z, o).unwrap()
        }),
        prop::collection::vec(1u32..9, 1..5).prop_map(|d| WordSpec::sturmian(d).unwrap()),
    ];
    leaf.prop_recursive(4, 16, 1, |inner| {
        prop_oneof![
            inner.clone().prop_map(WordSpec::double),
            inner.clone().prop_map(WordSpec::complement),
            (0usize..1000, inner).prop_map(|(k, s)| s.shift(k)),
        ]
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(s in spec()) {
        prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn parser_never_panics(text in "[a-z0-9:,()\\[\\]=>-]{0,30}") {
        let _ = parse_spec(&text);
    }
}

#[test]
fn whitespace_is_insignificant() {
    let a = parse_spec("shift( 3 , double( thue-morse ) )").unwrap();
    assert_eq!(a, WordSpec::thue_morse().double().shift(3));
    let b = parse_spec("sturmian:cf=[2, 1,1 ,1]").unwrap();
    assert_eq!(b, WordSpec::sturmian(vec![2, 1, 1, 1]).unwrap());
}
