use nearval::{oracle, Container, NearestValues, QueryKind, Scheme, ValueArray};
use proptest::prelude::*;

fn arrays() -> impl Strategy<Value = Vec<i64>> {
    (1usize..6).prop_flat_map(|alphabet| prop::collection::vec(0..alphabet as i64, 1..120))
}

fn check_scheme(a: &ValueArray, scheme: Scheme) -> Result<(), TestCaseError> {
    let c = Container::encode_array(a, scheme).unwrap();
    let bytes = c.to_bytes();
    let back = Container::from_bytes(&bytes).unwrap();
    prop_assert_eq!(&back, &c);
    let d = back.decode().unwrap();
    prop_assert_eq!(d.encode().unwrap().to_bytes(), bytes);
    for kind in QueryKind::ALL {
        if !d.supports(kind) {
            prop_assert!(d.query(kind, 1).is_err());
            continue;
        }
        for i in 1..=a.len() {
            prop_assert_eq!(d.query(kind, i).unwrap(), oracle(a, kind, i).unwrap(), "{} {}", kind, i);
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn general_answers_like_the_array(v in arrays()) {
        let a = ValueArray::new(v).unwrap();
        check_scheme(&a, Scheme::General)?;
    }

    #[test]
    fn run_free_arrays_work_in_every_scheme(v in arrays()) {
        let mut v = v;
        v.dedup();
        let a = ValueArray::new(v).unwrap();
        check_scheme(&a, Scheme::Joint)?;
        check_scheme(&a, Scheme::Colored)?;
        check_scheme(&a, Scheme::General)?;
    }

    #[test]
    fn corrupted_bytes_never_panic(v in arrays(), cut in 0usize..64, flip in any::<(usize, u8)>()) {
        let a = ValueArray::new(v).unwrap();
        let mut bytes = Container::encode_array(&a, Scheme::General).unwrap().to_bytes();
        if !bytes.is_empty() {
            let at = flip.0 % bytes.len();
            bytes[at] ^= flip.1;
        }
        bytes.truncate(bytes.len().saturating_sub(cut % 3));
        if let Ok(c) = Container::from_bytes(&bytes) {
            let _ = c.decode();
        }
    }
}
