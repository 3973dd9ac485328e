use knotcalc::knotspec::{evaluate, parse, KnotTable};

#[test]
fn cables_of_the_difference_take_both_signs() {
    let table = KnotTable::bundled();
    let r = evaluate(&parse("10_32").unwrap(), &table).unwrap();
    assert!(r.signature.available().unwrap().takes_positive());
    let r = evaluate(&parse("-10_82").unwrap(), &table).unwrap();
    assert!(r.signature.available().unwrap().takes_negative());
    for n in 1..=5 {
        let text = match n {
            1 => "10_32 # -10_82".to_string(),
            _ => format!("cable({n}, 10_32 # -10_82)"),
        };
        let r = evaluate(&parse(&text).unwrap(), &table).unwrap();
        let sf = r.signature.available().unwrap();
        assert!(sf.takes_positive(), "{text}");
        assert!(sf.takes_negative(), "{text}");
        assert_eq!(sf.segments.len(), 3 * n + 1, "{text}");
    }
}
