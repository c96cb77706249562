#![no_main]

use libfuzzer_sys::fuzz_target;
use rrcalc::{RingElement, RingSpec, ScalarDomain};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let spec = match selector % 4 {
        0 => RingSpec::new(&["h"], &[3], ScalarDomain::Integers),
        1 => RingSpec::new(&["t1", "t2"], &[2, 2], ScalarDomain::Integers),
        2 => RingSpec::new(&["x", "y", "z"], &[4, 1, 2], ScalarDomain::Rationals),
        _ => RingSpec::weighted(&["c1", "c2", "c3"], &[3, 1, 1], &[1, 2, 3], Some(3), ScalarDomain::Rationals),
    }
    .expect("valid spec");
    if let Ok(e) = RingElement::parse(&spec, text) {
        let again = RingElement::parse(&spec, &e.to_string()).expect("display parses");
        assert_eq!(again, e);
    }
});
