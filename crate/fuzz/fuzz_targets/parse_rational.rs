#![no_main]

use libfuzzer_sys::fuzz_target;
use rrcalc::rational::{fmt_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_rational(text) {
        let shown = fmt_rational(&c);
        assert_eq!(parse_rational(&shown).expect("canonical form parses"), c);
    }
});
