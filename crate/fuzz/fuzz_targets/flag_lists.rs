#![no_main]

use libfuzzer_sys::fuzz_target;
use rrcalc_cli::{parse_chern_list, parse_int_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_int_list(text) {
        let joined = v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_int_list(&joined), Ok(v));
    }
    let _ = parse_chern_list(text);
});
