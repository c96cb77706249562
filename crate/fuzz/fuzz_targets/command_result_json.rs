#![no_main]

use libfuzzer_sys::fuzz_target;
use rrcalc_cli::CommandResult;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = CommandResult::from_json(text) {
        let again = CommandResult::from_json(&r.to_json()).expect("own output parses");
        assert_eq!(again, r);
        let _ = r.to_table();
    }
});
