#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argv; `suite` is skipped because it is slow, not fragile.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = text.split('\0').collect();
    if args.first() == Some(&"suite") {
        return;
    }
    let argv = std::iter::once("rrcalc").chain(args);
    let code = rrcalc_cli::run_with(argv, &mut std::io::sink(), &mut std::io::sink());
    assert!((0..=2).contains(&code));
});
