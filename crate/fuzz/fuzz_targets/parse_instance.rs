//! Fuzzes the JSON instance parser and validator: arbitrary bytes must
//! never panic, and anything that parses must survive a print/parse
//! round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use lipsel::instance::Instance;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(inst) = Instance::from_json(text) else {
        return;
    };
    let reprinted = inst.to_json();
    let again = Instance::from_json(&reprinted).expect("printed instances re-parse");
    assert_eq!(inst, again, "round trip changed the instance");
    assert_eq!(
        reprinted,
        again.to_json(),
        "second print differs from the first"
    );
    // validation must agree on both copies and never panic
    let first = inst.validate().is_ok();
    let second = again.validate().is_ok();
    assert_eq!(first, second, "round trip changed validity");
});
