#![no_main]

use libfuzzer_sys::fuzz_target;
use wittloc::euler::GroupKind;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let group = if selector % 2 == 0 { GroupKind::SL2n(3) } else { GroupKind::N };
    let _ = wittloc::parse::parse_rep(text, group);
});
