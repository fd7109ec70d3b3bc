#![no_main]

use flagvol::instance::parse_instance;
use flagvol::valuation::TFlag;
use flagvol::volume::okounkov_volume_report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_instance(text) else {
        return;
    };
    assert_eq!(parse_instance(&doc.to_json()).as_ref(), Ok(&doc));
    let Ok(inst) = doc.resolve() else {
        return;
    };
    // keep lattice-point work bounded
    if inst.fan.num_rays() > 32 || doc.rays.iter().flatten().chain(&doc.divisor).any(|v| v.abs() > 1000) {
        return;
    }
    let Ok(dec) = inst.decomposition(Default::default()) else {
        return;
    };
    let flag = inst.flag.unwrap_or(TFlag { ray: 0, cone: 0 });
    if let Ok(report) = okounkov_volume_report(&inst.fan, &inst.divisor, &dec, flag) {
        assert!(report.agree, "{doc:?}");
    }
});
