use oxttl::NTriplesParser;
use proptest::prelude::*;
use scikg::rdf::{export_ntriples_string, import_ntriples, UriScheme};
use scikg::Graph;

use crate::fixtures::{apply, ops};
use crate::run_cases;

const STORES: u32 = 100;

pub fn round_trip() -> Result<String, String> {
    let scheme = UriScheme::default();
    let lines = std::cell::Cell::new(0usize);
    run_cases(STORES, ops(), |ops| {
        let g = apply(&ops);
        let first = export_ntriples_string(&g, &scheme);
        let mut h = Graph::new();
        import_ntriples(&mut h, first.as_bytes(), &scheme, "").unwrap();
        prop_assert_eq!(&export_ntriples_string(&h, &scheme), &first);
        for line in first.lines() {
            let parsed: Vec<_> = NTriplesParser::new().for_slice(line.as_bytes()).collect();
            prop_assert_eq!(parsed.len(), 1, "{}", line);
            prop_assert!(parsed[0].is_ok(), "{}: {:?}", line, parsed[0]);
        }
        lines.set(lines.get() + first.lines().count());
        Ok(())
    })?;
    Ok(format!("{STORES} stores, {} lines, re-export byte-identical", lines.get()))
}
