use crate::evaluate::{CoverageReport, Tally};

pub const HEADER: [&str; 7] = ["linker", "class", "linked", "failed", "total", "coverage", "ratio"];

fn row(linker: &str, class: &str, t: &Tally) -> [String; 7] {
    let ratio = t.ratio();
    [
        linker.to_owned(),
        class.to_owned(),
        t.linked.to_string(),
        t.failed.to_string(),
        t.total.to_string(),
        format!("{:.6}", t.coverage()),
        format!("{}/{}", ratio.numer(), ratio.denom()),
    ]
}

/// One `all` row per linker followed by its per-class rows (`unclassified`
/// last). Output is a pure function of the reports.
pub fn to_csv(reports: &[CoverageReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in reports {
        w.write_record(row(&r.linker, "all", &r.overall)).expect("in-memory write");
        let classified = r.per_class.iter().filter_map(|(c, t)| c.map(|c| (c.as_str(), t)));
        let unclassified = r.per_class.get(&None).map(|t| ("unclassified", t));
        for (class, t) in classified.chain(unclassified) {
            w.write_record(row(&r.linker, class, t)).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("UTF-8")
}
