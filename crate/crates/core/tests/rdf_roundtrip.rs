use oxttl::NTriplesParser;
use proptest::prelude::*;
use scikg::graph::{Datatype, Graph, NodeId};
use scikg::rdf::{export_ntriples_string, import_ntriples, UriScheme};

#[derive(Debug, Clone)]
enum Op {
    Resource(String, Vec<String>),
    Predicate(String),
    Statement { s: usize, p: usize, o: usize, literal: Option<(String, Datatype)> },
    DeleteResource(usize),
}

fn label() -> impl Strategy<Value = String> {
    prop_oneof![
        "[A-Za-z][A-Za-z0-9 ]{0,12}",
        "[a-z]{1,4}[\"\\\\\n\r\t<>#é漢]{1,3}[a-z]{0,3}",
        "\\PC{1,10}",
    ]
    .prop_filter("non-blank", |s| !s.trim().is_empty())
}

fn literal() -> impl Strategy<Value = (String, Datatype)> {
    prop_oneof![
        label().prop_map(|s| (s, Datatype::String)),
        (-1000i64..1000).prop_map(|n| (n.to_string(), Datatype::Integer)),
        (-100i32..100, 0u32..100).prop_map(|(a, b)| (format!("{a}.{b}"), Datatype::Decimal)),
        any::<bool>().prop_map(|b| (b.to_string(), Datatype::Boolean)),
        Just(("https://example.org/x?y=1".to_owned(), Datatype::Uri)),
    ]
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => (label(), prop::collection::vec("[A-Z][a-z]{0,6}( [a-z]{1,4})?", 0..2)).prop_map(|(l, c)| Op::Resource(l, c)),
        2 => label().prop_map(Op::Predicate),
        5 => (any::<usize>(), any::<usize>(), any::<usize>(), prop::option::of(literal()))
            .prop_map(|(s, p, o, literal)| Op::Statement { s, p, o, literal }),
        1 => any::<usize>().prop_map(Op::DeleteResource),
    ]
}

fn build(ops: &[Op]) -> Graph {
    let mut g = Graph::new();
    for op in ops {
        match op {
            Op::Resource(l, c) => {
                g.create_resource(l, c.clone()).unwrap();
            }
            Op::Predicate(l) => {
                g.create_predicate(l).unwrap();
            }
            Op::Statement { s, p, o, literal } => {
                let rs: Vec<NodeId> = g.resources().map(|r| r.id).collect();
                let ps: Vec<_> = g.predicates().map(|p| p.id).collect();
                if rs.is_empty() || ps.is_empty() {
                    continue;
                }
                let object = match literal {
                    Some((v, d)) => g.create_literal(v, *d).unwrap().id,
                    None => rs[o % rs.len()],
                };
                g.create_statement(rs[s % rs.len()], ps[p % ps.len()], object, "").unwrap();
            }
            Op::DeleteResource(i) => {
                let rs: Vec<NodeId> = g.resources().map(|r| r.id).filter(|r| g.incident_count(*r) == 0).collect();
                if !rs.is_empty() {
                    g.delete_node(rs[i % rs.len()]).unwrap();
                }
            }
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reexport_is_byte_identical(ops in prop::collection::vec(op(), 0..40)) {
        let g = build(&ops);
        let scheme = UriScheme::default();
        let first = export_ntriples_string(&g, &scheme);
        let mut h = Graph::new();
        import_ntriples(&mut h, first.as_bytes(), &scheme, "").unwrap();
        prop_assert_eq!(&export_ntriples_string(&h, &scheme), &first);
        prop_assert_eq!(h.statement_count(), g.statement_count());
    }

    #[test]
    fn every_line_is_one_ntriple(ops in prop::collection::vec(op(), 0..40)) {
        let g = build(&ops);
        let out = export_ntriples_string(&g, &UriScheme::default());
        let classes: usize = g.resources().map(|r| r.classes.len()).sum();
        let lines: Vec<&str> = out.lines().collect();
        prop_assert_eq!(lines.len(), g.statement_count() + g.counts().resources + g.counts().predicates + classes);
        prop_assert!(lines.windows(2).all(|w| w[0] <= w[1]));
        for line in lines {
            let parsed: Vec<_> = NTriplesParser::new().for_slice(line.as_bytes()).collect();
            prop_assert_eq!(parsed.len(), 1, "{}", line);
            prop_assert!(parsed[0].is_ok(), "{}: {:?}", line, parsed[0]);
        }
    }
}

#[test]
fn golden_export() {
    let mut g = Graph::new();
    let paper = g.create_resource("Quick Sort", ["Paper"]).unwrap().id;
    let c = g.create_resource("Contribution 1", ["Contribution"]).unwrap().id;
    let hc = g.create_predicate("has contribution").unwrap().id;
    let year = g.create_predicate("publication year").unwrap().id;
    let y = g.create_literal("1961", Datatype::Integer).unwrap().id;
    g.create_statement(paper, hc, c, "").unwrap();
    g.create_statement(paper, year, y, "").unwrap();
    let out = export_ntriples_string(&g, &UriScheme::default());
    assert_eq!(out, include_str!("golden/quick_sort.nt"));
}

#[test]
fn custom_base() {
    let mut g = Graph::new();
    g.create_resource("x", [] as [&str; 0]).unwrap();
    let scheme = UriScheme::new("https://kg.example.org/data/").unwrap();
    assert_eq!(
        export_ntriples_string(&g, &scheme),
        "<https://kg.example.org/data/resource/R1> <http://www.w3.org/2000/01/rdf-schema#label> \"x\" .\n"
    );
}
